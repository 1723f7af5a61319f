"""The truncated Weyl module W(m, N) from generators and relations.

W(m, N) is the cyclic module over sl2 (x) C[t]/t^N generated by v with

    (e t^r) v = 0,   (h t^r) v = delta_{r,0} m v,   (f)^{m+1} v = 0.

Since f t^p for p < N commute, PBW identifies the f-span of v with a quotient
of the polynomial ring C[f_0, ..., f_{N-1}], bigraded by polynomial degree d
(weight m - 2d) and t-degree s.  The relation module K is the submodule
generated by f_0^{m+1}; it is computed bidegree by bidegree as
U(n^-) U(b^+) f_0^{m+1}, and W = C[f] / K.  Everything here is exact.
"""

from __future__ import annotations

import time
from collections import defaultdict
from dataclasses import dataclass, field

from flint import fmpq

from fusionlab import config
from fusionlab.errors import DomainError, ResourceCapError, VerificationError
from fusionlab.linalg import SparseMatrix, dense_from_vectors, rref, row_vectors


def monomials(N, d, s):
    """Exponent vectors of length N with sum d and weighted sum s, lex descending."""
    if N == 1:
        return [(d,)] if s == 0 else []
    out = []

    def rec(p, rd, rs, pref):
        if p == N - 1:
            if rs == p * rd:
                out.append(tuple(pref) + (rd,))
            return
        for a in range(rd, -1, -1):
            r, t = rd - a, rs - p * a
            if (p + 1) * r <= t <= (N - 1) * r:
                rec(p + 1, r, t, pref + [a])

    rec(0, d, s, [])
    return out


def _bump(mono, p, delta=1):
    out = list(mono)
    out[p] += delta
    return tuple(out)


def op_f(mono, p, N):
    return {_bump(mono, p): 1} if p < N else {}


def op_h(mono, r, m, N):
    if r == 0:
        return {mono: m - 2 * sum(mono)}
    out = defaultdict(int)
    for p, ip in enumerate(mono):
        if ip and p + r < N:
            out[_bump(_bump(mono, p, -1), p + r)] -= 2 * ip
    return out


def op_e(mono, r, m, N):
    """e t^r on f^mono v, using [e_r, f_p] = h_{r+p} and [h_a, f_q] = -2 f_{a+q}."""
    out = defaultdict(int)
    if r == 0 and mono[0]:
        out[_bump(mono, 0, -1)] += m * mono[0]
    for p in range(N):
        if not mono[p]:
            continue
        for q in range(N):
            if not mono[q] or r + p + q >= N:
                continue
            c = mono[p] * (mono[p] - 1) if p == q else mono[p] * mono[q]
            if c:
                out[_bump(_bump(_bump(mono, p, -1), q, -1), r + p + q)] -= c
    return out


@dataclass
class WeylPiece:
    monos: list
    index: dict
    rows: list = field(default_factory=list)
    pivots: list = field(default_factory=list)
    standard: list = field(default_factory=list)

    @property
    def dim(self):
        return len(self.standard)


class TruncatedWeyl:
    """W(m, N) with standard monomials and exact normal forms."""

    def __init__(self, m, N, cap=None):
        if m < 0 or N < 1:
            raise DomainError("need m >= 0 and N >= 1")
        self.m, self.N = m, N
        self.cap = config.dimension_cap(cap)
        self.pieces = {}
        self.timings = {}
        self._build()

    # construction

    def _vec(self, key, dct):
        idx = self.pieces[key].index
        return {idx[k]: c for k, c in dct.items() if c != 0}

    def _apply(self, key, row, op):
        monos = self.pieces[key].monos
        out = defaultdict(int)
        for j, c in row.items():
            for k, v in op(monos[j]).items():
                out[k] += c * v
        return out

    def _rowspace(self, vecs, n):
        vecs = [v for v in vecs if v]
        if not vecs:
            return [], []
        R, piv = rref(dense_from_vectors(vecs, n))
        return row_vectors(R), piv

    def _build(self):
        m, N = self.m, self.N
        top = m + 1
        t0 = time.perf_counter()
        for d in range(top + 1):
            for s in range((N - 1) * d + 1):
                ms = monomials(N, d, s)
                self.pieces[(d, s)] = WeylPiece(ms, {x: i for i, x in enumerate(ms)})
        # B = U(b^+) f_0^{m+1}, top level down
        B = {}
        for d in range(top, -1, -1):
            for s in range((N - 1) * d + 1):
                key = (d, s)
                cands = []
                if key == (top, 0):
                    cands.append({self.pieces[key].index[(top,) + (0,) * (N - 1)]: 1})
                for r in range(N):
                    src = (d + 1, s - r)
                    for row in B.get(src, ()):
                        cands.append(self._vec(key, self._apply(src, row,
                                                                lambda x, r=r: op_e(x, r, m, N))))
                for r in range(1, N):
                    src = (d, s - r)
                    for row in B.get(src, ()):
                        cands.append(self._vec(key, self._apply(src, row,
                                                                lambda x, r=r: op_h(x, r, m, N))))
                B[key] = self._rowspace(cands, len(self.pieces[key].monos))[0]
        t1 = time.perf_counter()
        # K = U(n^-) B, bottom up
        running = 0
        for d in range(top + 1):
            for s in range((N - 1) * d + 1):
                key = (d, s)
                P = self.pieces[key]
                cands = list(B[key])
                for p in range(N):
                    src = (d - 1, s - p)
                    if src in self.pieces:
                        for row in self.pieces[src].rows:
                            cands.append(self._vec(key, self._apply(src, row,
                                                                    lambda x, p=p: op_f(x, p, N))))
                P.rows, P.pivots = self._rowspace(cands, len(P.monos))
                piv = set(P.pivots)
                P.standard = [i for i in range(len(P.monos)) if i not in piv]
                if d <= m:
                    running += P.dim
            if running > self.cap:
                raise ResourceCapError("truncated Weyl module", running, self.cap)
        self.timings = {"b_plus": t1 - t0, "n_minus": time.perf_counter() - t1}
        leftover = [k for k, P in self.pieces.items() if k[0] == top and P.dim]
        if leftover:
            raise VerificationError(f"f^(m+1) does not generate degree {top}: {leftover}")
        for key in [k for k in self.pieces if k[0] == top]:
            del self.pieces[key]

    # queries

    @property
    def dim(self):
        return sum(P.dim for P in self.pieces.values())

    def bigraded_dims(self):
        """{(d, s): dim} over nonzero pieces, d = polynomial degree."""
        return {k: P.dim for k, P in sorted(self.pieces.items()) if P.dim}

    def graded_dims(self):
        from fusionlab.sl2mod import GradedDims, _trim
        out = defaultdict(int)
        for (d, s), P in self.pieces.items():
            out[s] += P.dim
        top = max((s for s, v in out.items() if v), default=0)
        return GradedDims(_trim([out[s] for s in range(top + 1)]))

    def character(self):
        """((weight, s), dim) pairs, as for ExplicitModule.character()."""
        return tuple(sorted(((self.m - 2 * d, s), n) for (d, s), n in self.bigraded_dims().items()))

    def standard_monomials(self):
        out = []
        for key in sorted(self.pieces):
            P = self.pieces[key]
            out.extend(P.monos[i] for i in P.standard)
        return out

    def piece_key(self, mono):
        if len(mono) != self.N:
            raise DomainError(f"monomial {mono} has length {len(mono)}, expected {self.N}")
        return (sum(mono), sum(p * a for p, a in enumerate(mono)))

    def normal_form(self, mono):
        """Coordinates of f^mono v on the standard monomials of its piece."""
        key = self.piece_key(mono)
        P = self.pieces.get(key)
        if P is None:
            return {}
        i = P.index[mono]
        if i not in set(P.pivots):
            return {mono: fmpq(1)}
        row = P.rows[P.pivots.index(i)]
        return {P.monos[j]: -c for j, c in row.items() if j != i}

    def normal_form_vector(self, vec):
        out = defaultdict(lambda: fmpq(0))
        for mono, c in vec.items():
            for k, v in self.normal_form(mono).items():
                out[k] += c * v
        return {k: v for k, v in out.items() if v != 0}

    def to_module(self):
        """The same module as an ExplicitModule on the standard monomials."""
        from fusionlab.sl2mod import GENS, ExplicitModule
        m, N = self.m, self.N
        basis = self.standard_monomials()
        index = {u: i for i, u in enumerate(basis)}
        n = len(basis)
        ops = {"e": op_e, "h": op_h}

        def factory(x, r):
            cols = {}
            for i, u in enumerate(basis):
                img = op_f(u, r, N) if x == "f" else ops[x](u, r, m, N)
                nf = self.normal_form_vector({k: fmpq(v) for k, v in img.items() if v})
                if nf:
                    cols[i] = {index[k]: c for k, c in nf.items()}
            return SparseMatrix(n, n, cols)

        return ExplicitModule([m - 2 * sum(u) for u in basis], N, labels=basis,
                              tdeg=[sum(p * a for p, a in enumerate(u)) for u in basis],
                              cyclic_index=index[(0,) * N], factory=factory,
                              name=f"W({m},{N})")


def truncated_weyl(m, N, cap=None):
    return TruncatedWeyl(m, N, cap)
