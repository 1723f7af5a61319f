"""Bigraded modules for the toroidal current algebra sl2 (x) C[t, u].

Two tables are compared.  On one side a Demazure module D(l, lNc + l0) is
filtered by powers of the ideal sl2 (x) t^N C[t]; on the other, Demazure
modules for sl2[u] are fused in the variable t, keeping the u-degree.  A
class in the j-th layer of the t^N-filtration sitting in t-degree jN + s is
recorded at (s, j), matching x (x) t^(jN+s) <-> x (x) u^j t^s.

Everything is exact, but the comparison is a finite consistency check and
proves nothing beyond the instances it runs on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Tuple

from fusionlab import config
from fusionlab.demazure import demazure_relations
from fusionlab.errors import DomainError, ResourceCapError, VerificationError
from fusionlab.linalg import EchelonBasis, SparseMatrix
from fusionlab.rootsys import build_root_system
from fusionlab.sl2mod import (GENS, ExplicitModule, LoweringGen, _lift_into, check_distinct,
                              default_params, fusion_of, hw_filtration)

A1 = build_root_system("A", 1)


@dataclass(frozen=True)
class BiGradedDims:
    """dims[(s, j)]: t-degree s and u-degree (or filtration layer) j."""

    dims: Tuple[Tuple[Tuple[int, int], int], ...]

    @classmethod
    def from_dict(cls, d):
        return cls(tuple(sorted((tuple(k), v) for k, v in d.items() if v)))

    def as_dict(self):
        return dict(self.dims)

    @property
    def total(self):
        return sum(v for _, v in self.dims)

    def row(self, j):
        """t-graded dims of the u-degree j part."""
        d = {s: v for (s, jj), v in self.dims if jj == j}
        top = max(d, default=-1)
        return [d.get(s, 0) for s in range(top + 1)]

    def support(self):
        return [k for k, _ in self.dims]

    def to_dict(self):
        return {f"{s},{j}": v for (s, j), v in self.dims}

    def table(self):
        """Rows j, columns s, as nested lists."""
        if not self.dims:
            return []
        S = max(s for (s, _), _ in self.dims)
        J = max(j for (_, j), _ in self.dims)
        d = self.as_dict()
        return [[d.get((s, j), 0) for s in range(S + 1)] for j in range(J + 1)]


def _pieces(M):
    out = {}
    for i in range(M.dim):
        out.setdefault((M.weights[i], M.tdeg[i]), []).append(i)
    return out


def _closure(M, seeds, pieces, where):
    """The submodule generated by the sparse vectors ``seeds``.

    Returns its dimension in each (weight, t-degree) piece and a spanning
    set of homogeneous vectors.
    """
    bases = {key: EchelonBasis(len(idx)) for key, idx in pieces.items()}
    pos = {key: {g: a for a, g in enumerate(idx)} for key, idx in pieces.items()}
    kept = []
    frontier = list(seeds)
    while frontier:
        new = []
        for v in frontier:
            key = where[next(iter(v))]
            if bases[key].add_rows([{pos[key][i]: c for i, c in v.items()}]):
                new.append(v)
        kept.extend(new)
        frontier = [w for v in new for x, r in M.generators() for w in [M.op(x, r).apply(v)] if w]
    return {key: B.dim for key, B in bases.items()}, kept


def tN_filtration(M, N, check=True):
    """Bigraded dimensions of the associated graded of the t^N-filtration.

    T_0 = M and T_j is the submodule generated by (x (x) t^r) T_{j-1} for
    r >= N; this is the same as applying the j-th power of the ideal
    sl2 (x) t^N C[t] to M.  A class of T_j / T_{j+1} in t-degree q is put
    at (q - jN, j).
    """
    if not M.graded:
        raise DomainError("tN_filtration needs a t-graded module")
    if N < 1:
        raise DomainError("N must be at least 1")
    pieces = _pieces(M)
    where = {i: key for key, idx in pieces.items() for i in idx}
    layers = [{key: len(idx) for key, idx in pieces.items()}]
    span = [{i: 1} for i in range(M.dim)]
    while span:
        seeds = [w for v in span for r in range(N, M.trunc) for x in GENS
                 for w in [M.op(x, r).apply(v)] if w]
        dims, span = _closure(M, seeds, pieces, where)
        if span:
            layers.append(dims)
    out = {}
    for j, dims in enumerate(layers):
        nxt = layers[j + 1] if j + 1 < len(layers) else {}
        for (w, q), d in dims.items():
            diff = d - nxt.get((w, q), 0)
            if not diff:
                continue
            s = q - j * N
            if check and s < 0:
                raise VerificationError(f"class of t-degree {q} in layer {j} with N={N}")
            out[(s, j)] = out.get((s, j), 0) + diff
    return BiGradedDims.from_dict(out)


def _trivial():
    return ExplicitModule([0], 1, labels=[()], tdeg=[0], cyclic_index=0, name="C")


def ugraded_demazure(level, c, lam0=0, params=None, cap=None):
    """D^u(level, level c + lam0) for sl2[u], as a fusion of c copies of V(level) and V(lam0).

    The grading of the returned module is the u-degree.
    """
    if level < 1 or c < 0 or lam0 < 0:
        raise DomainError("need level >= 1, c >= 0, lam0 >= 0")
    if lam0 > level:
        raise DomainError(f"lambda0 = {lam0} exceeds the level {level}")
    ks = [level] * c + ([lam0] if lam0 else [])
    if not ks:
        return _trivial()
    M = fusion_of(ks, params, cap=cap)
    M.name = f"D^u({level},{level * c + lam0})"
    return M


def demazure_left(level, c, lam0, N, params=None, cap=None):
    """D(level, level N c + lam0) as the fusion of Nc copies of V(level) and V(lam0)."""
    M = ugraded_demazure(level, N * c, lam0, params, cap)
    M.name = f"D({level},{level * N * c + lam0})"
    return M


def relation_failures(M, level, m):
    """Demazure relations of D(level, m) that fail on the cyclic vector of M."""
    rels = demazure_relations(level, (m,), A1)
    v = M.cyclic_vector()
    bad = []
    for rel in rels.relations:
        if rel.kind == "raise":
            if any(M.op("e", a).apply(v) for a in range(M.trunc)):
                bad.append(rel.to_dict())
        elif rel.kind == "diag":
            if M.op("h", 0).apply(v) != ({M.cyclic_index: m} if m else {}):
                bad.append(rel.to_dict())
            elif any(M.op("h", a).apply(v) for a in range(1, M.trunc)):
                bad.append(rel.to_dict())
        else:
            w = v
            for _ in range(rel.e):
                w = M.op("f", rel.a).apply(w)
                if not w:
                    break
            if w:
                bad.append(rel.to_dict())
    return bad


def _tensor_gens(factors, params, N, utrunc):
    dims = [F.dim for F in factors]
    n = math.prod(dims)
    strides, acc = [], 1
    for d in reversed(dims):
        strides.append(acc)
        acc *= d
    strides.reverse()
    lifted = {}

    def lift(i, x, b):
        key = (i, x, b)
        if key not in lifted:
            cols = {}
            A = factors[i].op(x, b)
            if not A.is_zero():
                _lift_into(cols, A, i, dims, strides)
            lifted[key] = SparseMatrix(n, n, cols)
        return lifted[key]

    ops = {}
    for x in GENS:
        for a in range(N):
            for b in range(utrunc):
                out = SparseMatrix(n, n)
                for i, z in enumerate(params):
                    if a == 0:
                        out = out + lift(i, x, b)
                    elif z != 0:
                        out = out + lift(i, x, b).scale(z ** a)
                ops[(x, a, b)] = out
    return ops, dims, strides


@dataclass
class BigradedFusion:
    dims: BiGradedDims
    params: tuple
    N: int
    utrunc: int
    defect: int
    max_tdeg: int


def bigraded_fusion(factors, params=None, N=None, utrunc=None, cap=None):
    """t-fusion of u-graded modules; x (x) t^a u^b acts on factor i as z_i^a (x (x) u^b)."""
    if not factors:
        raise DomainError("need at least one factor")
    n = len(factors)
    N = n if N is None else N
    if N < 1:
        raise DomainError("N must be at least 1")
    params = check_distinct(default_params(n) if params is None else params)
    if len(params) != n:
        raise DomainError(f"{n} factors but {len(params)} parameters")
    utrunc = max(F.trunc for F in factors) if utrunc is None else utrunc
    cap = config.dimension_cap(cap)
    total = math.prod(F.dim for F in factors)
    if total > cap:
        raise ResourceCapError("bigraded tensor product", total, cap)
    ops, dims, strides = _tensor_gens(factors, params, N, utrunc)
    cyc = sum(F.cyclic_index * s for F, s in zip(factors, strides))
    digits = [[]]
    for d in dims:
        digits = [t + [a] for t in digits for a in range(d)]
    weights = [sum(F.weights[a] for F, a in zip(factors, t)) for t in digits]
    udeg = [sum(F.tdeg[a] for F, a in zip(factors, t)) for t in digits]
    v = {cyc: 1}
    for (x, a, b), A in ops.items():
        img = A.apply(v)
        if x == "e" and img or x == "h" and set(img) - {cyc}:
            raise DomainError("the cyclic vector is not a highest-weight vector")
    # the t-grading is what the filtration computes; start every vector at 0
    T = ExplicitModule(weights, 1, tdeg=[0] * total, cyclic_index=cyc, name="bigraded tensor")
    gens = [LoweringGen(("f", a, b), a, b, ops[("f", a, b)])
            for a in range(N) for b in range(utrunc)]
    filt = hw_filtration(T, gens, extra=udeg, cap=cap)
    bd = BiGradedDims.from_dict(filt.bigraded_dims())
    return BigradedFusion(bd, tuple(str(z) for z in params), N, utrunc, filt.defect,
                          max((s for s, _ in bd.as_dict()), default=0))


@dataclass
class ComparisonReport:
    level: int
    c: int
    lam0: int
    N: int
    left: BiGradedDims
    right: BiGradedDims
    left_dim: int
    right_defect: int
    relation_failures: list = field(default_factory=list)
    label: str = "consistency check"

    @property
    def ok(self):
        return (self.left == self.right and not self.relation_failures
                and not self.right_defect and self.left.total == self.left_dim)

    def to_dict(self):
        return {"label": self.label, "level": self.level, "c": self.c, "lambda0": self.lam0,
                "N": self.N, "ok": self.ok, "left": self.left.to_dict(),
                "right": self.right.to_dict(), "left_dim": self.left_dim,
                "relation_failures": self.relation_failures}


def verify_theorem1_sl2(level, c, lam0, N, params=None, left_params=None, cap=None):
    """Compare the t^N-filtration of D(level, level N c + lam0) with the bigraded fusion.

    The right side fuses N-1 copies of D^u(level, level c) with one copy of
    D^u(level, level c + lam0); ``params`` are its N fusion parameters.
    """
    if level < 1 or N < 1 or c < 0:
        raise DomainError("need level >= 1, N >= 1, c >= 0")
    if not 0 <= lam0 <= level:
        raise DomainError(f"need 0 <= lambda0 <= level, got {lam0}")
    m = level * N * c + lam0
    left = demazure_left(level, c, lam0, N, left_params, cap)
    bad = [dict(r, module="left") for r in relation_failures(left, level, m)]
    right_factors = [ugraded_demazure(level, c, 0, cap=cap) for _ in range(N - 1)]
    right_factors.append(ugraded_demazure(level, c, lam0, cap=cap))
    for F in right_factors:
        mm = F.weights[F.cyclic_index]
        bad.extend(dict(r, module=F.name) for r in relation_failures(F, level, mm))
    rf = bigraded_fusion(right_factors, params, N, c + 1, cap)
    return ComparisonReport(level, c, lam0, N, tN_filtration(left, N), rf.dims, left.dim,
                         rf.defect, bad)
