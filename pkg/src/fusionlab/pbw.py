"""PBW monomial bases of truncated Weyl modules for sl2.

A monomial is an exponent vector ``(i_0, ..., i_{N-1})`` standing for
f_0^{i_0} ... f_{N-1}^{i_{N-1}} v with f_p = f (x) t^p.  Two descriptions of
the same set are provided: an explicit inequality with modular carries, and a
recursion along a short exact sequence of fusion products.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial
from typing import Tuple

from fusionlab import config
from fusionlab.errors import DomainError, ResourceCapError


def _check_kjN(k, j, N):
    if N < 1:
        raise DomainError("N must be at least 1")
    if not 0 <= j < N:
        raise DomainError(f"j={j} outside 0..{N - 1}")
    if k < 0:
        raise DomainError("k must be non-negative")


def expected_dim(k, j, N):
    return (k + 1) ** (N - j) * (k + 2) ** j


def carry_profile(mono, j, carry_top=None):
    """The carries b_0, ..., b_{carry_top} of a monomial.

    b_0 = i_0 - j mod N and b_l = i_l + (b_{l-1} mod N-l) mod N-l.  The
    default range ends at N-4, so N <= 3 gives the empty profile.
    ``carry_top`` overrides the last index (used to probe other ranges).
    """
    N = len(mono)
    if N < 1:
        raise DomainError("monomial must have length at least 1")
    top = N - 4 if carry_top is None else carry_top
    if top < 0:
        return ()
    if top > N - 2:
        raise DomainError(f"carry index {top} needs a modulus N-l >= 2")
    b = [(mono[0] - j) % N]
    for l in range(1, top + 1):
        b.append((mono[l] + b[l - 1] % (N - l)) % (N - l))
    return tuple(b)


def _weights(N):
    F = factorial(N)
    return [F // (N - p) for p in range(N)]


def _carry_weight(N, l):
    return factorial(N) // factorial(N - l) * factorial(N - l - 2)


def in_S(mono, k, j, carry_top=None):
    """The defining inequality, in exact integers."""
    N = len(mono)
    _check_kjN(k, j, N)
    if any(a < 0 for a in mono):
        raise DomainError("exponents must be non-negative")
    b = carry_profile(mono, j, carry_top)
    lhs = sum(w * a for w, a in zip(_weights(N), mono))
    rhs = (factorial(N) * k - sum(_carry_weight(N, l) * bl for l, bl in enumerate(b))
           + j * factorial(N - 1))
    return lhs <= rhs


def enumerate_S(k, j, N, cap=None, carry_top=None):
    """All monomials satisfying the inequality, in lexicographic order.

    The carry term is non-negative, so dropping it gives a finite box to
    search; each candidate is then tested exactly.
    """
    _check_kjN(k, j, N)
    cap = config.tuple_cap(cap)
    w = _weights(N)
    bound = factorial(N) * k + j * factorial(N - 1)
    out = []

    def rec(p, pref, used):
        if p == N:
            if in_S(tuple(pref), k, j, carry_top):
                out.append(tuple(pref))
                if len(out) > cap:
                    raise ResourceCapError("PBW monomials", len(out), cap)
            return
        for a in range((bound - used) // w[p] + 1):
            pref.append(a)
            rec(p + 1, pref, used + w[p] * a)
            pref.pop()

    rec(0, [], 0)
    return out


@lru_cache(maxsize=None)
def _recursive(ks):
    ks = tuple(x for x in ks if x > 0)
    if not ks:
        return frozenset([()])
    if len(ks) == 1:
        return frozenset((a,) for a in range(ks[0] + 1))
    n = len(ks)
    out = set()
    for u in _recursive(ks[:-1]):
        out.add((0,) + u + (0,) * (n - 1 - len(u)))
    dec = tuple(sorted(ks[:-1] + (ks[-1] - 1,)))
    for u in _recursive(dec):
        u = u + (0,) * (n - len(u))
        out.add((u[0] + 1,) + u[1:])
    return frozenset(out)


def recursive_basis(ks):
    """B(k_1, ..., k_N) = sh B(k_1, ..., k_{N-1})  U  f_0 B(k_1, ..., k_N - 1).

    Zeros are dropped (V(0) is trivial) and the decremented tuple is
    re-sorted.  Monomials are padded to length N.
    """
    ks = tuple(int(k) for k in ks)
    if not ks:
        raise DomainError("need at least one weight")
    if any(k < 0 for k in ks):
        raise DomainError("weights must be non-negative")
    if list(ks) != sorted(ks):
        raise DomainError(f"{ks} is not sorted ascending")
    N = len(ks)
    return {u + (0,) * (N - len(u)) for u in _recursive(ks)}


def sl2_weights(k, j, N):
    return (k,) * (N - j) + (k + 1,) * j


@dataclass
class EquivalenceReport:
    k: int
    j: int
    N: int
    expected: int
    size_S: int
    size_recursive: int
    only_S: Tuple[Tuple[int, ...], ...] = ()
    only_recursive: Tuple[Tuple[int, ...], ...] = ()

    @property
    def ok(self):
        return (not self.only_S and not self.only_recursive
                and self.size_S == self.expected == self.size_recursive)

    def to_dict(self):
        return {"k": self.k, "j": self.j, "N": self.N, "ok": self.ok,
                "expected": self.expected, "size_S": self.size_S,
                "size_recursive": self.size_recursive,
                "only_S": [list(u) for u in self.only_S],
                "only_recursive": [list(u) for u in self.only_recursive]}


def verify_equivalence(k, j, N, cap=None, carry_top=None):
    S = set(enumerate_S(k, j, N, cap, carry_top))
    R = recursive_basis(sl2_weights(k, j, N))
    return EquivalenceReport(k, j, N, expected_dim(k, j, N), len(S), len(R),
                             tuple(sorted(S - R)), tuple(sorted(R - S)))


@dataclass
class BasisReport:
    k: int
    j: int
    N: int
    route: str
    module_dim: int
    count: int
    rank: int
    # bidegrees (d, s) where the monomials fail to be a basis of the piece
    bad_pieces: dict = field(default_factory=dict)
    # a nontrivial dependency among the monomials, if one was found
    witness: dict = field(default_factory=dict)

    @property
    def independent(self):
        return self.rank == self.count

    @property
    def spanning(self):
        return self.rank == self.module_dim

    @property
    def ok(self):
        return self.independent and self.spanning and not self.bad_pieces

    def to_dict(self):
        return {"k": self.k, "j": self.j, "N": self.N, "route": self.route, "ok": self.ok,
                "module_dim": self.module_dim, "count": self.count, "rank": self.rank,
                "bad_pieces": {f"{d},{s}": v for (d, s), v in self.bad_pieces.items()},
                "witness": {",".join(map(str, u)): str(c) for u, c in self.witness.items()}}


def _by_piece(monos):
    out = {}
    for u in monos:
        key = (sum(u), sum(p * a for p, a in enumerate(u)))
        out.setdefault(key, []).append(u)
    return out


def _witness(vectors, labels):
    """A nontrivial relation among the vectors (rows), as {label: coefficient}."""
    from fusionlab.linalg import dense_columns, rref
    n = len(vectors)
    width = 1 + max((i for v in vectors for i in v), default=0)
    R, piv = rref(dense_columns(vectors, width))
    free = next((b for b in range(n) if b not in set(piv)), None)
    if free is None:
        return {}
    # x_free = 1 and each pivot variable cancels its row
    out = {labels[free]: 1}
    for a, p in enumerate(piv):
        c = R[a, free]
        if c != 0:
            out[labels[p]] = -c
    return out


def _basis_via_presentation(k, j, N, monos, cap):
    from fusionlab.linalg import rank_of_vectors
    from fusionlab.presentation import TruncatedWeyl
    W = TruncatedWeyl(k * N + j, N, cap)
    groups = _by_piece(monos)
    total, bad, witness = 0, {}, {}
    keys = set(groups) | {key for key, P in W.pieces.items() if P.dim}
    for key in sorted(keys):
        P = W.pieces.get(key)
        dim = P.dim if P else 0
        us = groups.get(key, [])
        pos = {P.monos[i]: a for a, i in enumerate(P.standard)} if P else {}
        vecs = []
        for u in us:
            nf = W.normal_form(u) if P else {}
            vecs.append({pos[w]: c for w, c in nf.items()})
        r = rank_of_vectors(vecs, dim) if dim else 0
        total += r
        if r != len(us) or r != dim:
            bad[key] = {"monomials": len(us), "rank": r, "dim": dim}
            if r < len(us) and not witness:
                witness = _witness(vecs, us)
    return W.dim, total, bad, witness


def _basis_via_quotient(k, j, N, monos, cap):
    from fusionlab.linalg import rank_of_vectors
    from fusionlab.sl2mod import local_weyl, truncate
    m = k * N + j
    T = truncate(local_weyl(m, cap=cap), N)
    v = T.cyclic_vector()
    vecs = []
    for u in monos:
        word = [("f", p) for p, a in enumerate(u) for _ in range(a)]
        vecs.append(T.apply(word, v))
    # pieces are orthogonal in the standard basis, so a global rank suffices
    r = rank_of_vectors(vecs, T.dim)
    bad, witness = {}, {}
    if r != len(monos) or r != T.dim:
        groups = _by_piece(monos)
        for key, us in groups.items():
            sub = [vecs[monos.index(u)] for u in us]
            rr = rank_of_vectors(sub, T.dim)
            if rr != len(us):
                bad[key] = {"monomials": len(us), "rank": rr}
                if not witness:
                    witness = _witness(sub, us)
        if not bad:
            bad["span"] = {"rank": r, "dim": T.dim}
    return T.dim, r, bad, witness


def verify_basis_property(k, j, N, route="auto", cap=None, carry_top=None):
    """Check that the S-monomials applied to the cyclic vector form a basis of W(kN+j, N).

    ``route`` picks the model of W(kN+j, N):
      ``quotient``: truncate the local Weyl module (built as a fusion of
      2^m-dimensional size, so only small m);
      ``presentation``: the cyclic module defined by generators and relations;
      ``auto``: quotient when 2^m fits under ``quotient_cap``, else presentation.
    """
    _check_kjN(k, j, N)
    monos = enumerate_S(k, j, N, carry_top=carry_top)
    m = k * N + j
    if route == "auto":
        route = "quotient" if 2 ** m <= QUOTIENT_CAP else "presentation"
    if route == "quotient":
        dim, r, bad, wit = _basis_via_quotient(k, j, N, monos, cap)
    elif route == "presentation":
        dim, r, bad, wit = _basis_via_presentation(k, j, N, monos, cap)
    else:
        raise DomainError(f"unknown route {route!r}")
    return BasisReport(k, j, N, route, dim, len(monos), r, bad, wit)


# the local Weyl module route is cheap up to about m = 8
QUOTIENT_CAP = 256


def sweep_cases(max_dim=2000, max_N=6):
    """All (k, j, N) with N <= max_N and (k+1)^(N-j) (k+2)^j <= max_dim."""
    out = []
    for N in range(1, max_N + 1):
        for j in range(N):
            k = 0
            while expected_dim(k, j, N) <= max_dim:
                out.append((k, j, N))
                k += 1
    return out
