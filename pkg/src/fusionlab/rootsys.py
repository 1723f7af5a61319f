"""Finite root systems of types A, B, C, D and G2.

Simple roots follow the Bourbaki numbering.  In particular for C_n the last
simple root is long, for B_n it is short, and for G2 the first simple root is
short, so the highest root of G2 is ``3*a1 + 2*a2``.

Roots are integer vectors in simple-root coordinates.  The invariant form is
normalized so that long roots have squared length 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Tuple

from fusionlab.errors import DomainError

Root = Tuple[int, ...]


def _simple_gram(type_label, rank):
    """Gram matrix of the simple roots, long roots normalized to 2."""
    half = Fraction(1, 2)
    S = [[Fraction(0)] * rank for _ in range(rank)]
    if type_label == "A":
        lengths = [2] * rank
        edges = [(i, i + 1, -1) for i in range(rank - 1)]
    elif type_label == "B":
        lengths = [2] * (rank - 1) + [1]
        edges = [(i, i + 1, -1) for i in range(rank - 1)]
    elif type_label == "C":
        lengths = [1] * (rank - 1) + [2]
        edges = [(i, i + 1, -half) for i in range(rank - 2)] + [(rank - 2, rank - 1, -1)]
    elif type_label == "D":
        lengths = [2] * rank
        edges = [(i, i + 1, -1) for i in range(rank - 2)] + [(rank - 3, rank - 1, -1)]
    elif type_label == "G":
        lengths = [Fraction(2, 3), 2]
        edges = [(0, 1, -1)]
    else:
        raise DomainError(f"unsupported type {type_label!r}")
    for i, L in enumerate(lengths):
        S[i][i] = Fraction(L)
    for i, j, c in edges:
        S[i][j] = S[j][i] = Fraction(c)
    return S


_VALID = {"A": 1, "B": 2, "C": 2, "D": 3}


def _check_type(type_label, rank):
    if type_label == "G":
        if rank != 2:
            raise DomainError("type G is only supported in rank 2")
        return
    if type_label not in _VALID:
        raise DomainError(f"unsupported type {type_label!r}; expected one of A, B, C, D, G")
    if not isinstance(rank, int) or rank < _VALID[type_label]:
        raise DomainError(f"type {type_label} needs rank >= {_VALID[type_label]}, got {rank}")


@dataclass(frozen=True)
class RootSystem:
    type_label: str
    rank: int
    cartan_matrix: Tuple[Tuple[int, ...], ...]
    positive_roots: Tuple[Root, ...]
    gram: Tuple[Tuple[Fraction, ...], ...] = field(repr=False)
    theta: Root = ()

    @property
    def name(self):
        return f"{self.type_label}{self.rank}"

    def form(self, a, b):
        """Invariant bilinear form on the root lattice."""
        return sum(a[i] * self.gram[i][j] * b[j]
                   for i in range(self.rank) if a[i]
                   for j in range(self.rank) if b[j])

    def norm(self, beta):
        return self.form(beta, beta)

    def d(self, beta):
        """d_beta = 2 / (beta, beta)."""
        q = Fraction(2) / self.norm(beta)
        if q.denominator != 1:
            raise DomainError(f"{beta} has non-integral d")
        return int(q)

    def simple_d(self):
        return tuple(self.d(self.simple_root(i)) for i in range(self.rank))

    def simple_root(self, i):
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def is_root(self, beta):
        return tuple(beta) in self._root_set

    @property
    def _root_set(self):
        s = self.__dict__.get("_rs")
        if s is None:
            s = frozenset(self.positive_roots)
            object.__setattr__(self, "_rs", s)
        return s

    def is_long(self, beta):
        return self.norm(beta) == 2

    def to_dict(self):
        return {
            "type": self.type_label,
            "rank": self.rank,
            "cartan_matrix": [list(r) for r in self.cartan_matrix],
            "positive_roots": [list(b) for b in self.positive_roots],
            "norms": [str(self.norm(b)) for b in self.positive_roots],
            "d": [self.d(b) for b in self.positive_roots],
            "theta": list(self.theta),
        }


@dataclass(frozen=True)
class DominantWeight:
    """Coefficients on the fundamental weights: ``coeffs[i] = lambda(alpha_i^vee)``."""

    coeffs: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if any(c < 0 for c in self.coeffs):
            raise DomainError(f"weight {self.coeffs} is not dominant")

    @property
    def size(self):
        return sum(self.coeffs)

    def __add__(self, other):
        return DominantWeight(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scaled(self, n):
        return DominantWeight(tuple(n * a for a in self.coeffs))

    def in_coweight_lattice(self, rs):
        return all(c % d == 0 for c, d in zip(self.coeffs, rs.simple_d()))

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)


def weight(*coeffs):
    if len(coeffs) == 1 and not isinstance(coeffs[0], int):
        coeffs = tuple(coeffs[0])
    return DominantWeight(tuple(coeffs))


def _positive_roots(cartan):
    """Positive roots by root strings, processed by height."""
    n = len(cartan)
    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(n):
                pair = sum(beta[j] * cartan[i][j] for j in range(n))
                p = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) in roots:
                        p += 1
                    else:
                        break
                if p - pair > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in roots:
                        roots.add(up)
                        nxt.append(up)
        layer = nxt
    return sorted(roots, key=lambda b: (sum(b), b))


def build_root_system(type_label, rank):
    _check_type(type_label, rank)
    S = _simple_gram(type_label, rank)
    cartan = []
    for i in range(rank):
        row = []
        for j in range(rank):
            v = 2 * S[i][j] / S[i][i]
            assert v.denominator == 1
            row.append(int(v))
        cartan.append(tuple(row))
    roots = _positive_roots(cartan)
    theta = max(roots, key=lambda b: (sum(b), b))
    return RootSystem(type_label, rank, tuple(cartan), tuple(roots),
                      tuple(tuple(r) for r in S), theta)


def all_supported(max_rank=4):
    """The types used by the verification sweeps."""
    out = []
    for t, lo in (("A", 1), ("B", 2), ("C", 2), ("D", 3)):
        for r in range(lo, max_rank + 1):
            out.append((t, r))
    out.append(("G", 2))
    return out


def _coerce_weight(lam):
    return lam if isinstance(lam, DominantWeight) else DominantWeight(tuple(lam))


def pairing(rs, lam, beta):
    """lambda(beta^vee) = 2 (lambda, beta) / (beta, beta)."""
    lam = _coerce_weight(lam)
    beta = tuple(beta)
    if not rs.is_root(beta):
        raise DomainError(f"{beta} is not a positive root of {rs.name}")
    if len(lam) != rs.rank:
        raise DomainError(f"weight has {len(lam)} coefficients, rank is {rs.rank}")
    num = sum(b * c * rs.gram[j][j] for j, (b, c) in enumerate(zip(beta, lam.coeffs)))
    val = num / rs.norm(beta)
    if val.denominator != 1:
        raise DomainError(f"non-integral pairing {val}")
    return int(val)


@dataclass(frozen=True)
class RootLengthRow:
    beta: Root
    lhs: Fraction
    rhs: Fraction
    holds: bool
    equality: bool
    support: Tuple[int, ...]
    vanishes_on_support: bool

    @property
    def coincides(self):
        return self.equality == self.vanishes_on_support


@dataclass(frozen=True)
class RootLengthReport:
    root_system: str
    weight: Tuple[int, ...]
    rows: Tuple[RootLengthRow, ...]

    @property
    def inequality_holds(self):
        return all(r.holds for r in self.rows)

    @property
    def equality_criterion_holds(self):
        return all(r.coincides for r in self.rows)

    @property
    def ok(self):
        return self.inequality_holds and self.equality_criterion_holds


def check_lemma2(rs, lam):
    """Compare lambda(beta^vee)(beta,beta) with lambda(theta^vee)(theta,theta).

    The difference theta - beta is written in simple roots; equality should
    occur exactly when lambda vanishes on the simple roots in its support.
    """
    lam = _coerce_weight(lam)
    rhs = pairing(rs, lam, rs.theta) * rs.norm(rs.theta)
    rows = []
    for beta in rs.positive_roots:
        lhs = pairing(rs, lam, beta) * rs.norm(beta)
        gamma = tuple(t - b for t, b in zip(rs.theta, beta))
        assert all(g >= 0 for g in gamma)
        support = tuple(i for i, g in enumerate(gamma) if g)
        vanish = all(lam.coeffs[i] == 0 for i in support)
        rows.append(RootLengthRow(beta, lhs, rhs, lhs <= rhs, lhs == rhs, support, vanish))
    return RootLengthReport(rs.name, lam.coeffs, tuple(rows))
