"""A partial order on N-tuples of dominant weights with fixed sum.

For a tuple (l_1, ..., l_N) and a positive root beta, r_{beta,k} is the least
value of (l_{i_1} + ... + l_{i_k})(beta^vee) over k-subsets.  One tuple is
below another when all of its r values are <= the other's.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Tuple

from fusionlab import config
from fusionlab.errors import DomainError, ResourceCapError
from fusionlab.rootsys import DominantWeight, pairing


class Order(enum.Enum):
    LE = "LE"
    GE = "GE"
    EQ = "EQ"
    INCOMPARABLE = "INCOMPARABLE"


@dataclass(frozen=True)
class WeightTuple:
    entries: Tuple[DominantWeight, ...]

    def __post_init__(self):
        ents = tuple(e if isinstance(e, DominantWeight) else DominantWeight(tuple(e))
                     for e in self.entries)
        if not ents:
            raise DomainError("a weight tuple needs at least one entry")
        if len({len(e) for e in ents}) != 1:
            raise DomainError("entries have different ranks")
        object.__setattr__(self, "entries", ents)

    @property
    def N(self):
        return len(self.entries)

    @property
    def sum(self):
        out = self.entries[0]
        for e in self.entries[1:]:
            out = out + e
        return out

    def canonical(self):
        return WeightTuple(tuple(sorted(self.entries, key=lambda w: w.coeffs)))

    def as_lists(self):
        return [list(e.coeffs) for e in self.entries]


def wtuple(*entries):
    return WeightTuple(tuple(DominantWeight(tuple(e) if not isinstance(e, int) else (e,))
                             for e in entries))


def r_beta_k(tup, beta, k, rs):
    """Sum of the k smallest pairings; equals the k-subset minimum by linearity."""
    if not 1 <= k <= tup.N:
        raise DomainError(f"k={k} outside 1..{tup.N}")
    vals = sorted(pairing(rs, e, beta) for e in tup.entries)
    return sum(vals[:k])


def r_beta_k_bruteforce(tup, beta, k, rs):
    return min(sum(pairing(rs, tup.entries[i], beta) for i in S)
               for S in itertools.combinations(range(tup.N), k))


def r_vector(tup, rs):
    out = []
    for beta in rs.positive_roots:
        vals = sorted(pairing(rs, e, beta) for e in tup.entries)
        acc = 0
        for v in vals:
            acc += v
            out.append(acc)
    return tuple(out)


def _cmp_vectors(a, b):
    le = all(x <= y for x, y in zip(a, b))
    ge = all(x >= y for x, y in zip(a, b))
    if le and ge:
        return Order.EQ
    if le:
        return Order.LE
    if ge:
        return Order.GE
    return Order.INCOMPARABLE


def compare(t1, t2, rs):
    if t1.N != t2.N:
        raise DomainError(f"tuples have different lengths {t1.N} and {t2.N}")
    if t1.sum != t2.sum:
        raise DomainError(f"tuples have different sums {t1.sum.coeffs} and {t2.sum.coeffs}")
    return _cmp_vectors(r_vector(t1, rs), r_vector(t2, rs))


def _below(lam):
    return itertools.product(*(range(c + 1) for c in lam))


def enumerate_tuples(lam, N, cap=None):
    """All N-tuples of dominant weights summing to lam, up to permutation.

    Each tuple is listed once, with entries in ascending lexicographic order.
    """
    lam = lam if isinstance(lam, DominantWeight) else DominantWeight(tuple(lam))
    cap = config.tuple_cap(cap)
    if N < 1:
        raise DomainError("N must be positive")
    out = []

    def rec(rem, n, lo, pref):
        if n == 1:
            if rem >= lo:
                out.append(pref + (rem,))
                if len(out) > cap:
                    raise ResourceCapError("weight tuples", len(out), cap)
            return
        for mu in _below(rem):
            if mu < lo:
                continue
            rest = tuple(a - b for a, b in zip(rem, mu))
            # the remaining n-1 entries are all >= mu, so their sum must be too
            if rest < mu:
                continue
            rec(rest, n - 1, mu, pref + (mu,))

    rec(lam.coeffs, N, tuple(0 for _ in lam.coeffs), ())
    return [WeightTuple(t) for t in out]


def maximal_elements(lam, N, rs, cap=None):
    tuples = enumerate_tuples(lam, N, cap)
    vecs = [r_vector(t, rs) for t in tuples]
    maxima = []
    for i, v in enumerate(vecs):
        if not any(_cmp_vectors(v, w) == Order.LE and v != w for w in vecs):
            maxima.append(tuples[i])
    return maxima


def hasse_count(tuples, rs):
    """Number of covering relations among distinct r-vectors."""
    vecs = sorted({r_vector(t, rs) for t in tuples})
    less = {a: [b for b in vecs if b != a and _cmp_vectors(a, b) == Order.LE] for a in vecs}
    count = 0
    for a in vecs:
        ups = set(less[a])
        for b in less[a]:
            if not any(b in less[c] for c in ups if c != b):
                count += 1
    return count


def expected_maximum(lam, N, rs):
    """(mu, ..., mu, mu + lam0) when lam = N mu + lam0 with mu in the coweight
    lattice and lam0(theta^vee) <= 1; None if no such decomposition exists."""
    lam = lam if isinstance(lam, DominantWeight) else DominantWeight(tuple(lam))
    for lam0 in _below(lam.coeffs):
        rest = [a - b for a, b in zip(lam.coeffs, lam0)]
        if any(r % N for r in rest):
            continue
        mu = DominantWeight(tuple(r // N for r in rest))
        l0 = DominantWeight(lam0)
        if not mu.in_coweight_lattice(rs) or pairing(rs, l0, rs.theta) > 1:
            continue
        return WeightTuple((mu,) * (N - 1) + (mu + l0,)).canonical()
    return None


def sl2_expected_maximum(m, N):
    """(k, ..., k, k+1, ..., k+1) with N - j copies of k, for m = k N + j."""
    k, j = divmod(m, N)
    return WeightTuple(tuple(DominantWeight((k,)) for _ in range(N - j)) +
                       tuple(DominantWeight((k + 1,)) for _ in range(j)))


@dataclass(frozen=True)
class UniquenessReport:
    weight: Tuple[int, ...]
    N: int
    maxima: Tuple[WeightTuple, ...]
    expected: WeightTuple

    @property
    def ok(self):
        return len(self.maxima) == 1 and self.maxima[0] == self.expected.canonical()


def check_unique_maximum(lam, N, rs, expected=None, cap=None):
    lam = lam if isinstance(lam, DominantWeight) else DominantWeight(tuple(lam))
    if expected is None:
        expected = expected_maximum(lam, N, rs)
        if expected is None:
            raise DomainError(f"{lam.coeffs} has no decomposition N mu + lam0 of the required kind")
    return UniquenessReport(lam.coeffs, N, tuple(maximal_elements(lam, N, rs, cap)), expected)
