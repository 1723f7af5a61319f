"""Demazure parameters, defining relations and the truncation bound."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from fusionlab.errors import DomainError
from fusionlab.rootsys import DominantWeight, RootSystem, pairing


@dataclass(frozen=True)
class DemazureParams:
    """lambda(beta^vee) = (p_beta - 1) d_beta level + m_beta with 0 < m_beta <= d_beta level."""

    p_beta: int
    m_beta: int
    d_beta: int
    level: int

    @property
    def value(self):
        return (self.p_beta - 1) * self.d_beta * self.level + self.m_beta


def decompose(n, d_beta, level):
    """The unique (p, m) with n = (p-1) D + m and 0 < m <= D, D = d_beta level."""
    if level < 1 or d_beta < 1:
        raise DomainError("level and d_beta must be positive")
    if n < 0:
        raise DomainError("pairing must be non-negative")
    D = d_beta * level
    p = -(-n // D)
    m = n - (p - 1) * D
    return DemazureParams(p, m, d_beta, level)


def demazure_params(level, lam, beta, rs):
    return decompose(pairing(rs, lam, beta), rs.d(tuple(beta)), level)


@dataclass(frozen=True)
class Relation:
    """One defining relation on the cyclic vector v.

    kind is one of
      ``raise``: (x_beta (x) t^a) v = 0 for all a >= 0,
      ``diag``: (h (x) t^a) v = delta_{a,0} lambda(h) v,
      ``power``: (x_{-beta} (x) t^a)^e v = 0.
    """

    kind: str
    beta: Tuple[int, ...] = ()
    a: int = 0
    e: int = 0

    def to_dict(self):
        return {"kind": self.kind, "beta": list(self.beta), "a": self.a, "e": self.e}


@dataclass(frozen=True)
class RelationSet:
    level: int
    weight: Tuple[int, ...]
    relations: Tuple[Relation, ...]

    def powers(self, beta=None):
        return [r for r in self.relations
                if r.kind == "power" and (beta is None or r.beta == tuple(beta))]


def demazure_relations(level, lam, rs):
    lam = lam if isinstance(lam, DominantWeight) else DominantWeight(tuple(lam))
    rels = [Relation("raise"), Relation("diag")]
    for beta in rs.positive_roots:
        prm = demazure_params(level, lam, beta, rs)
        rels.append(Relation("power", beta, 0, pairing(rs, lam, beta) + 1))
        rels.append(Relation("power", beta, prm.p_beta, 1))
        if prm.m_beta < prm.d_beta * level:
            rels.append(Relation("power", beta, prm.p_beta - 1, prm.m_beta + 1))
    return RelationSet(level, lam.coeffs, tuple(rels))


@dataclass(frozen=True)
class BoundRow:
    beta: Tuple[int, ...]
    p_beta: int
    m_beta: int
    bound: int
    expected_m: int

    @property
    def holds(self):
        return self.p_beta <= self.bound and self.m_beta == self.expected_m

    @property
    def margin(self):
        return self.bound - self.p_beta


@dataclass(frozen=True)
class BoundReport:
    level: int
    N: int
    lam1: Tuple[int, ...]
    lam0: Tuple[int, ...]
    rows: Tuple[BoundRow, ...]

    @property
    def ok(self):
        return all(r.holds for r in self.rows)


def truncation_bound(level, N, lam1, lam0, rs):
    """Check p_beta <= N (lambda1(theta^vee) + 1) for lambda = level N lambda1 + lambda0.

    Also checks the accompanying value of m_beta: d_beta level when
    lambda0(beta^vee) = 0, else lambda0(beta^vee).
    """
    lam1 = lam1 if isinstance(lam1, DominantWeight) else DominantWeight(tuple(lam1))
    lam0 = lam0 if isinstance(lam0, DominantWeight) else DominantWeight(tuple(lam0))
    if N < 1 or level < 1:
        raise DomainError("N and level must be positive")
    if not lam1.in_coweight_lattice(rs):
        raise DomainError(f"lambda1={lam1.coeffs} is not in the coweight lattice "
                          f"(coefficient i must be divisible by d_i={rs.simple_d()})")
    if pairing(rs, lam0, rs.theta) > level:
        raise DomainError(f"lambda0(theta^vee)={pairing(rs, lam0, rs.theta)} exceeds level {level}")
    lam = lam1.scaled(level * N) + lam0
    bound = N * (pairing(rs, lam1, rs.theta) + 1)
    rows = []
    for beta in rs.positive_roots:
        prm = demazure_params(level, lam, beta, rs)
        l0 = pairing(rs, lam0, beta)
        rows.append(BoundRow(beta, prm.p_beta, prm.m_beta, bound,
                             prm.d_beta * level if l0 == 0 else l0))
    return BoundReport(level, N, lam1.coeffs, lam0.coeffs, tuple(rows))
