"""The acceptance checks, shared by ``fusionlab verify-all`` and the test suite.

Each check returns a :class:`CheckResult`.  A check made of several cases
is SKIPPED only when every case hit a resource cap; otherwise skipped cases
are listed and the verdict comes from the cases that ran.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

from fusionlab import config
from fusionlab.errors import ResourceCapError

PASS, FAIL, SKIPPED = "PASS", "FAIL", "SKIPPED"


@dataclass
class CheckConfig:
    dimension_cap: Optional[int] = None
    tuple_cap: Optional[int] = None
    seed: int = 0
    # offset added to the default last carry index N-4 (0 = as defined)
    carry_offset: int = 0

    @property
    def dim_cap(self):
        return config.dimension_cap(self.dimension_cap)

    @property
    def tup_cap(self):
        return config.tuple_cap(self.tuple_cap)

    def carry_top(self, N):
        return None if self.carry_offset == 0 else N - 4 + self.carry_offset


@dataclass
class CheckResult:
    number: int
    name: str
    status: str
    seconds: float = 0.0
    cases: int = 0
    skipped: List[dict] = field(default_factory=list)
    failures: List[dict] = field(default_factory=list)
    detail: Dict[str, object] = field(default_factory=dict)

    def line(self):
        extra = f"{self.cases} cases"
        if self.skipped:
            extra += f", {len(self.skipped)} skipped"
        if self.failures:
            extra += f", {len(self.failures)} failed"
        return f"[{self.status}] criterion {self.number:2d} {self.name} ({extra}, {self.seconds:.1f}s)"

    def to_dict(self):
        return {"number": self.number, "name": self.name, "status": self.status,
                "seconds": round(self.seconds, 3), "cases": self.cases,
                "skipped": self.skipped, "failures": self.failures, "detail": self.detail}


class _Run:
    """Collects case outcomes for one check."""

    def __init__(self, number, name):
        self.res = CheckResult(number, name, PASS)
        self.t0 = time.perf_counter()

    def case(self, label, fn):
        """Run fn(); a falsy or failing result is a failure, a cap is a skip."""
        try:
            out = fn()
        except ResourceCapError as exc:
            self.res.skipped.append({"case": label, "reason": str(exc)})
            return None
        self.res.cases += 1
        ok, info = out if isinstance(out, tuple) else (out, None)
        if not ok:
            entry = {"case": label}
            if info is not None:
                entry["witness"] = info
            self.res.failures.append(entry)
        return ok

    def finish(self, budget=None, **detail):
        r = self.res
        r.seconds = time.perf_counter() - self.t0
        r.detail.update(detail)
        if budget is not None:
            r.detail["budget_seconds"] = budget
            if r.seconds > budget:
                r.failures.append({"case": "runtime", "witness": f"{r.seconds:.1f}s > {budget}s"})
        if r.failures:
            r.status = FAIL
        elif r.cases == 0 and r.skipped:
            r.status = SKIPPED
        return r


def _lab(t):
    return ",".join(map(str, t))


# 1-3: the worked examples


def check_example_B12(cfg):
    from fusionlab.pbw import recursive_basis
    run = _Run(1, "recursive basis B(1,2)")
    want = {(0, 0), (0, 1), (1, 1), (1, 0), (2, 0), (3, 0)}
    run.case("B(1,2)", lambda: (recursive_basis((1, 2)) == want,
                                sorted(map(list, recursive_basis((1, 2))))))
    return run.finish(budget=1.0)


def _example_set_k2_N4():
    """Solutions of 6i0 + 8i1 + 12i2 + 24i3 <= 48 - 2b0 with b0 = i0 mod 4."""
    out = []
    for i in itertools.product(range(9), range(7), range(5), range(3)):
        b0 = i[0] % 4
        if 6 * i[0] + 8 * i[1] + 12 * i[2] + 24 * i[3] <= 48 - 2 * b0:
            out.append(i)
    return sorted(out)


def check_example_N4_k2(cfg):
    from fusionlab.pbw import enumerate_S, verify_basis_property
    run = _Run(2, "S(2^4) and a basis of W(8,4)")
    S = run.case("enumerate", lambda: _ok_diff(
        enumerate_S(2, 0, 4, cfg.tup_cap, cfg.carry_top(4)), _example_set_k2_N4()))
    run.case("cardinality 81", lambda: (len(enumerate_S(2, 0, 4, cfg.tup_cap, cfg.carry_top(4))) == 81,
                                        len(enumerate_S(2, 0, 4, cfg.tup_cap, cfg.carry_top(4)))))

    def basis():
        rep = verify_basis_property(2, 0, 4, cap=cfg.dim_cap, carry_top=cfg.carry_top(4))
        return rep.ok and rep.module_dim == 81, rep.to_dict()

    run.case("basis of W(8,4)", basis)
    return run.finish(budget=10.0, enumerate_matches=bool(S))


def _ok_diff(got, want):
    g, w = set(got), set(want)
    if g == w and list(got) == sorted(got):
        return True, None
    return False, {"only_computed": sorted(map(list, g - w))[:20],
                   "only_expected": sorted(map(list, w - g))[:20]}


def check_f1_cubed(cfg):
    from fusionlab.pbw import enumerate_S, in_S
    run = _Run(3, "f_1^3 in B(1^4)")
    run.case("(0,3,0,0)", lambda: (0, 3, 0, 0) in enumerate_S(1, 0, 4, cfg.tup_cap, cfg.carry_top(4)))
    run.case("in_S", lambda: in_S((0, 3, 0, 0), 1, 0, cfg.carry_top(4)))
    return run.finish()


# 4-7: sl2 modules


def check_pbw_sweep(cfg):
    from fusionlab.pbw import (enumerate_S, expected_dim, sweep_cases, verify_basis_property,
                               verify_equivalence)
    run = _Run(4, "PBW basis sweep, dim <= 2000, N <= 6")
    routes = {}
    for k, j, N in sweep_cases(2000, 6):
        lab = f"k={k},j={j},N={N}"
        top = cfg.carry_top(N)

        def card(k=k, j=j, N=N, top=top):
            n = len(enumerate_S(k, j, N, cfg.tup_cap, top))
            return n == expected_dim(k, j, N), {"size": n, "expected": expected_dim(k, j, N)}

        def equiv(k=k, j=j, N=N, top=top):
            rep = verify_equivalence(k, j, N, cfg.tup_cap, top)
            return rep.ok, {"only_S": rep.to_dict()["only_S"][:10],
                            "only_recursive": rep.to_dict()["only_recursive"][:10]}

        def basis(k=k, j=j, N=N, top=top):
            if expected_dim(k, j, N) > cfg.dim_cap:
                raise ResourceCapError("truncated Weyl module", expected_dim(k, j, N), cfg.dim_cap)
            rep = verify_basis_property(k, j, N, cap=cfg.dim_cap, carry_top=top)
            routes[rep.route] = routes.get(rep.route, 0) + 1
            d = rep.to_dict()
            return rep.ok, {"rank": d["rank"], "count": d["count"], "module_dim": d["module_dim"],
                            "bad_pieces": dict(list(d["bad_pieces"].items())[:5]),
                            "witness": d["witness"]}

        run.case(lab + " cardinality", card)
        run.case(lab + " equivalence", equiv)
        run.case(lab + " basis", basis)
    return run.finish(budget=600.0, routes=routes)


def check_parameter_independence(cfg):
    from fusionlab.pbw import expected_dim, sweep_cases
    from fusionlab.sl2mod import parameter_independence
    run = _Run(5, "parameter independence over the sweep")
    for k, j, N in sweep_cases(2000, 6):
        if N == 1:
            continue

        def one(k=k, j=j, N=N):
            if expected_dim(k, j, N) > cfg.dim_cap:
                raise ResourceCapError("fusion product", expected_dim(k, j, N), cfg.dim_cap)
            rep = parameter_independence(k, N, j, cap=cfg.dim_cap, seed=cfg.seed)
            return rep.ok, {"graded": [g.to_list() for g in rep.graded],
                            "params": rep.param_sets}

        run.case(f"k={k},j={j},N={N}", one)
    return run.finish(seed=cfg.seed, param_sets="integers, negative integers, random rationals")


def check_truncated_local_weyl(cfg):
    from fusionlab.sl2mod import fusion_graded_of, local_weyl, truncate
    run = _Run(6, "truncated local Weyl module vs fusion")
    cache = {}

    def lw(m):
        if m not in cache:
            cache[m] = local_weyl(m, cap=cfg.dim_cap)
        return cache[m]

    cases = sorted(((N * c + eps, N, c, eps) for N in range(1, 5) for c in range(4)
                    for eps in (0, 1)))
    for m, N, c, eps in cases:
        # cases are sorted by m, so smaller modules are no longer needed
        for old in [x for x in cache if x < m]:
            del cache[old]

        def one(m=m, N=N, c=c, eps=eps):
            T = truncate(lw(m), N)
            F = fusion_graded_of([c] * (N - 1) + [c + eps], cap=cfg.dim_cap)
            left = tuple(sorted(T.weight_graded_dims().items()))
            right = tuple(sorted(F.weight_graded_dims().items()))
            return left == right, {"truncated": T.graded_dims().to_list(),
                                   "fusion": F.graded_dims().to_list()}

        run.case(f"c={c},N={N},eps={eps}", one)
    return run.finish()


def check_relations(cfg):
    from fusionlab.sl2mod import verify_cv13_relations
    run = _Run(7, "x(r,s) relations and Garland identity, m <= 6")
    counts = {"relations": 0, "garland": 0}
    for N in range(1, 7):
        for k in range(0, 7):
            for j in range(N):
                m = k * N + j
                if not 1 <= m <= 6:
                    continue

                def one(k=k, N=N, j=j):
                    rep = verify_cv13_relations(k, N, j, cap=cfg.dim_cap)
                    counts["relations"] += rep.checked
                    counts["garland"] += rep.garland_checked
                    return rep.ok, [list(map(str, f)) for f in rep.failures[:5]]

                run.case(f"k={k},N={N},j={j}", one)
    return run.finish(**counts)


# 8-10: root data and weights


def _random_weight(rng, rank, hi=4):
    return tuple(rng.randint(0, hi) for _ in range(rank))


def check_root_lengths(cfg):
    from fusionlab.rootsys import all_supported, build_root_system, check_lemma2
    run = _Run(8, "root length inequality, 100 weights per type")
    equalities = 0
    for t, r in all_supported():
        rs = build_root_system(t, r)
        rng = random.Random(f"{cfg.seed}-{t}{r}")
        for n in range(100):
            lam = _random_weight(rng, r)
            rep = check_lemma2(rs, lam)
            equalities += sum(row.equality for row in rep.rows)
            run.case(f"{rs.name} {lam}", lambda rep=rep: (rep.ok, {
                "inequality": rep.inequality_holds, "equality_criterion": rep.equality_criterion_holds}))
    return run.finish(seed=cfg.seed, equality_cases=equalities)


def check_truncation_bound(cfg):
    from fusionlab.demazure import truncation_bound
    from fusionlab.rootsys import DominantWeight, all_supported, build_root_system, pairing
    run = _Run(9, "truncation bound, 50 instances per type")
    for t, r in all_supported():
        rs = build_root_system(t, r)
        d = rs.simple_d()
        rng = random.Random(f"{cfg.seed}-bound-{t}{r}")
        n = 0
        while n < 50:
            level = rng.randint(1, 3)
            N = rng.randint(1, 4)
            lam1 = tuple(d[i] * rng.randint(0, 2) for i in range(r))
            lam0 = _random_weight(rng, r, hi=level)
            if pairing(rs, DominantWeight(lam0), rs.theta) > level:
                continue
            n += 1
            rep = truncation_bound(level, N, lam1, lam0, rs)
            run.case(f"{rs.name} l={level} N={N} {lam1} {lam0}", lambda rep=rep: (
                rep.ok, [dict(beta=list(row.beta), p=row.p_beta, m=row.m_beta, bound=row.bound)
                         for row in rep.rows if not row.holds][:3]))
    return run.finish(seed=cfg.seed)


def check_unique_maximum(cfg):
    from fusionlab.rootsys import build_root_system
    from fusionlab.weightorder import check_unique_maximum, expected_maximum
    run = _Run(10, "unique maximal tuple")
    A1, A2 = build_root_system("A", 1), build_root_system("A", 2)
    cases = [(A1, (m,), N) for m in range(9) for N in range(1, 5)]
    cases += [(A2, (a, b), N) for a in range(7) for b in range(7 - a) for N in range(1, 4)]
    covered = 0
    for rs, lam, N in cases:
        if expected_maximum(lam, N, rs) is None:
            continue
        covered += 1

        def one(rs=rs, lam=lam, N=N):
            rep = check_unique_maximum(lam, N, rs, cap=cfg.tup_cap)
            return rep.ok, {"maxima": [t.as_lists() for t in rep.maxima],
                            "expected": rep.expected.as_lists()}

        run.case(f"{rs.name} {lam} N={N}", one)
    return run.finish(decomposable_cases=covered, total_cases=len(cases))


# 11-12


COMPARISON_CASES = [(1, 1, 0, 2), (1, 1, 1, 2), (1, 1, 0, 3), (1, 2, 0, 2), (2, 1, 0, 2), (2, 1, 1, 2)]


def check_toroidal(cfg):
    from fusionlab.toroidal import verify_theorem1_sl2
    run = _Run(11, "bigraded tables, sl2 consistency check")
    tables = {}
    for level, c, lam0, N in COMPARISON_CASES:
        def one(level=level, c=c, lam0=lam0, N=N):
            rep = verify_theorem1_sl2(level, c, lam0, N, cap=cfg.dim_cap)
            tables[f"{level},{c},{lam0},{N}"] = rep.left.to_dict()
            return rep.ok, rep.to_dict()

        run.case(f"l={level},c={c},l0={lam0},N={N}", one)
    return run.finish(budget=300.0, tables=tables, label="consistency check")


def check_structure(cfg):
    import math
    from fusionlab.presentation import TruncatedWeyl
    from fusionlab.sl2mod import fusion_of, local_weyl, truncate
    from fusionlab.toroidal import demazure_left
    run = _Run(12, "structural invariants")

    def module_ok(M):
        probs = M.check_structure()
        return not probs, probs

    for ks in ([1, 1], [1, 1, 1], [2, 1], [2, 2, 1], [3, 1, 1], [2, 2, 2], [1, 1, 1, 1, 1]):
        def fus(ks=ks):
            M = fusion_of(ks, cap=cfg.dim_cap)
            ok, probs = module_ok(M)
            total = sum(M.graded_dims().dims) == math.prod(k + 1 for k in ks)
            return ok and total, {"problems": probs, "graded": M.graded_dims().to_list()}

        run.case(f"fusion {ks}", fus)
    for m in range(1, 7):
        def lw(m=m):
            M = local_weyl(m, cap=cfg.dim_cap)
            return module_ok(M)

        run.case(f"local Weyl {m}", lw)
        for N in range(1, m + 1):
            def tr(m=m, N=N):
                M = local_weyl(m, cap=cfg.dim_cap)
                T = truncate(M, N)
                k, j = divmod(m, N)
                ok, probs = module_ok(T)
                consistent = (T.dim + T.kernel_dim == M.dim
                              and T.dim == (k + 1) ** (N - j) * (k + 2) ** j)
                return ok and consistent, {"problems": probs, "dim": T.dim, "kernel": T.kernel_dim}

            run.case(f"truncate W_loc({m}) at {N}", tr)

            def pres(m=m, N=N):
                return module_ok(TruncatedWeyl(m, N, cfg.dim_cap).to_module())

            run.case(f"presentation W({m},{N})", pres)
    for level, c, lam0, N in COMPARISON_CASES:
        run.case(f"D({level},{level * N * c + lam0})",
                 lambda a=(level, c, lam0, N): module_ok(demazure_left(*a, cap=cfg.dim_cap)))
    return run.finish()


CHECKS: List[Callable[[CheckConfig], CheckResult]] = [
    check_example_B12, check_example_N4_k2, check_f1_cubed, check_pbw_sweep,
    check_parameter_independence, check_truncated_local_weyl, check_relations, check_root_lengths,
    check_truncation_bound, check_unique_maximum, check_toroidal, check_structure,
]


def run_check(number, cfg=None):
    return CHECKS[number - 1](cfg or CheckConfig())
