"""Exit criteria for the package, one test per criterion.

Each test logs a PASS/FAIL line; the lines are printed in the pytest
terminal summary under "acceptance criteria".
"""

import time

import numpy as np
import pytest

from socialstore.analysis import (
    CASE_STUDY_PARAMS,
    Outcome,
    RegimeKind,
    case_study_matrix,
    check_theorem1,
    enumerate_stable,
    expected_network,
    ratio_grid,
    sweep_ratio,
    verify_regime_claim,
)
from socialstore.config import StartSpec, build_start
from socialstore.dynamics import (
    MoveKind,
    PairOrderPolicy,
    Status,
    inequality_sides,
    is_bilaterally_stable,
    prefers_add,
    prefers_add_inequality,
    prefers_delete,
    prefers_delete_inequality,
    run_dynamics,
)
from socialstore.model import Network, Params, SocialRangeMatrix

from conftest import random_matrix

TABLE1 = case_study_matrix(0.1)
CASE = CASE_STUDY_PARAMS


def record(log, number, title, ok, detail):
    log(f"[{'PASS' if ok else 'FAIL'}] {number:>2}. {title}: {detail}")


def test_c01_case_study_convergence(acceptance_log):
    t0 = time.perf_counter()
    trace = run_dynamics(Network.empty(5), TABLE1, CASE, PairOrderPolicy.lexicographic())
    report = enumerate_stable(5, TABLE1, CASE)
    elapsed = time.perf_counter() - t0
    ok = (
        trace.status is Status.STABLE
        and trace.passes <= 50
        and is_bilaterally_stable(trace.final, TABLE1, CASE)
        and trace.final in report
        and elapsed < 1.0
    )
    record(acceptance_log, 1, "case-study convergence", ok,
           f"{trace.status.value} after {trace.passes} passes, final {trace.final.edges}, {elapsed:.3f}s")
    assert ok


def test_c02_non_uniqueness(acceptance_log):
    t0 = time.perf_counter()
    report = enumerate_stable(5, TABLE1, CASE)
    baseline = run_dynamics(Network.empty(5), TABLE1, CASE).final
    different_seed = None
    for seed in range(64):
        start = build_start(5, StartSpec("random", p_edge=0.5, seed=seed))
        trace = run_dynamics(start, TABLE1, CASE)
        if trace.status is Status.STABLE and trace.final != baseline:
            different_seed = seed
            break
    elapsed = time.perf_counter() - t0
    ok = report.count >= 2 and different_seed is not None and elapsed < 1.0
    record(acceptance_log, 2, "non-uniqueness", ok,
           f"{report.count} stable networks; random start seed {different_seed} reaches another; {elapsed:.3f}s")
    assert ok


def test_c03_empty_window(acceptance_log):
    t0 = time.perf_counter()
    sweep = sweep_ratio(TABLE1, 0.2, ratio_grid(0.01, 0.12, 0.001))
    elapsed = time.perf_counter() - t0
    runs = sweep.zero_runs()
    ok = (
        len(runs) == 1
        and abs(runs[0][0] - 0.044) <= 0.005
        and abs(runs[0][1] - 0.089) <= 0.005
        and all(pt.stable_count >= 1 for pt in sweep.grid if not runs[0][0] <= pt.ratio <= runs[0][1])
        and elapsed < 30.0
    )
    counts = [pt.stable_count for pt in sweep.grid]
    record(acceptance_log, 3, "empty window", ok,
           f"zero-count runs {runs}; stable counts range {min(counts)}..{max(counts)} over {len(counts)} ratios; {elapsed:.3f}s")
    assert ok


def test_c04_enemy_regime(acceptance_log):
    t0 = time.perf_counter()
    p = Params(0.2, 0.1, 0.2)
    report = enumerate_stable(5, TABLE1, p)
    enemy = expected_network(RegimeKind.ENEMY_PAIRS, 5, TABLE1)
    trace = run_dynamics(Network.empty(5), TABLE1, p)
    elapsed = time.perf_counter() - t0
    ok = (
        report.stable_networks == [enemy]
        and enemy.n_edges == 5
        and trace.status is Status.STABLE
        and trace.final == enemy
        and elapsed < 1.0
    )
    record(acceptance_log, 4, "enemy regime", ok,
           f"stable set {[n.edges for n in report.stable_networks]}, dynamics -> {trace.final.edges}; {elapsed:.3f}s")
    assert ok


def _friend_draw(rng):
    n = int(rng.choice([3, 4, 5]))
    eps = rng.uniform(0, 1)
    lam = rng.uniform(0.05, 0.95)
    return n, SocialRangeMatrix.friends_all(n, eps), lam


def test_c05_lemma1(acceptance_log):
    rng = np.random.default_rng(5)
    t0 = time.perf_counter()
    failures = []
    for _ in range(100):
        n, F, lam = _friend_draw(rng)
        ratio = rng.uniform(0, 1) * (1 - lam) * lam ** (n - 2)
        beta = rng.uniform(0.05, 0.95)
        p = Params(ratio * beta, beta, lam)
        verdict = verify_regime_claim(RegimeKind.COMPLETE, n, F, p)
        if verdict.outcome is not Outcome.CONFIRMED:
            failures.append((n, F[0][0], p))
    elapsed = time.perf_counter() - t0
    ok = not failures and elapsed < 60
    record(acceptance_log, 5, "lemma 1 (complete network unique)", ok,
           f"{100 - len(failures)}/100 confirmed; {elapsed:.2f}s")
    assert ok, failures[:3]


def test_c06_lemma2(acceptance_log):
    rng = np.random.default_rng(6)
    t0 = time.perf_counter()
    failures = []
    for _ in range(100):
        n, F, lam = _friend_draw(rng)
        ratio = (1 - lam) * rng.uniform(1.0001, 3)
        beta = rng.uniform(0.05, 0.99) * min(0.95, 0.99 / ratio)
        p = Params(ratio * beta, beta, lam)
        verdict = verify_regime_claim(RegimeKind.EMPTY, n, F, p)
        if verdict.outcome is not Outcome.CONFIRMED:
            failures.append((n, F[0][0], p))
    elapsed = time.perf_counter() - t0
    ok = not failures and elapsed < 60
    record(acceptance_log, 6, "lemma 2 (empty network unique)", ok,
           f"{100 - len(failures)}/100 confirmed; {elapsed:.2f}s")
    assert ok, failures[:3]


def test_c07_corollary1(acceptance_log):
    rng = np.random.default_rng(7)
    t0 = time.perf_counter()
    not_member, unique = [], 0
    for _ in range(100):
        n = int(rng.choice([3, 4, 5]))
        eps = rng.uniform(0, 1)
        lam = rng.uniform(0.05, 0.95)
        signs = np.triu(rng.choice([-1.0, 1.0], size=(n, n)), 1)
        signs = signs + signs.T
        F = SocialRangeMatrix.from_sign_pattern(eps, signs.tolist())
        ratio = (1 - lam) / (1 - eps) * rng.uniform(1.0001, 3)
        beta = rng.uniform(0.05, 0.99) * min(0.95, 0.99 / ratio)
        p = Params(ratio * beta, beta, lam)
        verdict = verify_regime_claim(RegimeKind.ENEMY_PAIRS, n, F, p)
        if not verdict.member:
            not_member.append((n, eps, p))
        unique += verdict.unique
    elapsed = time.perf_counter() - t0
    ok = not not_member and elapsed < 60
    record(acceptance_log, 7, "corollary 1 (enemy pairs link)", ok,
           f"membership {100 - len(not_member)}/100, unique {unique}/100; {elapsed:.2f}s")
    assert ok, not_member[:3]


def test_c08_theorem1_property(acceptance_log):
    rng = np.random.default_rng(8)
    t0 = time.perf_counter()
    failures, covered = [], 0
    for _ in range(10_000):
        lam = rng.uniform(0.01, 0.99)
        beta = rng.uniform(0.01, 0.99)
        c = (1 - lam) * beta * rng.uniform(1e-6, 1)
        p = Params(c, beta, lam)
        f_ij = rng.uniform(0.01, 2)
        F = SocialRangeMatrix([[rng.uniform(0.01, 2), f_ij], [f_ij, rng.uniform(0.01, 2)]])
        n_i, n_j = (int(x) for x in rng.integers(0, 12, size=2))
        if not check_theorem1(p, F, 0, 1, n_i, n_j):
            failures.append((p, F.values, n_i, n_j))
        covered += max(n_i, n_j) < abs(np.log(c / ((1 - lam) * beta))) / abs(np.log(lam))
    elapsed = time.perf_counter() - t0
    ok = not failures and elapsed < 5
    record(acceptance_log, 8, "theorem 1 sufficiency bound", ok,
           f"{10_000 - len(failures)}/10000 hold ({covered} with hypothesis true); {elapsed:.2f}s")
    assert ok, failures[:3]


def test_c09_oracle_equivalence(acceptance_log):
    rng = np.random.default_rng(9)
    t0 = time.perf_counter()
    endpoint_misses = moved_from_stable = terminated = 0
    for k in range(500):
        n = int(rng.integers(2, 6))
        F = random_matrix(rng, n)
        p = Params(rng.uniform(0.005, 0.99), rng.uniform(0.05, 0.99), rng.uniform(0.05, 0.95))
        report = enumerate_stable(n, F, p)
        starts = [Network.empty(n), Network(n, int(rng.integers(0, 1 << n * (n - 1) // 2)))]
        for start in starts:
            trace = run_dynamics(start, F, p, PairOrderPolicy.lexicographic())
            if trace.status is Status.STABLE:
                terminated += 1
                endpoint_misses += trace.final not in report
        for net in report.stable_networks:
            moved_from_stable += bool(run_dynamics(net, F, p).moves)
    elapsed = time.perf_counter() - t0
    ok = endpoint_misses == 0 and moved_from_stable == 0 and elapsed < 120
    record(acceptance_log, 9, "oracle equivalence", ok,
           f"{terminated} terminating runs, {endpoint_misses} outside the stable set, "
           f"{moved_from_stable} stable starts that moved; {elapsed:.2f}s")
    assert ok


def test_c10_form_equivalence(acceptance_log):
    rng = np.random.default_rng(10)
    t0 = time.perf_counter()
    agreed = disagreed = 0
    while agreed + disagreed < 10_000:
        lam = rng.uniform(0.01, 0.99)
        p = Params(rng.uniform(0.001, 0.99), rng.uniform(0.001, 0.99), lam)
        f_ij = rng.uniform(-2, 2)
        F = SocialRangeMatrix([[rng.uniform(0.01, 2), f_ij], [f_ij, rng.uniform(0.01, 2)]])
        n_i, n_j = (int(x) for x in rng.integers(1, 10, size=2))
        kind = MoveKind.ADD if rng.random() < 0.5 else MoveKind.DELETE
        sides = inequality_sides(F, p, 0, 1, n_i, n_j, kind)
        if min(abs(lhs - rhs) for lhs, rhs in sides) <= 1e-12:
            continue
        if kind is MoveKind.ADD:
            same = prefers_add(F, p, 0, 1, n_i, n_j) == prefers_add_inequality(F, p, 0, 1, n_i, n_j)
        else:
            same = prefers_delete(F, p, 0, 1, n_i, n_j) == prefers_delete_inequality(F, p, 0, 1, n_i, n_j)
        agreed += same
        disagreed += not same
    elapsed = time.perf_counter() - t0
    ok = disagreed == 0 and elapsed < 1
    record(acceptance_log, 10, "delta form vs inequality form", ok,
           f"{agreed}/10000 agree; {elapsed:.3f}s")
    assert ok
