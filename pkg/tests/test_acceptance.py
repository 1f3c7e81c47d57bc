"""Acceptance suite: one test per criterion, one printed verdict line each.

Every expected value here is exact; the numeric constants were computed
with the brute-force oracles in ``oracles.py`` (span enumeration over
GF(q), literal flat-list closure) and frozen.  Run with ``pytest -s``
to see the verdict lines.
"""

from __future__ import annotations

import itertools
import random
import time

import pytest

import hypermod as hm
from oracles import brute_rank

# Oracle-pinned constants.
PG32_PROFILE = (1, 15, 35, 15, 1)
PG33_PROFILE = (1, 40, 130, 40, 1)
FANO_PROFILE = (1, 7, 7, 1)
DEL32_FLAGS = 28
DEL32_TOTAL_DEFECT = 49
PG33_TRAJECTORY = (390, 195, 0)


def _verdict(num: int, elapsed: float, detail: str):
    print(f"ACCEPTANCE {num}: PASS ({elapsed:.2f}s) {detail}")


_memo: dict[str, object] = {}


def _get(key: str, maker):
    if key not in _memo:
        _memo[key] = maker()
    return _memo[key]


def _pg32() -> hm.Matroid:
    return _get("pg32", lambda: hm.pg3(2))


def _del32() -> hm.Matroid:
    return _get("del32", lambda: hm.delete(_pg32(), {0}))


def _pg33() -> hm.Matroid:
    return _get("pg33", lambda: hm.pg3(3))


def _del33ab() -> hm.Matroid:
    return _get("del33ab", lambda: hm.delete(_pg33(), {0, 1}))


def _extensions() -> list[hm.ExtensionResult]:
    def make():
        D = _del32()
        out = []
        for f3, f2 in hm.disjoint_rank32_pairs(D):
            ctx = hm.build_context(D, f3, f2)
            out.append(hm.extend_once(D, ctx))
        return out

    return _get("extensions", make)


def _completion() -> hm.CompletionOutcome:
    return _get("completion", lambda: hm.complete_to_modular(_del33ab()))


def test_criterion_1_pg32_golden_fixture():
    t0 = time.perf_counter()
    M = hm.pg3(2)
    assert hm.profile(M).counts == PG32_PROFILE
    assert hm.is_hypermodular(M)
    assert hm.is_modular(M)
    assert hm.total_modular_defect(M).total == 0
    elapsed = time.perf_counter() - t0
    assert elapsed < 5.0
    _memo.setdefault("pg32", M)
    _verdict(1, elapsed, f"pg3(2) profile {PG32_PROFILE}, modular, defect 0")


def test_criterion_2_deletion_fixture():
    t0 = time.perf_counter()
    D = hm.delete(_pg32(), {0})
    assert D.is_loopless
    assert hm.is_inseparable(D)
    assert hm.is_hypermodular(D)
    assert not hm.is_modular(D)
    flags = hm.disjoint_rank32_pairs(D)
    assert len(flags) == DEL32_FLAGS
    total = hm.total_modular_defect(D).total
    assert total == DEL32_TOTAL_DEFECT > 0
    elapsed = time.perf_counter() - t0
    assert elapsed < 5.0
    _memo.setdefault("del32", D)
    _verdict(2, elapsed, f"one-point deletion: {DEL32_FLAGS} flags, defect {total}")


def test_criterion_3_extension_end_to_end():
    t0 = time.perf_counter()
    D = _del32()
    M = _pg32()
    flags = hm.disjoint_rank32_pairs(D)
    assert len(flags) == DEL32_FLAGS
    results = []
    for f3, f2 in flags:
        ctx = hm.build_context(D, f3, f2)
        assert ctx.pencil_size == 3
        verdict = hm.criterion_holds(D, ctx)
        assert verdict.holds
        assert hm.verify_star_structure(D, ctx).passed
        result = hm.extend_once(D, ctx)
        ext = result.extended
        assert hm.profile(ext).counts == PG32_PROFILE
        assert hm.is_isomorphic(ext, M) is not None
        assert hm.restrict(ext, range(D.ground_size)) == D
        assert hm.total_modular_defect(ext).total == 0
        assert hm.is_hypermodular(ext)
        contraction = hm.contract(ext, {result.new_element})
        assert hm.profile(contraction).counts == FANO_PROFILE
        results.append(result)
    elapsed = time.perf_counter() - t0
    assert elapsed < 30.0
    _memo.setdefault("extensions", results)
    _verdict(3, elapsed, f"all {DEL32_FLAGS} flags extend to PG(3,2)")


def test_criterion_4_multi_step_completion():
    t0 = time.perf_counter()
    base = hm.pg3(3)
    start = hm.delete(base, {0, 1})
    outcome = hm.complete_to_modular(start)
    assert outcome.ok
    assert len(outcome.steps) == 2
    trajectory = [outcome.steps[0].defect_before] + [s.defect_after for s in outcome.steps]
    assert tuple(trajectory) == PG33_TRAJECTORY
    assert trajectory[0] > trajectory[1] > trajectory[2]
    assert hm.profile(outcome.matroid).counts == PG33_PROFILE
    elapsed = time.perf_counter() - t0
    assert elapsed < 60.0
    _memo.setdefault("pg33", base)
    _memo.setdefault("del33ab", start)
    _memo.setdefault("completion", outcome)
    _verdict(4, elapsed, f"2 steps, defects {trajectory}, final {PG33_PROFILE}")


def test_criterion_5_counterexample_fixture():
    t0 = time.perf_counter()
    V = hm.vamos()
    assert not hm.is_hypermodular(V)
    witness = next(
        (f, g)
        for f, g in itertools.combinations(V.flats_by_rank[3], 2)
        if not (f & g)
    )
    assert hm.modular_defect(V, *witness) > 0
    assert hm.is_hypermodular(_pg32())
    assert hm.is_hypermodular(_pg33())
    elapsed = time.perf_counter() - t0
    assert elapsed < 5.0
    _verdict(5, elapsed, f"vamos fails via disjoint corank-1 pair {tuple(sorted(witness[0]))}/{tuple(sorted(witness[1]))}")


def _axiom_fixture_zoo():
    pg32 = _pg32()
    pg33 = _pg33()
    plane = hm.flats_of_rank(pg32, 3)[0]
    zoo: list[tuple[str, hm.Matroid]] = [
        ("pg3(2)", pg32),
        ("pg3(3)", pg33),
        ("uniform(3,4)", hm.uniform(3, 4)),
        ("uniform(4,4)", hm.uniform(4, 4)),
        ("uniform(2,3)", hm.uniform(2, 3)),
        ("uniform(1,3)", hm.uniform(1, 3)),
        ("vamos", hm.vamos()),
        ("del32", _del32()),
        ("restrict(pg32,plane)", hm.restrict(pg32, plane)),
        ("contract(pg32,pt)", hm.contract(pg32, {0})),
        ("del33a", hm.delete(pg33, {0})),
        ("del33ab", _del33ab()),
    ]
    for i, result in enumerate(_extensions()):
        zoo.append((f"extension_{i}", result.extended))
        if i == 0:
            zoo.append(("contract(ext,new)", hm.contract(result.extended, {result.new_element})))
    zoo.append(("completion(del33ab)", _completion().matroid))
    return zoo


def test_criterion_6_axiom_property_suite():
    t0 = time.perf_counter()
    violations = 0
    checked = 0
    for name, M in _axiom_fixture_zoo():
        rep = hm.verify_flat_axioms(M)
        assert rep.passed, (name, rep.violations[:2])
        if M.ground_size <= hm.EXHAUSTIVE_LIMIT:
            rep = hm.verify_rank_axioms(M, mode="exhaustive")
        else:
            rep = hm.verify_rank_axioms(M, mode="sampled", seed=0, trials=10000)
        assert rep.passed, (name, rep.violations[:2])
        violations += len(rep.violations)
        checked += 1

    # negative controls: a missing line and a mis-graded flat must be caught
    grades = [list(g) for g in _pg32().flats_by_rank]
    grades[2].pop(0)
    mutated = hm.Matroid(15, grades)
    rep = hm.verify_flat_axioms(mutated)
    assert not rep.passed and rep.violations[0].witnesses
    fabricated = hm.Matroid(3, [[frozenset()], [{2}], [], [{0, 1}], [{0, 1, 2}]])
    rep = hm.verify_rank_axioms(fabricated, mode="exhaustive")
    assert not rep.passed and any(v.axiom == "R1" for v in rep.violations)

    elapsed = time.perf_counter() - t0
    _verdict(6, elapsed, f"{checked} fixtures clean, negative controls witnessed")


def _hypermodular_rank4_fixtures():
    return [
        ("pg3(2)", _pg32()),
        ("pg3(3)", _pg33()),
        ("del32", _del32()),
        ("del33ab", _del33ab()),
        ("uniform(4,4)", hm.uniform(4, 4)),
    ]


def test_criterion_7_structural_property_suite():
    t0 = time.perf_counter()
    contexts_checked = 0
    for name, M in _hypermodular_rank4_fixtures():
        flags = hm.disjoint_rank32_pairs(M)

        # flag-free fixtures are exactly the modular ones
        assert (not flags) == hm.is_modular(M), name

        # disjoint flags exist iff some rank-3 flat holds two disjoint rank-2 flats
        nested = any(
            not (a & b)
            for t in M.flats_by_rank[3]
            for a, b in itertools.combinations(
                [l for l in M.flats_by_rank[2] if l <= t], 2
            )
        )
        assert bool(flags) == nested, name

        # rank-1 flats are modular against everything
        for f in M.flats_by_rank[1]:
            assert hm.is_modular_flat(M, f), name

        # contractions by rank-1 flats stay hypermodular, and rank-3
        # hypermodular means modular
        for f in M.flats_by_rank[1]:
            q = hm.contract(M, f)
            assert q.rank == 3 and hm.is_hypermodular(q), name
            assert hm.is_modular(q), name

        # rank-3 flats of inseparable fixtures are inseparable
        if hm.is_inseparable(M):
            for f in M.flats_by_rank[3]:
                assert hm.is_inseparable(hm.restrict(M, f)), name

        # per-flag context structure
        for f3, f2 in flags:
            ctx = hm.build_context(M, f3, f2)  # validates the tiling facts
            assert ctx.pencil_size >= 3
            assert hm.is_inseparable(hm.restrict(M, ctx.flat3))
            for a in ctx.pencil:
                assert hm.is_inseparable(hm.restrict(M, a))
            joins = {
                hm.closure(M, a | b)
                for a, b in itertools.combinations(ctx.star_lines, 2)
            }
            assert set(ctx.star_planes) <= joins
            verdict = hm.criterion_holds(M, ctx)
            assert verdict.holds, (name, f3, f2)
            assert hm.verify_star_structure(M, ctx).passed, (name, f3, f2)
            contexts_checked += 1
        if flags:
            assert hm.is_inseparable(M), name

    elapsed = time.perf_counter() - t0
    _verdict(7, elapsed, f"structural suite clean over {contexts_checked} contexts")


def test_criterion_8_arrangement_consistency():
    t0 = time.perf_counter()
    rank4_loopless = [
        _pg32(),
        _pg33(),
        _del32(),
        _del33ab(),
        hm.vamos(),
        hm.uniform(4, 4),
        hm.uniform(4, 6),
    ]
    for M in rank4_loopless:
        assert hm.check_line_connectivity(M).passed == hm.is_hypermodular(M)

    M = _pg32()
    rng = random.Random(2024)
    proper = [f for k in (1, 2, 3) for f in hm.flats_of_rank(M, k)]
    mismatches = 0
    for _ in range(1000):
        a, b = rng.sample(proper, 2)
        direct = brute_rank(M, set(a) | set(b)) == M.rank - 1
        if hm.meet_at_point(M, [a, b]) != direct:
            mismatches += 1
    assert mismatches == 0

    D = _del32()
    for f3, f2 in hm.disjoint_rank32_pairs(D):
        ctx = hm.build_context(D, f3, f2)
        assert hm.plane_cover_check(D, ctx).passed

    elapsed = time.perf_counter() - t0
    assert elapsed < 30.0
    _verdict(8, elapsed, "line connectivity, 1000 incidence probes, plane covers")


def test_criterion_9_io_round_trip():
    t0 = time.perf_counter()
    for name, M in _axiom_fixture_zoo():
        text = hm.serialize_matroid(M)
        assert hm.parse_matroid(text) == M, name
        assert hm.serialize_matroid(M) == text, name  # byte-stable re-run
    cfg = hm.pg3_points(2)
    pts_text = hm.serialize_points(cfg)
    assert hm.parse_points(pts_text).points == cfg.points
    assert hm.serialize_points(hm.parse_points(pts_text), name=cfg.name) == pts_text
    elapsed = time.perf_counter() - t0
    _verdict(9, elapsed, "parse/serialize identity on the whole fixture zoo")
