"""Acceptance criteria 1-10, one test each.

Run with ``pytest tests/test_acceptance.py``; the terminal summary prints a
pass/fail line per criterion.
"""

import json
import random
import time
from fractions import Fraction

import pytest

from dualcx import (BlowupCenter, CellId, build_dual_complex, f_vector, generate_cycle_of_curves, generate_fixture,
                    homology, is_smooth_fan, resolve_fan, run_fuzz, serialize_config, simplicial_complex)
from dualcx.blowup import apply_case1, apply_case2, apply_sequence, parse_moves
from dualcx.cli import main
from dualcx.complex import build_chain_map, euler_characteristic
from dualcx.corpus import SQUARE, a_cone, generate_random_complex, square_cone_fan
from dualcx.fuzz import trial_complex
from dualcx.homology import boundary_matrix, induced_homology_ranks
from dualcx.matrix import IntMatrix, determinant, smith_normal_form
from dualcx.toric import _positive_functional, fan_volume, interior_complex, multiplicities, support_volume

FUZZ_SEED = 42


@pytest.fixture(scope="module")
def fuzz_run():
    start = time.perf_counter()
    records = run_fuzz(100, 5, FUZZ_SEED)
    return records, time.perf_counter() - start


@pytest.mark.criterion(1, "cycle_of_curves(k), k = 2..50: betti (1,1), no torsion, < 1 s")
def test_criterion_1_cusp_cycle(tmp_path, capsys):
    paths = []
    for k in range(2, 51):
        p = tmp_path / f"c{k}.snc"
        p.write_text(serialize_config(generate_cycle_of_curves(k)))
        paths.append(p)
    start = time.perf_counter()
    reports = []
    for p in paths:
        assert main(["homology", str(p), "--json"]) == 0
        reports.append(json.loads(capsys.readouterr().out))
    elapsed = time.perf_counter() - start
    for r in reports:
        assert r["betti"] == [1, 1] and r["torsion"] == [[], []]
    assert elapsed < 1.0


@pytest.mark.criterion(2, "A_n cones n = 1..8 and square cone: interior complex reduced-acyclic, < 1 s")
def test_criterion_2_toric_contractible():
    start = time.perf_counter()
    # A_n is the cone of multiplicity n + 1; see the decisions ledger
    fans = [a_cone(n + 1) for n in range(1, 9)] + [square_cone_fan()]
    for fan in fans:
        inner = interior_complex(resolve_fan(fan))
        h = homology(inner, reduced=True)
        assert h.is_acyclic(), (fan.name, h)
        assert not any(h.torsion)
    assert time.perf_counter() - start < 1.0


def test_smooth_unit_cone_is_flagged_not_contractible():
    # <(1,0),(1,1)> is already smooth: no interior ray, so the interior complex is empty
    inner = interior_complex(resolve_fan(a_cone(1)))
    assert inner.dim < 0
    assert not homology(inner, reduced=True).is_acyclic()


@pytest.mark.criterion(3, "run_fuzz(100 trials x 5 moves, seed 42): homology constant at every step, < 60 s")
def test_criterion_3_fuzz_invariance(fuzz_run):
    records, elapsed = fuzz_run
    failures = [(r.seed, r.detail) for r in records if r.outcome != "pass"]
    assert failures == []
    assert len(records) == 100
    for r in records:
        assert len(r.moves) == 5 and len(r.digests) == 6
        assert len(set(r.digests)) == 1
    cases = {c for r in records for c in r.cases}
    assert cases == {1, 2}
    assert elapsed < 60


def _commutes(m, k):
    lhs = boundary_matrix(m.target, k) @ build_chain_map(m, k)
    rhs = build_chain_map(m, k - 1) @ boundary_matrix(m.source, k)
    return lhs == rhs


def _check_contraction(m):
    for k in range(1, m.source.dim + 1):
        assert _commutes(m, k)
    ranks = induced_homology_ranks(m)
    assert all(r.isomorphism for r in ranks), ranks


@pytest.mark.criterion(4, "every case-2 contraction (fuzz run + worked fixtures): chain map, homology isomorphism")
def test_criterion_4_contractions(fuzz_run):
    records, _ = fuzz_run
    checked = 0
    for rec in records:
        assert rec.contractions_checked == rec.cases.count(2)
        results = apply_sequence(trial_complex(rec.seed), parse_moves("\n".join(rec.moves)))
        for res in results:
            if res.case == 2:
                _check_contraction(res.contraction)
                checked += 1
    assert checked == sum(r.cases.count(2) for r in records) > 0

    tri = simplicial_complex([(1, 2), (1, 3), (2, 3)])
    e = {tri[c].labels: c for c in tri.ids(1)}
    v = {lab: tri.vertex_of(lab) for lab in (1, 2, 3)}
    center = BlowupCenter(2, v[1], frozenset({v[1], v[2], v[3], e[(1, 2)], e[(1, 3)]}), 1,
                          {v[2]: e[(1, 2)], v[3]: e[(1, 3)]})
    res = apply_case2(tri, center)
    assert f_vector(res.complex_after) == (4, 6, 2)
    _check_contraction(res.contraction)
    pt = simplicial_complex([(1,)])
    _check_contraction(apply_case2(pt, BlowupCenter(2, CellId(0, 0), frozenset({CellId(0, 0)}), 1, {})).contraction)


@pytest.mark.criterion(5, "case-1 on the full 2-simplex: (4,6,3) and (4,5,2), chi = 1, point homology")
def test_criterion_5_case1_fixtures():
    full = simplicial_complex([(1, 2, 3)])
    point = homology(simplicial_complex([(1,)]))
    top = apply_case1(full, CellId(2, 0)).complex_after
    edge = apply_case1(full, full.face(CellId(2, 0), (1, 2))).complex_after
    assert f_vector(top) == (4, 6, 3) and f_vector(edge) == (4, 5, 2)
    for cx in (top, edge):
        assert euler_characteristic(cx) == 1
        assert homology(cx).same_as(point)
        assert homology(cx, reduced=True).is_acyclic()


@pytest.mark.criterion(6, "SNF on 200 random matrices <= 30x30: UAV = D, unimodular, divisibility; fixed cases; < 30 s")
def test_criterion_6_snf():
    start = time.perf_counter()
    rng = random.Random(20240601)
    for _ in range(200):
        m, n = rng.randint(1, 30), rng.randint(1, 30)
        A = IntMatrix([[rng.randint(-50, 50) for _ in range(n)] for _ in range(m)], m, n)
        r = smith_normal_form(A)
        assert r.U @ A @ r.V == r.D
        assert abs(determinant(r.U)) == 1 and abs(determinant(r.V)) == 1
        assert all(r.D[i, j] == 0 for i in range(m) for j in range(n) if i != j)
        d = r.D.diagonal()
        nz = [x for x in d if x]
        assert d[:len(nz)] == nz and all(x > 0 for x in nz)
        assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert smith_normal_form(IntMatrix([[2, 4], [6, 8]])).D == IntMatrix([[2, 0], [0, 4]])
    assert smith_normal_form(IntMatrix.identity(3)).D == IntMatrix.identity(3)
    assert smith_normal_form(IntMatrix.zeros(2, 3)).D == IntMatrix.zeros(2, 3)
    assert time.perf_counter() - start < 30


@pytest.mark.criterion(7, "sphere2 (1,0,1), torus7 (1,2,1), rp2_6 (1,0,0) with torsion_1 = {2}")
def test_criterion_7_oracle_fixtures():
    def h(name):
        return homology(build_dual_complex(generate_fixture(name).payload))

    assert h("sphere2").betti == (1, 0, 1) and not any(h("sphere2").torsion)
    assert h("torus7").betti == (1, 2, 1) and not any(h("torus7").torsion)
    rp2 = h("rp2_6")
    assert rp2.betti == (1, 0, 0) and rp2.torsion == ((), (2,), ())


@pytest.mark.criterion(8, "resolve_fan: smooth, support volume preserved, multiplicities decrease; A5 rays")
def test_criterion_8_resolution_soundness():
    # (input, extreme rays of its support)
    inputs = [(a_cone(m), a_cone(m).rays) for m in range(2, 10)] + [(square_cone_fan(), SQUARE)]
    inputs += [(g, g) for g in ([(1, 0, 0), (0, 1, 0), (1, 2, 5)], [(1, 0, 0), (0, 1, 0), (3, 5, 7)],
                                [(1, 0, 1), (0, 1, 1), (-1, 1, 1), (-1, -1, 1), (1, -1, 1)])]
    for src, gens in inputs:
        history = []
        fan = resolve_fan(src, history=history)
        assert is_smooth_fan(fan)[0]
        assert all(after < before for before, after in zip(history, history[1:]))
        assert history[-1] == multiplicities(fan) == (1,) * len(fan.maximal)
        w = _positive_functional(gens)
        assert fan_volume(fan, w) == support_volume(gens, w) > Fraction(0)
    a5 = resolve_fan(a_cone(5))
    assert set(a5.rays) - {(1, 0), (1, 5)} == {(1, 1), (1, 2), (1, 3), (1, 4)}


@pytest.mark.criterion(9, "homology of cycle_of_curves(1000) and a >= 10,000-cell random complex, < 10 s")
def test_criterion_9_performance():
    cycle = build_dual_complex(generate_cycle_of_curves(1000))
    big = build_dual_complex(generate_random_complex(2024, num_vertices=40, max_dim=4,
                                                     num_simplices=3000, num_duplicates=300))
    assert big.num_cells() >= 10_000
    start = time.perf_counter()
    hc = homology(cycle)
    hb = homology(big)
    elapsed = time.perf_counter() - start
    assert hc.betti == (1, 1) and not any(hc.torsion)
    assert sum((-1) ** k * b for k, b in enumerate(hb.betti)) == euler_characteristic(big)
    assert elapsed < 10


@pytest.mark.criterion(10, "gordon_example slot reports no data (no fabricated complex)")
def test_criterion_10_pending_fixture(capsys):
    fx = generate_fixture("gordon_example")
    assert fx.payload is None and fx.expected is None and not fx.has_data
    assert main(["corpus", "gordon_example"]) == 4
    assert "no data" in capsys.readouterr().out
