from itertools import combinations

import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from dualcx import (DEGENERATE, CellId, DeltaMap, HomologyReport, build_dual_complex, generate_cycle_of_curves,
                    homology, induced_homology_ranks, simplicial_complex)
from dualcx.complex import identity_map
from dualcx.corpus import RP2_6, TORUS7, generate_random_complex
from dualcx.homology import boundary_matrix, chain_map_failures


def oracle_homology(simplices):
    """Homology of a simplicial complex straight from label sets, via sympy."""
    faces = sorted({c for s in simplices for r in range(1, len(s) + 1) for c in combinations(sorted(s), r)},
                   key=lambda f: (len(f), f))
    by_dim = {}
    for f in faces:
        by_dim.setdefault(len(f) - 1, []).append(f)
    top = max(by_dim)
    ranks, tors = {}, {}
    for k in range(1, top + 1):
        lo = {f: i for i, f in enumerate(by_dim[k - 1])}
        M = sympy.zeros(len(lo), len(by_dim[k]))
        for j, f in enumerate(by_dim[k]):
            for i in range(len(f)):
                M[lo[f[:i] + f[i + 1:]], j] = (-1) ** i
        D = sympy_snf(M, domain=sympy.ZZ)
        diag = [abs(int(D[i, i])) for i in range(min(D.shape)) if D[i, i] != 0]
        ranks[k] = len(diag)
        tors[k - 1] = tuple(sorted(d for d in diag if d > 1))
    betti = tuple(len(by_dim[k]) - ranks.get(k, 0) - ranks.get(k + 1, 0) for k in range(top + 1))
    return HomologyReport(betti, tuple(tors.get(k, ()) for k in range(top + 1)))


def test_boundary_matrices(triangle, parallel, full_triangle):
    d = boundary_matrix(triangle, 1)
    assert d.shape == (3, 3)
    for col in d.columns():
        assert sorted(col.values()) == [-1, 1]
    assert sympy.Matrix(d.tolist()).rank() == 2
    p = boundary_matrix(parallel, 1).columns()
    assert p[0] == p[1] and sorted(p[0].values()) == [-1, 1]
    col = boundary_matrix(full_triangle, 2).columns()[0]
    by_label = {full_triangle[CellId(1, i)].labels: v for i, v in col.items()}
    assert by_label == {(2, 3): 1, (1, 3): -1, (1, 2): 1}


def test_named_complexes():
    assert homology(build_dual_complex(generate_cycle_of_curves(3))) == HomologyReport((1, 1), ((), ()))
    assert homology(simplicial_complex(TORUS7)) == oracle_homology(TORUS7)
    rp2 = homology(simplicial_complex(RP2_6))
    assert rp2 == oracle_homology(RP2_6)
    assert rp2.torsion[1] == (2,)


def test_reduced_and_empty():
    pt = homology(simplicial_complex([(1,)]), reduced=True)
    assert pt.is_acyclic()
    empty = homology(simplicial_complex([]), reduced=True)
    assert empty.betti == () and not empty.is_acyclic()


def test_report_json_round_trip():
    r = oracle_homology(RP2_6)
    assert HomologyReport.from_dict(r.to_dict()) == r
    assert HomologyReport((1, 1, 0), ((), (), ())).same_as(HomologyReport((1, 1), ((), ())))
    assert HomologyReport((1, 1, 0), ((), (), ())).digest() == HomologyReport((1, 1), ((), ())).digest()


simplex_lists = st.lists(st.lists(st.integers(1, 7), min_size=1, max_size=4, unique=True),
                         min_size=1, max_size=7)


@settings(max_examples=60, deadline=None)
@given(simplex_lists)
def test_homology_matches_sympy_oracle(simplices):
    assert homology(simplicial_complex(simplices)) == oracle_homology(simplices)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32))
def test_boundary_squares_to_zero(seed):
    cx = build_dual_complex(generate_random_complex(seed, num_vertices=7, max_dim=3, num_duplicates=3))
    for k in range(2, cx.dim + 1):
        assert (boundary_matrix(cx, k - 1) @ boundary_matrix(cx, k)).is_zero()


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32))
def test_betti_against_sympy_rank(seed):
    cx = build_dual_complex(generate_random_complex(seed, num_vertices=7, max_dim=3, num_duplicates=3))
    h = homology(cx)
    ranks = {k: sympy.Matrix(boundary_matrix(cx, k).tolist()).rank() if cx.count(k) and cx.count(k - 1) else 0
             for k in range(1, cx.dim + 1)}
    expect = tuple(cx.count(k) - ranks.get(k, 0) - ranks.get(k + 1, 0) for k in range(cx.dim + 1))
    assert h.betti == expect


def test_identity_is_isomorphism():
    cx = simplicial_complex(TORUS7)
    ranks = induced_homology_ranks(identity_map(cx))
    assert [r.rank for r in ranks] == [1, 2, 1]
    assert all(r.isomorphism for r in ranks)
    assert chain_map_failures(identity_map(cx)) == []


def test_constant_map_collapses_cycle():
    src = build_dual_complex(generate_cycle_of_curves(3))
    tgt = simplicial_complex([(1,)])
    v = {cid: CellId(0, 0) for cid in src.ids(0)}
    cells = dict(v) | {cid: DEGENERATE for cid in src.ids(1)}
    ranks = induced_homology_ranks(DeltaMap(src, tgt, v, cells))
    assert [(r.degree, r.rank) for r in ranks] == [(0, 1), (1, 0)]
    assert not ranks[1].isomorphism


def test_invalid_map_rejected():
    cx = simplicial_complex([(1, 2)])
    with pytest.raises(Exception):
        induced_homology_ranks(DeltaMap(cx, cx, {}, {}))
