import pytest
from hypothesis import given, settings, strategies as st

from dualcx import (ParseError, SncConfig, ValidationError, build_dual_complex, f_vector, generate_cycle_of_curves,
                    homology, parse_config, serialize_config)
from dualcx.complex import euler_characteristic
from dualcx.corpus import config_from_simplices, generate_random_complex
from dualcx.snc import Stratum, config_from_complex

TRIANGLE = """\
snc triangle
dim 3
divisors 3
cell 0 [1] 1
cell 0 [2] 1
cell 0 [3] 1
cell 1 [1 2] 1 ; facets 1 1
cell 1 [1 3] 1 ; facets 1 1
cell 1 [2 3] 1 ; facets 1 1
"""


def test_parse_triangle():
    cfg = parse_config(TRIANGLE)
    assert [s.depth for s in cfg.strata].count(1) == 3
    assert [s.depth for s in cfg.strata].count(2) == 3
    assert f_vector(build_dual_complex(cfg)) == (3, 3)


def _error(text):
    with pytest.raises(ParseError) as e:
        parse_config(text)
    return e.value


def test_unsorted_labels():
    err = _error(TRIANGLE.replace("cell 1 [1 2] 1", "cell 1 [2 1] 1"))
    assert "labels not strictly increasing" in str(err)
    assert err.line == 7 and err.column is not None


def test_dangling_reference():
    err = _error(TRIANGLE.replace("cell 1 [1 3] 1 ; facets 1 1", "cell 1 [1 3] 1 ; facets 2 1"))
    assert "dangling reference" in str(err) and "[3] component 2" in str(err)
    assert err.line == 8


@pytest.mark.parametrize("text, fragment", [
    ("dim 2\n", "expected 'snc'"),
    ("snc x\ndim 2\ndivisors 2\ncell 0 [1] 2\n", "exactly one component"),
    ("snc x\ndim 2\ndivisors 2\ncell 0 [1] 1\ncell 0 [1] 1\n", "duplicate stratum"),
    ("snc x\ndim 2\ndivisors 2\ncell 0 [3] 1\n", "out of range"),
    ("snc x\ndim 2\ndivisors 2\ncell 1 [1 2] 1\n", "facet components"),
    ("snc x\ndim 1\ndivisors 2\ncell 0 [1] 1\ncell 0 [2] 1\ncell 1 [1 2] 1 ; facets 1 1\n", "exceeds ambient"),
    ("snc x\ndim 2\n", "missing 'divisors'"),
    ("snc x\ndim two\n", "expected integer"),
    ("snc x\ndim 2\ndivisors 2\nvertex 1\n", "unexpected keyword"),
])
def test_parse_errors(text, fragment):
    assert fragment in str(_error(text))


def test_round_trip_and_empty():
    cfg = parse_config(TRIANGLE)
    assert parse_config(serialize_config(cfg)) == cfg
    empty = SncConfig("empty", 0, 2, ())
    assert serialize_config(empty) == "snc empty\ndim 2\ndivisors 0\n"
    assert parse_config(serialize_config(empty)) == empty


def test_parallel_and_full_simplex():
    cx = build_dual_complex(generate_cycle_of_curves(2))
    assert f_vector(cx) == (2, 2)
    assert homology(cx).betti == (1, 1)
    full = build_dual_complex(config_from_simplices("full", [(1, 2, 3)]))
    assert f_vector(full) == (3, 3, 1) and euler_characteristic(full) == 1


def test_incompatible_facets_rejected():
    # two triangle components over the same edges but with crossed facet choices
    strata = [Stratum((i,)) for i in (1, 2, 3)]
    strata += [Stratum((1, 2), 1, (1, 1)), Stratum((1, 2), 2, (1, 1)),
               Stratum((1, 3), 1, (1, 1)), Stratum((2, 3), 1, (1, 1)),
               Stratum((1, 2, 3), 1, (1, 1, 1))]
    assert homology(build_dual_complex(SncConfig("ok", 3, 3, tuple(strata)))).betti == (1, 1, 0)
    bad = SncConfig("bad", 3, 3, tuple(strata[:3]) + (Stratum((1, 2), 1, (1, 2)),))
    with pytest.raises(ValidationError):
        build_dual_complex(bad)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32))
def test_random_config_round_trip(seed):
    cfg = generate_random_complex(seed)
    assert parse_config(serialize_config(cfg)) == cfg
    cx = build_dual_complex(cfg)
    assert build_dual_complex(config_from_complex(cx, cfg.name)) == cx
