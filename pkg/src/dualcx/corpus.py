"""Fixture corpus and configuration generators."""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from itertools import combinations

from .homology import HomologyReport, homology
from .snc import SncConfig, Stratum, build_dual_complex
from .toric import Fan, fan_from_cone, interior_complex, resolve_fan, stellar_subdivide_fan, triangulate_cone

# Known homology, written out by hand rather than computed here.
_POINT = HomologyReport((1,), ((),))


def _report(betti, torsion=None):
    torsion = torsion or {}
    return HomologyReport(tuple(betti), tuple(tuple(torsion.get(k, ())) for k in range(len(betti))))


@dataclass(frozen=True)
class Fixture:
    name: str
    kind: str  # "snc-config", "fan" or "pending"
    payload: SncConfig | Fan | None
    expected: HomologyReport | None = None
    note: str = ""

    @property
    def has_data(self) -> bool:
        return self.payload is not None


def generate_cycle_of_curves(k: int) -> SncConfig:
    """k curves meeting in a cycle; for k = 2 the two curves meet twice."""
    if k < 2:
        raise ValueError("a cycle of curves needs at least 2 divisors")
    strata = [Stratum((i,)) for i in range(1, k + 1)]
    if k == 2:
        strata += [Stratum((1, 2), 1, (1, 1)), Stratum((1, 2), 2, (1, 1))]
    else:
        strata += [Stratum((i, i + 1), 1, (1, 1)) for i in range(1, k)]
        strata.append(Stratum((1, k), 1, (1, 1)))
    return SncConfig(f"cycle_of_curves_{k}", k, 2, tuple(strata))


def config_from_simplices(name, simplices, ambient_dim=None) -> SncConfig:
    faces = set()
    for s in simplices:
        s = tuple(sorted(s))
        for r in range(1, len(s) + 1):
            faces.update(combinations(s, r))
    ordered = sorted(faces, key=lambda f: (len(f), f))
    top = max(len(f) for f in ordered)
    n = max(f[-1] for f in ordered)
    strata = tuple(Stratum(f, 1, (1,) * len(f) if len(f) > 1 else ()) for f in ordered)
    return SncConfig(name, n, ambient_dim or top, strata)


TORUS7 = [tuple(sorted(((i + a) % 7 + 1 for a in offs))) for offs in ((0, 1, 3), (0, 2, 3)) for i in range(7)]
RP2_6 = [(1, 2, 4), (1, 2, 6), (1, 3, 5), (1, 3, 6), (1, 4, 5),
         (2, 3, 4), (2, 3, 5), (2, 5, 6), (3, 4, 6), (4, 5, 6)]
SQUARE = [(1, 0, 0), (1, 0, 1), (0, 1, 1), (0, 1, 0)]

GORDON_NOTE = ("resolution of x^8+y^8+z^8+x^2y^2z^2=0: target dim H1 over Q is 4; the "
               "intersection data of the resolution is not known, so no complex is bundled")


def square_cone_fan() -> Fan:
    """Square cone triangulated, then subdivided at its centre (1,1,1)."""
    fan = stellar_subdivide_fan(triangulate_cone(SQUARE, "square_cone"), (1, 1, 1))
    return fan


def a_cone(m: int) -> Fan:
    """The cone <(1,0),(1,m)> of multiplicity m."""
    return fan_from_cone([(1, 0), (1, m)], f"a_cone_{m}")


FIXTURE_NAMES = ("sphere2", "torus7", "rp2_6", "simplex_full(n)", "cycle_of_curves(k)",
                 "a1_cone", "a5_cone", "square_cone", "gordon_example")


def generate_fixture(name: str) -> Fixture:
    if name == "sphere2":
        cfg = config_from_simplices("sphere2", combinations(range(1, 5), 3), 3)
        return Fixture(name, "snc-config", cfg, _report((1, 0, 1)))
    if name == "torus7":
        return Fixture(name, "snc-config", config_from_simplices(name, TORUS7, 3), _report((1, 2, 1)))
    if name == "rp2_6":
        return Fixture(name, "snc-config", config_from_simplices(name, RP2_6, 3),
                       _report((1, 0, 0), {1: (2,)}))
    m = re.fullmatch(r"simplex_full\(?_?(\d+)\)?", name)
    if m:
        n = int(m.group(1))
        cfg = config_from_simplices(f"simplex_full_{n}", [range(1, n + 2)], n + 1)
        return Fixture(name, "snc-config", cfg, _report((1,) + (0,) * n))
    m = re.fullmatch(r"cycle_of_curves\(?_?(\d+)\)?", name)
    if m:
        return Fixture(name, "snc-config", generate_cycle_of_curves(int(m.group(1))), _report((1, 1)))
    if name == "a1_cone":
        return Fixture(name, "fan", a_cone(2), _POINT, "expected: interior complex after resolve_fan")
    if name == "a5_cone":
        return Fixture(name, "fan", a_cone(5), _POINT, "expected: interior complex after resolve_fan")
    if name == "square_cone":
        return Fixture(name, "fan", square_cone_fan(), _POINT,
                       "expected: interior complex after resolve_fan")
    if name == "gordon_example":
        return Fixture(name, "pending", None, None, GORDON_NOTE)
    raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURE_NAMES)}")


def recompute(fixture: Fixture) -> HomologyReport | None:
    """Homology the fixture's ``expected`` field should match."""
    if fixture.kind == "snc-config":
        return homology(build_dual_complex(fixture.payload))
    if fixture.kind == "fan":
        return homology(interior_complex(resolve_fan(fixture.payload)))
    return None


def generate_random_complex(seed, num_vertices=6, max_dim=2, num_simplices=4,
                            num_duplicates=2, coface_dup_prob=0.5) -> SncConfig:
    """Random connected configuration with extra components.

    Simplices are grown so that each new one touches the vertices already
    used; the face closure gives a simplicial complex. Then random cells of
    dimension >= 1 are duplicated (a second component on the same divisors,
    same facets) and some of their cofaces are copied onto the duplicate.
    """
    rng = random.Random(seed)
    simplices = []
    covered: set[int] = set()
    for _ in range(max(1, num_simplices)):
        d = rng.randint(0, min(max_dim, num_vertices - 1))
        if not covered:
            verts = set(rng.sample(range(1, num_vertices + 1), d + 1))
        else:
            anchor = rng.choice(sorted(covered))
            others = [v for v in range(1, num_vertices + 1) if v != anchor]
            verts = {anchor, *rng.sample(others, d)}
        simplices.append(tuple(sorted(verts)))
        covered |= verts
    relabel = {v: i + 1 for i, v in enumerate(sorted(covered))}
    faces = set()
    for s in simplices:
        s = tuple(relabel[v] for v in s)
        for r in range(1, len(s) + 1):
            faces.update(combinations(s, r))
    # stratum key -> facet components
    strata: dict[tuple, tuple] = {}
    for f in sorted(faces, key=lambda f: (len(f), f)):
        strata[(f, 1)] = (1,) * len(f) if len(f) > 1 else ()
    comps = {f: 1 for f in faces}
    candidates = sorted(f for f in faces if len(f) > 1)
    for _ in range(num_duplicates if candidates else 0):
        labs = rng.choice(candidates)
        orig = (labs, 1)
        comps[labs] += 1
        dup = (labs, comps[labs])
        strata[dup] = strata[orig]
        for (tl, tj), tf in sorted(strata.items()):
            if len(tl) != len(labs) + 1 or not set(labs) < set(tl):
                continue
            pos = next(i for i, x in enumerate(tl) if x not in labs)
            if tf[pos] != 1 or rng.random() >= coface_dup_prob:
                continue
            comps[tl] = comps.get(tl, 1) + 1
            facets = list(tf)
            facets[pos] = dup[1]
            strata[(tl, comps[tl])] = tuple(facets)
    ordered = sorted(strata.items(), key=lambda kv: (len(kv[0][0]), kv[0][0], kv[0][1]))
    top = max(len(k[0]) for k, _ in ordered)
    return SncConfig(f"random_{seed}", len(covered), top,
                     tuple(Stratum(labs, j, fc) for (labs, j), fc in ordered))
