"""Rational fans, toric resolution and the associated dual complexes.

Cones are tuples of 0-based indices into the fan's ray table. Simplicial
cones are stored sorted; a non-simplicial input cone (n <= 3 only) is
stored as its extreme rays in cyclic order. In the cross-section complex
ray ``i`` becomes the divisor label ``i + 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import floor, gcd
from typing import Sequence

from .complex import Cell, CellId, DeltaComplex, make_complex
from .errors import DualcxError, ParseError, UnsupportedInput, ValidationError
from .matrix import IntMatrix, determinant, nonnegative_solution, smith_normal_form

Vector = tuple[int, ...]


class ConeError(DualcxError):
    pass


def is_primitive(v: Sequence[int]) -> bool:
    return any(v) and reduce(gcd, v, 0) == 1


def primitive(v: Sequence[int]) -> Vector:
    g = reduce(gcd, v, 0)
    if g == 0:
        raise ConeError("zero vector has no primitive generator")
    return tuple(x // g for x in v)


@dataclass(frozen=True)
class Fan:
    rays: tuple[Vector, ...]
    maximal: tuple[tuple[int, ...], ...]
    boundary: frozenset = frozenset()
    name: str = "fan"

    @property
    def dim(self) -> int:
        return len(self.rays[0]) if self.rays else 0

    def generators(self, cone) -> list[Vector]:
        return [self.rays[i] for i in cone]

    def is_simplicial_cone(self, cone) -> bool:
        return len(cone) <= self.dim and _rank(self.generators(cone)) == len(cone)

    def cones(self) -> list[tuple[int, ...]]:
        """Face closure of the maximal cones, as sorted index tuples."""
        out = set()
        for cone in self.maximal:
            if self.is_simplicial_cone(cone):
                for k in range(1, len(cone) + 1):
                    out.update(combinations(sorted(cone), k))
            else:
                out.add(tuple(sorted(cone)))
                for i in range(len(cone)):
                    out.add(tuple(sorted((cone[i], cone[(i + 1) % len(cone)]))))
                    out.add((cone[i],))
        return sorted(out, key=lambda c: (len(c), c))


def fan_from_cone(rays: Sequence[Sequence[int]], name="cone") -> Fan:
    """Single-cone fan; every generator is a boundary ray."""
    rays = tuple(tuple(int(x) for x in r) for r in rays)
    n = len(rays)
    cone = tuple(range(n))
    fan = Fan(rays, (cone,), frozenset(range(n)), name)
    if fan.is_simplicial_cone(cone):
        fan = replace(fan, maximal=(tuple(sorted(cone)),))
    return fan


def _rank(vectors) -> int:
    rows = [[Fraction(x) for x in v] for v in vectors]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c] / rows[rank][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def coordinates(gens: Sequence[Vector], x: Sequence[int]) -> list[Fraction] | None:
    """Solve x = sum(lam_i * gens[i]) exactly; None when x is outside the span.

    ``gens`` must be linearly independent.
    """
    k = len(gens)
    n = len(x)
    # augmented n x (k+1) system, columns are the generators
    a = [[Fraction(gens[j][i]) for j in range(k)] + [Fraction(x[i])] for i in range(n)]
    row = 0
    for c in range(k):
        piv = next((i for i in range(row, n) if a[i][c]), None)
        if piv is None:
            raise ConeError("generators are linearly dependent")
        a[row], a[piv] = a[piv], a[row]
        p = a[row][c]
        a[row] = [v / p for v in a[row]]
        for i in range(n):
            if i != row and a[i][c]:
                f = a[i][c]
                a[i] = [u - f * w for u, w in zip(a[i], a[row])]
        row += 1
    if any(a[i][k] for i in range(row, n)):
        return None
    return [a[i][k] for i in range(k)]


def cone_multiplicity(gens: Sequence[Sequence[int]]) -> int:
    """Index of the lattice spanned by ``gens`` in its saturation.

    gcd of the maximal minors of the generator matrix.
    """
    gens = [tuple(g) for g in gens]
    k = len(gens)
    if k == 0:
        return 1
    n = len(gens[0])
    if k > n:
        raise ConeError("more generators than the dimension: not simplicial")
    g = 0
    for cols in combinations(range(n), k):
        g = gcd(g, determinant(IntMatrix([[v[c] for c in cols] for v in gens])))
    if g == 0:
        raise ConeError("generators are linearly dependent")
    return g


def is_smooth_fan(fan: Fan) -> tuple[bool, list[tuple[int, ...]]]:
    bad = []
    for cone in fan.cones():
        if not fan.is_simplicial_cone(cone) or cone_multiplicity(fan.generators(cone)) != 1:
            bad.append(cone)
    return (not bad, bad)


def multiplicities(fan: Fan) -> tuple[int, ...]:
    """Multiplicities of the maximal cones, sorted descending."""
    return tuple(sorted((cone_multiplicity(fan.generators(c)) for c in fan.maximal), reverse=True))


def _unimodular_inverse(m: IntMatrix) -> IntMatrix:
    n = m.rows
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m.data)]
    for c in range(n):
        piv = next(i for i in range(c, n) if a[i][c])
        a[c], a[piv] = a[piv], a[c]
        p = a[c][c]
        a[c] = [v / p for v in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [u - f * w for u, w in zip(a[i], a[c])]
    return IntMatrix([[int(v) for v in row[n:]] for row in a], n, n)


def parallelepiped_points(gens: Sequence[Vector]) -> list[tuple[Vector, tuple[Fraction, ...]]]:
    """Non-zero lattice points of the half-open parallelepiped of ``gens``.

    Each point comes with its coordinates in [0, 1). The points are the
    coset representatives of (saturated span lattice) / (generated lattice),
    read off the Smith normal form of the generator matrix.
    """
    gens = [tuple(g) for g in gens]
    k, n = len(gens), len(gens[0])
    cols = IntMatrix([[g[i] for g in gens] for i in range(n)], n, k)
    snf = smith_normal_form(cols)
    d = snf.D.diagonal()
    if len(d) < k or any(x == 0 for x in d):
        raise ConeError("generators are linearly dependent")
    uinv = _unimodular_inverse(snf.U)
    reps = [[]]
    for di in d:
        reps = [r + [c] for r in reps for c in range(di)]
    out = []
    for r in reps:
        if not any(r):
            continue
        p = [sum(uinv.data[i][j] * r[j] for j in range(k)) for i in range(n)]
        lam = coordinates(gens, p)
        frac = tuple(x - floor(x) for x in lam)
        point = tuple(int(sum(f * g[i] for f, g in zip(frac, gens))) for i in range(n))
        out.append((point, frac))
    return out


def subdivision_point(gens: Sequence[Vector]) -> Vector:
    """Parallelepiped point with least coordinate sum, ties lexicographic."""
    pts = parallelepiped_points(gens)
    if not pts:
        raise ConeError("cone is smooth; nothing to subdivide")
    return min(pts, key=lambda pf: (sum(pf[1]), pf[0]))[0]


def _locate(fan: Fan, ray: Vector) -> tuple[int, ...] | None:
    """Indices of the smallest cone containing ``ray`` in its relative interior."""
    for cone in fan.maximal:
        if not fan.is_simplicial_cone(cone):
            raise UnsupportedInput("stellar subdivision needs a simplicial fan; triangulate first")
        lam = coordinates(fan.generators(cone), ray)
        if lam is not None and all(x >= 0 for x in lam):
            return tuple(sorted(c for c, x in zip(cone, lam) if x > 0))
    return None


def stellar_subdivide_fan(fan: Fan, new_ray: Sequence[int]) -> Fan:
    """Star subdivision at ``new_ray``; an existing ray leaves the fan unchanged."""
    ray = tuple(int(x) for x in new_ray)
    if not is_primitive(ray):
        raise ConeError(f"ray {ray} is not primitive")
    if ray in fan.rays:
        return fan
    rho = _locate(fan, ray)
    if rho is None:
        raise ConeError(f"ray {ray} lies outside the support of the fan")
    new = len(fan.rays)
    cones = []
    for cone in fan.maximal:
        if set(rho) <= set(cone):
            for i in rho:
                cones.append(tuple(sorted([c for c in cone if c != i] + [new])))
        else:
            cones.append(cone)
    return replace(fan, rays=fan.rays + (ray,), maximal=tuple(cones))


def _det3(a, b, c):
    return (a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0]))


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _check_cyclic(rays):
    """Extreme rays of a 3-cone must be listed in convex cyclic order."""
    k = len(rays)
    sign = 0
    for i in range(k):
        a, b = rays[i], rays[(i + 1) % k]
        for j in range(k):
            if j in (i, (i + 1) % k):
                continue
            s = _det3(a, b, rays[j])
            if s == 0 or (sign and (s > 0) != (sign > 0)):
                raise ConeError("rays are not in convex cyclic position")
            sign = s
    return sign


def triangulate_cone(rays: Sequence[Sequence[int]], name="cone") -> Fan:
    """Fan of simplicial cones covering the cone spanned by ``rays``.

    A non-simplicial cone (n = 3 only) is coned from its first ray.
    """
    fan = fan_from_cone(rays, name)
    cone = fan.maximal[0]
    if fan.is_simplicial_cone(cone):
        return fan
    if fan.dim != 3:
        raise UnsupportedInput(f"non-simplicial cones are only supported in dimension <= 3 "
                               f"(got dimension {fan.dim})")
    _check_cyclic(fan.rays)
    pieces = tuple(tuple(sorted((0, i, i + 1))) for i in range(1, len(fan.rays) - 1))
    return replace(fan, maximal=pieces)


def _triangulate(fan: Fan) -> Fan:
    cones = []
    for cone in fan.maximal:
        if fan.is_simplicial_cone(cone):
            cones.append(tuple(sorted(cone)))
            continue
        if fan.dim != 3:
            raise UnsupportedInput("non-simplicial cones are only supported in dimension <= 3")
        _check_cyclic(fan.generators(cone))
        cones.extend(tuple(sorted((cone[0], cone[i], cone[i + 1]))) for i in range(1, len(cone) - 1))
    return replace(fan, maximal=tuple(cones))


def resolve_fan(fan_or_rays, initial_rays=(), history: list | None = None) -> Fan:
    """Refine to a smooth fan with the same support.

    Non-simplicial cones are triangulated, ``initial_rays`` are inserted by
    stellar subdivision, then the first non-smooth maximal cone (in sorted
    order) is repeatedly subdivided at its ``subdivision_point``. When given,
    ``history`` receives the descending multiplicity tuple after each step.
    """
    fan = fan_or_rays if isinstance(fan_or_rays, Fan) else fan_from_cone(fan_or_rays)
    fan = _triangulate(fan)
    for r in initial_rays:
        fan = stellar_subdivide_fan(fan, r)
    current = multiplicities(fan)
    if history is not None:
        history.append(current)
    while True:
        bad = sorted(c for c in fan.maximal if cone_multiplicity(fan.generators(c)) > 1)
        if not bad:
            return fan
        fan = stellar_subdivide_fan(fan, subdivision_point(fan.generators(bad[0])))
        after = multiplicities(fan)
        if not after < current:
            raise AssertionError(f"multiplicities did not decrease: {current} -> {after}")
        current = after
        if history is not None:
            history.append(current)


def _positive_functional(gens: Sequence[Vector]) -> list[Fraction]:
    """A linear form strictly positive on every generator of a full-dimensional cone."""
    n = len(gens[0])
    if len(gens) == n:
        # dual basis sum: value 1 on every generator
        return coordinates_dual(gens)
    _check_cyclic(gens)
    normals = []
    k = len(gens)
    for i in range(k):
        nrm = _cross(gens[i], gens[(i + 1) % k])
        other = gens[(i + 2) % k]
        if sum(a * b for a, b in zip(nrm, other)) < 0:
            nrm = tuple(-x for x in nrm)
        normals.append(nrm)
    w = [Fraction(sum(nv[i] for nv in normals)) for i in range(n)]
    if any(sum(a * b for a, b in zip(w, g)) <= 0 for g in gens):
        raise ConeError("cone is not pointed")
    return w


def coordinates_dual(gens):
    n = len(gens)
    # solve G w = 1
    a = [[Fraction(x) for x in g] + [Fraction(1)] for g in gens]
    for c in range(n):
        piv = next(i for i in range(c, n) if a[i][c])
        a[c], a[piv] = a[piv], a[c]
        p = a[c][c]
        a[c] = [v / p for v in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [u - f * w for u, w in zip(a[i], a[c])]
    return [a[i][n] for i in range(n)]


def simplex_volume(gens: Sequence[Vector], w: Sequence[Fraction]) -> Fraction:
    """Volume (times n!) of the simplicial cone cut off by w(x) <= 1."""
    det = abs(determinant(IntMatrix([list(g) for g in gens])))
    denom = Fraction(1)
    for g in gens:
        denom *= sum(Fraction(a) * b for a, b in zip(w, g))
    return det / denom


def support_volume(rays: Sequence[Sequence[int]], w=None) -> Fraction:
    """Truncated volume of the cone spanned by ``rays`` (full-dimensional, n <= 3
    when non-simplicial), computed from a triangulation from the ray sum."""
    gens = [tuple(r) for r in rays]
    w = _positive_functional(gens) if w is None else w
    n = len(gens[0])
    if len(gens) == n:
        return simplex_volume(gens, w)
    _check_cyclic(gens)
    centre = tuple(sum(g[i] for g in gens) for i in range(n))
    k = len(gens)
    return sum((simplex_volume([centre, gens[i], gens[(i + 1) % k]], w) for i in range(k)),
               Fraction(0))


def fan_volume(fan: Fan, w) -> Fraction:
    return sum((simplex_volume(fan.generators(c), w) for c in fan.maximal), Fraction(0))


def validate_fan(fan: Fan, check_intersections=True) -> list[str]:
    out = []
    for i, r in enumerate(fan.rays):
        if len(r) != fan.dim:
            out.append(f"ray {i + 1} has wrong length")
        elif not is_primitive(r):
            out.append(f"ray {i + 1} {r} is not primitive")
    if out:
        return out
    for cone in fan.maximal:
        if any(not 0 <= i < len(fan.rays) for i in cone) or len(set(cone)) != len(cone):
            out.append(f"cone {[i + 1 for i in cone]} references unknown or repeated rays")
        elif not fan.is_simplicial_cone(cone) and fan.dim != 3:
            out.append(f"cone {[i + 1 for i in cone]} is not simplicial")
    for b in fan.boundary:
        if not 0 <= b < len(fan.rays):
            out.append(f"boundary ray {b + 1} does not exist")
    if out or not check_intersections:
        return out
    simplicial = [c for c in fan.maximal if fan.is_simplicial_cone(c)]
    for a, b in combinations(simplicial, 2):
        if not _meet_in_common_face(fan, a, b):
            out.append(f"cones {[i + 1 for i in a]} and {[i + 1 for i in b]} "
                       f"do not meet in a common face")
    return out


def _meet_in_common_face(fan: Fan, a, b) -> bool:
    """Exact LP: is there a point of cone a, outside cone(a & b), lying in cone b?"""
    common = set(a) & set(b)
    own = [i for i in a if i not in common]
    if not own:
        return True
    ga, gb = fan.generators(a), fan.generators(b)
    rows = [[ga[j][i] for j in range(len(ga))] + [-gb[j][i] for j in range(len(gb))]
            for i in range(fan.dim)]
    rows.append([int(i in own) for i in a] + [0] * len(gb))
    return nonnegative_solution(rows, [0] * fan.dim + [1]) is None


def cross_section_complex(fan: Fan) -> DeltaComplex:
    """One (k)-cell per (k+1)-dimensional cone; ray i is divisor label i+1."""
    cones = fan.cones()
    for c in cones:
        if not fan.is_simplicial_cone(c):
            raise UnsupportedInput(f"non-simplicial cone {[i + 1 for i in c]}; triangulate first")
    labelled = sorted((tuple(i + 1 for i in c) for c in cones), key=lambda t: (len(t), t))
    return _complex_from_label_sets(labelled, len(fan.rays), fan.dim or None)


def _complex_from_label_sets(labelled, num_divisors, ambient_dim):
    top = max((len(t) for t in labelled), default=0)
    levels = [[t for t in labelled if len(t) == d + 1] for d in range(top)]
    where = [{t: CellId(d, i) for i, t in enumerate(level)} for d, level in enumerate(levels)]
    cells = []
    for d, level in enumerate(levels):
        row = []
        for t in level:
            facets = tuple(where[d - 1][t[:s] + t[s + 1:]] for s in range(d + 1)) if d else ()
            row.append(Cell(t, 1, facets))
        cells.append(row)
    return make_complex(num_divisors, cells, ambient_dim)


def interior_complex(fan: Fan, boundary=None) -> DeltaComplex:
    """Cross-section complex minus every cell touching a boundary ray.

    ``boundary`` holds 0-based ray indices and defaults to ``fan.boundary``.
    """
    boundary = fan.boundary if boundary is None else frozenset(boundary)
    unknown = [b for b in boundary if not 0 <= b < len(fan.rays)]
    if unknown:
        raise ValidationError(f"unknown boundary ray {unknown[0] + 1}")
    full = cross_section_complex(fan)
    keep = [c.labels for level in full.cells for c in level
            if not any(lab - 1 in boundary for lab in c.labels)]
    return _complex_from_label_sets(keep, full.num_divisors, full.ambient_dim)


# fan file format

def parse_fan(text: str) -> Fan:
    name = dim = None
    rays: list[Vector] = []
    cones: list[tuple[int, ...]] = []
    boundary = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        word, _, rest = line.partition(" ")
        toks = rest.split()
        if name is None:
            if word != "fan" or not rest.strip():
                raise ParseError("expected 'fan <name>' line", lineno, 1)
            name = rest.strip()
            continue
        if dim is None:
            if word != "dim" or len(toks) != 1:
                raise ParseError("expected 'dim <n>' line", lineno, 1)
            dim = _parse_ints(toks, lineno)[0]
            if dim < 1:
                raise ParseError("dimension must be positive", lineno, 5)
            continue
        vals = _parse_ints(toks, lineno)
        if word == "ray":
            if len(vals) != dim:
                raise ParseError(f"ray needs {dim} coordinates, got {len(vals)}", lineno, 5)
            if not is_primitive(vals):
                raise ParseError(f"ray {tuple(vals)} is not primitive", lineno, 5)
            rays.append(tuple(vals))
        elif word in ("cone", "boundary"):
            bad = [v for v in vals if not 1 <= v <= len(rays)]
            if bad:
                raise ParseError(f"unknown ray {bad[0]}", lineno, len(word) + 2)
            idx = tuple(v - 1 for v in vals)
            if word == "cone":
                if not idx or len(set(idx)) != len(idx):
                    raise ParseError("cone needs distinct rays", lineno, 6)
                cones.append(idx)
            else:
                boundary = (boundary or frozenset()) | frozenset(idx)
        else:
            raise ParseError(f"unexpected keyword {word!r}", lineno, 1)
    if name is None or dim is None:
        raise ParseError("missing 'fan'/'dim' header", 1, 1)
    fan = Fan(tuple(rays), (), frozenset(), name)
    normal = []
    for c in cones:
        normal.append(tuple(sorted(c)) if fan.is_simplicial_cone(c) else c)
    if boundary is None:
        boundary = frozenset(cones[0]) if len(cones) == 1 else frozenset()
    return Fan(tuple(rays), tuple(normal), boundary, name)


def _parse_ints(toks, lineno):
    try:
        return [int(t) for t in toks]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(toks)!r}", lineno) from None


def serialize_fan(fan: Fan) -> str:
    lines = [f"fan {fan.name}", f"dim {fan.dim}"]
    lines += ["ray " + " ".join(map(str, r)) for r in fan.rays]
    lines += ["cone " + " ".join(str(i + 1) for i in c) for c in fan.maximal]
    lines.append(" ".join(["boundary"] + [str(i + 1) for i in sorted(fan.boundary)]))
    return "\n".join(lines) + "\n"
