"""Delta-complexes whose vertices are divisor labels.

A cell is identified by ``CellId(dim, index)``. Its ``labels`` are the
strictly increasing divisor indices of its vertices and ``facets[s]`` is the
cell obtained by omitting ``labels[s]``. Several cells may carry the same
label tuple (distinct irreducible components), so labels are data, not keys.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple

from .errors import ValidationError


class CellId(NamedTuple):
    dim: int
    index: int

    def __str__(self):
        return f"{self.dim}:{self.index}"


@dataclass(frozen=True)
class Cell:
    labels: tuple[int, ...]
    component: int = 1
    facets: tuple[CellId, ...] = ()

    @property
    def dim(self) -> int:
        return len(self.labels) - 1


@dataclass(frozen=True)
class Violation:
    message: str
    cells: tuple[CellId, ...] = ()

    def __str__(self):
        if not self.cells:
            return self.message
        return f"{self.message} [{', '.join(map(str, self.cells))}]"


@dataclass(frozen=True)
class DeltaComplex:
    num_divisors: int
    cells: tuple[tuple[Cell, ...], ...] = ()
    ambient_dim: int | None = None

    def __post_init__(self):
        # normalise nested lists to tuples and drop trailing empty dimensions
        cells = [tuple(level) for level in self.cells]
        while cells and not cells[-1]:
            cells.pop()
        object.__setattr__(self, "cells", tuple(cells))

    @property
    def dim(self) -> int:
        """Top cell dimension, -1 for the empty complex."""
        return len(self.cells) - 1

    def __getitem__(self, cid: CellId) -> Cell:
        return self.cells[cid.dim][cid.index]

    def __contains__(self, cid) -> bool:
        return (
            isinstance(cid, tuple)
            and len(cid) == 2
            and 0 <= cid[0] < len(self.cells)
            and 0 <= cid[1] < len(self.cells[cid[0]])
        )

    def count(self, dim: int) -> int:
        if 0 <= dim < len(self.cells):
            return len(self.cells[dim])
        return 0

    def ids(self, dim: int | None = None) -> Iterator[CellId]:
        dims = range(len(self.cells)) if dim is None else [dim]
        for d in dims:
            for i in range(self.count(d)):
                yield CellId(d, i)

    def num_cells(self) -> int:
        return sum(len(level) for level in self.cells)

    def vertex_of(self, label: int) -> CellId | None:
        for i, cell in enumerate(self.cells[0] if self.cells else ()):
            if cell.labels[0] == label:
                return CellId(0, i)
        return None

    def vertex_index(self) -> dict[int, CellId]:
        """Map divisor label -> vertex id."""
        if not self.cells:
            return {}
        return {c.labels[0]: CellId(0, i) for i, c in enumerate(self.cells[0])}

    def facet(self, cid: CellId, position: int) -> CellId:
        return self[cid].facets[position]

    def face(self, cid: CellId, labels: Iterable[int]) -> CellId:
        """The iterated face of ``cid`` spanned by the given label subset.

        Well defined on valid complexes thanks to facet compatibility.
        """
        want = set(labels)
        cur = cid
        while True:
            cell = self[cur]
            extra = [s for s, lab in enumerate(cell.labels) if lab not in want]
            if not extra:
                if set(cell.labels) != want:
                    raise KeyError(f"labels {sorted(want)} are not a face of {cid}")
                return cur
            cur = cell.facets[extra[-1]]

    def require(self, cid) -> CellId:
        if cid not in self:
            raise KeyError(f"unknown cell {cid}")
        return CellId(*cid)


def make_complex(num_divisors, cells, ambient_dim=None) -> DeltaComplex:
    return DeltaComplex(num_divisors, tuple(tuple(level) for level in cells), ambient_dim)


def simplicial_complex(simplices: Iterable[Iterable[int]], num_divisors=None, ambient_dim=None):
    """Build the Delta-complex of a simplicial complex from generating simplices.

    Every face of every given simplex is included; each label set gets a
    single cell (component 1). Cells of each dimension are sorted by labels.
    """
    faces: set[tuple[int, ...]] = set()
    for simplex in simplices:
        s = tuple(sorted(set(simplex)))
        for k in range(1, len(s) + 1):
            faces.update(combinations(s, k))
    top = max((len(f) for f in faces), default=0)
    levels = [sorted(f for f in faces if len(f) == d + 1) for d in range(top)]
    where = [{labs: CellId(d, i) for i, labs in enumerate(level)} for d, level in enumerate(levels)]
    cells = []
    for d, level in enumerate(levels):
        row = []
        for labs in level:
            facets = ()
            if d > 0:
                facets = tuple(where[d - 1][labs[:s] + labs[s + 1:]] for s in range(d + 1))
            row.append(Cell(labs, 1, facets))
        cells.append(row)
    if num_divisors is None:
        num_divisors = max((f[-1] for f in faces), default=0)
    return make_complex(num_divisors, cells, ambient_dim)


def validate(cx: DeltaComplex) -> list[Violation]:
    """Return every violated structural invariant; empty means valid."""
    out: list[Violation] = []
    seen_vertex: dict[int, CellId] = {}
    seen_component: dict[tuple, CellId] = {}
    for cid in cx.ids():
        cell = cx[cid]
        labs = cell.labels
        if len(labs) != cid.dim + 1:
            out.append(Violation(f"cell has {len(labs)} labels, expected {cid.dim + 1}", (cid,)))
            continue
        if any(a >= b for a, b in zip(labs, labs[1:])):
            out.append(Violation("labels not strictly increasing", (cid,)))
        if any(not 1 <= lab <= cx.num_divisors for lab in labs):
            out.append(Violation(f"label out of range 1..{cx.num_divisors}", (cid,)))
        if cell.component < 1:
            out.append(Violation("component index must be positive", (cid,)))
        key = (labs, cell.component)
        if key in seen_component:
            out.append(Violation(f"duplicate component {cell.component} for labels {list(labs)}",
                                 (seen_component[key], cid)))
        else:
            seen_component[key] = cid
        if cx.ambient_dim is not None and cid.dim > cx.ambient_dim - 1:
            out.append(Violation(f"cell dimension exceeds ambient bound {cx.ambient_dim - 1}", (cid,)))
        if cid.dim == 0:
            if cell.facets:
                out.append(Violation("vertex must not have facets", (cid,)))
            lab = labs[0]
            if lab in seen_vertex:
                out.append(Violation(f"duplicate vertex for divisor {lab}", (seen_vertex[lab], cid)))
            else:
                seen_vertex[lab] = cid
            continue
        if len(cell.facets) != cid.dim + 1:
            out.append(Violation(f"cell has {len(cell.facets)} facets, expected {cid.dim + 1}", (cid,)))
            continue
        for s, f in enumerate(cell.facets):
            if not (isinstance(f, tuple) and f in cx and f[0] == cid.dim - 1):
                out.append(Violation(f"facet {s} reference {f} does not resolve", (cid,)))
            elif cx[f].labels != labs[:s] + labs[s + 1:]:
                out.append(Violation(f"facet {s} has labels {list(cx[f].labels)}, "
                                     f"expected {list(labs[:s] + labs[s + 1:])}", (cid, CellId(*f))))
    for d in range(1, len(cx.cells)):
        for cid in cx.ids(d):
            cell = cx[cid]
            if len(cell.labels) != d + 1:
                continue
            for lab in cell.labels:
                if lab not in seen_vertex:
                    out.append(Violation(f"no vertex for divisor {lab}", (cid,)))
    if out:
        # compatibility needs resolvable facets
        return out
    for d in range(2, len(cx.cells)):
        for cid in cx.ids(d):
            fs = cx[cid].facets
            for t in range(d + 1):
                for s in range(t):
                    a = cx[fs[t]].facets[s]
                    b = cx[fs[s]].facets[t - 1]
                    if a != b:
                        out.append(Violation(f"facet compatibility fails for positions {s}<{t}",
                                             (cid, a, b)))
    return out


def check(cx: DeltaComplex) -> DeltaComplex:
    problems = validate(cx)
    if problems:
        raise ValidationError(f"invalid complex: {problems[0]}", problems)
    return cx


def f_vector(cx: DeltaComplex) -> tuple[int, ...]:
    return tuple(len(level) for level in cx.cells)


def euler_characteristic(cx: DeltaComplex) -> int:
    return sum((-1) ** k * n for k, n in enumerate(f_vector(cx)))


def connected_components(cx: DeltaComplex) -> list[list[CellId]]:
    """Partition of the vertices induced by the 1-skeleton.

    Components are listed in order of their smallest vertex index.
    """
    n = cx.count(0)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for cid in cx.ids(1):
        a, b = (find(f.index) for f in cx[cid].facets)
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups: dict[int, list[CellId]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(CellId(0, i))
    return [groups[k] for k in sorted(groups)]


def coface_index(cx: DeltaComplex) -> dict[CellId, list[CellId]]:
    """Immediate cofaces of every cell."""
    up: dict[CellId, list[CellId]] = {cid: [] for cid in cx.ids()}
    for cid in cx.ids():
        for f in cx[cid].facets:
            up[f].append(cid)
    return up


def cofaces(cx: DeltaComplex, cid, up=None) -> list[CellId]:
    """All cells having ``cid`` as an iterated face, ``cid`` included.

    Returned sorted by (dim, index).
    """
    cid = cx.require(cid)
    up = coface_index(cx) if up is None else up
    seen = {cid}
    stack = [cid]
    while stack:
        for c in up[stack.pop()]:
            if c not in seen:
                seen.add(c)
                stack.append(c)
    return sorted(seen)


def face_closure(cx: DeltaComplex, cids: Iterable[CellId]) -> set[CellId]:
    seen: set[CellId] = set()
    stack = [CellId(*c) for c in cids]
    while stack:
        c = stack.pop()
        if c in seen:
            continue
        seen.add(c)
        stack.extend(cx[c].facets)
    return seen


class _Degenerate:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "DEGENERATE"

    def __reduce__(self):
        return (_Degenerate, ())


DEGENERATE = _Degenerate()


@dataclass(frozen=True)
class DeltaMap:
    """Simplicial map between Delta-complexes.

    ``cell_assignment`` sends every source cell to a target cell or to
    ``DEGENERATE`` (vertex images not injective on that cell).
    """

    source: DeltaComplex
    target: DeltaComplex
    vertex_assignment: dict = field(compare=False)
    cell_assignment: dict = field(compare=False)

    def label_map(self) -> dict[int, int]:
        return {self.source[v].labels[0]: self.target[w].labels[0]
                for v, w in self.vertex_assignment.items()}


def identity_map(cx: DeltaComplex) -> DeltaMap:
    cells = {cid: cid for cid in cx.ids()}
    verts = {cid: cid for cid in cx.ids(0)}
    return DeltaMap(cx, cx, verts, cells)


def validate_map(m: DeltaMap) -> list[Violation]:
    src, tgt = m.source, m.target
    out = []
    for v in src.ids(0):
        w = m.vertex_assignment.get(v)
        if w is None or w not in tgt or w[0] != 0:
            out.append(Violation("vertex has no valid image", (v,)))
    if out:
        return out
    lab = m.label_map()
    for cid in src.ids():
        img = m.cell_assignment.get(cid)
        labs = [lab[x] for x in src[cid].labels]
        injective = len(set(labs)) == len(labs)
        if img is None:
            out.append(Violation("cell has no assignment", (cid,)))
            continue
        if img is DEGENERATE:
            if injective:
                out.append(Violation("cell marked DEGENERATE but vertex map is injective on it", (cid,)))
            continue
        if not injective:
            out.append(Violation("vertex map not injective but cell not DEGENERATE", (cid,)))
            continue
        if img not in tgt or img[0] != cid.dim:
            out.append(Violation(f"image {img} does not resolve to a {cid.dim}-cell", (cid,)))
            continue
        if sorted(labs) != list(tgt[img].labels):
            out.append(Violation("image labels disagree with vertex assignment", (cid, img)))
            continue
        if cid.dim == 0 and img != m.vertex_assignment[cid]:
            out.append(Violation("vertex cell image disagrees with vertex assignment", (cid,)))
            continue
        for s, f in enumerate(src[cid].facets):
            # facet s omits labs[s]; in the target that is position of labs[s]
            pos = tgt[img].labels.index(labs[s])
            if m.cell_assignment.get(f) != tgt[img].facets[pos]:
                out.append(Violation(f"facet {s} image incompatible", (cid, f)))
    if out:
        return out
    # a degenerate cell whose boundary does not cancel breaks the chain map
    for cid in src.ids():
        if m.cell_assignment[cid] is not DEGENERATE or cid.dim == 0:
            continue
        labs = [lab[x] for x in src[cid].labels]
        if len(set(labs)) != len(labs) - 1:
            continue
        p, q = next((i, j) for i, j in combinations(range(len(labs)), 2) if labs[i] == labs[j])
        fs = src[cid].facets
        if m.cell_assignment[fs[p]] != m.cell_assignment[fs[q]]:
            out.append(Violation("collapsed facets of a degenerate cell have different images",
                                 (cid, fs[p], fs[q])))
    return out


def permutation_sign(seq) -> int:
    """Sign of the permutation sorting ``seq`` (distinct entries)."""
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def chain_map_columns(m: DeltaMap, k: int) -> list[dict[int, int]]:
    """Sparse columns of the degree-k chain map (target rows)."""
    lab = m.label_map()
    cols = []
    for cid in m.source.ids(k):
        img = m.cell_assignment[cid]
        if img is DEGENERATE:
            cols.append({})
        else:
            cols.append({img.index: permutation_sign(lab[x] for x in m.source[cid].labels)})
    return cols


def build_chain_map(m: DeltaMap, k: int):
    """Integer matrix of the induced chain map in degree k."""
    from .matrix import IntMatrix

    problems = validate_map(m)
    if problems:
        raise ValidationError(f"invalid map: {problems[0]}", problems)
    return IntMatrix.from_columns(chain_map_columns(m, k), m.target.count(k))
