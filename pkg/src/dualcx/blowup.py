"""Blowup moves on dual complexes.

Case 1 (the center is a whole stratum) subdivides the closed star of the
carrier cell from a new vertex F. Case 2 (the center is strictly smaller)
keeps every cell and adds the cone from F over a face-closed incidence set;
the contraction F -> v is returned as a simplicial map back to the input.
The new divisor F always gets label N+1.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from itertools import combinations

from .complex import (
    DEGENERATE,
    Cell,
    CellId,
    DeltaComplex,
    DeltaMap,
    Violation,
    coface_index,
    cofaces,
    face_closure,
    make_complex,
)
from .errors import ParseError, ValidationError


@dataclass(frozen=True)
class BlowupCenter:
    case: int
    carrier: CellId
    incidence: frozenset = frozenset()
    contraction_vertex: int | None = None
    absorption: dict = field(default_factory=dict)

    def __str__(self):
        return format_move(self)


@dataclass(frozen=True)
class MoveResult:
    case: int
    complex_after: DeltaComplex
    new_vertex_label: int
    contraction: DeltaMap | None = None


class MoveError(ValidationError):
    def __init__(self, index, violations):
        self.index = index
        super().__init__(f"move {index}: invalid center: {violations[0]}", violations)


def _v_facet(cx, cid, v):
    cell = cx[cid]
    return cell.facets[cell.labels.index(v)]


def validate_center(cx: DeltaComplex, center: BlowupCenter) -> list[Violation]:
    out = []
    if center.case not in (1, 2):
        return [Violation(f"unknown blowup case {center.case}")]
    if center.carrier not in cx:
        return [Violation(f"carrier {center.carrier} does not exist")]
    carrier = CellId(*center.carrier)
    if center.case == 1:
        return out
    inc = {CellId(*m) for m in center.incidence}
    missing = sorted(m for m in inc if m not in cx)
    if missing:
        return [Violation("incidence cell does not exist", tuple(missing))]
    v = center.contraction_vertex
    if carrier not in inc:
        out.append(Violation("carrier not in incidence", (carrier,)))
    if v not in cx[carrier].labels:
        out.append(Violation(f"contraction vertex {v} is not a label of the carrier", (carrier,)))
    for m in sorted(inc):
        gaps = [f for f in cx[m].facets if f not in inc]
        if gaps:
            out.append(Violation("incidence not face-closed", (m, *gaps)))
    absorb = {CellId(*k): CellId(*t) for k, t in center.absorption.items()}
    for m in sorted(inc):
        labs = cx[m].labels
        if v in labs:
            if m in absorb:
                out.append(Violation("absorption given for a cell containing v", (m,)))
            continue
        a = absorb.get(m)
        if a is None:
            out.append(Violation("missing absorption", (m,)))
            continue
        if a not in inc:
            out.append(Violation("absorption target not in incidence", (m, a)))
            continue
        if cx[a].labels != tuple(sorted(labs + (v,))):
            out.append(Violation("absorption target labels are not labels(m) + v", (m, a)))
            continue
        if _v_facet(cx, a, v) != m:
            out.append(Violation("m is not the facet of its absorption at v", (m, a)))
    extra = sorted(k for k in absorb if k not in inc)
    if extra:
        out.append(Violation("absorption source not in incidence", tuple(extra)))
    if out:
        return out
    # contraction commutes with boundaries only if absorption inverts the v-facet map
    for m in sorted(inc):
        if v in cx[m].labels and m.dim > 0:
            f = _v_facet(cx, m, v)
            if absorb.get(f) != m:
                out.append(Violation("cell containing v is not the absorption of its v-facet", (m, f)))
    return out


def _proper_subsets(labels):
    for r in range(len(labels)):
        yield from combinations(labels, r)


class _Builder:
    """Accumulates cells per dimension, numbering components per label tuple."""

    def __init__(self, num_divisors, ambient_dim):
        self.num_divisors = num_divisors
        self.ambient_dim = ambient_dim
        self.levels: list[list] = []
        self.used: dict[tuple, int] = {}

    def reserve(self, labels, component=None) -> CellId:
        d = len(labels) - 1
        while len(self.levels) <= d:
            self.levels.append([])
        if component is None:
            component = self.used.get(labels, 0) + 1
        self.used[labels] = max(self.used.get(labels, 0), component)
        self.levels[d].append([labels, component, ()])
        return CellId(d, len(self.levels[d]) - 1)

    def set_facets(self, cid, facets):
        self.levels[cid.dim][cid.index][2] = tuple(facets)

    def build(self) -> DeltaComplex:
        cells = [[Cell(*c) for c in level] for level in self.levels]
        return make_complex(self.num_divisors, cells, self.ambient_dim)


def _ambient(cx, extra_dim):
    if cx.ambient_dim is None:
        return None
    return max(cx.ambient_dim, extra_dim + 1)


def apply_case1(cx: DeltaComplex, carrier) -> MoveResult:
    """Stellar subdivision of the star of ``carrier`` from a new vertex F."""
    carrier = cx.require(carrier)
    F = cx.num_divisors + 1
    S = cx[carrier].labels
    star = cofaces(cx, carrier)
    removed = set(star)
    top = max((c.dim for c in star), default=0)
    out = _Builder(F, _ambient(cx, top))
    where: dict = {}
    for cid in cx.ids():
        if cid not in removed:
            cell = cx[cid]
            where[cid] = out.reserve(cell.labels, cell.component)
    for tau in star:
        tail = tuple(x for x in cx[tau].labels if x not in S)
        for A in _proper_subsets(S):
            where[(tau, A)] = out.reserve(tuple(sorted(A + tail)) + (F,))
    for cid in cx.ids():
        if cid not in removed:
            out.set_facets(where[cid], (where[f] for f in cx[cid].facets))
    for tau in star:
        tau_labels = cx[tau].labels
        tail = tuple(x for x in tau_labels if x not in S)
        for A in _proper_subsets(S):
            base = tuple(sorted(A + tail))
            if not base:
                continue
            facets = []
            for x in base:
                if x in A:
                    facets.append(where[(tau, tuple(a for a in A if a != x))])
                else:
                    sub = cx[tau].facets[tau_labels.index(x)]
                    facets.append(where[(sub, A)])
            facets.append(where[cx.face(tau, base)])
            out.set_facets(where[(tau, A)], facets)
    return MoveResult(1, out.build(), F)


def apply_case2(cx: DeltaComplex, center: BlowupCenter) -> MoveResult:
    """Cone from a new vertex F over the incidence set, plus the contraction."""
    problems = validate_center(cx, center)
    if center.case != 2:
        problems = [Violation("apply_case2 needs a case-2 center")] + problems
    if problems:
        raise ValidationError(f"invalid center: {problems[0]}", problems)
    F = cx.num_divisors + 1
    inc = sorted(CellId(*m) for m in center.incidence)
    top = max(m.dim for m in inc) + 1
    out = _Builder(F, _ambient(cx, top))
    for cid in cx.ids():
        cell = cx[cid]
        out.reserve(cell.labels, cell.component)
        out.set_facets(cid, cell.facets)
    apex = out.reserve((F,))
    cone = {}
    for m in inc:
        cone[m] = out.reserve(cx[m].labels + (F,))
    for m in inc:
        if m.dim == 0:
            facets = [apex]
        else:
            facets = [cone[f] for f in cx[m].facets]
        out.set_facets(cone[m], facets + [m])
    after = out.build()

    v = center.contraction_vertex
    v_id = cx.vertex_of(v)
    verts = {cid: cid for cid in cx.ids(0)}
    verts[apex] = v_id
    cells = {cid: cid for cid in cx.ids()}
    cells[apex] = v_id
    absorb = {CellId(*k): CellId(*t) for k, t in center.absorption.items()}
    for m in inc:
        cells[cone[m]] = DEGENERATE if v in cx[m].labels else absorb[m]
    contraction = DeltaMap(after, cx, verts, cells)
    return MoveResult(2, after, F, contraction)


def apply_move(cx: DeltaComplex, center: BlowupCenter) -> MoveResult:
    if center.case == 1:
        return apply_case1(cx, center.carrier)
    return apply_case2(cx, center)


def apply_sequence(cx: DeltaComplex, centers, check_homology: bool = False) -> list[MoveResult]:
    """Fold the moves left to right; each center refers to the then-current complex."""
    from .complex import validate
    from .homology import homology

    results = []
    current = cx
    expected = homology(cx) if check_homology else None
    for i, center in enumerate(centers):
        problems = validate_center(current, center)
        if problems:
            raise MoveError(i, problems)
        res = apply_move(current, center)
        problems = validate(res.complex_after)
        if problems:
            raise ValidationError(f"move {i} produced an invalid complex: {problems[0]}", problems)
        if check_homology and not homology(res.complex_after).same_as(expected):
            raise ValidationError(f"move {i} changed homology: {expected} -> "
                                  f"{homology(res.complex_after)}")
        results.append(res)
        current = res.complex_after
    return results


def absorption_for(cx: DeltaComplex, v: int, incidence) -> dict | None:
    """The absorption assignment forced by ``incidence``, or None if none works.

    Cells containing v must map bijectively, via their v-facet, onto the
    incidence cells avoiding v.
    """
    inc = set(incidence)
    back = {}
    for m in inc:
        if v in cx[m].labels and m.dim > 0:
            f = _v_facet(cx, m, v)
            if f in back:
                return None
            back[f] = m
    for m in inc:
        if v not in cx[m].labels and m not in back:
            return None
    return back


def random_center(cx: DeltaComplex, seed, case_weights=(1, 1)) -> BlowupCenter:
    """Deterministic random admissible center for fuzzing."""
    if cx.num_cells() == 0:
        raise ValueError("cannot choose a center in an empty complex")
    rng = random.Random(seed)
    case = rng.choices((1, 2), weights=case_weights)[0]
    all_ids = list(cx.ids())
    if case == 1:
        return BlowupCenter(1, rng.choice(all_ids))
    vertex = rng.choice(list(cx.ids(0)))
    v = cx[vertex].labels[0]
    candidates = [c for c in all_ids if v in cx[c].labels]
    rng.shuffle(candidates)
    want = rng.randint(1, len(candidates))
    gens: list[CellId] = []
    inc: set = set()
    absorb: dict = {}
    for c in candidates:
        trial = face_closure(cx, gens + [c])
        forced = absorption_for(cx, v, trial)
        if forced is None:
            continue
        gens.append(c)
        inc, absorb = trial, forced
        if len(gens) == want:
            break
    carrier = rng.choice(sorted(m for m in inc if v in cx[m].labels))
    return BlowupCenter(2, carrier, frozenset(inc), v, dict(sorted(absorb.items())))


def star_center(cx: DeltaComplex, carrier, v=None) -> BlowupCenter:
    """Case-2 center whose incidence is the closed star of the carrier.

    ``v`` defaults to the smallest label of the carrier. Raises when the
    star does not admit an absorption assignment.
    """
    carrier = cx.require(carrier)
    v = cx[carrier].labels[0] if v is None else v
    up = coface_index(cx)
    inc = face_closure(cx, cofaces(cx, carrier, up))
    absorb = absorption_for(cx, v, inc)
    if absorb is None:
        raise ValidationError(f"closed star of {carrier} admits no contraction to {v}")
    return BlowupCenter(2, carrier, frozenset(inc), v, dict(sorted(absorb.items())))


# move file format

def _fmt(c):
    return f"{c[0]}:{c[1]}"


def format_move(center: BlowupCenter) -> str:
    if center.case == 1:
        return f"move case1 cell={_fmt(center.carrier)}"
    inc = ",".join(_fmt(c) for c in sorted(center.incidence))
    absorb = ",".join(f"{_fmt(k)}->{_fmt(t)}" for k, t in sorted(center.absorption.items()))
    line = (f"move case2 carrier={_fmt(center.carrier)} v={center.contraction_vertex} "
            f"incidence={inc}")
    if absorb:
        line += f" absorb={absorb}"
    return line


_ID = re.compile(r"^(\d+):(\d+)$")


def _cell_id(tok, lineno):
    m = _ID.match(tok)
    if not m:
        raise ParseError(f"bad cell reference {tok!r}, expected <dim>:<index>", lineno)
    return CellId(int(m.group(1)), int(m.group(2)))


def parse_moves(text: str) -> list[BlowupCenter]:
    moves = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if toks[0] != "move" or len(toks) < 2:
            raise ParseError("expected 'move case1|case2 ...'", lineno, 1)
        fields = {}
        for tok in toks[2:]:
            key, sep, val = tok.partition("=")
            if not sep:
                raise ParseError(f"expected key=value, got {tok!r}", lineno)
            fields[key] = val
        if toks[1] == "case1":
            if set(fields) != {"cell"}:
                raise ParseError("case1 takes exactly cell=<dim>:<index>", lineno)
            moves.append(BlowupCenter(1, _cell_id(fields["cell"], lineno)))
        elif toks[1] == "case2":
            need = {"carrier", "v", "incidence"}
            if not need <= set(fields) <= need | {"absorb"}:
                raise ParseError("case2 takes carrier=, v=, incidence= and optional absorb=", lineno)
            try:
                v = int(fields["v"])
            except ValueError:
                raise ParseError(f"bad vertex label {fields['v']!r}", lineno) from None
            inc = frozenset(_cell_id(t, lineno) for t in fields["incidence"].split(",") if t)
            absorb = {}
            for pair in filter(None, fields.get("absorb", "").split(",")):
                a, sep, b = pair.partition("->")
                if not sep:
                    raise ParseError(f"bad absorption {pair!r}", lineno)
                absorb[_cell_id(a, lineno)] = _cell_id(b, lineno)
            moves.append(BlowupCenter(2, _cell_id(fields["carrier"], lineno), inc, v, absorb))
        else:
            raise ParseError(f"unknown move kind {toks[1]!r}", lineno, len(toks[0]) + 2)
    return moves
