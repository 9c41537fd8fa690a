"""Text format for simple-normal-crossing configurations.

A configuration lists every irreducible component of every intersection
of the divisors (a *stratum*) together with, for each omitted label, the
component of the smaller intersection that contains it::

    snc triangle
    dim 3
    divisors 3
    cell 0 [1] 1
    cell 1 [1 2] 1 ; facets 1 1

Geometry is never recomputed: the file is the intersection poset.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .complex import Cell, CellId, DeltaComplex, make_complex, validate
from .errors import ParseError, ValidationError


@dataclass(frozen=True)
class Stratum:
    labels: tuple[int, ...]
    component: int = 1
    facet_components: tuple[int, ...] = ()

    @property
    def depth(self) -> int:
        return len(self.labels)

    @property
    def key(self):
        return (self.labels, self.component)


@dataclass(frozen=True)
class SncConfig:
    name: str
    num_divisors: int
    ambient_dim: int
    strata: tuple[Stratum, ...] = field(default_factory=tuple)


_HEADER = [("snc", "name"), ("dim", "int"), ("divisors", "int")]
_CELL = re.compile(r"cell\s+(\S+)\s+\[([^\]]*)\]\s+(\S+)\s*(?:;\s*facets\b(.*))?$")


def _int(tok, line, col, what, low=None):
    try:
        v = int(tok)
    except ValueError:
        raise ParseError(f"expected integer for {what}, got {tok!r}", line, col) from None
    if low is not None and v < low:
        raise ParseError(f"{what} must be >= {low}, got {v}", line, col)
    return v


def parse_config(text: str) -> SncConfig:
    header = {}
    strata: list[Stratum] = []
    where: dict[tuple, int] = {}
    n_divisors = ambient = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        line = line.strip()
        word = line.split()[0]
        if len(header) < len(_HEADER):
            want, kind = _HEADER[len(header)]
            if word != want:
                raise ParseError(f"expected '{want}' line", lineno, indent + 1)
            rest = line[len(want):].strip()
            if kind == "name":
                if not rest:
                    raise ParseError("missing configuration name", lineno, indent + len(want) + 1)
                header[want] = rest
            else:
                header[want] = _int(rest, lineno, indent + len(want) + 2, want, low=0)
            if want == "dim":
                ambient = header[want]
            if want == "divisors":
                n_divisors = header[want]
            continue
        if word != "cell":
            raise ParseError(f"unexpected keyword {word!r}", lineno, indent + 1)
        m = _CELL.match(line)
        if m is None:
            raise ParseError("malformed cell line", lineno, indent + 1)
        col = lambda g: indent + m.start(g) + 1  # noqa: E731
        k = _int(m.group(1), lineno, col(1), "cell dimension", low=0)
        labels = tuple(_int(t, lineno, col(2), "divisor label") for t in m.group(2).split())
        j = _int(m.group(3), lineno, col(3), "component", low=1)
        if len(labels) != k + 1:
            raise ParseError(f"cell {k} needs {k + 1} labels, got {len(labels)}", lineno, col(2))
        if any(a >= b for a, b in zip(labels, labels[1:])):
            raise ParseError("labels not strictly increasing", lineno, col(2))
        bad = [x for x in labels if not 1 <= x <= n_divisors]
        if bad:
            raise ParseError(f"divisor label {bad[0]} out of range 1..{n_divisors}", lineno, col(2))
        if ambient and k > ambient - 1:
            raise ParseError(f"cell dimension {k} exceeds ambient bound {ambient - 1}", lineno, col(1))
        if m.group(4) is None:
            facets = ()
        else:
            facets = tuple(_int(t, lineno, col(4), "facet component", low=1) for t in m.group(4).split())
        if k == 0 and facets:
            raise ParseError("0-cells take no facets", lineno, col(4))
        if k > 0 and len(facets) != k + 1:
            raise ParseError(f"cell {k} needs {k + 1} facet components, got {len(facets)}",
                             lineno, col(4) if m.group(4) is not None else len(raw))
        s = Stratum(labels, j, facets)
        if s.key in where:
            raise ParseError(f"duplicate stratum {list(labels)} component {j} "
                             f"(first on line {where[s.key]})", lineno, indent + 1)
        if k == 0 and j != 1:
            raise ParseError(f"divisor {labels[0]} must have exactly one component (got component {j})",
                             lineno, col(3))
        for pos, jj in enumerate(facets):
            sub = (labels[:pos] + labels[pos + 1:], jj)
            if sub not in where:
                raise ParseError(f"dangling reference: facet {pos} of {list(labels)} "
                                 f"component {j} names missing stratum {list(sub[0])} component {jj}",
                                 lineno, col(4))
        where[s.key] = lineno
        strata.append(s)
    if len(header) < len(_HEADER):
        raise ParseError(f"missing '{_HEADER[len(header)][0]}' header line",
                         len(text.splitlines()) + 1, 1)
    return SncConfig(header["snc"], n_divisors, ambient, tuple(strata))


def serialize_config(config: SncConfig) -> str:
    lines = [f"snc {config.name}", f"dim {config.ambient_dim}", f"divisors {config.num_divisors}"]
    for s in config.strata:
        line = f"cell {len(s.labels) - 1} [{' '.join(map(str, s.labels))}] {s.component}"
        if len(s.labels) > 1:
            line += " ; facets " + " ".join(map(str, s.facet_components))
        lines.append(line)
    return "\n".join(lines) + "\n"


def validate_config(config: SncConfig) -> list[str]:
    """Structural checks for configs built in code rather than parsed."""
    out = []
    seen = set()
    for s in config.strata:
        if any(a >= b for a, b in zip(s.labels, s.labels[1:])):
            out.append(f"labels not strictly increasing: {list(s.labels)}")
        if any(not 1 <= x <= config.num_divisors for x in s.labels):
            out.append(f"label out of range in {list(s.labels)}")
        if s.key in seen:
            out.append(f"duplicate stratum {list(s.labels)} component {s.component}")
        if s.depth == 1 and s.component != 1:
            out.append(f"divisor {s.labels[0]} must have exactly one component")
        if s.depth > 1 and len(s.facet_components) != s.depth:
            out.append(f"stratum {list(s.labels)} needs {s.depth} facet components")
        seen.add(s.key)
    for s in config.strata:
        for pos, jj in enumerate(s.facet_components):
            if (s.labels[:pos] + s.labels[pos + 1:], jj) not in seen:
                out.append(f"dangling reference from {list(s.labels)} component {s.component}")
    return out


def build_dual_complex(config: SncConfig) -> DeltaComplex:
    """One k-cell per depth-(k+1) stratum, in file order within each dimension."""
    problems = validate_config(config)
    if problems:
        raise ValidationError(problems[0], problems)
    top = max((s.depth for s in config.strata), default=0)
    ids: dict[tuple, CellId] = {}
    levels: list[list[Stratum]] = [[] for _ in range(top)]
    for s in config.strata:
        ids[s.key] = CellId(s.depth - 1, len(levels[s.depth - 1]))
        levels[s.depth - 1].append(s)
    cells = []
    for level in levels:
        row = []
        for s in level:
            facets = tuple(ids[(s.labels[:p] + s.labels[p + 1:], jj)]
                           for p, jj in enumerate(s.facet_components)) if s.depth > 1 else ()
            row.append(Cell(s.labels, s.component, facets))
        cells.append(row)
    cx = make_complex(config.num_divisors, cells, config.ambient_dim or None)
    problems = validate(cx)
    if problems:
        bad = problems[0].cells[0] if problems[0].cells else None
        what = f" at stratum {list(cx[bad].labels)} component {cx[bad].component}" if bad else ""
        raise ValidationError(f"{problems[0].message}{what}", problems)
    return cx


def config_from_complex(cx: DeltaComplex, name: str = "complex") -> SncConfig:
    strata = []
    for cid in cx.ids():
        cell = cx[cid]
        strata.append(Stratum(cell.labels, cell.component,
                              tuple(cx[f].component for f in cell.facets)))
    return SncConfig(name, cx.num_divisors, cx.ambient_dim or 0, tuple(strata))
