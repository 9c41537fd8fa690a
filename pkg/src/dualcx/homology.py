"""Integral simplicial homology of Delta-complexes."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from .complex import DeltaComplex, DeltaMap, chain_map_columns, validate_map
from .errors import ValidationError
from .matrix import IntMatrix, RationalEchelon, invariant_factors, kernel_q, rank_q


@dataclass(frozen=True)
class HomologyReport:
    """Betti numbers and torsion coefficients per degree.

    ``torsion[k]`` lists the invariant factors > 1 of H_k, ascending.
    Reduced homology of the empty complex (H_{-1} = Z) is not represented;
    an empty complex reports no degrees at all.
    """

    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]
    reduced: bool = False

    def is_acyclic(self) -> bool:
        """Reduced homology vanishes (and the complex is non-empty)."""
        return (self.reduced and bool(self.betti)
                and not any(self.betti) and not any(self.torsion))

    def normalized(self) -> HomologyReport:
        """Drop trailing degrees with vanishing homology (degree 0 is kept)."""
        n = len(self.betti)
        while n > 1 and self.betti[n - 1] == 0 and not self.torsion[n - 1]:
            n -= 1
        return HomologyReport(self.betti[:n], self.torsion[:n], self.reduced)

    def same_as(self, other: HomologyReport) -> bool:
        """Equal groups in every degree, ignoring how many zero degrees are listed."""
        return self.normalized() == other.normalized()

    def to_dict(self) -> dict:
        return {"reduced": self.reduced, "betti": list(self.betti),
                "torsion": [list(t) for t in self.torsion]}

    @classmethod
    def from_dict(cls, d: dict) -> HomologyReport:
        return cls(tuple(d["betti"]), tuple(tuple(t) for t in d["torsion"]), bool(d["reduced"]))

    def digest(self) -> str:
        blob = json.dumps(self.normalized().to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    def __str__(self):
        parts = []
        for k, b in enumerate(self.betti):
            t = "".join(f"+Z/{q}" for q in self.torsion[k])
            parts.append(f"H{k}=Z^{b}{t}")
        return ("reduced " if self.reduced else "") + (" ".join(parts) or "empty")


def boundary_columns(cx: DeltaComplex, k: int) -> list[dict[int, int]]:
    """Sparse columns of the boundary map from k-cells to (k-1)-cells."""
    cols = []
    for cell in (cx.cells[k] if 0 < k <= cx.dim else ()):
        col: dict[int, int] = {}
        for s, f in enumerate(cell.facets):
            v = col.get(f.index, 0) + (-1) ** s
            if v:
                col[f.index] = v
            else:
                col.pop(f.index, None)
        cols.append(col)
    return cols


def boundary_matrix(cx: DeltaComplex, k: int) -> IntMatrix:
    if k < 1:
        raise ValueError("boundary degree must be positive")
    return IntMatrix.from_columns(boundary_columns(cx, k), cx.count(k - 1))


def homology(cx: DeltaComplex, reduced: bool = False) -> HomologyReport:
    top = cx.dim
    if top < 0:
        return HomologyReport((), (), reduced)
    # factors[k] = invariant factors of the boundary out of degree k
    factors = [[] for _ in range(top + 2)]
    for k in range(1, top + 1):
        factors[k] = invariant_factors(boundary_columns(cx, k), cx.count(k - 1))
    betti, torsion = [], []
    for k in range(top + 1):
        b = cx.count(k) - len(factors[k]) - len(factors[k + 1])
        betti.append(b)
        torsion.append(tuple(d for d in factors[k + 1] if d > 1))
    if reduced:
        betti[0] -= 1
    return HomologyReport(tuple(betti), tuple(torsion), reduced)


@dataclass(frozen=True)
class InducedRank:
    degree: int
    rank: int
    source_betti: int
    target_betti: int

    @property
    def isomorphism(self) -> bool:
        return self.rank == self.source_betti == self.target_betti


def induced_homology_ranks(m: DeltaMap) -> list[InducedRank]:
    """Rank over Q of H_k(source) -> H_k(target), for every degree.

    rank = dim(f(Z_k) + B_k) - dim(B_k), computed with exact elimination.
    """
    problems = validate_map(m)
    if problems:
        raise ValidationError(f"invalid map: {problems[0]}", problems)
    src, tgt = m.source, m.target
    out = []
    for k in range(max(src.dim, tgt.dim) + 1):
        ns, nt = src.count(k), tgt.count(k)
        if k == 0:
            cycles = [{j: 1} for j in range(ns)]
        else:
            cycles = kernel_q(boundary_columns(src, k), src.count(k - 1))
        f = chain_map_columns(m, k) if ns else []
        images = []
        for z in cycles:
            img: dict[int, int] = {}
            for j, c in z.items():
                for i, s in f[j].items():
                    img[i] = img.get(i, 0) + s * c
            images.append(img)
        ech = RationalEchelon()
        for b in boundary_columns(tgt, k + 1):
            ech.add(b)
        base = ech.rank
        for img in images:
            ech.add(img)
        src_b = len(cycles) - rank_q(boundary_columns(src, k + 1))
        tgt_b = nt - (rank_q(boundary_columns(tgt, k)) if k else 0) - base
        out.append(InducedRank(k, ech.rank - base, src_b, tgt_b))
    return out


def chain_map_failures(m: DeltaMap) -> list[int]:
    """Degrees k >= 1 where boundary_k . f_k != f_{k-1} . boundary_k."""
    src, tgt = m.source, m.target
    bad = []
    for k in range(1, max(src.dim, 0) + 1):
        fk, fk1 = chain_map_columns(m, k), chain_map_columns(m, k - 1)
        dt, ds = boundary_columns(tgt, k), boundary_columns(src, k)
        for j in range(src.count(k)):
            lhs: dict[int, int] = {}
            for i, c in fk[j].items():
                for r, v in dt[i].items():
                    lhs[r] = lhs.get(r, 0) + c * v
            rhs: dict[int, int] = {}
            for i, c in ds[j].items():
                for r, v in fk1[i].items():
                    rhs[r] = rhs.get(r, 0) + c * v
            if {r: v for r, v in lhs.items() if v} != {r: v for r, v in rhs.items() if v}:
                bad.append(k)
                break
    return bad
