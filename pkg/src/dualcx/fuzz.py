"""Randomised check that blowup moves never change homology."""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from .blowup import apply_move, format_move, random_center, validate_center
from .complex import validate
from .corpus import generate_random_complex
from .homology import chain_map_failures, homology, induced_homology_ranks
from .snc import build_dual_complex


@dataclass
class FuzzRunRecord:
    seed: int
    moves: list[str] = field(default_factory=list)
    cases: list[int] = field(default_factory=list)
    digests: list[str] = field(default_factory=list)
    contractions_checked: int = 0
    outcome: str = "pass"
    detail: str = ""
    elapsed: float = 0.0

    def replay_key(self):
        d = asdict(self)
        d.pop("elapsed")
        return d

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, d):
        return cls(**d)


def trial_seeds(seed: int, trials: int) -> list[int]:
    rng = random.Random(seed)
    return [rng.getrandbits(48) for _ in range(trials)]


def _initial_complex(rng: random.Random):
    cfg = generate_random_complex(
        rng.getrandbits(32),
        num_vertices=rng.randint(2, 8),
        max_dim=rng.randint(1, 3),
        num_simplices=rng.randint(1, 6),
        num_duplicates=rng.randint(0, 3),
    )
    return build_dual_complex(cfg)


def trial_complex(seed: int):
    """Starting complex of the trial with this seed (for replaying its moves)."""
    return _initial_complex(random.Random(seed))


def run_trial(seed: int, moves: int, check_contraction: bool = True) -> FuzzRunRecord:
    """One random complex followed by ``moves`` random admissible blowups."""
    start = time.perf_counter()
    rng = random.Random(seed)
    rec = FuzzRunRecord(seed)
    cx = _initial_complex(rng)
    base = homology(cx)
    rec.digests.append(base.digest())
    for step in range(moves):
        center = random_center(cx, rng.getrandbits(32))
        rec.moves.append(format_move(center))
        rec.cases.append(center.case)
        problems = validate_center(cx, center)
        if problems:
            rec.outcome, rec.detail = "violation", f"step {step}: generated invalid center: {problems[0]}"
            break
        res = apply_move(cx, center)
        problems = validate(res.complex_after)
        if problems:
            rec.outcome, rec.detail = "violation", f"step {step}: invalid output: {problems[0]}"
            break
        after = homology(res.complex_after)
        rec.digests.append(after.digest())
        if not after.same_as(base):
            rec.outcome, rec.detail = "violation", f"step {step}: homology {base} -> {after}"
            break
        if check_contraction and res.contraction is not None:
            bad = chain_map_failures(res.contraction)
            if bad:
                rec.outcome, rec.detail = "violation", f"step {step}: contraction not a chain map in degree {bad[0]}"
                break
            ranks = induced_homology_ranks(res.contraction)
            if not all(r.isomorphism for r in ranks):
                rec.outcome, rec.detail = "violation", f"step {step}: contraction not an isomorphism: {ranks}"
                break
            rec.contractions_checked += 1
        cx = res.complex_after
    rec.elapsed = time.perf_counter() - start
    return rec


def _trial(args):
    return run_trial(*args)


def run_fuzz(trials: int, moves_per_trial: int, seed: int, workers: int = 1,
             check_contraction: bool = True) -> list[FuzzRunRecord]:
    """Run independent trials; records come back in seed order regardless of workers."""
    jobs = [(s, moves_per_trial, check_contraction) for s in trial_seeds(seed, trials)]
    if workers <= 1:
        return [_trial(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_trial, jobs))
