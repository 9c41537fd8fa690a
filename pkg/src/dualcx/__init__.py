"""Dual complexes of simple normal crossing divisors, blowup moves and toric resolutions."""

from .blowup import (BlowupCenter, MoveResult, apply_case1, apply_case2, apply_move, apply_sequence,
                     parse_moves, random_center, star_center, validate_center)
from .complex import (DEGENERATE, Cell, CellId, DeltaComplex, DeltaMap, build_chain_map, euler_characteristic,
                      f_vector, simplicial_complex, validate, validate_map)
from .corpus import Fixture, generate_cycle_of_curves, generate_fixture, generate_random_complex
from .errors import DualcxError, ParseError, UnsupportedInput, ValidationError
from .export import export_dot, export_json, load_json
from .fuzz import FuzzRunRecord, run_fuzz
from .homology import HomologyReport, homology, induced_homology_ranks
from .matrix import IntMatrix, smith_normal_form
from .snc import SncConfig, Stratum, build_dual_complex, parse_config, serialize_config
from .toric import (Fan, cone_multiplicity, interior_complex, is_smooth_fan, parse_fan, resolve_fan,
                    stellar_subdivide_fan, triangulate_cone)

__all__ = [
    "BlowupCenter",
    "MoveResult",
    "apply_case1",
    "apply_case2",
    "apply_move",
    "apply_sequence",
    "parse_moves",
    "random_center",
    "star_center",
    "validate_center",
    "DEGENERATE",
    "Cell",
    "CellId",
    "DeltaComplex",
    "DeltaMap",
    "build_chain_map",
    "euler_characteristic",
    "f_vector",
    "simplicial_complex",
    "validate",
    "validate_map",
    "Fixture",
    "generate_cycle_of_curves",
    "generate_fixture",
    "generate_random_complex",
    "DualcxError",
    "ParseError",
    "UnsupportedInput",
    "ValidationError",
    "export_dot",
    "export_json",
    "load_json",
    "FuzzRunRecord",
    "run_fuzz",
    "HomologyReport",
    "homology",
    "induced_homology_ranks",
    "IntMatrix",
    "smith_normal_form",
    "SncConfig",
    "Stratum",
    "build_dual_complex",
    "parse_config",
    "serialize_config",
    "Fan",
    "cone_multiplicity",
    "interior_complex",
    "is_smooth_fan",
    "parse_fan",
    "resolve_fan",
    "stellar_subdivide_fan",
    "triangulate_cone",
]
