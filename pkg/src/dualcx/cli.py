"""Command-line interface: ``dualcx <command> ...``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import corpus, export
from .blowup import MoveError, apply_sequence, parse_moves
from .complex import f_vector, validate
from .errors import DualcxError, ParseError, UnsupportedInput, ValidationError
from .fuzz import run_fuzz
from .homology import chain_map_failures, homology, induced_homology_ranks
from .snc import build_dual_complex, config_from_complex, parse_config, serialize_config, validate_config
from .toric import (ConeError, cross_section_complex, interior_complex, is_smooth_fan, multiplicities,
                    parse_fan, resolve_fan, serialize_fan)

EXIT_OK, EXIT_INVALID, EXIT_PARSE, EXIT_VIOLATION, EXIT_UNSUPPORTED = range(5)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None


def _first_word(text: str) -> str:
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            return line.split()[0]
    return ""


def _load_complex(path: str):
    """Dual complex of an snc file, cross-section of a fan file, or a JSON complex."""
    text = _read(path)
    word = _first_word(text)
    if word == "snc":
        cfg = parse_config(text)
        problems = validate_config(cfg)
        if problems:
            raise ValidationError(problems[0], problems)
        return build_dual_complex(cfg)
    if word == "fan":
        return cross_section_complex(parse_fan(text))
    if text.lstrip().startswith("{"):
        obj = export.load_json(text)
        if not hasattr(obj, "cells"):
            raise ParseError("JSON document is not a complex")
        return obj
    raise ParseError("unrecognised input: expected 'snc', 'fan' or a JSON complex", 1, 1)


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_validate(args) -> int:
    cx = _load_complex(args.file)
    problems = validate(cx)
    for p in problems:
        print(f"violation: {p}")
    if problems:
        return EXIT_INVALID
    print(f"ok: f-vector {f_vector(cx)}")
    return EXIT_OK


def cmd_homology(args) -> int:
    cx = _load_complex(args.file)
    report = homology(cx, reduced=args.reduced)
    print(export.export_json(report) if args.json else report, end="" if args.json else "\n")
    return EXIT_OK


def cmd_blowup(args) -> int:
    cx = _load_complex(args.file)
    centers = parse_moves(_read(args.moves))
    before = homology(cx)
    results = apply_sequence(cx, centers)
    status = EXIT_OK
    for i, res in enumerate(results):
        line = f"move {i}: case {res.case}, f-vector {f_vector(res.complex_after)}"
        if args.verify_contraction and res.contraction is not None:
            bad = chain_map_failures(res.contraction)
            iso = not bad and all(r.isomorphism for r in induced_homology_ranks(res.contraction))
            line += ", contraction " + ("ok" if iso else "FAILED")
            if not iso:
                status = EXIT_VIOLATION
        print(line)
    final = results[-1].complex_after if results else cx
    after = homology(final)
    print(f"homology before: {before}")
    print(f"homology after:  {after}")
    if not after.same_as(before):
        status = EXIT_VIOLATION
    if args.out:
        Path(args.out).write_text(serialize_config(config_from_complex(final, "blowup")))
    return status


def cmd_fuzz(args) -> int:
    records = run_fuzz(args.trials, args.moves, args.seed, workers=args.workers)
    failed = [r for r in records if r.outcome != "pass"]
    if args.json:
        # elapsed time is dropped so the output is reproducible
        for r in records:
            r.elapsed = 0.0
        sys.stdout.write(export.export_json(records))
    else:
        cases = [c for r in records for c in r.cases]
        print(f"trials {len(records)}, passed {len(records) - len(failed)}, "
              f"case-1 moves {cases.count(1)}, case-2 moves {cases.count(2)}")
        for r in failed:
            print(f"seed {r.seed}: {r.detail}")
    return EXIT_VIOLATION if failed else EXIT_OK


def _load_fan(path):
    text = _read(path)
    if _first_word(text) != "fan":
        raise ParseError("expected a fan file", 1, 1)
    return parse_fan(text)


def cmd_toric_resolve(args) -> int:
    fan = _load_fan(args.file)
    history: list = []
    smooth = resolve_fan(fan, history=history)
    assert is_smooth_fan(smooth)[0]
    if args.out:
        Path(args.out).write_text(serialize_fan(smooth))
        added = smooth.rays[len(fan.rays):]
        print(f"added {len(added)} rays: " + " ".join(str(r) for r in added))
        print("multiplicities: " + " -> ".join(str(h) for h in history))
        print(f"final: {multiplicities(smooth)}")
    else:
        sys.stdout.write(serialize_fan(smooth))
    return EXIT_OK


def cmd_toric_complex(args) -> int:
    fan = _load_fan(args.file)
    cx = interior_complex(fan) if args.interior else cross_section_complex(fan)
    if args.interior and cx.dim < 0:
        print("warning: interior complex is empty (no interior rays)", file=sys.stderr)
    if args.dot:
        sys.stdout.write(export.export_dot(cx, fan.name))
    elif args.json:
        sys.stdout.write(export.export_json(cx))
    else:
        print(f"f-vector {f_vector(cx)}")
        print(homology(cx, reduced=True))
    return EXIT_OK


def cmd_corpus(args) -> int:
    try:
        fx = corpus.generate_fixture(args.name)
    except (KeyError, ValueError) as e:
        raise UnsupportedInput(str(e.args[0])) from None
    if not fx.has_data:
        print(f"{fx.name}: no data ({fx.note})")
        return EXIT_UNSUPPORTED
    text = serialize_config(fx.payload) if fx.kind == "snc-config" else serialize_fan(fx.payload)
    _emit(text, args.out)
    if args.out and fx.expected is not None:
        print(f"expected: {fx.expected}")
    return EXIT_OK


def cmd_export(args) -> int:
    cx = _load_complex(args.file)
    sys.stdout.write(export.export_dot(cx) if args.format == "dot" else export.export_json(cx))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dualcx", description="Dual complexes of normal crossing divisors.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check a configuration or complex")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("homology", help="integral homology")
    s.add_argument("file")
    s.add_argument("--reduced", action="store_true")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_homology)

    s = sub.add_parser("blowup", help="apply a move file")
    s.add_argument("file")
    s.add_argument("--moves", required=True)
    s.add_argument("--verify-contraction", action="store_true")
    s.add_argument("--out", help="write the final complex as an snc file")
    s.set_defaults(func=cmd_blowup)

    s = sub.add_parser("fuzz", help="random move chains, checking homology is unchanged")
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--moves", type=int, default=5)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_fuzz)

    toric = sub.add_parser("toric", help="toric fans").add_subparsers(dest="toric_command", required=True)
    s = toric.add_parser("resolve", help="smooth refinement of a fan")
    s.add_argument("file")
    s.add_argument("--out")
    s.set_defaults(func=cmd_toric_resolve)
    s = toric.add_parser("complex", help="cross-section or interior complex of a fan")
    s.add_argument("file")
    s.add_argument("--interior", action="store_true")
    fmt = s.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--dot", action="store_true")
    s.set_defaults(func=cmd_toric_complex)

    s = sub.add_parser("corpus", help="write a bundled fixture")
    s.add_argument("name")
    s.add_argument("--out")
    s.set_defaults(func=cmd_corpus)

    s = sub.add_parser("export", help="DOT or JSON export of a complex")
    s.add_argument("file")
    s.add_argument("--format", choices=("dot", "json"), required=True)
    s.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (MoveError, ValidationError, ConeError) as e:
        print(f"validation error: {e}", file=sys.stderr)
        for v in getattr(e, "violations", [])[1:]:
            print(f"  {v}", file=sys.stderr)
        return EXIT_INVALID
    except UnsupportedInput as e:
        print(f"unsupported input: {e}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except DualcxError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
