"""Command line interface.

Exit status: 0 valid / forced / no countermodel / checks passed, 1 refuted /
not forced / countermodel found / checks failed, 2 unknown, 64 bad formula
or usage, 65 bad input document.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from gptv.atomic import CapExceeded, load_system
from gptv.bridge import translate_model, verify_order_embedding
from gptv.formula import FormulaSyntaxError, parse_formula, render_formula
from gptv.kripke import ModelError, SearchCapExceeded, countermodel_search, dump_model, \
    kripke_forces, load_model
from gptv.pts import UnknownAtomError, dump_pts, goldfarb_pts, load_pts, pts_forces
from gptv.selftest import SelftestConfig, run_selftest
from gptv.validity import gptv_check
from gptv.verdict import Refuted, Valid

EXIT_OK, EXIT_NO, EXIT_UNKNOWN = 0, 1, 2
EXIT_USAGE, EXIT_DATA = 64, 65


class InputError(Exception):
    pass


def _read_json(path: str) -> tuple[dict, str]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text), text
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def _line_of(text: str, names: Sequence[str]) -> Optional[int]:
    """First line mentioning the offending worlds, looking past the "order" key first."""
    quoted = [f'"{n}"' for n in names]
    lines = text.splitlines()
    start = next((i for i, line in enumerate(lines) if '"order"' in line), 0)
    for want in (quoted, quoted[:1]):
        for lo in (start, 0):
            for no, line in enumerate(lines[lo:], lo + 1):
                if want and all(q in line for q in want):
                    return no
    return None


def _load_model_file(path: str):
    doc, text = _read_json(path)
    try:
        return load_model(doc)
    except ModelError as exc:
        line = _line_of(text, getattr(exc, "worlds", ()))
        where = f"{path}:{line}" if line else path
        raise InputError(f"{where}: {exc}") from None


def _write_json(doc, path: Optional[str]) -> None:
    text = json.dumps(doc, indent=2, sort_keys=False) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _model_lines(m) -> list[str]:
    out = [f"  worlds: {', '.join(m.worlds)}"]
    pairs = m.covering_pairs()
    out.append("  order: " + (", ".join(f"{a} < {b}" for a, b in pairs) if pairs else "(none)"))
    for w in m.worlds:
        out.append(f"  {w}: {{{', '.join(sorted(m.valuation[w]))}}}")
    return out


def _pts_lines(pts) -> list[str]:
    out = [f"  {name}: {s.render(elide_ex_falso=True)}" for name, s in zip(pts.names, pts.members)]
    out.append("  (every member also has bot => a for each signature atom a)")
    return out


def cmd_prove(args) -> int:
    f = parse_formula(args.formula)
    verdict = gptv_check(f, args.max_worlds)
    if isinstance(verdict, Valid):
        if args.format == "json":
            _write_json({"formula": render_formula(f), "verdict": "valid"}, None)
        else:
            print(f"Valid: {render_formula(f)}")
        return EXIT_OK
    if isinstance(verdict, Refuted):
        paths = {}
        if args.witness_dir:
            d = Path(args.witness_dir)
            d.mkdir(parents=True, exist_ok=True)
            paths = {"model": str(d / "countermodel.json"), "pts": str(d / "witness_pts.json")}
            _write_json(dump_model(verdict.model), paths["model"])
            _write_json(dump_pts(verdict.pts), paths["pts"])
        member = verdict.pts.names[verdict.member]
        if args.format == "json":
            _write_json({
                "formula": render_formula(f), "verdict": "refuted",
                "model": dump_model(verdict.model), "world": verdict.world,
                "pts": dump_pts(verdict.pts), "member": member, "paths": paths,
            }, None)
        else:
            print(f"Refuted: {render_formula(f)}")
            print(f"Kripke countermodel ({len(verdict.model)} worlds), fails at {verdict.world}:")
            print("\n".join(_model_lines(verdict.model)))
            print(f"Proof-theoretic witness, fails at {member}:")
            print("\n".join(_pts_lines(verdict.pts)))
            for kind, p in paths.items():
                print(f"wrote {kind} witness to {p}")
        return EXIT_NO
    if args.format == "json":
        _write_json({"formula": render_formula(f), "verdict": "unknown",
                     "reason": verdict.reason}, None)
    else:
        print(f"Unknown: {verdict.reason}")
    return EXIT_UNKNOWN


def cmd_translate(args) -> int:
    m = _load_model_file(args.model)
    t = translate_model(m)
    report = verify_order_embedding(m, t)
    doc = dump_pts(t.pts)
    if args.output:
        _write_json(doc, args.output)
    if args.format == "json":
        out = {"report": report.to_json()}
        if not args.output:
            out["pts"] = doc
        _write_json(out, None)
    else:
        if not args.output:
            _write_json(doc, None)
        print(f"translated {len(m.worlds)} worlds into {len(t.pts)} member systems")
        print("\n".join(report.lines()))
    return EXIT_OK if report.ok else EXIT_NO


def cmd_eval(args) -> int:
    doc, text = _read_json(args.target)
    f = parse_formula(args.formula)
    if "worlds" in doc:
        m = _load_model_file(args.target)
        try:
            forced = kripke_forces(m, args.location, f)
        except ModelError as exc:
            raise InputError(f"{args.target}: {exc}") from None
    elif "systems" in doc:
        try:
            pts = load_pts(doc)
            forced = pts_forces(pts, pts.index_of(args.location), f)
        except KeyError:
            raise InputError(f"{args.target}: no member named {args.location!r}") from None
        except (UnknownAtomError, ValueError) as exc:
            raise InputError(f"{args.target}: {exc}") from None
    else:
        raise InputError(f"{args.target}: neither a model nor a proof-theoretic system")
    if args.format == "json":
        _write_json({"location": args.location, "formula": render_formula(f),
                     "forced": forced}, None)
    else:
        print(f"{args.location} {'forces' if forced else 'does not force'} {render_formula(f)}")
    return EXIT_OK if forced else EXIT_NO


def cmd_search(args) -> int:
    f = parse_formula(args.formula)
    found = countermodel_search(f, args.max_worlds)
    if found is None:
        if args.format == "json":
            _write_json({"formula": render_formula(f), "countermodel": None}, None)
        else:
            print(f"no countermodel with at most {args.max_worlds} worlds")
        return EXIT_OK
    m, w = found
    if args.format == "json":
        _write_json({"formula": render_formula(f), "countermodel": dump_model(m), "world": w}, None)
    else:
        print(f"countermodel ({len(m)} worlds), fails at {w}:")
        print("\n".join(_model_lines(m)))
    return EXIT_NO


def cmd_goldfarb(args) -> int:
    doc, _ = _read_json(args.system)
    try:
        g, sig = load_system(doc)
    except ValueError as exc:
        raise InputError(f"{args.system}: {exc}") from None
    pts = goldfarb_pts(g, sig, args.rule_cap, args.member_cap)
    _write_json(dump_pts(pts), args.output)
    if args.output:
        print(f"wrote {len(pts)} member systems to {args.output}")
    return EXIT_OK


def cmd_selftest(args) -> int:
    cfg = SelftestConfig(seed=args.seed, trials=args.trials, max_worlds=args.max_worlds,
                         max_atoms=args.max_atoms, max_depth=args.max_depth,
                         bot_weight=args.bot_weight, drop_labels=args.drop_labels)
    report = run_selftest(cfg)
    if args.format == "json":
        _write_json(report.to_json(), None)
    else:
        sys.stdout.write(report.render_text())
    return EXIT_OK if report.ok else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gptv", description="Generalised proof-theoretic validity toolkit.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def fmt(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("prove", help="decide validity; refutations come with witnesses")
    p.add_argument("formula")
    p.add_argument("--max-worlds", type=int, default=5)
    p.add_argument("--witness-dir", help="write countermodel and witness system here")
    fmt(p)
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("translate", help="turn a Kripke model into a proof-theoretic system")
    p.add_argument("model")
    p.add_argument("output", nargs="?", help="where to write the system (default: stdout)")
    fmt(p)
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("eval", help="evaluate forcing at a world or member system")
    p.add_argument("target", help="model or proof-theoretic system document")
    p.add_argument("location", help="world or member name")
    p.add_argument("formula")
    fmt(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("search", help="look for a Kripke countermodel only")
    p.add_argument("formula")
    p.add_argument("--max-worlds", type=int, default=5)
    fmt(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("goldfarb", help="all ex-falso-completed supersets of an atomic system")
    p.add_argument("system", help="atomic system document")
    p.add_argument("-o", "--output")
    p.add_argument("--rule-cap", type=int, default=4096)
    p.add_argument("--member-cap", type=int, default=4096)
    p.set_defaults(func=cmd_goldfarb)

    p = sub.add_parser("selftest", help="randomised cross-check of both semantics")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--max-worlds", type=int, default=4)
    p.add_argument("--max-atoms", type=int, default=3)
    p.add_argument("--max-depth", type=int, default=5)
    p.add_argument("--bot-weight", type=float, default=1.0)
    p.add_argument("--drop-labels", action="store_true", help=argparse.SUPPRESS)
    fmt(p)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except FormulaSyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.text:
            print(f"  {exc.text}\n  {' ' * exc.position}^", file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (CapExceeded, SearchCapExceeded, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
