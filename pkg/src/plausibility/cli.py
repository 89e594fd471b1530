"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 malformed input (model, formula, fixture),
3 semantic error (unknown world or agent, bisimilar worlds given to ``distinguish``,
untranslatable input), 4 a brute-force or oracle bound was exceeded.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from . import fixtures
from .bisim import (Bisimilar, BisimulationError, DomainTooLarge, bisimilar, contract,
                    distinguishing_formula, largest_autobisimulation, normalize)
from .formula import FormulaSyntaxError, classify, parse, to_text
from .model import (ModelError, PlausibilityModel, UnknownEntity, ValidationError, load_model,
                    model_to_dict, to_dot, validate)
from .oracle import Bounds, OracleBoundExceeded, OracleFailure, fuzz, oracle_largest
from .semantics import extension, satisfies
from .translate import TranslationError, cond_to_degrees, cond_to_safe, no_translation


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _model_arg(spec: str) -> PlausibilityModel:
    if spec.startswith("fixture:"):
        m = re.fullmatch(r"fixture:(\w+)(?:\?(\w+)=(\d+))?", spec)
        if not m:
            raise fixtures.FixtureError(f"bad fixture reference {spec!r}")
        name, _, value = m.groups()
        return fixtures.build(name, int(value) if value is not None else None)
    try:
        text = Path(spec).read_text(encoding="utf-8")
    except OSError as exc:
        raise ModelError(f"cannot read model file {spec!r}: {exc.strerror}") from None
    return load_model(text)


def _formula_arg(text: str):
    return parse(text)


def _build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "dot"), default="text")
    common.add_argument("--semantics", choices=("normal", "raw"), default="normal")
    common.add_argument("--max-brute", type=int, default=8)
    common.add_argument("--seed", type=int, default=0)

    parser = _Parser(prog="plausibility", description="Plausibility models, bisimulation and belief logics.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cmd(name, help_text, model=True, world=False, formula=False):
        p = sub.add_parser(name, help=help_text, parents=[common])
        if model:
            p.add_argument("--model", required=True, help="model JSON path or fixture:ID[?k=N]")
        if world:
            p.add_argument("--world", required=True)
        if formula:
            p.add_argument("--formula", required=True)
        return p

    cmd("validate", "check the model invariants")
    cmd("check", "model-check a formula at a world", world=True, formula=True)
    cmd("extension", "worlds where a formula holds", formula=True)
    p = cmd("bisim", "decide bisimilarity of two pointed models", world=True)
    p.add_argument("--other-model", help="second model (defaults to --model)")
    p.add_argument("--other-world", required=True)
    cmd("contract", "bisimulation contraction")
    cmd("normalize", "replace plausibility by the normal relation")
    p = cmd("translate", "translate a conditional-belief formula", model=False, formula=True)
    p.add_argument("--to", choices=("S", "D", "C"), required=True)
    p.add_argument("--model", help="model for the pointed translation into D")
    p.add_argument("--world", help="world for the pointed translation into D")
    p.add_argument("--verbatim", action="store_true", help="use the literal disjunction form for D")
    p = cmd("fixture", "emit a reference model", model=False)
    p.add_argument("id", help=f"one of {', '.join(fixtures.FIXTURE_IDS)}")
    p.add_argument("--param", type=int)
    p = cmd("oracle", "brute-force reference computations", model=False)
    p.add_argument("action", choices=("largest", "fuzz"))
    p.add_argument("model_path", nargs="?", help="model for 'largest'")
    p.add_argument("--model", dest="model_opt")
    p.add_argument("--seeds", type=int, default=100)
    p.add_argument("--formulas", type=int, default=20)
    p = cmd("distinguish", "a formula true at --world and false at --other-world", world=True)
    p.add_argument("--other-world", required=True)
    return parser


def _emit(args, payload: dict, text: str, model: PlausibilityModel | None = None) -> str:
    match args.format:
        case "json":
            return json.dumps({"command": args.command, **payload}, indent=2, sort_keys=True)
        case "dot":
            if model is None:
                raise UsageError(f"--format dot is not available for {args.command}")
            return to_dot(model).rstrip("\n")
    return text


def _model_json(model):
    return json.dumps(model_to_dict(model, reduced=True), indent=2)


def _dispatch(args) -> tuple[str, int]:
    match args.command:
        case "validate":
            try:
                model = _model_arg(args.model)
                problems = validate(model)
            except ValidationError as exc:
                model, problems = None, exc.violations
            payload = {"valid": not problems, "violations": [_violation(v) for v in problems]}
            if problems and args.format == "dot":
                raise ValidationError(problems)
            text = "valid" if not problems else "\n".join(map(str, problems))
            return _emit(args, payload, text, model), (EXIT_INPUT if problems else 0)
        case "check":
            model = _model_arg(args.model)
            f = _formula_arg(args.formula)
            result = satisfies(model, args.world, f, args.semantics)
            payload = {"world": args.world, "formula": to_text(f), "semantics": args.semantics, "result": result}
            return _emit(args, payload, "true" if result else "false"), 0
        case "extension":
            model = _model_arg(args.model)
            f = _formula_arg(args.formula)
            worlds = sorted(extension(model, f, args.semantics))
            payload = {"formula": to_text(f), "semantics": args.semantics, "worlds": worlds}
            return _emit(args, payload, " ".join(worlds)), 0
        case "bisim":
            m1 = _model_arg(args.model)
            m2 = _model_arg(args.other_model) if args.other_model else m1
            ok, rel = bisimilar((m1, args.world), (m2, args.other_world), args.max_brute)
            pairs = sorted(list(p) for p in rel) if ok else None
            text = "bisimilar" if ok else "not bisimilar"
            if ok:
                text += "\n" + "\n".join(f"{x} {y}" for x, y in pairs)
            return _emit(args, {"bisimilar": ok, "relation": pairs}, text), 0
        case "contract":
            model = _model_arg(args.model)
            _prime(model, args.max_brute)
            quotient, qmap = contract(model)
            payload = {"model": model_to_dict(quotient, reduced=True), "quotient": dict(sorted(qmap.items()))}
            return _emit(args, payload, _model_json(quotient), quotient), 0
        case "normalize":
            model = _model_arg(args.model)
            _prime(model, args.max_brute)
            normal = normalize(model)
            return _emit(args, {"model": model_to_dict(normal, reduced=True)}, _model_json(normal), normal), 0
        case "translate":
            f = _formula_arg(args.formula)
            if args.to == "C":
                raise TranslationError(no_translation("the conditional-belief language"))
            if args.to == "S":
                out = cond_to_safe(f)
            else:
                if not (args.model and args.world):
                    raise UsageError("translation into D needs --model and --world")
                out = cond_to_degrees(_model_arg(args.model), args.world, f, verbatim=args.verbatim)
            payload = {"to": args.to, "input": to_text(f), "output": to_text(out),
                       "language": sorted(classify(out))}
            return _emit(args, payload, to_text(out)), 0
        case "fixture":
            model = fixtures.build(args.id, args.param)
            return _emit(args, {"id": args.id, "model": model_to_dict(model, reduced=True)},
                         _model_json(model), model), 0
        case "oracle":
            if args.action == "largest":
                spec = args.model_path or args.model_opt
                if not spec:
                    raise UsageError("oracle largest needs a model")
                blocks = oracle_largest(_model_arg(spec), args.max_brute)
                text = "\n".join(" ".join(b) for b in blocks)
                return _emit(args, {"action": "largest", "blocks": blocks}, text), 0
            failures = fuzz(range(args.seed, args.seed + args.seeds), Bounds(), args.formulas)
            payload = {"action": "fuzz", "seeds": args.seeds, "ok": not failures, "failures": failures}
            text = f"{args.seeds} seeds, {len(failures)} counterexamples"
            if args.format == "text" and failures:
                text += "\n" + json.dumps(failures, indent=2)
            return _emit(args, payload, text), (0 if not failures else 3)
        case "distinguish":
            model = _model_arg(args.model)
            model.check_world(args.other_world)
            _prime(model, args.max_brute)
            f = distinguishing_formula(model, args.world, args.other_world)
            payload = {"worlds": [args.world, args.other_world], "formula": to_text(f)}
            return _emit(args, payload, to_text(f)), 0
    raise UsageError(f"unknown command {args.command}")


def _prime(model, max_brute):
    largest_autobisimulation(model, max_brute)


def _violation(v):
    return {"invariant": v.invariant, "agent": v.agent,
            "witness": list(v.witness) if v.witness else None, "detail": v.detail}


EXIT_USAGE, EXIT_INPUT, EXIT_SEMANTIC, EXIT_BOUND = 1, 2, 3, 4


def _classify_error(exc) -> tuple[int, str]:
    match exc:
        case UsageError():
            return EXIT_USAGE, "usage"
        case ValidationError():
            return EXIT_INPUT, "validation"
        case UnknownEntity():
            return EXIT_SEMANTIC, "unknown"
        case ModelError() | FormulaSyntaxError() | fixtures.FixtureError():
            return EXIT_INPUT, "parse"
        case Bisimilar() | TranslationError():
            return EXIT_SEMANTIC, "semantic"
        case OracleBoundExceeded() | DomainTooLarge() | BisimulationError() | OracleFailure():
            return EXIT_BOUND, "bound"
    raise exc


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    wants_json = "--format=json" in argv or any(a == "--format" and b == "json" for a, b in zip(argv, argv[1:]))
    try:
        args = parser.parse_args(argv)
        out, code = _dispatch(args)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except Exception as exc:
        code, kind = _classify_error(exc)
        if wants_json:
            command = next((a for a in argv if not a.startswith("-")), None)
            print(json.dumps({"command": command, "error": {"kind": kind, "message": str(exc)}},
                             indent=2, sort_keys=True), file=stdout)
        print(f"error: {exc}", file=stderr)
        if code == EXIT_USAGE:
            print(parser.format_usage().rstrip(), file=stderr)
        return code
    print(out, file=stdout)
    return code


def main():
    sys.exit(run())
