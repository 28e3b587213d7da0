"""Command-line front end.

Exit codes: 0 success (or all checks pass), 1 verification or
integrality/parity failure, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import catalog, reltp
from .catalog import CatalogMiss, SingTypeId
from .graded import MissingNumberError
from .rings import IntegralityError, RingError
from .verify import DEFAULT_SEED, SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def run_lookup(type_name: str, m: int, n: int, category: str, target: Optional[str] = None,
               as_json: bool = False) -> int:
    try:
        type_id = SingTypeId.of(type_name, category)
    except CatalogMiss as exc:
        raise InputError(str(exc)) from None
    if target is None:
        target = "full" if type_id.category == "Complex" else "zero"
    try:
        tp = catalog.lookup_tp(type_id, m, n, full_target=(target == "full"))
        codim = catalog.codimension(type_id.name, m, n)
    except CatalogMiss as exc:
        raise InputError(str(exc)) from None
    if as_json:
        _emit({"type": type_id.name, "category": type_id.category, "m": m, "n": n, "target": target,
               "tp": str(tp), "ring": str(tp.ring), "codimension": codim,
               "degree": catalog.cohomological_degree(type_id, m, n)})
    else:
        sys.stdout.write(f"{tp}\n")
    return EXIT_OK


def run_predict(profile: str) -> int:
    try:
        type_id, prescribed, extension, full_target = reltp.load_profile(profile)
        pred = reltp.predict_count(type_id, prescribed, extension, full_target)
    except (IntegralityError, reltp.ParityError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_FAIL
    except (reltp.ProfileError, CatalogMiss, MissingNumberError, KeyError, RingError, ValueError) as exc:
        raise InputError(str(exc)) from None
    _emit(pred.to_dict())
    return EXIT_OK


def run_verify(suite: str, seed: int = DEFAULT_SEED, out: Optional[str] = None) -> int:
    if suite not in SUITES:
        raise InputError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    report = run_suite(suite, seed)
    text = report.to_json() + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
    sys.stderr.write(f"{suite}: {report.passed}/{len(report.cases)} pass\n")
    return EXIT_OK if report.ok else EXIT_FAIL


def run_dump(out: Optional[str] = None) -> int:
    text = json.dumps(catalog.dump_catalog(), indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# -- scenario files ------------------------------------------------------------------------

_SCENARIO_KEYS = {
    "Lookup": {"task", "type", "m", "n", "category", "target"},
    "Predict": {"task", "profile"},
    "Verify": {"task", "suite", "seed", "out"},
    "DumpCatalog": {"task", "out"},
}


def run_scenario(path: str) -> int:
    p = Path(path)
    if not p.exists():
        raise InputError(f"scenario file {path} does not exist")
    try:
        data = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise InputError("a scenario must be a JSON object")
    task = data.get("task")
    if task not in _SCENARIO_KEYS:
        raise InputError(f"unknown task {task!r}")
    unknown = set(data) - _SCENARIO_KEYS[task]
    if unknown:
        raise InputError(f"unknown scenario keys {sorted(unknown)}")
    try:
        if task == "Lookup":
            return run_lookup(data["type"], int(data["m"]), int(data["n"]), data["category"], data.get("target"))
        if task == "Predict":
            profile = (p.parent / data["profile"]) if not Path(data["profile"]).is_absolute() else Path(data["profile"])
            if not profile.exists():
                raise InputError(f"profile {profile} does not exist")
            return run_predict(str(profile))
        if task == "Verify":
            return run_verify(data["suite"], int(data.get("seed", DEFAULT_SEED)), data.get("out"))
        return run_dump(data.get("out"))
    except KeyError as exc:
        raise InputError(f"scenario is missing {exc}") from None


# -- argument parsing -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="relthom", description="Relative Thom polynomial toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    lk = sub.add_parser("lookup", help="print the Thom polynomial of a catalog row")
    lk.add_argument("--type", required=True, dest="type_name")
    lk.add_argument("--m", type=int, required=True)
    lk.add_argument("--n", type=int, required=True)
    lk.add_argument("--category", required=True)
    lk.add_argument("--target", choices=("full", "zero"), default=None,
                    help="target classes kept (full) or set to zero; complex defaults to full")
    lk.add_argument("--json", action="store_true", help="also report ring, codimension and degree")

    pr = sub.add_parser("predict", help="evaluate a prediction from a profile file")
    pr.add_argument("--profile", required=True)

    vf = sub.add_parser("verify", help="run a verification suite")
    vf.add_argument("--suite", required=True)
    vf.add_argument("--seed", type=int, default=DEFAULT_SEED)
    vf.add_argument("--out", default=None)

    dc = sub.add_parser("dump-catalog", help="write the full catalog as JSON")
    dc.add_argument("--out", default=None)

    rs = sub.add_parser("run", help="execute a JSON scenario file")
    rs.add_argument("--scenario", required=True)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors with code 2
        return int(exc.code or 0)
    try:
        if args.command == "lookup":
            return run_lookup(args.type_name, args.m, args.n, args.category, args.target, args.json)
        if args.command == "predict":
            return run_predict(args.profile)
        if args.command == "verify":
            return run_verify(args.suite, args.seed, args.out)
        if args.command == "dump-catalog":
            return run_dump(args.out)
        return run_scenario(args.scenario)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
