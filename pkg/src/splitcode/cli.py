"""Command-line interface: ``splitcode <command> ...``.

Exit codes: 0 ok, 1 invalid design, 2 not admissible, 3 ingredient failure,
4 parse error, 5 search budget exhausted, 6 too large for exact evaluation.

Every invocation emits a run manifest: next to ``--out`` as ``<out>.manifest.json``,
at ``--manifest`` if given, otherwise as JSON on stderr.  Only the ``wall_clock``
field differs between repeated runs.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
import time
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

from . import __version__
from .acode import ACode, design_to_acode, evaluate_deception, huber_pd_bound, huber_rule_bound
from .admissibility import divisibility_terms, known_nonexistent
from .combinators import FAMILIES, construct
from .design import dumps, loads
from .errors import (BudgetExhausted, IngredientFailure, Inadmissible, MalformedPartition,
                     SplitcodeError, TooLargeForExact, UnsupportedClass)
from .ingredients.cache import IngredientCache, ingredient_key, resolve_cache_dir
from .ingredients.search import DEFAULT_BUDGET, DEFAULT_RESTARTS, search_cyclic_splitting_design
from .verify import verify

OK, INVALID, NOT_ADMISSIBLE, INGREDIENT_FAILURE, PARSE_ERROR, BUDGET_EXHAUSTED, TOO_LARGE = range(7)


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def _write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.chmod(tmp, 0o644)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class Run:
    """Collects manifest fields for one invocation."""

    def __init__(self, args):
        self.args = args
        self.started = time.time()
        self.manifest = {
            "command": args.command,
            "parameters": {k: v for k, v in sorted(vars(args).items())
                           if k not in ("command", "func", "manifest", "cache_dir")},
            "seeds": [args.seed] if hasattr(args, "seed") else [],
            "budgets": {"moves": args.budget, "restarts": DEFAULT_RESTARTS} if hasattr(args, "budget") else {},
            "cache_dir": str(resolve_cache_dir(getattr(args, "cache_dir", None))),
            "artifacts": [],
            "verification": None,
            "exit_code": None,
            "version": __version__,
        }

    def artifact(self, path) -> None:
        self.manifest["artifacts"].append(str(path))

    def finish(self, code: int) -> int:
        self.manifest["exit_code"] = code
        self.manifest["wall_clock"] = {
            "started": datetime.fromtimestamp(self.started, timezone.utc).isoformat(),
            "elapsed_s": round(time.time() - self.started, 3),
        }
        text = json.dumps(self.manifest, sort_keys=True, indent=1) + "\n"
        target = getattr(self.args, "manifest", None)
        out = getattr(self.args, "out", None)
        if target:
            _write_atomic(Path(target), text)
        elif out:
            _write_atomic(Path(str(out) + ".manifest.json"), text)
        else:
            sys.stderr.write(text)
        return code


def _load_design(path):
    try:
        return loads(Path(path).read_text())
    except (OSError, UnicodeDecodeError, json.JSONDecodeError, ValueError, TypeError) as exc:
        raise _ParseError(f"cannot read {path}: {exc}") from exc


class _ParseError(Exception):
    pass


def _verify_record(design, threads=1):
    try:
        report = verify(design, threads=threads)
    except MalformedPartition as exc:
        return False, {"valid": False, "error": str(exc)}
    return report.valid, {"valid": report.valid, "num_blocks": report.num_blocks,
                          "qualifying": report.qualifying, "witness": report.witness,
                          "summary": report.describe()}


def _emit(design, run, out) -> int:
    ok, record = _verify_record(design, run.args.threads)
    run.manifest["verification"] = record
    if not ok:
        print(f"refusing to write: {record.get('summary', record.get('error'))}", file=sys.stderr)
        return INVALID
    text = dumps(design)
    if out:
        _write_atomic(Path(out), text)
        run.artifact(out)
    else:
        sys.stdout.write(text)
    print(f"{design.kind} t={design.t} v={design.v} k={design.k} c={design.c}: "
          f"{design.num_blocks} blocks, verified", file=sys.stderr)
    return OK


def cmd_construct(args, run) -> int:
    family = args.family_opt or args.family
    if family is None:
        print("construct needs a family: " + ", ".join(FAMILIES), file=sys.stderr)
        return PARSE_ERROR
    cache = IngredientCache(args.cache_dir)
    try:
        design = construct(family, args.v, cache=cache, seed=args.seed, budget=args.budget,
                           threads=args.threads)
    except Inadmissible as exc:
        print(f"not admissible: {exc}", file=sys.stderr)
        return NOT_ADMISSIBLE
    except IngredientFailure as exc:
        print(f"ingredient failure: {exc}", file=sys.stderr)
        return INGREDIENT_FAILURE
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return PARSE_ERROR
    return _emit(design, run, args.out)


def cmd_verify(args, run) -> int:
    design = _load_design(args.path)
    ok, record = _verify_record(design, args.threads)
    run.manifest["verification"] = record
    print(record.get("summary", record.get("error")))
    if not ok and record.get("witness"):
        print("witness: " + json.dumps(record["witness"], sort_keys=True))
    return OK if ok else INVALID


def cmd_bounds(args, run) -> int:
    t, v, k, c = args.t, args.v, args.k, args.c
    print(f"splitting {t}-({v},{k}x{c},1)")
    if not 0 < t <= k or k * c > v or c < 1:
        print("  parameters need 0 < t <= k and kc <= v")
        return NOT_ADMISSIBLE
    all_ok = True
    for s, num, den in divisibility_terms(t, v, k, c):
        ok = num % den == 0
        all_ok &= ok
        print(f"  divisibility s={s}: {num}/{den} {'integral' if ok else 'FAILS'}")
    print(f"  divisibility: {'pass' if all_ok else 'fail'}")
    if t <= k <= v:
        print(f"  rule bound |E| >= {_frac(huber_rule_bound(t, v, k, c))}")
    for i in range(min(t, k, v)):
        print(f"  P_d{i} >= {_frac(huber_pd_bound(i, k, c, v))}")
    reason = known_nonexistent(t, v, k, c)
    print(f"  nonexistent: {'yes (' + reason + ')' if reason else 'no'}")
    run.manifest["verification"] = {"divisibility": all_ok, "nonexistent": bool(reason)}
    return OK


def cmd_search(args, run) -> int:
    try:
        outcome = search_cyclic_splitting_design(args.t, args.v, args.k, args.c, seed=args.seed,
                                                 budget=args.budget, strategy=args.strategy)
    except (Inadmissible, UnsupportedClass) as exc:
        print(f"not admissible: {exc}", file=sys.stderr)
        return NOT_ADMISSIBLE
    except BudgetExhausted as exc:
        print(f"budget exhausted: {exc} {json.dumps(exc.stats, sort_keys=True)}", file=sys.stderr)
        run.manifest["verification"] = {"search": exc.stats}
        return BUDGET_EXHAUSTED
    design = outcome.design
    cache = IngredientCache(args.cache_dir)
    path = cache.put(ingredient_key("splitting_design", args.t, args.v, args.k, args.c), design)
    run.artifact(path)
    print("search: " + json.dumps(outcome.stats, sort_keys=True), file=sys.stderr)
    return _emit(design, run, args.out)


def _load_code(path):
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise _ParseError(f"cannot read {path}: {exc}") from exc
    if isinstance(data, dict) and "rules" in data:
        try:
            return ACode.loads(json.dumps(data))
        except (KeyError, TypeError, ValueError) as exc:
            raise _ParseError(f"not an A-code file: {exc}") from exc
    try:
        design = loads(json.dumps(data))
    except (ValueError, TypeError, AttributeError) as exc:
        raise _ParseError(str(exc)) from exc
    return design_to_acode(design)


def cmd_attack(args, run) -> int:
    code = _load_code(args.path)
    try:
        report = evaluate_deception(code, args.order, model=args.model)
    except TooLargeForExact as exc:
        print(f"too large: {exc}", file=sys.stderr)
        return TOO_LARGE
    print(report.describe())
    run.manifest["verification"] = {"order": report.order, "probability": _frac(report.probability),
                                    "bound": _frac(report.bound), "tight": report.tight,
                                    "model": report.model}
    return OK


def cmd_export(args, run) -> int:
    design = _load_design(args.path)
    code = design_to_acode(design)
    text = code.dumps() if args.format == "acode-json" else code.to_csv()
    if args.out:
        _write_atomic(Path(args.out), text)
        run.artifact(args.out)
    else:
        sys.stdout.write(text)
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="splitcode",
                                description="Splitting designs and optimal splitting A-codes.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, out=True, search=False):
        sp.add_argument("--threads", type=int, default=1)
        sp.add_argument("--cache-dir", default=None, help="overrides $SPLITCODE_CACHE")
        sp.add_argument("--manifest", default=None, help="manifest path")
        if out:
            sp.add_argument("--out", default=None)
        if search:
            sp.add_argument("--seed", type=int, default=0)
            sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    sp = sub.add_parser("construct", help="build a family member")
    sp.add_argument("family", nargs="?", choices=FAMILIES)
    sp.add_argument("--family", dest="family_opt", choices=FAMILIES)
    sp.add_argument("--v", type=int, default=None)
    common(sp, search=True)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("verify", help="exhaustively verify a design file")
    sp.add_argument("path")
    common(sp, out=False)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("bounds", help="divisibility, rule and deception bounds")
    for name in ("t", "v", "k", "c"):
        sp.add_argument(name, type=int)
    common(sp, out=False)
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("search", help="seeded search for a splitting design")
    for name in ("t", "v", "k", "c"):
        sp.add_argument(name, type=int)
    sp.add_argument("--strategy", default="auto",
                    choices=("auto", "multiplier", "hill-climb", "exact-cover"))
    common(sp, search=True)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("attack", help="exact spoofing probability")
    sp.add_argument("path")
    sp.add_argument("--order", type=int, required=True)
    sp.add_argument("--model", default="new-source", choices=("new-source", "any"))
    common(sp, out=False)
    sp.set_defaults(func=cmd_attack)

    sp = sub.add_parser("export", help="write a design as an A-code")
    sp.add_argument("path")
    sp.add_argument("--format", required=True, choices=("acode-json", "acode-csv"))
    common(sp)
    sp.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    run = Run(args)
    try:
        code = args.func(args, run)
    except _ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        code = PARSE_ERROR
    except SplitcodeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = INVALID
    return run.finish(code)


if __name__ == "__main__":
    sys.exit(main())
