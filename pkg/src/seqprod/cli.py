"""``seqprod`` command line: verify suites, reproduce counterexamples, certify maps.

Exit codes: 0 pass, 1 property failure, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Optional

from . import axioms, processes, suites
from .config import DEFAULTS, tolerances
from .errors import SeqProdError, UnknownName
from .sampling import derived_rng

DEFAULT_SEED = 0x5EED
DEFAULT_DIMS = ((2,), (3,), (4,), (2, 2))
MAX_BLOCK = 8
SCHEMA = 1

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    seed: int = DEFAULT_SEED
    dims: tuple = DEFAULT_DIMS
    samples: int = 20
    tol: dict = field(default_factory=dict)
    out: Optional[str] = None
    json: bool = False

    def validate(self):
        if self.samples < 1:
            raise UsageError("--samples must be >= 1")
        for d in self.dims:
            if not d or any(n < 1 or n > MAX_BLOCK for n in d):
                raise UsageError(f"block dimensions must lie in 1..{MAX_BLOCK}, got {list(d)}")


def parse_dims(text: str) -> tuple:
    """``"2;3;2,2"`` -> ``((2,), (3,), (2, 2))``: ';' separates algebras, ',' separates blocks."""
    try:
        out = tuple(tuple(int(x) for x in part.split(",")) for part in text.split(";") if part.strip())
    except ValueError as exc:
        raise UsageError(f"bad --dims {text!r}") from exc
    if not out:
        raise UsageError("--dims is empty")
    return out


def parse_tol(items) -> dict:
    out = {}
    for item in items or ():
        name, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--tol expects name=value, got {item!r}")
        try:
            out[name.strip()] = float(value)
        except ValueError as exc:
            raise UsageError(f"bad tolerance value in {item!r}") from exc
    return out


def _default_seed() -> int:
    env = os.environ.get("SEQPROD_SEED")
    if env is None:
        return DEFAULT_SEED
    try:
        return int(env, 0)
    except ValueError as exc:
        raise UsageError(f"SEQPROD_SEED={env!r} is not an integer") from exc


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=lambda s: int(s, 0), default=None)
    common.add_argument("--samples", type=int, default=None)
    common.add_argument("--dims", default=None)
    common.add_argument("--tol", action="append", metavar="NAME=VALUE")
    common.add_argument("--out", default=None)
    common.add_argument("--json", action="store_true")

    ap = argparse.ArgumentParser(prog="seqprod", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", parents=[common], help="run a property suite")
    v.add_argument("suite", choices=suites.SUITE_NAMES)
    c = sub.add_parser("counterexample", parents=[common], help="reproduce a counterexample family")
    c.add_argument("name")
    r = sub.add_parser("certify", parents=[common], help="certify a map given as Process JSON")
    r.add_argument("path")
    return ap


def _config(args, default_samples: int) -> RunConfig:
    cfg = RunConfig(
        seed=_default_seed() if args.seed is None else args.seed,
        dims=parse_dims(args.dims) if args.dims else DEFAULT_DIMS,
        samples=default_samples if args.samples is None else args.samples,
        tol=parse_tol(args.tol),
        out=args.out,
        json=args.json,
    )
    cfg.validate()
    try:
        DEFAULTS.replace(**cfg.tol)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from exc
    return cfg


def _emit(cfg: RunConfig, report: dict, lines) -> None:
    text = json.dumps(report, sort_keys=True, indent=1)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text + "\n")
    if cfg.json:
        print(text)
    else:
        for line in lines:
            print(line)


def cmd_verify(suite: str, cfg: RunConfig) -> int:
    records = suites.run_suite(suite, cfg.seed, cfg.dims, cfg.samples)
    passed = all(r["passed"] for r in records)
    report = {"schema": SCHEMA, "command": "verify", "suite": suite, "seed": cfg.seed, "samples": cfg.samples,
              "dims": [list(d) for d in cfg.dims], "tolerances": cfg.tol, "properties": records,
              "passed": passed}
    lines = [f"{'PASS' if r['passed'] else 'FAIL'} {r['suite']}.{r['property']} {r['algebra']} "
             f"residual={r['residual']:.3g}" for r in records]
    lines.append(f"{sum(r['passed'] for r in records)}/{len(records)} properties passed")
    _emit(cfg, report, lines)
    return EXIT_OK if passed else EXIT_FAIL


def cmd_counterexample(name: str, cfg: RunConfig) -> int:
    if name not in axioms.COUNTEREXAMPLES:
        raise UnknownName(f"unknown counterexample {name!r}; choose from {', '.join(axioms.COUNTEREXAMPLES)}")
    result = axioms.counterexample(name, cfg.samples, derived_rng(cfg.seed, "counterexample", name))
    report = {"schema": SCHEMA, "command": "counterexample", "seed": cfg.seed, "samples": cfg.samples, **result}
    lines = [f"{name}: claimed failures {result['claimed_failures']}, observed {result['observed_failures']}"]
    for key in ("unit_gap", "gap", "gap_for_unnormalized_q", "violation"):
        if key in result:
            lines.append(f"  {key} = {result[key]:.12g}")
    for key in ("u_p", "u_p2"):
        if key in result:
            lines.append(f"  {key} = {_matrix_text(result[key])}")
    lines.append("reproduced" if result["reproduced"] else "NOT reproduced")
    _emit(cfg, report, lines)
    return EXIT_OK if result["reproduced"] else EXIT_FAIL


def _matrix_text(obj) -> str:
    blk = obj["blocks"][0]
    n = blk["dim"]
    vals = [complex(re, im) for re, im in blk["entries"]]
    rows = [" ".join(f"{v.real:+.6g}" if abs(v.imag) < 1e-12 else f"{v:.6g}" for v in vals[i * n:(i + 1) * n])
            for i in range(n)]
    return "[" + "; ".join(rows) + "]"


def cmd_certify(path: str, cfg: RunConfig) -> int:
    try:
        with open(path) as fh:
            f = processes.process_from_json(json.load(fh))
    except (OSError, ValueError, KeyError, TypeError, SeqProdError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    cert = processes.certify(f, cfg.samples, derived_rng(cfg.seed, "certify"))
    report = {"schema": SCHEMA, "command": "certify", "path": path, "seed": cfg.seed, "certificate": cert}
    _emit(cfg, report, [f"{k}: {str(v).lower()}" for k, v in cert.items()])
    return EXIT_OK


def main(argv=None) -> int:
    ap = _parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        if args.command == "verify":
            cfg = _config(args, 20)
        elif args.command == "counterexample":
            cfg = _config(args, 500)
        else:
            cfg = _config(args, 100)
        with tolerances(**cfg.tol):
            if args.command == "verify":
                return cmd_verify(args.suite, cfg)
            if args.command == "counterexample":
                return cmd_counterexample(args.name, cfg)
            return cmd_certify(args.path, cfg)
    except (UsageError, UnknownName) as exc:
        print(f"seqprod: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
