"""``eqthom run <suite>``: run a verification suite and print or save its report."""

from __future__ import annotations

import argparse
import json
import sys

from .report import Report
from .suites import SUITES, Config, UsageError, run_suite

KEYS = {"lie": str, "model": str, "max_degree": int, "truncation": int, "tolerance": float,
        "seed": int}


def read_config(path: str) -> dict:
    """Flat ``key = value`` file; ``#`` starts a comment."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for n, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{n}: expected key = value")
            key, value = (x.strip() for x in line.split("=", 1))
            key = key.replace("-", "_")
            if key == "cases":
                out.setdefault("extra", {})["cases"] = int(value)
                continue
            if key not in KEYS:
                raise UsageError(f"{path}:{n}: unknown key {key!r}")
            try:
                out[key] = KEYS[key](value)
            except ValueError as exc:
                raise UsageError(f"{path}:{n}: bad value for {key}: {value!r}") from exc
    return out


def format_text(rep: Report) -> str:
    rows = [(e.label, e.status, e.mode,
             "" if e.residual is None else str(e.residual), e.anchor)
            for e in sorted(rep.entries, key=lambda e: e.label)]
    widths = [max([len(h)] + [len(r[i]) for r in rows]) for i, h in
              enumerate(("check", "status", "mode", "residual", "anchor"))]
    line = "  ".join("{:<%d}" % w for w in widths)
    out = [f"suite {rep.name}: {'PASS' if rep.passed else 'FAIL'} "
           f"({len(rep.entries)} checks, {len(rep.failures())} failing, {rep.wall_time}s)",
           f"parameters: {json.dumps(rep.parameters, sort_keys=True, default=str)}",
           line.format("check", "status", "mode", "residual", "anchor")]
    out += [line.format(*r) for r in rows]
    for k, v in sorted(rep.data.items()):
        out.append(f"{k}: {json.dumps(v, sort_keys=True, default=str)}")
    for e in rep.failures():
        out.append(f"witness {e.label}: {json.dumps(e.witness, default=str)}")
    return "\n".join(out) + "\n"


def emit(rep: Report, fmt="text") -> str:
    if fmt == "json":
        return json.dumps(rep.to_dict(), indent=2, sort_keys=True) + "\n"
    return format_text(rep)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="eqthom", description="Verify equivariant Thom and "
                                "Chern-Weil identities with exact arithmetic.")
    sub = p.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run a verification suite")
    run.add_argument("suite", help=f"one of: {', '.join(SUITES)}")
    run.add_argument("--lie", help="Lie algebra name (R, R2, aff2, so2, so3, so4, so2xR)")
    run.add_argument("--model", help="foliated model: kronecker or molino")
    run.add_argument("--max-degree", type=int)
    run.add_argument("--truncation", type=int, help="Fourier truncation N")
    run.add_argument("--tolerance", type=float)
    run.add_argument("--seed", type=int)
    run.add_argument("--config", help="flat key = value file; flags override it")
    run.add_argument("--format", choices=("text", "json"), default="text")
    run.add_argument("--out", help="write the report here instead of stdout")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        values = read_config(args.config) if args.config else {}
        for key in KEYS:
            v = getattr(args, key)
            if v is not None:
                values[key] = v
        cfg = Config(**values)
        rep = run_suite(args.suite, cfg)
    except (UsageError, OSError) as exc:
        print(f"eqthom: error: {exc}", file=sys.stderr)
        return 2
    text = emit(rep, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if rep.passed else 1


if __name__ == "__main__":
    sys.exit(main())
