"""Command-line entry point.

Exit codes: 0 ok, 2 parse or usage error, 3 incompatible state/code pair,
4 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass

from . import codes as codes_mod
from .errors import BudgetExceeded, ParseError
from .multicopy import CheckPlan, build_check_plan, format_plan, format_report
from .protocol import enumerate_exact, parse_noise, simulate_monte_carlo
from .stabilizer import (
    BUILTIN_STATES,
    builtin_state,
    classify_state,
    css_frame,
    css_generators,
    StateClass,
    parse_state,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INCOMPATIBLE = 3
EXIT_BUDGET = 4


def load_state(spec: str):
    if spec.lower() in BUILTIN_STATES:
        return builtin_state(spec), spec.lower()
    if not os.path.exists(spec):
        raise ParseError(f"no builtin state or file named {spec!r}")
    with open(spec) as fh:
        return parse_state(fh.read()), os.path.basename(spec)


def load_code(spec: str):
    if spec.upper() in codes_mod.BUILTIN_CODES:
        return codes_mod.builtin(spec), spec.upper()
    if not os.path.exists(spec):
        raise ParseError(f"no builtin code or file named {spec!r}")
    with open(spec) as fh:
        return codes_mod.parse_code(fh.read()), os.path.basename(spec)


@dataclass
class RunConfig:
    state: str
    code: str
    noise: str
    mode: str
    trials: int | None
    max_weight: int | None
    seed: int
    out: str | None
    workers: int
    frame: str

    def validate(self) -> None:
        if self.mode not in ("mc", "exact"):
            raise ParseError(f"mode must be mc or exact, not {self.mode!r}")
        if self.mode == "mc" and self.trials is None:
            raise ParseError("--trials is required in mc mode")
        if self.mode == "exact" and self.trials is not None:
            raise ParseError("--trials only applies to mc mode")
        if self.mode == "mc" and self.max_weight is not None:
            raise ParseError("--max-weight only applies to exact mode")
        if self.trials is not None and self.trials <= 0:
            raise ParseError("--trials must be positive")


def _frame_arg(value: str):
    return None if value == "given" else "auto"


def cmd_classify(args) -> int:
    if (args.state is None) == (args.code is None):
        raise ParseError("classify needs exactly one of --state or --code")
    if args.code is not None:
        code, name = load_code(args.code)
        print(f"code: {name}")
        print(f"class: {codes_mod.classify_code(code)}")
        print(f"parameters: [[{code.num_physical},{code.num_logical}]]")
        return EXIT_OK
    s, name = load_state(args.state)
    cls = classify_state(s)
    print(f"state: {name}")
    print(f"class: {cls}")
    if cls in (StateClass.CSS, StateClass.CSS_H):
        frame = css_frame(s, hadamard_invariant=cls is StateClass.CSS_H)
        if frame is not None:
            t = frame.apply(s)
            xs, zs = css_generators(t)
            print(f"frame: {frame}")
            print("css generators: " + ", ".join(str(g) for g in xs + zs))
    return EXIT_OK


def _plan(args):
    s, sname = load_state(args.state)
    code, cname = load_code(args.code)
    return build_check_plan(s, code, frame=_frame_arg(args.frame)), sname, cname


def cmd_plan(args) -> int:
    result, _, _ = _plan(args)
    if isinstance(result, CheckPlan):
        sys.stdout.write(format_plan(result))
        return EXIT_OK
    sys.stdout.write(format_report(result))
    return EXIT_INCOMPATIBLE


def cmd_simulate(args) -> int:
    cfg = RunConfig(args.state, args.code, args.noise, args.mode, args.trials, args.max_weight,
                    args.seed, args.out, args.workers, args.frame)
    cfg.validate()
    result, sname, cname = _plan(args)
    if not isinstance(result, CheckPlan):
        sys.stdout.write(format_report(result))
        return EXIT_INCOMPATIBLE
    noise = parse_noise(cfg.noise, result.setup.num_qubits)
    if cfg.mode == "mc":
        report = simulate_monte_carlo(result, noise, cfg.trials, cfg.seed, workers=cfg.workers, labels=(sname, cname))
    else:
        report = enumerate_exact(result, noise, max_weight=cfg.max_weight, labels=(sname, cname))
    sys.stdout.write(report.to_text())
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(report.to_json())
    return EXIT_OK


def cmd_dump_code(args) -> int:
    names = [args.code] if args.code else sorted(codes_mod.BUILTIN_CODES)
    for k, name in enumerate(names):
        code, _ = load_code(name)
        if k:
            print()
        sys.stdout.write(codes_mod.format_code(code))
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_PARSE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="stabpurify", description="Multi-party stabilizer-state purification toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("classify", help="classify a state or a code")
    c.add_argument("--state")
    c.add_argument("--code")
    c.set_defaults(func=cmd_classify)

    def pair(sp):
        sp.add_argument("--state", required=True, help="builtin name or state file")
        sp.add_argument("--code", required=True, help="builtin name or code file")
        sp.add_argument("--frame", choices=("given", "auto"), default="given",
                        help="use the generators as given, or search a local CSS frame")

    pl = sub.add_parser("plan", help="print the parity-check plan or the incompatibility witness")
    pair(pl)
    pl.set_defaults(func=cmd_plan)

    sm = sub.add_parser("simulate", help="run purification rounds under Pauli noise")
    pair(sm)
    sm.add_argument("--noise", default="depolarizing:0.01")
    sm.add_argument("--mode", default="mc")
    sm.add_argument("--trials", type=int)
    sm.add_argument("--max-weight", type=int)
    sm.add_argument("--seed", type=int, default=0)
    sm.add_argument("--workers", type=int, default=1)
    sm.add_argument("--out", help="write the JSON report here")
    sm.set_defaults(func=cmd_simulate)

    d = sub.add_parser("dump-code", help="print builtin codes in the text format")
    d.add_argument("--code")
    d.set_defaults(func=cmd_dump_code)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE
    except BudgetExceeded as exc:
        sys.stderr.write(f"budget exceeded: {exc}\n")
        return EXIT_BUDGET


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
