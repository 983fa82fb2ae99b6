"""Command-line surface: evaluation, moment sums, closed forms, general-form
conjectures, sequence export, and recurrence-vs-brute-force sweeps.

Exit codes are fixed so CI can tell failure modes apart: 2 for usage or
invalid input (including a refused over-cap enumeration), 3 when the two
engines disagree (the bug-detection signal), 4 when fitting or
verification fails.  All numeric output is exact; big integers are printed
as decimal strings and rationals as numerator/denominator, never floats.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import digits, oeis
from .closedform import ExponentialForm, PolyTermForm, closed_form
from .errors import (
    EnumerationCapError,
    ExcludedBaseError,
    InvalidBaseError,
    InvalidDigitError,
    NoFitError,
)
from .generalform import guess_general_form
from .oracle import DEFAULT_ENUM_CAP, MomentQuery, brute_moment
from .recurrence import build_table, moment_value

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DISAGREEMENT = 3
EXIT_NO_FIT = 4


@dataclass
class OutputRecord:
    """One machine-readable record per invocation; round-trips through JSON."""

    command: str
    inputs: dict
    result: object
    status: str

    def to_json(self) -> str:
        return json.dumps(
            {
                "command": self.command,
                "inputs": self.inputs,
                "result": self.result,
                "status": self.status,
            },
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "OutputRecord":
        d = json.loads(text)
        return cls(d["command"], d["inputs"], d["result"], d["status"])


def _emit(args: argparse.Namespace, record: OutputRecord, human: list[str]) -> None:
    if args.json:
        print(record.to_json())
    else:
        for line in human:
            print(line)


def _digit_str(d: digits.DigitString) -> str:
    if not d.digits:
        return "0"
    sep = "" if d.base <= 10 else ","
    return sep.join(str(x) for x in d.digits)


def _enum_cap() -> int:
    raw = os.environ.get("RABOT_ENUM_CAP")
    if raw is None:
        return DEFAULT_ENUM_CAP
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"RABOT_ENUM_CAP must be an integer, got {raw!r}") from None


def _form_terms_json(form: ExponentialForm | PolyTermForm) -> list[dict]:
    if isinstance(form, ExponentialForm):
        return [
            {"coefficient": str(c), "base": str(lam)} for c, lam in form.terms
        ]
    return [
        {"coefficient_poly": [str(c) for c in poly], "base": str(lam)}
        for poly, lam in form.terms
    ]


def cmd_eval(args: argparse.Namespace) -> int:
    before = digits.from_value(args.base, args.n)
    after = digits.shorten_runs(before)
    value = digits.to_value(after)
    result: dict = {"value": str(value)}
    if args.verbose:
        result["digits_before"] = _digit_str(before)
        result["digits_after"] = _digit_str(after)
    record = OutputRecord(
        "eval", {"base": str(args.base), "n": str(args.n)}, result, "exact"
    )
    human = []
    if args.verbose:
        human.append(f"{_digit_str(before)} -> {_digit_str(after)}")
    human.append(str(value))
    _emit(args, record, human)
    return EXIT_OK


def cmd_sum(args: argparse.Namespace) -> int:
    q = MomentQuery(args.base, args.power, args.k, args.last_digit)
    inputs = {"base": str(args.base), "power": str(args.power), "k": str(args.k)}
    if args.last_digit is not None:
        inputs["last_digit"] = str(args.last_digit)
    inputs["engine"] = args.engine
    values: dict[str, int] = {}
    if args.engine in ("recurrence", "both"):
        table = build_table(args.base, args.power, args.k)
        values["recurrence"] = moment_value(table, args.power, args.k, args.last_digit)
    if args.engine in ("brute", "both"):
        values["brute"] = brute_moment(q, cap=_enum_cap())
    if args.engine == "both":
        agree = values["recurrence"] == values["brute"]
        record = OutputRecord(
            "sum",
            inputs,
            {
                "recurrence": str(values["recurrence"]),
                "brute": str(values["brute"]),
                "agree": agree,
            },
            "exact" if agree else "refuted",
        )
        human = [
            f"recurrence: {values['recurrence']}",
            f"brute: {values['brute']}",
            f"agree: {'yes' if agree else 'no'}",
        ]
        _emit(args, record, human)
        return EXIT_OK if agree else EXIT_DISAGREEMENT
    value = next(iter(values.values()))
    record = OutputRecord("sum", inputs, {"value": str(value)}, "exact")
    _emit(args, record, [str(value)])
    return EXIT_OK


def cmd_closed_form(args: argparse.Namespace) -> int:
    form, verdict = closed_form(args.base, args.power, depth=args.depth)
    inputs = {"base": str(args.base), "power": str(args.power)}
    if args.depth is not None:
        inputs["depth"] = str(args.depth)
    result = {
        "formula": form.render(),
        "terms": _form_terms_json(form),
        "verdict": {
            "status": verdict.status,
            "checked_depth": str(verdict.checked_depth),
        },
    }
    record = OutputRecord("closed-form", inputs, result, verdict.status)
    _emit(
        args,
        record,
        [form.render(), f"status: {verdict.status} (checked to k={verdict.checked_depth})"],
    )
    return EXIT_OK if verdict.status == "proven" else EXIT_NO_FIT


def cmd_general_form(args: argparse.Namespace) -> int:
    g = guess_general_form(args.power, range(args.b_min, args.b_max + 1))
    inputs = {
        "power": str(args.power),
        "b_min": str(args.b_min),
        "b_max": str(args.b_max),
    }
    result = {
        "formula": g.render(),
        "terms": [
            {"coefficient": fn.render(), "base": fam.render()} for fn, fam in g.terms
        ],
    }
    record = OutputRecord("general-form", inputs, result, g.status)
    _emit(
        args,
        record,
        [
            f"conjecture: {g.render()}",
            f"fitted over b = {args.b_min}..{args.b_max}",
        ],
    )
    return EXIT_OK


def cmd_seq(args: argparse.Namespace) -> int:
    table = build_table(args.base, args.power, args.kmax)
    values = [moment_value(table, args.power, k) for k in range(1, args.kmax + 1)]
    inputs = {
        "base": str(args.base),
        "power": str(args.power),
        "kmax": str(args.kmax),
    }
    result: dict = {"values": [str(v) for v in values]}
    human = [",".join(str(v) for v in values)]
    if args.oeis:
        found = oeis.lookup(values, limit=args.limit)
        result["oeis"] = {
            "fetched": found.fetched,
            "matches": [{"id": sid, "name": name} for sid, name in found.matches],
        }
        if not found.fetched:
            human.append("OEIS lookup unavailable")
        elif not found.matches:
            human.append("OEIS: no matches")
        else:
            human.extend(f"OEIS: {sid} {name}" for sid, name in found.matches)
    record = OutputRecord("seq", inputs, result, "exact")
    _emit(args, record, human)
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    cap = _enum_cap()
    inputs = {
        "b_min": str(args.b_min),
        "b_max": str(args.b_max),
        "p_max": str(args.p_max),
        "k_max": str(args.k_max),
    }
    queries = 0
    for b in range(args.b_min, args.b_max + 1):
        table = build_table(b, args.p_max, args.k_max)
        for p in range(args.p_max + 1):
            for k in range(1, args.k_max + 1):
                for last in [None, *range(b)]:
                    expected = moment_value(table, p, k, last)
                    actual = brute_moment(MomentQuery(b, p, k, last), cap=cap)
                    queries += 1
                    if expected != actual:
                        detail = {
                            "base": str(b),
                            "power": str(p),
                            "k": str(k),
                            "last_digit": "none" if last is None else str(last),
                            "recurrence": str(expected),
                            "brute": str(actual),
                        }
                        record = OutputRecord(
                            "check",
                            inputs,
                            {"queries": str(queries), "disagreement": detail},
                            "refuted",
                        )
                        _emit(
                            args,
                            record,
                            [
                                f"disagreement at b={b} p={p} k={k} last={detail['last_digit']}: "
                                f"recurrence {expected} vs brute {actual}"
                            ],
                        )
                        return EXIT_DISAGREEMENT
    record = OutputRecord(
        "check", inputs, {"queries": str(queries), "disagreement": None}, "exact"
    )
    _emit(args, record, [f"checked {queries} queries: recurrence and brute force agree"])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rabot",
        description="Exact moment sums for the run-shortening (raboter) operation.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON record")
    common.add_argument("--verbose", action="store_true", help="show working detail")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="apply the raboter operation")
    p.add_argument("--base", type=int, required=True)
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sum", parents=[common], help="moment sum over (k+1)-digit numbers")
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--power", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--last-digit", type=int, default=None)
    p.add_argument(
        "--engine", choices=["recurrence", "brute", "both"], default="recurrence"
    )
    p.set_defaults(func=cmd_sum)

    p = sub.add_parser(
        "closed-form", parents=[common], help="prove an exponential closed form in k"
    )
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--power", type=int, required=True)
    p.add_argument(
        "--depth",
        type=int,
        default=None,
        help="verification depth; raised to the proof depth when below it",
    )
    p.set_defaults(func=cmd_closed_form)

    p = sub.add_parser(
        "general-form", parents=[common], help="conjecture a form uniform in b"
    )
    p.add_argument("--power", type=int, required=True)
    p.add_argument("--b-min", type=int, default=2)
    p.add_argument("--b-max", type=int, default=12)
    p.set_defaults(func=cmd_general_form)

    p = sub.add_parser("seq", parents=[common], help="export the sum sequence over k")
    p.add_argument("--base", type=int, required=True)
    p.add_argument("--power", type=int, required=True)
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--oeis", action="store_true", help="look the sequence up in the OEIS")
    p.add_argument("--limit", type=int, default=5, help="maximum OEIS matches to show")
    p.set_defaults(func=cmd_seq)

    p = sub.add_parser(
        "check", parents=[common], help="sweep recurrence vs brute force"
    )
    p.add_argument("--b-min", type=int, default=2)
    p.add_argument("--b-max", type=int, default=4)
    p.add_argument("--p-max", type=int, default=3)
    p.add_argument("--k-max", type=int, default=5)
    p.set_defaults(func=cmd_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except (
        InvalidBaseError,
        InvalidDigitError,
        EnumerationCapError,
        ExcludedBaseError,
        ValueError,
    ) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except NoFitError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NO_FIT
    except IndexError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())
