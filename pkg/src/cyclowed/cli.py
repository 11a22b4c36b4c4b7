"""Command-line front end: ``cyclowed <command> ...``.

Every command produces a :class:`CommandResult`.  Text output is the
default and ``--json`` prints the canonical JSON document instead.

Exit codes: 0 ok, 1 violation or closed-form/oracle disagreement, 2 usage
error, 3 internal assertion.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod

from . import __version__
from .absolute import (
    AbsoluteTuple,
    CompositeTuple,
    absolute_eldiv_z,
    absolute_eldiv_z_oracle,
    absolute_image_membership_oracle,
    absolute_index,
    absolute_index_m,
    composite_membership,
    composite_membership_oracle,
    discriminant_magnitude,
    index_discriminant_consistency,
    km_ties,
    km_ties_check,
    km_ties_render,
)
from .arith import factorize, is_prime, units
from .cyclotomic import CycElement
from .dedekind import (
    dedekind_eldiv_closed_form,
    dedekind_eldiv_oracle,
    dedekind_image_basis,
    dedekind_ties,
    dedekind_unit_indices,
    hochschild,
    lambda_radical_layers,
)
from .verify import run_suite
from .wedderburn import (
    w1_basis,
    w1_radical_layer_dim,
    w1_ties,
    w2_basis,
    w2_subring_experiment,
    wedderburn_eldiv_closed_form,
    wedderburn_eldiv_oracle,
    wedderburn_image_basis,
    wedderburn_ties,
)

__all__ = ["CommandResult", "UsageError", "build_parser", "main", "run"]

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3
DEFAULT_MAX_PN = 128
DEFAULT_MAX_M = 64


class UsageError(Exception):
    pass


@dataclass
class CommandResult:
    command: list
    status: str  # "ok" | "violation" | "error"
    payload: object = None
    elapsed_ms: float = 0.0
    exit_code: int = EXIT_OK
    text: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "status": self.status,
            "payload": self.payload,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# --------------------------------------------------------------------------
# helpers


def _ceilings() -> tuple[int, int]:
    raw = os.environ.get("CYCLOWED_MAX_DEGREE")
    if raw is None:
        return DEFAULT_MAX_PN, DEFAULT_MAX_M
    try:
        v = int(raw)
    except ValueError:
        raise UsageError(f"CYCLOWED_MAX_DEGREE must be an integer, got {raw!r}") from None
    return v, v


def _pn(args) -> tuple[int, int]:
    p, n = args.p, args.n
    if p is None or n is None:
        raise UsageError("--p and --n are required")
    if not is_prime(p):
        raise UsageError(f"--p {p} is not prime")
    if n < 1:
        raise UsageError("--n must be at least 1")
    cap = _ceilings()[0]
    if p**n > cap:
        raise UsageError(f"p^n = {p**n} exceeds the ceiling {cap} (set CYCLOWED_MAX_DEGREE to raise it)")
    return p, n


def _m(value: int | None, minimum: int = 1) -> int:
    if value is None:
        raise UsageError("--m is required")
    if value < minimum:
        raise UsageError(f"--m must be at least {minimum}")
    cap = _ceilings()[1]
    if value > cap:
        raise UsageError(f"m = {value} exceeds the ceiling {cap} (set CYCLOWED_MAX_DEGREE to raise it)")
    return value


def _m_or_pn(args) -> int:
    if args.m is not None:
        if args.p is not None or args.n is not None:
            raise UsageError("give either --m or --p/--n, not both")
        return _m(args.m)
    p, n = _pn(args)
    return p**n


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON in {path}: {exc}") from None


def _entry(x):
    if isinstance(x, CycElement):
        return [str(c) for c in x.coeffs]
    return str(Fraction(x))


def _rows_json(rows) -> list:
    return [[_entry(x) for x in r] for r in rows]


def _rows_text(rows) -> list[str]:
    cells = [[str(x) for x in r] for r in rows]
    width = max((len(c) for r in cells for c in r), default=1)
    return ["  ".join(c.rjust(width) for c in r) for r in cells]


def _factor_str(k: int) -> str:
    if k == 1:
        return "1"
    return " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in factorize(k))


def _kv_text(payload: dict) -> list[str]:
    width = max(len(k) for k in payload)
    return [f"{k.ljust(width)} : {v}" for k, v in payload.items()]


# --------------------------------------------------------------------------
# commands


def _cmd_eldiv(args, res: CommandResult):
    p, n = _pn(args)
    q = p**n
    if args.kind == "dedekind":
        closed = sorted(dedekind_eldiv_closed_form(p, n, u) for u in dedekind_unit_indices(p, n))
        oracle = dedekind_eldiv_oracle if args.oracle else None
        label = "t-valuations"
    elif args.kind == "wedderburn":
        closed = sorted(wedderburn_eldiv_closed_form(p, n, j) for j in range(q))
        oracle = wedderburn_eldiv_oracle if args.oracle else None
        label = "t-valuations"
    else:
        closed = absolute_eldiv_z(p, n)
        oracle = absolute_eldiv_z_oracle if args.oracle else None
        label = "divisors"
    payload = {"embedding": args.kind, "p": p, "n": n, label: closed}
    if args.kind == "absolute":
        payload["product"] = prod(closed)
        payload["index"] = absolute_index(p, n)
    else:
        payload["determinant_valuation"] = sum(closed)
    if oracle is not None:
        got = oracle(p, n)
        payload["oracle"] = got
        payload["agree"] = got == closed
        if got != closed:
            res.status, res.exit_code = "violation", EXIT_VIOLATION
    res.payload = payload
    res.text = _kv_text(payload)


def _cmd_ties(args, res: CommandResult):
    if args.kind == "dedekind":
        p, n = _pn(args)
        system = dedekind_ties(p, n)
    elif args.kind == "wedderburn":
        system = wedderburn_ties(_m_or_pn(args))
    elif args.kind == "w1":
        system = w1_ties(_m_or_pn(args))
    else:
        p, n = _pn(args)
        system = km_ties(p, n)
        lines = km_ties_render(p, n)
        res.payload = {"system": system.to_json(), "rendered": lines}
        res.text = lines
        return
    res.payload = {"system": system.to_json()}
    res.text = []
    for c in system.congruences:
        rhs = " + ".join(f"({coef})*{name}" for name, coef in c.form) or "0"
        res.text.append(f"{c.target} - [{rhs}]  in  {c.modulus.describe()}")


def _cmd_check(args, res: CommandResult):
    data = _read_json(args.input)
    if args.kind == "absolute":
        try:
            t = AbsoluteTuple.from_json(data)
        except (ValueError, TypeError) as exc:
            raise UsageError(str(exc)) from None
        if t.p**t.n > _ceilings()[0]:
            raise UsageError(f"p^n = {t.p**t.n} exceeds the ceiling")
        report = km_ties_check(t)
        payload = {"p": t.p, "n": t.n, **report.to_json()}
        if args.oracle:
            o = absolute_image_membership_oracle(t)
            payload["oracle"] = o
            payload["agree"] = o == report.ok
        res.payload = payload
        res.text = [f"member: {report.ok}"] + [
            f"violated: l={v.l} j={v.j} modulus={v.modulus} lhs={v.lhs_residue} rhs={v.rhs_residue}"
            for v in report.violations
        ]
        if args.oracle:
            res.text.append(f"oracle: {payload['oracle']} (agree: {payload['agree']})")
        ok = report.ok and payload.get("agree", True)
    else:
        m = _m(args.m)
        try:
            t = CompositeTuple.from_json(data)
        except (ValueError, TypeError) as exc:
            raise UsageError(str(exc)) from None
        if t.m != m:
            raise UsageError(f"input tuple has m={t.m}, but --m {m} was given")
        member, checks = composite_membership(t)
        payload = {"m": m, "member": member, "checks": [c.to_json() for c in checks]}
        if args.oracle:
            o = composite_membership_oracle(t)
            payload["oracle"] = o
            payload["agree"] = o == member
        res.payload = payload
        res.text = [f"member: {member}"] + [
            f"{c.describe()}: {'pass' if c.report.ok else 'fail'}" for c in checks
        ]
        ok = member and payload.get("agree", True)
    if not ok:
        res.status, res.exit_code = "violation", EXIT_VIOLATION


def _cmd_basis(args, res: CommandResult):
    if args.kind == "dedekind":
        p, n = _pn(args)
        rows = dedekind_image_basis(p, n, theta=args.theta)
    elif args.kind == "wedderburn":
        rows = wedderburn_image_basis(_m_or_pn(args))
    elif args.kind == "w1":
        rows = w1_basis(_m_or_pn(args))
    else:
        p, n = _pn(args)
        rows = w2_basis(p, n, coordinates="tuple")
    res.payload = {"basis": args.kind, "rows": _rows_json(rows)}
    res.text = _rows_text(rows)


def _cmd_hochschild(args, res: CommandResult):
    p, n = _pn(args)
    q = p**n
    twists = [args.twist % q] if args.twist is not None else units(q)
    variant = "cohomology" if args.cohomology else "homology"
    if args.max_degree < 0:
        raise UsageError("--max-degree must be nonnegative")
    table = []
    for tw in twists:
        row = [str(hochschild(p, n, tw, d, variant)) for d in range(args.max_degree + 1)]
        table.append({"twist": tw, "degrees": row})
    res.payload = {"p": p, "n": n, "variant": variant, "table": table}
    head = "twist  " + "  ".join(f"deg {d}" for d in range(args.max_degree + 1))
    res.text = [head] + [f"{r['twist']:>5}  " + "  ".join(f"{x:>5}" for x in r["degrees"]) for r in table]


def _cmd_radical(args, res: CommandResult):
    p, n = _pn(args)
    if args.max_i < 0:
        raise UsageError("--max-i must be nonnegative")
    f = lambda_radical_layers if args.use_lambda else w1_radical_layer_dim
    seq = [f(p, n, i) for i in range(args.max_i + 1)]
    res.payload = {"ring": "Lambda" if args.use_lambda else "W1", "p": p, "n": n, "dimensions": seq}
    res.text = [",".join(map(str, seq))]


def _cmd_verify(args, res: CommandResult):
    if args.trials < 1:
        raise UsageError("--trials must be positive")
    results = run_suite(args.suite, trials=args.trials, seed=args.seed)
    res.payload = {"seed": args.seed, "trials": args.trials, "suites": [r.to_json() for r in results]}
    res.text = []
    for r in results:
        res.text.append(f"[{r.suite}] {'pass' if r.ok else 'FAIL'}")
        for name, (a, b) in r.checks.items():
            res.text.append(f"  {name}: {a}/{b}")
    if not all(r.ok for r in results):
        res.status, res.exit_code = "violation", EXIT_VIOLATION


def _cmd_index(args, res: CommandResult):
    m = _m(args.m)
    lhs, rhs = index_discriminant_consistency(m)
    value = absolute_index_m(m) if args.command == "index" else discriminant_magnitude(m)
    res.payload = {"m": m, args.command: value, "factored": _factor_str(value), "consistency": lhs == rhs}
    res.text = _kv_text(res.payload)
    if lhs != rhs:
        res.status, res.exit_code = "violation", EXIT_VIOLATION


def _cmd_experiment(args, res: CommandResult):
    p, n = _pn(args)
    rep = w2_subring_experiment(p, n, max_pairs=args.max_pairs, seed=args.seed)
    res.payload = rep.to_json()
    res.text = _kv_text({k: v for k, v in res.payload.items() if k != "failures"})


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="cyclowed", description="Exact computations for cyclotomic embeddings.")
    ap.add_argument("--version", action="version", version=f"cyclowed {__version__}")
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the canonical JSON document")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def pn(sp, m=False):
        sp.add_argument("--p", type=int)
        sp.add_argument("--n", type=int)
        if m:
            sp.add_argument("--m", type=int)

    sp = sub.add_parser("eldiv", parents=[common], help="elementary divisors")
    sp.add_argument("kind", choices=["dedekind", "wedderburn", "absolute"])
    pn(sp)
    sp.add_argument("--oracle", action="store_true", help="also run the Smith normal form oracle")
    sp.set_defaults(func=_cmd_eldiv)

    sp = sub.add_parser("ties", parents=[common], help="tie systems")
    sp.add_argument("kind", choices=["dedekind", "wedderburn", "w1", "absolute"])
    pn(sp, m=True)
    sp.set_defaults(func=_cmd_ties)

    sp = sub.add_parser("check", parents=[common], help="membership of a tuple read from JSON")
    sp.add_argument("kind", choices=["absolute", "composite"])
    sp.add_argument("--input", required=True, help="JSON file, or - for stdin")
    sp.add_argument("--m", type=int)
    sp.add_argument("--oracle", action="store_true")
    sp.set_defaults(func=_cmd_check)

    sp = sub.add_parser("basis", parents=[common], help="image basis matrices")
    sp.add_argument("kind", choices=["dedekind", "wedderburn", "w1", "w2"])
    pn(sp, m=True)
    sp.add_argument("--theta", choices=["t", "zeta"], default="t")
    sp.set_defaults(func=_cmd_basis)

    sp = sub.add_parser("hochschild", parents=[common], help="Hochschild (co)homology descriptors")
    pn(sp)
    sp.add_argument("--twist", type=int, help="Galois twist; all units when omitted")
    sp.add_argument("--max-degree", type=int, default=5)
    sp.add_argument("--cohomology", action="store_true")
    sp.set_defaults(func=_cmd_hochschild)

    sp = sub.add_parser("radical-series", parents=[common], help="radical layer dimensions")
    pn(sp)
    sp.add_argument("--max-i", type=int, default=10)
    sp.add_argument("--lambda", dest="use_lambda", action="store_true", help="use Lambda instead of W1")
    sp.set_defaults(func=_cmd_radical)

    sp = sub.add_parser("verify", parents=[common], help="randomized property suites")
    sp.add_argument("--suite", choices=["vandermonde", "qpascal", "toperators", "all"], default="all")
    sp.add_argument("--trials", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=_cmd_verify)

    for name in ("index", "discriminant"):
        sp = sub.add_parser(name, parents=[common], help=f"closed-form {name} with the m^m check")
        sp.add_argument("--m", type=int, required=True)
        sp.set_defaults(func=_cmd_index)

    sp = sub.add_parser("experiment", parents=[common], help="exploratory experiments")
    sp.add_argument("name", choices=["w2-subring"])
    pn(sp)
    sp.add_argument("--max-pairs", type=int)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=_cmd_experiment)
    return ap


def run(argv: list[str] | None = None) -> CommandResult:
    argv = list(sys.argv[1:] if argv is None else argv)
    res = CommandResult(command=argv, status="ok")
    start = time.perf_counter()
    try:
        args = build_parser().parse_args(argv)
        res.command = [args.command] + argv[1:]
        args.func(args, res)
    except UsageError as exc:
        res.status, res.exit_code, res.payload = "error", EXIT_USAGE, {"error": str(exc)}
    except (ValueError, KeyError, TypeError) as exc:
        res.status, res.exit_code, res.payload = "error", EXIT_USAGE, {"error": str(exc)}
    except AssertionError as exc:
        res.status, res.exit_code = "error", EXIT_INTERNAL
        res.payload = {"error": f"internal assertion failed: {exc}"}
    res.elapsed_ms = (time.perf_counter() - start) * 1000
    return res


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if any(a in ("-h", "--help", "--version") for a in argv):
        try:
            build_parser().parse_args(argv)
        except SystemExit as exc:
            return int(exc.code or 0)
    res = run(argv)
    as_json = "--json" in argv
    if as_json:
        print(json.dumps(res.to_json(), indent=2))
    elif res.status == "error":
        print(res.payload["error"], file=sys.stderr)
    else:
        print("\n".join(res.text))
        if res.status != "ok":
            print(f"status: {res.status}", file=sys.stderr)
    return res.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
