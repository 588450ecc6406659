"""Command-line front end: ``tcore <subcommand> ...``.

Exit codes: 0 success / proven / holomorphic, 1 refuted / not holomorphic,
2 not applicable or usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from .density import DEFAULT_CHECKPOINTS, measure_density
from .etaquot import EtaQuotient, certify_holomorphic, factorize
from .raduseller import CongruenceClaim, SeriesGuardError, max_series, verify_claim
from .tcore import tcore_count_oracle, tcore_series

EXIT_OK, EXIT_FAIL, EXIT_NA = 0, 1, 2
_VERDICT_EXIT = {"proven": EXIT_OK, "refuted": EXIT_FAIL, "not_applicable": EXIT_NA}


def parse_modulus(text: str) -> int:
    """Accept ``25`` or caret form ``5^2``."""
    p, j = parse_prime_power(text) if "^" in text else (int(text), 1)
    value = p**j
    if value < 2:
        raise argparse.ArgumentTypeError(f"modulus must be at least 2: {text}")
    return value


def parse_prime_power(text: str) -> tuple[int, int]:
    try:
        if "^" in text:
            base, exp = text.split("^")
            p, j = int(base), int(exp)
        else:
            fac = factorize(int(text))
            if len(fac) != 1:
                raise ValueError
            (p, j), = fac.items()
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a prime power like 5^2, got {text!r}") from None
    if factorize(p) != {p: 1} or j < 1:
        raise argparse.ArgumentTypeError(f"expected a prime power like 5^2, got {text!r}")
    return p, j


def _emit(obj: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(obj, sort_keys=True))
    else:
        for k, v in obj.items():
            print(f"{k}: {v}")


def cmd_count(args) -> int:
    s = tcore_series(args.t, args.n + 1, args.mod)
    print(s.coeff(args.n))
    return EXIT_OK


def cmd_oracle(args) -> int:
    print(tcore_count_oracle(args.t, args.n))
    return EXIT_OK


def cmd_series(args) -> int:
    if args.terms > max_series():
        raise SeriesGuardError(f"{args.terms} terms exceeds guard {max_series()}")
    coeffs = tcore_series(args.t, args.terms, args.mod).tolist()
    if args.format == "json":
        print(json.dumps({"t": args.t, "modulus": args.mod, "coefficients": [str(c) for c in coeffs]},
                         sort_keys=True))
    else:
        print(" ".join(str(c) for c in coeffs))
    return EXIT_OK


def cmd_eta_check(args) -> int:
    e = EtaQuotient.parse(args.spec)
    rep = certify_holomorphic(e)
    out = {"spec": e.to_spec(), **rep.to_dict()}
    if args.format == "json":
        print(json.dumps(out, sort_keys=True))
    else:
        print(f"spec: {out['spec']}")
        print(f"holomorphic: {str(rep.holomorphic).lower()}")
        print(f"weight: {rep.weight}")
        print(f"conditions_24: {list(rep.conditions_24)}")
        for d, v in rep.cusp_orders.items():
            print(f"  cusp d={d}: order {v}")
    return EXIT_OK if rep.holomorphic else EXIT_FAIL


def _report_text(rep) -> str:
    lines = [str(rep.claim), f"verdict: {rep.verdict}",
             f"P(t) = {{{', '.join(map(str, rep.P_set))}}}", f"N = {rep.N}, A_t = {rep.A_t}"]
    if rep.bound is not None:
        lines.append(f"bound: 0 <= n <= {rep.bound} (nu = {rep.nu}); "
                     f"theorem bound {rep.theorem_bound}")
        lines.append(f"checked {len(rep.checks)} coefficients")
    if rep.witness:
        tp, n, c = rep.witness
        lines.append(f"witness: a_{rep.claim.p}({rep.claim.m}*{n} + {tp}) = {c} (mod {rep.claim.u})")
    if rep.reason:
        lines.append(f"reason: {rep.reason}")
    return "\n".join(lines)


def cmd_prove(args) -> int:
    rep = verify_claim(CongruenceClaim(args.p, args.m, args.t, args.mod))
    print(rep.to_json() if args.format == "json" else _report_text(rep))
    return _VERDICT_EXIT[rep.verdict]


def _prove_one(claim_dict: dict) -> str:
    return verify_claim(CongruenceClaim.from_dict(claim_dict)).to_json()


def cmd_prove_batch(args) -> int:
    stream = sys.stdin if args.input == "-" else open(args.input)
    with stream:
        claims = [json.loads(line) for line in stream if line.strip()]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            outputs = list(pool.map(_prove_one, claims))
    else:
        outputs = [_prove_one(c) for c in claims]
    code = EXIT_OK
    for line in outputs:
        print(line)
        code = max(code, _VERDICT_EXIT[json.loads(line)["verdict"]])
    return code


def cmd_density(args) -> int:
    p, j = args.mod
    table = measure_density(args.t, p, j, args.checkpoints)
    if args.format == "csv":
        sys.stdout.write(table.to_csv())
    elif args.format == "json":
        print(json.dumps({"t": table.t, "modulus": table.modulus,
                          "rows": [{"X": X, "numerator": k, "denominator": X}
                                   for X, k in zip(table.checkpoints, table.numerators)]},
                         sort_keys=True))
    else:
        for X, d in zip(table.checkpoints, table.densities):
            print(f"X={X}: {d.numerator}/{d.denominator} ~ {float(d):.6f}")
    return EXIT_OK


def _checkpoints(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(",") if x)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tcore", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="a_t(n) from the generating function")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mod", type=parse_modulus, default=None)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("oracle", help="a_t(n) by enumerating partitions (n <= 60)")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("series", help="first coefficients of sum a_t(n) q^n")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--terms", type=int, default=20)
    p.add_argument("--mod", type=parse_modulus, default=None)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("eta-check", help="certify an eta-quotient, e.g. 'N=192;24:4,48:-2'")
    p.add_argument("--spec", required=True)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_eta_check)

    p = sub.add_parser("prove", help="prove a_p(mn + t') = 0 (mod u) for t' in P(t)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--mod", type=parse_modulus, required=True)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("prove-batch", help="JSON-lines claims in, JSON-lines reports out")
    p.add_argument("--input", default="-")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_prove_batch)

    p = sub.add_parser("density", help="density of n with a_t(n) = 0 mod p^j")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--mod", type=parse_prime_power, required=True, help="prime power, e.g. 5^2")
    p.add_argument("--checkpoints", type=_checkpoints, default=DEFAULT_CHECKPOINTS)
    p.add_argument("--format", choices=["text", "csv", "json"], default="csv")
    p.set_defaults(func=cmd_density)
    return ap


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_NA if exc.code else EXIT_OK
    if getattr(args, "jobs", 1) < 1:
        print("tcore: --jobs must be positive", file=sys.stderr)
        return EXIT_NA
    try:
        return args.func(args)
    except (ValueError, SeriesGuardError, OSError) as exc:
        print(f"tcore: error: {exc}", file=sys.stderr)
        return EXIT_NA


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
