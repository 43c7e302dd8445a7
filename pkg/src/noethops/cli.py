"""Command-line front end.

Exit codes: 0 success, 1 input error, 2 refutation (or a failed theorem-backed
check, which means an arithmetic bug), 3 search exhaustion.  Output is
deterministic for a fixed config and seed; report ordering follows the config,
never completion order.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .closures import NonMonomialIdealError
from .configs import (
    ConfigError,
    load_experiment_config,
    load_ring,
    parse_ideal_list,
    run_experiment_config,
)
from .diffops import OperatorSet, parse_operator_set
from .groebner import ideal_sum
from .noetherian import (
    ComponentMismatchError,
    NonRationalPointError,
    PrimaryComponent,
    dual_space,
    noetherian_ops_primary,
    verify_noetherian_ops,
)
from .poly import PolyParseError
from .uniformity import (
    PsiInconsistencyError,
    check_reverse,
    diff_colon,
    separating_operator,
    verify_filtration,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_REFUTED = 2
EXIT_EXHAUSTED = 3


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_text(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _csv_text(rows: list[list[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# subcommands


def cmd_noeth_ops(args) -> int:
    ring = load_ring(args.ring)
    Q = ring.ideal(parse_ideal_list(args.ideal, ring.var_names))
    if args.point is not None:
        point = [Fraction(part.strip()) for part in args.point.split(",")]
        ops_list = dual_space(Q, point)
        ops = OperatorSet(ops_list, ops_list[0].modulus)
    else:
        if args.prime is None:
            raise ConfigError("need either --point or --prime with --independent")
        p = ring.ideal(parse_ideal_list(args.prime, ring.var_names))
        indep_names = [v.strip() for v in (args.independent or "").split(",") if v.strip()]
        indep = tuple(ring.var_names.index(v) for v in indep_names)
        ops = noetherian_ops_primary(PrimaryComponent(Q, p, indep))
    cert = verify_noetherian_ops(Q, ops, args.degree)
    if args.format == "json":
        _emit(_json_text(cert.to_dict(ring.var_names)), args.out)
    else:
        lines = [ops.format(ring.var_names), f"status: {cert.status}"]
        if cert.witness is not None:
            lines.append(f"witness: {ring.format(cert.witness)} ({cert.witness_side})")
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if cert.ok else EXIT_REFUTED


def cmd_verify_ops(args) -> int:
    ring = load_ring(args.ring)
    a = ideal_sum(ring.ideal(parse_ideal_list(args.ideal, ring.var_names)), ring.N)
    modulus = (
        ring.ideal(parse_ideal_list(args.modulus, ring.var_names)) if args.modulus else ring.rad
    )
    ops = parse_operator_set(args.ops, ring.var_names, modulus)
    cert = verify_noetherian_ops(a, ops, args.degree)
    if args.format == "json":
        _emit(_json_text(cert.to_dict(ring.var_names)), args.out)
    else:
        lines = [f"status: {cert.status}"]
        if cert.witness is not None:
            lines.append(f"witness: {ring.format(cert.witness)} ({cert.witness_side})")
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if cert.ok else EXIT_REFUTED


def cmd_diff_colon(args) -> int:
    ring = load_ring(args.ring)
    ops = parse_operator_set(args.ops, ring.var_names, ring.rad)
    I = ring.image_in_reduced(ring.ideal(parse_ideal_list(args.ideal, ring.var_names)))
    S = diff_colon(I, args.power, ops, ring, args.degree)
    full_dim = len(S.monos)
    lines = []
    if S.dim == full_dim:
        lines.append(f"full space: every polynomial of degree <= {args.degree} lies in the colon")
    lines.append(f"dimension: {S.dim} of {full_dim}")
    lines.extend(ring.format(f) for f in S.basis)
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _run_experiment(args, forced_mode: str | None = None) -> int:
    cfg = load_experiment_config(args.config)
    if forced_mode is not None:
        cfg.mode = forced_mode
    if args.seed is not None:
        cfg.seed = args.seed
    if args.n_max is not None:
        cfg.n_max = args.n_max
    if args.c_max is not None:
        cfg.c_max = args.c_max
    if args.degree is not None:
        cfg.degree = args.degree
    bundle = run_experiment_config(cfg, jobs=args.jobs)
    if args.format == "csv":
        _emit(_csv_text(bundle.csv_rows(cfg.ring.var_names)), args.out)
    else:
        _emit(_json_text(bundle.to_dict(cfg.ring.var_names)), args.out)
    if bundle.aggregate_c is None:
        return EXIT_EXHAUSTED
    if any(not r.passed for r in bundle.reverse):
        return EXIT_REFUTED
    return EXIT_OK


def cmd_find_c(args) -> int:
    return _run_experiment(args, forced_mode="artin_rees")


def cmd_check_bs(args) -> int:
    return _run_experiment(args, forced_mode="briancon_skoda")


def cmd_check_symb(args) -> int:
    return _run_experiment(args, forced_mode="symbolic")


def cmd_experiment(args) -> int:
    return _run_experiment(args, forced_mode=None)


def cmd_check_ar_reverse(args) -> int:
    cfg = load_experiment_config(args.config)
    n_max = args.n_max if args.n_max is not None else cfg.n_max
    lines = []
    ok = True
    for name, J in cfg.ideals:
        for n in range(1, n_max + 1):
            rep = check_reverse(J, cfg.operators, cfg.ring, n, cfg.degree)
            lines.append(f"{name} n={n}: {'pass' if rep.passed else 'FAIL'}")
            ok = ok and rep.passed
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if ok else EXIT_REFUTED


def cmd_sep_op(args) -> int:
    ring = load_ring(args.ring)
    a = ring.ideal(parse_ideal_list(args.lower, ring.var_names))
    b = ring.ideal(parse_ideal_list(args.upper, ring.var_names))
    p = ring.ideal(parse_ideal_list(args.prime, ring.var_names))
    psi = parse_ideal_list(args.psi, ring.var_names)
    result = separating_operator(
        a, b, ring, p, psi, args.t_max, args.coeff_deg, seed=args.seed or 0
    )
    if not result.found:
        _emit(result.message + "\n", args.out)
        return EXIT_EXHAUSTED
    lines = [
        result.delta.format(ring.var_names),
        f"order: {result.order}",
        f"d: {result.d_value.format(ring.var_names)}",
    ]
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_verify_filtration(args) -> int:
    ring = load_ring(args.ring)
    chain = [ring.ideal(parse_ideal_list(part, ring.var_names)) for part in args.chain.split("|")]
    primes = [ring.ideal(parse_ideal_list(part, ring.var_names)) for part in args.primes.split("|")]
    report = verify_filtration(chain, primes, ring)
    lines = []
    for step in report.steps:
        status = "pass" if step.strictly_increasing and step.module_structure and step.prime_declared else "FAIL"
        detail = []
        if not step.strictly_increasing:
            detail.append("not strictly increasing")
        if not step.module_structure:
            detail.append("prime does not multiply the step into the previous term")
        if not step.prime_declared:
            detail.append("prime not among the declared minimal primes")
        lines.append(f"step {step.index}: {status}" + (f" ({'; '.join(detail)})" if detail else ""))
    lines.append(f"last proper term is a minimal prime: {'yes' if report.last_term_is_minimal_prime else 'NO'}")
    lines.append(f"note: {report.note}")
    lines.append(f"result: {'pass' if report.passed else 'FAIL'}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if report.passed else EXIT_REFUTED


# ---------------------------------------------------------------------------
# argument wiring


def _add_common_output(sub) -> None:
    sub.add_argument("--format", choices=("text", "json", "csv"), default="text")
    sub.add_argument("--out", default=None, help="write output to this path instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="noethops",
        description="Noetherian differential operators, differential colons, and uniform-shift experiments over Q",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    s = subs.add_parser("noeth-ops", help="operators describing a primary ideal, with certificate")
    s.add_argument("ring")
    s.add_argument("--ideal", required=True)
    s.add_argument("--point", default=None, help="rational coordinates, e.g. '0,0'")
    s.add_argument("--prime", default=None)
    s.add_argument("--independent", default=None, help="comma-separated independent variables")
    s.add_argument("--degree", type=int, default=8)
    _add_common_output(s)
    s.set_defaults(func=cmd_noeth_ops)

    s = subs.add_parser("verify-ops", help="verify or refute a claimed operator set")
    s.add_argument("ring")
    s.add_argument("--ideal", required=True)
    s.add_argument("--ops", required=True)
    s.add_argument("--modulus", default=None, help="target modulus ideal; defaults to the radical")
    s.add_argument("--degree", type=int, default=8)
    _add_common_output(s)
    s.set_defaults(func=cmd_verify_ops)

    s = subs.add_parser("diff-colon", help="degree-truncated differential colon basis")
    s.add_argument("ring")
    s.add_argument("--ops", required=True)
    s.add_argument("--ideal", required=True)
    s.add_argument("-m", "--power", type=int, required=True)
    s.add_argument("--degree", type=int, default=8)
    _add_common_output(s)
    s.set_defaults(func=cmd_diff_colon)

    for name, func, help_text in (
        ("find-c", cmd_find_c, "minimal uniform shifts for ordinary powers"),
        ("check-bs", cmd_check_bs, "minimal shifts with integral closures of powers"),
        ("check-symb", cmd_check_symb, "minimal shifts with symbolic powers"),
        ("experiment", cmd_experiment, "run the experiment described by the config"),
    ):
        s = subs.add_parser(name, help=help_text)
        s.add_argument("config")
        s.add_argument("--jobs", type=int, default=1)
        s.add_argument("--seed", type=int, default=None)
        s.add_argument("--n-max", type=int, default=None, help="override the config value")
        s.add_argument("--c-max", type=int, default=None, help="override the config value")
        s.add_argument("--degree", type=int, default=None, help="override the config value")
        _add_common_output(s)
        s.set_defaults(func=func)

    s = subs.add_parser("check-ar-reverse", help="theorem-backed reverse containment checks")
    s.add_argument("config")
    s.add_argument("--n-max", type=int, default=None)
    _add_common_output(s)
    s.set_defaults(func=cmd_check_ar_reverse)

    s = subs.add_parser("sep-op", help="minimal-order operator separating two nested ideals")
    s.add_argument("ring")
    s.add_argument("--lower", required=True)
    s.add_argument("--upper", required=True)
    s.add_argument("--prime", required=True)
    s.add_argument("--psi", required=True, help="images of the upper generators in R/p")
    s.add_argument("--t-max", type=int, default=3)
    s.add_argument("--coeff-deg", type=int, default=2)
    s.add_argument("--seed", type=int, default=0)
    _add_common_output(s)
    s.set_defaults(func=cmd_sep_op)

    s = subs.add_parser("verify-filtration", help="structural checks for a prime filtration")
    s.add_argument("ring")
    s.add_argument("--chain", required=True, help="ideals separated by '|', from the defining ideal to (1)")
    s.add_argument("--primes", required=True, help="one prime per step, separated by '|'")
    _add_common_output(s)
    s.set_defaults(func=cmd_verify_filtration)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ComponentMismatchError, PsiInconsistencyError) as exc:
        sys.stderr.write(f"refuted: {exc}\n")
        return EXIT_REFUTED
    except (PolyParseError, ConfigError, NonMonomialIdealError, NonRationalPointError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
