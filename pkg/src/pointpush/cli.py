"""Command-line front end.

Subcommands cover the computations and the verification suite:

    bounds    one row of the efficiency bound chain
    table     the chain over a range of N, with convergence gaps
    matrix    generator and product matrices, optionally evaluated
    entropy   word-growth entropy estimate with spectral cross-check
    gsr       brute-force generalized spectral radius report
    classify  Pisot/Salem pattern classification of a spectral radius
    verify    the full identity suite; nonzero exit on any failure

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 product
budget exceeded.  JSON output shares a stable envelope across commands:
top-level keys command, params, result, tolerances, timing.  All numeric
text output carries 10 significant digits.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
import time

from . import bounds as bounds_mod
from . import covers, gsr, intrep, protocol, spectral, words
from .errors import BoundOrderingError, BudgetExceededError, PointPushError
from .exactmat import ExactMatrix

DEFAULT_ENTROPY_CAP = 10**6


def _fmt(x: float) -> str:
    return f"{x:.10g}"


def _positive_int(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _obstacle_count(text: str) -> int:
    value = int(text)
    if value < 2:
        raise argparse.ArgumentTypeError("need at least 2 obstacles")
    return value


def _emit(args, envelope: dict, text: str) -> None:
    if args.format == "json":
        payload = json.dumps(envelope, indent=2)
    else:
        payload = text
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(payload if payload.endswith("\n") else payload + "\n")
    else:
        print(payload)


def _envelope(command: str, params: dict, result, tolerances: dict, started: float) -> dict:
    return {
        "command": command,
        "params": params,
        "result": result,
        "tolerances": tolerances,
        "timing": {"seconds": time.perf_counter() - started},
    }


def cmd_bounds(args) -> int:
    started = time.perf_counter()
    b = bounds_mod.eff_bounds(args.n)
    text_lines = [
        f"N = {b.n_obstacles}",
        f"closed_lower   = {_fmt(b.closed_lower)}"
        + ("   (vacuous, clamped to 0)" if b.lower_clamped else ""),
        f"spectral_lower = {_fmt(b.spectral_lower)}   [= log rho(H)/N, entropy of the full cycle]",
        f"spectral_upper = {_fmt(b.spectral_upper)}   [= log rho(Hhat)/N]",
        f"closed_upper   = {_fmt(b.closed_upper)}",
        f"log 3          = {_fmt(bounds_mod.LOG3)}",
        f"rho(H) = {_fmt(b.rho_H)}, rho(Hhat) = {_fmt(b.rho_Hhat)} "
        f"(tolerance {b.spectral_tolerance:.2e})",
        "conjectured efficiency of the full cycle (not a proven maximum): "
        + _fmt(b.conjectured_efficiency),
    ]
    _emit(
        args,
        _envelope(
            "bounds",
            {"n": args.n},
            b.as_dict(),
            {"spectral": b.spectral_tolerance, "chain_slack": bounds_mod.CHAIN_SLACK},
            started,
        ),
        "\n".join(text_lines),
    )
    return 0


def cmd_table(args) -> int:
    started = time.perf_counter()
    if args.n_to < args.n_from:
        raise UsageError("--from must not exceed --to")
    rows = bounds_mod.eff_table(
        args.n_from, args.n_to, eps_unit=args.eps_unit, threads=args.threads
    )
    csv_text = bounds_mod.table_to_csv(rows)
    if args.format == "csv":
        if args.output:
            with open(args.output, "w") as fh:
                fh.write(csv_text)
        else:
            print(csv_text, end="")
        return 0
    _emit(
        args,
        _envelope(
            "table",
            {"from": args.n_from, "to": args.n_to, "eps_unit": args.eps_unit},
            bounds_mod.table_to_json_obj(rows),
            {"chain_slack": bounds_mod.CHAIN_SLACK, "eps_unit": args.eps_unit},
            started,
        ),
        csv_text.replace(",", "\t"),
    )
    return 0


def _matrix_for(args):
    kind = args.kind
    if args.eval is not None and kind not in ("phi", "phiprime"):
        raise UsageError("--eval only applies to --kind phi/phiprime")
    if kind == "H":
        return intrep.H_matrix(args.n)
    if kind == "Hhat":
        return intrep.Hhat_matrix(args.n)
    if args.k is None:
        raise UsageError(f"--kind {kind} requires --k")
    if args.k > args.n:
        raise UsageError(f"--k must lie in 1..{args.n}")
    if kind == "E":
        return intrep.gen_E(args.k, args.n)
    if kind == "A":
        return intrep.gen_A(args.k, args.n)
    cover = "full" if kind == "phi" else "prime"
    return covers.phi(protocol.ProtocolWord(args.n, (args.k,)), cover)


def cmd_matrix(args) -> int:
    started = time.perf_counter()
    m = _matrix_for(args)
    if isinstance(m, covers.LaurentMatrix):
        if args.eval is not None:
            if args.eval in (1.0, -1.0):
                m = m.evaluate_exact(int(args.eval))
            else:
                arr = m.evaluate(args.eval)
                result = [[[z.real, z.imag] for z in row] for row in arr]
                text = "\n".join(
                    "  ".join(f"{z.real:.10g}{z.imag:+.10g}i" for z in row) for row in arr
                )
                _emit(
                    args,
                    _envelope("matrix", vars_params(args), result, {}, started),
                    text,
                )
                return 0
        else:
            _emit(
                args,
                _envelope(
                    "matrix", vars_params(args), json.loads(m.to_json()), {}, started
                ),
                m.to_json(),
            )
            return 0
    if args.format == "csv":
        payload = m.to_csv()
        if args.output:
            with open(args.output, "w") as fh:
                fh.write(payload)
        else:
            print(payload, end="")
        return 0
    text = "\n".join("  ".join(str(x) for x in row) for row in m.rows)
    _emit(
        args,
        _envelope("matrix", vars_params(args), m.to_lists(), {}, started),
        text,
    )
    return 0


def vars_params(args) -> dict:
    ignore = {"func", "format", "output"}
    return {k: v for k, v in vars(args).items() if k not in ignore}


def cmd_entropy(args) -> int:
    started = time.perf_counter()
    try:
        word = protocol.parse_protocol(args.protocol, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    auto = protocol.protocol_automorphism(word)
    psi_rho = spectral.spectral_radius(intrep.psi(word)).radius

    per_seed = []
    best = None
    for seed in range(1, args.n + 2):
        report = words.growth_estimate(auto, seed, args.iters, args.length_cap)
        per_seed.append(report)
        if best is None or report.growth_rate > best.growth_rate:
            best = report
    assert best is not None
    growth = best.growth_rate
    entropy = math.log(growth) if growth > 0 else 0.0
    homology_entropy = math.log(psi_rho) if psi_rho > 0 else 0.0
    gap = abs(growth - psi_rho) / psi_rho if psi_rho > 0 else float("nan")
    eff = (
        protocol.efficiency_estimate(word, entropy)
        if word.word_length > 0
        else None
    )
    result = {
        "protocol": str(word),
        "word_length": word.word_length,
        "growth_rate": growth,
        "entropy": entropy,
        "efficiency": eff,
        "rho_psi": psi_rho,
        "homology_entropy": homology_entropy,
        "relative_gap": gap,
        "best_seed": best.seed_index,
        "seeds": [r.as_dict() for r in per_seed],
    }
    text_lines = [
        f"protocol {str(word)!r}  (L = {word.word_length})",
        f"growth rate exp(h) ~= {_fmt(growth)}  (seed {best.seed_index}, "
        f"{len(best.lengths) - 1} iterations{', truncated' if best.truncated else ''})",
        f"entropy h ~= {_fmt(entropy)}",
        f"efficiency h/L ~= {_fmt(eff) if eff is not None else 'n/a (empty word)'}",
        f"spectral cross-check: rho(psi) = {_fmt(psi_rho)}, "
        f"log rho(psi) = {_fmt(homology_entropy)} (homology lower bound), "
        f"relative gap {gap:.2e}",
        "ratios: " + " ".join(_fmt(r) for r in best.ratios),
    ]
    _emit(
        args,
        _envelope(
            "entropy",
            vars_params(args),
            result,
            {"spectral": spectral.DEFAULT_TOLERANCE},
            started,
        ),
        "\n".join(text_lines),
    )
    return 0


def cmd_gsr(args) -> int:
    started = time.perf_counter()
    family = [intrep.gen_A(k, args.n) for k in range(1, args.n + 1)]
    k = args.k or args.n
    estimate = gsr.gsr_estimate(family, k, budget=args.budget)
    result = estimate.as_dict()
    text_lines = [
        f"incidence family A(1)..A({args.n}), rho_k for k = 1..{k}:",
    ]
    for r in estimate.rho_ks:
        text_lines.append(
            f"  k={r.k}: rho_k = {_fmt(r.value)}  achieved by {r.achieving} "
            f"({r.products} products, {r.elapsed:.3f}s)"
        )
    text_lines.append(
        f"sup = {_fmt(estimate.sup_value)} at k={estimate.sup_k}; "
        f"norm ceiling {_fmt(estimate.norm_ceiling)} (log ceiling {_fmt(math.log(estimate.norm_ceiling))})"
    )
    if k >= args.n:
        realized = gsr.verify_gsr_realized(args.n, budget=args.budget)
        result["realized"] = realized.as_dict()
        text_lines.append(
            f"full-cycle realization: max rho_N = {_fmt(realized.max_value)} vs "
            f"rho(Hhat)^(1/N) = {_fmt(realized.target)} "
            f"(|diff| = {realized.max_abs_diff:.2e}; cyclic shifts achieve: "
            f"{realized.cyclic_shifts_achieve})"
        )
    _emit(
        args,
        _envelope("gsr", vars_params(args), result, {"rho_match": 1e-8}, started),
        "\n".join(text_lines),
    )
    return 0


def cmd_classify(args) -> int:
    started = time.perf_counter()
    m = intrep.H_matrix(args.n) if args.kind == "H" else intrep.Hhat_matrix(args.n)
    radius_report = spectral.spectral_radius(m)
    report = spectral.classify_number(
        spectral.char_poly(m), radius_report.radius, args.eps_unit
    )
    merged = radius_report.as_dict()
    merged["classification"] = report.kind.value
    merged.update(report.as_dict())
    text_lines = [
        f"{args.kind}({args.n}): rho = {_fmt(radius_report.radius)} "
        f"(tolerance {radius_report.tolerance:.2e})",
        f"pattern classification: {report.kind.value} (eps_unit = {args.eps_unit:g})",
        "other root moduli: " + " ".join(_fmt(x) for x in sorted(report.other_moduli)),
    ]
    if report.marginal_roots:
        text_lines.append(
            f"marginal roots (within 10*eps_unit of the circle): {report.marginal_roots}"
        )
    _emit(
        args,
        _envelope(
            "classify",
            vars_params(args),
            merged,
            {"eps_unit": args.eps_unit, "spectral": radius_report.tolerance},
            started,
        ),
        "\n".join(text_lines),
    )
    return 0


def _verify_checks(n_max: int, seed: int, trials: int):
    """Yield (name, ok, detail) for the whole identity suite."""
    rng = random.Random(seed)

    trace_bad = [
        n for n in range(2, n_max + 1)
        if intrep.H_matrix(n).trace() != -(3**n) + 3 * n + 1
    ]
    yield ("trace(psi(full cycle)) = -3^N+3N+1", not trace_bad, f"N=2..{n_max}{trace_bad or ''}")

    hh_bad = []
    for n in range(2, n_max + 1):
        hh = intrep.Hhat_matrix(n)
        if hh.trace() != 3**n - n - 1:
            hh_bad.append(n)
        if intrep.column_sums(hh) != tuple(3**n - 2 * 3 ** (j - 1) for j in range(1, n + 1)):
            hh_bad.append(n)
    yield ("Hhat trace and column sums", not hh_bad, f"N=2..{n_max}{hh_bad or ''}")

    inter_bad = None
    for n in range(2, min(n_max, 12) + 1):
        for k in range(1, n):
            report = intrep.verify_intermediate(k, n)
            if not report.ok:
                inter_bad = report
                break
        if inter_bad:
            break
    yield (
        "intermediate product closed forms",
        inter_bad is None,
        "all cells"
        if inter_bad is None
        else f"first mismatch {inter_bad.as_dict()['first_mismatch']} at k={inter_bad.k}, N={inter_bad.n}",
    )

    step_ok = True
    for _ in range(trials // 10 or 1):
        n = rng.randint(2, min(n_max, 8))
        mat = ExactMatrix([[rng.randint(0, 9) for _ in range(n)] for _ in range(n)])
        for k in range(1, n + 1):
            step_ok = step_ok and intrep.column_sum_step(mat, k)
    yield ("column-sum step rule", step_ok, "random matrices, all k")

    cons_bad = None
    for n in range(2, min(n_max, 6) + 1):
        for _ in range(10):
            word = protocol.random_protocol(n, rng.randint(0, 12), rng)
            report = intrep.psi_phi_consistency(word)
            if not report.ok:
                cons_bad = (n, str(word), report)
                break
        if cons_bad:
            break
    yield (
        "psi agrees with cover matrix at t=-1",
        cons_bad is None,
        "random words" if cons_bad is None else repr(cons_bad),
    )

    inc_ok = True
    for n in range(2, min(n_max, 12) + 1):
        for j in range(1, n + 1):
            for sign in (1, -1):
                inc = words.incidence_matrix(protocol.alpha_automorphism(j, sign, n))
                if inc != intrep.gen_A_bar(j, n):
                    inc_ok = False
                if inc.rows[n] != tuple(0 if c != n else 1 for c in range(n + 1)):
                    inc_ok = False
            if intrep.gen_A(j, n).one_norm() != 3:
                inc_ok = False
    yield ("incidence matrices and one-norm 3", inc_ok, f"j <= N <= {min(n_max, 12)}")

    inverse_ok = True
    for n in range(2, min(n_max, 10) + 1):
        for j in range(1, n + 1):
            comp = words.compose(
                protocol.alpha_automorphism(j, 1, n), protocol.alpha_automorphism(j, -1, n)
            )
            if not comp.is_identity():
                inverse_ok = False
    yield ("generator inverses compose to identity", inverse_ok, f"N <= {min(n_max, 10)}")

    rel_fail = gsr.relation_lemma_failures(trials, rng)
    yield (
        "sorted column-sum relation lemma (a)-(e)",
        not any(rel_fail.values()),
        f"{trials} trials each: {rel_fail}",
    )
    ord_fail = gsr.order_lemma_failures(trials, rng)
    yield (
        "greedy strategy dominance lemma (a)-(d)",
        not any(ord_fail.values()),
        f"{trials} trials each: {ord_fail}",
    )

    chain_ok = True
    for n in range(2, n_max + 1):
        try:
            bounds_mod.eff_bounds(n)
        except BoundOrderingError:
            chain_ok = False
    yield ("bound chain ordered", chain_ok, f"N=2..{n_max}")


def cmd_verify(args) -> int:
    started = time.perf_counter()
    print(f"verification suite: n_max={args.n_max}, seed={args.seed}, trials={args.trials}")
    failures = 0
    results = []
    for name, ok, detail in _verify_checks(args.n_max, args.seed, args.trials):
        results.append({"name": name, "ok": ok, "detail": str(detail)})
        print(f"{'PASS' if ok else 'FAIL'}  {name}  [{detail}]")
        if not ok:
            failures += 1
    print(
        f"{len(results) - failures}/{len(results)} checks passed "
        f"in {time.perf_counter() - started:.2f}s"
    )
    if args.format == "json" or args.output:
        _emit(
            args,
            _envelope(
                "verify",
                vars_params(args),
                {"checks": results, "failures": failures},
                {"chain_slack": bounds_mod.CHAIN_SLACK},
                started,
            ),
            "",
        )
    return 1 if failures else 0


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pointpush",
        description="Entropy efficiency of point-push stirring protocols.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")
        p.add_argument("--output", help="write to this path instead of stdout")

    p = sub.add_parser("bounds", help="efficiency bound chain for one N")
    p.add_argument("--n", type=_obstacle_count, required=True)
    add_common(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("table", help="bound-chain table over a range of N")
    p.add_argument("--from", dest="n_from", type=_obstacle_count, required=True)
    p.add_argument("--to", dest="n_to", type=_obstacle_count, required=True)
    p.add_argument("--eps-unit", type=float, default=spectral.DEFAULT_EPS_UNIT)
    p.add_argument("--threads", type=_positive_int, default=1,
                   help="cap on worker threads for row computation")
    add_common(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("matrix", help="print a representation matrix")
    p.add_argument("--kind", choices=("H", "Hhat", "E", "A", "phi", "phiprime"),
                   required=True)
    p.add_argument("--n", type=_obstacle_count, required=True)
    p.add_argument("--k", type=_positive_int)
    p.add_argument("--eval", type=float, default=None,
                   help="evaluate a Laurent matrix at t (exact at +-1)")
    add_common(p)
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("entropy", help="word-growth entropy of a protocol")
    p.add_argument("--protocol", required=True, help='e.g. "a1 a2^-1"')
    p.add_argument("--n", type=_obstacle_count, required=True)
    p.add_argument("--iters", type=_positive_int, default=8)
    p.add_argument("--length-cap", type=_positive_int, default=DEFAULT_ENTROPY_CAP)
    add_common(p)
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("gsr", help="brute-force generalized spectral radius")
    p.add_argument("--n", type=_obstacle_count, required=True)
    p.add_argument("--k", type=_positive_int, default=None,
                   help="max product length (default N)")
    p.add_argument("--budget", type=_positive_int, default=None,
                   help="product enumeration cap (default POINTPUSH_BUDGET or 10^6)")
    add_common(p)
    p.set_defaults(func=cmd_gsr)

    p = sub.add_parser("classify", help="Pisot/Salem pattern of rho(H) or rho(Hhat)")
    p.add_argument("--n", type=_obstacle_count, required=True)
    p.add_argument("--kind", choices=("H", "Hhat"), required=True)
    p.add_argument("--eps-unit", type=float, default=spectral.DEFAULT_EPS_UNIT)
    add_common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="run the identity verification suite")
    p.add_argument("--n-max", dest="n_max", type=_obstacle_count, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=_positive_int, default=200)
    add_common(p)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))  # exits 2
        return 2  # unreachable; keeps type checkers calm
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except BoundOrderingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (PointPushError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
