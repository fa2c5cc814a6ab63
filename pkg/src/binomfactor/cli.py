"""Command-line front-end.

Subcommands mirror the library: `decompose`, `identity`, `bounds`,
`logk`.  Output is deterministic: identical invocations produce
byte-identical JSON.  Exit codes: 0 ok, 2 domain error, 3 verification
failure, 4 spec rejection (non-alternating combination).

The sieve budget comes from --sieve-limit, the BINOMFACTOR_SIEVE_LIMIT
environment variable, or the 10^7 default; a command whose arguments
imply a larger table than the budget is refused up front.  Tables are
built only as large as the requested computation needs.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass

from . import __version__
from .chebyshev import (CombinationSpec, CombinationTerm,
                        coefficient_sequence, derive_bounds,
                        psi_variant_bounds)
from .decomposition import canonical_integer_form, decompose, equivalence_check
from .errors import DomainError, NonAlternatingError, OutOfRangeError
from .identities import (FactorialRatioSpec, alternating_pi_sum,
                         bertrand_check, factorial_ratio_report,
                         omega_identity_report)
from .logseries import partial_sum
from .primes import DEFAULT_LIMIT, MAX_LIMIT, build_table, integer_root

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_VERIFY = 3
EXIT_REJECTED = 4


@dataclass
class RunConfig:
    sieve_limit: int
    output_format: str
    out_path: str | None
    seed: int

    def require(self, needed: int) -> int:
        """Validate that `needed` fits the configured budget; returns the
        table size to build (never larger than necessary)."""
        if needed > self.sieve_limit:
            raise DomainError(
                f"computation needs sieve limit {needed}, but the configured "
                f"budget is {self.sieve_limit} (raise --sieve-limit or "
                f"BINOMFACTOR_SIEVE_LIMIT)")
        return max(needed, 2)


class _VerificationFailure(Exception):
    pass


def _env_sieve_limit() -> int:
    raw = os.environ.get("BINOMFACTOR_SIEVE_LIMIT")
    if raw is None:
        return DEFAULT_LIMIT
    try:
        return int(raw)
    except ValueError as exc:
        raise DomainError(f"BINOMFACTOR_SIEVE_LIMIT={raw!r} is not an integer") from exc


def _parse_grid(raw: str) -> list[int]:
    try:
        return [int(tok) for tok in raw.split(",") if tok.strip()]
    except ValueError as exc:
        raise DomainError(f"bad grid {raw!r}; expected comma-separated integers") from exc


def _parse_combination(raw: str) -> CombinationSpec:
    """Parse "+1/2:1/6,+1/3:1/12,-1/10:1/60" into a CombinationSpec.

    Each token is sign, then 1/a, then ":", then 1/b.
    """
    terms = []
    for tok in raw.split(","):
        tok = tok.strip()
        if not tok:
            continue
        sign = 1
        if tok[0] in "+-":
            sign = 1 if tok[0] == "+" else -1
            tok = tok[1:]
        try:
            left, right = tok.split(":")
            one_a, a = left.split("/")
            one_b, b = right.split("/")
            if one_a.strip() != "1" or one_b.strip() != "1":
                raise ValueError
            terms.append(CombinationTerm(sign, int(a), int(b)))
        except ValueError as exc:
            raise DomainError(
                f"bad combination term {tok!r}; expected like +1/2:1/6") from exc
    return CombinationSpec(tuple(terms))


def _parse_parts(raw: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(tok) for tok in raw.split(",") if tok.strip())
    except ValueError as exc:
        raise DomainError(f"bad multiplier list {raw!r}") from exc
    if not vals:
        raise DomainError(f"empty multiplier list {raw!r}")
    return vals


def _emit(cfg: RunConfig, payload: dict, pretty_lines: list[str],
          csv_rows: list[dict] | None = None) -> None:
    if cfg.output_format == "json":
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    elif cfg.output_format == "csv":
        rows = csv_rows if csv_rows is not None else [payload]
        buf = io.StringIO()
        fields = sorted({key for row in rows for key in row})
        writer = csv.DictWriter(buf, fieldnames=fields)
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _csv_cell(row.get(k)) for k in fields})
        text = buf.getvalue()
    else:
        text = "\n".join(pretty_lines) + "\n"
    if cfg.out_path:
        with open(cfg.out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_cell(value):
    if isinstance(value, (dict, list, tuple)):
        return json.dumps(value, sort_keys=True)
    return value


# -- subcommands --------------------------------------------------------


def _cmd_decompose(cfg: RunConfig, args) -> int:
    dec = decompose(args.n, args.k)
    payload = dec.to_json_dict()
    canonical = canonical_integer_form(dec)
    lines = [f"prime divisors of C({args.n}, {args.k}) lie in:"]
    csv_rows = []
    for i in sorted(dec.levels):
        parts = []
        for iv, ci in zip(dec.levels[i], canonical[i]):
            if args.exact:
                parts.append(f"({iv.lower}, {iv.upper}]")
            elif i == 1:
                if not ci.empty:
                    parts.append(f"({ci.lower}, {ci.upper}]")
            else:
                # at level i the members are primes whose i-th power lands
                # in the interval; show the equivalent prime range
                rlo = integer_root(ci.lower, i)
                rhi = integer_root(ci.upper, i)
                if rhi > rlo and rhi >= 2:
                    parts.append(f"({rlo}, {rhi}]")
            csv_rows.append({
                "level": i, "branch": iv.branch, "j": iv.j,
                "f": iv.f if iv.f is not None else "",
                "lower_num": iv.lower.numerator, "lower_den": iv.lower.denominator,
                "upper_num": iv.upper.numerator, "upper_den": iv.upper.denominator,
            })
        if parts:
            label = f"  level {i}: " if i == 1 else f"  level {i} (p^{i} witnesses): p in "
            lines.append(label + " u ".join(parts))
    if not dec.levels or all(not v for v in dec.levels.values()):
        lines.append("  (empty: the coefficient is 1)")
    _emit(cfg, payload, lines, csv_rows)
    if args.verify:
        table = build_table(cfg.require(args.n))
        bad = equivalence_check(args.n, args.k, table)
        if bad is not None:
            print(f"verification FAILED: prime {bad} disagrees with the oracle",
                  file=sys.stderr)
            raise _VerificationFailure
        print(f"verified against the sieve oracle: all primes <= {args.n} agree",
              file=sys.stderr)
    return EXIT_OK


def _cmd_identity(cfg: RunConfig, args) -> int:
    kind = args.kind
    if kind == "thm1":
        if args.n is None or args.m is None:
            raise DomainError("identity thm1 needs --n and --m")
        ks = _parse_grid(args.grid) if args.grid else [args.k]
        if any(k is None or k < 1 for k in ks):
            raise DomainError("identity thm1 needs --k or --grid")
        table = build_table(cfg.require(args.n * max(ks)))
        reports = [omega_identity_report(args.n, args.m, k, table) for k in ks]
        rows = [r.to_row() for r in reports]
        lines = [
            (f"omega C({r.params['n']}k, {r.params['m']}k) at k={r.params['k']}: "
             f"lhs={r.lhs} rhs={r.rhs} residual={r.residual} "
             f"[{r.normalization}={r.normalized_residual:.4f}]")
            for r in reports
        ]
        _emit(cfg, {"reports": rows}, lines, rows)
    elif kind == "thm3":
        if not args.num_parts or not args.den_parts:
            raise DomainError("identity thm3 needs --num-parts and --den-parts")
        spec = FactorialRatioSpec(_parse_parts(args.num_parts),
                                  _parse_parts(args.den_parts))
        ks = _parse_grid(args.grid) if args.grid else [args.k]
        if any(k is None or k < 1 for k in ks):
            raise DomainError("identity thm3 needs --k or --grid")
        table = build_table(cfg.require(spec.max_multiplier * max(ks)))
        reports = [factorial_ratio_report(spec, k, table) for k in ks]
        rows = [r.to_row() for r in reports]
        lines = [
            (f"log factorial ratio at k={r.params['k']}: lhs={r.lhs:.9f} "
             f"psi-series={r.rhs:.9f} residual={r.residual:.3e} "
             f"growth-residual={r.details['asymptotic_residual']:.4f}")
            for r in reports
        ]
        _emit(cfg, {"reports": rows}, lines, rows)
    elif kind == "altpi":
        if args.x is None:
            raise DomainError("identity altpi needs --x")
        x = int(args.x)
        table = build_table(cfg.require(x))
        s, ratio = alternating_pi_sum(x, table)
        payload = {"x": x, "sum": s, "ratio": ratio, "log2": math.log(2),
                   "ratio_minus_log2": ratio - math.log(2)}
        _emit(cfg, payload,
              [f"sum_i (-1)^(i+1) pi({x}/i) = {s}",
               f"ratio to x/log x = {ratio:.6f} (log 2 = {math.log(2):.6f})"],
              [payload])
    elif kind == "bertrand":
        limit = args.limit
        if limit is None or limit < 1:
            raise DomainError("identity bertrand needs --limit >= 1")
        table = build_table(cfg.require(2 * limit))
        bad = bertrand_check(limit, table)
        payload = {"limit": limit, "counterexample": bad}
        _emit(cfg, payload,
              [f"pi(2n) > pi(n) for all n <= {limit}: "
               + ("verified" if bad is None else f"FAILS at n={bad}")],
              [payload])
        if bad is not None:
            raise _VerificationFailure
    else:  # pragma: no cover - argparse restricts choices
        raise DomainError(f"unknown identity kind {kind!r}")
    return EXIT_OK


def _cmd_logk(cfg: RunConfig, args) -> int:
    state = partial_sum(args.k, args.terms)
    payload = {
        "k": state.k, "terms": state.terms_taken,
        "partial_sum": state.partial_sum, "log_k": math.log(state.k),
        "error": state.error, "tail_bound": state.tail_bound,
    }
    _emit(cfg, payload,
          [f"sum of {state.terms_taken} blocks for log {state.k}: "
           f"{state.partial_sum:.9f} (log {state.k} = {math.log(state.k):.9f}, "
           f"error {state.error:.3e}, tail bound {state.tail_bound:.3e})"],
          [payload])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--sieve-limit", type=int, default=None,
                        help="sieve budget (default: BINOMFACTOR_SIEVE_LIMIT or 10^7)")
    common.add_argument("--format", choices=("pretty", "json", "csv"),
                        default="pretty", help="output format (json is the contract)")
    common.add_argument("--out", default=None, metavar="FILE",
                        help="write output to FILE instead of stdout")
    common.add_argument("--seed", type=int, default=0,
                        help="seed recorded for randomized sweeps")

    parser = argparse.ArgumentParser(
        prog="binomfactor",
        description="Exact prime-divisor intervals of binomial coefficients, "
                    "prime-count identities, and elementary pi/psi bounds.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_dec = sub.add_parser("decompose", parents=[common],
                           help="interval decomposition of {p : p | C(n, k)}")
    p_dec.add_argument("n", type=int)
    p_dec.add_argument("k", type=int)
    p_dec.add_argument("--exact", action="store_true",
                       help="print exact rational endpoints instead of floors")
    p_dec.add_argument("--verify", action="store_true",
                       help="cross-check every prime against the sieve oracle")

    p_id = sub.add_parser("identity", parents=[common],
                          help="evaluate an identity and report residuals")
    p_id.add_argument("kind", choices=("thm1", "thm3", "altpi", "bertrand"))
    p_id.add_argument("--n", type=int, default=None)
    p_id.add_argument("--m", type=int, default=None)
    p_id.add_argument("--k", type=int, default=None)
    p_id.add_argument("--grid", default=None, metavar="K1,K2,...",
                      help="evaluate at several k")
    p_id.add_argument("--num-parts", default=None, metavar="A,B,...",
                      help="numerator multipliers (thm3)")
    p_id.add_argument("--den-parts", default=None, metavar="A,B,...",
                      help="denominator multipliers (thm3)")
    p_id.add_argument("--x", type=float, default=None, help="argument (altpi)")
    p_id.add_argument("--limit", type=int, default=None, help="sweep bound (bertrand)")

    p_b = sub.add_parser("bounds", parents=[common],
                         help="pi/psi bounds ledger from a signed combination")
    p_b.add_argument("spec", nargs="?", default="+1/2:1/6,+1/3:1/12,-1/10:1/60",
                     help="terms as sign 1/a:1/b, comma separated")
    p_b.add_argument("--psi", action="store_true",
                     help="use the psi variant (multipliers 30,1 over 15,10,6)")
    p_b.add_argument("--iterations", type=int, default=3)
    p_b.add_argument("--initial-upper", type=float, default=2.0)
    p_b.add_argument("--anchor", type=int, default=None,
                     help="expected first negative coefficient index")
    p_b.add_argument("--k-grid", default=None, metavar="K1,K2,...",
                     help="also check the numeric bracket at these k (psi variant)")

    p_lk = sub.add_parser("logk", parents=[common],
                          help="partial sums of the grouped series for log k")
    p_lk.add_argument("k", type=int)
    p_lk.add_argument("--terms", type=int, default=1_000_000)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        sieve_limit = args.sieve_limit if args.sieve_limit is not None else _env_sieve_limit()
        if sieve_limit < 2 or sieve_limit > MAX_LIMIT:
            raise DomainError(f"sieve limit {sieve_limit} outside [2, {MAX_LIMIT}]")
        cfg = RunConfig(sieve_limit, args.format, args.out, args.seed)
        if args.command == "decompose":
            return _cmd_decompose(cfg, args)
        if args.command == "identity":
            return _cmd_identity(cfg, args)
        if args.command == "bounds":
            return _run_bounds(cfg, args)
        if args.command == "logk":
            return _cmd_logk(cfg, args)
        raise DomainError(f"unknown command {args.command!r}")  # pragma: no cover
    except NonAlternatingError as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return EXIT_REJECTED
    except (DomainError, OutOfRangeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except _VerificationFailure:
        return EXIT_VERIFY


def _run_bounds(cfg: RunConfig, args) -> int:
    if args.psi:
        k_grid = _parse_grid(args.k_grid) if args.k_grid else []
        table = build_table(cfg.require(30 * max(k_grid)) if k_grid else 2)
        report = psi_variant_bounds(k_grid, table)
        ledger = report.ledger
        payload = _ledger_payload(ledger, report.sequence)
        payload["bracket_rows"] = [
            {"k": r.k, "ratio_log": r.ratio_log, "lower": r.lower,
             "upper": r.upper, "holds": r.holds} for r in report.rows]
        lines = _ledger_lines("psi(x)/x", ledger, report.sequence)
        lines += [f"  bracket at k={r.k}: {r.lower:.1f} <= {r.ratio_log:.1f} "
                  f"<= {r.upper:.1f} ({'ok' if r.holds else 'VIOLATED'})"
                  for r in report.rows]
        _emit(cfg, payload, lines)
        if any(not r.holds for r in report.rows):
            raise _VerificationFailure
        return EXIT_OK
    spec = _parse_combination(args.spec)
    ledger = derive_bounds(spec, anchor_divisor=args.anchor,
                           initial_upper=args.initial_upper,
                           iterations=args.iterations)
    seq = coefficient_sequence(spec)
    payload = _ledger_payload(ledger, seq)
    _emit(cfg, payload, _ledger_lines("pi(x)/(x/log x)", ledger, seq))
    return EXIT_OK


def _ledger_payload(ledger, seq) -> dict:
    return {
        "combination_constant": ledger.combination_constant,
        "lower_bound": ledger.lower_bound,
        "upper_iterations": list(ledger.upper_iterations),
        "lead_index": ledger.lead_index,
        "anchor_index": ledger.anchor_index,
        "fixed_point": ledger.fixed_point,
        "initial_upper": ledger.initial_upper,
        "sequence": {
            "period": seq.period,
            "plus": sorted(seq.residues_with_sign(+1)),
            "minus": sorted(seq.residues_with_sign(-1)),
        },
    }


def _ledger_lines(what: str, ledger, seq) -> list[str]:
    iters = " -> ".join(f"{u:.4f}" for u in ledger.upper_iterations)
    return [
        f"combination constant: {ledger.combination_constant:.6f}",
        f"coefficient sequence: period {seq.period}, "
        f"+1 at {sorted(seq.residues_with_sign(+1))}, "
        f"-1 at {sorted(seq.residues_with_sign(-1))}",
        f"lower bound for {what}: {ledger.lower_bound:.6f}",
        f"upper iterations from {ledger.initial_upper}: {iters}",
        f"fixed point: {ledger.fixed_point:.6f}",
    ]


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
