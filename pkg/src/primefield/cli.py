"""Command-line front end: ``primefield <subcommand> [options]``.

Every subcommand prints a table as CSV, JSON or aligned text.  Exit codes:
0 on success, 2 on usage or domain errors, 1 when a computation cannot meet
its certified bound (the bound is printed) or the output cannot be written.
"""
import argparse
import io
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from primefield import abel, acceptance, asymptotics, casimir, fock, primes
from primefield.errors import CapacityError, DomainError, PrimefieldError, QuadratureError
from primefield.modes import ModeSet


@dataclass(frozen=True)
class Table:
    columns: tuple
    rows: tuple
    notes: tuple = ()


def _format_value(v, fmt):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if not math.isfinite(v):
            return "null" if fmt == "json" else str(v)
        return format(v, ".17g") if fmt != "pretty" else format(v, ".10g")
    if isinstance(v, Fraction):
        v = str(v)
    return json.dumps(str(v)) if fmt == "json" else str(v)


def emit(table, fmt="csv"):
    """Serialise a table; floats carry 17 significant digits in csv and json."""
    if table is None:
        raise ValueError("table must not be None")
    cols = list(table.columns)
    cells = [[_format_value(row[c], fmt) for c in cols] for row in table.rows]
    if fmt == "csv":
        import csv
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(cols)
        writer.writerows(cells)
        return buf.getvalue()
    if fmt == "json":
        objs = ["{" + ", ".join(f"{json.dumps(c)}: {v}" for c, v in zip(cols, r)) + "}"
                for r in cells]
        return "[" + ",\n ".join(objs) + "]\n"
    if fmt == "pretty":
        widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(cols)]
        lines = ["  ".join(c.rjust(w) for c, w in zip(cols, widths))]
        lines.append("  ".join("-" * w for w in widths))
        lines += ["  ".join(v.rjust(w) for v, w in zip(r, widths)) for r in cells]
        lines += list(table.notes)
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def _float_list(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _int_like(text):
    """Integers, also written as 1e7."""
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if not v.is_integer():
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    return int(v)


def _modes(text):
    try:
        return ModeSet.parse(text)
    except (ValueError, DomainError):
        raise argparse.ArgumentTypeError(f"unknown mode set {text!r}")


MODE_HELP = "all, even, odd, primes (2, 3, 5, ...) or primes1 (1, 3, 5, 7, ...)"


# subcommand handlers: each takes the parsed namespace and returns a Table

def cmd_sieve(ns):
    table = primes.sieve(ns.limit)
    if ns.list:
        rows = [{"index": i + 1, "prime": int(p)} for i, p in enumerate(table.primes)]
        return Table(("index", "prime"), tuple(rows))
    largest = int(table.primes[-1]) if len(table) else 0
    return Table(("limit", "count", "largest"), ({"limit": ns.limit, "count": len(table), "largest": largest},))


def cmd_goldbach(ns):
    cols = ("n", "modes", "ordered", "unordered", "diagonal")
    if ns.n_max is not None:
        ordered = primes.goldbach_table(ns.n_max, ns.modes)
        table = primes.sieve(ns.n_max)
        rows = []
        for n in range(4 if ns.modes is ModeSet.PRIMES_P else 2, ns.n_max + 1, 2):
            diag = int(ns.modes.contains(n // 2, table.is_prime))
            o = int(ordered[n])
            rows.append({"n": n, "modes": ns.modes.value, "ordered": o, "unordered": (o + diag) // 2,
                         "diagonal": diag})
        return Table(cols, tuple(rows))
    if ns.n is None:
        raise DomainError("give --n or --n-max")
    r = primes.goldbach_partitions(ns.n, ns.modes)
    return Table(cols, ({"n": r.n, "modes": r.modes.value, "ordered": r.ordered,
                         "unordered": r.unordered, "diagonal": r.diagonal},))


def cmd_polignac(ns):
    count = primes.polignac_count(ns.gap, ns.limit)
    return Table(("gap", "limit", "count"), ({"gap": ns.gap, "limit": ns.limit, "count": count},))


def cmd_prime_zeta(ns):
    rows = []
    for s in ns.s:
        d = primes.prime_zeta_direct(s, ns.limit)
        m = primes.prime_zeta_mobius(s, ns.k_max)
        mb = primes.mobius_tail_bound(s, ns.k_max)
        rows.append({"s": s, "direct": d.value, "direct_tail": d.tail_bound, "mobius": m,
                     "mobius_tail": mb, "difference": d.value - m})
    return Table(("s", "direct", "direct_tail", "mobius", "mobius_tail", "difference"), tuple(rows))


def cmd_mertens(ns):
    value = primes.mertens_constant(ns.k_max)
    return Table(("k_max", "B1"), ({"k_max": ns.k_max, "B1": value},))


def cmd_abel(ns):
    rows = []
    for a in ns.a:
        r = abel.mode_sum(ns.modes, a, ns.power, ns.tol)
        rows.append({"a": a, "modes": ns.modes.value, "power": ns.power, "value": r.value,
                     "cutoff": r.cutoff, "tail_bound": r.tail_bound, "terms": r.terms})
    return Table(("a", "modes", "power", "value", "cutoff", "tail_bound", "terms"), tuple(rows))


def cmd_asymptote(ns):
    series = asymptotics.f_series(ns.k_max) if ns.kind == "f" else asymptotics.g_series(ns.k_max)
    rows = []
    for a in ns.a:
        if ns.kind == "f":
            integral, err = asymptotics.f_integral_form(a, ns.tol), ns.tol
        else:
            integral, err = asymptotics.F_of_a(a, ns.tol, full_output=True)
        rows.append({"a": a, "kind": ns.kind, "k_max": ns.k_max, "log_series": series(a),
                     "integral_form": integral, "quadrature_error": err})
    return Table(("a", "kind", "k_max", "log_series", "integral_form", "quadrature_error"), tuple(rows))


def cmd_residuals(ns):
    rep = asymptotics.residual_report(ns.kind, ns.a, ns.k_max, ns.tol, ns.threads)
    rows = tuple(vars(r) for r in rep.rows)
    notes = (f"decay exponent (integral form): {rep.exponent:.4f}",
             f"decay exponent (log series, k_max={rep.k_max}): {rep.series_exponent:.4f}")
    return Table(("a", "exact", "approx", "residual", "normalized_residual"), rows, notes)


def cmd_casimir(ns):
    rows = []
    zeta = casimir.zeta_regularized_density(ns.modes)
    for eps in ns.eps:
        r = casimir.renormalized_energy(ns.modes, ns.R, eps)
        rows.append({"modes": ns.modes.value, "R": ns.R, "eps": eps, "raw": r.raw,
                     "counterterm": r.counterterm, "renormalized": r.renormalized,
                     "zeta_regularized": zeta.at(ns.R)})
    return Table(("modes", "R", "eps", "raw", "counterterm", "renormalized", "zeta_regularized"),
                 tuple(rows))


def cmd_prime_energy(ns):
    rep = casimir.prime_energy_report(ns.R, ns.eps, ns.modes, ns.tol)
    notes = (f"growth |diff(min eps)| / |diff(max eps)|: {rep.growth:.4g}",
             f"scaled residual decay exponent: {rep.exponent:.4f}")
    return Table(("eps", "raw", "counterterm", "difference", "scaled_residual"),
                 tuple(vars(r) for r in rep.rows), notes)


def cmd_twopoint(ns):
    if ns.samples:
        rng = np.random.default_rng(ns.seed)
        args = []
        for _ in range(ns.samples):
            du, dv = rng.uniform(-10, 10, size=2)
            args.append((du, dv, 10 ** rng.uniform(-3, 0), 10 ** rng.uniform(-0.5, 0.5),
                         int(rng.integers(1, 20000))))
    else:
        args = [(ns.du, ns.dv, ns.eps, ns.R, ns.n_max)]
    rows = []
    for a in args:
        s = casimir.two_point_scalar(*a)
        rows.append({"du": s.du, "dv": s.dv, "eps": s.eps, "R": s.R, "n_max": s.n_max,
                     "sum_re": s.mode_sum.real, "sum_im": s.mode_sum.imag,
                     "closed_re": s.closed_form.real, "closed_im": s.closed_form.imag,
                     "difference": abs(s.mode_sum - s.closed_form), "bound": s.bound})
    cols = ("du", "dv", "eps", "R", "n_max", "sum_re", "sum_im", "closed_re", "closed_im",
            "difference", "bound")
    return Table(cols, tuple(rows))


def cmd_commutator(ns):
    ms = ns.m if ns.m is not None else [ns.n]
    rows = []
    for m in ms:
        r = fock.central_term(ns.n, m, ns.modes, ns.cutoff, ns.convention, not ns.no_zero_modes)
        rows.append({"modes": r.modes.value, "n": r.n, "m": r.m, "raw": r.raw,
                     "raw_imag": r.raw_imag, "normalized": r.normalized, "cutoff": r.cutoff})
    return Table(("modes", "n", "m", "raw", "raw_imag", "normalized", "cutoff"), tuple(rows))


def cmd_states(ns):
    rows = [{"state": "+".join(map(str, s)), "normalization": fock.normalization_factor(s)}
            for s in fock.enumerate_prime_states(ns.n, ns.parts, ns.modes)]
    return Table(("state", "normalization"), tuple(rows))


def cmd_report(ns):
    rows = []
    for r in acceptance.run_all(ns.threads, ns.seed):
        rows.append({"criterion": r.number, "title": r.title, "status": "PASS" if r.passed else "FAIL",
                     "detail": r.detail, "seconds": r.seconds, "budget": r.budget})
    return Table(("criterion", "title", "status", "detail", "seconds", "budget"), tuple(rows))


def _common(p):
    g = p.add_argument_group("output")
    g.add_argument("--format", choices=("csv", "json", "pretty"), default="csv")
    g.add_argument("--output", "-o", help="write to this file instead of standard output")
    g.add_argument("--threads", type=int, default=1, help="worker cap for parallel rows")
    g.add_argument("--seed", type=int, default=0, help="seed for any random sampling")
    g.add_argument("--config", help="file of key=value lines supplying option defaults")


SUBCOMMANDS = {}


def _sub(subs, name, handler, description):
    p = subs.add_parser(name, help=description.splitlines()[0], description=description,
                        formatter_class=argparse.RawDescriptionHelpFormatter)
    _common(p)
    p.set_defaults(handler=handler)
    SUBCOMMANDS[name] = p
    return p


def build_parser():
    parser = argparse.ArgumentParser(prog="primefield",
                                     description="Prime-mode field theory numerics.")
    subs = parser.add_subparsers(dest="command", required=True, metavar="subcommand")

    p = _sub(subs, "sieve", cmd_sieve,
             "Count primes p <= limit with a segmented odd-only sieve.")
    p.add_argument("--limit", type=_int_like, required=True)
    p.add_argument("--list", action="store_true", help="one row per prime")

    p = _sub(subs, "goldbach", cmd_goldbach,
             "Partitions n = p + q with p, q in a prime family.\n"
             "ordered counts (p, q) and (q, p) separately; unordered counts {p, q} once.")
    p.add_argument("--n", type=_int_like)
    p.add_argument("--n-max", type=_int_like, help="all even n up to this bound (FFT convolution)")
    p.add_argument("--modes", type=_modes, default=ModeSet.PRIMES_P, help=MODE_HELP)

    p = _sub(subs, "polignac", cmd_polignac,
             "Prime pairs (p, p + gap) with p + gap <= limit.")
    p.add_argument("--gap", type=_int_like, required=True)
    p.add_argument("--limit", type=_int_like, required=True)

    p = _sub(subs, "prime-zeta", cmd_prime_zeta,
             "Prime zeta P(s) = sum_p p^-s two ways.\n"
             "direct: partial sum to limit, tail <= limit^(1-s)/(s-1).\n"
             "mobius: P(s) = sum_k mu(k)/k log zeta(ks), truncated at k_max.")
    p.add_argument("--s", type=_float_list, default=[2.0], help="comma-separated exponents > 1")
    p.add_argument("--limit", type=_int_like, default=10 ** 7)
    p.add_argument("--k-max", type=_int_like, default=64)

    p = _sub(subs, "mertens", cmd_mertens,
             "Mertens constant B1 = gamma + sum_k mu(k)/k log zeta(k), k >= 2.")
    p.add_argument("--k-max", type=_int_like, default=64)

    p = _sub(subs, "abel", cmd_abel,
             "Damped mode sum sum_{n in modes} n^power exp(-a n) with a certified tail.\n"
             "power -1 on primes gives f(a); power 1 gives g(a).")
    p.add_argument("--a", type=_float_list, required=True)
    p.add_argument("--modes", type=_modes, default=ModeSet.PRIMES_P, help=MODE_HELP)
    p.add_argument("--power", type=int, choices=(-1, 0, 1), default=-1)
    p.add_argument("--tol", type=float, default=abel.MIN_TOL)

    p = _sub(subs, "asymptote", cmd_asymptote,
             "Small-a forms of f and g with L = -log a.\n"
             "f: log L + B1 + sum_k c_k / L^k against the oscillatory integral form.\n"
             "g: a^-2 sum_k c_k / L^(k+1) against F(a).")
    p.add_argument("--kind", choices=("f", "g"), default="f")
    p.add_argument("--a", type=_float_list, required=True)
    p.add_argument("--k-max", type=_int_like, default=5)
    p.add_argument("--tol", type=float, default=1e-10)

    p = _sub(subs, "residuals", cmd_residuals,
             "exact - approx for f_abel vs the integral form or g_abel vs F(a),\n"
             "with fitted log-log decay exponents.")
    p.add_argument("--kind", choices=("f", "g"), default="f")
    p.add_argument("--a", type=_float_list, default=[1e-1, 1e-2, 1e-3, 1e-4, 1e-5])
    p.add_argument("--k-max", type=_int_like, default=5)
    p.add_argument("--tol", type=float, default=1e-10)

    p = _sub(subs, "casimir", cmd_casimir,
             "Damped vacuum energy (2 pi R)^-1 sum_n (n/R) exp(-eps n/R) minus c/(2 pi eps^2),\n"
             "c = 1 for all integers and 1/2 for even or odd; zeta_regularized is the\n"
             "regularised sum of n over the family divided by 2 pi R^2.")
    p.add_argument("--modes", type=_modes, default=ModeSet.ALL, help="all, even or odd")
    p.add_argument("--R", type=float, default=1.0)
    p.add_argument("--eps", type=_float_list, default=[1e-3])

    p = _sub(subs, "prime-energy", cmd_prime_energy,
             "Prime-mode energy -g(eps/R)/(4 pi R^2) against the counterterm -F(eps/R)/(4 pi R^2).")
    p.add_argument("--modes", type=_modes, default=ModeSet.PRIMES_P, help="primes or primes1")
    p.add_argument("--R", type=float, default=1.0)
    p.add_argument("--eps", type=_float_list, default=[1e-2, 1e-3, 1e-4])
    p.add_argument("--tol", type=float, default=1e-10)

    p = _sub(subs, "twopoint", cmd_twopoint,
             "Chiral two-point function (1/4 pi) sum_{n<=n_max} (q_u^n + q_v^n)/n,\n"
             "q = exp(-i(d - i eps)/R), against -(1/4 pi)[log(1 - q_u) + log(1 - q_v)].")
    p.add_argument("--du", type=float, default=0.5)
    p.add_argument("--dv", type=float, default=-0.5)
    p.add_argument("--eps", type=float, default=1e-2)
    p.add_argument("--R", type=float, default=1.0)
    p.add_argument("--n-max", type=_int_like, default=10000)
    p.add_argument("--samples", type=int, default=0, help="draw this many random points instead")

    p = _sub(subs, "commutator", cmd_commutator,
             "Exact vacuum expectation <0|[a_n, a_-m]|0> of composite modes\n"
             "a_n = sum over r + s = n of fermion bilinears restricted to the family.")
    p.add_argument("--n", type=_int_like, required=True)
    p.add_argument("--m", type=_int_like, nargs="+")
    p.add_argument("--modes", type=_modes, default=ModeSet.ALL, help=MODE_HELP)
    p.add_argument("--cutoff", type=_int_like)
    p.add_argument("--convention", choices=("hermitian", "literal"), default="hermitian")
    p.add_argument("--no-zero-modes", action="store_true")

    p = _sub(subs, "states", cmd_states,
             "Multisets of `parts` family members summing to n, with 1/sqrt(prod mult!).")
    p.add_argument("--n", type=_int_like, required=True)
    p.add_argument("--parts", type=_int_like, default=2)
    p.add_argument("--modes", type=_modes, default=ModeSet.PRIMES_P, help=MODE_HELP)

    _sub(subs, "report", cmd_report,
         "Run the twelve acceptance checks and print PASS/FAIL for each.")
    return parser


def _read_config(path):
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise DomainError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            values[key.replace("-", "_")] = value
    return values


def _apply_config(parser, argv, ns):
    sub = SUBCOMMANDS[ns.command]
    known = {a.dest for a in sub._actions}
    values = _read_config(ns.config)
    unknown = sorted(set(values) - known - {"config"})
    if unknown:
        raise DomainError(f"unknown config keys: {', '.join(unknown)}")
    values.pop("config", None)
    for a in sub._actions:
        if a.dest in values:
            a.required = False
            if a.nargs == "+":
                values[a.dest] = [a.type(v) if a.type else v for v in values[a.dest].split()]
            elif isinstance(a, argparse._StoreTrueAction):
                values[a.dest] = values[a.dest].lower() in ("1", "true", "yes")
    sub.set_defaults(**values)
    return parser.parse_args(argv)


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        if ns.config:
            ns = _apply_config(parser, argv, ns)
        if ns.threads < 1:
            raise DomainError(f"--threads must be >= 1, got {ns.threads}")
        table = ns.handler(ns)
        text = emit(table, ns.format)
    except (CapacityError, QuadratureError) as exc:
        print(f"primefield: {exc}", file=sys.stderr)
        return 1
    except (DomainError, ValueError) as exc:
        print(f"primefield {ns.command}: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"primefield: {exc}", file=sys.stderr)
        return 1
    except PrimefieldError as exc:
        print(f"primefield: {exc}", file=sys.stderr)
        return 1
    try:
        if ns.output:
            with open(ns.output, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"primefield: cannot write output: {exc}", file=sys.stderr)
        return 1
    if ns.format != "pretty":
        for note in table.notes:
            print(note, file=sys.stderr)
    if ns.command == "report" and any(r["status"] == "FAIL" for r in table.rows):
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
