"""Command-line front end: ``hilb <subcommand> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .exact import series_expand
from .fock import FockVector, basis_vector, divisor_class, identity_class
from .partitions import Partition, enumerate_partitions

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
SUITES = ("operators", "jack", "invariants", "fourier", "jj", "qde", "monodromy")


class UsageError(Exception):
    def __init__(self, flag, msg):
        super().__init__(f"{flag}: {msg}")
        self.flag = flag


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError("argv", message)


# ---------------------------------------------------------------------------
# argument helpers
# ---------------------------------------------------------------------------

def _rational(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _partition(text):
    try:
        return Partition.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _need(args, name, low=None):
    val = getattr(args, name)
    flag = "--" + name.replace("_", "-")
    if val is None:
        raise UsageError(flag, "is required")
    if low is not None and val < low:
        raise UsageError(flag, f"must be >= {low}")
    return val


def _insertions(text, n):
    if not text:
        raise UsageError("--insertions", "is required")
    out = []
    for tok in text.split(";"):
        tok = tok.strip()
        if tok == "D":
            out.append(divisor_class(n))
        elif tok == "1":
            out.append(identity_class(n))
        else:
            try:
                mu = Partition.parse(tok)
            except ValueError as exc:
                raise UsageError("--insertions", str(exc))
            if mu.size != n:
                raise UsageError("--insertions", f"{tok} is not a partition of {n}")
            out.append(basis_vector(mu))
    return out


def _vector_dict(v: FockVector):
    return {str(mu): str(v[mu]) for mu in enumerate_partitions(v.n) if not v[mu].is_zero()}


def _emit(payload, fmt, text=None):
    if fmt == "json":
        print(json.dumps(payload, indent=1))
    else:
        print(text if text is not None else json.dumps(payload, indent=1))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_matrix(args):
    from .operators import build_M, build_MD, limiting_operator
    n = _need(args, "n", 0)
    op = {"MD": build_MD, "M": build_M, "limit": limiting_operator}[args.operator](n)
    if args.q0:
        op = op.at_q0()
    if args.format == "csv":
        sys.stdout.write(op.to_csv())
    elif args.format == "json":
        print(op.to_json(expand=args.expand))
    else:
        for mu, row in zip(op.basis, op.entries):
            print(str(mu), " | ".join(str(a) for a in row))
    return EXIT_OK


def cmd_product(args):
    from .invariants import quantum_multiply
    n = _need(args, "n", 1)
    a, b = _insertions(args.a, n)[0], _insertions(args.b, n)[0]
    prod = quantum_multiply(a, b, args.t1, args.t2)
    payload = {"n": n, "a": args.a, "b": args.b, "product": _vector_dict(prod)}
    if args.expand is not None:
        payload["series"] = {k: [str(c) for c in series_expand(prod[Partition.parse(k)], args.expand)]
                             for k in payload["product"]}
    _emit(payload, args.format)
    return EXIT_OK


def cmd_invariant(args):
    from .invariants import fixed_structure, multipoint, quantum_ring
    n = _need(args, "n", 1)
    order = _need(args, "order", 0)
    ins = _insertions(args.insertions, n)
    if len(ins) < 3:
        raise UsageError("--insertions", "need at least 3 insertions")
    if args.fixed_structure:
        value = fixed_structure(ins).value
        series = series_expand(value, order)
        exact = str(value)
    elif len(ins) == 3:
        value = quantum_ring(n).three_point(*ins)
        series = series_expand(value, order)
        exact = str(value)
    else:
        series = multipoint(ins, order, pivot=args.pivot)
        exact = None
    payload = {"n": n, "insertions": args.insertions, "order": order,
               "fixed_structure": bool(args.fixed_structure),
               "series": [str(c) for c in series]}
    if exact is not None:
        payload["exact"] = exact
    _emit(payload, args.format, "\n".join(f"q^{d}: {c}" for d, c in enumerate(series)))
    return EXIT_OK


def cmd_gw(args):
    from .invariants import gw_exponent, gw_transform
    n = _need(args, "n", 1)
    order = _need(args, "u_order", 0)
    parts = []
    for tok in (args.insertions or "").split(";"):
        try:
            mu = Partition.parse(tok.strip())
        except ValueError as exc:
            raise UsageError("--insertions", str(exc))
        if mu.size != n:
            raise UsageError("--insertions", f"{tok} is not a partition of {n}")
        parts.append(mu)
    if len(parts) < 3:
        raise UsageError("--insertions", "need at least 3 insertions")
    z = gw_transform(parts, order)
    payload = {"n": n, "insertions": args.insertions, "exponent": gw_exponent(parts),
               "order": order,
               "v_coefficients": {str(k): str(c) for k, c in sorted(z.coeffs.items())},
               "u_coefficients": {str(k): str(c) for k, c in sorted(z.u_coefficients().items())}}
    _emit(payload, args.format)
    return EXIT_OK


def cmd_jack(args):
    from .jack import jack_vector, schur_specialization_check
    n = _need(args, "n", 1)
    lams = [args.lam] if args.lam is not None else list(enumerate_partitions(n))
    out = []
    for lam in lams:
        if lam.size != n:
            raise UsageError("--lambda", f"{lam} is not a partition of {n}")
        jv = jack_vector(lam)
        entry = {"lambda": str(lam), "eigenvalue": str(jv.eigenvalue),
                 "vector": _vector_dict(jv.vector)}
        if args.schur:
            entry["schur_check"] = schur_specialization_check(lam)[0]
        out.append(entry)
    _emit({"n": n, "jack": out}, args.format)
    return EXIT_OK


def cmd_qde(args):
    from .qde import formal_solution
    n = _need(args, "n", 1)
    order = _need(args, "order", 0)
    sol = formal_solution(n, order, args.t1, args.t2)
    degrees = [args.d] if args.d is not None else range(order + 1)
    if args.d is not None and not 0 <= args.d <= order:
        raise UsageError("--d", f"must lie in [0, {order}]")
    payload = {"n": n, "order": order, "basis": [str(mu) for mu in sol.basis],
               "convention": "Psi = Y(q) q^{M_D(0)}, Y = sum_d Y_d q^d",
               "residue": [[str(a) for a in row] for row in sol.residue],
               "Y": {str(d): [[str(a) for a in row] for row in sol.Y_at(d)] for d in degrees}}
    _emit(payload, args.format)
    return EXIT_OK


def cmd_monodromy(args):
    from .qde import monodromy_probe, parse_loop
    n = _need(args, "n", 1)
    t1, t2 = _need(args, "t1"), _need(args, "t2")
    if args.tol <= 0:
        raise UsageError("--tol", "must be positive")
    try:
        loop = parse_loop(args.loop)
    except ValueError as exc:
        raise UsageError("--loop", str(exc))
    rep = monodromy_probe(n, t1, t2, loop, args.tol)
    payload = {"n": n, "t1": str(t1), "t2": str(t2), "tol": args.tol}
    payload.update(rep.to_dict())
    _emit(payload, args.format)
    return EXIT_OK if rep.converged else EXIT_FAIL


def cmd_singularities(args):
    from .qde import singularities
    n = _need(args, "n", 1)
    pts = singularities(n)
    _emit({"n": n, "singularities": [p.to_dict() for p in pts]}, args.format,
          "\n".join(p.label for p in pts))
    return EXIT_OK


def cmd_verify(args):
    from .checks import suite_checks
    max_n = _need(args, "max_n", 1)
    order = _need(args, "order", 0)
    names = SUITES if args.suite == "all" else (args.suite,)
    checks = [c for name in names for c in suite_checks(name, max_n, order)]
    threads = max(1, int(os.environ.get("HILB_THREADS", "1") or 1))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda c: c.run(), checks))
    else:
        results = [c.run() for c in checks]
    report = [{"suite": c.suite, "check": c.name, "ok": ok, "witness": wit}
              for c, (ok, wit) in zip(checks, results)]
    failed = [r for r in report if not r["ok"]]
    payload = {"suites": list(names), "max_n": max_n, "order": order,
               "passed": len(report) - len(failed), "failed": len(failed), "checks": report}
    text = "\n".join(f"{'PASS' if r['ok'] else 'FAIL'} {r['suite']}:{r['check']}"
                     for r in report)
    _emit(payload, args.format, text)
    if failed:
        first = failed[0]
        print(f"first counterexample: {first['suite']}:{first['check']}: {first['witness']}",
              file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser():
    p = _Parser(prog="hilb", description="Quantum cohomology of Hilb_n(C^2) from the operator M_D.")
    p.add_argument("--config", help="key=value file with default option values")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, fmts=("json", "text")):
        sp.add_argument("--n", type=int)
        sp.add_argument("--format", choices=fmts, default="json")
        return sp

    sp = common(sub.add_parser("matrix", help="matrix of M_D (or M, or the t -> oo limit)"),
                ("json", "csv", "text"))
    sp.add_argument("--operator", choices=("MD", "M", "limit"), default="MD")
    sp.add_argument("--q0", action="store_true", help="set q = 0")
    sp.add_argument("--expand", type=int, help="render entries as q-series to this order")
    sp.set_defaults(func=cmd_matrix)

    sp = common(sub.add_parser("product", help="small quantum product a * b"))
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.add_argument("--t1", type=_rational)
    sp.add_argument("--t2", type=_rational)
    sp.add_argument("--expand", type=int)
    sp.set_defaults(func=cmd_product)

    sp = common(sub.add_parser("invariant", help="genus 0 invariant series"))
    sp.add_argument("--insertions", help='e.g. "[2,1];[2,1];[3]"; D and 1 are allowed')
    sp.add_argument("--order", type=int, default=6)
    sp.add_argument("--fixed-structure", action="store_true")
    sp.add_argument("--pivot", type=int, help="insertion reduced first by WDVV")
    sp.set_defaults(func=cmd_invariant)

    sp = common(sub.add_parser("gw", help="predicted GW partition function"))
    sp.add_argument("--insertions")
    sp.add_argument("--u-order", type=int, default=6)
    sp.set_defaults(func=cmd_gw)

    sp = common(sub.add_parser("jack", help="eigenvectors of M_D(0)"))
    sp.add_argument("--lambda", dest="lam", type=_partition)
    sp.add_argument("--schur", action="store_true", help="also run the t2 = -t1 check")
    sp.set_defaults(func=cmd_jack)

    sp = common(sub.add_parser("qde", help="formal solution at q = 0"))
    sp.add_argument("--order", type=int, default=4)
    sp.add_argument("--d", type=int, help="print only Y_d")
    sp.add_argument("--t1", type=_rational)
    sp.add_argument("--t2", type=_rational)
    sp.set_defaults(func=cmd_qde)

    sp = common(sub.add_parser("monodromy", help="numerical monodromy around a loop"))
    sp.add_argument("--t1", type=_rational)
    sp.add_argument("--t2", type=_rational)
    sp.add_argument("--loop", default="center=0,radius=0.3")
    sp.add_argument("--tol", type=float, default=1e-9)
    sp.set_defaults(func=cmd_monodromy)

    sp = common(sub.add_parser("singularities", help="singular points of the QDE"))
    sp.set_defaults(func=cmd_singularities)

    sp = sub.add_parser("verify", help="run verification suites")
    sp.add_argument("--suite", choices=SUITES + ("all",), default="all")
    sp.add_argument("--max-n", type=int, default=4)
    sp.add_argument("--order", type=int, default=8)
    sp.add_argument("--format", choices=("json", "text"), default="text")
    sp.set_defaults(func=cmd_verify)
    return p


def _read_config(path):
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise UsageError("--config", str(exc))
    for num, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError("--config", f"line {num}: expected key=value")
        key, val = (x.strip() for x in line.split("=", 1))
        out[key.replace("-", "_")] = val
    return out


def _apply_config(parser, argv, config):
    """Re-parse with config values as defaults; explicit flags still win."""
    args = parser.parse_args(argv)
    sub = parser._subparsers._group_actions[0].choices[args.command]
    known = {a.dest: a for a in sub._actions}
    for key, val in config.items():
        if key not in known or key in ("help", "func"):
            continue
        action = known[key]
        if action.type is not None:
            try:
                val = action.type(val)
            except (ValueError, argparse.ArgumentTypeError) as exc:
                raise UsageError("--config", f"{key}: {exc}")
        elif isinstance(action, argparse._StoreTrueAction):
            val = val.lower() in ("1", "true", "yes")
        sub.set_defaults(**{key: val})
    return parser.parse_args(argv)


def run(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.config:
            args = _apply_config(parser, argv, _read_config(args.config))
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
