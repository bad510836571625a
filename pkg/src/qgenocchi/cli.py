"""Command-line entry point: ``qgenocchi <subcommand> ...``.

Exit codes: 0 on success, 1 on unexpected audit verdicts or numeric
non-convergence, 2 on bad parameters.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction
from typing import Sequence

from .algebra import PoleError, PolyXY, RatFuncQ, parse_rational, render_rational
from .analytic import (
    ConvergenceError,
    ZetaParams,
    cauchy_contour,
    exact_value,
    zeta_neg_exact,
    zeta_series_detail,
)
from .audit import audit_all, compare_with_expectations, report_json, report_text
from .core import genocchi_number, genocchi_poly
from .padic import PadicContext, convergence_table
from .series import genocchi_from_series

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2


class ParameterError(ValueError):
    pass


# -- argument types ----------------------------------------------------------


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"expected a/b or an integer, got {text!r}") from exc


def _real(text: str) -> float:
    """Numeric-path flags accept a rational or a decimal."""
    try:
        value = float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from exc
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"expected a finite number, got {text!r}")
    return value


def _complex_pair(text: str) -> complex:
    parts = text.split(",")
    if len(parts) > 2:
        raise argparse.ArgumentTypeError(f"expected RE or RE,IM, got {text!r}")
    re_part = _real(parts[0])
    im_part = _real(parts[1]) if len(parts) == 2 else 0.0
    return complex(re_part, im_part)


def _nonneg(name: str, value: int) -> int:
    if value < 0:
        raise ParameterError(f"{name} must be nonnegative, got {value}")
    return value


# -- rendering helpers --------------------------------------------------------


def _render_value(value) -> str:
    if isinstance(value, (RatFuncQ, PolyXY)):
        return value.render()
    return render_rational(Fraction(value))


def _render_float(x: float) -> str:
    return repr(float(x))


def _render_complex(z: complex) -> str:
    return f"{_render_float(z.real)}{'-' if math.copysign(1, z.imag) < 0 else '+'}{_render_float(abs(z.imag))}i"


def _csv_text(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _json_text(payload) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def _specialize(value, x0: Fraction | None, q0: Fraction | None):
    """Substitute x and/or q; returns PolyXY, RatFuncQ or Fraction."""
    if isinstance(value, PolyXY) and x0 is not None:
        value = RatFuncQ.coerce(value.evaluate(x0))
    if q0 is None:
        return value
    return value(q0) if isinstance(value, RatFuncQ) else value.specialize_q(q0)


def _label(n: int, show_x: bool, x0: Fraction | None) -> str:
    if x0 is not None:
        return f"G_{n}({render_rational(x0)})"
    return f"G_{n}(x)" if show_x else f"G_{n}"


# -- subcommands --------------------------------------------------------------


def _cmd_genocchi(args) -> tuple[str, int]:
    n = _nonneg("--n", args.n)
    use_poly = args.poly or args.x is not None
    base = genocchi_poly(n) if use_poly else genocchi_number(n)
    value = _specialize(base, args.x, args.q)
    label = _label(n, args.poly, args.x)
    text = _render_value(value)
    if args.format == "csv":
        return _csv_text(["n", "value"], [[n, text]]), EXIT_OK
    if args.format == "json":
        payload = {
            "n": n,
            "x": None if args.x is None else render_rational(args.x),
            "q": None if args.q is None else render_rational(args.q),
            "label": label,
            "value": text,
        }
        return _json_text(payload), EXIT_OK
    suffix = "" if args.q is None else f"  [q = {render_rational(args.q)}]"
    return f"{label} = {text}{suffix}\n", EXIT_OK


def _cmd_series(args) -> tuple[str, int]:
    n_max = _nonneg("--n-max", args.n_max)
    entries = genocchi_from_series(n_max, q0=args.q, x0=args.x)
    show_x = args.x is None
    rows = [(n, _render_value(v)) for n, v in enumerate(entries)]
    if args.format == "csv":
        return _csv_text(["n", "value"], rows), EXIT_OK
    if args.format == "json":
        payload = {
            "x": None if args.x is None else render_rational(args.x),
            "q": None if args.q is None else render_rational(args.q),
            "coefficients": [{"n": n, "value": text} for n, text in rows],
        }
        return _json_text(payload), EXIT_OK
    lines = [f"{_label(n, show_x, args.x)} = {text}" for n, text in rows]
    return "\n".join(lines) + "\n", EXIT_OK


def _cmd_audit(args) -> tuple[str, int]:
    if args.n_max < 2:
        raise ParameterError("--n-max must be at least 2")
    records = audit_all(args.n_max)
    problems = compare_with_expectations(records)
    out = report_json(records) if args.format == "json" else report_text(records)
    if problems:
        for line in problems:
            print(f"verdict mismatch: {line}", file=sys.stderr)
        return out, EXIT_FAILURE
    return out, EXIT_OK


def _cmd_padic(args) -> tuple[str, int]:
    if args.n < 1:
        raise ParameterError("--n must be at least 1")
    if args.levels < 1:
        raise ParameterError("--levels must be at least 1")
    ctx = PadicContext(args.p, args.q, N_max=args.levels)
    rows = convergence_table(args.n, args.x, args.levels, ctx)
    cells = [
        (r.level, render_rational(r.partial_sum), "inf" if r.valuation == math.inf else str(r.valuation))
        for r in rows
    ]
    if args.format == "csv":
        return _csv_text(["level", "partial_sum", "valuation"], cells), EXIT_OK
    target = genocchi_poly(args.n).evaluate(args.x, 0, ctx.q0)
    head = (
        f"p = {args.p}, q0 = {render_rational(ctx.q0)}, n = {args.n}, x0 = {render_rational(args.x)}\n"
        f"target G = {render_rational(target)}\n"
    )
    body = "\n".join(f"N={lvl}  v_p(error)={val}  S_N={s}" for lvl, s, val in cells)
    return head + body + "\n", EXIT_OK


def _cmd_zeta(args) -> tuple[str, int]:
    if args.neg is not None:
        m = _nonneg("--neg", args.neg)
        value = zeta_neg_exact(m, with_x=args.with_x)
        label = f"zeta(-{m}, x : q)" if args.with_x else f"zeta(-{m} : q)"
        text = value.render()
        if args.format == "json":
            return _json_text({"m": m, "with_x": args.with_x, "value": text}), EXIT_OK
        return f"{label} = {text}\n", EXIT_OK
    if args.s is None or args.q is None:
        raise ParameterError("zeta needs --s and --q, or --neg")
    params = ZetaParams(q0=args.q, x0=args.x)
    result = zeta_series_detail(args.s, params, args.variant)
    if args.format == "json":
        payload = {
            "s": [args.s.real, args.s.imag],
            "q": args.q,
            "x": args.x,
            "variant": args.variant,
            "value": [result.value.real, result.value.imag],
            "terms": result.terms,
            "tail_bound": result.tail_bound,
            "method": result.method,
        }
        return _json_text(payload), EXIT_OK
    text = (
        f"zeta = {_render_complex(result.value)}\n"
        f"terms = {result.terms}  tail_bound = {_render_float(result.tail_bound)}  method = {result.method}\n"
    )
    return text, EXIT_OK


def _cmd_cauchy(args) -> tuple[str, int]:
    n = _nonneg("--n", args.n)
    if args.q <= 0:
        raise ParameterError("--q must be positive")
    value = cauchy_contour(n, args.x, args.q, args.radius, args.nodes)
    reference = exact_value(n, Fraction(args.x), Fraction(args.q))
    err = abs(value - float(reference))
    if args.format == "json":
        payload = {
            "n": n,
            "value": [value.real, value.imag],
            "exact": render_rational(reference),
            "abs_error": err,
        }
        return _json_text(payload), EXIT_OK
    text = (
        f"value = {_render_complex(value)}\n"
        f"exact = {render_rational(reference)} ({_render_float(float(reference))})\n"
        f"abs_error = {_render_float(err)}\n"
    )
    return text, EXIT_OK


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qgenocchi",
        description="Exact q-Genocchi numbers, identity audit and numeric checks.",
    )
    sub = parser.add_subparsers(dest="command", metavar="SUBCOMMAND")
    sub.required = True

    def add(name, help_text, formats):
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("--format", choices=formats, default="text", help="output format (default: text)")
        p.add_argument("--output", metavar="PATH", help="write output to PATH instead of stdout")
        return p

    p = add("genocchi", "G_{n,q} or G_{n,q}(x) from the recurrence", ("text", "csv", "json"))
    p.add_argument("--n", type=int, required=True, help="index n >= 0")
    p.add_argument("--x", type=_rational, help="evaluate at x = X0 (a/b or integer)")
    p.add_argument("--q", type=_rational, help="specialize q = Q0 (a/b or integer)")
    p.add_argument("--poly", action="store_true", help="print the polynomial in x")
    p.set_defaults(handler=_cmd_genocchi)

    p = add("series", "coefficients of the generating function 2t e^{xt}/(q e^t + 1)", ("text", "csv", "json"))
    p.add_argument("--n-max", type=int, required=True, help="highest index K")
    p.add_argument("--q", type=_rational, help="specialize q = Q0")
    p.add_argument("--x", type=_rational, help="specialize x = X0")
    p.set_defaults(handler=_cmd_series)

    p = add("audit", "symbolic audit of every identity; exit 1 on unexpected verdicts", ("text", "json"))
    p.add_argument("--n-max", type=int, default=10, help="test n up to N (default: 10)")
    p.set_defaults(handler=_cmd_audit)

    p = add("padic", "fermionic p-adic Riemann sums against the recurrence", ("text", "csv"))
    p.add_argument("--p", type=int, required=True, help="odd prime p")
    p.add_argument("--q", type=_rational, required=True, help="Q0 with |1 - Q0|_p < 1")
    p.add_argument("--n", type=int, required=True, help="index n >= 1")
    p.add_argument("--x", type=_rational, default=Fraction(0), help="X0 (default: 0)")
    p.add_argument("--levels", type=int, default=4, help="truncation levels N = 1..L (default: 4)")
    p.set_defaults(handler=_cmd_padic)

    p = add("zeta", "q-zeta series, or its exact value at a negative integer", ("text", "json"))
    p.add_argument("--s", type=_complex_pair, help="complex argument RE,IM")
    p.add_argument("--q", type=_real, help="Q0 in (0, 1)")
    p.add_argument("--x", type=_real, default=0.0, help="X0 >= 0 for the hurwitz variant (default: 0)")
    p.add_argument("--variant", choices=("printed", "hurwitz"), default="printed", help="series form (default: printed)")
    p.add_argument("--neg", type=int, metavar="M", help="print the exact value at s = -M")
    p.add_argument("--with-x", action="store_true", help="with --neg: the x-dependent form")
    p.set_defaults(handler=_cmd_zeta)

    p = add("cauchy", "trapezoidal contour integral for G_{n,q}(x)", ("text", "json"))
    p.add_argument("--n", type=int, required=True, help="index n >= 0")
    p.add_argument("--q", type=_real, required=True, help="Q0 > 0")
    p.add_argument("--x", type=_real, default=0.0, help="X0 (default: 0)")
    p.add_argument("--radius", type=_real, default=1.0, help="contour radius (default: 1.0)")
    p.add_argument("--nodes", type=int, default=64, help="number of nodes >= 16 (default: 64)")
    p.set_defaults(handler=_cmd_cauchy)
    return parser


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        return
    out = sys.stdout
    if hasattr(out, "reconfigure"):
        out.reconfigure(encoding="utf-8", newline="\n")
    out.write(text)
    out.flush()


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text, code = args.handler(args)
    except (ParameterError, PoleError, ValueError) as exc:
        print(f"qgenocchi {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConvergenceError, OverflowError) as exc:
        print(f"qgenocchi {args.command}: numeric failure: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    _emit(text, args.output)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
