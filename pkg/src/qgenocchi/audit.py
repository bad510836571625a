"""Residual checks for the stated q-Genocchi identities.

Every identity is written once, as a function of a *ring context* that
supplies ``q``, ``x``, ``y`` and a way to evaluate ``G_{n,q}(arg)``.  With
:class:`SymbolicRing` the residual is a canonical ``PolyXY`` over Q(q) and the
identity holds iff that residual is the zero polynomial.  With
:class:`RationalRing` the same formula is evaluated at a rational point using
only ``Fraction`` arithmetic; the two must agree after specialization.

Where an identity fails as typeset, a corrected variant is checked next to it.
The corrections come from the reflection formula
``q G_{n+1}(x+1) + G_{n+1}(x) = 2 (n+1) x^n``:

* sum of ``C(2n, 2k)``-weighted terms: ``G_{2n+2}(x+1) + G_{2n+2}(x-1)``
  becomes ``2(2n+2) x^{2n+1}/q + 2(2n+2)(x-1)^{2n+1} - (q + 1/q) G_{2n+2}(x)``;
* sum of ``C(2n+1, 2k)``-weighted terms: ``G_{2n+3}(x+1) - G_{2n+3}(x-1)``
  becomes ``2(2n+3) x^{2n+2}/q - 2(2n+3)(x-1)^{2n+2} + (q - 1/q) G_{2n+3}(x)``;
* the multiplication formula needs base ``q^d`` on the right-hand side, from
  ``sum_{a<d} (-q e^t)^a = (1 + q^d e^{dt}) / (1 + q e^t)`` for odd ``d``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Callable

from .algebra import PoleError, PolyXY, RatFuncQ, binomial, qbracket
from .analytic import (
    cauchy_contour,
    exact_value,
    hurwitz_neg_exact,
    polylog_neg_at,
    polylog_neg_coeffs,
)
from .core import genocchi_numbers_at, genocchi_poly, genocchi_poly_at
from .series import genocchi_from_series

__all__ = [
    "SymbolicRing",
    "RationalRing",
    "SYMBOLIC",
    "CLASSICAL",
    "AuditRecord",
    "IDENTITIES",
    "residual_thm1",
    "residual_unit_shift",
    "residual_reflection",
    "residual_thm2",
    "residual_thm3",
    "residual_thm4",
    "residual_thm5",
    "residual_cor6",
    "residual_thm7",
    "residual_cor8",
    "residual_thm9",
    "residual_cor10",
    "residual_distribution",
    "residual_thm11",
    "residual_zeta_numbers",
    "residual_interpolation",
    "audit_identity",
    "audit_all",
    "report_json",
    "report_text",
    "expectation_rows",
    "expectation_text",
    "load_expectations",
    "compare_with_expectations",
]


# ---------------------------------------------------------------------------
# ring contexts


class SymbolicRing:
    """``q`` an indeterminate (or fixed to ``q_value``), ``x`` and ``y`` symbolic."""

    def __init__(self, q_value: Fraction | None = None):
        self.q_value = q_value
        self.q = RatFuncQ.q() if q_value is None else Fraction(q_value)
        self.x = PolyXY.x()
        self.y = PolyXY.y()
        self.one = PolyXY.constant(Fraction(1))

    @property
    def classical(self) -> bool:
        return self.q_value == 1

    def bracket2(self):
        return RatFuncQ.coerce(qbracket(2)) if self.q_value is None else 1 + self.q

    def _poly(self, n: int, base_power: int) -> PolyXY:
        return _cached_poly(n, base_power, self.q_value)

    def G(self, n: int, arg, base_power: int = 1) -> PolyXY:
        return self._poly(n, base_power).compose_x(arg)

    def polylog(self, m: int):
        a = polylog_neg_coeffs(m)
        return a if self.q_value is None else a(self.q_value)

    def series_entry(self, n: int):
        if self.q_value is None:
            return _cached_series(n)
        return PolyXY(_cached_series(n).specialize_q(self.q_value).rows)

    def is_zero(self, value) -> bool:
        return PolyXY.coerce(value).is_zero()


@lru_cache(maxsize=None)
def _cached_poly(n: int, base_power: int, q_value: Fraction | None) -> PolyXY:
    p = genocchi_poly(n)
    if base_power != 1:
        p = p.compose_q_power(base_power)
    if q_value is not None:
        p = p.specialize_q(q_value)
    return p


@lru_cache(maxsize=None)
def _series_table(n_max: int) -> tuple:
    return tuple(genocchi_from_series(n_max))


def _cached_series(n: int) -> PolyXY:
    size = max(16, 1 << max(0, n).bit_length())
    return _series_table(size)[n]


class RationalRing:
    """Everything is a ``Fraction``: ``q = q0``, ``x = x0``, ``y = y0``."""

    def __init__(self, q0, x0, y0):
        self.q_value = Fraction(q0)
        self.q = self.q_value
        self.x = Fraction(x0)
        self.y = Fraction(y0)
        self.one = Fraction(1)

    @property
    def classical(self) -> bool:
        return self.q_value == 1

    def bracket2(self):
        return 1 + self.q

    def G(self, n: int, arg, base_power: int = 1) -> Fraction:
        return genocchi_poly_at(n, arg, self.q_value, base_power)

    def polylog(self, m: int) -> Fraction:
        # sum_{n>=1} (-q)^n n^m via Eulerian numbers, not via q d/dq
        return polylog_neg_at(m, -self.q_value)

    def series_entry(self, n: int) -> Fraction:
        return genocchi_from_series(n, q0=self.q_value, x0=self.x)[n]

    def is_zero(self, value) -> bool:
        return Fraction(value) == 0


SYMBOLIC = SymbolicRing()
CLASSICAL = SymbolicRing(Fraction(1))


def _frac_sum(terms) -> object:
    total = None
    for t in terms:
        total = t if total is None else total + t
    return 0 if total is None else total


def _lhs_weighted(ring, n: int) -> object:
    """``sum_{k<=n} C(n,k)/((k+2)(k+1)) G_{k+2}(x) y^(n-k)`` (y -> 1 when absent)."""
    return _frac_sum(
        ring.G(k + 2, ring.x) * (binomial(n, k) / ((k + 2) * (k + 1))) * ring.y ** (n - k)
        for k in range(n + 1)
    )


def _lhs_even(ring, top: int, bound: int, y) -> object:
    """``sum_{k<=bound} C(top,2k)/((k+1)(2k+1)) G_{2k+2}(x) y^(top-2k)``.

    Terms whose binomial vanishes are dropped before forming ``y``'s power,
    which may be negative for them.
    """
    terms = []
    for k in range(bound + 1):
        c = binomial(top, 2 * k)
        if not c:
            continue
        terms.append(ring.G(2 * k + 2, ring.x) * (c / ((k + 1) * (2 * k + 1))) * y ** (top - 2 * k))
    return _frac_sum(terms)


# ---------------------------------------------------------------------------
# residuals (LHS - RHS)


def residual_thm1(n: int, ring=SYMBOLIC):
    """Addition formula ``G_n(x+y) = sum C(n,k) G_k(x) y^(n-k)``."""
    x, y = ring.x, ring.y
    rhs = _frac_sum(ring.G(k, x) * binomial(n, k) * y ** (n - k) for k in range(n + 1))
    return ring.G(n, x + y) - rhs


def residual_thm2(n: int, ring=SYMBOLIC):
    x, y = ring.x, ring.y
    rhs = (ring.G(n + 2, x + y) - 2 / ring.bracket2() * (n + 2) * y ** (n + 1)) / ((n + 2) * (n + 1))
    return _lhs_weighted(ring, n) - rhs


def residual_thm3(n: int, ring=SYMBOLIC):
    x, y = ring.x, ring.y
    rhs = ((-1) ** n * ring.G(n + 2, x - y) + ring.G(n + 2, x + y)) / ((n + 1) * (n + 2))
    return _lhs_even(ring, n, n // 2, y) - rhs


def residual_thm4(n: int, ring=SYMBOLIC):
    """Same as :func:`residual_thm3` with the summation bound ``floor((n+1)/2)``."""
    x, y = ring.x, ring.y
    rhs = ((-1) ** n * ring.G(n + 2, x - y) + ring.G(n + 2, x + y)) / ((n + 2) * (n + 1))
    return _lhs_even(ring, n, (n + 1) // 2, y) - rhs


def residual_unit_shift(n: int, ring=SYMBOLIC):
    """:func:`residual_thm2` at ``y = 1``, multiplied through by ``q``."""
    q, x = ring.q, ring.x
    lhs = _frac_sum(
        ring.G(k + 2, x) * (binomial(n, k) / ((k + 2) * (k + 1))) for k in range(n + 1)
    ) * q
    rhs = ring.G(n + 2, x + 1) * q / ((n + 1) * (n + 2)) - 2 * q / (ring.bracket2() * (n + 1))
    return lhs - rhs


def residual_reflection(n: int, ring=SYMBOLIC):
    """Reflection ``q G_{n+1}(x+1) + G_{n+1}(x) = 2 (n+1) x^n``."""
    x = ring.x
    return ring.G(n + 1, x + 1) * ring.q + ring.G(n + 1, x) - 2 * (n + 1) * x ** n


def residual_thm5(n: int, ring=SYMBOLIC):
    q, x = ring.q, ring.x
    lhs = _frac_sum(ring.G(k + 2, x) * (binomial(n, k) / ((k + 2) * (k + 1))) for k in range(n + 1))
    qn = q * n + q
    rhs = 2 * x ** (n + 1) / qn - ring.G(n + 2, x) / (qn * (n + 2)) - 2 / (ring.bracket2() * (n + 1))
    return lhs - rhs


def residual_cor6(n: int, ring=CLASSICAL):
    """The identity of :func:`residual_thm5` at ``q = 1``."""
    x = ring.x
    lhs = _frac_sum(ring.G(k + 2, x) * (binomial(n, k) / ((k + 2) * (k + 1))) for k in range(n + 1))
    rhs = 2 * x ** (n + 1) / (n + 1) - ring.G(n + 2, x) / ((n + 1) * (n + 2)) - Fraction(1, n + 1)
    return lhs - rhs


def residual_thm7(n: int, variant: str = "printed", ring=SYMBOLIC):
    q, x = ring.q, ring.x
    lhs = _lhs_even(ring, 2 * n, n, ring.one)
    g = ring.G(2 * n + 2, x)
    d = (2 * n + 1) * (2 * n + 2)
    if variant == "printed":
        e = (2 * n + 1) * (n + 1)
        rhs = (
            (n + 2) * x ** (n + 1) / e
            + (n + 2) * (x - 1) ** (n + 1) / e
            - g / (q * d)
            - q * g / d
        )
    elif variant == "corrected":
        rhs = (
            (2 * (2 * n + 2) * x ** (2 * n + 1) / q + 2 * (2 * n + 2) * (x - 1) ** (2 * n + 1)) / d
            - (q + 1 / q) * g / d
        )
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return lhs - rhs


def residual_cor8(n: int, variant: str = "printed", ring=CLASSICAL):
    x = ring.x
    lhs = _lhs_even(ring, 2 * n, n, ring.one)
    g = ring.G(2 * n + 2, x)
    d = (2 * n + 1) * (2 * n + 2)
    if variant == "printed":
        rhs = (
            2 * (n + 2) * x ** (n + 1) / d
            + 2 * (n + 2) * (x - 1) ** (n + 1) / d
            - g / d
            - g / d
        )
    elif variant == "corrected":
        rhs = (
            2 * x ** (2 * n + 1) / (2 * n + 1)
            + 2 * (x - 1) ** (2 * n + 1) / (2 * n + 1)
            - g / ((2 * n + 1) * (n + 1))
        )
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return lhs - rhs


def residual_thm9(n: int, variant: str = "printed", ring=SYMBOLIC):
    """``printed``: statement, denominator (2n+3)(n+1); ``printed-derivation``:
    denominator (2n+3)(2n+2); ``corrected``: factor (q^2-1)/q over (2n+3)(2n+2)."""
    q, x = ring.q, ring.x
    lhs = _lhs_even(ring, 2 * n + 1, n, ring.one)
    g = ring.G(2 * n + 3, x)
    head = x ** (2 * n + 2) / (q * (n + 1)) - (x - 1) ** (2 * n + 2) / (n + 1)
    if variant == "printed":
        rhs = head + (q - 1) / q * g / ((2 * n + 3) * (n + 1))
    elif variant == "printed-derivation":
        rhs = head + (q - 1) / q * g / ((2 * n + 3) * (2 * n + 2))
    elif variant == "corrected":
        rhs = head + (q * q - 1) / q * g / ((2 * n + 3) * (2 * n + 2))
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return lhs - rhs


def residual_cor10(n: int, ring=CLASSICAL):
    x = ring.x
    lhs = _lhs_even(ring, 2 * n + 1, n, ring.one)
    rhs = 2 * x ** (2 * n + 2) / (2 * n + 2) - 2 * (x - 1) ** (2 * n + 2) / (2 * n + 2)
    return lhs - rhs


def residual_distribution(n: int, d: int, variant: str = "printed", ring=SYMBOLIC):
    """Multiplication formula for odd ``d``.

    printed:   ``G_n(dx) = d^(n-1) sum_a (-1)^a q^a G_n(x + a/d)``
    corrected: ``G_n(x)  = d^(n-1) sum_a (-1)^a q^a G_{n,q^d}((x + a)/d)``
    """
    if d < 1 or d % 2 == 0:
        raise ValueError(f"d must be a positive odd integer, got {d}")
    q, x = ring.q, ring.x
    scale = Fraction(d) ** (n - 1)
    if variant == "printed":
        lhs = ring.G(n, x * d)
        terms = (ring.G(n, x + Fraction(a, d)) * ((-1) ** a * q ** a) for a in range(d))
    elif variant == "corrected":
        lhs = ring.G(n, x)
        terms = (
            ring.G(n, (x + a) / d, base_power=d) * ((-1) ** a * q ** a) for a in range(d)
        )
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return lhs - _frac_sum(terms) * scale


def residual_thm11(n: int, ring=SYMBOLIC):
    """``G_n(x)`` against ``n!`` times the t^n coefficient of the generating function
    (the n-th t-derivative at 0), taken from the series expansion."""
    return ring.G(n, ring.x) - ring.series_entry(n)


def residual_zeta_numbers(m: int, variant: str = "printed", ring=SYMBOLIC):
    """``G_{m+1}/(m+1)`` against ``c * sum_{n>=1} (-q)^n n^m``; printed c = [2]_q, corrected c = 2."""
    if m < 1:
        raise ValueError("m must be at least 1")
    if variant == "printed":
        pref = ring.bracket2()
    elif variant == "corrected":
        pref = 2
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return ring.G(m + 1, 0 * ring.x) / (m + 1) - pref * ring.polylog(m)


def residual_interpolation(m: int, variant: str = "corrected", ring=SYMBOLIC):
    """Hurwitz-type ``zeta(-m, x : q) - G_{m+1}(x)/(m+1)``.

    ``corrected`` uses prefactor 2 (what the Mellin integrand gives);
    ``bracket`` uses ``[2]_q`` as in the coefficient comparison formula.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    if variant == "corrected":
        pref = 2
    elif variant == "bracket":
        pref = ring.bracket2()
    else:
        raise ValueError(f"unknown variant {variant!r}")
    if isinstance(ring, SymbolicRing):
        zeta = hurwitz_neg_exact(m, pref if ring.q_value is None else 1)
        if ring.q_value is not None:
            zeta = PolyXY(zeta.specialize_q(ring.q_value).rows) * pref
    else:
        x = ring.x
        inner = _frac_sum(
            binomial(m, j) * x ** (m - j) * (ring.polylog(j) + (1 if j == 0 else 0)) for j in range(m + 1)
        )
        zeta = pref * inner
    return zeta - ring.G(m + 1, ring.x) / (m + 1)


# ---------------------------------------------------------------------------
# records


HOLDS = "holds"
FAILS = "fails"
HOLDS_AT_Q1 = "holds-at-q=1-only"


@dataclass(frozen=True)
class AuditRecord:
    identity_id: str
    variant: str
    n_range: tuple[int, ...]
    verdict: str
    residual: PolyXY | None = None
    failing_n: tuple[int, ...] = field(default=())
    residual_text: str = "0"

    def as_dict(self) -> dict:
        return {
            "identity_id": self.identity_id,
            "variant": self.variant,
            "n_tested": list(self.n_range),
            "verdict": self.verdict,
            "residual_text": self.residual_text,
        }


@dataclass(frozen=True)
class Identity:
    identity_id: str
    variant: str
    residual: Callable[..., object]  # (n, ring) -> residual
    n_min: int = 0
    classical: bool = False  # stated at q = 1 only
    numeric: bool = False


def _vanishes_at_q1(residual: PolyXY) -> bool:
    try:
        return residual.specialize_q(1).is_zero()
    except PoleError:
        return False


def _judge(identity: Identity, n_range: range) -> AuditRecord:
    failing: list[int] = []
    first: PolyXY | None = None
    q1_ok = True
    ring = CLASSICAL if identity.classical else SYMBOLIC
    for n in n_range:
        r = PolyXY.coerce(identity.residual(n, ring))
        if r.is_zero():
            continue
        failing.append(n)
        if first is None:
            first = r
        if identity.classical or not _vanishes_at_q1(r):
            q1_ok = False
    if not failing:
        verdict, text = HOLDS, "0"
    else:
        verdict = HOLDS_AT_Q1 if q1_ok else FAILS
        text = f"n={failing[0]}: {first.render()}"
    return AuditRecord(
        identity_id=identity.identity_id,
        variant=identity.variant,
        n_range=tuple(n_range),
        verdict=verdict,
        residual=first if first is not None else PolyXY(),
        failing_n=tuple(failing),
        residual_text=text,
    )


CONTOUR_Q0 = Fraction(1, 2)
CONTOUR_TOL = 1e-10
CONTOUR_N_MAX = 10


def _judge_contour(n_range: range) -> AuditRecord:
    failing = []
    worst = 0.0
    for n in n_range:
        value = cauchy_contour(n, 0.0, float(CONTOUR_Q0), 1.0, 64)
        err = abs(value - float(exact_value(n, 0, CONTOUR_Q0)))
        worst = max(worst, err)
        if not err < CONTOUR_TOL:
            failing.append(n)
    verdict = HOLDS if not failing else FAILS
    text = "0" if not failing else f"n={failing[0]}: max abs error {worst:.3e}"
    return AuditRecord("thm12", "printed", tuple(n_range), verdict, None, tuple(failing), text)


def _with_variant(fn, variant):
    return lambda n, ring: fn(n, variant, ring)


def _distribution(d, variant):
    return lambda n, ring: residual_distribution(n, d, variant, ring)


IDENTITIES: tuple[Identity, ...] = (
    Identity("thm1", "printed", residual_thm1),
    Identity("thm2", "printed", residual_thm2),
    Identity("thm3", "printed", residual_thm3),
    Identity("thm4", "printed", residual_thm4),
    Identity("unit-shift", "printed", residual_unit_shift),
    Identity("reflection", "printed", residual_reflection),
    Identity("thm5", "printed", residual_thm5),
    Identity("cor6", "printed", residual_cor6, classical=True),
    Identity("thm7-printed", "printed", _with_variant(residual_thm7, "printed")),
    Identity("thm7-corrected", "corrected", _with_variant(residual_thm7, "corrected")),
    Identity("cor8-printed", "printed", _with_variant(residual_cor8, "printed"), classical=True),
    Identity("cor8-corrected", "corrected", _with_variant(residual_cor8, "corrected"), classical=True),
    Identity("thm9-printed", "printed", _with_variant(residual_thm9, "printed")),
    Identity("thm9-printed-derivation", "printed", _with_variant(residual_thm9, "printed-derivation")),
    Identity("thm9-corrected", "corrected", _with_variant(residual_thm9, "corrected")),
    Identity("cor10", "printed", residual_cor10, classical=True),
    Identity("thm11", "printed", residual_thm11),
    Identity("thm12", "printed", None, numeric=True),
    *(
        Identity(f"distribution-{v} d={d}", v, _distribution(d, v))
        for v in ("printed", "corrected")
        for d in (1, 3, 5)
    ),
    Identity("zeta-numbers-printed", "printed", _with_variant(residual_zeta_numbers, "printed"), n_min=1),
    Identity("zeta-numbers-corrected", "corrected", _with_variant(residual_zeta_numbers, "corrected"), n_min=1),
    Identity("interpolation", "corrected", _with_variant(residual_interpolation, "corrected"), n_min=1),
    Identity("interpolation-bracket-prefactor", "printed", _with_variant(residual_interpolation, "bracket"), n_min=1),
)


def audit_identity(identity: Identity, n_max: int) -> AuditRecord:
    if identity.numeric:
        return _judge_contour(range(0, min(n_max, CONTOUR_N_MAX) + 1))
    return _judge(identity, range(identity.n_min, n_max + 1))


def audit_all(n_max: int = 10) -> list[AuditRecord]:
    """Run every identity for ``n`` up to ``n_max``; order follows :data:`IDENTITIES`."""
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    return [audit_identity(identity, n_max) for identity in IDENTITIES]


# ---------------------------------------------------------------------------
# reports and the expectation table


def report_json(records: list[AuditRecord]) -> str:
    return json.dumps([r.as_dict() for r in records], indent=2, ensure_ascii=False) + "\n"


def report_text(records: list[AuditRecord]) -> str:
    width = max(len(r.identity_id) for r in records)
    lines = []
    for r in records:
        span = f"n={r.n_range[0]}..{r.n_range[-1]}" if r.n_range else "n=-"
        lines.append(f"{r.identity_id:<{width}}  {r.verdict:<17}  {span}")
        if r.verdict != HOLDS:
            lines.append(f"    residual {r.residual_text}")
    return "\n".join(lines) + "\n"


def expectation_rows(records: list[AuditRecord]) -> list[dict]:
    return [{"identity_id": r.identity_id, "variant": r.variant, "verdict": r.verdict} for r in records]


def expectation_text(records: list[AuditRecord]) -> str:
    """The checked-in expectation file is exactly this rendering of the default audit."""
    return json.dumps(expectation_rows(records), indent=2) + "\n"


def load_expectations() -> str:
    return resources.files("qgenocchi").joinpath("data/expected_verdicts.json").read_text(encoding="utf-8")


def compare_with_expectations(records: list[AuditRecord], expected: str | None = None) -> list[str]:
    """Mismatch descriptions; empty when every verdict matches the table."""
    rows = json.loads(load_expectations() if expected is None else expected)
    want = {row["identity_id"]: row["verdict"] for row in rows}
    got = {r.identity_id: r.verdict for r in records}
    problems = []
    for key in want:
        if key not in got:
            problems.append(f"{key}: missing from report")
        elif got[key] != want[key]:
            problems.append(f"{key}: expected {want[key]}, got {got[key]}")
    for key in got:
        if key not in want:
            problems.append(f"{key}: not in expectation table")
    return problems
