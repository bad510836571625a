"""q-Genocchi numbers and polynomials in exact arithmetic.

``G_{n,q}(x)`` is defined by ``2t e^{xt} / (q e^t + 1) = sum G_{n,q}(x) t^n / n!``.
"""

from .algebra import PoleError, PolyQ, PolyXY, RatFuncQ, binomial, qbracket, specialize_q
from .core import GenocchiTable, genocchi_number, genocchi_poly, genocchi_table
from .series import TruncSeries, classical_genocchi, genocchi_from_series

__all__ = [
    "PoleError",
    "PolyQ",
    "PolyXY",
    "RatFuncQ",
    "binomial",
    "qbracket",
    "specialize_q",
    "GenocchiTable",
    "genocchi_number",
    "genocchi_poly",
    "genocchi_table",
    "TruncSeries",
    "classical_genocchi",
    "genocchi_from_series",
]

__version__ = "0.1.0"
