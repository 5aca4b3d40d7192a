"""Predicted exponents f_{r,l}(x) = lim log_n ex(G^r_{n,p}, C^r_{2l}) at p = n^{-r+x}.

For r >= 4 the curve is known exactly. For r = 3 it is known outside a
window (2 + 1/(4l-2), 2 + (2l-1)/(4l^2-5l+2)), where only a lower and an
upper envelope are available; both are exposed and neither is preferred.
"""

from __future__ import annotations

from .errors import ValidationError
from .supersat.bounds import p0_p1_exponents


def _check(r: int, ell: int, x: float) -> None:
    if r < 3:
        raise ValidationError("predictions cover uniformity r >= 3")
    if ell < 2:
        raise ValidationError("cycle half-length must be >= 2")
    if not 0 < x <= r:
        raise ValidationError(f"x must lie in (0, {r}], got {x}")


def plateau(ell: int) -> float:
    return 1 + 1 / (2 * ell - 1)


def breakpoints(r: int, ell: int) -> list[float]:
    """x-values where the predicted curve changes slope."""
    if r >= 4:
        return [plateau(ell), 2 + 1 / (2 * ell - 1)]
    x0, x1 = p0_p1_exponents(r, ell)
    return [plateau(ell), x0, x1]


def f_lower(r: int, ell: int, x: float) -> float:
    """Lower envelope, which is also the full answer for r >= 4."""
    _check(r, ell, x)
    if x <= plateau(ell):
        return x
    return max(plateau(ell), x - 1)


def f_upper(r: int, ell: int, x: float) -> float:
    _check(r, ell, x)
    if r >= 4:
        return f_lower(r, ell, x)
    x0, x1 = p0_p1_exponents(r, ell)
    if x0 < x < x1:
        return 2 * (ell - 1) / (ell * (4 * ell - 3)) * x + (4 * ell**2 - 5 * ell + 3) / (ell * (4 * ell - 3))
    return f_lower(r, ell, x)


def prediction_curve(r: int, ell: int, xs) -> tuple[list[float], list[float]]:
    """Lower and upper envelopes sampled at ``xs``."""
    return [f_lower(r, ell, x) for x in xs], [f_upper(r, ell, x) for x in xs]
