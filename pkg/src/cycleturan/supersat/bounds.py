"""Thresholds and Delta_j bound shapes for balanced cycle collections.

All bounds read Delta_j <= c * prefactor(|S|) * base^{j-1}; the constant c is
existential, so it is fitted from data and reported rather than assumed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..errors import ValidationError

GRAPH = "graph"
LINEAR3 = "linear3"
LINEAR_GE4 = "linear_ge4"
BERGE = "berge"
BOUND_KINDS = (GRAPH, LINEAR3, LINEAR_GE4, BERGE)


def _check(r: int, ell: int, t: float, n: float) -> None:
    if ell < 2:
        raise ValidationError("cycle half-length must be >= 2")
    if r < 2:
        raise ValidationError("uniformity must be >= 2")
    if t <= 0:
        raise ValidationError("t must be positive")
    if n < 2:
        raise ValidationError("n must be >= 2")


def threshold_A(r: int, ell: int, t: float, n: float, berge: bool = False) -> float:
    """Codegree cutoff separating the expansion case from the shadow case."""
    _check(r, ell, t, n)
    ln = math.log(n)
    if berge:
        den = 2 * (r - 1) * ell**2 - (r + 2) * ell + 2
        return (t / ln ** (r - 2)) ** (ell * (2 * ell - 1) / den)
    if r == 3:
        den = 4 * ell**2 - 5 * ell + 2
        return (t / ln) ** ((2 * ell - 1) * ell / den) * n ** ((2 * ell - 1) * (ell - 1) / den)
    if r < 3:
        raise ValidationError("the linear threshold needs r >= 3")
    den = (2 * ell - 1) * r - 2 * ell
    return (t / ln ** (r - 2)) ** ((2 * ell - 1) / den) * n ** (((2 * ell - 1) * r - 4 * ell + 1) / den)


def case2_cutoff(r: int, t: float) -> float:
    """Smallest admissible bucket scale: buckets need 2^a strictly above this."""
    if r == 3:
        return t / 9
    if r == 4:
        return 3 * t / 16
    return math.factorial(r) * t / (4 * r**r)


def berge_lambda(r: int, ell: int) -> float:
    return (r - 2) / (2 * ell - 2)


def p0_p1_exponents(r: int, ell: int) -> tuple[float, float]:
    """Exponents x_0 < x_1 (p = n^{-r+x}) bounding the undetermined window for r = 3."""
    x0 = 2 + 1 / (4 * ell - 2)
    x1 = 2 + (2 * ell - 1) / (4 * ell**2 - 5 * ell + 2)
    return x0, x1


@dataclass
class BalanceBound:
    """Delta_j <= c * |S| * polylog / (t * n^e) * base^{j-1}."""

    kind: str
    r: int
    ell: int
    n: float
    t: float
    c: float | None = None
    lam: float | None = field(default=None)

    def __post_init__(self):
        if self.kind not in BOUND_KINDS:
            raise ValidationError(f"unknown bound kind {self.kind!r}")
        _check(self.r, self.ell, self.t, self.n)
        if self.kind == BERGE and self.lam is None:
            self.lam = berge_lambda(self.r, self.ell)

    @property
    def polylog(self) -> float:
        if self.kind == GRAPH:
            return 1.0
        return math.log(self.n) ** (self.r - 2)

    @property
    def density_exponent(self) -> float:
        if self.kind in (GRAPH, BERGE):
            return 1 + 1 / self.ell
        return self.r - 1

    @property
    def base(self) -> float:
        l, n, t, r = self.ell, self.n, self.t, self.r
        if self.kind == GRAPH:
            return max(t ** (-l / (l - 1)), t**-1 * n ** (-(l - 1) / (l * (2 * l - 1))))
        tt = t / self.polylog
        if self.kind == LINEAR3:
            den = 4 * l**2 - 5 * l + 2
            return max(
                tt ** (-l * (4 * l - 3) / den) * n ** (-(l - 1) * (4 * l - 3) / den),
                tt**-1 * n ** (-(2 * l - 2) / (2 * l - 1)),
            )
        if self.kind == LINEAR_GE4:
            return tt**-1 * n ** (-r + 2 + 1 / (2 * l - 1))
        den = 2 * (r - 1) * l**2 - (r + 2) * l + 2
        return max(
            tt ** (-(2 * (r - 1) * l**2 - r * l) / den),
            tt**-1 * n ** (-(l - 1) / (l * (2 * l - 1))),
        )

    def shape(self, j: int, size: int) -> float:
        """Right side with c = 1."""
        pre = size * self.polylog / (self.t * self.n**self.density_exponent)
        return pre * self.base ** (j - 1)

    def rhs(self, j: int, size: int) -> float:
        return (self.c if self.c is not None else 1.0) * self.shape(j, size)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "r": self.r,
            "ell": self.ell,
            "n": self.n,
            "t": self.t,
            "c": self.c,
            "lambda": self.lam,
            "base": self.base,
        }


def bound_kind(r: int, berge: bool) -> str:
    if r == 2:
        return GRAPH
    if berge:
        return BERGE
    return LINEAR3 if r == 3 else LINEAR_GE4


def host_t(e: int, n: int, r: int, ell: int, berge: bool) -> float:
    """Edge density t in the normalization each theorem uses."""
    if r == 2 or berge:
        return e / n ** (1 + 1 / ell)
    return e / n ** (r - 1)


@dataclass
class BalanceReport:
    profile: list[int]
    ratios: list[float]
    max_ratio: float
    implied_c: float
    within: bool | None

    def to_json(self) -> dict:
        return {
            "profile": self.profile,
            "ratios": self.ratios,
            "max_ratio": self.max_ratio,
            "implied_c": self.implied_c,
            "within": self.within,
        }


def verify_balance(S, bound: BalanceBound, n: float | None = None, t: float | None = None) -> BalanceReport:
    """Ratios Delta_j / shape_j and the smallest constant c that makes the bound hold."""
    from .collection import delta_profile

    if n is not None or t is not None:
        bound = BalanceBound(bound.kind, bound.r, bound.ell, n or bound.n, t or bound.t, bound.c)
    copies = list(S)
    if not copies:
        L = 2 * bound.ell
        return BalanceReport([0] * L, [0.0] * L, 0.0, 0.0, True)
    L = max(c.length for c in copies)
    prof = S.profile() if hasattr(S, "profile") else delta_profile(copies, L)
    ratios = [prof[j - 1] / bound.shape(j, len(copies)) for j in range(1, L + 1)]
    mr = max(ratios)
    within = None if bound.c is None else mr <= bound.c * (1 + 1e-12)
    return BalanceReport(list(prof), ratios, mr, mr, within)
