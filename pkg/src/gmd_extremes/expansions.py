"""Closed-form asymptotic ingredients for the normalized extremes.

Everything is a polynomial times a power of e^{-x} (max side) or e^{y}
(min side), multiplied by the Gumbel factors Lambda(x), Lambda(-y).
Whenever a Gumbel factor underflows to zero, the terms it multiplies are
set to zero instead of evaluating inf * 0.

Two second-order coefficients exist in two versions. ``w_k`` and ``c2``
are the values the exact law actually converges to. ``w_k_printed`` and
``c2_printed`` keep the formulas as originally stated: that w_k has a
spurious 24 x^2 term in its bracket, and that density factor uses
(2k+1)(4k-1) where (2k-1)(4k-1) belongs on the cubic term. The limit
probes in :mod:`gmd_extremes.lab` tell the two apart.
"""

import enum
import math
from dataclasses import dataclass

_EXP_MAX = 709.0


def _exp(v):
    return math.exp(v) if v < _EXP_MAX else math.inf


class ApproxOrder(enum.IntEnum):
    FIRST = 1
    SECOND = 2
    THIRD = 3

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        if isinstance(value, str):
            key = value.strip().upper()
            if key in cls.__members__:
                return cls[key]
            value = int(key)
        return cls(int(value))


def gumbel(x):
    """Lambda(x) = exp(-e^{-x})."""
    return math.exp(-_exp(-x))


# --- marginal coefficients --------------------------------------------------

def _l_poly(p, x):
    return p.sigma**2 / (2.0 * p.k) * ((2.0 * p.k - 1.0) * x * x - 2.0 * x)


def _w_poly(p, x):
    k = p.k
    return -p.sigma**4 / (24.0 * k * k) * (
        3.0 * (2.0 * k - 1.0) ** 2 * x**4
        - 4.0 * (2.0 * k + 1.0) * (2.0 * k - 1.0) * x**3
        - 48.0 * k * x
    )


def l_k(p, x):
    """First-order correction (sigma^2/2k) [(2k-1) x^2 - 2x] e^{-x}."""
    poly = _l_poly(p, x)
    return 0.0 if poly == 0 else poly * _exp(-x)


def w_k(p, x):
    """Second-order correction of n log F(u(x, b_n)) + e^{-x}."""
    poly = _w_poly(p, x)
    return 0.0 if poly == 0 else poly * _exp(-x)


def w_k_printed(p, x):
    """w_k as originally stated; differs from :func:`w_k` by -(sigma^4/k^2) x^2 e^{-x}."""
    poly = _w_poly(p, x) - p.sigma**4 / p.k**2 * x * x
    return 0.0 if poly == 0 else poly * _exp(-x)


# --- density factor ----------------------------------------------------------

def density_first(p, x):
    """b^{-2k} coefficient of (sigma^2/k) n f(u(x,b_n)) e^x / b^{2k-1}."""
    k = p.k
    return -p.sigma**2 * ((2.0 * k - 1.0) / (2.0 * k) * x * x - 2.0 * x + 1.0 / k)


def density_second(p, x, cubic=None):
    """b^{-4k} coefficient of the same density factor."""
    k = p.k
    if cubic is None:
        cubic = (2.0 * k - 1.0) * (4.0 * k - 1.0) / (3.0 * k)
    return p.sigma**4 / k * (
        (2.0 * k - 1.0) ** 2 / (8.0 * k) * x**4
        - cubic * x**3
        + (2.0 * k + 1.0) * (2.0 * k - 1.0) / (2.0 * k) * x * x
        - 2.0 * x
        + 2.0
    )


def density_second_printed(p, x):
    k = p.k
    return density_second(p, x, cubic=(2.0 * k + 1.0) * (4.0 * k - 1.0) / (3.0 * k))


# --- joint coefficients ------------------------------------------------------

@dataclass(frozen=True)
class ExpansionCoeffs:
    l_x: float
    w_x: float
    l_joint: float
    w_joint: float
    c1: float
    c2: float


def _c2(p, x, y, l_joint, w_joint, cubic):
    k, s2 = p.k, p.sigma**2
    q = (2.0 * k - 1.0) / (2.0 * k)
    bracket = q * (x * x + y * y) - 2.0 * (x - y) + 2.0 / k
    quartic = (
        (2.0 * k - 1.0) ** 2 / (8.0 * k) * (x**4 + y**4)
        - cubic * (x**3 - y**3)
        + (2.0 * k + 1.0) * (2.0 * k - 1.0) / (2.0 * k) * (x * x + y * y)
        - 2.0 * (x - y)
        + 4.0
    )
    cross = (q * x * x - 2.0 * x + 1.0 / k) * (q * y * y + 2.0 * y + 1.0 / k)
    return (
        s2 * s2 * (quartic / k + cross)
        - s2 * bracket * l_joint
        + w_joint
        + 0.5 * l_joint * l_joint
    )


def joint_coeffs(p, x, y, printed=False):
    """l_k(x), w_k(x), the joint sums and the density coefficients C1, C2.

    ``printed=True`` swaps in the originally stated w_k and cubic density term.
    """
    k = p.k
    w = w_k_printed if printed else w_k
    l_x, w_x = l_k(p, x), w(p, x)
    l_joint = l_x + l_k(p, -y)
    w_joint = w_x + w(p, -y)
    bracket = (2.0 * k - 1.0) / (2.0 * k) * (x * x + y * y) - 2.0 * (x - y) + 2.0 / k
    c1 = l_joint - p.sigma**2 * bracket
    if printed:
        cubic = (2.0 * k + 1.0) * (4.0 * k - 1.0) / (3.0 * k)
    else:
        cubic = (2.0 * k - 1.0) * (4.0 * k - 1.0) / (3.0 * k)
    c2 = _c2(p, x, y, l_joint, w_joint, cubic)
    return ExpansionCoeffs(l_x=l_x, w_x=w_x, l_joint=l_joint, w_joint=w_joint, c1=c1, c2=c2)


def c2_printed(p, x, y):
    return joint_coeffs(p, x, y, printed=True).c2


# --- approximants --------------------------------------------------------------

def _max_corrections(p, x, printed=False):
    l = l_k(p, x)
    w = (w_k_printed if printed else w_k)(p, x)
    return l, w + 0.5 * l * l


def approx_max_cdf(p, nm, x, ord, printed=False):
    ord = ApproxOrder.parse(ord)
    lam = gumbel(x)
    if lam == 0.0:
        return 0.0
    inv = nm.inv_b_pow_2k
    first, second = _max_corrections(p, x, printed)
    value = lam
    if ord >= ApproxOrder.SECOND:
        value += inv * first * lam
    if ord >= ApproxOrder.THIRD:
        value += inv * inv * second * lam
    return value


def approx_min_cdf(p, nm, y, ord, printed=False):
    ord = ApproxOrder.parse(ord)
    lam = gumbel(-y)
    if lam == 0.0:
        return 1.0
    inv = nm.inv_b_pow_2k
    first, second = _max_corrections(p, -y, printed)
    value = 1.0 - lam
    if ord >= ApproxOrder.SECOND:
        value -= inv * first * lam
    if ord >= ApproxOrder.THIRD:
        value -= inv * inv * second * lam
    return value


def approx_joint_cdf(p, nm, x, y, ord, printed=False):
    """S_1, S_2 or S_3 at (x, y); unclamped."""
    ord = ApproxOrder.parse(ord)
    lx, ly = gumbel(x), gumbel(-y)
    if lx == 0.0:
        return 0.0
    if ly == 0.0:
        return approx_max_cdf(p, nm, x, ord, printed)
    inv = nm.inv_b_pow_2k
    value = lx - lx * ly
    if ord >= ApproxOrder.SECOND:
        c = joint_coeffs(p, x, y, printed)
        value += inv * (c.l_x * lx - c.l_joint * lx * ly)
        if ord >= ApproxOrder.THIRD:
            value += inv * inv * (
                (c.w_x + 0.5 * c.l_x**2) * lx
                - (c.w_joint + 0.5 * c.l_joint**2) * lx * ly
            )
    return value


def limit_joint_pdf(x, y):
    """g(x, y) = Lambda(x) Lambda(-y) e^{-x} e^{y}."""
    # log form: both double exponentials at once
    log_g = -_exp(-x) - _exp(y) - x + y
    return math.exp(log_g) if log_g > -746.0 else 0.0


def approx_joint_pdf(p, nm, x, y, ord, printed=False):
    """T_1, T_2 or T_3 at (x, y)."""
    ord = ApproxOrder.parse(ord)
    g = limit_joint_pdf(x, y)
    if g == 0.0:
        return 0.0
    if ord == ApproxOrder.FIRST:
        return g
    inv = nm.inv_b_pow_2k
    c = joint_coeffs(p, x, y, printed)
    factor = 1.0 + c.c1 * inv
    if ord >= ApproxOrder.THIRD:
        factor += c.c2 * inv * inv
    return g * factor
