"""Norming constant b_n solving 1 - F(b_n) = 1/n, and the affine levels
u(x, b_n) = (sigma^2/k) b_n^{1-2k} x + b_n and v(y, b_n) = -u(-y, b_n)."""

import math
from dataclasses import dataclass

from .errors import DomainError
from .specfun import inv_reg_gamma_q

N_MIN = 3.0
N_MAX = 1e300


@dataclass(frozen=True)
class Norming:
    """A (real) sample size with its norming constant.

    ``t`` is b^{2k} / (2 sigma^2), the gamma-scale position of b, so that
    Q(a, t) = 2/n.
    """

    n: float
    b: float
    b_pow_2k: float
    t: float

    @property
    def inv_b_pow_2k(self):
        """The expansion parameter b_n^{-2k}."""
        return 1.0 / self.b_pow_2k


def solve_norming(p, n):
    if not math.isfinite(n) or n < N_MIN:
        raise DomainError(
            f"n must be >= 3, got {n} (norming degenerate at or below the median: b_2 = 0)"
        )
    if n > N_MAX:
        raise DomainError(f"n must be <= 1e300 so that 2/n stays representable, got {n}")
    t = inv_reg_gamma_q(p.a, 2.0 / n)
    b_pow_2k = 2.0 * p.sigma**2 * t
    b = b_pow_2k ** (1.0 / (2.0 * p.k))
    return Norming(n=float(n), b=b, b_pow_2k=b_pow_2k, t=t)


def slope(p, nm):
    """Scale of both levels: (sigma^2/k) b^{1-2k}."""
    return p.sigma**2 / p.k * nm.b / nm.b_pow_2k


def u_level(p, nm, x):
    return slope(p, nm) * x + nm.b


def v_level(p, nm, y):
    return -u_level(p, nm, -y)


def u_z(p, nm, x):
    """|u(x, b_n)|^{2k} / (2 sigma^2), computed relative to t to keep digits.

    u = b (1 + eps x) with eps = (sigma^2/k) b^{-2k}, so z = t (1 + eps x)^{2k}.
    """
    eps_x = p.sigma**2 / p.k * x / nm.b_pow_2k
    if eps_x > -1.0:
        return nm.t * math.exp(2.0 * p.k * math.log1p(eps_x))
    return p.z_of(u_level(p, nm, x))
