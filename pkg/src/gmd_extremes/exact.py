"""Exact finite-n laws of the normalized partial maximum and minimum.

With u = u(x, b_n), v = v(y, b_n) = -u(-y, b_n) and the symmetric law,
F(v) = 1 - F(u(-y)), so both small tails are upper tails evaluated at
gamma-scale arguments next to t = b^{2k}/(2 sigma^2). Powers F^n go through
log1p of those tails and are never formed from 1 - cdf.
"""

import math
from dataclasses import dataclass

from .errors import DomainError
from .gmd import half_tail_z, log_pdf_z, pdf, sf
from .norming import u_level, u_z, v_level


@dataclass(frozen=True)
class JointPoint:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise DomainError(f"joint point must be finite, got ({self.x}, {self.y})")


def _log1m(s):
    # log(1 - s) for a tail probability; -inf once the tail is the whole mass
    return math.log1p(-s) if s < 1.0 else -math.inf


def _pow_n(n, s):
    # (1 - s)^n
    lg = n * _log1m(s)
    return math.exp(lg) if lg > -math.inf else 0.0


def upper_tail(p, nm, x):
    """1 - F(u(x, b_n))."""
    if u_level(p, nm, x) > 0:
        return half_tail_z(p, u_z(p, nm, x))
    return sf(p, u_level(p, nm, x))


def lower_tail(p, nm, y):
    """F(v(y, b_n)), equal to 1 - F(u(-y, b_n))."""
    return upper_tail(p, nm, -y)


def _log_pdf_at_level(p, nm, x):
    # log f(u(x, b_n)); -inf where the density vanishes
    if u_level(p, nm, x) == 0:
        return -math.inf
    z = u_z(p, nm, x) if u_level(p, nm, x) > 0 else p.z_of(u_level(p, nm, x))
    return log_pdf_z(p, z)


def exact_max_cdf(p, nm, x):
    """P(M_n <= u(x, b_n)) = F(u)^n."""
    return _pow_n(nm.n, upper_tail(p, nm, x))


def exact_min_cdf(p, nm, y):
    """P(m_n <= v(y, b_n)) = 1 - (1 - F(v))^n."""
    return -math.expm1(nm.n * _log1m(lower_tail(p, nm, y)))


def _coerce(pt):
    return pt if isinstance(pt, JointPoint) else JointPoint(*pt)


def exact_joint_cdf(p, nm, pt):
    """P(M_n <= u, m_n <= v) = F(u)^n - [F(u) - F(v)]^n."""
    pt = _coerce(pt)
    if v_level(p, nm, pt.y) >= u_level(p, nm, pt.x):
        return exact_max_cdf(p, nm, pt.x)
    s_u = upper_tail(p, nm, pt.x)
    c_v = lower_tail(p, nm, pt.y)
    if s_u >= 1.0:
        return 0.0
    # [F(u) - F(v)]^n / F(u)^n = (1 - F(v)/F(u))^n
    ratio_log = nm.n * _log1m(c_v / (1.0 - s_u))
    return _pow_n(nm.n, s_u) * -math.expm1(ratio_log)


def exact_joint_cdf_product(p, nm, pt):
    """Same probability via the direct difference F(u)^n - [F(u) - F(v)]^n."""
    pt = _coerce(pt)
    if v_level(p, nm, pt.y) >= u_level(p, nm, pt.x):
        return exact_max_cdf(p, nm, pt.x)
    s_u = upper_tail(p, nm, pt.x)
    c_v = lower_tail(p, nm, pt.y)
    return _pow_n(nm.n, s_u) - _pow_n(nm.n, s_u + c_v)


def log_exact_joint_pdf(p, nm, pt):
    pt = _coerce(pt)
    if u_level(p, nm, pt.x) <= v_level(p, nm, pt.y):
        return -math.inf
    n, k = nm.n, p.k
    s_u = upper_tail(p, nm, pt.x)
    c_v = lower_tail(p, nm, pt.y)
    log_prefactor = (
        2.0 * math.log(p.sigma**2 / k)
        + (2.0 - 4.0 * k) * math.log(nm.b)
        + math.log(n)
        + math.log(n - 1.0)
    )
    # f is even, so f(v(y)) = f(u(-y))
    return (
        log_prefactor
        + (n - 2.0) * _log1m(s_u + c_v)
        + _log_pdf_at_level(p, nm, pt.x)
        + _log_pdf_at_level(p, nm, -pt.y)
    )


def exact_joint_pdf(p, nm, pt):
    """Density g_n of the normalized pair (M_n, m_n); zero where u <= v."""
    lg = log_exact_joint_pdf(p, nm, pt)
    return math.exp(lg) if lg > -745.0 else 0.0


def h_k_functional(p, nm, pt):
    """n log[F(u) - F(v)] + e^{-x} + e^{y}."""
    pt = _coerce(pt)
    if u_level(p, nm, pt.x) <= v_level(p, nm, pt.y):
        raise DomainError(f"h_k needs u > v; got x={pt.x}, y={pt.y} at n={nm.n}")
    s_u = upper_tail(p, nm, pt.x)
    c_v = lower_tail(p, nm, pt.y)
    return nm.n * _log1m(s_u + c_v) + math.exp(-pt.x) + math.exp(pt.y)


def density_factor(p, nm, x):
    """(sigma^2/k) n f(u(x, b_n)) e^{x} / b^{2k-1}; tends to 1."""
    k = p.k
    log_val = (
        math.log(p.sigma**2 / k)
        + math.log(nm.n)
        + _log_pdf_at_level(p, nm, x)
        + x
        - (2.0 * k - 1.0) * math.log(nm.b)
    )
    return math.exp(log_val)


def density_factor_min(p, nm, y):
    """(sigma^2/k) n f(v(y, b_n)) e^{-y} / b^{2k-1}."""
    return density_factor(p, nm, -y)
