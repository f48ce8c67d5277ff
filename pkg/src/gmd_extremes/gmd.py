"""The generalized Maxwell distribution GMD(k) with scale sigma.

The law used here is the symmetric two-sided one on the whole real line,

    f(x) = c_k |x|^{2k} exp(-|x|^{2k} / (2 sigma^2)),

so that the minimum of a sample is the mirror image of the maximum and
F(-x) = 1 - F(x). With z = |x|^{2k} / (2 sigma^2), the half-line mass above
|x| is Q(a, z) / 2 where a = 1 + 1/(2k).
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .specfun import RegGammaArgs, inv_reg_gamma_q, log_reg_gamma_q, reg_gamma_q


@dataclass(frozen=True)
class GmdParams:
    """Shape ``k`` and scale ``sigma``; ``a`` and ``log_norm`` are derived."""

    k: float
    sigma: float = 1.0
    a: float = field(init=False, repr=False)
    log_norm: float = field(init=False, repr=False)

    def __post_init__(self):
        if not (math.isfinite(self.k) and self.k > 0):
            raise DomainError(f"shape k must be a positive finite number, got {self.k}")
        if not (math.isfinite(self.sigma) and self.sigma > 0):
            raise DomainError(f"scale sigma must be a positive finite number, got {self.sigma}")
        a = 1.0 + 1.0 / (2.0 * self.k)
        # c_k = k / (2^{a} sigma^{2 + 1/k} Gamma(a))
        log_norm = (
            math.log(self.k)
            - a * math.log(2.0)
            - (2.0 + 1.0 / self.k) * math.log(self.sigma)
            - math.lgamma(a)
        )
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "log_norm", log_norm)

    def z_of(self, x):
        """Gamma-scale argument |x|^{2k} / (2 sigma^2)."""
        return abs(x) ** (2.0 * self.k) / (2.0 * self.sigma**2)


def log_pdf_z(p, z):
    """log f at a point with |x|^{2k} / (2 sigma^2) = z > 0."""
    # |x|^{2k} = 2 sigma^2 z
    return p.log_norm + math.log(2.0 * p.sigma**2 * z) - z


def pdf(p, x):
    if x == 0:
        return 0.0
    return math.exp(log_pdf_z(p, p.z_of(x)))


def half_tail_z(p, z):
    """P(X > x) for x >= 0 given z = z_of(x); relative accuracy kept."""
    return 0.5 * reg_gamma_q(RegGammaArgs(p.a, z))


def sf(p, x):
    """Survival function 1 - F(x)."""
    if x >= 0:
        return half_tail_z(p, p.z_of(x))
    return 1.0 - half_tail_z(p, p.z_of(x))


def log_sf(p, x):
    """log(1 - F(x)); stays finite where sf itself underflows (x >> b_{1e300})."""
    if x > 0:
        return log_reg_gamma_q(p.a, p.z_of(x)) - math.log(2.0)
    return math.log(sf(p, x))


def cdf(p, x):
    """F(x); cdf(-x) and cdf(x) come from one tail evaluation."""
    if x == 0:
        return 0.5
    tail = half_tail_z(p, p.z_of(x))
    return tail if x < 0 else 1.0 - tail


def quantile(p, q):
    """Inverse cdf, solved on whichever tail is nearer to q."""
    if not 0.0 < q < 1.0:
        raise DomainError(f"quantile level must lie in (0, 1), got {q}")
    if q == 0.5:
        return 0.0
    tail = 1.0 - q if q > 0.5 else q
    z = inv_reg_gamma_q(p.a, 2.0 * tail)
    x = (2.0 * p.sigma**2 * z) ** (1.0 / (2.0 * p.k))
    return x if q > 0.5 else -x


def sample(p, rng, count):
    """Draw ``count`` iid variates: random sign times (2 sigma^2 G)^{1/(2k)}, G ~ Gamma(a)."""
    if count < 1:
        raise DomainError(f"count must be a positive integer, got {count}")
    g = rng.standard_gamma(p.a, size=count)
    sign = np.where(rng.random(count) < 0.5, -1.0, 1.0)
    return sign * (2.0 * p.sigma**2 * g) ** (1.0 / (2.0 * p.k))


def log_mills_tail(p, x, terms=3):
    """Log of :func:`mills_tail`; stays finite where the tail underflows."""
    if x <= 0:
        raise DomainError(f"mills_tail needs x > 0, got {x}")
    if terms not in (1, 2, 3):
        raise DomainError(f"terms must be 1, 2 or 3, got {terms}")
    k, s2 = p.k, p.sigma**2
    r = s2 / k * x ** (-2.0 * k)
    series = 1.0
    if terms >= 2:
        series += r
    if terms >= 3:
        series += (1.0 - 2.0 * k) * r * r
    return log_pdf_z(p, p.z_of(x)) + math.log(s2 / k) + (1.0 - 2.0 * k) * math.log(x) + math.log(series)


def mills_tail(p, x, terms=3):
    """Mills-ratio approximation of sf(x) for large x, truncated to ``terms`` factors.

    f(x) (sigma^2/k) x^{1-2k} [1 + (sigma^2/k) x^{-2k} + ((1-2k)/k^2) sigma^4 x^{-4k}]
    """
    return math.exp(log_mills_tail(p, x, terms))
