"""Special functions: log-gamma, regularized incomplete gamma P/Q, the
inverse of Q, and erfc.

P is summed as a power series for t < a + 1, Q as a Lentz continued
fraction for t >= a + 1; each takes the other's region via the complement.
Q keeps relative accuracy deep into the tail (down to ~1e-300), which the
norming and exact-law code depend on.
"""

import math
from dataclasses import dataclass

from .errors import DomainError, NumericError

_EPS = 2.220446049250313e-16
_TINY = 1e-300
_MAX_ITER = 1000


@dataclass(frozen=True)
class RegGammaArgs:
    a: float
    t: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.t)):
            raise DomainError(f"non-finite incomplete gamma argument (a={self.a}, t={self.t})")
        if self.a <= 0:
            raise DomainError(f"gamma shape must be positive, got a={self.a}")
        if self.t < 0:
            raise DomainError(f"incomplete gamma argument must be >= 0, got t={self.t}")


def ln_gamma(z):
    """log Gamma(z) for real z > 0."""
    if not math.isfinite(z) or z <= 0:
        raise DomainError(f"ln_gamma needs finite z > 0, got {z}")
    return math.lgamma(z)


def erfc(x):
    """Complementary error function."""
    return math.erfc(x)


def _log_prefactor(a, t):
    # log(t^a e^-t / Gamma(a))
    return a * math.log(t) - t - math.lgamma(a)


def _series_sum(a, t):
    # sum_{n>=0} t^n / ((a+1)...(a+n)); P = prefactor * sum / a
    ap = a
    term = 1.0 / a
    total = term
    for _ in range(_MAX_ITER):
        ap += 1.0
        term *= t / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            return total
    raise NumericError(f"incomplete gamma series did not converge (a={a}, t={t})")


def _cont_frac(a, t):
    # modified Lentz evaluation of Q / prefactor
    b = t + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise NumericError(f"incomplete gamma continued fraction did not converge (a={a}, t={t})")


def log_reg_gamma_q(a, t):
    """log Q(a, t), finite even where Q itself would underflow."""
    RegGammaArgs(a, t)
    if t == 0:
        return 0.0
    if t < a + 1.0:
        p = math.exp(_log_prefactor(a, t)) * _series_sum(a, t)
        return math.log1p(-p)
    return _log_prefactor(a, t) + math.log(_cont_frac(a, t))


def reg_gamma_p(args):
    """Regularized lower incomplete gamma P(a, t)."""
    a, t = args.a, args.t
    if t == 0:
        return 0.0
    if t < a + 1.0:
        return min(1.0, math.exp(_log_prefactor(a, t)) * _series_sum(a, t))
    return 1.0 - math.exp(_log_prefactor(a, t)) * _cont_frac(a, t)


def reg_gamma_q(args):
    """Regularized upper incomplete gamma Q(a, t) = 1 - P(a, t)."""
    a, t = args.a, args.t
    if t == 0:
        return 1.0
    if t < a + 1.0:
        return 1.0 - math.exp(_log_prefactor(a, t)) * _series_sum(a, t)
    return math.exp(_log_prefactor(a, t)) * _cont_frac(a, t)


def inv_reg_gamma_q(a, q):
    """Solve Q(a, t) = q for t >= 0.

    Brackets the root by doubling/halving t, then runs Newton on log t,
    falling back to bisection whenever a step leaves the bracket.
    """
    if not (math.isfinite(a) and a > 0):
        raise DomainError(f"gamma shape must be positive, got a={a}")
    if not 0.0 < q < 1.0:
        raise DomainError(f"q must lie in (0, 1), got {q}")
    log_q = math.log(q)

    def g(s):
        return log_reg_gamma_q(a, math.exp(s)) - log_q

    # bracket [lo, hi] in s = log t with g(lo) > 0 > g(hi)
    s = math.log(max(a, -log_q))
    lo = hi = s
    while g(lo) <= 0:
        lo -= 1.0
        if lo < -745:
            return 0.0
    while g(hi) >= 0:
        hi += 1.0
        if hi > 710:
            raise NumericError(f"could not bracket Q(a, t) = {q} (a={a})")
    tol = max(1e-14, 4 * _EPS * abs(log_q))
    s = 0.5 * (lo + hi)
    for _ in range(200):
        gs = g(s)
        if abs(gs) <= tol:
            return math.exp(s)
        if gs > 0:
            lo = s
        else:
            hi = s
        t = math.exp(s)
        # d log Q / d log t = -t * density / Q
        log_dens = (a - 1.0) * math.log(t) - t - math.lgamma(a)
        slope = -t * math.exp(log_dens - log_reg_gamma_q(a, t))
        s_new = s - gs / slope if slope != 0 else 0.5 * (lo + hi)
        if not lo < s_new < hi:
            s_new = 0.5 * (lo + hi)
        if hi - lo <= 2 * _EPS * max(1.0, abs(s)):
            return math.exp(s_new)
        s = s_new
    raise NumericError(
        f"inv_reg_gamma_q failed to converge in 200 iterations (a={a}, q={q}, "
        f"bracket t in [{math.exp(lo)}, {math.exp(hi)}], last residual {g(s)})"
    )
