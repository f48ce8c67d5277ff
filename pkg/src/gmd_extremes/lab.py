"""Numerical experiments: error tables, limit probes, rate fits and Monte
Carlo block extremes.

Probe functionals are evaluated from the exact law and the norming
constant only; their targets come from :mod:`gmd_extremes.expansions`.
A mistake on either side shows up as a gap.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import expansions as ex
from .errors import DomainError, NumericError, UsageError
from .exact import (
    JointPoint,
    density_factor,
    density_factor_min,
    exact_joint_cdf,
    exact_joint_pdf,
    exact_min_cdf,
    h_k_functional,
    upper_tail,
)
from .gmd import sample
from .norming import solve_norming, u_level, v_level

DEFAULT_N_GRID = (1e6, 1e12, 1e24)
RATE_N_GRID = tuple(10.0 ** (6.0 * 2.0 ** (j / 2.0)) for j in range(5))
MC_BUDGET = 1e9
MC_CHUNK = 5000


def max_workers():
    raw = os.environ.get("GMD_EXTREMES_THREADS")
    if raw is None:
        return min(8, os.cpu_count() or 1)
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"GMD_EXTREMES_THREADS must be a positive integer, got {raw!r}")
    if value < 1:
        raise UsageError(f"GMD_EXTREMES_THREADS must be a positive integer, got {raw!r}")
    return value


# --- error tables ----------------------------------------------------------------

@dataclass(frozen=True)
class ErrorRecord:
    k: float
    sigma: float
    n: float
    x: float
    y: float
    b: float
    exact_cdf: float
    s1: float
    s2: float
    s3: float
    delta1: float
    delta2: float
    delta3: float
    exact_pdf: float
    t1: float
    t2: float
    t3: float
    theta1: float
    theta2: float
    theta3: float


ERROR_COLUMNS = tuple(ErrorRecord.__dataclass_fields__)


def error_record(p, nm, x, y, printed=False):
    pt = JointPoint(x, y)
    cdf = exact_joint_cdf(p, nm, pt)
    pdf = exact_joint_pdf(p, nm, pt)
    s = [ex.approx_joint_cdf(p, nm, x, y, o, printed) for o in ex.ApproxOrder]
    t = [ex.approx_joint_pdf(p, nm, x, y, o, printed) for o in ex.ApproxOrder]
    return ErrorRecord(
        k=p.k, sigma=p.sigma, n=nm.n, x=x, y=y, b=nm.b,
        exact_cdf=cdf, s1=s[0], s2=s[1], s3=s[2],
        delta1=abs(cdf - s[0]), delta2=abs(cdf - s[1]), delta3=abs(cdf - s[2]),
        exact_pdf=pdf, t1=t[0], t2=t[1], t3=t[2],
        theta1=abs(pdf - t[0]), theta2=abs(pdf - t[1]), theta3=abs(pdf - t[2]),
    )


def error_table(p, n_list, x_grid, y_grid, printed=False):
    """One :class:`ErrorRecord` per (n, x, y), in that nesting order."""
    records = []
    for n in n_list:
        nm = solve_norming(p, n)
        for x in x_grid:
            for y in y_grid:
                records.append(error_record(p, nm, float(x), float(y), printed))
    return records


# --- Richardson extrapolation and limit probes --------------------------------------

def richardson_extrapolate(t_grid, values):
    """Value at t = 0 of the interpolating polynomial through (t_i, v_i)."""
    t = [float(v) for v in t_grid]
    v = [float(v) for v in values]
    if len(t) != len(v):
        raise DomainError("t_grid and values must have equal length")
    if len(t) < 2:
        raise DomainError("Richardson extrapolation needs at least two points")
    if len(set(t)) != len(t):
        raise DomainError(f"duplicate abscissae in t_grid: {t}")
    if any(b >= a for a, b in zip(t, t[1:])):
        raise DomainError(f"t_grid must be strictly decreasing, got {t}")
    # Lagrange basis evaluated at zero
    limit = 0.0
    for i, ti in enumerate(t):
        w = 1.0
        for j, tj in enumerate(t):
            if j != i:
                w *= tj / (tj - ti)
        limit += w * v[i]
    return limit


@dataclass
class ProbeResult:
    functional_id: str
    stage: int
    k: float
    sigma: float
    x: float
    y: float
    n_grid: list
    t_grid: list
    values: list
    extrapolated: float
    target: float
    abs_gap: float
    rel_gap: float = field(default=math.nan)

    def to_dict(self):
        return asdict(self)


def _lemma42(p, nm, pt):
    # n log F(u) + e^{-x}
    return nm.n * math.log1p(-upper_tail(p, nm, pt.x)) + math.exp(-pt.x)


def _prop21(p, nm, pt):
    return exact_min_cdf(p, nm, pt.y) - (1.0 - ex.gumbel(-pt.y))


def _thm22(p, nm, pt):
    lx = ex.gumbel(pt.x)
    return exact_joint_cdf(p, nm, pt) - (lx - lx * ex.gumbel(-pt.y))


def _thm23(p, nm, pt):
    g = ex.limit_joint_pdf(pt.x, pt.y)
    return (exact_joint_pdf(p, nm, pt) - g) / g


def _eq415(p, nm, pt):
    return density_factor(p, nm, pt.x) - 1.0


def _eq416(p, nm, pt):
    return density_factor_min(p, nm, pt.y) - 1.0


def _targets_lemma42(p, pt, printed):
    w = ex.w_k_printed if printed else ex.w_k
    return ex.l_k(p, pt.x), w(p, pt.x)


def _targets_lemma43(p, pt, printed):
    c = ex.joint_coeffs(p, pt.x, pt.y, printed)
    return c.l_joint, c.w_joint


def _targets_prop21(p, pt, printed):
    l, second = ex._max_corrections(p, -pt.y, printed)
    lam = ex.gumbel(-pt.y)
    return -l * lam, -second * lam


def _targets_thm22(p, pt, printed):
    c = ex.joint_coeffs(p, pt.x, pt.y, printed)
    lx, ly = ex.gumbel(pt.x), ex.gumbel(-pt.y)
    first = c.l_x * lx - c.l_joint * lx * ly
    second = (c.w_x + 0.5 * c.l_x**2) * lx - (c.w_joint + 0.5 * c.l_joint**2) * lx * ly
    return first, second


def _targets_thm23(p, pt, printed):
    c = ex.joint_coeffs(p, pt.x, pt.y, printed)
    return c.c1, c.c2


def _targets_eq415(p, pt, printed):
    second = ex.density_second_printed if printed else ex.density_second
    return ex.density_first(p, pt.x), second(p, pt.x)


def _targets_eq416(p, pt, printed):
    second = ex.density_second_printed if printed else ex.density_second
    return ex.density_first(p, -pt.y), second(p, -pt.y)


# id -> (functional whose b^{2k}-scaled limit is the first target, targets)
PROBES = {
    "lemma42": (_lemma42, _targets_lemma42),
    "lemma43": (h_k_functional, _targets_lemma43),
    "prop21": (_prop21, _targets_prop21),
    "thm22": (_thm22, _targets_thm22),
    "thm23": (_thm23, _targets_thm23),
    "eq415": (_eq415, _targets_eq415),
    "eq416": (_eq416, _targets_eq416),
}


def _check_n_grid(n_grid):
    n_grid = [float(n) for n in n_grid]
    if len(n_grid) < 2:
        raise DomainError("n_grid needs at least two points")
    if any(b <= a for a, b in zip(n_grid, n_grid[1:])):
        raise DomainError(f"n_grid must be strictly increasing, got {n_grid}")
    return n_grid


def limit_probe(functional_id, p, pt, n_grid=DEFAULT_N_GRID, stage=1, printed=False):
    """Evaluate one stage of a catalogued limit statement and extrapolate.

    Stage 1 is b^{2k} * F_n -> first target; stage 2 is
    b^{2k} (b^{2k} F_n - first target) -> second target.
    """
    if functional_id not in PROBES:
        raise UsageError(f"unknown probe id {functional_id!r}; choose from {sorted(PROBES)}")
    if stage not in (1, 2):
        raise UsageError(f"stage must be 1 or 2, got {stage}")
    pt = pt if isinstance(pt, JointPoint) else JointPoint(*pt)
    n_grid = _check_n_grid(n_grid)
    functional, targets = PROBES[functional_id]
    first, second = targets(p, pt, printed)
    t_grid, values = [], []
    for n in n_grid:
        nm = solve_norming(p, n)
        scaled = nm.b_pow_2k * functional(p, nm, pt)
        if stage == 2:
            scaled = nm.b_pow_2k * (scaled - first)
        t_grid.append(nm.inv_b_pow_2k)
        values.append(scaled)
    extrapolated = richardson_extrapolate(t_grid, values)
    target = first if stage == 1 else second
    gap = abs(extrapolated - target)
    return ProbeResult(
        functional_id=functional_id, stage=stage, k=p.k, sigma=p.sigma,
        x=pt.x, y=pt.y, n_grid=n_grid, t_grid=t_grid, values=values,
        extrapolated=extrapolated, target=target, abs_gap=gap,
        rel_gap=gap / abs(target) if target != 0 else math.inf if gap else 0.0,
    )


def probe_both_stages(functional_id, p, pt, n_grid=DEFAULT_N_GRID, printed=False):
    return [limit_probe(functional_id, p, pt, n_grid, s, printed) for s in (1, 2)]


# --- convergence rates --------------------------------------------------------------

def rate_fit(p, pt, ord, n_grid=RATE_N_GRID, kind="cdf", printed=False):
    """Least-squares slope of log(abs error) against log b_n^{-2k}."""
    ord = ex.ApproxOrder.parse(ord)
    if kind not in ("cdf", "pdf"):
        raise UsageError(f"kind must be 'cdf' or 'pdf', got {kind!r}")
    pt = pt if isinstance(pt, JointPoint) else JointPoint(*pt)
    n_grid = _check_n_grid(n_grid)
    log_t, log_err, bad = [], [], []
    for n in n_grid:
        nm = solve_norming(p, n)
        rec = error_record(p, nm, pt.x, pt.y, printed)
        err = getattr(rec, ("delta" if kind == "cdf" else "theta") + str(int(ord)))
        if not (err > 0 and math.isfinite(err)):
            bad.append(n)
            continue
        log_t.append(math.log(nm.inv_b_pow_2k))
        log_err.append(math.log(err))
    if bad:
        raise NumericError(f"zero or non-finite errors at n = {bad}")
    slope, _ = np.polyfit(log_t, log_err, 1)
    return float(slope)


# --- Monte Carlo ------------------------------------------------------------------------

@dataclass
class McSummary:
    n: int
    reps: int
    seed: int
    grid: list
    empirical: list
    exact: list
    empirical_max: list
    max_abs_dev: float
    se_bound: float

    def to_dict(self):
        d = asdict(self)
        d["grid"] = [[pt.x, pt.y] for pt in self.grid]
        return d


def _block_extremes(p, n, reps, seed, chunk):
    rng = np.random.default_rng([seed, chunk])
    draws = sample(p, rng, n * reps).reshape(reps, n)
    return draws.max(axis=1), draws.min(axis=1)


def mc_block_extremes(p, n, reps, seed, grid):
    """Empirical frequencies of {M_n <= u(x), m_n <= v(y)} over ``reps`` blocks.

    Replications are split into fixed chunks, each seeded from (seed, chunk
    index), so results do not depend on the number of worker threads.
    """
    n, reps = int(n), int(reps)
    if n < 3:
        raise DomainError(f"block size n must be >= 3, got {n}")
    if reps < 1:
        raise DomainError(f"reps must be positive, got {reps}")
    if n * reps > MC_BUDGET:
        raise UsageError(f"n * reps = {n * reps:.3g} exceeds the budget of {MC_BUDGET:.0e} draws")
    grid = [pt if isinstance(pt, JointPoint) else JointPoint(*pt) for pt in grid]
    if not grid:
        raise UsageError("Monte Carlo grid must be nonempty")
    sizes = [min(MC_CHUNK, reps - start) for start in range(0, reps, MC_CHUNK)]
    with ThreadPoolExecutor(max_workers=max_workers()) as pool:
        parts = list(pool.map(lambda ic: _block_extremes(p, n, ic[1], seed, ic[0]), enumerate(sizes)))
    maxima = np.concatenate([m for m, _ in parts])
    minima = np.concatenate([m for _, m in parts])

    nm = solve_norming(p, n)
    empirical, exact, emp_max = [], [], []
    for pt in grid:
        below_u = maxima <= u_level(p, nm, pt.x)
        emp_max.append(float(below_u.mean()))
        empirical.append(float((below_u & (minima <= v_level(p, nm, pt.y))).mean()))
        exact.append(exact_joint_cdf(p, nm, pt))
    dev = max(abs(e - q) for e, q in zip(empirical, exact))
    se = 4.0 * max(math.sqrt(q * (1.0 - q) / reps) for q in exact)
    return McSummary(
        n=n, reps=reps, seed=seed, grid=grid, empirical=empirical, exact=exact,
        empirical_max=emp_max, max_abs_dev=dev, se_bound=se,
    )
