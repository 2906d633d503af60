"""Random-matrix baselines and spectrum-level checks.

Covers the Marchenko-Pastur and quartercircle reference laws, stable-rank
entropy bounds, the log-scaling fit for attention-matrix entropy, and the
output-collapse check.  Eigenvalue inputs here are spectra of symmetric
PSD operators; they are normalized to probabilities p = lambda / sum(lambda).
Entropies in this module are natural-log unless a base is passed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .entropy import binary_entropy, normalize_spectrum, renyi, von_neumann
from .errors import DegenerateInputError, InvalidArgumentError


def sample_gaussian_matrix(rows: int, cols: int, seed) -> np.ndarray:
    """i.i.d. standard normal entries from a seeded generator."""
    if rows < 1 or cols < 1:
        raise InvalidArgumentError("matrix dimensions must be >= 1")
    rng = np.random.default_rng(seed)
    return rng.standard_normal((rows, cols))


# ---------------------------------------------------------------------------
# Reference spectral laws


def mp_support(c: float) -> tuple[float, float]:
    """Support edges [(1-sqrt(c))^2, (1+sqrt(c))^2] of the MP law."""
    if not 0.0 < c <= 1.0:
        raise InvalidArgumentError(f"aspect ratio c must be in (0, 1], got {c}")
    root = math.sqrt(c)
    return (1.0 - root) ** 2, (1.0 + root) ** 2


def mp_density(x, c: float):
    """Marchenko-Pastur density with aspect ratio c, zero off support."""
    lo, hi = mp_support(c)
    arr = np.asarray(x, dtype=np.float64)
    inside = (arr > lo) & (arr < hi)
    out = np.zeros_like(arr)
    xs = arr[inside]
    out[inside] = np.sqrt((hi - xs) * (xs - lo)) / (2.0 * np.pi * c * xs)
    if np.isscalar(x):
        return float(out)
    return out


def quartercircle_density(x, sigma: float):
    """Quartercircle density on [0, 2 sigma]; its second moment is sigma^2."""
    if sigma <= 0:
        raise InvalidArgumentError(f"sigma must be positive, got {sigma}")
    radius = 2.0 * sigma
    arr = np.asarray(x, dtype=np.float64)
    inside = (arr >= 0.0) & (arr <= radius)
    out = np.zeros_like(arr)
    xs = arr[inside]
    out[inside] = 4.0 / (np.pi * radius**2) * np.sqrt(radius**2 - xs**2)
    if np.isscalar(x):
        return float(out)
    return out


class MarchenkoPastur:
    """MP law as a sampling-free distribution object with pdf/cdf."""

    def __init__(self, c: float, grid_points: int = 4001):
        self.c = float(c)
        self.support = mp_support(c)
        lo, hi = self.support
        # CDF via the substitution x = lo + (hi-lo) sin^2(theta), which
        # removes the edge singularities (including x^-1/2 at c = 1).
        theta = np.linspace(0.0, np.pi / 2.0, grid_points)
        sin2 = np.sin(theta) ** 2
        xs = lo + (hi - lo) * sin2
        if lo == 0.0:
            g = hi * np.cos(theta) ** 2 / (np.pi * self.c)
        else:
            g = (hi - lo) ** 2 * sin2 * np.cos(theta) ** 2 / (np.pi * self.c * xs)
        steps = 0.5 * (g[1:] + g[:-1]) * np.diff(theta)
        cum = np.concatenate([[0.0], np.cumsum(steps)])
        self._grid_x = xs
        self._grid_f = cum / cum[-1]

    def pdf(self, x):
        return mp_density(x, self.c)

    def cdf(self, x):
        arr = np.asarray(x, dtype=np.float64)
        out = np.interp(arr, self._grid_x, self._grid_f, left=0.0, right=1.0)
        if np.isscalar(x):
            return float(out)
        return out


class Quartercircle:
    """Quartercircle law with radius 2 sigma (so m2 = sigma^2)."""

    def __init__(self, sigma: float):
        if sigma <= 0:
            raise InvalidArgumentError(f"sigma must be positive, got {sigma}")
        self.sigma = float(sigma)
        self.support = (0.0, 2.0 * sigma)

    def pdf(self, x):
        return quartercircle_density(x, self.sigma)

    def cdf(self, x):
        radius = self.support[1]
        arr = np.asarray(x, dtype=np.float64)
        t = np.clip(arr / radius, 0.0, 1.0)
        out = (2.0 / np.pi) * (np.arcsin(t) + t * np.sqrt(1.0 - t**2))
        out = np.where(arr < 0.0, 0.0, out)
        if np.isscalar(x):
            return float(out)
        return out


def ks_distance(samples, law) -> float:
    """Sup-norm distance between the empirical CDF and ``law.cdf``."""
    xs = np.sort(np.asarray(samples, dtype=np.float64))
    if xs.size == 0:
        raise InvalidArgumentError("ks_distance needs at least one sample")
    n = xs.size
    f = np.asarray(law.cdf(xs), dtype=np.float64)
    i = np.arange(1, n + 1, dtype=np.float64)
    d_plus = np.max(i / n - f)
    d_minus = np.max(f - (i - 1.0) / n)
    return float(min(max(d_plus, d_minus), 1.0))


# ---------------------------------------------------------------------------
# Stable rank and the entropy bounds it implies


def _eigen_probs(eigenvalues) -> np.ndarray:
    arr = np.asarray(eigenvalues, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise InvalidArgumentError("expected a non-empty 1-d spectrum")
    if np.any(arr < 0):
        raise InvalidArgumentError("eigenvalues must be non-negative")
    if np.any(np.diff(arr) > 0):
        raise InvalidArgumentError("eigenvalues must be sorted non-increasing")
    if arr[0] <= 0:
        raise DegenerateInputError("all eigenvalues are zero")
    return arr / arr.sum()


def _shannon(probs: np.ndarray, base: float) -> float:
    w = probs[probs > 0.0]
    return float(-(w * np.log(w)).sum() / math.log(base))


def stable_rank(eigenvalues) -> float:
    """Tr(Sigma^2)/lambda_1^2 = 1 + sum_{i>=2} (lambda_i/lambda_1)^2."""
    arr = np.asarray(eigenvalues, dtype=np.float64)
    _eigen_probs(arr)
    ratios = arr / arr[0]
    return float(np.dot(ratios, ratios))


@dataclass(frozen=True)
class EntropyBounds:
    """Spectrum-only certificates for the entropies of rho = Sigma/Tr(Sigma).

    ``vn_bound`` is the max-entropy bound evaluated at the exact tail mass
    1 - p_1 = delta1/(1+delta1); it never exceeds log T and is certified
    >= the von Neumann entropy for every spectrum.  ``vn_bound_lemma`` is
    the looser textbook form h2(delta) + delta log(T-1) with
    delta = min(1, delta1), recorded as well; it is only a valid bound
    while delta is below the uniform point (T-1)/T, so certification uses
    ``vn_bound``.
    """

    size: int
    eta: float
    delta1: float
    delta: float
    vn_bound: float
    vn_bound_lemma: float
    renyi2_bound: float
    log_base: float


def entropy_bounds(eigenvalues, base: float = math.e) -> EntropyBounds:
    """Entropy certificates from the stable rank of a PSD spectrum."""
    arr = np.asarray(eigenvalues, dtype=np.float64)
    _eigen_probs(arr)
    t = arr.size
    eta = stable_rank(arr) - 1.0
    delta1 = float(arr[1:].sum() / arr[0])
    delta = min(1.0, delta1)
    log_t_minus_1 = math.log(t - 1) / math.log(base) if t > 1 else 0.0
    tail = delta1 / (1.0 + delta1)
    vn_bound = binary_entropy(tail, base=base) + tail * log_t_minus_1
    vn_lemma = binary_entropy(delta, base=base) + delta * log_t_minus_1
    renyi2_bound = 2.0 * math.log1p(delta1) / math.log(base)
    return EntropyBounds(
        size=t,
        eta=eta,
        delta1=delta1,
        delta=delta,
        vn_bound=vn_bound,
        vn_bound_lemma=vn_lemma,
        renyi2_bound=renyi2_bound,
        log_base=base,
    )


# ---------------------------------------------------------------------------
# Row-stochastic matrices: mean-field split and the entropy scaling fit


def check_row_stochastic(a: np.ndarray, tol: float = 1e-6) -> np.ndarray:
    """Validate that rows sum to 1 within ``tol`` and entries are finite."""
    arr = np.asarray(a, dtype=np.float64)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise InvalidArgumentError("expected a square attention matrix")
    row_sums = arr.sum(axis=1)
    worst = float(np.abs(row_sums - 1.0).max())
    if not np.isfinite(worst) or worst > tol:
        raise InvalidArgumentError(
            f"matrix is not row-stochastic: max |row sum - 1| = {worst!r}"
        )
    return arr


def estimate_sigma2(a) -> float:
    """Squared Frobenius norm of the bulk A - (1/T) 11^T."""
    arr = check_row_stochastic(a)
    t = arr.shape[0]
    bulk = arr - 1.0 / t
    return float(np.vdot(bulk, bulk).real)


@dataclass(frozen=True)
class Moments:
    m2: float
    m4: float
    m2log: float


def empirical_moments(rescaled_singulars) -> Moments:
    """(m2, m4, m2log) of rescaled bulk singular values x_i = sqrt(T) s_i.

    m2log applies the 0 log 0 = 0 convention: zero values contribute
    nothing but still count toward the 1/T normalization.
    """
    xs = np.asarray(rescaled_singulars, dtype=np.float64)
    if xs.ndim != 1 or xs.size < 2:
        raise InvalidArgumentError("expected at least two rescaled values")
    t = xs.size
    sq = xs**2
    pos = sq[sq > 0.0]
    return Moments(
        m2=float(sq.sum() / t),
        m4=float((sq**2).sum() / t),
        m2log=float((pos * np.log(pos)).sum() / t),
    )


@dataclass
class CardyFit:
    """Least-squares fit of attention entropy against ln T.

    ``points`` holds (T, S) with S in nats.  The estimates suffixed
    ``_largest_t`` are averaged over the samples at the largest T, where
    the limit quantities are least biased.
    """

    points: list[tuple[int, float]]
    slope: float
    intercept: float
    sigma2_estimate: float
    predicted_charge: float
    constant_c: float
    s1_largest_t: float
    p1_largest_t: float
    renyi2_largest_t: float
    renyi2_predicted: float

    @property
    def relative_slope_deviation(self) -> float:
        if self.predicted_charge == 0.0:
            return abs(self.slope)
        return abs(self.slope - self.predicted_charge) / self.predicted_charge


def matrix_state_entropy(a, base: float = math.e, alpha: float | None = None) -> float:
    """Entropy of a matrix treated as a state: spectrum = singular values."""
    sigmas = np.linalg.svd(np.asarray(a, dtype=np.float64), compute_uv=False)
    lambdas = normalize_spectrum(sigmas)
    if alpha is None:
        return von_neumann(lambdas, base=base)
    return renyi(lambdas, alpha, base=base)


def cardy_fit(attention_samples) -> CardyFit:
    """Fit S(A) = slope * ln T + intercept over row-stochastic samples.

    ``attention_samples`` is a sequence of (T, A) pairs covering at least
    four distinct T values.  sigma^2 is estimated from the Frobenius norm
    of the bulk at the largest T only; the predicted slope is
    sigma^2/(1+sigma^2).
    """
    samples = [(int(t), check_row_stochastic(a)) for t, a in attention_samples]
    sizes = sorted({t for t, _ in samples})
    if len(sizes) < 4:
        raise InvalidArgumentError(
            f"need >= 4 distinct T values for the fit, got {len(sizes)}"
        )
    t_largest = sizes[-1]

    points: list[tuple[int, float]] = []
    s1_vals, p1_vals, renyi2_vals, sigma2_vals, m2log_vals = [], [], [], [], []
    for t, a in samples:
        sigmas = np.linalg.svd(a, compute_uv=False)
        lambdas = normalize_spectrum(sigmas)
        points.append((t, von_neumann(lambdas, base=math.e)))
        if t == t_largest:
            s1_vals.append(float(sigmas[0]))
            p1_vals.append(float(sigmas[0] ** 2 / np.dot(sigmas, sigmas)))
            renyi2_vals.append(renyi(lambdas, 2.0, base=math.e))
            sigma2_vals.append(estimate_sigma2(a))
            bulk = a - 1.0 / t
            bulk_sigmas = np.linalg.svd(bulk, compute_uv=False)
            moments = empirical_moments(math.sqrt(t) * bulk_sigmas)
            m2log_vals.append(moments.m2log)

    log_t = np.log([t for t, _ in points])
    entropies = np.array([s for _, s in points])
    slope, intercept = np.polyfit(log_t, entropies, 1)

    sigma2 = float(np.mean(sigma2_vals))
    charge = sigma2 / (1.0 + sigma2)
    m2log = float(np.mean(m2log_vals))
    constant_c = (
        math.log1p(sigma2) + charge * math.log1p(sigma2) - m2log / (1.0 + sigma2)
    )
    return CardyFit(
        points=points,
        slope=float(slope),
        intercept=float(intercept),
        sigma2_estimate=sigma2,
        predicted_charge=charge,
        constant_c=constant_c,
        s1_largest_t=float(np.mean(s1_vals)),
        p1_largest_t=float(np.mean(p1_vals)),
        renyi2_largest_t=float(np.mean(renyi2_vals)),
        renyi2_predicted=2.0 * math.log1p(sigma2),
    )


# ---------------------------------------------------------------------------
# Output entanglement collapse


@dataclass(frozen=True)
class CollapseRow:
    size: int
    entropy: float
    vn_bound: float
    delta1: float
    ratio: float


@dataclass
class CollapseReport:
    """S(X) against the (log T)/T collapse scaling, with bound checks."""

    rows: list[CollapseRow] = field(default_factory=list)
    ratio_spread: float = math.inf
    monotone_decreasing: bool = False
    bound_satisfied: bool = False


def output_collapse_check(spectra_by_size) -> CollapseReport:
    """Evaluate S(X) over a grid of output-operator spectra.

    ``spectra_by_size`` is a sequence of (T, eigenvalues) with the
    eigenvalues sorted non-increasing; the caller constructs them so the
    stable rank stays near 1.  The report records S, the certified bound,
    and the ratio S * T / ln T per grid point.
    """
    rows: list[CollapseRow] = []
    for t, eig in sorted(spectra_by_size, key=lambda item: item[0]):
        t = int(t)
        if t < 2:
            raise InvalidArgumentError("grid sizes must be >= 2")
        probs = _eigen_probs(eig)
        if probs.size != t:
            raise InvalidArgumentError(
                f"expected {t} eigenvalues, got {probs.size}"
            )
        s = _shannon(probs, math.e)
        bounds = entropy_bounds(eig, base=math.e)
        rows.append(
            CollapseRow(
                size=t,
                entropy=s,
                vn_bound=bounds.vn_bound,
                delta1=bounds.delta1,
                ratio=s * t / math.log(t),
            )
        )
    ratios = np.array([r.ratio for r in rows])
    entropies = np.array([r.entropy for r in rows])
    return CollapseReport(
        rows=rows,
        ratio_spread=float(ratios.max() / ratios.min()) if ratios.min() > 0 else math.inf,
        monotone_decreasing=bool(np.all(np.diff(entropies) < 0.0)) if len(rows) > 1 else True,
        bound_satisfied=bool(all(r.entropy <= r.vn_bound + 1e-12 for r in rows)),
    )
