"""Synthetic single-layer softmax attention at isotropic initialization.

The context matrix X0 has exactly orthonormal rows, so Q = X0 @ W_Q has
i.i.d. Gaussian entries with the per-entry standard deviation of W_Q,
whatever the context dim.  Query/key weights default to std 0.65, which
puts the logit std near 0.42 after the 1/sqrt(d_qk) scaling and the
off-mean-field Frobenius mass near 0.2: strong enough that the
entanglement log-scaling is measurable, weak enough that the profile
stays in the area-law regime.  The head width defaults to T itself so
the rescaled bulk spectrum of A - (1/T) 11^T is the same law at every
sequence length; with a fixed head width the per-row softmax
temperatures spread as T grows and the bulk moments drift.  Value
weights default to variance 1/d so that V V^T approximates the
identity when d_v is large.  All scales are recorded in the scene
because the bulk spread depends on them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .entropy import EntanglementProfile, profile
from .errors import InvalidArgumentError, ShapeMismatchError
from .rmt import check_row_stochastic

#: Default per-entry standard deviation of W_Q and W_K.
DEFAULT_QK_STD = 0.65


def orthonormal_context(t: int, d: int, seed) -> np.ndarray:
    """(T, d) matrix with orthonormal rows from a QR'd Gaussian draw.

    ``seed`` may be anything ``numpy.random.default_rng`` accepts,
    including an existing generator.
    """
    if t < 1:
        raise InvalidArgumentError(f"T must be >= 1, got {t}")
    if t > d:
        raise InvalidArgumentError(f"need T <= d for orthonormal rows, got {t} > {d}")
    rng = np.random.default_rng(seed)
    gauss = rng.standard_normal((d, t))
    q, r = np.linalg.qr(gauss)
    signs = np.sign(np.diag(r))
    signs[signs == 0.0] = 1.0
    return (q * signs).T


def attention_matrix(q: np.ndarray, k: np.ndarray, causal: bool = False) -> np.ndarray:
    """Row-wise softmax of Q K^T / sqrt(d_qk), optionally causally masked.

    Masking sets logits above the diagonal to -inf before the softmax, so
    masked entries come out exactly zero.
    """
    q = np.asarray(q, dtype=np.float64)
    k = np.asarray(k, dtype=np.float64)
    if q.ndim != 2 or k.ndim != 2 or q.shape != k.shape:
        raise ShapeMismatchError(
            f"Q and K must share shape (T, d_qk), got {q.shape} and {k.shape}"
        )
    logits = q @ k.T / math.sqrt(q.shape[1])
    return _softmax_rows(logits, causal=causal)


def _softmax_rows(logits: np.ndarray, causal: bool) -> np.ndarray:
    work = np.array(logits, dtype=np.float64)
    if causal:
        t = work.shape[0]
        work[np.triu_indices(t, k=1)] = -np.inf
    work -= work.max(axis=1, keepdims=True)
    np.exp(work, out=work)
    work /= work.sum(axis=1, keepdims=True)
    return work


def apply_rope(m: np.ndarray, theta_base: float = 10000.0) -> np.ndarray:
    """Rotary position embedding with split-half dimension pairing.

    Row index is the position.  Coordinate j in the first half is rotated
    against coordinate j + d/2 by angle pos * theta_base^(-2j/d).  Norms
    are preserved exactly up to rounding.
    """
    arr = np.asarray(m, dtype=np.float64)
    if arr.ndim != 2:
        raise InvalidArgumentError("apply_rope expects a (T, d_qk) matrix")
    t, d = arr.shape
    if d % 2 != 0:
        raise InvalidArgumentError(f"rotary embedding needs an even dim, got {d}")
    half = d // 2
    freqs = theta_base ** (-2.0 * np.arange(half) / d)
    angles = np.arange(t)[:, None] * freqs[None, :]
    cos, sin = np.cos(angles), np.sin(angles)
    first, second = arr[:, :half], arr[:, half:]
    out = np.empty_like(arr)
    out[:, :half] = first * cos - second * sin
    out[:, half:] = first * sin + second * cos
    return out


def outlier_bulk_split(a) -> tuple[np.ndarray, np.ndarray]:
    """Split a row-stochastic A into the rank-1 mean field and the bulk.

    The mean field is (1/T) 11^T; the bulk A - mean_field has zero row
    sums and is Frobenius-orthogonal to the mean field.
    """
    arr = check_row_stochastic(a)
    t = arr.shape[0]
    mean_field = np.full((t, t), 1.0 / t)
    return mean_field, arr - mean_field


def output_operator(x) -> np.ndarray:
    """Sigma = X X^T, symmetrized against rounding."""
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 2:
        raise InvalidArgumentError("output_operator expects a (T, d_v) matrix")
    sigma = arr @ arr.T
    return (sigma + sigma.T) / 2.0


@dataclass
class AttentionScene:
    """One single-head attention draw and everything derived from it."""

    t: int
    d: int
    d_qk: int
    d_v: int
    seed: object
    causal: bool
    rope: bool
    rope_theta: float
    qk_std: float
    v_std: float
    x0: np.ndarray
    w_q: np.ndarray
    w_k: np.ndarray
    w_v: np.ndarray
    q: np.ndarray
    k: np.ndarray
    a: np.ndarray
    x: np.ndarray

    @classmethod
    def build(
        cls,
        t: int,
        d: int | None = None,
        d_qk: int | None = None,
        d_v: int | None = None,
        seed=0,
        causal: bool = False,
        rope: bool = False,
        rope_theta: float = 10000.0,
        qk_std: float = DEFAULT_QK_STD,
        v_std: float | None = None,
    ) -> AttentionScene:
        d = t if d is None else d
        d_qk = t if d_qk is None else d_qk
        d_v = d if d_v is None else d_v
        if v_std is None:
            v_std = 1.0 / math.sqrt(d)
        rng = np.random.default_rng(seed)
        x0 = orthonormal_context(t, d, rng)
        w_q = qk_std * rng.standard_normal((d, d_qk))
        w_k = qk_std * rng.standard_normal((d, d_qk))
        w_v = v_std * rng.standard_normal((d, d_v))
        q = x0 @ w_q
        k = x0 @ w_k
        if rope:
            q = apply_rope(q, rope_theta)
            k = apply_rope(k, rope_theta)
        a = attention_matrix(q, k, causal=causal)
        x = a @ (x0 @ w_v)
        return cls(
            t=t,
            d=d,
            d_qk=d_qk,
            d_v=d_v,
            seed=seed,
            causal=causal,
            rope=rope,
            rope_theta=rope_theta,
            qk_std=qk_std,
            v_std=v_std,
            x0=x0,
            w_q=w_q,
            w_k=w_k,
            w_v=w_v,
            q=q,
            k=k,
            a=a,
            x=x,
        )


@dataclass
class MaskAblation:
    """The same logits pushed through softmax with and without the mask."""

    a_masked: np.ndarray
    a_unmasked: np.ndarray
    profile_masked: EntanglementProfile
    profile_unmasked: EntanglementProfile


def mask_ablation(scene: AttentionScene, chi_max: int | None = None, base: float = 2.0) -> MaskAblation:
    """Profile the scene's attention with the causal mask on and off."""
    logits = scene.q @ scene.k.T / math.sqrt(scene.d_qk)
    a_masked = _softmax_rows(logits, causal=True)
    a_unmasked = _softmax_rows(logits, causal=False)
    return MaskAblation(
        a_masked=a_masked,
        a_unmasked=a_unmasked,
        profile_masked=profile(a_masked, chi_max=chi_max, base=base),
        profile_unmasked=profile(a_unmasked, chi_max=chi_max, base=base),
    )
