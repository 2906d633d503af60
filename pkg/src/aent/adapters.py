"""Low-rank and tensor-factored adapter updates, and the valley check.

A LoRA update is (alpha/r) B A.  The tensor-factored variant replaces the
(r, d_in) factor by two cores contracted over a bond of size chi, with the
input dimension split as d_in = d1 * d2.  Entanglement across the
row-column cut of either update is capped at log r because the update has
matrix rank at most r.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .entropy import EntanglementProfile, profile
from .errors import InvalidArgumentError, ShapeMismatchError
from .tensorize import prime_factorize

VALID_KINDS = ("full", "lora", "mps_adapt")


@dataclass(frozen=True)
class AdapterSpec:
    """Shape bookkeeping for one adapter configuration."""

    kind: str
    d_out: int
    d_in: int
    r: int | None = None
    alpha: float | None = None
    d1: int | None = None
    d2: int | None = None
    chi: int | None = None

    def __post_init__(self):
        if self.kind not in VALID_KINDS:
            raise InvalidArgumentError(f"unknown adapter kind {self.kind!r}")
        if self.d_out < 1 or self.d_in < 1:
            raise InvalidArgumentError("adapter dims must be >= 1")
        if self.kind == "full":
            return
        if self.r is None or self.r < 1:
            raise InvalidArgumentError(f"rank must be >= 1, got {self.r}")
        if self.r > min(self.d_out, self.d_in):
            raise InvalidArgumentError(
                f"rank {self.r} exceeds min(d_out, d_in) = {min(self.d_out, self.d_in)}"
            )
        if self.kind == "mps_adapt":
            if self.d1 is None or self.d2 is None or self.chi is None:
                raise InvalidArgumentError("mps_adapt needs d1, d2 and chi")
            if self.d1 * self.d2 != self.d_in:
                raise InvalidArgumentError(
                    f"d1 * d2 must equal d_in, got {self.d1} * {self.d2} != {self.d_in}"
                )
            if self.chi < 1:
                raise InvalidArgumentError(f"chi must be >= 1, got {self.chi}")


def param_count(spec: AdapterSpec) -> int:
    """Trainable parameter count of the given adapter configuration."""
    if spec.kind == "full":
        return spec.d_out * spec.d_in
    if spec.kind == "lora":
        return spec.d_out * spec.r + spec.r * spec.d_in
    return spec.d_out * spec.r + spec.r * spec.chi * spec.d1 + spec.chi * spec.d2


def lora_update(b, a, alpha: float, r: int) -> np.ndarray:
    """Delta W = (alpha / r) B A with B (d_out, r) and A (r, d_in)."""
    b = np.asarray(b, dtype=np.float64)
    a = np.asarray(a, dtype=np.float64)
    if r < 1:
        raise InvalidArgumentError(f"rank must be >= 1, got {r}")
    if b.ndim != 2 or a.ndim != 2 or b.shape[1] != r or a.shape[0] != r:
        raise ShapeMismatchError(
            f"expected B (d_out, {r}) and A ({r}, d_in), got {b.shape} and {a.shape}"
        )
    return (alpha / r) * (b @ a)


def mps_adapter_materialize(core1, core2) -> np.ndarray:
    """Contract cores (r, chi, d1) and (chi, 1, d2) into an (r, d1*d2) matrix.

    The output column index pairs (i1, i2) row-major, consistent with the
    prime-site tensorization of the input dimension.
    """
    core1 = np.asarray(core1, dtype=np.float64)
    core2 = np.asarray(core2, dtype=np.float64)
    if core1.ndim != 3 or core2.ndim != 3 or core2.shape[1] != 1:
        raise ShapeMismatchError(
            f"expected cores (r, chi, d1) and (chi, 1, d2), got {core1.shape} and {core2.shape}"
        )
    if core1.shape[1] != core2.shape[0]:
        raise ShapeMismatchError(
            f"bond dims differ: {core1.shape[1]} vs {core2.shape[0]}"
        )
    r, _, d1 = core1.shape
    d2 = core2.shape[2]
    contracted = np.einsum("aci,cj->aij", core1, core2[:, 0, :])
    return contracted.reshape(r, d1 * d2)


def mps_adapter_update(b, core1, core2, alpha: float, r: int) -> np.ndarray:
    """Delta W = (alpha / r) B A_mps with A_mps from the two cores."""
    return lora_update(b, mps_adapter_materialize(core1, core2), alpha, r)


@dataclass(frozen=True)
class ValleyCheck:
    """Row-column-cut entropy against the log r bound, plus the interior."""

    s_rowcol: float
    bound: float
    interior_cuts: tuple[int, ...]
    interior_max: float
    passes: bool
    profile: EntanglementProfile


def interior_cut_range(r: int, n: int) -> tuple[int, ...]:
    """Row cuts treated as interior: ceil(log2 r) + 2 <= k <= n - 1.

    The lower margin keeps the cut clear of the rank bottleneck's
    log-scale footprint; the upper end stops short of the row-column cut
    itself.  May be empty when r is large relative to 2^n.
    """
    lo = math.ceil(math.log2(r)) + 2
    return tuple(range(lo, n))


def valley_check(delta_w, r: int, base: float = 2.0) -> ValleyCheck:
    """Profile an adapter update and test the rank bound at the matrix cut."""
    if r < 1:
        raise InvalidArgumentError(f"rank must be >= 1, got {r}")
    prof = profile(delta_w, base=base)
    delta_w = np.asarray(delta_w)
    n = len(prime_factorize(delta_w.shape[0]))
    s_rowcol = prof.record_at(n).entropy
    bound = math.log(r) / math.log(base)
    cuts = interior_cut_range(r, n)
    interior = [prof.record_at(k).entropy for k in cuts]
    return ValleyCheck(
        s_rowcol=s_rowcol,
        bound=bound,
        interior_cuts=cuts,
        interior_max=max(interior) if interior else math.nan,
        passes=s_rowcol <= bound + 1e-9,
        profile=prof,
    )
