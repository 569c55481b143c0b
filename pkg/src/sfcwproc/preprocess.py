"""Preprocessing chain: DC removal, time-zero correction, and
background removal (SVD and mean-subtraction variants).

Pipeline order is: DC removal on the raw spectra, conversion to time
domain, time-zero correction, then background removal.
"""

import numpy as np

from dataclasses import dataclass

from .model import FrequencyBScan, FrequencySweepTrace, TimeBScan

BACKGROUND_SVD = "svd"
BACKGROUND_MS = "ms"
BACKGROUND_NONE = "none"


@dataclass(frozen=True)
class PreprocessConfig:
    time_zero_threshold: float = 0.3
    background_method: str = BACKGROUND_SVD
    svd_rank_removed: int = 1

    def __post_init__(self):
        if not (0 < self.time_zero_threshold < 1):
            raise ValueError(
                f"time_zero_threshold must be in (0, 1), got {self.time_zero_threshold}"
            )
        if self.svd_rank_removed < 1:
            raise ValueError("svd_rank_removed must be >= 1")
        if self.background_method not in (BACKGROUND_SVD, BACKGROUND_MS,
                                          BACKGROUND_NONE):
            raise ValueError(f"unknown background method {self.background_method!r}")


def dc_remove(trace):
    """Subtract the complex mean from one sweep's samples."""
    out = trace.samples - trace.samples.mean()
    return FrequencySweepTrace(trace.grid, out)


def dc_remove_bscan(bscan):
    """DC removal applied to every trace of a frequency B-scan."""
    out = bscan.samples - bscan.samples.mean(axis=1, keepdims=True)
    return FrequencyBScan(bscan.grid, bscan.trace_spacing, out)


def first_arrival_indices(bscan, threshold):
    """Per trace, the earliest 1-based sample with |x| >= threshold * trace max.

    All-zero traces yield 0 (no arrival).
    """
    mag = np.abs(bscan.samples)
    peak = mag.max(axis=1)
    out = np.zeros(bscan.n_traces, dtype=np.int64)
    for i in range(bscan.n_traces):
        if peak[i] == 0:
            continue
        hits = np.nonzero(mag[i] >= threshold * peak[i])[0]
        out[i] = hits[0] + 1
    return out


def time_zero_correct(bscan, cfg=PreprocessConfig()):
    """Align the time axis so the median first arrival sits at sample 1.

    Every trace is shifted left by the same amount (median across
    traces of first_arrival - 1), with zero fill at the tail;
    time_zero_offset is advanced by the shift.  All-zero traces are
    excluded from the median; a B-scan of only zero traces is an error.
    """
    arrivals = first_arrival_indices(bscan, cfg.time_zero_threshold)
    valid = arrivals[arrivals > 0]
    if valid.size == 0:
        raise ValueError("time-zero correction: every trace is zero")
    shift = int(np.floor(np.median(valid) - 1 + 0.5))
    if shift == 0:
        return bscan
    out = np.zeros_like(bscan.samples)
    out[:, : bscan.n_time - shift] = bscan.samples[:, shift:]
    return TimeBScan(
        bscan.grid,
        bscan.trace_spacing,
        out,
        bscan.time_zero_offset + shift * bscan.grid.time_step,
    )


def background_remove_svd(bscan, rank=1):
    """Subtract the best rank-`rank` approximation of the trace matrix.

    Removes the leading singular components (antenna coupling and
    ground-bounce ringing in field data); output energy never exceeds
    input energy.
    """
    if bscan.n_traces < 2:
        raise ValueError("SVD background removal needs at least 2 traces")
    if rank >= min(bscan.n_traces, bscan.n_time):
        raise ValueError(
            f"rank {rank} must be below min(n_traces, n_time) = "
            f"{min(bscan.n_traces, bscan.n_time)}"
        )
    u, s, vh = np.linalg.svd(bscan.samples, full_matrices=False)
    background = (u[:, :rank] * s[:rank]) @ vh[:rank]
    return TimeBScan(
        bscan.grid,
        bscan.trace_spacing,
        bscan.samples - background,
        bscan.time_zero_offset,
    )


def background_remove_ms(bscan):
    """Subtract the across-trace mean trace at every time index."""
    if bscan.n_traces < 2:
        raise ValueError("mean-subtraction background removal needs >= 2 traces")
    out = bscan.samples - bscan.samples.mean(axis=0, keepdims=True)
    return TimeBScan(bscan.grid, bscan.trace_spacing, out, bscan.time_zero_offset)


def background_remove(bscan, method, rank=1):
    """Dispatch on the background method name; "none" is the identity."""
    if method == BACKGROUND_SVD:
        return background_remove_svd(bscan, rank)
    if method == BACKGROUND_MS:
        return background_remove_ms(bscan)
    if method == BACKGROUND_NONE:
        return bscan
    raise ValueError(f"unknown background method {method!r}")
