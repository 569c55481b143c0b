"""Joint time-frequency analysis: per-trace STFT, B-scan-wide occurrence
histogram, and CDF-based boundary-point extraction.

The STFT splits each cropped time trace into non-overlapping Hamming
windowed blocks (block length defaults to 1/10 of the crop) and the
occurrence histogram counts, per time-frequency cell, how many traces
exceed a relative magnitude floor there.  Boundary points are the
per-interval frequency indices where the cumulative occupancy first
reaches the confidence level; they feed the window fit.
"""

from dataclasses import dataclass, replace

import numpy as np


@dataclass(frozen=True)
class StftConfig:
    """Block transform settings.

    window_len / hop of None resolve to ceil(n_crop/10) and window_len
    (non-overlapping blocks) when the trace length is known.
    magnitude_floor is the occurrence threshold as a fraction of each
    trace's own STFT maximum.
    """

    window_len: int = None
    hop: int = None
    window_shape: str = "hamming"
    magnitude_floor: float = 0.01

    def __post_init__(self):
        if self.window_shape != "hamming":
            raise ValueError(f"unsupported window shape {self.window_shape!r}")
        if not (0 < self.magnitude_floor < 1):
            raise ValueError(
                f"magnitude_floor must be in (0, 1), got {self.magnitude_floor}"
            )

    def resolved(self, n_crop):
        """Concrete config for a trace of n_crop samples."""
        wl = self.window_len
        if wl is None:
            wl = int(np.ceil(n_crop / 10))
        if not (1 <= wl <= n_crop):
            raise ValueError(f"window_len {wl} outside 1..{n_crop}")
        hop = self.hop if self.hop is not None else wl
        if not (1 <= hop <= wl):
            raise ValueError(f"hop {hop} outside 1..window_len")
        return replace(self, window_len=wl, hop=hop)


@dataclass(frozen=True)
class StftMatrix:
    """Magnitudes of one trace's STFT, (n_time_bins, n_freq_bins)."""

    magnitudes: np.ndarray
    time_centers: np.ndarray
    bin_frequencies: np.ndarray
    config: StftConfig

    def __post_init__(self):
        mags = np.asarray(self.magnitudes, dtype=np.float64)
        if mags.ndim != 2:
            raise ValueError("magnitudes must be 2-D")
        if np.any(mags < 0) or not np.all(np.isfinite(mags)):
            raise ValueError("magnitudes must be finite and non-negative")
        mags.setflags(write=False)
        object.__setattr__(self, "magnitudes", mags)


@dataclass(frozen=True)
class OccurrenceHistogram:
    """Stacked occupancy counts over all traces of a B-scan."""

    counts: np.ndarray
    n_traces: int
    config: StftConfig

    def __post_init__(self):
        c = np.asarray(self.counts, dtype=np.int64)
        if c.ndim != 2:
            raise ValueError("counts must be 2-D")
        if c.min() < 0 or c.max() > self.n_traces:
            raise ValueError("counts must lie in 0..n_traces")
        c.setflags(write=False)
        object.__setattr__(self, "counts", c)

    @property
    def n_time_bins(self):
        return self.counts.shape[0]

    @property
    def n_freq_bins(self):
        return self.counts.shape[1]


@dataclass(frozen=True)
class BoundaryPoint:
    """One fitted-boundary sample: time index n_i on the conversion
    grid, frequency index k_i on the sweep grid, weight omega_i."""

    n_i: int
    k_i: int
    omega_i: int

    def __post_init__(self):
        if self.n_i < 1 or self.k_i < 1 or self.omega_i < 0:
            raise ValueError(
                f"invalid boundary point (n={self.n_i}, k={self.k_i}, "
                f"omega={self.omega_i})"
            )


def stft(samples, cfg, time_step=1.0, f_start=0.0):
    """Short-time Fourier magnitude matrix of one (complex) trace.

    Each length-window_len block starting at hop multiples is Hamming
    weighted and transformed; bin b maps to physical frequency
    f_start + b*(1/time_step)/window_len, so the bin axis spans the
    full swept band for complex input.
    """
    x = np.asarray(samples, dtype=np.complex128)
    if x.ndim != 1:
        raise ValueError("stft input must be one-dimensional")
    cfg = cfg.resolved(x.shape[0])
    wl, hop = cfg.window_len, cfg.hop
    starts = np.arange(0, x.shape[0] - wl + 1, hop)
    if starts.size == 0:
        raise ValueError("trace shorter than the STFT window")
    win = np.hamming(wl)
    blocks = np.stack([x[s : s + wl] * win for s in starts])
    mags = np.abs(np.fft.fft(blocks, axis=1))
    centers = (starts + (wl - 1) / 2.0) * time_step
    freqs = f_start + np.arange(wl) * (1.0 / time_step) / wl
    return StftMatrix(mags, centers, freqs, cfg)


def bscan_stfts(time_bscan, cfg):
    """STFT of every trace of a (cropped) time B-scan."""
    g = time_bscan.grid
    return [
        stft(time_bscan.samples[i], cfg, g.time_step, g.f_start)
        for i in range(time_bscan.n_traces)
    ]


def occurrence_histogram(stfts):
    """Count, per cell, the traces exceeding their relative floor there.

    A cell occurs for a trace when its magnitude is strictly above
    magnitude_floor times that trace's own STFT maximum, making the
    histogram invariant under per-trace rescaling.
    """
    if not stfts:
        raise ValueError("occurrence_histogram needs at least one STFT")
    shape = stfts[0].magnitudes.shape
    cfg = stfts[0].config
    counts = np.zeros(shape, dtype=np.int64)
    for s in stfts:
        if s.magnitudes.shape != shape:
            raise ValueError(
                f"STFT shape mismatch: {s.magnitudes.shape} vs {shape}"
            )
        peak = s.magnitudes.max()
        counts += s.magnitudes > cfg.magnitude_floor * peak
    return OccurrenceHistogram(counts, len(stfts), cfg)


def boundary_points(hist, m, ci, n_freq):
    """Boundary of the occupied time-frequency region at confidence ci.

    The time-bin axis is split into m equal intervals; per non-empty
    interval the frequency marginal of the counts is cumulated from low
    frequency upward and the first bin reaching fraction ci is mapped
    to the sweep index k_i = round(b*N/window_len).  n_i is the
    conversion-grid sample index of the interval midpoint and omega_i
    the interval's total count.  Empty intervals are dropped.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    if not (0 < ci < 1):
        raise ValueError(f"ci must be in (0, 1), got {ci}")
    n_bins = hist.n_time_bins
    wl = hist.config.window_len
    n_used = n_bins * hist.config.hop + (wl - hist.config.hop)
    # assign each time bin to the interval containing its center
    interval_of = np.floor((np.arange(n_bins) + 0.5) * m / n_bins).astype(int)
    interval_of = np.clip(interval_of, 0, m - 1)
    points = []
    for i in range(m):
        rows = hist.counts[interval_of == i]
        if rows.size == 0:
            continue
        marginal = rows.sum(axis=0)
        total = int(marginal.sum())
        if total == 0:
            continue
        cdf = np.cumsum(marginal) / total
        b = int(np.argmax(cdf >= ci))
        k_i = int(np.clip(round(b * n_freq / wl), 1, n_freq))
        n_i = max(1, int(round((i + 0.5) * n_used / m)))
        points.append(BoundaryPoint(n_i=n_i, k_i=k_i, omega_i=total))
    if not points:
        raise ValueError("no occupied time-frequency cells")
    return points
