"""Core domain types for SFCW GPR sweeps, B-scans, and evaluation masks.

All types are immutable after construction and safe to share across
threads.  Index conventions: frequency samples are k = 1..N with
f_k = f_start + (k-1)*f_step; time samples are n = 1..n_time with
t_n = (n-1)*time_step.
"""

from dataclasses import dataclass, field

import numpy as np

SPEED_OF_LIGHT = 299_792_458.0  # m/s


@dataclass(frozen=True)
class SweepGrid:
    """Uniform frequency grid of one SFCW sweep.

    Parameters
    ----------
    f_start : float
        Lowest swept frequency in Hz (k = 1).
    f_step : float
        Frequency step in Hz.
    n_freq : int
        Number of frequency points N.
    time_step : float, optional
        Time-domain sample spacing in seconds.  Derived as
        1/(n_freq*f_step) when omitted; only file loaders pass it
        explicitly, to keep header round-trips byte-exact.
    crop_time : float
        Analysis window in seconds used for display and time-frequency
        fitting (default 20 ns).
    """

    f_start: float
    f_step: float
    n_freq: int
    time_step: float = None
    crop_time: float = 20e-9

    def __post_init__(self):
        if self.time_step is None:
            object.__setattr__(self, "time_step", 1.0 / (self.n_freq * self.f_step))
        if not (self.f_start > 0):
            raise ValueError(f"f_start must be positive, got {self.f_start}")
        if not (self.f_step > 0):
            raise ValueError(f"f_step must be positive, got {self.f_step}")
        if self.n_freq < 2:
            raise ValueError(f"n_freq must be >= 2, got {self.n_freq}")
        if self.crop_time > self.n_freq * self.time_step * (1 + 1e-12):
            raise ValueError(
                f"crop_time {self.crop_time} exceeds full time window "
                f"{self.n_freq * self.time_step}"
            )

    @property
    def bandwidth(self):
        """Swept bandwidth in Hz, f_N - f_1."""
        return (self.n_freq - 1) * self.f_step

    @property
    def n_crop(self):
        """Number of time samples whose time (n-1)*time_step <= crop_time."""
        n = int(np.floor(self.crop_time / self.time_step + 1e-9)) + 1
        return min(n, self.n_freq)

    def frequencies(self):
        """Frequency of every sweep point, f_k for k = 1..N."""
        return self.f_start + np.arange(self.n_freq) * self.f_step

    def times(self, n_time):
        """Time of samples n = 1..n_time under the (n-1)*time_step map."""
        return np.arange(n_time) * self.time_step


def _as_complex_vector(samples, n_expected, what):
    arr = np.asarray(samples, dtype=np.complex128)
    if arr.ndim != 1:
        raise ValueError(f"{what} must be one-dimensional, got shape {arr.shape}")
    if n_expected is not None and arr.shape[0] != n_expected:
        raise ValueError(f"{what} has {arr.shape[0]} samples, expected {n_expected}")
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise ValueError(f"{what} contains non-finite values")
    return arr


@dataclass(frozen=True)
class FrequencySweepTrace:
    """One A-scan: complex transmission coefficients on a sweep grid."""

    grid: SweepGrid
    samples: np.ndarray

    def __post_init__(self):
        arr = _as_complex_vector(self.samples, self.grid.n_freq, "trace samples")
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)


@dataclass(frozen=True)
class FrequencyBScan:
    """Frequency-domain B-scan: n_traces sweeps sharing one grid.

    Sample storage is a (n_traces, n_freq) complex matrix; the
    per-trace view is available through trace() / traces.
    """

    grid: SweepGrid
    trace_spacing: float
    samples: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.samples, dtype=np.complex128)
        if arr.ndim != 2 or arr.shape[1] != self.grid.n_freq:
            raise ValueError(
                f"B-scan samples must be (n_traces, {self.grid.n_freq}), "
                f"got {arr.shape}"
            )
        if arr.shape[0] < 1:
            raise ValueError("B-scan needs at least one trace")
        if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
            raise ValueError("B-scan contains non-finite values")
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)

    @property
    def n_traces(self):
        return self.samples.shape[0]

    def trace(self, index):
        return FrequencySweepTrace(self.grid, self.samples[index])

    @property
    def traces(self):
        return tuple(self.trace(i) for i in range(self.n_traces))

    @classmethod
    def from_traces(cls, traces, trace_spacing):
        if not traces:
            raise ValueError("B-scan needs at least one trace")
        grid = traces[0].grid
        for t in traces[1:]:
            if t.grid != grid:
                raise ValueError("all traces of a B-scan must share one grid")
        return cls(grid, trace_spacing, np.stack([t.samples for t in traces]))


@dataclass(frozen=True)
class TimeBScan:
    """Time-domain B-scan: complex samples x_n per trace.

    Complex values are retained end-to-end; rendering takes the real
    part.  time_zero_offset records how much the time axis has been
    advanced by time-zero correction: sample n of this scan maps to
    time (n-1)*time_step + time_zero_offset of the raw conversion.
    """

    grid: SweepGrid
    trace_spacing: float
    samples: np.ndarray
    time_zero_offset: float = 0.0

    def __post_init__(self):
        arr = np.asarray(self.samples, dtype=np.complex128)
        if arr.ndim != 2:
            raise ValueError(f"time B-scan samples must be 2-D, got {arr.shape}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("time B-scan must be non-empty")
        if arr.shape[1] > self.grid.n_freq:
            raise ValueError(
                f"n_time {arr.shape[1]} exceeds grid n_freq {self.grid.n_freq}"
            )
        if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
            raise ValueError("time B-scan contains non-finite values")
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)

    @property
    def n_traces(self):
        return self.samples.shape[0]

    @property
    def n_time(self):
        return self.samples.shape[1]

    def cropped(self):
        """Restrict to the grid's crop window (samples 1..n_crop)."""
        n = min(self.grid.n_crop, self.n_time)
        return TimeBScan(
            self.grid, self.trace_spacing, self.samples[:, :n], self.time_zero_offset
        )


def _rects_overlap(a, b):
    return (
        a[0] <= b[1] and b[0] <= a[1] and a[2] <= b[3] and b[2] <= a[3]
    )


@dataclass(frozen=True)
class RegionMask:
    """Signal and clutter pixel rectangles for SCR evaluation.

    Rectangles are (trace_lo, trace_hi, time_lo, time_hi), inclusive,
    0-based image coordinates (trace = column, time sample = row).
    Signal and clutter sets must be disjoint and non-empty.
    """

    roi_rects: tuple = field(default_factory=tuple)
    clutter_rects: tuple = field(default_factory=tuple)

    def __post_init__(self):
        roi = tuple(tuple(int(v) for v in r) for r in self.roi_rects)
        clu = tuple(tuple(int(v) for v in r) for r in self.clutter_rects)
        for r in roi + clu:
            if len(r) != 4:
                raise ValueError(f"rectangle must have 4 entries, got {r}")
            if r[0] > r[1] or r[2] > r[3] or min(r) < 0:
                raise ValueError(f"degenerate rectangle {r}")
        if not roi or not clu:
            raise ValueError("mask needs at least one signal and one clutter rect")
        for a in roi:
            for b in clu:
                if _rects_overlap(a, b):
                    raise ValueError(
                        f"signal rect {a} overlaps clutter rect {b}"
                    )
        object.__setattr__(self, "roi_rects", roi)
        object.__setattr__(self, "clutter_rects", clu)

    def validate_extent(self, n_traces, n_time):
        for r in self.roi_rects + self.clutter_rects:
            if r[1] >= n_traces or r[3] >= n_time:
                raise ValueError(
                    f"rectangle {r} outside B-scan extent "
                    f"({n_traces} traces x {n_time} samples)"
                )

    def pixel_mask(self, n_traces, n_time, which):
        """Boolean (n_traces, n_time) array of the selected region."""
        rects = self.roi_rects if which == "roi" else self.clutter_rects
        out = np.zeros((n_traces, n_time), dtype=bool)
        for tlo, thi, nlo, nhi in rects:
            out[tlo : thi + 1, nlo : nhi + 1] = True
        return out
