"""Frequency-to-time conversion engines.

The base transform maps N frequency samples X_k (k = 1..N) to time
samples

    x_n = (1/N) * sum_{k=1..N} X_k * exp((-alpha + j*2*pi) * k * n / N)

for n = 1..n_time, which reduces to the plain inverse DFT at alpha = 0.
The windowed variant truncates each time index n to its first K_n
frequency samples and optionally tapers them with exp(-alpha*k*n/N).
Indices run 1..N exactly; there is no zero-based re-indexing, so an
all-ones spectrum peaks at n = N.

All converters are validated against a literal direct-sum oracle in the
test suite; the matrix formulations below are evaluation order
optimizations only.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .model import FrequencyBScan, TimeBScan

TAPER_ATTENUATED = "attenuated"
TAPER_FLAT = "flat"


@dataclass(frozen=True)
class FilterWindow:
    """Time-frequency filter window H.

    cutoff[n-1] = K_n is the last retained frequency index at time
    index n; inside the cutoff, H is exp(-alpha*k*n/N) for the
    attenuated taper and 1 for the flat taper.  gamma is the fitted
    boundary constant with alpha = gamma * ln(w_threshold).
    """

    n_freq: int
    n_time: int
    gamma: float
    alpha: float
    w_threshold: float
    cutoff: np.ndarray
    taper: str = TAPER_ATTENUATED

    def __post_init__(self):
        cut = np.asarray(self.cutoff, dtype=np.int64)
        if cut.shape != (self.n_time,):
            raise ValueError(
                f"cutoff must have n_time={self.n_time} entries, got {cut.shape}"
            )
        if cut.min() < 1 or cut.max() > self.n_freq:
            raise ValueError("cutoff K_n must lie in 1..n_freq")
        if np.any(np.diff(cut) > 0):
            raise ValueError("cutoff K_n must be non-increasing in n")
        if not self.gamma < 0:
            raise ValueError(f"gamma must be negative, got {self.gamma}")
        if self.alpha < 0:
            raise ValueError(f"alpha must be >= 0, got {self.alpha}")
        if not (0 < self.w_threshold < 1):
            raise ValueError(f"w_threshold must be in (0, 1), got {self.w_threshold}")
        if self.taper not in (TAPER_ATTENUATED, TAPER_FLAT):
            raise ValueError(f"unknown taper {self.taper!r}")
        cut.setflags(write=False)
        object.__setattr__(self, "cutoff", cut)


def _samples_of(trace):
    return trace.samples if hasattr(trace, "samples") else np.asarray(trace)


def _phase_matrix(n_time, n_freq, alpha):
    """exp((-alpha + 2j*pi) * n*k / N) / N for n = 1..n_time, k = 1..N."""
    n = np.arange(1, n_time + 1, dtype=np.float64)[:, None]
    k = np.arange(1, n_freq + 1, dtype=np.float64)[None, :]
    nk = n * k / n_freq
    mat = np.exp(2j * np.pi * nk)
    if alpha != 0.0:
        mat = mat * np.exp(-alpha * nk)
    return mat / n_freq


def attenuated_idft(trace, alpha, n_time=None):
    """Attenuated inverse transform of one sweep.

    Parameters
    ----------
    trace : FrequencySweepTrace or complex array
        Frequency samples X_k, k = 1..N.
    alpha : float
        Attenuation coefficient (>= 0); 0 gives the plain inverse DFT.
    n_time : int, optional
        Number of output samples n = 1..n_time (default N).
    """
    if alpha < 0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")
    x = _samples_of(trace)
    n_freq = x.shape[0]
    if n_time is None:
        n_time = n_freq
    return _phase_matrix(n_time, n_freq, alpha) @ x


def inverse_dft(trace, n_time=None):
    """Plain inverse DFT under the 1..N index convention (FFT path).

    Equivalent to attenuated_idft(trace, 0.0) but computed via the FFT:
    with k = k'+1 and n = n'+1 the phase factors split as
    exp(j2pi(k'n' + k' + n' + 1)/N), leaving a standard inverse FFT on
    pre- and post-rotated samples.
    """
    x = _samples_of(trace)
    n_freq = x.shape[0]
    if n_time is None:
        n_time = n_freq
    idx = np.arange(n_freq)
    rot = np.exp(2j * np.pi * idx / n_freq)
    full = np.fft.ifft(x * rot) * rot * np.exp(2j * np.pi / n_freq)
    return full[:n_time]


def _window_matrix(window):
    n_freq, n_time = window.n_freq, window.n_time
    n = np.arange(1, n_time + 1, dtype=np.float64)[:, None]
    k = np.arange(1, n_freq + 1, dtype=np.float64)[None, :]
    nk = n * k / n_freq
    mat = np.exp(2j * np.pi * nk)
    if window.taper == TAPER_ATTENUATED and window.alpha != 0.0:
        mat = mat * np.exp(-window.alpha * nk)
    keep = k <= window.cutoff[:, None]
    return np.where(keep, mat, 0.0) / n_freq


def windowed_convert(trace, window):
    """Windowed frequency-to-time conversion,
    x_n = (1/N) * sum_{k<=K_n} X_k * H_{n,k} * exp(j*2*pi*k*n/N)."""
    x = _samples_of(trace)
    if x.shape[0] != window.n_freq:
        raise ValueError(
            f"trace has {x.shape[0]} samples but window expects {window.n_freq}"
        )
    return _window_matrix(window) @ x


def build_isdft_window(alpha, w_threshold, n_freq, n_time):
    """Depth-dependent window from a preset medium attenuation.

    K_n is the largest k with exp(-alpha*k*n/N) >= w_threshold, clamped
    to 1..N; the equivalent boundary constant alpha/ln(w_threshold) is
    recorded as gamma.
    """
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if not (0 < w_threshold < 1):
        raise ValueError(f"w_threshold must be in (0, 1), got {w_threshold}")
    n = np.arange(1, n_time + 1, dtype=np.float64)
    raw = np.floor(n_freq * np.log(1.0 / w_threshold) / (alpha * n))
    cutoff = np.clip(raw, 1, n_freq).astype(np.int64)
    return FilterWindow(
        n_freq=n_freq,
        n_time=n_time,
        gamma=alpha / np.log(w_threshold),
        alpha=alpha,
        w_threshold=w_threshold,
        cutoff=cutoff,
        taper=TAPER_ATTENUATED,
    )


def full_band_window(n_freq, n_time, taper=TAPER_FLAT, w_threshold=0.5):
    """Degenerate window keeping every frequency sample (K_n = N)."""
    gamma = -1.0 / (2.0 * n_time)  # |gamma| <= 1/n means no cutoff anywhere
    return FilterWindow(
        n_freq=n_freq,
        n_time=n_time,
        gamma=gamma,
        alpha=gamma * np.log(w_threshold),
        w_threshold=w_threshold,
        cutoff=np.full(n_time, n_freq, dtype=np.int64),
        taper=taper,
    )


def _apply_matrix(samples, mat, threads):
    if threads <= 1 or samples.shape[0] < 2 * threads:
        return samples @ mat.T
    chunks = np.array_split(np.arange(samples.shape[0]), threads)
    out = np.empty((samples.shape[0], mat.shape[0]), dtype=np.complex128)

    def run(idx):
        out[idx] = samples[idx] @ mat.T

    with ThreadPoolExecutor(max_workers=threads) as pool:
        list(pool.map(run, chunks))
    return out


def convert_bscan(bscan, method, *, alpha=0.01, w_threshold=0.5, window=None,
                  n_time=None, threads=1):
    """Convert a frequency B-scan to a time B-scan, trace by trace.

    method is one of "idft" (full band), "isdft" (preset alpha and
    magnitude threshold), or "datff" (caller-supplied fitted window).
    """
    n_freq = bscan.grid.n_freq
    if n_time is None:
        n_time = window.n_time if (method == "datff" and window is not None) else n_freq
    if method == "idft":
        mat = _phase_matrix(n_time, n_freq, 0.0)
    elif method == "isdft":
        mat = _window_matrix(build_isdft_window(alpha, w_threshold, n_freq, n_time))
    elif method == "datff":
        if window is None:
            raise ValueError("datff conversion needs a fitted window")
        if window.n_freq != n_freq:
            raise ValueError(
                f"window built for N={window.n_freq} but B-scan has N={n_freq}"
            )
        mat = _window_matrix(window)
    else:
        raise ValueError(f"unknown conversion method {method!r}")
    out = _apply_matrix(bscan.samples, mat, threads)
    return TimeBScan(bscan.grid, bscan.trace_spacing, out, 0.0)
