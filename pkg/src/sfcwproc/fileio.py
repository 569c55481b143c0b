"""File formats: sweep/time B-scan CSV, window CSV, histogram CSV, mask
JSON, and binary PGM radargrams.

Values are stored as decimal text with 17 significant digits so that
save -> load is lossless for float64, and output bytes are
deterministic for equal inputs (LF endings, fixed formatting).
"""

import json
import warnings

import numpy as np

from .model import FrequencyBScan, RegionMask, SweepGrid, TimeBScan


class ParseError(ValueError):
    """Malformed input file; message carries the file and line number."""


def _fmt(x):
    return format(float(x), ".17g")


def _parse_float(text, path, lineno, what):
    try:
        value = float(text)
    except ValueError:
        raise ParseError(f"{path}:{lineno}: bad {what} {text!r}") from None
    if not np.isfinite(value):
        raise ParseError(f"{path}:{lineno}: non-finite {what} {text!r}")
    return value


def _complex_row_to_text(index, row):
    parts = [str(index)]
    for v in row:
        parts.append(_fmt(v.real))
        parts.append(_fmt(v.imag))
    return ",".join(parts)


def _parse_complex_row(fields, n_expected, path, lineno):
    if len(fields) != 2 * n_expected + 1:
        raise ParseError(
            f"{path}:{lineno}: row has {len(fields)} fields, "
            f"expected {2 * n_expected + 1}"
        )
    flat = np.empty(2 * n_expected)
    for i, text in enumerate(fields[1:]):
        flat[i] = _parse_float(text, path, lineno, "sample value")
    return flat[0::2] + 1j * flat[1::2]


def save_frequency_bscan(bscan, path):
    """Write a frequency-domain B-scan to the sweep CSV format."""
    g = bscan.grid
    lines = [
        f"#SFCW,{_fmt(g.f_start)},{_fmt(g.f_step)},{g.n_freq},"
        f"{_fmt(bscan.trace_spacing)}"
    ]
    for i in range(bscan.n_traces):
        lines.append(_complex_row_to_text(i, bscan.samples[i]))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def load_frequency_bscan(path):
    """Read a sweep CSV written by save_frequency_bscan."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise ParseError(f"{path}:1: empty file")
    head = lines[0].split(",")
    if len(head) != 5 or head[0] != "#SFCW":
        raise ParseError(f"{path}:1: expected '#SFCW' header with 5 fields")
    f_start = _parse_float(head[1], path, 1, "f_start")
    f_step = _parse_float(head[2], path, 1, "f_step")
    try:
        n_freq = int(head[3])
    except ValueError:
        raise ParseError(f"{path}:1: bad n_freq {head[3]!r}") from None
    trace_spacing = _parse_float(head[4], path, 1, "trace_spacing")
    grid = SweepGrid(f_start, f_step, n_freq)
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        rows.append(_parse_complex_row(line.split(","), n_freq, path, lineno))
    if not rows:
        raise ParseError(f"{path}:2: no trace rows")
    return FrequencyBScan(grid, trace_spacing, np.stack(rows))


def save_time_bscan(bscan, path):
    """Write a time-domain B-scan to the time CSV format."""
    lines = [
        f"#TIME,{_fmt(bscan.grid.time_step)},{bscan.n_time},"
        f"{_fmt(bscan.trace_spacing)},{_fmt(bscan.time_zero_offset)}"
    ]
    for i in range(bscan.n_traces):
        lines.append(_complex_row_to_text(i, bscan.samples[i]))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def load_time_bscan(path, grid=None):
    """Read a time CSV written by save_time_bscan.

    The time CSV header does not carry the sweep grid; when `grid` is
    not supplied a surrogate grid is reconstructed with n_freq = n_time
    and the header's exact time_step, which is sufficient for all index
    arithmetic on the loaded scan.
    """
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise ParseError(f"{path}:1: empty file")
    head = lines[0].split(",")
    if len(head) != 5 or head[0] != "#TIME":
        raise ParseError(f"{path}:1: expected '#TIME' header with 5 fields")
    time_step = _parse_float(head[1], path, 1, "time_step")
    try:
        n_time = int(head[2])
    except ValueError:
        raise ParseError(f"{path}:1: bad n_time {head[2]!r}") from None
    trace_spacing = _parse_float(head[3], path, 1, "trace_spacing")
    time_zero = _parse_float(head[4], path, 1, "time_zero")
    if grid is None:
        f_step = 1.0 / (n_time * time_step)
        grid = SweepGrid(
            f_start=f_step,
            f_step=f_step,
            n_freq=n_time,
            time_step=time_step,
            crop_time=min(20e-9, n_time * time_step),
        )
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        rows.append(_parse_complex_row(line.split(","), n_time, path, lineno))
    if not rows:
        raise ParseError(f"{path}:2: no trace rows")
    return TimeBScan(grid, trace_spacing, np.stack(rows), time_zero)


def save_window(window, path):
    """Write a FilterWindow to the window CSV format."""
    lines = [
        f"#WINDOW,{_fmt(window.gamma)},{_fmt(window.alpha)},"
        f"{_fmt(window.w_threshold)},{window.n_freq},{window.n_time},"
        f"{window.taper}"
    ]
    for n in range(window.n_time):
        lines.append(f"{n + 1},{int(window.cutoff[n])}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def load_window(path):
    """Read a window CSV written by save_window."""
    from .convert import FilterWindow

    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise ParseError(f"{path}:1: empty file")
    head = lines[0].split(",")
    if len(head) != 7 or head[0] != "#WINDOW":
        raise ParseError(f"{path}:1: expected '#WINDOW' header with 7 fields")
    gamma = _parse_float(head[1], path, 1, "gamma")
    alpha = _parse_float(head[2], path, 1, "alpha")
    w_threshold = _parse_float(head[3], path, 1, "w_threshold")
    try:
        n_freq, n_time = int(head[4]), int(head[5])
    except ValueError:
        raise ParseError(f"{path}:1: bad n_freq/n_time") from None
    taper = head[6]
    cutoff = np.zeros(n_time, dtype=np.int64)
    seen = 0
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        fields = line.split(",")
        if len(fields) != 2:
            raise ParseError(f"{path}:{lineno}: expected 'n,K_n'")
        try:
            n, kn = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(f"{path}:{lineno}: bad integer row") from None
        if not (1 <= n <= n_time):
            raise ParseError(f"{path}:{lineno}: time index {n} out of range")
        cutoff[n - 1] = kn
        seen += 1
    if seen != n_time:
        raise ParseError(f"{path}: expected {n_time} cutoff rows, got {seen}")
    return FilterWindow(
        n_freq=n_freq,
        n_time=n_time,
        gamma=gamma,
        alpha=alpha,
        w_threshold=w_threshold,
        cutoff=cutoff,
        taper=taper,
    )


def save_histogram(hist, path):
    """Write an occurrence histogram to the histogram CSV format."""
    nt, nf = hist.counts.shape
    lines = [f"#HIST,{nt},{nf}"]
    for row in hist.counts:
        lines.append(",".join(str(int(v)) for v in row))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def load_histogram_counts(path):
    """Read the integer count matrix back from a histogram CSV."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise ParseError(f"{path}:1: empty file")
    head = lines[0].split(",")
    if len(head) != 3 or head[0] != "#HIST":
        raise ParseError(f"{path}:1: expected '#HIST' header with 3 fields")
    try:
        nt, nf = int(head[1]), int(head[2])
    except ValueError:
        raise ParseError(f"{path}:1: bad histogram shape") from None
    counts = np.zeros((nt, nf), dtype=np.int64)
    for i, (lineno, line) in enumerate(
        ((no, ln) for no, ln in enumerate(lines[1:], start=2) if ln)
    ):
        fields = line.split(",")
        if i >= nt or len(fields) != nf:
            raise ParseError(f"{path}:{lineno}: histogram row mismatch")
        try:
            counts[i] = [int(v) for v in fields]
        except ValueError:
            raise ParseError(f"{path}:{lineno}: bad count") from None
    return counts


def save_mask(mask, path):
    data = {
        "roi": [list(r) for r in mask.roi_rects],
        "clutter": [list(r) for r in mask.clutter_rects],
    }
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_mask(path):
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if "roi" not in data or "clutter" not in data:
        raise ParseError(f"{path}: mask JSON needs 'roi' and 'clutter' arrays")
    return RegionMask(
        roi_rects=tuple(tuple(r) for r in data["roi"]),
        clutter_rects=tuple(tuple(r) for r in data["clutter"]),
    )


def _quantize(values, lo, hi):
    if hi <= lo:
        return None
    scaled = (values - lo) / (hi - lo) * 255.0
    return np.floor(scaled + 0.5).clip(0, 255).astype(np.uint8)


def render_radargram(bscan, path, normalize="per-image"):
    """Render a time B-scan to an 8-bit binary PGM (P5) image.

    Rows are time samples, columns are traces; the real part is mapped
    linearly so the minimum becomes 0 and the maximum 255 under the
    chosen normalization ("per-image" or "per-trace").  A degenerate
    dynamic range produces a uniform mid-gray image with a warning.
    """
    if normalize not in ("per-image", "per-trace"):
        raise ValueError(f"unknown normalization {normalize!r}")
    real = bscan.samples.real  # (n_traces, n_time)
    if normalize == "per-image":
        img = _quantize(real, real.min(), real.max())
        if img is None:
            warnings.warn("degenerate dynamic range, rendering mid-gray")
            img = np.full(real.shape, 128, dtype=np.uint8)
    else:
        cols = []
        flat = 0
        for i in range(real.shape[0]):
            col = _quantize(real[i], real[i].min(), real[i].max())
            if col is None:
                col = np.full(real.shape[1], 128, dtype=np.uint8)
                flat += 1
            cols.append(col)
        if flat:
            warnings.warn(
                f"degenerate dynamic range in {flat} traces, rendered mid-gray"
            )
        img = np.stack(cols)
    img = img.T  # rows = time samples, columns = traces
    height, width = img.shape
    with open(path, "wb") as fh:
        fh.write(f"P5\n{width} {height}\n255\n".encode("ascii"))
        fh.write(img.tobytes())


def read_pgm(path):
    """Read a binary P5 PGM; returns a (height, width) uint8 array."""
    with open(path, "rb") as fh:
        data = fh.read()
    if not data.startswith(b"P5"):
        raise ParseError(f"{path}: not a binary PGM")
    parts = data.split(b"\n", 3)
    if len(parts) < 4:
        raise ParseError(f"{path}: truncated PGM header")
    width, height = (int(v) for v in parts[1].split())
    maxval = int(parts[2])
    if maxval != 255:
        raise ParseError(f"{path}: expected maxval 255, got {maxval}")
    pixels = np.frombuffer(parts[3][: width * height], dtype=np.uint8)
    if pixels.size != width * height:
        raise ParseError(f"{path}: truncated pixel data")
    return pixels.reshape(height, width)
