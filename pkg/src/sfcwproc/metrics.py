"""Quantitative evaluation: signal-to-clutter ratio, depth resolution,
and time-to-depth mapping."""

from dataclasses import dataclass

import numpy as np

from .model import SPEED_OF_LIGHT


@dataclass(frozen=True)
class ScrReport:
    scr_db: float
    n_roi_pixels: int
    n_clutter_pixels: int
    roi_energy: float
    clutter_energy: float

    def __str__(self):
        return (
            f"SCR_dB={self.scr_db:.4f} N_I={self.n_roi_pixels} "
            f"N_c={self.n_clutter_pixels}"
        )


def scr(bscan, mask):
    """Signal-to-clutter ratio of a time B-scan in dB,

        10*log10( N_c * sum_{p in R_I} |v(p)|^2
                / (N_I * sum_{p in R_c} |v(p)|^2) )

    with v(p) the complex pixel value.  Pixel counts normalize the two
    regions, so a constant-magnitude image scores exactly 0 dB.
    """
    mask.validate_extent(bscan.n_traces, bscan.n_time)
    power = np.abs(bscan.samples) ** 2
    roi = mask.pixel_mask(bscan.n_traces, bscan.n_time, "roi")
    clutter = mask.pixel_mask(bscan.n_traces, bscan.n_time, "clutter")
    n_roi = int(roi.sum())
    n_clutter = int(clutter.sum())
    roi_energy = float(power[roi].sum())
    clutter_energy = float(power[clutter].sum())
    if clutter_energy == 0:
        raise ValueError("clutter region empty of energy")
    value = 10.0 * np.log10(
        (n_clutter * roi_energy) / (n_roi * clutter_energy)
    )
    return ScrReport(
        scr_db=float(value),
        n_roi_pixels=n_roi,
        n_clutter_pixels=n_clutter,
        roi_energy=roi_energy,
        clutter_energy=clutter_energy,
    )


def depth_resolution(bandwidth, epsilon_r):
    """Range resolution c0/(2*BW*sqrt(eps_r)) in meters."""
    if bandwidth <= 0:
        raise ValueError(f"bandwidth must be positive, got {bandwidth}")
    if epsilon_r < 1:
        raise ValueError(f"epsilon_r must be >= 1, got {epsilon_r}")
    return SPEED_OF_LIGHT / (2.0 * bandwidth * np.sqrt(epsilon_r))


def time_to_depth(two_way_time, epsilon_r):
    """Depth reached after a two-way travel time in a medium of
    relative permittivity epsilon_r."""
    if two_way_time < 0:
        raise ValueError(f"two_way_time must be >= 0, got {two_way_time}")
    if epsilon_r < 1:
        raise ValueError(f"epsilon_r must be >= 1, got {epsilon_r}")
    return two_way_time * SPEED_OF_LIGHT / (2.0 * np.sqrt(epsilon_r))
