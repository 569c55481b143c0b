"""sfcwproc: step-frequency continuous-wave GPR processing toolkit.

Converts frequency-domain B-scans to time-domain radargrams through a
depth-adaptive time-frequency filter fitted automatically from the
data, alongside full-band and preset-attenuation baseline converters, a
synthetic forward generator, and a signal-to-clutter evaluation
harness.
"""

from .convert import (
    FilterWindow,
    attenuated_idft,
    build_isdft_window,
    convert_bscan,
    full_band_window,
    inverse_dft,
    windowed_convert,
)
from .fileio import (
    load_frequency_bscan,
    load_histogram_counts,
    load_mask,
    load_time_bscan,
    load_window,
    read_pgm,
    render_radargram,
    save_frequency_bscan,
    save_histogram,
    save_mask,
    save_time_bscan,
    save_window,
)
from .metrics import ScrReport, depth_resolution, scr, time_to_depth
from .model import (
    SPEED_OF_LIGHT,
    FrequencyBScan,
    FrequencySweepTrace,
    RegionMask,
    SweepGrid,
    TimeBScan,
)
from .preprocess import (
    PreprocessConfig,
    background_remove,
    background_remove_ms,
    background_remove_svd,
    dc_remove,
    dc_remove_bscan,
    time_zero_correct,
)
from .synth import (
    SyntheticScene,
    Target,
    auto_mask,
    paper_grid,
    reference_scene,
    round_trip_time,
    scene_from_json,
    scene_to_json,
    simulate_bscan,
    simulate_trace,
)
from .tfanalysis import (
    BoundaryPoint,
    OccurrenceHistogram,
    StftConfig,
    StftMatrix,
    boundary_points,
    bscan_stfts,
    occurrence_histogram,
    stft,
)
from .windowfit import FitResult, build_datff_window, fit_gamma

__version__ = "0.1.0"
