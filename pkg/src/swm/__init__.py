"""Square-wave decomposition (SWM) and its frequency-domain form (SWT).

1D signals are approximated by sums of square-wave trains obtained from a
dense +-1 sign system; 2D grayscale images use the Kronecker structure of
the same system along each axis.  See :mod:`swm.core`, :mod:`swm.image`
and :mod:`swm.io`; the ``swm`` executable exposes the full pipeline.
"""

from .core import (
    FrequencySchedule,
    SampledSignal,
    SolverCache,
    Spectrum1D,
    analyze_1d,
    build_sign_matrix,
    demo_waveform,
    filter_by_frequency,
    find_prominent,
    frequencies_1d,
    frequencies_from_sampling,
    reconstruct_1d,
    sample_count,
    sample_demo_signal,
    shared_cache,
)
from .errors import FormatError, SingularSystemError, SwmError
from .image import (
    CoefficientGrid,
    GrayImage,
    SignPattern2D,
    Spectrum2D,
    TileGrid,
    analyze_full,
    analyze_image,
    analyze_tile,
    approximate,
    contribution_pattern,
    pixel_equation_signs,
    single_tile_grid,
    spatial_frequencies,
    triads,
)
from .io import (
    PlotSeries,
    SwtDocument,
    emit_plot,
    read_coefficients,
    read_gray_image,
    read_signal_csv,
    read_swt,
    write_coefficients,
    write_gray_image,
    write_pattern_image,
    write_signal_csv,
    write_swt,
)

__version__ = "0.1.0"

__all__ = [
    "FrequencySchedule",
    "SampledSignal",
    "SolverCache",
    "Spectrum1D",
    "analyze_1d",
    "build_sign_matrix",
    "demo_waveform",
    "filter_by_frequency",
    "find_prominent",
    "frequencies_1d",
    "frequencies_from_sampling",
    "reconstruct_1d",
    "sample_count",
    "sample_demo_signal",
    "shared_cache",
    "FormatError",
    "SingularSystemError",
    "SwmError",
    "CoefficientGrid",
    "GrayImage",
    "SignPattern2D",
    "Spectrum2D",
    "TileGrid",
    "analyze_full",
    "analyze_image",
    "analyze_tile",
    "approximate",
    "contribution_pattern",
    "pixel_equation_signs",
    "single_tile_grid",
    "spatial_frequencies",
    "triads",
    "PlotSeries",
    "SwtDocument",
    "emit_plot",
    "read_coefficients",
    "read_gray_image",
    "read_signal_csv",
    "read_swt",
    "write_coefficients",
    "write_gray_image",
    "write_pattern_image",
    "write_signal_csv",
    "write_swt",
    "__version__",
]
