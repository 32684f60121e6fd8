"""Built-in golden checks.

Known-good reference values for the bundled demo waveform and the 4 x 4
demo raster, plus the frequency tables they imply.  ``run_golden_checks``
recomputes everything from scratch and compares at fixed tolerances; the
CLI ``verify`` command prints one PASS/FAIL line per check.
"""

import numpy as np

from . import core, image

__all__ = ["CheckResult", "run_golden_checks"]

# Reference sample values of the demo waveform, n=18 over [-2, 2].
DEMO_V18 = np.array([
    -34.5484836, 30.6666667, -16.0256827, -6.9904692, 49.0000000,
    -6.5602864, -14.1121683, 25.3333333, -26.7629098, -25.7897131,
    22.6666667, -11.7202754, -5.0546469, 35.0000000, -4.6244642,
    -9.8067610, 17.3333333, -18.0041393,
])

# Reference coefficients solved from the same samples.
DEMO_C18 = np.array([
    117.12980, 50.27631, -210.98830, -53.27896, 9.35088, 12.58025,
    61.27212, 49.80105, 12.81335, 4.03101, -85.68506, 12.88482,
    8.51973, 60.38772, -69.86421, 28.08997, -9.26140, -32.60758,
])

# Reference frequency table for n=18, duration 4 s (7 decimals).
DEMO_F18 = np.array([
    0.1250000, 0.1323529, 0.1406250, 0.1500000, 0.1607143, 0.1730769,
    0.1875000, 0.2045455, 0.2250000, 0.2500000, 0.2812500, 0.3214286,
    0.3750000, 0.4500000, 0.5625000, 0.7500000, 1.1250000, 2.2500000,
])

# Reference schedule entries for a 250 Hz / 5 s recording (n = 1250).
EMG_SCHEDULE = {1: 0.1000000, 2: 0.1000801, 209: 0.1199616}
EMG_RATE, EMG_DURATION = 250.0, 5.0

# Demo 4 x 4 raster, bottom-up rows (row index 1 is the bottom row).
GRID4_PIXELS = np.array([
    [100, 38, 25, 214],
    [98, 3, 77, 12],
    [195, 6, 249, 255],
    [55, 4, 69, 81],
], dtype=np.uint8)

# Reference coefficients of the demo raster, first index along x.
GRID4_COEFFS = np.array([
    [112.50000, 27.50000, -34.00000, 51.00000],
    [-78.50000, 22.25000, -14.00000, -55.25000],
    [15.25000, -23.50000, 32.25000, 13.50000],
    [28.25000, 42.75000, -31.75000, -8.25000],
])

# Spot values of the tile-unit spatial schedule for n=32 (index -> cycles).
SPATIAL32_SPOTS = {17: 1.0, 25: 2.0, 29: 4.0, 1: 0.5}

# Reference tile-unit frequencies for trains 1..8 of an n=32 tile
# (both axes of the 64-triad listing use this table).
TRIAD_F8 = np.array([
    0.5000000, 0.5161290, 0.5333333, 0.5517241,
    0.5714286, 0.5925926, 0.6153846, 0.6400000,
])

# Reference prominent dyads of the demo waveform: index -> (frequency,
# coefficient).  The n=1000 value at index 745 disagrees with an
# extended-precision solve by 2e-3 relative (suspected transcription
# error), so the certified solve value is gated in its place.
PROMINENT_DYADS = {
    1000: {
        489: (0.2441410, 541.50054),
        745: (0.4882812, 270.06817),
        873: (0.9765633, 134.80741),
        937: (1.9531250, 66.39768),
    },
    2000: {
        977: (0.2441410, 342.97162),
        1489: (0.4882812, 171.42003),
        1745: (0.9765633, 85.45887),
        1873: (1.9531250, 42.22607),
    },
}
UNRELIABLE_PROMINENT = {(1000, 745)}
CERTIFIED_PROMINENT = {(1000, 745): 270.618756}

V_TOL = 1e-6
C_TOL = 5e-5
FREQ_TOL = 1e-7
GRID_TOL = 1e-9
PROMINENT_FREQ_TOL = 1e-6
PROMINENT_COEFF_RTOL = 1e-3
CERTIFIED_RTOL = 1e-6


class CheckResult:
    """Outcome of one golden check."""

    def __init__(self, name: str, passed: bool, detail: str):
        self.name = name
        self.passed = passed
        self.detail = detail

    def __repr__(self):
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name} ({self.detail})"


def _check(name, error, tolerance, extra=""):
    detail = f"max |err| {error:.3e} <= {tolerance:g}"
    if extra:
        detail += f"; {extra}"
    return CheckResult(name, bool(error <= tolerance), detail)


def check_demo_samples() -> CheckResult:
    signal = core.sample_demo_signal(18, 4.0)
    err = np.abs(signal.values - DEMO_V18).max()
    return _check("demo-signal-samples", err, V_TOL)


def check_demo_coefficients(cache=None) -> CheckResult:
    spectrum = core.analyze_1d(core.sample_demo_signal(18, 4.0), cache)
    err = np.abs(spectrum.coefficients - DEMO_C18).max()
    return _check("demo-signal-coefficients", err, C_TOL)


def check_sign_consistency() -> CheckResult:
    # The reference C vector pushed through the sign matrix must return
    # the reference V vector; this pins the sign rule itself.
    matrix = core.build_sign_matrix(18).astype(np.float64)
    err = np.abs(matrix @ DEMO_C18 - DEMO_V18).max()
    return _check("sign-consistency", err, 1e-4)


def check_frequency_table() -> CheckResult:
    values = core.frequencies_1d(18, 4.0).values
    err = np.abs(values - DEMO_F18).max()
    exact = values[0] == 0.125 and values[17] == 2.25
    return _check("frequency-table-n18", err, FREQ_TOL,
                  extra=f"endpoints exact: {exact}")


def check_sampling_schedule() -> CheckResult:
    schedule = core.frequencies_from_sampling(EMG_RATE, EMG_DURATION)
    err = max(abs(schedule.values[i - 1] - f) for i, f in EMG_SCHEDULE.items())
    endpoints = (schedule.values[0] == 1.0 / (2.0 * EMG_DURATION)
                 and schedule.values[-1] == EMG_RATE / 2.0)
    result = _check("sampling-schedule-250x5", err, FREQ_TOL,
                    extra=f"endpoint identities: {endpoints}")
    result.passed = result.passed and endpoints
    return result


def check_grid_coefficients(cache=None) -> CheckResult:
    grid = image.analyze_tile(image.GrayImage(GRID4_PIXELS), cache)
    err = np.abs(grid.coefficients - GRID4_COEFFS).max()
    return _check("grid4-coefficients", err, GRID_TOL)


def check_grid_flattened(cache=None) -> CheckResult:
    # Same tile through the materialized 16-equation system.
    rows, rhs = [], []
    for j in range(1, 5):
        for i in range(1, 5):
            rows.append(image.pixel_equation_signs(i, j, 4, 4).ravel())
            rhs.append(float(GRID4_PIXELS[j - 1, i - 1]))
    flat = np.linalg.solve(np.array(rows, dtype=np.float64),
                           np.array(rhs)).reshape(4, 4)
    grid = image.analyze_tile(image.GrayImage(GRID4_PIXELS), cache)
    err = np.abs(grid.coefficients - flat).max()
    return _check("grid4-kronecker-vs-flattened", err, GRID_TOL)


def check_grid_roundtrip(cache=None) -> CheckResult:
    grids = image.analyze_image(image.GrayImage(GRID4_PIXELS), 4, cache)
    restored = image.approximate(grids, 4)
    exact = bool(np.array_equal(restored.pixels, GRID4_PIXELS))
    return CheckResult("grid4-roundtrip", exact,
                       "m=4 reconstruction restores all 16 gray values"
                       if exact else "reconstruction mismatch")


def check_spatial_spots() -> CheckResult:
    values = image.spatial_frequencies(32, "tile").values
    exact = all(values[i - 1] == f for i, f in SPATIAL32_SPOTS.items())
    detail = ", ".join(f"i={i} -> {values[i - 1]:.7f}"
                       for i in sorted(SPATIAL32_SPOTS))
    return CheckResult("spatial-frequency-spots", exact, detail)


def check_triad_grid() -> CheckResult:
    grid = image.CoefficientGrid(np.zeros((32, 32)))
    spectrum = image.triads(grid, unit="tile", keep=8)
    err = max(np.abs(spectrum.fx - TRIAD_F8[spectrum.i_indices - 1]).max(),
              np.abs(spectrum.fy - TRIAD_F8[spectrum.j_indices - 1]).max())
    ordered = (spectrum.j_indices[0], spectrum.i_indices[0]) == (1, 1) and \
        (spectrum.j_indices[1], spectrum.i_indices[1]) == (1, 2)
    result = _check("triad-frequency-grid", err, FREQ_TOL,
                    extra=f"64 triads, j-major order: {ordered}")
    result.passed = result.passed and len(spectrum) == 64 and ordered
    return result


def check_prominent_dyads(n: int, cache=None) -> CheckResult:
    spectrum = core.analyze_1d(core.sample_demo_signal(n, 4.0), cache)
    worst_freq = 0.0
    worst_coeff = 0.0
    passed = True
    replaced = 0
    for idx, (freq, coeff) in PROMINENT_DYADS[n].items():
        worst_freq = max(worst_freq, abs(spectrum.frequencies[idx - 1] - freq))
        got = spectrum.coefficients[idx - 1]
        if (n, idx) in UNRELIABLE_PROMINENT:
            certified = CERTIFIED_PROMINENT[(n, idx)]
            passed &= abs(got - certified) / abs(certified) <= CERTIFIED_RTOL
            replaced += 1
        else:
            worst_coeff = max(worst_coeff, abs(got - coeff) / abs(coeff))
    passed = passed and (worst_freq <= PROMINENT_FREQ_TOL
                         and worst_coeff <= PROMINENT_COEFF_RTOL)
    detail = (f"freq err {worst_freq:.3e} <= {PROMINENT_FREQ_TOL:g}, "
              f"coeff rel err {worst_coeff:.3e} <= {PROMINENT_COEFF_RTOL:g}")
    if replaced:
        detail += f"; {replaced} reference value gated against certified solve"
    return CheckResult(f"prominent-dyads-n{n}", bool(passed), detail)


def run_golden_checks(heavy: bool = False, cache=None) -> list[CheckResult]:
    """Run every golden check; heavy adds the n=1000/2000 dyad checks."""
    results = [
        check_demo_samples(),
        check_demo_coefficients(cache),
        check_sign_consistency(),
        check_frequency_table(),
        check_sampling_schedule(),
        check_grid_coefficients(cache),
        check_grid_flattened(cache),
        check_grid_roundtrip(cache),
        check_spatial_spots(),
        check_triad_grid(),
    ]
    if heavy:
        results.append(check_prominent_dyads(1000, cache))
        results.append(check_prominent_dyads(2000, cache))
    return results
