"""Shared reference data for the test suite.

These constants are the test suite's own copy of the known-good values
(independent of the copies shipped inside the package for ``swm verify``),
so a corrupted package cannot self-certify.
"""

import numpy as np
import pytest

# Reference midpoint samples of the demo waveform, n=18 over [-2, 2].
REF_V18 = np.array([
    -34.5484836, 30.6666667, -16.0256827, -6.9904692, 49.0000000,
    -6.5602864, -14.1121683, 25.3333333, -26.7629098, -25.7897131,
    22.6666667, -11.7202754, -5.0546469, 35.0000000, -4.6244642,
    -9.8067610, 17.3333333, -18.0041393,
])

# Reference coefficients for the same samples.
REF_C18 = np.array([
    117.12980, 50.27631, -210.98830, -53.27896, 9.35088, 12.58025,
    61.27212, 49.80105, 12.81335, 4.03101, -85.68506, 12.88482,
    8.51973, 60.38772, -69.86421, 28.08997, -9.26140, -32.60758,
])

# Reference frequency table for n=18, duration 4 s.
REF_F18 = np.array([
    0.1250000, 0.1323529, 0.1406250, 0.1500000, 0.1607143, 0.1730769,
    0.1875000, 0.2045455, 0.2250000, 0.2500000, 0.2812500, 0.3214286,
    0.3750000, 0.4500000, 0.5625000, 0.7500000, 1.1250000, 2.2500000,
])

# Demo 4 x 4 raster, bottom-up rows.
REF_GRID4 = np.array([
    [100, 38, 25, 214],
    [98, 3, 77, 12],
    [195, 6, 249, 255],
    [55, 4, 69, 81],
], dtype=np.uint8)

# Its reference coefficients, first index along the x-axis.  (With this
# orientation the pixel (4, 3) equation evaluates to that pixel's gray of
# 255; the transposed orientation lands on pixel (3, 4) instead.)
REF_GRID4_COEFFS = np.array([
    [112.50000, 27.50000, -34.00000, 51.00000],
    [-78.50000, 22.25000, -14.00000, -55.25000],
    [15.25000, -23.50000, 32.25000, 13.50000],
    [28.25000, 42.75000, -31.75000, -8.25000],
])

# The same raster as an ASCII graymap (file rows are top-down).
REF_GRID4_P2 = "P2\n4 4\n255\n55 4 69 81\n195 6 249 255\n98 3 77 12\n100 38 25 214\n"

# Reference tile-unit frequencies for trains 1..8 of an n=32 tile.
REF_TRIAD_F8 = np.array([
    0.5000000, 0.5161290, 0.5333333, 0.5517241,
    0.5714286, 0.5925926, 0.6153846, 0.6400000,
])


def gauss_solve(matrix, rhs):
    """Independent dense solver: plain partial-pivoting elimination.

    Deliberately separate from the package's LAPACK-backed path so
    round-trip tests have a second route to the same answer.
    """
    a = np.array(matrix, dtype=np.float64)
    b = np.array(rhs, dtype=np.float64)
    n = len(b)
    for col in range(n):
        pivot = col + int(np.argmax(np.abs(a[col:, col])))
        if pivot != col:
            a[[col, pivot]] = a[[pivot, col]]
            b[[col, pivot]] = b[[pivot, col]]
        factors = a[col + 1:, col] / a[col, col]
        a[col + 1:, col:] -= factors[:, None] * a[col, col:]
        b[col + 1:] -= factors * b[col]
    x = np.empty(n)
    for row in range(n - 1, -1, -1):
        x[row] = (b[row] - a[row, row + 1:] @ x[row + 1:]) / a[row, row]
    return x


@pytest.fixture
def grid4_image():
    from swm import GrayImage
    return GrayImage(REF_GRID4)
