"""Square-wave decomposition of 2D grayscale rasters.

Each pixel (column i, row j) of an n x n tile contributes one equation:
the sum over all train pairs (p, q) of ``A[i,p] * A[j,q] * C[p,q]`` equals
the pixel's gray level, where ``A`` is the 1D sign matrix.  That system is
the Kronecker product of two 1D sign systems, so instead of solving
n^2 equations it is solved as two passes of n-sized solves: first
``A @ X = G`` column-wise, then the same factorization against the
transpose.  A 512 x 512 image analyzed whole therefore costs two 512-size
factorized solves rather than one 262,144-equation solve.

Rows are counted from the bottom throughout (row 1 is the bottom row),
matching the y-up coordinate convention of the method.
"""

from dataclasses import dataclass

import numpy as np

from .core import FrequencySchedule, SolverCache, build_sign_matrix, shared_cache

__all__ = [
    "GrayImage",
    "TileGrid",
    "CoefficientGrid",
    "Spectrum2D",
    "SignPattern2D",
    "pixel_equation_signs",
    "analyze_tile",
    "analyze_image",
    "analyze_full",
    "spatial_frequencies",
    "triads",
    "approximate",
    "contribution_pattern",
]


@dataclass(frozen=True, eq=False)
class GrayImage:
    """8-bit grayscale raster with bottom-up rows.

    ``pixels[j-1, i-1]`` is the gray level (0 black .. 255 white) of the
    pixel in column ``i``, row ``j``, with row 1 at the bottom.
    """

    pixels: np.ndarray

    def __post_init__(self):
        pixels = np.asarray(self.pixels)
        if pixels.ndim != 2 or pixels.size == 0:
            raise ValueError("image must be a non-empty 2D array")
        if pixels.min() < 0 or pixels.max() > 255:
            raise ValueError("gray levels must lie in [0, 255]")
        object.__setattr__(self, "pixels", pixels.astype(np.uint8))

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]


@dataclass(frozen=True, eq=False)
class CoefficientGrid:
    """Solved coefficients of one tile; first index runs along the x-axis.

    ``coefficients[p-1, q-1]`` multiplies the pattern that is train ``p``
    along x and train ``q`` along y.
    """

    coefficients: np.ndarray

    def __post_init__(self):
        coefficients = np.asarray(self.coefficients, dtype=np.float64)
        if coefficients.ndim != 2 or coefficients.size == 0:
            raise ValueError("coefficient grid must be a non-empty 2D array")
        object.__setattr__(self, "coefficients", coefficients)

    @property
    def n_x(self) -> int:
        return self.coefficients.shape[0]

    @property
    def n_y(self) -> int:
        return self.coefficients.shape[1]


@dataclass(frozen=True, eq=False)
class TileGrid:
    """A columns x rows arrangement of per-tile payloads.

    ``tiles[k-1][l-1]`` is the payload of the tile in column ``k``
    (left to right) and row ``l`` (bottom up).
    """

    tile_size: int
    columns: int
    rows: int
    tiles: tuple

    def __post_init__(self):
        if self.tile_size < 1:
            raise ValueError("tile_size must be >= 1")
        tiles = tuple(tuple(column) for column in self.tiles)
        if len(tiles) != self.columns or any(len(col) != self.rows for col in tiles):
            raise ValueError("tile payloads do not match the declared grid shape")
        object.__setattr__(self, "tiles", tiles)

    def tile(self, k: int, l: int):
        """Payload of tile column ``k``, row ``l`` (both 1-based, row 1 bottom)."""
        if not (1 <= k <= self.columns and 1 <= l <= self.rows):
            raise ValueError(
                f"tile ({k}, {l}) outside the {self.columns} x {self.rows} grid"
            )
        return self.tiles[k - 1][l - 1]


@dataclass(frozen=True, eq=False)
class Spectrum2D:
    """SWT of one tile: (f_x, f_y, coefficient) triads in j-major order."""

    n_x: int
    n_y: int
    unit: str
    i_indices: np.ndarray
    j_indices: np.ndarray
    fx: np.ndarray
    fy: np.ndarray
    coefficients: np.ndarray

    def __len__(self):
        return len(self.coefficients)

    @property
    def triads(self):
        """Iterate (f_x, f_y, coefficient) triples in listing order."""
        return list(zip(self.fx.tolist(), self.fy.tolist(),
                        self.coefficients.tolist()))


@dataclass(frozen=True, eq=False)
class SignPattern2D:
    """Sign (+1/-1, or 0 for a null coefficient) of one coefficient's
    contribution to every pixel of its tile.

    ``signs[j-1, i-1]`` is the contribution sign at column ``i``, row ``j``
    (bottom-up), mirroring :class:`GrayImage` layout.
    """

    signs: np.ndarray

    def __post_init__(self):
        signs = np.asarray(self.signs)
        if signs.ndim != 2 or signs.size == 0:
            raise ValueError("pattern must be a non-empty 2D array")
        object.__setattr__(self, "signs", signs.astype(np.int8))

    @property
    def width(self) -> int:
        return self.signs.shape[1]

    @property
    def height(self) -> int:
        return self.signs.shape[0]


def pixel_equation_signs(i: int, j: int, n_x: int, n_y: int) -> np.ndarray:
    """Signs of every coefficient in the equation of pixel (i, j).

    Returns an ``n_x x n_y`` int8 array whose ``[p-1, q-1]`` entry is
    ``A_x[i, p] * A_y[j, q]``: the two 1D sign sets of the pixel's column
    and row, combined multiplicatively over all train pairs.
    """
    if not 1 <= i <= n_x:
        raise ValueError(f"pixel column {i} outside [1, {n_x}]")
    if not 1 <= j <= n_y:
        raise ValueError(f"pixel row {j} outside [1, {n_y}]")
    ax = build_sign_matrix(n_x)
    ay = ax if n_y == n_x else build_sign_matrix(n_y)
    return np.outer(ax[i - 1], ay[j - 1]).astype(np.int8)


def _solve_tile(pixels: np.ndarray, cache: SolverCache) -> np.ndarray:
    """Two-pass Kronecker solve; pixels indexed [row, column] bottom-up."""
    n_y, n_x = pixels.shape
    gray = pixels.T.astype(np.float64)      # [i-1, j-1] = gray(column i, row j)
    half = cache.solve(n_x, gray)           # A_x @ half = gray
    return cache.solve(n_y, half.T).T       # A_y @ C.T = half.T


def analyze_tile(tile: GrayImage, cache: SolverCache | None = None) -> CoefficientGrid:
    """Solve one square tile for its coefficient grid.

    The result satisfies ``gray(i, j) = sum_pq A[i,p] A[j,q] C[p,q]`` to
    solver residual; the n^2-equation system is never materialized.
    """
    if tile.width != tile.height:
        raise ValueError(
            f"tile must be square, got {tile.width} x {tile.height}"
        )
    if cache is None:
        cache = shared_cache()
    return CoefficientGrid(_solve_tile(tile.pixels, cache))


def analyze_image(image: GrayImage, tile_size: int,
                  cache: SolverCache | None = None) -> TileGrid:
    """Partition the image into square tiles and analyze each independently.

    Tile (k, l) covers columns ``(k-1)*s+1 .. k*s`` and bottom-up rows
    ``(l-1)*s+1 .. l*s``.  Results do not depend on processing order.
    """
    if tile_size < 1:
        raise ValueError(f"tile size must be >= 1, got {tile_size}")
    if image.width % tile_size:
        raise ValueError(
            f"width {image.width} is not divisible by tile size {tile_size}"
        )
    if image.height % tile_size:
        raise ValueError(
            f"height {image.height} is not divisible by tile size {tile_size}"
        )
    if cache is None:
        cache = shared_cache()
    columns = image.width // tile_size
    rows = image.height // tile_size
    s = tile_size
    tiles = tuple(
        tuple(
            CoefficientGrid(_solve_tile(
                image.pixels[(l - 1) * s:l * s, (k - 1) * s:k * s], cache))
            for l in range(1, rows + 1)
        )
        for k in range(1, columns + 1)
    )
    return TileGrid(tile_size=tile_size, columns=columns, rows=rows, tiles=tiles)


def analyze_full(image: GrayImage, cache: SolverCache | None = None) -> CoefficientGrid:
    """Analyze a square image as a single tile."""
    return analyze_tile(image, cache)


def spatial_frequencies(n: int, unit: str = "tile",
                        axis_extent: float | None = None) -> FrequencySchedule:
    """Spatial frequency schedule along one image axis.

    ``unit="tile"`` measures in cycles per tile width (axis extent 1);
    ``unit="pixel"`` in cycles per pixel side (axis extent n).  An explicit
    ``axis_extent`` overrides either default for custom physical units.
    """
    if n < 1:
        raise ValueError(f"number of trains must be >= 1, got {n}")
    if unit not in ("tile", "pixel"):
        raise ValueError(f"unit must be 'tile' or 'pixel', got {unit!r}")
    if axis_extent is None:
        axis_extent = 1.0 if unit == "tile" else float(n)
    half_waves = np.arange(n, 0, -1, dtype=np.float64)
    values = (float(n) / half_waves) / (2.0 * axis_extent)
    return FrequencySchedule(n=n, interval=float(axis_extent), values=values)


def triads(grid: CoefficientGrid, unit: str = "tile",
           keep: int | None = None) -> Spectrum2D:
    """Emit (f_x, f_y, coefficient) triads of a coefficient grid.

    Listing order is j-major (the x index varies fastest).  With ``keep=m``
    only coefficients with both indices <= m are emitted.
    """
    n_x, n_y = grid.n_x, grid.n_y
    m_x, m_y = n_x, n_y
    if keep is not None:
        if not 1 <= keep <= max(n_x, n_y):
            raise ValueError(f"keep must be in [1, {max(n_x, n_y)}], got {keep}")
        m_x, m_y = min(keep, n_x), min(keep, n_y)
    fx_sched = spatial_frequencies(n_x, unit).values
    fy_sched = spatial_frequencies(n_y, unit).values
    jj, ii = np.meshgrid(np.arange(1, m_y + 1), np.arange(1, m_x + 1),
                         indexing="ij")
    i_indices = ii.ravel()
    j_indices = jj.ravel()
    return Spectrum2D(
        n_x=n_x,
        n_y=n_y,
        unit=unit,
        i_indices=i_indices,
        j_indices=j_indices,
        fx=fx_sched[i_indices - 1],
        fy=fy_sched[j_indices - 1],
        coefficients=grid.coefficients[i_indices - 1, j_indices - 1],
    )


def _reconstruct_tile(grid: CoefficientGrid, m_x: int, m_y: int) -> np.ndarray:
    """Truncated gray values of one tile, [row, column] bottom-up, unclamped."""
    ax = build_sign_matrix(grid.n_x).astype(np.float64)
    ay = ax if grid.n_y == grid.n_x else build_sign_matrix(grid.n_y).astype(np.float64)
    values = ax[:, :m_x] @ grid.coefficients[:m_x, :m_y] @ ay[:, :m_y].T
    return values.T                          # [j-1, i-1]


def approximate(grids: TileGrid, m: int) -> GrayImage:
    """Reassemble the image keeping only coefficients with both indices <= m.

    ``m == tile_size`` reproduces the analyzed image exactly.  Sums are
    clamped to [0, 255] and rounded half away from zero.
    """
    if not 1 <= m <= grids.tile_size:
        raise ValueError(f"m must be in [1, {grids.tile_size}], got {m}")
    s = grids.tile_size
    pixels = np.empty((grids.rows * s, grids.columns * s), dtype=np.uint8)
    for k in range(1, grids.columns + 1):
        for l in range(1, grids.rows + 1):
            values = _reconstruct_tile(grids.tile(k, l), m, m)
            clamped = np.clip(values, 0.0, 255.0)
            pixels[(l - 1) * s:l * s, (k - 1) * s:k * s] = \
                np.floor(clamped + 0.5).astype(np.uint8)
    return GrayImage(pixels)


def single_tile_grid(grid: CoefficientGrid) -> TileGrid:
    """Wrap one square coefficient grid as a 1 x 1 tile grid."""
    if grid.n_x != grid.n_y:
        raise ValueError("single-tile wrapping needs a square coefficient grid")
    return TileGrid(tile_size=grid.n_x, columns=1, rows=1, tiles=((grid,),))


def contribution_pattern(grid: CoefficientGrid, p: int, q: int) -> SignPattern2D:
    """Sign of coefficient (p, q)'s contribution to every pixel of its tile.

    The pattern at pixel (i, j) is ``sign(C[p,q]) * A[i,p] * A[j,q]``; a
    null coefficient yields an all-zero pattern.  Along x the signs
    alternate in blocks of ``n_x - p + 1`` columns, and likewise along y.
    """
    if not 1 <= p <= grid.n_x:
        raise ValueError(f"x train index {p} outside [1, {grid.n_x}]")
    if not 1 <= q <= grid.n_y:
        raise ValueError(f"y train index {q} outside [1, {grid.n_y}]")
    ax = build_sign_matrix(grid.n_x)
    ay = ax if grid.n_y == grid.n_x else build_sign_matrix(grid.n_y)
    sign = int(np.sign(grid.coefficients[p - 1, q - 1]))
    return SignPattern2D(sign * np.outer(ay[:, q - 1], ax[:, p - 1]))
