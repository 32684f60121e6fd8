"""Deterministic file ingestion and emission.

Formats:

* signal CSV -- one sample per line, ``#`` comments allowed;
* grayscale images -- portable graymap (ASCII ``P2`` or binary ``P5``,
  maxval 255) and 8-bit grayscale PNG, with rows flipped so that internal
  row 1 is the bottom row;
* SWT documents -- JSON (lossless round trip) or CSV (frequencies printed
  with exactly 7 decimals, plus full-precision columns);
* coefficient archives -- JSON, one entry per tile;
* sign-pattern rasters -- RGB PNG (blue +, red -, white 0);
* plots -- standalone SVG with byte-stable output.

Every writer is a pure function of its inputs: identical calls produce
identical bytes.
"""

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .core import SampledSignal, Spectrum1D, sample_count
from .errors import FormatError
from .image import CoefficientGrid, GrayImage, SignPattern2D, Spectrum2D, TileGrid

__all__ = [
    "SwtDocument",
    "PlotSeries",
    "read_signal_csv",
    "write_signal_csv",
    "read_gray_image",
    "write_gray_image",
    "write_swt",
    "read_swt",
    "write_coefficients",
    "read_coefficients",
    "write_pattern_image",
    "emit_plot",
]

_PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


# ---------------------------------------------------------------------------
# signal CSV

def read_signal_csv(path, duration: float | None = None,
                    sampling_rate: float | None = None) -> SampledSignal:
    """Read one sample value per line; ``#`` lines and blank lines are skipped.

    Give the record duration, the sampling rate, or both; the missing
    quantity is derived from the line count.  When both are given they must
    agree with the number of lines read.
    """
    if duration is None and sampling_rate is None:
        raise ValueError("either duration or sampling_rate is required")
    values = []
    with open(path, "r", encoding="ascii") as handle:
        for lineno, line in enumerate(handle, 1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            try:
                values.append(float(text))
            except ValueError:
                raise FormatError(
                    f"{path}: line {lineno}: not a decimal value: {text!r}"
                ) from None
    if not values:
        raise FormatError(f"{path}: no sample values found")
    n = len(values)
    if duration is None:
        duration = n / sampling_rate
    elif sampling_rate is None:
        sampling_rate = n / duration
    elif sample_count(sampling_rate, duration) != n:
        raise ValueError(
            f"{path}: sampling_rate * duration = "
            f"{sampling_rate * duration!r} disagrees with {n} sample lines"
        )
    return SampledSignal(values=np.array(values), duration=duration,
                         sampling_rate=sampling_rate)


def write_signal_csv(signal: SampledSignal, path) -> None:
    """Write one full-precision sample value per line."""
    lines = [repr(float(v)) for v in signal.values]
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")


# ---------------------------------------------------------------------------
# grayscale images

def read_gray_image(path) -> GrayImage:
    """Read a P2/P5 graymap or an 8-bit grayscale PNG, flipping to bottom-up."""
    data = Path(path).read_bytes()
    if data[:2] in (b"P2", b"P5"):
        top_down = _parse_pgm(data, str(path))
    elif data[:8] == _PNG_MAGIC:
        top_down = _parse_png(path)
    else:
        raise FormatError(f"{path}: not a P2/P5 graymap or PNG file")
    return GrayImage(top_down[::-1].copy())


def _parse_pgm(data: bytes, name: str) -> np.ndarray:
    magic = data[:2].decode("ascii")
    pos = 2
    tokens = []
    while len(tokens) < 3:
        token, pos = _pgm_token(data, pos, name)
        tokens.append(token)
    try:
        width, height, maxval = (int(t) for t in tokens)
    except ValueError:
        raise FormatError(f"{name}: malformed graymap header") from None
    if width < 1 or height < 1:
        raise FormatError(f"{name}: bad graymap dimensions {width} x {height}")
    if maxval != 255:
        raise FormatError(
            f"{name}: unsupported bit depth (maxval {maxval}, need 255)"
        )
    if magic == "P5":
        payload = data[pos + 1:pos + 1 + width * height]  # one whitespace byte
        if len(payload) != width * height:
            raise FormatError(f"{name}: truncated P5 payload")
        pixels = np.frombuffer(payload, dtype=np.uint8)
    else:
        try:
            text = data[pos:].decode("ascii")
        except UnicodeDecodeError:
            raise FormatError(f"{name}: P2 payload is not ASCII") from None
        fields = "\n".join(
            line.split("#", 1)[0] for line in text.splitlines()
        ).split()
        if len(fields) != width * height:
            raise FormatError(
                f"{name}: expected {width * height} P2 values, got {len(fields)}"
            )
        try:
            pixels = np.array([int(f) for f in fields], dtype=np.int64)
        except ValueError:
            raise FormatError(f"{name}: non-integer P2 value") from None
        if pixels.min() < 0 or pixels.max() > 255:
            raise FormatError(f"{name}: P2 value outside [0, 255]")
        pixels = pixels.astype(np.uint8)
    return pixels.reshape(height, width)


def _pgm_token(data: bytes, pos: int, name: str) -> tuple[str, int]:
    """Next whitespace-delimited header token, honoring ``#`` comments."""
    while pos < len(data):
        byte = data[pos:pos + 1]
        if byte == b"#":
            while pos < len(data) and data[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
        elif byte.isspace():
            pos += 1
        else:
            break
    start = pos
    while pos < len(data) and not data[pos:pos + 1].isspace():
        pos += 1
    if start == pos:
        raise FormatError(f"{name}: truncated graymap header")
    return data[start:pos].decode("ascii", errors="replace"), pos


def _parse_png(path) -> np.ndarray:
    try:
        with Image.open(path) as img:
            if img.format != "PNG":
                raise FormatError(f"{path}: not a PNG file")
            if img.mode != "L":
                raise FormatError(
                    f"{path}: unsupported PNG mode {img.mode!r} "
                    "(need 8-bit grayscale)"
                )
            return np.asarray(img, dtype=np.uint8)
    except UnidentifiedImageError:
        raise FormatError(f"{path}: unreadable PNG file") from None


def write_gray_image(image: GrayImage, path, format: str | None = None) -> None:
    """Write PNG or graymap; the format is inferred from the suffix.

    ``format`` may be ``"png"``, ``"P5"`` (binary graymap, the ``.pgm``
    default) or ``"P2"`` (ASCII graymap).
    """
    path = Path(path)
    if format is None:
        suffix = path.suffix.lower()
        if suffix == ".png":
            format = "png"
        elif suffix in (".pgm", ".pnm"):
            format = "P5"
        else:
            raise ValueError(f"cannot infer image format from {path.name!r}")
    top_down = image.pixels[::-1]
    if format.lower() == "png":
        Image.fromarray(top_down, mode="L").save(path, format="PNG")
    elif format.upper() == "P5":
        header = f"P5\n{image.width} {image.height}\n255\n".encode("ascii")
        path.write_bytes(header + top_down.tobytes())
    elif format.upper() == "P2":
        rows = "\n".join(" ".join(str(v) for v in row) for row in top_down)
        path.write_text(f"P2\n{image.width} {image.height}\n255\n{rows}\n",
                        encoding="ascii")
    else:
        raise ValueError(f"unknown image format {format!r}")


# ---------------------------------------------------------------------------
# SWT documents

@dataclass(frozen=True, eq=False)
class SwtDocument:
    """A serializable SWT: a 1D dyad spectrum or a 2D triad spectrum."""

    kind: str
    spectrum: Spectrum1D | Spectrum2D

    def __post_init__(self):
        if self.kind not in ("swt1d", "swt2d"):
            raise ValueError(f"kind must be 'swt1d' or 'swt2d', got {self.kind!r}")
        if len(self.spectrum) == 0:
            raise ValueError("refusing to serialize an empty spectrum")

    @classmethod
    def for_spectrum(cls, spectrum) -> "SwtDocument":
        kind = "swt1d" if isinstance(spectrum, Spectrum1D) else "swt2d"
        return cls(kind=kind, spectrum=spectrum)


def write_swt(document: SwtDocument, path, format: str = "json") -> None:
    """Serialize an SWT document as JSON (lossless) or CSV (listing style)."""
    if format == "json":
        text = _swt_json(document)
    elif format == "csv":
        text = _swt_csv(document)
    else:
        raise ValueError(f"format must be 'json' or 'csv', got {format!r}")
    Path(path).write_text(text, encoding="ascii")


def _swt_json(document: SwtDocument) -> str:
    spectrum = document.spectrum
    payload = {"format": "swt", "version": 1, "kind": document.kind}
    if document.kind == "swt1d":
        payload["n"] = int(spectrum.n)
        payload["duration"] = float(spectrum.duration)
        payload["dyads"] = [
            {"index": int(i), "frequency": float(f), "coefficient": float(c)}
            for i, f, c in zip(spectrum.indices, spectrum.frequencies, spectrum.coefficients)
        ]
    else:
        payload["n_x"] = int(spectrum.n_x)
        payload["n_y"] = int(spectrum.n_y)
        payload["unit"] = spectrum.unit
        payload["triads"] = [
            {"i": int(i), "j": int(j), "fx": float(fx), "fy": float(fy),
             "coefficient": float(c)}
            for i, j, fx, fy, c in zip(spectrum.i_indices, spectrum.j_indices,
                                       spectrum.fx, spectrum.fy, spectrum.coefficients)
        ]
    return json.dumps(payload, indent=2) + "\n"


def _swt_csv(document: SwtDocument) -> str:
    spectrum = document.spectrum
    lines = []
    if document.kind == "swt1d":
        lines.append(f"# swt version=1 kind=swt1d n={spectrum.n} "
                     f"duration={float(spectrum.duration)!r}")
        for i, f, c in zip(spectrum.indices, spectrum.frequencies, spectrum.coefficients):
            lines.append(f"{i},{f:.7f},{c:.5f},{float(f)!r},{float(c)!r}")
    else:
        lines.append(f"# swt version=1 kind=swt2d n_x={spectrum.n_x} "
                     f"n_y={spectrum.n_y} unit={spectrum.unit}")
        for i, j, fx, fy, c in zip(spectrum.i_indices, spectrum.j_indices,
                                   spectrum.fx, spectrum.fy, spectrum.coefficients):
            lines.append(f"{i},{j},{fx:.7f},{fy:.7f},{c:.5f},"
                         f"{float(fx)!r},{float(fy)!r},{float(c)!r}")
    return "\n".join(lines) + "\n"


def read_swt(path) -> SwtDocument:
    """Parse an SWT document written by :func:`write_swt` (JSON or CSV)."""
    text = Path(path).read_text(encoding="ascii").lstrip()
    if text.startswith("{"):
        return _swt_from_json(text, str(path))
    if text.startswith("# swt "):
        return _swt_from_csv(text, str(path))
    raise FormatError(f"{path}: not an SWT document")


def _swt_from_json(text: str, name: str) -> SwtDocument:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{name}: malformed JSON: {exc}") from None
    if not isinstance(payload, dict) or payload.get("format") != "swt":
        raise FormatError(f"{name}: not an SWT document")
    if payload.get("version") != 1:
        raise FormatError(
            f"{name}: unsupported SWT document version {payload.get('version')!r}"
        )
    try:
        kind = payload["kind"]
        if kind == "swt1d":
            dyads = payload["dyads"]
            spectrum = Spectrum1D(
                n=payload["n"],
                duration=payload["duration"],
                indices=np.array([d["index"] for d in dyads], dtype=np.int64),
                frequencies=np.array([d["frequency"] for d in dyads]),
                coefficients=np.array([d["coefficient"] for d in dyads]),
            )
        elif kind == "swt2d":
            triads = payload["triads"]
            spectrum = Spectrum2D(
                n_x=payload["n_x"],
                n_y=payload["n_y"],
                unit=payload["unit"],
                i_indices=np.array([t["i"] for t in triads], dtype=np.int64),
                j_indices=np.array([t["j"] for t in triads], dtype=np.int64),
                fx=np.array([t["fx"] for t in triads]),
                fy=np.array([t["fy"] for t in triads]),
                coefficients=np.array([t["coefficient"] for t in triads]),
            )
        else:
            raise FormatError(f"{name}: unknown SWT kind {kind!r}")
    except (KeyError, TypeError) as exc:
        raise FormatError(f"{name}: malformed SWT document ({exc})") from None
    return SwtDocument(kind=kind, spectrum=spectrum)


def _swt_from_csv(text: str, name: str) -> SwtDocument:
    lines = [line for line in text.splitlines() if line.strip()]
    meta = dict(
        item.split("=", 1) for item in lines[0][len("# swt "):].split()
    )
    if meta.get("version") != "1":
        raise FormatError(
            f"{name}: unsupported SWT document version {meta.get('version')!r}"
        )
    rows = [line.split(",") for line in lines[1:]]
    try:
        kind = meta["kind"]
        if kind == "swt1d":
            spectrum = Spectrum1D(
                n=int(meta["n"]),
                duration=float(meta["duration"]),
                indices=np.array([int(r[0]) for r in rows], dtype=np.int64),
                frequencies=np.array([float(r[3]) for r in rows]),
                coefficients=np.array([float(r[4]) for r in rows]),
            )
        elif kind == "swt2d":
            spectrum = Spectrum2D(
                n_x=int(meta["n_x"]),
                n_y=int(meta["n_y"]),
                unit=meta["unit"],
                i_indices=np.array([int(r[0]) for r in rows], dtype=np.int64),
                j_indices=np.array([int(r[1]) for r in rows], dtype=np.int64),
                fx=np.array([float(r[5]) for r in rows]),
                fy=np.array([float(r[6]) for r in rows]),
                coefficients=np.array([float(r[7]) for r in rows]),
            )
        else:
            raise FormatError(f"{name}: unknown SWT kind {kind!r}")
    except (KeyError, IndexError, ValueError) as exc:
        raise FormatError(f"{name}: malformed SWT CSV ({exc})") from None
    return SwtDocument(kind=kind, spectrum=spectrum)


# ---------------------------------------------------------------------------
# coefficient archives

def write_coefficients(grids: TileGrid, path) -> None:
    """Write a per-tile coefficient archive (JSON)."""
    tiles = []
    for l in range(1, grids.rows + 1):
        for k in range(1, grids.columns + 1):
            grid = grids.tile(k, l)
            tiles.append({
                "column": k,
                "row": l,
                "coefficients": [[float(c) for c in col]
                                 for col in grid.coefficients],
            })
    payload = {
        "format": "swm-coefficients",
        "version": 1,
        "tile_size": grids.tile_size,
        "columns": grids.columns,
        "rows": grids.rows,
        "tiles": tiles,
    }
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="ascii")


def read_coefficients(path) -> TileGrid:
    """Read a coefficient archive written by :func:`write_coefficients`."""
    try:
        payload = json.loads(Path(path).read_text(encoding="ascii"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: malformed JSON: {exc}") from None
    if not isinstance(payload, dict) or payload.get("format") != "swm-coefficients":
        raise FormatError(f"{path}: not a coefficient archive")
    if payload.get("version") != 1:
        raise FormatError(
            f"{path}: unsupported archive version {payload.get('version')!r}"
        )
    try:
        size = payload["tile_size"]
        columns, rows = payload["columns"], payload["rows"]
        by_position = {}
        for entry in payload["tiles"]:
            grid = CoefficientGrid(np.array(entry["coefficients"]))
            if grid.n_x != size or grid.n_y != size:
                raise FormatError(
                    f"{path}: tile ({entry['column']}, {entry['row']}) has "
                    f"{grid.n_x} x {grid.n_y} coefficients, expected {size} x {size}"
                )
            by_position[(entry["column"], entry["row"])] = grid
        tiles = tuple(
            tuple(by_position[(k, l)] for l in range(1, rows + 1))
            for k in range(1, columns + 1)
        )
    except (KeyError, TypeError) as exc:
        raise FormatError(f"{path}: malformed coefficient archive ({exc})") from None
    return TileGrid(tile_size=size, columns=columns, rows=rows, tiles=tiles)


# ---------------------------------------------------------------------------
# pattern rasters

_PATTERN_COLORS = {
    1: (0, 0, 255),        # positive contribution: blue
    -1: (255, 0, 0),       # negative contribution: red
    0: (255, 255, 255),    # null coefficient: white
}


def write_pattern_image(pattern: SignPattern2D, path, scale: int = 1) -> None:
    """Render a contribution pattern as an RGB PNG, one pixel per cell.

    ``scale`` enlarges each cell to a scale x scale block.
    """
    if scale < 1:
        raise ValueError(f"scale must be >= 1, got {scale}")
    rgb = np.empty(pattern.signs.shape + (3,), dtype=np.uint8)
    for value, color in _PATTERN_COLORS.items():
        rgb[pattern.signs == value] = color
    top_down = rgb[::-1]
    if scale > 1:
        top_down = np.repeat(np.repeat(top_down, scale, axis=0), scale, axis=1)
    Image.fromarray(top_down, mode="RGB").save(path, format="PNG")


# ---------------------------------------------------------------------------
# plots

@dataclass(frozen=True, eq=False)
class PlotSeries:
    """Points to plot, ordered by x; style is ``"stem"`` or ``"line"``."""

    points: np.ndarray
    style: str = "stem"
    xlabel: str = ""
    ylabel: str = ""

    def __post_init__(self):
        points = np.asarray(self.points, dtype=np.float64)
        if points.ndim != 2 or points.shape[1] != 2 or points.shape[0] == 0:
            raise ValueError("points must be a non-empty (N, 2) array")
        if not np.isfinite(points).all():
            raise ValueError("plot points must be finite")
        order = np.argsort(points[:, 0], kind="stable")
        object.__setattr__(self, "points", points[order])
        if self.style not in ("stem", "line"):
            raise ValueError(f"style must be 'stem' or 'line', got {self.style!r}")


_SVG_WIDTH, _SVG_HEIGHT = 640, 480
_MARGIN_LEFT, _MARGIN_RIGHT, _MARGIN_TOP, _MARGIN_BOTTOM = 72, 16, 16, 48


def _escape(text: str) -> str:
    return (text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;"))


def _axis_range(lo: float, hi: float, include_zero: bool) -> tuple[float, float]:
    if include_zero:
        lo, hi = min(lo, 0.0), max(hi, 0.0)
    if lo == hi:
        pad = abs(lo) * 0.05 or 1.0
    else:
        pad = (hi - lo) * 0.05
    return lo - pad, hi + pad


def emit_plot(series: PlotSeries, path) -> None:
    """Write a standalone SVG; stem style draws one vertical line per point.

    Output bytes depend only on the series content (fixed canvas, no
    timestamps), so identical inputs give identical files.
    """
    pts = series.points
    x_lo, x_hi = _axis_range(pts[:, 0].min(), pts[:, 0].max(), False)
    y_lo, y_hi = _axis_range(pts[:, 1].min(), pts[:, 1].max(),
                             series.style == "stem")
    plot_w = _SVG_WIDTH - _MARGIN_LEFT - _MARGIN_RIGHT
    plot_h = _SVG_HEIGHT - _MARGIN_TOP - _MARGIN_BOTTOM

    def px(x):
        return _MARGIN_LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w

    def py(y):
        return _MARGIN_TOP + (y_hi - y) / (y_hi - y_lo) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{_SVG_WIDTH}" height="{_SVG_HEIGHT}" '
        f'viewBox="0 0 {_SVG_WIDTH} {_SVG_HEIGHT}">',
        f'<rect x="0" y="0" width="{_SVG_WIDTH}" height="{_SVG_HEIGHT}" '
        f'fill="white"/>',
        f'<rect x="{_MARGIN_LEFT}" y="{_MARGIN_TOP}" width="{plot_w}" '
        f'height="{plot_h}" fill="none" stroke="black" stroke-width="1"/>',
    ]
    if y_lo < 0.0 < y_hi:
        zero = py(0.0)
        parts.append(
            f'<line x1="{_MARGIN_LEFT}" y1="{zero:.2f}" '
            f'x2="{_MARGIN_LEFT + plot_w}" y2="{zero:.2f}" '
            f'stroke="#888888" stroke-width="0.5"/>'
        )
    for tick in np.linspace(x_lo, x_hi, 5):
        x = px(tick)
        parts.append(
            f'<line x1="{x:.2f}" y1="{_MARGIN_TOP + plot_h}" x2="{x:.2f}" '
            f'y2="{_MARGIN_TOP + plot_h + 4}" stroke="black" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{x:.2f}" y="{_MARGIN_TOP + plot_h + 16}" '
            f'font-family="monospace" font-size="10" text-anchor="middle">'
            f'{tick:.7g}</text>'
        )
    for tick in np.linspace(y_lo, y_hi, 5):
        y = py(tick)
        parts.append(
            f'<line x1="{_MARGIN_LEFT - 4}" y1="{y:.2f}" x2="{_MARGIN_LEFT}" '
            f'y2="{y:.2f}" stroke="black" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_MARGIN_LEFT - 6}" y="{y + 3:.2f}" '
            f'font-family="monospace" font-size="10" text-anchor="end">'
            f'{tick:.7g}</text>'
        )
    if series.style == "stem":
        base = py(max(y_lo, min(0.0, y_hi)))
        for x, y in pts:
            parts.append(
                f'<line x1="{px(x):.2f}" y1="{base:.2f}" '
                f'x2="{px(x):.2f}" y2="{py(y):.2f}" '
                f'stroke="blue" stroke-width="1"/>'
            )
    else:
        coords = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in pts)
        parts.append(
            f'<polyline points="{coords}" fill="none" stroke="blue" '
            f'stroke-width="1"/>'
        )
    if series.xlabel:
        parts.append(
            f'<text x="{_MARGIN_LEFT + plot_w / 2:.2f}" '
            f'y="{_SVG_HEIGHT - 8}" font-family="monospace" font-size="12" '
            f'text-anchor="middle">{_escape(series.xlabel)}</text>'
        )
    if series.ylabel:
        x, y = 14, _MARGIN_TOP + plot_h / 2
        parts.append(
            f'<text x="{x}" y="{y:.2f}" font-family="monospace" font-size="12" '
            f'text-anchor="middle" transform="rotate(-90 {x} {y:.2f})">'
            f'{_escape(series.ylabel)}</text>'
        )
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts) + "\n", encoding="utf-8")
