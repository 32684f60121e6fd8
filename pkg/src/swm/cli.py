"""Command-line interface.

Exit codes: 0 ok, 1 failed verification, 2 invalid input, 3 singular
system, 4 I/O error.  Every nonzero exit is accompanied by a one-line
diagnostic on standard error.
"""

import argparse
import sys

import numpy as np

from . import core, golden, image
from . import io as swmio
from .errors import SingularSystemError

__all__ = ["main"]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="swm",
        description="Square-wave decomposition of 1D signals and "
                    "grayscale images.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="sample the built-in demo waveform to CSV")
    p.add_argument("--n", type=int, required=True, help="number of sub-intervals")
    p.add_argument("--dt", type=float, required=True, help="window length in seconds")
    p.add_argument("--origin", type=float, default=None,
                   help="window start (default: -dt/2)")
    p.add_argument("--out", required=True, help="output CSV path")

    p = sub.add_parser("analyze-signal", help="solve a sampled signal into dyads")
    p.add_argument("--input", required=True, help="signal CSV path")
    p.add_argument("--dt", type=float, help="record duration in seconds")
    p.add_argument("--fs", type=float, help="sampling rate in Hz")
    p.add_argument("--fmax", type=float,
                   help="keep only dyads with frequency <= fmax")
    p.add_argument("--out-swt", help="output SWT document (.json or .csv)")
    p.add_argument("--out-plot", help="output stem plot (SVG)")

    p = sub.add_parser("analyze-image", help="solve image tiles into coefficients")
    p.add_argument("--input", required=True, help="PGM or PNG path")
    p.add_argument("--tile", type=int, help="tile size in pixels")
    p.add_argument("--full", action="store_true",
                   help="analyze the whole image as one tile")
    p.add_argument("--out", required=True, help="output coefficient archive (JSON)")

    p = sub.add_parser("approximate", help="rebuild an image from coefficients")
    p.add_argument("--coeffs", required=True, help="coefficient archive path")
    p.add_argument("--keep", type=int, required=True,
                   help="keep coefficients with both train indices <= keep")
    p.add_argument("--out", required=True, help="output image (PNG or PGM)")

    p = sub.add_parser("pattern", help="render one coefficient's sign pattern")
    p.add_argument("--coeffs", help="coefficient archive path")
    p.add_argument("--n", type=int, help="tile size (positive pattern, no archive)")
    p.add_argument("--tile-col", type=int, default=1, help="tile column (1-based)")
    p.add_argument("--tile-row", type=int, default=1,
                   help="tile row (1-based, bottom up)")
    p.add_argument("--i", type=int, required=True, dest="p", metavar="P",
                   help="x-axis train index")
    p.add_argument("--j", type=int, required=True, dest="q", metavar="Q",
                   help="y-axis train index")
    p.add_argument("--scale", type=int, default=1, help="integer upscale factor")
    p.add_argument("--out", required=True, help="output PNG path")

    p = sub.add_parser("frequencies", help="print a frequency schedule")
    p.add_argument("--n", type=int, required=True, help="number of trains")
    p.add_argument("--dt", type=float, help="window length in seconds")
    p.add_argument("--unit", choices=("tile", "pixel"),
                   help="spatial schedule in the chosen unit")
    p.add_argument("--i", type=int, help="print only the i-th frequency")

    p = sub.add_parser("verify", help="run the built-in golden checks")
    p.add_argument("--heavy", action="store_true",
                   help="also run the n=1000/2000 checks")
    return parser


def _cmd_synth(args) -> int:
    signal = core.sample_demo_signal(args.n, args.dt, args.origin)
    swmio.write_signal_csv(signal, args.out)
    print(f"wrote {args.n} samples over dt={args.dt:g} s to {args.out}")
    return 0


def _cmd_analyze_signal(args) -> int:
    if args.dt is None and args.fs is None:
        raise ValueError("one of --dt or --fs is required")
    signal = swmio.read_signal_csv(args.input, duration=args.dt,
                                   sampling_rate=args.fs)
    spectrum = core.analyze_1d(signal)
    if args.fmax is not None:
        spectrum = core.filter_by_frequency(spectrum, args.fmax)
        if len(spectrum) == 0:
            raise ValueError(f"--fmax {args.fmax:g} drops every dyad")
    if args.out_swt:
        fmt = "csv" if args.out_swt.lower().endswith(".csv") else "json"
        swmio.write_swt(swmio.SwtDocument.for_spectrum(spectrum),
                        args.out_swt, format=fmt)
    if args.out_plot:
        points = np.column_stack([spectrum.frequencies, spectrum.coefficients])
        series = swmio.PlotSeries(points, style="stem",
                                  xlabel="frequency", ylabel="coefficient")
        swmio.emit_plot(series, args.out_plot)
    print(f"n={signal.n} duration={signal.duration:g} s: "
          f"{len(spectrum)} dyads "
          f"({spectrum.frequencies[0]:.7f} .. {spectrum.frequencies[-1]:.7f})")
    return 0


def _cmd_analyze_image(args) -> int:
    if args.full == (args.tile is not None):
        raise ValueError("use exactly one of --tile or --full")
    img = swmio.read_gray_image(args.input)
    if args.full:
        grids = image.single_tile_grid(image.analyze_full(img))
    else:
        grids = image.analyze_image(img, args.tile)
    swmio.write_coefficients(grids, args.out)
    print(f"{img.width} x {img.height} image -> "
          f"{grids.columns * grids.rows} tile(s) of size {grids.tile_size}, "
          f"coefficients in {args.out}")
    return 0


def _cmd_approximate(args) -> int:
    grids = swmio.read_coefficients(args.coeffs)
    approx = image.approximate(grids, args.keep)
    swmio.write_gray_image(approx, args.out)
    print(f"approximation {args.keep}_{grids.tile_size} "
          f"({approx.width} x {approx.height}) written to {args.out}")
    return 0


def _cmd_pattern(args) -> int:
    if (args.coeffs is None) == (args.n is None):
        raise ValueError("use exactly one of --coeffs or --n")
    if args.coeffs:
        grids = swmio.read_coefficients(args.coeffs)
        grid = grids.tile(args.tile_col, args.tile_row)
    else:
        grid = image.CoefficientGrid(np.ones((args.n, args.n)))
    pattern = image.contribution_pattern(grid, args.p, args.q)
    swmio.write_pattern_image(pattern, args.out, scale=args.scale)
    print(f"contribution pattern ({args.p}, {args.q}) written to {args.out}")
    return 0


def _cmd_frequencies(args) -> int:
    if (args.dt is None) == (args.unit is None):
        raise ValueError("use exactly one of --dt or --unit")
    if args.dt is not None:
        schedule = core.frequencies_1d(args.n, args.dt)
    else:
        schedule = image.spatial_frequencies(args.n, args.unit)
    if args.i is not None:
        if not 1 <= args.i <= args.n:
            raise ValueError(f"--i must be in [1, {args.n}], got {args.i}")
        print(f"{schedule.values[args.i - 1]:.7f}")
    else:
        for i, value in enumerate(schedule.values, 1):
            print(f"{i},{value:.7f}")
    return 0


def _cmd_verify(args) -> int:
    results = golden.run_golden_checks(heavy=args.heavy)
    width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status}  {r.name:<{width}}  {r.detail}")
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    if failed:
        print(f"swm: verification failed: {failed[0].name}", file=sys.stderr)
        return 1
    return 0


_COMMANDS = {
    "synth": _cmd_synth,
    "analyze-signal": _cmd_analyze_signal,
    "analyze-image": _cmd_analyze_image,
    "approximate": _cmd_approximate,
    "pattern": _cmd_pattern,
    "frequencies": _cmd_frequencies,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except SingularSystemError as exc:
        print(f"swm: singular system: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        # Covers argument validation and malformed file content.
        print(f"swm: invalid input: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"swm: i/o error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
