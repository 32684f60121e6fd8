"""Square-wave decomposition of 1D sampled signals.

A signal sampled at the midpoints of ``n`` equal sub-intervals of an
analysis window is written as a sum of ``n`` trains of square waves.
Train ``i`` alternates sign in blocks of ``n - i + 1`` sub-intervals,
starting positive, so evaluating every train at every midpoint gives an
``n x n`` matrix of +1/-1 entries.  Solving that system against the
sample vector yields one coefficient per train; pairing each coefficient
with its train frequency gives the square-wave transform (SWT) of the
signal.
"""

import threading
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import SingularSystemError

__all__ = [
    "SignMatrix",
    "FrequencySchedule",
    "SampledSignal",
    "Spectrum1D",
    "SolverCache",
    "build_sign_matrix",
    "frequencies_1d",
    "frequencies_from_sampling",
    "sample_count",
    "demo_waveform",
    "sample_demo_signal",
    "analyze_1d",
    "reconstruct_1d",
    "find_prominent",
    "filter_by_frequency",
    "shared_cache",
]

# Relative slack when deciding whether sampling_rate * duration is an integer.
_COUNT_RTOL = 1e-9

# A pivot below 1e-12 * n * max|entry| marks the factorization as unusable.
_PIVOT_RTOL = 1e-12

SignMatrix = np.ndarray


def build_sign_matrix(n: int) -> np.ndarray:
    """Return the n x n sign matrix of the method as an int8 array.

    Entry ``[k-1, i-1]`` is the sign of train ``i`` on sub-interval ``k``
    (both 1-based): ``(-1) ** floor((k-1) / (n-i+1))``.  Row 1 and column 1
    are all +1; column ``i`` alternates in blocks of length ``n - i + 1``.
    """
    if n < 1:
        raise ValueError(f"number of sub-intervals must be >= 1, got {n}")
    k = np.arange(n, dtype=np.int64)[:, None]        # k-1
    block = np.arange(n, 0, -1, dtype=np.int64)[None, :]  # n-i+1 for i=1..n
    return np.where((k // block) % 2 == 0, 1, -1).astype(np.int8)


@dataclass(frozen=True, eq=False)
class FrequencySchedule:
    """Frequencies attached to the n trains over one analysis interval.

    ``values[i-1] = (1 / (2 * interval)) * n / (n - (i - 1))``, strictly
    increasing from ``1 / (2 * interval)`` up to ``n / (2 * interval)``.
    Units are the inverse of whatever unit ``interval`` is expressed in.
    """

    n: int
    interval: float
    values: np.ndarray

    def __len__(self):
        return self.n


def frequencies_1d(n: int, interval: float) -> FrequencySchedule:
    """Frequency schedule for n trains over a window of the given length."""
    if n < 1:
        raise ValueError(f"number of sub-intervals must be >= 1, got {n}")
    if not interval > 0:
        raise ValueError(f"interval must be positive, got {interval}")
    # One correctly rounded division chain keeps the endpoints exact:
    # i=1 gives 1/(2*interval) and i=n gives n/(2*interval) identically.
    half_waves = np.arange(n, 0, -1, dtype=np.float64)  # n-i+1
    values = (float(n) / half_waves) / (2.0 * interval)
    return FrequencySchedule(n=n, interval=float(interval), values=values)


def sample_count(sampling_rate: float, duration: float) -> int:
    """Number of samples taken at ``sampling_rate`` over ``duration``.

    The product must be an integer to within 1e-9 relative; anything else
    means the rate/duration pair is inconsistent.
    """
    if not sampling_rate > 0:
        raise ValueError(f"sampling rate must be positive, got {sampling_rate}")
    if not duration > 0:
        raise ValueError(f"duration must be positive, got {duration}")
    product = sampling_rate * duration
    n = round(product)
    if n < 1 or abs(product - n) > _COUNT_RTOL * max(1.0, abs(product)):
        raise ValueError(
            f"sampling_rate * duration = {product!r} is not a positive integer; "
            "inconsistent sampling rate / duration pair"
        )
    return n


def frequencies_from_sampling(sampling_rate: float, duration: float) -> FrequencySchedule:
    """Frequency schedule implied by a sampling rate and record duration.

    Equivalent to ``frequencies_1d(sample_count(fs, dt), dt)``.  The lowest
    frequency depends only on the duration (1 / (2 dt)); the highest only on
    the sampling rate (fs / 2).
    """
    n = sample_count(sampling_rate, duration)
    return frequencies_1d(n, duration)


@dataclass(frozen=True, eq=False)
class SampledSignal:
    """A vector of midpoint samples over an analysis window.

    ``sampling_rate`` is optional; when present it must be consistent with
    ``len(values) == sampling_rate * duration``.
    """

    values: np.ndarray
    duration: float
    sampling_rate: float | None = None

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 1 or values.size < 1:
            raise ValueError("signal must be a non-empty 1D vector")
        object.__setattr__(self, "values", values)
        if not self.duration > 0:
            raise ValueError(f"duration must be positive, got {self.duration}")
        if self.sampling_rate is not None:
            if sample_count(self.sampling_rate, self.duration) != values.size:
                raise ValueError(
                    f"sampling_rate * duration = "
                    f"{self.sampling_rate * self.duration!r} does not match "
                    f"the {values.size} samples provided"
                )

    @property
    def n(self) -> int:
        return self.values.size


def demo_waveform(t):
    """Built-in reference waveform: (6 - t) (2 cos(8 pi t) + 5 cos(12 pi t))."""
    t = np.asarray(t, dtype=np.float64)
    return (6.0 - t) * (2.0 * np.cos(2.0 * np.pi * 4.0 * t)
                        + 5.0 * np.cos(2.0 * np.pi * 6.0 * t))


def sample_demo_signal(n: int, duration: float = 4.0,
                       origin: float | None = None) -> SampledSignal:
    """Midpoint-sample the reference waveform over ``[origin, origin + duration]``.

    ``origin`` defaults to ``-duration / 2``, the convention under which the
    bundled golden sample values were produced.
    """
    if n < 1:
        raise ValueError(f"number of sub-intervals must be >= 1, got {n}")
    if not duration > 0:
        raise ValueError(f"duration must be positive, got {duration}")
    if origin is None:
        origin = -duration / 2.0
    midpoints = origin + (np.arange(1, n + 1) - 0.5) * (duration / n)
    return SampledSignal(values=demo_waveform(midpoints), duration=duration)


@dataclass(frozen=True, eq=False)
class Spectrum1D:
    """SWT of a 1D signal: one (frequency, coefficient) dyad per train.

    ``indices`` holds the 1-based train indices so that filtered spectra
    keep their provenance; a full spectrum has ``indices == 1..n``.
    """

    n: int
    duration: float
    indices: np.ndarray
    frequencies: np.ndarray
    coefficients: np.ndarray

    def __post_init__(self):
        if not (len(self.indices) == len(self.frequencies) == len(self.coefficients)):
            raise ValueError("indices, frequencies and coefficients must align")

    def __len__(self):
        return len(self.indices)

    @property
    def dyads(self):
        """Iterate (frequency, coefficient) pairs in listing order."""
        return list(zip(self.frequencies.tolist(), self.coefficients.tolist()))

    def is_full(self) -> bool:
        return len(self.indices) == self.n and self.indices[0] == 1


class SolverCache:
    """Cache of LU factorizations of the sign matrix, keyed by size.

    Factorizations are immutable once stored, so concurrent reads are safe;
    insertion is synchronized and first-come wins, which keeps repeated
    solves bit-for-bit identical to a fresh factorization.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self._factors = {}

    def factorization(self, n: int):
        """Return (lu, piv, condition) for the size-n sign matrix."""
        with self._lock:
            entry = self._factors.get(n)
        if entry is None:
            entry = self._factor(n)
            with self._lock:
                entry = self._factors.setdefault(n, entry)
        return entry

    def condition(self, n: int) -> float:
        return self.factorization(n)[2]

    @staticmethod
    def _factor(n: int):
        matrix = build_sign_matrix(n).astype(np.float64)
        with warnings.catch_warnings():
            # Singularity is detected below via the pivot threshold.
            warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
            lu, piv = scipy.linalg.lu_factor(matrix, check_finite=False)
        # Entries are +-1, so the 1-norm is exactly n.
        rcond = scipy.linalg.lapack.dgecon(lu, float(n))[0]
        condition = np.inf if rcond == 0.0 else 1.0 / rcond
        pivots = np.abs(np.diagonal(lu))
        if pivots.min() < _PIVOT_RTOL * n:
            raise SingularSystemError(n, condition)
        return lu, piv, condition

    def solve(self, n: int, rhs: np.ndarray) -> np.ndarray:
        """Solve sign_matrix(n) @ x = rhs for one or many right-hand sides."""
        lu, piv, _ = self.factorization(n)
        return scipy.linalg.lu_solve((lu, piv), rhs, check_finite=False)


_SHARED_CACHE = SolverCache()


def shared_cache() -> SolverCache:
    """The module-wide default cache used when no cache is passed."""
    return _SHARED_CACHE


def analyze_1d(signal: SampledSignal, cache: SolverCache | None = None) -> Spectrum1D:
    """Solve the sign system for the signal and return its SWT.

    The returned coefficients satisfy ``sign_matrix(n) @ C == signal.values``
    up to solver residual; frequencies come from :func:`frequencies_1d` on
    the signal's duration.
    """
    if cache is None:
        cache = _SHARED_CACHE
    n = signal.n
    coefficients = cache.solve(n, signal.values)
    schedule = frequencies_1d(n, signal.duration)
    return Spectrum1D(
        n=n,
        duration=signal.duration,
        indices=np.arange(1, n + 1),
        frequencies=schedule.values,
        coefficients=coefficients,
    )


def reconstruct_1d(spectrum: Spectrum1D, keep: int) -> np.ndarray:
    """Sum the first ``keep`` trains back into midpoint sample values.

    With ``keep == n`` this reproduces the analyzed signal to within solver
    residual.  Requires a full (unfiltered) spectrum.
    """
    if not spectrum.is_full():
        raise ValueError("reconstruction needs a full spectrum (no dyads dropped)")
    n = spectrum.n
    if not 1 <= keep <= n:
        raise ValueError(f"keep must be in [1, {n}], got {keep}")
    matrix = build_sign_matrix(n).astype(np.float64)
    return matrix[:, :keep] @ spectrum.coefficients[:keep]


def find_prominent(spectrum: Spectrum1D, window: int = 25,
                   dominance: float = 5.0) -> list[tuple[int, float, float]]:
    """Dyads whose modulus dominates every neighbor within ``window`` indices.

    Returns ``(index, frequency, coefficient)`` triples, ordered by frequency,
    for every nonzero coefficient with
    ``|C_i| >= dominance * max(|C_j|, 0 < |i - j| <= window)``.  Neighbor
    distance is measured on the original train indices.
    """
    if len(spectrum) == 0:
        raise ValueError("spectrum is empty")
    if window < 1:
        raise ValueError(f"window must be >= 1, got {window}")
    if not dominance > 1:
        raise ValueError(f"dominance must be > 1, got {dominance}")
    indices = spectrum.indices
    moduli = np.abs(spectrum.coefficients)
    prominent = []
    for pos, idx in enumerate(indices):
        nearby = moduli[(np.abs(indices - idx) <= window) & (indices != idx)]
        bar = nearby.max() if nearby.size else 0.0
        value = moduli[pos]
        if value > 0 and value >= dominance * bar:
            prominent.append((int(idx),
                              float(spectrum.frequencies[pos]),
                              float(spectrum.coefficients[pos])))
    prominent.sort(key=lambda item: item[1])
    return prominent


def filter_by_frequency(spectrum: Spectrum1D, f_max: float) -> Spectrum1D:
    """Keep only dyads with frequency <= f_max, preserving order."""
    if not f_max > 0:
        raise ValueError(f"f_max must be positive, got {f_max}")
    mask = spectrum.frequencies <= f_max
    return Spectrum1D(
        n=spectrum.n,
        duration=spectrum.duration,
        indices=spectrum.indices[mask],
        frequencies=spectrum.frequencies[mask],
        coefficients=spectrum.coefficients[mask],
    )
