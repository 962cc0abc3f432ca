"""Talbot carpets: detector scans over transverse position and distance."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
import enum

import numpy as np

from ._validation import DomainError, check_interval, check_positive_int
from .imaging import ImagingGeometry, coincidence_rate
from .lithography import LithoGeometry, litho_coincidence_rate
from .optics import PeriodicObject, warn_if_nonparaxial
from .oracle import WindowedObject, classical_propagate, required_samples_per_period


class CarpetMode(enum.Enum):
    IMAGING_FIXED_SIGNAL = "imaging-fixed-signal"
    IMAGING_SYNCHRONOUS = "imaging-synchronous"
    LITHO_FIXED_ONE = "litho-fixed-one"
    LITHO_SYNCHRONOUS = "litho-synchronous"
    CLASSICAL_INTENSITY = "classical-intensity"

    @property
    def is_imaging(self):
        return self in (CarpetMode.IMAGING_FIXED_SIGNAL, CarpetMode.IMAGING_SYNCHRONOUS)


@dataclass(frozen=True, eq=False)
class ScanSpec:
    """What to scan and over which grid.

    The z axis is the idler distance ``d_i`` for imaging modes, the
    object-detector distance ``d_0`` for lithography modes and the free
    propagation distance for ``CLASSICAL_INTENSITY`` (which takes its
    wavelength from a :class:`LithoGeometry`). ``samples_per_period=None``
    picks the coarsest sampling that resolves the classical kernel.
    """

    mode: CarpetMode
    x_range: tuple
    n_x: int
    z_range: tuple
    n_z: int
    obj: PeriodicObject
    geometry: object
    window_periods: int = 128
    samples_per_period: int | None = None
    x_axis: np.ndarray = field(init=False, repr=False)
    z_axis: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        mode = CarpetMode(self.mode)
        object.__setattr__(self, "mode", mode)
        n_x = check_positive_int(self.n_x, "n_x")
        n_z = check_positive_int(self.n_z, "n_z")
        x_range = check_interval(self.x_range, "x_range", allow_point=n_x == 1)
        z_range = check_interval(self.z_range, "z_range", allow_point=n_z == 1)
        if not isinstance(self.obj, PeriodicObject):
            raise DomainError("obj must be a PeriodicObject")
        if mode.is_imaging and not isinstance(self.geometry, ImagingGeometry):
            raise DomainError(f"{mode.value} requires an ImagingGeometry")
        if not mode.is_imaging and not isinstance(self.geometry, LithoGeometry):
            raise DomainError(f"{mode.value} requires a LithoGeometry")
        if z_range[0] < 0:
            raise DomainError("z_range must be non-negative")
        if mode is CarpetMode.CLASSICAL_INTENSITY and z_range[0] <= 0:
            raise DomainError("classical propagation needs z > 0")
        object.__setattr__(self, "x_range", x_range)
        object.__setattr__(self, "z_range", z_range)
        object.__setattr__(self, "n_x", n_x)
        object.__setattr__(self, "n_z", n_z)
        object.__setattr__(self, "x_axis", np.linspace(*x_range, n_x))
        object.__setattr__(self, "z_axis", np.linspace(*z_range, n_z))


@dataclass(frozen=True, eq=False)
class Carpet:
    x_axis: np.ndarray
    z_axis: np.ndarray
    values: np.ndarray  # shape (n_z, n_x), z-major

    @property
    def shape(self):
        return self.values.shape


def _windowed(spec, z):
    lam = spec.geometry.wavelength
    samples = spec.samples_per_period
    if samples is None:
        probe = WindowedObject(spec.obj, spec.window_periods, 16)
        reach = float(np.max(np.abs(spec.x_axis)))
        samples = required_samples_per_period(probe, lam, z, reach)
    return WindowedObject(spec.obj, spec.window_periods, samples)


def evaluate_row(spec, z):
    """Un-normalised rate along the transverse axis at longitudinal position ``z``."""
    x = spec.x_axis
    mode = spec.mode
    if mode is CarpetMode.IMAGING_FIXED_SIGNAL:
        return coincidence_rate(spec.obj, spec.geometry.with_idler_distance(z), 0.0, x)
    if mode is CarpetMode.IMAGING_SYNCHRONOUS:
        return coincidence_rate(spec.obj, spec.geometry.with_idler_distance(z), x, x)
    if mode is CarpetMode.LITHO_FIXED_ONE:
        return litho_coincidence_rate(spec.obj, replace(spec.geometry, d_0=z), 0.0, x)
    if mode is CarpetMode.LITHO_SYNCHRONOUS:
        return litho_coincidence_rate(spec.obj, replace(spec.geometry, d_0=z), x, x)
    wobj = _windowed(spec, z)
    return np.abs(classical_propagate(wobj, spec.geometry.wavelength, z, x)) ** 2


def _longest_path(spec):
    z_hi = spec.z_range[1]
    if spec.mode.is_imaging:
        geom = spec.geometry.with_idler_distance(z_hi)
        return geom.d_s2 + geom.source_distance, geom.pair.lambda_s
    return z_hi, spec.geometry.wavelength


def evaluate_grid(spec, n_jobs=1):
    """Raw (un-normalised) rates on the ``n_z x n_x`` grid of ``spec``.

    Rows are independent and each is computed by the same vectorised code, so
    the result does not depend on ``n_jobs``.
    """
    z_len, lam = _longest_path(spec)
    if z_len > 0:
        warn_if_nonparaxial(spec.obj, lam, z_len)
    values = np.empty((spec.n_z, spec.n_x))

    def fill(i):
        values[i] = evaluate_row(spec, spec.z_axis[i])

    rows = range(spec.n_z)
    if n_jobs is None or n_jobs > 1:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            list(pool.map(fill, rows))
    else:
        for i in rows:
            fill(i)
    return values


def normalize(values):
    peak = values.max() if values.size else 0.0
    return values / peak if peak > 0 else np.zeros_like(values)


def generate_carpet(spec, n_jobs=1):
    """Evaluate ``spec`` on its grid and scale to unit maximum.

    Parameters
    ----------
    spec : ScanSpec
    n_jobs : int or None
        Worker threads for row evaluation; ``None`` lets the executor decide.
        The output is byte-identical for every setting.

    Returns
    -------
    Carpet
        Values in ``[0, 1]`` with maximum 1, or all zero for an opaque object.
    """
    return Carpet(spec.x_axis.copy(), spec.z_axis.copy(), normalize(evaluate_grid(spec, n_jobs)))


def transverse_profile(spec, z_value):
    """One carpet row at the grid ``z`` nearest ``z_value``, scaled to its own max.

    Returns
    -------
    x, rate : ndarray
    """
    lo, hi = spec.z_range
    if not lo <= z_value <= hi:
        raise DomainError(f"z_value {z_value} outside z_range [{lo}, {hi}]")
    i = int(np.argmin(np.abs(spec.z_axis - z_value)))
    row = evaluate_row(spec, spec.z_axis[i])
    return spec.x_axis.copy(), normalize(row)


def row_sharpness(values):
    """Mean squared transverse gradient of each carpet row.

    Self-image planes carry the sharpest transverse structure, so local maxima
    of this profile along z locate the revivals.
    """
    values = np.asarray(values, dtype=float)
    if values.shape[-1] < 2:
        return np.zeros(values.shape[:-1])
    return np.mean(np.diff(values, axis=-1) ** 2, axis=-1)


def dominant_frequency(x, values):
    """Spatial frequency (cycles/m) of the strongest non-DC spectral line.

    ``x`` must be uniformly spaced. Use a grid that spans an integer number of
    periods, without repeating the end point, for an exact bin.
    """
    x = np.asarray(x, dtype=float)
    v = np.asarray(values, dtype=float)
    if x.size < 3:
        raise DomainError("need at least three samples")
    spectrum = np.abs(np.fft.rfft(v - v.mean()))
    freqs = np.fft.rfftfreq(v.size, d=x[1] - x[0])
    k = 1 + int(np.argmax(spectrum[1:]))
    return float(freqs[k])


def fundamental_frequency(x, values, rel_threshold=0.05):
    """Lowest spectral line carrying at least ``rel_threshold`` of the strongest one.

    Unlike :func:`dominant_frequency` this reports the pattern's repetition
    frequency even when a higher harmonic dominates the spectrum.
    """
    x = np.asarray(x, dtype=float)
    v = np.asarray(values, dtype=float)
    if x.size < 3:
        raise DomainError("need at least three samples")
    spectrum = np.abs(np.fft.rfft(v - v.mean()))[1:]
    freqs = np.fft.rfftfreq(v.size, d=x[1] - x[0])[1:]
    peak = spectrum.max()
    if peak == 0:
        return 0.0
    return float(freqs[np.argmax(spectrum >= rel_threshold * peak)])
