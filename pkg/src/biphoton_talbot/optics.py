"""Periodic object models, Talbot lengths and the paraxial-validity estimate.

Lengths are SI meters throughout. Transmission objects are one dimensional and
described by a truncated Fourier series::

    A(x) = sum_{n=-N}^{N} c_n exp(-2j*pi*n*x/a)
"""

from dataclasses import dataclass, field
import math
import warnings

import numpy as np

from ._validation import (
    DomainError,
    as_float_array,
    check_positive,
    check_positive_int,
)

DEFAULT_HARMONICS = 50
# largest order reported when the path-difference bound is effectively unconstrained
DEFAULT_ORDER_CAP = 10_000


class ParaxialWarning(UserWarning):
    """Harmonics beyond the paraxial-validity limit are being summed."""


@dataclass(frozen=True)
class PhotonPair:
    """Signal and idler wavelengths of a down-converted photon pair."""

    lambda_s: float
    lambda_i: float

    def __post_init__(self):
        object.__setattr__(self, "lambda_s", check_positive(self.lambda_s, "lambda_s"))
        object.__setattr__(self, "lambda_i", check_positive(self.lambda_i, "lambda_i"))

    @classmethod
    def degenerate(cls, wavelength):
        return cls(wavelength, wavelength)

    @property
    def ratio(self):
        """lambda_i / lambda_s, the factor that rescales the idler arm."""
        return self.lambda_i / self.lambda_s


@dataclass(frozen=True, eq=False)
class PeriodicObject:
    """Transmission function of period ``period`` given by its Fourier coefficients.

    Parameters
    ----------
    period : float
        Spatial period ``a`` in meters.
    coefficients : array_like of complex, shape (2N + 1,)
        ``c_n`` for ``n = -N, ..., N`` in ascending order.
    """

    period: float
    coefficients: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "period", check_positive(self.period, "period"))
        c = np.array(self.coefficients, dtype=complex)
        if c.ndim != 1 or c.size % 2 == 0:
            raise DomainError("coefficients must be a 1-D array of odd length 2N+1")
        if not np.all(np.isfinite(c)):
            raise DomainError("coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)

    @classmethod
    def from_mapping(cls, period, coefficients):
        """Build from ``{n: c_n}``; missing indices in ``[-N, N]`` are zero."""
        if not coefficients:
            raise DomainError("at least one coefficient is required")
        trunc = max(abs(int(n)) for n in coefficients)
        c = np.zeros(2 * trunc + 1, dtype=complex)
        for n, value in coefficients.items():
            c[int(n) + trunc] = value
        return cls(period, c)

    @property
    def truncation(self):
        return (self.coefficients.size - 1) // 2

    @property
    def harmonics(self):
        """Integer harmonic indices ``-N..N`` aligned with ``coefficients``."""
        n = self.truncation
        return np.arange(-n, n + 1)

    def coefficient(self, n):
        n = int(n)
        if abs(n) > self.truncation:
            return 0j
        return complex(self.coefficients[n + self.truncation])

    def power(self):
        """Sum of ``|c_n|**2``, the period-averaged transmitted intensity."""
        return float(np.sum(np.abs(self.coefficients) ** 2))

    def __eq__(self, other):
        if not isinstance(other, PeriodicObject):
            return NotImplemented
        return self.period == other.period and np.array_equal(
            self.coefficients, other.coefficients
        )

    __hash__ = None


def rect_grating(period, duty=0.5, truncation_N=DEFAULT_HARMONICS):
    """Binary amplitude grating with the open slit centred on ``x = 0``.

    The slit spans ``[-duty*a/2, duty*a/2]`` in every period, giving real, even
    coefficients ``c_0 = duty`` and ``c_n = sin(pi*n*duty) / (pi*n)``.
    """
    period = check_positive(period, "period")
    duty = float(duty)
    if not (0.0 <= duty <= 1.0):
        raise DomainError(f"duty must lie in [0, 1], got {duty}")
    trunc = check_positive_int(truncation_N, "truncation_N")
    n = np.arange(-trunc, trunc + 1)
    c = np.empty(n.size)
    nz = n != 0
    c[nz] = np.sin(np.pi * n[nz] * duty) / (np.pi * n[nz])
    c[~nz] = duty
    # sin(pi*n) for integer n is ~1e-16, not 0; pin exact zeros for duty in {0, 1}
    if duty in (0.0, 1.0):
        c[nz] = 0.0
    return PeriodicObject(period, c)


def fourier_sum(coefficients, harmonics, phase_turns):
    """``sum_n coefficients[n] * exp(2j*pi*n*t)`` with ``t = phase_turns`` mod 1.

    Reducing ``t`` modulo one before multiplying by ``n`` keeps the result
    bit-identical for arguments that differ by whole periods whenever the
    reduction itself is exact.
    """
    t = np.mod(np.asarray(phase_turns, dtype=float), 1.0)
    shape = t.shape
    t = t.reshape(-1, 1)
    terms = coefficients[None, :] * np.exp(2j * np.pi * (harmonics[None, :] * t))
    out = terms.sum(axis=1).reshape(shape)
    return out[()] if out.ndim == 0 else out


def evaluate_object(obj, x):
    """Truncated transmission amplitude ``A(x)``; exactly periodic in ``x``."""
    x = as_float_array(x, "x")
    return fourier_sum(obj.coefficients, obj.harmonics, -x / obj.period)


def classical_talbot_length(period, wavelength):
    """First-order Talbot length ``2 a**2 / lambda``."""
    period = check_positive(period, "period")
    wavelength = check_positive(wavelength, "wavelength")
    return 2.0 * period**2 / wavelength


def imaging_talbot_length(period, lambda_s):
    """Second-order imaging Talbot length ``2 a**2 / lambda_s``."""
    return classical_talbot_length(period, lambda_s)


def litho_talbot_length(period, wavelength):
    """Lithography revival distance ``a**2 / lambda``, half the classical value."""
    return classical_talbot_length(period, wavelength) / 2.0


def paraxial_max_order(period, wavelength, z, tol=None, cap=DEFAULT_ORDER_CAP):
    """Largest diffraction order whose paraxial path error stays within ``tol``.

    The neglected quartic term of the binomial expansion of the propagation
    phase contributes ``z * (n * lambda / a)**4 / 8`` of optical path for order
    ``n``. Returns the largest ``n`` with that error at most ``tol`` (default a
    quarter wave), clipped to ``cap``.
    """
    period = check_positive(period, "period")
    wavelength = check_positive(wavelength, "wavelength")
    z = check_positive(z, "z")
    tol = wavelength / 4.0 if tol is None else float(tol)
    if math.isinf(tol) and tol > 0:
        return int(cap)
    tol = check_positive(tol, "tol")

    def path_error(n):
        return z * (n * wavelength / period) ** 4 / 8.0

    bound = (8.0 * tol / z) ** 0.25 * period / wavelength
    if not math.isfinite(bound) or bound >= cap:
        return int(cap)
    n = int(math.floor(bound))
    # floating guard around the exact integer boundary
    while n + 1 <= cap and path_error(n + 1) <= tol:
        n += 1
    while n > 0 and path_error(n) > tol:
        n -= 1
    return n


def warn_if_nonparaxial(obj, wavelength, z, tol=None):
    """Emit a :class:`ParaxialWarning` if ``obj`` carries orders past the limit."""
    if z <= 0:
        return
    n_max = paraxial_max_order(obj.period, wavelength, z, tol)
    if obj.truncation > n_max:
        warnings.warn(
            f"harmonics above n={n_max} violate the paraxial tolerance at "
            f"z={z:.6g} m (object carries N={obj.truncation}); summing them anyway",
            ParaxialWarning,
            stacklevel=3,
        )
