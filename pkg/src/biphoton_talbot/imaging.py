"""Two-photon Talbot imaging with the object in the signal arm.

A periodic object sits a distance ``d_s1`` behind the crystal in the signal
arm, with the signal detector a further ``d_s2`` away; the idler detector sits
``d_i`` from the crystal. In the Klyshko picture the idler arm unfolds into the
signal arm with its length rescaled by ``lambda_i / lambda_s``, so the object
sees a source at distance ``Z2 = d_s1 + (lambda_i/lambda_s) d_i`` and a
detector at ``d_s2``. All the self-imaging physics follows from the parallel
combination ``Z_eff = 1 / (1/d_s2 + 1/Z2)``.
"""

from dataclasses import dataclass, replace
import enum
from fractions import Fraction
import math

import numpy as np

from ._validation import (
    DegenerateGeometryError,
    DomainError,
    as_float_array,
    check_interval,
    check_non_negative,
    check_positive,
)
from .optics import PhotonPair, fourier_sum, imaging_talbot_length


class ScanMode(enum.Enum):
    SCAN_IDLER = "scan-idler"  # x1 = 0, x2 scanned
    SCAN_SIGNAL = "scan-signal"  # x2 = 0, x1 scanned
    SYNCHRONOUS = "synchronous"  # x1 = x2 scanned together


class PlaneKind(enum.Enum):
    DIRECT = "direct"
    HALF_SHIFTED = "half-shifted"


@dataclass(frozen=True)
class PlaneInfo:
    """A revival plane: its position, self-imaging number and classification."""

    position: float
    index_m: Fraction
    classification: PlaneKind

    def __post_init__(self):
        direct = self.index_m.denominator == 1
        if direct != (self.classification is PlaneKind.DIRECT) or self.index_m.denominator > 2:
            raise DomainError(f"index {self.index_m} inconsistent with {self.classification}")

    @classmethod
    def from_half_index(cls, position, k):
        """Plane with self-imaging number ``m = k/2``."""
        m = Fraction(k, 2)
        kind = PlaneKind.DIRECT if m.denominator == 1 else PlaneKind.HALF_SHIFTED
        return cls(float(position), m, kind)


@dataclass(frozen=True)
class ImagingGeometry:
    d_s1: float
    d_s2: float
    d_i: float
    pair: PhotonPair

    def __post_init__(self):
        object.__setattr__(self, "d_s1", check_non_negative(self.d_s1, "d_s1"))
        object.__setattr__(self, "d_s2", check_positive(self.d_s2, "d_s2"))
        object.__setattr__(self, "d_i", check_non_negative(self.d_i, "d_i"))
        if not isinstance(self.pair, PhotonPair):
            raise DomainError("pair must be a PhotonPair")

    @property
    def d_s(self):
        return self.d_s1 + self.d_s2

    @property
    def source_distance(self):
        """``Z2 = d_s1 + (lambda_i/lambda_s) d_i``, the unfolded idler arm."""
        return self.d_s1 + self.pair.ratio * self.d_i

    def with_idler_distance(self, d_i):
        return replace(self, d_i=d_i)


def effective_distance(geom):
    """``Z_eff = 1 / (1/d_s2 + 1/Z2)``, or 0 when ``Z2 = 0``."""
    z2 = geom.source_distance
    if z2 == 0:
        return 0.0
    return 1.0 / (1.0 / geom.d_s2 + 1.0 / z2)


def _talbot_number(obj, geom):
    # Z_eff / z_sT: integer at direct planes, half-odd at half-shifted ones
    return effective_distance(geom) / imaging_talbot_length(obj.period, geom.pair.lambda_s)


def localization_factors(obj, geom):
    """Per-order phase ``exp(-i pi n^2 lambda_s Z_eff / a^2)`` aligned with ``obj.harmonics``."""
    q = _talbot_number(obj, geom)
    n = obj.harmonics
    return np.exp(-2j * np.pi * np.mod(n * n * q, 1.0))


def correlation_amplitude(obj, geom, x1, x2):
    """Transverse two-photon amplitude ``B(x1, x2)`` with ``B_0 = 1``.

    Parameters
    ----------
    obj : PeriodicObject
    geom : ImagingGeometry
    x1, x2 : float or array_like
        Signal and idler detector positions in meters; broadcast together.

    Returns
    -------
    complex or ndarray of complex
        ``sum_n c_n exp(-i pi n^2 lambda_s Z_eff / a^2)
        exp(i 2 pi n Z_eff (x1/d_s2 + x2/Z2) / a)``.

    Raises
    ------
    DegenerateGeometryError
        If ``Z2 = 0`` (source and object coincide) and any ``x2 != 0``.
    """
    x1, x2 = np.broadcast_arrays(as_float_array(x1, "x1"), as_float_array(x2, "x2"))
    z2 = geom.source_distance
    if z2 == 0 and np.any(x2 != 0):
        raise DegenerateGeometryError(
            "Z2 = d_s1 + (lambda_i/lambda_s) d_i is zero; idler position must be 0"
        )
    # Z_eff (x1/d_s2 + x2/Z2) rewritten so the synchronous scan x1 = x2 cancels cleanly
    s = (x1 * z2 + x2 * geom.d_s2) / (z2 + geom.d_s2)
    weights = obj.coefficients * localization_factors(obj, geom)
    return fourier_sum(weights, obj.harmonics, s / obj.period)


def coincidence_rate(obj, geom, x1, x2):
    """Un-normalised coincidence rate ``|B(x1, x2)|**2``."""
    return np.abs(correlation_amplitude(obj, geom, x1, x2)) ** 2


def self_image_planes(obj, geom_base, d_i_range):
    """Idler distances in ``d_i_range`` at which self-images form.

    Solves ``1/d_s2 + 1/Z2 = 1/(m z_sT)`` for ``d_i`` with ``m = k/2``,
    ``k = 1, 2, ...``. Integer ``m`` gives a direct image, half-odd ``m`` an
    image shifted by half a (magnified) period. Returns planes sorted by
    position; an empty list if none fall in range.
    """
    lo, hi = check_interval(d_i_range, "d_i_range")
    lo = max(lo, 0.0)
    if hi < lo:
        return []
    z_st = imaging_talbot_length(obj.period, geom_base.pair.lambda_s)
    ratio = geom_base.pair.ratio
    d_s1, d_s2 = geom_base.d_s1, geom_base.d_s2

    def z_eff(d_i):
        return effective_distance(replace(geom_base, d_i=d_i))

    # Z_eff increases monotonically with d_i, so bracket k from the range ends
    k_lo = max(1, math.floor(2 * z_eff(lo) / z_st))
    k_hi = math.ceil(2 * z_eff(hi) / z_st)
    rel = 1e-12
    planes = []
    for k in range(k_lo, k_hi + 1):
        target = k * z_st / 2.0
        inv_z2 = 1.0 / target - 1.0 / d_s2
        if inv_z2 <= 0:
            break
        d_i = (1.0 / inv_z2 - d_s1) / ratio
        if lo - rel * max(1.0, abs(lo)) <= d_i <= hi + rel * max(1.0, abs(hi)) and d_i >= 0:
            planes.append(PlaneInfo.from_half_index(d_i, k))
    return sorted(planes, key=lambda p: p.position)


def magnification(geom, mode):
    """Lateral magnification of the coincidence image for a detector scan mode.

    ``SCAN_IDLER`` gives ``1 + Z2/d_s2``, ``SCAN_SIGNAL`` gives ``1 + d_s2/Z2``
    and ``SYNCHRONOUS`` is exactly 1 for every geometry.
    """
    mode = ScanMode(mode)
    z2 = geom.source_distance
    if mode is ScanMode.SYNCHRONOUS:
        return 1.0
    if mode is ScanMode.SCAN_IDLER:
        return 1.0 + z2 / geom.d_s2
    if z2 == 0:
        raise ZeroDivisionError("signal-scan magnification is undefined for Z2 = 0")
    return 1.0 + geom.d_s2 / z2


def singles_rate(obj, x1=0.0):
    """Single-detector count rate, ``sum |c_n|**2``; independent of ``x1``.

    ``x1`` is accepted so position independence can be checked at the call
    site. It is validated but never enters the result.
    """
    as_float_array(x1, "x1")
    return obj.power()
