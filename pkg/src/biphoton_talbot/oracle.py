"""Brute-force Fresnel quadrature used to cross-check the Fourier-series paths.

Every routine here integrates the diffraction kernel directly over a finite
piece of the object instead of using its Fourier coefficients, so agreement
with the series formulas is an independent check of both.

The object is truncated to ``W`` whole unit cells ``[(k - 1/2) a, (k + 1/2) a]``
around the origin and integrated with the composite midpoint rule. With the
slit-centred gratings of :func:`~biphoton_talbot.optics.rect_grating` the cut
falls on opaque points, which keeps the spurious edge-diffraction ripple small.
For odd ``W`` the window is symmetric; for even ``W`` it extends half a period
further on the negative side.
"""

from dataclasses import dataclass
from functools import cached_property
import math

import numpy as np

from ._validation import (
    DegenerateGeometryError,
    QuadratureResolutionError,
    as_float_array,
    check_positive,
    check_positive_int,
)
from .imaging import effective_distance
from .optics import evaluate_object

MIN_SAMPLES_PER_PERIOD = 16
CENTRAL_FRACTION = 0.25
_BLOCK_ELEMENTS = 1 << 22


@dataclass(frozen=True, eq=False)
class WindowedObject:
    """A periodic object cut down to ``window_periods`` unit cells and sampled."""

    base: object
    window_periods: int = 128
    samples_per_period: int = 64

    def __post_init__(self):
        object.__setattr__(
            self, "window_periods", check_positive_int(self.window_periods, "window_periods")
        )
        object.__setattr__(
            self,
            "samples_per_period",
            check_positive_int(
                self.samples_per_period, "samples_per_period", minimum=MIN_SAMPLES_PER_PERIOD
            ),
        )

    @property
    def spacing(self):
        return self.base.period / self.samples_per_period

    @property
    def bounds(self):
        a = self.base.period
        first = -(self.window_periods // 2)
        return (first - 0.5) * a, (first + self.window_periods - 0.5) * a

    @property
    def length(self):
        return self.window_periods * self.base.period

    @property
    def extent(self):
        """Largest ``|rho|`` covered by the window."""
        lo, hi = self.bounds
        return max(-lo, hi)

    @property
    def central_half_width(self):
        """Half-width of the central comparison region (inner 25% of the window)."""
        return CENTRAL_FRACTION * self.length / 2.0

    @cached_property
    def nodes(self):
        lo, _ = self.bounds
        j = np.arange(self.window_periods * self.samples_per_period)
        return lo + (j + 0.5) * self.spacing

    @cached_property
    def samples(self):
        return evaluate_object(self.base, self.nodes)


def kernel_bandwidth(wobj, wavelength, z, reach=0.0, order_scale=1):
    """Largest local spatial frequency (cycles/m) of a Fresnel integrand.

    ``z`` is the distance of the quadratic chirp ``exp(i pi rho^2 / (lambda z))``;
    ``reach`` converts the linear phase into an equivalent lateral offset; and
    ``order_scale`` multiplies the object bandwidth ``N / a`` (2 for ``A**2``).
    """
    chirp = (wobj.extent + abs(reach)) / (wavelength * z)
    return chirp + order_scale * wobj.base.truncation / wobj.base.period


def required_samples_per_period(wobj, wavelength, z, reach=0.0, order_scale=1):
    """Smallest power-of-two sampling that passes :func:`check_resolution`."""
    a = wobj.base.period
    need = max(
        a * kernel_bandwidth(wobj, wavelength, z, reach, order_scale),
        a / math.sqrt(wavelength * z / 4.0),
    )
    s = MIN_SAMPLES_PER_PERIOD
    while s <= need:
        s *= 2
    return s


def check_resolution(wobj, wavelength, z, reach=0.0, order_scale=1):
    """Raise :class:`QuadratureResolutionError` if the node spacing is too coarse.

    Two bounds apply: ``h**2 < lambda z / 4`` for the chirp alone, and the
    local Nyquist bound ``h * f_max < 1`` which keeps aliasing from creating a
    spurious stationary point anywhere inside the window.
    """
    h = wobj.spacing
    if h * h >= wavelength * z / 4.0:
        raise QuadratureResolutionError(
            f"node spacing {h:.3g} m violates h^2 < lambda z / 4 at z = {z:.4g} m"
        )
    f_max = kernel_bandwidth(wobj, wavelength, z, reach, order_scale)
    if h * f_max >= 1.0:
        needed = required_samples_per_period(wobj, wavelength, z, reach, order_scale)
        raise QuadratureResolutionError(
            f"{wobj.samples_per_period} samples/period alias the Fresnel kernel "
            f"(local frequency up to {f_max:.4g} 1/m); use at least {needed}"
        )


def _chirped_transform(weights, nodes, spacing, frequencies):
    """``h * sum_j weights_j exp(-2 i pi nodes_j f)`` for each ``f``, ascending ``j``."""
    freqs = np.asarray(frequencies, dtype=float)
    flat = freqs.reshape(-1)
    out = np.empty(flat.size, dtype=complex)
    block = max(1, _BLOCK_ELEMENTS // max(1, nodes.size))
    for start in range(0, flat.size, block):
        f = flat[start:start + block, None]
        out[start:start + block] = (weights[None, :] * np.exp(-2j * np.pi * (nodes[None, :] * f))).sum(axis=1)
    return (spacing * out).reshape(freqs.shape)


def _unit_max(values):
    peak = np.max(values) if np.size(values) else 0.0
    return values / peak if peak > 0 else values


def classical_propagate(wobj, wavelength, z, xs):
    """Paraxial Fresnel propagation of a plane wave through the windowed object.

    ``u(x) = (i lambda z)^(-1/2) int A(rho) exp(i pi (x - rho)^2 / (lambda z)) drho``,
    normalised so that an unobstructed infinite aperture gives ``|u| = 1``.

    Raises
    ------
    QuadratureResolutionError
        If the sampling cannot resolve the kernel over the window.
    """
    wavelength = check_positive(wavelength, "wavelength")
    z = check_positive(z, "z")
    xs = as_float_array(xs, "xs")
    reach = float(np.max(np.abs(xs))) if xs.size else 0.0
    check_resolution(wobj, wavelength, z, reach)
    rho = wobj.nodes
    lz = wavelength * z
    weights = wobj.samples * np.exp(1j * np.pi * rho * rho / lz)
    field = _chirped_transform(weights, rho, wobj.spacing, xs / lz)
    return field * np.exp(1j * np.pi * xs * xs / lz) / np.sqrt(1j * lz)


def imaging_oracle(wobj, geom, x1, x2):
    """Coincidence rate of the imaging arrangement by direct quadrature.

    Integrates ``A(rho) exp(i pi rho^2 (1/d_s2 + 1/Z2) / lambda_s)
    exp(-2 i pi rho (x1/d_s2 + x2/Z2) / lambda_s)`` over the window and returns
    its squared modulus scaled to unit maximum over the queried points.
    """
    z2 = geom.source_distance
    if z2 <= 0:
        raise DegenerateGeometryError("imaging oracle needs Z2 > 0")
    x1, x2 = np.broadcast_arrays(as_float_array(x1, "x1"), as_float_array(x2, "x2"))
    lam = geom.pair.lambda_s
    z_eff = effective_distance(geom)
    v = (x1 / geom.d_s2 + x2 / z2) / lam
    reach = float(np.max(np.abs(v))) * lam * z_eff if v.size else 0.0
    check_resolution(wobj, lam, z_eff, reach)
    rho = wobj.nodes
    weights = wobj.samples * np.exp(1j * np.pi * rho * rho / (lam * z_eff))
    return _unit_max(np.abs(_chirped_transform(weights, rho, wobj.spacing, v)) ** 2)


def litho_oracle(wobj, geom, x1, x2):
    """Lithography coincidence rate by quadrature of the squared transmission.

    Integrates ``A(rho)^2 exp(2 i pi rho^2 / (lambda d_0))
    exp(-2 i pi rho (x1 + x2) / (lambda d_0))`` and scales to unit maximum.
    """
    d0 = check_positive(geom.d_0, "d_0")
    x1, x2 = np.broadcast_arrays(as_float_array(x1, "x1"), as_float_array(x2, "x2"))
    lam = geom.wavelength
    u = x1 + x2
    reach = float(np.max(np.abs(u))) / 2.0 if u.size else 0.0
    check_resolution(wobj, lam, d0 / 2.0, reach, order_scale=2)
    rho = wobj.nodes
    weights = wobj.samples**2 * np.exp(2j * np.pi * rho * rho / (lam * d0))
    return _unit_max(np.abs(_chirped_transform(weights, rho, wobj.spacing, u / (lam * d0))) ** 2)


def singles_oracle(wobj):
    """Window average of ``|A(rho)|**2`` by midpoint quadrature."""
    return float(np.sum(np.abs(wobj.samples) ** 2) * wobj.spacing / wobj.length)
