"""Input validation helpers shared by the public API."""

import math

import numpy as np


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class DegenerateGeometryError(ValueError):
    """The detector geometry collapses an imaging arm to zero length."""


class QuadratureResolutionError(RuntimeError):
    """Quadrature nodes are too coarse for the oscillatory kernel."""


def check_positive(value, name):
    value = float(value)
    if not math.isfinite(value) or value <= 0:
        raise DomainError(f"{name} must be a positive finite number, got {value!r}")
    return value


def check_non_negative(value, name):
    value = float(value)
    if not math.isfinite(value) or value < 0:
        raise DomainError(f"{name} must be a non-negative finite number, got {value!r}")
    return value


def check_positive_int(value, name, minimum=1):
    if isinstance(value, bool) or int(value) != value:
        raise DomainError(f"{name} must be an integer, got {value!r}")
    value = int(value)
    if value < minimum:
        raise DomainError(f"{name} must be >= {minimum}, got {value}")
    return value


def check_interval(interval, name, allow_point=True):
    """Return ``(lo, hi)`` as floats, requiring ``lo <= hi`` (or ``lo < hi``)."""
    try:
        lo, hi = (float(v) for v in interval)
    except (TypeError, ValueError):
        raise DomainError(f"{name} must be a (low, high) pair, got {interval!r}") from None
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise DomainError(f"{name} bounds must be finite, got {interval!r}")
    if hi < lo or (hi == lo and not allow_point):
        raise DomainError(f"{name} must be well ordered, got ({lo}, {hi})")
    return lo, hi


def as_float_array(x, name):
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must be finite")
    return arr
