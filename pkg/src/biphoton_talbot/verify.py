"""Series-versus-quadrature comparison report behind ``verify-oracle``.

Each case builds the object with ``N_eff = min(harmonics, n_max)`` harmonics,
where ``n_max`` is the paraxial-validity limit for the longest optical path of
the case. Orders beyond it are outside the model both paths share, and in a
finite window they also walk off laterally by ``n lambda z / a``.
"""

from dataclasses import dataclass

import numpy as np

from .imaging import (
    ImagingGeometry,
    PlaneKind,
    coincidence_rate,
    magnification,
    self_image_planes,
    singles_rate,
)
from .lithography import LithoGeometry, litho_coincidence_rate, litho_revival_planes
from .optics import (
    PhotonPair,
    classical_talbot_length,
    evaluate_object,
    paraxial_max_order,
    rect_grating,
)
from .oracle import (
    WindowedObject,
    classical_propagate,
    imaging_oracle,
    litho_oracle,
    required_samples_per_period,
    singles_oracle,
)

IMAGING_REL_L2 = 1e-2
CLASSICAL_LINF = 1e-2
SINGLES_ABS = 1e-3
GRID_POINTS = 64
DEFAULT_SAMPLES = 64


@dataclass
class CaseResult:
    name: str
    metric: str
    value: float
    threshold: float | None
    detail: str = ""

    @property
    def passed(self):
        return self.threshold is None or self.value <= self.threshold

    def line(self):
        if self.threshold is None:
            verdict, limit = "REPORT", "-"
        else:
            verdict, limit = ("PASS" if self.passed else "FAIL"), f"{self.threshold:.0e}"
        return f"{self.name:<20} {self.metric}={self.value:.3e} threshold={limit:<6} {verdict}  {self.detail}"


def rel_l2(values, reference):
    values, reference = np.asarray(values), np.asarray(reference)
    return float(np.linalg.norm(values - reference) / np.linalg.norm(reference))


def _unit_max(values):
    return values / values.max()


def _sampling(wobj_probe, samples, lam, z, reach=0.0, order_scale=1):
    samples = samples or DEFAULT_SAMPLES
    return max(samples, required_samples_per_period(wobj_probe, lam, z, reach, order_scale))


def imaging_cases(cfg):
    pair = PhotonPair(cfg.lambda_s, cfg.lambda_i)
    base = ImagingGeometry(cfg.ds1, cfg.ds2, 0.0, pair)
    z_lo = 0.0 if cfg.z_min is None else cfg.z_min
    z_hi = 0.34 if cfg.z_max is None else cfg.z_max
    planes = self_image_planes(rect_grating(cfg.period, cfg.duty, 1), base, (z_lo, z_hi))
    results = []
    for plane in planes:
        if plane.classification is not PlaneKind.DIRECT:
            continue
        geom = base.with_idler_distance(plane.position)
        path = geom.d_s2 + geom.source_distance
        n_eff = min(cfg.harmonics, paraxial_max_order(cfg.period, cfg.lambda_s, path))
        obj = rect_grating(cfg.period, cfg.duty, max(n_eff, 1))
        mag = magnification(geom, "scan-idler")
        x2 = (np.arange(GRID_POINTS) / GRID_POINTS - 0.5) * mag * cfg.period
        spp = cfg.samples_per_period or DEFAULT_SAMPLES
        wobj = WindowedObject(obj, cfg.window_periods, spp)
        oracle = imaging_oracle(wobj, geom, 0.0, x2)
        series = _unit_max(coincidence_rate(obj, geom, 0.0, x2))
        results.append(
            CaseResult(
                f"imaging m={plane.index_m}",
                "rel_L2",
                rel_l2(oracle, series),
                IMAGING_REL_L2,
                f"d_i={plane.position:.6f} m N={obj.truncation} W={cfg.window_periods} "
                f"spp={spp}",
            )
        )
    return results


def _circular_lag(a, b, dx):
    """Shift ``s`` (>= 0) maximising ``sum a(x) b(x - s)`` on a periodic grid."""
    corr = np.fft.irfft(np.fft.rfft(a) * np.conj(np.fft.rfft(b)), n=a.size)
    return int(np.argmax(corr)) * dx


def classical_cases(cfg):
    lam = cfg.lambda_s
    z_t = classical_talbot_length(cfg.period, lam)
    n_eff = min(cfg.harmonics, paraxial_max_order(cfg.period, lam, z_t))
    obj = rect_grating(cfg.period, cfg.duty, n_eff)
    points = 32 * 8
    xs = (np.arange(points) / points - 0.5) * 8 * cfg.period
    intensity = np.abs(evaluate_object(obj, xs)) ** 2
    probe = WindowedObject(obj, cfg.window_periods, 16)
    reach = float(np.abs(xs).max())

    spp = _sampling(probe, cfg.samples_per_period, lam, z_t, reach)
    revival = np.abs(classical_propagate(WindowedObject(obj, cfg.window_periods, spp), lam, z_t, xs)) ** 2
    results = [
        CaseResult(
            "classical z_T",
            "Linf",
            float(np.max(np.abs(revival - intensity))),
            CLASSICAL_LINF,
            f"z={z_t:.6f} m N={n_eff} W={cfg.window_periods} spp={spp} (central 8 periods)",
        )
    ]
    spp = _sampling(probe, cfg.samples_per_period, lam, z_t / 2, reach)
    half = np.abs(classical_propagate(WindowedObject(obj, cfg.window_periods, spp), lam, z_t / 2, xs)) ** 2
    dx = xs[1] - xs[0]
    lag = _circular_lag(half, intensity, dx) % cfg.period
    results.append(
        CaseResult(
            "classical z_T/2",
            "lag_error",
            abs(lag - cfg.period / 2),
            None,
            f"cross-correlation lag={lag:.4e} m, expected a/2={cfg.period / 2:.4e} m, grid step={dx:.2e} m",
        )
    )
    return results


def litho_cases(cfg):
    lam = cfg.lambda_s
    planes = litho_revival_planes(rect_grating(cfg.period, cfg.duty, 1), lam, (0.0, 1.0))
    d0 = next(p.position for p in planes if p.classification is PlaneKind.DIRECT)
    n_eff = min(cfg.harmonics, paraxial_max_order(cfg.period, lam, d0))
    obj = rect_grating(cfg.period, cfg.duty, n_eff)
    geom = LithoGeometry(d0, lam)
    x2 = (np.arange(GRID_POINTS) / GRID_POINTS - 0.5) * cfg.period
    probe = WindowedObject(obj, cfg.window_periods, 16)
    spp = _sampling(probe, cfg.samples_per_period, lam, d0 / 2, float(np.abs(x2).max()) / 2, 2)
    oracle = litho_oracle(WindowedObject(obj, cfg.window_periods, spp), geom, 0.0, x2)
    series = _unit_max(litho_coincidence_rate(obj, geom, 0.0, x2))
    return [
        CaseResult(
            "litho d_0=a^2/lambda",
            "rel_L2",
            rel_l2(oracle, series),
            None,
            f"d_0={d0:.6f} m N={n_eff} W={cfg.window_periods} spp={spp} (informational)",
        )
    ]


def singles_cases(cfg):
    obj = rect_grating(cfg.period, cfg.duty, cfg.harmonics)
    # |A|^2 carries frequencies up to 2N/a; sample above that so the midpoint rule is exact
    spp = cfg.samples_per_period or DEFAULT_SAMPLES
    while spp <= 2 * obj.truncation:
        spp *= 2
    series = singles_rate(obj, 0.0)
    quad = singles_oracle(WindowedObject(obj, cfg.window_periods, spp))
    return [
        CaseResult(
            "singles",
            "abs_diff",
            abs(series - quad),
            SINGLES_ABS,
            f"series={series:.6f} quadrature={quad:.6f} N={obj.truncation} spp={spp}",
        )
    ]


_CASES = {
    "imaging": imaging_cases,
    "litho": litho_cases,
    "classical": classical_cases,
    "singles": singles_cases,
}


def verify_oracle_report(cfg):
    """Run the comparison set named by ``cfg.verify_set``.

    Returns
    -------
    report : str
        One line per case.
    exit_code : int
        0 if every thresholded case passes, else 1.
    """
    names = list(_CASES) if cfg.verify_set == "all" else [cfg.verify_set]
    results = []
    for name in names:
        results.extend(_CASES[name](cfg))
    code = 0 if all(r.passed for r in results) else 1
    return "\n".join(r.line() for r in results), code
