"""Command-line front end.

Exit status: 0 on success, 1 on runtime failures (degenerate geometry,
unresolved quadrature, failed oracle thresholds, I/O) and 2 on invalid input.
"""

import argparse
import json
import sys

from ._validation import DegenerateGeometryError, DomainError, QuadratureResolutionError
from .carpet import CarpetMode, ScanSpec, generate_carpet
from .config import COMMANDS, VERIFY_SETS, ConfigError, RunConfig, parse_length
from .imaging import ImagingGeometry, ScanMode, magnification, self_image_planes, singles_rate
from .io import carpet_csv, write_csv, write_pgm
from .lithography import LithoGeometry, litho_revival_planes
from .optics import PhotonPair, classical_talbot_length, rect_grating
from .oracle import WindowedObject, singles_oracle
from .verify import verify_oracle_report

DEFAULT_Z = {"imaging": (0.0, 0.34), "litho": (0.0, 0.057)}
DEFAULT_NZ = 341
DEFAULT_NZ_CLASSICAL = 61


def _length(text):
    try:
        return parse_length(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _common_parser():
    p = argparse.ArgumentParser(add_help=False)
    S = argparse.SUPPRESS
    p.add_argument("--config", metavar="PATH", default=S, help="JSON config; flags override it")
    p.add_argument("--period", type=_length, default=S, help="grating period (default 0.1mm)")
    p.add_argument("--duty", type=float, default=S, help="open fraction in [0, 1] (default 0.5)")
    p.add_argument("--harmonics", type=int, default=S, help="Fourier truncation N (default 50)")
    p.add_argument("--lambda-s", type=_length, default=S, help="signal wavelength (default 883.2nm)")
    p.add_argument("--lambda-i", type=_length, default=S, help="idler wavelength (default 883.2nm)")
    p.add_argument("--ds1", type=_length, default=S, help="crystal to object (default 11cm)")
    p.add_argument("--ds2", type=_length, default=S, help="object to signal detector (default 20cm)")
    p.add_argument("--di", type=_length, default=S, help="crystal to idler detector (magnify)")
    p.add_argument("--x1", type=_length, default=S, help="signal detector position (singles)")
    p.add_argument("--z-min", type=_length, default=S)
    p.add_argument("--z-max", type=_length, default=S)
    p.add_argument("--x-min", type=_length, default=S)
    p.add_argument("--x-max", type=_length, default=S)
    p.add_argument("--nx", type=int, default=S)
    p.add_argument("--nz", type=int, default=S)
    p.add_argument("--scan-mode", default=S, help="fixed | synchronous")
    p.add_argument("--kind", default=S, help="planes: imaging | litho")
    p.add_argument("--out", metavar="PATH", default=S)
    p.add_argument("--format", default=S, help="csv | pgm")
    p.add_argument("--window-periods", type=int, default=S)
    p.add_argument("--samples-per-period", type=int, default=S)
    p.add_argument("--set", dest="verify_set", default=S, help=f"verify-oracle: {' | '.join(VERIFY_SETS)} | all")
    p.add_argument("--jobs", type=int, default=S, help="worker threads for carpets")
    return p


def build_parser():
    parser = argparse.ArgumentParser(
        prog="biphoton-talbot",
        description="Second-order Talbot carpets, self-image planes and oracle checks.",
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)
    common = _common_parser()
    helps = {
        "imaging-carpet": "coincidence carpet over (x, d_i) in the imaging arrangement",
        "litho-carpet": "coincidence carpet over (x, d_0) in the lithography arrangement",
        "classical-carpet": "first-order intensity carpet by Fresnel quadrature",
        "planes": "list self-image planes",
        "magnify": "magnification for each detector scan mode",
        "singles": "single-detector count rate",
        "verify-oracle": "compare series results with direct quadrature",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def parse_cli(argv):
    """Turn ``argv`` into a validated :class:`RunConfig`.

    Raises ``SystemExit(2)`` via argparse on malformed flags and
    :class:`ConfigError` on out-of-range values.
    """
    ns = vars(build_parser().parse_args(argv))
    cfg = RunConfig()
    path = ns.pop("config", None)
    if path is not None:
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError("config", f"cannot read {path}: {exc}") from None
        if not isinstance(data, dict):
            raise ConfigError("config", "JSON config must be an object")
        data.pop("command", None)
        cfg = RunConfig.from_mapping(data, cfg)
    cfg = RunConfig.from_mapping(ns, cfg)
    return cfg.validate()


def _object(cfg, harmonics=None):
    return rect_grating(cfg.period, cfg.duty, cfg.harmonics if harmonics is None else harmonics)


def _imaging_geometry(cfg, d_i=0.0):
    return ImagingGeometry(cfg.ds1, cfg.ds2, d_i, PhotonPair(cfg.lambda_s, cfg.lambda_i))


def _z_range(cfg, default):
    return (
        default[0] if cfg.z_min is None else cfg.z_min,
        default[1] if cfg.z_max is None else cfg.z_max,
    )


def build_scan_spec(cfg):
    obj = _object(cfg)
    synchronous = cfg.scan_mode == "synchronous"
    nz = cfg.nz or DEFAULT_NZ
    if cfg.command == "imaging-carpet":
        mode = CarpetMode.IMAGING_SYNCHRONOUS if synchronous else CarpetMode.IMAGING_FIXED_SIGNAL
        geometry = _imaging_geometry(cfg)
        z_range = _z_range(cfg, DEFAULT_Z["imaging"])
    elif cfg.command == "litho-carpet":
        mode = CarpetMode.LITHO_SYNCHRONOUS if synchronous else CarpetMode.LITHO_FIXED_ONE
        geometry = LithoGeometry(0.0, cfg.lambda_s)
        z_range = _z_range(cfg, DEFAULT_Z["litho"])
    else:
        mode = CarpetMode.CLASSICAL_INTENSITY
        geometry = LithoGeometry(0.0, cfg.lambda_s)
        z_t = classical_talbot_length(cfg.period, cfg.lambda_s)
        z_range = _z_range(cfg, (z_t / 4, z_t))
        # each classical row is a full quadrature, hence the coarser default
        nz = cfg.nz or DEFAULT_NZ_CLASSICAL
    if synchronous and mode is CarpetMode.CLASSICAL_INTENSITY:
        raise ConfigError("scan-mode", "classical-carpet has a single detector")
    if cfg.scan_mode == "fixed-signal" and not mode.is_imaging:
        raise ConfigError("scan-mode", "fixed-signal applies to imaging-carpet")
    if cfg.scan_mode == "fixed-one" and mode.is_imaging:
        raise ConfigError("scan-mode", "fixed-one applies to litho-carpet")
    try:
        return ScanSpec(
            mode, (cfg.x_min, cfg.x_max), cfg.nx, z_range, nz, obj, geometry,
            window_periods=cfg.window_periods, samples_per_period=cfg.samples_per_period,
        )
    except DomainError as exc:
        raise ConfigError("z-min" if "z_range" in str(exc) else cfg.command, str(exc)) from None


def _run_carpet(cfg, out):
    if cfg.format == "pgm" and cfg.out is None:
        raise ConfigError("out", "pgm output needs --out PATH")
    spec = build_scan_spec(cfg)
    carpet = generate_carpet(spec, n_jobs=cfg.jobs)
    if cfg.out is None:
        out.write(carpet_csv(carpet).decode("utf-8"))
        return 0
    (write_pgm if cfg.format == "pgm" else write_csv)(carpet, cfg.out)
    print(f"wrote {cfg.out} ({spec.n_z} x {spec.n_x}, {cfg.format})", file=sys.stderr)
    return 0


def _run_planes(cfg, out):
    obj = _object(cfg)
    if cfg.kind == "litho":
        planes = litho_revival_planes(obj, cfg.lambda_s, _z_range(cfg, DEFAULT_Z["litho"]))
        label = "d_0"
    else:
        planes = self_image_planes(obj, _imaging_geometry(cfg), _z_range(cfg, DEFAULT_Z["imaging"]))
        label = "d_i"
    print(f"{'m':>6}  {label + '_m':>12}  {label + '_cm':>10}  kind", file=out)
    for p in planes:
        print(f"{str(p.index_m):>6}  {p.position:12.6f}  {p.position * 100:10.4f}  {p.classification.value}", file=out)
    return 0


def _run_magnify(cfg, out):
    geom = _imaging_geometry(cfg, cfg.di)
    for mode in ScanMode:
        print(f"{mode.value:<12} {magnification(geom, mode):.6f}", file=out)
    return 0


def _run_singles(cfg, out):
    obj = _object(cfg)
    spp = cfg.samples_per_period or 64
    while spp <= 2 * obj.truncation:
        spp *= 2
    print(f"series      {singles_rate(obj, cfg.x1):.9g}", file=out)
    print(f"quadrature  {singles_oracle(WindowedObject(obj, cfg.window_periods, spp)):.9g}", file=out)
    return 0


def _run_verify(cfg, out):
    report, code = verify_oracle_report(cfg)
    print(report, file=out)
    return code


_RUNNERS = {
    "imaging-carpet": _run_carpet,
    "litho-carpet": _run_carpet,
    "classical-carpet": _run_carpet,
    "planes": _run_planes,
    "magnify": _run_magnify,
    "singles": _run_singles,
    "verify-oracle": _run_verify,
}


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        cfg = parse_cli(argv)
        return _RUNNERS[cfg.command](cfg, out)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    except (ConfigError, DomainError) as exc:
        print(f"biphoton-talbot: error: {exc}", file=sys.stderr)
        return 2
    except (DegenerateGeometryError, QuadratureResolutionError, ZeroDivisionError, OSError) as exc:
        print(f"biphoton-talbot: runtime error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
