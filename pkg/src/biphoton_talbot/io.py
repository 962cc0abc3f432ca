"""Byte-exact CSV and binary PGM serialisation of carpets."""

import numpy as np


def _fmt(value):
    # 9 significant digits; + 0.0 folds -0.0 into 0
    return format(float(value) + 0.0, ".9g")


def carpet_csv(carpet):
    lines = ["x_m,z_m,rate"]
    xs = [_fmt(x) for x in carpet.x_axis]
    for z, row in zip(carpet.z_axis, carpet.values):
        zs = _fmt(z)
        lines.extend(f"{x},{zs},{_fmt(v)}" for x, v in zip(xs, row))
    return ("\n".join(lines) + "\n").encode("utf-8")


def carpet_pgm(carpet):
    n_z, n_x = carpet.values.shape
    pixels = np.clip(np.rint(carpet.values * 255.0), 0, 255).astype(np.uint8)
    return f"P5\n{n_x} {n_z}\n255\n".encode("ascii") + pixels.tobytes()


def _write(path, payload):
    try:
        with open(path, "wb") as fh:
            fh.write(payload)
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write {path}: {exc.strerror}") from exc


def write_csv(carpet, path):
    """Write ``x_m,z_m,rate`` rows, z-major, LF line endings."""
    _write(path, carpet_csv(carpet))


def write_pgm(carpet, path):
    """Write an 8-bit binary PGM; row 0 is the smallest z, column 0 the smallest x."""
    _write(path, carpet_pgm(carpet))
