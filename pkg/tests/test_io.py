import numpy as np
import pytest

from biphoton_talbot import write_csv, write_pgm
from biphoton_talbot.carpet import Carpet
from biphoton_talbot.io import carpet_csv, carpet_pgm


@pytest.fixture
def carpet():
    values = np.array([[0.0, 0.5, 1.0], [0.25, 1 / 3, 0.002]])
    return Carpet(np.array([-1e-4, 0.0, 1e-4]), np.array([0.0, 0.01]), values)


def test_csv_layout(carpet):
    text = carpet_csv(carpet).decode()
    lines = text.split("\n")
    assert lines[0] == "x_m,z_m,rate"
    assert lines[1:4] == ["-0.0001,0,0", "0,0,0.5", "0.0001,0,1"]
    assert lines[5] == "0,0.01,0.333333333"
    assert text.endswith("\n") and "\r" not in text
    assert len(lines) == 1 + 6 + 1


def test_csv_folds_negative_zero():
    c = Carpet(np.array([-0.0]), np.array([-0.0]), np.array([[-0.0]]))
    assert carpet_csv(c) == b"x_m,z_m,rate\n0,0,0\n"


def test_pgm_layout(carpet):
    data = carpet_pgm(carpet)
    header = b"P5\n3 2\n255\n"
    assert data.startswith(header)
    assert list(data[len(header):]) == [0, 128, 255, 64, 85, 1]


def test_pgm_clips(carpet):
    c = Carpet(carpet.x_axis, carpet.z_axis, carpet.values * 2 - 0.5)
    pixels = carpet_pgm(c)[len(b"P5\n3 2\n255\n"):]
    assert min(pixels) == 0 and max(pixels) == 255


def test_writers_round_trip(carpet, tmp_path):
    write_csv(carpet, tmp_path / "c.csv")
    write_pgm(carpet, tmp_path / "c.pgm")
    assert (tmp_path / "c.csv").read_bytes() == carpet_csv(carpet)
    assert (tmp_path / "c.pgm").read_bytes() == carpet_pgm(carpet)


def test_write_error_names_path(carpet, tmp_path):
    bad = tmp_path / "missing" / "c.csv"
    with pytest.raises(OSError, match="missing"):
        write_csv(carpet, bad)


def test_single_cell_csv(tmp_path):
    c = Carpet(np.array([0.0]), np.array([0.01]), np.array([[1.0]]))
    write_csv(c, tmp_path / "one.csv")
    assert (tmp_path / "one.csv").read_bytes() == b"x_m,z_m,rate\n0,0.01,1\n"


def test_csv_row_count():
    c = Carpet(np.linspace(0, 1, 7), np.linspace(0, 1, 5), np.random.default_rng(0).random((5, 7)))
    assert carpet_csv(c).count(b"\n") == 7 * 5 + 1


def test_pgm_examples():
    zero = Carpet(np.arange(64.0), np.arange(32.0), np.zeros((32, 64)))
    data = carpet_pgm(zero)
    assert data[:12] == b"P5\n64 32\n255\n"[:12]
    assert data.startswith(b"P5\n64 32\n255\n") and len(data) == len(b"P5\n64 32\n255\n") + 2048
    assert set(data[len(b"P5\n64 32\n255\n"):]) == {0}
    values = np.zeros((32, 64))
    values[3, 5] = 1.0
    data = carpet_pgm(Carpet(np.arange(64.0), np.arange(32.0), values))
    assert data[len(b"P5\n64 32\n255\n") + 3 * 64 + 5] == 255
