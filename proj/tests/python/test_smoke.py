import csv
import io
import json
import math

import pytest

import krein_spectra as ks

LAMBDA_2 = (2 * 4.493409457909064) ** 2


def test_constants():
    assert ks.unit_ball_volume(2) == pytest.approx(math.pi)
    assert ks.krein_constant(1, 1) < ks.laptev_constant(1, 1)
    minimum, alpha = ks.bound_constant_numeric(1, 1)
    assert minimum == pytest.approx(2 * (5 / 3) ** 0.5, rel=1e-6)
    assert alpha > 0


def test_bound_values():
    assert ks.weyl_leading(1, 1, 1.0, 1e6) == pytest.approx(1000 / math.pi)
    assert ks.krein_bound(1, 1, 1.0, 100.0) > ks.weyl_leading(1, 1, 1.0, 100.0)


def test_oracle():
    lam = ks.oracle_1d_krein(0.0, 1.0, 3)
    assert lam[0] == pytest.approx(4 * math.pi**2)
    assert lam[1] == pytest.approx(LAMBDA_2)


def test_interval_spectrum():
    p = ks.Problem(ks.Domain.interval(0, 1), m=1, degree=5, cells_per_axis=64)
    lam = p.krein_spectrum()["eigenvalues"]
    exact = ks.oracle_1d_krein(0.0, 1.0, 5)
    for got, want in zip(lam, exact):
        assert want <= got <= want * (1 + 1e-6)
    mu = p.friedrichs_spectrum()["eigenvalues"]
    assert all(a <= b for a, b in zip(mu, lam))


def test_counting_curve_lshape():
    cells = [[0, 0], [1, 0], [2, 0], [0, 1], [1, 1], [2, 1], [0, 2], [1, 2]]
    dom = ks.Domain.cell_union(1 / 3, cells)
    assert dom.volume == pytest.approx(8 / 9)
    p = ks.Problem(dom, m=1, degree=3)
    curve = p.counting_curve([50.0, 200.0, 800.0])
    assert all(c <= b for c, b in zip(curve["counts"], curve["krein_bound"]))
    assert all(f >= c for f, c in zip(curve["friedrichs_counts"], curve["counts"]))


def test_bc_residual():
    p = ks.Problem(ks.Domain.interval(0, 1), m=1, degree=5, cells_per_axis=64)
    s = p.krein_spectrum()
    assert p.bc_residual(s["eigenvalues"][0], s["vectors"][0]) <= 1e-4


def test_run_config_csv_and_json():
    out, code = ks.run_config("lambdas = 39.49, 80.77\n", mode="count")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0][:2] == ["lambda", "count"]
    assert [r[1] for r in rows[1:]] == ["1", "2"]
    doc, code = ks.run_config("", mode="bound-table", json=True)
    assert code == 0
    assert len(json.loads(doc)["rows"]) == 9


def test_errors():
    with pytest.raises(ks.ValidationError):
        ks.Problem(ks.Domain.interval(0, 1), m=2, degree=2)
    with pytest.raises(ks.ValidationError):
        ks.run_config("colour = red\n")
    with pytest.raises(ks.NumericalError):
        ks.bound_constant_numeric(1, 1, 10.0, 1e4)
