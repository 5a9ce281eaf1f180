import json
import math

import numpy as np
import pytest

import wehrl


def test_fock_closed_form_matches_quadrature():
    for n in (0, 1, 5):
        numeric = wehrl.wehrl_entropy(wehrl.fock(n))
        assert numeric["value"] == pytest.approx(wehrl.wehrl_fock_closed(n), abs=1e-8)


def test_vacuum_is_one():
    assert wehrl.wehrl_closed_form(wehrl.fock(0)) == pytest.approx(1.0)
    assert wehrl.husimi(wehrl.fock(0), [0.0, 0.0]) == pytest.approx(1.0)


def test_thermal_closed_form():
    beta = 0.7
    a = 1.0 - math.exp(-beta)
    assert wehrl.wehrl_thermal_closed(beta) == pytest.approx(1.0 - math.log(a))


def test_eur_report_low_fock():
    r = wehrl.eur_report(wehrl.fock(1))
    assert r["wl_lhs"] == pytest.approx(2.722, abs=5e-3)
    assert r["bbm_lhs"] == pytest.approx(2.69, abs=1e-2)
    assert r["wl_deficit"] >= 0.0


def test_sweep_rows():
    rows = wehrl.eur_sweep("thermal", points=5)
    assert len(rows) == 5
    assert all(r["fl_deficit"] >= -1e-6 for r in rows)


def test_tmss_mutual_information():
    lam = 0.6
    mi = wehrl.mutual_information(wehrl.tmss(lam))
    assert mi["value"] == pytest.approx(-math.log(1 - lam * lam), abs=1e-6)
    ce = wehrl.conditional_entropy(wehrl.tmss(lam))
    assert ce["value"] == pytest.approx(1.0, abs=1e-6)


def test_gaussian_summary():
    v = wehrl.tmss_covariance(0.3)
    s = wehrl.gaussian_summary(v, (1, 1))
    assert s["det_c"] <= 1.0
    assert not s["ppt"]
    assert s["mutual"] == pytest.approx(-math.log(1 - 0.09), abs=1e-10)
    assert np.allclose(wehrl.symplectic_eigenvalues(v, (1, 1)), [0.5, 0.5])


def test_inadmissible_covariance_raises():
    with pytest.raises(wehrl.InadmissibleCovarianceError) as info:
        wehrl.gaussian(np.diag([0.3, 0.3]))
    assert info.value.violating_eigenvalue == pytest.approx(0.3)
    assert isinstance(info.value, wehrl.WehrlError)


def test_invalid_state_raises():
    with pytest.raises(wehrl.WehrlError):
        wehrl.tmss(1.0)
    with pytest.raises(wehrl.WehrlError):
        wehrl.fock_mixture([(0, 0.3), (1, 0.3)])


def test_state_round_trip():
    s = wehrl.fock_mixture([(0, 0.25), (3, 0.75)])
    again = wehrl.state_from_dict(s.to_dict())
    assert again.to_dict() == s.to_dict()
    assert again.kind == s.kind


def test_quadrature_spec():
    spec = wehrl.QuadratureSpec()
    spec.strategy = "polar-2d"
    assert spec.strategy == "polar-2d"
    r = wehrl.wehrl_entropy(wehrl.fock(2), spec)
    assert r["strategy"] == "polar-2d"
    with pytest.raises(wehrl.WehrlError):
        spec.strategy = "simpson"


def test_cli_json():
    code, out, err = wehrl.run_cli(["eur-fock", "--n-max", "3", "--format", "json"])
    assert code == 0, err
    table = json.loads(out)
    assert len(table["rows"]) == 4
    code, _, _ = wehrl.run_cli(["eur-fock", "--n-max", "-1"])
    assert code == 3
