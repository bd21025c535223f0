import math
from pathlib import Path

import numpy as np
import pytest

import ccfour

GOLDEN = Path(__file__).resolve().parents[2] / "data" / "golden"


def test_tetrahedron_metric():
    m = np.array([10.0, 13.0, 15.0, 17.0])
    E = ccfour.tetrahedron(m)
    mu = ccfour.mass_scale(m)
    assert E.shape == (3, 4)
    assert mu == pytest.approx((10 * 13 * 15 * 17 / 55) ** (1 / 3))
    assert np.allclose(E @ np.diag(m) @ E.T, mu * np.eye(3), atol=1e-12)
    assert np.allclose(E @ m, 0.0, atol=1e-12)


def test_solve_general():
    doc = ccfour.solve([10, 13, 15, 17])
    assert doc["schema_version"] == ccfour.SCHEMA_VERSION
    assert len(doc["solutions"]) == 11
    lambdas = [s["lambda"] for s in doc["solutions"]]
    assert lambdas == sorted(lambdas)
    assert any(abs(x + 2.32656490060845) < 1e-9 for x in lambdas)
    assert all(c["passed"] for c in ccfour.verify(doc))


def test_kite_and_equal_pairs():
    doc = ccfour.kite([10, 8, 9, 9])
    assert len(doc["solutions"]) == 3
    for s in doc["solutions"]:
        r = s["distances"]
        assert math.isclose(r["r13"], r["r14"], abs_tol=1e-12)


def test_settings_and_errors():
    assert len(ccfour.solve([1, 1, 1, 1], {"grid_theta": 48})["solutions"]) == 19
    with pytest.raises(ccfour.Error, match="mass"):
        ccfour.solve([1, -1, 1, 1])
    with pytest.raises(ValueError):
        ccfour.solve([1, 1, 1, 1], {"grid": 3})
    with pytest.raises(ValueError):
        ccfour.kite([1, 2, 3, 4])


def test_verify_bundled_tables():
    general = (GOLDEN / "general_10_13_15_17.json").read_text()
    assert all(c["passed"] for c in ccfour.verify(general))
    kite = (GOLDEN / "kite_8_10_9_9.json").read_text()
    assert not any(c["passed"] for c in ccfour.verify(kite))
    assert all(c["passed"] for c in ccfour.verify(kite, [10, 8, 9, 9]))


def test_sign_pattern_and_cayley_menger():
    assert ccfour.sign_pattern([1, 2, 3, 4], 0.0, 0.0) == "concave_1"
    s = math.sqrt(2)
    assert abs(ccfour.cayley_menger([1, s, 1, 1, s, 1])) < 1e-14
