import math
import pathlib

import numpy as np
import pytest

import qkit

FIXTURES = pathlib.Path(__file__).resolve().parents[2] / "fixtures"
BELL = np.array([[0.5, 0, 0, 0.5], [0, 0, 0, 0], [0, 0, 0, 0], [0.5, 0, 0, 0.5]], dtype=complex)


def test_kron_and_partial_trace():
    z = np.diag([1, -1]).astype(complex)
    assert np.allclose(qkit.kron(z, np.eye(2)), np.diag([1, 1, -1, -1]))
    assert np.allclose(qkit.partial_trace(BELL, [2, 2], [0]), np.eye(2) / 2)


def test_ppt_of_bell_state():
    min_eig, negative = qkit.ppt_check(BELL, [2, 2])
    assert negative
    assert min_eig == pytest.approx(-0.5, abs=1e-10)


def test_validate_density_reports_violations():
    ok, _ = qkit.validate_density(np.eye(2) / 2)
    assert ok
    ok, bad = qkit.validate_density(np.diag([1.5, -0.5]).astype(complex))
    assert not ok
    assert bad["positivity"] == pytest.approx(0.5)


def test_entropy_of_maximally_mixed_qubit():
    purity, entropy = qkit.purity_and_entropy(np.eye(2) / 2, base="2")
    assert purity == pytest.approx(0.5)
    assert entropy == pytest.approx(1.0)


def test_trine_naimark_recovers_povm():
    povm = qkit.trine_povm()
    ops = [p / np.sqrt(2 / 3) for p in povm]
    ext = qkit.canonical_naimark(ops)
    assert ext["ancilla_dim"] == 3
    u = ext["unitary"]
    assert np.allclose(u.conj().T @ u, np.eye(6), atol=1e-9)
    for a, b in zip(ext["recovered_povm"], povm):
        assert np.allclose(a, b, atol=1e-8)


def test_depolarizing_endpoint_and_choi():
    ops = qkit.depolarizing(0.75)
    rho = np.array([[0.7, 0.2j], [-0.2j, 0.3]])
    assert np.allclose(qkit.apply_channel(ops, rho), np.eye(2) / 2, atol=1e-12)
    c = qkit.choi(ops)
    assert np.trace(c).real == pytest.approx(1.0)
    assert len(qkit.kraus_from_choi(c)) <= 4
    assert qkit.same_channel(qkit.kraus_from_choi(c), ops)


def test_transposition_is_not_cp():
    cp, min_eig = qkit.is_completely_positive(qkit.transposition_superoperator(2))
    assert not cp
    assert min_eig == pytest.approx(-0.5, abs=1e-10)


def test_joint_measurement_noise():
    r = qkit.joint_statistics(1 + 1j, 40)
    assert r["varX"] == pytest.approx(1.0, abs=1e-6)
    assert r["product"] == pytest.approx(1.0, abs=2e-6)
    assert r["product"] / r["bound"] == pytest.approx(4.0, abs=1e-5)


def test_errors_are_raised_as_qkit_error():
    with pytest.raises(qkit.QkitError):
        qkit.depolarizing(2.0)
    with pytest.raises(qkit.QkitError):
        qkit.coherent_state(10.0, 40)


def test_scenario_report():
    report = qkit.run_scenario("ppt", state=str(FIXTURES / "bell.json"))
    assert report["pass"]
    assert report["outputs"]["min_eig"] == pytest.approx(-0.5)
    a = qkit.run_scenario("sample", seed=3, shots=5000)
    b = qkit.run_scenario("sample", seed=3, shots=5000)
    assert a == b
