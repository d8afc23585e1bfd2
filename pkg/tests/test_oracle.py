import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from msta_qc import oracle
from msta_qc.oracle import (
    apply,
    approximation_error,
    basis_state,
    compose,
    gate_matrix,
    hermitian_eigenvalues,
    is_unitary,
    jacobi_eigenvalues,
    matrix_power,
    phase_insensitive_error,
    spectral_norm,
    tensor_embed,
)


def random_unitary(rng, dim):
    q, r = np.linalg.qr(rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim)))
    return q * (np.diag(r) / np.abs(np.diag(r)))


CATALOG = [
    ("X", {}), ("Y", {}), ("Z", {}), ("H", {}), ("S", {}), ("T", {}),
    ("RTHETA", {"theta": 0.4}), ("S3POW", {"alpha": 0.3}), ("S1POW", {"alpha": -0.7}),
    ("CNOT", {}), ("CPHASE", {}), ("SWAP", {}),
    ("DEUTSCH", {"gamma": 0.2}), ("BARENCO", {"phi": 0.1, "alpha": 0.2, "theta": 0.3}),
]


@pytest.mark.parametrize("name,params", CATALOG)
def test_catalog_unitary(name, params):
    assert is_unitary(gate_matrix(name, **params))


def test_families_unitary_random_parameters():
    rng = np.random.default_rng(0)
    for _ in range(50):
        assert is_unitary(gate_matrix("DEUTSCH", gamma=rng.uniform(-4, 4)))
        phi, alpha, theta = rng.uniform(-4, 4, 3)
        assert is_unitary(gate_matrix("BARENCO", phi=phi, alpha=alpha, theta=theta))


def test_deutsch_is_toffoli_at_gamma_one():
    d = gate_matrix("DEUTSCH", gamma=1)
    np.testing.assert_allclose(d[6:, 6:], [[0, 1], [1, 0]], atol=1e-15)
    np.testing.assert_allclose(d[:6, :6], np.eye(6))
    assert d.shape == (8, 8)


def test_barenco_identity():
    np.testing.assert_allclose(gate_matrix("BARENCO", phi=0, alpha=0, theta=0), np.eye(4))


def test_sigma3_quarter_power_is_t():
    np.testing.assert_allclose(gate_matrix("S3POW", alpha=0.25), gate_matrix("T"), atol=1e-15)
    np.testing.assert_allclose(gate_matrix("T"), np.diag([1, cmath.exp(1j * math.pi / 4)]))


def test_gate_matrix_errors():
    with pytest.raises(ValueError):
        gate_matrix("FOO")
    with pytest.raises(ValueError):
        gate_matrix("RTHETA")
    with pytest.raises(ValueError):
        gate_matrix("X", theta=1)


def test_apply_examples():
    rng = np.random.default_rng(1)
    v = rng.normal(size=4) + 0j
    np.testing.assert_allclose(apply(np.eye(4), v), v)
    np.testing.assert_allclose(apply(gate_matrix("CNOT"), basis_state("01")), basis_state("01"))
    np.testing.assert_allclose(apply(gate_matrix("CNOT"), basis_state("10")), basis_state("11"))
    h2 = tensor_embed(gate_matrix("H"), (2,), 2)
    np.testing.assert_allclose(h2 @ basis_state("00"), np.array([1, 1, 0, 0]) / math.sqrt(2))
    with pytest.raises(ValueError):
        apply(np.eye(2), v)


def test_tensor_embed_reversed_targets():
    # CNOT with control 2, target 1 flips qubit 1 when qubit 2 is set
    m = tensor_embed(gate_matrix("CNOT"), (2, 1), 2)
    np.testing.assert_allclose(m @ basis_state("01"), basis_state("11"))
    np.testing.assert_allclose(m @ basis_state("10"), basis_state("10"))
    m3 = tensor_embed(gate_matrix("X"), (3,), 3)
    np.testing.assert_allclose(m3, np.kron(np.eye(4), oracle.X))
    with pytest.raises(ValueError):
        tensor_embed(gate_matrix("X"), (4,), 3)
    with pytest.raises(ValueError):
        tensor_embed(gate_matrix("CNOT"), (1, 1), 3)
    with pytest.raises(ValueError):
        tensor_embed(gate_matrix("CNOT"), (1,), 3)


def test_compose_order():
    x, z = gate_matrix("X"), gate_matrix("Z")
    np.testing.assert_allclose(compose(x, z), z @ x)
    with pytest.raises(ValueError):
        compose(x, np.eye(4))
    with pytest.raises(ValueError):
        compose()


def test_matrix_power_examples():
    z, h = gate_matrix("Z"), gate_matrix("H")
    np.testing.assert_allclose(matrix_power(z, 0.25), gate_matrix("T"), atol=1e-15)
    np.testing.assert_allclose(matrix_power(h, 1), h, atol=1e-15)
    hh = matrix_power(h, 0.5)
    np.testing.assert_allclose(hh @ hh, h, atol=1e-12)
    np.testing.assert_allclose(matrix_power(-np.eye(2), 0.5), 1j * np.eye(2), atol=1e-15)
    with pytest.raises(ValueError):
        matrix_power(np.diag([1.0, 2.0]), 0.5)
    with pytest.raises(ValueError):
        matrix_power(np.eye(4), 0.5)


@pytest.mark.parametrize("p", [0.5, 0.25])
def test_matrix_power_inverts(p):
    rng = np.random.default_rng(2)
    for _ in range(20):
        u = random_unitary(rng, 2)
        np.testing.assert_allclose(matrix_power(matrix_power(u, p), 1 / p), u, atol=1e-10)


def test_matrix_power_additive():
    rng = np.random.default_rng(3)
    for _ in range(20):
        u = random_unitary(rng, 2)
        a, b = rng.uniform(0.01, 0.5, 2)
        np.testing.assert_allclose(matrix_power(u, a) @ matrix_power(u, b), matrix_power(u, a + b), atol=1e-10)


def test_jacobi_matches_numpy():
    rng = np.random.default_rng(4)
    for dim in (2, 3, 5, 8):
        a = rng.normal(size=(dim, dim))
        a = a + a.T
        np.testing.assert_allclose(jacobi_eigenvalues(a), np.linalg.eigvalsh(a), atol=1e-12)
        h = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        h = h + h.conj().T
        np.testing.assert_allclose(hermitian_eigenvalues(h), np.linalg.eigvalsh(h), atol=1e-12)


def test_spectral_norm_matches_svd():
    rng = np.random.default_rng(5)
    for dim in (2, 4, 8, 16):
        d = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        assert abs(spectral_norm(d) - np.linalg.svd(d, compute_uv=False)[0]) < 1e-12


def test_error_examples():
    i2, z = np.eye(2), gate_matrix("Z")
    assert approximation_error(i2, i2) == 0
    assert abs(approximation_error(i2, -i2) - 2) < 1e-15
    assert phase_insensitive_error(i2, -i2) < 1e-15
    assert abs(approximation_error(i2, z) - 2) < 1e-15
    with pytest.raises(ValueError):
        approximation_error(i2, np.eye(4))


def test_error_is_max_over_states():
    rng = np.random.default_rng(6)
    u, w = random_unitary(rng, 2), random_unitary(rng, 2)
    eps = approximation_error(u, w)
    vs = rng.normal(size=(2000, 2)) + 1j * rng.normal(size=(2000, 2))
    vs /= np.linalg.norm(vs, axis=1, keepdims=True)
    sampled = np.linalg.norm(vs @ (u - w).T, axis=1).max()
    assert sampled <= eps + 1e-12
    assert sampled > eps - 1e-2


@pytest.mark.parametrize("dim", [2, 4])
def test_phase_insensitive_is_minimum(dim):
    rng = np.random.default_rng(dim)
    for _ in range(5):
        u, w = random_unitary(rng, dim), random_unitary(rng, dim)
        grid = min(
            np.linalg.svd(np.exp(1j * t) * u - w, compute_uv=False)[0]
            for t in np.linspace(0, 2 * np.pi, 4001)
        )
        best = phase_insensitive_error(u, w)
        assert best <= grid + 1e-12
        assert best > grid - 1e-3


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_metric_properties(seed):
    rng = np.random.default_rng(seed)
    a, b, c = (random_unitary(rng, 2) for _ in range(3))
    assert approximation_error(a, b) >= 0
    assert abs(approximation_error(a, b) - approximation_error(b, a)) < 1e-12
    assert approximation_error(a, c) <= approximation_error(a, b) + approximation_error(b, c) + 1e-12
    assert approximation_error(a, a) < 1e-12
