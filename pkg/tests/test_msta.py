import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from msta_qc.algebra import Multivector, isigma, reversion, scalar_part, sigma
from msta_qc.msta import (
    SpinorGA,
    basis_spinor,
    bell_states,
    complex_structure,
    correlator,
    decode,
    density_mixed,
    density_pure,
    encode,
    format_amplitudes,
    normalized,
    parse_amplitudes,
    singlet,
    state_norm2,
)

R2 = 1 / math.sqrt(2)


def one(n):
    return Multivector.scalar(n)


def random_state(rng, n):
    v = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return v / np.linalg.norm(v)


def test_correlator_examples():
    assert correlator(1) == one(1)
    e2 = (one(2) - isigma(3, 1, 2) * isigma(3, 2, 2)) * 0.5
    assert correlator(2).allclose(e2)
    e3 = correlator(3)
    assert (e3 * e3).allclose(e3)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_correlator_locks_complex_structures(n):
    e = correlator(n)
    for b in range(2, n + 1):
        assert (e * isigma(3, 1, n)).allclose(e * isigma(3, b, n))


def test_complex_structure_examples():
    assert complex_structure(1) == isigma(3)
    j2 = (isigma(3, 1, 2) + isigma(3, 2, 2)) * 0.5
    assert complex_structure(2).allclose(j2)
    assert (complex_structure(2) * complex_structure(2)).allclose(-correlator(2))


def test_encode_two_qubit_basis():
    e = correlator(2)
    i21, i22 = isigma(2, 1, 2), isigma(2, 2, 2)
    expected = [e, -i22 * e, -i21 * e, i21 * i22 * e]
    for idx, mv in enumerate(expected):
        v = np.zeros(4, complex)
        v[idx] = 1
        assert encode(v).mv.allclose(mv)


def test_encode_single_qubit():
    assert encode([1, 0]).mv == one(1)
    # a0 + a^k i s_k with |psi> = (a0 + i a3, -a2 + i a1)
    a = np.array([0.1, -0.3, 0.5, 0.7])
    v = np.array([a[0] + 1j * a[3], -a[2] + 1j * a[1]])
    expected = one(1) * a[0] + isigma(1) * a[1] + isigma(2) * a[2] + isigma(3) * a[3]
    assert encode(v).mv.allclose(expected)


def test_encode_singlet():
    s = encode(np.array([0, 1, -1, 0]) * R2 + 0j)
    i21, i22 = isigma(2, 1, 2), isigma(2, 2, 2)
    expected = (i21 - i22) * (one(2) - isigma(3, 1, 2) * isigma(3, 2, 2)) * 2**-1.5
    assert s.mv.allclose(expected)
    assert singlet().allclose(s)


def test_decode_examples():
    np.testing.assert_allclose(decode(SpinorGA(correlator(2), 2)), [1, 0, 0, 0], atol=1e-15)
    np.testing.assert_allclose(decode(bell_states()[0]), np.array([1, 0, 0, 1]) * R2, atol=1e-12)


def test_decode_rejects_unreduced():
    with pytest.raises(ValueError, match="residual"):
        decode(SpinorGA(one(2), 2))
    with pytest.raises(ValueError):
        decode(SpinorGA(sigma(1), 1))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_round_trip(n):
    rng = np.random.default_rng(10 + n)
    for _ in range(100):
        v = random_state(rng, n)
        s = encode(v)
        assert s.is_reduced()
        assert abs(s.norm2() - 1) < 1e-12
        assert np.abs(decode(s) - v).max() <= 1e-12


@settings(max_examples=40, deadline=None)
@given(
    st.integers(1, 3),
    st.integers(0, 2**32 - 1),
    st.floats(-3, 3, allow_nan=False),
    st.floats(-3, 3, allow_nan=False),
)
def test_complex_linearity(n, seed, a, b):
    rng = np.random.default_rng(seed)
    v, w = rng.normal(size=(2, 2**n)) + 1j * rng.normal(size=(2, 2**n))
    assert encode(1j * v).allclose(SpinorGA(encode(v).mv * complex_structure(n), n), 1e-11)
    lhs = encode(a * v + b * w)
    rhs = encode(v) * a + encode(w) * b
    assert lhs.allclose(rhs, 1e-11)


def test_norm_preservation():
    rng = np.random.default_rng(3)
    for n in (1, 2, 3):
        v = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
        assert abs(encode(v).norm2() - state_norm2(v)) < 1e-12


def test_reduced_basis_identities():
    e = correlator(2)

    def i(k, a):
        return isigma(k, a, 2)

    pairs = [
        (e, -i(3, 1) * i(3, 2) * e),
        (i(1, 2) * e, -i(3, 1) * i(2, 2) * e),
        (i(2, 2) * e, i(3, 1) * i(1, 2) * e),
        (i(3, 2) * e, i(3, 1) * e),
        (i(1, 1) * e, -i(2, 1) * i(3, 2) * e),
        (i(1, 1) * i(1, 2) * e, -i(2, 1) * i(2, 2) * e),
        (i(1, 1) * i(2, 2) * e, i(2, 1) * i(1, 2) * e),
        (i(1, 1) * i(3, 2) * e, i(2, 1) * e),
    ]
    for lhs, rhs in pairs:
        assert lhs.allclose(rhs)


def test_reduced_basis_spans_states():
    e = correlator(2)
    blades = [one(2), isigma(1, 2, 2), isigma(2, 2, 2), isigma(3, 2, 2), isigma(1, 1, 2)]
    blades += [isigma(1, 1, 2) * isigma(k, 2, 2) for k in (1, 2, 3)]
    rows = []
    keys = sorted({k for b in blades for k, _ in b * e})
    for b in blades:
        mv = b * e
        rows.append([mv[k] for k in keys])
    assert np.linalg.matrix_rank(np.array(rows)) == 8


def test_basis_spinor_range():
    with pytest.raises(ValueError):
        basis_spinor(4, 2)
    with pytest.raises(ValueError):
        encode([1, 0, 0])


def test_bell_closed_forms_decode():
    expected = np.array([[1, 0, 0, 1], [0, 1, 1, 0], [1, 0, 0, -1], [0, 1, -1, 0]]) * R2
    for s, v in zip(bell_states(), expected):
        np.testing.assert_allclose(decode(s), v, atol=1e-12)


# densities ------------------------------------------------------------------


def test_density_pure_single_qubit():
    up = density_pure(encode([1, 0]))
    assert up.mv.allclose((one(1) + sigma(3)) * 0.5)
    down = density_pure(encode([0, 1]))
    assert down.mv.allclose((one(1) - sigma(3)) * 0.5)
    plus = density_pure(SpinorGA((one(1) - isigma(2)) * R2, 1))
    assert plus.mv.allclose((one(1) + sigma(1)) * 0.5)
    minus = density_pure(encode(np.array([1, -1]) * R2))
    assert minus.mv.allclose((one(1) - sigma(1)) * 0.5)


def test_density_pure_matches_bloch_vector():
    rng = np.random.default_rng(5)
    for _ in range(20):
        v = random_state(rng, 1)
        rho = np.outer(v, v.conj())
        bloch = [np.trace(rho @ p).real for p in (np.array([[0, 1], [1, 0]]), np.array([[0, -1j], [1j, 0]]), np.diag([1, -1]))]
        d = density_pure(encode(v))
        np.testing.assert_allclose(d.spin_vector(), bloch, atol=1e-12)
        assert abs(scalar_part(d.mv) - 0.5) < 1e-12
        assert abs(np.linalg.norm(d.spin_vector()) - 1) < 1e-12


def test_density_mixed():
    d = density_mixed([(0.5, encode([1, 0])), (0.5, encode([0, 1]))])
    assert d.mv.allclose(one(1) * 0.5)
    assert np.linalg.norm(d.spin_vector()) <= 1e-12
    rng = np.random.default_rng(2)
    states = [encode(random_state(rng, 1)) for _ in range(4)]
    w = rng.random(4)
    w /= w.sum()
    assert np.linalg.norm(density_mixed(zip(w, states)).spin_vector()) <= 1 + 1e-12


def test_density_two_qubit_projector():
    # for a product state the density is the product of single-particle densities
    up = encode([1, 0, 0, 0])
    d = density_pure(up)
    expected = (one(2) + sigma(3, 1, 2)) * (one(2) + sigma(3, 2, 2)) * 0.25
    assert (d.mv * correlator(2)).allclose(expected * correlator(2))
    assert (d.mv * d.mv).allclose(d.mv)


def test_density_errors():
    with pytest.raises(ValueError, match="normalized"):
        density_pure(encode([2, 0]))
    with pytest.raises(ValueError, match="sum"):
        density_mixed([(0.4, encode([1, 0])), (0.4, encode([0, 1]))])
    with pytest.raises(ValueError, match="non-negative"):
        density_mixed([(1.5, encode([1, 0])), (-0.5, encode([0, 1]))])
    with pytest.raises(ValueError):
        density_mixed([(0.5, encode([1, 0])), (0.5, encode([1, 0, 0, 0]))])


def test_reversion_used_for_norm():
    s = encode(np.array([1, 1j]) * R2)
    assert abs(2 ** (s.n - 1) * scalar_part(reversion(s.mv) * s.mv) - 1) < 1e-12


def test_amplitude_io():
    text = "# bell\n0.7071067811865476 0\n0 0\n\n0 0\n0.7071067811865476 0  # tail\n"
    v = parse_amplitudes(text)
    np.testing.assert_allclose(v, np.array([1, 0, 0, 1]) * R2)
    out = format_amplitudes(v, 6)
    assert out.splitlines()[0] == "|00>  0.707107 0"
    np.testing.assert_allclose(parse_amplitudes("\n".join(l.split(None, 1)[1] for l in out.splitlines())), v, atol=1e-6)
    with pytest.raises(ValueError, match="line 1"):
        parse_amplitudes("1 2 3\n0 0")
    with pytest.raises(ValueError):
        parse_amplitudes("1 0\n0 0\n0 0")


def test_normalized():
    np.testing.assert_allclose(normalized([3, 4j]), [0.6, 0.8j])
    with pytest.raises(ValueError):
        normalized([0, 0])
