"""Dense complex-matrix reference simulator.

Basis states are ordered by bitstring with qubit 1 as the most significant
bit, so ``|q1 q2 ... qn>`` has index ``int("q1q2...qn", 2)``.  This module
never touches the geometric algebra side; it is the independent check.
"""

from __future__ import annotations

import math
from functools import reduce

import numpy as np

MAX_QUBITS = 10

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = {"I": I2, "X": X, "Y": Y, "Z": Z}

_SQ2 = 1.0 / math.sqrt(2.0)


def _phase_diag(phi: float) -> np.ndarray:
    return np.diag([1.0, np.exp(1j * phi)]).astype(complex)


def _controlled(block: np.ndarray, controls: int) -> np.ndarray:
    dim = 2 ** (controls + 1)
    out = np.eye(dim, dtype=complex)
    out[dim - 2 :, dim - 2 :] = block
    return out


def deutsch_block(gamma: float) -> np.ndarray:
    c, s = math.cos(math.pi * gamma / 2), math.sin(math.pi * gamma / 2)
    return np.array([[1j * c, s], [s, 1j * c]], dtype=complex)


def barenco_block(phi: float, alpha: float, theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array(
        [
            [np.exp(1j * alpha) * c, -1j * np.exp(1j * (alpha - phi)) * s],
            [-1j * np.exp(1j * (alpha + phi)) * s, np.exp(1j * alpha) * c],
        ],
        dtype=complex,
    )


def gate_matrix(name: str, **params: float) -> np.ndarray:
    """Reference matrix for a named gate.

    Names (case-insensitive): I, X, Y, Z, H, S, T, RTHETA(theta),
    S3POW(alpha), S1POW(alpha), CNOT, CPHASE, SWAP, DEUTSCH(gamma),
    BARENCO(phi, alpha, theta).  Controlled gates use the first qubit(s) as
    controls and the last as target.
    """
    key = name.upper()

    def need(*names):
        missing = [p for p in names if p not in params]
        extra = set(params) - set(names)
        if missing or extra:
            raise ValueError(f"gate {key} takes parameters {names}, got {sorted(params)}")
        return [float(params[p]) for p in names]

    if key in PAULI:
        need()
        return PAULI[key].copy()
    if key == "H":
        need()
        return np.array([[1, 1], [1, -1]], dtype=complex) * _SQ2
    if key == "S":
        need()
        return _phase_diag(math.pi / 2)
    if key == "T":
        need()
        return _phase_diag(math.pi / 4)
    if key == "RTHETA":
        (theta,) = need("theta")
        return _phase_diag(theta)
    if key == "S3POW":
        (alpha,) = need("alpha")
        return _phase_diag(math.pi * alpha)
    if key == "S1POW":
        (alpha,) = need("alpha")
        h = gate_matrix("H")
        return h @ _phase_diag(math.pi * alpha) @ h
    if key == "CNOT":
        need()
        return _controlled(X, 1)
    if key == "CPHASE":
        need()
        return _controlled(Z, 1)
    if key == "SWAP":
        need()
        return np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)
    if key == "DEUTSCH":
        (gamma,) = need("gamma")
        return _controlled(deutsch_block(gamma), 2)
    if key == "BARENCO":
        phi, alpha, theta = need("phi", "alpha", "theta")
        return _controlled(barenco_block(phi, alpha, theta), 1)
    raise ValueError(f"unknown gate {name!r}")


def pauli_word_matrix(word: str) -> np.ndarray:
    try:
        return reduce(np.kron, (PAULI[c] for c in word.upper()))
    except KeyError as exc:
        raise ValueError(f"bad Pauli word {word!r}") from exc


def num_qubits(dim: int) -> int:
    n = dim.bit_length() - 1
    if dim < 2 or 2**n != dim:
        raise ValueError(f"dimension {dim} is not a power of two")
    return n


def basis_state(bits: str) -> np.ndarray:
    v = np.zeros(2 ** len(bits), dtype=complex)
    v[int(bits, 2)] = 1.0
    return v


def apply(m: np.ndarray, v: np.ndarray) -> np.ndarray:
    m = np.asarray(m)
    v = np.asarray(v)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[1] != v.shape[0]:
        raise ValueError(f"dimension mismatch: matrix {m.shape}, vector {v.shape}")
    return m @ v


def compose(*gates: np.ndarray) -> np.ndarray:
    """Operator product in circuit order: ``compose(a, b)`` applies a, then b."""
    if not gates:
        raise ValueError("compose needs at least one matrix")
    dims = {g.shape for g in gates}
    if len(dims) != 1:
        raise ValueError(f"dimension mismatch: {sorted(dims)}")
    return reduce(lambda acc, g: g @ acc, gates[1:], gates[0])


def tensor_embed(gate: np.ndarray, targets: tuple[int, ...] | list[int], n: int) -> np.ndarray:
    """Full 2^n matrix acting as ``gate`` on 1-based ``targets``.

    ``targets[0]`` is the gate's most significant qubit.
    """
    gate = np.asarray(gate, dtype=complex)
    k = len(targets)
    if gate.shape != (2**k, 2**k):
        raise ValueError(f"gate shape {gate.shape} does not match {k} targets")
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"register size must be 1..{MAX_QUBITS}")
    if len(set(targets)) != k or any(not 1 <= t <= n for t in targets):
        raise ValueError(f"invalid targets {targets} for n={n}")
    rest = [q for q in range(1, n + 1) if q not in targets]
    full = np.kron(gate, np.eye(2 ** len(rest), dtype=complex))
    # axes of `full` are ordered (targets..., rest...); permute to 1..n
    order = list(targets) + rest
    perm = [order.index(q) for q in range(1, n + 1)]
    t = full.reshape([2] * (2 * n))
    t = t.transpose(perm + [n + p for p in perm])
    return t.reshape(2**n, 2**n)


def is_unitary(m: np.ndarray, tol: float = 1e-12) -> bool:
    m = np.asarray(m)
    return m.ndim == 2 and m.shape[0] == m.shape[1] and np.allclose(
        m.conj().T @ m, np.eye(m.shape[0]), rtol=0, atol=tol
    )


# matrix powers ------------------------------------------------------------


def _principal_angle(z: complex) -> float:
    a = math.atan2(z.imag, z.real)
    # keep -1 on the +pi side whatever the sign of the rounding residue
    if a <= -math.pi + 1e-12:
        a += 2 * math.pi
    return a


def matrix_power(m: np.ndarray, p: float, tol: float = 1e-10) -> np.ndarray:
    """Principal power of a 2x2 unitary via its spectral projectors.

    Eigenphases are taken in (-pi, pi].
    """
    m = np.asarray(m, dtype=complex)
    if m.shape != (2, 2):
        raise ValueError("matrix_power expects a 2x2 matrix")
    if not is_unitary(m, tol):
        raise ValueError("matrix_power expects a unitary matrix")
    half_tr = 0.5 * (m[0, 0] + m[1, 1])
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    disc = np.sqrt(half_tr * half_tr - det)
    lam1, lam2 = half_tr + disc, half_tr - disc
    if abs(lam1 - lam2) < 1e-9:
        # normal matrix with a double eigenvalue is a multiple of I
        lam = 0.5 * (lam1 + lam2)
        return np.exp(1j * p * _principal_angle(lam)) * abs(lam) ** p * I2
    proj1 = (m - lam2 * I2) / (lam1 - lam2)
    proj2 = I2 - proj1
    f1 = abs(lam1) ** p * np.exp(1j * p * _principal_angle(lam1))
    f2 = abs(lam2) ** p * np.exp(1j * p * _principal_angle(lam2))
    return f1 * proj1 + f2 * proj2


# eigenvalues and the approximation error ------------------------------------


def jacobi_eigenvalues(a: np.ndarray, tol: float = 1e-15, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations."""
    a = np.array(a, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("expected a square matrix")
    scale = max(np.abs(a).max(), 1e-300)
    for _ in range(max_sweeps):
        off = math.sqrt(float(np.sum(np.tril(a, -1) ** 2)))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-18 * (abs(a[p, p]) + abs(a[q, q])) or abs(apq) < 1e-300:
                    a[p, q] = a[q, p] = 0.0
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
    return np.sort(np.diag(a))


def hermitian_eigenvalues(h: np.ndarray) -> np.ndarray:
    """Eigenvalues of a complex Hermitian matrix via its real 2n embedding.

    The embedding [[Re, -Im], [Im, Re]] has every eigenvalue twice.
    """
    h = np.asarray(h, dtype=complex)
    emb = np.block([[h.real, -h.imag], [h.imag, h.real]])
    return jacobi_eigenvalues(emb)[::2]


_JACOBI_MAX_DIM = 8


def spectral_norm(d: np.ndarray) -> float:
    """Largest singular value."""
    d = np.asarray(d, dtype=complex)
    if d.shape[0] > _JACOBI_MAX_DIM:
        return float(np.linalg.norm(d, 2))
    evals = hermitian_eigenvalues(d.conj().T @ d)
    return math.sqrt(max(float(evals[-1]), 0.0))


def approximation_error(u: np.ndarray, u2: np.ndarray) -> float:
    """max over unit |psi> of ||(u - u2)|psi>||."""
    u, u2 = np.asarray(u), np.asarray(u2)
    if u.shape != u2.shape:
        raise ValueError(f"dimension mismatch: {u.shape} vs {u2.shape}")
    return spectral_norm(u - u2)


def phase_insensitive_error(u: np.ndarray, u2: np.ndarray) -> float:
    """min over global phases phi of approximation_error(e^{i phi} u, u2).

    For 2x2 unitaries the optimal phase is arg tr(u^dagger u2); the error is
    then measured on the rephased difference, which avoids the cancellation
    in the equivalent ``sqrt(2 - |tr|)``.  Larger unitaries center the phase
    on the shortest arc covering the eigenphases of u^dagger u2.
    """
    u, u2 = np.asarray(u, dtype=complex), np.asarray(u2, dtype=complex)
    if u.shape != u2.shape:
        raise ValueError(f"dimension mismatch: {u.shape} vs {u2.shape}")
    w = u.conj().T @ u2
    if u.shape == (2, 2):
        t = np.trace(w)
        phase = t / abs(t) if abs(t) > 1e-300 else 1.0
        return approximation_error(phase * u, u2)
    angles = np.sort(np.angle(np.linalg.eigvals(w)))
    gaps = np.diff(np.concatenate([angles, [angles[0] + 2 * np.pi]]))
    j = int(np.argmax(gaps))
    # the covering arc starts right after the largest gap
    start = angles[(j + 1) % len(angles)]
    span = 2 * np.pi - gaps[j]
    mid = start + span / 2
    return approximation_error(np.exp(1j * mid) * u, u2)
