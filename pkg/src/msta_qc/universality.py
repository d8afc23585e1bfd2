"""Rotors, the SU(2) double cover, and {H, T} universality.

A rotor is a unit even element ``s + b1 i s1 + b2 i s2 + b3 i s3`` of one
particle's Cl(3).  The unitary ``a0 I + i(b . Sigma)`` (complex unit i) acts
on states exactly as left multiplication by ``a0 + b_k i s_k``, which fixes
the SU(2) <-> rotor correspondence used here.

Two exponentials are exposed on purpose:

* ``rotor_exp(AxisAngle(n, phi)) = cos(phi) + sin(phi) i n`` (full angle),
* ``rotor_exp_half(B, theta) = exp(-B theta / 2)`` (half angle; rotates
  vectors by ``theta`` through ``v -> R v R~``).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import oracle
from .algebra import Multivector, bivector, grade, grade_projection, reversion

AXIS_WARN_TOL = 1e-6
DET_TOL = 1e-10
ORTHO_TOL = 1e-10

_BIVECTOR_MASKS = ((0b110, 1.0), (0b101, -1.0), (0b011, 1.0))  # i s1, i s2, i s3


def _unit(v, what: str = "axis") -> np.ndarray:
    v = np.asarray(v, dtype=float).reshape(3)
    norm = float(np.linalg.norm(v))
    if abs(norm - 1.0) <= 1e-12:
        return v
    if abs(norm - 1.0) <= AXIS_WARN_TOL:
        warnings.warn(f"{what} has length {norm:.9f}; normalizing", stacklevel=3)
        return v / norm
    raise ValueError(f"{what} must be a unit vector, got length {norm:.6g}")


@dataclass(frozen=True)
class Rotor:
    """``scalar + b . (i s1, i s2, i s3)`` with scalar^2 + |b|^2 = 1."""

    scalar: float
    b: tuple[float, float, float]

    @classmethod
    def from_multivector(cls, mv: Multivector, tol: float = 1e-12) -> "Rotor":
        if mv.n != 1:
            raise ValueError("rotors live in a single particle space")
        if not mv.is_even(tol):
            raise ValueError("rotor must be an even multivector")
        b = tuple(sign * mv[(mask,)] for mask, sign in _BIVECTOR_MASKS)
        return cls(mv[(0,)], b)

    @classmethod
    def from_array(cls, q) -> "Rotor":
        q = [float(x) for x in q]
        return cls(q[0], (q[1], q[2], q[3]))

    @property
    def mv(self) -> Multivector:
        return Multivector.scalar(1, self.scalar) + bivector(self.b)

    def as_array(self) -> np.ndarray:
        return np.array([self.scalar, *self.b])

    def __mul__(self, other: "Rotor") -> "Rotor":
        return Rotor.from_array(rotor_mul(self.as_array(), other.as_array()))

    def __neg__(self) -> "Rotor":
        return Rotor(-self.scalar, (-self.b[0], -self.b[1], -self.b[2]))

    def reverse(self) -> "Rotor":
        return Rotor(self.scalar, (-self.b[0], -self.b[1], -self.b[2]))

    def norm2(self) -> float:
        return float(self.as_array() @ self.as_array())

    def canonical(self) -> "Rotor":
        """Representative of {R, -R} with non-negative scalar part."""
        return -self if self.scalar < 0 else self

    def distance(self, other: "Rotor") -> float:
        """min(|R - R'|, |R + R'|) on the coefficient 4-vectors."""
        return sign_insensitive_distance(self.as_array(), other.as_array())

    def __str__(self) -> str:
        return str(self.mv)


def rotor_mul(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Product of rotors as 4-arrays, using B_l B_m = -delta_lm - eps_lmk B_k."""
    s1, b1 = p[0], p[1:]
    s2, b2 = q[0], q[1:]
    return np.concatenate(([s1 * s2 - b1 @ b2], s1 * b2 + s2 * b1 - np.cross(b1, b2)))


def sign_insensitive_distance(p: np.ndarray, q: np.ndarray) -> float:
    return float(min(np.linalg.norm(p - q), np.linalg.norm(p + q)))


@dataclass(frozen=True)
class AxisAngle:
    axis: tuple[float, float, float]
    angle: float


@dataclass(frozen=True)
class EulerAngles:
    alpha: float
    beta: float
    gamma: float


@dataclass(frozen=True)
class BoykinData:
    lam: float
    n1: tuple[float, float, float]
    n2: tuple[float, float, float]
    r1: Rotor
    r2: Rotor
    checks: dict


class BoykinConsistencyError(RuntimeError):
    """The computed rotors disagree with the closed forms."""


# exponential and logarithm -----------------------------------------------------


def rotor_exp(a: AxisAngle) -> Rotor:
    """cos(angle) + sin(angle) i n."""
    if a.angle == 0:
        return Rotor(1.0, (0.0, 0.0, 0.0))
    n = _unit(a.axis)
    s = math.sin(a.angle)
    return Rotor(math.cos(a.angle), tuple(float(x) for x in s * n))


def rotor_exp_half(b, theta: float) -> Rotor:
    """exp(-B theta/2) for a unit bivector B given by its (i s1, i s2, i s3) coefficients."""
    if theta == 0:
        return Rotor(1.0, (0.0, 0.0, 0.0))
    n = _unit(b, "bivector")
    s = -math.sin(theta / 2)
    return Rotor(math.cos(theta / 2), tuple(float(x) for x in s * n))


def rotor_log(r: Rotor) -> AxisAngle:
    """Inverse of ``rotor_exp`` with angle in [0, pi]."""
    b = np.array(r.b)
    bn = float(np.linalg.norm(b))
    angle = math.atan2(bn, r.scalar)
    if bn == 0.0:
        if r.scalar < 0:
            warnings.warn("rotor -1 has no preferred axis; using s3", stacklevel=2)
        return AxisAngle((0.0, 0.0, 1.0), angle)
    return AxisAngle(tuple(float(x) for x in b / bn), angle)


def rotate_vector(r: Rotor, v: Multivector) -> Multivector:
    """v -> R v R~ for a grade-1 multivector of one particle."""
    if v.n != 1 or any(grade(k[0]) != 1 for k, _ in v):
        raise ValueError("rotate_vector expects a single-particle vector")
    out = r.mv * v * reversion(r.mv)
    return grade_projection(out, {1})


def vector_components(v: Multivector) -> np.ndarray:
    return np.array([v[(0b001,)], v[(0b010,)], v[(0b100,)]])


# SU(2) <-> rotors ------------------------------------------------------------------


def normalize_phase(m) -> np.ndarray:
    """Divide a 2x2 unitary by the principal square root of its determinant."""
    m = np.asarray(m, dtype=complex)
    if m.shape != (2, 2):
        raise ValueError("expected a 2x2 matrix")
    return m / np.sqrt(np.linalg.det(m))


def su2_to_rotor(m) -> Rotor:
    """Read m = a0 I + i(b . Sigma) as the rotor a0 + b_k i s_k."""
    m = np.asarray(m, dtype=complex)
    if m.shape != (2, 2):
        raise ValueError("expected a 2x2 matrix")
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    if abs(det - 1) > DET_TOL:
        raise ValueError(f"determinant {det:.6g} is not 1; call normalize_phase first")
    a0 = 0.5 * (m[0, 0] + m[1, 1]).real
    b = [0.5 * np.sum(oracle.PAULI[c].conj() * m).imag for c in "XYZ"]
    return Rotor(float(a0), tuple(float(x) for x in b))


def rotor_to_su2(r: Rotor) -> np.ndarray:
    out = r.scalar * oracle.I2
    for bk, c in zip(r.b, "XYZ"):
        out = out + 1j * bk * oracle.PAULI[c]
    return out


# Boykin's construction -------------------------------------------------------------

_SQ2 = math.sqrt(2.0)
COS_LAMBDA_PI = 0.5 * (1 + 1 / _SQ2)
LAMBDA = math.acos(COS_LAMBDA_PI) / math.pi

R1_CLOSED = Rotor(COS_LAMBDA_PI, (-1 / (2 * _SQ2), 0.5 * (1 - 1 / _SQ2), 1 / (2 * _SQ2)))
R2_CLOSED = Rotor(
    COS_LAMBDA_PI, (-0.5 * (0.5 - 1 / _SQ2), 0.5, 0.5 * (0.5 - 1 / _SQ2))
)
_SIN_LAMBDA_PI = math.sqrt(1 - COS_LAMBDA_PI**2)
N1_CLOSED = tuple(x / _SIN_LAMBDA_PI for x in R1_CLOSED.b)
N2_CLOSED = tuple(x / _SIN_LAMBDA_PI for x in R2_CLOSED.b)


def boykin_unitaries() -> tuple[np.ndarray, np.ndarray]:
    """U1 = S3^(-1/4) S1^(1/4) and U2 = H^(-1/2) U1 H^(1/2) from the oracle."""
    h = oracle.gate_matrix("H")
    z = oracle.gate_matrix("Z")
    s3_q = oracle.matrix_power(z, 0.25)
    s3_mq = oracle.matrix_power(z, -0.25)
    s1_q = h @ s3_q @ h
    u1 = s3_mq @ s1_q
    u2 = oracle.matrix_power(h, -0.5) @ u1 @ oracle.matrix_power(h, 0.5)
    return u1, u2


def boykin_construct(tol: float = 1e-10) -> BoykinData:
    u1, u2 = boykin_unitaries()
    r1 = su2_to_rotor(normalize_phase(u1)).canonical()
    r2 = su2_to_rotor(normalize_phase(u2)).canonical()
    log1, log2 = rotor_log(r1), rotor_log(r2)
    lam1, lam2 = log1.angle / math.pi, log2.angle / math.pi
    n1, n2 = np.array(log1.axis), np.array(log2.axis)
    checks = {
        "R1 matches closed form": r1.distance(R1_CLOSED),
        "R2 matches closed form": r2.distance(R2_CLOSED),
        "lambda1 - lambda2": abs(lam1 - lam2),
        "cos(lambda pi) - (2+sqrt2)/4": abs(math.cos(lam1 * math.pi) - (2 + _SQ2) / 4),
        "n1 matches closed form": float(np.abs(n1 - N1_CLOSED).max()),
        "n2 matches closed form": float(np.abs(n2 - N2_CLOSED).max()),
        "n1 . n2": abs(float(n1 @ n2)),
        "n1x + n1z": abs(n1[0] + n1[2]),
        "n2x + n2z": abs(n2[0] + n2[2]),
    }
    failed = {k: v for k, v in checks.items() if not v <= tol}
    if failed:
        raise BoykinConsistencyError(f"Boykin invariants violated: {failed}")
    return BoykinData(
        lam=lam1,
        n1=tuple(float(x) for x in n1),
        n2=tuple(float(x) for x in n2),
        r1=r1,
        r2=r2,
        checks=checks,
    )


# Euler decomposition about two orthogonal axes -------------------------------------


def _frame(n1, n2) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    u, v = _unit(n1, "n1"), _unit(n2, "n2")
    if abs(float(u @ v)) > ORTHO_TOL:
        raise ValueError(f"axes are not orthogonal (n1 . n2 = {float(u @ v):.3g})")
    return u, v, np.cross(u, v)


def euler_recompose(e: EulerAngles, n1, n2) -> Rotor:
    """exp(i n1 alpha) exp(i n2 beta) exp(i n1 gamma)."""
    u, v, _ = _frame(n1, n2)
    a = rotor_exp(AxisAngle(tuple(u), e.alpha))
    b = rotor_exp(AxisAngle(tuple(v), e.beta))
    c = rotor_exp(AxisAngle(tuple(u), e.gamma))
    return a * b * c


def euler_decompose(target: Rotor, n1, n2) -> EulerAngles:
    """Solve cos(phi) = cos b cos(a+g) and the frame components of n sin(phi).

    In the frame (n1, n2, n1 x n2) the bivector part of the product is
    (cos b sin(a+g), sin b cos(g-a), sin b sin(g-a)).  We take cos b >= 0;
    when sin b vanishes g - a is set to 0.
    """
    u, v, w = _frame(n1, n2)
    bvec = np.array(target.b)
    c1, c2, c3 = float(bvec @ u), float(bvec @ v), float(bvec @ w)
    c0 = target.scalar
    total = math.atan2(c1, c0)
    beta = math.atan2(math.hypot(c2, c3), math.hypot(c0, c1))
    diff = math.atan2(c3, c2) if math.hypot(c2, c3) > 0 else 0.0
    return EulerAngles(alpha=0.5 * (total - diff), beta=beta, gamma=0.5 * (total + diff))


# {H, T} word search ------------------------------------------------------------------

DEDUP_TOL = 1e-9


def generator_rotors() -> dict[str, Rotor]:
    return {
        name: su2_to_rotor(normalize_phase(oracle.gate_matrix(name))) for name in ("H", "T")
    }


def word_rotor(word: str) -> Rotor:
    """Rotor of the operator product ``word[0] @ word[1] @ ...``."""
    gens = generator_rotors()
    out = Rotor(1.0, (0.0, 0.0, 0.0))
    for ch in word:
        out = out * gens[ch]
    return out


def _dedup_key(q: np.ndarray) -> tuple[int, ...]:
    for x in q:
        if abs(x) > DEDUP_TOL:
            if x < 0:
                q = -q
            break
    return tuple(int(round(x / DEDUP_TOL)) for x in q)


@dataclass(frozen=True)
class SynthesisResult:
    word: str
    error: float
    explored: int


def synthesize_word(target: Rotor, max_len: int) -> SynthesisResult:
    """Breadth-first search over {H, T} words up to ``max_len`` letters.

    Words are visited by length then lexicographically; a word whose rotor
    (up to sign, rounded to DEDUP_TOL) was already reached is not extended.
    The first word attaining the smallest phase-insensitive error wins.
    """
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    gens = {k: r.as_array() for k, r in generator_rotors().items()}
    goal = target.as_array()
    seen = {_dedup_key(np.array([1.0, 0.0, 0.0, 0.0]))}
    frontier = [("", np.array([1.0, 0.0, 0.0, 0.0]))]
    best_word, best_err = None, math.inf
    explored = 0
    for _ in range(max_len):
        nxt = []
        for word, q in frontier:
            for letter in ("H", "T"):
                r = rotor_mul(q, gens[letter])
                key = _dedup_key(r)
                if key in seen:
                    continue
                seen.add(key)
                w = word + letter
                explored += 1
                err = sign_insensitive_distance(r, goal)
                if err < best_err:
                    best_word, best_err = w, err
                nxt.append((w, r))
        frontier = nxt
    assert best_word is not None
    return SynthesisResult(best_word, best_err, explored)


def word_error(word: str, target: Rotor) -> float:
    """phase_insensitive_error of the word's matrix against the target's matrix."""
    return oracle.phase_insensitive_error(rotor_to_su2(word_rotor(word)), rotor_to_su2(target))
