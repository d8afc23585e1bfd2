"""Quantum gates acting on multivector states.

Every gate is stored as a complex-weighted sum of Pauli words.  A word with
m non-identity letters k_1..k_m at qubits a_1..a_m acts on a reduced spinor
as

    psi -> (-1)^m (i s_{k_1}^{a_1} ... i s_{k_m}^{a_m}) psi J^m

and multiplying by the complex unit adds one more right factor of J.  With
J^2 = -E and psi E = psi this covers the one- and two-qubit Pauli rules and
extends them to any register size.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import oracle
from .algebra import Multivector, isigma, sigma
from .msta import SpinorGA, complex_structure, correlator

COEFF_TOL = 1e-14
_LETTER_INDEX = {"X": 1, "Y": 2, "Z": 3}


def _check_word(word: str) -> str:
    word = word.upper()
    if not word or any(c not in "IXYZ" for c in word):
        raise ValueError(f"bad Pauli word {word!r}")
    return word


@dataclass(frozen=True)
class PauliWordSum:
    """sum_w c_w * w over Pauli words of a fixed length n."""

    n: int
    terms: tuple[tuple[str, complex], ...]

    def __post_init__(self):
        for word, _ in self.terms:
            if len(_check_word(word)) != self.n:
                raise ValueError(f"word {word!r} does not have length {self.n}")

    @classmethod
    def from_dict(cls, n: int, coeffs: dict[str, complex]) -> "PauliWordSum":
        merged: dict[str, complex] = {}
        for w, c in coeffs.items():
            w = _check_word(w)
            merged[w] = merged.get(w, 0) + complex(c)
        return cls(n, tuple((w, c) for w, c in sorted(merged.items()) if abs(c) >= COEFF_TOL))

    def embed(self, targets: tuple[int, ...], n: int) -> "PauliWordSum":
        """Pad every word with identities so that letter j lands on ``targets[j]``."""
        if len(targets) != self.n:
            raise ValueError(f"{self.n}-qubit gate needs {self.n} targets, got {targets}")
        if len(set(targets)) != len(targets):
            raise ValueError(f"repeated target qubit in {targets}")
        if any(not 1 <= t <= n for t in targets):
            raise ValueError(f"target qubits {targets} out of range 1..{n}")
        out = []
        for word, c in self.terms:
            letters = ["I"] * n
            for t, ch in zip(targets, word):
                letters[t - 1] = ch
            out.append(("".join(letters), c))
        return PauliWordSum(n, tuple(out))

    def dagger(self) -> "PauliWordSum":
        return PauliWordSum(self.n, tuple((w, c.conjugate()) for w, c in self.terms))

    def matrix(self) -> np.ndarray:
        dim = 2**self.n
        out = np.zeros((dim, dim), dtype=complex)
        for word, c in self.terms:
            out += c * oracle.pauli_word_matrix(word)
        return out


@lru_cache(maxsize=None)
def _word_left_factor(word: str) -> Multivector:
    """(-1)^m times the product of the i s_k^a for the non-identity letters."""
    n = len(word)
    left = Multivector.scalar(n)
    for a, ch in enumerate(word, start=1):
        if ch != "I":
            left = left * (-isigma(_LETTER_INDEX[ch], a, n))
    return left


def _weight(word: str) -> int:
    return sum(ch != "I" for ch in word)


def _j_power(mv: Multivector, power: int, n: int) -> Multivector:
    # valid on reduced spinors: J^2 = -E and psi E = psi
    sign = -1.0 if (power // 2) % 2 else 1.0
    if power % 2:
        mv = mv * complex_structure(n)
    return mv * sign


def apply_pauli_word(word: str, s: SpinorGA) -> SpinorGA:
    word = _check_word(word)
    if len(word) != s.n:
        raise ValueError(f"word {word!r} has arity {len(word)}, state has {s.n} qubits")
    return SpinorGA(_j_power(_word_left_factor(word) * s.mv, _weight(word), s.n), s.n)


def apply_i_times(word: str, s: SpinorGA) -> SpinorGA:
    """The action of (complex unit) x word."""
    out = apply_pauli_word(word, s)
    return SpinorGA(out.mv * complex_structure(s.n), s.n)


def apply_word_sum(action: PauliWordSum, s: SpinorGA) -> SpinorGA:
    """Apply sum_w c_w w with one trailing J multiplication for all odd powers."""
    if action.n != s.n:
        raise ValueError(f"gate arity {action.n} does not match state size {s.n}")
    n = s.n
    buckets = [Multivector(n), Multivector(n)]
    for word, c in action.terms:
        base = _word_left_factor(word) * s.mv
        m = _weight(word)
        for part, extra in ((c.real, 0), (c.imag, 1)):
            if abs(part) < COEFF_TOL:
                continue
            k = m + extra
            sign = -1.0 if (k // 2) % 2 else 1.0
            buckets[k % 2] = buckets[k % 2] + base * (sign * part)
    return SpinorGA(buckets[0] + buckets[1] * complex_structure(n), n)


@dataclass(frozen=True)
class GateGA:
    """A gate placed on ``targets`` (1-based qubit labels)."""

    action: PauliWordSum
    targets: tuple[int, ...]
    name: str | None = None
    params: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if len(self.targets) != self.action.n:
            raise ValueError(f"gate acts on {self.action.n} qubits, targets {self.targets}")
        if len(set(self.targets)) != len(self.targets):
            raise ValueError(f"repeated target qubit in {self.targets}")
        if any(t < 1 for t in self.targets):
            raise ValueError(f"qubit labels start at 1, got {self.targets}")

    @property
    def arity(self) -> int:
        return self.action.n

    def embedded(self, n: int) -> PauliWordSum:
        return self.action.embed(self.targets, n)

    def apply(self, s: SpinorGA) -> SpinorGA:
        return apply_word_sum(self.embedded(s.n), s)

    __call__ = apply

    def matrix(self, n: int | None = None) -> np.ndarray:
        n = max(self.targets) if n is None else n
        return self.embedded(n).matrix()

    def inverse(self) -> "GateGA":
        name = None if self.name is None else f"{self.name}^-1"
        return GateGA(self.action.dagger(), self.targets, name, dict(self.params))

    def on(self, *targets: int) -> "GateGA":
        return GateGA(self.action, tuple(targets), self.name, dict(self.params))


def translate_unitary(m, targets: tuple[int, ...] | None = None, name: str | None = None) -> GateGA:
    """Pauli expansion c_w = tr(w^dagger m) / 2^n of a 2^n x 2^n matrix."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    n = oracle.num_qubits(m.shape[0])
    coeffs = {}
    for letters in itertools.product("IXYZ", repeat=n):
        word = "".join(letters)
        c = np.sum(oracle.pauli_word_matrix(word).conj() * m) / 2**n
        coeffs[word] = complex(c)
    targets = tuple(range(1, n + 1)) if targets is None else tuple(targets)
    return GateGA(PauliWordSum.from_dict(n, coeffs), targets, name)


# catalog ------------------------------------------------------------------

_R = 1.0 / math.sqrt(2.0)


def _one(coeffs: dict[str, complex], q: int, name: str, **params) -> GateGA:
    return GateGA(PauliWordSum.from_dict(1, coeffs), (q,), name, params)


def _two(coeffs: dict[str, complex], a: int, b: int, name: str) -> GateGA:
    if a == b:
        raise ValueError(f"{name} needs two distinct qubits, got {a} twice")
    return GateGA(PauliWordSum.from_dict(2, coeffs), (a, b), name)


def _phase_gate(phase: complex, q: int, name: str, **params) -> GateGA:
    # diag(1, phase) = (1 + phase)/2 I + (1 - phase)/2 Z
    return _one({"I": (1 + phase) / 2, "Z": (1 - phase) / 2}, q, name, **params)


def not_x(q: int = 1) -> GateGA:
    return _one({"X": 1}, q, "X")


def phase_flip_z(q: int = 1) -> GateGA:
    return _one({"Z": 1}, q, "Z")


def bit_phase_y(q: int = 1) -> GateGA:
    return _one({"Y": 1}, q, "Y")


def hadamard(q: int = 1) -> GateGA:
    return _one({"X": _R, "Z": _R}, q, "H")


def rotation(theta: float, q: int = 1) -> GateGA:
    return _phase_gate(cmath.exp(1j * theta), q, "RTHETA", theta=theta)


def phase_s(q: int = 1) -> GateGA:
    return _phase_gate(1j, q, "S")


def t_gate(q: int = 1) -> GateGA:
    return _phase_gate(cmath.exp(1j * math.pi / 4), q, "T")


def sigma3_power(alpha: float, q: int = 1) -> GateGA:
    g = translate_unitary(oracle.gate_matrix("S3POW", alpha=alpha), (q,), "S3POW")
    return GateGA(g.action, g.targets, g.name, {"alpha": alpha})


def sigma1_power(alpha: float, q: int = 1) -> GateGA:
    h = oracle.gate_matrix("H")
    m = h @ oracle.gate_matrix("S3POW", alpha=alpha) @ h
    g = translate_unitary(m, (q,), "S1POW")
    return GateGA(g.action, g.targets, g.name, {"alpha": alpha})


def cnot(c: int = 1, t: int = 2) -> GateGA:
    return _two({"II": 0.5, "ZI": 0.5, "IX": 0.5, "ZX": -0.5}, c, t, "CNOT")


def cphase(c: int = 1, t: int = 2) -> GateGA:
    return _two({"II": 0.5, "ZI": 0.5, "IZ": 0.5, "ZZ": -0.5}, c, t, "CPHASE")


def swap(a: int = 1, b: int = 2) -> GateGA:
    return _two({"II": 0.5, "XX": 0.5, "YY": 0.5, "ZZ": 0.5}, a, b, "SWAP")


CATALOG = {
    "X": not_x,
    "Y": bit_phase_y,
    "Z": phase_flip_z,
    "H": hadamard,
    "S": phase_s,
    "T": t_gate,
    "RTHETA": rotation,
    "S3POW": sigma3_power,
    "S1POW": sigma1_power,
    "CNOT": cnot,
    "CPHASE": cphase,
    "SWAP": swap,
}

CATALOG_PARAMS = {"RTHETA": ("theta",), "S3POW": ("alpha",), "S1POW": ("alpha",)}
CATALOG_ARITY = {name: (2 if name in ("CNOT", "CPHASE", "SWAP") else 1) for name in CATALOG}


def catalog_gate(name: str, targets: tuple[int, ...], **params: float) -> GateGA:
    key = name.upper()
    if key not in CATALOG:
        raise ValueError(f"no multivector form for gate {name!r}")
    expected = CATALOG_PARAMS.get(key, ())
    if set(params) != set(expected):
        raise ValueError(f"gate {key} takes parameters {expected}, got {sorted(params)}")
    if len(targets) != CATALOG_ARITY[key]:
        raise ValueError(f"gate {key} acts on {CATALOG_ARITY[key]} qubit(s), got {targets}")
    args = [params[p] for p in expected]
    return CATALOG[key](*args, *targets)


# closed forms written directly as multivector products -----------------------


def pauli_sandwich(k: int, s: SpinorGA) -> SpinorGA:
    """One qubit: Sigma_k |psi> as s_k psi s_3."""
    if s.n != 1:
        raise ValueError("sandwich form is for a single qubit")
    return SpinorGA(sigma(k) * s.mv * sigma(3), 1)


def hadamard_sandwich(s: SpinorGA) -> SpinorGA:
    if s.n != 1:
        raise ValueError("sandwich form is for a single qubit")
    axis = (sigma(1) + sigma(3)) * _R
    return SpinorGA(axis * s.mv * sigma(3), 1)


def _two_qubit_parts(s: SpinorGA):
    if s.n != 2:
        raise ValueError("closed form is for two qubits")
    return s.mv, complex_structure(2), correlator(2)


def cnot_closed_form(s: SpinorGA) -> SpinorGA:
    """(psi - i s3^1 psi J - i s1^2 psi J + i s3^1 i s1^2 psi E) / 2."""
    psi, j, e = _two_qubit_parts(s)
    i31, i12 = isigma(3, 1, 2), isigma(1, 2, 2)
    out = psi - i31 * psi * j - i12 * psi * j + i31 * i12 * psi * e
    return SpinorGA(out * 0.5, 2)


def cphase_closed_form(s: SpinorGA) -> SpinorGA:
    """(psi - i s3^1 psi J - i s3^2 psi J + i s3^1 i s3^2 psi E) / 2."""
    psi, j, e = _two_qubit_parts(s)
    i31, i32 = isigma(3, 1, 2), isigma(3, 2, 2)
    out = psi - i31 * psi * j - i32 * psi * j + i31 * i32 * psi * e
    return SpinorGA(out * 0.5, 2)


def swap_closed_form(s: SpinorGA) -> SpinorGA:
    """(psi - sum_k i s_k^1 i s_k^2 psi E) / 2."""
    psi, _, e = _two_qubit_parts(s)
    out = psi
    for k in (1, 2, 3):
        out = out - isigma(k, 1, 2) * isigma(k, 2, 2) * psi * e
    return SpinorGA(out * 0.5, 2)
