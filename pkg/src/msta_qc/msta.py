"""Qubit states as multivectors in the reduced even subalgebra.

An n-qubit state is an even multivector ``psi`` with ``psi * E_n == psi``
where ``E_n`` is the n-particle correlator.  Right multiplication by the
complex structure ``J_n`` plays the role of the complex unit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .algebra import Multivector, isigma, reversion, scalar_part, sigma

DECODE_TOL = 1e-10
WEIGHT_TOL = 1e-10


@lru_cache(maxsize=None)
def correlator(n: int) -> Multivector:
    """E_n = prod_{b=2..n} (1 - i s3^1 i s3^b) / 2, with E_1 = 1."""
    if n < 1:
        raise ValueError("qubit count must be positive")
    e = Multivector.scalar(n)
    for b in range(2, n + 1):
        e = e * ((Multivector.scalar(n) - isigma(3, 1, n) * isigma(3, b, n)) * 0.5)
    return e


@lru_cache(maxsize=None)
def complex_structure(n: int) -> Multivector:
    """J_n = E_n i s3^1."""
    return correlator(n) * isigma(3, 1, n)


@dataclass(frozen=True)
class SpinorGA:
    mv: Multivector
    n: int

    def __post_init__(self):
        if self.mv.n != self.n:
            raise ValueError(f"multivector has {self.mv.n} particles, expected {self.n}")

    def norm2(self) -> float:
        """2^(n-1) <~psi psi>_0, which is 1 for a normalized state."""
        return 2 ** (self.n - 1) * scalar_part(reversion(self.mv) * self.mv)

    def reduction_residual(self) -> float:
        return (self.mv * correlator(self.n)).max_abs_diff(self.mv)

    def is_reduced(self, tol: float = 1e-12) -> bool:
        return self.mv.is_even(tol) and self.reduction_residual() <= tol

    def allclose(self, other: "SpinorGA", tol: float = 1e-12) -> bool:
        return self.n == other.n and self.mv.allclose(other.mv, tol)

    def __add__(self, other: "SpinorGA") -> "SpinorGA":
        return SpinorGA(self.mv + other.mv, self.n)

    def __mul__(self, c: float) -> "SpinorGA":
        return SpinorGA(self.mv * c, self.n)

    __rmul__ = __mul__

    def __str__(self) -> str:
        return str(self.mv)


def _check_state(v) -> tuple[np.ndarray, int]:
    v = np.asarray(v, dtype=complex).ravel()
    n = len(v).bit_length() - 1
    if len(v) < 2 or 2**n != len(v):
        raise ValueError(f"state length {len(v)} is not a power of two >= 2")
    return v, n


@lru_cache(maxsize=None)
def basis_spinor(index: int, n: int) -> Multivector:
    """Multivector for |b>, b the n-bit string of ``index`` (qubit 1 = MSB).

    Each set bit at qubit a contributes a factor -i s2^a.
    """
    if not 0 <= index < 2**n:
        raise ValueError(f"basis index {index} out of range for n={n}")
    mv = Multivector.scalar(n)
    for a in range(1, n + 1):
        if (index >> (n - a)) & 1:
            mv = mv * (-isigma(2, a, n))
    return mv * correlator(n)


@lru_cache(maxsize=None)
def _basis_pair(index: int, n: int) -> tuple[Multivector, Multivector]:
    b = basis_spinor(index, n)
    return b, b * complex_structure(n)


def encode(v) -> SpinorGA:
    """Map 2^n complex amplitudes to the reduced-even-subalgebra spinor."""
    v, n = _check_state(v)
    terms: dict = {}
    for idx, amp in enumerate(v):
        if amp == 0:
            continue
        re_part, im_part = _basis_pair(idx, n)
        for k, c in re_part:
            terms[k] = terms.get(k, 0.0) + amp.real * c
        for k, c in im_part:
            terms[k] = terms.get(k, 0.0) + amp.imag * c
    return SpinorGA(Multivector(n, terms), n)


def decode(s: SpinorGA, tol: float = DECODE_TOL) -> np.ndarray:
    """Recover amplitudes from the scalar-part pairing with each basis blade.

    Raises ``ValueError`` when ``s`` is not in the reduced space, i.e. when
    re-encoding the recovered amplitudes leaves a residual above ``tol``.
    """
    n = s.n
    mv = s.mv
    amps = np.empty(2**n, dtype=complex)
    for idx in range(2**n):
        re_part, im_part = _basis_pair(idx, n)
        x = _pair(re_part, mv) / _pair(re_part, re_part)
        y = _pair(im_part, mv) / _pair(im_part, im_part)
        amps[idx] = complex(x, y)
    residual = encode(amps).mv.max_abs_diff(mv)
    if residual > tol:
        raise ValueError(
            f"multivector is not an encoded {n}-qubit state (residual {residual:.3e} > {tol:g})"
        )
    return amps


def _pair(a: Multivector, b: Multivector) -> float:
    # <~a b>_0 is the Euclidean dot product of the coefficient vectors
    return sum(c * b[k] for k, c in a)


# named states -------------------------------------------------------------

_INV_2SQRT2 = 2.0 ** -1.5


def bell_states() -> tuple[SpinorGA, SpinorGA, SpinorGA, SpinorGA]:
    """The four Bell states in closed multivector form.

    Ordered as the images of |00>, |01>, |10>, |11> under CNOT(1,2) after H on
    qubit 1.
    """
    one = Multivector.scalar(2)
    i21, i22 = isigma(2, 1, 2), isigma(2, 2, 2)
    proj = one - isigma(3, 1, 2) * isigma(3, 2, 2)
    forms = (
        (one + i21 * i22) * proj * _INV_2SQRT2,
        (i21 + i22) * proj * -_INV_2SQRT2,
        (one - i21 * i22) * proj * _INV_2SQRT2,
        (i21 - i22) * proj * _INV_2SQRT2,
    )
    return tuple(SpinorGA(f, 2) for f in forms)  # type: ignore[return-value]


def singlet() -> SpinorGA:
    return bell_states()[3]


# density operators --------------------------------------------------------


@dataclass(frozen=True)
class DensityGA:
    mv: Multivector

    @property
    def n(self) -> int:
        return self.mv.n

    def spin_vector(self) -> np.ndarray:
        """For one qubit, the vector s in rho = (1 + s)/2."""
        if self.n != 1:
            raise ValueError("spin vector is defined for a single qubit")
        return np.array([2.0 * self.mv[(m,)] for m in (0b001, 0b010, 0b100)])

    def allclose(self, other: "DensityGA", tol: float = 1e-12) -> bool:
        return self.mv.allclose(other.mv, tol)

    def __str__(self) -> str:
        return str(self.mv)


@lru_cache(maxsize=None)
def spin_up_projector(n: int) -> Multivector:
    """E_+ = prod_k (1 + s3^k)/2."""
    out = Multivector.scalar(n)
    for k in range(1, n + 1):
        out = out * ((Multivector.scalar(n) + sigma(3, k, n)) * 0.5)
    return out


def density_pure(s: SpinorGA, tol: float = WEIGHT_TOL) -> DensityGA:
    """rho = (psi E_n) E_+ (psi E_n)~ ; for one qubit this is (1 + psi s3 psi~)/2."""
    norm = s.norm2()
    if abs(norm - 1.0) > tol:
        raise ValueError(f"spinor is not normalized (norm {norm:.12g})")
    psi = s.mv * correlator(s.n)
    return DensityGA(psi * spin_up_projector(s.n) * reversion(psi))


def density_mixed(ensemble: Iterable[tuple[float, SpinorGA]], tol: float = WEIGHT_TOL) -> DensityGA:
    """Weighted sum of pure-state densities; one qubit gives (1 + P)/2."""
    items = list(ensemble)
    if not items:
        raise ValueError("empty ensemble")
    weights = [float(w) for w, _ in items]
    if any(w < 0 for w in weights):
        raise ValueError("ensemble weights must be non-negative")
    if abs(sum(weights) - 1.0) > tol:
        raise ValueError(f"ensemble weights sum to {sum(weights):.12g}, not 1")
    ns = {s.n for _, s in items}
    if len(ns) != 1:
        raise ValueError("ensemble mixes different qubit counts")
    total = Multivector(ns.pop())
    for w, s in items:
        total = total + density_pure(s, tol).mv * w
    return DensityGA(total)


# plain-text amplitude files ------------------------------------------------


def parse_amplitudes(text: str) -> np.ndarray:
    """Read one ``re im`` pair per line (MSB-first basis order).

    Blank lines and ``#`` comments are ignored.
    """
    amps = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2:
            raise ValueError(f"line {lineno}: expected 're im', got {raw!r}")
        try:
            amps.append(complex(float(fields[0]), float(fields[1])))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    v, _ = _check_state(amps)
    return v


def format_amplitudes(v: Sequence[complex], precision: int = 12) -> str:
    v, n = _check_state(v)
    lines = []
    for idx, amp in enumerate(v):
        lines.append(f"|{idx:0{n}b}>  {amp.real:.{precision}g} {amp.imag:.{precision}g}")
    return "\n".join(lines)


def state_norm2(v) -> float:
    v = np.asarray(v, dtype=complex)
    return float(np.vdot(v, v).real)


def normalized(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    nrm = math.sqrt(state_norm2(v))
    if nrm == 0.0:
        raise ValueError("zero vector cannot be normalized")
    return v / nrm
