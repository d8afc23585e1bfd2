"""Real geometric algebra of n commuting copies of Cl(3).

A basis element of one particle space is a 3-bit mask over (sigma1, sigma2,
sigma3); bit k set means sigma_{k+1} is a factor, factors kept in ascending
order.  A basis element of the n-particle algebra is a tuple of n masks.
Vectors from different particle spaces commute, so products factorize per
particle and only the single-particle reordering sign matters.

Multivectors are sparse maps ``tuple[int, ...] -> float``.
"""

from __future__ import annotations

import math
from functools import lru_cache
from numbers import Real
from types import MappingProxyType
from typing import Iterable, Mapping

PRUNE_TOL = 1e-14

BladeIndex = int
MultiBlade = tuple[int, ...]

SCALAR = 0b000
PSEUDOSCALAR = 0b111


def grade(mask: BladeIndex) -> int:
    return bin(mask).count("1")


def _reorder_sign(a: int, b: int) -> int:
    # count pairs (x in a, y in b) with x > y: each costs one transposition
    swaps = 0
    a >>= 1
    while a:
        swaps += grade(a & b)
        a >>= 1
    return -1 if swaps & 1 else 1


_SIGN_TABLE = tuple(tuple(_reorder_sign(a, b) for b in range(8)) for a in range(8))


def blade_product(a: BladeIndex, b: BladeIndex) -> tuple[BladeIndex, int]:
    """Product of two single-particle basis blades as ``(mask, sign)``."""
    if not (0 <= a <= 7 and 0 <= b <= 7):
        raise ValueError(f"blade masks must lie in 0..7, got {a}, {b}")
    return a ^ b, _SIGN_TABLE[a][b]


@lru_cache(maxsize=None)
def multiblade_product(a: MultiBlade, b: MultiBlade) -> tuple[MultiBlade, int]:
    sign = 1
    out = []
    for x, y in zip(a, b):
        sign *= _SIGN_TABLE[x][y]
        out.append(x ^ y)
    return tuple(out), sign


def _reversion_sign(blade: MultiBlade) -> int:
    sign = 1
    for mask in blade:
        g = grade(mask)
        if (g * (g - 1) // 2) & 1:
            sign = -sign
    return sign


class Multivector:
    """Immutable sparse element of [Cl(3)]^n.

    ``n`` is the particle count; ``terms`` maps multiblades to non-negligible
    real coefficients.  ``*`` is the geometric product (or scaling by a real).
    """

    __slots__ = ("n", "_terms")
    # let numpy scalars defer to our reflected operators
    __array_ufunc__ = None

    def __init__(self, n: int, terms: Mapping[MultiBlade, float] | None = None):
        if n < 1:
            raise ValueError("particle count must be positive")
        clean: dict[MultiBlade, float] = {}
        for blade, coeff in (terms or {}).items():
            blade = tuple(blade)
            if len(blade) != n or any(not 0 <= m <= 7 for m in blade):
                raise ValueError(f"invalid multiblade {blade!r} for n={n}")
            if abs(coeff) >= PRUNE_TOL:
                clean[blade] = float(coeff)
        self.n = n
        self._terms = clean

    @classmethod
    def _raw(cls, n: int, terms: dict[MultiBlade, float]) -> "Multivector":
        obj = cls.__new__(cls)
        obj.n = n
        obj._terms = {k: v for k, v in terms.items() if abs(v) >= PRUNE_TOL}
        return obj

    # construction helpers

    @classmethod
    def scalar(cls, n: int, value: float = 1.0) -> "Multivector":
        return cls(n, {(SCALAR,) * n: value})

    @classmethod
    def blade(cls, n: int, particle: int, mask: BladeIndex, coeff: float = 1.0) -> "Multivector":
        """Single-particle basis blade living in ``particle`` (1-based)."""
        if not 1 <= particle <= n:
            raise ValueError(f"particle index {particle} out of range 1..{n}")
        key = [SCALAR] * n
        key[particle - 1] = mask
        return cls(n, {tuple(key): coeff})

    @property
    def terms(self) -> Mapping[MultiBlade, float]:
        return MappingProxyType(self._terms)

    def __getitem__(self, blade: MultiBlade) -> float:
        return self._terms.get(tuple(blade), 0.0)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    # arithmetic

    def _check(self, other: "Multivector") -> None:
        if other.n != self.n:
            raise ValueError(f"particle count mismatch: {self.n} vs {other.n}")

    def __add__(self, other):
        if isinstance(other, Real):
            other = Multivector.scalar(self.n, float(other))
        if not isinstance(other, Multivector):
            return NotImplemented
        self._check(other)
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0.0) + v
        return Multivector._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self) -> "Multivector":
        return Multivector._raw(self.n, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, Real):
            other = Multivector.scalar(self.n, float(other))
        if not isinstance(other, Multivector):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Real):
            c = float(other)
            return Multivector._raw(self.n, {k: c * v for k, v in self._terms.items()})
        if not isinstance(other, Multivector):
            return NotImplemented
        return geometric_product(self, other)

    def __rmul__(self, other):
        if isinstance(other, Real):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Real):
            return self * (1.0 / float(other))
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    __hash__ = None  # type: ignore[assignment]

    # inspection

    def max_abs_diff(self, other: "Multivector") -> float:
        self._check(other)
        keys = self._terms.keys() | other._terms.keys()
        return max((abs(self[k] - other[k]) for k in keys), default=0.0)

    def allclose(self, other: "Multivector", tol: float = 1e-12) -> bool:
        return self.max_abs_diff(other) <= tol

    def norm2(self) -> float:
        """Euclidean norm squared of the coefficient vector (= <~x x>_0)."""
        return sum(v * v for v in self._terms.values())

    def reverse(self) -> "Multivector":
        return reversion(self)

    def scalar_part(self) -> float:
        return scalar_part(self)

    def is_even(self, tol: float = 0.0) -> bool:
        return all(abs(v) <= tol or all(grade(m) % 2 == 0 for m in k) for k, v in self._terms.items())

    def __repr__(self) -> str:
        return f"Multivector({render(self)!r}, n={self.n})"

    def __str__(self) -> str:
        return render(self)


def geometric_product(x: Multivector, y: Multivector) -> Multivector:
    if x.n != y.n:
        raise ValueError(f"particle count mismatch: {x.n} vs {y.n}")
    out: dict[MultiBlade, float] = {}
    get = out.get
    for ka, va in x._terms.items():
        for kb, vb in y._terms.items():
            k, s = multiblade_product(ka, kb)
            out[k] = get(k, 0.0) + s * va * vb
    return Multivector._raw(x.n, out)


def reversion(x: Multivector) -> Multivector:
    return Multivector._raw(x.n, {k: _reversion_sign(k) * v for k, v in x._terms.items()})


def scalar_part(x: Multivector) -> float:
    return x[(SCALAR,) * x.n]


def grade_projection(x: Multivector, grades: Iterable[int | tuple[int, ...]]) -> Multivector:
    """Keep the blades whose grade is selected.

    An integer selector matches the total grade of a multiblade; a tuple
    selector matches the per-particle grade tuple exactly.
    """
    totals: set[int] = set()
    exact: set[tuple[int, ...]] = set()
    for g in grades:
        if isinstance(g, tuple):
            if len(g) != x.n:
                raise ValueError(f"grade selector {g} has wrong length for n={x.n}")
            exact.add(g)
        else:
            totals.add(int(g))
    kept = {}
    for k, v in x._terms.items():
        per = tuple(grade(m) for m in k)
        if per in exact or sum(per) in totals:
            kept[k] = v
    return Multivector._raw(x.n, kept)


def even_part(x: Multivector) -> Multivector:
    return Multivector._raw(
        x.n, {k: v for k, v in x._terms.items() if all(grade(m) % 2 == 0 for m in k)}
    )


def commutator(x: Multivector, y: Multivector) -> Multivector:
    return x * y - y * x


# named elements ------------------------------------------------------------

_VECTOR_MASK = {1: 0b001, 2: 0b010, 3: 0b100}


def sigma(k: int, particle: int = 1, n: int = 1) -> Multivector:
    """Basis vector sigma_k of the given particle space."""
    if k not in _VECTOR_MASK:
        raise ValueError(f"vector index must be 1, 2 or 3, got {k}")
    return Multivector.blade(n, particle, _VECTOR_MASK[k])


def pseudoscalar(particle: int = 1, n: int = 1) -> Multivector:
    return Multivector.blade(n, particle, PSEUDOSCALAR)


def isigma(k: int, particle: int = 1, n: int = 1) -> Multivector:
    """The bivector i*sigma_k of the given particle space."""
    return pseudoscalar(particle, n) * sigma(k, particle, n)


def vector(components: Iterable[float], particle: int = 1, n: int = 1) -> Multivector:
    c = list(components)
    if len(c) != 3:
        raise ValueError("a vector needs three components")
    return sum((ck * sigma(k + 1, particle, n) for k, ck in enumerate(c)), Multivector(n))


def bivector(components: Iterable[float], particle: int = 1, n: int = 1) -> Multivector:
    """b1*i sigma1 + b2*i sigma2 + b3*i sigma3."""
    c = list(components)
    if len(c) != 3:
        raise ValueError("a bivector needs three components")
    return sum((ck * isigma(k + 1, particle, n) for k, ck in enumerate(c)), Multivector(n))


# rendering -----------------------------------------------------------------

# mask -> (factor name, sign relating the blade to that name)
_FACTOR = {
    0b000: ("", 1),
    0b001: ("s1", 1),
    0b010: ("s2", 1),
    0b100: ("s3", 1),
    0b011: ("is3", 1),   # s1 s2 = i s3
    0b110: ("is1", 1),   # s2 s3 = i s1
    0b101: ("is2", -1),  # s1 s3 = -i s2
    0b111: ("i", 1),
}


_DISPLAY_RANK = {0b000: 0, 0b001: 1, 0b010: 2, 0b100: 3, 0b110: 4, 0b101: 5, 0b011: 6, 0b111: 7}


def _render_order(key: MultiBlade):
    return sum(grade(m) for m in key), [(a, _DISPLAY_RANK[m]) for a, m in enumerate(key) if m]


def render(x: Multivector, precision: int = 12) -> str:
    """Human-readable form, e.g. ``0.5 - 0.5*is3^1*is3^2``.

    Factors are ``s<k>^<a>`` (vector), ``is<k>^<a>`` (bivector i*sigma_k) and
    ``i^<a>`` (pseudoscalar) for particle ``a``; the scalar blade has no
    factor.  Terms are ordered by total grade, then by particle.
    """
    if not x._terms:
        return "0"
    parts: list[tuple[float, str]] = []
    for key in sorted(x._terms, key=_render_order):
        coeff = x._terms[key]
        names = []
        for a, mask in enumerate(key, start=1):
            name, s = _FACTOR[mask]
            coeff *= s
            if name:
                names.append(f"{name}^{a}")
        parts.append((coeff, "*".join(names)))
    out = []
    for idx, (coeff, names) in enumerate(parts):
        mag = abs(coeff)
        body = f"{mag:.{precision}g}"
        if names:
            body = names if math.isclose(mag, 1.0, rel_tol=0, abs_tol=10.0 ** -precision) else f"{body}*{names}"
        if idx == 0:
            out.append(("-" if coeff < 0 else "") + body)
        else:
            out.append((" - " if coeff < 0 else " + ") + body)
    return "".join(out)
