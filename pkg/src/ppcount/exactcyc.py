"""Exact arithmetic in Z[zeta_p].

A :class:`CycInt` stores the coefficients of ``a_0 + a_1 z + ... +
a_{p-2} z^{p-2}``; powers ``z^{p-1}`` are rewritten as ``-(1 + z + ... +
z^{p-2})``, so the representation is canonical and equality is
coefficient-wise.  For ``p == 2`` the ring is just Z (``z == -1``).
"""

from __future__ import annotations

import cmath
import math

from .gf import is_prime


class MixedOrder(ValueError):
    """Operands live in cyclotomic rings of different order."""


class NotRational(ValueError):
    """Value has a nonzero irrational component."""


class CycInt:
    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs=()):
        if not is_prime(p):
            raise ValueError(f"root order must be prime, got {p}")
        c = [int(a) for a in coeffs]
        if len(c) > p - 1:
            c = _reduce_full(c, p)
        c += [0] * (p - 1 - len(c))
        self.p = p
        self.coeffs = tuple(c)

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_int(cls, p: int, n: int) -> CycInt:
        return cls(p, (n,))

    @classmethod
    def from_root(cls, p: int, k: int) -> CycInt:
        """zeta_p**k in canonical form."""
        if not is_prime(p):
            raise ValueError(f"root order must be prime, got {p}")
        k %= p
        if k == p - 1:
            return cls(p, (-1,) * (p - 1))
        c = [0] * (p - 1)
        c[k] = 1
        return cls(p, c)

    @classmethod
    def from_counts(cls, p: int, counts) -> CycInt:
        """``sum(counts[k] * zeta**k)`` for a length-p count vector."""
        top = counts[p - 1]
        return cls(p, [counts[i] - top for i in range(p - 1)])

    # -- arithmetic ------------------------------------------------------------

    def _coerce(self, other) -> CycInt:
        if isinstance(other, CycInt):
            if other.p != self.p:
                raise MixedOrder(f"cannot combine Z[zeta_{self.p}] with Z[zeta_{other.p}]")
            return other
        if isinstance(other, int):
            return CycInt.from_int(self.p, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycInt(self.p, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.p, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycInt(self.p, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CycInt(self.p, [a * other for a in self.coeffs])
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.p
        full = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        full[(i + j) % p] += a * b
        top = full[p - 1]
        return CycInt(p, [full[i] - top for i in range(p - 1)])

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not supported")
        result = CycInt.from_int(self.p, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conj(self) -> CycInt:
        """Complex conjugate, the automorphism zeta -> zeta**-1."""
        p = self.p
        full = [0] * p
        for i, a in enumerate(self.coeffs):
            full[(-i) % p] += a
        top = full[p - 1]
        return CycInt(p, [full[i] - top for i in range(p - 1)])

    def galois(self, j: int) -> CycInt:
        """The automorphism zeta -> zeta**j, j prime to p."""
        p = self.p
        if j % p == 0:
            raise ValueError("exponent must be prime to p")
        full = [0] * p
        for i, a in enumerate(self.coeffs):
            full[(i * j) % p] += a
        top = full[p - 1]
        return CycInt(p, [full[i] - top for i in range(p - 1)])

    def abs2(self) -> CycInt:
        return self * self.conj()

    # -- predicates and conversions ---------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_integer(self) -> int:
        if not self.is_rational():
            raise NotRational(f"{self!r} is not a rational integer")
        return self.coeffs[0]

    def __complex__(self) -> complex:
        z = cmath.exp(2j * math.pi / self.p)
        acc = 0j
        for a in reversed(self.coeffs):
            acc = acc * z + a
        return acc

    def to_complex(self) -> complex:
        return complex(self)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.is_rational() and self.coeffs[0] == other
        if isinstance(other, CycInt):
            return self.p == other.p and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.p, self.coeffs))

    def __repr__(self) -> str:
        return f"CycInt({self.p}, {list(self.coeffs)})"

    def __str__(self) -> str:
        terms = []
        for i, a in enumerate(self.coeffs):
            if a:
                terms.append(str(a) if i == 0 else f"{a}*z^{i}")
        return " + ".join(terms) or "0"


def _reduce_full(c: list[int], p: int) -> list[int]:
    full = [0] * p
    for i, a in enumerate(c):
        full[i % p] += a
    top = full[p - 1]
    return [full[i] - top for i in range(p - 1)]


def cyc_add(x: CycInt, y: CycInt) -> CycInt:
    return x + y


def cyc_mul(x: CycInt, y: CycInt) -> CycInt:
    return x * y


def cyc_from_root(p: int, k: int) -> CycInt:
    return CycInt.from_root(p, k)


def cyc_to_complex(x: CycInt) -> complex:
    return complex(x)


def cyc_as_integer(x: CycInt) -> int:
    return x.as_integer()
