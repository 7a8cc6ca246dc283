"""Finite fields GF(p^f) with tabulated arithmetic, absolute trace and
additive characters.

Elements are integers ``0..q-1``: the polynomial ``a_0 + a_1 x + ... +
a_{f-1} x^{f-1}`` (reduced modulo the field's defining polynomial) is stored
as ``a_0 + a_1 p + ... + a_{f-1} p^{f-1}``.  Index 0 is the additive identity
and index 1 the multiplicative identity; indices ``0..p-1`` are the prime
subfield.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

MAX_P = 64
MAX_Q = 2**20
# q x q lookup tables are only materialised up to this size
TABLE_Q = 1024


class FieldError(ValueError):
    """Base class for invalid field specifications."""


class NotPrime(FieldError):
    pass


class ReducibleModulus(FieldError):
    pass


class DegreeMismatch(FieldError):
    pass


class UnsupportedField(FieldError):
    pass


class FieldSpecParseError(FieldError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` in increasing order."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, f)`` with ``q == p**f`` or None if q is not a prime power."""
    if q < 2:
        return None
    fs = prime_factors(q)
    if len(fs) != 1:
        return None
    p = fs[0]
    f = 0
    while q > 1:
        q //= p
        f += 1
    return p, f


def prime_powers(lo: int, hi: int) -> list[int]:
    return [q for q in range(lo, hi + 1) if prime_power(q) is not None]


# -- polynomials over GF(p), coefficient lists low degree first -------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo the monic polynomial ``m``."""
    a = _trim(list(a))
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        c = a[-1]
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _trim(a)
    return a


def _polymulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    return _polymod(prod, m, p)


def _polypowmod(a: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _polymod(a, m, p)
    while e:
        if e & 1:
            result = _polymulmod(result, base, m, p)
        base = _polymulmod(base, base, m, p)
        e >>= 1
    return result


def is_irreducible(modulus: tuple[int, ...], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..f//2."""
    f = len(modulus) - 1
    m = list(modulus)
    for d in range(1, f // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _polymod(m, list(low) + [1], p):
                return False
    return True


def smallest_irreducible(p: int, f: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree f over GF(p),
    comparing coefficient tuples constant term first."""
    if f == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=f):
        if low[0] == 0:
            continue
        cand = low + (1,)
        if is_irreducible(cand, p):
            return cand
    raise AssertionError(f"no irreducible of degree {f} over GF({p})")


@dataclass(frozen=True)
class FieldSpec:
    """Characteristic ``p``, degree ``f`` and defining polynomial.

    ``modulus`` holds the f+1 coefficients constant term first.  Leaving it
    out selects :func:`smallest_irreducible`; for ``f == 1`` it is normalised
    to ``x``.
    """

    p: int
    f: int = 1
    modulus: tuple[int, ...] | None = None

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrime(f"characteristic {self.p} is not prime")
        if self.f < 1:
            raise DegreeMismatch(f"extension degree must be >= 1, got {self.f}")
        if self.p > MAX_P or self.p**self.f > MAX_Q:
            raise UnsupportedField(f"GF({self.p}^{self.f}) is outside p <= {MAX_P}, q <= 2^20")
        if self.f == 1:
            object.__setattr__(self, "modulus", (0, 1))
            return
        if self.modulus is None:
            object.__setattr__(self, "modulus", smallest_irreducible(self.p, self.f))
            return
        mod = tuple(int(c) for c in self.modulus)
        if len(mod) != self.f + 1:
            raise DegreeMismatch(
                f"modulus has {len(mod)} coefficients, expected {self.f + 1}")
        if any(not 0 <= c < self.p for c in mod):
            raise FieldError(f"modulus coefficients must lie in [0, {self.p})")
        if mod[-1] != 1:
            raise FieldError("modulus must be monic")
        if not is_irreducible(mod, self.p):
            raise ReducibleModulus(f"{format_poly(mod)} is reducible over GF({self.p})")
        object.__setattr__(self, "modulus", mod)

    @property
    def q(self) -> int:
        return self.p**self.f

    def __str__(self) -> str:
        if self.f == 1:
            return f"{self.p}^1"
        return f"{self.p}^{self.f}/" + ",".join(str(c) for c in reversed(self.modulus))


def format_poly(coeffs_low_first, var: str = "x") -> str:
    terms = []
    for i in range(len(coeffs_low_first) - 1, -1, -1):
        c = coeffs_low_first[i]
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}{mono}")
    return " + ".join(terms) or "0"


_SPEC_RE = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+))?\s*(?:/\s*([\d,\s]+))?\s*$")


def parse_field_spec(text: str) -> FieldSpec:
    """Parse ``"q"``, ``"p^f"`` or ``"p^f/c_f,...,c_0"``.

    A bare integer is read as the field size and must be a prime power.
    """
    m = _SPEC_RE.match(text)
    if not m:
        raise FieldSpecParseError(f"cannot parse field spec {text!r}")
    base, exp, mod = m.group(1), m.group(2), m.group(3)
    base = int(base)
    if exp is None:
        if mod is not None:
            raise FieldSpecParseError("an explicit modulus needs the p^f form")
        pf = prime_power(base)
        if pf is None:
            raise NotPrime(f"{base} is not a prime power")
        return FieldSpec(*pf)
    f = int(exp)
    if mod is None:
        return FieldSpec(base, f)
    coeffs = [int(c) for c in mod.split(",") if c.strip()]
    return FieldSpec(base, f, tuple(reversed(coeffs)))


@dataclass(frozen=True)
class CharValue:
    """The root of unity zeta_p**k."""

    p: int
    k: int

    def __mul__(self, other: CharValue) -> CharValue:
        if other.p != self.p:
            raise ValueError("characters of different order")
        return CharValue(self.p, (self.k + other.k) % self.p)

    def __complex__(self) -> complex:
        return complex(np.exp(2j * np.pi * self.k / self.p))

    def to_complex(self) -> complex:
        return complex(self)

    def to_cyc(self):
        from .exactcyc import CycInt

        return CycInt.from_root(self.p, self.k)


class FiniteField:
    """Tabulated GF(p^f).  Build through :func:`build_field`."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.p = p = spec.p
        self.f = f = spec.f
        self.q = q = p**f
        self.modulus = spec.modulus

        self.weights = p ** np.arange(f, dtype=np.int64)
        idx = np.arange(q, dtype=np.int64)
        self.digits = (idx[:, None] // self.weights[None, :]) % p
        self.neg_table = (((-self.digits) % p) @ self.weights).astype(np.int64)

        self.generator = self._find_generator()
        self.exp_table, self.log_table = self._log_exp()
        self._exp = self.exp_table.tolist()
        self._log = self.log_table.tolist()
        self._neg = self.neg_table.tolist()
        self._addl = None
        self.trace_table = self._trace()

        self.add_table = self.mul_table = None
        if q <= TABLE_Q:
            add = np.empty((q, q), dtype=np.int64)
            for a in range(q):
                add[a] = ((self.digits[a][None, :] + self.digits) % p) @ self.weights
            logs = self.log_table
            mul = self.exp_table[(logs[:, None] + logs[None, :]) % (q - 1)]
            mul[0, :] = 0
            mul[:, 0] = 0
            self.add_table, self.mul_table = add, mul
        for arr in (self.digits, self.neg_table, self.exp_table, self.log_table,
                    self.trace_table, self.add_table, self.mul_table):
            if arr is not None:
                arr.setflags(write=False)

        self._tr = self.trace_table.tolist()
        self._addl = self.add_table.tolist() if self.add_table is not None else None

    # -- construction helpers ----------------------------------------------

    def _poly(self, x: int) -> list[int]:
        return _trim([int(d) for d in self.digits[x]])

    def _index(self, poly: list[int]) -> int:
        return sum(c * self.p**i for i, c in enumerate(poly))

    def _find_generator(self) -> int:
        q, p, m = self.q, self.p, list(self.modulus)
        if q == 2:
            return 1
        orders = [(q - 1) // r for r in prime_factors(q - 1)]
        for g in range(2, q):
            poly = self._poly(g)
            if all(_polypowmod(poly, e, m, p) != [1] for e in orders):
                return g
        raise AssertionError("multiplicative group has no generator")

    def _log_exp(self):
        q, p, f = self.q, self.p, self.f
        exp = np.zeros(q - 1, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        # multiplication by the generator as an f x f matrix over GF(p)
        m = list(self.modulus)
        g = self._poly(self.generator)
        mat = np.zeros((f, f), dtype=np.int64)
        for j in range(f):
            col = _polymulmod(g, [0] * j + [1], m, p)
            mat[: len(col), j] = col
        v = np.zeros(f, dtype=np.int64)
        v[0] = 1
        for i in range(q - 1):
            x = int(v @ self.weights)
            exp[i] = x
            log[x] = i
            v = (mat @ v) % p
        if sorted(exp.tolist()) != list(range(1, q)):
            raise AssertionError("generator does not span the multiplicative group")
        return exp, log

    def _trace(self) -> np.ndarray:
        # Tr is GF(p)-linear: tabulate it on the basis 1, x, ..., x^{f-1}.
        basis_tr = np.zeros(self.f, dtype=np.int64)
        for j in range(self.f):
            xj = self.p**j
            acc = 0
            for i in range(self.f):
                acc = self.add(acc, self.pow(xj, self.p**i))
            if acc >= self.p:
                raise AssertionError("trace left the prime subfield")
            basis_tr[j] = acc
        return (self.digits @ basis_tr) % self.p

    # -- arithmetic ----------------------------------------------------------

    @property
    def elements(self) -> range:
        return range(self.q)

    def add(self, a: int, b: int) -> int:
        if self._addl is not None:
            return self._addl[a][b]
        return int(((self.digits[a] + self.digits[b]) % self.p) @ self.weights)

    def neg(self, a: int) -> int:
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg[b])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def pow(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            return 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def from_int(self, n: int) -> int:
        """Image of the integer n in the prime subfield."""
        return n % self.p

    def sum(self, values) -> int:
        acc = 0
        for v in values:
            acc = self.add(acc, v)
        return acc

    def trace(self, x: int) -> int:
        return self._tr[x]

    def char(self, x: int) -> CharValue:
        return CharValue(self.p, self._tr[x])

    def __repr__(self) -> str:
        if self.f == 1:
            return f"GF({self.q})"
        return f"GF({self.p}^{self.f}, {format_poly(self.modulus)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteField) and other.spec == self.spec

    def __hash__(self) -> int:
        return hash(self.spec)

    def __reduce__(self):
        return build_field, (self.spec,)

    @cached_property
    def char_exponents(self) -> np.ndarray:
        """``Tr(b*t)`` for all b, t; the exponent table of the character matrix."""
        if self.mul_table is not None:
            out = self.trace_table[self.mul_table]
        else:
            out = np.array([[self._tr[self.mul(b, t)] for t in range(self.q)]
                            for b in range(self.q)], dtype=np.int64)
        out.setflags(write=False)
        return out


@lru_cache(maxsize=64)
def build_field(spec: FieldSpec) -> FiniteField:
    return FiniteField(spec)


def gf(q_or_text, f: int | None = None, modulus=None) -> FiniteField:
    """Shorthand: ``gf(9)``, ``gf("2^3")``, ``gf(2, 3, (1, 1, 0, 1))``."""
    if isinstance(q_or_text, str):
        return build_field(parse_field_spec(q_or_text))
    if f is None:
        pf = prime_power(q_or_text)
        if pf is None:
            raise NotPrime(f"{q_or_text} is not a prime power")
        return build_field(FieldSpec(*pf))
    return build_field(FieldSpec(q_or_text, f, None if modulus is None else tuple(modulus)))


def orthogonality_sum(field: FiniteField, x: int):
    """Sum over a of zeta^{Tr(a x)}, exactly: q when x == 0, else 0."""
    from .exactcyc import CycInt

    counts = [0] * field.p
    for a in field.elements:
        counts[field.trace(field.mul(a, x))] += 1
    return CycInt.from_counts(field.p, counts)
