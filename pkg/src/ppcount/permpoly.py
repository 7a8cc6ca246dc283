"""Permutation polynomials over GF(q).

``f_sigma(x) = sum_c sigma(c) * (1 - (x - c)^(q-1))`` is the interpolating
polynomial of a permutation.  For q > 2 its x^(q-2) coefficient is
``-sum_c c * sigma(c)``, so ``deg f_sigma < q - 2`` exactly when that sum
vanishes.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

from .gf import FiniteField


class SizeMismatch(ValueError):
    pass


class FieldTooSmall(ValueError):
    pass


@dataclass(frozen=True)
class Permutation:
    """A bijection on ``0..q-1``; ``images[c]`` is sigma(c)."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(v) for v in self.images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"{list(images)} is not a permutation of 0..{len(images) - 1}")
        object.__setattr__(self, "images", images)

    def __len__(self) -> int:
        return len(self.images)

    def __call__(self, c: int) -> int:
        return self.images[c]

    def __str__(self) -> str:
        return ",".join(map(str, self.images))

    @classmethod
    def parse(cls, text: str) -> Permutation:
        return cls(tuple(int(v) for v in text.split(",")))

    @classmethod
    def identity(cls, q: int) -> Permutation:
        return cls(tuple(range(q)))


def all_permutations(q: int):
    """Every permutation of ``0..q-1`` in lexicographic order."""
    for images in itertools.permutations(range(q)):
        yield Permutation(images)


def random_permutation(q: int, rng) -> Permutation:
    return Permutation(tuple(int(v) for v in rng.permutation(q)))


@dataclass(frozen=True)
class PolyFq:
    """Polynomial over ``field``, constant term first, no trailing zeros."""

    field: FiniteField
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __call__(self, x: int) -> int:
        return eval_poly(self, x)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c:
                mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
                terms.append(str(c) if not mono else (mono if c == 1 else f"[{c}]{mono}"))
        return " + ".join(terms)


def eval_poly(poly: PolyFq, x: int) -> int:
    F = poly.field
    acc = 0
    for c in reversed(poly.coeffs):
        acc = F.add(F.mul(acc, x), c)
    return acc


def _binom_mod_p(n: int, k: int, p: int) -> int:
    # Lucas' theorem
    out = 1
    while n or k:
        ni, ki = n % p, k % p
        if ki > ni:
            return 0
        out = out * math.comb(ni, ki) % p
        n //= p
        k //= p
    return out


@lru_cache(maxsize=16)
def lagrange_basis(field: FiniteField) -> tuple[tuple[int, ...], ...]:
    """Coefficients of ``1 - (x - c)^(q-1)`` for every c, constant term first."""
    F, q = field, field.q
    binoms = [F.from_int(_binom_mod_p(q - 1, k, F.p)) for k in range(q)]
    basis = []
    for c in F.elements:
        mc = F.neg(c)
        row = [F.mul(binoms[k], F.pow(mc, q - 1 - k)) for k in range(q)]
        row = [F.neg(v) for v in row]
        row[0] = F.add(row[0], 1)
        basis.append(tuple(row))
    return tuple(basis)


def interpolate(field: FiniteField, sigma: Permutation) -> PolyFq:
    q = field.q
    if len(sigma) != q:
        raise SizeMismatch(f"permutation of {len(sigma)} points for a field of {q}")
    basis = lagrange_basis(field)
    coeffs = [0] * q
    add, mul = field.add, field.mul
    for c, s in enumerate(sigma.images):
        if s:
            row = basis[c]
            for k in range(q):
                coeffs[k] = add(coeffs[k], mul(s, row[k]))
    return PolyFq(field, tuple(coeffs))


def _weighted_sum(field: FiniteField, sigma: Permutation) -> int:
    if field.q == 2:
        raise FieldTooSmall("the x^(q-2) criterion needs q > 2")
    if len(sigma) != field.q:
        raise SizeMismatch(f"permutation of {len(sigma)} points for a field of {field.q}")
    return field.sum(field.mul(c, s) for c, s in enumerate(sigma.images))


def coeff_x_qm2(field: FiniteField, sigma: Permutation) -> int:
    """The x^(q-2) coefficient of f_sigma, i.e. ``-sum_c c * sigma(c)``."""
    return field.neg(_weighted_sum(field, sigma))


def is_low_degree(field: FiniteField, sigma: Permutation) -> bool:
    return _weighted_sum(field, sigma) == 0
