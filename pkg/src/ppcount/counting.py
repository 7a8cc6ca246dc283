"""Four independent ways of counting N = #{sigma : deg f_sigma < q - 2}, plus
the subset counts n_S behind the exponential-sum argument.

* ``interpolation``: build f_sigma for every permutation and read its degree.
* ``criterion``: test ``sum_c c*sigma(c) == 0`` for every permutation.
* ``inclexcl``: signed sum over subsets S of n_S, each n_S from the closed
  character-sum formula.
* ``permanent``: N = (q-1)! + (q-1)/q * per(M) with M[c, d] = zeta^Tr(c*d).
"""

from __future__ import annotations

import itertools
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

import numpy as np

from .exactcyc import CycInt
from .gf import FiniteField, is_prime
from .permpoly import Permutation, interpolate

METHODS = ("interpolation", "criterion", "inclexcl", "permanent")
LIMITS = {"interpolation": 8, "criterion": 13, "inclexcl": 16, "permanent": 20}
WORKERS_ENV = "PPCOUNT_WORKERS"


class RangeExceeded(ValueError):
    def __init__(self, message: str, limit: int | None = None):
        super().__init__(message)
        self.limit = limit


class NonIntegerResult(ArithmeticError):
    """An exact division or rationality assertion failed; always a bug."""


def resolve_workers(workers: int | None) -> int:
    if workers is None:
        env = os.environ.get(WORKERS_ENV)
        workers = int(env) if env else (os.cpu_count() or 1)
    return max(1, int(workers))


@dataclass(frozen=True)
class SubsetMask:
    """S as a q-bit mask over element indices."""

    q: int
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.q:
            raise ValueError(f"mask {self.mask:#x} has bits outside the low {self.q}")

    @classmethod
    def of(cls, q: int, elements) -> SubsetMask:
        m = 0
        for e in elements:
            m |= 1 << e
        return cls(q, m)

    @classmethod
    def full(cls, q: int) -> SubsetMask:
        return cls(q, (1 << q) - 1)

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    def elements(self) -> list[int]:
        return [c for c in range(self.q) if self.mask >> c & 1]

    def complement(self) -> SubsetMask:
        return SubsetMask(self.q, ((1 << self.q) - 1) ^ self.mask)

    def __iter__(self):
        return iter(self.elements())

    def __len__(self) -> int:
        return self.size


def random_subsets(q: int, count: int, rng) -> list[SubsetMask]:
    return [SubsetMask(q, int(m)) for m in rng.integers(0, 1 << q, size=count)]


@dataclass(frozen=True)
class CountResult:
    q: int
    N: int
    method: str
    elapsed: float
    field: str
    meta: dict = dc_field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not 0 <= self.N <= math.factorial(self.q):
            raise NonIntegerResult(f"N = {self.N} outside [0, {self.q}!]")

    def to_json(self, timing: bool = True) -> dict:
        d = {"q": self.q, "N": str(self.N), "method": self.method}
        if timing:
            d["elapsed_s"] = round(self.elapsed, 6)
        d["field"] = self.field
        return d

    @classmethod
    def from_json(cls, d: dict) -> CountResult:
        return cls(int(d["q"]), int(d["N"]), d["method"], float(d.get("elapsed_s", 0.0)),
                   d["field"])

    CSV_HEADER = ("q", "N", "method", "elapsed_s", "field")

    def to_csv_row(self, timing: bool = True) -> list[str]:
        return [str(self.q), str(self.N), self.method,
                f"{self.elapsed:.6f}" if timing else "", self.field]


def _check_range(method: str, q: int, *, allow_q2: bool = False):
    limit = LIMITS[method]
    if q > limit:
        raise RangeExceeded(f"method {method!r} supports q <= {limit}, got q = {q}", limit)
    if q == 2 and not allow_q2:
        raise RangeExceeded(f"method {method!r} needs q > 2", 3)


def _run_shards(fn, args: list, workers: int) -> list:
    if workers <= 1 or len(args) <= 1:
        return [fn(*a) for a in args]
    with ProcessPoolExecutor(max_workers=min(workers, len(args))) as pool:
        return list(pool.map(fn, *zip(*args)))


# -- exhaustive enumeration -------------------------------------------------------

def _interp_shard(field: FiniteField, first: int) -> int:
    q = field.q
    rest = [v for v in range(q) if v != first]
    n = 0
    for tail in itertools.permutations(rest):
        poly = interpolate(field, Permutation((first,) + tail))
        if poly.degree < q - 2:
            n += 1
    return n


def _criterion_shard(field: FiniteField, first: int) -> int:
    from ._kernels import count_criterion_shard

    return int(count_criterion_shard(field.add_table, field.mul_table, first))


def count_exhaustive(field: FiniteField, via_interpolation: bool = False,
                     workers: int | None = None) -> CountResult:
    """Enumerate all q! permutations, sharded by the image of element 0."""
    q = field.q
    if q == 2:
        via_interpolation = True
    method = "interpolation" if via_interpolation else "criterion"
    _check_range(method, q, allow_q2=True)
    workers = resolve_workers(workers)
    t0 = time.perf_counter()
    shard = _interp_shard if via_interpolation else _criterion_shard
    parts = _run_shards(shard, [(field, v) for v in range(q)], workers)
    return CountResult(q, sum(parts), method, time.perf_counter() - t0, str(field.spec),
                       {"shards": parts})


# -- subset counts n_S ---------------------------------------------------------------

def _as_subset(field: FiniteField, S) -> SubsetMask:
    if isinstance(S, SubsetMask):
        if S.q != field.q:
            raise ValueError(f"subset of a {S.q}-element set used with GF({field.q})")
        return S
    return SubsetMask.of(field.q, S)


def ns_bruteforce(field: FiniteField, S, limit: int = 10**9) -> int:
    """Count f: F_q -> S with sum_c c*f(c) == 0 by enumerating f.

    The domain is split in two halves; every assignment of each half is
    enumerated and the half-sums are matched through their histograms.
    """
    S = _as_subset(field, S)
    q, s = field.q, S.size
    if s**q > limit:
        raise RangeExceeded(f"|S|^q = {s}^{q} exceeds the enumeration limit {limit}", limit)
    if s == 0:
        return 0
    vals = np.array(S.elements(), dtype=np.int64)
    add = field.add_table

    def half_sums(points):
        acc = np.zeros(1, dtype=np.int64)
        for c in points:
            contrib = field.mul_table[c][vals]
            acc = add[acc[:, None], contrib[None, :]].ravel()
        return np.bincount(acc, minlength=q)

    h = q // 2
    lo = half_sums(range(h))
    hi = half_sums(range(h, q))
    return int(sum(int(lo[x]) * int(hi[field.neg(x)]) for x in range(q)))


def _char_counts(field: FiniteField, b: int, elems) -> list[int]:
    counts = [0] * field.p
    tr = field.char_exponents[b]
    for t in elems:
        counts[tr[t]] += 1
    return counts


def character_sum(field: FiniteField, b: int, S) -> CycInt:
    """sum_{t in S} zeta^Tr(b*t), exactly."""
    S = _as_subset(field, S)
    return CycInt.from_counts(field.p, _char_counts(field, b, S.elements()))


def character_product(field: FiniteField, S) -> CycInt:
    """prod_{b in F_q} sum_{t in S} zeta^Tr(b*t)."""
    S = _as_subset(field, S)
    elems = S.elements()
    prod = CycInt.from_int(field.p, 1)
    for b in field.elements:
        prod = prod * CycInt.from_counts(field.p, _char_counts(field, b, elems))
        if prod.is_zero():
            break
    return prod


def ns_formula(field: FiniteField, S) -> int:
    """n_S = |S|^q / q + (q-1)/q * prod_b sum_{t in S} zeta^Tr(b*t), exactly."""
    S = _as_subset(field, S)
    q = field.q
    num = character_product(field, S) * (q - 1) + S.size**q
    if not num.is_rational():
        raise NonIntegerResult(f"n_S numerator {num!r} is not rational for S = {S.elements()}")
    n, r = divmod(num.as_integer(), q)
    if r:
        raise NonIntegerResult(f"n_S numerator not divisible by q for S = {S.elements()}")
    return n


def count_inclusion_exclusion(field: FiniteField) -> CountResult:
    """N = sum_S (-1)^(q-|S|) n_S."""
    q = field.q
    _check_range("inclexcl", q)
    t0 = time.perf_counter()
    total = 0
    for mask in range(1 << q):
        S = SubsetMask(q, mask)
        n = ns_formula(field, S)
        total += -n if (q - S.size) & 1 else n
    return CountResult(q, total, "inclexcl", time.perf_counter() - t0, str(field.spec))


def surjection_identity_check(q: int) -> bool:
    """sum_j (-1)^(q-j) C(q,j) j^q == q * (q-1)!  (signed count of surjections)."""
    if q > 64:
        raise RangeExceeded("surjection identity is checked for q <= 64", 64)
    lhs = sum((-1) ** (q - j) * math.comb(q, j) * j**q for j in range(q + 1))
    return lhs == q * math.factorial(q - 1)


def complement_symmetry_check(field: FiniteField, S) -> bool:
    """For b != 0 the character sum over S is minus the sum over its complement."""
    S = _as_subset(field, S)
    Sc = S.complement()
    return all(character_sum(field, b, S) == -character_sum(field, b, Sc)
               for b in range(1, field.q))


# -- permanents -------------------------------------------------------------------------

def ryser_permanent(entries):
    """Exact permanent of a square matrix over any commutative ring whose
    elements support ``+``, ``-``, ``*`` with Python ints (ints, CycInt, ...).
    """
    n = len(entries)
    if n > 20:
        raise RangeExceeded("Ryser permanent is limited to n <= 20", 20)
    if n == 0:
        return 1
    if any(len(row) != n for row in entries):
        raise ValueError("matrix is not square")
    row_sums = [0] * n
    in_set = [False] * n
    size = 0
    total = 0
    for k in range(1, 1 << n):
        j = (k & -k).bit_length() - 1
        if in_set[j]:
            in_set[j] = False
            size -= 1
            for i in range(n):
                row_sums[i] = row_sums[i] - entries[i][j]
        else:
            in_set[j] = True
            size += 1
            for i in range(n):
                row_sums[i] = row_sums[i] + entries[i][j]
        prod = row_sums[0]
        for i in range(1, n):
            prod = prod * row_sums[i]
        total = total - prod if (n - size) & 1 else total + prod
    return total


def _primes_1_mod(p: int, count: int, start: int = 2**31) -> list[int]:
    out = []
    ell = start - 1
    ell -= (ell - 1) % p
    while len(out) < count:
        if ell > 2 and is_prime(ell):
            out.append(ell)
        ell -= p
    return out


def _root_of_unity(p: int, ell: int) -> int:
    for h in itertools.count(2):
        w = pow(h, (ell - 1) // p, ell)
        if w != 1:
            return w


def _solve_mod(mat: list[list[int]], rhs: list[int], ell: int) -> list[int]:
    n = len(mat)
    a = [row[:] + [v] for row, v in zip(mat, rhs)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] % ell)
        a[col], a[piv] = a[piv], a[col]
        inv = pow(a[col][col], -1, ell)
        a[col] = [x * inv % ell for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                fac = a[r][col]
                a[r] = [(x - fac * y) % ell for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def ryser_permanent_roots(exponents, p: int) -> CycInt:
    """Exact permanent of the matrix ``zeta_p ** exponents[i][j]``.

    Computed in Z[zeta_p] / ell for several primes ell = 1 mod p, where the
    ring splits into p - 1 copies of GF(ell) (one per embedding of zeta);
    coefficients are recovered per prime and lifted by CRT.  Expanded in the
    group ring Z[C_p] every coefficient of the permanent is bounded by
    sum_j C(n,j) j^n, which fixes how many primes are needed.
    """
    from ._kernels import ryser_mod

    exps = np.asarray(exponents, dtype=np.int64) % p
    n = exps.shape[0]
    if n > 20:
        raise RangeExceeded("Ryser permanent is limited to n <= 20", 20)
    bound = 2 * sum(math.comb(n, j) * j**n for j in range(n + 1)) + 1
    primes, modulus = [], 1
    for ell in _primes_1_mod(p, 64):
        primes.append(ell)
        modulus *= ell
        if modulus > 2 * bound:
            break
    d = p - 1
    residues = []
    for ell in primes:
        w = _root_of_unity(p, ell) if p > 2 else ell - 1
        # embedding e sends zeta to w^(e+1)
        powtab = np.array([[pow(w, (e + 1) * k, ell) for k in range(p)] for e in range(d)],
                          dtype=np.int64)
        vals = powtab[:, exps]
        evals = [int(v) for v in ryser_mod(vals, ell)]
        vander = [[pow(w, (e + 1) * i, ell) for i in range(d)] for e in range(d)]
        residues.append(_solve_mod(vander, evals, ell))
    coeffs = []
    for i in range(d):
        x = 0
        for ell, res in zip(primes, residues):
            m_other = modulus // ell
            x += res[i] * m_other * pow(m_other, -1, ell)
        x %= modulus
        if x > modulus // 2:
            x -= modulus
        coeffs.append(x)
    return CycInt(p, coeffs)


def character_matrix(field: FiniteField) -> list[list[CycInt]]:
    """M[c][d] = zeta^Tr(c*d) as CycInt entries."""
    roots = [CycInt.from_root(field.p, k) for k in range(field.p)]
    return [[roots[k] for k in row] for row in field.char_exponents.tolist()]


def permanent_to_count(q: int, per: int) -> int:
    num = q * math.factorial(q - 1) + (q - 1) * per
    n, r = divmod(num, q)
    if r:
        raise NonIntegerResult(f"(q-1)*per(M) + q! = {num} is not divisible by q = {q}")
    return n


def count_via_permanent(field: FiniteField, exact_reference: bool = False) -> CountResult:
    """N = (q-1)! + (q-1)/q * per(M), M[c][d] = zeta^Tr(c*d).

    ``exact_reference`` evaluates the permanent with pure CycInt arithmetic
    instead of the modular fast path.
    """
    q = field.q
    _check_range("permanent", q)
    t0 = time.perf_counter()
    if exact_reference:
        per = ryser_permanent(character_matrix(field))
    else:
        per = ryser_permanent_roots(field.char_exponents, field.p)
    if not per.is_rational():
        raise NonIntegerResult(f"per(M) = {per!r} is not a rational integer")
    per_int = per.as_integer()
    N = permanent_to_count(q, per_int)
    return CountResult(q, N, "permanent", time.perf_counter() - t0, str(field.spec),
                       {"permanent": per_int})


def auto_method(q: int) -> str:
    if q <= 5:
        return "interpolation"
    if q <= 11:
        return "criterion"
    return "permanent"


def count(field: FiniteField, method: str = "auto", workers: int | None = None) -> CountResult:
    if method == "auto":
        method = auto_method(field.q)
    if method == "interpolation":
        return count_exhaustive(field, via_interpolation=True, workers=workers)
    if method == "criterion":
        if field.q == 2:
            raise RangeExceeded("method 'criterion' needs q > 2", 3)
        return count_exhaustive(field, via_interpolation=False, workers=workers)
    if method == "inclexcl":
        return count_inclusion_exclusion(field)
    if method == "permanent":
        return count_via_permanent(field)
    raise ValueError(f"unknown method {method!r}; choose from auto, {', '.join(METHODS)}")
