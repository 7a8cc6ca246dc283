"""Numerical checks of the estimate |N - (q-1)!| <= sqrt(2e/pi) * q^(q/2)
and of each identity and inequality leading to it.

Algebraic identities are checked exactly (integers / CycInt); analytic
inequalities in double precision with relative slack ``REL_SLACK``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .counting import RangeExceeded, _as_subset, character_sum
from .gf import FiniteField, build_field, FieldSpec, prime_power

REL_SLACK = 1e-9
THEOREM_CONSTANT = math.sqrt(2 * math.e / math.pi)
CONJECTURED_CONSTANT = math.sqrt(math.e / (2 * math.pi))


def leq(a: float, b: float, slack: float = REL_SLACK) -> bool:
    return a <= b + slack * max(abs(a), abs(b))


def parseval_check(field: FiniteField, S) -> bool:
    """sum_b |sum_{t in S} zeta^Tr(bt)|^2 == q|S|, and == (q-|S|)|S| without b = 0."""
    S = _as_subset(field, S)
    q, s = field.q, S.size
    total = 0
    for b in field.elements:
        a2 = character_sum(field, b, S).abs2()
        total = total + a2
        if b == 0:
            at_zero = a2
    return total == q * s and total - at_zero == (q - s) * s


def weyl_product(field: FiniteField, S) -> float:
    """prod_{b != 0} |sum_{t in S} zeta^Tr(bt)|."""
    S = _as_subset(field, S)
    prod = 1.0
    for b in range(1, field.q):
        prod *= abs(complex(character_sum(field, b, S)))
    return prod


def amgm_bound(q: int, size: int) -> float:
    return ((q - size) * size / (q - 1)) ** ((q - 1) / 2)


def amgm_check(field: FiniteField, S) -> bool:
    S = _as_subset(field, S)
    return leq(weyl_product(field, S), amgm_bound(field.q, S.size))


def _weyl_products_all(field: FiniteField, chunk: int = 1 << 14) -> np.ndarray:
    """weyl_product for every mask 0..2^q-1, vectorised."""
    q = field.q
    z = np.exp(2j * np.pi * np.arange(field.p) / field.p)
    chars = z[field.char_exponents[1:]]           # (q-1, q)
    bits = np.arange(q)
    out = np.empty(1 << q)
    for start in range(0, 1 << q, chunk):
        masks = np.arange(start, min(start + chunk, 1 << q))
        member = ((masks[:, None] >> bits[None, :]) & 1).astype(float)
        sums = member @ chars.T                    # (chunk, q-1)
        out[start:start + len(masks)] = np.prod(np.abs(sums), axis=1)
    return out


def bravoigor_rhs(field: FiniteField) -> float:
    """(q-1)/(2q) * sum_S |q - 2|S|| * prod_{b != 0} |sum_{t in S} zeta^Tr(bt)|."""
    q = field.q
    if q > 16:
        raise RangeExceeded("the subset sweep is limited to q <= 16", 16)
    prods = _weyl_products_all(field)
    sizes = np.array([bin(m).count("1") for m in range(1 << q)])
    terms = np.abs(q - 2 * sizes) * prods
    # fsum is correctly rounded, hence independent of summation order
    return (q - 1) / (2 * q) * math.fsum(terms.tolist())


def fine_rhs(q: int) -> float:
    """The subset sum after AM-GM, grouped by |S| = j."""
    if q > 64:
        raise RangeExceeded("fine_rhs is evaluated for q <= 64", 64)
    e = (q - 1) / 2
    total = math.fsum(math.comb(q, j) * abs(q - 2 * j) * float((q - j) * j) ** e
                      for j in range(q + 1))
    return (q - 1) / (2 * q * (q - 1) ** e) * total


def finebis_check(q: int) -> bool:
    """((q-j) j)^((q-1)/2) <= (q/2)^(q-1) for every 0 <= j <= q."""
    e = (q - 1) / 2
    return all(leq(float((q - j) * j) ** e, (q / 2) ** (q - 1)) for j in range(q + 1))


def binom_sum_identity(q: int) -> bool:
    """sum_j C(q,j) |q - 2j| == 2q C(q-1, floor(q/2)), exactly."""
    if q > 64:
        raise RangeExceeded("binomial identity is checked for q <= 64", 64)
    lhs = sum(math.comb(q, j) * abs(q - 2 * j) for j in range(q + 1))
    return lhs == 2 * q * math.comb(q - 1, q // 2)


def central_binom_check(n: int) -> bool:
    """C(2n, n) <= sqrt(2/pi) 4^n / sqrt(2n + 1/2)."""
    if not 1 <= n <= 128:
        raise RangeExceeded("central binomial check needs 1 <= n <= 128", 128)
    bound = math.sqrt(2 / math.pi) * 4.0**n / math.sqrt(2 * n + 0.5)
    return math.comb(2 * n, n) <= bound


def summ_check(q: int) -> bool:
    """C(q-1, floor(q/2)) <= sqrt(2/pi) 2^(q-1) / sqrt(q - 1/2)."""
    if q > 64:
        raise RangeExceeded("summ form is checked for q <= 64", 64)
    bound = math.sqrt(2 / math.pi) * 2.0 ** (q - 1) / math.sqrt(q - 0.5)
    return math.comb(q - 1, q // 2) <= bound


def combined_rhs(q: int) -> float:
    """Bound obtained after substituting the binomial estimates, before the
    two final scalar inequalities are applied."""
    return ((q - 1) / (math.sqrt(q - 0.5) * math.sqrt(q)) * math.sqrt(2 / math.pi)
            * (q / (q - 1)) ** ((q - 1) / 2) * q_half_power(q))


def q_half_power(q: int) -> float:
    return math.exp(q / 2 * math.log(q))


def theorem_rhs(q: int) -> float:
    return THEOREM_CONSTANT * q_half_power(q)


def scalar_checks(q: int) -> tuple[bool, bool]:
    """(q-1)/(sqrt(q-1/2) sqrt(q)) < 1 and (q/(q-1))^((q-1)/2) < sqrt(e)."""
    a = (q - 1) / (math.sqrt(q - 0.5) * math.sqrt(q)) < 1
    b = (q / (q - 1)) ** ((q - 1) / 2) < math.sqrt(math.e)
    return a, b


@dataclass
class BoundReport:
    q: int
    N: int
    deviation: int
    bravoigor_rhs: float | None
    fine_rhs: float
    combined_rhs: float
    theorem_rhs: float
    empirical_constant: float
    fine_constant: float
    theorem_holds: bool
    chain_holds: bool | None
    scalar_checks: tuple[bool, bool]

    @property
    def ok(self) -> bool:
        return self.theorem_holds and self.chain_holds is not False and all(self.scalar_checks)

    def to_json(self) -> dict:
        d = asdict(self)
        d["N"] = str(self.N)
        d["deviation"] = str(self.deviation)
        d["scalar_checks"] = list(self.scalar_checks)
        d["theorem_constant"] = THEOREM_CONSTANT
        d["conjectured_constant"] = CONJECTURED_CONSTANT
        return d

    MARKDOWN_HEADER = ("q", "N", "(q-1)!", "|N-(q-1)!|", "bravoigor", "fine", "theorem",
                       "|N-(q-1)!|/q^(q/2)", "fine/q^(q/2)", "ok")

    def markdown_cells(self) -> list[str]:
        brav = "n/a" if self.bravoigor_rhs is None else f"{self.bravoigor_rhs:.6g}"
        return [str(self.q), str(self.N), str(math.factorial(self.q - 1)), str(self.deviation),
                brav, f"{self.fine_rhs:.6g}", f"{self.theorem_rhs:.6g}",
                f"{self.empirical_constant:.6f}", f"{self.fine_constant:.6f}",
                "yes" if self.ok else "NO"]


def theorem_report(q: int, N: int, field: FiniteField | None = None) -> BoundReport:
    """Fill a BoundReport for a computed N.

    The chain |N - (q-1)!| <= bravoigor <= fine <= combined <= theorem is
    evaluated for 2 < q <= 16 (the derivation assumes q > 2); for q = 2 only
    the final estimate is checked.  The empirical constant is reported, never
    compared against the conjectured sqrt(e/2pi).
    """
    dev = abs(N - math.factorial(q - 1))
    fine = fine_rhs(q)
    comb = combined_rhs(q)
    thm = theorem_rhs(q)
    brav = None
    chain = None
    if q > 2:
        if q <= 16:
            if field is None:
                p, f = prime_power(q)
                field = build_field(FieldSpec(p, f))
            brav = bravoigor_rhs(field)
        links = [(float(dev), fine), (fine, comb), (comb, thm)]
        if brav is not None:
            links = [(float(dev), brav), (brav, fine)] + links[1:]
        chain = all(leq(a, b) for a, b in links)
    return BoundReport(
        q=q, N=N, deviation=dev, bravoigor_rhs=brav, fine_rhs=fine, combined_rhs=comb,
        theorem_rhs=thm, empirical_constant=dev / q_half_power(q),
        fine_constant=fine / q_half_power(q), theorem_holds=leq(float(dev), thm),
        chain_holds=chain, scalar_checks=scalar_checks(q))
