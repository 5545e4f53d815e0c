"""Fractional moments, short Dirichlet polynomials, and the Holder chain.

For a prime q, rational k = r/s in lowest terms with 0 < r < s, and cutoffs
x = y^a, this module evaluates for every non-principal character chi:

    P(chi) = sum_{n <= x} d_{1/2s}(n) chi(n) n^{-1/2} log(x/n)/log(x)
    M(chi) = (1/2) sum_{n <= y} d_{1/s}(n) mu(n) chi(n) n^{-1/2} log^2(y/n)/log^2(y)

and from them the fractional moment M_k(q) = sum |L|^{2k}, the twisted sums

    S_l = sum L(1/2, chi) conj(P)^{2s} |M|^{2(s-r)}
    S_u = sum |L|^2 |P|^{4s} |M|^{2(2s-r)}

the diagonal bound for sum |P|^{4r}, and the Holder/Cauchy chain

    |S_l| <= M_k(q)^{1/(2(2-k))} (sum |P|^{4r})^{1/(2(2-k))} S_u^{(1-k)/(2-k)}.

Per-character powers are taken on the evaluated polynomial values (never by
expanding coefficient convolutions), and all-character evaluation rides on
the group DFT.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .characters import CharacterTable, build_table, dft_all_characters, fold_residues, is_prime
from .errors import DomainError
from .lvalues import oracle_values, smoothed_values, squares_by_method
from .sieve import CoefficientSeries, FactorSieve, mollifier_coeffs, weighted_poly_coeffs
from .util import parallel_map

SQUARE_FLOOR = 1e-30  # |L|^2 floor before taking fractional powers


@dataclass(frozen=True)
class MomentParams:
    """Parameter bundle (q, k = r/s, x = y^a) with the support checks baked in.

    The asymptotic regime x^{4s} <= q^{1/20} is unreachable for x > 1 at any
    computable q; regime_ok records whether it holds, and reports carry the
    flag rather than enforcing it.
    """

    q: int
    r: int
    s: int
    y: float
    a: float
    x: float

    def __post_init__(self):
        if not is_prime(self.q):
            raise DomainError(f"q must be prime, got {self.q}")
        if self.r < 1 or self.s < 1 or math.gcd(self.r, self.s) != 1 or self.r >= self.s:
            raise DomainError("need k = r/s in lowest terms with 0 < r < s")
        if self.y <= 1 or self.a < 1:
            raise DomainError("need y > 1 and a >= 1")
        if abs(self.x - self.y**self.a) > 1e-12 * self.y**self.a:
            raise DomainError("x must equal y^a")

    @classmethod
    def make(cls, q: int, r: int = 1, s: int = 2, a: float = 4.0, y: Optional[float] = None):
        """Default bundle: y = q^{1/(4 a s)} clamped to >= 2, x = y^a."""
        if y is None:
            y = max(2.0, q ** (1.0 / (4.0 * a * s)))
        return cls(q=q, r=r, s=s, y=float(y), a=float(a), x=float(y) ** float(a))

    @property
    def k(self) -> Fraction:
        return Fraction(self.r, self.s)

    @property
    def regime_ok(self) -> bool:
        return self.x ** (4 * self.s) <= self.q ** (1 / 20)


def polynomial_series(params: MomentParams, sieve: FactorSieve) -> CoefficientSeries:
    """Coefficients of P: d_{1/2s}(n) log(x/n)/log(x) on n <= x."""
    cutoff = int(math.floor(params.x))
    return weighted_poly_coeffs(1, 2 * params.s, params.x, cutoff, sieve)


def mollifier_series(params: MomentParams, sieve: FactorSieve) -> CoefficientSeries:
    """Coefficients of M: (1/2) d_{1/s}(n) mu(n) log^2(y/n)/log^2(y) on n <= y."""
    cutoff = int(math.floor(params.y))
    return mollifier_coeffs(1, params.s, params.y, cutoff, sieve)


def evaluate_polynomial_all(
    table: CharacterTable, coeffs: CoefficientSeries, conjugate: bool = False
) -> np.ndarray:
    """sum_n c_n chi_j(n) n^{-1/2} (or with chibar_j) for every j at once.

    Coefficient support must stay below q so residues are distinct; the
    principal-character slot j = 0 is included in the output.
    """
    vals = coeffs.values
    nz = np.nonzero(vals[1:])[0]
    if nz.size and nz[-1] + 1 >= table.q:
        raise DomainError(f"coefficient support must be < q = {table.q}")
    n = np.arange(1, vals.size)
    weighted = vals[1:] / np.sqrt(n)
    folded = fold_residues(table.q, weighted)
    out = dft_all_characters(table, folded.astype(complex))
    if conjugate:
        # chibar_j = chi_{-j mod (q-1)}
        out = np.roll(out[::-1], 1)
    return out


@dataclass
class MomentReport:
    params: MomentParams
    method: str
    k: Fraction
    value: float
    contributions: np.ndarray = field(repr=False)
    floored_characters: list[int] = field(default_factory=list)

    @property
    def per_phi(self) -> float:
        return self.value / (self.params.q - 1)


def moment_sum(
    table: CharacterTable, k: Fraction, method: str = "oracle"
) -> tuple[float, np.ndarray, list[int]]:
    """sum over non-principal chi of (|L(1/2, chi)|^2)^k for rational k in (0, 1].

    Fractional powers go through exp(k log |L|^2) with |L|^2 floored at
    1e-30; floored characters (numerically vanishing L) are flagged.
    Returns (value, per-character contributions, floored character indices).
    """
    k = Fraction(k)
    if not (0 < k <= 1):
        raise DomainError(f"k must lie in (0, 1], got {k}")
    sq = squares_by_method(table, method)[1:]
    floored = [int(j) for j in (np.nonzero(sq < SQUARE_FLOOR)[0] + 1)]
    contrib = np.exp(float(k) * np.log(np.maximum(sq, SQUARE_FLOOR)))
    return float(math.fsum(contrib)), contrib, floored


def moment_k(params: MomentParams, table: CharacterTable, method: str = "oracle") -> MomentReport:
    """M_k(q) for the bundle's k = r/s; see moment_sum for the power convention."""
    if table.q != params.q:
        raise DomainError("table modulus does not match params")
    value, contrib, floored = moment_sum(table, params.k, method)
    return MomentReport(
        params=params,
        method=method,
        k=params.k,
        value=value,
        contributions=contrib,
        floored_characters=floored,
    )


def _char_values(
    params: MomentParams, table: CharacterTable, sieve: FactorSieve, method: str
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """(L, |L|^2, P, M) arrays over all characters, consistent across uses."""
    if method not in ("oracle", "smoothed"):
        raise DomainError("twisted sums need complex L-values: method 'oracle' or 'smoothed'")
    L = oracle_values(table) if method == "oracle" else smoothed_values(table)
    P = evaluate_polynomial_all(table, polynomial_series(params, sieve))
    M = evaluate_polynomial_all(table, mollifier_series(params, sieve))
    return L, np.abs(L) ** 2, P, M


def s_lower(
    params: MomentParams, table: CharacterTable, sieve: FactorSieve, method: str = "oracle"
) -> complex:
    """S_l = sum_{chi != chi0} L(1/2, chi) conj(P)^{2s} |M|^{2(s-r)}."""
    L, _, P, M = _char_values(params, table, sieve, method)
    s, r = params.s, params.r
    terms = L * np.conj(P) ** (2 * s) * np.abs(M) ** (2 * (s - r))
    t = terms[1:]
    return complex(math.fsum(t.real), math.fsum(t.imag))


def s_upper(
    params: MomentParams, table: CharacterTable, sieve: FactorSieve, method: str = "oracle"
) -> float:
    """S_u = sum_{chi != chi0} |L|^2 |P|^{4s} |M|^{2(2s-r)} (each term >= 0)."""
    _, sq, P, M = _char_values(params, table, sieve, method)
    s, r = params.s, params.r
    terms = sq * np.abs(P) ** (4 * s) * np.abs(M) ** (2 * (2 * s - r))
    return float(math.fsum(terms[1:]))


def p_fourth_sum(params: MomentParams, table: CharacterTable, sieve: FactorSieve) -> float:
    """sum_{chi != chi0} |P(chi)|^{4r}."""
    P = evaluate_polynomial_all(table, polynomial_series(params, sieve))
    return float(math.fsum(np.abs(P[1:]) ** (4 * params.r)))


@dataclass
class P4Report:
    lhs: float
    rhs: float
    ratio: float
    holds: bool


def p4_bound_check(params: MomentParams, table: CharacterTable, sieve: FactorSieve) -> P4Report:
    """Diagonal majorant for the fourth-type polynomial sum.

    lhs = sum_{chi != chi0} |P|^{4r}; rhs = phi(q) sum_{n <= x^{2r}} of the
    squared 2r-fold weighted coefficients over n.  In the diagonal regime
    x^{2r} < q orthogonality makes lhs <= rhs exactly (the dropped terms are
    the principal square and nothing else), so holds is lhs <= rhs(1 + 1e-9).
    """
    xpow = params.x ** (2 * params.r)
    if xpow >= params.q:
        raise DomainError("diagonal regime requires x^{2r} < q")
    lhs = p_fourth_sum(params, table, sieve)
    cutoff = int(math.floor(xpow))
    d2 = weighted_poly_coeffs(2 * params.r, 2 * params.s, params.x, cutoff, sieve)
    n = np.arange(1, cutoff + 1)
    rhs = (params.q - 1) * float(np.sum(d2.values[1:] ** 2 / n))
    return P4Report(lhs=lhs, rhs=rhs, ratio=lhs / rhs, holds=lhs <= rhs * (1 + 1e-9))


def holder_exponents(k: Fraction) -> tuple[Fraction, Fraction, Fraction]:
    """The three chain exponents (1/(2(2-k)), 1/(2(2-k)), (1-k)/(2-k)); they sum to 1."""
    k = Fraction(k)
    e1 = 1 / (2 * (2 - k))
    return e1, e1, (1 - k) / (2 - k)


@dataclass
class HolderReport:
    params: MomentParams
    method: str
    s_l: complex
    abs_s_l: float
    moment: float
    p4: float
    s_u: float
    f1: float
    f2: float
    f3: float
    slack: float
    holds: bool


def holder_chain_check(
    params: MomentParams,
    table: CharacterTable,
    sieve: FactorSieve,
    method: str = "oracle",
) -> HolderReport:
    """Verify |S_l| <= F1 F2 F3 with the chain's exponents on M_k, sum|P|^{4r}, S_u.

    All four quantities use the same per-character L, P, M values, so the
    inequality is exact arithmetic and any slack below -1e-9 * F1 F2 F3
    indicates a bug rather than a tolerance issue.
    """
    e1, e2, e3 = (float(e) for e in holder_exponents(params.k))
    sl = s_lower(params, table, sieve, method)
    mk = moment_k(params, table, method).value
    p4 = p_fourth_sum(params, table, sieve)
    su = s_upper(params, table, sieve, method)
    f1, f2, f3 = mk**e1, p4**e2, su**e3
    slack = f1 * f2 * f3 - abs(sl)
    return HolderReport(
        params=params,
        method=method,
        s_l=sl,
        abs_s_l=abs(sl),
        moment=mk,
        p4=p4,
        s_u=su,
        f1=f1,
        f2=f2,
        f3=f3,
        slack=slack,
        holds=slack >= -1e-9 * f1 * f2 * f3,
    )


@dataclass
class SurveyRow:
    q: int
    moment_over_phi: float
    logq_pow_k2: float
    ratio: float
    band_ok: bool


def scaling_survey(
    k: Fraction,
    primes: Sequence[int],
    method: str = "oracle",
    band: tuple[float, float] = (0.1, 10.0),
) -> list[SurveyRow]:
    """M_k(q)/phi(q) against (log q)^{k^2} across a list of primes.

    The ratio column is a sanity band (default [0.1, 10]), not an asymptotic claim:
    the asymptotic constants are not reproducible at desk scale.
    """
    k = Fraction(k)

    def one(q: int) -> SurveyRow:
        table = build_table(q)
        value, _, _ = moment_sum(table, k, method)
        per_phi = value / (q - 1)
        target = math.log(q) ** float(k * k)
        ratio = per_phi / target
        return SurveyRow(
            q=q,
            moment_over_phi=per_phi,
            logq_pow_k2=target,
            ratio=ratio,
            band_ok=band[0] <= ratio <= band[1],
        )

    return parallel_map(one, [int(q) for q in primes])
