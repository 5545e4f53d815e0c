"""Sieve-backed generation of multiplicative coefficient sequences.

Everything here is dense up to a cutoff N: generalized divisor coefficients
d_alpha(n) (the Dirichlet coefficients of zeta(s)^alpha), the Mobius function,
log-weighted polynomial coefficients, mu-twisted mollifier coefficients with
squared log weights, and complex-shifted convolution series.  All sequences are
multiplicative (or built from multiplicative pieces by Dirichlet convolution),
so a smallest-prime-factor sieve drives every generator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

import numpy as np

from .errors import DomainError

# Shift real parts below this make the Euler products behind the shifted
# series diverge; reject them at construction time.
SHIFT_RE_MIN = -3.0 / 16.0

DEFAULT_SIEVE_CAP = 10**7


@dataclass(frozen=True)
class FactorSieve:
    """Smallest-prime-factor table for 2 <= n <= limit.

    spf[n] is the least prime dividing n; spf[p] = p for prime p.
    spf[0] = 0 and spf[1] = 1 are sentinels.
    """

    limit: int
    spf: np.ndarray

    @classmethod
    def build(cls, limit: int) -> "FactorSieve":
        if limit < 1 or limit > DEFAULT_SIEVE_CAP:
            raise DomainError(f"sieve limit must be in [1, {DEFAULT_SIEVE_CAP}], got {limit}")
        spf = np.zeros(limit + 1, dtype=np.int64)
        for p in range(2, math.isqrt(limit) + 1):
            if spf[p] == 0:
                block = spf[p * p :: p]
                block[block == 0] = p
        untouched = spf == 0
        spf[untouched] = np.arange(limit + 1, dtype=np.int64)[untouched]
        if limit >= 1:
            spf[1] = 1
        spf.setflags(write=False)
        return cls(limit=limit, spf=spf)

    def factorize(self, n: int) -> list[tuple[int, int]]:
        """Prime factorization of n as [(p, e), ...] with p strictly increasing."""
        if n < 1 or n > self.limit:
            raise DomainError(f"factorize: n must be in [1, {self.limit}], got {n}")
        out: list[tuple[int, int]] = []
        m = int(n)
        while m > 1:
            p = int(self.spf[m])
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        return out


@dataclass
class CoefficientSeries:
    """Dense real or complex Dirichlet-series coefficients for 1 <= n <= cutoff.

    values has length cutoff + 1 with values[0] unused (kept at 0) so that
    values[n] is the coefficient of n^{-s}.  label and params identify which
    sequence this is; they are advisory metadata, not used in arithmetic.
    """

    label: str
    cutoff: int
    values: np.ndarray
    params: dict = field(default_factory=dict)

    def value(self, n: int) -> complex:
        if n < 1 or n > self.cutoff:
            raise DomainError(f"series index must be in [1, {self.cutoff}], got {n}")
        return self.values[n]


@dataclass(frozen=True)
class ShiftVector:
    """Ordered complex shifts with real parts bounded below by -3/16."""

    shifts: tuple[complex, ...]

    def __post_init__(self):
        if len(self.shifts) < 1:
            raise DomainError("shift vector must contain at least one shift")
        for w in self.shifts:
            if complex(w).real < SHIFT_RE_MIN:
                raise DomainError(f"shift {w} has real part below {SHIFT_RE_MIN}")

    def __len__(self) -> int:
        return len(self.shifts)


def prime_power_coeff(alpha, e: int):
    """Coefficient of zeta^alpha at a prime power p^e: prod_{i<e} (alpha+i)/(i+1).

    Exact Fraction arithmetic when alpha is rational, float otherwise.
    """
    if e < 0:
        raise DomainError("exponent must be nonnegative")
    if isinstance(alpha, Rational):
        acc = Fraction(1)
        a = Fraction(alpha)
        for i in range(e):
            acc *= (a + i) / (i + 1)
        return acc
    acc = 1.0
    for i in range(e):
        acc *= (alpha + i) / (i + 1)
    return acc


def divisor_coeff(alpha, n: int, sieve: FactorSieve) -> float:
    """d_alpha(n): multiplicative, with d_alpha(p^e) given by prime_power_coeff.

    alpha rational is evaluated exactly and converted to float at the end.
    """
    acc = Fraction(1) if isinstance(alpha, Rational) else 1.0
    for _, e in sieve.factorize(n):
        acc *= prime_power_coeff(alpha, e)
    return float(acc)


def divisor_series(alpha, cutoff: int, sieve: FactorSieve) -> CoefficientSeries:
    """Dense d_alpha(n) for n <= cutoff via the smallest-prime-factor recursion."""
    if cutoff > sieve.limit:
        raise DomainError(f"cutoff {cutoff} exceeds sieve limit {sieve.limit}")
    a = float(alpha)
    d = np.zeros(cutoff + 1)
    if cutoff >= 1:
        d[1] = 1.0
    cnt = np.zeros(cutoff + 1, dtype=np.int32)
    spf = sieve.spf
    for n in range(2, cutoff + 1):
        p = spf[n]
        m = n // p
        e = cnt[m] + 1 if m % p == 0 else 1
        cnt[n] = e
        # d(p^e)/d(p^{e-1}) = (alpha+e-1)/e, rest of n unchanged
        d[n] = d[m] * (a + e - 1) / e
    return CoefficientSeries("d_alpha", cutoff, d, {"alpha": alpha})


def mobius_series(cutoff: int, sieve: FactorSieve) -> CoefficientSeries:
    """Dense Mobius function mu(n) for n <= cutoff."""
    if cutoff > sieve.limit:
        raise DomainError(f"cutoff {cutoff} exceeds sieve limit {sieve.limit}")
    mu = np.zeros(cutoff + 1)
    if cutoff >= 1:
        mu[1] = 1.0
    spf = sieve.spf
    for n in range(2, cutoff + 1):
        p = spf[n]
        m = n // p
        mu[n] = 0.0 if m % p == 0 else -mu[m]
    return CoefficientSeries("mobius", cutoff, mu)


def dirichlet_convolve(f: CoefficientSeries, g: CoefficientSeries, cutoff: int) -> CoefficientSeries:
    """Dirichlet convolution out[n] = sum_{d|n} f[d] g[n/d] for n <= cutoff."""
    if f.cutoff < cutoff or g.cutoff < cutoff:
        raise DomainError(
            f"convolution cutoff {cutoff} exceeds input cutoffs ({f.cutoff}, {g.cutoff})"
        )
    fv = f.values
    gv = g.values
    dtype = np.result_type(fv.dtype, gv.dtype)
    out = np.zeros(cutoff + 1, dtype=dtype)
    for d in range(1, cutoff + 1):
        fd = fv[d]
        if fd != 0:
            out[d::d] += fd * gv[1 : cutoff // d + 1]
    return CoefficientSeries(f"({f.label})*({g.label})", cutoff, out)


def _self_convolve(base: CoefficientSeries, times: int, cutoff: int) -> CoefficientSeries:
    out = base
    for _ in range(times - 1):
        out = dirichlet_convolve(out, base, cutoff)
    return out


def weighted_poly_coeffs(
    A: int, B: int, x: float, cutoff: int, sieve: FactorSieve
) -> CoefficientSeries:
    """Coefficients of the A-fold log-weighted short polynomial.

    out[n] = sum over ordered factorizations n_1 ... n_A = n with every
    n_i <= x of prod_i d_{1/B}(n_i) * log(x/n_i)/log(x).  The factor cutoff
    compares n_i against floor(x); the log weight uses the real x.
    """
    if A < 1 or B < 1:
        raise DomainError("A and B must be positive integers")
    if x <= 1.0:
        raise DomainError(f"x must exceed 1, got {x}")
    support = min(cutoff, int(math.floor(x)))
    base_d = divisor_series(Fraction(1, B), max(support, 1), sieve)
    vals = np.zeros(cutoff + 1)
    n = np.arange(1, support + 1)
    vals[1 : support + 1] = base_d.values[1 : support + 1] * (np.log(x / n) / math.log(x))
    base = CoefficientSeries("weighted_base", cutoff, vals)
    out = _self_convolve(base, A, cutoff)
    out.label = "weighted"
    out.params = {"A": A, "B": B, "x": x}
    return out


def mollifier_coeffs(
    A: int, B: int, y: float, cutoff: int, sieve: FactorSieve
) -> CoefficientSeries:
    """Coefficients of the A-fold mu-twisted mollifier with squared log weights.

    out[n] = 2^{-A} * sum over ordered factorizations n_1 ... n_A = n with
    n_i <= y of prod_i d_{1/B}(n_i) mu(n_i) log^2(y/n_i)/log^2(y).
    """
    if A < 1 or B < 1:
        raise DomainError("A and B must be positive integers")
    if y <= 1.0:
        raise DomainError(f"y must exceed 1, got {y}")
    support = min(cutoff, int(math.floor(y)))
    base_d = divisor_series(Fraction(1, B), max(support, 1), sieve)
    mu = mobius_series(max(support, 1), sieve)
    vals = np.zeros(cutoff + 1)
    n = np.arange(1, support + 1)
    logs = np.log(y / n) / math.log(y)
    vals[1 : support + 1] = base_d.values[1 : support + 1] * mu.values[1 : support + 1] * logs**2
    base = CoefficientSeries("mollifier_base", cutoff, vals)
    out = _self_convolve(base, A, cutoff)
    out.values *= 0.5**A
    out.label = "mollifier"
    out.params = {"A": A, "B": B, "y": y}
    return out


def _shifted_factor(alpha, shift: complex, twist_mu: bool, cutoff: int, sieve: FactorSieve):
    d = divisor_series(alpha, cutoff, sieve).values.astype(complex)
    if twist_mu:
        d *= mobius_series(cutoff, sieve).values
    n = np.arange(1, cutoff + 1)
    d[1:] *= np.exp(-complex(shift) * np.log(n))
    return CoefficientSeries("shifted_factor", cutoff, d)


def shifted_series(
    mode: str,
    shifts,
    s_param: int,
    cutoff: int,
    sieve: FactorSieve,
) -> CoefficientSeries:
    """Complex convolution series over ordered factorizations.

    mode "sigma": factors d_{1/2s}(n_i) n_i^{-w_i}.
    mode "rho":   factors d_{1/s}(n_i) mu(n_i) n_i^{-z_i}.
    mode "psi":   shifts is a pair (w_vec, z_vec); sigma-type factors for the
                  w shifts followed by rho-type factors for the z shifts.
    """
    if s_param < 1:
        raise DomainError("s parameter must be a positive integer")
    if mode == "psi":
        if not (isinstance(shifts, (tuple, list)) and len(shifts) == 2):
            raise DomainError("psi mode requires a pair of shift vectors")
        wvec, zvec = (sv if isinstance(sv, ShiftVector) else ShiftVector(tuple(sv)) for sv in shifts)
        specs = [(Fraction(1, 2 * s_param), w, False) for w in wvec.shifts]
        specs += [(Fraction(1, s_param), z, True) for z in zvec.shifts]
    elif mode in ("sigma", "rho"):
        vec = shifts if isinstance(shifts, ShiftVector) else ShiftVector(tuple(shifts))
        if mode == "sigma":
            specs = [(Fraction(1, 2 * s_param), w, False) for w in vec.shifts]
        else:
            specs = [(Fraction(1, s_param), z, True) for z in vec.shifts]
    else:
        raise DomainError(f"unknown shifted-series mode {mode!r}")

    alpha0, shift0, twist0 = specs[0]
    out = _shifted_factor(alpha0, shift0, twist0, cutoff, sieve)
    for alpha, shift, twist in specs[1:]:
        out = dirichlet_convolve(out, _shifted_factor(alpha, shift, twist, cutoff, sieve), cutoff)
    out.label = mode
    out.params = {"s": s_param, "shifts": shifts}
    return out
