"""Exact Dirichlet-character arithmetic modulo a prime q.

A character table stores the smallest primitive root g and the discrete-log
table of (Z/qZ)*, so chi_j(a) = exp(2 pi i * j * dlog(a) / (q-1)) is computed
on demand from one table of q-1 precomputed roots of unity.  Character values
are never materialized as a q x q matrix.

Evaluating a coefficient sum over all characters at once is a DFT of length
q-1 after permuting residues into the cyclic group generated by g; numpy's
pocketfft handles the non-power-of-two (often prime) lengths via Bluestein's
reduction, giving the O(q log q) fast path.  A direct per-character dot
product is kept as the quadratic-time reference.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError

QMAX = 10**6

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond the q <= 10^6 range used here."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class CharacterTable:
    """Precomputed data for the q-1 Dirichlet characters modulo a prime q.

    Fields:
        q:      prime modulus
        g:      smallest positive primitive root mod q
        dlog:   dlog[a] = k with g^k = a (mod q), for 1 <= a < q; dlog[0] = -1
        powers: powers[k] = g^k mod q for 0 <= k < q-1 (inverse of dlog)
        parity: parity[j] = 0 if chi_j(-1) = 1 (even), 1 otherwise
        roots:  roots[m] = exp(2 pi i m/(q-1))
    """

    q: int
    g: int
    dlog: np.ndarray
    powers: np.ndarray
    parity: np.ndarray
    roots: np.ndarray

    @property
    def order(self) -> int:
        return self.q - 1

    def chi(self, j: int, a: int) -> complex:
        """chi_j(a); zero when q divides a."""
        a = a % self.q
        if a == 0:
            return 0j
        return complex(self.roots[(j * int(self.dlog[a])) % self.order])


def build_table(q: int) -> CharacterTable:
    """Character table for prime q, 3 <= q <= 10^6, smallest primitive root."""
    if q < 3 or q > QMAX or not is_prime(q):
        raise DomainError(f"modulus must be a prime in [3, {QMAX}], got {q}")
    n = q - 1
    fac = []
    m, d = n, 2
    while d * d <= m:
        if m % d == 0:
            fac.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        fac.append(m)
    g = 0
    for cand in range(2, q):
        if all(pow(cand, n // p, q) != 1 for p in fac):
            g = cand
            break
    powers = np.empty(n, dtype=np.int64)
    v = 1
    for k in range(n):
        powers[k] = v
        v = v * g % q
    dlog = np.full(q, -1, dtype=np.int64)
    dlog[powers] = np.arange(n, dtype=np.int64)
    # chi_j(-1) = exp(2 pi i j dlog(-1)/n) with dlog(-1) = n/2, so parity is j mod 2
    half = int(dlog[q - 1])
    j = np.arange(n, dtype=np.int64)
    parity = ((j * half) % n != 0).astype(np.int8)
    roots = np.exp(2j * math.pi * np.arange(n) / n)
    for arr in (powers, dlog, parity, roots):
        arr.setflags(write=False)
    return CharacterTable(q=q, g=g, dlog=dlog, powers=powers, parity=parity, roots=roots)


def chi_value(table: CharacterTable, j: int, a: int) -> complex:
    return table.chi(j, a)


def _csum(values: np.ndarray) -> complex:
    """Compensated complex sum (fsum on real and imaginary parts)."""
    return complex(math.fsum(values.real), math.fsum(values.imag))


def character_sum(table: CharacterTable, a: int) -> complex:
    """sum_chi chi(a) over all q-1 characters: phi(q) when a = 1 mod q, else 0."""
    a = a % table.q
    if a == 0:
        raise DomainError("character_sum requires gcd(a, q) = 1")
    n = table.order
    d = int(table.dlog[a])
    vals = table.roots[(np.arange(n, dtype=np.int64) * d) % n]
    return _csum(vals)


def parity_restricted_sum(
    table: CharacterTable, parity: str, a: int, method: str = "direct"
) -> complex:
    """Sum of chi(a) over non-trivial characters of one parity.

    method "direct" filters characters by their parity bit; method
    "projector" applies the (1 +- chi(-1))/2 projector to the full-group sum.
    For prime q every non-trivial character is primitive, so these are the
    even/odd primitive sums.
    """
    a = a % table.q
    if a == 0:
        raise DomainError("parity_restricted_sum requires gcd(a, q) = 1")
    if parity not in ("even", "odd"):
        raise DomainError(f"parity must be 'even' or 'odd', got {parity!r}")
    n = table.order
    d = int(table.dlog[a])
    j = np.arange(n, dtype=np.int64)
    chis = table.roots[(j * d) % n]
    if method == "direct":
        want = 0 if parity == "even" else 1
        sel = table.parity == want
        if parity == "even":
            sel = sel & (j != 0)
        return _csum(chis[sel])
    if method == "projector":
        half = int(table.dlog[table.q - 1])
        chi_m1 = table.roots[(j * half) % n]
        sign = 1.0 if parity == "even" else -1.0
        total = _csum((1.0 + sign * chi_m1) / 2.0 * chis)
        if parity == "even":
            total -= 1.0  # remove the principal character
        return total
    raise DomainError(f"unknown method {method!r}")


def parity_sum_expected(q: int, parity: str, a: int) -> complex:
    """Case table for the even/odd primitive character sums at prime q."""
    a = a % q
    phi = q - 1
    if parity == "even":
        return complex((phi - 2) / 2 if a in (1, q - 1) else -1.0)
    if a == 1:
        return complex(phi / 2)
    if a == q - 1:
        return complex(-phi / 2)
    return 0j


def dft_all_characters(table: CharacterTable, coeffs: np.ndarray) -> np.ndarray:
    """out[j] = sum_{a=1}^{q-1} coeffs[a-1] chi_j(a) for every j at once.

    Permutes coefficients to the cyclic group (index m with a = g^m) and runs
    one inverse FFT of length q-1; matches the naive evaluation to ~1e-13.
    """
    n = table.order
    coeffs = np.asarray(coeffs)
    if coeffs.shape != (n,):
        raise DomainError(f"coefficient array must have length q-1 = {n}, got {coeffs.shape}")
    b = coeffs[table.powers - 1]
    return np.fft.ifft(b) * n


def inverse_dft_all_characters(table: CharacterTable, char_sums: np.ndarray) -> np.ndarray:
    """Recover residue coefficients from the full vector of character sums."""
    n = table.order
    char_sums = np.asarray(char_sums)
    if char_sums.shape != (n,):
        raise DomainError(f"character-sum array must have length q-1 = {n}")
    b = np.fft.fft(char_sums) / n
    coeffs = np.empty(n, dtype=complex)
    coeffs[table.powers - 1] = b
    return coeffs


def naive_character_sums(
    table: CharacterTable, coeffs: np.ndarray, indices: Sequence[int] | None = None
) -> np.ndarray:
    """Direct per-character evaluation of sum_a coeffs[a-1] chi_j(a).

    Quadratic-time reference for dft_all_characters; indices restricts the
    evaluation to a subset of characters (used for timing at large q).
    """
    n = table.order
    coeffs = np.asarray(coeffs, dtype=complex)
    if coeffs.shape != (n,):
        raise DomainError(f"coefficient array must have length q-1 = {n}")
    b = coeffs[table.powers - 1]
    m = np.arange(n, dtype=np.int64)
    js = np.arange(n, dtype=np.int64) if indices is None else np.asarray(indices, dtype=np.int64)
    out = np.empty(js.size, dtype=complex)
    for i, j in enumerate(js):
        out[i] = np.dot(b, table.roots[(j * m) % n])
    return out


def fold_residues(q: int, values: np.ndarray) -> np.ndarray:
    """Collapse an array indexed by n = 1..len onto residues 1..q-1 mod q.

    Entries at indices divisible by q must vanish (characters are zero there).
    """
    values = np.asarray(values)
    n_idx = np.arange(1, values.size + 1)
    mult = n_idx % q == 0
    if np.any(values[mult] != 0):
        raise DomainError("coefficients at multiples of q must be zero")
    out = np.zeros(q, dtype=np.result_type(values.dtype, np.float64))
    np.add.at(out, n_idx % q, values)
    return out[1:]


@dataclass
class DiagonalReport:
    q: int
    lhs: complex
    rhs: complex
    diff: float
    scale: float


def diagonal_decomposition_check(
    table: CharacterTable, c: np.ndarray, e: np.ndarray
) -> DiagonalReport:
    """Check the orthogonality identity that extracts diagonal terms.

    lhs = sum over all characters of (sum_m c_m chi(m)) (sum_n e_n chibar(n));
    rhs = phi(q) * sum over pairs m = n (mod q), both coprime to q, of c_m e_n.
    Both sides are computed independently; arrays are indexed by n starting
    at 1 and must be supported below q (and vanish at multiples of q).
    """
    q = table.q
    c = np.asarray(c, dtype=complex)
    e = np.asarray(e, dtype=complex)
    for arr, name in ((c, "c"), (e, "e")):
        if arr.size >= q and np.any(arr[q - 1 :] != 0):
            raise DomainError(f"{name} must be supported on n < q")
    fc = fold_residues(q, c)
    fe = fold_residues(q, e)
    A = dft_all_characters(table, fc)
    Bbar = np.conj(dft_all_characters(table, np.conj(fe)))
    lhs = _csum(A * Bbar)
    rhs = complex(q - 1) * _csum(fc * fe)
    scale = float((q - 1) * np.sum(np.abs(fc)) * np.sum(np.abs(fe)))
    return DiagonalReport(q=q, lhs=lhs, rhs=rhs, diff=abs(lhs - rhs), scale=max(scale, 1.0))
