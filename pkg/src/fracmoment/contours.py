"""Numerical contour integration bench for the identities the moment bounds rest on.

Checks implemented here, each against an independent closed form or
divisor-sum oracle:

* vertical-line quadrature with refinement (shared kernel),
* the Perron weights (1/2 pi i) int x^w w^{-m} dw for m = 2, 3,
* the truncated Hankel loop for 1/Gamma(alpha),
* fractional powers of zeta on the principal branch, with continuity
  tracking along a homotopy from the real ray,
* the paired-shift double integral
  (1/2 pi i)^2 iint zeta^beta(1 + z1 + z2) y^{z1+z2} (z1 z2)^{-alpha} dz
  on the lines Re z = 1/log y, whose exact expansion is a weighted divisor
  sum (the quarter-power final integral is its alpha=5/2, beta=1/4 instance),
* stability of the correction factor eta in the Euler-product factorization
  sum_n sigma_shifts(n) n^{-(1+w0)} = prod_i zeta^{1/2s}(1 + w0 + w_i) * eta.

The double integral is evaluated after substituting z = (1 + i t)/log y, which
moves all the log-y oscillation into a unit-frequency factor; the two axes then
decouple through one FFT convolution over t1 + t2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.signal import fftconvolve

from .errors import ConvergenceError, DomainError
from .lvalues import zeta_values
from .sieve import FactorSieve, ShiftVector, divisor_series, shifted_series

# ---------------------------------------------------------------------------
# Paths and the shared vertical-line kernel
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ContourPath:
    """A truncated vertical line or a truncated Hankel loop.

    kind "vertical": the segment c - iT .. c + iT.
    kind "hankel":   lower arm (-arm - i rho .. -i rho), semicircle of radius
                     rho through +rho, upper arm back out to -arm + i rho.
    """

    kind: str = "vertical"
    c: float = 0.25
    T: float = 40.0
    rho: float = 1.0
    arm: float = 25.0
    nodes_per_unit: int = 20

    def __post_init__(self):
        if self.kind not in ("vertical", "hankel"):
            raise DomainError(f"unknown path kind {self.kind!r}")
        if self.T <= 0 or self.rho <= 0:
            raise DomainError("path extents must be positive")
        if self.nodes_per_unit < 10:
            raise DomainError("need at least 10 nodes per unit length")


@dataclass
class QuadratureResult:
    value: complex
    error_estimate: float
    nodes: int
    converged: bool


def vertical_quadrature(
    f: Callable[[np.ndarray], np.ndarray],
    path: ContourPath,
    tol: float = 1e-9,
    max_nodes: int = 2_000_000,
) -> QuadratureResult:
    """(1/2 pi i) int f(w) dw along the truncated line, refined until two
    successive trapezoid levels differ by less than tol.

    The integrand handle receives the whole complex node array.  A budget hit
    leaves converged False and reports the last refinement gap.
    """
    if path.kind != "vertical":
        raise DomainError("vertical_quadrature requires a vertical path")
    nodes = max(int(2 * path.T * path.nodes_per_unit) + 1, 33)
    prev = None
    while True:
        t = np.linspace(-path.T, path.T, nodes)
        w = path.c + 1j * t
        vals = np.asarray(f(w), dtype=complex)
        wts = np.ones(nodes)
        wts[0] = wts[-1] = 0.5
        cur = complex(np.sum(vals * wts)) * (t[1] - t[0]) / (2 * math.pi)
        if prev is not None and abs(cur - prev) < tol:
            return QuadratureResult(cur, abs(cur - prev), nodes, True)
        if 2 * nodes - 1 > max_nodes:
            gap = abs(cur - prev) if prev is not None else math.inf
            return QuadratureResult(cur, gap, nodes, False)
        prev = cur
        nodes = 2 * nodes - 1


# ---------------------------------------------------------------------------
# Perron weights and the Hankel loop
# ---------------------------------------------------------------------------


def perron_weight(order: int, x: float, T: float = 4000.0, h: float = 0.05) -> float:
    """(1/2 pi i) int_(c) x^w w^{-order} dw: log^{order-1}(x)/(order-1)! for
    x > 1 and 0 for x < 1.

    The line is taken at c = 1/|log x| and reparametrized so the oscillation
    has unit frequency; a first-order endpoint correction removes most of the
    truncation tail of the slowly decaying w^{-order} factor.
    """
    if order not in (2, 3):
        raise DomainError("Perron weight implemented for orders 2 and 3")
    if x <= 0:
        raise DomainError("x must be positive")
    if x == 1.0:
        raise DomainError("x = 1 is the boundary case and is excluded")
    L = math.log(x)
    aL = abs(L)
    sgn = 1.0 if L > 0 else -1.0
    c = 1.0 / aL
    u = np.arange(0.0, T + h / 2, h)
    phi = (c + 1j * u / aL) ** (-order)
    wts = np.ones(u.size)
    wts[0] = wts[-1] = 0.5
    integral = complex(np.sum(np.exp(1j * sgn * u) * phi * wts)) * h
    # by parts: int_T^inf e^{i sgn u} phi du = -e^{i sgn T} phi(T)/(i sgn) + smaller
    integral += -np.exp(1j * sgn * T) * phi[-1] / (1j * sgn)
    return float((math.e * integral / (math.pi * aL)).real)


def perron_weight_closed_form(order: int, x: float) -> float:
    if x < 1:
        return 0.0
    return math.log(x) ** (order - 1) / math.factorial(order - 1)


def _hankel_level(alpha: float, arm: float, npu: int) -> float:
    pieces = []
    n1 = max(int(arm * npu), 33)
    sig = np.linspace(-arm, 0.0, n1)
    pieces.append((sig - 1j, np.full(n1, sig[1] - sig[0], dtype=complex)))
    n2 = max(int(math.pi * npu), 33)
    th = np.linspace(-math.pi / 2, math.pi / 2, n2)
    circ = np.exp(1j * th)
    pieces.append((circ, 1j * circ * (th[1] - th[0])))
    sig = np.linspace(0.0, -arm, n1)
    pieces.append((sig + 1j, np.full(n1, sig[1] - sig[0], dtype=complex)))
    total = 0j
    for w, dw in pieces:
        f = np.exp(w) * w ** (-alpha) * dw
        f[0] *= 0.5
        f[-1] *= 0.5
        total += np.sum(f)
    return float((total / (2j * math.pi)).real)


def hankel_recip_gamma(alpha: float, arm: float = 25.0, nodes_per_unit: int = 400) -> float:
    """1/Gamma(alpha) from the loop integral of w^{-alpha} e^w over a truncated
    Hankel contour (unit-radius loop, arms of length `arm` at height +-1).

    The dropped arms beyond -arm contribute O(e^{-arm}).
    """
    if alpha <= 0:
        raise DomainError("alpha must be positive")
    if arm < 10:
        raise DomainError("arm must be at least 10")
    coarse = _hankel_level(alpha, arm, nodes_per_unit)
    fine = _hankel_level(alpha, arm, 2 * nodes_per_unit)
    # one Richardson step on the O(h^2) trapezoid error
    return fine + (fine - coarse) / 3.0


# ---------------------------------------------------------------------------
# Fractional powers of zeta
# ---------------------------------------------------------------------------


def _log_zeta_walk(points: np.ndarray) -> complex:
    """log zeta tracked continuously along a contiguous point sequence,
    anchored at the principal value of the first point."""
    zv = zeta_values(points)
    if np.any(zv == 0):
        raise DomainError("homotopy passes through a zero of zeta")
    logz = np.log(zv[0])
    ratios = zv[1:] / zv[:-1]
    logz += np.sum(np.log(ratios))
    return complex(logz)


def zeta_frac_power(alpha: float, s: complex) -> complex:
    """zeta(s)^alpha on the principal branch continued from the real ray.

    The branch is fixed by walking from s0 = 2 (where zeta is real positive)
    to s: vertically to 2 + i Im s, then horizontally to s, accumulating the
    logarithm by small-step ratios.  Real s on (1/2, 1] is refused: the only
    continuation paths cross the pole from one side or the other, so the
    branch there is genuinely ambiguous.
    """
    s = complex(s)
    if s == 1:
        raise DomainError("zeta has a pole at s = 1")
    if s.real <= 0.5:
        raise DomainError("require Re s > 1/2")
    if s.imag == 0 and s.real <= 1:
        raise DomainError("real s <= 1: branch ambiguous across the pole")
    legs = []
    anchor = 2.0 + 0j
    corner = complex(2.0, s.imag)
    for a, b in ((anchor, corner), (corner, s)):
        if a == b:
            continue
        # keep steps well below the leg's distance to the pole at s = 1
        tproj = ((1 - a) * np.conj(b - a)).real / abs(b - a) ** 2
        tproj = min(max(tproj, 0.0), 1.0)
        dist = max(abs(a + tproj * (b - a) - 1), 1e-4)
        step = min(0.02, dist / 4)
        n = max(8, int(abs(b - a) / step) + 2)
        pts = a + (b - a) * np.linspace(0.0, 1.0, n)
        # refine geometrically toward an endpoint close to the pole
        if abs(b - 1) < 0.1:
            extra = b + (pts[-2] - b) * np.exp(-np.linspace(0.0, 8.0, 40))
            pts = np.concatenate([pts[:-1], extra[1:], [b]])
        legs.append(pts)
    points = np.concatenate([legs[0]] + [leg[1:] for leg in legs[1:]]) if legs else np.array([s])
    return complex(np.exp(alpha * _log_zeta_walk(points)))


def zeta_power_line(beta: float, s_grid: np.ndarray, anchor_index: Optional[int] = None) -> np.ndarray:
    """zeta^beta along a contiguous grid of s values, branch-tracked from an
    anchor point where zeta is (nearly) real positive."""
    s_grid = np.asarray(s_grid, dtype=complex)
    zv = zeta_values(s_grid)
    if anchor_index is None:
        anchor_index = s_grid.size // 2
    logs = np.empty(s_grid.shape, dtype=complex)
    logs[anchor_index] = np.log(zv[anchor_index])
    if anchor_index + 1 < s_grid.size:
        inc = np.log(zv[anchor_index + 1 :] / zv[anchor_index : -1])
        logs[anchor_index + 1 :] = logs[anchor_index] + np.cumsum(inc)
    if anchor_index > 0:
        inc = np.log(zv[: anchor_index] / zv[1 : anchor_index + 1])[::-1]
        logs[:anchor_index] = (logs[anchor_index] + np.cumsum(inc))[::-1]
    return np.exp(beta * logs)


# ---------------------------------------------------------------------------
# The paired-shift double integral and its divisor-sum oracle
# ---------------------------------------------------------------------------


@dataclass
class PairedShiftReport:
    m: int
    alpha: float
    beta: float
    y: float
    gamma: float
    oracle: float
    numeric: Optional[float] = None
    numeric_imag: float = 0.0
    error_estimate: float = 0.0
    rel_err: Optional[float] = None

    @property
    def ratio(self) -> float:
        """oracle / (log y)^gamma, the quantity the lower bound controls."""
        return self.oracle / math.log(self.y) ** self.gamma


def _double_line_numeric(alpha: float, beta: float, y: float, T: float, h: float) -> complex:
    """The 2-D line integral after z = (1 + i t)/log y on both axes.

    The zeta factor depends only on t1 + t2, so the double sum collapses to
    one convolution of the axis factor e^{it} (1 + it)^{-alpha} with itself.
    """
    L = math.log(y)
    t = np.arange(-T, T + h / 2, h)
    n = t.size
    phi = np.exp(1j * t) * (1 + 1j * t) ** (-alpha)
    wts = np.ones(n)
    wts[0] = wts[-1] = 0.5
    conv = fftconvolve(phi * wts, phi * wts)
    tau = (np.arange(2 * n - 1) - (n - 1)) * h
    zb = zeta_power_line(beta, 1 + (2 + 1j * tau) / L)
    total = complex(np.sum(zb * conv)) * h * h
    pref = math.e**2 * L ** (2 * alpha - 2) / (4 * math.pi**2)
    return pref * total


def paired_shift_oracle(
    m: int, alpha: float, beta: float, y: float, sieve: Optional[FactorSieve] = None
) -> float:
    """Exact divisor-sum expansion of the paired-shift integral.

    m = 1: sum_{n < y} d_beta(n)/n * (log^{alpha-1}(y/n)/Gamma(alpha))^2.
    m = 2: the four-index analogue with one Perron weight per row and column
    product; evaluated by blocked outer products over row pairs.
    """
    N = int(math.ceil(y)) - 1 if float(y).is_integer() else int(math.floor(y))
    if sieve is None or sieve.limit < N:
        sieve = FactorSieve.build(max(N, 2))
    d = divisor_series(beta, N, sieve).values
    if m == 1:
        n = np.arange(1, N + 1)
        w = np.log(y / n) ** (alpha - 1) / math.gamma(alpha)
        return float(np.sum(d[1 : N + 1] / n * w * w))
    if m != 2:
        raise DomainError("oracle implemented for m = 1 and m = 2")
    if y > 3000:
        raise DomainError("m = 2 oracle is quartic in log y; limited to y <= 3000")
    # integer-indexed Perron weight f[u] = log^{alpha-1}(y/u)/Gamma(alpha), u < y
    u = np.arange(1, N + 1)
    f = np.zeros(N + 1)
    f[1:] = np.log(y / u) ** (alpha - 1) / math.gamma(alpha)
    rows_a, rows_b, rows_c = [], [], []
    for a in range(1, N + 1):
        bmax = N // a
        if bmax < 1:
            break
        b = np.arange(1, bmax + 1)
        keep = a * b <= N
        b = b[keep]
        rows_a.append(np.full(b.size, a, dtype=np.int64))
        rows_b.append(b.astype(np.int64))
        rows_c.append(d[a] * d[b] / (a * b) * f[a * b])
    ra = np.concatenate(rows_a)
    rb = np.concatenate(rows_b)
    rc = np.concatenate(rows_c)
    total = 0.0
    block = 256
    for lo in range(0, ra.size, block):
        sa = ra[lo : lo + block, None] * ra[None, :]
        sb = rb[lo : lo + block, None] * rb[None, :]
        ga = np.where(sa <= N, f[np.minimum(sa, N)], 0.0)
        gb = np.where(sb <= N, f[np.minimum(sb, N)], 0.0)
        total += float(rc[lo : lo + block] @ (ga * gb) @ rc)
    return total


def paired_shift_check(
    m: int,
    alpha: float,
    beta: float,
    y: float,
    sieve: Optional[FactorSieve] = None,
    T: float = 400.0,
    h: float = 0.02,
    refine: bool = True,
) -> PairedShiftReport:
    """Compare the 2m-fold contour integral with its divisor-sum oracle.

    The numeric path is run only for m = 1 (a genuine 2-D quadrature); for
    m = 2 the 4-D grid is out of budget and the oracle alone is reported.
    gamma = 2 m alpha + m^2 beta - 2 m is the log-power the integral grows at.
    """
    if m not in (1, 2):
        raise DomainError("m must be 1 or 2")
    if alpha <= 2:
        raise DomainError("require alpha > 2")
    if beta <= 0:
        raise DomainError("require beta > 0")
    if y <= 2:
        raise DomainError("require y > 2")
    gamma = 2 * m * alpha + m * m * beta - 2 * m
    oracle = paired_shift_oracle(m, alpha, beta, y, sieve)
    rep = PairedShiftReport(m=m, alpha=alpha, beta=beta, y=y, gamma=gamma, oracle=oracle)
    if m == 1:
        val = _double_line_numeric(alpha, beta, y, T, h)
        rep.numeric = float(val.real)
        rep.numeric_imag = float(val.imag)
        if refine:
            val2 = _double_line_numeric(alpha, beta, y, T, h / 2)
            rep.error_estimate = abs(val2 - val)
            rep.numeric = float(val2.real)
        rep.rel_err = abs(rep.numeric - oracle) / abs(oracle)
    return rep


def quarter_power_final_check(
    y: float,
    sieve: Optional[FactorSieve] = None,
    T: float = 400.0,
    h: float = 0.02,
    refine: bool = True,
) -> PairedShiftReport:
    """The two-variable zeta^{1/4} integral with z^{-5/2} kernels.

    This is the paired-shift integral at m = 1, alpha = 5/2, beta = 1/4; its
    oracle is sum_{n<y} d_{1/4}(n)/n (log^{3/2}(y/n)/Gamma(5/2))^2 and the
    reference growth exponent is gamma = 13/4.
    """
    if y <= 1:
        raise DomainError("require y > 1")
    return paired_shift_check(1, 2.5, 0.25, y, sieve=sieve, T=T, h=h, refine=refine)


def paired_shift_ratio_sweep(
    m: int, alpha: float, beta: float, ys: Sequence[float], sieve: Optional[FactorSieve] = None
) -> list[tuple[float, float, float]]:
    """(y, oracle, oracle/(log y)^gamma) rows over a y sweep, oracle only."""
    gamma = 2 * m * alpha + m * m * beta - 2 * m
    out = []
    for y in ys:
        val = paired_shift_oracle(m, alpha, beta, y, sieve)
        out.append((float(y), val, val / math.log(y) ** gamma))
    return out


# ---------------------------------------------------------------------------
# Stability of the Euler-product correction factor
# ---------------------------------------------------------------------------


@dataclass
class EtaStabilityReport:
    s_param: int
    w0: complex
    shifts: tuple
    levels: tuple
    estimates: tuple
    drift: float


def eta_stability(
    s_param: int,
    w0: complex,
    shifts: ShiftVector,
    levels: Sequence[int],
    sieve: Optional[FactorSieve] = None,
) -> EtaStabilityReport:
    """Estimate eta = [sum_{n<=N} sigma_shifts(n) n^{-(1+w0)}] / prod_i
    zeta^{1/2s}(1 + w0 + w_i) at a ladder of cutoffs N.

    Successive estimates settling down is the convergence evidence; the exact
    factorization makes the limit 1, which the estimates approach.  Requires
    Re(w0 + w_i) > 0.2 so the truncated sums converge at desk cutoffs.
    """
    if not isinstance(shifts, ShiftVector):
        shifts = ShiftVector(tuple(shifts))
    w0 = complex(w0)
    for w in shifts.shifts:
        if (w0 + complex(w)).real <= 0.2:
            raise ConvergenceError(
                f"Re(w0 + {w}) <= 0.2: truncated sums will not settle at desk cutoffs"
            )
    levels = tuple(sorted(int(N) for N in levels))
    if len(levels) < 2:
        raise DomainError("need at least two cutoff levels")
    Nmax = levels[-1]
    if sieve is None or sieve.limit < Nmax:
        sieve = FactorSieve.build(Nmax)
    series = shifted_series("sigma", shifts, s_param, Nmax, sieve)
    n = np.arange(1, Nmax + 1)
    weighted = series.values[1:] * np.exp(-(1 + w0) * np.log(n))
    partial = np.cumsum(weighted)
    denom = 1 + 0j
    for w in shifts.shifts:
        denom *= zeta_frac_power(1.0 / (2 * s_param), 1 + w0 + complex(w))
    estimates = tuple(complex(partial[N - 1] / denom) for N in levels)
    drift = max(abs(estimates[i + 1] - estimates[i]) for i in range(len(estimates) - 1))
    return EtaStabilityReport(
        s_param=s_param,
        w0=w0,
        shifts=shifts.shifts,
        levels=levels,
        estimates=estimates,
        drift=drift,
    )
