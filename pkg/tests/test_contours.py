import math

import numpy as np
import pytest

from fracmoment.contours import (
    ContourPath,
    eta_stability,
    hankel_recip_gamma,
    paired_shift_check,
    paired_shift_oracle,
    paired_shift_ratio_sweep,
    perron_weight,
    perron_weight_closed_form,
    quarter_power_final_check,
    vertical_quadrature,
    zeta_frac_power,
)
from fracmoment.errors import ConvergenceError, DomainError
from fracmoment.lvalues import hurwitz_zeta
from fracmoment.sieve import ShiftVector, divisor_series


class TestVerticalQuadrature:
    def test_gaussian_against_closed_form(self):
        # (1/2 pi i) int e^{w^2} dw on Re w = 0 equals 1/(2 sqrt(pi))
        path = ContourPath(kind="vertical", c=0.0, T=8.0, nodes_per_unit=20)
        res = vertical_quadrature(lambda w: np.exp(w**2), path)
        assert res.converged
        assert res.value.real == pytest.approx(1.0 / (2.0 * math.sqrt(math.pi)), abs=1e-10)

    def test_conjugate_symmetric_integrand_is_real(self):
        path = ContourPath(kind="vertical", c=0.5, T=8.0, nodes_per_unit=20)
        res = vertical_quadrature(lambda w: np.exp(w**2), path)
        assert abs(res.value.imag) < 1e-10

    def test_doubling_T_stable(self):
        f = lambda w: np.exp(w**2)
        a = vertical_quadrature(f, ContourPath(c=0.0, T=8.0, nodes_per_unit=40))
        b = vertical_quadrature(f, ContourPath(c=0.0, T=16.0, nodes_per_unit=40))
        assert abs(a.value - b.value) < 1e-9

    def test_budget_flag_on_slow_decay(self):
        # |t|^{-1.05} decay cannot meet 1e-9 within a tiny node budget
        f = lambda w: (1 + np.abs(w.imag)) ** -1.05
        res = vertical_quadrature(f, ContourPath(c=0.0, T=50.0, nodes_per_unit=10),
                                  tol=1e-12, max_nodes=4000)
        assert not res.converged
        assert res.error_estimate > 0

    def test_path_validation(self):
        with pytest.raises(DomainError):
            ContourPath(kind="spiral")
        with pytest.raises(DomainError):
            ContourPath(T=-1.0)
        with pytest.raises(DomainError):
            ContourPath(nodes_per_unit=2)


class TestPerronWeight:
    @pytest.mark.parametrize("order,x,want", [
        (2, math.e, 1.0),
        (2, 1 / math.e, 0.0),
        (3, math.e**2, 2.0),
    ])
    def test_examples(self, order, x, want):
        assert perron_weight(order, x) == pytest.approx(want, abs=1e-6)

    @pytest.mark.parametrize("order", [2, 3])
    @pytest.mark.parametrize("x", [2.0, math.e, 10.0, 100.0])
    def test_closed_forms(self, order, x):
        got = perron_weight(order, x)
        assert abs(got - perron_weight_closed_form(order, x)) < 1e-6

    def test_boundary_rejected(self):
        with pytest.raises(DomainError):
            perron_weight(2, 1.0)


class TestHankel:
    @pytest.mark.parametrize("alpha", [1.0, 1.5, 2.0, 2.25, 2.5])
    def test_reciprocal_gamma(self, alpha):
        got = hankel_recip_gamma(alpha)
        assert abs(got * math.gamma(alpha) - 1.0) < 1e-5

    def test_arm_truncation_error_budget(self):
        got = hankel_recip_gamma(2.25, arm=12.0)
        assert abs(got - 1.0 / math.gamma(2.25)) < 1e-6 + math.exp(-12.0)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            hankel_recip_gamma(-1.0)
        with pytest.raises(DomainError):
            hankel_recip_gamma(2.0, arm=5.0)


class TestZetaFracPower:
    def test_square_at_two(self):
        want = float(hurwitz_zeta(2.0, 1.0).real) ** 2
        assert zeta_frac_power(2.0, 2.0).real == pytest.approx(want, rel=1e-10)
        assert zeta_frac_power(2.0, 2.0).real == pytest.approx(2.705808084277845, rel=1e-10)

    def test_quarter_power_near_pole(self):
        z = 1e-3
        val = zeta_frac_power(0.25, 1 + z)
        assert abs(val * z**0.25 - 1) < 1e-2

    def test_reciprocal_root_consistency(self):
        a = zeta_frac_power(0.5, 2.0)
        b = zeta_frac_power(-0.5, 2.0)
        assert (a * b).real == pytest.approx(1.0, rel=1e-10)
        assert abs((a * b).imag) < 1e-12

    def test_alpha_one_reduces_to_zeta(self):
        for s in (2.0, 1.5, 1.2 + 0.7j, 0.8 + 2.0j):
            assert abs(zeta_frac_power(1.0, s) - hurwitz_zeta(s, 1.0)) < 1e-10

    @pytest.mark.parametrize("s", [2.0, 1.1, 1 + 0.01j])
    @pytest.mark.parametrize("a,b", [(0.5, 0.5), (1 / 3, 2 / 3), (0.25, 0.25)])
    def test_power_addition(self, s, a, b):
        lhs = zeta_frac_power(a, s) * zeta_frac_power(b, s)
        rhs = zeta_frac_power(a + b, s)
        assert abs(lhs - rhs) < 1e-9 * max(1.0, abs(rhs))

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            zeta_frac_power(0.5, 1.0)
        with pytest.raises(DomainError):
            zeta_frac_power(0.5, 0.3)
        with pytest.raises(DomainError):
            zeta_frac_power(0.5, 0.8)  # real, left of the pole: ambiguous branch


class TestPairedShift:
    def test_tiny_y_numeric_matches_oracle(self):
        rep = paired_shift_check(1, 3.0, 1.0, 10.0)
        assert rep.rel_err < 1e-3
        assert rep.gamma == 5.0
        assert abs(rep.numeric_imag) < 1e-9 * abs(rep.numeric)

    def test_y_1e4_numeric_matches_oracle(self):
        rep = paired_shift_check(1, 3.0, 1.0, 1e4)
        assert rep.rel_err < 1e-3

    @pytest.mark.parametrize("alpha,beta,y", [(2.5, 0.5, 1e3), (4.0, 1.0, 1e3), (3.0, 0.25, 100.0)])
    def test_more_parameter_triples(self, alpha, beta, y):
        rep = paired_shift_check(1, alpha, beta, y)
        assert rep.rel_err < 1e-3

    def test_oracle_sweep_band(self):
        rows = paired_shift_ratio_sweep(1, 3.0, 1.0, [1e3, 1e4, 1e5, 1e6])
        ratios = [r[2] for r in rows]
        assert max(ratios) / min(ratios) < 3.0

    def test_m2_oracle_against_direct_enumeration(self):
        # independent four-loop enumeration at tiny y
        y = 20.0
        alpha, beta = 3.0, 1.0
        got = paired_shift_oracle(2, alpha, beta, y)

        def w(u):
            return math.log(u) ** (alpha - 1) / math.gamma(alpha) if u > 1 else 0.0

        want = 0.0
        for n11 in range(1, 20):
            for n12 in range(1, 20):
                if n11 * n12 >= y:
                    continue
                for n21 in range(1, 20):
                    for n22 in range(1, 20):
                        if n21 * n22 >= y:
                            continue
                        want += (
                            1.0 / (n11 * n12 * n21 * n22)
                            * w(y / (n11 * n12)) * w(y / (n21 * n22))
                            * w(y / (n11 * n21)) * w(y / (n12 * n22))
                        )
        assert got == pytest.approx(want, rel=1e-10)

    def test_m2_has_no_numeric_path(self):
        rep = paired_shift_check(2, 3.0, 1.0, 100.0)
        assert rep.numeric is None
        assert rep.gamma == 2 * 2 * 3.0 + 4 * 1.0 - 4

    def test_hypothesis_violations(self):
        with pytest.raises(DomainError):
            paired_shift_check(1, 2.0, 1.0, 100.0)  # alpha must exceed 2
        with pytest.raises(DomainError):
            paired_shift_check(1, 3.0, -1.0, 100.0)
        with pytest.raises(DomainError):
            paired_shift_check(3, 3.0, 1.0, 100.0)


class TestQuarterPower:
    def test_y_1e4(self):
        rep = quarter_power_final_check(1e4)
        assert rep.rel_err < 1e-2
        assert rep.numeric > 0 and rep.oracle > 0
        assert rep.gamma == pytest.approx(13.0 / 4.0)

    def test_oracle_summands_nonnegative(self, sieve10k):
        d = divisor_series(0.25, 1000, sieve10k)
        assert np.all(d.values[1:] >= 0)

    def test_domain(self):
        with pytest.raises(DomainError):
            quarter_power_final_check(0.5)


class TestEtaStability:
    def test_single_shift_settles_to_one(self):
        rep = eta_stability(1, 0.5, ShiftVector((0.3,)), [10**5, 10**6])
        assert rep.drift < 1e-3
        assert abs(rep.estimates[-1] - 1.0) < 1e-3

    def test_s2_four_shifts(self):
        rep = eta_stability(2, 0.5, ShiftVector((0.3, 0.3, 0.3, 0.3)), [10**5, 10**6])
        assert rep.drift < 1e-3

    def test_large_shifts_euler_factors(self):
        # with Re shifts = 5 the tail beyond p = 3 is provably tiny and the
        # estimate equals the (trivial) product of the p = 2, 3 factors
        rep = eta_stability(1, 5.0, ShiftVector((5.0,)), [10**3, 10**4])
        assert rep.drift < 1e-6
        assert abs(rep.estimates[-1] - 1.0) < 1e-6

    def test_convergence_precondition(self):
        with pytest.raises(ConvergenceError):
            eta_stability(1, 0.1, ShiftVector((0.05,)), [10**3, 10**4])
