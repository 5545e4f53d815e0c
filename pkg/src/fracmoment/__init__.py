"""fracmoment: a verification lab for fractional moments of Dirichlet L-functions.

Submodules:
    sieve       multiplicative coefficient sequences (divisor powers, weighted
                polynomial and mollifier coefficients, shifted series)
    characters  character tables mod prime q, orthogonality, group DFT
    lvalues     central L-values by Hurwitz oracle, smoothed sum, and AFE
    moments     fractional moments, twisted sums, the Holder chain
    contours    Perron/Hankel weights, fractional zeta powers, the paired-shift
                double integral and its divisor-sum oracle
    cli         the `fracmoment` command-line front door
"""

from .characters import (
    CharacterTable,
    build_table,
    character_sum,
    chi_value,
    dft_all_characters,
    diagonal_decomposition_check,
    is_prime,
    naive_character_sums,
    parity_restricted_sum,
)
from .contours import (
    ContourPath,
    QuadratureResult,
    eta_stability,
    hankel_recip_gamma,
    paired_shift_check,
    perron_weight,
    quarter_power_final_check,
    vertical_quadrature,
    zeta_frac_power,
)
from .errors import ConvergenceError, DomainError
from .lvalues import (
    LValueRecord,
    WWeightSpec,
    hurwitz_zeta,
    l_half_oracle,
    l_half_smoothed,
    l_square_afe,
    w_weight,
)
from .moments import (
    HolderReport,
    MomentParams,
    MomentReport,
    evaluate_polynomial_all,
    holder_chain_check,
    holder_exponents,
    moment_k,
    p4_bound_check,
    s_lower,
    s_upper,
    scaling_survey,
)
from .sieve import (
    CoefficientSeries,
    FactorSieve,
    ShiftVector,
    dirichlet_convolve,
    divisor_coeff,
    divisor_series,
    mollifier_coeffs,
    shifted_series,
    weighted_poly_coeffs,
)

__version__ = "0.1.0"
