"""Exact coefficients of eta(q)^-24 and the Vafa-Witten invariants of K3 surfaces built from them."""
from .asymptotics import asymptotic_report, main_term_a, main_term_family
from .cyclotomic import CyclotomicValue, FractionalSeries
from .dedekind import UnitPhase, dedekind_sum, omega24_phase
from .invariants import (
    InvariantFamily,
    alpha,
    alpha1,
    alpha2,
    alpha2_prime,
    alpha3,
    alpha3_prime,
    expand_partition_function,
)
from .polynomial import RationalPolynomial, hermite, is_hyperbolic, real_root_count
from .qseries import CoefficientTable, eta_inv24_oracle, eta_inv24_table, sigma1
from .rademacher import a_exact, a_resolved, bessel_I13
from .turan import hankel_check, jensen_poly, log_concave_at, renormalized_jensen, turan_scan

__version__ = "0.1.0"
