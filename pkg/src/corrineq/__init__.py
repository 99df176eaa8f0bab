"""Exact evaluation of the partition-indexed correlation functional E_n."""
from .algebra import IncrementPolynomial, Rational, UniPoly, format_rational, parse_rational
from .coefficients import (
    b_formula,
    b_oracle,
    f_closed_form,
    f_partition_sum,
    verify_e200,
)
from .errors import ConfigurationError, ContractError, DomainError
from .functional import FunctionalInstance, e_delta, e_lambda, e_n, e_sigma, expand_e_n
from .partitions import (
    IntegerPartition,
    SetPartition,
    c_lambda,
    count_shapes,
    enumerate_level_matrices,
    enumerate_set_partitions,
    rising_factorial_identity_check,
    shape,
)
from .series import (
    FunctionSeries,
    ScalarSeries,
    check_nonnegativity,
    corollary_direct,
    corollary_via_en,
)
from .spaces import (
    ChainSpace,
    MonotoneFn,
    SubsetLattice,
    expectation,
    fkg_check,
    random_fkg_measure,
    random_monotone_fn,
)

__version__ = "0.1.0"
