"""Sieve weights, admissible tuples and their empirical checks."""

from .arith import factor_segment, liouville_values, sieve_primes
from .errors import InputError, PreconditionError, ResourceError
from .tuples import KTuple, is_admissible, min_diameter_search, residue_count, roots_mod, singular_series
from .weights import WeightParams, batch_lambda_R, lambda_R, weight_a

__version__ = "0.1.0"
