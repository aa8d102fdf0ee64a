# partdist - Partition Distributions Module
"""
Exact distributions of the cycle type of a uniform random permutation.
Includes partition enumeration, the pmf of X and Y, closed-form moments with
enumeration oracles, the joint MGF of Y, X expectations and conjecture fits,
and a seeded Monte Carlo sampler.
"""

from .errors import (
    PartitionDistributionError,
    InvalidPartitionError,
    ExactArithmeticError,
    OutOfDomainError,
    SingularSystemError,
    ConjectureFormMismatch,
    InsufficientTrialsError,
)
from .partitions import (
    Partition,
    MultiplicityVector,
    PartitionVector,
    enumerate_partitions,
    partition_number,
    to_multiplicity,
    from_multiplicity,
    to_partition_vector,
    delete_part,
    insert_part,
)
from .distribution import build_pmf, pmf_of, verify_fine_identity, moment_report
from .mgf import SymbolicMGF, build_mgf, verify_derivative_recursion
from .xmoments import XExpectationTable, BinomialFit, x_expectations, fit_binomial_basis
from .sampler import SampleRun, empirical_moments, chi_square_report

__all__ = [
    'PartitionDistributionError',
    'InvalidPartitionError',
    'ExactArithmeticError',
    'OutOfDomainError',
    'SingularSystemError',
    'ConjectureFormMismatch',
    'InsufficientTrialsError',
    'Partition',
    'MultiplicityVector',
    'PartitionVector',
    'enumerate_partitions',
    'partition_number',
    'to_multiplicity',
    'from_multiplicity',
    'to_partition_vector',
    'delete_part',
    'insert_part',
    'build_pmf',
    'pmf_of',
    'verify_fine_identity',
    'moment_report',
    'SymbolicMGF',
    'build_mgf',
    'verify_derivative_recursion',
    'XExpectationTable',
    'BinomialFit',
    'x_expectations',
    'fit_binomial_basis',
    'SampleRun',
    'empirical_moments',
    'chi_square_report',
]
