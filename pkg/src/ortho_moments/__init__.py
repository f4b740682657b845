"""Exact polynomial integrals over the real orthogonal group O_n."""

from .closed_forms import (
    integral_n2,
    integral_two_row,
    joint_moments,
    one_row_integral,
    phi_two_row,
    phi_triangular,
)
from .errors import (
    DomainError,
    GramSingularError,
    OrthoMomentsError,
    ParityError,
    ResourceLimitError,
)
from .exact_arith import ExactRational, paper_double_factorial
from .monte_carlo import haar_sample, mc_integral
from .pairings import Pairing, enumerate_pairings
from .two_by_two import f_value
from .verify import Budget, PropertyId, verify
from .weingarten import gram_matrix, integral_oracle, weingarten_entry, weingarten_matrix

__version__ = "0.1.0"

__all__ = [
    "Budget",
    "DomainError",
    "ExactRational",
    "GramSingularError",
    "OrthoMomentsError",
    "Pairing",
    "ParityError",
    "PropertyId",
    "ResourceLimitError",
    "enumerate_pairings",
    "f_value",
    "gram_matrix",
    "haar_sample",
    "integral_n2",
    "integral_oracle",
    "integral_two_row",
    "joint_moments",
    "mc_integral",
    "one_row_integral",
    "paper_double_factorial",
    "phi_triangular",
    "phi_two_row",
    "verify",
    "weingarten_entry",
    "weingarten_matrix",
]
