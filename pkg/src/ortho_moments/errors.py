"""Exception hierarchy shared by the computation modules and the CLI."""


class OrthoMomentsError(Exception):
    """Base class for all library errors."""


class ParityError(OrthoMomentsError, ValueError):
    """An exponent has the wrong parity for the requested formula."""


class DomainError(OrthoMomentsError, ValueError):
    """An argument (usually n) lies outside the formula's domain."""


class ContractError(OrthoMomentsError, ValueError):
    """Malformed or mismatched arguments."""


class ResourceLimitError(OrthoMomentsError):
    """A degree or enumeration bound was exceeded."""

    def __init__(self, what, value, bound):
        self.value = value
        self.bound = bound
        super().__init__(f"{what} {value} exceeds the limit {bound}")


class SingularMatrixError(OrthoMomentsError, ArithmeticError):
    """Exact elimination met a column with no usable pivot."""

    def __init__(self, column):
        self.column = column
        super().__init__(f"zero pivot in column {column}")


class GramSingularError(SingularMatrixError):
    """The Gram matrix of pairings is not invertible at this n."""

    def __init__(self, k, n):
        self.k = k
        self.n = n
        OrthoMomentsError.__init__(self, f"gram-singular at n={n} (k={k})")
        self.column = None


class InconsistentSystemError(OrthoMomentsError, ArithmeticError):
    """A singular linear system has no solution for the given right-hand side."""
