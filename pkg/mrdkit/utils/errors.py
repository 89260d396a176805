"""
Exception types raised by the mrdkit algebra modules
"""


class MrdkitError(Exception):
    """Base class for every error raised by mrdkit"""


class NotPrime(MrdkitError):
    """The characteristic (or the order passed as q) is not a prime / prime power"""


class BadPolynomial(MrdkitError):
    """A supplied defining polynomial is not monic or has the wrong degree"""


class Reducible(MrdkitError):
    """A supplied defining polynomial is reducible"""

    def __init__(self, poly):
        super().__init__(f"polynomial {list(poly)} is reducible")
        self.poly = tuple(poly)


class Overflow(MrdkitError):
    """q^n does not fit the representable range"""


class TooLarge(MrdkitError):
    """An exhaustive enumeration would exceed its cap"""

    def __init__(self, count, cap, what="enumeration"):
        super().__init__(f"{what} needs {count} steps, cap is {cap}")
        self.count = count
        self.cap = cap
        self.what = what


class ShapeMismatch(MrdkitError):
    """Matrix or code shapes do not conform"""


class WrongOrientation(MrdkitError):
    """Codes live in k^{m x n} with m >= n; transpose before constructing"""


class Singular(MrdkitError):
    """A matrix that must be invertible is not"""


class SingularInput(MrdkitError):
    """A square-determinant test was asked about a singular matrix"""


class CharTwo(MrdkitError):
    """The operation needs odd characteristic"""


class NotSymmetric(MrdkitError):
    """A matrix that must be symmetric is not"""


class NonSquareDet(MrdkitError):
    """A symmetric matrix has non-square determinant, so it is not X X^T"""


class BadEll(MrdkitError):
    """Gabidulin dimension parameter out of range"""


class OddN(MrdkitError):
    """The operation needs an even extension degree n"""


class NotApplicable(MrdkitError):
    """Preconditions of an obstruction certificate are not met"""


class EmptyCode(MrdkitError):
    """Minimum distance is undefined for the zero code"""


class InvariantError(MrdkitError, AssertionError):
    """A construction-time mathematical invariant failed"""


def require(condition, message):
    """Raise InvariantError(message) unless condition holds"""
    if not condition:
        raise InvariantError(message)


class BadFile(MrdkitError):
    """A code, matrix or certificate file is malformed"""
