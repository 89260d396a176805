"""
Finite field arithmetic for mrdkit

The base field k = F_q (q = p^e) is a galois FieldArray type built from the
context's base polynomial. The extension K = F_{q^n} is F_q[x]/(ext_poly);
its elements are coordinate vectors over F_q, constant term first.

Scans over K (normal basis, primitive element) visit elements in the order
of their integer encoding: sum(c_i * q^i) over the coordinate vector, so the
most significant coordinate is the highest power of x. Polynomial scans
compare coefficient tuples constant term first.
"""
import itertools
import logging
import sys
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import galois
import numpy as np

# Add repository root to path to import config
sys.path.append(str(Path(__file__).resolve().parents[2]))
from config.settings import MAX_QN, SCAN_CAP, SQRT_SCAN_LIMIT

from mrdkit.utils.errors import (
    BadPolynomial, CharTwo, MrdkitError, NotPrime, Overflow, Reducible,
    Singular, TooLarge, require,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FieldCtx:
    """
    Arithmetic context for F_p, F_q and K = F_{q^n}

    Polynomials are coefficient tuples, constant term first. base_poly has
    coefficients in F_p; ext_poly has coefficients in F_q given by their
    integer encodings.
    """
    p: int
    e: int
    n: int
    base_poly: tuple
    ext_poly: tuple

    @property
    def q(self):
        return self.p ** self.e

    @property
    def qn(self):
        return self.q ** self.n

    @cached_property
    def field(self):
        """galois FieldArray type for F_q"""
        return _base_field(self.p, self.e, self.base_poly)

    @cached_property
    def modulus(self):
        return galois.Poly(self.field(list(self.ext_poly)), order="asc")

    def zero(self):
        return FieldElem(self, self.field.Zeros(self.n))

    def one(self):
        return self.embed(self.field(1))

    def embed(self, scalar):
        """Embed an F_q scalar into K"""
        coeffs = self.field.Zeros(self.n)
        coeffs[0] = scalar
        return FieldElem(self, coeffs)

    def from_int(self, value):
        """Element of K with integer encoding `value`"""
        q = self.q
        digits = [(value // q ** i) % q for i in range(self.n)]
        return FieldElem(self, self.field(digits))

    def elements(self, start=0):
        """Iterate K in integer-encoding order, honoring SCAN_CAP"""
        if self.qn - start > SCAN_CAP:
            logger.debug("Scan over K truncated at %d elements", SCAN_CAP)
        for count, value in enumerate(range(start, self.qn)):
            if count >= SCAN_CAP:
                raise TooLarge(self.qn - start, SCAN_CAP, "scan of K")
            yield self.from_int(value)

    def describe(self):
        return {"p": self.p, "e": self.e, "n": self.n, "q": self.q, "qn": self.qn}


class FieldElem:
    """Element of K, stored as n coordinates over F_q (constant term first)"""
    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs):
        self.ctx = ctx
        self.coeffs = coeffs

    level = "K"

    def _poly(self):
        return galois.Poly(self.coeffs, order="asc")

    def _wrap(self, poly):
        coeffs = self.ctx.field.Zeros(self.ctx.n)
        asc = poly.coeffs[::-1]
        coeffs[:asc.size] = asc
        return FieldElem(self.ctx, coeffs)

    def __add__(self, other):
        return FieldElem(self.ctx, self.coeffs + other.coeffs)

    def __sub__(self, other):
        return FieldElem(self.ctx, self.coeffs - other.coeffs)

    def __neg__(self):
        return FieldElem(self.ctx, -self.coeffs)

    def __mul__(self, other):
        if not isinstance(other, FieldElem):
            return FieldElem(self.ctx, self.coeffs * other)
        return self._wrap((self._poly() * other._poly()) % self.ctx.modulus)

    def __pow__(self, exponent):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return self._wrap(pow(self._poly(), exponent, self.ctx.modulus))

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse in K")
        return self ** (self.ctx.qn - 2)

    def is_zero(self):
        return not np.any(self.coeffs != 0)

    def is_one(self):
        return self == self.ctx.one()

    def to_base(self):
        """Coerce to an F_q scalar; fails unless the element lies in F_q"""
        if np.any(self.coeffs[1:] != 0):
            raise ValueError(f"{self!r} is not in the base field")
        return self.coeffs[0]

    def __eq__(self, other):
        return isinstance(other, FieldElem) and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash(tuple(self.coeffs.tolist()))

    def __int__(self):
        q = self.ctx.q
        return sum(int(c) * q ** i for i, c in enumerate(self.coeffs.tolist()))

    def __repr__(self):
        return f"FieldElem({self.coeffs.tolist()})"


@dataclass(frozen=True, eq=False)
class Basis:
    """k-basis of K; kind is 'arbitrary', 'normal' or 'dual'"""
    elements: tuple
    kind: str = "arbitrary"

    def __post_init__(self):
        if np.linalg.matrix_rank(self.matrix) != len(self.elements):
            raise Singular("basis elements are linearly dependent over F_q")

    @cached_property
    def matrix(self):
        """Coordinate matrix: column j holds the coordinates of element j"""
        return coordinate_matrix(self.elements)

    @cached_property
    def inverse(self):
        return np.linalg.inv(self.matrix)

    def coordinates(self, alpha):
        """Coordinates of alpha with respect to this basis"""
        return self.inverse @ alpha.coeffs

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, index):
        return self.elements[index]

    def __eq__(self, other):
        return isinstance(other, Basis) and list(self.elements) == list(other.elements)

    __hash__ = object.__hash__


def coordinate_matrix(elements):
    """Stack coordinate vectors of K-elements as columns of an F_q matrix"""
    field = elements[0].ctx.field
    rows = np.array([alpha.coeffs.tolist() for alpha in elements], dtype=np.int64)
    return field(rows.T.copy())


def _base_field(p, e, base_poly):
    if e == 1:
        return galois.GF(p)
    poly = galois.Poly(galois.GF(p)(list(base_poly)), order="asc")
    return galois.GF(p ** e, irreducible_poly=poly)


def _smallest_irreducible(field, degree):
    """
    Lexicographically smallest monic irreducible polynomial over `field`

    Coefficient tuples are compared constant term first, each coefficient
    scanned through its integer encodings 0..order-1.
    """
    for count, tail in enumerate(itertools.product(range(field.order), repeat=degree)):
        if count >= SCAN_CAP:
            raise TooLarge(field.order ** degree, SCAN_CAP, "irreducible polynomial scan")
        poly = galois.Poly(field(list(tail) + [1]), order="asc")
        if poly.is_irreducible():
            return tuple(tail) + (1,)
    raise MrdkitError(f"no irreducible polynomial of degree {degree} found")


def _check_poly(field, poly, degree):
    poly = tuple(int(c) for c in poly)
    if len(poly) != degree + 1 or poly[-1] != 1:
        raise BadPolynomial(f"expected monic degree-{degree} polynomial, got {list(poly)}")
    if any(c < 0 or c >= field.order for c in poly):
        raise BadPolynomial(f"coefficients of {list(poly)} must lie in 0..{field.order - 1}")
    if degree > 1 and not galois.Poly(field(list(poly)), order="asc").is_irreducible():
        raise Reducible(poly)
    return poly


def field_ctx_new(p, e, n, base_poly=None, ext_poly=None):
    """
    Build a verified field context

    Args:
        p: Prime characteristic
        e: Degree of F_q over F_p
        n: Degree of K over F_q
        base_poly: Optional defining polynomial of F_q (constant term first)
        ext_poly: Optional defining polynomial of K over F_q

    Returns:
        FieldCtx whose polynomials are checked irreducible; omitted
        polynomials are the lexicographically smallest monic irreducibles
    """
    if not galois.is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if e < 1 or n < 1:
        raise MrdkitError("extension degrees e and n must be positive")
    if (p ** e) ** n > MAX_QN:
        raise Overflow(f"q^n = {p ** e}^{n} exceeds {MAX_QN}")

    prime_field = galois.GF(p)
    if base_poly is None:
        base_poly = _smallest_irreducible(prime_field, e)
    else:
        base_poly = _check_poly(prime_field, base_poly, e)

    field = _base_field(p, e, base_poly)
    if ext_poly is None:
        ext_poly = _smallest_irreducible(field, n)
    else:
        ext_poly = _check_poly(field, ext_poly, n)

    ctx = FieldCtx(p, e, n, tuple(base_poly), tuple(ext_poly))
    logger.debug("Field context q=%d n=%d ext_poly=%s", ctx.q, n, list(ext_poly))
    return ctx


def parse_prime_power(q):
    """Split a prime power q into (p, e)"""
    if q < 2 or not galois.is_prime_power(q):
        raise NotPrime(f"{q} is not a prime power")
    primes, exponents = galois.factors(q)
    return int(primes[0]), int(exponents[0])


def frobenius(alpha, i):
    """alpha^(q^i), by repeated q-th powering with i reduced mod n"""
    result = alpha
    for _ in range(i % alpha.ctx.n):
        result = result ** alpha.ctx.q
    return result


def conjugates(alpha):
    return [frobenius(alpha, i) for i in range(alpha.ctx.n)]


def rel_trace(alpha):
    """Trace of alpha from K down to F_q"""
    total = alpha.ctx.zero()
    for conj in conjugates(alpha):
        total = total + conj
    require(not np.any(total.coeffs[1:] != 0), f"trace of {alpha!r} left F_q; context corrupted")
    return total.coeffs[0]


def gram_matrix(basis):
    """Gram matrix (Trace(b_i b_j)) of the trace form"""
    elems = basis.elements
    n = len(elems)
    field = elems[0].ctx.field
    gram = field.Zeros((n, n))
    for i in range(n):
        for j in range(i, n):
            gram[i, j] = gram[j, i] = rel_trace(elems[i] * elems[j])
    return gram


def find_normal_basis(ctx):
    """First gamma in scan order whose conjugates form a basis"""
    for gamma in ctx.elements(start=1):
        conj = conjugates(gamma)
        if np.linalg.matrix_rank(coordinate_matrix(conj)) == ctx.n:
            logger.debug("Normal basis generator %r", gamma)
            return Basis(tuple(conj), "normal")
    raise MrdkitError("no normal basis found")


def dual_basis(basis):
    """Dual basis with Trace(b_i b*_j) = delta_ij"""
    ctx = basis.elements[0].ctx
    gram = gram_matrix(basis)
    coords = basis.matrix @ np.linalg.inv(gram)
    duals = tuple(FieldElem(ctx, coords[:, j].copy()) for j in range(len(basis)))
    for i, b in enumerate(basis.elements):
        for j, d in enumerate(duals):
            expected = 1 if i == j else 0
            require(rel_trace(b * d) == expected, f"dual basis equation ({i}, {j}) failed")
    return Basis(duals, "dual")


def _order_divisors(order):
    if order == 1:
        return []
    primes, _ = galois.factors(order)
    return [order // int(r) for r in primes]


def multiplicative_order_is(alpha, order):
    """True iff alpha has multiplicative order exactly `order`"""
    if alpha.is_zero() or not (alpha ** order).is_one():
        return False
    return all(not (alpha ** d).is_one() for d in _order_divisors(order))


def primitive_element(ctx):
    """First element of K in scan order generating K^x"""
    group_order = ctx.qn - 1
    for alpha in ctx.elements(start=1):
        if multiplicative_order_is(alpha, group_order):
            logger.debug("Primitive element %r", alpha)
            return alpha
    raise MrdkitError("no primitive element found")


def sqrt_fq(a):
    """
    Square root in F_q

    Args:
        a: F_q scalar (galois FieldArray, 0-dimensional)

    Returns:
        The root with the smaller integer encoding, or None when a is not a square
    """
    field = type(a)
    if field.characteristic == 2:
        raise CharTwo("sqrt_fq needs odd q")
    if field.order < SQRT_SCAN_LIMIT:
        elements = field.elements
        hits = np.nonzero(elements * elements == a)[0]
        return elements[hits[0]] if hits.size else None
    # TODO: replace galois' sqrt with Tonelli-Shanks over F_q once q >= 2^16 matters for timing
    if not a.is_square():
        return None
    root = np.sqrt(a)
    return min(root, -root, key=int)


def is_square(a):
    """a is a nonzero square in F_q (Euler's criterion)"""
    field = type(a)
    if field.characteristic == 2:
        raise CharTwo("square classes need odd q")
    return a != 0 and a ** ((field.order - 1) // 2) == 1


def self_dual_basis_exists(ctx):
    """K/k has a self-dual basis iff q is even or q and n are both odd"""
    return ctx.q % 2 == 0 or ctx.n % 2 == 1


def element_to_nested(alpha):
    """[[F_p digits of each F_q coordinate], ...]"""
    p, e = alpha.ctx.p, alpha.ctx.e
    return [[(int(c) // p ** k) % p for k in range(e)] for c in alpha.coeffs.tolist()]
