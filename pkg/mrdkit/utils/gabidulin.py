"""
Full-length Gabidulin codes G_{l,Gamma} in k^{n x n}

Conventions (0-based):
    Gamma = (gamma, gamma^[1], ..., gamma^[n-1]) is a normal basis, gamma_j = gamma^[j]
    epsilon_B(alpha_0..alpha_{n-1}) has column j = B-coordinates of alpha_j
    T = epsilon_{Gamma*}(Gamma), the trace Gram matrix
    A = epsilon_Gamma(Gamma^[1]), so A[i, j] = 1 iff i = j + 1 (mod n)
    S = epsilon_Gamma(sigma Gamma) for the primitive element sigma
    KK = span{epsilon_Gamma(alpha Gamma)}, the field algebra (= G_{1,Gamma})

G_{l,Gamma} = KK + KK A + ... + KK A^{l-1}.
"""
import logging
import sys
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import galois
import numpy as np

# Add repository root to path to import config
sys.path.append(str(Path(__file__).resolve().parents[2]))
from config.settings import GROUP_PAIR_CAP, RANDOM_SEED, SCAN_CAP

from mrdkit.utils import matfq, rankcode
from mrdkit.utils.errors import BadEll, CharTwo, OddN, TooLarge, require
from mrdkit.utils.ffield import (
    Basis, coordinate_matrix, dual_basis, element_to_nested, find_normal_basis,
    frobenius, gram_matrix, is_square, primitive_element, self_dual_basis_exists,
)

logger = logging.getLogger(__name__)

# Sampled exponents when an exhaustive pass over the Singer cycle exceeds its cap
SAMPLED_POWERS = 64


@dataclass(frozen=True, eq=False)
class GabidulinCtx:
    ctx: object
    basis: Basis            # normal basis Gamma
    dual: Basis             # Gamma*
    gram: object            # T
    shift: object           # A
    sigma: object           # primitive element of K
    singer: object          # S
    singer_det: object      # delta = det(S)
    skipped: tuple = ()     # structural checks whose preconditions fail here

    @property
    def n(self):
        return self.ctx.n

    @property
    def q(self):
        return self.ctx.q

    @property
    def field(self):
        return self.ctx.field

    @cached_property
    def gram_inv(self):
        return matfq.inverse(self.gram)

    @cached_property
    def shift_inv(self):
        return matfq.inverse(self.shift)

    def shift_pow(self, j):
        return matfq.mat_pow(self.shift, j % self.n)

    def singer_pow(self, i):
        return matfq.mat_pow(self.singer, i % (self.ctx.qn - 1))

    def identity(self):
        return self.field.Identity(self.n)

    def mult_matrix(self, alpha):
        """Image of alpha in the field algebra: epsilon_Gamma(alpha Gamma)"""
        return epsilon(self.basis, [alpha * g for g in self.basis])

    @cached_property
    def algebra_basis(self):
        """epsilon_Gamma(gamma_i Gamma) for i = 0..n-1"""
        return [self.mult_matrix(g) for g in self.basis]

    @cached_property
    def algebra(self):
        """The field algebra KK as a code"""
        return rankcode.code_new(self.ctx, self.n, self.n, self.algebra_basis)

    def describe(self):
        return {
            "gamma": element_to_nested(self.basis[0]),
            "sigma": element_to_nested(self.sigma),
            "det_S": int(self.singer_det),
            "T": matfq.to_ints(self.gram),
            "A": matfq.to_ints(self.shift),
            "S": matfq.to_ints(self.singer),
            "skipped": list(self.skipped),
        }


def epsilon(basis, vector):
    """Matrix whose column j holds the basis coordinates of vector[j]"""
    if len(vector) != len(basis):
        raise ValueError(f"epsilon needs {len(basis)} elements, got {len(vector)}")
    return basis.inverse @ coordinate_matrix(list(vector))


def _is_shift(A):
    n = A.shape[0]
    expected = np.zeros((n, n), dtype=np.int64)
    for j in range(n):
        expected[(j + 1) % n, j] = 1
    return np.array_equal(A.view(np.ndarray), expected)


def matrix_order_is(M, order):
    """M has multiplicative order exactly `order`"""
    identity = type(M).Identity(M.shape[0])
    if not np.array_equal(matfq.mat_pow(M, order), identity):
        return False
    if order == 1:
        return True
    primes, _ = galois.factors(order)
    return all(not np.array_equal(matfq.mat_pow(M, order // int(r)), identity) for r in primes)


def scalar_order_is(a, order):
    return a != 0 and int(a.multiplicative_order()) == order


def gab_ctx_new(ctx):
    """
    Build Gamma, T, A and S for the context and check their structure

    Checks that need even n (det(A) = -1, det(T) nonsquare) or odd q are
    listed in `skipped` instead of being asserted.
    """
    n, q = ctx.n, ctx.q
    basis = find_normal_basis(ctx)
    dual = dual_basis(basis)
    gram = epsilon(dual, list(basis))
    require(np.array_equal(gram, gram_matrix(basis)), "epsilon_{Gamma*}(Gamma) differs from the trace Gram matrix")
    require(matfq.is_symmetric(gram), "trace Gram matrix is not symmetric")
    require(matfq.det(gram) != 0, "trace Gram matrix is singular")

    shift = epsilon(basis, [frobenius(g, 1) for g in basis])
    require(_is_shift(shift), "epsilon_Gamma(Gamma^[1]) is not the cyclic shift")
    require(np.array_equal(matfq.mat_pow(shift, n), ctx.field.Identity(n)), "A^n != I")
    require(np.array_equal(shift @ gram, gram @ shift), "A does not commute with T")

    sigma = primitive_element(ctx)
    singer = epsilon(basis, [sigma * g for g in basis])
    singer_det = matfq.det(singer)
    require(matrix_order_is(singer, ctx.qn - 1), "Singer matrix order differs from q^n - 1")
    require(scalar_order_is(singer_det, q - 1), "det(S) is not primitive in F_q")
    require(
        np.array_equal(shift @ singer @ matfq.inverse(shift), matfq.mat_pow(singer, q)),
        "A S A^-1 != S^q",
    )

    skipped = []
    if n % 2 == 0:
        require(matfq.det(shift) == -ctx.field(1), "det(A) != -1 for even n")
    else:
        skipped.append("shift-det")
    if q % 2 == 1 and n % 2 == 0:
        require(not is_square(matfq.det(gram)), "det(T) is a square for even n")
    else:
        skipped.append("gram-det-nonsquare")

    gctx = GabidulinCtx(ctx, basis, dual, gram, shift, sigma, singer, singer_det, tuple(skipped))
    logger.info("Gabidulin context q=%d n=%d gamma=%r sigma=%r", q, n, basis[0], sigma)
    return gctx


def _check_ell(gctx, ell, proper_only=False):
    low_ok = ell >= 1
    high_ok = ell < gctx.n if proper_only else ell <= gctx.n
    if not (low_ok and high_ok):
        bound = "0 < l < n" if proper_only else "1 <= l <= n"
        raise BadEll(f"l = {ell} outside {bound} for n = {gctx.n}")


def gab_code(gctx, ell):
    """
    G_{l,Gamma}, built from epsilon_Gamma(gamma_i Gamma^[j]) and checked
    against the decomposition KK + KK A + ... + KK A^{l-1}
    """
    _check_ell(gctx, ell)
    n = gctx.n
    direct = []
    for j in range(ell):
        shifted = [frobenius(g, j) for g in gctx.basis]
        for gamma_i in gctx.basis:
            direct.append(epsilon(gctx.basis, [gamma_i * g for g in shifted]))
    code = rankcode.code_new(gctx.ctx, n, n, direct)

    cyclic = [B @ gctx.shift_pow(j) for j in range(ell) for B in gctx.algebra_basis]
    require(code == rankcode.code_new(gctx.ctx, n, n, cyclic), "G_l differs from KK + ... + KK A^(l-1)")
    require(code.dim == ell * n, f"G_{ell} has dimension {code.dim}, expected {ell * n}")
    return code


def verify_basechange(gctx, alpha):
    """epsilon_Gamma(alpha Gamma)^T = epsilon_{Gamma*}(alpha Gamma*) = T epsilon_Gamma(alpha Gamma) T^-1"""
    M = gctx.mult_matrix(alpha)
    via_dual = epsilon(gctx.dual, [alpha * d for d in gctx.dual])
    conjugated = gctx.gram @ M @ gctx.gram_inv
    return np.array_equal(M.T, via_dual) and np.array_equal(via_dual, conjugated)


def _singer_exponents(gctx, cap):
    """All exponents 0..q^n-2 when within cap, else a seeded sample"""
    order = gctx.ctx.qn - 1
    if order <= cap:
        return range(order), True
    rng = np.random.default_rng(RANDOM_SEED)
    return sorted(int(v) for v in rng.integers(0, order, SAMPLED_POWERS)), False


def verify_trace_vanishing(gctx, cap=None):
    """trace(B A^i) = 0 for B in KK and 1 <= i <= n-1"""
    cap = SCAN_CAP if cap is None else cap
    exponents, exhaustive = _singer_exponents(gctx, cap)
    shifts = [gctx.shift_pow(i) for i in range(1, gctx.n)]
    for e in exponents:
        B = gctx.singer_pow(e)
        if any(matfq.trace(B @ Ai) != 0 for Ai in shifts):
            logger.warning("trace(S^%d A^i) != 0", e)
            return False
    logger.debug("Trace vanishing checked on %s powers of S", "all" if exhaustive else "sampled")
    return True


def verify_frobenius_conjugation(gctx, cap=None):
    """A B A^-1 = B^q for B in KK"""
    cap = SCAN_CAP if cap is None else cap
    exponents, _ = _singer_exponents(gctx, cap)
    S_q = matfq.mat_pow(gctx.singer, gctx.q)
    for e in exponents:
        B = gctx.singer_pow(e)
        if not np.array_equal(gctx.shift @ B @ gctx.shift_inv, matfq.mat_pow(S_q, e)):
            return False
    return True


def verify_cyclic_decomposition(gctx):
    """k^{n x n} = KK + KK A + ... + KK A^{n-1}, a direct sum"""
    n = gctx.n
    parts = [[B @ gctx.shift_pow(i) for B in gctx.algebra_basis] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            pair = rankcode.code_new(gctx.ctx, n, n, parts[i] + parts[j])
            if pair.dim != 2 * n:
                return False
    total = rankcode.code_new(gctx.ctx, n, n, [M for part in parts for M in part])
    return total.dim == n * n


def _in_rotated_algebra(gctx, X):
    """X in A^j KK^x for some j"""
    for j in range(gctx.n):
        if X @ gctx.shift_pow(-j) in gctx.algebra:
            return True
    return False


def verify_normalizer(gctx, cap=None):
    """
    The normalizer of KK^x in GL_n(q) is <A> KK^x

    Raises:
        TooLarge: |GL_n(q)| above `cap`
    """
    cap = GROUP_PAIR_CAP if cap is None else cap
    order = matfq.gl_order(gctx.q, gctx.n)
    if order > cap:
        raise TooLarge(order, cap, "GL_n normalizer scan")
    members = 0
    for X in matfq.general_linear(gctx.field, gctx.n):
        X_inv = matfq.inverse(X)
        normalizes = all(X @ B @ X_inv in gctx.algebra for B in gctx.algebra_basis)
        if normalizes != _in_rotated_algebra(gctx, X):
            logger.warning("normalizer mismatch at X=%s", X.tolist())
            return False
        members += normalizes
    expected = gctx.n * (gctx.ctx.qn - 1)
    logger.debug("Normalizer has %d elements, expected %d", members, expected)
    return members == expected


def improper_generator(gctx, ell):
    """tau_{T^-1, T A^{l-1}}"""
    return rankcode.improper(gctx.gram_inv, gctx.gram @ gctx.shift_pow(ell - 1))


def aut_generators(gctx, ell):
    """Generators of Aut(G_{l,Gamma}), each checked to fix the code"""
    _check_ell(gctx, ell, proper_only=True)
    identity = gctx.identity()
    gens = [
        rankcode.proper(gctx.singer, identity),
        rankcode.proper(identity, gctx.singer),
        rankcode.proper(gctx.shift, gctx.shift_inv),
        improper_generator(gctx, ell),
    ]
    code = gab_code(gctx, ell)
    for g in gens:
        require(rankcode.apply(g, code) == code, f"{g!r} does not fix G_{ell}")
    return gens


def aut_order(gctx, ell):
    """|Aut(G_{l,Gamma})| = 2n (q^n - 1)^2 / (q - 1), maps taken up to scalars"""
    _check_ell(gctx, ell, proper_only=True)
    qn, q = gctx.ctx.qn, gctx.q
    return 2 * gctx.n * (qn - 1) * (qn - 1) // (q - 1)


def verify_improper_swap(gctx, ell):
    """tau_{T^-1, T A^{l-1}} maps KK A^j onto KK A^{l-1-j}"""
    _check_ell(gctx, ell, proper_only=True)
    tau = improper_generator(gctx, ell)
    n = gctx.n
    for j in range(ell):
        source = rankcode.code_new(gctx.ctx, n, n, [B @ gctx.shift_pow(j) for B in gctx.algebra_basis])
        target = rankcode.code_new(
            gctx.ctx, n, n, [B @ gctx.shift_pow(ell - 1 - j) for B in gctx.algebra_basis]
        )
        if rankcode.apply(tau, source) != target:
            return False
    return True


def expected_symmetric(gctx, i, j):
    """Closed form: T A^j S^i is symmetric iff j = 0, or j = n/2 and (q^{n/2}+1) | i"""
    n = gctx.n
    j %= n
    if j == 0:
        return True
    return n % 2 == 0 and j == n // 2 and i % (gctx.q ** (n // 2) + 1) == 0


def verify_symmetry_table(gctx, cap=None):
    """
    Compare symmetry of T A^j S^i and S^i A^j T^-1 with the closed form
    for every j in [0, n) and i in [0, q^n - 1)

    Raises:
        TooLarge: more than `cap` matrices in the table
    """
    cap = SCAN_CAP if cap is None else cap
    order = gctx.ctx.qn - 1
    count = gctx.n * order
    if count > cap:
        raise TooLarge(count, cap, "symmetry table")
    powers = matfq.power_stack(gctx.singer, order)
    for j in range(gctx.n):
        expected = np.array([expected_symmetric(gctx, i, j) for i in range(order)])
        left = gctx.gram @ gctx.shift_pow(j)
        right = gctx.shift_pow(j) @ gctx.gram_inv
        wrong = np.nonzero(matfq.batch_symmetric(matfq.batch_matmul(left[np.newaxis], powers)) != expected)[0]
        if wrong.size:
            logger.warning("T A^%d S^%d symmetry differs from closed form", j, wrong[0])
            return False
        wrong = np.nonzero(matfq.batch_symmetric(matfq.batch_matmul(powers, right[np.newaxis])) != expected)[0]
        if wrong.size:
            logger.warning("S^%d A^%d T^-1 symmetry differs from closed form", wrong[0], j)
            return False
    return True


def verify_gram_singer_symmetric(gctx, cap=None):
    """T S^j and S^j T^-1 are symmetric for every j"""
    cap = SCAN_CAP if cap is None else cap
    exponents, _ = _singer_exponents(gctx, cap)
    for e in exponents:
        P = gctx.singer_pow(e)
        if not (matfq.is_symmetric(gctx.gram @ P) and matfq.is_symmetric(P @ gctx.gram_inv)):
            return False
    return True


def half_dual_map(gctx):
    """kappa_{T A^{n/2}, T^-1}, carrying G_{n/2} onto its dual"""
    if gctx.n % 2:
        raise OddN(f"n = {gctx.n} is odd")
    return rankcode.proper(gctx.gram @ gctx.shift_pow(gctx.n // 2), gctx.gram_inv)


def verify_dual_of_half(gctx):
    """dual(G_{n/2}) = T A^{n/2} G_{n/2} T^-1"""
    mapping = half_dual_map(gctx)
    code = gab_code(gctx, gctx.n // 2)
    return rankcode.dual(code) == rankcode.apply(mapping, code)


def gram_det_is_square(gctx):
    """
    det(T) is a square in F_q

    For odd q this holds iff K/k has a self-dual basis, i.e. iff n is odd.
    """
    if gctx.q % 2 == 0:
        raise CharTwo("square classes need odd q")
    square = bool(is_square(matfq.det(gctx.gram)))
    require(square == self_dual_basis_exists(gctx.ctx), "det(T) square class disagrees with self-dual basis existence")
    return square
