"""
Self-dual rank-metric codes

Covers the characteristic-2 obstruction, the 2x2 classification, factoring
symmetric square-determinant matrices as X X^T, the criterion
dual(C) = A C B for C to be equivalent to a self-dual code, and the explicit
self-dualization of G_{n/2,Gamma}.
"""
import logging
import sys
from dataclasses import dataclass, field as dataclass_field
from pathlib import Path

import numpy as np

# Add repository root to path to import config
sys.path.append(str(Path(__file__).resolve().parents[2]))
from config.settings import SYMMETRY_SCAN_CAP

from mrdkit.utils import gabidulin, matfq, rankcode
from mrdkit.utils.errors import (
    CharTwo, MrdkitError, NonSquareDet, NotApplicable, NotSymmetric, OddN,
    ShapeMismatch, Singular, SingularInput, require,
)
from mrdkit.utils.ffield import is_square, sqrt_fq

logger = logging.getLogger(__name__)

# Random draws tried per dimension step before giving up
SELF_ORTHOGONAL_ATTEMPTS = 1000


@dataclass(frozen=True)
class Witness:
    """All-ones matrix J in dual(C): a rank-1 dual codeword"""
    J: object
    checked: int
    rank: int


@dataclass(frozen=True)
class Impossible:
    reason: str
    evidence: dict = dataclass_field(default_factory=dict)

    @property
    def exhaustive(self):
        return bool(self.evidence.get("exhaustive"))


@dataclass(frozen=True, eq=False)
class SelfDualCertificate:
    """
    dual(source) = A_sym source B_sym with A_sym = P^T P, B_sym = Q Q^T,
    and code = P source Q is self-dual
    """
    ctx: object
    params: dict
    A_sym: object
    B_sym: object
    P: object
    Q: object
    source: object
    code: object
    relations: dict = dataclass_field(default_factory=dict)    # relations checked while building


def char2_obstruction(code):
    """
    Witness that dual(C) contains the rank-1 all-ones matrix

    Raises:
        NotApplicable: q odd, or C not self-orthogonal
    """
    if code.ctx.q % 2 == 1:
        raise NotApplicable("the all-ones obstruction needs characteristic 2")
    if not rankcode.is_self_orthogonal(code):
        raise NotApplicable("code is not self-orthogonal")
    J = code.field.Ones((code.m, code.n))
    for G in code.gens:
        require(matfq.inner(G, J) == 0, "all-ones matrix is not orthogonal to a generator")
    rank = matfq.rank(J)
    require(rank == 1, "all-ones matrix does not have rank 1")
    return Witness(J, code.dim, rank)


def two_by_two_solutions(field):
    """All (a, b) in F_q^2 with a^2 + b^2 = -1, in integer order"""
    minus_one = -field(1)
    values = field.elements
    solutions = []
    for a in values:
        for b in values:
            if a * a + b * b == minus_one:
                solutions.append((a, b))
    return solutions


def classify_2x2(ctx, check_equivalence=True, cap=None):
    """
    Self-dual MRD codes in F_q^{2x2}

    Each has the basis [[1, 0], [a, b]], [[0, 1], [c, d]] with
    a^2 + b^2 = -1 and (c, d) in {(-b, a), (b, -a)}. With check_equivalence,
    every code is shown equivalent to the first one and to G_{1,Gamma}.

    Returns:
        Codes ordered by (a, b, choice); empty iff q = 1 (mod 4)
    """
    if ctx.q % 2 == 0:
        raise CharTwo("the 2x2 classification needs odd q")
    if ctx.n != 2:
        raise ShapeMismatch(f"the 2x2 classification needs n = 2, got {ctx.n}")
    field = ctx.field
    codes = []
    for a, b in two_by_two_solutions(field):
        for c, d in ((-b, a), (b, -a)):
            first = field([[1, 0], [int(a), int(b)]])
            second = field([[0, 1], [int(c), int(d)]])
            code = rankcode.code_new(ctx, 2, 2, [first, second])
            if rankcode.is_self_dual(code) and rankcode.is_mrd(code):
                codes.append(code)
            else:
                logger.debug("(a, b, c, d) = %s is not self-dual MRD", [int(v) for v in (a, b, c, d)])

    kept_all = ctx.q % 4 == 3
    expected = 2 * len(two_by_two_solutions(field)) if kept_all else 0
    require(len(codes) == expected, f"classification kept {len(codes)} codes, expected {expected}")
    logger.info("q=%d: %d self-dual MRD codes in F_q^{2x2}", ctx.q, len(codes))

    if check_equivalence and codes:
        gab = gabidulin.gab_code(gabidulin.gab_ctx_new(ctx), 1)
        for code in codes:
            require(
                rankcode.find_equivalence(codes[0], code, cap=cap) is not None,
                "two self-dual MRD 2x2 codes are not equivalent",
            )
        require(
            rankcode.find_equivalence(gab, codes[0], cap=cap) is not None,
            "self-dual MRD 2x2 code is not equivalent to G_1",
        )
    return codes


def _diagonalize(M):
    """
    Symmetric elimination: T with T M T^T diagonal

    A zero pivot is replaced by a later nonzero diagonal entry, or else made
    nonzero by row_k += row_j, col_k += col_j (new pivot 2 M_kj).
    """
    field = type(M)
    size = M.shape[0]
    W = M.copy()
    T = field.Identity(size)
    for k in range(size):
        if W[k, k] == 0:
            later = [j for j in range(k + 1, size) if W[j, j] != 0]
            if later:
                j = later[0]
                for X in (W, T):
                    X[[k, j]] = X[[j, k]]
                W[:, [k, j]] = W[:, [j, k]]
            else:
                partner = [j for j in range(k + 1, size) if W[k, j] != 0]
                if not partner:
                    raise Singular("symmetric matrix is singular")
                j = partner[0]
                W[k] = W[k] + W[j]
                W[:, k] = W[:, k] + W[:, j]
                T[k] = T[k] + T[j]
        pivot = W[k, k]
        for i in range(k + 1, size):
            if W[i, k] == 0:
                continue
            f = W[i, k] / pivot
            W[i] = W[i] - f * W[k]
            W[:, i] = W[:, i] - f * W[:, k]
            T[i] = T[i] - f * T[k]
    require(np.array_equal(W, matfq.diag(field, list(W.diagonal()))), "symmetric elimination left off-diagonal entries")
    return T, W.diagonal()


def _sum_of_two_squares(d):
    """(x, y) with x^2 + y^2 = d, x minimal"""
    field = type(d)
    for value in range(field.order):
        x = field(value)
        y = sqrt_fq(d - x * x)
        if y is not None:
            return x, y
    raise MrdkitError(f"{int(d)} is not a sum of two squares")


def factor_symmetric(M):
    """
    X with X X^T = M

    Args:
        M: Symmetric invertible matrix over odd F_q with square determinant

    Raises:
        CharTwo, NotSymmetric, Singular, NonSquareDet
    """
    field = type(M)
    if field.characteristic == 2:
        raise CharTwo("factor_symmetric needs odd q")
    if not matfq.is_symmetric(M):
        raise NotSymmetric("matrix is not symmetric")
    d = matfq.det(M)
    if d == 0:
        raise Singular("matrix is singular")
    if not is_square(d):
        raise NonSquareDet(f"det = {int(d)} is not a square")

    T, diagonal = _diagonalize(M)
    size = M.shape[0]
    F = field.Zeros((size, size))
    nonsquares = []
    for k, value in enumerate(diagonal):
        root = sqrt_fq(value)
        if root is None:
            nonsquares.append(k)
        else:
            F[k, k] = root
    require(len(nonsquares) % 2 == 0, "odd number of nonsquare diagonal entries")
    for k1, k2 in zip(nonsquares[0::2], nonsquares[1::2]):
        d1, d2 = diagonal[k1], diagonal[k2]
        x, y = _sum_of_two_squares(d1)
        t = sqrt_fq(d2 / d1)
        require(t is not None, "ratio of two nonsquares is not a square")
        # diag(d1, d2) = E E^T with E = diag(1, t) [[x, y], [-y, x]]
        F[k1, k1], F[k1, k2] = x, y
        F[k2, k1], F[k2, k2] = -y * t, x * t

    X = matfq.inverse(T) @ F
    require(np.array_equal(X @ X.T, M), "factor_symmetric produced X X^T != M")
    return X


def factor_symmetric_left(M):
    """P with P^T P = M"""
    return factor_symmetric(M).T


def eqsd_check(code, A_sym, B_sym):
    """A_sym, B_sym symmetric with square determinant and dual(C) = A_sym C B_sym"""
    if code.ctx.q % 2 == 0:
        raise CharTwo("square classes need odd q")
    if A_sym.shape != (code.m, code.m) or B_sym.shape != (code.n, code.n):
        raise ShapeMismatch("A_sym must be m x m and B_sym n x n")
    if not (matfq.is_symmetric(A_sym) and matfq.is_symmetric(B_sym)):
        return False
    try:
        if not (matfq.is_square_det(A_sym) and matfq.is_square_det(B_sym)):
            return False
    except SingularInput:
        return False
    return rankcode.dual(code) == rankcode.apply(rankcode.proper(A_sym, B_sym), code)


def x_matrix(gctx, i, j):
    """X_{i,j} = T A^{n/2} A^j S^i"""
    return gctx.gram @ gctx.shift_pow(gctx.n // 2 + j) @ gctx.singer_pow(i)


def y_matrix(gctx, h, j):
    """Y_{h,j} = S^h A^{-j} T^-1"""
    return gctx.singer_pow(h) @ gctx.shift_pow(-j) @ gctx.gram_inv


def determinant_square_test_xy(gctx, i, h, j):
    """
    (det X_{i,j} square?, det Y_{h,j} square?) computed directly and by the
    closed forms: nonsquare (-1)^{n/2+j} delta^i and (-1)^j delta^h
    """
    if gctx.n % 2:
        raise OddN(f"n = {gctx.n} is odd")
    if gctx.q % 2 == 0:
        raise CharTwo("square classes need odd q")
    minus_one = -gctx.field(1)
    delta = gctx.singer_det
    x_closed = not is_square(minus_one ** (gctx.n // 2 + j) * delta ** i)
    y_closed = not is_square(minus_one ** j * delta ** h)
    x_direct = matfq.is_square_det(x_matrix(gctx, i, j))
    y_direct = matfq.is_square_det(y_matrix(gctx, h, j))
    require(x_closed == x_direct, f"det X_({i},{j}) square class disagrees with closed form")
    require(y_closed == y_direct, f"det Y_({h},{j}) square class disagrees with closed form")
    return bool(x_direct), bool(y_direct)


def self_dualizable(q, n):
    """G_{n/2,Gamma} is equivalent to a self-dual MRD code iff n = 2 (mod 4) and q = 3 (mod 4)"""
    return n % 4 == 2 and q % 4 == 3


def _count_square_symmetric(stack):
    """Matrices in the stack that are symmetric with square determinant"""
    symmetric = np.nonzero(matfq.batch_symmetric(stack))[0]
    return sum(1 for k in symmetric if matfq.is_square_det(stack[int(k)]))


def scan_triples(gctx, cap=None):
    """
    Count triples (i, h, j) with X_{i,j} and Y_{h,j} both symmetric with
    square determinant, by evaluating every X_{i,j} and Y_{h,j}

    For each j the whole Singer cycle is multiplied in one batch.

    Returns:
        Evidence dict, or None when 2 n (q^n - 1) exceeds `cap`
    """
    cap = SYMMETRY_SCAN_CAP if cap is None else cap
    n, order = gctx.n, gctx.ctx.qn - 1
    evaluations = 2 * n * order
    if evaluations > cap:
        logger.info("Triple scan needs %d evaluations, cap is %d; skipped", evaluations, cap)
        return None
    powers = matfq.power_stack(gctx.singer, order)
    valid_x, valid_y = [], []
    for j in range(n):
        left = gctx.gram @ gctx.shift_pow(n // 2 + j)
        right = gctx.shift_pow(-j) @ gctx.gram_inv
        valid_x.append(_count_square_symmetric(matfq.batch_matmul(left[np.newaxis], powers)))
        valid_y.append(_count_square_symmetric(matfq.batch_matmul(powers, right[np.newaxis])))
    triples = sum(x * y for x, y in zip(valid_x, valid_y))
    return {
        "exhaustive": True,
        "evaluations": evaluations,
        "valid_x_per_j": valid_x,
        "valid_y_per_j": valid_y,
        "valid_triples": triples,
    }


def gabisd_selfdualize(gctx, case="a", cap=None):
    """
    Transport G_{n/2,Gamma} to a self-dual code, or explain why not

    Case "a" uses (i, h, j) = (q^{n/2}+1, 1, 0), case "b" uses
    (1, q^{n/2}+1, n/2).

    Returns:
        SelfDualCertificate, or Impossible carrying the violated congruence
        and, within `cap`, the exhaustive triple scan
    """
    n, q = gctx.n, gctx.q
    if n % 2:
        raise OddN(f"n = {n} is odd; G_l is never equivalent to a self-dual code")
    if case not in ("a", "b"):
        raise ValueError(f"unknown case {case!r}")
    if q % 2 == 0:
        return Impossible(
            "characteristic 2: the all-ones matrix lies in the dual of every "
            "self-orthogonal code, so no self-dual code is MRD",
            {"exhaustive": False},
        )
    if not self_dualizable(q, n):
        reasons = []
        if n % 4 != 2:
            reasons.append(f"n = {n} is not 2 (mod 4)")
        if q % 4 != 3:
            reasons.append(f"q = {q} is not 3 (mod 4)")
        evidence = scan_triples(gctx, cap) or {"exhaustive": False}
        require(evidence.get("valid_triples", 0) == 0, "triple scan found a self-dualizing pair")
        return Impossible("; ".join(reasons), evidence)

    half = q ** (n // 2) + 1
    i, h, j = (half, 1, 0) if case == "a" else (1, half, n // 2)
    A_sym = x_matrix(gctx, i, j)
    B_sym = y_matrix(gctx, h, j)
    require(matfq.is_symmetric(A_sym) and matfq.is_symmetric(B_sym), "certificate matrices are not symmetric")
    require(determinant_square_test_xy(gctx, i, h, j) == (True, True), "certificate matrices lack square determinant")

    P = factor_symmetric_left(A_sym)
    Q = factor_symmetric(B_sym)
    source = gabidulin.gab_code(gctx, n // 2)
    transports = eqsd_check(source, A_sym, B_sym)
    require(transports, "dual(G) != A_sym G B_sym")
    code = rankcode.apply(rankcode.proper(P, Q), source)
    self_dual = rankcode.is_self_dual(code)
    require(self_dual, "transported code is not self-dual")
    relations = {
        "A_sym = P^T P": np.array_equal(P.T @ P, A_sym),
        "B_sym = Q Q^T": np.array_equal(Q @ Q.T, B_sym),
        "dual(C) = A_sym C B_sym": transports,
        "D = P C Q": True,
        "D self-dual": self_dual,
    }
    logger.info("Self-dual certificate for q=%d n=%d with (i, h, j) = (%d, %d, %d)", q, n, i, h, j)
    return SelfDualCertificate(
        gctx.ctx, {"i": i, "h": h, "j": j}, A_sym, B_sym, P, Q, source, code, relations,
    )


def verify_certificate(cert):
    """
    Re-check every certificate relation

    Returns:
        Dict mapping each relation to whether it holds
    """
    A_sym, B_sym, P, Q = cert.A_sym, cert.B_sym, cert.P, cert.Q
    checks = {
        "A_sym = P^T P": np.array_equal(P.T @ P, A_sym),
        "B_sym = Q Q^T": np.array_equal(Q @ Q.T, B_sym),
        "dual(C) = A_sym C B_sym": eqsd_check(cert.source, A_sym, B_sym),
        "D = P C Q": rankcode.apply(rankcode.proper(P, Q), cert.source) == cert.code,
        "D self-dual": rankcode.is_self_dual(cert.code),
    }
    for name, ok in checks.items():
        if not ok:
            logger.warning("Certificate relation failed: %s", name)
    return checks


def random_self_orthogonal(ctx, m, n, dim, rng):
    """
    Random self-orthogonal code of dimension `dim` in k^{m x n}, grown one
    isotropic vector of the current dual at a time
    """
    if 2 * dim > m * n:
        raise ValueError(f"self-orthogonal codes in {m}x{n} have dimension at most {m * n // 2}")
    field = ctx.field
    code = rankcode.code_new(ctx, m, n, [])
    while code.dim < dim:
        checks = rankcode.dual(code).vectors()
        for _ in range(SELF_ORTHOGONAL_ATTEMPTS):
            v = (field.Random(checks.shape[0], seed=rng) @ checks).reshape(m, n)
            if matfq.inner(v, v) == 0 and v not in code:
                code = rankcode.span(code, [v])
                break
        else:
            raise MrdkitError(f"no isotropic extension found for a {code.dim}-dim code")
    require(rankcode.is_self_orthogonal(code), "random code is not self-orthogonal")
    return code


def first_nonsquare(field):
    for a in field.elements[1:]:
        if not is_square(a):
            return a
    raise CharTwo("every nonzero element is a square")


def random_symmetric(field, n, rng, square=True):
    """X diag(1, ..., 1) X^T, or with a leading nonsquare when square is False"""
    X = matfq.random_invertible(field, n, rng)
    values = [field(1)] * n
    if not square:
        values[0] = first_nonsquare(field)
    return X @ matfq.diag(field, values) @ X.T
