"""
Linear rank-metric codes in k^{m x n}

A code is stored as a list of independent generator matrices plus the
canonical form: the reduced row echelon form of the vectorized generators.
Two codes are equal exactly when their canonical forms agree.

Equivalences are the linear rank isometries A -> X A Y (proper) and, for
square shapes, A -> X A^T Y (improper). Since (X, Y) and (cX, c^-1 Y) give
the same map, maps are kept with X normalized: first nonzero entry 1.
"""
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

# Add repository root to path to import config
sys.path.append(str(Path(__file__).resolve().parents[2]))
from config.settings import CODEWORD_CAP, GROUP_PAIR_CAP

from mrdkit.utils import matfq
from mrdkit.utils.errors import (
    EmptyCode, ShapeMismatch, TooLarge, WrongOrientation, require,
)

logger = logging.getLogger(__name__)

PROPER = "proper"
IMPROPER = "improper"

# Coefficient vectors ranked per batch during codeword enumeration
ENUMERATION_CHUNK = 2 ** 15


@dataclass(frozen=True, eq=False)
class RankMetricCode:
    """k-linear subspace of k^{m x n}"""
    ctx: object
    m: int
    n: int
    gens: object       # FieldArray, shape (dim, m, n)
    canon: object      # FieldArray, shape (dim, m*n), reduced row echelon

    @property
    def dim(self):
        return self.gens.shape[0]

    @property
    def field(self):
        return self.ctx.field

    def vectors(self):
        return self.gens.reshape(self.dim, self.m * self.n)

    def __eq__(self, other):
        return (
            isinstance(other, RankMetricCode)
            and (self.m, self.n) == (other.m, other.n)
            and self.canon.shape == other.canon.shape
            and np.array_equal(self.canon, other.canon)
        )

    __hash__ = object.__hash__

    def __contains__(self, matrix):
        stacked = np.concatenate([self.canon, matrix.reshape(1, -1)])
        return matfq.rank(stacked) == self.dim

    def __repr__(self):
        return f"RankMetricCode(q={self.ctx.q}, {self.m}x{self.n}, dim={self.dim})"


@dataclass(frozen=True, eq=False)
class EquivMap:
    """Rank isometry kappa_{X,Y}: A -> XAY or tau_{X,Y}: A -> XA^TY"""
    kind: str
    X: object
    Y: object

    def __post_init__(self):
        if self.kind not in (PROPER, IMPROPER):
            raise ValueError(f"unknown map kind {self.kind!r}")
        if self.kind == IMPROPER and self.X.shape[0] != self.Y.shape[0]:
            raise ShapeMismatch("improper maps need square codes")

    def __call__(self, A):
        if self.kind == IMPROPER:
            A = A.T
        return self.X @ A @ self.Y

    def key(self):
        return (self.kind, tuple(self.X.reshape(-1).tolist()), tuple(self.Y.reshape(-1).tolist()))

    def __eq__(self, other):
        return isinstance(other, EquivMap) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"EquivMap({self.kind}, X={self.X.tolist()}, Y={self.Y.tolist()})"


def proper(X, Y):
    return EquivMap(PROPER, X, Y)


def improper(X, Y):
    return EquivMap(IMPROPER, X, Y)


def code_new(ctx, m, n, matrices):
    """
    Code spanned by `matrices`

    Args:
        ctx: FieldCtx whose base field holds the entries
        m, n: Ambient shape, m >= n
        matrices: Iterable of m x n FieldArrays (or a stacked array)

    Returns:
        RankMetricCode keeping an independent subset of the inputs
    """
    if m < n:
        raise WrongOrientation(f"codes need m >= n, got {m}x{n}; transpose first")
    field = ctx.field
    mats = [M for M in matrices]
    for M in mats:
        if tuple(M.shape) != (m, n):
            raise ShapeMismatch(f"expected {m}x{n} generator, got {tuple(M.shape)}")
    if not mats:
        empty = field.Zeros((0, m, n))
        return RankMetricCode(ctx, m, n, empty, field.Zeros((0, m * n)))

    rows = field(np.array([M.reshape(-1).tolist() for M in mats], dtype=np.int64))
    # Independent inputs are the pivot columns of the transposed system
    _, independent = matfq.rref(rows.T.copy())
    gens = rows[independent].reshape(len(independent), m, n)
    R, pivots = matfq.rref(rows[independent])
    canon = R[:len(pivots)]
    require(len(pivots) == len(independent), "generator extraction lost independence")
    return RankMetricCode(ctx, m, n, gens, canon)


def full_space(ctx, m, n):
    field = ctx.field
    eye = field.Identity(m * n)
    return code_new(ctx, m, n, [eye[i].reshape(m, n) for i in range(m * n)])


def span(code, matrices):
    """Code spanned by the generators of `code` together with `matrices`"""
    return code_new(code.ctx, code.m, code.n, list(code.gens) + list(matrices))


def dual(code):
    """Orthogonal complement under <A, B> = trace(A B^T)"""
    m, n = code.m, code.n
    if code.dim == 0:
        return full_space(code.ctx, m, n)
    basis = matfq.kernel(code.canon)
    result = code_new(code.ctx, m, n, [v.reshape(m, n) for v in basis])
    require(code.dim + result.dim == m * n, "dim(C) + dim(C^perp) != mn")
    return result


def is_self_orthogonal(code):
    if code.dim == 0:
        return True
    return not np.any(matfq._nonzero(code.canon @ code.canon.T))


def is_self_dual(code):
    return 2 * code.dim == code.m * code.n and is_self_orthogonal(code)


def projective_count(q, dim):
    return (q ** dim - 1) // (q - 1)


def _projective_coefficients(field, dim, chunk):
    """Yield coefficient blocks, one vector per scalar class (leading entry 1)"""
    q = field.order
    for lead in range(dim):
        tail = dim - lead - 1
        total = q ** tail
        for start in range(0, total, chunk):
            values = np.arange(start, min(start + chunk, total), dtype=np.int64)
            block = np.zeros((values.size, dim), dtype=np.int64)
            block[:, lead] = 1
            for k in range(tail):
                block[:, lead + 1 + k] = (values // q ** k) % q
            yield field(block)


def min_distance(code, cap=None):
    """
    Minimum rank of a nonzero codeword, one codeword per scalar class

    Raises:
        EmptyCode: dim 0
        TooLarge: more projective codewords than `cap`
    """
    cap = CODEWORD_CAP if cap is None else cap
    if code.dim == 0:
        raise EmptyCode("minimum distance of the zero code is undefined")
    count = projective_count(code.ctx.q, code.dim)
    if count > cap:
        raise TooLarge(count, cap, "codeword enumeration")
    logger.info("Ranking %d projective codewords of %r", count, code)
    best = code.n
    for coeffs in _projective_coefficients(code.field, code.dim, ENUMERATION_CHUNK):
        words = (coeffs @ code.canon).reshape(coeffs.shape[0], code.m, code.n)
        best = min(best, int(matfq.batch_rank(words).min()))
        if best == 1:
            break
    return best


def is_mrd(code, cap=None, distance=None):
    """Delsarte bound met with equality: dim = m (n - d + 1), reusing `distance` when known"""
    d = min_distance(code, cap) if distance is None else distance
    return code.dim == code.m * (code.n - d + 1)


def delsarte_holds(code, cap=None):
    d = min_distance(code, cap)
    return code.dim <= code.m * (code.n - d + 1)


def apply(equiv, code):
    """Image of `code` under a rank isometry"""
    m, n = code.m, code.n
    if equiv.X.shape != (m, m) or equiv.Y.shape != (n, n):
        raise ShapeMismatch(f"map of shapes {equiv.X.shape}, {equiv.Y.shape} on {m}x{n} code")
    if equiv.kind == IMPROPER and m != n:
        raise ShapeMismatch("improper maps need square codes")
    return code_new(code.ctx, m, n, [equiv(G) for G in code.gens])


def compose(outer, inner):
    """The map outer . inner"""
    X1, Y1, X2, Y2 = outer.X, outer.Y, inner.X, inner.Y
    if inner.kind == PROPER and outer.kind == PROPER:
        return proper(X1 @ X2, Y2 @ Y1)
    if inner.kind == PROPER:
        # X1 (X2 A Y2)^T Y1 = (X1 Y2^T) A^T (X2^T Y1)
        return improper(X1 @ Y2.T, X2.T @ Y1)
    if outer.kind == PROPER:
        return improper(X1 @ X2, Y2 @ Y1)
    # X1 (X2 A^T Y2)^T Y1 = (X1 Y2^T) A (X2^T Y1)
    return proper(X1 @ Y2.T, X2.T @ Y1)


def normalize(equiv):
    """Representative of the scalar class with first nonzero entry of X equal to 1"""
    flat = equiv.X.reshape(-1)
    lead = flat[np.nonzero(matfq._nonzero(flat))[0][0]]
    return EquivMap(equiv.kind, equiv.X / lead, equiv.Y * lead)


def map_gram(equiv, m, n):
    """
    Gram matrix W W^T of the map on vec(k^{m x n})

    Row (i, j) of W is vec of the image of the matrix unit E_ij.
    """
    X, Y = equiv.X, equiv.Y
    if equiv.kind == PROPER:
        # image of E_ij is X[:, i] Y[j, :]
        W = (X.T[:, np.newaxis, :, np.newaxis] * Y[np.newaxis, :, np.newaxis, :])
    else:
        # image of E_ij is X[:, j] Y[i, :]
        W = (Y[:, np.newaxis, np.newaxis, :] * X.T[np.newaxis, :, :, np.newaxis])
    W = W.reshape(m * n, m * n)
    return W @ W.T


def _scalar_of(M):
    """c if M = cI, else None"""
    c = M[0, 0]
    if np.array_equal(M, type(M).Identity(M.shape[0]) * c):
        return c
    return None


def is_isometry_inner_preserving(equiv):
    """X^T X = a I_m and Y Y^T = a^-1 I_n for some a != 0"""
    a = _scalar_of(equiv.X.T @ equiv.X)
    if a is None or a == 0:
        return False
    field = type(equiv.Y)
    return np.array_equal(equiv.Y @ equiv.Y.T, field.Identity(equiv.Y.shape[0]) / a)


def is_isometry_similarity(equiv):
    """X^T X = a I_m and Y Y^T = b I_n for some a, b != 0"""
    a = _scalar_of(equiv.X.T @ equiv.X)
    b = _scalar_of(equiv.Y @ equiv.Y.T)
    return a is not None and b is not None and a != 0 and b != 0


def _parity_checks(code):
    """Dual basis as matrices, shape (mn - dim, m, n)"""
    return dual(code).gens


def _solve_right_factors(X, sources, checks, field, n):
    """
    Basis of all Y with <X G Y, H> = 0 for every G in sources, H in checks

    <X G Y, H> = sum_{d,b} ((X G)^T H)_{db} Y_{db}, one equation per pair.
    """
    equations = []
    for G in sources:
        XG_T = (X @ G).T
        for H in checks:
            equations.append((XG_T @ H).reshape(-1).tolist())
    if not equations:
        return field.Identity(n * n)
    system = field(np.array(equations, dtype=np.int64))
    return matfq.kernel(system)


def _invertible_combinations(basis, field, n, budget):
    """Invertible n x n matrices in the span of `basis` (rows are vec(Y))"""
    dim = basis.shape[0]
    if dim == 0:
        return [], 0
    q = field.order
    total = q ** dim
    if total > budget:
        raise TooLarge(total, budget, "right-factor enumeration")
    values = np.arange(total, dtype=np.int64)
    digits = np.stack([(values // q ** k) % q for k in range(dim)], axis=1)
    candidates = (field(digits) @ basis).reshape(total, n, n)
    invertible = np.nonzero(matfq.batch_rank(candidates) == n)[0]
    return [candidates[i] for i in invertible], total


def _search(C, D, improper_too, cap, first_only):
    m, n = C.m, C.n
    if (m, n) != (D.m, D.n) or C.dim != D.dim:
        return []
    cap = GROUP_PAIR_CAP if cap is None else cap
    q = C.ctx.q
    pairs = matfq.gl_order(q, m) * matfq.gl_order(q, n)
    if pairs > cap:
        raise TooLarge(pairs, cap, "GL_m x GL_n enumeration")
    field = C.field
    checks = list(_parity_checks(D))
    kinds = [PROPER]
    if improper_too and m == n:
        kinds.append(IMPROPER)
    logger.info("Searching equivalences %r -> %r over %d group pairs", C, D, pairs)

    found = []
    work = 0
    for X in matfq.general_linear(field, m, normalized=True):
        for kind in kinds:
            sources = list(C.gens) if kind == PROPER else [G.T for G in C.gens]
            basis = _solve_right_factors(X, sources, checks, field, n)
            ys, spent = _invertible_combinations(basis, field, n, cap - work)
            work += spent
            for Y in ys:
                equiv = EquivMap(kind, X, Y)
                require(apply(equiv, C) == D, "linear solve produced a non-equivalence")
                found.append(equiv)
                if first_only:
                    return found
    found.sort(key=EquivMap.key)
    return found


def brute_equivalences(C, D, improper_too=True, cap=None):
    """
    Every rank isometry mapping C onto D, one per scalar class

    For each normalized X the condition X G Y in D is linear in Y, so Y runs
    over the invertible elements of a solved subspace.

    Raises:
        TooLarge: |GL_m(q)| |GL_n(q)| above `cap`
    """
    return _search(C, D, improper_too, cap, first_only=False)


def find_equivalence(C, D, improper_too=True, cap=None):
    """First equivalence found from C to D, or None"""
    found = _search(C, D, improper_too, cap, first_only=True)
    return found[0] if found else None
