"""
Dense linear algebra over F_q

Matrices are galois FieldArrays (2-D) of the context's base field. Row-major
vectorization k^{m x n} -> k^{1 x mn} is fixed everywhere, so the trace
inner product <A, B> = trace(A B^T) is the dot product of vec(A) and vec(B).
"""
import itertools
import logging

import numpy as np

from mrdkit.utils.errors import CharTwo, ShapeMismatch, Singular, SingularInput
from mrdkit.utils.ffield import is_square

logger = logging.getLogger(__name__)


def _nonzero(values):
    return np.asarray(values.view(np.ndarray) != 0, dtype=bool)


def rref(M):
    """
    Reduced row echelon form

    Returns:
        (R, pivots) where pivots lists the pivot column of each nonzero row of R
    """
    rows, cols = M.shape
    if rows == 0 or cols == 0:
        return M.copy(), []
    R = M.row_reduce()
    nonzero = _nonzero(R)
    pivots = [int(np.argmax(row)) for row in nonzero if row.any()]
    return R, pivots


def rank(M):
    if M.size == 0:
        return 0
    return int(np.linalg.matrix_rank(M))


def kernel(M):
    """Basis of the right null space, as the rows of a matrix in reduced echelon form"""
    field = type(M)
    cols = M.shape[1]
    if M.shape[0] == 0:
        return field.Identity(cols)
    basis = M.null_space()
    if basis.shape[0] == 0:
        return field.Zeros((0, cols))
    return rref(basis)[0]


def trace(M):
    if M.shape[0] != M.shape[1]:
        raise ShapeMismatch(f"trace of non-square {M.shape}")
    return M.diagonal().sum()


def det(M):
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ShapeMismatch(f"determinant of non-square {M.shape}")
    return np.linalg.det(M)


def inverse(M):
    if det(M) == 0:
        raise Singular(f"{M.shape[0]}x{M.shape[1]} matrix is singular")
    return np.linalg.inv(M)


def inner(A, B):
    """<A, B> = trace(A B^T) = sum_ij A_ij B_ij"""
    if A.shape != B.shape:
        raise ShapeMismatch(f"inner product of {A.shape} and {B.shape}")
    return (A * B).sum()


def mat_pow(M, exponent):
    """M^exponent by square-and-multiply; negative exponents invert first"""
    field = type(M)
    if exponent < 0:
        return mat_pow(inverse(M), -exponent)
    result = field.Identity(M.shape[0])
    base = M
    while exponent:
        if exponent & 1:
            result = result @ base
        base = base @ base
        exponent >>= 1
    return result


def is_symmetric(M):
    return M.shape[0] == M.shape[1] and np.array_equal(M, M.T)


def is_square_det(M):
    """
    det(M) is a nonzero square in F_q

    Raises:
        CharTwo: q even
        SingularInput: det(M) = 0
    """
    field = type(M)
    if field.characteristic == 2:
        raise CharTwo("square-determinant test needs odd q")
    d = det(M)
    if d == 0:
        raise SingularInput("square-determinant test on a singular matrix")
    return bool(is_square(d))


def batch_rank(stack):
    """
    Ranks of a stack of matrices, shape (count, rows, cols)

    Gauss-Jordan elimination run on all matrices at once; each matrix picks
    its own pivot row per column.
    """
    work = stack.copy()
    count, rows, cols = work.shape
    ranks = np.zeros(count, dtype=np.int64)
    used = np.zeros((count, rows), dtype=bool)
    for c in range(cols):
        candidates = _nonzero(work[:, :, c]) & ~used
        active = np.nonzero(candidates.any(axis=1))[0]
        if active.size == 0:
            continue
        piv = candidates[active].argmax(axis=1)
        sub = work[active]
        which = np.arange(active.size)
        pivot_rows = sub[which, piv]
        pivot_rows = pivot_rows / pivot_rows[:, c][:, np.newaxis]
        factors = sub[:, :, c]
        sub = sub - factors[:, :, np.newaxis] * pivot_rows[:, np.newaxis, :]
        sub[which, piv] = pivot_rows
        work[active] = sub
        used[active, piv] = True
        ranks[active] += 1
    return ranks


def batch_matmul(A, B):
    """Products of matrix stacks (..., m, k) and (..., k, n), leading axes broadcast"""
    return (A[..., :, :, np.newaxis] * B[..., np.newaxis, :, :]).sum(axis=-2)


def power_stack(M, count):
    """M^0, M^1, ..., M^(count-1) stacked along the first axis"""
    field = type(M)
    stack = field.Identity(M.shape[0])[np.newaxis]
    step = M
    while stack.shape[0] < count:
        stack = np.concatenate([stack, batch_matmul(stack, step[np.newaxis])])
        step = step @ step
    return stack[:count]


def batch_symmetric(stack):
    """Boolean mask of the symmetric matrices in a stack"""
    values = stack.view(np.ndarray)
    return (values == values.swapaxes(-1, -2)).all(axis=(-2, -1))


def gl_order(q, n):
    """|GL_n(q)|"""
    order = 1
    for i in range(n):
        order *= q ** n - q ** i
    return order


def general_linear(field, n, normalized=False):
    """
    Enumerate GL_n(q) in integer-encoding order of the row-major entries

    Args:
        field: galois FieldArray type for F_q
        n: Matrix size
        normalized: Keep one matrix per scalar class (first nonzero entry 1)
    """
    logger.debug("Enumerating GL_%d(%d), %d matrices", n, field.order, gl_order(field.order, n))
    for entries in itertools.product(range(field.order), repeat=n * n):
        if normalized:
            lead = next((v for v in entries if v != 0), 0)
            if lead != 1:
                continue
        M = field(np.array(entries, dtype=np.int64).reshape(n, n))
        if np.linalg.det(M) != 0:
            yield M


def random_matrix(field, m, n, rng):
    return field.Random((m, n), seed=rng)


def random_invertible(field, n, rng):
    while True:
        M = field.Random((n, n), seed=rng)
        if np.linalg.det(M) != 0:
            return M


def diag(field, values):
    M = field.Zeros((len(values), len(values)))
    for i, v in enumerate(values):
        M[i, i] = v
    return M


def to_ints(M):
    """Row-major nested lists of integer encodings"""
    return M.tolist()
