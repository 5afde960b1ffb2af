"""Small dense linear algebra over exact rationals or tolerance-aware floats.

Matrices are tuples of row tuples.  With eps == 0 every routine is exact
(Fraction / int arithmetic, first-nonzero pivoting); with eps > 0 the float
versions pivot by magnitude and treat |x| <= eps * max(1, scale) as zero.
numpy is used only on the float paths (SVD ranks, displayed eigenvalues).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

import numpy as np

from .scalars import is_zero


def zeros(n, m=None):
    m = n if m is None else m
    return tuple((0,) * m for _ in range(n))


def identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def madd(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def msub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mneg(a):
    return tuple(tuple(-x for x in row) for row in a)


def mscale(s, a):
    return tuple(tuple(s * x for x in row) for row in a)


def mmul(a, b):
    # zero-aware: the pipeline's matrices are sparse and Fraction ops dominate
    bt = tuple(zip(*b))
    out = []
    for row in a:
        nz = [(k, x) for k, x in enumerate(row) if x != 0]
        out.append(tuple(sum(x * col[k] for k, x in nz) for col in bt))
    return tuple(out)


def mcomm(a, b):
    return msub(mmul(a, b), mmul(b, a))


def transpose(a):
    return tuple(zip(*a))


def mvec(a, v):
    nz = [(k, x) for k, x in enumerate(v) if x != 0]
    return tuple(sum(row[k] * x for k, x in nz) for row in a)


def dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def vadd(u, v):
    return tuple(x + y for x, y in zip(u, v))


def vsub(u, v):
    return tuple(x - y for x, y in zip(u, v))


def vscale(s, u):
    return tuple(s * x for x in u)


def trace(a):
    return sum(a[i][i] for i in range(len(a)))


def max_abs(rows):
    top = 0
    for row in rows:
        for x in row:
            if abs(x) > top:
                top = abs(x)
    return top


def is_zero_vec(v, eps=0, scale=1):
    return all(is_zero(x, eps, scale) for x in v)


def is_zero_mat(a, eps=0, scale=1):
    return all(is_zero(x, eps, scale) for row in a for x in row)


def mat_eq(a, b, eps=0, scale=1):
    return is_zero_mat(msub(a, b), eps, scale)


def rref(rows, eps=0):
    """Reduced row echelon form; returns (rows, pivot column list).

    Exact mode coerces to Fraction so that integer rows never hit float
    division."""
    if eps == 0:
        m = [[x if isinstance(x, Fraction) else Fraction(x) for x in r] for r in rows]
    else:
        m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    scale = max(1, max_abs(m))
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= len(m):
            break
        if eps == 0:
            pivot_row = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        else:
            pivot_row = max(range(r, len(m)), key=lambda i: abs(m[i][c]))
            if is_zero(m[pivot_row][c], eps, scale):
                pivot_row = None
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return [tuple(row) for row in m[:r]], pivots


def rank(rows, eps=0):
    return len(rref(rows, eps)[0])


def nullspace(rows, ncols, eps=0):
    """Basis of the right kernel, one vector per free column."""
    rows = [r for r in rows if any(x != 0 for x in r)]
    if not rows:
        return [tuple(1 if i == f else 0 for i in range(ncols)) for f in range(ncols)]
    reduced, pivots = rref(rows, eps)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def solve(a_rows, b, eps=0):
    """One exact solution of A x = b, or None when inconsistent."""
    ncols = len(a_rows[0])
    aug = [tuple(row) + (bv,) for row, bv in zip(a_rows, b)]
    reduced, pivots = rref(aug, eps)
    scale = max(1, max_abs(aug))
    for row, p in zip(reduced, pivots):
        if p == ncols:
            return None
    # spurious zero-rows with nonzero rhs are caught above via pivot in last col
    x = [0] * ncols
    for row, p in zip(reduced, pivots):
        x[p] = row[ncols]
    # verify (guards float pivoting)
    for row, bv in zip(a_rows, b):
        if not is_zero(dot(row, x) - bv, eps, scale):
            return None
    return tuple(x)


# ---------------------------------------------------------------------------
# incremental spans for the holonomy closure
# ---------------------------------------------------------------------------

def _int_gcd_normalize(vec):
    g = 0
    for x in vec:
        g = gcd(g, abs(x))
        if g == 1:
            break
    if g > 1:
        vec = [x // g for x in vec]
    return vec


def int_scale(mat):
    """Clear denominators and the content; the span of a matrix is unchanged."""
    denom = 1
    for row in mat:
        for x in row:
            if isinstance(x, Fraction):
                denom = denom * x.denominator // gcd(denom, x.denominator)
    flat = [int(x * denom) for row in mat for x in row]
    flat = _int_gcd_normalize(flat)
    n = len(mat[0])
    return tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(len(mat)))


class IntSpan:
    """Incremental integer row span with fraction-free elimination."""

    def __init__(self, ncols):
        self.ncols = ncols
        self.rows = {}  # pivot column -> normalized integer row

    @property
    def dim(self):
        return len(self.rows)

    def add(self, vec):
        """Insert a vector; True when it enlarged the span."""
        v = list(vec)
        for p in sorted(self.rows):
            if v[p]:
                row = self.rows[p]
                pv, vp = row[p], v[p]
                v = [x * pv - y * vp for x, y in zip(v, row)]
        pivot = next((i for i, x in enumerate(v) if x), None)
        if pivot is None:
            return False
        v = _int_gcd_normalize(v)
        if v[pivot] < 0:
            v = [-x for x in v]
        self.rows[pivot] = tuple(v)
        return True


class FloatSpan:
    """Incremental float span via Gram-Schmidt with a relative threshold."""

    def __init__(self, ncols, eps):
        self.ncols = ncols
        self.eps = eps
        self.basis = []

    @property
    def dim(self):
        return len(self.basis)

    def add(self, vec):
        v = np.asarray(vec, dtype=float)
        norm0 = np.linalg.norm(v)
        if norm0 == 0.0:
            return False
        for b in self.basis:
            v = v - np.dot(v, b) * b
        residual = np.linalg.norm(v)
        if residual <= self.eps * max(1.0, norm0):
            return False
        self.basis.append(v / residual)
        return True


def float_kernel(rows, ncols, eps):
    """Float kernel via SVD; also reports rank-confidence warnings.

    Singular values within a factor 10 of the zero threshold make the rank
    decision fragile, so they are surfaced as warnings.
    """
    mat = np.asarray([list(map(float, r)) for r in rows], dtype=float)
    if mat.size == 0:
        return [tuple(1 if i == f else 0 for i in range(ncols)) for f in range(ncols)], []
    _, sing, vt = np.linalg.svd(mat)
    top = sing[0] if len(sing) else 0.0
    threshold = eps * max(1.0, top)
    rnk = int(np.sum(sing > threshold))
    warnings = []
    shaky = [s for s in sing if threshold / 10.0 <= s <= threshold * 10.0]
    if shaky:
        warnings.append(
            "rank decision is within 10x of the float tolerance "
            f"(singular values {sorted(float(s) for s in shaky)})"
        )
    kernel = [tuple(float(x) for x in vt[i]) for i in range(rnk, vt.shape[0])]
    return kernel, warnings


def sym_eigenvalues(mat):
    """Eigenvalues of a small symmetric matrix, ascending floats (display only)."""
    arr = np.asarray([[float(x) for x in row] for row in mat], dtype=float)
    return [float(v) for v in np.linalg.eigvalsh(arr)]
