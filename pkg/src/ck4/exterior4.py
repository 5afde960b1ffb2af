"""Exact exterior algebra of an oriented Euclidean 4-space.

Conventions, fixed once for the whole package:

* the frame e1..e4 is orthonormal and the volume form is e1^e2^e3^e4;
* basis monomials with strictly increasing indices are orthonormal, which is
  the unique scalar product making interior and exterior multiplication by a
  vector adjoint to each other;
* 2-forms are stored on the ordered basis (e12, e13, e14, e23, e24, e34);
* the self-dual basis is {e12+e34, e13-e24, e14+e23} and the anti-self-dual
  basis is {e12-e34, e13+e24, e14-e23}; both are deliberately unnormalised
  (Gram matrix 2*Id) so that every coordinate stays rational;
* a 2-form w acts on vectors through the skew endomorphism determined by
  <w(X), Y> = w(X, Y), with X^Y mapping Z to <X,Z>Y - <Y,Z>X.

Everything in this module is a pure function over immutable tuples; values
are safe to share between threads.
"""

from __future__ import annotations

from .scalars import HALF, is_zero

GRADE_DIMS = (1, 4, 6, 4, 1)

BASIS = (
    ((),),
    ((0,), (1,), (2,), (3,)),
    ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)),
    ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)),
    ((0, 1, 2, 3),),
)
BASIS_POS = tuple({idx: pos for pos, idx in enumerate(basis)} for basis in BASIS)

B2 = BASIS[2]


def _perm_sign(seq):
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


# *e_I = sign(I, I^c) e_{I^c}, so that e_I ^ *e_I = vol
_HODGE = []
for _k in range(5):
    _table = []
    for _idx in BASIS[_k]:
        _comp = tuple(i for i in range(4) if i not in _idx)
        _table.append((BASIS_POS[4 - _k][_comp], _perm_sign(_idx + _comp)))
    _HODGE.append(tuple(_table))
_HODGE = tuple(_HODGE)


class Form:
    """Homogeneous exterior form, components on the increasing-index basis."""

    __slots__ = ("grade", "components")

    def __init__(self, grade, components):
        components = tuple(components)
        if not 0 <= grade <= 4:
            raise ValueError(f"grade {grade} out of range 0..4")
        if len(components) != GRADE_DIMS[grade]:
            raise ValueError(
                f"grade-{grade} form needs {GRADE_DIMS[grade]} components, got {len(components)}"
            )
        object.__setattr__(self, "grade", grade)
        object.__setattr__(self, "components", components)

    def __setattr__(self, name, value):
        raise AttributeError("Form objects are immutable")

    @staticmethod
    def zero(grade):
        return Form(grade, (0,) * GRADE_DIMS[grade])

    def __add__(self, other):
        if not isinstance(other, Form) or other.grade != self.grade:
            return NotImplemented
        return Form(self.grade, tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other):
        if not isinstance(other, Form) or other.grade != self.grade:
            return NotImplemented
        return Form(self.grade, tuple(a - b for a, b in zip(self.components, other.components)))

    def __neg__(self):
        return Form(self.grade, tuple(-a for a in self.components))

    def __mul__(self, scalar):
        return Form(self.grade, tuple(a * scalar for a in self.components))

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, Form)
            and other.grade == self.grade
            and all(a == b for a, b in zip(self.components, other.components))
        )

    def __hash__(self):
        return hash((self.grade, self.components))

    def is_zero(self, eps=0, scale=1):
        return all(is_zero(c, eps, scale) for c in self.components)

    def coeff(self, *indices):
        """Component on e_{i1...ik} (1-based increasing indices)."""
        idx = tuple(i - 1 for i in indices)
        return self.components[BASIS_POS[self.grade][idx]]

    def __repr__(self):
        names = ["1"] if self.grade == 0 else [
            "e" + "".join(str(i + 1) for i in idx) for idx in BASIS[self.grade]
        ]
        terms = [f"{c}*{n}" for c, n in zip(self.components, names) if c != 0]
        body = " + ".join(terms) if terms else "0"
        return f"Form{self.grade}({body})"


def one():
    return Form(0, (1,))


def vol():
    return Form(4, (1,))


def e(i):
    """Basis 1-form / vector e_i, 1-based."""
    comps = [0, 0, 0, 0]
    comps[i - 1] = 1
    return Form(1, comps)


def monomial(*indices):
    """Signed basis monomial e_{i1} ^ ... ^ e_{ik} from 1-based indices."""
    if len(set(indices)) != len(indices):
        return Form.zero(len(indices))
    zero_based = tuple(i - 1 for i in indices)
    sign = _perm_sign(zero_based)
    comps = [0] * GRADE_DIMS[len(indices)]
    comps[BASIS_POS[len(indices)][tuple(sorted(zero_based))]] = sign
    return Form(len(indices), comps)


def from_vector(v):
    return Form(1, tuple(v))


def from_biv6(b):
    return Form(2, tuple(b))


def _merge(idx_a, idx_b):
    for i in idx_a:
        if i in idx_b:
            return None
    inversions = sum(1 for i in idx_a for j in idx_b if j < i)
    return (-1) ** inversions, tuple(sorted(idx_a + idx_b))


def wedge(a, b):
    """Exterior product; degree overflow is clipped to the zero 4-form."""
    grade = a.grade + b.grade
    if grade > 4:
        return Form.zero(4)
    comps = [0] * GRADE_DIMS[grade]
    pos_map = BASIS_POS[grade]
    for pa, idx_a in enumerate(BASIS[a.grade]):
        ca = a.components[pa]
        if ca == 0:
            continue
        for pb, idx_b in enumerate(BASIS[b.grade]):
            cb = b.components[pb]
            if cb == 0:
                continue
            merged = _merge(idx_a, idx_b)
            if merged is None:
                continue
            sign, idx = merged
            comps[pos_map[idx]] += sign * ca * cb
    return Form(grade, comps)


def interior(x, a):
    """Interior product x -| a, adjoint to wedging with x."""
    xs = x.components if isinstance(x, Form) else tuple(x)
    if isinstance(x, Form) and x.grade != 1:
        raise TypeError("interior product contracts with a vector (grade-1 form)")
    if a.grade == 0:
        return Form.zero(0)
    grade = a.grade - 1
    comps = [0] * GRADE_DIMS[grade]
    pos_map = BASIS_POS[grade]
    for pa, idx in enumerate(BASIS[a.grade]):
        ca = a.components[pa]
        if ca == 0:
            continue
        for pos, i in enumerate(idx):
            if xs[i] == 0:
                continue
            rest = idx[:pos] + idx[pos + 1:]
            comps[pos_map[rest]] += (-1) ** pos * xs[i] * ca
    return Form(grade, comps)


def hodge(a):
    """Hodge star for vol = e1^e2^e3^e4; a ^ *b = <a,b> vol."""
    comps = [0] * GRADE_DIMS[4 - a.grade]
    for pos, c in enumerate(a.components):
        if c == 0:
            continue
        target, sign = _HODGE[a.grade][pos]
        comps[target] += sign * c
    return Form(4 - a.grade, comps)


def inner(a, b):
    if a.grade != b.grade:
        raise ValueError("inner product needs forms of equal grade")
    return sum(x * y for x, y in zip(a.components, b.components))


# ---------------------------------------------------------------------------
# self-dual / anti-self-dual split
# ---------------------------------------------------------------------------

SD6 = ((1, 0, 0, 0, 0, 1), (0, 1, 0, 0, -1, 0), (0, 0, 1, 1, 0, 0))
ASD6 = ((1, 0, 0, 0, 0, -1), (0, 1, 0, 0, 1, 0), (0, 0, 1, -1, 0, 0))

SD_BASIS_FORMS = tuple(Form(2, row) for row in SD6)
ASD_BASIS_FORMS = tuple(Form(2, row) for row in ASD6)


def _sd3(b):
    return ((b[0] + b[5]) * HALF, (b[1] - b[4]) * HALF, (b[2] + b[3]) * HALF)


def _asd3(b):
    return ((b[0] - b[5]) * HALF, (b[1] + b[4]) * HALF, (b[2] - b[3]) * HALF)


def _from_sd3(p):
    return (p[0], p[1], p[2], p[2], -p[1], p[0])


def _from_asd3(p):
    return (p[0], p[1], p[2], -p[2], p[1], -p[0])


def _proj_sd6(b):
    return _from_sd3(_sd3(b))


def _proj_asd6(b):
    return _from_asd3(_asd3(b))


def sd_asd_split(b):
    """Coordinates of a 2-form on the fixed unnormalised SD and ASD bases."""
    comps = b.components if isinstance(b, Form) else tuple(b)
    return _sd3(comps), _asd3(comps)


def sd_part(b):
    return from_biv6(_proj_sd6(b.components))


def asd_part(b):
    return from_biv6(_proj_asd6(b.components))


def from_sd_coords(p):
    return from_biv6(_from_sd3(p))


def from_asd_coords(p):
    return from_biv6(_from_asd3(p))


# ---------------------------------------------------------------------------
# 2-forms as skew endomorphisms
# ---------------------------------------------------------------------------

def _endo_of_biv6(b):
    rows = [[0] * 4 for _ in range(4)]
    for pos, (i, j) in enumerate(B2):
        c = b[pos]
        if c == 0:
            continue
        rows[j][i] += c
        rows[i][j] -= c
    return tuple(tuple(r) for r in rows)


def _biv6_of_endo(m):
    return tuple(m[j][i] for i, j in B2)


def _apply_biv6(b, x):
    """Action of a 2-form on a vector without materialising the matrix."""
    out = [0, 0, 0, 0]
    for pos, (i, j) in enumerate(B2):
        c = b[pos]
        if c == 0:
            continue
        out[j] += c * x[i]
        out[i] -= c * x[j]
    return tuple(out)


def _wedge2t(u, v):
    return (
        u[0] * v[1] - u[1] * v[0],
        u[0] * v[2] - u[2] * v[0],
        u[0] * v[3] - u[3] * v[0],
        u[1] * v[2] - u[2] * v[1],
        u[1] * v[3] - u[3] * v[1],
        u[2] * v[3] - u[3] * v[2],
    )


def bivector_to_endo(b):
    """Skew endomorphism of a 2-form, via (X^Y)(Z) = <X,Z>Y - <Y,Z>X."""
    comps = b.components if isinstance(b, Form) else tuple(b)
    return _endo_of_biv6(comps)


def endo_to_bivector(m, eps=0):
    """Inverse of bivector_to_endo; rejects non-skew input."""
    scale = max(1, max(abs(x) for row in m for x in row))
    for i in range(4):
        for j in range(4):
            if not is_zero(m[i][j] + m[j][i], eps, scale):
                raise ValueError("endomorphism is not skew-symmetric")
    return from_biv6(_biv6_of_endo(m))


def bivector_commutator(a, b):
    """Matrix commutator of two 2-forms, pulled back to a 2-form."""
    ma = bivector_to_endo(a)
    mb = bivector_to_endo(b)
    comm = tuple(
        tuple(
            sum(ma[i][k] * mb[k][j] for k in range(4))
            - sum(mb[i][k] * ma[k][j] for k in range(4))
            for j in range(4)
        )
        for i in range(4)
    )
    return from_biv6(_biv6_of_endo(comm))


def tilde_map(a, eps=0):
    """6x6 matrix of X^Y -> A(X)^Y + X^A(Y) for a symmetric endomorphism A."""
    scale = max(1, max(abs(x) for row in a for x in row))
    for i in range(4):
        for j in range(i + 1, 4):
            if not is_zero(a[i][j] - a[j][i], eps, scale):
                raise ValueError("tilde_map needs a symmetric endomorphism")
    cols = []
    for i, j in B2:
        col_i = tuple(a[r][i] for r in range(4))
        col_j = tuple(a[r][j] for r in range(4))
        ei = tuple(1 if r == i else 0 for r in range(4))
        ej = tuple(1 if r == j else 0 for r in range(4))
        w1 = _wedge2t(col_i, ej)
        w2 = _wedge2t(ei, col_j)
        cols.append(tuple(x + y for x, y in zip(w1, w2)))
    return tuple(tuple(cols[c][r] for c in range(6)) for r in range(6))
