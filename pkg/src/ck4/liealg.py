"""Metric Lie algebras on an orthonormal oriented 4-frame.

A ``MetricLieAlgebra`` stores the full bracket table [e_i, e_j] expanded in
the frame e1..e4.  The frame is declared orthonormal and oriented by
e1^e2^e3^e4; non-orthonormal input has to be pre-orthonormalised by the
caller.  All values are immutable; every operation here is a pure function.

Besides validation (Jacobi) the module carries the invariant-form exterior
differential, the Nijenhuis integrability tensor, locally-conformally-Kaehler
detection for orthogonal almost complex structures, and constructors for the
built-in families used by the classification pipeline.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import exterior4 as ext
from .exterior4 import Form
from .linalg import is_zero_vec, mvec, solve
from .scalars import (
    DEFAULT_FLOAT_TOL,
    FLOAT,
    RATIONAL,
    ScalarError,
    infer_backend,
    is_zero,
    parse_scalar,
)


class ParseError(ValueError):
    """Malformed user input (JSON schema, scalar strings, family parameters)."""


class ValidationError(ValueError):
    """The bracket table violates the Jacobi identity."""

    def __init__(self, violations):
        self.violations = violations
        triples = ", ".join(f"(e{i},e{j},e{k})" for (i, j, k), _ in violations)
        super().__init__(f"Jacobi identity fails at {triples}")


@dataclass(frozen=True)
class MetricLieAlgebra:
    """Bracket table on a declared-orthonormal oriented frame."""

    label: str
    c: tuple  # c[i][j] = bracket [e_i, e_j] as a 4-tuple, antisymmetric
    params: tuple  # ((name, scalar), ...)
    backend: str
    eps: object  # 0 for the rational backend, a float tolerance otherwise

    @property
    def params_dict(self):
        return dict(self.params)

    def bracket(self, i, j):
        """[e_i, e_j] for 1-based frame indices."""
        return self.c[i - 1][j - 1]

    def bracket_vec(self, x, y):
        out = [0, 0, 0, 0]
        for i in range(4):
            xi = x[i]
            if xi == 0:
                continue
            for j in range(4):
                yj = y[j]
                if yj == 0:
                    continue
                cij = self.c[i][j]
                for k in range(4):
                    if cij[k] != 0:
                        out[k] += xi * yj * cij[k]
        return tuple(out)


def build_algebra(label, brackets, params=(), backend=None, eps=None):
    """Assemble a MetricLieAlgebra from {(i, j): vector} with 1-based i < j.

    Omitted pairs are zero brackets.  The backend is inferred from the raw
    values unless forced.  Jacobi is *not* checked here; call validate().
    """
    raw_values = [v for vec in brackets.values() for v in vec]
    raw_values.extend(v for _, v in params)
    if backend is None:
        backend = infer_backend(raw_values)
    if eps is None:
        eps = 0 if backend == RATIONAL else DEFAULT_FLOAT_TOL
    table = [[(0, 0, 0, 0)] * 4 for _ in range(4)]
    for (i, j), vec in brackets.items():
        if not (1 <= i < j <= 4):
            raise ParseError(f"bracket pair ({i},{j}) must satisfy 1 <= i < j <= 4")
        parsed = tuple(parse_scalar(v, backend) for v in vec)
        if len(parsed) != 4:
            raise ParseError(f"bracket ({i},{j}) needs 4 components")
        table[i - 1][j - 1] = parsed
        table[j - 1][i - 1] = tuple(-v for v in parsed)
    parsed_params = tuple((name, parse_scalar(v, backend)) for name, v in params)
    return MetricLieAlgebra(
        label=label,
        c=tuple(tuple(row) for row in table),
        params=parsed_params,
        backend=backend,
        eps=eps,
    )


def validate(mla):
    """All Jacobi defects; empty list means the table is a Lie algebra."""
    violations = []
    scale = max(1, max(abs(x) for row in mla.c for vec in row for x in vec))
    basis = [tuple(1 if r == i else 0 for r in range(4)) for i in range(4)]
    for i, j, k in itertools.combinations(range(4), 3):
        defect = [0, 0, 0, 0]
        for a, b, cc in ((i, j, k), (j, k, i), (k, i, j)):
            term = mla.bracket_vec(mla.c[a][b], basis[cc])
            for r in range(4):
                defect[r] += term[r]
        if not is_zero_vec(defect, mla.eps, scale):
            violations.append(((i + 1, j + 1, k + 1), tuple(defect)))
    return violations


def _insertion_sign(m, rest):
    """Sign of sorting (m, rest...) when rest is already increasing."""
    return (-1) ** sum(1 for r in rest if r < m)


def ce_d(form, mla):
    """Exterior differential of an invariant form, from the bracket alone.

    For 1-forms this is d a (X, Y) = -a([X, Y]); higher grades use the usual
    alternating sum over bracket insertions.  d of an invariant function is 0.
    """
    k = form.grade
    if k == 4:
        raise ValueError("no grade-5 forms on a 4-dimensional algebra")
    if k == 0:
        return Form.zero(1)
    out = []
    for target in ext.BASIS[k + 1]:
        total = 0
        for r in range(k + 1):
            for s in range(r + 1, k + 1):
                rest = tuple(t for p, t in enumerate(target) if p not in (r, s))
                vec = mla.c[target[r]][target[s]]
                acc = 0
                for m in range(4):
                    if vec[m] == 0 or m in rest:
                        continue
                    idx = tuple(sorted((m,) + rest))
                    acc += vec[m] * _insertion_sign(m, rest) * form.components[
                        ext.BASIS_POS[k][idx]
                    ]
                total += (-1) ** (r + s) * acc
        out.append(total)
    return Form(k + 1, out)


# ---------------------------------------------------------------------------
# almost complex structures
# ---------------------------------------------------------------------------

def is_orthogonal_acs(j, eps=0):
    """J^2 = -Id and J orthogonal (equivalently J skew)."""
    scale = max(1, max(abs(x) for row in j for x in row))
    for a in range(4):
        for b in range(4):
            sq = sum(j[a][k] * j[k][b] for k in range(4))
            if not is_zero(sq + (1 if a == b else 0), eps, scale):
                return False
            if not is_zero(j[a][b] + j[b][a], eps, scale):
                return False
    return True


def nijenhuis(j, mla):
    """N(e_i, e_j) table, computed independently for every ordered pair."""
    basis = [tuple(1 if r == i else 0 for r in range(4)) for i in range(4)]
    jimg = [tuple(j[r][i] for r in range(4)) for i in range(4)]

    def jv(v):
        return mvec(j, v)

    table = []
    for a in range(4):
        row = []
        for b in range(4):
            n = mla.bracket_vec(jimg[a], jimg[b])
            n = tuple(
                x - y - z - w
                for x, y, z, w in zip(
                    n,
                    jv(mla.bracket_vec(jimg[a], basis[b])),
                    jv(mla.bracket_vec(basis[a], jimg[b])),
                    mla.bracket_vec(basis[a], basis[b]),
                )
            )
            row.append(n)
        table.append(tuple(row))
    return tuple(table)


def nijenhuis_is_zero(j, mla):
    scale = max(1, max(abs(x) for row in mla.c for vec in row for x in vec))
    table = nijenhuis(j, mla)
    return all(is_zero_vec(v, mla.eps, scale) for row in table for v in row)


@dataclass(frozen=True)
class LckReport:
    """Outcome of the locally-conformally-Kaehler test for one J."""

    integrable: bool
    omega: Form  # fundamental 2-form <J., .>
    d_omega: Form
    lee_form: object  # 4-tuple, or None when d omega is not theta ^ omega
    is_lck: bool
    is_kahler: bool


def fundamental_form(j):
    """Fundamental 2-form of J: components <J e_i, e_j>."""
    return ext.from_biv6(ext._biv6_of_endo(j))


def lck_check(j, mla):
    """Solve d omega = theta ^ omega and test closedness of the Lee form."""
    omega = fundamental_form(j)
    d_omega = ce_d(omega, mla)
    if not nijenhuis_is_zero(j, mla):
        return LckReport(False, omega, d_omega, None, False, False)
    cols = [ext.wedge(ext.e(i), omega).components for i in range(1, 5)]
    rows = [tuple(cols[c][r] for c in range(4)) for r in range(4)]
    theta = solve(rows, d_omega.components, mla.eps)
    if theta is None:
        return LckReport(True, omega, d_omega, None, False, False)
    d_theta = ce_d(ext.from_vector(theta), mla)
    lee_closed = d_theta.is_zero(mla.eps)
    is_kahler = d_omega.is_zero(mla.eps)
    return LckReport(True, omega, d_omega, theta, lee_closed, is_kahler)


def orthogonal_acs_candidates():
    """The 12 orthogonal J with J e1 in {+-e2, +-e3, +-e4}, extended orthogonally.

    Their fundamental forms are exactly +-(the six SD/ASD basis 2-forms), so
    the list covers both orientations.
    """
    out = []
    for target in (2, 3, 4):
        for sign_v in (1, -1):
            p, q = [r for r in (2, 3, 4) if r != target]
            for sign_w in (1, -1):
                j = [[0] * 4 for _ in range(4)]
                j[target - 1][0] = sign_v
                j[0][target - 1] = -sign_v
                j[q - 1][p - 1] = sign_w
                j[p - 1][q - 1] = -sign_w
                desc = (
                    f"J: e1->{'-' if sign_v < 0 else ''}e{target}, "
                    f"e{p}->{'-' if sign_w < 0 else ''}e{q}"
                )
                out.append((desc, tuple(tuple(row) for row in j)))
    return out


# ---------------------------------------------------------------------------
# built-in families
# ---------------------------------------------------------------------------

def _family(label, brackets, params, backend):
    mla = build_algebra(label, brackets, params=params, backend=backend)
    violations = validate(mla)
    if violations:  # constructors must produce Lie algebras
        raise ValidationError(violations)
    return mla


def abelian(backend=None):
    """Flat R^4: every bracket vanishes."""
    return _family("abelian", {}, (), backend)


def type2(c, backend=None):
    """R x SU(2) with bracket scale c != 0 on the su(2) triple e1, e2, e3."""
    cs = parse_scalar(c, backend or infer_backend([c]))
    if cs == 0:
        raise ParseError("type2 needs c != 0")
    brackets = {
        (1, 2): (0, 0, cs, 0),
        (2, 3): (cs, 0, 0, 0),
        (1, 3): (0, -cs, 0, 0),  # [e3,e1] = c e2
    }
    return _family("type2", brackets, (("c", cs),), backend)


def type3(alpha, backend=None):
    """Solvable R x| R^3 family; frame e1 acts by Id plus a rotation of rate alpha."""
    al = parse_scalar(alpha, backend or infer_backend([alpha]))
    if al < 0:
        raise ParseError("type3 needs alpha >= 0")
    brackets = {
        (1, 2): (0, 1, al, 0),
        (1, 3): (0, -al, 1, 0),
        (1, 4): (0, 0, 0, 1),
    }
    return _family("type3", brackets, (("alpha", al),), backend)


def type4(a, b, backend=None):
    """R^2 x| R^2 family; frame (e1,e2,e3,e4) carries the two rotation rates a, b."""
    backend = backend or infer_backend([a, b])
    av = parse_scalar(a, backend)
    bv = parse_scalar(b, backend)
    brackets = {
        (1, 3): (0, 0, 1, av),
        (1, 4): (0, 0, -av, 1),
        (2, 3): (0, 0, 0, bv),
        (2, 4): (0, 0, -bv, 0),
    }
    return _family("type4", brackets, (("a", av), ("b", bv)), backend)


def type6(backend=None):
    """The unique non-abelian flat simply connected group, R x E(2)."""
    one = parse_scalar(1, backend or RATIONAL)
    brackets = {
        (1, 2): (0, 0, one, 0),
        (1, 3): (0, -one, 0, 0),
    }
    return _family("type6", brackets, (), backend)


def gab(a, b, backend=None):
    """Two-parameter solvable family carrying invariant lcK structures."""
    backend = backend or infer_backend([a, b])
    av = parse_scalar(a, backend)
    bv = parse_scalar(b, backend)
    brackets = {
        (1, 2): (0, av, -bv, 0),
        (1, 3): (0, bv, av, 0),
        (1, 4): (0, 0, 0, 2 * av),
        (2, 3): (0, 0, 0, -1),
    }
    return _family("gab", brackets, (("a", av), ("b", bv)), backend)


def gab_complex_structure(eps_sign):
    """The invariant J on the gab family, one per orientation.

    J maps e1 -> e4 and e2 -> -eps*e3; its fundamental form is
    e14 - eps*e23 (anti-self-dual for eps = +1, self-dual for eps = -1) and
    its Lee form on gab(a, b) is (eps - 2a) e1.
    """
    if eps_sign not in (1, -1):
        raise ValueError("eps_sign must be +1 or -1")
    j = [[0] * 4 for _ in range(4)]
    j[3][0] = 1
    j[0][3] = -1
    j[2][1] = -eps_sign
    j[1][2] = eps_sign
    return tuple(tuple(row) for row in j)


FAMILIES = {
    "abelian": (abelian, ()),
    "type2": (type2, ("c",)),
    "type3": (type3, ("alpha",)),
    "type4": (type4, ("a", "b")),
    "type6": (type6, ()),
    "gab": (gab, ("a", "b")),
}


def make_family(name, backend=None, **params):
    if name not in FAMILIES:
        raise ParseError(f"unknown family {name!r}; choose from {sorted(FAMILIES)}")
    ctor, wanted = FAMILIES[name]
    missing = [p for p in wanted if p not in params or params[p] is None]
    if missing:
        raise ParseError(f"family {name!r} needs parameters {missing}")
    extra = [p for p, v in params.items() if v is not None and p not in wanted]
    if extra:
        raise ParseError(f"family {name!r} does not take parameters {extra}")
    args = [params[p] for p in wanted]
    try:
        return ctor(*args, backend=backend)
    except ScalarError as exc:
        raise ParseError(str(exc)) from exc


# ---------------------------------------------------------------------------
# JSON ingestion
# ---------------------------------------------------------------------------

def from_json_dict(obj):
    """Parse the CLI input schema:

    { "label": str, "scalars": "rational" | "float",
      "brackets": [ { "i": 1, "j": 2, "v": ["0", "1", "-1/2", "0"] }, ... ] }

    Omitted pairs are zero brackets; rationals are "p/q" strings.
    """
    if not isinstance(obj, dict):
        raise ParseError("algebra JSON must be an object")
    label = obj.get("label", "user")
    if not isinstance(label, str):
        raise ParseError("'label' must be a string")
    backend = obj.get("scalars", RATIONAL)
    if backend not in (RATIONAL, FLOAT):
        raise ParseError("'scalars' must be 'rational' or 'float'")
    entries = obj.get("brackets", [])
    if not isinstance(entries, list):
        raise ParseError("'brackets' must be a list")
    brackets = {}
    for entry in entries:
        if not isinstance(entry, dict) or not {"i", "j", "v"} <= set(entry):
            raise ParseError("each bracket needs keys 'i', 'j', 'v'")
        i, j, v = entry["i"], entry["j"], entry["v"]
        if not (isinstance(i, int) and isinstance(j, int)):
            raise ParseError("'i' and 'j' must be integers")
        if not isinstance(v, list) or len(v) != 4:
            raise ParseError("'v' must be a list of 4 scalars")
        if (i, j) in brackets:
            raise ParseError(f"duplicate bracket pair ({i},{j})")
        brackets[(i, j)] = v
    try:
        return build_algebra(label, brackets, backend=backend)
    except ScalarError as exc:
        raise ParseError(str(exc)) from exc


def to_json_dict(mla):
    from .scalars import scalar_to_json

    entries = []
    for i in range(4):
        for j in range(i + 1, 4):
            vec = mla.c[i][j]
            if any(x != 0 for x in vec):
                entries.append(
                    {"i": i + 1, "j": j + 1, "v": [scalar_to_json(x) for x in vec]}
                )
    return {"label": mla.label, "scalars": mla.backend, "brackets": entries}
