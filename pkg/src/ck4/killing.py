"""Connections whose parallel sections are conformal Killing 2-forms.

For each orientation side the solution data of the conformal Killing
equation stacks into a section (omega, theta, sigma) of the rank-10 bundle
Lambda^2_side + T + Lambda^2_opposite:

    nabla_X omega = (X ^ theta)_side
    nabla_X theta = 1/2 [Ric0, omega](X)
                    + 1/2 (-(S/6) omega + W_side(omega))(X) + 1/2 sigma(X)
    nabla_X sigma = sum_j e_j ^ [nabla_j Ric0, omega](X)
                    + sum_j e_j ^ [Ric0, (e_j ^ theta)_side](X)
                    + 2 R_{X, theta} + (S/6)(X ^ theta)_side
                    - (nabla_X W_side)(omega) - W_side((X ^ theta)_side)

with sigma living on the opposite side and R_{X,theta} = -RR(X ^ theta).
The sigma row is the opposite-side projection of the bracketed display:
along solution data the display already is opposite-side valued, so the
projection changes nothing there, but on arbitrary sections it picks up a
same-side component proportional to W_side and would otherwise fail to be
bundle-valued.  In the left-invariant trivialisation the connection is four
constant 10x10 matrices; dimensions of parallel-section spaces come from the
infinitesimal holonomy algebra (curvature endomorphisms closed under
bracketing with the connection coefficients), which determines parallel
sections because left-invariant connections on a simply connected group are
real-analytic.

Section ordering is fixed globally: 3 side coordinates of omega, then the 4
frame components of theta, then the 3 opposite-side coordinates of sigma.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import curvature as curv
from . import liealg
from .exterior4 import (
    _apply_biv6,
    _asd3,
    _biv6_of_endo,
    _endo_of_biv6,
    _from_asd3,
    _from_sd3,
    _sd3,
    _wedge2t,
    from_asd_coords,
    from_sd_coords,
)
from .linalg import (
    FloatSpan,
    IntSpan,
    dot,
    float_kernel,
    int_scale,
    is_zero_vec,
    max_abs,
    mcomm,
    msub,
    mvec,
    nullspace,
)
from .scalars import is_zero

PLUS = "plus"
MINUS = "minus"
SIDES = (PLUS, MINUS)

_SIXTH = Fraction(1, 6)
_HALF = Fraction(1, 2)
_BASIS4 = tuple(tuple(1 if r == i else 0 for r in range(4)) for i in range(4))


def _side_data(cd, side):
    """(project, embed, W, side connection) for one orientation side."""
    if side == PLUS:
        return _sd3, _from_sd3, cd.wplus, cd.conn_sd
    if side == MINUS:
        return _asd3, _from_asd3, cd.wminus, cd.conn_asd
    raise ValueError(f"side must be 'plus' or 'minus', got {side!r}")


def _opposite(side):
    return MINUS if side == PLUS else PLUS


@dataclass(frozen=True)
class KillingConnection:
    side: str
    gamma: tuple  # four 10x10 matrices, ordering (omega, theta, sigma)
    mla: object
    # largest same-side component of the sigma-row couplings before the
    # opposite-side projection; 0 whenever this side's Weyl block vanishes
    row3_defect: object = 0


@dataclass(frozen=True)
class HolonomyResult:
    generators: tuple  # closed list of curvature endomorphisms (gcd-normalised)
    iterations: int
    parallel_dim: int
    kernel: tuple  # joint kernel basis vectors
    warnings: tuple


def build_killing_connection(mla, cd, side):
    """Assemble the four 10x10 connection coefficient matrices for one side."""
    proj, embed, w, conn_w = _side_data(cd, side)
    proj_o, embed_o, _, conn_o = _side_data(cd, _opposite(side))
    gam = cd.gamma
    scal = cd.scal
    ric0 = cd.ric0
    d_ric0 = curv.cov_deriv_endo(ric0, curv.ConnectionCoeffs(gamma=gam))
    d_w = curv.cov_deriv_weyl(w, conn_w)
    scale = max(1, max_abs(cd.curv_op), abs(scal))

    side_basis_endos = tuple(
        _endo_of_biv6(embed(tuple(1 if p == a else 0 for p in range(3)))) for a in range(3)
    )
    opp_basis_endos = tuple(
        _endo_of_biv6(embed_o(tuple(1 if p == a else 0 for p in range(3)))) for a in range(3)
    )

    matrices = []
    defect = 0
    for i in range(4):
        ei = _BASIS4[i]
        m = [[0] * 10 for _ in range(10)]

        # omega rows: nabla omega - (e_i ^ theta)_side
        for a in range(3):
            for b in range(3):
                m[a][b] = conn_w[i][a][b]
        for j in range(4):
            coords = proj(_wedge2t(ei, _BASIS4[j]))
            for a in range(3):
                m[a][3 + j] = -coords[a]

        # theta rows: nabla theta - 1/2 [Ric0, omega](e_i)
        #                         - 1/2 (-(S/6) omega + W omega)(e_i) - 1/2 sigma(e_i)
        for r in range(4):
            for j in range(4):
                m[3 + r][3 + j] = gam[i][r][j]
        for a in range(3):
            comm_vec = mvec(mcomm(ric0, side_basis_endos[a]), ei)
            w_col = tuple(w[p][a] for p in range(3))
            curv_biv = embed(
                tuple(
                    (-scal * _SIXTH if p == a else 0) + w_col[p] for p in range(3)
                )
            )
            curv_vec = _apply_biv6(curv_biv, ei)
            for r in range(4):
                m[3 + r][a] = -_HALF * (comm_vec[r] + curv_vec[r])
        for a in range(3):
            sig_vec = mvec(opp_basis_endos[a], ei)
            for r in range(4):
                m[3 + r][7 + a] = -_HALF * sig_vec[r]

        # sigma rows: nabla sigma - D_i(omega, theta).  Along conformal
        # Killing data the bracketed expression equals nabla sigma, hence is
        # opposite-side valued; on arbitrary sections it acquires a same-side
        # component proportional to this side's Weyl block, so the coupling
        # is its opposite-side projection (the identity along solutions).
        for a in range(3):
            for b in range(3):
                m[7 + a][7 + b] = conn_o[i][a][b]
        for a in range(3):
            total = [0] * 6
            for j in range(4):
                vec = mvec(mcomm(d_ric0[j], side_basis_endos[a]), ei)
                wj = _wedge2t(_BASIS4[j], vec)
                for p in range(6):
                    total[p] += wj[p]
            dw_col = embed(tuple(d_w[i][p][a] for p in range(3)))
            for p in range(6):
                total[p] -= dw_col[p]
            defect = max(defect, *(abs(x) for x in proj(total)))
            coords = proj_o(total)
            for r in range(3):
                m[7 + r][a] = -coords[r]
        for j in range(4):
            ej = _BASIS4[j]
            wed = _wedge2t(ei, ej)
            side_part = embed(proj(wed))
            total = list(curv.curvature_2form_via_op(cd, ei, ej))  # R_{e_i, e_j}
            for p in range(6):
                total[p] *= 2
            for l in range(4):
                proj_l = embed(proj(_wedge2t(_BASIS4[l], ej)))
                vec = mvec(mcomm(ric0, _endo_of_biv6(proj_l)), ei)
                wl = _wedge2t(_BASIS4[l], vec)
                for p in range(6):
                    total[p] += wl[p]
            for p in range(6):
                total[p] += scal * _SIXTH * side_part[p]
            w_img = embed(mvec(w, proj(wed)))
            for p in range(6):
                total[p] -= w_img[p]
            defect = max(defect, *(abs(x) for x in proj(total)))
            coords = proj_o(total)
            for r in range(3):
                m[7 + r][3 + j] = -coords[r]

        matrices.append(tuple(tuple(row) for row in m))
    w_zero = is_zero_vec([x for row in w for x in row], mla.eps, scale)
    ric0_zero = is_zero_vec([x for row in ric0 for x in row], mla.eps, scale)
    if w_zero and ric0_zero and not is_zero(defect, mla.eps, scale):
        # on the Einstein, half-flat side the display itself is pure
        raise RuntimeError("sigma row acquired a same-side component unexpectedly")
    return KillingConnection(
        side=side, gamma=tuple(matrices), mla=mla, row3_defect=defect
    )


def connection_curvature(gammas, mla):
    """Curvature endomorphisms K_ij = [G_i, G_j] - sum_k c^k_ij G_k, i < j."""
    out = []
    for i in range(4):
        for j in range(i + 1, 4):
            k = mcomm(gammas[i], gammas[j])
            for l in range(4):
                cl = mla.c[i][j][l]
                if cl == 0:
                    continue
                k = msub(k, tuple(tuple(cl * x for x in row) for row in gammas[l]))
            out.append(k)
    return out


def _holonomy_exact(gammas, mla, n):
    gam_int = [int_scale(g) for g in gammas]
    span = IntSpan(n * n)
    closed = []
    frontier = []
    for k in connection_curvature(gammas, mla):
        if all(x == 0 for row in k for x in row):
            continue
        ki = int_scale(k)
        if span.add(tuple(x for row in ki for x in row)):
            closed.append(ki)
            frontier.append(ki)
    iterations = 0
    while frontier:
        iterations += 1
        nxt = []
        for a in frontier:
            for g in gam_int:
                b = mcomm(g, a)
                if all(x == 0 for row in b for x in row):
                    continue
                b = int_scale(b)
                if span.add(tuple(x for row in b for x in row)):
                    closed.append(b)
                    nxt.append(b)
        frontier = nxt
        if span.dim > n * n:
            raise RuntimeError("holonomy closure exceeded the full matrix algebra")
    rows = [row for m in closed for row in m]
    kernel = nullspace(rows, n, 0)
    for v in kernel:
        for m in closed:
            if any(x != 0 for x in mvec(m, v)):
                raise RuntimeError("holonomy kernel vector not annihilated")
    return HolonomyResult(
        generators=tuple(closed),
        iterations=iterations,
        parallel_dim=len(kernel),
        kernel=tuple(kernel),
        warnings=(),
    )


def _holonomy_float(gammas, mla, n):
    eps = mla.eps
    span = FloatSpan(n * n, eps)
    closed = []
    frontier = []
    for k in connection_curvature(gammas, mla):
        kf = tuple(tuple(float(x) for x in row) for row in k)
        if span.add(tuple(x for row in kf for x in row)):
            closed.append(kf)
            frontier.append(kf)
    gam_f = [tuple(tuple(float(x) for x in row) for row in g) for g in gammas]
    iterations = 0
    while frontier:
        iterations += 1
        nxt = []
        for a in frontier:
            for g in gam_f:
                b = mcomm(g, a)
                if span.add(tuple(x for row in b for x in row)):
                    closed.append(b)
                    nxt.append(b)
        frontier = nxt
        if span.dim > n * n:
            raise RuntimeError("holonomy closure exceeded the full matrix algebra")
    rows = [row for m in closed for row in m]
    kernel, warnings = float_kernel(rows, n, eps)
    return HolonomyResult(
        generators=tuple(closed),
        iterations=iterations,
        parallel_dim=len(kernel),
        kernel=tuple(kernel),
        warnings=tuple(warnings),
    )


def holonomy_parallel_dim(kc):
    """Dimension of the space of parallel sections of a Killing connection."""
    n = len(kc.gamma[0])
    if kc.mla.eps == 0:
        return _holonomy_exact(kc.gamma, kc.mla, n)
    return _holonomy_float(kc.gamma, kc.mla, n)


def killing_analysis(mla, cd=None):
    """Both sides at once: {side: (KillingConnection, HolonomyResult)}."""
    cd = cd if cd is not None else curv.riemann(mla)
    out = {}
    for side in SIDES:
        kc = build_killing_connection(mla, cd, side)
        out[side] = (kc, holonomy_parallel_dim(kc))
    return out


def ck_dims(mla, cd=None):
    """Dimensions of the conformal Killing 2-form spaces, (plus, minus)."""
    analysis = killing_analysis(mla, cd)
    return analysis[PLUS][1].parallel_dim, analysis[MINUS][1].parallel_dim


def invariant_ck_solve(mla, side, cd=None):
    """Left-invariant solutions of nabla omega = (X ^ theta)_side.

    Returns (omega as a 2-form, theta) pairs spanning the solution space and
    asserts that every solution has theta = 0, i.e. is parallel.
    """
    cd = cd if cd is not None else curv.riemann(mla)
    proj, embed, _, conn_w = _side_data(cd, side)
    rows = []
    for i in range(4):
        for a in range(3):
            row = list(conn_w[i][a]) + [0] * 4
            for j in range(4):
                row[3 + j] = -proj(_wedge2t(_BASIS4[i], _BASIS4[j]))[a]
            rows.append(tuple(row))
    basis = nullspace(rows, 7, mla.eps)
    out = []
    from_coords = from_sd_coords if side == PLUS else from_asd_coords
    for v in basis:
        theta = v[3:]
        if not is_zero_vec(theta, mla.eps):
            raise RuntimeError(
                "invariant conformal Killing solution with nonzero divergence part"
            )
        out.append((from_coords(v[:3]), theta))
    return out


# ---------------------------------------------------------------------------
# rank-8 flat connection on half-conformally-flat Kaehler-Einstein input
# ---------------------------------------------------------------------------

class PreconditionError(ValueError):
    """A hypothesis of the rank-8 construction fails; names the hypothesis."""

    def __init__(self, hypothesis, detail=""):
        self.hypothesis = hypothesis
        super().__init__(f"{hypothesis}{': ' + detail if detail else ''}")


@dataclass(frozen=True)
class Rank8Result:
    side: str             # the Weyl-vanishing side carrying omega
    gamma8: tuple         # four 8x8 matrices, ordering (omega, theta, f)
    curvature: tuple      # the six curvature endomorphisms
    is_flat: bool
    parallel_dim: int
    degenerate_flat_metric: bool  # scalar curvature 0: the dim-8 count is void
    notes: tuple


def rank8_connection(mla, j, cd=None):
    """Flat rank-8 connection on Lambda^2_side + T + R.

    Requires an Einstein metric, one vanishing Weyl half, and a Kaehler
    structure J whose fundamental form lies on the opposite side.  Its six
    curvature endomorphisms vanish identically and, on a simply connected
    group with S != 0, its 8-dimensional parallel space realises the
    conformal Killing forms of the vanishing side.
    """
    cd = cd if cd is not None else curv.riemann(mla)
    eps = mla.eps
    scale = max(1, max_abs(cd.curv_op), abs(cd.scal))
    if not liealg.is_orthogonal_acs(j, eps):
        raise PreconditionError("orthogonal-almost-complex", "J^2 != -Id or J not orthogonal")
    if not liealg.nijenhuis_is_zero(j, mla):
        raise PreconditionError("integrable", "Nijenhuis tensor does not vanish")
    for g in cd.gamma:
        if not is_zero_vec([x for row in mcomm(g, j) for x in row], eps, scale):
            raise PreconditionError("kaehler", "J is not parallel")
    fl = curv.flags(mla, cd)
    if not fl.is_einstein:
        raise PreconditionError("einstein", "trace-free Ricci does not vanish")
    omega6 = _biv6_of_endo(j)
    omega_sd, omega_asd = _sd3(omega6), _asd3(omega6)
    if is_zero_vec(omega_asd, eps):
        omega_side = PLUS
    elif is_zero_vec(omega_sd, eps):
        omega_side = MINUS
    else:
        raise PreconditionError("pure-orientation", "fundamental form is not SD or ASD")
    side = _opposite(omega_side)
    half_zero = fl.is_half_cf_plus if side == PLUS else fl.is_half_cf_minus
    if not half_zero:
        raise PreconditionError(
            "half-conformally-flat",
            f"Weyl block opposite to the Kaehler form ({side}) does not vanish",
        )

    proj, embed, _, conn_w = _side_data(cd, side)
    gam = cd.gamma
    scal = cd.scal
    s12 = scal * Fraction(1, 12)
    s4 = scal * Fraction(1, 4)
    matrices = []
    for i in range(4):
        ei = _BASIS4[i]
        m = [[0] * 8 for _ in range(8)]
        for a in range(3):
            for b in range(3):
                m[a][b] = conn_w[i][a][b]
        for jj in range(4):
            coords = proj(_wedge2t(ei, _BASIS4[jj]))
            for a in range(3):
                m[a][3 + jj] = -coords[a]
        for r in range(4):
            for jj in range(4):
                m[3 + r][3 + jj] = gam[i][r][jj]
        for a in range(3):
            vec = _apply_biv6(embed(tuple(1 if p == a else 0 for p in range(3))), ei)
            for r in range(4):
                m[3 + r][a] = s12 * vec[r]
        jei = mvec(j, ei)
        for r in range(4):
            m[3 + r][7] = -_HALF * jei[r]
        for jj in range(4):
            m[7][3 + jj] = s4 * j[jj][i]  # (S/4) Omega(e_i, e_j) = (S/4) <J e_i, e_j>
        matrices.append(tuple(tuple(row) for row in m))
    matrices = tuple(matrices)

    ks = connection_curvature(matrices, mla)
    is_flat = all(is_zero_vec([x for row in k for x in row], eps, scale) for k in ks)
    if is_flat:
        parallel_dim = 8
    else:
        kc = KillingConnection(side=side, gamma=matrices, mla=mla)
        parallel_dim = holonomy_parallel_dim(kc).parallel_dim
    degenerate = is_zero(scal, eps, scale)
    notes = []
    if degenerate:
        notes.append(
            "scalar curvature is 0 (flat metric): the parallel space of the "
            "rank-8 connection no longer counts the conformal Killing forms"
        )
    return Rank8Result(
        side=side,
        gamma8=matrices,
        curvature=tuple(ks),
        is_flat=is_flat,
        parallel_dim=parallel_dim,
        degenerate_flat_metric=degenerate,
        notes=tuple(notes),
    )


# ---------------------------------------------------------------------------
# Weyl eigenstructure probe
# ---------------------------------------------------------------------------

def weyl_eigenstructure_check(cd, omega, eps=0):
    """Check W(omega) = lambda*omega with both complementary eigenvalues
    equal to -lambda/2 on omega's side.

    Returns a dict with the side, eigenvalue, and boolean outcome; a 2-form
    that is not a Hodge eigenvector is rejected.
    """
    comps = omega.components if hasattr(omega, "components") else tuple(omega)
    sd, asd = _sd3(comps), _asd3(comps)
    scale = max(1, max(abs(x) for x in comps))
    if is_zero_vec(asd, eps, scale) and not is_zero_vec(sd, eps, scale):
        side, p, w = PLUS, sd, cd.wplus
    elif is_zero_vec(sd, eps, scale) and not is_zero_vec(asd, eps, scale):
        side, p, w = MINUS, asd, cd.wminus
    else:
        raise ValueError("probe 2-form must be nonzero and purely SD or ASD")
    wp = mvec(w, p)
    norm2 = dot(p, p)
    lam = dot(wp, p) / norm2
    is_eig = is_zero_vec(vsub_tuple(wp, tuple(lam * x for x in p)), eps, max(1, max_abs(w)))
    complementary_ok = True
    for a in range(3):
        for b in range(3):
            expected = (3 * lam * _HALF) * p[a] * p[b] / norm2 - (lam * _HALF if a == b else 0)
            if not is_zero(w[a][b] - expected, eps, max(1, max_abs(w))):
                complementary_ok = False
    return {
        "side": side,
        "eigenvalue": lam,
        "is_eigenvector": is_eig,
        "complementary_eigenvalues_ok": complementary_ok,
        "holds": is_eig and complementary_ok,
    }


def vsub_tuple(u, v):
    return tuple(x - y for x, y in zip(u, v))


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Classification:
    case: object  # 1 | 2 | 3 | None
    label: str
    dims: tuple  # (plus, minus)
    flags: object
    weyl_vanishing_sides: tuple
    lck_structures: tuple  # hits from the invariant scan
    warnings: tuple


CASE_LABELS = {
    1: "conformally-flat",
    2: "half-conformally-flat",
    3: "invariant-lck",
    None: "no-conformal-killing-forms",
}


def scan_invariant_lck(mla):
    """lcK hits among the 12 orthogonal J with decomposable basis 2-forms."""
    hits = []
    for desc, j in liealg.orthogonal_acs_candidates():
        report = liealg.lck_check(j, mla)
        if not (report.integrable and report.is_lck):
            continue
        sd, asd = _sd3(report.omega.components), _asd3(report.omega.components)
        side = PLUS if is_zero_vec(asd, mla.eps) else MINUS
        hits.append(
            {
                "j": desc,
                "side": side,
                "omega": report.omega.components,
                "lee_form": report.lee_form,
                "is_kahler": report.is_kahler,
            }
        )
    return tuple(hits)


def classify(mla, cd=None):
    """Match the computed data against the classification trichotomy."""
    cd = cd if cd is not None else curv.riemann(mla)
    fl = curv.flags(mla, cd)
    analysis = killing_analysis(mla, cd)
    dims = (analysis[PLUS][1].parallel_dim, analysis[MINUS][1].parallel_dim)
    warnings = tuple(
        w for side in SIDES for w in analysis[side][1].warnings
    )
    vanishing = tuple(
        side
        for side, flag in ((PLUS, fl.is_half_cf_plus), (MINUS, fl.is_half_cf_minus))
        if flag
    )
    lck_hits = scan_invariant_lck(mla)
    if dims[0] == 0 and dims[1] == 0:
        case = None
    elif fl.is_conf_flat:
        case = 1
    elif fl.is_half_cf_plus or fl.is_half_cf_minus:
        case = 2
    else:
        case = 3
    return Classification(
        case=case,
        label=CASE_LABELS[case],
        dims=dims,
        flags=fl,
        weyl_vanishing_sides=vanishing,
        lck_structures=lck_hits,
        warnings=warnings,
    )
