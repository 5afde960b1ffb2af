"""Levi-Civita connection and curvature of a left-invariant metric.

On left-invariant fields the Koszul formula loses its derivative terms, so
the connection is four constant skew matrices Gamma_i with
Gamma_i e_j = nabla_{e_i} e_j, and

    R_{e_i, e_j} = [Gamma_i, Gamma_j] - Gamma_{[e_i, e_j]}.

The curvature operator on 2-forms is taken with the sign convention
<RR(X^Y), Z^V> = <R_{Y,X} Z, V>, under which it decomposes into the scalar
part S/12, the trace-free Ricci coupling, and the two Weyl blocks acting on
the self-dual and anti-self-dual 3-spaces.  Weyl blocks are expressed in the
fixed unnormalised SD/ASD coordinates; the Gram factor 2 is divided out, so
the 3x3 blocks are honest symmetric trace-free matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import liealg
from .exterior4 import (
    B2,
    _asd3,
    _biv6_of_endo,
    _endo_of_biv6,
    _from_asd3,
    _from_sd3,
    _sd3,
    _wedge2t,
)
from .linalg import is_zero_mat, max_abs, mcomm, msub, mvec, trace
from .scalars import is_zero

_TWELFTH = Fraction(1, 12)
_QUARTER = Fraction(1, 4)


@dataclass(frozen=True)
class ConnectionCoeffs:
    """Four matrices Gamma_i with Gamma_i e_j = nabla_{e_i} e_j."""

    gamma: tuple


@dataclass(frozen=True)
class CurvatureData:
    r: tuple        # fully covariant tensor, r[i][j][k][l] = <R_{ij} e_k, e_l>
    r_end: tuple    # r_end[i][j] = matrix of R_{e_i, e_j}
    curv_op: tuple  # 6x6 on the ordered 2-form basis
    ric: tuple
    scal: object
    ric0: tuple
    wplus: tuple    # 3x3, SD coordinates
    wminus: tuple   # 3x3, ASD coordinates
    gamma: tuple
    conn_sd: tuple  # induced connection on the SD coordinates, four 3x3
    conn_asd: tuple


@dataclass(frozen=True)
class GeometryFlags:
    is_flat: bool
    is_einstein: bool
    is_conf_flat: bool
    is_half_cf_plus: bool
    is_half_cf_minus: bool


def levi_civita(mla):
    """Koszul formula on left-invariant fields; skewness and zero torsion
    are asserted rather than assumed."""
    c = mla.c
    gammas = []
    for i in range(4):
        rows = []
        for k in range(4):
            row = []
            for j in range(4):
                val = (c[i][j][k] - c[j][k][i] + c[k][i][j]) * Fraction(1, 2)
                row.append(val)
            rows.append(tuple(row))
        gammas.append(tuple(rows))
    scale = max(1, max_abs([x for g in gammas for x in g]))
    for i in range(4):
        for k in range(4):
            for j in range(4):
                if not is_zero(gammas[i][k][j] + gammas[i][j][k], mla.eps, scale):
                    raise RuntimeError("metric compatibility failed: Gamma_i not skew")
    for i in range(4):
        for j in range(4):
            for k in range(4):
                defect = gammas[i][k][j] - gammas[j][k][i] - c[i][j][k]
                if not is_zero(defect, mla.eps, scale):
                    raise RuntimeError("torsion-free condition failed")
    return ConnectionCoeffs(gamma=tuple(gammas))


def _induced_side_connection(gamma, embed, proj):
    """Blocks of the induced 2-form connection on one orientation side."""
    units = tuple(embed(tuple(1 if p == b else 0 for p in range(3))) for b in range(3))
    out = []
    for g in gamma:
        cols = [proj(_biv6_of_endo(mcomm(g, _endo_of_biv6(u)))) for u in units]
        out.append(tuple(tuple(cols[b][a] for b in range(3)) for a in range(3)))
    return tuple(out)


def _project_block(op6, proj, embed):
    """3x3 block P . op6 . E over an unnormalised side basis (Gram 2*Id)."""
    cols = [proj(mvec(op6, embed(tuple(1 if p == b else 0 for p in range(3))))) for b in range(3)]
    return tuple(tuple(cols[b][a] for b in range(3)) for a in range(3))


def riemann(mla):
    """Curvature tensor, operator, Ricci data, and Weyl blocks."""
    _ensure_sign_audit(mla)
    conn = levi_civita(mla)
    g = conn.gamma
    c = mla.c
    r_end = [[None] * 4 for _ in range(4)]
    for i in range(4):
        for j in range(4):
            bracket_part = mcomm(g[i], g[j])
            correction = [[0] * 4 for _ in range(4)]
            for k in range(4):
                ck = c[i][j][k]
                if ck == 0:
                    continue
                for a in range(4):
                    for b in range(4):
                        correction[a][b] += ck * g[k][a][b]
            r_end[i][j] = msub(bracket_part, tuple(map(tuple, correction)))
    r_end = tuple(tuple(row) for row in r_end)

    r = tuple(
        tuple(
            tuple(tuple(r_end[i][j][l][k] for l in range(4)) for k in range(4))
            for j in range(4)
        )
        for i in range(4)
    )

    cols = [_biv6_of_endo(r_end[j][i]) for (i, j) in B2]
    curv_op = tuple(tuple(cols[c6][r6] for c6 in range(6)) for r6 in range(6))
    scale = max(1, max_abs(curv_op))
    for a in range(6):
        for b in range(6):
            if not is_zero(curv_op[a][b] - curv_op[b][a], mla.eps, scale):
                raise RuntimeError("curvature operator is not symmetric")

    ric = tuple(
        tuple(sum(r[i][k][l][i] for i in range(4)) for l in range(4)) for k in range(4)
    )
    scal = sum(ric[k][k] for k in range(4))
    ric0 = tuple(
        tuple(ric[k][l] - (scal * _QUARTER if k == l else 0) for l in range(4))
        for k in range(4)
    )

    wplus = _project_block(curv_op, _sd3, _from_sd3)
    wminus = _project_block(curv_op, _asd3, _from_asd3)
    s12 = scal * _TWELFTH
    wplus = tuple(
        tuple(wplus[a][b] - (s12 if a == b else 0) for b in range(3)) for a in range(3)
    )
    wminus = tuple(
        tuple(wminus[a][b] - (s12 if a == b else 0) for b in range(3)) for a in range(3)
    )
    for blk in (wplus, wminus):
        if not is_zero(trace(blk), mla.eps, scale):
            raise RuntimeError("Weyl block is not trace-free")
        for a in range(3):
            for b in range(3):
                if not is_zero(blk[a][b] - blk[b][a], mla.eps, scale):
                    raise RuntimeError("Weyl block is not symmetric")

    conn_sd = _induced_side_connection(g, _from_sd3, _sd3)
    conn_asd = _induced_side_connection(g, _from_asd3, _asd3)

    return CurvatureData(
        r=r,
        r_end=r_end,
        curv_op=curv_op,
        ric=ric,
        scal=scal,
        ric0=ric0,
        wplus=wplus,
        wminus=wminus,
        gamma=g,
        conn_sd=conn_sd,
        conn_asd=conn_asd,
    )


def weyl_blocks(cd):
    """The two Weyl blocks extracted from the curvature operator."""
    return cd.wplus, cd.wminus


def flags(mla, cd):
    """Thresholded geometric predicates; exact in the rational backend."""
    eps = mla.eps
    curv_scale = max(1, max_abs(cd.curv_op))
    einstein_scale = max(1, abs(cd.scal))
    is_flat = all(is_zero_mat(cd.r_end[i][j], eps, curv_scale) for i in range(4) for j in range(4))
    is_einstein = is_zero_mat(cd.ric0, eps, einstein_scale)
    half_plus = is_zero_mat(cd.wplus, eps, curv_scale)
    half_minus = is_zero_mat(cd.wminus, eps, curv_scale)
    return GeometryFlags(
        is_flat=is_flat,
        is_einstein=is_einstein,
        is_conf_flat=half_plus and half_minus,
        is_half_cf_plus=half_plus,
        is_half_cf_minus=half_minus,
    )


def cov_deriv_endo(a, conn):
    """Covariant derivatives [Gamma_i, A] of a constant-component endomorphism."""
    return tuple(mcomm(g, a) for g in conn.gamma)


def cov_deriv_weyl(w, conn_side):
    """Same, for an endomorphism of one of the 2-form sides (3x3 blocks)."""
    return tuple(mcomm(g, w) for g in conn_side)


def curvature_2form_direct(cd, x, th):
    """2-form of Z -> R_{X, theta} Z assembled from the curvature tensor."""
    out = [0] * 6
    for i in range(4):
        if x[i] == 0:
            continue
        for j in range(4):
            if th[j] == 0:
                continue
            biv = _biv6_of_endo(cd.r_end[i][j])
            for p in range(6):
                out[p] += x[i] * th[j] * biv[p]
    return tuple(out)


def curvature_2form_via_op(cd, x, th):
    """The same 2-form computed as -RR(X ^ theta)."""
    return tuple(-v for v in mvec(cd.curv_op, _wedge2t(x, th)))


_SIGN_AUDIT_DONE = False


def _ensure_sign_audit(mla):
    """One-time consistency check between the two curvature 2-form routes."""
    global _SIGN_AUDIT_DONE
    if _SIGN_AUDIT_DONE or mla.eps != 0:
        return
    _SIGN_AUDIT_DONE = True
    probe = liealg.gab(2, 1)
    cd = riemann(probe)
    x = (1, -2, 3, 1)
    th = (2, 1, -1, 4)
    direct = curvature_2form_direct(cd, x, th)
    via_op = curvature_2form_via_op(cd, x, th)
    if any(a != b for a, b in zip(direct, via_op)):
        raise RuntimeError(
            "sign audit failed: R_{X,theta} from the tensor disagrees with -RR(X^theta)"
        )


def reconstruct_curv_op(cd):
    """Scalar + trace-free-Ricci + Weyl reassembly of the curvature operator."""
    from .exterior4 import tilde_map

    s12 = cd.scal * _TWELFTH
    recon = [[s12 if a == b else 0 for b in range(6)] for a in range(6)]
    tilde = tilde_map(cd.ric0)
    for a in range(6):
        for b in range(6):
            recon[a][b] += tilde[a][b] * Fraction(1, 2)
    # embed both Weyl blocks as 6x6 maps E . W . P
    wp, wm = weyl_blocks(cd)
    for proj, embed, w in ((_sd3, _from_sd3, wp), (_asd3, _from_asd3, wm)):
        for b6 in range(6):
            unit = tuple(1 if p == b6 else 0 for p in range(6))
            image = embed(mvec(w, proj(unit)))
            for a6 in range(6):
                recon[a6][b6] += image[a6]
    return tuple(tuple(row) for row in recon)
