"""Killing connection, holonomy counts, rank-8 cross-check, classification."""

from fractions import Fraction

import pytest

from ck4 import curvature as curv
from ck4 import exterior4 as ext
from ck4 import killing, liealg
from ck4.linalg import is_zero_mat, mvec, mmul, rref, nullspace


def _flat_connection_curvatures(m):
    cd = curv.riemann(m)
    out = {}
    for side in killing.SIDES:
        kc = killing.build_killing_connection(m, cd, side)
        out[side] = killing.connection_curvature(kc.gamma, m)
    return out


def test_abelian_connection_shape_and_flatness():
    m = liealg.abelian()
    cd = curv.riemann(m)
    for side in killing.SIDES:
        kc = killing.build_killing_connection(m, cd, side)
        assert kc.row3_defect == 0
        for i in range(4):
            g = kc.gamma[i]
            # curvature couplings vanish: only the theta->omega and
            # (omega,sigma)->theta constant blocks may survive
            for r in range(3):
                for c in range(3):
                    assert g[r][c] == 0 and g[7 + r][7 + c] == 0
            for r in range(3):
                for c in range(3):
                    assert g[7 + r][c] == 0  # sigma-omega coupling
            for r in range(4):
                for c in range(4):
                    assert g[3 + r][3 + c] == 0
        for k in killing.connection_curvature(kc.gamma, m):
            assert is_zero_mat(k)


def test_conformally_flat_families_have_flat_killing_connection():
    for m in (liealg.type2(1), liealg.type3(Fraction(3, 2)), liealg.type4(1, -1), liealg.type6()):
        for ks in _flat_connection_curvatures(m).values():
            assert all(is_zero_mat(k) for k in ks)


def test_parallel_dims_flat_and_conf_flat():
    assert killing.ck_dims(liealg.abelian()) == (10, 10)
    assert killing.ck_dims(liealg.type6()) == (10, 10)
    assert killing.ck_dims(liealg.type3(1)) == (10, 10)


def test_parallel_dims_einstein_family():
    for b in (0, 1):
        dims = killing.ck_dims(liealg.gab(Fraction(1, 2), b))
        assert sorted(dims, reverse=True) == [8, 1]


def test_parallel_dims_generic_and_half_flat():
    assert killing.ck_dims(liealg.gab(2, 1)) == (1, 1)
    dims = killing.ck_dims(liealg.gab(1, 1))
    m = liealg.gab(1, 1)
    fl = curv.flags(m, curv.riemann(m))
    vanishing = "plus" if fl.is_half_cf_plus else "minus"
    d_vanish = dims[0] if vanishing == "plus" else dims[1]
    d_other = dims[1] if vanishing == "plus" else dims[0]
    assert d_vanish >= 1 and d_other == 1


def test_row3_defect_vanishes_exactly_on_half_flat_einstein_side():
    m = liealg.gab(Fraction(1, 2), 1)
    cd = curv.riemann(m)
    kc_plus = killing.build_killing_connection(m, cd, "plus")
    kc_minus = killing.build_killing_connection(m, cd, "minus")
    assert kc_plus.row3_defect == 0  # W+ = 0 and Ric0 = 0: display is pure
    assert kc_minus.row3_defect != 0  # W- != 0 forces the projection
    m2 = liealg.gab(2, 1)
    cd2 = curv.riemann(m2)
    assert killing.build_killing_connection(m2, cd2, "plus").row3_defect != 0


def test_sigma_row_reduction_on_einstein_half_flat_side():
    # with Ric0 = 0 and W_side = 0 the sigma-theta coupling must equal
    # -(S/6 + 2 W_opp)((e_i ^ theta)_opp) in opposite-side coordinates
    m = liealg.gab(Fraction(1, 2), 1)
    cd = curv.riemann(m)
    kc = killing.build_killing_connection(m, cd, "plus")
    s = cd.scal
    for i in range(4):
        ei = tuple(1 if r == i else 0 for r in range(4))
        for j in range(4):
            ej = tuple(1 if r == j else 0 for r in range(4))
            coords = ext._asd3(ext._wedge2t(ei, ej))
            expected = tuple(
                -(s * Fraction(1, 6) * coords[r] + 2 * mvec(cd.wminus, coords)[r])
                for r in range(3)
            )
            built = tuple(kc.gamma[i][7 + r][3 + j] for r in range(3))
            # the connection stores nabla sigma minus the display
            assert built == tuple(-x for x in expected)


def test_holonomy_result_contract():
    m = liealg.gab(2, 1)
    cd = curv.riemann(m)
    kc = killing.build_killing_connection(m, cd, "plus")
    h = killing.holonomy_parallel_dim(kc)
    # parallel_dim = 10 - rank of the stacked closed generators
    rows = [row for g in h.generators for row in g]
    red, _ = rref(rows, 0)
    assert h.parallel_dim == 10 - len(red)
    for v in h.kernel:
        for g in h.generators:
            assert all(x == 0 for x in mvec(g, v))
    assert h.iterations >= 1


def test_parallel_dim_invariant_under_frame_rotation():
    # rotation by (3/5, 4/5) in the (e2, e3) plane is a bracket-preserving,
    # orientation-preserving isometry of the flat type6 algebra
    c, s = Fraction(3, 5), Fraction(4, 5)
    rot = (
        (1, 0, 0, 0),
        (0, c, -s, 0),
        (0, s, c, 0),
        (0, 0, 0, 1),
    )
    inv = tuple(zip(*rot))  # orthogonal
    m = liealg.type6()
    basis = [tuple(1 if r == i else 0 for r in range(4)) for i in range(4)]
    brackets = {}
    for i in range(4):
        for j in range(i + 1, 4):
            vi = mvec(rot, basis[i])
            vj = mvec(rot, basis[j])
            w = mvec(inv, m.bracket_vec(vi, vj))
            if any(x != 0 for x in w):
                brackets[(i + 1, j + 1)] = w
    rotated = liealg.build_algebra("type6-rotated", brackets)
    assert liealg.validate(rotated) == []
    assert killing.ck_dims(rotated) == killing.ck_dims(m)


def test_abelian_kernel_satisfies_first_order_equation():
    m = liealg.abelian()
    cd = curv.riemann(m)
    for side in killing.SIDES:
        kc = killing.build_killing_connection(m, cd, side)
        h = killing.holonomy_parallel_dim(kc)
        assert h.parallel_dim == 10
        proj = ext._sd3 if side == "plus" else ext._asd3
        for v in h.kernel:
            omega, theta = v[:3], v[3:7]
            for i in range(4):
                ei = tuple(1 if r == i else 0 for r in range(4))
                # first-order jet: e_i(omega) = -(Gamma_i s)_omega must equal
                # the side coordinates of (e_i ^ theta)
                jet = tuple(-x for x in mvec(kc.gamma[i], v)[:3])
                assert jet == proj(ext._wedge2t(ei, theta))


def test_invariant_ck_solve():
    for side in killing.SIDES:
        sols = killing.invariant_ck_solve(liealg.abelian(), side)
        assert len(sols) == 3
        for omega, theta in sols:
            assert theta == (0, 0, 0, 0)
    for m in (liealg.gab(2, 1), liealg.type3(1), liealg.gab(Fraction(1, 2), 1)):
        for side in killing.SIDES:
            for omega, theta in killing.invariant_ck_solve(m, side):
                assert theta == (0, 0, 0, 0)


def test_rank8_flat_connection_matches_holonomy():
    for b in (1, -2):
        m = liealg.gab(Fraction(1, 2), b)
        res = killing.rank8_connection(m, liealg.gab_complex_structure(1))
        assert res.is_flat
        assert all(is_zero_mat(k) for k in res.curvature)
        assert res.parallel_dim == 8
        dims = killing.ck_dims(m)
        d_side = dims[0] if res.side == "plus" else dims[1]
        assert d_side == 8
        assert not res.degenerate_flat_metric


def test_rank8_degenerate_flat_case():
    ab = liealg.abelian()
    j = liealg.orthogonal_acs_candidates()[0][1]
    res = killing.rank8_connection(ab, j)
    assert res.is_flat and res.degenerate_flat_metric
    assert res.notes


def test_rank8_precondition_rejections():
    with pytest.raises(killing.PreconditionError) as err:
        killing.rank8_connection(liealg.gab(2, 1), liealg.gab_complex_structure(1))
    assert err.value.hypothesis == "kaehler"
    # Einstein but J not integrable: use a rotated non-integrable J on type2
    j_bad = ((0, -1, 0, 0), (1, 0, 0, 0), (0, 0, 0, -1), (0, 0, 1, 0))
    with pytest.raises(killing.PreconditionError):
        killing.rank8_connection(liealg.type6(), j_bad)
    not_acs = tuple(tuple(1 if i == j else 0 for j in range(4)) for i in range(4))
    with pytest.raises(killing.PreconditionError) as err:
        killing.rank8_connection(liealg.abelian(), not_acs)
    assert err.value.hypothesis == "orthogonal-almost-complex"


def test_weyl_eigenstructure_probe():
    m = liealg.gab(Fraction(7, 3), Fraction(2, 5))
    cd = curv.riemann(m)
    for omega in (ext.monomial(1, 4) + ext.monomial(2, 3), ext.monomial(1, 4) - ext.monomial(2, 3)):
        rep = killing.weyl_eigenstructure_check(cd, omega)
        assert rep["holds"]
    # a different SD 2-form is not the distinguished eigenvector
    m2 = liealg.gab(2, 1)
    cd2 = curv.riemann(m2)
    rep = killing.weyl_eigenstructure_check(cd2, ext.monomial(1, 3) - ext.monomial(2, 4))
    assert not rep["holds"]
    rep = killing.weyl_eigenstructure_check(curv.riemann(liealg.abelian()), ext.monomial(1, 4) + ext.monomial(2, 3))
    assert rep["holds"] and rep["eigenvalue"] == 0
    with pytest.raises(ValueError):
        killing.weyl_eigenstructure_check(cd2, ext.monomial(1, 2))  # mixed sides


def test_classify_cases():
    assert killing.classify(liealg.type4(1, 1)).case == 1
    res = killing.classify(liealg.gab(Fraction(1, 2), 0))
    assert res.case == 2
    assert sorted(res.dims, reverse=True) == [8, 1]
    res = killing.classify(liealg.gab(2, 1))
    assert res.case == 3
    assert res.dims == (1, 1)
    sides = {hit["side"] for hit in res.lck_structures}
    assert sides == {"plus", "minus"}


def test_classify_half_flat_mirror_family():
    # gab(-1, 1) is isometric to gab(1, 1) through the orientation-reversing
    # frame map (e1, e2, e3, e4) -> (-e1, e2, -e3, -e4), so it is genuinely
    # half-conformally flat with the dimensions swapped
    res = killing.classify(liealg.gab(-1, 1))
    assert res.case == 2
    mirror = killing.classify(liealg.gab(1, 1))
    assert sorted(res.dims) == sorted(mirror.dims)
    assert res.weyl_vanishing_sides == ("minus",)
    assert mirror.weyl_vanishing_sides == ("plus",)


def test_dim_two_or_more_implies_weyl_vanishes():
    instances = [
        liealg.type2(1),
        liealg.type3(1),
        liealg.type4(2, 1),
        liealg.type6(),
        liealg.gab(Fraction(1, 2), 1),
        liealg.gab(1, 0),
        liealg.gab(1, 1),
        liealg.gab(2, 1),
        liealg.gab(-1, 1),
        liealg.abelian(),
    ]
    for m in instances:
        res = killing.classify(m)
        for side, dim in zip(("plus", "minus"), res.dims):
            if dim >= 2:
                assert side in res.weyl_vanishing_sides


def test_scan_invariant_lck_found_on_generic_family():
    hits = killing.scan_invariant_lck(liealg.gab(2, 1))
    assert len(hits) == 4
    lee_values = sorted(hit["lee_form"][0] for hit in hits)
    assert lee_values == [-5, -5, -3, -3]
