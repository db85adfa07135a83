import pytest

from helpers import algebra, model, plane
from quadplanes import axiomlab, projgeom, vsets
from quadplanes.axiomlab import (AxiomReport, affine_plane_report,
                                 check_h_axioms, check_s_axioms,
                                 check_s_reference, check_v_axioms,
                                 conic_cross_ratio, containment_uniqueness,
                                 coverage_report, hypersurface_check,
                                 intersection_report,
                                 reference_line_quadric_check,
                                 reference_tangent_check, singular_plane_census,
                                 tangent_report)
from quadplanes.gf import make_field
from quadplanes.projgeom import enumerate_points, span
from quadplanes.quadalg import DUAL, EXTENSION, SPLIT

F2 = make_field(2)
F3 = make_field(3)
KINDS = [EXTENSION, DUAL, SPLIT]


class MutantModel:
    """Model proxy with overridden attributes for negative controls."""

    def __init__(self, base, **overrides):
        self._base = base
        self._over = overrides

    def __getattr__(self, name):
        if name in self._over:
            return self._over[name]
        return getattr(self._base, name)


def all_hold(reports):
    return all(rep.holds for rep in reports.values()
               if isinstance(rep, AxiomReport))


# ---------------------------------------------------------------------------
# positive controls

@pytest.mark.parametrize("kind", KINDS)
def test_v_axioms_hold_q2(kind):
    m = model(2, 1, kind)
    reports = check_v_axioms(m)
    assert set(reports) == {"V1", "V2", "V3*"}
    assert all_hold(reports)
    assert reports["V1"].stats["pairs"] > 0
    assert sum(reports["V2"].stats["intersection_dims"].values()) > 0
    assert set(reports["V3*"].stats["tangent_dims"]) == {4}


@pytest.mark.parametrize("kind", KINDS)
def test_reference_point_and_line_q2(kind):
    m = model(2, 1, kind)
    ok, T = reference_tangent_check(m)
    assert ok and T.dim == 4
    assert reference_line_quadric_check(m)


def test_s_axioms_hold_split_q2():
    m = model(2, 1, SPLIT)
    out = check_s_axioms(m)
    assert all_hold(out)
    assert out["segre_equivalent"]
    census = out["singular_plane_census"]
    # every point of the Segre variety lies on exactly two singular planes
    assert census["per_point_counts"] == {2: len(m.X)}
    with pytest.raises(ValueError):
        check_s_axioms(model(2, 1, DUAL))


@pytest.mark.parametrize("n", [2, 3])
def test_s_reference_constructions(n):
    out = check_s_reference(n, F2)
    assert all_hold(out)
    assert out["all_hypos"]
    assert out["ambient_dim"] == 2 * (n + 1) - 1


def test_h_axioms_hold_dual_q2():
    m = model(2, 1, DUAL)
    out = check_h_axioms(m)
    assert out["Y_is_plane"]
    assert out["radical_bijection"]
    for key in ("H1", "H2", "H3*", "Hj1", "Hj2", "Hj3", "Hj4",
                "chi_well_defined", "line_in_unique_plane",
                "scroll_cones", "scroll_cross_ratio"):
        assert out[key].holds, key
    assert out["veronese"]["identified"]
    assert out["veronese"]["span_dim"] == 5
    assert out["veronese"]["skew_to_pi_Y"]
    census = out["census"]
    assert census["n"] == 28
    assert census["g_x"] == {3: 28}
    assert census["n_x"] == {6: 28}
    assert census["X_y_sizes"] == {12: 7}
    assert census["identity_4nx_gx_1"]
    with pytest.raises(ValueError):
        check_h_axioms(model(2, 1, SPLIT))


# ---------------------------------------------------------------------------
# negative controls: each engine fails on mutated input

def test_coverage_report_negative():
    m = model(2, 1, DUAL)
    full = [xi.quadric.points for xi in m.Xi]
    assert coverage_report("V1", m.X, full).holds
    rep = coverage_report("V1", m.X, full[1:])  # drop one member
    assert not rep.holds
    assert 0 < rep.witness_count
    assert len(rep.witnesses) <= axiomlab.MAX_WITNESSES


def test_intersection_report_negative():
    m = model(2, 1, DUAL)
    entries = [(xi.subspace, xi.quadric.points) for xi in m.Xi]
    assert not intersection_report("V2", entries,
                                   allowed=lambda i, j, p: False).holds
    # selecting every intersection point cannot fit in codim 1
    rep = intersection_report("V2", entries,
                              allowed=lambda i, j, p: True,
                              codim_sets=lambda i, j, p: True)
    assert not rep.holds


def test_tangent_report_negative():
    m = model(2, 1, DUAL)
    F = m.algebra.field
    entries = [(xi.subspace, xi.quadric.points) for xi in m.Xi]
    assert tangent_report("V3*", F, m.X, entries, max_dim=4).holds
    assert not tangent_report("V3*", F, m.X, entries, max_dim=3).holds


def test_v_axioms_detect_missing_member():
    m = model(2, 1, DUAL)
    mutant = MutantModel(m, Xi=m.Xi[1:])
    reports = check_v_axioms(mutant)
    assert not reports["V1"].holds


def test_h_axioms_detect_missing_member():
    m = model(2, 1, DUAL)
    mutant = MutantModel(m, Xi=m.Xi[1:])
    out = check_h_axioms(mutant)
    assert not out["H1"].holds


def test_reference_checks_negative():
    # in non-matrices coordinates the literal reference equations fail
    m = model(2, 1, DUAL, "juxtaposition")
    assert not reference_line_quadric_check(m)


def test_affine_plane_report():
    # AG(2, 2): 4 points, 6 lines of size 2
    pts = list(range(4))
    lines = [frozenset(c) for c in
             [(0, 1), (2, 3), (0, 2), (1, 3), (0, 3), (1, 2)]]
    assert affine_plane_report("ag22", pts, lines).holds
    # dropping a line breaks pair coverage and the parallel axiom
    assert not affine_plane_report("broken", pts, lines[1:]).holds
    # the Fano plane is not affine (no parallels)
    fano_pts = list(enumerate_points(2, F2))
    fano_lines = []
    seen = set()
    for a in fano_pts:
        for b in fano_pts:
            if a < b:
                L = frozenset(projgeom.line_through(F2, a, b))
                seen.add(L)
    assert not affine_plane_report("fano", fano_pts, sorted(seen, key=sorted)).holds


def test_singular_plane_census_elliptic_is_empty():
    m = model(2, 1, EXTENSION)
    census = singular_plane_census(m.algebra.field, m.X)
    assert census["full_lines"] == 0 and not census["planes"]


def test_conic_cross_ratio_invariance():
    img, base = vsets.quadric_veronese_points(F3)
    # a conic: the Veronese image of a line of PG(2, 3)
    L = sorted(projgeom.line_through(F3, (1, 0, 0), (0, 1, 0)))
    vmap = dict(zip(base, img))
    conic = [vmap[p] for p in L]
    four = conic[:4]
    cr = conic_cross_ratio(F3, conic, four)
    assert cr != projgeom.INF
    # invariance under a projectivity of the ambient space
    M = tuple(tuple(1 if i == j else 0 for j in range(6)) for i in range(6))
    M = tuple(tuple(F3.add(M[i][j], 1 if (i, j) == (0, 5) else 0)
                    for j in range(6)) for i in range(6))
    conic2 = [projgeom.apply_projectivity(F3, M, p) for p in conic]
    four2 = [projgeom.apply_projectivity(F3, M, p) for p in four]
    assert conic_cross_ratio(F3, conic2, four2) == cr


def test_hypersurface_check_labels():
    space = span(F2, [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)])
    # elliptic quadric: all points regular
    pts = [p for p in enumerate_points(3, F2)
           if F2.mul(p[0], p[1]) == F2.add(F2.mul(p[2], p[2]),
                                           F2.add(F2.mul(p[2], p[3]),
                                                  F2.mul(p[3], p[3])))]
    out = hypersurface_check(space, pts)
    assert {label for _, _, label in out} == {"regular"}
    # a full plane inside the 3-space: every point singular in the plane
    plane_pts = [p for p in enumerate_points(3, F2) if p[3] == 0]
    sub = span(F2, plane_pts)
    out = hypersurface_check(sub, plane_pts)
    assert {label for _, _, label in out} == {"singular"}


# ---------------------------------------------------------------------------
# containment uniqueness (documented behavior; the acceptance gate asserts
# the target property itself)

def test_containment_uniqueness_extension_and_split():
    rep = containment_uniqueness(model(2, 1, EXTENSION))
    assert rep.holds
    assert rep.stats["max_meet_outside"] < rep.stats["quadric_size"]
    assert containment_uniqueness(model(2, 1, SPLIT)).holds


def test_containment_uniqueness_dual_finds_outside_tubes():
    """The dual plane over F_2 genuinely contains tube configurations in
    3-spaces outside the line family: three singular lines through a common
    vertex span such a 3-space.  The checker must report them."""
    rep = containment_uniqueness(model(2, 1, DUAL))
    assert not rep.holds
    assert any(w[0] == "outside" for w in rep.witnesses)


def test_containment_uniqueness_guard():
    with pytest.raises(ValueError):
        containment_uniqueness(model(2, 2, DUAL))
