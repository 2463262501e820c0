"""Divisors on fans: classes, Cartier data, sections, polytope duality."""

import random
from math import inf

import pytest
from hypothesis import given, settings, strategies as st

from toric_kernel import cones as cn
from toric_kernel import divisors as dv
from toric_kernel import fans as fn
from toric_kernel import polytopes as pt
from toric_kernel import zlattice as zl


P2 = fn.fan([[1, 0], [0, 1], [-1, -1]], [[0, 1], [1, 2], [0, 2]], 2)
P1P1 = fn.fan([[1, 0], [0, 1], [-1, 0], [0, -1]],
              [[0, 1], [1, 2], [2, 3], [0, 3]], 2)
HIRZ2 = fn.fan([[1, 0], [0, 1], [-1, 2], [0, -1]],
               [[0, 1], [1, 2], [2, 3], [0, 3]], 2)
DIAMOND = fn.fan([[1, 1], [-1, 1], [-1, -1], [1, -1]],
                 [[0, 1], [1, 2], [2, 3], [0, 3]], 2)
# complete simplicial surface fan whose third ray needs a multiple of 6
TILTED = fn.fan([[1, 2], [1, 0], [-3, -2], [0, 1]],
                 [[0, 1], [1, 2], [2, 3], [0, 3]], 2)
WEDGE = fn.fan([[-1, -2], [1, 0]], [[0, 1]], 2)
WEDGE_RAYS = fn.fan([[-1, -2], [1, 0]], [[0], [1]], 2)
SMOOTH_FANS = [P2, P1P1, HIRZ2]
ALL_FANS = SMOOTH_FANS + [DIAMOND, TILTED, WEDGE, WEDGE_RAYS]


def D(F, *coeffs):
    return dv.divisor(F, list(coeffs))


class TestDivisorArithmetic:
    def test_length_checked(self):
        with pytest.raises(ValueError):
            dv.divisor(P2, [1, 2])

    def test_ring_ops(self):
        a = D(P2, 1, 2, 3)
        b = D(P2, 0, -1, 1)
        assert (a + b).coeffs == [1, 1, 4]
        assert (a - b).coeffs == [1, 3, 2]
        assert (2 * a).coeffs == [2, 4, 6]
        assert (-a).coeffs == [-1, -2, -3]

    def test_mixed_fans_rejected(self):
        with pytest.raises(ValueError):
            D(P2, 1, 0, 0) + dv.divisor(P1P1, [1, 0, 0, 0])

    def test_ray_divisor(self):
        assert dv.ray_divisor(P1P1, 3).coeffs == [0, 0, 0, 1]
        with pytest.raises(IndexError):
            dv.ray_divisor(P1P1, 4)


class TestPrincipalDivisor:
    def test_zero_character(self):
        assert dv.principal_divisor(P2, [0, 0]).coeffs == [0, 0, 0]

    def test_projective_plane(self):
        d1_minus_d3 = dv.ray_divisor(P2, 0) - dv.ray_divisor(P2, 2)
        assert dv.principal_divisor(P2, [1, 0]) == d1_minus_d3

    def test_hirzebruch_second_coordinate(self):
        assert dv.principal_divisor(HIRZ2, [0, 1]).coeffs == [0, 1, 2, -1]

    def test_length_checked(self):
        with pytest.raises(ValueError):
            dv.principal_divisor(P2, [1, 0, 0])


class TestClassGroup:
    def test_projective_plane(self):
        pres, class_of = dv.class_group(P2)
        assert pres == zl.AbelianGroupPresentation(1)
        d1, d2, d3 = (class_of(dv.ray_divisor(P2, i)) for i in range(3))
        assert d1 == d2 == d3 and not d1.is_zero
        total = class_of(D(P2, 1, 1, 1))
        assert total.coords == [3 * c for c in d3.coords]

    def test_product_of_lines(self):
        pres, class_of = dv.class_group(P1P1)
        assert pres == zl.AbelianGroupPresentation(2)
        cls = [class_of(dv.ray_divisor(P1P1, i)) for i in range(4)]
        assert cls[0] == cls[2] and cls[1] == cls[3]
        assert cls[0] != cls[1]

    def test_diamond_has_torsion(self):
        pres, _ = dv.class_group(DIAMOND)
        assert pres == zl.AbelianGroupPresentation(2, (2,))

    def test_quarter_fan(self):
        pres, _ = dv.class_group(TILTED)
        assert pres == zl.AbelianGroupPresentation(2)

    def test_wedge_torsion_only(self):
        for F in (WEDGE, WEDGE_RAYS):
            pres, class_of = dv.class_group(F)
            assert pres == zl.AbelianGroupPresentation(0, (2,))
            assert class_of(dv.ray_divisor(F, 0)).coords == [1]

    def test_foreign_divisor_rejected(self):
        _, class_of = dv.class_group(P2)
        with pytest.raises(ValueError):
            class_of(dv.divisor(P1P1, [1, 0, 0, 0]))

    def test_torus_factor_warns(self):
        half = fn.fan([[1, 0]], [[0]], 2)
        with pytest.warns(UserWarning):
            dv.class_group(half)

    def test_principal_classes_vanish(self):
        rng = random.Random(3)
        for F in ALL_FANS:
            import warnings
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                _, class_of = dv.class_group(F)
            for _ in range(50):
                m = [rng.randrange(-9, 10) for _ in range(F.ambient_dim)]
                assert class_of(dv.principal_divisor(F, m)).is_zero


def check_cartier_data(F, coeffs, data):
    for I, m in zip(F.maximal_cones, data.characters):
        for i in I:
            assert zl.dot(F.rays[i], m) == -coeffs[i]
    for a in range(len(F.maximal_cones)):
        for b in range(a + 1, len(F.maximal_cones)):
            tau = cn.intersect(F.max_cone(a), F.max_cone(b))
            diff = zl.vsub(data.characters[a], data.characters[b])
            for g in tau.generators:
                assert zl.dot(g, diff) == 0


class TestCartier:
    def test_zero_divisor(self):
        data = dv.is_cartier(D(P2, 0, 0, 0))
        assert data and data.characters == [[0, 0]] * 3

    def test_quarter_fan_third_ray(self):
        res = dv.is_cartier(dv.ray_divisor(TILTED, 2))
        assert not res
        assert res.cone_index == 1

    def test_sixth_multiple_is_cartier(self):
        d3 = dv.ray_divisor(TILTED, 2)
        data = dv.is_cartier(6 * d3)
        assert data
        check_cartier_data(TILTED, (6 * d3).coeffs, data)

    def test_smooth_fans_all_cartier(self):
        rng = random.Random(11)
        for F in SMOOTH_FANS:
            for _ in range(50):
                coeffs = [rng.randrange(-9, 10) for _ in F.rays]
                data = dv.is_cartier(dv.divisor(F, coeffs))
                assert data
                check_cartier_data(F, coeffs, data)

    def test_principal_always_cartier(self):
        data = dv.is_cartier(dv.principal_divisor(TILTED, [3, -2]))
        assert data
        # the same character works on every cone
        assert data.characters == [[-3, 2]] * 4


class TestMinimalCartierMultiple:
    def test_quarter_fan(self):
        assert dv.minimal_cartier_multiple(dv.ray_divisor(TILTED, 2)) == 6

    def test_cartier_gives_one(self):
        assert dv.minimal_cartier_multiple(D(P2, 0, 0, 0)) == 1
        assert dv.minimal_cartier_multiple(
            dv.principal_divisor(TILTED, [1, 4])) == 1

    def test_diamond(self):
        d12 = dv.ray_divisor(DIAMOND, 0) + dv.ray_divisor(DIAMOND, 1)
        assert dv.minimal_cartier_multiple(d12) == 2

    def test_divides_every_working_multiple(self):
        d3 = dv.ray_divisor(TILTED, 2)
        mult = dv.minimal_cartier_multiple(d3)
        for ell in range(1, 13):
            works = bool(dv.is_cartier(ell * d3))
            assert works == (ell % mult == 0)

    def test_infinite_for_nonsimplicial(self):
        pyramid = fn.fan([[1, 1, 1], [-1, 1, 1], [-1, -1, 1], [1, -1, 1]],
                         [[0, 1, 2, 3]], 3)
        assert dv.minimal_cartier_multiple(dv.ray_divisor(pyramid, 0)) == inf
        assert not dv.is_cartier(dv.ray_divisor(pyramid, 0))


class TestPicardGroup:
    def test_affine_wedge_trivial(self):
        assert dv.picard_group(WEDGE).is_trivial

    def test_wedge_without_top_cone(self):
        assert dv.picard_group(WEDGE_RAYS) == zl.AbelianGroupPresentation(0, (2,))

    def test_smooth_matches_class_group(self):
        for F in SMOOTH_FANS:
            assert dv.picard_group(F) == dv.class_group(F)[0]

    def test_diamond_torsion_free(self):
        # Cl has a Z/2 factor but no Cartier divisor reaches it
        assert dv.picard_group(DIAMOND) == zl.AbelianGroupPresentation(2)

    def test_quarter_fan(self):
        assert dv.picard_group(TILTED) == zl.AbelianGroupPresentation(2)


class TestDivisorPolyhedron:
    def test_twice_third_ray_on_plane(self):
        poly = dv.divisor_polyhedron(2 * dv.ray_divisor(P2, 2))
        assert poly.facets == [([1, 0], 0), ([0, 1], 0), ([-1, -1], 2)]
        assert poly.bounded
        assert poly.lattice_points == [[0, 0], [0, 1], [0, 2],
                                       [1, 0], [1, 1], [2, 0]]

    def test_fractional_vertices(self):
        d12 = dv.ray_divisor(DIAMOND, 0) + dv.ray_divisor(DIAMOND, 1)
        poly = dv.divisor_polyhedron(d12)
        assert poly.bounded
        assert poly.lattice_points == [[0, -1], [0, 0]]

    def test_zero_divisor_on_complete_fan(self):
        poly = dv.divisor_polyhedron(D(P1P1, 0, 0, 0, 0))
        assert poly.bounded and poly.lattice_points == [[0, 0]]

    def test_unbounded_on_affine_fan(self):
        poly = dv.divisor_polyhedron(D(WEDGE, 0, 0))
        assert not poly.bounded
        assert poly.lattice_points is None

    def test_empty_polyhedron(self):
        poly = dv.divisor_polyhedron(-1 * dv.ray_divisor(P2, 0))
        assert poly.bounded
        assert poly.lattice_points == []

    def test_keeps_redundant_inequalities(self):
        # every ray contributes an inequality, even a redundant one
        big = D(P2, 5, 0, 0)
        assert len(dv.divisor_polyhedron(big).facets) == 3


class TestGlobalSections:
    def test_plane_conics(self):
        secs = dv.global_sections(2 * dv.ray_divisor(P2, 2))
        assert secs == [[0, 0], [0, 1], [0, 2], [1, 0], [1, 1], [2, 0]]

    def test_translated_twin(self):
        secs = dv.global_sections(2 * dv.ray_divisor(P2, 0))
        assert len(secs) == 6
        assert sorted(zl.vadd(s, [2, 0]) for s in secs) == \
            dv.global_sections(2 * dv.ray_divisor(P2, 2))

    def test_zero_divisor(self):
        assert dv.global_sections(D(P2, 0, 0, 0)) == [[0, 0]]

    def test_unbounded_raises(self):
        with pytest.raises(ValueError):
            dv.global_sections(D(WEDGE, 1, 1))

    @given(st.lists(st.integers(-3, 3), min_size=4, max_size=4),
           st.lists(st.integers(-4, 4), min_size=2, max_size=2))
    @settings(max_examples=60, deadline=None)
    def test_count_invariant_under_linear_equivalence(self, coeffs, m):
        d = dv.divisor(P1P1, coeffs)
        shifted = d + dv.principal_divisor(P1P1, m)
        assert len(dv.global_sections(d)) == len(dv.global_sections(shifted))


class TestPolytopeDivisor:
    def test_double_standard_triangle(self):
        tri = pt.hull([[0, 0], [2, 0], [0, 2]])
        assert dv.polytope_divisor(tri, P2) == 2 * dv.ray_divisor(P2, 2)

    def test_hirzebruch_triangle(self):
        tri = pt.hull([[0, 0], [2, 1], [0, 1]])
        assert dv.polytope_divisor(tri, HIRZ2) == dv.ray_divisor(HIRZ2, 3)

    def test_hirzebruch_trapezoid(self):
        trap = pt.hull([[0, 0], [1, 0], [0, 1], [1, 1], [2, 1], [3, 1]])
        expected = dv.ray_divisor(HIRZ2, 2) + dv.ray_divisor(HIRZ2, 3)
        assert dv.polytope_divisor(trap, HIRZ2) == expected

    def test_rectangle_on_product_fan(self):
        rect = pt.hull([[0, 0], [2, 0], [0, 7], [2, 7]])
        assert dv.polytope_divisor(rect, P1P1).coeffs == [0, 0, 2, 7]

    def test_segment_summand(self):
        seg = pt.hull([[0, 0], [1, 0]])
        assert dv.polytope_divisor(seg, P1P1).coeffs == [0, 0, 1, 0]

    def test_refinement_violation_names_ray(self):
        tri = pt.hull([[0, 0], [2, 0], [0, 2]])
        with pytest.raises(ValueError, match="ray 4"):
            dv.polytope_divisor(tri, HIRZ2)

    def test_dimension_mismatch(self):
        seg = pt.hull([[0], [1]])
        with pytest.raises(ValueError):
            dv.polytope_divisor(seg, P2)


class TestRoundTrips:
    def pentagon(self):
        return pt.hull([[0, 0], [1, 0], [0, 1], [2, 1], [1, 2]])

    def test_polytope_to_divisor_to_polytope(self):
        for P in (self.pentagon(),
                  pt.hull([[1, 0], [-1, 0], [0, 1], [0, -1]]),
                  pt.hull([[0, 0], [2, 0], [0, 2]])):
            F = fn.normal_fan(P)
            poly = dv.divisor_polyhedron(dv.polytope_divisor(P, F))
            assert poly.bounded
            assert poly.lattice_points == sorted(pt.lattice_points(P))
            assert pt.hull(poly.lattice_points) == P

    def test_divisor_to_polytope_to_divisor(self):
        P = self.pentagon()
        F = fn.normal_fan(P)
        d = dv.polytope_divisor(P, F)
        back = dv.polytope_divisor(pt.hull(dv.global_sections(d)), F)
        assert back == d


class TestLinearEquivalence:
    def test_self(self):
        d = D(P2, 4, -1, 2)
        assert dv.linearly_equivalent(d, d) == [0, 0]

    def test_plane_coordinate_divisors(self):
        m = dv.linearly_equivalent(dv.ray_divisor(P2, 0), dv.ray_divisor(P2, 2))
        assert m == [1, 0]

    def test_independent_rulings(self):
        assert dv.linearly_equivalent(dv.ray_divisor(P1P1, 0),
                                      dv.ray_divisor(P1P1, 1)) is None

    def test_mixed_fans_rejected(self):
        with pytest.raises(ValueError):
            dv.linearly_equivalent(D(P2, 1, 0, 0), dv.divisor(P1P1, [1, 0, 0, 0]))

    @given(st.lists(st.integers(-5, 5), min_size=3, max_size=3),
           st.lists(st.integers(-5, 5), min_size=3, max_size=3))
    @settings(max_examples=60, deadline=None)
    def test_witness_is_exact(self, ca, cb):
        a, b = dv.divisor(P2, ca), dv.divisor(P2, cb)
        m = dv.linearly_equivalent(a, b)
        _, class_of = dv.class_group(P2)
        if m is None:
            assert class_of(a) != class_of(b)
        else:
            assert dv.principal_divisor(P2, m) == a - b
            assert class_of(a) == class_of(b)
