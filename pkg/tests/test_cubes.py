"""The cubical site: complexes, products, joins, images, maps."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubicoh.cubes import (
    Cover,
    CubicalComplex,
    CubicalMap,
    ElementaryCube,
    NotACover,
    NotACubicalMap,
    NotAPairMap,
    NotASubcomplex,
    PairMap,
    SubcomplexPair,
    Triple,
    direct_image,
    intersection,
    inverse_image,
    is_isomorphic,
    join,
    pair_product,
    product,
)


def interval():
    return CubicalComplex.box([1])


def square():
    return CubicalComplex.box([1, 1])


def edge(x0, y0, x1, y1):
    return ElementaryCube(((min(x0, x1), max(x0, x1)),
                           (min(y0, y1), max(y0, y1))))


class TestElementaryCube:
    def test_dimensions(self):
        c = ElementaryCube(((0, 1), (2, 2), (4, 5)))
        assert c.ambient == 3
        assert c.dim == 2
        assert c.span_directions() == (0, 2)

    def test_rejects_long_intervals(self):
        with pytest.raises(ValueError):
            ElementaryCube(((0, 2),))

    def test_vertices(self):
        c = ElementaryCube(((0, 1), (3, 3)))
        assert sorted(c.vertices()) == [(0, 3), (1, 3)]

    def test_boundary_squares_to_zero(self):
        c = ElementaryCube(((0, 1), (0, 1), (0, 1)))
        counts = {}
        for s1, f1 in c.signed_boundary():
            for s2, f2 in f1.signed_boundary():
                counts[f2] = counts.get(f2, 0) + s1 * s2
        assert all(v == 0 for v in counts.values())


class TestCubicalComplex:
    def test_face_closure_required(self):
        top = ElementaryCube(((0, 1), (0, 1)))
        with pytest.raises(NotASubcomplex):
            CubicalComplex(2, (top,))

    def test_from_cubes_closes(self):
        sq = square()
        assert len(sq.cubes) == 9
        assert sq.dim == 2

    def test_empty(self):
        e = CubicalComplex.empty(2)
        assert e.dim == -1
        assert e.is_empty

    def test_point_is_ambient_zero(self):
        pt = CubicalComplex.point()
        assert pt.ambient == 0
        assert pt.dim == 0

    def test_skeleton(self):
        sq = square()
        assert len(sq.skeleton(1).cubes) == 8
        assert len(sq.skeleton(0).cubes) == 4

    def test_monotone_dimension(self):
        rng = random.Random(2)
        box = CubicalComplex.box([2, 2])
        for _ in range(20):
            cubes = [c for c in box.cubes if rng.random() < 0.5]
            sub = CubicalComplex.from_cubes(2, cubes)
            assert sub.dim <= box.dim
            assert box.contains(sub)


class TestProduct:
    def test_unit_law_on_the_nose(self):
        pt = CubicalComplex.point()
        sq = square()
        assert product(pt, sq) == sq
        assert product(sq, pt) == sq

    def test_empty_is_strict_initial(self):
        e = CubicalComplex.empty(1)
        assert product(e, square()).is_empty
        assert product(square(), e).is_empty

    def test_interval_squared(self):
        p = product(interval(), interval())
        assert len(p.cubes) == 9
        assert len([c for c in p.cubes if c.dim == 2]) == 1
        assert len([c for c in p.cubes if c.dim == 1]) == 4
        assert len([c for c in p.cubes if c.dim == 0]) == 4

    def test_dim_additive(self):
        assert product(square(), interval()).dim == 3

    def test_distributivity_over_joins(self):
        rng = random.Random(4)
        box = CubicalComplex.box([2, 1])
        x = interval()
        for _ in range(15):
            y = CubicalComplex.from_cubes(
                2, [c for c in box.cubes if rng.random() < 0.5])
            z = CubicalComplex.from_cubes(
                2, [c for c in box.cubes if rng.random() < 0.5])
            lhs = product(x, join(y, z, box))
            rhs = join(product(x, y), product(x, z), product(x, box))
            assert lhs == rhs

    def test_products_preserve_inclusions(self):
        sq = square()
        sub = sq.skeleton(1)
        p = product(sub, interval())
        assert product(sq, interval()).contains(p)


class TestJoinIntersection:
    def test_join_unit_and_idempotent(self):
        sq = square()
        y = sq.skeleton(0)
        e = CubicalComplex.empty(2)
        assert join(y, e, sq) == y
        assert join(y, y, sq) == y

    def test_join_two_edges(self):
        boundary = square().skeleton(1)
        top = CubicalComplex.from_cubes(2, [edge(0, 1, 1, 1)])
        left = CubicalComplex.from_cubes(2, [edge(0, 0, 0, 1)])
        l_shape = join(top, left, boundary)
        assert len([c for c in l_shape.cubes if c.dim == 1]) == 2
        assert len([c for c in l_shape.cubes if c.dim == 0]) == 3

    def test_intersection_of_adjacent_edges(self):
        boundary = square().skeleton(1)
        top = CubicalComplex.from_cubes(2, [edge(0, 1, 1, 1)])
        left = CubicalComplex.from_cubes(2, [edge(0, 0, 0, 1)])
        meet = intersection(top, left, boundary)
        assert len(meet.cubes) == 1
        assert meet.dim == 0

    def test_not_a_subcomplex(self):
        with pytest.raises(NotASubcomplex):
            join(interval(), interval(), square())


class TestCubicalMap:
    def test_identity_and_inclusion(self):
        sq = square()
        sub = sq.skeleton(1)
        CubicalMap.identity(sq)
        inc = CubicalMap.inclusion(sub, sq)
        assert direct_image(inc, sub) == sub

    def test_constant(self):
        sq = square()
        f = CubicalMap.constant(sq, sq, (0, 0))
        image = direct_image(f, sq)
        assert len(image.cubes) == 1

    def test_projection(self):
        sq = square()
        f = CubicalMap(sq, interval(), {v: (v[0],) for v in sq.vertices()})
        assert direct_image(f, sq.skeleton(1)) == interval()

    def test_inverse_image(self):
        sq = square()
        f = CubicalMap(sq, interval(), {v: (v[0],) for v in sq.vertices()})
        zero_end = CubicalComplex(1, (ElementaryCube(((0, 0),)),))
        left_edge = inverse_image(f, zero_end)
        assert len(left_edge.cubes) == 3
        assert left_edge.dim == 1
        assert inverse_image(f, interval()) == sq

    def test_identity_images(self):
        sq = square()
        f = CubicalMap.identity(sq)
        sub = sq.skeleton(0)
        assert direct_image(f, sub) == sub
        assert inverse_image(f, sub) == sub

    def test_rejects_folding_map(self):
        # Collapsing a square onto an edge via max is not discretely affine.
        sq = square()
        vm = {(0, 0): (0,), (1, 0): (1,), (0, 1): (1,), (1, 1): (1,)}
        with pytest.raises(NotACubicalMap):
            CubicalMap(sq, interval(), vm)

    def test_composition_is_cubical(self):
        sq = square()
        proj = CubicalMap(sq, interval(),
                          {v: (v[0],) for v in sq.vertices()})
        swap = CubicalMap(sq, sq, {v: (v[1], v[0]) for v in sq.vertices()})
        composite = proj.compose(swap)
        assert isinstance(composite, CubicalMap)
        assert direct_image(composite, sq) == interval()

    def test_swap_orientation_sign(self):
        sq = square()
        swap = CubicalMap(sq, sq, {v: (v[1], v[0]) for v in sq.vertices()})
        top_cell = next(c for c in sq.cubes if c.dim == 2)
        coeff, image = swap.image_of_cube(top_cell)
        assert image == top_cell
        assert coeff == -1


class TestPairsTriplesCovers:
    def test_pair_product_of_absolutes(self):
        p = SubcomplexPair.absolute(interval())
        q = SubcomplexPair.absolute(square())
        prod = pair_product(p, q)
        assert prod.sub.is_empty

    def test_pair_product_interval_rel(self):
        i = interval()
        p = SubcomplexPair(i, i.skeleton(0))
        prod = pair_product(p, p)
        assert prod.total == square()
        assert prod.sub == square().skeleton(1)

    def test_pair_product_unit(self):
        pt = SubcomplexPair.absolute(CubicalComplex.point())
        p = SubcomplexPair(interval(), interval().skeleton(0))
        assert pair_product(p, pt) == p
        assert pair_product(pt, p) == p

    def test_triple_validates(self):
        sq = square()
        with pytest.raises(Exception):
            Triple(sq.skeleton(1), sq, CubicalComplex.empty(2))

    def test_cover_validates(self):
        sq = square()
        with pytest.raises(NotACover):
            Cover(sq, sq.skeleton(1), sq.skeleton(0))

    def test_pair_map_validates(self):
        i = interval()
        ends = i.skeleton(0)
        rel = SubcomplexPair(i, ends)
        absolute = SubcomplexPair.absolute(i)
        with pytest.raises(NotAPairMap):
            PairMap(CubicalMap.identity(i), rel, absolute)
        PairMap.from_total_identity(absolute, rel)


class TestIsomorphism:
    def test_translation(self):
        a = CubicalComplex.from_cubes(1, [ElementaryCube(((0, 1),))])
        b = CubicalComplex.from_cubes(1, [ElementaryCube(((5, 6),))])
        assert is_isomorphic(a, b)

    def test_permutation(self):
        a = CubicalComplex.from_cubes(
            2, [ElementaryCube(((0, 1), (2, 2)))])
        b = CubicalComplex.from_cubes(
            2, [ElementaryCube(((2, 2), (0, 1)))])
        assert is_isomorphic(a, b)

    def test_distinguishes(self):
        sq = square()
        assert not is_isomorphic(sq, sq.skeleton(1))


_BOX = CubicalComplex.box([2, 2])
_BOX_CUBES = sorted(_BOX.cubes, key=ElementaryCube.sort_key)


def subcomplexes_of_box():
    """Strategy: face-closures of random cube subsets of a 2x2 box."""
    return st.lists(st.sampled_from(_BOX_CUBES), max_size=8).map(
        lambda picked: CubicalComplex.from_cubes(2, picked))


class TestLatticeProperties:
    @settings(max_examples=60, deadline=None)
    @given(subcomplexes_of_box(), subcomplexes_of_box(),
           subcomplexes_of_box())
    def test_join_laws(self, a, b, c):
        assert join(a, b, _BOX) == join(b, a, _BOX)
        assert join(a, a, _BOX) == a
        assert join(join(a, b, _BOX), c, _BOX) \
            == join(a, join(b, c, _BOX), _BOX)

    @settings(max_examples=60, deadline=None)
    @given(subcomplexes_of_box(), subcomplexes_of_box())
    def test_intersection_is_face_closed_subcomplex(self, a, b):
        meet = intersection(a, b, _BOX)
        assert a.contains(meet) and b.contains(meet)
        assert meet.dim <= min(a.dim, b.dim)

    @settings(max_examples=60, deadline=None)
    @given(subcomplexes_of_box(), subcomplexes_of_box())
    def test_product_distributes_over_join(self, a, b):
        x = CubicalComplex.box([1])
        lhs = product(x, join(a, b, _BOX))
        rhs = join(product(x, a), product(x, b), product(x, _BOX))
        assert lhs == rhs

    @settings(max_examples=60, deadline=None)
    @given(subcomplexes_of_box())
    def test_monotone_dimension_and_strict_initial(self, a):
        assert a.dim <= _BOX.dim
        assert product(CubicalComplex.empty(3), a).is_empty


class TestSaturation:
    def test_inclusion_composition_and_cancellation(self):
        # If g o f and g are subcomplex inclusions then so is f.
        sq = square()
        mid = sq.skeleton(1)
        small = sq.skeleton(0)
        f = CubicalMap.inclusion(small, mid)
        g = CubicalMap.inclusion(mid, sq)
        gf = g.compose(f)
        assert direct_image(gf, small) == small
        assert all(gf.image_of_cube(c) == (1, c) for c in small.cubes)
        assert all(f.image_of_cube(c) == (1, c) for c in small.cubes)
