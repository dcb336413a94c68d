"""Exact linear algebra: Smith forms, groups, homs, complexes, fibers."""

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubicoh.homalg import (
    ChainMap,
    CochainComplex,
    CompositionMismatch,
    FgAbGroup,
    GroupHom,
    IntMatrix,
    NotAChainMap,
    cohomology_at,
    fiber_projection,
    fiber_shift_hom,
    induced_hom_on_cohomology,
    is_exact_at,
    mapping_fiber,
    smith_normal_form,
    unimodular_inverse,
)


# ---------------------------------------------------------------------------
# Oracle: invariant factors from gcds of k x k minors, fully independent
# of the row/column reduction in the package.


def _det(rows):
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = [False] * n
        for i in range(n):
            if seen[i]:
                continue
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
        term = 1
        for i in range(n):
            term *= rows[i][perm[i]]
        total += sign * term
    return total


def _gcd_of_minors(rows, k):
    import math

    r, c = len(rows), len(rows[0]) if rows else 0
    g = 0
    for row_idx in itertools.combinations(range(r), k):
        for col_idx in itertools.combinations(range(c), k):
            minor = [[rows[i][j] for j in col_idx] for i in row_idx]
            g = math.gcd(g, _det(minor))
    return g


def oracle_invariant_factors(rows):
    r = len(rows)
    c = len(rows[0]) if rows else 0
    factors = []
    previous = 1
    for k in range(1, min(r, c) + 1):
        dk = _gcd_of_minors(rows, k)
        if dk == 0:
            break
        factors.append(dk // previous)
        previous = dk
    return tuple(factors)


small_matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(-4, 4), min_size=c, max_size=c),
            min_size=r, max_size=r)))


class TestSmithNormalForm:
    def test_identity(self):
        m = IntMatrix.identity(2)
        s, u, v = smith_normal_form(m)
        assert s == IntMatrix.identity(2)
        assert u * m * v == s

    def test_zero(self):
        m = IntMatrix.zero(3, 2)
        s, u, v = smith_normal_form(m)
        assert s.is_zero()
        assert u * m * v == s

    def test_2x2_example(self):
        m = IntMatrix([[2, 4], [6, 8]])
        assert m.invariant_factors() == (2, 4)
        assert oracle_invariant_factors([[2, 4], [6, 8]]) == (2, 4)

    @settings(max_examples=150, deadline=None)
    @given(small_matrices)
    def test_postconditions(self, rows):
        m = IntMatrix(rows)
        s, u, v = smith_normal_form(m)
        assert u * m * v == s
        diag = [s.entry(i, i) for i in range(min(s.rows, s.cols))]
        for i in range(s.rows):
            for j in range(s.cols):
                if i != j:
                    assert s.entry(i, j) == 0
        nonzero = [d for d in diag if d]
        assert all(d > 0 for d in nonzero)
        for a, b in zip(nonzero, nonzero[1:]):
            assert b % a == 0
        for t in (u, v):
            assert all(d == 1 for d in t.invariant_factors())

    @settings(max_examples=150, deadline=None)
    @given(small_matrices)
    def test_matches_minor_gcd_oracle(self, rows):
        assert IntMatrix(rows).invariant_factors() \
            == oracle_invariant_factors(rows)

    def test_invariant_under_unimodular_multiplication(self):
        rng = random.Random(7)
        for _ in range(40):
            rows = [[rng.randint(-4, 4) for _ in range(3)] for _ in range(3)]
            m = IntMatrix(rows)
            e = _random_unimodular(rng, 3)
            f = _random_unimodular(rng, 3)
            assert (e * m * f).invariant_factors() == m.invariant_factors()

    def test_unimodular_inverse(self):
        rng = random.Random(3)
        for _ in range(20):
            u = _random_unimodular(rng, 4)
            assert u * unimodular_inverse(u) == IntMatrix.identity(4)

    def test_solve(self):
        a = IntMatrix([[2, 0], [0, 3]])
        assert a.solve((4, 9)) == (2, 3)
        assert a.solve((1, 0)) is None

    def test_kernel_basis(self):
        a = IntMatrix([[1, 2, 3]])
        k = a.kernel_basis()
        assert k.cols == 2
        assert (a * k).is_zero()


def _random_unimodular(rng, n):
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(8):
        i, j = rng.sample(range(n), 2)
        c = rng.randint(-2, 2)
        for k in range(n):
            m[i][k] += c * m[j][k]
    return IntMatrix(m)


class TestFgAbGroup:
    def test_free(self):
        g = FgAbGroup.free(3)
        assert g.free_rank == 3
        assert g.torsion == ()
        assert g.describe() == "Z^3"

    def test_torsion(self):
        g = FgAbGroup(2, IntMatrix([[2, 0], [0, 4]]))
        assert g.invariant_factors == (2, 4)
        assert g.order() == 8

    def test_presentation_isomorphism(self):
        # Different presentations of Z/6.
        a = FgAbGroup(1, IntMatrix([[6]]))
        b = FgAbGroup(2, IntMatrix([[2, 0], [0, 3]]))
        assert a.isomorphic_to(b)

    def test_element_equality(self):
        g = FgAbGroup(1, IntMatrix([[4]]))
        assert g.same_element((1,), (5,))
        assert not g.same_element((1,), (2,))

    def test_elements_enumeration(self):
        g = FgAbGroup(2, IntMatrix([[2, 0], [0, 3]]))
        assert len(g.elements()) == 6
        assert len(set(g.elements())) == 6

    def test_from_canonical_round_trip(self):
        g = FgAbGroup(2, IntMatrix([[2, 1], [0, 3]]))
        for c in g.elements():
            assert g.canonical_form(g.from_canonical(c)) == c

    def test_reduce_mod(self):
        z = FgAbGroup.free(1)
        assert z.reduce_mod(5).invariant_factors == (5,)

    def test_direct_sum(self):
        a = FgAbGroup.free(1)
        b = FgAbGroup(1, IntMatrix([[2]]))
        s = FgAbGroup.direct_sum(a, b)
        assert s.free_rank == 1 and s.torsion == (2,)


class TestGroupHom:
    def test_well_defined_rejects(self):
        z4 = FgAbGroup(1, IntMatrix([[4]]))
        z = FgAbGroup.free(1)
        with pytest.raises(ValueError):
            GroupHom(z4, z, IntMatrix([[1]]))

    def test_inverse(self):
        z6 = FgAbGroup(1, IntMatrix([[6]]))
        five = GroupHom(z6, z6, IntMatrix([[5]]))
        assert five.is_isomorphism()
        inv = five.inverse()
        assert (inv @ five).equal_to(GroupHom.identity(z6))

    def test_injective_surjective(self):
        z = FgAbGroup.free(1)
        double = GroupHom(z, z, IntMatrix([[2]]))
        assert double.is_injective()
        assert not double.is_surjective()


class TestExactness:
    def test_surjective_then_zero(self):
        z = FgAbGroup.free(1)
        zero_group = FgAbGroup.trivial()
        g = GroupHom.identity(z)
        f = GroupHom.zero(z, zero_group)
        assert is_exact_at(f, g)

    def test_zero_then_injective(self):
        z = FgAbGroup.free(1)
        g = GroupHom.zero(z, z)
        f = GroupHom(z, z, IntMatrix([[3]]))
        assert is_exact_at(f, g)

    def test_two_to_quotient(self):
        z = FgAbGroup.free(1)
        z2 = FgAbGroup(1, IntMatrix([[2]]))
        z4 = FgAbGroup(1, IntMatrix([[4]]))
        double = GroupHom(z, z, IntMatrix([[2]]))
        to_z2 = GroupHom(z, z2, IntMatrix([[1]]))
        to_z4 = GroupHom(z, z4, IntMatrix([[1]]))
        assert is_exact_at(to_z2, double)
        assert not is_exact_at(to_z4, double)

    def test_matches_enumeration_oracle_on_finite_groups(self):
        rng = random.Random(11)
        for _ in range(30):
            a = FgAbGroup(1, IntMatrix([[rng.choice([2, 3, 4, 6])]]))
            b = FgAbGroup(2, IntMatrix([[rng.choice([2, 4]), 0],
                                        [0, rng.choice([2, 3])]]))
            c = FgAbGroup(1, IntMatrix([[rng.choice([2, 3, 4])]]))
            g = _random_hom(rng, a, b)
            f = _random_hom(rng, b, c)
            if not (f @ g).is_zero():
                continue
            image = {b.canonical_form(g.apply(b_coords_of(a, x)))
                     for x in a.elements()}
            kernel = {y for y in b.elements()
                      if c.is_zero_element(f.apply(b_coords_of(b, y)))}
            assert is_exact_at(f, g) == (image == kernel)

    def test_shape_mismatch(self):
        z = FgAbGroup.free(1)
        z2 = FgAbGroup(1, IntMatrix([[2]]))
        f = GroupHom.identity(z)
        g = GroupHom(z, z2, IntMatrix([[1]]))
        with pytest.raises(CompositionMismatch):
            is_exact_at(f, g)


def b_coords_of(group, canonical):
    return group.from_canonical(canonical)


def _random_hom(rng, source, target):
    while True:
        matrix = IntMatrix([[rng.randint(-2, 2)
                             for _ in range(source.generators)]
                            for _ in range(target.generators)])
        try:
            return GroupHom(source, target, matrix)
        except ValueError:
            continue


def _interval_complex():
    # 0 -> Z^2 -> Z -> 0 modeling two endpoints and one edge.
    return CochainComplex(0, 1, {0: 2, 1: 1},
                          {0: IntMatrix([[-1, 1]])})


class TestCochainComplex:
    def test_single_degree(self):
        c = CochainComplex(0, 0, {0: 1}, {})
        assert cohomology_at(c, 0).describe() == "Z"
        assert cohomology_at(c, 5).is_trivial

    def test_multiplication_by_two(self):
        c = CochainComplex(0, 1, {0: 1, 1: 1}, {0: IntMatrix([[2]])})
        assert cohomology_at(c, 1).invariant_factors == (2,)
        assert cohomology_at(c, 0).is_trivial

    def test_d_squared_validated(self):
        with pytest.raises(ValueError):
            CochainComplex(0, 2, {0: 1, 1: 1, 2: 1},
                           {0: IntMatrix([[1]]), 1: IntMatrix([[1]])})

    def test_deterministic_presentation(self):
        c1 = _interval_complex()
        c2 = _interval_complex()
        s1 = c1.cohomology_space(0)
        s2 = c2.cohomology_space(0)
        assert s1.cocycles == s2.cocycles
        assert s1.group.relations == s2.group.relations


class TestChainMaps:
    def test_identity_induces_identity(self):
        c = _interval_complex()
        f = ChainMap.identity(c)
        hom = induced_hom_on_cohomology(f, 0)
        assert hom.equal_to(GroupHom.identity(hom.source))

    def test_zero_map(self):
        c = _interval_complex()
        f = ChainMap(c, c, {})
        assert induced_hom_on_cohomology(f, 0).is_zero()

    def test_times_three(self):
        c = CochainComplex(0, 0, {0: 1}, {})
        f = ChainMap(c, c, {0: IntMatrix([[3]])})
        assert induced_hom_on_cohomology(f, 0).matrix == IntMatrix([[3]])

    def test_rejects_non_chain_map(self):
        c = CochainComplex(0, 1, {0: 1, 1: 1}, {0: IntMatrix([[2]])})
        with pytest.raises(NotAChainMap):
            ChainMap(c, c, {0: IntMatrix([[1]]), 1: IntMatrix([[2]])})

    def test_functoriality_on_random_maps(self):
        rng = random.Random(5)
        c = _interval_complex()
        for _ in range(20):
            f = _random_chain_endo(rng, c)
            g = _random_chain_endo(rng, c)
            for n in (0, 1):
                lhs = induced_hom_on_cohomology(f @ g, n)
                rhs = induced_hom_on_cohomology(f, n) \
                    @ induced_hom_on_cohomology(g, n)
                assert lhs.equal_to(rhs)


def _random_chain_endo(rng, c):
    # Endomorphisms of the interval complex commuting with d.
    while True:
        a = rng.randint(-2, 2)
        b = rng.randint(-2, 2)
        comp0 = IntMatrix([[a, b], [b, a]])
        comp1 = IntMatrix([[a - b]])
        try:
            return ChainMap(c, c, {0: comp0, 1: comp1})
        except NotAChainMap:
            continue


class TestMappingFiber:
    def test_identity_gives_acyclic_fiber(self):
        c = _interval_complex()
        fib = mapping_fiber(ChainMap.identity(c))
        for n in range(-1, 3):
            assert cohomology_at(fib, n).is_trivial

    def test_zero_target_gives_source(self):
        c = _interval_complex()
        zero = CochainComplex(0, 0, {}, {})
        fib = mapping_fiber(ChainMap(c, zero, {}))
        for n in range(-1, 3):
            assert cohomology_at(fib, n).isomorphic_to(cohomology_at(c, n))

    def test_long_exact_sequence(self):
        rng = random.Random(9)
        c = _interval_complex()
        for _ in range(10):
            f = _random_chain_endo(rng, c)
            proj = fiber_projection(f)
            for n in range(-1, 3):
                to_c = induced_hom_on_cohomology(proj, n)
                on_d = induced_hom_on_cohomology(f, n)
                shift = fiber_shift_hom(f, n)
                shift_prev = fiber_shift_hom(f, n - 1)
                assert is_exact_at(on_d, to_c)
                assert is_exact_at(shift, on_d)
                assert is_exact_at(to_c, shift_prev)
