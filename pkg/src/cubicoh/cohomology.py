"""Relative cohomology of cubical pairs over Z and its exactness checkers.

The relative cochain complex of a pair (X, Y) is the complex of integer
cochains on the cubes of X outside Y; for Y empty it is the absolute
complex C*(X).  The differential is the transpose of the cubical
boundary with the alternating signs fixed in ``cubes.ElementaryCube.
signed_boundary`` -- the product and boundary-compatibility sign checks
in ``kunneth`` depend on that convention and on the connecting-morphism
sign documented at ``connecting``.

Reports are plain data (see ``reporting``) with per-junction verdicts
and invariant factors, serialisable to JSON.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .cubes import (
    CubicalComplex,
    PairMap,
    SubcomplexPair,
    Triple,
)
from .homalg import (
    ChainMap,
    CochainComplex,
    FgAbGroup,
    GroupHom,
    IntMatrix,
    hom_from_sum,
    hom_into_sum,
    induced_hom_on_cohomology,
    is_exact_at,
)
from .reporting import CheckItem, CheckReport


class ExcisionFailed(ValueError):
    """An excision comparison map turned out not to be invertible."""


@lru_cache(maxsize=None)
def relative_complex(pair):
    """The relative cochain complex of a pair, with cube-labeled bases."""
    top = pair.total.dim
    bases = {n: pair.relative_cubes(n) for n in range(0, top + 1)}
    ranks = {n: len(b) for n, b in bases.items()}
    index = {}
    for n, cubes in bases.items():
        for i, c in enumerate(cubes):
            index[c] = (n, i)
    diffs = {}
    for n in range(0, top):
        rows, cols = ranks.get(n + 1, 0), ranks.get(n, 0)
        data = [[0] * cols for _ in range(rows)]
        for i, cube in enumerate(bases.get(n + 1, ())):
            for sign, face in cube.signed_boundary():
                loc = index.get(face)
                if loc is not None and loc[0] == n:
                    data[i][loc[1]] += sign
        diffs[n] = IntMatrix(data, cols=cols)
    lo, hi = 0, max(top, 0)
    return CochainComplex(lo, hi, ranks, diffs, labels=bases)


@dataclass(frozen=True)
class CohomologyValue:
    """H^n(X, Y) together with its chosen cocycle representatives."""

    pair: SubcomplexPair
    degree: int
    group: FgAbGroup

    def describe(self):
        return self.group.describe()


def relative_cohomology(pair, n):
    """H^n(X, Y) over Z."""
    group = relative_complex(pair).cohomology_space(n).group
    return CohomologyValue(pair, n, group)


def cohomology_ring_degrees(pair):
    """Default degree window [-1, dim X + 1] for exactness reports."""
    return range(-1, pair.total.dim + 2)


def _space(pair, n):
    return relative_complex(pair).cohomology_space(n)


def cochain_pullback(pm):
    """The cochain map C*(X', Y') -> C*(X, Y) induced by a pair map."""
    src_complex = relative_complex(pm.target)   # cochains pull back
    dst_complex = relative_complex(pm.source)
    sub_target = pm.target.sub.cubes
    comps = {}
    for n in range(dst_complex.lo, max(dst_complex.hi, src_complex.hi) + 1):
        rows = dst_complex.rank(n)
        cols = src_complex.rank(n)
        data = [[0] * cols for _ in range(rows)]
        src_index = {c: j for j, c in enumerate(src_complex.labels(n))}
        for i, cube in enumerate(dst_complex.labels(n)):
            coeff, image = pm.map.image_of_cube(cube)
            if coeff and image not in sub_target:
                j = src_index.get(image)
                if j is not None:
                    data[i][j] += coeff
        comps[n] = IntMatrix(data, cols=cols)
    return ChainMap(src_complex, dst_complex, comps)


def pullback(pm, n):
    """H^n(X', Y') -> H^n(X, Y), contravariant in the pair map."""
    return induced_hom_on_cohomology(cochain_pullback(pm), n)


def connecting(triple, n):
    """The connecting morphism H^n(Y, Z) -> H^(n+1)(X, Y) of a triple.

    This is the snake-lemma map of the degreewise-split exact sequence
    0 -> C*(X, Y) -> C*(X, Z) -> C*(Y, Z) -> 0, multiplied by the
    Koszul sign (-1)^n.  With that sign the first-slot boundary
    compatibility of the external product carries sign (-1)^(n') and
    the second-slot one carries +1, as the axiom checkers require;
    exactness and naturality statements are insensitive to it.
    """
    inner = relative_complex(triple.inner_pair())    # C*(Y, Z)
    wide = relative_complex(triple.wide_pair())      # C*(X, Z)
    outer = relative_complex(triple.outer_pair())    # C*(X, Y)
    src = inner.cohomology_space(n)
    dst = outer.cohomology_space(n + 1)

    wide_index = {c: j for j, c in enumerate(wide.labels(n))}
    outer_index = {c: j for j, c in enumerate(outer.labels(n + 1))}
    wide_diff = wide.diff(n)
    sign = -1 if n % 2 else 1

    cols = []
    for g in range(src.group.generators):
        rep = src.cocycles.column(g)
        lifted = [0] * wide.rank(n)
        for value, cube in zip(rep, inner.labels(n)):
            lifted[wide_index[cube]] = value
        image = wide_diff.apply(lifted)
        outer_vec = [0] * outer.rank(n + 1)
        for value, cube in zip(image, wide.labels(n + 1)):
            if value:
                j = outer_index.get(cube)
                if j is None:
                    raise AssertionError("coboundary does not vanish on the "
                                         "middle subcomplex")
                outer_vec[j] = sign * value
        cols.append(dst.class_of(outer_vec))
    matrix = IntMatrix.from_columns(cols, rows=dst.group.generators)
    return GroupHom(src.group, dst.group, matrix)


def triple_restriction(triple, n):
    """H^n(X, Y) -> H^n(X, Z): pullback of the identity-total pair map."""
    pm = PairMap.from_total_identity(triple.wide_pair(), triple.outer_pair())
    return pullback(pm, n)


def triple_corestriction(triple, n):
    """H^n(X, Z) -> H^n(Y, Z): pullback of the inclusion of pairs."""
    pm = PairMap.inclusion(triple.inner_pair(), triple.wide_pair())
    return pullback(pm, n)


def check_les_of_triple(triple, window=None):
    """Exactness of ... -> H^n(X,Y) -> H^n(X,Z) -> H^n(Y,Z) -> ... ."""
    if window is None:
        window = cohomology_ring_degrees(triple.wide_pair())
    items = []
    a = {n: triple_restriction(triple, n) for n in window}
    b = {n: triple_corestriction(triple, n) for n in window}
    d = {n: connecting(triple, n) for n in window}
    for n in window:
        items.append(CheckItem(
            key="deg%+d/at-wide" % n,
            ok=is_exact_at(b[n], a[n]),
            detail={"groups": [a[n].source.describe(),
                               a[n].target.describe(),
                               b[n].target.describe()]}))
        items.append(CheckItem(
            key="deg%+d/at-inner" % n,
            ok=is_exact_at(d[n], b[n]),
            detail={"groups": [b[n].source.describe(),
                               b[n].target.describe(),
                               d[n].target.describe()]}))
        if n + 1 in a:
            items.append(CheckItem(
                key="deg%+d/at-outer" % n,
                ok=is_exact_at(a[n + 1], d[n]),
                detail={"groups": [d[n].source.describe(),
                                   d[n].target.describe(),
                                   a[n + 1].target.describe()]}))
    return CheckReport("les-of-triple", items)


def excision_map(cover, n):
    """H^n(X, Z) -> H^n(Y, Y n Z): pullback along (Y, Y n Z) -> (X, Z)."""
    y, z = cover.left, cover.right
    overlap = cover.overlap()
    pm = PairMap.inclusion(SubcomplexPair(y, overlap),
                           SubcomplexPair(cover.space, z))
    return pullback(pm, n)


def excision_check(cover, window=None):
    """Per-degree verdicts that the excision map is an isomorphism."""
    if window is None:
        window = range(-1, cover.space.dim + 2)
    items = []
    for n in window:
        hom = excision_map(cover, n)
        items.append(CheckItem(
            key="deg%+d" % n,
            ok=hom.is_isomorphism(),
            detail={"source": hom.source.describe(),
                    "target": hom.target.describe()}))
    return CheckReport("excision", items)


def mayer_vietoris_connecting(cover, n):
    """H^n(Y n Z) -> H^(n+1)(X) via the inverse of excision."""
    overlap = cover.overlap()
    z = cover.right
    delta = connecting(Triple(z, overlap, CubicalComplex.empty(z.ambient)), n)
    exc = excision_map(cover.swapped(), n + 1)   # H^(n+1)(X,Y) ~ H^(n+1)(Z, YnZ)
    if not exc.is_isomorphism():
        raise ExcisionFailed("excision map is not invertible in degree %d"
                             % (n + 1))
    forget = triple_restriction(
        Triple(cover.space, cover.left,
               CubicalComplex.empty(cover.space.ambient)), n + 1)
    return forget @ exc.inverse() @ delta


def mayer_vietoris_check(cover, window=None):
    """Exactness of H^n(X) -> H^n(Y) + H^n(Z) -> H^n(Y n Z) -> H^(n+1)(X)."""
    if window is None:
        window = range(-1, cover.space.dim + 2)
    x = SubcomplexPair.absolute(cover.space)
    y = SubcomplexPair.absolute(cover.left)
    z = SubcomplexPair.absolute(cover.right)
    overlap = SubcomplexPair.absolute(cover.overlap())

    def restriction(src_pair, dst_pair, n):
        pm = PairMap.inclusion(dst_pair, src_pair)
        return pullback(pm, n)

    a = {}
    b = {}
    d = {}
    for n in window:
        into_y = restriction(x, y, n)
        into_z = restriction(x, z, n)
        a[n] = hom_into_sum(into_y, into_z)
        from_y = restriction(y, overlap, n)
        from_z = restriction(z, overlap, n)
        b[n] = hom_from_sum(from_y, -from_z)
        d[n] = mayer_vietoris_connecting(cover, n)
    items = []
    for n in window:
        items.append(CheckItem(
            key="deg%+d/at-sum" % n,
            ok=is_exact_at(b[n], a[n]),
            detail={"sum": a[n].target.describe()}))
        items.append(CheckItem(
            key="deg%+d/at-overlap" % n,
            ok=is_exact_at(d[n], b[n]),
            detail={"overlap": b[n].target.describe()}))
        if n + 1 in a:
            items.append(CheckItem(
                key="deg%+d/at-space" % n,
                ok=is_exact_at(a[n + 1], d[n]),
                detail={"space": d[n].target.describe()}))
    return CheckReport("mayer-vietoris", items)


# ---------------------------------------------------------------------------
# Finite coefficient reductions


@dataclass(frozen=True)
class ReducedCohomology:
    """H^n of the mod-m reduction of a relative complex.

    ``generators`` holds integer cochain lifts of the group generators
    as columns; the finite ``group`` presents the quotient of the mod-m
    cocycle lattice by coboundaries and multiples of m.
    """

    complex: CochainComplex
    degree: int
    modulus: int
    group: FgAbGroup
    generators: IntMatrix

    def class_of(self, cochain):
        """Group coordinates of an integer cochain that is a mod-m cocycle."""
        m = self.modulus
        rank = self.complex.rank(self.degree)
        lattice = IntMatrix.hstack(
            self.generators,
            IntMatrix.diagonal((m,) * rank, rows=rank, cols=rank))
        sol = lattice.solve(cochain)
        if sol is None:
            raise ValueError("cochain is not a mod-%d cocycle" % m)
        return tuple(sol[: self.group.generators])


def reduced_cohomology(complex_, n, m):
    """Cohomology of complex_ tensored with Z/m in degree n."""
    if m < 2:
        raise ValueError("modulus must be at least 2")
    rank = complex_.rank(n)
    rank_above = complex_.rank(n + 1)
    # Mod-m cocycles: x with d(x) = 0 mod m, found as the projection of
    # the kernel of [d | m*I].
    wide = IntMatrix.hstack(
        complex_.diff(n),
        IntMatrix.diagonal((m,) * rank_above, rows=rank_above,
                           cols=rank_above))
    kernel = wide.kernel_basis()
    gens = IntMatrix(tuple(kernel.data[i] for i in range(rank)),
                     cols=kernel.cols)
    # Relations: preimages of coboundaries and of multiples of m.
    rel_targets = IntMatrix.hstack(
        complex_.diff(n - 1),
        IntMatrix.diagonal((m,) * rank, rows=rank, cols=rank))
    combined = IntMatrix.hstack(gens, rel_targets)
    null = combined.kernel_basis()
    rels = IntMatrix(tuple(null.data[i] for i in range(gens.cols)),
                     cols=null.cols)
    group = FgAbGroup(gens.cols, rels)
    return ReducedCohomology(complex_, n, m, group, gens)


def coefficient_reduction(pair, n, m):
    """H^n(X, Y; Z/m) as a finite group with enumerable carrier."""
    return reduced_cohomology(relative_complex(pair), n, m)


def reduced_induced_hom(chain_map, n, m):
    """The map induced on mod-m cohomology by an integer chain map."""
    src = reduced_cohomology(chain_map.source, n, m)
    dst = reduced_cohomology(chain_map.target, n, m)
    comp = chain_map.component(n)
    cols = []
    for j in range(src.group.generators):
        cols.append(dst.class_of(comp.apply(src.generators.column(j))))
    matrix = IntMatrix.from_columns(cols, rows=dst.group.generators)
    return GroupHom(src.group, dst.group, matrix)


def reduced_pullback(pm, n, m):
    """Mod-m version of ``pullback``."""
    return reduced_induced_hom(cochain_pullback(pm), n, m)


def reduced_connecting(triple, n, m):
    """Mod-m version of ``connecting`` (same Koszul sign convention)."""
    inner = relative_complex(triple.inner_pair())
    wide = relative_complex(triple.wide_pair())
    outer = relative_complex(triple.outer_pair())
    src = reduced_cohomology(inner, n, m)
    dst = reduced_cohomology(outer, n + 1, m)
    wide_index = {c: j for j, c in enumerate(wide.labels(n))}
    outer_index = {c: j for j, c in enumerate(outer.labels(n + 1))}
    sign = -1 if n % 2 else 1
    cols = []
    for g in range(src.group.generators):
        rep = src.generators.column(g)
        lifted = [0] * wide.rank(n)
        for value, cube in zip(rep, inner.labels(n)):
            lifted[wide_index[cube]] = value
        image = wide.diff(n).apply(lifted)
        outer_vec = [0] * outer.rank(n + 1)
        for value, cube in zip(image, wide.labels(n + 1)):
            if value:
                j = outer_index.get(cube)
                if j is None:
                    # Values supported on the middle subcomplex are
                    # coboundaries of the inner complex mod m; they must
                    # vanish mod m for a mod-m cocycle representative.
                    if value % m != 0:
                        raise AssertionError("mod-%d coboundary leaks onto "
                                             "the middle subcomplex" % m)
                    continue
                outer_vec[j] = sign * value
        cols.append(dst.class_of(outer_vec))
    matrix = IntMatrix.from_columns(cols, rows=dst.group.generators)
    return GroupHom(src.group, dst.group, matrix)


def fiber_comparison_groups(pair):
    """(H^n(X, Y), H^n(fiber of C*(X) -> C*(Y))) pairs across the window.

    Ties the mapping-fiber model of relative cohomology to the kernel
    model used by ``relative_complex``.
    """
    from .homalg import mapping_fiber

    incl = PairMap.inclusion(SubcomplexPair.absolute(pair.sub),
                             SubcomplexPair.absolute(pair.total))
    restriction = cochain_pullback(incl)   # C*(X) -> C*(Y)
    fib = mapping_fiber(restriction)
    out = []
    for n in cohomology_ring_degrees(pair):
        direct = relative_cohomology(pair, n).group
        via_fiber = fib.cohomology_space(n).group
        out.append((n, direct, via_fiber))
    return out
