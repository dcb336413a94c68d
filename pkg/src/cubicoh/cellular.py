"""Good pairs, good filtrations, and the degenerate filtration complex.

A pair is *good* when its relative cohomology is concentrated in a
single degree and free there.  A filtration of dimensional type d is a
chain empty = X_(-1) <= X_0 <= ... <= X_d = X of subcomplexes; it is
good when each consecutive pair is good concentrated in its level
degree.  For a good filtration the first-page complex of the level
pairs collapses onto a single row, giving a bounded complex of free
groups whose cohomology is canonically isomorphic to H^*(X); the
comparison is built here by explicit splicing of restriction maps and
verified to be an isomorphism rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cubes import (
    CubicalComplex,
    PairMap,
    SubcomplexPair,
    Triple,
    direct_image,
    join,
)
from .homalg import (
    ChainMap,
    CochainComplex,
    FgAbGroup,
    GroupHom,
    IntMatrix,
    induced_hom_on_cohomology,
    mapping_fiber,
    unimodular_inverse,
)
from .cohomology import (
    connecting,
    pullback,
    relative_cohomology,
    relative_complex,
)
from .reporting import CheckReport


class NotGood(ValueError):
    """An operation requiring a good pair or filtration was refused."""


class NotARefinement(ValueError):
    """Filtration levels are not contained levelwise."""


class IncompatibleFiltrations(ValueError):
    """A pair of filtrations is not levelwise compatible."""


@dataclass(frozen=True)
class GoodPairCertificate:
    """Witness that a pair's cohomology sits in one degree, freely."""

    pair: SubcomplexPair
    degree: int
    group: FgAbGroup
    witness: tuple   # ((degree, invariant factor description) ...)

    @property
    def rank(self):
        return self.group.free_rank


@dataclass(frozen=True)
class GoodPairRefusal:
    pair: SubcomplexPair
    reason: str
    offending_degrees: tuple


def certify_good_pair(pair):
    """A GoodPairCertificate, or a GoodPairRefusal naming the obstruction.

    The zero pair (X, X) is good vacuously; its concentration degree is
    fixed to 0 by convention.
    """
    window = range(0, max(pair.total.dim, 0) + 1)
    witness = []
    nonzero = []
    for m in window:
        group = relative_cohomology(pair, m).group
        witness.append((m, group.describe()))
        if not group.is_trivial:
            nonzero.append((m, group))
    if not nonzero:
        return GoodPairCertificate(pair, 0, FgAbGroup.trivial(),
                                   tuple(witness))
    if len(nonzero) > 1:
        return GoodPairRefusal(pair, "cohomology in more than one degree",
                               tuple(m for m, _ in nonzero))
    degree, group = nonzero[0]
    if not group.is_free:
        return GoodPairRefusal(pair, "torsion in degree %d" % degree,
                               (degree,))
    return GoodPairCertificate(pair, degree, group, tuple(witness))


class Filtration:
    """Levels empty = X_(-1) <= X_0 <= ... <= X_d = X."""

    __slots__ = ("space", "levels")

    def __init__(self, space, levels):
        levels = tuple(levels)
        if not levels or levels[0] != CubicalComplex.empty(space.ambient):
            levels = (CubicalComplex.empty(space.ambient),) + levels
        for below, above in zip(levels, levels[1:]):
            if not above.contains(below):
                raise NotARefinement("levels are not nested")
        if levels[-1] != space:
            raise NotARefinement("top level must equal the filtered space")
        if any(not space.contains(level) for level in levels):
            raise NotARefinement("levels must be subcomplexes of the space")
        self.space = space
        self.levels = levels

    @property
    def dimensional_type(self):
        return len(self.levels) - 2

    def level(self, p):
        """X_p, clamped to empty below -1 and to X above the type."""
        if p < 0:
            return self.levels[0]
        if p >= len(self.levels) - 1:
            return self.levels[-1]
        return self.levels[p + 1]

    def level_pair(self, p):
        return SubcomplexPair(self.level(p), self.level(p - 1))

    def __eq__(self, other):
        return (isinstance(other, Filtration) and self.space == other.space
                and self.levels == other.levels)

    def __hash__(self):
        return hash((self.space, self.levels))

    def __repr__(self):
        return "<Filtration type=%d of %r>" % (self.dimensional_type,
                                               self.space)


def skeleton_filtration(x):
    """X filtered by its skeleta; the canonical good filtration."""
    d = x.dim
    return Filtration(x, [x.skeleton(p) for p in range(0, d + 1)])


def certify_good_filtration(filtration):
    """Level certificates for a good filtration, or a refusal.

    Goodness demands concentration exactly in the level degree: the
    pair (X_p, X_(p-1)) may only have cohomology in degree p, freely.
    A vacuous level (equal consecutive complexes) passes at any degree.
    """
    certificates = []
    for p in range(0, filtration.dimensional_type + 1):
        pair = filtration.level_pair(p)
        cert = certify_good_pair(pair)
        if isinstance(cert, GoodPairRefusal):
            return cert
        if not cert.group.is_trivial and cert.degree != p:
            return GoodPairRefusal(
                pair, "level %d concentrated in degree %d" % (p, cert.degree),
                (cert.degree,))
        certificates.append(cert)
    return tuple(certificates)


def is_good_filtration(filtration):
    return not isinstance(certify_good_filtration(filtration),
                          GoodPairRefusal)


@dataclass(frozen=True)
class ConiveauPage:
    """First-page data E1^(p,q) = H^(p+q)(X_p, X_(p-1)) with differentials."""

    filtration: Filtration
    entries: dict      # (p, q) -> FgAbGroup
    differentials: dict  # (p, q) -> GroupHom E1^(p,q) -> E1^(p+1,q)

    def entry(self, p, q):
        group = self.entries.get((p, q))
        return group if group is not None else FgAbGroup.trivial()

    def is_concentrated_on_row_zero(self):
        return all(group.is_trivial for (p, q), group in self.entries.items()
                   if q != 0)


def page_differential(filtration, p, n):
    """d1: H^n(X_p, X_(p-1)) -> H^(n+1)(X_(p+1), X_p).

    The composite of the forgetful map into H^n(X_p) with the
    connecting morphism of (X_(p+1), X_p, empty).
    """
    empty = CubicalComplex.empty(filtration.space.ambient)
    level_pair = filtration.level_pair(p)
    forget = pullback(PairMap.from_total_identity(
        SubcomplexPair.absolute(filtration.level(p)), level_pair), n)
    step = connecting(Triple(filtration.level(p + 1), filtration.level(p),
                             empty), n)
    return step @ forget


def coniveau_e1(filtration, q_window=None):
    """The first page over all levels; d1 o d1 = 0 is validated."""
    d = filtration.dimensional_type
    if q_window is None:
        top = max(filtration.space.dim, 0)
        q_window = range(-d - 1, top + 2)
    entries = {}
    diffs = {}
    for p in range(0, d + 1):
        pair = filtration.level_pair(p)
        for q in q_window:
            entries[(p, q)] = relative_cohomology(pair, p + q).group
    for p in range(0, d + 1):
        for q in q_window:
            diffs[(p, q)] = page_differential(filtration, p, p + q)
    for p in range(0, d):
        for q in q_window:
            here = diffs[(p, q)]
            there = diffs.get((p + 1, q))
            if there is not None and not (there @ here).is_zero():
                raise AssertionError("page differential does not square to "
                                     "zero at (%d, %d)" % (p, q))
    return ConiveauPage(filtration, entries, diffs)


class _FreeCoordinates:
    """Free-basis coordinates for a torsion-free presented group."""

    def __init__(self, group):
        if not group.is_free:
            raise NotGood("group %s is not free" % group.describe())
        u, diag = group._decomposition()
        self.group = group
        self.rank = group.free_rank
        free_rows = [i for i, d in enumerate(diag) if d == 0]
        self._proj = IntMatrix(tuple(u.data[i] for i in free_rows),
                               cols=group.generators)
        uinv = unimodular_inverse(u)
        self._lift = IntMatrix.from_columns(
            [uinv.column(i) for i in free_rows], rows=group.generators)

    def to_free(self, vector):
        return self._proj.apply(vector)

    def from_free(self, coords):
        return self._lift.apply(coords)

    def conjugate(self, hom, target_coords):
        """The hom's matrix rewritten free-coords -> free-coords."""
        return target_coords._proj * hom.matrix * self._lift


def filtration_complex(filtration):
    """The row q = 0 of the first page as a bounded free complex.

    Requires a good filtration; the terms are the level groups in their
    free coordinates and the differentials are the page differentials.
    """
    certs = certify_good_filtration(filtration)
    if isinstance(certs, GoodPairRefusal):
        raise NotGood("filtration is not good: %s" % certs.reason)
    d = filtration.dimensional_type
    coords = {}
    ranks = {}
    for p in range(0, d + 1):
        coords[p] = _FreeCoordinates(certs[p].group)
        ranks[p] = coords[p].rank
    diffs = {}
    for p in range(0, d):
        hom = page_differential(filtration, p, p)
        diffs[p] = coords[p].conjugate(hom, coords[p + 1])
    return CochainComplex(0, max(d, 0), ranks, diffs)


def _level_coordinates(filtration):
    certs = certify_good_filtration(filtration)
    if isinstance(certs, GoodPairRefusal):
        raise NotGood("filtration is not good: %s" % certs.reason)
    return {p: _FreeCoordinates(certs[p].group)
            for p in range(0, filtration.dimensional_type + 1)}


def comparison_iso(filtration, n):
    """The canonical isomorphism H^n(filtration complex) -> H^n(X).

    Built by splicing: a degree-n class of the filtration complex is
    pushed into H^n(X_n), lifted (uniquely) through the injective
    restriction from H^n(X_(n+1)), and carried up the tower of
    restriction isomorphisms to H^n(X).  The result is verified to be
    an isomorphism.
    """
    coords = _level_coordinates(filtration)
    complex_ = filtration_complex(filtration)
    space = complex_.cohomology_space(n)
    x = filtration.space
    empty = CubicalComplex.empty(x.ambient)
    target = relative_complex(SubcomplexPair.absolute(x)).cohomology_space(n)
    d = filtration.dimensional_type

    if n < 0 or n > d:
        hom = GroupHom.zero(space.group, target.group)
        if not hom.is_isomorphism():
            raise AssertionError("comparison fails outside the support")
        return hom

    level_pair = filtration.level_pair(n)
    forget = pullback(PairMap.from_total_identity(
        SubcomplexPair.absolute(filtration.level(n)), level_pair), n)
    restrictions = {}
    for q in range(n + 1, d + 1):
        pm = PairMap.inclusion(
            SubcomplexPair.absolute(filtration.level(q - 1)),
            SubcomplexPair.absolute(filtration.level(q)))
        restrictions[q] = pullback(pm, n)

    cols = []
    for j in range(space.group.generators):
        free_vec = space.cocycles.column(j)
        gen_vec = coords[n].from_free(free_vec) if n in coords else free_vec
        w = forget.apply(gen_vec)
        for q in range(n + 1, d + 1):
            w = restrictions[q].preimage(w)
            if w is None:
                raise AssertionError("class does not lift through level %d"
                                     % q)
        cols.append(w)
    matrix = IntMatrix.from_columns(cols, rows=target.group.generators)
    hom = GroupHom(space.group, target.group, matrix)
    if not hom.is_isomorphism():
        raise AssertionError("comparison map is not an isomorphism in "
                             "degree %d" % n)
    del empty
    return hom


def refinement_map(finer, coarser):
    """The cochain map (coarser complex) -> (finer complex).

    ``finer`` must contain ``coarser`` levelwise; both must be good.
    Contravariance: the levelwise pair inclusions pull cochains back
    from the larger filtration's complex onto the smaller one's.
    """
    if finer.space != coarser.space:
        raise NotARefinement("filtrations filter different spaces")
    d = max(finer.dimensional_type, coarser.dimensional_type)
    for p in range(-1, d + 1):
        if not finer.level(p).contains(coarser.level(p)):
            raise NotARefinement("level %d is not contained" % p)
    src = filtration_complex(finer)
    dst = filtration_complex(coarser)
    fine_coords = _level_coordinates(finer)
    coarse_coords = _level_coordinates(coarser)
    comps = {}
    for p in range(0, min(finer.dimensional_type,
                          coarser.dimensional_type) + 1):
        pm = PairMap.inclusion(coarser.level_pair(p), finer.level_pair(p))
        hom = pullback(pm, p)
        comps[p] = fine_coords[p].conjugate(hom, coarse_coords[p])
    return ChainMap(src, dst, comps)


def pair_filtration_complex(pair, total_filtration, sub_filtration):
    """The fiber of (filtration complex of X) -> (filtration complex of Y).

    The sub filtration must be levelwise contained in the total one and
    contained in Y; both must be good.  The fiber's cohomology agrees
    with H^*(X, Y).
    """
    if total_filtration.space != pair.total:
        raise IncompatibleFiltrations("total filtration must filter X")
    if sub_filtration.space != pair.sub:
        raise IncompatibleFiltrations("sub filtration must filter Y")
    d = max(total_filtration.dimensional_type,
            sub_filtration.dimensional_type)
    for p in range(-1, d + 1):
        if not total_filtration.level(p).contains(sub_filtration.level(p)):
            raise IncompatibleFiltrations("levels are not compatible at %d"
                                          % p)
    src = filtration_complex(total_filtration)
    dst = filtration_complex(sub_filtration)
    total_coords = _level_coordinates(total_filtration)
    sub_coords = _level_coordinates(sub_filtration)
    comps = {}
    for p in range(0, min(total_filtration.dimensional_type,
                          sub_filtration.dimensional_type) + 1):
        pm = PairMap.inclusion(sub_filtration.level_pair(p),
                               total_filtration.level_pair(p))
        hom = pullback(pm, p)
        comps[p] = total_coords[p].conjugate(hom, sub_coords[p])
    restriction = ChainMap(src, dst, comps)
    return mapping_fiber(restriction)


def join_refinement(x, first, second):
    """Candidate good filtration containing the join of two filtrations.

    Levels are skeleton-of-X joined with both given levels; goodness is
    re-certified by the caller rather than assumed.
    """
    d = x.dim
    levels = []
    for p in range(0, d + 1):
        level = join(join(first.level(p), second.level(p), x),
                     x.skeleton(p), x)
        levels.append(level)
    if levels:
        levels[-1] = x
    else:
        levels = [x] if not x.is_empty else []
    return Filtration(x, levels)


def image_filtration(f, filtration):
    """Candidate good filtration of the target containing the image."""
    target = f.target
    d = target.dim
    levels = []
    for p in range(0, d + 1):
        level = join(target.skeleton(p),
                     direct_image(f, filtration.level(p)), target)
        levels.append(level)
    if levels:
        levels[-1] = target
    return Filtration(target, levels)


def check_cellularity(x, candidates=(), maps=()):
    """Witnesses for the three cellularity conditions on one space.

    (i) the skeleton filtration is good of type dim(x); (ii) every two
    candidate good filtrations admit a good refinement containing their
    join; (iii) for each map out of x, the target owns a good
    filtration containing the direct image of each candidate.
    """
    report = CheckReport("cellularity")
    skeleton = skeleton_filtration(x)
    skel_good = is_good_filtration(skeleton)
    report.add("(i)/skeleton-good",
               skel_good and skeleton.dimensional_type == x.dim,
               dimensional_type=skeleton.dimensional_type, dim=x.dim)
    pool = [skeleton] + [f for f in candidates if is_good_filtration(f)]
    for i, first in enumerate(pool):
        for j, second in enumerate(pool):
            if j < i:
                continue
            candidate = join_refinement(x, first, second)
            ok = is_good_filtration(candidate)
            contains = all(
                candidate.level(p).contains(
                    join(first.level(p), second.level(p), x))
                for p in range(0, x.dim + 1))
            report.add("(ii)/join-%d-%d" % (i, j), ok and contains,
                       good=ok, contains_join=contains)
    for k, f in enumerate(maps):
        if f.source != x:
            continue
        for i, filt in enumerate(pool):
            candidate = image_filtration(f, filt)
            ok = is_good_filtration(candidate)
            contains = all(
                candidate.level(p).contains(direct_image(f, filt.level(p)))
                for p in range(0, f.target.dim + 1))
            report.add("(iii)/map-%d-filtration-%d" % (k, i),
                       ok and contains, good=ok, contains_image=contains)
    return report


def comparison_naturality_check(f, source_filtration, target_filtration,
                                window):
    """Squares relating comparisons along a filtration-compatible map.

    For f: X -> X' with good filtrations F on X and F' on X' such that
    f carries F into F', the pullback of the filtration complexes
    commutes with the two comparison isomorphisms and H^n(f).
    """
    report = CheckReport("comparison-naturality")
    d = max(source_filtration.dimensional_type,
            target_filtration.dimensional_type)
    for p in range(-1, d + 1):
        if not target_filtration.level(p).contains(
                direct_image(f, source_filtration.level(p))):
            raise IncompatibleFiltrations("map is not filtration-compatible")
    src_complex = filtration_complex(source_filtration)
    dst_complex = filtration_complex(target_filtration)
    src_coords = _level_coordinates(source_filtration)
    dst_coords = _level_coordinates(target_filtration)
    comps = {}
    for p in range(0, min(source_filtration.dimensional_type,
                          target_filtration.dimensional_type) + 1):
        level_map = PairMap(
            _restrict_map(f, source_filtration.level(p),
                          target_filtration.level(p)),
            source_filtration.level_pair(p),
            target_filtration.level_pair(p))
        hom = pullback(level_map, p)
        comps[p] = dst_coords[p].conjugate(hom, src_coords[p])
    chain = ChainMap(dst_complex, src_complex, comps)
    absolute_src = SubcomplexPair.absolute(f.source)
    absolute_dst = SubcomplexPair.absolute(f.target)
    total_map = PairMap(f, absolute_src, absolute_dst)
    for n in window:
        left = comparison_iso(source_filtration, n) \
            @ induced_hom_on_cohomology(chain, n)
        right = pullback(total_map, n) @ comparison_iso(target_filtration, n)
        report.add("deg%+d" % n, left.equal_to(right))
    return report


def _restrict_map(f, sub, target_sub):
    from .cubes import CubicalMap

    return CubicalMap(sub, target_sub,
                      {v: f.vertex_map[v] for v in sub.vertices()})
