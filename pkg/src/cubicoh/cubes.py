"""Finite cubical complexes: the geometric base of the verification engine.

An elementary cube is a product of integer intervals, each either
degenerate [k, k] or unit [k, k+1].  A complex is a finite, face-closed
set of elementary cubes in a common ambient dimension.  Subcomplex
inclusions play the role of distinguished monomorphisms; cartesian
products are interval concatenation, so products of complexes are again
complexes with no subdivision.

Cubical maps are determined by their vertex maps and must act as
discrete affine maps on every cube: each source direction moves at most
one target coordinate, by a constant step in {-1, 0, +1} across the
cube.  This makes induced chain maps (with orientation signs) canonical
and composition-stable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass


class NotASubcomplex(ValueError):
    """An alleged subcomplex is not contained in (or closed inside) a space."""


class NotAPairMap(ValueError):
    """A map of pairs fails to send the subspace into the target subspace."""


class NotATriple(ValueError):
    """The chain Z within Y within X is not a chain of subcomplexes."""


class NotACover(ValueError):
    """The two pieces of an alleged cover do not join to the whole space."""


class NotACubicalMap(ValueError):
    """A vertex map does not extend to a map of cubical complexes."""


@dataclass(frozen=True)
class ElementaryCube:
    """A product of integer intervals, each [k, k] or [k, k+1]."""

    intervals: tuple

    def __post_init__(self):
        ivs = tuple((int(a), int(b)) for a, b in self.intervals)
        object.__setattr__(self, "intervals", ivs)
        for a, b in ivs:
            if b - a not in (0, 1):
                raise ValueError("interval [%d, %d] is neither degenerate "
                                 "nor unit" % (a, b))

    @property
    def ambient(self):
        return len(self.intervals)

    @property
    def dim(self):
        return sum(1 for a, b in self.intervals if b > a)

    def span_directions(self):
        """Ambient positions of the non-degenerate intervals, in order."""
        return tuple(i for i, (a, b) in enumerate(self.intervals) if b > a)

    def min_corner(self):
        return tuple(a for a, _ in self.intervals)

    def vertices(self):
        return [tuple(v) for v in
                itertools.product(*[range(a, b + 1)
                                    for a, b in self.intervals])]

    def face(self, direction, upper):
        a, b = self.intervals[direction]
        value = b if upper else a
        ivs = list(self.intervals)
        ivs[direction] = (value, value)
        return ElementaryCube(tuple(ivs))

    def faces(self):
        return [self.face(p, up)
                for p in self.span_directions() for up in (True, False)]

    def signed_boundary(self):
        """[(coefficient, face)] pairs of the cubical boundary.

        The m-th non-degenerate direction (0-based, in position order)
        contributes (-1)^m * (upper - lower); the cup/cross sign
        conventions elsewhere depend on exactly this choice.
        """
        out = []
        for m, p in enumerate(self.span_directions()):
            sign = -1 if m % 2 else 1
            out.append((sign, self.face(p, True)))
            out.append((-sign, self.face(p, False)))
        return out

    def concat(self, other):
        return ElementaryCube(self.intervals + other.intervals)

    def sort_key(self):
        return self.intervals

    def __repr__(self):
        return "Cube(%s)" % ("x".join("[%d,%d]" % iv for iv in self.intervals)
                             or "pt")


def vertex_cube(point):
    return ElementaryCube(tuple((x, x) for x in point))


class CubicalComplex:
    """A finite face-closed set of elementary cubes in one ambient dimension."""

    __slots__ = ("ambient", "cubes", "_by_dim")

    def __init__(self, ambient, cubes):
        cubes = frozenset(cubes)
        for c in cubes:
            if c.ambient != ambient:
                raise ValueError("cube %r does not live in ambient "
                                 "dimension %d" % (c, ambient))
        for c in cubes:
            for f in c.faces():
                if f not in cubes:
                    raise NotASubcomplex("not closed under faces: %r is "
                                         "missing %r" % (c, f))
        self.ambient = ambient
        self.cubes = cubes
        self._by_dim = None

    @classmethod
    def empty(cls, ambient=0):
        return cls(ambient, ())

    @classmethod
    def from_cubes(cls, ambient, cubes):
        """The smallest complex containing the given cubes (face closure)."""
        closed = set()
        stack = list(cubes)
        while stack:
            c = stack.pop()
            if c in closed:
                continue
            closed.add(c)
            stack.extend(c.faces())
        return cls(ambient, closed)

    @classmethod
    def point(cls):
        """The final object: a single vertex in ambient dimension 0."""
        return cls(0, (ElementaryCube(()),))

    @classmethod
    def box(cls, lengths):
        """The solid box with the given positive side lengths."""
        lengths = tuple(int(x) for x in lengths)
        tops = [ElementaryCube(tuple((a, a + 1) for a in corner))
                for corner in itertools.product(
                    *[range(n) for n in lengths])]
        return cls.from_cubes(len(lengths), tops)

    @property
    def dim(self):
        return max((c.dim for c in self.cubes), default=-1)

    @property
    def is_empty(self):
        return not self.cubes

    def by_dim(self, n):
        """Sorted tuple of the n-cubes; the canonical basis order."""
        if self._by_dim is None:
            table = {}
            for c in self.cubes:
                table.setdefault(c.dim, []).append(c)
            self._by_dim = {d: tuple(sorted(v, key=ElementaryCube.sort_key))
                            for d, v in table.items()}
        return self._by_dim.get(n, ())

    def vertices(self):
        return [c.min_corner() for c in self.by_dim(0)]

    def skeleton(self, p):
        return CubicalComplex(self.ambient,
                              (c for c in self.cubes if c.dim <= p))

    def top_cubes(self):
        """Cubes that are not faces of any other cube of the complex."""
        proper_faces = set()
        for c in self.cubes:
            proper_faces.update(c.faces())
        return sorted((c for c in self.cubes if c not in proper_faces),
                      key=ElementaryCube.sort_key)

    def contains(self, other):
        return self.ambient == other.ambient and other.cubes <= self.cubes

    def __eq__(self, other):
        return (isinstance(other, CubicalComplex)
                and self.ambient == other.ambient
                and self.cubes == other.cubes)

    def __hash__(self):
        return hash((self.ambient, self.cubes))

    def __repr__(self):
        return "<CubicalComplex ambient=%d dim=%d cubes=%d>" % (
            self.ambient, self.dim, len(self.cubes))


def product(x, y):
    """Cartesian product by interval concatenation; empty is strict initial."""
    ambient = x.ambient + y.ambient
    if x.is_empty or y.is_empty:
        return CubicalComplex.empty(ambient)
    return CubicalComplex(ambient,
                          (a.concat(b) for a in x.cubes for b in y.cubes))


def join(y, z, within):
    """Union of two subcomplexes of a common space."""
    _require_subcomplex(y, within)
    _require_subcomplex(z, within)
    return CubicalComplex(within.ambient, y.cubes | z.cubes)


def intersection(y, z, within):
    _require_subcomplex(y, within)
    _require_subcomplex(z, within)
    return CubicalComplex(within.ambient, y.cubes & z.cubes)


def _require_subcomplex(y, x):
    if not x.contains(y):
        raise NotASubcomplex("%r is not a subcomplex of %r" % (y, x))


def closure_of(cube):
    """The set of all iterated faces of a cube, including the cube."""
    closed = set()
    stack = [cube]
    while stack:
        c = stack.pop()
        if c in closed:
            continue
        closed.add(c)
        stack.extend(c.faces())
    return closed


def is_isomorphic(a, b):
    """Structural isomorphism by coordinate permutation plus translation."""
    if a.ambient != b.ambient:
        return False
    counts_a = sorted((c.dim for c in a.cubes))
    counts_b = sorted((c.dim for c in b.cubes))
    if counts_a != counts_b:
        return False
    if a.is_empty:
        return True
    cubes_b = b.cubes
    mins_a = [min(c.intervals[i][0] for c in a.cubes)
              for i in range(a.ambient)]
    for perm in itertools.permutations(range(a.ambient)):
        # Translation fixed by matching coordinatewise minima.
        mins_perm = [min(c.intervals[perm[i]][0] for c in b.cubes)
                     for i in range(a.ambient)]
        shift = [mins_perm[i] - mins_a[i] for i in range(a.ambient)]

        def transport(c):
            ivs = [None] * a.ambient
            for i in range(a.ambient):
                lo, hi = c.intervals[i]
                ivs[perm[i]] = (lo + shift[i], hi + shift[i])
            return ElementaryCube(tuple(ivs))

        if all(transport(c) in cubes_b for c in a.cubes):
            return True
    return False


@dataclass(frozen=True)
class SubcomplexPair:
    """A pair (X, Y) with Y a subcomplex of X."""

    total: CubicalComplex
    sub: CubicalComplex

    def __post_init__(self):
        if not self.total.contains(self.sub):
            raise NotASubcomplex("pair subspace is not a subcomplex")

    @classmethod
    def absolute(cls, x):
        return cls(x, CubicalComplex.empty(x.ambient))

    def relative_cubes(self, n):
        """Sorted n-cubes of the total space outside the subspace."""
        return tuple(c for c in self.total.by_dim(n)
                     if c not in self.sub.cubes)

    def __repr__(self):
        return "<Pair X:%d cubes, Y:%d cubes>" % (len(self.total.cubes),
                                                  len(self.sub.cubes))


def pair_product(p, q):
    """(X, Y) x (X', Y') = (X x X', X x Y' union Y x X')."""
    total = product(p.total, q.total)
    sub = join(product(p.total, q.sub), product(p.sub, q.total), total)
    return SubcomplexPair(total, sub)


@dataclass(frozen=True)
class Triple:
    """Nested subcomplexes Z within Y within X."""

    total: CubicalComplex
    mid: CubicalComplex
    sub: CubicalComplex

    def __post_init__(self):
        if not (self.total.contains(self.mid)
                and self.mid.contains(self.sub)):
            raise NotATriple("need sub within mid within total")

    def outer_pair(self):
        return SubcomplexPair(self.total, self.mid)

    def wide_pair(self):
        return SubcomplexPair(self.total, self.sub)

    def inner_pair(self):
        return SubcomplexPair(self.mid, self.sub)


@dataclass(frozen=True)
class Cover:
    """A decomposition X = Y union Z by subcomplexes."""

    space: CubicalComplex
    left: CubicalComplex
    right: CubicalComplex

    def __post_init__(self):
        if join(self.left, self.right, self.space) != self.space:
            raise NotACover("pieces do not join to the whole space")

    def overlap(self):
        return intersection(self.left, self.right, self.space)

    def swapped(self):
        return Cover(self.space, self.right, self.left)


class CubicalMap:
    """A map of complexes determined by a vertex map.

    On every cube the map must be discretely affine: walking one step
    along a source direction changes at most one target coordinate, by
    the same signed unit step across the whole cube.  The image of each
    cube is then a (possibly degenerate) cube of the target, and the
    induced chain map with orientation signs is canonical.
    """

    __slots__ = ("source", "target", "vertex_map", "_images")

    def __init__(self, source, target, vertex_map):
        self.source = source
        self.target = target
        self.vertex_map = {tuple(k): tuple(v) for k, v in vertex_map.items()}
        for v in source.vertices():
            if v not in self.vertex_map:
                raise NotACubicalMap("vertex %r has no image" % (v,))
            w = self.vertex_map[v]
            if len(w) != target.ambient:
                raise NotACubicalMap("image point %r has wrong ambient "
                                     "dimension" % (w,))
            if vertex_cube(w) not in target.cubes:
                raise NotACubicalMap("image of vertex %r is not a vertex "
                                     "of the target" % (v,))
        self._images = {}
        for c in source.cubes:
            self._images[c] = self._image_data(c)

    def _image_data(self, cube):
        f = self.vertex_map
        base = cube.min_corner()
        fbase = f[base]
        directions = cube.span_directions()
        steps = []
        for p in directions:
            moved = list(base)
            moved[p] += 1
            delta = tuple(a - b for a, b in zip(f[tuple(moved)], fbase))
            support = [i for i, d in enumerate(delta) if d]
            if len(support) > 1 or any(abs(d) > 1 for d in delta):
                raise NotACubicalMap("cube %r is not mapped onto a cube"
                                     % (cube,))
            steps.append(delta)
        # Discrete affinity across the whole cube.
        for v in cube.vertices():
            expect = list(fbase)
            for p, delta in zip(directions, steps):
                if v[p] > base[p]:
                    expect = [a + d for a, d in zip(expect, delta)]
            if tuple(expect) != f[v]:
                raise NotACubicalMap("map is not affine on cube %r" % (cube,))
        # Each target coordinate may be moved by at most one direction.
        moved_coords = {}
        for p, delta in zip(directions, steps):
            for i, d in enumerate(delta):
                if d:
                    if i in moved_coords:
                        raise NotACubicalMap("two directions of %r fold onto "
                                             "one target coordinate" % (cube,))
                    moved_coords[i] = (p, d)
        intervals = []
        for i in range(self.target.ambient):
            if i in moved_coords:
                _, d = moved_coords[i]
                lo = min(fbase[i], fbase[i] + d)
                intervals.append((lo, lo + 1))
            else:
                intervals.append((fbase[i], fbase[i]))
        image = ElementaryCube(tuple(intervals))
        if image not in self.target.cubes:
            raise NotACubicalMap("image cube %r of %r is missing from the "
                                 "target" % (image, cube))
        if image.dim < cube.dim:
            return (0, image)
        # Same dimension: signed permutation of directions.
        target_dirs = image.span_directions()
        perm = []
        orientation = 1
        for p, delta in zip(directions, steps):
            coord = next(i for i, d in enumerate(delta) if d)
            perm.append(target_dirs.index(coord))
            if delta[coord] < 0:
                orientation = -orientation
        sign = _permutation_sign(perm) * orientation
        return (sign, image)

    def image_of_cube(self, cube):
        """(coefficient, image cube); coefficient 0 when dimension drops."""
        return self._images[cube]

    def apply_vertex(self, point):
        return self.vertex_map[tuple(point)]

    # -- constructors --------------------------------------------------------

    @classmethod
    def identity(cls, x):
        return cls(x, x, {v: v for v in x.vertices()})

    @classmethod
    def inclusion(cls, sub, total):
        _require_subcomplex(sub, total)
        return cls(sub, total, {v: v for v in sub.vertices()})

    @classmethod
    def constant(cls, source, target, point):
        point = tuple(point)
        if vertex_cube(point) not in target.cubes:
            raise NotACubicalMap("constant value is not a vertex of target")
        return cls(source, target, {v: point for v in source.vertices()})

    @classmethod
    def projection(cls, x, y, keep_left=True):
        """Projection of a product complex onto one factor.

        Requires a distinguished base vertex in the dropped factor so the
        vertex map is defined on the whole product.
        """
        prod = product(x, y)
        n = x.ambient
        if keep_left:
            vm = {v: v[:n] for v in prod.vertices()}
            return cls(prod, x, vm)
        vm = {v: v[n:] for v in prod.vertices()}
        return cls(prod, y, vm)

    @classmethod
    def swap(cls, x, y):
        """The coordinate block swap product(x, y) -> product(y, x)."""
        prod = product(x, y)
        n = x.ambient
        vm = {v: v[n:] + v[:n] for v in prod.vertices()}
        return cls(prod, product(y, x), vm)

    def compose(self, other):
        """self after other."""
        if other.target != self.source:
            raise NotACubicalMap("composition shape mismatch")
        vm = {v: self.vertex_map[other.vertex_map[v]]
              for v in other.source.vertices()}
        return CubicalMap(other.source, self.target, vm)

    def product_with(self, other):
        """The map (f x g) between product complexes."""
        src = product(self.source, other.source)
        dst = product(self.target, other.target)
        n = self.source.ambient
        vm = {v: tuple(self.vertex_map[v[:n]]) + tuple(other.vertex_map[v[n:]])
              for v in src.vertices()}
        return CubicalMap(src, dst, vm)

    def __eq__(self, other):
        return (isinstance(other, CubicalMap) and self.source == other.source
                and self.target == other.target
                and self.vertex_map == other.vertex_map)

    def __hash__(self):
        return hash((self.source, self.target,
                     tuple(sorted(self.vertex_map.items()))))

    def __repr__(self):
        return "<CubicalMap %d->%d cubes>" % (len(self.source.cubes),
                                              len(self.target.cubes))


def _permutation_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def direct_image(f, y):
    """Smallest subcomplex of the target containing all image cubes."""
    _require_subcomplex(y, f.source)
    images = [f.image_of_cube(c)[1] for c in y.cubes]
    return CubicalComplex.from_cubes(f.target.ambient, images)


def inverse_image(f, y_prime):
    """All source cubes whose image lies in the given target subcomplex."""
    _require_subcomplex(y_prime, f.target)
    cubes = [c for c in f.source.cubes
             if f.image_of_cube(c)[1] in y_prime.cubes]
    return CubicalComplex(f.source.ambient, cubes)


@dataclass(frozen=True)
class PairMap:
    """A morphism of pairs: a cubical map with f(Y) inside Y'."""

    map: CubicalMap
    source: SubcomplexPair
    target: SubcomplexPair

    def __post_init__(self):
        if self.map.source != self.source.total \
                or self.map.target != self.target.total:
            raise NotAPairMap("underlying map does not match the pairs")
        if not self.target.sub.contains(direct_image(self.map,
                                                     self.source.sub)):
            raise NotAPairMap("map does not send the subspace into the "
                              "target subspace")

    @classmethod
    def identity(cls, pair):
        return cls(CubicalMap.identity(pair.total), pair, pair)

    @classmethod
    def from_total_identity(cls, source_pair, target_pair):
        """The identity on the total space, viewed as a pair map.

        Valid whenever the source subspace is contained in the target
        subspace, e.g. (X, Z) -> (X, Y) for Z within Y.
        """
        return cls(CubicalMap.identity(source_pair.total),
                   source_pair, target_pair)

    @classmethod
    def inclusion(cls, source_pair, target_pair):
        return cls(CubicalMap.inclusion(source_pair.total,
                                        target_pair.total),
                   source_pair, target_pair)

    def compose(self, other):
        return PairMap(self.map.compose(other.map), other.source, self.target)

    def product_with(self, other):
        return PairMap(self.map.product_with(other.map),
                       pair_product(self.source, other.source),
                       pair_product(self.target, other.target))
