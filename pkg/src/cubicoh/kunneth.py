"""External products, cup products, and their sign-convention checkers.

Sign conventions (referenced by every checker here; do not change one
without the others):

* the cubical boundary uses alternating signs (-1)^m over the
  non-degenerate directions in position order
  (``cubes.ElementaryCube.signed_boundary``), so concatenation
  satisfies the Leibniz rule d(a x b) = da x b + (-1)^dim(a) a x db;
* the cochain cross product of relative cochains is plain
  concatenation-of-supports with NO extra sign; the Koszul signs live
  entirely in the boundary;
* the connecting morphism of a triple carries the Koszul sign (-1)^n
  (``cohomology.connecting``); consequently the first-slot boundary
  square commutes with sign (-1)^(n') and the second-slot square with
  sign +1;
* the coordinate block swap acts on a product cube of bidegree (n, n')
  with sign (-1)^(n n'), which is the graded-commutativity sign;
* the cup product is the cross product composed with the front/back
  face diagonal approximation with shuffle signs, the cubical stand-in
  for composition with the (non-cubical) geometric diagonal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .cubes import (
    Cover,
    CubicalComplex,
    CubicalMap,
    ElementaryCube,
    PairMap,
    SubcomplexPair,
    Triple,
    join,
    pair_product,
    product,
)
from .homalg import FgAbGroup, GroupHom, IntMatrix, hom_from_sum
from .cohomology import (
    ExcisionFailed,
    connecting,
    excision_map,
    pullback,
    relative_complex,
)
from .cellular import GoodPairCertificate, NotGood, certify_good_pair
from .reporting import CheckReport


def _sign(k):
    return -1 if k % 2 else 1


# ---------------------------------------------------------------------------
# Tensor products of presented groups


@dataclass(frozen=True)
class TensorOfGroups:
    """A presentation of A (x) B by generator pairs with inherited relations.

    Generator (i, j) of the tensor sits at flat index i * B.generators + j,
    so iterated tensors associate on the nose at the index level.
    """

    left: FgAbGroup
    right: FgAbGroup
    group: FgAbGroup

    def pure_index(self, i, j):
        return i * self.right.generators + j

    def pure(self, v, w):
        """Coordinates of the elementary tensor v (x) w."""
        return tuple(a * b for a in v for b in w)


def tensor_group(a, b):
    """A (x) B with relations r (x) e and e (x) s from both factors."""
    ia = IntMatrix.identity(a.generators)
    ib = IntMatrix.identity(b.generators)
    relations = IntMatrix.hstack(a.relations.kron(ib), ia.kron(b.relations))
    return TensorOfGroups(a, b, FgAbGroup(a.generators * b.generators,
                                          relations))


def hom_tensor(f, g):
    """f (x) g between the corresponding tensor groups."""
    src = tensor_group(f.source, g.source)
    dst = tensor_group(f.target, g.target)
    return GroupHom(src.group, dst.group, f.matrix.kron(g.matrix),
                    check=False)


def tensor_swap(a, b):
    """The canonical iso A (x) B -> B (x) A on pure tensors."""
    src = tensor_group(a, b)
    dst = tensor_group(b, a)
    cols = []
    for i in range(a.generators):
        for j in range(b.generators):
            e = [0] * dst.group.generators
            e[dst.pure_index(j, i)] = 1
            cols.append(tuple(e))
    return GroupHom(src.group, dst.group,
                    IntMatrix.from_columns(cols, rows=dst.group.generators),
                    check=False)


# ---------------------------------------------------------------------------
# The external product


@dataclass(frozen=True)
class ExternalProduct:
    """kappa: H^n(X,Y) (x) H^n'(X',Y') -> H^(n+n')(pair product)."""

    first: SubcomplexPair
    second: SubcomplexPair
    degrees: tuple
    tensor: TensorOfGroups
    hom: GroupHom


def _split_cube(cube, left_ambient):
    return (ElementaryCube(cube.intervals[:left_ambient]),
            ElementaryCube(cube.intervals[left_ambient:]))


def cross_cochain(p, q, n, n_prime, alpha, beta):
    """The chain-level cross product of two relative cochains.

    alpha is coordinates over the degree-n relative basis of p, beta
    over the degree-n' relative basis of q; the result is coordinates
    over the degree-(n+n') relative basis of the pair product.  No sign
    appears here: see the module docstring.
    """
    prod_pair = pair_product(p, q)
    prod_complex = relative_complex(prod_pair)
    alpha_index = {c: i for i, c in
                   enumerate(relative_complex(p).labels(n))}
    beta_index = {c: i for i, c in
                  enumerate(relative_complex(q).labels(n_prime))}
    left_ambient = p.total.ambient
    out = []
    for cube in prod_complex.labels(n + n_prime):
        a, b = _split_cube(cube, left_ambient)
        if a.dim == n and b.dim == n_prime:
            i = alpha_index.get(a)
            j = beta_index.get(b)
            out.append(alpha[i] * beta[j]
                       if i is not None and j is not None else 0)
        else:
            out.append(0)
    return tuple(out)


def cross_product(p, q, n, n_prime):
    """The external product on cohomology, as a verified GroupHom."""
    space_p = relative_complex(p).cohomology_space(n)
    space_q = relative_complex(q).cohomology_space(n_prime)
    tensor = tensor_group(space_p.group, space_q.group)
    prod_pair = pair_product(p, q)
    target = relative_complex(prod_pair).cohomology_space(n + n_prime)
    cols = []
    for i in range(space_p.group.generators):
        alpha = space_p.cocycles.column(i)
        for j in range(space_q.group.generators):
            beta = space_q.cocycles.column(j)
            gamma = cross_cochain(p, q, n, n_prime, alpha, beta)
            cols.append(target.class_of(gamma))
    hom = GroupHom(tensor.group, target.group,
                   IntMatrix.from_columns(cols,
                                          rows=target.group.generators))
    return ExternalProduct(p, q, (n, n_prime), tensor, hom)


# ---------------------------------------------------------------------------
# Cup products via the front/back-face diagonal


def _shuffle_sign(directions, kept):
    """Parity of pairs (i < j) with i dropped and j kept."""
    inversions = 0
    seen_dropped = 0
    for idx in range(len(directions)):
        if idx in kept:
            inversions += seen_dropped
        else:
            seen_dropped += 1
    return _sign(inversions)


def _front_face(cube, kept_positions):
    """Keep the chosen directions, collapse the rest to lower endpoints."""
    ivs = list(cube.intervals)
    for pos in cube.span_directions():
        if pos not in kept_positions:
            a, _ = ivs[pos]
            ivs[pos] = (a, a)
    return ElementaryCube(tuple(ivs))


def _back_face(cube, kept_positions):
    """Collapse the chosen directions to upper endpoints, keep the rest."""
    ivs = list(cube.intervals)
    for pos in kept_positions:
        _, b = ivs[pos]
        ivs[pos] = (b, b)
    return ElementaryCube(tuple(ivs))


def cup_cochain(x, y, z, n, m, alpha, beta):
    """(alpha cup beta) as a cochain on the cubes of X outside Y union Z.

    For a (n+m)-cube, sum over the n-element subsets S of its
    directions: keep S in front (others to their lower endpoints) for
    alpha and the complement in back (S to upper endpoints) for beta,
    with the shuffle sign.
    """
    union = join(y, z, x)
    target_pair = SubcomplexPair(x, union)
    alpha_index = {c: i for i, c in enumerate(
        relative_complex(SubcomplexPair(x, y)).labels(n))}
    beta_index = {c: i for i, c in enumerate(
        relative_complex(SubcomplexPair(x, z)).labels(m))}
    out = []
    for cube in relative_complex(target_pair).labels(n + m):
        directions = cube.span_directions()
        k = len(directions)
        total = 0
        for kept_idx in itertools.combinations(range(k), n):
            kept_positions = {directions[i] for i in kept_idx}
            front = _front_face(cube, kept_positions)
            back = _back_face(cube, kept_positions)
            i = alpha_index.get(front)
            j = beta_index.get(back)
            if i is None or j is None:
                continue
            total += _shuffle_sign(range(k), set(kept_idx)) \
                * alpha[i] * beta[j]
        out.append(total)
    return tuple(out)


def cup_product(x, y, z, n, m):
    """H^n(X, Y) (x) H^m(X, Z) -> H^(n+m)(X, Y union Z)."""
    pair_y = SubcomplexPair(x, y)
    pair_z = SubcomplexPair(x, z)
    union_pair = SubcomplexPair(x, join(y, z, x))
    space_a = relative_complex(pair_y).cohomology_space(n)
    space_b = relative_complex(pair_z).cohomology_space(m)
    target = relative_complex(union_pair).cohomology_space(n + m)
    tensor = tensor_group(space_a.group, space_b.group)
    cols = []
    for i in range(space_a.group.generators):
        alpha = space_a.cocycles.column(i)
        for j in range(space_b.group.generators):
            beta = space_b.cocycles.column(j)
            gamma = cup_cochain(x, y, z, n, m, alpha, beta)
            cols.append(target.class_of(gamma))
    return GroupHom(tensor.group, target.group,
                    IntMatrix.from_columns(cols,
                                           rows=target.group.generators))


# ---------------------------------------------------------------------------
# The unit


def unit_pair():
    """(1, empty): the final object with its empty subcomplex."""
    pt = CubicalComplex.point()
    return SubcomplexPair(pt, CubicalComplex.empty(0))


def unit_class():
    """H^0(1) = Z with the generator dual to the point."""
    space = relative_complex(unit_pair()).cohomology_space(0)
    return space.group, space.cocycles.column(0)


def check_ax4(pairs_with_degrees):
    """u* o kappa agrees with the canonical iso 1 (x) H^n ~ H^n.

    The unit is the ambient-0 point, so the product pair (1, empty) x
    (X, Y) is literally (X, Y) and u is the identity pair map.
    """
    report = CheckReport("ax4-unit")
    unit = unit_pair()
    for key, (pair, n) in sorted(pairs_with_degrees.items()):
        prod = pair_product(unit, pair)
        if prod != pair:
            report.add("%s/deg%d" % (key, n), False,
                       reason="ambient-0 unit law violated structurally")
            continue
        kappa = cross_product(unit, pair, 0, n)
        u_star = pullback(PairMap.identity(pair), n)
        lhs = u_star @ kappa.hom
        space = relative_complex(pair).cohomology_space(n)
        canonical = GroupHom(kappa.tensor.group, space.group,
                             IntMatrix.identity(space.group.generators),
                             check=False)
        report.add("%s/deg%d" % (key, n), lhs.equal_to(canonical))
    return report


# ---------------------------------------------------------------------------
# Associativity, commutativity, naturality


def swap_pair_map(p, q):
    """The constraint iso (X' x X, ...) -> (X x X', ...) in pairs."""
    swap = CubicalMap.swap(q.total, p.total)
    return PairMap(swap, pair_product(q, p), pair_product(p, q))


def swap_compatibility(p, q, n, n_prime):
    """alpha* o kappa = (-1)^(n n') kappa o tau, as homomorphisms."""
    kappa_pq = cross_product(p, q, n, n_prime)
    kappa_qp = cross_product(q, p, n_prime, n)
    alpha_star = pullback(swap_pair_map(p, q), n + n_prime)
    lhs = alpha_star @ kappa_pq.hom
    tau = tensor_swap(kappa_pq.tensor.left, kappa_pq.tensor.right)
    rhs = (kappa_qp.hom @ tau).scale(_sign(n * n_prime))
    return lhs.equal_to(rhs)


def associativity_compatibility(p, q, r, n1, n2, n3):
    """kappa(kappa (x) id) = kappa(id (x) kappa) under flat indexing."""
    h_p = relative_complex(p).cohomology_space(n1).group
    h_q = relative_complex(q).cohomology_space(n2).group
    h_r = relative_complex(r).cohomology_space(n3).group
    k_pq = cross_product(p, q, n1, n2)
    k_qr = cross_product(q, r, n2, n3)
    k_left = cross_product(pair_product(p, q), r, n1 + n2, n3)
    k_right = cross_product(p, pair_product(q, r), n1, n2 + n3)
    lhs = k_left.hom @ hom_tensor(k_pq.hom, GroupHom.identity(h_r))
    rhs = k_right.hom @ hom_tensor(GroupHom.identity(h_p), k_qr.hom)
    # (p x q) x r and p x (q x r) are literally equal pairs, and the
    # flat tensor indices associate, so direct comparison is sound.
    return lhs.matrix == rhs.matrix or lhs.equal_to(rhs)


def naturality_first_slot(f, q, n, n_prime):
    """kappa o (f* (x) id) = (f x id)* o kappa for a pair map f."""
    kappa_target = cross_product(f.target, q, n, n_prime)
    kappa_source = cross_product(f.source, q, n, n_prime)
    f_star = pullback(f, n)
    id_on_q = GroupHom.identity(kappa_target.tensor.right)
    lhs = kappa_source.hom @ hom_tensor(f_star, id_on_q)
    f_times_id = f.product_with(PairMap.identity(q))
    rhs = pullback(f_times_id, n + n_prime) @ kappa_target.hom
    return lhs.equal_to(rhs)


def naturality_second_slot(p, f, n, n_prime):
    kappa_target = cross_product(p, f.target, n, n_prime)
    kappa_source = cross_product(p, f.source, n, n_prime)
    f_star = pullback(f, n_prime)
    id_on_p = GroupHom.identity(kappa_target.tensor.left)
    lhs = kappa_source.hom @ hom_tensor(id_on_p, f_star)
    id_times_f = PairMap.identity(p).product_with(f)
    rhs = pullback(id_times_f, n + n_prime) @ kappa_target.hom
    return lhs.equal_to(rhs)


def check_ax0_ax1(pairs_with_degrees, pair_maps, max_triple_rank=3):
    """Associativity, swap compatibility, and binaturality over a corpus.

    ``pairs_with_degrees`` maps names to (pair, degree); associativity
    instances are limited to triples whose product stays small.
    """
    report = CheckReport("ax0-ax1")
    named = sorted(pairs_with_degrees.items())
    for (ka, (pa, na)), (kb, (pb, nb)) in itertools.product(named, named):
        report.add("ax0-swap/%s*%s" % (ka, kb),
                   swap_compatibility(pa, pb, na, nb))
    triples = [(a, b, c) for a, b, c in itertools.product(named, repeat=3)
               if len(a[1][0].total.cubes) * len(b[1][0].total.cubes)
               * len(c[1][0].total.cubes) <= 3 ** max_triple_rank * 27]
    for (ka, (pa, na)), (kb, (pb, nb)), (kc, (pc, nc)) in triples:
        report.add("ax0-assoc/%s*%s*%s" % (ka, kb, kc),
                   associativity_compatibility(pa, pb, pc, na, nb, nc))
    for key, f in sorted(pair_maps.items()):
        for kb, (pb, nb) in named:
            for n in {0, 1, f.source.total.dim}:
                report.add("ax1-first/%s/%s/deg%d" % (key, kb, n),
                           naturality_first_slot(f, pb, n, nb))
                report.add("ax1-second/%s/%s/deg%d" % (key, kb, n),
                           naturality_second_slot(pb, f, nb, n))
    return report


# ---------------------------------------------------------------------------
# Boundary compatibility (first and second slot)


def _first_slot_delta(triple, q, k):
    """The three-step boundary H^k((Y,Z) x q) -> H^(k+1)((X,Y) x q)."""
    x, y = triple.total, triple.mid
    x2, y2 = q.total, q.sub
    step_pair = pair_product(SubcomplexPair(y, triple.sub), q)
    mid_pair = SubcomplexPair(product(y, x2), product(y, y2))
    restrict = pullback(PairMap.from_total_identity(mid_pair, step_pair), k)
    w = join(product(x, y2), product(y, x2), product(x, x2))
    cover = Cover(w, product(y, x2), product(x, y2))
    exc = excision_map(cover, k)
    if not exc.is_isomorphism():
        raise ExcisionFailed("excision in the first-slot boundary is not "
                             "invertible")
    step = connecting(Triple(product(x, x2), w, product(x, y2)), k)
    return step @ exc.inverse() @ restrict


def check_ax2(triple, q, n, n_prime):
    """First-slot boundary compatibility, with sign (-1)^(n')."""
    report = CheckReport("ax2")
    inner = triple.inner_pair()
    outer = triple.outer_pair()
    kappa_top = cross_product(inner, q, n, n_prime)
    kappa_bottom = cross_product(outer, q, n + 1, n_prime)
    partial = connecting(triple, n)
    delta = _first_slot_delta(triple, q, n + n_prime)
    lhs = delta @ kappa_top.hom
    id_q = GroupHom.identity(kappa_top.tensor.right)
    rhs = (kappa_bottom.hom @ hom_tensor(partial, id_q)).scale(_sign(n_prime))
    ok = lhs.equal_to(rhs)
    detail = {"degrees": [n, n_prime], "sign": _sign(n_prime)}
    if not ok:
        detail["lhs"] = [list(r) for r in lhs.matrix.data]
        detail["rhs"] = [list(r) for r in rhs.matrix.data]
    report.add("deg%d,%d" % (n, n_prime), ok, **detail)
    return report


def _second_slot_delta(q, triple, k):
    """The mirrored boundary H^k(q x (Y,Z)) -> H^(k+1)(q x (X,Y))."""
    x, y = triple.total, triple.mid
    x2, y2 = q.total, q.sub
    step_pair = pair_product(q, SubcomplexPair(y, triple.sub))
    mid_pair = SubcomplexPair(product(x2, y), product(y2, y))
    restrict = pullback(PairMap.from_total_identity(mid_pair, step_pair), k)
    w = join(product(x2, y), product(y2, x), product(x2, x))
    cover = Cover(w, product(x2, y), product(y2, x))
    exc = excision_map(cover, k)
    if not exc.is_isomorphism():
        raise ExcisionFailed("excision in the second-slot boundary is not "
                             "invertible")
    step = connecting(Triple(product(x2, x), w, product(y2, x)), k)
    return step @ exc.inverse() @ restrict


def check_ax3(q, triple, n_prime, n):
    """Second-slot boundary compatibility; no sign.

    If the unsigned square fails but the (-1)-scaled one commutes, the
    report flags the discrepancy instead of silently passing.
    """
    report = CheckReport("ax3")
    inner = triple.inner_pair()
    outer = triple.outer_pair()
    kappa_top = cross_product(q, inner, n_prime, n)
    kappa_bottom = cross_product(q, outer, n_prime, n + 1)
    partial = connecting(triple, n)
    delta = _second_slot_delta(q, triple, n_prime + n)
    lhs = delta @ kappa_top.hom
    id_q = GroupHom.identity(kappa_top.tensor.left)
    rhs = kappa_bottom.hom @ hom_tensor(id_q, partial)
    ok = lhs.equal_to(rhs)
    detail = {"degrees": [n_prime, n], "sign": 1}
    if not ok and lhs.equal_to(rhs.scale(-1)):
        detail["flag"] = "commutes with sign -1 instead of +1"
    if not ok:
        detail["lhs"] = [list(r) for r in lhs.matrix.data]
        detail["rhs"] = [list(r) for r in rhs.matrix.data]
    report.add("deg%d,%d" % (n_prime, n), ok, **detail)
    return report


# ---------------------------------------------------------------------------
# The Kunneth checks on good pairs


def check_kunneth(cert_p, cert_q):
    """Isomorphism, swap sign, and the single-component property."""
    if not isinstance(cert_p, GoodPairCertificate) \
            or not isinstance(cert_q, GoodPairCertificate):
        raise NotGood("both pairs must carry good-pair certificates")
    report = CheckReport("kunneth")
    p, q = cert_p.pair, cert_q.pair
    n, n_prime = cert_p.degree, cert_q.degree
    kappa = cross_product(p, q, n, n_prime)
    report.add("iso/deg%d,%d" % (n, n_prime), kappa.hom.is_isomorphism(),
               source=kappa.tensor.group.describe(),
               target=kappa.hom.target.describe())
    report.add("swap-sign/deg%d,%d" % (n, n_prime),
               swap_compatibility(p, q, n, n_prime),
               sign=_sign(n * n_prime))
    total = n + n_prime
    nontrivial = []
    partial_homs = []
    for i in range(0, total + 1):
        component = cross_product(p, q, i, total - i)
        if not component.tensor.group.is_trivial:
            nontrivial.append(i)
        partial_homs.append(component.hom)
    summed = partial_homs[0]
    for hom in partial_homs[1:]:
        summed = hom_from_sum(summed, hom)
    report.add("single-component",
               nontrivial in ([], [n]) and summed.is_isomorphism(),
               nontrivial_components=[(i, total - i) for i in nontrivial])
    return report


def tensor_good_pair(cert_p, cert_q):
    """The certificate for the product of two good pairs."""
    prod = pair_product(cert_p.pair, cert_q.pair)
    cert = certify_good_pair(prod)
    if isinstance(cert, GoodPairCertificate):
        expected = tensor_group(cert_p.group, cert_q.group).group
        degree_ok = cert.group.is_trivial \
            or cert.degree == cert_p.degree + cert_q.degree
        if degree_ok and cert.group.isomorphic_to(expected):
            return cert
        raise NotGood("product pair is good but at the wrong degree or "
                      "group (%s, expected %s)" % (cert.group.describe(),
                                                   expected.describe()))
    raise NotGood("product pair is not good: %s" % cert.reason)
