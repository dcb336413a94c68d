"""Finite quiver fragments of pairs-with-degrees and their representations.

Vertices are (pair name, degree); pair maps contribute contravariant
edges (target pair, n) -> (source pair, n) and registered triples
contribute connecting edges (Y, Z, n) -> (X, Y, n+1).  The good
subquiver keeps the degree-matched good vertices (a good pair at its
concentration degree; zero pairs at 0) and carries the tensor structure
induced by the pair product, the mod-2 grading, the ambient-0 unit and
the canonical constraint maps: the coordinate block swap for
commutativity and literal identities for associativity and the unit,
which hold on the nose for interval concatenation.

Representing vertices by their cohomology groups and edges by
pullback/connecting maps yields the graded tensor representation whose
coherence ``check_tensor_representation`` verifies against the external
product.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cubes import PairMap, pair_product
from .cellular import GoodPairCertificate
from .cohomology import connecting, pullback, relative_cohomology
from .kunneth import (
    check_ax2,
    cross_product,
    swap_compatibility,
    associativity_compatibility,
    naturality_first_slot,
    tensor_swap,
    unit_pair,
)
from .homalg import GroupHom, IntMatrix
from .reporting import CheckReport


class NotClosedUnderProduct(ValueError):
    """A required tensor vertex has no registered pair in the corpus."""


@dataclass(frozen=True)
class Edge:
    kind: str          # "map" or "connecting"
    name: str          # the corpus name of the pair map or triple
    source: tuple      # (pair name, degree)
    target: tuple

    def to_json(self):
        return {"kind": self.kind, "name": self.name,
                "source": list(self.source), "target": list(self.target)}


@dataclass(frozen=True)
class QuiverFragment:
    pairs: dict
    window: tuple
    vertices: frozenset
    edges: tuple
    pair_maps: dict = field(default_factory=dict)
    triples: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "window": list(self.window),
            "vertices": sorted([list(v) for v in self.vertices]),
            "edges": [e.to_json() for e in
                      sorted(self.edges, key=lambda e: (e.kind, e.name,
                                                        e.source, e.target))],
        }


def _pair_name(pairs, pair):
    for name, candidate in pairs.items():
        if candidate == pair:
            return name
    return None


def build_fragment(pairs, pair_maps, triples, window):
    """The complete fragment over named pairs, pair maps and triples.

    One contravariant edge per pair map per degree in the window, one
    connecting edge per triple per degree; edges whose endpoints are
    not registered pairs are omitted.
    """
    lo, hi = window
    vertices = frozenset((name, n) for name in pairs
                         for n in range(lo, hi + 1))
    edges = []
    for name, pm in sorted(pair_maps.items()):
        src_name = _pair_name(pairs, pm.source)
        dst_name = _pair_name(pairs, pm.target)
        if src_name is None or dst_name is None:
            continue
        for n in range(lo, hi + 1):
            edges.append(Edge("map", name, (dst_name, n), (src_name, n)))
    for name, triple in sorted(triples.items()):
        inner_name = _pair_name(pairs, triple.inner_pair())
        outer_name = _pair_name(pairs, triple.outer_pair())
        if inner_name is None or outer_name is None:
            continue
        for n in range(lo, hi):
            edges.append(Edge("connecting", name,
                              (inner_name, n), (outer_name, n + 1)))
    return QuiverFragment(dict(pairs), (lo, hi), vertices, tuple(edges),
                          dict(pair_maps), dict(triples))


@dataclass(frozen=True)
class GradedTensorQuiver:
    fragment: QuiverFragment
    vertices: frozenset          # degree-matched good vertices
    edges: tuple                 # fragment edges between good vertices
    certificates: dict           # pair name -> GoodPairCertificate
    tensor: dict                 # (v, w) -> vertex
    unit: tuple

    def grading(self, vertex):
        return vertex[1] % 2

    def pair_of(self, vertex):
        return self.fragment.pairs[vertex[0]]

    def to_json(self):
        return {
            "vertices": sorted([list(v) for v in self.vertices]),
            "unit": list(self.unit),
            "grading": {str(list(v)): self.grading(v)
                        for v in sorted(self.vertices)},
            "tensor": sorted(
                [[list(v), list(w), list(t)]
                 for (v, w), t in self.tensor.items()]),
            "edges": [e.to_json() for e in
                      sorted(self.edges, key=lambda e: (e.kind, e.name,
                                                        e.source, e.target))],
        }


def good_subquiver(fragment, certificates, closure_degree=None):
    """The full subquiver on degree-matched good vertices, with tensors.

    A vertex (pair, n) is kept when its pair carries a certificate with
    concentration degree n.  The tensor of two kept vertices must be a
    registered pair; when ``closure_degree`` is set, a missing product
    with total degree within it raises NotClosedUnderProduct, otherwise
    missing products are silently skipped.
    """
    lo, hi = fragment.window
    good = {}
    for name, cert in certificates.items():
        if isinstance(cert, GoodPairCertificate) and name in fragment.pairs:
            good[name] = cert
    vertices = frozenset((name, cert.degree) for name, cert in good.items()
                         if lo <= cert.degree <= hi)
    edges = tuple(e for e in fragment.edges
                  if e.source in vertices and e.target in vertices)
    unit = None
    unit_target = unit_pair()
    for name in good:
        if fragment.pairs[name] == unit_target:
            unit = (name, 0)
    if unit is None or unit not in vertices:
        raise NotClosedUnderProduct("the unit pair (point, empty) must be a "
                                    "registered good vertex")
    tensor = {}
    for v in sorted(vertices):
        for w in sorted(vertices):
            total_degree = v[1] + w[1]
            if total_degree > hi:
                continue
            prod = pair_product(fragment.pairs[v[0]], fragment.pairs[w[0]])
            prod_name = _pair_name(fragment.pairs, prod)
            if prod_name is None:
                if closure_degree is not None \
                        and total_degree <= closure_degree:
                    raise NotClosedUnderProduct(
                        "product of %s and %s (degree %d) is not registered"
                        % (v[0], w[0], total_degree))
                continue
            tensor[(v, w)] = (prod_name, total_degree)
    return GradedTensorQuiver(fragment, vertices, edges, good, tensor, unit)


@dataclass(frozen=True)
class QuiverRepresentation:
    quiver: GradedTensorQuiver
    vertex_groups: dict
    edge_homs: dict

    def group(self, vertex):
        return self.vertex_groups[vertex]


def represent(quiver):
    """Vertices to certified cohomology groups, edges to induced maps."""
    groups = {}
    for vertex in quiver.vertices:
        pair = quiver.pair_of(vertex)
        group = relative_cohomology(pair, vertex[1]).group
        if not group.is_free:
            raise AssertionError("good vertex %r carries torsion" % (vertex,))
        groups[vertex] = group
    homs = {}
    for edge in quiver.edges:
        if edge.kind == "map":
            pm = quiver.fragment.pair_maps[edge.name]
            homs[edge] = pullback(pm, edge.source[1])
        else:
            triple = quiver.fragment.triples[edge.name]
            homs[edge] = connecting(triple, edge.source[1])
    return QuiverRepresentation(quiver, groups, homs)


def check_tensor_representation(rep, size_budget=300):
    """Coherence of the representation with the external product.

    For every tensor vertex the external product is an isomorphism onto
    its group; the swap constraint commutes with the mod-2 grading sign;
    associativity and unit constraints commute strictly; functorial
    edges satisfy binaturality and connecting edges the first-slot
    boundary law with its sign.  Instances whose product complexes
    exceed the size budget are skipped deterministically.
    """
    quiver = rep.quiver
    report = CheckReport("tensor-representation")
    pairs = quiver.fragment.pairs

    def cube_budget(*names):
        total = 1
        for name in names:
            total *= len(pairs[name].total.cubes)
        return total

    for (v, w), target in sorted(quiver.tensor.items()):
        kappa = cross_product(pairs[v[0]], pairs[w[0]], v[1], w[1])
        expected = rep.group(target)
        report.add("kappa-iso/%s@%d*%s@%d" % (v[0], v[1], w[0], w[1]),
                   kappa.hom.is_isomorphism()
                   and kappa.hom.target.isomorphic_to(expected),
                   target=expected.describe())

    for (v, w), target in sorted(quiver.tensor.items()):
        if (w, v) not in quiver.tensor:
            continue
        report.add("swap/%s@%d*%s@%d" % (v[0], v[1], w[0], w[1]),
                   swap_compatibility(pairs[v[0]], pairs[w[0]], v[1], w[1]),
                   sign=-1 if (v[1] * w[1]) % 2 else 1)

    for v in sorted(quiver.vertices):
        unit_name = quiver.unit[0]
        if (quiver.unit, v) not in quiver.tensor:
            continue
        prod = pair_product(pairs[unit_name], pairs[v[0]])
        kappa = cross_product(pairs[unit_name], pairs[v[0]], 0, v[1])
        u_star = pullback(PairMap.identity(pairs[v[0]]), v[1]) \
            if prod == pairs[v[0]] else None
        ok = u_star is not None and (u_star @ kappa.hom).equal_to(
            GroupHom(kappa.tensor.group, rep.group(v),
                     IntMatrix.identity(rep.group(v).generators),
                     check=False))
        report.add("unit/%s@%d" % (v[0], v[1]), ok)

    for u in sorted(quiver.vertices):
        for v in sorted(quiver.vertices):
            for w in sorted(quiver.vertices):
                if u[1] + v[1] + w[1] > quiver.fragment.window[1]:
                    continue
                if cube_budget(u[0], v[0], w[0]) > size_budget:
                    continue
                if (u, v) not in quiver.tensor or (v, w) not in quiver.tensor:
                    continue
                report.add(
                    "assoc/%s@%d*%s@%d*%s@%d"
                    % (u[0], u[1], v[0], v[1], w[0], w[1]),
                    associativity_compatibility(
                        pairs[u[0]], pairs[v[0]], pairs[w[0]],
                        u[1], v[1], w[1]))

    for edge in sorted(quiver.edges,
                       key=lambda e: (e.kind, e.name, e.source, e.target)):
        if edge.kind == "map":
            pm = quiver.fragment.pair_maps[edge.name]
            for w in sorted(quiver.vertices):
                if cube_budget(edge.source[0], w[0]) > size_budget:
                    continue
                report.add(
                    "edge-naturality/%s/deg%d/%s@%d"
                    % (edge.name, edge.source[1], w[0], w[1]),
                    naturality_first_slot(pm, pairs[w[0]],
                                          edge.source[1], w[1]))
        else:
            triple = quiver.fragment.triples[edge.name]
            for w in sorted(quiver.vertices):
                if cube_budget(edge.target[0], w[0]) > size_budget:
                    continue
                sub = check_ax2(triple, pairs[w[0]], edge.source[1], w[1])
                report.extend(sub, prefix="edge-boundary/%s/%s@%d/"
                              % (edge.name, w[0], w[1]))

    # The swap constraint must also act as an isomorphism on the nose.
    for (v, w), target in sorted(quiver.tensor.items()):
        if (w, v) not in quiver.tensor:
            continue
        tau = tensor_swap(rep.group(v), rep.group(w))
        report.add("constraint-iso/%s@%d*%s@%d" % (v[0], v[1], w[0], w[1]),
                   tau.is_isomorphism())
    return report
