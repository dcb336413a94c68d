"""Corpora of named complexes, pairs, maps, triples, covers, filtrations.

The JSON schema (``cubicoh-corpus/1``):

* ``complexes``: name -> list of cubes; a cube is a list of [lo, hi]
  integer pairs with hi - lo in {0, 1}.
* ``subcomplexes``: name -> {"of": parent name, "cubes": [...]}; loaded
  as complexes and validated to lie inside the parent.
* ``pairs``: name -> [total name, sub name].
* ``maps``: name -> {"source": name, "target": name,
  "vertices": [[point, point], ...]}.
* ``pair_maps``: name -> {"map": name, "source": pair, "target": pair}.
* ``triples``: name -> [total, mid, sub] complex names.
* ``covers``: name -> [space, left, right] complex names.
* ``filtrations``: name -> {"space": name, "levels": [names ...]}
  (without the leading empty level).
* ``sequents``: list of sequent strings; ``sequent_files``: list of
  paths (relative to the corpus file) of one-sequent-per-line files.

Loading validates everything: cube lists must already be face-closed,
references must resolve, containments must hold.  Generation is fully
deterministic in the seed.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from pathlib import Path

from .cubes import (
    Cover,
    CubicalComplex,
    CubicalMap,
    ElementaryCube,
    PairMap,
    SubcomplexPair,
    Triple,
    product,
)
from .cellular import Filtration


class CorpusError(ValueError):
    """A corpus file failed validation."""


@dataclass
class Corpus:
    complexes: dict = field(default_factory=dict)
    pairs: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    pair_maps: dict = field(default_factory=dict)
    triples: dict = field(default_factory=dict)
    covers: dict = field(default_factory=dict)
    filtrations: dict = field(default_factory=dict)
    sequents: list = field(default_factory=list)

    def complex_name(self, complex_):
        # Sorted scan so equal complexes resolve to one canonical name.
        for name in sorted(self.complexes):
            if self.complexes[name] == complex_:
                return name
        return None

    def pair_name(self, pair):
        for name in sorted(self.pairs):
            if self.pairs[name] == pair:
                return name
        return None


# ---------------------------------------------------------------------------
# JSON serialisation


def _cube_to_json(cube):
    return [[a, b] for a, b in cube.intervals]


def _cube_from_json(data):
    return ElementaryCube(tuple((int(a), int(b)) for a, b in data))


def _complex_to_json(complex_):
    cubes = [_cube_to_json(c) for c in sorted(complex_.cubes,
                                              key=ElementaryCube.sort_key)]
    if not cubes and complex_.ambient:
        # The plain cube-list encoding cannot carry the ambient
        # dimension of an empty complex.
        return {"ambient": complex_.ambient, "cubes": []}
    return cubes


def _complex_from_json(data, name):
    declared = None
    if isinstance(data, dict):
        declared = int(data.get("ambient", 0))
        data = data.get("cubes", [])
    cubes = [_cube_from_json(c) for c in data]
    ambients = {c.ambient for c in cubes}
    if len(ambients) > 1:
        raise CorpusError("complex %r mixes ambient dimensions" % name)
    ambient = ambients.pop() if ambients else (declared or 0)
    if declared is not None and ambient != declared:
        raise CorpusError("complex %r contradicts its declared ambient "
                          "dimension" % name)
    try:
        return CubicalComplex(ambient, cubes)
    except ValueError as exc:
        raise CorpusError("complex %r: %s" % (name, exc))


def corpus_to_json(corpus):
    data = {
        "schema": "cubicoh-corpus/1",
        "complexes": {name: _complex_to_json(c)
                      for name, c in corpus.complexes.items()},
        "pairs": {name: [corpus.complex_name(p.total),
                         corpus.complex_name(p.sub)]
                  for name, p in corpus.pairs.items()},
        "maps": {},
        "pair_maps": {},
        "triples": {name: [corpus.complex_name(t.total),
                           corpus.complex_name(t.mid),
                           corpus.complex_name(t.sub)]
                    for name, t in corpus.triples.items()},
        "covers": {name: [corpus.complex_name(c.space),
                          corpus.complex_name(c.left),
                          corpus.complex_name(c.right)]
                   for name, c in corpus.covers.items()},
        "filtrations": {
            name: {"space": corpus.complex_name(f.space),
                   "levels": [corpus.complex_name(level)
                              for level in f.levels[1:]]}
            for name, f in corpus.filtrations.items()},
        "sequents": list(corpus.sequents),
    }
    for name, m in corpus.maps.items():
        data["maps"][name] = {
            "source": corpus.complex_name(m.source),
            "target": corpus.complex_name(m.target),
            "vertices": [[list(v), list(w)]
                         for v, w in sorted(m.vertex_map.items())],
        }
    for name, pm in corpus.pair_maps.items():
        map_name = next((k for k, m in corpus.maps.items() if m == pm.map),
                        None)
        data["pair_maps"][name] = {
            "map": map_name,
            "source": corpus.pair_name(pm.source),
            "target": corpus.pair_name(pm.target),
        }
    return data


def corpus_from_json(data, base_dir=None):
    if data.get("schema") != "cubicoh-corpus/1":
        raise CorpusError("unknown corpus schema %r" % data.get("schema"))
    corpus = Corpus()
    for name, cubes in data.get("complexes", {}).items():
        corpus.complexes[name] = _complex_from_json(cubes, name)
    for name, spec in data.get("subcomplexes", {}).items():
        parent = _resolve(corpus.complexes, spec.get("of"), "complex")
        sub = _complex_from_json(spec.get("cubes", []), name)
        if not parent.contains(sub):
            raise CorpusError("subcomplex %r is not contained in its parent"
                              % name)
        corpus.complexes[name] = sub
    for name, (total, sub) in data.get("pairs", {}).items():
        try:
            corpus.pairs[name] = SubcomplexPair(
                _resolve(corpus.complexes, total, "complex"),
                _resolve(corpus.complexes, sub, "complex"))
        except ValueError as exc:
            raise CorpusError("pair %r: %s" % (name, exc))
    for name, spec in data.get("maps", {}).items():
        source = _resolve(corpus.complexes, spec["source"], "complex")
        target = _resolve(corpus.complexes, spec["target"], "complex")
        vm = {tuple(v): tuple(w) for v, w in spec["vertices"]}
        try:
            corpus.maps[name] = CubicalMap(source, target, vm)
        except ValueError as exc:
            raise CorpusError("map %r: %s" % (name, exc))
    for name, spec in data.get("pair_maps", {}).items():
        try:
            corpus.pair_maps[name] = PairMap(
                _resolve(corpus.maps, spec["map"], "map"),
                _resolve(corpus.pairs, spec["source"], "pair"),
                _resolve(corpus.pairs, spec["target"], "pair"))
        except ValueError as exc:
            raise CorpusError("pair map %r: %s" % (name, exc))
    for name, (total, mid, sub) in data.get("triples", {}).items():
        try:
            corpus.triples[name] = Triple(
                _resolve(corpus.complexes, total, "complex"),
                _resolve(corpus.complexes, mid, "complex"),
                _resolve(corpus.complexes, sub, "complex"))
        except ValueError as exc:
            raise CorpusError("triple %r: %s" % (name, exc))
    for name, (space, left, right) in data.get("covers", {}).items():
        try:
            corpus.covers[name] = Cover(
                _resolve(corpus.complexes, space, "complex"),
                _resolve(corpus.complexes, left, "complex"),
                _resolve(corpus.complexes, right, "complex"))
        except ValueError as exc:
            raise CorpusError("cover %r: %s" % (name, exc))
    for name, spec in data.get("filtrations", {}).items():
        space = _resolve(corpus.complexes, spec["space"], "complex")
        levels = [_resolve(corpus.complexes, level, "complex")
                  for level in spec["levels"]]
        try:
            corpus.filtrations[name] = Filtration(space, levels)
        except ValueError as exc:
            raise CorpusError("filtration %r: %s" % (name, exc))
    corpus.sequents = list(data.get("sequents", []))
    for rel in data.get("sequent_files", []):
        path = Path(base_dir or ".") / rel
        for line in path.read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if line and not line.startswith("#"):
                corpus.sequents.append(line)
    return corpus


def _resolve(table, name, kind):
    if name not in table:
        raise CorpusError("unknown %s %r" % (kind, name))
    return table[name]


def load_corpus(path):
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise CorpusError("invalid JSON: %s" % exc)
    return corpus_from_json(data, base_dir=path.parent)


def save_corpus(corpus, path):
    payload = json.dumps(corpus_to_json(corpus), sort_keys=True,
                         separators=(",", ":")) + "\n"
    Path(path).write_text(payload, encoding="utf-8")
    return payload


# ---------------------------------------------------------------------------
# The builtin corpus


def _square_boundary(square):
    return square.skeleton(1)


def builtin_corpus():
    """The curated desk-scale corpus used by the default suites."""
    corpus = Corpus()
    cx = corpus.complexes

    point = CubicalComplex.point()
    interval = CubicalComplex.box([1])
    interval_ends = interval.skeleton(0)
    square = CubicalComplex.box([1, 1])
    square_boundary = _square_boundary(square)
    cube3 = CubicalComplex.box([1, 1, 1])
    cube3_boundary = cube3.skeleton(2)
    rect2 = CubicalComplex.box([2, 1])
    torus = product(square_boundary, square_boundary)

    cx["empty"] = CubicalComplex.empty(0)
    cx["empty1"] = CubicalComplex.empty(1)
    cx["empty2"] = CubicalComplex.empty(2)
    cx["empty4"] = CubicalComplex.empty(4)
    cx["point"] = point
    cx["interval"] = interval
    cx["interval_ends"] = interval_ends
    cx["square"] = square
    cx["square_boundary"] = square_boundary
    cx["square_vertices"] = square.skeleton(0)
    cx["cube3"] = cube3
    cx["cube3_boundary"] = cube3_boundary
    cx["rect2"] = rect2
    cx["torus"] = torus

    corner = ElementaryCube(((0, 0), (0, 0)))
    cx["one_corner"] = CubicalComplex(2, (corner,))

    def edge2(x0, y0, x1, y1):
        return ElementaryCube(((min(x0, x1), max(x0, x1)),
                               (min(y0, y1), max(y0, y1))))

    top = CubicalComplex.from_cubes(2, [edge2(0, 1, 1, 1)])
    bottom = CubicalComplex.from_cubes(2, [edge2(0, 0, 1, 0)])
    left = CubicalComplex.from_cubes(2, [edge2(0, 0, 0, 1)])
    right = CubicalComplex.from_cubes(2, [edge2(1, 0, 1, 1)])
    cx["l_top_left"] = CubicalComplex(2, top.cubes | left.cubes)
    cx["l_bottom_right"] = CubicalComplex(2, bottom.cubes | right.cubes)
    cx["top_edge"] = top
    cx["left_edge"] = left

    cx["rect2_left"] = CubicalComplex.from_cubes(
        2, [ElementaryCube(((0, 1), (0, 1)))])
    cx["rect2_right"] = CubicalComplex.from_cubes(
        2, [ElementaryCube(((1, 2), (0, 1)))])

    # Two cylinders covering the torus, overlapping in two circles.
    lcirc = CubicalComplex(2, cx["l_top_left"].cubes)
    rcirc = CubicalComplex(2, cx["l_bottom_right"].cubes)
    cx["cylinder_a"] = product(square_boundary, lcirc)
    cx["cylinder_b"] = product(square_boundary, rcirc)

    # Skeleta of the torus for filtrations.
    cx["torus_1skel"] = torus.skeleton(1)
    cx["torus_0skel"] = torus.skeleton(0)
    cx["square_1skel"] = square_boundary
    cx["two_opposite"] = CubicalComplex(
        2, (ElementaryCube(((0, 0), (0, 0))),
            ElementaryCube(((1, 1), (1, 1)))))

    pairs = corpus.pairs
    pairs["pt"] = SubcomplexPair.absolute(point)
    pairs["ends"] = SubcomplexPair.absolute(interval_ends)
    pairs["interval_abs"] = SubcomplexPair.absolute(interval)
    pairs["interval_rel"] = SubcomplexPair(interval, interval_ends)
    pairs["square_rel"] = SubcomplexPair(square, square_boundary)
    pairs["square_abs"] = SubcomplexPair.absolute(square)
    pairs["circle"] = SubcomplexPair.absolute(square_boundary)
    pairs["cube3_rel"] = SubcomplexPair(cube3, cube3_boundary)
    pairs["torus_abs"] = SubcomplexPair.absolute(torus)
    pairs["square_self"] = SubcomplexPair(square, square)

    maps = corpus.maps
    maps["interval_identity"] = CubicalMap.identity(interval)
    maps["ends_into_interval"] = CubicalMap.inclusion(interval_ends, interval)
    maps["boundary_into_square"] = CubicalMap.inclusion(square_boundary,
                                                        square)
    maps["square_to_point"] = CubicalMap.constant(
        square, point, ())
    maps["square_first_axis"] = CubicalMap(
        square, interval, {v: (v[0],) for v in square.vertices()})
    maps["square_swap"] = CubicalMap(
        square, square, {v: (v[1], v[0]) for v in square.vertices()})

    corpus.pair_maps["ends_pairmap"] = PairMap(
        maps["ends_into_interval"], pairs["ends"], pairs["interval_abs"])
    corpus.pair_maps["boundary_pairmap"] = PairMap(
        maps["boundary_into_square"], pairs["circle"], pairs["square_abs"])
    corpus.pair_maps["swap_square_rel"] = PairMap(
        maps["square_swap"], pairs["square_rel"], pairs["square_rel"])

    triples = corpus.triples
    triples["interval_triple"] = Triple(interval, interval_ends,
                                        CubicalComplex.empty(1))
    triples["square_triple"] = Triple(square, square_boundary,
                                      CubicalComplex.empty(2))
    triples["square_corner_triple"] = Triple(square, square_boundary,
                                             cx["one_corner"])
    triples["degenerate_triple"] = Triple(square, square, square)

    covers = corpus.covers
    covers["trivial_cover"] = Cover(square, square,
                                    CubicalComplex.empty(2))
    covers["rect2_cover"] = Cover(rect2, cx["rect2_left"], cx["rect2_right"])
    covers["circle_cover"] = Cover(square_boundary, cx["l_top_left"],
                                   cx["l_bottom_right"])
    covers["torus_cover"] = Cover(torus, cx["cylinder_a"], cx["cylinder_b"])

    filtrations = corpus.filtrations
    filtrations["square_skeleta"] = Filtration(
        square, [square.skeleton(0), square.skeleton(1), square])
    filtrations["circle_skeleta"] = Filtration(
        square_boundary, [square_boundary.skeleton(0), square_boundary])
    filtrations["circle_two_vertices"] = Filtration(
        square_boundary, [cx["two_opposite"], square_boundary])
    filtrations["torus_skeleta"] = Filtration(
        torus, [torus.skeleton(0), torus.skeleton(1), torus])

    corpus.sequents = [
        "⊤ ⊢_{y:s0} f(g(y)) = *",
        "⊤ ⊢_{x:s0} f(x) = * → (∃ y:s0) g(y) = x",
        "⊤ ⊢_{x:s0} x = x",
    ]
    return corpus


# ---------------------------------------------------------------------------
# Random generation


def _random_subcomplex(rng, complex_, density=0.6):
    chosen = [c for c in sorted(complex_.cubes, key=ElementaryCube.sort_key)
              if rng.random() < density]
    return CubicalComplex.from_cubes(complex_.ambient, chosen) \
        if chosen else CubicalComplex.empty(complex_.ambient)


def _random_complex(rng, max_cubes):
    shapes = [(2,), (3,), (2, 2), (3, 2), (2, 1), (1, 1, 1), (2, 1, 1)]
    box = CubicalComplex.box(rng.choice(shapes))
    for _ in range(8):
        candidate = _random_subcomplex(rng, box,
                                       density=rng.uniform(0.4, 0.9))
        if 0 < len(candidate.cubes) <= max_cubes:
            return candidate
    if len(box.cubes) <= max_cubes:
        return box
    corner = sorted(box.vertices())[0]
    return CubicalComplex(box.ambient,
                          (ElementaryCube(tuple((x, x) for x in corner)),))


def generate_corpus(seed, max_cubes=30, complexes=12):
    """A reproducible pseudo-random corpus of the requested size.

    Complexes are random face-closures inside small boxes; pairs,
    triples, covers and filtrations are derived from them.  Identical
    seeds and bounds give identical corpora.
    """
    rng = random.Random(seed)
    corpus = Corpus()
    if complexes <= 0 or max_cubes <= 0:
        return corpus
    for i in range(complexes):
        corpus.complexes["c%02d" % i] = _random_complex(rng, max_cubes)
    names = sorted(corpus.complexes)
    for i, name in enumerate(names):
        x = corpus.complexes[name]
        sub = _random_subcomplex(rng, x, density=0.5)
        sub_name = "c%02d_sub" % i
        corpus.complexes[sub_name] = sub
        corpus.pairs["p%02d" % i] = SubcomplexPair(x, sub)
        inner = _random_subcomplex(rng, sub, density=0.5)
        inner_name = "c%02d_inner" % i
        corpus.complexes[inner_name] = inner
        corpus.triples["t%02d" % i] = Triple(x, sub, inner)
        tops = x.top_cubes()
        if tops:
            split = max(1, len(tops) // 2)
            chosen = list(tops)
            rng.shuffle(chosen)
            left = CubicalComplex.from_cubes(x.ambient, chosen[:split])
            right = CubicalComplex.from_cubes(x.ambient, chosen[split - 1:])
            corpus.complexes["c%02d_left" % i] = left
            corpus.complexes["c%02d_right" % i] = right
            corpus.covers["v%02d" % i] = Cover(x, left, right)
        levels = [x.skeleton(p) for p in range(0, x.dim + 1)]
        if levels:
            for p, level in enumerate(levels[:-1]):
                corpus.complexes["c%02d_skel%d" % (i, p)] = level
            corpus.filtrations["f%02d" % i] = Filtration(x, levels)
        vertices = x.vertices()
        if vertices:
            target_vertex = rng.choice(sorted(vertices))
            corpus.maps["m%02d_const" % i] = CubicalMap.constant(
                x, x, target_vertex)
        corpus.maps["m%02d_sub" % i] = CubicalMap.inclusion(sub, x)
    return corpus
