"""The acceptance gate: one test per criterion, each printing a verdict.

Every criterion is exercised at its stated scale: the generated corpora
are seeded, so the whole gate is reproducible.
"""

import itertools
import random
import sys
import time

from cubicoh.cellular import (
    GoodPairCertificate,
    certify_good_pair,
    check_cellularity,
    comparison_iso,
    filtration_complex,
    is_good_filtration,
    pair_filtration_complex,
    skeleton_filtration,
)
from cubicoh.cohomology import (
    check_les_of_triple,
    cochain_pullback,
    excision_check,
    fiber_comparison_groups,
    mayer_vietoris_check,
    reduced_connecting,
    reduced_induced_hom,
    reduced_pullback,
    relative_cohomology,
)
from cubicoh.corpus import builtin_corpus, generate_corpus
from cubicoh.cubes import (
    CubicalComplex,
    PairMap,
    SubcomplexPair,
    product,
)
from cubicoh.homalg import (
    GroupHom,
    IntMatrix,
    cohomology_at,
    is_exact_at,
)
from cubicoh.kunneth import check_ax2, check_kunneth
from cubicoh.logic import (
    evaluate,
    exactness_sequents,
    excision_sequents,
    model_from_homs,
    parse_sequent,
)
from cubicoh.quiver import (
    build_fragment,
    check_tensor_representation,
    good_subquiver,
    represent,
)
from cubicoh.suites import quiver_corpus_pairs, suite_axioms

from test_homalg import oracle_invariant_factors


def _verdict(number, ok, detail):
    line = "criterion %d: %s (%s)" % (number, "PASS" if ok else "FAIL",
                                      detail)
    # Bypass pytest's capture so every criterion prints its line.
    sys.__stdout__.write(line + "\n")
    sys.__stdout__.flush()
    return ok


def _generated_triples(minimum):
    triples = list(builtin_corpus().triples.values())
    seed = 0
    while len(triples) < minimum:
        corpus = generate_corpus(seed, max_cubes=40, complexes=50)
        triples.extend(corpus.triples.values())
        seed += 1
    assert all(len(t.total.cubes) <= 50 for t in triples[:minimum])
    return triples[:minimum]


def test_criterion_1_les_suite():
    triples = _generated_triples(200)
    started = time.monotonic()
    failures = 0
    junctions = 0
    for triple in triples:
        report = check_les_of_triple(triple)
        junctions += len(report.items)
        failures += len(report.failures)
    elapsed = time.monotonic() - started
    ok = failures == 0 and len(triples) >= 200 and elapsed < 60.0
    assert _verdict(1, ok, "%d triples, %d junctions, %d failures, %.1fs"
                    % (len(triples), junctions, failures, elapsed))


def _small_enough_for_search(cover, moduli, bound=300):
    from cubicoh.cohomology import coefficient_reduction

    overlap_pair = SubcomplexPair(cover.left, cover.overlap())
    wide_pair = SubcomplexPair(cover.space, cover.right)
    for n in range(0, cover.space.dim + 1):
        for m in moduli:
            for pair in (overlap_pair, wide_pair):
                order = coefficient_reduction(pair, n, m).group.order()
                if order is None or order > bound:
                    return False
    return True


def _generated_covers(minimum):
    covers = [c for c in builtin_corpus().covers.values()
              if len(c.space.cubes) <= 50]
    seed = 100
    while len(covers) < minimum:
        corpus = generate_corpus(seed, max_cubes=30, complexes=40)
        for cover in corpus.covers.values():
            if _small_enough_for_search(cover, (2, 3)):
                covers.append(cover)
        seed += 1
    return covers[:minimum]


def test_criterion_2_excision_and_mv():
    covers = _generated_covers(100)
    failures = []
    for index, cover in enumerate(covers):
        if not excision_check(cover).ok:
            failures.append((index, "excision"))
            continue
        if not mayer_vietoris_check(cover).ok:
            failures.append((index, "mv"))
            continue
        overlap_pair = SubcomplexPair(cover.left, cover.overlap())
        wide_pair = SubcomplexPair(cover.space, cover.right)
        pm = PairMap.inclusion(overlap_pair, wide_pair)
        for n in range(0, cover.space.dim + 1):
            for m in (2, 3):
                sequents = excision_sequents(cover, n, m)
                hom = reduced_induced_hom(cochain_pullback(pm), n, m)
                matrix_level = (hom.is_injective(), hom.is_surjective())
                if sequents != matrix_level or sequents != (True, True):
                    failures.append((index, "sequents", n, m, sequents,
                                     matrix_level))
    ok = not failures and len(covers) >= 100
    assert _verdict(2, ok, "%d covers, failures: %r"
                    % (len(covers), failures[:3]))


def test_criterion_3_cellularity():
    corpus = builtin_corpus()
    generated = generate_corpus(7, max_cubes=25, complexes=10)
    complexes = {**corpus.complexes,
                 **{"g_" + k: v for k, v in generated.complexes.items()}}
    pairs = {**corpus.pairs,
             **{"g_" + k: v for k, v in generated.pairs.items()}}
    failures = []
    for name, complex_ in sorted(complexes.items()):
        filtration = skeleton_filtration(complex_)
        if not is_good_filtration(filtration):
            failures.append((name, "skeleton-not-good"))
            continue
        if not check_cellularity(complex_).ok:
            failures.append((name, "cellularity-witnesses"))
            continue
        for n in range(-1, complex_.dim + 2):
            iso = comparison_iso(filtration, n)
            if not iso.is_isomorphism():
                failures.append((name, "comparison", n))
    for name, pair in sorted(pairs.items()):
        for n, direct, via_fiber in fiber_comparison_groups(pair):
            if not direct.isomorphic_to(via_fiber):
                failures.append((name, "fiber", n))
    ok = not failures
    assert _verdict(3, ok, "%d complexes, %d pairs, failures: %r"
                    % (len(complexes), len(pairs), failures[:3]))


def test_criterion_4_known_values_two_routes():
    square = CubicalComplex.box([1, 1])
    circle = square.skeleton(1)
    torus = product(circle, circle)
    expected = {
        "circle": (SubcomplexPair.absolute(circle), ["Z", "Z"]),
        "torus": (SubcomplexPair.absolute(torus), ["Z", "Z^2", "Z"]),
        "square_rel": (SubcomplexPair(square, square.skeleton(1)),
                       ["0", "0", "Z"]),
    }
    failures = []
    for name, (pair, groups) in expected.items():
        # Route one: Smith normal form of the relative complex.
        direct = [relative_cohomology(pair, n).describe()
                  for n in range(len(groups))]
        # Route two: the filtration complex (fiber version for pairs).
        if pair.sub.is_empty:
            fc = filtration_complex(skeleton_filtration(pair.total))
        else:
            fc = pair_filtration_complex(
                pair, skeleton_filtration(pair.total),
                skeleton_filtration(pair.sub))
        via_filtration = [cohomology_at(fc, n).describe()
                          for n in range(len(groups))]
        if not (direct == via_filtration == groups):
            failures.append((name, direct, via_filtration, groups))
    ok = not failures
    assert _verdict(4, ok, "failures: %r" % (failures,))


def test_criterion_5_tensor_axioms():
    corpus = builtin_corpus()
    report = suite_axioms(corpus)
    # The stated sign instances must be present, not merely vacuous.
    both_odd = check_ax2(corpus.triples["square_triple"],
                         corpus.pairs["interval_rel"], 1, 1)
    mixed = check_ax2(corpus.triples["interval_triple"],
                      corpus.pairs["interval_rel"], 0, 1)
    nonvacuous = not relative_cohomology(
        corpus.triples["square_triple"].inner_pair(), 1).group.is_trivial
    ok = report.ok and both_odd.ok and mixed.ok and nonvacuous
    assert _verdict(5, ok, "%d axiom checks, both-odd and mixed-parity "
                    "boundary squares verified" % len(report.items))


def test_criterion_6_kunneth_suite():
    corpus = builtin_corpus()
    generated = generate_corpus(11, max_cubes=20, complexes=8)
    pairs = dict(corpus.pairs)
    pairs.update({"g_" + k: v for k, v in generated.pairs.items()})
    certificates = {}
    for name, pair in pairs.items():
        cert = certify_good_pair(pair)
        if isinstance(cert, GoodPairCertificate):
            certificates[name] = cert
    instances = 0
    failures = []
    for (na, ca), (nb, cb) in itertools.product(
            sorted(certificates.items()), repeat=2):
        total = len(ca.pair.total.cubes) * len(cb.pair.total.cubes)
        if total > 200:
            continue
        instances += 1
        report = check_kunneth(ca, cb)
        if not report.ok:
            failures.append((na, nb))
    ok = not failures and instances >= 50
    assert _verdict(6, ok, "%d products checked, failures: %r"
                    % (instances, failures[:3]))


def test_criterion_7_quiver_suite():
    corpus = builtin_corpus()
    pairs = quiver_corpus_pairs(corpus)
    assert set(pairs) == {"pt", "interval_rel", "square_rel", "cube3_rel"}
    pair_maps = {name: pm for name, pm in corpus.pair_maps.items()
                 if pm.source in pairs.values()
                 and pm.target in pairs.values()}
    fragment = build_fragment(pairs, pair_maps, dict(corpus.triples), (0, 3))
    certificates = {name: certify_good_pair(pair)
                    for name, pair in pairs.items()}
    quiver = good_subquiver(fragment, certificates, closure_degree=3)
    rep = represent(quiver)
    report = check_tensor_representation(rep)
    tensor_closed = (("interval_rel", 1), ("square_rel", 2)) in quiver.tensor
    ok = report.ok and tensor_closed
    assert _verdict(7, ok, "%d coherence checks on the degree-3 closure"
                    % len(report.items))


def test_criterion_8_snf_oracle():
    rng = random.Random(2024)
    mismatches = 0
    for _ in range(1000):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 4)
        data = [[rng.randint(-4, 4) for _ in range(cols)]
                for _ in range(rows)]
        if IntMatrix(data).invariant_factors() \
                != oracle_invariant_factors(data):
            mismatches += 1
    ok = mismatches == 0
    assert _verdict(8, ok, "1000 matrices, %d mismatches" % mismatches)


def test_criterion_9_logic_soundness():
    corpus = builtin_corpus()
    triples = list(corpus.triples.values())
    seed = 500
    while True:
        generated = generate_corpus(seed, max_cubes=25, complexes=30)
        triples.extend(generated.triples.values())
        seed += 1
        if len(triples) >= 120:
            break
    instances = 0
    failures = []
    for triple in triples:
        if instances >= 50:
            break
        for n in range(0, triple.total.dim + 1):
            g = reduced_pullback(
                PairMap.inclusion(triple.inner_pair(), triple.wide_pair()),
                n, 2)
            f = reduced_connecting(triple, n, 2)
            orders = [h.order() for h in (g.source, f.source, f.target)]
            if any(o is None or o > 300 for o in orders):
                continue
            (composite_ok, fill_ok), _ = exactness_sequents(g, f)
            exact = is_exact_at(f, g)
            instances += 1
            if (composite_ok and fill_ok) != exact or not exact:
                failures.append((n, composite_ok, fill_ok, exact))
            if instances >= 50:
                break
    # Corrupted negatives: zero comparison on a nonzero group.
    from cubicoh.homalg import FgAbGroup

    z2 = FgAbGroup(1, IntMatrix([[2]]))
    corrupted = model_from_homs({"tri": GroupHom.zero(z2, z2)})
    src, dst = corrupted.signature.symbols["tri"]
    surjectivity = parse_sequent(
        "⊤ ⊢_{y:%s} y = y → (∃ x:%s) tri(x) = y" % (dst, src),
        corrupted.signature)
    negative_false = not evaluate(surjectivity, corrupted)
    z4 = FgAbGroup(1, IntMatrix([[4]]))
    non_surjective = GroupHom(z4, z4, IntMatrix([[2]]))
    (_, fill_ok), _ = exactness_sequents(non_surjective,
                                         GroupHom.zero(z4, z2))
    negative_fill_false = not fill_ok
    ok = instances >= 50 and not failures and negative_false \
        and negative_fill_false
    assert _verdict(9, ok, "%d sequent instances, %d disagreements, "
                    "negatives false: %s"
                    % (instances, len(failures),
                       negative_false and negative_fill_false))
