"""Suite runners aggregating the per-module checkers over a corpus."""

from __future__ import annotations

from .cellular import (
    GoodPairCertificate,
    certify_good_pair,
    check_cellularity,
    comparison_iso,
    comparison_naturality_check,
    filtration_complex,
    image_filtration,
    is_good_filtration,
    skeleton_filtration,
)
from .cohomology import (
    check_les_of_triple,
    cochain_pullback,
    excision_check,
    fiber_comparison_groups,
    mayer_vietoris_check,
    reduced_induced_hom,
    relative_cohomology,
)
from .cubes import PairMap, SubcomplexPair
from .homalg import cohomology_at
from .kunneth import (
    check_ax0_ax1,
    check_ax2,
    check_ax3,
    check_ax4,
    check_kunneth,
)
from .logic import (
    exactness_sequents,
    excision_sequents,
    parse_sequent,
)
from .quiver import build_fragment, check_tensor_representation, \
    good_subquiver, represent
from .reporting import CheckReport

SUITE_NAMES = ("les", "excision", "mv", "cellularity", "axioms", "kunneth",
               "quiver", "logic", "all")


def run_suite(name, corpus, window=None, modulus=2):
    if name == "all":
        report = CheckReport("all")
        for sub in SUITE_NAMES[:-1]:
            report.extend(run_suite(sub, corpus, window, modulus),
                          prefix=sub + "/")
        return report
    runner = {
        "les": suite_les,
        "excision": suite_excision,
        "mv": suite_mv,
        "cellularity": suite_cellularity,
        "axioms": suite_axioms,
        "kunneth": suite_kunneth,
        "quiver": suite_quiver,
        "logic": suite_logic,
    }.get(name)
    if runner is None:
        raise ValueError("unknown suite %r" % name)
    if name in ("excision", "logic"):
        return runner(corpus, window=window, modulus=modulus)
    return runner(corpus, window=window)


def suite_les(corpus, window=None):
    report = CheckReport("les")
    for name, triple in sorted(corpus.triples.items()):
        sub = check_les_of_triple(triple, window)
        report.extend(sub, prefix="%s/" % name)
    return report


def suite_excision(corpus, window=None, modulus=2):
    report = CheckReport("excision")
    for name, cover in sorted(corpus.covers.items()):
        sub = excision_check(cover, window)
        report.extend(sub, prefix="%s/" % name)
        degrees = window if window is not None \
            else range(0, cover.space.dim + 1)
        for n in degrees:
            for m in (modulus, 3) if modulus == 2 else (modulus,):
                try:
                    inj, surj = excision_sequents(cover, n, m)
                except ValueError:
                    report.add("%s/sequents/deg%+d/mod%d/skipped"
                               % (name, n, m), True, skipped=True)
                    continue
                hom = _reduced_excision_hom(cover, n, m)
                report.add("%s/sequents/deg%+d/mod%d" % (name, n, m),
                           inj == hom.is_injective()
                           and surj == hom.is_surjective()
                           and inj and surj,
                           sequent_verdicts=[inj, surj])
    return report


def _reduced_excision_hom(cover, n, m):
    overlap = cover.overlap()
    pm = PairMap.inclusion(SubcomplexPair(cover.left, overlap),
                           SubcomplexPair(cover.space, cover.right))
    return reduced_induced_hom(cochain_pullback(pm), n, m)


def suite_mv(corpus, window=None):
    report = CheckReport("mv")
    for name, cover in sorted(corpus.covers.items()):
        sub = mayer_vietoris_check(cover, window)
        report.extend(sub, prefix="%s/" % name)
    return report


def suite_cellularity(corpus, window=None):
    report = CheckReport("cellularity")
    for name, complex_ in sorted(corpus.complexes.items()):
        candidates = [f for f in corpus.filtrations.values()
                      if f.space == complex_]
        maps = [m for m in corpus.maps.values() if m.source == complex_]
        sub = check_cellularity(complex_, candidates, maps)
        report.extend(sub, prefix="%s/" % name)
        filtration = skeleton_filtration(complex_)
        if not is_good_filtration(filtration):
            report.add("%s/skeleton" % name, False)
            continue
        fc = filtration_complex(filtration)
        degrees = window if window is not None \
            else range(0, complex_.dim + 1)
        for n in degrees:
            iso = comparison_iso(filtration, n)
            report.add("%s/comparison/deg%+d" % (name, n),
                       iso.is_isomorphism(),
                       group=iso.target.describe())
            direct = relative_cohomology(
                SubcomplexPair.absolute(complex_), n).group
            report.add("%s/two-routes/deg%+d" % (name, n),
                       cohomology_at(fc, n).isomorphic_to(direct),
                       invariants=list(direct.invariant_factors))
    for name, pair in sorted(corpus.pairs.items()):
        for n, direct, via_fiber in fiber_comparison_groups(pair):
            report.add("%s/fiber/deg%+d" % (name, n),
                       direct.isomorphic_to(via_fiber),
                       direct=direct.describe(),
                       fiber=via_fiber.describe())
    for name, f in sorted(corpus.maps.items()):
        src_filtration = skeleton_filtration(f.source)
        if not is_good_filtration(src_filtration):
            continue
        candidate = image_filtration(f, src_filtration)
        if not is_good_filtration(candidate):
            report.add("naturality/%s" % name, False,
                       reason="no good image filtration")
            continue
        sub = comparison_naturality_check(
            f, src_filtration, candidate, range(0, f.source.dim + 1))
        report.extend(sub, prefix="naturality/%s/" % name)
    return report


def _good_pairs_with_degrees(corpus):
    out = {}
    for name, pair in corpus.pairs.items():
        cert = certify_good_pair(pair)
        if isinstance(cert, GoodPairCertificate):
            out[name] = (pair, cert)
    return out


def suite_axioms(corpus, window=None):
    report = CheckReport("axioms")
    good = _good_pairs_with_degrees(corpus)
    small = {name: (pair, cert.degree)
             for name, (pair, cert) in good.items()
             if len(pair.total.cubes) <= 30}
    report.extend(check_ax0_ax1(small, dict(corpus.pair_maps)),
                  prefix="ax0-ax1/")
    report.extend(check_ax4({name: (pair, degree)
                             for name, (pair, degree) in small.items()}),
                  prefix="ax4/")
    for tname, triple in sorted(corpus.triples.items()):
        for pname, (pair, cert) in sorted(good.items()):
            if len(triple.total.cubes) * len(pair.total.cubes) > 120:
                continue
            inner = triple.inner_pair()
            degrees = {0}
            for n in range(0, inner.total.dim + 1):
                if not relative_cohomology(inner, n).group.is_trivial:
                    degrees.add(n)
            for n in sorted(degrees):
                report.extend(check_ax2(triple, pair, n, cert.degree),
                              prefix="ax2/%s*%s/" % (tname, pname))
                report.extend(check_ax3(pair, triple, cert.degree, n),
                              prefix="ax3/%s*%s/" % (tname, pname))
    return report


def suite_kunneth(corpus, window=None, max_total_cubes=200):
    report = CheckReport("kunneth")
    good = _good_pairs_with_degrees(corpus)
    for pname, (p, cert_p) in sorted(good.items()):
        for qname, (q, cert_q) in sorted(good.items()):
            if len(p.total.cubes) * len(q.total.cubes) > max_total_cubes:
                continue
            sub = check_kunneth(cert_p, cert_q)
            report.extend(sub, prefix="%s*%s/" % (pname, qname))
    return report


def quiver_corpus_pairs(corpus):
    """The degree-3 tensor-closed core: unit and interval powers."""
    names = ("pt", "interval_rel", "square_rel", "cube3_rel")
    return {name: corpus.pairs[name] for name in names
            if name in corpus.pairs}


def suite_quiver(corpus, window=None):
    report = CheckReport("quiver")
    pairs = quiver_corpus_pairs(corpus)
    if len(pairs) < 4:
        report.add("corpus", False, reason="tensor-closed core missing")
        return report
    pair_maps = {name: pm for name, pm in corpus.pair_maps.items()
                 if pm.source in pairs.values()
                 and pm.target in pairs.values()}
    triples = {name: t for name, t in corpus.triples.items()}
    fragment = build_fragment(pairs, pair_maps, triples, (0, 3))
    certificates = {name: certify_good_pair(pair)
                    for name, pair in pairs.items()}
    quiver = good_subquiver(fragment, certificates, closure_degree=3)
    rep = represent(quiver)
    report.extend(check_tensor_representation(rep), prefix="rep/")
    return report


def suite_logic(corpus, window=None, modulus=2):
    report = CheckReport("logic")
    for name, triple in sorted(corpus.triples.items()):
        degrees = window if window is not None \
            else range(0, triple.total.dim + 1)
        for n in degrees:
            verdicts = _logic_triple_instance(triple, n, modulus)
            if verdicts is None:
                continue
            report.add("%s/deg%+d/mod%d" % (name, n, modulus), verdicts[0],
                       agreement=verdicts[1])
    for text in corpus.sequents:
        report.add("parse/%s" % text[:40], _parses(text), sequent=text)
    return report


def _parses(text):
    from .logic import Signature, SortError, SequentSyntaxError

    signature = Signature(frozenset({"s0", "s1"}),
                          {"f": ("s0", "s1"), "g": ("s0", "s0")})
    try:
        parse_sequent(text, signature)
        return True
    except (SortError, SequentSyntaxError):
        return False


def _logic_triple_instance(triple, n, modulus):
    """Sequent verdicts vs lattice-level exactness at one LES junction."""
    from .cohomology import (
        reduced_connecting,
        reduced_pullback,
    )
    from .homalg import is_exact_at

    g = reduced_pullback(
        PairMap.inclusion(triple.inner_pair(), triple.wide_pair()), n,
        modulus)
    f = reduced_connecting(triple, n, modulus)
    for group in (g.source, f.source, f.target):
        order = group.order()
        if order is None or order > 4096:
            return None
    (composite_ok, fill_ok), _ = exactness_sequents(g, f)
    exact = is_exact_at(f, g)
    return (composite_ok and fill_ok) == exact and exact, \
        [composite_ok, fill_ok, exact]


__all__ = [
    "SUITE_NAMES",
    "run_suite",
    "suite_les",
    "suite_excision",
    "suite_mv",
    "suite_cellularity",
    "suite_axioms",
    "suite_kunneth",
    "suite_quiver",
    "suite_logic",
    "quiver_corpus_pairs",
]
