"""cubicoh: a verification engine for cohomology on finite cubical complexes.

Exact integer cohomology of cubical pairs together with mechanical
checkers for the structural laws it is expected to satisfy: long exact
sequences of triples, excision and Mayer-Vietoris, good pairs and good
filtrations with the degenerate filtration-complex comparison, external
and cup products with their sign laws, the graded tensor quiver
representation on good pairs, and a regular-sequent evaluator over
finite coefficient reductions.
"""

from .homalg import (
    ChainMap,
    CochainComplex,
    CohomologySpace,
    CompositionMismatch,
    FgAbGroup,
    GroupHom,
    IntMatrix,
    NotAChainMap,
    cohomology_at,
    induced_hom_on_cohomology,
    is_exact_at,
    mapping_fiber,
    smith_normal_form,
)
from .cubes import (
    Cover,
    CubicalComplex,
    CubicalMap,
    ElementaryCube,
    NotACover,
    NotACubicalMap,
    NotAPairMap,
    NotASubcomplex,
    NotATriple,
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
from .cohomology import (
    CohomologyValue,
    ExcisionFailed,
    check_les_of_triple,
    coefficient_reduction,
    connecting,
    excision_check,
    excision_map,
    mayer_vietoris_check,
    pullback,
    relative_cohomology,
    relative_complex,
)
from .cellular import (
    ConiveauPage,
    Filtration,
    GoodPairCertificate,
    GoodPairRefusal,
    IncompatibleFiltrations,
    NotARefinement,
    NotGood,
    certify_good_pair,
    check_cellularity,
    comparison_iso,
    coniveau_e1,
    filtration_complex,
    pair_filtration_complex,
    refinement_map,
    skeleton_filtration,
)
from .kunneth import (
    ExternalProduct,
    TensorOfGroups,
    check_ax0_ax1,
    check_ax2,
    check_ax3,
    check_ax4,
    check_kunneth,
    cross_product,
    cup_product,
    tensor_good_pair,
    tensor_group,
)
from .quiver import (
    GradedTensorQuiver,
    NotClosedUnderProduct,
    QuiverFragment,
    QuiverRepresentation,
    build_fragment,
    check_tensor_representation,
    good_subquiver,
    represent,
)
from .logic import (
    FiniteAbGroup,
    FiniteModel,
    RegularSequent,
    SequentSyntaxError,
    Signature,
    SortError,
    UnboundSymbol,
    evaluate,
    excision_sequents,
    parse_sequent,
    strong_kunneth_sequent,
)
from .corpus import Corpus, builtin_corpus, generate_corpus, load_corpus
from .suites import run_suite

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
