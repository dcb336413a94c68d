"""Regular sequents over finite coefficient models.

Grammar (one sequent per line)::

    sequent  ::=  "⊤" "⊢" binder formula [ "→" formula ]
    binder   ::=  "_" var | "_{" var [":" sort] ("," var [":" sort])* "}"
    formula  ::=  conjunct ( "∧" conjunct )*
    conjunct ::=  "(" "∃" var [":" sort] ")" conjunct
               |  "(" formula ")"
               |  term "=" term
    term     ::=  atom ( "+" atom )*
    atom     ::=  "*" | var | symbol "(" term ")"

ASCII fallbacks are accepted: ``T`` for the truth constant, ``|-`` for
the turnstile, ``->`` for implication, ``/\\`` or ``&`` for meet and
``E`` for the existential.  A sequent without an implication asserts
its single formula under the empty antecedent.  Variable sorts come
from a typed binder or are inferred from symbol applications; a
variable whose sort cannot be determined is a sort error, since ``*``
exists in every sort.

Carriers must be finite: only reductions mod m reach this layer, and
``evaluate`` decides a sequent by exhaustive search (meets are
conjunctions, existentials are searches).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .cohomology import (
    cochain_pullback,
    coefficient_reduction,
    reduced_induced_hom,
)
from .cubes import PairMap, SubcomplexPair, pair_product
from .homalg import GroupHom, IntMatrix


class SequentSyntaxError(ValueError):
    """Raised with a position when a sequent fails to parse."""

    def __init__(self, message, position):
        super().__init__("%s (at position %d)" % (message, position))
        self.position = position


class SortError(ValueError):
    """A term is not well-sorted or a variable's sort is undetermined."""


class UnboundSymbol(KeyError):
    """A sequent mentions a symbol or sort the model does not interpret."""


_MISSING = object()


# ---------------------------------------------------------------------------
# Signatures and models


@dataclass(frozen=True)
class Signature:
    """Sort names and unary function symbols with source/target sorts."""

    sorts: frozenset
    symbols: dict   # name -> (source sort, target sort)

    def symbol_sorts(self, name):
        try:
            return self.symbols[name]
        except KeyError:
            raise UnboundSymbol(name)


@dataclass(frozen=True)
class FiniteAbGroup:
    """A finite abelian group of residue tuples mod the given factors."""

    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors",
                           tuple(int(d) for d in self.factors))
        if any(d < 1 for d in self.factors):
            raise ValueError("factors must be positive")

    @property
    def zero(self):
        return (0,) * len(self.factors)

    def order(self):
        n = 1
        for d in self.factors:
            n *= d
        return n

    def normalize(self, element):
        return tuple(x % d for x, d in zip(element, self.factors))

    def add(self, a, b):
        return tuple((x + y) % d for x, y, d in zip(a, b, self.factors))

    def elements(self):
        return itertools.product(*[range(d) for d in self.factors])


class FiniteModel:
    """Finite carriers per sort and concrete total functions per symbol."""

    def __init__(self, signature, carriers, functions):
        self.signature = signature
        self.carriers = dict(carriers)
        self.functions = {}
        for sort in signature.sorts:
            if sort not in self.carriers:
                raise UnboundSymbol(sort)
        for name, (src, dst) in signature.symbols.items():
            if name not in functions:
                raise UnboundSymbol(name)
            if src not in self.carriers or dst not in self.carriers:
                raise UnboundSymbol("sorts of symbol %s" % name)
            self.functions[name] = functions[name]
        for name, fn in self.functions.items():
            src, dst = signature.symbols[name]
            target = self.carriers[dst]
            for element in self.carriers[src].elements():
                value = fn(element)
                if target.normalize(value) != value:
                    raise ValueError("symbol %s is not well typed on %r"
                                     % (name, element))

    def carrier(self, sort):
        try:
            return self.carriers[sort]
        except KeyError:
            raise UnboundSymbol(sort)


def model_from_homs(homs):
    """A model from named GroupHoms between finite presented groups.

    Presentation-equal groups share a sort; every hom becomes a unary
    symbol acting on canonical residue coordinates.
    """
    known = []   # (group, sort name)
    carriers = {}

    def sort_of(group):
        for g, name in known:
            if g.presentation_equal(group):
                return name, g
        if group.free_rank:
            raise ValueError("carriers must be finite")
        name = "s%d" % len(known)
        known.append((group, name))
        carriers[name] = FiniteAbGroup(
            tuple(max(d, 1) for d in group.diagonal))
        return name, group

    symbols = {}
    functions = {}
    for name, hom in sorted(homs.items()):
        src_name, src_group = sort_of(hom.source)
        dst_name, dst_group = sort_of(hom.target)
        symbols[name] = (src_name, dst_name)
        functions[name] = _canonical_function(
            hom, src_group, dst_group, carriers[dst_name])
    signature = Signature(frozenset(carriers), symbols)
    return FiniteModel(signature, carriers, functions)


def _canonical_function(hom, source, target, dst_carrier):
    def fn(element):
        vec = source.from_canonical(element)
        image = hom.apply(vec)
        return dst_carrier.normalize(target.canonical_form(image))
    return fn


# ---------------------------------------------------------------------------
# Terms, formulas, sequents


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Star:
    pass


@dataclass(frozen=True)
class Apply:
    symbol: str
    argument: object


@dataclass(frozen=True)
class Add:
    left: object
    right: object


@dataclass(frozen=True)
class Truth:
    pass


@dataclass(frozen=True)
class Eq:
    left: object
    right: object


@dataclass(frozen=True)
class And:
    left: object
    right: object


@dataclass
class Exists:
    var: str
    sort: object
    body: object


@dataclass(frozen=True)
class RegularSequent:
    context: tuple            # ((var, sort), ...)
    antecedent: object
    consequent: object
    text: str = field(default="", compare=False)

    def __repr__(self):
        ctx = ", ".join("%s:%s" % vs for vs in self.context)
        return "<Sequent [%s] %r -> %r>" % (ctx, self.antecedent,
                                            self.consequent)


# ---------------------------------------------------------------------------
# Parsing


def _tokenize(text):
    tokens = []
    i = 0
    n = len(text)
    single = {"(": "LPAREN", ")": "RPAREN", "{": "LBRACE", "}": "RBRACE",
              ",": "COMMA", ":": "COLON", "=": "EQUALS", "*": "STAR",
              "+": "PLUS", "_": "UNDERSCORE", "⊤": "TOP", "⊢": "TURNSTILE",
              "→": "ARROW", "∧": "AND", "∃": "EXISTS", "&": "AND"}
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if text.startswith("|-", i):
            tokens.append(("TURNSTILE", "|-", i))
            i += 2
            continue
        if text.startswith("->", i):
            tokens.append(("ARROW", "->", i))
            i += 2
            continue
        if text.startswith("/\\", i):
            tokens.append(("AND", "/\\", i))
            i += 2
            continue
        if ch in single:
            tokens.append((single[ch], ch, i))
            i += 1
            continue
        if ch.isalnum():
            j = i
            while j < n and (text[j].isalnum() or text[j] in "_'"):
                j += 1
            tokens.append(("NAME", text[i:j], i))
            i = j
            continue
        raise SequentSyntaxError("unexpected character %r" % ch, i)
    tokens.append(("END", "", n))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            raise SequentSyntaxError("expected %s, found %r"
                                     % (kind, tok[1] or "end of input"),
                                     tok[2])
        self.pos += 1
        return tok

    def accept(self, kind):
        if self.peek()[0] == kind:
            return self.next()
        return None

    def at_name(self, value):
        tok = self.peek()
        return tok[0] == "NAME" and tok[1] == value

    def sequent(self):
        if self.accept("TOP") is None:
            if self.at_name("T"):
                self.next()
            else:
                raise SequentSyntaxError("sequent must start with the truth "
                                         "constant", self.peek()[2])
        self.next("TURNSTILE")
        context = self.binder()
        first = self.formula()
        if self.accept("ARROW"):
            antecedent, consequent = first, self.formula()
        else:
            antecedent, consequent = Truth(), first
        self.next("END")
        return context, antecedent, consequent

    def binder(self):
        self.next("UNDERSCORE")
        entries = []
        if self.accept("LBRACE"):
            while True:
                name = self.next("NAME")[1]
                sort = None
                if self.accept("COLON"):
                    sort = self.next("NAME")[1]
                entries.append((name, sort))
                if not self.accept("COMMA"):
                    break
            self.next("RBRACE")
        else:
            entries.append((self.next("NAME")[1], None))
        return entries

    def formula(self):
        left = self.conjunct()
        while self.accept("AND"):
            left = And(left, self.conjunct())
        return left

    def conjunct(self):
        tok = self.peek()
        if tok[0] == "LPAREN":
            save = self.pos
            self.next("LPAREN")
            if self.peek()[0] == "EXISTS" or self.at_name("E"):
                self.next()
                var = self.next("NAME")[1]
                sort = None
                if self.accept("COLON"):
                    sort = self.next("NAME")[1]
                self.next("RPAREN")
                return Exists(var, sort, self.conjunct())
            self.pos = save
            self.next("LPAREN")
            inner = self.formula()
            self.next("RPAREN")
            return inner
        return self.equation()

    def equation(self):
        left = self.term()
        self.next("EQUALS")
        return Eq(left, self.term())

    def term(self):
        left = self.atom()
        while self.accept("PLUS"):
            left = Add(left, self.atom())
        return left

    def atom(self):
        tok = self.peek()
        if tok[0] == "STAR":
            self.next()
            return Star()
        if tok[0] == "NAME":
            self.next()
            if self.accept("LPAREN"):
                arg = self.term()
                self.next("RPAREN")
                return Apply(tok[1], arg)
            return Var(tok[1])
        raise SequentSyntaxError("expected a term", tok[2])


def parse_sequent(text, signature):
    """Parse and sort-check one sequent against a signature.

    Sort inference runs two passes so equations can inform variables in
    either order; any variable still undetermined afterwards raises
    SortError.
    """
    context_entries, antecedent, consequent = _Parser(text).sequent()

    sorts = {}
    for name, sort in context_entries:
        if sort is not None and sort not in signature.sorts:
            raise SortError("unknown sort %r" % sort)
        sorts[name] = sort

    def unify(term, expected):
        if isinstance(term, Star):
            return expected
        if isinstance(term, Var):
            if term.name not in sorts:
                raise SortError("variable %r is not in the context"
                                % term.name)
            known = sorts[term.name]
            if known is None and expected is not None:
                sorts[term.name] = expected
                return expected
            if known is not None and expected is not None \
                    and known != expected:
                raise SortError("variable %r used at sorts %s and %s"
                                % (term.name, known, expected))
            return known if known is not None else expected
        if isinstance(term, Apply):
            src, dst = signature.symbol_sorts(term.symbol)
            if expected is not None and dst != expected:
                raise SortError("symbol %s produces sort %s, expected %s"
                                % (term.symbol, dst, expected))
            unify(term.argument, src)
            return dst
        if isinstance(term, Add):
            got = unify(term.left, expected)
            got2 = unify(term.right, got if got is not None else expected)
            if got2 is not None and got is None:
                unify(term.left, got2)
            return got2 if got2 is not None else got
        raise AssertionError("unknown term %r" % (term,))

    def visit(formula, final):
        if isinstance(formula, Truth):
            return
        if isinstance(formula, Eq):
            got = unify(formula.left, None)
            got = unify(formula.right, got)
            if got is not None:
                unify(formula.left, got)
            return
        if isinstance(formula, And):
            visit(formula.left, final)
            visit(formula.right, final)
            return
        if isinstance(formula, Exists):
            if formula.sort is not None \
                    and formula.sort not in signature.sorts:
                raise SortError("unknown sort %r" % formula.sort)
            outer = sorts.get(formula.var, _MISSING)
            sorts[formula.var] = formula.sort
            visit(formula.body, final)
            inferred = sorts[formula.var]
            if inferred is not None:
                formula.sort = inferred
            elif final:
                raise SortError("sort of bound variable %r is undetermined"
                                % formula.var)
            if outer is _MISSING:
                del sorts[formula.var]
            else:
                sorts[formula.var] = outer
            return
        raise AssertionError("unknown formula %r" % (formula,))

    for final in (False, True):
        visit(antecedent, final)
        visit(consequent, final)
    context = []
    for name, _ in context_entries:
        if sorts[name] is None:
            raise SortError("sort of context variable %r is undetermined"
                            % name)
        context.append((name, sorts[name]))
    return RegularSequent(tuple(context), antecedent, consequent, text)


# ---------------------------------------------------------------------------
# Evaluation


def _eval_term(term, model, env, sort):
    if isinstance(term, Star):
        return model.carrier(sort).zero
    if isinstance(term, Var):
        return env[term.name][1]
    if isinstance(term, Apply):
        src, _ = model.signature.symbol_sorts(term.symbol)
        return model.functions[term.symbol](
            _eval_term(term.argument, model, env, src))
    if isinstance(term, Add):
        left = _eval_term(term.left, model, env, sort)
        right = _eval_term(term.right, model, env, sort)
        return model.carrier(sort).add(left, right)
    raise AssertionError


def _sort_of_term(term, model, env):
    if isinstance(term, Var):
        return env[term.name][0]
    if isinstance(term, Apply):
        return model.signature.symbol_sorts(term.symbol)[1]
    if isinstance(term, Add):
        left = _sort_of_term(term.left, model, env)
        return left if left is not None \
            else _sort_of_term(term.right, model, env)
    return None


def _eval_formula(formula, model, env):
    if isinstance(formula, Truth):
        return True
    if isinstance(formula, Eq):
        sort = _sort_of_term(formula.left, model, env)
        if sort is None:
            sort = _sort_of_term(formula.right, model, env)
        if sort is None:
            raise SortError("equation between two constants has no sort")
        return _eval_term(formula.left, model, env, sort) \
            == _eval_term(formula.right, model, env, sort)
    if isinstance(formula, And):
        return _eval_formula(formula.left, model, env) \
            and _eval_formula(formula.right, model, env)
    if isinstance(formula, Exists):
        saved = env.get(formula.var, _MISSING)
        found = False
        for value in model.carrier(formula.sort).elements():
            env[formula.var] = (formula.sort, value)
            if _eval_formula(formula.body, model, env):
                found = True
                break
        if saved is _MISSING:
            env.pop(formula.var, None)
        else:
            env[formula.var] = saved
        return found
    raise AssertionError


def evaluate(sequent, model):
    """Truth of the sequent in the model, by exhaustive search."""
    for _, sort in sequent.context:
        model.carrier(sort)
    names = [name for name, _ in sequent.context]
    sorts = [sort for _, sort in sequent.context]
    carriers = [model.carrier(sort).elements() for sort in sorts]
    for assignment in itertools.product(*carriers):
        env = {name: (sort, value)
               for name, sort, value in zip(names, sorts, assignment)}
        if _eval_formula(sequent.antecedent, model, env):
            if not _eval_formula(sequent.consequent, model, env):
                return False
    return True


# ---------------------------------------------------------------------------
# The stock sequents


EXACTNESS_COMPOSITE = "⊤ ⊢_{y:%s} f(g(y)) = *"
EXACTNESS_FILL = "⊤ ⊢_{x:%s} f(x) = * → (∃ y:%s) g(y) = x"
EXCISION_INJECTIVE = "⊤ ⊢_{x:%s} tri(x) = * → x = *"
EXCISION_SURJECTIVE = "⊤ ⊢_{y:%s} y = y → (∃ x:%s) tri(x) = y"


def exactness_sequents(g_hom, f_hom):
    """Evaluate the two exactness sequents for finite homs g then f.

    Returns ((composite vanishes, kernels are filled), model); the
    model binds the symbols g and f.
    """
    model = model_from_homs({"g": g_hom, "f": f_hom})
    sort_b = model.signature.symbols["f"][0]
    sort_a = model.signature.symbols["g"][0]
    composite = parse_sequent(EXACTNESS_COMPOSITE % sort_a, model.signature)
    fill = parse_sequent(EXACTNESS_FILL % (sort_b, sort_a), model.signature)
    return (evaluate(composite, model), evaluate(fill, model)), model


def _require_small(hom, bound):
    for group in (hom.source, hom.target):
        order = group.order()
        if order is None or order > bound:
            raise ValueError("carrier too large for exhaustive evaluation")


def excision_sequents(cover, n, modulus, carrier_bound=4096):
    """The injectivity and surjectivity excision sequents mod m.

    Builds the mod-m model of the comparison map for the cover and
    decides both sequents by finite search; callers cross-check the
    verdicts against the matrix-level isomorphism test.
    """
    overlap = cover.overlap()
    pm = PairMap.inclusion(SubcomplexPair(cover.left, overlap),
                           SubcomplexPair(cover.space, cover.right))
    hom = reduced_induced_hom(cochain_pullback(pm), n, modulus)
    _require_small(hom, carrier_bound)
    model = model_from_homs({"tri": hom})
    src_sort, dst_sort = model.signature.symbols["tri"]
    injective = parse_sequent(EXCISION_INJECTIVE % src_sort, model.signature)
    surjective = parse_sequent(EXCISION_SURJECTIVE % (dst_sort, src_sort),
                               model.signature)
    return evaluate(injective, model), evaluate(surjective, model)


def reduced_cross_component(p, q, i, j, modulus):
    """The mod-m external product H^i(p) (x) H^j(q) -> H^(i+j)(p x q)."""
    from .kunneth import cross_cochain, tensor_group

    prod = pair_product(p, q)
    target_red = coefficient_reduction(prod, i + j, modulus)
    red_p = coefficient_reduction(p, i, modulus)
    red_q = coefficient_reduction(q, j, modulus)
    tensor = tensor_group(red_p.group, red_q.group)
    cols = []
    for a in range(red_p.group.generators):
        alpha = red_p.generators.column(a)
        for b in range(red_q.group.generators):
            beta = red_q.generators.column(b)
            gamma = cross_cochain(p, q, i, j, alpha, beta)
            cols.append(target_red.class_of(gamma))
    matrix = IntMatrix.from_columns(cols, rows=target_red.group.generators)
    return GroupHom(tensor.group, target_red.group, matrix)


def strong_kunneth_sequent(p, q, n, modulus, carrier_bound=4096):
    """Surjectivity of the summed comparison in degree n, mod m.

    Interprets every component of the comparison on the mod-m
    reductions and evaluates the existential surjectivity sequent by
    search.  Callers cross-check against the matrix-level cokernel.
    """
    homs = {"k%d" % i: reduced_cross_component(p, q, i, n - i, modulus)
            for i in range(0, n + 1)}
    for hom in homs.values():
        _require_small(hom, carrier_bound)
    model = model_from_homs(homs)
    target_sort = model.signature.symbols["k0"][1]
    binders = []
    summands = []
    for i in range(0, n + 1):
        sort_i = model.signature.symbols["k%d" % i][0]
        binders.append("(∃ x%d:%s)" % (i, sort_i))
        summands.append("k%d(x%d)" % (i, i))
    text = "⊤ ⊢_{y:%s} y = y → %s %s = y" % (
        target_sort, " ".join(binders), " + ".join(summands))
    sequent = parse_sequent(text, model.signature)
    return evaluate(sequent, model)
