"""Exact integer linear algebra underlying the whole verification engine.

Everything works over Z with Python's arbitrary-precision integers:
Smith normal form with unimodular transforms, finitely generated
abelian groups presented as cokernels of integer relation matrices,
homomorphisms between such presentations, exactness tests, and bounded
cochain complexes of free Z-modules with their cohomology.

All values are immutable after construction and every operation is a
pure function, so everything here is safe to share between threads.
Internal caches (Smith forms, kernel bases, cohomology spaces) only
memoize results that are deterministic functions of the immutable data.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass


class NotAChainMap(ValueError):
    """A degreewise map failed to commute with the differentials."""


class CompositionMismatch(ValueError):
    """Homomorphisms were combined along incompatible presentations."""


# ---------------------------------------------------------------------------
# Integer matrices


def _vec(entries):
    return tuple(int(x) for x in entries)


class IntMatrix:
    """An immutable integer matrix stored as a tuple of row tuples.

    >>> m = IntMatrix([[2, 4], [6, 8]])
    >>> m.invariant_factors()
    (2, 4)
    """

    __slots__ = ("rows", "cols", "data", "_smith", "_kernel")

    def __init__(self, data, cols=None):
        rows = tuple(tuple(int(x) for x in row) for row in data)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged matrix data")
        else:
            width = 0 if cols is None else cols
        self.rows = len(rows)
        self.cols = width
        self.data = rows
        self._smith = None
        self._kernel = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, rows, cols):
        return cls(tuple((0,) * cols for _ in range(rows)), cols=cols)

    @classmethod
    def identity(cls, n):
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n))
                         for i in range(n)), cols=n)

    @classmethod
    def diagonal(cls, entries, rows=None, cols=None):
        entries = _vec(entries)
        n = len(entries)
        rows = n if rows is None else rows
        cols = n if cols is None else cols
        return cls(tuple(tuple(entries[i] if i == j and i < n else 0
                               for j in range(cols)) for i in range(rows)),
                   cols=cols)

    @classmethod
    def from_columns(cls, columns, rows=None):
        columns = [_vec(c) for c in columns]
        if columns:
            height = len(columns[0])
        else:
            height = 0 if rows is None else rows
        return cls(tuple(tuple(c[i] for c in columns) for i in range(height)),
                   cols=len(columns))

    # -- basic access ------------------------------------------------------

    def entry(self, i, j):
        return self.data[i][j]

    def column(self, j):
        return tuple(row[j] for row in self.data)

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def transpose(self):
        return IntMatrix(tuple(tuple(row[i] for row in self.data)
                               for i in range(self.cols)),
                         cols=self.rows)

    def is_zero(self):
        return all(x == 0 for row in self.data for x in row)

    def __eq__(self, other):
        return (isinstance(other, IntMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.data == other.data)

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __repr__(self):
        return "IntMatrix(%r)" % (list(map(list, self.data)),)

    # -- arithmetic --------------------------------------------------------

    def __neg__(self):
        return IntMatrix(tuple(tuple(-x for x in row) for row in self.data),
                         cols=self.cols)

    def __add__(self, other):
        self._require_same_shape(other)
        return IntMatrix(tuple(tuple(a + b for a, b in zip(r, s))
                               for r, s in zip(self.data, other.data)),
                         cols=self.cols)

    def __sub__(self, other):
        self._require_same_shape(other)
        return IntMatrix(tuple(tuple(a - b for a, b in zip(r, s))
                               for r, s in zip(self.data, other.data)),
                         cols=self.cols)

    def _require_same_shape(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch: %dx%d vs %dx%d"
                             % (self.rows, self.cols, other.rows, other.cols))

    def scale(self, k):
        k = int(k)
        return IntMatrix(tuple(tuple(k * x for x in row) for row in self.data),
                         cols=self.cols)

    def __mul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise ValueError("cannot multiply %dx%d by %dx%d"
                                 % (self.rows, self.cols,
                                    other.rows, other.cols))
            cols_of_other = [tuple(row[j] for row in other.data)
                             for j in range(other.cols)]
            out = tuple(
                tuple(sum(a * b for a, b in zip(row, col))
                      for col in cols_of_other)
                for row in self.data)
            return IntMatrix(out, cols=other.cols)
        return NotImplemented

    def apply(self, vector):
        vector = _vec(vector)
        if len(vector) != self.cols:
            raise ValueError("vector length %d does not match %d columns"
                             % (len(vector), self.cols))
        return tuple(sum(a * b for a, b in zip(row, vector))
                     for row in self.data)

    @staticmethod
    def hstack(*mats):
        mats = [m for m in mats]
        rows = mats[0].rows
        if any(m.rows != rows for m in mats):
            raise ValueError("hstack: row counts differ")
        data = tuple(tuple(itertools.chain.from_iterable(m.data[i] for m in mats))
                     for i in range(rows))
        return IntMatrix(data, cols=sum(m.cols for m in mats))

    @staticmethod
    def vstack(*mats):
        cols = mats[0].cols
        if any(m.cols != cols for m in mats):
            raise ValueError("vstack: column counts differ")
        data = tuple(itertools.chain.from_iterable(m.data for m in mats))
        return IntMatrix(data, cols=cols)

    @staticmethod
    def block_diagonal(*mats):
        rows = sum(m.rows for m in mats)
        cols = sum(m.cols for m in mats)
        out = [[0] * cols for _ in range(rows)]
        r0 = c0 = 0
        for m in mats:
            for i in range(m.rows):
                row = m.data[i]
                for j in range(m.cols):
                    out[r0 + i][c0 + j] = row[j]
            r0 += m.rows
            c0 += m.cols
        return IntMatrix(out, cols=cols)

    def kron(self, other):
        """Kronecker product, row-major pairing (i, j) -> i * other.rows + j."""
        out = []
        for row_a in self.data:
            for row_b in other.data:
                out.append(tuple(a * b for a in row_a for b in row_b))
        return IntMatrix(tuple(out), cols=self.cols * other.cols)

    # -- Smith normal form and lattice computations -------------------------

    def smith(self):
        """Cached Smith decomposition (S, U, V) with U * self * V = S."""
        if self._smith is None:
            self._smith = _smith_decomposition(self)
        return self._smith

    def invariant_factors(self):
        """Nonzero diagonal entries of the Smith form, in divisibility order."""
        return tuple(d for d in self.smith().diagonal if d != 0)

    def kernel_basis(self):
        """Matrix whose columns form a basis of ker(self) over Z."""
        if self._kernel is None:
            sm = self.smith()
            diag = sm.diagonal
            cols = []
            for j in range(self.cols):
                d = diag[j] if j < len(diag) else 0
                if d == 0:
                    cols.append(sm.V.column(j))
            self._kernel = IntMatrix.from_columns(cols, rows=self.cols)
        return self._kernel

    def solve(self, target):
        """An integer solution x of self * x = target, or None."""
        target = _vec(target)
        if len(target) != self.rows:
            raise ValueError("target length does not match row count")
        sm = self.smith()
        y = sm.U.apply(target)
        diag = sm.diagonal
        z = [0] * self.cols
        for i in range(self.rows):
            d = diag[i] if i < len(diag) else 0
            if d == 0:
                if y[i] != 0:
                    return None
            else:
                if i >= self.cols or y[i] % d != 0:
                    return None
                z[i] = y[i] // d
        return sm.V.apply(z)


@dataclass(frozen=True)
class SmithDecomposition:
    S: IntMatrix
    U: IntMatrix
    V: IntMatrix
    diagonal: tuple


def _smith_decomposition(m):
    r, c = m.rows, m.cols
    a = [list(row) for row in m.data]
    u = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    v = [[1 if i == j else 0 for j in range(c)] for i in range(c)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):
        # row_dst += k * row_src
        ad, asrc = a[dst], a[src]
        for j in range(c):
            ad[j] += k * asrc[j]
        ud, usrc = u[dst], u[src]
        for j in range(r):
            ud[j] += k * usrc[j]

    def add_col(dst, src, k):
        for row in a:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    n = min(r, c)
    t = 0
    while t < n:
        # Minimal-absolute-value pivot, ties broken by lowest (row, col).
        pivot = None
        best = None
        for i in range(t, r):
            row = a[i]
            for j in range(t, c):
                x = row[j]
                if x != 0:
                    ax = abs(x)
                    if best is None or ax < best:
                        best = ax
                        pivot = (i, j)
                        if ax == 1:
                            break
            if best == 1:
                break
        if pivot is None:
            break
        if pivot[0] != t:
            swap_rows(t, pivot[0])
        if pivot[1] != t:
            swap_cols(t, pivot[1])
        if a[t][t] < 0:
            negate_row(t)

        while True:
            # Clear column t.
            restart = False
            for i in range(t + 1, r):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    if q != 0:
                        add_row(i, t, -q)
                    if a[i][t] != 0:
                        # Positive remainder smaller than pivot: promote it.
                        swap_rows(t, i)
                        restart = True
                        break
            if restart:
                continue
            # Clear row t.
            for j in range(t + 1, c):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    if q != 0:
                        add_col(j, t, -q)
                    if a[t][j] != 0:
                        swap_cols(t, j)
                        restart = True
                        break
            if restart:
                continue
            # Enforce divisibility of the remaining block by the pivot.
            fixed = True
            p = a[t][t]
            for i in range(t + 1, r):
                row = a[i]
                for j in range(t + 1, c):
                    if row[j] % p != 0:
                        add_row(t, i, 1)
                        fixed = False
                        break
                if not fixed:
                    break
            if fixed:
                break
        t += 1

    diagonal = tuple(a[i][i] for i in range(n))
    return SmithDecomposition(
        S=IntMatrix(a, cols=c),
        U=IntMatrix(u, cols=r),
        V=IntMatrix(v, cols=c),
        diagonal=diagonal,
    )


def smith_normal_form(m):
    """Return (S, U, V) with U * m * V = S in Smith normal form.

    S is diagonal with nonnegative entries d1 | d2 | ... and U, V are
    unimodular.  Total: every integer matrix has a Smith form.
    """
    sm = m.smith()
    return sm.S, sm.U, sm.V


def unimodular_inverse(m):
    """Exact inverse of a unimodular square matrix."""
    if m.rows != m.cols:
        raise ValueError("only square matrices can be unimodular")
    sm = m.smith()
    if any(d != 1 for d in sm.diagonal):
        raise ValueError("matrix is not unimodular")
    # U m V = I  =>  m^-1 = V U.
    return sm.V * sm.U


def in_column_span(generators, vector):
    """True iff the vector lies in the lattice spanned by the columns."""
    return generators.solve(vector) is not None


# ---------------------------------------------------------------------------
# Finitely generated abelian groups


class FgAbGroup:
    """Z^g modulo the column span of an integer relation matrix.

    Elements are coset representatives given as length-g integer tuples
    in generator coordinates.  Isomorphism type is read off the Smith
    form of the relations.

    >>> FgAbGroup(2, IntMatrix([[2, 4], [6, 8]])).describe()
    'Z/2 + Z/4'
    >>> FgAbGroup.free(2).describe()
    'Z^2'
    """

    __slots__ = ("generators", "relations", "_decomp", "_uinv")

    def __init__(self, generators, relations=None):
        generators = int(generators)
        if relations is None:
            relations = IntMatrix.zero(generators, 0)
        if relations.rows != generators:
            raise ValueError("relation matrix must have one row per generator")
        self.generators = generators
        self.relations = relations
        self._decomp = None
        self._uinv = None

    @classmethod
    def free(cls, rank):
        return cls(rank)

    @classmethod
    def trivial(cls):
        return cls(0)

    # -- structure ----------------------------------------------------------

    def _decomposition(self):
        if self._decomp is None:
            sm = self.relations.smith()
            diag = list(sm.diagonal) + [0] * (self.generators - len(sm.diagonal))
            self._decomp = (sm.U, tuple(diag[: self.generators]))
        return self._decomp

    @property
    def diagonal(self):
        """Per-generator cyclic orders after diagonalisation (0 means Z)."""
        return self._decomposition()[1]

    @property
    def free_rank(self):
        return sum(1 for d in self.diagonal if d == 0)

    @property
    def torsion(self):
        return tuple(d for d in self.diagonal if d > 1)

    @property
    def invariant_factors(self):
        return self.torsion + (0,) * self.free_rank

    def order(self):
        """Number of elements, or None when infinite."""
        if self.free_rank:
            return None
        n = 1
        for d in self.diagonal:
            n *= max(d, 1)
        return n

    @property
    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion

    @property
    def is_free(self):
        return not self.torsion

    def isomorphic_to(self, other):
        return (self.free_rank == other.free_rank
                and self.torsion == other.torsion)

    def describe(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append("Z^%d" % self.free_rank)
        parts.extend("Z/%d" % d for d in self.torsion)
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return "<FgAbGroup %s on %d generators>" % (self.describe(),
                                                    self.generators)

    def presentation_equal(self, other):
        return (self.generators == other.generators
                and self.relations == other.relations)

    # -- elements ------------------------------------------------------------

    def canonical_form(self, vector):
        """Canonical residue tuple of an element; equal iff cosets equal."""
        u, diag = self._decomposition()
        w = u.apply(vector)
        return tuple(w[i] % diag[i] if diag[i] > 0 else w[i]
                     for i in range(self.generators))

    def is_zero_element(self, vector):
        return all(x == 0 for x in self.canonical_form(vector))

    def same_element(self, v, w):
        return self.canonical_form(tuple(a - b for a, b in zip(v, w))) \
            == (0,) * self.generators

    def _u_inverse(self):
        if self._uinv is None:
            self._uinv = unimodular_inverse(self._decomposition()[0])
        return self._uinv

    def from_canonical(self, residues):
        """A generator-coordinate representative of a canonical tuple."""
        return self._u_inverse().apply(residues)

    def elements(self):
        """All elements of a finite group, as canonical residue tuples."""
        if self.free_rank:
            raise ValueError("cannot enumerate an infinite group")
        ranges = [range(max(d, 1)) for d in self.diagonal]
        return [tuple(t) for t in itertools.product(*ranges)]

    # -- constructions -------------------------------------------------------

    def reduce_mod(self, m):
        """The quotient by m: presentation gains m * identity relations."""
        if m < 2:
            raise ValueError("modulus must be at least 2")
        extra = IntMatrix.diagonal((m,) * self.generators)
        return FgAbGroup(self.generators,
                         IntMatrix.hstack(self.relations, extra))

    @staticmethod
    def direct_sum(a, b):
        group = FgAbGroup(a.generators + b.generators,
                          IntMatrix.block_diagonal(a.relations, b.relations))
        return group


def direct_sum_with_maps(a, b):
    """(A + B, inclusion_a, inclusion_b, projection_a, projection_b)."""
    s = FgAbGroup.direct_sum(a, b)
    ia = IntMatrix.vstack(IntMatrix.identity(a.generators),
                          IntMatrix.zero(b.generators, a.generators))
    ib = IntMatrix.vstack(IntMatrix.zero(a.generators, b.generators),
                          IntMatrix.identity(b.generators))
    pa = ia.transpose()
    pb = ib.transpose()
    return (s,
            GroupHom(a, s, ia), GroupHom(b, s, ib),
            GroupHom(s, a, pa), GroupHom(s, b, pb))


class GroupHom:
    """A homomorphism between presented groups, as a matrix on generators.

    Construction checks well-definedness: the matrix must send every
    relation of the source into the relation lattice of the target.
    """

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source, target, matrix, check=True):
        if matrix.rows != target.generators or matrix.cols != source.generators:
            raise ValueError("hom matrix must be target-gens x source-gens")
        if check:
            for col in (matrix * source.relations).columns():
                if not target.is_zero_element(col):
                    raise ValueError("matrix does not respect source relations")
        self.source = source
        self.target = target
        self.matrix = matrix

    @classmethod
    def identity(cls, group):
        return cls(group, group, IntMatrix.identity(group.generators),
                   check=False)

    @classmethod
    def zero(cls, source, target):
        return cls(source, target,
                   IntMatrix.zero(target.generators, source.generators),
                   check=False)

    def apply(self, vector):
        return self.matrix.apply(vector)

    def __matmul__(self, other):
        """Composition self after other."""
        if not isinstance(other, GroupHom):
            return NotImplemented
        if not other.target.presentation_equal(self.source):
            raise CompositionMismatch("inner target differs from outer source")
        return GroupHom(other.source, self.target, self.matrix * other.matrix,
                        check=False)

    def __add__(self, other):
        return GroupHom(self.source, self.target, self.matrix + other.matrix,
                        check=False)

    def __sub__(self, other):
        return GroupHom(self.source, self.target, self.matrix - other.matrix,
                        check=False)

    def __neg__(self):
        return GroupHom(self.source, self.target, -self.matrix, check=False)

    def scale(self, k):
        return GroupHom(self.source, self.target, self.matrix.scale(k),
                        check=False)

    def equal_to(self, other):
        """Equality of homomorphisms (matrices congruent modulo relations)."""
        if (self.source.generators != other.source.generators
                or not self.target.presentation_equal(other.target)):
            return False
        diff = self.matrix - other.matrix
        return all(self.target.is_zero_element(c) for c in diff.columns())

    def is_zero(self):
        return all(self.target.is_zero_element(c)
                   for c in self.matrix.columns())

    # -- kernels, images and invertibility -----------------------------------

    def kernel_lattice(self):
        """Columns generating {v : self(v) = 0} as a sublattice of Z^src."""
        combined = IntMatrix.hstack(self.matrix, self.target.relations)
        basis = combined.kernel_basis()
        rows = self.source.generators
        return IntMatrix(tuple(basis.data[i] for i in range(rows)),
                         cols=basis.cols)

    def image_lattice(self):
        """Columns generating the image together with target relations."""
        return IntMatrix.hstack(self.matrix, self.target.relations)

    def is_injective(self):
        for col in self.kernel_lattice().columns():
            if not self.source.is_zero_element(col):
                return False
        return True

    def is_surjective(self):
        image = self.image_lattice()
        n = self.target.generators
        for i in range(n):
            e = tuple(1 if j == i else 0 for j in range(n))
            if image.solve(e) is None:
                return False
        return True

    def is_isomorphism(self):
        return self.is_injective() and self.is_surjective()

    def preimage(self, vector):
        """Some v with self(v) = vector modulo relations, or None."""
        sol = self.image_lattice().solve(vector)
        if sol is None:
            return None
        return tuple(sol[: self.source.generators])

    def inverse(self):
        """Inverse homomorphism of an isomorphism."""
        cols = []
        n = self.target.generators
        for i in range(n):
            e = tuple(1 if j == i else 0 for j in range(n))
            pre = self.preimage(e)
            if pre is None:
                raise ValueError("homomorphism is not surjective")
            cols.append(pre)
        inv = GroupHom(self.target, self.source,
                       IntMatrix.from_columns(cols,
                                              rows=self.source.generators))
        return inv

    def reduce_mod(self, m):
        return GroupHom(self.source.reduce_mod(m), self.target.reduce_mod(m),
                        self.matrix, check=False)

    def __repr__(self):
        return "<GroupHom %s -> %s>" % (self.source.describe(),
                                        self.target.describe())


def hom_into_sum(f, g):
    """Combine f: A -> B and g: A -> C into A -> B + C."""
    if f.source.generators != g.source.generators:
        raise CompositionMismatch("sources differ")
    s = FgAbGroup.direct_sum(f.target, g.target)
    return GroupHom(f.source, s, IntMatrix.vstack(f.matrix, g.matrix),
                    check=False)


def hom_from_sum(f, g):
    """Combine f: A -> C and g: B -> C into A + B -> C."""
    if f.target.generators != g.target.generators:
        raise CompositionMismatch("targets differ")
    s = FgAbGroup.direct_sum(f.source, g.source)
    return GroupHom(s, f.target, IntMatrix.hstack(f.matrix, g.matrix),
                    check=False)


def is_exact_at(f, g):
    """True iff image(g) = kernel(f) for composable g: A -> B, f: B -> C.

    Decided exactly: the composite must vanish and every generator of
    the kernel lattice of f must lie in the lattice spanned by the
    image of g together with the relations of B.
    """
    if not g.target.presentation_equal(f.source):
        raise CompositionMismatch(
            "target of g must be the source of f (same presentation)")
    composite = f.matrix * g.matrix
    for col in composite.columns():
        if not f.target.is_zero_element(col):
            return False
    image = g.image_lattice()
    for col in f.kernel_lattice().columns():
        if image.solve(col) is None:
            return False
    return True


# ---------------------------------------------------------------------------
# Bounded cochain complexes


class CochainComplex:
    """A bounded complex of free Z-modules with labeled bases.

    Terms live in degrees [lo, hi]; the differential in degree n is a
    rank(n+1) x rank(n) integer matrix and consecutive differentials
    compose to zero (validated on construction).
    """

    __slots__ = ("lo", "hi", "_ranks", "_labels", "_diffs", "_spaces")

    def __init__(self, lo, hi, ranks, diffs, labels=None):
        self.lo = lo
        self.hi = hi
        self._ranks = {n: int(r) for n, r in ranks.items() if r}
        self._diffs = {}
        self._labels = {}
        if labels:
            for n, labs in labels.items():
                self._labels[n] = tuple(labs)
                if len(self._labels[n]) != self.rank(n):
                    raise ValueError("label count differs from rank "
                                     "in degree %d" % n)
        for n, d in diffs.items():
            if d.cols != self.rank(n) or d.rows != self.rank(n + 1):
                raise ValueError("differential in degree %d has shape %dx%d, "
                                 "expected %dx%d"
                                 % (n, d.rows, d.cols,
                                    self.rank(n + 1), self.rank(n)))
            if not d.is_zero():
                self._diffs[n] = d
        for n in list(self._diffs):
            nxt = self._diffs.get(n + 1)
            if nxt is not None and not (nxt * self._diffs[n]).is_zero():
                raise ValueError("d o d != 0 between degrees %d and %d"
                                 % (n, n + 2))
        self._spaces = {}

    def rank(self, n):
        return self._ranks.get(n, 0)

    def labels(self, n):
        labs = self._labels.get(n)
        if labs is None:
            return tuple(range(self.rank(n)))
        return labs

    def diff(self, n):
        d = self._diffs.get(n)
        if d is None:
            return IntMatrix.zero(self.rank(n + 1), self.rank(n))
        return d

    def degrees(self):
        return range(self.lo, self.hi + 1)

    def total_rank(self):
        return sum(self._ranks.values())

    def cohomology_space(self, n):
        """Kernel-basis presentation of H^n, cached per degree."""
        space = self._spaces.get(n)
        if space is None:
            kernel = self.diff(n).kernel_basis()
            incoming = self.diff(n - 1)
            rel_cols = []
            for col in incoming.columns():
                expressed = kernel.solve(col)
                if expressed is None:
                    raise AssertionError("image not contained in kernel")
                rel_cols.append(expressed)
            relations = IntMatrix.from_columns(rel_cols, rows=kernel.cols)
            group = FgAbGroup(kernel.cols, relations)
            space = CohomologySpace(self, n, group, kernel)
            self._spaces[n] = space
        return space

    def __repr__(self):
        ranks = ", ".join("%d:%d" % (n, self.rank(n))
                          for n in self.degrees() if self.rank(n))
        return "<CochainComplex [%d, %d] ranks {%s}>" % (self.lo, self.hi,
                                                         ranks)


@dataclass(frozen=True)
class CohomologySpace:
    """H^n of a complex with its chosen cocycle representatives.

    The group's generators correspond to the columns of ``cocycles``,
    a deterministic basis of the degree-n kernel.
    """

    complex: CochainComplex
    degree: int
    group: FgAbGroup
    cocycles: IntMatrix

    def class_of(self, cochain):
        """Coordinates of a cocycle's class in generator coordinates."""
        coords = self.cocycles.solve(cochain)
        if coords is None:
            raise ValueError("vector is not a cocycle in degree %d"
                             % self.degree)
        return coords

    def representative(self, coords):
        """A representative cocycle of the class with given coordinates."""
        return self.cocycles.apply(coords)


def cohomology_at(complex_, n):
    """H^n(complex) = ker(d^n) / im(d^(n-1)) as an FgAbGroup."""
    return complex_.cohomology_space(n).group


class ChainMap:
    """A degreewise map of cochain complexes commuting with differentials."""

    __slots__ = ("source", "target", "_components")

    def __init__(self, source, target, components, check=True):
        self.source = source
        self.target = target
        self._components = {}
        for n, mat in components.items():
            if mat.cols != source.rank(n) or mat.rows != target.rank(n):
                raise NotAChainMap("component in degree %d has wrong shape"
                                   % n)
            if not mat.is_zero():
                self._components[n] = mat
        if check:
            lo = min(source.lo, target.lo) - 1
            hi = max(source.hi, target.hi) + 1
            for n in range(lo, hi + 1):
                lhs = self.target.diff(n) * self.component(n)
                rhs = self.component(n + 1) * self.source.diff(n)
                if lhs != rhs:
                    raise NotAChainMap("square fails to commute in degree %d"
                                       % n)

    def component(self, n):
        mat = self._components.get(n)
        if mat is None:
            return IntMatrix.zero(self.target.rank(n), self.source.rank(n))
        return mat

    @classmethod
    def identity(cls, complex_):
        comps = {n: IntMatrix.identity(complex_.rank(n))
                 for n in complex_.degrees()}
        return cls(complex_, complex_, comps, check=False)

    def __matmul__(self, other):
        if not isinstance(other, ChainMap):
            return NotImplemented
        comps = {}
        for n in range(min(other.source.lo, self.target.lo),
                       max(other.source.hi, self.target.hi) + 1):
            comps[n] = self.component(n) * other.component(n)
        return ChainMap(other.source, self.target, comps, check=False)


def induced_hom_on_cohomology(f, n):
    """H^n(f): H^n(source) -> H^n(target) for a chain map f."""
    src = f.source.cohomology_space(n)
    dst = f.target.cohomology_space(n)
    comp = f.component(n)
    cols = []
    for j in range(src.group.generators):
        image = comp.apply(src.cocycles.column(j))
        cols.append(dst.class_of(image))
    matrix = IntMatrix.from_columns(cols, rows=dst.group.generators)
    return GroupHom(src.group, dst.group, matrix)


def mapping_fiber(f):
    """The fiber (shifted mapping cone) of a chain map f: C -> D.

    Degree-n term is D^(n-1) + C^n, with differential
    (y, x) -> (f(x) - d_D(y), d_C(x)); its cohomology fits into the
    long exact sequence relating H^*(C) and H^*(D).
    """
    c, d = f.source, f.target
    lo = min(c.lo, d.lo + 1)
    hi = max(c.hi, d.hi + 1)
    ranks = {}
    labels = {}
    diffs = {}
    for n in range(lo, hi + 1):
        ranks[n] = d.rank(n - 1) + c.rank(n)
        labels[n] = tuple(("shift", lab) for lab in d.labels(n - 1)) \
            + tuple(("src", lab) for lab in c.labels(n))
    for n in range(lo, hi + 1):
        top = IntMatrix.hstack(-d.diff(n - 1), f.component(n))
        bottom = IntMatrix.hstack(
            IntMatrix.zero(c.rank(n + 1), d.rank(n - 1)), c.diff(n))
        diffs[n] = IntMatrix.vstack(top, bottom)
    return CochainComplex(lo, hi, ranks, diffs, labels)


def fiber_projection(f):
    """Chain map fiber(f) -> C projecting away the shifted summand."""
    fib = mapping_fiber(f)
    c, d = f.source, f.target
    comps = {}
    for n in range(fib.lo, fib.hi + 1):
        comps[n] = IntMatrix.hstack(
            IntMatrix.zero(c.rank(n), d.rank(n - 1)),
            IntMatrix.identity(c.rank(n)))
    return ChainMap(fib, c, comps, check=False)


def fiber_shift_hom(f, n):
    """H^n(D) -> H^(n+1)(fiber(f)), induced by y -> (y, 0)."""
    fib = mapping_fiber(f)
    d = f.target
    src = d.cohomology_space(n)
    dst = fib.cohomology_space(n + 1)
    cols = []
    for j in range(src.group.generators):
        w = src.cocycles.column(j)
        lifted = tuple(w) + (0,) * f.source.rank(n + 1)
        cols.append(dst.class_of(lifted))
    matrix = IntMatrix.from_columns(cols, rows=dst.group.generators)
    return GroupHom(src.group, dst.group, matrix)
