"""Exact integer linear algebra.

Smith normal form with unimodular transforms, integer kernels and
cokernels, linear-system solving over Z, and finitely generated abelian
groups in invariant-factor normal form.  All arithmetic is exact: the
module runs on Python's arbitrary-precision integers and nothing here
(or anywhere downstream) touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod
from typing import Sequence


@dataclass(frozen=True)
class IntegerMatrix:
    """Immutable integer matrix; entries stored row-major."""

    rows: int
    cols: int
    entries: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        for e in self.entries:
            if not isinstance(e, int):
                raise ValueError("matrix entries must be exact integers")

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntegerMatrix":
        rows = [tuple(r) for r in rows]
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged rows")
            if cols is not None and cols != width:
                raise ValueError("cols argument does not match row width")
        else:
            width = 0 if cols is None else cols
        flat = tuple(int(e) for r in rows for e in r)
        return cls(len(rows), width, flat)

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def diagonal(cls, values: Sequence[int], rows: int, cols: int) -> "IntegerMatrix":
        values = list(values)
        if len(values) > min(rows, cols):
            raise ValueError("too many diagonal values for the requested shape")
        entries = [0] * (rows * cols)
        for i, v in enumerate(values):
            entries[i * cols + i] = int(v)
        return cls(rows, cols, tuple(entries))

    @classmethod
    def column_vector(cls, values: Sequence[int]) -> "IntegerMatrix":
        return cls(len(values), 1, tuple(int(v) for v in values))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int | None = None) -> "IntegerMatrix":
        columns = [tuple(c) for c in columns]
        if columns:
            height = len(columns[0])
            if any(len(c) != height for c in columns):
                raise ValueError("ragged columns")
        else:
            height = 0 if rows is None else rows
        flat = tuple(columns[j][i] for i in range(height) for j in range(len(columns)))
        return cls(height, len(columns), flat)

    # ------------------------------------------------------------------
    # access
    # ------------------------------------------------------------------

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(key)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def column_matrix(self, j: int) -> "IntegerMatrix":
        return IntegerMatrix(self.rows, 1, self.column(j))

    def row_lists(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    # ------------------------------------------------------------------
    # algebra
    # ------------------------------------------------------------------

    def transpose(self) -> "IntegerMatrix":
        flat = tuple(self.entries[i * self.cols + j]
                     for j in range(self.cols) for i in range(self.rows))
        return IntegerMatrix(self.cols, self.rows, flat)

    def __neg__(self) -> "IntegerMatrix":
        return IntegerMatrix(self.rows, self.cols, tuple(-e for e in self.entries))

    def _check_same_shape(self, other: "IntegerMatrix"):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("matrix shapes do not match")

    def __add__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        self._check_same_shape(other)
        return IntegerMatrix(self.rows, self.cols,
                             tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        self._check_same_shape(other)
        return IntegerMatrix(self.rows, self.cols,
                             tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __mul__(self, scalar: int) -> "IntegerMatrix":
        if not isinstance(scalar, int):
            return NotImplemented
        return IntegerMatrix(self.rows, self.cols, tuple(scalar * e for e in self.entries))

    __rmul__ = __mul__

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError("inner dimensions do not match")
        n, m, k = self.rows, other.cols, self.cols
        a, b = self.entries, other.entries
        out = [0] * (n * m)
        for i in range(n):
            arow = a[i * k:(i + 1) * k]
            for t in range(k):
                av = arow[t]
                if av:
                    brow = b[t * m:(t + 1) * m]
                    base = i * m
                    for j in range(m):
                        out[base + j] += av * brow[j]
        return IntegerMatrix(n, m, tuple(out))

    def hstack(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.rows != other.rows:
            raise ValueError("row counts do not match")
        flat = []
        for i in range(self.rows):
            flat.extend(self.row(i))
            flat.extend(other.row(i))
        return IntegerMatrix(self.rows, self.cols + other.cols, tuple(flat))

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    def det(self) -> int:
        """Fraction-free (Bareiss) determinant; exact for any size."""
        if self.rows != self.cols:
            raise ValueError("determinant requires a square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = self.row_lists()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                pivot = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
                if pivot is None:
                    return 0
                m[k], m[pivot] = m[pivot], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    # ------------------------------------------------------------------
    # text format: first line "rows cols", then rows of integers
    # ------------------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"{self.rows} {self.cols}"]
        for i in range(self.rows):
            lines.append(" ".join(str(e) for e in self.row(i)))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "IntegerMatrix":
        tokens = text.split()
        if len(tokens) < 2:
            raise ValueError("matrix text must start with 'rows cols'")
        rows, cols = int(tokens[0]), int(tokens[1])
        body = tokens[2:]
        if len(body) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(body)}")
        return cls(rows, cols, tuple(int(t) for t in body))


# ----------------------------------------------------------------------
# Smith normal form
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class SmithForm:
    """Unimodular decomposition u @ a @ v == diagonal(d), padded to a's shape.

    d lists the positive invariant factors, each dividing the next; the
    remainder of the padded diagonal is zero.  u and v are square with
    determinant +-1.
    """

    d: tuple[int, ...]
    u: IntegerMatrix
    v: IntegerMatrix
    original_rows: int
    original_cols: int

    @property
    def rank(self) -> int:
        return len(self.d)

    def diagonal_matrix(self) -> IntegerMatrix:
        return IntegerMatrix.diagonal(self.d, self.original_rows, self.original_cols)


def _min_abs_entry(d: list[list[int]], t: int, m: int, n: int):
    best = None
    for i in range(t, m):
        row = d[i]
        for j in range(t, n):
            e = row[j]
            if e:
                a = -e if e < 0 else e
                if best is None or a < best[0]:
                    best = (a, i, j)
                    if a == 1:
                        return best
    return best


def smith_normal_form(a: IntegerMatrix) -> SmithForm:
    """Diagonalize a by unimodular row and column operations.

    Pivoting picks the nonzero entry of least absolute value (ties broken
    by lowest row then column index), which keeps the output deterministic.
    Diagonal entries are normalized positive, the sign being absorbed into
    the column transform.
    """
    m, n = a.rows, a.cols
    d = a.row_lists()
    u = IntegerMatrix.identity(m).row_lists()
    v = IntegerMatrix.identity(n).row_lists()

    def swap_rows(i, j):
        if i != j:
            d[i], d[j] = d[j], d[i]
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        if i != j:
            for row in d:
                row[i], row[j] = row[j], row[i]
            for row in v:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        drow, srow = d[dst], d[src]
        for j in range(n):
            drow[j] += c * srow[j]
        drow_u, srow_u = u[dst], u[src]
        for j in range(m):
            drow_u[j] += c * srow_u[j]

    def add_col(dst, src, c):
        # col_dst += c * col_src
        for row in d:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    t = 0
    limit = min(m, n)
    while t < limit:
        found = _min_abs_entry(d, t, m, n)
        if found is None:
            break
        _, pi, pj = found
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            pivot = d[t][t]
            dirty = False
            for i in range(t + 1, m):
                e = d[i][t]
                if e:
                    q = e // pivot
                    if q:
                        add_row(i, t, -q)
                    if d[i][t]:
                        dirty = True
            if not dirty:
                for j in range(t + 1, n):
                    e = d[t][j]
                    if e:
                        q = e // pivot
                        if q:
                            add_col(j, t, -q)
                        if d[t][j]:
                            dirty = True
            if dirty:
                _, pi, pj = _min_abs_entry(d, t, m, n)
                swap_rows(t, pi)
                swap_cols(t, pj)
                continue
            # pivot must divide everything that remains, or the invariant
            # factor chain breaks later
            pivot = d[t][t]
            violator = None
            for i in range(t + 1, m):
                row = d[i]
                for j in range(t + 1, n):
                    if row[j] % pivot:
                        violator = i
                        break
                if violator is not None:
                    break
            if violator is None:
                break
            add_row(t, violator, 1)
        if d[t][t] < 0:
            for row in d:
                row[t] = -row[t]
            for row in v:
                row[t] = -row[t]
        t += 1

    diag = tuple(d[k][k] for k in range(limit) if d[k][k])
    return SmithForm(diag, IntegerMatrix.from_rows(u, cols=m),
                     IntegerMatrix.from_rows(v, cols=n), m, n)


def cokernel(a: IntegerMatrix) -> "FgAbelianGroup":
    """Quotient of Z^cols by the subgroup generated by the rows of a.

    Each row of a is read as a relation among the cols standard
    generators; the result is the presented group in invariant-factor
    form.
    """
    form = smith_normal_form(a)
    free = a.cols - form.rank
    torsion = tuple(x for x in form.d if x > 1)
    return FgAbelianGroup(free, torsion)


def kernel_basis(a: IntegerMatrix) -> IntegerMatrix:
    """Basis of the integer kernel {x in Z^cols : a @ x = 0}, as columns.

    The columns come from the unimodular column transform of the Smith
    form, so they are primitive and extend to a basis of Z^cols.
    """
    form = smith_normal_form(a)
    cols = [form.v.column(j) for j in range(form.rank, a.cols)]
    return IntegerMatrix.from_columns(cols, rows=a.cols)


def is_isomorphism(a: IntegerMatrix) -> bool:
    """True iff a is square with determinant +-1."""
    if a.rows != a.cols:
        return False
    return abs(a.det()) == 1


def solve_integer(a: IntegerMatrix, b: IntegerMatrix) -> IntegerMatrix | None:
    """One integer solution x of a @ x = b (columnwise), or None.

    Uses the Smith decomposition: with u a v = D the system becomes
    D y = u b, solved coordinate by coordinate; free coordinates are set
    to zero.
    """
    if a.rows != b.rows:
        raise ValueError("row counts do not match")
    form = smith_normal_form(a)
    c = form.u @ b
    n, k = a.cols, b.cols
    y = [[0] * k for _ in range(n)]
    for i in range(form.rank):
        di = form.d[i]
        for j in range(k):
            num = c[i, j]
            if num % di:
                return None
            y[i][j] = num // di
    for i in range(form.rank, a.rows):
        for j in range(k):
            if c[i, j]:
                return None
    return form.v @ IntegerMatrix.from_rows(y, cols=k)


def lattice_contains(generators: IntegerMatrix, target: IntegerMatrix) -> bool:
    """True iff every column of target lies in the column span of generators."""
    return solve_integer(generators, target) is not None


# ----------------------------------------------------------------------
# finitely generated abelian groups
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class FgAbelianGroup:
    """Finitely generated abelian group in invariant-factor normal form.

    free_rank copies of Z plus cyclic factors Z/torsion[i] where each
    torsion entry is at least 2 and divides the next.  Structural
    equality therefore decides isomorphism.
    """

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        object.__setattr__(self, "torsion", tuple(int(t) for t in self.torsion))
        for t in self.torsion:
            if t < 2:
                raise ValueError("torsion coefficients must be at least 2")
        for s, t in zip(self.torsion, self.torsion[1:]):
            if t % s:
                raise ValueError("torsion coefficients must form a divisibility chain")

    @classmethod
    def trivial(cls) -> "FgAbelianGroup":
        return cls(0, ())

    @classmethod
    def free(cls, rank: int) -> "FgAbelianGroup":
        return cls(rank, ())

    @classmethod
    def cyclic(cls, order: int) -> "FgAbelianGroup":
        if order == 0:
            return cls(1, ())
        if order == 1:
            return cls(0, ())
        return cls(0, (order,))

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def order(self) -> int | None:
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        return prod(self.torsion) if self.torsion else 1

    def direct_sum(self, other: "FgAbelianGroup") -> "FgAbelianGroup":
        """Direct sum, renormalized into a single invariant-factor chain."""
        free = self.free_rank + other.free_rank
        torsion = self.torsion + other.torsion
        if not torsion:
            return FgAbelianGroup(free, ())
        k = len(torsion)
        normalized = cokernel(IntegerMatrix.diagonal(torsion, k, k))
        return FgAbelianGroup(free, normalized.torsion)

    # -- rendering -----------------------------------------------------

    def render(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " ⊕ ".join(parts) if parts else "0"

    def __str__(self) -> str:
        return self.render()

    @classmethod
    def parse(cls, text: str) -> "FgAbelianGroup":
        text = text.strip()
        if text == "0":
            return cls.trivial()
        result = cls.trivial()
        for part in text.split("⊕"):
            part = part.strip()
            if part == "Z":
                piece = cls.free(1)
            elif part.startswith("Z^"):
                piece = cls.free(int(part[2:]))
            elif part.startswith("Z/"):
                piece = cls.cyclic(int(part[2:]))
            else:
                raise ValueError(f"cannot parse group summand {part!r}")
            result = result.direct_sum(piece)
        return result

    # -- element arithmetic ---------------------------------------------
    # Elements are integer tuples: free coordinates first, then one
    # residue per torsion factor.

    def element_length(self) -> int:
        return self.free_rank + len(self.torsion)

    def normalize_element(self, element: Sequence[int]) -> tuple[int, ...]:
        element = tuple(int(c) for c in element)
        if len(element) != self.element_length():
            raise ValueError("element has the wrong number of coordinates")
        free = element[:self.free_rank]
        tors = tuple(c % t for c, t in zip(element[self.free_rank:], self.torsion))
        return free + tors

    def zero_element(self) -> tuple[int, ...]:
        return (0,) * self.element_length()

    def add_elements(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        a = self.normalize_element(a)
        b = self.normalize_element(b)
        return self.normalize_element(tuple(x + y for x, y in zip(a, b)))

    def negate_element(self, a: Sequence[int]) -> tuple[int, ...]:
        a = self.normalize_element(a)
        return self.normalize_element(tuple(-x for x in a))

    def scale_element(self, a: Sequence[int], c: int) -> tuple[int, ...]:
        a = self.normalize_element(a)
        return self.normalize_element(tuple(c * x for x in a))


def groups_equal(g: FgAbelianGroup, h: FgAbelianGroup) -> bool:
    """Isomorphism test; sound and complete because both sides are normal forms."""
    return g == h


def content(values: Sequence[int]) -> int:
    """gcd of a sequence of integers (0 for the empty or all-zero sequence)."""
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
