"""Group completion of commutative monoids.

Two carriers are supported: finite commutative monoids given by a Cayley
table, and free commutative monoids N^k whose elements are exponent
vectors.  The completion is built from pairs (x, y), thought of as formal
differences, identified when x + v + t = u + y + t for some translating
element t.  For finite monoids the quotient is computed by union-find
over all pairs and then classified as an abelian group in
invariant-factor form; for N^k the relation is cancellative and the
completion is Z^k on the nose.

The word problem for general presented monoids is undecidable, which is
why exactly these two carriers (and nothing more ambitious) exist here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .linalg import FgAbelianGroup, IntegerMatrix, cokernel


@dataclass(frozen=True)
class FiniteCommutativeMonoid:
    """Commutative monoid on {0, .., n-1} given by its Cayley table.

    Commutativity, associativity, and the identity law are verified
    exhaustively at construction; the sizes in play are tiny.
    """

    table: tuple[tuple[int, ...], ...]
    identity: int

    def __post_init__(self):
        n = len(self.table)
        object.__setattr__(self, "table", tuple(tuple(row) for row in self.table))
        if n == 0:
            raise ValueError("a monoid needs at least the identity element")
        if any(len(row) != n for row in self.table):
            raise ValueError("Cayley table must be square")
        if not 0 <= self.identity < n:
            raise ValueError("identity index out of range")
        for row in self.table:
            for e in row:
                if not 0 <= e < n:
                    raise ValueError("table entry out of range")
        for x in range(n):
            for y in range(x + 1, n):
                if self.table[x][y] != self.table[y][x]:
                    raise ValueError(f"table is not commutative at ({x}, {y})")
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    if self.table[self.table[x][y]][z] != self.table[x][self.table[y][z]]:
                        raise ValueError(f"table is not associative at ({x}, {y}, {z})")
        e = self.identity
        for x in range(n):
            if self.table[e][x] != x or self.table[x][e] != x:
                raise ValueError("identity element does not act as identity")

    @property
    def size(self) -> int:
        return len(self.table)

    def add(self, x: int, y: int) -> int:
        if not (0 <= x < self.size and 0 <= y < self.size):
            raise ValueError("invalid element index")
        return self.table[x][y]

    @classmethod
    def cyclic_group(cls, n: int) -> "FiniteCommutativeMonoid":
        table = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
        return cls(table, 0)

    @classmethod
    def product(cls, a: "FiniteCommutativeMonoid",
                b: "FiniteCommutativeMonoid") -> "FiniteCommutativeMonoid":
        na, nb = a.size, b.size
        def enc(i, j):
            return i * nb + j
        table = []
        for i in range(na):
            for j in range(nb):
                table.append(tuple(enc(a.add(i, k), b.add(j, l))
                                   for k in range(na) for l in range(nb)))
        return cls(tuple(table), enc(a.identity, b.identity))

    @classmethod
    def from_invariants(cls, invariants: Sequence[int]) -> "FiniteCommutativeMonoid":
        """Direct product of cyclic groups of the given orders."""
        m = cls.cyclic_group(1)
        for inv in invariants:
            m = cls.product(m, cls.cyclic_group(inv))
        return m

    # Cayley-table file format: first line "n identity_index",
    # then n lines of n element indices.

    def to_text(self) -> str:
        lines = [f"{self.size} {self.identity}"]
        for row in self.table:
            lines.append(" ".join(str(e) for e in row))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "FiniteCommutativeMonoid":
        tokens = text.split()
        if len(tokens) < 2:
            raise ValueError("Cayley table text must start with 'n identity_index'")
        n, identity = int(tokens[0]), int(tokens[1])
        body = tokens[2:]
        if len(body) != n * n:
            raise ValueError(f"expected {n * n} table entries, got {len(body)}")
        table = tuple(tuple(int(body[i * n + j]) for j in range(n)) for i in range(n))
        return cls(table, identity)


@dataclass(frozen=True)
class FreeCommutativeMonoid:
    """Free commutative monoid N^k; elements are exponent vectors."""

    generator_count: int

    def __post_init__(self):
        if self.generator_count < 0:
            raise ValueError("generator count must be nonnegative")

    def element(self, exponents: Sequence[int]) -> tuple[int, ...]:
        exponents = tuple(int(e) for e in exponents)
        if len(exponents) != self.generator_count:
            raise ValueError("element has the wrong number of exponents")
        if any(e < 0 for e in exponents):
            raise ValueError("exponents must be nonnegative")
        return exponents

    def add(self, x: Sequence[int], y: Sequence[int]) -> tuple[int, ...]:
        x, y = self.element(x), self.element(y)
        return tuple(a + b for a, b in zip(x, y))

    def generator(self, i: int) -> tuple[int, ...]:
        if not 0 <= i < self.generator_count:
            raise ValueError("generator index out of range")
        return tuple(1 if j == i else 0 for j in range(self.generator_count))


Monoid = FiniteCommutativeMonoid | FreeCommutativeMonoid


def pair_equivalent(monoid: Monoid, x, y, u, v) -> bool:
    """Whether the formal differences (x, y) and (u, v) coincide.

    The defining relation asks for a translating t with x + v + t equal to
    u + y + t.  Finite monoids are searched exhaustively over t; in a free
    commutative monoid addition cancels, so t is irrelevant and the test
    degenerates to x + v == u + y.
    """
    if isinstance(monoid, FreeCommutativeMonoid):
        return monoid.add(x, v) == monoid.add(u, y)
    left = monoid.add(x, v)
    right = monoid.add(u, y)
    return any(monoid.add(left, t) == monoid.add(right, t)
               for t in range(monoid.size))


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, i: int, j: int):
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[max(ri, rj)] = min(ri, rj)


def _classify_group_table(table: Sequence[Sequence[int]]) -> FgAbelianGroup:
    """Invariant factors of a finite abelian group given by its Cayley table.

    The group is presented on one generator per element with relations
    e_i + e_j - e_{i+j}; the cokernel of that relation matrix recovers the
    group in normal form.
    """
    c = len(table)
    rows = []
    for i in range(c):
        for j in range(i, c):
            row = [0] * c
            row[i] += 1
            row[j] += 1
            row[table[i][j]] -= 1
            rows.append(row)
    return cokernel(IntegerMatrix.from_rows(rows, cols=c))


class GrothendieckGroup:
    """Completion of a commutative monoid.

    carrier is the underlying abelian group in invariant-factor form.
    class_of implements the canonical map phi(x) = [(x + x, x)], and
    class_of_pair sends a formal difference (x, y) to its class, so that
    class_of(x) - class_of(y) is always the class of (x, y).

    For a finite monoid the class values are indices into the list of
    pair-equivalence classes; for N^k they are integer vectors in Z^k.
    """

    def __init__(self, monoid: Monoid):
        self.monoid = monoid
        if isinstance(monoid, FreeCommutativeMonoid):
            self.kind = "free"
            self.carrier = FgAbelianGroup.free(monoid.generator_count)
            self._classes = None
            return
        self.kind = "finite"
        n = monoid.size
        pairs = [(x, y) for x in range(n) for y in range(n)]
        uf = _UnionFind(len(pairs))
        for a in range(len(pairs)):
            xa, ya = pairs[a]
            for b in range(a + 1, len(pairs)):
                xb, yb = pairs[b]
                if pair_equivalent(monoid, xa, ya, xb, yb):
                    uf.union(a, b)
        roots: dict[int, int] = {}
        for idx in range(len(pairs)):
            root = uf.find(idx)
            if root not in roots:
                roots[root] = len(roots)
        self._pair_class = {pairs[idx]: roots[uf.find(idx)] for idx in range(len(pairs))}
        self._classes = [[] for _ in range(len(roots))]
        for pair, cls in self._pair_class.items():
            self._classes[cls].append(pair)
        # induced addition on classes via representatives
        self._add_table = []
        for members_a in self._classes:
            xa, ya = members_a[0]
            row = []
            for members_b in self._classes:
                xb, yb = members_b[0]
                row.append(self._pair_class[(monoid.add(xa, xb), monoid.add(ya, yb))])
            self._add_table.append(tuple(row))
        self.carrier = _classify_group_table(self._add_table)

    # -- class arithmetic -------------------------------------------------

    @property
    def class_count(self) -> int | None:
        return None if self.kind == "free" else len(self._classes)

    def class_of_pair(self, x, y):
        if self.kind == "free":
            x = self.monoid.element(x)
            y = self.monoid.element(y)
            return tuple(a - b for a, b in zip(x, y))
        if not (0 <= x < self.monoid.size and 0 <= y < self.monoid.size):
            raise ValueError("invalid element index")
        return self._pair_class[(x, y)]

    def class_of(self, x):
        """The canonical map phi(x) = [(x + x, x)]."""
        if self.kind == "free":
            x = self.monoid.element(x)
            return tuple(x)
        return self.class_of_pair(self.monoid.add(x, x), x)

    @property
    def identity_class(self):
        if self.kind == "free":
            return (0,) * self.monoid.generator_count
        e = self.monoid.identity
        return self.class_of_pair(e, e)

    def add(self, c1, c2):
        if self.kind == "free":
            return tuple(a + b for a, b in zip(c1, c2))
        return self._add_table[c1][c2]

    def negate(self, c):
        if self.kind == "free":
            return tuple(-a for a in c)
        members = self._classes[c]
        x, y = members[0]
        return self.class_of_pair(y, x)

    def classes(self):
        """All class indices (finite carriers only)."""
        if self.kind == "free":
            raise ValueError("the completion of a free monoid is infinite")
        return range(len(self._classes))

    def class_members(self, c):
        if self.kind == "free":
            raise ValueError("the completion of a free monoid is infinite")
        return tuple(self._classes[c])


def completion(monoid: Monoid) -> GrothendieckGroup:
    """Group completion of a commutative monoid."""
    return GrothendieckGroup(monoid)


class CompletionHomomorphism:
    """The induced map theta with theta([(x, y)]) = psi(x) - psi(y)."""

    def __init__(self, group: GrothendieckGroup, target: FgAbelianGroup, data):
        self.group = group
        self.target = target
        self._data = data

    def __call__(self, carrier_class):
        if self.group.kind == "free":
            acc = self.target.zero_element()
            for coeff, image in zip(carrier_class, self._data):
                acc = self.target.add_elements(acc, self.target.scale_element(image, coeff))
            return acc
        return self._data[carrier_class]

    def of_pair(self, x, y):
        return self(self.group.class_of_pair(x, y))


def universal_factor(monoid: Monoid, group: GrothendieckGroup,
                     target: FgAbelianGroup,
                     psi) -> CompletionHomomorphism:
    """Factor a monoid homomorphism psi through the completion.

    psi gives target elements: for a finite monoid, one per monoid element
    (sequence or mapping or callable); for N^k, one per generator.  The
    homomorphism property is verified on all pairs in the finite case and
    rejected with the violating pair; generator data on N^k extends
    linearly, so there is nothing to check beyond well-formedness.

    The returned map theta satisfies theta(phi(x)) = psi(x) everywhere and
    is additive; both facts are verified before returning.  Uniqueness
    comes for free: the phi-image generates the completion, and theta is
    pinned there.
    """
    if group.monoid is not monoid and group.monoid != monoid:
        raise ValueError("completion does not belong to this monoid")

    if isinstance(monoid, FreeCommutativeMonoid):
        images = [target.normalize_element(psi[i] if not callable(psi) else psi(i))
                  for i in range(monoid.generator_count)]
        theta = CompletionHomomorphism(group, target, images)
        for i in range(monoid.generator_count):
            if theta(group.class_of(monoid.generator(i))) != images[i]:
                raise RuntimeError("factorization failed on a generator")
        return theta

    n = monoid.size
    if callable(psi):
        values = [target.normalize_element(psi(x)) for x in range(n)]
    elif isinstance(psi, Mapping):
        values = [target.normalize_element(psi[x]) for x in range(n)]
    else:
        values = [target.normalize_element(v) for v in psi]
        if len(values) != n:
            raise ValueError("psi must assign a value to every monoid element")
    for x in range(n):
        for y in range(n):
            if values[monoid.add(x, y)] != target.add_elements(values[x], values[y]):
                raise ValueError(
                    f"psi is not a homomorphism: fails at pair ({x}, {y})"
                )
    theta_values = {}
    for c in group.classes():
        seen = set()
        for x, y in group.class_members(c):
            seen.add(target.add_elements(values[x], target.negate_element(values[y])))
        if len(seen) != 1:
            raise RuntimeError(f"theta is not well defined on class {c}")
        theta_values[c] = seen.pop()
    theta = CompletionHomomorphism(group, target, theta_values)
    for x in range(n):
        if theta(group.class_of(x)) != values[x]:
            raise RuntimeError(f"theta does not factor psi at element {x}")
    for c1 in group.classes():
        for c2 in group.classes():
            if theta(group.add(c1, c2)) != target.add_elements(theta(c1), theta(c2)):
                raise RuntimeError("theta is not additive")
    return theta
