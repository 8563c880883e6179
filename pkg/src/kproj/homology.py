"""Chain complexes of free Z-modules and the exact-sequence toolkit.

Homology and cohomology are computed through Smith reduction of the
boundary matrices.  Exact sequences are carried as group presentations
(generators plus a relation matrix) together with maps on generators, so
image-equals-kernel questions reduce to integer lattice membership.  The
module also houses the Five Lemma checker and the splitting rule for
extensions with free quotient.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import (
    FgAbelianGroup,
    IntegerMatrix,
    cokernel,
    kernel_basis,
    solve_integer,
)


class FiveLemmaHypothesisError(ValueError):
    """A Five Lemma hypothesis (commutation, exactness, outer iso) failed."""


class FiveLemmaContradictionError(RuntimeError):
    """All hypotheses verified but the middle map is not an isomorphism.

    A ladder triggering this would contradict the Five Lemma, so it points
    at a defect in the checking machinery itself.
    """


# ----------------------------------------------------------------------
# chain complexes
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class ChainComplex:
    """Finite chain complex of free Z-modules.

    ranks[k] is the rank of the degree-k chain group; boundaries[k-1] is
    the matrix of the boundary map in degree k (shape ranks[k-1] x
    ranks[k]).  The constructor rejects shape mismatches and any pair of
    consecutive boundaries whose composite is nonzero.
    """

    ranks: tuple[int, ...]
    boundaries: tuple[IntegerMatrix, ...] = ()

    def __post_init__(self):
        if not self.ranks:
            raise ValueError("a complex needs at least degree 0")
        if any(r < 0 for r in self.ranks):
            raise ValueError("ranks must be nonnegative")
        if len(self.boundaries) != len(self.ranks) - 1:
            raise ValueError("expected one boundary matrix per degree above 0")
        for k in range(1, len(self.ranks)):
            b = self.boundaries[k - 1]
            if b.rows != self.ranks[k - 1] or b.cols != self.ranks[k]:
                raise ValueError(f"boundary in degree {k} has the wrong shape")
        for k in range(2, len(self.ranks)):
            if not (self.boundaries[k - 2] @ self.boundaries[k - 1]).is_zero():
                raise ValueError(f"boundary composite in degree {k} is nonzero")

    @classmethod
    def with_zero_boundaries(cls, ranks) -> "ChainComplex":
        ranks = tuple(ranks)
        bnds = tuple(IntegerMatrix.zero(ranks[k - 1], ranks[k])
                     for k in range(1, len(ranks)))
        return cls(ranks, bnds)

    @property
    def top(self) -> int:
        return len(self.ranks) - 1

    def boundary(self, k: int) -> IntegerMatrix:
        """Boundary map out of degree k; zero maps off the ends."""
        if k <= 0:
            return IntegerMatrix.zero(0, self.ranks[0])
        if k == self.top + 1:
            return IntegerMatrix.zero(self.ranks[self.top], 0)
        if k > self.top + 1:
            raise ValueError("degree out of range")
        return self.boundaries[k - 1]


def homology(c: ChainComplex, k: int) -> FgAbelianGroup:
    """Degree-k homology ker(boundary_k)/im(boundary_{k+1}).

    Degrees above the top of the complex have no chains and give the
    trivial group; negative degrees are rejected.
    """
    if k < 0:
        raise ValueError("degree out of range")
    if k > c.top:
        return FgAbelianGroup.trivial()
    basis = kernel_basis(c.boundary(k))
    image = solve_integer(basis, c.boundary(k + 1))
    if image is None:
        raise RuntimeError("boundary image escaped the kernel; complex invariant broken")
    return cokernel(image.transpose())


def dual_complex(c: ChainComplex) -> ChainComplex:
    """Dual (cochain) complex: reversed ranks, transposed boundaries."""
    top = c.top
    ranks = tuple(reversed(c.ranks))
    bnds = tuple(c.boundary(top - j + 1).transpose() for j in range(1, top + 1))
    return ChainComplex(ranks, bnds)


def cohomology(c: ChainComplex, k: int) -> FgAbelianGroup:
    """Degree-k cohomology, i.e. homology of the dualized complex."""
    if k < 0:
        raise ValueError("degree out of range")
    if k > c.top:
        return FgAbelianGroup.trivial()
    return homology(dual_complex(c), c.top - k)


def cpn_complex(n: int) -> ChainComplex:
    """Cellular chain complex of complex projective n-space.

    One cell in each even dimension up to 2n and none in odd dimensions;
    every boundary map has a trivial domain or codomain, so all of them
    are zero.  This is encoded explicitly rather than tabulated so that
    the homology really is computed.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    ranks = tuple(1 if k % 2 == 0 else 0 for k in range(2 * n + 1))
    return ChainComplex.with_zero_boundaries(ranks)


def sphere_complex(m: int) -> ChainComplex:
    """Minimal cell structure of the m-sphere: one 0-cell and one m-cell."""
    if m < 1:
        raise ValueError("sphere dimension must be at least 1")
    ranks = (1,) + (0,) * (m - 1) + (1,)
    return ChainComplex.with_zero_boundaries(ranks)


# ----------------------------------------------------------------------
# presented groups and exact sequences
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class GroupPresentation:
    """Abelian group given by generators and a relation matrix.

    Each row of relations is a relation among the generators.  Maps
    between presented groups are matrices on generator coordinates, so
    sequences keep enough data for exactness checks; the isomorphism
    class is recovered on demand via normal_form().
    """

    generators: int
    relations: IntegerMatrix

    def __post_init__(self):
        if self.generators < 0:
            raise ValueError("generator count must be nonnegative")
        if self.relations.cols != self.generators:
            raise ValueError("relation matrix width must equal the generator count")

    @classmethod
    def free(cls, rank: int) -> "GroupPresentation":
        return cls(rank, IntegerMatrix.zero(0, rank))

    @classmethod
    def trivial(cls) -> "GroupPresentation":
        return cls(0, IntegerMatrix.zero(0, 0))

    @classmethod
    def from_group(cls, g: FgAbelianGroup) -> "GroupPresentation":
        gens = g.free_rank + len(g.torsion)
        rows = []
        for i, t in enumerate(g.torsion):
            row = [0] * gens
            row[g.free_rank + i] = t
            rows.append(row)
        return cls(gens, IntegerMatrix.from_rows(rows, cols=gens))

    def normal_form(self) -> FgAbelianGroup:
        return cokernel(self.relations)


def _in_relation_span(relations: IntegerMatrix, columns: IntegerMatrix) -> bool:
    """True iff every column of `columns` lies in the row span of relations."""
    return solve_integer(relations.transpose(), columns) is not None


def _preimage_generators(f: IntegerMatrix, dst_relations: IntegerMatrix) -> IntegerMatrix:
    """Generators of the lattice {x : f @ x lies in the row span of dst_relations}.

    Solutions (x, y) of f x = R^T y form the kernel of [f | -R^T]; the
    x-parts of a kernel basis generate the preimage lattice.
    """
    block = f.hstack(-dst_relations.transpose())
    kb = kernel_basis(block)
    rows = [kb.row(i) for i in range(f.cols)]
    return IntegerMatrix.from_rows(rows, cols=kb.cols)


@dataclass(frozen=True)
class GroupSequence:
    """A finite sequence of presented groups with maps on generators.

    maps[i] sends groups[i] to groups[i+1].  Construction verifies the
    shapes and that each map carries relations into relations, i.e. is a
    well-defined homomorphism of the presented groups.
    """

    groups: tuple[GroupPresentation, ...]
    maps: tuple[IntegerMatrix, ...]

    def __post_init__(self):
        if len(self.maps) != len(self.groups) - 1:
            raise ValueError("expected one map between consecutive groups")
        for i, f in enumerate(self.maps):
            src, dst = self.groups[i], self.groups[i + 1]
            if f.rows != dst.generators or f.cols != src.generators:
                raise ValueError(f"map {i} has the wrong shape")
            if src.relations.rows and not _in_relation_span(
                dst.relations, f @ src.relations.transpose()
            ):
                raise ValueError(f"map {i} does not preserve relations")

    def __len__(self) -> int:
        return len(self.groups)


def is_exact_at(s: GroupSequence, i: int) -> bool:
    """Exactness im(maps[i-1]) == ker(maps[i]) at an inner position.

    Both inclusions are decided by integer lattice membership: the image
    lattice is spanned by the incoming map's columns together with the
    relations; the kernel lattice is the preimage of the outgoing map's
    target relations.
    """
    if not 1 <= i <= len(s) - 2:
        raise ValueError("position out of range")
    g = s.groups[i]
    incoming, outgoing = s.maps[i - 1], s.maps[i]
    relations_t = g.relations.transpose()
    image = incoming.hstack(relations_t)
    kernel = _preimage_generators(outgoing, s.groups[i + 1].relations).hstack(relations_t)
    return (solve_integer(kernel, image) is not None
            and solve_integer(image, kernel) is not None)


def induced_map_is_isomorphism(f: IntegerMatrix,
                               src: GroupPresentation,
                               dst: GroupPresentation) -> bool:
    """Isomorphism test for the homomorphism induced by f on presented groups."""
    if f.rows != dst.generators or f.cols != src.generators:
        raise ValueError("map has the wrong shape")
    if src.relations.rows and not _in_relation_span(
        dst.relations, f @ src.relations.transpose()
    ):
        raise ValueError("map does not preserve relations")
    # surjective: columns of f plus dst relations span all of Z^generators
    spanning = f.hstack(dst.relations.transpose())
    if not cokernel(spanning.transpose()).is_trivial:
        return False
    # injective: the preimage of dst's relations is contained in src's relations
    pre = _preimage_generators(f, dst.relations)
    if pre.cols and not _in_relation_span(src.relations, pre):
        return False
    return True


# ----------------------------------------------------------------------
# the Five Lemma checker
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class Ladder:
    """Two five-term sequences joined by vertical maps.

    Shapes and well-definedness of the verticals are enforced here;
    commutation of the squares is a hypothesis verified (with diagnostics)
    by five_lemma_check.
    """

    top: GroupSequence
    bottom: GroupSequence
    verticals: tuple[IntegerMatrix, ...]

    def __post_init__(self):
        if len(self.top) != 5 or len(self.bottom) != 5 or len(self.verticals) != 5:
            raise ValueError("a ladder needs five columns")
        for i, f in enumerate(self.verticals):
            src, dst = self.top.groups[i], self.bottom.groups[i]
            if f.rows != dst.generators or f.cols != src.generators:
                raise ValueError(f"vertical {i} has the wrong shape")
            if src.relations.rows and not _in_relation_span(
                dst.relations, f @ src.relations.transpose()
            ):
                raise ValueError(f"vertical {i} does not preserve relations")


def five_lemma_check(ladder: Ladder) -> bool:
    """Verify the Five Lemma hypotheses AND its conclusion on a ladder.

    Returns True when every square commutes, both rows are exact at the
    three inner positions, the four outer verticals are isomorphisms, and
    the middle vertical is an isomorphism too.  A failing hypothesis
    raises FiveLemmaHypothesisError naming the defect.  If the hypotheses
    all hold but the middle map fails, FiveLemmaContradictionError is
    raised: such a ladder cannot exist, so the checker itself must be at
    fault.
    """
    for i in range(4):
        diff = (ladder.verticals[i + 1] @ ladder.top.maps[i]
                - ladder.bottom.maps[i] @ ladder.verticals[i])
        if not _in_relation_span(ladder.bottom.groups[i + 1].relations, diff):
            raise FiveLemmaHypothesisError(f"square {i} does not commute")
    for name, row in (("top", ladder.top), ("bottom", ladder.bottom)):
        for i in (1, 2, 3):
            if not is_exact_at(row, i):
                raise FiveLemmaHypothesisError(f"{name} row is not exact at position {i}")
    for i in (0, 1, 3, 4):
        if not induced_map_is_isomorphism(
            ladder.verticals[i], ladder.top.groups[i], ladder.bottom.groups[i]
        ):
            raise FiveLemmaHypothesisError(f"vertical {i} is not an isomorphism")
    if not induced_map_is_isomorphism(
        ladder.verticals[2], ladder.top.groups[2], ladder.bottom.groups[2]
    ):
        raise FiveLemmaContradictionError(
            "hypotheses verified but the middle vertical is not an isomorphism"
        )
    return True


def split_free_extension(sub: FgAbelianGroup, quot: FgAbelianGroup) -> FgAbelianGroup:
    """Middle group of an extension of quot by sub when quot is free.

    A free quotient admits no nontrivial extensions, so the middle term is
    forced to be the direct sum.  Quotients with torsion are rejected: the
    extension need not split and deciding it is out of scope here.
    """
    if quot.torsion:
        raise ValueError("quotient must be free for the extension to split")
    return sub.direct_sum(quot)


# ----------------------------------------------------------------------
# serialization: ranks line, then one matrix block per boundary
# ----------------------------------------------------------------------


def complex_to_text(c: ChainComplex) -> str:
    blocks = [" ".join(str(r) for r in c.ranks)]
    for k in range(1, c.top + 1):
        blocks.append(c.boundary(k).to_text().rstrip("\n"))
    return "\n\n".join(blocks) + "\n"


def complex_from_text(text: str) -> ChainComplex:
    lines = text.splitlines()
    if not lines:
        raise ValueError("empty complex text")
    ranks = tuple(int(t) for t in lines[0].split())
    tokens = " ".join(lines[1:]).split()
    pos = 0
    boundaries = []
    for _ in range(1, len(ranks)):
        rows, cols = int(tokens[pos]), int(tokens[pos + 1])
        pos += 2
        body = tokens[pos:pos + rows * cols]
        pos += rows * cols
        boundaries.append(IntegerMatrix(rows, cols, tuple(int(t) for t in body)))
    if pos != len(tokens):
        raise ValueError("trailing data after the last boundary block")
    return ChainComplex(ranks, tuple(boundaries))
