"""Classification of presented modules by rank profile.

Every finitely presented module over the atomic algebra decomposes into
pieces on which it is free of constant rank.  The decomposition is computed
by an idempotent-splitting elimination: ordinary Gaussian elimination, except
that a pivot entry is only invertible on its support, so the current region
splits into the part the pivot covers (rank grows, matrix shrinks) and the
residual part (retried with the same matrix).  The sorted, merged result —
disjoint pieces with strictly increasing ranks covering the whole atom set —
is a complete isomorphism invariant, here called the passport.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .boolean_core import AtomSet, Idempotent, PartitionOfUnity
from .errors import (
    ContextMismatchError,
    NotInModuleError,
    PassportMismatchError,
    RankMismatchError,
    ValidationError,
    ZeroIdempotentError,
)
from .fields import Field
from .module_space import (
    GeneratorSet,
    ModuleVector,
    fiber_rank,
    membership,
)
from .regular_algebra import AlgebraElement


@dataclass(frozen=True)
class PassportEntry:
    piece: Idempotent
    rank: int

    def __post_init__(self):
        if self.piece.is_zero:
            raise ValidationError("passport piece must be nonzero")
        if self.rank < 0:
            raise ValidationError("passport rank must be nonnegative")

    def render(self) -> str:
        return f"rank={self.rank} piece={self.piece.render()}"


@dataclass(frozen=True)
class Passport:
    entries: tuple[PassportEntry, ...]

    def __post_init__(self):
        if not isinstance(self.entries, tuple):
            object.__setattr__(self, "entries", tuple(self.entries))
        if not self.entries:
            raise ValidationError("a passport has at least one entry")
        context = self.entries[0].piece.context
        seen = 0
        prev_rank = -1
        for entry in self.entries:
            if entry.piece.context != context:
                raise ContextMismatchError("passport pieces over different atom sets")
            if entry.rank <= prev_rank:
                raise ValidationError("passport ranks must be strictly increasing")
            if seen & entry.piece.mask:
                raise ValidationError("passport pieces must be disjoint")
            seen |= entry.piece.mask
            prev_rank = entry.rank
        if seen != context.full_mask:
            raise ValidationError("passport pieces must cover the whole atom set")

    @property
    def context(self) -> AtomSet:
        return self.entries[0].piece.context

    @property
    def max_rank(self) -> int:
        return self.entries[-1].rank

    @property
    def faithful(self) -> bool:
        """No rank-0 piece: every nonzero idempotent meets the module."""
        return all(entry.rank > 0 for entry in self.entries)

    def partition(self) -> PartitionOfUnity:
        return PartitionOfUnity(tuple(entry.piece for entry in self.entries))

    def rank_at(self, atom_index: int) -> int:
        for entry in self.entries:
            if entry.piece.contains_atom(atom_index):
                return entry.rank
        raise ValidationError("atom not covered")  # unreachable on valid passports

    def render(self) -> str:
        return "\n".join(entry.render() for entry in self.entries)

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class PivotStep:
    """One split event: while processing `piece`, the entry at (row, col)
    was inverted on `pivot_support` and eliminated there."""

    piece: Idempotent
    row: int
    col: int
    pivot_support: Idempotent


@dataclass(frozen=True)
class EliminationTrace:
    start: Idempotent
    steps: tuple[PivotStep, ...]
    leaves: tuple[tuple[Idempotent, int], ...]


def _best_pivot(
    matrix: list[list[AlgebraElement]], region: Idempotent
) -> Optional[tuple[int, int, Idempotent]]:
    """Entry whose support covers the most atoms of the region; row-major ties."""
    best: Optional[tuple[int, int, Idempotent]] = None
    best_count = 0
    for i, row in enumerate(matrix):
        for j, a in enumerate(row):
            covered = a.support().meet(region)
            if covered.count > best_count:
                best = (i, j, covered)
                best_count = covered.count
    return best


def regular_eliminate(
    gens: GeneratorSet, e: Idempotent
) -> tuple[list[tuple[Idempotent, int]], EliminationTrace]:
    """Split e into pieces of constant module rank.

    Worklist of (region, matrix, rank) states.  A state with no entry alive
    on its region is a leaf.  Otherwise the chosen pivot a = M[i][j] is a
    unit on g = s(a) ∧ region: the residual region − g re-queues with the
    same matrix, while on g every other row k is replaced by
    row_k − (M[k][j]·i(a))·row_i and the pivot row and column are deleted,
    with rank credited.  Each push shrinks either the matrix or the atom
    count, so the procedure terminates; the leaves partition e and carry the
    exact per-atom rank.
    """
    if e.context != gens.context:
        raise ContextMismatchError("idempotent over a different atom set")
    if e.is_zero:
        raise ZeroIdempotentError("elimination needs a nonzero starting idempotent")
    work: list[tuple[Idempotent, list[list[AlgebraElement]], int]] = [
        (e, [list(g.coords) for g in gens.gens], 0)
    ]
    leaves: list[tuple[Idempotent, int]] = []
    steps: list[PivotStep] = []
    while work:
        region, matrix, rank = work.pop()
        pivot = _best_pivot(matrix, region)
        if pivot is None:
            leaves.append((region, rank))
            continue
        i, j, g = pivot
        steps.append(PivotStep(region, i, j, g))
        residual = region - g
        if not residual.is_zero:
            work.append((residual, matrix, rank))
        h = matrix[i][j].inversion()
        pivot_row = matrix[i]
        reduced: list[list[AlgebraElement]] = []
        for k, row in enumerate(matrix):
            if k == i:
                continue
            factor = row[j] * h
            reduced.append(
                [row[c] - factor * pivot_row[c] for c in range(len(row)) if c != j]
            )
        work.append((g, reduced, rank + 1))
    leaves.sort(key=lambda leaf: leaf[0].first_atom_index())
    trace = EliminationTrace(e, tuple(steps), tuple(leaves))
    return leaves, trace


def passport(gens: GeneratorSet) -> Passport:
    """Canonical invariant: equal-rank pieces joined, entries rank-ascending."""
    leaves, _ = regular_eliminate(gens, gens.context.full())
    by_rank: dict[int, int] = {}
    for piece, rank in leaves:
        by_rank[rank] = by_rank.get(rank, 0) | piece.mask
    entries = tuple(
        PassportEntry(Idempotent(gens.context, mask), rank)
        for rank, mask in sorted(by_rank.items())
    )
    return Passport(entries)


def atom_rank(gens: GeneratorSet, atom_index: int) -> int:
    """Classical rank of the generator fibers at one atom."""
    return fiber_rank(gens.fiber_matrix(atom_index), gens.field)


def kappa(gens: GeneratorSet, e: Idempotent) -> Optional[int]:
    """Homogeneity rank of the module restricted to e.

    0 for e = 0; the common value when the per-atom rank is constant on e;
    None when no single rank fits (the restriction is not homogeneous —
    that is an answer, not a failure).
    """
    if e.context != gens.context:
        raise ContextMismatchError("idempotent over a different atom set")
    if e.is_zero:
        return 0
    ranks = {atom_rank(gens, q) for q in e.atom_indices()}
    if len(ranks) == 1:
        return ranks.pop()
    return None


def is_strictly_homogeneous(gens: GeneratorSet, e: Idempotent) -> bool:
    """Whether every nonzero idempotent below e sees the same rank."""
    if e.context != gens.context:
        raise ContextMismatchError("idempotent over a different atom set")
    if e.is_zero:
        raise ZeroIdempotentError("strict homogeneity is asked of a nonzero idempotent")
    return kappa(gens, e) is not None


def extract_basis(
    gens: GeneratorSet, piece: Idempotent, rank: int, strategy: str = "first_fit"
) -> list[ModuleVector]:
    """A free basis of the module restricted to a constant-rank piece.

    At every atom of the piece a size-`rank` subset of generator indices
    with independent fibers is chosen greedily — ascending indices for
    first_fit, descending for last_fit, which yields the lexicographically
    first (resp. last) such subset.  Atoms sharing a selection are grouped,
    and slot i of the basis mixes the i-th smallest selected generator of
    each group.  The result is independent on the piece and every generator
    is a combination of it there.
    """
    if piece.context != gens.context:
        raise ContextMismatchError("idempotent over a different atom set")
    if piece.is_zero:
        raise ZeroIdempotentError("basis extraction needs a nonzero piece")
    if strategy not in ("first_fit", "last_fit"):
        raise ValidationError(f"unknown strategy {strategy!r}")
    field = gens.field
    m = len(gens)
    order = range(m) if strategy == "first_fit" else range(m - 1, -1, -1)
    selections: dict[tuple[int, ...], int] = {}
    for q in piece.atom_indices():
        fibers = gens.fiber_matrix(q)
        full_rank = fiber_rank(fibers, field)
        if full_rank != rank:
            raise RankMismatchError(
                f"rank {full_rank} at atom {gens.context.labels[q]}, expected {rank}"
            )
        chosen: list[int] = []
        picked: list[list] = []
        for k in order:
            if len(chosen) == rank:
                break
            if fiber_rank(picked + [fibers[k]], field) > len(picked):
                picked.append(fibers[k])
                chosen.append(k)
        key = tuple(sorted(chosen))
        selections[key] = selections.get(key, 0) | (1 << q)
    d = len(gens.context)
    n = gens.ambient_dim
    basis: list[ModuleVector] = []
    for slot in range(rank):
        grid = [[field.zero] * d for _ in range(n)]
        for key, mask in selections.items():
            source = gens.gens[key[slot]]
            for q in Idempotent(gens.context, mask).atom_indices():
                for c in range(n):
                    grid[c][q] = source.coords[c].values[q]
        basis.append(ModuleVector.from_grid(field, gens.context, grid))
    return basis


@dataclass(frozen=True)
class PiecewiseBasis:
    """Local bases over a partition: on each piece, independent and spanning."""

    partition: PartitionOfUnity
    bases: tuple[tuple[ModuleVector, ...], ...]

    def __post_init__(self):
        if len(self.bases) != len(self.partition.pieces):
            raise ValidationError("one basis per partition piece required")


def piecewise_basis(gens: GeneratorSet, strategy: str = "first_fit") -> PiecewiseBasis:
    """Passport partition together with a local basis on every piece."""
    pp = passport(gens)
    bases = tuple(
        tuple(extract_basis(gens, entry.piece, entry.rank, strategy))
        for entry in pp.entries
    )
    return PiecewiseBasis(pp.partition(), bases)


def iso_check(gens: GeneratorSet, other: GeneratorSet) -> bool:
    """Modules over one algebra are isomorphic iff their passports coincide."""
    if not gens.same_algebra(other):
        raise ContextMismatchError("presentations over different algebras")
    return passport(gens) == passport(other)


@dataclass(frozen=True)
class IsoPiece:
    """The isomorphism on one passport piece, in basis coordinates."""

    piece: Idempotent
    rank: int
    source_basis: tuple[ModuleVector, ...]
    target_basis: tuple[ModuleVector, ...]
    # row per source generator: its coordinates in source_basis on this piece
    gen_coords: tuple[tuple[AlgebraElement, ...], ...]


@dataclass(frozen=True)
class IsoMap:
    """A piecewise module isomorphism: basis-to-basis on every passport piece."""

    field: Field
    context: AtomSet
    source_ambient_dim: int
    target_ambient_dim: int
    partition: PartitionOfUnity
    pieces: tuple[IsoPiece, ...]
    generator_images: tuple[ModuleVector, ...]

    def apply(self, x: ModuleVector) -> ModuleVector:
        """Image of a source-module member; piecewise change of basis."""
        if x.field != self.field or x.context != self.context:
            raise ContextMismatchError("vector over a different algebra")
        if x.ambient_dim != self.source_ambient_dim:
            raise ContextMismatchError("vector in a different ambient space")
        total = ModuleVector.zeros(self.field, self.context, self.target_ambient_dim)
        for pc in self.pieces:
            if pc.rank == 0:
                if not x.restrict(pc.piece).is_zero:
                    raise NotInModuleError(
                        f"nonzero on rank-0 piece {pc.piece.render()}"
                    )
                continue
            local = GeneratorSet(
                self.field, self.context, self.source_ambient_dim, pc.source_basis
            )
            result = membership(x, local, pc.piece)
            if not result.contained:
                raise NotInModuleError(
                    f"not in the source module at atom {result.witness_atom}"
                )
            assert result.coefficients is not None
            for slot in range(pc.rank):
                total = total + pc.target_basis[slot].scale(result.coefficients[slot])
        return total

    def render(self) -> str:
        lines = []
        for pc in self.pieces:
            lines.append(f"piece={pc.piece.render()} rank={pc.rank}")
            for slot in range(pc.rank):
                lines.append(f"  source[{slot}]={pc.source_basis[slot].render()}")
                lines.append(f"  target[{slot}]={pc.target_basis[slot].render()}")
        for k, image in enumerate(self.generator_images):
            lines.append(f"image[{k}]={image.render()}")
        return "\n".join(lines)


def build_isomorphism(gens: GeneratorSet, other: GeneratorSet) -> IsoMap:
    """Explicit isomorphism between two presentations with equal passports.

    On each passport piece a first_fit basis is extracted on both sides and
    matched slot by slot; the images of the source generators are assembled
    across pieces for independent verification.
    """
    if not gens.same_algebra(other):
        raise ContextMismatchError("presentations over different algebras")
    source_pp = passport(gens)
    if source_pp != passport(other):
        raise PassportMismatchError("passports differ; modules are not isomorphic")
    field, context = gens.field, gens.context
    pieces: list[IsoPiece] = []
    for entry in source_pp.entries:
        source_basis = tuple(extract_basis(gens, entry.piece, entry.rank))
        target_basis = tuple(extract_basis(other, entry.piece, entry.rank))
        if entry.rank == 0:
            coords: tuple[tuple[AlgebraElement, ...], ...] = tuple(
                () for _ in gens.gens
            )
        else:
            local = GeneratorSet(field, context, gens.ambient_dim, source_basis)
            rows = []
            for g in gens.gens:
                result = membership(g, local, entry.piece)
                # the basis spans the module on its piece, so this cannot fail
                assert result.contained and result.coefficients is not None
                rows.append(result.coefficients)
            coords = tuple(rows)
        pieces.append(
            IsoPiece(entry.piece, entry.rank, source_basis, target_basis, coords)
        )
    images = []
    for k in range(len(gens.gens)):
        image = ModuleVector.zeros(field, context, other.ambient_dim)
        for pc in pieces:
            for slot in range(pc.rank):
                image = image + pc.target_basis[slot].scale(pc.gen_coords[k][slot])
        images.append(image)
    return IsoMap(
        field,
        context,
        gens.ambient_dim,
        other.ambient_dim,
        source_pp.partition(),
        tuple(pieces),
        tuple(images),
    )


@dataclass(frozen=True)
class FinitelyDimensionalReport:
    passport: Passport
    decomposition: str
    independence_bound: int
    faithful: bool


def finitely_dimensional_report(gens: GeneratorSet) -> FinitelyDimensionalReport:
    """Product shape of the module: one free factor per nonzero-rank piece."""
    pp = passport(gens)
    factors = []
    for entry in pp.entries:
        if entry.rank == 0:
            continue
        if entry.piece.is_full:
            factors.append(f"A^{entry.rank}")
        else:
            labels = ",".join(entry.piece.labels())
            factors.append("A_{" + labels + "}^" + str(entry.rank))
    decomposition = " × ".join(factors) if factors else "0 module"
    return FinitelyDimensionalReport(pp, decomposition, pp.max_rank, pp.faithful)
