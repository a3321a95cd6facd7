"""Vectors over the algebra and finitely presented submodules of its powers.

A module is presented by finitely many generator vectors; the presented
module is the set of all mixings of algebra-linear combinations of the
generators.  Because the atom set is finite, every question about such a
module splits into one ordinary K-linear-algebra question per atom, and the
answers are reassembled by mixing over partitions of the atom set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .boolean_core import AtomSet, Idempotent, PartitionOfUnity
from .errors import (
    ContextMismatchError,
    LengthMismatchError,
    NotFaithfulError,
    ZeroIdempotentError,
)
from .fields import Field, Scalar
from .regular_algebra import AlgebraElement, mix_scalars


@dataclass(frozen=True)
class ModuleVector:
    """An n-tuple of algebra elements over one shared (field, atom set)."""

    coords: tuple[AlgebraElement, ...]

    def __post_init__(self):
        if not isinstance(self.coords, tuple):
            object.__setattr__(self, "coords", tuple(self.coords))
        if not self.coords:
            raise LengthMismatchError("a module vector needs at least one coordinate")
        first = self.coords[0]
        for c in self.coords[1:]:
            if c.field != first.field or c.context != first.context:
                raise ContextMismatchError("coordinates over different algebras")

    @property
    def field(self) -> Field:
        return self.coords[0].field

    @property
    def context(self) -> AtomSet:
        return self.coords[0].context

    @property
    def ambient_dim(self) -> int:
        return len(self.coords)

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.coords)

    @classmethod
    def zeros(cls, field: Field, context: AtomSet, ambient_dim: int) -> "ModuleVector":
        return cls((AlgebraElement.zeros(field, context),) * ambient_dim)

    @classmethod
    def unit(cls, field: Field, context: AtomSet, ambient_dim: int, position: int) -> "ModuleVector":
        """Standard basis vector: one at the given coordinate, zero elsewhere."""
        one = AlgebraElement.one(field, context)
        zero = AlgebraElement.zeros(field, context)
        return cls(tuple(one if c == position else zero for c in range(ambient_dim)))

    @classmethod
    def from_grid(cls, field: Field, context: AtomSet, grid: Sequence[Sequence]) -> "ModuleVector":
        """Build from raw per-coordinate value rows (coordinate-major)."""
        return cls(tuple(AlgebraElement.from_values(field, context, row) for row in grid))

    def _require_same_space(self, other: "ModuleVector") -> None:
        if (
            self.field != other.field
            or self.context != other.context
            or self.ambient_dim != other.ambient_dim
        ):
            raise ContextMismatchError("vectors in different module spaces")

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        self._require_same_space(other)
        return ModuleVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "ModuleVector") -> "ModuleVector":
        self._require_same_space(other)
        return ModuleVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def scale(self, a: AlgebraElement) -> "ModuleVector":
        return ModuleVector(tuple(a * c for c in self.coords))

    def restrict(self, e: Idempotent) -> "ModuleVector":
        return ModuleVector(tuple(c.restrict(e) for c in self.coords))

    def support(self) -> Idempotent:
        mask = 0
        for c in self.coords:
            mask |= c.support().mask
        return Idempotent(self.context, mask)

    def fiber(self, atom_index: int) -> tuple[Scalar, ...]:
        """The K^n value of the vector at one atom."""
        return tuple(c.values[atom_index] for c in self.coords)

    def render(self) -> str:
        return "[" + "; ".join(",".join(c.field.render(v) for v in c.values) for c in self.coords) + "]"

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class GeneratorSet:
    """A finite presentation: the module of all mixings of combinations of gens."""

    field: Field
    context: AtomSet
    ambient_dim: int
    gens: tuple[ModuleVector, ...]

    def __post_init__(self):
        if not isinstance(self.gens, tuple):
            object.__setattr__(self, "gens", tuple(self.gens))
        if self.ambient_dim < 1:
            raise LengthMismatchError("ambient dimension must be at least 1")
        for g in self.gens:
            if g.field != self.field or g.context != self.context:
                raise ContextMismatchError("generator over a different algebra")
            if g.ambient_dim != self.ambient_dim:
                raise LengthMismatchError("generator with wrong ambient dimension")

    @classmethod
    def from_grids(
        cls, field: Field, context: AtomSet, ambient_dim: int, grids: Sequence[Sequence[Sequence]]
    ) -> "GeneratorSet":
        gens = tuple(ModuleVector.from_grid(field, context, grid) for grid in grids)
        return cls(field, context, ambient_dim, gens)

    def __len__(self) -> int:
        return len(self.gens)

    def fiber_matrix(self, atom_index: int) -> list[list[Scalar]]:
        """Generator fibers at one atom, as rows of an m x n matrix over K."""
        return [list(g.fiber(atom_index)) for g in self.gens]

    def same_algebra(self, other: "GeneratorSet") -> bool:
        return self.field == other.field and self.context == other.context


# ---------------------------------------------------------------------------
# Per-atom exact linear algebra.  Partial pivoting picks the first row with a
# nonzero entry; exact arithmetic needs nothing smarter and the fixed rule
# keeps results deterministic.


def solve_linear(rows: list[list[Scalar]], rhs: list[Scalar], field: Field) -> Optional[list[Scalar]]:
    """One solution of rows . x = rhs (free variables zero), or None."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = [list(r) for r in rows]
    b = list(rhs)
    zero = field.zero
    pivots: list[tuple[int, int]] = []
    row = 0
    for col in range(n):
        pivot = next((r for r in range(row, m) if a[r][col] != zero), None)
        if pivot is None:
            continue
        if pivot != row:
            a[row], a[pivot] = a[pivot], a[row]
            b[row], b[pivot] = b[pivot], b[row]
        inv = field.inv(a[row][col])
        a[row] = [field.mul(inv, v) for v in a[row]]
        b[row] = field.mul(inv, b[row])
        for r in range(m):
            if r != row and a[r][col] != zero:
                factor = a[r][col]
                a[r] = [field.sub(v, field.mul(factor, w)) for v, w in zip(a[r], a[row])]
                b[r] = field.sub(b[r], field.mul(factor, b[row]))
        pivots.append((row, col))
        row += 1
        if row == m:
            break
    for r in range(row, m):
        if b[r] != zero:
            return None
    x = [zero] * n
    for r, c in pivots:
        x[c] = b[r]
    return x


def kernel_sample(rows: list[list[Scalar]], field: Field) -> Optional[list[Scalar]]:
    """A nonzero x with rows . x = 0, or None when the kernel is trivial."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    if n == 0:
        return None
    a = [list(r) for r in rows]
    zero, one = field.zero, field.one
    pivot_cols: list[int] = []
    row = 0
    for col in range(n):
        pivot = next((r for r in range(row, m) if a[r][col] != zero), None)
        if pivot is None:
            continue
        if pivot != row:
            a[row], a[pivot] = a[pivot], a[row]
        inv = field.inv(a[row][col])
        a[row] = [field.mul(inv, v) for v in a[row]]
        for r in range(m):
            if r != row and a[r][col] != zero:
                factor = a[r][col]
                a[r] = [field.sub(v, field.mul(factor, w)) for v, w in zip(a[r], a[row])]
        pivot_cols.append(col)
        row += 1
        if row == m:
            break
    free = next((c for c in range(n) if c not in pivot_cols), None)
    if free is None:
        return None
    x = [zero] * n
    x[free] = one
    for r, c in enumerate(pivot_cols):
        x[c] = field.neg(a[r][free])
    return x


def fiber_rank(rows: list[list[Scalar]], field: Field) -> int:
    """Rank of a small matrix over K by plain elimination."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = [list(r) for r in rows]
    zero = field.zero
    rank = 0
    for col in range(n):
        pivot = next((r for r in range(rank, m) if a[r][col] != zero), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        inv = field.inv(a[rank][col])
        a[rank] = [field.mul(inv, v) for v in a[rank]]
        for r in range(rank + 1, m):
            if a[r][col] != zero:
                factor = a[r][col]
                a[r] = [field.sub(v, field.mul(factor, w)) for v, w in zip(a[r], a[rank])]
        rank += 1
        if rank == m:
            break
    return rank


# ---------------------------------------------------------------------------
# Module operations.


def support_vector(x: ModuleVector) -> Idempotent:
    return x.support()


def mix_vectors(p: PartitionOfUnity, xs: Sequence[ModuleVector]) -> ModuleVector:
    """The unique vector agreeing with xs[i] on the i-th partition piece."""
    if len(xs) != len(p.pieces):
        raise LengthMismatchError(f"{len(xs)} vectors for {len(p.pieces)} partition pieces")
    first = xs[0]
    for x in xs:
        first._require_same_space(x)
    coords = tuple(
        mix_scalars(p, [x.coords[c] for x in xs]) for c in range(first.ambient_dim)
    )
    return ModuleVector(coords)


def combine(gens: Sequence[ModuleVector], coefficients: Sequence[AlgebraElement]) -> ModuleVector:
    """The algebra-linear combination sum(coefficients[k] * gens[k])."""
    if len(gens) != len(coefficients):
        raise LengthMismatchError("one coefficient per generator required")
    acc = None
    for g, a in zip(gens, coefficients):
        term = g.scale(a)
        acc = term if acc is None else acc + term
    if acc is None:
        raise LengthMismatchError("cannot combine an empty family without a target space")
    return acc


@dataclass(frozen=True)
class MembershipResult:
    contained: bool
    coefficients: Optional[tuple[AlgebraElement, ...]]
    witness_atom: Optional[str]

    def __bool__(self) -> bool:
        return self.contained


def membership(x: ModuleVector, gens: GeneratorSet, e: Idempotent) -> MembershipResult:
    """Decide whether x agrees on e with a member of the presented module.

    Atom by atom inside e the fiber of x must be a K-combination of the
    generator fibers; the per-atom solutions are assembled into coefficient
    elements that reproduce x on e (and vanish off it).
    """
    if gens.field != x.field or gens.context != x.context or gens.ambient_dim != x.ambient_dim:
        raise ContextMismatchError("vector and presentation in different spaces")
    if e.context != x.context:
        raise ContextMismatchError("idempotent over a different atom set")
    field = x.field
    m = len(gens)
    coeff_values = [[field.zero] * len(x.context) for _ in range(m)]
    for q in e.atom_indices():
        fibers = gens.fiber_matrix(q)
        # unknowns: one coefficient per generator; equations: one per coordinate
        columns = [[fibers[k][l] for k in range(m)] for l in range(x.ambient_dim)]
        solution = solve_linear(columns, list(x.fiber(q)), field)
        if solution is None:
            return MembershipResult(False, None, x.context.labels[q])
        for k in range(m):
            coeff_values[k][q] = solution[k]
    coefficients = tuple(
        AlgebraElement(field, x.context, tuple(row)) for row in coeff_values
    )
    return MembershipResult(True, coefficients, None)


@dataclass(frozen=True)
class IndependenceResult:
    independent: bool
    witness_atom: Optional[str]
    relation: Optional[tuple[Scalar, ...]]

    def __bool__(self) -> bool:
        return self.independent


def independence_test(gens: GeneratorSet, e: Idempotent) -> IndependenceResult:
    """Test algebra-linear independence of the generators restricted to e.

    Over an atomic algebra this holds exactly when the generator fibers are
    K-linearly independent at every atom of e.  A failure is reported with
    the first bad atom and a nontrivial K-relation among the fibers there;
    multiplying the relation by that atom's idempotent lifts it to a
    nontrivial algebra-linear relation.
    """
    if e.context != gens.context:
        raise ContextMismatchError("idempotent over a different atom set")
    if e.is_zero:
        raise ZeroIdempotentError("independence is tested on a nonzero idempotent")
    field = gens.field
    m = len(gens)
    for q in e.atom_indices():
        if m == 0:
            continue
        fibers = gens.fiber_matrix(q)
        columns = [[fibers[k][l] for k in range(m)] for l in range(gens.ambient_dim)]
        relation = kernel_sample(columns, field)
        if relation is not None:
            return IndependenceResult(False, gens.context.labels[q], tuple(relation))
    return IndependenceResult(True, None, None)


def full_support_element(gens: GeneratorSet) -> ModuleVector:
    """A member of the module whose support is the whole atom set.

    Each atom is assigned to the first generator that is nonzero there; the
    resulting blocks partition the atom set and mixing the chosen generators
    over them yields a full-support element.  Atoms where every generator
    vanishes make the presentation unfaithful and are reported as a failure.
    """
    context = gens.context
    choice: list[Optional[int]] = [None] * len(context)
    for k, g in enumerate(gens.gens):
        for q in g.support().atom_indices():
            if choice[q] is None:
                choice[q] = k
    dead = tuple(context.labels[q] for q in range(len(context)) if choice[q] is None)
    if dead:
        raise NotFaithfulError(dead)
    used = sorted({k for k in choice if k is not None})
    pieces = tuple(
        Idempotent(context, sum(1 << q for q in range(len(context)) if choice[q] == k))
        for k in used
    )
    partition = PartitionOfUnity(pieces)
    return mix_vectors(partition, [gens.gens[k] for k in used])


def split_product(x: ModuleVector, p: PartitionOfUnity) -> list[ModuleVector]:
    """Localize x to every partition piece; inverse of reassemble."""
    if p.context != x.context:
        raise ContextMismatchError("partition over a different atom set")
    return [x.restrict(piece) for piece in p.pieces]


def reassemble(p: PartitionOfUnity, parts: Sequence[ModuleVector]) -> ModuleVector:
    """Glue localized parts back together by mixing."""
    return mix_vectors(p, parts)
