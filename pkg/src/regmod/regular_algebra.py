"""The laterally complete commutative regular algebra of K-valued atom functions.

Elements are dense tuples of field scalars aligned with the atom order.  All
operations are pointwise and exact; the inversion of an element inverts it
where it is nonzero and vanishes elsewhere, which makes it total and gives
every element the regularity witness a*a*i(a) == a.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .boolean_core import AtomSet, Idempotent, PartitionOfUnity
from .errors import ContextMismatchError, LengthMismatchError, ValidationError
from .fields import Field, Scalar


@dataclass(frozen=True)
class AlgebraElement:
    """A K-valued function on the atoms, in canonical scalar form."""

    field: Field
    context: AtomSet
    values: tuple[Scalar, ...]

    def __post_init__(self):
        if not isinstance(self.values, tuple):
            object.__setattr__(self, "values", tuple(self.values))
        if len(self.values) != len(self.context):
            raise LengthMismatchError(
                f"{len(self.values)} values for {len(self.context)} atoms"
            )
        for v in self.values:
            self.field.check(v)

    @classmethod
    def zeros(cls, field: Field, context: AtomSet) -> "AlgebraElement":
        return cls(field, context, (field.zero,) * len(context))

    @classmethod
    def constant(cls, field: Field, context: AtomSet, value: Scalar) -> "AlgebraElement":
        return cls(field, context, (value,) * len(context))

    @classmethod
    def one(cls, field: Field, context: AtomSet) -> "AlgebraElement":
        return cls.constant(field, context, field.one)

    @classmethod
    def from_values(cls, field: Field, context: AtomSet, values: Iterable) -> "AlgebraElement":
        """Build from arbitrary raw values, coercing each into canonical form."""
        return cls(field, context, tuple(field.coerce(v) for v in values))

    @classmethod
    def from_idempotent(cls, field: Field, e: Idempotent) -> "AlgebraElement":
        """The characteristic element of e: one on its atoms, zero elsewhere."""
        return cls(
            field,
            e.context,
            tuple(field.one if e.contains_atom(i) else field.zero for i in range(len(e.context))),
        )

    def _require_same_context(self, other: "AlgebraElement") -> None:
        if self.field != other.field or self.context != other.context:
            raise ContextMismatchError("elements over different algebras")

    @property
    def is_zero(self) -> bool:
        zero = self.field.zero
        return all(v == zero for v in self.values)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._require_same_context(other)
        f = self.field
        return AlgebraElement(f, self.context, tuple(f.add(a, b) for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._require_same_context(other)
        f = self.field
        return AlgebraElement(f, self.context, tuple(f.sub(a, b) for a, b in zip(self.values, other.values)))

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._require_same_context(other)
        f = self.field
        return AlgebraElement(f, self.context, tuple(f.mul(a, b) for a, b in zip(self.values, other.values)))

    def __neg__(self) -> "AlgebraElement":
        f = self.field
        return AlgebraElement(f, self.context, tuple(f.neg(a) for a in self.values))

    def scale(self, scalar: Scalar) -> "AlgebraElement":
        f = self.field
        f.check(scalar)
        return AlgebraElement(f, self.context, tuple(f.mul(scalar, a) for a in self.values))

    def inversion(self) -> "AlgebraElement":
        """Pointwise inverse on the support, zero off it; an involution."""
        f = self.field
        zero = f.zero
        return AlgebraElement(
            f, self.context, tuple(zero if v == zero else f.inv(v) for v in self.values)
        )

    def support(self) -> Idempotent:
        zero = self.field.zero
        mask = 0
        for i, v in enumerate(self.values):
            if v != zero:
                mask |= 1 << i
        return Idempotent(self.context, mask)

    def annihilator(self) -> Idempotent:
        """Largest idempotent killing the element; complement of the support."""
        return self.support().complement()

    def restrict(self, e: Idempotent) -> "AlgebraElement":
        if e.context != self.context:
            raise ContextMismatchError("idempotent over a different atom set")
        zero = self.field.zero
        return AlgebraElement(
            self.field,
            self.context,
            tuple(v if e.contains_atom(i) else zero for i, v in enumerate(self.values)),
        )

    def step_form(self) -> "StepForm":
        """Group atoms carrying equal nonzero values into disjoint pieces.

        Terms are ordered by the first atom index of their piece, which makes
        the representation canonical.
        """
        zero = self.field.zero
        by_value: dict[Scalar, int] = {}
        for i, v in enumerate(self.values):
            if v != zero:
                by_value[v] = by_value.get(v, 0) | (1 << i)
        terms = tuple(
            StepTerm(value, Idempotent(self.context, mask))
            for value, mask in sorted(
                by_value.items(), key=lambda item: (item[1] & -item[1]).bit_length()
            )
        )
        return StepForm(terms)

    def render(self) -> str:
        return "(" + ",".join(self.field.render(v) for v in self.values) + ")"

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class StepTerm:
    value: Scalar
    piece: Idempotent


@dataclass(frozen=True)
class StepForm:
    """A finite sum of scalar multiples of pairwise disjoint idempotents."""

    terms: tuple[StepTerm, ...]

    def __post_init__(self):
        seen_values = set()
        seen_mask = 0
        for term in self.terms:
            if term.piece.is_zero:
                raise ValidationError("step pieces must be nonzero")
            if term.value == 0:
                raise ValidationError("step values must be nonzero")
            if term.value in seen_values:
                raise ValidationError("step values must be pairwise distinct")
            if seen_mask & term.piece.mask:
                raise ValidationError("step pieces must be pairwise disjoint")
            seen_values.add(term.value)
            seen_mask |= term.piece.mask

    def to_element(self, field: Field, context: AtomSet) -> AlgebraElement:
        acc = AlgebraElement.zeros(field, context)
        for term in self.terms:
            acc = acc + AlgebraElement.from_idempotent(field, term.piece).scale(term.value)
        return acc


def arith(op: str, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def inversion(a: AlgebraElement) -> AlgebraElement:
    return a.inversion()


def support(a: AlgebraElement) -> Idempotent:
    return a.support()


def step_form(a: AlgebraElement) -> StepForm:
    return a.step_form()


def restrict(a: AlgebraElement, e: Idempotent) -> AlgebraElement:
    return a.restrict(e)


def mix_scalars(p: PartitionOfUnity, elements: Sequence[AlgebraElement]) -> AlgebraElement:
    """The unique element agreeing with elements[i] on the i-th piece."""
    if len(elements) != len(p.pieces):
        raise LengthMismatchError(
            f"{len(elements)} elements for {len(p.pieces)} partition pieces"
        )
    first = elements[0]
    for a in elements:
        first._require_same_context(a)
    if p.context != first.context:
        raise ContextMismatchError("partition over a different atom set")
    values = list(AlgebraElement.zeros(first.field, first.context).values)
    for piece, a in zip(p.pieces, elements):
        for i in piece.atom_indices():
            values[i] = a.values[i]
    return AlgebraElement(first.field, first.context, tuple(values))
