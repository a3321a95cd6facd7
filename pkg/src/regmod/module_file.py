"""JSON presentation files: the on-disk form of a GeneratorSet.

Layout: an object with `field` ({"kind":"fp","p":<prime>} or
{"kind":"rational"}), `atoms` (unique labels), `ambient_dim`, and
`generators` — m arrays of n arrays of |Δ| scalar strings.  Scalars are
strings, never JSON numbers, so exact values survive any tooling.

Structural problems (bad JSON, wrong types, missing keys) raise ParseError;
semantic ones (dimensions, duplicate labels, non-prime modulus, scalars that
do not parse in the declared field) raise ValidationError.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .boolean_core import AtomSet
from .errors import ParseError, ValidationError
from .fields import Field, PrimeField, RationalField
from .module_space import GeneratorSet, ModuleVector


@dataclass(frozen=True)
class ModuleFile:
    field: Field
    atoms: tuple[str, ...]
    ambient_dim: int
    generators: tuple[tuple[tuple[str, ...], ...], ...]

    def to_generator_set(self) -> GeneratorSet:
        context = AtomSet(self.atoms)
        gens = []
        for i, grid in enumerate(self.generators):
            rows = []
            for j, row in enumerate(grid):
                parsed = []
                for k, text in enumerate(row):
                    try:
                        parsed.append(self.field.parse(text))
                    except (ParseError, ValidationError) as exc:
                        raise ValidationError(
                            f"generators[{i}][{j}][{k}]: {exc}"
                        ) from exc
                rows.append(parsed)
            gens.append(ModuleVector.from_grid(self.field, context, rows))
        return GeneratorSet(self.field, context, self.ambient_dim, tuple(gens))

    @classmethod
    def from_generator_set(cls, gens: GeneratorSet) -> "ModuleFile":
        grids = tuple(
            tuple(
                tuple(gens.field.render(v) for v in coord.values)
                for coord in g.coords
            )
            for g in gens.gens
        )
        return cls(gens.field, gens.context.labels, gens.ambient_dim, grids)


def _field_from_payload(payload: object) -> Field:
    if not isinstance(payload, dict):
        raise ParseError("'field' must be an object")
    kind = payload.get("kind")
    if kind == "fp":
        p = payload.get("p")
        if not isinstance(p, int) or isinstance(p, bool):
            raise ParseError("'field.p' must be an integer")
        return PrimeField(p)
    if kind == "rational":
        return RationalField()
    raise ValidationError(f"field.kind must be 'fp' or 'rational', got {kind!r}")


def parse_module_file(text: str) -> GeneratorSet:
    """Document text → validated presentation; errors carry their location."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ParseError("top-level value must be an object")
    for key in ("field", "atoms", "ambient_dim", "generators"):
        if key not in doc:
            raise ParseError(f"missing key {key!r}")
    field = _field_from_payload(doc["field"])
    atoms = doc["atoms"]
    if not isinstance(atoms, list) or not all(isinstance(a, str) for a in atoms):
        raise ParseError("'atoms' must be a list of strings")
    if not atoms:
        raise ValidationError("'atoms' must be nonempty")
    if len(set(atoms)) != len(atoms):
        raise ValidationError("atom labels must be unique")
    ambient = doc["ambient_dim"]
    if not isinstance(ambient, int) or isinstance(ambient, bool):
        raise ParseError("'ambient_dim' must be an integer")
    if ambient < 1:
        raise ValidationError("'ambient_dim' must be at least 1")
    gens = doc["generators"]
    if not isinstance(gens, list):
        raise ParseError("'generators' must be a list")
    grids = []
    for i, grid in enumerate(gens):
        if not isinstance(grid, list):
            raise ParseError(f"generators[{i}] must be a list of coordinate rows")
        if len(grid) != ambient:
            raise ValidationError(
                f"generators[{i}] has {len(grid)} coordinate rows, expected {ambient}"
            )
        rows = []
        for j, row in enumerate(grid):
            if not isinstance(row, list) or not all(isinstance(s, str) for s in row):
                raise ParseError(f"generators[{i}][{j}] must be a list of scalar strings")
            if len(row) != len(atoms):
                raise ValidationError(
                    f"generators[{i}][{j}] has {len(row)} values, expected {len(atoms)}"
                )
            rows.append(tuple(row))
        grids.append(tuple(rows))
    mf = ModuleFile(field, tuple(atoms), ambient, tuple(grids))
    return mf.to_generator_set()


def _field_payload(field: Field) -> dict:
    if isinstance(field, PrimeField):
        return {"kind": "fp", "p": field.p}
    return {"kind": "rational"}


def render_module_file(gens: GeneratorSet) -> str:
    """Canonical document text; parse_module_file inverts it exactly."""
    mf = ModuleFile.from_generator_set(gens)
    doc = {
        "field": _field_payload(mf.field),
        "atoms": list(mf.atoms),
        "ambient_dim": mf.ambient_dim,
        "generators": [[list(row) for row in grid] for grid in mf.generators],
    }
    return json.dumps(doc, indent=2) + "\n"
