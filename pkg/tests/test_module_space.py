from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from regmod import (
    AlgebraElement,
    AtomSet,
    ContextMismatchError,
    GeneratorSet,
    Idempotent,
    ModuleVector,
    NotFaithfulError,
    PartitionOfUnity,
    PrimeField,
    ZeroIdempotentError,
    combine,
    full_support_element,
    independence_test,
    membership,
    mix_vectors,
    reassemble,
    split_product,
    support_vector,
)


@pytest.fixture
def f5():
    return PrimeField(5)


@pytest.fixture
def ctx():
    return AtomSet(("q1", "q2", "q3"))


def vec(field, ctx, *rows):
    return ModuleVector.from_grid(field, ctx, rows)


def test_vector_support(f5, ctx, fixture_gens):
    x = vec(f5, ctx, (0, 0, 0), (1, 0, 1))
    assert support_vector(x) == ctx.subset(["q1", "q3"])
    assert ModuleVector.zeros(f5, ctx, 2).support().is_zero
    a = AlgebraElement.from_values(f5, ctx, (2, 0, 0))
    assert x.scale(a).support() == a.support().meet(x.support())
    assert x.restrict(x.support()) == x


def test_vector_space_checks(f5, ctx):
    x = vec(f5, ctx, (1, 2, 3))
    y = vec(f5, ctx, (1, 2, 3), (0, 0, 0))
    with pytest.raises(ContextMismatchError):
        x + y
    with pytest.raises(ContextMismatchError):
        x + vec(f5, AtomSet(("a", "b", "c")), (1, 2, 3))


def test_mix_vectors(f5, ctx):
    p = PartitionOfUnity((ctx.subset(["q1"]), ctx.subset(["q2", "q3"])))
    x = vec(f5, ctx, (1, 1, 1))
    y = vec(f5, ctx, (4, 4, 4))
    assert mix_vectors(p, [x, y]) == vec(f5, ctx, (1, 4, 4))
    assert mix_vectors(p, [x, x]) == x
    z = ModuleVector.zeros(f5, ctx, 1)
    assert mix_vectors(p, [z, z]).is_zero


def test_membership_fixture(f5, ctx, fixture_gens):
    x = vec(f5, ctx, (2, 0, 2), (3, 0, 3))
    e = ctx.subset(["q1", "q3"])
    result = membership(x, fixture_gens, e)
    assert result.contained
    assert result.witness_atom is None
    c1, c2 = result.coefficients
    assert c1.values == (2, 0, 2)
    assert c2.values == (3, 0, 3)
    assert combine(fixture_gens.gens, result.coefficients).restrict(e) == x.restrict(e)


def test_membership_rejection(f5, ctx, fixture_gens):
    x = vec(f5, ctx, (0, 1, 0), (0, 1, 0))
    result = membership(x, fixture_gens, ctx.full())
    assert not result.contained
    assert result.witness_atom == "q2"
    assert result.coefficients is None


def test_membership_zero_piece(f5, ctx, fixture_gens):
    x = vec(f5, ctx, (4, 4, 4), (4, 4, 4))
    assert membership(x, fixture_gens, ctx.empty()).contained


def test_membership_empty_presentation(f5, ctx):
    empty = GeneratorSet(f5, ctx, 1, ())
    assert membership(ModuleVector.zeros(f5, ctx, 1), empty, ctx.full()).contained
    result = membership(vec(f5, ctx, (1, 0, 0)), empty, ctx.full())
    assert not result.contained and result.witness_atom == "q1"


def test_independence_fixture(f5, ctx, fixture_gens):
    assert independence_test(fixture_gens, ctx.subset(["q1", "q3"])).independent
    result = independence_test(fixture_gens, ctx.full())
    assert not result.independent
    assert result.witness_atom == "q2"
    relation = result.relation
    fibers = fixture_gens.fiber_matrix(ctx.index("q2"))
    combo = [f5.zero, f5.zero]
    for c, row in zip(relation, fibers):
        combo = [f5.add(v, f5.mul(c, w)) for v, w in zip(combo, row)]
    assert combo == [0, 0] and any(c != 0 for c in relation)


def test_independence_zero_vector_never_independent(f5, ctx, fixture_gens):
    with_zero = GeneratorSet(
        f5, ctx, 2, fixture_gens.gens + (ModuleVector.zeros(f5, ctx, 2),)
    )
    for e in (ctx.full(), ctx.subset(["q1"]), ctx.subset(["q1", "q3"])):
        assert not independence_test(with_zero, e).independent


def test_independence_zero_idempotent_raises(f5, ctx, fixture_gens):
    with pytest.raises(ZeroIdempotentError):
        independence_test(fixture_gens, ctx.empty())


def test_full_support_element(f5, ctx, fixture_gens):
    g1 = vec(f5, ctx, (1, 0, 0))
    g2 = vec(f5, ctx, (0, 1, 1))
    gens = GeneratorSet(f5, ctx, 1, (g1, g2))
    assert full_support_element(gens) == vec(f5, ctx, (1, 1, 1))
    # the first generator already covers everything here
    assert full_support_element(fixture_gens) == fixture_gens.gens[0]


def test_full_support_element_dead_atoms(f5, ctx):
    gens = GeneratorSet(f5, ctx, 1, (vec(f5, ctx, (0, 1, 0)),))
    with pytest.raises(NotFaithfulError) as info:
        full_support_element(gens)
    assert info.value.dead_atoms == ("q1", "q3")


def test_split_and_reassemble(f5, ctx):
    x = vec(f5, ctx, (1, 2, 3))
    p = PartitionOfUnity((ctx.subset(["q1"]), ctx.subset(["q2", "q3"])))
    parts = split_product(x, p)
    assert parts[0] == vec(f5, ctx, (1, 0, 0))
    assert parts[1] == vec(f5, ctx, (0, 2, 3))
    assert reassemble(p, parts) == x
    single = PartitionOfUnity((ctx.full(),))
    assert split_product(x, single) == [x]


def test_fiber_and_unit(f5, ctx):
    u = ModuleVector.unit(f5, ctx, 3, 1)
    assert u.fiber(0) == (0, 1, 0)
    assert u.fiber(2) == (0, 1, 0)


# -- randomized properties ---------------------------------------------------

small = st.integers(min_value=0, max_value=4)


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=2, max_size=2),
       st.lists(small, min_size=2, max_size=2))
def test_combinations_always_members(grid_rows, coeff_values):
    f5 = PrimeField(5)
    ctx = AtomSet(("q1", "q2", "q3"))
    g1 = ModuleVector.from_grid(f5, ctx, [grid_rows[0]])
    g2 = ModuleVector.from_grid(f5, ctx, [grid_rows[1]])
    gens = GeneratorSet(f5, ctx, 1, (g1, g2))
    coeffs = [AlgebraElement.constant(f5, ctx, v) for v in coeff_values]
    x = combine(gens.gens, coeffs)
    result = membership(x, gens, ctx.full())
    assert result.contained
    assert combine(gens.gens, result.coefficients) == x


@given(st.lists(small, min_size=3, max_size=3),
       st.lists(st.integers(min_value=0, max_value=1), min_size=3, max_size=3))
def test_mix_closure_single_gen(values, assignment):
    f5 = PrimeField(5)
    ctx = AtomSet(("q1", "q2", "q3"))
    gens = GeneratorSet(f5, ctx, 1, (ModuleVector.from_grid(f5, ctx, [values]),))
    masks: dict[int, int] = {}
    for q, b in enumerate(assignment):
        masks[b] = masks.get(b, 0) | (1 << q)
    p = PartitionOfUnity(tuple(Idempotent(ctx, m) for m in sorted(masks.values())))
    scaled = [gens.gens[0].scale(AlgebraElement.constant(f5, ctx, k + 1)) for k in range(len(p))]
    mixed = mix_vectors(p, scaled)
    assert membership(mixed, gens, ctx.full()).contained
