import pytest
from hypothesis import given, strategies as st

from invgalois.alg import (IdempotentIdeal, PartitionSubalgebra, SplitAlgebra,
                           enumerate_partition_subalgebras, idempotents_of, separability_check,
                           set_partitions)
from invgalois.builders import ORDER28_LABELS
from invgalois.errors import InvalidStructure
from invgalois.scalars import PrimeField

BELL = [1, 1, 2, 5, 15, 52, 203, 877]


@pytest.mark.parametrize("n", range(8))
def test_bell_numbers(n):
    assert len(list(set_partitions(n))) == BELL[n]


def test_enumeration_bound():
    assert len(enumerate_partition_subalgebras(6)) == 203
    assert len(enumerate_partition_subalgebras(1)) == 1
    with pytest.raises(ValueError):
        enumerate_partition_subalgebras(11)


def test_enumeration_is_canonical_and_distinct():
    parts = enumerate_partition_subalgebras(5)
    assert len(set(parts)) == len(parts)
    assert parts[0] == PartitionSubalgebra.discrete(5)
    assert parts[-1] == PartitionSubalgebra.trivial(5)


def test_componentwise_arithmetic():
    A = SplitAlgebra(3)
    a, b = A.element([1, 2, 3]), A.element([4, 0, -1])
    assert (a * b).coeffs == (4, 0, -3)
    assert (a + b) - b == a
    assert a * A.one == a
    assert str(A.basis(1) + A.basis(3)) == "e1 + e3"
    assert A.basis(1) * A.basis(2) == A.zero


@given(st.lists(st.integers(-5, 5), min_size=4, max_size=4),
       st.lists(st.integers(-5, 5), min_size=4, max_size=4),
       st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_ring_laws(x, y, z):
    A = SplitAlgebra(4)
    a, b, c = A.element(x), A.element(y), A.element(z)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


def test_idempotents_of_ideal():
    A = SplitAlgebra(5)
    two = idempotents_of(A, {1, 2})
    assert {str(e) for e in two} == {"0", "e1", "e2", "e1 + e2"}
    assert [e.is_zero() for e in idempotents_of(A, set())] == [True]
    three = idempotents_of(A, IdempotentIdeal(frozenset({3, 4, 5})))
    assert len(three) == 8 and all(e.is_idempotent() for e in three)


def test_partition_subalgebra_closed_and_unital():
    A = SplitAlgebra(6)
    for blocks in ORDER28_LABELS.values():
        B = PartitionSubalgebra(blocks)
        gens = B.generators(A)
        assert B.contains(A.one)
        assert all(B.contains(x * y) and B.contains(x + y) for x in gens for y in gens)


def test_partition_validation():
    with pytest.raises(InvalidStructure):
        PartitionSubalgebra(((1, 2), (2, 3)))
    with pytest.raises(InvalidStructure):
        PartitionSubalgebra(((1,), (3,)))
    assert PartitionSubalgebra(((3, 1), (2,))).blocks == ((1, 3), (2,))


def test_refinement():
    fine = PartitionSubalgebra(((1,), (2,), (3, 4)))
    coarse = PartitionSubalgebra(((1, 2), (3, 4)))
    assert fine.refines(coarse) and not coarse.refines(fine)
    assert fine.refines(PartitionSubalgebra.trivial(4))


def tensor_check(B, base, witness):
    """Verify a separability idempotent by multiplying out in B ⊗_base B."""
    k = len(B.blocks)
    x = {(B.blocks.index(a), B.blocks.index(b)): c for (a, b), c in witness.items()}
    mu = [sum(c for (i, j), c in x.items() if i == j == m) for m in range(k)]
    if mu != [1] * k:
        return False
    for m in range(k):
        left = {(i, j): c for (i, j), c in x.items() if i == m}
        right = {(i, j): c for (i, j), c in x.items() if j == m}
        if left != right:
            return False
    return True


@pytest.mark.parametrize("n", [3, 4, 6])
def test_every_partition_is_separable_over_the_scalars(n):
    base = PartitionSubalgebra.trivial(n)
    for B in enumerate_partition_subalgebras(n):
        res = separability_check(B, base)
        assert res.separable
        assert tensor_check(B, base, res.witness)
        # the canonical witness is Σ f ⊗ f over block idempotents
        assert res.witness == {(b, b): 1 for b in B.blocks}


def test_separability_over_itself_and_mod_p():
    B = PartitionSubalgebra(((1, 2), (3,)))
    assert separability_check(B, B).separable
    assert separability_check(B, PartitionSubalgebra.trivial(3), PrimeField(3)).separable


def test_separability_non_free_is_unsupported():
    B = PartitionSubalgebra(((1,), (2,), (3, 4)))
    base = PartitionSubalgebra(((1, 2), (3, 4)))
    assert separability_check(B, base).status == "unsupported"


def test_separability_requires_nesting():
    with pytest.raises(InvalidStructure):
        separability_check(PartitionSubalgebra(((1, 2), (3,))), PartitionSubalgebra(((1,), (2, 3))))
