from itertools import combinations

import pytest

from invgalois.act import Action, fixed_subalgebra_of, stabilizer
from invgalois.alg import PartitionSubalgebra, SplitAlgebra
from invgalois.builders import bounded_rank_example, group_regular_example, named_group, order28_labels
from invgalois.corr import correspondence, normal_clifford_survey
from invgalois.errors import InvalidStructure
from invgalois.sgrp import InverseSemigroup


def brute_subgroups(G):
    els = list(G)
    return [set(c) for k in range(1, len(els) + 1) for c in combinations(els, k)
            if 0 in c and all(G.mul[x][y] in c for x in c for y in c)]


@pytest.fixture(scope="module")
def report28(order28):
    return correspondence(order28[2], order28_labels())


def test_order28_counts(report28):
    c = report28.counts
    assert c["pairs"] == 31 == c["full subsemigroups"] == c["beta-strong and separable"]
    assert c["partition subalgebras"] == 203
    # A^β = R·1_A, so every partition contains it and all are separable over R
    assert c["separable"] == 203
    assert len(report28.rejected) == 203 - 31
    assert {r.reason for r in report28.rejected} == {"not β-strong"}
    assert all(r.witness is not None for r in report28.rejected)


def test_order28_every_pair_is_labelled(report28):
    labels = report28.by_label()
    assert len(labels) == 31
    assert len(labels["A"].subsemigroup) == 13
    assert len(labels["R"].subsemigroup) == 28
    assert report28.pairs[0].label == "A" and report28.pairs[-1].label == "R"


def test_pairs_are_galois_connection(report28, order28):
    a = order28[2]
    for p in report28.pairs:
        assert fixed_subalgebra_of(a, p.subsemigroup) == p.subalgebra
        assert stabilizer(a, p.subalgebra) == p.subsemigroup
    # order reversing: finer subalgebra ↔ smaller subsemigroup
    for p in report28.pairs:
        for q in report28.pairs:
            if p.subalgebra.refines(q.subalgebra):
                assert p.subsemigroup.members <= q.subsemigroup.members


def test_z2_has_two_pairs():
    rep = correspondence(group_regular_example("Z2")[2])
    assert [len(p.subsemigroup) for p in rep.pairs] == [1, 2]
    assert [len(p.subalgebra.blocks) for p in rep.pairs] == [2, 1]


@pytest.mark.parametrize("group", ["Z3", "Z4", "Z2xZ2", "S3"])
def test_group_pairs_are_the_subgroups(group):
    # for groups the correspondence is classical Galois theory: one pair per subgroup
    G, _, a = group_regular_example(group)
    rep = correspondence(a)
    assert sorted(sorted(p.subsemigroup.members) for p in rep.pairs) == sorted(sorted(H) for H in brute_subgroups(G))


def test_trivial_semigroup_single_pair():
    S = InverseSemigroup(["e"], [[0]], [0])
    a = Action(S, SplitAlgebra(1), [{1}], [{1: 1}])
    rep = correspondence(a)
    assert len(rep.pairs) == 1 and rep.fixed_algebra == PartitionSubalgebra([(1,)])


def test_bounded_rank_21():
    rep = correspondence(bounded_rank_example(2, 1)[2])
    assert rep.counts["pairs"] == rep.counts["full subsemigroups"]
    assert rep.fixed_algebra.blocks == ((1, 2),)


def test_preconditions():
    G = named_group("Z2")
    trivial = Action(G, SplitAlgebra(1), [{1}, {1}], [{1: 1}, {1: 1}])
    with pytest.raises(InvalidStructure, match="Galois"):
        correspondence(trivial)
    S = InverseSemigroup(["0", "1"], [[0, 0], [0, 1]], [0, 1])
    overlap = Action(S, SplitAlgebra(1), [{1}, {1}], [{1: 1}, {1: 1}])
    with pytest.raises(InvalidStructure, match="orthogonal"):
        correspondence(overlap)


def test_survey_order28_is_empty(order28, report28):
    assert normal_clifford_survey(order28[2], report28) == []
    assert normal_clifford_survey(order28[2]) == []


def test_survey_klein_four():
    G, _, a = group_regular_example("Z2xZ2")
    survey = normal_clifford_survey(a)
    assert [len(e.subsemigroup) for e in survey] == [1, 2, 2, 2, 4]
    assert all(e.galois for e in survey)
    proper = [e for e in survey if 1 < len(e.subsemigroup) < 4]
    assert len(proper) == 3
    for e in proper:
        assert len(e.quotient.semigroup) == 2 and e.quotient.subalgebra.n == 4
