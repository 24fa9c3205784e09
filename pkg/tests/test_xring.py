import pytest

from invgalois.act import Action, GroupoidAction, apply, find_galois_coordinates
from invgalois.alg import SplitAlgebra
from invgalois.builders import bounded_rank_example, non_inductive_groupoid, group_regular_example, named_group
from invgalois.errors import InvalidStructure
from invgalois.gpd import esn_groupoid
from invgalois.sgrp import InverseSemigroup
from invgalois.xring import (build_skew_groupoid_ring, build_skew_semigroup_ring, check_associativity,
                             crossed_product_iso, galois_theorem_checks, relation_ideal,
                             skew_ring_report)


def formula_product(action, L, p, q):
    """(e_i u_s)(e_j u_t) = β_s(β_{s⁻¹}(e_i) e_j) u_{st}, evaluated on algebra elements."""
    S, A = action.semigroup, action.algebra
    (s, i), (t, j) = L.basis[p], L.basis[q]
    c = apply(action, s, apply(action, S.inv[s], A.basis(i)) * A.basis(j))
    out = [0] * L.dim
    for k in c.support:
        out[L.position(S.mul[s][t], k)] += c[k]
    return out


def actions():
    yield "order28", bounded_rank_example(3, 2)[2]
    yield "bounded-3-1", bounded_rank_example(3, 1)[2]
    for g in ("Z2", "Z3", "Z2xZ2"):
        yield g, group_regular_example(g)[2]


@pytest.mark.parametrize("name,a", list(actions()))
def test_structure_constants_match_defining_formula(name, a):
    L = build_skew_semigroup_ring(a)
    assert L.dim == sum(len(s) for s in a.supports)
    S = a.semigroup
    for p in range(L.dim):
        for q in range(L.dim):
            assert L.multiply(L.unit_vector(p), L.unit_vector(q)) == formula_product(a, L, p, q)
            (s, _), (t, _) = L.basis[p], L.basis[q]
            if S.d(s) != S.r(t):
                assert L.mul[p][q] is None


def test_order28_dimension(order28):
    L = build_skew_semigroup_ring(order28[2])
    assert L.dim == 36


def test_trivial_semigroup_ring_is_the_algebra():
    S = InverseSemigroup(["e"], [[0]], [0])
    a = Action(S, SplitAlgebra(3), [{1, 2, 3}], [{1: 1, 2: 2, 3: 3}])
    L = build_skew_semigroup_ring(a)
    assert L.dim == 3
    assert all((L.mul[p][q] == p) == (p == q) for p in range(3) for q in range(3))
    assert relation_ideal(a) == []


@pytest.mark.parametrize("name,a", list(actions()))
def test_relation_ideal_vanishes_for_orthogonal_actions(name, a):
    assert relation_ideal(a) == []


def test_relation_ideal_nonzero_when_supports_overlap():
    S = InverseSemigroup(["0", "1"], [[0, 0], [0, 1]], [0, 1])
    a = Action(S, SplitAlgebra(1), [{1}, {1}], [{1: 1}, {1: 1}])
    N = relation_ideal(a)
    assert len(N) == 1
    L = build_skew_semigroup_ring(a)
    assert sorted(N[0]) == [-1, 1] and L.dim == 2


def test_associativity():
    for _, a in actions():
        assert check_associativity(build_skew_semigroup_ring(a)) == (True, None)
    _, ga = non_inductive_groupoid()
    assert check_associativity(build_skew_groupoid_ring(ga))[0]


@pytest.mark.parametrize("name,a", list(actions()))
def test_crossed_product_isomorphism(name, a):
    iso = crossed_product_iso(a)
    assert iso.bijective and iso.multiplicative
    assert iso.dom_dim == iso.cod_dim == iso.rank
    rep = skew_ring_report(a)
    assert rep.ok, rep.failures()


def test_group_rings_coincide():
    G, _, a = group_regular_example("S3")
    LS = build_skew_semigroup_ring(a)
    LG = build_skew_groupoid_ring(GroupoidAction.from_action(a, esn_groupoid(G)))
    assert LS.basis == LG.basis and LS.mul == LG.mul


def test_iso_needs_orthogonality():
    S = InverseSemigroup(["0", "1"], [[0, 0], [0, 1]], [0, 1])
    a = Action(S, SplitAlgebra(1), [{1}, {1}], [{1: 1}, {1: 1}])
    with pytest.raises(InvalidStructure):
        crossed_product_iso(a)


def test_theorem_checks_on_order28(order28):
    rep = galois_theorem_checks(order28[2])
    assert rep.items == {"ii": "pass", "iv": "pass", "v": "pass", "vi": "pass"}
    assert rep.details["ii"]["dim_skew"] == rep.details["ii"]["dim_end"] == 36
    assert rep.details["iv"]["dim_tensor"] == rep.details["iv"]["dim_product"] == 36
    assert rep.details["ii"]["multiplicative"]
    assert rep.consistent()


def test_theorem_checks_swap_by_hand(z2):
    # Z2 swapping e1, e2: A⋉Z2 has basis e1u1, e2u1, e1ug, e2ug and j sends them to the
    # four matrix units E11, E22, E12, E21 of End_R(R²), a 4×4 identity up to ordering
    _, A, a = z2
    rep = galois_theorem_checks(a)
    assert rep.all_pass
    assert rep.details["ii"]["rank"] == 4 == rep.details["iv"]["rank"] == rep.details["v"]["span"]


def test_theorem_checks_fail_without_coordinates():
    G = named_group("Z2")
    a = Action(G, SplitAlgebra(1), [{1}, {1}], [{1: 1}, {1: 1}])
    rep = galois_theorem_checks(a)
    assert not rep.coordinates_found
    assert rep.items == {"ii": "fail", "iv": "fail", "v": "fail", "vi": "fail"}
    assert rep.consistent()


def test_theorem_checks_unsupported_when_not_free():
    G = named_group("Z2")
    a = Action(G, SplitAlgebra(3), [{1, 2, 3}] * 2, [{1: 1, 2: 2, 3: 3}, {1: 2, 2: 1, 3: 3}])
    rep = galois_theorem_checks(a)
    assert rep.items["ii"] == rep.items["iv"] == "unsupported"
    assert rep.items["v"] == rep.items["vi"] == "fail"
    assert find_galois_coordinates(a) is None and rep.consistent()


@pytest.mark.parametrize("m,k", [(2, 1), (3, 1), (3, 2), (3, 3)])
def test_theorem_items_agree_with_coordinates(m, k):
    _, _, a = bounded_rank_example(m, k)
    rep = galois_theorem_checks(a)
    assert rep.consistent()
    assert rep.all_pass == (find_galois_coordinates(a) is not None)
