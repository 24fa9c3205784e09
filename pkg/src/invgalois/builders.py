"""Fixtures: I(X), bounded-rank semigroups with their canonical action, the 28-element
example, groups with regular actions, and a small ordered but non-inductive groupoid."""

from __future__ import annotations

from itertools import combinations, product
from math import comb

from .act import Action, GroupoidAction, complete_action
from .alg import PartitionSubalgebra, SplitAlgebra
from .errors import InvalidStructure
from .gpd import OrderedGroupoid
from .scalars import QQ, Field
from .sgrp import (InverseSemigroup, PartialBijection, all_partial_bijections,
                   semigroup_from_elements)


def symmetric_inverse_monoid(m: int) -> InverseSemigroup:
    if not 1 <= m <= 4:
        raise ValueError(f"m must be in 1..4, got {m}")
    return semigroup_from_elements(all_partial_bijections(m))


def bounded_rank_example(m: int, k: int, field: Field = QQ):
    """Partial bijections of rank ≤ k on ``{1..m}`` acting on ``⊕_{i=1}^{nk} R·eᵢ``, ``n = C(m,k)``.

    The k-subsets are listed lexicographically; subset ``M_i`` owns indices
    ``(i-1)k+1 .. ik`` matched to its points in increasing order. A rank-k map
    ``M_i → M_j`` relabels those indices accordingly; lower ranks act by zero.
    """
    if not 1 <= k <= m <= 4:
        raise ValueError(f"need 1 <= k <= m <= 4, got m={m}, k={k}")
    S = semigroup_from_elements(all_partial_bijections(m, k))
    subsets = list(combinations(range(1, m + 1), k))
    offset = {M: i * k for i, M in enumerate(subsets)}
    A = SplitAlgebra(comb(m, k) * k, field)
    supports, maps = [], []
    for f in S.payload:
        if f.rank < k:
            supports.append(frozenset())
            maps.append({})
            continue
        Mi, Mj = tuple(sorted(f.domain)), tuple(sorted(f.image))
        sigma = {offset[Mi] + p + 1: offset[Mj] + Mj.index(f(x)) + 1 for p, x in enumerate(Mi)}
        maps.append(sigma)
        supports.append(frozenset(sigma.values()))
    return S, A, Action(S, A, supports, maps)


# The nine displayed isomorphisms of the 28-element example; the others follow by
# inversion and composition.
ORDER28_IDEALS = {"I12": (1, 2), "I13": (3, 4), "I23": (5, 6)}
ORDER28_MAPS = {
    "D12^13": {1: 3, 2: 4},
    "D12^23": {1: 6, 2: 5},
    "D13^23": {3: 5, 4: 6},
    "P12^13": {1: 4, 2: 3},
    "P12^23": {1: 5, 2: 6},
    "P13^23": {3: 6, 4: 5},
    "S12": {1: 2, 2: 1},
    "S13": {3: 4, 4: 3},
    "S23": {5: 6, 6: 5},
}

# Labels of the 31 admissible subalgebras of the 28-element example.
ORDER28_LABELS = {
    "A": ((1,), (2,), (3,), (4,), (5,), (6,)),
    "B1": ((1, 2), (3,), (4,), (5,), (6,)),
    "B2": ((1,), (2,), (3, 4), (5,), (6,)),
    "B3": ((1,), (2,), (3,), (4,), (5, 6)),
    "B4": ((1, 3), (2, 4), (5,), (6,)),
    "B5": ((1, 6), (2, 5), (3,), (4,)),
    "B6": ((1,), (2,), (3, 5), (4, 6)),
    "B7": ((1, 4), (2, 3), (5,), (6,)),
    "B8": ((1, 5), (2, 6), (3,), (4,)),
    "B9": ((1,), (2,), (3, 6), (4, 5)),
    "C1": ((1, 2), (3, 4), (5,), (6,)),
    "C2": ((1, 2), (3,), (4,), (5, 6)),
    "C3": ((1,), (2,), (3, 4), (5, 6)),
    "C4": ((1, 3), (2, 4), (5, 6)),
    "C5": ((1, 6), (2, 5), (3, 4)),
    "C6": ((1, 2), (3, 5), (4, 6)),
    "C7": ((1, 4), (2, 3), (5, 6)),
    "C8": ((1, 5), (2, 6), (3, 4)),
    "C9": ((1, 2), (3, 6), (4, 5)),
    "C10": ((1, 3, 5), (2, 4, 6)),
    "C11": ((1, 3, 6), (2, 4, 5)),
    "C12": ((1, 4, 5), (2, 3, 6)),
    "C13": ((1, 4, 6), (2, 3, 5)),
    "F1": ((1, 2, 3, 4), (5,), (6,)),
    "F2": ((1, 2, 5, 6), (3,), (4,)),
    "F3": ((1,), (2,), (3, 4, 5, 6)),
    "F4": ((1, 2), (3, 4), (5, 6)),
    "J1": ((1, 2, 3, 4), (5, 6)),
    "J2": ((1, 2, 5, 6), (3, 4)),
    "J3": ((1, 2), (3, 4, 5, 6)),
    "R": ((1, 2, 3, 4, 5, 6),),
}


def order28_labels() -> dict:
    """Partition subalgebra → display label for the 28-element example."""
    return {PartitionSubalgebra(b): name for name, b in ORDER28_LABELS.items()}


def order28_example(field: Field = QQ):
    """``S = I({1,2,3}) ∖ {rank 3}`` (order 28) acting orthogonally on ``⊕_{i=1}^6 R·eᵢ``."""
    S = semigroup_from_elements(all_partial_bijections(3, 2))
    A = SplitAlgebra(6, field)
    return S, A, complete_action(S, A, ORDER28_IDEALS, ORDER28_MAPS)


# -- groups --------------------------------------------------------------------------------


def group_from_elements(elements, mul, name=str) -> InverseSemigroup:
    """Inverse semigroup of a finite group; the identity must come first."""
    elements = list(elements)
    pos = {x: i for i, x in enumerate(elements)}
    table = [[pos[mul(a, b)] for b in elements] for a in elements]
    inv = [next(j for j in range(len(elements)) if table[i][j] == 0) for i in range(len(elements))]
    return InverseSemigroup([name(x) for x in elements], table, inv, check=True)


def _perm_mul(p, q):
    """``p∘q`` on tuples (apply q first)."""
    return tuple(p[q[i]] for i in range(len(q)))


def _cyclic(n):
    return group_from_elements(range(n), lambda a, b: (a + b) % n)


def _abelian(*orders):
    elems = list(product(*(range(n) for n in orders)))
    return group_from_elements(
        elems, lambda a, b: tuple((x + y) % n for x, y, n in zip(a, b, orders)),
        lambda x: "".join(map(str, x)))


def _perm_group(gens, degree):
    ident = tuple(range(degree))
    seen = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = _perm_mul(g, p)
                if q not in seen:
                    seen.append(q)
                    nxt.append(q)
        frontier = nxt
    elems = [ident] + sorted(seen[1:])
    return group_from_elements(elems, _perm_mul, lambda p: "".join(str(i + 1) for i in p))


def _quaternion():
    # unit quaternions as (sign, axis) with axis in 1, i, j, k
    axes = ["1", "i", "j", "k"]
    table = {("1", a): (1, a) for a in axes}
    table.update({(a, "1"): (1, a) for a in axes})
    for a in "ijk":
        table[(a, a)] = (-1, "1")
    table.update({("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
                  ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j")})

    def mul(x, y):
        sign, ax = table[(x[1], y[1])]
        return (x[0] * y[0] * sign, ax)

    elems = [(1, "1"), (-1, "1")] + [(s, a) for a in "ijk" for s in (1, -1)]
    return group_from_elements(elems, mul, lambda x: ("-" if x[0] < 0 else "") + x[1])


NAMED_GROUPS = {
    **{f"Z{n}": (lambda n=n: _cyclic(n)) for n in range(1, 9)},
    "Z2xZ2": lambda: _abelian(2, 2),
    "Z4xZ2": lambda: _abelian(4, 2),
    "Z2xZ2xZ2": lambda: _abelian(2, 2, 2),
    "S3": lambda: _perm_group([(1, 0, 2), (1, 2, 0)], 3),
    "D4": lambda: _perm_group([(1, 2, 3, 0), (3, 2, 1, 0)], 4),
    "Q8": _quaternion,
}


def named_group(name: str) -> InverseSemigroup:
    try:
        return NAMED_GROUPS[name]()
    except KeyError:
        raise ValueError(f"unknown group {name!r}; known: {', '.join(NAMED_GROUPS)}") from None


def group_regular_example(group, field: Field = QQ):
    """``A = ⊕_{g} R·e_g`` with ``β_h(e_g) = e_{hg}``; index of ``e_g`` is ``id(g) + 1``."""
    G = named_group(group) if isinstance(group, str) else group
    if not G.is_group():
        raise InvalidStructure("not a group table", witness=len(G.idempotents))
    if len(G) > 16:
        raise ValueError("groups are limited to order 16")
    n = len(G)
    A = SplitAlgebra(n, field)
    full = frozenset(range(1, n + 1))
    maps = [{g + 1: G.mul[h][g] + 1 for g in range(n)} for h in range(n)]
    return G, A, Action(G, A, [full] * n, maps)


# -- an ordered groupoid that is not inductive ------------------------------------------------


def non_inductive_groupoid():
    """``{r(x), d(x), r(z), x, x⁻¹, z}`` with ``z = z⁻¹`` and ``x, x⁻¹ ≤ z``.

    Its ordered action on ``⊕_{i=1}^4 R·eᵢ`` has ``E_z = A``, ``σ_z`` swapping
    1↔2 and 3↔4, ``E_x = {1,3}``, ``E_{x⁻¹} = {2,4}``; β_x and β_{x⁻¹} are
    restrictions of β_z.
    """
    names = ["r(x)", "d(x)", "r(z)", "x", "x^-1", "z"]
    rx, dx, rz, x, xi, z = range(6)
    n = len(names)
    dom = {rx: rx, dx: dx, rz: rz, x: dx, xi: rx, z: rz}
    ran = {rx: rx, dx: dx, rz: rz, x: rx, xi: dx, z: rz}
    products = {(x, xi): rx, (xi, x): dx, (z, z): rz}
    pmul = [[None] * n for _ in range(n)]
    for g in range(n):
        pmul[ran[g]][g] = g
        pmul[g][dom[g]] = g
    for (g, h), v in products.items():
        pmul[g][h] = v
    inv = [rx, dx, rz, xi, x, z]
    leq = [[a == b for b in range(n)] for a in range(n)]
    for a, b in ((x, z), (xi, z), (rx, rz), (dx, rz)):
        leq[a][b] = True
    G = OrderedGroupoid(names, pmul, inv, leq)
    A = SplitAlgebra(4)
    supports = [{1, 3}, {2, 4}, {1, 2, 3, 4}, {1, 3}, {2, 4}, {1, 2, 3, 4}]
    maps = [{1: 1, 3: 3}, {2: 2, 4: 4}, {i: i for i in range(1, 5)},
            {2: 1, 4: 3}, {1: 2, 3: 4}, {1: 2, 2: 1, 3: 4, 4: 3}]
    return G, GroupoidAction(G, A, supports, maps)


def closing_generators():
    """Three rank-2 maps generating the 28-element semigroup: D12^13, S12, D12^23."""
    return [PartialBijection(3, ((1, 1), (2, 3))), PartialBijection(3, ((1, 2), (2, 1))),
            PartialBijection(3, ((1, 3), (2, 2)))]
