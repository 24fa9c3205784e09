"""Inverse semigroup actions on split algebras, realized as index relabelings.

``σ_s`` is a bijection from the support of ``E_{s⁻¹}`` onto the support of
``E_s`` and ``β_s(Σ aᵢeᵢ) = Σ aᵢ e_{σ_s(i)}``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .alg import (AlgebraElement, PartitionSubalgebra, SplitAlgebra, idempotents_of)
from .errors import InvalidStructure, TheoremViolation
from .gpd import OrderedGroupoid
from .linalg import nullspace, solve
from .report import CheckReport
from .sgrp import (InverseSemigroup, Subsemigroup, is_clifford, is_full, is_normal,
                   max_elements, quotient)


def _freeze(mapping) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(dict(mapping).items()))


@dataclass(frozen=True, eq=False)
class Action:
    """An action of ``semigroup`` on ``algebra``.

    ``supports[s]`` is the support of ``E_s`` and ``maps[s]`` the graph of
    ``σ_s`` (sorted pairs), both indexed by element id.
    """

    semigroup: InverseSemigroup
    algebra: SplitAlgebra
    supports: tuple[frozenset[int], ...]
    maps: tuple[tuple[tuple[int, int], ...], ...]

    def __post_init__(self):
        n = len(self.semigroup)
        if len(self.supports) != n or len(self.maps) != n:
            raise InvalidStructure("supports and maps must cover every element")
        object.__setattr__(self, "supports", tuple(frozenset(x) for x in self.supports))
        object.__setattr__(self, "maps", tuple(_freeze(m) for m in self.maps))
        for s in range(n):
            bad = [i for i in self.supports[s] if not 1 <= i <= self.algebra.n]
            if bad:
                raise InvalidStructure("support index outside 1..n", witness=(self.semigroup.names[s], bad))

    def __eq__(self, other):
        return (isinstance(other, Action) and self.semigroup == other.semigroup
                and self.algebra == other.algebra and self.supports == other.supports
                and self.maps == other.maps)

    def __hash__(self):
        return hash((self.supports, self.maps))

    def sigma(self, s: int) -> dict[int, int]:
        return dict(self.maps[s])

    def unit(self, s: int) -> AlgebraElement:
        """``1_s``"""
        return self.algebra.indicator(self.supports[s])

    @classmethod
    def from_named(cls, S: InverseSemigroup, A: SplitAlgebra, supports: dict, maps: dict) -> "Action":
        return cls(S, A, [supports[name] for name in S.names], [maps[name] for name in S.names])


# -- completion from generators -----------------------------------------------------


def complete_action(S: InverseSemigroup, A: SplitAlgebra, idempotent_supports: dict,
                    generator_maps: dict) -> Action:
    """Build the whole action from ideal supports of idempotents and some σ's.

    ``σ_e`` is the identity on ``E_e``, ``σ_{s⁻¹} = σ_s⁻¹`` and ``σ_{st} = σ_s∘σ_t``.
    Every derivation path is compared; a disagreement is rejected.
    """
    E = S.idempotents
    supp = {}
    for e in E:
        supp[e] = frozenset(idempotent_supports.get(S.names[e], ()))
    for name in idempotent_supports:
        if not S.is_idempotent(S.index(name)):
            raise InvalidStructure("ideal declared for a non-idempotent", witness=name)
    support = [supp[S.r(s)] for s in S]
    known: dict[int, dict] = {e: {i: i for i in supp[e]} for e in E}

    def put(s, m, origin):
        if s in known:
            if known[s] != m:
                raise InvalidStructure("homomorphism closure is inconsistent",
                                       witness=(S.names[s], origin))
            return False
        if set(m) != support[S.d(s)] or set(m.values()) != support[s]:
            raise InvalidStructure("map does not go from E_{s⁻¹} onto E_s",
                                   witness=(S.names[s], origin))
        known[s] = m
        return True

    for name, m in generator_maps.items():
        s = S.index(name)
        m = dict(m)
        if len(set(m.values())) != len(m):
            raise InvalidStructure("map is not injective", witness=name)
        put(s, m, name)
    queue = deque(known)
    while queue:
        s = queue.popleft()
        ms = known[s]
        si = S.inv[s]
        if put(si, {j: i for i, j in ms.items()}, f"inverse of {S.names[s]}"):
            queue.append(si)
        for t in list(known):
            mt = known[t]
            for a, b, ma, mb in ((s, t, ms, mt), (t, s, mt, ms)):
                prod = {x: ma[y] for x, y in mb.items() if y in ma}
                if put(S.mul[a][b], prod, f"{S.names[a]}*{S.names[b]}"):
                    queue.append(S.mul[a][b])
    for s in S:
        if s not in known:
            if support[s]:
                raise InvalidStructure("σ cannot be derived from the given maps", witness=S.names[s])
            known[s] = {}
    return Action(S, A, support, [known[s] for s in S])


# -- validation -----------------------------------------------------------------------


def _compose(f: dict, g: dict) -> dict:
    return {x: f[y] for x, y in g.items() if y in f}


def validate_action(action: Action) -> CheckReport:
    S = action.semigroup
    N = S.names
    sup = action.supports
    maps = [action.sigma(s) for s in S]
    rep = CheckReport()
    rep.record("σ_s is a bijection E_{s⁻¹} → E_s", next(
        (N[s] for s in S if set(maps[s]) != sup[S.inv[s]] or set(maps[s].values()) != sup[s]
         or len(set(maps[s].values())) != len(maps[s])), None))
    rep.record("E_s = E_{ss⁻¹}", next((N[s] for s in S if sup[s] != sup[S.r(s)]), None))
    rep.record("β_e = Id on E_e", next(
        (N[e] for e in S.idempotents if any(i != j for i, j in maps[e].items())), None))
    rep.record("σ_s∘σ_t = σ_st", next(
        ((N[s], N[t]) for s in S for t in S if _compose(maps[s], maps[t]) != maps[S.mul[s][t]]), None))
    u = S.identity
    rep.record("E_1 = A", None if u is None or sup[u] == frozenset(action.algebra.indices)
               else N[u])
    return rep


def orthogonality_witness(action: Action):
    """None if ``A = ⊕_{e ∈ E(S)} E_e``; otherwise ``(reason, witness)``."""
    S = action.semigroup
    seen = {}
    for e in S.idempotents:
        for i in action.supports[e]:
            if i in seen:
                return ("idempotent supports overlap", (S.names[seen[i]], S.names[e], i))
            seen[i] = e
    missing = sorted(set(action.algebra.indices) - set(seen))
    if missing:
        return ("idempotent supports do not cover A", missing)
    return None


def is_orthogonal(action: Action) -> bool:
    """Direct-sum test, cross-checked against the two equivalent descriptions.

    For a valid action the direct sum holds iff ``E_e = 0`` off ``max E(S)``
    and the maximal supports partition A; it also forces ``E_s = δ_{s,t}E_t``
    for ``s ≤ t``. A disagreement means the action itself is broken.
    """
    direct = orthogonality_witness(action) is None
    S = action.semigroup
    _, maxE = max_elements(S)
    sup = action.supports
    off_max_zero = all(not sup[e] for e in S.idempotents if e not in maxE)
    if direct and validate_action(action).ok:
        delta = all(s == t or not sup[s] for s in S for t in S if S.leq(s, t))
        if not (off_max_zero and delta):
            raise TheoremViolation("orthogonal action violates E_s = δ_{s,t}E_t",
                                   witness=[S.names[e] for e in S.idempotents if e not in maxE and sup[e]])
    return direct


# -- evaluation -----------------------------------------------------------------------


def apply(action: Action, s: int, a: AlgebraElement) -> AlgebraElement:
    """``β_s(a·1_{s⁻¹})``"""
    out = [action.algebra.field.zero] * action.algebra.n
    for i, j in action.maps[s]:
        out[j - 1] = a[i]
    return AlgebraElement(action.algebra, tuple(out))


def fixed_subalgebra(action: Action) -> PartitionSubalgebra:
    """``A^β`` as the orbit partition of ``i ~ σ_s(i)``."""
    n = action.algebra.n
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for graph in action.maps:
        for i, j in graph:
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    blocks = {}
    for i in range(1, n + 1):
        blocks.setdefault(find(i), []).append(i)
    return PartitionSubalgebra(tuple(tuple(b) for b in blocks.values()))


def fixed_space_basis(action: Action):
    """Nullspace of ``a ↦ (β_s(a1_{s⁻¹}) − a1_s)_s``: the fixed algebra straight from its definition."""
    A = action.algebra
    rows = []
    for s in range(len(action.semigroup)):
        for i in A.indices:
            row = [0] * A.n
            for k in A.indices:
                img = apply(action, s, A.basis(k))[i]
                own = 1 if (k == i and i in action.supports[s]) else 0
                row[k - 1] = img - own
            if any(x != 0 for x in row):
                rows.append(row)
    return nullspace(rows, A.n, A.field)


def trace(action: Action, a: AlgebraElement) -> AlgebraElement:
    """``tr(a) = Σ_s β_s(a1_{s⁻¹})``"""
    out = list(action.algebra.zero.coeffs)
    for graph in action.maps:
        for i, j in graph:
            out[j - 1] = out[j - 1] + a[i]
    return AlgebraElement(action.algebra, tuple(out))


def trace_preimage_of_one(action: Action):
    """Some ``c`` with ``tr(c) = 1_A``, or None."""
    A = action.algebra
    cols = [trace(action, A.basis(k)).coeffs for k in A.indices]
    rows = [[cols[k][i] for k in range(A.n)] for i in range(A.n)]
    sol = solve(rows, [1] * A.n, A.field)
    return None if sol is None else A.element(sol)


# -- Galois coordinates ---------------------------------------------------------------


@dataclass
class GaloisCoordinates:
    pairs: list   # [(x_i, y_i)]


def galois_sum(action: Action, coords, s: int) -> AlgebraElement:
    pairs = coords.pairs if isinstance(coords, GaloisCoordinates) else coords
    total = action.algebra.zero
    for x, y in pairs:
        total = total + x * apply(action, s, y)
    return total


def check_galois_coordinates(action: Action, coords):
    """``(True, None)`` if ``Σ xᵢβ_s(yᵢ1_{s⁻¹})`` is ``1_s`` for idempotent s and 0 otherwise."""
    S = action.semigroup
    for s in S:
        want = action.unit(s) if S.is_idempotent(s) else action.algebra.zero
        if galois_sum(action, coords, s) != want:
            return False, S.names[s]
    return True, None


def canonical_coordinates(action: Action) -> GaloisCoordinates:
    A = action.algebra
    return GaloisCoordinates([(A.basis(i), A.basis(i)) for i in A.indices])


def find_galois_coordinates(action: Action) -> GaloisCoordinates | None:
    """Try ``xᵢ = yᵢ = eᵢ``; otherwise solve for ``w ∈ A ⊗ A`` linearly.

    Writing ``w = Σ_k e_k ⊗ y_k`` with ``y_k = Σ_l w_kl e_l``, the defining
    identity at coordinate i reads ``w_{i, σ_s⁻¹(i)} = [s idempotent]`` for
    ``i ∈ E_s``, which is linear in the ``n²`` unknowns.
    """
    canon = canonical_coordinates(action)
    if check_galois_coordinates(action, canon)[0]:
        return canon
    A = action.algebra
    S = action.semigroup
    n = A.n
    rows, rhs = [], []
    for s in S:
        for i, j in action.maps[s]:          # σ_s(i) = j, so σ_s⁻¹(j) = i
            row = [0] * (n * n)
            row[(j - 1) * n + (i - 1)] = 1
            rows.append(row)
            rhs.append(1 if S.is_idempotent(s) else 0)
    sol = solve(rows, rhs, A.field) if rows else [0] * (n * n)
    if sol is None:
        return None
    pairs = [(A.basis(k), A.element(sol[(k - 1) * n:k * n])) for k in A.indices]
    coords = GaloisCoordinates(pairs)
    if not check_galois_coordinates(action, coords)[0]:
        return None
    return coords


# -- subalgebras and subsemigroups ----------------------------------------------------------


def fixes_block(action: Action, s: int, block) -> bool:
    """``β_s(1_P 1_{s⁻¹}) = 1_P 1_s``, i.e. ``σ_s(P ∩ E_{s⁻¹}) = P ∩ E_s``."""
    P = set(block)
    return {j for i, j in action.maps[s] if i in P} == P & action.supports[s]


def stabilizer(action: Action, B: PartitionSubalgebra) -> Subsemigroup:
    """``T_B``, decided on the block idempotents of B."""
    S = action.semigroup
    members = frozenset(s for s in S if all(fixes_block(action, s, b) for b in B.blocks))
    return Subsemigroup(S, members)


def is_beta_strong(action: Action, B: PartitionSubalgebra, T_B=None):
    """``(True, None)`` or ``(False, (s, t, e))`` for an unseparated pair.

    Pairs with ``ss⁻¹ = tt⁻¹`` and ``s⁻¹t ∉ T_B`` must be told apart on every
    nonzero idempotent e of ``E_s`` by ``β_s(b1_{s⁻¹})e ≠ β_t(b1_{t⁻¹})e``
    for some block generator b.
    """
    S = action.semigroup
    A = action.algebra
    if T_B is None:
        T_B = stabilizer(action, B)
    members = T_B.members if isinstance(T_B, Subsemigroup) else frozenset(T_B)
    gens = B.generators(A)
    images = [[apply(action, s, b) for b in gens] for s in S]
    for s in S:
        idems = [e for e in idempotents_of(A, action.supports[s]) if not e.is_zero()]
        if not idems:
            continue
        for t in S:
            if S.r(s) != S.r(t) or S.mul[S.inv[s]][t] in members:
                continue
            for e in idems:
                if not any(images[s][k] * e != images[t][k] * e for k in range(len(gens))):
                    return False, (S.names[s], S.names[t], str(e))
    return True, None


@dataclass
class Restriction:
    """``β_T`` on ``A_T = ⊕_{e ∈ E(T)} E_e``.

    ``indices[k-1]`` is the index in A of the k-th primitive idempotent of
    ``A_T``; ``ids[k]`` is the parent id of the k-th element of T.
    """

    action: Action
    indices: tuple[int, ...]
    ids: tuple[int, ...]

    def to_parent(self, P: PartitionSubalgebra) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(self.indices[i - 1] for i in b) for b in P.blocks)


def restrict_action(action: Action, T) -> Restriction:
    sub = T if isinstance(T, Subsemigroup) else Subsemigroup(action.semigroup, frozenset(T))
    if not sub.is_closed():
        raise InvalidStructure("not an inverse subsemigroup", witness=sub.names())
    ST, ids = sub.as_semigroup()
    S = action.semigroup
    used = sorted(set().union(*(action.supports[e] for e in sub.members if S.is_idempotent(e))))
    pos = {old: k for k, old in enumerate(used, 1)}
    A_T = SplitAlgebra(len(used), action.algebra.field)
    supports = [frozenset(pos[i] for i in action.supports[s]) for s in ids]
    maps = [{pos[i]: pos[j] for i, j in action.maps[s]} for s in ids]
    return Restriction(Action(ST, A_T, supports, maps), tuple(used), ids)


def fixed_subalgebra_of(action: Action, T) -> PartitionSubalgebra:
    """``A^{β_T}`` for a full T, as a partition of the indices of A."""
    if not is_full(action.semigroup, T.members if isinstance(T, Subsemigroup) else T):
        raise InvalidStructure("T is not full, so A_T may be smaller than A")
    res = restrict_action(action, T)
    return PartitionSubalgebra(res.to_parent(fixed_subalgebra(res.action)))


# -- quotient actions -------------------------------------------------------------------------


@dataclass
class QuotientAction:
    quotient: object            # QuotientStructure
    semigroup: InverseSemigroup
    subalgebra: PartitionSubalgebra     # B = A^{β_T}; block k of B is index k of the new algebra
    action: Action
    coordinates: GaloisCoordinates | None
    fixed_matches: bool          # fixed algebra of β̄, pulled back to A, equals A^β
    checks: CheckReport = field(default_factory=CheckReport)

    @property
    def galois(self) -> bool:
        return self.coordinates is not None and self.fixed_matches and self.checks.ok


def quotient_action(action: Action, T) -> QuotientAction:
    """The induced action of ``S/T`` on ``B = A^{β_T}`` for T Clifford, normal, full, ⊇ S∖max S.

    Block k of B becomes the k-th primitive idempotent. For a class c with a
    maximal representative g, ``E_c = B·1_g`` and ``σ̄_c`` sends a block P to
    the block containing ``σ_g(P)``. Every maximal member of a class must
    induce the same map.
    """
    S = action.semigroup
    members = T.members if isinstance(T, Subsemigroup) else frozenset(T)
    maxS, _ = max_elements(S)
    problems = []
    if not is_full(S, members):
        problems.append("T is not full")
    if not is_normal(S, members):
        problems.append("T is not normal")
    if not is_clifford(members, S):
        problems.append("T is not Clifford")
    if not (set(S) - set(maxS)) <= members:
        problems.append("T does not contain S ∖ max S")
    if problems:
        raise InvalidStructure("; ".join(problems), witness=S.name_set(members))
    q = quotient(S, members)
    if not q.is_inverse_semigroup:
        raise InvalidStructure("S/T is not an inverse semigroup")
    QS = q.as_semigroup()
    B = fixed_subalgebra_of(action, members)
    block_index = {}
    for k, b in enumerate(B.blocks, 1):
        for i in b:
            block_index[i] = k
    Abar = SplitAlgebra(len(B.blocks), action.algebra.field)
    maxset = set(maxS)
    supports, maps = [], []
    for c, cls in enumerate(q.classes):
        reps = [g for g in cls if g in maxset and action.supports[g]]
        induced = set()
        for g in reps:
            sg = action.sigma(g)
            m = {}
            for k, P in enumerate(B.blocks, 1):
                inside = [i for i in P if i in sg]
                if not inside:
                    continue
                image = {sg[i] for i in inside}
                target = block_index[sg[inside[0]]]
                if len(inside) != len(P) or image != set(B.blocks[target - 1]):
                    raise TheoremViolation("σ_g does not carry blocks of B onto blocks",
                                           witness=(S.names[g], P))
                m[k] = target
            induced.add(_freeze(m))
        if len(induced) > 1:
            raise TheoremViolation("induced map depends on the representative", witness=q.names[c])
        m = dict(induced.pop()) if induced else {}
        maps.append(m)
        supports.append(frozenset(m.values()))
    qa = Action(QS, Abar, supports, maps)
    checks = validate_action(qa)
    checks.set("orthogonal", is_orthogonal(qa))
    coords = find_galois_coordinates(qa)
    fixed_bar = fixed_subalgebra(qa)
    pulled = PartitionSubalgebra(tuple(tuple(i for k in blk for i in B.blocks[k - 1])
                                       for blk in fixed_bar.blocks))
    return QuotientAction(q, QS, B, qa, coords, pulled == fixed_subalgebra(action), checks)


# -- groupoid actions ----------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GroupoidAction:
    """An action of an ordered groupoid, same relabeling realization as :class:`Action`."""

    groupoid: OrderedGroupoid
    algebra: SplitAlgebra
    supports: tuple[frozenset[int], ...]
    maps: tuple[tuple[tuple[int, int], ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "supports", tuple(frozenset(x) for x in self.supports))
        object.__setattr__(self, "maps", tuple(_freeze(m) for m in self.maps))

    def sigma(self, g: int) -> dict[int, int]:
        return dict(self.maps[g])

    @classmethod
    def from_action(cls, action: Action, G: OrderedGroupoid) -> "GroupoidAction":
        if tuple(G.names) != tuple(action.semigroup.names):
            raise InvalidStructure("groupoid and semigroup elements differ")
        return cls(G, action.algebra, action.supports, action.maps)


def validate_groupoid_action(ga: GroupoidAction) -> CheckReport:
    G = ga.groupoid
    N = G.names
    maps = [ga.sigma(g) for g in G]
    sup = ga.supports
    rep = CheckReport()
    rep.record("σ_g is a bijection E_{g⁻¹} → E_g", next(
        (N[g] for g in G if set(maps[g]) != sup[G.inv[g]] or set(maps[g].values()) != sup[g]), None))
    rep.record("E_g = E_{r(g)}", next((N[g] for g in G if sup[g] != sup[G.ran[g]]), None))
    rep.record("β_e = Id on E_e", next(
        (N[e] for e in G.identities if any(i != j for i, j in maps[e].items())), None))
    rep.record("σ_g∘σ_h = σ_gh", next(
        ((N[g], N[h]) for g in G for h in G if G.pmul[g][h] is not None
         and _compose(maps[g], maps[h]) != maps[G.pmul[g][h]]), None))
    rep.record("ordered: g ≤ h ⇒ E_g ⊆ E_h, β_g = β_h restricted", next(
        ((N[g], N[h]) for g in G for h in G if G.leq(g, h)
         and (not sup[g] <= sup[h] or any(maps[h].get(i) != j for i, j in maps[g].items()))), None))
    return rep
