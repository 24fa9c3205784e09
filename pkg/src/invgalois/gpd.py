"""Ordered and inductive groupoids, and the ESN passage to and from inverse semigroups."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations

from .errors import InvalidStructure
from .report import CheckReport
from .sgrp import InverseSemigroup, QuotientStructure, is_normal, quotient, quotient_core


class OrderedGroupoid:
    """Finite groupoid with a partial order; ``pmul[g][h]`` is None when ``gh`` is undefined."""

    def __init__(self, names, pmul, inv, leq):
        self.names = tuple(names)
        self.pmul = tuple(tuple(p for p in row) for row in pmul)
        self.inv = tuple(inv)
        self.leq_table = tuple(tuple(bool(x) for x in row) for row in leq)
        n = len(self.names)
        dom, ran = [], []
        for g in range(n):
            d = self.pmul[self.inv[g]][g]
            r = self.pmul[g][self.inv[g]]
            if d is None or r is None:
                raise InvalidStructure("g⁻¹g or gg⁻¹ undefined", witness=self.names[g])
            dom.append(d)
            ran.append(r)
        self.dom = tuple(dom)
        self.ran = tuple(ran)

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(range(len(self.names)))

    def __eq__(self, other):
        return (isinstance(other, OrderedGroupoid) and self.names == other.names
                and self.pmul == other.pmul and self.inv == other.inv
                and self.leq_table == other.leq_table)

    def __hash__(self):
        return hash((self.names, self.pmul))

    def index(self, name):
        return self.names.index(name)

    @cached_property
    def identities(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.dom) | set(self.ran)))

    def leq(self, a, b) -> bool:
        return self.leq_table[a][b]

    def restriction(self, x, e):
        """``(x | e)``: the unique ``y ≤ x`` with ``d(y) = e`` (None if absent or ambiguous)."""
        hits = [y for y in self if self.leq_table[y][x] and self.dom[y] == e]
        return hits[0] if len(hits) == 1 else None

    def corestriction(self, e, x):
        """``(e | x)``: the unique ``y ≤ x`` with ``r(y) = e``."""
        hits = [y for y in self if self.leq_table[y][x] and self.ran[y] == e]
        return hits[0] if len(hits) == 1 else None

    def meet(self, e, f):
        lower = [x for x in self.identities if self.leq_table[x][e] and self.leq_table[x][f]]
        glb = [x for x in lower if all(self.leq_table[y][x] for y in lower)]
        return glb[0] if len(glb) == 1 else None

    def is_inductive(self) -> bool:
        return all(self.meet(e, f) is not None for e in self.identities for f in self.identities)

    def max_elements(self) -> tuple[int, ...]:
        L = self.leq_table
        return tuple(g for g in self if not any(L[g][h] and g != h for h in self))


class InductiveGroupoid(OrderedGroupoid):
    """An ordered groupoid whose identities form a meet semilattice."""

    def __init__(self, names, pmul, inv, leq):
        super().__init__(names, pmul, inv, leq)
        meets = {}
        for e in self.identities:
            for f in self.identities:
                m = OrderedGroupoid.meet(self, e, f)
                if m is None:
                    raise InvalidStructure("identities lack a meet",
                                           witness=(self.names[e], self.names[f]))
                meets[(e, f)] = m
        self._meets = meets

    @classmethod
    def from_ordered(cls, G: OrderedGroupoid) -> "InductiveGroupoid":
        return cls(G.names, G.pmul, G.inv, G.leq_table)

    def meet(self, e, f):
        return self._meets[(e, f)]


def esn_groupoid(S: InverseSemigroup) -> InductiveGroupoid:
    """``𝔾(S)``: same elements, restricted product, natural order."""
    n = len(S)
    pmul = [[S.mul[a][b] if S.d(a) == S.r(b) else None for b in range(n)] for a in range(n)]
    return InductiveGroupoid(S.names, pmul, S.inv, S.leq_table)


def pseudoproduct(G: InductiveGroupoid, x, y):
    """``x ⋆ y = (x|e)·(e|y)`` with ``e = d(x) ∧ r(y)``."""
    e = G.meet(G.dom[x], G.ran[y])
    xe, ey = G.restriction(x, e), G.corestriction(e, y)
    if xe is None or ey is None:
        raise InvalidStructure("restriction missing; groupoid is not ordered",
                               witness=(G.names[x], G.names[y]))
    return G.pmul[xe][ey]


def esn_semigroup(G: OrderedGroupoid) -> InverseSemigroup:
    """``𝕊(G)``: the pseudoproduct semigroup. Rejects non-inductive input."""
    if not isinstance(G, InductiveGroupoid):
        if not G.is_inductive():
            bad = next((e, f) for e in G.identities for f in G.identities if G.meet(e, f) is None)
            raise InvalidStructure("groupoid is not inductive",
                                   witness=(G.names[bad[0]], G.names[bad[1]]))
        G = InductiveGroupoid.from_ordered(G)
    n = len(G)
    mul = [[pseudoproduct(G, x, y) for y in range(n)] for x in range(n)]
    return InverseSemigroup(G.names, mul, G.inv, check=True)


# -- axioms -----------------------------------------------------------------------


class AxiomReport(CheckReport):
    @property
    def ordered(self) -> bool:
        return all(ok for ax, (ok, _) in self.results.items() if ax != "inductive")

    @property
    def inductive(self) -> bool:
        return self.ordered and self.results.get("inductive", (False, None))[0]


def validate_ordered(G: OrderedGroupoid) -> AxiomReport:
    """Check groupoid laws, partial order, OG1, OG2, OG3, OG3*, G₀ order ideal, and meets."""
    rep = AxiomReport()
    N = G.names
    n = len(G)
    L = G.leq_table
    P = G.pmul
    idx = range(n)

    def first(gen):
        return next(gen, None)

    rep.record("groupoid: defined iff d(g)=r(h)", first(
        (N[g], N[h]) for g in idx for h in idx if (P[g][h] is not None) != (G.dom[g] == G.ran[h])))
    rep.record("groupoid: d(gh)=d(h), r(gh)=r(g)", first(
        (N[g], N[h]) for g in idx for h in idx if P[g][h] is not None
        and (G.dom[P[g][h]] != G.dom[h] or G.ran[P[g][h]] != G.ran[g])))
    rep.record("groupoid: associativity", first(
        (N[a], N[b], N[c]) for a in idx for b in idx for c in idx
        if P[a][b] is not None and P[b][c] is not None and P[P[a][b]][c] != P[a][P[b][c]]))
    rep.record("groupoid: identities are units", first(
        N[g] for g in idx if P[G.ran[g]][g] != g or P[g][G.dom[g]] != g))
    rep.record("partial order", first(
        (N[a], N[b], N[c]) for a in idx for b in idx for c in idx
        if not L[a][a] or (L[a][b] and L[b][a] and a != b) or (L[a][b] and L[b][c] and not L[a][c])))
    rep.record("OG1", first(
        (N[x], N[y]) for x in idx for y in idx if L[x][y] and not L[G.inv[x]][G.inv[y]]))
    rep.record("OG2", first(
        (N[x], N[y], N[u], N[v]) for x in idx for y in idx if L[x][y]
        for u in idx for v in idx if L[u][v] and P[x][u] is not None and P[y][v] is not None
        and not L[P[x][u]][P[y][v]]))
    ids = G.identities

    def og3(x, e, side):
        hits = [y for y in idx if L[y][x] and (G.dom[y] if side == "d" else G.ran[y]) == e]
        return len(hits) == 1

    rep.record("OG3", first(
        (N[x], N[e]) for x in idx for e in ids if L[e][G.dom[x]] and not og3(x, e, "d")))
    rep.record("OG3*", first(
        (N[e], N[x]) for x in idx for e in ids if L[e][G.ran[x]] and not og3(x, e, "r")))
    idset = set(ids)
    rep.record("G0 order ideal", first(
        (N[g], N[e]) for e in ids for g in idx if L[g][e] and g not in idset))
    rep.record("inductive", first(
        (N[e], N[f]) for e in ids for f in ids if OrderedGroupoid.meet(G, e, f) is None))
    return rep


# -- subgroupoids -----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SubgroupoidH:
    parent: OrderedGroupoid
    members: frozenset[int]

    def __eq__(self, other):
        return isinstance(other, SubgroupoidH) and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))

    def names(self):
        return [self.parent.names[g] for g in sorted(self.members)]

    @property
    def identities(self):
        G = self.parent
        return frozenset(G.dom[g] for g in self.members)

    def is_subgroupoid(self) -> bool:
        G, M = self.parent, self.members
        return all(G.inv[g] in M for g in M) and all(
            G.pmul[g][h] in M for g in M for h in M if G.pmul[g][h] is not None)

    def is_wide(self, identities=None) -> bool:
        ids = self.parent.identities if identities is None else identities
        return set(ids) <= self.members

    def is_ordered_subgroupoid(self) -> bool:
        G, M = self.parent, self.members
        H0 = self.identities
        for x in M:
            for e in H0:
                if G.leq_table[e][G.dom[x]]:
                    r = G.restriction(x, e)
                    if r is None or r not in M:
                        return False
        return self.is_subgroupoid()

    def is_clifford(self) -> bool:
        G = self.parent
        return all(G.dom[h] == G.ran[h] for h in self.members)

    def normality_witness(self):
        """None when normal: wide, ordered, and ``a⁻¹·H·b ⊆ H`` for bounded pairs."""
        G, M = self.parent, self.members
        if not self.is_wide():
            return ("not wide", None)
        if not self.is_ordered_subgroupoid():
            return ("not an ordered subgroupoid", None)
        L = G.leq_table
        for a in G:
            for b in G:
                if not any(L[a][g] and L[b][g] for g in G):
                    continue
                ai = G.inv[a]
                for h in M:
                    x = G.pmul[ai][h]
                    if x is None:
                        continue
                    y = G.pmul[x][b]
                    if y is not None and y not in M:
                        return ("a⁻¹·H·b ⊄ H", (G.names[a], G.names[h], G.names[b]))
        return None

    def is_normal(self) -> bool:
        return self.normality_witness() is None


def generate_subgroupoid(G: OrderedGroupoid, gens) -> frozenset[int]:
    seen = set(gens) | {G.inv[g] for g in gens}
    seen |= {G.dom[g] for g in seen} | {G.ran[g] for g in seen}
    queue = deque(seen)
    while queue:
        a = queue.popleft()
        for b in list(seen):
            for c in (G.pmul[a][b], G.pmul[b][a]):
                if c is not None and c not in seen:
                    seen.add(c)
                    seen.add(G.inv[c])
                    queue.extend((c, G.inv[c]))
    return frozenset(seen)


def enumerate_wide_subgroupoids(G: OrderedGroupoid, ambient=None) -> list[SubgroupoidH]:
    """Wide subgroupoids of the subgroupoid ``ambient`` (default: all of G), BFS over closures."""
    amb = frozenset(G) if ambient is None else frozenset(ambient)
    ids = {G.dom[g] for g in amb} | {G.ran[g] for g in amb}
    seed = generate_subgroupoid(G, ids)
    seen = {seed}
    queue = deque([seed])
    while queue:
        H = queue.popleft()
        for g in sorted(amb - H):
            U = generate_subgroupoid(G, H | {g})
            if U not in seen:
                seen.add(U)
                queue.append(U)
    return [SubgroupoidH(G, m) for m in sorted(seen, key=lambda m: (len(m), sorted(m)))]


def max_subgroupoid(G: OrderedGroupoid) -> SubgroupoidH:
    """The maximal elements, provided ``g`` maximal implies ``r(g)`` maximal."""
    mx = set(G.max_elements())
    for g in sorted(mx):
        if G.ran[g] not in mx:
            raise InvalidStructure("max G is not a subgroupoid: r(g) not maximal", witness=G.names[g])
    H = SubgroupoidH(G, frozenset(mx))
    if not H.is_subgroupoid():
        raise InvalidStructure("max G is not closed", witness=H.names())
    return H


def lift_wide_subgroupoid(G: OrderedGroupoid, Hp) -> SubgroupoidH:
    """``H′ ↦ H′ ∪ (G ∖ max G)`` for a wide subgroupoid ``H′`` of ``max G``."""
    top = max_subgroupoid(G)
    members = Hp.members if isinstance(Hp, SubgroupoidH) else frozenset(Hp)
    sub = SubgroupoidH(G, members)
    if not members <= top.members or not sub.is_subgroupoid():
        raise InvalidStructure("not a subgroupoid of max G", witness=sub.names())
    if not top.identities <= members:
        raise InvalidStructure("not wide in max G",
                               witness=[G.names[e] for e in sorted(top.identities - members)])
    return SubgroupoidH(G, members | (frozenset(G) - top.members))


def restrict_to_max(G: OrderedGroupoid, H) -> SubgroupoidH:
    """Inverse of :func:`lift_wide_subgroupoid`: ``H ↦ H ∩ max G``."""
    members = H.members if isinstance(H, SubgroupoidH) else frozenset(H)
    return SubgroupoidH(G, members & max_subgroupoid(G).members)


# -- connected components -------------------------------------------------------------


def group_table(G: OrderedGroupoid, elements):
    els = sorted(elements)
    pos = {g: i for i, g in enumerate(els)}
    return [[pos[G.pmul[a][b]] for b in els] for a in els]


def groups_isomorphic(t1, t2) -> bool:
    """Brute-force search for an isomorphism between two small group tables."""
    n = len(t1)
    if n != len(t2):
        return False

    def unit(t):
        return next(e for e in range(n) if all(t[e][x] == x for x in range(n)))

    def orders(t):
        e = unit(t)
        out = []
        for x in range(n):
            k, y = 1, x
            while y != e:
                y = t[y][x]
                k += 1
            out.append(k)
        return out

    o1, o2 = orders(t1), orders(t2)
    if sorted(o1) != sorted(o2):
        return False
    for perm in permutations(range(n)):
        if any(o1[i] != o2[perm[i]] for i in range(n)):
            continue
        if all(perm[t1[a][b]] == t2[perm[a]][perm[b]] for a in range(n) for b in range(n)):
            return True
    return False


def cyclic_table(n: int):
    return [[(a + b) % n for b in range(n)] for a in range(n)]


@dataclass
class Component:
    elements: frozenset[int]
    identities: tuple[int, ...]
    basepoint: int
    isotropy: tuple[int, ...]
    coarse_product: bool       # verified G_c ≅ (G_c)₀² × isotropy


def connected_components(G: OrderedGroupoid, members=None) -> list[Component]:
    """Components of the groupoid (or of the subgroupoid ``members``).

    For each component the isotropy group is taken at the least identity and
    the decomposition ``g ↦ (d(g), r(g), p_{r(g)}⁻¹ g p_{d(g)})`` into the coarse
    groupoid times the isotropy group is built and checked to be a bijective functor.
    """
    M = frozenset(G) if members is None else frozenset(members)
    ids = sorted({G.dom[g] for g in M} | {G.ran[g] for g in M})
    parent = {e: e for e in ids}

    def find(e):
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    for g in M:
        a, b = find(G.dom[g]), find(G.ran[g])
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups = {}
    for e in ids:
        groups.setdefault(find(e), []).append(e)
    out = []
    for root in sorted(groups):
        objs = tuple(sorted(groups[root]))
        objset = set(objs)
        elems = frozenset(g for g in M if G.ran[g] in objset)
        base = objs[0]
        iso = tuple(sorted(g for g in elems if G.dom[g] == base and G.ran[g] == base))
        # p_f : base -> f
        path = {}
        for f in objs:
            cands = sorted(g for g in elems if G.dom[g] == base and G.ran[g] == f)
            path[f] = cands[0] if cands else None
        ok = all(p is not None for p in path.values())
        if ok:
            def decompose(g):
                pr = G.inv[path[G.ran[g]]]
                x = G.pmul[pr][g]
                return (G.dom[g], G.ran[g], G.pmul[x][path[G.dom[g]]])
            images = {g: decompose(g) for g in elems}
            ok = (len(set(images.values())) == len(elems) == len(objs) ** 2 * len(iso)
                  and all(img[2] in iso for img in images.values()))
            if ok:
                for g in elems:
                    for h in elems:
                        gh = G.pmul[g][h]
                        if gh is None:
                            continue
                        (_, rg, ig), (dh, _, ih), (dgh, rgh, igh) = images[g], images[h], images[gh]
                        if (dgh, rgh) != (dh, rg) or G.pmul[ig][ih] != igh:
                            ok = False
        out.append(Component(elems, objs, base, iso, ok))
    return out


# -- quotients and congruences ----------------------------------------------------------


def groupoid_quotient(G: OrderedGroupoid, H) -> QuotientStructure:
    """``G/H`` under ``∼_H`` with the order ``≤_H`` and the coset product."""
    sub = H if isinstance(H, SubgroupoidH) else SubgroupoidH(G, frozenset(H))
    why = sub.normality_witness()
    if why is not None:
        raise InvalidStructure(f"quotient needs a normal ordered subgroupoid: {why[0]}", witness=why[1])

    def restrict(g, e):
        r = G.restriction(g, e)
        if r is None:
            raise InvalidStructure("restriction missing", witness=(G.names[g], G.names[e]))
        return r

    return quotient_core(G.names, G.pmul, G.inv, G.leq_table, G.dom, G.ran, restrict,
                         sub.members, G.identities)


def equiv_classes_strict(G: OrderedGroupoid, H) -> list[tuple[int, ...]]:
    """Classes of ``a ≡_H b ⇔ b⁻¹·a defined and in H``."""
    M = H.members if isinstance(H, SubgroupoidH) else frozenset(H)
    n = len(G)
    rel = [[G.pmul[G.inv[b]][a] is not None and G.pmul[G.inv[b]][a] in M for b in range(n)]
           for a in range(n)]
    seen, classes = set(), []
    for a in range(n):
        if a not in seen:
            cls = tuple(b for b in range(n) if rel[a][b])
            classes.append(cls)
            seen |= set(cls)
    return classes


@dataclass
class CongruenceReport:
    strict_classes: list       # ≡_H
    ordered_classes: list      # ∼_H
    strict_refines_ordered: bool
    coincide: bool
    clifford: bool


def compare_congruences(G: OrderedGroupoid, H) -> CongruenceReport:
    sub = H if isinstance(H, SubgroupoidH) else SubgroupoidH(G, frozenset(H))
    q = groupoid_quotient(G, sub)
    strict = equiv_classes_strict(G, sub)
    ordered = [tuple(c) for c in q.classes]
    refines = all(q.class_of[a] == q.class_of[c[0]] for c in strict for a in c)
    same = sorted(strict) == sorted(ordered)
    return CongruenceReport(strict, ordered, refines, same, sub.is_clifford())


def check_quotient_isomorphism(S: InverseSemigroup, T) -> dict:
    """Compare ``𝔾(S/T)`` with ``𝔾(S)/𝔾(T)`` through ``[s]_T ↦ [s]_H``.

    Checks that the map is well defined and bijective, carries the restricted
    product of ``𝔾(S/T)`` onto the class product, and preserves order and meets.
    """
    members = T.members if hasattr(T, "members") else frozenset(T)
    qs = quotient(S, members)
    if not qs.is_inverse_semigroup:
        return {"applicable": False}
    ST = qs.as_semigroup()
    G1 = esn_groupoid(ST)
    GS = esn_groupoid(S)
    qg = groupoid_quotient(GS, SubgroupoidH(GS, members))
    phi = {}
    well_defined = True
    for c, cls in enumerate(qs.classes):
        images = {qg.class_of[s] for s in cls}
        if len(images) != 1:
            well_defined = False
        phi[c] = images.pop()
    k = len(qs.classes)
    bijective = sorted(phi.values()) == list(range(len(qg.classes)))
    functor = all(
        (G1.pmul[a][b] is None) == (qg.product[phi[a]][phi[b]] is None)
        and (G1.pmul[a][b] is None or phi[G1.pmul[a][b]] == qg.product[phi[a]][phi[b]])
        for a in range(k) for b in range(k))
    order = all(G1.leq_table[a][b] == qg.leq[phi[a]][phi[b]] for a in range(k) for b in range(k))
    meets = all(phi[G1.meet(e, f)] == qg.meet.get((phi[e], phi[f]))
                for e in G1.identities for f in G1.identities)
    return {"applicable": True, "well_defined": well_defined, "bijective": bijective,
            "functor": functor, "order": order, "meets": meets,
            "isomorphic": well_defined and bijective and functor and order and meets}
