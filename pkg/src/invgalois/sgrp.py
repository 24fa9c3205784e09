"""Finite inverse semigroups.

Two element models share one table-based representation: partial bijections of
``{1..m}`` (closed under composition) and abstract multiplication tables. The
composition convention is ``(f*g)(x) = f(g(x))``: the right factor acts first.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, permutations

import numpy as np

from .errors import InvalidStructure


# -- partial bijections -------------------------------------------------------


@dataclass(frozen=True)
class PartialBijection:
    """An injective partial map on ``{1..ground_size}``, stored as its sorted graph."""

    ground_size: int
    graph: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.ground_size < 1:
            raise ValueError("ground set must be nonempty")
        graph = tuple(sorted((int(i), int(j)) for i, j in self.graph))
        dom = [i for i, _ in graph]
        img = [j for _, j in graph]
        if len(set(dom)) != len(dom):
            raise InvalidStructure("not a function: repeated domain point", witness=graph)
        if len(set(img)) != len(img):
            raise InvalidStructure("not injective", witness=graph)
        if any(not 1 <= x <= self.ground_size for x in dom + img):
            raise InvalidStructure(f"point outside {{1..{self.ground_size}}}", witness=graph)
        object.__setattr__(self, "graph", graph)

    @classmethod
    def from_dict(cls, ground_size: int, mapping: dict[int, int]) -> "PartialBijection":
        return cls(ground_size, tuple(mapping.items()))

    @classmethod
    def identity_on(cls, ground_size: int, points) -> "PartialBijection":
        return cls(ground_size, tuple((i, i) for i in points))

    @property
    def mapping(self) -> dict[int, int]:
        return dict(self.graph)

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(i for i, _ in self.graph)

    @property
    def image(self) -> frozenset[int]:
        return frozenset(j for _, j in self.graph)

    @property
    def rank(self) -> int:
        return len(self.graph)

    def is_idempotent(self) -> bool:
        return all(i == j for i, j in self.graph)

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def sort_key(self):
        return (self.rank, not self.is_idempotent(), tuple(sorted(self.domain)),
                tuple(j for _, j in self.graph))

    def name(self) -> str:
        return partial_bijection_name(self)


def compose(f: PartialBijection, g: PartialBijection) -> PartialBijection:
    """``f∘g``: apply ``g`` first, defined on ``{x ∈ dom g : g(x) ∈ dom f}``."""
    if f.ground_size != g.ground_size:
        raise ValueError(f"ground sizes differ: {f.ground_size} vs {g.ground_size}")
    fm = f.mapping
    return PartialBijection(f.ground_size, tuple((x, fm[y]) for x, y in g.graph if y in fm))


def invert(f: PartialBijection) -> PartialBijection:
    return PartialBijection(f.ground_size, tuple((j, i) for i, j in f.graph))


def _digits(points) -> str:
    return "".join(str(p) for p in sorted(points))


def partial_bijection_name(f: PartialBijection) -> str:
    """Display name.

    For ground sets of size at most 3 this uses the I/T/S/D/P family names
    (``T12``: 1↦2, ``S12``: swap, ``D12^13``: {1,2}→{1,3} fixing the shared
    point, ``P12^13``: same sets, not fixing it, ``T12^3``: swap fixing 3).
    Larger ground sets get the graph, e.g. ``(1>2,2>1)``.
    """
    m = f.ground_size
    g = f.mapping
    dom, img = f.domain, f.image
    generic = "(" + ",".join(f"{i}>{j}" for i, j in f.graph) + ")"
    if m > 3:
        return generic
    if f.rank == 0:
        return "I0"
    if f.is_idempotent():
        return "I" + _digits(dom)
    if f.rank == 1:
        (i, j), = f.graph
        return f"T{i}{j}"
    if f.rank == 2:
        if dom == img:
            return "S" + _digits(dom)
        (c,) = dom & img
        kind = "D" if g[c] == c else "P"
        return f"{kind}{_digits(dom)}^{_digits(img)}"
    # rank 3 on {1,2,3}
    fixed = [x for x in (1, 2, 3) if g[x] == x]
    if len(fixed) == 1:
        i, j = sorted(x for x in (1, 2, 3) if x != fixed[0])
        return f"T{i}{j}^{fixed[0]}"
    return "S123" if g[1] == 2 else "S132"


# -- the semigroup --------------------------------------------------------------


def check_inverse_semigroup_table(mul, inv):
    """Return None if ``(mul, inv)`` is a finite inverse semigroup, else ``(axiom, witness)``."""
    n = len(mul)
    M = np.asarray(mul, dtype=np.int64).reshape(n, n) if n else np.zeros((0, 0), dtype=np.int64)
    if n == 0:
        return ("nonempty", ())
    if M.min() < 0 or M.max() >= n:
        bad = np.argwhere((M < 0) | (M >= n))[0]
        return ("closure", (int(bad[0]), int(bad[1])))
    left = M[M, :]                     # [a,b,c] -> (ab)c
    right = M[:, M]                    # [a,b,c] -> a(bc)
    diff = np.argwhere(left != right)
    if len(diff):
        a, b, c = (int(x) for x in diff[0])
        return ("associativity", (a, b, c))
    if len(inv) != n:
        return ("inverse table size", len(inv))
    idx = np.arange(n)
    for s in range(n):
        st = M[s, :]
        sts = M[st, s]
        tst = M[M[:, s], idx]
        cands = np.flatnonzero((sts == s) & (tst == idx))
        if len(cands) != 1:
            return ("unique inverse", (s, tuple(int(c) for c in cands)))
        if int(cands[0]) != inv[s]:
            return ("inverse table", (s, int(cands[0]), inv[s]))
    E = [e for e in range(n) if M[e, e] == e]
    for e in E:
        for f in E:
            if M[e, f] != M[f, e]:
                return ("idempotents commute", (e, f))
    return None


class InverseSemigroup:
    """A finite inverse semigroup given by tables over element ids ``0..n-1``.

    ``payload`` optionally holds the concrete element (a :class:`PartialBijection`)
    behind each id. Instances are treated as immutable.
    """

    def __init__(self, names, mul, inv, payload=None, check: bool = True):
        self.names = tuple(names)
        self.mul = tuple(tuple(int(x) for x in row) for row in mul)
        self.inv = tuple(int(x) for x in inv)
        self.payload = tuple(payload) if payload is not None else None
        if len(set(self.names)) != len(self.names):
            raise InvalidStructure("duplicate element names")
        if check:
            problem = check_inverse_semigroup_table(self.mul, self.inv)
            if problem is not None:
                axiom, wit = problem
                raise InvalidStructure(f"not an inverse semigroup: {axiom} fails", witness=self._named(wit))

    @classmethod
    def from_table(cls, names, mul, inv=None) -> "InverseSemigroup":
        """Validated construction; a missing inverse table is computed, never repaired."""
        n = len(names)
        if inv is None:
            inv = []
            for s in range(n):
                c = [t for t in range(n) if mul[mul[s][t]][s] == s and mul[mul[t][s]][t] == t]
                if len(c) != 1:
                    raise InvalidStructure("element without a unique inverse", witness=names[s])
                inv.append(c[0])
        return cls(names, mul, inv, check=True)

    def _named(self, wit):
        if isinstance(wit, tuple):
            return tuple(self._named(w) for w in wit)
        if isinstance(wit, int) and 0 <= wit < len(self.names):
            return self.names[wit]
        return wit

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(range(len(self.names)))

    def __eq__(self, other):
        return (isinstance(other, InverseSemigroup) and self.names == other.names
                and self.mul == other.mul and self.inv == other.inv)

    def __hash__(self):
        return hash((self.names, self.mul))

    def __repr__(self):
        return f"InverseSemigroup(order={len(self)})"

    @cached_property
    def _index(self):
        return {n: i for i, n in enumerate(self.names)}

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"no element named {name!r}") from None

    def ids(self, names) -> frozenset[int]:
        return frozenset(self.index(n) for n in names)

    def name_set(self, ids) -> list[str]:
        return [self.names[i] for i in sorted(ids)]

    def product(self, s: int, t: int) -> int:
        return self.mul[s][t]

    def d(self, s: int) -> int:
        """``s⁻¹s``"""
        return self.mul[self.inv[s]][s]

    def r(self, s: int) -> int:
        """``ss⁻¹``"""
        return self.mul[s][self.inv[s]]

    @cached_property
    def idempotents(self) -> tuple[int, ...]:
        return tuple(e for e in self if self.mul[e][e] == e)

    def is_idempotent(self, s: int) -> bool:
        return self.mul[s][s] == s

    @cached_property
    def leq_table(self) -> tuple[tuple[bool, ...], ...]:
        E = self.idempotents
        n = len(self)
        rows = [[False] * n for _ in range(n)]
        for t in self:
            for f in E:
                rows[self.mul[t][f]][t] = True
        return tuple(tuple(r) for r in rows)

    def leq(self, s: int, t: int) -> bool:
        return self.leq_table[s][t]

    @cached_property
    def identity(self) -> int | None:
        for u in self.idempotents:
            if all(self.mul[u][s] == s == self.mul[s][u] for s in self):
                return u
        return None

    def is_group(self) -> bool:
        return len(self.idempotents) == 1


def natural_leq(S: InverseSemigroup, s: int, t: int) -> bool:
    """``s ≤ t`` iff ``s = t·f`` for some idempotent ``f``."""
    return any(S.mul[t][f] == s for f in S.idempotents)


def restricted_product(S: InverseSemigroup, s: int, t: int) -> int | None:
    """``s·t`` when ``s⁻¹s = tt⁻¹``, else None."""
    return S.mul[s][t] if S.d(s) == S.r(t) else None


def max_elements(S: InverseSemigroup) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """``(max S, max E(S))`` in the natural order."""
    leq = S.leq_table
    maxS = tuple(s for s in S if not any(leq[s][t] and s != t for t in S))
    E = S.idempotents
    maxE = tuple(e for e in E if not any(leq[e][f] and e != f for f in E))
    return maxS, maxE


# -- construction from partial bijections -----------------------------------------


def semigroup_from_elements(elements, names=None) -> InverseSemigroup:
    """Tables for a set of partial bijections that is already closed."""
    elems = sorted(set(elements), key=PartialBijection.sort_key)
    pos = {f: i for i, f in enumerate(elems)}
    try:
        mul = [[pos[compose(f, g)] for g in elems] for f in elems]
        inv = [pos[invert(f)] for f in elems]
    except KeyError as exc:
        raise InvalidStructure("element set is not closed", witness=str(exc)) from None
    if names is None:
        names = [f.name() for f in elems]
    else:
        names = [names.get(f, f.name()) for f in elems]
    # closure of partial bijections is associative with unique inverses by construction
    return InverseSemigroup(names, mul, inv, payload=elems, check=False)


def close(generators, names: dict | None = None) -> InverseSemigroup:
    """Smallest set of partial bijections containing ``generators`` closed under ∘ and inverse."""
    gens = list(generators)
    if not gens:
        raise ValueError("need at least one generator")
    m = {g.ground_size for g in gens}
    if len(m) != 1:
        raise ValueError(f"generators on different ground sets: {sorted(m)}")
    seen = set(gens) | {invert(g) for g in gens}
    gens = list(seen)
    queue = deque(seen)
    while queue:
        f = queue.popleft()
        for g in gens:
            for h in (compose(f, g), compose(g, f)):
                if h not in seen:
                    seen.add(h)
                    queue.append(h)
    return semigroup_from_elements(seen, names)


def all_partial_bijections(m: int, max_rank: int | None = None):
    k_max = m if max_rank is None else max_rank
    out = []
    pts = range(1, m + 1)
    for k in range(k_max + 1):
        for dom in combinations(pts, k):
            for img in permutations(pts, k):
                out.append(PartialBijection(m, tuple(zip(dom, img))))
    return out


# -- subsemigroups ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Subsemigroup:
    parent: InverseSemigroup
    members: frozenset[int]

    def __eq__(self, other):
        return (isinstance(other, Subsemigroup) and self.members == other.members
                and (self.parent is other.parent or self.parent == other.parent))

    def __hash__(self):
        return hash(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, s):
        return s in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def names(self) -> list[str]:
        return self.parent.name_set(self.members)

    def is_closed(self) -> bool:
        S = self.parent
        return all(S.inv[s] in self.members for s in self.members) and all(
            S.mul[s][t] in self.members for s in self.members for t in self.members)

    def as_semigroup(self) -> tuple[InverseSemigroup, tuple[int, ...]]:
        """The subsemigroup as a standalone semigroup, plus the id map into the parent."""
        S = self.parent
        ids = tuple(sorted(self.members))
        pos = {s: i for i, s in enumerate(ids)}
        mul = [[pos[S.mul[a][b]] for b in ids] for a in ids]
        inv = [pos[S.inv[a]] for a in ids]
        payload = [S.payload[a] for a in ids] if S.payload is not None else None
        return InverseSemigroup([S.names[a] for a in ids], mul, inv, payload, check=False), ids


def generate(S: InverseSemigroup, gens) -> frozenset[int]:
    """Closure of ``gens`` under multiplication and inversion inside ``S``."""
    seen = set(gens)
    seen |= {S.inv[g] for g in seen}
    queue = deque(seen)
    while queue:
        a = queue.popleft()
        for b in list(seen):
            for c in (S.mul[a][b], S.mul[b][a]):
                if c not in seen:
                    seen.add(c)
                    queue.append(c)
                    ci = S.inv[c]
                    if ci not in seen:
                        seen.add(ci)
                        queue.append(ci)
    return frozenset(seen)


def subsemigroup(S: InverseSemigroup, gens) -> Subsemigroup:
    return Subsemigroup(S, generate(S, gens))


def _members(T) -> frozenset[int]:
    return T.members if isinstance(T, Subsemigroup) else frozenset(T)


def is_full(S: InverseSemigroup, T) -> bool:
    return set(S.idempotents) <= _members(T)


def is_normal(S: InverseSemigroup, T) -> bool:
    """Full, and ``s⁻¹Ts ⊆ T`` for every ``s``."""
    members = _members(T)
    if not is_full(S, members):
        return False
    return all(S.mul[S.mul[S.inv[s]][t]][s] in members for s in S for t in members)


def is_clifford(T, parent: InverseSemigroup | None = None) -> bool:
    """``tt⁻¹ = t⁻¹t`` for every ``t``. Accepts a Subsemigroup or a whole semigroup."""
    if isinstance(T, InverseSemigroup):
        S, members = T, range(len(T))
    elif isinstance(T, Subsemigroup):
        S, members = T.parent, T.members
    else:
        S, members = parent, T
    return all(S.d(t) == S.r(t) for t in members)


def enumerate_full_subsemigroups(S: InverseSemigroup, required=()) -> list[Subsemigroup]:
    """All full inverse subsemigroups containing ``required``.

    Breadth-first over closures: start from ``⟨required ∪ E(S)⟩`` and repeatedly
    add one outside element and re-close. Every such subsemigroup is reached
    since adding its elements one at a time only passes through closures that
    stay inside it.
    """
    seed = generate(S, set(required) | set(S.idempotents))
    seen = {seed}
    queue = deque([seed])
    while queue:
        T = queue.popleft()
        for s in S:
            if s in T:
                continue
            U = generate(S, T | {s})
            if U not in seen:
                seen.add(U)
                queue.append(U)
    found = sorted(seen, key=lambda m: (len(m), sorted(m)))
    return [Subsemigroup(S, m) for m in found]


# -- quotients ------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class QuotientStructure:
    """``G/H`` for a normal ordered subgroupoid (or normal inverse subsemigroup).

    ``classes`` lists the ∼ classes sorted by least member; ``reps[c]`` is that
    least member. ``product[c][d]`` is the partial class product (None when
    undefined). When the identity classes form a meet semilattice the quotient
    is an inverse semigroup and ``pseudoproduct`` is its total multiplication.
    """

    parent_names: tuple[str, ...]
    sub: frozenset[int]
    classes: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...]
    leq: tuple[tuple[bool, ...], ...]
    inv: tuple[int, ...]
    dom: tuple[int, ...]
    ran: tuple[int, ...]
    identities: tuple[int, ...]
    product: tuple[tuple[int | None, ...], ...]
    is_inverse_semigroup: bool
    meet: dict = field(default_factory=dict)
    pseudoproduct: tuple[tuple[int, ...], ...] | None = None
    # every class obtained for each pair over all representatives and all auxiliary choices
    product_choices: tuple = ()

    @property
    def reps(self) -> tuple[int, ...]:
        return tuple(c[0] for c in self.classes)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(f"[{self.parent_names[c[0]]}]" for c in self.classes)

    def __len__(self):
        return len(self.classes)

    def representative_independent(self) -> bool:
        return all(len(ch) <= 1 for row in self.product_choices for ch in row)

    def as_semigroup(self) -> InverseSemigroup:
        if not self.is_inverse_semigroup:
            raise InvalidStructure("quotient is not an inverse semigroup (identity classes lack meets)")
        return InverseSemigroup(self.names, self.pseudoproduct, self.inv, check=True)


def quotient_core(names, pmul, inv, leq, dom, ran, restrict, sub, identities) -> QuotientStructure:
    """Shared quotient construction over an ordered groupoid given by primitives.

    ``pmul[a][b]`` is the partial product (None if undefined), ``dom``/``ran``
    map elements to identities, ``restrict(g, e)`` is ``(g | e)`` for ``e ≤ d(g)``.
    """
    n = len(names)
    H = sorted(sub)
    # U(a) = { x·a·y : x, y ∈ H, products defined }
    reach = []
    for a in range(n):
        U = set()
        for x in H:
            if dom[x] != ran[a]:
                continue
            xa = pmul[x][a]
            for y in H:
                if ran[y] == dom[a]:
                    U.add(pmul[xa][y])
        reach.append(U)
    below = [[any(leq[u][b] for u in reach[a]) for b in range(n)] for a in range(n)]
    sim = [[below[a][b] and below[b][a] for b in range(n)] for a in range(n)]
    for a in range(n):
        if not sim[a][a]:
            raise InvalidStructure("∼ is not reflexive; subgroupoid not wide/normal", witness=names[a])
        for b in range(n):
            if sim[a][b] != sim[b][a]:
                raise InvalidStructure("∼ is not symmetric", witness=(names[a], names[b]))
    classes, class_of = [], [None] * n
    for a in range(n):
        if class_of[a] is None:
            members = tuple(b for b in range(n) if sim[a][b])
            for b in members:
                if class_of[b] is not None:
                    raise InvalidStructure("∼ is not transitive", witness=(names[a], names[b]))
                class_of[b] = len(classes)
            classes.append(members)
    k = len(classes)
    # class order, domain, range and inverse must not depend on the representative
    cleq = []
    for c in range(k):
        row = []
        for c2 in range(k):
            vals = {below[a][b] for a in classes[c] for b in classes[c2]}
            if len(vals) != 1:
                raise InvalidStructure("class order depends on representatives",
                                       witness=(names[classes[c][0]], names[classes[c2][0]]))
            row.append(vals.pop())
        cleq.append(tuple(row))
    cinv, cdom, cran = [], [], []
    for c, members in enumerate(classes):
        for target, fn in ((cinv, lambda a: inv[a]), (cdom, lambda a: dom[a]), (cran, lambda a: ran[a])):
            vals = {class_of[fn(a)] for a in members}
            if len(vals) != 1:
                raise InvalidStructure("class structure map depends on representatives",
                                       witness=names[members[0]])
            target.append(vals.pop())
    ident = tuple(sorted({class_of[e] for e in identities}))

    def products_for(g, h):
        out = set()
        for a in H:
            if ran[h] == dom[a] and leq[ran[a]][dom[g]]:
                g1 = restrict(g, ran[a])
                ga = pmul[g1][a]
                out.add(class_of[pmul[ga][h]])
        return out

    product, choices = [], []
    for c in range(k):
        prow, crow = [], []
        for c2 in range(k):
            if cdom[c] != cran[c2]:
                prow.append(None)
                crow.append(frozenset())
                continue
            allres = set()
            for g in classes[c]:
                for h in classes[c2]:
                    allres |= products_for(g, h)
            first = products_for(classes[c][0], classes[c2][0])
            if not first:
                raise InvalidStructure("no auxiliary element for a defined class product",
                                       witness=(names[classes[c][0]], names[classes[c2][0]]))
            prow.append(min(first))
            crow.append(frozenset(allres))
        product.append(tuple(prow))
        choices.append(tuple(crow))

    # meets among identity classes
    meet = {}
    is_semilattice = True
    for e in ident:
        for f in ident:
            lower = [x for x in ident if cleq[x][e] and cleq[x][f]]
            glb = [x for x in lower if all(cleq[y][x] for y in lower)]
            if len(glb) != 1:
                is_semilattice = False
            else:
                meet[(e, f)] = glb[0]
    pseudo = None
    if is_semilattice:
        def restr(c, e):
            hits = [x for x in range(k) if cleq[x][c] and cdom[x] == e]
            if len(hits) != 1:
                raise InvalidStructure("quotient restriction not unique", witness=(c, e, hits))
            return hits[0]

        def corestr(e, c):
            hits = [x for x in range(k) if cleq[x][c] and cran[x] == e]
            if len(hits) != 1:
                raise InvalidStructure("quotient corestriction not unique", witness=(e, c, hits))
            return hits[0]

        pseudo = []
        for c in range(k):
            row = []
            for c2 in range(k):
                e = meet[(cdom[c], cran[c2])]
                p = product[restr(c, e)][corestr(e, c2)]
                if p is None:
                    raise InvalidStructure("pseudoproduct undefined", witness=(c, c2))
                row.append(p)
            pseudo.append(tuple(row))
        pseudo = tuple(pseudo)
    return QuotientStructure(
        parent_names=tuple(names), sub=frozenset(sub), classes=tuple(classes),
        class_of=tuple(class_of), leq=tuple(cleq), inv=tuple(cinv), dom=tuple(cdom),
        ran=tuple(cran), identities=ident, product=tuple(product),
        is_inverse_semigroup=is_semilattice, meet=meet, pseudoproduct=pseudo,
        product_choices=tuple(choices))


def quotient(S: InverseSemigroup, T) -> QuotientStructure:
    """``S/T`` under ``a ∼_T b`` (restricted products, natural order)."""
    members = _members(T)
    if not is_normal(S, members):
        raise InvalidStructure("quotient needs a normal inverse subsemigroup",
                               witness=S.name_set(members))
    n = len(S)
    pmul = [[S.mul[a][b] if S.d(a) == S.r(b) else None for b in range(n)] for a in range(n)]
    dom = [S.d(a) for a in range(n)]
    ran = [S.r(a) for a in range(n)]
    return quotient_core(S.names, pmul, S.inv, S.leq_table, dom, ran,
                         lambda g, e: S.mul[g][e], members, S.idempotents)
