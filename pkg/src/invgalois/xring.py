"""Skew semigroup and groupoid rings over relabeling actions, and the Galois checks on them.

A basis element ``(s, i)`` stands for ``eᵢu_s`` with ``i`` in the support of
``E_s``. Since ``β_{s⁻¹}(eᵢ)e_j`` is ``e_j`` or 0, every product of basis
elements is a single basis element or zero:
``(eᵢu_s)(e_ju_t) = eᵢu_{st}`` when ``σ_s(j) = i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .act import (Action, GroupoidAction, find_galois_coordinates, fixed_subalgebra,
                  is_orthogonal)
from .errors import InvalidStructure
from .gpd import esn_groupoid
from .linalg import RowSpace, rank
from .report import CheckReport
from .scalars import QQ, Field


@dataclass(frozen=True, eq=False)
class SkewRing:
    """Structure constants on a basis of ``(element id, index)`` pairs.

    ``mul[p][q]`` is the basis position of the product, or None for zero.
    """

    basis: tuple[tuple[int, int], ...]
    names: tuple[str, ...]
    mul: tuple[tuple[int | None, ...], ...]
    field: Field = QQ

    def __post_init__(self):
        object.__setattr__(self, "_pos", {b: k for k, b in enumerate(self.basis)})

    @property
    def dim(self) -> int:
        return len(self.basis)

    def position(self, s: int, i: int) -> int:
        return self._pos[(s, i)]

    def has(self, s: int, i: int) -> bool:
        return (s, i) in self._pos

    def label(self, p: int) -> str:
        s, i = self.basis[p]
        return f"e{i}u[{self.names[s]}]"

    def multiply(self, x, y):
        """Product of two coefficient vectors."""
        out = [self.field.zero] * self.dim
        for p, a in enumerate(x):
            if a == 0:
                continue
            row = self.mul[p]
            for q, b in enumerate(y):
                if b != 0 and row[q] is not None:
                    out[row[q]] += a * b
        return out

    def unit_vector(self, p: int):
        v = [self.field.zero] * self.dim
        v[p] = self.field.one
        return v


def _skew_ring(names, supports, maps, product, defined, field) -> SkewRing:
    basis = tuple((s, i) for s in range(len(names)) for i in sorted(supports[s]))
    pos = {b: k for k, b in enumerate(basis)}
    sig = [dict(m) for m in maps]
    mul = []
    for (s, i) in basis:
        row = []
        for (t, j) in basis:
            if not defined(s, t) or sig[s].get(j) != i:
                row.append(None)
                continue
            st = product(s, t)
            if (st, i) not in pos:
                raise InvalidStructure("product leaves the basis: e_i is not in E_st",
                                       witness=(names[s], names[t], i))
            row.append(pos[(st, i)])
        mul.append(tuple(row))
    return SkewRing(basis, tuple(names), tuple(mul), field)


def build_skew_semigroup_ring(action: Action) -> SkewRing:
    """``L(A, S, β) = ⊕ E_s u_s`` with ``(au_s)(bu_t) = β_s(β_{s⁻¹}(a)b)u_{st}``."""
    S = action.semigroup
    return _skew_ring(S.names, action.supports, action.maps, lambda s, t: S.mul[s][t],
                      lambda s, t: True, action.algebra.field)


def build_skew_groupoid_ring(gaction: GroupoidAction) -> SkewRing:
    """Same product, but only for composable pairs ``d(g) = r(h)``."""
    G = gaction.groupoid
    return _skew_ring(G.names, gaction.supports, gaction.maps, lambda g, h: G.pmul[g][h],
                      lambda g, h: G.pmul[g][h] is not None, gaction.algebra.field)


def relation_ideal(action: Action, ring: SkewRing | None = None):
    """Basis of the two-sided ideal generated by ``aᵢu_s − aᵢu_t`` for ``s ≤ t``."""
    L = ring or build_skew_semigroup_ring(action)
    S = action.semigroup
    span = RowSpace(L.dim, L.field)
    pending = []
    for s in S:
        for t in S:
            if s == t or not S.leq(s, t):
                continue
            for i in sorted(action.supports[s]):
                if not L.has(t, i):
                    raise InvalidStructure("E_s ⊄ E_t for s ≤ t", witness=(S.names[s], S.names[t]))
                v = [L.field.zero] * L.dim
                v[L.position(s, i)] += 1
                v[L.position(t, i)] -= 1
                if span.add(v):
                    pending.append(v)
    while pending:
        v = pending.pop()
        for p in range(L.dim):
            e = L.unit_vector(p)
            for w in (L.multiply(e, v), L.multiply(v, e)):
                if span.add(w):
                    pending.append(w)
    return span.basis()


def check_associativity(ring: SkewRing):
    """``(True, None)`` or ``(False, (p, q, r))`` naming a failing basis triple."""
    M = ring.mul
    for p in range(ring.dim):
        for q in range(ring.dim):
            pq = M[p][q]
            for r in range(ring.dim):
                left = None if pq is None else M[pq][r]
                qr = M[q][r]
                right = None if qr is None else M[p][qr]
                if left != right:
                    return False, (ring.label(p), ring.label(q), ring.label(r))
    return True, None


@dataclass
class LinearMapCheck:
    """A linear map between explicit bases; ``images[k]`` is the image of domain basis k."""

    images: list
    dom_dim: int
    cod_dim: int
    rank: int
    multiplicative: bool | None = None
    witness: object = None

    @property
    def injective(self) -> bool:
        return self.rank == self.dom_dim

    @property
    def surjective(self) -> bool:
        return self.rank == self.cod_dim

    @property
    def bijective(self) -> bool:
        return self.injective and self.surjective


def _linear_check(images, cod_dim, field) -> LinearMapCheck:
    return LinearMapCheck(images, len(images), cod_dim, rank(images, field) if images else 0)


def crossed_product_iso(action: Action) -> LinearMapCheck:
    """``au_s ↦ au_s`` from ``A ⋉ S`` to ``A ⋉ 𝔾(S)``: bijective and multiplicative on basis pairs."""
    if not is_orthogonal(action):
        raise InvalidStructure("the crossed-product isomorphism needs an orthogonal action")
    LS = build_skew_semigroup_ring(action)
    G = esn_groupoid(action.semigroup)
    LG = build_skew_groupoid_ring(GroupoidAction.from_action(action, G))
    phi = [LG.position(*b) for b in LS.basis]
    images = [LG.unit_vector(phi[p]) for p in range(LS.dim)]
    check = _linear_check(images, LG.dim, LS.field)
    check.multiplicative = True
    for p in range(LS.dim):
        for q in range(LS.dim):
            a = LS.mul[p][q]
            b = LG.mul[phi[p]][phi[q]]
            if (None if a is None else phi[a]) != b:
                check.multiplicative = False
                check.witness = (LS.label(p), LS.label(q))
                return check
    return check


# -- Galois equivalences ------------------------------------------------------------------


@dataclass
class TheoremReport:
    items: dict = field(default_factory=dict)      # item -> "pass" | "fail" | "unsupported"
    details: dict = field(default_factory=dict)
    coordinates_found: bool = False

    @property
    def all_pass(self) -> bool:
        return all(v == "pass" for v in self.items.values())

    def consistent(self) -> bool:
        """The items hold together exactly when coordinates exist (unsupported items skipped)."""
        decided = [v == "pass" for v in self.items.values() if v != "unsupported"]
        return all(d == self.coordinates_found for d in decided)


def _tensor_basis(fixed):
    """Basis ``eᵢ ⊗ e_j`` of ``A ⊗_{A^β} A``: pairs in a common ``A^β`` block."""
    return [(i, j) for b in fixed.blocks for i in b for j in b]


def galois_theorem_checks(action: Action, coords=None) -> TheoremReport:
    """Materialize j, φ, the t-element span and τ′ as matrices and rank-check them."""
    if not is_orthogonal(action):
        raise InvalidStructure("Galois checks need an orthogonal action")
    S = action.semigroup
    F = action.algebra.field
    n = action.algebra.n
    L = build_skew_semigroup_ring(action)
    fixed = fixed_subalgebra(action)
    free = len({len(b) for b in fixed.blocks}) <= 1
    rep = TheoremReport()
    if coords is None:
        coords = find_galois_coordinates(action)
    rep.coordinates_found = coords is not None
    sig = [dict(m) for m in action.maps]
    inv_sig = [{j: i for i, j in m.items()} for m in sig]
    tensor = _tensor_basis(fixed)

    # (ii) j : A⋉S → End_{A^β}(A), j(eᵢu_s) = matrix unit E_{i, σ_s⁻¹(i)}
    if free:
        end_pos = {ik: k for k, ik in enumerate(tensor)}
        images = []
        for (s, i) in L.basis:
            v = [F.zero] * len(tensor)
            v[end_pos[(i, inv_sig[s][i])]] = F.one
            images.append(v)
        jc = _linear_check(images, len(tensor), F)
        unit_of = [end_pos[(i, inv_sig[s][i])] for (s, i) in L.basis]
        mult = True
        for p in range(L.dim):
            for q in range(L.dim):
                (i, k), (k2, l) = tensor[unit_of[p]], tensor[unit_of[q]]
                composed = end_pos[(i, l)] if k == k2 else None
                prod = L.mul[p][q]
                if (None if prod is None else unit_of[prod]) != composed:
                    mult = False
                    jc.witness = (L.label(p), L.label(q))
        jc.multiplicative = mult
        rep.items["ii"] = "pass" if jc.bijective and mult else "fail"
        rep.details["ii"] = {"dim_skew": L.dim, "dim_end": len(tensor), "rank": jc.rank,
                             "multiplicative": mult}
    else:
        rep.items["ii"] = "unsupported"
        rep.details["ii"] = {"reason": "A is not free over its fixed algebra"}

    # (iv) φ : A ⊗_{A^β} A → ∏_s E_s, φ(eᵢ ⊗ e_j)_s = eᵢβ_s(e_j 1_{s⁻¹})
    def tensor_images():
        out = []
        for (i, j) in tensor:
            v = [F.zero] * L.dim
            for s in S:
                if sig[s].get(j) == i:
                    v[L.position(s, i)] += 1
            out.append(v)
        return out

    if free:
        pc = _linear_check(tensor_images(), L.dim, F)
        rep.items["iv"] = "pass" if pc.bijective else "fail"
        rep.details["iv"] = {"dim_tensor": len(tensor), "dim_product": L.dim, "rank": pc.rank}
    else:
        rep.items["iv"] = "unsupported"
        rep.details["iv"] = {"reason": "A is not free over its fixed algebra"}

    # (v) A t A = A⋉S with t = Σ 1_s u_s and A embedded by a ↦ Σ_e a1_e u_e
    t = [F.one] * L.dim
    iota = {}
    for e in S.idempotents:
        for i in action.supports[e]:
            iota[i] = L.unit_vector(L.position(e, i))
    span = RowSpace(L.dim, F)
    for a in range(1, n + 1):
        at = L.multiply(iota[a], t)
        for b in range(1, n + 1):
            span.add(L.multiply(at, iota[b]))
    rep.items["v"] = "pass" if span.dim == L.dim else "fail"
    rep.details["v"] = {"span": span.dim, "dim_skew": L.dim}

    # (vi) τ′ : A ⊗_{A^β} A → A⋉S surjective; same coordinates as φ
    tc = _linear_check(tensor_images(), L.dim, F)
    rep.items["vi"] = "pass" if tc.surjective else "fail"
    rep.details["vi"] = {"rank": tc.rank, "dim_skew": L.dim}
    return rep


def skew_ring_report(action: Action) -> CheckReport:
    """Dimension, relation ideal, associativity, and agreement with the groupoid ring."""
    L = build_skew_semigroup_ring(action)
    rep = CheckReport()
    N = relation_ideal(action, L)
    rep.set("relation ideal N = 0", not N, len(N) or None)
    assoc, wit = check_associativity(L)
    rep.set("associative", assoc, wit)
    if is_orthogonal(action):
        iso = crossed_product_iso(action)
        rep.set("A⋉S ≅ A⋉𝔾(S)", iso.bijective and iso.multiplicative, iso.witness)
        G = esn_groupoid(action.semigroup)
        LG = build_skew_groupoid_ring(GroupoidAction.from_action(action, G))
        rep.set("associativity verdicts agree", check_associativity(LG)[0] == assoc)
    return rep
