"""Split commutative algebras ``A = ⊕ R·eᵢ`` and their partition subalgebras.

Indices of primitive idempotents are 1-based throughout (``e1 .. en``);
coefficient vectors are plain 0-based tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import InvalidStructure
from .linalg import solve
from .scalars import QQ, Field

DEFAULT_PARTITION_BOUND = 10


@dataclass(frozen=True)
class SplitAlgebra:
    n: int
    field: Field = QQ

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be nonnegative")

    @property
    def indices(self) -> range:
        return range(1, self.n + 1)

    def element(self, coeffs) -> "AlgebraElement":
        coeffs = tuple(self.field(c) for c in coeffs)
        if len(coeffs) != self.n:
            raise ValueError(f"expected {self.n} coefficients, got {len(coeffs)}")
        return AlgebraElement(self, coeffs)

    def from_dict(self, coeffs: dict) -> "AlgebraElement":
        return self.element(coeffs.get(i, 0) for i in self.indices)

    def basis(self, i: int) -> "AlgebraElement":
        return self.indicator([i])

    def indicator(self, support) -> "AlgebraElement":
        """``Σ_{i ∈ support} eᵢ``."""
        support = set(support)
        return self.element(1 if i in support else 0 for i in self.indices)

    @property
    def zero(self) -> "AlgebraElement":
        return self.element([0] * self.n)

    @property
    def one(self) -> "AlgebraElement":
        return self.indicator(self.indices)


@dataclass(frozen=True)
class AlgebraElement:
    algebra: SplitAlgebra
    coeffs: tuple

    def _check(self, other):
        if not isinstance(other, AlgebraElement) or other.algebra != self.algebra:
            raise TypeError("elements of different algebras")

    def __add__(self, other):
        self._check(other)
        return AlgebraElement(self.algebra, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return AlgebraElement(self.algebra, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return AlgebraElement(self.algebra, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            self._check(other)
            return AlgebraElement(self.algebra, tuple(a * b for a, b in zip(self.coeffs, other.coeffs)))
        c = self.algebra.field(other)
        return AlgebraElement(self.algebra, tuple(a * c for a in self.coeffs))

    def __rmul__(self, other):
        return self * other

    def __getitem__(self, i: int):
        """Coefficient of ``eᵢ`` (1-based)."""
        return self.coeffs[i - 1]

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_idempotent(self) -> bool:
        return self * self == self

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, c in enumerate(self.coeffs, 1) if c != 0)

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs, 1):
            if c == 0:
                continue
            terms.append(f"e{i}" if c == 1 else f"{c}*e{i}")
        return " + ".join(terms) or "0"


@dataclass(frozen=True)
class IdempotentIdeal:
    """``E = ⊕_{i ∈ support} R·eᵢ`` with unit ``1_E = Σ eᵢ``."""

    support: frozenset[int]

    def unit(self, algebra: SplitAlgebra) -> AlgebraElement:
        return algebra.indicator(self.support)

    def contains(self, a: AlgebraElement) -> bool:
        return a.support <= self.support


def idempotents_of(algebra: SplitAlgebra, ideal) -> list[AlgebraElement]:
    """All idempotents of the ideal: the ``2^|support|`` subset sums, 0 and ``1_E`` included."""
    support = sorted(ideal.support if isinstance(ideal, IdempotentIdeal) else ideal)
    out = []
    for k in range(len(support) + 1):
        for sub in combinations(support, k):
            out.append(algebra.indicator(sub))
    return out


def block_label(block) -> str:
    if len(block) == 1:
        return f"Re{block[0]}"
    return "R(" + " + ".join(f"e{i}" for i in block) + ")"


@dataclass(frozen=True)
class PartitionSubalgebra:
    """``⊕_{P} R·1_P`` for a set partition of ``{1..n}``; blocks sorted, ordered by least element."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0] if b else 0))
        if any(len(b) == 0 for b in blocks):
            raise InvalidStructure("empty block", witness=blocks)
        flat = [i for b in blocks for i in b]
        if len(flat) != len(set(flat)):
            raise InvalidStructure("blocks overlap", witness=blocks)
        if flat and sorted(flat) != list(range(1, len(flat) + 1)):
            raise InvalidStructure("blocks do not cover 1..n", witness=blocks)
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def discrete(cls, n: int) -> "PartitionSubalgebra":
        return cls(tuple((i,) for i in range(1, n + 1)))

    @classmethod
    def trivial(cls, n: int) -> "PartitionSubalgebra":
        return cls((tuple(range(1, n + 1)),))

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    def __len__(self):
        return len(self.blocks)

    def block_of(self, i: int) -> tuple[int, ...]:
        return next(b for b in self.blocks if i in b)

    def generators(self, algebra: SplitAlgebra) -> list[AlgebraElement]:
        return [algebra.indicator(b) for b in self.blocks]

    def contains(self, a: AlgebraElement) -> bool:
        """Block-constant coefficient vectors are exactly the elements of B."""
        return all(len({a[i] for i in b}) == 1 for b in self.blocks)

    def refines(self, other: "PartitionSubalgebra") -> bool:
        """Every block lies inside a block of ``other``, i.e. ``other ⊆ self`` as algebras."""
        return all(any(set(b) <= set(c) for c in other.blocks) for b in self.blocks)

    def sort_key(self):
        return (-len(self.blocks), self.blocks)

    def label(self) -> str:
        return " + ".join(block_label(b) for b in self.blocks)

    def __str__(self):
        return "|".join(",".join(str(i) for i in b) for b in self.blocks)


def set_partitions(n: int):
    """Restricted-growth enumeration of all set partitions of ``{1..n}``."""
    if n == 0:
        yield ()
        return
    labels = [0] * n

    def rec(i, top):
        if i == n:
            blocks = [[] for _ in range(top + 1)]
            for pos, lab in enumerate(labels, 1):
                blocks[lab].append(pos)
            yield tuple(tuple(b) for b in blocks)
            return
        for lab in range(top + 2):
            labels[i] = lab
            yield from rec(i + 1, max(top, lab))

    labels[0] = 0
    yield from rec(1, 0)


def enumerate_partition_subalgebras(n, bound: int = DEFAULT_PARTITION_BOUND) -> list[PartitionSubalgebra]:
    """All ``Bell(n)`` partition subalgebras, finest first, then lexicographic."""
    if isinstance(n, SplitAlgebra):
        n = n.n
    if n > bound:
        raise ValueError(f"n = {n} exceeds the partition enumeration bound {bound}")
    return sorted((PartitionSubalgebra(p) for p in set_partitions(n)),
                  key=PartitionSubalgebra.sort_key)


@dataclass
class SeparabilityResult:
    status: str                     # "separable", "not separable", "unsupported"
    witness: dict | None = None     # {(block_i, block_j): coeff} for f_i ⊗ f_j
    reason: str = ""

    @property
    def separable(self) -> bool:
        return self.status == "separable"


def separability_check(B: PartitionSubalgebra, base: PartitionSubalgebra,
                       field: Field = QQ) -> SeparabilityResult:
    """Search for a separability idempotent of ``B`` over ``base``.

    ``B ⊗_base B`` has basis ``f_i ⊗ f_j`` over pairs of ``B``-blocks lying in a
    common ``base`` block. Unknown coefficients ``x_ij`` must satisfy
    ``μ(x) = 1_B`` and ``(f_k ⊗ 1)x = (1 ⊗ f_k)x`` for every block idempotent.
    """
    if not B.refines(base):
        raise InvalidStructure("base is not a subalgebra of B", witness=(str(B), str(base)))
    groups = []
    for c in base.blocks:
        groups.append([k for k, b in enumerate(B.blocks) if set(b) <= set(c)])
    if len({len(g) for g in groups}) > 1:
        return SeparabilityResult("unsupported", reason="B is not free over the base")
    pairs = [(i, j) for g in groups for i in g for j in g]
    col = {p: c for c, p in enumerate(pairs)}
    rows, rhs = [], []
    for k in range(len(B.blocks)):                     # μ(x) = Σ x_kk f_k = Σ f_k
        row = [0] * len(pairs)
        row[col[(k, k)]] = 1
        rows.append(row)
        rhs.append(1)
    for k in range(len(B.blocks)):                     # coefficient of f_a ⊗ f_b
        for a, b in pairs:
            row = [0] * len(pairs)
            if a == k:
                row[col[(k, b)]] += 1
            if b == k:
                row[col[(a, k)]] -= 1
            if any(row):
                rows.append(row)
                rhs.append(0)
    sol = solve(rows, rhs, field)
    if sol is None:
        return SeparabilityResult("not separable", reason="no separability idempotent")
    witness = {(B.blocks[i], B.blocks[j]): sol[col[(i, j)]]
               for (i, j) in pairs if sol[col[(i, j)]] != 0}
    return SeparabilityResult("separable", witness=witness)
