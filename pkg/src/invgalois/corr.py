"""The subsemigroup/subalgebra correspondence, computed from both ends and cross-checked.

From the semigroup side every full ``T ⊇ S ∖ max S`` is sent to ``A^{β_T}``.
From the algebra side every partition subalgebra containing ``A^β`` is tested
for separability and β-strength and, if it passes, sent to ``T_B``. The two
lists must be the same set of pairs; any disagreement raises
:class:`TheoremViolation` naming the offending side.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .act import (Action, QuotientAction, find_galois_coordinates, fixed_subalgebra,
                  fixed_subalgebra_of, is_beta_strong, is_orthogonal, quotient_action,
                  stabilizer, validate_action)
from .alg import PartitionSubalgebra, enumerate_partition_subalgebras, separability_check
from .errors import InvalidStructure, TheoremViolation, Unsupported
from .sgrp import Subsemigroup, enumerate_full_subsemigroups, is_clifford, is_normal, max_elements


@dataclass(frozen=True)
class CorrespondencePair:
    subsemigroup: Subsemigroup
    subalgebra: PartitionSubalgebra
    label: str | None = None

    def names(self) -> list[str]:
        return self.subsemigroup.names()


@dataclass(frozen=True)
class Rejection:
    subalgebra: PartitionSubalgebra
    reason: str       # "does not contain A^β", "not separable", "separability unsupported", "not β-strong"
    witness: object = None


@dataclass
class CorrespondenceReport:
    fixed_algebra: PartitionSubalgebra
    pairs: list[CorrespondencePair] = field(default_factory=list)
    rejected: list[Rejection] = field(default_factory=list)
    counts: dict = field(default_factory=dict)

    def by_label(self) -> dict:
        return {p.label: p for p in self.pairs if p.label is not None}

    def subalgebras(self) -> list[PartitionSubalgebra]:
        return [p.subalgebra for p in self.pairs]


def _admissible(action: Action):
    """Raise unless the action meets the standing assumptions of the correspondence."""
    S = action.semigroup
    rep = validate_action(action)
    if not rep.ok:
        raise InvalidStructure("action does not validate", witness=rep.failures())
    if not is_orthogonal(action):
        raise InvalidStructure("action is not orthogonal")
    if find_galois_coordinates(action) is None:
        raise InvalidStructure("A is not a β-Galois extension of A^β")
    _, maxE = max_elements(S)
    empty = [S.names[e] for e in maxE if not action.supports[e]]
    if empty:
        raise InvalidStructure("a maximal idempotent has zero ideal", witness=empty)


def correspondence(action: Action, labels: dict | None = None,
                   check_preconditions: bool = True) -> CorrespondenceReport:
    """Both directions of the correspondence; pairs sorted finest subalgebra first.

    ``labels`` optionally maps subalgebras to display names.
    """
    if check_preconditions:
        _admissible(action)
    S = action.semigroup
    labels = labels or {}
    maxS, _ = max_elements(S)
    required = set(S) - set(maxS)
    fixed = fixed_subalgebra(action)
    report = CorrespondenceReport(fixed)

    # semigroup side
    from_T = {}
    full = enumerate_full_subsemigroups(S, required)
    for T in full:
        B = fixed_subalgebra_of(action, T)
        back = stabilizer(action, B)
        if back != T:
            raise TheoremViolation("T_{A^{β_T}} differs from T", witness=(T.names(), str(B)))
        if B in from_T:
            raise TheoremViolation("two subsemigroups share a fixed subalgebra", witness=str(B))
        from_T[B] = T

    # algebra side
    from_B = {}
    unsupported = set()
    partitions = enumerate_partition_subalgebras(action.algebra.n)
    separable = strong = 0
    for B in partitions:
        if not B.refines(fixed):
            report.rejected.append(Rejection(B, "does not contain A^β"))
            continue
        sep = separability_check(B, fixed, action.algebra.field)
        if sep.status == "unsupported":
            unsupported.add(B)
            report.rejected.append(Rejection(B, "separability unsupported", sep.reason))
            continue
        if not sep.separable:
            report.rejected.append(Rejection(B, "not separable", sep.reason))
            continue
        separable += 1
        ok, wit = is_beta_strong(action, B)
        if not ok:
            report.rejected.append(Rejection(B, "not β-strong", wit))
            continue
        strong += 1
        T = stabilizer(action, B)
        if not required <= T.members or len(T) == 0 or not set(S.idempotents) <= T.members:
            raise TheoremViolation("T_B is not full or misses S ∖ max S", witness=str(B))
        if fixed_subalgebra_of(action, T) != B:
            raise TheoremViolation("A^{β_{T_B}} differs from B", witness=str(B))
        from_B[B] = T

    missing = set(from_T) - set(from_B)
    if missing & unsupported:
        raise Unsupported("separability undecided for subalgebras reached from the semigroup side: "
                          + ", ".join(sorted(str(b) for b in missing & unsupported)))
    if from_T != from_B:
        extra = sorted(str(b) for b in set(from_B) ^ set(from_T))
        raise TheoremViolation("the two directions give different pairs", witness=extra)

    for B in sorted(from_T, key=PartitionSubalgebra.sort_key):
        report.pairs.append(CorrespondencePair(from_T[B], B, labels.get(B)))
    report.counts = {
        "full subsemigroups": len(full),
        "partition subalgebras": len(partitions),
        "separable": separable,
        "beta-strong and separable": strong,
        "pairs": len(report.pairs),
    }
    return report


@dataclass(frozen=True)
class SurveyEntry:
    subsemigroup: Subsemigroup
    quotient: QuotientAction
    galois: bool


def normal_clifford_survey(action: Action, report: CorrespondenceReport | None = None) -> list[SurveyEntry]:
    """Quotient actions for every admissible T that is normal and Clifford."""
    S = action.semigroup
    if report is None:
        maxS, _ = max_elements(S)
        candidates = enumerate_full_subsemigroups(S, set(S) - set(maxS))
    else:
        candidates = [p.subsemigroup for p in report.pairs]
    out = []
    for T in sorted(candidates, key=lambda T: (len(T), sorted(T.members))):
        if not (is_normal(S, T.members) and is_clifford(T.members, S)):
            continue
        qa = quotient_action(action, T)
        out.append(SurveyEntry(T, qa, qa.galois))
    return out
