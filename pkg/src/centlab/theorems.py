"""Executable checkers for the centralizer-count characterizations.

Each registered statement maps a ring analysis to a verdict: VACUOUS when
the hypothesis fails, PASS when hypothesis and conclusion hold, FAIL when
the hypothesis holds but the conclusion does not.  A FAIL on a real catalog
ring means either an implementation bug or a genuine counterexample and is
never swallowed.

Checkers consume a RingAnalysis rather than the ring itself, so tests can
inject forged analyses and prove that no checker is a tautology.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .core import FiniteRing, additive_index, cent_structure, center, quotient_invariants
from .errors import BadParameterError, UnknownTheoremError
from .noncomm import (
    all_proper_centralizers_commutative,
    max_noncommuting_set,
    pairwise_intersection_is_center,
)

PASS = "PASS"
VACUOUS = "VACUOUS"
FAIL = "FAIL"


@dataclass(frozen=True)
class RingAnalysis:
    """Everything the checkers and report tables need about one ring.

    clique_witness lists a maximum pairwise non-commuting set;
    containment_witness, when present, is (r, (a, b, c)): a non-central
    element r whose proper non-commutative centralizer contains the
    centralizers of three distinct witness members a, b, c.
    """

    label: str
    order: int
    additive: tuple[int, ...]
    center_size: int
    index: int
    quotient: tuple[int, ...]
    n: int
    t: int
    commutative: bool
    unital: bool
    clique_witness: tuple[int, ...]
    proper_cent_commutative: bool
    proper_cent_witness: tuple | None
    pairwise_meet_central: bool
    pairwise_witness: tuple | None
    containment_witness: tuple | None


def _containment_witness(ring: FiniteRing, witness: tuple[int, ...]):
    cs = cent_structure(ring)
    member_sets = [cs.set_of(x) for x in witness]
    for pos in range(1, cs.n):
        host = cs.centralizers[pos]
        idxs = list(host.indices())
        commutative = all(
            ring._mul(a, b) == ring._mul(b, a)
            for i, a in enumerate(idxs) for b in idxs[i + 1:]
        )
        if commutative:
            continue
        inside = [x for x, s in zip(witness, member_sets) if s.issubset(host) and s != host]
        if len(inside) >= 3:
            rep = next(x for x in ring.elements() if cs.assignment[x] == pos)
            return (rep, tuple(inside[:3]))
    return None


def analyze(ring: FiniteRing, label: str | None = None) -> RingAnalysis:
    """Compute the full per-ring analysis consumed by checkers and reports."""
    z = center(ring)
    cs = cent_structure(ring)
    clique = max_noncommuting_set(ring)
    pcc, pcc_wit = all_proper_centralizers_commutative(ring)
    pic, pic_wit = pairwise_intersection_is_center(ring)
    return RingAnalysis(
        label=label or ring.label or "ring",
        order=ring.order,
        additive=ring.invariants,
        center_size=z.size,
        index=additive_index(ring, z),
        quotient=quotient_invariants(ring, z),
        n=cs.n,
        t=clique.t,
        commutative=ring.is_commutative,
        unital=ring.is_unital,
        clique_witness=clique.witness,
        proper_cent_commutative=pcc,
        proper_cent_witness=pcc_wit,
        pairwise_meet_central=pic,
        pairwise_witness=pic_wit,
        containment_witness=_containment_witness(ring, clique.witness),
    )


@dataclass(frozen=True)
class TheoremVerdict:
    theorem: str
    label: str
    hypothesis_holds: bool
    conclusion_holds: bool | None
    status: str
    witness: dict


@dataclass(frozen=True)
class TheoremInfo:
    """One registered statement: documented predicates plus the checker."""

    id: str
    hypothesis: str
    conclusion: str
    check: Callable[[RingAnalysis], tuple[bool, bool, dict]]


def _is_power_of_2(x: int) -> bool:
    return x >= 1 and x & (x - 1) == 0


def _chk_noncyclic(a: RingAnalysis):
    return (
        not a.commutative,
        len(a.quotient) >= 2,
        {"quotient": list(a.quotient)},
    )


def _chk_no_2_3(a: RingAnalysis):
    return True, a.n not in (2, 3), {"n": a.n}


def _iff(left: bool, right: bool) -> tuple[bool, dict]:
    forward = (not left) or right
    backward = (not right) or left
    return forward and backward, {"forward": forward, "backward": backward}


def _chk_t4_iff(a: RingAnalysis):
    ok, dirs = _iff(a.n == 4, a.index == 4)
    return not a.commutative, ok, {"n": a.n, "index": a.index, **dirs}


def _chk_t5_iff(a: RingAnalysis):
    ok, dirs = _iff(a.n == 5, a.index == 9)
    return not a.commutative, ok, {"n": a.n, "index": a.index, **dirs}


def _chk_t_ge3(a: RingAnalysis):
    return not a.commutative, a.t >= 3, {"t": a.t}


def _chk_t_plus_1(a: RingAnalysis):
    return not a.commutative, a.t + 1 <= a.n, {"t": a.t, "n": a.n}


def _chk_commcent_local(a: RingAnalysis):
    hyp = not a.commutative and a.proper_cent_commutative
    return hyp, a.pairwise_meet_central, {"counterexample": a.pairwise_witness}


def _chk_pairwise(a: RingAnalysis):
    hyp = not a.commutative and a.t == a.n - 1
    return hyp, a.pairwise_meet_central, {
        "t": a.t, "n": a.n, "counterexample": a.pairwise_witness,
    }


def _chk_comm_48(a: RingAnalysis):
    hyp = a.index in (4, 8)
    return hyp, a.proper_cent_commutative, {
        "index": a.index, "counterexample": a.proper_cent_witness,
    }


def _chk_tmax4(a: RingAnalysis):
    ok, dirs = _iff(a.n == 4, a.t == 3)
    return not a.commutative, ok, {"n": a.n, "t": a.t, **dirs}


def _chk_tmax5(a: RingAnalysis):
    ok, dirs = _iff(a.n == 5, a.t == 4)
    return not a.commutative, ok, {"n": a.n, "t": a.t, **dirs}


def _chk_t6_index(a: RingAnalysis):
    return a.n == 6, a.index in (8, 12, 16), {"index": a.index}


def _chk_z2cube(a: RingAnalysis):
    hyp = not a.commutative and a.quotient == (2, 2, 2)
    return hyp, a.n in (6, 8), {"n": a.n}


def _chk_tplus2(a: RingAnalysis):
    hyp = not a.commutative and a.n == a.t + 2
    return hyp, a.containment_witness is not None, {
        "witness": a.containment_witness,
    }


def _chk_not_2pow(a: RingAnalysis):
    return a.n == 7, not _is_power_of_2(a.index), {"index": a.index}


def _chk_t7_index(a: RingAnalysis):
    return a.n == 7, a.index in (12, 18, 20, 24, 25), {"index": a.index}


def _chk_conv25(a: RingAnalysis):
    # Empirical observation only: records whether index-25 rings have n = 7,
    # but the conclusion is fixed to True so this id can never FAIL a scan.
    hyp = not a.commutative and a.index == 25
    return hyp, True, {"n": a.n, "supports": a.n == 7}


_REGISTRY_ITEMS = (
    TheoremInfo(
        "NONCYCLIC",
        "R is non-commutative",
        "the additive quotient R/Z(R) is not cyclic",
        _chk_noncyclic,
    ),
    TheoremInfo(
        "NO-2-3",
        "always",
        "the number of distinct centralizers is never 2 or 3",
        _chk_no_2_3,
    ),
    TheoremInfo(
        "T4-IFF",
        "R is non-commutative",
        "n = 4 if and only if |R:Z(R)| = 4 (both directions)",
        _chk_t4_iff,
    ),
    TheoremInfo(
        "T5-IFF",
        "R is non-commutative",
        "n = 5 if and only if |R:Z(R)| = 9 (both directions)",
        _chk_t5_iff,
    ),
    TheoremInfo(
        "P-TGE3",
        "R is non-commutative",
        "a maximum pairwise non-commuting set has at least 3 elements",
        _chk_t_ge3,
    ),
    TheoremInfo(
        "P-TP1",
        "R is non-commutative",
        "t + 1 <= n: the maximum set size is below the centralizer count",
        _chk_t_plus_1,
    ),
    TheoremInfo(
        "P-COMMCENT-LOCAL",
        "R is non-commutative and every proper centralizer is commutative",
        "distinct proper centralizers meet exactly in the center",
        _chk_commcent_local,
    ),
    TheoremInfo(
        "P-PAIRWISE",
        "R is non-commutative and t = n - 1",
        "distinct proper centralizers meet exactly in the center",
        _chk_pairwise,
    ),
    TheoremInfo(
        "L-COMM-48",
        "|R:Z(R)| is 4 or 8",
        "every proper centralizer is commutative",
        _chk_comm_48,
    ),
    TheoremInfo(
        "TMAX-4",
        "R is non-commutative",
        "n = 4 if and only if t = 3 (both directions)",
        _chk_tmax4,
    ),
    TheoremInfo(
        "TMAX-5",
        "R is non-commutative",
        "n = 5 if and only if t = 4 (both directions)",
        _chk_tmax5,
    ),
    TheoremInfo(
        "T6-INDEX",
        "n = 6",
        "|R:Z(R)| is 8, 12 or 16",
        _chk_t6_index,
    ),
    TheoremInfo(
        "T-Z2CUBE",
        "R is non-commutative and R/Z(R) has invariants (2, 2, 2)",
        "n is 6 or 8",
        _chk_z2cube,
    ),
    TheoremInfo(
        "L-TPLUS2",
        "R is non-commutative and n = t + 2",
        "some proper non-commutative centralizer contains the centralizers "
        "of three distinct maximum-set members",
        _chk_tplus2,
    ),
    TheoremInfo(
        "L7-NOT2POW",
        "n = 7",
        "|R:Z(R)| is not a power of 2",
        _chk_not_2pow,
    ),
    TheoremInfo(
        "T7-INDEX",
        "n = 7",
        "|R:Z(R)| is 12, 18, 20, 24 or 25",
        _chk_t7_index,
    ),
    TheoremInfo(
        "CONV-25",
        "R is non-commutative and |R:Z(R)| = 25",
        "observation only: records whether n = 7; never fails a scan",
        _chk_conv25,
    ),
)

REGISTRY: dict[str, TheoremInfo] = {info.id: info for info in _REGISTRY_ITEMS}
ALL_THEOREM_IDS: tuple[str, ...] = tuple(REGISTRY)


def verify_analysis(theorem_id: str, analysis: RingAnalysis) -> TheoremVerdict:
    info = REGISTRY.get(theorem_id)
    if info is None:
        raise UnknownTheoremError(f"no checker registered under id {theorem_id!r}")
    hyp, concl, witness = info.check(analysis)
    if not hyp:
        status = VACUOUS
    elif concl:
        status = PASS
    else:
        status = FAIL
    return TheoremVerdict(
        theorem=theorem_id,
        label=analysis.label,
        hypothesis_holds=hyp,
        conclusion_holds=concl if hyp else None,
        status=status,
        witness=witness,
    )


def verify(theorem_id: str, ring: FiniteRing, label: str | None = None) -> TheoremVerdict:
    """Run one registered checker against a ring."""
    return verify_analysis(theorem_id, analyze(ring, label))


@dataclass
class ScanSummary:
    """Catalog-wide verdict tallies with coverage and realization data."""

    theorem_ids: tuple[str, ...]
    ring_count: int
    verdicts: tuple[TheoremVerdict, ...]
    counts: dict[str, Counter] = field(default_factory=dict)
    failures: tuple[TheoremVerdict, ...] = ()
    hypothesis_labels: dict[str, tuple[str, ...]] = field(default_factory=dict)
    coverage_n: tuple[tuple[int, int], ...] = ()
    coverage_index: tuple[tuple[int, int], ...] = ()
    observations: dict[str, tuple[tuple[str, bool], ...]] = field(default_factory=dict)

    @property
    def has_failures(self) -> bool:
        return bool(self.failures)


def scan(analyses: Sequence[RingAnalysis], theorem_ids: Iterable[str]) -> ScanSummary:
    """Run the chosen checkers over every analysis, in catalog order."""
    ids = tuple(theorem_ids)
    if not ids:
        raise BadParameterError("scan needs at least one theorem id")
    for tid in ids:
        if tid not in REGISTRY:
            raise UnknownTheoremError(f"no checker registered under id {tid!r}")

    analyses = list(analyses)
    verdicts = []
    counts = {tid: Counter() for tid in ids}
    hyp_labels: dict[str, list[str]] = {tid: [] for tid in ids}
    observations: dict[str, list[tuple[str, bool]]] = {}
    for a in analyses:
        for tid in ids:
            v = verify_analysis(tid, a)
            verdicts.append(v)
            counts[tid][v.status] += 1
            if v.hypothesis_holds:
                hyp_labels[tid].append(a.label)
                if tid == "CONV-25":
                    observations.setdefault(tid, []).append(
                        (a.label, bool(v.witness.get("supports")))
                    )
    failures = tuple(v for v in verdicts if v.status == FAIL)
    cov_n = Counter(a.n for a in analyses)
    cov_index = Counter(a.index for a in analyses)
    return ScanSummary(
        theorem_ids=ids,
        ring_count=len(analyses),
        verdicts=tuple(verdicts),
        counts=counts,
        failures=failures,
        hypothesis_labels={tid: tuple(v) for tid, v in hyp_labels.items()},
        coverage_n=tuple(sorted(cov_n.items())),
        coverage_index=tuple(sorted(cov_index.items())),
        observations={tid: tuple(v) for tid, v in observations.items()},
    )
