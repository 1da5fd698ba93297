"""Full analysis of a built code and comparison with the oracle."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any

from .codes import (
    FUNCTIONAL_CAP,
    MESSAGE_CAP,
    WeightDistribution,
    ab_bound_satisfied,
    functional_classes,
    hyperplane_sweep,
    weight_distribution,
)
from .embeddings import hyperplane_preimage, validate_embedding
from .families import Built, feasibility
from .geometry import complement_connected, is_geometric_hyperplane
from .linalg import EnumerationCapExceeded
from .oracle import ExpectedParameters, expected_parameters

log = logging.getLogger(__name__)

NOT_COMPUTED = "not computed at this scale"
STRATEGIES = ("auto", "message_enum", "hyperplane_count")


@dataclass
class CodeReport:
    N: int
    K: int
    q: int
    d: int | None = None
    w_max: int | None = None
    distribution: WeightDistribution | None = None
    minimal: bool | None = None
    witness: tuple[int, ...] | None = None
    non_minimal_classes: int | None = None
    ab_satisfied: bool | None = None
    oracle: ExpectedParameters | None = None
    deltas: list[dict] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)
    strategy: str | None = None

    @property
    def second_weight(self) -> int | None:
        if self.distribution is None or len(self.distribution.weights) < 2:
            return None
        return self.distribution.weights[1]

    @property
    def cap_exceeded(self) -> bool:
        return bool(self.skipped)


def _pick_strategy(strategy: str, q: int, K: int, max_enum: int) -> str:
    if strategy != "auto":
        return strategy
    return "message_enum" if q**K <= max_enum else "hyperplane_count"


def analyze_code(
    built: Built,
    strategy: str = "auto",
    threads: int | None = None,
    max_enum: int = MESSAGE_CAP,
    minimality: bool = True,
) -> CodeReport:
    code = built.code
    q, K, N = code.q, code.K, code.N
    rep = CodeReport(N=N, K=K, q=q)
    rep.oracle = expected_parameters(built.descriptor) if built.descriptor is not None else None
    strat = _pick_strategy(strategy, q, K, max_enum)
    rep.strategy = strat
    try:
        cap = max_enum if strat == "message_enum" else FUNCTIONAL_CAP
        dist = weight_distribution(code, strat, cap=cap, threads=threads)
        rep.distribution = dist
        rep.d, rep.w_max = dist.min_weight, dist.max_weight
        rep.ab_satisfied = ab_bound_satisfied(dist)
    except EnumerationCapExceeded as exc:
        rep.skipped.append(f"distribution: {NOT_COMPUTED} ({exc})")
    if minimality:
        try:
            sweep = hyperplane_sweep(code, True, threads=threads)
            rep.minimal = sweep.minimal
            rep.witness = sweep.witness
            rep.non_minimal_classes = sweep.non_minimal_classes
        except EnumerationCapExceeded as exc:
            rep.skipped.append(f"minimality: {NOT_COMPUTED} ({exc})")
    if rep.oracle is not None:
        rep.deltas = compare(rep, rep.oracle)
    return rep


def compare(rep: CodeReport, e: ExpectedParameters) -> list[dict]:
    """Differences between computed values and populated oracle fields."""
    computed: dict[str, Any] = {"N": rep.N, "K": rep.K, "d": rep.d, "w_max": rep.w_max,
                                "minimal": rep.minimal, "ab": rep.ab_satisfied,
                                "second_weight": rep.second_weight}
    if rep.distribution is not None:
        computed["spectrum"] = rep.distribution.counts
        computed["min_weight_count"] = rep.distribution[rep.d]
    deltas = []
    for name, claim in e.populated().items():
        if name in ("d_lower", "d_upper"):
            if rep.d is None:
                continue
            ok = rep.d >= claim.value if name == "d_lower" else rep.d <= claim.value
            if not ok:
                deltas.append({"field": name, "expected": claim.value, "computed": rep.d, "tag": claim.tag})
            continue
        got = computed.get(name)
        if got is None:
            continue
        if got != claim.value:
            deltas.append({"field": name, "expected": claim.value, "computed": got, "tag": claim.tag})
    return deltas


# -- arising hyperplanes ------------------------------------------------------

VERIFY_CAP = 1 << 16


@dataclass
class HyperplaneCheck:
    classes: int
    all_hyperplanes: bool
    all_connected: bool
    minimal: bool
    counterexamples: list[dict]

    @property
    def implication_holds(self) -> bool:
        return self.minimal or not (self.all_hyperplanes and self.all_connected)


def iter_functionals(q: int, k: int):
    """Normalised functionals (first nonzero entry 1) in sweep order."""
    from itertools import product

    for lead in range(k):
        for tail in product(range(q), repeat=k - 1 - lead):
            yield (0,) * lead + (1,) + tail


def check_arising_hyperplanes(built: Built, cap: int = VERIFY_CAP, threads: int | None = None) -> HyperplaneCheck:
    """Every hyperplane preimage: geometric hyperplane? complement connected?"""
    g, sys = built.geometry, built.system
    if g is None:
        raise ValueError("hyperplane checks need a geometry, not a bare system")
    q, D = sys.field.q, sys.ambient_dim
    classes = functional_classes(q, D)
    if classes > cap:
        raise EnumerationCapExceeded(f"{classes} hyperplanes exceeds verify cap {cap}")
    all_h = all_c = True
    bad = []
    for f in iter_functionals(q, D):
        pre = hyperplane_preimage(sys, f)
        if len(pre) == sys.num_points:
            continue  # the span is smaller than the ambient space; not a hyperplane section
        h = is_geometric_hyperplane(g, pre)
        c = complement_connected(g, pre)
        all_h &= h
        all_c &= c
        if not (h and c):
            bad.append({"functional": list(f), "size": len(pre), "geometric_hyperplane": h, "complement_connected": c})
    sweep = hyperplane_sweep(built.code, True, threads=threads)
    return HyperplaneCheck(classes, all_h, all_c, sweep.minimal, bad)


def embedding_block(built: Built) -> dict | None:
    if built.geometry is None:
        return None
    er = validate_embedding(built.geometry, built.system)
    return {
        "injective": er.injective,
        "spans": er.spans_ambient,
        "lines_to_lines": er.lines_to_lines,
        "K": er.effective_dimension,
        "ambient_dim": built.system.ambient_dim,
    }


def feasible(built: Built) -> dict[str, bool]:
    return feasibility(built.code.q, built.code.K)

