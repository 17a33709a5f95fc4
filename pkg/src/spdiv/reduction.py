"""Independent-set decisions answered two ways, and cross-checked.

The direct route enumerates vertex subsets and tests edge-freeness with
adjacency bitmasks.  The indirect route encodes the graph as a two-distance
metric, maximizes diversity over size-k subsets, and compares the maximum
against the value an edge-free subset would achieve.  On every instance the
two answers must coincide: edge-free subsets realize the threshold exactly,
and any subset containing an edge scores strictly below it.

``random_equivalence_suite`` runs that comparison on a reproducible stream
of random graphs.  Reproducibility across platforms matters more than
statistical quality here, so graphs are drawn from an explicit splitmix64
generator (Steele, Lea & Flood's 64-bit mixing sequence) rather than from
library RNGs whose streams may change between releases.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from . import params
from .errors import InstanceTooLarge
from .metric import Graph, encode_graph
from .selection import decide

__all__ = [
    "IndependentSetResult",
    "EquivalenceOutcome",
    "SuiteSummary",
    "SplitMix64",
    "brute_force_is",
    "is_independent",
    "solve_is_via_sp",
    "random_graph",
    "random_equivalence_suite",
]

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """splitmix64: state advances by 0x9E3779B97F4A7C15, output is the
    xor-shift/multiply finalizer of the new state.  Deterministic across
    platforms; not for cryptography or serious statistics."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform-ish integer in [0, n); modulo bias is irrelevant at these sizes."""
        return self.next_u64() % n

    def unit(self) -> float:
        """Float in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * (2.0 ** -53)

    def choice(self, items: Sequence):
        return items[self.below(len(items))]


@dataclass(frozen=True)
class IndependentSetResult:
    exists: bool
    witness: Optional[tuple[int, ...]]


@dataclass(frozen=True)
class EquivalenceOutcome:
    """Both decision routes on one (graph, k, theta0) instance."""

    n: int
    edge_count: int
    k: int
    theta0: float
    threshold: float
    sp_decision: bool
    sp_witness: Optional[tuple[int, ...]]
    sp_best_value: float
    sp_witness_independent: Optional[bool]
    is_decision: bool
    is_witness: Optional[tuple[int, ...]]
    agree: bool

    def to_dict(self) -> dict:
        return {
            "graph": {"n": self.n, "edges": self.edge_count},
            "k": self.k,
            "theta0": self.theta0,
            "threshold": self.threshold,
            "sp_decision": self.sp_decision,
            "sp_witness": None if self.sp_witness is None else list(self.sp_witness),
            "sp_best_value": self.sp_best_value,
            "sp_witness_independent": self.sp_witness_independent,
            "is_decision": self.is_decision,
            "is_witness": None if self.is_witness is None else list(self.is_witness),
            "agree": self.agree,
        }


def is_independent(g: Graph, subset: Sequence[int]) -> bool:
    """Direct edge-freeness check against the edge set."""
    masks = g.adjacency_masks()
    selected = 0
    for v in subset:
        selected |= 1 << int(v)
    return all(masks[int(v)] & selected == 0 for v in subset)


def brute_force_is(g: Graph, k: int, cap: Optional[int] = None) -> IndependentSetResult:
    """First (lexicographically smallest) independent set of size k, if any.

    Enumerations larger than the cap are refused, mirroring the exhaustive
    diversity search this oracle is compared against.
    """
    if not (0 <= k <= g.n):
        raise ValueError(f"k must be in [0, {g.n}], got {k}")
    cap = params.enumeration_cap() if cap is None else cap
    total = math.comb(g.n, k)
    if total > cap:
        raise InstanceTooLarge(total, cap)
    masks = g.adjacency_masks()
    for combo in itertools.combinations(range(g.n), k):
        selected = 0
        for v in combo:
            selected |= 1 << v
        if all(masks[v] & selected == 0 for v in combo):
            return IndependentSetResult(exists=True, witness=combo)
    return IndependentSetResult(exists=False, witness=None)


def solve_is_via_sp(g: Graph, k: int, theta0: float, cap: Optional[int] = None) -> EquivalenceOutcome:
    """Answer the independent-set question through diversity maximization.

    Encodes the graph, decides against the edge-free-subset value, runs the
    direct search, and re-checks any diversity witness for edge-freeness.
    """
    metric, instance = encode_graph(g, k, theta0)
    decision = decide(metric, k, theta0, instance.threshold, cap=cap)
    direct = brute_force_is(g, k, cap=cap)
    witness_ok = None
    if decision.satisfied:
        witness_ok = is_independent(g, decision.witness)
    return EquivalenceOutcome(
        n=g.n,
        edge_count=g.edge_count(),
        k=k,
        theta0=float(theta0),
        threshold=instance.threshold,
        sp_decision=decision.satisfied,
        sp_witness=decision.witness,
        sp_best_value=decision.best_value,
        sp_witness_independent=witness_ok,
        is_decision=direct.exists,
        is_witness=direct.witness,
        agree=decision.satisfied == direct.exists,
    )


def random_graph(rng: SplitMix64, n_max: int, edge_probs: Sequence[float] = (0.2, 0.5, 0.8)) -> tuple[Graph, float]:
    """One random graph: n uniform in [1, n_max], then each pair kept as an
    edge with probability drawn from ``edge_probs``."""
    n = 1 + rng.below(n_max)
    p = rng.choice(edge_probs)
    edges = set()
    for u in range(n):
        for v in range(u + 1, n):
            if rng.unit() < p:
                edges.add((u, v))
    return Graph(n, frozenset(edges)), p


@dataclass(frozen=True)
class SuiteSummary:
    seed: int
    trials: int
    n_max: int
    theta0_choices: tuple[float, ...]
    checks: int                 # (k, theta0) comparisons executed
    agreements: int             # trials whose comparisons all agreed
    disagreements: int
    first_disagreement: Optional[dict]
    min_no_margin: Optional[float]   # smallest threshold-to-maximum gap on "no" answers
    records: tuple[dict, ...]   # per-trial: graph and the per-k decisions

    def to_dict(self, include_records: bool = True) -> dict:
        out = {
            "seed": self.seed,
            "trials": self.trials,
            "n_max": self.n_max,
            "theta0_choices": list(self.theta0_choices),
            "checks": self.checks,
            "agreements": self.agreements,
            "disagreements": self.disagreements,
            "first_disagreement": self.first_disagreement,
            "min_no_margin": self.min_no_margin,
        }
        if include_records:
            out["records"] = [dict(r) for r in self.records]
        return out


def random_equivalence_suite(
    seed: int,
    trials: int,
    n_max: int = 9,
    theta0_choices: Sequence[float] = (0.5, 1.0, 3.0),
) -> SuiteSummary:
    """Cross-check both decision routes on random graphs.

    Every trial draws one graph and compares the routes for every feasible k
    and every theta0 choice.  The per-trial record keeps the graph and per-k
    decisions so a committed run can serve as a regression fixture.  The
    decisions must also be identical across theta0 values; a mismatch there
    counts as a disagreement.
    """
    rng = SplitMix64(seed)
    records = []
    checks = 0
    agreements = 0
    first_disagreement = None
    min_no_margin = None

    for trial in range(trials):
        graph, p = random_graph(rng, n_max)
        trial_ok = True
        decisions = []
        for k in range(1, graph.n + 1):
            per_theta = []
            for theta0 in theta0_choices:
                outcome = solve_is_via_sp(graph, k, theta0)
                checks += 1
                per_theta.append(outcome.sp_decision)
                if not outcome.sp_decision:
                    margin = outcome.threshold - outcome.sp_best_value
                    if min_no_margin is None or margin < min_no_margin:
                        min_no_margin = margin
                bad = None
                if not outcome.agree:
                    bad = "routes disagree"
                elif outcome.sp_decision and not outcome.sp_witness_independent:
                    bad = "diversity witness is not edge-free"
                if bad is not None:
                    trial_ok = False
                    if first_disagreement is None:
                        first_disagreement = {
                            "trial": trial,
                            "n": graph.n,
                            "edges": sorted(list(e) for e in graph.edges),
                            "k": k,
                            "theta0": theta0,
                            "kind": bad,
                        }
            if len(set(per_theta)) > 1:
                trial_ok = False
                if first_disagreement is None:
                    first_disagreement = {
                        "trial": trial,
                        "n": graph.n,
                        "edges": sorted(list(e) for e in graph.edges),
                        "k": k,
                        "theta0": None,
                        "kind": "decision depends on theta0",
                    }
            decisions.append(per_theta[0])
        if trial_ok:
            agreements += 1
        records.append(
            {
                "trial": trial,
                "n": graph.n,
                "edge_probability": p,
                "edges": sorted(list(e) for e in graph.edges),
                "decisions": decisions,
            }
        )

    return SuiteSummary(
        seed=seed,
        trials=trials,
        n_max=n_max,
        theta0_choices=tuple(float(t) for t in theta0_choices),
        checks=checks,
        agreements=agreements,
        disagreements=trials - agreements,
        first_disagreement=first_disagreement,
        min_no_margin=min_no_margin,
        records=tuple(records),
    )
