"""Exhaustive and greedy search for maximal AAD families at tiny parameters.

The exhaustive search is a depth-first branch-and-bound over the
canonical subspace order: a partial family is extended only while it
stays a partial spread with exact AAD parameter at most L, branches
that cannot beat the incumbent are cut, and the closed-form size bound
ends the search early when attained.  Optimality is certified when the
search completes within the node budget (or hits the bound).

All searched maximum sizes are artifact-generated ground truth for
their tiny parameters, not values from the literature.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .gf import Field
from .family import Family, compute_L_aad
from .constructions import max_family_size_bound
from .subspace import Subspace, enumerate_subspaces, gaussian_binomial

EXHAUSTIVE_SPACE_LIMIT = 10_000
DEFAULT_NODE_BUDGET = 10_000_000


@dataclass
class SearchConfig:
    field: Field
    n: int
    k: int
    L: int
    mode: str = "exhaustive"
    node_budget: int = DEFAULT_NODE_BUDGET
    symmetry_break: bool = True

    def __post_init__(self):
        if self.mode not in ("exhaustive", "greedy"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if 2 * self.k >= self.n:
            raise ValueError(f"need 2k < n, got k={self.k}, n={self.n}")
        if self.L < 0:
            raise ValueError("L must be >= 0")
        if self.mode == "exhaustive":
            total = gaussian_binomial(self.n, self.k, self.field.q)
            if total > EXHAUSTIVE_SPACE_LIMIT:
                raise ValueError(
                    f"exhaustive mode needs the k-subspace count <= {EXHAUSTIVE_SPACE_LIMIT}, got {total}"
                )


@dataclass
class SearchResult:
    size: int
    family: Family
    optimality_proven: bool
    nodes: int
    bound: int
    config: SearchConfig
    provenance: str = "exhaustive search ground truth (artifact-generated)"

    def to_json(self) -> dict:
        return {
            "n": self.config.n,
            "k": self.config.k,
            "L": self.config.L,
            "q": self.config.field.q,
            "mode": self.config.mode,
            "optimum": self.size,
            "bound": self.bound,
            "proven": self.optimality_proven,
            "nodes": self.nodes,
            "symmetry_break": self.config.symmetry_break,
            "provenance": self.provenance,
            "family": self.family.to_json(),
        }


def _feasible(cfg: SearchConfig, chosen: list[Subspace], cand: Subspace) -> bool:
    """Can cand extend chosen while staying a valid <=L family?"""
    if any(not cand.trivially_intersects(S) for S in chosen):
        return False
    fam = Family(cfg.field, cfg.n, cfg.k, tuple(chosen) + (cand,))
    L, _ = compute_L_aad(fam, upper_limit=cfg.L)
    return L <= cfg.L


def exhaustive_max_family(cfg: SearchConfig) -> SearchResult:
    """Maximum family size by branch-and-bound; proof flag set when the
    search finished within the node budget (or met the closed-form bound).
    """
    if cfg.mode != "exhaustive":
        raise ValueError("config mode must be 'exhaustive'")
    candidates = list(enumerate_subspaces(cfg.field, cfg.n, cfg.k))
    bound = max_family_size_bound(cfg.n, cfg.k, cfg.L, cfg.field.q)
    total = len(candidates)

    best: list[Subspace] = []
    nodes = 0
    budget_hit = False
    bound_hit = False

    def dfs(chosen: list[Subspace], start: int):
        nonlocal best, nodes, budget_hit, bound_hit
        if budget_hit or bound_hit:
            return
        if len(chosen) > len(best):
            best = chosen[:]
            if len(best) >= bound:
                bound_hit = True
                return
        for t in range(start, total):
            # not enough candidates left to beat the incumbent
            if len(chosen) + (total - t) <= len(best):
                return
            nodes += 1
            if nodes > cfg.node_budget:
                budget_hit = True
                return
            if _feasible(cfg, chosen, candidates[t]):
                chosen.append(candidates[t])
                dfs(chosen, t + 1)
                chosen.pop()
                if budget_hit or bound_hit:
                    return

    if cfg.symmetry_break and candidates:
        # Invertible maps act transitively on k-subspaces and preserve
        # every family property, so some maximum family contains the
        # canonically smallest subspace.
        nodes += 1
        chosen = [candidates[0]]
        if len(chosen) > len(best):
            best = chosen[:]
        if len(best) >= bound:
            bound_hit = True
        else:
            dfs(chosen, 1)
    else:
        dfs([], 0)

    proven = bound_hit or not budget_hit
    fam = Family(cfg.field, cfg.n, cfg.k, tuple(best))
    return SearchResult(
        size=len(best),
        family=fam,
        optimality_proven=proven,
        nodes=nodes,
        bound=bound,
        config=cfg,
    )


def greedy_max_family(cfg: SearchConfig, seed: int) -> Family:
    """Randomized greedy insertion in a seed-shuffled canonical order."""
    candidates = list(enumerate_subspaces(cfg.field, cfg.n, cfg.k))
    rng = random.Random(seed)
    rng.shuffle(candidates)
    chosen: list[Subspace] = []
    for cand in candidates:
        if _feasible(cfg, chosen, cand):
            chosen.append(cand)
    return Family(cfg.field, cfg.n, cfg.k, tuple(chosen))
