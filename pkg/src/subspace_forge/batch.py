"""Systematic binary batch codes built on an AAD family.

Information bits sit on the q^n points of GF(q)^n; every affine coset
v + S of every family member S contributes one parity bit equal to the
XOR of the information bits in that coset.  Because distinct members
meet trivially, the cosets through a fixed point share only that point,
which yields 1 + |F| pairwise disjoint recovery candidates per
information bit and supports any multiset of s = floor(|F| / L)
simultaneous requests.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .family import Family, compute_L_aad


@dataclass(frozen=True)
class RecoveryEntry:
    request: int
    positions: frozenset[int]
    rule: str  # "direct" or "parity_xor"; both decode as XOR of positions


@dataclass(frozen=True)
class RecoveryPlan:
    entries: tuple[RecoveryEntry, ...]

    def pairwise_disjoint(self) -> bool:
        used: set[int] = set()
        for e in self.entries:
            if used & e.positions:
                return False
            used |= e.positions
        return True


class BatchCode:
    """Positions [0, K) are information bits indexed by the lexicographic
    order of the points of GF(q)^n; parities follow, ordered by (member
    index, coset canonical representative lexicographic).
    """

    def __init__(self, family: Family, L_aad: int | None = None):
        self.family = family
        f = family.field
        self.q = f.q
        self.n = family.n
        self.k = family.k
        if L_aad is None:
            L_aad, _ = compute_L_aad(family)
        self.L_aad = L_aad
        self.K = self.q**self.n
        self.cosets_per_member = self.q ** (self.n - self.k)
        self.N = self.K + len(family) * self.cosets_per_member

        # canonical reps of member a are the vectors vanishing on its
        # pivot columns; enumerating the free coordinates in lexicographic
        # order ranks the reps lexicographically.
        self._free_cols = []
        self._rep_rank: list[dict[tuple[int, ...], int]] = []
        for S in family.members:
            pivots = set(S.pivots)
            free = [c for c in range(self.n) if c not in pivots]
            self._free_cols.append(free)
            self._rep_rank.append({})

    def point_index(self, v) -> int:
        idx = 0
        for x in v:
            idx = idx * self.q + x
        return idx

    def index_point(self, idx: int) -> tuple[int, ...]:
        digits = []
        for _ in range(self.n):
            digits.append(idx % self.q)
            idx //= self.q
        return tuple(reversed(digits))

    def _rep_of(self, member: int, v) -> tuple[int, ...]:
        return self.family.members[member].reduce(v)

    def parity_position(self, member: int, rep) -> int:
        rep = tuple(rep)
        free = self._free_cols[member]
        r = 0
        for c in free:
            r = r * self.q + rep[c]
        return self.K + member * self.cosets_per_member + r

    def parity_layout(self) -> list[dict]:
        """Every parity position with its (member, coset rep) address."""
        out = []
        for a, S in enumerate(self.family.members):
            free = self._free_cols[a]
            for digits in itertools.product(range(self.q), repeat=len(free)):
                rep = [0] * self.n
                for c, d in zip(free, digits):
                    rep[c] = d
                out.append(
                    {
                        "member": a,
                        "rep": rep,
                        "position": self.parity_position(a, rep),
                    }
                )
        return out

    def layout_json(self) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "k": self.k,
            "K": self.K,
            "N": self.N,
            "L_aad": self.L_aad,
            "members": len(self.family),
            "information_order": "points of GF(q)^n, lexicographic by coordinate codes",
            "parities": self.parity_layout(),
        }

    # -- encoding ----------------------------------------------------------

    def encode(self, x) -> list[int]:
        """Systematic encoding: information bits followed by one XOR
        parity per (member, coset)."""
        x = list(x)
        if len(x) != self.K:
            raise ValueError(f"information length must be {self.K}, got {len(x)}")
        if any(b not in (0, 1) for b in x):
            raise ValueError("information symbols must be bits")
        y = x + [0] * (self.N - self.K)
        f = self.family.field
        for idx in range(self.K):
            if not x[idx]:
                continue
            v = self.index_point(idx)
            for a in range(len(self.family)):
                y[self.parity_position(a, self._rep_of(a, v))] ^= 1
        return y

    # -- recovery ------------------------------------------------------------

    def recovery_sets_for(self, idx: int) -> list[frozenset[int]]:
        """1 + |F| candidate recovery sets for information bit idx: the
        direct read, plus per member the coset parity with the other
        coset points.  Candidates are pairwise disjoint."""
        if not 0 <= idx < self.K:
            raise ValueError(f"information index out of range: {idx}")
        f = self.family.field
        v = self.index_point(idx)
        out = [frozenset({idx})]
        for a, S in enumerate(self.family.members):
            positions = {self.parity_position(a, self._rep_of(a, v))}
            for w in S.vectors():
                if not any(w):
                    continue
                pt = tuple(f.add(x, y) for x, y in zip(v, w))
                positions.add(self.point_index(pt))
            out.append(frozenset(positions))
        return out

    def recover(self, y, positions) -> int:
        bit = 0
        for p in positions:
            bit ^= y[p]
        return bit

    def plan_recovery(self, requests) -> RecoveryPlan | None:
        """Pairwise disjoint recovery sets for a multiset of information
        indices, one per request, or None if no assignment exists.
        Backtracking over each request's candidate list."""
        requests = sorted(requests)
        candidates = {idx: self.recovery_sets_for(idx) for idx in set(requests)}

        chosen: list[RecoveryEntry] = []
        used: set[int] = set()

        def backtrack(t: int) -> bool:
            if t == len(requests):
                return True
            idx = requests[t]
            for cand in candidates[idx]:
                if used & cand:
                    continue
                rule = "direct" if cand == frozenset({idx}) else "parity_xor"
                chosen.append(RecoveryEntry(idx, cand, rule))
                used.update(cand)
                if backtrack(t + 1):
                    return True
                used.difference_update(cand)
                chosen.pop()
            return False

        if backtrack(0):
            return RecoveryPlan(tuple(chosen))
        return None


def batch_s(family_size: int, L: int) -> int:
    """Supported request count s = floor(|F| / L)."""
    if L < 1:
        raise ValueError("L must be >= 1")
    return family_size // L


def verify_batch(
    code: BatchCode,
    s: int,
    mode: str = "exhaustive",
    trials: int = 1000,
    seed: int = 0,
) -> tuple[bool, tuple[int, ...] | None]:
    """Check that every (or a sampled set of) multiset(s) of s requested
    information bits admits pairwise disjoint recovery sets.

    Returns (True, None) or (False, counterexample multiset).
    """
    if s < 1:
        raise ValueError("s must be >= 1")
    if mode == "exhaustive":
        requests_iter = itertools.combinations_with_replacement(range(code.K), s)
    elif mode == "sampled":
        rng = random.Random(seed)
        requests_iter = (
            tuple(sorted(rng.randrange(code.K) for _ in range(s))) for _ in range(trials)
        )
    else:
        raise ValueError(f"unknown mode {mode!r}")
    for multiset in requests_iter:
        if code.plan_recovery(multiset) is None:
            return False, tuple(multiset)
    return True, None
