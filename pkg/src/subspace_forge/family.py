"""Families of subspaces: partial-spread checking and the exact AAD / AS
verifiers with witnesses.

Terminology (matching the standard definitions):

* A family of k-dimensional subspaces of GF(q)^n is a *partial k-spread*
  when all pairwise intersections are trivial.
* Its exact AAD parameter L is the largest number of family members met
  by any affine coset u + S with S in the family and u outside S.  S
  itself can never be met by such a coset (u outside S makes them
  disjoint), so it is never counted.
* Its exact AS parameter L is the largest number of family members that
  any (k+1)-dimensional subspace meets non-trivially.

The AAD verifier inverts the natural loop: instead of scanning cosets
and testing members, it walks ordered member pairs (i, j) and bumps a
counter for every coset of S_i contained in S_i + S_j, using the fact
that (u + S_i) meets S_j exactly when u lies in S_i + S_j.  Cosets are
keyed by their canonical representative, which for an RREF basis is the
coset member with zeros in all pivot coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .gf import Field, SizeGuardError
from .matgf import rank_of_stack
from .subspace import Subspace, all_vectors, enumerate_subspaces, gaussian_binomial

# compute_L_as enumerates every (k+1)-subspace; refuse above this count
# unless the caller overrides the guard.
DEFAULT_AS_ENUM_GUARD = 200_000


@dataclass(frozen=True)
class Family:
    """An ordered collection of distinct k-subspaces sharing (field, n, k)."""

    field: Field
    n: int
    k: int
    members: tuple[Subspace, ...]

    def __post_init__(self):
        if 2 * self.k >= self.n:
            raise ValueError(f"need 2k < n, got k={self.k}, n={self.n}")
        if not self.members:
            raise ValueError("family must have at least one member")
        seen = set()
        for i, S in enumerate(self.members):
            if S.field != self.field or S.n != self.n or S.k != self.k:
                raise ValueError(f"member {i} has mismatched parameters")
            if S.key() in seen:
                raise ValueError(f"member {i} duplicates an earlier member")
            seen.add(S.key())

    def __len__(self):
        return len(self.members)

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "n": self.n,
            "k": self.k,
            "members": [S.to_json() for S in self.members],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Family":
        fld = Field.from_json(obj["field"])
        members = tuple(Subspace.from_json(fld, s) for s in obj["members"])
        return cls(fld, int(obj["n"]), int(obj["k"]), members)


@dataclass
class VerificationReport:
    """Exact verification results; fields are None until computed."""

    is_partial_spread: bool | None = None
    spread_witness: tuple[int, int] | None = None
    L_aad: int | None = None
    aad_witness: tuple[int, tuple[int, ...]] | None = None
    L_as: int | None = None
    as_witness: Subspace | None = None
    size_bound: int | None = None
    bound_satisfied: bool | None = None
    relations_ok: bool | None = None
    diagnostics: list[str] = dc_field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "is_partial_spread": self.is_partial_spread,
            "spread_witness": list(self.spread_witness) if self.spread_witness else None,
            "L_aad": self.L_aad,
            "aad_witness": (
                {"member": self.aad_witness[0], "u": list(self.aad_witness[1])}
                if self.aad_witness
                else None
            ),
            "L_as": self.L_as,
            "as_witness": self.as_witness.to_json() if self.as_witness else None,
            "size_bound": self.size_bound,
            "bound_satisfied": self.bound_satisfied,
            "relations_ok": self.relations_ok,
            "diagnostics": list(self.diagnostics),
        }


def check_partial_spread(fam: Family) -> tuple[bool, tuple[int, int] | None]:
    """True iff all member pairs intersect trivially.

    On failure returns the first violating pair (i, j), i < j, in member
    order.
    """
    members = fam.members
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            if not members[i].trivially_intersects(members[j]):
                return False, (i, j)
    return True, None


def coset_hits(fam: Family, i: int, u) -> int:
    """Number of members S_j (j != i) met by the affine coset u + S_i.

    Uses the membership criterion: (u + S_i) meets S_j exactly when
    u lies in S_i + S_j.  S_i itself is never counted; u outside S_i
    makes the coset disjoint from S_i, so there is nothing to count.
    """
    u = tuple(int(x) for x in u)
    S = fam.members[i]
    if S.contains(u):
        raise ValueError("u must lie outside the member subspace")
    hits = 0
    for j, T in enumerate(fam.members):
        if j == i:
            continue
        if S.sum(T).contains(u):
            hits += 1
    return hits


def coset_hits_bruteforce(fam: Family, i: int, u) -> int:
    """Independent oracle for coset_hits: enumerate all q^k points of the
    coset u + S_i and test each against every other member directly.
    """
    f = fam.field
    S = fam.members[i]
    u = tuple(int(x) for x in u)
    if S.contains(u):
        raise ValueError("u must lie outside the member subspace")
    hit = set()
    for v in S.vectors():
        pt = tuple(f.add(a, b) for a, b in zip(u, v))
        for j, T in enumerate(fam.members):
            if j != i and T.contains(pt):
                hit.add(j)
    return len(hit)


def _lex_smallest_outside(S: Subspace) -> tuple[int, ...]:
    for v in all_vectors(S.field, S.n):
        if not S.contains(v):
            return tuple(v)
    raise AssertionError("subspace covers the whole space")


def compute_L_aad(
    fam: Family, upper_limit: int | None = None
) -> tuple[int, tuple[int, tuple[int, ...]]]:
    """Exact AAD parameter with an attaining witness (member index, u).

    Walks ordered member pairs: for fixed i, the cosets of S_i meeting
    S_j are exactly the q^k - 1 nonzero canonical representatives inside
    S_i + S_j, which are spanned by the residues of S_j's basis rows
    modulo S_i.  Counting those representatives over all j and taking
    the max recovers sup_u coset_hits without any per-(u, j) rank work.

    With upper_limit set, returns as soon as some count exceeds it; the
    result is then only a lower bound (enough to decide "L <= limit?").
    """
    ok, witness = check_partial_spread(fam)
    if not ok:
        raise ValueError(f"family is not a partial spread (members {witness})")
    f = fam.field
    members = fam.members
    m = len(members)
    k = fam.k
    q = f.q
    if m <= 1:
        u = _lex_smallest_outside(members[0])
        return 0, (0, u)

    def unproject(i, free_cols, key):
        u = [0] * fam.n
        for c, val in zip(free_cols, key):
            u[c] = val
        return i, tuple(u)

    mul = f.mul_table
    add = f.add_table
    best = 0
    best_witness = None
    for i, S in enumerate(members):
        pivot_set = set(S.pivots)
        # residues vanish on the pivot columns, so count in the n-k free
        # coordinates only
        free_cols = [c for c in range(fam.n) if c not in pivot_set]
        counts: dict[tuple[int, ...], int] = {}
        for j, T in enumerate(members):
            if j == i:
                continue
            proj = [
                tuple(w[c] for c in free_cols)
                for w in (S.reduce(row) for row in T.basis.row_list())
            ]
            if k == 1:
                w = proj[0]
                for c in range(1, q):
                    mc = mul[c]
                    key = tuple(mc[x] for x in w)
                    cnt = counts.get(key, 0) + 1
                    counts[key] = cnt
                    if upper_limit is not None and cnt > upper_limit:
                        return cnt, unproject(i, free_cols, key)
            else:
                # span of the k independent residues, built layer by layer
                elems = [(0,) * len(free_cols)]
                for r in proj:
                    scaled = [tuple(mul[c][x] for x in r) for c in range(q)]
                    elems = [
                        tuple(add[a][b] for a, b in zip(e, s)) for e in elems for s in scaled
                    ]
                for e in elems:
                    if any(e):
                        cnt = counts.get(e, 0) + 1
                        counts[e] = cnt
                        if upper_limit is not None and cnt > upper_limit:
                            return cnt, unproject(i, free_cols, e)
        for key, cnt in counts.items():
            if cnt > best:
                best = cnt
                best_witness = (i, free_cols, key)

    assert best_witness is not None
    return best, unproject(*best_witness)


def _as_hits_generic(V: Subspace, fam: Family) -> int:
    """Members meeting V non-trivially, by rank of the stacked bases."""
    hits = 0
    dimsum = V.k + fam.k
    for S in fam.members:
        if rank_of_stack(V.basis, S.basis) < dimsum:
            hits += 1
    return hits


def _as_hits_lines(V: Subspace, member_keys: set, f: Field) -> int:
    """k=1 kernel: count member lines contained in the plane V.

    The q+1 lines of a 2-dimensional V have canonical bases r2 and
    r1 + c*r2 (c in GF(q)), all already leading-coefficient-1.
    """
    r1, r2 = V.basis.row_list()
    hits = 1 if r2 in member_keys else 0
    if r1 in member_keys:
        hits += 1
    mul = f.mul_table
    for c in range(1, f.q):
        mc = mul[c]
        key = tuple(f.add(x, mc[y]) for x, y in zip(r1, r2))
        if key in member_keys:
            hits += 1
    return hits


def compute_L_as(fam: Family, enum_guard: int | None = DEFAULT_AS_ENUM_GUARD) -> tuple[int, Subspace]:
    """Exact AS parameter with an attaining (k+1)-subspace witness.

    Full enumeration of all (k+1)-subspaces is the reference algorithm;
    for k=1 the per-subspace count uses the lines-in-a-plane kernel,
    which is property-tested against the generic rank-based count.
    """
    ok, witness = check_partial_spread(fam)
    if not ok:
        raise ValueError(f"family is not a partial spread (members {witness})")
    f = fam.field
    total = gaussian_binomial(fam.n, fam.k + 1, f.q)
    if enum_guard is not None and total > enum_guard:
        raise SizeGuardError(
            f"AS verification needs {total} (k+1)-subspaces, over the guard {enum_guard}"
        )
    m = len(fam.members)
    best = -1
    best_V = None
    if fam.k == 1:
        member_keys = {S.basis.row(0) for S in fam.members}
        for V in enumerate_subspaces(f, fam.n, 2):
            hits = _as_hits_lines(V, member_keys, f)
            if hits > best:
                best, best_V = hits, V
                if best == m:
                    break
    else:
        for V in enumerate_subspaces(f, fam.n, fam.k + 1):
            hits = _as_hits_generic(V, fam)
            if hits > best:
                best, best_V = hits, V
                if best == m:
                    break
    assert best_V is not None
    return best, best_V


def verify_size_bound(fam: Family, L: int) -> bool:
    """Size-vs-L compliance: |F| <= floor(1 + L (q^{n-k}-1)/(q^k-1))."""
    from .constructions import max_family_size_bound

    return len(fam) <= max_family_size_bound(fam.n, fam.k, L, fam.field.q)


def check_relations(fam: Family, report: VerificationReport) -> tuple[bool, list[str]]:
    """Cross-checks between the exact AAD and AS parameters.

    Any family: L_aad <= L_as - 1 (a coset hitting t members yields a
    (k+1)-subspace meeting t+1).  For k=1 also L_as <= L_aad + 1 (a
    plane meeting a line contains it), hence equality.
    """
    if report.L_aad is None or report.L_as is None:
        raise ValueError("report must hold computed L_aad and L_as")
    msgs = []
    if report.L_aad > report.L_as - 1:
        msgs.append(f"L_aad={report.L_aad} exceeds L_as-1={report.L_as - 1}")
    if fam.k == 1 and report.L_as > report.L_aad + 1:
        msgs.append(f"k=1 but L_as={report.L_as} exceeds L_aad+1={report.L_aad + 1}")
    return not msgs, msgs


def build_report(
    fam: Family,
    properties=("spread", "aad", "as", "bound", "relations"),
    as_enum_guard: int | None = DEFAULT_AS_ENUM_GUARD,
) -> VerificationReport:
    """Run the requested verifications and collect exact results.

    Properties depending on the partial-spread precondition are skipped
    (left None, with a diagnostic) when the family is not a spread.
    """
    properties = set(properties)
    unknown = properties - {"spread", "aad", "as", "bound", "relations"}
    if unknown:
        raise ValueError(f"unknown properties: {sorted(unknown)}")
    report = VerificationReport()
    need_spread = properties & {"aad", "as", "bound", "relations"}
    if "spread" in properties or need_spread:
        ok, witness = check_partial_spread(fam)
        report.is_partial_spread = ok
        report.spread_witness = witness
        if not ok and need_spread:
            report.diagnostics.append(
                "not a partial spread; AAD/AS parameters are undefined"
            )
            return report
    if properties & {"aad", "bound", "relations"}:
        report.L_aad, report.aad_witness = compute_L_aad(fam)
    if properties & {"as", "relations"}:
        report.L_as, report.as_witness = compute_L_as(fam, as_enum_guard)
    if "bound" in properties:
        from .constructions import max_family_size_bound

        report.size_bound = max_family_size_bound(fam.n, fam.k, report.L_aad, fam.field.q)
        report.bound_satisfied = len(fam) <= report.size_bound
    if "relations" in properties:
        ok, msgs = check_relations(fam, report)
        report.relations_ok = ok
        report.diagnostics.extend(msgs)
    return report
