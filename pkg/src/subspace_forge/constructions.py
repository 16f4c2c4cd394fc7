"""Family builders and closed-form bound calculators.

Three constructions are provided:

* an explicit Reed-Solomon-based partial spread whose members are
  spanned by unit-vector / twisted-codeword / power-sum blocks,
* the naive builder that spans consecutive column groups of a
  parity-check matrix of a distance-(3k+1) code,
* a seeded random procedure that samples uniform k-subspaces, prunes to
  a partial spread, then prunes until the exact AS parameter reaches
  the target.

Bound calculators are exact integer/rational arithmetic throughout.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .gf import Field
from .matgf import MatrixGF, kernel_basis, rank
from .subspace import Subspace
from .family import Family, compute_L_as


# -- bounds -------------------------------------------------------------


def max_family_size_bound(n: int, k: int, L: int, q: int) -> int:
    """Largest family size compatible with AAD parameter L:
    floor(1 + L (q^{n-k} - 1) / (q^k - 1)).
    """
    if 2 * k >= n:
        raise ValueError(f"need 2k < n, got k={k}, n={n}")
    if L < 0:
        raise ValueError("L must be >= 0")
    return 1 + (L * (q ** (n - k) - 1)) // (q**k - 1)


def max_family_size_bound_no_spread(n: int, k: int, L: int, q: int) -> int:
    """Variant without the partial-spread requirement:
    floor(L (q^{n-k} - 1) / (q^k - 1) + L + 1).
    """
    if 2 * k >= n:
        raise ValueError(f"need 2k < n, got k={k}, n={n}")
    if L < 0:
        raise ValueError("L must be >= 0")
    return (L * (q ** (n - k) - 1)) // (q**k - 1) + L + 1


def rs_guaranteed_L(n: int, k: int) -> int:
    """Guaranteed AAD parameter of the RS-based construction.

    Known only for k=1 (n-1) and k=2 (1 + 2(n-2)(2n-5)); these are upper
    guarantees, the observed exact L can be smaller.
    """
    if k == 1:
        return n - 1
    if k == 2:
        return 1 + 2 * (n - 2) * (2 * n - 5)
    raise ValueError(f"no guaranteed L for k={k} (only k=1 and k=2)")


def random_family_exponent(n: int, k: int, L: int) -> Fraction:
    """Exponent e with M = floor(q^e) for the random construction:
    e = n - 2k - (n-k)(k+1)/(L+1).
    """
    return Fraction(n - 2 * k) - Fraction((n - k) * (k + 1), L + 1)


def _integer_root(x: int, r: int) -> int:
    """floor(x ** (1/r)) for nonnegative integer x."""
    if x < 0:
        raise ValueError("negative radicand")
    if x in (0, 1) or r == 1:
        return x
    guess = int(round(x ** (1.0 / r)))
    while guess > 0 and guess**r > x:
        guess -= 1
    while (guess + 1) ** r <= x:
        guess += 1
    return guess


def random_sample_size(n: int, k: int, L: int, q: int) -> int:
    """M = floor(q^e) with the exact rational exponent e."""
    e = random_family_exponent(n, k, L)
    if e < 0:
        return 0
    return _integer_root(q**e.numerator, e.denominator)


def count_avoiding_subspaces(n: int, k: int, d: int, q: int) -> int:
    """Number of k-subspaces of GF(q)^n meeting a fixed d-subspace trivially:
    prod_{i<k} (q^n - q^{d+i}) / (q^k - q^i).
    """
    num = 1
    den = 1
    for i in range(k):
        num *= q**n - q ** (d + i)
        den *= q**k - q**i
    assert num % den == 0
    return num // den


@dataclass(frozen=True)
class BoundsTable:
    """Closed-form values for one (n, k, L, q) parameter point."""

    n: int
    k: int
    L: int
    q: int
    size_bound: int
    size_bound_no_spread: int
    random_lower_exponent: Fraction
    rs_guaranteed_L: int | None

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "L": self.L,
            "q": self.q,
            "size_bound": self.size_bound,
            "size_bound_no_spread": self.size_bound_no_spread,
            "random_exponent": {
                "num": self.random_lower_exponent.numerator,
                "den": self.random_lower_exponent.denominator,
            },
            "random_sample_size": random_sample_size(self.n, self.k, self.L, self.q),
            "rs_guaranteed_L": self.rs_guaranteed_L,
        }


def bounds_table(n: int, k: int, L: int, q: int) -> BoundsTable:
    t3 = rs_guaranteed_L(n, k) if k in (1, 2) else None
    return BoundsTable(
        n=n,
        k=k,
        L=L,
        q=q,
        size_bound=max_family_size_bound(n, k, L, q),
        size_bound_no_spread=max_family_size_bound_no_spread(n, k, L, q),
        random_lower_exponent=random_family_exponent(n, k, L),
        rs_guaranteed_L=t3,
    )


def growth_diagnostic(fam: Family) -> Fraction:
    """log_q |F| as a rational rounded to 6 decimal digits."""
    m = len(fam)
    if m < 1:
        raise ValueError("family is empty")
    if m == 1:
        return Fraction(0)
    value = math.log(m) / math.log(fam.field.q)
    return Fraction(round(value * 10**6), 10**6)


# -- Reed-Solomon based construction --------------------------------------


@dataclass(frozen=True)
class RSCodeSpec:
    """The [n-k-1, n-2k, k]_q code whose codewords drive the RS builder.

    The parity-check matrix has k-1 rows; row t (0-indexed) holds the
    powers gamma^(col * t) for columns 0..n-k-2.  For k=1 the parity
    check is empty and the code is all of GF(q)^{n-2}.
    """

    field: Field
    n: int
    k: int
    parity_check: MatrixGF

    @property
    def length(self) -> int:
        return self.n - self.k - 1

    @property
    def dimension(self) -> int:
        return self.n - 2 * self.k


def make_rs_code(field: Field, n: int, k: int) -> RSCodeSpec:
    if 2 * k >= n:
        raise ValueError(f"need 2k < n, got k={k}, n={n}")
    if field.q < n * k:
        raise ValueError(f"q < nk (q={field.q}, n={n}, k={k})")
    length = n - k - 1
    gamma = field.gamma
    rows = []
    for t in range(k - 1):
        rows.append([field.pow(gamma, c * t) for c in range(length)])
    if rows:
        H = MatrixGF.from_rows(field, rows)
    else:
        H = MatrixGF(field, 0, length, ())
    return RSCodeSpec(field, n, k, H)


def rs_codewords(spec: RSCodeSpec) -> list[tuple[int, ...]]:
    """All q^{n-2k} codewords, as generator-matrix images of messages in
    lexicographic message order.  The generator is the canonical kernel
    basis of the parity check, so the order is reproducible.
    """
    f = spec.field
    G = kernel_basis(spec.parity_check)
    assert G.rows == spec.dimension
    rows = G.row_list()
    words = []
    for msg in itertools.product(f.elements(), repeat=G.rows):
        w = [0] * spec.length
        for c, row in zip(msg, rows):
            if c:
                w = [f.add(x, f.mul(c, y)) for x, y in zip(w, row)]
        words.append(tuple(w))
    return words


def twist_codeword(spec: RSCodeSpec, j: int, x) -> tuple[int, ...]:
    """Twist a codeword entry-wise: position p (1-based) is scaled by
    gamma^(p (j-1)).
    """
    if not 1 <= j <= spec.k:
        raise ValueError(f"j must be in [1, {spec.k}], got {j}")
    field = spec.field
    x = tuple(int(v) for v in x)
    g = field.gamma
    return tuple(field.mul(field.pow(g, p * (j - 1)), v) for p, v in enumerate(x, start=1))


def power_sum(spec: RSCodeSpec, j: int, x) -> int:
    """Power sum of a codeword: sum_p x_p^((j-1) len(x) + p + 1)."""
    if not 1 <= j <= spec.k:
        raise ValueError(f"j must be in [1, {spec.k}], got {j}")
    field = spec.field
    x = tuple(int(v) for v in x)
    width = len(x)
    acc = 0
    for p, v in enumerate(x, start=1):
        acc = field.add(acc, field.pow(v, (j - 1) * width + p + 1))
    return acc


def build_rs_family(n: int, k: int, field: Field) -> Family:
    """The explicit RS-based family: q^{n-2k} members, one per codeword c,
    spanned for j = 1..k by (unit vector e_j | twist_codeword(j, c) |
    power_sum(j, c)).

    Always a partial spread; requires q >= nk.
    """
    spec = make_rs_code(field, n, k)
    members = []
    for c in rs_codewords(spec):
        gens = []
        for j in range(1, k + 1):
            e = [0] * k
            e[j - 1] = 1
            gens.append(tuple(e) + twist_codeword(spec, j, c) + (power_sum(spec, j, c),))
        members.append(Subspace.from_generators(field, n, gens))
    return Family(field, n, k, tuple(members))


# -- code-column construction ---------------------------------------------


def build_code_based_family(H: MatrixGF, k: int) -> Family:
    """Family spanned by consecutive k-column groups of a parity-check
    matrix.  With minimum code distance >= 3k+1 the result has exact AAD
    parameter at most 1.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    ncols = H.cols
    groups = ncols // k
    if groups < 1:
        raise ValueError("matrix has fewer than k columns")
    field = H.field
    n = H.rows
    cols = [tuple(H.entry(r, c) for r in range(n)) for c in range(ncols)]
    members = []
    for g in range(groups):
        gens = cols[g * k : (g + 1) * k]
        M = MatrixGF.from_rows(field, gens)
        if rank(M) != k:
            raise ValueError(f"column group {g} is linearly dependent")
        members.append(Subspace.from_generators(field, n, gens))
    return Family(field, n, k, tuple(members))


def vandermonde_matrix(field: Field, rows: int) -> MatrixGF:
    """rows x q matrix with columns (1, a, a^2, ...) over all field elements."""
    cols = [[field.pow(a, r) for r in range(rows)] for a in field.elements()]
    return MatrixGF.from_rows(field, [[col[r] for col in cols] for r in range(rows)])


# -- random construction ----------------------------------------------------


@dataclass(frozen=True)
class RandomFamilyResult:
    family: Family
    sampled: int
    spread_deletions: int
    as_deletions: int
    rounds_used: int
    achieved: bool

    def to_json(self) -> dict:
        return {
            "family": self.family.to_json(),
            "diagnostics": {
                "sampled": self.sampled,
                "spread_deletions": self.spread_deletions,
                "as_deletions": self.as_deletions,
                "rounds_used": self.rounds_used,
                "achieved": self.achieved,
            },
        }


def _random_subspace(field: Field, n: int, k: int, rng: random.Random) -> Subspace:
    # Rejection over uniform k x n matrices of full rank, then RREF
    # canonicalization: every k-subspace has the same number of rank-k
    # generator matrices, so the result is uniform.
    q = field.q
    while True:
        entries = [rng.randrange(q) for _ in range(k * n)]
        M = MatrixGF(field, k, n, tuple(entries))
        if rank(M) == k:
            return Subspace.from_generators(field, n, M.row_list())


def build_random_family(
    n: int,
    k: int,
    L: int,
    field: Field,
    seed: int,
    max_rounds: int | None = None,
    as_enum_guard: int | None = None,
) -> RandomFamilyResult:
    """Seeded random AS-family builder.

    Samples M = floor(q^{n-2k-(n-k)(k+1)/(L+1)}) uniform k-subspaces,
    deletes one member of every non-trivially-intersecting pair, then
    repeatedly deletes a member hit by a worst (k+1)-subspace witness
    until the exact AS parameter is at most L or max_rounds runs out
    (best-effort, flagged in the diagnostics).  Deterministic per seed.
    """
    if 2 * k >= n:
        raise ValueError(f"need 2k < n, got k={k}, n={n}")
    if L < 1:
        raise ValueError("L must be >= 1")
    M = random_sample_size(n, k, L, field.q)
    if M < 1:
        raise ValueError(f"sample size M = {M} < 1 for these parameters")
    rng = random.Random(seed)
    sampled = [_random_subspace(field, n, k, rng) for _ in range(M)]

    kept: list[Subspace] = []
    for S in sampled:
        if all(S.key() != T.key() and S.trivially_intersects(T) for T in kept):
            kept.append(S)
    spread_deletions = M - len(kept)

    if max_rounds is None:
        max_rounds = M
    rounds = 0
    as_deletions = 0
    achieved = False
    while True:
        fam = Family(field, n, k, tuple(kept))
        L_as, V = compute_L_as(fam, enum_guard=as_enum_guard)
        if L_as <= L:
            achieved = True
            break
        if rounds >= max_rounds:
            break
        # delete the highest-indexed member met by the witness
        victim = None
        for idx in range(len(kept) - 1, -1, -1):
            if not V.trivially_intersects(kept[idx]):
                victim = idx
                break
        assert victim is not None
        del kept[victim]
        as_deletions += 1
        rounds += 1
    return RandomFamilyResult(
        family=Family(field, n, k, tuple(kept)),
        sampled=M,
        spread_deletions=spread_deletions,
        as_deletions=as_deletions,
        rounds_used=rounds,
        achieved=achieved,
    )
