"""Canonical subspaces of GF(q)^n and exhaustive subspace enumeration.

A Subspace is stored as its unique RREF basis, so equality is plain
entry-wise comparison and the basis tuple can serve as a dict key.  The
enumeration iterates pivot-column patterns in lexicographic order and
fills the free cells row-major with codes counted lexicographically,
which pins a reproducible canonical order used by the search and test
layers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .gf import Field
from .matgf import MatrixGF, rank_of_stack, rref


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of GF(q)^n."""
    if k < 0 or k > n:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num *= q**n - q**i
        den *= q**k - q**i
    assert num % den == 0
    return num // den


@dataclass(frozen=True)
class Subspace:
    """A k-dimensional subspace of GF(q)^n in canonical RREF basis form."""

    field: Field
    n: int
    k: int
    basis: MatrixGF

    def __post_init__(self):
        if self.basis.rows != self.k or self.basis.cols != self.n:
            raise ValueError("basis shape does not match (k, n)")
        if self.k < 1 or self.k > self.n:
            raise ValueError(f"subspace dimension must be in [1, n], got k={self.k}")
        R, rk, pivots = rref(self.basis)
        if rk != self.k or R.entries != self.basis.entries:
            raise ValueError("basis is not a canonical rank-k RREF matrix")
        object.__setattr__(self, "_pivots", pivots)

    @classmethod
    def from_generators(cls, field: Field, n: int, vectors) -> "Subspace":
        """Canonical subspace spanned by the given vectors."""
        vectors = [tuple(int(x) for x in v) for v in vectors]
        if not vectors:
            raise ValueError("empty generator set")
        if any(len(v) != n for v in vectors):
            raise ValueError("generator length does not match ambient dimension")
        M = MatrixGF.from_rows(field, vectors)
        R, rk, _ = rref(M)
        if rk == 0:
            raise ValueError("generators span only the zero space")
        basis = MatrixGF(field, rk, n, R.entries[: rk * n])
        return cls(field, n, rk, basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return self._pivots

    def reduce(self, v) -> tuple[int, ...]:
        """Residue of v modulo this subspace: the unique coset member with
        zeros in all pivot coordinates.  It is also the lexicographically
        smallest member of v + S, hence the coset's canonical representative.
        """
        f = self.field
        r = list(int(x) for x in v)
        if len(r) != self.n:
            raise ValueError("vector length mismatch")
        for row_idx, p in enumerate(self.pivots):
            c = r[p]
            if c:
                brow = self.basis.row(row_idx)
                r = [f.sub(x, f.mul(c, b)) for x, b in zip(r, brow)]
        return tuple(r)

    def contains(self, v) -> bool:
        return not any(self.reduce(v))

    def trivially_intersects(self, other: "Subspace") -> bool:
        """True iff the two subspaces meet only in the zero vector."""
        if self.n != other.n or self.field != other.field:
            raise ValueError("ambient space mismatch")
        return rank_of_stack(self.basis, other.basis) == self.k + other.k

    def sum(self, other: "Subspace") -> "Subspace":
        """Canonical span of the union of both subspaces."""
        if self.n != other.n or self.field != other.field:
            raise ValueError("ambient space mismatch")
        return Subspace.from_generators(self.field, self.n, self.basis.row_list() + other.basis.row_list())

    def span_with(self, u) -> "Subspace":
        """The (k+1)-dimensional span of this subspace and the vector u."""
        u = tuple(int(x) for x in u)
        if self.contains(u):
            raise ValueError("vector already lies in the subspace")
        return Subspace.from_generators(self.field, self.n, self.basis.row_list() + [u])

    def vectors(self):
        """All q^k vectors of the subspace (coefficient order lexicographic)."""
        f = self.field
        rows = self.basis.row_list()
        for coeffs in itertools.product(f.elements(), repeat=self.k):
            v = [0] * self.n
            for c, row in zip(coeffs, rows):
                if c:
                    v = [f.add(x, f.mul(c, b)) for x, b in zip(v, row)]
            yield tuple(v)

    def basis_rows(self) -> list[tuple[int, ...]]:
        return self.basis.row_list()

    def key(self) -> tuple[int, ...]:
        """Hashable identity of the subspace (its RREF basis entries)."""
        return self.basis.entries

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "basis": [list(r) for r in self.basis.row_list()]}

    @classmethod
    def from_json(cls, field: Field, obj: dict) -> "Subspace":
        basis = MatrixGF.from_rows(field, obj["basis"])
        return cls(field, int(obj["n"]), int(obj["k"]), basis)


@dataclass(frozen=True)
class AffineCoset:
    """The affine subspace rep + sub; identity is the canonical representative."""

    rep: tuple[int, ...]
    sub: Subspace

    def canonical_rep(self) -> tuple[int, ...]:
        return self.sub.reduce(self.rep)

    def __eq__(self, other):
        if not isinstance(other, AffineCoset):
            return NotImplemented
        return self.sub == other.sub and self.canonical_rep() == other.canonical_rep()

    def __hash__(self):
        return hash((self.sub.key(), self.canonical_rep()))

    def points(self):
        f = self.sub.field
        rep = self.rep
        for v in self.sub.vectors():
            yield tuple(f.add(a, b) for a, b in zip(rep, v))


def coset_canonical_rep(c: AffineCoset) -> tuple[int, ...]:
    """Lexicographically smallest member of the coset; equal cosets share it."""
    return c.canonical_rep()


def enumerate_subspaces(field: Field, n: int, k: int):
    """Yield every k-dimensional subspace of GF(q)^n exactly once.

    Order: pivot-column patterns lexicographically, then free entries
    row-major in lexicographic code order.  Total count equals
    gaussian_binomial(n, k, q).
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    q = field.q
    for pattern in itertools.combinations(range(n), k):
        pivot_set = set(pattern)
        free_cells = [
            (r, c)
            for r in range(k)
            for c in range(n)
            if c not in pivot_set and c > pattern[r]
        ]
        base = [[0] * n for _ in range(k)]
        for r, p in enumerate(pattern):
            base[r][p] = 1
        for assignment in itertools.product(range(q), repeat=len(free_cells)):
            rows = [row[:] for row in base]
            for (r, c), val in zip(free_cells, assignment):
                rows[r][c] = val
            basis = MatrixGF(field, k, n, tuple(x for row in rows for x in row))
            yield Subspace(field, n, k, basis)


def all_vectors(field: Field, n: int):
    """All q^n vectors of GF(q)^n in lexicographic code order."""
    return itertools.product(field.elements(), repeat=n)
