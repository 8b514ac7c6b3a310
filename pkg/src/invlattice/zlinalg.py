"""Exact integer linear algebra: Hermite/Smith normal forms and lattices in Z^d.

Matrices are plain lists of lists of Python ints (arbitrary precision).
Lattices are stored by the rows of a canonical row-style Hermite normal
form; ``Lattice.matrix()`` gives the same basis as columns.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Matrix = list[list[int]]
Vector = tuple[int, ...]


class ContainmentError(ValueError):
    """Raised when a lattice operation requires L_small <= L_big and it fails."""


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    if not m:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def _sub_multiple(target: list[int], q: int, src: list[int], start: int = 0) -> None:
    # target -= q * src, in place, from column `start` on
    for k in range(start, len(target)):
        s = src[k]
        if s:
            target[k] -= q * s


def hnf(m: Sequence[Sequence[int]], transform: bool = True) -> tuple[Matrix, Matrix | None]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U @ m == H``, ``U`` unimodular.  ``H`` is upper
    echelon with positive pivots, entries above each pivot reduced into
    ``[0, pivot)``, and zero rows at the bottom.  With ``transform=False``
    the second element is ``None``.
    """
    a = [list(map(int, row)) for row in m]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    u = identity(nrows) if transform else None
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        while True:
            nz = [i for i in range(r, nrows) if a[i][c]]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(a[i][c]))
            if p != r:
                a[p], a[r] = a[r], a[p]
                if u is not None:
                    u[p], u[r] = u[r], u[p]
                nz = [r if i == p else (p if i == r else i) for i in nz]
            piv = a[r][c]
            clean = True
            for i in nz:
                if i == r:
                    continue
                q = a[i][c] // piv
                _sub_multiple(a[i], q, a[r], c)
                if u is not None:
                    _sub_multiple(u[i], q, u[r])
                if a[i][c]:
                    clean = False
            if clean:
                break
        if not a[r][c]:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            if u is not None:
                u[r] = [-x for x in u[r]]
        piv = a[r][c]
        for i in range(r):
            q = a[i][c] // piv
            if q:
                _sub_multiple(a[i], q, a[r], c)
                if u is not None:
                    _sub_multiple(u[i], q, u[r])
        r += 1
    return a, u


def snf(m: Sequence[Sequence[int]], want_u: bool = True, want_v: bool = True
        ) -> tuple[Matrix, Matrix | None, Matrix | None]:
    """Smith normal form ``(D, U, V)`` with ``U @ m @ V == D``.

    ``D`` is diagonal (rectangular shape of ``m``) with non-negative entries
    forming a divisibility chain, zeros last.
    """
    a = [list(map(int, row)) for row in m]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    u = identity(nrows) if want_u else None
    v = identity(ncols) if want_v else None

    def swap_rows(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        if u is not None:
            u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for row in a:
            row[i], row[j] = row[j], row[i]
        if v is not None:
            for row in v:
                row[i], row[j] = row[j], row[i]

    def row_op(i: int, q: int, j: int) -> None:  # row_i -= q row_j
        _sub_multiple(a[i], q, a[j])
        if u is not None:
            _sub_multiple(u[i], q, u[j])

    def col_op(i: int, q: int, j: int) -> None:  # col_i -= q col_j
        for row in a:
            if row[j]:
                row[i] -= q * row[j]
        if v is not None:
            for row in v:
                if row[j]:
                    row[i] -= q * row[j]

    t = 0
    while t < min(nrows, ncols):
        best = None
        for i in range(t, nrows):
            row = a[i]
            for j in range(t, ncols):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            piv = a[t][t]
            dirty = False
            for i in range(t + 1, nrows):
                if a[i][t]:
                    row_op(i, a[i][t] // piv, t)
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, ncols):
                if a[t][j]:
                    col_op(j, a[t][j] // piv, t)
                    if a[t][j]:
                        dirty = True
            if dirty:
                # move the smallest remaining entry of row/col t into the pivot
                cand = [(abs(a[i][t]), i, 'r') for i in range(t + 1, nrows) if a[i][t]]
                cand += [(abs(a[t][j]), j, 'c') for j in range(t + 1, ncols) if a[t][j]]
                _, k, kind = min(cand)
                if kind == 'r':
                    swap_rows(t, k)
                else:
                    swap_cols(t, k)
                continue
            # divisibility: every remaining entry must be a multiple of the pivot
            bad = None
            for i in range(t + 1, nrows if piv != 1 else t + 1):
                for j in range(t + 1, ncols):
                    if a[i][j] % piv:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_op(t, -1, bad)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if u is not None:
                u[t] = [-x for x in u[t]]
        t += 1
    return a, u, v


def inverse_unimodular(m: Sequence[Sequence[int]]) -> Matrix:
    """Integer inverse of a square matrix with determinant +-1."""
    n = len(m)
    h, u = hnf(m)
    if any(h[i][i] != 1 for i in range(n)):
        raise ValueError("matrix is not unimodular")
    # u m = h with h unit upper triangular and reduced, hence h = I
    return u


def invariant_factors(m: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Nonzero diagonal of the Smith normal form (including 1s)."""
    d, _, _ = snf(m, want_u=False, want_v=False)
    return tuple(d[i][i] for i in range(min(len(d), len(d[0]) if d else 0)) if d[i][i])


def kernel(m: Sequence[Sequence[int]], ncols: int | None = None) -> "Lattice":
    """Integer kernel ``{x : m @ x == 0}`` as a lattice in Z^ncols."""
    n = ncols if ncols is not None else (len(m[0]) if m else 0)
    if not m:
        return Lattice.full(n)
    # rows of [m^T | I]; HNF; rows with vanishing m^T part span the kernel
    mt = transpose(m)
    nr = len(m)
    aug = [list(mt[j]) + [int(j == k) for k in range(n)] for j in range(n)]
    h, _ = hnf(aug, transform=False)
    gens = [row[nr:] for row in h if not any(row[:nr]) and any(row[nr:])]
    return Lattice(n, gens)


def solve(m: Sequence[Sequence[int]], b: Sequence[int]) -> list[int] | None:
    """An integer solution x of ``m @ x == b``, or ``None`` if there is none."""
    nr = len(m)
    nc = len(m[0]) if m else 0
    if nr == 0:
        return [0] * nc
    d, u, v = snf(m)
    ub = matvec(u, b)
    y = [0] * nc
    for i in range(nr):
        di = d[i][i] if i < nc else 0
        if di == 0:
            if ub[i]:
                return None
        else:
            if ub[i] % di:
                return None
            y[i] = ub[i] // di
    return matvec(v, y)


def kernel_mod(cols: Sequence[Sequence[int]], moduli: Sequence[int], k: int) -> list[list[int]]:
    """Basis of ``{z in Z^k : sum_g z_g * cols[j][g] = 0 mod moduli[j] for all j}``.

    ``cols[j]`` is the j-th constraint as a length-k integer vector.
    """
    if not cols:
        return [[int(i == j) for j in range(k)] for i in range(k)]
    nc = len(cols)
    rows = [[cols[j][g] % moduli[j] for j in range(nc)] + [int(g == i) for i in range(k)]
            for g in range(k)]
    rows += [[moduli[j] * int(j == i) for i in range(nc)] + [0] * k for j in range(nc)]
    h, _ = hnf(rows, transform=False)
    return [row[nc:] for row in h if not any(row[:nc]) and any(row[nc:])]


@dataclass(frozen=True)
class AbelianQuotient:
    """A finitely generated abelian group  Z^free_rank + sum Z/d_i  (d_1 | d_2 | ...)."""

    factors: tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self) -> None:
        if any(d <= 1 for d in self.factors):
            raise ValueError(f"invariant factors must exceed 1, got {self.factors}")
        for a, b in zip(self.factors, self.factors[1:]):
            if b % a:
                raise ValueError(f"factors {self.factors} do not form a divisibility chain")

    @classmethod
    def from_diagonal(cls, diag: Iterable[int], free_rank: int = 0) -> "AbelianQuotient":
        """Normalize an arbitrary list of cyclic orders into invariant factors."""
        nonzero = [abs(x) for x in diag if x not in (0, 1, -1)]
        if not nonzero:
            return cls((), free_rank)
        size = len(nonzero)
        facs = invariant_factors([[nonzero[i] if i == j else 0 for j in range(size)]
                                  for i in range(size)])
        return cls(tuple(d for d in facs if d > 1), free_rank)

    @property
    def order(self) -> int | None:
        if self.free_rank:
            return None
        out = 1
        for d in self.factors:
            out *= d
        return out

    @property
    def is_trivial(self) -> bool:
        return not self.factors and not self.free_rank

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.factors] + ["Z"] * self.free_rank
        return " x ".join(parts) if parts else "0"


@dataclass(frozen=True)
class Lattice:
    """A sublattice of Z^dim, canonicalized to row HNF with zero rows dropped.

    Two lattices are equal iff their canonical bases are equal.
    """

    dim: int
    rows: tuple[Vector, ...] = field(default=())

    def __init__(self, dim: int, generators: Iterable[Sequence[int]] = ()) -> None:
        gens = [list(map(int, g)) for g in generators]
        for g in gens:
            if len(g) != dim:
                raise ValueError(f"generator of length {len(g)} in ambient dimension {dim}")
        gens = [g for g in gens if any(g)]
        h, _ = hnf(gens, transform=False) if gens else ([], None)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "rows", tuple(tuple(r) for r in h if any(r)))

    @classmethod
    def full(cls, dim: int) -> "Lattice":
        return cls(dim, identity(dim))

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[int]]) -> "Lattice":
        """Lattice spanned by the columns of a d x r matrix."""
        if not cols:
            raise ValueError("need at least one row to know the ambient dimension")
        return cls(len(cols), transpose(cols))

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def is_full_rank(self) -> bool:
        return self.rank == self.dim

    def matrix(self) -> Matrix:
        """Basis as the columns of a dim x rank matrix (column HNF)."""
        return transpose(self.rows) if self.rows else [[] for _ in range(self.dim)]

    def pivots(self) -> list[int]:
        return [next(j for j, x in enumerate(r) if x) for r in self.rows]

    def index(self) -> int:
        """Index in Z^dim (full-rank lattices only)."""
        if not self.is_full_rank:
            raise ValueError("index of a non-full-rank lattice is infinite")
        out = 1
        for i, r in enumerate(self.rows):
            out *= r[i]
        return out

    def reduce(self, v: Sequence[int]) -> list[int]:
        """Remainder of v after division by the HNF basis (zero iff v is a member)."""
        w = list(map(int, v))
        for r, c in zip(self.rows, self.pivots()):
            if w[c]:
                _sub_multiple(w, w[c] // r[c], list(r), c)
        return w

    def __contains__(self, v: Sequence[int]) -> bool:
        if len(v) != self.dim:
            raise ValueError("dimension mismatch")
        return not any(self.reduce(v))

    def coordinates(self, v: Sequence[int]) -> list[int]:
        """Integer coordinates of a member v in the canonical basis."""
        w = list(map(int, v))
        out = []
        for r, c in zip(self.rows, self.pivots()):
            q, rem = divmod(w[c], r[c])
            if rem:
                raise ContainmentError(f"{tuple(v)} is not in the lattice")
            out.append(q)
            if q:
                _sub_multiple(w, q, list(r), c)
        if any(w):
            raise ContainmentError(f"{tuple(v)} is not in the lattice")
        return out

    def contains_lattice(self, other: "Lattice") -> bool:
        return all(r in self for r in other.rows)

    def __le__(self, other: "Lattice") -> bool:
        return other.contains_lattice(self)

    def __lt__(self, other: "Lattice") -> bool:
        return self <= other and self != other

    def __add__(self, other: "Lattice") -> "Lattice":
        _check_dim(self, other)
        return Lattice(self.dim, self.rows + other.rows)

    def scale(self, k: int) -> "Lattice":
        return Lattice(self.dim, [[k * x for x in r] for r in self.rows])

    def rational_coordinates(self, v: Sequence[int]) -> list[Fraction]:
        """Coordinates of v in the basis of a full-rank lattice (rational)."""
        if not self.is_full_rank:
            raise ValueError("rational coordinates need a full-rank lattice")
        w = [Fraction(x) for x in v]
        out = []
        for r, c in zip(self.rows, self.pivots()):
            q = w[c] / r[c]
            out.append(q)
            if q:
                for k in range(c, self.dim):
                    if r[k]:
                        w[k] -= q * r[k]
        return out

    def membership_constraints(self) -> tuple[list[list[int]], list[int]]:
        """Linear forms phi_j and moduli m_j with  v in L  iff  phi_j(v) = 0 mod m_j.

        Requires full rank.  Trivial constraints (modulus 1) are omitted.
        """
        if not self.is_full_rank:
            raise ValueError("membership constraints need a full-rank lattice")
        d, _, vt = snf(self.rows, want_u=False, want_v=True)
        # rows B generate L;  U B V = D  =>  v in L  iff  (v V)_j = 0 mod d_j
        forms, mods = [], []
        for j in range(self.dim):
            dj = d[j][j]
            if dj > 1:
                forms.append([vt[i][j] for i in range(self.dim)])
                mods.append(dj)
        return forms, mods


def _check_dim(a: Lattice, b: Lattice) -> None:
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")


def intersect(l1: Lattice, l2: Lattice) -> Lattice:
    """Exact intersection of two lattices in the same ambient space."""
    _check_dim(l1, l2)
    if not l1.rows or not l2.rows:
        return Lattice(l1.dim)
    if l2.is_full_rank and not l1.is_full_rank:
        return _intersect_with_full(l1, l2)
    if l1.is_full_rank:
        return _intersect_with_full(l2, l1)
    d = l1.dim
    stacked = [list(b) + list(b) for b in l1.rows] + [list(b) + [0] * d for b in l2.rows]
    h, _ = hnf(stacked, transform=False)
    return Lattice(d, [row[d:] for row in h if not any(row[:d])])


def _intersect_with_full(sub: Lattice, full: Lattice) -> Lattice:
    forms, mods = full.membership_constraints()
    gens = [list(r) for r in sub.rows]
    cols = [[sum(f[i] * g[i] for i in range(sub.dim)) for g in gens] for f in forms]
    z = kernel_mod(cols, mods, len(gens))
    return Lattice(sub.dim, [[sum(c * g[i] for c, g in zip(zz, gens)) for i in range(sub.dim)]
                             for zz in z])


def quotient(big: Lattice, small: Lattice) -> AbelianQuotient:
    """The group big/small, which requires small <= big."""
    _check_dim(big, small)
    if not big.contains_lattice(small):
        raise ContainmentError("quotient requires the small lattice to lie in the big one")
    coords = [big.coordinates(r) for r in small.rows]
    free = big.rank - small.rank
    if not coords:
        return AbelianQuotient((), free)
    return AbelianQuotient(tuple(d for d in invariant_factors(coords) if d > 1), free)


def lcm(a: int, b: int) -> int:
    return abs(a * b) // gcd(a, b) if a and b else 0
