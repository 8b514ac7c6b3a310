"""The truncated group ring  R_N = Z[Lambda] / I^N.

With a basis b_1..b_n of Lambda and ``x_i = e^{b_i} - 1`` the ring R_N is
free on the monomials ``x^a`` with ``|a| < N``, and the degree-d monomials
represent Sym^d(Lambda) = I^d / I^{d+1}.  The exponential of a weight with
coordinates c is ``prod_i (1 + x_i)^{c_i}``, whose coefficients are
generalized binomials (this also covers negative c_i).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import comb, factorial, prod
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import sym2
from .exprparse import Polynomial, check_symbols, parse_polynomial
from .rootsystem import DEFAULT_ORBIT_CAP, RootSystem, orbit_array
from .zlinalg import identity, inverse_unimodular, matvec


class PreconditionError(ValueError):
    pass


def gbinom(c: int, k: int) -> int:
    """Generalized binomial coefficient C(c, k) for any integer c."""
    if c >= 0:
        return comb(c, k)
    # C(-m, k) = (-1)^k C(m + k - 1, k)
    return (-1) ** k * comb(-c + k - 1, k)


def ring_rank(n: int, N: int) -> int:
    return sum(comb(n + d - 1, d) for d in range(N))


class TruncRing:
    """Z[Lambda]/I^N over a chosen basis of Lambda.

    ``basis`` is a unimodular matrix whose columns are the b_k in Dynkin
    coordinates (identity by default).
    """

    def __init__(self, n: int, N: int = 4, basis: Sequence[Sequence[int]] | None = None) -> None:
        if N < 2:
            raise ValueError("truncation order must be at least 2")
        self.n = n
        self.N = N
        self.basis = [list(r) for r in basis] if basis is not None else identity(n)
        self._to_basis = inverse_unimodular(self.basis) if basis is not None else identity(n)

    @classmethod
    def for_root_system(cls, rs: RootSystem, N: int = 4,
                        basis: Sequence[Sequence[int]] | None = None) -> "TruncRing":
        return cls(rs.rank, N, basis)

    @cached_property
    def monomials(self) -> tuple[tuple[int, ...], ...]:
        out = []
        for d in range(self.N):
            for combo in itertools.combinations_with_replacement(range(self.n), d):
                a = [0] * self.n
                for i in combo:
                    a[i] += 1
                out.append(tuple(a))
        return tuple(out)

    @cached_property
    def index(self) -> dict[tuple[int, ...], int]:
        return {a: k for k, a in enumerate(self.monomials)}

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(sum(a) for a in self.monomials)

    @property
    def rank(self) -> int:
        return len(self.monomials)

    def coords(self, lam: Sequence[int]) -> list[int]:
        """Coordinates of a weight in the ring's lattice basis."""
        return matvec(self._to_basis, lam)

    def element(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]]) -> "RingElt":
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        return RingElt(self, {k: int(c) for k, c in items if c})

    def from_vector(self, vec: Sequence[int]) -> "RingElt":
        return self.element((k, c) for k, c in enumerate(vec))

    def one(self) -> "RingElt":
        return self.constant(1)

    def zero(self) -> "RingElt":
        return RingElt(self, {})

    def constant(self, c: int) -> "RingElt":
        return self.element({0: c})

    def variable(self, i: int) -> "RingElt":
        """x_i = e^{b_i} - 1 (0-based)."""
        if self.N < 2:
            return self.zero()
        a = [0] * self.n
        a[i] = 1
        return self.element({self.index[tuple(a)]: 1})

    def monomial(self, a: Sequence[int]) -> "RingElt":
        return self.element({self.index[tuple(a)]: 1}) if sum(a) < self.N else self.zero()

    def exp_embed(self, lam: Sequence[int]) -> "RingElt":
        c = self.coords(lam)
        coeffs = {}
        for k, a in enumerate(self.monomials):
            v = prod(gbinom(c[i], a[i]) for i in range(self.n) if a[i])
            if v:
                coeffs[k] = v
        return RingElt(self, coeffs)

    def exp_power_sum(self, weights: np.ndarray) -> list[int]:
        """Coefficient vector of  sum_rows e^{lambda}  for an integer array of weights."""
        if len(weights) == 0:
            return [0] * self.rank
        c = np.asarray(weights, dtype=np.int64) @ np.asarray(self._to_basis, dtype=np.int64).T
        top = int(np.abs(c).max()) + self.N
        safe = float(top) ** (self.N - 1) * len(c) < 2.0**62
        dtype = np.int64 if safe else object
        c = c.astype(dtype)
        # binom[k][:, i] = C(c_i, k), via the falling factorial
        binom = [np.ones_like(c)]
        falling = np.ones_like(c)
        for k in range(1, self.N):
            falling = falling * (c - (k - 1))
            binom.append(falling // factorial(k))
        out = []
        for a in self.monomials:
            term = None
            for i, e in enumerate(a):
                if e:
                    col = binom[e][:, i]
                    term = col if term is None else term * col
            out.append(len(c) if term is None else int(term.sum()))
        return out

    def orbit_element(self, rs: RootSystem, chi: Sequence[int],
                      cap: int = DEFAULT_ORBIT_CAP) -> "RingElt":
        """sum over the W-orbit of chi of (e^lambda - 1)."""
        orb = orbit_array(rs, chi, cap)
        vec = self.exp_power_sum(orb)
        vec[0] -= len(orb)
        return self.from_vector(vec)

    def parse_expression(self, text: str, symbols: Mapping[str, Sequence[int]]) -> "RingElt":
        return evaluate_polynomial(self, parse_polynomial(text), symbols)

    def __repr__(self) -> str:
        return f"TruncRing(n={self.n}, N={self.N})"


@dataclass(frozen=True, eq=False)
class RingElt:
    ring: TruncRing
    coeffs: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", {k: c for k, c in self.coeffs.items() if c})

    def _coerce(self, other) -> "RingElt":
        if isinstance(other, RingElt):
            if other.ring is not self.ring:
                raise ValueError("elements of different rings")
            return other
        if isinstance(other, int):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other) -> "RingElt":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return RingElt(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "RingElt":
        return RingElt(self.ring, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other) -> "RingElt":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "RingElt":
        return (-self) + other

    def scale(self, k: int) -> "RingElt":
        return RingElt(self.ring, {i: k * c for i, c in self.coeffs.items()})

    def __mul__(self, other) -> "RingElt":
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        ring = self.ring
        mons, idx, deg, N = ring.monomials, ring.index, ring.degrees, ring.N
        out: dict[int, int] = {}
        for i, a in self.coeffs.items():
            da = deg[i]
            ma = mons[i]
            for j, b in other.coeffs.items():
                if da + deg[j] >= N:
                    continue
                k = idx[tuple(x + y for x, y in zip(ma, mons[j]))]
                out[k] = out.get(k, 0) + a * b
        return RingElt(ring, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "RingElt":
        if e < 0:
            raise ValueError("negative powers are not defined here")
        out = self.ring.one()
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.ring.constant(other)
        if not isinstance(other, RingElt):
            return NotImplemented
        return self.ring is other.ring and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.coeffs.items())))

    def vector(self) -> list[int]:
        out = [0] * self.ring.rank
        for k, c in self.coeffs.items():
            out[k] = c
        return out

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            a = self.ring.monomials[k]
            mono = "*".join(f"x{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(a) if e)
            parts.append(f"{self.coeffs[k]}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def exp_embed(ring: TruncRing, lam: Sequence[int]) -> RingElt:
    return ring.exp_embed(lam)


def mul(a: RingElt, b: RingElt) -> RingElt:
    return a * b


def add(a: RingElt, b: RingElt) -> RingElt:
    return a + b


def scale(a: RingElt, k: int) -> RingElt:
    return a.scale(k)


def augmentation(a: RingElt) -> int:
    return a.coeffs.get(0, 0)


def graded_component(a: RingElt, d: int) -> RingElt:
    deg = a.ring.degrees
    return RingElt(a.ring, {k: c for k, c in a.coeffs.items() if deg[k] == d})


def orbit_element(ring: TruncRing, rs: RootSystem, chi: Sequence[int],
                  cap: int = DEFAULT_ORBIT_CAP) -> RingElt:
    return ring.orbit_element(rs, chi, cap)


def raw_degree2(ring: TruncRing, vec: Sequence[int] | Mapping[int, int]) -> list[int]:
    """Degree-2 class of a ring vector, in Sym^2 coordinates over the Dynkin basis."""
    items = vec.items() if isinstance(vec, Mapping) else enumerate(vec)
    n = ring.n
    pidx = sym2.pair_index(n)
    local = [0] * sym2.dim(n)
    for k, c in items:
        if c and ring.degrees[k] == 2:
            a = ring.monomials[k]
            ij = [i for i in range(n) for _ in range(a[i])]
            local[pidx[(ij[0], ij[1])]] += c
    return sym2.change_basis(local, ring.basis)


def to_sym2(ring: TruncRing, a: RingElt) -> list[int]:
    """The class of an element of I^2 in Sym^2(Lambda), sign-matched to c2.

    The raw class of sum a_j e^{lambda_j} in I^2/I^3 is +1/2 sum a_j lambda_j^2;
    it is negated so the result agrees with c2 = -1/2 sum a_j lambda_j^2.
    """
    deg = ring.degrees
    if any(deg[k] < 2 for k in a.coeffs):
        raise PreconditionError("to_sym2 needs an element of I^2 (degree 0 and 1 parts vanish)")
    return [-x for x in raw_degree2(ring, a.coeffs)]


def evaluate_polynomial(ring: TruncRing, poly: Polynomial,
                        symbols: Mapping[str, Sequence[int]]) -> RingElt:
    """Evaluate a parsed polynomial with each symbol s standing for e^{weight(s)}."""
    check_symbols(poly, symbols)
    cache = {s: ring.exp_embed(w) for s, w in symbols.items()}
    out = ring.zero()
    for mono, c in poly.items():
        term = ring.constant(c)
        for s, e in mono:
            term = term * (cache[s] ** e)
        out = out + term
    return out


def parse_expression(text: str, symbols: Mapping[str, Sequence[int]], ring: TruncRing) -> RingElt:
    return ring.parse_expression(text, symbols)
