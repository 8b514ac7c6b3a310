"""Semisimple root systems in Dynkin (fundamental-weight) coordinates.

A weight is a tuple of integers ``lam`` with ``lam[i] = <lam, alpha_i^vee>``.
Simple roots and fundamental weights are numbered in Bourbaki order; the
public helpers that take a root index use the 1-based Bourbaki numbering.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import factorial
from typing import Iterable, Sequence

import numpy as np

Weight = tuple[int, ...]

DEFAULT_ORBIT_CAP = 10**7

_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3, "E": 6, "F": 4, "G": 2}


class RootSystemError(ValueError):
    pass


class ResourceCapError(RuntimeError):
    """A computation would exceed a configured size limit."""


@dataclass(frozen=True, order=True)
class CartanType:
    family: str
    rank: int

    def __post_init__(self) -> None:
        fam, n = self.family, self.rank
        if fam not in _MIN_RANK:
            raise RootSystemError(f"unknown family {fam!r}")
        if not isinstance(n, int) or n < _MIN_RANK[fam]:
            raise RootSystemError(f"invalid rank {n} for family {fam}")
        if (fam == "E" and n not in (6, 7, 8)) or (fam == "F" and n != 4) or (fam == "G" and n != 2):
            raise RootSystemError(f"invalid rank {n} for family {fam}")
        if fam == "C" and n == 2:
            # C2 is B2; normalize so only one table is in play
            object.__setattr__(self, "family", "B")

    @classmethod
    def parse(cls, text: str) -> "CartanType":
        text = text.strip()
        if len(text) < 2 or not text[1:].isdigit():
            raise RootSystemError(f"cannot parse Cartan type {text!r}")
        return cls(text[0].upper(), int(text[1:]))

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def weyl_order(self) -> int:
        n = self.rank
        return {
            "A": factorial(n + 1),
            "B": 2**n * factorial(n),
            "C": 2**n * factorial(n),
            "D": 2 ** (n - 1) * factorial(n),
            "E": {6: 51840, 7: 2903040, 8: 696729600}.get(n, 0),
            "F": 1152,
            "G": 12,
        }[self.family]


def _gram(ct: CartanType) -> list[list[Fraction]]:
    """Symmetrized form (alpha_i, alpha_j) on simple roots, long roots of length^2 = 2."""
    fam, n = ct.family, ct.rank
    b = [[Fraction(0)] * n for _ in range(n)]

    def bond(i: int, j: int, val: Fraction) -> None:
        b[i][j] = b[j][i] = val

    if fam in "ADE":
        for i in range(n):
            b[i][i] = Fraction(2)
        if fam == "A":
            for i in range(n - 1):
                bond(i, i + 1, Fraction(-1))
        elif fam == "D":
            for i in range(n - 2):
                bond(i, i + 1, Fraction(-1))
            bond(n - 3, n - 1, Fraction(-1))
        else:
            for i, j in [(0, 2), (2, 3), (3, 4), (1, 3)] + [(k, k + 1) for k in range(4, n - 1)]:
                bond(i, j, Fraction(-1))
    elif fam == "B":
        for i in range(n):
            b[i][i] = Fraction(2)
        b[n - 1][n - 1] = Fraction(1)
        for i in range(n - 1):
            bond(i, i + 1, Fraction(-1))
    elif fam == "C":
        for i in range(n):
            b[i][i] = Fraction(1)
        b[n - 1][n - 1] = Fraction(2)
        for i in range(n - 2):
            bond(i, i + 1, Fraction(-1, 2))
        bond(n - 2, n - 1, Fraction(-1))
    elif fam == "F":
        for i, v in enumerate((2, 2, 1, 1)):
            b[i][i] = Fraction(v)
        bond(0, 1, Fraction(-1))
        bond(1, 2, Fraction(-1))
        bond(2, 3, Fraction(-1, 2))
    elif fam == "G":
        b[0][0] = Fraction(2, 3)
        b[1][1] = Fraction(2)
        bond(0, 1, Fraction(-1))
    return b


def _block_diag(blocks: Sequence[Sequence[Sequence]], zero) -> list[list]:
    n = sum(len(bl) for bl in blocks)
    out = [[zero] * n for _ in range(n)]
    off = 0
    for bl in blocks:
        for i, row in enumerate(bl):
            for j, x in enumerate(row):
                out[off + i][off + j] = x
        off += len(bl)
    return out


def _inverse(m: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for c in range(n):
        p = next(r for r in range(c, n) if a[r][c])
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


@dataclass(frozen=True)
class RootSystem:
    components: tuple[CartanType, ...]

    def __post_init__(self) -> None:
        if not self.components:
            raise RootSystemError("a root system needs at least one component")

    @cached_property
    def rank(self) -> int:
        return sum(c.rank for c in self.components)

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        return tuple(itertools.accumulate((c.rank for c in self.components[:-1]), initial=0))

    def component_slice(self, k: int) -> slice:
        return slice(self.offsets[k], self.offsets[k] + self.components[k].rank)

    def component_of(self, i: int) -> int:
        """Component index of the 0-based simple root i."""
        for k in range(len(self.components)):
            s = self.component_slice(k)
            if s.start <= i < s.stop:
                return k
        raise IndexError(i)

    @cached_property
    def gram(self) -> tuple[tuple[Fraction, ...], ...]:
        """(alpha_i, alpha_j), normalized per component so long roots have length^2 2."""
        return tuple(map(tuple, _block_diag([_gram(c) for c in self.components], Fraction(0))))

    @cached_property
    def cartan(self) -> tuple[tuple[int, ...], ...]:
        """A[i][j] = <alpha_j, alpha_i^vee>; column j is alpha_j in Dynkin coordinates."""
        b = self.gram
        n = self.rank
        return tuple(tuple(int(2 * b[i][j] / b[i][i]) for j in range(n)) for i in range(n))

    @cached_property
    def symmetrizer(self) -> tuple[int, ...]:
        """Positive integers d_i with diag(d) @ A symmetric (d_i proportional to |alpha_i|^2)."""
        out = []
        for k, c in enumerate(self.components):
            norms = [self.gram[i][i] for i in range(self.component_slice(k).start,
                                                     self.component_slice(k).stop)]
            den = 1
            for x in norms:
                den = den * x.denominator // np.gcd(den, x.denominator)
            ints = [int(x * den) for x in norms]
            g = int(np.gcd.reduce(ints))
            out.extend(x // g for x in ints)
        return tuple(out)

    @cached_property
    def long_roots(self) -> tuple[bool, ...]:
        return tuple(self.gram[i][i] == 2 for i in range(self.rank))

    @cached_property
    def weyl_orders(self) -> tuple[int, ...]:
        return tuple(c.weyl_order for c in self.components)

    @cached_property
    def weight_gram(self) -> tuple[tuple[Fraction, ...], ...]:
        """(omega_i, omega_j) for the fundamental weights."""
        # (omega_i, alpha_j) = delta_ij |alpha_j|^2 / 2 and alpha_j = sum_k A[k][j] omega_k
        n = self.rank
        ainv = _inverse([[Fraction(x) for x in row] for row in self.cartan])
        half = [self.gram[j][j] / 2 for j in range(n)]
        return tuple(tuple(half[i] * ainv[i][j] for j in range(n)) for i in range(n))

    def simple_root(self, i: int) -> Weight:
        """alpha_i (1-based) in Dynkin coordinates."""
        self._check_index(i)
        return tuple(self.cartan[r][i - 1] for r in range(self.rank))

    def fundamental_weight(self, i: int) -> Weight:
        self._check_index(i)
        return tuple(int(r == i - 1) for r in range(self.rank))

    def _check_index(self, i: int) -> None:
        if not 1 <= i <= self.rank:
            raise IndexError(f"simple root index {i} outside 1..{self.rank}")

    def form(self, lam: Sequence[int], mu: Sequence[int]) -> Fraction:
        """W-invariant form (lam, mu) on weights."""
        g = self.weight_gram
        return sum((Fraction(lam[i] * mu[j]) * g[i][j]
                    for i in range(self.rank) for j in range(self.rank)
                    if lam[i] and mu[j]), Fraction(0))

    def component_form(self, k: int, lam: Sequence[int]) -> Fraction:
        """(lam_k, lam_k) for the projection of lam onto component k."""
        s = self.component_slice(k)
        g = self.weight_gram
        return sum((Fraction(lam[i] * lam[j]) * g[i][j]
                    for i in range(s.start, s.stop) for j in range(s.start, s.stop)
                    if lam[i] and lam[j]), Fraction(0))

    @cached_property
    def reflection_matrices(self) -> tuple[np.ndarray, ...]:
        """Integer matrices of the simple reflections acting on Dynkin coordinates."""
        n = self.rank
        out = []
        for i in range(n):
            m = np.eye(n, dtype=np.int64)
            alpha = np.array([self.cartan[r][i] for r in range(n)], dtype=np.int64)
            m[:, i] -= alpha
            out.append(m)
        return tuple(out)

    def __str__(self) -> str:
        return "x".join(str(c) for c in self.components)


def build_root_system(components: Iterable[CartanType | str]) -> RootSystem:
    cts = tuple(c if isinstance(c, CartanType) else CartanType.parse(c) for c in components)
    return RootSystem(cts)


def reflect(rs: RootSystem, i: int, lam: Sequence[int]) -> Weight:
    """s_i(lam) = lam - lam_i alpha_i  (i is 1-based)."""
    rs._check_index(i)
    c = lam[i - 1]
    if not c:
        return tuple(lam)
    return tuple(x - c * rs.cartan[r][i - 1] for r, x in enumerate(lam))


def orbit_array(rs: RootSystem, chi: Sequence[int], cap: int = DEFAULT_ORBIT_CAP) -> np.ndarray:
    """W-orbit of chi as an (orbit size, rank) int64 array, rows sorted lexicographically.

    Walks the orbit from its dominant element upward in length: a reflection
    s_i applied to a weight with positive i-th coordinate moves one level
    down the Bruhat order of W/W_chi, so each level can be deduplicated on its own.
    """
    n = rs.rank
    dom = dominant_representative(rs, chi)
    level = np.array([dom], dtype=np.int64)
    cartan = np.array(rs.cartan, dtype=np.int64)
    levels = [level]
    total = 1
    while True:
        parts = []
        for i in range(n):
            sel = level[level[:, i] > 0]
            if len(sel):
                parts.append(sel - np.outer(sel[:, i], cartan[:, i]))
        if not parts:
            break
        level = np.unique(np.concatenate(parts), axis=0)
        total += len(level)
        if total > cap:
            raise ResourceCapError(f"orbit of {tuple(chi)} exceeds the cap of {cap} weights")
        levels.append(level)
    out = np.concatenate(levels)
    order = np.lexsort(out.T[::-1])
    return out[order]


def dominant_representative(rs: RootSystem, chi: Sequence[int]) -> Weight:
    lam = list(chi)
    cartan = rs.cartan
    while True:
        i = next((k for k, x in enumerate(lam) if x < 0), None)
        if i is None:
            return tuple(lam)
        c = lam[i]
        lam = [x - c * cartan[r][i] for r, x in enumerate(lam)]


def weyl_orbit(rs: RootSystem, chi: Sequence[int], cap: int = DEFAULT_ORBIT_CAP) -> list[Weight]:
    """The orbit W(chi), lexicographically ordered."""
    return [tuple(int(x) for x in row) for row in orbit_array(rs, chi, cap)]


def weyl_orbit_bfs(rs: RootSystem, chi: Sequence[int], cap: int = DEFAULT_ORBIT_CAP) -> list[Weight]:
    """Plain breadth-first closure under all simple reflections (reference path)."""
    start = tuple(chi)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for lam in frontier:
            for i in range(1, rs.rank + 1):
                mu = reflect(rs, i, lam)
                if mu not in seen:
                    seen.add(mu)
                    nxt.append(mu)
                    if len(seen) > cap:
                        raise ResourceCapError(f"orbit of {start} exceeds the cap of {cap} weights")
        frontier = nxt
    return sorted(seen)


def positive_roots(rs: RootSystem, k: int | None = None) -> list[Weight]:
    """Positive roots (of component k, or all), as weights."""
    comps = range(len(rs.components)) if k is None else [k]
    out = set()
    for c in comps:
        s = rs.component_slice(c)
        for i in range(s.start, s.stop):
            for root in weyl_orbit(rs, rs.simple_root(i + 1)):
                coeffs = root_coefficients(rs, root)
                if all(x >= 0 for x in coeffs):
                    out.add(root)
    return sorted(out)


def root_coefficients(rs: RootSystem, lam: Sequence[int]) -> tuple[Fraction, ...]:
    """Coordinates of lam in the basis of simple roots."""
    ainv = _inverse([[Fraction(x) for x in row] for row in rs.cartan])
    return tuple(sum((ainv[i][j] * lam[j] for j in range(rs.rank)), Fraction(0))
                 for i in range(rs.rank))


def highest_root(rs: RootSystem, k: int) -> Weight:
    """The highest root of component k (always a long root)."""
    s = rs.component_slice(k)
    i = next(i for i in range(s.start, s.stop) if rs.long_roots[i])
    return dominant_representative(rs, rs.simple_root(i + 1))


def coroot_functional(rs: RootSystem, root: Sequence[int]) -> Weight:
    """Integer row c with <lam, root^vee> = sum_i c_i lam_i."""
    coeffs = root_coefficients(rs, root)
    norm = rs.form(root, root)
    # root^vee = sum_i coeffs_i |alpha_i|^2 / |root|^2  alpha_i^vee
    row = [coeffs[i] * rs.gram[i][i] / norm for i in range(rs.rank)]
    if any(x.denominator != 1 for x in row):
        raise RootSystemError(f"{tuple(root)} is not a root")
    return tuple(int(x) for x in row)


def long_coroot(rs: RootSystem, component: int) -> Weight:
    """Pairing functional with the coroot of the highest root of a component."""
    if not 0 <= component < len(rs.components):
        raise IndexError(f"component {component} out of range")
    return coroot_functional(rs, highest_root(rs, component))


def enumerate_dominant(rs: RootSystem, lattice, bound: int) -> list[Weight]:
    """Nonzero dominant weights of the lattice with all coordinates in [0, bound]."""
    if bound < 1:
        raise ValueError("bound must be at least 1")
    return [w for w in itertools.product(range(bound + 1), repeat=rs.rank)
            if any(w) and lattice.member(w)]


def subsystem_weyl_order(rs: RootSystem, nodes: Iterable[int]) -> int:
    """Order of the parabolic subgroup generated by the 0-based simple reflections `nodes`."""
    nodes = sorted(set(nodes))
    out = 1
    for comp in _connected_components(rs, nodes):
        out *= classify_subdiagram(rs, comp).weyl_order
    return out


def _connected_components(rs: RootSystem, nodes: Sequence[int]) -> list[list[int]]:
    left = set(nodes)
    out = []
    while left:
        start = min(left)
        comp, stack = [], [start]
        left.discard(start)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in list(left):
                if rs.cartan[i][j]:
                    left.discard(j)
                    stack.append(j)
        out.append(sorted(comp))
    return out


def classify_subdiagram(rs: RootSystem, nodes: Sequence[int]) -> CartanType:
    """Cartan type of a connected subdiagram on the given 0-based nodes."""
    a = rs.cartan
    r = len(nodes)
    if r == 1:
        return CartanType("A", 1)
    bonds = {}
    for x, y in itertools.combinations(nodes, 2):
        if a[x][y]:
            bonds[(x, y)] = a[x][y] * a[y][x]
    mult = max(bonds.values())
    if mult == 3:
        return CartanType("G", 2)
    if mult == 2:
        norms = [rs.gram[i][i] for i in nodes]
        top = max(norms)
        if r == 4 and sum(1 for x in norms if x < top) == 2:
            # F4 has the double bond in the middle: two short roots, two long
            ends = [i for i in nodes if sum(1 for j in nodes if j != i and a[i][j]) == 1]
            if not any(bonds.get(tuple(sorted((e, j))), 0) == 2 for e in ends for j in nodes):
                return CartanType("F", 4)
        shorts = sum(1 for x in norms if x < top)
        return CartanType("B", r) if shorts == 1 else CartanType("C", r)
    degree = {i: sum(1 for j in nodes if j != i and a[i][j]) for i in nodes}
    branch = [i for i, d in degree.items() if d == 3]
    if not branch:
        return CartanType("A", r)
    # arm lengths from the branch node
    centre = branch[0]
    arms = []
    for nb in (j for j in nodes if j != centre and a[centre][j]):
        length, prev, cur = 1, centre, nb
        while True:
            nxt = [j for j in nodes if j not in (prev, cur) and a[cur][j]]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[:2] == [1, 1]:
        return CartanType("D", r)
    return CartanType("E", r)


def orbit_size(rs: RootSystem, lam: Sequence[int]) -> int:
    """|W lam| = |W| / |W_lam| for a dominant weight lam."""
    if any(x < 0 for x in lam):
        lam = dominant_representative(rs, lam)
    total = 1
    for w in rs.weyl_orders:
        total *= w
    return total // subsystem_weyl_order(rs, [i for i, x in enumerate(lam) if x == 0])


# Orthonormal-basis conversion tables for the classical families, used to
# compare against data written in the e_1..e_n basis.

def e_basis_to_dynkin(ct: CartanType, vec: Sequence[Fraction | int]) -> Weight:
    """Dynkin coordinates of sum vec_k e_k for a single classical component."""
    n = ct.rank
    v = [Fraction(x) for x in vec]
    fam = ct.family
    if fam == "A":
        # e_1..e_{n+1}, weights modulo the sum e_1 + ... + e_{n+1}
        if len(v) != n + 1:
            raise ValueError("type A uses n+1 coordinates")
        out = [v[i] - v[i + 1] for i in range(n)]
    elif fam == "B":
        out = [v[i] - v[i + 1] for i in range(n - 1)] + [2 * v[n - 1]]
    elif fam == "C":
        out = [v[i] - v[i + 1] for i in range(n - 1)] + [v[n - 1]]
    elif fam == "D":
        out = [v[i] - v[i + 1] for i in range(n - 1)] + [v[n - 2] + v[n - 1]]
    else:
        raise ValueError(f"no e-basis table for {ct}")
    if any(x.denominator != 1 for x in out):
        raise ValueError(f"{tuple(vec)} is not a weight of {ct}")
    return tuple(int(x) for x in out)


def dynkin_to_e_basis(ct: CartanType, lam: Sequence[int]) -> tuple[Fraction, ...]:
    """Inverse of e_basis_to_dynkin (type A representative with zero sum)."""
    n = ct.rank
    fam = ct.family
    if fam == "A":
        # omega_i = e_1 + ... + e_i - i/(n+1) (e_1 + ... + e_{n+1})
        out = [Fraction(0)] * (n + 1)
        for i, c in enumerate(lam, start=1):
            for k in range(n + 1):
                out[k] += c * ((1 if k < i else 0) - Fraction(i, n + 1))
        return tuple(out)
    out = [Fraction(0)] * n
    for i, c in enumerate(lam, start=1):
        if fam in "BD" and ((fam == "B" and i == n) or (fam == "D" and i >= n - 1)):
            half = [Fraction(1, 2)] * n
            if fam == "D" and i == n - 1:
                half[n - 1] = Fraction(-1, 2)
            vec = half
        else:
            vec = [Fraction(1) if k < i else Fraction(0) for k in range(n)]
        for k in range(n):
            out[k] += c * vec[k]
    return tuple(out)
