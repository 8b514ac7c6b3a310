"""Coordinates on Sym^2 of a rank-n lattice.

An element is an integer vector over the monomials ``v_i v_j`` (i <= j),
ordered lexicographically; these are polynomial coefficients, so the
square of ``sum c_i v_i`` has ``c_i^2`` on ``v_i^2`` and ``2 c_i c_j`` on
``v_i v_j``.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Sequence


@lru_cache(maxsize=None)
def pairs(n: int) -> tuple[tuple[int, int], ...]:
    return tuple((i, j) for i in range(n) for j in range(i, n))


@lru_cache(maxsize=None)
def pair_index(n: int) -> dict[tuple[int, int], int]:
    return {p: k for k, p in enumerate(pairs(n))}


def dim(n: int) -> int:
    return n * (n + 1) // 2


def product(u: Sequence, v: Sequence) -> list:
    """Coordinates of the product u * v of two linear forms."""
    n = len(u)
    out = []
    for i, j in pairs(n):
        out.append(u[i] * v[i] if i == j else u[i] * v[j] + u[j] * v[i])
    return out


def square(u: Sequence) -> list:
    return product(u, u)


def induced_matrix(m: Sequence[Sequence[int]]) -> list[list[int]]:
    """Matrix of Sym^2(m) on coordinates, where m acts on column vectors."""
    n = len(m)
    cols = [[m[r][i] for r in range(n)] for i in range(n)]
    images = [product(cols[i], cols[j]) for i, j in pairs(n)]
    return [[images[c][r] for c in range(len(images))] for r in range(len(images))]


def apply(mat: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(a * b for a, b in zip(row, v)) for row in mat]


def evaluate(v: Sequence, h: Sequence) -> object:
    """Value of the quadratic polynomial v at the point h."""
    n = len(h)
    return sum(c * h[i] * h[j] for c, (i, j) in zip(v, pairs(n)))


def change_basis(v: Sequence, p: Sequence[Sequence[int]]) -> list:
    """Re-express v, given over a basis b'_k = sum_i p[i][k] b_i, in the basis b."""
    n = len(p)
    cols = [[p[r][k] for r in range(n)] for k in range(n)]
    out = [0] * dim(n)
    for c, (k, l) in zip(v, pairs(n)):
        if c:
            for t, x in enumerate(product(cols[k], cols[l])):
                out[t] += c * x
    return out
