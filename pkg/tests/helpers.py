"""Independent oracles shared by the module tests and the acceptance run."""
from __future__ import annotations

import itertools
import json

import numpy as np

from invlattice import sym2
from invlattice.cli import data_path
from invlattice.exprparse import laurent_terms, parse_polynomial
from invlattice.invariants import c2
from invlattice.isogeny import GroupSpec, lattice_for
from invlattice.truncring import TruncRing, evaluate_polynomial, raw_degree2, to_sym2
from invlattice.zlinalg import Lattice

CATALOG = json.loads(data_path("catalog.json").read_text())
SIMPLE_CATALOG = [t for t in CATALOG if GroupSpec.parse(t).is_simple]
DUAL_PATH_TYPES = ["A1", "A3", "A5", "B3", "C4", "D4", "D6", "E6", "E7", "E8", "F4", "G2"]


def weight_symbols(rank: int) -> dict[str, tuple[int, ...]]:
    """w_i stands for e^{omega_i} and v_i for e^{-omega_i}."""
    out = {}
    for i in range(rank):
        unit = tuple(int(j == i) for j in range(rank))
        out[f"w{i + 1}"] = unit
        out[f"v{i + 1}"] = tuple(-x for x in unit)
    return out


def random_square_expression(rng: np.random.Generator, rank: int) -> str:
    """A product of two random augmentation-ideal elements, written for the parser."""
    names = [f"{c}{i + 1}" for c in "wv" for i in range(rank)]

    def mono() -> str:
        k = int(rng.integers(1, 4))
        return "*".join(names[int(j)] + (f"^{int(e)}" if e > 1 else "")
                        for j, e in zip(rng.integers(0, len(names), k), rng.integers(1, 3, k)))

    def aug() -> str:
        parts = [f"{int(rng.integers(1, 4))}*({mono()} - 1)" for _ in range(int(rng.integers(1, 4)))]
        return "(" + " - ".join(parts) + ")"

    return f"{aug()} * {aug()}"


def dual_path(text: str, rank: int, ring: TruncRing) -> tuple[list[int], list[int]]:
    """c2 by the explicit formula on collapsed terms and by ring evaluation."""
    symbols = weight_symbols(rank)
    poly = parse_polynomial(text)
    terms = laurent_terms(poly, symbols)
    by_formula = c2(terms, rank) if terms else [0] * sym2.dim(rank)
    by_ring = to_sym2(ring, evaluate_polynomial(ring, poly, symbols))
    return by_formula, by_ring


def brute_force_over_sdec(text: str, N: int, coeff_range: int = 4) -> Lattice:
    """Span of c2 over all sum f_i e_i (f_i with coefficients in [-r, r]) lying in Z[T*] mod I^N.

    Worked in the plain Dynkin basis; the image of Z[T*] comes from exp_embed
    over a box of T*, and only the parts of f_i of degree <= N-3 can matter.
    """
    spec = GroupSpec.parse(text)
    rs = spec.root_system()
    lat = lattice_for(spec, rs)
    n = rs.rank
    ring = TruncRing.for_root_system(rs, N)
    box = []
    for cs in itertools.product(range(-N, N + 1), repeat=n):
        mu = [sum(c * b[i] for c, b in zip(cs, lat.basis)) for i in range(n)]
        box.append(ring.exp_embed(mu).vector())
    image = Lattice(ring.rank, box)
    forms, mods = image.membership_constraints()
    ehat = [ring.orbit_element(rs, rs.fundamental_weight(i)) for i in range(1, n + 1)]
    low = [a for a in ring.monomials if sum(a) <= N - 3]
    span = np.array([(ring.monomial(a) * e).vector() for e in ehat for a in low], dtype=np.int64)
    values = range(-coeff_range, coeff_range + 1)
    combos = np.array(list(itertools.product(values, repeat=len(span))), dtype=np.int64)
    elements = combos @ span
    ok = np.ones(len(elements), dtype=bool)
    for f, m in zip(forms, mods):
        ok &= (elements @ np.array(f, dtype=np.int64)) % m == 0
    # everything below is linear, so it is enough to push a basis of the accepted combinations
    accepted = Lattice(len(span), combos[ok].tolist())
    gens = [[-x for x in raw_degree2(ring, (np.array(r, dtype=np.int64) @ span).tolist())]
            for r in accepted.rows]
    return Lattice(sym2.dim(n), gens)
