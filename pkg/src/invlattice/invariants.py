"""Degree-two characteristic classes of a split semisimple group.

All subgroups of Sym^2 live in Sym^2(Lambda) with coordinates over the
monomials omega_i omega_j (see ``sym2``).  For each simple component k the
invariant form q_k is primitive there, and every W-invariant lattice is
also reported in "q-coordinates", i.e. as integer combinations of the q_k.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from math import gcd
from typing import Sequence

import numpy as np

from . import sym2
from .isogeny import CharacterLattice, GroupSpec, lattice_for
from .rootsystem import (DEFAULT_ORBIT_CAP, RootSystem, long_coroot, orbit_array,
                         subsystem_weyl_order)
from .truncring import TruncRing
from .truncring import raw_degree2
from .zlinalg import (AbelianQuotient, Lattice, intersect, inverse_unimodular, kernel,
                      kernel_mod, quotient, snf)

Terms = Sequence[tuple[int, Sequence[int]]]


class InvariantError(ArithmeticError):
    """An internal consistency check failed."""


# ---------------------------------------------------------------- c2 and N

def _check_ideal_square(terms: Terms) -> int:
    if not terms:
        return 0
    n = len(terms[0][1])
    if sum(a for a, _ in terms) != 0:
        raise ValueError("c2 formula needs sum a_j = 0 (element of the augmentation ideal)")
    if any(sum(a * lam[i] for a, lam in terms) for i in range(n)):
        raise ValueError("c2 formula needs sum a_j lambda_j = 0 (element of I^2)")
    return n


def c2(terms: Terms, rank: int | None = None) -> list[int]:
    """c2(sum a_j e^{lambda_j}) = -1/2 sum a_j lambda_j^2 for an element of I^2."""
    n = _check_ideal_square(terms)
    if not terms:
        return [0] * sym2.dim(rank or 0)
    acc = [0] * sym2.dim(n)
    for a, lam in terms:
        if a:
            for k, x in enumerate(sym2.square(lam)):
                acc[k] += a * x
    if any(x % 2 for x in acc):
        raise InvariantError("c2 is not integral")
    return [-(x // 2) for x in acc]


def n_value(terms: Terms, coroot: Sequence[int]) -> int:
    """N(sum a_j e^{lambda_j}) = 1/2 sum a_j <lambda_j, alpha^vee>^2."""
    _check_ideal_square(terms)
    total = sum(a * sum(c * x for c, x in zip(coroot, lam)) ** 2 for a, lam in terms)
    if total % 2:
        raise InvariantError("N-value is a half-integer")
    return total // 2


def orbit_terms(rs: RootSystem, chi: Sequence[int], cap: int = DEFAULT_ORBIT_CAP
                ) -> list[tuple[int, tuple[int, ...]]]:
    """sum over W(chi) of (e^lambda - 1) as a term list."""
    orb = orbit_array(rs, chi, cap)
    out = [(1, tuple(int(x) for x in row)) for row in orb]
    out.append((-len(orb), (0,) * rs.rank))
    return out


def orbit_c2(rs: RootSystem, chi: Sequence[int], cap: int = DEFAULT_ORBIT_CAP) -> list[int]:
    """c2 of the orbit element of chi, summing lambda^2 over the enumerated orbit."""
    orb = orbit_array(rs, chi, cap)
    gram = (orb.T @ orb).tolist()
    acc = [gram[i][j] * (1 if i == j else 2) for i, j in sym2.pairs(rs.rank)]
    if any(x % 2 for x in acc):
        raise InvariantError("c2 is not integral")
    return [-(int(x) // 2) for x in acc]


# ---------------------------------------------------------------- q

def q_generator(rs: RootSystem, component: int) -> list[int]:
    """The W-invariant form of a simple component with value 1 on long coroots."""
    s = rs.component_slice(component)
    b = rs.gram
    out = [0] * sym2.dim(rs.rank)
    pidx = sym2.pair_index(rs.rank)
    for i in range(s.start, s.stop):
        for j in range(i, s.stop):
            if i == j:
                v = Fraction(2) / b[i][i]
            else:
                v = 4 * b[i][j] / (b[i][i] * b[j][j])
            if v.denominator != 1:
                raise InvariantError("q is not integral")
            out[pidx[(i, j)]] = int(v)
    if sym2.evaluate(out, long_coroot(rs, component)) != 1:
        raise InvariantError("q is not normalized on the long coroot")
    return out


def q_basis(rs: RootSystem) -> list[list[int]]:
    return [q_generator(rs, k) for k in range(len(rs.components))]


def q_coordinates(rs: RootSystem, v: Sequence[int]) -> list[int] | None:
    """Coefficients of v on the q_k, or None if v is not a combination of them."""
    qs = q_basis(rs)
    pidx = sym2.pair_index(rs.rank)
    coeffs = []
    for k, q in enumerate(qs):
        s = rs.component_slice(k)
        i = next(i for i in range(s.start, s.stop) if rs.long_roots[i])
        coeffs.append(v[pidx[(i, i)]])  # q_k has coefficient 1 on omega_i^2 for long i
    recon = [sum(c * q[t] for c, q in zip(coeffs, qs)) for t in range(len(v))]
    return coeffs if recon == list(v) else None


def lattice_q_multiples(rs: RootSystem, lat: Lattice) -> list[list[int]] | None:
    """The lattice in q-coordinates, as HNF rows; None if it leaves span(q_k)."""
    rows = []
    for r in lat.rows:
        c = q_coordinates(rs, r)
        if c is None:
            return None
        rows.append(c)
    return [list(r) for r in Lattice(len(rs.components), rows).rows]


# ---------------------------------------------------------------- Sym^2(T*)^W

def sym2_of_lattice(lattice: CharacterLattice) -> Lattice:
    """Sym^2(T*) inside Sym^2(Lambda)."""
    basis = lattice.basis
    gens = [sym2.product(basis[k], basis[l]) for k, l in sym2.pairs(len(basis))]
    return Lattice(sym2.dim(lattice.rs.rank), gens)


def sym2_w_invariants(rs: RootSystem, lattice: CharacterLattice) -> Lattice:
    """Sym^2(T*)^W: common kernel of s_i - id, intersected with Sym^2(T*)."""
    d = sym2.dim(rs.rank)
    stacked = []
    for m in rs.reflection_matrices:
        s = sym2.induced_matrix(m.tolist())
        for r in range(d):
            stacked.append([s[r][c] - (r == c) for c in range(d)])
    inv = kernel(stacked, d)
    return intersect(inv, sym2_of_lattice(lattice))


# ---------------------------------------------------------------- Dec

@dataclass(frozen=True)
class _ComponentData:
    start: int
    stop: int
    rank: int
    # (omega_i, omega_j) scaled to integers by `den`
    gram: np.ndarray
    den: int


def _component_data(rs: RootSystem) -> list[_ComponentData]:
    out = []
    for k, ct in enumerate(rs.components):
        s = rs.component_slice(k)
        g = [[rs.weight_gram[i][j] for j in range(s.start, s.stop)] for i in range(s.start, s.stop)]
        den = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for row in g for x in row), 1)
        arr = np.array([[int(x * den) for x in row] for row in g], dtype=np.int64)
        out.append(_ComponentData(s.start, s.stop, ct.rank, arr, den))
    return out


def _stabilizer_orders(rs: RootSystem) -> np.ndarray:
    """|W_J| for every subset J of simple reflections, indexed by bitmask."""
    n = rs.rank
    out = np.zeros(1 << n, dtype=object)
    for mask in range(1 << n):
        out[mask] = subsystem_weyl_order(rs, [i for i in range(n) if mask >> i & 1])
    return out


def dec_generators(rs: RootSystem, lattice: CharacterLattice, bound: int = 4,
                   chunk: int = 1 << 20) -> list[tuple[int, ...]]:
    """q-coordinate vectors spanning c2(orbit sums of dominant mu in T*), mu_i <= bound.

    Uses c2 = -|W mu| sum_k (mu_k, mu_k) / rank_k q_k, evaluated in bulk.  For a
    simple type the span is returned as its single generator.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    n = rs.rank
    quo = lattice.quotient
    forms = np.array(quo.forms, dtype=np.int64).reshape(len(quo.factors), n)
    mods = np.array(quo.factors, dtype=np.int64)
    stab = _stabilizer_orders(rs)
    w_total = 1
    for w in rs.weyl_orders:
        w_total *= w
    sizes = [w_total // s for s in stab]
    comps = _component_data(rs)
    top_norm = max(int(np.abs(c.gram).sum()) for c in comps) * bound * bound
    exact = max(sizes) * top_norm >= 2**62
    orbit_sizes = np.array(sizes, dtype=object if exact else np.int64)
    found: set[tuple[int, ...]] = set()
    g = 0
    # split mu = (head, tail) so each block is a broadcast of two small grids
    h = n // 2
    heads = _grid(h, bound)
    tails = _grid(n - h, bound)
    fh, ft = heads @ forms[:, :h].T, tails @ forms[:, h:].T
    mh = ((heads == 0) * (1 << np.arange(h, dtype=np.int64))).sum(axis=1)
    mt = ((tails == 0) * (1 << np.arange(h, n, dtype=np.int64))).sum(axis=1)
    full_grams = []
    for c in comps:
        big = np.zeros((n, n), dtype=np.int64)
        big[c.start:c.stop, c.start:c.stop] = c.gram
        full_grams.append((np.einsum("ri,ij,rj->r", heads, big[:h, :h], heads),
                           heads @ (2 * big[:h, h:]),
                           np.einsum("ri,ij,rj->r", tails, big[h:, h:], tails)))
    step = max(1, chunk // max(1, len(tails)))
    for lo in range(0, len(heads), step):
        sl = slice(lo, lo + step)
        keep = np.ones((len(heads[sl]), len(tails)), dtype=bool)
        if len(mods):
            keep &= ((fh[sl, None, :] + ft[None, :, :]) % mods == 0).all(axis=2)
        if lo == 0:
            keep[0, 0] = False  # mu = 0
        if not keep.any():
            continue
        size = orbit_sizes[(mh[sl, None] | mt[None, :])[keep]]
        cols = []
        for c, (nh, cross, nt) in zip(comps, full_grams):
            norm = (nh[sl, None] + cross[sl] @ tails.T + nt[None, :])[keep]
            val = size * (norm.astype(object) if exact else norm)
            if (val % (c.den * c.rank) != 0).any():
                raise InvariantError("c2 of an orbit sum is not integral")
            cols.append(-(val // (c.den * c.rank)))
        if len(comps) == 1:
            g = gcd(g, int(np.gcd.reduce(np.abs(cols[0]))))
        else:
            for row in np.unique(np.column_stack(cols), axis=0):
                found.add(tuple(int(x) for x in row))
    if len(comps) == 1:
        return [(g,)] if g else []
    return sorted(found)


def _grid(k: int, bound: int) -> np.ndarray:
    """All points of {0..bound}^k, lexicographic, as an int64 array."""
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64)
    axes = np.meshgrid(*[np.arange(bound + 1, dtype=np.int64)] * k, indexing="ij")
    return np.stack([a.ravel() for a in axes], axis=1)


def dec_group(rs: RootSystem, lattice: CharacterLattice, bound: int = 4,
              method: str = "closed", cap: int = DEFAULT_ORBIT_CAP) -> Lattice:
    """Span of c2 over orbit sums of dominant mu in T*, 0 <= mu_i <= bound."""
    if bound < 1:
        raise ValueError("bound must be at least 1")
    d = sym2.dim(rs.rank)
    if method == "closed":
        qs = q_basis(rs)
        gens = [[sum(c * q[t] for c, q in zip(vec, qs)) for t in range(d)]
                for vec in dec_generators(rs, lattice, bound)]
    elif method == "orbit":
        gens = [orbit_c2(rs, mu, cap) for mu in itertools.product(range(bound + 1), repeat=rs.rank)
                if any(mu) and lattice.member(mu)]
    else:
        raise ValueError(f"unknown method {method!r}")
    return Lattice(d, gens)


# ---------------------------------------------------------------- truncated SDec bound

def adapted_basis(lattice: CharacterLattice) -> tuple[list[list[int]], list[int]]:
    """A basis b'_k of Lambda (columns of P) and d_k with T* = span(d_k b'_k)."""
    b = lattice.basis_matrix()
    d, u, _ = snf(b, want_u=True, want_v=False)
    p = inverse_unimodular(u)
    return p, [d[k][k] for k in range(len(b))]


def _subring_constraints(divisors: Sequence[int], N: int) -> tuple[list[list[int]], list[int], TruncRing]:
    """Membership test for span{prod_k ((1+x_k)^{d_k} - 1)^{a_k}} in a ring on len(divisors) variables."""
    ring = TruncRing(len(divisors), N)
    gens = []
    for a in ring.monomials:
        v = ring.one()
        for k, e in enumerate(a):
            if e:
                g = ring.exp_embed([divisors[k] if j == k else 0 for j in range(len(divisors))]) - 1
                v = v * g ** e
        gens.append(v.vector())
    forms, mods = Lattice(ring.rank, gens).membership_constraints()
    return forms, mods, ring


def over_sdec(rs: RootSystem, lattice: CharacterLattice, N: int = 5,
              cap: int = DEFAULT_ORBIT_CAP, ring: TruncRing | None = None,
              generators: Sequence | None = None) -> Lattice:
    """c2 of (ideal generated by the orbit elements + I^N) meet Z[T*], computed in R_N.

    Contains SDec(G).  ``generators`` may override the weights whose orbit
    elements generate the ideal (fundamental weights by default).
    """
    if N < 3:
        raise ValueError("truncation order must be at least 3")
    n = rs.rank
    p, divs = adapted_basis(lattice)
    ring = ring or TruncRing(n, N, p)
    gens_w = generators if generators is not None else [rs.fundamental_weight(i) for i in range(1, n + 1)]
    ehat = [ring.orbit_element(rs, w, cap) for w in gens_w]
    # the ideal span: monomials of degree <= N-3 times each orbit element
    span = []
    for a in ring.monomials:
        if sum(a) > N - 3:
            break
        m = ring.monomial(a)
        for e in ehat:
            v = (m * e).vector()
            if any(v):
                span.append(v)
    if not span:
        return Lattice(sym2.dim(n))
    kset = [k for k in range(n) if divs[k] > 1]
    fset = [k for k in range(n) if divs[k] == 1]
    cols, mods = [], []
    if kset:
        cache: dict[int, tuple] = {}
        fring = TruncRing(len(fset), N)
        for af in fring.monomials:
            rest = N - sum(af)
            if rest < 2:
                continue  # only the constant K-monomial survives: no condition
            if rest not in cache:
                cache[rest] = _subring_constraints([divs[k] for k in kset], rest)
            forms, fmods, kring = cache[rest]
            for form, mod in zip(forms, fmods):
                col = [0] * len(span)
                for t, coef in enumerate(form):
                    if not coef:
                        continue
                    a = [0] * n
                    for k, e in zip(fset, af):
                        a[k] = e
                    for k, e in zip(kset, kring.monomials[t]):
                        a[k] = e
                    pos = ring.index[tuple(a)]
                    for g, v in enumerate(span):
                        if v[pos]:
                            col[g] += coef * v[pos]
                col = [x % mod for x in col]
                if any(col):
                    cols.append(col)
                    mods.append(mod)
    z = kernel_mod(cols, mods, len(span))
    deg = ring.degrees
    out = []
    for zz in z:
        vec = [sum(c * v[t] for c, v in zip(zz, span) if c) if deg[t] <= 2 else 0
               for t in range(ring.rank)]
        if any(vec[t] for t in range(ring.rank) if deg[t] < 2):
            raise InvariantError("intersection element has a nonzero low-degree part")
        out.append([-x for x in raw_degree2(ring, vec)])
    return Lattice(sym2.dim(n), out)


# ---------------------------------------------------------------- f-homomorphism bound

def admissible_multiplicities(rs: RootSystem, lattice: CharacterLattice,
                              cap: int = DEFAULT_ORBIT_CAP,
                              generators: Sequence | None = None) -> Lattice:
    """The tuples (n_i) such that sum g_i f(e_i) = 0 for some g_i in Z[C*] with aug(g_i) = n_i."""
    quo = lattice.quotient
    gens_w = generators if generators is not None else [rs.fundamental_weight(i) for i in range(1, rs.rank + 1)]
    r = len(gens_w)
    if quo.is_trivial:
        return Lattice.full(r)
    c = quo.order
    images = []
    for w in gens_w:
        images.append(quo.group_ring_image(orbit_terms(rs, w, cap)))
    # unknowns: g_i[s] for i < r, s < c;  equation rows indexed by t in C*
    table = quo.multiplication_table
    mat = [[0] * (r * c) for _ in range(c)]
    for i, f in enumerate(images):
        for s in range(c):
            for u, coef in enumerate(f):
                if coef:
                    mat[table[s][u]][i * c + s] += coef
    ker = kernel(mat, r * c)
    aug = [[sum(row[i * c:(i + 1) * c]) for i in range(r)] for row in ker.rows]
    return Lattice(r, aug)


def f_bound(rs: RootSystem, lattice: CharacterLattice, cap: int = DEFAULT_ORBIT_CAP) -> Lattice:
    """span{sum n_i c2(e_i) : n admissible}, a second lattice containing SDec(G)."""
    n = rs.rank
    ns = admissible_multiplicities(rs, lattice, cap)
    c2s = [orbit_c2(rs, rs.fundamental_weight(i), cap) for i in range(1, n + 1)]
    gens = [[sum(k * v[t] for k, v in zip(row, c2s)) for t in range(sym2.dim(n))] for row in ns.rows]
    return Lattice(sym2.dim(n), gens)


# ---------------------------------------------------------------- quotients

def ind_group(rs: RootSystem, lattice: CharacterLattice, bound: int = 4) -> AbelianQuotient:
    return quotient(sym2_w_invariants(rs, lattice), dec_group(rs, lattice, bound))


def a_type_formula(n: int, m: int) -> AbelianQuotient:
    """Closed-form indecomposable group of SL_n / mu_m."""
    if m < 1 or n % m:
        raise ValueError(f"{m} does not divide {n}")
    t = n // m
    k = gcd(t, m) if t % 2 else gcd(t // 2, m)
    return AbelianQuotient.from_diagonal([k])


def a_type_formula_primary(n: int, m: int) -> AbelianQuotient:
    """The same group assembled prime by prime from the p-power cases."""
    if m < 1 or n % m:
        raise ValueError(f"{m} does not divide {n}")
    k = 1
    p = 2
    rest = m
    while rest > 1:
        if rest % p == 0:
            r = s = 0
            while rest % p == 0:
                rest //= p
            mm, nn = m, n
            while mm % p == 0:
                mm //= p
                r += 1
            while nn % p == 0:
                nn //= p
                s += 1
            e = min(r, s - r) if p != 2 else min(r, s - r - 1)
            k *= p ** max(e, 0)
        p += 1
    return AbelianQuotient.from_diagonal([k])


# ---------------------------------------------------------------- reports

@dataclass(frozen=True)
class InvariantConfig:
    trunc: int = 5
    dec_bound: int = 4
    orbit_cap: int = DEFAULT_ORBIT_CAP


@dataclass
class InvariantReport:
    spec: str
    components: list[str]
    index: int
    center: AbelianQuotient
    sym2_w: Lattice
    dec: Lattice
    over_sdec: Lattice
    f_bound: Lattice
    trunc: int
    dec_bound: int
    q_multiples: dict[str, list[list[int]] | None] = field(default_factory=dict)

    @cached_property
    def combined_bound(self) -> Lattice:
        return intersect(self.over_sdec, self.f_bound)

    @property
    def ind(self) -> AbelianQuotient:
        return quotient(self.sym2_w, self.dec)

    @property
    def sdec_equals_dec_certified(self) -> bool:
        return self.over_sdec == self.dec

    @property
    def combined_certified(self) -> bool:
        return self.combined_bound == self.dec

    @property
    def bounds_only(self) -> bool:
        return not (self.sdec_equals_dec_certified or self.combined_certified)

    @property
    def chain_ok(self) -> bool:
        return (self.dec <= self.over_sdec <= self.sym2_w and self.dec <= self.f_bound)

    def ch2_torsion(self) -> dict:
        if not self.bounds_only:
            return {"exact": self.ind}
        return {"bounds": (quotient(self.sym2_w, self.dec),
                           quotient(self.sym2_w, intersect(self.combined_bound, self.sym2_w)))}

    def to_dict(self) -> dict:
        tors = self.ch2_torsion()
        if "exact" in tors:
            ch2 = {"exact": _quot_dict(tors["exact"])}
        else:
            lo, hi = tors["bounds"]
            ch2 = {"bounds": {"by_dec": _quot_dict(lo), "by_bound": _quot_dict(hi)}}
        return {
            "spec": self.spec,
            "components": self.components,
            "index": self.index,
            "center": _quot_dict(self.center),
            "trunc": self.trunc,
            "dec_bound": self.dec_bound,
            "lattices": {
                "sym2_w": [list(r) for r in self.sym2_w.rows],
                "dec": [list(r) for r in self.dec.rows],
                "over_sdec": [list(r) for r in self.over_sdec.rows],
                "f_bound": [list(r) for r in self.f_bound.rows],
            },
            "q_multiples": self.q_multiples,
            "ind": _quot_dict(self.ind),
            "ch2_torsion": ch2,
            "flags": {
                "sdec_equals_dec_certified": self.sdec_equals_dec_certified,
                "combined_certified": self.combined_certified,
                "bounds_only": self.bounds_only,
                "chain_ok": self.chain_ok,
            },
        }


def _quot_dict(q: AbelianQuotient) -> dict:
    return {"factors": list(q.factors), "free_rank": q.free_rank, "text": str(q)}


def compute_report(spec: GroupSpec | str, config: InvariantConfig = InvariantConfig()) -> InvariantReport:
    if isinstance(spec, str):
        spec = GroupSpec.parse(spec)
    rs = spec.root_system()
    lat = lattice_for(spec, rs)
    cap = config.orbit_cap
    w = sym2_w_invariants(rs, lat)
    dec = dec_group(rs, lat, config.dec_bound)
    over = over_sdec(rs, lat, config.trunc, cap)
    fb = f_bound(rs, lat, cap)
    rep = InvariantReport(
        spec=str(spec),
        components=[str(c) for c in rs.components],
        index=lat.index,
        center=AbelianQuotient.from_diagonal(lat.quotient.factors),
        sym2_w=w, dec=dec, over_sdec=over, f_bound=fb,
        trunc=config.trunc, dec_bound=config.dec_bound,
    )
    rep.q_multiples = {name: lattice_q_multiples(rs, l) for name, l in
                       [("sym2_w", w), ("dec", dec), ("over_sdec", over), ("f_bound", fb)]}
    return rep


def verify_simple(spec: GroupSpec | str, config: InvariantConfig = InvariantConfig()) -> InvariantReport:
    if isinstance(spec, str):
        spec = GroupSpec.parse(spec)
    if not spec.is_simple:
        raise ValueError(f"{spec} is not simple")
    return compute_report(spec, config)


def q_multiple(rs: RootSystem, lat: Lattice) -> int | None:
    """m with lat = m Z q for a simple type (0 for the zero lattice)."""
    if len(rs.components) != 1:
        return None
    rows = lattice_q_multiples(rs, lat)
    if rows is None:
        return None
    return rows[0][0] if rows else 0
