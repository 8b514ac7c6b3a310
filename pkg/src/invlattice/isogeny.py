"""Character lattices between the root lattice and the weight lattice.

Group specs follow ``<Family><rank>[:<selector>]`` joined by ``x``, for
example ``D4:adj``, ``A7:mu2``, ``B3xA2:adj`` or ``A1xA1:file=so4.json``.
An explicit lattice file holds a JSON integer matrix listed column by
column (each inner list is one generator in Dynkin coordinates).
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Sequence

from .rootsystem import CartanType, RootSystem, Weight, build_root_system
from .zlinalg import Lattice, snf


class SpecError(ValueError):
    """Malformed or inconsistent group spec."""


_SELECTOR = re.compile(r"^(sc|adj|so|hs|mu(\d+))$")
_COMPONENT = re.compile(r"^([A-Ga-g])(\d+)(?::(.+))?$")


@dataclass(frozen=True)
class ComponentSpec:
    cartan: CartanType
    selector: str = "sc"

    def __str__(self) -> str:
        return f"{self.cartan}:{self.selector}"


@dataclass(frozen=True)
class GroupSpec:
    components: tuple[ComponentSpec, ...]
    # explicit generators (Dynkin coordinates) overriding per-component selectors
    generators: tuple[Weight, ...] | None = None
    label: str = ""

    @classmethod
    def parse(cls, text: str, base_dir: Path | None = None) -> "GroupSpec":
        raw = text.strip()
        if not raw:
            raise SpecError("empty group spec")
        generators = None
        body = raw
        if ":file=" in raw:
            body, path = raw.split(":file=", 1)
            p = Path(path)
            if base_dir is not None and not p.is_absolute():
                p = base_dir / p
            generators = _read_lattice_file(p)
        comps = []
        for part in body.split("x"):
            m = _COMPONENT.match(part.strip())
            if not m:
                raise SpecError(f"cannot parse component {part!r} of {raw!r}")
            try:
                ct = CartanType(m.group(1).upper(), int(m.group(2)))
            except ValueError as exc:
                raise SpecError(str(exc)) from None
            sel = m.group(3) or "sc"
            if generators is not None and m.group(3):
                raise SpecError("an explicit lattice file replaces per-component selectors")
            comps.append(_normalize(ct, sel))
        spec = cls(tuple(comps), generators, raw)
        if generators is not None:
            rank = sum(c.cartan.rank for c in spec.components)
            if any(len(g) != rank for g in generators):
                raise SpecError(f"lattice generators must have length {rank}")
        return spec

    @classmethod
    def simple(cls, family: str, rank: int, selector: str = "sc") -> "GroupSpec":
        return cls.parse(f"{family}{rank}:{selector}")

    @property
    def is_simple(self) -> bool:
        return len(self.components) == 1

    def root_system(self) -> RootSystem:
        return build_root_system([c.cartan for c in self.components])

    def __str__(self) -> str:
        if self.generators is not None:
            return self.label or "x".join(str(c.cartan) for c in self.components) + ":explicit"
        return "x".join(str(c) for c in self.components)


def _read_lattice_file(path: Path) -> tuple[Weight, ...]:
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise SpecError(f"cannot read lattice file {path}: {exc}") from None
    if not isinstance(data, list) or not data or not all(
            isinstance(c, list) and all(isinstance(x, int) for x in c) for c in data):
        raise SpecError(f"{path}: expected a JSON list of integer columns")
    return tuple(tuple(c) for c in data)


def _normalize(ct: CartanType, sel: str) -> ComponentSpec:
    m = _SELECTOR.match(sel)
    if not m:
        raise SpecError(f"unknown isogeny selector {sel!r}")
    fam, n = ct.family, ct.rank
    if fam == "D" and n == 3:
        # D3 = A3: spin6 = SL4, SO6 = SL4/mu2, PSO6 = PGL4
        alias = {"sc": "sc", "so": "mu2", "adj": "adj"}
        if sel not in alias:
            raise SpecError("D3 accepts sc, so or adj only")
        return _normalize(CartanType("A", 3), alias[sel])
    if m.group(2) is not None:
        k = int(m.group(2))
        if fam != "A":
            raise SpecError("mu(m) selectors apply to type A only")
        if k < 1 or (n + 1) % k:
            raise SpecError(f"mu{k} needs {k} to divide {n + 1}")
        sel = "sc" if k == 1 else "adj" if k == n + 1 else sel
    elif sel == "so" and fam not in "BD":
        raise SpecError("so applies to types B and D")
    elif sel == "hs" and (fam != "D" or n % 2):
        raise SpecError("hs applies to type D of even rank")
    return ComponentSpec(ct, sel)


def _component_generators(rs: RootSystem, k: int, sel: str) -> list[list[int]]:
    """Generators of the character lattice of component k, embedded in Z^rank."""
    s = rs.component_slice(k)
    n = rs.rank
    ct = rs.components[k]
    roots = [list(rs.simple_root(i + 1)) for i in range(s.start, s.stop)]

    def omega(i: int) -> list[int]:
        return list(rs.fundamental_weight(s.start + i))

    if sel == "sc":
        return [omega(i + 1) for i in range(ct.rank)]
    if sel == "adj":
        return roots
    if sel == "so":
        return roots + [omega(1)]
    if sel == "hs":
        return roots + [omega(ct.rank)]
    m = int(sel[2:])
    # A_r: all lambda with sum_i i * lambda_i = 0 mod m
    gens = []
    first = [0] * n
    first[s.start] = m
    gens.append(first)
    for i in range(1, ct.rank):
        g = [0] * n
        g[s.start + i] = 1
        g[s.start] = -(i + 1)
        gens.append(g)
    return gens


@dataclass(frozen=True)
class CharacterLattice:
    """T* as a full-rank sublattice of the weight lattice (Dynkin coordinates)."""

    rs: RootSystem
    lattice: Lattice
    label: str = ""

    def __post_init__(self) -> None:
        if self.lattice.dim != self.rs.rank or not self.lattice.is_full_rank:
            raise SpecError("a character lattice must have full rank")
        for i in range(1, self.rs.rank + 1):
            if self.rs.simple_root(i) not in self.lattice:
                raise SpecError(f"simple root {i} is not in the character lattice")

    @property
    def index(self) -> int:
        return self.lattice.index()

    @property
    def basis(self) -> list[list[int]]:
        """Basis vectors of T* (HNF rows), each in Dynkin coordinates."""
        return [list(r) for r in self.lattice.rows]

    def basis_matrix(self) -> list[list[int]]:
        """n x n matrix with the basis vectors as columns."""
        return self.lattice.matrix()

    def member(self, lam: Sequence[int]) -> bool:
        return tuple(lam) in self.lattice

    @cached_property
    def quotient(self) -> "FundamentalQuotient":
        return quotient_structure(self.rs, self)


def lattice_for(spec: GroupSpec, rs: RootSystem | None = None) -> CharacterLattice:
    rs = rs or spec.root_system()
    if spec.generators is not None:
        gens = [list(g) for g in spec.generators]
    else:
        gens = []
        for k, comp in enumerate(spec.components):
            gens.extend(_component_generators(rs, k, comp.selector))
    lat = Lattice(rs.rank, gens)
    if not lat.is_full_rank:
        raise SpecError(f"{spec}: generators do not span a full-rank lattice")
    try:
        return CharacterLattice(rs, lat, str(spec))
    except SpecError as exc:
        raise SpecError(f"{spec}: {exc}") from None


def member(lattice: CharacterLattice, lam: Sequence[int]) -> bool:
    return lattice.member(lam)


@dataclass(frozen=True)
class FundamentalQuotient:
    """C* = Lambda / T* with an explicit projection and group ring structure."""

    factors: tuple[int, ...]
    # projection: lambda -> ((row_k . lambda) mod factors[k])_k
    forms: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        out = 1
        for d in self.factors:
            out *= d
        return out

    @property
    def is_trivial(self) -> bool:
        return not self.factors

    def project(self, lam: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(f * x for f, x in zip(row, lam)) % d
                     for row, d in zip(self.forms, self.factors))

    def index_of(self, g: Sequence[int]) -> int:
        """Mixed-radix position of a group element (last factor fastest)."""
        out = 0
        for x, d in zip(g, self.factors):
            out = out * d + x % d
        return out

    @cached_property
    def elements(self) -> tuple[tuple[int, ...], ...]:
        out = [()]
        for d in self.factors:
            out = [g + (x,) for g in out for x in range(d)]
        return tuple(out)

    def add(self, g: Sequence[int], h: Sequence[int]) -> tuple[int, ...]:
        return tuple((a + b) % d for a, b, d in zip(g, h, self.factors))

    @cached_property
    def multiplication_table(self) -> tuple[tuple[int, ...], ...]:
        """table[i][j] = index of elements[i] + elements[j]."""
        els = self.elements
        return tuple(tuple(self.index_of(self.add(g, h)) for h in els) for g in els)

    def group_ring_image(self, terms: Sequence[tuple[int, Sequence[int]]]) -> list[int]:
        """f(sum a_j e^{lambda_j}) as a coefficient vector on the elements of C*."""
        out = [0] * self.order
        for a, lam in terms:
            out[self.index_of(self.project(lam))] += a
        return out

    def ring_mul(self, u: Sequence[int], v: Sequence[int]) -> list[int]:
        out = [0] * self.order
        table = self.multiplication_table
        for i, a in enumerate(u):
            if a:
                for j, b in enumerate(v):
                    if b:
                        out[table[i][j]] += a * b
        return out


def quotient_structure(rs: RootSystem, lattice: CharacterLattice) -> FundamentalQuotient:
    b = lattice.basis_matrix()
    d, u, _ = snf(b, want_u=True, want_v=False)
    factors, forms = [], []
    for k in range(rs.rank):
        if d[k][k] > 1:
            factors.append(d[k][k])
            forms.append(tuple(x % d[k][k] for x in u[k]))
    return FundamentalQuotient(tuple(factors), tuple(forms))
