import itertools
import json
from math import prod

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from invlattice.isogeny import GroupSpec, SpecError, lattice_for, member, quotient_structure
from invlattice.rootsystem import enumerate_dominant

CATALOG = json.loads(
    (__import__("invlattice.cli", fromlist=["data_path"]).data_path("catalog.json")).read_text())

ADJ_INDEX = {"A1": 2, "A4": 5, "A7": 8, "B3": 2, "C4": 2, "D4": 4, "D5": 4, "E6": 3, "E7": 2,
             "E8": 1, "F4": 1, "G2": 1}


@pytest.mark.parametrize("name,index", sorted(ADJ_INDEX.items()))
def test_adjoint_index_is_cartan_determinant(name, index):
    spec = GroupSpec.parse(f"{name}:adj")
    lat = lattice_for(spec)
    assert lat.index == index
    assert quotient_structure(spec.root_system(), lat).order == index


@pytest.mark.parametrize("text", CATALOG)
def test_catalog_lattices(text):
    spec = GroupSpec.parse(text)
    rs = spec.root_system()
    lat = lattice_for(spec, rs)
    for i in range(1, rs.rank + 1):
        assert member(lat, rs.simple_root(i))
    cq = lat.quotient
    assert prod(cq.factors) == lat.index == cq.order
    # the projection kills exactly T*: basis vectors map to 0, and the sc lattice maps onto C*
    for b in lat.basis:
        assert not any(cq.project(b))
    images = {cq.project(rs.fundamental_weight(i)) for i in range(1, rs.rank + 1)}
    reached = {tuple(0 for _ in cq.factors)}
    while True:
        more = {cq.add(g, h) for g in reached for h in images} | reached
        if more == reached:
            break
        reached = more
    assert len(reached) == cq.order


@pytest.mark.parametrize("name", ["A3", "B4", "C5", "D6", "E7"])
def test_simply_connected_quotient_trivial(name):
    lat = lattice_for(GroupSpec.parse(f"{name}:sc"))
    assert lat.index == 1 and lat.quotient.is_trivial


def test_known_centers():
    assert lattice_for(GroupSpec.parse("D4:adj")).quotient.factors == (2, 2)
    assert lattice_for(GroupSpec.parse("D5:adj")).quotient.factors == (4,)
    assert lattice_for(GroupSpec.parse("A3:mu2")).quotient.factors == (2,)
    assert lattice_for(GroupSpec.parse("E6:adj")).quotient.factors == (3,)


@settings(max_examples=40)
@given(st.sampled_from(CATALOG), st.data())
def test_membership_matches_projection(text, data):
    spec = GroupSpec.parse(text)
    rs = spec.root_system()
    lat = lattice_for(spec, rs)
    lam = data.draw(st.lists(st.integers(-5, 5), min_size=rs.rank, max_size=rs.rank))
    assert member(lat, lam) == (not any(lat.quotient.project(lam)))
    assert member(lat, [0] * rs.rank)


def test_d4_adjoint_dominant_bound_one():
    spec = GroupSpec.parse("D4:adj")
    rs = spec.root_system()
    # independent filter: lam is in the root lattice iff A^{-1} lam is integral
    inv = sympy.Matrix(rs.cartan).inv()
    expected = [lam for lam in itertools.product(range(2), repeat=4)
                if any(lam) and all(x.is_integer for x in inv * sympy.Matrix(lam))]
    assert sorted(enumerate_dominant(rs, lattice_for(spec, rs), 1)) == expected
    assert expected == [(0, 1, 0, 0), (1, 0, 1, 1), (1, 1, 1, 1)]


def test_d3_aliases_to_a3():
    assert str(GroupSpec.parse("D3:so")) == str(GroupSpec.parse("A3:mu2"))
    assert lattice_for(GroupSpec.parse("D3:adj")).index == 4


def test_mu_selectors():
    assert str(GroupSpec.parse("A5:mu1")) == "A5:sc"
    assert str(GroupSpec.parse("A5:mu6")) == "A5:adj"
    assert lattice_for(GroupSpec.parse("A5:mu3")).index == 3


@pytest.mark.parametrize("bad", ["A5:mu4", "D5:hs", "C4:so", "A3:hs", "Q3", "A3:zz", "", "A0", "B3:mu2"])
def test_invalid_specs(bad):
    with pytest.raises(SpecError):
        GroupSpec.parse(bad)


def test_explicit_lattice_file(tmp_path):
    path = tmp_path / "so4.json"
    path.write_text("[[1, 1], [2, 0]]")
    spec = GroupSpec.parse(f"A1xA1:file={path}")
    lat = lattice_for(spec)
    assert lat.index == 2
    assert member(lat, [1, 1]) and not member(lat, [1, 0])


def test_explicit_lattice_must_contain_roots(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("[[4, 0], [0, 2]]")
    with pytest.raises(SpecError):
        lattice_for(GroupSpec.parse(f"A1xA1:file={path}"))


def test_product_spec():
    spec = GroupSpec.parse("B3xA2:adj")
    assert not spec.is_simple
    assert lattice_for(spec).index == 3
