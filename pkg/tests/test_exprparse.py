import pytest
from hypothesis import given, strategies as st

from invlattice.exprparse import (ExprSyntaxError, UnknownSymbolError, laurent_terms,
                                  parse_polynomial, poly_add, poly_mul)


def test_constants_and_symbols():
    assert parse_polynomial("7") == {(): 7}
    assert parse_polynomial("0") == {}
    assert parse_polynomial("r1") == {(("r1", 1),): 1}


def test_precedence_and_juxtaposition():
    a = parse_polynomial("2 r1 s2 - 3*r1^2 + (r1 - 1)^2")
    b = parse_polynomial("2*r1*s2 - 3*r1*r1 + r1*r1 - 2*r1 + 1")
    assert a == b
    assert parse_polynomial("-r1^2") == {(("r1", 2),): -1}
    assert parse_polynomial("--3") == {(): 3}


def test_cancellation():
    assert parse_polynomial("r1 s1 - s1 r1") == {}


@pytest.mark.parametrize("bad,pos", [("1 +", 3), ("(r1", 3), ("r1 ^ x", 5), ("r1 $ 2", 3), ("", 0),
                                     (")", 0), ("R1", 0)])
def test_syntax_errors(bad, pos):
    with pytest.raises(ExprSyntaxError) as exc:
        parse_polynomial(bad)
    assert exc.value.position == pos


def test_unknown_symbol():
    with pytest.raises(UnknownSymbolError):
        laurent_terms(parse_polynomial("r1 + z9"), {"r1": (1, 0)})


def test_laurent_terms_collapse():
    symbols = {"a": (1, 0), "b": (-1, 0), "c": (0, 1)}
    terms = laurent_terms(parse_polynomial("a b - 1 + 2 c^2 a"), symbols)
    assert terms == [(2, (1, 2))]


polys = st.dictionaries(
    st.lists(st.sampled_from(["r1", "s1", "u2"]), max_size=3).map(
        lambda xs: tuple(sorted((s, xs.count(s)) for s in set(xs)))),
    st.integers(-5, 5).filter(bool), max_size=4)


def render(p):
    if not p:
        return "0"
    parts = []
    for mono, c in sorted(p.items()):
        factors = [f"{s}^{e}" for s, e in mono]
        parts.append("(" + "*".join([f"({c})"] + factors) + ")")
    return " + ".join(parts).replace("(-", "(0-")


@given(polys, polys)
def test_round_trip_ring_laws(p, q):
    assert parse_polynomial(render(p)) == p
    assert parse_polynomial(f"({render(p)}) * ({render(q)})") == poly_mul(p, q)
    assert parse_polynomial(f"({render(p)}) - ({render(q)})") == poly_add(p, q, -1)
