from fractions import Fraction
from itertools import combinations

import pytest
import sympy

from ahg_hgm.fibers import enumerate_fiber
from ahg_hgm.items import ConfigMatrix
from ahg_hgm.polynomials import (Poly, TermOrder, buchberger, divides, monomial_normal_form, normal_form,
                                 semigroup_member, spoly, toric_gb)


def _sympy_basis(exprs, symbols, order):
    key = TermOrder.from_name(order, len(symbols)).key
    basis = sympy.groebner(exprs, *symbols, order=order, domain=sympy.QQ)
    result = set()
    for g in basis.exprs:
        terms = {tuple(e): Fraction(int(c.p), int(c.q)) for e, c in sympy.Poly(g, *symbols).terms()}
        lc = terms[max(terms, key=key)]
        result.add(frozenset((e, c / lc) for e, c in terms.items()))
    return result


def _our_basis(G):
    return {frozenset(g.terms.items()) for g in G}


def _to_poly(expr, symbols):
    terms = sympy.Poly(expr, *symbols).terms()
    return Poly(len(symbols), {tuple(e): Fraction(int(c.p), int(c.q)) for e, c in terms})


@pytest.mark.parametrize('order', ['lex', 'grevlex'])
@pytest.mark.parametrize('system', [
    lambda x, y, z: [x ** 2 + y * z - 2, x * y - z ** 2, x * z - y],
    lambda x, y, z: [x ** 3 - 2 * x * y, x ** 2 * y - 2 * y ** 2 + x],
    lambda x, y, z: [x * y - z, y * z - x, x * z - y],
    lambda x, y, z: [sympy.Rational(1, 2) * x ** 2 - y, y ** 2 - 3 * z, x - z ** 2],
])
def test_buchberger_matches_sympy(system, order):
    symbols = sympy.symbols('x y z')
    exprs = system(*symbols)
    gens = [_to_poly(e, symbols) for e in exprs]
    G = buchberger(gens, TermOrder.from_name(order, 3))
    assert _our_basis(G) == _sympy_basis(exprs, symbols, order)


def test_toric_basis_of_the_3x4_example(A34):
    G = toric_gb(A34)
    assert G.to_strings() == ['d2*d3 - d1*d4']
    assert G.leading_monomials() == [(0, 1, 1, 0)]


def test_toric_basis_of_the_twisted_cubic():
    A = ConfigMatrix(((3, 2, 1, 0), (0, 1, 2, 3)))
    G = toric_gb(A, 'grevlex')
    assert set(G.to_strings()) == {'d2^2 - d1*d3', 'd2*d3 - d1*d4', 'd3^2 - d2*d4'}


def test_toric_basis_lex_and_grevlex_generate_binomials(A48):
    for order in ('lex', 'grevlex'):
        G = toric_gb(A48, order)
        assert len(G) > 0
        for g in G:
            assert g.is_binomial()
            (u, _), (v, _) = g.sorted_terms(G.order)
            assert A48.apply(u) == A48.apply(v)


def test_identity_matrix_has_empty_toric_ideal():
    G = toric_gb(ConfigMatrix(((1, 0, 0), (0, 1, 0), (0, 0, 1))))
    assert len(G) == 0
    assert G.is_standard((5, 2, 7))


def test_toric_basis_with_negative_entries():
    A = ConfigMatrix(((1, 1, 1), (-1, 0, 1)), allow_negative=True)
    G = toric_gb(A, 'grevlex')
    assert G.to_strings() == ['d2^2 - d1*d3']


def test_normal_form_and_monomial_normal_form(A34):
    G = toric_gb(A34)
    assert monomial_normal_form((0, 2, 1, 0), G) == (1, 1, 0, 1)
    p = Poly(4, {(0, 1, 1, 0): 3, (0, 0, 0, 1): -1})
    assert normal_form(p, G) == Poly(4, {(1, 0, 0, 1): 3, (0, 0, 0, 1): -1})


def test_semigroup_member(A34):
    assert semigroup_member(A34, (3, 2, 1)) == (1, 1, 0, 1)
    assert semigroup_member(A34, (1, 2, 0)) is None
    assert semigroup_member(A34, (0, 0, 0)) == (0, 0, 0, 0)


def test_poly_serialization():
    p = Poly(4, {(0, 0, 0, 2): 1, (1, 0, 0, 0): Fraction(-1, 2), (0, 0, 0, 0): 3})
    order = TermOrder.grevlex(4)
    assert p.to_string(order) == 'd4^2 - 1/2*d1 + 3'
    assert p.to_string(order, names='x') == 'x4^2 - 1/2*x1 + 3'
    assert Poly.from_json(p.to_json(order)) == p
    assert p.to_json(order)['terms'][0] == {'e': [0, 0, 0, 2], 'c': '1'}


def test_term_order_keys():
    lex = TermOrder.lex(3)
    grevlex = TermOrder.grevlex(3)
    assert lex.key((1, 0, 0)) > lex.key((0, 5, 0))
    assert grevlex.key((0, 5, 0)) > grevlex.key((1, 0, 0))
    # x1*x3 < x2^2 in grevlex
    assert grevlex.key((0, 2, 0)) > grevlex.key((1, 0, 1))
    with pytest.raises(ValueError):
        TermOrder.from_name('deglex', 3)


def _assert_reduced_groebner(G):
    order = G.order
    leading = G.leading_monomials()
    for g, lm in zip(G, leading):
        assert g.terms[lm] == 1
        for other, other_lm in zip(G, leading):
            if other is not g:
                assert not any(divides(other_lm, e) for e in g.terms)
    for (f, lmf), (g, lmg) in combinations(zip(G, leading), 2):
        assert normal_form(spoly(f, g, order, lmf, lmg), G).is_zero()


def _random_poly(rng, nvars, terms=3, top=2):
    p = Poly(nvars)
    for _ in range(terms):
        e = tuple(int(v) for v in rng.integers(0, top + 1, size=nvars))
        p = p + Poly.monomial(e, Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 4))))
    return p


def test_buchberger_lex_example():
    x1 = Poly.monomial((1, 0))
    x2 = Poly.monomial((0, 1))
    gens = [x1 * x1 + x2 * x2 - 4, x1 * x2 - 1]
    G = buchberger(gens, TermOrder.lex(2))
    assert set(G) == {x1 + x2 * x2 * x2 - x2 * 4, x2 * x2 * x2 * x2 - x2 * x2 * 4 + 1}
    assert [e for e in [(0, 0), (0, 1), (0, 2), (0, 3), (1, 0), (0, 4)] if G.is_standard(e)] == [
        (0, 0), (0, 1), (0, 2), (0, 3)]
    assert normal_form(x1, G) == x2 * 4 - x2 * x2 * x2
    _assert_reduced_groebner(G)


def test_buchberger_keeps_a_single_reduced_generator():
    G = buchberger([Poly(1, {(1,): 1, (0,): -1})], TermOrder.lex(1))
    assert G.to_strings(names='x') == ['x1 - 1']


def test_toric_basis_of_one_by_two():
    assert toric_gb(ConfigMatrix(((1, 1),))).to_strings() == ['d1 - d2']


@pytest.mark.parametrize('order', ['lex', 'grevlex'])
def test_computed_bases_are_reduced(A34, A48, order):
    for A in (A34, A48, ConfigMatrix(((3, 2, 1, 0), (0, 1, 2, 3)))):
        _assert_reduced_groebner(toric_gb(A, order))
    symbols = sympy.symbols('x y z')
    x, y, z = symbols
    gens = [_to_poly(e, symbols) for e in (x ** 2 + y * z - 2, x * y - z ** 2, x * z - y)]
    _assert_reduced_groebner(buchberger(gens, TermOrder.from_name(order, 3)))


def test_normal_form_ignores_ideal_multiples(A48, rng):
    G = toric_gb(A48)
    for _ in range(20):
        p = sum((g * _random_poly(rng, 8, terms=2, top=1) for g in G), Poly(8))
        q = _random_poly(rng, 8)
        r = _random_poly(rng, 8)
        assert normal_form(p, G).is_zero()
        remainder = normal_form(p * q + r, G)
        assert remainder == normal_form(r, G)
        assert all(G.is_standard(e) for e in remainder.terms)


def test_membership_does_not_depend_on_the_order(A34, A48, rng):
    for A in (A34, A48, ConfigMatrix(((3, 2, 1, 0), (0, 1, 2, 3)))):
        bases = [toric_gb(A, order) for order in ('lex', 'grevlex')]
        for _ in range(10):
            u = tuple(int(v) for v in rng.integers(0, 3, size=A.n))
            fiber = enumerate_fiber(A, A.apply(u))
            v = fiber[int(rng.integers(0, len(fiber)))]
            inside = Poly.monomial(u) - Poly.monomial(v)
            w = tuple(x + (1 if i == 0 else 0) for i, x in enumerate(v))
            outside = Poly.monomial(u) - Poly.monomial(w)
            assert all(normal_form(inside, G).is_zero() for G in bases)
            assert not any(normal_form(outside, G).is_zero() for G in bases)
