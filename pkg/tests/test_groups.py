from itertools import permutations, product

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from asmcheck import kernels
from asmcheck.algebra import LaurentPolynomial, RationalFunction
from asmcheck.groups import (
    SignedPermutation,
    act,
    antisymmetrize,
    antisymmetrize_literal,
    divides_delta,
    divides_vandermonde,
    hyperoctahedral,
    is_antisymmetric,
    is_symmetric,
    perm_sign,
    sgn,
    symmetric_group,
)
from asmcheck.series import ct_iterated, res_iterated

from oracles import random_admissible, random_poly, symbols, to_sympy

x1, x2, x3 = (LaurentPolynomial.variable(i, 3) for i in (1, 2, 3))


def compose(g, h):
    """Element acting as g(h f), read off from where each variable ends up."""
    k = g.k
    xs = [LaurentPolynomial.variable(i, k) for i in range(1, k + 1)]
    probe = sum((xs[i] * (i + 2) for i in range(k)), LaurentPolynomial.constant(0, k))
    target = act(g, act(h, probe))
    for cand in hyperoctahedral(k):
        if act(cand, probe) == target:
            return cand
    raise AssertionError("not closed")


def sympy_act(g, expr, k):
    xs = symbols(k)
    step = {xs[i]: xs[g.pi[i] - 1] for i in range(k)}
    expr = expr.subs(step, simultaneous=True)
    flips = {xs[i]: 1 - xs[i] for i in range(k) if g.eps[i] == -1}
    return expr.subs(flips, simultaneous=True)


def polys(k):
    return st.builds(lambda r: random_poly(r, k, terms=4, lo=0, hi=3, coef=6), st.randoms(use_true_random=False))


class TestElements:
    def test_signs(self):
        assert SignedPermutation.of([2, 1]).sign() == -1
        assert SignedPermutation.of([2, 1], [-1, 1]).sign() == 1
        assert sgn(SignedPermutation.of([1, 2, 3], [-1, -1, -1])) == -1

    def test_bad_input(self):
        with pytest.raises(ValueError):
            SignedPermutation.of([1, 1])
        with pytest.raises(ValueError):
            SignedPermutation.of([1, 2], [1, 0])

    def test_group_sizes(self):
        assert len(list(symmetric_group(3))) == 6
        assert len(list(hyperoctahedral(3))) == 48
        assert len(set(hyperoctahedral(2))) == 8

    def test_perm_sign_by_inversions(self):
        for pi in permutations(range(1, 5)):
            inv = sum(1 for i in range(4) for j in range(i + 1, 4) if pi[i] > pi[j])
            assert perm_sign(pi) == (-1) ** inv

    def test_sign_is_a_homomorphism_b2(self):
        elems = list(hyperoctahedral(2))
        for g, h in product(elems, elems):
            assert compose(g, h).sign() == g.sign() * h.sign()

    @settings(max_examples=60)
    @given(st.sampled_from(list(hyperoctahedral(3))), st.sampled_from(list(hyperoctahedral(3))))
    def test_sign_is_a_homomorphism_b3(self, g, h):
        assert compose(g, h).sign() == g.sign() * h.sign()


class TestAction:
    def test_permutation_then_bars(self):
        g = SignedPermutation.of([2, 3, 1], [1, -1, -1])
        f = x1 ** 2 + 2 * x2 + x3 ** 3
        assert act(g, f) == (1 - x2) ** 2 + 2 * (1 - x3) + x1 ** 3

    def test_bars_only(self):
        g = SignedPermutation.of([1, 2, 3], [-1, -1, 1])
        assert act(g, x1 ** 2 * x2 ** 3 * x3 ** 4) == (1 - x1) ** 2 * (1 - x2) ** 3 * x3 ** 4

    def test_identity(self):
        f = x1 * x2 ** -1 + 3
        assert act(SignedPermutation.identity(3), f) == f

    @settings(max_examples=40)
    @given(polys(2))
    def test_is_an_action(self, f):
        elems = list(hyperoctahedral(2))
        for g, h in product(elems, elems):
            assert act(g, act(h, f)) == act(compose(g, h), f)

    @settings(max_examples=60)
    @given(polys(3), st.sampled_from(list(hyperoctahedral(3))))
    def test_matches_sympy(self, f, g):
        want = sympy_act(g, to_sympy(f, 3), 3)
        assert sympy.expand(to_sympy(act(g, f), 3) - want) == 0

    def test_rational_function(self):
        f = RationalFunction.from_factors(x1, [(1 - x1 * x2, 1)])
        g = SignedPermutation.of([2, 1, 3], [-1, 1, 1])
        want = RationalFunction.from_factors(x2, [(1 - x2 * (1 - x1), 1)])
        assert act(g, f) == want


class TestAntisymmetrizer:
    def test_examples(self):
        y1, y2 = (LaurentPolynomial.variable(i, 2) for i in (1, 2))
        assert antisymmetrize(y2, "Sk", 2) == y2 - y1
        assert antisymmetrize(LaurentPolynomial.constant(1, 1), "WBk", 1).is_zero()
        assert antisymmetrize(y1 * y2 ** 2, "Sk", 2) == y1 * y2 * (y2 - y1)

    def test_predicate(self):
        y1, y2 = (LaurentPolynomial.variable(i, 2) for i in (1, 2))
        assert is_antisymmetric(y2 - y1, "Sk", 2)
        assert not is_antisymmetric(y1 + y2, "Sk", 2)
        assert is_symmetric(y1 + y2, "Sk", 2)

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_delta_antisymmetric(self, k):
        assert is_antisymmetric(kernels.delta(k), "WBk", k)

    @settings(max_examples=100)
    @given(st.integers(1, 3), st.randoms(use_true_random=False))
    def test_outputs_are_antisymmetric(self, k, r):
        f = random_poly(r, k, terms=4, lo=0, hi=3, coef=6)
        for group in ("Sk", "WBk"):
            assert is_antisymmetric(antisymmetrize(f, group, k), group, k)

    @settings(max_examples=100)
    @given(st.integers(1, 3), st.randoms(use_true_random=False))
    def test_divisibility(self, k, r):
        f = random_poly(r, k, terms=4, lo=0, hi=3, coef=6)
        assert divides_vandermonde(antisymmetrize(f, "Sk", k), k)
        assert divides_delta(antisymmetrize(f, "WBk", k), k)

    def test_not_divisible(self):
        assert not divides_delta(LaurentPolynomial.variable(1, 1), 1)

    @settings(max_examples=15)
    @given(st.integers(1, 3), st.randoms(use_true_random=False))
    def test_factored_sum_equals_literal_sum(self, k, r):
        f = random_poly(r, k, terms=4, lo=-1, hi=3, coef=6)
        f = RationalFunction.from_factors(f, [(1 - LaurentPolynomial.variable(1, k) * 2, 1)])
        for group in ("Sk", "WBk"):
            assert antisymmetrize(f, group, k) == antisymmetrize_literal(f, group, k)

    def test_unknown_group(self):
        with pytest.raises(ValueError):
            antisymmetrize(x1, "An", 3)


class TestRenaming:
    """Iterated CT and Res do not see a renaming of variables when f is admissible."""

    @settings(max_examples=100)
    @given(st.randoms(use_true_random=False), st.integers(1, 3))
    def test_ct(self, r, k):
        f = random_admissible(r, k)
        base = ct_iterated(f)
        for g in symmetric_group(k):
            assert ct_iterated(act(g, f)) == base

    @settings(max_examples=100)
    @given(st.randoms(use_true_random=False), st.integers(1, 3))
    def test_res(self, r, k):
        f = random_admissible(r, k)
        base = res_iterated(f)
        for g in symmetric_group(k):
            assert res_iterated(act(g, f)) == base
