from itertools import product

import pytest
import sympy

from asmcheck import flips, kernels, objects
from asmcheck.algebra import LaurentPolynomial, RationalFunction, as_rational
from asmcheck.groups import SignedPermutation, act, hyperoctahedral
from asmcheck.series import res_iterated

import oracles
from oracles import symbols, to_sympy

SPLITS = [(k, R, eps) for k in (2, 3) for R in range(1, k + 1)
          for eps in product((1, -1), repeat=k) if eps[R - 1] == 1]


class TestHelpers:
    def test_first_flip(self):
        assert flips.first_flip((2, 1), (-1, 1)) == (2, 1)
        assert flips.first_flip((2, 3, 1), (1, -1, -1)) == (1, 2)
        assert flips.first_flip((1, 2), (1, 1)) is None

    def test_with_unbarred(self):
        assert flips.with_unbarred((-1, -1, 1), 2) == (-1, 1, 1)

    def test_flipped_matches_sympy(self):
        f = kernels.delta(2) * LaurentPolynomial.variable(1, 2)
        s1, s2 = symbols(2)
        want = to_sympy(f, 2).subs(s2, 1 - s2)
        assert sympy.expand(to_sympy(flips.flipped(f, (1, -1)), 2) - want) == 0

    def test_polynomial_in(self):
        y1, y2 = (LaurentPolynomial.variable(i, 2) for i in (1, 2))
        assert flips.polynomial_in(RationalFunction(y1 ** 3 * y2, 1 - y2), 1) == 3
        assert flips.polynomial_in(RationalFunction(y1, 1 - y1 * y2), 1) is None
        assert flips.polynomial_in(y1 ** -1, 1) is None


class TestSplit:
    @pytest.mark.parametrize("family", ["magog", "gog"])
    @pytest.mark.parametrize("k,R,eps", SPLITS)
    def test_parts_sum_to_core(self, family, k, R, eps):
        if family == "magog":
            core, poles = flips.magog_core(k, R, eps), flips.magog_poles(k, R, eps)
        else:
            core, poles = flips.gog_core(k, R, eps), flips.gog_poles(k, R, eps)
        poly, poles = flips.split(core, R, poles)
        total = poly
        for p in poles:
            total = total + p.coeff.divide_by_poly(p.factor)
        assert (total - as_rational(core)).gcd_reduce().num.is_zero()
        assert flips.polynomial_in(poly, R) is not None
        for p in poles:
            assert not flips.uses_var(p.coeff, R)

    @pytest.mark.parametrize("k,R,eps", [s for s in SPLITS if s[0] == 2])
    def test_pole_coefficient_by_sympy_limit(self, k, R, eps):
        core, poles = flips.gog_core(k, R, eps), flips.gog_poles(k, R, eps)
        _, poles = flips.split(core, R, poles)
        xs = symbols(k)
        expr = to_sympy(core, k)
        for p in poles:
            fac = to_sympy(p.factor, k)
            root = sympy.solve(fac, xs[R - 1])[0]
            want = sympy.cancel(sympy.cancel(expr * fac).subs(xs[R - 1], root))
            assert sympy.cancel(to_sympy(p.coeff, k) - want) == 0

    @pytest.mark.parametrize("k,R,eps", SPLITS)
    def test_magog_closed_forms_up_to_sign(self, k, R, eps):
        core, poles = flips.magog_core(k, R, eps), flips.magog_poles(k, R, eps)
        _, poles = flips.split(core, R, poles)
        for p in poles:
            assert flips.sign_match(p.coeff, flips.magog_coeff_closed(k, R, p.i, eps)) is not None

    @pytest.mark.parametrize("k,R,eps", SPLITS)
    def test_gog_closed_forms_up_to_sign(self, k, R, eps):
        core, poles = flips.gog_core(k, R, eps), flips.gog_poles(k, R, eps)
        _, poles = flips.split(core, R, poles)
        for p in poles:
            assert flips.sign_match(p.coeff, flips.gog_coeff_closed(p.kind, k, R, p.i, eps)) is not None

    def test_sign_match(self):
        y = LaurentPolynomial.variable(1, 1)
        assert flips.sign_match(y, y) == 1
        assert flips.sign_match(-y, y) == -1
        assert flips.sign_match(y + 1, y) is None


class TestDecomposition:
    @pytest.mark.parametrize("family", ["magog", "gog"])
    @pytest.mark.parametrize("n", [2, 3])
    @pytest.mark.parametrize("R,eps", [(1, (-1, -1)), (1, (-1, 1)), (2, (1, -1)), (2, (-1, -1))])
    def test_reassembles_residuand(self, family, n, R, eps):
        D = flips.decompose(family, 2, n, R, eps)
        total = D.parts()[0][1]
        for _, h in D.parts()[1:]:
            total = total + h
        assert (total - D.residuand).gcd_reduce().num.is_zero()

    @pytest.mark.parametrize("family", ["magog", "gog"])
    @pytest.mark.parametrize("g", [g for g in hyperoctahedral(2) if -1 in g.eps])
    def test_each_part_survives_the_flip(self, family, g):
        u, R = flips.first_flip(g.pi, g.eps)
        D = flips.decompose(family, 2, 3, R, g.eps)
        for label, h in D.parts():
            a, b = flips.hadas(h, R, list(g.pi))
            assert a == b, label


class TestInvariance:
    """Residues of signed-permuted residuands still count trapezoids."""

    @pytest.mark.parametrize("n", [2, 3, 4])
    @pytest.mark.parametrize("g", list(hyperoctahedral(2)), ids=str)
    def test_magog_b2(self, n, g):
        count = len(oracles.magog_trapezoids(2, n))
        assert res_iterated(act(g, kernels.magog_res(2, n))) == count

    @pytest.mark.parametrize("n", [2, 3, 4])
    @pytest.mark.parametrize("g", list(hyperoctahedral(2)), ids=str)
    def test_gog_b2(self, n, g):
        count = len(oracles.gog_trapezoids(2, n))
        assert res_iterated(act(g, kernels.gog_res(2, n))) == count

    def test_single_flip_step(self):
        g = SignedPermutation.of([2, 1], [-1, 1])
        u, R = flips.first_flip(g.pi, g.eps)
        f = kernels.magog_res(2, 3)
        lhs = res_iterated(flips.flipped(f, g.eps), list(g.pi))
        rhs = res_iterated(flips.flipped(f, flips.with_unbarred(g.eps, R)), list(g.pi))
        assert lhs == rhs == objects.b_brute(2, 3)
