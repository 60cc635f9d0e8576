from fractions import Fraction
from itertools import permutations, product

import pytest
import sympy
from sympy.combinatorics import Permutation

from asmcheck import kernels
from asmcheck.algebra import LaurentPolynomial, RationalFunction, substitute
from asmcheck.groups import act, hyperoctahedral, is_antisymmetric, is_symmetric
from asmcheck.series import ct_iterated, res_iterated

import oracles
from oracles import poly_to_sympy, symbols, to_sympy


def signed_sum_sympy(expr, k, with_bars=True):
    """sum of sgn(g) g[expr] over S_k or W(B_k), straight in sympy."""
    xs = symbols(k)
    total = 0
    for pi in permutations(range(k)):
        s_pi = Permutation(list(pi)).signature()
        moved = expr.subs({xs[i]: xs[pi[i]] for i in range(k)}, simultaneous=True)
        flips = product((1, -1), repeat=k) if with_bars else [(1,) * k]
        for eps in flips:
            term = moved.subs({xs[i]: 1 - xs[i] for i in range(k) if eps[i] == -1}, simultaneous=True)
            total += s_pi * sympy.prod(eps) * term
    return sympy.expand(total)


def phi_sympy(k):
    xs = symbols(k)
    b = [1 - v for v in xs]
    core = sympy.prod([b[i] ** (k - i - 1) * xs[i] ** k for i in range(k)])
    for i in range(k):
        for j in range(i + 1, k):
            core *= (1 - xs[i] * b[j]) * (1 - b[i] * b[j])
    return (-1) ** k * signed_sum_sympy(core, k)


def sympoly(p, k):
    return sympy.Poly(poly_to_sympy(p, k), *symbols(k))


class TestDelta:
    def test_small(self):
        assert kernels.delta(0) == 1
        x = LaurentPolynomial.variable(1, 1)
        assert kernels.delta(1) == 1 - 2 * x

    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_product_form(self, k):
        xs = symbols(k)
        want = sympy.prod([1 - 2 * v for v in xs])
        for i in range(k):
            for j in range(i + 1, k):
                want *= (xs[j] - xs[i]) * (xs[j] + xs[i] - 1)
        assert sympoly(kernels.delta(k), k) == sympy.Poly(want, *xs)

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_degree_in_each_variable(self, k):
        d = kernels.delta(k)
        assert all(d.degree(i) == 2 * k - 1 for i in range(1, k + 1))

    def test_vanishes_on_diagonal(self):
        y2 = LaurentPolynomial.variable(2, 2)
        assert substitute(kernels.delta(2), {1: y2}).is_zero()


class TestPhi:
    def test_k1(self):
        x = LaurentPolynomial.variable(1, 1)
        assert kernels.phi(1) == 1 - 2 * x

    @pytest.mark.parametrize("k", [2, 3])
    def test_against_sympy_sum(self, k):
        assert sympoly(kernels.phi(k), k) == sympy.Poly(phi_sympy(k), *symbols(k))

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_factored_sum_matches_literal_sum(self, k):
        assert kernels.phi(k) == kernels.phi_literal(k)

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_antisymmetric(self, k):
        assert is_antisymmetric(kernels.phi(k), "WBk", k)

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_degree_bound(self, k):
        p = kernels.phi(k)
        assert all(p.degree(i) <= 4 * k - 3 for i in range(1, k + 1))

    @pytest.mark.parametrize("k", [0, 1, 2, 3, 4])
    def test_omega_times_delta(self, k):
        assert kernels.delta(k) * kernels.omega(k) == kernels.phi(k)

    def test_omega_small(self):
        assert kernels.omega(0) == 1
        assert kernels.omega(1) == 1

    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_omega_at_zero(self, k):
        got = substitute(kernels.omega(k), {k: 0}).as_polynomial()
        assert got == kernels.omega(k - 1)

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_omega_symmetric(self, k):
        assert is_symmetric(kernels.omega(k), "WBk", k)


class TestPsi:
    def test_k1(self):
        x = LaurentPolynomial.variable(1, 1)
        assert kernels.psi(1) == 1 - x

    @pytest.mark.parametrize("k", [2, 3])
    def test_against_sympy_sum(self, k):
        xs = symbols(k)
        b = [1 - v for v in xs]
        core = sympy.prod([xs[i] ** (k - i - 1) * b[i] ** k for i in range(k)])
        for i in range(k):
            for j in range(i + 1, k):
                core *= (1 - b[i] * xs[j]) * (1 - xs[i] * xs[j])
        want = signed_sum_sympy(core, k, with_bars=False)
        assert sympoly(kernels.psi(k), k) == sympy.Poly(want, *xs)

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_antisymmetric(self, k):
        assert is_antisymmetric(kernels.psi(k), "Sk", k)


class TestVandermonde:
    def test_k2(self):
        y1, y2 = (LaurentPolynomial.variable(i, 2) for i in (1, 2))
        assert kernels.vandermonde(2) == y2 - y1

    @pytest.mark.parametrize("k", [2, 3, 4, 5])
    def test_determinant(self, k):
        xs = symbols(k)
        det = sympy.Matrix(k, k, lambda i, j: xs[j] ** i).det()
        assert sympoly(kernels.vandermonde(k), k) == sympy.Poly(det, *xs)

    def test_antisymmetrized_monomial(self):
        from asmcheck.groups import antisymmetrize
        x2, x3 = (LaurentPolynomial.variable(i, 3) for i in (2, 3))
        assert antisymmetrize(x2 * x3 ** 2, "Sk", 3) == kernels.vandermonde(3)

    def test_vanishes_on_diagonal(self):
        x2 = LaurentPolynomial.variable(2, 3)
        assert substitute(kernels.vandermonde(3), {1: x2}).is_zero()


class TestIssai:
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_against_sympy(self, k):
        xs = symbols(k)
        base = sympy.prod([xs[i] ** (i + 1) for i in range(k)])
        tail = 1
        for i in reversed(range(k)):
            tail *= xs[i]
            base /= 1 - tail
        lhs = 0
        for pi in permutations(range(k)):
            lhs += Permutation(list(pi)).signature() * base.subs({xs[i]: xs[pi[i]] for i in range(k)}, simultaneous=True)
        rhs = to_sympy(kernels.issai_rhs(k), k)
        assert sympy.simplify(sympy.together(lhs - rhs)) == 0

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_identity(self, k):
        assert kernels.issai_lhs(k) == kernels.issai_rhs(k)


class TestJamie:
    def test_single_block_k1(self):
        assert kernels.jamie((1,)).is_zero()

    def test_one_block_k2(self):
        x1, x2 = (LaurentPolynomial.variable(i, 2) for i in (1, 2))
        assert kernels.jamie((2,)) == (1 - x2) - (1 - x1) * (1 - x2) * x2

    def test_blocks_of(self):
        assert kernels.blocks_of((3, 3, 1)) == (2, 3)
        assert kernels.blocks_of((2, 2)) == (2,)
        assert kernels.blocks_of((4, 3, 2)) == (1, 2, 3)

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_decomposition_all_blocks(self, k):
        from itertools import combinations
        for m in range(k):
            for inner in combinations(range(1, k), m):
                blocks = tuple(inner) + (k,)
                assert kernels.jamie(blocks) == kernels.jamie_decomposition(blocks)

    def test_bad_blocks(self):
        with pytest.raises(ValueError):
            kernels.jamie((2, 2))

    @pytest.mark.parametrize("l", [1, 2, 3, 4, 5])
    def test_telescoping(self, l):
        us = [LaurentPolynomial.variable(i, l) for i in range(1, l + 1)]
        prod = LaurentPolynomial.constant(1, l)
        for u in us:
            prod = prod * u
        assert kernels.telescope_forward(us) == 1 - prod
        assert kernels.telescope_backward(us) == 1 - prod


class TestIntegrands:
    def test_t_rational_k1(self):
        x = LaurentPolynomial.variable(1, 1)
        for n in (1, 2, 3):
            t = kernels.t_rational(1, n)
            assert t * (x * (1 - x)) ** (n + 2) == 1

    def test_t_rational_has_bar_bar_factor(self):
        x1, x2 = (LaurentPolynomial.variable(i, 2) for i in (1, 2))
        t = kernels.t_rational(2, 2)
        assert any(q == x1 + x2 - x1 * x2 or q == -(x1 + x2 - x1 * x2) for q in t.den)

    def test_t_rational_symmetric(self):
        t = kernels.t_rational(2, 2)
        assert all(act(g, t) == t for g in hyperoctahedral(2))

    def test_magog_forms_agree(self):
        assert ct_iterated(kernels.magog_total(1, 3)) == 5
        assert res_iterated(kernels.magog_res(1, 3)) == 5

    @pytest.mark.parametrize("k,n", [(1, 2), (1, 4), (2, 2), (2, 3), (3, 3)])
    def test_totals_match_enumeration(self, k, n):
        count = len(oracles.magog_trapezoids(k, n))
        assert ct_iterated(kernels.magog_total(k, n)) == count
        assert ct_iterated(kernels.gog_total(k, n)) == count
        assert ct_iterated(kernels.george(k, n)) == count
        assert res_iterated(kernels.magog_res(k, n)) == count
        assert res_iterated(kernels.gog_res(k, n)) == count

    @pytest.mark.parametrize("k,n", [(1, 3), (2, 2), (2, 3)])
    def test_symmetric_forms(self, k, n):
        count = len(oracles.gog_trapezoids(k, n))
        assert res_iterated(kernels.magog_res2(k, n)) == count
        assert res_iterated(kernels.gog_res2(k, n)) == count
        assert kernels.magog_avg_scale(k) * res_iterated(kernels.magog_avg(k, n)) == count
        assert kernels.gog_avg_scale(k) * res_iterated(kernels.gog_avg(k, n)) == count

    def test_gog_average_small(self):
        # two 2 x 2 Gog trapezoids: rows (1,2)/(1) and (1,2)/(2)
        assert len(oracles.gog_trapezoids(2, 2)) == 2
        scaled = Fraction(1, 8) * res_iterated(kernels.gog_avg(2, 2))
        assert scaled == ct_iterated(kernels.gog_total(2, 2)) == 2

    @pytest.mark.parametrize("k,n", [(1, 3), (2, 3), (2, 4)])
    def test_border_forms(self, k, n):
        table = oracles.magog_border_table(k, n)
        for a, c in table.items():
            assert ct_iterated(kernels.magog_border(k, n, a)) == c


class TestActFive:
    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_gog_equals_magog(self, k):
        lhs = kernels.magog_avg_numerator(k)
        assert lhs == kernels.phi(k) * kernels.phi(k) * (-1) ** k

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_signed_sum_normalization(self, k):
        assert kernels.l_quotient(k) == kernels.l_signed_sum(k)
        assert kernels.l_normalized(k) == kernels.omega(k) * kernels.omega(k)

    def test_signed_sum_k1_by_hand(self):
        # x^2/(1-2x) + (1-x)^2/(2x-1) = (2x-1)/(1-2x) = -1
        assert kernels.l_signed_sum(1) == -1
