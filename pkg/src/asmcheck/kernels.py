"""Named kernel polynomials and the constant-term / residue integrands built from them.

Every integrand is a RationalFunction in x1..xk.  Constant-term integrands are
meant for ``ct_*``; the ``*_res`` and ``*_avg`` forms are residuands for
``res_*`` with variable order x1..xk.
"""
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .algebra import LaurentPolynomial, RationalFunction, exact_divide
from .groups import antisymmetrize, antisymmetrize_literal


def x(i, k):
    return LaurentPolynomial.variable(i, k)


def xb(i, k):
    return 1 - LaurentPolynomial.variable(i, k)


def one(k):
    return LaurentPolynomial.constant(1, k)


def mono(exps):
    return LaurentPolynomial.monomial(tuple(exps))


def _prod(polys, k):
    out = one(k)
    for p in polys:
        out = out * p
    return out


def _pairs(k):
    return [(i, j) for i in range(1, k + 1) for j in range(i + 1, k + 1)]


@lru_cache(maxsize=None)
def vandermonde(k):
    return _prod([x(j, k) - x(i, k) for i, j in _pairs(k)], k)


@lru_cache(maxsize=None)
def delta(k):
    return _prod([1 - 2 * x(i, k) for i in range(1, k + 1)]
                 + [(x(j, k) - x(i, k)) * (x(j, k) + x(i, k) - 1) for i, j in _pairs(k)], k)


def phi_summand(k):
    """The product antisymmetrized over W(B_k) to produce phi(k), before the (-1)^k."""
    parts = [xb(i, k) ** (k - i) * x(i, k) ** k for i in range(1, k + 1)]
    parts += [(1 - x(i, k) * xb(j, k)) * (1 - xb(i, k) * xb(j, k)) for i, j in _pairs(k)]
    return _prod(parts, k)


@lru_cache(maxsize=None)
def phi(k):
    return antisymmetrize(phi_summand(k), "WBk", k) * (-1) ** k


def phi_literal(k):
    """phi(k) by summing all 2^k k! group elements one at a time."""
    return antisymmetrize_literal(phi_summand(k), "WBk", k) * (-1) ** k


def psi_summand(k):
    parts = [x(i, k) ** (k - i) * xb(i, k) ** k for i in range(1, k + 1)]
    parts += [(1 - xb(i, k) * x(j, k)) * (1 - x(i, k) * x(j, k)) for i, j in _pairs(k)]
    return _prod(parts, k)


@lru_cache(maxsize=None)
def psi(k):
    return antisymmetrize(psi_summand(k), "Sk", k)


@lru_cache(maxsize=None)
def omega(k):
    return exact_divide(phi(k), delta(k))


# blocks and the Jamie polynomial


def blocks_of(a):
    """Right ends r_1 < ... < r_l = k of the maximal runs of equal entries of a."""
    ends = [i + 1 for i in range(len(a) - 1) if a[i] != a[i + 1]]
    return tuple(ends + [len(a)])


def _check_blocks(blocks):
    blocks = tuple(blocks)
    if not blocks or any(b <= a for a, b in zip((0,) + blocks, blocks)):
        raise ValueError(f"block ends must be strictly increasing and positive: {blocks}")
    return blocks


def jamie(blocks):
    blocks = _check_blocks(blocks)
    k = blocks[-1]
    first = _prod([xb(r, k) for r in blocks], k)
    inner = []
    prev = 0
    for r in blocks:
        inner += [x(i, k) for i in range(prev + 2, r + 1)]
        prev = r
    return first - _prod([xb(i, k) for i in range(1, k + 1)] + inner, k)


def _u_factor(lo, hi, k):
    # prod over i in [lo, hi] of (1 - x_{i-1}) x_i
    return _prod([xb(i - 1, k) * x(i, k) for i in range(lo, hi + 1)], k)


def jamie_terms(blocks):
    """Summands of the telescoped double sum, keyed by p."""
    blocks = _check_blocks(blocks)
    k = blocks[-1]
    bars = _prod([xb(r, k) for r in blocks], k)
    starts = (0,) + blocks
    out = {}
    for j, r in enumerate(blocks):
        prefix = _prod([_u_factor(starts[h] + 2, blocks[h], k) for h in range(j)], k)
        for p in range(starts[j] + 2, r + 1):
            out[p] = bars * prefix * (1 - xb(p - 1, k) * x(p, k)) * _u_factor(p + 1, r, k)
    return out


def jamie_decomposition(blocks):
    blocks = _check_blocks(blocks)
    total = LaurentPolynomial({}, blocks[-1])
    for term in jamie_terms(blocks).values():
        total = total + term
    return total


def telescope_forward(us):
    """Right side of 1 - prod U_j = sum_j (prod_{h<j} U_h)(1 - U_j)."""
    total = 0
    prefix = 1
    for u in us:
        total = total + prefix * (1 - u)
        prefix = prefix * u
    return total


def telescope_backward(us):
    """Right side of 1 - prod U_i = sum_p (1 - U_p) prod_{h>p} U_h."""
    total = 0
    for p in range(len(us)):
        suffix = 1
        for u in us[p + 1:]:
            suffix = suffix * u
        total = total + (1 - us[p]) * suffix
    return total


# rational integrands


def _rf(num, factors):
    return RationalFunction.from_factors(num, [(f, m) for f, m in factors if m])


def _pair_factors(k, kinds):
    table = {
        "xx": lambda i, j: 1 - x(i, k) * x(j, k),
        "bx": lambda i, j: 1 - xb(i, k) * x(j, k),
        "xb": lambda i, j: 1 - x(i, k) * xb(j, k),
        "bb": lambda i, j: 1 - xb(i, k) * xb(j, k),
    }
    return [(table[t](i, j), 1) for i, j in _pairs(k) for t in kinds]


@lru_cache(maxsize=None)
def t_rational(k, n):
    factors = [(x(i, k), n + k + 1) for i in range(1, k + 1)]
    factors += [(xb(i, k), n + k + 1) for i in range(1, k + 1)]
    return _rf(one(k), factors + _pair_factors(k, ("xx", "bx", "xb", "bb")))


def magog_total(k, n):
    """CT gives the number of n x k Magog trapezoids."""
    factors = [(x(i, k), n + k - i - 1) for i in range(1, k + 1)]
    factors += [(xb(i, k), n + k + 1) for i in range(1, k + 1)]
    return _rf(delta(k), factors + _pair_factors(k, ("xx",)))


def magog_border(k, n, a):
    """CT gives C_k(n; a), the Magog count with prescribed right border a."""
    factors = [(x(i, k), a[i - 1] + k - i - 1) for i in range(1, k + 1)]
    factors += [(xb(i, k), k + n) for i in range(1, k + 1)]
    return _rf(delta(k), factors)


def george(k, n):
    """CT form of the Magog total obtained by summing C_k over the border."""
    num = delta(k) * mono([i for i in range(1, k + 1)])
    factors = [(x(i, k), n + k - 1) for i in range(1, k + 1)]
    factors += [(xb(i, k), k + n) for i in range(1, k + 1)]
    tail = one(k)
    for i in range(k, 0, -1):
        tail = tail * x(i, k)
        factors.append((1 - tail, 1))
    return _rf(num, factors)


def issai_lhs(k):
    """S_k antisymmetrization of x1 x2^2 .. xk^k / ((1-xk)(1-xk x_{k-1})...)."""
    num = mono([i for i in range(1, k + 1)])
    factors = []
    tail = one(k)
    for i in range(k, 0, -1):
        tail = tail * x(i, k)
        factors.append((1 - tail, 1))
    return antisymmetrize(_rf(num, factors), "Sk", k)


def issai_rhs(k):
    num = mono([1] * k) * vandermonde(k)
    factors = [(xb(i, k), 1) for i in range(1, k + 1)] + _pair_factors(k, ("xx",))
    return _rf(num, factors)


def magog_res(k, n):
    """Residuand (order x1..xk) for the Magog total."""
    factors = [(xb(i, k), n + k + 1) for i in range(1, k + 1)]
    factors += [(x(i, k), n + k - i) for i in range(1, k + 1)]
    return _rf(delta(k), factors + _pair_factors(k, ("xx",)))


def magog_res2(k, n):
    """Magog residuand rewritten with the fully symmetric T_{k,n}."""
    num = delta(k) * mono([i + 1 for i in range(1, k + 1)])
    for i, j in _pairs(k):
        num = num * (1 - xb(i, k) * x(j, k)) * (1 - x(i, k) * xb(j, k)) * (1 - xb(i, k) * xb(j, k))
    return t_rational(k, n) * num


def magog_avg_core(k):
    num = mono([i + 1 for i in range(1, k + 1)])
    for i, j in _pairs(k):
        num = num * (1 - xb(i, k) * x(j, k)) * (1 - x(i, k) * xb(j, k)) * (1 - xb(i, k) * xb(j, k))
    return num


@lru_cache(maxsize=None)
def magog_avg_numerator(k):
    return delta(k) * antisymmetrize(magog_avg_core(k), "WBk", k)


def magog_avg(k, n):
    """Residuand averaged over W(B_k); multiply its residue by magog_avg_scale(k)."""
    return t_rational(k, n) * magog_avg_numerator(k)


def magog_avg_scale(k):
    return Fraction(1, 2 ** k * factorial(k))


def gog_total(k, n):
    """CT gives the number of n x k Gog trapezoids."""
    factors = [(x(i, k), n) for i in range(1, k + 1)]
    factors += [(xb(i, k), n + i + 1) for i in range(1, k + 1)]
    return _rf(phi(k), factors + _pair_factors(k, ("xx", "bx")))


def gog_border(k, n, a):
    """CT gives H_k(n; a)."""
    factors = [(x(i, k), a[i - 1] - 1) for i in range(1, k + 1)]
    factors += [(xb(i, k), n + i) for i in range(1, k + 1)]
    return _rf(phi(k), factors + _pair_factors(k, ("xx", "bx")))


def gog_res(k, n):
    factors = [(x(i, k), n + 1) for i in range(1, k + 1)]
    factors += [(xb(i, k), n + i + 1) for i in range(1, k + 1)]
    return _rf(phi(k), factors + _pair_factors(k, ("xx", "bx")))


def gog_res2(k, n):
    num = phi(k) * _prod([xb(i, k) ** (k - i) * x(i, k) ** k for i in range(1, k + 1)], k)
    for i, j in _pairs(k):
        num = num * (1 - x(i, k) * xb(j, k)) * (1 - xb(i, k) * xb(j, k))
    return t_rational(k, n) * num


@lru_cache(maxsize=None)
def phi_squared(k):
    return phi(k) * phi(k)


def gog_avg(k, n):
    """Residuand T_{k,n} Phi_k^2; multiply its residue by gog_avg_scale(k)."""
    return t_rational(k, n) * phi_squared(k)


def gog_avg_scale(k):
    return Fraction((-1) ** k, 2 ** k * factorial(k))


def efes(k, a):
    """Residuand whose residue is invariant under W(B_k) when k >= a_1 >= ... >= a_k >= 2."""
    num = delta(k) * mono([k - a[i - 1] + i for i in range(1, k + 1)])
    factors = [(x(i, k), 2 * k) for i in range(1, k + 1)] + [(xb(i, k), 2 * k) for i in range(1, k + 1)]
    return _rf(num, factors)


def efes_monomial(k, a):
    return mono([k - a[i - 1] + i for i in range(1, k + 1)])


# specializations of the Gog = Magog identity


def l_summand(k):
    """x_i^2/(1-2x_i) times the pair quotients; the S_k-reduced core of the left side over Delta_k^2."""
    num = _prod([x(i, k) ** 2 for i in range(1, k + 1)], k)
    factors = [(1 - 2 * x(i, k), 1) for i in range(1, k + 1)]
    for i, j in _pairs(k):
        num = num * (1 - xb(i, k) * x(j, k)) * (1 - x(i, k) * xb(j, k)) * (1 - xb(i, k) * xb(j, k))
        factors.append((x(j, k) + x(i, k) - 1, 1))
    return RationalFunction.from_factors(num, factors)


@lru_cache(maxsize=None)
def l_signed_sum(k):
    """Sum of eps[l_summand] over all bar patterns eps; equals the left side over Delta_k^2."""
    if k == 0:
        return one(0)
    from .groups import SignedPermutation, act, sign_vectors
    base = l_summand(k)
    ident = tuple(range(1, k + 1))
    total = None
    for eps in sign_vectors(k):
        term = act(SignedPermutation(ident, eps), base)
        total = term if total is None else total + term
    return total.gcd_reduce().as_polynomial()


def l_normalized(k):
    """(-1)^k times l_signed_sum, the normalization under which L_k = Omega_k^2."""
    return l_signed_sum(k) * (-1) ** k


@lru_cache(maxsize=None)
def l_quotient(k):
    """Left side of Gog = Magog divided by Delta_k^2, as an exact polynomial."""
    if k == 0:
        return one(0)
    return exact_divide(magog_avg_numerator(k), delta(k) * delta(k))
