"""Constant-term and residue extraction.

Two independent routes:

* ``ct_fast`` expands P/Q as a truncated multivariate power series when the
  denominator has a nonzero constant term (after pulling out a monomial).
* ``ct_iterated`` / ``res_iterated`` peel one variable at a time, expanding
  in that variable with coefficients that are rational functions of the rest.
  This route needs no admissibility and is order sensitive in general.
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .algebra import (
    LaurentPolynomial,
    RationalFunction,
    _normalize_factor,
    as_rational,
    substitute,
)
from .errors import AdmissibilityError, OrderError


def _var_index(v):
    if isinstance(v, str):
        if not v.startswith("x") or not v[1:].isdigit():
            raise ValueError(f"bad variable name {v!r}")
        return int(v[1:])
    return int(v)


def _uses(p, var):
    i = var - 1
    return i < p.nvars and any(e[i] for e in p.terms)


# univariate route


def coefficient_univariate(f, var, c):
    """Coefficient of x_var**c in the Laurent expansion of f around x_var = 0."""
    f = as_rational(f).cancel()
    var = _var_index(var)
    n = max(f.nvars, var)
    zero = RationalFunction.make(LaurentPolynomial({}, n), {})
    if f.is_zero():
        return zero
    num = f.num.padded(n)
    moving = [(k.padded(n), m) for k, m in f.den.items() if _uses(k, var)]
    still = {k.padded(n): m for k, m in f.den.items() if not _uses(k, var)}
    groups = num.coeffs_in(var)
    if not moving:
        part = groups.get(c)
        if part is None:
            return zero
        return RationalFunction.make(part, still)
    emin = min(groups)
    top = c - emin
    if top < 0:
        return zero
    D = LaurentPolynomial.constant(1, n)
    for k, m in moving:
        D = D * k ** m
    dj = D.coeffs_in(var)
    d0 = dj.pop(0)
    deg = max(dj) if dj else 0
    # r[t] * d0**-(t+1) is the t-th series coefficient of 1/D
    r = [LaurentPolynomial.constant(1, n)]
    d0pow = [LaurentPolynomial.constant(1, n)]
    for t in range(1, top + 1):
        while len(d0pow) < min(t, deg):
            d0pow.append(d0pow[-1] * d0)
        acc = LaurentPolynomial({}, n)
        for j in range(1, min(t, deg) + 1):
            if j in dj:
                acc = acc + dj[j] * r[t - j] * d0pow[j - 1]
        r.append(-acc)
    while len(d0pow) <= top:
        d0pow.append(d0pow[-1] * d0)
    numer = LaurentPolynomial({}, n)
    for e, ne in groups.items():
        t = c - e
        if t >= 0:
            numer = numer + ne * r[t] * d0pow[top - t]
    out = RationalFunction.make(numer, still)
    for k, m in moving:
        out = out.divide_by_poly(k.substitute_values({var: 0}), m * (top + 1))
    return out.cancel()


def ct_univariate(f, var):
    return coefficient_univariate(f, var, 0)


def res_univariate(f, var):
    return coefficient_univariate(f, var, -1)


def _scalar(f):
    f = as_rational(f).cancel()
    if f.den or not f.num.is_constant():
        f = f.gcd_reduce()
    return f.constant_value()


def _order_list(order, nvars):
    if order is None:
        return list(range(1, nvars + 1))
    return [_var_index(v) for v in order]


def ct_iterated(f, order=None):
    """Iterated constant term; the last variable of ``order`` is extracted first."""
    f = as_rational(f)
    for v in reversed(_order_list(order, f.nvars)):
        f = coefficient_univariate(f, v, 0)
    return _scalar(f)


def res_iterated(f, order=None):
    """Iterated residue, same order convention as ct_iterated."""
    f = as_rational(f)
    for v in reversed(_order_list(order, f.nvars)):
        f = coefficient_univariate(f, v, -1)
    return _scalar(f)


# truncated multivariate route


@dataclass(frozen=True)
class AdmissibleDecomposition:
    gamma: tuple
    P: LaurentPolynomial
    Q: LaurentPolynomial
    factors: tuple = ()


def admissible_decompose(f, nvars=None):
    """Write f = P / (x^gamma * Q) with P a polynomial and Q(0) > 0."""
    f = as_rational(f).cancel()
    n = max(f.nvars, nvars or 0)
    num = f.num.padded(n)
    factors = []
    for k, m in f.den.items():
        k = k.padded(n)
        c0 = k.coefficient((0,) * n)
        if not c0:
            raise AdmissibilityError(f"denominator factor {k} vanishes at the origin")
        if c0 < 0:
            k = -k
            if m % 2:
                num = -num
        factors.append((k, m))
    low = num.min_exponents() if num.terms else (0,) * n
    gamma = tuple(max(0, -x) for x in low)
    P = num.shift(gamma)
    Q = LaurentPolynomial.constant(1, n)
    for k, m in factors:
        Q = Q * k ** m
    return AdmissibleDecomposition(gamma, P, Q, tuple(factors))


class TruncatedSeries:
    """Dense power series truncated to the box 0 <= e_i <= caps_i."""

    def __init__(self, caps, coeffs=None):
        self.caps = tuple(caps)
        self.dims = [c + 1 for c in self.caps]
        size = 1
        self.strides = []
        for d in reversed(self.dims):
            self.strides.append(size)
            size *= d
        self.strides.reverse()
        self.size = size
        self.coeffs = coeffs if coeffs is not None else [0] * size

    def index(self, e):
        return sum(x * s for x, s in zip(e, self.strides))

    def get(self, e):
        if any(x < 0 or x > c for x, c in zip(e, self.caps)):
            return 0
        return self.coeffs[self.index(e)]

    @classmethod
    def one(cls, caps):
        s = cls(caps)
        s.coeffs[0] = 1
        return s

    def divide(self, F):
        """Series of self / F for a polynomial F with nonzero constant term."""
        terms = [(e, c) for e, c in F.terms.items() if all(x <= cap for x, cap in zip(e, self.caps))]
        zero = tuple(0 for _ in self.caps)
        f0 = F.terms[zero]
        rest = [(self.index(e), e, c) for e, c in terms if e != zero]
        out = list(self.coeffs)
        unit = f0 in (1, -1)
        # lexicographic order over the box: e - f precedes e for f >= 0
        for idx, e in enumerate(product(*(range(d) for d in self.dims))):
            v = out[idx]
            for off, fe, fc in rest:
                if all(a >= b for a, b in zip(e, fe)):
                    w = out[idx - off]
                    if w:
                        v -= fc * w
            out[idx] = (v * f0 if unit else Fraction(v) / f0) if v else 0
        return TruncatedSeries(self.caps, out)


def _power_ok(caps, key):
    # a factor whose every nonconstant term exceeds the box contributes nothing
    return any(all(x <= c for x, c in zip(e, caps)) and any(e) for e in key.terms)


def series_inverse(factors, caps):
    """Truncated series of 1 / prod(F**m) over (F, m) pairs."""
    s = TruncatedSeries.one(caps)
    for F, m in factors:
        if not _power_ok(caps, F):
            c0 = F.terms[tuple(0 for _ in caps)]
            s = TruncatedSeries(caps, [Fraction(x) / c0 ** m if x else 0 for x in s.coeffs])
            continue
        for _ in range(m):
            s = s.divide(F)
    return s


def _ct_from_series(P, gamma, s):
    total = 0
    for e, c in P.terms.items():
        t = tuple(g - x for g, x in zip(gamma, e))
        if min(t, default=0) >= 0:
            v = s.get(t)
            if v:
                total += c * v
    if isinstance(total, Fraction) and total.denominator == 1:
        total = total.numerator
    return total


def ct_fast(f, order=None):
    """Constant term of an admissible rational function by truncated expansion."""
    d = admissible_decompose(f)
    s = series_inverse(d.factors, d.gamma)
    return _ct_from_series(d.P, d.gamma, s)


def res_fast(f, order=None):
    f = as_rational(f)
    n = f.nvars if order is None else max(f.nvars, max(_var_index(v) for v in order))
    return ct_fast(f.times_poly(LaurentPolynomial.monomial((1,) * n)), order)


class CoefficientFamily:
    """Constant terms of N / (x^a * Q) for many shifts a, sharing one expansion of 1/Q."""

    def __init__(self, numerator, factors, caps):
        self.numerator = numerator
        self.factors = [(F, m) for F, m in factors]
        for F, _ in self.factors:
            if not F.coefficient((0,) * F.nvars):
                raise AdmissibilityError("factor vanishes at the origin")
        self.caps = tuple(caps)
        self.series = series_inverse(self.factors, self.caps)
        low = numerator.min_exponents()
        self.low = low

    def ct(self, a):
        """Constant term of numerator / (x^a * Q)."""
        a = tuple(a)
        if any(x > c for x, c in zip(a, self.caps)):
            raise ValueError("shift exceeds the expansion box")
        total = 0
        for e, c in self.numerator.terms.items():
            t = tuple(g - x for g, x in zip(a, e))
            if min(t) >= 0:
                v = self.series.coeffs[self.series.index(t)]
                if v:
                    total += c * v
        if isinstance(total, Fraction) and total.denominator == 1:
            total = total.numerator
        return total


def constant_term(f, order=None):
    """ct_fast when admissible, otherwise the iterated route."""
    try:
        return ct_fast(f, order)
    except AdmissibilityError:
        return ct_iterated(f, order)


def residue(f, order=None):
    try:
        return res_fast(f, order)
    except AdmissibilityError:
        return res_iterated(f, order)


# simple poles


def pole_coefficient(f, var, point, factor=None):
    """Residue-style coefficient of a simple pole of f in x_var at x_var = point.

    With ``factor`` given, returns (factor * f) at the point.  Otherwise the
    pole's factor is normalized as (1 - var/point), falling back to
    (var - point) when point is 0.  A point where f has no pole gives 0.
    """
    f = as_rational(f).cancel()
    var = _var_index(var)
    bind = {var: point}
    if factor is not None:
        g = f.times_poly(factor).cancel()
        return _checked_subst(g, bind)
    vanishing = []
    for k, m in f.den.items():
        if not _uses(k, var):
            continue
        if substitute(k, bind).cancel().is_zero():
            vanishing.append((k, m))
    if not vanishing:
        return _no_pole(f)
    if len(vanishing) > 1 or vanishing[0][1] > 1:
        f = f.gcd_reduce()
        vanishing = [(k, m) for k, m in f.den.items() if _uses(k, var) and substitute(k, bind).cancel().is_zero()]
        if len(vanishing) > 1 or (vanishing and vanishing[0][1] > 1):
            raise OrderError("pole of order greater than one")
        if not vanishing:
            return _no_pole(f)
    G, _ = vanishing[0]
    slope = substitute(G.derivative(var), bind).cancel()
    if slope.is_zero():
        raise OrderError("repeated root inside a denominator factor")
    at = _checked_subst(f.times_poly(G).cancel(), bind)
    general = at / slope
    point = as_rational(point)
    if point.is_zero():
        return general
    return -general / point


def _no_pole(f):
    return RationalFunction(LaurentPolynomial.constant(0, f.nvars))


def _checked_subst(g, bind):
    try:
        return substitute(g, bind)
    except Exception as exc:
        from .errors import PoleError
        if isinstance(exc, PoleError):
            raise OrderError("pole survives multiplication by the chosen factor") from exc
        raise
