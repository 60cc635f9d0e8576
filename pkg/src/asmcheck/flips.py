"""Moving one bar flip through an iterated residue.

For a residuand f, a sign vector eps and a distinguished variable x_R
(left unbarred), the fraction is split in x_R into a polynomial part plus
simple-pole parts.  Each part is then tested separately for the property

    Res_order[h] == Res_order[h with x_R -> 1 - x_R].

Two residuands are handled: the Magog one (``magog``), with poles at
x_R = 1/z_i, and the Gog one (``gog``), which also has poles at
x_R = 1/(1 - z_i) for i < R and at 1 - x_R = 1/z_i for i > R.

Here z_j is x_j or 1 - x_j according to eps_j.
"""
from dataclasses import dataclass

from .algebra import LaurentPolynomial, RationalFunction, as_rational, substitute
from .groups import SignedPermutation, act
from . import kernels
from .series import res_iterated


def z(j, eps, k):
    return kernels.x(j, k) if eps[j - 1] == 1 else kernels.xb(j, k)


def zb(j, eps, k):
    return kernels.xb(j, k) if eps[j - 1] == 1 else kernels.x(j, k)


def with_unbarred(eps, R):
    eps = list(eps)
    eps[R - 1] = 1
    return tuple(eps)


def first_flip(pi, eps):
    """(u, R): the first position u in the order pi whose variable R = pi(u) is barred."""
    for u, r in enumerate(pi, start=1):
        if eps[r - 1] == -1:
            return u, r
    return None


def flipped(f, eps):
    """f(eps_1(x_1), ..., eps_k(x_k))."""
    k = len(eps)
    return act(SignedPermutation(tuple(range(1, k + 1)), tuple(eps)), f)


def _prod(items, k):
    out = kernels.one(k)
    for p in items:
        out = out * p
    return out


def _drop(poly_k2, k, skip):
    """Place a polynomial in k-2 variables onto the variables other than those in skip."""
    keep = [j for j in range(1, k + 1) if j not in skip]
    return poly_k2.rename(keep, k) if keep else LaurentPolynomial.constant(poly_k2.constant_value(), k)


@dataclass
class Pole:
    """A simple-pole part coeff / factor, with factor linear in x_R."""
    kind: str  # "A" or "B"
    i: int
    factor: LaurentPolynomial
    root: RationalFunction
    coeff: RationalFunction = None


def _recip(p):
    return RationalFunction(LaurentPolynomial.constant(1, p.nvars), p)


def magog_poles(k, R, eps):
    out = []
    for i in range(1, k + 1):
        if i == R:
            continue
        zi = z(i, eps, k)
        out.append(Pole("B", i, 1 - zi * kernels.x(R, k), _recip(zi)))
    return out


def gog_poles(k, R, eps):
    out = []
    for i in range(1, k + 1):
        if i != R:
            zi = z(i, eps, k)
            out.append(Pole("A", i, 1 - zi * kernels.x(R, k), _recip(zi)))
    for i in range(1, R):
        zbi = zb(i, eps, k)
        out.append(Pole("B", i, 1 - zbi * kernels.x(R, k), _recip(zbi)))
    for i in range(R + 1, k + 1):
        zi = z(i, eps, k)
        # 1 - x_R = 1/z_i
        out.append(Pole("B", i, 1 - zi * kernels.xb(R, k), RationalFunction(zi - 1, zi)))
    return out


def magog_core(k, R, eps):
    """Delta_k at (z_1, .., x_R, .., z_k) over prod_{i != R} (1 - z_i x_R)."""
    num = flipped(kernels.delta(k), eps)
    return RationalFunction.from_factors(num, [(p.factor, 1) for p in magog_poles(k, R, eps)])


def gog_core(k, R, eps):
    num = flipped(kernels.phi(k), eps)
    return RationalFunction.from_factors(num, [(p.factor, 1) for p in gog_poles(k, R, eps)])


def split(core, R, poles):
    """Fill in each pole's coefficient and return (polynomial part, poles)."""
    rest = as_rational(core)
    for p in poles:
        g = as_rational(core).times_poly(p.factor).cancel()
        p.coeff = substitute(g, {R: p.root}).gcd_reduce()
        rest = rest - p.coeff.divide_by_poly(p.factor)
    return rest.gcd_reduce(), poles


def uses_var(f, var):
    f = as_rational(f)
    if var <= f.num.nvars and any(e[var - 1] for e in f.num.terms):
        return True
    return any(var <= q.nvars and any(e[var - 1] for e in q.terms) for q in f.den)


def polynomial_in(f, var):
    """Degree of f in x_var if f is a polynomial in x_var over rational functions of the rest, else None."""
    f = as_rational(f).gcd_reduce()
    if any(uses_var(q, var) for q in f.den):
        return None
    if f.num.is_zero():
        return 0
    lo = f.num.min_degree(var)
    if lo is not None and lo < 0:
        return None
    return f.num.degree(var) or 0


# closed forms for the pole coefficients, up to an overall sign


def delta_at_pole(k, R, i, eps):
    """Delta_k with x_R replaced by 1/z_i, in the form with Delta_{k-2} pulled out."""
    zi, zbi = z(i, eps, k), zb(i, eps, k)
    num = (zi - 2) * (1 - 2 * zi) * (1 - zi * zi) * (1 - zi * zbi) * _drop(kernels.delta(k - 2), k, (i, R))
    for j in range(1, k + 1):
        if j in (i, R):
            continue
        zj, zbj = z(j, eps, k), zb(j, eps, k)
        num = num * (1 - zi * zj) * (1 - zi * zbj) * (zj - zi) * (zj + zi - 1)
    return RationalFunction.from_factors(num, [(zi, 2 * k - 1)])


def magog_coeff_closed(k, R, i, eps):
    zi, zbi = z(i, eps, k), zb(i, eps, k)
    num = (zi - 2) * (1 - 2 * zi) * (1 - zi * zi) * (1 - zi * zbi) * _drop(kernels.delta(k - 2), k, (i, R))
    for j in range(1, k + 1):
        if j in (i, R):
            continue
        zj, zbj = z(j, eps, k), zb(j, eps, k)
        num = num * (1 - zi * zj) * (1 - zi * zbj) * (zj + zi - 1)
    return RationalFunction.from_factors(num, [(zi, k + 1)])


def phi_at_pole(k, R, i, eps):
    zi, zbi = z(i, eps, k), zb(i, eps, k)
    num = (zi - 2) * (1 - 2 * zi) * (1 - zi * zi) * (1 - zi * zbi) * _drop(kernels.phi(k - 2), k, (i, R))
    for j in range(1, k + 1):
        if j in (i, R):
            continue
        zj, zbj = z(j, eps, k), zb(j, eps, k)
        num = num * (1 - zi * zj) * (1 - zbi * zj) * (1 - zi * zbj) * (1 - zbi * zbj) * (zj - zi) * (zj + zi - 1)
    return RationalFunction.from_factors(num, [(zi, 3 * k - 3)])


def gog_coeff_closed(kind, k, R, i, eps):
    zi, zbi = z(i, eps, k), zb(i, eps, k)
    phi2 = _drop(kernels.phi(k - 2), k, (i, R))
    others = [j for j in range(1, k + 1) if j not in (i, R)]
    Z = {j: z(j, eps, k) for j in others}
    ZB = {j: zb(j, eps, k) for j in others}
    if kind == "A" and i < R:
        num = (zi - 2) * (1 - zi * zi) * (1 - zi * zbi) * phi2
        num = num * _prod([(1 - zi * Z[j]) * (1 - zbi * Z[j]) * (1 - zi * ZB[j]) for j in others], k)
        num = num * _prod([Z[j] + zi - 1 for j in others if j > R], k)
        num = num * _prod([1 - zbi * ZB[j] for j in others if j < R], k)
        den = (zi, k)
    elif kind == "A":
        num = (1 - 2 * zi) * (1 - zi * zi) * (1 - zi * zbi) * phi2
        num = num * _prod([(1 - zi * Z[j]) * (1 - zbi * Z[j]) * (1 - zi * ZB[j]) for j in others], k)
        num = num * _prod([Z[j] + zi - 1 for j in others if j > R], k)
        num = num * _prod([1 - zbi * ZB[j] for j in others if j < R], k)
        den = (zi, k + 1)
    elif i < R:
        num = (zbi - 2) * (1 - zbi * zbi) * (1 - zi * zbi) * phi2
        num = num * _prod([(1 - zi * Z[j]) * (1 - zbi * Z[j]) * (1 - zbi * ZB[j]) for j in others], k)
        num = num * _prod([Z[j] - zi for j in others if j > R], k)
        num = num * _prod([1 - zi * ZB[j] for j in others if j < R], k)
        den = (zbi, k)
    else:
        num = (1 - 2 * zi) * (1 - zi * zi) * (1 - zi * zbi) * phi2
        num = num * _prod([(1 - zi * Z[j]) * (1 - zi * ZB[j]) * (zi + Z[j] - 1) for j in others], k)
        num = num * _prod([1 - zbi * Z[j] for j in others if j > R], k)
        num = num * _prod([zi - Z[j] for j in others if j < R], k)
        den = (zi, k + 1)
    return RationalFunction.from_factors(num, [den])


def sign_match(actual, closed):
    """+1 or -1 if actual equals closed up to that sign, else None."""
    if actual == closed:
        return 1
    if actual == -closed:
        return -1
    return None


# the residuand split with its full prefactor


def magog_prefactor(k, n, R, eps):
    """Everything in the flipped Magog residuand outside the braces, as (x_R part, rest)."""
    xr = RationalFunction.from_factors(kernels.one(k), [(kernels.x(R, k), n + k - R), (kernels.xb(R, k), n + k + 1)])
    factors = []
    for j in range(1, k + 1):
        if j != R:
            factors += [(z(j, eps, k), n + k - j), (zb(j, eps, k), n + k + 1)]
    for r, s in kernels._pairs(k):
        if R not in (r, s):
            factors.append((1 - z(r, eps, k) * z(s, eps, k), 1))
    return xr, RationalFunction.from_factors(kernels.one(k), factors)


def gog_prefactor(k, n, R, eps):
    xr = RationalFunction.from_factors(kernels.one(k), [(kernels.x(R, k), n + 1), (kernels.xb(R, k), n + R + 1)])
    factors = []
    for j in range(1, k + 1):
        if j != R:
            factors += [(z(j, eps, k), n + 1), (zb(j, eps, k), n + j + 1)]
    for r, s in kernels._pairs(k):
        if R not in (r, s):
            factors.append((1 - z(r, eps, k) * z(s, eps, k), 1))
            factors.append((1 - zb(r, eps, k) * z(s, eps, k), 1))
    return xr, RationalFunction.from_factors(kernels.one(k), factors)


@dataclass
class Decomposition:
    family: str
    k: int
    n: int
    R: int
    eps: tuple
    residuand: RationalFunction
    x_part: RationalFunction
    poly_part: RationalFunction
    poles: list
    x_part_exps: tuple = (0, 0)

    def parts(self):
        """(label, h) for every summand of the decomposition."""
        out = [("P", self.poly_part * self.x_part)]
        for p in self.poles:
            out.append((f"{p.kind}{p.i}", p.coeff.divide_by_poly(p.factor)))
        return out


def decompose(family, k, n, R, eps):
    """Split the residuand at (z_1, .., x_R, .., z_k) around x_R; poles carry the prefactor."""
    eps = with_unbarred(eps, R)
    if family == "magog":
        core, poles = magog_core(k, R, eps), magog_poles(k, R, eps)
        xr, rest = magog_prefactor(k, n, R, eps)
        exps = (n + k - R, n + k + 1)
        residuand = flipped(kernels.magog_res(k, n), eps)
    else:
        core, poles = gog_core(k, R, eps), gog_poles(k, R, eps)
        xr, rest = gog_prefactor(k, n, R, eps)
        exps = (n + 1, n + R + 1)
        residuand = flipped(kernels.gog_res(k, n), eps)
    poly, poles = split(core, R, poles)
    for p in poles:
        p.coeff = (p.coeff * rest * xr).gcd_reduce()
    return Decomposition(family, k, n, R, eps, residuand, xr, (poly * rest).gcd_reduce(), poles, exps)


def hadas(h, R, order):
    """Residues of h and of h with x_R barred, in the given order."""
    a = res_iterated(h, order)
    b = res_iterated(as_rational(h).bar(R), order)
    return a, b


def tilde_denominator(D, p):
    """The monomial-type denominator the tilde coefficient of pole p is claimed to have."""
    k, n, R, i, eps = D.k, D.n, D.R, p.i, D.eps
    zi, zbi = z(i, eps, k), zb(i, eps, k)
    if D.family == "magog":
        parts = [(zi, n + 2 * k - i + 1), (zbi, n + k + 1)]
    elif p.kind == "A" and i < R:
        parts = [(zi, n + k + 1), (zbi, n + i + 1)]
    elif p.kind == "B" and i < R:
        parts = [(zi, n + 1), (zbi, n + i + k + 1)]
    else:
        parts = [(zi, n + k + 2), (zbi, n + i + 1)]
    return parts


def tilde_shape(D, p):
    """Degree in x_i of coeff * claimed denominator, or None if it is not a polynomial in x_i free of x_R."""
    h = as_rational(p.coeff)
    for f, m in [(kernels.x(D.R, D.k), D.x_part_exps[0]), (kernels.xb(D.R, D.k), D.x_part_exps[1])] + tilde_denominator(D, p):
        h = h.times_poly(f, m)
    h = h.gcd_reduce()
    if uses_var(h, D.R):
        return None
    return polynomial_in(h, p.i)


def poly_degree_bound(D):
    return D.k if D.family == "magog" else 2 * D.k - 1


def tilde_degree_bound(D):
    """Literal bound on the x_i degree of the tilde numerators (stated only for the Gog split)."""
    return 2 * D.k + 1 if D.family == "gog" else None
