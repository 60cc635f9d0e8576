"""Registry of named verification checks.

Each check is a function of a few small parameters that returns
``(ok, witness)``.  ``run_check`` wraps one call into a CheckResult;
``run_all`` walks every registered check over its default grid.

Ids follow the S-numbering used by the identities they verify, so
``S15`` is the polynomial identity at the heart of the final step and
``S1311`` a closed form needed on the way.
"""
import fnmatch
import inspect
import json
import re
import time
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass
from itertools import product

from . import flips, kernels, objects, recurrences
from .algebra import LaurentPolynomial, RationalFunction, as_rational, serialize, substitute
from .errors import RegistryError, UsageError
from .groups import SignedPermutation, act, hyperoctahedral
from .series import constant_term, res_iterated

WITNESS_LIMIT = 240


@dataclass
class CheckResult:
    id: str
    params: dict
    status: str
    witness: str
    elapsed: float = 0.0

    @property
    def passed(self):
        return self.status != "fail"

    def record(self):
        return {
            "id": self.id,
            "params": {k: _plain(v) for k, v in self.params.items()},
            "status": self.status,
            "witness": self.witness,
            "elapsed_ms": round(self.elapsed * 1000, 3),
        }


@dataclass(frozen=True)
class Check:
    id: str
    func: object
    grid: object
    summary: str
    heavy: object = None


REGISTRY = {}


class Skip(Exception):
    """Raised inside a check when the parameters leave nothing to verify."""


def register(id, grid, summary, heavy=None):
    def wrap(func):
        REGISTRY[id] = Check(id, func, grid, summary, heavy)
        return func
    return wrap


# parameter handling


def _plain(v):
    if isinstance(v, SignedPermutation):
        return format_element(v)
    if isinstance(v, tuple):
        return list(v)
    return v


def format_element(g):
    signs = "".join("+" if e == 1 else "-" for e in g.eps)
    return f"[{','.join(map(str, g.pi))}]{signs}"


def format_signs(eps):
    return "".join("+" if e == 1 else "-" for e in eps)


def parse_element(text):
    """'[2,1,3]+-+' -> SignedPermutation((2,1,3), (1,-1,1))."""
    if isinstance(text, SignedPermutation):
        return text
    if isinstance(text, tuple) and len(text) == 2:
        return SignedPermutation(tuple(text[0]), tuple(text[1]))
    m = re.fullmatch(r"\s*\[([\d,\s]+)\]\s*([+-]+)\s*", str(text))
    if not m:
        raise UsageError(f"bad group element {text!r}; expected like [2,1,3]+-+")
    pi = tuple(int(v) for v in m.group(1).split(","))
    try:
        return SignedPermutation(pi, parse_signs(m.group(2)))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def parse_signs(text):
    if isinstance(text, (tuple, list)):
        out = tuple(int(v) for v in text)
    else:
        if not re.fullmatch(r"[+-]+", str(text)):
            raise UsageError(f"bad sign vector {text!r}; expected like +-+")
        out = tuple(1 if c == "+" else -1 for c in str(text))
    if any(v not in (1, -1) for v in out):
        raise UsageError(f"bad sign vector {text!r}")
    return out


def parse_vector(text):
    if isinstance(text, (tuple, list)):
        return tuple(int(v) for v in text)
    try:
        return tuple(int(v) for v in str(text).split(","))
    except ValueError:
        raise UsageError(f"bad vector {text!r}; expected like 3,2,2") from None


def _need(cond, msg):
    if not cond:
        raise UsageError(msg)


def _kn(k, n):
    _need(isinstance(k, int) and k >= 1, f"k must be a positive integer, got {k!r}")
    _need(isinstance(n, int) and n >= k, f"n must be an integer with n >= k, got n={n!r} k={k}")


def _k(k, lo=1):
    _need(isinstance(k, int) and k >= lo, f"k must be an integer >= {lo}, got {k!r}")


def _clip(text):
    text = str(text)
    return text if len(text) <= WITNESS_LIMIT else text[:WITNESS_LIMIT] + "..."


def _same(a, b):
    return (as_rational(a) - as_rational(b)).gcd_reduce().is_zero()


def _difference(a, b):
    return _clip("difference " + serialize((as_rational(a) - as_rational(b)).gcd_reduce()))


def _first_failure(items):
    """items: iterable of (label, lhs, rhs); returns (ok, witness)."""
    count = 0
    for label, lhs, rhs in items:
        count += 1
        if lhs != rhs:
            return False, _clip(f"{label}: {lhs} != {rhs}")
    return True, f"{count} points agree"


def _pt(n, a):
    return f"{n};{','.join(map(str, a))}"


# grids


def _grid_kn(kmax, nmax, kmin=1, nmin_shift=0):
    def grid(max_k, max_n, heavy=False):
        return [{"k": k, "n": n}
                for k in range(kmin, min(kmax, max_k) + 1)
                for n in range(k + nmin_shift, min(nmax, max_n) + 1)]
    return grid


def _grid_k(kmax, kmin=1):
    def grid(max_k, max_n, heavy=False):
        return [{"k": k} for k in range(kmin, min(kmax, max_k) + 1)]
    return grid


def _grid_none(max_k, max_n, heavy=False):
    return [{}]


# fixed group elements for the symbolic residue checks
ELEMENTS_3 = ("[1,2,3]+++", "[2,1,3]+++", "[3,1,2]-++", "[1,3,2]+-+", "[2,3,1]--+", "[3,2,1]---")


def elements(k):
    if k <= 2:
        return [format_element(g) for g in hyperoctahedral(k)]
    if k == 3:
        return list(ELEMENTS_3)
    return []


def _grid_elements(flip_only, has_part=None):
    def grid(max_k, max_n, heavy=False):
        out = []
        for k in range(1, min(3, max_k) + 1):
            if k == 3 and not heavy:
                continue
            ns = [3] if k == 3 else range(max(k, 2), min(4, max_n) + 1)
            for n in ns:
                if n > max_n:
                    continue
                for g in elements(k):
                    ff = flips.first_flip(*_pe(g))
                    if flip_only and ff is None:
                        continue
                    if has_part is not None and not has_part(k, ff[1]):
                        continue
                    out.append({"k": k, "n": n, "g": g})
        return out
    return grid


def _pe(g):
    g = parse_element(g)
    return g.pi, g.eps


def _grid_split(max_k, max_n, heavy=False):
    out = []
    for k in range(2, min(3, max_k) + 1):
        if k == 3 and not heavy:
            continue
        ns = [3] if k == 3 else range(2, min(4, max_n) + 1)
        for n in ns:
            if n > max_n:
                continue
            for R in range(1, k + 1):
                for eps in product((1, -1), repeat=k):
                    if eps[R - 1] == -1:
                        out.append({"k": k, "n": n, "eps": format_signs(eps), "R": R})
    return out


def _grid_kR(kmax):
    def grid(max_k, max_n, heavy=False):
        return [{"k": k, "R": R} for k in range(2, min(kmax, max_k) + 1) for R in range(1, k + 1)]
    return grid


def _grid_kRi(kmax):
    def grid(max_k, max_n, heavy=False):
        return [{"k": k, "R": R, "i": i}
                for k in range(2, min(kmax, max_k) + 1)
                for R in range(1, k + 1) for i in range(1, k + 1) if i != R]
    return grid


def _efes_vectors(k):
    return [a for a in objects._nonincreasing_points(k, k, lambda i: 2)]


def _grid_efes(max_k, max_n, heavy=False):
    return [{"k": k, "a": ",".join(map(str, a))} for k in range(2, min(3, max_k) + 1) for a in _efes_vectors(k)]


# Act I: the Magog side


@register("S1", _grid_kn(3, 5), "Magog and Gog trapezoid counts agree")
def s1(k, n):
    _kn(k, n)
    b, m = objects.b_brute(k, n), objects.m_brute(k, n)
    return b == m, f"b={b} m={m}"


@register("S11", _grid_kn(3, 5), "constant term of the Magog total equals the Magog count")
def s11(k, n):
    _kn(k, n)
    ct, b = constant_term(kernels.magog_total(k, n)), objects.b_brute(k, n)
    return ct == b, f"ct={ct} b={b}"


@register("S111", _grid_kn(3, 5), "border constant terms C_k equal Magog border counts B_k")
def s111(k, n):
    _kn(k, n)
    return _first_failure((_pt(n, a), recurrences.c_value(k, n, a), recurrences.magog_brute(k, n, a))
                          for a in objects.bar_land_of_magog(k, n))


def _c_any(k, n, a):
    try:
        return recurrences.c_value(k, n, a)
    except ValueError:
        return constant_term(kernels.magog_border(k, n, a))


def _magog_conditions(F, k, n):
    """(label, lhs, rhs) for the recurrence and boundary conditions of a Magog-side table F."""
    for a in objects.bar_land_of_magog(k, n):
        p = _pt(n, a)
        for i in range(1, k):
            if a[i - 1] - a[i] == -1:
                yield f"1_{i} at {p}", F(k, n, a), 0
        if a[-1] == 0:
            yield f"1_{k} at {p}", F(k, n, a), 0
        if a[0] == n + 1:
            yield f"2 at {p}", F(k, n, a), 0
        if n == k and k > 1:
            yield f"3 at {p}", F(k, n, a), F(k - 1, k, a[:-1]) * (1 if a[-1] == 1 else 0)
        if n == k == 1:
            yield f"4 at {p}", F(1, 1, a), 1 if a == (1,) else 0
    if n > k:
        diff = recurrences.full_difference(k)
        for a in objects.extended_land_of_magog(k, n):
            lhs = recurrences.apply_operator(diff, lambda m, b: F(k, m, b), (n, a))
            yield f"PDE at {_pt(n, a)}", lhs, F(k, n - 1, a)


@register("S1111all", _grid_kn(3, 5), "Ekhad recurrence, the Magog partial difference equation and B1-B4")
def s1111all(k, n):
    _kn(k, n)

    def items():
        yield from _magog_conditions(recurrences.magog_brute, k, n)
        if n > k:
            for a in objects.land_of_magog(k, n):
                ok, (lhs, rhs) = recurrences.check_ekhad(k, n, a)
                yield f"Ekhad at {_pt(n, a)}", lhs, rhs
    return _first_failure(items())


@register("S1112", _grid_k(3), "C1-C4 and the difference equation for the border constant terms (n = k..k+2)")
def s1112(k):
    _k(k)

    def items():
        for n in range(k, k + 3):
            yield from _magog_conditions(_c_any, k, n)
    return _first_failure(items())


@register("S11121", _grid_efes, "residue of the Efes residuand is invariant under all signed permutations")
def s11121(k, a):
    _k(k, 2)
    a = parse_vector(a)
    _need(len(a) == k and k >= a[0] and all(x >= y for x, y in zip(a, a[1:])) and a[-1] >= 2,
          f"need k >= a_1 >= ... >= a_k >= 2, got a={a}")
    f = kernels.efes(k, a)
    base = res_iterated(f)
    for g in hyperoctahedral(k):
        v = res_iterated(act(g, f))
        if v != base:
            return False, f"g={format_element(g)}: res={v} base={base}"
    return True, f"res={base} for all {len(list(hyperoctahedral(k)))} images"


@register("S11122", _grid_efes, "the unsigned group sum of the Efes residuand vanishes identically")
def s11122(k, a):
    _k(k, 2)
    a = parse_vector(a)
    _need(len(a) == k and k >= a[0] and all(x >= y for x, y in zip(a, a[1:])) and a[-1] >= 2,
          f"need k >= a_1 >= ... >= a_k >= 2, got a={a}")
    f = kernels.efes(k, a)
    total = None
    for g in hyperoctahedral(k):
        t = act(g, f)
        total = t if total is None else total + t
    total = total.gcd_reduce()
    if total.is_zero():
        return True, "sum is 0"
    return False, _clip("sum " + serialize(total))


@register("S1113", _grid_kn(3, 5), "tabulated solution of the Magog recurrence equals B_k")
def s1113(k, n):
    _kn(k, n)
    X = recurrences.tabulate_X(k, n)
    return _first_failure((_pt(m, a), X[(m, a)], recurrences.magog_brute(k, m, a)) for m, a in X.points())


@register("S112", _grid_kn(3, 5), "George constant term equals the Magog count")
def s112(k, n):
    _kn(k, n)
    ct, b = constant_term(kernels.george(k, n)), objects.b_brute(k, n)
    return ct == b, f"ct={ct} b={b}"


@register("S113", _grid_k(4), "Issai antisymmetrization identity")
def s113(k):
    _k(k)
    lhs, rhs = kernels.issai_lhs(k), kernels.issai_rhs(k)
    if _same(lhs, rhs):
        return True, "LHS-RHS = 0"
    return False, _difference(lhs, rhs)


# Act II: the Gog side


@register("S12", _grid_kn(3, 5), "constant term of the Gog total equals the Gog count")
def s12(k, n):
    _kn(k, n)
    ct, m = constant_term(kernels.gog_total(k, n)), objects.m_brute(k, n)
    return ct == m, f"ct={ct} m={m}"


def _gog_points(k, n):
    """The extended Gog region, plus all Land points once n > k."""
    pts = set(objects.bar_land_of_gog(k, n))
    if n > k:
        pts |= set(objects.land_of_gog(k, n))
    return sorted(pts, key=lambda a: (sum(a), a))


@register("S121", _grid_kn(3, 5), "border constant terms H_k equal the counts M~_k")
def s121(k, n):
    _kn(k, n)
    return _first_failure((_pt(n, a), recurrences.h_value(k, n, a), objects.tilde_m(k, n, a))
                          for a in _gog_points(k, n))


@register("S1211all", _grid_kn(3, 5), "Howard, Bill, the Gog difference equation and M1-M4")
def s1211all(k, n):
    _kn(k, n)

    def items():
        for a in objects.bar_land_of_gog(k, n):
            p = _pt(n, a)
            if any(a[i - 1] == k - i for i in range(1, k + 1)):
                yield f"M1 at {p}", objects.tilde_m(k, n, a), 0
            if a[0] == n + 1:
                yield f"M2 at {p}", objects.tilde_m(k, n, a), 0
            if n == k and a[0] == k and k > 1:
                yield f"M3 at {p}", objects.tilde_m(k, n, a), objects.tilde_m(k - 1, k, a[1:])
        if n == k == 1:
            yield "M4", objects.tilde_m(1, 1, (1,)), 1
        if n > k:
            for a in objects.land_of_gog(k, n):
                p = _pt(n, a)
                yield (f"Howard at {p}",) + recurrences.check_howard(k, n, a)[1]
                yield (f"Bill at {p}",) + recurrences.check_bill(k, n, a)[1]
                yield (f"PDE at {p}",) + recurrences.check_pde_gog(k, n, a)[1]
    return _first_failure(items())


@register("S12121all", _grid_kn(3, 5, nmin_shift=1), "H_k difference equation via the Rodica/Dave reduction")
def s12121all(k, n):
    _kn(k, n)
    _need(n > k, "the difference equation is stated for n > k")

    def H(m, b):
        return recurrences.h_value(k, m, b)

    def items():
        for a in objects.land_of_gog(k, n):
            p = _pt(n, a)
            lhs = recurrences.apply_operator(recurrences.p_a_operator(a), H, (n, a))
            yield f"PDE at {p}", lhs, H(n - 1, recurrences.clamp_chain(a))
            blocks = kernels.blocks_of(a)
            j = kernels.jamie(blocks)
            yield f"Jamie expansion for blocks {blocks}", j, kernels.jamie_decomposition(blocks)
            dave = kernels.gog_border(k, n, a).times_poly(j)
            yield f"Dave at {p}", constant_term(dave), 0
    return _first_failure(items())


@register("S12122", _grid_kn(3, 5), "H_k vanishes on a_i = k - i")
def s12122(k, n):
    _kn(k, n)
    pts = [a for a in objects.bar_land_of_gog(k, n) if any(a[i - 1] == k - i for i in range(1, k + 1))]
    if not pts:
        raise Skip("no points with a_i = k - i")
    return _first_failure((_pt(n, a), recurrences.h_value(k, n, a), 0) for a in pts)


def _h2b_family(k, n):
    x, xb = kernels.x, kernels.xb
    factors = [(xb(1, k), n + 1)]
    for i in range(2, k + 1):
        factors += [(1 - x(1, k) * x(i, k), 1), (1 - xb(1, k) * x(i, k), 1)]
    from .series import CoefficientFamily
    return CoefficientFamily(kernels.phi(k), factors, [n] + [max(n - 1, 0)] * (k - 1))


@register("S12123", _grid_kn(3, 5), "H_k vanishes at a_1 = n + 1, and the reduced form vanishes for all a_2..a_k <= n")
def s12123(k, n):
    _kn(k, n)

    def items():
        for a in objects.bar_land_of_gog(k, n):
            if a[0] == n + 1:
                yield f"H2 at {_pt(n, a)}", recurrences.h_value(k, n, a), 0
        fam = _h2b_family(k, n)
        for tail in product(range(0, n + 1), repeat=k - 1):
            yield f"H2b at n={n} tail={tail}", fam.ct((n,) + tuple(t - 1 for t in tail)), 0
    return _first_failure(items())


@register("S12124", _grid_k(3), "H_k(k; k, a_2..) = H_{k-1}(k; a_2..), and H_1(1; 1) = 1")
def s12124(k):
    _k(k)
    if k == 1:
        v = recurrences.h_value(1, 1, (1,))
        return v == 1, f"H_1(1;1)={v}"
    pts = [a for a in objects.bar_land_of_gog(k, k) if a[0] == k]
    return _first_failure((_pt(k, a), recurrences.h_value(k, k, a), recurrences.h_value(k - 1, k, a[1:]))
                          for a in pts)


@register("S1213", _grid_kn(3, 5), "tabulated solution of the Gog recurrence equals M~_k")
def s1213(k, n):
    _kn(k, n)
    Y = recurrences.tabulate_Y(k, n)
    return _first_failure((_pt(m, a), Y[(m, a)], objects.tilde_m(k, m, a)) for m, a in Y.points())


# Acts III and IV: moving bar flips through the iterated residue


FAMILIES = {
    "magog": (kernels.magog_res, objects.b_brute),
    "gog": (kernels.gog_res, objects.m_brute),
}


def _element(k, g):
    g = parse_element(g)
    _need(g.k == k, f"element {format_element(g)} does not act on {k} variables")
    return g


def _invariance(family, k, n, g):
    _kn(k, n)
    g = _element(k, g)
    res, count = FAMILIES[family]
    v, c = res_iterated(act(g, res(k, n))), count(k, n)
    return v == c, f"res={v} count={c}"


def _single_flip(family, k, n, g):
    _kn(k, n)
    g = _element(k, g)
    ff = flips.first_flip(g.pi, g.eps)
    if ff is None:
        raise Skip("no barred variable")
    u, R = ff
    f = FAMILIES[family][0](k, n)
    order = list(g.pi)
    lhs = res_iterated(flips.flipped(f, g.eps), order)
    rhs = res_iterated(flips.flipped(f, flips.with_unbarred(g.eps, R)), order)
    return lhs == rhs, f"u={u} R={R} res={lhs} unbarred={rhs}"


def _closed_forms(family, k, R):
    _k(k, 2)
    _need(1 <= R <= k, f"R must lie in 1..{k}")
    signs = []
    bound = k if family == "magog" else 2 * k - 1
    for eps in product((1, -1), repeat=k):
        if eps[R - 1] != 1:
            continue
        if family == "magog":
            core, poles = flips.magog_core(k, R, eps), flips.magog_poles(k, R, eps)
        else:
            core, poles = flips.gog_core(k, R, eps), flips.gog_poles(k, R, eps)
        poly, poles = flips.split(core, R, poles)
        deg = flips.polynomial_in(poly, R)
        if deg is None or deg > bound:
            return False, f"eps={format_signs(eps)}: polynomial part degree {deg} exceeds {bound}"
        for p in poles:
            if family == "magog":
                closed = flips.magog_coeff_closed(k, R, p.i, eps)
            else:
                closed = flips.gog_coeff_closed(p.kind, k, R, p.i, eps)
            s = flips.sign_match(p.coeff, closed)
            if s is None:
                return False, _clip(f"eps={format_signs(eps)} {p.kind}{p.i}: " + _difference(p.coeff, closed))
            signs.append(f"{format_signs(eps)}:{p.kind}{p.i}{'+' if s > 0 else '-'}")
    return True, _clip(f"poly degree <= {bound}; signs " + " ".join(signs))


def _pole_value(which, k, R, i):
    _k(k, 2)
    _need(1 <= R <= k and 1 <= i <= k and i != R, "need distinct R and i in 1..k")
    base = kernels.delta(k) if which == "delta" else kernels.phi(k)
    signs = []
    for eps in product((1, -1), repeat=k):
        if eps[R - 1] != 1:
            continue
        root = flips._recip(flips.z(i, eps, k))
        actual = substitute(base, {R: root})
        closed = flips.delta_at_pole(k, R, i, eps) if which == "delta" else flips.phi_at_pole(k, R, i, eps)
        s = flips.sign_match(actual, closed)
        if s is None:
            return False, _clip(f"eps={format_signs(eps)}: " + _difference(actual, closed))
        signs.append(f"{format_signs(eps)}{'+' if s > 0 else '-'}")
    return True, "signs " + " ".join(signs)


def _reconstruct(family, k, n, eps, R):
    _kn(k, n)
    eps = parse_signs(eps)
    _need(len(eps) == k and 1 <= R <= k, "eps must have k entries and R lie in 1..k")
    D = flips.decompose(family, k, n, R, eps)
    parts = D.parts()
    total = parts[0][1]
    for _, h in parts[1:]:
        total = total + h
    if not _same(total, D.residuand):
        return False, _difference(total, D.residuand)
    deg = flips.polynomial_in(D.poly_part, R)
    if deg is None or deg > flips.poly_degree_bound(D):
        return False, f"polynomial part degree {deg} exceeds {flips.poly_degree_bound(D)}"
    shapes = []
    bound = flips.tilde_degree_bound(D)
    for p in D.poles:
        d = flips.tilde_shape(D, p)
        if d is None:
            return False, f"{p.kind}{p.i}: tilde numerator is not a polynomial in x{p.i} free of x{R}"
        if bound is not None and d > bound:
            return False, f"{p.kind}{p.i}: tilde numerator degree {d} exceeds {bound}"
        shapes.append(f"{p.kind}{p.i}:{d}")
    return True, f"{len(parts)} parts sum to the residuand; P degree {deg}; tilde degrees " + " ".join(shapes)


def _hadas(family, k, n, g, select):
    _kn(k, n)
    g = _element(k, g)
    ff = flips.first_flip(g.pi, g.eps)
    if ff is None:
        raise Skip("no barred variable")
    _, R = ff
    D = flips.decompose(family, k, n, R, g.eps)
    chosen = [(label, h) for label, h in D.parts() if select(label, R)]
    if not chosen:
        raise Skip("no parts of this kind")
    vals = []
    for label, h in chosen:
        a, b = flips.hadas(h, R, list(g.pi))
        if a != b:
            return False, f"{label}: res={a} barred={b}"
        vals.append(f"{label}={a}")
    return True, f"R={R} " + " ".join(vals)


def _is_poly(label, R):
    return label == "P"


def _is_a(label, R):
    return label.startswith("A")


def _is_b(label, R):
    return label.startswith("B")


def _is_b_low(label, R):
    return label.startswith("B") and int(label[1:]) < R


def _is_b_high(label, R):
    return label.startswith("B") and int(label[1:]) > R


@register("S13", _grid_elements(False), "Magog residue is unchanged by a signed permutation of its residuand")
def s13(k, n, g):
    return _invariance("magog", k, n, g)


@register("S131", _grid_elements(True), "Magog residue: the first bar flip in the order may be undone")
def s131(k, n, g):
    return _single_flip("magog", k, n, g)


@register("S1311", _grid_kR(3), "Magog pole coefficients match their closed forms; polynomial part degree <= k")
def s1311(k, R):
    return _closed_forms("magog", k, R)


@register("S13111", _grid_kRi(4), "Delta_k at a Magog pole matches its factored form")
def s13111(k, R, i):
    return _pole_value("delta", k, R, i)


@register("S1312", _grid_split, "Magog residuand equals polynomial part plus pole parts")
def s1312(k, n, eps, R):
    return _reconstruct("magog", k, n, eps, R)


@register("S1313", _grid_elements(True), "Magog polynomial part is unchanged by barring x_R under the residue")
def s1313(k, n, g):
    return _hadas("magog", k, n, g, _is_poly)


@register("S1314", _grid_elements(True, lambda k, R: k > 1), "Magog pole parts are unchanged by barring x_R under the residue")
def s1314(k, n, g):
    return _hadas("magog", k, n, g, _is_b)


@register("S14", _grid_elements(False), "Gog residue is unchanged by a signed permutation of its residuand")
def s14(k, n, g):
    return _invariance("gog", k, n, g)


@register("S141", _grid_elements(True), "Gog residue: the first bar flip in the order may be undone")
def s141(k, n, g):
    return _single_flip("gog", k, n, g)


@register("S1411", _grid_kR(3), "Gog pole coefficients match their closed forms; polynomial part degree <= 2k-1")
def s1411(k, R):
    return _closed_forms("gog", k, R)


@register("S14111", _grid_kRi(3), "Phi_k at a Gog pole matches its factored form")
def s14111(k, R, i):
    return _pole_value("phi", k, R, i)


@register("S1412", _grid_split, "Gog residuand equals polynomial part plus pole parts")
def s1412(k, n, eps, R):
    return _reconstruct("gog", k, n, eps, R)


@register("S1413", _grid_elements(True), "Gog polynomial part is unchanged by barring x_R under the residue")
def s1413(k, n, g):
    return _hadas("gog", k, n, g, _is_poly)


@register("S1414", _grid_elements(True, lambda k, R: k > 1), "Gog parts with poles at 1 - z_i x_R are unchanged by barring x_R")
def s1414(k, n, g):
    return _hadas("gog", k, n, g, _is_a)


@register("S1415", _grid_elements(True, lambda k, R: R > 1), "Gog parts with poles at 1 - (1 - z_i) x_R, i < R, are unchanged by barring x_R")
def s1415(k, n, g):
    return _hadas("gog", k, n, g, _is_b_low)


@register("S1416", _grid_elements(True, lambda k, R: R < k), "Gog parts with poles at 1 - z_i (1 - x_R), i > R, are unchanged by barring x_R")
def s1416(k, n, g):
    return _hadas("gog", k, n, g, _is_b_high)


# Act V: the polynomial identity and its specializations


def _x(i, k):
    return kernels.x(i, k)


def _xb(i, k):
    return kernels.xb(i, k)


def _inv(p):
    return RationalFunction(LaurentPolynomial.constant(1, p.nvars), p)


def _onto(p, targets, k):
    """A polynomial in len(targets) variables, rewritten in the listed variables of a k-variable universe."""
    if not targets:
        return LaurentPolynomial.constant(p.constant_value(), k)
    return p.rename(list(targets), k)


def _without(k, *skip):
    return [j for j in range(1, k + 1) if j not in skip]


@register("S15", _grid_k(4), "Delta_k times the antisymmetrized Magog core equals (-1)^k Phi_k^2")
def s15(k):
    _k(k)
    lhs = kernels.magog_avg_numerator(k)
    phi = kernels.phi(k)
    rhs = phi * phi * (-1) ** k
    if lhs == rhs:
        return True, "LHS-RHS = 0"
    return False, _clip("difference " + serialize(lhs - rhs))


def _specializations(k, F, lower, squared):
    """(label, lhs, rhs) for the three substitutions x1 -> 1/x_i, 1/(1-x_i), 0."""
    power = 2 if squared else 1
    for i in range(2, k + 1):
        rest = _without(k, 1, i)
        low = _onto(lower(k - 2), rest, k)
        num_a, num_b = kernels.one(k), kernels.one(k)
        for j in rest:
            num_a = num_a * (1 - _xb(i, k) * _x(j, k)) * (1 - _xb(i, k) * _xb(j, k))
            num_b = num_b * (1 - _x(i, k) * _x(j, k)) * (1 - _x(i, k) * _xb(j, k))
        pref_a = RationalFunction.from_factors(num_a ** power, [(_x(i, k), power * len(rest))])
        pref_b = RationalFunction.from_factors(num_b ** power, [(_xb(i, k), power * len(rest))])
        yield f"x1=1/x{i}", substitute(F, {1: _inv(_x(i, k))}), pref_a * low
        yield f"x1=1/(1-x{i})", substitute(F, {1: _inv(_xb(i, k))}), pref_b * low
    yield "x1=0", substitute(F, {1: 0}), RationalFunction(_onto(lower(k - 1), _without(k, 1), k))


def _all_same(items):
    labels = []
    for label, lhs, rhs in items:
        if not _same(lhs, rhs):
            return False, _clip(f"{label}: " + _difference(lhs, rhs))
        labels.append(label)
    return True, "holds at " + ", ".join(labels)


@register("S151", _grid_k(4), "specializations of L_k = (-1)^k times the signed sum, at x1 = 1/x_i, 1/(1-x_i), 0")
def s151(k):
    _k(k)
    if kernels.l_signed_sum(k) != kernels.l_quotient(k):
        return False, _difference(kernels.l_signed_sum(k), kernels.l_quotient(k))
    ok, w = _all_same(_specializations(k, kernels.l_normalized(k), kernels.l_normalized, True))
    return ok, w + "; signed sum equals LHS/Delta^2, normalized by (-1)^k" if ok else w


@register("S1511", _grid_none, "the pair-factor product identity at x1 = 1/x2 (t in place of x_j)")
def s1511():
    k = 2
    t, x2 = _x(1, k), _x(2, k)
    u = _inv(x2)
    ub = 1 - u
    tb, x2b = 1 - t, 1 - x2
    left = (1 - ub * t) * (1 - u * tb) * (1 - ub * tb) / (t + u - 1)
    left = left * RationalFunction.from_factors((1 - x2b * t) * (1 - x2 * tb) * (1 - x2b * tb), [(t + x2 - 1, 1)])
    base = RationalFunction.from_factors((1 - x2b * tb) * (1 - x2b * t), [(x2, 1)])
    right = base * base
    return (True, "LHS-RHS = 0") if _same(left, right) else (False, _difference(left, right))


@register("S1512", _grid_none, "the diagonal factor at x1 = 1/x2 equals 1")
def s1512():
    k = 1
    x2 = _x(1, k)
    u = _inv(x2)
    ub, x2b = 1 - u, 1 - x2
    left = (u * u / (1 - 2 * u)) * RationalFunction.from_factors(x2 * x2, [(1 - 2 * x2, 1)])
    left = left * (1 - ub * x2) * (1 - u * x2b) * (1 - ub * x2b) / (x2 + u - 1)
    return (True, "LHS = 1") if _same(left, 1) else (False, _difference(left, 1))


@register("S152", _grid_k(4), "specializations of Omega_k at x1 = 1/x_i, 1/(1-x_i), 0, and Dominique")
def s152(k):
    _k(k)
    items = list(_specializations(k, kernels.omega(k), kernels.omega, False))
    if k >= 2:
        om = substitute(kernels.omega(k), {1: _inv(_x(2, k))})
        lhs = om * _x(2, k) ** (k - 2)
        rhs = kernels.one(k)
        for j in range(3, k + 1):
            rhs = rhs * (1 - _xb(2, k) * _x(j, k)) * (1 - _xb(2, k) * _xb(j, k))
        rhs = rhs * _onto(kernels.omega(k - 2), _without(k, 1, 2), k)
        items.append(("Dominique", lhs, rhs))
    return _all_same(items)


def _laurent_in_x2(p, k):
    f = substitute(p, {1: _inv(_x(2, k))})
    return f.gcd_reduce().as_polynomial()


@register("S1521", _grid_k(4, kmin=2), "degree bounds in x2 after x1 = 1/x2 for Omega_k, Delta_k and Phi_k")
def s1521(k):
    _k(k, 2)
    om = _laurent_in_x2(kernels.omega(k), k)
    de = _laurent_in_x2(kernels.delta(k), k)
    ph = _laurent_in_x2(kernels.phi(k), k)
    spans = {name: (p.min_degree(2) or 0, p.degree(2) or 0) for name, p in (("Omega", om), ("Delta", de), ("Phi", ph))}
    checks = [
        ("Omega", spans["Omega"][1] <= k - 2 and spans["Omega"][0] >= -(k - 2)),
        ("Delta", spans["Delta"] == (-(2 * k - 1), 2 * k - 1)),
        ("Phi", spans["Phi"][1] <= 3 * k - 3 and spans["Phi"][0] >= -(3 * k - 3)),
    ]
    text = " ".join(f"{name}:[{lo},{hi}]" for name, (lo, hi) in spans.items())
    bad = [name for name, ok in checks if not ok]
    if bad:
        return False, f"bounds violated for {','.join(bad)}; {text}"
    return True, text


@register("S1522", _grid_k(4, kmin=3), "Omega_k at x1 = 1/x2 vanishes at 1 - x2 = 1/x_j and 1/(1 - x_j)")
def s1522(k):
    _k(k, 3)
    om = substitute(kernels.omega(k), {1: _inv(_x(2, k))})
    labels = []
    for j in range(3, k + 1):
        for name, val in ((f"1/x{j}", _inv(_x(j, k))), (f"1/(1-x{j})", _inv(_xb(j, k)))):
            v = substitute(om, {2: 1 - val}).gcd_reduce()
            if not v.is_zero():
                return False, _clip(f"1-x2={name}: value {serialize(v)}")
            labels.append(name)
    return True, "vanishes at 1-x2 = " + ", ".join(labels)


@register("S15221", _grid_none, "each signed image of the six pair factors vanishes at x3 = 1/(1-x2), x1 = 1/x2")
def s15221():
    k = 3
    six = kernels.one(k)
    for i, j in kernels._pairs(k):
        six = six * (1 - _x(i, k) * _xb(j, k)) * (1 - _xb(i, k) * _xb(j, k))
    point = {3: _inv(_xb(2, k)), 1: _inv(_x(2, k))}
    count = 0
    for g in hyperoctahedral(k):
        v = substitute(act(g, six), point).gcd_reduce()
        if not v.is_zero():
            return False, _clip(f"g={format_element(g)}: value {serialize(v)}")
        count += 1
    return True, f"all {count} images vanish"


@register("S1523", _grid_k(4), "Omega_k at x_k = 0 and at x_k = 1 equals Omega_{k-1}")
def s1523(k):
    _k(k)
    low = RationalFunction(_onto(kernels.omega(k - 1), list(range(1, k)), k))
    items = [("x_k=0", substitute(kernels.omega(k), {k: 0}), low),
             ("x_k=1", substitute(kernels.omega(k), {k: 1}), low)]
    return _all_same(items)


# running


@contextmanager
def mutation(name, replacement):
    """Temporarily replace kernels.<name>; used to confirm that checks catch corrupted inputs."""
    original = getattr(kernels, name)
    setattr(kernels, name, replacement)
    _clear_kernel_caches()
    try:
        yield
    finally:
        setattr(kernels, name, original)
        _clear_kernel_caches()


def _clear_kernel_caches():
    # memoized kernels would otherwise keep serving values built from the original
    for obj in vars(kernels).values():
        if hasattr(obj, "cache_clear"):
            obj.cache_clear()


def _validate(check, params):
    sig = inspect.signature(check.func)
    try:
        sig.bind(**params)
    except TypeError as exc:
        expected = ", ".join(sig.parameters) or "no parameters"
        raise UsageError(f"{check.id} takes ({expected}): {exc}") from None


def run_check(id, **params):
    """Run one registered check; raises RegistryError or UsageError before any work is done."""
    try:
        check = REGISTRY[id]
    except KeyError:
        raise RegistryError(f"unknown check {id!r}") from None
    _validate(check, params)
    start = time.perf_counter()
    try:
        ok, witness = check.func(**params)
        status = "pass" if ok else "fail"
    except Skip as exc:
        status, witness = "skipped", str(exc)
    elapsed = time.perf_counter() - start
    if status == "fail" and not witness:
        witness = "check failed"
    return CheckResult(id, dict(params), status, witness, elapsed)


def _run_one(job):
    id, params = job
    return run_check(id, **params)


def plan(max_k=4, max_n=5, filter="*", heavy=False):
    """(id, params) pairs that run_all would execute, in order."""
    pattern = "*" if filter in (None, "all") else filter
    out = []
    for id, check in REGISTRY.items():
        if not fnmatch.fnmatchcase(id, pattern):
            continue
        for params in check.grid(max_k, max_n, heavy):
            out.append((id, params))
    return out


def run_all(max_k=4, max_n=5, filter="*", heavy=False, jobs=1):
    """Run every check on its default grid, clipped to max_k and max_n."""
    if max_k < 1 or max_n < 1:
        raise UsageError("bounds must be at least 1")
    work = plan(max_k, max_n, filter, heavy)
    if jobs and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_run_one, work))
    return [_run_one(job) for job in work]


def summarize(results):
    counts = {"pass": 0, "fail": 0, "skipped": 0}
    for r in results:
        counts[r.status] += 1
    return counts


def _params_text(params):
    parts = []
    for key, v in params.items():
        v = _plain(v)
        parts.append(f"{key}={','.join(map(str, v)) if isinstance(v, list) else v}")
    return " ".join(parts)


def format_table(results):
    rows = [("id", "params", "status", "ms", "witness")]
    for r in results:
        rows.append((r.id, _params_text(r.params), r.status, f"{r.elapsed * 1000:.0f}", r.witness))
    widths = [max(len(row[c]) for row in rows) for c in range(4)]
    lines = []
    for row in rows:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(row[:4], widths)) + "  " + row[4])
    counts = summarize(results)
    lines.append(f"{len(results)} checks: {counts['pass']} pass, {counts['fail']} fail, {counts['skipped']} skipped")
    return "\n".join(lines)


def format_records(results):
    return "\n".join(json.dumps(r.record()) for r in results)
