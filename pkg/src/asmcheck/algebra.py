"""Sparse exact Laurent polynomials and rational functions in x1..xk.

A polynomial is a dict from exponent tuples to int or Fraction coefficients.
Rational functions keep their denominator factored: a dict from normalized
primitive factors to multiplicities.  Normalized factors carry no monomial
content, so every factor is nonzero when any single variable is set to 0.
"""
from fractions import Fraction
from math import comb, gcd, lcm
from operator import add as _add
import heapq

from .errors import DivisibilityError, ParseError, PoleError, UnsupportedOperation

try:
    import gmpy2
    _mpz = gmpy2.mpz
except ImportError:  # pragma: no cover
    _mpz = int

KRONECKER_THRESHOLD = 60_000


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _cdiv(a, b):
    if type(a) is int and type(b) is int:
        q, r = divmod(a, b)
        if not r:
            return q
    return _norm(Fraction(a) / b)


def _grlex_key(e):
    return (sum(e), e)


class LaurentPolynomial:
    """Immutable sparse Laurent polynomial over the rationals."""

    __slots__ = ("terms", "nvars", "_hash")

    def __init__(self, terms=None, nvars=0):
        # trusted: no zero coefficients, every key has length nvars
        self.terms = {} if terms is None else terms
        self.nvars = nvars
        self._hash = None

    # construction

    @classmethod
    def from_dict(cls, terms, nvars=None):
        if nvars is None:
            nvars = max((len(e) for e in terms), default=0)
        out = {}
        for e, c in terms.items():
            e = tuple(e)
            if len(e) < nvars:
                e = e + (0,) * (nvars - len(e))
            c = _norm(c if type(c) in (int, Fraction) else Fraction(c))
            if c:
                v = out.get(e, 0) + c
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return cls(out, nvars)

    @classmethod
    def constant(cls, c, nvars=0):
        c = _norm(c)
        return cls({(0,) * nvars: c} if c else {}, nvars)

    @classmethod
    def variable(cls, i, nvars=None, power=1):
        nvars = i if nvars is None else max(nvars, i)
        e = [0] * nvars
        e[i - 1] = power
        return cls({tuple(e): 1}, nvars)

    @classmethod
    def monomial(cls, exps, coef=1):
        coef = _norm(coef)
        return cls({tuple(exps): coef} if coef else {}, len(exps))

    # basic queries

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        return next(iter(self.terms.values()), 0)

    def is_monomial(self):
        return len(self.terms) == 1

    def is_integral(self):
        return all(type(c) is int for c in self.terms.values())

    def padded(self, n):
        if n == self.nvars:
            return self
        if n < self.nvars:
            if any(any(e[n:]) for e in self.terms):
                raise ValueError("cannot shrink: variables in use")
            return LaurentPolynomial({e[:n]: c for e, c in self.terms.items()}, n)
        z = (0,) * (n - self.nvars)
        return LaurentPolynomial({e + z: c for e, c in self.terms.items()}, n)

    def used_nvars(self):
        """Smallest n such that the polynomial only involves x1..xn."""
        m = 0
        for e in self.terms:
            for i in range(len(e) - 1, m - 1, -1):
                if e[i]:
                    m = i + 1
                    break
        return m

    def degree(self, var):
        return max((e[var - 1] for e in self.terms), default=None) if var <= self.nvars else (0 if self.terms else None)

    def min_degree(self, var):
        return min((e[var - 1] for e in self.terms), default=None) if var <= self.nvars else (0 if self.terms else None)

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=None)

    def min_exponents(self):
        if not self.terms:
            return (0,) * self.nvars
        it = iter(self.terms)
        m = list(next(it))
        for e in it:
            for i, x in enumerate(e):
                if x < m[i]:
                    m[i] = x
        return tuple(m)

    def max_exponents(self):
        if not self.terms:
            return (0,) * self.nvars
        it = iter(self.terms)
        m = list(next(it))
        for e in it:
            for i, x in enumerate(e):
                if x > m[i]:
                    m[i] = x
        return tuple(m)

    def leading_term(self):
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]))

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), 0)

    def variables(self):
        used = set()
        for e in self.terms:
            used.update(i + 1 for i, x in enumerate(e) if x)
        return used

    # arithmetic

    def _coerce(self, other):
        if isinstance(other, LaurentPolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPolynomial.constant(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(self.nvars, other.nvars)
        a, b = self.padded(n), other.padded(n)
        if len(a.terms) < len(b.terms):
            a, b = b, a
        out = dict(a.terms)
        for e, c in b.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                del out[e]
        return LaurentPolynomial(out, n)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = _norm(c)
        if not c:
            return LaurentPolynomial({}, self.nvars)
        if c == 1:
            return self
        return LaurentPolynomial({e: _norm(v * c) for e, v in self.terms.items()}, self.nvars)

    def shift(self, exps):
        """Multiply by the monomial x^exps."""
        exps = tuple(exps)
        n = max(self.nvars, len(exps))
        a = self.padded(n)
        exps = exps + (0,) * (n - len(exps))
        return LaurentPolynomial({tuple(map(_add, e, exps)): c for e, c in a.terms.items()}, n)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        n = max(self.nvars, other.nvars)
        a, b = self.padded(n), other.padded(n)
        if not a.terms or not b.terms:
            return LaurentPolynomial({}, n)
        if len(a.terms) < len(b.terms):
            a, b = b, a
        if len(b.terms) == 1:
            (eb, cb), = b.terms.items()
            if cb == 1:
                return LaurentPolynomial({tuple(map(_add, e, eb)): c for e, c in a.terms.items()}, n)
            return LaurentPolynomial({tuple(map(_add, e, eb)): _norm(c * cb) for e, c in a.terms.items()}, n)
        if len(a.terms) * len(b.terms) >= KRONECKER_THRESHOLD and a.is_integral() and b.is_integral():
            return _kronecker_mul(a, b, n)
        out = {}
        get = out.get
        bt = list(b.terms.items())
        for ea, ca in a.terms.items():
            for eb, cb in bt:
                e = tuple(map(_add, ea, eb))
                out[e] = get(e, 0) + ca * cb
        return LaurentPolynomial({e: _norm(c) for e, c in out.items() if c}, n)

    __rmul__ = __mul__

    def __pow__(self, m):
        if not isinstance(m, int):
            return NotImplemented
        if m < 0:
            if len(self.terms) != 1:
                if not self.terms:
                    raise PoleError("zero raised to a negative power")
                raise UnsupportedOperation("negative power of a non-monomial")
            (e, c), = self.terms.items()
            return LaurentPolynomial({tuple(x * m for x in e): _norm(Fraction(1) / Fraction(c) ** -m)}, self.nvars)
        result = LaurentPolynomial.constant(1, self.nvars)
        base = self
        while m:
            if m & 1:
                result = result * base
            m >>= 1
            if m:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError
            return self.scale(Fraction(1) / other)
        if isinstance(other, LaurentPolynomial):
            if len(other.terms) == 1:
                return self * other ** -1
            return RationalFunction(self, other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalFunction(LaurentPolynomial.constant(other, self.nvars), self)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        if isinstance(other, RationalFunction):
            return other == self
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        if self.nvars == other.nvars:
            return self.terms == other.terms
        n = max(self.nvars, other.nvars)
        return self.padded(n).terms == other.padded(n).terms

    def __hash__(self):
        if self._hash is None:
            n = self.used_nvars()
            self._hash = hash(frozenset((e[:n], c) for e, c in self.terms.items()))
        return self._hash

    def __repr__(self):
        return f"LaurentPolynomial({serialize(self)!r})"

    __str__ = lambda self: serialize(self)

    # structure

    def coeffs_in(self, var):
        """Map exponent of x_var to the coefficient polynomial (x_var removed)."""
        i = var - 1
        if i >= self.nvars:
            return {0: self} if self.terms else {}
        groups = {}
        for e, c in self.terms.items():
            d = e[i]
            key = e[:i] + (0,) + e[i + 1:]
            groups.setdefault(d, {})[key] = c
        return {d: LaurentPolynomial(t, self.nvars) for d, t in groups.items()}

    def permute(self, images):
        """Simultaneously send x_i to x_{images[i-1]} (images is a 1-based permutation)."""
        n = max(self.nvars, len(images))
        a = self.padded(n)
        src = list(range(n))
        for i, j in enumerate(images):
            src[j - 1] = i
        out = {tuple(e[src[p]] for p in range(n)): c for e, c in a.terms.items()}
        return LaurentPolynomial(out, n)

    def rename(self, positions, nvars):
        """Send x_i to x_{positions[i-1]} inside a universe of nvars variables."""
        if self.used_nvars() > len(positions):
            raise ValueError("not enough target positions")
        out = {}
        for e, c in self.terms.items():
            t = [0] * nvars
            for i, p in enumerate(positions):
                if i < len(e):
                    t[p - 1] += e[i]
            out[tuple(t)] = c
        return LaurentPolynomial.from_dict(out, nvars)

    def bar(self, var):
        """Substitute x_var -> 1 - x_var; needs nonnegative exponents in x_var."""
        if var > self.nvars:
            return self
        i = var - 1
        groups = self.coeffs_in(var)
        if min(groups, default=0) < 0:
            raise UnsupportedOperation("bar of a negative power; use RationalFunction")
        n = self.nvars
        out = {}
        for d, p in groups.items():
            for j in range(d + 1):
                b = comb(d, j) * (-1) ** j
                for e, c in p.terms.items():
                    t = e[:i] + (j,) + e[i + 1:]
                    out[t] = out.get(t, 0) + b * c
        return LaurentPolynomial({e: c for e, c in out.items() if c}, n)

    def derivative(self, var):
        i = var - 1
        if i >= self.nvars:
            return LaurentPolynomial({}, self.nvars)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                out[e[:i] + (e[i] - 1,) + e[i + 1:]] = c * e[i]
        return LaurentPolynomial(out, self.nvars)

    def evaluate(self, point):
        """Evaluate at a full point (sequence of rationals indexed from x1)."""
        total = Fraction(0)
        for e, c in self.terms.items():
            v = Fraction(c)
            for i, x in enumerate(e):
                if x:
                    v *= Fraction(point[i]) ** x
            total += v
        return _norm(total)

    def substitute_values(self, values):
        """Substitute numeric values for some variables: values maps var -> rational."""
        out = {}
        for e, c in self.terms.items():
            v = Fraction(c)
            t = list(e)
            for var, x in values.items():
                i = var - 1
                if i < len(t) and t[i]:
                    if not x and t[i] < 0:
                        raise PoleError(f"x{var} = 0 in a negative power")
                    v *= Fraction(x) ** t[i]
                    t[i] = 0
            t = tuple(t)
            out[t] = out.get(t, 0) + v
        return LaurentPolynomial({e: _norm(c) for e, c in out.items() if c}, self.nvars)

    def strip_monomial(self):
        """Return (m, p) with self = x^m * p and p free of monomial content."""
        m = self.min_exponents()
        if not any(m):
            return m, self
        neg = tuple(-x for x in m)
        return m, LaurentPolynomial({tuple(map(_add, e, neg)): c for e, c in self.terms.items()}, self.nvars)

    def integer_content(self):
        """Return (c, p) with self = c * p, p integral primitive with positive leading coefficient."""
        den = 1
        for c in self.terms.values():
            if type(c) is Fraction:
                den = lcm(den, c.denominator)
        g = 0
        for c in self.terms.values():
            g = gcd(g, int(c * den))
        _, lc = self.leading_term()
        if lc < 0:
            g = -g
        scale = Fraction(g, den)
        p = LaurentPolynomial({e: int(c * den) // g for e, c in self.terms.items()}, self.nvars)
        return _norm(scale), p


def _kronecker_mul(a, b, n):
    """Product of two integral polynomials through one big-integer multiplication."""
    amin, bmin = a.min_exponents(), b.min_exponents()
    amax, bmax = a.max_exponents(), b.max_exponents()
    sizes = [amax[i] - amin[i] + bmax[i] - bmin[i] + 1 for i in range(n)]
    strides = []
    s = 1
    for d in sizes:
        strides.append(s)
        s *= d
    slots = s
    ca = max(abs(c) for c in a.terms.values())
    cb = max(abs(c) for c in b.terms.values())
    bits = (ca * cb * min(len(a.terms), len(b.terms))).bit_length() + 2
    nbytes = (bits + 7) // 8
    width = nbytes * 8

    def pack(p, pmin):
        pos = bytearray(slots * nbytes)
        neg = bytearray(slots * nbytes)
        for e, c in p.terms.items():
            idx = 0
            for i in range(n):
                idx += (e[i] - pmin[i]) * strides[i]
            buf = pos if c > 0 else neg
            buf[idx * nbytes:(idx + 1) * nbytes] = abs(c).to_bytes(nbytes, "little")
        return _mpz(int.from_bytes(pos, "little")) - _mpz(int.from_bytes(neg, "little"))

    prod = pack(a, amin) * pack(b, bmin)
    half = 1 << (width - 1)
    offset = int.from_bytes((half.to_bytes(nbytes, "little")) * slots, "little")
    raw = int(prod + offset).to_bytes(slots * nbytes + 1, "little")
    base = tuple(amin[i] + bmin[i] for i in range(n))
    out = {}
    for idx in range(slots):
        v = int.from_bytes(raw[idx * nbytes:(idx + 1) * nbytes], "little") - half
        if v:
            e = []
            r = idx
            for i in range(n):
                r, d = divmod(r, sizes[i]) if i < n - 1 else (0, r)
                e.append(d + base[i])
            out[tuple(e)] = v
    return LaurentPolynomial(out, n)


def kronecker_decode_check(a, b):
    """Compare the Kronecker product with schoolbook multiplication (used by tests)."""
    n = max(a.nvars, b.nvars)
    return _kronecker_mul(a.padded(n), b.padded(n), n)


def var(i, nvars=None):
    return LaurentPolynomial.variable(i, nvars)


def const(c, nvars=0):
    return LaurentPolynomial.constant(c, nvars)


def bar_poly(i, nvars=None):
    """The polynomial 1 - x_i."""
    return 1 - var(i, nvars)


def _as_poly(x, nvars=0):
    if isinstance(x, LaurentPolynomial):
        return x
    return LaurentPolynomial.constant(x, nvars)


# exact division


def divide_or_none(p, q):
    """Return r with p == q*r in the Laurent ring, or None when q does not divide p."""
    if not q.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    n = max(p.nvars, q.nvars)
    p, q = p.padded(n), q.padded(n)
    if not p.terms:
        return LaurentPolynomial({}, n)
    if len(q.terms) == 1:
        return p * q ** -1
    mp, P = p.strip_monomial()
    mq, Q = q.strip_monomial()
    qt = sorted(Q.terms.items(), reverse=True)
    (lq_e, lq_c), rest = qt[0], qt[1:]
    r = dict(P.terms)
    heap = [tuple(-x for x in e) for e in r]
    heapq.heapify(heap)
    quot = {}
    while heap:
        ne = heapq.heappop(heap)
        e = tuple(-x for x in ne)
        c = r.pop(e, 0)
        if not c:
            continue
        t = tuple(x - y for x, y in zip(e, lq_e))
        if min(t) < 0:
            return None
        tc = _cdiv(c, lq_c)
        quot[t] = tc
        for eq, cq in rest:
            ee = tuple(map(_add, t, eq))
            old = r.get(ee)
            if old is None:
                r[ee] = -tc * cq
                heapq.heappush(heap, tuple(-x for x in ee))
            else:
                v = old - tc * cq
                if v:
                    r[ee] = v
                else:
                    del r[ee]
    quotient = LaurentPolynomial({e: _norm(c) for e, c in quot.items()}, n)
    shift = tuple(x - y for x, y in zip(mp, mq))
    return quotient.shift(shift)


def exact_divide(p, q):
    r = divide_or_none(p, q)
    if r is None:
        raise DivisibilityError("polynomial is not divisible")
    return r


# rational functions


def _normalize_factor(p):
    """Split p = scalar * x^m * key, key primitive with positive leading coefficient.

    key is None when p is a monomial.
    """
    if not p.terms:
        raise ZeroDivisionError("zero denominator")
    m, q = p.strip_monomial()
    if len(q.terms) == 1:
        return q.constant_value() if q.is_constant() else next(iter(q.terms.values())), m, None
    c, key = q.integer_content()
    return c, m, key


class RationalFunction:
    """Quotient of a Laurent polynomial by a product of normalized polynomial factors."""

    __slots__ = ("num", "den", "nvars")

    def __init__(self, num, den=None):
        num = _as_poly(num)
        if den is None:
            self._set(num, {})
            return
        den = _as_poly(den, num.nvars)
        c, m, key = _normalize_factor(den)
        n = max(num.nvars, den.nvars)
        num = num.padded(n).shift(tuple(-x for x in m)).scale(Fraction(1) / Fraction(c))
        self._set(num, {key.padded(n): 1} if key is not None else {})

    def _set(self, num, den):
        n = max([num.nvars] + [k.nvars for k in den])
        self.num = num.padded(n)
        self.den = {k.padded(n): m for k, m in den.items() if m}
        self.nvars = n

    @classmethod
    def make(cls, num, den):
        obj = cls.__new__(cls)
        obj._set(num, den)
        return obj

    @classmethod
    def from_factors(cls, num, factors):
        """Build num / prod(f^m) from (polynomial, multiplicity) pairs."""
        out = RationalFunction(num)
        for f, m in factors:
            out = out.divide_by_poly(f, m)
        return out

    @property
    def numerator(self):
        return self.num

    @property
    def denominator(self):
        d = LaurentPolynomial.constant(1, self.nvars)
        for k, m in sorted(self.den.items(), key=lambda t: serialize(t[0])):
            d = d * k ** m
        return d

    def is_polynomial(self):
        return not self.den

    def as_polynomial(self):
        if self.den:
            f = self.cancel()
            if f.den:
                raise DivisibilityError("rational function is not a Laurent polynomial")
            return f.num
        return self.num

    def is_zero(self):
        return not self.num.terms

    def is_constant(self):
        f = self.cancel()
        return not f.den and f.num.is_constant()

    def constant_value(self):
        f = self.gcd_reduce()
        if f.den or not f.num.is_constant():
            raise ValueError(f"not a constant: {serialize(f)}")
        return f.num.constant_value()

    # arithmetic

    def divide_by_poly(self, p, mult=1):
        """self / p**mult, cancelling p against the numerator only by key."""
        if mult < 0:
            return self.times_poly(p, -mult)
        c, m, key = _normalize_factor(_as_poly(p, self.nvars))
        num = self.num.shift(tuple(-x * mult for x in m))
        if c != 1:
            num = num.scale(Fraction(1) / Fraction(c) ** mult)
        den = dict(self.den)
        if key is not None:
            n = max(num.nvars, key.nvars)
            key = key.padded(n)
            den = {k.padded(n): v for k, v in den.items()}
            den[key] = den.get(key, 0) + mult
        return RationalFunction.make(num, den)

    def times_poly(self, p, mult=1):
        p = _as_poly(p, self.nvars)
        if not p.terms:
            return RationalFunction.make(LaurentPolynomial({}, self.nvars), {})
        c, m, key = _normalize_factor(p)
        num = self.num.shift(tuple(x * mult for x in m))
        if c != 1:
            num = num.scale(Fraction(c) ** mult)
        den = dict(self.den)
        if key is not None:
            n = max(num.nvars, key.nvars)
            key = key.padded(n)
            den = {k.padded(n): v for k, v in den.items()}
            have = den.get(key, 0)
            used = min(have, mult)
            if used:
                den[key] = have - used
            if mult - used:
                num = num * key ** (mult - used)
        return RationalFunction.make(num, den)

    @staticmethod
    def _coerce(x):
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, LaurentPolynomial):
            return RationalFunction.make(x, {})
        if isinstance(x, (int, Fraction)):
            return RationalFunction.make(LaurentPolynomial.constant(x), {})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num.terms:
            return self
        if not self.num.terms:
            return other
        n = max(self.nvars, other.nvars)
        da = {k.padded(n): m for k, m in self.den.items()}
        db = {k.padded(n): m for k, m in other.den.items()}
        common = dict(da)
        for k, m in db.items():
            if m > common.get(k, 0):
                common[k] = m
        na = self.num.padded(n)
        for k, m in common.items():
            extra = m - da.get(k, 0)
            if extra:
                na = na * k ** extra
        nb = other.num.padded(n)
        for k, m in common.items():
            extra = m - db.get(k, 0)
            if extra:
                nb = nb * k ** extra
        return RationalFunction.make(na + nb, common)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction.make(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalFunction.make(self.num.scale(other), self.den)
        if isinstance(other, LaurentPolynomial):
            return RationalFunction.make(self.num * other, self.den)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        n = max(self.nvars, other.nvars)
        den = {k.padded(n): m for k, m in self.den.items()}
        for k, m in other.den.items():
            k = k.padded(n)
            den[k] = den.get(k, 0) + m
        return RationalFunction.make(self.num * other.num, den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num.terms:
            raise ZeroDivisionError("inverse of zero")
        num = LaurentPolynomial.constant(1, self.nvars)
        for k, m in self.den.items():
            num = num * k ** m
        return RationalFunction.make(num, {}).divide_by_poly(self.num)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError
            return self * (Fraction(1) / other)
        if isinstance(other, LaurentPolynomial):
            return self.divide_by_poly(other)
        if isinstance(other, RationalFunction):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, m):
        if not isinstance(m, int):
            return NotImplemented
        if m < 0:
            return self.inverse() ** -m
        return RationalFunction.make(self.num ** m, {k: v * m for k, v in self.den.items()})

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).cancel().num.is_zero()

    def __hash__(self):
        raise TypeError("RationalFunction is not hashable; compare by value")

    def __repr__(self):
        return f"RationalFunction({serialize(self)!r})"

    __str__ = lambda self: serialize(self)

    # simplification

    def cancel(self):
        """Trial-divide the numerator by each denominator factor."""
        num = self.num
        den = {}
        for k, m in self.den.items():
            while m and num.terms:
                q = divide_or_none(num, k)
                if q is None:
                    break
                num, m = q, m - 1
            if m:
                den[k] = m
        if not num.terms:
            den = {}
        return RationalFunction.make(num, den)

    def gcd_reduce(self):
        """Make numerator and every denominator factor coprime."""
        f = self.cancel()
        if not f.den:
            return f
        _, core = f.num.strip_monomial()
        num = f.num
        den = dict(f.den)
        changed = True
        while changed:
            changed = False
            for k in list(den):
                g = poly_gcd(core, k)
                if g.is_constant():
                    continue
                num = exact_divide(num, g)
                core = exact_divide(core, g)
                rest = exact_divide(k, g)
                den[k] -= 1
                if not den[k]:
                    del den[k]
                c, m, key = _normalize_factor(rest)
                num = num.shift(tuple(-x for x in m)).scale(Fraction(1) / Fraction(c))
                if key is not None:
                    den[key] = den.get(key, 0) + 1
                changed = True
                break
        return RationalFunction.make(num, den)

    # substitution helpers

    def permute(self, images):
        out = RationalFunction.make(self.num.permute(images), {})
        for k, m in self.den.items():
            out = out.divide_by_poly(k.permute(images), m)
        return out

    def bar(self, var):
        num = self.num
        lo = (num.min_degree(var) if var <= num.nvars else 0) or 0
        if lo < 0:
            num = num.shift(tuple(-lo if i == var - 1 else 0 for i in range(num.nvars)))
        out = RationalFunction.make(num.bar(var), {})
        if lo < 0:
            out = out.divide_by_poly(bar_poly(var, self.nvars), -lo)
        for k, m in self.den.items():
            out = out.divide_by_poly(k.bar(var), m)
        return out

    def evaluate(self, point):
        d = Fraction(1)
        for k, m in self.den.items():
            v = k.evaluate(point)
            if not v:
                raise PoleError("denominator vanishes at the point")
            d *= Fraction(v) ** m
        return _norm(Fraction(self.num.evaluate(point)) / d)


def as_rational(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, LaurentPolynomial):
        return RationalFunction.make(x, {})
    return RationalFunction.make(LaurentPolynomial.constant(x), {})


def gcd_reduce(f):
    return as_rational(f).gcd_reduce()


# gcd through sympy's sparse polynomial rings

_RINGS = {}


def _ring(n):
    if n not in _RINGS:
        from sympy.polys.domains import ZZ
        from sympy.polys.rings import ring
        _RINGS[n] = ring([f"x{i + 1}" for i in range(n)], ZZ)[0]
    return _RINGS[n]


def poly_gcd(p, q):
    """Greatest common divisor of two polynomials (monomial content ignored), primitive."""
    n = max(p.nvars, q.nvars, 1)
    _, p = p.padded(n).strip_monomial()
    _, q = q.padded(n).strip_monomial()
    if p.is_constant() or q.is_constant():
        return LaurentPolynomial.constant(1, n)
    _, p = p.integer_content()
    _, q = q.integer_content()
    R = _ring(n)
    a = R.from_dict({e: c for e, c in p.terms.items()})
    b = R.from_dict({e: c for e, c in q.terms.items()})
    g = a.gcd(b)
    out = LaurentPolynomial.from_dict({tuple(e): int(c) for e, c in g.items()}, n)
    if out.is_constant():
        return LaurentPolynomial.constant(1, n)
    return out.integer_content()[1]


# substitution


def _binding_parts(b, nvars):
    """Return a binding as a RationalFunction in nvars variables."""
    b = as_rational(b)
    if b.nvars < nvars:
        b = RationalFunction.make(b.num.padded(nvars), b.den)
    return b


def _subst_poly(p, bindings, nvars):
    """Simultaneous substitution into a polynomial; returns a RationalFunction."""
    keys = sorted(v for v in bindings if v <= p.nvars and p.degree(v) is not None)
    keys = [v for v in keys if any(e[v - 1] for e in p.terms)]
    p = p.padded(nvars)
    if not keys:
        return RationalFunction.make(p, {})
    vals = {v: _binding_parts(bindings[v], nvars) for v in keys}
    powers = {}

    def power(v, d):
        key = (v, d)
        if key not in powers:
            b = vals[v]
            if d < 0:
                if b.num.is_zero():
                    raise PoleError(f"x{v} bound to 0 in a negative power")
                powers[key] = b.inverse() ** -d if not b.num.is_monomial() or b.den else RationalFunction.make(b.num ** d, {})
            else:
                powers[key] = RationalFunction.make(b.num ** d, {k: m * d for k, m in b.den.items()})
        return powers[key]

    def rec(q, j):
        if j == len(keys):
            return RationalFunction.make(q, {})
        total = None
        for d, c in sorted(q.coeffs_in(keys[j]).items()):
            part = rec(c, j + 1)
            if d:
                part = part * power(keys[j], d)
            total = part if total is None else total + part
        return total if total is not None else RationalFunction.make(LaurentPolynomial({}, nvars), {})

    return rec(p, 0)


def substitute(f, bindings):
    """Simultaneously replace x_v by bindings[v] (polynomial, rational function or number)."""
    f = as_rational(f)
    nvars = max([f.nvars] + [as_rational(b).nvars for b in bindings.values()])
    out = _subst_poly(f.num, bindings, nvars)
    for k, m in f.den.items():
        d = _subst_poly(k, bindings, nvars).cancel()
        if d.num.is_zero():
            raise PoleError("substitution makes the denominator vanish")
        out = out * (d.inverse() ** m)
    return out


def substitute_poly(p, bindings):
    """Substitute into a polynomial and insist on a Laurent polynomial result."""
    return substitute(p, bindings).as_polynomial()


# serialization


def _fmt_coef(c):
    if type(c) is Fraction:
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def _serialize_poly(p):
    if not p.terms:
        return "0"
    parts = []
    for e, c in p.sorted_terms():
        factors = []
        for i, x in enumerate(e):
            if x == 1:
                factors.append(f"x{i + 1}")
            elif x:
                factors.append(f"x{i + 1}^{x}")
        neg = c < 0
        a = -c if neg else c
        if factors:
            body = "*".join(factors) if a == 1 else _fmt_coef(a) + "*" + "*".join(factors)
        else:
            body = _fmt_coef(a)
        if not parts:
            parts.append("-" + body if neg else body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


def serialize(f):
    if isinstance(f, LaurentPolynomial):
        return _serialize_poly(f)
    if isinstance(f, RationalFunction):
        if not f.den:
            return _serialize_poly(f.num)
        m, core = f.num.strip_monomial()
        den = f.denominator
        if any(x < 0 for x in m):
            den = den.shift(tuple(-min(x, 0) for x in m))
            core = f.num.shift(tuple(-min(x, 0) for x in m))
        else:
            core = f.num
        return f"({_serialize_poly(core)})/({_serialize_poly(den)})"
    if isinstance(f, (int, Fraction)):
        return _fmt_coef(_norm(f))
    raise TypeError(type(f))


class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0
        idx = [int(t) for t in __import__("re").findall(r"x(\d+)", text)]
        self.nvars = max(idx, default=0)

    def error(self, msg):
        raise ParseError(msg, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def integer(self):
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected integer")
        return int(self.text[start:self.pos])

    def parse(self):
        value = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return value

    def expr(self):
        sign = 1
        if self.peek() in "+-" and self.peek():
            sign = -1 if self.text[self.pos] == "-" else 1
            self.pos += 1
        value = self.term()
        if sign < 0:
            value = -value
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek() in ("*", "/"):
            op = self.text[self.pos]
            self.pos += 1
            rhs = self.factor()
            if op == "*":
                value = value * rhs
            else:
                at = self.pos
                if isinstance(rhs, LaurentPolynomial) and rhs.is_zero():
                    raise ParseError("division by zero", at)
                if isinstance(rhs, RationalFunction) and rhs.is_zero():
                    raise ParseError("division by zero", at)
                if isinstance(value, LaurentPolynomial) and isinstance(rhs, LaurentPolynomial) and rhs.is_constant():
                    value = value.scale(Fraction(1) / rhs.constant_value())
                else:
                    value = as_rational(value) / rhs
        return value

    def factor(self):
        value = self.base()
        if self.peek() == "^":
            self.pos += 1
            neg = False
            if self.peek() == "-":
                neg = True
                self.pos += 1
            e = self.integer()
            if neg:
                if isinstance(value, LaurentPolynomial) and value.is_monomial():
                    value = value ** -e
                else:
                    value = as_rational(value) ** -e
            else:
                value = value ** e
        return value

    def base(self):
        c = self.peek()
        if c == "(":
            self.pos += 1
            value = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return value
        if c == "x":
            self.pos += 1
            if self.pos >= len(self.text) or not self.text[self.pos].isdigit():
                self.error("expected variable index")
            i = self.integer()
            if i < 1:
                self.error("variable index must be positive")
            return LaurentPolynomial.variable(i, self.nvars)
        if c.isdigit():
            return LaurentPolynomial.constant(self.integer(), self.nvars)
        self.error("expected operand")


def parse(text):
    """Parse an expression; returns a LaurentPolynomial when no division by a non-monomial occurs."""
    value = _Parser(text).parse()
    if isinstance(value, RationalFunction):
        value = value.cancel()
        if not value.den:
            return value.num
    return value


def parse_rational(text):
    return as_rational(parse(text))
