"""Signed permutations: the symmetric group S_k and the hyperoctahedral group W(B_k)."""
from dataclasses import dataclass
from itertools import permutations, product

from .algebra import LaurentPolynomial, RationalFunction, divide_or_none


def perm_sign(pi):
    pi = list(pi)
    sign = 1
    seen = [False] * len(pi)
    for i in range(len(pi)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = pi[j] - 1
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class SignedPermutation:
    """Acts on f by x_i -> x_{pi(i)} first, then x_i -> 1 - x_i wherever eps_i = -1."""

    pi: tuple
    eps: tuple

    def __post_init__(self):
        if sorted(self.pi) != list(range(1, len(self.pi) + 1)):
            raise ValueError(f"not a permutation: {self.pi}")
        if len(self.eps) != len(self.pi) or any(e not in (1, -1) for e in self.eps):
            raise ValueError(f"bad sign vector: {self.eps}")

    @classmethod
    def identity(cls, k):
        return cls(tuple(range(1, k + 1)), (1,) * k)

    @classmethod
    def of(cls, pi, eps=None):
        pi = tuple(pi)
        return cls(pi, tuple(eps) if eps is not None else (1,) * len(pi))

    @property
    def k(self):
        return len(self.pi)

    def sign(self):
        return perm_sign(self.pi) * (-1) ** self.eps.count(-1)

    def substitution(self):
        """Per variable i: (j, flipped) meaning x_i becomes x_j or 1 - x_j."""
        return tuple((p, self.eps[p - 1] == -1) for p in self.pi)

    @classmethod
    def from_substitution(cls, sub):
        pi = tuple(j for j, _ in sub)
        eps = [1] * len(sub)
        for j, flipped in sub:
            eps[j - 1] = -1 if flipped else 1
        return cls(pi, tuple(eps))

    def __mul__(self, other):
        """(g * h) f == g(h f)."""
        sg = self.substitution()
        out = []
        for j, fh in other.substitution():
            l, fg = sg[j - 1]
            out.append((l, fh != fg))
        return SignedPermutation.from_substitution(out)

    def inverse(self):
        k = self.k
        for h in hyperoctahedral(k):
            if (self * h).is_identity():
                return h
        raise AssertionError("no inverse")

    def is_identity(self):
        return self.pi == tuple(range(1, self.k + 1)) and all(e == 1 for e in self.eps)

    def __str__(self):
        eps = "".join("+" if e == 1 else "-" for e in self.eps)
        return f"[{','.join(map(str, self.pi))}]{eps}"


def sgn(g):
    return g.sign()


def symmetric_group(k):
    for pi in permutations(range(1, k + 1)):
        yield SignedPermutation(pi, (1,) * k)


def sign_vectors(k):
    # binary counting with the first coordinate most significant, -1 as the set bit
    for bits in product((1, -1), repeat=k):
        yield bits


def hyperoctahedral(k):
    for pi in permutations(range(1, k + 1)):
        for eps in sign_vectors(k):
            yield SignedPermutation(pi, eps)


def act(g, f):
    """Apply a signed permutation to a polynomial or rational function."""
    out = f.permute(g.pi) if g.pi != tuple(range(1, g.k + 1)) else f
    for i, e in enumerate(g.eps):
        if e == -1:
            out = out.bar(i + 1)
    return out


def _zero_like(f, k):
    if isinstance(f, RationalFunction):
        return RationalFunction.make(LaurentPolynomial({}, max(k, f.nvars)), {})
    return LaurentPolynomial({}, max(k, f.nvars))


def antisymmetrize_literal(f, group, k):
    """Direct sum of sgn(g) g f over the group in its fixed enumeration order."""
    elements = symmetric_group(k) if group == "Sk" else hyperoctahedral(k)
    total = _zero_like(f, k)
    for g in elements:
        term = act(g, f)
        total = total + term if g.sign() == 1 else total - term
    return total


def antisymmetrize(f, group, k):
    """Sum of sgn(g) g f over S_k or W(B_k).

    For W(B_k) the sum factors as prod_i (I - bar_i) applied to the S_k sum,
    since every element is a sign vector composed after a permutation.
    """
    if group not in ("Sk", "WBk"):
        raise ValueError(f"unknown group {group!r}")
    total = antisymmetrize_literal(f, "Sk", k)
    if group == "WBk":
        for i in range(1, k + 1):
            total = total - total.bar(i)
    return total


def generators(group, k):
    gens = []
    for i in range(1, k):
        pi = list(range(1, k + 1))
        pi[i - 1], pi[i] = pi[i], pi[i - 1]
        gens.append(SignedPermutation(tuple(pi), (1,) * k))
    if group == "WBk" and k >= 1:
        gens.append(SignedPermutation(tuple(range(1, k + 1)), (-1,) + (1,) * (k - 1)))
    return gens


def is_antisymmetric(f, group, k):
    return all(act(g, f) == -f for g in generators(group, k))


def is_symmetric(f, group, k):
    return all(act(g, f) == f for g in generators(group, k))


def divides_vandermonde(p, k):
    from .kernels import vandermonde
    return divide_or_none(p, vandermonde(k)) is not None


def divides_delta(p, k):
    from .kernels import delta
    return divide_or_none(p, delta(k)) is not None
