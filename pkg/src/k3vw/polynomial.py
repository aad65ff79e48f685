"""Dense polynomials over Q and exact real-root counting."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import comb, factorial, gcd, lcm
from typing import Iterable, Sequence


@dataclass(frozen=True)
class RationalPolynomial:
    """Exact polynomial, constant term first; trailing zeros are stripped."""

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def from_roots(cls, roots: Iterable, leading=1) -> "RationalPolynomial":
        poly = cls([leading])
        for r in roots:
            poly = poly * cls([-Fraction(r), 1])
        return poly

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return RationalPolynomial(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
        )

    def __neg__(self) -> "RationalPolynomial":
        return RationalPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "RationalPolynomial":
        if not isinstance(other, RationalPolynomial):
            c = Fraction(other)
            return RationalPolynomial(a * c for a in self.coeffs)
        if self.is_zero() or other.is_zero():
            return RationalPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "RationalPolynomial":
        out = RationalPolynomial([1])
        for _ in range(e):
            out = out * self
        return out

    def derivative(self) -> "RationalPolynomial":
        return RationalPolynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def __divmod__(self, other: "RationalPolynomial"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return RationalPolynomial(), self
        quot = [Fraction(0)] * (dq + 1)
        lead = other.leading
        for i in range(dq, -1, -1):
            q = rem[i + other.degree] / lead
            quot[i] = q
            if q:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= q * b
        return RationalPolynomial(quot), RationalPolynomial(rem[: other.degree])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "RationalPolynomial":
        return self * (1 / self.leading)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = [f"({c})*X^{i}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(parts)


X = RationalPolynomial([0, 1])


def poly_gcd(f: RationalPolynomial, g: RationalPolynomial) -> RationalPolynomial:
    """Monic gcd over Q (zero only if both inputs are zero)."""
    while not g.is_zero():
        f, g = g, f % g
    return f.monic() if not f.is_zero() else f


def squarefree_decomposition(f: RationalPolynomial) -> list[tuple[RationalPolynomial, int]]:
    """Yun's algorithm: f = c * prod a_i^i with the a_i squarefree and coprime."""
    if f.is_zero():
        raise ValueError("zero polynomial has no squarefree decomposition")
    out = []
    if f.degree == 0:
        return out
    df = f.derivative()
    a0 = poly_gcd(f, df)
    b = f // a0
    c = df // a0
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        b = b // a
        c = d // a
        d = c - b.derivative()
        if a.degree > 0:
            out.append((a, i))
        i += 1
    return out


# -- integer Sturm chains -----------------------------------------------------

def _integer_coeffs(f: RationalPolynomial) -> list[int]:
    den = reduce(lcm, (c.denominator for c in f.coeffs), 1)
    ints = [int(c * den) for c in f.coeffs]
    return _primitive(ints)


def _primitive(p: list[int]) -> list[int]:
    g = reduce(gcd, p, 0)
    return [c // g for c in p] if g > 1 else p


def _trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _prem_positive(f: list[int], g: list[int]) -> list[int]:
    """|lc(g)|^(deg f - deg g + 1) * f reduced mod g: a positive multiple of the remainder."""
    f = list(f)
    dg = len(g) - 1
    lc = g[-1]
    alc = abs(lc)
    sgn = 1 if lc > 0 else -1
    for i in range(len(f) - 1, dg - 1, -1):
        lead = f[i]
        f = [alc * c for c in f]
        if lead:
            shift = i - dg
            for j, b in enumerate(g):
                f[shift + j] -= sgn * lead * b
    return _trim(f[:dg])


def sturm_chain(f: RationalPolynomial) -> list[list[int]]:
    """Sturm sequence of f with integer coefficients (positive rescalings only)."""
    p0 = _integer_coeffs(f)
    p1 = _primitive(_trim([i * c for i, c in enumerate(p0) if i]))
    chain = [p0]
    while p1:
        chain.append(p1)
        r = _prem_positive(chain[-2], chain[-1])
        p1 = _primitive([-c for c in r]) if r else []
    return chain


def _sign_changes(signs: Sequence[int]) -> int:
    nz = [s for s in signs if s]
    return sum(1 for a, b in zip(nz, nz[1:]) if a != b)


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def distinct_real_roots(f: RationalPolynomial, chain: list[list[int]] | None = None) -> int:
    """Number of distinct real roots of f, from sign changes at -inf and +inf."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    chain = chain if chain is not None else sturm_chain(f)
    at_pos = [_sign(p[-1]) for p in chain]
    at_neg = [_sign(p[-1]) * (-1) ** (len(p) - 1) for p in chain]
    return _sign_changes(at_neg) - _sign_changes(at_pos)


def real_root_count(f: RationalPolynomial, multiplicity: bool = True) -> int:
    """Real roots of f, counted with multiplicity via the squarefree decomposition."""
    if not multiplicity:
        return distinct_real_roots(f)
    return sum(m * distinct_real_roots(a) for a, m in squarefree_decomposition(f))


def is_hyperbolic(f: RationalPolynomial) -> bool:
    """True iff every complex root of f is real.

    The last element of the Sturm chain is gcd(f, f'), so the squarefree part
    f / gcd(f, f') has degree deg f - deg chain[-1]; f is hyperbolic exactly
    when all of those distinct roots are real.
    """
    if f.is_zero():
        raise ValueError("the zero polynomial is not a valid input")
    if f.degree == 0:
        return True
    chain = sturm_chain(f)
    squarefree_degree = f.degree - (len(chain[-1]) - 1)
    return distinct_real_roots(f, chain) == squarefree_degree


def hermite(d: int) -> RationalPolynomial:
    """H_d with sum_d H_d(X) t^d / d! = exp(-t^2 + X t)."""
    if d < 0:
        raise ValueError("d must be >= 0")
    coeffs = [Fraction(0)] * (d + 1)
    for m in range(d // 2 + 1):
        coeffs[d - 2 * m] = Fraction((-1) ** m * factorial(d), factorial(m) * factorial(d - 2 * m))
    return RationalPolynomial(coeffs)


def binomial_poly(d: int) -> RationalPolynomial:
    """(1 + X)^d."""
    return RationalPolynomial(comb(d, j) for j in range(d + 1))
