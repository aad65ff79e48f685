"""Jensen polynomials, Turan inequalities and the Hermite limit for invariant sequences."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable

import mpmath

from .cyclotomic import CyclotomicValue
from .invariants import InvariantFamily, alpha1, alpha2, alpha3
from .polynomial import RationalPolynomial, _integer_coeffs, hermite, is_hyperbolic
from .qseries import CoefficientTable, shared_table

Sequence_ = Callable[[int], Fraction]


def _getter(seq) -> Sequence_:
    if callable(seq):
        return seq
    return seq.__getitem__


def jensen_poly(seq, d: int, n: int) -> RationalPolynomial:
    """J^{d,n}(X) = sum_{j=0}^{d} C(d, j) seq(n + j) X^j."""
    if d < 1:
        raise ValueError("d must be >= 1")
    get = _getter(seq)
    return RationalPolynomial(comb(d, j) * Fraction(get(n + j)) for j in range(d + 1))


def log_concave_at(seq, n: int) -> bool:
    """seq(n)^2 >= seq(n-1) seq(n+1), compared exactly."""
    get = _getter(seq)
    mid = Fraction(get(n))
    return mid * mid >= Fraction(get(n - 1)) * Fraction(get(n + 1))


def _scaled_power_sums(c: list[int], count: int) -> list[int]:
    """s_m = L^m p_m for m < count, where p_m is the m-th power sum of the roots
    of sum c_i X^i and L = c[-1]; Newton's identities keep every s_m integral."""
    k = len(c) - 1
    lead = c[-1]
    lpow = [1]
    for _ in range(k):
        lpow.append(lpow[-1] * lead)
    s = [k]
    for m in range(1, count):
        acc = 0
        for i in range(1, min(m, k) + 1):
            acc -= c[k - i] * lpow[i - 1] * (m if i == m else s[m - i])
        s.append(acc)
    return s


def hankel_minors(seq, n: int, k: int) -> list[int]:
    """Positive multiples of the leading principal minors of the Hermite matrix
    [p_{i+j}]_{0<=i,j<k} of J^{k,n}, where p_m are the power sums of its roots.

    Strict positivity of all k minors is equivalent to J^{k,n} having k
    distinct real roots; the 2x2 minor is a positive multiple of
    seq(n+1)^2 - seq(n) seq(n+2).  The matrix is taken over the integers as
    [L^(i+j) p_{i+j}] for the primitive integer form of J^{k,n} with leading
    coefficient L, which rescales the m-th minor by L^(m(m-1)) > 0; Bareiss
    elimination then yields the minors exactly.  Stops at the first zero minor.
    """
    poly = jensen_poly(seq, k, n)
    if poly.degree != k:
        raise ValueError(f"J^({k},{n}) has degree {poly.degree}; the window must be nonzero at n+{k}")
    s = _scaled_power_sums(_integer_coeffs(poly), 2 * k - 1)
    mat = [[s[i + j] for j in range(k)] for i in range(k)]
    minors = []
    prev = 1
    for i in range(k):
        pivot = mat[i][i]
        minors.append(pivot)
        if pivot == 0:
            break
        for r in range(i + 1, k):
            for c in range(i + 1, k):
                mat[r][c] = (mat[r][c] * pivot - mat[r][i] * mat[i][c]) // prev
        prev = pivot
    return minors


def hankel_check(seq, n: int, k: int) -> bool:
    """Order-k Turan check at n: the window seq(n..n+k) is positive and every
    leading principal minor up to size k is strictly positive."""
    get = _getter(seq)
    if any(Fraction(get(n + j)) <= 0 for j in range(k + 1)):
        return False
    minors = hankel_minors(seq, n, k)
    return len(minors) == k and all(m > 0 for m in minors)


# -- renormalised Jensen polynomials ------------------------------------------

def _log_main_derivatives(y):
    """First and second derivative in y of log(2 pi y^(-13/2) I_13(4 pi sqrt(y)))."""
    z = 4 * mpmath.pi * mpmath.sqrt(y)
    # R = I_13'/I_13 = I_14/I_13 + 13/z, and R' = 1 + 169/z^2 - R/z - R^2 from the Bessel equation
    R = mpmath.besseli(14, z) / mpmath.besseli(13, z) + 13 / z
    dR = 1 + 169 / z**2 - R / z - R * R
    dz = z / (2 * y)
    d2z = -z / (4 * y * y)
    first = -mpmath.mpf(13) / (2 * y) + R * dz
    second = mpmath.mpf(13) / (2 * y * y) + dR * dz * dz + R * d2z
    return first, second


def growth_parameters(n: int, scale: int, shift: int = 0, order: str = "leading", precision: int = 256):
    """(A(n), delta(n)) for a sequence growing like a(scale * n + shift).

    ``leading``: A = 2 pi sqrt(scale / n), delta^2 = (pi/2) sqrt(scale) n^(-3/2).
    ``refined``: A = (log M)'(n), delta^2 = -(log M)''(n) / 2 with M the
    Bessel main term of a(scale * x + shift).
    """
    with mpmath.workprec(precision):
        if order == "leading":
            A = 2 * mpmath.pi * mpmath.sqrt(mpmath.mpf(scale) / n)
            delta = mpmath.sqrt(mpmath.pi / 2 * mpmath.sqrt(scale)) * mpmath.power(n, mpmath.mpf(-3) / 4)
            return A, delta
        if order == "refined":
            y = mpmath.mpf(scale * n + shift)
            if y <= 0:
                raise ValueError("refined growth parameters need scale * n + shift > 0")
            first, second = _log_main_derivatives(y)
            return scale * first, mpmath.sqrt(-(scale * scale) * second / 2)
    raise ValueError(f"order must be 'leading' or 'refined', got {order!r}")


def renormalized_jensen(
    seq, d: int, n: int, scale: int, shift: int = 0, order: str = "leading", precision: int = 256
) -> list[mpmath.mpf]:
    """Coefficients (constant first) of delta^-d / seq(n) * J^{d,n}((delta X - 1) / exp(A))."""
    if precision < 128:
        raise ValueError("precision must be >= 128 bits")
    get = _getter(seq)
    base = Fraction(get(n))
    if base <= 0:
        raise ValueError(f"renormalization needs seq({n}) > 0")
    A, delta = growth_parameters(n, scale, shift, order, precision)
    with mpmath.workprec(precision):
        ratios = []
        for j in range(d + 1):
            q = Fraction(get(n + j)) / base
            ratios.append(mpmath.mpf(q.numerator) / q.denominator)
        out = []
        for i in range(d + 1):
            acc = mpmath.mpf(0)
            for j in range(i, d + 1):
                term = comb(d, j) * comb(j, i) * ratios[j] * mpmath.exp(-j * A)
                acc += term if (j - i) % 2 == 0 else -term
            out.append(acc * delta ** (i - d))
    return out


def hermite_deviation(coeffs, d: int) -> mpmath.mpf:
    """max_i |coeffs[i] - [X^i] H_d|."""
    target = hermite(d).coeffs
    return max(abs(c - (target[i] if i < len(target) else 0)) for i, c in enumerate(coeffs))


# -- scans over invariant sequences -------------------------------------------

@dataclass(frozen=True)
class InvariantSequence:
    """n -> invariant value along one of the subsequences named in the Turan theorem."""

    family: InvariantFamily
    subsequence: str  # "n", "pn" or "p2n"
    table: CoefficientTable = field(repr=False)
    # growth a(scale * n + shift) of the dominant term, for renormalisation
    scale: int = 1
    shift: int = 0

    @property
    def label(self) -> str:
        return f"{self.family.label}[{self.subsequence}]"

    def index(self, n: int) -> int:
        p = self.family.p or 1
        return {"n": n, "pn": p * n, "p2n": p * p * n}[self.subsequence]

    def exact(self, n: int):
        fam, m = self.family, self.index(n)
        if fam.kind == "su_r":
            return alpha1(fam.r, m, self.table)
        if fam.kind == "su_p":
            return alpha2(fam.p, fam.w_is_zero_class, fam.w_squared, m, self.table)
        return alpha3(fam.p, fam.rho, m, self.table)

    def __call__(self, n: int) -> Fraction:
        """Exact value, or the exact real part of a non-real cyclotomic value."""
        value = self.exact(n)
        if isinstance(value, CyclotomicValue):
            return value.real_part().to_rational()
        return value

    def is_real(self, n: int) -> bool:
        value = self.exact(n)
        return not isinstance(value, CyclotomicValue) or value.is_rational()


def default_subsequence(family: InvariantFamily) -> str:
    if family.kind == "su_r":
        return "n"
    if family.kind == "twisted":
        return "pn"
    w2, p = family.w_squared, family.p
    if w2 % 2 == 1 and w2 % p != 0:
        return "n"  # gcd(2p, w^2) = 1
    if w2 % (2 * p) == 0:
        return "pn"
    return "p2n"


def family_sequence(
    family: InvariantFamily, subsequence: str | None = None, n_max: int = 0, table: CoefficientTable | None = None
) -> InvariantSequence:
    sub = subsequence or default_subsequence(family)
    if sub not in ("n", "pn", "p2n"):
        raise ValueError(f"unknown subsequence {sub!r}")
    if family.kind == "su_r" and sub != "n":
        raise ValueError("SU(r) invariants are scanned along n only")
    p = family.p or 1
    r = family.r or 1
    mult = {"n": 1, "pn": p, "p2n": p * p}[sub]
    if family.kind == "su_r":
        scale, shift = r, -r * r
    elif family.kind == "twisted":
        scale, shift = mult, -p * p
    else:
        scale, shift = mult, 0
    need = max(scale * n_max + shift, 0) + 1
    table = table if table is not None else shared_table(need)
    return InvariantSequence(family, sub, table, scale, shift)


@dataclass(frozen=True)
class TuranReport:
    label: str
    d: int
    n_min: int
    n_max: int
    first_hyperbolic_n: int | None
    failures: tuple[int, ...]
    nonpositive: tuple[int, ...]
    non_real: bool
    hankel_positive_from: int | None
    boundary: tuple[int, ...]

    def as_dict(self) -> dict:
        return {
            "family": self.label,
            "d": self.d,
            "n_min": self.n_min,
            "n_max": self.n_max,
            "first_hyperbolic_n": self.first_hyperbolic_n,
            "failures": list(self.failures),
            "nonpositive": list(self.nonpositive),
            "non_real": self.non_real,
            "hankel_positive_from": self.hankel_positive_from,
            "boundary": list(self.boundary),
        }


def _threshold(flags: list[bool], n_min: int) -> int | None:
    """Smallest n0 such that flags hold for every n in [n0, n_max]."""
    start = None
    for i in range(len(flags) - 1, -1, -1):
        if not flags[i]:
            break
        start = n_min + i
    return start


def scan_sequence(seq, d: int, n_min: int, n_max: int, label: str = "sequence", hankel: bool = True) -> TuranReport:
    """Hyperbolicity of J^{d,n} for n_min <= n <= n_max.

    Windows containing a nonpositive value are recorded as failures (and
    listed under ``nonpositive``) rather than skipped.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    if n_max < n_min:
        raise ValueError("empty window")
    get = _getter(seq)
    values = [Fraction(get(n)) for n in range(n_min, n_max + d + 1)]
    non_real = False
    if isinstance(seq, InvariantSequence):
        non_real = any(not seq.is_real(n) for n in range(n_min, n_max + d + 1))
    window = lambda n: values[n - n_min : n - n_min + d + 1]
    hyper, hank, failures, nonpos, boundary = [], [], [], [], []
    for n in range(n_min, n_max + 1):
        w = window(n)
        if any(v <= 0 for v in w):
            nonpos.append(n)
            failures.append(n)
            hyper.append(False)
            hank.append(False)
            continue
        ok = is_hyperbolic(RationalPolynomial(comb(d, j) * w[j] for j in range(d + 1)))
        hyper.append(ok)
        if not ok:
            failures.append(n)
        if hankel:
            minors = hankel_minors(lambda m: values[m - n_min], n, d)
            good = len(minors) == d and all(m > 0 for m in minors)
            if not good and all(m >= 0 for m in minors):
                boundary.append(n)
            hank.append(good)
    return TuranReport(
        label=label,
        d=d,
        n_min=n_min,
        n_max=n_max,
        first_hyperbolic_n=_threshold(hyper, n_min),
        failures=tuple(failures),
        nonpositive=tuple(nonpos),
        non_real=non_real,
        hankel_positive_from=_threshold(hank, n_min) if hankel else None,
        boundary=tuple(boundary),
    )


def turan_scan(
    family: InvariantFamily,
    d: int,
    n_min: int,
    n_max: int,
    subsequence: str | None = None,
    table: CoefficientTable | None = None,
    hankel: bool = True,
) -> TuranReport:
    """Scan the family's invariant along its Turan subsequence (see
    :func:`default_subsequence`)."""
    seq = family_sequence(family, subsequence, n_max + d, table)
    return scan_sequence(seq, d, n_min, n_max, label=seq.label, hankel=hankel)
