"""Complex polynomials, rational functions, truncated series and Mobius maps.

Conventions used throughout the package:

* polynomials are dense, coefficients ascending by degree, complex doubles;
* a coefficient c is treated as zero when |c| <= ZERO_TOL * (1 + max |coeff|)
  of the polynomial it belongs to;
* the point at infinity is the tagged constant ``INF``, never a large float.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInput, NonConvergence

# Relative coefficient zero-tolerance, configurable at module level.
ZERO_TOL = 1e-12

# Primitive cube root of unity, j = exp(2*pi*i/3).
J = complex(-0.5, math.sqrt(3.0) / 2.0)


class _Infinity:
    """The distinguished point of the Riemann sphere."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("riemann-infinity")


INF = _Infinity()


def is_inf(z) -> bool:
    return z is INF


def _trim(coeffs):
    c = [complex(x) for x in coeffs]
    if not c:
        return []
    scale = max(abs(x) for x in c)
    tol = ZERO_TOL * (1.0 + scale)
    n = len(c)
    while n > 0 and abs(c[n - 1]) <= tol:
        n -= 1
    return c[:n]


class Poly:
    """Dense complex polynomial, ascending coefficients, trailing zeros trimmed."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        self.coeffs = tuple(_trim(coeffs))

    @staticmethod
    def zero():
        return Poly(())

    @staticmethod
    def one():
        return Poly((1.0,))

    @staticmethod
    def x():
        return Poly((0.0, 1.0))

    @staticmethod
    def const(c):
        return Poly((c,))

    @staticmethod
    def from_roots(roots):
        p = Poly.one()
        for r in roots:
            p = p * Poly((-complex(r), 1.0))
        return p

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else -1

    @property
    def lead(self):
        if self.is_zero:
            raise DegenerateInput("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def scale(self):
        return max((abs(c) for c in self.coeffs), default=0.0)

    def __call__(self, z):
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0j] * (n - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            a[i] += c
        return Poly(a)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) + (-self)

    def __mul__(self, other):
        other = _as_poly(other)
        if self.is_zero or other.is_zero:
            return Poly.zero()
        out = [0j] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for k, b in enumerate(other.coeffs):
                out[i + k] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"

    def deriv(self):
        return Poly([k * c for k, c in enumerate(self.coeffs)][1:])

    def monic(self):
        if self.is_zero:
            raise DegenerateInput("cannot normalize the zero polynomial")
        lead = self.lead
        return Poly([c / lead for c in self.coeffs])

    def shift(self, c):
        """Coefficients of p(t + c), i.e. the Taylor expansion about c."""
        c = complex(c)
        out = list(self.coeffs)
        n = len(out)
        # Repeated synthetic division by (z - c).
        for i in range(n - 1):
            for k in range(n - 2, i - 1, -1):
                out[k] += c * out[k + 1]
        return out

    def divmod(self, other):
        other = _as_poly(other)
        if other.is_zero:
            raise DegenerateInput("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly.zero(), Poly(rem)
        quot = [0j] * (dq + 1)
        dcoef = other.coeffs
        for i in range(dq, -1, -1):
            q = rem[i + len(dcoef) - 1] / dcoef[-1]
            quot[i] = q
            for k, c in enumerate(dcoef):
                rem[i + k] -= q * c
        return Poly(quot), Poly(rem)

    def __truediv__(self, other):
        if isinstance(other, Poly):
            q, r = self.divmod(other)
            return q
        return Poly([c / other for c in self.coeffs])


def _as_poly(p):
    if isinstance(p, Poly):
        return p
    if isinstance(p, (int, float, complex)):
        return Poly((complex(p),))
    return Poly(p)


def poly_roots(p: Poly, tol: float = 1e-9):
    """All roots with multiplicity, deterministically ordered.

    Companion-matrix eigenvalues; order is lexicographic by (re, im) after
    rounding at tol.  Raises NonConvergence if the eigenvalue iteration fails.
    """
    if p.is_zero or p.degree < 1:
        raise DegenerateInput("root finding needs degree >= 1")
    try:
        rts = np.roots(list(reversed(p.coeffs)))
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise NonConvergence(str(exc))
    rts = [complex(r) for r in rts]
    rts.sort(key=lambda z: (round(z.real / tol), round(z.imag / tol), z.real, z.imag))
    return rts


def poly_resultant(p: Poly, q: Poly):
    """Sylvester-matrix determinant; zero iff p and q share a root."""
    if p.is_zero or q.is_zero:
        raise DegenerateInput("resultant needs nonzero polynomials")
    m, n = p.degree, q.degree
    if m == 0:
        return p.coeffs[0] ** n
    if n == 0:
        return q.coeffs[0] ** m
    size = m + n
    s = np.zeros((size, size), dtype=complex)
    prow = list(reversed(p.coeffs))
    qrow = list(reversed(q.coeffs))
    for i in range(n):
        s[i, i : i + m + 1] = prow
    for i in range(m):
        s[n + i, i : i + n + 1] = qrow
    return complex(np.linalg.det(s))


def poly_discriminant(p: Poly):
    """discriminant(p) = resultant(p, p') / lead, with the (-1)^(n(n-1)/2) sign."""
    n = p.degree
    if n < 2:
        raise DegenerateInput("discriminant needs degree >= 2")
    res = poly_resultant(p, p.deriv())
    sign = -1.0 if (n * (n - 1) // 2) % 2 else 1.0
    return sign * res / p.lead


def poly_gcd(p: Poly, q: Poly):
    """Approximate monic GCD at the zero tolerance.

    Euclid with monic normalization at every step; a remainder is declared
    zero when its scale drops below tol relative to the running scale.  The
    candidate is verified by division, with a root-matching fallback for the
    ill-conditioned cases.
    """
    if p.is_zero:
        return q.monic() if not q.is_zero else Poly.zero()
    if q.is_zero:
        return p.monic()
    tol = 1e-8
    a, b = p.monic(), q.monic()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero:
        _, r = a.divmod(b)
        if r.is_zero or r.scale() <= tol:
            g = b.monic()
            if _divides(p, g, tol) and _divides(q, g, tol):
                return g
            return _gcd_by_roots(p, q, tol)
        a, b = b, r.monic()
    return a.monic()


def _divides(p: Poly, g: Poly, tol: float) -> bool:
    _, r = p.divmod(g)
    return r.is_zero or r.scale() <= tol * (1.0 + p.scale())


def _gcd_by_roots(p: Poly, q: Poly, tol: float):
    if p.degree < 1 or q.degree < 1:
        return Poly.one()
    rp = poly_roots(p)
    rq = list(poly_roots(q))
    common = []
    match_tol = 1e-7 * (1.0 + max(max(abs(r) for r in rp), max(abs(r) for r in rq)))
    for r in rp:
        best = None
        for i, s in enumerate(rq):
            if abs(r - s) <= match_tol and (best is None or abs(r - rq[best]) > abs(r - s)):
                best = i
        if best is not None:
            common.append((r + rq.pop(best)) / 2.0)
    return Poly.from_roots(common)


class RationalMap:
    """Quotient of coprime polynomials with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den, reduce=True):
        num = _as_poly(num)
        den = _as_poly(den)
        if den.is_zero:
            raise DegenerateInput("zero denominator")
        if num.is_zero:
            self.num = Poly.zero()
            self.den = Poly.one()
            return
        if reduce:
            g = poly_gcd(num, den)
            if g.degree >= 1:
                num = num.divmod(g)[0]
                den = den.divmod(g)[0]
        lead = den.lead
        self.num = Poly([c / lead for c in num.coeffs])
        self.den = den.monic()

    @property
    def is_zero(self):
        return self.num.is_zero

    def __call__(self, z):
        if is_inf(z):
            dn, dd = self.num.degree, self.den.degree
            if dn > dd:
                return INF
            if dn < dd:
                return 0j
            return self.num.lead / self.den.lead
        nv = self.num(z)
        dv = self.den(z)
        if abs(dv) == 0.0:
            return INF
        return nv / dv

    def __add__(self, other):
        other = _as_rational(other)
        return RationalMap(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalMap(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-_as_rational(other))

    def __rsub__(self, other):
        return _as_rational(other) + (-self)

    def __mul__(self, other):
        other = _as_rational(other)
        return RationalMap(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_rational(other)
        if other.is_zero:
            raise DegenerateInput("division by the zero function")
        return RationalMap(self.num * other.den, self.den * other.num)

    def deriv(self):
        return RationalMap(
            self.num.deriv() * self.den - self.num * self.den.deriv(),
            self.den * self.den,
        )

    def degree(self):
        return max(self.num.degree, self.den.degree)

    def __eq__(self, other):
        if not isinstance(other, RationalMap):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __repr__(self):
        return f"RationalMap({self.num!r}, {self.den!r})"

    def close_to(self, other, tol=1e-8):
        """Coefficientwise comparison of the normalized representations."""
        scale = 1.0 + max(self.num.scale(), other.num.scale(),
                          self.den.scale(), other.den.scale())
        for a, b in ((self.num, other.num), (self.den, other.den)):
            if len(a.coeffs) != len(b.coeffs):
                return False
            for x, y in zip(a.coeffs, b.coeffs):
                if abs(x - y) > tol * scale:
                    return False
        return True


def _as_rational(f):
    if isinstance(f, RationalMap):
        return f
    if isinstance(f, Poly):
        return RationalMap(f, Poly.one(), reduce=False)
    return RationalMap(Poly((complex(f),)), Poly.one(), reduce=False)


def rational_normalize(num, den) -> RationalMap:
    """Divide out the approximate GCD and rescale the denominator monic."""
    num = _as_poly(num)
    den = _as_poly(den)
    if num.is_zero and den.is_zero:
        raise DegenerateInput("0/0 is not a rational map")
    return RationalMap(num, den)


@dataclass(frozen=True)
class TruncatedSeries:
    """Finitely many Taylor coefficients about a base point.

    coeffs[k] is the coefficient of (z - base)^k unless the consumer
    documents a different offset (the tail series q starts at a_1).
    """

    base: complex
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))
        if len(self.coeffs) < 1:
            raise DegenerateInput("series needs at least one retained term")

    @property
    def order(self):
        return len(self.coeffs)

    def __call__(self, z):
        t = complex(z) - self.base
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc


# Truncated power series helpers on plain coefficient lists (base 0).

def series_mul(a, b, n):
    out = [0j] * n
    for i, x in enumerate(a[:n]):
        if x == 0:
            continue
        for k, y in enumerate(b[: n - i]):
            out[i + k] += x * y
    return out


def series_inv(a, n):
    if abs(a[0]) == 0.0:
        raise DegenerateInput("series inverse needs nonzero constant term")
    out = [0j] * n
    out[0] = 1.0 / a[0]
    for k in range(1, n):
        s = 0j
        for i in range(1, min(k, len(a) - 1) + 1):
            s += a[i] * out[k - i]
        out[k] = -s / a[0]
    return out


def series_div(a, b, n):
    return series_mul(a, series_inv(b, n), n)


class Mobius:
    """2x2 complex matrix acting on the Riemann sphere, det normalized to 1."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d, normalize=True):
        a, b, c, d = complex(a), complex(b), complex(c), complex(d)
        det = a * d - b * c
        if abs(det) <= 1e-14 * (1.0 + max(abs(a), abs(b), abs(c), abs(d)) ** 2):
            raise DegenerateInput("singular Mobius matrix")
        if normalize:
            s = cmath.sqrt(det)
            a, b, c, d = a / s, b / s, c / s, d / s
        self.a, self.b, self.c, self.d = a, b, c, d

    @staticmethod
    def identity():
        return Mobius(1, 0, 0, 1, normalize=False)

    def __call__(self, z):
        if is_inf(z):
            if abs(self.c) == 0.0:
                return INF
            return self.a / self.c
        z = complex(z)
        denom = self.c * z + self.d
        if abs(denom) == 0.0:
            return INF
        return (self.a * z + self.b) / denom

    def compose(self, other):
        return Mobius(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __matmul__(self, other):
        return self.compose(other)

    def inverse(self):
        return Mobius(self.d, -self.b, -self.c, self.a)

    def as_rational(self):
        return RationalMap(Poly((self.b, self.a)), Poly((self.d, self.c)))

    def is_identity(self, tol=1e-9):
        for sign in (1.0, -1.0):
            if (
                abs(self.a - sign) <= tol
                and abs(self.d - sign) <= tol
                and abs(self.b) <= tol
                and abs(self.c) <= tol
            ):
                return True
        return False

    def __repr__(self):
        return f"Mobius({self.a!r}, {self.b!r}, {self.c!r}, {self.d!r})"


def _to_zero_one_inf(z1, z2, z3):
    """Matrix of the Mobius map sending (z1, z2, z3) to (0, 1, INF)."""
    if is_inf(z1):
        return Mobius(0, z2 - z3, 1, -z3)
    if is_inf(z2):
        return Mobius(1, -z1, 1, -z3)
    if is_inf(z3):
        return Mobius(1, -z1, 0, z2 - z1)
    return Mobius(z2 - z3, -z1 * (z2 - z3), z2 - z1, -z3 * (z2 - z1))


def _points_distinct(pts, tol=1e-12):
    for i in range(len(pts)):
        for k in range(i + 1, len(pts)):
            p, q = pts[i], pts[k]
            if is_inf(p) or is_inf(q):
                if is_inf(p) and is_inf(q):
                    return False
            elif abs(complex(p) - complex(q)) <= tol:
                return False
    return True


def mobius_from_triples(src, dst) -> Mobius:
    """The unique Mobius map carrying the src triple to the dst triple in order."""
    src = tuple(src)
    dst = tuple(dst)
    if len(src) != 3 or len(dst) != 3:
        raise DegenerateInput("need exactly three source and target points")
    if not _points_distinct(src) or not _points_distinct(dst):
        raise DegenerateInput("triple points must be pairwise distinct")
    return _to_zero_one_inf(*dst).inverse().compose(_to_zero_one_inf(*src))


def riemann_close(p, q, tol=1e-9):
    """Chordal-metric comparison of two Riemann-sphere points."""
    if is_inf(p) and is_inf(q):
        return True
    if is_inf(p) or is_inf(q):
        finite = q if is_inf(p) else p
        return 1.0 / math.hypot(1.0, abs(finite)) <= tol
    p, q = complex(p), complex(q)
    num = abs(p - q)
    return num / math.sqrt((1.0 + abs(p) ** 2) * (1.0 + abs(q) ** 2)) <= tol
