"""Exact continued-fraction and circle-point arithmetic.

A slope is an irrational number ``alpha = [0; a1, a2, ...]`` with ``a1 >= 2``,
given by a finite head of partial quotients and an optional periodic tail.
Points of the circle are symbolic values ``{(u + v*alpha)/d}``.  Every
comparison reduces to the sign of an integer linear form ``A + B*alpha``,
which is decided exactly from the partial quotients.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import cmp_to_key, lru_cache
from math import gcd
from typing import Iterator


class QuotientsExhausted(ArithmeticError):
    """The slope has no partial quotient at the requested depth."""

    def __init__(self, k: int):
        super().__init__(f"slope has no partial quotient a_{k} (finite head, no tail)")
        self.k = k


class IndexOutOfRange(IndexError):
    pass


class Ordering(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


class Convention(str, enum.Enum):
    """Which endpoint of the coding intervals is closed.

    ``LOWER`` uses I0 = [0, 1-alpha), ``UPPER`` uses I0 = (0, 1-alpha].
    """

    LOWER = "lower"
    UPPER = "upper"


LOWER = Convention.LOWER
UPPER = Convention.UPPER


@dataclass(frozen=True)
class Slope:
    head: tuple[int, ...]
    tail: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "head", tuple(int(a) for a in self.head))
        object.__setattr__(self, "tail", tuple(int(a) for a in self.tail))
        if not self.head:
            raise ValueError("slope needs at least the quotient a1")
        if any(a < 1 for a in self.head + self.tail):
            raise ValueError("partial quotients must be positive")
        if self.head[0] == 1:
            raise ValueError(
                "a1 = 1 means alpha > 1/2; exchange the letters 0 and 1 and use "
                "the slope 1 - alpha = [0; a2 + 1, a3, ...] instead"
            )

    def quotient(self, k: int) -> int:
        """Partial quotient a_k, with a_0 = 0."""
        if k == 0:
            return 0
        if k < 0:
            raise IndexOutOfRange(f"no partial quotient a_{k}")
        if k <= len(self.head):
            return self.head[k - 1]
        if not self.tail:
            raise QuotientsExhausted(k)
        return self.tail[(k - len(self.head) - 1) % len(self.tail)]

    @property
    def infinite(self) -> bool:
        return bool(self.tail)

    @property
    def params(self) -> tuple[int, int]:
        """Squareful parameters (a1 - 1, a2 - 1)."""
        return self.quotient(1) - 1, self.quotient(2) - 1

    def __str__(self) -> str:
        s = ",".join(map(str, self.head))
        if self.tail:
            s += ",(" + ",".join(map(str, self.tail)) + ")"
        return s


FIBONACCI = Slope((2,), (1,))

_SLOPE_ALIASES = {"fibonacci": "2,(1)", "phi": "2,(1)"}


def parse_slope(text: str) -> Slope:
    """Parse ``"a1,a2,...,(t1,...,tj)"``; ``"fibonacci"`` is ``"2,(1)"``."""
    s = _SLOPE_ALIASES.get(text.strip().lower(), text).replace(" ", "")
    m = re.fullmatch(r"((?:\d+,)*\d+)(?:,\(((?:\d+,)*\d+)\))?", s)
    if not m:
        raise ValueError(f"cannot parse slope {text!r}; expected e.g. '2,1,(1,2)'")
    head = tuple(int(a) for a in m.group(1).split(","))
    tail = tuple(int(a) for a in m.group(2).split(",")) if m.group(2) else ()
    return Slope(head, tail)


@dataclass(frozen=True)
class Convergent:
    k: int
    p: int
    q: int


def convergents(slope: Slope, k_max: int) -> list[Convergent]:
    if k_max < 0:
        raise IndexOutOfRange("k_max must be nonnegative")
    out = [Convergent(0, 0, 1)]
    pp, qp = 1, 0  # p_{-1}, q_{-1}
    p, q = 0, 1
    for k in range(1, k_max + 1):
        a = slope.quotient(k)
        p, pp = a * p + pp, p
        q, qp = a * q + qp, q
        out.append(Convergent(k, p, q))
    return out


@lru_cache(maxsize=None)
def _pq(slope: Slope, k: int) -> tuple[int, int]:
    if k == 0:
        return 0, 1
    if k == -1:
        return 1, 0
    a = slope.quotient(k)
    p1, q1 = _pq(slope, k - 1)
    p2, q2 = _pq(slope, k - 2)
    return a * p1 + p2, a * q1 + q2


def denominator(slope: Slope, k: int) -> int:
    """q_k, with q_{-1} = 0 and q_0 = 1."""
    for j in range(0, k, 64):  # keep the recursion shallow
        _pq(slope, j)
    return _pq(slope, k)[1]


def numerator(slope: Slope, k: int) -> int:
    denominator(slope, k)
    return _pq(slope, k)[0]


def semiconvergent_denominator(slope: Slope, k: int, ell: int) -> int:
    """q_{k,l} = l*q_{k-1} + q_{k-2} for k >= 2 and 0 < l <= a_k."""
    if k < 2 or not 0 < ell <= slope.quotient(k):
        raise IndexOutOfRange(f"need k >= 2 and 0 < l <= a_k, got k={k}, l={ell}")
    return ell * denominator(slope, k - 1) + denominator(slope, k - 2)


def semiconvergent_numerator(slope: Slope, k: int, ell: int) -> int:
    if k < 2 or not 0 < ell <= slope.quotient(k):
        raise IndexOutOfRange(f"need k >= 2 and 0 < l <= a_k, got k={k}, l={ell}")
    return ell * numerator(slope, k - 1) + numerator(slope, k - 2)


# ---------------------------------------------------------------------------
# sign of A + B*alpha


@lru_cache(maxsize=None)
def _bracket(slope: Slope) -> tuple[int, int, int, int]:
    """Two consecutive convergents enclosing alpha strictly."""
    pp, qp, p, q = 1, 0, 0, 1
    k = 0
    while q < 1 << 96:
        try:
            a = slope.quotient(k + 1)
        except QuotientsExhausted:
            break
        p, pp = a * p + pp, p
        q, qp = a * q + qp, q
        k += 1
    if k == 0:  # cannot happen, a1 is always present
        raise QuotientsExhausted(1)
    return pp, qp, p, q


def _compare_alpha(slope: Slope, num: int, den: int) -> int:
    """Sign of alpha - num/den (den > 0)."""
    if num <= 0:
        return 1
    if num >= den:
        return -1
    # alternating lexicographic order on the expansions; a finished
    # expansion of the rational counts as an infinite complete quotient
    p, q = den, num
    i = 1
    while True:
        if q == 0:
            return 1 if i % 2 else -1
        r = p // q
        a = slope.quotient(i)
        if a != r:
            return 1 if (a > r) == (i % 2 == 0) else -1
        p, q = q, p - r * q
        i += 1


def sign_exact(A: int, B: int, slope: Slope) -> int:
    """Sign of A + B*alpha via the continued fraction of -A/B."""
    if B == 0:
        return (A > 0) - (A < 0)
    if B > 0:
        return _compare_alpha(slope, -A, B)
    return -_compare_alpha(slope, A, -B)


def sign_linear(A: int, B: int, slope: Slope) -> int:
    """Sign of A + B*alpha.

    Tries the enclosing convergent pair first: a linear form that has the same
    sign at both ends of an interval containing alpha has that sign at alpha.
    """
    if B == 0:
        return (A > 0) - (A < 0)
    p0, q0, p1, q1 = _bracket(slope)
    s0 = A * q0 + B * p0
    s1 = A * q1 + B * p1
    if s0 >= 0 and s1 >= 0:
        return 1
    if s0 <= 0 and s1 <= 0:
        return -1
    return sign_exact(A, B, slope)


# ---------------------------------------------------------------------------
# circle points


@dataclass(frozen=True)
class CirclePoint:
    """The point {(u + v*alpha)/d} of the circle R/Z."""

    u: int
    v: int
    d: int = 1

    def __post_init__(self):
        if self.d <= 0:
            raise ValueError("denominator must be positive")

    def __str__(self) -> str:
        sign = "-" if self.v < 0 else "+"
        return f"({self.u}{sign}{abs(self.v)}*a)/{self.d}"

    def reduced(self) -> "CirclePoint":
        g = gcd(gcd(self.u, self.v), self.d)
        if g == 1:
            return self
        return CirclePoint(self.u // g, self.v // g, self.d // g)


ZERO = CirclePoint(0, 0, 1)
ONE = CirclePoint(1, 0, 1)
ALPHA = CirclePoint(0, 1, 1)
ONE_MINUS_ALPHA = CirclePoint(1, -1, 1)
HALF = CirclePoint(1, 0, 2)

_POINT_RE = re.compile(
    r"\(?\s*([+-]?\s*\d+)\s*(?:([+-]\s*[+-]?\s*\d+)\s*\*?\s*a)?\s*\)?\s*(?:/\s*(\d+))?"
)


def parse_point(text: str) -> CirclePoint:
    """Parse ``"(u+v*a)/d"``, e.g. ``"(1+-1*a)/1"`` for 1 - alpha."""
    m = _POINT_RE.fullmatch(text.strip())
    if not m:
        raise ValueError(f"cannot parse point {text!r}; expected '(u+v*a)/d'")
    u = int(m.group(1).replace(" ", ""))
    v = 0
    if m.group(2):
        t = m.group(2).replace(" ", "")
        v = -int(t[1:]) if t[0] == "-" else int(t[1:])
    d = int(m.group(3)) if m.group(3) else 1
    if d == 0:
        raise ValueError("denominator must be positive")
    return CirclePoint(u, v, d)


def floor_value(x: CirclePoint, slope: Slope) -> int:
    """floor((u + v*alpha)/d) as a real number."""
    _, _, p, q = _bracket(slope)
    n = (x.u * q + x.v * p) // (x.d * q)
    while sign_linear(x.u - n * x.d, x.v, slope) < 0:
        n -= 1
    while sign_linear(x.u - (n + 1) * x.d, x.v, slope) >= 0:
        n += 1
    return n


def normalize(x: CirclePoint, slope: Slope) -> CirclePoint:
    """Representative of x with real value in [0, 1)."""
    n = floor_value(x, slope)
    return CirclePoint(x.u - n * x.d, x.v, x.d).reduced()


def is_zero(x: CirclePoint, slope: Slope) -> bool:
    return point_compare(x, ZERO, slope) is Ordering.EQ


def compare_real(x: CirclePoint, y: CirclePoint, slope: Slope) -> Ordering:
    """Compare the real numbers (u+v*alpha)/d without reducing mod 1."""
    A = x.u * y.d - y.u * x.d
    B = x.v * y.d - y.v * x.d
    return Ordering(sign_linear(A, B, slope))


def point_compare(x: CirclePoint, y: CirclePoint, slope: Slope) -> Ordering:
    """Compare the fractional parts of x and y."""
    return compare_real(normalize(x, slope), normalize(y, slope), slope)


def rotate(x: CirclePoint, n: int = 1) -> CirclePoint:
    return CirclePoint(x.u, x.v + n * x.d, x.d)


def point_letter(x: CirclePoint, slope: Slope, convention: Convention = LOWER) -> str:
    x = normalize(x, slope)
    if x.u == 0 and x.v == 0:
        return "0" if convention is LOWER else "1"
    c = compare_real(x, ONE_MINUS_ALPHA, slope)
    if convention is LOWER:
        return "0" if c < 0 else "1"
    return "0" if c <= 0 else "1"


def psi_map(x: CirclePoint, slope: Slope, convention: Convention = LOWER) -> CirclePoint:
    """psi(x) = (x + 1 - alpha)/2 for x in (0, 1); psi(0) depends on the convention."""
    x = normalize(x, slope)
    if x.u == 0 and x.v == 0:
        return CirclePoint(1, -1, 2) if convention is LOWER else CirclePoint(2, -1, 2)
    return CirclePoint(x.u + x.d, x.v - x.d, 2 * x.d).reduced()


def psi_real(x: CirclePoint) -> CirclePoint:
    """(x + 1 - alpha)/2 on the real value of x, with no reduction mod 1."""
    return CirclePoint(x.u + x.d, x.v - x.d, 2 * x.d).reduced()


def coding(x: CirclePoint, slope: Slope, n: int, convention: Convention = LOWER) -> str:
    """The first n letters of the rotation coding starting at x."""
    return "".join(iter_coding(x, slope, convention, n))


def iter_coding(
    x: CirclePoint, slope: Slope, convention: Convention = LOWER, n: int | None = None
) -> Iterator[str]:
    x = normalize(x, slope)
    u, v, d = x.u, x.v, x.d
    p0, q0, p1, q1 = _bracket(slope)
    upper = convention is UPPER
    i = 0
    while n is None or i < n:
        i += 1
        if upper and u == 0 and v == 0:
            yield "1"
            v = d
            continue
        A = u - d
        B = v + d
        # s: sign of x + alpha - 1
        if B == 0:
            s = (A > 0) - (A < 0)
        else:
            s0 = A * q0 + B * p0
            s1 = A * q1 + B * p1
            if s0 >= 0 and s1 >= 0:
                s = 1
            elif s0 <= 0 and s1 <= 0:
                s = -1
            else:
                s = sign_exact(A, B, slope)
        if s > 0 or (s == 0 and not upper):
            yield "1"
        else:
            yield "0"
        if s >= 0:
            u -= d
        v = B


def partition_points(slope: Slope, n: int) -> list[tuple[int, CirclePoint]]:
    """The points {-i*alpha}, 0 <= i <= n, in circle order."""
    if n < 0:
        raise IndexOutOfRange("n must be nonnegative")
    pts = [(i, normalize(CirclePoint(0, -i, 1), slope)) for i in range(n + 1)]
    pts.sort(key=cmp_to_key(lambda s, t: compare_real(s[1], t[1], slope)))
    return pts


def midpoint(x: CirclePoint, y: CirclePoint) -> CirclePoint:
    """Real midpoint of the (unreduced) values of x and y."""
    return CirclePoint(x.u * y.d + y.u * x.d, x.v * y.d + y.v * x.d, 2 * x.d * y.d).reduced()


@dataclass(frozen=True)
class CircleInterval:
    """Interval between two points that does not contain 0 in its interior.

    ``left`` has real value in [0, 1) and ``right`` in (0, 1]; the point 1 is
    stored as ``ONE``.  Under the lower convention the interval is
    [left, right), under the upper convention it is (left, right].
    """

    left: CirclePoint
    right: CirclePoint

    def contains(self, x: CirclePoint, slope: Slope, convention: Convention = LOWER) -> bool:
        x = normalize(x, slope)
        if convention is LOWER:
            return (
                compare_real(self.left, x, slope) <= 0
                and compare_real(x, self.right, slope) < 0
            )
        if x.u == 0 and x.v == 0:
            x = ONE
        return compare_real(self.left, x, slope) < 0 and compare_real(x, self.right, slope) <= 0

    def length(self) -> CirclePoint:
        """right - left as a linear form."""
        l, r = self.left, self.right
        return CirclePoint(r.u * l.d - l.u * r.d, r.v * l.d - l.v * r.d, l.d * r.d).reduced()

    def has_endpoint(self, p: CirclePoint, slope: Slope) -> bool:
        return any(point_compare(e, p, slope) is Ordering.EQ for e in (self.left, self.right))

    def same_endpoints(self, other: "CircleInterval", slope: Slope) -> bool:
        return self.has_endpoint(other.left, slope) and self.has_endpoint(other.right, slope)

    def __str__(self) -> str:
        return f"I({self.left}, {self.right})"


def distance_form(n: int, slope: Slope) -> tuple[int, int]:
    """||n*alpha|| as the pair (A, B) with ||n*alpha|| = A + B*alpha."""
    x = normalize(CirclePoint(0, n, 1), slope)
    if compare_real(x, HALF, slope) <= 0:
        return x.u, x.v
    return 1 - x.u, -x.v
