"""Finite binary words, standard words and factor intervals of a slope.

Words are plain ``str`` objects over the letters ``"0"`` and ``"1"``.
"""

from __future__ import annotations

import enum
import threading
from dataclasses import dataclass, field
from functools import lru_cache

from .cf import (
    ONE,
    ZERO,
    CircleInterval,
    CirclePoint,
    Convention,
    IndexOutOfRange,
    QuotientsExhausted,
    Slope,
    coding,
    compare_real,
    denominator,
    iter_coding,
    midpoint,
    normalize,
    partition_points,
    semiconvergent_denominator,
)

Word = str


class TooShort(ValueError):
    pass


class NotAFactor(ValueError):
    pass


def check_word(w: str) -> str:
    if w.strip("01"):
        raise ValueError(f"not a binary word: {w!r}")
    return w


def reverse(w: Word) -> Word:
    return w[::-1]


def exchange_first_two(w: Word) -> Word:
    """The operation L: swap the first two letters."""
    if len(w) < 2:
        raise TooShort(f"L needs a word of length >= 2, got {w!r}")
    return w[1] + w[0] + w[2:]


def primitive_root(w: Word) -> tuple[Word, int]:
    if not w:
        raise TooShort("the empty word has no primitive root")
    p = (w + w).find(w, 1)
    if len(w) % p:
        p = len(w)
    return w[:p], len(w) // p


def is_primitive(w: Word) -> bool:
    return bool(w) and primitive_root(w)[1] == 1


def are_conjugate(u: Word, v: Word) -> bool:
    return len(u) == len(v) and v in u + u


def is_balanced(w: Word) -> bool:
    n = len(w)
    prefix = [0]
    for c in w:
        prefix.append(prefix[-1] + (c == "1"))
    for m in range(1, n):
        counts = [prefix[i + m] - prefix[i] for i in range(n - m + 1)]
        if max(counts) - min(counts) > 1:
            return False
    return True


def common_prefix_length(u: Word, v: Word) -> int:
    n = min(len(u), len(v))
    for i in range(n):
        if u[i] != v[i]:
            return i
    return n


# ---------------------------------------------------------------------------
# standard words


class Tag(str, enum.Enum):
    REVERSED_STANDARD = "reversed-standard"
    REVERSED_SEMISTANDARD = "reversed-semistandard"
    L_OF_REVERSED_STANDARD = "L-of-reversed-standard"


@dataclass(frozen=True)
class RsstWord:
    word: Word
    tag: Tag
    k: int
    ell: int  # equals a_k for standard words


@dataclass
class StandardFamily:
    """Standard and semistandard words of a slope, memoized by index."""

    slope: Slope
    _cache: dict = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def standard(self, k: int) -> Word:
        if k < -1:
            raise IndexOutOfRange(f"s_k is defined for k >= -1, got {k}")
        if k == -1:
            return "1"
        if k == 0:
            return "0"
        with self._lock:
            hit = self._cache.get(k)
        if hit is not None:
            return hit
        # build upward so there is no deep recursion
        words = ["1", "0"]
        for j in range(1, k + 1):
            w = self._cache.get(j)
            if w is None:
                a = self.slope.quotient(j)
                w = "0" * (a - 1) + "1" if j == 1 else words[-1] * a + words[-2]
            words.append(w)
        with self._lock:
            for j in range(1, k + 1):
                self._cache.setdefault(j, words[j + 1])
        return words[-1]

    def semistandard(self, k: int, ell: int) -> Word:
        """s_{k,l} = s_{k-1}^l s_{k-2}; l = a_k gives s_k itself."""
        if k < 2 or not 0 < ell <= self.slope.quotient(k):
            raise IndexOutOfRange(f"s_(k,l) needs k >= 2 and 0 < l <= a_k, got ({k}, {ell})")
        return self.standard(k - 1) * ell + self.standard(k - 2)

    def characteristic_prefix(self, n: int) -> Word:
        """Prefix of length n of the characteristic word c_alpha."""
        k = 1
        while len(self.standard(k)) < n:
            k += 1
        return self.standard(k)[:n]

    def rsst_words(self, n: int) -> list[RsstWord]:
        """Members of rsst(alpha) and L(rst(alpha)) of length at most n."""
        if n < 1:
            raise IndexOutOfRange("n must be positive")
        out = [RsstWord("0", Tag.REVERSED_STANDARD, 0, 0)]
        k = 1
        while True:
            lengths_done = True
            if k >= 2:
                a = self.slope.quotient(k)
                for ell in range(1, a):
                    if semiconvergent_denominator(self.slope, k, ell) <= n:
                        lengths_done = False
                        out.append(RsstWord(reverse(self.semistandard(k, ell)),
                                            Tag.REVERSED_SEMISTANDARD, k, ell))
            if denominator(self.slope, k) <= n:
                lengths_done = False
                s = reverse(self.standard(k))
                a = self.slope.quotient(k)
                out.append(RsstWord(s, Tag.REVERSED_STANDARD, k, a))
                out.append(RsstWord(exchange_first_two(s), Tag.L_OF_REVERSED_STANDARD, k, a))
            if lengths_done:
                break
            k += 1
        out.sort(key=lambda r: (len(r.word), r.word))
        return out


def standard_word(family: StandardFamily, k: int) -> Word:
    return family.standard(k)


def semistandard_word(family: StandardFamily, k: int, ell: int) -> Word:
    if k < 2 or not 1 <= ell < family.slope.quotient(k):
        raise IndexOutOfRange(f"semistandard words need 1 <= l < a_k, got ({k}, {ell})")
    return family.semistandard(k, ell)


def rsst_words_up_to(family: StandardFamily, n: int) -> list[tuple[Word, Tag]]:
    return [(r.word, r.tag) for r in family.rsst_words(n)]


@lru_cache(maxsize=64)
def family_of(slope: Slope) -> StandardFamily:
    return StandardFamily(slope)


def rsst_set(slope: Slope, n: int) -> set[Word]:
    return {r.word for r in family_of(slope).rsst_words(n)}


def reversed_semistandard_set(slope: Slope, n: int) -> set[Word]:
    """rsst(alpha) alone, without the L-images."""
    return {r.word for r in family_of(slope).rsst_words(n)
            if r.tag is not Tag.L_OF_REVERSED_STANDARD}


# ---------------------------------------------------------------------------
# factor intervals


@lru_cache(maxsize=4096)
def _interval_of(w: Word, slope: Slope) -> CircleInterval | None:
    # refine [0, 1) one letter at a time: letter i changes only across the
    # points {-i*alpha} and {-(i+1)*alpha}, the latter being the new cut
    lo, hi = ZERO, ONE
    for i, c in enumerate(w):
        p = normalize(CirclePoint(0, -(i + 1), 1), slope)
        if compare_real(lo, p, slope) < 0 and compare_real(p, hi, slope) < 0:
            if _letter_at(midpoint(lo, p), i, slope) == c:
                hi = p
            else:
                lo = p
        if _letter_at(midpoint(lo, hi), i, slope) != c:
            return None
    return CircleInterval(lo, hi)


def _letter_at(x: CirclePoint, i: int, slope: Slope) -> str:
    return coding(CirclePoint(x.u, x.v + i * x.d, x.d), slope, 1)


def interval_of(w: Word, slope: Slope) -> CircleInterval:
    """The interval [w] of intercepts whose coding begins with w."""
    iv = _interval_of(w, slope)
    if iv is None:
        raise NotAFactor(f"{w!r} is not a factor of slope {slope}")
    return iv


def is_factor(w: Word, slope: Slope) -> bool:
    return _interval_of(w, slope) is not None


@lru_cache(maxsize=256)
def factors_of_length(slope: Slope, n: int) -> list[tuple[Word, CircleInterval]]:
    """All n+1 factors of length n with their intervals, in circle order."""
    pts = [p for _, p in partition_points(slope, n)]
    ends = pts[1:] + [ONE]
    out = []
    for lo, hi in zip(pts, ends):
        out.append((coding(midpoint(lo, hi), slope, n), CircleInterval(lo, hi)))
    return out


@lru_cache(maxsize=64)
def language(slope: Slope, n: int) -> frozenset[Word]:
    """All factors of length at most n."""
    top = [w for w, _ in factors_of_length(slope, n)]
    return frozenset(w[:m] for w in top for m in range(n + 1))


def right_special_factor(slope: Slope, n: int) -> Word:
    """The factor of length n whose interval contains {-(n+1)*alpha}."""
    p = CirclePoint(0, -(n + 1), 1)
    for w, iv in factors_of_length(slope, n):
        if iv.contains(p, slope):
            return w
    raise AssertionError("partition does not cover the circle")


def index_in_language(w: Word, slope: Slope) -> int:
    """Largest n with w^n a factor."""
    if not w:
        raise TooShort("index of the empty word is infinite")
    n = 0
    while is_factor(w * (n + 1), slope):
        n += 1
    return n


def factor_records(slope: Slope, n: int) -> list[dict]:
    return [{"word": w, "left": str(iv.left), "right": str(iv.right)}
            for w, iv in factors_of_length(slope, n)]


def sturmian_prefix(x: CirclePoint, slope: Slope, n: int,
                    convention: Convention = Convention.LOWER) -> Word:
    return "".join(iter_coding(x, slope, convention, n))
