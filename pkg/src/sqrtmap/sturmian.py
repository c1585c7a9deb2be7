"""Sturmian words as rotation codings, and the square root map acting on them."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator

from .cf import (
    ALPHA,
    FIBONACCI,
    HALF,
    LOWER,
    ONE_MINUS_ALPHA,
    CirclePoint,
    Convention,
    Ordering,
    Slope,
    coding,
    iter_coding,
    point_compare,
    psi_map,
    rotate,
)
from .squares import SquarefulParams, WordSource, sqrt_of_prefix, sqrt_stream
from .words import (
    RsstWord,
    Tag,
    Word,
    family_of,
    interval_of,
    is_factor,
    primitive_root,
    reverse,
)


class WindowTooShort(ValueError):
    pass


@dataclass(frozen=True)
class SturmianSpec:
    slope: Slope
    intercept: CirclePoint
    convention: Convention = LOWER

    def shift(self, n: int) -> "SturmianSpec":
        """T^n, realized as rotation of the intercept."""
        return SturmianSpec(self.slope, rotate(self.intercept, n), self.convention)

    def psi(self) -> "SturmianSpec":
        return SturmianSpec(self.slope, psi_map(self.intercept, self.slope, self.convention),
                            self.convention)

    @property
    def params(self) -> SquarefulParams:
        return SquarefulParams.from_slope(self.slope)

    def letters(self) -> Iterator[str]:
        return iter_coding(self.intercept, self.slope, self.convention)

    def source(self) -> WordSource:
        return WordSource(self.letters())


def generate(spec: SturmianSpec, n: int) -> Word:
    return coding(spec.intercept, spec.slope, n, spec.convention)


def sqrt_prefix(spec: SturmianSpec, n: int) -> Word:
    """First n letters of the square root of the word, from the letter stream."""
    return sqrt_stream(spec.source(), spec.params).take(n)


def verify_sqrt_theorem(spec: SturmianSpec, n: int) -> bool:
    """sqrt(s_{x,alpha}) and s_{psi(x),alpha} agree on n letters."""
    return sqrt_prefix(spec, n) == generate(spec.psi(), n)


def fixed_point_prefixes(slope: Slope, n: int) -> tuple[Word, Word]:
    """Prefixes of length n of 01c_alpha and 10c_alpha."""
    if n < 2:
        raise ValueError("n must be at least 2")
    c = family_of(slope).characteristic_prefix(n - 2)
    return "01" + c, "10" + c


def characteristic_spec(slope: Slope) -> SturmianSpec:
    return SturmianSpec(slope, ALPHA, LOWER)


# ---------------------------------------------------------------------------
# factorizations into squares of reversed (semi)standard words


def iter_rsst(slope: Slope) -> Iterator[RsstWord]:
    """rsst(alpha) in increasing length (the L-images are not included)."""
    fam = family_of(slope)
    yield RsstWord("0", Tag.REVERSED_STANDARD, 0, 0)
    yield RsstWord(reverse(fam.standard(1)), Tag.REVERSED_STANDARD, 1, slope.quotient(1))
    k = 2
    while True:
        a = slope.quotient(k)
        for ell in range(1, a):
            yield RsstWord(reverse(fam.semistandard(k, ell)), Tag.REVERSED_SEMISTANDARD, k, ell)
        yield RsstWord(reverse(fam.standard(k)), Tag.REVERSED_STANDARD, k, a)
        k += 1


class _Budget(Exception):
    pass


def _rsst_square_at(x: CirclePoint, slope: Slope, convention: Convention,
                    max_length: int | None) -> RsstWord | None:
    """The unique z in rsst(alpha) with x in [z^2]; None when x = 1 - alpha."""
    if point_compare(x, ONE_MINUS_ALPHA, slope) is Ordering.EQ:
        return None
    for z in iter_rsst(slope):
        if max_length is not None and 2 * len(z.word) > max_length:
            raise _Budget
        if interval_of(z.word * 2, slope).contains(x, slope, convention):
            return z
    raise AssertionError("unreachable")


@dataclass
class RsstFactorization:
    blocks: list[Word]
    tail_reached: bool
    details: list[RsstWord] = field(default_factory=list)


def factor_into_rsst_squares(spec: SturmianSpec, max_blocks: int,
                             max_length: int | None = None) -> RsstFactorization:
    """Greedy factorization s = Z1^2 Z2^2 ... with Zi in rsst(alpha)."""
    x = spec.intercept
    out = RsstFactorization([], False)
    used = 0
    while len(out.blocks) < max_blocks:
        try:
            budget = None if max_length is None else max_length - used
            z = _rsst_square_at(x, spec.slope, spec.convention, budget)
        except _Budget:
            break
        if z is None:
            out.tail_reached = True
            break
        out.blocks.append(z.word)
        out.details.append(z)
        used += 2 * len(z.word)
        x = rotate(x, 2 * len(z.word))
    return out


class Kind(str, enum.Enum):
    TYPE_A = "A"
    TYPE_B = "B"


@dataclass(frozen=True)
class MaximalSolution:
    word: Word
    root: RsstWord
    power: int
    position: int


@dataclass
class MaximalFactorization:
    kind: Kind
    entries: list[MaximalSolution]
    tail: Word | None = None  # "01" or "10" for type B
    truncated: bool = False

    @property
    def words(self) -> list[Word]:
        return [e.word for e in self.entries]

    def lambdas(self) -> list[Word]:
        out, acc = [], ""
        for w in self.words:
            acc += w
            out.append(acc)
        return out

    def mus(self) -> list[Word]:
        out, acc = [], ""
        for w in self.words:
            acc += w + w
            out.append(acc)
        return out


def maximal_factorization(spec: SturmianSpec, max_blocks: int,
                          max_length: int | None = None) -> MaximalFactorization:
    """Factorization into maximal solutions X1^2 X2^2 ... over the observed window.

    Type B means the residual intercept reached 1 - alpha, after which the
    word is 01c_alpha or 10c_alpha.  ``truncated`` marks that ``max_length``
    stopped the search before ``max_blocks`` blocks were found.
    """
    x = spec.intercept
    pos = 0
    entries: list[MaximalSolution] = []
    while len(entries) < max_blocks:
        try:
            budget = None if max_length is None else max_length - pos
            z = _rsst_square_at(x, spec.slope, spec.convention, budget)
        except _Budget:
            return MaximalFactorization(Kind.TYPE_A, entries, truncated=True)
        if z is None:
            tail = coding(x, spec.slope, 2, spec.convention)
            return MaximalFactorization(Kind.TYPE_B, entries, tail)
        sq = z.word * 2
        t = 1
        while coding(rotate(x, t * len(sq)), spec.slope, len(sq), spec.convention) == sq:
            t += 1
        entries.append(MaximalSolution(z.word * t, z, t, pos))
        pos += t * len(sq)
        x = rotate(x, t * len(sq))
    return MaximalFactorization(Kind.TYPE_A, entries)


def rsst_label(slope: Slope, w: Word) -> RsstWord | None:
    """Identify w as a member of rsst(alpha) or L(rst(alpha))."""
    for r in family_of(slope).rsst_words(len(w)):
        if r.word == w:
            return r
    return None


# ---------------------------------------------------------------------------
# verification suites


def _report(suite: str, cases: int, failures: list, **extra) -> dict:
    out = {"suite": suite, "cases": cases, "failures": failures}
    out.update(extra)
    return out


def verify_prefix_locations(spec: SturmianSpec, k_max: int,
                            max_window: int | None = None) -> dict:
    """First occurrences of the prefixes lambda_k of the square root.

    For each k < k_max: lambda_k is right special and a suffix of mu_k, the
    square root begins with lambda_{k+1}, and lambda_{k+1} first occurs at
    offset |lambda_k|.  The generated window is mu_{k+1}, which always
    contains that offset plus |lambda_{k+1}| letters.
    """
    mf = maximal_factorization(spec, k_max)
    lam, mu = mf.lambdas(), mf.mus()
    top = len(lam) - 1  # need lambda_{k+1}
    failures = []
    occurrences = []
    window = len(mu[-1]) if mu else 0
    if max_window is not None and window > max_window:
        raise WindowTooShort(f"need {window} letters, allowed {max_window}")
    s = generate(spec, window)
    for k in range(1, min(k_max, top + 1)):
        lk, lk1, muk = lam[k - 1], lam[k], mu[k - 1]
        if not muk.endswith(lk):
            failures.append({"k": k, "check": "suffix"})
        if not (is_factor(lk + "0", spec.slope) and is_factor(lk + "1", spec.slope)):
            failures.append({"k": k, "check": "right_special"})
        if sqrt_of_prefix(s[: len(mu[k])], spec.params) != lk1:
            failures.append({"k": k, "check": "sqrt_prefix"})
        first = s.find(lk1)
        occurrences.append(first)
        if first != len(lk):
            failures.append({"k": k, "check": "first_occurrence", "found": first,
                             "expected": len(lk)})
    return _report("prefix_locations", len(occurrences), failures,
                   kind=mf.kind.value, window=window, first_occurrences=occurrences,
                   lambdas=lam)


def verify_length_monotonicity(spec: SturmianSpec, blocks: int,
                               max_length: int = 50_000) -> dict:
    """Whenever |X_i| > |X_{i+1}|, check the semistandard drop structure."""
    mf = maximal_factorization(spec, blocks, max_length)
    xs = mf.entries
    fam = family_of(spec.slope)
    failures = []
    drops = 0
    for i in range(len(xs) - 1):
        if len(xs[i].word) <= len(xs[i + 1].word):
            continue
        drops += 1
        r = xs[i].root
        if xs[i].power != 1 or r.tag is not Tag.REVERSED_SEMISTANDARD:
            failures.append({"i": i + 1, "check": "semistandard", "word": xs[i].word})
            continue
        if primitive_root(xs[i + 1].word)[0] != reverse(fam.standard(r.k - 1)):
            failures.append({"i": i + 1, "check": "next_root"})
        if i + 2 < len(xs) and len(xs[i + 2].word) <= len(xs[i].word):
            failures.append({"i": i + 1, "check": "recovery"})
    return _report("length_monotonicity", len(xs), failures, drops=drops,
                   lengths=[len(e.word) for e in xs], truncated=mf.truncated)


def fibonacci_t(k: int) -> Word:
    return "01" if k % 2 == 0 else "10"


def verify_fibonacci_identities(k_max: int, sqrt_length: int = 1000) -> dict:
    fam = family_of(FIBONACCI)
    s = fam.standard
    failures = []
    cases = 0
    for k in range(k_max + 1):
        cases += 2
        t, t1 = fibonacci_t(k), fibonacci_t(k + 1)
        if t + s(k) + s(k + 1) + s(k + 2) != reverse(s(k + 2)) * 2 + t1:
            failures.append({"k": k, "identity": "t_k s_k s_k+1 s_k+2"})
        prod = "".join(reverse(s(3 * i + 2)) * 2 for i in range(k + 1)) + t1
        if s(3 * k + 4) != prod:
            failures.append({"k": k, "identity": "s_3k+4"})
    cases += 1
    c = characteristic_spec(FIBONACCI)
    half = SturmianSpec(FIBONACCI, HALF, LOWER)
    if sqrt_prefix(c, sqrt_length) != generate(half, sqrt_length):
        failures.append({"identity": "sqrt c = s_1/2"})
    return _report("fibonacci_identities", cases, failures)


def table_experiments(a3: int, a4: int, tail: tuple[int, ...] = (1,)) -> tuple[tuple, str]:
    """Which reversed standard words the maximal solutions X1, X2, X3 are built on.

    The word is the characteristic word of slope [0; 2, 1, a3, a4, tail...].
    Each X_i is reported by the index k of its primitive root, reversed s_k
    (``(k, l)`` if the root is a reversed semistandard word); the second value
    is the first letter of X4.
    """
    slope = Slope((2, 1, a3, a4), tail)
    spec = characteristic_spec(slope)
    mf = maximal_factorization(spec, 3)
    labels = []
    for e in mf.entries:
        r = e.root
        labels.append(r.k if r.tag is Tag.REVERSED_STANDARD else (r.k, r.ell))
    pos = len(mf.mus()[-1])
    return tuple(labels), generate(spec, pos + 1)[pos]


TABLE_EXPECTED = {
    # (a3, a4): ((indices of X1, X2, X3), first letter of X4)
    (1, 1): ((2, 5, 8), "1"), (2, 1): ((2, 4, 7), "0"), (3, 1): ((2, 5, 8), "1"),
    (1, 2): ((2, 3, 6), "1"), (2, 2): ((2, 4, 7), "0"), (3, 2): ((2, 3, 6), "1"),
    (1, 3): ((2, 3, 5), "0"), (2, 3): ((2, 4, 7), "0"), (3, 3): ((2, 3, 5), "0"),
}


def verify_tables(tails: tuple[tuple[int, ...], ...] = ((1,),)) -> dict:
    failures = []
    cases = 0
    for (a3, a4), want in TABLE_EXPECTED.items():
        for tail in tails:
            cases += 1
            got = table_experiments(a3, a4, tail)
            if got != want:
                failures.append({"a3": a3, "a4": a4, "tail": list(tail),
                                 "got": [list(map(str, got[0])), got[1]]})
    return _report("tables", cases, failures)
