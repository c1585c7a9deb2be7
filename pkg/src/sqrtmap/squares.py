"""Minimal squares, the streaming minimal-square parser and the square root map."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator

from .cf import Slope, psi_real, compare_real
from .words import (
    Word,
    exchange_first_two,
    interval_of,
    is_factor,
    is_primitive,
    language,
    rsst_set,
)


class NoMinimalSquarePrefix(ValueError):
    def __init__(self, position: int):
        super().__init__(f"no minimal square begins at position {position}")
        self.position = position


class NotInPi(ValueError):
    pass


class CharacterizationMismatch(AssertionError):
    pass


@dataclass(frozen=True)
class SquarefulParams:
    a: int
    b: int

    def __post_init__(self):
        if self.a < 1 or self.b < 0:
            raise ValueError(f"need a >= 1 and b >= 0, got a={self.a}, b={self.b}")

    @classmethod
    def from_slope(cls, slope: Slope) -> "SquarefulParams":
        a, b = slope.params
        return cls(a, b)

    @classmethod
    def parse(cls, text: str) -> "SquarefulParams":
        try:
            a, b = (int(t) for t in text.split(","))
        except ValueError:
            raise ValueError(f"expected params as 'A,B', got {text!r}") from None
        return cls(a, b)

    def __str__(self) -> str:
        return f"{self.a},{self.b}"


@dataclass(frozen=True)
class MinimalSquareTable:
    params: SquarefulParams
    roots: tuple[Word, ...]  # S1..S6

    def root(self, i: int) -> Word:
        return self.roots[i - 1]

    def square(self, i: int) -> Word:
        return self.roots[i - 1] * 2

    @property
    def squares(self) -> tuple[Word, ...]:
        return tuple(r * 2 for r in self.roots)

    @property
    def longest(self) -> int:
        return max(len(r) for r in self.roots) * 2


@lru_cache(maxsize=None)
def minimal_roots(params: SquarefulParams) -> MinimalSquareTable:
    a, b = params.a, params.b
    s4 = "1" + "0" * a
    s5 = "1" + "0" * (a + 1) + s4 * b
    roots = ("0", "01" + "0" * (a - 1), "01" + "0" * a, s4, s5, s5 + s4)
    return MinimalSquareTable(params, roots)


# ---------------------------------------------------------------------------
# letter streams


class WordSource:
    """Pull-based letter stream with a count of consumed letters."""

    def __init__(self, letters: Iterable[str], position: int = 0):
        self._it = iter(letters)
        self._buf: deque[str] = deque()
        self.position = position

    def _fill(self, n: int) -> None:
        while len(self._buf) < n:
            try:
                self._buf.append(next(self._it))
            except StopIteration:
                return

    def peek(self, n: int) -> str:
        self._fill(n)
        return "".join(self._buf[i] for i in range(min(n, len(self._buf))))

    def take(self, n: int) -> str:
        self._fill(n)
        k = min(n, len(self._buf))
        out = "".join(self._buf.popleft() for _ in range(k))
        self.position += k
        return out

    def exhausted(self) -> bool:
        self._fill(1)
        return not self._buf

    def __iter__(self) -> Iterator[str]:
        return self

    def __next__(self) -> str:
        self._fill(1)
        if not self._buf:
            raise StopIteration
        self.position += 1
        return self._buf.popleft()


# ---------------------------------------------------------------------------
# parsing


@dataclass
class Factorization:
    params: SquarefulParams
    indices: list[int] = field(default_factory=list)
    lengths: list[int] = field(default_factory=list)
    consumed: int = 0
    remainder: str = ""

    def roots(self) -> list[Word]:
        t = minimal_roots(self.params)
        return [t.root(i) for i in self.indices]

    def sqrt(self) -> Word:
        return "".join(self.roots())

    def word(self) -> Word:
        """The consumed prefix followed by the remainder."""
        t = minimal_roots(self.params)
        return "".join(t.square(i) for i in self.indices) + self.remainder

    def partial_sums(self) -> list[int]:
        out, s = [], 0
        for n in self.lengths:
            s += n
            out.append(s)
        return out

    def to_json(self) -> dict:
        return {
            "params": {"a": self.params.a, "b": self.params.b},
            "indices": list(self.indices),
            "consumed": self.consumed,
            "remainder_prefix": self.remainder,
        }

    @classmethod
    def from_json(cls, data: dict | str) -> "Factorization":
        if isinstance(data, str):
            data = json.loads(data)
        params = SquarefulParams(data["params"]["a"], data["params"]["b"])
        t = minimal_roots(params)
        idx = [int(i) for i in data["indices"]]
        lengths = [len(t.square(i)) for i in idx]
        return cls(params, idx, lengths, sum(lengths), data.get("remainder_prefix", ""))


def _match(table: MinimalSquareTable, w: str, pos: int) -> int:
    found = 0
    for i, sq in enumerate(table.squares, 1):
        if w.startswith(sq, pos):
            if found:
                raise AssertionError(f"two minimal squares at position {pos}")
            found = i
    return found


def _parse_str(w: str, params: SquarefulParams, max_squares: int | None,
               offset: int) -> Factorization:
    table = minimal_roots(params)
    sqs = table.squares
    fact = Factorization(params)
    pos = 0
    n = len(w)
    while pos < n and (max_squares is None or len(fact.indices) < max_squares):
        i = _match(table, w, pos)
        if not i:
            rest = w[pos:]
            if len(rest) < table.longest and any(sq.startswith(rest) for sq in sqs):
                break  # the word ends inside a square
            raise NoMinimalSquarePrefix(offset + pos)
        fact.indices.append(i)
        fact.lengths.append(len(sqs[i - 1]))
        pos += len(sqs[i - 1])
    fact.consumed = pos
    fact.remainder = w[pos:]
    return fact


def parse_minimal_squares(source: WordSource | str, params: SquarefulParams,
                          max_squares: int | None = None, offset: int = 0) -> Factorization:
    """Greedy (and unique) factorization into minimal squares.

    Stops after ``max_squares`` squares or at the end of a finite input.  For
    a finite word the remainder is the unparsed suffix; for a stream it is a
    lookahead of at most one square length.  Failure positions are absolute
    input offsets.
    """
    if isinstance(source, str):
        return _parse_str(source, params, max_squares, offset)
    table = minimal_roots(params)
    sqs = table.squares
    fact = Factorization(params)
    while max_squares is None or len(fact.indices) < max_squares:
        buf = source.peek(table.longest)
        if not buf:
            break
        i = _match(table, buf, 0)
        if not i:
            if len(buf) < table.longest and any(sq.startswith(buf) for sq in sqs):
                break
            raise NoMinimalSquarePrefix(source.position)
        source.take(len(sqs[i - 1]))
        fact.indices.append(i)
        fact.lengths.append(len(sqs[i - 1]))
        fact.consumed += len(sqs[i - 1])
    fact.remainder = source.peek(table.longest)
    return fact


def square_root_of(w: Word, params: SquarefulParams) -> Word:
    """sqrt(X1^2 ... Xn^2) = X1 ... Xn for a word of Pi(a, b)."""
    try:
        fact = _parse_str(w, params, None, 0)
    except NoMinimalSquarePrefix as e:
        raise NotInPi(f"{w!r} is not a product of minimal squares: {e}") from None
    if fact.remainder:
        raise NotInPi(f"{w!r} leaves the unparsed suffix {fact.remainder!r}")
    return fact.sqrt()


def sqrt_of_prefix(w: Word, params: SquarefulParams) -> Word:
    """Square root of the longest prefix of w that is a product of minimal squares.

    Intended for finite prefixes of optimal squareful words, where the
    unparsed tail is shorter than one minimal square.
    """
    return _parse_str(w, params, None, 0).sqrt()


def in_pi(w: Word, params: SquarefulParams) -> bool:
    try:
        return not _parse_str(w, params, None, 0).remainder
    except NoMinimalSquarePrefix:
        return False


def sqrt_stream(source: WordSource | Iterable[str], params: SquarefulParams) -> WordSource:
    """Lazy square root; parse errors surface when the failing letter is pulled."""
    if not isinstance(source, WordSource):
        source = WordSource(source)
    table = minimal_roots(params)

    def letters() -> Iterator[str]:
        while True:
            fact = parse_minimal_squares(source, params, max_squares=1)
            if not fact.indices:
                return
            yield from table.root(fact.indices[0])

    return WordSource(letters())


def is_solution_eq2(w: Word, params: SquarefulParams) -> bool:
    """Whether w^2 = X1^2...Xn^2 with X1...Xn = w for minimal square roots Xi."""
    if not w:
        return False
    try:
        fact = _parse_str(w + w, params, None, 0)
    except NoMinimalSquarePrefix:
        return False
    return not fact.remainder and fact.sqrt() == w


def satisfies_sqrt_condition(w: Word, slope: Slope) -> bool:
    """psi([w^2]) is contained in [w].

    psi is increasing and affine on [0, 1] (with psi(0) taken from the right),
    and [w^2] never contains 0 in its interior, so comparing endpoints is
    exact; the half-open sides match for either convention.
    """
    sq = interval_of(w + w, slope)
    iv = interval_of(w, slope)
    lo, hi = psi_real(sq.left), psi_real(sq.right)
    return compare_real(iv.left, lo, slope) <= 0 and compare_real(hi, iv.right, slope) <= 0


def _squares_in_language(slope: Slope, n: int) -> list[Word]:
    """Primitive w with |w| <= n and w^2 a factor."""
    out = []
    for f in language(slope, 2 * n):
        m = len(f) // 2
        if m and len(f) % 2 == 0 and f[:m] == f[m:] and is_primitive(f[:m]):
            out.append(f[:m])
    out.sort(key=lambda w: (len(w), w))
    return out


def enumerate_primitive_solutions(slope: Slope, n: int) -> list[Word]:
    """Primitive solutions w, |w| <= n, with w^2 in L(alpha).

    Computed by brute force and compared with rsst(alpha) and L(rst(alpha)).
    """
    params = SquarefulParams.from_slope(slope)
    brute = [w for w in _squares_in_language(slope, n) if is_solution_eq2(w, params)]
    by_theorem = {w for w in rsst_set(slope, n) if is_factor(w + w, slope)}
    if set(brute) != by_theorem:
        raise CharacterizationMismatch(
            f"brute force {sorted(set(brute) - by_theorem)} vs "
            f"rsst {sorted(by_theorem - set(brute))}"
        )
    return brute


# ---------------------------------------------------------------------------
# block automata for L(a, b) and the optimal squareful shape


class _BlockAutomaton:
    """Nondeterministic automaton reading concatenations of fixed blocks.

    States are positions inside the concatenated block text; the subset
    construction is memoized lazily.
    """

    def __init__(self, blocks: list[str], successors: list[list[int]], initial: Iterable[int]):
        self.text = "".join(blocks)
        starts = []
        pos = 0
        for blk in blocks:
            starts.append(pos)
            pos += len(blk)
        self.next: list[tuple[int, ...]] = []
        for bi, blk in enumerate(blocks):
            for j in range(len(blk) - 1):
                self.next.append((starts[bi] + j + 1,))
            self.next.append(tuple(starts[s] for s in successors[bi]))
        self.initial = frozenset(initial)
        self._delta: dict[tuple[frozenset, str], frozenset] = {}
        self.starts = starts

    def run(self, w: str) -> frozenset:
        states = self.initial
        delta = self._delta
        text, nxt = self.text, self.next
        for c in w:
            key = (states, c)
            new = delta.get(key)
            if new is None:
                new = frozenset(t for s in states if text[s] == c for t in nxt[s])
                delta[key] = new
            states = new
            if not states:
                break
        return states


@lru_cache(maxsize=None)
def _lab_automaton(params: SquarefulParams) -> _BlockAutomaton:
    t = minimal_roots(params)
    blocks = [t.root(5), t.root(6)]
    n = len(blocks[0]) + len(blocks[1])
    return _BlockAutomaton(blocks, [[0, 1], [0, 1]], range(n))


@lru_cache(maxsize=None)
def _optimal_automaton(params: SquarefulParams) -> _BlockAutomaton:
    t = minimal_roots(params)
    blocks = ["0", t.root(4), t.root(5), t.root(6)]
    succ = [[0, 1, 2, 3], [1, 2, 3], [2, 3], [2, 3]]
    auto = _BlockAutomaton(blocks, succ, [])
    auto.initial = frozenset(auto.starts)
    return auto


def is_in_Lab(w: Word, params: SquarefulParams) -> bool:
    """Whether w is a factor of some word in (S5 + S6)^omega."""
    return bool(_lab_automaton(params).run(w))


def optimal_form_check(w: Word, params: SquarefulParams) -> bool:
    """Whether w is a prefix of a word in 0*(10^a)*(S5 + S6)^omega."""
    return bool(_optimal_automaton(params).run(w))
