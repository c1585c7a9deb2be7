"""The recurrence gamma_{k+1} = L(gamma_k) gamma_k^2 and its non-Sturmian fixed points.

A seed S is a primitive solution of X1^2...Xn^2 = (X1...Xn)^2 longer than S6.
The limits of gamma_{2k} and gamma_{2k+1} are fixed by the square root map,
and every word of the subshift they generate has a square root that is either
in the subshift again or periodic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterator

from .cf import Slope
from .squares import (
    NoMinimalSquarePrefix,
    SquarefulParams,
    parse_minimal_squares,
    is_in_Lab,
    is_solution_eq2,
    minimal_roots,
    optimal_form_check,
)
from .words import (
    Word,
    are_conjugate,
    exchange_first_two,
    family_of,
    is_primitive,
    reverse,
)


class SeedTooShort(ValueError):
    pass


class NotASolution(ValueError):
    pass


@dataclass(frozen=True)
class SeedSolution:
    word: Word
    params: SquarefulParams
    provenance: str = "word"

    @property
    def L(self) -> Word:
        return exchange_first_two(self.word)

    def __len__(self) -> int:
        return len(self.word)


def seed_from_word(word: Word, params: SquarefulParams, provenance: str = "word") -> SeedSolution:
    s6 = minimal_roots(params).root(6)
    if len(word) <= len(s6):
        raise SeedTooShort(f"|S| = {len(word)} must exceed |S6| = {len(s6)}")
    if not is_primitive(word):
        raise NotASolution(f"{word} is not primitive")
    if not is_solution_eq2(word, params):
        raise NotASolution(f"{word} is not a solution for params {params}")
    if not word.endswith(s6):
        raise NotASolution(f"{word} does not end with S6 = {s6}")
    return SeedSolution(word, params, provenance)


def make_seed(slope: Slope, k: int, ell: int | None = None, apply_L: bool = False) -> SeedSolution:
    """S = reversed s_k or s_{k,l}, optionally with its first two letters exchanged."""
    fam = family_of(slope)
    if ell is None:
        w = reverse(fam.standard(k))
        prov = f"rs_{k}"
    else:
        w = reverse(fam.semistandard(k, ell))
        prov = f"rs_{k},{ell}"
    if apply_L:
        w = exchange_first_two(w)
        prov = "L(" + prov + ")"
    return seed_from_word(w, SquarefulParams.from_slope(slope), f"{prov} of {slope}")


@dataclass
class GammaSequence:
    seed: SeedSolution
    _terms: list[Word] = field(default_factory=list, repr=False)

    def __post_init__(self):
        if not self._terms:
            self._terms.append(self.seed.word)

    def term(self, k: int) -> Word:
        if k < 1:
            raise IndexError("gamma_k is defined for k >= 1")
        while len(self._terms) < k:
            g = self._terms[-1]
            self._terms.append(exchange_first_two(g) + g + g)
        return self._terms[k - 1]

    def first_longer_than(self, n: int, parity: int | None = None) -> int:
        """Smallest k (of the given parity class) with |gamma_k| >= n."""
        k = 1
        while len(self.term(k)) < n or (parity is not None and _parity(k) != parity):
            k += 1
        return k


def _parity(k: int) -> int:
    # Gamma_1 is the limit of the even terms, Gamma_2 of the odd ones
    return 1 if k % 2 == 0 else 2


def gamma(seq: GammaSequence, k: int) -> Word:
    return seq.term(k)


def gamma_limit_prefix(seq: GammaSequence, parity: int, n: int) -> Word:
    if parity not in (1, 2):
        raise ValueError("parity must be 1 or 2")
    return seq.term(seq.first_longer_than(n, parity))[:n]


def gamma_checks(seq: GammaSequence, k: int) -> dict:
    g = seq.term(k)
    p = seq.seed.params
    return {
        "primitive": is_primitive(g),
        "solution": is_solution_eq2(g, p),
        "in_Lab": is_in_Lab(g, p) and is_in_Lab(exchange_first_two(g), p),
    }


def block_pattern(seq: GammaSequence, k: int) -> str:
    """gamma_k written over the alphabet {S, L}."""
    w, n = seq.term(k), len(seq.seed)
    s, l_ = seq.seed.word, seq.seed.L
    out = []
    for i in range(0, len(w), n):
        blk = w[i:i + n]
        out.append("S" if blk == s else "L" if blk == l_ else "?")
    return "".join(out)


# ---------------------------------------------------------------------------
# positions of S


def boundary_set(seed: SeedSolution) -> set[int]:
    t = minimal_roots(seed.params)
    n = len(seed)
    return {n - len(t.root(i)) for i in (6, 4, 3, 1)}


def boundary_set_by_definition(params: SquarefulParams) -> set[int]:
    """Positions l of S6 at which no square of length <= |S6| - l begins."""
    s6 = minimal_roots(params).root(6)
    out = set()
    for ell in range(len(s6)):
        rest = s6[ell:]
        if not any(rest[:m] == rest[m:2 * m] for m in range(1, len(rest) // 2 + 1)):
            out.add(ell)
    return out


@dataclass(frozen=True)
class PositionClass:
    position: int
    in_BS: bool
    repetitive: bool
    nicely_repetitive: bool


def classify_position(seed: SeedSolution, ell: int) -> PositionClass:
    n = len(seed)
    if not 0 <= ell < n:
        raise ValueError(f"position must be in [0, {n})")
    w = (seed.word * 3)[ell:ell + 2 * n]
    try:
        fact = parse_minimal_squares(w, seed.params, None, ell)
        repetitive = not fact.remainder
    except NoMinimalSquarePrefix:
        repetitive = False
    nicely = repetitive and not ({n - ell, 2 * n - ell} & set(fact.partial_sums()))
    return PositionClass(ell, ell in boundary_set(seed), repetitive, nicely)


# ---------------------------------------------------------------------------
# backtracking


def _suffix_chains(w: str, end: int, roots: tuple[str, ...], limit: int) -> Iterator[list[int]]:
    """Sequences (Y1..Yn) of root indices with Y1^2...Yn^2 a suffix of w[:end]."""
    sqs = [r * 2 for r in roots]

    def rec(pos: int, chain: list[int]) -> Iterator[list[int]]:
        if chain:
            yield chain
        for i, sq in enumerate(sqs, 1):
            if len(chain) < limit and pos >= len(sq) and w.startswith(sq, pos - len(sq)):
                yield from rec(pos - len(sq), [i] + chain)

    yield from rec(end, [])


def _check_backtrack(x: int, chain: list[int], roots: tuple[str, ...]) -> bool:
    ys = "".join(roots[i - 1] for i in chain)
    return len(roots[x - 1]) > len(ys) and roots[x - 1].endswith(ys)


def verify_backtracking(params: SquarefulParams, trials: int = 200, rng_seed: int = 0,
                        sample_length: int = 60) -> dict:
    """Backtracking lemma: exhaustive small cases plus random words of L(a, b).

    Exhaustive part: every X and every chain Y1..Yn of minimal squares whose
    product is compatible (as suffixes of a common word of L(a, b)) with X^2,
    up to total length 4|S6|.  Random part: every end position of random
    products of S5 and S6.
    """
    roots = minimal_roots(params).roots
    sqs = [r * 2 for r in roots]
    bound = 4 * len(roots[5])
    failures = []
    cases = 0

    for x in range(1, 7):
        xsq = sqs[x - 1]

        def extend(chain: list[int], word: str):
            nonlocal cases
            for i in range(1, 7):
                if not chain and len(roots[i - 1]) >= len(roots[x - 1]):
                    continue  # |Y_n| < |X|
                new = sqs[i - 1] + word
                if len(new) > bound:
                    continue
                longer, shorter = (new, xsq) if len(new) >= len(xsq) else (xsq, new)
                if not longer.endswith(shorter) or not is_in_Lab(longer, params):
                    continue
                c = [i] + chain
                cases += 1
                if not _check_backtrack(x, c, roots):
                    failures.append({"X": x, "Y": c})
                extend(c, new)

        extend([], "")

    rng = random.Random(rng_seed)
    blocks = [roots[4], roots[5]]
    for _ in range(trials):
        w = ""
        while len(w) < sample_length + len(roots[5]):
            w += rng.choice(blocks)
        w = w[rng.randrange(len(roots[5])):][:sample_length]
        for end in range(1, len(w) + 1):
            for x in range(1, 7):
                if not w.startswith(sqs[x - 1], end - len(sqs[x - 1])) or end < len(sqs[x - 1]):
                    continue
                for chain in _suffix_chains(w, end, roots, 64):
                    if len(roots[chain[-1] - 1]) >= len(roots[x - 1]):
                        continue
                    cases += 1
                    if not _check_backtrack(x, chain, roots):
                        failures.append({"X": x, "Y": chain, "word": w[:end]})
    return {"suite": "backtracking", "cases": cases, "failures": failures}


# ---------------------------------------------------------------------------
# square roots of shifted products of S and L


@dataclass(frozen=True)
class PreservedInOmega:
    reference_length: int
    factor_length: int
    last_first_occurrence: int


@dataclass(frozen=True)
class Periodic:
    period: Word


@dataclass(frozen=True)
class Undetermined:
    horizon: int


def reference_prefix(seq: GammaSequence, min_length: int | None = None) -> Word:
    n = 36 * 2 * len(seq.seed)
    if min_length is not None:
        n = max(n, min_length)
    return gamma_limit_prefix(seq, 1, n)


def _factor_index(ref: str, m: int) -> dict[str, int]:
    out: dict[str, int] = {}
    for i in range(len(ref) - m + 1):
        out.setdefault(ref[i:i + m], i)
    return out


_REF_CACHE: dict[tuple[Word, int, int], dict[str, int]] = {}


def _reference_factors(ref: Word, m: int) -> dict[str, int]:
    key = (ref[:64], len(ref), m)
    hit = _REF_CACHE.get(key)
    if hit is None:
        hit = _REF_CACHE[key] = _factor_index(ref, m)
    return hit


def shifted_sqrt(sample: Word, params: SquarefulParams, ell: int, horizon: int) -> Word:
    """Square root of the squares of T^ell(sample) that end within ell + horizon."""
    fact = parse_minimal_squares(sample[ell:ell + horizon], params, None, ell)
    return fact.sqrt()


def classify_shift_sqrt(seq: GammaSequence, sample: Word, ell: int, horizon: int,
                        reference: Word | None = None):
    """Verdict on sqrt(T^ell(sample)) for a product of S and L.

    Periodic requires period |S| over the whole computed root with the first
    |S| letters conjugate to S.  PreservedInOmega requires every factor of
    length |S^2| of the root to occur in a Gamma prefix of length at least
    36|S^2|.  Raises NoMinimalSquarePrefix when the shifted sample does not
    factor into minimal squares.
    """
    s = seq.seed.word
    n = len(s)
    if len(sample) < ell + horizon:
        raise ValueError("sample shorter than ell + horizon")
    root = shifted_sqrt(sample, seq.seed.params, ell, horizon)
    if len(root) >= 2 * n and are_conjugate(root[:n], s) and root[n:] == root[:-n]:
        return Periodic(root[:n])
    ref = reference if reference is not None else reference_prefix(seq)
    m = min(2 * n, len(root))
    index = _reference_factors(ref, m)
    last = 0
    for i in range(len(root) - m + 1):
        j = index.get(root[i:i + m])
        if j is None:
            return Undetermined(horizon)
        last = max(last, j)
    return PreservedInOmega(len(ref), m, last)


def omega_windows(seq: GammaSequence, count: int, length: int, rng: random.Random) -> list[Word]:
    """Windows of Gamma starting at block boundaries, i.e. products of S and L."""
    n = len(seq.seed)
    k = seq.first_longer_than(max(10 * length, length + n))
    g = seq.term(k)
    starts = (len(g) - length) // n
    return [g[j * n:j * n + length] for j in (rng.randrange(starts + 1) for _ in range(count))]


def verdict_record(ell: int, verdict) -> dict:
    if isinstance(verdict, Periodic):
        return {"ell": ell, "verdict": "Periodic", "period": verdict.period}
    if isinstance(verdict, PreservedInOmega):
        return {"ell": ell, "verdict": "PreservedInOmega",
                "reference_length": verdict.reference_length,
                "factor_length": verdict.factor_length,
                "last_first_occurrence": verdict.last_first_occurrence}
    if isinstance(verdict, Undetermined):
        return {"ell": ell, "verdict": "Undetermined", "horizon": verdict.horizon}
    return {"ell": ell, "verdict": "NoMinimalSquarePrefix", "position": verdict}


def classification_sweep(seq: GammaSequence, windows: int = 50, horizon: int | None = None,
                         rng_seed: int = 0) -> list[dict]:
    """One record per position ell of S, over sampled windows of the subshift.

    A position gets the verdict shared by all windows, or ``Mixed`` with the
    list of distinct verdicts.
    """
    n = len(seq.seed)
    horizon = horizon or 20 * n
    rng = random.Random(rng_seed)
    samples = omega_windows(seq, windows, n + horizon, rng)
    ref = reference_prefix(seq)
    out = []
    for ell in range(n):
        recs = []
        for w in samples:
            try:
                v = classify_shift_sqrt(seq, w, ell, horizon, ref)
            except NoMinimalSquarePrefix as e:
                v = e.position
            recs.append(verdict_record(ell, v))
        kinds = sorted({r["verdict"] for r in recs})
        rec = {"ell": ell, "verdict": kinds[0] if len(kinds) == 1 else "Mixed",
               "windows": len(recs), "verdicts": kinds}
        witness = {}
        periods = sorted({r["period"] for r in recs if "period" in r})
        if periods:
            witness["periods"] = periods
        kept = [r for r in recs if r["verdict"] == "PreservedInOmega"]
        if kept:
            witness["reference_length"] = kept[0]["reference_length"]
            witness["factor_length"] = max(r["factor_length"] for r in kept)
            witness["last_first_occurrence"] = max(r["last_first_occurrence"] for r in kept)
        rec["witness"] = witness
        out.append(rec)
    return out


# ---------------------------------------------------------------------------
# the zeta experiment

ZETA_RETURNS = frozenset({"10100", "101" + "001" * 2 + "00", "101" + "001" * 4 + "00"})


def zeta_prefix(n: int) -> Word:
    """Prefix of length n of tau(sigma^omega(6)) with 6 -> 656556, 5 -> 5."""
    params = SquarefulParams(1, 0)
    t = minimal_roots(params)
    img = {"6": t.square(6), "5": t.square(5)}
    u = "6"
    while sum(len(img[c]) for c in u) < n:
        u = "".join("656556" if c == "6" else "5" for c in u)
    return "".join(img[c] for c in u)[:n]


def returns_to(w: Word, factor: str) -> set[Word]:
    occ = [i for i in range(len(w) - len(factor) + 1) if w.startswith(factor, i)]
    return {w[i:j] for i, j in zip(occ, occ[1:])}


def zeta_experiment(horizon: int = 10_000, window: int = 600) -> dict:
    """Returns to 101 in zeta and in the square roots of its shifts."""
    params = SquarefulParams(1, 0)
    z = zeta_prefix(horizon)
    rets = returns_to(z, "101")
    failures = []
    if rets != ZETA_RETURNS:
        failures.append({"check": "returns", "got": sorted(rets)})
    if not optimal_form_check(z, params):
        failures.append({"check": "optimal_form"})
    parsed = unparsed = 0
    for ell in range(horizon - window):
        try:
            root = parse_minimal_squares(z[ell:ell + window], params, None, ell).sqrt()
        except NoMinimalSquarePrefix:
            unparsed += 1
            continue
        parsed += 1
        if not returns_to(root, "101") - ZETA_RETURNS:
            failures.append({"check": "foreign_return", "ell": ell})
    return {"suite": "zeta", "cases": parsed, "failures": failures,
            "returns": sorted(rets), "unparsed_shifts": unparsed, "window": window}

