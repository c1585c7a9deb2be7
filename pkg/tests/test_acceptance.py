"""Acceptance criteria 1-10.

Each criterion prints one line "criterion N: PASS|FAIL (seconds, budget)".
Run with pytest, or directly as ``python tests/test_acceptance.py``.
"""

import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import conftest  # noqa: E402
from oracles import is_primitive, minimal_square_roots, naive_sqrt  # noqa: E402
from sqrtmap import cf  # noqa: E402
from sqrtmap import gamma as g  # noqa: E402
from sqrtmap import sturmian as st  # noqa: E402
from sqrtmap import words as wd  # noqa: E402
from sqrtmap.squares import (  # noqa: E402
    SquarefulParams,
    is_in_Lab,
    is_solution_eq2,
    parse_minimal_squares,
    satisfies_sqrt_condition,
    sqrt_of_prefix,
)

PHI = cf.FIBONACCI


def criterion_1():
    f = st.generate(st.characteristic_spec(PHI), 36)
    fact = parse_minimal_squares(f, SquarefulParams(1, 0))
    assert fact.indices == [3, 5, 4, 2, 1, 6, 2] and fact.remainder == ""
    assert fact.sqrt() == "010100100101001001"
    assert f == "010010" + "100100" + "1010" + "0101" + "00" + "1001010010" + "0101"


def sweep_slopes():
    rng = random.Random(2024)
    out = []
    while len(out) < 20:
        head = (rng.randint(2, 6),) + tuple(rng.randint(1, 5) for _ in range(rng.randint(0, 4)))
        s = cf.Slope(head, rng.choice([(1,), (2,), (1, 2)]))
        if s not in out:
            out.append(s)
    return out, rng


def criterion_2():
    slopes, rng = sweep_slopes()
    cases = 0
    for slope in slopes:
        for _ in range(10):
            x = cf.CirclePoint(rng.randint(-50, 50), rng.randint(-50, 50), rng.randint(1, 12))
            for conv in (cf.LOWER, cf.UPPER):
                assert st.verify_sqrt_theorem(st.SturmianSpec(slope, x, conv), 500), (slope, x, conv)
                cases += 1
    assert cases == 400


def criterion_3():
    for text in ("2,(1)", "3,(1,2)", "2,2,(1)", "4,1,3,(2)", "2,1,1,2,(1,2)"):
        slope = cf.parse_slope(text)
        a, b = slope.params
        params = SquarefulParams(a, b)
        rsst = wd.rsst_set(slope, 60)
        for n in range(1, 61):
            for w, _ in wd.factors_of_length(slope, n):
                if not is_primitive(w) or not wd.is_factor(w + w, slope):
                    continue
                root, rest = naive_sqrt(w + w, a, b)
                brute = rest == "" and root == w
                assert brute == is_solution_eq2(w, params)
                assert brute == satisfies_sqrt_condition(w, slope) == (w in rsst), (text, w)


def criterion_4():
    s = wd.family_of(PHI).standard
    t = lambda k: "01" if k % 2 == 0 else "10"
    for k in range(7):
        assert t(k) + s(k) + s(k + 1) + s(k + 2) == s(k + 2)[::-1] * 2 + t(k + 1)
        assert s(3 * k + 4) == "".join(s(3 * i + 2)[::-1] * 2 for i in range(k + 1)) + t(k + 1)
    assert "01" + "0" + "01" + "010" == "010" * 2 + "10"
    assert st.verify_fibonacci_identities(6, 1000)["failures"] == []
    root = st.sqrt_prefix(st.characteristic_spec(PHI), 1000)
    assert root == st.generate(st.SturmianSpec(PHI, cf.HALF), 1000)


TABLE_1 = {  # (a3, a4) -> X1, X2, X3 indices
    (1, 1): (2, 5, 8), (2, 1): (2, 4, 7), (3, 1): (2, 5, 8),
    (1, 2): (2, 3, 6), (2, 2): (2, 4, 7), (3, 2): (2, 3, 6),
    (1, 3): (2, 3, 5), (2, 3): (2, 4, 7), (3, 3): (2, 3, 5),
}
TABLE_2 = {  # (a3, a4) -> first letter of X4
    (1, 1): "1", (2, 1): "0", (3, 1): "1",
    (1, 2): "1", (2, 2): "0", (3, 2): "1",
    (1, 3): "0", (2, 3): "0", (3, 3): "0",
}


def criterion_5():
    for key in TABLE_1:
        idx, letter = st.table_experiments(*key)
        assert idx == TABLE_1[key], key
        assert letter == TABLE_2[key], key


def criterion_6():
    params = SquarefulParams(1, 0)
    for seed in (g.make_seed(PHI, 5), g.make_seed(PHI, 4)):
        assert seed.word in ("1001001010010", "01010010")
        seq = g.GammaSequence(seed)
        for k in range(1, 7):
            gk = g.gamma(seq, k)
            assert is_primitive(gk)
            assert is_in_Lab(gk, params) and is_in_Lab(wd.exchange_first_two(gk), params)
            assert is_solution_eq2(gk, params)
        n = 2 * 3 ** 5 * len(seed)
        for parity in (1, 2):
            p = g.gamma_limit_prefix(seq, parity, n)
            assert sqrt_of_prefix(p, params) == p[: n // 2]
        assert not wd.is_balanced(g.gamma(seq, 2) * 2)


def criterion_7():
    seed = g.seed_from_word("1001001010010", SquarefulParams(1, 0))
    one, two, four = (g.classify_position(seed, ell) for ell in (1, 2, 4))
    assert (one.repetitive, one.nicely_repetitive) == (True, False)
    assert (two.repetitive, two.nicely_repetitive) == (True, True)
    assert (four.repetitive, four.nicely_repetitive) == (False, False)
    assert g.boundary_set(seed) == {8, 10, 11, 12}
    # partial sum |0^2 (10010)^2| = 12 = |S| - 1 at position 1
    fact = parse_minimal_squares((seed.word * 3)[1:27], seed.params)
    assert 12 in fact.partial_sums()


def criterion_8():
    seed = g.make_seed(PHI, 5)
    n = len(seed)
    seq = g.GammaSequence(seed)
    recs = g.classification_sweep(seq, windows=50, horizon=20 * n)
    assert [r["ell"] for r in recs] == list(range(13))
    for r in recs:
        assert r["windows"] == 50
        assert set(r["verdicts"]) <= {"PreservedInOmega", "Periodic"}, r
        for p in r["witness"].get("periods", []):
            assert len(p) == n and wd.are_conjugate(p, seed.word)
    assert any("Periodic" in r["verdicts"] for r in recs)
    assert recs[0]["verdict"] == "PreservedInOmega"


ZETA_RETURNS = {"10100", "101" + "001" * 2 + "00", "101" + "001" * 4 + "00"}


def criterion_9():
    rep = g.zeta_experiment(10_000)
    assert set(rep["returns"]) == ZETA_RETURNS
    assert rep["failures"] == [] and rep["cases"] > 0
    z = g.zeta_prefix(10_000)
    roots = minimal_square_roots(1, 0)
    assert (roots[4], roots[5]) == ("100", "10010")
    assert g.returns_to(z, "101") == ZETA_RETURNS


def criterion_10():
    slopes = [cf.parse_slope(s) for s in ("2,(1)", "3,(1,2)", "2,2,(1)", "4,1,3,(2)", "2,(3)")]

    def dist(n, slope):
        A, B = cf.distance_form(n, slope)
        return cf.CirclePoint(A, B, 1)

    for slope in slopes:
        cmp = lambda x, y: cf.compare_real(x, y, slope)
        fam = wd.family_of(slope)
        # best approximations: ||q_{k-1} alpha|| is the minimum over 0 < n < q_k
        for k in range(1, 7):
            best = cf.denominator(slope, k - 1)
            for n in range(1, cf.denominator(slope, k)):
                if n != best:
                    assert cmp(dist(best, slope), dist(n, slope)) < 0
        # distance identity for semiconvergents
        for k in range(2, 8):
            qk1 = cf.denominator(slope, k - 1)
            for ell in range(1, slope.quotient(k) + 1):
                prev = (cf.denominator(slope, k - 2) if ell == 1
                        else cf.semiconvergent_denominator(slope, k, ell - 1))
                lhs = dist(cf.semiconvergent_denominator(slope, k, ell), slope)
                a, b = dist(prev, slope), dist(qk1, slope)
                assert cmp(lhs, cf.CirclePoint(a.u - b.u, a.v - b.v, 1)) == 0
        # index of standard words
        assert wd.index_in_language(fam.standard(1), slope) == slope.quotient(2) + 1
        for k in range(2, 7):
            assert wd.index_in_language(fam.standard(k), slope) == slope.quotient(k + 1) + 2
        # lengths of primitive square roots
        allowed = {1, cf.denominator(slope, 1)}
        k = 2
        while cf.denominator(slope, k - 2) <= 60:
            allowed |= {cf.semiconvergent_denominator(slope, k, e) for e in range(1, slope.quotient(k) + 1)}
            k += 1
        for n in range(1, 61):
            for w, _ in wd.factors_of_length(slope, n):
                if is_primitive(w) and wd.is_factor(w + w, slope):
                    assert n in allowed
        # u^2 is never a proper prefix of v^2
        us = []
        for r in st.iter_rsst(slope):
            if len(r.word) > 60:
                break
            us.append(r.word)
        for v in (r.word for r in fam.rsst_words(60)):
            for u in us:
                assert not (len(u) < len(v) and (v * 2).startswith(u * 2))
    for ab in ((1, 0), (1, 1), (2, 1), (2, 0), (3, 2)):
        rep = g.verify_backtracking(SquarefulParams(*ab), trials=50)
        assert rep["failures"] == [] and rep["cases"] > 0


CRITERIA = {
    1: (criterion_1, 1), 2: (criterion_2, 60), 3: (criterion_3, 300), 4: (criterion_4, 10),
    5: (criterion_5, 30), 6: (criterion_6, 30), 7: (criterion_7, 1), 8: (criterion_8, 120),
    9: (criterion_9, 60), 10: (criterion_10, 300),
}


def run_criterion(n):
    fn, budget = CRITERIA[n]
    t = time.perf_counter()
    error = None
    try:
        fn()
    except AssertionError as e:
        error = e
    dt = time.perf_counter() - t
    ok = error is None and dt < budget
    why = "" if error is None else f" [{str(error)[:120] or 'assertion failed'}]"
    if error is None and dt >= budget:
        why = " [over time budget]"
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({dt:.2f}s, budget {budget}s){why}"
    print(line)
    conftest.ACCEPTANCE_LINES.append(line)
    return ok, error, line


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    ok, error, line = run_criterion(n)
    if error is not None:
        raise error
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(n)[0] for n in sorted(CRITERIA)]
    sys.exit(0 if all(results) else 1)
