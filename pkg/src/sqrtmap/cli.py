"""Command line interface: ``sqrtmap COMMAND [flags]``.

Exit status is 0 on success, 1 when a check fails and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Callable

from . import cf, gamma as gm, squares as sq, sturmian as st, words as wd
from .cf import CirclePoint, Convention, Slope


def _slope(text: str) -> Slope:
    try:
        return cf.parse_slope(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _point(text: str) -> CirclePoint:
    try:
        return cf.parse_point(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _params(text: str) -> sq.SquarefulParams:
    try:
        return sq.SquarefulParams.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _seed_index(text: str) -> tuple[int, int | None]:
    try:
        parts = [int(t) for t in text.split(",")]
    except ValueError:
        parts = []
    if len(parts) not in (1, 2):
        raise argparse.ArgumentTypeError(f"expected K or K,L, got {text!r}")
    return parts[0], parts[1] if len(parts) == 2 else None


def _word(text: str) -> str:
    text = text.strip()
    if text.strip("01"):
        raise argparse.ArgumentTypeError(f"not a binary word: {text[:40]!r}")
    return text


def _emit(obj, as_json: bool, text: str | None = None) -> None:
    if as_json:
        print(json.dumps(obj))
    else:
        print(text if text is not None else obj)


def _read_word() -> str:
    return _word(sys.stdin.read())


def _need_params(args, parser) -> sq.SquarefulParams:
    if args.params is not None:
        return args.params
    if args.slope is not None:
        return sq.SquarefulParams.from_slope(args.slope)
    parser.error("one of --params or --slope is required")


# ---------------------------------------------------------------------------
# commands


def cmd_generate(args, parser) -> int:
    slope = args.slope or cf.FIBONACCI
    spec = st.SturmianSpec(slope, args.intercept, Convention(args.convention))
    w = st.generate(spec, args.length)
    _emit({"slope": str(slope), "intercept": str(args.intercept),
           "convention": args.convention, "word": w}, args.json, w)
    return 0


def cmd_factorize(args, parser) -> int:
    if args.inverse:
        data = sys.stdin.read()
        try:
            fact = sq.Factorization.from_json(data)
        except (ValueError, KeyError, TypeError) as e:
            parser.error(f"stdin is not a factorization record: {e}")
        sys.stdout.write(fact.word() + "\n")
        return 0
    params = _need_params(args, parser)
    if args.stream:
        return _factorize_stream(args, params)
    w = _read_word()
    try:
        fact = sq.parse_minimal_squares(w, params, args.max_squares)
    except sq.NoMinimalSquarePrefix as e:
        _emit({"failures": [{"error": "NoMinimalSquarePrefix", "position": e.position}]},
              True)
        return 1
    text = " ".join(map(str, fact.indices))
    if fact.remainder:
        text += "\n+" + fact.remainder
    _emit(fact.to_json(), args.json, text)
    return 0


def _factorize_stream(args, params) -> int:
    def letters():
        while True:
            c = sys.stdin.read(1)
            if not c:
                return
            if c in "01":
                yield c

    src = sq.WordSource(letters())
    total = 0
    try:
        while args.max_squares is None or total < args.max_squares:
            n = args.batch if args.max_squares is None else min(args.batch, args.max_squares - total)
            start = src.position
            fact = sq.parse_minimal_squares(src, params, n, offset=start)
            if not fact.indices:
                break
            total += len(fact.indices)
            print(json.dumps({"offset": start, "indices": fact.indices,
                              "consumed": fact.consumed}))
    except sq.NoMinimalSquarePrefix as e:
        print(json.dumps({"failures": [{"error": "NoMinimalSquarePrefix",
                                        "position": e.position}]}))
        return 1
    print(json.dumps({"params": {"a": params.a, "b": params.b}, "squares": total,
                      "consumed": src.position, "remainder_prefix": src.peek(64)}))
    return 0


def cmd_sqrt(args, parser) -> int:
    params = _need_params(args, parser)
    w = _read_word()
    try:
        fact = sq.parse_minimal_squares(w, params)
    except sq.NoMinimalSquarePrefix as e:
        _emit({"failures": [{"error": "NoMinimalSquarePrefix", "position": e.position}]}, True)
        return 1
    if fact.remainder and not args.prefix:
        _emit({"failures": [{"error": "NotInPi", "remainder": fact.remainder}]}, True)
        return 1
    root = fact.sqrt()
    _emit({"sqrt": root, "consumed": fact.consumed}, args.json, root)
    return 0


def cmd_solutions(args, parser) -> int:
    slope = args.slope or cf.FIBONACCI
    try:
        sols = sq.enumerate_primitive_solutions(slope, args.length)
    except sq.CharacterizationMismatch as e:
        _emit({"failures": [{"error": "CharacterizationMismatch", "detail": str(e)}]}, True)
        return 1
    recs = []
    for w in sols:
        lab = st.rsst_label(slope, w)
        recs.append({"word": w, "tag": lab.tag.value, "k": lab.k, "ell": lab.ell})
    _emit(recs, args.json, "\n".join(f"{r['word']}\t{r['tag']}" for r in recs))
    return 0


def cmd_intervals(args, parser) -> int:
    slope = args.slope or cf.FIBONACCI
    recs = wd.factor_records(slope, args.length)
    _emit(recs, args.json, "\n".join(f"{r['word']}\t{r['left']}\t{r['right']}" for r in recs))
    return 0


def _random_point(rng: random.Random) -> CirclePoint:
    d = rng.randint(1, 12)
    return CirclePoint(rng.randint(-20, 20), rng.randint(-20, 20), d)


def _suite_sqrt_theorem(args) -> dict:
    rng = random.Random(args.rng_seed)
    slope = args.slope or cf.FIBONACCI
    failures = []
    for i in range(args.trials):
        x = _random_point(rng)
        conv = Convention(rng.choice(["lower", "upper"]))
        spec = st.SturmianSpec(slope, x, conv)
        if not st.verify_sqrt_theorem(spec, args.length):
            failures.append({"case": i, "intercept": str(x), "convention": conv.value})
    return {"suite": "sqrt_theorem", "cases": args.trials, "failures": failures}


def _suite_prefix_locations(args) -> dict:
    spec = st.SturmianSpec(args.slope or cf.FIBONACCI, args.intercept,
                           Convention(args.convention))
    return st.verify_prefix_locations(spec, args.depth or 4)


def _suite_length_monotonicity(args) -> dict:
    rng = random.Random(args.rng_seed)
    slope = args.slope or cf.FIBONACCI
    failures, cases, drops = [], 0, 0
    for i in range(args.trials):
        spec = st.SturmianSpec(slope, _random_point(rng))
        rep = st.verify_length_monotonicity(spec, args.depth or 20)
        cases += rep["cases"]
        drops += rep["drops"]
        failures += [dict(f, case=i, intercept=str(spec.intercept)) for f in rep["failures"]]
    return {"suite": "length_monotonicity", "cases": cases, "failures": failures,
            "drops": drops}


def _suite_characterization(args) -> dict:
    slope = args.slope or cf.FIBONACCI
    n = min(args.length, 60) if args.length else 60
    params = sq.SquarefulParams.from_slope(slope)
    failures = []
    cases = 0
    rsst = wd.rsst_set(slope, n)
    for w in sq._squares_in_language(slope, n):
        cases += 1
        a = sq.is_solution_eq2(w, params)
        b = sq.satisfies_sqrt_condition(w, slope)
        c = w in rsst
        if not a == b == c:
            failures.append({"word": w, "solution": a, "sqrt_condition": b, "rsst": c})
    return {"suite": "characterization", "cases": cases, "failures": failures}


def _suite_backtracking(args) -> dict:
    params = args.params or sq.SquarefulParams(1, 0)
    return gm.verify_backtracking(params, args.trials, args.rng_seed)


SUITES: dict[str, Callable[[argparse.Namespace], dict]] = {
    "sqrt_theorem": _suite_sqrt_theorem,
    "prefix_locations": _suite_prefix_locations,
    "length_monotonicity": _suite_length_monotonicity,
    "fibonacci_identities": lambda a: st.verify_fibonacci_identities(a.depth or 6),
    "tables": lambda a: st.verify_tables(),
    "characterization": _suite_characterization,
    "backtracking": _suite_backtracking,
    "zeta": lambda a: gm.zeta_experiment(a.horizon or 10_000),
}


def cmd_verify(args, parser) -> int:
    report = SUITES[args.suite](args)
    text = f"{report['suite']}: {report['cases']} cases, {len(report['failures'])} failures"
    if report["failures"]:
        text += "\n" + json.dumps(report["failures"][:20])
    _emit(report, args.json, text)
    return 1 if report["failures"] else 0


def _seed(args, parser) -> gm.SeedSolution:
    try:
        if args.seed_word is not None:
            return gm.seed_from_word(args.seed_word, _need_params(args, parser))
        if args.seed_index is None:
            parser.error("one of --seed-word or --seed-index is required")
        k, ell = args.seed_index
        return gm.make_seed(args.slope or cf.FIBONACCI, k, ell, args.apply_L)
    except (gm.SeedTooShort, gm.NotASolution, cf.IndexOutOfRange) as e:
        parser.error(str(e))


def cmd_gamma(args, parser) -> int:
    seed = _seed(args, parser)
    seq = gm.GammaSequence(seed)
    if args.classify:
        recs = gm.classification_sweep(seq, args.windows, args.horizon, args.rng_seed)
        for r in recs:
            print(json.dumps(r))
        return 1 if any(r["verdict"] in ("Undetermined", "NoMinimalSquarePrefix")
                        for r in recs) else 0
    k = args.depth or 4
    checks = {c: v for c, v in gm.gamma_checks(seq, k).items() if c in ("solution", "in_Lab")}
    rec = {"seed": seed.word, "k": k, "gamma_len": len(seq.term(k)), "checks": checks}
    text = (f"seed {seed.word} ({seed.provenance})\nk={k} |gamma_k|={rec['gamma_len']} "
            + " ".join(f"{c}={v}" for c, v in checks.items()))
    _emit(rec, args.json, text)
    return 0 if all(checks.values()) else 1


def cmd_zeta(args, parser) -> int:
    rep = gm.zeta_experiment(args.horizon or 10_000)
    text = (f"returns to 101: {', '.join(rep['returns'])}\n"
            f"{rep['cases']} shifts parsed, {len(rep['failures'])} failures")
    _emit(rep, args.json, text)
    return 1 if rep["failures"] else 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--slope", type=_slope, help='partial quotients, e.g. "2,(1)"; default fibonacci')
    common.add_argument("--intercept", type=_point, default=cf.ALPHA,
                        help='point "(u+v*a)/d"; default alpha')
    common.add_argument("--convention", choices=["lower", "upper"], default="lower")
    common.add_argument("--params", type=_params, help="squareful parameters A,B")
    common.add_argument("--length", type=int, default=100)
    common.add_argument("--max-squares", type=int, default=None)
    common.add_argument("--depth", type=int, default=None)
    common.add_argument("--horizon", type=int, default=None)
    common.add_argument("--trials", type=int, default=20)
    common.add_argument("--rng-seed", type=int, default=0)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = argparse.ArgumentParser(prog="sqrtmap", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("generate", parents=[common], help="prefix of a Sturmian word")

    f = sub.add_parser("factorize", parents=[common], help="minimal-square factorization of stdin")
    f.add_argument("--inverse", action="store_true",
                   help="read a factorization record and print the word")
    f.add_argument("--stream", action="store_true", help="NDJSON batches while reading stdin")
    f.add_argument("--batch", type=int, default=1000)

    s = sub.add_parser("sqrt", parents=[common], help="square root of the word on stdin")
    s.add_argument("--prefix", action="store_true",
                   help="accept an unparsed tail shorter than one square")

    sub.add_parser("solutions", parents=[common], help="primitive solutions up to --length")
    sub.add_parser("intervals", parents=[common], help="factors of length --length with intervals")

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=sorted(SUITES))

    g = sub.add_parser("gamma", parents=[common], help="the gamma_k construction")
    g.add_argument("--seed-word", type=_word)
    g.add_argument("--seed-index", type=_seed_index, metavar="K[,L]")
    g.add_argument("--apply-L", action="store_true")
    g.add_argument("--classify", action="store_true",
                   help="classify the square roots of all shifts (NDJSON)")
    g.add_argument("--windows", type=int, default=50)

    sub.add_parser("zeta", parents=[common], help="returns to 101 in zeta and its square roots")
    return p


COMMANDS = {
    "generate": cmd_generate, "factorize": cmd_factorize, "sqrt": cmd_sqrt,
    "solutions": cmd_solutions, "intervals": cmd_intervals, "verify": cmd_verify,
    "gamma": cmd_gamma, "zeta": cmd_zeta,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    sub = parser._subparsers._group_actions[0].choices[args.command]
    try:
        return COMMANDS[args.command](args, sub)
    except cf.QuotientsExhausted as e:
        print(f"error: {e}; give the slope a periodic tail", file=sys.stderr)
        return 2
    except argparse.ArgumentTypeError as e:
        sub.error(str(e))


if __name__ == "__main__":
    sys.exit(main())
