"""Independent reference implementations used by the tests.

Nothing here imports the package.  Slopes are given as (head, tail) tuples of
partial quotients, points as integer triples (u, v, d) meaning (u + v*alpha)/d.
"""

from __future__ import annotations

from fractions import Fraction


def quotients(head, tail, n):
    out = list(head)
    i = 0
    while len(out) < n:
        out.append(tail[i % len(tail)])
        i += 1
    return out[:n]


def convergent_fractions(head, tail, depth):
    """Successive convergents p_k/q_k, k = 0..depth (p_0/q_0 = 0/1)."""
    a = quotients(head, tail, depth)
    p_prev, q_prev, p, q = 1, 0, 0, 1
    out = [Fraction(0, 1)]
    for ak in a:
        p_prev, q_prev, p, q = p, q, ak * p + p_prev, ak * q + q_prev
        out.append(Fraction(p, q))
    return out


class Alpha:
    """alpha pinned between two consecutive deep convergents."""

    def __init__(self, head, tail, depth=400):
        c = convergent_fractions(head, tail, depth)
        self.lo, self.hi = sorted(c[-2:])

    def floor(self, u, v, d):
        """floor((u + v*alpha)/d), exact as long as the value is irrational."""
        a = Fraction(u + v * self.lo, d)
        b = Fraction(u + v * self.hi, d)
        fa, fb = a.numerator // a.denominator, b.numerator // b.denominator
        if fa != fb:
            raise ArithmeticError("bracket too wide")
        return fa

    def floor_or_ceil(self, u, v, d, upper):
        if v == 0:
            f = Fraction(u, d)
            if upper:
                return -((-f.numerator) // f.denominator)
            return f.numerator // f.denominator
        return self.floor(u, v, d) + (1 if upper else 0)

    def value(self, u, v, d):
        return float(Fraction(u + v * self.lo, d))


def mechanical_word(head, tail, point, n, upper=False):
    """Lower (floor) or upper (ceil) mechanical word of slope alpha and
    intercept x: letter i is F((i+1)alpha + x) - F(i alpha + x)."""
    al = Alpha(head, tail)
    u, v, d = point
    vals = [al.floor_or_ceil(u, v + i * d, d, upper) for i in range(n + 1)]
    return "".join(str(vals[i + 1] - vals[i]) for i in range(n))


def standard_words(head, tail, k_max):
    """s_{-1}, s_0, ..., s_{k_max} by the usual recurrence."""
    a = quotients(head, tail, k_max + 1)
    s = ["1", "0"]
    for k in range(1, k_max + 1):
        s.append(s[-1] * (a[k - 1] - 1) + s[-2] if k == 1 else s[-1] * a[k - 1] + s[-2])
    return s


def distinct_factors(w, n):
    return {w[i:i + n] for i in range(len(w) - n + 1)}


def minimal_square_roots(a, b):
    s5 = "1" + "0" * (a + 1) + ("1" + "0" * a) * b
    return ["0", "01" + "0" * (a - 1), "01" + "0" * a, "1" + "0" * a, s5, s5 + "1" + "0" * a]


def naive_parse(w, a, b):
    """Greedy left-to-right parse into minimal squares, checking uniqueness.

    Returns the list of root indices (1..6) and the unparsed remainder.
    """
    roots = minimal_square_roots(a, b)
    out, pos = [], 0
    while pos < len(w):
        hits = [i for i, r in enumerate(roots) if w.startswith(r + r, pos)]
        if len(hits) > 1:
            raise AssertionError(f"two minimal squares at {pos}")
        if not hits:
            break
        out.append(hits[0] + 1)
        pos += 2 * len(roots[hits[0]])
    return out, w[pos:]


def naive_sqrt(w, a, b):
    idx, rest = naive_parse(w, a, b)
    roots = minimal_square_roots(a, b)
    return "".join(roots[i - 1] for i in idx), rest


def is_primitive(w):
    n = len(w)
    return all(w != w[p:] + w[:p] for p in range(1, n) if n % p == 0)


def naive_balanced(w):
    for m in range(1, len(w)):
        counts = {w[i:i + m].count("1") for i in range(len(w) - m + 1)}
        if max(counts) - min(counts) > 1:
            return False
    return True


def lab_factors(a, b, n):
    """All length-n factors of products of S5 and S6, by enumeration."""
    roots = minimal_square_roots(a, b)
    s5, s6 = roots[4], roots[5]
    need = n + len(s6)
    out = set()
    stack = [""]
    while stack:
        w = stack.pop()
        if len(w) >= need:
            out |= distinct_factors(w, n)
            continue
        stack.append(w + s5)
        stack.append(w + s6)
    return out
