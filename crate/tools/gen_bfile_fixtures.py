#!/usr/bin/env python3
"""Write the b-file fixtures under crates/core/tests/data/bfiles.

No network: every sequence is rebuilt from its OEIS definition by a route
that does not share code with the Rust crate (sympy series expansion or
exact arithmetic in Q(sqrt 2) for the e.g.f. sequences, brute force over S_n
for the run triangle, closed forms for the geometric families). Replace any
file with the published b-file to check against the real thing.
"""

from fractions import Fraction
from itertools import permutations
from math import factorial
from pathlib import Path

import sympy as sp

OUT = Path(__file__).resolve().parent.parent / "crates/core/tests/data/bfiles"
x = sp.symbols("x")


def egf_terms(expr, count):
    ser = sp.series(expr, x, 0, count).removeO()
    return [ser.coeff(x, n) * factorial(n) for n in range(count)]


class Q2:
    """a + b*sqrt(2) with rational a, b."""

    def __init__(self, a, b=0):
        self.a, self.b = Fraction(a), Fraction(b)

    def __add__(self, o):
        return Q2(self.a + o.a, self.b + o.b)

    def __sub__(self, o):
        return Q2(self.a - o.a, self.b - o.b)

    def __mul__(self, o):
        return Q2(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    def inv(self):
        den = self.a * self.a - 2 * self.b * self.b
        return Q2(self.a / den, -self.b / den)


ZERO = Q2(0)
SQRT2 = Q2(0, 1)


def ps_mul(f, g):
    return [sum((f[i] * g[n - i] for i in range(n + 1)), ZERO) for n in range(len(f))]


def ps_inv(f):
    out = [f[0].inv()]
    for n in range(1, len(f)):
        s = sum((f[i] * out[n - i] for i in range(1, n + 1)), ZERO)
        out.append(ZERO - s * out[0])
    return out


def ps_sqrt(f, root0):
    h = [root0]
    half = (root0 + root0).inv()
    for n in range(1, len(f)):
        s = sum((h[i] * h[n - i] for i in range(1, n)), ZERO)
        h.append((f[n] - s) * half)
    return h


def unimodal_terms(count):
    """n! [x^n] of (arcsinh(1/g) - arcsinh(1))/sqrt(2), g = sinh(arcsinh(1) - sqrt(2) x).

    Since sinh(arcsinh 1) = 1 and cosh(arcsinh 1) = sqrt(2),
    g = cosh(sqrt2 x) - sqrt2 sinh(sqrt2 x), and the derivative of the whole
    expression is -g' / (sqrt2 g sqrt(g^2 + 1)).
    """
    order = count + 1
    g = []
    for n in range(order):
        power = Q2(2 ** (n // 2)) * (SQRT2 if n % 2 else Q2(1))
        c = power * Q2(Fraction(1, factorial(n)))
        g.append(c if n % 2 == 0 else ZERO - c * SQRT2)
    dg = [g[n + 1] * Q2(n + 1) for n in range(order - 1)] + [ZERO]
    g2p1 = ps_mul(g, g)
    g2p1[0] = g2p1[0] + Q2(1)
    root = ps_sqrt(g2p1, SQRT2)
    denom = [c * SQRT2 for c in ps_mul(g, root)]
    du = ps_mul(dg, ps_inv(denom))
    terms = []
    for n in range(1, count + 1):
        c = ZERO - du[n - 1] * Q2(factorial(n - 1))
        assert c.b == 0 and c.a.denominator == 1, (n, c.a, c.b)
        terms.append(int(c.a))
    return terms


def runs_at_least_two(p):
    runs, length = 0, 1
    for a, b in zip(p, p[1:]):
        if b > a:
            length += 1
        else:
            runs += length >= 2
            length = 1
    return runs + (length >= 2)


def run_triangle(rows):
    out = []
    for n in range(rows):
        counts = {}
        for p in permutations(range(n)):
            k = runs_at_least_two(p)
            counts[k] = counts.get(k, 0) + 1
        out.extend(counts[k] for k in range(max(counts) + 1))
    return out


def write(anum, title, offset, values):
    path = OUT / f"b{anum:06d}.txt"
    lines = [f"# A{anum:06d} {title}", "# regenerated locally by tools/gen_bfile_fixtures.py"]
    lines += [f"{offset + i} {v}" for i, v in enumerate(values)]
    path.write_text("\n".join(lines) + "\n")
    print(path.name, len(values))


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    write(1586, "Springer numbers", 0, egf_terms(1 / (sp.cos(x) - sp.sin(x)), 21))
    write(104018, "e.g.f. (arcsinh(1/sinh(arcsinh(1)-sqrt(2)x)) - arcsinh(1))/sqrt(2)", 1, unimodal_terms(20))
    write(8971, "permutations of [n] with k increasing runs of length >= 2, by rows", 0, run_triangle(10))
    for anum, base in [(3462, 3), (23000, 7), (135518, 15), (218734, 31)]:
        write(anum, f"({base}^n-1)/{base - 1}", 0, [(base**n - 1) // (base - 1) for n in range(21)])
    write(2866, "a(0)=1, a(n) = 2^(n-1) n!", 0, [1] + [2 ** (n - 1) * factorial(n) for n in range(1, 19)])
    write(52700, "e.g.f. 2x^2/(1-3x)", 0, egf_terms(2 * x**2 / (1 - 3 * x), 17))
    write(8776, "2*3^n", 0, [2 * 3**n for n in range(21)])
    write(2023, "6*4^n", 0, [6 * 4**n for n in range(21)])
    write(235702, "24*5^n", 0, [24 * 5**n for n in range(21)])


if __name__ == "__main__":
    main()
