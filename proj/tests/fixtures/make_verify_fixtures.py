"""Independent reference values for the verify tests.

Series coefficients are computed with Python fractions, exponentials with
mpmath at 600 digits. Run from this directory:  python3 make_verify_fixtures.py
"""
import json
import math
from fractions import Fraction

import mpmath

mpmath.mp.dps = 600


def exp_coeffs(g, n):
    # D = exp(G): k D_k = sum_j j g_j D_{k-j}
    D = [Fraction(1)] + [Fraction(0)] * n
    for k in range(1, n + 1):
        D[k] = sum(j * g[j] * D[k - j] for j in range(1, k + 1)) / k
    return D


def prop1_ratio(n, r, m):
    g = [Fraction(0)] + [Fraction(1, j) for j in range(1, n + 1)]
    D = exp_coeffs(g, n)
    h = sum(g[1:r + 1], Fraction(0))
    for j in range(1, r + 1):
        g[j] = Fraction(0)
    F = exp_coeffs(g, n)
    q = F[m] / D[n]
    value = mpmath.mpf(q.numerator) / q.denominator * mpmath.exp(mpmath.mpf(h.numerator) / h.denominator) - 1
    return value


def lemma8_C2_permutations(n):
    best, arg = 0.0, 0
    for m in range(1, n + 1):
        s = Fraction(0)
        for j in range(1, m + 1):
            if m % j == 0:
                k = m // j
                s += Fraction(1, j ** k * math.factorial(k))
        v = m * s
        if v > best:
            best, arg = v, m
    return float(best), arg


rows = []
n = 100
for r in (0, 1, 2, 5, 10, 25):
    for eta_num, eta_den in ((0, 1), (1, 8), (1, 4), (1, 2)):
        m = -(-n * (eta_den - eta_num) // eta_den)  # ceil(n (1 - eta))
        v = prop1_ratio(n, r, m)
        rows.append({"n": n, "r": r, "eta": eta_num / eta_den, "m": m,
                     "ratio_minus_one": mpmath.nstr(v, 17, min_fixed=0, max_fixed=0)})

C2, C2_index = lemma8_C2_permutations(6)
out = {
    "generator": "tests/fixtures/make_verify_fixtures.py",
    "prop1_d1_delta_quarter": rows,
    "lemma8_permutations_n6": {"C2": C2, "C2_index": C2_index},
}
with open("verify_reference.json", "w") as f:
    json.dump(out, f, indent=2)
    f.write("\n")
