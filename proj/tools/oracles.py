#!/usr/bin/env python3
"""Reference values for tests/test_oracles.cpp, computed at 40 digits.

Everything is built from Brownian motion killed on leaving (0, r0) and the
h-transform with h(x) = sinh(mu x), not from the library's series. Survival
is a direct quadrature, mean exit the Green's function double integral; densities in t and in the barrier are
numerical derivatives.
Run: python3 tools/oracles.py [section ...]
"""
import sys

from mpmath import mp, mpf, exp, sinh, sqrt, pi, quad, diff, inf, nsum

mp.dps = 40


def S(mu, a):
    return a if mu == 0 else sinh(mu * a)


def phi(t, z):
    return exp(-z * z / (2 * t)) / sqrt(2 * pi * t)


def bm_killed(t, x, y, r0):
    # Lebesgue density of BM killed outside (0, r0).
    K = 40
    return sum(phi(t, x - y + 2 * k * r0) - phi(t, x + y + 2 * k * r0) for k in range(-K, K + 1))


def free(mu, t, x, y):
    q = phi(t, x - y) - phi(t, x + y)
    return exp(-mu * mu * t / 2) * q / (S(mu, x) * S(mu, y))


def killed(mu, r0, t, x, y):
    return exp(-mu * mu * t / 2) * bm_killed(t, x, y, r0) / (S(mu, x) * S(mu, y))


def survival(mu, r0, t, x):
    f = lambda y: exp(-mu * mu * t / 2) * bm_killed(t, x, y, r0) * S(mu, y) / S(mu, x)
    return quad(f, [0, x, r0])


def exit_density(mu, r0, t, x):
    return -diff(lambda s: survival(mu, r0, s, x), t)


def sup_density(mu, t, x, y):
    return diff(lambda r: survival(mu, r, t, x), y)


def mean_exit(mu, r0, x):
    # Scale density 1/S^2, speed density 2 S^2.
    inner = lambda z: quad(lambda y: 2 * S(mu, y) ** 2, [0, z])
    return quad(lambda z: inner(z) / S(mu, z) ** 2, [x, r0])


def lam(t, w):
    return nsum(lambda k: (w + 2 * k) * exp(-(w + 2 * k) ** 2 / (2 * t)), [-inf, inf]) / (sqrt(2 * pi) * t ** mpf(1.5))


def lemma(i, a, b, c):
    if i == 1:
        return quad(lambda w: w / (1 + w) * exp(w / 2), [a, b])
    if i == 2:
        return quad(lambda v: ((a + b + v) / (b + v)) ** mpf(1.5) * exp(-c * v), [0, inf])
    if i == 3:
        return quad(lambda w: (w + a) ** mpf(2.5) * exp(-w) / ((w + b) ** 2 * (w + c)), [0, inf])
    return quad(lambda u: 2 * (u * u + b) ** mpf(1.5) * exp(-u * u) / (u * u + c), [0, sqrt(a)])


def row(*vals):
    return "{" + ", ".join(mp.nstr(mpf(v), 17) for v in vals) + "},"


def section_free():
    print("// free: mu, t, x, y, value")
    for p in [("1", "1", "1", "1"), ("0.5", "0.2", "0.3", "0.9"), ("4", "0.05", "1", "1.2"), ("0", "1", "0.5", "2")]:
        p = [mpf(v) for v in p]
        print(row(*p, free(*p)))


def section_killed():
    K = [("1", "1", "1", "0.5", "0.5"), ("1", "1", "0.05", "0.3", "0.4"), ("0.5", "2", "0.3", "1", "1.5"),
         ("4", "0.5", "0.01", "0.1", "0.2"), ("0", "1", "0.2", "0.3", "0.6"), ("2", "1", "3", "0.7", "0.2")]
    print("// killed: mu, r0, t, x, y, value")
    for p in K:
        p = [mpf(v) for v in p]
        print(row(*p, killed(*p)))


def section_survival():
    print("// survival and exit density: mu, r0, t, x, survival, density")
    for p in [("1", "1", "0.5", "0.5"), ("1", "1", "0.05", "0.3"), ("0.5", "2", "0.3", "1"),
              ("4", "0.5", "0.01", "0.1"), ("0", "1", "0.2", "0.3"), ("2", "1", "3", "0.7")]:
        p = [mpf(v) for v in p]
        print(row(*p, survival(*p), exit_density(*p)))


def section_mean():
    print("// mean exit: mu, r0, x, value")
    for p in [("1", "1", "0.5"), ("0.5", "2", "1"), ("4", "0.5", "0.1"), ("0", "1", "0.3"), ("0.05", "1", "0.5")]:
        p = [mpf(v) for v in p]
        print(row(*p, mean_exit(*p)))


def section_sup():
    print("// sup density: mu, t, x, y, value")
    for p in [("1", "1", "0.5", "1"), ("0.5", "0.1", "0.9", "1"), ("4", "0.01", "0.45", "0.5"), ("0", "1", "0.1", "2")]:
        p = [mpf(v) for v in p]
        print(row(*p, sup_density(*p)))


def section_lambda():
    print("// lambda: t, w, value")
    for p in [("0.1", "0.3"), ("1", "0.5"), ("4", "0.9"), ("0.01", "0.05")]:
        p = [mpf(v) for v in p]
        print(row(*p, lam(*p)))


def section_lemmas():
    print("// lemmas: id, a, b, c, integral")
    for p in [(1, "0.1", "0.5", "0"), (1, "1", "10", "0"), (2, "5", "2", "1"), (2, "10", "0.1", "0.5"),
              (3, "1.5", "0.5", "1"), (3, "3", "2", "2.5"), (4, "3", "2", "1"), (4, "0.8", "0.5", "0.1")]:
        i = p[0]
        a, b, c = (mpf(v) for v in p[1:])
        print(row(i, a, b, c, lemma(i, a, b, c)))


SECTIONS = {"free": section_free, "killed": section_killed, "survival": section_survival, "mean": section_mean, "sup": section_sup, "lambda": section_lambda, "lemmas": section_lemmas}

if __name__ == "__main__":
    for name in sys.argv[1:] or SECTIONS:
        SECTIONS[name]()
