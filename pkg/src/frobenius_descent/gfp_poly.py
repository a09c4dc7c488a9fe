"""Dense univariate polynomials over a prime field F_p.

A polynomial is a list of ints in ``range(p)``, lowest degree first, with no
trailing zeros (the zero polynomial is ``[]``).
"""
from __future__ import annotations

from itertools import product

from sympy import primefactors


def trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def add(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return trim(out)


def sub(a, b, p):
    return add(a, [(-c) % p for c in b], p)


def mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim([c % p for c in out])


def divmod_(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    inv_lead = pow(b[-1], p - 2, p)
    db = len(b) - 1
    quot = [0] * max(len(a) - db, 0)
    while len(a) - 1 >= db and a:
        shift = len(a) - 1 - db
        c = a[-1] * inv_lead % p
        quot[shift] = c
        for i, y in enumerate(b):
            a[shift + i] = (a[shift + i] - c * y) % p
        trim(a)
    return trim(quot), a


def mod(a, b, p):
    return divmod_(a, b, p)[1]


def gcd(a, b, p):
    a, b = trim(list(a)), trim(list(b))
    while b:
        a, b = b, mod(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def powmod(a, e, m, p):
    result = [1]
    base = mod(a, m, p)
    while e:
        if e & 1:
            result = mod(mul(result, base, p), m, p)
        base = mod(mul(base, base, p), m, p)
        e >>= 1
    return result


def is_irreducible(f, p) -> bool:
    """Rabin's test for a monic polynomial of degree >= 1."""
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    if powmod(x, p ** n, f, p) != mod(x, f, p):
        return False
    for r in primefactors(n):
        h = sub(powmod(x, p ** (n // r), f, p), x, p)
        if gcd(h, f, p) != [1]:
            return False
    return True


def monic_candidates(n: int, p: int):
    """Monic degree-n polynomials in the fixed total order used for modulus search.

    Candidates are ordered by the integer ``sum(c_i * p**i)`` of their lower
    coefficients, so ``x^n + 1`` precedes ``x^n + x + 1`` and so on.
    """
    for code in range(p ** n):
        coeffs = []
        for _ in range(n):
            code, c = divmod(code, p)
            coeffs.append(c)
        yield coeffs + [1]


def least_irreducible(n: int, p: int) -> list[int]:
    for f in monic_candidates(n, p):
        if f[0] == 0 and n > 1:
            continue
        if is_irreducible(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def all_irreducible_brute(n: int, p: int) -> list[list[int]]:
    """Irreducible monic polynomials of degree n by exhaustive trial division."""
    lower = [list(c) + [1] for d in range(1, n // 2 + 1)
             for c in product(range(p), repeat=d)]
    out = []
    for f in monic_candidates(n, p):
        if all(mod(f, g, p) for g in lower):
            out.append(f)
    return out
