"""Independent oracles: rational elimination, determinantal divisors, brute force.

Nothing here touches the Smith normal form code under test.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd


def fraction_rank(rows: list[list[int]]) -> int:
    """Rank over Q by Gaussian elimination in Fractions."""
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return 0
    m, n = len(a), len(a[0])
    rank = 0
    for col in range(n):
        piv = next((i for i in range(rank, m) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(m):
            if i != rank and a[i][col] != 0:
                f = a[i][col] / a[rank][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


def fraction_det(rows: list[list[int]]) -> int:
    a = [[Fraction(x) for x in r] for r in rows]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for i in range(col + 1, n):
            f = a[i][col] / a[col][col]
            a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    assert det.denominator == 1
    return int(det)


def determinantal_factors(rows: list[list[int]], nrows: int) -> tuple[int, ...]:
    """Invariant factors of Z^nrows / column span via gcds of minors.

    Normalized like the engine: drop 1s, torsion ascending, then one 0 per free
    generator.  Only practical for tiny matrices.
    """
    ncols = len(rows[0]) if rows else 0
    divisors = [1]
    for k in range(1, min(nrows, ncols) + 1):
        g = 0
        for ri in itertools.combinations(range(nrows), k):
            for ci in itertools.combinations(range(ncols), k):
                g = gcd(g, fraction_det([[rows[i][j] for j in ci] for i in ri]))
        if g == 0:
            break
        divisors.append(g)
    r = len(divisors) - 1
    torsion = [divisors[i] // divisors[i - 1] for i in range(1, r + 1)]
    return tuple(t for t in torsion if t != 1) + (0,) * (nrows - r)


def convolve(x: list[int], y: list[int], d: int) -> list[int]:
    out = [0] * d
    for i, a in enumerate(x):
        for j, b in enumerate(y):
            out[(i + j) % d] += a * b
    return out


def element_order_profile(factors: tuple[int, ...]) -> dict[int, int]:
    """Number of elements of each order; determines a finite abelian group."""
    prof: dict[int, int] = {}
    for elem in itertools.product(*(range(m) for m in factors)):
        o = 1
        for x, m in zip(elem, factors):
            o = o * (m // gcd(m, x)) // gcd(o, m // gcd(m, x))
        prof[o] = prof.get(o, 0) + 1
    return prof


def brute_kernel(factors: tuple[int, ...], phi: tuple[int, ...], n: int) -> list[tuple[int, ...]]:
    return [
        e
        for e in itertools.product(*(range(m) for m in factors))
        if sum(c * x for c, x in zip(phi, e)) % n == 0
    ]


def kernel_profile(factors, phi, n) -> dict[int, int]:
    prof: dict[int, int] = {}
    elems = brute_kernel(tuple(factors), tuple(phi), n)
    for e in elems:
        o = 1
        while any((o * x) % m for x, m in zip(e, factors)):
            o += 1
        prof[o] = prof.get(o, 0) + 1
    return prof


def additive_order(x: int, m: int) -> int:
    """Smallest t >= 1 with t*x = 0 mod m, by counting."""
    t = 1
    while (t * x) % m:
        t += 1
    return t


def brute_pairs(n: int) -> list[tuple[int, int]]:
    return [(k, ell) for k in range(n) for ell in range(n) if (k * ell) % n == 0]


def orbit_count(d: int, a: int) -> int:
    """Orbits of i -> i + a on Z_d, by walking them."""
    seen = set()
    count = 0
    for i in range(d):
        if i in seen:
            continue
        count += 1
        j = i
        while j not in seen:
            seen.add(j)
            j = (j + a) % d
    return count


def character_orbit_count(factors: tuple[int, ...], exponents: tuple[int, ...]) -> int:
    """Orbits of translation by a character on the dual group, by walking them."""
    seen = set()
    count = 0
    for start in itertools.product(*(range(m) for m in factors)):
        if start in seen:
            continue
        count += 1
        x = start
        while x not in seen:
            seen.add(x)
            x = tuple((a + e) % m for a, e, m in zip(x, exponents, factors))
    return count
