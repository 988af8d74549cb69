"""Seeded random generators shared by the property tests and the CLI.

Positive carrier points are produced as coordinatizations of rectangles
with positive rational corner entries; every cyclic Pluecker coordinate of
such a point is strictly positive (the coordinates are subtraction-free in
the corner data), which is the genericity the identity checks need.
"""

from __future__ import annotations

import random

from .exactfield import Rational
from .grassmann import theta


def make_rng(seed) -> random.Random:
    return random.Random(seed)


def rand_rational(rng, lo: int = 1, hi: int = 20) -> Rational:
    return Rational(rng.randint(lo, hi), rng.randint(lo, hi))


def rand_corner_rows(rng, n: int, k: int) -> list:
    """Corner data of a positive rational rectangle coordinatizing X_k."""
    return [[rand_rational(rng) for _ in range(k)] for _ in range(n - k)]


def rand_xpoint(rng, n: int, k: int, t=None):
    """A positive point of X_k (all cyclic Pluecker coordinates > 0)."""
    if t is None:
        t = rand_rational(rng)
    return theta(n, rand_corner_rows(rng, n, k), t)


def rand_distinct_ts(rng, count: int) -> list:
    out = []
    seen = set()
    while len(out) < count:
        t = rand_rational(rng)
        if t not in seen:
            seen.add(t)
            out.append(t)
    return out


def rand_xpoints(rng, n: int, ks) -> list:
    """Positive points with pairwise distinct loop parameters."""
    ts = rand_distinct_ts(rng, len(tuple(ks)))
    return [rand_xpoint(rng, n, k, t) for k, t in zip(ks, ts)]


def rand_rectangle_rows(rng, n: int, k: int, L: int) -> tuple:
    """Uniform-ish random valid k-rectangle corner array for alphabet [n]."""
    width = n - k
    rows = []
    for i in range(k):
        row = []
        for c in range(width):
            lo = row[c - 1] if c else 0
            hi = rows[i - 1][c] if i else L
            row.append(rng.randint(lo, hi))
        rows.append(tuple(row))
    return tuple(rows)
