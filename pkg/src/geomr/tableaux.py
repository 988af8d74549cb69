"""Rectangular semistandard tableaux and their combinatorics.

The objects here are the combinatorial shadow of the geometric layer:
triangular patterns of the Gelfand-Tsetlin kind, k-row rectangles encoded by
the free corner of their pattern, the Schensted product, the combinatorial
R-matrix (as an exhaustive-search oracle and as an explicit one-row rule),
coenergy, and the classical crystal operators.

Conventions, fixed once:

* A pattern is a triangle ``A[i][j]`` (1 <= i <= j <= n) stored by levels;
  level j is the shape of the tableau restricted to entries <= j, padded
  with zeros to length j.  Row i of the tableau has ``A[i][j] - A[i][j-1]``
  copies of the letter j.
* A k-row rectangle with L columns over the alphabet [1, n] is determined by
  the pattern entries at positions (i, j) with 1 <= i <= k and
  i <= j <= i+n-k-1 (everything else is forced to L or 0); those free
  entries form the ``B`` array of :class:`KRectangle`, stored as k rows of
  n-k entries each.
* Reading word: columns right to left, each column top to bottom.  The
  tensor order is the reversed reading order, so an i cancels a later i+1;
  this pairing is validated against the tropical oracle in the acceptance
  suite.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Optional

from .errors import DegenerateInput, MalformedInput

# === basic types ============================================================


@dataclass(frozen=True)
class Tableau:
    """A semistandard Young tableau with entries in [1, n]."""

    n: int
    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if self.n < 1:
            raise MalformedInput("alphabet size must be >= 1")
        lengths = [len(r) for r in rows]
        if any(l == 0 for l in lengths):
            raise MalformedInput("empty tableau row")
        if any(lengths[i] < lengths[i + 1] for i in range(len(lengths) - 1)):
            raise MalformedInput("row lengths must weakly decrease")
        for r in rows:
            if any(x < 1 or x > self.n for x in r):
                raise MalformedInput("entry out of alphabet range")
            if any(r[j] > r[j + 1] for j in range(len(r) - 1)):
                raise MalformedInput("rows must weakly increase")
        for i in range(len(rows) - 1):
            for j in range(len(rows[i + 1])):
                if rows[i][j] >= rows[i + 1][j]:
                    raise MalformedInput("columns must strictly increase")

    @property
    def shape(self) -> tuple:
        return tuple(len(r) for r in self.rows)

    @property
    def num_boxes(self) -> int:
        return sum(len(r) for r in self.rows)

    def weight(self) -> tuple:
        w = [0] * self.n
        for r in self.rows:
            for x in r:
                w[x - 1] += 1
        return tuple(w)

    def is_rectangle(self) -> bool:
        return len(set(self.shape)) <= 1

    def to_json(self) -> dict:
        return {"n": self.n, "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_json(cls, obj) -> "Tableau":
        try:
            return cls(int(obj["n"]), tuple(tuple(r) for r in obj["rows"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"bad tableau object: {exc}") from exc


@dataclass(frozen=True)
class GTPattern:
    """Triangular pattern stored by levels; level j has j weakly decreasing
    nonnegative entries, and consecutive levels interlace."""

    n: int
    levels: tuple

    def __post_init__(self):
        levels = tuple(tuple(int(x) for x in lv) for lv in self.levels)
        object.__setattr__(self, "levels", levels)
        if len(levels) != self.n:
            raise MalformedInput("pattern must have n levels")
        for j, lv in enumerate(levels, start=1):
            if len(lv) != j:
                raise MalformedInput(f"level {j} must have {j} entries")
            if any(lv[i] < lv[i + 1] for i in range(j - 1)):
                raise MalformedInput("levels must weakly decrease")
            if lv[-1] < 0:
                raise MalformedInput("negative pattern entry")
        for j in range(self.n - 1):
            upper, lower = levels[j + 1], levels[j]
            for i in range(j + 1):
                if not (upper[i] >= lower[i] >= upper[i + 1]):
                    raise MalformedInput("levels must interlace")

    def entry(self, i: int, j: int) -> int:
        """A[i][j] (1-indexed, 1 <= i <= j <= n)."""
        return self.levels[j - 1][i - 1]


@dataclass(frozen=True)
class KRectangle:
    """A k-row rectangle with L columns over [1, n], by its free pattern
    corner: B[i-1][j-i] = A[i][j] for 1 <= i <= k, i <= j <= i+n-k-1."""

    n: int
    k: int
    B: tuple
    L: int

    def __post_init__(self):
        B = tuple(tuple(int(x) for x in r) for r in self.B)
        object.__setattr__(self, "B", B)
        n, k, L = self.n, self.k, self.L
        if not 1 <= k <= n - 1:
            raise MalformedInput("need 1 <= k <= n-1")
        if L < 0:
            raise MalformedInput("negative column count")
        if len(B) != k or any(len(r) != n - k for r in B):
            raise MalformedInput(f"B must be {k} rows of {n - k} entries")
        for r in B:
            if any(x < 0 or x > L for x in r):
                raise MalformedInput("corner entry out of [0, L]")
            if any(r[c] > r[c + 1] for c in range(len(r) - 1)):
                raise MalformedInput("corner rows must weakly increase")
        for i in range(k - 1):
            for c in range(n - k):
                if B[i][c] < B[i + 1][c]:
                    raise MalformedInput("corner columns must weakly decrease")

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "B": [list(r) for r in self.B],
                "L": self.L}

    @classmethod
    def from_json(cls, obj) -> "KRectangle":
        try:
            return cls(int(obj["n"]), int(obj["k"]),
                       tuple(tuple(r) for r in obj["B"]), int(obj["L"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"bad rectangle object: {exc}") from exc

    def completed_entry(self, i: int, j: int) -> int:
        """Entry (i, j) of the completed pattern, 1 <= i <= j <= n."""
        if i > self.k:
            return 0
        if j > i + self.n - self.k - 1:
            return self.L
        return self.B[i - 1][j - i]

    def content(self) -> tuple:
        w = [0] * self.n
        for i in range(1, self.k + 1):
            prev = 0
            for j in range(i, self.n + 1):
                cur = self.completed_entry(i, j)
                w[j - 1] += cur - prev
                prev = cur
        return tuple(w)


# === pattern <-> tableau bijection ==========================================


def _tableau_to_pattern(t: Tableau) -> GTPattern:
    n = t.n
    levels = []
    for j in range(1, n + 1):
        lv = []
        for i in range(1, j + 1):
            row = t.rows[i - 1] if i - 1 < len(t.rows) else ()
            lv.append(sum(1 for x in row if x <= j))
        levels.append(tuple(lv))
    return GTPattern(n, tuple(levels))


def _pattern_to_tableau(p: GTPattern) -> Tableau:
    rows = []
    for i in range(1, p.n + 1):
        row = []
        prev = 0
        for j in range(i, p.n + 1):
            cur = p.entry(i, j)
            row.extend([j] * (cur - prev))
            prev = cur
        if row:
            rows.append(tuple(row))
    return Tableau(p.n, tuple(rows))


def gt_bijection(x):
    """Tableau <-> pattern, whichever direction applies."""
    if isinstance(x, Tableau):
        return _tableau_to_pattern(x)
    if isinstance(x, GTPattern):
        return _pattern_to_tableau(x)
    raise MalformedInput("gt_bijection wants a Tableau or a GTPattern")


def rectangle_tableau(rect: KRectangle) -> Tableau:
    """The tableau of a k-row rectangle."""
    n = rect.n
    levels = tuple(tuple(rect.completed_entry(i, j) for i in range(1, j + 1))
                   for j in range(1, n + 1))
    return _pattern_to_tableau(GTPattern(n, levels))


def rectangle_from_tableau(t: Tableau) -> KRectangle:
    """Inverse of :func:`rectangle_tableau`.

    Any k x L semistandard tableau over [1, n] qualifies (column strictness
    forces row i to stay within [i, i+n-k]).
    """
    if not t.rows or not t.is_rectangle():
        raise MalformedInput("not a rectangular tableau")
    k, L = len(t.rows), len(t.rows[0])
    if k > t.n - 1:
        raise MalformedInput("need at most n-1 rows")
    p = _tableau_to_pattern(t)
    B = tuple(tuple(p.entry(i, j) for j in range(i, i + t.n - k))
              for i in range(1, k + 1))
    return KRectangle(t.n, k, B, L)


# === Schensted product ======================================================


def _row_insert(rows, x):
    for r in rows:
        # leftmost entry strictly greater than x gets bumped
        for j, y in enumerate(r):
            if y > x:
                r[j], x = x, y
                break
        else:
            r.append(x)
            return
    rows.append([x])


def schensted_product(t: Tableau, u: Tableau) -> Tableau:
    """Insert u's reading word (bottom row first, each left to right)."""
    if t.n != u.n:
        raise MalformedInput("alphabet mismatch")
    rows = [list(r) for r in t.rows]
    for r in reversed(u.rows):
        for x in r:
            _row_insert(rows, x)
    return Tableau(t.n, tuple(tuple(r) for r in rows))


# === enumeration and the R oracle ===========================================


@functools.lru_cache(maxsize=None)
def enumerate_rect(n: int, k: int, L: int) -> tuple:
    """All k-row rectangles with L columns over [1, n]."""
    width = n - k
    out = []
    cur = [[0] * width for _ in range(k)]

    def fill(i, c):
        if i == k:
            out.append(KRectangle(n, k, tuple(tuple(r) for r in cur), L))
            return
        ni, nc = (i, c + 1) if c + 1 < width else (i + 1, 0)
        lo = cur[i][c - 1] if c else 0
        hi = cur[i - 1][c] if i else L
        for v in range(lo, hi + 1):
            cur[i][c] = v
            fill(ni, nc)

    fill(0, 0)
    return tuple(out)


@functools.lru_cache(maxsize=None)
def _rect_by_content(n: int, k: int, L: int) -> dict:
    index = {}
    for rect in enumerate_rect(n, k, L):
        index.setdefault(rect.content(), []).append(rect)
    return index


def comb_R_oracle(t: Tableau, u: Tableau) -> tuple:
    """The unique pair (u', t') of rectangles, shaped like (u, t), with
    u' * t' = t * u.  Found by exhaustive search; uniqueness is asserted."""
    rt, ru = rectangle_from_tableau(t), rectangle_from_tableau(u)
    n = t.n
    target = schensted_product(t, u)
    total = target.weight()
    matches = []
    for uc, ulist in _rect_by_content(n, ru.k, ru.L).items():
        rem = tuple(a - b for a, b in zip(total, uc))
        if any(x < 0 for x in rem):
            continue
        tlist = _rect_by_content(n, rt.k, rt.L).get(rem, ())
        for urect in ulist:
            up = rectangle_tableau(urect)
            for trect in tlist:
                tp = rectangle_tableau(trect)
                if schensted_product(up, tp) == target:
                    matches.append((up, tp))
    if len(matches) != 1:
        raise DegenerateInput(
            f"expected a unique image pair, found {len(matches)}")
    return matches[0]


def comb_coenergy(t: Tableau, u: Tableau) -> int:
    """Boxes of t * u below the first max(k1, k2) rows."""
    cut = max(len(t.rows), len(u.rows))
    prod = schensted_product(t, u)
    return sum(len(r) for r in prod.rows[cut:])


# === classical crystal operators ============================================


def _reading_positions(rows):
    width = max((len(r) for r in rows), default=0)
    out = []
    for c in range(width - 1, -1, -1):
        for r in range(len(rows)):
            if c < len(rows[r]):
                out.append((r, c))
    return out


def _signature(rows, i):
    """Unmatched letter positions for the operator index i (1 <= i < n).

    '+' is a letter i, '-' is a letter i+1.  The tensor order is the
    *reversed* reading order, so in reading order a '+' is cancelled by the
    nearest later '-'.  Returns (unmatched_minus_positions,
    unmatched_plus_positions), both in reading order.
    """
    minus, plus = [], []
    for pos in _reading_positions(rows):
        x = rows[pos[0]][pos[1]]
        if x == i:
            plus.append(pos)
        elif x == i + 1:
            if plus:
                plus.pop()
            else:
                minus.append(pos)
    return minus, plus


def crystal_classical(t: Tableau, i: int, op: str):
    """Classical operators and statistics on a tableau.

    op is one of 'e', 'f' (returning a Tableau or None), 'eps', 'phi'
    (ints), or 'weight' (tuple).  Index range: 1 <= i <= n-1.
    """
    if op == "weight":
        return t.weight()
    if not 1 <= i <= t.n - 1:
        raise MalformedInput("classical operator index out of range")
    minus, plus = _signature(t.rows, i)
    if op == "eps":
        return len(minus)
    if op == "phi":
        return len(plus)
    if op == "e":
        if not minus:
            return None
        r, c = minus[-1]
        delta = -1
    elif op == "f":
        if not plus:
            return None
        r, c = plus[0]
        delta = 1
    else:
        raise MalformedInput(f"unknown crystal op {op!r}")
    rows = [list(x) for x in t.rows]
    rows[r][c] += delta
    return Tableau(t.n, tuple(tuple(x) for x in rows))


def tensor_crystal(pair: tuple, i: int, op: str):
    """Crystal structure on an ordered pair of tableaux.

    The first factor wins ties the way the reading word does: e acts on the
    left factor iff eps(left) > phi(right), f iff eps(left) >= phi(right).
    """
    a, b = pair
    if op == "weight":
        return tuple(x + y for x, y in zip(a.weight(), b.weight()))
    ea = crystal_classical(a, i, "eps")
    pa = crystal_classical(a, i, "phi")
    eb = crystal_classical(b, i, "eps")
    pb = crystal_classical(b, i, "phi")
    if op == "eps":
        return eb + max(0, ea - pb)
    if op == "phi":
        return pa + max(0, pb - ea)
    if op == "e":
        if ea > pb:
            img = crystal_classical(a, i, "e")
            return None if img is None else (img, b)
        img = crystal_classical(b, i, "e")
        return None if img is None else (a, img)
    if op == "f":
        if ea >= pb:
            img = crystal_classical(a, i, "f")
            return None if img is None else (img, b)
        img = crystal_classical(b, i, "f")
        return None if img is None else (a, img)
    raise MalformedInput(f"unknown crystal op {op!r}")


# === promotion and the affine operator ======================================


def promotion(t: Tableau) -> Tableau:
    """Promotion on a rectangular tableau (tropical route)."""
    from . import rmatrix

    rect = rectangle_from_tableau(t)
    return rectangle_tableau(rmatrix.trop_promotion(rect))


def promotion_inverse(t: Tableau) -> Tableau:
    out = t
    for _ in range(t.n - 1):
        out = promotion(out)
    return out


def e0(t: Tableau) -> Optional[Tableau]:
    """Affine raising operator on a rectangular tableau (tropical route);
    None when it is not defined."""
    from . import rmatrix

    rect = rectangle_from_tableau(t)
    img = rmatrix.trop_e0(rect)
    return None if img is None else rectangle_tableau(img)


# === the explicit one-row R ================================================


def one_row_comb_R(a, b) -> tuple:
    """Combinatorial R on a pair of one-row rectangles, by content.

    a and b are the content vectors (length n) of the first and second
    factor.  Returns (b', a'), the contents of the image pair.
    """
    n = len(a)
    if len(b) != n:
        raise MalformedInput("content length mismatch")

    def kappa(j):  # j in 0..n-1
        best = None
        for r in range(n):
            s = sum(b[(j + m) % n] for m in range(r))
            s += sum(a[(j + m) % n] for m in range(r + 1, n))
            if best is None or s < best:
                best = s
        return best

    kap = [kappa(j) for j in range(n)]
    bp = tuple(b[j] + kap[(j + 1) % n] - kap[j] for j in range(n))
    ap = tuple(a[j] + kap[j] - kap[(j + 1) % n] for j in range(n))
    return bp, ap
