"""Matrices over Laurent polynomials in the loop variable.

A LoopMatrix is an n x n array of Laurent polynomials in a formal variable
``lam``.  Folding identifies it with an infinite periodic scalar matrix via

    unfolded[i + n*r][j + n*s]  =  coefficient of lam**(r-s) in entry (i, j),

for 1 <= i, j <= n; :func:`unfold_entry` and :func:`fold` move between the
two pictures.  The distinguished elements here are:

* ``g_of``: the fundamental matrix of a point (or product of points) of the
  Grassmannian crystal; its entries are ratios of cyclic-interval Pluecker
  coordinates times 1, t, or lam, and products of points multiply their
  matrices.
* ``xhat``: the one-parameter unipotent generators (index 0 carries
  lam**-1), acting on shifted-unipotent matrices by conjugation-like
  transformations (:func:`uaction_Bminus`) and on Grassmannian points by
  evaluation (:func:`uaction_X`).
* shift/flip/adjugate symmetries (:func:`matrix_symmetry`) and minors
  (:func:`minor_delta`), the raw material of the structural laws.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _linalg
from .errors import DegenerateInput, MalformedInput
from .exactfield import LaurentPoly, _exact_div
from .grassmann import interval, plucker

# Laurent polynomials in the loop variable share the generic container.
LoopPoly = LaurentPoly


def _div(a, b):
    """Exact scalar division (plain ints must not fall into float /)."""
    if isinstance(a, int) and isinstance(b, int):
        return _exact_div(a, b)
    return a / b


def _as_loop(x) -> LoopPoly:
    if isinstance(x, LoopPoly):
        return x
    return LoopPoly.const(x) if x else LoopPoly.zero()


@dataclass(frozen=True)
class LoopMatrix:
    """An n x n matrix of Laurent polynomials in the loop variable."""

    n: int
    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(_as_loop(x) for x in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) != self.n or any(len(r) != self.n for r in rows):
            raise MalformedInput(f"matrix must be {self.n} x {self.n}")

    def entry(self, i: int, j: int) -> LoopPoly:
        """1-indexed folded entry."""
        return self.rows[i - 1][j - 1]

    def __mul__(self, other: "LoopMatrix") -> "LoopMatrix":
        if not isinstance(other, LoopMatrix):
            return NotImplemented
        if self.n != other.n:
            raise MalformedInput("size mismatch")
        return LoopMatrix(self.n, _linalg.mat_mul(self.rows, other.rows))

    def eval_lambda(self, z) -> tuple:
        """Scalar matrix at lam = z (z must be invertible if any entry has a
        negative power)."""
        return tuple(tuple(p.eval_at(z) for p in row) for row in self.rows)

    def lam_degree_window(self) -> tuple:
        """(lowest, highest) lam power appearing anywhere; (0, 0) if zero."""
        lo, hi = 0, 0
        first = True
        for row in self.rows:
            for p in row:
                if p.is_zero:
                    continue
                if first:
                    lo, hi = p.low, p.degree
                    first = False
                else:
                    lo, hi = min(lo, p.low), max(hi, p.degree)
        return lo, hi

    # --- membership predicates ---

    def is_in_Bminus(self) -> bool:
        """Ordinary-polynomial entries, invertible constant term on the
        diagonal, vanishing constant term above it."""
        for i in range(1, self.n + 1):
            for j in range(1, self.n + 1):
                p = self.entry(i, j)
                if not p.is_zero and p.low < 0:
                    return False
                c = p.coeff(0)
                if i == j and not c:
                    return False
                if j > i and c:
                    return False
        return True

    def is_m_shifted_unipotent(self, m: int) -> bool:
        """Unfolded entries vanish below diagonal shift m and equal 1 on it."""
        for i in range(1, self.n + 1):
            for j in range(1, self.n + 1):
                p = self.entry(i, j)
                if p.is_zero:
                    d0 = i - j + self.n * 0
                    if d0 == m:
                        return False
                    continue
                for power in range(p.low, p.degree + 1):
                    c = p.coeff(power)
                    d = i - j + self.n * power
                    if d > m and c:
                        return False
                    if d == m and c != 1:
                        return False
        return True

    def shift_degree(self) -> int:
        """The largest unfolded diagonal shift carrying a nonzero entry."""
        best = None
        for i in range(1, self.n + 1):
            for j in range(1, self.n + 1):
                p = self.entry(i, j)
                if p.is_zero:
                    continue
                for power in range(p.low, p.degree + 1):
                    if p.coeff(power):
                        d = i - j + self.n * power
                        best = d if best is None else max(best, d)
        if best is None:
            raise DegenerateInput("zero matrix has no shift degree")
        return best


def identity_matrix(n: int) -> LoopMatrix:
    return LoopMatrix(n, _linalg.identity(n))


# === folding ================================================================


@dataclass(frozen=True)
class UnfoldedEntry:
    """One scalar entry of the unfolded periodic matrix."""

    i: int
    j: int
    value: object


def _decompose(i: int, n: int) -> tuple:
    """i = i0 + n*r with i0 in [1, n]."""
    r, rem = divmod(i - 1, n)
    return rem + 1, r


def unfold_entry(A: LoopMatrix, i: int, j: int):
    """Entry (i, j) of the unfolded matrix, for any integers i, j."""
    i0, r = _decompose(i, A.n)
    j0, s = _decompose(j, A.n)
    return A.entry(i0, j0).coeff(r - s)


def fold(n: int, entries) -> LoopMatrix:
    """Rebuild a LoopMatrix from a collection of UnfoldedEntry records.

    Records that land on the same folded coefficient must agree; positions
    never mentioned are zero.
    """
    coeffs = {}
    for e in entries:
        i0, r = _decompose(e.i, n)
        j0, s = _decompose(e.j, n)
        key = (i0, j0, r - s)
        if key in coeffs and coeffs[key] != e.value:
            raise MalformedInput(
                f"inconsistent unfolded data at {(e.i, e.j)}")
        coeffs[key] = e.value
    rows = []
    for i0 in range(1, n + 1):
        row = []
        for j0 in range(1, n + 1):
            powers = {p: v for (a, b, p), v in coeffs.items()
                      if (a, b) == (i0, j0)}
            if powers:
                lo = min(powers)
                hi = max(powers)
                row.append(LoopPoly(lo, [powers.get(p, 0)
                                         for p in range(lo, hi + 1)]))
            else:
                row.append(LoopPoly.zero())
        rows.append(tuple(row))
    return LoopMatrix(n, tuple(rows))


# === the fundamental matrix =================================================


def g_of(x) -> LoopMatrix:
    """The fundamental matrix of a point of X_k, or the product of the
    factors' matrices for a product of points.

    Entry (i, j) is P_{[j-k+1, j-1] + {i}} / P_{[j-k, j-1]} times 1 when
    j <= k, times t when j > k and i >= j, times lam when j > k and i < j.
    Undefined (DegenerateInput) when a cyclic-interval denominator vanishes.
    """
    from .geomcrystal import XPoint, XProduct

    if isinstance(x, XProduct):
        out = g_of(x.factors[0])
        for f in x.factors[1:]:
            out = out * g_of(f)
        return out
    if not isinstance(x, XPoint):
        raise MalformedInput("g_of wants an XPoint or XProduct")
    gr, t = x.point, x.t
    n, k = gr.n, gr.k
    rows = [[None] * n for _ in range(n)]
    for j in range(1, n + 1):
        den = plucker(gr, interval(j - k, j - 1))
        if not den:
            raise DegenerateInput(
                f"vanishing cyclic minor at columns [{j - k}, {j - 1}]")
        base = interval(j - k + 1, j - 1)
        for i in range(1, n + 1):
            num = plucker(gr, base + (i,))
            q = _div(num, den)
            if j <= k:
                rows[i - 1][j - 1] = LoopPoly.const(q) if q else LoopPoly.zero()
            elif i >= j:
                tq = t * q
                rows[i - 1][j - 1] = LoopPoly.const(tq) if tq else LoopPoly.zero()
            else:
                rows[i - 1][j - 1] = (LoopPoly.variable(1, q)
                                      if q else LoopPoly.zero())
    return LoopMatrix(n, tuple(tuple(r) for r in rows))


# === linear characters ======================================================


def chi(A: LoopMatrix, m: int = None):
    """Sum of the unfolded entries one step below the shift diagonal.

    For an m-shifted unipotent matrix this is the standard additive
    character; m defaults to the detected shift degree.
    """
    if m is None:
        m = A.shift_degree()
    total = 0
    for j in range(1, A.n + 1):
        total = total + unfold_entry(A, j + m - 1, j)
    return total


def decoration_f(x):
    """The decoration of a point (sum over factors on products).

    Equal to chi of the fundamental matrix; computed here directly from
    Pluecker coordinates.
    """
    from .geomcrystal import XPoint, XProduct

    if isinstance(x, XProduct):
        total = 0
        for f in x.factors:
            total = total + decoration_f(f)
        return total
    if not isinstance(x, XPoint):
        raise MalformedInput("decoration wants an XPoint or XProduct")
    gr, t = x.point, x.t
    n, k = gr.n, gr.k
    total = 0
    for i in range(1, n + 1):
        if i == k:
            continue
        num = plucker(gr, (i - k,) + interval(i - k + 2, i))
        den = plucker(gr, interval(i - k + 1, i))
        if not den:
            raise DegenerateInput("vanishing cyclic minor in decoration")
        total = total + _div(num, den)
    num = plucker(gr, interval(2, k) + (n,))
    den = plucker(gr, interval(1, k))
    if not den:
        raise DegenerateInput("vanishing cyclic minor in decoration")
    return total + t * _div(num, den)


# === minors and symmetries ==================================================


def minor_delta(A: LoopMatrix, I, J) -> LoopPoly:
    """Minor on rows I and columns J (subsets of [1, n], ascending)."""
    I = sorted(I)
    J = sorted(J)
    if len(I) != len(J):
        raise MalformedInput("minor needs |I| = |J|")
    if any(not 1 <= x <= A.n for x in I + J):
        raise MalformedInput("minor indices out of range")
    out = _linalg.minor(A.rows, [i - 1 for i in I], [j - 1 for j in J])
    return _as_loop(out)


def negate_loop_variable(A: LoopMatrix) -> LoopMatrix:
    """Substitute -lam for lam in every entry."""
    return LoopMatrix(A.n, tuple(
        tuple(LoopPoly(p.offset,
                       [c if (p.offset + idx) % 2 == 0 else -c
                        for idx, c in enumerate(p.coeffs)])
              for p in row)
        for row in A.rows))


def matrix_symmetry(A: LoopMatrix, which: str) -> LoopMatrix:
    """One of the three matrix symmetries: 'sh', 'fl', or 'inv'.

    * sh: shift both unfolded indices by one (wrapping entries pick up
      lam**(+-1)).
    * fl: transpose across the antidiagonal.
    * inv: the unsigned-cofactor inverse, entry (i, j) the minor of A
      (with lam negated when n is odd) on rows except j, columns except i;
      an anti-automorphism, equal to det * inverse up to checkerboard signs.
    """
    n = A.n
    if which == "sh":
        rows = [[None] * n for _ in range(n)]
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i > 1 and j > 1:
                    rows[i - 1][j - 1] = A.entry(i - 1, j - 1)
                elif i == 1 and j == 1:
                    rows[0][0] = A.entry(n, n)
                elif i == 1:
                    rows[0][j - 1] = A.entry(n, j - 1).shift(1)
                else:
                    rows[i - 1][0] = A.entry(i - 1, n).shift(-1)
        return LoopMatrix(n, tuple(tuple(r) for r in rows))
    if which == "fl":
        return LoopMatrix(n, tuple(
            tuple(A.entry(n - j + 1, n - i + 1) for j in range(1, n + 1))
            for i in range(1, n + 1)))
    if which == "inv":
        neg = negate_loop_variable(A) if n % 2 else A
        full = list(range(1, n + 1))
        rows = []
        for i in range(1, n + 1):
            row = []
            for j in range(1, n + 1):
                row.append(minor_delta(neg, [x for x in full if x != j],
                                       [x for x in full if x != i]))
            rows.append(tuple(row))
        return LoopMatrix(n, tuple(rows))
    raise MalformedInput(f"unknown symmetry {which!r}")


# === sign structure of minors ===============================================


def zero_rows(n: int, k: int, cols) -> frozenset:
    """Rows of the fundamental matrix that vanish identically in every
    listed column.

    Column j of g carries zeroes exactly in rows j-k+1, ..., j-1 (mod n);
    an empty column list has no zero rows.
    """
    cols = [((j - 1) % n) + 1 for j in cols]
    if not cols:
        return frozenset()
    return frozenset(
        i for i in range(1, n + 1)
        if all((j - i) % n in range(1, k) for j in cols))


def minor_support_condition(n: int, k: int, r: int, a: int, b: int,
                            rows) -> bool:
    """Predict whether the fundamental matrix's minor on the given rows and
    columns [1, a] + [a+b+1, r+b] is nonzero.

    The minor survives exactly when the rows avoid the common zero rows of
    both column blocks, meet the zero rows of the first block in at most
    r - a positions, and meet those of the second block in at most a.
    """
    if not (0 <= a <= r <= k and 0 <= b <= n - r):
        raise MalformedInput("column-shape parameters out of range")
    first = interval(1, a)
    second = interval(a + b + 1, r + b)
    rows = frozenset(rows)
    z1 = zero_rows(n, k, first)
    z2 = zero_rows(n, k, second)
    zboth = zero_rows(n, k, first + second)
    return (not rows & zboth
            and len(rows & z1) <= r - a
            and len(rows & z2) <= a)


def twisted_nonneg(p: LoopPoly, r: int) -> bool:
    """Whether every lam-coefficient c_i of p satisfies
    (-1)**((r-1)*i) * c_i >= 0."""
    if p.is_zero:
        return True
    for power in range(p.low, p.degree + 1):
        c = p.coeff(power)
        if not c:
            continue
        if ((r - 1) * power) % 2 == 0:
            if c < 0:
                return False
        elif c > 0:
            return False
    return True


# === unipotent generators and their actions =================================


def xhat(n: int, i: int, a) -> LoopMatrix:
    """Id + a E_{i,i+1} for 1 <= i <= n-1; index 0 puts a*lam**-1 at (n, 1)."""
    if not 0 <= i <= n - 1:
        raise MalformedInput("generator index out of range")
    rows = [[LoopPoly.const(1) if r == c else LoopPoly.zero()
             for c in range(n)] for r in range(n)]
    if i == 0:
        rows[n - 1][0] = LoopPoly.variable(-1, a)
    else:
        rows[i - 1][i] = LoopPoly.const(a)
    return LoopMatrix(n, tuple(tuple(r) for r in rows))


def uaction_Bminus(i: int, a, A: LoopMatrix) -> LoopMatrix:
    """Action of the i-th generator on a shifted-unipotent matrix:
    multiply by xhat(i, a) on the left and by xhat(i, tau) on the right,
    where tau is the unique value restoring the shape."""
    x11 = unfold_entry(A, i, i)
    x21 = unfold_entry(A, i + 1, i)
    x22 = unfold_entry(A, i + 1, i + 1)
    den = x11 + a * x21
    if not den:
        raise DegenerateInput("generator action undefined at this point")
    tau = _div(-(a * x22), den)
    return xhat(A.n, i, a) * A * xhat(A.n, i, tau)


def uaction_X(i: int, a, xp):
    """Action of the i-th generator on a point of X_k, by evaluating the
    generator at the distinguished loop value and multiplying."""
    from .geomcrystal import XPoint
    from .grassmann import GrassmannPoint

    gr, t = xp.point, xp.t
    n, k = gr.n, gr.k
    sign = 1 if (k - 1) % 2 == 0 else -1
    u = xhat(n, i, a).eval_lambda(sign * t)
    mat = _linalg.mat_mul(u, gr.mat)
    return XPoint(GrassmannPoint(n, k, mat), t)
