"""Grassmannian points, Pluecker coordinates, and planar networks.

Index conventions, used everywhere downstream:

* Subsets of [1, n] are unordered; a Pluecker coordinate is the minor on the
  ascending row list.  Index sets may be handed in as arbitrary integers;
  they are reduced mod n into [1, n], and a coordinate whose reduced set has
  the wrong cardinality is zero by convention.
* ``interval(a, b)`` is the list of consecutive integers a..b (empty when
  a > b); combined with mod-n reduction this yields the cyclic intervals.
* A k-row rational rectangle over [1, n] is a k x (n-k) array of corner
  coordinates ``X[i][j]`` (row i holding X_{i,i} .. X_{i,i+n-k-1}) together
  with a scalar t; the ratio coordinates divide consecutive entries with 1
  on the left edge and t on the right.

The coordinatization map ``theta`` sends a k-row rational rectangle to a
point of Gr(n-k, n) x C^* by taking the first n-k columns of the unipotent
product ``phi_matrix``; ``theta_inverse`` recovers the rectangle from ratios
of the basic Pluecker coordinates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from types import SimpleNamespace

from . import _linalg
from ._linalg import _fdiv
from .errors import DegenerateInput, MalformedInput
from .exactfield import as_rational, rational_str

# === index-set utilities ====================================================


def reduce_indices(indices, n: int) -> tuple:
    """Sorted tuple of the distinct mod-n representatives in [1, n]."""
    return tuple(sorted({(i - 1) % n + 1 for i in indices}))


@dataclass(frozen=True)
class IndexSet:
    """A set of integer indices, reduced mod n lazily at use sites."""

    elements: tuple

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(int(x) for x in self.elements))

    def reduce(self, n: int) -> tuple:
        return reduce_indices(self.elements, n)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def interval(a: int, b: int) -> tuple:
    """Consecutive integers a..b; empty when a > b.  Not reduced."""
    return tuple(range(a, b + 1))


def w0_image(indices, n: int) -> tuple:
    return tuple(sorted(n + 1 - i for i in reduce_indices(indices, n)))


def complement(indices, n: int) -> tuple:
    inside = set(reduce_indices(indices, n))
    return tuple(i for i in range(1, n + 1) if i not in inside)


def star(indices, n: int) -> tuple:
    """w0 of the complement."""
    return w0_image(complement(indices, n), n)


def shift_indices(indices, c: int, n: int) -> tuple:
    return reduce_indices((i + c for i in indices), n)


def cyclic_interval_count(indices, n: int) -> int:
    """Number of maximal cyclic runs of the reduced set (0 for empty)."""
    inside = set(reduce_indices(indices, n))
    if not inside:
        return 0
    if len(inside) == n:
        return 1
    return sum(1 for i in inside if (i % n) + 1 not in inside)


def basic_subset(i: int, j: int, n: int, k: int) -> tuple:
    """The basic k-subset attached to rectangle position (i, j).

    For 1 <= i <= n-k+1 and i-1 <= j <= i+k-1 this is
    [i, j] + [n-k+j-i+2, n]; at j = i-1 it degenerates to [n-k+1, n].
    """
    return interval(i, j) + interval(n - k + j - i + 2, n)


subset_utils = SimpleNamespace(
    reduce=reduce_indices,
    interval=interval,
    w0=w0_image,
    complement=complement,
    star=star,
    shift=shift_indices,
    cyclic_interval_count=cyclic_interval_count,
    basic=basic_subset,
)


# === Grassmannian points ====================================================


@dataclass(frozen=True)
class GrassmannPoint:
    """A point of Gr(k, n): the column span of an n x k matrix of full rank."""

    n: int
    k: int
    mat: tuple

    def __post_init__(self):
        mat = tuple(tuple(row) for row in self.mat)
        object.__setattr__(self, "mat", mat)
        if not 1 <= self.k <= self.n - 1:
            raise MalformedInput("need 1 <= k <= n-1")
        if len(mat) != self.n or any(len(r) != self.k for r in mat):
            raise MalformedInput(f"matrix must be {self.n} x {self.k}")
        if _linalg.rank(mat) != self.k:
            raise DegenerateInput("matrix does not have full column rank")

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k,
                "mat": [[rational_str(x) for x in row] for row in self.mat]}

    @classmethod
    def from_json(cls, obj) -> "GrassmannPoint":
        try:
            mat = tuple(tuple(as_rational(x) for x in row)
                        for row in obj["mat"])
            return cls(int(obj["n"]), int(obj["k"]), mat)
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"bad Grassmannian point: {exc}") from exc


def plucker(point: GrassmannPoint, indices):
    """P_I: the minor on rows I (reduced mod n), zero on cardinality drop."""
    if isinstance(indices, IndexSet):
        raw = indices.elements
    else:
        raw = tuple(indices)
    rows = reduce_indices(raw, point.n)
    zero = point.mat[0][0] * 0
    if len(rows) != len(raw) or len(rows) != point.k:
        return zero
    val = _linalg.minor(point.mat, [r - 1 for r in rows], range(point.k))
    return val + zero  # coerce possible int 0 into the scalar field


def plucker_vector(point: GrassmannPoint) -> tuple:
    """All Pluecker coordinates, indexed by ascending k-subsets of [1, n]."""
    return tuple(
        _linalg.minor(point.mat, [r - 1 for r in sub], range(point.k))
        for sub in itertools.combinations(range(1, point.n + 1), point.k)
    )


def same_subspace(a: GrassmannPoint, b: GrassmannPoint) -> bool:
    """Projective equality of Pluecker vectors."""
    if (a.n, a.k) != (b.n, b.k):
        return False
    va, vb = plucker_vector(a), plucker_vector(b)
    pivot = next(i for i, x in enumerate(va) if x)
    if not vb[pivot]:
        return False
    ca, cb = vb[pivot], va[pivot]
    return all(x * ca == y * cb for x, y in zip(va, vb))


# === rectangles into the Grassmannian =======================================


def x_ratios(n: int, xrows, t) -> list:
    """Ratio coordinates of a k-row rational rectangle.

    Row i of the result holds x_{i,i} .. x_{i,i+n-k}, where
    x_{ij} = X_{ij}/X_{i,j-1} with X_{i,i-1} = 1 and X_{i,i+n-k} = t.
    """
    k = len(xrows)
    if not 1 <= k <= n - 1:
        raise MalformedInput("rectangle must have between 1 and n-1 rows")
    if any(len(r) != n - k for r in xrows):
        raise MalformedInput(f"each rectangle row needs {n - k} entries")
    if not t:
        raise DegenerateInput("rectangle needs t != 0")
    out = []
    for row in xrows:
        ratios = []
        prev = None
        for x in row:
            if not x:
                raise DegenerateInput("vanishing rectangle coordinate")
            ratios.append(x if prev is None else _fdiv(x, prev))
            prev = x
        ratios.append(_fdiv(t, prev) if prev is not None else t)
        out.append(ratios)
    return out


def chevalley_matrix(n: int, a: int, b: int, values) -> tuple:
    """The unipotent chip: diag entries z_a..z_b on [a, b], ones elsewhere on
    the diagonal, ones on the subdiagonal inside (a, b]."""
    values = tuple(values)
    if len(values) != b - a + 1 or not 1 <= a <= b <= n:
        raise MalformedInput("bad chip interval")
    rows = [[0] * n for _ in range(n)]
    for i in range(1, n + 1):
        rows[i - 1][i - 1] = values[i - a] if a <= i <= b else 1
        if a + 1 <= i <= b:
            rows[i - 1][i - 2] = 1
    return tuple(tuple(r) for r in rows)


def phi_matrix(n: int, xrows, t) -> tuple:
    """Product of the row chips of a k-row rectangle, top row last."""
    ratios = x_ratios(n, xrows, t)
    k = len(ratios)
    out = _linalg.identity(n)
    for i in range(k, 0, -1):
        out = _linalg.mat_mul(out, chevalley_matrix(n, i, i + n - k, ratios[i - 1]))
    return out


def theta(n: int, xrows, t):
    """Coordinatize a k-row rational rectangle as a point of X_{n-k}."""
    from .geomcrystal import XPoint

    k = len(xrows)
    A = phi_matrix(n, xrows, t)
    cols = tuple(tuple(row[:n - k]) for row in A)
    return XPoint(GrassmannPoint(n, n - k, cols), t)


def pi_k_z(A, k: int, z):
    """Span of the first k columns of A at the distinguished loop value.

    A is a loop-group matrix; the loop variable is set to (-1)**(k-1) * z
    and the result is paired with z.
    """
    from .geomcrystal import XPoint

    sign = 1 if (k - 1) % 2 == 0 else -1
    scalar = A.eval_lambda(sign * z)
    cols = tuple(tuple(row[:k]) for row in scalar)
    return XPoint(GrassmannPoint(A.n, k, cols), z)


def theta_inverse(point) -> tuple:
    """Rectangle corner coordinates of a point of X_k (an XPoint).

    Returns (xrows, t) with n-k rows; entry (i, j) is the ratio
    P at the basic subset (i, j) over P at (i+1, j).
    """
    gr = point.point
    n, k = gr.n, gr.k
    rows = []
    for i in range(1, n - k + 1):
        row = []
        for j in range(i, i + k):
            num = plucker(gr, basic_subset(i, j, n, k))
            den = plucker(gr, basic_subset(i + 1, j, n, k))
            if not den:
                raise DegenerateInput("vanishing basic coordinate")
            row.append(_fdiv(num, den))
        rows.append(tuple(row))
    return tuple(rows), point.t


# === planar networks ========================================================


@dataclass(frozen=True)
class PlanarNetwork:
    """A staged wire network on n horizontal levels.

    ``stages`` is a tuple of stages; each stage is a tuple of edges
    (from_wire, to_wire, weight) with wires in [1, n].  Paths move one stage
    per step, sources are (stage 0, wire), sinks are (last stage, wire).
    """

    n: int
    stages: tuple

    def matrix(self) -> tuple:
        out = _linalg.identity(self.n)
        for stage in self.stages:
            m = [[0] * self.n for _ in range(self.n)]
            for a, b, w in stage:
                m[a - 1][b - 1] = w
            out = _linalg.mat_mul(out, tuple(tuple(r) for r in m))
        return out

    def _edges_from(self, stage_idx: int, wire: int):
        for a, b, w in self.stages[stage_idx]:
            if a == wire:
                yield b, w


def phi_network(n: int, ratio_rows) -> PlanarNetwork:
    """The wire network whose path matrix is ``phi_matrix``.

    ``ratio_rows`` are the ratio coordinates (k rows of n-k+1 entries, as
    produced by :func:`x_ratios`); weights may be any ring elements,
    symbolic ones included.
    """
    k = len(ratio_rows)
    stages = []
    for i in range(k, 0, -1):
        a, b = i, i + n - k
        row = ratio_rows[i - 1]
        edges = []
        for w in range(1, n + 1):
            edges.append((w, w, row[w - a] if a <= w <= b else 1))
            if a + 1 <= w <= b:
                edges.append((w, w - 1, 1))
        stages.append(tuple(edges))
    return PlanarNetwork(n, tuple(stages))


def lindstrom_minor(net: PlanarNetwork, I, J):
    """Minor of the path matrix via vertex-disjoint path families.

    Sums sign(matching) * product(weights) over all families of
    vertex-disjoint paths joining sources I to sinks J, by backtracking.
    """
    I = tuple(sorted(I))
    J = tuple(sorted(J))
    if len(I) != len(J):
        raise MalformedInput("minor needs |I| = |J|")
    m = len(net.stages)
    used = [set() for _ in range(m + 1)]  # wires occupied per vertex column
    taken = [False] * len(J)
    total = 0

    def walk(src_idx, stage, wire, weight, order):
        nonlocal total
        if stage == m:
            for jj, sink in enumerate(J):
                if sink == wire and not taken[jj]:
                    taken[jj] = True
                    assign(src_idx + 1, order + (jj,), weight)
                    taken[jj] = False
            return
        for nxt, w in net._edges_from(stage, wire):
            if nxt in used[stage + 1]:
                continue
            used[stage + 1].add(nxt)
            walk(src_idx, stage + 1, nxt, weight * w, order)
            used[stage + 1].remove(nxt)

    def assign(src_idx, order, weight):
        nonlocal total
        if src_idx == len(I):
            inv = sum(1 for x in range(len(order)) for y in range(x + 1, len(order))
                      if order[x] > order[y])
            total = total + (weight if inv % 2 == 0 else -weight)
            return
        wire = I[src_idx]
        if wire in used[0]:
            return
        used[0].add(wire)
        walk(src_idx, 0, wire, weight, order)
        used[0].remove(wire)

    # recursion is interleaved: assign picks a source, walk routes it,
    # and reaching a sink hands control back to assign for the next source
    assign(0, (), 1)
    return total
