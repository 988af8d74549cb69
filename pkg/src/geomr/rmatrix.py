"""Birational R-matrix on pairs of decorated Grassmannian points, the
energy invariant that goes with it, and an exact tropical evaluator that
turns both into their piecewise-linear shadows on integer corner data.

Construction of the R-matrix.  The pair map ``geom_R(u, v) = (v', u')``
is computed by two linear transfer steps: the frame of ``v`` is multiplied
by the loop matrix of ``u`` specialized at the loop value of ``v``, which
yields ``v'`` directly, and ``u'`` is obtained the same way on the other
side after conjugating by the flip symmetry ``S``.  The defining product
identity ``g(u) g(v) = g(v') g(u')`` and the projection-based description
(``psi`` below) are kept as independent routes and cross-checked in the
test-suite instead of being used as the construction.

Tropical evaluation.  A query carries integer corner data per factor.
Each factor is lifted to a carrier point over the exact one-parameter
field by substituting ``eps**b`` for every corner entry and ``unit *
eps**L`` for the column count (distinct unit constants keep the loop
parameters distinct without disturbing valuations); the requested
birational map is applied exactly; corner valuations of the result are
read off through the inverse coordinatization.  On the positive cone the
value of every map is a sum of monomials with positive coefficients, so
valuations never suffer cancellation and the readout is the min-plus
value of the map.  A vanishing readout therefore cannot come from data
the catalog covers, and is reported as ``EngineMisuse``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ._linalg import mat_mul, minor
from .errors import DegenerateInput, EngineMisuse, MalformedInput
from .exactfield import EpsRational, LaurentPoly, as_rational, eps_monomial, val
from .geomcrystal import D, PR, S, XPoint, XProduct, crystal_map, e_c
from .grassmann import (GrassmannPoint, basic_subset, interval, pi_k_z,
                        plucker, reduce_indices, theta, theta_inverse,
                        w0_image)
from .loopgroup import _div, decoration_f, g_of, matrix_symmetry, minor_delta

__all__ = [
    "RInput", "TropQuery", "psi", "geom_R", "apply_R", "one_row_R",
    "one_row_tau", "one_row_kappa", "geom_E", "geom_E_plucker", "trop_eval",
    "trop_promotion", "trop_e0", "key_identity_check",
    "lift_tropical_factor", "read_tropical_factor",
]


def _scalar(z):
    """Coerce plain ints/fractions to exact rationals; pass field elements."""
    if isinstance(z, EpsRational):
        return z
    return as_rational(z)


def _check_pair(u, v):
    if not isinstance(u, XPoint) or not isinstance(v, XPoint):
        raise MalformedInput("expected a pair of carrier points")
    if u.n != v.n:
        raise MalformedInput("carrier points live over different n")
    if u.t == v.t or u.t == -v.t:
        raise DegenerateInput("coincident loop parameters")


@dataclass(frozen=True)
class RInput:
    """A pair of carrier points sharing the ambient dimension n."""

    u: XPoint
    v: XPoint

    def __post_init__(self):
        if not isinstance(self.u, XPoint) or not isinstance(self.v, XPoint):
            raise MalformedInput("RInput needs two carrier points")
        if self.u.n != self.v.n:
            raise MalformedInput("carrier points live over different n")

    def to_json(self) -> dict:
        return {"u": self.u.to_json(), "v": self.v.to_json()}

    @classmethod
    def from_json(cls, obj) -> "RInput":
        try:
            return cls(XPoint.from_json(obj["u"]), XPoint.from_json(obj["v"]))
        except (KeyError, TypeError) as exc:
            raise MalformedInput(f"bad pair object: {exc}") from exc


def psi(u: XPoint, v: XPoint) -> XPoint:
    """First output factor of the pair map, as a projection of g(u) g(v).

    Returns the span of the first k columns of the product loop matrix at
    the distinguished loop value of ``v`` (k being the Grassmannian index
    of ``v``), paired with the loop parameter of ``v``.
    """
    _check_pair(u, v)
    return pi_k_z(g_of(u) * g_of(v), v.k, v.t)


def geom_R(u: XPoint, v: XPoint) -> tuple:
    """The birational pair map (u, v) -> (v', u').

    v' spans B . N where B is the loop matrix of u at the loop value of
    v and N is the frame of v; u' is produced by the same transfer on the
    S-conjugated side.  Output factors keep the input loop parameters,
    swapped: v' carries v.t and u' carries u.t.
    """
    _check_pair(u, v)
    n = u.n
    sk = 1 if (v.k - 1) % 2 == 0 else -1
    bt = g_of(u).eval_lambda(sk * v.t)
    vp = XPoint(GrassmannPoint(n, v.k, mat_mul(bt, v.point.mat)), v.t)

    sl = 1 if (u.k - 1) % 2 == 0 else -1
    ct = matrix_symmetry(g_of(v), "fl").eval_lambda(sl * u.t)
    su = S(u)
    up = S(XPoint(GrassmannPoint(n, u.k, mat_mul(ct, su.point.mat)), u.t))
    return vp, up


def apply_R(factors, i: int) -> tuple:
    """Swap tensor slots i, i+1 (0-based) of a factor tuple by the pair map."""
    fs = list(factors)
    if not 0 <= i < len(fs) - 1:
        raise MalformedInput("slot index out of range")
    fs[i], fs[i + 1] = geom_R(fs[i], fs[i + 1])
    return tuple(fs)


# === energy =================================================================


def geom_E(u: XPoint, v: XPoint):
    """The energy of a pair: the lower-left corner minor of g(u) g(v) of
    size min(k_u, k_v).  The minor is a constant loop polynomial; its
    value is returned as a field scalar."""
    if u.n != v.n:
        raise MalformedInput("carrier points live over different n")
    n, k = u.n, min(u.k, v.k)
    m = minor_delta(g_of(u) * g_of(v), interval(n - k + 1, n), interval(1, k))
    if m.is_zero:
        return 0 * u.t
    if m.degree != 0 or m.low != 0:
        raise DegenerateInput("energy minor depends on the loop variable")
    return m.coeff(0)


def geom_E_plucker(u: XPoint, v: XPoint):
    """The energy as an explicit bilinear sum of coordinate ratios of the
    two factors (no loop matrices).  Independent route kept for checks."""
    if u.n != v.n:
        raise MalformedInput("carrier points live over different n")
    n, k1, k2 = u.n, u.k, v.k
    su = S(u)
    qden = plucker(su.point, w0_image(interval(1, k1), n))
    pden = plucker(v.point, interval(n - k2 + 1, n))
    total = 0 * u.t
    if k1 >= k2:
        head = interval(1, k1 - k2)
        for rest in itertools.combinations(interval(k1 - k2 + 1, n), k2):
            q = plucker(su.point, w0_image(head + rest, n))
            p = plucker(v.point, rest)
            total = total + _div(q * p, qden * pden)
    else:
        tail = interval(n - k2 + k1 + 1, n)
        for head in itertools.combinations(interval(1, n - k2 + k1), k1):
            q = plucker(su.point, w0_image(head, n))
            p = plucker(v.point, head + tail)
            total = total + _div(q * p, qden * pden)
    return total


# === the one-row shortcut ===================================================


def _one_row_setup(x, y):
    """Shared plumbing: lift both factors, build the product loop matrix at
    the distinguished value, and return a cached minor-ratio functional."""
    yrows, t = y
    n = len(tuple(x))
    krect = len(yrows)
    if krect < 1 or any(len(r) != n - krect for r in yrows):
        raise MalformedInput("corner rows of the second factor are ragged")
    if n < 2 or krect > n - 1:
        raise MalformedInput("need 1 <= rows < n")
    xs = [_scalar(z) for z in x]
    t = _scalar(t)
    corners = []
    acc = 1
    for z in xs[:-1]:
        acc = acc * z
        corners.append(acc)
    s = acc * xs[-1]
    u = theta(n, [corners], s)
    yrows = [[_scalar(z) for z in row] for row in yrows]
    v = theta(n, yrows, t)
    pk = n - krect
    sign = 1 if (pk - 1) % 2 == 0 else -1
    at = (g_of(u) * g_of(v)).eval_lambda(sign * t)
    pnum = plucker(v.point, interval(krect + 1, n))
    cache = {}

    def tau(indices):
        key = reduce_indices(indices, n)
        if key not in cache:
            if len(key) != pk:
                raise MalformedInput("index set of the wrong cardinality")
            d = minor(at, [i - 1 for i in key], list(range(pk)))
            cache[key] = _div(d * pnum, plucker(v.point, key))
        return cache[key]

    return n, krect, pk, xs, yrows, t, tau


def one_row_tau(x, y, indices):
    """The transfer functional of the one-row pair map at one index set."""
    tau = _one_row_setup(x, y)[-1]
    return tau(indices)


def one_row_kappa(x, y) -> tuple:
    """The n cyclic-interval values of the transfer functional; entry j is
    taken at the interval [j + rows, j + n - 1] reduced mod n.  The first
    entry equals the energy of the pair."""
    n, krect, _, _, _, _, tau = _one_row_setup(x, y)
    return tuple(tau(range(j + krect, j + n)) for j in range(1, n + 1))


def one_row_R(x, y) -> tuple:
    """The pair map for a one-row first factor, in corner coordinates.

    ``x`` is the length-n ratio vector of the one-row factor (its product
    is that factor's column count); ``y = (rows, t)`` is the corner data
    of the second factor.  Returns ``((rows', t), x')`` of the same
    shapes: every output entry is the matching input entry times a ratio
    of two values of the transfer functional, so the map is manifestly
    subtraction-free.
    """
    n, krect, pk, xs, yrows, t, tau = _one_row_setup(x, y)
    out_rows = []
    for i in range(1, krect + 1):
        row = []
        for j in range(i, i + n - krect):
            num = tau(basic_subset(i, j, n, pk))
            den = tau(basic_subset(i + 1, j, n, pk))
            row.append(_div(yrows[i - 1][j - i] * num, den))
        out_rows.append(tuple(row))
    kappa = [tau(range(j + krect, j + n)) for j in range(1, n + 1)]
    xp = tuple(_div(xs[j] * kappa[j], kappa[(j + 1) % n]) for j in range(n))
    return (tuple(out_rows), t), xp


# === tropical evaluation ====================================================

_TROP_MAPS = ("R", "E", "e", "PR", "S", "D", "gamma", "phi", "eps", "f")
_INDEXED = ("e", "phi", "eps")


@dataclass(frozen=True)
class TropQuery:
    """One tropical evaluation request.

    n       -- ambient dimension (alphabet size);
    map     -- one of R, E, e, PR, S, D, gamma, phi, eps, f;
    factors -- per-factor integer corner data, each (rows, L) with rows a
               k-tuple of (n-k)-tuples;
    index   -- direction for e/phi/eps, in [0, n-1];
    c       -- tropical parameter for e (+1 raises, -1 lowers).
    """

    n: int
    map: str
    factors: tuple
    index: int = None
    c: int = 1

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise MalformedInput("need integer n >= 2")
        if self.map not in _TROP_MAPS:
            raise MalformedInput(f"unknown map identifier {self.map!r}")
        clean = []
        for fac in self.factors:
            try:
                rows, bound = fac
                rows = tuple(tuple(int(b) for b in r) for r in rows)
                bound = int(bound)
            except (TypeError, ValueError) as exc:
                raise MalformedInput(f"bad factor data: {exc}") from exc
            k = len(rows)
            if not 1 <= k <= self.n - 1 or any(len(r) != self.n - k
                                               for r in rows):
                raise MalformedInput("factor rows do not fit any rectangle "
                                     f"shape for n={self.n}")
            clean.append((rows, bound))
        object.__setattr__(self, "factors", tuple(clean))
        if not self.factors:
            raise MalformedInput("need at least one factor")
        if self.map in ("R", "E") and len(self.factors) != 2:
            raise MalformedInput(f"map {self.map} needs exactly two factors")
        if self.map in _INDEXED:
            if not isinstance(self.index, int) or not 0 <= self.index < self.n:
                raise MalformedInput("direction index out of range")
        if self.map == "e" and (not isinstance(self.c, int) or self.c == 0):
            raise MalformedInput("tropical parameter must be a nonzero int")

    def to_json(self) -> dict:
        out = {"n": self.n, "map": self.map,
               "factors": [{"rows": [list(r) for r in rows], "L": bound}
                           for rows, bound in self.factors]}
        if self.map in _INDEXED:
            out["index"] = self.index
        if self.map == "e":
            out["c"] = self.c
        return out

    @classmethod
    def from_json(cls, obj) -> "TropQuery":
        try:
            factors = tuple((tuple(tuple(r) for r in fac["rows"]), fac["L"])
                            for fac in obj["factors"])
            return cls(int(obj["n"]), str(obj["map"]), factors,
                       index=obj.get("index"), c=int(obj.get("c", 1)))
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"bad query object: {exc}") from exc


def lift_tropical_factor(n: int, rows, bound: int, unit: int = 1) -> XPoint:
    """Carrier point over the exact one-parameter field for integer corner
    data: eps**b per corner entry and unit * eps**bound as loop parameter."""
    xrows = [[eps_monomial(int(b)) for b in row] for row in rows]
    return theta(n, xrows, eps_monomial(int(bound), unit))


def read_tropical_factor(xp: XPoint) -> tuple:
    """Corner valuations (rows, L) of a carrier point over the eps-field."""
    rows, t = theta_inverse(xp)
    return tuple(tuple(val(z) for z in row) for row in rows), val(t)


def _read_factors(x) -> tuple:
    if isinstance(x, XProduct):
        return tuple(read_tropical_factor(f) for f in x.factors)
    return (read_tropical_factor(x),)


def trop_eval(q: TropQuery):
    """Evaluate one tropical query exactly.  Returns integers: factor data
    ((rows, L), ...) for the maps that output points, a bare integer for
    E/phi/eps/f, and an n-tuple for gamma."""
    if not isinstance(q, TropQuery):
        raise MalformedInput("expected a TropQuery")
    try:
        pts = [lift_tropical_factor(q.n, rows, bound, unit=idx + 1)
               for idx, (rows, bound) in enumerate(q.factors)]
        x = pts[0] if len(pts) == 1 else XProduct(tuple(pts))
        if q.map == "R":
            vp, up = geom_R(pts[0], pts[1])
            return (read_tropical_factor(vp), read_tropical_factor(up))
        if q.map == "E":
            return val(geom_E(pts[0], pts[1]))
        if q.map == "e":
            return _read_factors(e_c(x, q.index, eps_monomial(q.c)))
        if q.map == "gamma":
            return tuple(val(z) for z in crystal_map(x, "gamma"))
        if q.map in ("phi", "eps"):
            return val(crystal_map(x, q.map, q.index))
        if q.map == "f":
            return val(decoration_f(x))
        if q.map == "PR":
            return _read_factors(PR(x))
        if q.map == "S":
            return _read_factors(S(x))
        return _read_factors(D(x))
    except DegenerateInput as exc:
        raise EngineMisuse(f"degenerate tropical evaluation: {exc}") from exc


def trop_promotion(rect):
    """Corner-data form of cyclic promotion: the tropical shadow of the
    rotation map, on a single rectangle."""
    from .tableaux import KRectangle

    (rows, bound), = trop_eval(TropQuery(rect.n, "PR",
                                         ((rect.B, rect.L),)))
    return KRectangle(rect.n, rect.k, rows, bound)


def trop_e0(rect):
    """Affine raising operator on a single rectangle, or None when it is
    not defined (the candidate's decoration valuation goes negative)."""
    from .tableaux import KRectangle

    cand, = trop_eval(TropQuery(rect.n, "e", ((rect.B, rect.L),),
                                index=0, c=1))
    if trop_eval(TropQuery(rect.n, "f", (cand,))) < 0:
        return None
    return KRectangle(rect.n, rect.k, cand[0], cand[1])


# === the bilinear key identity =============================================


def key_identity_check(u: XPoint, v: XPoint, r: int) -> bool:
    """Check the column-r bilinear identity tying the product loop matrix
    to the coordinates of the two output factors.

    LHS: (t + (-1)**k lam) times the ratio of two flipped-side coordinates
    of u'; RHS: the alternating sum over rows a of the coordinate ratios
    of v' against column r of g(u) g(v).  Exact loop-polynomial equality.
    """
    if not 1 <= r <= u.n:
        raise MalformedInput("column index out of range")
    n, k, ell, t = u.n, v.k, u.k, v.t
    a = g_of(u) * g_of(v)
    vp, up = geom_R(u, v)
    sup = S(up)
    qnum = plucker(sup.point, w0_image(interval(1, ell - 1) + (r,), n))
    qden = plucker(sup.point, w0_image(interval(1, ell), n))
    ratio = _div(qnum, qden)
    sign = 1 if k % 2 == 0 else -1
    lhs = LaurentPoly.const(t * ratio) + LaurentPoly.variable(1, sign * ratio)

    pden = plucker(vp.point, interval(n - k + 1, n))
    rhs = LaurentPoly.zero()
    base = interval(n - k, n)
    for row in range(1, n + 1):
        p = plucker(vp.point, tuple(i for i in base if i != row))
        if not p:
            continue
        term_sign = 1 if (n + row) % 2 == 0 else -1
        rhs = rhs + a.entry(row, r) * LaurentPoly.const(
            _div(p, pden) * term_sign)
    return lhs == rhs
