"""Geometric crystal structure on decorated Grassmannian points.

The carrier X_k is a pair (N | t): a point N of Gr(k, n) and an invertible
scalar t.  Products of carriers multiply componentwise characters and fold
the Kashiwara-style pair rules from the left.  Everything is expressed
through cyclic-interval Pluecker coordinates, so every map here is a
subtraction-free rational expression wherever it is defined; vanishing
denominators raise DegenerateInput rather than being perturbed away.

Symmetries:

* :func:`PR` rotates the cyclic labelling one step (order n on points).
* :func:`S` is the Pluecker-dual involution, realised by flipping the
  fundamental matrix across the antidiagonal and re-reading a point.
* :func:`mu` sends N to a signed orthogonal complement with reversed
  coordinates (X_k -> X_{n-k}).
* :func:`D` is S composed with mu; on products it also reverses the order
  of the factors, as does S.

:func:`Q` reads the dual Pluecker coordinate of a point: the coordinate of
S(x) at the index set reversed by i -> n+1-i.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _linalg
from .errors import DegenerateInput, MalformedInput
from .exactfield import as_rational, rational_str
from .grassmann import (GrassmannPoint, interval, pi_k_z, plucker,
                        same_subspace, w0_image)


def _div(a, b):
    from .loopgroup import _div as d
    return d(a, b)


@dataclass(frozen=True)
class XPoint:
    """A point (N | t) of the decorated Grassmannian carrier X_k."""

    point: GrassmannPoint
    t: object

    def __post_init__(self):
        if not self.t:
            raise DegenerateInput("the loop parameter t must be invertible")

    @property
    def n(self) -> int:
        return self.point.n

    @property
    def k(self) -> int:
        return self.point.k

    def same_as(self, other: "XPoint") -> bool:
        """Equality as carrier points: same span and same t."""
        if not isinstance(other, XPoint):
            return False
        if (self.n, self.k) != (other.n, other.k):
            return False
        if self.t != other.t:
            return False
        return same_subspace(self.point, other.point)

    def to_json(self) -> dict:
        out = self.point.to_json()
        out["t"] = rational_str(self.t)
        return out

    @classmethod
    def from_json(cls, data) -> "XPoint":
        if not isinstance(data, dict) or "t" not in data:
            raise MalformedInput("carrier point needs a 't' field")
        gr = GrassmannPoint.from_json({key: v for key, v in data.items()
                                       if key != "t"})
        return cls(gr, as_rational(data["t"]))


@dataclass(frozen=True)
class XProduct:
    """An ordered tuple of carrier points over a common cyclic rank n."""

    factors: tuple

    def __post_init__(self):
        factors = tuple(self.factors)
        object.__setattr__(self, "factors", factors)
        if not factors:
            raise MalformedInput("a product needs at least one factor")
        if any(not isinstance(f, XPoint) for f in factors):
            raise MalformedInput("product factors must be carrier points")
        if len({f.n for f in factors}) != 1:
            raise MalformedInput("product factors must share n")

    @property
    def n(self) -> int:
        return self.factors[0].n

    def same_as(self, other: "XProduct") -> bool:
        if not isinstance(other, XProduct):
            return False
        if len(self.factors) != len(other.factors):
            return False
        return all(a.same_as(b) for a, b in zip(self.factors, other.factors))

    def to_json(self) -> dict:
        return {"factors": [f.to_json() for f in self.factors]}

    @classmethod
    def from_json(cls, data) -> "XProduct":
        if not isinstance(data, dict) or "factors" not in data:
            raise MalformedInput("product needs a 'factors' field")
        return cls(tuple(XPoint.from_json(f) for f in data["factors"]))


def _point_gamma(x: XPoint) -> tuple:
    gr, t = x.point, x.t
    n, k = gr.n, gr.k
    out = []
    for i in range(1, n + 1):
        num = plucker(gr, interval(i - k + 1, i))
        den = plucker(gr, interval(i - k, i - 1))
        if not den:
            raise DegenerateInput("vanishing cyclic minor in gamma")
        q = _div(num, den)
        out.append(q if i <= k else t * q)
    return tuple(out)


def _point_phi(x: XPoint, i: int):
    gr, t = x.point, x.t
    k = gr.k
    num = plucker(gr, interval(i - k + 1, i - 1) + (i + 1,))
    den = plucker(gr, interval(i - k + 1, i))
    if not den:
        raise DegenerateInput("vanishing cyclic minor in phi")
    q = _div(num, den)
    return _div(q, t) if i == 0 else q


def _point_eps(x: XPoint, i: int):
    gr, t = x.point, x.t
    k = gr.k
    num1 = plucker(gr, interval(i - k + 1, i - 1) + (i + 1,))
    num2 = plucker(gr, interval(i - k + 1, i))
    den1 = plucker(gr, interval(i - k, i - 1))
    den2 = plucker(gr, interval(i - k + 2, i + 1))
    if not den1 or not den2:
        raise DegenerateInput("vanishing cyclic minor in eps")
    q = _div(num1 * num2, den1 * den2)
    return _div(q, t) if i == k else q


def _check_index(x, i: int):
    if not 0 <= i <= x.n - 1:
        raise MalformedInput(f"crystal index {i} out of range for n={x.n}")


def crystal_map(x, which: str, i: int = None):
    """Evaluate a character of the crystal: 'gamma' (the full n-tuple),
    or 'phi' / 'eps' at index i in [0, n-1]."""
    if which == "gamma":
        if isinstance(x, XProduct):
            gammas = [_point_gamma(f) for f in x.factors]
            out = gammas[0]
            for g in gammas[1:]:
                out = tuple(a * b for a, b in zip(out, g))
            return out
        return _point_gamma(x)
    if which not in ("phi", "eps"):
        raise MalformedInput(f"unknown crystal map {which!r}")
    if i is None:
        raise MalformedInput("phi/eps need an index")
    _check_index(x, i)
    if isinstance(x, XProduct):
        phi, eps = _fold_phi_eps(x.factors, i)
        return phi if which == "phi" else eps
    return _point_phi(x, i) if which == "phi" else _point_eps(x, i)


def _fold_phi_eps(factors, i: int) -> tuple:
    """(phi_i, eps_i) of a left-associated product of carrier points."""
    phi = _point_phi(factors[0], i)
    eps = _point_eps(factors[0], i)
    for f in factors[1:]:
        phi_y = _point_phi(f, i)
        eps_y = _point_eps(f, i)
        mixed = eps + phi_y
        if not eps or not phi_y:
            raise DegenerateInput("product character undefined (zero phi/eps)")
        phi, eps = _div(phi * mixed, eps), _div(eps_y * mixed, phi_y)
    return phi, eps


def _point_e_c(x: XPoint, i: int, c) -> XPoint:
    gr, t = x.point, x.t
    n, k = gr.n, gr.k
    phi = _point_phi(x, i)
    if not phi:
        raise DegenerateInput("crystal action undefined where phi vanishes")
    a = _div(c - 1, phi)
    rows = [list(r) for r in gr.mat]
    if i == 0:
        sign = 1 if (k - 1) % 2 == 0 else -1
        a = _div(a * sign, t)
        src, dst = 0, n - 1
    else:
        src, dst = i, i - 1
    for col in range(k):
        rows[dst][col] = rows[dst][col] + a * rows[src][col]
    return XPoint(GrassmannPoint(n, k, rows), t)


def e_c(x, i: int, c):
    """The geometric crystal action with parameter c (invertible)."""
    if not c:
        raise DegenerateInput("crystal parameter must be invertible")
    _check_index(x, i)
    if isinstance(x, XPoint):
        return _point_e_c(x, i, c)
    if not isinstance(x, XProduct):
        raise MalformedInput("e_c wants an XPoint or XProduct")
    return XProduct(tuple(_split_e_c(list(x.factors), i, c)))


def _split_e_c(factors, i: int, c):
    """Distribute the crystal parameter over the factors, left-associated."""
    if len(factors) == 1:
        return [_point_e_c(factors[0], i, c)]
    head, last = factors[:-1], factors[-1]
    eps_x = _fold_phi_eps(head, i)[1]
    phi_y = _point_phi(last, i)
    mixed = eps_x + phi_y
    if not mixed:
        raise DegenerateInput("crystal action undefined (eps + phi = 0)")
    c1 = _div(c * eps_x + phi_y, mixed)
    den2 = eps_x + _div(phi_y, c)
    if not den2:
        raise DegenerateInput("crystal action undefined (eps + phi/c = 0)")
    c2 = _div(mixed, den2)
    return _split_e_c(head, i, c1) + [_point_e_c(last, i, c2)]


def product_crystal_map(xs, which: str, i: int = None):
    """Character of an explicit list of carrier points, folded left to
    right; convenience wrapper over :func:`crystal_map`."""
    xs = tuple(xs)
    if len(xs) == 1:
        return crystal_map(xs[0], which, i)
    return crystal_map(XProduct(xs), which, i)


# === symmetries =============================================================


def PR(x):
    """Cyclic rotation: rows shift down one step and the wrapped row is
    scaled by (-1)**(k-1) t.  Componentwise on products."""
    if isinstance(x, XProduct):
        return XProduct(tuple(PR(f) for f in x.factors))
    gr, t = x.point, x.t
    n, k = gr.n, gr.k
    sign = 1 if (k - 1) % 2 == 0 else -1
    top = tuple(sign * t * v for v in gr.mat[n - 1])
    rows = (top,) + tuple(gr.mat[:-1])
    return XPoint(GrassmannPoint(n, k, rows), t)


def S(x):
    """The duality involution: flip the fundamental matrix across the
    antidiagonal and read the resulting point back off its columns.
    Reverses factor order on products."""
    if isinstance(x, XProduct):
        return XProduct(tuple(S(f) for f in reversed(x.factors)))
    from .loopgroup import g_of, matrix_symmetry

    flipped = matrix_symmetry(g_of(x), "fl")
    return pi_k_z(flipped, x.k, x.t)


def Q(x: XPoint, J) -> object:
    """Dual Pluecker coordinate: the coordinate of S(x) at J reversed by
    i -> n+1-i."""
    return plucker(S(x).point, w0_image(J, x.n))


def mu(x):
    """Signed orthogonal complement with reversed coordinates:
    X_k -> X_{n-k}."""
    if isinstance(x, XProduct):
        return XProduct(tuple(mu(f) for f in x.factors))
    gr, t = x.point, x.t
    n, k = gr.n, gr.k
    if k == n:
        raise DegenerateInput("complement of the full space is empty")
    # rows of N^T G, with G = diag(+1, -1, +1, ...)
    eqs = tuple(tuple(gr.mat[r][c] if r % 2 == 0 else -gr.mat[r][c]
                      for r in range(n))
                for c in range(k))
    basis = _linalg.nullspace(eqs)
    rows = tuple(tuple(vec[n - 1 - r] for vec in basis) for r in range(n))
    return XPoint(GrassmannPoint(n, n - k, rows), t)


def D(x):
    """S composed with mu; reverses factor order on products."""
    if isinstance(x, XProduct):
        return XProduct(tuple(D(f) for f in reversed(x.factors)))
    return S(mu(x))
