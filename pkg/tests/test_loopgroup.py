import itertools

import pytest

from geomr import _linalg
from geomr._rand import rand_xpoint, rand_xpoints
from geomr.errors import MalformedInput
from geomr.geomcrystal import D, PR, S, XProduct
from geomr.grassmann import GrassmannPoint, interval, plucker, same_subspace
from geomr.loopgroup import (
    LoopMatrix,
    LoopPoly,
    UnfoldedEntry,
    chi,
    decoration_f,
    fold,
    g_of,
    identity_matrix,
    matrix_symmetry,
    minor_delta,
    minor_support_condition,
    negate_loop_variable,
    twisted_nonneg,
    unfold_entry,
    zero_rows,
)


def _binom_power(t, sign, e):
    """(t + sign * lam)**e as a loop polynomial."""
    out = LoopPoly.const(1)
    base = LoopPoly.const(t) + LoopPoly.variable(1, sign)
    for _ in range(e):
        out = out * base
    return out


# --- folding ------------------------------------------------------------------


_BLOCK = (
    (3, 7, 2, 1, 0, 0),
    (1, 5, -3, -2, 0, 0),
    (4, 8, 3, 7, 2, 1),
    (0, 6, 1, 5, -3, -2),
    (5, 0, 4, 8, 3, 7),
    (1, 0, 0, 6, 1, 5),
)
_FOLDED = LoopMatrix(2, (
    (LoopPoly(-1, (2, 3, 4, 5)), LoopPoly(-1, (1, 7, 8))),
    (LoopPoly(-1, (-3, 1, 0, 1)), LoopPoly(-1, (-2, 5, 6))),
))


def test_unfold_against_written_out_block():
    """A 2x2 loop matrix unfolded to its upper-left 6x6 corner, by hand."""
    for i in range(1, 7):
        for j in range(1, 7):
            assert unfold_entry(_FOLDED, i, j) == _BLOCK[i - 1][j - 1]
    # periodicity: shifting both indices by n moves one loop power
    assert unfold_entry(_FOLDED, 1, 3) == _FOLDED.entry(1, 1).coeff(-1)


def test_fold_inverts_unfold():
    ents = [UnfoldedEntry(i, j, _BLOCK[i - 1][j - 1])
            for i in range(1, 7) for j in range(1, 7)]
    assert fold(2, ents) == _FOLDED
    with pytest.raises(MalformedInput):
        fold(2, [UnfoldedEntry(1, 1, 3), UnfoldedEntry(3, 3, 4)])


def test_matrix_basics():
    ident = identity_matrix(3)
    assert ident * ident == ident
    assert ident.is_in_Bminus()
    assert ident.is_m_shifted_unipotent(0)


# --- the matrix attached to a carrier point ------------------------------------


def test_g_display_n5_k2(rng):
    """Every entry of g for n=5, k=2, written out."""
    v = rand_xpoint(rng, 5, 2)
    n, t = v.point, v.t
    p = lambda *ix: plucker(n, ix)
    g = g_of(v)
    lam = LoopPoly.variable(1, 1)
    c0 = LoopPoly.const
    var = LoopPoly.variable
    disp = {
        (1, 1): c0(p(1, 5) / p(4, 5)), (1, 2): c0(0), (1, 3): lam,
        (1, 4): var(1, p(1, 3) / p(2, 3)), (1, 5): var(1, p(1, 4) / p(3, 4)),
        (2, 1): c0(p(2, 5) / p(4, 5)), (2, 2): c0(p(1, 2) / p(1, 5)),
        (2, 3): c0(0), (2, 4): lam, (2, 5): var(1, p(2, 4) / p(3, 4)),
        (3, 1): c0(p(3, 5) / p(4, 5)), (3, 2): c0(p(1, 3) / p(1, 5)),
        (3, 3): c0(t * p(2, 3) / p(1, 2)), (3, 4): c0(0), (3, 5): lam,
        (4, 1): c0(1), (4, 2): c0(p(1, 4) / p(1, 5)),
        (4, 3): c0(t * p(2, 4) / p(1, 2)), (4, 4): c0(t * p(3, 4) / p(2, 3)),
        (4, 5): c0(0),
        (5, 1): c0(0), (5, 2): c0(1), (5, 3): c0(t * p(2, 5) / p(1, 2)),
        (5, 4): c0(t * p(3, 5) / p(2, 3)), (5, 5): c0(t * p(4, 5) / p(3, 4)),
    }
    for (i, j), want in disp.items():
        assert g.entry(i, j) == want, (i, j)


@pytest.mark.parametrize("n,k", [(3, 1), (4, 2), (5, 3)])
def test_g_structure(rng, n, k):
    u = rand_xpoint(rng, n, k)
    g = g_of(u)
    # determinant
    det = minor_delta(g, interval(1, n), interval(1, n))
    assert det == _binom_power(u.t, 1 if k % 2 == 0 else -1, n - k)
    # shifted unipotence
    assert g.is_m_shifted_unipotent(n - k)
    assert g.shift_degree() == n - k
    # the constant part of the first k columns spans the point
    first = GrassmannPoint(n, k, tuple(tuple(q.coeff(0) for q in row[:k])
                                       for row in g.rows))
    assert same_subspace(first, u.point)
    # rank collapse at the distinguished loop value
    sgn = 1 if (k - 1) % 2 == 0 else -1
    assert _linalg.rank(g.eval_lambda(sgn * u.t)) == k
    # column minors recover the coordinates
    pden = plucker(u.point, interval(n - k + 1, n))
    for rows in itertools.combinations(range(1, n + 1), k):
        assert minor_delta(g, rows, interval(1, k)) == \
            LoopPoly.const(plucker(u.point, rows) / pden)


def test_g_multiplicative_and_chi_additive(rng):
    u, v = rand_xpoints(rng, 5, (2, 3))
    gu, gv = g_of(u), g_of(v)
    assert g_of(XProduct((u, v))) == gu * gv
    assert chi(gu * gv) == chi(gu) + chi(gv)
    assert decoration_f(u) == chi(gu)
    assert decoration_f(XProduct((u, v))) == \
        decoration_f(u) + decoration_f(v)


# --- the three symmetries ------------------------------------------------------


@pytest.mark.parametrize("n,k", [(4, 2), (5, 3), (5, 2)])
def test_symmetry_laws(rng, n, k):
    u = rand_xpoint(rng, n, k)
    g = g_of(u)
    assert g_of(PR(u)) == matrix_symmetry(g, "sh")
    assert g_of(S(u)) == matrix_symmetry(g, "fl")
    sb = 1 if (k + n) % 2 == 0 else -1
    beta = _binom_power(u.t, sb, n - k - 1)
    lhs = LoopMatrix(n, tuple(tuple(beta * p for p in row)
                              for row in g_of(D(u)).rows))
    assert lhs == matrix_symmetry(g, "inv")


def test_rotation_minor_law(rng):
    """Minors of the rotated matrix against minors of the original,
    including the boundary sign and loop-power twists, sizes <= 3."""
    n, k = 5, 2
    u = rand_xpoint(rng, n, k)
    g = g_of(u)
    sh = matrix_symmetry(g, "sh")
    lam = LoopPoly.variable(1, 1)
    for r in (1, 2, 3):
        for rows in itertools.combinations(range(1, n + 1), r):
            for cols in itertools.combinations(range(1, n + 1), r):
                lhs = minor_delta(sh, rows, cols)
                shr = tuple(sorted((i - 2) % n + 1 for i in rows))
                shc = tuple(sorted((j - 2) % n + 1 for j in cols))
                rhs = minor_delta(g, shr, shc)
                sign = 1 if (r - 1) % 2 == 0 else -1
                if (1 in rows) == (1 in cols):
                    assert lhs == rhs
                elif 1 in rows:
                    assert lhs == rhs * lam * sign
                else:
                    assert lhs * lam == rhs * LoopPoly.const(sign)


@pytest.mark.parametrize("n,k", [(4, 2), (5, 3)])
def test_flip_and_dual_minor_laws(rng, n, k):
    u = rand_xpoint(rng, n, k)
    g = g_of(u)
    fl = matrix_symmetry(g, "fl")
    gd = g_of(D(u))
    neg = g if n % 2 == 0 else negate_loop_variable(g)
    w0 = lambda ix: tuple(sorted(n + 1 - i for i in ix))
    co = lambda ix: tuple(i for i in range(1, n + 1) if i not in ix)
    sb = 1 if (n - k) % 2 == 0 else -1
    for r in (1, 2, 3):
        for rows in itertools.combinations(range(1, n + 1), r):
            for cols in itertools.combinations(range(1, n + 1), r):
                assert minor_delta(fl, rows, cols) == \
                    minor_delta(g, w0(cols), w0(rows))
                # the dual law, with the power of the binomial split so
                # that both sides stay polynomial
                lhs = minor_delta(gd, rows, cols)
                rhs = minor_delta(neg, co(cols), co(rows))
                if r >= n - k:
                    assert lhs == rhs * _binom_power(u.t, sb, r - (n - k))
                else:
                    assert lhs * _binom_power(u.t, sb, (n - k) - r) == rhs


def test_unknown_symmetry_rejected(rng):
    with pytest.raises(MalformedInput):
        matrix_symmetry(g_of(rand_xpoint(rng, 4, 2)), "rot")


# --- sign structure of minors ---------------------------------------------------


def test_zero_rows_match_matrix_entries(rng):
    n, k = 5, 3
    g = g_of(rand_xpoint(rng, n, k))
    for j in range(1, n + 1):
        zr = zero_rows(n, k, [j])
        for i in range(1, n + 1):
            assert g.entry(i, j).is_zero == (i in zr)
    assert zero_rows(n, k, [1, 2]) == zero_rows(n, k, [1]) & zero_rows(n, k, [2])
    assert zero_rows(n, k, []) == frozenset()
    # column indices reduce cyclically
    assert zero_rows(n, k, [n + 1]) == zero_rows(n, k, [1])


def test_minor_support_condition_examples():
    # n = 5, k = 3, r = 2, columns {1, 3}: column 1 kills rows {4, 5},
    # column 3 kills rows {1, 2}, and no row dies in both.
    assert minor_support_condition(5, 3, 2, 1, 1, (1, 4))
    assert not minor_support_condition(5, 3, 2, 1, 1, (4, 5))
    assert not minor_support_condition(5, 3, 2, 1, 1, (1, 2))
    # r = k: every row set qualifies
    for rows in itertools.combinations(range(1, 6), 3):
        assert minor_support_condition(5, 3, 3, 1, 1, rows)
    with pytest.raises(MalformedInput):
        minor_support_condition(5, 3, 2, 3, 1, (1, 2))


def test_twisted_nonneg_parity():
    p = LoopPoly(0, (1, -1, 1))
    assert twisted_nonneg(p, 2)
    assert not twisted_nonneg(p, 3)
    assert twisted_nonneg(LoopPoly(0, ()), 7)
    assert not twisted_nonneg(LoopPoly(0, (-1,)), 1)


def _deflate(p, t, s):
    """Exact division of ``p`` by ``(t + s * lam)``; None if a remainder
    is left behind."""
    if p.is_zero:
        return p
    coeffs = [p.coeff(i) for i in range(p.low, p.degree + 1)]
    quot = [0] * (len(coeffs) - 1)
    for idx in range(len(coeffs) - 1, 0, -1):
        q = coeffs[idx] / s
        quot[idx - 1] = q
        coeffs[idx - 1] -= t * q
    if coeffs[0] != 0:
        return None
    return LoopPoly(p.low, tuple(quot))


def test_high_rank_minors_factor_through_binomial(rng):
    """Once a minor is taller than the column period, the determinant
    binomial divides it exactly, and the quotient keeps the twisted sign
    pattern."""
    n, k = 5, 2
    u = rand_xpoint(rng, n, k)
    g = g_of(u)
    sgn = 1 if k % 2 == 0 else -1
    for r in range(k + 1, n + 1):
        for rows in itertools.combinations(range(1, n + 1), r):
            for cols in itertools.combinations(range(1, n + 1), r):
                f = minor_delta(g, rows, cols)
                for _ in range(r - k):
                    f = _deflate(f, u.t, sgn)
                    assert f is not None
                assert twisted_nonneg(f, r)
