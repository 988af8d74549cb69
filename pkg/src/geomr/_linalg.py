"""Small generic matrix helpers.

Matrices are tuples of row tuples.  Entries may be anything with exact ring
arithmetic (+, -, *, falsy-at-zero); routines needing division say so.
"""

from __future__ import annotations


def _fdiv(a, b):
    """Field division that keeps plain ints exact."""
    if isinstance(a, int) and isinstance(b, int):
        from .exactfield import _exact_div
        return _exact_div(a, b)
    return a / b


def mat(rows):
    return tuple(tuple(r) for r in rows)


def dims(a):
    return len(a), len(a[0]) if a else 0


def mat_mul(a, b):
    n, m = len(a), len(b[0])
    inner = len(b)
    out = []
    for i in range(n):
        ai = a[i]
        row = []
        for j in range(m):
            acc = 0
            for k in range(inner):
                x = ai[k]
                if not x:
                    continue
                y = b[k][j]
                if not y:
                    continue
                acc = acc + x * y
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def scale(a, c):
    return tuple(tuple(c * x for x in row) for row in a)


def transpose(a):
    return tuple(zip(*a))


def det(rows):
    """Division-free determinant (row-by-row DP over used-column subsets)."""
    rows = tuple(rows)
    n = len(rows)
    if n == 0:
        return 1
    cur = {0: 1}
    for r in range(n):
        nxt = {}
        row = rows[r]
        for mask, acc in cur.items():
            if not acc:
                continue
            below = 0
            for j in range(n):
                bit = 1 << j
                if mask & bit:
                    below += 1
                    continue
                c = row[j]
                if not c:
                    continue
                term = acc * c
                # sign: parity of used columns above j (r used in total)
                if (r - below) & 1:
                    term = -term
                key = mask | bit
                if key in nxt:
                    nxt[key] = nxt[key] + term
                else:
                    nxt[key] = term
        cur = nxt
        if not cur:
            return 0
    return cur.get((1 << n) - 1, 0)


def submatrix(a, rows, cols):
    return tuple(tuple(a[i][j] for j in cols) for i in rows)


def minor(a, rows, cols):
    return det(submatrix(a, rows, cols))


def rank(a):
    """Row rank; needs field entries (uses division)."""
    if not a:
        return 0
    m = [list(row) for row in a]
    nrows, ncols = len(m), len(m[0])
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        for i in range(r + 1, nrows):
            if m[i][c]:
                f = _fdiv(m[i][c], pv)
                for j in range(c, ncols):
                    m[i][j] = m[i][j] - f * m[r][j]
        r += 1
        if r == nrows:
            break
    return r


def nullspace(a):
    """Basis of the right kernel of a (rows x cols); field entries.

    Returns a list of column vectors (tuples of length cols).
    """
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    m = [list(row) for row in a]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        m[r] = [_fdiv(x, pv) for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * ncols
        vec[fc] = 1
        for rr, pc in enumerate(pivots):
            vec[pc] = -m[rr][fc]
        basis.append(tuple(vec))
    return basis
