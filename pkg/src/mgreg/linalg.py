"""Exact linear algebra over a :class:`~mgreg.field.Field`.

Graded pieces are small but numerous, so there are two rank kernels: dense
Gaussian elimination on lists for small matrices and a sparse row-dict
elimination above ``DENSE_LIMIT`` columns/rows.
"""

from __future__ import annotations

from .field import Field

DENSE_LIMIT = 512


def rank(rows, ncols: int, F: Field) -> int:
    """Rank of a matrix given as a list of rows (lists or {col: value} dicts)."""
    rows = [r for r in rows if r]
    if not rows or ncols == 0:
        return 0
    if len(rows) <= DENSE_LIMIT and ncols <= DENSE_LIMIT:
        dense = []
        for r in rows:
            if isinstance(r, dict):
                row = [F.zero] * ncols
                for j, v in r.items():
                    row[j] = v
                dense.append(row)
            else:
                dense.append(list(r))
        return _dense_rank(dense, ncols, F)
    sparse = []
    for r in rows:
        if isinstance(r, dict):
            sparse.append({j: v for j, v in r.items() if v != 0})
        else:
            sparse.append({j: v for j, v in enumerate(r) if v != 0})
    return len(sparse_echelon(sparse, F))


def _dense_rank(m, ncols, F: Field) -> int:
    r = 0
    nrows = len(m)
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = F.inv(m[r][c])
        prow = [F.mul(v, inv) for v in m[r]]
        m[r] = prow
        for i in range(r + 1, nrows):
            f = m[i][c]
            if f != 0:
                row = m[i]
                m[i] = [F.sub(a, F.mul(f, b)) if b != 0 else a for a, b in zip(row, prow)]
        r += 1
        if r == nrows:
            break
    return r


def sparse_echelon(rows, F: Field) -> dict:
    """Echelonize sparse rows; returns {pivot column: monic pivot row}."""
    pivots: dict = {}
    for row in rows:
        row = dict(row)
        while row:
            c = min(row)
            p = pivots.get(c)
            if p is None:
                inv = F.inv(row[c])
                pivots[c] = {j: F.mul(v, inv) for j, v in row.items()}
                break
            f = row[c]
            for j, v in p.items():
                nv = F.sub(row.get(j, F.zero), F.mul(f, v))
                if nv == 0:
                    row.pop(j, None)
                else:
                    row[j] = nv
    return pivots


def kernel(rows, ncols: int, F: Field) -> list:
    """Basis of {x : A x = 0} for A given by dense rows."""
    m = [list(r) for r in rows]
    nrows = len(m)
    pivcols = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = F.inv(m[r][c])
        m[r] = [F.mul(v, inv) for v in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(m[i], m[r])]
        pivcols.append(c)
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in set(pivcols)]
    basis = []
    for fc in free:
        x = [F.zero] * ncols
        x[fc] = F.one
        for i, pc in enumerate(pivcols):
            x[pc] = F.neg(m[i][fc])
        basis.append(x)
    return basis


def inverse(matrix, F: Field):
    """Inverse of a square matrix, or None when singular."""
    n = len(matrix)
    m = [list(row) + [F.one if i == j else F.zero for j in range(n)] for i, row in enumerate(matrix)]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return None
        m[c], m[piv] = m[piv], m[c]
        inv = F.inv(m[c][c])
        m[c] = [F.mul(v, inv) for v in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(m[i], m[c])]
    return [row[n:] for row in m]
