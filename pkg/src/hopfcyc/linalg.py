"""Exact sparse linear algebra over QQ and QQ(q).

Vectors are dicts keyed by arbitrary hashable basis labels; matrices are
lists of such row-vectors together with an explicit column order.  Pivoting
is deterministic: columns are scanned in the given order and the first row
(in input order) with a nonzero entry wins, so ranks, kernels and reduced
representatives are reproducible run to run.
"""

from __future__ import annotations

from .scalars import field_one


def vec_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, c in b.items():
        s = out.get(k)
        s = c if s is None else s + c
        if s:
            out[k] = s
        elif k in out:
            del out[k]
    return out


def vec_scale(a: dict, s) -> dict:
    if not s:
        return {}
    return {k: c * s for k, c in a.items()}


def vec_sub(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, c in b.items():
        s = out.get(k)
        s = -c if s is None else s - c
        if s:
            out[k] = s
        elif k in out:
            del out[k]
    return out


class Echelon:
    """Reduced row echelon form with deterministic pivoting.

    ``rows`` maps pivot column -> RREF row (pivot coefficient 1).  ``reduce``
    subtracts pivot rows to produce the canonical representative of a vector
    modulo the row space.
    """

    __slots__ = ("rows", "pivot_order", "pivot_scalars")

    def __init__(self):
        self.rows = {}
        self.pivot_order = []
        self.pivot_scalars = []

    def reduce(self, v: dict) -> dict:
        v = dict(v)
        for p in self.pivot_order:
            c = v.get(p)
            if c:
                row = self.rows[p]
                for k, rc in row.items():
                    s = v.get(k)
                    s = -c * rc if s is None else s - c * rc
                    if s:
                        v[k] = s
                    elif k in v:
                        del v[k]
        return v

    def insert(self, v: dict, col_key) -> bool:
        """Reduce v and, if nonzero, add it as a new pivot row.

        ``col_key`` orders candidate pivot columns.  Returns True if the
        vector enlarged the row space.
        """
        r = self.reduce(v)
        if not r:
            return False
        p = min(r, key=col_key)
        c = r[p]
        self.pivot_scalars.append(c)
        inv = 1 / c if not hasattr(c, "inv") else c.inv()
        row = {k: rc * inv for k, rc in r.items()}
        # keep earlier rows reduced against the new pivot
        for q, old in self.rows.items():
            oc = old.get(p)
            if oc:
                for k, rc in row.items():
                    s = old.get(k)
                    s = -oc * rc if s is None else s - oc * rc
                    if s:
                        old[k] = s
                    elif k in old:
                        del old[k]
        self.rows[p] = row
        self.pivot_order.append(p)
        return True

    @property
    def rank(self) -> int:
        return len(self.pivot_order)


def echelon_from_rows(rows, col_key=None) -> Echelon:
    ech = Echelon()
    ck = col_key or _default_col_key
    for r in rows:
        ech.insert(r, ck)
    return ech


def _default_col_key(k):
    return (repr(type(k)), repr(k))


def rank(rows, col_key=None) -> int:
    return echelon_from_rows(rows, col_key).rank


def nullspace(rows, columns, field) -> list[dict]:
    """Basis of {x : A x = 0} where rows are linear forms over ``columns``.

    Solutions are dicts over column keys; the basis is the standard one from
    RREF free columns, produced in column order.
    """
    order = {c: i for i, c in enumerate(columns)}
    ck = lambda k: order[k]
    ech = echelon_from_rows(rows, ck)
    pivots = set(ech.pivot_order)
    one = field_one(field)
    basis = []
    for c in columns:
        if c in pivots:
            continue
        sol = {c: one}
        for p in ech.pivot_order:
            coef = ech.rows[p].get(c)
            if coef:
                sol[p] = -coef
        basis.append(sol)
    return basis


def invert_dense(mat, field):
    """Inverse of a small dense matrix given as list of rows; raises if singular."""
    n = len(mat)
    one = field_one(field)
    aug = [list(mat[i]) + [one if j == i else one * 0 for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if aug[r][col]:
                piv = r
                break
        if piv is None:
            raise ValueError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        inv = 1 / pv if not hasattr(pv, "inv") else pv.inv()
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def mat_mul_vec(rows_by_col: list[dict], coeffs: dict) -> dict:
    """Linear combination sum coeffs[i] * rows_by_col[i]."""
    out = {}
    for i, c in coeffs.items():
        if not c:
            continue
        for k, v in rows_by_col[i].items():
            s = out.get(k)
            s = v * c if s is None else s + v * c
            if s:
                out[k] = s
            elif k in out:
                del out[k]
    return out
