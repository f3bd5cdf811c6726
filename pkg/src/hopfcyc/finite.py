"""Finite-dimensional views: basis-indexed structure tables.

A :class:`FiniteHopfView` flattens a finite presentation onto its normal-form
word basis and memoizes multiplication, coproduct, counit and antipode as
index tables; the inverse antipode comes from exact matrix inversion.
:class:`FiniteAlgebra` and :class:`FiniteCoalgebra` are the standalone
table-backed structures used for coefficient algebras/coalgebras in the
cocyclic modules and for crossed products.
"""

from __future__ import annotations

from .errors import NotFiniteDimensional
from .linalg import invert_dense
from .ncpoly import EMPTY_WORD, NCPoly, word_str
from .scalars import field_one, field_zero


class FiniteHopfView:
    def __init__(self, pres):
        basis = pres.finite_basis()
        if basis is None:
            raise NotFiniteDimensional(pres.name)
        self.pres = pres
        self.field = pres.field
        self.basis = basis
        self.index = {w: i for i, w in enumerate(basis)}
        self.dim = len(basis)
        self.unit_index = self.index[EMPTY_WORD]
        self._mult = {}
        self._delta = {}
        self._S = {}
        self._Sinv_mat = None

    def poly_to_vec(self, p: NCPoly) -> dict:
        p = self.pres.normalize(p)
        return {self.index[w]: c for w, c in p.terms.items()}

    def vec_to_poly(self, v: dict) -> NCPoly:
        return NCPoly({self.basis[i]: c for i, c in v.items() if c})

    def mult(self, i: int, j: int) -> dict:
        key = (i, j)
        hit = self._mult.get(key)
        if hit is None:
            p = self.pres.rs.normalize_word(self.basis[i] + self.basis[j])
            hit = {self.index[w]: c for w, c in p.terms.items()}
            self._mult[key] = hit
        return hit

    def mult_vec(self, a: dict, b: dict) -> dict:
        out = {}
        for i, ca in a.items():
            for j, cb in b.items():
                c = ca * cb
                for k, ck in self.mult(i, j).items():
                    s = out.get(k)
                    s = ck * c if s is None else s + ck * c
                    if s:
                        out[k] = s
                    elif k in out:
                        del out[k]
        return out

    def delta(self, i: int) -> dict:
        hit = self._delta.get(i)
        if hit is None:
            t = self.pres.delta_word(self.basis[i])
            hit = {}
            for (w1, w2), c in t.terms.items():
                k = (self.index[w1], self.index[w2])
                hit[k] = hit.get(k, field_zero(self.field)) + c
            hit = {k: c for k, c in hit.items() if c}
            self._delta[i] = hit
        return hit

    def eps(self, i: int):
        return self.pres.counit_word(self.basis[i])

    def antipode(self, i: int) -> dict:
        hit = self._S.get(i)
        if hit is None:
            p = self.pres.antipode_word(self.basis[i])
            hit = {self.index[w]: c for w, c in p.terms.items()}
            self._S[i] = hit
        return hit

    def antipode_inv(self, i: int) -> dict:
        if self._Sinv_mat is None:
            zero = field_zero(self.field)
            mat = [[zero] * self.dim for _ in range(self.dim)]
            for j in range(self.dim):
                for k, c in self.antipode(j).items():
                    mat[k][j] = c
            inv = invert_dense(mat, self.field)
            self._Sinv_mat = inv
        col = {}
        for r in range(self.dim):
            c = self._Sinv_mat[r][i]
            if c:
                col[r] = c
        return col

    def grouplikes(self):
        """Indices i with Delta(i) = i ox i and eps(i) = 1."""
        one = field_one(self.field)
        out = []
        for i in range(self.dim):
            if self.eps(i) == one and self.delta(i) == {(i, i): one}:
                out.append(i)
        return out


def attach_finite_antipode_inverse(pres) -> None:
    """Install S^{-1} generator tables on a finite presentation by inversion."""
    view = FiniteHopfView(pres)
    for g in pres.gens():
        i = view.index.get((g,))
        if i is None:
            continue
        pres._Sinv_tab[g] = view.vec_to_poly(view.antipode_inv(i))


class FiniteAlgebra:
    """Associative unital algebra on labeled basis vectors.

    ``mult[i][j]`` is the product of basis i and j as a sparse vector; the
    unit is an arbitrary vector (idempotent bases need sums).
    """

    def __init__(self, field, labels, mult, unit_vec):
        self.field = field
        self.labels = list(labels)
        self.dim = len(self.labels)
        self.mult = mult
        self.unit_vec = dict(unit_vec)

    @staticmethod
    def from_hopf_view(view: FiniteHopfView) -> "FiniteAlgebra":
        labels = [word_str(w) for w in view.basis]
        mult = [[view.mult(i, j) for j in range(view.dim)] for i in range(view.dim)]
        return FiniteAlgebra(view.field, labels, mult, {view.unit_index: field_one(view.field)})

    def mult_vec(self, a: dict, b: dict) -> dict:
        out = {}
        for i, ca in a.items():
            for j, cb in b.items():
                c = ca * cb
                for k, ck in self.mult[i][j].items():
                    s = out.get(k)
                    s = ck * c if s is None else s + ck * c
                    if s:
                        out[k] = s
                    elif k in out:
                        del out[k]
        return out

    def check_associative_unital(self):
        for i in range(self.dim):
            ei = {i: field_one(self.field)}
            if self.mult_vec(self.unit_vec, ei) != ei or self.mult_vec(ei, self.unit_vec) != ei:
                return False, f"unit fails at basis {self.labels[i]}"
        for i in range(self.dim):
            for j in range(self.dim):
                for k in range(self.dim):
                    a = {i: field_one(self.field)}
                    b = {j: field_one(self.field)}
                    c = {k: field_one(self.field)}
                    lhs = self.mult_vec(self.mult_vec(a, b), c)
                    rhs = self.mult_vec(a, self.mult_vec(b, c))
                    if lhs != rhs:
                        return False, f"associativity fails at ({i},{j},{k})"
        return True, None


class FiniteCoalgebra:
    """Coalgebra on labeled basis vectors: Delta as (j,k)-tables, eps a vector."""

    def __init__(self, field, labels, delta, eps):
        self.field = field
        self.labels = list(labels)
        self.dim = len(self.labels)
        self.delta = delta  # list: i -> dict (j, k) -> scalar
        self.eps = list(eps)

    @staticmethod
    def from_hopf_view(view: FiniteHopfView) -> "FiniteCoalgebra":
        labels = [word_str(w) for w in view.basis]
        delta = [view.delta(i) for i in range(view.dim)]
        eps = [view.eps(i) for i in range(view.dim)]
        return FiniteCoalgebra(view.field, labels, delta, eps)

    def delta_vec(self, v: dict) -> dict:
        out = {}
        for i, c in v.items():
            for jk, d in self.delta[i].items():
                s = out.get(jk)
                s = d * c if s is None else s + d * c
                if s:
                    out[jk] = s
                elif jk in out:
                    del out[jk]
        return out

    def check_coalgebra(self):
        zero = field_zero(self.field)
        for i in range(self.dim):
            # coassociativity in coordinates (j,k,l)
            lhs, rhs = {}, {}
            for (j, k), c in self.delta[i].items():
                for (a, b), d in self.delta[j].items():
                    key = (a, b, k)
                    lhs[key] = lhs.get(key, zero) + c * d
                for (a, b), d in self.delta[k].items():
                    key = (j, a, b)
                    rhs[key] = rhs.get(key, zero) + c * d
            lhs = {k: v for k, v in lhs.items() if v}
            rhs = {k: v for k, v in rhs.items() if v}
            if lhs != rhs:
                return False, f"coassociativity fails at basis {self.labels[i]}"
            lv, rv = {}, {}
            for (j, k), c in self.delta[i].items():
                s = lv.get(k, zero) + c * self.eps[j]
                lv[k] = s
                s = rv.get(j, zero) + c * self.eps[k]
                rv[j] = s
            lv = {k: v for k, v in lv.items() if v}
            rv = {k: v for k, v in rv.items() if v}
            expect = {i: field_one(self.field)}
            if lv != expect or rv != expect:
                return False, f"counit fails at basis {self.labels[i]}"
        return True, None
