"""Cocyclic modules: the Hopf-algebra instance on {H^(ox n)}, the three
coefficient theories (module algebra / comodule algebra / module coalgebra),
twisted cyclic cochains, and the operator identity suite.

All instances share one interface and one index convention:

    face(n, i, x):        level n -> n+1,  0 <= i <= n+1
    degeneracy(n, i, x):  level n -> n-1,  0 <= i <= n-1   (n >= 1)
    cyclic(n, x):         level n -> n,    cyclic(0) = id

Elements are sparse dicts keyed by level-specific basis labels.  For the
functional theories a level element is the value table of a multilinear
functional on argument tuples; operators act by precomposition.  For the
coalgebra theory the level is a tensor-over-H quotient computed by exact
linear algebra.  The identity suite (cosimplicial relations, cyclic
compatibilities, tau_n^{n+1} = id) runs exhaustively on finite instances and
on random exact samples for H_1.
"""

from __future__ import annotations

import itertools

from .coeffs import FinCoefModule, SymmetryCertificate, check_ayd, check_stability, mat_apply
from .errors import IndexOutOfRange, NotSAYD, TraceNotInvariant, WrongSides
from .finite import FiniteAlgebra, FiniteCoalgebra, FiniteHopfView
from .hopf import HopfPresentation, ModularPair
from .linalg import Echelon, nullspace, vec_add, vec_scale
from .ncpoly import EMPTY_WORD, NCPoly, TensorElem, word_str
from .scalars import field_one, field_zero


def vzero():
    return {}


def vacc(out, key, c):
    if not c:
        return
    s = out.get(key)
    s = c if s is None else s + c
    if s:
        out[key] = s
    elif key in out:
        del out[key]


def vsum(vs):
    out = {}
    for v in vs:
        for k, c in v.items():
            vacc(out, k, c)
    return out


# ---------------------------------------------------------------------------
# Connes-Moscovici instance on {H^(ox n)}
# ---------------------------------------------------------------------------


class CMInstance:
    """Cocyclic module of a Hopf algebra with modular pair (delta, sigma).

    Level n is H^(ox n) (level 0 the ground field); keys are n-tuples of
    normal-form words.  The pair need not be in involution: periodicity
    failures are then legitimate findings, not construction errors.
    """

    family = "cm"

    def __init__(self, pres: HopfPresentation, pair: ModularPair):
        self.pres = pres
        self.pair = pair
        self.field = pres.field
        self._view = None

    def view(self) -> FiniteHopfView:
        if self._view is None:
            self._view = FiniteHopfView(self.pres)
        return self._view

    def level_keys(self, n):
        basis = self.view().basis
        return [tuple(k) for k in itertools.product(basis, repeat=n)]

    def level_basis(self, n):
        one = field_one(self.field)
        return [{k: one} for k in self.level_keys(n)]

    def residual(self, n, x):
        return {}

    def face(self, n, i, x):
        if not 0 <= i <= n + 1:
            raise IndexOutOfRange(f"face {i} at level {n}")
        pres = self.pres
        out = {}
        if i == 0:
            for key, c in x.items():
                vacc(out, (EMPTY_WORD,) + key, c)
        elif i == n + 1:
            for key, c in x.items():
                vacc(out, key + (self.pair.sigma,), c)
        else:
            for key, c in x.items():
                t = pres.delta_word(key[i - 1])
                for (w1, w2), d in t.terms.items():
                    vacc(out, key[: i - 1] + (w1, w2) + key[i:], c * d)
        return out

    def degeneracy(self, n, i, x):
        if n < 1 or not 0 <= i <= n - 1:
            raise IndexOutOfRange(f"degeneracy {i} at level {n}")
        pres = self.pres
        out = {}
        for key, c in x.items():
            e = pres.counit_word(key[i])
            if e:
                vacc(out, key[:i] + key[i + 1 :], c * e)
        return out

    def cyclic(self, n, x):
        if n == 0:
            return dict(x)
        pres = self.pres
        out = {}
        for key, c in x.items():
            st = pres.twisted_antipode(self.pair.delta, NCPoly({key[0]: field_one(self.field)}))
            tail = key[1:] + (self.pair.sigma,)
            for w, cw in st.terms.items():
                legs = pres.coproduct(NCPoly({w: field_one(self.field)}), n - 1)
                for lkey, cl in legs.terms.items():
                    polys = [pres.rs.normalize_word(u + t) for u, t in zip(lkey, tail)]
                    _expand_into(out, polys, c * cw * cl)
        return out

    def sample_level(self, n, rng, index_bound=3, degree=2):
        """One random exact element of H^(ox n) for sampled identity checks."""
        from .hopf import random_normal_words

        words = random_normal_words(self.pres, degree, max(n, 1), rng, index_bound)
        if n == 0:
            return {(): field_one(self.field)}
        while len(words) < n:
            words += words
        return {tuple(words[:n]): field_one(self.field)}


def _expand_into(out, polys, coeff):
    keys = [((), coeff)]
    for p in polys:
        nxt = []
        for prefix, c in keys:
            for w, pc in p.terms.items():
                nxt.append((prefix + (w,), c * pc))
        keys = nxt
        if not keys:
            return
    for key, c in keys:
        vacc(out, key, c)


# ---------------------------------------------------------------------------
# helper structures: H acting/coacting on algebras and coalgebras
# ---------------------------------------------------------------------------


class AlgebraWithAction:
    """Left H-module algebra: finite algebra A plus one matrix per generator."""

    def __init__(self, pres: HopfPresentation, alg: FiniteAlgebra, mats):
        self.pres = pres
        self.alg = alg
        self.mats = dict(mats)

    def act_mat(self, g):
        m = self.mats.get(g)
        if m is None:
            m = self.mats[g[0]]
            if callable(m):
                m = m(g[1])
        return m

    def act_word(self, w, vec):
        for g in reversed(w):
            vec = mat_apply(self.act_mat(g), vec)
        return vec

    def act_poly(self, p: NCPoly, vec):
        out = {}
        for w, c in p.terms.items():
            for k, s in self.act_word(w, vec).items():
                vacc(out, k, s * c)
        return out

    def diag_act_word(self, hw, key):
        """Diagonal action of the word hw on a basis tuple of A^(ox k)."""
        k = len(key)
        if k == 0:
            e = self.pres.counit_word(hw)
            return {(): e} if e else {}
        legs = self.pres.coproduct(NCPoly({hw: field_one(self.pres.field)}), k - 1)
        out = {}
        for lkey, c in legs.terms.items():
            vecs = [self.act_word(u, {a: field_one(self.alg.field)}) for u, a in zip(lkey, key)]
            _expand_idx(out, vecs, c)
        return out

    def certify(self, index_bound=4) -> SymmetryCertificate:
        """Module-algebra law on generators x basis pairs, plus relation respect."""
        pres, alg = self.pres, self.alg
        one = field_one(alg.field)
        for r in pres.rs._instantiated_rules(index_bound):
            for j in range(alg.dim):
                v = {j: one}
                lhs = self.act_word(r.lhs, v)
                rhs = {}
                for w, c in r.rhs.terms.items():
                    for k, s in self.act_word(w, v).items():
                        vacc(rhs, k, s * c)
                if lhs != rhs:
                    return SymmetryCertificate(
                        "module-algebra", False, witness=f"action breaks rule {word_str(r.lhs)}"
                    )
        for g in pres.gens(index_bound):
            got = self.act_word((g,), dict(alg.unit_vec))
            eps = pres.eps_gen(g)
            expect = {k: c * eps for k, c in alg.unit_vec.items() if c * eps}
            if got != expect:
                return SymmetryCertificate("module-algebra", False, witness=f"h(1) fails at {g}")
            for a in range(alg.dim):
                for b in range(alg.dim):
                    ab = alg.mult[a][b]
                    lhs = {}
                    for k, c in ab.items():
                        for k2, s in self.act_word((g,), {k: one}).items():
                            vacc(lhs, k2, s * c)
                    rhs = {}
                    for (w1, w2), c in self.pres.delta_gen(g).terms.items():
                        va = self.act_word(w1, {a: one})
                        vb = self.act_word(w2, {b: one})
                        for k, s in self.alg.mult_vec(va, vb).items():
                            vacc(rhs, k, s * c)
                    if lhs != rhs:
                        return SymmetryCertificate(
                            "module-algebra",
                            False,
                            witness=f"h(ab) fails at h={g}, a={a}, b={b}",
                        )
        return SymmetryCertificate("module-algebra", True)


def _expand_idx(out, vecs, coeff):
    keys = [((), coeff)]
    for v in vecs:
        nxt = []
        for prefix, c in keys:
            for k, s in v.items():
                nxt.append((prefix + (k,), c * s))
        keys = nxt
        if not keys:
            return
    for key, c in keys:
        vacc(out, key, c)


class AlgebraWithCoaction:
    """Right H-comodule algebra: finite algebra B with coaction into B ox H.

    ``coaction[i]`` maps (j, h_basis_index) -> scalar over a finite H view.
    """

    def __init__(self, hview: FiniteHopfView, alg: FiniteAlgebra, coaction):
        self.hview = hview
        self.alg = alg
        self.coaction = [dict(r) for r in coaction]

    def certify(self) -> SymmetryCertificate:
        H, B = self.hview, self.alg
        zero = field_zero(B.field)
        one = field_one(B.field)
        # comodule axioms
        for i in range(B.dim):
            lhs, rhs = {}, {}
            for (j, b), c in self.coaction[i].items():
                for (b1, b2), d in H.delta(b).items():
                    vacc(lhs, (j, b1, b2), c * d)
            for (j, b), c in self.coaction[i].items():
                for (k, b1), d in self.coaction[j].items():
                    vacc(rhs, (k, b1, b), c * d)
            if lhs != rhs:
                return SymmetryCertificate("comodule-algebra", False, witness=f"coassoc at {i}")
            cnt = {}
            for (j, b), c in self.coaction[i].items():
                vacc(cnt, j, c * H.eps(b))
            if cnt != {i: one}:
                return SymmetryCertificate("comodule-algebra", False, witness=f"counit at {i}")
        # multiplicativity and unitality of the coaction
        lhs = {}
        for j, c in B.unit_vec.items():
            vacc(lhs, (j, H.unit_index), c)
        got = {}
        for i, c in B.unit_vec.items():
            for (j, b), d in self.coaction[i].items():
                vacc(got, (j, b), c * d)
        if got != lhs:
            return SymmetryCertificate("comodule-algebra", False, witness="rho(1) != 1 ox 1")
        for a in range(B.dim):
            for bidx in range(B.dim):
                lhs = {}
                for k, c in B.mult[a][bidx].items():
                    for (j, hb), d in self.coaction[k].items():
                        vacc(lhs, (j, hb), c * d)
                rhs = {}
                for (j1, h1), c1 in self.coaction[a].items():
                    for (j2, h2), c2 in self.coaction[bidx].items():
                        for j, cb in B.mult[j1][j2].items():
                            for hb, ch in H.mult(h1, h2).items():
                                vacc(rhs, (j, hb), c1 * c2 * cb * ch)
                if lhs != rhs:
                    return SymmetryCertificate(
                        "comodule-algebra", False, witness=f"rho(ab) fails at ({a},{bidx})"
                    )
        return SymmetryCertificate("comodule-algebra", True)

    def diag_coact(self, key):
        """Diagonal right coaction of a basis tuple: keys (tuple, h_index)."""
        H = self.hview
        out = {((), H.unit_index): field_one(self.alg.field)}
        for i in key:
            nxt = {}
            for (prefix, hb), c in out.items():
                for (j, hb2), d in self.coaction[i].items():
                    for hb3, m in H.mult(hb, hb2).items():
                        vacc(nxt, (prefix + (j,), hb3), c * d * m)
            out = nxt
        return out


class CoalgebraWithAction:
    """Left H-module coalgebra: finite coalgebra C with action matrices."""

    def __init__(self, pres: HopfPresentation, coalg: FiniteCoalgebra, mats):
        self.pres = pres
        self.coalg = coalg
        self.mats = dict(mats)

    def act_mat(self, g):
        m = self.mats.get(g)
        if m is None:
            m = self.mats[g[0]]
            if callable(m):
                m = m(g[1])
        return m

    def act_word(self, w, vec):
        for g in reversed(w):
            vec = mat_apply(self.act_mat(g), vec)
        return vec

    def diag_act_word(self, hw, key):
        k = len(key)
        if k == 0:
            e = self.pres.counit_word(hw)
            return {(): e} if e else {}
        legs = self.pres.coproduct(NCPoly({hw: field_one(self.pres.field)}), k - 1)
        out = {}
        for lkey, c in legs.terms.items():
            vecs = [self.act_word(u, {a: field_one(self.coalg.field)}) for u, a in zip(lkey, key)]
            _expand_idx(out, vecs, c)
        return out

    def certify(self, index_bound=4) -> SymmetryCertificate:
        pres, C = self.pres, self.coalg
        one = field_one(C.field)
        ok, why = C.check_coalgebra()
        if not ok:
            return SymmetryCertificate("module-coalgebra", False, witness=why)
        for r in pres.rs._instantiated_rules(index_bound):
            for j in range(C.dim):
                v = {j: one}
                lhs = self.act_word(r.lhs, v)
                rhs = {}
                for w, c in r.rhs.terms.items():
                    for k, s in self.act_word(w, v).items():
                        vacc(rhs, k, s * c)
                if lhs != rhs:
                    return SymmetryCertificate(
                        "module-coalgebra", False, witness=f"action breaks rule {word_str(r.lhs)}"
                    )
        for g in pres.gens(index_bound):
            for i in range(C.dim):
                lhs = {}
                for k, c in self.act_word((g,), {i: one}).items():
                    for (a, b), d in C.delta[k].items():
                        vacc(lhs, (a, b), c * d)
                rhs = {}
                for (w1, w2), c in pres.delta_gen(g).terms.items():
                    for (a, b), d in C.delta[i].items():
                        va = self.act_word(w1, {a: one})
                        vb = self.act_word(w2, {b: one})
                        for ka, ca in va.items():
                            for kb, cb in vb.items():
                                vacc(rhs, (ka, kb), c * d * ca * cb)
                if lhs != rhs:
                    return SymmetryCertificate(
                        "module-coalgebra", False, witness=f"Delta(hc) fails at {g},{i}"
                    )
                le = sum((c * C.eps[k] for k, c in self.act_word((g,), {i: one}).items()),
                         field_zero(C.field))
                re = pres.eps_gen(g) * C.eps[i]
                if le != re:
                    return SymmetryCertificate(
                        "module-coalgebra", False, witness=f"eps(hc) fails at {g},{i}"
                    )
        return SymmetryCertificate("module-coalgebra", True)


# ---------------------------------------------------------------------------
# type A: equivariant cochains on a module algebra
# ---------------------------------------------------------------------------


class TypeAInstance:
    """Cochains Hom_H(M ox A^(ox n+1), k) for a left H-module algebra A and a
    coefficient module M with right action and left coaction.

    Level elements are value tables on (m_index, a_tuple) keys; equivariance
    f((m ox a~)h) = eps(h) f(m ox a~) cuts the levels, with
    (m ox a~)h = m h^(1) ox S(h^(2)) a~.
    """

    family = "typeA"

    def __init__(self, action: AlgebraWithAction, mod: FinCoefModule, certify=True, index_bound=4):
        if (mod.act_side, mod.coact_side) != ("right", "left"):
            raise WrongSides("type A needs a right-action, left-coaction module")
        self.action = action
        self.mod = mod
        self.pres = action.pres
        self.field = action.alg.field
        self._levels = {}
        self.index_bound = index_bound
        if certify:
            cert = action.certify(index_bound)
            if not cert.ok:
                raise NotSAYD(f"not a module algebra: {cert.witness}")
            a1 = check_ayd(mod, "ayd", None, index_bound)
            a2 = check_ayd(mod, "ayd", -_ayd_default(mod), index_bound)
            if not (a1.ok or a2.ok):
                raise NotSAYD(f"coefficients fail AYD: {a1.witness}")
            if not check_stability(mod).ok:
                raise NotSAYD("coefficients are not stable")

    def level_keys(self, n):
        return [
            (mi, key)
            for mi in range(self.mod.dim)
            for key in itertools.product(range(self.action.alg.dim), repeat=n + 1)
        ]

    def level_space(self, n):
        hit = self._levels.get(n)
        if hit is not None:
            return hit
        keys = self.level_keys(n)
        one = field_one(self.field)
        rows = []
        for g in self.pres.gens(self.index_bound):
            eps = self.pres.eps_gen(g)
            for mi, atuple in keys:
                row = {}
                for (w1, w2), c in self.pres.delta_gen(g).terms.items():
                    mvec = self.mod.act_word(w1, {mi: one})
                    spoly = self.pres.antipode_word(w2)
                    for sw, sc in spoly.terms.items():
                        avec = self.action.diag_act_word(sw, atuple)
                        for mj, mc in mvec.items():
                            for akey, ac in avec.items():
                                vacc(row, (mj, akey), c * sc * mc * ac)
                vacc(row, (mi, atuple), -eps)
                if row:
                    rows.append(row)
        basis = nullspace(rows, keys, self.field)
        self._levels[n] = (keys, basis, rows)
        return self._levels[n]

    def level_basis(self, n):
        return self.level_space(n)[1]

    def residual(self, n, x):
        """Constraint residuals of x at level n; empty iff x is equivariant."""
        _, _, rows = self.level_space(n)
        out = {}
        for idx, row in enumerate(rows):
            s = field_zero(self.field)
            for k, c in row.items():
                xv = x.get(k)
                if xv:
                    s = s + c * xv
            if s:
                out[idx] = s
        return out

    def face(self, n, i, x):
        if not 0 <= i <= n + 1:
            raise IndexOutOfRange(f"face {i} at level {n}")
        alg = self.action.alg
        one = field_one(self.field)
        out = {}
        for (mi, atuple) in self.level_keys(n + 1):
            if i <= n:
                prod = alg.mult[atuple[i]][atuple[i + 1]]
                for k, c in prod.items():
                    arg = (mi, atuple[: i] + (k,) + atuple[i + 2 :])
                    xv = x.get(arg)
                    if xv:
                        vacc(out, (mi, atuple), c * xv)
            else:
                for mj, poly in self.mod.coaction[mi].items():
                    sinv = self.pres.antipode_inv(poly)
                    for w, cw in sinv.terms.items():
                        last = self.action.act_word(w, {atuple[-1]: one})
                        for a, ca in last.items():
                            for k, ck in alg.mult[a][atuple[0]].items():
                                arg = (mj, (k,) + atuple[1:-1])
                                xv = x.get(arg)
                                if xv:
                                    vacc(out, (mi, atuple), cw * ca * ck * xv)
        return out

    def degeneracy(self, n, i, x):
        if n < 1 or not 0 <= i <= n - 1:
            raise IndexOutOfRange(f"degeneracy {i} at level {n}")
        alg = self.action.alg
        out = {}
        for (mi, atuple) in self.level_keys(n - 1):
            for u, cu in alg.unit_vec.items():
                arg = (mi, atuple[: i + 1] + (u,) + atuple[i + 1 :])
                xv = x.get(arg)
                if xv:
                    vacc(out, (mi, atuple), cu * xv)
        return out

    def cyclic(self, n, x):
        one = field_one(self.field)
        out = {}
        for (mi, atuple) in self.level_keys(n):
            for mj, poly in self.mod.coaction[mi].items():
                sinv = self.pres.antipode_inv(poly)
                for w, cw in sinv.terms.items():
                    last = self.action.act_word(w, {atuple[-1]: one})
                    for a, ca in last.items():
                        arg = (mj, (a,) + atuple[:-1])
                        xv = x.get(arg)
                        if xv:
                            vacc(out, (mi, atuple), cw * ca * xv)
        return out


def _ayd_default(mod):
    from .coeffs import _AYD_POWER

    return _AYD_POWER[(mod.act_side, mod.coact_side)]


# ---------------------------------------------------------------------------
# type B: colinear cochains on a comodule algebra
# ---------------------------------------------------------------------------


class TypeBInstance:
    """M-valued right-H-colinear functionals on B^(ox n+1).

    Keys are (b_tuple, m_index); the coefficients form a right-right SAYD
    module and B carries the diagonal right coaction.
    """

    family = "typeB"

    def __init__(self, coalg: AlgebraWithCoaction, mod: FinCoefModule, certify=True, index_bound=4):
        if (mod.act_side, mod.coact_side) != ("right", "right"):
            raise WrongSides("type B needs a right-right module")
        self.coact = coalg
        self.mod = mod
        self.hview = coalg.hview
        self.pres = coalg.hview.pres
        self.field = coalg.alg.field
        self.index_bound = index_bound
        self._levels = {}
        if certify:
            cert = coalg.certify()
            if not cert.ok:
                raise NotSAYD(f"not a comodule algebra: {cert.witness}")
            a1 = check_ayd(mod, "ayd", None, index_bound)
            a2 = check_ayd(mod, "ayd", -_ayd_default(mod), index_bound)
            if not (a1.ok or a2.ok):
                raise NotSAYD(f"coefficients fail AYD: {a1.witness}")
            if not check_stability(mod).ok:
                raise NotSAYD("coefficients are not stable")

    def level_keys(self, n):
        return [
            (key, mi)
            for key in itertools.product(range(self.coact.alg.dim), repeat=n + 1)
            for mi in range(self.mod.dim)
        ]

    def _mod_coact_idx(self, mi):
        """Right coaction of m_i in (m_index, h_basis_index) coordinates."""
        out = {}
        for j, poly in self.mod.coaction[mi].items():
            for w, c in poly.terms.items():
                vacc(out, (j, self.hview.index[w]), c)
        return out

    def level_space(self, n):
        hit = self._levels.get(n)
        if hit is not None:
            return hit
        keys = self.level_keys(n)
        rows = []
        for btuple in itertools.product(range(self.coact.alg.dim), repeat=n + 1):
            # rho_M(f(b~)) = f(b~^(0)) ox b~^(1) in coordinates (mj, h)
            per_target = {}
            for mi in range(self.mod.dim):
                for (mj, hb), c in self._mod_coact_idx(mi).items():
                    vacc(per_target, (mj, hb, (btuple, mi)), c)
            for (btup0, hb), c in self.coact.diag_coact(btuple).items():
                for mj in range(self.mod.dim):
                    vacc(per_target, (mj, hb, (btup0, mj)), -c)
            # group rows by output coordinate (mj, hb)
            grouped = {}
            for (mj, hb, key), c in per_target.items():
                grouped.setdefault((mj, hb), {})
                vacc(grouped[(mj, hb)], key, c)
            for row in grouped.values():
                if row:
                    rows.append(row)
        basis = nullspace(rows, keys, self.field)
        self._levels[n] = (keys, basis, rows)
        return self._levels[n]

    def level_basis(self, n):
        return self.level_space(n)[1]

    def residual(self, n, x):
        _, _, rows = self.level_space(n)
        out = {}
        for idx, row in enumerate(rows):
            s = field_zero(self.field)
            for k, c in row.items():
                xv = x.get(k)
                if xv:
                    s = s + c * xv
            if s:
                out[idx] = s
        return out

    def face(self, n, i, x):
        if not 0 <= i <= n + 1:
            raise IndexOutOfRange(f"face {i} at level {n}")
        B = self.coact.alg
        out = {}
        for (btuple, mi) in self.level_keys(n + 1):
            if i <= n:
                for k, c in B.mult[btuple[i]][btuple[i + 1]].items():
                    arg = (btuple[: i] + (k,) + btuple[i + 2 :], mi)
                    xv = x.get(arg)
                    if xv:
                        vacc(out, (btuple, mi), c * xv)
            else:
                for (j, hb), c in self.coact.coaction[btuple[-1]].items():
                    for k, ck in B.mult[j][btuple[0]].items():
                        hword = self.hview.basis[hb]
                        for mj in range(self.mod.dim):
                            act = self.mod.act_word(hword, {mj: field_one(self.field)})
                            coeff = act.get(mi)
                            if not coeff:
                                continue
                            arg = ((k,) + btuple[1:-1], mj)
                            xv = x.get(arg)
                            if xv:
                                vacc(out, (btuple, mi), c * ck * coeff * xv)
        return out

    def degeneracy(self, n, i, x):
        if n < 1 or not 0 <= i <= n - 1:
            raise IndexOutOfRange(f"degeneracy {i} at level {n}")
        B = self.coact.alg
        out = {}
        for (btuple, mi) in self.level_keys(n - 1):
            for u, cu in B.unit_vec.items():
                arg = (btuple[: i + 1] + (u,) + btuple[i + 1 :], mi)
                xv = x.get(arg)
                if xv:
                    vacc(out, (btuple, mi), cu * xv)
        return out

    def cyclic(self, n, x):
        out = {}
        for (btuple, mi) in self.level_keys(n):
            for (j, hb), c in self.coact.coaction[btuple[-1]].items():
                hword = self.hview.basis[hb]
                for mj in range(self.mod.dim):
                    act = self.mod.act_word(hword, {mj: field_one(self.field)})
                    coeff = act.get(mi)
                    if not coeff:
                        continue
                    arg = ((j,) + btuple[:-1], mj)
                    xv = x.get(arg)
                    if xv:
                        vacc(out, (btuple, mi), c * coeff * xv)
        return out


# ---------------------------------------------------------------------------
# type C: M ox_H C^(ox n+1) for a module coalgebra
# ---------------------------------------------------------------------------


class TypeCInstance:
    """The coalgebra theory; specializing C = H, M = sigma-k-delta recovers
    the Connes-Moscovici instance (tested by explicit intertwiner).

    Level n is the quotient of M ox C^(ox n+1) by the span of
    m.h ox c~ - m ox h.c~ (diagonal action), computed by exact elimination;
    elements are reduced representatives on (m_index, c_tuple) keys.
    """

    family = "typeC"

    def __init__(self, caction: CoalgebraWithAction, mod: FinCoefModule, certify=True, index_bound=4):
        if (mod.act_side, mod.coact_side) != ("right", "left"):
            raise WrongSides("type C needs a right-action, left-coaction module")
        self.caction = caction
        self.mod = mod
        self.pres = caction.pres
        self.field = caction.coalg.field
        self.index_bound = index_bound
        self._levels = {}
        self._hview = None
        if certify:
            cert = caction.certify(index_bound)
            if not cert.ok:
                raise NotSAYD(f"not a module coalgebra: {cert.witness}")
            a1 = check_ayd(mod, "ayd", None, index_bound)
            if not a1.ok:
                raise NotSAYD(f"coefficients fail AYD: {a1.witness}")
            if not check_stability(mod).ok:
                raise NotSAYD("coefficients are not stable")

    def hview(self):
        if self._hview is None:
            self._hview = FiniteHopfView(self.pres)
        return self._hview

    def level_keys(self, n):
        return [
            (mi, key)
            for mi in range(self.mod.dim)
            for key in itertools.product(range(self.caction.coalg.dim), repeat=n + 1)
        ]

    def level_space(self, n):
        hit = self._levels.get(n)
        if hit is not None:
            return hit
        keys = self.level_keys(n)
        order = {k: i for i, k in enumerate(keys)}
        ech = Echelon()
        one = field_one(self.field)
        hbasis = self.hview().basis
        for hw in hbasis:
            if hw == EMPTY_WORD:
                continue
            for mi in range(self.mod.dim):
                mvec = self.mod.act_word(hw, {mi: one})
                for ckey in itertools.product(range(self.caction.coalg.dim), repeat=n + 1):
                    row = {}
                    for mj, c in mvec.items():
                        vacc(row, (mj, ckey), c)
                    for ck2, c in self.caction.diag_act_word(hw, ckey).items():
                        vacc(row, (mi, ck2), -c)
                    if row:
                        ech.insert(row, lambda k: order[k])
        pivots = set(ech.pivot_order)
        basis = [{k: one} for k in keys if k not in pivots]
        self._levels[n] = (keys, basis, ech)
        return self._levels[n]

    def level_basis(self, n):
        return self.level_space(n)[1]

    def reduce(self, n, x):
        _, _, ech = self.level_space(n)
        return ech.reduce(x)

    def residual(self, n, x):
        return {} if self.reduce(n, x) == x else {"unreduced": True}

    def face(self, n, i, x):
        if not 0 <= i <= n + 1:
            raise IndexOutOfRange(f"face {i} at level {n}")
        C = self.caction.coalg
        out = {}
        for (mi, ckey), c in x.items():
            if i <= n:
                for (a, b), d in C.delta[ckey[i]].items():
                    vacc(out, (mi, ckey[:i] + (a, b) + ckey[i + 1 :]), c * d)
            else:
                for mj, poly in self.mod.coaction[mi].items():
                    for (a, b), d in C.delta[ckey[0]].items():
                        last = {}
                        for w, cw in poly.terms.items():
                            for k, ck in self.caction.act_word(w, {a: field_one(self.field)}).items():
                                vacc(last, k, cw * ck)
                        for k, ck in last.items():
                            vacc(out, (mj, (b,) + ckey[1:] + (k,)), c * d * ck)
        return self.reduce(n + 1, out)

    def degeneracy(self, n, i, x):
        if n < 1 or not 0 <= i <= n - 1:
            raise IndexOutOfRange(f"degeneracy {i} at level {n}")
        C = self.caction.coalg
        out = {}
        for (mi, ckey), c in x.items():
            e = C.eps[ckey[i + 1]]
            if e:
                vacc(out, (mi, ckey[: i + 1] + ckey[i + 2 :]), c * e)
        return self.reduce(n - 1, out)

    def cyclic(self, n, x):
        out = {}
        for (mi, ckey), c in x.items():
            for mj, poly in self.mod.coaction[mi].items():
                last = {}
                for w, cw in poly.terms.items():
                    for k, ck in self.caction.act_word(w, {ckey[0]: field_one(self.field)}).items():
                        vacc(last, k, cw * ck)
                for k, ck in last.items():
                    vacc(out, (mj, ckey[1:] + (k,)), c * ck)
        return self.reduce(n, out)


# ---------------------------------------------------------------------------
# twisted (and plain) algebra cochains
# ---------------------------------------------------------------------------


class TwistedInstance:
    """Cochains on A^(ox n+1) twisted by an algebra automorphism.

    Levels are the automorphism-invariant functionals (the subcomplex on
    which the cyclic operator is periodic); the identity automorphism gives
    the standard cocyclic module of the algebra.
    """

    family = "twisted"

    def __init__(self, alg: FiniteAlgebra, auto_mat=None):
        self.alg = alg
        self.field = alg.field
        self.auto = auto_mat or identity_mats(alg)
        self._levels = {}

    def twist(self, vec):
        return mat_apply(self.auto, vec)

    def level_keys(self, n):
        return [key for key in itertools.product(range(self.alg.dim), repeat=n + 1)]

    def level_space(self, n):
        hit = self._levels.get(n)
        if hit is not None:
            return hit
        keys = self.level_keys(n)
        one = field_one(self.field)
        rows = []
        for key in keys:
            row = {}
            vecs = [self.twist({a: one}) for a in key]
            _expand_idx(row, vecs, one)
            vacc(row, key, -one)
            if row:
                rows.append(row)
        basis = nullspace(rows, keys, self.field)
        self._levels[n] = (keys, basis, rows)
        return self._levels[n]

    def level_basis(self, n):
        return self.level_space(n)[1]

    def residual(self, n, x):
        _, _, rows = self.level_space(n)
        out = {}
        for idx, row in enumerate(rows):
            s = field_zero(self.field)
            for k, c in row.items():
                xv = x.get(k)
                if xv:
                    s = s + c * xv
            if s:
                out[idx] = s
        return out

    def face(self, n, i, x):
        if not 0 <= i <= n + 1:
            raise IndexOutOfRange(f"face {i} at level {n}")
        A = self.alg
        one = field_one(self.field)
        out = {}
        for key in self.level_keys(n + 1):
            if i <= n:
                for k, c in A.mult[key[i]][key[i + 1]].items():
                    xv = x.get(key[:i] + (k,) + key[i + 2 :])
                    if xv:
                        vacc(out, key, c * xv)
            else:
                tw = self.twist({key[-1]: one})
                for a, ca in tw.items():
                    for k, c in A.mult[a][key[0]].items():
                        xv = x.get((k,) + key[1:-1])
                        if xv:
                            vacc(out, key, ca * c * xv)
        return out

    def degeneracy(self, n, i, x):
        if n < 1 or not 0 <= i <= n - 1:
            raise IndexOutOfRange(f"degeneracy {i} at level {n}")
        A = self.alg
        out = {}
        for key in self.level_keys(n - 1):
            for u, cu in A.unit_vec.items():
                xv = x.get(key[: i + 1] + (u,) + key[i + 1 :])
                if xv:
                    vacc(out, key, cu * xv)
        return out

    def cyclic(self, n, x):
        one = field_one(self.field)
        out = {}
        for key in self.level_keys(n):
            tw = self.twist({key[-1]: one})
            for a, ca in tw.items():
                xv = x.get((a,) + key[:-1])
                if xv:
                    vacc(out, key, ca * xv)
        return out


def identity_mats(alg: FiniteAlgebra):
    one = field_one(alg.field)
    return [{j: one} for j in range(alg.dim)]


# ---------------------------------------------------------------------------
# generic complex operators and the identity suite
# ---------------------------------------------------------------------------


def hochschild_b(inst, n, x):
    out = {}
    sign = 1
    for i in range(n + 2):
        for k, c in inst.face(n, i, x).items():
            vacc(out, k, c if sign > 0 else -c)
        sign = -sign
    return out


def bprime(inst, n, x):
    out = {}
    sign = 1
    for i in range(n + 1):
        for k, c in inst.face(n, i, x).items():
            vacc(out, k, c if sign > 0 else -c)
        sign = -sign
    return out


def lambda_op(inst, n, x):
    t = inst.cyclic(n, x)
    return t if n % 2 == 0 else {k: -c for k, c in t.items()}


def norm_op(inst, n, x):
    out = dict(x)
    cur = x
    for _ in range(n):
        cur = lambda_op(inst, n, cur)
        for k, c in cur.items():
            vacc(out, k, c)
    return out


class SuiteLine:
    def __init__(self, name, ok, witness=""):
        self.name = name
        self.ok = ok
        self.witness = witness

    def __repr__(self):
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}" + (
            f" [{self.witness}]" if self.witness else ""
        )


class SuiteReport:
    def __init__(self, lines):
        self.lines = lines

    @property
    def ok(self):
        return all(l.ok for l in self.lines)

    def __bool__(self):
        return self.ok

    def line(self, name):
        for l in self.lines:
            if l.name == name:
                return l
        raise KeyError(name)

    def __repr__(self):
        return "\n".join(repr(l) for l in self.lines)


def verify_cocyclic_axioms(inst, max_level, elements=None, rng=None, sample_budget=3) -> SuiteReport:
    """Every cosimplicial and cyclic operator identity, level by level.

    ``elements`` maps n -> list of level-n test vectors; by default the full
    level basis (exhaustive) for finite instances, or ``sample_budget``
    random exact elements per level when the instance provides sampling.
    """
    def probes(n):
        if elements is not None:
            return elements.get(n, [])
        if hasattr(inst, "sample_level") and getattr(inst, "_sampled", False):
            return [inst.sample_level(n, rng) for _ in range(sample_budget)]
        return inst.level_basis(n)

    lines = []

    def check(name, pairs):
        for x, lhs, rhs in pairs:
            if lhs != rhs:
                lines.append(SuiteLine(name, False, f"witness at {_short(x)}"))
                return
        lines.append(SuiteLine(name, True))

    # delta_j delta_i = delta_i delta_{j-1}, i < j
    pairs = []
    for n in range(0, max_level + 1):
        for x in probes(n):
            for j in range(1, n + 3):
                for i in range(0, j):
                    lhs = inst.face(n + 1, j, inst.face(n, i, x))
                    rhs = inst.face(n + 1, i, inst.face(n, j - 1, x))
                    pairs.append((x, lhs, rhs))
    check("cosimplicial-faces", pairs)

    # sigma_j sigma_i = sigma_i sigma_{j+1}, i <= j
    pairs = []
    for n in range(2, max_level + 2):
        for x in probes(n):
            for j in range(0, n - 1):
                for i in range(0, j + 1):
                    lhs = inst.degeneracy(n - 1, j, inst.degeneracy(n, i, x))
                    rhs = inst.degeneracy(n - 1, i, inst.degeneracy(n, j + 1, x))
                    pairs.append((x, lhs, rhs))
    check("cosimplicial-degeneracies", pairs)

    # sigma_j delta_i mixed identities
    pairs = []
    for n in range(0, max_level + 1):
        for x in probes(n):
            for i in range(0, n + 2):
                for j in range(0, n + 1):
                    lhs = inst.degeneracy(n + 1, j, inst.face(n, i, x))
                    if i < j:
                        rhs = inst.face(n - 1, i, inst.degeneracy(n, j - 1, x)) if n >= 1 else None
                    elif i in (j, j + 1):
                        rhs = dict(x)
                    else:
                        rhs = inst.face(n - 1, i - 1, inst.degeneracy(n, j, x)) if n >= 1 else None
                    if rhs is None:
                        continue
                    pairs.append((x, lhs, rhs))
    check("mixed-face-degeneracy", pairs)

    # tau_{n+1} delta_i = delta_{i-1} tau_n (1 <= i <= n+1); tau_{n+1} delta_0 = delta_{n+1}
    pairs = []
    for n in range(0, max_level + 1):
        for x in probes(n):
            for i in range(1, n + 2):
                lhs = inst.cyclic(n + 1, inst.face(n, i, x))
                rhs = inst.face(n, i - 1, inst.cyclic(n, x))
                pairs.append((x, lhs, rhs))
            lhs = inst.cyclic(n + 1, inst.face(n, 0, x))
            rhs = inst.face(n, n + 1, x)
            pairs.append((x, lhs, rhs))
    check("cyclic-face", pairs)

    # tau_n sigma_i = sigma_{i-1} tau_{n+1} (1 <= i <= n); tau_n sigma_0 = sigma_n tau_{n+1}^2
    pairs = []
    for n in range(0, max_level + 1):
        for x in probes(n + 1):
            for i in range(1, n + 1):
                lhs = inst.cyclic(n, inst.degeneracy(n + 1, i, x))
                rhs = inst.degeneracy(n + 1, i - 1, inst.cyclic(n + 1, x))
                pairs.append((x, lhs, rhs))
            lhs = inst.cyclic(n, inst.degeneracy(n + 1, 0, x))
            rhs = inst.degeneracy(n + 1, n, inst.cyclic(n + 1, inst.cyclic(n + 1, x)))
            pairs.append((x, lhs, rhs))
    check("cyclic-degeneracy", pairs)

    # tau_n^{n+1} = id
    pairs = []
    for n in range(0, max_level + 1):
        for x in probes(n):
            cur = dict(x)
            for _ in range(n + 1):
                cur = inst.cyclic(n, cur)
            pairs.append((x, cur, dict(x)))
    check("cyclic-periodicity", pairs)

    # operators land back in the level subspace (equivariance/colinearity)
    pairs = []
    for n in range(0, max_level + 1):
        for x in probes(n):
            for i in range(0, n + 2):
                y = inst.face(n, i, x)
                pairs.append((x, inst.residual(n + 1, y), {}))
            y = inst.cyclic(n, x)
            pairs.append((x, inst.residual(n, y), {}))
    check("operators-preserve-levels", pairs)

    return SuiteReport(lines)


def _short(x):
    items = sorted(x.items(), key=lambda kv: repr(kv[0]))[:2]
    return "{" + ", ".join(f"{k}: {v}" for k, v in items) + (", ..." if len(x) > 2 else "") + "}"


# ---------------------------------------------------------------------------
# invariant traces and the characteristic map
# ---------------------------------------------------------------------------


class TraceReport:
    def __init__(self, delta_invariant, sigma_trace, ibp, witness=None):
        self.delta_invariant = delta_invariant
        self.sigma_trace = sigma_trace
        self.ibp = ibp
        self.witness = witness

    @property
    def ok(self):
        return self.delta_invariant and self.sigma_trace and self.ibp

    def __repr__(self):
        return (
            f"TraceReport(delta_invariant={self.delta_invariant}, "
            f"sigma_trace={self.sigma_trace}, ibp={self.ibp})"
        )


def check_trace(tau, pair: ModularPair, action: AlgebraWithAction, index_bound=4) -> TraceReport:
    """delta-invariance, sigma-trace and integration-by-parts verdicts.

    tau is a functional on the algebra given as a coefficient dict.  When the
    sigma-trace property holds, delta-invariance and IBP are equivalent (the
    integration-by-parts lemma); callers may assert that equivalence.
    """
    pres, alg = action.pres, action.alg
    one = field_one(alg.field)

    def tval(vec):
        s = field_zero(alg.field)
        for k, c in vec.items():
            t = tau.get(k)
            if t:
                s = s + c * t
        return s

    sigma_vec = lambda a: action.act_word(pair.sigma, {a: one})
    delta_inv, sig, ibp = True, True, True
    witness = None
    hprobes = [(g,) for g in pres.gens(index_bound)]
    for a in range(alg.dim):
        for hw in hprobes:
            lhs = tval(action.act_word(hw, {a: one}))
            rhs = pair.delta.value_word(hw) * tau.get(a, field_zero(alg.field))
            if lhs != rhs:
                delta_inv = False
                witness = witness or f"delta-invariance at h={hw}, a={a}"
        for b in range(alg.dim):
            lhs = tval(alg.mult[a][b])
            rhs = tval(alg.mult_vec({b: one}, sigma_vec(a)))
            if lhs != rhs:
                sig = False
                witness = witness or f"sigma-trace at ({a},{b})"
            for hw in hprobes:
                lhs = tval(alg.mult_vec(action.act_word(hw, {a: one}), {b: one}))
                st = pres.twisted_antipode(pair.delta, NCPoly({hw: one}))
                rhs = tval(alg.mult_vec({a: one}, action.act_poly(st, {b: one})))
                if lhs != rhs:
                    ibp = False
                    witness = witness or f"IBP at h={hw}, ({a},{b})"
    return TraceReport(delta_inv, sig, ibp, witness)


def char_map(pair: ModularPair, action: AlgebraWithAction, tau, n, t) -> dict:
    """chi_tau: H^(ox n) -> functionals on A^(ox n+1).

    chi(h_1 ox ... ox h_n)(a_0, ..., a_n) = tau(a_0 h_1(a_1) ... h_n(a_n));
    the output is a value table over basis tuples (a plain-algebra cochain).
    """
    alg = action.alg
    one = field_one(alg.field)
    out = {}
    for key in itertools.product(range(alg.dim), repeat=n + 1):
        val = field_zero(alg.field)
        for words, c in t.items():
            v = {key[0]: one}
            for j, w in enumerate(words):
                v = alg.mult_vec(v, action.act_word(w, {key[j + 1]: one}))
            s = field_zero(alg.field)
            for k, cv in v.items():
                tv = tau.get(k)
                if tv:
                    s = s + cv * tv
            val = val + c * s
        if val:
            out[key] = val
    return out
