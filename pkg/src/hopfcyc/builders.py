"""Constructors for the algebras and Hopf algebras the engine works with.

Group algebras kG, enveloping algebras U(g), the Connes-Moscovici Hopf
algebra H_1 (with its lazily generated delta_n family), the quantum group
A(SL_q(2)) over QQ(q), crossed product algebras A >< H, crossed product
coalgebras H >< D, and bicrossed product Hopf algebras from factorizations
G = G1 G2 of finite groups.

Every Hopf builder certifies its output with the axiom checker before
returning; builders never hand back an uncertified presentation.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (
    JacobiFailure,
    MatchedPairViolation,
    NotAFactorization,
    NotAGroup,
    NotComoduleCoalgebra,
    NotModuleAlgebra,
)
from .finite import FiniteCoalgebra, FiniteHopfView, attach_finite_antipode_inverse
from .hopf import HopfPresentation, check_hopf_axioms
from .ncpoly import EMPTY_WORD, NCPoly, TensorElem
from .rewrite import RewriteSystem, RuleTemplate
from .scalars import QQ, QQ_Q, Q_GEN, coerce, field_one, field_zero


# ---------------------------------------------------------------------------
# finite groups
# ---------------------------------------------------------------------------


class FiniteGroupData:
    """Element labels, multiplication table (index-valued), identity index."""

    def __init__(self, labels, table, identity=0):
        self.labels = list(labels)
        self.table = [list(r) for r in table]
        self.identity = identity
        self.n = len(self.labels)
        ok, why = self._check_group()
        if not ok:
            raise NotAGroup(why)
        self.inverse = [None] * self.n
        for i in range(self.n):
            for j in range(self.n):
                if self.table[i][j] == self.identity:
                    self.inverse[i] = j

    def _check_group(self):
        n = self.n
        e = self.identity
        if len(self.table) != n or any(len(r) != n for r in self.table):
            return False, "table shape mismatch"
        for i in range(n):
            if self.table[e][i] != i or self.table[i][e] != i:
                return False, f"identity fails at {self.labels[i]}"
        for i in range(n):
            if e not in self.table[i]:
                return False, f"no inverse for {self.labels[i]}"
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if self.table[self.table[i][j]][k] != self.table[i][self.table[j][k]]:
                        return False, f"associativity fails at ({i},{j},{k})"
        return True, None

    def mul(self, i, j):
        return self.table[i][j]

    def label_index(self, label):
        return self.labels.index(label)


def cyclic_group(n: int) -> FiniteGroupData:
    labels = ["e"] + [f"g{k}" if k > 1 else "g" for k in range(1, n)]
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroupData(labels, table, 0)


def symmetric_group_3() -> FiniteGroupData:
    """S3 as permutations of {0,1,2}; labels are one-line notations."""
    import itertools

    perms = sorted(itertools.permutations(range(3)))
    idx = {p: i for i, p in enumerate(perms)}
    labels = ["p" + "".join(map(str, p)) for p in perms]
    compose = lambda p, q: tuple(p[q[k]] for k in range(3))
    table = [[idx[compose(p, q)] for q in perms] for p in perms]
    return FiniteGroupData(labels, table, idx[(0, 1, 2)])


def build_group_algebra(gd: FiniteGroupData, certify: bool = True) -> HopfPresentation:
    """kG with Delta(g) = g ox g, eps(g) = 1, S(g) = g^{-1}."""
    field = QQ
    e = gd.identity
    gens = [(gd.labels[i], None) for i in range(gd.n) if i != e]
    families = [(lbl, False) for lbl, _ in gens]
    pres = HopfPresentation(f"k[{'x'.join(gd.labels)}]", field, families, None, finite_hint=1)
    rs = RewriteSystem(field, pres.sort_key)
    one = field_one(field)
    lab_to_gen = {gd.labels[i]: (gd.labels[i], None) for i in range(gd.n) if i != e}

    def word_of(i):
        return EMPTY_WORD if i == e else (lab_to_gen[gd.labels[i]],)

    for i in range(gd.n):
        if i == e:
            continue
        for j in range(gd.n):
            if j == e:
                continue
            rs.add_rule(word_of(i) + word_of(j), NCPoly({word_of(gd.mul(i, j)): one}))
    pres.rs = rs
    for i in range(gd.n):
        if i == e:
            continue
        g = word_of(i)[0]
        pres.set_tables(
            g,
            TensorElem(2, {((g,), (g,)): one}),
            one,
            NCPoly({word_of(gd.inverse[i]): one}),
            NCPoly({word_of(gd.inverse[i]): one}),
        )
    pres.metadata["kind"] = "group_algebra"
    pres.metadata["group_labels"] = list(gd.labels)
    if certify:
        rep = check_hopf_axioms(pres, degree=2, n_random=10)
        if not rep.ok:
            raise NotAGroup(f"group algebra failed certification:\n{rep}")
    return pres


# ---------------------------------------------------------------------------
# Lie algebras and enveloping algebras
# ---------------------------------------------------------------------------


class LieData:
    """Basis labels and structure constants c[i][j][k] with [x_i, x_j] = sum c x_k."""

    def __init__(self, labels, brackets):
        self.labels = list(labels)
        self.n = len(self.labels)
        self.c = {}
        for (i, j, k), v in brackets.items():
            v = Fraction(v)
            if v:
                self.c[(i, j, k)] = v
        ok, why = self._check()
        if not ok:
            raise JacobiFailure(why)

    def bracket(self, i, j):
        return {k: v for (a, b, k), v in self.c.items() if a == i and b == j}

    def _check(self):
        n = self.n
        for i in range(n):
            for j in range(n):
                bij = self.bracket(i, j)
                bji = self.bracket(j, i)
                for k in set(bij) | set(bji):
                    if bij.get(k, Fraction(0)) != -bji.get(k, Fraction(0)):
                        return False, f"antisymmetry fails at ({i},{j})"
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    acc = {}
                    for m, v in self.bracket(j, k).items():
                        for l, w in self.bracket(i, m).items():
                            acc[l] = acc.get(l, Fraction(0)) + v * w
                    for m, v in self.bracket(k, i).items():
                        for l, w in self.bracket(j, m).items():
                            acc[l] = acc.get(l, Fraction(0)) + v * w
                    for m, v in self.bracket(i, j).items():
                        for l, w in self.bracket(k, m).items():
                            acc[l] = acc.get(l, Fraction(0)) + v * w
                    if any(acc.values()):
                        return False, f"Jacobi fails at ({i},{j},{k})"
        return True, None


def build_enveloping(ld: LieData, certify: bool = True) -> HopfPresentation:
    """U(g) with PBW rewriting x_j x_i -> x_i x_j + [x_j, x_i] for j > i."""
    field = QQ
    families = [(lbl, False) for lbl in ld.labels]
    pres = HopfPresentation(f"U({','.join(ld.labels)})", field, families, None)
    rs = RewriteSystem(field, pres.sort_key)
    one = field_one(field)
    gens = [(lbl, None) for lbl in ld.labels]
    for j in range(ld.n):
        for i in range(j):
            rhs = NCPoly({(gens[i], gens[j]): one})
            for k, v in ld.bracket(j, i).items():
                rhs = rhs + NCPoly({(gens[k],): coerce(field, v)})
            rs.add_rule((gens[j], gens[i]), rhs)
    pres.rs = rs
    zero = field_zero(field)
    for g in gens:
        prim = TensorElem(
            2, {((g,), EMPTY_WORD): one, (EMPTY_WORD, (g,)): one}
        )
        pres.set_tables(g, prim, zero, NCPoly({(g,): -one}), NCPoly({(g,): -one}))
    pres.metadata["kind"] = "enveloping"
    if certify:
        rep = check_hopf_axioms(pres, degree=3, n_random=15)
        if not rep.ok:
            raise JacobiFailure(f"enveloping algebra failed certification:\n{rep}")
    return pres


def affine_line_lie() -> LieData:
    """[Y, X] = X with order X < Y (PBW normal form X^a Y^b)."""
    return LieData(["X", "Y"], {(1, 0, 0): 1, (0, 1, 0): -1})


def sl2_lie() -> LieData:
    """sl2 basis e < f < h: [e,f] = h, [h,e] = 2e, [h,f] = -2f."""
    return LieData(
        ["e", "f", "h"],
        {
            (0, 1, 2): 1,
            (1, 0, 2): -1,
            (2, 0, 0): 2,
            (0, 2, 0): -2,
            (2, 1, 1): -2,
            (1, 2, 1): 2,
        },
    )


# ---------------------------------------------------------------------------
# the Connes-Moscovici Hopf algebra H_1
# ---------------------------------------------------------------------------


def build_cm_h1(certify: bool = True, certify_index_bound: int = 4) -> HopfPresentation:
    """H_1: generators delta_n (n >= 1), X, Y with the codimension-one relations.

    Monomial order delta_1 < delta_2 < ... < X < Y; normal forms are
    delta-monomial times X^a Y^b.  The delta_n family is lazy: coproducts and
    antipodes for n >= 2 are generated by the commutator recursions forced by
    delta_{n+1} = [X, delta_n] and memoized.
    """
    field = QQ
    families = [("delta", True), ("X", False), ("Y", False)]
    pres = HopfPresentation("H1", field, families, None)
    weights = {"delta": None, "X": 1, "Y": 0}

    def weight(g):
        fam, idx = g
        return idx if fam == "delta" else weights[fam]

    rs = RewriteSystem(field, pres.sort_key, weight=weight)
    one = field_one(field)
    X, Y = ("X", None), ("Y", None)
    d = lambda n: ("delta", n)

    rs.add_rule((Y, X), NCPoly({(X, Y): one, (X,): one}))
    rs.add_template(
        RuleTemplate(
            X,
            "delta",
            lambda g1, g2: NCPoly({(d(g2[1]), X): one, (d(g2[1] + 1),): one}),
            name="X*delta_n",
        )
    )
    rs.add_template(
        RuleTemplate(
            Y,
            "delta",
            lambda g1, g2: NCPoly({(d(g2[1]), Y): one, (d(g2[1]),): coerce(field, g2[1])}),
            name="Y*delta_n",
        )
    )
    rs.add_template(
        RuleTemplate(
            "delta",
            "delta",
            lambda g1, g2: NCPoly({(g2, g1): one}),
            guard=lambda g1, g2: g1[1] > g2[1],
            name="delta_k*delta_l",
        )
    )
    pres.rs = rs

    zero = field_zero(field)

    def prim(g):
        return TensorElem(2, {((g,), EMPTY_WORD): one, (EMPTY_WORD, (g,)): one})

    pres.set_tables(Y, prim(Y), zero, NCPoly({(Y,): -one}), NCPoly({(Y,): -one}))
    dX = prim(X) + TensorElem(2, {((d(1),), (Y,)): one})
    SX = NCPoly({(X,): -one, (d(1), Y): one})
    # S^{-1}(X) = Y delta_1 - X in normal form
    SinvX = NCPoly({(X,): -one, (d(1), Y): one, (d(1),): one})
    pres.set_tables(X, dX, zero, SX, SinvX)

    def delta_fn(n):
        if n == 1:
            return prim(d(1))
        a = pres.delta_gen(X)
        b = pres.delta_gen(d(n - 1))
        return pres.tensor_mul(a, b) - pres.tensor_mul(b, a)

    def S_fn(n):
        if n == 1:
            return NCPoly({(d(1),): -one})
        a = pres.antipode_gen(d(n - 1))
        b = pres.antipode_gen(X)
        return pres.mul(a, b) - pres.mul(b, a)

    def Sinv_fn(n):
        if n == 1:
            return NCPoly({(d(1),): -one})
        a = pres.antipode_inv_gen(d(n - 1))
        b = pres.antipode_inv_gen(X)
        return pres.mul(a, b) - pres.mul(b, a)

    pres.set_family_tables("delta", delta_fn, lambda n: zero, S_fn, Sinv_fn)
    pres.metadata["kind"] = "cm_h1"
    if certify:
        rep = check_hopf_axioms(pres, degree=3, n_random=12, index_bound=certify_index_bound)
        if not rep.ok:
            raise AssertionError(f"H1 failed certification:\n{rep}")
    return pres


# ---------------------------------------------------------------------------
# A(SL_q(2))
# ---------------------------------------------------------------------------


def build_slq2(certify: bool = True) -> HopfPresentation:
    """The function Hopf algebra of quantum SL(2) over QQ(q).

    Generator order x < u < v < y; the two unit relations are oriented to
    rewrite the deglex-higher words: u*v -> q*x*y - q and y*x -> q*u*v + 1.
    """
    field = QQ_Q
    families = [("x", False), ("u", False), ("v", False), ("y", False)]
    pres = HopfPresentation("A(SLq2)", field, families, None)
    rs = RewriteSystem(field, pres.sort_key)
    one = field_one(field)
    q = Q_GEN
    qi = q.inv()
    x, u, v, y = ("x", None), ("u", None), ("v", None), ("y", None)

    rs.add_rule((u, x), NCPoly({(x, u): q}))
    rs.add_rule((v, x), NCPoly({(x, v): q}))
    rs.add_rule((y, u), NCPoly({(u, y): q}))
    rs.add_rule((y, v), NCPoly({(v, y): q}))
    rs.add_rule((v, u), NCPoly({(u, v): one}))
    rs.add_rule((u, v), NCPoly({(x, y): q, EMPTY_WORD: -q}))
    rs.add_rule((y, x), NCPoly({(u, v): q, EMPTY_WORD: one}))
    pres.rs = rs

    zero = field_zero(field)
    T = lambda pairs: TensorElem(2, {k: one for k in pairs})
    pres.set_tables(x, T([((x,), (x,)), ((u,), (v,))]), one, NCPoly({(y,): one}), NCPoly({(y,): one}))
    pres.set_tables(u, T([((x,), (u,)), ((u,), (y,))]), zero, NCPoly({(u,): -q}), NCPoly({(u,): -qi}))
    pres.set_tables(v, T([((v,), (x,)), ((y,), (v,))]), zero, NCPoly({(v,): -qi}), NCPoly({(v,): -q}))
    pres.set_tables(y, T([((v,), (u,)), ((y,), (y,))]), one, NCPoly({(x,): one}), NCPoly({(x,): one}))
    pres.metadata["kind"] = "slq2"
    pres.metadata["rule_orientation"] = "u*v -> q*x*y - q; y*x -> q*u*v + 1 (deglex x<u<v<y)"
    if certify:
        rep = check_hopf_axioms(pres, degree=3, n_random=15)
        if not rep.ok:
            raise AssertionError(f"A(SLq2) failed certification:\n{rep}")
    return pres


# ---------------------------------------------------------------------------
# crossed product algebra A >< H
# ---------------------------------------------------------------------------


class AlgebraPresentation:
    """A presented associative algebra: alphabet + rewrite system, no coalgebra."""

    def __init__(self, name, field, families, rs):
        self.name = name
        self.field = field
        self.families = list(families)
        self._fam_pos = {f: i for i, (f, _) in enumerate(self.families)}
        self.rs = rs
        self.metadata = {}

    def sort_key(self, g):
        fam, idx = g
        return (self._fam_pos[fam], idx if idx is not None else 0)

    def gens(self):
        return [(f, None) for f, _ in self.families]

    def normalize(self, p):
        return self.rs.normalize(p)

    def mul(self, p, q):
        return self.rs.mul(p, q)


class HopfAction:
    """Left action of a presented Hopf algebra on a presented algebra.

    ``table[(h_gen, a_gen)]`` is the image h(a) as an A-polynomial; words of
    H act by composing generator actions, and a generator acts on an A-word
    through the coproduct splitting h(a b) = h^(1)(a) h^(2)(b).
    """

    def __init__(self, hopf: HopfPresentation, alg: AlgebraPresentation, table):
        self.hopf = hopf
        self.alg = alg
        self.table = dict(table)
        self._memo = {}

    def act_gen_word(self, g, aw) -> NCPoly:
        key = (g, aw)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if len(aw) == 0:
            out = self.alg.rs.normalize(
                NCPoly({EMPTY_WORD: field_one(self.alg.field)}).scale(self.hopf.eps_gen(g))
            )
        elif len(aw) == 1:
            out = self.alg.rs.normalize(self.table[(g, aw[0])])
        else:
            head, tail = aw[:1], aw[1:]
            out = NCPoly.zero()
            for (w1, w2), c in self.hopf.delta_gen(g).terms.items():
                p1 = self.act_word_poly(w1, NCPoly({head: field_one(self.alg.field)}))
                p2 = self.act_word_poly(w2, NCPoly({tail: field_one(self.alg.field)}))
                out = out + self.alg.mul(p1, p2).scale(c)
        self._memo[key] = out
        return out

    def act_gen_poly(self, g, p: NCPoly) -> NCPoly:
        out = NCPoly.zero()
        for w, c in p.terms.items():
            out = out + self.act_gen_word(g, w).scale(c)
        return out

    def act_word_poly(self, hw, p: NCPoly) -> NCPoly:
        for g in reversed(hw):
            p = self.act_gen_poly(g, p)
        return p

    def certify_module_algebra(self, probe_degree: int = 2, index_bound: int = 3):
        """h(ab) = h^(1)(a) h^(2)(b) and h(1) = eps(h) 1 on generator probes."""
        one = field_one(self.alg.field)
        agens = [w for w in [(g,) for g in self.alg.gens()]]
        for g in self.hopf.gens(index_bound):
            got = self.act_gen_word(g, EMPTY_WORD)
            expect = self.alg.normalize(NCPoly({EMPTY_WORD: self.hopf.eps_gen(g)}))
            if got != expect:
                return False, f"h(1) != eps(h)1 at h = {g}"
            for a in agens:
                for b in agens:
                    ab = self.alg.mul(NCPoly({a: one}), NCPoly({b: one}))
                    lhs = self.act_gen_poly(g, ab)
                    rhs = NCPoly.zero()
                    for (w1, w2), c in self.hopf.delta_gen(g).terms.items():
                        p1 = self.act_word_poly(w1, NCPoly({a: one}))
                        p2 = self.act_word_poly(w2, NCPoly({b: one}))
                        rhs = rhs + self.alg.mul(p1, p2).scale(c)
                    if lhs != rhs:
                        return False, f"h(ab) fails at h={g}, a={a}, b={b}"
        return True, None


def crossed_product_algebra(action: HopfAction, certify: bool = True) -> AlgebraPresentation:
    """A >< H with product (a ox g)(b ox h) = a g^(1)(b) ox g^(2) h.

    A-letters precede H-letters; the straightening rules g*a -> sum
    g^(1)(a) ox g^(2) realize the smash product relations.
    """
    ok, why = action.certify_module_algebra()
    if not ok:
        raise NotModuleAlgebra(why)
    alg, hopf = action.alg, action.hopf
    field = alg.field
    if hopf.field != field:
        raise NotModuleAlgebra("field mismatch between algebra and Hopf algebra")
    families = list(alg.families) + list(hopf.families)
    out = AlgebraPresentation(f"{alg.name}><{hopf.name}", field, families, None)
    rs = RewriteSystem(field, out.sort_key)
    for r in alg.rs.rules:
        rs.add_rule(r.lhs, r.rhs)
    for t in alg.rs.templates:
        rs.add_template(t)
    for r in hopf.rs.rules:
        rs.add_rule(r.lhs, r.rhs)
    for t in hopf.rs.templates:
        rs.add_template(t)
    one = field_one(field)
    for g in hopf.gens():
        for a in alg.gens():
            rhs = NCPoly.zero()
            for (w1, w2), c in hopf.delta_gen(g).terms.items():
                img = action.act_word_poly(w1, NCPoly({(a,): one}))
                rhs = rhs + img.free_mul(NCPoly({w2: one})).scale(c)
            rs.add_rule((g, a), rs.normalize(rhs))
    out.rs = rs
    out.metadata["kind"] = "crossed_product_algebra"
    if certify:
        # associativity on generator triples; unit is the empty word
        gens = [(g,) for g in out.gens()]
        for a in gens:
            for b in gens:
                for c in gens:
                    pa, pb, pc = (NCPoly({w: one}) for w in (a, b, c))
                    if out.mul(out.mul(pa, pb), pc) != out.mul(pa, out.mul(pb, pc)):
                        raise NotModuleAlgebra(f"crossed product not associative at {a},{b},{c}")
    return out


# ---------------------------------------------------------------------------
# crossed product coalgebra H >< D
# ---------------------------------------------------------------------------


class ComoduleCoalgebraData:
    """Finite coalgebra D with a right H-coaction rho(d) = d^(0) ox d^(1).

    The coaction is stored in H-basis coordinates: ``coaction[i]`` maps
    (j, h_index) -> scalar.  ``certify`` checks the comodule axioms and the
    right comodule-coalgebra compatibilities exhaustively.
    """

    def __init__(self, hview: FiniteHopfView, coalg: FiniteCoalgebra, coaction):
        self.hview = hview
        self.coalg = coalg
        self.coaction = coaction

    def certify(self):
        ok, why = self.coalg.check_coalgebra()
        if not ok:
            raise NotComoduleCoalgebra(why)
        H, D = self.hview, self.coalg
        zero = field_zero(D.field)
        one = field_one(D.field)
        for i in range(D.dim):
            # comodule: (I ox Delta_H) rho = (rho ox I) rho;  (I ox eps) rho = id
            lhs, rhs = {}, {}
            for (j, b), c in self.coaction[i].items():
                for (b1, b2), d in H.delta(b).items():
                    key = (j, b1, b2)
                    lhs[key] = lhs.get(key, zero) + c * d
            for (j, b), c in self.coaction[i].items():
                for (k, b1), d in self.coaction[j].items():
                    key = (k, b1, b)
                    rhs[key] = rhs.get(key, zero) + c * d
            if {k: v for k, v in lhs.items() if v} != {k: v for k, v in rhs.items() if v}:
                raise NotComoduleCoalgebra(f"comodule coassociativity fails at {D.labels[i]}")
            cnt = {}
            for (j, b), c in self.coaction[i].items():
                cnt[j] = cnt.get(j, zero) + c * H.eps(b)
            if {k: v for k, v in cnt.items() if v} != {i: one}:
                raise NotComoduleCoalgebra(f"comodule counit fails at {D.labels[i]}")
            # comodule-coalgebra: Delta_D and eps_D are H-comodule maps
            lhs, rhs = {}, {}
            for (j, k), c in D.delta[i].items():
                for (j0, b1), d1 in self.coaction[j].items():
                    for (k0, b2), d2 in self.coaction[k].items():
                        for b, m in H.mult(b1, b2).items():
                            key = (j0, k0, b)
                            lhs[key] = lhs.get(key, zero) + c * d1 * d2 * m
            for (j, b), c in self.coaction[i].items():
                for (a, bb), d in D.delta[j].items():
                    key = (a, bb, b)
                    rhs[key] = rhs.get(key, zero) + c * d
            if {k: v for k, v in lhs.items() if v} != {k: v for k, v in rhs.items() if v}:
                raise NotComoduleCoalgebra(f"Delta not colinear at {D.labels[i]}")
            acc = {}
            for (j, b), c in self.coaction[i].items():
                acc[b] = acc.get(b, zero) + c * D.eps[j]
            expect = {H.unit_index: D.eps[i]} if D.eps[i] else {}
            if {k: v for k, v in acc.items() if v} != expect:
                raise NotComoduleCoalgebra(f"eps not colinear at {D.labels[i]}")
        return True


def co_conjugation_coaction(hview: FiniteHopfView):
    """Right co-conjugation d -> d^(2) ox S(d^(1)) d^(3) of H on itself."""
    out = []
    zero = field_zero(hview.field)
    for i in range(hview.dim):
        acc = {}
        for (a, bc), c in hview.delta(i).items():
            for (b, k), d in hview.delta(bc).items():
                # slots: a = d^(1), b = d^(2), k = d^(3)
                for s, cs in hview.antipode(a).items():
                    for m, cm in hview.mult(s, k).items():
                        key = (b, m)
                        acc[key] = acc.get(key, zero) + c * d * cs * cm
        out.append({k: v for k, v in acc.items() if v})
    return out


def trivial_right_coaction(hview: FiniteHopfView, dim: int):
    return [{(i, hview.unit_index): field_one(hview.field)} for i in range(dim)]


def crossed_product_coalgebra(data: ComoduleCoalgebraData, certify: bool = True) -> FiniteCoalgebra:
    """H >< D on basis h ox d with the crossed coproduct.

    Delta(h ox d) = (h^(1) ox (d^(1))^(0)) ox (h^(2) (d^(1))^(1) ox d^(2)),
    eps(h ox d) = eps(d) eps(h).
    """
    data.certify()
    H, D = data.hview, data.coalg
    zero = field_zero(D.field)
    labels = [f"{hl}|{dl}" for hl in range(H.dim) for dl in D.labels]
    dim = H.dim * D.dim
    pair = lambda b, i: b * D.dim + i
    delta = []
    for b in range(H.dim):
        for i in range(D.dim):
            acc = {}
            for (b1, b2), ch in H.delta(b).items():
                for (j, k), cd in D.delta[i].items():
                    for (j0, bb), cc in data.coaction[j].items():
                        for m, cm in H.mult(b2, bb).items():
                            key = (pair(b1, j0), pair(m, k))
                            acc[key] = acc.get(key, zero) + ch * cd * cc * cm
            delta.append({k: v for k, v in acc.items() if v})
    eps = [D.eps[i] * H.eps(b) for b in range(H.dim) for i in range(D.dim)]
    out = FiniteCoalgebra(D.field, labels, delta, eps)
    if certify:
        ok, why = out.check_coalgebra()
        if not ok:
            raise NotComoduleCoalgebra(f"crossed product coalgebra failed: {why}")
    return out


# ---------------------------------------------------------------------------
# factorizations and bicrossed products
# ---------------------------------------------------------------------------


class FactorizationData:
    """G = G1 G2 with unique factorization; derives the matched-pair actions.

    For g in G1 and h in G2 the product g h refactors uniquely as h' g' with
    h' in G2, g' in G1; then g |> h := h' is a left action of G1 on G2 and
    g <| h := g' a right action of G2 on G1.
    """

    def __init__(self, gd: FiniteGroupData, g1_labels, g2_labels):
        self.gd = gd
        self.g1 = [gd.label_index(l) for l in g1_labels]
        self.g2 = [gd.label_index(l) for l in g2_labels]
        e = gd.identity
        for sub, name in ((self.g1, "G1"), (self.g2, "G2")):
            if e not in sub:
                raise NotAFactorization(f"{name} misses the identity")
            for i in sub:
                for j in sub:
                    if gd.mul(i, j) not in sub:
                        raise NotAFactorization(f"{name} not closed under product")
                if gd.inverse[i] not in sub:
                    raise NotAFactorization(f"{name} not closed under inverse")
        if set(self.g1) & set(self.g2) != {e}:
            raise NotAFactorization("G1 and G2 intersect beyond the identity")
        if len(self.g1) * len(self.g2) != gd.n:
            raise NotAFactorization("|G1||G2| != |G|")
        seen = {}
        for a in self.g1:
            for b in self.g2:
                p = gd.mul(a, b)
                if p in seen:
                    raise NotAFactorization("factorization g = g1 g2 not unique")
                seen[p] = (a, b)
        self.factor = seen  # g -> (g1, g2)
        # refactor products g*h (g in G1, h in G2) as h' g' with h' in G2, g' in G1
        seen2 = {}
        for b in self.g2:
            for a in self.g1:
                p = gd.mul(b, a)
                if p in seen2:
                    raise NotAFactorization("reverse factorization g = g2 g1 not unique")
                seen2[p] = (b, a)
        self.refactor = seen2  # g -> (g2-part, g1-part)

    def act_left(self, g, h):
        """g |> h in G2 for g in G1, h in G2."""
        return self.refactor[self.gd.mul(g, h)][0]

    def act_right(self, g, h):
        """g <| h in G1 for g in G1, h in G2."""
        return self.refactor[self.gd.mul(g, h)][1]

    def check_matched_pair(self):
        """The five compatibility conditions on all basis pairs (u, f).

        Checked on the raw model U = kG1 (grouplike basis), F = F(G2)
        (delta-function basis); failures raise MatchedPairViolation with the
        condition index 1..5.
        """
        gd, G1, G2 = self.gd, self.g1, self.g2
        e = gd.identity
        # 1: eps(u(f)) = eps(u) eps(f); u(f_h) = f_{u|>h}
        for g in G1:
            for h in G2:
                if (self.act_left(g, h) == e) != (h == e):
                    raise MatchedPairViolation(1, f"at ({gd.labels[g]},{gd.labels[h]})")
        # 2: Delta_F(u(f)) = (u1)^0(f1) ox (u1)^1 (u2(f2))
        for g in G1:
            for h in G2:
                lhs = {}
                gh = self.act_left(g, h)
                for h1 in G2:
                    for h2 in G2:
                        if gd.mul(h1, h2) == gh:
                            lhs[(h1, h2)] = lhs.get((h1, h2), 0) + 1
                rhs = {}
                for h1 in G2:
                    for h2 in G2:
                        if gd.mul(h1, h2) != h:
                            continue
                        k = self.act_left(g, h2)
                        a = self.act_left(self.act_right(g, k), h1)
                        rhs[(a, k)] = rhs.get((a, k), 0) + 1
                if lhs != rhs:
                    raise MatchedPairViolation(2, f"at ({gd.labels[g]},{gd.labels[h]})")
        # 3: rho(1) = 1 ox 1; rho(g) = sum (g<|k) ox f_k always hits e at k=e
        for g in [e]:
            if self.act_right(g, e) != e:
                raise MatchedPairViolation(3)
        # 4: rho(uv) = (u1)^0 v^0 ox (u1)^1 (u2(v^1))
        for g in G1:
            for gp in G1:
                lhs = {}
                for k in G2:
                    lhs[(self.act_right(gd.mul(g, gp), k), k)] = 1
                rhs = {}
                for l in G2:
                    gl = self.act_left(gp, l)
                    a = self.act_right(g, gl)
                    b = self.act_right(gp, l)
                    rhs[(gd.mul(a, b), l)] = rhs.get((gd.mul(a, b), l), 0) + 1
                if lhs != rhs:
                    raise MatchedPairViolation(4, f"at ({gd.labels[g]},{gd.labels[gp]})")
        # 5: (u2)^0 ox (u1(f))(u2)^1 = (u1)^0 ox (u1)^1 (u2(f))
        for g in G1:
            for h in G2:
                lhs, rhs = {}, {}
                gh = self.act_left(g, h)
                for k in G2:
                    if k == gh:
                        lhs[(self.act_right(g, k), k)] = 1
                    if k == gh:
                        rhs[(self.act_right(g, k), k)] = 1
                if lhs != rhs:
                    raise MatchedPairViolation(5, f"at ({gd.labels[g]},{gd.labels[h]})")
        return True


def bicrossed_from_factorization(fd: FactorizationData, certify: bool = True) -> HopfPresentation:
    """The bicrossed product Hopf algebra F(G2) >< k G1.

    Basis f_h ox g of dimension |G1| |G2|; the presentation drops the
    idempotent f_e (it equals 1 minus the sum of the others).  The antipode
    follows S(f ox u) = (1 ox S(u^(0))) (S(f u^(1)) ox 1); all axioms are
    certified exhaustively on the finite basis.
    """
    fd.check_matched_pair()
    gd = fd.gd
    e = gd.identity
    field = QQ
    one = field_one(field)
    f_fams = [(f"f_{gd.labels[h]}", False) for h in fd.g2 if h != e]
    u_fams = [(gd.labels[g], False) for g in fd.g1 if g != e]
    name = f"F({len(fd.g2)})><k{len(fd.g1)}"
    pres = HopfPresentation(name, field, f_fams + u_fams, None, finite_hint=2)
    rs = RewriteSystem(field, pres.sort_key)

    fgen = {h: (f"f_{gd.labels[h]}", None) for h in fd.g2 if h != e}
    ugen = {g: (gd.labels[g], None) for g in fd.g1 if g != e}

    def fpoly(h):
        """f_h as an NCPoly; f_e = 1 - sum of the rest."""
        if h != e:
            return NCPoly({(fgen[h],): one})
        out = NCPoly({EMPTY_WORD: one})
        for k in fd.g2:
            if k != e:
                out = out + NCPoly({(fgen[k],): -one})
        return out

    def uword(g):
        return EMPTY_WORD if g == e else (ugen[g],)

    for h in fd.g2:
        if h == e:
            continue
        for k in fd.g2:
            if k == e:
                continue
            rhs = NCPoly({(fgen[h],): one}) if h == k else NCPoly.zero()
            rs.add_rule((fgen[h], fgen[k]), rhs)
    for g in fd.g1:
        if g == e:
            continue
        for h in fd.g2:
            if h == e:
                continue
            gh = fd.act_left(g, h)
            rs.add_rule((ugen[g], fgen[h]), fpoly(gh).free_mul(NCPoly({uword(g): one})))
        for gp in fd.g1:
            if gp == e:
                continue
            rs.add_rule((ugen[g], ugen[gp]), NCPoly({uword(gd.mul(g, gp)): one}))
    pres.rs = rs

    zero = field_zero(field)
    # coalgebra tables
    for h in fd.g2:
        if h == e:
            continue
        acc = TensorElem.zero(2)
        for h1 in fd.g2:
            for h2 in fd.g2:
                if gd.mul(h1, h2) == h:
                    acc = acc + TensorElem.from_poly(fpoly(h1)).tensor(
                        TensorElem.from_poly(fpoly(h2))
                    )
        pres.set_tables(fgen[h], acc, zero, fpoly(gd.inverse[h]))
    for g in fd.g1:
        if g == e:
            continue
        acc = TensorElem.zero(2)
        for h in fd.g2:
            right = fpoly(h).free_mul(NCPoly({uword(g): one}))
            left = NCPoly({uword(fd.act_right(g, h)): one})
            acc = acc + TensorElem.from_poly(left).tensor(TensorElem.from_poly(right))
        spoly = NCPoly.zero()
        for h in fd.g2:
            a = gd.inverse[fd.act_right(g, h)]
            spoly = spoly + fpoly(fd.act_left(a, gd.inverse[h])).free_mul(
                NCPoly({uword(a): one})
            )
        pres.set_tables(ugen[g], pres.tensor_normalize(acc), one, rs.normalize(spoly))
    pres.metadata["kind"] = "bicrossed"
    if certify:
        rep = check_hopf_axioms(pres, degree=2, n_random=10)
        if not rep.ok:
            raise MatchedPairViolation(0, f"bicrossed product failed axioms:\n{rep}")
        attach_finite_antipode_inverse(pres)
    return pres


# ---------------------------------------------------------------------------
# the trivial Hopf algebra k
# ---------------------------------------------------------------------------


def build_trivial(field=QQ) -> HopfPresentation:
    """The ground field as a Hopf algebra (no generators)."""
    pres = HopfPresentation("k", field, [], None, finite_hint=0)
    pres.rs = RewriteSystem(field, pres.sort_key)
    pres.metadata["kind"] = "trivial"
    return pres
