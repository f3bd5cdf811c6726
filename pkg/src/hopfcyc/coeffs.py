"""Finite-dimensional coefficient modules and the symmetry-type certifiers.

A :class:`FinCoefModule` carries an H-action by exact matrices (one per
generator, extended to all of H through the rewrite system; relation respect
is re-verified as matrix identities at load time) and an H-coaction with
normal-form NCPoly coefficients, each structure tagged with its side.

The Yetter-Drinfeld and anti-Yetter-Drinfeld compatibilities are checked
exhaustively over generator probes and basis vectors.  The antipode power in
the twisted slot is an explicit parameter: the source material prints the
same formula for both YD and AYD while stating they differ by S vs S^{-1},
so each (kind, sides) combination carries the default power that makes the
headline one-dimensional correspondence MPI <-> SAYD come out true, and the
S^2 = id cases (group algebras, enveloping algebras) are insensitive to it.

Matrix convention: ``mat[j]`` is the image of basis vector j as a sparse
column dict, for both left actions (v -> h.v) and right actions (v -> v.h).
"""

from __future__ import annotations

from .errors import CertMismatch, NotGrouplike, NotInvolutive, SidesMismatch
from .hopf import Character, HopfPresentation, ModularPair, check_mpi
from .ncpoly import EMPTY_WORD, NCPoly, TensorElem, word_str
from .scalars import field_one, field_zero


def mat_apply(mat, vec: dict) -> dict:
    out = {}
    for j, c in vec.items():
        col = mat[j]
        for i, m in col.items():
            s = out.get(i)
            s = m * c if s is None else s + m * c
            if s:
                out[i] = s
            elif i in out:
                del out[i]
    return out


def identity_mat(dim, field):
    one = field_one(field)
    return [{j: one} for j in range(dim)]


class SymmetryCertificate:
    def __init__(self, kind, ok, witness=None, convention=None):
        self.kind = kind
        self.ok = ok
        self.witness = witness
        self.convention = convention

    def __bool__(self):
        return self.ok

    def __repr__(self):
        tail = "" if self.ok else f" witness={self.witness}"
        conv = f" ({self.convention})" if self.convention else ""
        return f"SymmetryCertificate({self.kind}{conv}: {'PASS' if self.ok else 'FAIL'}{tail})"


class FinCoefModule:
    def __init__(self, pres: HopfPresentation, dim, action, coaction, act_side="left", coact_side="left"):
        """action: dict mapping a generator tuple or a family name to a matrix;
        coaction: list over basis index i of dicts j -> NCPoly coefficient."""
        if act_side not in ("left", "right") or coact_side not in ("left", "right"):
            raise SidesMismatch(f"bad sides ({act_side},{coact_side})")
        self.pres = pres
        self.dim = dim
        self.field = pres.field
        self.action = dict(action)
        self.coaction = [dict(r) for r in coaction]
        self.act_side = act_side
        self.coact_side = coact_side

    # -- action -------------------------------------------------------------

    def act_mat(self, g):
        m = self.action.get(g)
        if m is None:
            m = self.action[g[0]]
            if callable(m):
                m = m(g[1])
        return m

    def act_word(self, w, vec: dict) -> dict:
        letters = reversed(w) if self.act_side == "left" else w
        for g in letters:
            vec = mat_apply(self.act_mat(g), vec)
        return vec

    def act_poly(self, p: NCPoly, vec: dict) -> dict:
        out = {}
        for w, c in p.terms.items():
            for i, s in self.act_word(w, vec).items():
                t = out.get(i)
                t = s * c if t is None else t + s * c
                if t:
                    out[i] = t
                elif i in out:
                    del out[i]
        return out

    def coact(self, vec: dict) -> dict:
        """Coaction of a vector, as keys (word, j) -> scalar (H-leg first)."""
        out = {}
        for i, c in vec.items():
            for j, poly in self.coaction[i].items():
                for w, pc in poly.terms.items():
                    key = (w, j)
                    s = out.get(key)
                    s = pc * c if s is None else s + pc * c
                    if s:
                        out[key] = s
                    elif key in out:
                        del out[key]
        return out

    # -- structural validation ------------------------------------------------

    def validate(self, index_bound: int = 4):
        """Action respects relations; coaction is coassociative and counital."""
        pres = self.pres
        one = field_one(self.field)
        for r in pres.rs._instantiated_rules(index_bound):
            for j in range(self.dim):
                v = {j: one}
                lhs = self.act_word(r.lhs, v)
                rhs = {}
                for w, c in r.rhs.terms.items():
                    for i, s in self.act_word(w, v).items():
                        rhs[i] = rhs.get(i, field_zero(self.field)) + s * c
                rhs = {i: s for i, s in rhs.items() if s}
                if lhs != rhs:
                    return False, f"action breaks rule {word_str(r.lhs)} on basis {j}"
        for i in range(self.dim):
            # coassociativity in coordinates (i, k): for a left comodule
            # Delta(c_ik) = sum_j c_ij ox c_jk; for a right comodule
            # Delta(c_ik) = sum_j c_jk ox c_ij.
            for k in range(self.dim):
                c_ik = self.coaction[i].get(k, NCPoly.zero())
                lhs = pres.tensor_normalize(pres.delta_poly(c_ik))
                rhs = lhs - lhs
                for j, c_ij in self.coaction[i].items():
                    c_jk = self.coaction[j].get(k)
                    if c_jk is None:
                        continue
                    a, b = (c_ij, c_jk) if self.coact_side == "left" else (c_jk, c_ij)
                    rhs = rhs + TensorElem.from_poly(a).tensor(TensorElem.from_poly(b))
                if lhs != pres.tensor_normalize(rhs):
                    return False, f"coaction not coassociative at basis ({i},{k})"
            cnt = {}
            for j, poly in self.coaction[i].items():
                cnt[j] = cnt.get(j, field_zero(self.field)) + pres.counit(poly)
            cnt = {j: c for j, c in cnt.items() if c}
            if cnt != {i: one}:
                return False, f"coaction not counital at basis {i}"
        return True, None


# sided (anti-)Yetter-Drinfeld compatibility ---------------------------------

# Default antipode power in the twisted slot, per (act_side, coact_side).
# These are the choices under which the one-dimensional module of a modular
# pair in involution is AYD (checked in tests against H_1); YD is the
# opposite power, and for S^2 = id the distinction vanishes.
_AYD_POWER = {
    ("left", "left"): -1,
    ("right", "left"): 1,
    ("left", "right"): 1,
    ("right", "right"): -1,
}


def check_ayd(mod: FinCoefModule, kind: str = "ayd", antipode_power=None, index_bound: int = 4) -> SymmetryCertificate:
    """Exhaustive (anti-)Yetter-Drinfeld compatibility over generators x basis.

    kind "ayd" or "yd"; ``antipode_power`` +1 (use S) or -1 (use S^{-1})
    overrides the sided default.
    """
    if kind not in ("ayd", "yd"):
        raise CertMismatch(kind)
    sides = (mod.act_side, mod.coact_side)
    power = antipode_power
    if power is None:
        power = _AYD_POWER[sides]
        if kind == "yd":
            power = -power
    pres = mod.pres
    one = field_one(mod.field)
    S = pres.antipode_word if power == 1 else pres.antipode_inv_word
    for g in pres.gens(index_bound):
        t3 = pres.coproduct(pres.gen_poly(g), 2)  # degree-3 coproduct of the generator
        for i in range(mod.dim):
            v = {i: one}
            lhs = mod.coact(mod.act_word((g,), v))
            rhs = {}
            for (w1, w2, w3), c in t3.terms.items():
                for j, poly in mod.coaction[i].items():
                    if sides == ("left", "left"):
                        hpart = pres.mul(pres.mul(NCPoly({w1: one}), poly), S(w3))
                        mpart = mod.act_word(w2, {j: one})
                    elif sides == ("right", "left"):
                        hpart = pres.mul(pres.mul(S(w3), poly), NCPoly({w1: one}))
                        mpart = mod.act_word(w2, {j: one})
                    elif sides == ("right", "right"):
                        hpart = pres.mul(pres.mul(S(w1), poly), NCPoly({w3: one}))
                        mpart = mod.act_word(w2, {j: one})
                    else:  # ("left", "right")
                        hpart = pres.mul(pres.mul(S(w3), poly), NCPoly({w1: one}))
                        mpart = mod.act_word(w2, {j: one})
                    for hw, hc in hpart.terms.items():
                        for k, mc in mpart.items():
                            key = (hw, k)
                            s = rhs.get(key)
                            s = c * hc * mc if s is None else s + c * hc * mc
                            if s:
                                rhs[key] = s
                            elif key in rhs:
                                del rhs[key]
            if lhs != rhs:
                return SymmetryCertificate(
                    kind,
                    False,
                    witness={"generator": g, "basis": i, "lhs": lhs, "rhs": rhs},
                    convention=f"sides={sides}, S^{power}",
                )
    return SymmetryCertificate(kind, True, convention=f"sides={sides}, S^{power}")


def check_stability(mod: FinCoefModule) -> SymmetryCertificate:
    """m^(-1) m^(0) = m (coaction coefficient acting on the module leg)."""
    one = field_one(mod.field)
    for i in range(mod.dim):
        acc = {}
        for j, poly in mod.coaction[i].items():
            img = mod.act_poly(poly, {j: one})
            for k, c in img.items():
                s = acc.get(k)
                s = c if s is None else s + c
                if s:
                    acc[k] = s
                elif k in acc:
                    del acc[k]
        if acc != {i: one}:
            return SymmetryCertificate("stable", False, witness={"basis": i, "got": acc})
    return SymmetryCertificate("stable", True)


def check_sayd(mod: FinCoefModule, antipode_power=None, index_bound: int = 4):
    a = check_ayd(mod, "ayd", antipode_power, index_bound)
    s = check_stability(mod)
    return a, s


# Lemma: one-dimensional SAYD modules <-> modular pairs in involution --------


def mpi_to_sayd(pair: ModularPair, act_side="right", coact_side="left", index_bound: int = 4) -> FinCoefModule:
    """The module k with h.r = delta(h) r and r -> sigma ox r.

    Requires the pair to be in involution; the default sides are the ones the
    coalgebra-type cocyclic module consumes.
    """
    rep = check_mpi(pair, index_bound=index_bound)
    if not rep.ok:
        raise NotInvolutive(rep.detail)
    pres = pair.pres
    one = field_one(pres.field)
    action = {}
    for fam, indexed in pres.families:
        if indexed:
            action[fam] = (lambda f: (lambda n: [{0: pair.delta.value_gen((f, n))}]))(fam)
        else:
            action[(fam, None)] = [{0: pair.delta.value_gen((fam, None))}]
    coaction = [{0: NCPoly({pair.sigma: one})}]
    return FinCoefModule(pres, 1, action, coaction, act_side, coact_side)


def extract_mpi(mod: FinCoefModule) -> ModularPair:
    """Read (delta, sigma) back from a one-dimensional SAYD module."""
    if mod.dim != 1:
        raise CertMismatch("extraction needs a 1-dimensional module")
    pres = mod.pres
    values = {}
    for fam, indexed in pres.families:
        if indexed:
            mats = mod.action.get(fam)
            if callable(mats):
                values[fam] = (lambda f: (lambda n: mod.act_mat((f, n))[0].get(0, field_zero(pres.field))))(fam)
            else:
                values[fam] = mats[0].get(0, field_zero(pres.field))
        else:
            m = mod.act_mat((fam, None))
            values[fam] = m[0].get(0, field_zero(pres.field))
    delta = Character(pres, values)
    co = mod.coaction[0]
    if list(co) != [0]:
        raise CertMismatch("coaction does not fix the basis line")
    poly = co[0]
    if len(poly.terms) != 1:
        raise NotGrouplike(str(poly))
    (sigma, c), = poly.terms.items()
    if c != field_one(pres.field) or not pres.is_grouplike(sigma):
        raise NotGrouplike(str(poly))
    return ModularPair(delta, sigma)


# Lemma: YD ox AYD is AYD under the diagonal structures ----------------------


def tensor_yd_ayd(m: FinCoefModule, n: FinCoefModule, index_bound: int = 4) -> FinCoefModule:
    """Diagonal action and codiagonal coaction on M ox N (both left-left)."""
    if (m.act_side, m.coact_side) != ("left", "left") or (n.act_side, n.coact_side) != ("left", "left"):
        raise SidesMismatch("tensor_yd_ayd expects left-left modules")
    if m.pres is not n.pres:
        raise CertMismatch("modules over different presentations")
    if not check_ayd(m, "yd", index_bound=index_bound):
        raise CertMismatch("first factor is not Yetter-Drinfeld")
    if not check_ayd(n, "ayd", index_bound=index_bound):
        raise CertMismatch("second factor is not anti-Yetter-Drinfeld")
    pres = m.pres
    one = field_one(pres.field)
    dim = m.dim * n.dim
    pair_idx = lambda i, j: i * n.dim + j

    def diag_mat(g):
        cols = [dict() for _ in range(dim)]
        for (w1, w2), c in pres.delta_gen(g).terms.items():
            for i in range(m.dim):
                vi = m.act_word(w1, {i: one})
                for j in range(n.dim):
                    vj = n.act_word(w2, {j: one})
                    col = cols[pair_idx(i, j)]
                    for a, ca in vi.items():
                        for b, cb in vj.items():
                            k = pair_idx(a, b)
                            s = col.get(k)
                            s = c * ca * cb if s is None else s + c * ca * cb
                            if s:
                                col[k] = s
                            elif k in col:
                                del col[k]
        return cols

    action = {}
    for fam, indexed in pres.families:
        if indexed:
            action[fam] = (lambda f: (lambda k: diag_mat((f, k))))(fam)
        else:
            action[(fam, None)] = diag_mat((fam, None))
    coaction = []
    for i in range(m.dim):
        for j in range(n.dim):
            row = {}
            for a, p1 in m.coaction[i].items():
                for b, p2 in n.coaction[j].items():
                    k = pair_idx(a, b)
                    prod = pres.mul(p1, p2)
                    row[k] = row.get(k, NCPoly.zero()) + prod
            coaction.append({k: p for k, p in row.items() if p})
    return FinCoefModule(pres, dim, action, coaction, "left", "left")


# Staic equivalence: AYD -> YD twisted by a modular pair in involution -------


def staic_transform(pair: ModularPair, mod: FinCoefModule, index_bound: int = 4) -> FinCoefModule:
    """m.h := m h^(1) delta(S(h^(2))), rho'(m) = sigma^{-1} m^(-1) ox m^(0).

    Sends right-left AYD modules to right-left YD modules; inverting means
    transforming with the pair (delta o S, sigma^{-1}).
    """
    if (mod.act_side, mod.coact_side) != ("right", "left"):
        raise SidesMismatch("staic_transform expects right-left modules")
    rep = check_mpi(pair, index_bound=index_bound)
    if not rep.ok:
        raise NotInvolutive(rep.detail)
    pres = mod.pres
    one = field_one(pres.field)

    def tw_mat(g):
        cols = [dict() for _ in range(mod.dim)]
        for (w1, w2), c in pres.delta_gen(g).terms.items():
            coef = pair.delta.value(pres.antipode_word(w2)) * c
            if not coef:
                continue
            for j in range(mod.dim):
                img = mod.act_word(w1, {j: one})
                col = cols[j]
                for k, s in img.items():
                    t = col.get(k)
                    t = s * coef if t is None else t + s * coef
                    if t:
                        col[k] = t
                    elif k in col:
                        del col[k]
        return cols

    action = {}
    for fam, indexed in pres.families:
        if indexed:
            action[fam] = (lambda f: (lambda k: tw_mat((f, k))))(fam)
        else:
            action[(fam, None)] = tw_mat((fam, None))
    sig_inv = pres.grouplike_inverse(pair.sigma)
    coaction = []
    for i in range(mod.dim):
        coaction.append(
            {j: pres.mul(sig_inv, poly) for j, poly in mod.coaction[i].items()}
        )
    return FinCoefModule(pres, mod.dim, action, coaction, "right", "left")


def staic_inverse_pair(pair: ModularPair) -> ModularPair:
    """(delta o S, sigma^{-1}); the inverse twist for staic_transform."""
    pres = pair.pres
    values = {}
    for fam, indexed in pres.families:
        if indexed:
            values[fam] = (lambda f: (lambda n: pair.delta.value(pres.antipode_gen((f, n)))))(fam)
        else:
            values[fam] = pair.delta.value(pres.antipode_gen((fam, None)))
    inv = pres.grouplike_inverse(pair.sigma)
    if len(inv.terms) != 1:
        raise NotGrouplike("sigma^{-1} is not a basis word")
    (sig_inv_word, c), = inv.terms.items()
    if c != field_one(pres.field):
        raise NotGrouplike("sigma^{-1} is not a basis word")
    return ModularPair(Character(pres, values), sig_inv_word)


def modules_equal(a: FinCoefModule, b: FinCoefModule, index_bound: int = 4) -> bool:
    """Exact equality of action matrices (on generator probes) and coactions."""
    if (a.dim, a.act_side, a.coact_side) != (b.dim, b.act_side, b.coact_side):
        return False
    one = field_one(a.field)
    for g in a.pres.gens(index_bound):
        for j in range(a.dim):
            if a.act_word((g,), {j: one}) != b.act_word((g,), {j: one}):
                return False
    for i in range(a.dim):
        ca = {j: p for j, p in a.coaction[i].items() if p}
        cb = {j: p for j, p in b.coaction[i].items() if p}
        if ca != cb:
            return False
    return True
