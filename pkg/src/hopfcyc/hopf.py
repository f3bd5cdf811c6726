"""Presented bialgebras and Hopf algebras with exact structure maps.

A :class:`HopfPresentation` bundles an ordered alphabet, a rewrite system
realizing the defining relations, and generator tables for the coproduct,
counit and antipode.  The maps extend to the whole algebra the only way the
axioms allow: Delta and eps multiplicatively, S anti-multiplicatively.
Indexed families (delta_n in H_1) register lazy per-index table callbacks;
derived values are memoized.

Also here: characters, grouplike certificates, convolution, the twisted
antipode S~_delta = delta * S, modular-pair-in-involution checking, and the
Hopf axiom certifier used by every builder.
"""

from __future__ import annotations

import random

from .errors import DegreeMismatch, NotGrouplike
from .ncpoly import EMPTY_WORD, NCPoly, TensorElem, word_str
from .rewrite import RewriteSystem
from .scalars import coerce, field_one, field_zero


class HopfPresentation:
    def __init__(self, name: str, field: str, families, rs: RewriteSystem, finite_hint=None):
        """families: ordered list of (family_name, indexed: bool); the list
        position fixes the global generator order used by normal forms."""
        self.name = name
        self.field = field
        self.families = list(families)
        self._fam_pos = {f: i for i, (f, _) in enumerate(self.families)}
        self._fam_indexed = {f: ix for f, ix in self.families}
        self.rs = rs
        self.finite_hint = finite_hint
        self._delta_tab = {}
        self._eps_tab = {}
        self._S_tab = {}
        self._Sinv_tab = {}
        self._delta_fam = {}
        self._eps_fam = {}
        self._S_fam = {}
        self._Sinv_fam = {}
        self._delta_word_memo = {}
        self._S_word_memo = {}
        self._Sinv_word_memo = {}
        self._basis_cache = None
        self.metadata = {}

    # -- alphabet ------------------------------------------------------------

    def sort_key(self, g):
        fam, idx = g
        return (self._fam_pos[fam], idx if idx is not None else 0)

    def gens(self, index_bound: int = 4):
        out = []
        for fam, indexed in self.families:
            if indexed:
                out.extend((fam, n) for n in range(1, index_bound + 1))
            else:
                out.append((fam, None))
        return out

    def one(self) -> NCPoly:
        return NCPoly.unit(self.field)

    def gen_poly(self, g) -> NCPoly:
        return NCPoly.from_gen(g, self.field)

    # -- table registration ----------------------------------------------------

    def set_tables(self, gen, delta: TensorElem, eps, antipode: NCPoly, antipode_inv=None):
        self._delta_tab[gen] = delta
        self._eps_tab[gen] = coerce(self.field, eps)
        self._S_tab[gen] = antipode
        if antipode_inv is not None:
            self._Sinv_tab[gen] = antipode_inv

    def set_family_tables(self, fam, delta_fn, eps_fn, antipode_fn, antipode_inv_fn=None):
        """Lazy tables for an indexed family; fn(index) -> table value."""
        self._delta_fam[fam] = delta_fn
        self._eps_fam[fam] = eps_fn
        self._S_fam[fam] = antipode_fn
        if antipode_inv_fn is not None:
            self._Sinv_fam[fam] = antipode_inv_fn

    # -- structure maps on generators ------------------------------------------

    def delta_gen(self, g) -> TensorElem:
        v = self._delta_tab.get(g)
        if v is None:
            v = self._delta_fam[g[0]](g[1])
            self._delta_tab[g] = v
        return v

    def eps_gen(self, g):
        v = self._eps_tab.get(g)
        if v is None:
            v = coerce(self.field, self._eps_fam[g[0]](g[1]))
            self._eps_tab[g] = v
        return v

    def antipode_gen(self, g) -> NCPoly:
        v = self._S_tab.get(g)
        if v is None:
            v = self._S_fam[g[0]](g[1])
            self._S_tab[g] = v
        return v

    def antipode_inv_gen(self, g) -> NCPoly:
        v = self._Sinv_tab.get(g)
        if v is None:
            fam = self._Sinv_fam.get(g[0])
            if fam is None:
                raise KeyError(f"no inverse antipode table for {g}")
            v = fam(g[1])
            self._Sinv_tab[g] = v
        return v

    def has_antipode_inv(self) -> bool:
        return bool(self._Sinv_tab) or bool(self._Sinv_fam)

    # -- normalization ----------------------------------------------------------

    def normalize(self, p: NCPoly) -> NCPoly:
        return self.rs.normalize(p)

    def mul(self, p: NCPoly, q: NCPoly) -> NCPoly:
        return self.rs.mul(p, q)

    def tensor_normalize(self, t: TensorElem) -> TensorElem:
        out = TensorElem.zero(t.degree)
        for key, c in t.terms.items():
            polys = [self.rs.normalize_word(w) for w in key]
            out = out + _expand_slots(t.degree, polys, c)
        return out

    def tensor_mul(self, a: TensorElem, b: TensorElem) -> TensorElem:
        """Componentwise product in H^(tensor n), normalized per slot."""
        if a.degree != b.degree:
            raise DegreeMismatch(f"tensor degrees {a.degree} != {b.degree}")
        out = TensorElem.zero(a.degree)
        for k1, c1 in a.terms.items():
            for k2, c2 in b.terms.items():
                polys = [self.rs.normalize_word(w1 + w2) for w1, w2 in zip(k1, k2)]
                out = out + _expand_slots(a.degree, polys, c1 * c2)
        return out

    def tensor_unit(self, degree: int) -> TensorElem:
        return TensorElem(degree, {(EMPTY_WORD,) * degree: field_one(self.field)})

    # -- extended structure maps --------------------------------------------------

    def delta_word(self, w) -> TensorElem:
        memo = self._delta_word_memo
        hit = memo.get(w)
        if hit is not None:
            return hit
        if not w:
            out = self.tensor_unit(2)
        else:
            out = self.delta_gen(w[0])
            for g in w[1:]:
                out = self.tensor_mul(out, self.delta_gen(g))
        memo[w] = out
        return out

    def delta_poly(self, p: NCPoly) -> TensorElem:
        out = TensorElem.zero(2)
        for w, c in p.terms.items():
            out = out + self.delta_word(w).scale(c)
        return out

    def coproduct(self, p: NCPoly, n: int = 1) -> TensorElem:
        """Iterated coproduct: degree n+1 tensor; n = 0 is the identity."""
        if n < 0:
            raise ValueError("iteration count must be >= 0")
        if n == 0:
            return TensorElem.from_poly(p)
        t = self.delta_poly(p)
        for _ in range(n - 1):
            t = self.tensor_apply(["delta"] + ["id"] * (t.degree - 1), t)
        return t

    def counit_word(self, w):
        out = field_one(self.field)
        for g in w:
            out = out * self.eps_gen(g)
            if not out:
                return out
        return out

    def counit(self, p: NCPoly):
        out = field_zero(self.field)
        for w, c in p.terms.items():
            e = self.counit_word(w)
            if e:
                out = out + c * e
        return out

    def antipode_word(self, w) -> NCPoly:
        memo = self._S_word_memo
        hit = memo.get(w)
        if hit is not None:
            return hit
        out = self.one()
        for g in reversed(w):
            out = self.mul(out, self.antipode_gen(g))
        memo[w] = out
        return out

    def antipode(self, p: NCPoly) -> NCPoly:
        out = NCPoly.zero()
        for w, c in p.terms.items():
            out = out + self.antipode_word(w).scale(c)
        return out

    def antipode_inv_word(self, w) -> NCPoly:
        memo = self._Sinv_word_memo
        hit = memo.get(w)
        if hit is not None:
            return hit
        out = self.one()
        for g in reversed(w):
            out = self.mul(out, self.antipode_inv_gen(g))
        memo[w] = out
        return out

    def antipode_inv(self, p: NCPoly) -> NCPoly:
        out = NCPoly.zero()
        for w, c in p.terms.items():
            out = out + self.antipode_inv_word(w).scale(c)
        return out

    def tensor_apply(self, ops, t: TensorElem) -> TensorElem:
        """Apply one linear operator per slot, multilinearly.

        Operator tokens: "id", "delta" (degree 2 out), "eps" (degree 0 out),
        "S", "Sinv", or a callable word -> TensorElem with uniform out-degree.
        """
        if len(ops) != t.degree:
            raise DegreeMismatch(f"{len(ops)} operators for degree {t.degree}")
        out = None
        for key, c in t.terms.items():
            factors = [self._apply_slot(op, w) for op, w in zip(ops, key)]
            term = TensorElem.scalar(self.field, c)
            for f in factors:
                term = term.tensor(f)
            out = term if out is None else out + term
        if out is None:
            deg = sum(self._op_degree(op) for op in ops)
            return TensorElem.zero(deg)
        return out

    def _apply_slot(self, op, w) -> TensorElem:
        if op == "id":
            return TensorElem.from_poly(self.rs.normalize_word(w))
        if op == "delta":
            return self.delta_word(w)
        if op == "eps":
            return TensorElem(0, {(): self.counit_word(w)})
        if op == "S":
            return TensorElem.from_poly(self.antipode_word(w))
        if op == "Sinv":
            return TensorElem.from_poly(self.antipode_inv_word(w))
        return op(w)

    @staticmethod
    def _op_degree(op) -> int:
        return {"id": 1, "delta": 2, "eps": 0, "S": 1, "Sinv": 1}.get(op, 1)

    # -- convolution and twists ----------------------------------------------------

    def convolve_to_scalar(self, f, g, p: NCPoly):
        """(f*g)(p) for scalar-valued word maps f, g."""
        t = self.delta_poly(p)
        out = field_zero(self.field)
        for (w1, w2), c in t.terms.items():
            out = out + c * f(w1) * g(w2)
        return out

    def convolve_to_poly(self, f, g, p: NCPoly) -> NCPoly:
        """(f*g)(p) where f, g map words to scalars or NCPolys."""
        t = self.delta_poly(p)
        out = NCPoly.zero()
        for (w1, w2), c in t.terms.items():
            a, b = f(w1), g(w2)
            if isinstance(a, NCPoly) and isinstance(b, NCPoly):
                out = out + self.mul(a, b).scale(c)
            elif isinstance(a, NCPoly):
                out = out + a.scale(b * c)
            elif isinstance(b, NCPoly):
                out = out + b.scale(a * c)
            else:
                out = out + self.one().scale(a * b * c)
        return out

    def twisted_antipode(self, char: "Character", p: NCPoly) -> NCPoly:
        """S~_delta(p) = delta(p^(1)) S(p^(2)), the convolution delta * S."""
        t = self.delta_poly(p)
        out = NCPoly.zero()
        for (w1, w2), c in t.terms.items():
            d = char.value_word(w1)
            if d:
                out = out + self.antipode_word(w2).scale(c * d)
        return out

    # -- grouplikes and adjoints -----------------------------------------------------

    def is_grouplike(self, w) -> bool:
        if self.counit_word(w) != field_one(self.field):
            return False
        expect = TensorElem(2, {(w, w): field_one(self.field)})
        return self.delta_word(w) == expect

    def grouplike_inverse(self, w) -> NCPoly:
        if not self.is_grouplike(w):
            raise NotGrouplike(word_str(w))
        return self.antipode_word(w)

    def adjoint(self, sigma_word, p: NCPoly) -> NCPoly:
        """Ad_sigma(p) = sigma p sigma^{-1} for a certified grouplike sigma."""
        inv = self.grouplike_inverse(sigma_word)
        return self.mul(self.mul(NCPoly.from_word(sigma_word, field_one(self.field)), p), inv)

    # -- finite basis ------------------------------------------------------------------

    def finite_basis(self, max_len: int = 10):
        """All normal-form words, or None if the presentation is not finite.

        Normal words are factor-closed, so enumeration by length terminates
        exactly when some length contributes nothing.
        """
        if self._basis_cache is not None:
            return self._basis_cache
        cap = self.finite_hint if self.finite_hint is not None else max_len
        gens = self.gens()
        level = [EMPTY_WORD]
        basis = [EMPTY_WORD]
        length = 0
        while level:
            length += 1
            if length > cap:
                if self.finite_hint is None:
                    return None
                break
            nxt = []
            for w in level:
                for g in gens:
                    w2 = w + (g,)
                    if self.rs.is_normal(w2):
                        nxt.append(w2)
            basis.extend(nxt)
            level = nxt
        basis.sort(key=lambda w: (len(w), tuple(self.sort_key(g) for g in w)))
        self._basis_cache = basis
        return basis


def _expand_slots(degree: int, polys, coeff) -> TensorElem:
    """Distribute per-slot NCPolys into a TensorElem with a common scalar."""
    keys = [((), coeff)]
    for p in polys:
        nxt = []
        for prefix, c in keys:
            for w, pc in p.terms.items():
                nxt.append((prefix + (w,), c * pc))
        keys = nxt
        if not keys:
            break
    out = TensorElem.zero(degree)
    t = out.terms
    for key, c in keys:
        if not c:
            continue
        s = t.get(key)
        s = c if s is None else s + c
        if s:
            t[key] = s
        elif key in t:
            del t[key]
    return out


class Character:
    """Unital algebra map H -> k given by generator values.

    ``values`` maps a family name to a scalar (constant over the family) or
    to a callable index -> scalar; plain generators use their family name.
    """

    def __init__(self, pres: HopfPresentation, values, name="delta"):
        self.pres = pres
        self.name = name
        self.values = dict(values)

    def value_gen(self, g):
        v = self.values[g[0]]
        if callable(v):
            v = v(g[1])
        return coerce(self.pres.field, v)

    def value_word(self, w):
        out = field_one(self.pres.field)
        for g in w:
            out = out * self.value_gen(g)
            if not out:
                return out
        return out

    def value(self, p: NCPoly):
        out = field_zero(self.pres.field)
        for w, c in p.terms.items():
            v = self.value_word(w)
            if v:
                out = out + c * v
        return out

    def validate(self, index_bound: int = 4):
        """Check the values respect every (instantiated) rewrite rule.

        Returns (ok, witness) where witness names the violated rule.
        """
        for r in self.pres.rs._instantiated_rules(index_bound):
            lhs = self.value_word(r.lhs)
            rhs = field_zero(self.pres.field)
            for w, c in r.rhs.terms.items():
                rhs = rhs + c * self.value_word(w)
            if lhs != rhs:
                return False, f"rule {word_str(r.lhs)}: {lhs} != {rhs}"
        return True, None


class ModularPair:
    """Character delta and grouplike sigma with delta(sigma) = 1."""

    def __init__(self, delta: Character, sigma_word):
        self.delta = delta
        self.sigma = tuple(sigma_word)
        self._involutive = None

    @property
    def pres(self) -> HopfPresentation:
        return self.delta.pres

    def certify_modular(self, index_bound: int = 4):
        pres = self.pres
        if not pres.is_grouplike(self.sigma):
            raise NotGrouplike(word_str(self.sigma))
        ok, wit = self.delta.validate(index_bound)
        if not ok:
            return False, f"delta is not a character: {wit}"
        if self.delta.value_word(self.sigma) != field_one(pres.field):
            return False, f"delta(sigma) != 1 on sigma = {word_str(self.sigma)}"
        return True, None


class MPIReport:
    def __init__(self, ok, witness=None, detail=""):
        self.ok = ok
        self.witness = witness
        self.detail = detail

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return f"MPIReport(ok={self.ok}, detail={self.detail!r})"


def check_mpi(pair: ModularPair, probes=None, index_bound: int = 4) -> MPIReport:
    """PASS iff S~_delta^2(h) = sigma h sigma^{-1} exactly on every probe.

    S~_delta^2 and Ad_sigma are both algebra maps, so agreement on the
    generator probes implies agreement on all of H; the probe set defaults
    to the generators up to the delta-index bound.
    """
    pres = pair.pres
    ok, why = pair.certify_modular(index_bound)
    if not ok:
        return MPIReport(False, detail=why)
    if probes is None:
        probes = [pres.gen_poly(g) for g in pres.gens(index_bound)]
    for p in probes:
        p = pres.normalize(p if isinstance(p, NCPoly) else pres.gen_poly(p))
        lhs = pres.twisted_antipode(pair.delta, pres.twisted_antipode(pair.delta, p))
        rhs = pres.adjoint(pair.sigma, p)
        if lhs != rhs:
            return MPIReport(False, witness=(p, lhs, rhs), detail=f"S~^2({p}) = {lhs} != {rhs}")
    return MPIReport(True, detail=f"S~_delta^2 = Ad_sigma on {len(probes)} probes")


class AxiomLine:
    def __init__(self, name, ok, witness=""):
        self.name = name
        self.ok = ok
        self.witness = witness

    def __repr__(self):
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}" + (
            f" [{self.witness}]" if self.witness else ""
        )


class AxiomReport:
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


def random_normal_words(pres: HopfPresentation, degree: int, count: int, rng, index_bound=4):
    """Redex-free words of length <= degree, sampled with rejection."""
    gens = pres.gens(index_bound)
    out = []
    attempts = 0
    while len(out) < count and attempts < 200 * count:
        attempts += 1
        L = rng.randint(1, degree)
        w = tuple(rng.choice(gens) for _ in range(L))
        w = tuple(sorted(w, key=pres.sort_key))
        if pres.rs.is_normal(w):
            out.append(w)
            continue
        # fall back to a monomial of the normal form
        nf = pres.rs.normalize_word(w)
        if nf.terms:
            out.append(next(iter(nf.terms)))
    return out


def check_hopf_axioms(
    pres: HopfPresentation,
    degree: int = 3,
    n_random: int = 50,
    rng=None,
    index_bound: int = 4,
    extra_probes=(),
) -> AxiomReport:
    """Certify the presentation on generators plus random normal monomials.

    One report line per axiom: coassociativity, both counit identities,
    Delta/eps multiplicativity across every rewrite rule, both antipode
    identities, and the anti-coalgebra property of S.  All checks are exact.
    """
    rng = rng or random.Random(0)
    probes = [(g,) for g in pres.gens(index_bound)]
    probes += list(extra_probes)
    probes += random_normal_words(pres, degree, n_random, rng, index_bound)
    one = field_one(pres.field)

    lines = []

    def run(name, fn):
        for w in probes:
            wit = fn(w)
            if wit:
                lines.append(AxiomLine(name, False, wit))
                return
        lines.append(AxiomLine(name, True))

    def coassoc(w):
        d = pres.delta_word(w)
        left = pres.tensor_apply(["delta", "id"], d)
        right = pres.tensor_apply(["id", "delta"], d)
        return None if left == right else f"(Delta ox I)Delta != (I ox Delta)Delta on {word_str(w)}"

    def counit_left(w):
        d = pres.tensor_apply(["eps", "id"], pres.delta_word(w))
        expect = TensorElem.from_poly(pres.rs.normalize_word(w))
        return None if d == expect else f"(eps ox I)Delta != id on {word_str(w)}"

    def counit_right(w):
        d = pres.tensor_apply(["id", "eps"], pres.delta_word(w))
        expect = TensorElem.from_poly(pres.rs.normalize_word(w))
        return None if d == expect else f"(I ox eps)Delta != id on {word_str(w)}"

    def antipode_left(w):
        acc = NCPoly.zero()
        for (w1, w2), c in pres.delta_word(w).terms.items():
            acc = acc + pres.mul(pres.antipode_word(w1), NCPoly.from_word(w2, one)).scale(c)
        expect = pres.one().scale(pres.counit_word(w))
        return None if acc == expect else f"m(S ox I)Delta != eps on {word_str(w)}: got {acc}"

    def antipode_right(w):
        acc = NCPoly.zero()
        for (w1, w2), c in pres.delta_word(w).terms.items():
            acc = acc + pres.mul(NCPoly.from_word(w1, one), pres.antipode_word(w2)).scale(c)
        expect = pres.one().scale(pres.counit_word(w))
        return None if acc == expect else f"m(I ox S)Delta != eps on {word_str(w)}: got {acc}"

    def anti_coalgebra(w):
        s = pres.antipode_word(w)
        lhs = pres.tensor_normalize(pres.delta_poly(s))
        flipped = TensorElem.zero(2)
        for (w1, w2), c in pres.delta_word(w).terms.items():
            flipped = flipped + TensorElem(2, {(w2, w1): c})
        rhs = pres.tensor_apply(["S", "S"], flipped)
        rhs = pres.tensor_normalize(rhs)
        return None if lhs == rhs else f"Delta S != (S ox S) flip Delta on {word_str(w)}"

    run("coassociativity", coassoc)
    run("counit-left", counit_left)
    run("counit-right", counit_right)

    # Delta and eps must send each relation to zero in H ox H resp. k.
    ok_d, ok_e, wit_d, wit_e = True, True, "", ""
    for r in pres.rs._instantiated_rules(index_bound):
        lhs_poly = NCPoly.from_word(r.lhs, one)
        dl = pres.tensor_normalize(pres.delta_poly(lhs_poly))
        dr = pres.tensor_normalize(pres.delta_poly(r.rhs))
        if ok_d and dl != dr:
            ok_d, wit_d = False, f"Delta breaks rule {word_str(r.lhs)}"
        el, er = pres.counit(lhs_poly), pres.counit(r.rhs)
        if ok_e and el != er:
            ok_e, wit_e = False, f"eps breaks rule {word_str(r.lhs)}"
    lines.append(AxiomLine("delta-respects-relations", ok_d, wit_d))
    lines.append(AxiomLine("eps-respects-relations", ok_e, wit_e))

    run("antipode-left", antipode_left)
    run("antipode-right", antipode_right)
    run("antipode-anti-coalgebra", anti_coalgebra)
    return AxiomReport(lines)


def is_cocommutative(pres: HopfPresentation, probes=None, index_bound: int = 4) -> bool:
    probes = probes or [(g,) for g in pres.gens(index_bound)]
    for w in probes:
        d = pres.delta_word(w)
        flip = TensorElem(2, {(k[1], k[0]): c for k, c in d.terms.items()})
        if d != flip:
            return False
    return True
