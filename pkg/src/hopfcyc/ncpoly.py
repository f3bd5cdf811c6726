"""Free noncommutative polynomials and sparse tensor powers.

Generators are ``(family, index)`` pairs; the index is ``None`` for plain
generators and an integer >= 1 for indexed families such as delta_n.  A word
is a tuple of generators (the empty word is the unit monomial) and an
``NCPoly`` is a sparse scalar combination of words.  ``TensorElem`` is the
same thing one tensor degree up: a sparse combination of n-tuples of words.

Nothing in this module knows about relations; products here are free
concatenation.  Rewriting to normal form lives in :mod:`hopfcyc.rewrite`.
"""

from __future__ import annotations

from .errors import DegreeMismatch
from .scalars import field_one

Gen = tuple  # (family: str, index: int | None)
Word = tuple  # tuple[Gen, ...]

EMPTY_WORD: Word = ()


def gen(family: str, index=None) -> Gen:
    return (family, index)


def gen_str(g: Gen) -> str:
    fam, idx = g
    return fam if idx is None else f"{fam}_{idx}"


def word_str(w: Word) -> str:
    return "1" if not w else "*".join(gen_str(g) for g in w)


class NCPoly:
    """Sparse linear combination of words; zero coefficients are never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        t = {}
        if terms:
            for w, c in terms.items():
                if c:
                    t[w] = c
        self.terms = t

    @staticmethod
    def zero() -> "NCPoly":
        return NCPoly()

    @staticmethod
    def unit(field: str) -> "NCPoly":
        return NCPoly({EMPTY_WORD: field_one(field)})

    @staticmethod
    def from_word(w: Word, coeff) -> "NCPoly":
        return NCPoly({w: coeff})

    @staticmethod
    def from_gen(g: Gen, field: str) -> "NCPoly":
        return NCPoly({(g,): field_one(field)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, NCPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "NCPoly") -> "NCPoly":
        t = dict(self.terms)
        for w, c in other.terms.items():
            s = t.get(w)
            s = c if s is None else s + c
            if s:
                t[w] = s
            elif w in t:
                del t[w]
        out = NCPoly.__new__(NCPoly)
        out.terms = t
        return out

    def __neg__(self) -> "NCPoly":
        out = NCPoly.__new__(NCPoly)
        out.terms = {w: -c for w, c in self.terms.items()}
        return out

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return self + (-other)

    def scale(self, s) -> "NCPoly":
        if not s:
            return NCPoly()
        out = NCPoly.__new__(NCPoly)
        out.terms = {w: c * s for w, c in self.terms.items()}
        return out

    def free_mul(self, other: "NCPoly") -> "NCPoly":
        """Concatenation-bilinear product in the free algebra (no rewriting)."""
        t = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                s = t.get(w)
                s = c if s is None else s + c
                if s:
                    t[w] = s
                elif w in t:
                    del t[w]
        out = NCPoly.__new__(NCPoly)
        out.terms = t
        return out

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def coeff(self, w: Word):
        return self.terms.get(w)

    def monomials(self):
        return self.terms.keys()

    def __repr__(self):
        return f"NCPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda u: (len(u), u)):
            c = self.terms[w]
            cs = str(c)
            if not w:
                parts.append(cs)
            elif cs == "1":
                parts.append(word_str(w))
            elif cs == "-1":
                parts.append(f"-{word_str(w)}")
            else:
                if "+" in cs or ("-" in cs[1:]) or "/" in cs and "*" in cs:
                    cs = f"({cs})"
                parts.append(f"{cs}*{word_str(w)}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


class TensorElem:
    """Sparse element of H^(tensor n): map from n-tuples of words to scalars.

    Degree 0 is the ground field, stored as the single key ``()``.
    """

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms=None):
        self.degree = degree
        t = {}
        if terms:
            for k, c in terms.items():
                if c:
                    t[k] = c
        self.terms = t

    @staticmethod
    def zero(degree: int) -> "TensorElem":
        return TensorElem(degree)

    @staticmethod
    def scalar(field: str, value=None) -> "TensorElem":
        v = field_one(field) if value is None else value
        return TensorElem(0, {(): v})

    @staticmethod
    def from_poly(p: NCPoly) -> "TensorElem":
        return TensorElem(1, {(w,): c for w, c in p.terms.items()})

    @staticmethod
    def from_words(words, coeff) -> "TensorElem":
        return TensorElem(len(words), {tuple(words): coeff})

    def to_poly(self) -> NCPoly:
        if self.degree != 1:
            raise DegreeMismatch("only degree-1 tensors convert to NCPoly")
        return NCPoly({k[0]: c for k, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, TensorElem)
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def __add__(self, other: "TensorElem") -> "TensorElem":
        if self.degree != other.degree:
            raise DegreeMismatch(f"degree {self.degree} + degree {other.degree}")
        t = dict(self.terms)
        for k, c in other.terms.items():
            s = t.get(k)
            s = c if s is None else s + c
            if s:
                t[k] = s
            elif k in t:
                del t[k]
        out = TensorElem.__new__(TensorElem)
        out.degree = self.degree
        out.terms = t
        return out

    def __neg__(self) -> "TensorElem":
        out = TensorElem.__new__(TensorElem)
        out.degree = self.degree
        out.terms = {k: -c for k, c in self.terms.items()}
        return out

    def __sub__(self, other: "TensorElem") -> "TensorElem":
        return self + (-other)

    def scale(self, s) -> "TensorElem":
        if not s:
            return TensorElem(self.degree)
        out = TensorElem.__new__(TensorElem)
        out.degree = self.degree
        out.terms = {k: c * s for k, c in self.terms.items()}
        return out

    def tensor(self, other: "TensorElem") -> "TensorElem":
        """Outer tensor product, concatenating slot tuples."""
        t = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                t[k1 + k2] = c1 * c2
        return TensorElem(self.degree + other.degree, t)

    def __repr__(self):
        return f"TensorElem({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            c = self.terms[k]
            body = " ox ".join(word_str(w) for w in k) if k else "1"
            cs = str(c)
            if cs == "1":
                parts.append(body)
            elif cs == "-1":
                parts.append(f"-{body}")
            else:
                if "+" in cs or ("-" in cs[1:]):
                    cs = f"({cs})"
                parts.append(f"{cs}*{body}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out
