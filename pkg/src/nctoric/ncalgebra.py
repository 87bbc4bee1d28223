"""Monoid algebras over Q(i) with reduced words as basis: arithmetic,
grading by exponent vectors, and bounded-degree two-sided ideal membership.

Ideal membership in a free algebra is undecidable in general, so every
negative answer here is explicitly relative to the degree bound.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError, RankMismatch, TargetExceedsBound
from .exactmath import GaussRational, ONE, ZERO, format_gauss, parse_gauss
from .freeword import (ReducedWord, abelianize, format_word, identity_word,
                       parse_word, word_mul, words_up_to)


class AlgElem:
    """Finite Q(i)-combination of reduced words; zero terms never stored."""

    __slots__ = ("rank", "terms")

    def __init__(self, rank, terms=None):
        clean = {}
        for w, c in (terms or {}).items():
            if w.rank != rank:
                raise RankMismatch("term rank differs from element rank")
            if not isinstance(c, GaussRational):
                c = GaussRational(c)
            if c:
                clean[w] = c
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("AlgElem is immutable")

    @staticmethod
    def zero(rank):
        return AlgElem(rank)

    @staticmethod
    def one(rank):
        return AlgElem(rank, {identity_word(rank): ONE})

    @staticmethod
    def from_word(w, coeff=ONE):
        return AlgElem(w.rank, {w: coeff})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (isinstance(other, AlgElem) and self.rank == other.rank
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.rank, frozenset(self.terms.items())))

    def __add__(self, other):
        if self.rank != other.rank:
            raise RankMismatch("cannot add elements of different ranks")
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, ZERO) + c
        return AlgElem(self.rank, terms)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return AlgElem(self.rank, {w: -c for w, c in self.terms.items()})

    def scale(self, c):
        if not isinstance(c, GaussRational):
            c = GaussRational(c)
        return AlgElem(self.rank, {w: c * x for w, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, GaussRational)):
            return self.scale(other)
        if isinstance(other, ReducedWord):
            other = AlgElem.from_word(other)
        if self.rank != other.rank:
            raise RankMismatch("cannot multiply elements of different ranks")
        terms = {}
        for wa, ca in self.terms.items():
            for wb, cb in other.terms.items():
                w = word_mul(wa, wb)
                terms[w] = terms.get(w, ZERO) + ca * cb
        return AlgElem(self.rank, terms)

    def __rmul__(self, other):
        if isinstance(other, (int, GaussRational)):
            return self.scale(other)
        if isinstance(other, ReducedWord):
            return AlgElem.from_word(other) * self
        return NotImplemented

    def max_word_len(self):
        return max((len(w) for w in self.terms), default=0)

    def monomials(self):
        """Deterministically ordered (word, coefficient) pairs."""
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def __repr__(self):
        return f"AlgElem({format_alg(self)!r}, rank={self.rank})"


def alg_add(a, b):
    return a + b


def alg_scale(c, a):
    return a.scale(c)


def alg_mul(a, b):
    return a * b


def abelianize_elem(a):
    """Push every word to its exponent vector; a ring map onto Laurent
    polynomials, with exact coefficient collection."""
    out = {}
    for w, c in a.terms.items():
        v = abelianize(w)
        s = out.get(v, ZERO) + c
        if s:
            out[v] = s
        elif v in out:
            del out[v]
    return out


def is_homogeneous(a):
    degrees = {abelianize(w) for w in a.terms}
    return len(degrees) <= 1


# ---------------------------------------------------------------------------
# Literals
# ---------------------------------------------------------------------------

def format_alg(a):
    if a.is_zero():
        return "0"
    parts = []
    for w, c in a.monomials():
        coef = format_gauss(c)
        if w.is_identity():
            txt = f"({coef})" if ("+" in coef[1:] or "-" in coef[1:]) else coef
        elif c == ONE:
            txt = format_word(w)
        else:
            wrapped = f"({coef})" if ("+" in coef[1:] or "-" in coef[1:] or "/" in coef
                                      or coef.startswith("-")) else coef
            txt = f"{wrapped}*{format_word(w)}"
        parts.append(txt)
    return " + ".join(parts)


def _split_top_level(s, seps="+-"):
    parts = []
    depth = 0
    cur = ""
    sign = "+"
    prev = ""
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        # '^-3' style exponents are not term separators
        if depth == 0 and ch in seps and cur.strip() and prev != "^":
            parts.append((sign, cur))
            cur = ""
            sign = ch
        else:
            cur += ch
        if not ch.isspace():
            prev = ch
    if cur.strip():
        parts.append((sign, cur))
    return parts


def parse_alg(text, rank):
    """Parse literals like "(3/2+1/2i)*z1 z2^-1 + 1" into an AlgElem."""
    s = text.strip()
    if s in ("", "0"):
        return AlgElem.zero(rank)
    terms = {}
    for sign, chunk in _split_top_level(s):
        chunk = chunk.strip()
        if not chunk:
            raise ParseError(f"empty term in {text!r}")
        if "*" in chunk:
            coef_txt, _, word_txt = chunk.partition("*")
            coef = parse_gauss(coef_txt)
            word = parse_word(word_txt, rank)
        elif chunk.startswith("("):
            coef = parse_gauss(chunk)
            word = identity_word(rank)
        elif chunk.startswith("z") or chunk in ("e",):
            coef = ONE
            word = parse_word(chunk, rank)
        else:
            coef = parse_gauss(chunk)
            word = identity_word(rank)
        if sign == "-":
            coef = -coef
        terms[word] = terms.get(word, ZERO) + coef
    return AlgElem(rank, terms)


# ---------------------------------------------------------------------------
# Bounded two-sided ideals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundedIdeal:
    generators: tuple
    degree_bound: int

    def __post_init__(self):
        for g in self.generators:
            if g.is_zero():
                raise ValueError("ideal generators must be nonzero")


@dataclass(frozen=True)
class MemberCertificate:
    """target = sum of coeff * (left * generator * right)."""
    combination: tuple  # items: (coeff, left word, generator index, right word)

    def reconstruct(self, ideal, rank):
        acc = AlgElem.zero(rank)
        for coeff, left, gi, right in self.combination:
            term = AlgElem.from_word(left) * ideal.generators[gi] * AlgElem.from_word(right)
            acc = acc + term.scale(coeff)
        return acc


def _pair_words(rank, budget):
    """(x, y) reduced-word pairs with len(x) + len(y) <= budget."""
    if budget < 0:
        return
    words = words_up_to(rank, budget)
    for x in words:
        for y in words:
            if len(x) + len(y) <= budget:
                yield x, y


def bounded_ideal_member(ideal, target):
    """Exact certificate that the target lies in the two-sided ideal, using
    only products x*g*y with total length within the ideal's degree bound.

    Returns a MemberCertificate, or None meaning not-found-at-bound (which
    is *not* a proof of non-membership).
    """
    rank = target.rank
    d = ideal.degree_bound
    if target.max_word_len() > d:
        raise TargetExceedsBound(
            f"target has words of length {target.max_word_len()} > bound {d}")
    columns = []
    keys = []
    for gi, g in enumerate(ideal.generators):
        glen = g.max_word_len()
        for x, y in _pair_words(rank, d - glen):
            col = AlgElem.from_word(x) * g * AlgElem.from_word(y)
            columns.append(col)
            keys.append((x, gi, y))
    # sparse elimination over the word basis
    echelon = []  # (pivot word, terms dict, combo dict over column indices)
    def reduce_vec(terms, combo, record):
        for (piv, evec, ecombo) in echelon:
            c = terms.get(piv)
            if c:
                f = c / evec[piv]
                for w, v in evec.items():
                    nv = terms.get(w, ZERO) - f * v
                    if nv:
                        terms[w] = nv
                    elif w in terms:
                        del terms[w]
                for k, v in ecombo.items():
                    nv = combo.get(k, ZERO) + record * f * v
                    if nv:
                        combo[k] = nv
                    elif k in combo:
                        del combo[k]
        return terms, combo

    for j, col in enumerate(columns):
        terms = dict(col.terms)
        combo = {j: ONE}
        terms, combo = reduce_vec(terms, combo, GaussRational(-1))
        if terms:
            piv = max(terms, key=lambda w: w.sort_key())
            echelon.append((piv, terms, combo))
    terms = dict(target.terms)
    combo = {}
    terms, combo = reduce_vec(terms, combo, ONE)
    if terms:
        return None
    items = tuple((c, keys[j][0], keys[j][1], keys[j][2])
                  for j, c in sorted(combo.items()) if c)
    cert = MemberCertificate(items)
    assert cert.reconstruct(ideal, rank) == target
    return cert


def l_commutative_gens(rank, level, degree_bound):
    """Commutators of single letters against positive words of the given
    level, the generator set of the nested commutativity ideal."""
    if degree_bound < level + 1:
        raise ValueError("degree bound must be at least level + 1")
    gens = []
    seen = set()
    positive = [w for w in words_up_to(rank, level)
                if len(w) == level and all(k > 0 for k in w.letters)]
    for i in range(1, rank + 1):
        zi = ReducedWord((i,), rank)
        for w in positive:
            c = AlgElem.from_word(word_mul(zi, w)) - AlgElem.from_word(word_mul(w, zi))
            if c.is_zero():
                continue
            key = frozenset(c.terms)
            if key in seen:
                continue
            seen.add(key)
            gens.append(c)
    return BoundedIdeal(tuple(gens), degree_bound)
