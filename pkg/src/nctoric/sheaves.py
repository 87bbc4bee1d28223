"""Invertible sheaves as scalar-times-word gluing data, the divisor-to-sheaf
pipeline through softening, lattice-polytope sections, twisted sections, and
ideal data of the subschemes they cut out.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import clauses
from .deltasystem import abelianized_chart, soften
from .errors import (CandidateNotUnit, MismatchedSystems, NotASection,
                     UnboundedPolytope)
from .exactmath import ONE, fm_interval, linear_feasible
from .freeword import (abelianize, canonical_lift, format_word, identity_word,
                       is_unit_in, word_inv, word_mul)
from .ncalgebra import AlgElem
from .reports import Finding, Report
from .toricfan import comm_monoid_member, dual_generators, pairing


@dataclass(frozen=True)
class DivisorData:
    """One integer coefficient per ray of the fan."""
    coefficients: tuple

    def coefficient(self, ray_index):
        return self.coefficients[ray_index]


@dataclass(frozen=True)
class CartierData:
    """Per-cone vertex exponents of a divisor, with the recorded choice of
    covering maximal cone for every lower cone."""
    vertex: dict            # cone -> exponent vector in the dual lattice
    covering: dict          # non-maximal cone -> chosen maximal cone


@dataclass
class GluingData:
    """Per face-incidence an invertible scalar-times-word: the transition
    datum of an invertible sheaf under fixed local trivializations."""
    system: object
    scalars: dict           # (upper, lower) -> GaussRational
    words: dict             # (upper, lower) -> ReducedWord

    def pairs(self):
        return list(self.words)


@dataclass
class TwistedSectionData:
    """Per-cone algebra presentations of one twisted section."""
    gluing: GluingData
    locals: dict            # cone -> AlgElem

    @property
    def system(self):
        return self.gluing.system


def check_gluing(system, gluing):
    """Verify unit membership, perpendicular grading, and the full cocycle
    over every chain of nested faces; exact equalities throughout."""
    fan = system.fan
    findings = []
    pairs = set(fan.incidence_pairs())
    missing = pairs - set(gluing.words)
    for pair in sorted(missing):
        findings.append(Finding(
            clause=clauses.GLUING_UNIT,
            locus=f"{list(pair[0])} > {list(pair[1])}",
            ok=False, detail="incidence pair missing from gluing data"))
    for (upper, lower) in sorted(pairs & set(gluing.words)):
        w = gluing.words[(upper, lower)]
        c = gluing.scalars[(upper, lower)]
        chart = system.charts[lower]
        locus = f"{list(upper)} > {list(lower)}"
        findings.append(Finding(
            clause=clauses.GLUING_UNIT, locus=locus,
            ok=bool(c) and is_unit_in(chart, w),
            detail=f"{c}*{format_word(w)} must be a unit of the lower chart"))
        vec = abelianize(w)
        findings.append(Finding(
            clause=clauses.GLUING_PERP, locus=locus,
            ok=all(pairing(vec, fan.rays[i]) == 0 for i in lower),
            detail=f"exponent vector {vec} must kill the lower cone"))
    for (upper, mid, lower) in fan.chains():
        key_um, key_ml, key_ul = (upper, mid), (mid, lower), (upper, lower)
        if not all(k in gluing.words for k in (key_um, key_ml, key_ul)):
            continue
        locus = f"{list(upper)} > {list(mid)} > {list(lower)}"
        scal_ok = gluing.scalars[key_ul] == gluing.scalars[key_um] * gluing.scalars[key_ml]
        word_ok = gluing.words[key_ul] == word_mul(gluing.words[key_um],
                                                   gluing.words[key_ml])
        findings.append(Finding(
            clause=clauses.GLUING_COCYCLE, locus=locus,
            ok=scal_ok and word_ok,
            detail="scalar and word cocycle identities"))
    return Report(findings)


def sheaves_isomorphic(g1, g2, candidate):
    """Decide whether the candidate per-cone units turn one gluing datum
    into the other: c' = c_u^-1 c c_l and w' = w_u^-1 w w_l on every pair."""
    system = g1.system
    if set(g1.words) != set(g2.words):
        return False
    fan = system.fan
    for cone in fan.faces:
        if cone not in candidate:
            raise CandidateNotUnit(f"candidate missing cone {list(cone)}")
        c, w = candidate[cone]
        if not c:
            raise CandidateNotUnit(f"candidate scalar on {list(cone)} is zero")
        vec = abelianize(w)
        if not all(pairing(vec, fan.rays[i]) == 0 for i in cone):
            raise CandidateNotUnit(
                f"candidate word on {list(cone)} has exponent vector {vec} "
                "not perpendicular to the cone")
        if not is_unit_in(system.charts[cone], w):
            raise CandidateNotUnit(
                f"candidate word {format_word(w)} is not a unit on {list(cone)}")
    for (upper, lower) in g1.words:
        cu, wu = candidate[upper]
        cl, wl = candidate[lower]
        want_c = cu.inverse() * g1.scalars[(upper, lower)] * cl
        want_w = word_mul(word_mul(word_inv(wu), g1.words[(upper, lower)]), wl)
        if g2.scalars[(upper, lower)] != want_c or g2.words[(upper, lower)] != want_w:
            return False
    return True


def divisor_vertices(fan, divisor):
    """Solve the vertex exponents of the divisor on each maximal cone and
    extend to all faces via the first covering maximal cone in fan order."""
    vertex = {}
    covering = {}
    for sigma in fan.max_cones:
        duals = dual_generators(fan, sigma)
        m = tuple(
            sum(-divisor.coefficient(ri) * duals[k][j]
                for k, ri in enumerate(sigma))
            for j in range(fan.rank))
        vertex[sigma] = m
    for tau in fan.faces:
        if fan.is_maximal(tau):
            continue
        sigma = fan.covering_max_cones(tau)[0]
        covering[tau] = sigma
        vertex[tau] = vertex[sigma]
    return CartierData(vertex=vertex, covering=covering)


def sheaf_from_divisor(system, divisor):
    """Invertible-sheaf gluing data for a divisor, constructed by canonical
    word lifts of the vertex differences and absorbed by a softening.

    Returns (softened system, softening record, gluing data, vertex data).
    """
    fan = system.fan
    cartier = divisor_vertices(fan, divisor)
    lift = {cone: canonical_lift(cartier.vertex[cone], fan.rank)
            for cone in fan.faces}
    words = {}
    scalars = {}
    extras = {}
    for (upper, lower) in fan.incidence_pairs():
        w = word_mul(word_inv(lift[upper]), lift[lower])
        words[(upper, lower)] = w
        scalars[(upper, lower)] = ONE
        if w.is_identity():
            continue
        chart = system.charts[lower]
        if is_unit_in(chart, w):
            continue
        bucket = extras.setdefault(lower, [])
        for cand in (w, word_inv(w)):
            if cand not in bucket:
                bucket.append(cand)
    softened, record = soften(system, extras)
    gluing = GluingData(system=softened, scalars=scalars, words=words)
    report = check_gluing(softened, gluing)
    if not report.ok:
        raise AssertionError("constructed gluing data failed verification:\n"
                             + report.to_text())
    return softened, record, gluing, cartier


def polytope_sections(fan, divisor):
    """All lattice points of the divisor polytope, by exact projection
    bounds and exhaustive filtering; raises when the polytope is unbounded."""
    n = fan.rank
    ineqs = []
    for ri, ray in enumerate(fan.rays):
        ineqs.append((tuple(Fraction(x) for x in ray),
                      Fraction(-divisor.coefficient(ri)), False))
    if linear_feasible(ineqs, n) is None:
        return []
    boxes = []
    for i in range(n):
        lo, hi = fm_interval(ineqs, n, i)
        if lo is None or hi is None:
            raise UnboundedPolytope(
                f"divisor polytope is unbounded in coordinate {i + 1}")
        boxes.append(range(math.ceil(lo), math.floor(hi) + 1))
    out = []

    def walk(prefix, rest):
        if not rest:
            point = tuple(prefix)
            if all(sum(c * x for c, x in zip(coeffs, point)) >= b
                   for (coeffs, b, _) in ineqs):
                out.append(point)
            return
        for v in rest[0]:
            walk(prefix + [v], rest[1:])

    walk([], boxes)
    return sorted(out)


def _in_polytope(fan, cartier, point):
    for sigma in fan.max_cones:
        m = cartier.vertex[sigma]
        for i in sigma:
            if pairing(tuple(p - q for p, q in zip(point, m)), fan.rays[i]) < 0:
                return False
    return True


def extend_section(system, gluing, cartier, point):
    """Extend one polytope lattice point to a twisted section: express the
    vertex difference in each chart's generators (lifting factor-by-factor
    in generator order) and soften away the twisting factors.

    Returns (softened system, record, section over the softened system).
    """
    fan = system.fan
    if not _in_polytope(fan, cartier, point):
        raise NotASection(
            f"lattice point {list(point)} lies outside the divisor polytope")
    locals_ = {}
    for cone in fan.faces:
        target = tuple(p - q for p, q in zip(point, cartier.vertex[cone]))
        gens = list(system.charts[cone].generators)
        coeffs = comm_monoid_member(abelianized_chart(system, cone), target)
        if coeffs is None:
            raise NotASection(
                f"vertex difference {target} is not reachable in the chart "
                f"of cone {list(cone)}")
        word = identity_word(fan.rank)
        for g, c in zip(gens, coeffs):
            for _ in range(c):
                word = word_mul(word, g)
        locals_[cone] = AlgElem.from_word(word)
    extras = {}
    for (upper, lower) in fan.incidence_pairs():
        r_upper = next(iter(locals_[upper].terms))
        r_lower = next(iter(locals_[lower].terms))
        q = word_mul(word_mul(r_upper, gluing.words[(upper, lower)]),
                     word_inv(r_lower))
        if q.is_identity() or is_unit_in(system.charts[lower], q):
            continue
        bucket = extras.setdefault(lower, [])
        for cand in (q, word_inv(q)):
            if cand not in bucket:
                bucket.append(cand)
    softened, record = soften(system, extras)
    new_gluing = GluingData(system=softened, scalars=dict(gluing.scalars),
                            words=dict(gluing.words))
    section = TwistedSectionData(gluing=new_gluing, locals=dict(locals_))
    return softened, record, section


def check_twisted_section(system, gluing, section):
    """Verify the unit-equivalence of transported local presentations on
    every incidence; candidate units come from monomial quotients and are
    confirmed by exact multiplication."""
    fan = system.fan
    findings = []
    for (upper, lower) in sorted(fan.incidence_pairs()):
        locus = f"{list(upper)} > {list(lower)}"
        s_upper = section.locals.get(upper)
        s_lower = section.locals.get(lower)
        if s_upper is None or s_lower is None:
            findings.append(Finding(
                clause=clauses.TWISTED_SECTION, locus=locus, ok=False,
                detail="missing local presentation"))
            continue
        transported = (s_upper * gluing.words[(upper, lower)]).scale(
            gluing.scalars[(upper, lower)])
        if transported.is_zero() and s_lower.is_zero():
            findings.append(Finding(
                clause=clauses.TWISTED_SECTION, locus=locus, ok=True,
                detail="both sides vanish"))
            continue
        if transported.is_zero() != s_lower.is_zero():
            findings.append(Finding(
                clause=clauses.TWISTED_SECTION, locus=locus, ok=False,
                detail="exactly one side vanishes"))
            continue
        chart = system.charts[lower]
        unit = None
        for (wt, ct) in transported.monomials():
            for (ws, cs) in s_lower.monomials():
                cand_w = word_mul(wt, word_inv(ws))
                cand_c = ct / cs
                if not is_unit_in(chart, cand_w):
                    continue
                if AlgElem.from_word(cand_w).scale(cand_c) * s_lower == transported:
                    unit = (cand_c, cand_w)
                    break
            if unit:
                break
        findings.append(Finding(
            clause=clauses.TWISTED_SECTION, locus=locus, ok=unit is not None,
            detail=(f"verifying unit {unit[0]}*{format_word(unit[1])}"
                    if unit else "no verifying unit among monomial quotients")))
    return Report(findings)


def combine_sections(coeffs, sections):
    """Pointwise Q(i)-combination of section presentations over a common
    system; whether the result is again a twisted section is for the checker
    to decide."""
    base = sections[0]
    for s in sections[1:]:
        if s.system is not base.system:
            raise MismatchedSystems("sections live on different systems")
    locals_ = {}
    for cone in base.system.fan.faces:
        acc = AlgElem.zero(base.system.fan.rank)
        for c, s in zip(coeffs, sections):
            acc = acc + s.locals[cone].scale(c)
        locals_[cone] = acc
    return TwistedSectionData(gluing=base.gluing, locals=locals_)


def subscheme_from_sections(sections):
    """Per-cone two-sided ideal generators cut out by the sections."""
    if not sections:
        raise ValueError("at least one section is required")
    base = sections[0]
    for s in sections[1:]:
        if s.system is not base.system:
            raise MismatchedSystems("sections live on different systems")
    out = {}
    for cone in base.system.fan.faces:
        gens = [s.locals[cone] for s in sections if not s.locals[cone].is_zero()]
        out[cone] = gens
    return out
