"""Matrix points and their morphisms into a soft toric target: idempotent
systems with reduced decompositions, quasi-homomorphism charts and their
gluing, surrogate subalgebras, bounded kernels, line probes, and seeded
random matrix models.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import clauses
from .errors import (BadFactorization, MorphismInvalid, NotIdempotent,
                     PatternIncomplete)
from .exactmath import (GaussRational, minimal_polynomial, poly_squarefree,
                        qi_nullspace, qi_poly_roots, qim_add, qim_eq,
                        qim_flatten, qim_identity, qim_is_idempotent,
                        qim_is_zero, qim_mul, qim_rank, qim_scale, qim_sub,
                        qim_zero, solve_corner_inverse)
from .freeword import format_word, identity_word, is_unit_in, word_inv, word_mul
from .ncalgebra import AlgElem, BoundedIdeal
from .reports import Finding, Report


@dataclass
class IdemSystem:
    """Idempotents indexed by the cones of a fan, classified."""
    fan: object
    idempotents: dict        # cone -> matrix
    weak: bool
    strong: bool
    reduced: dict = None     # cone -> matrix, only when strong
    complete: bool = None
    witnesses: list = field(default_factory=list)


@dataclass
class QuasiHomChart:
    """Generator images of one chart under a quasi-homomorphism."""
    cone: tuple
    identity_image: list                 # idempotent matrix
    images: dict                         # generator word -> matrix
    witnesses: dict = field(default_factory=dict)  # unit generator -> corner inverse


@dataclass
class MorphismData:
    """A family of matrix quasi-homomorphism charts over a chart system."""
    rank_r: int
    system: object
    charts: dict                         # cone -> QuasiHomChart

    def idempotents(self):
        return {cone: chart.identity_image for cone, chart in self.charts.items()}


def _common_face(a, b):
    return tuple(sorted(set(a) & set(b)))


def eval_word(chart, word, factorization):
    """Image of a word given an explicit generator factorization.

    factorization lists (generator word, inverted flag); inverted factors
    are evaluated through recorded witnesses.
    """
    r = len(chart.identity_image)
    prod = identity_word(word.rank)
    acc = qim_identity(r)
    for item in factorization:
        if isinstance(item, tuple) and len(item) == 2 and isinstance(item[1], bool):
            g, inverted = item
        else:
            g, inverted = item, False
        if inverted:
            if g not in chart.witnesses:
                raise BadFactorization(
                    f"no inverse witness recorded for {format_word(g)}")
            acc = qim_mul(acc, chart.witnesses[g])
            prod = word_mul(prod, word_inv(g))
        else:
            if g not in chart.images:
                raise BadFactorization(f"no image recorded for {format_word(g)}")
            acc = qim_mul(acc, chart.images[g])
            prod = word_mul(prod, g)
    if prod != word:
        raise BadFactorization(
            f"factorization multiplies to {format_word(prod)}, not {format_word(word)}")
    if not factorization:
        return [row[:] for row in chart.identity_image]
    return acc


def eval_elem(chart, elem, factorizations):
    """Q(i)-linear extension of eval_word over an algebra element."""
    r = len(chart.identity_image)
    acc = qim_zero(r)
    for w, c in elem.monomials():
        acc = qim_add(acc, qim_scale(c, eval_word(chart, w, factorizations[w])))
    return acc


def check_quasi_hom(chart):
    """Idempotency of the identity image, corner absorption of every
    generator image, and the recorded corner-inverse identities."""
    e = chart.identity_image
    findings = []
    locus = f"cone {list(chart.cone)}"
    findings.append(Finding(
        clause=clauses.QUASI_HOM, locus=locus,
        ok=qim_is_idempotent(e),
        detail="identity image must be idempotent"))
    for g, a in chart.images.items():
        ok = qim_eq(qim_mul(e, a), a) and qim_eq(qim_mul(a, e), a)
        findings.append(Finding(
            clause=clauses.QUASI_HOM, locus=locus, ok=ok,
            detail=f"image of {format_word(g)} must be absorbed by the idempotent"))
    for g, w in chart.witnesses.items():
        a = chart.images.get(g)
        ok = (a is not None and qim_eq(qim_mul(a, w), e) and qim_eq(qim_mul(w, a), e)
              and qim_eq(qim_mul(qim_mul(e, w), e), w))
        findings.append(Finding(
            clause=clauses.QUASI_HOM, locus=locus, ok=ok,
            detail=f"corner inverse of {format_word(g)}"))
    return Report(findings)


def check_gluing_pair(system, upper_chart, lower_chart, search_bound=12):
    """The three gluing conditions for one face incidence: subordination of
    idempotents, centralizing of upper images, and compatibility of the
    lower restriction, evaluated through a factorization found in the lower
    chart (bounded search, reported as such when it fails)."""
    e_up = upper_chart.identity_image
    e_lo = lower_chart.identity_image
    upper, lower = upper_chart.cone, lower_chart.cone
    locus = f"{list(upper)} > {list(lower)}"
    findings = []
    ok_a = qim_eq(qim_mul(e_lo, e_up), e_lo) and qim_eq(qim_mul(e_up, e_lo), e_lo)
    findings.append(Finding(
        clause=clauses.GLUE_SUBORDINATE, locus=locus, ok=ok_a,
        detail="lower idempotent subordinate to upper"))
    for g, a in upper_chart.images.items():
        ok_b = qim_eq(qim_mul(a, e_lo), qim_mul(e_lo, a))
        findings.append(Finding(
            clause=clauses.GLUE_CENTRALIZER, locus=locus, ok=ok_b,
            detail=f"image of {format_word(g)} must centralize the lower idempotent"))
    lower_sub = system.charts[lower]
    for g, a in upper_chart.images.items():
        fact = lower_sub.factorization(g, max_factors=search_bound)
        if fact is None:
            findings.append(Finding(
                clause=clauses.GLUE_COMPATIBLE, locus=locus, ok=False,
                bound_relative=True,
                detail=f"no lower factorization of {format_word(g)} within "
                       f"{search_bound} factors"))
            continue
        lower_val = eval_word(
            lower_chart, g, [(lower_sub.generators[i], False) for i in fact])
        ok_c = (qim_eq(qim_mul(e_lo, a), lower_val)
                and qim_eq(qim_mul(a, e_lo), lower_val))
        findings.append(Finding(
            clause=clauses.GLUE_COMPATIBLE, locus=locus, ok=ok_c,
            detail=f"lower restriction of {format_word(g)}"))
    return Report(findings)


def idem_classify(fan, idempotents):
    """Classify a cone-indexed family of idempotents as weak/strong, compute
    the alternating-sum reduced idempotents when strong, and decide
    completeness; all identities checked exactly."""
    idem = {tuple(c): m for c, m in idempotents.items()}
    for cone, m in idem.items():
        if not qim_is_idempotent(m):
            raise NotIdempotent(f"matrix on cone {list(cone)} is not idempotent")
    witnesses = []
    weak = True
    for (upper, lower) in fan.incidence_pairs():
        a, b = idem[upper], idem[lower]
        if not (qim_eq(qim_mul(b, a), b) and qim_eq(qim_mul(a, b), b)):
            weak = False
            witnesses.append(Finding(
                clause=clauses.IDEM_WEAK, locus=f"{list(upper)} > {list(lower)}",
                ok=False, detail="subordination fails"))
    strong = True
    faces = list(fan.faces)
    for i, a in enumerate(faces):
        for b in faces[i:]:
            meet = _common_face(a, b)
            prod = qim_mul(idem[a], idem[b])
            if not qim_eq(prod, idem[meet]):
                strong = False
                witnesses.append(Finding(
                    clause=clauses.IDEM_STRONG, locus=f"{list(a)} ^ {list(b)}",
                    ok=False,
                    detail=f"product differs from the idempotent on {list(meet)}"))
    reduced = None
    complete = None
    if strong:
        r = len(next(iter(idem.values())))
        reduced = {}
        for cone in faces:
            acc = qim_zero(r)
            sub = list(cone)
            for mask in range(1 << len(sub)):
                face = tuple(sub[i] for i in range(len(sub)) if mask >> i & 1)
                sign = (-1) ** (len(sub) - len(face))
                acc = qim_add(acc, qim_scale(GaussRational(sign), idem[face]))
            reduced[cone] = acc
        for i, a in enumerate(faces):
            if not qim_is_idempotent(reduced[a]):
                witnesses.append(Finding(
                    clause=clauses.IDEM_REDUCED, locus=f"{list(a)}", ok=False,
                    detail="reduced idempotent is not idempotent"))
            for b in faces[i + 1:]:
                if not qim_is_zero(qim_mul(reduced[a], reduced[b])):
                    witnesses.append(Finding(
                        clause=clauses.IDEM_REDUCED,
                        locus=f"{list(a)} , {list(b)}", ok=False,
                        detail="reduced idempotents are not orthogonal"))
        for cone in faces:
            acc = qim_zero(r)
            for face in faces:
                if set(face) <= set(cone):
                    acc = qim_add(acc, reduced[face])
            if not qim_eq(acc, idem[cone]):
                witnesses.append(Finding(
                    clause=clauses.IDEM_REDUCED, locus=f"{list(cone)}", ok=False,
                    detail="face sum of reduced idempotents does not rebuild"))
        total = qim_zero(r)
        for cone in faces:
            total = qim_add(total, reduced[cone])
        complete = qim_eq(total, qim_identity(r))
    return IdemSystem(fan=fan, idempotents=idem, weak=weak, strong=strong,
                      reduced=reduced, complete=complete, witnesses=witnesses)


def check_relations(system, chart, rel_bound=4):
    """Consistency of generator images on all monoid relations discoverable
    among generator products of bounded length; bound-relative by nature.

    Returns (word -> matrix map, findings)."""
    sub = system.charts[chart.cone]
    r = len(chart.identity_image)
    values = {identity_word(system.fan.rank): [row[:] for row in chart.identity_image]}
    findings = []
    frontier = [identity_word(system.fan.rank)]
    for _ in range(rel_bound):
        nxt = []
        for w in frontier:
            a = values[w]
            for g in sub.generators:
                img = chart.images.get(g)
                if img is None:
                    continue
                w2 = word_mul(w, g)
                prod = qim_mul(a, img)
                if w2 in values:
                    if not qim_eq(values[w2], prod):
                        findings.append(Finding(
                            clause=clauses.MORPHISM_GLUING,
                            locus=f"cone {list(chart.cone)}", ok=False,
                            detail=f"generator relation at {format_word(w2)} "
                                   "evaluates inconsistently"))
                else:
                    values[w2] = prod
                    nxt.append(w2)
        frontier = nxt
    return values, findings


def verify_morphism(morphism, search_bound=12, rel_bound=4):
    """Aggregate verdict: every chart is a quasi-homomorphism, every
    incidence glues, generator relations are consistent to the stated bound,
    and the idempotent family is a complete strong system."""
    system = morphism.system
    fan = system.fan
    report = Report([])
    for cone in fan.faces:
        chart = morphism.charts.get(cone)
        if chart is None:
            report.add(Finding(
                clause=clauses.MORPHISM_GLUING, locus=f"cone {list(cone)}",
                ok=False, detail="chart missing"))
            continue
        missing = [g for g in system.charts[cone].generators
                   if g not in chart.images]
        for g in missing:
            report.add(Finding(
                clause=clauses.MORPHISM_GLUING, locus=f"cone {list(cone)}",
                ok=False, detail=f"no image for generator {format_word(g)}"))
        report.extend(check_quasi_hom(chart))
        for g in system.charts[cone].generators:
            if g in chart.images and is_unit_in(system.charts[cone], g):
                if g not in chart.witnesses:
                    w = solve_corner_inverse(chart.identity_image, chart.images[g])
                    if w is None:
                        report.add(Finding(
                            clause=clauses.QUASI_HOM, locus=f"cone {list(cone)}",
                            ok=False,
                            detail=f"unit generator {format_word(g)} has no "
                                   "corner inverse"))
                    else:
                        chart.witnesses[g] = w
        if not fan.is_maximal(cone):
            _, rel_findings = check_relations(system, chart, rel_bound)
            for f in rel_findings:
                report.add(f)
    charts_ok = report.ok
    try:
        idem = idem_classify(fan, morphism.idempotents())
        for f in idem.witnesses:
            report.add(f)
        report.add(Finding(
            clause=clauses.MORPHISM_COMPLETE, locus="idempotents",
            ok=bool(idem.strong and idem.complete),
            detail="idempotent family must be a complete strong system"))
    except (NotIdempotent, KeyError) as exc:
        report.add(Finding(clause=clauses.MORPHISM_COMPLETE, locus="idempotents",
                           ok=False, detail=str(exc)))
    if not charts_ok:
        return report
    for (upper, lower) in fan.incidence_pairs():
        report.extend(check_gluing_pair(
            system, morphism.charts[upper], morphism.charts[lower], search_bound))
    return report


def surrogate_basis(morphism):
    """Basis of the unital subalgebra generated by all chart images, by
    span closure inside the matrix algebra."""
    report = verify_morphism(morphism)
    if not report.ok:
        raise MorphismInvalid("surrogate requested for an invalid morphism:\n"
                              + report.to_text())
    r = morphism.rank_r
    mats = [qim_identity(r)]
    for chart in morphism.charts.values():
        mats.append(chart.identity_image)
        mats.extend(chart.images.values())
        mats.extend(chart.witnesses.values())
    basis = []        # list of (flat echelon vector, matrix)
    out = []

    def try_add(m):
        vec = qim_flatten(m)
        for (piv, evec) in basis:
            if vec[piv]:
                f = vec[piv] / evec[piv]
                vec = [x - f * y for x, y in zip(vec, evec)]
        piv = next((i for i, x in enumerate(vec) if x), None)
        if piv is None:
            return False
        basis.append((piv, vec))
        out.append(m)
        return True

    for m in mats:
        try_add(m)
    changed = True
    while changed:
        changed = False
        snapshot = list(out)
        for a in snapshot:
            for b in snapshot:
                if try_add(qim_mul(a, b)):
                    changed = True
    return out


def image_kernel_bounded(morphism, cone, bound):
    """Kernel of the chart evaluation on products of at most `bound`
    generators, as algebra elements; a truncation of the morphism kernel."""
    report = verify_morphism(morphism)
    if not report.ok:
        raise MorphismInvalid("kernel requested for an invalid morphism:\n"
                              + report.to_text())
    cone = tuple(cone)
    chart = morphism.charts[cone]
    values, findings = check_relations(morphism.system, chart, bound)
    if findings:
        raise MorphismInvalid("generator relations are inconsistent on the chart")
    words = sorted(values, key=lambda w: w.sort_key())
    columns = [qim_flatten(values[w]) for w in words]
    null = qi_nullspace(columns, morphism.rank_r ** 2)
    rank = morphism.system.fan.rank
    gens = []
    for coeffs in null:
        elem = AlgElem(rank, {w: c for w, c in zip(words, coeffs) if c})
        if not elem.is_zero():
            gens.append(elem)
    degree = max([bound] + [g.max_word_len() for g in gens])
    return BoundedIdeal(tuple(gens), degree)


def graph_of_morphism(morphism, bound):
    """Per-cone word-to-matrix action maps: the module structure carried by
    the fundamental column space, truncated at the bound."""
    out = {}
    for cone, chart in morphism.charts.items():
        values, findings = check_relations(morphism.system, chart, bound)
        if findings:
            raise MorphismInvalid("generator relations are inconsistent on the chart")
        out[cone] = values
    return out


@dataclass(frozen=True)
class LineProbeResult:
    minpoly: tuple
    fibers: tuple            # (root, fiber dimension) pairs
    unresolved_factor: tuple  # coefficient list of the rootless cofactor


def a1_probe(matrix):
    """Project a matrix point to the affine line through one coordinate:
    minimal polynomial, its rational Gaussian roots, and the fiber dimension
    r^2 - r*rank(a - root) over each root."""
    r = len(matrix)
    mp = minimal_polynomial(matrix)
    sf = poly_squarefree(mp)
    roots, remainder = qi_poly_roots(sf)
    fibers = []
    for root in sorted(roots, key=lambda g: (g.re, g.im)):
        shifted = qim_sub(matrix, qim_scale(root, qim_identity(r)))
        fibers.append((root, r * r - r * qim_rank(shifted)))
    return LineProbeResult(minpoly=tuple(mp), fibers=tuple(fibers),
                           unresolved_factor=tuple(remainder))


# ---------------------------------------------------------------------------
# Matrix-model sampling
# ---------------------------------------------------------------------------

def trivial_pattern(fan, r):
    """Identity idempotent on every maximal cone, zero elsewhere."""
    out = {}
    for cone in fan.faces:
        out[cone] = qim_identity(r) if fan.is_maximal(cone) else qim_zero(r)
    return out


def _random_entry(rng):
    return GaussRational(Fraction(rng.randint(-5, 5), rng.randint(1, 3)),
                         Fraction(rng.randint(-2, 2), 1))


def _random_matrix(rng, r):
    return [[_random_entry(rng) for _ in range(r)] for _ in range(r)]


def _block(reduced, cone, m):
    e = reduced[cone]
    return qim_mul(qim_mul(e, m), e)


def sample_matrix_model(fan, system, r, pattern, seed):
    """Seeded random morphism data compatible with the idempotent pattern.

    Each letter gets one global random matrix; per reduced-idempotent block
    the letters act by their block compressions, with rejection sampling to
    keep blocks invertible wherever an inverse generator must be evaluated.
    The result always passes verify_morphism.
    """
    if pattern == "trivial":
        pattern = trivial_pattern(fan, r)
    idem = idem_classify(fan, pattern)
    if not (idem.strong and idem.complete):
        raise PatternIncomplete(
            "idempotent pattern must form a complete strong system")
    reduced = idem.reduced
    rng = random.Random(seed)
    # letter i needs an invertible block wherever some chart evaluation will
    # hit the inverse letter: a chart generator containing -i, or a unit
    # generator containing +-i (its witness inverts every letter)
    n = fan.rank
    inverse_needed = {i: set() for i in range(1, n + 1)}
    for cone in fan.faces:
        chart = system.charts[cone]
        letters_seen = set()
        for g in chart.generators:
            for l in g.letters:
                if l < 0:
                    letters_seen.add(-l)
            if is_unit_in(chart, g):
                letters_seen.update(abs(l) for l in g.letters)
        if not letters_seen:
            continue
        for block in fan.faces:
            if set(block) <= set(cone) and not qim_is_zero(reduced[block]):
                for i in letters_seen:
                    inverse_needed[i].add(block)
    letter_blocks = {}
    for i in range(1, n + 1):
        while True:
            m = _random_matrix(rng, r)
            blocks = {}
            ok = True
            for cone in fan.faces:
                if qim_is_zero(reduced[cone]):
                    blocks[cone] = (qim_zero(r), qim_zero(r))
                    continue
                b = _block(reduced, cone, m)
                inv = None
                if cone in inverse_needed[i]:
                    inv = solve_corner_inverse(reduced[cone], b)
                    if inv is None:
                        ok = False
                        break
                blocks[cone] = (b, inv)
            if ok:
                letter_blocks[i] = blocks
                break

    def block_value(word, cone):
        """Image of a word on one reduced block, multiplying letter blocks."""
        e = reduced[cone]
        if qim_is_zero(e):
            return qim_zero(r)
        acc = [row[:] for row in e]
        for l in word.letters:
            base = letter_blocks[abs(l)][cone]
            m = base[0] if l > 0 else base[1]
            if m is None:
                m = solve_corner_inverse(e, base[0])
                if m is None:
                    raise MorphismInvalid(
                        "sampled block unexpectedly lost invertibility")
                letter_blocks[abs(l)][cone] = (base[0], m)
            acc = qim_mul(acc, m)
        return acc

    def chart_value(word, cone):
        acc = qim_zero(r)
        for block in fan.faces:
            if set(block) <= set(cone):
                acc = qim_add(acc, block_value(word, block))
        return acc

    charts = {}
    for cone in fan.faces:
        sub = system.charts[cone]
        images = {g: chart_value(g, cone) for g in sub.generators}
        witnesses = {}
        for g in sub.generators:
            if is_unit_in(sub, g):
                witnesses[g] = chart_value(word_inv(g), cone)
        charts[cone] = QuasiHomChart(
            cone=cone, identity_image=pattern[cone], images=images,
            witnesses=witnesses)
    morphism = MorphismData(rank_r=r, system=system, charts=charts)
    report = verify_morphism(morphism)
    if not report.ok:
        raise MorphismInvalid("sampled morphism failed verification:\n"
                              + report.to_text())
    return morphism
