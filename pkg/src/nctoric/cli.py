"""Command-line surface: parse artifact files, dispatch to the library, and
emit pass/fail reports with exact exit codes (0 pass, 1 fail, 2 bad input).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import clauses
from .azumaya import (a1_probe, image_kernel_bounded, sample_matrix_model,
                      surrogate_basis, verify_morphism)
from .deltasystem import check_admissible, soften
from .errors import (NctoricError, ParseError, RankMismatch, TargetExceedsBound)
from .errors import (BadLift, CandidateNotUnit, ExtraOutsideDualCone,
                     MaximalChartTouched, MismatchedSystems,
                     MissingReferenceCone, MorphismInvalid,
                     NoPositivityFunctional, NonPrimitiveRay, NotAFan,
                     NotASection, NotAdmissibleInput, NotIdempotent,
                     NotIndexOne, PatternIncomplete, UnboundedPolytope)
from .exactmath import format_gauss, parse_gauss
from .freeword import format_word, parse_word
from .ncalgebra import BoundedIdeal, bounded_ideal_member, format_alg, parse_alg
from .reports import Finding, Report
from . import serialize
from .sheaves import (check_gluing, check_twisted_section, extend_section,
                      polytope_sections, sheaf_from_divisor, sheaves_isomorphic,
                      subscheme_from_sections)

_ERROR_CLAUSES = {
    NonPrimitiveRay: clauses.FAN_PRIMITIVE,
    NotIndexOne: clauses.FAN_INDEX_ONE,
    MissingReferenceCone: clauses.FAN_REFERENCE,
    NotAFan: clauses.FAN_SEPARATION,
    BadLift: clauses.BUILD_SYSTEM,
    NotAdmissibleInput: clauses.COMPLETION,
    ExtraOutsideDualCone: clauses.AUGMENTATION,
    MaximalChartTouched: clauses.SOFTENING,
    UnboundedPolytope: clauses.POLYTOPE,
    NotASection: clauses.SECTION_EXTEND,
    CandidateNotUnit: clauses.GLUING_ISOM,
    NotIdempotent: clauses.IDEM_STRONG,
    PatternIncomplete: clauses.MATRIX_MODEL,
    MorphismInvalid: clauses.MORPHISM_GLUING,
    NoPositivityFunctional: clauses.ADMISSIBLE_SURJECTIVE,
    MismatchedSystems: clauses.SUBSCHEME,
}


def worker_count():
    raw = os.environ.get("NCTORIC_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ParseError(f"NCTORIC_THREADS must be an integer, got {raw!r}") from None
    return max(1, n)


def _pmap():
    n = worker_count()
    if n == 1:
        return map
    pool = ThreadPoolExecutor(max_workers=n)
    return lambda fn, items: list(pool.map(fn, items))


def _emit(report, args, payload=None):
    if getattr(args, "json", False):
        obj = report.to_json()
        if payload:
            obj.update(payload)
        print(json.dumps(obj, indent=2))
    else:
        print(report.to_text(verbose=getattr(args, "verbose", False)))
        for line in _payload_lines(payload):
            print(line)
    return 0 if report.status == "pass" else 1


def _payload_lines(payload):
    if not payload:
        return []
    lines = []
    for key, val in payload.items():
        if isinstance(val, list):
            lines.append(f"{key}:")
            lines.extend(f"  {v}" for v in val)
        else:
            lines.append(f"{key}: {val}")
    return lines


def _parse_cone(text):
    text = text.strip()
    if text in ("", "0", "()"):
        return ()
    return tuple(sorted(int(t) for t in text.split(",")))


def _load_system_or_fan(path):
    obj = serialize.load_json(path)
    if "rays" in obj:
        fan = serialize.fan_from_obj(obj, where=path)
        from .deltasystem import build_system
        system = build_system(fan)
        return system, {"fan": fan, "lifts": {}, "stages": []}
    return serialize.system_from_obj(obj, where=path,
                                     base_dir=os.path.dirname(path) or ".")


def _exception_report(exc):
    clause = _ERROR_CLAUSES.get(type(exc))
    if clause is None:
        raise exc
    return Report([Finding(clause=clause, locus="input", ok=False, detail=str(exc))])


# --- fan ---------------------------------------------------------------------

def cmd_fan_check(args):
    obj = serialize.load_json(args.file)
    try:
        fan = serialize.fan_from_obj(obj, where=args.file)
    except NctoricError as exc:
        return _emit(_exception_report(exc), args)
    report = Report([Finding(clause=clauses.FAN_INDEX_ONE, locus="fan", ok=True,
                             detail=f"{len(fan.rays)} rays, "
                                    f"{len(fan.max_cones)} maximal cones, "
                                    f"{len(fan.faces)} faces")])
    if args.out:
        serialize.dump_json(serialize.fan_to_obj(fan), args.out)
    return _emit(report, args)


# --- system ------------------------------------------------------------------

def cmd_system_build(args):
    try:
        system, recipe = _load_system_or_fan(args.file)
    except NctoricError as exc:
        return _emit(_exception_report(exc), args)
    report = check_admissible(system, pmap=_pmap())
    if args.out:
        serialize.dump_json(serialize.system_to_obj(
            recipe["fan"], recipe["lifts"], recipe["stages"]), args.out)
    payload = {"charts": [f"{list(c)}: "
                          + ", ".join(format_word(g) for g in system.charts[c].generators)
                          for c in system.fan.faces]}
    return _emit(report, args, payload)


def cmd_system_check(args):
    try:
        system, _ = _load_system_or_fan(args.file)
    except NctoricError as exc:
        return _emit(_exception_report(exc), args)
    return _emit(check_admissible(system, pmap=_pmap()), args)


def _load_extras(path, rank):
    obj = serialize.load_json(path)
    stage = {}
    for item in obj:
        cone = tuple(sorted(item["cone"]))
        stage[cone] = [parse_word(w, rank) for w in item["words"]]
    return stage


def cmd_system_augment(args, softening=False):
    try:
        system, recipe = _load_system_or_fan(args.file)
        stage = _load_extras(args.extras, system.fan.rank)
        if softening:
            system, record = soften(system, stage)
        else:
            from .deltasystem import augment_system
            system = augment_system(system, stage)
            record = None
    except NctoricError as exc:
        return _emit(_exception_report(exc), args)
    recipe["stages"].append(stage)
    if args.out:
        serialize.dump_json(serialize.system_to_obj(
            recipe["fan"], recipe["lifts"], recipe["stages"]), args.out)
    report = check_admissible(system, pmap=_pmap())
    payload = None
    if record is not None:
        payload = {"added": [f"{list(c)}: " + ", ".join(format_word(w) for w in ws)
                             for c, ws in sorted(record.added.items()) if ws]}
    return _emit(report, args, payload)


def cmd_system_soften(args):
    return cmd_system_augment(args, softening=True)


# --- sheaf -------------------------------------------------------------------

def cmd_sheaf_from_divisor(args):
    try:
        system, recipe = _load_system_or_fan(args.file)
        divisor = serialize.divisor_from_obj(
            serialize.load_json(args.divisor), system.fan, where=args.divisor)
        softened, record, gluing, cartier = sheaf_from_divisor(system, divisor)
    except NctoricError as exc:
        return _emit(_exception_report(exc), args)
    added = {c: ws for c, ws in record.added.items() if ws}
    if added:
        recipe["stages"].append(added)
    if args.out:
        serialize.dump_json(serialize.sheaf_to_obj(recipe, gluing), args.out)
    report = check_gluing(softened, gluing)
    return _emit(report, args)


def cmd_sheaf_check(args):
    try:
        gluing, _ = serialize.sheaf_from_obj(serialize.load_json(args.file),
                                             where=args.file)
    except NctoricError as exc:
        return _emit(_exception_report(exc), args)
    return _emit(check_gluing(gluing.system, gluing), args)


def cmd_sheaf_isom(args):
    try:
        g1, _ = serialize.sheaf_from_obj(serialize.load_json(args.first),
                                         where=args.first)
        g2, _ = serialize.sheaf_from_obj(serialize.load_json(args.second),
                                         where=args.second)
        cand_obj = serialize.load_json(args.candidate)
        candidate = {}
        for item in cand_obj:
            cone = tuple(sorted(item["cone"]))
            candidate[cone] = (parse_gauss(item["scalar"]),
                               parse_word(item["word"], g1.system.fan.rank))
        ok = sheaves_isomorphic(g1, g2, candidate)
    except NctoricError as exc:
        return _emit(_exception_report(exc), args)
    report = Report([Finding(clause=clauses.GLUING_ISOM, locus="candidate",
                             ok=ok, detail="candidate units identify the gluing data")])
    return _emit(report, args)


# --- sections ------------------------------------------------------------------

def cmd_section_list(args):
    try:
        system, _ = _load_system_or_fan(args.file)
        divisor = serialize.divisor_from_obj(
            serialize.load_json(args.divisor), system.fan, where=args.divisor)
        points = polytope_sections(system.fan, divisor)
    except NctoricError as exc:
        return _emit(_exception_report(exc), args)
    report = Report([Finding(clause=clauses.POLYTOPE, locus="divisor polytope",
                             ok=True, detail=f"{len(points)} lattice points")])
    return _emit(report, args, {"points": [list(p) for p in points]})


def cmd_section_extend(args):
    try:
        obj = serialize.load_json(args.file)
        if "locals" in obj:
            prior, recipe = serialize.section_from_obj(obj, where=args.file)
            gluing = prior.gluing
        else:
            gluing, recipe = serialize.sheaf_from_obj(obj, where=args.file)
        divisor = serialize.divisor_from_obj(
            serialize.load_json(args.divisor), gluing.system.fan, where=args.divisor)
        from .sheaves import divisor_vertices
        cartier = divisor_vertices(gluing.system.fan, divisor)
        point = tuple(int(t) for t in args.point.split(","))
        softened, record, section = extend_section(gluing.system, gluing,
                                                   cartier, point)
    except NctoricError as exc:
        return _emit(_exception_report(exc), args)
    added = {c: ws for c, ws in record.added.items() if ws}
    if added:
        recipe["stages"].append(added)
    if args.out:
        serialize.dump_json(serialize.section_to_obj(recipe, section), args.out)
    report = check_twisted_section(softened, section.gluing, section)
    return _emit(report, args)


def cmd_section_check(args):
    try:
        section, _ = serialize.section_from_obj(serialize.load_json(args.file),
                                                where=args.file)
    except NctoricError as exc:
        return _emit(_exception_report(exc), args)
    return _emit(check_twisted_section(section.system, section.gluing, section), args)


# --- subschemes -----------------------------------------------------------------

def cmd_subscheme_build(args):
    try:
        loaded = [serialize.section_from_obj(serialize.load_json(path), where=path)
                  for path in args.sections]
        # carrier: the largest system among the inputs; every presentation
        # must live inside its charts (softenings only ever grow charts)
        carrier_idx = max(
            range(len(loaded)),
            key=lambda i: sum(len(sm.generators)
                              for sm in loaded[i][0].system.charts.values()))
        carrier, recipe = loaded[carrier_idx]
        sections = []
        for (section, _), path in zip(loaded, args.sections):
            for cone, elem in section.locals.items():
                chart = carrier.system.charts[cone]
                for w in elem.terms:
                    if not chart.member(w):
                        raise MismatchedSystems(
                            f"section {path}: word {format_word(w)} is not in "
                            f"the carrier chart of cone {list(cone)}")
            sections.append(type(section)(gluing=carrier.gluing,
                                          locals=section.locals))
        charts = subscheme_from_sections(sections)
    except NctoricError as exc:
        return _emit(_exception_report(exc), args)
    if args.out:
        serialize.dump_json(serialize.subscheme_to_obj(recipe, charts), args.out)
    report = Report([Finding(clause=clauses.SUBSCHEME, locus="charts", ok=True,
                             detail=f"{len(sections)} sections over {len(charts)} cones")])
    payload = {"charts": [f"{list(c)}: " + "; ".join(format_alg(g) for g in gens)
                          for c, gens in sorted(charts.items())]}
    return _emit(report, args, payload)


def cmd_subscheme_member(args):
    try:
        system, charts, _ = serialize.subscheme_from_obj(
            serialize.load_json(args.file), where=args.file)
        cone = _parse_cone(args.cone)
        if cone not in charts:
            raise ParseError(f"cone {list(cone)} not present in subscheme file")
        target = parse_alg(args.element, system.fan.rank)
        ideal = BoundedIdeal(tuple(charts[cone]), args.bound)
        cert = bounded_ideal_member(ideal, target)
    except TargetExceedsBound as exc:
        return _emit(Report([Finding(clause=clauses.SUBSCHEME, locus="target",
                                     ok=False, detail=str(exc))]), args)
    except NctoricError as exc:
        return _emit(_exception_report(exc), args)
    if cert is None:
        report = Report([Finding(clause=clauses.SUBSCHEME, locus=f"cone {list(cone)}",
                                 ok=False, bound_relative=True,
                                 detail=f"no certificate at bound {args.bound} "
                                        "(not a proof of non-membership)")])
        return _emit(report, args)
    report = Report([Finding(clause=clauses.SUBSCHEME, locus=f"cone {list(cone)}",
                             ok=True, detail=f"certificate with "
                                             f"{len(cert.combination)} terms")])
    payload = {"certificate": [
        f"({format_gauss(c)}) * [{format_word(x)}] * g{gi} * [{format_word(y)}]"
        for c, x, gi, y in cert.combination]}
    return _emit(report, args, payload)


# --- morphisms --------------------------------------------------------------------

def cmd_morphism_check(args):
    try:
        morphism, _ = serialize.morphism_from_obj(serialize.load_json(args.file),
                                                  where=args.file)
    except NctoricError as exc:
        return _emit(_exception_report(exc), args)
    return _emit(verify_morphism(morphism, rel_bound=args.bound), args)


def cmd_morphism_sample(args):
    try:
        system, recipe = _load_system_or_fan(args.file)
        if args.pattern == "trivial":
            pattern = "trivial"
        else:
            pattern = serialize.pattern_from_obj(
                serialize.load_json(args.pattern), args.r, where=args.pattern)
        morphism = sample_matrix_model(system.fan, system, args.r, pattern,
                                       args.seed)
    except NctoricError as exc:
        return _emit(_exception_report(exc), args)
    if args.out:
        serialize.dump_json(serialize.morphism_to_obj(recipe, morphism), args.out)
    report = Report([Finding(clause=clauses.MATRIX_MODEL, locus="sample", ok=True,
                             detail=f"rank {args.r}, seed {args.seed}")])
    return _emit(report, args)


def cmd_morphism_surrogate(args):
    try:
        morphism, _ = serialize.morphism_from_obj(serialize.load_json(args.file),
                                                  where=args.file)
        basis = surrogate_basis(morphism)
    except NctoricError as exc:
        return _emit(_exception_report(exc), args)
    report = Report([Finding(clause=clauses.SURROGATE, locus="surrogate", ok=True,
                             detail=f"dimension {len(basis)}")])
    payload = {"basis": [" ".join(serialize.matrix_to_entries(m)) for m in basis]}
    return _emit(report, args, payload)


def cmd_morphism_kernel(args):
    try:
        morphism, _ = serialize.morphism_from_obj(serialize.load_json(args.file),
                                                  where=args.file)
        ideal = image_kernel_bounded(morphism, _parse_cone(args.cone), args.bound)
    except NctoricError as exc:
        return _emit(_exception_report(exc), args)
    report = Report([Finding(clause=clauses.MORPHISM_IMAGE,
                             locus=f"cone {args.cone}", ok=True,
                             detail=f"{len(ideal.generators)} kernel generators "
                                    f"at bound {args.bound}")])
    payload = {"generators": [format_alg(g) for g in ideal.generators]}
    return _emit(report, args, payload)


# --- probes ----------------------------------------------------------------------

def cmd_probe_a1(args):
    try:
        obj = serialize.load_json(args.file)
        size = int(obj["size"])
        matrix = serialize.matrix_from_entries(obj["entries"], size, where=args.file)
        result = a1_probe(matrix)
    except NctoricError as exc:
        return _emit(_exception_report(exc), args)
    minpoly = " + ".join(f"({format_gauss(c)})*t^{k}"
                         for k, c in enumerate(result.minpoly) if c)
    payload = {
        "minpoly": minpoly,
        "fibers": [f"root {format_gauss(root)}: fiber dimension {d}"
                   for root, d in result.fibers],
    }
    if result.unresolved_factor:
        payload["unresolved_factor"] = " + ".join(
            f"({format_gauss(c)})*t^{k}" for k, c in enumerate(result.unresolved_factor) if c)
    report = Report([Finding(clause=clauses.A1_PROBE, locus="probe", ok=True,
                             detail=f"{len(result.fibers)} rational Gaussian roots")])
    return _emit(report, args, payload)


# --- parser ------------------------------------------------------------------------

def build_parser():
    top = argparse.ArgumentParser(prog="nctoric",
                                  description="exact toric charts, sheaves, "
                                              "and matrix-point morphisms")

    def common(p, out=False, bound=None, seed=False):
        p.add_argument("--json", action="store_true", help="machine-readable report")
        p.add_argument("--verbose", action="store_true", help="list passing checks too")
        if out:
            p.add_argument("--out", help="write the resulting artifact here")
        if bound is not None:
            p.add_argument("--bound", type=int, default=bound)
        if seed:
            p.add_argument("--seed", type=int, default=0)

    groups = top.add_subparsers(dest="group", required=True)

    fan = groups.add_parser("fan").add_subparsers(dest="verb", required=True)
    p = fan.add_parser("check")
    p.add_argument("file")
    common(p, out=True)
    p.set_defaults(func=cmd_fan_check)

    system = groups.add_parser("system").add_subparsers(dest="verb", required=True)
    p = system.add_parser("build")
    p.add_argument("file")
    common(p, out=True)
    p.set_defaults(func=cmd_system_build)
    p = system.add_parser("check")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=cmd_system_check)
    for verb, fn in (("augment", cmd_system_augment), ("soften", cmd_system_soften)):
        p = system.add_parser(verb)
        p.add_argument("file")
        p.add_argument("--extras", required=True)
        common(p, out=True)
        p.set_defaults(func=fn)

    sheaf = groups.add_parser("sheaf").add_subparsers(dest="verb", required=True)
    p = sheaf.add_parser("from-divisor")
    p.add_argument("file")
    p.add_argument("--divisor", required=True)
    common(p, out=True)
    p.set_defaults(func=cmd_sheaf_from_divisor)
    p = sheaf.add_parser("check")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=cmd_sheaf_check)
    p = sheaf.add_parser("isom")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--candidate", required=True)
    common(p)
    p.set_defaults(func=cmd_sheaf_isom)

    section = groups.add_parser("section").add_subparsers(dest="verb", required=True)
    p = section.add_parser("list")
    p.add_argument("file")
    p.add_argument("--divisor", required=True)
    common(p)
    p.set_defaults(func=cmd_section_list)
    p = section.add_parser("extend")
    p.add_argument("file")
    p.add_argument("--divisor", required=True)
    p.add_argument("--point", required=True, help="comma-separated lattice point")
    common(p, out=True)
    p.set_defaults(func=cmd_section_extend)
    p = section.add_parser("check")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=cmd_section_check)

    subscheme = groups.add_parser("subscheme").add_subparsers(dest="verb", required=True)
    p = subscheme.add_parser("build")
    p.add_argument("sections", nargs="+")
    common(p, out=True)
    p.set_defaults(func=cmd_subscheme_build)
    p = subscheme.add_parser("member")
    p.add_argument("file")
    p.add_argument("--cone", required=True)
    p.add_argument("--element", required=True)
    common(p, bound=4)
    p.set_defaults(func=cmd_subscheme_member)

    morphism = groups.add_parser("morphism").add_subparsers(dest="verb", required=True)
    p = morphism.add_parser("check")
    p.add_argument("file")
    common(p, bound=4)
    p.set_defaults(func=cmd_morphism_check)
    p = morphism.add_parser("sample")
    p.add_argument("file")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--pattern", default="trivial",
                   help="'trivial' or a pattern file path")
    common(p, out=True, seed=True)
    p.set_defaults(func=cmd_morphism_sample)
    p = morphism.add_parser("surrogate")
    p.add_argument("file")
    common(p)
    p.set_defaults(func=cmd_morphism_surrogate)
    p = morphism.add_parser("kernel")
    p.add_argument("file")
    p.add_argument("--cone", required=True)
    common(p, bound=2)
    p.set_defaults(func=cmd_morphism_kernel)

    probe = groups.add_parser("probe").add_subparsers(dest="verb", required=True)
    p = probe.add_parser("a1")
    p.add_argument("file", help="matrix file with size and row-major entries")
    common(p)
    p.set_defaults(func=cmd_probe_a1)

    return top


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RankMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
