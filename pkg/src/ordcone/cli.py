"""``ordcone <command> [flags] <instance-file>...``

Exit status: 0 when the result was computed (and a check holds), 1 for a
negative verdict (a failed check, UNSAT, non-membership, a bounded search
that found nothing), 2 for errors and inconclusive results.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Callable, Sequence

from . import catalog, monoid as mon, ordgroup as og, polyhedra as poly, vspace as vs
from .errors import OrdconeError
from .instances import InstanceFile, instance_to_dict, parse_instance
from .linalg import det
from .report import EXIT_ERROR, EXIT_NEGATIVE, EXIT_OK, Report, emit_report


class UsageError(OrdconeError):
    pass


def _parse_fraction(s: str) -> Fraction:
    try:
        q = Fraction(s.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"malformed number {s!r}") from None
    if "." in s or "e" in s.lower():
        raise UsageError(f"expected an exact fraction, got {s!r}")
    return q


def parse_vector(text: str, integral: bool = False) -> tuple:
    """``"1,-2,3/4"`` -> vector; the empty string is the empty vector."""
    if not text.strip():
        return ()
    vals = tuple(_parse_fraction(p) for p in text.split(","))
    if integral:
        if any(v.denominator != 1 for v in vals):
            raise UsageError(f"expected integers, got {text!r}")
        return tuple(int(v) for v in vals)
    return vals


def parse_vectors(text: str, integral: bool = False) -> list[tuple]:
    """``"1,0;0,1"`` -> list of vectors."""
    return [parse_vector(p, integral) for p in text.split(";") if p.strip()]


def _expect(inst: InstanceFile, *kinds: str):
    if inst.kind not in kinds:
        raise UsageError(f"incompatible instance kind {inst.kind!r}; expected {' or '.join(kinds)}")


def _group_of(inst: InstanceFile) -> og.NormalizedGroup:
    _expect(inst, "monoid", "presentation")
    if inst.kind == "monoid":
        return og.NormalizedGroup.from_monoid(inst.payload)
    return og.realize(inst.payload)


def _qcone_of(inst: InstanceFile) -> vs.QSpaceCone:
    _expect(inst, "qcone", "monoid")
    if inst.kind == "monoid":
        return vs.QSpaceCone.from_monoid(inst.payload)
    return inst.payload


def _leq_rows(domain: poly.ConvexDomain) -> list[list]:
    a, b = domain.to_leq()
    return [[*row, rhs] for row, rhs in zip(a, b)]


def _domain_of(inst: InstanceFile) -> poly.ConvexDomain:
    _expect(inst, "ineq_system", "vpolytope")
    if inst.kind == "vpolytope":
        return poly.hull_to_halfspaces(inst.payload)
    return inst.payload


# -- commands ------------------------------------------------------------------

def cmd_solve(args, inst: InstanceFile, rep: Report):
    _expect(inst, "ineq_system")
    sat, witness = poly.is_satisfiable(inst.payload)
    rep.add("verdict", "SAT" if sat else "UNSAT")
    if sat:
        rep.add("witness", witness)
    else:
        rep.status = EXIT_NEGATIVE


def cmd_project(args, inst: InstanceFile, rep: Report):
    _expect(inst, "ineq_system")
    keep = parse_vector(args.keep, integral=True)
    proj = poly.project(inst.payload, keep)
    rep.add("keep", tuple(keep))
    rep.add("orientation", "a.x <= b, rows (a..., b)")
    rep.add("constraints", _leq_rows(proj))


def cmd_hull(args, inst: InstanceFile, rep: Report):
    _expect(inst, "ineq_system")
    v = poly.halfspaces_to_hull(inst.payload)
    rep.add("empty", not v.points)
    rep.add("vertices", list(v.canonical().points))


def cmd_facets(args, inst: InstanceFile, rep: Report):
    _expect(inst, "vpolytope")
    h = poly.hull_to_halfspaces(inst.payload)
    rep.add("orientation", "a.x <= b, rows (a..., b)")
    rep.add("constraints", _leq_rows(h))


def cmd_separate(args, inst: InstanceFile, rep: Report):
    p = poly.separate_from_origin(_domain_of(inst))
    rep.add("functional", p)
    rep.add("meaning", "p.x >= 1 on the domain")


def cmd_normalize(args, inst: InstanceFile, rep: Report):
    _expect(inst, "vpolytope", "monoid")
    xs = list(inst.payload.points if inst.kind == "vpolytope" else inst.payload.gens)
    if args.field == "lattice":
        if any(c.denominator != 1 for x in xs for c in map(Fraction, x)):
            raise UsageError("lattice normalization needs integer vectors")
        u = og.positive_normalization_lattice([tuple(int(c) for c in x) for x in xs])
        matrix, images = u.matrix, [u(tuple(int(c) for c in x)) for x in xs]
        rep.add("matrix", list(matrix))
        rep.add("inverse", list(u.inverse))
    else:
        matrix = og.positive_normalization_vs(xs)
        images = [tuple(sum(r[j] * Fraction(x[j]) for j in range(len(x))) for r in matrix) for x in xs]
        rep.add("matrix", list(matrix))
    rep.add("det", det(matrix))
    rep.add("images", images)


def cmd_min_gens(args, inst: InstanceFile, rep: Report):
    _expect(inst, "monoid")
    rep.add("minimal_elements", mon.minimal_elements(inst.payload))


def cmd_interval(args, inst: InstanceFile, rep: Report):
    _expect(inst, "monoid")
    a = parse_vector(args.lower, integral=True)
    b = parse_vector(args.upper, integral=True)
    pts = mon.interval(inst.payload, a, b)
    rep.add("count", len(pts))
    rep.add("points", pts)


def cmd_member(args, inst: InstanceFile, rep: Report):
    _expect(inst, "monoid")
    ok, cert = mon.contains(inst.payload, parse_vector(args.point, integral=True))
    rep.add("member", ok)
    if ok:
        rep.add("certificate", cert.coefficients)
    else:
        rep.status = EXIT_NEGATIVE


def cmd_saturate(args, inst: InstanceFile, rep: Report):
    _expect(inst, "monoid")
    rep.add("hilbert_basis", mon.saturation_hilbert_basis(inst.payload))


def cmd_check(args, inst: InstanceFile, rep: Report):
    prop = args.property
    if prop == "unperforated":
        _expect(inst, "monoid")
        res = mon.is_unperforated(inst.payload)
        rep.add("unperforated", res.unperforated)
        if not res.unperforated:
            rep.add("witness", res.witness)
            rep.add("multiplier", res.multiplier)
        ok = res.unperforated
    elif prop == "fp":
        r = og.verify_fp_conditions(_group_of(inst), args.probes, args.seed)
        rep.add("finitely_generated", r.finitely_generated)
        rep.add("min_finite_generating", r.min_finite_generating)
        rep.add("well_founded", r.well_founded)
        rep.add("weakly_archimedean", r.weakly_archimedean)
        rep.add("minimal_elements", list(r.minimal))
        ok = r.passed
    elif prop == "directed":
        ok = og.is_directed(_group_of(inst))
        rep.add("directed", ok)
    else:
        if args.basis is None:
            raise UsageError("check simplicial needs --basis")
        ok = vs.is_simplicial_basis(_qcone_of(inst), parse_vectors(args.basis))
        rep.add("simplicial", ok)
    if not ok:
        rep.status = EXIT_NEGATIVE


def cmd_witness(args, inst: InstanceFile, rep: Report):
    _expect(inst, "monoid")
    w = mon.non_archimedean_witness(inst.payload, args.dmax, args.box)
    rep.add("found", w is not None)
    if w is None:
        rep.status = EXIT_NEGATIVE
        return
    rep.add("a", w.a)
    rep.add("b", w.b)
    rep.add("period", w.d)


def _group_fields(rep: Report, g: og.NormalizedGroup):
    rep.add("rank", g.rank)
    rep.add("cone_generators", list(g.cone.gens))
    rep.add("change_of_basis", list(g.change_of_basis.matrix))
    rep.add("generator_images", list(g.gen_images))


def cmd_realize(args, inst: InstanceFile, rep: Report):
    _expect(inst, "presentation")
    nf = og.group_normal_form(inst.payload)
    rep.add("torsion", nf.torsion)
    _group_fields(rep, og.realize(inst.payload))


def cmd_subgroup(args, inst: InstanceFile, rep: Report):
    g = _group_of(inst)
    res = og.induced_subgroup(g, parse_vectors(args.gens, integral=True), args.box)
    if isinstance(res, og.Inconclusive):
        rep.add("inconclusive", True)
        rep.add("offending", res.offending)
        rep.add("reason", res.reason)
        rep.status = EXIT_ERROR
        return
    _group_fields(rep, res)


def cmd_extend(args, inst: InstanceFile, rep: Report):
    cone = _qcone_of(inst)
    basis = vs.simplicial_extension_search(cone, parse_vectors(args.gens), args.budget)
    rep.add("found", basis is not None)
    if basis is None:
        rep.status = EXIT_NEGATIVE
    else:
        rep.add("basis", basis)


COMMANDS: dict[str, Callable] = {
    "solve": cmd_solve, "project": cmd_project, "hull": cmd_hull, "facets": cmd_facets,
    "separate": cmd_separate, "normalize": cmd_normalize, "min-gens": cmd_min_gens,
    "interval": cmd_interval, "member": cmd_member, "saturate": cmd_saturate,
    "check": cmd_check, "witness": cmd_witness, "realize": cmd_realize,
    "subgroup": cmd_subgroup, "extend-simplicial": cmd_extend,
}


def run(args: argparse.Namespace, inst: InstanceFile) -> Report:
    """Execute one command on one instance; library errors become exit status 2."""
    echo = args.command if args.command != "check" else f"check {args.property}"
    if args.command == "witness":
        echo = "witness non-archimedean"
    rep = Report(echo)
    try:
        COMMANDS[args.command](args, inst, rep)
    except OrdconeError as exc:
        rep = Report(echo, [("error", str(exc))], EXIT_ERROR)
    return rep


def run_catalog(args) -> Report:
    rep = Report("catalog")
    if args.name is None:
        rep.add("names", catalog.catalog_names())
        return rep
    try:
        entry = catalog.catalog_entry(args.name, args.param)
    except OrdconeError as exc:
        return Report("catalog", [("error", str(exc))], EXIT_ERROR)
    rep.add("name", args.name)
    if isinstance(entry, catalog.PresentedExample):
        rep.add("instance", instance_to_dict(entry.presentation))
        rep.add("normal_form", instance_to_dict(entry.normal_form))
    else:
        rep.add("instance", instance_to_dict(entry))
    return rep


# -- argument parsing --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    files = argparse.ArgumentParser(add_help=False)
    files.add_argument("files", nargs="+", metavar="instance-file")
    files.add_argument("--jobs", type=int, default=1, help="files processed in parallel")
    files.add_argument("--output-dir", help="write one report per file into this directory")

    parser = argparse.ArgumentParser(prog="ordcone", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_):
        return sub.add_parser(name, parents=[common, files], help=help_)

    add("solve", "satisfiability of an inequality system with a witness")
    add("project", "project an inequality system onto kept coordinates").add_argument(
        "--keep", required=True, help="comma-separated coordinate indices")
    add("hull", "vertices of a bounded inequality system")
    add("facets", "inequalities describing the hull of a point set")
    add("separate", "functional p with p.x >= 1 on a domain not containing 0")
    add("normalize", "unimodular (or rational) map into the positive orthant").add_argument(
        "--field", choices=("lattice", "vs"), default="lattice")
    add("min-gens", "irreducible elements of a monoid")
    p = add("interval", "all elements between two monoid elements")
    p.add_argument("--from", dest="lower", required=True)
    p.add_argument("--to", dest="upper", required=True)
    add("member", "monoid membership with a certificate").add_argument("--point", required=True)
    add("saturate", "Hilbert basis of the saturated monoid")
    p = sub.add_parser("check", parents=[common], help="property checks")
    p.add_argument("property", choices=("unperforated", "fp", "directed", "simplicial"))
    p.add_argument("files", nargs="+", metavar="instance-file")
    p.add_argument("--basis", help="semicolon-separated vectors, e.g. '1,0;0,1'")
    p.add_argument("--probes", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--output-dir")
    p = sub.add_parser("witness", parents=[common], help="bounded certificate searches")
    p.add_argument("kind", choices=("non-archimedean",))
    p.add_argument("files", nargs="+", metavar="instance-file")
    p.add_argument("--dmax", type=int, default=6)
    p.add_argument("--box", type=int, default=8)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--output-dir")
    add("realize", "normal form of a group presentation")
    p = add("subgroup", "induced order on the subgroup generated by --gens")
    p.add_argument("--gens", required=True)
    p.add_argument("--box", type=int, default=6)
    p = add("extend-simplicial", "simplicial basis whose span contains --gens")
    p.add_argument("--gens", required=True)
    p.add_argument("--budget", type=int, default=4)
    p = sub.add_parser("catalog", parents=[common], help="named example instances")
    p.add_argument("--name")
    p.add_argument("--param", type=int)
    return parser


def _process(args, path: str) -> tuple[str, Report]:
    try:
        inst = parse_instance(Path(path))
    except OrdconeError as exc:
        return path, Report(args.command, [("error", str(exc))], EXIT_ERROR)
    return path, run(args, inst)


def _write_atomic(target: Path, text: str):
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.")
    with os.fdopen(fd, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, target)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "catalog":
        rep = run_catalog(args)
        sys.stdout.write(emit_report(rep, args.format))
        return rep.status
    if args.jobs < 1:
        parser.error("--jobs must be at least 1")
    with ThreadPoolExecutor(max_workers=args.jobs) as pool:
        results = list(pool.map(lambda f: _process(args, f), args.files))
    ext = "json" if args.format == "json" else "txt"
    status = EXIT_OK
    for path, rep in results:
        text = emit_report(rep, args.format)
        if args.output_dir:
            _write_atomic(Path(args.output_dir) / f"{Path(path).stem}.{ext}", text)
        else:
            if len(results) > 1:
                sys.stdout.write(f"== {path}\n")
            sys.stdout.write(text)
        status = max(status, rep.status)
    return status


if __name__ == "__main__":
    sys.exit(main())
