"""Command-line front end: build, verify and report."""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace
from importlib import resources
from pathlib import Path

from . import __version__
from .cog import (
    a2_tree,
    build_a2_complex,
    build_c2_one_panel_complex,
    build_c2_two_panel_complex,
    c2_one_panel_tree,
    c2_two_panel_tree,
    fundamental_group_presentation,
)
from .ffield import NotPrimePower, factor_prime_power
from .hjelmslev import HjelmslevPlane, cmsz_counts, qp_discrimination, splitting_report
from .homology import (
    a2_homology_report,
    c2_h1_check,
    h1_of_presentation,
    rational_betti_from_quotient,
)
from .lattices import (
    a2_cyclic_lattice,
    c2_one_panel_lattice,
    c2_two_panel_lattice,
)
from .reports import FAIL, PASS, VerificationReport
from .singer import (
    OrderedDifferenceSet,
    UnsupportedOrder,
    classical_plane,
    extract_difference_set,
    line_labels,
    slanted_quadrangle,
    verify_planar_difference_set,
)

CACHE_ENV = "SINGERLAT_CACHE"
FAMILIES = {"a2-cyclic": "A2_cyclic", "c2-two-panel": "C2_two_panel", "c2-one-panel": "C2_one_panel"}


class InvalidInput(ValueError):
    pass


# -- inputs ---------------------------------------------------------------------

def _cache_dir() -> Path | None:
    d = os.environ.get(CACHE_ENV)
    if not d:
        return None
    p = Path(d)
    p.mkdir(parents=True, exist_ok=True)
    return p


def computed_difference_set(q: int) -> OrderedDifferenceSet:
    """Difference set of PG(2, q) at the canonical flag, cached as flat files when configured."""
    cache = _cache_dir()
    n = q * q + q + 1
    if cache is not None:
        f = cache / f"difference-set-q{q}.txt"
        if f.exists():
            kv = dict(line.split(" = ", 1) for line in f.read_text().splitlines() if " = " in line)
            return OrderedDifferenceSet(n, tuple(int(x) for x in kv["entries"].split(",")))
    plane = classical_plane(q)
    ds = extract_difference_set(plane)
    if cache is not None:
        (cache / f"plane-q{q}.txt").write_text(plane.structure.to_text())
        meta = plane.metadata()
        lines = [f"q = {q}", f"modulus = {','.join(map(str, meta['modulus']))}",
                 f"primitive_element = {meta['primitive_element']}",
                 f"entries = {','.join(map(str, ds.entries))}"]
        (cache / f"difference-set-q{q}.txt").write_text("\n".join(lines) + "\n")
    return ds


def _parse_ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError:
        raise InvalidInput(f"not a comma separated integer list: {text!r}") from None


def difference_sets(args) -> list[OrderedDifferenceSet]:
    q = args.q
    n = q * q + q + 1
    if args.delta:
        if len(args.delta) not in (1, 3):
            raise InvalidInput("give --delta once (used three times) or three times")
        dss = [OrderedDifferenceSet(n, _parse_ints(t)) for t in args.delta]
        for d in dss:
            if not verify_planar_difference_set(d).passed or len(d) != q + 1:
                raise InvalidInput(f"{list(d.entries)} is not a planar difference set mod {n}")
    else:
        base = computed_difference_set(q)
        dss = [base]
    if args.ordering:
        if len(args.ordering) not in (1, 3):
            raise InvalidInput("give --ordering once or three times")
        src = dss if len(dss) == 3 else dss * 3
        orders = args.ordering if len(args.ordering) == 3 else args.ordering * 3
        try:
            dss = [OrderedDifferenceSet(n, tuple(sorted(d.entries))).reordered(_parse_ints(o))
                   for d, o in zip(src, orders)]
        except ValueError as e:
            raise InvalidInput(str(e)) from None
    if len(dss) == 1:
        dss = dss * 3
    return dss


def bijections(args) -> tuple[list[str], list[str]]:
    q = args.q
    default = line_labels(q)
    lam = args.lam[0].split(",") if args.lam else default
    lam2 = args.lam[1].split(",") if args.lam and len(args.lam) > 1 else (lam if args.lam else default)
    for l in (lam, lam2):
        if sorted(l) != sorted(default):
            raise InvalidInput(f"{l} is not a bijection onto {default}")
    return lam, lam2


def lattice_spec(args):
    fam = args.family
    if fam == "a2-cyclic":
        return a2_cyclic_lattice(args.q, *difference_sets(args))
    lam, lam2 = bijections(args)
    if fam == "c2-two-panel":
        return c2_two_panel_lattice(args.q, lam, lam2)
    return c2_one_panel_lattice(args.q, lam, lam2)


# -- commands ---------------------------------------------------------------------

def cmd_plane(args) -> list[VerificationReport]:
    plane = classical_plane(args.q)
    ds = extract_difference_set(plane)
    dsr = verify_planar_difference_set(ds)
    dsr.data["metadata"] = plane.metadata()
    return [plane.report, dsr]


def cmd_quadrangle(args) -> list[VerificationReport]:
    return [slanted_quadrangle(args.q).report]


def cmd_lattice(args) -> list[VerificationReport]:
    spec = lattice_spec(args)
    rep = VerificationReport(f"lattice {args.family} q={args.q}")
    rep.data.update(instantiates=spec.instantiates, presentation=spec.presentation.to_text(),
                    generators=len(spec.presentation.generators), relators=len(spec.presentation.relators))
    rep.add("presentation well formed", True, "plumbing")
    rep.text_block = spec.to_text()
    return [rep]


def _complex_for(args):
    q = args.q
    if args.family == "a2-cyclic":
        c = build_a2_complex(q, *difference_sets(args))
        return c, a2_tree(q)
    lam, lam2 = bijections(args)
    b = slanted_quadrangle(q)
    if args.family == "c2-two-panel":
        return build_c2_two_panel_complex(q, b, b, lam, lam2), c2_two_panel_tree(q)
    return build_c2_one_panel_complex(q, b, b, lam, lam2), c2_one_panel_tree(q)


def cmd_crosscheck(args) -> list[VerificationReport]:
    c, tree = _complex_for(args)
    rep = c.verify()
    extracted = fundamental_group_presentation(c, tree)
    direct = lattice_spec(args).presentation
    rep.add("extracted presentation equals direct builder", extracted.same_as(direct),
            "fundamental group of the complex of groups",
            extracted=len(extracted.relator_set), direct=len(direct.relator_set))
    return [rep]


def cmd_hjelmslev(args) -> list[VerificationReport]:
    dss = difference_sets(args)
    h = HjelmslevPlane.from_ordered(*dss)
    rep = VerificationReport(f"Hjelmslev plane q={args.q}", data={"points": len(h.points), "lines": len(h.lines)})
    q = args.q
    rep.add("point count q^2(q^2+q+1)", len(h.points) == q * q * (q * q + q + 1), "level-2 point count")
    out = [rep, cmsz_counts(h, jobs=args.jobs), splitting_report(h)]
    if h.aligned:
        out.append(qp_discrimination(h))
    return out


def cmd_homology(args) -> list[VerificationReport]:
    from .cog import a2_scwol, c2_one_panel_scwol, c2_two_panel_scwol

    q = args.q
    if args.family == "a2-cyclic":
        rep = a2_homology_report(q, difference_sets(args))
        betti = rational_betti_from_quotient(a2_scwol(q))
        rep.add("rational Betti numbers (1,0,q)", betti == (1, 0, q), "rational homology via the quotient",
                betti=list(betti))
        return [rep]
    spec = lattice_spec(args)
    if args.family == "c2-one-panel":
        rep = c2_h1_check(q, spec)
        quotient = c2_one_panel_scwol(q)
    else:
        rep = VerificationReport(f"C̃₂ two-panel homology q={q}",
                                 data={"H1": str(h1_of_presentation(spec.presentation))})
        quotient = c2_two_panel_scwol(q)
    betti = rational_betti_from_quotient(quotient)
    rep.add("rational Betti numbers (1,0,0)", betti == (1, 0, 0), "rational homology via the quotient",
            betti=list(betti))
    return [rep]


def cmd_all(args) -> list[VerificationReport]:
    q = args.q
    out = cmd_plane(args)
    p, e = factor_prime_power(q)
    c2_ok = q > 2 and (q % 2 == 0 or e == 1)
    if q > 2:
        out += cmd_quadrangle(args)
    fams = ["a2-cyclic"] + (["c2-two-panel", "c2-one-panel"] if c2_ok else [])
    for fam in fams:
        sub = argparse.Namespace(**{**vars(args), "family": fam})
        out += cmd_crosscheck(sub)
        out += cmd_homology(sub)
    out += cmd_hjelmslev(args)
    return out


COMMANDS = {
    "plane": cmd_plane,
    "quadrangle": cmd_quadrangle,
    "lattice": cmd_lattice,
    "crosscheck": cmd_crosscheck,
    "hjelmslev": cmd_hjelmslev,
    "homology": cmd_homology,
    "all": cmd_all,
}


# -- output ---------------------------------------------------------------------

def _jsonable(x):
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    if hasattr(x, "item"):
        return x.item()
    return str(x)


def load_schema() -> dict:
    return json.loads(resources.files("singerlat").joinpath("report.schema.json").read_text())


def build_report(args, reports: list[VerificationReport]) -> dict:
    echo = {k: v for k, v in sorted(vars(args).items()) if k not in ("output", "format", "jobs")}
    status = PASS if all(r.passed for r in reports) else FAIL
    doc = {"tool": "singerlat", "version": __version__, "input": echo,
           "reports": [r.as_dict() for r in reports], "status": status}
    return json.loads(json.dumps(doc, default=_jsonable, sort_keys=True))


def render(args, reports, doc) -> str:
    if args.format == "json":
        import jsonschema

        jsonschema.validate(doc, load_schema())
        return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    blocks = [f"tool = singerlat {__version__}", f"command = {args.command}", f"status = {doc['status']}", ""]
    for r in reports:
        if getattr(r, "text_block", None):
            blocks.append(r.text_block)
            r = replace(r, data={k: v for k, v in r.data.items() if k != "presentation"})
        blocks.append(r.to_text())
    return "\n".join(blocks)


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, required=True, help="order of the projective plane or quadrangle")
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--jobs", type=int, default=1, help="worker threads for the larger sweeps")
    common.add_argument("--delta", action="append", help="ordered difference set, comma separated (once or 3x)")
    common.add_argument("--ordering", action="append",
                        help="permutation of the sorted difference set, comma separated (once or 3x)")
    common.add_argument("--lambda", dest="lam", action="append",
                        help="line labels in the order j = 0..q+1, comma separated (lambda, then lambda')")

    p = argparse.ArgumentParser(prog="singerlat", description=__doc__)
    p.add_argument("--version", action="version", version=f"singerlat {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("plane", "quadrangle", "hjelmslev", "all"):
        sub.add_parser(name, parents=[common])
    for name in ("lattice", "crosscheck", "homology"):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("--family", choices=sorted(FAMILIES), default="a2-cyclic")
    return p


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    if not hasattr(args, "family"):
        args.family = "a2-cyclic"
    try:
        reports = COMMANDS[args.command](args)
    except (NotPrimePower, UnsupportedOrder, InvalidInput, ValueError) as e:
        print(f"singerlat: error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    doc = build_report(args, reports)
    text = render(args, reports, doc)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0 if doc["status"] == PASS else 1


if __name__ == "__main__":
    sys.exit(main())
