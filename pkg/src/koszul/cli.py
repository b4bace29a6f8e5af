"""Command-line entry point: ``koszul <command> ...``.

Every command prints one JSON report (or an aligned text table with
``--format table``). Exit status is 0 on success, 1 for bad input or a
failed precondition, 2 for arithmetic, budget and internal failures.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence

from . import __version__
from .arrangements import (
    chen_ranks,
    component_histogram,
    components_isotropic,
    graphic,
    local_components,
    os_kperp,
    rank2_flats,
    suciu_formula,
    validate_multinet,
)
from .bgg import exterior_tor
from .core import hilbert_table
from .errors import KoszulError, PreconditionError
from .green import CGParams, betti_generic_canonical, cg_span, green_dims
from .io import (
    UsageError,
    arrangement_from_json,
    components_from_json,
    digest,
    graph_from_json,
    koszul_input_from_json,
    partition_from_json,
    read_json,
)
from .linalg import FieldSpec
from .resonance import chen_formula_check, check_isotropic, check_separable, is_resonance_trivial

log = logging.getLogger("koszul")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage().strip()}")


def _common(p: argparse.ArgumentParser):
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--seed", type=int, default=0, help="recorded in the report (default 0)")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="add wall-clock time to the report")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="koszul", description="Koszul modules, resonance and Chen ranks in exact arithmetic.")
    ap.add_argument("--version", action="version", version=f"koszul {__version__}")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("dims", help="graded dimensions of W(V, K)")
    p.add_argument("--input", required=True)
    p.add_argument("--qmax", type=int, required=True)
    p.add_argument("--route", choices=("homology", "presentation", "both"), default="homology")
    _common(p)

    p = sub.add_parser("resonance", help="resonance triviality and component checks")
    p.add_argument("--input", required=True)
    p.add_argument("--components", help="JSON list of components (spanning sets in V^∨)")
    p.add_argument("--qmax", type=int, default=6, help="top degree for the component formula")
    p.add_argument("--kmax", type=int, default=1, help="largest extension degree searched in char p")
    _common(p)

    p = sub.add_parser("arrangement", help="hyperplane arrangement invariants")
    p.add_argument("action", choices=("chen", "multinet", "flats"))
    p.add_argument("--input", required=True)
    p.add_argument("--qmax", type=int, default=6)
    p.add_argument("--partition")
    _common(p)

    p = sub.add_parser("multinet", help="validate a multinet (same as 'arrangement multinet')")
    p.add_argument("--input", required=True)
    p.add_argument("--partition", required=True)
    _common(p)

    p = sub.add_parser("graphic", help="Chen ranks of a graphic arrangement")
    p.add_argument("--input", required=True)
    p.add_argument("--qmax", type=int, default=8)
    _common(p)

    p = sub.add_parser("green", help="Clebsch-Gordan Koszul modules")
    p.add_argument("--i", type=int, required=True, dest="i")
    p.add_argument("--char", type=int, default=0)
    p.add_argument("--qmax", type=int, required=True)
    p.add_argument("--route", choices=("orbit", "wronskian", "both"), default="orbit")
    _common(p)

    p = sub.add_parser("betti", help="Betti table of a generic canonical curve")
    p.add_argument("--genus", type=int, required=True)
    _common(p)

    p = sub.add_parser("bgg", help="Tor over the exterior algebra")
    p.add_argument("--input", required=True)
    p.add_argument("--imax", type=int, required=True)
    _common(p)
    return ap


# --------------------------------------------------------------------------
# commands; each returns (payload, input document, field, table text)


def _dims(args):
    doc = read_json(args.input)
    inp = koszul_input_from_json(doc)
    routes = ("homology", "presentation") if args.route == "both" else (args.route,)
    tables = {r: hilbert_table(inp, args.qmax, route=r, threads=args.threads) for r in routes}
    if len(tables) == 2 and tables["homology"] != tables["presentation"]:
        raise KoszulError("homology and presentation routes disagree")
    t = tables[routes[0]]
    text = "\n".join(f"q={q}: {v}" for q, v in t.items())
    return {"dims": t.to_json(), "routes": list(routes)}, doc, inp.field, text


def _resonance(args):
    doc = read_json(args.input)
    inp = koszul_input_from_json(doc)
    report = is_resonance_trivial(inp, k_max=args.kmax)
    payload: Dict[str, Any] = {"resonance": report.to_json()}
    lines = [f"trivial: {report.trivial} ({report.method})"]
    full_doc: Dict[str, Any] = {"input": doc}
    if args.components:
        cdoc = read_json(args.components)
        full_doc["components"] = cdoc
        comps = components_from_json(cdoc, inp.n, inp.field)
        iso = check_isotropic(inp, comps)
        sep = check_separable(inp, comps)
        payload["components"] = [
            {"dim": c.dim, "isotropic": a, "separable": b} for c, a, b in zip(comps, iso, sep)
        ]
        lines += [f"component {t}: dim {c.dim} isotropic={a} separable={b}" for t, (c, a, b) in enumerate(zip(comps, iso, sep))]
        if all(iso) and all(sep) and not inp.field.characteristic:
            chk = chen_formula_check(inp, comps, args.qmax)
            payload["formula"] = chk.to_json()
            lines += [f"q={q}: W={a} formula={b}" for q, a, b in zip(chk.degrees, chk.lhs, chk.rhs)]
    return payload, full_doc, inp.field, "\n".join(lines)


def _chen_payload(A, qmax, threads):
    t = chen_ranks(A, qmax, threads=threads)
    comps = local_components(A)
    h = component_histogram(comps)
    payload = {
        "b1": A.size,
        "chen": {str(q): v for q, v in t.items()},
        "local_components": h and {str(k): v for k, v in h.items()},
        "local_formula": {str(q): suciu_formula(h, q) for q in t.degrees()},
    }
    text = "\n".join(["  q  theta_q  local"] + [f"{q:3d} {v:8d} {suciu_formula(h, q):6d}" for q, v in t.items()])
    return payload, text


def _multinet_payload(A, pdoc):
    classes, mults = partition_from_json(pdoc)
    mn = validate_multinet(A, classes, mults)
    payload = mn.to_json()
    payload["component_isotropic"] = components_isotropic(A, [mn.component])[0]
    text = f"{len(mn.classes)}-multinet, d={mn.d}, base locus {len(mn.base_locus)} flats, axiom 4 unchecked"
    return payload, text


def _arrangement(args):
    doc = read_json(args.input)
    A = arrangement_from_json(doc)
    full_doc: Dict[str, Any] = {"input": doc, "action": args.action}
    if args.action == "flats":
        flats = rank2_flats(A)
        payload = {"flats": [list(X) for X in flats], "kperp_dim": os_kperp(A).dim}
        text = "\n".join(" ".join(map(str, X)) for X in flats)
    elif args.action == "chen":
        payload, text = _chen_payload(A, args.qmax, args.threads)
    else:
        if not args.partition:
            raise UsageError("arrangement multinet needs --partition")
        pdoc = read_json(args.partition)
        full_doc["partition"] = pdoc
        payload, text = _multinet_payload(A, pdoc)
    return payload, full_doc, FieldSpec(0), text


def _multinet(args):
    doc, pdoc = read_json(args.input), read_json(args.partition)
    payload, text = _multinet_payload(arrangement_from_json(doc), pdoc)
    return payload, {"input": doc, "partition": pdoc}, FieldSpec(0), text


def _graphic(args):
    doc = read_json(args.input)
    v, edges = graph_from_json(doc)
    rep = graphic(v, edges, args.qmax)
    text = "\n".join(
        [f"kappa = {rep.kappa}", "  q  formula  computed"]
        + [f"{q:3d} {rep.formula[q]:8d} {rep.computed.get(q, 0):9d}" for q in rep.formula]
    )
    return rep.to_json(), doc, FieldSpec(0), text


def _green(args):
    F = FieldSpec(args.char)
    params = CGParams(args.i, F)
    doc = {"i": args.i, "char": args.char, "qmax": args.qmax, "route": args.route}
    payload: Dict[str, Any] = {"i": args.i, "n": params.n, "dim_K": cg_span(params).dim, "expected_dim_K": params.expected_dim}
    if params.experimental:
        payload["label"] = "experimental"
    t = green_dims(params, args.qmax, route=args.route, threads=args.threads)
    payload["dims"] = t.to_json()
    payload["genus"] = {str(q): q + args.i + 3 for q in t.degrees()}
    text = "\n".join(["  q  genus  dim W_q"] + [f"{q:3d} {q + args.i + 3:6d} {v:8d}" for q, v in t.items()])
    if params.experimental:
        text = f"experimental: characteristic {args.char} < m = {params.m}\n" + text
    return payload, doc, F, text


def _betti(args):
    table = betti_generic_canonical(args.genus)
    return table.to_json(), {"genus": args.genus}, FieldSpec(0), table.render()


def _bgg(args):
    doc = read_json(args.input)
    inp = koszul_input_from_json(doc)
    t = exterior_tor(inp, args.imax)
    rows = [f"Tor_{i}: " + ", ".join(f"deg {j}: {d}" for j, d in row) for i, row in enumerate(t.dims)]
    return t.to_json(), doc, inp.field, "\n".join(rows)


COMMANDS = {
    "dims": _dims,
    "resonance": _resonance,
    "arrangement": _arrangement,
    "multinet": _multinet,
    "graphic": _graphic,
    "green": _green,
    "betti": _betti,
    "bgg": _bgg,
}


@dataclass
class Outcome:
    code: int
    report: Optional[Dict[str, Any]]
    text: str
    out: Optional[str] = None

    def rendered(self, fmt: str = "json") -> str:
        if self.report is None or fmt == "table":
            return self.text
        return json.dumps(self.report, indent=2, sort_keys=True, ensure_ascii=False)


def dispatch(argv: Sequence[str]) -> Outcome:
    """Run one command and collect its report; never raises for library errors."""
    argv = list(argv)
    try:
        args = build_parser().parse_args(argv)
        if not args.command:
            raise UsageError("a command is required\n" + build_parser().format_usage().strip())
        start = time.perf_counter()
        payload, doc, field, text = COMMANDS[args.command](args)
        report: Dict[str, Any] = {
            "command": ["koszul", *argv],
            "input_digest": digest(doc),
            "seed": args.seed,
            "field": field.to_json(),
            "results": payload,
        }
        if args.timing:
            report["timing_seconds"] = round(time.perf_counter() - start, 6)
        rendered = Outcome(0, report, text).rendered(args.format)
        return Outcome(0, report, rendered, args.out)
    except (PreconditionError, ValueError) as exc:
        return Outcome(1, None, f"error: {exc}")
    except KoszulError as exc:
        return Outcome(2, None, f"error: {type(exc).__name__}: {exc}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    argv = sys.argv[1:] if argv is None else list(argv)
    res = dispatch(argv)
    if res.code:
        print(res.text, file=sys.stderr)
        return res.code
    if res.out:
        with open(res.out, "w", encoding="utf-8") as fh:
            fh.write(res.text + "\n")
    else:
        print(res.text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
