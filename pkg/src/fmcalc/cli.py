"""Command-line front end.

Exit codes: 0 success, 2 usage or input error, 3 a verified identity failed.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from .chow import BaseSurfaceData, VerticalClass
from .exact import format_rational, rational
from .fibre_square import ch_inverse_kernel, ch_poincare, grr_transform
from .models import (BPSCharge, ModelError, Registry, default_registry,
                     registry_from_yaml)
from .moduli import ParityError, PreconditionError, dim_moduli_deg18, fmw_bps_dictionary
from .transforms import PreconditionError as MPreconditionError
from .transforms import fm_forward, fm_inverse, twisted_charge, verify_m_relations

EXIT_OK, EXIT_USAGE, EXIT_IDENTITY = 0, 2, 3


class DocumentError(ValueError):
    pass


# --- documents ------------------------------------------------------------------------------

def _q(x: Fraction) -> str:
    return format_rational(x)


def base_to_dict(g: BaseSurfaceData) -> dict:
    return {"name": g.name, "basis": list(g.basis_labels),
            "form": [[_q(c) for c in row] for row in g.intersection_form],
            "c1": [_q(c) for c in g.c1], "c2": _q(g.c2)}


def base_from_dict(d: dict) -> BaseSurfaceData:
    try:
        return BaseSurfaceData(tuple(d["basis"]), tuple(tuple(rational(c) for c in row) for row in d["form"]),
                               tuple(rational(c) for c in d["c1"]), rational(d["c2"]), name=d.get("name", "B"))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"malformed base surface: {exc}") from exc


def charge_to_dict(v: VerticalClass) -> dict:
    return {"r": _q(v.r), "x": _q(v.x), "S": [_q(c) for c in v.S], "eta": [_q(c) for c in v.eta],
            "a": _q(v.a), "s": _q(v.s)}


def serialize_document(v: VerticalClass, geometry: str | None = None) -> dict:
    return {"geometry": geometry if geometry is not None else {"base": base_to_dict(v.geom)},
            "charge": charge_to_dict(v)}


def resolve_geometry(ref: Any, registry: Registry) -> tuple[BaseSurfaceData, str | None]:
    if isinstance(ref, str):
        try:
            m = registry[ref]
        except ModelError as exc:
            raise DocumentError(str(exc)) from exc
        if m.base is None:
            raise DocumentError(f"model {ref} carries no elliptic base geometry")
        return m.base, ref
    if isinstance(ref, dict) and "base" in ref:
        return base_from_dict(ref["base"]), None
    raise DocumentError("geometry must be a registered model name or {'base': {...}}")


def parse_document(doc: Any, registry: Registry, default_geometry: str | None = None) -> tuple[VerticalClass, str | None]:
    if not isinstance(doc, dict) or "charge" not in doc:
        raise DocumentError("a charge document is an object with a 'charge' entry")
    ref = doc.get("geometry", default_geometry)
    if ref is None:
        raise DocumentError("no geometry given (document 'geometry' or --model)")
    g, name = resolve_geometry(ref, registry)
    c = doc["charge"]
    try:
        v = g.vclass(c.get("r", 0), c.get("x", 0), c.get("S"), c.get("eta"), c.get("a", 0), c.get("s", 0))
    except (TypeError, ValueError, ZeroDivisionError, AttributeError) as exc:
        raise DocumentError(f"malformed charge: {exc}") from exc
    return v, name


# --- commands ---------------------------------------------------------------------------------

def _print_json(obj: Any, out) -> None:
    json.dump(obj, out, indent=2)
    out.write("\n")


def _matrix_text(rows) -> list[str]:
    return ["  [" + " ".join(f"{format_rational(c):>5}" for c in row) + "]" for row in rows]


def cmd_model(args, registry: Registry, out) -> int:
    if args.action == "list":
        for name in registry.names():
            out.write(name + "\n")
        return EXIT_OK
    if not args.name:
        raise DocumentError("model show needs a model name")
    try:
        m = registry[args.name]
    except ModelError as exc:
        raise DocumentError(str(exc)) from exc
    if args.json:
        from .models import model_to_dict
        _print_json({"name": m.name, **model_to_dict(m)}, out)
        return EXIT_OK
    e, l = m.divisors
    lines = [f"{m.name}: {m.description}", "intersections:"]
    for key, label in ((e * 3, f"{e}^3"), (e * 2 + l, f"{e}^2·{l}"), (e + l * 2, f"{e}·{l}^2"), (l * 3, f"{l}^3")):
        lines.append(f"  {label} = {format_rational(m.triple[key])}")
    c2 = m.c2_vector()
    lines += [f"  c2·{e} = {format_rational(c2[0])}", f"  c2·{l} = {format_rational(c2[1])}"]
    lines.append("kahler basis: " + ", ".join(
        f"{k} = {format_rational(v[0])}{e} + {format_rational(v[1])}{l}" for k, v in m.kahler_basis.items()))
    if m.prepotential is not None:
        lines.append(f"prepotential: F = {m.prepotential}")
    if m.base is not None:
        lines.append(f"base: {m.base.name}, c1 = {[format_rational(c) for c in m.base.c1]}, "
                     f"c2 = {format_rational(m.base.c2)}")
    lines.append("dictionary (rank, ch1, ch2, ch3) = D n:")
    lines += _matrix_text(m.dictionary.to_rows())
    for key, mat in m.matrices.items():
        lines.append(f"{key}:")
        lines += _matrix_text(mat.to_rows())
    out.write("\n".join(lines) + "\n")
    return EXIT_OK


def _read_document(source: str, stdin) -> Any:
    if source == "-":
        text = stdin.read()
    elif source.lstrip().startswith("{"):
        text = source
    else:
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise DocumentError(f"cannot read charge document: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"charge document is not valid JSON: {exc}") from exc


def cmd_fm(args, registry: Registry, out, stdin) -> int:
    doc = _read_document(args.charge, stdin)
    v, name = parse_document(doc, registry, args.model)
    g = v.geom
    transform = fm_forward if args.direction == "forward" else fm_inverse
    result = transform(v, g)
    payload: dict = {"direction": args.direction,
                     "input": serialize_document(v, name), "output": serialize_document(result, name)}
    status = EXIT_OK
    if args.twisted_charge:
        parity = 0 if args.direction == "forward" else 1
        payload["twisted_charge"] = charge_to_dict(twisted_charge(result, parity, g))
    if args.verify_m:
        try:
            rel = verify_m_relations(v, g)
        except MPreconditionError as exc:
            raise DocumentError(str(exc)) from exc
        payload["m_relations"] = rel
        if not all(rel.values()):
            status = EXIT_IDENTITY
    if args.oracle:
        kernel = ch_poincare(g) if args.direction == "forward" else ch_inverse_kernel(g)
        oracle = grr_transform(v, kernel, args.direction, g)
        payload["oracle_match"] = oracle == result
        if oracle != result:
            payload["oracle_output"] = charge_to_dict(oracle)
            status = EXIT_IDENTITY
    _print_json(payload, out)
    return status


def cmd_verify(args, registry: Registry, out) -> int:
    from .verify import SUITES, report, run_suites
    names = [] if not args.suites or args.suites == ["all"] else args.suites
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise DocumentError(f"unknown suite(s) {unknown}; known: {sorted(SUITES)}")
    rep = report(run_suites(names, registry))
    if args.json:
        _print_json(rep, out)
    else:
        for suite, checks in rep["suites"].items():
            for c in checks:
                mark = "PASS" if c["passed"] else ("INFO" if not c["detail"].get("gating", True) else "FAIL")
                out.write(f"{mark}  {suite}: {c['name']}  [{c['anchor']}]\n")
        out.write(("all identities hold\n" if rep["passed"]
                   else f"{len(rep['failing'])} failing identities\n"))
    return EXIT_OK if rep["passed"] else EXIT_IDENTITY


def _int_list(text: str, count: int | None = None) -> list[int]:
    try:
        values = [int(p) for p in text.split(",")]
    except ValueError as exc:
        raise DocumentError(f"expected comma-separated integers, got {text!r}") from exc
    if count is not None and len(values) != count:
        raise DocumentError(f"expected {count} integers, got {len(values)}")
    return values


def cmd_moduli(args, registry: Registry, out) -> int:
    if args.model != "deg18":
        raise DocumentError("moduli formulas are stated for the deg18 model")
    if (args.bps is None) == (args.fmw is None):
        raise DocumentError("give exactly one of --bps or --fmw")
    payload: dict = {"model": args.model}
    try:
        if args.fmw is not None:
            n, a = _int_list(args.fmw, 2)
            bps = fmw_bps_dictionary(n, a)
            payload["fmw"] = {"rank": n, "a": a}
        else:
            bps = BPSCharge.of(*_int_list(args.bps, 6))
        payload["bps"] = [format_rational(c) for c in bps.as_tuple()]
        payload["dimension"] = format_rational(dim_moduli_deg18(bps))
    except (ParityError, PreconditionError) as exc:
        raise DocumentError(str(exc)) from exc
    _print_json(payload, out)
    return EXIT_OK


# --- entry point --------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fmcalc", description="Exact fibrewise Fourier-Mukai charge calculus")
    p.add_argument("--config", help="model registry file (YAML); defaults to the bundled registry")
    sub = p.add_subparsers(dest="command", required=True)

    pm = sub.add_parser("model", help="list or show registered models")
    pm.add_argument("action", choices=["list", "show"])
    pm.add_argument("name", nargs="?")
    pm.add_argument("--json", action="store_true")

    pf = sub.add_parser("fm", help="apply the forward or inverse transform to a charge document")
    pf.add_argument("--model", help="geometry used when the document names none")
    pf.add_argument("--direction", choices=["forward", "inverse"], default="forward")
    pf.add_argument("--charge", required=True, help="JSON text, a file path, or - for stdin")
    pf.add_argument("--twisted-charge", action="store_true")
    pf.add_argument("--oracle", action="store_true", help="recompute through the fibre-square GRR engine")
    pf.add_argument("--verify-m", action="store_true", help="check the M relations (needs x = 0)")

    pv = sub.add_parser("verify", help="run identity suites")
    pv.add_argument("suites", nargs="*", help="suite names, or 'all'")
    pv.add_argument("--json", action="store_true")

    pd = sub.add_parser("moduli", help="moduli dimension from a BPS vector or FMW data")
    pd.add_argument("--model", default="deg18")
    pd.add_argument("--bps", help="n6,n4_1,n4_2,n0,n2_1,n2_2")
    pd.add_argument("--fmw", help="rank,a")
    return p


def main(argv: Sequence[str] | None = None, registry: Registry | None = None,
         stdout=None, stderr=None, stdin=None) -> int:
    out, err, inp = stdout or sys.stdout, stderr or sys.stderr, stdin or sys.stdin
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if registry is None:
            if args.config:
                try:
                    registry = registry_from_yaml(Path(args.config).read_text())
                except (OSError, KeyError, TypeError, ValueError) as exc:
                    raise DocumentError(f"cannot load config {args.config}: {exc}") from exc
            else:
                registry = default_registry()
        if args.command == "model":
            return cmd_model(args, registry, out)
        if args.command == "fm":
            return cmd_fm(args, registry, out, inp)
        if args.command == "verify":
            return cmd_verify(args, registry, out)
        return cmd_moduli(args, registry, out)
    except DocumentError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
