"""Command-line front end.

Exit codes: 0 success, 1 verification mismatch, 2 input error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import bridge, oracle
from .abelian import InvalidElementError, InvalidSpecError
from .bicayley import BiCayleySpec, Vertex, adjacency, is_connected
from .cyclotomic import CycInt
from .pst import PairResult, decide_cross, decide_same, pair_verdicts, periodicity
from .spectrum import eigenvalues, character_sums, is_integral, is_weakly_inner_cospectral

SCHEMA = 1


class InputError(Exception):
    pass


# -- serialization -----------------------------------------------------------


def _default(obj):
    if isinstance(obj, Fraction):
        return {"num": obj.numerator, "den": obj.denominator}
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if obj == math.inf:
        return "inf"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(payload: dict) -> str:
    return json.dumps(payload, indent=2, default=_default)


def _cyc_json(x: CycInt):
    v = x.as_integer()
    if v is not None:
        return v
    z = x.numeric_eval()
    return {"re": z.real, "im": z.imag}


def _vertex_json(v: Vertex) -> dict:
    return {"part": v.part, "element": list(v.element)}


# -- input ---------------------------------------------------------------------


def _read_json(path: str) -> dict:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        return json.loads(text)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def load_spec(path: str) -> BiCayleySpec:
    data = _read_json(path)
    if not isinstance(data, dict):
        raise InputError("spec file must hold a JSON object")
    try:
        return BiCayleySpec.from_json(data)
    except (InvalidSpecError, InvalidElementError, ValueError) as exc:
        raise InputError(f"invalid spec: {exc}") from None


def parse_vertex(text: str, spec: BiCayleySpec) -> Vertex:
    """``p<part>:<element index>``, e.g. ``p1:5``."""
    try:
        head, idx = text.strip().split(":")
        if head not in ("p0", "p1"):
            raise ValueError
        part, i = int(head[1]), int(idx)
    except ValueError:
        raise InputError(f"malformed vertex {text!r}; expected p0:<index> or p1:<index>") from None
    if not 0 <= i < spec.n:
        raise InputError(f"element index {i} out of range for a group of order {spec.n}")
    return Vertex(spec.group.elements()[i], part)


def parse_pair(text: str, spec: BiCayleySpec) -> tuple[Vertex, Vertex]:
    parts = text.split("|")
    if len(parts) != 2:
        raise InputError(f"malformed pair {text!r}; expected 'p0:3|p1:5'")
    return parse_vertex(parts[0], spec), parse_vertex(parts[1], spec)


# -- reports -------------------------------------------------------------------


def analyze_report(spec: BiCayleySpec) -> dict:
    rows = []
    for s, p in zip(character_sums(spec), eigenvalues(spec)):
        rows.append({
            "k": list(s.k),
            "chi_R": _cyc_json(s.sR),
            "chi_L": _cyc_json(s.sL),
            "chi_T": _cyc_json(s.sT),
            "lo": p.lo_exact if p.exact else p.lo,
            "hi": p.hi_exact if p.exact else p.hi,
        })
    return {
        "schema": SCHEMA,
        "spec": spec.to_json(),
        "integral": is_integral(spec),
        "weakly_inner_cospectral": is_weakly_inner_cospectral(spec),
        "connected": is_connected(spec),
        "degree": [spec.degree(0), spec.degree(1)],
        "spectrum": rows,
    }


def decide_pair(spec: BiCayleySpec, u: Vertex, v: Vertex) -> PairResult:
    if u.part == v.part:
        verdict = decide_same(spec, u.part, u.element, v.element)
    elif u.part == 0:
        verdict = decide_cross(spec, u.element, v.element)
    else:
        verdict = decide_cross(spec, v.element, u.element)
    return PairResult(u, v, verdict)


def pst_report(spec: BiCayleySpec) -> dict:
    results = pair_verdicts(spec)
    return {
        "schema": SCHEMA,
        "pairs": [r.to_json() for r in results if r.verdict.exists],
        "rejected": [r.to_json() for r in results if not r.verdict.exists],
    }


def periodic_report(spec: BiCayleySpec, vertex: Vertex | None) -> dict:
    verdict = periodicity(spec, vertex)
    body = verdict.to_json()
    out = {"schema": SCHEMA, "vertex": _vertex_json(vertex) if vertex else None,
           "periodic": body.pop("exists")}
    out.update(body)
    return out


# -- commands ------------------------------------------------------------------


def _emit(args, payload: dict, human: str) -> None:
    print(dumps(payload) if args.json else human)


def cmd_analyze(args) -> int:
    spec = load_spec(args.spec)
    rep = analyze_report(spec)
    lines = [
        f"group Z{' x Z'.join(map(str, spec.group.orders))}, {2 * spec.n} vertices, degrees {rep['degree']}",
        f"integral: {rep['integral']}  weakly inner-cospectral: {rep['weakly_inner_cospectral']}  connected: {rep['connected']}",
        "k\tchi(R)\tchi(L)\tchi(T)\tlo\thi",
    ]
    for r in rep["spectrum"]:
        cells = [r["k"], r["chi_R"], r["chi_L"], r["chi_T"], r["lo"], r["hi"]]
        lines.append("\t".join(_fmt(c) for c in cells))
    _emit(args, rep, "\n".join(lines))
    return 0


def _fmt(x) -> str:
    if isinstance(x, dict):
        return f"{x['re']:.6g}{x['im']:+.6g}i"
    if isinstance(x, float):
        return f"{x:.6g}"
    return str(x)


def cmd_pst(args) -> int:
    spec = load_spec(args.spec)
    if args.pair:
        u, v = parse_pair(args.pair, spec)
        r = decide_pair(spec, u, v)
        payload = {"schema": SCHEMA, "pair": r.to_json()}
        human = _pair_line(r)
    else:
        payload = pst_report(spec)
        found = [r for r in pair_verdicts(spec) if r.verdict.exists]
        human = "\n".join(_pair_line(r) for r in found) or "no PST between distinct vertices"
    _emit(args, payload, human)
    return 0


def _pair_line(r: PairResult) -> str:
    v = r.verdict
    if v.exists:
        return f"{r.u} -- {r.v}: PST at t = {v.times.describe()}"
    at = f" (character {v.k})" if v.k is not None else ""
    return f"{r.u} -- {r.v}: no PST [{v.reason.value}{at}]"


def cmd_periodic(args) -> int:
    spec = load_spec(args.spec)
    vertex = parse_vertex(args.vertex, spec) if args.vertex else None
    rep = periodic_report(spec, vertex)
    verdict = periodicity(spec, vertex)
    what = f"vertex {vertex}" if vertex else "graph"
    human = (f"{what} periodic at t = {verdict.times.describe()}" if verdict.exists
             else f"{what} not periodic [{verdict.reason.value}]")
    _emit(args, rep, human)
    return 0


def cmd_scan(args) -> int:
    spec = load_spec(args.spec)
    if args.steps < 2:
        raise InputError("--steps must be at least 2")
    t_max = args.t_max * math.pi
    dec = oracle.decompose(adjacency(spec))
    if args.csv:
        if not args.pair:
            raise InputError("--csv needs --pair")
        u, v = (spec.vertex_index(x) for x in parse_pair(args.pair, spec))
        rep = oracle.fidelity_curve(dec, u, v, t_max, args.steps, args.threshold)
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["time", "fidelity"])
            w.writerows(zip(rep.times.tolist(), rep.values.tolist()))
        reports = [rep] if rep.peaks else []
    else:
        reports = oracle.scan_pst(dec, t_max, args.steps, args.threshold)
    payload = {
        "schema": SCHEMA,
        "t_max_over_pi": args.t_max,
        "steps": args.steps,
        "threshold": args.threshold,
        "peaks": [
            {
                "u": _vertex_json(spec.vertex_at(r.pair[0])),
                "v": _vertex_json(spec.vertex_at(r.pair[1])),
                "peaks": [{"t": t, "t_over_pi": t / math.pi, "fidelity": f} for t, f in r.peaks],
            }
            for r in reports
        ],
    }
    human = "\n".join(
        f"{spec.vertex_at(r.pair[0])} -- {spec.vertex_at(r.pair[1])}: "
        + ", ".join(f"{f:.9f} at t = {t / math.pi:.9f} pi" for t, f in r.peaks)
        for r in reports
    ) or f"no pair reaches fidelity {args.threshold}"
    _emit(args, payload, human)
    return 0


def cmd_verify(args) -> int:
    spec = load_spec(args.spec)
    rep = oracle.verify(spec, max_rejected=args.max_rejected)
    payload = {
        "schema": SCHEMA,
        "summary": rep.summary(),
        "mismatches": [c.to_json() for c in rep.mismatches],
    }
    s = rep.summary()
    human = "\n".join(
        [f"{kind}: {v['confirmed']}/{v['checked']} confirmed" for kind, v in s["by_kind"].items()]
        + [f"MISMATCH {c.kind} {c.pair}: {c.detail}" for c in rep.mismatches]
        + ["all verdicts confirmed" if rep.ok else "verification FAILED"]
    )
    _emit(args, payload, human)
    return 0 if rep.ok else 1


def cmd_example(args) -> int:
    try:
        ext, s, expected = bridge.example_family(args.family, args.m)
    except bridge.UnsupportedError as exc:
        raise InputError(str(exc)) from None
    spec = bridge.cayley_to_bicayley(ext, s)
    fixture = {
        "schema": SCHEMA,
        "family": args.family,
        "m": args.m,
        "extension": ext.to_json(),
        "S_inG": [list(a) for a in sorted(s.inG)],
        "S_inBG": [list(a) for a in sorted(s.inBG)],
        "expected": expected.to_json(),
        "engine": pst_report(spec),
    }
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        stem = f"{args.family}_m{args.m}"
        (out / f"{stem}.spec.json").write_text(dumps(spec.to_json()) + "\n")
        (out / f"{stem}.expected.json").write_text(dumps(fixture) + "\n")
        if not args.json:
            print(f"wrote {out / (stem + '.spec.json')} and {out / (stem + '.expected.json')}")
    if args.json or not args.out_dir:
        print(dumps({"spec": spec.to_json(), "fixture": fixture}) if args.json else dumps(spec.to_json()))
    return 0


def cmd_convert(args) -> int:
    data = _read_json(args.cayley)
    try:
        ext = bridge.ExtensionSpec.build(data["orders"], data["phi"], data["b_squared"])
        s = bridge.CayleySet.build(ext, data.get("S_inG", []), data.get("S_inBG", []))
        spec = bridge.cayley_to_bicayley(ext, s)
    except KeyError as exc:
        raise InputError(f"extension document lacks field {exc}") from None
    except (InvalidSpecError, InvalidElementError, ValueError, TypeError) as exc:
        raise InputError(f"invalid extension: {exc}") from None
    text = dumps(spec.to_json())
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return 0


# -- entry point -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pstkit", description="Perfect state transfer on abelian bi-Cayley graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_spec(name: str, help: str):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("spec", help="spec JSON file ('-' for stdin)")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        return sp

    sp = with_spec("analyze", "character sums, spectrum, integrality")
    sp.set_defaults(func=cmd_analyze)

    sp = with_spec("pst", "decide PST for one pair or list all pairs")
    sp.add_argument("--pair", help="e.g. 'p0:3|p1:5' (part:element index)")
    sp.set_defaults(func=cmd_pst)

    sp = with_spec("periodic", "periodicity of the graph or of one vertex")
    sp.add_argument("--vertex", help="e.g. p0:0")
    sp.set_defaults(func=cmd_periodic)

    sp = with_spec("scan", "numeric fidelity scan")
    sp.add_argument("--t-max", type=float, default=4.0, help="scan horizon as a multiple of pi (default 4)")
    sp.add_argument("--steps", type=int, default=1600)
    sp.add_argument("--threshold", type=float, default=0.999)
    sp.add_argument("--pair", help="restrict to one pair (needed for --csv)")
    sp.add_argument("--csv", help="write the time,fidelity grid of --pair to this file")
    sp.set_defaults(func=cmd_scan)

    sp = with_spec("verify", "cross-check all verdicts against the numeric oracle")
    sp.add_argument("--max-rejected", type=int, default=64, help="rejected pairs to sweep")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("example", help="generate an example family spec and fixture")
    sp.add_argument("--family", required=True, choices=["dihedral", "gendihedral", "quaternion"])
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--out-dir", help="write <family>_m<m>.spec.json and .expected.json here")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_example)

    sp = sub.add_parser("convert", help="Cayley graph over a Z_2-extension to a bi-Cayley spec")
    sp.add_argument("cayley", help="extension JSON file")
    sp.add_argument("--out", help="output file (default stdout)")
    sp.set_defaults(func=cmd_convert)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
