"""Command-line interface.

Exit codes: 0 ok, 1 invalid input, 2 infeasible (c = 0) or unsupported
(c > 1 for synthesis), 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Any

from .flagcheck import DEFAULT_PRIME, PrimeField, horn_numeric_check, verify
from .hive_enum import all_triples, enumerate_measures, lr_coeff, unique_measure
from .measure import (
    BoundaryData,
    InvariantViolation,
    SetTriple,
    TriMeasure,
    boundary_from_sets,
    validate,
)
from .rigidity import find_witness
from .skeleton import decompose
from .synth import Synthesizer, Unsupported, dual_measure, dual_sets
from .trilattice import Chirality, corner_a, corner_b, corner_c

EXIT_OK, EXIT_INPUT, EXIT_INFEASIBLE, EXIT_INVARIANT = 0, 1, 2, 3
DEFAULT_SEEDS = 5


class InputError(ValueError):
    pass


class Infeasible(Exception):
    pass


# --- input ----------------------------------------------------------------

def load_json(arg: str | None) -> Any:
    if arg is None:
        raise InputError("--in is required")
    text = arg
    if not arg.lstrip().startswith(("{", "[")):
        if not os.path.exists(arg):
            raise InputError(f"no such file: {arg}")
        with open(arg, encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc


def as_problem(data: Any) -> SetTriple:
    try:
        return SetTriple.from_json(data)
    except (KeyError, TypeError) as exc:
        raise InputError("expected a problem {\"n\", \"I\", \"J\", \"K\"}") from exc


def as_measure(data: Any) -> TriMeasure:
    try:
        m = TriMeasure.from_json(data)
    except (KeyError, TypeError) as exc:
        raise InputError("expected a measure {\"r\", \"chirality\", \"edges\"}") from exc
    bad = validate(m)
    if bad:
        raise InputError(f"measure is unbalanced at {[list(p) for p in bad]}")
    return m


def measures_of_input(data: Any) -> list[TriMeasure]:
    """A measure file gives itself; a problem gives all of its measures."""
    if isinstance(data, dict) and "edges" in data:
        return [as_measure(data)]
    s = as_problem(data)
    return enumerate_measures(boundary_from_sets(s, Chirality.PLUS)) if s.trace_ok() and s.r else []


def as_boundary(data: Any) -> BoundaryData:
    if isinstance(data, dict) and "alpha" in data:
        try:
            return BoundaryData(
                int(data["r"]),
                Chirality(data.get("chirality", "plus")),
                int(data["omega"]),
                tuple(data["alpha"]),
                tuple(data["beta"]),
                tuple(data["gamma"]),
            )
        except (KeyError, TypeError) as exc:
            raise InputError("incomplete boundary data") from exc
    s = as_problem(data)
    if not s.r:
        raise InputError("r must be at least 1")
    return boundary_from_sets(s)


def boundary_json(b: BoundaryData) -> dict:
    return {
        "r": b.r,
        "chirality": b.chirality.value,
        "omega": b.omega,
        "alpha": list(b.alpha),
        "beta": list(b.beta),
        "gamma": list(b.gamma),
    }


# --- SVG --------------------------------------------------------------------

PX = 40.0


def _xy(p, r: int, margin: float) -> tuple[float, float]:
    # u = (1, 0), v = (-1/2, sqrt(3)/2), y axis pointing down in SVG
    x = p[0] - 0.5 * p[1]
    y = math.sqrt(3) / 2 * p[1]
    return margin + PX * x + PX * 0.5 * r, margin + PX * (math.sqrt(3) / 2 * r - y)


def render_svg(m: TriMeasure) -> str:
    r = m.r
    margin = 1.5 * PX
    width = PX * (r + 1) + 2 * margin
    height = PX * (math.sqrt(3) / 2 * r) + 2 * margin
    top = max(m.densities.values(), default=1)
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.1f}" height="{height:.1f}" '
        f'viewBox="0 0 {width:.1f} {height:.1f}">',
    ]
    corners = [_xy(c, r, margin) for c in (corner_a(0, r), corner_b(0, r), corner_c(0, r))]
    pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in corners)
    parts.append(f'<polygon points="{pts}" fill="none" stroke="#888" stroke-width="1" stroke-dasharray="2,4"/>')
    for e, d in m.densities.items():
        (x1, y1), (x2, y2) = (_xy(p, r, margin) for p in e.ends)
        w = 1.0 + 5.0 * d / top
        parts.append(
            f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" stroke="black" '
            f'stroke-width="{w:.2f}" stroke-linecap="round"><title>{d}</title></line>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# --- commands ---------------------------------------------------------------

def _seeds(args) -> list[int]:
    return list(range(args.seed, args.seed + (args.trials or DEFAULT_SEEDS)))


def cmd_lr(args) -> Any:
    s = as_problem(load_json(args.inp))
    c = lr_coeff(s)
    return {"problem": s.as_json(), "c": c}, str(c)


def cmd_measures(args) -> Any:
    b = as_boundary(load_json(args.inp))
    ms = enumerate_measures(b)
    data = {"boundary": boundary_json(b), "count": len(ms), "measures": [m.as_json() for m in ms]}
    text = "\n".join([f"{len(ms)} measure(s)"] + [json.dumps(m.as_json()) for m in ms])
    return data, text


def cmd_rigid(args) -> Any:
    ms = measures_of_input(load_json(args.inp))
    if not ms:
        raise Infeasible("no measures for this input")
    out = []
    for m in ms:
        if m.is_zero():
            out.append({"rigid": True, "witness": None})
            continue
        w = find_witness(m)
        out.append({"rigid": w is None, "witness": None if w is None else w.as_json()})
    text = "\n".join(
        "rigid" if o["rigid"] else f"not rigid: {o['witness']['kind']} at {o['witness']['points']}" for o in out
    )
    return (out[0] if len(out) == 1 else out), text


def _single_measure(data) -> TriMeasure:
    ms = measures_of_input(data)
    if not ms:
        raise Infeasible("no measures for this input (c = 0)")
    if len(ms) > 1:
        raise Unsupported(f"the problem has c = {len(ms)} measures; pass one measure explicitly", len(ms))
    return ms[0]


def cmd_decompose(args) -> Any:
    m = _single_measure(load_json(args.inp))
    if m.is_zero():
        return {"components": [], "precedes0": []}, "zero measure"
    if find_witness(m) is not None:
        raise InputError("decomposition needs a rigid measure")
    prec = decompose(m)
    lines = [f"{i}: coeff {c.coeff}, root {c.root.as_json()}, {len(c.mu.densities)} edges" for i, c in enumerate(prec.components)]
    return prec.as_json(), "\n".join(lines)


def cmd_dual(args) -> Any:
    s = as_problem(load_json(args.inp))
    d = dual_sets(s)
    data: dict = {"problem": s.as_json(), "dual": d.as_json(), "c": lr_coeff(s), "c_dual": lr_coeff(d)}
    if data["c"] == 1 and 0 < s.r < s.n:
        m = unique_measure(boundary_from_sets(s))
        data["dual_measure"] = dual_measure(m).as_json()
    return data, str(d)


def _synth(s: SetTriple):
    c = lr_coeff(s)
    if c == 0:
        raise Infeasible(f"c = 0 for {s}: no solution")
    return Synthesizer()(s)


def cmd_synth(args) -> Any:
    s = as_problem(load_json(args.inp))
    p = _synth(s)
    return dict(p.as_json(), text=p.text()), p.text()


def cmd_verify(args) -> Any:
    s = as_problem(load_json(args.inp))
    p = _synth(s)
    rep = verify(p, s, _seeds(args), PrimeField(args.prime))
    if not rep["passed"]:
        raise InvariantViolation(json.dumps(rep))
    return rep, f"{p.text()}\nverified on seeds {[r['seed'] for r in rep['runs']]} mod {args.prime}"


def cmd_horn(args) -> Any:
    ns = [int(v) for v in args.n_list.split(",")]
    rep = horn_numeric_check(args.N, ns, args.trials or 50, args.tol, args.seed)
    if not rep["passed"]:
        raise InvariantViolation(f"{len(rep['violations'])} spectral inequalities violated")
    return rep, f"passed; max relative margin {rep['max_relative_margin']:.3e}"


def census_rows(n: int, prime: int, seeds: list[int], include_zero: bool = False) -> list[dict]:
    synth = Synthesizer()
    fld = PrimeField(prime)
    rows = []
    for s in all_triples(n):
        if s.r == 0:
            continue
        c = lr_coeff(s)
        if c == 0 and not include_zero:
            continue
        row = {"n": n, "I": list(s.I), "J": list(s.J), "K": list(s.K), "c": c, "rigid": None, "polynomial": None, "verified": None}
        if c >= 1:
            ms = enumerate_measures(boundary_from_sets(s))
            row["rigid"] = all(m.is_zero() or find_witness(m) is None for m in ms)
        if c == 1:
            p = synth(s)
            row["polynomial"] = p.text()
            row["verified"] = verify(p, s, seeds, fld)["passed"]
        rows.append(row)
    return rows


def cmd_census(args) -> Any:
    rows = census_rows(args.n, args.prime, _seeds(args), args.all)
    fmt = lambda v: "{" + ",".join(map(str, v)) + "}"
    lines = ["n\tI\tJ\tK\tc\trigid?\tpolynomial\tverified?"]
    for r in rows:
        lines.append(
            "\t".join(
                [str(r["n"]), fmt(r["I"]), fmt(r["J"]), fmt(r["K"]), str(r["c"]),
                 "-" if r["rigid"] is None else str(r["rigid"]).lower(),
                 r["polynomial"] or "-",
                 "-" if r["verified"] is None else str(r["verified"]).lower()]
            )
        )
    data = {"n": args.n, "prime": args.prime, "seeds": _seeds(args), "rows": rows}
    return data, "\n".join(lines)


def cmd_render(args) -> Any:
    m = _single_measure(load_json(args.inp))
    svg = render_svg(m)
    return {"svg": svg}, svg, svg


COMMANDS = {
    "lr": (cmd_lr, "print c_IJK for a problem"),
    "measures": (cmd_measures, "list the integer measures with a boundary"),
    "rigid": (cmd_rigid, "rigidity verdict and witness"),
    "decompose": (cmd_decompose, "ordered extremal components of a rigid measure"),
    "dual": (cmd_dual, "dual problem and dual measure"),
    "synth": (cmd_synth, "lattice polynomial for a c = 1 problem"),
    "verify": (cmd_verify, "synthesize and check the intersection pattern on random flags"),
    "horn": (cmd_horn, "numeric check of the spectral inequalities"),
    "census": (cmd_census, "table of all feasible problems for one n"),
    "render": (cmd_render, "SVG drawing of a measure's support"),
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lrsynth", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--in", dest="inp", help="input JSON file or inline JSON")
        p.add_argument("--out", help="write output here instead of stdout")
        p.add_argument("--prime", type=int, default=DEFAULT_PRIME)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--trials", type=int, default=None)
        p.add_argument("--format", choices=("json", "text", "svg"), default="json" if name != "render" else "svg")
        if name == "census":
            p.add_argument("--n", type=int, required=True)
            p.add_argument("--all", action="store_true", help="include rows with c = 0")
        if name == "horn":
            p.add_argument("--N", type=int, default=12)
            p.add_argument("--n-list", default="2,3,4,6")
            p.add_argument("--tol", type=float, default=1e-8)
    return ap


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    func = COMMANDS[args.cmd][0]
    try:
        result = func(args)
        data, text = result[0], result[1]
        if args.format == "svg":
            if len(result) < 3:
                raise InputError("svg output is only available for render")
            _emit(result[2], args.out)
        elif args.format == "text":
            _emit(text, args.out)
        else:
            _emit(json.dumps(data, indent=2, ensure_ascii=False), args.out)
        return EXIT_OK
    except Unsupported as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except Infeasible as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except InvariantViolation as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (ValueError, KeyError, TypeError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
