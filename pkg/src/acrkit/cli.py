"""Command-line front end.

Exit codes: 0 conclusive, 2 inconclusive, 1 error. Reports are JSON on
stdout (``--pretty`` for text); every JSON report carries a manifest with
the input hash, seed, tool version and per-step timings.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from typing import Callable, Dict, List, Optional, Sequence

from . import __version__
from .acrdetect import (
    acr_candidates,
    analyze,
    cacr,
    check_condition1,
    check_condition3,
    jacobian_minors,
    positive_restriction_ideal,
    split_components,
    value_str,
)
from .exactalg import eliminate, krull_dimension, parse_order, parse_polynomial, saturate
from .exactalg.polynomial import Polynomial
from .netmodel import NetworkSyntaxError, network_to_json, parse_network, pretty_print, steady_state_ideal

EXIT_OK, EXIT_ERROR, EXIT_INCONCLUSIVE = 0, 1, 2


class CliError(Exception):
    pass


class Timer:
    def __init__(self):
        self.timings: Dict[str, float] = {}

    def run(self, name: str, fn: Callable, *args, **kwargs):
        t0 = time.perf_counter()
        try:
            return fn(*args, **kwargs)
        finally:
            self.timings[name] = round((time.perf_counter() - t0) * 1000.0, 3)


def _parse_box(text: str, n: int):
    """'a,b' for every coordinate, or 'a1,b1;a2,b2;...' per coordinate."""
    parts = [p for p in text.split(";") if p.strip()]
    try:
        ivs = [tuple(float(v) for v in p.split(",")) for p in parts]
    except ValueError:
        raise CliError(f"malformed --box {text!r}") from None
    if any(len(iv) != 2 for iv in ivs):
        raise CliError(f"malformed --box {text!r}: intervals are 'lo,hi'")
    if len(ivs) == 1:
        ivs = ivs * n
    if len(ivs) != n:
        raise CliError(f"--box has {len(ivs)} intervals for {n} species")
    return ivs


def _species_indices(spec: str, names: Sequence[str]) -> List[int]:
    out = []
    for s in spec.split(","):
        s = s.strip()
        if s not in names:
            raise CliError(f"unknown species {s!r}")
        out.append(list(names).index(s))
    return out


def _strs(polys, names, order=None):
    return [p.to_str(names, order) for p in polys]


# --- verbs -------------------------------------------------------------------------

def cmd_parse(net, I, args, timer):
    return {"network": network_to_json(net), "text": pretty_print(net)}, True


def cmd_odes(net, I, args, timer):
    return {"species": net.names, "odes": {f"d{n}/dt": s for n, s in zip(net.names, I.to_strs())}}, True


def cmd_gb(net, I, args, timer):
    order = parse_order(args.order, net.names) if args.order else None
    gb = timer.run("groebner", I.groebner, order)
    return {"order": gb.order.describe(net.names), "basis": _strs(gb.elements, net.names, gb.order),
            "unit": gb.is_unit()}, True


def cmd_saturate(net, I, args, timer):
    if args.by:
        f = parse_polynomial(args.by, net.names)
        label = args.by
    else:
        f = Polynomial.monomial([1] * net.n_species)
        label = "*".join(net.names)
    S = timer.run("saturate", saturate, I, f)
    gb = S.groebner()
    return {"by": label, "basis": _strs(gb.elements, net.names, gb.order), "unit": gb.is_unit()}, True


def cmd_eliminate(net, I, args, timer):
    if not args.keep:
        raise CliError("eliminate needs --keep SPECIES[,SPECIES...]")
    keep = _species_indices(args.keep, net.names)
    E = timer.run("eliminate", eliminate, I, keep)
    return {"keep": [net.names[k] for k in keep], "generators": E.to_strs()}, True


def cmd_acr(net, I, args, timer):
    rep = timer.run("analyze", analyze, net)
    return rep.to_json(), rep.conclusive


def cmd_candidates(net, I, args, timer):
    cands = timer.run("candidates", acr_candidates, I)
    return {"candidates": [c.to_json() for c in cands]}, bool(cands)


def cmd_cacr(net, I, args, timer):
    out = {}
    for i, name in enumerate(net.names):
        out[name] = timer.run(f"cacr_{name}", cacr, I, i).to_json(net.names)
    return {"cacr": out}, True


def _parse_component(text: str, names: Sequence[str]) -> List[Polynomial]:
    return [parse_polynomial(s, names) for s in text.split(";") if s.strip()]


def cmd_jideal(net, I, args, timer):
    P = positive_restriction_ideal(I)
    names = P.ideal.names
    if args.component:
        comps = [P.ideal.with_generators(_parse_component(c, names)) for c in args.component]
    elif args.split:
        comps = timer.run("split", split_components, P.ideal)
    else:
        comps = [P.ideal]
    out = []
    found_any = False
    for k, Q in enumerate(comps):
        d = args.dim if args.dim is not None else krull_dimension(Q)
        if d < 0:
            out.append({"component": Q.to_strs(), "dimension": d, "note": "unit ideal"})
            continue
        minors = timer.run(f"minors_{k}", jacobian_minors, Q, d)
        aug = Q.with_generators(list(Q.generators) + minors)
        gb = timer.run(f"groebner_{k}", aug.groebner)
        acr = {}
        for i in range(net.n_species):
            v = check_condition1(aug, i) or check_condition3(aug, i)
            if v is not None and v.value is not None:
                acr[names[i]] = value_str(v.value)
                found_any = True
        out.append({
            "component": Q.to_strs(),
            "dimension": d,
            "minors": _strs(minors, names),
            "basis": _strs(gb.elements, names, gb.order),
            "forced_values": acr,
        })
    return {"positive_restriction": P.ideal.to_strs(), "components": out,
            "heuristic_split": bool(args.split and not args.component)}, found_any


def _tracker_cfg(args):
    from .numacr import TrackerConfig

    return TrackerConfig(seed=args.seed, threads=args.threads)


def cmd_witness(net, I, args, timer):
    from .numacr import procedure2_numerical_acr, witness_points

    cfg = _tracker_cfg(args)
    if args.dim is not None:
        ws = timer.run("witness", witness_points, I, args.dim, cfg)
        return ws.to_json(), True
    res = timer.run("procedure2", procedure2_numerical_acr, I, args.delta, cfg)
    return res.to_json(), res.conclusive


def cmd_sample(net, I, args, timer):
    from .numacr import sample_real_points

    if not args.box:
        raise CliError("sample needs --box")
    box = _parse_box(args.box, net.n_species)
    res = timer.run("sample", sample_real_points, I, box, args.epsilon, args.delta, _tracker_cfg(args),
                    args.max_rounds)
    return res.to_json(), len(res.points) > 0


def cmd_preclude(net, I, args, timer):
    from .numacr import procedure3_preclude

    if not args.box:
        raise CliError("preclude needs --box")
    box = _parse_box(args.box, net.n_species)
    res = timer.run("procedure3", procedure3_preclude, I, box, args.epsilon, args.delta, _tracker_cfg(args),
                    args.max_rounds)
    return res.to_json(), res.conclusive


VERBS = {
    "parse": cmd_parse,
    "odes": cmd_odes,
    "gb": cmd_gb,
    "saturate": cmd_saturate,
    "eliminate": cmd_eliminate,
    "acr": cmd_acr,
    "candidates": cmd_candidates,
    "cacr": cmd_cacr,
    "jideal": cmd_jideal,
    "witness": cmd_witness,
    "sample": cmd_sample,
    "preclude": cmd_preclude,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="acrkit", description="ACR analysis of mass-action reaction networks")
    p.add_argument("--version", action="version", version=f"acrkit {__version__}")
    sub = p.add_subparsers(dest="verb", required=True)
    for verb in VERBS:
        s = sub.add_parser(verb)
        s.add_argument("file", help="network file in the .crn reaction DSL")
        s.add_argument("--pretty", action="store_true", help="human-readable output")
        s.add_argument("--seed", type=int, default=0)
        s.add_argument("--threads", type=int, default=1)
        s.add_argument("--delta", type=float, default=None)
        s.add_argument("--epsilon", type=float, default=0.1)
        s.add_argument("--box", default=None, help="'lo,hi' for all species or 'lo,hi;lo,hi;...'")
        s.add_argument("--max-rounds", type=int, default=20)
        s.add_argument("--order", default=None, help="e.g. lex:B,C,D,A or grevlex")
        s.add_argument("--by", default=None, help="saturate by this polynomial (default: product of species)")
        s.add_argument("--keep", default=None, help="species kept by eliminate")
        s.add_argument("--dim", type=int, default=None)
        s.add_argument("--component", action="append", default=None,
                       help="jideal component generators separated by ';' (repeatable)")
        s.add_argument("--split", action="store_true", help="jideal: heuristic factor splitting")
    return p


# --- rendering ------------------------------------------------------------------------

def _pretty(verb: str, report: dict) -> str:
    if verb == "acr":
        lines = []
        for v in report["verdicts"]:
            val = v["value"]
            if isinstance(val, dict) and "num" in val:
                val = str(val["num"]) if str(val["den"]) == "1" else f"{val['num']}/{val['den']}"
            elif isinstance(val, dict):
                val = f"({val['lo']}, {val['hi']}] ~ {val['approx']:.10g}"
            shown = f" value {val}" if val is not None else ""
            lines.append(f"{v['species']}: {v['status']}{shown} [{v['method']}] {v['certificate']}")
        if report["candidates"]:
            lines.append("candidates: " + ", ".join(
                f"({c['species']}, {_fmt_val(c['value'])})" for c in report["candidates"]))
        if report["vacuous"]:
            lines.append("vacuous: " + report["vacuity_certificate"])
        return "\n".join(lines)
    if verb == "candidates":
        return "\n".join(f"({c['species']}, {_fmt_val(c['value'])})  from {c['source']}"
                         for c in report["candidates"]) or "no candidates"
    if verb in ("gb", "saturate"):
        return "\n".join(report["basis"])
    if verb == "odes":
        return "\n".join(f"{k} = {v}" for k, v in report["odes"].items())
    if verb == "parse":
        return report["text"].rstrip("\n")
    if verb == "preclude":
        return f"{report['verdict']} ({report['n_points']} points)"
    if "verdict" in report:
        return report["verdict"]
    body = {k: v for k, v in report.items() if k != "manifest"}
    return json.dumps(body, indent=2, sort_keys=True)


def _fmt_val(v):
    if "num" in v:
        return str(v["num"]) if str(v["den"]) == "1" else f"{v['num']}/{v['den']}"
    return f"({v['lo']}, {v['hi']}]"


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_ERROR if e.code else EXIT_OK
    if args.delta is None:
        args.delta = 1e-8 if args.verb == "witness" else 1e-6
    timer = Timer()
    try:
        with open(args.file, "rb") as fh:
            raw = fh.read()
        net = timer.run("parse", parse_network, raw.decode("utf-8"))
        I = steady_state_ideal(net)
        report, conclusive = VERBS[args.verb](net, I, args, timer)
    except NetworkSyntaxError as e:
        print(f"acrkit: {args.file}: {e}", file=err)
        return EXIT_ERROR
    except (CliError, ValueError, KeyError, OSError) as e:
        print(f"acrkit: {e}", file=err)
        return EXIT_ERROR
    report = dict(report)
    report["manifest"] = {
        "input_sha256": hashlib.sha256(raw).hexdigest(),
        "seed": args.seed,
        "version": __version__,
        "verb": args.verb,
        "timings_ms": timer.timings,
    }
    if args.pretty:
        print(_pretty(args.verb, report), file=out)
    else:
        print(json.dumps(report, sort_keys=True, indent=1), file=out)
    return EXIT_OK if conclusive else EXIT_INCONCLUSIVE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
