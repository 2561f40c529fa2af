"""Command-line front end.

Every subcommand writes one JSON document (or a CSV projection) to stdout.
Exit status: 0 success, 1 a verification failed, 2 usage error.  Floats are
printed with 12 significant digits and keys are sorted, so identical
invocations give identical bytes.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction

import numpy as np

from . import dim3, jsonio
from . import symplectic as sp
from .clifford import conjugation_deviation, enumerate_clifford, expected_pattern, spectrum_census, synthesize
from .errors import NoConvergence, SicForgeError
from .hw_subgroups import hw_report
from .search import SearchConfig, search
from .sic import phase_profile, stability_group, symmetry_group, verify_sic
from .weyl import SicCandidate, hw_orbit

DIGITS = 12


class UsageError(Exception):
    pass


def canonical(obj):
    """Round floats to DIGITS significant digits, recursively."""
    if isinstance(obj, dict):
        return {str(k): canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [canonical(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return str(x)
        x = float(f"{x:.{DIGITS}g}")
        return 0.0 if x == 0 else x
    return obj


def to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    keys = sorted({k for r in rows for k in r})
    w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in r.items()})
    return buf.getvalue()


# -- argument helpers ------------------------------------------------------------


def parse_angle(text: str, pi_units: bool) -> tuple[float, float]:
    """(radians, snap tolerance implied by the precision of the input).

    Fractions like 2/9 are exact.  A decimal with n places stands for an
    interval of half-width 0.5e-n, capped at 1e-4.
    """
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse angle {text!r}") from exc
    scale = math.pi if pi_units else 1.0
    if "/" in text or "." not in text.lower().lstrip("-+") and "e" not in text.lower():
        tol = dim3.SNAP
    else:
        mantissa = text.lower().split("e")[0]
        places = len(mantissa.split(".")[1]) if "." in mantissa else 0
        tol = min(0.5 * 10.0**-places, 1e-4)
    return float(value) * scale, max(tol * scale, dim3.SNAP)


def prime_arg(text: str) -> int:
    try:
        p = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    try:
        from .zmod import check_prime

        return check_prime(p)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def load_sic(args) -> SicCandidate:
    if getattr(args, "t", None) is not None:
        t, _ = parse_angle(args.t, args.pi_units)
        return dim3.family_sic(t)
    if args.file is None:
        raise UsageError("give --file or --t")
    try:
        data = jsonio.load(args.file)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {args.file}: {exc}") from exc
    try:
        if "vector" in data:
            return SicCandidate(hw_orbit(jsonio.vector_from_file_json(data)))
        return jsonio.sic_from_json(data)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


# -- subcommands ---------------------------------------------------------------


def cmd_classes(args):
    kind = sp.normalize_kind(args.group)
    if kind in ("SL", "SL_affine"):
        census = sp.class_census(args.p, kind)
        rows = sp.census_to_json(census)
    else:
        elements = sp.enumerate_group(args.p, kind)
        orbits = sp.conjugacy_orbits(elements, sp.generators(args.p, kind))
        rows = sorted(({"label": None, "order": next(iter(o)).order(), "size": len(o)} for o in orbits),
                      key=lambda r: (r["order"], r["size"]))
    payload = {"p": args.p, "group": kind, "n_classes": len(rows),
               "group_order": sum(r["size"] for r in rows), "classes": rows}
    return payload, rows, 0


def cmd_clifford(args):
    if args.F is not None:
        label = sp.AffineSymplectic(tuple(x % args.p for x in args.F), tuple(x % args.p for x in args.chi), args.p)
        op = synthesize(label)
        payload = {**op.to_json(), "p": args.p, "deviation": conjugation_deviation(op)}
        return payload, None, 0
    if args.spectra:
        census = spectrum_census(args.p)
        rows = [{"label": str(k), "pattern": list(v), "expected": list(expected_pattern(k, args.p)),
                 "match": tuple(v) == expected_pattern(k, args.p)} for k, v in census.items()]
        return {"p": args.p, "classes": rows}, rows, 0 if all(r["match"] for r in rows) else 1
    ops = enumerate_clifford(args.p, args.extended)
    return {"p": args.p, "extended": args.extended, "order": len(ops)}, None, 0


def cmd_hw(args):
    if args.p == 2:
        raise UsageError("hw needs an odd prime")
    rep = hw_report(args.p)
    return rep, [{"orbit": i, "size": s} for i, s in enumerate(rep["orbit_sizes"])], 0


def cmd_sic_verify(args):
    c = load_sic(args)
    ok, dev = verify_sic(c, args.tol)
    return {"dim": c.dim, "n_vectors": len(c), "is_sic": ok, "deviation": dev, "tol": args.tol}, None, 0 if ok else 1


def cmd_sic_symmetry(args):
    c = load_sic(args)
    ok, dev = verify_sic(c)
    if not ok:
        return {"is_sic": False, "deviation": dev}, None, 1
    rep = symmetry_group(c, args.extended)
    payload = rep.to_json()
    payload["extended"] = args.extended
    payload["nonabelian"] = not rep.is_abelian() if c.dim > 2 else True
    payload["stability_order"] = len(stability_group(c.vectors[0], args.extended))
    return payload, None, 0


def cmd_sic_phases(args):
    c = load_sic(args)
    ok, dev = verify_sic(c)
    if not ok:
        return {"is_sic": False, "deviation": dev}, None, 1
    prof = phase_profile(c)
    payload = prof.to_json()
    payload["moment_deviation"] = prof.moment_deviation
    return payload, payload["phases"], 0


def cmd_dim3_classify(args):
    t, tol = parse_angle(args.t, args.pi_units)
    fp = dim3.canonicalize_t(t, tol)
    payload = {"t_input": t, "canonical_t": fp.canonical_t, "class_rep": fp.class_rep,
               "phi_min": fp.phi_min, "kind": fp.kind, "orbit_size": dim3.orbit_sic_count(fp.canonical_t)}
    return payload, None, 0


def cmd_dim3_regroup(args):
    t, _ = parse_angle(args.t, args.pi_units)
    rep = dim3.regroup_census(t)
    fp = dim3.canonicalize_t(t)
    payload = rep.to_json()
    payload.update(t_input=t, canonical_t=fp.canonical_t, class_rep=fp.class_rep,
                   phi_min=phase_profile(dim3.family_sic(t)).phi_min, orbit_size=len(rep.orbit_sics))
    payload["hidden_phi_min"] = sorted({round(phase_profile(h).phi_min, 9) for h in rep.hidden})
    return payload, None, 0


def cmd_search(args):
    cfg = SearchConfig(args.dim, restarts=args.restarts, seed=args.seed, target=args.target, max_iters=args.max_iters)
    try:
        res = search(cfg)
        status = 0
    except NoConvergence as exc:
        res, status = exc.result, 1
    payload = res.to_json()
    if args.out:
        from .weyl import sic_from_fiducial

        if res.converged:
            jsonio.save_sic(sic_from_fiducial(res.vector, tol=args.target), args.out)
    if args.dim == 3 and res.converged:
        fp = dim3.identify_fiducial(res.vector)
        payload["dim3"] = {"canonical_t": fp.canonical_t, "class_rep": fp.class_rep}
    return payload, res.trace, status


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sicforge", description=__doc__.splitlines()[0])
    ap.add_argument("--format", choices=("json", "csv"), default="json")
    # accepted after the subcommand too; SUPPRESS keeps the top-level value otherwise
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp_ = sub.add_parser(name, help=help_, parents=[fmt])
        sp_.set_defaults(fn=fn)
        return sp_

    def sic_input(sp_):
        sp_.add_argument("--file", help="SIC JSON, or a single fiducial vector JSON")
        sp_.add_argument("--t", help="use the d = 3 family SIC at this angle")
        sp_.add_argument("--pi-units", action="store_true", help="read --t as a multiple of pi")

    s = add("classes", cmd_classes, "conjugacy class census")
    s.add_argument("--p", type=prime_arg, required=True)
    s.add_argument("--group", default="sl", choices=("sl", "esl", "sl-affine", "esl-affine"))

    s = add("clifford", cmd_clifford, "synthesize an op, or summarize the group")
    s.add_argument("--p", type=prime_arg, required=True)
    s.add_argument("--F", type=int, nargs=4, metavar=("ALPHA", "BETA", "GAMMA", "DELTA"))
    s.add_argument("--chi", type=int, nargs=2, default=[0, 0])
    s.add_argument("--extended", action="store_true")
    s.add_argument("--spectra", action="store_true", help="eigenvalue multiplicities per class")

    s = add("hw", cmd_hw, "HW subgroups and their orbits")
    s.add_argument("--p", type=prime_arg, required=True)

    s = add("sic-verify", cmd_sic_verify, "check the SIC conditions")
    sic_input(s)
    s.add_argument("--tol", type=float, default=1e-9)

    s = add("sic-symmetry", cmd_sic_symmetry, "Clifford symmetry group of a SIC")
    sic_input(s)
    s.add_argument("--extended", action="store_true")

    s = add("sic-phases", cmd_sic_phases, "Bargmann phase profile (d = 3)")
    sic_input(s)

    s = add("dim3-classify", cmd_dim3_classify, "canonical t and equivalence class")
    s.add_argument("--t", required=True)
    s.add_argument("--pi-units", action="store_true")

    s = add("dim3-regroup", cmd_dim3_regroup, "regrouping census")
    s.add_argument("--t", required=True)
    s.add_argument("--pi-units", action="store_true")

    s = add("search", cmd_search, "numerical fiducial search")
    s.add_argument("--dim", type=int, required=True)
    s.add_argument("--restarts", type=int, default=10)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--target", type=float, default=1e-10)
    s.add_argument("--max-iters", type=int, default=5000)
    s.add_argument("--out", help="write the SIC generated by the result here")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if args.command == "sic-phases" and args.t is None and args.file is None:
            raise UsageError("give --file or --t")
        payload, rows, status = args.fn(args)
    except (UsageError, ValueError) as exc:
        print(f"sicforge: error: {exc}", file=sys.stderr)
        return 2
    except SicForgeError as exc:
        print(f"sicforge: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if args.format == "csv":
        out = to_csv(canonical(rows)) if rows else to_csv([canonical({k: v for k, v in payload.items()
                                                                      if not isinstance(v, (list, dict))})])
    else:
        out = json.dumps(canonical(payload), sort_keys=True, indent=2) + "\n"
    sys.stdout.write(out)
    return status


if __name__ == "__main__":
    sys.exit(main())
