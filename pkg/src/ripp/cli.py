"""Command-line front end.

Exit codes: 0 success (a missing threshold is a result, not a failure),
2 bad input or schema violation, 3 domain or solver error.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import math
import re
import sys
from importlib import resources
from pathlib import Path

import jsonschema
import numpy as np

from . import core, sim, solvers
from ._backend import kernels as _k
from .core import (
    Case,
    DiscountCase,
    Problem,
    ReversalCase,
    Specification,
    TimeFrame,
)
from .errors import InvalidProblem, RippError

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DOMAIN = 3

CURVES_RATE = 0.4
CURVES_HORIZON = 0.65
WEALTH_EFFECT_PARAMS = dict(t0=0.0, t_a=1.0, t_b=2.0, dx_a=1000.0, dx_b=2500.0, rate=0.03)
REVERSAL_PARAMS = dict(t_a=2.0, t_b=3.0, dx_a=100.0, dx_b=200.0)

_CASE_NOTES = {
    Case.A: "no discounting in this specification: the larger payment always wins",
    Case.B: "exponential discounting at the background rate",
    Case.C: "hyperbolic discounting with degree 1/H",
    Case.D: "hybrid discounting; depends on wealth and horizon",
}


class InputError(Exception):
    pass


def fmt(x: float) -> str:
    """Machine-readable number: 12 significant digits."""
    return f"{x:.12g}"


def num(x: float) -> float:
    return float(fmt(x))


def human(x: float) -> str:
    if x != 0 and abs(x) < 1e-3:
        return f"{x:.4e}"
    return f"{x:.4f}"


def _schema() -> dict:
    text = resources.files("ripp").joinpath("schema/problem.schema.json").read_text()
    return json.loads(text)


def validate_document(doc: dict, required: tuple[str, ...] = ()) -> None:
    """Validate against the problem schema plus command-specific required keys."""
    schema = _schema()
    schema["required"] = sorted(set(schema["required"]) | set(required))
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as exc:
        raise InputError(f"schema violation: {exc.message}") from None


# --------------------------------------------------------------------------
# argument plumbing


def _add_problem_flags(p: argparse.ArgumentParser, doc: bool = True) -> None:
    if doc:
        p.add_argument("document", nargs="?", help="JSON problem document; flags override its keys")
    g = p.add_argument_group("problem")
    g.add_argument("--t0", type=float)
    g.add_argument("--t-a", type=float)
    g.add_argument("--t-b", type=float)
    g.add_argument("--horizon", type=float, help="t_a - t0, alternative to --t-a")
    g.add_argument("--delay", type=float, help="t_b - t_a, alternative to --t-b")
    g.add_argument("--dx-a", type=float)
    g.add_argument("--dx-b", type=float)
    g.add_argument("--wealth0", type=float)
    _add_spec_flags(g)
    p.add_argument("--tol", type=float, help="indifference band on g_a - g_b")


def _add_spec_flags(g) -> None:
    g.add_argument("--case", choices=["A", "B", "C", "D"], help="shortcut for --dynamics and --frame")
    g.add_argument("--dynamics", choices=["additive", "multiplicative"])
    g.add_argument("--frame", choices=["fixed", "adaptive"])
    g.add_argument("--rate", type=float, help="background rate k (additive) or r (multiplicative)")


def _load_document(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read document {path}: {exc}") from None
    if not isinstance(doc, dict):
        raise InputError("document must be a JSON object")
    return doc


def _spec_from_flags(args, doc: dict) -> None:
    dyn = dict(doc.get("dynamics", {}))
    if args.case:
        spec = Specification.for_case(args.case)
        dyn["type"] = "multiplicative" if spec.multiplicative else "additive"
        doc["time_frame"] = spec.time_frame.value
    if args.dynamics:
        dyn["type"] = args.dynamics
    if args.rate is not None:
        dyn["rate"] = args.rate
    if dyn:
        dyn.setdefault("rate", 0.0)
        doc["dynamics"] = dyn
    if args.frame:
        doc["time_frame"] = args.frame


def build_document(args, placeholder_t_a: bool = False) -> dict:
    """Merge a document file with inline flags into one ProblemDocument dict.

    ``placeholder_t_a`` lets ``--delay`` stand alone for commands where only
    the delay matters; ``t_a`` is then set to 0.
    """
    doc = _load_document(getattr(args, "document", None))
    for key in ("t0", "t_a", "t_b", "dx_a", "dx_b", "wealth0"):
        val = getattr(args, key, None)
        if val is not None:
            doc[key] = val
    if args.horizon is not None:
        doc["t_a"] = doc.get("t0", 0.0) + args.horizon
    if args.delay is not None:
        if "t_a" not in doc:
            if not placeholder_t_a:
                raise InputError("--delay needs --t-a or --horizon")
            doc["t_a"] = 0.0
        doc["t_b"] = doc["t_a"] + args.delay
    _spec_from_flags(args, doc)
    if args.tol is not None:
        doc["tolerance"] = args.tol
    return doc


def spec_from_document(doc: dict) -> Specification:
    dyn = doc["dynamics"]
    dynamics = core.Additive(dyn["rate"]) if dyn["type"] == "additive" else core.Multiplicative(dyn["rate"])
    return Specification(dynamics, TimeFrame(doc["time_frame"]))


def problem_from_document(doc: dict, wealth0: float | None = None, t0: float | None = None) -> Problem:
    try:
        return Problem(
            t0=doc.get("t0", 0.0) if t0 is None else t0,
            t_a=doc["t_a"],
            t_b=doc["t_b"],
            dx_a=doc["dx_a"],
            dx_b=doc["dx_b"],
            wealth0=doc.get("wealth0", 0.0) if wealth0 is None else wealth0,
        )
    except InvalidProblem as exc:
        raise InputError(str(exc)) from None


def root_config(doc: dict) -> solvers.RootConfig:
    return solvers.RootConfig(**doc.get("solver", {}))


def _open_out(path: str | None):
    if path is None:
        return contextlib.nullcontext(sys.stdout)
    return open(path, "w", encoding="utf-8", newline="")


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=False) + "\n")


# --------------------------------------------------------------------------
# evaluate


def cmd_evaluate(args) -> int:
    doc = build_document(args)
    validate_document(doc, required=("wealth0",))
    spec = spec_from_document(doc)
    problem = problem_from_document(doc)
    tol = doc.get("tolerance", core.DEFAULT_TOLERANCE)
    decision = core.prefer(spec, problem, tol)
    case = spec.case
    report = {
        "case": case.value,
        "time_frame": spec.time_frame.value,
        "dynamics": doc["dynamics"]["type"],
        "g_a": {"value": num(decision.g_a.value), "units": decision.g_a.units.value},
        "g_b": {"value": num(decision.g_b.value), "units": decision.g_b.units.value},
        "g_a_minus_g_b": num(decision.g_a.value - decision.g_b.value),
        "preference": decision.preference.value,
        "tolerance": tol,
        "note": _CASE_NOTES[case],
    }
    if args.json:
        _emit_json(report)
    else:
        u = decision.g_a.units.value
        print(f"case {case.value} ({spec.time_frame.value} time frame, {doc['dynamics']['type']} dynamics)")
        print(f"g_a = {human(decision.g_a.value)} {u}")
        print(f"g_b = {human(decision.g_b.value)} {u}")
        print(f"preference: {decision.preference.value}")
        print(f"note: {report['note']}")
    return EXIT_OK


# --------------------------------------------------------------------------
# curve

_CURVE_CASES = {
    "B": DiscountCase.B,
    "C": DiscountCase.C,
    "hybrid": DiscountCase.D_HYBRID_APPROX,
    "DHybridApprox": DiscountCase.D_HYBRID_APPROX,
    "numeric": DiscountCase.D_NUMERIC,
    "DNumeric": DiscountCase.D_NUMERIC,
}


def delay_grid(d_min: float, d_max: float, step: float) -> np.ndarray:
    if not step > 0:
        raise InputError("--step must be positive")
    if not 0 <= d_min <= d_max:
        raise InputError("need 0 <= --d-min <= --d-max")
    n = int(math.floor((d_max - d_min) / step + 1e-9)) + 1
    return d_min + step * np.arange(n)


def curve_rows(delays) -> list[list[str]]:
    rows = []
    for D in delays:
        D = float(D)
        hyb = core.discount_closed(DiscountCase.D_HYBRID_APPROX, D, CURVES_HORIZON, CURVES_RATE).value
        hyp = core.discount_closed(DiscountCase.C, D, CURVES_HORIZON).value
        ex = core.discount_closed(DiscountCase.B, D, None, CURVES_RATE).value
        rows.append([fmt(D), fmt(hyb), fmt(hyp), fmt(ex)])
    return rows


def cmd_curve(args) -> int:
    delays = delay_grid(args.d_min, args.d_max, args.step)
    status = EXIT_OK
    with _open_out(args.out) as fh:
        w = csv.writer(fh, lineterminator="\n")
        if args.all_forms:
            w.writerow(["D", "hybrid", "hyperbolic", "exponential"])
            w.writerows(curve_rows(delays))
            return EXIT_OK
        if args.case is None:
            raise InputError("--case is required unless --all-forms is given")
        case = _CURVE_CASES[args.case]
        numeric = case is DiscountCase.D_NUMERIC
        if case is not DiscountCase.B and args.horizon is None:
            raise InputError("--horizon is required for this case")
        if numeric and (args.wealth0 is None or args.dx_b is None):
            raise InputError("numeric curves need --wealth0 and --dx-b")
        w.writerow(["D", "delta", "dx_a_star", "error"] if numeric else ["D", "delta"])
        cfg = solvers.RootConfig()
        for D in delays:
            D = float(D)
            if numeric:
                try:
                    df = solvers.indifference_ratio_numeric(args.horizon, D, args.wealth0, args.dx_b, args.rate, cfg)
                    w.writerow([fmt(D), fmt(df.value), fmt(df.value * args.dx_b), ""])
                except (RippError, ValueError) as exc:
                    w.writerow([fmt(D), "", "", str(exc)])
                    status = EXIT_DOMAIN
            else:
                df = core.discount_closed(case, D, args.horizon, args.rate)
                w.writerow([fmt(D), fmt(df.value)])
    return status


# --------------------------------------------------------------------------
# reversal


def sign_sweep(case: Case, horizons, delay, dx_a, dx_b, wealth0, rate) -> list[dict]:
    code = core.case_code(case)
    out = []
    for H in horizons:
        g = _k.gap(code, float(H), delay, dx_a, dx_b, wealth0 if wealth0 > 0 else 1.0, rate)
        out.append({"H": num(H), "g_a_minus_g_b": num(g), "sign": int(np.sign(g))})
    return out


def _threshold_json(th: core.Threshold, t_a: float | None) -> dict:
    if not th.exists:
        return {"exists": False, "reason": th.reason}
    d = {"exists": True, "H_pr": num(th.value)}
    if t_a is not None:
        d["t0_pr"] = num(t_a - th.value)
    return d


def cmd_reversal(args) -> int:
    has_t_a = args.t_a is not None or args.horizon is not None or args.document is not None
    doc = build_document(args, placeholder_t_a=True)
    if "dynamics" not in doc or "time_frame" not in doc:
        raise InputError("specify --case or --dynamics/--frame")
    if "t_a" not in doc or "t_b" not in doc:
        raise InputError("specify --delay (or t_a and t_b)")
    validate_document(doc)
    spec = spec_from_document(doc)
    D = doc["t_b"] - doc["t_a"]
    dx_a, dx_b = doc["dx_a"], doc["dx_b"]
    if not (D > 0 and dx_a > 0 and dx_b > 0):
        raise InputError("need delay and both payments positive")
    t_a = doc["t_a"] if has_t_a else None
    rate = spec.dynamics.rate
    wealth0 = doc.get("wealth0", 0.0)
    case = spec.case
    report: dict = {"case": case.value, "delay": num(D)}

    if case in (Case.A, Case.B):
        report["closed"] = {"exists": False, "reason": "no preference reversal: the choice does not depend on the horizon"}
    elif case is Case.C:
        th = core.reversal_horizon_closed(ReversalCase.C, D, dx_a, dx_b)
        report["closed"] = _threshold_json(th, t_a)
        if t_a is not None and th.exists:
            p = problem_from_document(doc, t0=doc["t_a"] - 1.0)
            report["closed"]["t0_pr_formula"] = num(core.critical_decision_time(p).value)
    else:
        if args.mode in ("closed", "both"):
            th = core.reversal_horizon_closed(ReversalCase.D_SMALL_PAYMENT, D, dx_a, dx_b, rate)
            report["closed"] = _threshold_json(th, t_a)
            report["closed"]["approximation"] = "small payments relative to wealth"
        if args.mode in ("numeric", "both"):
            if not wealth0 > 0:
                raise InputError("numeric case-D reversal needs --wealth0 > 0")
            thn = solvers.reversal_horizon_numeric(D, dx_a, dx_b, wealth0, rate, root_config(doc))
            report["numeric"] = _threshold_json(thn, t_a)
        if args.mode == "both" and report["closed"]["exists"] and report["numeric"]["exists"]:
            c, n = report["closed"]["H_pr"], report["numeric"]["H_pr"]
            report["relative_difference"] = num(abs(c - n) / abs(n))

    sweep = None
    if args.sweep:
        centre = None
        for key in ("numeric", "closed"):
            if report.get(key, {}).get("exists"):
                centre = report[key]["H_pr"]
                break
        centre = centre or D
        hs = centre * np.geomspace(1e-2, 1e2, args.points)
        sweep = sign_sweep(case, hs, D, dx_a, dx_b, wealth0, rate)

    if args.json:
        if sweep is not None:
            report["sweep"] = sweep
        _emit_json(report)
        return EXIT_OK
    print(f"case {case.value}, delay {human(D)}")
    for key in ("closed", "numeric"):
        if key in report:
            r = report[key]
            if r["exists"]:
                line = f"{key}: H_pr = {human(r['H_pr'])}"
                if "t0_pr" in r:
                    line += f", t0_pr = {human(r['t0_pr'])}"
                print(line)
            else:
                print(f"{key}: no threshold ({r['reason']})")
    if "relative_difference" in report:
        print(f"relative difference closed vs numeric: {report['relative_difference']:.3e}")
    if sweep is not None:
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["H", "g_a_minus_g_b", "sign"])
        for row in sweep:
            w.writerow([fmt(row["H"]), fmt(row["g_a_minus_g_b"]), row["sign"]])
    return EXIT_OK


# --------------------------------------------------------------------------
# wealth threshold


def growth_gap_vs_wealth(problem: Problem, rate: float, wealths) -> list[tuple[float, float]]:
    spec = Specification.for_case(Case.D, rate)
    out = []
    for x0 in wealths:
        p = Problem(problem.t0, problem.t_a, problem.t_b, problem.dx_a, problem.dx_b, float(x0))
        d = core.prefer(spec, p)
        out.append((float(x0), d.g_a.value - d.g_b.value))
    return out


def cmd_wealth_threshold(args) -> int:
    doc = build_document(args)
    if "dynamics" not in doc:
        doc["dynamics"] = {"type": "multiplicative", "rate": 0.0}
        doc.setdefault("time_frame", "adaptive")
    validate_document(doc)
    spec = spec_from_document(doc)
    if spec.case is not Case.D:
        raise InputError("the wealth effect exists only in case D (adaptive frame, multiplicative dynamics)")
    problem = problem_from_document(doc, wealth0=0.0)
    rate = spec.dynamics.rate

    if args.sweep:
        if args.x_values:
            xs = [float(x) for x in args.x_values]
        else:
            if not 0 < args.x_min < args.x_max:
                raise InputError("need 0 < --x-min < --x-max")
            xs = np.geomspace(args.x_min, args.x_max, args.points)
        with _open_out(args.out) as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["x0", "g_a_minus_g_b"])
            for x0, g in growth_gap_vs_wealth(problem, rate, xs):
                w.writerow([fmt(x0), fmt(g)])
        return EXIT_OK

    th = solvers.wealth_threshold(problem, rate, root_config(doc))
    report = {"case": "D", "exists": th.exists}
    if th.exists:
        report["x_pr"] = num(th.value)
    else:
        report["reason"] = th.reason
    if args.json:
        _emit_json(report)
    elif th.exists:
        print(f"wealth threshold x_pr = {human(th.value)}")
        print("below it the earlier payment is preferred, above it the later one")
    else:
        print(f"no wealth threshold ({th.reason})")
    return EXIT_OK


# --------------------------------------------------------------------------
# simulate


def _slug(label: str) -> str:
    return re.sub(r"[^A-Za-z0-9.]+", "_", label)


def cmd_simulate(args) -> int:
    doc: dict = {}
    _spec_from_flags(args, doc)
    if "dynamics" not in doc or "time_frame" not in doc:
        raise InputError("specify --case or --dynamics and --frame")
    spec = spec_from_document(doc)
    try:
        stream = sim.RippStream(
            seed=args.seed,
            count=args.count,
            h_range=tuple(args.h_range),
            d_range=tuple(args.d_range),
            dx_a_range=tuple(args.dx_a_range),
            premium_range=tuple(args.premium_range),
            h_floor=args.h_floor,
            payment_scale=args.payment_scale,
        )
        if stream.relative and not spec.multiplicative:
            raise ValueError("--payment-scale wealth needs multiplicative dynamics")
        if args.compare:
            exp_rate = args.exp_rate
            if exp_rate is None:
                exp_rate = spec.dynamics.rate if spec.multiplicative else sim.DEFAULT_EXP_RATE
            policies = [sim.GROWTH_OPTIMAL, *sim.baseline_policies(exp_rate)]
        else:
            policies = [sim.Policy.parse(args.policy)]
    except ValueError as exc:
        raise InputError(str(exc)) from None

    rows = []
    for pol in policies:
        traj = sim.simulate(spec, stream, pol, args.wealth0, args.tol)
        g = sim.realized_growth(traj, spec.dynamics)
        rows.append({"policy": pol.label, "realized_growth": num(g.value), "units": g.units.value,
                     "final_time": num(traj.final_time), "decisions": int(traj.choices.size),
                     "share_earlier": num(float(np.mean(traj.choices == 0)))})
        if args.out:
            path = Path(args.out)
            if len(policies) > 1:
                path = path.with_name(f"{path.stem}_{_slug(pol.label)}{path.suffix}")
            with open(path, "w", encoding="utf-8", newline="") as fh:
                traj.to_csv(fh)

    if args.json:
        _emit_json({"case": spec.case.value, "seed": args.seed, "count": args.count, "policies": rows})
    else:
        print(f"case {spec.case.value}, seed {args.seed}, {args.count} decisions")
        width = max(len(r["policy"]) for r in rows)
        for r in rows:
            print(f"{r['policy']:<{width}}  {human(r['realized_growth'])} {r['units']}")
    return EXIT_OK


# --------------------------------------------------------------------------
# figures


def write_figures(out_dir: Path) -> list[Path]:
    """Write the reference data sets (reversal, wealth effect, growth gap, discount curves) as CSV files in ``out_dir``."""
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []

    def dump(name, header, rows):
        path = out_dir / name
        with open(path, "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            w.writerows(rows)
        written.append(path)

    # case C preference reversal as the decision time approaches t_a
    p3 = REVERSAL_PARAMS
    spec_c = Specification.for_case(Case.C, 0.0)
    rows = []
    for i in range(40):
        t0 = 0.05 * i
        d = core.prefer(spec_c, Problem(t0, p3["t_a"], p3["t_b"], p3["dx_a"], p3["dx_b"]))
        rows.append([fmt(t0), fmt(p3["t_a"] - t0), fmt(d.g_a.value), fmt(d.g_b.value), d.preference.value])
    dump("case_c_reversal.csv", ["t0", "H", "g_a", "g_b", "preference"], rows)

    # case D wealth effect, three wealth levels
    p = WEALTH_EFFECT_PARAMS
    base = Problem(p["t0"], p["t_a"], p["t_b"], p["dx_a"], p["dx_b"])
    x_pr = solvers.wealth_threshold(base, p["rate"]).value
    spec_d = Specification.for_case(Case.D, p["rate"])
    rows = []
    for x0 in (500.0, x_pr, 5500.0):
        d = core.prefer(spec_d, Problem(p["t0"], p["t_a"], p["t_b"], p["dx_a"], p["dx_b"], x0), 1e-9)
        rows.append([fmt(x0), fmt(d.g_a.value), fmt(d.g_b.value), d.preference.value])
    dump("wealth_effect.csv", ["wealth0", "g_a", "g_b", "preference"], rows)

    xs = np.geomspace(100.0, 10000.0, 101)
    dump("growth_gap_vs_wealth.csv", ["x0", "g_a_minus_g_b"],
         [[fmt(x), fmt(g)] for x, g in growth_gap_vs_wealth(base, p["rate"], xs)])

    dump("discount_curves.csv", ["D", "hybrid", "hyperbolic", "exponential"],
         curve_rows(delay_grid(0.0, 5.0, 0.05)))
    return written


def cmd_figures(args) -> int:
    for path in write_figures(Path(args.out_dir)):
        print(path)
    return EXIT_OK


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ripp", description="Growth-rate-optimal choice between an earlier and a later payment.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("evaluate", help="growth rates and preference for one problem")
    _add_problem_flags(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("curve", help="discount factor as a function of delay (CSV)")
    p.add_argument("--case", choices=sorted(_CURVE_CASES))
    p.add_argument("--d-min", type=float, default=0.0)
    p.add_argument("--d-max", type=float, default=5.0)
    p.add_argument("--step", type=float, default=0.05)
    p.add_argument("--horizon", type=float)
    p.add_argument("--rate", type=float, default=0.0)
    p.add_argument("--wealth0", type=float)
    p.add_argument("--dx-b", type=float)
    p.add_argument("--all-forms", action="store_true", help=f"hybrid, hyperbolic and exponential curves at r={CURVES_RATE}, H={CURVES_HORIZON}")
    p.add_argument("--out")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("reversal", help="horizon at which preference reverses")
    _add_problem_flags(p)
    p.add_argument("--mode", choices=["closed", "numeric", "both"], default="both")
    p.add_argument("--sweep", action="store_true", help="sign of g_a - g_b over a horizon grid")
    p.add_argument("--points", type=int, default=41)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_reversal)

    p = sub.add_parser("wealth-threshold", help="case-D wealth at which preference reverses")
    _add_problem_flags(p)
    p.add_argument("--sweep", action="store_true", help="emit x0, g_a - g_b as CSV")
    p.add_argument("--x-min", type=float, default=100.0)
    p.add_argument("--x-max", type=float, default=10000.0)
    p.add_argument("--points", type=int, default=101)
    p.add_argument("--x-values", type=float, nargs="+")
    p.add_argument("--out")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_wealth_threshold)

    p = sub.add_parser("simulate", help="repeated-choice simulation")
    g = p.add_argument_group("specification")
    _add_spec_flags(g)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--count", type=int, default=10000)
    p.add_argument("--wealth0", type=float, default=1000.0)
    p.add_argument("--policy", default="growth-optimal",
                   help="growth-optimal, always-earlier, always-later, larger-payment or exponential:RATE")
    p.add_argument("--compare", action="store_true", help="run growth-optimal and all baselines on the same stream")
    p.add_argument("--exp-rate", type=float, help="rate of the exponential baseline in --compare")
    p.add_argument("--h-range", type=float, nargs=2, default=[0.5, 2.0])
    p.add_argument("--d-range", type=float, nargs=2, default=[0.5, 2.0])
    p.add_argument("--dx-a-range", type=float, nargs=2, default=[50.0, 150.0])
    p.add_argument("--premium-range", type=float, nargs=2, default=[0.1, 3.0])
    p.add_argument("--h-floor", type=float, default=0.01)
    p.add_argument("--payment-scale", choices=["absolute", "wealth"], default="absolute")
    p.add_argument("--tol", type=float, default=core.DEFAULT_TOLERANCE)
    p.add_argument("--out", help="trajectory CSV (suffixed per policy with --compare)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("figures", help="write the figure data CSVs")
    p.add_argument("--out-dir", default="figures")
    p.set_defaults(func=cmd_figures)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (RippError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
