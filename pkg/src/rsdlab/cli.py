"""Command-line front end.

Every subcommand writes one JSON report (schema ``rsd-report/1``) and exits
0 when every verdict passed, 1 when any failed, 2 on a usage error.
"""
import argparse
import json
import math
import os
import sys
from datetime import datetime, timezone
from importlib import resources
from pathlib import Path

import numpy as np

from . import cf_decompose as cfd
from . import montecarlo as mc
from . import pgf_decompose as pgd
from . import series as ser
from .errors import RSDError
from .kernels import BACKEND
from .poincare import LTFamily, index_pgf, poincare_residual
from .transforms import EvalGrid, make_family, raw_curve
from .validity import bochner_test

SCHEMA = "rsd-report/1"
DEFAULT_SEED = 20240601
SWEEP = tuple(round(0.1 * i, 1) for i in range(1, 10))

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class CLIUsageError(Exception):
    pass


def _floats(text):
    try:
        vals = [float(x) for x in str(text).split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated decimals, got {text!r}") from None
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


def _env_seed():
    raw = os.environ.get("RSDLAB_SEED")
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise CLIUsageError(f"RSDLAB_SEED must be an integer, got {raw!r}") from None


def _verdict(name, passed, value=None, threshold=None, **detail):
    out = {"name": name, "passed": bool(passed)}
    if value is not None:
        out["value"] = float(value)
    if threshold is not None:
        out["threshold"] = float(threshold)
    if detail:
        out["detail"] = detail
    return out


# family / grid helpers --------------------------------------------------

def _family(args):
    name = args.family
    if name == "laplace":
        return make_family("laplace", b=args.b)
    if name == "linnik":
        return make_family("linnik", alpha=args.alpha, lam=args.lam)
    if name == "symgamma":
        return make_family("symgamma", k=args.family_k, b=args.b)
    raise CLIUsageError(f"unknown family {name!r}")


def _phi(args):
    if args.phi_alpha is not None:
        return LTFamily(args.phi_alpha)
    return LTFamily.from_k(args.phi_k)


def _grid(args, f=None):
    scale = f.scale if f is not None else 1.0
    extent = args.grid_max if args.grid_max is not None else 10.0 * scale
    return EvalGrid.symmetric(extent, args.grid_points)


def _pgf(args):
    name = args.pgf
    if name == "geometric":
        return [pgd.geometric(q) for q in args.q]
    if name == "geometric-mean":
        return [pgd.geometric_mean(lam) for lam in args.lam_list]
    if name == "poisson":
        return [pgd.poisson(lam) for lam in args.lam_list]
    raise CLIUsageError(f"unknown pgf {name!r}")


def _pairs(args):
    cs = list(SWEEP) if args.sweep else args.c
    ths = list(SWEEP) if args.sweep else args.theta
    return cs, ths


# subcommands ------------------------------------------------------------

def cmd_decompose(args):
    f, phi = _family(args), _phi(args)
    grid = _grid(args, f)
    cs, ths = _pairs(args)
    reports, verdicts = [], []
    for c in cs:
        for th in ths:
            rep = cfd.rsd_composite(f, phi, c, th, grid)
            reports.append(rep.to_dict())
            for curve, checks in rep.validity.items():
                for test, r in checks.items():
                    verdicts.append(_verdict(f"{curve}.{test}[c={c:g},theta={th:g}]", r.passed))
            if args.csv:
                path = Path(args.csv)
                if len(cs) * len(ths) > 1:
                    path = path.with_name(f"{path.stem}_c{c:g}_theta{th:g}{path.suffix}")
                with open(path, "w") as fh:
                    rep.to_csv(fh)
    return verdicts, {"reports": reports}


def _verify_cf_components(args):
    if args.raw_curve:
        f = raw_curve(args.raw_curve)
        grid = _grid(args)
        r = bochner_test(f, grid)
        return [_verdict(f"bochner[{args.raw_curve}]", r.passed, r.evidence["min_eigenvalue"],
                         r.evidence["threshold"])], {"raw_curve": args.raw_curve, "bochner": r.to_dict()}
    f, phi = _family(args), _phi(args)
    grid = _grid(args, f)
    cs, ths = _pairs(args)
    verdicts, results = [], []
    for c in cs:
        for th in ths:
            rep = cfd.rsd_composite(f, phi, c, th, grid)
            for curve in cfd.CURVE_NAMES:
                b = rep.validity[curve]["bochner"]
                z = rep.validity[curve]["no_real_zero"]
                verdicts.append(_verdict(f"{curve}[c={c:g},theta={th:g}]", b.passed and z.passed,
                                         b.evidence["min_eigenvalue"], b.evidence["threshold"]))
            results.append(rep.to_dict())
    return verdicts, {"reports": results}


def _verify_cf_closed_form(args):
    f, phi = _family(args), _phi(args)
    grid = _grid(args, f)
    t = grid.points
    cs, ths = _pairs(args)
    tol = 1e-12
    verdicts = []
    for c in cs:
        generic = cfd.sd_component(f, c, grid)
        closed = f(t) / f(c * t)
        if f.family == "laplace":
            closed = (1 + (c * f.b * t) ** 2) / (1 + (f.b * t) ** 2)
        gap = float(np.max(np.abs(generic - closed)))
        verdicts.append(_verdict(f"f_c[c={c:g}]", gap <= tol, gap, tol))
    for th in ths:
        gap = float(np.max(np.abs(cfd.n_component(f, phi, th, grid)
                                  - cfd.n_component(f, phi, th, grid, method="closed"))))
        verdicts.append(_verdict(f"f_theta[theta={th:g}]", gap <= tol, gap, tol))
    return verdicts, {"family": f.describe(), "phi": phi.describe()}


def _verify_cf_inversion(args):
    f, phi = _family(args), _phi(args)
    grid = _grid(args, f)
    _, ths = _pairs(args)
    tol = 1e-10
    verdicts = []
    for th in ths:
        r = cfd.nid_inversion_residual(f, phi, th, grid)
        verdicts.append(_verdict(f"inversion[theta={th:g}]", r < tol, r, tol))
    return verdicts, {"family": f.describe(), "phi": phi.describe()}


def _verify_cf_degeneration(args):
    f, phi = _family(args), _phi(args)
    grid = _grid(args, f)
    cs, ths = _pairs(args)
    verdicts = []
    for th in ths:
        rep = cfd.rsd_composite(f, phi, 1.0, th, grid, validate=False)
        same = np.array_equal(rep.curves["f_c_theta"], cfd.n_component(f, phi, th, grid))
        verdicts.append(_verdict(f"c=1[theta={th:g}]", same))
    for c in cs:
        rep = cfd.rsd_composite(f, phi, c, 0.0, grid, validate=False)
        same = np.array_equal(rep.curves["f_c_theta"], cfd.sd_component(f, c, grid))
        verdicts.append(_verdict(f"theta=0[c={c:g}]", same))
    return verdicts, {"family": f.describe(), "phi": phi.describe()}


def _verify_cf_nstable(args):
    phi = _phi(args)
    grid = EvalGrid.symmetric(args.grid_max or 10.0, args.grid_points)
    cs, _ = _pairs(args)
    verdicts, results = [], []
    for c in cs:
        rep = cfd.nstable_factorization(phi, args.alpha, args.lam, c, grid)
        verdicts.append(_verdict(f"factorization[c={c:g}]", rep.factorization_ok, rep.residual, 1e-14))
        verdicts.append(_verdict(f"phi_c completely monotone[c={c:g}]", rep.cm.passed))
        results.append(rep.to_dict())
    return verdicts, {"reports": results}


VERIFY_CF = {
    "components": _verify_cf_components,
    "closed-form": _verify_cf_closed_form,
    "inversion": _verify_cf_inversion,
    "degeneration": _verify_cf_degeneration,
    "nstable": _verify_cf_nstable,
}


def cmd_verify_cf(args):
    return VERIFY_CF[args.check](args)


def _dump_coeffs(args, label, series):
    if not args.coeffs_csv:
        return
    path = Path(args.coeffs_csv)
    path = path.with_name(f"{path.stem}_{label}{path.suffix}")
    with open(path, "w") as fh:
        pgd.write_coeffs_csv(series, fh)


def _label(s):
    return "".join(ch if ch.isalnum() or ch in "._-" else "_" for ch in s)


def cmd_verify_pgf(args):
    check = args.check
    verdicts, results = [], []
    order, tol = args.order, args.tol
    if check == "poincare":
        ks = [args.phi_k] if args.phi_k_given else [1, 2, 3]
        _, ths = _pairs(args)
        grid = EvalGrid.nonnegative(50.0, 501)
        for k in ks:
            phi = LTFamily.from_k(k)
            for th in ths:
                r = poincare_residual(phi, th, grid)
                verdicts.append(_verdict(f"poincare[k={k},theta={th:g}]", r < 1e-12, r, 1e-12))
                idx = index_pgf(phi, th)
                a = idx.series(order)
                nn = ser.coeff_nonneg(a, tol)
                verdicts.append(_verdict(f"index-pgf nonneg[k={k},theta={th:g}]", nn.passed,
                                         nn.evidence["min"], -tol))
                _dump_coeffs(args, _label(idx.describe()), a)
        return verdicts, {"grid": {"tmax": 50.0, "points": 501}}
    if check == "thinning":
        rng = np.random.default_rng(args.seed)
        pairs = rng.uniform(0.05, 1.0, size=(10, 2))
        fams = _pgf(args)
        worst = 0.0
        for P in fams:
            for c1, c2 in pairs:
                a = pgd.thin(pgd.thin(P, c1), c2).series(order)
                b = pgd.thin(P, c1 * c2).series(order)
                gap = float(np.max(np.abs(a.coeffs - b.coeffs)))
                worst = max(worst, gap)
                verdicts.append(_verdict(f"semigroup[{P.name},c1={c1:.4f},c2={c2:.4f}]", gap <= 1e-13, gap,
                                         1e-13))
        return verdicts, {"pairs": pairs.tolist(), "worst_gap": worst}
    phi = _phi(args)
    cs, ths = _pairs(args)
    for P in _pgf(args):
        if check == "dsd":
            for c in cs:
                cand = pgd.dsd_component(P, c, order, tol)
                verdicts.append(_verdict(f"dsd[{P.name},c={c:g}]", cand.valid, cand.verdict.evidence["min"], -tol))
                results.append(cand.to_dict())
                _dump_coeffs(args, _label(cand.pgf.name), cand.series)
        elif check == "dnid":
            s = np.linspace(0.0, 1.0, 201)
            for th in ths:
                cand = pgd.dnid_component(P, phi, th, order, tol)
                verdicts.append(_verdict(f"dnid[{P.name},theta={th:g}]", cand.valid,
                                         cand.verdict.evidence["min"], -tol))
                if P.name.startswith("geometric-mean") and phi.k == 1:
                    lam = 1.0 / P(0.0) - 1.0
                    gap = float(np.max(np.abs(cand(s) - 1.0 / (1.0 + th * lam * (1.0 - s)))))
                    verdicts.append(_verdict(f"dnid closed form[{P.name},theta={th:g}]", gap <= 1e-12, gap, 1e-12))
                results.append(cand.to_dict())
                _dump_coeffs(args, _label(cand.pgf.name), cand.series)
        elif check == "dphi":
            for th in ths:
                cand = pgd.dphi_component(P, phi, th, order, tol)
                verdicts.append(_verdict(f"dphi[{P.name},theta={th:g}]", cand.valid,
                                         cand.verdict.evidence["mass_at_0"], -tol))
                results.append(cand.to_dict())
                _dump_coeffs(args, _label(cand.pgf.name), cand.series)
        elif check in ("dnrsd", "dphirsd"):
            for c in cs:
                for th in ths:
                    if check == "dnrsd":
                        rep = pgd.dnrsd_composite(P, phi, c, th, order, tol)
                    else:
                        rep = pgd.dphirsd_composite(P, phi, c, th, a=args.a, order=order, tol=tol)
                    verdicts.append(_verdict(f"{check}[{P.name},c={c:g},theta={th:g}]", rep.passed))
                    verdicts.append(_verdict(f"product[{P.name},c={c:g},theta={th:g}]",
                                             rep.product_gap <= 1e-9, rep.product_gap, 1e-9))
                    results.append(rep.to_dict())
                    _dump_coeffs(args, _label(rep.composite.pgf.name), rep.composite.series)
        else:
            raise CLIUsageError(f"unknown check {check!r}")
    return verdicts, {"results": results}


def cmd_simulate(args):
    seed = args.seed
    n = args.n
    verdicts, results = [], []
    check = args.check
    if check == "compound-geometric":
        runs = [mc.compound_geometric_check(th, n, seed, alpha=args.alpha_level) for th in args.theta]
    elif check == "compound-harris":
        runs = [mc.compound_harris_check(th, n, seed, k=args.k, alpha=args.alpha_level) for th in args.theta]
    elif check == "sd":
        runs = [mc.sd_identity_check(c, n, seed, alpha=args.alpha_level) for c in args.c]
    elif check == "convolution":
        f, phi = make_family("laplace", b=args.b), LTFamily.from_k(1)
        runs = []
        for c in args.c:
            for th in args.theta:
                rep = cfd.rsd_composite(f, phi, c, th, validate=False)
                runs.append(mc.convolution_identity_test(rep, n, seed, alpha=args.alpha_level))
    elif check == "ecf":
        fam = args.family
        params = {"laplace": {"b": args.b}, "linnik": {"alpha": args.alpha, "lam": args.lam},
                  "symgamma": {"k": args.family_k, "b": args.b}}[fam]
        batch = mc.sample(fam, params, n, seed)
        f = make_family(fam, **params)
        runs = [mc.ecf_gap(batch, f, _grid(args, f))]
        if args.dump_samples:
            with open(args.dump_samples, "w") as fh:
                batch.to_csv(fh)
    else:
        raise CLIUsageError(f"unknown check {check!r}")
    for r in runs:
        label = ",".join(f"{k}={v:g}" for k, v in r.detail.items() if isinstance(v, (int, float)) and k not in
                         ("alpha", "n_a", "n_b"))
        verdicts.append(_verdict(f"{check}[{label}]", r.passed, r.statistic, r.threshold))
        results.append(r.to_dict())
    return verdicts, {"results": results}


def cmd_limits(args):
    phi = _phi(args)
    lam = args.lam_list[0]
    s = np.linspace(0.0, 1.0, args.s_points)
    rep = pgd.dphi_id_limit(pgd.bernoulli_family(lam), phi, grid=s)
    verdicts = [_verdict("converged", rep.passed, diverged_at=rep.diverged_at)]
    poisson = np.exp(-lam * (1.0 - s))
    gap = float(np.max(np.abs(rep.R - poisson)))
    verdicts.append(_verdict("R matches Poisson", gap < 1e-10, gap, 1e-10))
    res = pgd.dnid_representation_check(rep.P_fn, phi, rep.R_fn, s)
    verdicts.append(_verdict("representation residual", res < 1e-10, res, 1e-10))
    return verdicts, {"limit": rep.to_dict(), "lam": lam}


COMMANDS = {
    "decompose": cmd_decompose,
    "verify-cf": cmd_verify_cf,
    "verify-pgf": cmd_verify_pgf,
    "simulate": cmd_simulate,
    "limits": cmd_limits,
}


# parser -----------------------------------------------------------------

def _add_common(p):
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.add_argument("--deterministic", action="store_true", help="omit timestamps from the report")
    p.add_argument("--grid-points", type=int, default=129)
    p.add_argument("--grid-max", type=float, default=None)
    p.add_argument("--seed", type=int, default=None, help="default: $RSDLAB_SEED or %d" % DEFAULT_SEED)
    p.add_argument("--fresh-seed", action="store_true", help="draw a new seed from OS entropy and record it")


def _add_family(p):
    p.add_argument("--family", choices=["laplace", "linnik", "symgamma"], default="laplace")
    p.add_argument("--b", type=float, default=1.0, help="scale of laplace/symgamma")
    p.add_argument("--alpha", type=float, default=1.0, help="stable exponent (linnik, nstable)")
    p.add_argument("--lam", type=float, default=1.0)
    p.add_argument("--family-k", type=float, default=2.0, help="symgamma k in (1+t^2)^(-1/k)")


def _add_phi(p):
    p.add_argument("--phi-k", type=int, default=None, help="phi(s)=(1+s)^(-1/k)")
    p.add_argument("--phi-alpha", type=float, default=None, help="phi(s)=(1+s)^(-alpha), any alpha>0")


def _add_ctheta(p, c="0.5", theta="0.5"):
    p.add_argument("--c", type=_floats, default=_floats(c), help="comma-separated list")
    p.add_argument("--theta", type=_floats, default=_floats(theta), help="comma-separated list")
    p.add_argument("--sweep", action="store_true", help="c and theta over 0.1..0.9")


def build_parser():
    ap = argparse.ArgumentParser(prog="rsdlab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="component curves f, f_c, f_theta, f_c_theta")
    _add_common(p)
    _add_family(p)
    _add_phi(p)
    _add_ctheta(p)
    p.add_argument("--csv", help="write curves as CSV (t, re, im)")

    p = sub.add_parser("verify-cf", help="validity of the continuous components")
    _add_common(p)
    _add_family(p)
    _add_phi(p)
    _add_ctheta(p)
    p.add_argument("--check", choices=sorted(VERIFY_CF), default="components")
    p.add_argument("--raw-curve", default=None, help="Bochner test of a named raw curve instead")

    p = sub.add_parser("verify-pgf", help="discrete components and their coefficients")
    _add_common(p)
    _add_phi(p)
    _add_ctheta(p)
    p.add_argument("--check", choices=["dsd", "dnid", "dphi", "dnrsd", "dphirsd", "thinning", "poincare"],
                   required=True)
    p.add_argument("--pgf", choices=["geometric", "geometric-mean", "poisson"], default="geometric-mean")
    p.add_argument("--q", type=_floats, default=_floats("0.5"))
    p.add_argument("--lam", dest="lam_list", type=_floats, default=_floats("2"))
    p.add_argument("--order", type=int, default=ser.VALIDITY_ORDER)
    p.add_argument("--tol", type=float, default=ser.NONNEG_TOL)
    p.add_argument("--a", type=float, default=pgd.DEFAULT_A, help="lower end of the c-range for dphirsd")
    p.add_argument("--coeffs-csv", default=None, help="dump coefficients (index, coefficient)")

    p = sub.add_parser("simulate", help="Monte Carlo identity checks")
    _add_common(p)
    _add_family(p)
    _add_ctheta(p)
    p.add_argument("--check", choices=["compound-geometric", "compound-harris", "sd", "convolution", "ecf"],
                   required=True)
    p.add_argument("--n", type=int, default=200_000)
    p.add_argument("--k", type=int, default=2, help="Harris k")
    p.add_argument("--alpha-level", type=float, default=mc.KS_ALPHA, help="KS significance level")
    p.add_argument("--dump-samples", default=None, help="write the sample batch, one value per line")

    p = sub.add_parser("limits", help="phi-ID limit of the Bernoulli family")
    _add_common(p)
    _add_phi(p)
    p.add_argument("--lam", dest="lam_list", type=_floats, default=_floats("2"))
    p.add_argument("--s-points", type=int, default=101)

    p = sub.add_parser("run", help="execute a JSON RunConfig")
    p.add_argument("config")
    p.add_argument("--out", default=None)

    p = sub.add_parser("scenarios", help="run the bundled scenario suite")
    p.add_argument("--dir", default=None, help="directory of scenario JSON files")
    p.add_argument("--out-dir", default=None, help="keep each scenario's report here")
    return ap


def _normalize(args):
    if getattr(args, "phi_k", None) is None and hasattr(args, "phi_k"):
        args.phi_k_given = False
        args.phi_k = 1
    elif hasattr(args, "phi_k"):
        args.phi_k_given = True
    if getattr(args, "fresh_seed", False):
        args.seed = int.from_bytes(os.urandom(8), "little") >> 1
    elif hasattr(args, "seed") and args.seed is None:
        args.seed = _env_seed()
    return args


def _config_of(args):
    skip = {"out", "deterministic", "phi_k_given", "fresh_seed"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _clean(x):
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if isinstance(x, (np.floating, float)):
        x = float(x)
        return x if math.isfinite(x) else None
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    return x


def make_report(args, verdicts, payload):
    rep = {
        "schema": SCHEMA,
        "command": args.command,
        "config": _config_of(args),
        "backend": BACKEND,
        "passed": all(v["passed"] for v in verdicts),
        "verdicts": verdicts,
        "results": payload,
    }
    if not args.deterministic:
        rep["generated_at"] = datetime.now(timezone.utc).isoformat()
    return _clean(rep)


def _emit(report, out):
    text = json.dumps(report, indent=2, sort_keys=True, allow_nan=False) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def config_to_argv(config):
    """RunConfig dict -> argv list. Lists become comma-separated strings."""
    if "subcommand" not in config:
        raise CLIUsageError("RunConfig needs a 'subcommand' field")
    argv = [config["subcommand"]]
    for key, val in config.get("args", {}).items():
        flag = "--" + key.replace("_", "-")
        if val is True:
            argv.append(flag)
        elif val is False or val is None:
            continue
        elif isinstance(val, (list, tuple)):
            argv += [flag, ",".join(str(v) for v in val)]
        else:
            argv += [flag, str(val)]
    return argv


def run_config(config, out=None, deterministic=True):
    """Execute a RunConfig dict; returns (exit code, report or None)."""
    argv = config_to_argv(config)
    if deterministic and "--deterministic" not in argv:
        argv.append("--deterministic")
    if out:
        argv += ["--out", str(out)]
    code, report = _dispatch(argv)
    return code, report


def _dispatch(argv):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return (e.code if isinstance(e.code, int) else EXIT_USAGE), None
    try:
        if args.command == "run":
            cfg = json.loads(Path(args.config).read_text())
            return run_config(cfg, out=args.out, deterministic=cfg.get("deterministic", True))
        if args.command == "scenarios":
            return run_scenarios(args.dir, args.out_dir)
        args = _normalize(args)
        verdicts, payload = COMMANDS[args.command](args)
    except (RSDError, CLIUsageError, ValueError, OSError) as e:
        sys.stderr.write(f"rsdlab: error: {e}\n")
        return EXIT_USAGE, None
    report = make_report(args, verdicts, payload)
    _emit(report, args.out)
    return (EXIT_OK if report["passed"] else EXIT_FAIL), report


def load_schema():
    return json.loads(resources.files("rsdlab").joinpath("report.schema.json").read_text())


def scenario_files(directory=None):
    if directory is None:
        root = resources.files("rsdlab").joinpath("scenarios")
        return sorted((p for p in root.iterdir() if p.name.endswith(".json")), key=lambda p: p.name)
    return sorted(Path(directory).glob("*.json"))


def run_scenarios(directory=None, out_dir=None):
    """Run each scenario and compare its exit code with ``expect_exit``."""
    rows, ok_all = [], True
    for path in scenario_files(directory):
        cfg = json.loads(path.read_text())
        out = Path(out_dir) / path.name if out_dir else None
        if out_dir:
            Path(out_dir).mkdir(parents=True, exist_ok=True)
        # keep scenario reports off stdout
        saved = sys.stdout
        try:
            sys.stdout = open(os.devnull, "w") if out is None else saved
            code, report = run_config(cfg, out=out)
        finally:
            if sys.stdout is not saved:
                sys.stdout.close()
            sys.stdout = saved
        expected = cfg.get("expect_exit", 0)
        # usage errors write nothing but the diagnostic
        well_formed = code == EXIT_USAGE or (report is not None and report.get("schema") == SCHEMA)
        ok = code == expected and well_formed
        ok_all &= ok
        rows.append({"scenario": path.name, "criterion": cfg.get("criterion"), "exit": code,
                     "expected": expected, "passed": ok})
        sys.stderr.write(f"{'PASS' if ok else 'FAIL'} {path.name} exit={code} expected={expected}\n")
    report = {"schema": SCHEMA, "command": "scenarios", "config": {"dir": str(directory or "bundled")},
              "backend": BACKEND, "passed": ok_all,
              "verdicts": [{"name": r["scenario"], "passed": r["passed"], "value": float(r["exit"]),
                            "threshold": float(r["expected"])} for r in rows],
              "results": {"scenarios": rows}}
    _emit(report, None)
    return (EXIT_OK if ok_all else EXIT_FAIL), report


def main(argv=None):
    code, _ = _dispatch(sys.argv[1:] if argv is None else argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
