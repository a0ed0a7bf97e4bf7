"""Command-line surface: batch computations with JSON/CSV reports.

Subcommands
    limit      smallest limit eigenvalues of the double-sided disk
    coeffs     coefficient matrices (L0, L1) and eigenvalue predictions
    direct     direct meridian spectrum of the flattened surface
    ellipse    closed-form expansion check on the collapsing ellipse
    validate   end-to-end fit of direct eigenvalues against predictions

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
Reports are deterministic: identical configuration produces byte-identical
JSON apart from the wall_time provenance field.
"""

import argparse
import json
import sys
import time

from . import __version__
from .coeffs import (DEFAULT_DELTA_SCHEDULE, compute_coefficients,
                     ellipsoid_profile, profile_from_q_polynomial)
from .errors import (CollapseSpectraError, ConfigError, DimensionMismatch,
                     DomainError, InvalidMode)
from .harness import (C1_REL_TOL, C2_REL_TOL, DEFAULT_EPS_SCHEDULE,
                      DEFAULT_VALIDATE_GRID_C, ValidationReport,
                      run_ellipse_suite, validate_eigenvalue)
from .kernels import IMPLEMENTATION
from .limit_spectrum import eigenpair, group_degenerate, limit_eigenvalues
from .meridian import DEFAULT_GRID_C, spectrum
from .reports import render_csv, render_json

_CONFIG_ERRORS = (ConfigError, InvalidMode, DomainError, DimensionMismatch)

_DEFAULTS = {
    "limit": {"count": 10, "format": "json", "out": None},
    "coeffs": {"bc": "dirichlet", "nu": 0, "k": 1,
               "eps": (0.1, 0.05, 0.01), "q": None, "tol": 2e-3,
               "format": "json", "out": None},
    "direct": {"eps": (0.1,), "mmax": 2, "count": 9,
               "grid_c": DEFAULT_GRID_C, "format": "json", "out": None},
    "ellipse": {"k": 1, "eps": (0.1, 0.05, 0.025),
                "format": "json", "out": None},
    "validate": {"eig": ("dirichlet:0:1",), "eps": DEFAULT_EPS_SCHEDULE,
                 "grid_c": DEFAULT_VALIDATE_GRID_C,
                 "format": "json", "out": None},
}


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="collapse-spectra",
        description="Spectra of flattening surfaces of revolution.")
    sub = parser.add_subparsers(dest="command")

    def add(name, help_text, *flags):
        p = sub.add_parser(name, help=help_text)
        for flag in flags:
            if flag == "--eps":
                p.add_argument("--eps", help="comma-separated aspect ratios")
            elif flag == "--bc":
                p.add_argument("--bc", help="boundary condition: dirichlet | neumann")
            elif flag == "--nu":
                p.add_argument("--nu", type=int, help="angular index")
            elif flag == "--k":
                p.add_argument("--k", type=int, help="radial index (1-based)")
            elif flag == "--count":
                p.add_argument("--count", type=int, help="number of rows")
            elif flag == "--mmax":
                p.add_argument("--mmax", type=int, help="largest azimuthal mode")
            elif flag == "--grid-c":
                p.add_argument("--grid-c", dest="grid_c", type=float,
                               help="resolution constant C in N >= C/eps")
            elif flag == "--tol":
                p.add_argument("--tol", type=float,
                               help="extrapolation tolerance")
            elif flag == "--q":
                p.add_argument("--q", help="comma-separated coefficients of "
                               "q as a polynomial in r^2 (profile h = sqrt q)")
            elif flag == "--eig":
                p.add_argument("--eig", action="append",
                               help="eigenvalue selector bc:nu:k (repeatable)")
        p.add_argument("--format", choices=("json", "csv"),
                       help="report format (default json)")
        p.add_argument("--out", help="output path (default stdout)")
        p.add_argument("--config", help="JSON config file; flags override it")
        return p

    add("limit", "limit eigenvalues of the double-sided disk", "--count")
    add("coeffs", "coefficient matrices for one degenerate group",
        "--bc", "--nu", "--k", "--eps", "--q", "--tol")
    add("direct", "direct spectrum of the flattened surface",
        "--eps", "--mmax", "--count", "--grid-c")
    add("ellipse", "closed-form expansion check", "--k", "--eps")
    add("validate", "fit direct eigenvalues against predictions",
        "--eig", "--eps", "--grid-c")
    return parser


def _load_config_file(path, allowed):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path!r}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path!r} is not valid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise ConfigError(f"config file {path!r} must hold a JSON object")
    unknown = sorted(set(raw) - set(allowed))
    if unknown:
        raise ConfigError(f"unknown config keys {unknown} for this command")
    return raw


def _merge_config(ns):
    merged = dict(_DEFAULTS[ns.command])
    if getattr(ns, "config", None):
        merged.update(_load_config_file(ns.config, merged))
    for key in merged:
        value = getattr(ns, key, None)
        if value is not None:
            merged[key] = value
    return merged


def _eps_tuple(value, lo_open=0.0, hi=1.0, hi_open=False):
    if isinstance(value, str):
        tokens = [t.strip() for t in value.split(",") if t.strip()]
        try:
            values = [float(t) for t in tokens]
        except ValueError:
            raise ConfigError(f"cannot parse eps list {value!r}") from None
    elif isinstance(value, (int, float)):
        values = [float(value)]
    elif isinstance(value, (list, tuple)):
        values = [float(v) for v in value]
    else:
        raise ConfigError(f"cannot parse eps list {value!r}")
    if not values:
        raise ConfigError("eps list is empty")
    for v in values:
        if not lo_open < v <= hi or (hi_open and v == hi):
            bound = f"(0, {hi})" if hi_open else f"(0, {hi}]"
            raise ConfigError(f"eps={v!r} outside {bound}")
    return tuple(values)


def _positive_int(config, key, minimum=1, maximum=None):
    value = config[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"--{key} must be an integer, got {value!r}")
    if value < minimum or (maximum is not None and value > maximum):
        top = f", <= {maximum}" if maximum is not None else ""
        raise ConfigError(f"--{key} must be >= {minimum}{top}, got {value}")
    return value


def _check_format(config):
    if config["format"] not in ("json", "csv"):
        raise ConfigError(f"unknown format {config['format']!r}")


def _member_row(pair):
    return {"bc": pair.bc.value, "nu": pair.nu, "k": pair.k,
            "kappa": pair.kappa, "lam": pair.lam,
            "angular": pair.angular_factor.value}


def cmd_limit(config):
    count = _positive_int(config, "count", minimum=1, maximum=500)
    rows = limit_eigenvalues(count)
    results = {"eigenvalues": [{
        "bc": r.bc.value, "nu": r.nu, "k": r.k, "kappa": r.kappa,
        "lam": r.lam, "multiplicity": r.multiplicity} for r in rows]}
    header = ["index", "bc", "nu", "k", "kappa", "lam", "multiplicity"]
    table = [[i, r.bc.value, r.nu, r.k, r.kappa, r.lam, r.multiplicity]
             for i, r in enumerate(rows)]
    provenance = {"tolerances": {"zero_abs_tol": 1e-11}, "grid": {}}
    return results, {}, (header, table), provenance


def cmd_coeffs(config):
    nu = _positive_int(config, "nu", minimum=0, maximum=50)
    k = _positive_int(config, "k", minimum=1, maximum=100)
    eps_values = _eps_tuple(config["eps"], hi=1.0, hi_open=True)
    tol = float(config["tol"])
    if tol <= 0.0:
        raise ConfigError(f"--tol must be positive, got {tol!r}")
    if config["q"] is None:
        profile = ellipsoid_profile()
    else:
        q = config["q"]
        if isinstance(q, str):
            try:
                coeffs_list = tuple(float(t) for t in q.split(",") if t.strip())
            except ValueError:
                raise ConfigError(f"cannot parse q coefficients {q!r}") from None
        else:
            coeffs_list = tuple(float(v) for v in q)
        profile = profile_from_q_polynomial(coeffs_list)

    pair = eigenpair(config["bc"], nu, k)
    group = group_degenerate(pair.lam)
    cm = compute_coefficients(group, profile, extrap_tol=tol)
    mu_rows = [{"eps": e, "values": cm.mu_at(e)} for e in eps_values]
    predict_rows = [{"eps": e, "values": cm.predict_at(e)} for e in eps_values]
    results = {
        "lam_limit": group.lam,
        "a2": cm.a2,
        "method": cm.method,
        "mixed": group.mixed,
        "members": [_member_row(p) for p in group.members],
        "lambda0": [[float(v) for v in row] for row in cm.lambda0],
        "lambda1": [[float(v) for v in row] for row in cm.lambda1],
        "mu": mu_rows,
        "predictions": predict_rows,
    }
    header = ["quantity", "i", "j", "eps", "value"]
    table = [["lam_limit", "", "", "", group.lam],
             ["a2", "", "", "", cm.a2]]
    m = group.multiplicity
    for name, mat in (("lambda0", cm.lambda0), ("lambda1", cm.lambda1)):
        for i in range(m):
            for j in range(m):
                table.append([name, i, j, "", float(mat[i, j])])
    for row in mu_rows:
        for rank, v in enumerate(row["values"]):
            table.append(["mu", rank, "", row["eps"], v])
    for row in predict_rows:
        for rank, v in enumerate(row["values"]):
            table.append(["predict", rank, "", row["eps"], v])
    provenance = {
        "tolerances": {"extrap_tol": tol,
                       "delta_schedule": list(DEFAULT_DELTA_SCHEDULE)},
        "grid": {},
    }
    return results, {"mixed": group.mixed}, (header, table), provenance


def cmd_direct(config):
    eps_values = _eps_tuple(config["eps"], hi=1.0)
    if len(eps_values) != 1:
        raise ConfigError("direct takes exactly one --eps value")
    eps = eps_values[0]
    mmax = _positive_int(config, "mmax", minimum=0, maximum=20)
    count = _positive_int(config, "count", minimum=1)
    grid_c = float(config["grid_c"])
    if grid_c <= 0.0:
        raise ConfigError(f"--grid-c must be positive, got {grid_c!r}")

    spec = spectrum(eps, mmax, min(50, count), grid_c=grid_c)
    expanded = []
    for entry in spec.entries:
        for _ in range(entry.multiplicity):
            expanded.append(entry)
        if len(expanded) >= count:
            break
    expanded = expanded[:count]
    n_used = spec.grid_sizes[0]
    results = {
        "eps": eps,
        "grid_size": n_used,
        "entries": [{"lam": e.lam, "m": e.m, "parity": e.parity,
                     "multiplicity": e.multiplicity} for e in expanded],
    }
    header = ["index", "lam", "m", "parity", "multiplicity"]
    table = [[i, e.lam, e.m, e.parity, e.multiplicity]
             for i, e in enumerate(expanded)]
    provenance = {"tolerances": {"residual_tol": 1e-8},
                  "grid": {"N": n_used, "grid_c": grid_c}}
    return results, {}, (header, table), provenance


def cmd_ellipse(config):
    k = _positive_int(config, "k", minimum=1, maximum=1000)
    eps_values = _eps_tuple(config["eps"], hi=1.0, hi_open=True)
    suite = run_ellipse_suite([k], eps_values)
    case = suite.cases[0]
    results = case.to_dict()
    header = ["k", "eps", "exact", "expansion", "residual",
              "residual_over_eps_sq"]
    table = [[k, r.eps, r.exact, r.expansion, r.residual,
              r.residual_over_eps_sq] for r in case.rows]
    provenance = {"tolerances": {"decay_factor": 2.0}, "grid": {}}
    return results, {"passed": case.passed}, (header, table), provenance


def _parse_eig(spec_str):
    parts = str(spec_str).split(":")
    if len(parts) != 3:
        raise ConfigError(f"--eig must look like bc:nu:k, got {spec_str!r}")
    bc, nu_s, k_s = parts
    try:
        nu = int(nu_s)
        k = int(k_s)
    except ValueError:
        raise ConfigError(f"--eig indices must be integers in {spec_str!r}") from None
    return bc.strip().lower(), nu, k


def cmd_validate(config):
    raw = config["eig"]
    if isinstance(raw, str):
        raw = [raw]
    selectors = []
    for item in raw:
        for tok in str(item).split(","):
            if tok.strip():
                selectors.append(_parse_eig(tok))
    if not selectors:
        raise ConfigError("validate needs at least one --eig selector")
    eps_schedule = _eps_tuple(config["eps"], hi=0.2)
    grid_c = float(config["grid_c"])
    if grid_c <= 0.0:
        raise ConfigError(f"--grid-c must be positive, got {grid_c!r}")

    fits = tuple(validate_eigenvalue(bc, nu, k, eps_schedule=eps_schedule,
                                     grid_c=grid_c)
                 for bc, nu, k in selectors)
    suite = run_ellipse_suite()
    report = ValidationReport(
        fits=fits, ellipse=suite, convergence=None,
        passed=all(f.passed for f in fits) and suite.passed,
        provenance={"version": __version__, "kernel": IMPLEMENTATION,
                    "c1_rel_tol": C1_REL_TOL, "c2_rel_tol": C2_REL_TOL})
    results = report.to_dict()
    flags = {"passed": report.passed,
             "fits": [{"bc": f.bc.value, "nu": f.nu, "k": f.k,
                       "passed": f.passed} for f in fits]}
    header = ["bc", "nu", "k", "lam_limit", "c1_fit", "c1_predicted",
              "c1_rel_error", "c2_fit", "c2_predicted", "c2_rel_error",
              "rms_residual", "passed"]
    table = [[f.bc.value, f.nu, f.k, f.lam_limit, f.c1_fit, f.c1_predicted,
              f.c1_rel_error, f.c2_fit, f.c2_predicted, f.c2_rel_error,
              f.rms_residual, f.passed] for f in fits]
    provenance = {
        "tolerances": {"c1_rel_tol": C1_REL_TOL, "c2_rel_tol": C2_REL_TOL},
        "grid": {"grid_c": grid_c},
    }
    return results, flags, (header, table), provenance


_COMMANDS = {
    "limit": cmd_limit,
    "coeffs": cmd_coeffs,
    "direct": cmd_direct,
    "ellipse": cmd_ellipse,
    "validate": cmd_validate,
}


def _config_payload(config):
    out = {}
    for key in sorted(config):
        value = config[key]
        if isinstance(value, tuple):
            value = list(value)
        out[key] = value
    return out


def _write_report(out_path, text):
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    started = time.perf_counter()
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 2
        return 0 if code == 0 else 2
    if ns.command is None:
        parser.print_usage(sys.stderr)
        return 2

    try:
        config = _merge_config(ns)
        _check_format(config)
        results, flags, (header, table), provenance = \
            _COMMANDS[ns.command](config)
    except _CONFIG_ERRORS as exc:
        print(f"collapse-spectra: config error: {exc}", file=sys.stderr)
        return 2
    except CollapseSpectraError as exc:
        print(f"collapse-spectra: numerical failure: {exc}", file=sys.stderr)
        return 3

    provenance = {
        "version": __version__,
        "kernel": IMPLEMENTATION,
        "tolerances": provenance["tolerances"],
        "grid": provenance["grid"],
        "wall_time": time.perf_counter() - started,
    }
    payload = {
        "command": ns.command,
        "config": _config_payload(config),
        "results": results,
        "flags": flags,
        "provenance": provenance,
    }
    if config["format"] == "json":
        text = render_json(payload)
    else:
        text = render_csv(header, table)
    try:
        _write_report(config["out"], text)
    except OSError as exc:
        print(f"collapse-spectra: config error: cannot write output: {exc}",
              file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
