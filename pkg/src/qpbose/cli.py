"""qpbose command line: single-point queries, sweeps, phase maps and the oracle checks.

Exit status is 0 on success, 1 on usage errors and 2 when a domain,
convergence or verification failure occurs.  Failures write a JSON error
record to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import sys

import numpy as np

from . import distribution as dist
from . import oracle, photon, thermo
from .condensation import bose_temperature, condenses, phase_map
from .deformed import DOMAIN_RTOL, DeformationParams, Family, classify
from .errors import QPBoseError
from .series import sigma
from ._summation import DEFAULT_CAP, DEFAULT_TOL
from .verify import run_suite

COLUMNS = ("q", "p", "phi", "tau", "domain", "dim", "T", "mu", "value", "verdict")
EXIT_OK, EXIT_USAGE, EXIT_FAILURE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


# ---------------------------------------------------------------- formatting

def fmt_number(x) -> str:
    if x is None:
        return ""
    if isinstance(x, complex):
        return f"{x.real:.17g}{x.imag:+.17g}j"
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, (int, float, np.floating, np.integer)):
        x = float(x)
        return "" if math.isnan(x) else format(x, ".17g")
    return str(x)


def _json_value(x) -> str:
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return "null"
    if isinstance(x, complex) or isinstance(x, str):
        return json.dumps(fmt_number(x))
    text = fmt_number(x)
    # 17g can print inf; JSON has no infinity literal
    return text if math.isfinite(float(x)) else json.dumps(text)


def render(rows, fmt) -> str:
    if fmt == "json":
        items = ["{" + ", ".join(f'"{k}": {_json_value(r.get(k))}' for k in COLUMNS) + "}"
                 for r in rows]
        return "[" + ",\n ".join(items) + "]\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for r in rows:
        writer.writerow([fmt_number(r.get(k)) for k in COLUMNS])
    return buf.getvalue()


def _base_row(params: DeformationParams, ns):
    # q, p echo the inputs when given, so sweep rows can be fed back verbatim
    if ns.q is not None:
        q, p = ns.q, ns.p
    elif ns.q_re is not None or ns.q_im is not None:
        q = complex(ns.q_re or 0.0, ns.q_im or 0.0)
        p = q.conjugate()
    else:
        q, p = params.q, params.p
    return {"q": q, "p": p, "phi": params.phi, "tau": params.tau,
            "domain": classify(params, ns.domain_rtol).value}


# ---------------------------------------------------------------- inputs

def params_from_args(ns) -> DeformationParams:
    styles = [ns.classical, ns.q is not None or ns.p is not None,
              ns.q_re is not None or ns.q_im is not None, ns.phi is not None]
    if sum(bool(s) for s in styles) != 1:
        raise UsageError("give exactly one of --classical, --q/--p, --q-re/--q-im, --phi/--tau")
    if ns.classical:
        return DeformationParams.classical()
    if styles[1]:
        if ns.q is None or ns.p is None:
            raise UsageError("--q and --p must be given together")
        return DeformationParams.from_qp(ns.q, ns.p, ns.domain_rtol)
    if styles[2]:
        q = complex(ns.q_re or 0.0, ns.q_im or 0.0)
        return DeformationParams.from_qp(q, q.conjugate(), ns.domain_rtol)
    return DeformationParams(ns.phi, ns.tau or 0.0, Family(ns.family))


def gas_spec(ns) -> thermo.GasSpec:
    if ns.units == "si":
        missing = [n for n in ("mass", "degeneracy", "hbar", "k_B") if getattr(ns, n) is None]
        if missing:
            raise UsageError("--units si needs " + ", ".join(f"--{m.replace('_', '-')}"
                                                           for m in missing))
        return thermo.GasSpec(ns.dim, ns.degeneracy, ns.mass, ns.volume, thermo.Units.SI,
                              ns.hbar, ns.k_B)
    return thermo.GasSpec(ns.dim, volume=ns.volume)


def _k_b(ns):
    return ns.k_B if ns.units == "si" and ns.k_B is not None else 1.0


def _hbar(ns):
    return ns.hbar if ns.units == "si" and ns.hbar is not None else 1.0


def _require(ns, *names):
    missing = [n for n in names if getattr(ns, n) is None]
    if missing:
        raise UsageError("missing " + ", ".join(f"--{n.replace('_', '-')}" for n in missing))


def parse_sweep(text):
    try:
        name, spec = text.split("=", 1)
        start, stop, count = spec.split(":")
        values = np.linspace(float(start), float(stop), int(count))
    except ValueError:
        raise UsageError(f"bad sweep {text!r}; expected name=start:stop:count") from None
    if int(count) < 1:
        raise UsageError(f"sweep {text!r} needs count >= 1")
    return name.strip().replace("-", "_"), [float(v) for v in values]


def expand(ns, sweepable):
    """Namespaces for the cartesian product of all --sweep options, in declaration order."""
    sweeps = [parse_sweep(s) for s in ns.sweep or ()]
    for name, _ in sweeps:
        if name not in sweepable:
            raise UsageError(f"cannot sweep {name!r}; choose from {', '.join(sorted(sweepable))}")
    if not sweeps:
        return [ns]
    points = []
    for combo in itertools.product(*(vals for _, vals in sweeps)):
        point = argparse.Namespace(**vars(ns))
        for (name, _), value in zip(sweeps, combo):
            setattr(point, name, value)
        points.append(point)
    return points


# ---------------------------------------------------------------- commands

def cmd_bose_factor(ns):
    params = params_from_args(ns)
    if ns.eta is not None:
        eta = ns.eta
    else:
        _require(ns, "energy", "T")
        eta = (ns.energy - (ns.mu or 0.0)) / (_k_b(ns) * ns.T)
    method = {"closed": dist.bose_factor,
              "partial-fractions": dist.bose_factor_partial_fractions,
              "series": lambda e, p: dist.bose_factor_series(e, p, tol=ns.tol, cap=ns.cap).value,
              "oracle": oracle.oracle_bose_factor}[ns.method]
    return dict(_base_row(params, ns), T=ns.T, mu=ns.mu, value=method(eta, params), verdict="ok")


def cmd_sigma(ns):
    params = params_from_args(ns)
    if ns.beta_mu is not None:
        beta_mu = ns.beta_mu
    else:
        _require(ns, "mu", "T")
        beta_mu = ns.mu / (_k_b(ns) * ns.T)
    res = sigma(ns.s, beta_mu, params, tol=ns.tol, cap=ns.cap, rtol=ns.domain_rtol)
    return dict(_base_row(params, ns), T=ns.T, mu=ns.mu,
                value=res.value if res.converged else None, verdict=res.verdict.value)


THERMO_QUANTITIES = {
    "density": thermo.density, "energy": thermo.energy, "pressure": thermo.pressure,
    "grand-potential": thermo.grand_potential, "entropy": thermo.entropy,
    "specific-heat": thermo.specific_heat, "number": thermo.particle_number,
}


def cmd_thermo(ns):
    params = params_from_args(ns)
    _require(ns, "dim", "T")
    spec = gas_spec(ns)
    verdict = "ok"
    if ns.density is not None:
        if ns.mu is not None:
            raise UsageError("give --mu or --density, not both")
        sol = thermo.solve_mu(ns.density, ns.T, spec, params, tol=ns.tol, cap=ns.cap)
        mu = sol.mu
        verdict = "condensed" if sol.condensed else "ok"
    else:
        _require(ns, "mu")
        mu = ns.mu
    quantity = ns.quantity or ("mu" if ns.density is not None else "density")
    if quantity == "mu":
        value = mu
    else:
        state = thermo.ThermoState(ns.T, mu, params)
        value = THERMO_QUANTITIES[quantity](state, spec, ns.tol, ns.cap)
    return dict(_base_row(params, ns), dim=ns.dim, T=ns.T, mu=mu, value=value, verdict=verdict)


def cmd_tb(ns):
    params = params_from_args(ns)
    _require(ns, "dim", "density")
    spec = gas_spec(ns)
    verdict = condenses(params, ns.dim, ns.domain_rtol)
    t_b = bose_temperature(ns.density, spec, params, ns.tol, ns.cap)
    return dict(_base_row(params, ns), dim=ns.dim, value=t_b, verdict=verdict.value)


def cmd_g2(ns):
    params = params_from_args(ns)
    if ns.xi is not None:
        xi = ns.xi
    else:
        _require(ns, "omega", "T")
        xi = _hbar(ns) * ns.omega / (_k_b(ns) * ns.T)
    return dict(_base_row(params, ns), T=ns.T, value=photon.g2(xi, params), verdict="ok")


def run_phase_map(ns, points):
    _require(ns, "dim", "density")
    spec = gas_spec(ns)
    grid, errors = [], {}
    for i, point in enumerate(points):
        try:
            grid.append(params_from_args(point))
        except QPBoseError as exc:
            errors[i] = exc
            grid.append(None)
    valid = phase_map([g for g in grid if g is not None], ns.dim, ns.density, spec,
                      ns.tol, ns.cap)
    it = iter(valid)
    rows, failed = [], False
    for i, point in enumerate(points):
        if i in errors:
            failed = True
            rows.append({"q": point.q, "p": point.p, "phi": point.phi, "tau": point.tau,
                         "dim": ns.dim, "verdict": "error"})
            continue
        row = next(it)
        out = dict(_base_row(row.params, point), dim=ns.dim)
        if row.error:
            failed = True
            out.update(verdict="error")
        else:
            out.update(value=row.t_b, verdict=row.verdict.value)
        rows.append(out)
    return rows, failed


COMMANDS = {"bose-factor": cmd_bose_factor, "sigma": cmd_sigma, "thermo": cmd_thermo,
            "tb": cmd_tb, "g2": cmd_g2}


# ---------------------------------------------------------------- parser

def _common(ns_parser):
    g = ns_parser.add_argument_group("deformation")
    g.add_argument("--q", type=float)
    g.add_argument("--p", type=float)
    g.add_argument("--q-re", type=float, help="real part of complex q (p = conj q)")
    g.add_argument("--q-im", type=float)
    g.add_argument("--phi", type=float)
    g.add_argument("--tau", type=float)
    g.add_argument("--family", choices=[f.value for f in Family], default="real")
    g.add_argument("--classical", action="store_true", help="q = p = 1")
    o = ns_parser.add_argument_group("numerics and output")
    o.add_argument("--config", help="file of 'key = value' defaults")
    o.add_argument("--tol", type=float, default=DEFAULT_TOL)
    o.add_argument("--cap", type=int, default=DEFAULT_CAP)
    o.add_argument("--domain-rtol", type=float, default=DOMAIN_RTOL)
    o.add_argument("--format", choices=("csv", "json"), default="csv")
    o.add_argument("--out")
    o.add_argument("--sweep", action="append", metavar="NAME=START:STOP:COUNT")
    u = ns_parser.add_argument_group("units")
    u.add_argument("--units", choices=("reduced", "si"), default="reduced")
    u.add_argument("--mass", type=float)
    u.add_argument("--degeneracy", type=float)
    u.add_argument("--hbar", type=float)
    u.add_argument("--k-B", "--kB", dest="k_B", type=float)
    u.add_argument("--volume", type=float, default=1.0)
    s = ns_parser.add_argument_group("state")
    for flag in ("--T", "--mu", "--dim", "--density", "--eta", "--xi", "--omega", "--energy",
                 "--s", "--beta-mu"):
        s.add_argument(flag, type=float)


SWEEPABLE = {"q", "p", "q_re", "q_im", "phi", "tau", "T", "mu", "dim", "density", "eta",
             "xi", "omega", "energy", "s", "beta_mu", "mass", "degeneracy", "volume"}


def build_parser():
    parser = _Parser(prog="qpbose", description="Statistical mechanics of qp-deformed bosons.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    helps = {
        "bose-factor": "deformed Bose factor at eta, or at --energy/--T/--mu",
        "sigma": "deformed zeta series sigma_s(beta mu)",
        "thermo": "thermodynamic quantity at (T, mu) or (T, density)",
        "tb": "Bose temperature for a density",
        "phase-map": "condensation verdict and T_B over a swept grid",
        "g2": "second-order correlation of one photon mode",
    }
    subs = {}
    for name, text in helps.items():
        p = sub.add_parser(name, help=text, description=text)
        _common(p)
        subs[name] = p
    subs["bose-factor"].add_argument(
        "--method", choices=("closed", "partial-fractions", "series", "oracle"), default="closed")
    subs["thermo"].add_argument("--quantity", choices=sorted(THERMO_QUANTITIES) + ["mu"])
    v = sub.add_parser("verify", help="closed forms against the Fock-trace oracle")
    v.add_argument("--suite", choices=("all", "distribution", "photon", "series", "condensation"),
                   default="all")
    v.add_argument("--tol", type=float, default=1e-8)
    v.add_argument("--points", type=int, default=200, help="random points per domain")
    v.add_argument("--seed", type=int, default=12345)
    v.add_argument("--config")
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--out")
    subs["verify"] = v
    return parser, subs


def read_config(path):
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path!r}: {exc.strerror}") from None
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (t.strip() for t in line.split("=", 1))
        values[key.replace("-", "_")] = value
    return values


def apply_config(subparser, config):
    dests = {a.dest: a for a in subparser._actions}
    lowered = {d.lower(): d for d in dests}
    defaults = {}
    for key, value in config.items():
        dest = key if key in dests else lowered.get(key.lower())
        if dest is None:
            continue
        action = dests[dest]
        if isinstance(action, argparse._StoreTrueAction):
            defaults[dest] = value.lower() in ("1", "true", "yes", "on")
        else:
            defaults[dest] = value  # string defaults go through the action's type
    subparser.set_defaults(**defaults)


def _emit(text, ns):
    if ns.out:
        with open(ns.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _error_record(exc):
    details = getattr(exc, "details", {})
    record = {"error": type(exc).__name__, "message": str(exc), "details": details}
    sys.stderr.write(json.dumps(record, sort_keys=True, default=fmt_number) + "\n")


def _run(ns):
    if ns.command == "verify":
        checks = run_suite(ns.suite, ns.tol, ns.points, ns.seed)
        if ns.format == "json":
            text = json.dumps([{"name": c.name, "passed": c.passed, "worst": fmt_number(c.worst),
                                "tol": fmt_number(c.tol), "count": c.count} for c in checks],
                              indent=1) + "\n"
        else:
            text = "".join(c.line() + "\n" for c in checks)
        _emit(text, ns)
        return EXIT_OK if all(c.passed for c in checks) else EXIT_FAILURE

    points = expand(ns, SWEEPABLE)
    if ns.command == "phase-map":
        if not ns.sweep:
            raise UsageError("phase-map needs at least one --sweep")
        rows, failed = run_phase_map(ns, points)
        _emit(render(rows, ns.format), ns)
        return EXIT_FAILURE if failed else EXIT_OK

    command = COMMANDS[ns.command]
    if len(points) == 1:
        _emit(render([command(points[0])], ns.format), ns)
        return EXIT_OK
    rows, failed = [], False
    for point in points:
        try:
            rows.append(command(point))
        except QPBoseError as exc:
            failed = True
            rows.append({k: getattr(point, k, None) for k in ("q", "p", "phi", "tau", "dim",
                                                              "T", "mu")} | {"verdict": "error"})
            _error_record(exc)
    _emit(render(rows, ns.format), ns)
    return EXIT_FAILURE if failed else EXIT_OK


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, subs = build_parser()
    try:
        pre = argparse.ArgumentParser(add_help=False)
        pre.add_argument("--config")
        known, _ = pre.parse_known_args(argv)
        if known.config:
            config = read_config(known.config)
            for p in subs.values():
                apply_config(p, config)
        ns = parser.parse_args(argv)
        return _run(ns)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except UsageError as exc:
        sys.stderr.write(f"qpbose: error: {exc}\n")
        return EXIT_USAGE
    except (QPBoseError, ArithmeticError) as exc:
        _error_record(exc)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
