"""Command-line front end.

Subcommands: ``certify``, ``evolve``, ``thin``, ``sweep`` and ``params``.
Exit status is 0 on success, 1 when a certified property fails and 2 on
usage errors.  Every subcommand accepts ``--config FILE`` with a JSON object
whose keys mirror the long flag names (dashes or underscores); flags given
on the command line take precedence.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import channels, entropy, fock, harness, majorization, thinning
from .errors import GaussMajError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

DEFAULTS = {
    "certify": {"dims": "2..8", "lambdas": "0.2,0.5,0.8", "noises": "0,0.5,1", "trials": 500,
                "seed": 0, "tol": majorization.MAJORIZATION_TOL, "inputs": "mixed", "workers": 1,
                "output": None, "trials_csv": None, "format": "json"},
    "evolve": {"state": "random:0", "dim": 4, "t_max": 2.0, "steps": 2000, "feas_tol": 1e-6,
               "tol": majorization.MAJORIZATION_TOL, "output": None, "format": "csv"},
    "thin": {"dist": "delta:2", "input": None, "K": None, "lam": 0.5, "output": None, "format": "csv"},
    "sweep": {"lambdas": "0.2,0.5,0.8", "noises": "0,0.5,1", "dim": 6, "seed": 0,
              "output": None, "format": "csv"},
    "params": {"lam": None, "noise": 0.0, "output": None, "format": "json"},
}


class UsageError(Exception):
    pass


def fmt(x) -> str:
    """17 significant digits: enough for an exact float round trip."""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    return str(x)


def parse_floats(text) -> list[float]:
    if isinstance(text, (int, float)):
        return [float(text)]
    if isinstance(text, list):
        return [float(v) for v in text]
    try:
        vals = [float(v) for v in str(text).split(",") if v.strip()]
    except ValueError as exc:
        raise UsageError(f"cannot parse number list {text!r}") from exc
    if not vals:
        raise UsageError("empty grid")
    return vals


def parse_dims(text) -> list[int]:
    """``"2..8"`` (inclusive range), ``"2,3,5"`` or a single integer."""
    if isinstance(text, int):
        return [text]
    if isinstance(text, list):
        return [int(v) for v in text]
    text = str(text)
    try:
        if ".." in text:
            lo, hi = text.split("..")
            dims = list(range(int(lo), int(hi) + 1))
        else:
            dims = [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise UsageError(f"cannot parse dimensions {text!r}") from exc
    if not dims or min(dims) < 1:
        raise UsageError(f"dimensions must be a non-empty list of positive integers, got {text!r}")
    return dims


def _add_common(p):
    p.add_argument("--config", help="JSON file whose keys mirror the flags")
    p.add_argument("--output", "-o", help="output path (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gaussmaj", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("certify", help="randomized check that passive inputs give majorizing outputs")
    _add_common(p)
    p.add_argument("--dims", help="e.g. 2..8 or 2,4,6")
    p.add_argument("--lambdas", help="comma-separated transmissivities/gains")
    p.add_argument("--noises", help="comma-separated noise values")
    p.add_argument("--trials", type=int, help="trials per (dim, lambda, noise) cell")
    p.add_argument("--seed", type=int)
    p.add_argument("--tol", type=float)
    p.add_argument("--inputs", choices=("mixed", "pure"))
    p.add_argument("--workers", type=int)
    p.add_argument("--trials-csv", help="also stream per-trial records to this CSV file")

    p = sub.add_parser("evolve", help="partial-sum trajectories along the attenuator semigroup")
    _add_common(p)
    p.add_argument("--state", help="fock:N, thermal:NBAR or random:SEED")
    p.add_argument("--dim", type=int)
    p.add_argument("--t-max", type=float)
    p.add_argument("--steps", type=int)
    p.add_argument("--feas-tol", type=float)
    p.add_argument("--tol", type=float)

    p = sub.add_parser("thin", help="apply the thinning channel to a photon-number distribution")
    _add_common(p)
    p.add_argument("--dist", help="delta:N, poisson:MEAN or geometric:MEAN")
    p.add_argument("--input", help="file with weights (JSON list, or comma/whitespace separated)")
    p.add_argument("--K", type=int, help="length of a builtin distribution")
    p.add_argument("--lam", type=float)

    p = sub.add_parser("sweep", help="output entropies over a (lambda, noise) grid")
    _add_common(p)
    p.add_argument("--lambdas")
    p.add_argument("--noises")
    p.add_argument("--dim", type=int)
    p.add_argument("--seed", type=int)

    p = sub.add_parser("params", help="attenuator/amplifier split of a (lambda, noise) channel")
    _add_common(p)
    p.add_argument("--lam", type=float)
    p.add_argument("--noise", type=float)
    return parser


def resolve_config(args: argparse.Namespace) -> dict:
    cmd = args.command
    cfg = dict(DEFAULTS[cmd])
    if args.config:
        try:
            loaded = json.loads(Path(args.config).read_text())
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(loaded, dict):
            raise UsageError("config file must hold a JSON object")
        for key, val in loaded.items():
            key = key.replace("-", "_")
            if key not in cfg:
                raise UsageError(f"unknown config key {key!r} for {cmd}")
            cfg[key] = val
    for key, val in vars(args).items():
        if key in cfg and val is not None:
            cfg[key] = val
    return cfg


def _open_output(path):
    if path is None:
        return sys.stdout, False
    try:
        return open(path, "w", newline=""), True
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from exc


def _emit(cfg, text: str):
    stream, close = _open_output(cfg["output"])
    try:
        stream.write(text)
    finally:
        if close:
            stream.close()


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def cmd_certify(cfg) -> int:
    dims = parse_dims(cfg["dims"])
    lambdas = parse_floats(cfg["lambdas"])
    noises = parse_floats(cfg["noises"])
    if cfg["trials"] < 1:
        raise UsageError("--trials must be at least 1")
    if any(x < 0 for x in lambdas + noises):
        raise UsageError("lambdas and noises must be >= 0")
    sink_stream = None
    sink = None
    if cfg["trials_csv"]:
        sink_stream, _ = _open_output(cfg["trials_csv"])
        sink = harness.TrialCSVWriter(sink_stream)
    try:
        report = harness.certify_main_theorem(dims, lambdas, noises, int(cfg["trials"]), int(cfg["seed"]),
                                              float(cfg["tol"]), cfg["inputs"], int(cfg["workers"]), sink)
    finally:
        if sink_stream is not None:
            sink_stream.close()
    if cfg["format"] == "json":
        _emit(cfg, report.to_json() + "\n")
    else:
        d = report.to_dict()
        keys = [k for k in d if k not in ("config", "failure_records")]
        _emit(cfg, _csv_text(keys, [[d[k] for k in keys]]))
    if not report.ok:
        print(f"certification failed: {report.failures} majorization, {report.passivity_failures} passivity, "
              f"{report.entropy_failures} entropy failures out of {report.trials} trials "
              f"(worst slack {report.worst_slack:.3e})", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def _make_state(spec: str, dim: int) -> np.ndarray:
    kind, _, arg = str(spec).partition(":")
    try:
        if kind == "fock":
            n = int(arg)
            if not 0 <= n < dim:
                raise UsageError(f"Fock level {n} does not fit in {dim} levels")
            return fock.fock_projector(n, dim)
        if kind == "thermal":
            th = fock.thermal_state(float(arg), dim).matrix
            return th / np.trace(th)
        if kind == "random":
            return fock.random_density(dim, int(arg or 0)).matrix
    except ValueError as exc:
        raise UsageError(f"bad state {spec!r}") from exc
    raise UsageError(f"unknown state {spec!r}; use fock:N, thermal:NBAR or random:SEED")


def cmd_evolve(cfg) -> int:
    dim, steps, t_max = int(cfg["dim"]), int(cfg["steps"]), float(cfg["t_max"])
    if dim < 1 or steps < 1 or not t_max > 0:
        raise UsageError("need --dim >= 1, --steps >= 1 and --t-max > 0")
    rec = harness.trajectory_check(_make_state(cfg["state"], dim), t_max, steps,
                                   feas_tol=float(cfg["feas_tol"]), tol=float(cfg["tol"]))
    header = (["t"] + [f"s_{n}" for n in range(dim)] + [f"sdown_{n}" for n in range(dim)]
              + ["degenerate"] + [f"pop_{n}" for n in range(dim)])
    rows = [[t, *s, *sd, flag, *pop] for t, s, sd, flag, pop in
            zip(rec.times, rec.partial_sums, rec.passive_partial_sums, rec.degenerate_flags,
                rec.populations)]
    if cfg["format"] == "csv":
        _emit(cfg, _csv_text(header, rows))
    else:
        _emit(cfg, json.dumps({
            "times": rec.times.tolist(),
            "partial_sums": rec.partial_sums.tolist(),
            "passive_partial_sums": rec.passive_partial_sums.tolist(),
            "degenerate_flags": rec.degenerate_flags.tolist(),
            "populations": rec.populations.tolist(),
            "derivative_slack": rec.derivative_slack,
            "ode_residual": rec.ode_residual,
            "dominance_slack": rec.dominance_slack,
        }, indent=2) + "\n")
    if not rec.ok:
        print(f"trajectory check failed: derivative slack {rec.derivative_slack:.3e}, "
              f"ODE residual {rec.ode_residual:.3e}, dominance slack {rec.dominance_slack:.3e}",
              file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def _read_weights(path) -> np.ndarray:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    try:
        vals = json.loads(text) if text.lstrip().startswith("[") else text.replace(",", " ").split()
        p = np.array([float(v) for v in vals])
    except ValueError as exc:
        raise UsageError(f"cannot parse weights in {path}") from exc
    if p.size == 0 or np.any(p < 0) or abs(p.sum() - 1.0) > 1e-8:
        raise UsageError(f"{path} does not hold a normalized distribution (sum {p.sum():.10g})")
    return p


def _builtin(spec: str, K):
    kind, _, arg = str(spec).partition(":")
    try:
        if kind == "delta":
            n = int(arg)
            K = n + 1 if K is None else int(K)
            if not 0 <= n < K:
                raise UsageError(f"delta at {n} needs K > {n}")
            return thinning.delta(n, K), None
        mean = float(arg)
        K = 60 if K is None else int(K)
        if kind == "poisson":
            return thinning.poisson(mean, K), ("poisson", mean)
        if kind == "geometric":
            return thinning.geometric(mean, K), ("geometric", mean)
    except ValueError as exc:
        raise UsageError(f"bad distribution {spec!r}") from exc
    raise UsageError(f"unknown distribution {spec!r}; use delta:N, poisson:MEAN or geometric:MEAN")


def _normalized_entropy(p):
    return entropy.shannon(p / p.sum())


def cmd_thin(cfg) -> int:
    lam = float(cfg["lam"])
    if not 0 <= lam <= 1:
        raise UsageError("--lam must lie in [0, 1]")
    if cfg["input"]:
        p, family = _read_weights(cfg["input"]), None
    else:
        p, family = _builtin(cfg["dist"], cfg["K"])
    q = thinning.thin(p, lam)
    summary = {
        "lambda": lam,
        "input_mass": float(p.sum()),
        "output_mass": float(q.sum()),
        "input_entropy": _normalized_entropy(p),
        "output_entropy": _normalized_entropy(q),
    }
    if family is not None:
        kind, mean = family
        ref = (thinning.poisson if kind == "poisson" else thinning.geometric)(lam * mean, p.size)
        summary["reference"] = f"{kind}:{fmt(lam * mean)}"
        summary["l1_to_reference"] = float(np.sum(np.abs(q - ref)))
    if cfg["format"] == "json":
        _emit(cfg, json.dumps({**summary, "input": p.tolist(), "output": q.tolist()}, indent=2) + "\n")
    else:
        rows = [["input", n, v] for n, v in enumerate(p)] + [["output", n, v] for n, v in enumerate(q)]
        rows += [[k, "", v] for k, v in summary.items() if k not in ("lambda", "reference")]
        _emit(cfg, _csv_text(["quantity", "n", "value"], rows))
    return EXIT_OK


SWEEP_FIELDS = ("lambda", "noise", "family", "von_neumann_in", "renyi2_in", "von_neumann_out",
                "renyi2_out", "ordering_ok")


def sweep_rows(lambdas, noises, dim: int, seed: int, tol: float = harness.ENTROPY_TOL) -> list[list]:
    """Output entropies of three inputs sharing one spectrum.

    Families: ``passive`` (the Fock rearrangement), ``reversed`` (Fock
    diagonal, increasing populations) and ``rotated`` (Haar-rotated). Each
    non-passive row records whether the passive output entropy is no larger.
    """
    rng = np.random.default_rng(seed)
    p = np.sort(rng.dirichlet(np.ones(dim)))[::-1]
    inputs = {
        "passive": np.diag(p).astype(complex),
        "reversed": np.diag(p[::-1]).astype(complex),
        "rotated": fock.random_density(dim, rng, p).matrix,
    }
    rows = []
    for lam in lambdas:
        for noise in noises:
            params = channels.make_params(lam, noise)
            ref = None
            for family, rho in inputs.items():
                out, deficit = harness.channel_output(rho, params)
                vn, r2 = entropy.von_neumann(out, deficit), entropy.renyi(out, 2, deficit)
                if ref is None:
                    ref = (vn, r2)
                ok = ref[0] <= vn + tol and ref[1] <= r2 + tol
                rows.append([lam, noise, family, entropy.von_neumann(rho), entropy.renyi(rho, 2),
                             vn, r2, ok])
    return rows


def cmd_sweep(cfg) -> int:
    lambdas, noises = parse_floats(cfg["lambdas"]), parse_floats(cfg["noises"])
    dim = int(cfg["dim"])
    if dim < 1 or any(x < 0 for x in lambdas + noises):
        raise UsageError("need --dim >= 1 and nonnegative grids")
    rows = sweep_rows(lambdas, noises, dim, int(cfg["seed"]))
    if cfg["format"] == "csv":
        _emit(cfg, _csv_text(SWEEP_FIELDS, rows))
    else:
        _emit(cfg, json.dumps([dict(zip(SWEEP_FIELDS, r)) for r in rows], indent=2) + "\n")
    bad = sum(1 for r in rows if not r[-1])
    if bad:
        print(f"{bad} rows violate the passive entropy ordering", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_params(cfg) -> int:
    if cfg["lam"] is None:
        raise UsageError("--lam is required")
    params = channels.make_params(float(cfg["lam"]), float(cfg["noise"]))
    out = {"lambda": params.lam, "noise": params.noise, "eta": params.eta, "kappa": params.kappa}
    if cfg["format"] == "json":
        _emit(cfg, json.dumps(out) + "\n")
    else:
        _emit(cfg, _csv_text(list(out), [list(out.values())]))
    return EXIT_OK


COMMANDS = {"certify": cmd_certify, "evolve": cmd_evolve, "thin": cmd_thin, "sweep": cmd_sweep,
            "params": cmd_params}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        return COMMANDS[args.command](cfg)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GaussMajError, ValueError) as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
