"""Command line: ``gpysieve <group> <action> [--config PATH] [--out PATH]``.

Groups and actions::

    tuples      check | search | series | roots
    weights     eval | compare-paths
    averages    run | discrepancy
    thresholds  table | solve
    densities   table | audit
    hunt        window | tally | shape

Parameters come from a JSON config file, optionally overridden with
``--param KEY=VALUE`` (VALUE parsed as JSON when possible).  Exit status is
0 on success, 1 on invalid input and 2 when a resource limit is hit.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict, dataclass, field, fields
from fractions import Fraction

import numpy as np

from . import averages, densities, thresholds, tuples, weights, witness
from .arith import factor_segment
from .config import MEMORY_ENV_VAR
from .errors import InputError, ResourceError
from .reports import to_csv, to_json

COMMANDS = {
    "tuples": ("check", "search", "series", "roots"),
    "weights": ("eval", "compare-paths"),
    "averages": ("run", "discrepancy"),
    "thresholds": ("table", "solve"),
    "densities": ("table", "audit"),
    "hunt": ("window", "tally", "shape"),
}


@dataclass
class ExperimentConfig:
    N: int = 10**5
    tuple: str = "{0,2}"
    R_exponent: float = 0.25
    R: float | None = None
    u: float = 1.0
    eta: float = 0.2
    r: int = 8
    l: int = 0
    n: list = field(default_factory=lambda: [1000])
    window: int = 10**4
    k: int = 6
    ks: list | None = None
    d: int = 1
    theta: str = "1/2"
    variant: str = "all-k"
    target_rel_err: float = 1e-6
    M: int | None = None
    Q: int | None = None
    target: str = "liouville"
    U: int = 30
    d_min: int = 2
    d_max: int = 30
    c_exponent: float | None = witness.DEFAULT_C_EXPONENT
    N_grid: list = field(default_factory=lambda: [10**5, 10**6])
    j: int | None = None
    restrict: bool = True
    output_path: str | None = None
    threads: int = 1

    def validate(self) -> None:
        if not 0 < self.R_exponent <= 0.5:
            raise InputError(f"R_exponent must be in (0, 0.5], got {self.R_exponent}")
        if not 0 < self.eta < 1:
            raise InputError(f"eta must be in (0, 1), got {self.eta}")
        if int(self.threads) < 1:
            raise InputError(f"threads must be >= 1, got {self.threads}")
        if self.variant not in ("all-k", "k-minus-1"):
            raise InputError(f"variant must be 'all-k' or 'k-minus-1', got {self.variant!r}")

    def resolved_R(self) -> float:
        return float(self.R) if self.R is not None else float(self.N) ** self.R_exponent


_TYPES = {
    "N": int, "r": int, "l": int, "window": int, "k": int, "d": int, "U": int,
    "d_min": int, "d_max": int, "threads": int,
    "R_exponent": float, "u": float, "eta": float, "target_rel_err": float,
}


def load_config(path: str | None, overrides: list[str]) -> ExperimentConfig:
    raw: dict = {}
    if path is not None:
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read config {path}: {exc}") from exc
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(
                f"malformed JSON in {path}: line {exc.lineno}, column {exc.colno}: {exc.msg}"
            ) from exc
        if not isinstance(raw, dict):
            raise InputError(f"config {path} must hold a JSON object")
    for item in overrides:
        if "=" not in item:
            raise InputError(f"--param expects KEY=VALUE, got {item!r}")
        key, val = item.split("=", 1)
        try:
            raw[key] = json.loads(val)
        except json.JSONDecodeError:
            raw[key] = val
    names = {f.name for f in fields(ExperimentConfig)}
    unknown = sorted(set(raw) - names)
    if unknown:
        raise InputError(f"unknown config field(s): {', '.join(unknown)}")
    for key, typ in _TYPES.items():
        if key in raw and raw[key] is not None:
            v = raw[key]
            if isinstance(v, bool) or not isinstance(v, (int, float)) or (typ is int and v != int(v)):
                raise InputError(f"field {key!r}: expected {typ.__name__}, got {v!r}")
            raw[key] = typ(v)
    if "theta" in raw:
        raw["theta"] = str(raw["theta"])
    cfg = ExperimentConfig(**raw)
    cfg.validate()
    return cfg


# ------------------------------------------------------------------ handlers


def _tuple(cfg: ExperimentConfig, positional: str | None) -> tuples.KTuple:
    return tuples.KTuple.parse(positional if positional else cfg.tuple)


def cmd_tuples(action, cfg, pos):
    if action == "check":
        H = _tuple(cfg, pos)
        adm = tuples.is_admissible(H)
        nu = {str(p): tuples.residue_count(H, p) for p in range(2, H.k + 1) if all(p % q for q in range(2, p))}
        return "json", {"tuple": str(H), "k": H.k, "admissible": adm,
                        "verdict": "admissible" if adm else "inadmissible", "nu_p": nu}
    if action == "search":
        ks = cfg.ks if cfg.ks is not None else [cfg.k]
        rows = []
        for k in ks:
            D, w = tuples.min_diameter_search(int(k))
            rows.append({"k": int(k), "diameter": D, "witness": str(w)})
        return "csv", rows
    if action == "series":
        H = _tuple(cfg, pos)
        v = tuples.singular_series(H, cfg.target_rel_err)
        return "json", {"tuple": str(H), "value": v.value,
                        "relative_error_bound": v.relative_error_bound,
                        "truncation_prime": v.truncation_prime}
    H = _tuple(cfg, pos)
    roots = tuples.roots_mod(H, cfg.d)
    return "json", {"tuple": str(H), "d": cfg.d, "roots": roots, "nu_d": len(roots)}


def cmd_weights(action, cfg, pos):
    H = _tuple(cfg, pos)
    R = cfg.resolved_R()
    if action == "eval":
        ns = [int(x) for x in cfg.n]
        lo = max(2, min(ns))
        seg = factor_segment(lo, max(ns) + H.elements[-1] + 1 - lo)
        params = weights.WeightParams(H, R, cfg.u)
        rows = [{
            "n": n,
            "lambda_l0": weights.lambda_R(n, H, 0, R, seg),
            "lambda_l1": weights.lambda_R(n, H, 1, R, seg),
            "a_n": weights.weight_a(n, params, seg),
        } for n in ns]
        return "csv", rows
    start, length = cfg.N, cfg.window
    batch = weights.batch_lambda_window(start, length, H, cfg.l, R)
    seg = factor_segment(start, length + H.elements[-1])
    per_n = np.array([weights.lambda_R(n, H, cfg.l, R, seg) for n in range(start, start + length)])
    diff = np.abs(batch - per_n)
    return "json", {"tuple": str(H), "start": start, "length": length, "l": cfg.l, "R": R,
                    "max_abs_diff": float(diff.max()), "agree_1e-6": bool(diff.max() < 1e-6)}


def cmd_averages(action, cfg, pos):
    if action == "run":
        H = _tuple(cfg, pos)
        params = weights.WeightParams(H, cfg.resolved_R(), cfg.u)
        rep = averages.empirical_averages(cfg.N, params, cfg.r, cfg.eta, workers=cfg.threads)
        return "json", rep.to_dict()
    M = cfg.M if cfg.M is not None else cfg.N
    Q = cfg.Q if cfg.Q is not None else math.isqrt(M)
    if cfg.target == "liouville":
        Es = averages.lambda_discrepancies(M, range(1, Q + 1))
        rows = [{"q": q, "E": int(e), "ceil_M_over_q": -(-M // q)} for q, e in zip(range(1, Q + 1), Es)]
        return "csv", rows
    total = averages.averaged_discrepancy(M, Q, cfg.target)
    return "json", {"N": M, "Q": Q, "target": cfg.target, "sum": total, "normalized": total / (M * Q)}


def cmd_thresholds(action, cfg, pos):
    if action == "table":
        return "csv", thresholds.constants_table()
    rep = thresholds.threshold_report(cfg.k, Fraction(cfg.theta), cfg.variant)
    d = rep.to_dict()
    d["u_min"] = rep.u_interval.lower
    d["ratio_threshold"] = thresholds.ratio_threshold(cfg.k, cfg.variant)[0]
    return "json", d


def cmd_densities(action, cfg, pos):
    if action == "table":
        return "csv", densities.density_table()
    a = densities.multiplicity_audit(cfg.k, cfg.U)
    d = asdict(a)
    d.pop("multiplicity")
    d["ok"] = a.ok
    return "json", d


def cmd_hunt(action, cfg, pos):
    if action == "window":
        rep = witness.hunt_window(cfg.N, _tuple(cfg, pos), cfg.r, workers=cfg.threads)
        return "json", rep.to_dict()
    if action == "tally":
        ds = [d for d in range(cfg.d_min, cfg.d_max + 1) if d % 2 == 0 and d != 0]
        tallies = witness.tally_lambda_shifts(cfg.N, ds, cfg.c_exponent)
        rows = [row for d in sorted(tallies) for row in tallies[d].rows()]
        return "csv", rows
    rep = witness.shape_check(_tuple(cfg, pos), cfg.N_grid, j=cfg.j, rho=cfg.R_exponent,
                              eta=cfg.eta, restrict=cfg.restrict, workers=cfg.threads)
    d = asdict(rep)
    d["bounded_away"] = rep.bounded_away
    return "json", d


HANDLERS = {
    "tuples": cmd_tuples, "weights": cmd_weights, "averages": cmd_averages,
    "thresholds": cmd_thresholds, "densities": cmd_densities, "hunt": cmd_hunt,
}

CSV_COLUMNS = {
    ("thresholds", "table"): ["constant", "k", "variant", "derived_value", "paper_value",
                              "witness", "theta", "u_min"],
    ("densities", "table"): ["k", "P", "phi_P", "d0_bound", "d1_bound", "set", "paper_value", "match"],
    ("hunt", "tally"): ["d", "N", "condition", "b", "count"],
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gpysieve", description=__doc__.split("\n")[0])
    p.add_argument("group", choices=sorted(COMMANDS))
    p.add_argument("action")
    p.add_argument("tuple", nargs="?", default=None, help="tuple text such as {0,2,6}")
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--out", help="output file (.csv or .json); stdout when omitted")
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--seed", type=int, default=None, help="reserved; all computation is deterministic")
    p.add_argument("--param", action="append", default=[], metavar="KEY=VALUE")
    p.epilog = f"Memory budget: set {MEMORY_ENV_VAR} (MiB)."
    return p


def run(argv: list[str] | None = None, stdout=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    args = build_parser().parse_args(argv)
    try:
        if args.action not in COMMANDS[args.group]:
            raise InputError(
                f"unknown action {args.action!r} for {args.group}; choose from {COMMANDS[args.group]}"
            )
        overrides = list(args.param)
        if args.threads is not None:
            overrides.append(f"threads={args.threads}")
        cfg = load_config(args.config, overrides)
        out_path = args.out or cfg.output_path
        kind, payload = HANDLERS[args.group](args.action, cfg, args.tuple)
        resolved = asdict(cfg)
        if args.tuple:
            resolved["tuple"] = args.tuple
        resolved = {"command": f"{args.group} {args.action}", **resolved}
        if out_path and out_path.endswith(".json") and kind == "csv":
            kind = "json"
            payload = {"rows": payload}
        if kind == "csv":
            text = to_csv(payload, CSV_COLUMNS.get((args.group, args.action)), resolved)
        else:
            text = to_json(payload, resolved)
        if out_path:
            with open(out_path, "w") as fh:
                fh.write(text)
        else:
            stdout.write(text)
        return 0
    except (ResourceError, MemoryError) as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return 2
    except (InputError, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
