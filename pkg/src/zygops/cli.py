"""Command-line front end.

    zygops analyze       --config cfg.toml [--out DIR] [--set k=v ...] [--require-bounded]
    zygops sweep         --config cfg.toml [--out DIR] [--set k=v ...]
    zygops monomials     --config cfg.toml [--out DIR] [--set k=v ...]
    zygops weighted-type --config cfg.toml [--out DIR] [--set k=v ...]
    zygops verify        --config cfg.toml [--out DIR] [--set k=v ...] [--suite NAME ...]

Exit codes: 0 success; 1 analysis-level failure (a verify check failed, or
--require-bounded hit a non-bounded operator); 2 configuration or expression
errors; 3 numeric/domain errors during analysis.

Reports are envelope JSON files whose `payload` section is deterministic for
a fixed config and toolkit version; profiles and monomial tables are also
emitted as CSV for plotting.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .characterize import (
    BOUNDED,
    classify_boundedness,
    essential_norm_estimate,
)
from .config import RunConfig, load_config
from .errors import ConfigError, NotBoundedError, ParseError, ZygopsError
from .reports import (
    SCHEMA_VERSION,
    StageTimer,
    agreement_rows,
    atomic_write_text,
    make_envelope,
    monomial_rows,
    profile_rows,
    write_csv,
    write_report,
)
from .verification import run_suites

EXIT_OK = 0
EXIT_ANALYSIS = 1
EXIT_CONFIG = 2
EXIT_NUMERIC = 3


def _payload_header(command: str, config: RunConfig) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "config": config.raw,
    }


def cmd_analyze(config: RunConfig, out_dir: Path, require_bounded: bool) -> int:
    timer = StageTimer()
    timer.start("setup")
    op = config.build_operator()
    pair = config.space_pair()
    timer.stop()

    payload = _payload_header("analyze", config)
    payload["operator"] = op.to_payload()

    timer.start("boundedness")
    bound = classify_boundedness(op, pair, config.analysis)
    timer.stop()
    results = {"boundedness": bound.to_payload()}

    if bound.verdict == BOUNDED:
        timer.start("essential_norm")
        ess = essential_norm_estimate(op, pair, config.analysis, boundedness=bound)
        timer.stop()
        results["essential_norm"] = ess.to_payload()
        results["compactness"] = "compact" if ess.compact else "not_compact"
    else:
        results["essential_norm"] = None
        results["compactness"] = None
        results["note"] = f"operator is {bound.verdict}; essential norm not defined here"
    payload["results"] = results

    envelope = make_envelope(__version__, "analyze", payload, timer.timings)
    write_report(out_dir / "analyze_report.json", envelope)
    write_csv(out_dir / "profiles.csv", ("quantity", "level", "radius_or_eps", "value"),
              profile_rows(payload))
    write_csv(out_dir / "monomials.csv", ("j", "value"), monomial_rows(payload))
    rows = agreement_rows(payload)
    if rows:
        write_csv(out_dir / "agreement.csv", rows[0], rows[1:])
    print(f"analyze: {bound.verdict}"
          + (f", {results['compactness']}" if results["compactness"] else "")
          + f" -> {out_dir / 'analyze_report.json'}")
    if require_bounded and bound.verdict != BOUNDED:
        print(f"operator is {bound.verdict} (required bounded)", file=sys.stderr)
        return EXIT_ANALYSIS
    return EXIT_OK


def _sweep_cells(config: RunConfig):
    sweep = config.sweep
    alphas = sweep.get("alpha", [config.alpha])
    betas = sweep.get("beta", [config.beta])
    if "param" in sweep:
        name, values = sweep["param"], sweep["values"]
        for v in values:
            for alpha in alphas:
                for beta in betas:
                    yield {"alpha": alpha, "beta": beta, name: v}
    else:
        for alpha in alphas:
            for beta in betas:
                yield {"alpha": alpha, "beta": beta}


def cmd_sweep(config: RunConfig, out_dir: Path) -> int:
    if not config.sweep:
        raise ConfigError("sweep command needs a [sweep] block")
    timer = StageTimer()
    rows = []
    cells = []
    timer.start("sweep")
    from dataclasses import replace

    for cell in _sweep_cells(config):
        cell_cfg = replace(config)
        if "param" in config.sweep:
            name = config.sweep["param"]
            cell_cfg.params = dict(config.params)
            cell_cfg.params[name] = complex(cell[name])
        cell_cfg.alpha = float(cell["alpha"]) if cell["alpha"] is not None else None
        cell_cfg.beta = float(cell["beta"]) if cell["beta"] is not None else None
        op = cell_cfg.build_operator()
        pair = cell_cfg.space_pair()
        bound = classify_boundedness(op, pair, config.analysis)
        estimate = None
        compact = None
        if bound.verdict == BOUNDED:
            ess = essential_norm_estimate(op, pair, config.analysis, boundedness=bound)
            estimate = ess.estimate
            compact = "compact" if ess.compact else "not_compact"
        cell_payload = {k: (v if not isinstance(v, complex) else [v.real, v.imag])
                        for k, v in cell.items()}
        cells.append({"cell": cell_payload, "verdict": bound.verdict,
                      "essential_estimate": estimate, "compactness": compact})
        rows.append((*(cell[k] for k in sorted(cell)), bound.verdict,
                     estimate if estimate is not None else "",
                     compact if compact is not None else ""))
    timer.stop()

    payload = _payload_header("sweep", config)
    payload["results"] = {"cells": cells}
    envelope = make_envelope(__version__, "sweep", payload, timer.timings)
    write_report(out_dir / "sweep_report.json", envelope)
    header = (*sorted(next(iter(_sweep_cells(config)))), "verdict", "essential_estimate",
              "compactness")
    write_csv(out_dir / "sweep.csv", header, rows)
    print(f"sweep: {len(cells)} cells -> {out_dir / 'sweep.csv'}")
    return EXIT_OK


def cmd_monomials(config: RunConfig, out_dir: Path) -> int:
    from .operators import monomial_sequence

    timer = StageTimer()
    timer.start("monomials")
    op = config.build_operator()
    pair = config.space_pair()
    seq = monomial_sequence(op, pair, config.analysis.grid, config.analysis.monomial_count)
    timer.stop()

    payload = _payload_header("monomials", config)
    payload["operator"] = op.to_payload()
    payload["results"] = {"monomials": seq.to_payload()}
    envelope = make_envelope(__version__, "monomials", payload, timer.timings)
    write_report(out_dir / "monomials_report.json", envelope)
    write_csv(out_dir / "monomials.csv", ("j", "value"), [(j, v) for j, v in seq.terms])
    trend = ("diverging" if seq.trend_slope > config.analysis.tau_divergence
             else "vanishing" if seq.tail_limit == 0.0 else "plateau")
    print(f"monomials: sup {seq.sup_value:.6g} at j={seq.sup_at}, tail {trend}"
          f" -> {out_dir / 'monomials.csv'}")
    return EXIT_OK


def cmd_weighted_type(config: RunConfig, out_dir: Path) -> int:
    from .characterize import weighted_type_analyze

    timer = StageTimer()
    timer.start("weighted_type")
    nu, omega = config.weights()
    u = config.build_symbol(config.u_spec, "operator.u")
    phi = config.build_symbol(config.phi_spec, "operator.phi")
    report = weighted_type_analyze(u, phi, nu, omega, config.analysis)
    timer.stop()

    payload = _payload_header("weighted-type", config)
    payload["results"] = {"weighted_type": report.to_payload()}
    envelope = make_envelope(__version__, "weighted-type", payload, timer.timings)
    write_report(out_dir / "weighted_type_report.json", envelope)
    write_csv(out_dir / "weighted_monomials.csv", ("n", "ratio"),
              [(n, v) for n, v in report.monomial_ratios])
    write_csv(out_dir / "profiles.csv", ("quantity", "level", "radius_or_eps", "value"),
              profile_rows(payload))
    print(f"weighted-type: sup side {report.sup_side.value:.6g}, "
          f"monomial side {report.monomial_sup:.6g}, "
          f"essential {report.essential_estimate:.6g} -> {out_dir}")
    return EXIT_OK


def cmd_verify(config: RunConfig, out_dir: Path, suites) -> int:
    names = suites or config.verify_suites or None
    try:
        results, timings = run_suites(names)
    except KeyError as exc:
        raise ConfigError(str(exc)) from exc

    lines = []
    failed = 0
    for r in results:
        lines.append(json.dumps(r.to_payload(), sort_keys=True))
        status = "PASS" if r.passed else "FAIL"
        if not r.passed:
            failed += 1
        print(f"[{status}] {r.suite}/{r.name}"
              + (f"  value={r.value!r} expected={r.expected!r}" if not r.passed else ""))
    atomic_write_text(out_dir / "verify_results.jsonl", "\n".join(lines) + "\n")

    payload = _payload_header("verify", config)
    payload["results"] = {
        "checks": [r.to_payload() for r in results],
        "passed": len(results) - failed,
        "failed": failed,
    }
    envelope = make_envelope(__version__, "verify", payload, timings)
    write_report(out_dir / "verify_report.json", envelope)
    print(f"verify: {len(results) - failed}/{len(results)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_ANALYSIS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zygops", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--version", action="version", version=f"zygops {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("analyze", "sweep", "monomials", "weighted-type", "verify"):
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="TOML run configuration")
        p.add_argument("--out", default=None, help="output directory (default: [output].dir or .)")
        p.add_argument("--set", dest="overrides", action="append", default=[],
                       metavar="KEY=VALUE", help="override a config key (dotted path)")
        if name == "analyze":
            p.add_argument("--require-bounded", action="store_true",
                           help="exit 1 when the operator is not bounded")
        if name == "verify":
            p.add_argument("--suite", dest="suites", action="append", default=[],
                           help="suite name (repeatable; default: config or all)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config, args.overrides)
        out_dir = Path(args.out or config.output_dir or ".")
        if args.command == "analyze":
            return cmd_analyze(config, out_dir, args.require_bounded)
        if args.command == "sweep":
            return cmd_sweep(config, out_dir)
        if args.command == "monomials":
            return cmd_monomials(config, out_dir)
        if args.command == "weighted-type":
            return cmd_weighted_type(config, out_dir)
        if args.command == "verify":
            return cmd_verify(config, out_dir, args.suites)
        raise ConfigError(f"unknown command {args.command!r}")
    except (ConfigError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NotBoundedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ANALYSIS
    except ZygopsError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
