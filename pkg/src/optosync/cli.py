"""Command-line entry point.

Subcommands::

    simulate   time-domain run -> time-series CSV
    floquet    analytic harmonic-balance solution -> JSON report
    spectrum   spectral fluctuation moments and K -> JSON (or CSV)
    sweep      parameter grid -> table CSV
    stability  Routh-Hurwitz report -> JSON

Each accepts ``--config FILE``, ``--set section.key=value`` overrides,
``--out PATH``, and (for sweeps) ``--threads N``.  Exit codes: 0 success,
1 input error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import floquet as flo
from . import harness
from . import spectrum as spec
from .config import ConfigError, LoadedConfig, load_config, load_overrides_only
from .meanfield import DivergenceError
from .params import ParameterError

_NUMERICAL_ERRORS = (DivergenceError, spec.InstabilityError,
                     spec.QuadratureToleranceError, flo.SingularSystemError)


def _load(args) -> LoadedConfig:
    overrides = args.set or []
    if args.config:
        return load_config(args.config, overrides)
    return load_overrides_only(overrides)


def _cmd_simulate(args) -> int:
    loaded = _load(args)
    result = harness.simulate(loaded.params, loaded.run)
    out = args.out or "simulate.csv"
    harness.simulation_csv(result, out)
    report = harness.limit_cycle_report(result)
    window = loaded.run.window(loaded.params)
    arrays = result.metric_arrays()
    sq_bar = harness.time_average(arrays["t"], arrays["Sq"], window)
    ed_bar = harness.time_average(arrays["t"], arrays["ED"], window)
    print(f"wrote {out}: {len(result.traj.t)} samples, "
          f"Sq_bar={sq_bar:.6g}, ED_bar={ed_bar:.6g}, "
          f"recurrence={report.recurrence_error:.3g}")
    return 0


def _cmd_floquet(args) -> int:
    loaded = _load(args)
    solution = flo.solve_floquet(loaded.params)
    report = flo.stability_check(solution.f0, solution.f1, solution.f2,
                                 solution.delta_eff, loaded.params)
    payload = flo.report_dict(solution, report)
    _write_json(args.out or "floquet.json", payload)
    print(f"wrote {args.out or 'floquet.json'}: stable={report.stable}")
    return 0


def _cmd_spectrum(args) -> int:
    loaded = _load(args)
    solution = flo.solve_floquet(loaded.params)
    ctx = spec.SpectralContext.from_solution(solution, loaded.params)
    moments = spec.mean_square_fluctuations(ctx)
    payload = {
        "var_q_minus": moments.var_q_minus,
        "var_p_minus": moments.var_p_minus,
        "var_p_plus": moments.var_p_plus,
        "K": spec.k_condition(moments),
        "quad_err_var_q_minus": moments.errors["var_q_minus"],
        "quad_err_var_p_minus": moments.errors["var_p_minus"],
        "quad_err_var_p_plus": moments.errors["var_p_plus"],
    }
    out = args.out or "spectrum.json"
    if out.endswith(".csv"):
        harness.write_csv(out, list(payload.keys()), [list(payload.values())])
    else:
        _write_json(out, payload)
    print(f"wrote {out}: K={payload['K']:.6g}")
    return 0


def _cmd_sweep(args) -> int:
    loaded = _load(args)
    if loaded.sweep is None:
        raise ConfigError("sweep subcommand requires a [sweep] section")
    table = harness.run_sweep(loaded.sweep, loaded.params, loaded.run,
                              workers=args.threads)
    out = args.out or "sweep.csv"
    table.to_csv(out)
    failed = sum(1 for row in table.rows if row[-1] != "ok")
    print(f"wrote {out}: {len(table.rows)} rows, {failed} failed points")
    return 0


def _cmd_stability(args) -> int:
    loaded = _load(args)
    solution = flo.solve_floquet(loaded.params)
    report = flo.stability_check(solution.f0, solution.f1, solution.f2,
                                 solution.delta_eff, loaded.params)
    payload = flo.report_dict(solution, report)["stability"]
    out = args.out or "stability.json"
    _write_json(out, payload)
    print(f"wrote {out}: stable={report.stable}, "
          f"max Re(eig)={report.eigenvalue_max_real_part:.6g}")
    return 0


def _write_json(path: str, payload: dict):
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="optosync",
        description="Quantum synchronization and entanglement of two "
                    "mechanical oscillators coupled to a driven cavity")
    sub = parser.add_subparsers(dest="command", required=True)
    commands = {
        "simulate": _cmd_simulate,
        "floquet": _cmd_floquet,
        "spectrum": _cmd_spectrum,
        "sweep": _cmd_sweep,
        "stability": _cmd_stability,
    }
    for name, func in commands.items():
        p = sub.add_parser(name)
        p.add_argument("--config", help="config file (INI-style sections)")
        p.add_argument("--out", help="output path")
        p.add_argument("--set", action="append", metavar="KEY=VALUE",
                       help="override a config value (section.key=value)")
        p.add_argument("--threads", type=int, default=1,
                       help="worker processes for sweeps")
        p.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ParameterError, flo.FloquetPreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except _NUMERICAL_ERRORS as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
