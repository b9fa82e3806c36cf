# -----------------------------------------------------------------------------.
# MIT License

# Copyright (c) 2026 itsalab developers
#
# This file is part of itsalab.

# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in all
# copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.

# -----------------------------------------------------------------------------.
"""Command-line interface: ``itsalab fit | simulate | dgp | example``."""
import argparse
import logging
import os
import sys
import time

from pydantic import ValidationError

from itsalab.cli.reports import did_record, format_example_report, format_fit_report
from itsalab.dgp.generator import gen_panel
from itsalab.dgp.panel_io import read_panel_csv, read_panel_metadata, write_panel_csv
from itsalab.errors import ConditionFailedError, EstimationError, PanelError
from itsalab.estimation.olsnw import HacConfig, fit_ols_nw
from itsalab.estimation.praisk import PwConfig, fit_pw
from itsalab.model.panel import infer_intervention_time
from itsalab.model.results import OLS_NW, PW
from itsalab.settings.config_io import read_run_config
from itsalab.settings.preset_registry import PresetRegistry
from itsalab.simulate.engine import resolve_n_jobs, run_grid
from itsalab.simulate.results import run_metadata, write_metadata, write_results
from itsalab.utils.directories import ensure_directory, remove_file_if_exists
from itsalab.utils.json import write_json
from itsalab.utils.logger import configure_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT_ERROR = 2
EXIT_ESTIMATION_ERROR = 3

METHOD_CHOICES = {"olsnw": [OLS_NW], "pw": [PW], "both": [OLS_NW, PW]}
EXAMPLE_PRESET = "prediabetes"


def _load_config(config):
    """Return the RunConfig of a preset name or configuration file path."""
    presets = PresetRegistry.get_instance()
    if config in presets:
        return presets.get_config(config)
    return read_run_config(config)


def _fit(method, panel, intervention, ar_order=1, lag=None):
    if method == OLS_NW:
        return fit_ols_nw(panel, intervention=intervention, hac=HacConfig(lag=lag))
    return fit_pw(panel, intervention=intervention, cfg=PwConfig(k=ar_order))


def _fit_records(fits, alpha):
    return [
        {
            **fit.to_dict(),
            "did_level": did_record(fit, "level", alpha=alpha),
            "did_trend": did_record(fit, "trend", alpha=alpha),
        }
        for fit in fits
    ]


def _panel_seed(filepath):
    seed = read_panel_metadata(filepath).get("seed")
    return seed if isinstance(seed, int) else None


####-------------------------------------------------------------------------------------------------------------------.
#### Subcommands


def cmd_fit(args):
    """Fit the MG-ITSA model to a panel CSV file and print the coefficient tables."""
    panel = read_panel_csv(args.input)
    intervention = args.intervention if args.intervention is not None else infer_intervention_time(panel)
    fits = [_fit(method, panel, intervention, args.ar_order, args.lag) for method in METHOD_CHOICES[args.method]]
    for fit in fits:
        print(format_fit_report(fit, alpha=args.alpha))
        print()
    if args.out is not None:
        remove_file_if_exists(args.out, force=args.force)
        settings = {
            "method": args.method,
            "ar_order": args.ar_order,
            "lag": args.lag,
            "intervention": int(intervention),
            "alpha": args.alpha,
        }
        report = {
            **run_metadata(settings, _panel_seed(args.input)),
            "input": os.path.abspath(args.input),
            "intervention": int(intervention),
            "alpha": args.alpha,
            "settings": settings,
            "fits": _fit_records(fits, args.alpha),
        }
        write_json(report, args.out)
        logger.info(f"Fit report written to {args.out}")
    return EXIT_OK


def cmd_simulate(args):
    """Run the Monte Carlo grids of a configuration and write the results table with its metadata."""
    config = _load_config(args.config)
    if args.replications is not None:
        config = config.with_replications(args.replications)
    if not config.grids:
        raise ValueError(f"The configuration {args.config} does not define simulation grids.")
    conditions = config.conditions()
    n_jobs = resolve_n_jobs(args.threads)
    out_dir = ensure_directory(args.out)
    results_path = os.path.join(out_dir, "results.csv")
    metadata_path = os.path.join(out_dir, "results.json")
    overwrite = args.force or args.resume
    for filepath in [results_path, metadata_path]:
        remove_file_if_exists(filepath, force=overwrite)
    logger.info(f"Running {len(conditions)} conditions with {n_jobs} workers.")
    tic = time.time()
    frame = run_grid(
        conditions,
        n_jobs=n_jobs,
        partial_dir=os.path.join(out_dir, "conditions"),
        resume=args.resume,
    )
    write_results(frame, results_path, force=True)
    seeds = sorted({grid.base_seed for grid in config.grids})
    write_metadata(
        metadata_path,
        config=config.to_dict(),
        seed=seeds[0],
        wall_time=time.time() - tic,
        n_conditions=len(conditions),
        force=True,
    )
    logger.info(f"Results written to {results_path}")
    failed = frame[frame["power"].isna() & (frame["n_failed"] > 0)]
    if not failed.empty:
        logger.error(f"{len(failed)} of {len(frame)} result rows have too many failed replications (NaN measures).")
        return EXIT_ESTIMATION_ERROR
    return EXIT_OK


def cmd_dgp(args):
    """Generate one panel CSV file from a configuration scenario."""
    if (args.config is None) == (args.example is None):
        raise ValueError("Specify either a configuration file or --example.")
    config = _load_config(args.example if args.example is not None else args.config)
    scenario = config.scenario_for(ar_order=args.ar, seed=args.seed)
    panel = gen_panel(scenario)
    metadata = {
        **run_metadata(scenario.model_dump(mode="json"), scenario.seed),
        "rho": scenario.ar.rho,
        "sigma": scenario.ar.sigma,
        "betas": scenario.resolve_betas().tolist(),
        "intervention": scenario.intervention_time(),
        "n_periods": scenario.n_periods,
        "n_controls": scenario.n_controls,
    }
    write_panel_csv(panel, args.out, metadata=metadata, force=args.force)
    logger.info(f"Panel written to {args.out}")
    return EXIT_OK


def cmd_example(args):
    """Fit both methods to the applied example dataset and compare the trend effects."""
    config = PresetRegistry.get_instance().get_config(EXAMPLE_PRESET)
    scenario = config.scenario_for(ar_order=args.ar, seed=args.seed)
    tic = time.time()
    panel = gen_panel(scenario)
    t_star = scenario.intervention_time()
    fits = [
        fit_ols_nw(panel, intervention=t_star, hac=HacConfig(lag=args.ar)),
        fit_pw(panel, intervention=t_star, cfg=PwConfig(k=args.ar)),
    ]
    report = format_example_report(
        fits,
        ar_order=args.ar,
        rho=scenario.ar.rho,
        true_effect=scenario.true_effect("trend"),
        seed=scenario.seed,
        alpha=args.alpha,
    )
    print(report)
    if args.out is not None:
        example_config = {
            "preset": EXAMPLE_PRESET,
            "ar": args.ar,
            "alpha": args.alpha,
            "scenario": scenario.model_dump(mode="json"),
        }
        write_metadata(
            args.out,
            config=example_config,
            seed=scenario.seed,
            wall_time=time.time() - tic,
            force=args.force,
            extra={"fits": _fit_records(fits, args.alpha)},
        )
        logger.info(f"Example report written to {args.out}")
    return EXIT_OK


####-------------------------------------------------------------------------------------------------------------------.
#### Parser


def _positive_int(value):
    value = int(value)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser():
    from itsalab import __version__

    parser = argparse.ArgumentParser(
        prog="itsalab",
        description="Multiple-group interrupted time series analysis with autocorrelated errors.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  itsalab dgp --example prediabetes --ar 2 --out panel.csv
  itsalab fit panel.csv --method both --ar-order 2
  itsalab simulate smoke --out results/smoke
  itsalab example --ar 3
        """,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="Log debug messages")
    subparsers = parser.add_subparsers(dest="command", required=True)

    fit = subparsers.add_parser("fit", help="Fit a panel CSV file")
    fit.add_argument("input", help="Panel CSV file (unit_id,t,treated,post,y)")
    fit.add_argument("--method", choices=list(METHOD_CHOICES), default="both")
    fit.add_argument("--ar-order", type=_positive_int, default=1, help="Prais-Winsten AR order (default: 1)")
    fit.add_argument("--lag", type=int, default=None, help="Newey-West lag (default: automatic)")
    fit.add_argument("--intervention", type=int, default=None, help="First post period (default: from 'post')")
    fit.add_argument("--alpha", type=float, default=0.05)
    fit.add_argument("--out", default=None, help="Write a JSON report")
    fit.add_argument("--force", action="store_true", help="Overwrite the JSON report")
    fit.set_defaults(func=cmd_fit)

    simulate = subparsers.add_parser("simulate", help="Run Monte Carlo grids")
    simulate.add_argument("config", help="Preset name or JSON/YAML configuration file")
    simulate.add_argument("--out", required=True, help="Output directory")
    simulate.add_argument("--threads", type=_positive_int, default=None, help="Workers (default: ITSA_LAB_THREADS)")
    simulate.add_argument("--replications", type=_positive_int, default=None)
    simulate.add_argument("--resume", action="store_true", help="Reuse completed condition files")
    simulate.add_argument("--force", action="store_true", help="Overwrite existing results")
    simulate.set_defaults(func=cmd_simulate)

    dgp = subparsers.add_parser("dgp", help="Generate a panel CSV file")
    dgp.add_argument("config", nargs="?", default=None, help="Preset name or JSON/YAML configuration file")
    dgp.add_argument("--example", default=None, help="Preset name (e.g. prediabetes)")
    dgp.add_argument("--ar", type=_positive_int, default=None, help="AR variant of the preset")
    dgp.add_argument("--seed", type=int, default=None)
    dgp.add_argument("--out", required=True, help="Output CSV file")
    dgp.add_argument("--force", action="store_true", help="Overwrite the output file")
    dgp.set_defaults(func=cmd_dgp)

    example = subparsers.add_parser("example", help="Run the applied example")
    example.add_argument("--ar", type=int, choices=[1, 2, 3], default=2)
    example.add_argument("--seed", type=int, default=None)
    example.add_argument("--alpha", type=float, default=0.05)
    example.add_argument("--out", default=None, help="Write a JSON report with the run metadata")
    example.add_argument("--force", action="store_true", help="Overwrite the JSON report")
    example.set_defaults(func=cmd_example)
    return parser


def main(argv=None):
    """Run the command line and return its exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(verbose=args.verbose)
    try:
        return args.func(args)
    except PanelError as e:
        logger.error(f"Invalid panel: {e}")
        return EXIT_INPUT_ERROR
    except (EstimationError, ConditionFailedError) as e:
        logger.error(f"Estimation failed: {e}")
        return EXIT_ESTIMATION_ERROR
    except (ValidationError, ValueError, OSError) as e:
        logger.error(f"Invalid input: {e}")
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
