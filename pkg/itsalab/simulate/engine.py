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
"""Monte Carlo engine.

Replications are grouped in chunks and the chunks of all conditions are dispatched
together to a joblib pool. Each replication draws from the substream
(base seed, dataset key, replication index), so results do not depend on the
number of workers or on the execution order.
"""
import logging
import os
import warnings

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from itsalab.dgp.generator import gen_panel
from itsalab.errors import ConditionFailedError, ConvergenceWarning, ItsaError
from itsalab.estimation.olsnw import fit_ols_nw
from itsalab.estimation.praisk import fit_pw
from itsalab.model.results import OLS_NW
from itsalab.simulate.condition import SimCondition, condition_hash, condition_key, dataset_key
from itsalab.simulate.metrics import failed_summary, summarize
from itsalab.simulate.results import read_partial, results_to_frame, write_partial
from itsalab.utils.rng import make_seed_sequence

logger = logging.getLogger(__name__)

MAX_FAILED_SHARE = 0.05
CHUNK_SIZE = 100


def fit_method(method, panel, cond: SimCondition):
    """Fit one estimator to a simulated panel of the condition."""
    t_star = cond.scenario.intervention_time()
    if method == OLS_NW:
        return fit_ols_nw(panel, intervention=t_star, hac=cond.hac)
    return fit_pw(panel, intervention=t_star, cfg=cond.pw_config(), verbose=False)


def run_replication(cond: SimCondition, rep: int) -> dict:
    """
    Simulate and fit replication ``rep`` of a condition.

    Returns
    -------
    dict
        For each method, the (estimate, standard error) of the target coefficient,
        or None if the fit failed or did not converge.
    """
    seed = make_seed_sequence(cond.base_seed, dataset_key(cond), rep)
    panel = gen_panel(cond.scenario, rng=seed)
    outcomes = {}
    for method in cond.methods:
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", ConvergenceWarning)
                fit = fit_method(method, panel, cond)
        except (ItsaError, np.linalg.LinAlgError) as e:
            logger.debug(f"{condition_key(cond)} replication {rep} {method} failed: {e}")
            outcomes[method] = None
            continue
        estimate, se = fit.beta[cond.coef_index], fit.se[cond.coef_index]
        if fit.converged is False or not np.isfinite(estimate) or not np.isfinite(se):
            outcomes[method] = None
        else:
            outcomes[method] = (float(estimate), float(se), int(fit.df))
    return outcomes


def _run_chunk(cond, reps):
    return [run_replication(cond, rep) for rep in reps]


def _chunks(replications, chunk_size):
    return [range(start, min(start + chunk_size, replications)) for start in range(0, replications, chunk_size)]


def summarize_replications(cond: SimCondition, outcomes: list, strict: bool = True) -> dict:
    """
    Reduce the replication outcomes of a condition into one PerfSummary per method.

    Parameters
    ----------
    strict : bool, optional
        If True (the default), a method with more than 5% failed replications raises.
        If False, the failure is logged and the method gets a summary with NaN measures.

    Raises
    ------
    ConditionFailedError
        If ``strict`` and more than 5% of the replications of a method failed.
    """
    summaries = {}
    for method in cond.methods:
        succeeded = [outcome[method] for outcome in outcomes if outcome[method] is not None]
        n_failed = len(outcomes) - len(succeeded)
        if n_failed > MAX_FAILED_SHARE * cond.replications:
            msg = f"{n_failed} of {cond.replications} replications failed for {method} in {condition_key(cond)}."
            if strict:
                raise ConditionFailedError(msg)
            logger.error(msg)
            summaries[method] = failed_summary(n_converged=len(succeeded), n_failed=n_failed)
            continue
        estimates, ses, dfs = (np.array(values) for values in zip(*succeeded))
        summaries[method] = summarize(
            estimates,
            ses,
            cond.true_effect,
            alpha=cond.alpha,
            df=int(dfs[0]),
            n_failed=n_failed,
        )
    return summaries


def _evaluate(conditions, n_jobs=1, chunk_size=CHUNK_SIZE, strict=True):
    """Yield (condition, summaries) in the order of the conditions."""
    if not conditions:
        return
    tasks = [(idx, chunk) for idx, cond in enumerate(conditions) for chunk in _chunks(cond.replications, chunk_size)]
    n_chunks = [0] * len(conditions)
    for idx, _ in tasks:
        n_chunks[idx] += 1
    results = Parallel(n_jobs=n_jobs, return_as="generator")(
        delayed(_run_chunk)(conditions[idx], chunk) for idx, chunk in tasks
    )
    outcomes, received = [], 0
    for (idx, _), chunk_outcomes in zip(tasks, results):
        outcomes.extend(chunk_outcomes)
        received += 1
        if received == n_chunks[idx]:
            yield conditions[idx], summarize_replications(conditions[idx], outcomes, strict=strict)
            outcomes, received = [], 0


def run_condition(cond, n_jobs=1, chunk_size=CHUNK_SIZE) -> dict:
    """
    Run all replications of a condition.

    Parameters
    ----------
    cond : SimCondition or dict
        Condition to evaluate.
    n_jobs : int, optional
        Number of joblib workers. The default is 1.

    Returns
    -------
    dict
        PerfSummary of each requested method.
    """
    cond = SimCondition.model_validate(cond)
    _, summaries = next(_evaluate([cond], n_jobs=n_jobs, chunk_size=chunk_size))
    return summaries


def partial_filename(cond: SimCondition) -> str:
    """Return the file name of the completed rows of a condition."""
    return f"{condition_key(cond)}_{condition_hash(cond)}.csv"


def _read_completed(partial_dir, cond):
    filepath = os.path.join(partial_dir, partial_filename(cond))
    if not os.path.exists(filepath):
        return None
    try:
        return read_partial(filepath, cond=cond)
    except ValueError as e:
        logger.warning(f"Recomputing {condition_key(cond)}: {e}")
        return None


def run_grid(conditions, n_jobs=1, partial_dir=None, resume=False, chunk_size=CHUNK_SIZE) -> pd.DataFrame:
    """
    Run a list of conditions and return the long-format results table.

    A condition with too many failed replications does not stop the grid: its rows
    hold NaN measures and the number of failed replications.

    Parameters
    ----------
    conditions : list of SimCondition
        Conditions, e.g. from :func:`itsalab.simulate.expand_grid`.
    n_jobs : int, optional
        Number of joblib workers. The default is 1.
    partial_dir : str, optional
        Directory where the rows of each finished condition are written.
    resume : bool, optional
        Reuse the condition files of ``partial_dir`` instead of recomputing them.
        Files are keyed by all the condition settings and checked before reuse.

    Returns
    -------
    pandas.DataFrame
        One row per (condition, method), in the order of the conditions.
    """
    conditions = [SimCondition.model_validate(cond) for cond in conditions]
    if not conditions:
        raise ValueError("No conditions to run.")
    if resume and partial_dir is None:
        raise ValueError("'resume' requires a 'partial_dir'.")
    frames = {}
    if resume:
        for idx, cond in enumerate(conditions):
            frame = _read_completed(partial_dir, cond)
            if frame is not None:
                frames[idx] = frame
        logger.info(f"Resuming: {len(frames)} of {len(conditions)} conditions already completed.")
    pending = [idx for idx in range(len(conditions)) if idx not in frames]
    for done, (cond, summaries) in enumerate(
        _evaluate([conditions[idx] for idx in pending], n_jobs=n_jobs, chunk_size=chunk_size, strict=False),
        start=1,
    ):
        frame = results_to_frame([(cond, method, summary) for method, summary in summaries.items()])
        if partial_dir is not None:
            write_partial(frame, os.path.join(partial_dir, partial_filename(cond)))
        frames[pending[done - 1]] = frame
        powers = ", ".join(f"{method} {summary.power:.3f}" for method, summary in summaries.items())
        logger.info(f"[{done}/{len(pending)}] {condition_key(cond)}: power {powers}")
    return pd.concat([frames[idx] for idx in range(len(conditions))], ignore_index=True)


def resolve_n_jobs(threads=None) -> int:
    """Return the worker count: ``threads``, else ITSA_LAB_THREADS, else the CPU count."""
    if threads is None:
        threads = os.environ.get("ITSA_LAB_THREADS")
    if threads is None or str(threads).strip() == "":
        return os.cpu_count() or 1
    n_jobs = int(threads)
    if n_jobs < 1:
        raise ValueError("The number of threads must be a positive integer.")
    return n_jobs

