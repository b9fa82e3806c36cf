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
"""MG-ITSA panel generator."""
import numpy as np
import pandas as pd

from itsalab.dgp.ar_process import gen_ar_errors
from itsalab.model.design import design_columns
from itsalab.utils.rng import substream


def unit_ids(n_controls):
    """Return the control unit ids and the treated unit id.

    Controls are numbered 0..m-1 and the treated unit is m.
    """
    return list(range(n_controls)), n_controls


def gen_panel(cfg, rng=None) -> pd.DataFrame:
    """
    Generate a panel from a scenario.

    Each unit gets the MG-ITSA mean of its group plus an independent AR error stream
    drawn from its own substream of the seed.

    Parameters
    ----------
    cfg : ScenarioConfig
        Scenario inputs.
    rng : int or numpy.random.SeedSequence, optional
        Seed of the panel. Unit i draws from the substream (rng, i).
        The default is cfg.seed.

    Returns
    -------
    pandas.DataFrame
        Canonical panel with columns unit_id, t, treated, post, y.
    """
    seed = cfg.seed if rng is None else rng
    beta = cfg.resolve_betas()
    t_star = cfg.intervention_time()
    t = np.arange(1, cfg.n_periods + 1)
    post = (t >= t_star).astype(np.int64)
    controls, treated_id = unit_ids(cfg.n_controls)
    frames = []
    for unit_id in [*controls, treated_id]:
        treated = np.full(cfg.n_periods, int(unit_id == treated_id))
        mean = design_columns(t, post, treated) @ beta
        errors = gen_ar_errors(cfg.ar, cfg.n_periods, rng=substream(seed, unit_id))
        frames.append(
            pd.DataFrame({"unit_id": unit_id, "t": t, "treated": treated, "post": post, "y": mean + errors})
        )
    return pd.concat(frames, ignore_index=True)
