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
"""Exceptions and warnings raised by itsalab."""


class ItsaError(Exception):
    """Base class of all itsalab errors."""


####-------------------------------------------------------------------------------------------------------------------.
#### Panel errors


class PanelError(ItsaError, ValueError):
    """The panel does not satisfy the MG-ITSA layout."""


class MissingObservationError(PanelError):
    """A unit lacks one or more periods."""


class DegenerateDesignError(PanelError):
    """All observations fall on the same side of the intervention."""


####-------------------------------------------------------------------------------------------------------------------.
#### Estimation errors


class EstimationError(ItsaError):
    """A numerical estimation step failed."""


class RankDeficientError(EstimationError):
    """The design matrix does not have full column rank."""


class ZeroVarianceError(EstimationError):
    """A Wald test was requested on a coefficient with zero standard error."""


class BandwidthTooLargeError(EstimationError, ValueError):
    """The HAC lag is not smaller than the shortest segment."""


class EmptyOrderError(EstimationError, ValueError):
    """An AR operation requiring k >= 1 received an empty coefficient vector."""


class NonStationaryError(EstimationError, ValueError):
    """The AR coefficients lie outside the stationarity region."""


class SingularSystemError(EstimationError):
    """The pooled Yule-Walker system is singular."""


class AllSegmentsTooShortError(EstimationError):
    """No segment is long enough to contribute Yule-Walker cross-products."""


class SegmentTooShortError(EstimationError):
    """A segment is not longer than the AR order."""


class CholeskyFailureError(EstimationError):
    """The inverse AR covariance could not be Cholesky factorized."""


class NonStationaryIterateError(EstimationError):
    """A Yule-Walker iterate is non-stationary and shrinkage is disabled."""


####-------------------------------------------------------------------------------------------------------------------.
#### Simulation errors


class SimulationError(ItsaError):
    """A Monte Carlo condition could not be evaluated."""


class EmptyInputError(SimulationError, ValueError):
    """Too few replications to summarize."""


class InvalidOrderError(SimulationError, ValueError):
    """The fitted AR order is not allowed for the data-generating order."""


class ConditionFailedError(SimulationError):
    """More than the tolerated share of replications failed."""


####-------------------------------------------------------------------------------------------------------------------.
#### Warnings


class ConvergenceWarning(UserWarning):
    """The iterated GLS algorithm reached max_iter without converging."""
