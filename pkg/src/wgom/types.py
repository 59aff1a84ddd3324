"""Domain types for weighted grade-of-membership analysis.

The generative model: an N x J response matrix R has independent entries whose
expectation is R0 = Pi @ Theta.T, where Pi is a row-stochastic membership
matrix with at least one pure subject per latent class and Theta is a rank-K
item-parameter matrix.  A tagged distribution family describes how responses
are drawn around their expectations; a retention probability ``sparsity``
zeroes entries at random to model missing responses.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .errors import DimensionError, WgomError

ROW_SUM_TOL = 1e-9
RANK_RTOL = 1e-10
PURE_TOL_SAMPLED = 1e-12
PURE_TOL_LOADED = 1e-6
# Slack on closed admissible-range endpoints so float dust in Pi @ Theta.T
# does not trip spurious range errors.
RANGE_TOL = 1e-12


def _as_2d_float(values, name: str) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if arr.ndim != 2:
        raise DimensionError(f"{name} must be 2-dimensional, got ndim={arr.ndim}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise DimensionError(f"{name} must be at least 1x1, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class ResponseMatrix:
    """Observed weighted responses: subjects in rows, items in columns."""

    values: np.ndarray

    def __post_init__(self):
        arr = _as_2d_float(self.values, "response matrix")
        if not np.isfinite(arr).all():
            raise ValueError("response matrix contains non-finite entries")
        object.__setattr__(self, "values", arr)

    @property
    def n_subjects(self) -> int:
        return self.values.shape[0]

    @property
    def n_items(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True)
class MembershipMatrix:
    """Per-subject class weights; each row is meant to be a probability vector.

    The constructor only enforces structure (2-d, finite) so that invalid
    memberships can still be wrapped and reported by ``validate_model_spec``.
    """

    rows: np.ndarray

    def __post_init__(self):
        arr = _as_2d_float(self.rows, "membership matrix")
        if not np.isfinite(arr).all():
            raise ValueError("membership matrix contains non-finite entries")
        object.__setattr__(self, "rows", arr)

    @property
    def n_subjects(self) -> int:
        return self.rows.shape[0]

    @property
    def n_classes(self) -> int:
        return self.rows.shape[1]


@dataclass(frozen=True)
class ItemParams:
    """Item parameters Theta (J x K) together with the scaling factor.

    ``scale`` is the max-absolute-entry factor: Theta = scale * B with
    max|B| = 1.  When not supplied it is computed from ``values``.
    """

    values: np.ndarray
    scale: Optional[float] = None  # always a float after construction

    def __post_init__(self):
        arr = _as_2d_float(self.values, "item parameter matrix")
        if not np.isfinite(arr).all():
            raise ValueError("item parameter matrix contains non-finite entries")
        object.__setattr__(self, "values", arr)
        scale = self.scale
        if scale is None:
            scale = float(np.abs(arr).max())
        if not (scale > 0):
            raise ValueError("item parameter scale must be positive (all-zero matrix?)")
        object.__setattr__(self, "scale", float(scale))

    @property
    def n_items(self) -> int:
        return self.values.shape[0]

    @property
    def n_classes(self) -> int:
        return self.values.shape[1]


# ---------------------------------------------------------------------------
# Distribution catalog
# ---------------------------------------------------------------------------
#
# Each variant is passive data plus its admissible mean range; drawing logic
# lives in wgom.sampling.  ``admissible(means)`` returns a boolean mask of
# entries whose expectation the distribution can realize.


@dataclass(frozen=True)
class Bernoulli:
    """Entries in {0, 1} with success probability equal to the mean."""

    name = "bernoulli"

    def admissible(self, means: np.ndarray) -> np.ndarray:
        return (means >= -RANGE_TOL) & (means <= 1.0 + RANGE_TOL)

    def range_description(self) -> str:
        return "[0, 1]"


@dataclass(frozen=True)
class Binomial:
    """Entries in {0..m}, m trials with success probability mean/m."""

    m: int
    name = "binomial"

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 1:
            raise ValueError(f"binomial trial count must be a positive integer, got {self.m}")
        object.__setattr__(self, "m", int(self.m))

    def admissible(self, means: np.ndarray) -> np.ndarray:
        return (means >= -RANGE_TOL) & (means <= self.m + RANGE_TOL)

    def range_description(self) -> str:
        return f"[0, {self.m}]"


@dataclass(frozen=True)
class Uniform:
    """Continuous entries drawn uniformly on (0, 2*mean).

    A mean of exactly 0 is admitted and draws exactly 0 (the continuous limit
    of Uniform(0, 0)), so boundary expectations do not trip a range error.
    """

    name = "uniform"

    def admissible(self, means: np.ndarray) -> np.ndarray:
        return means >= -RANGE_TOL

    def range_description(self) -> str:
        return "[0, inf)"


@dataclass(frozen=True)
class Normal:
    """Gaussian entries with fixed variance around the mean."""

    sigma2: float
    name = "normal"

    def __post_init__(self):
        if not (self.sigma2 > 0):
            raise ValueError(f"normal variance must be positive, got {self.sigma2}")
        object.__setattr__(self, "sigma2", float(self.sigma2))

    def admissible(self, means: np.ndarray) -> np.ndarray:
        return np.ones(np.shape(means), dtype=bool)

    def range_description(self) -> str:
        return "(-inf, inf)"


@dataclass(frozen=True)
class SignedBinary:
    """Entries in {-1, +1} with P(+1) = (1 + mean) / 2."""

    name = "signed"

    def admissible(self, means: np.ndarray) -> np.ndarray:
        return (means >= -1.0 - RANGE_TOL) & (means <= 1.0 + RANGE_TOL)

    def range_description(self) -> str:
        return "[-1, 1]"


@dataclass(frozen=True)
class Poisson:
    """Nonnegative integer counts with rate equal to the mean."""

    name = "poisson"

    def admissible(self, means: np.ndarray) -> np.ndarray:
        return means > 0.0

    def range_description(self) -> str:
        return "(0, inf)"


@dataclass(frozen=True)
class Exponential:
    """Positive continuous entries with rate 1/mean."""

    name = "exponential"

    def admissible(self, means: np.ndarray) -> np.ndarray:
        return means > 0.0

    def range_description(self) -> str:
        return "(0, inf)"


@dataclass(frozen=True)
class GeneralDiscrete:
    """Entries on a finite sorted support, probabilities chosen to hit the mean.

    ``scheme`` selects one closure of the underdetermined moment system
    (see ``wgom.sampling.construct_discrete``):

    * an integer q (0-based): the probability at support[q] is free and all
      other probabilities are equal (the scheme-q member of the canonical
      solution family);
    * ``"binary"``: the unique two-point solution (Q == 2 only);
    * ``"mean-locked"``: P(support[0]) is pinned to the mean itself
      (Q == 3 only).
    """

    support: tuple
    scheme: Union[int, str] = 0
    name = "discrete"

    def __post_init__(self):
        support = tuple(float(a) for a in self.support)
        if len(support) < 2:
            raise ValueError("discrete support needs at least 2 points")
        if any(b <= a for a, b in zip(support, support[1:])):
            raise ValueError("discrete support must be strictly increasing")
        object.__setattr__(self, "support", support)
        scheme = self.scheme
        if isinstance(scheme, str):
            if scheme == "binary":
                if len(support) != 2:
                    raise ValueError('scheme "binary" requires exactly 2 support points')
            elif scheme == "mean-locked":
                if len(support) != 3:
                    raise ValueError('scheme "mean-locked" requires exactly 3 support points')
            else:
                raise ValueError(f"unknown discrete scheme {scheme!r}")
        else:
            scheme = int(scheme)
            if not 0 <= scheme < len(support):
                raise ValueError(f"scheme index {scheme} outside [0, {len(support) - 1}]")
        object.__setattr__(self, "scheme", scheme)

    def admissible(self, means: np.ndarray) -> np.ndarray:
        # Local import: the moment-system solver lives with the sampler.
        from .sampling import discrete_mean_interval

        lo, hi = discrete_mean_interval(self.support, self.scheme)
        means = np.asarray(means, dtype=float)
        return (means >= lo - 1e-12) & (means <= hi + 1e-12)

    def range_description(self) -> str:
        from .sampling import discrete_mean_interval

        lo, hi = discrete_mean_interval(self.support, self.scheme)
        return f"[{lo:g}, {hi:g}]"


Distribution = Union[
    Bernoulli,
    Binomial,
    Uniform,
    Normal,
    SignedBinary,
    Poisson,
    Exponential,
    GeneralDiscrete,
]


@dataclass(frozen=True)
class ModelSpec:
    """Everything needed to sample a response matrix.

    ``sparsity`` is the retention probability of the independent Bernoulli
    mask applied after sampling; 1.0 keeps every entry.
    """

    membership: MembershipMatrix
    item_params: ItemParams
    distribution: Distribution
    sparsity: float = 1.0

    def __post_init__(self):
        if self.membership.n_classes != self.item_params.n_classes:
            raise DimensionError(
                f"membership has {self.membership.n_classes} classes but item "
                f"parameters have {self.item_params.n_classes}"
            )
        if not (0.0 < self.sparsity <= 1.0):
            raise ValueError(f"sparsity must lie in (0, 1], got {self.sparsity}")

    @property
    def n_subjects(self) -> int:
        return self.membership.n_subjects

    @property
    def n_items(self) -> int:
        return self.item_params.n_items

    @property
    def n_classes(self) -> int:
        return self.membership.n_classes


@dataclass(frozen=True)
class SampleDiagnostics:
    """Empirical noise summaries of one sampled response matrix.

    ``tau_hat`` is the largest absolute deviation from the expected matrix
    (before masking); ``gamma_hat`` is the largest squared deviation divided
    by the item-parameter scale.
    """

    tau_hat: float
    gamma_hat: float


@dataclass(frozen=True)
class EstimationResult:
    """Output of the spectral / raw-row membership estimators.

    ``singular_values`` holds the K singular values of the rank-K system the
    estimator inverted: the top-K singular values of R for the SVD-based
    estimator, the singular values of the selected vertex rows R[I] for the
    raw-row estimator.
    """

    membership_hat: MembershipMatrix
    item_params_hat: np.ndarray
    pure_index_set: list = field(default_factory=list)
    singular_values: Optional[np.ndarray] = None


def membership_array(membership) -> np.ndarray:
    """Accept a MembershipMatrix or any array-like; return the 2-d float array."""
    if isinstance(membership, MembershipMatrix):
        return membership.rows
    return _as_2d_float(membership, "membership matrix")


def response_array(responses) -> np.ndarray:
    """Accept a ResponseMatrix or any array-like; return the 2-d float array."""
    if isinstance(responses, ResponseMatrix):
        return responses.values
    return _as_2d_float(responses, "response matrix")


def validate_model_spec(spec: ModelSpec, *, pure_tol: float = PURE_TOL_SAMPLED) -> list:
    """Collect every model-invariant violation of ``spec``.

    Returns a list of human-readable violation strings; an empty list means
    the spec is a valid model instance.  Violations are data, not failures:
    nothing is raised.

    Checks: nonnegative memberships, unit row sums, at least one pure subject
    per class, full column rank of the item parameters, and expected responses
    inside the distribution's admissible mean range.
    """
    violations = []
    pi = spec.membership.rows
    n, k = pi.shape

    neg_rows = np.flatnonzero((pi < -1e-12).any(axis=1))
    for i in neg_rows:
        violations.append(f"membership row {i} has a negative entry (min {pi[i].min():.3g})")

    row_sums = pi.sum(axis=1)
    bad_rows = np.flatnonzero(np.abs(row_sums - 1.0) > ROW_SUM_TOL)
    for i in bad_rows:
        violations.append(f"membership row {i} sum != 1 (got {row_sums[i]:.12g})")

    for cls in range(k):
        if not (pi[:, cls] >= 1.0 - pure_tol).any():
            violations.append(f"no pure subject for class {cls} (pure-subject condition fails)")

    theta = spec.item_params.values
    sv = np.linalg.svd(theta, compute_uv=False)
    if theta.shape[1] > min(theta.shape) or sv[0] == 0.0 or sv[min(k, len(sv)) - 1] <= RANK_RTOL * sv[0]:
        violations.append(
            f"item parameter matrix is rank deficient (needs rank {k}, "
            f"sigma_min/sigma_max = {sv[-1] / sv[0] if sv[0] else 0.0:.3g})"
        )

    expected = pi @ theta.T
    try:
        ok = spec.distribution.admissible(expected)
    except WgomError as exc:
        violations.append(f"distribution cannot realize any mean: {exc}")
    else:
        if not ok.all():
            bad = np.argwhere(~ok)
            i, j = bad[0]
            violations.append(
                f"{(~ok).sum()} expected responses outside the admissible range "
                f"{spec.distribution.range_description()} of {spec.distribution.name}; "
                f"first at ({i}, {j}) = {expected[i, j]:.6g}"
            )

    return violations
