"""Simulation geometry builders and the replicate experiment harness.

Default geometry (used when parameters are omitted): three latent classes,
J = N/2 items, N/4 pure subjects per class, and every mixed subject at the
uniform membership (1/3, 1/3, 1/3).  The class-count sweep geometry instead
scales with k: N = 100k, J = 50k, 80 pure subjects per class.

Replicate r of an experiment seeded with s draws from the generator
``default_rng(SeedSequence([s, r]))``; streams are independent across
replicates, reproducible regardless of scheduling, and shared across grid
points so parameter comparisons are paired.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import estimation
from .errors import ConfigError, WgomError
from .metrics import accuracy_rate, hamming_error, relative_error
from .modularity import select_k
from .sampling import discrete_mean_interval, sample_response
from .types import (
    Bernoulli,
    Binomial,
    Exponential,
    GeneralDiscrete,
    ItemParams,
    MembershipMatrix,
    ModelSpec,
    Normal,
    Poisson,
    SignedBinary,
    Uniform,
)

EXPERIMENT_FAMILIES = ("rho", "n", "k", "p")


def replicate_rng(seed: int, replicate: int) -> np.random.Generator:
    """Independent per-replicate stream derived from one experiment seed."""
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(replicate)]))


def block_memberships(n: int, k: int, n_pure_per_class: int, mixed="uniform", rng=None) -> MembershipMatrix:
    """Pure-block membership matrix: class c owns rows [c*n0, (c+1)*n0).

    Remaining rows are mixed: either one fixed row (``"uniform"`` for
    (1/k, ..., 1/k), or an explicit length-k sequence), or ``"random"`` rows
    whose first k-1 weights are drawn independently from U(0, 1/k) with the
    last taking the remainder.
    """
    if n_pure_per_class * k > n:
        raise ConfigError(
            f"{k} classes x {n_pure_per_class} pure subjects exceed n={n}"
        )
    rows = np.zeros((n, k))
    for cls in range(k):
        rows[cls * n_pure_per_class : (cls + 1) * n_pure_per_class, cls] = 1.0
    n_mixed = n - k * n_pure_per_class
    if n_mixed:
        if isinstance(mixed, str) and mixed == "uniform":
            rows[k * n_pure_per_class :] = 1.0 / k
        elif isinstance(mixed, str) and mixed == "random":
            if rng is None:
                raise ConfigError('mixed="random" needs a random generator')
            head = rng.uniform(0.0, 1.0 / k, size=(n_mixed, k - 1))
            rows[k * n_pure_per_class :, :-1] = head
            rows[k * n_pure_per_class :, -1] = 1.0 - head.sum(axis=1)
        else:
            row = np.asarray(mixed, dtype=float)
            if row.shape != (k,) or abs(row.sum() - 1.0) > 1e-9 or (row < 0).any():
                raise ConfigError(f"mixed membership row must be a length-{k} probability vector")
            rows[k * n_pure_per_class :] = row
    return MembershipMatrix(rows)


def random_item_params(
    n_items: int,
    k: int,
    rho: float,
    rng: np.random.Generator,
    *,
    signed: bool = False,
    mean_range: Optional[tuple] = None,
) -> ItemParams:
    """Item parameters rho * B with B drawn uniformly per entry.

    ``signed`` draws B from U(-1, 1) instead of U(0, 1).  Alternatively an
    explicit ``mean_range`` (lo, hi) places entries uniformly inside it
    (useful for finite-support distributions whose admissible interval does
    not start at zero); ``rho`` is ignored in that mode.
    """
    if mean_range is not None:
        lo, hi = float(mean_range[0]), float(mean_range[1])
        if not lo < hi:
            raise ConfigError(f"mean_range must satisfy lo < hi, got ({lo}, {hi})")
        values = lo + (hi - lo) * rng.random((n_items, k))
        return ItemParams(values)
    if not rho > 0:
        raise ConfigError(f"rho must be positive, got {rho}")
    b = rng.uniform(-1.0, 1.0, (n_items, k)) if signed else rng.random((n_items, k))
    return ItemParams(rho * b)


def uses_signed_item_params(distribution) -> bool:
    """Whether the default geometry draws item parameters from U(-1, 1)."""
    return isinstance(distribution, (Normal, SignedBinary))


def simulation_spec(
    distribution,
    *,
    n: int,
    rho: Optional[float] = None,
    rng: np.random.Generator,
    k: int = 3,
    j: Optional[int] = None,
    n_pure: Optional[int] = None,
    mixed="uniform",
    sparsity: float = 1.0,
    mean_range: Optional[tuple] = None,
) -> ModelSpec:
    """Model spec with the default simulation geometry.

    Finite-support distributions without an explicit ``mean_range`` target
    their full admissible mean interval.
    """
    j = n // 2 if j is None else j
    n_pure = n // 4 if n_pure is None else n_pure
    if mean_range is None and isinstance(distribution, GeneralDiscrete):
        mean_range = discrete_mean_interval(distribution.support, distribution.scheme)
    membership = block_memberships(n, k, n_pure, mixed=mixed, rng=rng)
    item_params = random_item_params(
        j, k, rho if rho is not None else 1.0, rng,
        signed=uses_signed_item_params(distribution),
        mean_range=mean_range,
    )
    return ModelSpec(
        membership=membership,
        item_params=item_params,
        distribution=distribution,
        sparsity=sparsity,
    )


def class_count_sweep_spec(distribution, k: int, rho: float, rng, *, sparsity: float = 1.0) -> ModelSpec:
    """Geometry for varying the class count: N = 100k, J = 50k, 80 pure each."""
    return simulation_spec(
        distribution,
        n=100 * k,
        j=50 * k,
        k=k,
        n_pure=80,
        rho=rho,
        rng=rng,
        sparsity=sparsity,
    )


def distribution_from_config(config: dict):
    """Build a distribution from its JSON configuration."""
    if not isinstance(config, dict) or "name" not in config:
        raise ConfigError(f"distribution config needs a 'name' key, got {config!r}")
    name = config["name"]
    try:
        if name == "bernoulli":
            return Bernoulli()
        if name == "binomial":
            return Binomial(m=config["m"])
        if name == "uniform":
            return Uniform()
        if name == "normal":
            return Normal(sigma2=config.get("sigma2", 1.0))
        if name == "signed":
            return SignedBinary()
        if name == "poisson":
            return Poisson()
        if name == "exponential":
            return Exponential()
        if name == "discrete":
            return GeneralDiscrete(
                support=tuple(config["support"]),
                scheme=config.get("scheme", 0),
            )
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"bad distribution config {config!r}: {exc}") from exc
    raise ConfigError(f"unknown distribution name {name!r}")


@dataclass(frozen=True)
class GridRow:
    """One grid point of an experiment: averaged metrics over replicates."""

    family: str
    value: float
    mean_hamming_error: float
    mean_relative_error: float
    mean_runtime_seconds: float
    accuracy_rate: float
    error: Optional[str] = None


def normalize_family(family: str) -> str:
    """Accept both "rho" and "vary-rho" spellings of a sweep family."""
    name = str(family)
    if name.startswith("vary-"):
        name = name[len("vary-") :]
    if name not in EXPERIMENT_FAMILIES:
        raise ConfigError(
            f"unknown experiment family {family!r}; pick one of {EXPERIMENT_FAMILIES}"
        )
    return name


def _point_params(family: str, value, base: dict) -> dict:
    params = dict(base)
    if family == "rho":
        params["rho"] = float(value)
    elif family == "n":
        params["n"] = int(value)
    elif family == "k":
        params["k"] = int(value)
    elif family == "p":
        params["sparsity"] = float(value)
    else:
        raise ConfigError(f"unknown experiment family {family!r}; pick one of {EXPERIMENT_FAMILIES}")
    return params


def run_experiment(
    family: str,
    values,
    distribution,
    *,
    method: str = "scgoma",
    replicates: int = 20,
    seed: int = 0,
    n: int = 400,
    k: int = 3,
    rho: float = 1.0,
    sparsity: float = 1.0,
    k_max: int = 15,
    threads: int = 1,
    mean_range: Optional[tuple] = None,
) -> list:
    """Sweep one parameter family and average metrics over replicates.

    Every grid point runs ``replicates`` independent draws: sample a response
    matrix, estimate at the true class count (timed), score the permutation-
    matched errors, and select the class count by modularity for the accuracy
    rate.  A failure inside any replicate aborts that grid point and records
    an error row (metrics NaN); remaining grid points still run.
    """
    family = normalize_family(family)
    if method not in ("scgoma", "rmsp"):
        raise ConfigError(f"unknown method {method!r}")
    estimator = estimation.scgoma if method == "scgoma" else estimation.rmsp

    base = {"n": int(n), "k": int(k), "rho": float(rho), "sparsity": float(sparsity)}
    rows = []
    for value in values:
        params = _point_params(family, value, base)

        def one_replicate(rep: int, params=params):
            rng = replicate_rng(seed, rep)
            if family == "k":
                spec = class_count_sweep_spec(
                    distribution, params["k"], params["rho"], rng, sparsity=params["sparsity"]
                )
            else:
                spec = simulation_spec(
                    distribution,
                    n=params["n"],
                    k=params["k"],
                    rho=params["rho"],
                    sparsity=params["sparsity"],
                    mean_range=mean_range,
                    rng=rng,
                )
            responses, _ = sample_response(spec, rng)
            started = time.perf_counter()
            result = estimator(responses, params["k"])
            elapsed = time.perf_counter() - started
            ham = hamming_error(result.membership_hat, spec.membership)
            rel = relative_error(result.item_params_hat, spec.item_params.values)
            k_hat, _ = select_k(responses, method, k_max=min(k_max, min(responses.values.shape)))
            return ham, rel, elapsed, k_hat

        try:
            if threads > 1:
                with ThreadPoolExecutor(max_workers=threads) as pool:
                    outcomes = list(pool.map(one_replicate, range(replicates)))
            else:
                outcomes = [one_replicate(rep) for rep in range(replicates)]
        except WgomError as exc:
            rows.append(
                GridRow(
                    family=family,
                    value=float(value),
                    mean_hamming_error=float("nan"),
                    mean_relative_error=float("nan"),
                    mean_runtime_seconds=float("nan"),
                    accuracy_rate=float("nan"),
                    error=f"{type(exc).__name__}: {exc}",
                )
            )
            continue

        hams, rels, times, k_hats = zip(*outcomes)
        rows.append(
            GridRow(
                family=family,
                value=float(value),
                mean_hamming_error=float(np.mean(hams)),
                mean_relative_error=float(np.mean(rels)),
                mean_runtime_seconds=float(np.mean(times)),
                accuracy_rate=accuracy_rate(k_hats, params["k"]),
            )
        )
    return rows
