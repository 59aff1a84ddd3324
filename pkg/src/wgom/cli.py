"""Command-line front end.

Subcommands
-----------
generate    sample a response matrix plus ground-truth files from a config
estimate    estimate memberships and item parameters from a matrix file
select-k    choose the number of latent classes by modularity maximization
experiment  sweep one parameter family and emit averaged-metric CSVs

Exit codes: 0 success, 2 configuration error, 3 data/format error,
4 numerical degeneracy.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import estimation, matrix_io
from .errors import (
    ConfigError,
    DataFormatError,
    DegenerateRankError,
    DimensionError,
    DistributionRangeError,
    InfeasibleSchemeError,
    RankDeficiencyError,
    WgomError,
)
from .experiments import (
    block_memberships,
    distribution_from_config,
    normalize_family,
    random_item_params,
    run_experiment,
    uses_signed_item_params,
)
from .metrics import data_sparsity, profile_memberships
from .modularity import select_k
from .sampling import discrete_mean_interval, expected_responses, sample_response
from .types import (
    PURE_TOL_LOADED,
    GeneralDiscrete,
    ItemParams,
    MembershipMatrix,
    ModelSpec,
    validate_model_spec,
)

EXIT_CONFIG = 2
EXIT_DATA = 3
EXIT_NUMERICAL = 4

_CONFIG_ERRORS = (ConfigError, DistributionRangeError, InfeasibleSchemeError)
_DATA_ERRORS = (DataFormatError, DimensionError, OSError)
_NUMERICAL_ERRORS = (DegenerateRankError, RankDeficiencyError)


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _load_config(path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _load_pruned_matrix(args) -> np.ndarray:
    values = matrix_io.read_matrix(args.matrix)
    if getattr(args, "prune", False):
        values, kept_rows, kept_cols = matrix_io.prune_empty(values)
        print(
            f"pruned to {len(kept_rows)} subjects x {len(kept_cols)} items "
            f"(single pass over empty rows/columns)"
        )
    return values


def _spec_from_config(config: dict) -> tuple[ModelSpec, int]:
    for key in ("n", "j", "k", "distribution"):
        if key not in config:
            raise ConfigError(f"generate config is missing {key!r}")
    distribution = distribution_from_config(config["distribution"])
    seed = int(config.get("seed", 0))
    rng = np.random.default_rng(seed)

    n, j, k = int(config["n"]), int(config["j"]), int(config["k"])
    mixed = config.get("mixed_membership", "uniform")
    if isinstance(mixed, list):
        mixed = tuple(mixed)

    if "membership_file" in config:
        membership = MembershipMatrix(matrix_io.read_matrix(config["membership_file"]))
        if membership.n_subjects != n or membership.n_classes != k:
            raise ConfigError(
                f"membership file is {membership.n_subjects}x{membership.n_classes}, "
                f"config says {n}x{k}"
            )
    else:
        n_pure = int(config.get("n_pure_per_class", n // 4))
        membership = block_memberships(n, k, n_pure, mixed=mixed, rng=rng)

    if "item_params_file" in config:
        item_params = ItemParams(matrix_io.read_matrix(config["item_params_file"]))
        if item_params.n_items != j or item_params.n_classes != k:
            raise ConfigError(
                f"item parameter file is {item_params.n_items}x{item_params.n_classes}, "
                f"config says {j}x{k}"
            )
    else:
        mean_range = config.get("mean_range")
        if mean_range is None and isinstance(distribution, GeneralDiscrete):
            mean_range = discrete_mean_interval(distribution.support, distribution.scheme)
        item_params = random_item_params(
            j,
            k,
            float(config.get("rho", 1.0)),
            rng,
            signed=uses_signed_item_params(distribution),
            mean_range=tuple(mean_range) if mean_range else None,
        )

    spec = ModelSpec(
        membership=membership,
        item_params=item_params,
        distribution=distribution,
        sparsity=float(config.get("sparsity", 1.0)),
    )
    return spec, seed


def cmd_generate(args) -> int:
    config = _load_config(args.config)
    if args.seed is not None:
        config["seed"] = args.seed
    spec, seed = _spec_from_config(config)

    violations = validate_model_spec(spec, pure_tol=PURE_TOL_LOADED)
    if violations:
        raise ConfigError("invalid model spec: " + "; ".join(violations))

    responses, diagnostics = sample_response(spec, seed)
    out = _out_dir(args)
    matrix_io.write_dense_csv(out / "responses.csv", responses.values)
    matrix_io.write_dense_csv(out / "membership.csv", spec.membership.rows)
    matrix_io.write_dense_csv(out / "item_params.csv", spec.item_params.values)
    matrix_io.write_dense_csv(out / "expected.csv", expected_responses(spec))
    matrix_io.write_manifest(
        out / "manifest.json",
        {
            "command": "generate",
            "seed": seed,
            "config": config,
            "config_sha256": matrix_io.config_hash(config),
            "tau_hat": diagnostics.tau_hat,
            "gamma_hat": diagnostics.gamma_hat,
            "files": ["responses.csv", "membership.csv", "item_params.csv", "expected.csv"],
        },
    )
    print(f"wrote {spec.n_subjects}x{spec.n_items} response matrix to {out}")
    return 0


def cmd_estimate(args) -> int:
    values = _load_pruned_matrix(args)
    started = time.perf_counter()
    if args.method == "scgoma":
        result = estimation.scgoma(values, args.k, seed=args.seed or 0)
    else:
        result = estimation.rmsp(values, args.k)
    elapsed = time.perf_counter() - started

    mixed_thr, pure_thr = args.thresholds
    profile = profile_memberships(
        result.membership_hat, mixed_threshold=mixed_thr, pure_threshold=pure_thr
    )
    summary = {
        "command": "estimate",
        "method": args.method,
        "k": args.k,
        "seed": args.seed or 0,
        "timing_seconds": elapsed,
        "pure_subject_rows": result.pure_index_set,
        "singular_values": [float(s) for s in result.singular_values],
        "data_sparsity": data_sparsity(values),
        "omega_mixed": profile.omega_mixed,
        "omega_pure": profile.omega_pure,
        "eta": profile.eta,
    }

    out = _out_dir(args)
    matrix_io.write_dense_csv(out / "membership_hat.csv", result.membership_hat.rows)
    matrix_io.write_dense_csv(out / "item_params_hat.csv", result.item_params_hat)
    if args.format == "json":
        matrix_io.write_manifest(out / "summary.json", summary)
    else:
        with open(out / "summary.csv", "w") as fh:
            keys = [k for k in summary if k not in ("command",)]
            fh.write(",".join(keys) + "\n")
            fh.write(",".join(json.dumps(summary[k]).replace(",", ";") for k in keys) + "\n")
    print(f"estimated {args.k} classes with {args.method} in {elapsed:.3f}s -> {out}")
    return 0


def cmd_select_k(args) -> int:
    values = _load_pruned_matrix(args)
    k_hat, curve = select_k(values, args.method, k_max=args.k_max, seed=args.seed or 0)
    payload = {
        "command": "select-k",
        "method": args.method,
        "k_max": args.k_max,
        "k_hat": k_hat,
        "curve": [[k, q] for k, q in curve],
    }
    print(json.dumps(payload, indent=2))
    if args.out is not None:
        out = _out_dir(args)
        matrix_io.write_manifest(out / "select_k.json", payload)
    return 0


def cmd_experiment(args) -> int:
    config = _load_config(args.config)
    for key in ("family", "values", "distribution"):
        if key not in config:
            raise ConfigError(f"experiment config is missing {key!r}")
    family = normalize_family(config["family"])
    distribution = distribution_from_config(config["distribution"])
    methods = config.get("methods", ["scgoma"])
    seed = args.seed if args.seed is not None else int(config.get("seed", 0))
    replicates = args.replicates or int(config.get("replicates", 20))
    k_max = args.k_max or int(config.get("k_max", 15))

    out = _out_dir(args)
    manifest = {
        "command": "experiment",
        "seed": seed,
        "replicates": replicates,
        "k_max": k_max,
        "config": config,
        "config_sha256": matrix_io.config_hash(config),
        "errors": [],
        "files": [],
    }
    for method in methods:
        rows = run_experiment(
            family,
            config["values"],
            distribution,
            method=method,
            replicates=replicates,
            seed=seed,
            n=int(config.get("n", 400)),
            k=int(config.get("k", 3)),
            rho=float(config.get("rho", 1.0)),
            sparsity=float(config.get("sparsity", 1.0)),
            k_max=k_max,
            threads=args.threads,
            mean_range=tuple(config["mean_range"]) if config.get("mean_range") else None,
        )
        name = f"results_{method}.{'json' if args.format == 'json' else 'csv'}"
        path = out / name
        if args.format == "json":
            matrix_io.write_manifest(
                path,
                [
                    {
                        family: row.value,
                        "mean_hamming_error": row.mean_hamming_error,
                        "mean_relative_error": row.mean_relative_error,
                        "mean_runtime_seconds": row.mean_runtime_seconds,
                        "accuracy_rate": row.accuracy_rate,
                    }
                    for row in rows
                ],
            )
        else:
            with open(path, "w") as fh:
                fh.write(
                    f"{family},mean_hamming_error,mean_relative_error,"
                    f"mean_runtime_seconds,accuracy_rate\n"
                )
                for row in rows:
                    fh.write(
                        f"{row.value:g},{row.mean_hamming_error!r},"
                        f"{row.mean_relative_error!r},{row.mean_runtime_seconds!r},"
                        f"{row.accuracy_rate!r}\n"
                    )
        manifest["files"].append(name)
        manifest["errors"].extend(
            {"method": method, family: row.value, "error": row.error}
            for row in rows
            if row.error
        )
        print(f"wrote {len(rows)} grid rows for {method} -> {path}")
    matrix_io.write_manifest(out / "manifest.json", manifest)
    return 0


def _thresholds(text: str) -> tuple[float, float]:
    try:
        mixed, pure = (float(tok) for tok in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected '<mixed>,<pure>', got {text!r}") from exc
    return mixed, pure


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wgom",
        description="Mixed-membership analysis for weighted categorical responses.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="sample a response matrix from a model config")
    gen.add_argument("config", help="JSON model config")
    gen.add_argument("--out", default="wgom-out", help="output directory")
    gen.add_argument("--seed", type=int, default=None, help="override the config seed")
    gen.set_defaults(func=cmd_generate)

    est = sub.add_parser("estimate", help="estimate memberships from a matrix file")
    est.add_argument("matrix", help="dense CSV or 1-indexed coordinate file")
    est.add_argument("--k", type=int, required=True, help="number of latent classes")
    est.add_argument("--method", choices=("scgoma", "rmsp"), default="scgoma")
    est.add_argument("--seed", type=int, default=None, help="seed for the randomized SVD path")
    est.add_argument("--out", default="wgom-out")
    est.add_argument("--format", choices=("json", "csv"), default="json", help="summary format")
    est.add_argument(
        "--thresholds",
        type=_thresholds,
        default=(0.6, 0.9),
        metavar="MIXED,PURE",
        help="profiling thresholds (default 0.6,0.9)",
    )
    est.add_argument(
        "--prune",
        action="store_true",
        help="drop all-zero rows/columns once before estimating",
    )
    est.set_defaults(func=cmd_estimate)

    sel = sub.add_parser("select-k", help="select the class count by modularity")
    sel.add_argument("matrix")
    sel.add_argument("--method", choices=("scgoma", "rmsp"), default="scgoma")
    sel.add_argument("--k-max", type=int, default=15, dest="k_max")
    sel.add_argument("--seed", type=int, default=None)
    sel.add_argument("--out", default=None, help="also write select_k.json here")
    sel.add_argument("--prune", action="store_true")
    sel.set_defaults(func=cmd_select_k)

    exp = sub.add_parser("experiment", help="run a parameter-sweep experiment")
    exp.add_argument("config", help="JSON experiment spec")
    exp.add_argument("--out", default="wgom-out")
    exp.add_argument("--seed", type=int, default=None, help="override the config seed")
    exp.add_argument("--replicates", type=int, default=None)
    exp.add_argument("--k-max", type=int, default=None, dest="k_max")
    exp.add_argument("--threads", type=int, default=1, help="parallel replicates per grid point")
    exp.add_argument("--format", choices=("csv", "json"), default="csv")
    exp.set_defaults(func=cmd_experiment)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _CONFIG_ERRORS as exc:
        return _fail(EXIT_CONFIG, str(exc))
    except _DATA_ERRORS as exc:
        return _fail(EXIT_DATA, str(exc))
    except _NUMERICAL_ERRORS as exc:
        return _fail(EXIT_NUMERICAL, str(exc))
    except WgomError as exc:
        return _fail(EXIT_NUMERICAL, str(exc))


if __name__ == "__main__":
    sys.exit(main())
