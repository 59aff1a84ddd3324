import json
import subprocess
import sys

import numpy as np
import pytest

from wgom.cli import main
from wgom.matrix_io import read_dense_csv, write_coordinate, write_dense_csv


@pytest.fixture()
def generated(tmp_path):
    config = {
        "n": 80,
        "j": 40,
        "k": 3,
        "distribution": {"name": "binomial", "m": 5},
        "rho": 4.0,
        "seed": 11,
    }
    config_path = tmp_path / "gen.json"
    config_path.write_text(json.dumps(config))
    out = tmp_path / "gen-out"
    assert main(["generate", str(config_path), "--out", str(out)]) == 0
    return config_path, out


def test_generate_writes_all_files_and_manifest(generated):
    _, out = generated
    for name in ("responses.csv", "membership.csv", "item_params.csv", "expected.csv"):
        assert (out / name).exists()
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["seed"] == 11
    assert len(manifest["config_sha256"]) == 64
    responses = read_dense_csv(out / "responses.csv")
    assert responses.shape == (80, 40)
    assert set(np.unique(responses)) <= set(range(6))  # binomial(m=5) counts
    pi = read_dense_csv(out / "membership.csv")
    theta = read_dense_csv(out / "item_params.csv")
    expected = read_dense_csv(out / "expected.csv")
    assert np.allclose(pi @ theta.T, expected, atol=1e-12)


def test_generate_is_deterministic(generated, tmp_path):
    config_path, out = generated
    again = tmp_path / "gen-again"
    assert main(["generate", str(config_path), "--out", str(again)]) == 0
    assert (out / "responses.csv").read_bytes() == (again / "responses.csv").read_bytes()
    assert (out / "membership.csv").read_bytes() == (again / "membership.csv").read_bytes()


def test_generate_mask_fraction(tmp_path):
    config = {
        "n": 60,
        "j": 40,
        "k": 3,
        "distribution": {"name": "signed"},
        "rho": 1.0,
        "sparsity": 0.5,
        "seed": 4,
    }
    path = tmp_path / "mask.json"
    path.write_text(json.dumps(config))
    out = tmp_path / "mask-out"
    assert main(["generate", str(path), "--out", str(out)]) == 0
    responses = read_dense_csv(out / "responses.csv")
    zero_fraction = (responses == 0.0).mean()
    sigma = np.sqrt(0.25 / responses.size)
    assert abs(zero_fraction - 0.5) <= 3 * sigma


def test_estimate_outputs_and_determinism(generated, tmp_path):
    _, gen_out = generated
    est1 = tmp_path / "est1"
    est2 = tmp_path / "est2"
    for est in (est1, est2):
        code = main(
            ["estimate", str(gen_out / "responses.csv"), "--k", "3", "--out", str(est)]
        )
        assert code == 0
    assert (est1 / "membership_hat.csv").read_bytes() == (est2 / "membership_hat.csv").read_bytes()
    assert (est1 / "item_params_hat.csv").read_bytes() == (est2 / "item_params_hat.csv").read_bytes()
    summary = json.loads((est1 / "summary.json").read_text())
    assert summary["method"] == "scgoma"
    assert len(summary["pure_subject_rows"]) == 3
    assert len(summary["singular_values"]) == 3
    assert 0.0 <= summary["omega_mixed"] <= 1.0
    assert summary["timing_seconds"] > 0
    pi_hat = read_dense_csv(est1 / "membership_hat.csv")
    assert np.abs(pi_hat.sum(axis=1) - 1.0).max() <= 1e-9


def test_estimate_accepts_coordinate_input_with_prune(generated, tmp_path):
    _, gen_out = generated
    dense = read_dense_csv(gen_out / "responses.csv")
    padded = np.zeros((dense.shape[0] + 2, dense.shape[1] + 1))
    padded[: dense.shape[0], : dense.shape[1]] = dense
    coo = tmp_path / "resp.txt"
    write_coordinate(coo, padded)
    out = tmp_path / "est-coo"
    assert main(["estimate", str(coo), "--k", "3", "--prune", "--out", str(out)]) == 0
    pi_hat = read_dense_csv(out / "membership_hat.csv")
    assert pi_hat.shape[0] <= dense.shape[0]  # padding pruned, zero rows in data may drop too


def test_select_k_json(generated, tmp_path, capsys):
    _, gen_out = generated
    out = tmp_path / "selk"
    code = main(
        [
            "select-k",
            str(gen_out / "responses.csv"),
            "--k-max",
            "6",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    payload = json.loads((out / "select_k.json").read_text())
    assert payload["k_hat"] == 3
    assert payload["curve"][0] == [1, 0.0]
    printed = json.loads(capsys.readouterr().out)
    assert printed["k_hat"] == 3


def test_experiment_csv_columns_and_determinism(tmp_path):
    config = {
        "family": "rho",
        "values": [1.0, 4.0],
        "distribution": {"name": "binomial", "m": 5},
        "n": 80,
        "k": 3,
        "replicates": 2,
        "seed": 9,
        "k_max": 5,
        "methods": ["scgoma"],
    }
    path = tmp_path / "exp.json"
    path.write_text(json.dumps(config))
    outs = []
    for name in ("e1", "e2"):
        out = tmp_path / name
        assert main(["experiment", str(path), "--out", str(out)]) == 0
        outs.append(out)

    def rows_without_timing(out):
        lines = (out / "results_scgoma.csv").read_text().strip().splitlines()
        header = lines[0].split(",")
        assert header == [
            "rho",
            "mean_hamming_error",
            "mean_relative_error",
            "mean_runtime_seconds",
            "accuracy_rate",
        ]
        return [
            [cell for i, cell in enumerate(line.split(",")) if i != 3]
            for line in lines[1:]
        ]

    assert rows_without_timing(outs[0]) == rows_without_timing(outs[1])
    manifest = json.loads((outs[0] / "manifest.json").read_text())
    assert manifest["errors"] == []
    assert manifest["files"] == ["results_scgoma.csv"]


def test_generate_large_block_geometry(tmp_path):
    # 800 subjects, 400 items, 200 pure subjects per class, randomized mixed
    # rows: the geometry of the oracle-recovery acceptance run.
    config = {
        "n": 800,
        "j": 400,
        "k": 3,
        "n_pure_per_class": 200,
        "mixed_membership": "random",
        "distribution": {"name": "binomial", "m": 5},
        "rho": 1.0,
        "seed": 3,
    }
    path = tmp_path / "fig.json"
    path.write_text(json.dumps(config))
    out = tmp_path / "fig-out"
    assert main(["generate", str(path), "--out", str(out)]) == 0
    pi = read_dense_csv(out / "membership.csv")
    assert pi.shape == (800, 3)
    for cls in range(3):
        assert (pi[:, cls] == 1.0).sum() == 200
    mixed = pi[600:]
    assert mixed[:, :2].max() <= 1 / 3
    assert np.allclose(mixed.sum(axis=1), 1.0)
    expected = read_dense_csv(out / "expected.csv")
    s = np.linalg.svd(expected, compute_uv=False)
    assert s[2] > 1e-10 * s[0] and s[3] < 1e-10 * s[0]


def test_experiment_accepts_vary_prefixed_family(tmp_path):
    config = {
        "family": "vary-p",
        "values": [0.5, 1.0],
        "distribution": {"name": "signed"},
        "n": 80,
        "k": 3,
        "rho": 1.0,
        "replicates": 2,
        "seed": 3,
        "k_max": 4,
    }
    path = tmp_path / "exp.json"
    path.write_text(json.dumps(config))
    out = tmp_path / "vp"
    assert main(["experiment", str(path), "--out", str(out)]) == 0
    header = (out / "results_scgoma.csv").read_text().splitlines()[0]
    assert header.startswith("p,")


def test_generate_honors_membership_file(tmp_path):
    pi = np.array([[1.0, 0.0], [0.0, 1.0], [0.25, 0.75], [0.5, 0.5]])
    pi_path = tmp_path / "pi.csv"
    write_dense_csv(pi_path, pi)
    config = {
        "n": 4,
        "j": 6,
        "k": 2,
        "membership_file": str(pi_path),
        "distribution": {"name": "bernoulli"},
        "rho": 0.8,
        "seed": 5,
    }
    path = tmp_path / "gen.json"
    path.write_text(json.dumps(config))
    out = tmp_path / "out"
    assert main(["generate", str(path), "--out", str(out)]) == 0
    assert np.array_equal(read_dense_csv(out / "membership.csv"), pi)
    theta = read_dense_csv(out / "item_params.csv")
    assert theta.shape == (6, 2)
    assert theta.min() >= 0.0 and theta.max() <= 0.8


def test_generate_discrete_distribution(tmp_path):
    config = {
        "n": 40,
        "j": 20,
        "k": 2,
        "distribution": {
            "name": "discrete",
            "support": [-2.0, 1.0, 1.5],
            "scheme": "mean-locked",
        },
        "seed": 8,
    }
    path = tmp_path / "gen.json"
    path.write_text(json.dumps(config))
    out = tmp_path / "out"
    assert main(["generate", str(path), "--out", str(out)]) == 0
    responses = read_dense_csv(out / "responses.csv")
    assert set(np.unique(responses)) <= {-2.0, 1.0, 1.5}
    expected = read_dense_csv(out / "expected.csv")
    assert expected.min() >= 0.25 - 1e-12 and expected.max() <= 1 / 3 + 1e-12


def test_exit_code_config_error(tmp_path):
    missing = tmp_path / "nope.json"
    assert main(["generate", str(missing), "--out", str(tmp_path / "o")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["generate", str(bad), "--out", str(tmp_path / "o")]) == 2
    infeasible = tmp_path / "infeasible.json"
    infeasible.write_text(
        json.dumps(
            {"n": 20, "j": 10, "k": 2, "distribution": {"name": "bernoulli"}, "rho": 3.0}
        )
    )
    assert main(["generate", str(infeasible), "--out", str(tmp_path / "o")]) == 2


def test_exit_code_data_error(tmp_path):
    garbled = tmp_path / "m.csv"
    garbled.write_text("1.0,2.0\nnot,numbers\n")
    assert main(["estimate", str(garbled), "--k", "2", "--out", str(tmp_path / "o")]) == 3
    small = tmp_path / "small.csv"
    write_dense_csv(small, np.eye(3))
    assert main(["estimate", str(small), "--k", "5", "--out", str(tmp_path / "o")]) == 3


def test_exit_code_numerical_error(tmp_path):
    constant = tmp_path / "const.csv"
    write_dense_csv(constant, np.full((8, 6), 2.0))
    assert main(["estimate", str(constant), "--k", "2", "--out", str(tmp_path / "o")]) == 4


def test_console_script_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "wgom.cli", "--help"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "generate" in proc.stdout and "experiment" in proc.stdout
