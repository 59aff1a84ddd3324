"""File formats: dense CSV, 1-indexed coordinate text, and pruning.

Real trust/rating datasets usually arrive as sparse edge lists.  The reader
accepts ``row col value`` coordinate text (1-indexed, with an ``N J NNZ``
header) and densifies it; ``prune_empty`` then drops subjects with no
responses and items nobody answered, in a single pass.
"""

import pathlib
import tempfile

import numpy as np

import wgom
from wgom.matrix_io import prune_empty, read_matrix, write_coordinate, write_dense_csv

workdir = pathlib.Path(tempfile.mkdtemp(prefix="wgom-demo-"))

# --- author a sparse signed dataset ---------------------------------------
rng = np.random.default_rng(5)
spec = wgom.simulation_spec(
    wgom.SignedBinary(), n=200, j=100, k=3, n_pure=50, rho=0.9, sparsity=0.3, rng=rng
)
responses, _ = wgom.sample_response(spec, seed=2)

# Stack on a few subjects who never answered and one item nobody rated, as
# raw exports usually contain.
values = np.zeros((204, 101))
values[:200, :100] = responses.values
print(f"dataset sparsity: {wgom.data_sparsity(values):.1%} zero entries")

coo_path = workdir / "trust.txt"
write_coordinate(coo_path, values)
print("coordinate file header:", coo_path.read_text().splitlines()[0])
print("first edges:", coo_path.read_text().splitlines()[1:4])

# --- load, prune, estimate --------------------------------------------------
loaded = read_matrix(coo_path)  # densified
assert np.array_equal(loaded, values)

pruned, kept_rows, kept_cols = prune_empty(loaded)
print(
    f"pruned {loaded.shape[0] - len(kept_rows)} silent subjects and "
    f"{loaded.shape[1] - len(kept_cols)} unanswered items -> {pruned.shape}"
)

k_hat, _ = wgom.select_k(pruned, "scgoma", k_max=6)
result = wgom.scgoma(pruned, k_hat)
profile = wgom.profile_memberships(result.membership_hat)
print(
    f"selected K = {k_hat}; {profile.omega_pure:.0%} highly pure subjects, "
    f"{profile.omega_mixed:.0%} highly mixed, balance {profile.eta:.2f}"
)

# --- dense CSV round trips bit-exactly --------------------------------------
dense_path = workdir / "memberships.csv"
write_dense_csv(dense_path, result.membership_hat.rows)
assert np.array_equal(read_matrix(dense_path), result.membership_hat.rows)
print(f"wrote {dense_path} (decimals are shortest-round-trip, reload is exact)")
