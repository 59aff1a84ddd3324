"""Build a mixed-membership model and sample weighted response matrices.

The generative story: each subject carries a probability vector over K latent
classes (pure subjects sit on a vertex), each item carries K expected-response
parameters, and every observed entry is drawn around Pi @ Theta.T from a
distribution of your choice.
"""

import numpy as np

import wgom

rng = np.random.default_rng(42)

# --- a small model: 3 classes, 120 subjects, 60 items --------------------
# First 90 subjects are pure (30 per class); the remaining 30 sit at the
# simplex barycenter.
spec = wgom.simulation_spec(
    wgom.Binomial(m=5),
    n=120,
    j=60,
    k=3,
    n_pure=30,
    rho=3.0,  # scales all item parameters; controls the signal level
    rng=rng,
)
print("model violations:", wgom.validate_model_spec(spec) or "none")

r0 = wgom.expected_responses(spec)
print(f"expected responses: shape {r0.shape}, range [{r0.min():.2f}, {r0.max():.2f}]")

# --- draw integer counts in {0..5} ----------------------------------------
responses, diag = wgom.sample_response(spec, seed=7)
print(f"binomial draws: values {sorted(int(v) for v in np.unique(responses.values))}")
print(f"largest deviation from the mean matrix: {diag.tau_hat:.3f}")

# --- the same memberships under other response types ----------------------
for dist in (wgom.Uniform(), wgom.Normal(sigma2=1.0)):
    other = wgom.ModelSpec(
        membership=spec.membership,
        item_params=spec.item_params,
        distribution=dist,
    )
    values, _ = wgom.sample_response(other, seed=7)
    print(
        f"{dist.name:>8}: range [{values.values.min():.2f}, {values.values.max():.2f}]"
    )

# --- signed responses with missing entries --------------------------------
# A retention probability of 0.6 zeroes ~40% of the entries, mimicking
# datasets where most subject/item pairs never interact.
signed = wgom.simulation_spec(
    wgom.SignedBinary(), n=120, j=60, k=3, n_pure=30, rho=0.8, sparsity=0.6, rng=rng
)
values, _ = wgom.sample_response(signed, seed=7)
print(f"signed with mask: sparsity {wgom.data_sparsity(values):.2f} (expect ~0.40)")

# Any finite sorted support works too: probabilities are solved so that the
# expectation lands exactly on Pi @ Theta.T (here on {-2, 1, 1.5}).
probs = wgom.construct_discrete((-2.0, 1.0, 1.5), "mean-locked", mean=0.3)
print("three-point distribution with mean 0.3:", probs, "-> sums to", probs.sum())
