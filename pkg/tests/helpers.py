"""Independent oracles used across the test suite.

Everything here is deliberately naive (enumeration, double loops, full
decompositions) and built from numpy primitives only, so it cannot share a
failure mode with the library paths it checks.
"""

import itertools

import numpy as np


def brute_hamming(pi_hat, pi_true) -> float:
    """Exhaustive permutation minimum of the per-subject L1 discrepancy."""
    pi_hat = np.asarray(pi_hat, dtype=float)
    pi_true = np.asarray(pi_true, dtype=float)
    n, k = pi_hat.shape
    best = np.inf
    for perm in itertools.permutations(range(k)):
        best = min(best, np.abs(pi_hat - pi_true[:, perm]).sum() / n)
    return float(best)


def brute_relative(theta_hat, theta_true) -> float:
    """Exhaustive permutation minimum of the relative Frobenius discrepancy."""
    theta_hat = np.asarray(theta_hat, dtype=float)
    theta_true = np.asarray(theta_true, dtype=float)
    k = theta_hat.shape[1]
    denom = np.linalg.norm(theta_true)
    best = np.inf
    for perm in itertools.permutations(range(k)):
        best = min(best, np.linalg.norm(theta_hat - theta_true[:, perm]) / denom)
    return float(best)


def modularity_double_sum(responses, memberships) -> float:
    """Literal double-sum fuzzy weighted modularity of A = R R'."""
    r = np.asarray(responses, dtype=float)
    pi = np.asarray(memberships, dtype=float)
    n = r.shape[0]
    a = r @ r.T
    a_plus = np.maximum(0.0, a)
    a_minus = np.maximum(0.0, -a)
    d_plus = a_plus.sum(axis=1)
    d_minus = a_minus.sum(axis=1)
    m_plus = d_plus.sum() / 2.0
    m_minus = d_minus.sum() / 2.0

    def part(adj, deg, m):
        if m <= 0.0:
            return 0.0
        total = 0.0
        for i in range(n):
            for j in range(n):
                total += (adj[i, j] - deg[i] * deg[j] / (2.0 * m)) * float(pi[i] @ pi[j])
        return total / (2.0 * m)

    if m_plus + m_minus == 0.0:
        return 0.0
    q_plus = part(a_plus, d_plus, m_plus)
    q_minus = part(a_minus, d_minus, m_minus)
    return (m_plus * q_plus - m_minus * q_minus) / (m_plus + m_minus)


def random_row_stochastic(rng, n, k) -> np.ndarray:
    """Random membership rows via normalized exponentials (Dirichlet(1))."""
    raw = rng.exponential(size=(n, k))
    return raw / raw.sum(axis=1, keepdims=True)


def block_pi(n, k, n_pure, mixed_row=None) -> np.ndarray:
    """Plain block membership: pure classes first, one fixed mixed row after."""
    pi = np.zeros((n, k))
    for cls in range(k):
        pi[cls * n_pure : (cls + 1) * n_pure, cls] = 1.0
    if mixed_row is None:
        mixed_row = np.full(k, 1.0 / k)
    pi[k * n_pure :] = mixed_row
    return pi
