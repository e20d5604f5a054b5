"""Random instances of the cones, shared by the suites and the counterexample searches."""

from __future__ import annotations

import numpy as np
from scipy import linalg

from holo_core.matrices import ComplexArray, RealArray, norm, symmetrize


def unit_vector(rng: np.random.Generator, n: int) -> RealArray:
    v = rng.standard_normal(n)
    return v / np.linalg.norm(v)


def vector_in_cone(rng: np.random.Generator, n: int, delta: float) -> ComplexArray:
    """z = x + iy with |y| = u delta |x|, u uniform in [0, 1)."""
    x = rng.standard_normal(n)
    y = unit_vector(rng, n) * rng.random() * delta * np.linalg.norm(x)
    return x + 1j * y


def matrix_in_cone(rng: np.random.Generator, n: int, delta: float) -> ComplexArray:
    """A = X + iY with |Y| = u delta |X| in the operator norm."""
    x = rng.standard_normal((n, n))
    y = rng.standard_normal((n, n))
    y *= rng.random() * delta * norm(x) / norm(y)
    return x + 1j * y


def near_identity(rng: np.random.Generator, n: int, delta: float) -> ComplexArray:
    """B = I + E with |E| = u delta, u uniform in [0, 1)."""
    e = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    e *= rng.random() * delta / norm(e)
    return np.eye(n) + e


def spd_matrix(rng: np.random.Generator, n: int) -> RealArray:
    g = rng.standard_normal((n, n))
    return symmetrize(g @ g.T) + 0.1 * np.eye(n)


def symmetric_in_cone(rng: np.random.Generator, n: int, delta: float, t: float | None = None) -> ComplexArray:
    """B = X + iY with Y = delta t X^1/2 W X^1/2, |W| = 1.

    delta X +- Y = delta X^1/2 (I +- tW) X^1/2, so B lies in M+ for
    t < 1 and outside it for t > 1. Without *t*, t is uniform in (0, 0.99].
    """
    x = spd_matrix(rng, n)
    lam, v = linalg.eigh(x)
    root = symmetrize(v @ np.diag(np.sqrt(lam)) @ v.T)
    w = symmetrize(rng.standard_normal((n, n)))
    w /= norm(w)
    if t is None:
        t = (1.0 - rng.random()) * 0.99
    y = symmetrize(delta * t * root @ w @ root)
    return x + 1j * y


def integer_matrix(rng: np.random.Generator, rows: int, cols: int, bound: int = 9) -> list[list[int]]:
    return rng.integers(-bound, bound + 1, size=(rows, cols)).tolist()


def unimodular_matrix(rng: np.random.Generator, k: int, steps: int = 12) -> list[list[int]]:
    """A product of random elementary row operations on I (determinant +-1)."""
    m = [[int(i == j) for j in range(k)] for i in range(k)]
    if k < 2:
        return m
    for _ in range(steps):
        i, j = (int(v) for v in rng.choice(k, size=2, replace=False))
        q = int(rng.integers(-2, 3))
        m[i] = [a + q * b for a, b in zip(m[i], m[j])]
    return m
