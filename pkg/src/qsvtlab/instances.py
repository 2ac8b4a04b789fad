"""Deterministic random instances for tests and the verification suite."""

from __future__ import annotations

import numpy as np

from .blocks import BlockUnitary, SubspaceSplit, decompose
from .linalg import haar_unitary, rng_from_seed
from .polynomials import PhaseSchedule


def random_schedule(
    rng: np.random.Generator,
    n: int,
    *,
    with_final: bool = False,
) -> PhaseSchedule:
    """Uniform angles in [0, 2*pi); optionally with a trailing codomain angle."""
    pairs = [(float(t), float(f)) for t, f in rng.uniform(0.0, 2.0 * np.pi, size=(n, 2))]
    final = float(rng.uniform(0.0, 2.0 * np.pi)) if with_final else None
    return PhaseSchedule(tuple(pairs), final)


def random_split(rng: np.random.Generator, total_dim: int, sub_dim: int) -> SubspaceSplit:
    """Split with a Haar-random orthonormal basis (non-coordinate subspace)."""
    return SubspaceSplit(haar_unitary(total_dim, rng), sub_dim)


def random_dims(rng: np.random.Generator, max_dim: int, *, trial: int | None = None) -> tuple[int, int, int]:
    """Draw (ambient, domain, codomain) dims; early trials force edge splits.

    Trials 0-3 cover sub_dim 0, 1, full, and a 0/full mix so that degenerate
    blocks are always exercised; later trials draw uniformly.
    """
    n = int(rng.integers(2, max_dim + 1))
    if trial == 0:
        return n, 0, int(rng.integers(0, n + 1))
    if trial == 1:
        return n, 1, 1
    if trial == 2:
        return n, n, n
    if trial == 3:
        return n, n, 0
    return n, int(rng.integers(0, n + 1)), int(rng.integers(0, n + 1))


def random_block_unitary(
    rng: np.random.Generator,
    max_dim: int = 16,
    *,
    dims: tuple[int, int, int] | None = None,
    coordinate_splits: bool | None = None,
    trial: int | None = None,
) -> BlockUnitary:
    """Haar unitary with random (or forced) split dimensions.

    ``coordinate_splits`` None means: flip a coin, so both coordinate and
    rotated-basis splits appear in any long run.
    """
    if dims is None:
        dims = random_dims(rng, max_dim, trial=trial)
    n, dh, dk = dims
    u = haar_unitary(n, rng)
    if coordinate_splits is None:
        coordinate_splits = bool(rng.integers(0, 2))
    if coordinate_splits:
        domain = SubspaceSplit.coordinate(n, dh)
        codomain = SubspaceSplit.coordinate(n, dk)
    else:
        domain = random_split(rng, n, dh)
        codomain = random_split(rng, n, dk)
    return decompose(u, domain, codomain)


def seeded_rng(seed: int) -> np.random.Generator:
    """Philox generator from a plain integer seed."""
    return rng_from_seed(seed)
