"""Named worked instances, reproducible bit-for-bit."""

from __future__ import annotations

import math

import numpy as np

from .blocks import BlockUnitary, SubspaceSplit, decompose, dilate
from .errors import UnknownDemo
from .linalg import haar_unitary
from .polynomials import PhaseSchedule


def _identity():
    bu = decompose(np.eye(2), SubspaceSplit.coordinate(2, 1), SubspaceSplit.coordinate(2, 1))
    return bu, PhaseSchedule(())


def _swap():
    u = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128)
    bu = decompose(u, SubspaceSplit.coordinate(2, 1), SubspaceSplit.coordinate(2, 1))
    return bu, PhaseSchedule(())


def _sigma_dilation():
    # Contraction 0.6 dilated to [[0.6, 0.8], [0.8, -0.6]]; one step with a
    # quarter-turn codomain rotation.
    bu = dilate(np.array([[0.6]]))
    return bu, PhaseSchedule(((0.0, math.pi / 2.0),))


def _homogeneous_quarter():
    # Haar dim 8, seed 42, splits 3/5; two identical quarter-turn steps.
    # The even product is exactly -I.
    u = haar_unitary(8, 42)
    bu = decompose(u, SubspaceSplit.coordinate(8, 3), SubspaceSplit.coordinate(8, 5))
    schedule = PhaseSchedule(((0.0, math.pi / 2.0), (0.0, math.pi / 2.0)))
    return bu, schedule


_REGISTRY = {
    "identity": _identity,
    "swap": _swap,
    "sigma-0.6-dilation": _sigma_dilation,
    "homogeneous-pi2": _homogeneous_quarter,
}


def demo_names() -> list[str]:
    return sorted(_REGISTRY)


def demo_instance(name: str) -> tuple[BlockUnitary, PhaseSchedule]:
    """Look up a named demo; raises :class:`UnknownDemo` for unknown names."""
    try:
        builder = _REGISTRY[name]
    except KeyError:
        raise UnknownDemo(f"unknown demo {name!r}; available: {', '.join(demo_names())}") from None
    return builder()
