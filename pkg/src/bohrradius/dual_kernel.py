"""Certified upper bounds for scalar Sidon constants in two variables via dual kernels.

For ``n = 2``, ``q = inf`` and ``X = C`` an ``m``-homogeneous polynomial is
``z_1^m p(z_2/z_1)`` with ``p(w) = sum_{k=0}^m c_k w^k``, and its sup norm on
the torus is ``||p||_inf`` on the circle.  For unimodular ``eps``

    sum_k eps_k c_k = (1/2pi) int p(e^{it}) K(t) dt,
    K(t) = sum_{k=0}^m eps_k e^{-ikt} + (any frequencies outside [-m, 0] in e^{ijt}),

so ``|sum eps_k c_k| <= ||p||_inf * ||K||_L1``.  Taking ``eps_k`` as the
conjugate phases of ``c_k`` turns the left side into ``sum |c_k|``.  The
phases of ``c_0`` and ``c_1`` can be rotated to 1 without changing either
norm, and complex conjugation maps ``eps_2`` to its conjugate, so the
remaining phases live on a compact box that is covered by a grid; moving
``eps_k`` by ``delta`` changes the left side by at most ``delta ||p||_inf``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from bohrradius.intervals import gamma_factor


@dataclass(frozen=True)
class KernelBound:
    value: float
    degree: int
    grid: int
    worst_node: tuple[float, ...]
    slack: float


def _irls_l1(A: np.ndarray, b: np.ndarray, g0: np.ndarray | None, iters: int = 40) -> np.ndarray:
    """Approximately minimise ``sum_l |b_l + (A g)_l|`` by iteratively reweighted least squares."""
    g = np.zeros(A.shape[1], dtype=complex) if g0 is None else g0.copy()
    eta = 1e-2
    for _ in range(iters):
        r = np.abs(b + A @ g)
        w = 1.0 / np.sqrt(np.maximum(r, eta))
        g = np.linalg.lstsq(A * w[:, None], -b * w, rcond=None)[0]
        eta = max(eta * 0.7, 1e-7)
    return g


def _certified_l1(freqs: np.ndarray, coeffs: np.ndarray, points: int, centre: float) -> float:
    """Upper bound of ``(1/2pi) int |sum_j a_j e^{-ijt}| dt`` from a ``points``-node mesh."""
    t = 2 * np.pi * np.arange(points) / points
    values = np.abs(np.exp(-1j * np.outer(t, freqs)) @ coeffs)
    lipschitz = math.fsum(np.abs(freqs - centre) * np.abs(coeffs))
    mean = math.fsum(values) / points
    err = gamma_factor(len(freqs) + 8) * math.fsum(np.abs(coeffs))
    return (mean + err + (np.pi / points) * lipschitz) * (1 + gamma_factor(points + 8))


@lru_cache(maxsize=16)
def dual_kernel_upper_bound(m: int, grid: int | None = None, band: int = 12,
                            points: int = 512, certify_points: int = 4096) -> KernelBound:
    """Certified upper bound on the Sidon constant ``S(m, 2)`` (scalar, polydisc).

    ``grid`` nodes cover ``eps_2`` in ``[0, pi]``; each further phase uses
    ``2 * grid`` nodes on ``[0, 2 pi)``.  ``band`` extra frequencies on each
    side are free kernel coefficients.
    """
    if m < 1:
        raise ValueError("degree must be positive")
    if m == 1:
        return KernelBound(1.0, 1, 0, (), 0.0)
    if grid is None:
        grid = {2: 64, 3: 16}.get(m, 8)
    h = np.pi / grid
    axes = [(np.arange(grid) + 0.5) * h] + [(np.arange(2 * grid) + 0.5) * h] * (m - 2)
    nodes = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, m - 1)

    freqs = np.arange(-band, m + band + 1)
    fixed = (freqs >= 0) & (freqs <= m)
    t = 2 * np.pi * np.arange(points) / points
    E = np.exp(-1j * np.outer(t, freqs))
    A = E[:, ~fixed]
    worst, worst_node = 0.0, ()
    g = None
    for node in nodes:
        eps = np.concatenate([[1.0, 1.0], np.exp(1j * node)])
        b = E[:, fixed] @ eps
        g = _irls_l1(A, b, g)
        coeffs = np.zeros(len(freqs), dtype=complex)
        coeffs[fixed] = eps
        coeffs[~fixed] = g
        bound = _certified_l1(freqs, coeffs, certify_points, m / 2.0)
        if bound > worst:
            worst, worst_node = bound, tuple(float(v) for v in node)
    # every phase is within h/2 of a node: |e^{i a} - e^{i b}| <= 2 sin(h/4)
    slack = (m - 1) * 2 * math.sin(h / 4)
    value = math.nextafter((worst + slack) * (1 + 1e-15), math.inf)
    return KernelBound(value, m, grid, worst_node, slack)
