"""Domain ball ``B_{l^n_q}`` and codomain ``X = l^d_p``: norms, duality and sampling."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

INF = math.inf


def parse_exponent(value: float | int | str) -> float:
    """Exponent in ``[1, inf]``; the string ``"inf"`` (any case) means infinity."""
    if isinstance(value, str):
        text = value.strip().lower()
        if text in ("inf", "infinity", "∞"):
            return INF
        value = float(text)
    exponent = float(value)
    if math.isnan(exponent) or exponent < 1.0:
        raise ValueError(f"exponent must lie in [1, inf], got {value!r}")
    return exponent


def format_exponent(exponent: float) -> float | str:
    """Serialisable form: ``"inf"`` for infinity, a plain number otherwise."""
    if math.isinf(exponent):
        return "inf"
    return int(exponent) if float(exponent).is_integer() else exponent


@dataclass(frozen=True)
class SpaceSpec:
    """Domain ``l^n_q`` and codomain ``l^d_p`` (``d = 1`` is the scalar case)."""

    n: int
    q: float = INF
    d: int = 1
    p: float = 2.0

    def __post_init__(self) -> None:
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"domain dimension must be a positive integer, got {self.n!r}")
        if int(self.d) != self.d or self.d < 1:
            raise ValueError(f"codomain dimension must be a positive integer, got {self.d!r}")
        object.__setattr__(self, "q", parse_exponent(self.q))
        object.__setattr__(self, "p", parse_exponent(self.p))

    @property
    def scalar(self) -> bool:
        return self.d == 1

    @property
    def polydisc(self) -> bool:
        return math.isinf(self.q)

    def key(self) -> tuple:
        return (self.n, format_exponent(self.q), self.d, format_exponent(self.p))


def vector_norm(v, exponent: float) -> float:
    """``l_q`` norm of a real or complex vector.

    For finite exponents the moduli are rescaled by their maximum before
    powering, so large or tiny entries neither overflow nor underflow.
    """
    a = np.abs(np.asarray(v, dtype=complex)).ravel()
    if a.size == 0:
        raise ValueError("norm of an empty vector")
    big = float(a.max())
    if math.isinf(exponent):
        return big
    if big == 0.0:
        return 0.0
    if exponent == 1.0:
        return float(math.fsum(a))
    scaled = a / big
    return big * math.fsum(scaled**exponent) ** (1.0 / exponent)


def vector_norms(v: np.ndarray, exponent: float, axis: int = -1) -> np.ndarray:
    """Row-wise ``l_q`` norms (vectorised companion of :func:`vector_norm`)."""
    a = np.abs(v)
    if math.isinf(exponent):
        return a.max(axis=axis)
    if exponent == 1.0:
        return a.sum(axis=axis)
    if exponent == 2.0:
        return np.sqrt((a * a).sum(axis=axis))
    big = a.max(axis=axis, keepdims=True)
    safe = np.where(big > 0, big, 1.0)
    return np.squeeze(safe, axis=axis) * ((a / safe) ** exponent).sum(axis=axis) ** (1.0 / exponent)


def dual_exponent(p: float) -> float:
    """Conjugate exponent ``p'`` with ``1/p + 1/p' = 1``."""
    p = parse_exponent(p)
    if p == 1.0:
        return INF
    if math.isinf(p):
        return 1.0
    return p / (p - 1.0)


def normalize_to_sphere(z: np.ndarray, q: float) -> np.ndarray:
    """Scale each row of ``z`` onto the unit ``q``-sphere."""
    z = np.atleast_2d(np.asarray(z, dtype=complex))
    norms = vector_norms(z, q)
    if np.any(norms == 0):
        raise ValueError("cannot normalise the zero vector")
    return z / norms[:, None]


def sample_sphere(spec: SpaceSpec, seed: int, count: int) -> np.ndarray:
    """``count`` points of the sphere ``{||z||_q = 1}`` in ``C^n``, as rows.

    Coordinates are independent standard complex Gaussians rescaled to unit
    ``q``-norm, so phases are uniform on the circle.  The surface measure is
    not uniform unless ``q = 2``; the samples only seed optimisers.
    """
    if count < 1:
        raise ValueError("count must be positive")
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((count, spec.n)) + 1j * rng.standard_normal((count, spec.n))
    # a zero row has probability zero; guard anyway
    z[np.all(z == 0, axis=1)] = 1.0
    return normalize_to_sphere(z, spec.q)


def torus_orbit(z, theta) -> np.ndarray:
    """Rotate each coordinate: ``(z_1 e^{2 pi i theta_1}, ..., z_n e^{2 pi i theta_n})``."""
    z = np.asarray(z, dtype=complex)
    theta = np.asarray(theta, dtype=float)
    if z.shape[-1] != theta.shape[-1]:
        raise ValueError("z and theta must have the same length")
    return z * np.exp(2j * np.pi * theta)
