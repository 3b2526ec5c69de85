"""Multi-indices of fixed degree: counting, enumeration and monomials."""

from __future__ import annotations

import math
from collections.abc import Sequence
from typing import Iterator

MultiIndex = tuple[int, ...]


def _check_args(m: int, n: int) -> None:
    if int(m) != m or m < 0:
        raise ValueError(f"degree m must be a non-negative integer, got {m!r}")
    if int(n) != n or n < 1:
        raise ValueError(f"dimension n must be a positive integer, got {n!r}")


def count_multi_indices(m: int, n: int, max_value: int | None = None) -> int:
    """Number ``N_m(n) = C(n+m-1, m)`` of multi-indices of degree ``m`` in ``n`` variables.

    The count is exact.  ``max_value`` emulates a fixed integer width: when
    the count exceeds it an ``OverflowError`` is raised instead of a wrapped
    value being returned.

    >>> count_multi_indices(2, 2)
    3
    >>> count_multi_indices(5, 4)
    56
    """
    _check_args(m, n)
    value = math.comb(n + m - 1, m)
    if max_value is not None and value > max_value:
        raise OverflowError(f"N_{m}({n}) = {value} exceeds the limit {max_value}")
    return value


def iter_indices(m: int, n: int) -> Iterator[MultiIndex]:
    """Yield the degree-``m`` multi-indices in descending lexicographic order."""
    _check_args(m, n)
    if n == 1:
        yield (m,)
        return
    for first in range(m, -1, -1):
        for rest in iter_indices(m - first, n - 1):
            yield (first, *rest)


def enumerate_indices(m: int, n: int) -> list[MultiIndex]:
    """All multi-indices of degree ``m`` in ``n`` variables, descending lexicographic.

    >>> enumerate_indices(2, 2)
    [(2, 0), (1, 1), (0, 2)]
    """
    return list(iter_indices(m, n))


def degree(alpha: Sequence[int]) -> int:
    return sum(alpha)


def corner_index(m: int, n: int, j: int) -> MultiIndex:
    """The multi-index ``m e_j`` (zero-based ``j``)."""
    _check_args(m, n)
    if not 0 <= j < n:
        raise IndexError(f"coordinate {j} out of range for n={n}")
    return tuple(m if i == j else 0 for i in range(n))


def monomial_eval(alpha: Sequence[int], z: Sequence[complex]) -> complex:
    """``z^alpha = prod_i z_i^alpha_i``; the empty product is 1."""
    if len(alpha) != len(z):
        raise ValueError(f"length mismatch: alpha has {len(alpha)} entries, z has {len(z)}")
    result = complex(1.0)
    for a, zi in zip(alpha, z):
        if a:
            result *= complex(zi) ** int(a)
    return result
