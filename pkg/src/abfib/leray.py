"""Degenerate Leray bookkeeping for fibrations over the plane.

For a flat family X -> P^2 of abelian surfaces the relevant spectral
sequence degenerates, so

    h^k(X, O_X) = sum over p+q=k of h^q(P^2, R^p),

with R^0 = O, R^1 a rank-2 bundle, and R^2 = det R^1 dual = O(-3) in the
trivial-canonical situation.  `total_coh` turns a direct-image triple into
the five-vector (h^0,...,h^4); `solve_R2` inverts the h^4 constraint
h^2(O(k)) = target over the line-bundle degrees k.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from . import sheafcalc
from .sheafcalc import BundleExpr, coh, rank


@dataclass(frozen=True)
class DirectImageData:
    """Direct-image triple (R^0, R^1, R^2) with ranks (1, 2, 1)."""

    r0: BundleExpr
    r1: BundleExpr
    r2: BundleExpr

    def __post_init__(self):
        got = (rank(self.r0), rank(self.r1), rank(self.r2))
        if got != (1, 2, 1):
            raise ValueError(f"direct-image ranks must be (1, 2, 1), got {got}")


def total_coh(d: DirectImageData) -> tuple[int, int, int, int, int]:
    """Five-vector h^k = sum over p+q=k of h^q(R^p)."""
    v0, v1, v2 = coh(d.r0), coh(d.r1), coh(d.r2)
    return (
        v0.h0,
        v0.h1 + v1.h0,
        v0.h2 + v1.h1 + v2.h0,
        v1.h2 + v2.h1,
        v2.h2,
    )


@dataclass(frozen=True)
class DegreeSolutions:
    """Degrees k with h^2(O(k)) equal to a target.

    `finite` lists isolated solutions; `all_k_at_least` is set when the
    solution set is co-finite (target 0: every k >= -2).
    """

    finite: frozenset[int]
    all_k_at_least: int | None = None

    def __contains__(self, k: int) -> bool:
        if self.all_k_at_least is not None and k >= self.all_k_at_least:
            return True
        return k in self.finite

    def __str__(self) -> str:
        if self.all_k_at_least is not None:
            parts = [f"k >= {self.all_k_at_least}"]
            parts += [str(k) for k in sorted(self.finite)]
            return "{" + ", ".join(parts) + "}"
        return "{" + ", ".join(str(k) for k in sorted(self.finite)) + "}"


def solve_R2(h4_target: int) -> DegreeSolutions:
    """All degrees k with h^2(O(k)) = h4_target.

    h^2(O(k)) = h^0(O(-k-3)) runs through the triangular numbers as k
    decreases from -3, so positive targets have at most one solution.
    """
    if h4_target < 0:
        raise ValueError("cohomology target must be >= 0")
    if h4_target == 0:
        return DegreeSolutions(frozenset(), all_k_at_least=-2)
    # (j+1)(j+2)/2 = target with j = -k-3 >= 0
    disc = 1 + 8 * h4_target
    s = isqrt(disc)
    if s * s != disc:
        return DegreeSolutions(frozenset())
    j, rem = divmod(s - 3, 2)
    if rem != 0 or j < 0:
        return DegreeSolutions(frozenset())
    assert sheafcalc.coh_line(-j - 3).h2 == h4_target
    return DegreeSolutions(frozenset({-j - 3}))
