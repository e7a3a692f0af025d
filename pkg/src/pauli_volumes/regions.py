"""Integration regions for the channel-class volumes.

Every class volume in this package is an integral over a finite list of
*bound chains*: iterated-integral regions

    lo_0 <= x_0 <= hi_0,  lo_1(x_0) <= x_1 <= hi_1(x_0),  ...

whose bounds are affine in the earlier variables only. Chains come in two
flavors:

* the necessary-positivity box, a single chain of constant bounds; and
* chamber decompositions of the ordered-eigenvalue wedge
  lambda_(1) <= ... <= lambda_(n). Sorting splits eigenvalue space into
  congruent copies of the wedge, so the raw chain volumes are multiplied by
  a symmetry factor (n! when all coordinates are exchangeable, 3! for N = 3
  channels where lambda_4 is distinguished and its placement among the
  sorted values is enumerated instead).

The complete-positivity chambers realize the two-sided constraint

    -1/(d-1) <= S <= 1 + d * lambda_(1),
    S = sum of eigenvalues weighted by multiplicity,

on the ordered wedge. Each chamber is indexed by the level M at which the
nested upper bounds switch from the "negative branch" (room below the lower
S constraint) to the "positive branch" (room below the upper S constraint);
the generator-reachable and entanglement-breaking regions need only the
positive branch. For N = 3 the left-out eigenvalue lambda_4 carries weight
d - 2 in S, so every bound picks up a correction of weight d - 3 on the
sorted slot lambda_4 occupies; the four placements are enumerated
explicitly with the Kronecker deltas resolved at construction time.

Construction is pure and everything here is immutable. Membership helpers
are provided for Monte Carlo cross-checks; they never feed the exact
integrals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import factorial
from typing import Sequence

import numpy as np

CLASS_TAGS = ("p", "cp", "g", "eb")

_SLOT_NAMES = ("min", "mid1", "mid2", "max")


@dataclass(frozen=True)
class AffineExpr:
    """const + sum_j coeffs[j] * x_j, referencing variables 0..len(coeffs)-1."""

    const: Fraction
    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "const", Fraction(self.const))
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    def evaluate(self, values: Sequence[Fraction]) -> Fraction:
        out = self.const
        for c, v in zip(self.coeffs, values):
            out += c * v
        return out

    @cached_property
    def _float_view(self) -> tuple[float, np.ndarray]:
        return float(self.const), np.array([float(c) for c in self.coeffs])

    def evaluate_batch(self, pts: np.ndarray) -> np.ndarray:
        """Vectorized float evaluation over rows of ``pts``."""
        const, coeffs = self._float_view
        out = np.full(pts.shape[0], const)
        if coeffs.size:
            out = out + pts[:, : coeffs.size] @ coeffs
        return out

    def scaled(self, s: Fraction) -> "AffineExpr":
        """The bound after dilating all variables by s (constant scales, slopes stay)."""
        return AffineExpr(self.const * s, self.coeffs)


@dataclass(frozen=True)
class BoundChain:
    """An iterated-integral region; ``bounds[i]`` is the (lower, upper) pair
    for variable i and may reference variables 0..i-1 only."""

    n_vars: int
    bounds: tuple[tuple[AffineExpr, AffineExpr], ...]
    label: str
    nplus1_slot: int | None = None

    def __post_init__(self) -> None:
        if len(self.bounds) != self.n_vars:
            raise ValueError(f"{self.label}: {len(self.bounds)} bounds for {self.n_vars} vars")
        for i, (lo, hi) in enumerate(self.bounds):
            if len(lo.coeffs) > i or len(hi.coeffs) > i:
                raise ValueError(
                    f"{self.label}: bound {i} references later variables"
                )
        if self.nplus1_slot is not None and not 0 <= self.nplus1_slot < self.n_vars:
            raise ValueError(f"{self.label}: slot {self.nplus1_slot} out of range")

    def contains(self, point: Sequence[Fraction]) -> bool:
        """Exact membership of an (ordered) point."""
        for i, (lo, hi) in enumerate(self.bounds):
            if not lo.evaluate(point) <= point[i] <= hi.evaluate(point):
                return False
        return True

    def scaled(self, s: Fraction) -> "BoundChain":
        """The chain for variables dilated by s > 0 (volume scales by s^n)."""
        if s <= 0:
            raise ValueError("scale must be positive")
        return BoundChain(
            self.n_vars,
            tuple((lo.scaled(s), hi.scaled(s)) for lo, hi in self.bounds),
            label=f"{self.label}*{s}",
            nplus1_slot=self.nplus1_slot,
        )


@dataclass(frozen=True)
class ChamberSet:
    """A class region: chains, the symmetry factor relating their summed
    volume to the full eigenvalue-space volume, and identifying metadata."""

    chains: tuple[BoundChain, ...]
    symmetry_factor: int
    class_tag: str
    d: int
    N: int
    ordered: bool = True

    def __post_init__(self) -> None:
        if self.class_tag not in CLASS_TAGS:
            raise ValueError(f"unknown class tag {self.class_tag!r}")
        if not self.chains:
            raise ValueError("a chamber set needs at least one chain")
        n = self.chains[0].n_vars
        if any(ch.n_vars != n for ch in self.chains):
            raise ValueError("all chains must share the variable count")
        if self.symmetry_factor < 1:
            raise ValueError("symmetry factor must be >= 1")

    @property
    def n_vars(self) -> int:
        return self.chains[0].n_vars

    def membership_counts(
        self, pts: np.ndarray, margin: float = 0.0
    ) -> tuple[np.ndarray, np.ndarray]:
        """How many chains contain each raw eigenvalue sample.

        Rows of ``pts`` are unsorted eigenvalue vectors in the chain's
        coordinate count. Ordered sets are sorted per row first; chains that
        pin the lambda_{N+1} slot only see samples whose sorted rank of the
        last coordinate matches. Returns (counts, near) where ``near`` flags
        samples within ``margin`` of any bound surface or sorting tie; their
        counts are unreliable and callers should skip them.
        """
        pts = np.asarray(pts, dtype=float)
        n_samples = pts.shape[0]
        counts = np.zeros(n_samples, dtype=int)
        near = np.zeros(n_samples, dtype=bool)
        if self.ordered:
            mu = np.sort(pts, axis=1)
            if margin:
                near |= np.any(np.diff(mu, axis=1) <= margin, axis=1)
            slot = np.sum(pts[:, :-1] < pts[:, -1:], axis=1)
        else:
            mu = pts
            slot = None
        for chain in self.chains:
            scope = np.ones(n_samples, dtype=bool)
            if slot is not None and chain.nplus1_slot is not None:
                scope = slot == chain.nplus1_slot
            inside = scope.copy()
            for i, (lo, hi) in enumerate(chain.bounds):
                lo_v = lo.evaluate_batch(mu)
                hi_v = hi.evaluate_batch(mu)
                x = mu[:, i]
                inside &= (x >= lo_v) & (x <= hi_v)
                if margin:
                    near |= scope & (
                        (np.abs(x - lo_v) <= margin) | (np.abs(x - hi_v) <= margin)
                    )
            counts += inside
        return counts, near


# --------------------------------------------------------------------------
# bound builders
# --------------------------------------------------------------------------


def _const(value: Fraction | int) -> AffineExpr:
    return AffineExpr(Fraction(value))


def _prev_var(i: int) -> AffineExpr:
    """The ordering bound x_{i-1} <= x_i."""
    return AffineExpr(Fraction(0), (Fraction(0),) * (i - 1) + (Fraction(1),))


def _neg_upper(d: int, i: int) -> AffineExpr:
    """Negative-branch upper bound at level i (0-based), full-N case:
    -(1/(d+1-i)) * (1/(d-1) + sum_{j<i} x_j)."""
    den = d + 1 - i
    return AffineExpr(
        Fraction(-1, (d - 1) * den), (Fraction(-1, den),) * i
    )


def _pos_upper(d: int, i: int) -> AffineExpr:
    """Positive-branch upper bound at level i, full-N case:
    (1/(d+1-i)) * (1 + d*x_0 - sum_{j<i} x_j)."""
    den = d + 1 - i
    return AffineExpr(
        Fraction(1, den),
        (Fraction(d - 1, den),) + (Fraction(-1, den),) * (i - 1),
    )


def _eb_upper(d: int, i: int) -> AffineExpr:
    """Budget bound at level i, full-N case: (1/(d+1-i)) * (1 - sum_{j<i} x_j)."""
    den = d + 1 - i
    return AffineExpr(Fraction(1, den), (Fraction(-1, den),) * i)


def p_box(d: int, N: int) -> ChamberSet:
    """The necessary-positivity box: every coordinate in [-1/(d-1), 1]."""
    n = d + 1 if N == d + 1 else N + 1
    lo, hi = _const(Fraction(-1, d - 1)), _const(1)
    chain = BoundChain(n, ((lo, hi),) * n, label="p-box")
    return ChamberSet((chain,), 1, "p", d, N, ordered=False)


def cp_chambers_max_n(d: int) -> ChamberSet:
    """Chambers of the complete-positivity region on the ordered wedge,
    all d+1 bases in use. One chain per branch-switch level M, emitted as
    sys1 (M = d+1), sys2 with M = 2..d, sys3 (M = 1)."""
    if d < 2:
        raise ValueError(f"d must be >= 2 (got {d})")
    n = d + 1

    def chain_for(m_level: int, label: str) -> BoundChain:
        if m_level == 1:
            outer = (_const(Fraction(-1, d * d - 1)), _const(1))
        else:
            outer = (_const(Fraction(-1, d - 1)), _const(Fraction(-1, d * d - 1)))
        bounds = [outer]
        for i in range(1, n):
            k = i + 1  # 1-based level
            if k < m_level:
                bounds.append((_prev_var(i), _neg_upper(d, i)))
            elif k == m_level:
                bounds.append((_neg_upper(d, i), _pos_upper(d, i)))
            else:
                bounds.append((_prev_var(i), _pos_upper(d, i)))
        return BoundChain(n, tuple(bounds), label=label)

    chains = [chain_for(n, "cp:sys1")]
    chains.extend(chain_for(m, f"cp:sys2:M={m}") for m in range(2, d + 1))
    chains.append(chain_for(1, "cp:sys3"))
    return ChamberSet(tuple(chains), factorial(n), "cp", d, d + 1)


def g_chambers_max_n(d: int) -> ChamberSet:
    """Non-negative eigenvalues intersected with complete positivity,
    all d+1 bases in use: a single chain on the ordered wedge."""
    if d < 2:
        raise ValueError(f"d must be >= 2 (got {d})")
    n = d + 1
    bounds = [(_const(0), _const(1))]
    bounds.extend((_prev_var(i), _pos_upper(d, i)) for i in range(1, n))
    chain = BoundChain(n, tuple(bounds), label="g")
    return ChamberSet((chain,), factorial(n), "g", d, d + 1)


def eb_chambers_max_n(d: int) -> ChamberSet:
    """Non-negative eigenvalues with eigenvalue sum at most one (the
    entanglement-breaking region within the reachable set), all d+1 bases."""
    if d < 2:
        raise ValueError(f"d must be >= 2 (got {d})")
    n = d + 1
    bounds = [(_const(0), _const(Fraction(1, d + 1)))]
    bounds.extend((_prev_var(i), _eb_upper(d, i)) for i in range(1, n))
    chain = BoundChain(n, tuple(bounds), label="eb")
    return ChamberSet((chain,), factorial(n), "eb", d, d + 1)


# --- N = 3 chambers: lambda_4 carries weight d-2, placement enumerated ----


def _n3_den(d: int, i: int, slot: int) -> int:
    return (d + 1 - i) - (d - 3) * (1 if slot < i else 0)


def _n3_extra(d: int, j: int, slot: int) -> int:
    """Weight multiplier of sorted coordinate j: 1, or d-2 on lambda_4's slot."""
    return 1 + (d - 3) * (1 if slot == j else 0)


def _n3_pos_upper(d: int, i: int, slot: int) -> AffineExpr:
    den = _n3_den(d, i, slot)
    coeffs = [Fraction((d - 1) - (d - 3) * (1 if slot == 0 else 0), den)]
    coeffs.extend(Fraction(-_n3_extra(d, j, slot), den) for j in range(1, i))
    return AffineExpr(Fraction(1, den), tuple(coeffs))


def _n3_neg_upper(d: int, i: int, slot: int) -> AffineExpr:
    den = _n3_den(d, i, slot)
    coeffs = tuple(Fraction(-_n3_extra(d, j, slot), den) for j in range(i))
    return AffineExpr(Fraction(-1, (d - 1) * den), coeffs)


def _n3_eb_upper(d: int, i: int, slot: int) -> AffineExpr:
    den = _n3_den(d, i, slot)
    coeffs = tuple(Fraction(-_n3_extra(d, j, slot), den) for j in range(i))
    return AffineExpr(Fraction(1, den), coeffs)


def chambers_n3(d: int, class_tag: str) -> ChamberSet:
    """Chambers for three-basis channels (N = 3) in dimension d >= 3.

    Sorted coordinates are (lambda_min, lambda_mid1, lambda_mid2, lambda_max);
    each chain fixes which sorted slot the left-out eigenvalue lambda_4
    occupies. The symmetry factor is 3! because only lambda_1..lambda_3 are
    exchangeable.
    """
    if d < 3:
        raise ValueError(f"N=3 chambers need d >= 3 (got {d})")
    if class_tag not in ("cp", "g", "eb"):
        raise ValueError(f"no N=3 chambers for class {class_tag!r}")
    chains: list[BoundChain] = []

    def cp_chain(m_level: int, sys_idx: int, slot: int) -> BoundChain:
        if m_level == 1:
            outer = (_const(Fraction(-1, d * d - 1)), _const(1))
        else:
            outer = (_const(Fraction(-1, d - 1)), _const(Fraction(-1, d * d - 1)))
        bounds = [outer]
        for i in range(1, 4):
            k = i + 1
            if k < m_level:
                bounds.append((_prev_var(i), _n3_neg_upper(d, i, slot)))
            elif k == m_level:
                bounds.append((_n3_neg_upper(d, i, slot), _n3_pos_upper(d, i, slot)))
            else:
                bounds.append((_prev_var(i), _n3_pos_upper(d, i, slot)))
        return BoundChain(
            4,
            tuple(bounds),
            label=f"cp-n3:sys{sys_idx}:slot={_SLOT_NAMES[slot]}",
            nplus1_slot=slot,
        )

    for slot in range(4):
        if class_tag == "cp":
            for sys_idx, m_level in enumerate((1, 4, 3, 2), start=1):
                chains.append(cp_chain(m_level, sys_idx, slot))
        else:
            if class_tag == "g":
                outer = (_const(0), _const(1))
                upper = _n3_pos_upper
            else:
                outer = (_const(0), _const(Fraction(1, d + 1)))
                upper = _n3_eb_upper
            bounds = [outer]
            bounds.extend((_prev_var(i), upper(d, i, slot)) for i in range(1, 4))
            chains.append(
                BoundChain(
                    4,
                    tuple(bounds),
                    label=f"{class_tag}-n3:slot={_SLOT_NAMES[slot]}",
                    nplus1_slot=slot,
                )
            )
    return ChamberSet(tuple(chains), factorial(3), class_tag, d, 3)
