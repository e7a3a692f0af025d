"""Generalized Pauli channels in eigenvalue coordinates.

A channel built from N mutually unbiased bases of C^d mixes the identity,
the completely depolarizing map, and the N basis-dephasing maps:

    Lambda = p_{N+1} id + p_0 Phi_0 + sum_{alpha=1..N} p_alpha Phi_alpha,

with Phi_0[rho] = Tr(rho) I / d and Phi_alpha[rho] = sum_k P_k rho P_k over
the projectors of basis alpha. Its spectrum is fixed by the eigenvalues

    lambda_alpha = p_{N+1} + p_alpha  (alpha = 1..N),
    lambda_{N+1} = p_{N+1},

which are the canonical coordinates for everything in this package. All
class predicates below are exact: eigenvalues are rationals and every
comparison is in rational arithmetic. The map/Choi helpers at the bottom are
numerical and exist to cross-check the predicates, never to define them.

Class membership, writing S = sum_{alpha<=N} lambda_alpha + (d+1-N) lambda_{N+1}:

* completely positive (CP):
      -1/(d-1) <= S <= 1 + d * min lambda,
  the min over lambda_1..lambda_{N+1} for N <= d and over lambda_1..lambda_N
  when N = d+1 (where lambda_{N+1} is identically zero).
* positivity necessary box (P): every lambda_alpha, alpha = 1..N, lies in
  [-1/(d-1), 1]; equivalent to a non-negative worst output overlap.
* time-local generator reachable (G): every eigenvalue >= 0.
* entanglement breaking, necessary condition (EB): S <= 1; known sufficient
  when N is d or d+1 and all eigenvalues are non-negative.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .mub import MubSet

RationalLike = Fraction | int | str

_HERMITICITY_TOL = 1e-8


def _to_fraction(value: RationalLike) -> Fraction:
    if isinstance(value, float):
        raise TypeError(
            "floating-point eigenvalues are rejected; pass Fraction, int, or 'p/q'"
        )
    return Fraction(value)


@dataclass(frozen=True)
class ChannelSpec:
    """Exact description of a generalized Pauli channel.

    ``lambdas`` holds (lambda_1, ..., lambda_N, lambda_{N+1}); the last entry
    must be exactly zero when N = d+1 (no basis is left out, so the extra
    eigenvalue carries no freedom).
    """

    d: int
    N: int
    lambdas: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.d, int) or self.d < 2:
            raise ValueError(f"d must be an integer >= 2 (got {self.d})")
        if not 3 <= self.N <= self.d + 1:
            raise ValueError(f"N must satisfy 3 <= N <= d+1 (got N={self.N}, d={self.d})")
        object.__setattr__(self, "lambdas", tuple(_to_fraction(x) for x in self.lambdas))
        if len(self.lambdas) != self.N + 1:
            raise ValueError(
                f"need N+1={self.N + 1} eigenvalues (got {len(self.lambdas)})"
            )
        if self.N == self.d + 1 and self.lambdas[-1] != 0:
            raise ValueError("lambda_{N+1} must be 0 when N = d+1")

    @classmethod
    def make(
        cls, d: int, N: int, values: Iterable[RationalLike]
    ) -> "ChannelSpec":
        """Lenient constructor: for N = d+1 the trailing zero may be omitted."""
        vals = [_to_fraction(v) for v in values]
        if N == d + 1 and len(vals) == N:
            vals.append(Fraction(0))
        return cls(d, N, tuple(vals))

    @property
    def body(self) -> tuple[Fraction, ...]:
        """lambda_1..lambda_N."""
        return self.lambdas[: self.N]

    @property
    def lam_rest(self) -> Fraction:
        """lambda_{N+1}, the eigenvalue shared by all left-out directions."""
        return self.lambdas[self.N]

    def eigenvalue_sum(self) -> Fraction:
        """S = sum of body eigenvalues + (d+1-N) * lambda_{N+1}."""
        return sum(self.body, Fraction(0)) + (self.d + 1 - self.N) * self.lam_rest


@dataclass(frozen=True)
class ProbabilityVector:
    """Mixing weights (p_0, p_1, ..., p_N, p_{N+1}) summing exactly to one."""

    probs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "probs", tuple(_to_fraction(x) for x in self.probs))
        if len(self.probs) < 5:
            raise ValueError("need at least N+2 = 5 weights (N >= 3)")
        total = sum(self.probs, Fraction(0))
        if total != 1:
            raise ValueError(f"weights must sum to 1 exactly (got {total})")


@dataclass(frozen=True)
class EbCheck:
    """Result of the entanglement-breaking test.

    ``holds`` is the necessary condition; ``known_sufficient`` records
    whether that condition is also sufficient for this channel (N in
    {d, d+1} with all eigenvalues non-negative).
    """

    holds: bool
    known_sufficient: bool

    def __bool__(self) -> bool:
        return self.holds


def eigenvalues_from_probabilities(p: ProbabilityVector, d: int, N: int) -> ChannelSpec:
    """Convert mixing weights to eigenvalue coordinates, exactly."""
    if len(p.probs) != N + 2:
        raise ValueError(f"need N+2={N + 2} weights (got {len(p.probs)})")
    rest = p.probs[N + 1]
    if N == d + 1 and rest != 0:
        raise ValueError("p_{N+1} must be 0 when N = d+1 (no direction is left out)")
    lams = tuple(rest + p.probs[a] for a in range(1, N + 1)) + (rest,)
    return ChannelSpec(d, N, lams)


def probabilities_from_eigenvalues(c: ChannelSpec) -> ProbabilityVector:
    """Invert the eigenvalue map; the weights may be negative for non-CP input."""
    rest = c.lam_rest
    body = tuple(lam - rest for lam in c.body)
    p0 = 1 - rest - sum(body, Fraction(0))
    return ProbabilityVector((p0,) + body + (rest,))


def is_cp(c: ChannelSpec) -> bool:
    """Exact complete-positivity test in eigenvalue coordinates."""
    s = c.eigenvalue_sum()
    if c.N == c.d + 1:
        smallest = min(c.body)
    else:
        smallest = min(c.lambdas)
    return -Fraction(1, c.d - 1) <= s <= 1 + c.d * smallest


def is_positive_necessary(c: ChannelSpec) -> bool:
    """Necessary positivity box: lambda_alpha in [-1/(d-1), 1] for alpha = 1..N.

    Exactly equivalent to ``min_output_overlap(c) >= 0``.
    """
    lo = -Fraction(1, c.d - 1)
    return all(lo <= lam <= 1 for lam in c.body)


def min_output_overlap(c: ChannelSpec) -> Fraction:
    """Worst overlap Tr(Lambda[Q] P) over the channel's basis projector pairs.

    Closed form (1/d) * (1 + min(-lambda_max, (d-1) * lambda_min)) with the
    extrema taken over lambda_1..lambda_N.
    """
    worst = min(-max(c.body), (c.d - 1) * min(c.body))
    return Fraction(1, c.d) * (1 + worst)


def is_generator_achievable(c: ChannelSpec) -> bool:
    """True when every eigenvalue is non-negative (reachable by a time-local
    generator with non-negative rates, given complete positivity)."""
    return all(lam >= 0 for lam in c.lambdas)


def is_eb_necessary(c: ChannelSpec) -> EbCheck:
    """Entanglement-breaking test; see :class:`EbCheck` for the flag semantics."""
    holds = c.eigenvalue_sum() <= 1
    sufficient = c.N in (c.d, c.d + 1) and all(lam >= 0 for lam in c.lambdas)
    return EbCheck(holds=holds, known_sufficient=sufficient)


# --------------------------------------------------------------------------
# numerical channel action and Choi matrix (verification scaffolding)
# --------------------------------------------------------------------------


def _as_float_probs(c: ChannelSpec) -> np.ndarray:
    return np.array([float(p) for p in probabilities_from_eigenvalues(c).probs])


def apply(
    c: ChannelSpec,
    m: MubSet,
    rho: np.ndarray,
    *,
    validate: bool = True,
) -> np.ndarray:
    """Apply the channel to a matrix, using the first N bases of ``m``.

    With ``validate`` on (the default), non-Hermitian or non-unit-trace input
    draws a warning; operator arguments such as basis unitaries are legal,
    pass ``validate=False`` for them.
    """
    d, n = c.d, c.N
    if m.d != d:
        raise ValueError(f"basis family dimension {m.d} != channel dimension {d}")
    if m.n_bases < n:
        raise ValueError(f"need at least N={n} bases (family has {m.n_bases})")
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (d, d):
        raise ValueError(f"state shape {rho.shape} != ({d}, {d})")
    if validate:
        if not np.allclose(rho, rho.conj().T, atol=_HERMITICITY_TOL):
            warnings.warn("input matrix is not Hermitian", stacklevel=2)
        if abs(np.trace(rho) - 1.0) > _HERMITICITY_TOL:
            warnings.warn("input matrix does not have unit trace", stacklevel=2)

    p = _as_float_probs(c)
    out = p[n + 1] * rho + p[0] * np.trace(rho) / d * np.eye(d)
    for alpha in range(n):
        projs = m.projectors(alpha)
        out = out + p[alpha + 1] * np.einsum("kij,jl,klm->im", projs, rho, projs)
    return out


def _choi_of_map(apply_fn, d: int) -> np.ndarray:
    """Choi matrix (1/d) sum_{kl} |k><l| (x) map(|k><l|), from the definition."""
    rho = np.zeros((d * d, d * d), dtype=complex)
    for k in range(d):
        for l in range(d):
            e = np.zeros((d, d), dtype=complex)
            e[k, l] = 1.0
            rho += np.kron(e, apply_fn(e))
    return rho / d


def choi_basis(m: MubSet, n: int) -> np.ndarray:
    """Choi matrices of the channel's building blocks, aligned with the
    probability vector: stack[0] is Phi_0, stack[alpha] is Phi_alpha for
    alpha = 1..N, stack[N+1] is the identity map.

    The Choi matrix of any channel with these bases is then the contraction
    of its float probability weights with this stack, which makes bulk
    spectral checks cheap.
    """
    d = m.d
    if m.n_bases < n:
        raise ValueError(f"need at least N={n} bases (family has {m.n_bases})")
    eye = np.eye(d)
    stack = [_choi_of_map(lambda r: np.trace(r) / d * eye, d)]
    for alpha in range(n):
        projs = m.projectors(alpha)
        stack.append(
            _choi_of_map(lambda r: np.einsum("kij,jl,klm->im", projs, r, projs), d)
        )
    stack.append(_choi_of_map(lambda r: r, d))
    return np.array(stack)


def choi_state(c: ChannelSpec, m: MubSet) -> np.ndarray:
    """Choi matrix of the channel, computed directly from the definition."""
    return _choi_of_map(lambda r: apply(c, m, r, validate=False), c.d)
