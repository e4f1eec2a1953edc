"""Spectral description of bilinear control systems and their Galerkin compressions.

A system is given by the eigenvalue sequence ``lambda_n`` (n >= 1) of the free
generator and by the coupling matrix elements ``b[l](j, k)`` of each control
channel in the same eigenbasis.  Basis indices are 1-based everywhere in the
public interface; storage is 0-based internally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import (
    InvalidControlError,
    InvalidDimensionError,
    InvalidExponentError,
    ModelError,
    ShapeMismatchError,
)

__all__ = [
    "SpectrumSpec",
    "CouplingSpec",
    "ControlSystemSpec",
    "PiecewiseConstantControl",
    "QuantumState",
    "GalerkinSystem",
    "build_galerkin",
    "s_norm",
    "l1_norm",
    "project",
    "basis_state",
    "two_level_superposition",
]

#: entrywise tolerance for the skew-adjointness check b[j,k] == -conj(b[k,j])
SKEW_TOL = 1e-12


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class SpectrumSpec:
    """Eigenvalue sequence ``lambda_n`` of the free generator, positive, non-decreasing
    and unbounded.

    ``eigenvalue_fn`` maps a 1-based index to the (already shifted, if needed)
    eigenvalue.  ``shift`` records any positivity shift applied at construction;
    the shift only contributes a global phase to the dynamics.
    """

    eigenvalue_fn: Callable[[int], float]
    label: str = "custom"
    max_index: Optional[int] = None
    shift: float = 0.0

    def eigenvalue(self, n: int) -> float:
        if n < 1:
            raise InvalidDimensionError(f"basis index must be >= 1, got {n}")
        if self.max_index is not None and n > self.max_index:
            raise InvalidDimensionError(
                f"index {n} beyond tabulated spectrum of length {self.max_index}"
            )
        return float(self.eigenvalue_fn(n))

    def eigenvalues(self, n_max: int) -> np.ndarray:
        """Vector (lambda_1, ..., lambda_{n_max}), validated positive and non-decreasing."""
        lams = np.array([self.eigenvalue(n) for n in range(1, n_max + 1)], dtype=float)
        if lams.size and lams[0] <= 0.0:
            raise ModelError(f"lambda_1 = {lams[0]} is not positive")
        if np.any(np.diff(lams) < 0.0):
            bad = int(np.argmax(np.diff(lams) < 0.0)) + 1
            raise ModelError(f"spectrum decreases between indices {bad} and {bad + 1}")
        return lams


@dataclass(frozen=True)
class CouplingSpec:
    """Matrix elements ``b[l](j, k)`` of the coupling operators in the eigenbasis.

    ``element_fn(l, j, k)`` is 1-based in all three arguments and must satisfy
    ``b[j,k] == -conj(b[k,j])`` for every channel.  ``bandwidth == 1`` declares a
    tri-diagonal system (entries vanish for ``|j - k| > 1``).
    """

    element_fn: Callable[[int, int, int], complex]
    channels: int = 1
    bandwidth: Optional[int] = None
    diagonal_is_zero: bool = False
    max_index: Optional[int] = None

    def element(self, l: int, j: int, k: int) -> complex:
        if not 1 <= l <= self.channels:
            raise ShapeMismatchError(f"channel {l} outside 1..{self.channels}")
        if j < 1 or k < 1:
            raise InvalidDimensionError(f"basis indices must be >= 1, got ({j}, {k})")
        if self.max_index is not None and max(j, k) > self.max_index:
            raise InvalidDimensionError(
                f"index pair ({j}, {k}) beyond tabulated couplings of size {self.max_index}"
            )
        try:
            return complex(self.element_fn(l, j, k))
        except Exception as exc:  # noqa: BLE001 - re-raise with index context
            raise ModelError(f"coupling evaluation failed at (l={l}, j={j}, k={k}): {exc}") from exc

    def matrix(self, l: int, n: int) -> np.ndarray:
        """Dense n-by-n compression of channel ``l``, validated skew-Hermitian."""
        if self.bandwidth == 1:
            b = np.zeros((n, n), dtype=complex)
            for j in range(1, n + 1):
                b[j - 1, j - 1] = self.element(l, j, j)
                if j < n:
                    b[j - 1, j] = self.element(l, j, j + 1)
                    b[j, j - 1] = self.element(l, j + 1, j)
        else:
            b = np.array(
                [[self.element(l, j, k) for k in range(1, n + 1)] for j in range(1, n + 1)],
                dtype=complex,
            )
        scale = max(1.0, float(np.max(np.abs(b))) if n else 1.0)
        dev = np.max(np.abs(b + b.conj().T)) if n else 0.0
        if dev > SKEW_TOL * scale:
            jj, kk = np.unravel_index(int(np.argmax(np.abs(b + b.conj().T))), b.shape)
            raise ModelError(
                f"coupling channel {l} is not skew-adjoint at (j={jj + 1}, k={kk + 1}): "
                f"deviation {dev:.3e}"
            )
        if self.diagonal_is_zero and n and np.max(np.abs(np.diag(b))) > 0.0:
            raise ModelError(f"channel {l} declared with zero diagonal but b[j,j] != 0")
        if self.bandwidth is not None:
            mask = np.abs(np.subtract.outer(np.arange(n), np.arange(n))) > self.bandwidth
            if n and np.max(np.abs(b[mask]), initial=0.0) > 0.0:
                raise ModelError(f"channel {l} violates declared bandwidth {self.bandwidth}")
        return b


@dataclass(frozen=True)
class ControlSystemSpec:
    """A named control system: spectrum plus coupling data in a common eigenbasis.

    ``coupling_summand_decreasing`` certifies that the tri-diagonal coupling-constant
    summand ``|b[n,n+1]| * (lambda_{n+1}^k / lambda_n^k - 1)`` is non-increasing in n
    for every integer k >= 1 (true for the built-in closed-form models, where each
    binomial term decays like n^{1/2 - i}).
    """

    spectrum: SpectrumSpec
    couplings: CouplingSpec
    name: str = "custom"
    params: dict = field(default_factory=dict)
    coupling_summand_decreasing: bool = False

    @property
    def channels(self) -> int:
        return self.couplings.channels

    @property
    def is_tridiagonal(self) -> bool:
        return self.couplings.bandwidth == 1


@dataclass(frozen=True)
class PiecewiseConstantControl:
    """Ordered list of (duration, value-vector) segments; empty list is the zero control."""

    segments: tuple = ()

    def __post_init__(self):
        cleaned = []
        width = None
        for i, (dt, values) in enumerate(self.segments):
            dt = float(dt)
            if dt < 0.0 or not math.isfinite(dt):
                raise InvalidControlError(f"segment {i} has invalid duration {dt}")
            values = tuple(float(v) for v in values)
            if width is None:
                width = len(values)
            elif len(values) != width:
                raise InvalidControlError(
                    f"segment {i} has {len(values)} channels, expected {width}"
                )
            cleaned.append((dt, values))
        object.__setattr__(self, "segments", tuple(cleaned))

    @property
    def channels(self) -> int:
        return len(self.segments[0][1]) if self.segments else 0

    @property
    def total_duration(self) -> float:
        return math.fsum(dt for dt, _ in self.segments)

    @property
    def l1_norm(self) -> float:
        return math.fsum(dt * abs(v) for dt, values in self.segments for v in values)

    @classmethod
    def constant(cls, values: Sequence[float], duration: float) -> "PiecewiseConstantControl":
        return cls(((float(duration), tuple(values)),))

    def to_dict(self) -> dict:
        return {"segments": [{"dt": dt, "u": list(values)} for dt, values in self.segments]}

    @classmethod
    def from_dict(cls, doc: dict) -> "PiecewiseConstantControl":
        try:
            segs = tuple((seg["dt"], tuple(seg["u"])) for seg in doc["segments"])
        except (KeyError, TypeError) as exc:
            raise InvalidControlError(f"malformed control document: {exc}") from exc
        return cls(segs)


def l1_norm(control: PiecewiseConstantControl) -> float:
    """Total L1 budget sum_l integral |u_l|, computed exactly from the segments."""
    return control.l1_norm


@dataclass(frozen=True)
class QuantumState:
    """Coefficient vector of a state in the eigenbasis (entry j-1 holds <phi_j, psi>)."""

    coefficients: np.ndarray
    normalized: bool = True

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=complex).reshape(-1)
        object.__setattr__(self, "coefficients", _readonly(c))

    @property
    def dim(self) -> int:
        return int(self.coefficients.size)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.coefficients))

    def coefficient(self, j: int) -> complex:
        if not 1 <= j <= self.dim:
            raise InvalidDimensionError(f"index {j} outside 1..{self.dim}")
        return complex(self.coefficients[j - 1])


def basis_state(dim: int, n: int) -> QuantumState:
    """The n-th basis vector phi_n represented at truncation order ``dim``."""
    if not 1 <= n <= dim:
        raise InvalidDimensionError(f"basis index {n} outside 1..{dim}")
    c = np.zeros(dim, dtype=complex)
    c[n - 1] = 1.0
    return QuantumState(c)


def two_level_superposition(dim: int, lo: int, hi: int, angle: float) -> QuantumState:
    """Unit state cos(angle) * phi_lo + sin(angle) * phi_hi."""
    if not (1 <= lo <= dim and 1 <= hi <= dim) or lo == hi:
        raise InvalidDimensionError(f"levels ({lo}, {hi}) invalid for dimension {dim}")
    c = np.zeros(dim, dtype=complex)
    c[lo - 1] = math.cos(angle)
    c[hi - 1] = math.sin(angle)
    return QuantumState(c)


def s_norm(state: QuantumState, spectrum: SpectrumSpec, s: float) -> float:
    """Weighted norm sqrt(sum_j lambda_j^{2s} |c_j|^2); s = 0 is the Euclidean norm."""
    if s < 0.0:
        raise InvalidExponentError(f"s-norm exponent must be >= 0, got {s}")
    c = state.coefficients
    if c.size == 0:
        return 0.0
    lams = spectrum.eigenvalues(c.size)
    return float(math.sqrt(np.sum(lams ** (2.0 * s) * np.abs(c) ** 2)))


def project(state: QuantumState, n: int) -> QuantumState:
    """Orthogonal projection onto the first n levels; identity when n >= dim."""
    if n < 1:
        raise InvalidDimensionError(f"projection order must be >= 1, got {n}")
    if n >= state.dim:
        return state
    return QuantumState(state.coefficients[:n].copy(), normalized=False)


@dataclass(frozen=True)
class GalerkinSystem:
    """Dense order-N compressions of the free generator and the coupling operators.

    ``a_matrix`` is diag(-i * lambda_j); every ``b_matrix`` is skew-Hermitian and
    agrees entrywise with the coupling specification.
    """

    order: int
    a_matrix: np.ndarray
    b_matrices: tuple
    lambdas: np.ndarray
    diagonal_is_zero: bool = False
    bandwidth: Optional[int] = None
    system_name: str = "custom"

    def __post_init__(self):
        object.__setattr__(self, "a_matrix", _readonly(np.asarray(self.a_matrix, dtype=complex)))
        object.__setattr__(
            self, "b_matrices", tuple(_readonly(np.asarray(b, dtype=complex)) for b in self.b_matrices)
        )
        object.__setattr__(self, "lambdas", _readonly(np.asarray(self.lambdas, dtype=float)))

    @property
    def channels(self) -> int:
        return len(self.b_matrices)

    def generator(self, values: Sequence[float]) -> np.ndarray:
        """Skew-Hermitian generator A + sum_l u_l B_l for one control vector."""
        if len(values) != self.channels:
            raise ShapeMismatchError(
                f"control vector has {len(values)} channels, system has {self.channels}"
            )
        g = self.a_matrix.astype(complex, copy=True)
        for u, b in zip(values, self.b_matrices):
            if u != 0.0:
                g += u * b
        return g


def build_galerkin(system: ControlSystemSpec, n: int) -> GalerkinSystem:
    """Compress the system onto the span of the first n eigenvectors.

    Deterministic: identical inputs give bit-identical matrices.
    """
    if n < 1:
        raise InvalidDimensionError(f"Galerkin order must be >= 1, got {n}")
    lams = system.spectrum.eigenvalues(n)
    a = np.diag(-1j * lams)
    bs = tuple(system.couplings.matrix(l, n) for l in range(1, system.channels + 1))
    return GalerkinSystem(
        order=n,
        a_matrix=a,
        b_matrices=bs,
        lambdas=lams,
        diagonal_is_zero=system.couplings.diagonal_is_zero,
        bandwidth=system.couplings.bandwidth,
        system_name=system.name,
    )
