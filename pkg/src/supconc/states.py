"""Complex linear algebra over bipartite tensor-product spaces.

States live on a pair of finite-dimensional systems A and B. Amplitude
vectors use the fixed row-major layout ``i * dim_b + j`` for the basis
ket ``|i>_A |j>_B``; every module in the package shares this convention,
and complex conjugation is always taken entrywise in this basis.

All values are immutable after construction (the wrapped numpy arrays
are marked read-only) and all operations are pure functions, so objects
are safe to share between threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    NotHermitian,
    NotNormalized,
    NotUnitary,
    WeightsNotNormalized,
    ZeroVector,
)

NORM_TOL = 1e-10     # |norm^2 - 1| allowed for a PureState
ZERO_TOL = 1e-12     # below this norm a vector counts as fully cancelled
HERMITIAN_TOL = 1e-10
PSD_TOL = -1e-10     # eigenvalues of a density matrix may dip this far
UNITARY_TOL = 1e-10


def _frozen_complex_vector(values) -> np.ndarray:
    arr = np.array(values, dtype=np.complex128, copy=True).reshape(-1)
    arr.setflags(write=False)
    return arr


def _frozen_complex_matrix(values) -> np.ndarray:
    arr = np.array(values, dtype=np.complex128, copy=True)
    if arr.ndim != 2:
        raise DimensionMismatch(f"expected a matrix, got ndim={arr.ndim}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class RawVector:
    """Bipartite amplitude vector with no normalization requirement.

    Same layout as :class:`PureState`; the norm may be anything,
    including zero (e.g. the unnormalized superposition of two
    non-orthogonal states, or their full cancellation).
    """

    dim_a: int
    dim_b: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.dim_a < 1 or self.dim_b < 1:
            raise DimensionMismatch("local dimensions must be positive")
        object.__setattr__(self, "amplitudes", _frozen_complex_vector(self.amplitudes))
        n = self.dim_a * self.dim_b
        if self.amplitudes.shape != (n,):
            raise DimensionMismatch(
                f"amplitude length {self.amplitudes.shape[0]} != dim_a*dim_b = {n}"
            )

    @property
    def matrix(self) -> np.ndarray:
        """Amplitudes reshaped to the dim_a x dim_b coefficient matrix."""
        return self.amplitudes.reshape(self.dim_a, self.dim_b)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@dataclass(frozen=True)
class PureState:
    """Normalized bipartite pure state.

    Invariants (checked at construction):

    * ``len(amplitudes) == dim_a * dim_b``
    * ``sum |amplitude|^2 == 1`` within ``NORM_TOL``
    """

    dim_a: int
    dim_b: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.dim_a < 1 or self.dim_b < 1:
            raise DimensionMismatch("local dimensions must be positive")
        object.__setattr__(self, "amplitudes", _frozen_complex_vector(self.amplitudes))
        n = self.dim_a * self.dim_b
        if self.amplitudes.shape != (n,):
            raise DimensionMismatch(
                f"amplitude length {self.amplitudes.shape[0]} != dim_a*dim_b = {n}"
            )
        norm_sq = float(np.vdot(self.amplitudes, self.amplitudes).real)
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise NotNormalized(norm_sq)

    @property
    def matrix(self) -> np.ndarray:
        """Amplitudes reshaped to the dim_a x dim_b coefficient matrix."""
        return self.amplitudes.reshape(self.dim_a, self.dim_b)

    def is_qubit_pair(self) -> bool:
        return self.dim_a == 2 and self.dim_b == 2


@dataclass(frozen=True)
class DensityMatrix:
    """Reduced state of one party.

    Hermitian within ``HERMITIAN_TOL`` and positive semidefinite down to
    ``PSD_TOL``. The trace equals 1 when the matrix was obtained by
    partial trace of a :class:`PureState`, but trace-1 is not required
    by the type itself.
    """

    dim: int
    entries: np.ndarray

    def __post_init__(self):
        if self.dim < 1:
            raise DimensionMismatch("dimension must be positive")
        object.__setattr__(self, "entries", _frozen_complex_matrix(self.entries))
        if self.entries.shape != (self.dim, self.dim):
            raise DimensionMismatch(
                f"entries shape {self.entries.shape} != ({self.dim}, {self.dim})"
            )
        dev = np.max(np.abs(self.entries - self.entries.conj().T))
        if dev > HERMITIAN_TOL:
            raise NotHermitian(f"max |rho - rho^dagger| = {dev!r}")
        eigmin = float(np.linalg.eigvalsh(self.entries)[0])
        if eigmin < PSD_TOL:
            raise NotHermitian(
                f"matrix is not positive semidefinite: min eigenvalue {eigmin!r}"
            )


@dataclass(frozen=True)
class OperatorAB:
    """Square operator on the joint A x B space.

    Hermiticity is *not* required: the map machinery is routinely
    applied to cross terms like ``|phi><varphi|``.
    """

    dim_a: int
    dim_b: int
    entries: np.ndarray

    def __post_init__(self):
        if self.dim_a < 1 or self.dim_b < 1:
            raise DimensionMismatch("local dimensions must be positive")
        object.__setattr__(self, "entries", _frozen_complex_matrix(self.entries))
        n = self.dim_a * self.dim_b
        if self.entries.shape != (n, n):
            raise DimensionMismatch(
                f"entries shape {self.entries.shape} != ({n}, {n})"
            )


@dataclass(frozen=True)
class SuperpositionSpec:
    """Weights and components of the superposition alpha*phi + beta*varphi."""

    alpha: complex
    beta: complex
    phi: PureState
    varphi: PureState

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))
        if (self.phi.dim_a, self.phi.dim_b) != (self.varphi.dim_a, self.varphi.dim_b):
            raise DimensionMismatch(
                "component states live on different spaces: "
                f"{(self.phi.dim_a, self.phi.dim_b)} vs "
                f"{(self.varphi.dim_a, self.varphi.dim_b)}"
            )
        wsum = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(wsum - 1.0) > NORM_TOL:
            raise WeightsNotNormalized(
                f"|alpha|^2 + |beta|^2 = {wsum!r}, expected 1"
            )

    @property
    def dims(self) -> tuple[int, int]:
        return self.phi.dim_a, self.phi.dim_b


def make_state(dim_a: int, dim_b: int, amplitudes) -> PureState:
    """Build a validated :class:`PureState`.

    Parameters
    ----------
    dim_a, dim_b : int
        Local dimensions of parties A and B.
    amplitudes : sequence of complex
        Length ``dim_a * dim_b`` in the row-major layout.

    Raises
    ------
    DimensionMismatch
        If the length does not match the dimensions.
    NotNormalized
        If the squared norm deviates from 1 by more than ``NORM_TOL``.
    """
    return PureState(dim_a, dim_b, amplitudes)


def superpose(spec: SuperpositionSpec) -> tuple[RawVector, float]:
    """Form ``alpha*phi + beta*varphi`` without normalizing.

    Returns
    -------
    (RawVector, float)
        The raw superposition vector and its squared norm, computed
        directly from the vector. For normalized weights the squared
        norm equals ``1 + 2 Re(conj(alpha) beta <phi|varphi>)``.
    """
    v = spec.alpha * spec.phi.amplitudes + spec.beta * spec.varphi.amplitudes
    norm_sq = float(np.vdot(v, v).real)
    return RawVector(spec.phi.dim_a, spec.phi.dim_b, v), norm_sq


def normalize(v: RawVector) -> tuple[PureState, float]:
    """Scale a raw vector to unit norm.

    Returns the normalized state together with the original norm.
    Raises :class:`ZeroVector` when the norm is at or below ``ZERO_TOL``
    (the alpha*phi = -beta*varphi cancellation).
    """
    norm = float(np.linalg.norm(v.amplitudes))
    if norm <= ZERO_TOL:
        raise ZeroVector(f"vector norm {norm!r} is below {ZERO_TOL}")
    return PureState(v.dim_a, v.dim_b, v.amplitudes / norm), norm


def inner_product(a: PureState | RawVector, b: PureState | RawVector) -> complex:
    """Hermitian inner product <a|b>, conjugate-linear in ``a``."""
    if (a.dim_a, a.dim_b) != (b.dim_a, b.dim_b):
        raise DimensionMismatch(
            f"states live on different spaces: {(a.dim_a, a.dim_b)} vs "
            f"{(b.dim_a, b.dim_b)}"
        )
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def _reduce_operator(entries: np.ndarray, dim_a: int, dim_b: int, side: str) -> np.ndarray:
    four = entries.reshape(dim_a, dim_b, dim_a, dim_b)
    if side == "A":
        return np.einsum("ijkj->ik", four)
    return np.einsum("ijil->jl", four)


def reduced_density(x: PureState | OperatorAB, side: str) -> DensityMatrix | np.ndarray:
    """Partial trace over the complementary subsystem.

    ``side="A"`` traces out B and returns the state of A; ``side="B"``
    the converse. The full trace is preserved.

    For a :class:`PureState` input the result is a validated
    :class:`DensityMatrix`. For an :class:`OperatorAB` input (which may
    be non-Hermitian) the raw complex matrix is returned instead.
    """
    side = side.upper()
    if side not in ("A", "B"):
        raise DimensionMismatch(f"side must be 'A' or 'B', got {side!r}")
    if isinstance(x, PureState):
        m = x.matrix
        if side == "A":
            return DensityMatrix(x.dim_a, m @ m.conj().T)
        return DensityMatrix(x.dim_b, m.T @ m.conj())
    if isinstance(x, OperatorAB):
        return _reduce_operator(x.entries, x.dim_a, x.dim_b, side)
    raise DimensionMismatch(f"cannot take a partial trace of {type(x).__name__}")


def schmidt_coefficients(s: PureState) -> np.ndarray:
    """Singular values of the coefficient matrix, in descending order.

    The squared values are the eigenvalues of either reduced state and
    sum to 1; the list has length ``min(dim_a, dim_b)``. Only the
    multiset is meaningful; ties are in arbitrary order.
    """
    return np.linalg.svd(s.matrix, compute_uv=False)


def purity(rho: DensityMatrix | np.ndarray) -> float:
    """Tr(rho^2); lies in [1/dim, 1] for a valid density matrix."""
    if isinstance(rho, DensityMatrix):
        entries = rho.entries
    else:
        entries = np.asarray(rho, dtype=np.complex128)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise DimensionMismatch(f"expected a square matrix, got {entries.shape}")
        dev = np.max(np.abs(entries - entries.conj().T))
        if dev > HERMITIAN_TOL:
            raise NotHermitian(f"max |rho - rho^dagger| = {dev!r}")
    return float(np.trace(entries @ entries).real)


def _check_unitary(u: np.ndarray, dim: int, label: str) -> np.ndarray:
    u = np.asarray(u, dtype=np.complex128)
    if u.shape != (dim, dim):
        raise DimensionMismatch(f"{label} has shape {u.shape}, expected ({dim}, {dim})")
    dev = np.max(np.abs(u.conj().T @ u - np.eye(dim)))
    if dev > UNITARY_TOL:
        raise NotUnitary(f"{label}: max |U^dagger U - I| = {dev!r}")
    return u


def apply_local_unitary(s: PureState, u_a, u_b) -> PureState:
    """Apply ``(u_a tensor u_b)`` to a state; the result stays normalized."""
    u_a = _check_unitary(u_a, s.dim_a, "u_a")
    u_b = _check_unitary(u_b, s.dim_b, "u_b")
    m = u_a @ s.matrix @ u_b.T
    return PureState(s.dim_a, s.dim_b, m.reshape(-1))


def outer_operator(x: PureState, y: PureState) -> OperatorAB:
    """The (generally non-Hermitian) operator ``|x><y|``."""
    if (x.dim_a, x.dim_b) != (y.dim_a, y.dim_b):
        raise DimensionMismatch(
            f"states live on different spaces: {(x.dim_a, x.dim_b)} vs "
            f"{(y.dim_a, y.dim_b)}"
        )
    return OperatorAB(x.dim_a, x.dim_b, np.outer(x.amplitudes, y.amplitudes.conj()))


# --- state file format -------------------------------------------------
#
# {"dim_a": int, "dim_b": int, "amplitudes": [[re, im], ...]}
#
# Amplitudes are written with 17 significant digits, which round-trips
# IEEE doubles exactly.


def state_to_json(s: PureState | RawVector) -> str:
    """Serialize a state to the JSON state-file format."""
    pairs = ",\n    ".join(
        f"[{a.real:.17g}, {a.imag:.17g}]" for a in s.amplitudes
    )
    return (
        "{\n"
        f'  "dim_a": {s.dim_a},\n'
        f'  "dim_b": {s.dim_b},\n'
        f'  "amplitudes": [\n    {pairs}\n  ]\n'
        "}\n"
    )


def state_from_json(text: str) -> PureState:
    """Parse and validate a state from the JSON state-file format."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DimensionMismatch(f"invalid state file: not valid JSON ({exc})") from exc
    if not isinstance(doc, dict):
        raise DimensionMismatch("invalid state file: top level must be an object")
    for key in ("dim_a", "dim_b", "amplitudes"):
        if key not in doc:
            raise DimensionMismatch(f"invalid state file: missing key {key!r}")
    dim_a, dim_b = doc["dim_a"], doc["dim_b"]
    if not isinstance(dim_a, int) or not isinstance(dim_b, int):
        raise DimensionMismatch("invalid state file: dims must be integers")
    amps = []
    for entry in doc["amplitudes"]:
        if not (isinstance(entry, list) and len(entry) == 2):
            raise DimensionMismatch(
                "invalid state file: amplitudes must be [re, im] pairs"
            )
        amps.append(complex(entry[0], entry[1]))
    return make_state(dim_a, dim_b, amps)


def save_state(s: PureState | RawVector, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(state_to_json(s))


def load_state(path) -> PureState:
    with open(path, encoding="ascii") as fh:
        return state_from_json(fh.read())
