"""Collisional decoherence: microscopic collisions and the reduced map.

The physical picture: each system qubit suffers a sequence of bipartite
"collisions" with fresh environment qubits. A single collision is a
controlled unitary — the environment qubit evolves under one unitary when
the system qubit is |0> and another when it is |1>:

    U = |0><0| (x) V0  +  |1><1| (x) V1,
    V0 = |psi><0| + |psi_perp><1|,      V1 = |phi_perp><0| + |phi><1|.

Tracing out the environment leaves an exactly solvable single-qubit map: the
populations are untouched and the coherences pick up a factor whose modulus
``strength`` and argument ``phase`` are the polar parts of
``tr(xi . V1^dag V0)`` for environment state ``xi``. Collisions compose by
multiplying strengths and adding phases, so a whole history aggregates into
one (gamma, Phi) pair per qubit: off-diagonal entries of the n-qubit density
matrix get scaled by ``gamma_i`` and rotated by ``exp(+- i Phi_i)`` for each
qubit whose bra/ket bits disagree.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidPartitionError, InvalidSizeError
from .linalg import DensityMatrix, QubitSubset, kron, norm_check, partial_trace
from .tolerances import DEFAULT, Tolerances

TWO_PI = 2.0 * np.pi


def _mod_2pi(x: float) -> float:
    out = float(x) % TWO_PI
    # The % of a tiny negative number can land exactly on 2*pi.
    return 0.0 if out >= TWO_PI else out


@dataclass(frozen=True)
class CollisionParams:
    """Polar data of one collision: coherence shrink factor and phase kick."""

    strength: float
    phase: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.strength <= 1.0:
            raise ValueError(f"collision strength must be in [0, 1], got {self.strength}")
        object.__setattr__(self, "phase", _mod_2pi(self.phase))


@dataclass(frozen=True)
class CollisionSchedule:
    """Per-qubit ordered collision histories.

    ``per_qubit[i]`` lists the collisions suffered by qubit ``i+1``; an empty
    list means that qubit never collided and keeps full coherence.
    """

    n_qubits: int
    per_qubit: tuple[tuple[CollisionParams, ...], ...]

    def __post_init__(self):
        if len(self.per_qubit) != self.n_qubits:
            raise InvalidSizeError(
                f"schedule lists {len(self.per_qubit)} qubits, expected {self.n_qubits}"
            )
        object.__setattr__(
            self, "per_qubit", tuple(tuple(entries) for entries in self.per_qubit)
        )

    @classmethod
    def homogeneous(
        cls, n_qubits: int, collisions_per_qubit: int, strength: float, phase: float = 0.0
    ) -> "CollisionSchedule":
        """Every qubit suffers the same number of identical collisions."""
        if collisions_per_qubit < 0:
            raise InvalidSizeError("collision count cannot be negative")
        one = CollisionParams(strength, phase)
        return cls(n_qubits, ((one,) * collisions_per_qubit,) * n_qubits)


@dataclass(frozen=True, eq=False)
class AggregateDephasing:
    """The net per-qubit dephasing data: gamma in [0,1] and a phase."""

    gamma: np.ndarray
    phase: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        gamma = np.asarray(self.gamma, dtype=np.float64)
        phase = (
            np.zeros_like(gamma)
            if self.phase is None
            else np.asarray(self.phase, dtype=np.float64) % TWO_PI
        )
        if gamma.ndim != 1:
            raise InvalidSizeError("gamma must be a 1-D array")
        if phase.shape != gamma.shape:
            raise InvalidSizeError(
                f"phase shape {phase.shape} does not match gamma shape {gamma.shape}"
            )
        if gamma.size and (gamma.min() < 0.0 or gamma.max() > 1.0):
            raise ValueError("gamma values must lie in [0, 1]")
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "phase", phase)

    @property
    def n_qubits(self) -> int:
        return self.gamma.size

    @classmethod
    def homogeneous(cls, n_qubits: int, gamma: float, phase: float = 0.0):
        return cls(np.full(n_qubits, float(gamma)), np.full(n_qubits, float(phase)))


def schedule_aggregate(sched: CollisionSchedule) -> AggregateDephasing:
    """Collapse a collision history into per-qubit (gamma, phase) pairs.

    Strengths multiply and phases add (mod 2*pi); an empty history leaves
    gamma = 1, phase = 0.
    """
    gamma = np.ones(sched.n_qubits)
    phase = np.zeros(sched.n_qubits)
    for i, entries in enumerate(sched.per_qubit):
        for p in entries:
            gamma[i] *= p.strength
            phase[i] += p.phase
    return AggregateDephasing(gamma, phase % TWO_PI)


def perp_ket(ket: np.ndarray, phase: float = 0.0) -> np.ndarray:
    """A unit ket orthogonal to the given single-qubit ket.

    For ket (a, b) this returns ``exp(i*phase) * (-conj(b), conj(a))``. The
    overall phase is physically free; it is exposed because the derived
    collision parameters rotate with it, which some constructions exploit.
    """
    ket = np.asarray(ket, dtype=np.complex128)
    if ket.shape != (2,):
        raise InvalidSizeError(f"expected a single-qubit ket of shape (2,), got {ket.shape}")
    return np.exp(1j * phase) * np.array([-np.conj(ket[1]), np.conj(ket[0])])


@dataclass(frozen=True, eq=False)
class MicroCollisionSpec:
    """Full microscopic data of one collision.

    ``psi``/``phi_ket`` are the environment kets that |0>/|1> of the system
    qubit steer the environment onto; the perpendicular partners are built
    with the caller-supplied phases. ``xi`` is the (mixed, in general)
    pre-collision environment state.
    """

    psi: np.ndarray
    phi_ket: np.ndarray
    xi: DensityMatrix
    psi_perp_phase: float = 0.0
    phi_perp_phase: float = 0.0

    def __post_init__(self):
        psi = np.asarray(self.psi, dtype=np.complex128)
        phi_ket = np.asarray(self.phi_ket, dtype=np.complex128)
        for name, ket in (("psi", psi), ("phi_ket", phi_ket)):
            if ket.shape != (2,):
                raise InvalidSizeError(f"{name} must have shape (2,), got {ket.shape}")
            norm_check(ket)
        if self.xi.n_qubits != 1:
            raise InvalidSizeError("environment state xi must be a single qubit")
        self.xi.assert_psd()
        object.__setattr__(self, "psi", psi)
        object.__setattr__(self, "phi_ket", phi_ket)

    def v0(self) -> np.ndarray:
        """Environment unitary selected by system |0>: columns (psi, psi_perp)."""
        return np.column_stack([self.psi, perp_ket(self.psi, self.psi_perp_phase)])

    def v1(self) -> np.ndarray:
        """Environment unitary selected by system |1>: columns (phi_perp, phi)."""
        return np.column_stack([perp_ket(self.phi_ket, self.phi_perp_phase), self.phi_ket])


def build_collision_unitary(spec: MicroCollisionSpec) -> np.ndarray:
    """The 4x4 controlled collision: block-diagonal (V0, V1).

    Row/column index is (system bit, environment bit) with the system bit
    most significant. Orthonormal columns of V0 and V1 make this unitary by
    construction.
    """
    u = np.zeros((4, 4), dtype=np.complex128)
    u[:2, :2] = spec.v0()
    u[2:, 2:] = spec.v1()
    return u


def collision_params(spec: MicroCollisionSpec, tol: Tolerances = DEFAULT) -> CollisionParams:
    """Reduce a microscopic collision to its (strength, phase) pair.

    The reduced single-qubit map scales coherences by the environment
    expectation of ``V1^dag V0``; its modulus is the strength (clipped into
    [0, 1] against float fuzz at the boundary) and its argument the phase.
    """
    overlap = complex(np.trace(spec.xi.mat @ (spec.v1().conj().T @ spec.v0())))
    strength = min(abs(overlap), 1.0)
    return CollisionParams(strength, _mod_2pi(float(np.angle(overlap))))


def apply_microscopic_collision(
    rho: DensityMatrix, qubit: int, spec: MicroCollisionSpec
) -> DensityMatrix:
    """One collision, the long way: adjoin the environment, evolve, trace out.

    The environment qubit is appended as the least significant bit, the 4x4
    collision unitary acts on (system qubit, environment) via tensor
    contraction, and the environment is traced back out. Must agree with
    ``apply_dephasing`` using ``collision_params(spec)`` on the same qubit.
    """
    n = rho.n_qubits
    if not 1 <= qubit <= n:
        raise InvalidPartitionError(f"qubit {qubit} outside 1..{n}")

    full = kron(rho.mat, spec.xi.mat)  # raises CapacityError if n+1 too large
    tensor = full.reshape((2,) * (2 * (n + 1)))

    # Axis layout: row axes 0..n (system qubits 1..n then environment),
    # column axes n+1..2n+1 in the same order.
    u4 = build_collision_unitary(spec).reshape(2, 2, 2, 2)
    sys_row, env_row = qubit - 1, n
    sys_col, env_col = n + 1 + sys_row, n + 1 + env_row

    tensor = np.tensordot(u4, tensor, axes=([2, 3], [sys_row, env_row]))
    tensor = np.moveaxis(tensor, [0, 1], [sys_row, env_row])
    tensor = np.tensordot(tensor, np.conj(u4), axes=([sys_col, env_col], [2, 3]))
    tensor = np.moveaxis(tensor, [-2, -1], [sys_col, env_col])

    evolved = DensityMatrix(n + 1, tensor.reshape(2 ** (n + 1), 2 ** (n + 1)))
    return partial_trace(evolved, QubitSubset(n + 1, frozenset({n + 1})))


def dephasing_factors(n_qubits: int, agg: AggregateDephasing) -> np.ndarray:
    """The entrywise factor matrix the aggregated channel multiplies in.

    Entry (r, c) is the product over qubits of 1 (bits agree) or
    ``gamma_i * exp(-i * Phi_i * (bit_r - bit_c))`` (bits differ). Each
    per-qubit factor matrix is positive semidefinite (eigenvalues 1 +- gamma
    on its 2x2 core), so the full Schur-product factor is too — which is why
    dephasing preserves positivity.
    """
    dim = 2**n_qubits
    idx = np.arange(dim)
    factors = np.ones((dim, dim), dtype=np.complex128)
    for i in range(n_qubits):
        bit = (idx >> (n_qubits - 1 - i)) & 1
        diff = bit[:, None] - bit[None, :]
        g, ph = agg.gamma[i], agg.phase[i]
        factors *= np.where(diff == 0, 1.0, g * np.exp(-1j * ph * diff))
    return factors


def apply_dephasing(rho: DensityMatrix, agg: AggregateDephasing) -> DensityMatrix:
    """The reduced channel: populations kept, coherences shrunk and rotated."""
    if agg.n_qubits != rho.n_qubits:
        raise InvalidSizeError(
            f"aggregate covers {agg.n_qubits} qubits, state has {rho.n_qubits}"
        )
    return DensityMatrix(rho.n_qubits, rho.mat * dephasing_factors(rho.n_qubits, agg))
