"""Dense complex linear algebra over qubit registers.

Conventions used everywhere in this package:

* Qubit indices are 1-based. Qubit 1 is the *most significant* bit of a
  computational-basis index, so for three qubits the basis ket ``|q1 q2 q3>``
  has index ``q1*4 + q2*2 + q3``.
* Matrices are plain ``numpy`` complex128 arrays; state vectors are 1-D
  arrays of length ``2**n``.

The eigensolver here is the brute-force oracle that every closed-form
negativity result is checked against, so it is deliberately thin: validate the
input is Hermitian, then hand off to LAPACK, which is deterministic for a
fixed build and identical input.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    CapacityError,
    InvalidPartitionError,
    NormalizationError,
    SymmetryViolationError,
)
from .tolerances import DEFAULT, MAX_QUBITS, Tolerances


def _as_complex(a) -> np.ndarray:
    out = np.asarray(a, dtype=np.complex128)
    if not np.isfinite(out).all():
        raise ValueError("matrix contains NaN or Inf entries")
    return out


@dataclass(frozen=True)
class QubitSubset:
    """A subset of the qubits of an ``n_qubits`` register.

    ``members`` holds 1-based qubit indices. The subset knows how to express
    itself as a bitmask over basis-state indices (qubit 1 = most significant
    bit), which is what the partial trace and partial transpose consume.
    """

    n_qubits: int
    members: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n_qubits < 1:
            raise InvalidPartitionError(f"n_qubits must be >= 1, got {self.n_qubits}")
        object.__setattr__(self, "members", frozenset(int(q) for q in self.members))
        bad = [q for q in self.members if not 1 <= q <= self.n_qubits]
        if bad:
            raise InvalidPartitionError(
                f"qubit indices {sorted(bad)} outside 1..{self.n_qubits}"
            )

    @property
    def basis_mask(self) -> int:
        """Bitmask over basis indices with a set bit for each member qubit."""
        mask = 0
        for q in self.members:
            mask |= 1 << (self.n_qubits - q)
        return mask

    def complement(self) -> "QubitSubset":
        rest = frozenset(range(1, self.n_qubits + 1)) - self.members
        return QubitSubset(self.n_qubits, rest)

    def __len__(self) -> int:
        return len(self.members)

    def sorted_members(self) -> list[int]:
        return sorted(self.members)


class DensityMatrix:
    """A validated n-qubit density matrix.

    Construction checks Hermiticity, unit trace, and finiteness (cheap,
    entrywise). Positive semidefiniteness is *guaranteed by construction* for
    every operation in this library — unitary conjugation, partial tracing,
    and dephasing (a Schur product with a positive-semidefinite factor
    matrix) all preserve it — so the eigensolve it would cost is only spent
    when a caller explicitly asks via :meth:`assert_psd`, which the trust
    boundaries (user-supplied environment states, config loading, tests) do.
    """

    __slots__ = ("n_qubits", "mat")

    def __init__(self, n_qubits: int, mat, tol: Tolerances = DEFAULT):
        mat = _as_complex(mat)
        dim = 2**n_qubits
        if mat.shape != (dim, dim):
            raise ValueError(
                f"expected a {dim}x{dim} matrix for {n_qubits} qubits, got {mat.shape}"
            )
        if n_qubits > MAX_QUBITS:
            raise CapacityError(
                f"{n_qubits} qubits exceeds the dense capacity of {MAX_QUBITS}"
            )
        herm_defect = np.abs(mat - mat.conj().T).max()
        if herm_defect > tol.hermiticity:
            raise SymmetryViolationError(
                f"density matrix is not Hermitian: max |A - A^dag| = {herm_defect:.3e}"
            )
        tr = mat.trace()
        if abs(tr - 1.0) > tol.trace:
            raise NormalizationError(f"density matrix trace {tr} differs from 1")
        self.n_qubits = n_qubits
        self.mat = mat

    @property
    def dim(self) -> int:
        return 2**self.n_qubits

    def assert_psd(self, tol: Tolerances = DEFAULT) -> None:
        """Raise NormalizationError unless all eigenvalues are >= tol.psd."""
        smallest = hermitian_eigenvalues(self.mat, tol)[0]
        if smallest < tol.psd:
            raise NormalizationError(
                f"density matrix has negative eigenvalue {smallest:.3e}"
            )


def kron(a, b) -> np.ndarray:
    """Tensor (Kronecker) product of two square matrices.

    The result dimension is capped at ``2**MAX_QUBITS``; growing past that
    raises :class:`CapacityError` instead of silently allocating gigabytes.
    """
    a = _as_complex(a)
    b = _as_complex(b)
    if a.shape[0] * b.shape[0] > 2**MAX_QUBITS:
        raise CapacityError(
            f"kron result dimension {a.shape[0] * b.shape[0]} exceeds 2**{MAX_QUBITS}"
        )
    return np.kron(a, b)


def dagger(a) -> np.ndarray:
    """Conjugate transpose."""
    return _as_complex(a).conj().T.copy()


def require_hermitian(a: np.ndarray, bound: float) -> None:
    defect = np.abs(a - a.conj().T).max()
    if defect > bound:
        raise SymmetryViolationError(
            f"matrix is not Hermitian within {bound:.1e}: defect {defect:.3e}"
        )


def partial_trace(rho: DensityMatrix, traced: QubitSubset) -> DensityMatrix:
    """Trace out the qubits in ``traced``, keeping the rest in original order.

    Works by viewing the matrix as a rank-2n tensor (one row axis and one
    column axis per qubit) and contracting the row/column axis pairs of the
    traced qubits in a single einsum.
    """
    n = rho.n_qubits
    if traced.n_qubits != n:
        raise InvalidPartitionError(
            f"subset is over {traced.n_qubits} qubits, state has {n}"
        )
    if not traced.members or len(traced.members) == n:
        raise InvalidPartitionError("traced set must be a nonempty proper subset")

    tensor = rho.mat.reshape((2,) * (2 * n))
    # Row axis of qubit q is q-1, column axis is n+q-1. Tying a pair of
    # subscripts together in einsum sums over that qubit's diagonal.
    subscripts = list(range(2 * n))
    for q in traced.members:
        subscripts[n + q - 1] = subscripts[q - 1]
    kept = [q for q in range(1, n + 1) if q not in traced.members]
    out_subscripts = [q - 1 for q in kept] + [n + q - 1 for q in kept]
    reduced = np.einsum(tensor, subscripts, out_subscripts)

    m = len(kept)
    return DensityMatrix(m, reduced.reshape(2**m, 2**m))


def partial_transpose(rho: DensityMatrix, transposed: QubitSubset) -> np.ndarray:
    """Transpose only the indices of the given qubits.

    Entry ``(r, c)`` of the result is taken from ``(r', c')`` where the bits
    of ``r`` and ``c`` on the transposed qubits are swapped. The output stays
    Hermitian but is generally not positive — its negative eigenvalues are
    the entanglement witnesses everything downstream consumes.
    """
    n = rho.n_qubits
    if transposed.n_qubits != n:
        raise InvalidPartitionError(
            f"subset is over {transposed.n_qubits} qubits, state has {n}"
        )
    if not transposed.members or len(transposed.members) == n:
        raise InvalidPartitionError("transposed set must be a nonempty proper subset")

    mask = transposed.basis_mask
    idx = np.arange(rho.dim)
    rows = idx[:, None]
    cols = idx[None, :]
    src_rows = (rows & ~mask) | (cols & mask)
    src_cols = (cols & ~mask) | (rows & mask)
    return rho.mat[src_rows, src_cols]


def hermitian_eigenvalues(a, tol: Tolerances = DEFAULT) -> np.ndarray:
    """All eigenvalues of a Hermitian matrix, ascending.

    This is the oracle the closed-form results are verified against, so the
    input contract is enforced rather than assumed: a non-Hermitian argument
    (beyond ``tol.eigensolver_input`` in max-norm) raises
    :class:`SymmetryViolationError` instead of returning garbage quietly.
    """
    a = _as_complex(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    require_hermitian(a, tol.eigensolver_input)
    return np.linalg.eigvalsh(a)


def outer(psi: np.ndarray) -> np.ndarray:
    """Outer product |psi><psi| of a 1-D state vector."""
    psi = np.asarray(psi, dtype=np.complex128)
    return np.outer(psi, psi.conj())


def norm_check(psi: np.ndarray, tol: Tolerances = DEFAULT) -> None:
    nrm = float(np.vdot(psi, psi).real)
    if abs(nrm - 1.0) > tol.normalization:
        raise NormalizationError(f"state vector squared norm {nrm} differs from 1")
