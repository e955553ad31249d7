import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from decohere import (
    CapacityError,
    DensityMatrix,
    InvalidPartitionError,
    NormalizationError,
    QubitSubset,
    SymmetryViolationError,
    dagger,
    hermitian_eigenvalues,
    kron,
    partial_trace,
    partial_transpose,
)
from decohere.verify import random_density

I2 = np.eye(2)
P0 = np.diag([1.0, 0.0])
P1 = np.diag([0.0, 1.0])
S_PLUS = np.array([[0.0, 1.0], [0.0, 0.0]])  # |0><1|
S_MINUS = S_PLUS.T.copy()
PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]])


def density(mat):
    n = int(np.log2(mat.shape[0]))
    return DensityMatrix(n, mat)


class TestKron:
    def test_identity(self):
        assert np.array_equal(kron(I2, I2), np.eye(4))

    def test_projector_pair(self):
        assert np.array_equal(kron(P0, P1), np.diag([0.0, 1.0, 0.0, 0.0]))

    def test_raising_pair_hits_ghz_corner(self):
        # S+ (x) S+ is |00><11| — the off-diagonal corner of a two-qubit GHZ
        expected = np.zeros((4, 4))
        expected[0, 3] = 1.0
        assert np.array_equal(kron(S_PLUS, S_PLUS), expected)

    def test_capacity_wall(self):
        big = np.eye(2**7)
        with pytest.raises(CapacityError):
            kron(big, big)  # 2**14 > 2**12


class TestDagger:
    def test_lowers_raising_operator(self):
        assert np.array_equal(dagger(S_PLUS), S_MINUS)

    def test_conjugates_phases(self):
        assert np.array_equal(dagger(np.diag([1j, -1j])), np.diag([-1j, 1j]))

    @given(st.integers(0, 10**6))
    def test_involution_and_hermitian_fixed_points(self, seed):
        rng = np.random.default_rng(seed)
        a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        assert np.array_equal(dagger(dagger(a)), a)
        h = a + a.conj().T
        assert np.array_equal(dagger(h), h)


class TestDensityMatrix:
    def test_rejects_non_hermitian(self):
        mat = np.eye(4, dtype=complex) / 4
        mat[0, 1] = 0.5
        with pytest.raises(SymmetryViolationError):
            DensityMatrix(2, mat)

    def test_rejects_wrong_trace(self):
        with pytest.raises(NormalizationError):
            DensityMatrix(1, np.eye(2))

    def test_rejects_wrong_shape(self):
        with pytest.raises(ValueError):
            DensityMatrix(2, np.eye(2) / 2)

    def test_rejects_nan(self):
        mat = np.eye(2, dtype=complex) / 2
        mat[1, 1] = np.nan
        with pytest.raises(ValueError):
            DensityMatrix(1, mat)

    def test_assert_psd_catches_negative_direction(self):
        mat = np.diag([0.75, 0.75, -0.25, -0.25]).astype(complex)
        rho = DensityMatrix(2, mat)
        with pytest.raises(NormalizationError):
            rho.assert_psd()


class TestQubitSubset:
    def test_basis_mask_msb_convention(self):
        # qubit 1 is the most significant bit
        assert QubitSubset(3, frozenset({1})).basis_mask == 0b100
        assert QubitSubset(3, frozenset({3})).basis_mask == 0b001
        assert QubitSubset(3, frozenset({1, 3})).basis_mask == 0b101

    def test_complement(self):
        sub = QubitSubset(4, frozenset({2, 4}))
        assert sub.complement().members == frozenset({1, 3})

    def test_rejects_out_of_range(self):
        with pytest.raises(InvalidPartitionError):
            QubitSubset(2, frozenset({3}))


class TestPartialTrace:
    def test_product_state_factors(self):
        rng = np.random.default_rng(5)
        rho_a = random_density(rng, 1)
        rho_b = random_density(rng, 1)
        joint = density(kron(rho_a.mat, rho_b.mat))
        reduced = partial_trace(joint, QubitSubset(2, frozenset({2})))
        assert np.abs(reduced.mat - rho_a.mat).max() < 1e-14

    def test_ghz3_loses_coherence(self):
        from decohere import make_ghz, to_density

        rho = to_density(make_ghz(3))
        reduced = partial_trace(rho, QubitSubset(3, frozenset({3})))
        expected = np.diag([0.5, 0.0, 0.0, 0.5]).astype(complex)
        assert np.abs(reduced.mat - expected).max() < 1e-15

    def test_keeps_original_qubit_order(self):
        rng = np.random.default_rng(11)
        parts = [random_density(rng, 1) for _ in range(3)]
        joint = density(kron(kron(parts[0].mat, parts[1].mat), parts[2].mat))
        reduced = partial_trace(joint, QubitSubset(3, frozenset({2})))
        expected = kron(parts[0].mat, parts[2].mat)
        assert np.abs(reduced.mat - expected).max() < 1e-14

    @given(st.integers(0, 10**6), st.integers(2, 4))
    def test_trace_preserved(self, seed, n):
        rng = np.random.default_rng(seed)
        rho = random_density(rng, n)
        size = int(rng.integers(1, n))
        members = frozenset(map(int, rng.choice(np.arange(1, n + 1), size, replace=False)))
        reduced = partial_trace(rho, QubitSubset(n, members))
        assert abs(reduced.mat.trace() - 1.0) < 1e-12

    def test_rejects_empty_and_full(self):
        rho = density(np.eye(4, dtype=complex) / 4)
        with pytest.raises(InvalidPartitionError):
            partial_trace(rho, QubitSubset(2, frozenset()))
        with pytest.raises(InvalidPartitionError):
            partial_trace(rho, QubitSubset(2, frozenset({1, 2})))


class TestPartialTranspose:
    @given(st.integers(0, 10**6), st.integers(2, 4))
    def test_involution(self, seed, n):
        rng = np.random.default_rng(seed)
        rho = random_density(rng, n)
        members = frozenset({int(rng.integers(1, n + 1))})
        sub = QubitSubset(n, members)
        once = partial_transpose(rho, sub)
        # apply the same index swap again by hand
        mask = sub.basis_mask
        idx = np.arange(2**n)
        rows, cols = idx[:, None], idx[None, :]
        twice = once[(rows & ~mask) | (cols & mask), (cols & ~mask) | (rows & mask)]
        assert np.array_equal(twice, rho.mat)
        assert np.abs(once - once.conj().T).max() < 1e-15
        assert abs(once.trace() - 1.0) < 1e-14

    def test_product_state_stays_psd(self):
        rng = np.random.default_rng(3)
        rho_a = random_density(rng, 1)
        rho_b = random_density(rng, 1)
        joint = density(kron(rho_a.mat, rho_b.mat))
        pt = partial_transpose(joint, QubitSubset(2, frozenset({1})))
        assert np.abs(pt - kron(rho_a.mat.T, rho_b.mat)).max() < 1e-15
        assert hermitian_eigenvalues(pt)[0] > -1e-12

    def test_ghz2_spectrum(self):
        from decohere import make_ghz, to_density

        pt = partial_transpose(to_density(make_ghz(2)), QubitSubset(2, frozenset({1})))
        eigs = hermitian_eigenvalues(pt)
        assert np.abs(eigs - np.array([-0.5, 0.5, 0.5, 0.5])).max() < 1e-12


class TestHermitianEigenvalues:
    def test_sorts_ascending(self):
        eigs = hermitian_eigenvalues(np.diag([3.0, -1.0, 2.0]))
        assert np.allclose(eigs, [-1.0, 2.0, 3.0], atol=1e-14)

    def test_pauli_x(self):
        assert np.allclose(hermitian_eigenvalues(PAULI_X), [-1.0, 1.0], atol=1e-14)

    def test_dephased_ghz3_minimum(self):
        from decohere import AggregateDephasing, apply_dephasing, make_ghz, to_density

        rho = apply_dephasing(
            to_density(make_ghz(3)), AggregateDephasing.homogeneous(3, 0.5)
        )
        pt = partial_transpose(rho, QubitSubset(3, frozenset({1})))
        assert abs(hermitian_eigenvalues(pt)[0] - (-0.0625)) < 1e-12

    def test_rejects_non_hermitian(self):
        with pytest.raises(SymmetryViolationError):
            hermitian_eigenvalues(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_deterministic(self):
        rng = np.random.default_rng(17)
        a = rng.normal(size=(16, 16)) + 1j * rng.normal(size=(16, 16))
        h = a + a.conj().T
        first = hermitian_eigenvalues(h)
        assert np.array_equal(first, hermitian_eigenvalues(h.copy()))
