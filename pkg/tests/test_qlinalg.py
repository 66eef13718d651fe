import numpy as np
import pytest
from hypothesis import given, strategies as st

from quditpure.qlinalg import (
    DensityMatrix,
    HilbertShape,
    Ket,
    MultiIndex,
    NotProjectorError,
    NotUnitaryError,
    Operator,
    ZeroProbabilityError,
    conjugate_by,
    partial_trace,
    project_renormalize,
    pure_fidelity,
    qudit,
    qudits,
    tensor,
    tensor_density,
)
from quditpure.gates import BellLabel, bell_state, fourier

from conftest import random_density


class TestHilbertShape:
    def test_total_dim(self):
        assert HilbertShape((2, 3, 4)).total_dim == 24

    def test_rejects_dimension_one(self):
        with pytest.raises(ValueError):
            HilbertShape((2, 1))

    def test_concatenation(self):
        assert (qudit(2) * qudit(3)).local_dims == (2, 3)


class TestMultiIndex:
    @given(
        st.integers(min_value=2, max_value=20),
        st.integers(min_value=1, max_value=4),
        st.data(),
    )
    def test_linear_roundtrip(self, base, length, data):
        value = data.draw(st.integers(min_value=0, max_value=base**length - 1))
        idx = MultiIndex.from_linear(value, base, length)
        assert idx.linear == value
        assert MultiIndex(idx.digits, base).linear == value

    def test_big_endian(self):
        assert MultiIndex((1, 0), 3).linear == 3
        assert MultiIndex((0, 1), 3).linear == 1

    def test_mod_sub_componentwise(self):
        a = MultiIndex((0, 2), 3)
        b = MultiIndex((2, 1), 3)
        assert a.mod_sub(b).digits == (1, 1)

    def test_rejects_out_of_range_digit(self):
        with pytest.raises(ValueError):
            MultiIndex((3,), 3)


class TestKet:
    def test_normalized_constructor(self):
        psi = Ket.normalized(qudit(4), [1, 1, 1, 1])
        assert abs(psi.norm - 1.0) < 1e-12

    def test_zero_vector_rejected(self):
        with pytest.raises(ValueError):
            Ket.normalized(qudit(2), [0, 0])

    def test_density_is_pure(self):
        rho = Ket.normalized(qudit(3), [1, 1j, 0]).density()
        assert abs(rho.purity() - 1.0) < 1e-12


class TestTensor:
    def test_identity_case(self):
        a = Operator.identity(qudit(2))
        b = Operator.identity(qudit(3))
        out = tensor(a, b)
        assert out.shape.local_dims == (2, 3)
        np.testing.assert_array_equal(out.entries, np.eye(6))

    def test_basis_projectors(self):
        p0 = Ket.basis(qudit(2), 0).projector()
        p1 = Ket.basis(qudit(2), 1).projector()
        out = tensor(p0, p1)
        expected = np.zeros((4, 4))
        expected[1, 1] = 1.0
        np.testing.assert_array_equal(out.entries, expected)

    def test_matches_double_loop_oracle(self, rng):
        a = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        b = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        out = tensor(Operator(qudit(2), a), Operator(qudit(2), b)).entries
        for i1 in range(2):
            for i2 in range(2):
                for j1 in range(2):
                    for j2 in range(2):
                        # np.kron's complex multiply differs by ~1 ulp
                        assert abs(out[2 * i1 + i2, 2 * j1 + j2] - a[i1, j1] * b[i2, j2]) < 1e-14

    def test_associativity(self, rng):
        mats = [
            Operator(qudit(2), rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))
            for _ in range(3)
        ]
        left = tensor(tensor(mats[0], mats[1]), mats[2])
        right = tensor(mats[0], tensor(mats[1], mats[2]))
        np.testing.assert_allclose(left.entries, right.entries, atol=1e-14)


class TestPartialTrace:
    def test_product_state(self, rng):
        a = random_density(2, 1, rng)
        b = random_density(3, 1, rng)
        out = partial_trace(tensor_density(a, b), keep=[0])
        np.testing.assert_allclose(out.entries, a.entries, atol=1e-12)

    def test_bell_state_reduction(self):
        rho = bell_state(BellLabel(0, 0, 3)).density()
        out = partial_trace(rho, keep=[1])
        np.testing.assert_allclose(out.entries, np.eye(3) / 3, atol=1e-12)

    def test_trace_preserved(self, rng):
        rho = random_density(2, 3, rng)
        out = partial_trace(rho, keep=[0, 2])
        assert abs(np.trace(out.entries) - 1.0) < 1e-12
        assert out.shape.local_dims == (2, 2)

    def test_complementary_subsets_compose_to_scalar_trace(self, rng):
        rho = random_density(2, 2, rng)
        left = partial_trace(rho, keep=[0])
        assert abs(np.trace(left.entries) - 1.0) < 1e-12

    def test_empty_keep_rejected(self, rng):
        with pytest.raises(ValueError):
            partial_trace(random_density(2, 2, rng), keep=[])

    def test_out_of_range_keep_rejected(self, rng):
        with pytest.raises(ValueError):
            partial_trace(random_density(2, 2, rng), keep=[2])


class TestProjectRenormalize:
    def test_projecting_onto_support(self):
        rho = Ket.basis(qudit(2), 0).density()
        p = Ket.basis(qudit(2), 0).projector()
        out, prob = project_renormalize(rho, p)
        assert abs(prob - 1.0) < 1e-12
        np.testing.assert_allclose(out.entries, rho.entries, atol=1e-12)

    def test_maximally_mixed(self):
        D = 5
        rho = DensityMatrix.maximally_mixed(qudit(D))
        p = Ket.basis(qudit(D), 2).projector()
        out, prob = project_renormalize(rho, p)
        assert abs(prob - 1.0 / D) < 1e-12
        np.testing.assert_allclose(out.entries, p.entries, atol=1e-12)

    def test_plus_state_onto_one(self):
        plus = fourier(2).apply(Ket.basis(qudit(2), 0))
        p = Ket.basis(qudit(2), 1).projector()
        out, prob = project_renormalize(plus.density(), p)
        assert abs(prob - 0.5) < 1e-12
        np.testing.assert_allclose(out.entries, p.entries, atol=1e-12)

    def test_zero_probability_signalled(self):
        rho = Ket.basis(qudit(2), 0).density()
        p = Ket.basis(qudit(2), 1).projector()
        with pytest.raises(ZeroProbabilityError):
            project_renormalize(rho, p)

    def test_non_projector_rejected(self, rng):
        rho = random_density(2, 1, rng)
        with pytest.raises(NotProjectorError):
            project_renormalize(rho, Operator(qudit(2), 0.5 * np.eye(2)))

    def test_complete_family_probabilities_sum_to_one(self, rng):
        rho = random_density(3, 1, rng)
        total = 0.0
        for k in range(3):
            _, prob = project_renormalize(rho, Ket.basis(qudit(3), k).projector())
            total += prob
        assert abs(total - 1.0) < 1e-10


class TestPureFidelity:
    def test_self_overlap(self, rng):
        psi = Ket.normalized(qudit(3), rng.standard_normal(3) + 1j * rng.standard_normal(3))
        assert abs(pure_fidelity(psi.density(), psi) - 1.0) < 1e-12

    def test_maximally_mixed_two_qudits(self):
        for D in (2, 3, 4):
            rho = DensityMatrix.maximally_mixed(qudits(D, 2))
            psi = bell_state(BellLabel(0, 0, D))
            assert abs(pure_fidelity(rho, psi) - 1.0 / D**2) < 1e-12

    def test_werner_half_mixture(self):
        # lambda = 0.5 at D = 3: F = 0.5 + 0.5/9
        psi = bell_state(BellLabel(0, 0, 3))
        m = 0.5 * psi.projector().entries + 0.5 * np.eye(9) / 9
        rho = DensityMatrix(Operator(qudits(3, 2), m))
        assert abs(pure_fidelity(rho, psi) - (0.5 + 0.5 / 9)) < 1e-12

    def test_shape_mismatch(self, rng):
        with pytest.raises(Exception):
            pure_fidelity(random_density(2, 1, rng), Ket.basis(qudit(3), 0))


class TestConjugateBy:
    def test_identity_leaves_state(self, rng):
        rho = random_density(3, 1, rng)
        out = conjugate_by(rho, Operator.identity(qudit(3)))
        np.testing.assert_allclose(out.entries, rho.entries, atol=1e-12)

    def test_eigenvalues_preserved(self, rng):
        rho = random_density(2, 2, rng)
        out = conjugate_by(rho, tensor(fourier(2), fourier(2)))
        np.testing.assert_allclose(
            np.sort(np.linalg.eigvalsh(out.entries)),
            np.sort(np.linalg.eigvalsh(rho.entries)),
            atol=1e-10,
        )

    def test_purity_preserved(self, rng):
        psi = Ket.normalized(qudit(4), rng.standard_normal(4) + 1j * rng.standard_normal(4))
        out = conjugate_by(psi.density(), fourier(4))
        assert abs(out.purity() - 1.0) < 1e-10

    def test_non_unitary_rejected(self, rng):
        rho = random_density(2, 1, rng)
        with pytest.raises(NotUnitaryError):
            conjugate_by(rho, Operator(qudit(2), np.array([[1, 1], [0, 1.0]])))


class TestDensityMatrixInvariants:
    def test_non_hermitian_rejected(self):
        m = np.array([[0.5, 0.1], [0.3, 0.5]], dtype=complex)
        with pytest.raises(ValueError):
            DensityMatrix(Operator(qudit(2), m))

    def test_wrong_trace_rejected(self):
        with pytest.raises(ValueError):
            DensityMatrix(Operator(qudit(2), np.eye(2)))

    def test_psd_diagnostic(self, rng):
        assert random_density(2, 2, rng).is_positive_semidefinite()
        m = np.diag([1.5, -0.5]).astype(complex)
        assert not DensityMatrix(Operator(qudit(2), m)).is_positive_semidefinite()
