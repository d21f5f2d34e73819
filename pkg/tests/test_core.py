import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twoatom import (
    DensityMatrix,
    FieldState,
    JointKet,
    ModelParams,
    QubitState,
    Subsystem,
    expectation_sigma_z,
    partial_trace,
    product_state,
    purity_deficit,
)

from conftest import SQRT_HALF, random_product


def brute_partial_trace(vec, n_max, keep):
    """Reference partial trace by explicit index sums over the flat vector."""
    dims = {"field": n_max + 1, "atom1": 2, "atom2": 2}
    order = ["field", "atom1", "atom2"]
    kept = [s for s in order if s in keep]
    traced = [s for s in order if s not in keep]
    index = lambda n, s1, s2: 4 * n + 2 * s1 + s2
    kept_states = list(itertools.product(*(range(dims[s]) for s in kept)))
    traced_states = list(itertools.product(*(range(dims[s]) for s in traced)))
    rho = np.zeros((len(kept_states), len(kept_states)), dtype=complex)
    for i, ki in enumerate(kept_states):
        for j, kj in enumerate(kept_states):
            for tr in traced_states:
                ai = dict(zip(kept, ki)) | dict(zip(traced, tr))
                aj = dict(zip(kept, kj)) | dict(zip(traced, tr))
                rho[i, j] += vec[index(ai["field"], ai["atom1"], ai["atom2"])] * np.conj(
                    vec[index(aj["field"], aj["atom1"], aj["atom2"])]
                )
    return rho


class TestModelParams:
    def test_defaults(self):
        p = ModelParams()
        assert p.lambda1 == 1.0 and p.n_max == 15 and p.tol == 1e-10 and p.delta == 0.0

    def test_delta_from_frequencies(self):
        assert ModelParams(omega=10.0, omega2=13.5).delta == pytest.approx(3.5)

    def test_inconsistent_delta(self):
        with pytest.raises(ValueError, match="disagrees"):
            ModelParams(delta=1.0, omega=10.0, omega2=13.5)

    @pytest.mark.parametrize(
        "kw", [dict(lambda1=0.0), dict(lambda1=-1.0), dict(lambda2=-0.1), dict(n_max=0), dict(n_max=2.5), dict(tol=0)]
    )
    def test_invalid(self, kw):
        with pytest.raises(ValueError):
            ModelParams(**kw)

    def test_theta(self):
        assert ModelParams(lambda1=2.0, lambda2=1.0).theta == 0.25


class TestStates:
    def test_qubit_renormalizes_rounding(self):
        q = QubitState(SQRT_HALF, SQRT_HALF * (1 + 1e-8))
        assert abs(q.amp_g) ** 2 + abs(q.amp_e) ** 2 == pytest.approx(1.0, abs=1e-15)

    def test_qubit_rejects_unnormalized(self):
        with pytest.raises(ValueError, match="normalized"):
            QubitState(1.0, 1.0)

    def test_field_rejects_unnormalized(self):
        with pytest.raises(ValueError, match="normalized"):
            FieldState([1.0, 0.5])

    def test_field_amp_out_of_range_is_zero(self):
        f = FieldState.vacuum(3)
        assert f.amp(-1) == 0 and f.amp(4) == 0 and f.amp(0) == 1

    def test_states_are_immutable(self):
        f = FieldState.vacuum(3)
        with pytest.raises(ValueError):
            f.amps[0] = 0.5

    def test_joint_from_flat_vector(self):
        v = np.zeros(8)
        v[4 * 1 + 2 * 0 + 1] = 1.0
        k = JointKet(v)
        assert k.amps[1, 0, 1] == 1 and k.n_max == 1


class TestProductState:
    def test_basis_product(self):
        k = product_state(FieldState.vacuum(3), QubitState.excited(), QubitState.ground())
        expected = np.zeros((4, 2, 2))
        expected[0, 1, 0] = 1
        np.testing.assert_array_equal(k.amps, expected)

    def test_atom2_superposition(self):
        k = product_state(FieldState.vacuum(3), QubitState.excited(), QubitState(SQRT_HALF, SQRT_HALF))
        assert k.amps[0, 1, 0] == pytest.approx(SQRT_HALF)
        assert k.amps[0, 1, 1] == pytest.approx(SQRT_HALF)
        assert np.count_nonzero(np.abs(k.amps) > 1e-15) == 2

    def test_unnormalized_field(self):
        with pytest.raises(ValueError):
            product_state(FieldState([1.0, 1.0]), QubitState.excited(), QubitState.ground())

    def test_n_max_mismatch(self):
        with pytest.raises(ValueError, match="n_max"):
            product_state(FieldState.vacuum(3), QubitState.excited(), QubitState.ground(), n_max=5)

    def test_remembers_factors(self):
        f, a, b = FieldState.vacuum(2), QubitState.excited(), QubitState.ground()
        assert product_state(f, a, b).factors == (f, a, b)


class TestPartialTrace:
    def test_bell_pair(self):
        amps = np.zeros((2, 2, 2))
        amps[0, 0, 0] = amps[1, 1, 0] = SQRT_HALF
        rho = partial_trace(JointKet(amps), "atom1")
        np.testing.assert_allclose(rho.entries, np.eye(2) / 2, atol=1e-15)

    @pytest.mark.parametrize("keep", ["field", "atom1", "atom2"])
    def test_product_state_gives_pure(self, rng, keep):
        rho = partial_trace(random_product(rng), keep)
        assert purity_deficit(rho) == pytest.approx(0, abs=1e-12)

    @pytest.mark.parametrize(
        "keep", [("field",), ("atom1",), ("atom2",), ("field", "atom1"), ("field", "atom2"), ("atom1", "atom2")]
    )
    def test_matches_index_sum_reference(self, rng, keep):
        n_max = 3
        v = rng.normal(size=4 * (n_max + 1)) + 1j * rng.normal(size=4 * (n_max + 1))
        k = JointKet(v / np.linalg.norm(v))
        np.testing.assert_allclose(
            partial_trace(k, keep).entries, brute_partial_trace(k.vector, n_max, keep), atol=1e-14
        )

    def test_density_matrix_input_agrees_with_ket(self, rng):
        k = random_product(rng)
        for keep in Subsystem:
            np.testing.assert_allclose(
                partial_trace(k.density_matrix(), keep).entries, partial_trace(k, keep).entries, atol=1e-14
            )

    def test_keep_order_is_canonical(self, rng):
        k = random_product(rng)
        np.testing.assert_array_equal(
            partial_trace(k, ["atom2", "field"]).entries, partial_trace(k, ["field", "atom2"]).entries
        )

    @pytest.mark.parametrize("keep", ["cavity", "", ["atom1", "atom1"], []])
    def test_invalid_subsystem(self, rng, keep):
        with pytest.raises(ValueError):
            partial_trace(random_product(rng), keep)

    def test_linearity(self, rng):
        rho = random_product(rng).density_matrix().entries
        sigma = random_product(rng).density_matrix().entries
        alpha = 0.3
        mixed = DensityMatrix(alpha * rho + (1 - alpha) * sigma)
        for keep in Subsystem:
            lhs = partial_trace(mixed, keep).entries
            rhs = alpha * partial_trace(DensityMatrix(rho), keep).entries + (1 - alpha) * partial_trace(
                DensityMatrix(sigma), keep
            ).entries
            np.testing.assert_allclose(lhs, rhs, atol=1e-14)


class TestPurityAndInversion:
    def test_pure(self):
        assert purity_deficit(DensityMatrix(np.diag([1.0, 0.0]))) == 0.0

    def test_maximally_mixed(self):
        assert purity_deficit(DensityMatrix(np.eye(2) / 2)) == pytest.approx(0.5)

    def test_hand_value(self):
        assert purity_deficit(DensityMatrix(np.diag([0.9, 0.1]))) == pytest.approx(0.18, abs=1e-15)

    def test_non_unit_trace(self):
        with pytest.raises(ValueError, match="trace"):
            purity_deficit(np.diag([0.9, 0.3]))

    @pytest.mark.parametrize("diag, expected", [([0, 1], 1.0), ([1, 0], -1.0), ([0.5, 0.5], 0.0)])
    def test_sigma_z(self, diag, expected):
        assert expectation_sigma_z(DensityMatrix(np.diag(diag))) == expected

    def test_sigma_z_wrong_dimension(self):
        with pytest.raises(ValueError, match="2x2"):
            expectation_sigma_z(DensityMatrix(np.eye(3) / 3))


class TestDensityMatrixInvariants:
    def test_rejects_non_hermitian(self):
        with pytest.raises(ValueError, match="Hermitian"):
            DensityMatrix([[0.5, 0.1], [0.2, 0.5]])

    def test_rejects_bad_trace(self):
        with pytest.raises(ValueError, match="trace"):
            DensityMatrix(np.diag([0.5, 0.6]))

    def test_rejects_negative_eigenvalue(self):
        with pytest.raises(ValueError, match="negative"):
            DensityMatrix(np.diag([1.2, -0.2]))


unit_complex = st.tuples(
    st.floats(-1, 1, allow_nan=False), st.floats(-1, 1, allow_nan=False)
).map(lambda p: complex(*p))


@settings(max_examples=100, deadline=None)
@given(st.lists(unit_complex, min_size=8, max_size=24).filter(lambda v: len(v) % 4 == 0))
def test_complementary_bipartitions_share_purity(raw):
    v = np.array(raw)
    if np.linalg.norm(v) < 1e-3:
        return
    k = JointKet(v / np.linalg.norm(v))
    for one, rest in (("atom1", ("field", "atom2")), ("atom2", ("field", "atom1")), ("field", ("atom1", "atom2"))):
        assert purity_deficit(partial_trace(k, one)) == pytest.approx(
            purity_deficit(partial_trace(k, rest)), abs=1e-12
        )


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(0, 1, allow_nan=False), min_size=2, max_size=6))
def test_purity_range(weights):
    w = np.array(weights)
    if w.sum() < 1e-6:
        return
    rho = DensityMatrix(np.diag(w / w.sum()))
    z = purity_deficit(rho)
    assert -1e-15 <= z <= 1 - 1 / rho.dim + 1e-15
