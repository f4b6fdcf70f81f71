import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eurkit.entropy import (
    conditional_entropy,
    holevo,
    measured_conditional,
    mutual_information,
    outcome_distribution,
    post_measurement_state,
    shannon,
    uncertainty_sum,
    von_neumann,
)
from eurkit.errors import DimensionError, DomainError
from eurkit.measurements import ProjectiveBasis, pauli_bases, qutrit_mub
from eurkit.states import (
    DensityMatrix,
    RngStream,
    maximally_mixed,
    product_state,
    random_density,
    singlet,
    werner,
)
from randgen import ginibre_state, random_basis

H_WERNER_HALF = 5 / 8 * math.log2(8 / 5) + 3 / 8 * 3  # 1.548795...


def dephase_oracle(rho, basis):
    dA, dB = rho.dA, rho.dB
    out = np.zeros_like(rho.matrix)
    for u in basis.vectors.T:
        p = np.kron(np.outer(u, u.conj()), np.eye(dB))
        out += p @ rho.matrix @ p
    return out


class TestShannon:
    def test_values(self):
        assert shannon([1, 0]) == 0
        assert shannon([0.5, 0.5]) == 1
        assert shannon([1 / 3] * 3) == pytest.approx(math.log2(3), abs=1e-15)
        assert shannon([1 / 3] * 3) == pytest.approx(1.584963, abs=1e-6)

    def test_rejects_negative(self):
        with pytest.raises(DomainError):
            shannon([1.1, -0.1])

    def test_rejects_unnormalized(self):
        with pytest.raises(DomainError):
            shannon([0.5, 0.6])

    @settings(max_examples=200, deadline=None)
    @given(st.lists(st.floats(0, 1), min_size=1, max_size=9).filter(lambda v: sum(v) > 1e-3))
    def test_range(self, w):
        p = np.array(w) / sum(w)
        h = shannon(p)
        assert -1e-15 <= h <= math.log2(len(p)) + 1e-12


class TestVonNeumann:
    def test_values(self):
        assert von_neumann(singlet()) == pytest.approx(0, abs=1e-12)
        assert von_neumann(maximally_mixed(2, 2)) == pytest.approx(2, abs=1e-14)
        assert von_neumann(werner(0.5)) == pytest.approx(H_WERNER_HALF, abs=1e-12)
        assert von_neumann(werner(0.5)) == pytest.approx(1.548795, abs=1e-6)

    def test_diagonal_equals_shannon(self, rng):
        for _ in range(300):
            n = int(rng.integers(1, 10))
            p = rng.dirichlet(np.ones(n) * 0.5)
            rho = DensityMatrix(np.diag(p).astype(complex), n)
            assert abs(von_neumann(rho) - shannon(p)) <= 1e-12


class TestConditional:
    def test_values(self):
        assert conditional_entropy(singlet()) == pytest.approx(-1, abs=1e-12)
        assert conditional_entropy(maximally_mixed(2, 2)) == pytest.approx(1, abs=1e-12)
        assert conditional_entropy(werner(0.5)) == pytest.approx(H_WERNER_HALF - 1, abs=1e-12)
        assert conditional_entropy(werner(0.5)) == pytest.approx(0.548795, abs=1e-6)

    def test_maximally_entangled_qutrits(self):
        phi = np.eye(3).reshape(9) / np.sqrt(3)
        rho = DensityMatrix(np.outer(phi, phi).astype(complex), 3, 3)
        assert conditional_entropy(rho) == pytest.approx(-math.log2(3), abs=1e-12)


class TestPostMeasurement:
    def test_z_on_singlet(self):
        z = pauli_bases().bases[2]
        out = post_measurement_state(singlet(), z).matrix
        np.testing.assert_allclose(out, np.diag([0, 0.5, 0.5, 0]), atol=1e-15)

    def test_fixes_maximally_mixed(self, rng):
        for basis in list(pauli_bases()) + [random_basis(2, rng)]:
            np.testing.assert_allclose(post_measurement_state(maximally_mixed(2, 2), basis).matrix, np.eye(4) / 4, atol=1e-15)

    def test_product_in_eigenbasis_unchanged(self, rng):
        ra = ginibre_state(3, 1, rng)
        rb = ginibre_state(2, 1, rng)
        w, v = np.linalg.eigh(ra.matrix)
        eigbasis = ProjectiveBasis(v)
        rho = product_state(ra, rb)
        np.testing.assert_allclose(post_measurement_state(rho, eigbasis).matrix, rho.matrix, atol=1e-14)

    def test_matches_projector_oracle(self, rng):
        for dA, dB in [(2, 2), (3, 3), (2, 3), (3, 2)]:
            rho = ginibre_state(dA, dB, rng)
            basis = random_basis(dA, rng)
            out = post_measurement_state(rho, basis)
            np.testing.assert_allclose(out.matrix, dephase_oracle(rho, basis), atol=1e-14)
            np.testing.assert_allclose(out.marginal("B").matrix, rho.marginal("B").matrix, atol=1e-14)

    def test_outcome_distribution(self, rng):
        rho = ginibre_state(3, 2, rng)
        basis = random_basis(3, rng)
        probs = np.diag(outcome_distribution(rho, basis).matrix).real
        ra = rho.marginal("A").matrix
        expected = [np.vdot(u, ra @ u).real for u in basis.vectors.T]
        np.testing.assert_allclose(probs, expected, atol=1e-14)

    def test_dimension_error(self):
        with pytest.raises(DimensionError):
            post_measurement_state(singlet(), qutrit_mub().bases[0])


class TestMeasuredQuantities:
    def test_z_on_singlet(self):
        z = pauli_bases().bases[2]
        assert measured_conditional(singlet(), z) == pytest.approx(0, abs=1e-12)
        assert holevo(singlet(), z) == pytest.approx(1, abs=1e-12)

    def test_maximally_mixed(self):
        for b in pauli_bases():
            assert measured_conditional(maximally_mixed(2, 2), b) == pytest.approx(1, abs=1e-12)
            assert holevo(werner(0), b) == pytest.approx(0, abs=1e-12)

    def test_werner_endpoints_and_continuity(self):
        z = pauli_bases().bases[2]
        ps = np.linspace(0, 1, 101)
        vals = np.array([measured_conditional(werner(p), z) for p in ps])
        assert vals[0] == pytest.approx(1, abs=1e-12)
        assert vals[-1] == pytest.approx(0, abs=1e-12)
        # S(Z|B) = h((1-p)/2) for Werner states; steps bounded by the grid
        assert np.max(np.abs(np.diff(vals))) < 0.2

    def test_werner_closed_form(self):
        z = pauli_bases().bases[2]
        for p in np.linspace(0.01, 0.99, 9):
            q = (1 - p) / 2
            h = -q * math.log2(q) - (1 - q) * math.log2(1 - q)
            assert measured_conditional(werner(p), z) == pytest.approx(h, abs=1e-12)

    def test_product_state_has_no_correlation(self, rng):
        rho = product_state(ginibre_state(2, 1, rng), ginibre_state(3, 1, rng))
        assert mutual_information(rho) == pytest.approx(0, abs=1e-12)
        assert holevo(rho, random_basis(2, rng)) == pytest.approx(0, abs=1e-12)

    def test_mutual_information_values(self):
        assert mutual_information(singlet()) == pytest.approx(2, abs=1e-12)
        assert mutual_information(werner(0.5)) == pytest.approx(2 - H_WERNER_HALF, abs=1e-12)
        assert mutual_information(werner(0.5)) == pytest.approx(0.451205, abs=1e-6)

    def test_holevo_is_mutual_information_of_dephased(self, rng):
        for _ in range(20):
            rho = ginibre_state(2, 3, rng)
            b = random_basis(2, rng)
            assert holevo(rho, b) == pytest.approx(mutual_information(post_measurement_state(rho, b)), abs=1e-12)


class TestUncertaintySum:
    def test_values(self):
        ms = pauli_bases()
        assert uncertainty_sum(singlet(), ms) == pytest.approx(0, abs=1e-12)
        assert uncertainty_sum(maximally_mixed(2, 2), ms) == pytest.approx(3, abs=1e-12)
        u = uncertainty_sum(werner(0.5), ms)
        assert 0 < u < 3


def _states(seed, count):
    gen = np.random.default_rng(seed)
    for k in range(count):
        kind = k % 4
        if kind == 0:
            yield random_density(2, 2, RngStream(seed, k))
        elif kind == 1:
            yield random_density(3, 3, RngStream(seed, k))
        elif kind == 2:
            yield ginibre_state(2, 3, gen, rank=int(gen.integers(1, 7)))
        else:
            yield ginibre_state(3, 2, gen, rank=int(gen.integers(1, 7)))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32))
def test_entropy_inequalities(seed):
    gen = np.random.default_rng(seed)
    for rho in _states(seed, 4):
        cond = conditional_entropy(rho)
        s_a = von_neumann(rho.marginal("A"))
        assert cond <= s_a + 1e-9
        assert s_a <= math.log2(rho.dA) + 1e-12
        assert -math.log2(rho.dA) - 1e-9 <= cond
        mi = mutual_information(rho)
        assert mi >= -1e-9
        basis = random_basis(rho.dA, gen)
        smb = measured_conditional(rho, basis)
        assert smb >= cond - 1e-9
        assert smb >= -1e-9
        assert holevo(rho, basis) <= mi + 1e-9
        assert -1e-9 <= holevo(rho, basis) <= math.log2(rho.dA) + 1e-9
