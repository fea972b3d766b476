import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import brute_force_wigner
from wigner_cs.phase_space import (
    DensityMatrix,
    DiscreteWigner,
    density_from_wigner,
    number_marginal,
    odd_dimension,
    read_csv,
    wigner_from_density,
    write_csv,
)
from wigner_cs.states import fock_density, maximally_mixed, random_density

DIMS = [3, 5, 7, 19]


def test_vacuum_d3():
    w = wigner_from_density(fock_density(3, 0)).values
    np.testing.assert_allclose(w[0], 1 / 3, atol=1e-15)
    np.testing.assert_allclose(w[1:], 0, atol=1e-15)


@pytest.mark.parametrize("d", DIMS)
def test_maximally_mixed_is_flat(d):
    w = wigner_from_density(maximally_mixed(d)).values
    np.testing.assert_allclose(w, 1 / d**2, atol=1e-15)


@pytest.mark.parametrize("d", DIMS)
def test_matches_brute_force_sum(d):
    rho = random_density(d, seed=d)
    expected = brute_force_wigner(rho.entries)
    assert np.abs(expected.imag).max() < 1e-12
    np.testing.assert_allclose(wigner_from_density(rho).values, expected.real, atol=1e-13)


def test_inverse_examples():
    flat = DiscreteWigner(np.full((5, 5), 1 / 25))
    np.testing.assert_allclose(density_from_wigner(flat).entries, np.eye(5) / 5, atol=1e-15)
    vac = np.zeros((3, 3))
    vac[0] = 1 / 3
    np.testing.assert_allclose(density_from_wigner(DiscreteWigner(vac)).entries, np.diag([1, 0, 0]), atol=1e-15)


def test_inverse_uses_half_index_formula():
    # rho_ab = sum_mu exp(+4 pi i mu n / d) W(m, mu), m = (a+b)/2, n = m - a (mod d)
    d = 7
    w = wigner_from_density(random_density(d, 3))
    inv2 = pow(2, -1, d)
    rho = density_from_wigner(w).entries
    for a in range(d):
        for b in range(d):
            m = ((a + b) * inv2) % d
            n = (m - a) % d
            expect = sum(np.exp(4j * np.pi * mu * n / d) * w.values[m, mu] for mu in range(d))
            assert abs(rho[a, b] - expect) < 1e-13


@pytest.mark.parametrize("d", DIMS)
def test_round_trip_and_marginals(d):
    worst_rt = worst_marg = 0.0
    for seed in range(25):
        rho = random_density(d, seed, rank=1 + seed % d)
        w = wigner_from_density(rho)
        worst_rt = max(worst_rt, np.abs(density_from_wigner(w).entries - rho.entries).max())
        worst_marg = max(worst_marg, np.abs(number_marginal(w) - np.diag(rho.entries).real).max())
        assert abs(w.values.sum() - 1) < 1e-10
    assert worst_rt < 1e-10
    assert worst_marg < 1e-10


def test_number_marginal_examples():
    np.testing.assert_allclose(number_marginal(wigner_from_density(fock_density(3, 0))), [1, 0, 0], atol=1e-15)
    np.testing.assert_allclose(number_marginal(wigner_from_density(maximally_mixed(5))), [0.2] * 5, atol=1e-15)


@given(
    d=st.sampled_from([3, 5, 7]),
    s1=st.integers(0, 2**31),
    s2=st.integers(0, 2**31),
    t=st.floats(0, 1),
)
def test_linearity(d, s1, s2, t):
    r1, r2 = random_density(d, s1), random_density(d, s2)
    mix = DensityMatrix(t * r1.entries + (1 - t) * r2.entries)
    lhs = wigner_from_density(mix).values
    rhs = t * wigner_from_density(r1).values + (1 - t) * wigner_from_density(r2).values
    np.testing.assert_allclose(lhs, rhs, atol=1e-12)


@pytest.mark.parametrize("d", [0, 1, 2, 4, 18, 3.5])
def test_rejects_bad_dimensions(d):
    with pytest.raises(ValueError):
        odd_dimension(d)


def test_even_density_rejected():
    with pytest.raises(ValueError):
        DensityMatrix(np.eye(4) / 4)


def test_non_hermitian_rejected():
    rho = np.eye(3, dtype=complex) / 3
    rho[0, 1] = 0.1j
    with pytest.raises(ValueError, match="Hermitian"):
        DensityMatrix(rho)


def test_trace_checked():
    with pytest.raises(ValueError, match="trace"):
        DensityMatrix(np.eye(3) / 2)


def test_psd_validation_is_explicit():
    rho = DensityMatrix(np.diag([0.7, 0.5, -0.2]))
    with pytest.raises(ValueError, match="semidefinite"):
        rho.validate_psd()
    random_density(5, 1).validate_psd()


def test_grid_is_immutable():
    w = wigner_from_density(maximally_mixed(3))
    with pytest.raises(ValueError):
        w.values[0, 0] = 1.0


def test_csv_round_trip(tmp_path):
    w = wigner_from_density(random_density(5, 11))
    path = tmp_path / "w.csv"
    write_csv(w, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "5"
    assert len(lines) == 6
    assert all(len(line.split(",")) == 5 for line in lines[1:])
    np.testing.assert_array_equal(read_csv(path).values, w.values)


def test_csv_golden_vacuum(tmp_path):
    path = tmp_path / "vac.csv"
    write_csv(wigner_from_density(fock_density(3, 0)), path)
    assert path.read_text() == (
        "3\n0.33333333333333331,0.33333333333333331,0.33333333333333331\n0,0,0\n0,0,0\n"
    )
