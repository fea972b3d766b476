import numpy as np
import pytest
from hypothesis import given, strategies as st

from wigner_cs.phase_space import DiscreteWigner, wigner_from_density
from wigner_cs.states import fock_density, maximally_mixed, random_density
from wigner_cs.tomography import (
    FAMILY_RANDOM,
    ROW_RANDOM,
    PhaseSpaceLine,
    SensingPlan,
    build_full_matrix,
    fisher_yates_prefix,
    measure,
    modular_kronecker,
    read_measurements,
    read_plan,
    sample_rows,
    select_rows,
    write_measurements,
    write_plan,
)

PRIMES = [3, 5, 7, 19]


def test_modular_kronecker():
    assert modular_kronecker(0, 5) == 1
    assert modular_kronecker(-10, 5) == 1
    assert modular_kronecker(7, 5) == 0
    assert modular_kronecker(-3, 5) == 0
    with pytest.raises(ValueError):
        modular_kronecker(1, 0)


@pytest.mark.parametrize("d", [3, 5, 7])
def test_rows_match_kronecker_enumeration(d):
    full = build_full_matrix(d)
    for i, line in enumerate(full.labels):
        expected = np.zeros(d * d)
        for m in range(d):
            for mu in range(d):
                if line.tau is None:
                    hit = modular_kronecker(m - line.offset, d)
                else:
                    hit = modular_kronecker(mu - line.offset + 2 * m * line.tau, d)
                expected[m * d + mu] = hit
        np.testing.assert_array_equal(full.rows[i], expected)


def test_d3_sheared_example():
    full = build_full_matrix(3)
    assert full.rows.shape == (12, 9)
    row = full.rows[1 * 3 + 0]  # tau = 1, mu0 = 0
    assert {(i // 3, i % 3) for i in np.flatnonzero(row)} == {(0, 0), (1, 1), (2, 2)}


@pytest.mark.parametrize("d", PRIMES)
def test_geometry(d):
    full = build_full_matrix(d)
    rows = full.rows
    assert rows.shape == ((d + 1) * d, d * d)
    np.testing.assert_array_equal(rows.sum(axis=1), d)
    np.testing.assert_array_equal(rows.sum(axis=0), d + 1)
    for f in range(d + 1):
        np.testing.assert_array_equal(rows[full.family_rows(f)].sum(axis=0), 1)
    assert np.linalg.matrix_rank(rows) == d * d


def test_line_points():
    line = PhaseSpaceLine(5, 2, 1)
    pts = line.points
    assert len(pts) == 5
    assert all(mu == (1 - 4 * m) % 5 for m, mu in pts)
    assert all(line.contains(m, mu) for m, mu in pts)
    vert = PhaseSpaceLine(5, None, 3)
    assert vert.points == tuple((3, mu) for mu in range(5))
    assert vert.family == 5


@pytest.mark.parametrize("d", [9, 15, 4, 1])
def test_rejects_non_prime(d):
    with pytest.raises(ValueError):
        build_full_matrix(d)


def test_composite_message_names_completeness():
    with pytest.raises(ValueError, match="informationally complete"):
        build_full_matrix(9)


def test_fisher_yates_prefix_deterministic_and_distinct():
    a = fisher_yates_prefix(380, 285, seed=3)
    b = fisher_yates_prefix(380, 285, seed=3)
    np.testing.assert_array_equal(a, b)
    assert len(set(a.tolist())) == 285
    assert a.min() >= 0 and a.max() < 380
    assert not np.array_equal(a, fisher_yates_prefix(380, 285, seed=4))


def test_fisher_yates_prefix_is_uniform():
    counts = np.zeros(6)
    for seed in range(6000):
        counts[fisher_yates_prefix(6, 1, seed)[0]] += 1
    # chi-square with 5 dof, 99.9% quantile is 20.5
    chi2 = ((counts - 1000) ** 2 / 1000).sum()
    assert chi2 < 20.5


def test_row_random_fig1():
    full = build_full_matrix(19)
    s = sample_rows(full, SensingPlan(19, 285, 7))
    assert s.rows.shape == (285, 361)
    assert len(np.unique(s.row_indices)) == 285
    assert s.row_indices.min() >= 0 and s.row_indices.max() < 380
    np.testing.assert_array_equal(s.rows, full.rows[s.row_indices])


def test_family_random_fig1():
    s = sample_rows(build_full_matrix(19), SensingPlan(19, 285, 7, FAMILY_RANDOM))
    fams = s.row_indices // 19
    assert len(np.unique(fams)) == 15
    assert all(np.sum(fams == f) == 19 for f in np.unique(fams))


@pytest.mark.parametrize("mode", [ROW_RANDOM, FAMILY_RANDOM])
@pytest.mark.parametrize("seed", [0, 5])
def test_all_rows_is_identity(mode, seed):
    idx = select_rows(SensingPlan(5, 30, seed, mode))
    np.testing.assert_array_equal(idx, np.arange(30))


def test_plan_validation():
    with pytest.raises(ValueError, match="divisible"):
        SensingPlan(19, 280, 0, FAMILY_RANDOM)
    with pytest.raises(ValueError):
        SensingPlan(19, 0, 0)
    with pytest.raises(ValueError):
        SensingPlan(19, 381, 0)
    with pytest.raises(ValueError):
        SensingPlan(19, 10, 0, "adaptive")


def test_measure_examples():
    full = build_full_matrix(3)
    s = sample_rows(full, SensingPlan(3, 12, 0))
    y_mixed = measure(wigner_from_density(maximally_mixed(3)), s).values
    np.testing.assert_allclose(y_mixed, 1 / 3, atol=1e-15)
    y_vac = measure(wigner_from_density(fock_density(3, 0)), s).values
    np.testing.assert_allclose(y_vac[:9], 1 / 3, atol=1e-15)  # sheared lines
    np.testing.assert_allclose(y_vac[9:], [1, 0, 0], atol=1e-15)  # vertical m0 = 0, 1, 2


def test_measure_dimension_mismatch():
    s = sample_rows(build_full_matrix(5), SensingPlan(5, 10, 0))
    with pytest.raises(ValueError):
        measure(wigner_from_density(maximally_mixed(3)), s)


@pytest.mark.parametrize("d", [3, 5, 7])
def test_physical_probabilities(d):
    full = build_full_matrix(d)
    s = sample_rows(full, SensingPlan(d, (d + 1) * d, 0))
    worst = 0.0
    for seed in range(100):
        y = measure(wigner_from_density(random_density(d, seed, rank=1 + seed % d)), s).values
        worst = min(worst, y.min())
        np.testing.assert_allclose(y.reshape(d + 1, d).sum(axis=1), 1, atol=1e-10)
    assert worst >= -1e-10


@given(seed=st.integers(0, 2**32 - 1), count=st.integers(1, 56))
def test_plan_file_round_trip(tmp_path_factory, seed, count):
    path = tmp_path_factory.mktemp("plan") / "plan.txt"
    plan = SensingPlan(7, count, seed)
    write_plan(plan, path)
    loaded, rows = read_plan(path)
    assert loaded == plan
    np.testing.assert_array_equal(rows, select_rows(plan))


def test_plan_file_tamper_detected(tmp_path):
    path = tmp_path / "plan.txt"
    write_plan(SensingPlan(5, 10, 1), path)
    text = path.read_text().replace("seed 1", "seed 2")
    path.write_text(text)
    with pytest.raises(ValueError, match="seed"):
        read_plan(path)


def test_measurement_file_round_trip(tmp_path):
    s = sample_rows(build_full_matrix(5), SensingPlan(5, 17, 3))
    y = measure(DiscreteWigner(np.random.default_rng(0).standard_normal((5, 5))), s)
    write_measurements(y, tmp_path / "y.csv")
    back = read_measurements(tmp_path / "y.csv")
    np.testing.assert_array_equal(back.values, y.values)
    np.testing.assert_array_equal(back.row_indices, y.row_indices)
