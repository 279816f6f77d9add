import math

import pytest

import effdiff


def test_layered_constants():
    eff = effdiff.layered_effective_tensor(0.8122, [1e-14, 1e-14], [1e-12, 1e-10], kp=1.0)
    assert eff[0] == pytest.approx(1.2284e-14, rel=5e-5)
    eff2 = effdiff.layered_effective_tensor(0.8122, [1e-14, 1e-14], [1e-12, 1e-10], kp=1.26e-2)
    assert eff2[0] == pytest.approx(1.2312e-14, rel=5e-5)


def test_harmonic_profile_and_partition():
    assert effdiff.harmonic_mean_profile([(0.5, 1.0), (0.5, 3.0)]) == pytest.approx(1.5)
    region1, region2 = effdiff.transform_partition([1e-14, 1e-14], [1e-12, 1e-10], kp=1.26e-2)
    assert region2["d"][0][0] == pytest.approx(7.9365e-11, rel=1e-4)
    assert region2["sigma"] == pytest.approx(79.365, rel=1e-4)
    assert region1["sigma"] == 1.0


def test_rotations():
    t = effdiff.rotation_matrix_2d(math.pi / 2)
    q = effdiff.rotate_tensor(t, [[1.0, 0.0], [0.0, 10.0]])
    assert q[0][0] == pytest.approx(10.0)
    assert q[1][1] == pytest.approx(1.0)

    rng = effdiff.RandomStream(7)
    alpha, beta, gamma = effdiff.sample_rotation_3d(rng)
    assert 0 <= alpha < 2 * math.pi
    assert 0 <= beta <= math.pi
    assert 0 <= gamma < 2 * math.pi


def test_trial_seeds():
    assert effdiff.trial_seed(42, 3) == effdiff.trial_seed(42, 3)
    assert effdiff.trial_seed(42, 0) != effdiff.trial_seed(42, 1)


def test_mask_estimate_matches_harmonic_reference():
    # 4 layers x 128 px at p2 = 0.25 give integral stripe widths: exact layers
    mask = effdiff.synth_layered_mask(p2=0.25, layers=4, width=128, height=8)
    assert mask.lipid_fraction() == pytest.approx(0.25)
    est = effdiff.estimate_from_mask(mask, d1=1.0, d2n=4.0)
    ref = effdiff.harmonic_mean_profile([(0.75, 1.0), (0.25, 4.0)])
    assert est == pytest.approx(ref, rel=1e-6)

    # non-integral widths are dithered row by row; the estimate stays close
    ragged = effdiff.synth_layered_mask(p2=0.21, layers=3, width=100, height=16)
    est_ragged = effdiff.estimate_from_mask(ragged, d1=1.0, d2n=4.0)
    p2 = ragged.lipid_fraction()
    ref_ragged = effdiff.harmonic_mean_profile([(1.0 - p2, 1.0), (p2, 4.0)])
    assert est_ragged == pytest.approx(ref_ragged, rel=0.02)


def test_pgm_round_trip(tmp_path):
    mask = effdiff.synth_layered_mask(p2=0.3, layers=2, width=32, height=8, wobble=0.1, seed=5)
    path = str(tmp_path / "mask.pgm")
    effdiff.write_pgm(mask, path)
    back, warning = effdiff.read_pgm(path)
    assert warning == ""
    assert back.labels == mask.labels


def test_cell_problem_constant():
    mask = effdiff.synth_layered_mask(p2=0.5, layers=1, width=8, height=8)
    eff = effdiff.cell_effective_from_mask(mask, d1=2.0, d2n=2.0)
    assert eff[0][0] == pytest.approx(2.0, rel=1e-8)


def test_monte_carlo_reproducible():
    kwargs = dict(dim=2, n=4, trials=4, q=[1.0, 10.0], seed=42)
    stats = effdiff.monte_carlo(**kwargs)
    again = effdiff.monte_carlo(**kwargs, threads=2)
    assert len(stats.values) == 4
    assert stats.values == again.values
    assert stats.mean == pytest.approx(sum(stats.values) / 4)
    assert "summary," in stats.csv()
    assert effdiff.geometric_mean_reference([1.0, 10.0]) == pytest.approx(math.sqrt(10.0))


def test_solver_failure_surfaces():
    mask = effdiff.synth_layered_mask(p2=0.25, layers=2, width=64, height=8)
    with pytest.raises(effdiff.SolveFailure):
        effdiff.estimate_from_mask(mask, d1=1e-14, d2n=1e-12, tol=1e-30)
