import numpy as np
import pytest

from phproc import (
    AmParams,
    KunduParams,
    ProcessKind,
    ProcessSpec,
    StudyConfig,
    UsageError,
    empirical_check,
    empirical_joint_cdf,
    generate_path,
    joint_cdf,
    simulation_study,
)

K = ProcessKind


class TestEmpiricalCheck:
    def test_deterministic(self):
        a = empirical_check(K.AM_CPFD, AmParams(1.0, 0.5), m=20_000, seed=3)
        b = empirical_check(K.AM_CPFD, AmParams(1.0, 0.5), m=20_000, seed=3)
        assert a.to_csv() == b.to_csv()

    def test_down_fraction_row_matches_closed_form(self):
        rep = empirical_check(K.AM_CPFD, AmParams(1.0, 0.5), m=1_000_000, seed=4)
        row = rep.row("down_fraction")
        assert row.closed_form == pytest.approx(1 / 3)
        assert row.passed

    def test_tie_fraction_at_equal_shapes(self):
        rep = empirical_check(K.KUNDU_CPFD, KunduParams(1.0, 1.0), m=1_000_000, seed=5)
        row = rep.row("tie_fraction")
        assert row.closed_form == pytest.approx(1 / 3)
        assert row.passed
        # at equal shapes strict-down and strict-up each also carry mass 1/3
        assert rep.row("down_fraction").closed_form == pytest.approx(1 / 3)
        assert rep.row("up_fraction").closed_form == pytest.approx(1 / 3)

    def test_inapplicable_rows_skipped_with_note(self):
        # total tail shape 0.9: no mean, no variance, no cross moment
        rep = empirical_check(K.KUNDU_PARETO, KunduParams(0.5, 0.4), m=20_000, seed=6,
                              sigma=1.0)
        for name in ("mean", "variance", "cross_moment", "lag1_corr"):
            assert rep.row(name).passed is None
        assert rep.row("down_fraction").passed is not None

    def test_all_rows_present(self):
        rep = empirical_check(K.KUNDU_CPFD, KunduParams(0.5, 0.1), m=50_000, seed=7)
        names = {r.name for r in rep.rows}
        assert names == {"mean", "variance", "cross_moment", "lag1_corr",
                         "down_fraction", "up_fraction", "tie_fraction", "marginal_ks"}

    def test_minimum_length_enforced(self):
        with pytest.raises(UsageError):
            empirical_check(K.AM_CPFD, AmParams(1.0, 0.5), m=100, seed=1)

    def test_csv_json_shapes(self):
        rep = empirical_check(K.AM_CPFD, AmParams(2.0, 1.0), m=20_000, seed=8)
        lines = rep.to_csv().strip().split("\n")
        assert lines[0].startswith("name,closed_form")
        assert len(lines) == 9
        import json

        doc = json.loads(rep.to_json())
        assert doc["spec"]["kind"] == "am-cpfd"
        assert len(doc["rows"]) == 8


class TestEmpiricalJointCdf:
    def test_trivial_grid_points(self):
        spec = ProcessSpec(kind=K.KUNDU_CPFD, shape=KunduParams(1.0, 1.0),
                           m=150_000, seed=9)
        rows = empirical_joint_cdf(spec, [(1.0, 1.0), (0.0, 0.0), (0.5, 0.5)])
        assert rows[0].empirical == pytest.approx(1.0)
        assert rows[1].empirical == pytest.approx(0.0)
        # corrected closed form at the symmetric point
        assert abs(rows[2].empirical - 0.625) <= 3 * rows[2].se

    def test_needs_pairs_and_grid(self):
        spec = ProcessSpec(kind=K.KUNDU_CPFD, shape=KunduParams(1.0, 1.0),
                           m=150_000, seed=10)
        with pytest.raises(UsageError):
            empirical_joint_cdf(spec, [])
        small = ProcessSpec(kind=K.KUNDU_CPFD, shape=KunduParams(1.0, 1.0),
                            m=1_000, seed=10)
        with pytest.raises(UsageError):
            empirical_joint_cdf(small, [(0.5, 0.5)])

    def test_asymmetric_shapes_match_corrected_formula(self):
        # discriminates the min-arm assignment: the transposed variant sits
        # far outside the band at these shapes
        shape = KunduParams(2.0, 0.5)
        spec = ProcessSpec(kind=K.KUNDU_CPFD, shape=shape, m=400_000, seed=11)
        path = generate_path(spec)
        a, b = 0.4, 0.7
        row = empirical_joint_cdf(path, [(a, b)])[0]
        good = joint_cdf(K.KUNDU_CPFD, shape, a, b)
        p0, p1 = 1 - a, 1 - b
        g = 2.5
        transposed = 1 - p0**g - p1**g + p0**0.5 * p1**2.0 * min(p0**2.0, p1**0.5)
        assert abs(row.empirical - good) <= 3 * row.se
        assert abs(row.empirical - transposed) > 6 * row.se


class TestSimulationStudy:
    def test_minimal_run(self):
        cfg = StudyConfig(kind=K.AM_CPFD, shape=AmParams(1.0, 0.5), sizes=(20, 50),
                          replicates=2, master_seed=1)
        rep = simulation_study(cfg)
        assert {c.size for c in rep.cells} == {20, 50}
        assert {c.parameter for c in rep.cells} == {"alpha", "delta"}
        for c in rep.cells:
            assert c.failures <= c.replicates

    def test_deterministic_and_config_validated(self):
        cfg = StudyConfig(kind=K.KUNDU_CPFD, shape=KunduParams(0.5, 0.1),
                          sizes=(20, 40), replicates=25, master_seed=99)
        r1 = simulation_study(cfg)
        r2 = simulation_study(cfg)
        assert r1.to_csv() == r2.to_csv()
        with pytest.raises(UsageError):
            StudyConfig(kind=K.KUNDU_CPFD, shape=KunduParams(0.5, 0.1),
                        sizes=(50, 20), replicates=25, master_seed=99)
        with pytest.raises(UsageError):
            StudyConfig(kind=K.KUNDU_CPFD, shape=KunduParams(0.5, 0.1),
                        sizes=(20,), replicates=1, master_seed=99)

    def test_spread_shrinks_with_size(self):
        cfg = StudyConfig(kind=K.AM_CPFD, shape=AmParams(1.0, 0.1), sizes=(20, 500),
                          replicates=200, master_seed=12)
        rep = simulation_study(cfg)
        for param in ("alpha", "delta"):
            assert rep.cell(500, param).std < rep.cell(20, param).std

    def test_pareto_study_includes_sigma(self):
        cfg = StudyConfig(kind=K.AM_PARETO, shape=AmParams(4.0, 2.0), sizes=(50, 100),
                          replicates=50, master_seed=13, sigma=1.0)
        rep = simulation_study(cfg)
        assert {c.parameter for c in rep.cells} == {"alpha", "delta", "sigma"}
        sig = rep.cell(100, "sigma")
        assert sig.mean > 1.0
        assert sig.q500 == pytest.approx(1.0, abs=0.02)

    def test_quantiles_ordered(self):
        cfg = StudyConfig(kind=K.KUNDU_CPFD, shape=KunduParams(0.5, 0.1),
                          sizes=(100,), replicates=100, master_seed=14)
        for c in simulation_study(cfg).cells:
            assert c.q025 <= c.q500 <= c.q975
