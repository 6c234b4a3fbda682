import numpy as np
import pytest

from phproc import (
    AmParams,
    DegenerateStatisticsError,
    InfeasibleStatisticsError,
    KunduParams,
    ProcessKind,
    ProcessSpec,
    SummaryStats,
    UsageError,
    estimate,
    generate_path,
    summarize,
    theoretical_summary,
)
from phproc.rng import derive_seed

K = ProcessKind


class TestSummarize:
    def test_basic(self):
        s = summarize(np.array([0.2, 0.1, 0.3]))
        assert s.mean == pytest.approx(0.2)
        assert s.p_down == pytest.approx(0.5)
        assert s.p_up == pytest.approx(0.5)
        assert s.sample_min == pytest.approx(0.1)
        assert s.pairs == 2

    def test_constant_path_has_no_strict_moves(self):
        s = summarize(np.array([0.4, 0.4, 0.4]))
        assert s.p_down == 0.0 and s.p_up == 0.0
        assert s.p_tie == pytest.approx(1.0)

    def test_too_short(self):
        with pytest.raises(UsageError):
            summarize(np.array([0.5]))

    def test_long_path_mean_near_closed_form(self):
        spec = ProcessSpec(kind=K.KUNDU_CPFD, shape=KunduParams(0.5, 0.1),
                           m=1_000_000, seed=21)
        s = summarize(generate_path(spec))
        # generous CLT band; the strict 3-se check lives in the oracle module
        assert s.mean == pytest.approx(0.625, abs=0.002)
        assert s.p_down == pytest.approx(6 / 11, abs=0.002)


class TestRoundTrip:
    def test_kundu_cpfd_example(self):
        est = estimate(K.KUNDU_CPFD, SummaryStats(mean=0.625, p_down=6 / 11, p_up=5 / 11,
                                                  sample_min=0.01, pairs=0))
        assert est.branch == "alpha_gt_beta"
        assert est.alpha == pytest.approx(0.5, abs=1e-12)
        assert est.beta == pytest.approx(0.1, abs=1e-12)

    def test_am_pareto_example(self):
        est = estimate(K.AM_PARETO, SummaryStats(mean=4 / 3, p_down=1 / 3, p_up=2 / 3,
                                                 sample_min=1.0, pairs=0))
        assert est.sigma == pytest.approx(1.0)
        assert est.alpha == pytest.approx(4.0, rel=1e-12)
        assert est.delta == pytest.approx(2.0, rel=1e-12)

    def test_kundu_pareto_example(self):
        est = estimate(K.KUNDU_PARETO, SummaryStats(mean=1.5, p_down=0.4, p_up=0.6,
                                                    sample_min=1.0, pairs=0))
        assert est.branch == "alpha_le_beta"
        assert est.alpha == pytest.approx(1.0, rel=1e-12)
        assert est.beta == pytest.approx(2.0, rel=1e-12)

    @staticmethod
    def _grid(kind):
        rng = np.random.default_rng(7)
        out = []
        while len(out) < 20:
            if kind.is_kundu:
                a, b = rng.uniform(0.05, 5.0, 2)
                if abs(a - b) < 1e-3:
                    continue
                if kind is K.KUNDU_PARETO and a + b <= 1.05:
                    continue  # mean must exist
                shape = KunduParams(a, b)
            else:
                a = rng.uniform(0.05, 5.0)
                if kind is K.AM_PARETO:
                    a = rng.uniform(1.05, 8.0)  # mean must exist
                d = rng.uniform(0.01, 0.99) * a
                shape = AmParams(a, d)
            out.append(shape)
        return out

    @pytest.mark.parametrize("kind", [K.KUNDU_CPFD, K.AM_CPFD, K.KUNDU_PARETO, K.AM_PARETO])
    def test_exact_round_trip_grid(self, kind):
        sigma = 1.7 if kind.is_pareto else None
        for shape in self._grid(kind):
            stats = theoretical_summary(kind, shape, sigma)
            est = estimate(kind, stats)
            assert est.valid, (shape, est)
            d = est.to_dict()
            assert d["alpha"] == pytest.approx(shape.alpha, rel=1e-10), shape
            if kind.is_kundu:
                assert d["beta"] == pytest.approx(shape.beta, rel=1e-10), shape
                want = "alpha_gt_beta" if shape.alpha > shape.beta else "alpha_le_beta"
                assert est.branch == want
            else:
                assert d["delta"] == pytest.approx(shape.delta, rel=1e-10), shape
            if kind.is_pareto:
                assert d["sigma"] == pytest.approx(sigma, rel=1e-12)


class TestBranchesAndErrors:
    def test_degenerate_p(self):
        base = dict(mean=0.5, sample_min=0.1, pairs=10)
        for kind in (K.KUNDU_CPFD, K.AM_CPFD):
            with pytest.raises(DegenerateStatisticsError):
                estimate(kind, SummaryStats(p_down=0.0, p_up=1.0, **base))
            with pytest.raises(DegenerateStatisticsError):
                estimate(kind, SummaryStats(p_down=1.0, p_up=0.0, **base))

    def test_kundu_p_half_is_degenerate(self):
        with pytest.raises(DegenerateStatisticsError):
            estimate(K.KUNDU_CPFD, SummaryStats(mean=0.5, p_down=0.5, p_up=0.5,
                                                sample_min=0.1, pairs=10))
        with pytest.raises(DegenerateStatisticsError):
            estimate(K.KUNDU_PARETO, SummaryStats(mean=1.5, p_down=0.5, p_up=0.5,
                                                  sample_min=1.0, pairs=10))

    def test_am_p_half_is_not_degenerate_just_invalid(self):
        est = estimate(K.AM_CPFD, SummaryStats(mean=0.5, p_down=0.6, p_up=0.4,
                                               sample_min=0.1, pairs=10))
        assert not est.valid
        assert est.delta > est.alpha
        assert est.diagnostics

    def test_pareto_mean_below_min_infeasible(self):
        with pytest.raises(InfeasibleStatisticsError):
            estimate(K.AM_PARETO, SummaryStats(mean=0.9, p_down=0.3, p_up=0.7,
                                               sample_min=1.0, pairs=10))

    def test_cpfd_mean_outside_unit_interval_infeasible(self):
        with pytest.raises(InfeasibleStatisticsError):
            estimate(K.KUNDU_CPFD, SummaryStats(mean=1.2, p_down=0.55, p_up=0.45,
                                                sample_min=0.1, pairs=10))

    def test_kundu_no_consistent_branch_flagged(self):
        # decrease fraction above 2/3 violates both orderings
        est = estimate(K.KUNDU_CPFD, SummaryStats(mean=0.5, p_down=0.8, p_up=0.2,
                                                  sample_min=0.1, pairs=10))
        assert not est.valid
        assert "no self-consistent branch" in est.diagnostics[0]
        # below 1/3 likewise
        est = estimate(K.KUNDU_CPFD, SummaryStats(mean=0.5, p_down=0.2, p_up=0.8,
                                                  sample_min=0.1, pairs=10))
        assert not est.valid

    def test_negative_parameters_never_clamped(self):
        est = estimate(K.KUNDU_CPFD, SummaryStats(mean=0.5, p_down=0.2, p_up=0.8,
                                                  sample_min=0.1, pairs=10))
        # raw branch values are reported, not clipped to the domain
        assert est.alpha > 0 and est.beta > 0 or not est.valid

    def test_no_estimator_for_building_block_kinds(self):
        with pytest.raises(UsageError):
            estimate(K.KUNDU_PFD, SummaryStats(mean=0.5, p_down=0.4, p_up=0.6,
                                               sample_min=0.1, pairs=10))


class TestScaleEquivariance:
    def test_pareto_scaling(self):
        spec = ProcessSpec(kind=K.AM_PARETO, shape=AmParams(4.0, 2.0), m=5000,
                           seed=51, sigma=1.0)
        v = generate_path(spec).values
        for c in (2.0, 17.5):
            est1 = estimate(K.AM_PARETO, summarize(v))
            estc = estimate(K.AM_PARETO, summarize(c * v))
            assert estc.sigma == pytest.approx(c * est1.sigma, rel=1e-12)
            assert estc.alpha == pytest.approx(est1.alpha, rel=1e-9)
            assert estc.delta == pytest.approx(est1.delta, rel=1e-9)

    def test_kundu_pareto_scaling(self):
        spec = ProcessSpec(kind=K.KUNDU_PARETO, shape=KunduParams(1.0, 2.0), m=5000,
                           seed=52, sigma=1.0)
        v = generate_path(spec).values
        est1 = estimate(K.KUNDU_PARETO, summarize(v))
        estc = estimate(K.KUNDU_PARETO, summarize(3.0 * v))
        assert estc.sigma == pytest.approx(3.0 * est1.sigma, rel=1e-12)
        assert estc.alpha == pytest.approx(est1.alpha, rel=1e-9)
        assert estc.beta == pytest.approx(est1.beta, rel=1e-9)


class TestConsistencyTrend:
    CASES = [
        (K.KUNDU_CPFD, KunduParams(0.5, 0.1), None),
        (K.AM_CPFD, AmParams(1.0, 0.1), None),
        (K.KUNDU_PARETO, KunduParams(1.0, 2.0), 1.0),
        (K.AM_PARETO, AmParams(4.0, 2.0), 1.0),
    ]

    @pytest.mark.parametrize("kind,shape,sigma", CASES)
    def test_median_error_shrinks_with_m(self, kind, shape, sigma):
        sizes = [20, 50, 200, 1000]
        reps = 500
        true = shape.__dict__
        med_err = []
        for i, m in enumerate(sizes):
            errs = []
            for j in range(reps):
                seed = derive_seed(8800 + 17 * i, j)
                spec = ProcessSpec(kind=kind, shape=shape, m=m, seed=seed, sigma=sigma)
                try:
                    est = estimate(kind, summarize(generate_path(spec)))
                except Exception:
                    continue
                if not est.valid:
                    continue
                d = est.to_dict()
                rel = [abs(d[name] - val) / val for name, val in true.items()]
                errs.append(np.mean(rel))
            med_err.append(float(np.median(errs)))
        inversions = sum(1 for a, b in zip(med_err, med_err[1:]) if b > a)
        assert inversions <= 1, med_err
        assert med_err[-1] < med_err[0]
