"""The shipped oracles and the true-report generator. These are the
trust anchors for everything else, so they get their own direct tests:
tiny hand-checkable instances, the resource caps, and exact decimal
rendering down to its tie-breaking."""

from fractions import Fraction

import pytest

from scoresleuth.aggregate import check_experiment
from scoresleuth.errors import InstanceTooLarge, UnsupportedExperiment
from scoresleuth.model import (
    AggregationMode,
    DatasetSpec,
    ExperimentSpec,
    FoldingScheme,
    MulticlassTestset,
    ScoreReport,
    Testset,
    Uncertainty,
    infer_uncertainty,
)
from scoresleuth.oracle import (
    ORACLE_CAP,
    brute_force_macro,
    brute_force_mos,
    brute_force_single,
    generate_true_report,
    render_decimal,
)
from scoresleuth.regression import RegressionContext, check_regression
from scoresleuth.values import sqrt_fraction

F = Fraction
MOS = AggregationMode.MEAN_OF_SCORES


def U(k):
    return Uncertainty(F(1, 10 ** k))


# ------------------------------------------------------------ brute force

def test_single_enumerates_the_full_grid():
    res = brute_force_single(Testset(2, 2), ScoreReport.of(acc="0.5"), U(2))
    assert res.consistent
    assert res.witnesses == [(0, 2), (1, 1), (2, 0)]


def test_single_no_witnesses():
    res = brute_force_single(Testset(2, 2), ScoreReport.of(acc="0.3"), U(2))
    assert res.inconsistency
    assert res.witnesses == []


def test_single_confirms_the_textbook_witness_uniquely():
    scores = ScoreReport.of(acc="0.8464", sens="0.81", f1="0.4894")
    res = brute_force_single(Testset(100, 1000), scores, U(4))
    assert res.witnesses == [(81, 850)]


def test_single_instance_cap():
    big = ORACLE_CAP  # (p+1)(n+1) just over the cap
    with pytest.raises(InstanceTooLarge) as exc:
        brute_force_single(Testset(big, 1), ScoreReport.of(acc="0.5"), U(2))
    assert exc.value.cap == ORACLE_CAP


def test_mos_over_two_folds():
    folds = [Testset(2, 2), Testset(2, 2)]
    res = brute_force_mos(folds, ScoreReport.of(sens="0.75"), U(2))
    assert res.consistent
    for witness in res.witnesses:
        mean = sum(F(tp, 2) for tp, _ in witness) / 2
        assert abs(mean - F(3, 4)) <= F(1, 100)


def test_mos_instance_cap():
    folds = [Testset(30, 30)] * 4  # 961^4 assignments
    with pytest.raises(InstanceTooLarge):
        brute_force_mos(folds, ScoreReport.of(acc="0.5"), U(2))


def test_mos_refuses_irrational_fold_values():
    # fm on (tp=1, tn=0) of a 2+2 fold is sqrt(1/6): no exact rational
    # mean exists, so the oracle refuses rather than approximate.
    with pytest.raises(UnsupportedExperiment):
        brute_force_mos([Testset(2, 2)], ScoreReport.of(fm="0.5"), U(2))


def test_macro_oracle_requires_prefixes():
    with pytest.raises(UnsupportedExperiment):
        brute_force_macro(MulticlassTestset((2, 2)),
                          ScoreReport.of(acc="0.5"), U(2))


def test_macro_instance_cap():
    ts = MulticlassTestset((40, 40, 40, 40))
    with pytest.raises(InstanceTooLarge):
        brute_force_macro(ts, ScoreReport.of(**{"macro-acc": "0.5"}), U(2))


def test_macro_witnesses_are_diagonals():
    ts = MulticlassTestset((2, 2))
    res = brute_force_macro(ts, ScoreReport.of(**{"macro-sens": "0.75"}), U(2))
    assert res.consistent
    assert ((1, 1), (0, 2)) in res.witnesses or ((2, 0), (1, 1)) in res.witnesses


# ------------------------------------------------------- decimal rendering

@pytest.mark.parametrize("value, k, mode, expected", [
    (F(3141592, 10 ** 6), 4, "round", "3.1416"),
    (F(3141592, 10 ** 6), 4, "truncate", "3.1415"),
    (F(-1, 3), 2, "round", "-0.33"),
    (F(-1, 3), 2, "truncate", "-0.33"),
    (F(1, 2), 0, "round", "1"),
    (F(1, 2), 0, "truncate", "0"),
    (F(-1, 100000), 3, "round", "0.000"),   # never "-0.000"
    (F(1), 2, "round", "1.00"),
])
def test_render_rational(value, k, mode, expected):
    assert render_decimal(value, k, mode) == expected


@pytest.mark.parametrize("radicand, k, mode, expected", [
    (F(2), 4, "round", "1.4142"),
    (F(2), 4, "truncate", "1.4142"),
    (F(2), 3, "round", "1.414"),
    (F(9, 4), 3, "round", "1.500"),  # perfect square folds to a rational
    (F(1, 6), 2, "round", "0.41"),
    (F(1, 6), 2, "truncate", "0.40"),
    (F(3), 0, "round", "2"),
    (F(3), 0, "truncate", "1"),
])
def test_render_square_roots(radicand, k, mode, expected):
    assert render_decimal(sqrt_fraction(radicand), k, mode) == expected


def test_rendered_value_is_within_radius():
    # the rendering contract the whole generator leans on
    for num in range(-40, 41):
        for k in (1, 2, 3):
            v = F(num, 7)
            for mode in ("round", "truncate"):
                text = render_decimal(v, k, mode)
                assert abs(F(text) - v) < F(1, 10 ** k)


# --------------------------------------------------- true-report generator

def test_generator_is_deterministic():
    spec = ExperimentSpec.single(Testset(8, 8))
    a = generate_true_report(spec, rng_seed=99, k_decimals=3)
    b = generate_true_report(spec, rng_seed=99, k_decimals=3)
    assert a == b
    c = generate_true_report(spec, rng_seed=100, k_decimals=3)
    assert a != c  # overwhelmingly likely with fresh counts


def test_generator_outcome_matches_report():
    spec = ExperimentSpec.single(Testset(10, 20))
    outcome, report = generate_true_report(spec, rng_seed=5, k_decimals=2)
    leaf = outcome["datasets"][0]["leaves"][0]
    assert 0 <= leaf["tp"] <= 10 and 0 <= leaf["tn"] <= 20
    res = check_experiment(spec, report, infer_uncertainty(report))
    assert not res.inconsistency


def test_generator_covers_folded_and_multiclass_specs():
    specs = [
        ExperimentSpec.single(Testset(6, 6), FoldingScheme.stratified(2), MOS),
        ExperimentSpec.single(Testset(6, 6), FoldingScheme.unknown(2), MOS),
        ExperimentSpec.single(MulticlassTestset((3, 3, 3))),
        ExperimentSpec((DatasetSpec(Testset(3, 3)), DatasetSpec(Testset(4, 2))),
                       dataset_aggregation=MOS),
    ]
    for spec in specs:
        for seed in range(8):
            _, report = generate_true_report(spec, rng_seed=seed, k_decimals=3)
            res = check_experiment(spec, report, infer_uncertainty(report))
            assert not res.inconsistency, (spec, seed, report)


def test_generator_handles_regression_contexts():
    ctx = RegressionContext(n_samples=12)
    outcome, report = generate_true_report(ctx, rng_seed=3, k_decimals=3)
    assert len(outcome["targets"]) == 12
    full_ctx = RegressionContext(
        n_samples=12,
        target_variance=outcome["target_variance"] or None)
    res = check_regression(full_ctx, report, infer_uncertainty(report))
    assert not res.inconsistency


def test_generator_truncate_mode_also_verifies():
    spec = ExperimentSpec.single(Testset(9, 9))
    for seed in range(6):
        _, report = generate_true_report(spec, rng_seed=seed, k_decimals=1,
                                         mode="truncate")
        res = check_experiment(spec, report, infer_uncertainty(report))
        assert not res.inconsistency, (seed, report)
