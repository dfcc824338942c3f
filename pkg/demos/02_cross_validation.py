"""Cross-validated experiments: pooled counts vs. averaged scores.

With k-fold evaluation a paper either pools counts over folds and scores
once (score of means) or scores each fold and averages (mean of scores).
The two need different machinery: pooling collapses back to a single
testset, while fold means become exact linear constraints over per-fold
confusion counts. When the paper does not even say how the folds were
sized, every admissible configuration is tried.

Run:  python3 demos/02_cross_validation.py
"""

from fractions import Fraction

from scoresleuth import (
    AggregationMode,
    ExperimentSpec,
    FoldingScheme,
    ScoreReport,
    Testset,
    TooManyConfigurations,
    Uncertainty,
    check_experiment,
)

MOS = AggregationMode.MEAN_OF_SCORES
SOM = AggregationMode.SCORE_OF_MEANS
eps2 = Uncertainty(Fraction(1, 100))

# --- score of means: folds pool away -------------------------------------
# Two equal folds, counts pooled before scoring. The fold split cannot
# matter: pooled counts always sum to the dataset totals.
folds = FoldingScheme.known([Testset(50, 500), Testset(50, 500)])
spec = ExperimentSpec.single(Testset(100, 1000), folds, fold_aggregation=SOM)
report = ScoreReport.of(acc="0.8464", sens="0.81", f1="0.4894")
result = check_experiment(spec, report, Uncertainty(Fraction(1, 10 ** 4)))
print("score-of-means over 2 folds")
print("  procedure:", result.procedure)
print("  witness:  ", result.witness)

# --- mean of scores over known folds --------------------------------------
# Four samples per fold, so each fold's sensitivity is a multiple of 1/2
# and the two-fold mean is a multiple of 1/4. 0.75 is reachable...
folds = FoldingScheme.known([Testset(2, 2), Testset(2, 2)])
spec = ExperimentSpec.single(Testset(4, 4), folds, fold_aggregation=MOS)
ok = check_experiment(spec, ScoreReport.of(sens="0.75"), eps2)
print("\nmean sensitivity 0.75 over folds (2,2)+(2,2):",
      "INCONSISTENT" if ok.inconsistency else "consistent")
print("  per-fold witness:", ok.witness["folds"])

# ...but 0.30 is not: no quarter-multiple lands within 0.01 of it.
bad = check_experiment(spec, ScoreReport.of(sens="0.30"), eps2)
print("mean sensitivity 0.30 over the same folds:  ",
      "INCONSISTENT" if bad.inconsistency else "consistent")

# --- stratified folds are derived, not guessed ----------------------------
# "Stratified 2-fold" on 5 positives and 7 negatives has exactly one
# maximally even split; the checker derives it rather than asking.
spec = ExperimentSpec.single(Testset(5, 7), FoldingScheme.stratified(2),
                             fold_aggregation=MOS)
res = check_experiment(spec, ScoreReport.of(acc="0.75"), eps2)
print("\nstratified 2-fold of (5,7): derived folds =",
      res.evidence["derived_folds"])

# --- unknown fold sizes: an OR over configurations ------------------------
# If the paper says only "2-fold CV" the checker enumerates every way to
# split the classes into two nonempty folds and accepts when ANY of them
# admits an outcome; the witness names the configuration it found.
spec = ExperimentSpec.single(Testset(2, 2), FoldingScheme.unknown(2),
                             fold_aggregation=MOS)
res = check_experiment(spec, ScoreReport.of(sens="0.5"), eps2)
print("\nunknown 2-fold split of (2,2), mean sens 0.5:",
      "INCONSISTENT" if res.inconsistency else "consistent")
print("  found configuration:", res.witness["configuration"],
      "after trying", res.evidence["configurations_tried"])

# The enumeration is capped; a hopeless report on a large testset refuses
# loudly instead of grinding forever.
spec = ExperimentSpec.single(Testset(30, 30), FoldingScheme.unknown(10),
                             fold_aggregation=MOS)
try:
    check_experiment(spec, ScoreReport.of(acc="0.1234"),
                     Uncertainty(Fraction(0)), cap=50)
except TooManyConfigurations as exc:
    print("\ncapped enumeration:", exc)
