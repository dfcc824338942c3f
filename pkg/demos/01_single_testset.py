"""Checking reported scores against a single binary testset.

A paper says its model was evaluated on 100 positive and 1000 negative
samples and reports accuracy 0.8464, sensitivity 0.81 and F1 0.4894 to
four decimals. Could ANY confusion matrix on that testset have produced
those three numbers at once? This script walks through the decision.

Run:  python3 demos/01_single_testset.py
"""

from fractions import Fraction

from scoresleuth import (
    ScoreReport,
    Testset,
    Uncertainty,
    check_single_testset,
    feasible_region,
)

testset = Testset(p=100, n=1000)
report = ScoreReport.of(acc="0.8464", sens="0.81", f1="0.4894")

# Four reported decimals mean the true value lay within 1e-4 of the text,
# whether the authors rounded or truncated.
eps = Uncertainty(Fraction(1, 10 ** 4))

result = check_single_testset(testset, report, eps)
print("verdict:     ", "INCONSISTENT" if result.inconsistency else "consistent")
print("witness:     ", result.witness)

# The witness is not just plausible, it is the only possibility: the three
# scores together pin the confusion matrix completely.
region = feasible_region(testset, report, eps)
print("feasible set:", region)

# Change one digit of the accuracy and certainty flips the other way: no
# assignment of 1100 samples to the four confusion cells gets within 1e-4
# of all three numbers. This is arithmetic, not a statistical judgement.
tampered = ScoreReport.of(acc="0.8474", sens="0.81", f1="0.4894")
print("\nwith acc=0.8474:",
      "INCONSISTENT" if check_single_testset(testset, tampered, eps).inconsistency
      else "consistent")

# The same happens if the paper misstated the testset itself.
wrong_testset = Testset(p=110, n=1000)
print("with p=110:     ",
      "INCONSISTENT" if check_single_testset(wrong_testset, report, eps).inconsistency
      else "consistent")

# Fewer digits widen the interval and weaken the test: at two decimals the
# tampered report can no longer be refuted.
loose = Uncertainty(Fraction(1, 100))
two_dp = ScoreReport.of(acc="0.85", sens="0.81", f1="0.49")
print("\nsame scores at 2 decimals:",
      "INCONSISTENT" if check_single_testset(testset, two_dp, loose).inconsistency
      else "consistent (too coarse to refute)")
