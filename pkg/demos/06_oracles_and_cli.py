"""Auditing the engine, and driving it from the command line.

The library ships its own adversaries: brute-force oracles that decide
small instances by sheer enumeration, and a generator that fabricates
reports guaranteed true by construction. Anyone can rerun the engine
against them - trust should not require reading the solver.

The same checks are scriptable via the `scoresleuth` CLI, which speaks
JSON and uses exit codes 0 (consistent), 1 (inconsistent), 2 (bad input)
and 3 (resource cap hit).

Run:  python3 demos/06_oracles_and_cli.py
"""

import json
import tempfile
from fractions import Fraction
from pathlib import Path

from scoresleuth import (
    ExperimentSpec,
    ScoreReport,
    Testset,
    Uncertainty,
    brute_force_single,
    check_single_testset,
    generate_true_report,
    infer_uncertainty,
)
from scoresleuth.cli import main

eps4 = Uncertainty(Fraction(1, 10 ** 4))

# --- the oracle agrees, witness for witness --------------------------------
testset = Testset(100, 1000)
report = ScoreReport.of(acc="0.8464", sens="0.81", f1="0.4894")
engine = check_single_testset(testset, report, eps4)
oracle = brute_force_single(testset, report, eps4)
print("engine witness:", engine.witness)
print("oracle witnesses (all 101101 cells tried):", oracle.witnesses)

# --- reports that are true by construction are never flagged ---------------
spec = ExperimentSpec.single(Testset(12, 20))
outcome, generated = generate_true_report(spec, rng_seed=7, k_decimals=3)
print("\ngenerated outcome:", outcome["datasets"][0]["leaves"][0])
print("generated report: ", dict((i, generated.text(i)) for i in generated.ids))
res = check_single_testset(Testset(12, 20), generated,
                           infer_uncertainty(generated))
print("verdict on the generated report:",
      "INCONSISTENT (bug!)" if res.inconsistency else "consistent, as it must be")

# --- the CLI speaks JSON ----------------------------------------------------
with tempfile.TemporaryDirectory() as tmp:
    spec_file = Path(tmp) / "spec.json"
    scores_file = Path(tmp) / "scores.json"
    spec_file.write_text(json.dumps({
        "datasets": [{"testset": {"p": 100, "n": 1000},
                      "folding": {"kind": "none"}}],
    }))
    scores_file.write_text(json.dumps(
        {"acc": "0.8464", "sens": "0.81", "f1": "0.4894"}))
    print("\n$ scoresleuth check --spec spec.json --scores scores.json"
          " --infer-eps")
    code = main(["check", "--spec", str(spec_file),
                 "--scores", str(scores_file), "--infer-eps"])
    print(f"(exit code {code})")
