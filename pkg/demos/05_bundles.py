"""Packaged dataset bundles: checking a paper against a known benchmark.

Some benchmarks publish fixed test splits, so their experiment layout can
ship with the library. A bundle carries the testset counts, a citation
and transcription notes; checking reported scores against it is one call.

The ISBI 2016 skin lesion classification test split had 75 malignant and
304 benign images. One published entry reported accuracy 0.7916,
sensitivity 0.2933 and specificity 0.9145 - numbers that look almost
contradictory (high accuracy, dismal sensitivity) yet are perfectly
consistent on this imbalanced split.

Run:  python3 demos/05_bundles.py
"""

from fractions import Fraction

from scoresleuth import (
    ScoreReport,
    Uncertainty,
    UnknownBundle,
    check_bundle,
    list_bundles,
    load_bundle,
)

eps4 = Uncertainty(Fraction(1, 10 ** 4))

print("available bundles:", list_bundles())

bundle = load_bundle("isic2016")
ts = bundle.spec.datasets[0].testset
print(f"\nisic2016: p={ts.p}, n={ts.n}")
print("citation:", bundle.citation)

report = ScoreReport.of(acc="0.7916", sens="0.2933", spec="0.9145")
res = check_bundle("isic2016", report, eps4)
print("\npublished scores:",
      "INCONSISTENT" if res.inconsistency else "consistent")
print("witness:", res.witness,
      "- the model found only 22 of 75 melanomas")

# One digit of drift and the same report becomes impossible.
drifted = ScoreReport.of(acc="0.7926", sens="0.2933", spec="0.9145")
print("\nwith acc=0.7926: ",
      "INCONSISTENT" if check_bundle("isic2016", drifted, eps4).inconsistency
      else "consistent")

# Bundles whose counts have not been transcribed yet refuse loudly rather
# than risk checking against guessed numbers.
try:
    load_bundle("drive")
except UnknownBundle as exc:
    print("\nplaceholder bundle:", exc)
