"""Shared data model: experiment descriptions, score reports, uncertainty,
and verdicts.

Everything in this module is immutable after construction and safe to share
across threads. Reported score values are parsed from decimal text into
exact rationals; no binary floating point enters any decision procedure.
Floats are accepted for convenience and interpreted through their shortest
round-tripping decimal representation (`repr`), because a reported score is
a decimal artifact, not a binary one.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .errors import (
    EmptyExperiment,
    ExtraneousAggregationMode,
    FoldTotalsMismatch,
    InvalidFoldCount,
    MissingAggregationMode,
    ParseError,
    SpecError,
)

# ---------------------------------------------------------------------------
# rational parsing
# ---------------------------------------------------------------------------


def as_fraction(value) -> Fraction:
    """Parse a reported number into an exact Fraction.

    Accepts Fraction, int, float (via repr) and strings in decimal
    ("0.8464"), scientific ("1e-4") or ratio ("1/10000") notation.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ParseError(f"{value!r} is not a number")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        value = repr(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"cannot parse {value!r} as a rational: {exc}") from None
    raise ParseError(f"cannot parse {value!r} as a rational")


def infer_radius_from_text(value_text: str) -> Fraction:
    """Uncertainty radius implied by the number of decimal digits shown.

    "0.8464" carries four digits after the point, so the underlying value is
    within 10^-4 of the printed one whether it was rounded or truncated.
    Integer-valued text gets the deliberately conservative radius 1, since
    "1" may be anything that printed as 1 at zero decimals. Scientific
    notation shifts the count by the exponent ("5e-3" -> 10^-3).
    """
    if not isinstance(value_text, str):
        raise ParseError(f"expected decimal text, got {value_text!r}")
    text = value_text.strip()
    try:
        Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"cannot parse {value_text!r} as a decimal numeral") from None
    if "/" in text:
        raise ParseError(
            f"{value_text!r} is a ratio, not decimal text; pass an explicit radius")
    mantissa, _, exponent = text.lower().partition("e")
    exp = int(exponent) if exponent else 0
    _, point, frac_digits = mantissa.partition(".")
    k = (len(frac_digits) if point else 0) - exp
    return Fraction(1, 10 ** k) if k >= 0 else Fraction(10 ** -k)


# ---------------------------------------------------------------------------
# testsets and folding
# ---------------------------------------------------------------------------


def _check_count(label: str, v) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise SpecError(f"{label} must be an integer, got {v!r}")
    if v < 0:
        raise SpecError(f"{label} must be nonnegative, got {v}")
    return v


@dataclass(frozen=True)
class Testset:
    """A binary testset: p positive and n negative samples."""

    p: int
    n: int

    def __post_init__(self):
        _check_count("p", self.p)
        _check_count("n", self.n)
        if self.p + self.n < 1:
            raise EmptyExperiment("a testset must contain at least one sample")

    @property
    def size(self) -> int:
        return self.p + self.n


class MulticlassTestset:
    """A multiclass testset: ordered per-class sample counts c_1..c_C."""

    __slots__ = ("class_counts",)

    def __init__(self, class_counts: Sequence[int]):
        counts = tuple(class_counts)
        if len(counts) < 2:
            raise SpecError("a multiclass testset needs at least two classes")
        for i, c in enumerate(counts):
            _check_count(f"class_counts[{i}]", c)
        if sum(counts) < 1:
            raise EmptyExperiment("a testset must contain at least one sample")
        object.__setattr__(self, "class_counts", counts)

    def __setattr__(self, name, value):
        raise AttributeError("MulticlassTestset is immutable")

    @property
    def num_classes(self) -> int:
        return len(self.class_counts)

    @property
    def size(self) -> int:
        return sum(self.class_counts)

    def __eq__(self, other):
        return (isinstance(other, MulticlassTestset)
                and self.class_counts == other.class_counts)

    def __hash__(self):
        return hash(("MulticlassTestset", self.class_counts))

    def __repr__(self):
        return f"MulticlassTestset(class_counts={list(self.class_counts)})"


AnyTestset = Union[Testset, MulticlassTestset]

FOLD_KINDS = ("none", "known_folds", "stratified_kfold", "unknown_folds_kfold")


@dataclass(frozen=True)
class FoldingScheme:
    """How a testset was split for cross-validation.

    kind "none" means no folding; "known_folds" carries the explicit fold
    testsets; "stratified_kfold" and "unknown_folds_kfold" carry only k, the
    fold sizes being derived (deterministic even split) or enumerated.
    """

    kind: str = "none"
    folds: Optional[tuple[AnyTestset, ...]] = None
    k: Optional[int] = None

    def __post_init__(self):
        if self.kind not in FOLD_KINDS:
            raise SpecError(
                f"unknown folding kind {self.kind!r}; expected one of {FOLD_KINDS}")
        if self.kind == "known_folds":
            if not self.folds:
                raise SpecError("known_folds requires a nonempty list of folds")
            object.__setattr__(self, "folds", tuple(self.folds))
            if self.k is not None and self.k != len(self.folds):
                raise SpecError("k disagrees with the number of known folds")
        else:
            if self.folds is not None:
                raise SpecError(f"folds are only allowed with known_folds")
            if self.kind == "none":
                if self.k is not None:
                    raise SpecError("k is meaningless without folding")
            else:
                if not isinstance(self.k, int) or isinstance(self.k, bool):
                    raise SpecError(f"{self.kind} requires an integer k")
                if self.k < 1:
                    raise InvalidFoldCount(f"k must be at least 1, got {self.k}")

    @staticmethod
    def none() -> "FoldingScheme":
        return FoldingScheme("none")

    @staticmethod
    def known(folds: Sequence[AnyTestset]) -> "FoldingScheme":
        return FoldingScheme("known_folds", folds=tuple(folds))

    @staticmethod
    def stratified(k: int) -> "FoldingScheme":
        return FoldingScheme("stratified_kfold", k=k)

    @staticmethod
    def unknown(k: int) -> "FoldingScheme":
        return FoldingScheme("unknown_folds_kfold", k=k)

    @property
    def is_folded(self) -> bool:
        return self.kind != "none"

    @property
    def fold_count(self) -> Optional[int]:
        if self.kind == "known_folds":
            return len(self.folds)
        return self.k


class AggregationMode(Enum):
    SCORE_OF_MEANS = "score_of_means"
    MEAN_OF_SCORES = "mean_of_scores"


@dataclass(frozen=True)
class DatasetSpec:
    """One dataset in an experiment: its testset and how it was folded."""

    testset: AnyTestset
    folding: FoldingScheme = FoldingScheme("none")

    def __post_init__(self):
        if not isinstance(self.testset, (Testset, MulticlassTestset)):
            raise SpecError(f"not a testset: {self.testset!r}")

    @property
    def is_multiclass(self) -> bool:
        return isinstance(self.testset, MulticlassTestset)


@dataclass(frozen=True)
class ExperimentSpec:
    """A full experiment description: datasets with their folding schemes,
    plus the aggregation modes used when scores cross folds or datasets."""

    datasets: tuple[DatasetSpec, ...]
    fold_aggregation: Optional[AggregationMode] = None
    dataset_aggregation: Optional[AggregationMode] = None

    def __post_init__(self):
        object.__setattr__(self, "datasets", tuple(self.datasets))
        for d in self.datasets:
            if not isinstance(d, DatasetSpec):
                raise SpecError(f"not a DatasetSpec: {d!r}")
        for label in ("fold_aggregation", "dataset_aggregation"):
            v = getattr(self, label)
            if v is not None and not isinstance(v, AggregationMode):
                object.__setattr__(self, label, AggregationMode(v))

    @staticmethod
    def single(testset: AnyTestset,
               folding: Optional[FoldingScheme] = None,
               fold_aggregation: Optional[AggregationMode] = None) -> "ExperimentSpec":
        ds = DatasetSpec(testset, folding or FoldingScheme("none"))
        return ExperimentSpec((ds,), fold_aggregation=fold_aggregation)


def _class_totals(ts: AnyTestset) -> tuple[int, ...]:
    if isinstance(ts, MulticlassTestset):
        return ts.class_counts
    return (ts.p, ts.n)


def _stratified_has_empty_fold(ts: AnyTestset, k: int) -> bool:
    # Under the even-split rule, the last fold receives floor(c/k) from each
    # class, so it is empty exactly when every class has fewer than k samples.
    return all(c < k for c in _class_totals(ts))


def validate_experiment(spec: ExperimentSpec) -> ExperimentSpec:
    """Check every invariant of an experiment description.

    Returns the spec unchanged when valid; raises a SpecError subclass
    naming the violated invariant otherwise.
    """
    if not isinstance(spec, ExperimentSpec):
        raise SpecError(f"not an ExperimentSpec: {spec!r}")
    if len(spec.datasets) < 1:
        raise EmptyExperiment("an experiment needs at least one dataset")

    any_folding = False
    for idx, ds in enumerate(spec.datasets):
        scheme = ds.folding
        if not isinstance(scheme, FoldingScheme):
            raise SpecError(f"dataset {idx}: not a FoldingScheme: {scheme!r}")
        any_folding = any_folding or scheme.is_folded
        if scheme.kind == "known_folds":
            want = _class_totals(ds.testset)
            got = [0] * len(want)
            for fold in scheme.folds:
                totals = _class_totals(fold)
                if len(totals) != len(want) or ds.is_multiclass != isinstance(
                        fold, MulticlassTestset):
                    raise FoldTotalsMismatch(
                        f"dataset {idx}: fold shape {fold!r} does not match "
                        f"the parent testset {ds.testset!r}")
                for i, c in enumerate(totals):
                    got[i] += c
            if tuple(got) != want:
                raise FoldTotalsMismatch(
                    f"dataset {idx}: fold totals {tuple(got)} differ from "
                    f"parent totals {want}")
        elif scheme.kind in ("stratified_kfold", "unknown_folds_kfold"):
            k = scheme.k
            if k > ds.testset.size:
                raise InvalidFoldCount(
                    f"dataset {idx}: cannot split {ds.testset.size} samples "
                    f"into {k} nonempty folds")
            if scheme.kind == "stratified_kfold" and _stratified_has_empty_fold(
                    ds.testset, k):
                raise InvalidFoldCount(
                    f"dataset {idx}: the stratified even split for k={k} "
                    f"leaves the last fold empty")

    if any_folding and spec.fold_aggregation is None:
        raise MissingAggregationMode(
            "folding is present but fold_aggregation is not set")
    if not any_folding and spec.fold_aggregation is not None:
        raise ExtraneousAggregationMode(
            "fold_aggregation is set but no dataset is folded")
    if len(spec.datasets) > 1 and spec.dataset_aggregation is None:
        raise MissingAggregationMode(
            "multiple datasets but dataset_aggregation is not set")
    if len(spec.datasets) == 1 and spec.dataset_aggregation is not None:
        raise ExtraneousAggregationMode(
            "dataset_aggregation is set but there is only one dataset")
    return spec


# ---------------------------------------------------------------------------
# uncertainty and reports
# ---------------------------------------------------------------------------


class Uncertainty:
    """Numeric uncertainty of the reported values.

    default_radius is the half-width of the interval around each reported
    value (typically 10^-k for k printed decimals); per_score_radius
    overrides it per score id. solver_slack widens every constraint
    further; it defaults to 0 because all arithmetic here is exact, and
    exists to reproduce results of floating-point-solver tools.
    """

    __slots__ = ("default_radius", "per_score_radius", "solver_slack")

    def __init__(self, default_radius, per_score_radius: Optional[Mapping] = None,
                 solver_slack=0):
        radius = as_fraction(default_radius)
        per_score = {k: as_fraction(v) for k, v in (per_score_radius or {}).items()}
        slack = as_fraction(solver_slack)
        for label, v in [("default_radius", radius), ("solver_slack", slack),
                         *((f"radius for {k!r}", v) for k, v in per_score.items())]:
            if v < 0:
                raise SpecError(f"{label} must be nonnegative, got {v}")
        object.__setattr__(self, "default_radius", radius)
        object.__setattr__(self, "per_score_radius", per_score)
        object.__setattr__(self, "solver_slack", slack)

    def __setattr__(self, name, value):
        raise AttributeError("Uncertainty is immutable")

    def radius_for(self, score_id: str) -> Fraction:
        return self.per_score_radius.get(score_id, self.default_radius)

    def __eq__(self, other):
        return (isinstance(other, Uncertainty)
                and self.default_radius == other.default_radius
                and self.per_score_radius == other.per_score_radius
                and self.solver_slack == other.solver_slack)

    def __repr__(self):
        parts = [f"Uncertainty({self.default_radius!s}"]
        if self.per_score_radius:
            parts.append(f", per_score_radius={self.per_score_radius}")
        if self.solver_slack:
            parts.append(f", solver_slack={self.solver_slack!s}")
        return "".join(parts) + ")"


class ScoreReport:
    """Reported score values, keyed by score id.

    Values are stored as exact rationals. When a value arrives as decimal
    text its raw form is kept alongside, so the implied uncertainty radius
    can later be inferred from the digit count.
    """

    __slots__ = ("_values", "_texts")

    def __init__(self, entries: Mapping[str, object]):
        if not entries:
            raise SpecError("a score report needs at least one entry")
        values: dict[str, Fraction] = {}
        texts: dict[str, Optional[str]] = {}
        for score_id, raw in entries.items():
            if not isinstance(score_id, str):
                raise SpecError(f"score id must be a string, got {score_id!r}")
            values[score_id] = as_fraction(raw)
            texts[score_id] = raw.strip() if isinstance(raw, str) else None
        object.__setattr__(self, "_values", values)
        object.__setattr__(self, "_texts", texts)

    def __setattr__(self, name, value):
        raise AttributeError("ScoreReport is immutable")

    @staticmethod
    def of(**entries) -> "ScoreReport":
        return ScoreReport(entries)

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(self._values)

    def value(self, score_id: str) -> Fraction:
        return self._values[score_id]

    def text(self, score_id: str) -> Optional[str]:
        """The raw decimal text, or None if the value arrived numerically."""
        return self._texts[score_id]

    def items(self):
        return self._values.items()

    def subset(self, ids: Sequence[str]) -> "ScoreReport":
        return ScoreReport({
            i: self._texts[i] if self._texts[i] is not None else self._values[i]
            for i in ids})

    def __contains__(self, score_id: str) -> bool:
        return score_id in self._values

    def __len__(self) -> int:
        return len(self._values)

    def __eq__(self, other):
        return isinstance(other, ScoreReport) and self._values == other._values

    def __repr__(self):
        inner = ", ".join(f"{k}={v!s}" for k, v in self._values.items())
        return f"ScoreReport({inner})"


def infer_uncertainty(report: ScoreReport, solver_slack=0) -> Uncertainty:
    """Build an Uncertainty from the decimal texts of a report, giving each
    score the radius implied by its own digit count."""
    per_score = {}
    for score_id in report.ids:
        text = report.text(score_id)
        if text is None:
            raise ParseError(
                f"score {score_id!r} was reported numerically; the implied "
                f"radius can only be inferred from decimal text")
        per_score[score_id] = infer_radius_from_text(text)
    return Uncertainty(0, per_score_radius=per_score, solver_slack=solver_slack)


# ---------------------------------------------------------------------------
# verdicts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConsistencyResult:
    """Outcome of a consistency test.

    inconsistency == True means no valid experimental outcome can reproduce
    the reported scores within their radii: a certain finding. False means
    a witness outcome exists (carried in `witness`, except for the
    regression test, whose evidence is interval-based). `evidence` explains
    the verdict; `procedure` identifies the decision procedure used.
    """

    inconsistency: bool
    procedure: str
    witness: Optional[dict] = None
    evidence: Optional[dict] = None

    @property
    def consistent(self) -> bool:
        return not self.inconsistency

    def to_dict(self) -> dict:
        return {
            "inconsistency": self.inconsistency,
            "procedure": self.procedure,
            "witness": self.witness,
            "evidence": self.evidence,
        }


# ---------------------------------------------------------------------------
# JSON payloads (shapes documented field-for-field in the cli module)
# ---------------------------------------------------------------------------


def testset_to_payload(ts: AnyTestset) -> dict:
    if isinstance(ts, MulticlassTestset):
        return {"class_counts": list(ts.class_counts)}
    return {"p": ts.p, "n": ts.n}


def testset_from_payload(payload: Mapping) -> AnyTestset:
    if not isinstance(payload, Mapping):
        raise ParseError(f"testset must be an object, got {payload!r}")
    if "class_counts" in payload:
        return MulticlassTestset(payload["class_counts"])
    if "p" in payload and "n" in payload:
        return Testset(payload["p"], payload["n"])
    raise ParseError(f"testset needs either p/n or class_counts: {dict(payload)!r}")


def folding_to_payload(scheme: FoldingScheme) -> dict:
    out: dict = {"kind": scheme.kind}
    if scheme.folds is not None:
        out["folds"] = [testset_to_payload(f) for f in scheme.folds]
    if scheme.k is not None:
        out["k"] = scheme.k
    return out


def folding_from_payload(payload: Mapping) -> FoldingScheme:
    if not isinstance(payload, Mapping):
        raise ParseError(f"folding must be an object, got {payload!r}")
    kind = payload.get("kind", "none")
    folds = payload.get("folds")
    if folds is not None:
        folds = tuple(testset_from_payload(f) for f in folds)
    return FoldingScheme(kind, folds=folds, k=payload.get("k"))


def experiment_to_payload(spec: ExperimentSpec) -> dict:
    out: dict = {
        "datasets": [
            {"testset": testset_to_payload(d.testset),
             "folding": folding_to_payload(d.folding)}
            for d in spec.datasets
        ]
    }
    if spec.fold_aggregation is not None:
        out["fold_aggregation"] = spec.fold_aggregation.value
    if spec.dataset_aggregation is not None:
        out["dataset_aggregation"] = spec.dataset_aggregation.value
    return out


def experiment_from_payload(payload: Mapping) -> ExperimentSpec:
    if not isinstance(payload, Mapping):
        raise ParseError(f"experiment must be an object, got {payload!r}")
    raw_datasets = payload.get("datasets")
    if not isinstance(raw_datasets, Sequence) or isinstance(raw_datasets, str):
        raise ParseError("experiment needs a 'datasets' array")
    datasets = []
    for entry in raw_datasets:
        if not isinstance(entry, Mapping) or "testset" not in entry:
            raise ParseError(f"dataset entry needs a 'testset': {entry!r}")
        ts = testset_from_payload(entry["testset"])
        scheme = folding_from_payload(entry.get("folding", {"kind": "none"}))
        datasets.append(DatasetSpec(ts, scheme))

    def _mode(key):
        v = payload.get(key)
        if v is None:
            return None
        try:
            return AggregationMode(v)
        except ValueError:
            raise ParseError(
                f"{key} must be one of "
                f"{[m.value for m in AggregationMode]}, got {v!r}") from None

    return ExperimentSpec(tuple(datasets), fold_aggregation=_mode("fold_aggregation"),
                          dataset_aggregation=_mode("dataset_aggregation"))


def report_to_payload(report: ScoreReport) -> dict:
    out = {}
    for score_id, value in report.items():
        text = report.text(score_id)
        out[score_id] = text if text is not None else str(value)
    return out


def report_from_payload(payload: Mapping) -> ScoreReport:
    if not isinstance(payload, Mapping):
        raise ParseError(f"scores must be an object, got {payload!r}")
    return ScoreReport(payload)


def uncertainty_to_payload(unc: Uncertainty) -> dict:
    out: dict = {"default_radius": str(unc.default_radius)}
    if unc.per_score_radius:
        out["per_score_radius"] = {
            k: str(v) for k, v in sorted(unc.per_score_radius.items())}
    if unc.solver_slack:
        out["solver_slack"] = str(unc.solver_slack)
    return out


def uncertainty_from_payload(payload: Mapping) -> Uncertainty:
    if not isinstance(payload, Mapping):
        raise ParseError(f"uncertainty must be an object, got {payload!r}")
    return Uncertainty(payload.get("default_radius", 0),
                       per_score_radius=payload.get("per_score_radius"),
                       solver_slack=payload.get("solver_slack", 0))
