"""Fold-size derivation and enumeration for k-fold schemes.

Two jobs: derive the deterministic stratified split of a testset into k
folds, and enumerate every possible fold-size configuration when the split
is unknown. Both work on generic per-class count vectors, so the binary
(p, n) case and the multiclass case share the machinery.

Configuration enumeration is combinatorial, so it is capped: exceeding the
cap raises TooManyConfigurations instead of grinding on. The default cap
can be overridden per call or through the SCORESLEUTH_CONFIG_CAP
environment variable.
"""

from __future__ import annotations

import os
from typing import Iterator, Optional, Sequence

from .errors import InvalidFoldCount, SpecError, TooManyConfigurations
from .model import Testset

DEFAULT_CONFIG_CAP = 10 ** 6

_ENV_CAP = "SCORESLEUTH_CONFIG_CAP"


def config_cap(cap: Optional[int] = None) -> int:
    """Resolve the configuration cap: explicit argument, then the
    SCORESLEUTH_CONFIG_CAP environment variable, then the default."""
    if cap is not None:
        return cap
    raw = os.environ.get(_ENV_CAP)
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise SpecError(f"{_ENV_CAP} must be an integer, got {raw!r}") from None
    return DEFAULT_CONFIG_CAP


def stratified_split_counts(totals: Sequence[int], k: int) -> list[tuple[int, ...]]:
    """Deterministic even split of each class across k folds.

    For a class with c samples, the first (c mod k) folds receive
    ceil(c/k) and the rest floor(c/k); folds are paired by index across
    classes. Raises InvalidFoldCount when the rule leaves a fold empty.
    """
    if k < 1:
        raise InvalidFoldCount(f"k must be at least 1, got {k}")
    per_class = []
    for c in totals:
        q, r = divmod(c, k)
        per_class.append([q + 1] * r + [q] * (k - r))
    folds = [tuple(col[j] for col in per_class) for j in range(k)]
    if any(sum(f) == 0 for f in folds):
        raise InvalidFoldCount(
            f"stratified split of totals {tuple(totals)} into k={k} folds "
            f"leaves a fold empty")
    return folds


def enumerate_stratified_fold_sizes(p: int, n: int, k: int) -> list[Testset]:
    """The stratified fold testsets for a binary testset (see
    stratified_split_counts for the rule)."""
    return [Testset(fp, fn) for fp, fn in stratified_split_counts((p, n), k)]


def _vectors_desc(totals: tuple[int, ...], cap_vec: tuple[int, ...]
                  ) -> Iterator[tuple[int, ...]]:
    """Nonzero vectors v with 0 <= v <= totals componentwise and
    v <= cap_vec lexicographically, in decreasing lexicographic order."""
    m = len(totals)

    def rec(i: int, prefix: list[int], tight: bool) -> Iterator[tuple[int, ...]]:
        if i == m:
            if any(prefix):
                yield tuple(prefix)
            return
        top = min(totals[i], cap_vec[i]) if tight else totals[i]
        for x in range(top, -1, -1):
            prefix.append(x)
            yield from rec(i + 1, prefix, tight and x == cap_vec[i])
            prefix.pop()

    return rec(0, [], True)


def iter_fold_configurations(totals: Sequence[int], k: int
                             ) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All multisets of k nonempty per-class count vectors summing to
    `totals`, each configuration given as a lexicographically nonincreasing
    tuple; configurations are yielded in decreasing lexicographic order."""
    totals = tuple(totals)
    if k < 1:
        raise InvalidFoldCount(f"k must be at least 1, got {k}")
    if sum(totals) < k:
        raise InvalidFoldCount(
            f"cannot split totals {totals} into {k} nonempty folds")

    def rec(remaining: tuple[int, ...], slots: int, cap_vec: tuple[int, ...]
            ) -> Iterator[tuple[tuple[int, ...], ...]]:
        if slots == 0:
            if all(t == 0 for t in remaining):
                yield ()
            return
        total_left = sum(remaining)
        if total_left < slots:  # each remaining fold needs >= 1 sample
            return
        for v in _vectors_desc(remaining, cap_vec):
            # later folds are lex <= v, so their first components are <= v[0]
            if remaining[0] - v[0] > (slots - 1) * v[0]:
                continue
            rest = tuple(r - x for r, x in zip(remaining, v))
            for tail in rec(rest, slots - 1, v):
                yield (v,) + tail

    return rec(totals, k, totals)


def enumerate_fold_configurations(p: int, n: int, k: int,
                                  cap: Optional[int] = None
                                  ) -> list[tuple[Testset, ...]]:
    """All fold-size configurations of a binary testset as Testset tuples,
    canonically ordered; raises TooManyConfigurations past the cap."""
    limit = config_cap(cap)
    out: list[tuple[Testset, ...]] = []
    for config in iter_fold_configurations((p, n), k):
        if len(out) >= limit:
            raise TooManyConfigurations(len(out) + 1, limit)
        out.append(tuple(Testset(fp, fn) for fp, fn in config))
    return out
