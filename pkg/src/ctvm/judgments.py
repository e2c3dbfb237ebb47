"""Human relevance judgments: parsing, aggregation, lookup.

Judges label each (query, news, region) cell on a four-point scale.
A cell keeps its judgment only when at least min_judges distinct judges
rated it; the aggregate is the plain mean of their scores. A judge who
rated the same cell twice counts once, with the later record winning.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, fields
from enum import IntEnum
from typing import Iterable

from .errors import InputDataError


class Label(IntEnum):
    NOT_RELEVANT = 0
    JUST_OK = 1
    INTERESTING = 2
    VERY_INTERESTING = 3


_LABEL_BY_TEXT = {
    "not relevant": Label.NOT_RELEVANT,
    "just ok": Label.JUST_OK,
    "interesting": Label.INTERESTING,
    "very interesting": Label.VERY_INTERESTING,
}


def parse_label(value: object) -> Label:
    """Accept the label text (any spacing/case) or its numeric score."""
    if isinstance(value, str):
        normalized = " ".join(value.lower().replace("_", " ").split())
        if normalized in _LABEL_BY_TEXT:
            return _LABEL_BY_TEXT[normalized]
        raise ValueError(f"unknown judgment label: {value!r}")
    if isinstance(value, int) and not isinstance(value, bool):
        if 0 <= value <= 3:
            return Label(value)
        raise ValueError(f"judgment score out of range: {value}")
    raise ValueError(f"judgment label must be text or int: {value!r}")


@dataclass(frozen=True)
class JudgmentRecord:
    query_id: str
    news_id: str
    region: str
    judge_id: str
    label: object  # raw value; parsed during aggregation

    def key(self) -> tuple[str, str, str]:
        return (self.query_id, self.news_id, self.region)


@dataclass(frozen=True)
class JudgmentSet:
    """Aggregated cell: who said what, and the mean relevance."""

    query_id: str
    news_id: str
    region: str
    labels: tuple[tuple[str, Label], ...]
    relevance: float

    def key(self) -> tuple[str, str, str]:
        return (self.query_id, self.news_id, self.region)


@dataclass
class AggregationReport:
    records_in: int = 0
    bad_labels: int = 0
    duplicates_superseded: int = 0
    cells_kept: int = 0
    cells_dropped: int = 0

    def as_dict(self) -> dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def load_judgment_records(
    lines: Iterable[str],
) -> tuple[list[JudgmentRecord], int]:
    """Parse judgment JSONL; returns (records, malformed_line_count)."""
    records: list[JudgmentRecord] = []
    malformed = 0
    for line in lines:
        raw = line.strip()
        if not raw:
            continue
        try:
            obj = json.loads(raw)
            if not isinstance(obj, dict):
                raise ValueError("not an object")
            label = obj["label"] if "label" in obj else obj["score"]
            record = JudgmentRecord(
                query_id=obj["query_id"],
                news_id=obj["news_id"],
                region=obj["region"],
                judge_id=obj["judge_id"],
                label=label,
            )
            for value in (
                record.query_id,
                record.news_id,
                record.region,
                record.judge_id,
            ):
                if not isinstance(value, str) or not value:
                    raise ValueError("ids must be non-empty strings")
        except (KeyError, ValueError, TypeError):
            malformed += 1
            continue
        records.append(record)
    return records, malformed


def aggregate(
    records: Iterable[JudgmentRecord],
    min_judges: int = 3,
) -> tuple[list[JudgmentSet], AggregationReport]:
    """Mean score per cell, dropping cells with too few distinct judges.

    Records with unparseable labels are skipped and counted; a judge's
    repeat rating of the same cell supersedes the earlier one.
    """
    if min_judges < 1:
        raise ValueError("min_judges must be at least 1")
    report = AggregationReport()
    # cell -> judge -> Label, insertion-ordered for stable output
    cells: dict[tuple[str, str, str], dict[str, Label]] = {}
    for record in records:
        report.records_in += 1
        try:
            label = parse_label(record.label)
        except ValueError:
            report.bad_labels += 1
            continue
        judges = cells.setdefault(record.key(), {})
        if record.judge_id in judges:
            report.duplicates_superseded += 1
        judges[record.judge_id] = label
    sets: list[JudgmentSet] = []
    for key, judges in cells.items():
        if len(judges) < min_judges:
            report.cells_dropped += 1
            continue
        report.cells_kept += 1
        labels = tuple(judges.items())
        mean = sum(int(l) for _, l in labels) / len(labels)
        sets.append(JudgmentSet(key[0], key[1], key[2], labels, mean))
    return sets, report


def round_half_up(value: float) -> float:
    """0.5 rounds away from zero; scores here are never negative."""
    return float(math.floor(value + 0.5))


class RelevanceLookup:
    """Relevance by (query, news, region), counting misses.

    A missing cell scores 0.0: unjudged means not known to be relevant.
    The miss counter lets callers report how often that default fired.
    """

    def __init__(
        self,
        judgment_sets: Iterable[JudgmentSet],
        *,
        round_scores: bool = False,
    ) -> None:
        self._table: dict[tuple[str, str, str], float] = {}
        for js in judgment_sets:
            value = round_half_up(js.relevance) if round_scores else js.relevance
            self._table[js.key()] = value
        self.misses = 0

    def __len__(self) -> int:
        return len(self._table)

    def contains(self, query_id: str, news_id: str, region: str) -> bool:
        return (query_id, news_id, region) in self._table

    def get(self, query_id: str, news_id: str, region: str) -> float:
        try:
            return self._table[(query_id, news_id, region)]
        except KeyError:
            self.misses += 1
            return 0.0

    def regions(self) -> tuple[str, ...]:
        return tuple(sorted({key[2] for key in self._table}))

    def query_ids(self) -> tuple[str, ...]:
        return tuple(sorted({key[0] for key in self._table}))
