"""Corpus records and loaders: tweets, news results, queries, slices.

Input files are JSONL. Loaders are lenient per record (a bad line is
counted and dropped, never fatal) except for queries, which are few and
load strictly. A "slice" is the working unit downstream: one query, one
region, one day, one engine's ranked results, plus every tweet from
that region and day whose text mentions the query.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, fields
from datetime import date, datetime, timezone
from typing import Iterable

from .errors import ContractViolation, InputDataError
from .geofilter import RegionTable


def parse_timestamp(value: str) -> datetime:
    """RFC 3339 timestamp with a required UTC offset ('Z' accepted)."""
    text = value.strip()
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    parsed = datetime.fromisoformat(text)
    if parsed.tzinfo is None:
        raise ValueError(f"timestamp lacks a UTC offset: {value!r}")
    return parsed.astimezone(timezone.utc)


def format_timestamp(value: datetime) -> str:
    return value.astimezone(timezone.utc).isoformat().replace("+00:00", "Z")


@dataclass(frozen=True)
class Query:
    id: str
    variants: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("query id is empty")
        if not self.variants:
            raise ValueError(f"query {self.id} has no variants")
        for v in self.variants:
            if not v or v != v.lower():
                raise ValueError(f"query variant must be non-empty lowercase: {v!r}")

    def terms(self) -> frozenset[str]:
        """Lowercase tokens across all variants, for vector exclusion."""
        from .textproc import tokenize

        out: set[str] = set()
        for v in self.variants:
            out.update(tokenize(v))
        return frozenset(out)

    def matches(self, text: str) -> bool:
        lowered = text.lower()
        return any(v in lowered for v in self.variants)


@dataclass(frozen=True)
class Tweet:
    id: str
    text: str
    timestamp: datetime
    user_location: str = ""
    region: str | None = None

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("tweet id is empty")
        if not self.text.strip():
            raise ValueError(f"tweet {self.id} has empty text")
        if self.timestamp.tzinfo is None:
            raise ValueError(f"tweet {self.id} timestamp is naive")
        object.__setattr__(
            self, "timestamp", self.timestamp.astimezone(timezone.utc)
        )

    def day(self) -> date:
        return self.timestamp.date()


@dataclass(frozen=True)
class NewsDoc:
    id: str
    query_id: str
    engine: str
    original_rank: int
    title: str
    retrieved_date: date
    snippet: str = ""

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("news id is empty")
        if not self.query_id:
            raise ValueError(f"news {self.id} has no query_id")
        if not self.engine:
            raise ValueError(f"news {self.id} has no engine")
        if isinstance(self.original_rank, bool) or self.original_rank < 1:
            raise ValueError(
                f"news {self.id} original_rank must be an int >= 1"
            )
        if not self.title.strip():
            raise ValueError(f"news {self.id} has an empty title")


@dataclass(frozen=True)
class CorpusSlice:
    """One (query, region, day, engine) cell of the corpus.

    news is the engine's full contiguous top-k for that cell; tweets
    are ordered by (timestamp, id) so later summations are
    reproducible.
    """

    query: Query
    region: str
    day: date
    engine: str
    tweets: tuple[Tweet, ...]
    news: tuple[NewsDoc, ...]

    def __post_init__(self) -> None:
        for rank, doc in enumerate(self.news, start=1):
            if doc.original_rank != rank:
                raise ContractViolation(
                    f"news ranks must be contiguous from 1; saw "
                    f"{doc.original_rank} at position {rank}"
                )
            if doc.query_id != self.query.id:
                raise ContractViolation(
                    f"news {doc.id} belongs to query {doc.query_id}, "
                    f"slice is for {self.query.id}"
                )
            if doc.engine != self.engine:
                raise ContractViolation(
                    f"news {doc.id} is from engine {doc.engine}, "
                    f"slice is for {self.engine}"
                )
            if doc.retrieved_date != self.day:
                raise ContractViolation(
                    f"news {doc.id} retrieved {doc.retrieved_date}, "
                    f"slice is for {self.day}"
                )
        for tweet in self.tweets:
            if tweet.region != self.region:
                raise ContractViolation(
                    f"tweet {tweet.id} region {tweet.region!r} does not "
                    f"match slice region {self.region!r}"
                )
            if tweet.day() != self.day:
                raise ContractViolation(
                    f"tweet {tweet.id} is from {tweet.day()}, "
                    f"slice is for {self.day}"
                )
            if not self.query.matches(tweet.text):
                raise ContractViolation(
                    f"tweet {tweet.id} does not mention query {self.query.id}"
                )


def slice_corpus(
    tweets: Iterable[Tweet],
    news: Iterable[NewsDoc],
    query: Query,
    region: str,
    day: date,
    engine: str | None = None,
) -> CorpusSlice:
    """Select and order one slice's tweets and news.

    engine may be omitted only when the matching news all come from a
    single engine.
    """
    docs = [
        n for n in news if n.query_id == query.id and n.retrieved_date == day
    ]
    if engine is None:
        engines = sorted({n.engine for n in docs})
        if len(engines) > 1:
            raise ContractViolation(
                f"news for {query.id} on {day} spans engines "
                f"{engines}; pass engine explicitly"
            )
        engine = engines[0] if engines else ""
    else:
        docs = [n for n in docs if n.engine == engine]
    docs.sort(key=lambda n: n.original_rank)

    picked = [
        t
        for t in tweets
        if t.region == region and t.day() == day and query.matches(t.text)
    ]
    picked.sort(key=lambda t: (t.timestamp, t.id))
    return CorpusSlice(query, region, day, engine, tuple(picked), tuple(docs))


@dataclass
class IngestReport:
    accepted: int = 0
    malformed: int = 0
    duplicates: int = 0
    region_unresolved: int = 0

    def as_dict(self) -> dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def _record_lines(lines: Iterable[str]) -> Iterable[str]:
    for line in lines:
        stripped = line.strip()
        if stripped:
            yield stripped


def ingest_tweets(
    lines: Iterable[str],
    regions: RegionTable,
    *,
    loose_abbrev: bool = False,
    max_text_len: int = 280,
) -> tuple[list[Tweet], IngestReport]:
    """Parse tweet JSONL and attach a region to each record.

    Malformed lines and duplicate ids are dropped and counted. Tweets
    whose location resolves to no region are kept (region None) so the
    caller can still count them; slicing filters them out naturally.
    Records that already carry a "region" key (this function's own
    output does) keep it untouched, which makes ingestion idempotent.
    """
    report = IngestReport()
    tweets: list[Tweet] = []
    seen: set[str] = set()
    for raw in _record_lines(lines):
        try:
            record = json.loads(raw)
            if not isinstance(record, dict):
                raise ValueError("not an object")
            tweet_id = record["id"]
            text = record["text"]
            if not isinstance(tweet_id, str) or not tweet_id:
                raise ValueError("bad id")
            if not isinstance(text, str) or not text.strip():
                raise ValueError("bad text")
            if len(text) > max_text_len:
                raise ValueError("text too long")
            timestamp = parse_timestamp(record["timestamp"])
            location = record.get("user_location") or ""
            if not isinstance(location, str):
                raise ValueError("bad user_location")
            preset = record.get("region")
            if preset is not None and (
                not isinstance(preset, str) or not preset
            ):
                raise ValueError("bad region")
        except (KeyError, ValueError, TypeError):
            report.malformed += 1
            continue
        if tweet_id in seen:
            report.duplicates += 1
            continue
        seen.add(tweet_id)
        if "region" in record:
            region = preset
        else:
            region = regions.resolve(location, loose_abbrev=loose_abbrev)
        if region is None:
            report.region_unresolved += 1
        tweets.append(
            Tweet(
                id=tweet_id,
                text=text,
                timestamp=timestamp,
                user_location=location,
                region=region,
            )
        )
        report.accepted += 1
    return tweets, report


@dataclass
class NewsReport:
    accepted: int = 0
    malformed: int = 0
    duplicates: int = 0

    def as_dict(self) -> dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def load_news(lines: Iterable[str]) -> tuple[list[NewsDoc], NewsReport]:
    report = NewsReport()
    docs: list[NewsDoc] = []
    seen: set[str] = set()
    for raw in _record_lines(lines):
        try:
            record = json.loads(raw)
            if not isinstance(record, dict):
                raise ValueError("not an object")
            snippet = record.get("snippet") or ""
            if not isinstance(snippet, str):
                raise ValueError("bad snippet")
            doc = NewsDoc(
                id=record["id"],
                query_id=record["query_id"],
                engine=record["engine"],
                original_rank=record["original_rank"],
                title=record["title"],
                retrieved_date=date.fromisoformat(record["retrieved_date"]),
                snippet=snippet,
            )
        except (KeyError, ValueError, TypeError):
            report.malformed += 1
            continue
        if doc.id in seen:
            report.duplicates += 1
            continue
        seen.add(doc.id)
        docs.append(doc)
        report.accepted += 1
    return docs, report


def load_queries(lines: Iterable[str]) -> list[Query]:
    """Queries load strictly: any bad record is fatal."""
    queries: list[Query] = []
    seen: set[str] = set()
    for lineno, raw in enumerate(_record_lines(lines), start=1):
        try:
            record = json.loads(raw)
            if not isinstance(record, dict):
                raise ValueError("not an object")
            query_id = record["id"]
            variants = record["variants"]
            if not isinstance(query_id, str):
                raise ValueError("bad id")
            if not isinstance(variants, list) or not all(
                isinstance(v, str) for v in variants
            ):
                raise ValueError("variants must be a list of strings")
            query = Query(
                id=query_id,
                variants=tuple(v.lower().strip() for v in variants),
            )
        except (KeyError, ValueError, TypeError) as exc:
            raise InputDataError(f"bad query record on line {lineno}: {exc}")
        if query.id in seen:
            raise InputDataError(f"duplicate query id: {query.id}")
        seen.add(query.id)
        queries.append(query)
    return queries
