"""Command-line front end.

Subcommands mirror the pipeline stages:

  ingest  attach region codes to raw tweets
  rerank  build engine + per-region tweet-vote rankings
  eval    mean NDCG per (region, engine, provenance, cutoff)
  report  mark and print eval rows as comparison tables

Exit codes: 0 success, 1 unusable input, 2 broken internal contract
(argparse usage errors also exit 2).
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import sys
from datetime import date

from .corpus import (
    ingest_tweets,
    load_news,
    load_queries,
    slice_corpus,
)
from .errors import ContractViolation, CtvmError, InputDataError
from .evaluation import (
    EvalRow,
    NdcgConfig,
    VARIANT_LITERAL,
    VARIANT_STANDARD,
    compare,
    format_table,
    mean_ndcg,
)
from .geofilter import load_region_table
from .judgments import (
    RelevanceLookup,
    aggregate,
    load_judgment_records,
)
from .similarity import MODE_COMMON_SET, SIM_MODES
from .textproc import Pipeline, load_stopwords
from .voting import (
    PROVENANCE_ENGINE,
    Ranking,
    engine_ranking,
    provenance_for_region,
    rerank,
    vote,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CONTRACT = 2


def _read_lines(path: str) -> list[str]:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.readlines()
    except OSError as exc:
        raise InputDataError(f"cannot read {path}: {exc}") from exc


@contextlib.contextmanager
def _open_out(path: str):
    if path == "-":
        yield sys.stdout
        return
    with open(path, "w", encoding="utf-8") as fh:
        yield fh


def _note(message: str) -> None:
    print(f"note: {message}", file=sys.stderr)


def _parse_region_list(value: str) -> list[str]:
    regions = []
    for part in value.split(","):
        code = part.strip()
        if code and code not in regions:
            regions.append(code)
    if not regions:
        raise argparse.ArgumentTypeError("no region codes given")
    return regions


def _parse_cutoffs(value: str) -> tuple[int, ...]:
    try:
        cutoffs = tuple(int(part) for part in value.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad cutoff list: {value!r}")
    if any(k < 1 for k in cutoffs):
        raise argparse.ArgumentTypeError("cutoffs must be >= 1")
    return tuple(sorted(set(cutoffs)))


def _load_tweets_file(path: str, args, table=None) -> tuple[list, dict]:
    if table is None:
        table = load_region_table(args.region_table)
    tweets, report = ingest_tweets(
        _read_lines(path),
        table,
        loose_abbrev=args.loose_abbrev,
        max_text_len=args.max_text_len,
    )
    return tweets, report.as_dict()


def cmd_ingest(args) -> int:
    tweets, report = _load_tweets_file(args.tweets, args)
    from .corpus import format_timestamp

    with _open_out(args.out) as out:
        for tweet in tweets:
            record = {
                "id": tweet.id,
                "text": tweet.text,
                "timestamp": format_timestamp(tweet.timestamp),
                "user_location": tweet.user_location,
                "region": tweet.region,
            }
            out.write(json.dumps(record, ensure_ascii=False) + "\n")
    print(json.dumps({"ingest": report}), file=sys.stderr)
    return EXIT_OK


def cmd_rerank(args) -> int:
    table = load_region_table(args.region_table)
    unknown = [r for r in args.regions if r not in table]
    if unknown:
        raise InputDataError(
            f"regions {unknown} are not in the region table"
        )
    tweets, tweet_report = _load_tweets_file(args.tweets, args, table)
    if tweet_report["malformed"]:
        _note(f"{tweet_report['malformed']} malformed tweet lines dropped")
    docs, news_report = load_news(_read_lines(args.news))
    if news_report.malformed:
        _note(f"{news_report.malformed} malformed news lines dropped")
    if not docs:
        raise InputDataError(f"no usable news records in {args.news}")
    queries = {q.id: q for q in load_queries(_read_lines(args.queries))}

    stopwords = load_stopwords(args.stopwords)
    groups: dict[tuple[str, str, date], list] = {}
    for doc in docs:
        groups.setdefault(
            (doc.query_id, doc.engine, doc.retrieved_date), []
        ).append(doc)

    lines: list[str] = []
    for (query_id, engine, day), group in sorted(
        groups.items(), key=lambda item: (item[0][0], item[0][1], item[0][2])
    ):
        if args.date and day != args.date:
            continue
        query = queries.get(query_id)
        if query is None:
            raise InputDataError(
                f"news references query {query_id!r} missing from {args.queries}"
            )
        pipeline = Pipeline(stopwords=stopwords, query_terms=query.terms())
        try:
            rankings = [(engine_ranking(group), None)]
            for region in args.regions:
                corpus_slice = slice_corpus(
                    tweets, group, query, region, day, engine
                )
                votes = vote(
                    corpus_slice,
                    pipeline,
                    sim_mode=args.sim,
                    include_snippet=args.include_snippet,
                )
                rankings.append((rerank(group, votes), votes.by_id()))
        except ContractViolation as exc:
            raise InputDataError(
                f"news for {query_id}/{engine}/{day} is not a contiguous "
                f"top-k list: {exc}"
            ) from exc
        for ranking, votes_by_id in rankings:
            for news_id, position in ranking.entries:
                record = {
                    "query_id": query_id,
                    "engine": engine,
                    "date": day.isoformat(),
                    "provenance": ranking.provenance,
                    "position": position,
                    "news_id": news_id,
                    "vote": None if votes_by_id is None else votes_by_id[news_id],
                }
                lines.append(json.dumps(record, ensure_ascii=False))
    if not lines:
        raise InputDataError("nothing to rerank after filtering")
    with _open_out(args.out) as out:
        out.write("\n".join(lines) + "\n")
    return EXIT_OK


def _load_rankings(path: str) -> dict[tuple[str, str, str], list[tuple[str, Ranking]]]:
    """Group ranking rows into (engine, provenance) -> [(query instance,
    Ranking)], keyed so each (query, date) pair stays one unit."""
    rows: dict[tuple[str, str, str, str], list[tuple[int, str]]] = {}
    for lineno, raw in enumerate(_read_lines(path), start=1):
        stripped = raw.strip()
        if not stripped:
            continue
        try:
            record = json.loads(stripped)
            key = (
                record["query_id"],
                record["engine"],
                record["date"],
                record["provenance"],
            )
            entry = (record["position"], record["news_id"])
            if not isinstance(entry[0], int) or not isinstance(entry[1], str):
                raise ValueError("bad position or news_id")
        except (KeyError, ValueError, TypeError) as exc:
            raise InputDataError(f"bad ranking row on line {lineno}: {exc}")
        rows.setdefault(key, []).append(entry)
    grouped: dict[tuple[str, str, str], list[tuple[str, Ranking]]] = {}
    for (query_id, engine, day, provenance), entries in sorted(rows.items()):
        entries.sort()
        try:
            ranking = Ranking(
                tuple((news_id, pos) for pos, news_id in entries), provenance
            )
        except ValueError as exc:
            raise InputDataError(
                f"rankings for {query_id}/{engine}/{day}/{provenance}: {exc}"
            )
        grouped.setdefault((engine, provenance), []).append((query_id, ranking))
    if not grouped:
        raise InputDataError(f"no ranking rows in {path}")
    return grouped


EVAL_COLUMNS = ("region", "engine", "provenance", "cutoff", "mean_ndcg", "n_queries")


def cmd_eval(args) -> int:
    grouped = _load_rankings(args.rankings)
    records, malformed = load_judgment_records(_read_lines(args.judgments))
    if malformed:
        _note(f"{malformed} malformed judgment lines dropped")
    judgment_sets, agg_report = aggregate(records, min_judges=args.min_judges)
    if agg_report.cells_dropped:
        _note(
            f"{agg_report.cells_dropped} judgment cells dropped "
            f"(fewer than {args.min_judges} judges)"
        )
    if agg_report.bad_labels:
        _note(f"{agg_report.bad_labels} judgment records had unknown labels")
    lookup = RelevanceLookup(judgment_sets, round_scores=args.round_relevance)
    if not len(lookup):
        raise InputDataError(f"no usable judgments in {args.judgments}")
    regions = args.regions if args.regions else list(lookup.regions())
    config = NdcgConfig(cutoffs=args.cutoffs, variant=args.ndcg)

    out_rows: list[tuple] = []
    for region in regions:
        for (engine, provenance), units in sorted(
            grouped.items(),
            key=lambda item: (
                item[0][0],
                item[0][1] != PROVENANCE_ENGINE,
                item[0][1],
            ),
        ):
            units = sorted(units, key=lambda u: u[0])
            rows, _scores = mean_ndcg(
                units,
                lookup,
                region,
                config,
                require_complete=args.require_complete,
            )
            for row in rows:
                out_rows.append(
                    (
                        region,
                        engine,
                        row.provenance,
                        row.cutoff,
                        row.mean_ndcg,
                        row.n_queries,
                    )
                )
    if lookup.misses:
        _note(f"{lookup.misses} ranked docs had no judgment; scored 0")
    with _open_out(args.out) as out:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(EVAL_COLUMNS)
        for region, engine, provenance, cutoff, value, n in out_rows:
            writer.writerow(
                [region, engine, provenance, cutoff, f"{value:.10f}", n]
            )
    return EXIT_OK


def _read_eval_rows(path: str) -> list[tuple[str, str, EvalRow]]:
    rows: list[tuple[str, str, EvalRow]] = []
    text = "".join(_read_lines(path))
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or not set(EVAL_COLUMNS) <= set(reader.fieldnames):
        raise InputDataError(
            f"{path} does not look like eval output "
            f"(need columns {', '.join(EVAL_COLUMNS)})"
        )
    for lineno, record in enumerate(reader, start=2):
        try:
            rows.append(
                (
                    record["region"],
                    record["engine"],
                    EvalRow(
                        provenance=record["provenance"],
                        cutoff=int(record["cutoff"]),
                        mean_ndcg=float(record["mean_ndcg"]),
                        n_queries=int(record["n_queries"]),
                    ),
                )
            )
        except (KeyError, ValueError, TypeError) as exc:
            raise InputDataError(f"bad eval row on line {lineno}: {exc}")
    if not rows:
        raise InputDataError(f"no eval rows in {path}")
    return rows


def cmd_report(args) -> int:
    rows = _read_eval_rows(args.rows)
    groups: dict[tuple[str, str], list[EvalRow]] = {}
    for region, engine, row in rows:
        groups.setdefault((region, engine), []).append(row)
    tables: list[str] = []
    marked_csv: list[tuple[str, str, EvalRow]] = []
    for (region, engine), group_rows in sorted(groups.items()):
        marked = compare(group_rows)
        heading = f"[region={region} engine={engine}]"
        tables.append(format_table(marked, heading))
        marked_csv.extend((region, engine, row) for row in marked)
    with _open_out(args.out) as out:
        out.write("\n\n".join(tables) + "\n")
    if args.csv:
        with _open_out(args.csv) as out:
            writer = csv.writer(out, lineterminator="\n")
            writer.writerow(EVAL_COLUMNS + ("better_than_engine",))
            for region, engine, row in marked_csv:
                writer.writerow(
                    [
                        region,
                        engine,
                        row.provenance,
                        row.cutoff,
                        f"{row.mean_ndcg:.10f}",
                        row.n_queries,
                        str(row.better_than_engine).lower(),
                    ]
                )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ctvm",
        description="Re-rank news results by community tweet votes and "
        "evaluate rankings with NDCG.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    region_opts = argparse.ArgumentParser(add_help=False)
    region_opts.add_argument(
        "--region-table",
        metavar="PATH",
        default=None,
        help="code,full_name CSV (default: bundled US states)",
    )
    region_opts.add_argument(
        "--loose-abbrev",
        action="store_true",
        help="match region codes as substrings, not whole tokens",
    )
    region_opts.add_argument(
        "--max-text-len",
        type=int,
        default=280,
        metavar="N",
        help="drop tweets with text longer than N (default 280)",
    )

    p_ingest = sub.add_parser(
        "ingest",
        parents=[region_opts],
        help="attach region codes to raw tweet JSONL",
    )
    p_ingest.add_argument("--tweets", required=True, metavar="PATH")
    p_ingest.add_argument("--out", required=True, metavar="PATH")
    p_ingest.set_defaults(func=cmd_ingest)

    p_rerank = sub.add_parser(
        "rerank",
        parents=[region_opts],
        help="build engine and tweet-vote rankings",
    )
    p_rerank.add_argument("--tweets", required=True, metavar="PATH")
    p_rerank.add_argument("--news", required=True, metavar="PATH")
    p_rerank.add_argument("--queries", required=True, metavar="PATH")
    p_rerank.add_argument("--out", required=True, metavar="PATH")
    p_rerank.add_argument(
        "--regions",
        type=_parse_region_list,
        default=["CA", "NY", "TX"],
        metavar="CODES",
        help="comma-separated region codes (default CA,NY,TX)",
    )
    p_rerank.add_argument(
        "--sim",
        choices=SIM_MODES,
        default=MODE_COMMON_SET,
        help="similarity mode (default common-set)",
    )
    p_rerank.add_argument(
        "--stopwords",
        metavar="PATH",
        default=None,
        help="stopword file (default: bundled SMART list)",
    )
    p_rerank.add_argument(
        "--include-snippet",
        action="store_true",
        help="vote on title + snippet instead of title alone",
    )
    p_rerank.add_argument(
        "--date",
        type=date.fromisoformat,
        default=None,
        metavar="YYYY-MM-DD",
        help="only rerank results retrieved on this date",
    )
    p_rerank.set_defaults(func=cmd_rerank)

    p_eval = sub.add_parser(
        "eval",
        help="mean NDCG per region, provenance and cutoff",
    )
    p_eval.add_argument("--rankings", required=True, metavar="PATH")
    p_eval.add_argument("--judgments", required=True, metavar="PATH")
    p_eval.add_argument("--out", required=True, metavar="PATH")
    p_eval.add_argument(
        "--regions",
        type=_parse_region_list,
        default=None,
        metavar="CODES",
        help="regions whose judges to evaluate under "
        "(default: every region in the judgments)",
    )
    p_eval.add_argument(
        "--k",
        dest="cutoffs",
        type=_parse_cutoffs,
        default=(3, 5, 10),
        metavar="LIST",
        help="NDCG cutoffs, comma-separated (default 3,5,10)",
    )
    p_eval.add_argument(
        "--ndcg",
        choices=(VARIANT_STANDARD, VARIANT_LITERAL),
        default=VARIANT_STANDARD,
        help="NDCG formulation (default standard)",
    )
    p_eval.add_argument(
        "--min-judges",
        type=int,
        default=3,
        metavar="N",
        help="judges required to keep a judgment cell (default 3)",
    )
    p_eval.add_argument(
        "--require-complete",
        action="store_true",
        help="skip queries with any unjudged ranked doc",
    )
    p_eval.add_argument(
        "--round-relevance",
        action="store_true",
        help="round mean judge scores half-up to whole numbers",
    )
    p_eval.set_defaults(func=cmd_eval)

    p_report = sub.add_parser(
        "report",
        help="render eval rows as marked comparison tables",
    )
    p_report.add_argument("--rows", required=True, metavar="PATH")
    p_report.add_argument("--out", default="-", metavar="PATH")
    p_report.add_argument(
        "--csv",
        default=None,
        metavar="PATH",
        help="also write marked rows as CSV",
    )
    p_report.set_defaults(func=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ContractViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    except (CtvmError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
