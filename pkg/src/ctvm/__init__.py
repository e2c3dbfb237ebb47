"""Community tweet voting for news search rankings.

Pipeline: ingest tweets and attach regions, slice the corpus per
(query, region, day, engine), let each tweet vote for every news result
by text similarity, re-rank by votes, and score rankings against human
judgments with NDCG.
"""

from .corpus import (
    CorpusSlice,
    NewsDoc,
    Query,
    Tweet,
    ingest_tweets,
    load_news,
    load_queries,
    slice_corpus,
)
from .errors import (
    ContractViolation,
    CtvmError,
    EmptySliceError,
    EvalError,
    IngestError,
    InputDataError,
)
from .evaluation import NdcgConfig, compare, dcg, mean_ndcg, ndcg
from .geofilter import RegionTable, load_region_table
from .judgments import (
    Label,
    RelevanceLookup,
    aggregate,
    load_judgment_records,
    parse_label,
)
from .porter import stem
from .similarity import cosine
from .textproc import Pipeline, load_stopwords, to_vector, tokenize
from .voting import Ranking, VoteVector, engine_ranking, four_way, rerank, vote

__version__ = "0.1.0"

__all__ = [
    "ContractViolation",
    "CorpusSlice",
    "CtvmError",
    "EmptySliceError",
    "EvalError",
    "IngestError",
    "InputDataError",
    "Label",
    "NdcgConfig",
    "NewsDoc",
    "Pipeline",
    "Query",
    "Ranking",
    "RegionTable",
    "RelevanceLookup",
    "Tweet",
    "VoteVector",
    "aggregate",
    "compare",
    "cosine",
    "dcg",
    "engine_ranking",
    "four_way",
    "ingest_tweets",
    "load_judgment_records",
    "load_news",
    "load_queries",
    "load_region_table",
    "load_stopwords",
    "mean_ndcg",
    "ndcg",
    "parse_label",
    "rerank",
    "slice_corpus",
    "stem",
    "to_vector",
    "tokenize",
    "vote",
]
