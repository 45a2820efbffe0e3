"""Mining evolution rules and stable rules from a series of network snapshots."""

__version__ = "0.1.0"

from .evolution import (
    EvolutionRuleSet,
    NewState,
    SnpReport,
    classify_new_state,
    filter_sners,
    merge,
    snp_metric,
)
from .miner import (
    VerticalIndex,
    antecedent_count,
    confidence,
    mine_state,
    mine_state_bruteforce,
    support_count,
)
from .model import (
    ConnectionPair,
    EvolutionRule,
    FormatError,
    InvalidRuleError,
    MinedRule,
    Rule,
    SysNetDb,
    SysNetError,
    ThresholdError,
    Thresholds,
    canonicalize,
)
from .naming import decode_rules, encode_rules, summarize
from .preprocess import (
    EntityIndex,
    Grouping,
    encode_series,
    ingest_state,
    read_db,
    read_index,
    write_db,
    write_index,
)
from .synthgen import PlantedRule, PlantSpec, generate

__all__ = [
    "ConnectionPair", "EntityIndex", "EvolutionRule", "EvolutionRuleSet", "FormatError",
    "Grouping", "InvalidRuleError", "MinedRule", "NewState", "PlantSpec", "PlantedRule", "Rule",
    "SnpReport", "SysNetDb", "SysNetError", "ThresholdError", "Thresholds", "VerticalIndex",
    "antecedent_count", "canonicalize", "classify_new_state", "confidence", "decode_rules",
    "encode_rules", "encode_series", "filter_sners", "generate", "ingest_state", "merge",
    "mine_state", "mine_state_bruteforce", "read_db", "read_index", "snp_metric", "summarize",
    "support_count", "write_db", "write_index",
]
