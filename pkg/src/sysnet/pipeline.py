"""End-to-end runs: mine every state, merge, filter, decode, report; threshold sweeps."""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from pathlib import Path
from typing import Sequence

from .evolution import (
    NERS_ID,
    SNERS_ID,
    SNP_CSV,
    EvolutionRuleSet,
    SnpReport,
    filter_sners,
    merge,
    write_evolution_rules,
    write_snp_csv,
)
from .miner import mine_state, write_state_rules
from .model import MinedRule, SysNetDb, ThresholdError, Thresholds
from .naming import NERS_NAME, REPORT, SNERS_NAME, decode_rules, summarize, write_report
from .preprocess import EntityIndex

log = logging.getLogger(__name__)


def _mine_one(db, thresholds, max_antecedent, max_consequent):
    return mine_state(db, thresholds, max_antecedent, max_consequent)


def mine_series(
    dbs: Sequence[SysNetDb],
    thresholds: Thresholds,
    jobs: int = 1,
    max_antecedent: int | None = None,
    max_consequent: int | None = None,
) -> list[list[MinedRule]]:
    """Mine each state; output order always follows ``dbs``."""
    fn = partial(_mine_one, thresholds=thresholds, max_antecedent=max_antecedent,
                 max_consequent=max_consequent)
    if jobs <= 1 or len(dbs) <= 1:
        return [fn(db) for db in dbs]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, dbs))


@dataclass
class MineResult:
    per_state: list
    evolution: EvolutionRuleSet
    sners: list
    report: SnpReport


def analyse(
    dbs: Sequence[SysNetDb],
    thresholds: Thresholds,
    jobs: int = 1,
    max_antecedent: int | None = None,
    max_consequent: int | None = None,
) -> MineResult:
    n = len(dbs)
    if not 1 <= thresholds.min_stab_count <= n:
        raise ThresholdError(f"min_stab_count must lie in 1..{n}, got {thresholds.min_stab_count}")
    per_state = mine_series(dbs, thresholds, jobs, max_antecedent, max_consequent)
    ers = merge(per_state, [db.label for db in dbs] if _distinct_labels(dbs) else None)
    sners = filter_sners(ers, thresholds.min_stab_count)
    return MineResult(per_state, ers, sners, SnpReport.from_rules(thresholds, ers, sners))


def _distinct_labels(dbs) -> bool:
    return len({db.label for db in dbs}) == len(dbs)


def run_mine(
    dbs: Sequence[SysNetDb],
    index: EntityIndex,
    thresholds: Thresholds,
    out_dir,
    jobs: int = 1,
    max_antecedent: int | None = None,
    max_consequent: int | None = None,
    previous: SnpReport | None = None,
    top: int = 10,
) -> MineResult:
    """Mine a series and write the full output tree under ``out_dir``."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    result = analyse(dbs, thresholds, jobs, max_antecedent, max_consequent)
    write_state_rules(result.per_state, out_dir)
    write_evolution_rules(result.evolution.ordered(), out_dir / NERS_ID)
    write_evolution_rules(result.sners, out_dir / SNERS_ID)
    decode_rules(out_dir / NERS_ID, index, out_dir / NERS_NAME)
    decode_rules(out_dir / SNERS_ID, index, out_dir / SNERS_NAME)
    write_snp_csv(result.report, out_dir / SNP_CSV)
    text = summarize(result.report, out_dir / NERS_ID, out_dir / SNERS_ID,
                     [db.label for db in dbs], index, previous, top)
    write_report(text, out_dir / REPORT)
    log.info("mined %d states at %s: %d NERs, %d SNERs", len(dbs), thresholds.label,
             result.report.ner_count, result.report.sner_count)
    return result


def _sweep_block(dbs, sup_conf, stabs, max_antecedent, max_consequent):
    sup, conf = sup_conf
    base = Thresholds(sup, conf)
    per_state = [mine_state(db, base, max_antecedent, max_consequent) for db in dbs]
    ers = merge(per_state)
    reports = []
    for stab in stabs:
        t = Thresholds(sup, conf, stab)
        reports.append(SnpReport.from_rules(t, ers, filter_sners(ers, stab)))
    return reports


def sweep(
    dbs: Sequence[SysNetDb],
    min_sup_counts: Sequence[int],
    min_confs: Sequence,
    min_stab_counts: Sequence[int],
    sort: str = "asc",
    jobs: int = 1,
    max_antecedent: int | None = None,
    max_consequent: int | None = None,
) -> list[SnpReport]:
    """SNP for every threshold triple of the grid.

    Rows come in (minSupCount, minConf) blocks in grid order; inside a block
    they are ordered by SNP (``sort`` = ``asc`` or ``desc``), ties by minStabCount.
    Each block mines the series once and only re-filters for each minStabCount.
    """
    if not (min_sup_counts and min_confs and min_stab_counts):
        raise ThresholdError("empty threshold grid")
    if sort not in ("asc", "desc"):
        raise ValueError("sort must be 'asc' or 'desc'")
    n = len(dbs)
    stabs = list(min_stab_counts)
    for stab in stabs:
        if not 1 <= stab <= n:
            raise ThresholdError(f"min_stab_count must lie in 1..{n}, got {stab}")
    # validate every pair up front so a bad value fails before any mining
    blocks = [(Thresholds(s, c).min_sup_count, Thresholds(s, c).min_conf)
              for s in min_sup_counts for c in min_confs]
    fn = partial(_sweep_block, list(dbs), stabs=stabs, max_antecedent=max_antecedent,
                 max_consequent=max_consequent)
    if jobs <= 1 or len(blocks) <= 1:
        results = [fn(b) for b in blocks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(fn, blocks))
    rows = []
    sign = 1 if sort == "asc" else -1
    for block in results:
        rows.extend(sorted(block, key=lambda r: (sign * r.snp_exact, r.thresholds.min_stab_count)))
    return rows


__all__ = ["MineResult", "analyse", "mine_series", "run_mine", "sweep"]
