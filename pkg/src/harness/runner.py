"""
Runs the statement registry over a corpus and produces the scorecard
"""

from typing import Iterable, List, Optional
import logging
import time

from tqdm import tqdm

from config.settings import settings
from src.exceptions import GuardExceededError, InvariantError, MalformedInputError
from src.generators.families import staircase
from src.schemas import CorpusSpec, Scorecard, ScorecardEntry, StaircaseReport
from .corpus import build_instance, default_corpus
from .statements import STATEMENTS, InstanceContext, run_statement

logger = logging.getLogger(__name__)

VALIDATE = "Validate"


def _selected(statement_filter: Optional[Iterable[str]]) -> List[str]:
    if statement_filter is None:
        return list(STATEMENTS)
    wanted = list(dict.fromkeys(statement_filter))
    unknown = [s for s in wanted if s not in STATEMENTS]
    if unknown:
        raise MalformedInputError(f"unknown statement ids {unknown}; known: {sorted(STATEMENTS)}")
    return [s for s in STATEMENTS if s in wanted]


def _score(ctx: InstanceContext, selected: List[str]) -> List[ScorecardEntry]:
    entries: List[ScorecardEntry] = []
    valid = run_statement(STATEMENTS[VALIDATE], ctx)
    if valid is not None:
        logger.warning(f"{ctx.instance_id} failed validation: {valid}")
    for statement_id in selected:
        started = time.perf_counter()
        if statement_id == VALIDATE:
            witness, status = valid, "pass" if valid is None else "fail"
        elif valid is not None:
            witness, status = None, "skipped"
        else:
            try:
                witness = run_statement(STATEMENTS[statement_id], ctx)
                status = "pass" if witness is None else "fail"
            except GuardExceededError as e:
                logger.warning(f"{statement_id} skipped on {ctx.instance_id}: {e}")
                witness, status = [str(e)], "skipped"
        elapsed = (time.perf_counter() - started) * 1000 if settings.RECORD_TIMINGS else None
        entries.append(ScorecardEntry(
            statement=statement_id,
            instance=ctx.instance_id,
            status=status,
            witness=witness,
            elapsed_ms=elapsed,
        ))
    return entries


def check_instance(ctx: InstanceContext, statement_filter: Optional[Iterable[str]] = None) -> Scorecard:
    """The scorecard of a single instance."""
    return Scorecard(entries=_score(ctx, _selected(statement_filter))).canonical()


def run_suite(
    corpus: Optional[CorpusSpec] = None,
    statement_filter: Optional[Iterable[str]] = None,
    show_progress: bool = True,
) -> Scorecard:
    """
    Run every selected statement on every instance.

    Validation always runs first; when it fails, the remaining cells of that
    instance are recorded as skipped. A guard refusal also skips its cell.

    Args:
        corpus: instances to run (default corpus if omitted)
        statement_filter: statement ids to report (all if omitted)
        show_progress: show a tqdm progress bar

    Returns:
        The scorecard in canonical (instance, statement) order
    """
    corpus = corpus or default_corpus()
    selected = _selected(statement_filter)
    entries: List[ScorecardEntry] = []
    for spec in tqdm(corpus.instances, desc="Checking instances", disable=not show_progress):
        entries.extend(_score(build_instance(spec), selected))

    scorecard = Scorecard(entries=entries).canonical()
    logger.info(f"Scorecard: {len(entries)} cells, {len(scorecard.failures())} failures")
    return scorecard


def demo_staircase(k_max: int) -> StaircaseReport:
    """
    Gate-project the deepest corner of staircase(k) onto the first step's
    interval for k = 1..k_max; the projection is asserted to be constant
    from k = 2 on.
    """
    if k_max < 1:
        raise MalformedInputError(f"k_max must be at least 1, got {k_max}")
    projections: List[str] = []
    for k in range(1, k_max + 1):
        M = staircase(k).algebra
        top, step = M.index("(0,0)"), M.index("(1,-1)")
        deepest = M.n - 1
        projections.append(M.labels[M.med(top, step, deepest)])
        logger.debug(f"staircase({k}): {M.labels[deepest]} projects to {projections[-1]}")

    stabilized_at = k_max
    while stabilized_at > 1 and projections[stabilized_at - 2] == projections[-1]:
        stabilized_at -= 1
    report = StaircaseReport(k_max=k_max, projections=projections, stabilized_at=stabilized_at)
    if not report.ok:
        raise InvariantError("StaircaseStabilization", tuple(projections))
    return report
