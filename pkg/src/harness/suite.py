"""The acceptance battery: one registered check per criterion."""
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Tuple

import structlog

from src.harness.checks import REGISTRY, run_check
from src.harness.models import CheckReport, CriterionEntry, SuiteSummary

logger = structlog.get_logger()

ACCEPTANCE: Tuple[Tuple[int, str], ...] = (
    (1, "jacobi"),
    (2, "c1-identity"),
    (3, "lambda-newton"),
    (4, "garland"),
    (5, "eig-eigenvalue"),
    (6, "loop-irred"),
    (7, "example-2-3"),
    (8, "tensor-irred-condition"),
    (9, "irred-theorem"),
    (10, "surjection-reducibility"),
    (11, "factorization"),
    (12, "gcur-agreement"),
    (13, "fusion-oracle"),
    (14, "determinism"),
)


def run_named(names: List[str], workers: int = 1) -> Dict[str, CheckReport]:
    """
    Run checks, in a thread pool when workers > 1.

    Reports are keyed by check name, so the merge does not depend on completion order.
    """
    if workers <= 1:
        return {name: run_check(name) for name in names}
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = {name: pool.submit(run_check, name) for name in names}
        return {name: futures[name].result() for name in sorted(futures)}


def run_suite(workers: int = 1, criteria: Optional[List[int]] = None) -> SuiteSummary:
    """
    Run the acceptance battery.

    Args:
        workers: Thread-pool size; 1 runs sequentially
        criteria: Restrict to these criterion numbers

    Returns:
        Summary with one entry per criterion, in criterion order
    """
    selected = [(n, name) for n, name in ACCEPTANCE if criteria is None or n in criteria]
    logger.info("suite_started", checks=len(selected), workers=workers)
    reports = run_named([name for _, name in selected], workers)
    summary = SuiteSummary(
        entries=[CriterionEntry(criterion=n, check=name, report=reports[name]) for n, name in selected]
    )
    logger.info("suite_finished", passed=summary.passed, failed=summary.failed)
    return summary


def all_check_names() -> List[str]:
    return sorted(REGISTRY)
