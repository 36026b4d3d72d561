"""
Benchmark harness: time every check suite on seeded generated families and
collect one row per (size, seed, suite) in a pandas frame
"""
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Dict
from typing import List
from typing import Optional
from typing import Sequence

import pandas as pd
import tqdm

from const import BENCH_COLUMNS
from const import DEFAULT_CAPS
from cover_model import grow_family
from errors import CapExceededError
from errors import InputError
from projection import ModelProjection
from suite import run_suite
from suite import suite_names

logger = logging.getLogger(__name__)

SKIPPED = "SKIPPED(cap)"


## pylint: disable=too-many-arguments
def bench_instance(
    suite: str,
    size: int,
    seed: int,
    columns: int,
    max_height: int,
    caps: Dict[str, int],
) -> List[Dict]:
    """
    Rows of one family grown to at least size vertices. A size over the
    vertex cap, or a closure that overshoots it, gives SKIPPED rows
    """
    checks = suite_names(suite)
    base = {"suite": suite, "size": size, "seed": seed}
    try:
        family = grow_family(columns, size, max_height, seed, vertex_cap=caps["vertices"])
    except CapExceededError as exc:
        logger.warning("size %d seed %d skipped: %s", size, seed, exc)
        return [
            dict(base, check=check, vertices=0, cases=0, seconds=0.0, status=SKIPPED)
            for check in checks
        ]

    ps = ModelProjection(family)
    rows = []
    for check in checks:
        start = time.perf_counter()
        try:
            reports = run_suite(ps, check, family, caps)
            cases = sum(report.cases for report in reports)
            status = "PASS" if all(report.passed for report in reports) else "FAIL"
        except CapExceededError as exc:
            logger.warning("%s on size %d seed %d skipped: %s", check, size, seed, exc)
            cases, status = 0, SKIPPED
        rows.append(
            dict(
                base,
                check=check,
                vertices=len(family),
                cases=cases,
                seconds=round(time.perf_counter() - start, 6),
                status=status,
            )
        )
    return rows


def _bench_task(task) -> List[Dict]:
    return bench_instance(*task)


## pylint: disable=too-many-arguments
def run_bench(
    suite: str,
    sizes: Sequence[int],
    seeds: Sequence[int],
    columns: int = 3,
    max_height: int = 2,
    jobs: int = 1,
    caps: Optional[Dict[str, int]] = None,
) -> pd.DataFrame:
    """Timing table with the fixed BENCH_COLUMNS header, rows in (size, seed, suite) order"""
    caps = caps or DEFAULT_CAPS
    if not sizes or any(size < 1 for size in sizes):
        raise InputError(f"bench sizes must be positive, got {list(sizes)}")
    tasks = [
        (suite, size, seed, columns, max_height, caps) for size in sizes for seed in seeds
    ]
    rows = []
    with tqdm.tqdm(total=len(tasks), desc="bench", leave=False) as pbar:
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as executor:
                for result in executor.map(_bench_task, tasks):
                    rows.extend(result)
                    pbar.update(1)
        else:
            for task in tasks:
                rows.extend(_bench_task(task))
                pbar.update(1)
    frame = pd.DataFrame(rows, columns=BENCH_COLUMNS)
    logger.info(
        "bench: %d rows, %d failed, %d skipped",
        len(frame),
        int((frame["status"] == "FAIL").sum()),
        int((frame["status"] == SKIPPED).sum()),
    )
    return frame
