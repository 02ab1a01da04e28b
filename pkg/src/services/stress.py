"""Stress campaigns: generate instances, run a driver, verify every witness, aggregate."""

import csv
import io
import logging
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from src.errors import InvariantViolation, PreconditionError
from src.services.drivers import get_driver, run_driver
from src.services.instances import make_instance
from src.types import Config, InstanceSpec, StressReport

logger = logging.getLogger(__name__)

REJECTED = "REJECTED"
CRASHED = "CRASHED"


@dataclass(frozen=True)
class TrialOutcome:
    trial: int
    tag: str
    verified: bool
    reason: str = ""


def run_trial(driver: str, spec: InstanceSpec, seed: int, trial: int, cfg: Config) -> TrialOutcome:
    """One trial on the instance generated from ``seed ^ trial``."""
    try:
        inst = make_instance(driver, spec, seed ^ trial)
        result, verified = run_driver(driver, inst, cfg)
    except PreconditionError as e:
        return TrialOutcome(trial, REJECTED, True, str(e))
    except InvariantViolation as e:
        logger.warning("trial %s: %s", trial, e)
        return TrialOutcome(trial, "INVARIANT", False, str(e))
    except Exception as e:
        logger.error("trial %s crashed: %s: %s", trial, type(e).__name__, e)
        return TrialOutcome(trial, CRASHED, False, f"{type(e).__name__}: {e}")
    # FAILURE carries no witness
    sound = verified or result.is_failure
    if not sound:
        logger.warning("trial %s: %s witness failed verification", trial, result.tag)
    return TrialOutcome(trial, str(result.tag), sound, result.reason)


def _run_chunk(args: tuple[str, InstanceSpec, int, list[int], Config]) -> list[TrialOutcome]:
    driver, spec, seed, trials, cfg = args
    return [run_trial(driver, spec, seed, t, cfg) for t in trials]


def collect(driver: str, trials: int, seed: int, outcomes: list[TrialOutcome], wall: float) -> StressReport:
    per_tag = Counter(o.tag for o in outcomes)
    reasons = Counter(o.reason for o in outcomes if o.reason and o.tag != "PATTERN_COPY")
    return StressReport(
        driver=driver,
        trials=trials,
        seed=seed,
        per_tag=dict(sorted(per_tag.items())),
        witness_failures=sum(1 for o in outcomes if not o.verified),
        failure_reasons=dict(sorted(reasons.items())),
        wall_seconds=round(wall, 3),
    )


def run_stress(
    driver: str,
    trials: int,
    seed: int,
    spec: InstanceSpec | None = None,
    cfg: Config | None = None,
    jobs: int = 1,
) -> StressReport:
    """Run ``trials`` trials; with ``jobs > 1`` the trials are split into interleaved chunks
    over worker processes. The merged counts do not depend on ``jobs``."""
    get_driver(driver)
    spec = spec or InstanceSpec()
    cfg = cfg or Config()
    start = time.perf_counter()
    if jobs <= 1:
        outcomes = [run_trial(driver, spec, seed, t, cfg) for t in range(trials)]
    else:
        chunks = [(driver, spec, seed, list(range(j, trials, jobs)), cfg) for j in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = [o for chunk in pool.map(_run_chunk, chunks) for o in chunk]
        outcomes.sort(key=lambda o: o.trial)
    report = collect(driver, trials, seed, outcomes, time.perf_counter() - start)
    logger.info("stress %s: %s trials, %s witness failures", driver, trials, report.witness_failures)
    return report


def report_csv(report: StressReport) -> str:
    """One row per result tag."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["driver", "seed", "tag", "count"])
    for tag, count in report.per_tag.items():
        writer.writerow([report.driver, report.seed, tag, count])
    return out.getvalue()
