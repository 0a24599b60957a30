# binsum/libs/sweep.py
# ===========================================================================
# Sweep: run selected checks over the rectangle [0, n_max] x [0, r_max]
#
# ROLE
#   Fan the grid out by rows of n, run every selected check on every cell
#   inside that check's domain, and merge the row results into one
#   SweepReport.
#
# CHECK REGISTRY
#   Each CheckKind registers itself with @register_check(kind, domain).
#   A check receives (n, r, state) and returns a CheckOutcome; it never
#   raises for a mathematical failure. An IdentityViolation escaping a
#   check is caught here and recorded as that check's failure.
#
#   Domains inside the rectangle:
#     theorem, split                    every cell
#     rec-2-3, rec-3-1, guo-zeng,
#     induction-steps                   n >= 1 and r >= 1
#     closed-forms                      n >= 1 and 1 <= r <= 4
#     shapiro                           n >= 1, once per row (r == 0)
#     odd-vanishing                     every cell, exponent 2r+1
#     shift-identities                  every cell, exponents 2r and 2r+1
#
# CORE INVARIANTS
#   • Each worker owns its memo tables; nothing is shared across workers.
#   • Report content other than `elapsed` does not depend on the worker
#     count: rows are merged in n order, failures sorted by (n, r, check).
#   • At most failure_cap (>= 1) failures are kept; failures_total is uncapped,
#     so `failures` is empty exactly when the sweep passed.
#
# CONFIG
#   BINSUM_FAILURE_CAP  default failure cap (100)
#   BINSUM_WORKERS      default worker count (1)
# ===========================================================================

from __future__ import annotations

import multiprocessing
import os
import time
from typing import AbstractSet, Callable, Dict, List, NamedTuple, Optional, Tuple

from binsum.libs.binomial_sums import (MemoTable, catalan_row, closed_form_even, f_direct, f_rec_mixed, f_rec_r,
                                       factor_identity_check, guo_zeng_quotient, odd_sum_zero, shapiro_sum,
                                       sum_general)
from binsum.libs.log import RunLog
from binsum.libs.types import (INFINITY, CheckFailure, CheckKind, IdentityViolation, SumRange, SumSpec, SweepReport,
                               TheoremRecord, Valuation)
from binsum.libs.verifier import (induction_step_1_3, induction_step_1_4, theorem_bound, verify_even_shift,
                                  verify_odd_shift, verify_recurrence_2_3, verify_recurrence_3_1, verify_split,
                                  verify_theorem)

FAILURE_CAP: int = int(os.getenv("BINSUM_FAILURE_CAP", "100"))
DEFAULT_WORKERS: int = int(os.getenv("BINSUM_WORKERS", "1"))


class CheckOutcome(NamedTuple):
    passed: bool
    detail: str = ""
    record: Optional[TheoremRecord] = None


Domain = Callable[[int, int], bool]
CheckFn = Callable[[int, int, "WorkerState"], CheckOutcome]

# Registry: kind → (domain, check)
_REGISTRY: Dict[CheckKind, Tuple[Domain, CheckFn]] = {}


def register_check(kind: CheckKind, domain: Domain):
    """Decorator used by check functions to register themselves."""

    def decorator(fn: CheckFn) -> CheckFn:
        _REGISTRY[kind] = (domain, fn)
        return fn

    return decorator


def registered_checks() -> Tuple[CheckKind, ...]:
    return CheckKind.ordered(_REGISTRY)


def _every_cell(n: int, r: int) -> bool:
    return True


def _positive_cell(n: int, r: int) -> bool:
    return n >= 1 and r >= 1


def _closed_form_cell(n: int, r: int) -> bool:
    return n >= 1 and 1 <= r <= 4


def _row_start(n: int, r: int) -> bool:
    return n >= 1 and r == 0


# =======================================================================
# Worker state
# =======================================================================

class WorkerState:
    """Per-worker memo tables, one per recurrence so the routes stay independent."""

    def __init__(self) -> None:
        self.memo_rec_r = MemoTable()
        self.memo_rec_mixed = MemoTable()

    def run_row(self, task: "RowTask") -> "RowResult":
        n = task.n
        evaluated: Dict[CheckKind, int] = {kind: 0 for kind in task.checks}
        failures: List[CheckFailure] = []
        slacks: List[Valuation] = []

        for r in range(task.r_max + 1):
            cell_slack: Optional[Valuation] = None

            for kind in task.checks:
                domain, check = _REGISTRY[kind]
                if not domain(n, r):
                    continue
                evaluated[kind] += 1

                try:
                    outcome = check(n, r, self)
                except IdentityViolation as exc:
                    outcome = CheckOutcome(False, f"identity violated: {exc}")

                if not outcome.passed:
                    failures.append(CheckFailure(kind, n, r, outcome.detail, outcome.record))

                rec = outcome.record
                if cell_slack is None and rec is not None and rec.slack is not None:
                    cell_slack = rec.slack

            if cell_slack is not None:
                slacks.append(cell_slack)

        return RowResult(n=n, evaluated=evaluated, failures=failures, slacks=slacks)


class RowTask(NamedTuple):
    n: int
    r_max: int
    checks: Tuple[CheckKind, ...]


class RowResult(NamedTuple):
    n: int
    evaluated: Dict[CheckKind, int]
    failures: List[CheckFailure]
    slacks: List[Valuation]


_worker_state: Optional[WorkerState] = None


def _init_worker() -> None:
    global _worker_state
    _worker_state = WorkerState()


def _run_row_in_worker(task: RowTask) -> RowResult:
    assert _worker_state is not None
    return _worker_state.run_row(task)


# =======================================================================
# Checks
# =======================================================================

@register_check(CheckKind.THEOREM, _every_cell)
def _check_theorem(n: int, r: int, state: WorkerState) -> CheckOutcome:
    rec = verify_theorem(n, r)
    return CheckOutcome(rec.passed, "" if rec.passed else f"nu2={rec.nu2} < bound={rec.bound}", rec)


@register_check(CheckKind.SPLIT, _every_cell)
def _check_split(n: int, r: int, state: WorkerState) -> CheckOutcome:
    split = verify_split(n, r)
    rec = verify_theorem(n, r)

    if not split.passed:
        return CheckOutcome(
            False,
            f"nu2={rec.nu2} bounds=({split.bound13}, {split.bound14}) pass=({split.pass13}, {split.pass14})",
            rec,
        )
    if theorem_bound(n, r) != max(split.bound13, split.bound14) or split.passed != rec.passed:
        return CheckOutcome(False, "split bounds disagree with the combined bound", rec)
    return CheckOutcome(True, record=rec)


@register_check(CheckKind.REC_2_3, _positive_cell)
def _check_rec_2_3(n: int, r: int, state: WorkerState) -> CheckOutcome:
    if not verify_recurrence_2_3(n, r):
        return CheckOutcome(False, "two-term recurrence fails on brute-forced values")
    via_rec = f_rec_r(n, r, state.memo_rec_r)
    if via_rec != f_direct(n, r):
        return CheckOutcome(False, f"f_rec_r={via_rec} != f_direct={f_direct(n, r)}")
    return CheckOutcome(True)


@register_check(CheckKind.REC_3_1, _positive_cell)
def _check_rec_3_1(n: int, r: int, state: WorkerState) -> CheckOutcome:
    if not verify_recurrence_3_1(n, r):
        return CheckOutcome(False, "five-term recurrence fails on brute-forced values")
    via_rec = f_rec_mixed(n, r, state.memo_rec_mixed)
    if via_rec != f_direct(n, r):
        return CheckOutcome(False, f"f_rec_mixed={via_rec} != f_direct={f_direct(n, r)}")
    return CheckOutcome(True)


@register_check(CheckKind.CLOSED_FORMS, _closed_form_cell)
def _check_closed_forms(n: int, r: int, state: WorkerState) -> CheckOutcome:
    closed = closed_form_even(n, r)
    summed = sum_general(SumSpec(n, 2 * r, SumRange.POSITIVE))
    if closed != summed:
        return CheckOutcome(False, f"closed form {closed} != sum {summed}")
    return CheckOutcome(True)


@register_check(CheckKind.GUO_ZENG, _positive_cell)
def _check_guo_zeng(n: int, r: int, state: WorkerState) -> CheckOutcome:
    q = guo_zeng_quotient(n, r)
    if q % 2 != 1:
        return CheckOutcome(False, f"quotient {q} is even")
    return CheckOutcome(True)


@register_check(CheckKind.SHAPIRO, _row_start)
def _check_shapiro(n: int, r: int, state: WorkerState) -> CheckOutcome:
    pair = shapiro_sum(n)
    if pair.lhs != pair.rhs:
        return CheckOutcome(False, f"lhs={pair.lhs} != rhs={pair.rhs}")
    row_total = sum(catalan_row(n))
    if n * row_total != pair.rhs:
        return CheckOutcome(False, f"Catalan row sums to {row_total}, expected {pair.rhs}/{n}")
    return CheckOutcome(True)


@register_check(CheckKind.ODD_VANISHING, _every_cell)
def _check_odd_vanishing(n: int, r: int, state: WorkerState) -> CheckOutcome:
    value = odd_sum_zero(n, 2 * r + 1)
    if value != 0:
        return CheckOutcome(False, f"odd-exponent sum is {value}")
    return CheckOutcome(True)


@register_check(CheckKind.SHIFT_IDENTITIES, _every_cell)
def _check_shift_identities(n: int, r: int, state: WorkerState) -> CheckOutcome:
    if not verify_even_shift(n, 2 * r):
        return CheckOutcome(False, f"even shift fails at j={2 * r}")
    if not verify_odd_shift(n, 2 * r + 1):
        return CheckOutcome(False, f"odd shift fails at j={2 * r + 1}")
    if r == 0 and n >= 1:
        bad = [k for k in range(-n, n + 1) if not factor_identity_check(n, k)]
        if bad:
            return CheckOutcome(False, f"(n^2-k^2) factor identity fails at k={bad}")
    return CheckOutcome(True)


@register_check(CheckKind.INDUCTION_STEPS, _positive_cell)
def _check_induction_steps(n: int, r: int, state: WorkerState) -> CheckOutcome:
    if not induction_step_1_3(n, r):
        return CheckOutcome(False, "a two-term recurrence term is below 2n - alpha(n)")
    if not induction_step_1_4(n, r):
        return CheckOutcome(False, "a five-term recurrence term is below 2n - alpha(r)")
    return CheckOutcome(True)


# =======================================================================
# Sweep
# =======================================================================

def sweep(
        n_max: int,
        r_max: int,
        checks: AbstractSet[CheckKind] | Tuple[CheckKind, ...] = (CheckKind.THEOREM,),
        workers: int = DEFAULT_WORKERS,
        failure_cap: int = FAILURE_CAP,
        log: Optional[RunLog] = None,
) -> SweepReport:
    """Run `checks` over [0, n_max] x [0, r_max] and aggregate a SweepReport."""
    if n_max < 0 or r_max < 0:
        raise ValueError(f"n_max and r_max must be >= 0, got {n_max!r}, {r_max!r}")
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers!r}")
    if failure_cap < 1:
        raise ValueError(f"failure_cap must be >= 1, got {failure_cap!r}")

    kinds = CheckKind.ordered(checks)
    if not kinds:
        raise ValueError("no checks selected")

    log = log if log is not None else RunLog(prefix="sweep")
    tasks = [RowTask(n=n, r_max=r_max, checks=kinds) for n in range(n_max + 1)]
    log.log(
        f"sweep [0,{n_max}]x[0,{r_max}] checks={','.join(k.value for k in kinds)} workers={workers}"
    )

    start = time.perf_counter()
    results: List[RowResult] = []

    if workers == 1 or len(tasks) == 1:
        state = WorkerState()
        for task in tasks:
            results.append(state.run_row(task))
            log.dbg(f"row n={task.n} done")
    else:
        with multiprocessing.Pool(processes=min(workers, len(tasks)), initializer=_init_worker) as pool:
            for result in pool.imap_unordered(_run_row_in_worker, tasks):
                results.append(result)
                log.dbg(f"row n={result.n} done")

    elapsed = time.perf_counter() - start
    report = _merge(results, n_max, r_max, kinds, failure_cap, elapsed)

    for failure in report.failures:
        log.log(f"FAIL {failure.check.value} at (n={failure.n}, r={failure.r}): {failure.detail}")
    log.log(
        f"sweep done: {report.total} cells, {report.failures_total} failures, "
        f"min slack {report.min_slack}, {elapsed:.2f}s"
    )
    return report


def _merge(
        results: List[RowResult],
        n_max: int,
        r_max: int,
        kinds: Tuple[CheckKind, ...],
        failure_cap: int,
        elapsed: float,
) -> SweepReport:
    results = sorted(results, key=lambda row: row.n)

    evaluated: Dict[CheckKind, int] = {kind: 0 for kind in kinds}
    failures: List[CheckFailure] = []
    histogram: Dict[int, int] = {}
    min_slack: Valuation = INFINITY

    for row in results:
        for kind, count in row.evaluated.items():
            evaluated[kind] += count
        failures.extend(row.failures)
        for slack in row.slacks:
            min_slack = min(min_slack, slack)
            if not slack.is_infinite:
                histogram[int(slack)] = histogram.get(int(slack), 0) + 1

    failures.sort(key=CheckFailure.sort_key)

    return SweepReport(
        n_range=(0, n_max),
        r_range=(0, r_max),
        total=(n_max + 1) * (r_max + 1),
        checks=kinds,
        evaluated=evaluated,
        failures=failures[:failure_cap],
        failures_total=len(failures),
        failure_cap=failure_cap,
        min_slack=min_slack,
        slack_histogram=dict(sorted(histogram.items())),
        elapsed=elapsed,
    )
