# tests/conftest.py
# ===========================================================================
# Global pytest fixtures
#
# ROLE
#   • Ensure each test begins with cold caches, so no test passes only
#     because an earlier one warmed f_direct or the binomial rows.
#   • Provide a terminal RunLog with debug lines on, and fresh memo tables
#     for the two recurrences.
#
# INVARIANTS
#   • Never share a MemoTable between the two recurrence routes.
# ===========================================================================

import pytest

from binsum.libs.binomial_sums import MemoTable, binomial_row, f_direct
from binsum.libs.log import RunLog
from binsum.libs.padic import is_prime


# ---------------------------------------------------------------------------
# Cold caches per test
# ---------------------------------------------------------------------------
@pytest.fixture(autouse=True)
def reset_caches():
    f_direct.cache_clear()
    binomial_row.cache_clear()
    is_prime.cache_clear()
    yield


# ---------------------------------------------------------------------------
# Logging
# ---------------------------------------------------------------------------
@pytest.fixture
def log() -> RunLog:
    return RunLog(prefix="test", terminal_logging=True, debug_logging=True)


# ---------------------------------------------------------------------------
# Memo tables
# ---------------------------------------------------------------------------
@pytest.fixture
def memo_rec_r() -> MemoTable:
    return MemoTable()


@pytest.fixture
def memo_rec_mixed() -> MemoTable:
    return MemoTable()
