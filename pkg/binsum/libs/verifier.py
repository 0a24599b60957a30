# binsum/libs/verifier.py
# ===========================================================================
# verifier: instance checks of the 2-adic divisibility bound
#
#   nu_2(F(n, r)) >= 2n - min(alpha(n), alpha(r))
#
# and of the two halves it splits into:
#
#   (a) nu_2(F(n, r)) >= 2n - alpha(n)
#   (b) nu_2(F(n, r)) >= 2n - alpha(r)
#
# ROLE
#   Turn one (n, r) into a record or a boolean. Every F here comes from
#   f_direct so each check is independent of the recurrences it confirms.
#   A failed bound is data (passed=False), never an exception.
#
# CORE INVARIANTS
#   • theorem_bound(n, r) == max of the two split bounds.
#   • verify_theorem(n, r).passed == verify_split(n, r).passed.
#   • The induction-step checks test the per-term valuations that the
#     inductive arguments rely on, not just the final inequality.
# ===========================================================================

from __future__ import annotations

from typing import List, Tuple

from binsum.libs.binomial_sums import (f_direct, lowering_recurrence_terms, mixed_recurrence_terms,
                                       shifted_row_sum)
from binsum.libs.padic import alpha, nu_int
from binsum.libs.types import SplitRecord, TheoremRecord


def _require_positive(n: int, r: int) -> None:
    if n < 1 or r < 1:
        raise ValueError(f"n and r must be >= 1, got n={n!r}, r={r!r}")


# ---------------------------------------------------------------------------
# Bounds
# ---------------------------------------------------------------------------

def split_bounds(n: int, r: int) -> Tuple[int, int]:
    """(2n - alpha(n), 2n - alpha(r))."""
    return 2 * n - alpha(n), 2 * n - alpha(r)


def theorem_bound(n: int, r: int) -> int:
    """2n - min(alpha(n), alpha(r)); alpha(0) = 0 so the bound at n = 0 is 0."""
    return 2 * n - min(alpha(n), alpha(r))


# ---------------------------------------------------------------------------
# Theorem records
# ---------------------------------------------------------------------------

def verify_theorem(n: int, r: int) -> TheoremRecord:
    f_value = f_direct(n, r)
    return TheoremRecord.build(n=n, r=r, f_value=f_value, nu2=nu_int(f_value, 2), bound=theorem_bound(n, r))


def verify_split(n: int, r: int) -> SplitRecord:
    nu2 = nu_int(f_direct(n, r), 2)
    bound13, bound14 = split_bounds(n, r)
    return SplitRecord(
        n=n,
        r=r,
        bound13=bound13,
        bound14=bound14,
        pass13=nu2 >= bound13,
        pass14=nu2 >= bound14,
    )


# ---------------------------------------------------------------------------
# Recurrences, every F brute-forced
# ---------------------------------------------------------------------------

def verify_recurrence_2_3(n: int, r: int) -> bool:
    """F(n,r) == n^2 F(n,r-1) - 2n(2n-1) F(n-1,r-1)."""
    _require_positive(n, r)
    return f_direct(n, r) == sum(lowering_recurrence_terms(n, r, f_direct))


def verify_recurrence_3_1(n: int, r: int) -> bool:
    """F(n,r) equals the five-term right side with every F from f_direct."""
    _require_positive(n, r)
    return f_direct(n, r) == sum(mixed_recurrence_terms(n, r, f_direct))


# ---------------------------------------------------------------------------
# Odd-row shift identities
# ---------------------------------------------------------------------------

def verify_even_shift(n: int, j: int) -> bool:
    """2 * sum_{k=-n-1..n} C(2n+1, n-k) k**j == F(n+1, j/2) for even j."""
    if j < 0 or j % 2:
        raise ValueError(f"j must be an even natural number, got {j!r}")
    return 2 * shifted_row_sum(n, j) == f_direct(n + 1, j // 2)


def verify_odd_shift(n: int, j: int) -> bool:
    """
    2 * sum_{k=-n-1..n} C(2n+1, n-k) k**j
        == 2(2n+1) F(n, (j-1)/2) - (n+1) F(n+1, (j-1)/2)     for odd j.

    Both sides are doubled so the (n+1)/2 factor stays integral.
    """
    if j < 0 or j % 2 == 0:
        raise ValueError(f"j must be an odd natural number, got {j!r}")
    half = (j - 1) // 2
    rhs = 2 * (2 * n + 1) * f_direct(n, half) - (n + 1) * f_direct(n + 1, half)
    return 2 * shifted_row_sum(n, j) == rhs


# ---------------------------------------------------------------------------
# Induction steps
# ---------------------------------------------------------------------------

def _terms_meet(terms: List[int], bound: int) -> bool:
    return all(nu_int(term, 2) >= bound for term in terms)


def induction_step_1_3(n: int, r: int) -> bool:
    """Both terms of the two-term recurrence have nu_2 >= 2n - alpha(n)."""
    _require_positive(n, r)
    return _terms_meet(lowering_recurrence_terms(n, r, f_direct), 2 * n - alpha(n))


def induction_step_1_4(n: int, r: int) -> bool:
    """Every term of the five-term recurrence has nu_2 >= 2n - alpha(r)."""
    _require_positive(n, r)
    return _terms_meet(mixed_recurrence_terms(n, r, f_direct), 2 * n - alpha(r))
