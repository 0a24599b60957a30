# binsum/libs/binomial_sums.py
# ===========================================================================
# binomial_sums: exact evaluation of F(n, r) and its companion sums
#
#   F(n, r) = sum_{k=-n..n} C(2n, n-k) * k**(2r)
#
# ROLE
#   Evaluate F by three independent algorithms and expose the named
#   identities around it (row sums, Catalan triangle, closed forms for
#   r = 1..4, odd-exponent vanishing).
#
# ALGORITHMS
#   f_direct      literal summation over k = -n..n
#   f_rec_r       F(n,r) = n^2 F(n,r-1) - 2n(2n-1) F(n-1,r-1)
#   f_rec_mixed   the five-term recurrence in F(n-1,r), F(n,i), F(n-1,i), i < r
#
#   Both recurrences are filled iteratively into a MemoTable, never by deep
#   recursion. Bases: F(m, 0) = 4**m and F(0, s) = 1 if s == 0 else 0.
#
# CORE INVARIANTS
#   • 0**0 == 1 (Python agrees), so F(n, 0) = 4**n counts the k = 0 term.
#   • Binomials use the multiplicative formula with an exact division at
#     every step. C(n, k) is 0 outside 0 <= k <= n.
#   • Closed forms are evaluated over Fractions; a non-integral result
#     raises IdentityViolation instead of being truncated.
#   • MemoTable values always equal F(n, r). Routes that must stay
#     independent get separate tables.
# ===========================================================================

from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from binsum.libs.types import IdentityViolation, ShapiroPair, SumRange, SumSpec

FValue = Callable[[int, int], int]

# Coefficients (lowest degree first) of P_r in
#   sum_{k=1..n} C(2n, n-k) k**(2r) = 2**(2n-r-1) * n * P_r(n)
CLOSED_FORM_POLYS: Dict[int, Tuple[int, ...]] = {
    1: (1,),
    2: (-1, 3),
    3: (4, -15, 15),
    4: (-34, 147, -210, 105),
}


def _require_nat(name: str, value: int) -> None:
    if value < 0:
        raise ValueError(f"{name} must be >= 0, got {value!r}")


def _require_positive(name: str, value: int) -> None:
    if value < 1:
        raise ValueError(f"{name} must be >= 1, got {value!r}")


# ---------------------------------------------------------------------------
# Binomial coefficients
# ---------------------------------------------------------------------------

def binomial(n: int, k: int) -> int:
    """Exact C(n, k); 0 when k < 0 or k > n."""
    _require_nat("n", n)
    if k < 0 or k > n:
        return 0

    k = min(k, n - k)
    result = 1
    for i in range(1, k + 1):
        result = result * (n - k + i) // i
    return result


@lru_cache(maxsize=512)
def binomial_row(m: int) -> Tuple[int, ...]:
    """Return (C(m,0), ..., C(m,m))."""
    _require_nat("m", m)
    row = [1]
    for k in range(1, m + 1):
        row.append(row[-1] * (m - k + 1) // k)
    return tuple(row)


# ---------------------------------------------------------------------------
# Literal sums
# ---------------------------------------------------------------------------

def sum_general(spec: SumSpec) -> int:
    """sum over the selected k-range of C(2n, n-k) * k**exponent."""
    n = spec.n
    row = binomial_row(2 * n)
    lo = -n if spec.range is SumRange.FULL else 1
    return sum(row[n - k] * k ** spec.exponent for k in range(lo, n + 1))


@lru_cache(maxsize=8192)
def f_direct(n: int, r: int) -> int:
    """F(n, r) by literal summation over k = -n..n."""
    _require_nat("r", r)
    return sum_general(SumSpec(n, 2 * r, SumRange.FULL))


def odd_sum_zero(n: int, j: int) -> int:
    """
    sum_{k=-n..n} C(2n, n-k) k**j for odd j, by literal summation.

    The terms for k and -k cancel, so the result is always 0; the value is
    returned as computed so callers can assert it.
    """
    if j % 2 == 0 or j < 0:
        raise ValueError(f"j must be an odd natural number, got {j!r}")
    return sum_general(SumSpec(n, j, SumRange.FULL))


def shifted_row_sum(n: int, j: int) -> int:
    """sum_{k=-n-1..n} C(2n+1, n-k) * k**j."""
    _require_nat("n", n)
    _require_nat("j", j)
    row = binomial_row(2 * n + 1)
    return sum(row[n - k] * k ** j for k in range(-n - 1, n + 1))


# ---------------------------------------------------------------------------
# Recurrences
# ---------------------------------------------------------------------------

class MemoTable:
    """
    Map (n, r) -> F(n, r) guarded by a single lock.

    Recomputing an entry another worker already stored is harmless since
    values are deterministic; put() keeps the first value written.
    """

    _values: Dict[Tuple[int, int], int]
    _lock: threading.RLock

    def __init__(self) -> None:
        self._values = {}
        self._lock = threading.RLock()

    def get(self, n: int, r: int) -> Optional[int]:
        with self._lock:
            return self._values.get((n, r))

    def require(self, n: int, r: int) -> int:
        with self._lock:
            value = self._values.get((n, r))
        if value is None:
            raise KeyError(f"F({n}, {r}) not in memo table")
        return value

    def put(self, n: int, r: int, value: int) -> int:
        with self._lock:
            return self._values.setdefault((n, r), value)

    def __contains__(self, key: Tuple[int, int]) -> bool:
        with self._lock:
            return key in self._values

    def __len__(self) -> int:
        with self._lock:
            return len(self._values)

    def items(self) -> Iterator[Tuple[Tuple[int, int], int]]:
        with self._lock:
            snapshot = sorted(self._values.items())
        return iter(snapshot)

    def clear(self) -> None:
        with self._lock:
            self._values.clear()


def _base_value(m: int, i: int) -> Optional[int]:
    if i == 0:
        return 4 ** m
    if m == 0:
        return 0
    return None


def lowering_recurrence_terms(n: int, r: int, value: FValue) -> List[int]:
    """
    The two signed terms whose sum is F(n, r), for n, r >= 1:

        n^2 F(n, r-1)   and   -2n(2n-1) F(n-1, r-1)
    """
    _require_positive("n", n)
    _require_positive("r", r)
    return [
        n * n * value(n, r - 1),
        -2 * n * (2 * n - 1) * value(n - 1, r - 1),
    ]


def mixed_recurrence_terms(n: int, r: int, value: FValue) -> List[int]:
    """
    The signed terms whose sum is F(n, r), for n, r >= 1:

        4 F(n-1, r)
        - C(2r, 2i)                  F(n, i)     for i < r
        - 2(2n-1) C(2r, 2i+1)        F(n-1, i)   for i < r
        + n C(2r, 2i+1)              F(n, i)     for i < r
        + 2 C(2r, 2i)                F(n-1, i)   for i < r

    Terms are returned group by group in the order above.
    """
    _require_positive("n", n)
    _require_positive("r", r)

    row = binomial_row(2 * r)
    even = [row[2 * i] for i in range(r)]
    odd = [row[2 * i + 1] for i in range(r)]

    terms = [4 * value(n - 1, r)]
    terms += [-even[i] * value(n, i) for i in range(r)]
    terms += [-2 * (2 * n - 1) * odd[i] * value(n - 1, i) for i in range(r)]
    terms += [n * odd[i] * value(n, i) for i in range(r)]
    terms += [2 * even[i] * value(n - 1, i) for i in range(r)]
    return terms


def f_rec_r(n: int, r: int, memo: Optional[MemoTable] = None) -> int:
    """F(n, r) by descending in r with the two-term recurrence."""
    _require_nat("n", n)
    _require_nat("r", r)
    memo = memo if memo is not None else MemoTable()

    hit = memo.get(n, r)
    if hit is not None:
        return hit

    # F(m, i) needs (m, i-1) and (m-1, i-1): fill column by column in i
    for i in range(r + 1):
        for m in range(n + 1):
            if (m, i) in memo:
                continue
            base = _base_value(m, i)
            if base is not None:
                memo.put(m, i, base)
                continue
            memo.put(m, i, sum(lowering_recurrence_terms(m, i, memo.require)))

    return memo.require(n, r)


def f_rec_mixed(n: int, r: int, memo: Optional[MemoTable] = None) -> int:
    """F(n, r) by the five-term recurrence, filled in (m, i) lexicographic order."""
    _require_nat("n", n)
    _require_nat("r", r)
    memo = memo if memo is not None else MemoTable()

    hit = memo.get(n, r)
    if hit is not None:
        return hit

    for m in range(n + 1):
        for i in range(r + 1):
            if (m, i) in memo:
                continue
            base = _base_value(m, i)
            if base is not None:
                memo.put(m, i, base)
                continue
            memo.put(m, i, sum(mixed_recurrence_terms(m, i, memo.require)))

    return memo.require(n, r)


# ---------------------------------------------------------------------------
# Named identities
# ---------------------------------------------------------------------------

def shapiro_sum(n: int) -> ShapiroPair:
    """
    Catalan triangle row sum: sum_{k=1..n} k C(2n, n-k) against (n/2) C(2n, n).
    """
    _require_positive("n", n)
    lhs = sum_general(SumSpec(n, 1, SumRange.POSITIVE))
    rhs, rem = divmod(n * binomial(2 * n, n), 2)
    if rem:
        raise IdentityViolation(f"n*C(2n,n) is odd for n={n}")
    return ShapiroPair(lhs=lhs, rhs=rhs)


def catalan_row(n: int) -> Tuple[int, ...]:
    """Row n of the Catalan triangle: (k/n) C(2n, n-k) for k = 1..n."""
    _require_positive("n", n)
    row = binomial_row(2 * n)
    entries = []
    for k in range(1, n + 1):
        q, rem = divmod(k * row[n - k], n)
        if rem:
            raise IdentityViolation(f"Catalan triangle entry ({n},{k}) is not an integer")
        entries.append(q)
    return tuple(entries)


def guo_zeng_quotient(n: int, r: int) -> int:
    """
    2 sum_{k=1..n} C(2n, n-k) k**(2r+1) / (n^2 C(2n, n)), divided exactly.
    """
    _require_positive("n", n)
    _require_positive("r", r)

    numerator = 2 * sum_general(SumSpec(n, 2 * r + 1, SumRange.POSITIVE))
    denominator = n * n * binomial(2 * n, n)
    q, rem = divmod(numerator, denominator)
    if rem:
        raise IdentityViolation(f"Guo-Zeng quotient is not an integer for n={n}, r={r}")
    return q


def guo_zeng_is_odd(n: int, r: int) -> bool:
    return guo_zeng_quotient(n, r) % 2 == 1


def closed_form_even(n: int, r: int) -> int:
    """
    Closed form 2**(2n-r-1) * n * P_r(n) of sum_{k=1..n} C(2n, n-k) k**(2r)
    for r in 1..4.
    """
    _require_positive("n", n)
    poly = CLOSED_FORM_POLYS.get(r)
    if poly is None:
        raise ValueError(f"closed forms exist for r in 1..4, got {r!r}")

    p_of_n = sum(c * n ** d for d, c in enumerate(poly))
    # exponent is negative for small n (n=1, r=3 gives 2**-2)
    value = Fraction(2) ** (2 * n - r - 1) * n * p_of_n
    if value.denominator != 1:
        raise IdentityViolation(f"closed form is not integral for n={n}, r={r}: {value}")
    return value.numerator


def factor_identity_check(n: int, k: int) -> bool:
    """(n^2 - k^2) C(2n, n-k) == 2n(2n-1) C(2n-2, n-1-k)."""
    _require_positive("n", n)
    return (n * n - k * k) * binomial(2 * n, n - k) == 2 * n * (2 * n - 1) * binomial(2 * n - 2, n - 1 - k)
