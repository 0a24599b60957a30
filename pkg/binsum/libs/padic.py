# binsum/libs/padic.py
# ===========================================================================
# padic: digit sums and p-adic valuations
#
# ROLE
#   Compute base-p digit sums and the p-adic valuations of integers,
#   factorials and binomial coefficients exactly. Every valuation that has
#   a closed form is computed by two routes and the routes must agree.
#
# ROUTES
#   nu_p(n!)      floor sum  sum_i floor(n / p**i)
#                 digit form (n - alpha_p(n)) / (p - 1)
#   nu_p(C(s,t))  factorial differences  nu_p(s!) - nu_p(t!) - nu_p((s-t)!)
#                 digit form (alpha_p(t) + alpha_p(s-t) - alpha_p(s)) / (p - 1)
#                 carries    number of carries adding t and s-t in base p
#
# CORE INVARIANTS
#   • Pure functions of their arguments; safe from any number of workers.
#   • alpha_p(0) = 0 (empty expansion).
#   • nu_int(0, p) is Infinity; the sign of x is ignored.
#   • p is checked for primality by trial division. Only small primes are
#     ever used, so nothing faster is needed.
#   • Disagreeing routes raise IdentityViolation; bad arguments raise
#     ValueError.
# ===========================================================================

from __future__ import annotations

from functools import lru_cache

from binsum.libs.types import INFINITY, IdentityViolation, Valuation


# ---------------------------------------------------------------------------
# Argument checks
# ---------------------------------------------------------------------------

@lru_cache(maxsize=256)
def is_prime(p: int) -> bool:
    """Trial division primality test for small p."""
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"p must be a prime >= 2, got {p!r}")


def _require_nat(name: str, value: int) -> None:
    if value < 0:
        raise ValueError(f"{name} must be >= 0, got {value!r}")


# ---------------------------------------------------------------------------
# Digit sums
# ---------------------------------------------------------------------------

def digit_sum(n: int, p: int) -> int:
    """
    Sum of the base-p digits of n.

    digit_sum(n, 2) is the number of 1-bits of n.
    """
    if p < 2:
        raise ValueError(f"base p must be >= 2, got {p!r}")
    _require_nat("n", n)

    if p == 2:
        return n.bit_count()

    total = 0
    while n:
        n, d = divmod(n, p)
        total += d
    return total


def alpha(n: int) -> int:
    """Number of 1s in the binary expansion of n."""
    return digit_sum(n, 2)


# ---------------------------------------------------------------------------
# Valuations
# ---------------------------------------------------------------------------

def nu_int(x: int, p: int) -> Valuation:
    """Exact multiplicity of p in x; Infinity for x == 0."""
    _require_prime(p)
    if x == 0:
        return INFINITY

    x = abs(x)
    if p == 2:
        # lowest set bit
        return Valuation((x & -x).bit_length() - 1)

    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return Valuation(v)


def _legendre_floor_sum(n: int, p: int) -> int:
    total = 0
    q = p
    while q <= n:
        total += n // q
        q *= p
    return total


def _legendre_digit_form(n: int, p: int) -> int:
    q, rem = divmod(n - digit_sum(n, p), p - 1)
    if rem:
        raise IdentityViolation(f"(n - alpha_p(n)) not divisible by p-1 for n={n}, p={p}")
    return q


def nu_factorial(n: int, p: int) -> int:
    """
    nu_p(n!) by Legendre's floor sum, cross-checked against the digit-sum form.
    """
    _require_prime(p)
    _require_nat("n", n)

    floor_sum = _legendre_floor_sum(n, p)
    digit_form = _legendre_digit_form(n, p)
    if floor_sum != digit_form:
        raise IdentityViolation(
            f"Legendre routes disagree for n={n}, p={p}: floor sum {floor_sum}, digit form {digit_form}"
        )
    return floor_sum


def legendre_factorial_2(n: int) -> int:
    """nu_2(n!) = n - alpha(n)."""
    _require_nat("n", n)
    return n - alpha(n)


def nu_binomial(s: int, t: int, p: int) -> int:
    """
    nu_p(C(s, t)) from factorial valuations, cross-checked against the
    digit-sum form (alpha_p(t) + alpha_p(s-t) - alpha_p(s)) / (p - 1).
    """
    _require_nat("t", t)
    if t > s:
        raise ValueError(f"t must be <= s, got s={s!r}, t={t!r}")
    _require_prime(p)

    via_factorials = nu_factorial(s, p) - nu_factorial(t, p) - nu_factorial(s - t, p)

    via_digits, rem = divmod(digit_sum(t, p) + digit_sum(s - t, p) - digit_sum(s, p), p - 1)
    if rem or via_digits != via_factorials:
        raise IdentityViolation(
            f"nu_{p}(C({s},{t})) routes disagree: factorials {via_factorials}, digit sums {via_digits}"
        )
    return via_factorials


def nu_binomial_kummer(s: int, t: int, p: int) -> int:
    """nu_p(C(s, t)) as the number of carries when adding t and s-t in base p."""
    _require_nat("t", t)
    if t > s:
        raise ValueError(f"t must be <= s, got s={s!r}, t={t!r}")
    _require_prime(p)

    a, b = t, s - t
    carry = 0
    carries = 0
    while a or b or carry:
        a, da = divmod(a, p)
        b, db = divmod(b, p)
        carry = 1 if da + db + carry >= p else 0
        carries += carry
    return carries


# ---------------------------------------------------------------------------
# Bit identities (exposed as testable units)
# ---------------------------------------------------------------------------

def lemma_2_1_i_check(n: int) -> bool:
    """True iff nu_2(n) - 1 == alpha(n-1) - alpha(n)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n!r}")
    return int(nu_int(n, 2)) - 1 == alpha(n - 1) - alpha(n)


def lemma_2_1_ii_check(s: int, t: int) -> bool:
    """
    True iff nu_2(C(s,t)) equals alpha(t) - alpha(s) + alpha(s-t) and is at
    least alpha(t) - alpha(s) + 1.
    """
    if not 0 <= t < s:
        raise ValueError(f"need s > t >= 0, got s={s!r}, t={t!r}")

    nu = nu_binomial(s, t, 2)
    exact = alpha(t) - alpha(s) + alpha(s - t)
    return nu == exact and nu >= alpha(t) - alpha(s) + 1
