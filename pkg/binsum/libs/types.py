# binsum/libs/types.py
# ===========================================================================
# Shared domain types for the binomial-sum toolkit
#
# ROLE
#   Hold every value object that crosses a module boundary: valuations,
#   sum parameters, verification records and sweep reports. Computation
#   lives elsewhere; these types only carry data and enforce their own
#   invariants.
#
# CORE INVARIANTS
#   • Exact integers are plain Python ints end to end. Nothing here is a
#     float except SweepReport.elapsed.
#   • Valuation is either a natural number or Infinity. Infinity is its own
#     variant, never a sentinel integer, and compares >= every finite value.
#   • TheoremRecord is built through TheoremRecord.build() so that
#     pass <=> nu2 >= bound and slack = nu2 - bound hold by construction.
#   • CheckKind is a closed enumeration; unknown names are rejected at parse
#     time with ValueError.
# ===========================================================================

from __future__ import annotations

from dataclasses import dataclass, field
from enum import StrEnum
from functools import total_ordering
from typing import Any, Dict, Iterable, List, NamedTuple, Optional, Tuple


class IdentityViolation(ArithmeticError):
    """Raised when an exact identity that must hold turns out false."""
    pass


# ---------------------------------------------------------------------------
# Valuation
# ---------------------------------------------------------------------------

@total_ordering
@dataclass(frozen=True, slots=True, eq=False)
class Valuation:
    """
    Result of a p-adic valuation: a natural number, or Infinity for zero.

    `value` is None exactly for the Infinity variant. Valuations compare
    against each other and against plain ints, so `nu >= bound` reads the
    way it is written in the divisibility statements.
    """

    value: Optional[int] = None

    def __post_init__(self) -> None:
        if self.value is not None and self.value < 0:
            raise ValueError(f"Valuation must be a natural number, got {self.value!r}")

    @classmethod
    def infinity(cls) -> "Valuation":
        return INFINITY

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def _key(self) -> Tuple[int, int]:
        return (1, 0) if self.value is None else (0, self.value)

    @staticmethod
    def _coerce(other: Any) -> Optional["Valuation"]:
        if isinstance(other, Valuation):
            return other
        if isinstance(other, int) and not isinstance(other, bool) and other >= 0:
            return Valuation(other)
        return None

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int) and not isinstance(other, bool) and other < 0:
            return False
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self._key() == rhs._key()

    def __lt__(self, other: Any) -> bool:
        if isinstance(other, int) and not isinstance(other, bool) and other < 0:
            return False
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self._key() < rhs._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __int__(self) -> int:
        if self.value is None:
            raise OverflowError("Infinite valuation has no integer value")
        return self.value

    def minus(self, bound: int) -> "Valuation":
        """
        Slack of this valuation over a bound it meets.

        Infinity minus anything stays Infinity. A finite value below the
        bound has no natural-number slack and raises ValueError; callers
        check `>=` first.
        """
        if self.value is None:
            return INFINITY
        if self.value < bound:
            raise ValueError(f"Valuation {self.value} is below bound {bound}")
        return Valuation(self.value - bound)

    def to_json(self) -> int | str:
        return "inf" if self.value is None else self.value

    @classmethod
    def from_json(cls, raw: int | str) -> "Valuation":
        if raw == "inf":
            return INFINITY
        if isinstance(raw, bool) or not isinstance(raw, int):
            raise ValueError(f"Bad valuation on the wire: {raw!r}")
        return cls(raw)

    def __str__(self) -> str:
        return "inf" if self.value is None else str(self.value)

    def __repr__(self) -> str:
        return "Valuation(inf)" if self.value is None else f"Valuation({self.value})"


INFINITY = Valuation(None)


# ---------------------------------------------------------------------------
# Generalized sum parameters
# ---------------------------------------------------------------------------

class SumRange(StrEnum):
    FULL = "full"  # k = -n .. n
    POSITIVE = "positive"  # k = 1 .. n


@dataclass(frozen=True, slots=True)
class SumSpec:
    """Parameters of sum_k C(2n, n-k) * k**exponent over a k-range."""

    n: int
    exponent: int
    range: SumRange = SumRange.FULL

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"n must be >= 0, got {self.n!r}")
        if self.exponent < 0:
            raise ValueError(f"exponent must be >= 0, got {self.exponent!r}")


class ShapiroPair(NamedTuple):
    lhs: int
    rhs: int


# ---------------------------------------------------------------------------
# Verification records
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class TheoremRecord:
    """
    One (n, r) instance of the 2-adic divisibility bound.

    `slack` is nu2 - bound when the bound is met, Infinity when F is zero,
    and None when the bound fails (there is no natural-number slack then).
    """

    n: int
    r: int
    f_value: int
    nu2: Valuation
    bound: int
    slack: Optional[Valuation]
    passed: bool

    @classmethod
    def build(cls, n: int, r: int, f_value: int, nu2: Valuation, bound: int) -> "TheoremRecord":
        passed = nu2 >= bound
        slack = nu2.minus(bound) if passed else None
        return cls(n=n, r=r, f_value=f_value, nu2=nu2, bound=bound, slack=slack, passed=passed)

    def consistent(self) -> bool:
        """True when the record satisfies its own invariants."""
        if self.passed != (self.nu2 >= self.bound):
            return False
        if not self.passed:
            return self.slack is None
        return self.slack == self.nu2.minus(self.bound)


class SplitRecord(NamedTuple):
    """Both halves of the divisibility bound checked separately."""
    n: int
    r: int
    bound13: int  # 2n - alpha(n)
    bound14: int  # 2n - alpha(r)
    pass13: bool
    pass14: bool

    @property
    def passed(self) -> bool:
        return self.pass13 and self.pass14


# ---------------------------------------------------------------------------
# Sweep model
# ---------------------------------------------------------------------------

class CheckKind(StrEnum):
    THEOREM = "theorem"
    SPLIT = "split"
    REC_2_3 = "rec-2-3"
    REC_3_1 = "rec-3-1"
    CLOSED_FORMS = "closed-forms"
    GUO_ZENG = "guo-zeng"
    SHAPIRO = "shapiro"
    ODD_VANISHING = "odd-vanishing"
    SHIFT_IDENTITIES = "shift-identities"
    INDUCTION_STEPS = "induction-steps"

    @classmethod
    def parse_list(cls, text: str) -> Tuple["CheckKind", ...]:
        """
        Parse a comma-separated list of check names.

        "all" selects every kind. Duplicates collapse; the result is in
        declaration order so equal selections compare equal.
        """
        names = [part.strip() for part in text.split(",") if part.strip()]
        if not names:
            raise ValueError("no checks selected")

        if "all" in names:
            return tuple(cls)

        selected = set()
        for name in names:
            try:
                selected.add(cls(name))
            except ValueError:
                known = ", ".join(k.value for k in cls)
                raise ValueError(f"unknown check {name!r} (known: {known}, all)") from None
        return cls.ordered(selected)

    @classmethod
    def ordered(cls, kinds: Iterable["CheckKind"]) -> Tuple["CheckKind", ...]:
        chosen = set(kinds)
        return tuple(k for k in cls if k in chosen)


@dataclass(frozen=True, slots=True)
class CheckFailure:
    """One failed check at one grid cell."""

    check: CheckKind
    n: int
    r: int
    detail: str
    record: Optional[TheoremRecord] = None

    def sort_key(self) -> Tuple[int, int, int]:
        return (self.n, self.r, list(CheckKind).index(self.check))


@dataclass(slots=True)
class SweepReport:
    """
    Aggregate over the rectangle [n_range] x [r_range].

    `total` counts grid cells. `evaluated` counts, per check, the cells that
    fall inside that check's domain. `failures` holds at most `failure_cap`
    entries sorted by (n, r, check); `failures_total` is the uncapped count.
    Slack statistics come from the theorem/split records and leave out
    Infinity slack (zero F-values).
    """

    n_range: Tuple[int, int]
    r_range: Tuple[int, int]
    total: int
    checks: Tuple[CheckKind, ...]
    evaluated: Dict[CheckKind, int]
    failures: List[CheckFailure]
    failures_total: int
    failure_cap: int
    min_slack: Valuation
    slack_histogram: Dict[int, int]
    elapsed: float = field(default=0.0, compare=False)

    @property
    def passed(self) -> bool:
        return self.failures_total == 0
