# binsum/libs/report.py
# ===========================================================================
# Report codec: TheoremRecord lists and SweepReports as json / csv / plain
#
# FORMATS
#   json   schema-stable. Big integers are decimal strings, never numbers;
#          Infinity is the string "inf".
#   csv    schema-stable. Records use the fixed header
#              n,r,f_nu2,bound,slack,pass
#          a sweep report is written as field,value rows.
#   plain  for people; not schema-stable.
#
# ROLE
#   The codec owns every byte the CLI prints. Each format registers one
#   codec class with @ReportCodec.register(fmt); the class provides
#   _encode_record, _encode_records and _encode_sweep. Only JSON decodes.
#   A single record in JSON is an object; a table is always a list.
#
# CORE INVARIANTS
#   • sweep_from_json_obj(sweep_to_json_obj(r)) == r.
#   • Encoding is deterministic: dict keys are emitted in a fixed order.
# ===========================================================================

from __future__ import annotations

import csv
import io
import json
from enum import StrEnum
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from binsum.libs.types import CheckFailure, CheckKind, SplitRecord, SweepReport, TheoremRecord, Valuation

CSV_HEADER: Tuple[str, ...] = ("n", "r", "f_nu2", "bound", "slack", "pass")


class OutputFormat(StrEnum):
    JSON = "json"
    CSV = "csv"
    PLAIN = "plain"


def _slack_text(slack: Optional[Valuation]) -> str:
    return "-" if slack is None else str(slack)


def _slack_json(slack: Optional[Valuation]) -> int | str | None:
    return None if slack is None else slack.to_json()


# =======================================================================
# JSON object model
# =======================================================================

def record_to_json_obj(rec: TheoremRecord, split: Optional[SplitRecord] = None) -> Dict[str, Any]:
    obj: Dict[str, Any] = {
        "n": rec.n,
        "r": rec.r,
        "f_value": str(rec.f_value),
        "nu2": rec.nu2.to_json(),
        "bound": rec.bound,
        "slack": _slack_json(rec.slack),
        "pass": rec.passed,
    }
    if split is not None:
        obj["split"] = {
            "bound13": split.bound13,
            "bound14": split.bound14,
            "pass13": split.pass13,
            "pass14": split.pass14,
        }
    return obj


def record_from_json_obj(raw: Dict[str, Any]) -> TheoremRecord:
    slack = raw["slack"]
    return TheoremRecord(
        n=int(raw["n"]),
        r=int(raw["r"]),
        f_value=int(raw["f_value"]),
        nu2=Valuation.from_json(raw["nu2"]),
        bound=int(raw["bound"]),
        slack=None if slack is None else Valuation.from_json(slack),
        passed=bool(raw["pass"]),
    )


def failure_to_json_obj(failure: CheckFailure) -> Dict[str, Any]:
    return {
        "check": failure.check.value,
        "n": failure.n,
        "r": failure.r,
        "detail": failure.detail,
        "record": None if failure.record is None else record_to_json_obj(failure.record),
    }


def failure_from_json_obj(raw: Dict[str, Any]) -> CheckFailure:
    rec = raw.get("record")
    return CheckFailure(
        check=CheckKind(raw["check"]),
        n=int(raw["n"]),
        r=int(raw["r"]),
        detail=str(raw["detail"]),
        record=None if rec is None else record_from_json_obj(rec),
    )


def sweep_to_json_obj(report: SweepReport) -> Dict[str, Any]:
    return {
        "n_range": list(report.n_range),
        "r_range": list(report.r_range),
        "total": report.total,
        "checks": [k.value for k in report.checks],
        "evaluated": {k.value: report.evaluated[k] for k in report.checks},
        "failures": [failure_to_json_obj(f) for f in report.failures],
        "failures_total": report.failures_total,
        "failure_cap": report.failure_cap,
        "min_slack": report.min_slack.to_json(),
        "slack_histogram": {str(k): v for k, v in report.slack_histogram.items()},
        "elapsed": report.elapsed,
    }


def sweep_from_json_obj(raw: Dict[str, Any]) -> SweepReport:
    """Rebuild a SweepReport from its JSON object.

    Raises:
        ValueError: If a field is missing or has the wrong shape.
    """
    try:
        checks = tuple(CheckKind(k) for k in raw["checks"])
        n_lo, n_hi = raw["n_range"]
        r_lo, r_hi = raw["r_range"]
        return SweepReport(
            n_range=(int(n_lo), int(n_hi)),
            r_range=(int(r_lo), int(r_hi)),
            total=int(raw["total"]),
            checks=checks,
            evaluated={CheckKind(k): int(v) for k, v in raw["evaluated"].items()},
            failures=[failure_from_json_obj(f) for f in raw["failures"]],
            failures_total=int(raw["failures_total"]),
            failure_cap=int(raw["failure_cap"]),
            min_slack=Valuation.from_json(raw["min_slack"]),
            slack_histogram={int(k): int(v) for k, v in raw["slack_histogram"].items()},
            elapsed=float(raw["elapsed"]),
        )
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed sweep report: {exc!r}") from exc


def decode_sweep(text: str) -> SweepReport:
    raw = json.loads(text)
    if not isinstance(raw, dict):
        raise ValueError("sweep report must be a JSON object")
    return sweep_from_json_obj(raw)


# =======================================================================
# Codec registry
# =======================================================================

class ReportCodec:
    """Dispatch encoding to the codec class registered for a format."""

    # Registry: format → (encode_record, encode_records, encode_sweep)
    _registry: Dict[OutputFormat, Tuple[Callable, Callable, Callable]] = {}

    @classmethod
    def register(cls, fmt: OutputFormat):
        def decorator(codec_cls):
            record = getattr(codec_cls, "_encode_record")
            records = getattr(codec_cls, "_encode_records")
            sweep = getattr(codec_cls, "_encode_sweep")
            cls._registry[fmt] = (record, records, sweep)
            return codec_cls

        return decorator

    @classmethod
    def encode_record(cls, rec: TheoremRecord, fmt: OutputFormat, split: Optional[SplitRecord] = None) -> str:
        enc, _, _ = cls._registry[OutputFormat(fmt)]
        return enc(rec, split)

    @classmethod
    def encode_records(
            cls,
            records: Sequence[TheoremRecord],
            fmt: OutputFormat,
            splits: Optional[Sequence[SplitRecord]] = None,
    ) -> str:
        _, enc, _ = cls._registry[OutputFormat(fmt)]
        return enc(list(records), list(splits) if splits is not None else None)

    @classmethod
    def encode_sweep(cls, report: SweepReport, fmt: OutputFormat) -> str:
        _, _, enc = cls._registry[OutputFormat(fmt)]
        return enc(report)


def encode_record(rec: TheoremRecord, fmt: OutputFormat, split: Optional[SplitRecord] = None) -> str:
    return ReportCodec.encode_record(rec, fmt, split)


def encode_records(
        records: Sequence[TheoremRecord],
        fmt: OutputFormat,
        splits: Optional[Sequence[SplitRecord]] = None,
) -> str:
    return ReportCodec.encode_records(records, fmt, splits)


def encode_sweep(report: SweepReport, fmt: OutputFormat) -> str:
    return ReportCodec.encode_sweep(report, fmt)


# -----------------------------------------------------------------------
# Codec registration
# -----------------------------------------------------------------------

@ReportCodec.register(OutputFormat.JSON)
class _JsonCodec:
    @staticmethod
    def _encode_record(rec: TheoremRecord, split: Optional[SplitRecord]) -> str:
        return json.dumps(record_to_json_obj(rec, split)) + "\n"

    @staticmethod
    def _encode_records(records: List[TheoremRecord], splits: Optional[List[SplitRecord]]) -> str:
        if splits is None:
            objs = [record_to_json_obj(rec) for rec in records]
        else:
            objs = [record_to_json_obj(rec, split) for rec, split in zip(records, splits)]
        return json.dumps(objs) + "\n"

    @staticmethod
    def _encode_sweep(report: SweepReport) -> str:
        return json.dumps(sweep_to_json_obj(report)) + "\n"


@ReportCodec.register(OutputFormat.CSV)
class _CsvCodec:
    @staticmethod
    def _encode_record(rec: TheoremRecord, split: Optional[SplitRecord]) -> str:
        return _CsvCodec._encode_records([rec], None)

    @staticmethod
    def _encode_records(records: List[TheoremRecord], splits: Optional[List[SplitRecord]]) -> str:
        # fixed schema; split bounds are not part of it
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for rec in records:
            writer.writerow([
                rec.n,
                rec.r,
                str(rec.nu2),
                rec.bound,
                _slack_text(rec.slack),
                "true" if rec.passed else "false",
            ])
        return buf.getvalue()

    @staticmethod
    def _encode_sweep(report: SweepReport) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(("field", "value"))
        writer.writerow(("n_range", f"{report.n_range[0]}..{report.n_range[1]}"))
        writer.writerow(("r_range", f"{report.r_range[0]}..{report.r_range[1]}"))
        writer.writerow(("total", report.total))
        writer.writerow(("checks", ",".join(k.value for k in report.checks)))
        for kind in report.checks:
            writer.writerow((f"evaluated.{kind.value}", report.evaluated[kind]))
        writer.writerow(("failures_total", report.failures_total))
        writer.writerow(("failure_cap", report.failure_cap))
        writer.writerow(("min_slack", str(report.min_slack)))
        for slack, count in report.slack_histogram.items():
            writer.writerow((f"slack_histogram.{slack}", count))
        writer.writerow(("elapsed", f"{report.elapsed:.6f}"))
        return buf.getvalue()


@ReportCodec.register(OutputFormat.PLAIN)
class _PlainCodec:
    @staticmethod
    def _encode_record(rec: TheoremRecord, split: Optional[SplitRecord]) -> str:
        return _PlainCodec._encode_records([rec], None if split is None else [split])

    @staticmethod
    def _encode_records(records: List[TheoremRecord], splits: Optional[List[SplitRecord]]) -> str:
        lines = []
        for i, rec in enumerate(records):
            line = (
                f"n={rec.n} r={rec.r} F={rec.f_value} nu2={rec.nu2} bound={rec.bound} "
                f"slack={_slack_text(rec.slack)} {'PASS' if rec.passed else 'FAIL'}"
            )
            if splits is not None:
                s = splits[i]
                line += (
                    f" | 2n-alpha(n)={s.bound13} {'ok' if s.pass13 else 'FAIL'}"
                    f" 2n-alpha(r)={s.bound14} {'ok' if s.pass14 else 'FAIL'}"
                )
            lines.append(line)
        return "\n".join(lines) + "\n"

    @staticmethod
    def _encode_sweep(report: SweepReport) -> str:
        lines = [
            f"grid        n in [{report.n_range[0]}, {report.n_range[1]}], "
            f"r in [{report.r_range[0]}, {report.r_range[1]}] ({report.total} cells)",
            f"checks      {', '.join(f'{k.value}={report.evaluated[k]}' for k in report.checks)}",
            f"failures    {report.failures_total}"
            + (f" (showing {len(report.failures)})" if report.failures_total > len(report.failures) else ""),
            f"min slack   {report.min_slack}",
        ]
        if report.slack_histogram:
            hist = ", ".join(f"{k}:{v}" for k, v in report.slack_histogram.items())
            lines.append(f"slack hist  {hist}")
        lines.append(f"elapsed     {report.elapsed:.2f}s")
        for f in report.failures:
            lines.append(f"  FAIL {f.check.value} (n={f.n}, r={f.r}): {f.detail}")
        lines.append("PASS" if report.passed else "FAIL")
        return "\n".join(lines) + "\n"
