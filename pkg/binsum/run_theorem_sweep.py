# ===========================================================================
# THEOREM SWEEP HARNESS
# Checks nu_2(F(n,r)) >= 2n - min(alpha(n), alpha(r)) on [0,60] x [0,40]
# with a single worker and prints the plain report.
#
# See docs/DEVELOPER_NOTES.md for the check catalogue.
# ===========================================================================

from binsum.libs.log import RunLog
from binsum.libs.report import OutputFormat, encode_sweep
from binsum.libs.sweep import sweep
from binsum.libs.types import CheckKind


def run_theorem_sweep() -> None:
    # log to terminal instead of a log file for IDE debugging
    log = RunLog(prefix="sweep", terminal_logging=True)

    report = sweep(60, 40, (CheckKind.THEOREM,), workers=1, log=log)

    print(encode_sweep(report, OutputFormat.PLAIN), end="")


if __name__ == "__main__":
    run_theorem_sweep()
