# ===========================================================================
# IDENTITY SWEEP HARNESS
# Runs every registered check on the desk-scale rectangle with 4 workers:
# recurrences, closed forms, Guo-Zeng oddness, Shapiro, odd vanishing,
# shift identities and the induction steps, alongside the bound itself.
# ===========================================================================

from binsum.libs.log import RunLog
from binsum.libs.report import OutputFormat, encode_sweep
from binsum.libs.sweep import registered_checks, sweep


def run_identity_sweep() -> None:
    log = RunLog(prefix="sweep", terminal_logging=True, debug_logging=True)

    report = sweep(30, 25, registered_checks(), workers=4, log=log)

    print(encode_sweep(report, OutputFormat.PLAIN), end="")


if __name__ == "__main__":
    run_identity_sweep()
