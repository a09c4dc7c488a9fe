"""Print the acceptance table; exit status 1 if any criterion fails."""
import argparse
import sys

from frobenius_descent.cli import selftest_report

if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    report, ok = selftest_report(ap.parse_args().seed)
    sys.stdout.write(report)
    sys.exit(0 if ok else 1)
