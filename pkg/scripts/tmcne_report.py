#!/usr/bin/env python3
"""Emit the non-equivalence certificates for all supported primes.

Writes one deterministic JSON file per prime into the output directory
(default ``./tmcne_reports``) and prints a one-line verdict each.
"""

import argparse
import sys
from pathlib import Path

from valfield.certificates import verify_tmcne
from valfield.errors import CertificationError


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="tmcne_reports", help="output directory")
    ap.add_argument(
        "--primes", default="3,5,7", help="comma-separated odd primes"
    )
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    worst = 0
    for text in args.primes.split(","):
        p = int(text)
        try:
            cert = verify_tmcne(p)
        except CertificationError as exc:
            print(f"p={p}: rejected ({exc})")
            worst = max(worst, 3)
            continue
        path = out / f"tmcne_p{p}.json"
        path.write_text(cert.to_json() + "\n")
        print(f"p={p}: {cert.verdict} -> {path}")
        if cert.verdict != "pass":
            worst = max(worst, 2)
    return worst


if __name__ == "__main__":
    sys.exit(main())
