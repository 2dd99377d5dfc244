"""Replay both elimination cases and write their ledgers and summaries to a directory."""
import argparse
import time
from pathlib import Path

from transurf.proofpipe import run_general_case, run_planar_case


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("out", help="output directory")
    args = p.parse_args(argv)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for case, run in (("general", run_general_case), ("planar", run_planar_case)):
        start = time.perf_counter()
        ledger = run()
        (out / f"{case}_ledger.csv").write_text(ledger.to_csv())
        (out / f"{case}_summary.json").write_text(ledger.to_json())
        bad = ledger.mismatches()
        print(f"{case}: {len(ledger.entries)} entries, {len(bad)} mismatches, proven={ledger.proven}, "
              f"{time.perf_counter() - start:.1f}s")
        for e in bad:
            print(f"  {e.name}: {e.note}")


if __name__ == "__main__":
    main()
