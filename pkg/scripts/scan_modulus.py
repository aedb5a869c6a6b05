"""Grid |Etilde_N| over a box and report the smallest certified upper bounds.

Writes the same CSV as `eisenzeros scan` and prints the grid points where the
enclosure of |Etilde_N| is smallest, which should sit next to the certified zeros.
"""

import argparse
import contextlib
import csv
import io

from eisenzeros.cli import main as cli_main


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--level", type=int, default=2)
    ap.add_argument("--grid", default="-0.5:0.5:41,0.3:1.2:37")
    ap.add_argument("--m", type=int, default=48)
    ap.add_argument("--output", "-o", default="scan.csv")
    ap.add_argument("--top", type=int, default=5)
    args = ap.parse_args()

    with contextlib.redirect_stdout(io.StringIO()):
        code = cli_main(["scan", "--level", str(args.level), f"--grid={args.grid}",
                         "--m", str(args.m), "-o", args.output])
    if code:
        raise SystemExit(code)
    with open(args.output, encoding="utf-8") as fh:
        rows = [r for r in csv.DictReader(fh) if r["status"] == "OK"]
    rows.sort(key=lambda r: float(r["abs_hi"]))
    print(f"{len(rows)} evaluated points written to {args.output}; smallest |Etilde_{args.level}|:")
    for r in rows[:args.top]:
        print(f"  x={r['x']:>8} y={r['y']:>8}  |Et| in [{float(r['abs_lo']):.3e}, {float(r['abs_hi']):.3e}]")


if __name__ == "__main__":
    main()
