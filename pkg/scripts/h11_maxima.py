#!/usr/bin/env python3
"""Maximal systolic ratios of degree-n origamis in H(1,1).

    python3 scripts/h11_maxima.py                 # n = 4..10, about a minute
    python3 scripts/h11_maxima.py --big --hi 13   # adds the sqrt5 plateau (hours)

Writes a CSV (one row per degree) and prints a comparison with the
reference values.
"""

import argparse
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from flat_systoles.enumeration import max_sr, to_csv
from flat_systoles.origami import Stratum

# (max graph systole, sr) reference values
EXPECTED = {
    4: ("sqrt2", Fraction(1, 2)),
    5: ("sqrt2", Fraction(2, 5)),
    6: ("sqrt2", Fraction(1, 3)),
    7: ("sqrt2", Fraction(2, 7)),
    8: ("2", Fraction(1, 2)),
    9: ("2", Fraction(4, 9)),
    10: ("2", Fraction(2, 5)),
    11: ("sqrt5", Fraction(5, 11)),
    12: ("sqrt5", Fraction(5, 12)),
    13: ("sqrt5", Fraction(5, 13)),
}


@dataclass
class MaximaConfig:
    lo: int = 4
    hi: int = 10
    threads: int = 1
    prune: bool = False
    big: bool = False
    out: Path = Path("results/h11_maxima.csv")

    def degrees(self):
        if self.hi > 10 and not self.big:
            raise SystemExit("degrees above 10 take hours; pass --big")
        return range(self.lo, self.hi + 1)


def parse_args(argv=None) -> MaximaConfig:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--lo", type=int, default=4)
    p.add_argument("--hi", type=int, default=10)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--prune", action="store_true")
    p.add_argument("--big", action="store_true")
    p.add_argument("--out", type=Path, default=Path("results/h11_maxima.csv"))
    return MaximaConfig(**vars(p.parse_args(argv)))


def main(argv=None):
    cfg = parse_args(argv)
    recs = []
    ok = True
    for n in cfg.degrees():
        t0 = time.perf_counter()
        r = max_sr(n, Stratum((1, 1)), threads=cfg.threads, prune=cfg.prune)
        recs.append(r)
        want = EXPECTED.get(n)
        match = want is None or (str(r.max_graph_systole) == want[0] and r.max_sr == want[1])
        ok &= match
        print(
            f"n={n:2d}  sy={str(r.max_graph_systole):6s} sr={str(r.max_sr):5s} "
            f"classes={r.classes:6d} audit={r.row()['audit']} "
            f"{'ok ' if match else 'MISMATCH'} {time.perf_counter() - t0:7.1f}s",
            flush=True,
        )
    cfg.out.parent.mkdir(parents=True, exist_ok=True)
    cfg.out.write_text(to_csv(recs))
    print(f"wrote {cfg.out}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
