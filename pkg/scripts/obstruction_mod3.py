"""Block obstruction for reduced witnesses over GL_3(F_3).

Reduces the first N determinant-1 witnesses diag(1, [[1, b], [0, 1]]) mod 3
and searches all of GL_3(F_3) for C with B_i = C B_j C^T.  Prints the
pair matrix ('.' no conjugator, '#' conjugator found) and a summary that
separates pairs with different reduced antitrace squares.
"""

import argparse
import itertools
import sys
import time
from dataclasses import dataclass

from twistconj.automorphisms import DetPower, TrivialCentral
from twistconj.rings import ZZ, PrimeField
from twistconj.twisted import enumerate_group
from twistconj.witnesses import AntitraceSquare, gen_theorem1, invariant_eval, obstruction_exhaustive


@dataclass
class ObstructionConfig:
    count: int = 20
    p: int = 3
    gamma: str = "trivial"


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=ObstructionConfig.count)
    ap.add_argument("--gamma", choices=("trivial", "det"), default=ObstructionConfig.gamma)
    args = ap.parse_args(argv)
    cfg = ObstructionConfig(count=args.count, gamma=args.gamma)
    start = time.perf_counter()
    field_ = PrimeField(cfg.p)
    G = enumerate_group(field_, 3)
    gamma = TrivialCentral() if cfg.gamma == "trivial" else DetPower(1)
    mats = [w.change_ring(field_) for w in gen_theorem1(2, 3, ZZ(1), cfg.count).matrices]
    squares = [invariant_eval(AntitraceSquare(), w) for w in mats]
    grid = [["="] * cfg.count for _ in range(cfg.count)]
    counts = {"differ/none": 0, "differ/found": 0, "equal/none": 0, "equal/found": 0}
    for i, j in itertools.permutations(range(cfg.count), 2):
        res = obstruction_exhaustive(mats[i], mats[j], G, gamma)
        found = res.conjugator is not None
        grid[i][j] = "#" if found else "."
        key = ("equal" if squares[i] == squares[j] else "differ") + ("/found" if found else "/none")
        counts[key] += 1
    print("b mod 3:", " ".join(str(b % cfg.p) for b in range(1, cfg.count + 1)))
    for i, row in enumerate(grid, 1):
        print(f"{i:>3} {''.join(row)}")
    print(f"{len(G)} candidates per pair; " + ", ".join(f"{k}: {v}" for k, v in counts.items()))
    print(f"elapsed {time.perf_counter() - start:.1f}s")
    return 1 if counts["differ/found"] else 0


if __name__ == "__main__":
    sys.exit(main())
