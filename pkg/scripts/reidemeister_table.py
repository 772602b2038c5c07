"""Reidemeister numbers of small GL_n / SL_n over prime fields.

Prints a TSV table: group, automorphism, partition count, Burnside count.
"""

import argparse
import random
import sys
from dataclasses import dataclass, field

from twistconj.automorphisms import check_automorphism, parse_word
from twistconj.twisted import burnside_reidemeister, enumerate_group, twisted_classes
from twistconj.rings import PrimeField


@dataclass
class TableConfig:
    groups: list = field(default_factory=lambda: [(2, 2, "GL"), (3, 2, "GL"), (3, 2, "SL"), (5, 2, "SL"), (2, 3, "GL")])
    inner_samples: int = 2
    seed: int = 0


def words_for(G, cfg, rng):
    words = ["", "L", "C[det^1]"]
    for _ in range(cfg.inner_samples):
        d = G.random_element(rng).to_literal()
        words += [f"I[{d}]", f"I[{d}] L"]
    return words


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=TableConfig.seed)
    ap.add_argument("--inner-samples", type=int, default=TableConfig.inner_samples)
    args = ap.parse_args(argv)
    cfg = TableConfig(inner_samples=args.inner_samples, seed=args.seed)
    rng = random.Random(cfg.seed)
    print("group\torder\tautomorphism\tpartition\tburnside")
    for p, n, kind in cfg.groups:
        G = enumerate_group(PrimeField(p), n, kind)
        for text in words_for(G, cfg, rng):
            phi = parse_word(text, G.ring, n)
            if not check_automorphism(phi, G).ok:
                print(f"{G.name}\t{len(G)}\t{text or 'id'}\t-\t-  (not an automorphism)")
                continue
            part = twisted_classes(G, phi, check=False)
            burn = burnside_reidemeister(G, phi, check=False)
            print(f"{G.name}\t{len(G)}\t{text or 'id'}\t{part.count}\t{burn}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
