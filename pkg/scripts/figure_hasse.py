"""Write the Hasse diagram of <3,13,17> (or any semigroup) as DOT and print a
degree summary.  Render with: dot -Kneato -n -Tpng out.dot -o out.png"""

import argparse
from collections import Counter
from dataclasses import dataclass

from kunzlattice.poset import covers_of, export_hasse, ideal_poset
from kunzlattice.semigroup import NumericalSemigroup


@dataclass
class FigureConfig:
    semigroup: str = "3,13,17"
    order: str = "preceq"
    out: str = "hasse.dot"


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--semigroup", default=FigureConfig.semigroup)
    ap.add_argument("--order", choices=("preceq", "subseteq"), default=FigureConfig.order)
    ap.add_argument("--out", default=FigureConfig.out)
    cfg = FigureConfig(**vars(ap.parse_args(argv)))

    S = NumericalSemigroup.parse(cfg.semigroup)
    P = ideal_poset(S)
    with open(cfg.out, "w", encoding="utf-8") as fh:
        fh.write(export_hasse(P, order=cfg.order, format="dot"))
    print(f"{S}: {len(P)} ideals, {len(P.covers)} cover edges -> {cfg.out}")
    deg = Counter((len(covers_of(P, i)), sum(1 for e in P.covers if e[1] == i)) for i in range(len(P)))
    for (out_deg, in_deg), n in sorted(deg.items()):
        print(f"  out {out_deg} in {in_deg}: {n}")


if __name__ == "__main__":
    main()
