#!/usr/bin/env python3
"""Systoles, graphs, bounds and covers for the bundled example origamis."""

import argparse
from dataclasses import dataclass
from pathlib import Path

from flat_systoles import parse_origami
from flat_systoles.bounds import audit
from flat_systoles.covers import cyclic_cover, find_regular_cut, verify_cover
from flat_systoles.saddle_graph import direction_set, graph_in_direction
from flat_systoles.systole import systole

DATA = Path(__file__).resolve().parent.parent / "data"


@dataclass
class ExamplesConfig:
    names: tuple = ("worked15", "witness30", "l_origami")
    cover_k: int = 2


def show(name: str, cfg: ExamplesConfig) -> None:
    o = parse_origami((DATA / f"{name}.txt").read_text())
    r = systole(o)
    print(f"== {name}: degree {o.degree}, {o.stratum}, genus {o.genus}")
    print(f"   l0 {r.l0}, {r.num_directions} directions, {r.num_edges} edges")
    for v in direction_set(r.l0)[:4]:
        ws = sorted(e.length for e in graph_in_direction(o, v).edges)
        print(f"   direction {v.as_tuple()}: {[str(w) for w in ws]}")
    dirs = r.minimal_directions()
    where = f"loops along {dirs}" if dirs else f"a closed path of {r.systole_path.combinatorial_length} saddle connections"
    print(f"   systole {r.systole}  sr {r.sr}  ({where})")
    b = audit(o, r.sr)
    print(f"   bounds {'ok' if b.ok else 'VIOLATED'}: " + ", ".join(f"{c.name} {c.measured:.4f}<={c.bound:.4f}" for c in b.checks if c.bound))
    cut = find_regular_cut(o)
    cover = cyclic_cover(o, cut, cfg.cover_k)
    rep = verify_cover(o, cover, cfg.cover_k)
    print(f"   {cfg.cover_k}-fold cover ({cut.placement} cut): {rep.cover_stratum}, genus {rep.cover_genus}, "
          f"systole {rep.cover_systole}, {'ok' if rep.ok else 'FAILED'}")


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("names", nargs="*", default=list(ExamplesConfig.names))
    p.add_argument("--k", type=int, default=2)
    a = p.parse_args(argv)
    cfg = ExamplesConfig(tuple(a.names), a.k)
    for name in cfg.names:
        show(name, cfg)


if __name__ == "__main__":
    main()
