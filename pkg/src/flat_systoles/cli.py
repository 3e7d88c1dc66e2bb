"""Command-line interface: ``flat-systoles {systole,graph,enumerate,cover,bounds}``.

Exit status: 0 on success, 1 on input errors, 2 when the systole search had to
leave a candidate unresolved.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from .bounds import area_bound, audit, bg_bound, minimal_stratum_value, short_saddle_bounds
from .covers import cyclic_cover, find_regular_cut, verify_cover
from .errors import FlatSystolesError
from .lengths import ExactLength
from .origami import Origami, Stratum, parse_origami
from .saddle_graph import direction_set, graph_in_direction, trace_graph_in_direction, union_graph
from .sl2 import as_direction
from .systole import improved_l0, systole

EXIT_OK, EXIT_INPUT, EXIT_UNRESOLVED = 0, 1, 2
BIG_DEGREE = 11


@dataclass
class Config:
    command: str
    input: str | None = None
    fmt: str = "json"
    l0: int | None = None
    direction: tuple[int, int] | None = None
    full: bool = False
    degrees: list[int] = field(default_factory=list)
    stratum: Stratum | None = None
    k: int = 2
    threads: int = 1
    emit_candidates: bool = False
    dedup: bool = False
    big: bool = False
    prune: bool = False

    def validate(self) -> None:
        if self.l0 is not None and self.l0 < 1:
            raise ValueError("--l0 must be a positive integer")
        if self.threads < 1:
            raise ValueError("--threads must be positive")
        if self.k < 1:
            raise ValueError("--k must be positive")
        if self.command == "enumerate":
            if not self.degrees or min(self.degrees) < 1:
                raise ValueError("--degree must be positive")
            if max(self.degrees) >= BIG_DEGREE and not self.big:
                raise ValueError(f"degrees >= {BIG_DEGREE} need --big")


def _read_input(spec: str) -> Origami:
    if spec == "-":
        text = sys.stdin.read()
    elif os.path.isfile(spec):
        with open(spec, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = spec
    return parse_origami(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _pair(text: str) -> tuple[int, int]:
    try:
        x, y = (int(t) for t in text.replace(" ", "").split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected x,y, got {text!r}") from None
    return x, y


def _degrees(text: str) -> list[int]:
    text = text.strip()
    for sep in ("..", "-", ":"):
        if sep in text:
            lo, hi = text.split(sep, 1)
            return list(range(int(lo), int(hi) + 1))
    return [int(t) for t in text.split(",")]


def cmd_systole(cfg: Config, out) -> int:
    o = _read_input(cfg.input)
    rep = systole(o, l0=cfg.l0)
    data = {"origami": o.to_json(), **rep.to_json(emit_candidates=cfg.emit_candidates)}
    if cfg.fmt == "text":
        out.write(
            f"stratum {rep.stratum}  genus {rep.genus}  degree {rep.degree}\n"
            f"systole {rep.systole} ({rep.systole.decimal()})  sy^2 {rep.sy_squared}  sr {rep.sr}\n"
            f"l0 {rep.l0}  directions {rep.num_directions}  edges {rep.num_edges}\n"
            f"definitive {rep.definitive}  escalated {rep.escalated}\n"
        )
    else:
        out.write(_dump(data))
    return EXIT_OK if rep.definitive else EXIT_UNRESOLVED


def cmd_graph(cfg: Config, out) -> int:
    o = _read_input(cfg.input)
    if cfg.full:
        l0 = ExactLength.integer(cfg.l0) if cfg.l0 else improved_l0(o)
        g = union_graph(o, direction_set(l0))
    else:
        v = as_direction(cfg.direction or (1, 0))
        g = trace_graph_in_direction(o, v)
        # the SL(2,Z) route must agree; refuse to print a graph the oracle disputes
        if graph_in_direction(o, v).signature_multiset() != g.signature_multiset():  # pragma: no cover
            raise FlatSystolesError("SL(2,Z) graph and traced graph disagree")
    out.write(g.dumps("dot" if cfg.fmt == "dot" else "json"))
    return EXIT_OK


def cmd_enumerate(cfg: Config, out) -> int:
    from .enumeration import max_sr, to_csv

    recs = [max_sr(n, cfg.stratum, threads=cfg.threads, prune=cfg.prune, dedup=cfg.dedup) for n in cfg.degrees]
    for r in recs:
        print(f"n={r.degree}: {r.wall_time:.1f}s", file=sys.stderr)
    if cfg.fmt == "json":
        out.write(_dump([r.row() for r in recs]))
    else:
        out.write(to_csv(recs))
    return EXIT_OK


def cmd_cover(cfg: Config, out) -> int:
    o = _read_input(cfg.input)
    cut = find_regular_cut(o)
    cover = cyclic_cover(o, cut, cfg.k)
    rep = verify_cover(o, cover, cfg.k, with_systoles=bool(o.singularities))
    if cfg.fmt == "text":
        out.write(cover.to_text())
    else:
        out.write(_dump({"cut": cut.to_json(), "cover": cover.to_json(), "verification": rep.to_json()}))
    return EXIT_OK


def cmd_bounds(cfg: Config, out) -> int:
    if cfg.input:
        o = _read_input(cfg.input)
        rep = systole(o)
        out.write(_dump(audit(o, rep.sr).to_json()))
        return EXIT_OK
    k = cfg.stratum
    data = {
        "stratum": str(k),
        "genus": k.genus,
        "area_bound": f"{area_bound(k):.12g}",
        "bg_bound": f"{bg_bound(k):.12g}",
        "short_saddle_bounds": [None if b is None else f"{b:.12g}" for b in short_saddle_bounds(k)],
    }
    if len(k.orders) == 1:
        data["minimal_stratum_value"] = f"{minimal_stratum_value(k.genus):.12g}"
    out.write(_dump(data))
    return EXIT_OK


COMMANDS = {
    "systole": cmd_systole,
    "graph": cmd_graph,
    "enumerate": cmd_enumerate,
    "cover": cmd_cover,
    "bounds": cmd_bounds,
}


class _Parser(argparse.ArgumentParser):
    """Usage errors become exit status 1 (argparse would use 2, our UNRESOLVED code)."""

    def error(self, message):
        raise ValueError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="flat-systoles", description="Systoles of origamis via saddle-connection graphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_input(sp, required=True):
        sp.add_argument("input", nargs=None if required else "?", help="origami file, '-' for stdin, or inline permutations")

    sp = sub.add_parser("systole", help="systole and systolic ratio of one origami")
    with_input(sp)
    sp.add_argument("--format", choices=["json", "text"], default="json")
    sp.add_argument("--l0", type=int)
    sp.add_argument("--emit-candidates", action="store_true")

    sp = sub.add_parser("graph", help="saddle-connection graph")
    with_input(sp)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--direction", type=_pair)
    g.add_argument("--full", action="store_true")
    sp.add_argument("--format", choices=["json", "dot"], default="json")
    sp.add_argument("--l0", type=int)

    sp = sub.add_parser("enumerate", help="maximal systolic ratio over a stratum")
    sp.add_argument("--degree", required=True, type=_degrees, help="n, a list n1,n2 or a range lo..hi")
    sp.add_argument("--stratum", default="1,1", type=Stratum.parse)
    sp.add_argument("--format", choices=["csv", "json"], default="csv")
    sp.add_argument("--threads", type=int)
    sp.add_argument("--dedup", action="store_true", help="count isomorphism classes instead of labelled pairs")
    sp.add_argument("--big", action="store_true", help=f"allow degrees >= {BIG_DEGREE}")
    sp.add_argument("--prune", action="store_true", help="skip origamis whose l0 bound cannot beat the best so far")

    sp = sub.add_parser("cover", help="cyclic cover along a regular closed geodesic")
    with_input(sp)
    sp.add_argument("--k", type=int, default=2)
    sp.add_argument("--format", choices=["json", "text"], default="json")

    sp = sub.add_parser("bounds", help="evaluate or audit the bounds")
    with_input(sp, required=False)
    sp.add_argument("--stratum", type=Stratum.parse)
    return p


def parse_config(argv) -> Config:
    ns = build_parser().parse_args(argv)
    threads = getattr(ns, "threads", None)
    if threads is None:
        env = os.environ.get("FLAT_SYSTOLES_THREADS")
        threads = int(env) if env else 1
    cfg = Config(
        command=ns.command,
        input=getattr(ns, "input", None),
        fmt=getattr(ns, "format", "json"),
        l0=getattr(ns, "l0", None),
        direction=getattr(ns, "direction", None),
        full=getattr(ns, "full", False),
        degrees=getattr(ns, "degree", []) or [],
        stratum=getattr(ns, "stratum", None),
        k=getattr(ns, "k", 2),
        threads=threads,
        emit_candidates=getattr(ns, "emit_candidates", False),
        dedup=getattr(ns, "dedup", False),
        big=getattr(ns, "big", False),
        prune=getattr(ns, "prune", False),
    )
    if cfg.command == "bounds" and cfg.input is None and cfg.stratum is None:
        raise ValueError("bounds needs --stratum or an origami")
    cfg.validate()
    return cfg


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        cfg = parse_config(argv)
        return COMMANDS[cfg.command](cfg, out)
    except (FlatSystolesError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
