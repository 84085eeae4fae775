"""Run the tiling solver over the layer boxes of several F-sequences.

Every found tiling is re-checked by the independent verifier; a missing tiling
is reported together with the size of the exhausted search.
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass, field

from cobweb import fsequence as fs
from cobweb.hyperbox import tile, tiling_box, verify_tiling


@dataclass
class TilingSurveyConfig:
    max_n: int = 6
    max_volume: int = 5000
    sequences: list[str] = field(default_factory=lambda: ["natural", "fibonacci", "gaussian:2", "constant:2"])


def parse(spec: str) -> fs.FSequence:
    name, _, p = spec.partition(":")
    if name == "list":
        return fs.from_list([int(v) for v in p.split(",")])
    return fs.builtin(name, int(p) if p else None)


def survey(cfg: TilingSurveyConfig) -> list[dict]:
    rows = []
    for spec in cfg.sequences:
        F = parse(spec)
        for n in range(2, cfg.max_n + 1):
            for m in range(2, n + 1):
                try:
                    B, sides = tiling_box(F, m, n)
                except IndexError:
                    continue
                row = {"seq": spec, "m": m, "n": n, "extents": B.extents, "sides": sides}
                if B.volume > cfg.max_volume:
                    rows.append({**row, "status": "skipped (volume)"})
                    continue
                t0 = time.perf_counter()
                try:
                    r = tile(F, m, n)
                except ValueError as e:
                    rows.append({**row, "status": str(e)})
                    continue
                dt = time.perf_counter() - t0
                if r.found:
                    ok = verify_tiling(B, sides, r.tiling)
                    status = f"{len(r.tiling)} tiles, verified={ok}"
                else:
                    status = "no tiling (search exhausted)"
                rows.append({**row, "status": status, "nodes": r.nodes, "seconds": round(dt, 4)})
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=TilingSurveyConfig.max_n)
    ap.add_argument("--max-volume", type=int, default=TilingSurveyConfig.max_volume)
    ap.add_argument("--seq", action="append", dest="sequences", help="e.g. natural, gaussian:2, list:1,4,6,6")
    args = vars(ap.parse_args())
    if args["sequences"] is None:
        del args["sequences"]
    for row in survey(TilingSurveyConfig(**args)):
        extra = f"  nodes={row['nodes']} {row['seconds']}s" if "nodes" in row else ""
        print(f"{row['seq']:>12} m={row['m']} n={row['n']} box={row['extents']} tile={row['sides']}: {row['status']}{extra}")


if __name__ == "__main__":
    main()
