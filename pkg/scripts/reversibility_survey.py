"""Greedy and reversible status of every cobweb with at most ``cap`` vertices.

Level sizes range over all compositions of 1..cap, so each cobweb is the one
denominated by the finite sequence of its own level sizes.
"""

from __future__ import annotations

import argparse
import json
from dataclasses import asdict, dataclass

from cobweb import fsequence as fs
from cobweb.poset import cobweb
from cobweb.structure import EXTENSION_CAP, structure_report


@dataclass
class SurveyConfig:
    cap: int = EXTENSION_CAP
    json_out: str | None = None


def compositions(total: int):
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in compositions(total - first):
            yield (first,) + rest


def survey(cfg: SurveyConfig) -> dict:
    rows = []
    for total in range(1, cfg.cap + 1):
        for sizes in compositions(total):
            r = structure_report(cobweb(fs.from_list(sizes), len(sizes)), cap=cfg.cap)
            rows.append({"sizes": sizes, "jump_number": r.jump_number, "greedy": r.greedy,
                         "reversible": r.reversible, "greedy_ext": r.greedy_extensions,
                         "optimal_ext": r.optimal_extensions})
    return {
        "posets": len(rows),
        "greedy": sum(r["greedy"] for r in rows),
        "reversible": sum(r["reversible"] for r in rows),
        "not_reversible": [r["sizes"] for r in rows if not r["reversible"]],
        "rows": rows,
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--cap", type=int, default=SurveyConfig.cap)
    ap.add_argument("--json-out")
    cfg = SurveyConfig(**vars(ap.parse_args()))
    res = survey(cfg)
    print(f"cobwebs with <= {cfg.cap} vertices: {res['posets']}")
    print(f"greedy: {res['greedy']}  reversible: {res['reversible']}")
    if res["not_reversible"]:
        print("not reversible:", ", ".join(str(s) for s in res["not_reversible"]))
    if cfg.json_out:
        with open(cfg.json_out, "w") as fh:
            json.dump({"config": asdict(cfg), **res}, fh, indent=1)


if __name__ == "__main__":
    main()
