"""Command-line front end.

Exit status: 0 on success, 1 when a verification fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional

from . import fsequence as fs
from . import hyperbox, incidence, join, relations, structure
from .poset import cobweb, layer, max_chains

SEQ_DIR_ENV = "COBWEB_SEQ_DIR"
FORMATS = ("text", "json", "csv", "dot")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class CommandConfig:
    seq: str = "natural"
    q: Optional[int] = None
    levels: Optional[int] = None
    format: str = "text"
    cap: int = 1000
    out: Optional[str] = None

    def __post_init__(self):
        if self.cap < 1:
            raise UsageError("--cap must be positive")
        if self.format not in FORMATS:
            raise UsageError(f"--format must be one of {FORMATS}")

    def sequence(self) -> fs.FSequence:
        return resolve_sequence(self.seq, self.q)


def resolve_sequence(spec: str, q: Optional[int] = None) -> fs.FSequence:
    name, _, param = spec.partition(":")
    if name.lower() in ("natural", "n", "fibonacci", "fib", "gaussian", "constant"):
        p = int(param) if param else q
        try:
            return fs.builtin(name, p)
        except ValueError as e:
            raise UsageError(str(e)) from e
    candidates = [Path(spec)]
    seq_dir = os.environ.get(SEQ_DIR_ENV)
    if seq_dir:
        candidates += [Path(seq_dir) / spec, Path(seq_dir) / f"{spec}.json", Path(seq_dir) / f"{spec}.txt"]
    for path in candidates:
        if path.is_file():
            try:
                return fs.load(path)
            except ValueError as e:
                raise UsageError(f"malformed sequence file {path}: {e}") from e
    raise UsageError(f"unknown sequence {spec!r}")


def _levels(args, default: Optional[int] = None) -> int:
    n = getattr(args, "n", None)
    if n is None:
        n = args.levels if args.levels is not None else default
    if n is None:
        raise UsageError("a level count is required (positional n or --levels)")
    return n


def _matrix_out(M, fmt: str) -> str:
    if fmt == "csv":
        return incidence.matrix_to_csv(M)
    if fmt == "json":
        return incidence.matrix_to_json(M) + "\n"
    if fmt == "text":
        w = max(len(str(v)) for v in M.flat) if M.size else 1
        return "\n".join(" ".join(str(v).rjust(w) for v in row) for row in M) + "\n"
    raise UsageError(f"format {fmt!r} not available for matrices")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, default=str) + "\n"


# -- commands: each returns (exit status, output text) ------------------------------------


def cmd_fnomial(args, cfg: CommandConfig):
    F = cfg.sequence()
    v = fs.fnomial(F, args.n, args.k)
    if cfg.format == "json":
        return 0, _dump({"n": args.n, "k": args.k, "seq": str(F), "value": str(v)})
    return 0, f"{v}\n"


def cmd_admissible(args, cfg):
    F = cfg.sequence()
    ok, w = fs.is_admissible(F, _levels(args))
    if cfg.format == "json":
        return 0, _dump({"seq": str(F), "admissible": ok, "witness": w})
    return 0, ("admissible\n" if ok else f"not admissible: first failure at (n, k) = {w}\n")


def cmd_zeta(args, cfg):
    return 0, _matrix_out(incidence.zeta_closure(cobweb(cfg.sequence(), _levels(args))), cfg.format)


def cmd_mobius(args, cfg):
    return 0, _matrix_out(incidence.mobius_oracle(cobweb(cfg.sequence(), _levels(args))), cfg.format)


def cmd_scala(args, cfg):
    return 0, incidence.render_scala(incidence.zeta_closure(cobweb(cfg.sequence(), _levels(args))))


def cmd_whitney(args, cfg):
    F = cfg.sequence()
    n = _levels(args)
    rows = [(r, incidence.whitney_first(F, r), incidence.whitney_second(F, r)) for r in range(n + 1)]
    if cfg.format == "json":
        return 0, _dump([{"rank": r, "first": w, "second": W} for r, w, W in rows])
    if cfg.format == "csv":
        return 0, "rank,first,second\n" + "".join(f"{r},{w},{W}\n" for r, w, W in rows)
    return 0, "rank  w_r  W_r\n" + "".join(f"{r:>4} {w:>4} {W:>4}\n" for r, w, W in rows)


def cmd_charpoly(args, cfg):
    p = incidence.char_poly(cfg.sequence(), _levels(args))
    if cfg.format == "json":
        return 0, _dump({"coefficients": list(p.coeffs), "polynomial": str(p)})
    return 0, f"{p}\n"


def cmd_chains(args, cfg):
    F = cfg.sequence()
    P = layer(cobweb(F, args.n), args.k, args.n)
    chains = list(max_chains(P))
    if cfg.format == "json":
        return 0, _dump({"count": len(chains), "chains": [[list(v) for v in c] for c in chains[: cfg.cap]]})
    lines = [" ".join(str(v) for v in c) for c in chains[: cfg.cap]]
    tail = [f"... ({len(chains) - cfg.cap} more)"] if len(chains) > cfg.cap else []
    return 0, "\n".join([f"{len(chains)} maximal chains"] + lines + tail) + "\n"


def cmd_tile(args, cfg):
    F = cfg.sequence()
    res = hyperbox.tile(F, args.m, args.n)
    status = 0
    if res.found and not hyperbox.verify_tiling(res.box, res.tile_sides, res.tiling):
        status = 1
    if cfg.format == "json":
        return status, _dump(res.to_json())
    head = f"box {list(res.box.extents)}, tile sides {list(res.tile_sides)}\n"
    if not res.found:
        return status, head + f"no tiling (exhausted search, {res.nodes} nodes)\n"
    body = (
        hyperbox.render_tiling(res.box, res.tiling)
        if res.box.dimension == 2
        else "".join(f"{list(t.intervals)}\n" for t in res.tiling)
    )
    return status, head + f"{len(res.tiling)} tiles\n" + body


def cmd_join_demo(args, cfg):
    rep = relations.ternary_example()
    if cfg.format == "json":
        return 0, _dump(
            {
                "derived": rep.derived.to_json()["tuples"],
                "listed": rep.listed.to_json()["tuples"],
                "only_derived": rep.only_derived,
                "only_listed": rep.only_listed,
                "differing_coordinates": sorted(rep.differing_coordinates),
            }
        )
    out = ["T = E1 |x| E2:"]
    out += ["  " + ", ".join(t) for t in rep.derived.sorted()]
    out.append(f"differs from the listed T in {len(rep.only_derived)} tuples:")
    for a, b in zip(rep.only_derived, rep.only_listed):
        out.append(f"  derived {a}  listed {b}")
    out.append(f"differing coordinate(s): {sorted(rep.differing_coordinates)}")
    return 0, "\n".join(out) + "\n"


def cmd_realizer(args, cfg):
    F = cfg.sequence()
    n = _levels(args)
    L1, L2 = structure.cobweb_realizer(F, n)
    ok = structure.verify_realizer(cobweb(F, n), [L1, L2])
    dim = 1 if L1 == L2 else 2
    if cfg.format == "json":
        return (0 if ok else 1), _dump({"L1": [list(v) for v in L1], "L2": [list(v) for v in L2], "verified": ok, "dimension": dim})
    text = f"L1: {' '.join(map(str, L1))}\nL2: {' '.join(map(str, L2))}\nrealizer verified: {ok} (dimension {dim})\n"
    return (0 if ok else 1), text


def cmd_structure(args, cfg):
    P = cobweb(cfg.sequence(), _levels(args))
    rep = structure.structure_report(P, cap=min(cfg.cap, structure.EXTENSION_CAP))
    if cfg.format == "json":
        return 0, _dump(rep.__dict__)
    return 0, "".join(f"{k}: {v}\n" for k, v in rep.__dict__.items())


def cmd_hasse(args, cfg):
    P = cobweb(cfg.sequence(), _levels(args))
    if cfg.format == "json":
        return 0, _dump(P.to_json())
    return 0, P.to_dot()


def run_checks(F: fs.FSequence, n: int) -> list[tuple[str, bool]]:
    """Property suite on the cobweb prefix ``Pi_n`` of ``F``."""
    import numpy as np

    P = cobweb(F, n)
    Z = incidence.zeta_closure(P)
    M = incidence.mobius_oracle(P)
    N = len(P)
    labels = P.vertices()
    checks: list[tuple[str, Callable[[], bool]]] = [
        ("zeta * mobius = I", lambda: np.array_equal(Z.dot(M), incidence.identity(N))),
        ("bracket zeta = closure", lambda: np.array_equal(incidence.zeta_cobweb_matrix(F, n), Z)),
        (
            "closed mobius = oracle",
            lambda: all(
                M[i, j] == incidence.mobius_grid(F, x, y)
                for i, x in enumerate(labels)
                for j, y in enumerate(labels)
                if Z[i, j]
            ),
        ),
        (
            "coding matrix = oracle",
            lambda: np.array_equal(incidence.coding_matrix(F, n).expand(F), M),
        ),
        (
            "whitney = oracle sums",
            lambda: incidence.whitney_first_bruteforce(F, n)
            == [incidence.whitney_first(F, r) for r in range(n + 1)],
        ),
        (
            "chain partition counts",
            lambda: all(hyperbox.verify_theorem1(F, n, k).identity_holds for k in range(n + 1)),
        ),
        ("n-free", lambda: structure.is_n_free(P)[0]),
        ("2-realizer", lambda: structure.verify_realizer(P, list(structure.cobweb_realizer(F, n)))),
        ("identifiable", lambda: relations.is_identifiable(P)),
        (
            "di-biclique chain join = cobweb",
            lambda: n < 2
            or join.join_chain([join.dibiclique(F(k), F(k + 1), k) for k in range(1, n)]) == P,
        ),
    ]
    out = []
    for name, fn in checks:
        try:
            ok = bool(fn())
        except Exception:  # a crash is a failed check
            ok = False
        out.append((name, ok))
    return out


def cmd_check(args, cfg):
    F = cfg.sequence()
    n = _levels(args, default=5)
    results = run_checks(F, n)
    failed = [name for name, ok in results if not ok]
    if cfg.format == "json":
        return (1 if failed else 0), _dump({"seq": str(F), "levels": n, "results": dict(results)})
    lines = [f"{'PASS' if ok else 'FAIL'}  {name}" for name, ok in results]
    lines.append(f"{len(results) - len(failed)}/{len(results)} checks passed for {F}, n={n}")
    return (1 if failed else 0), "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seq", default=argparse.SUPPRESS, help="built-in name (natural, fibonacci, gaussian, constant) or a sequence file")
    common.add_argument("--q", type=int, default=argparse.SUPPRESS, help="parameter of gaussian / constant")
    common.add_argument("--levels", type=int, default=argparse.SUPPRESS)
    common.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS)
    common.add_argument("--cap", type=int, default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS, help="write output to this file")

    parser = argparse.ArgumentParser(prog="cobweb", parents=[common], description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, *positional, optional_n=False):
        p = sub.add_parser(name, parents=[common])
        for arg in positional:
            p.add_argument(arg, type=int)
        if optional_n:
            p.add_argument("n", type=int, nargs="?")
        p.set_defaults(fn=fn)
        return p

    add("fnomial", cmd_fnomial, "n", "k")
    add("admissible", cmd_admissible, optional_n=True)
    add("zeta", cmd_zeta, optional_n=True)
    add("mobius", cmd_mobius, optional_n=True)
    add("scala", cmd_scala, optional_n=True)
    add("whitney", cmd_whitney, optional_n=True)
    add("charpoly", cmd_charpoly, optional_n=True)
    add("chains", cmd_chains, "k", "n")
    add("tile", cmd_tile, "m", "n")
    add("join-demo", cmd_join_demo)
    add("realizer", cmd_realizer, optional_n=True)
    add("structure", cmd_structure, optional_n=True)
    add("hasse", cmd_hasse, optional_n=True)
    add("check", cmd_check, optional_n=True)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    opts = {k: getattr(args, k) for k in ("seq", "q", "levels", "format", "cap", "out") if hasattr(args, k)}
    try:
        cfg = CommandConfig(**opts)
        args.levels = cfg.levels
        status, text = args.fn(args, cfg)
    except (UsageError, ValueError, IndexError) as e:
        print(f"cobweb: error: {e}", file=sys.stderr)
        return 2
    if cfg.out:
        Path(cfg.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
