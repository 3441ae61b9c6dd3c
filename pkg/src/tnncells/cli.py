"""Command-line front end: build the cell poset, run the verification
battery, and export the box-case bijection tables.

Exit codes: 0 when everything requested succeeded, 1 when a
mathematical check failed (the counterexample lands in the JSON
report), 2 for usage or configuration errors, 3 when a resource bound
was hit.  All JSON output is written with sorted keys, so identical
configurations produce byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import bruhat_el
from . import grassmannian as gr
from . import qj as qj_mod
from .coxeter import (DEFAULT_ORDER_BOUND, CoxeterSystem, MalformedMatrixError,
                      NonFiniteTypeError, coxeter_matrix)
from .poset_topology import (shelling_from_el, sphere_euler_characteristic,
                             verify_el_labeling, verify_shelling)
from .reflection_order import (NotReducedForW0Error, order_from_reduced_word,
                               order_with_wj_last)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class ConfigError(Exception):
    """Bad flag combination or unusable input file."""


# --------------------------------------------------------------- plumbing


def _parse_j(text, rank) -> tuple:
    """Comma separated 1-based generator labels; empty string means J = {}."""
    text = (text or "").strip()
    if not text:
        return ()
    out = []
    for part in text.split(","):
        try:
            i = int(part)
        except ValueError:
            raise ConfigError(f"--j expects integers, got {part.strip()!r}") from None
        if not 1 <= i <= rank:
            raise ConfigError(f"generator label {i} outside 1..{rank}")
        out.append(i - 1)
    if len(set(out)) != len(out):
        raise ConfigError("--j labels must be distinct")
    return tuple(sorted(out))


def _load_system(args) -> CoxeterSystem:
    if args.matrix and args.type:
        raise ConfigError("give --type or --matrix, not both")
    if args.matrix:
        try:
            with open(args.matrix) as fh:
                matrix = json.load(fh)
        except OSError as e:
            raise ConfigError(f"cannot read --matrix file: {e}") from None
        except ValueError as e:
            raise ConfigError(f"--matrix file is not JSON: {e}") from None
    elif args.type:
        matrix = coxeter_matrix(args.type)
    else:
        raise ConfigError("need --type NAME or --matrix FILE")
    bound = args.bound if args.bound else DEFAULT_ORDER_BOUND
    return CoxeterSystem(matrix, order_bound=bound)


def _load_order(args, system, J):
    if args.order_word:
        try:
            with open(args.order_word) as fh:
                parts = fh.read().replace(",", " ").split()
            word = [int(p) - 1 for p in parts]
        except OSError as e:
            raise ConfigError(f"cannot read --order-word file: {e}") from None
        except ValueError:
            raise ConfigError("--order-word file must hold 1-based generator labels") from None
        if any(not 0 <= i < system.rank for i in word):
            raise ConfigError(f"--order-word labels must lie in 1..{system.rank}")
        return order_from_reduced_word(system, word)
    return order_with_wj_last(system, J)


def _json_text(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True, default=str) + "\n"


def _write(out_dir, name, text) -> str:
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, name)
    with open(path, "w") as fh:
        fh.write(text)
    return path


def _describe(args, system, J) -> dict:
    return {
        "type": args.type or f"matrix:{args.matrix}",
        "rank": system.rank,
        "group_order": system.order,
        "j": [i + 1 for i in J],
    }


# ------------------------------------------------------------------ build


def cmd_build(args) -> int:
    system = _load_system(args)
    J = _parse_j(args.j, system.rank)
    order = _load_order(args, system, J)
    qj = qj_mod.build_qj_poset(system, J, order)
    out = args.out or "."
    _write(out, "qj.json", _json_text(qj_mod.qj_json_dict(qj)))
    _write(out, "labels.json", _json_text(qj_mod.labels_json_dict(qj)))
    _write(out, "qj.dot", qj_mod.qj_dot(qj))
    n = qj.poset.n
    print(f"built Q^J for {_describe(args, system, J)['type']} with "
          f"J = {{{args.j}}}: {n} nodes ({n - 1} cells + bottom)")
    print(f"wrote qj.json, labels.json, qj.dot in {out}")
    return EXIT_OK


# ------------------------------------------------------------------ check


def _check_report(args, system, J, order) -> dict:
    """Run the selected checks; the report carries one entry per check."""
    specific = (args.thin or args.el or args.eulerian or args.euler_cells
                or args.lemmas or args.interval_poset)
    battery = args.all or not specific
    want = {
        "thin": battery or args.thin,
        "el": battery or args.el,
        "eulerian": battery or args.eulerian,
        "euler_cells": battery or args.euler_cells,
        "lemmas": battery or args.lemmas,
        "interval_poset": args.interval_poset,
    }
    report = {
        "config": _describe(args, system, J),
        "reflection_order": order.describe(),
        "checks": {},
    }
    checks = report["checks"]
    needs_qj = any(want[k] for k in ("thin", "el", "eulerian", "euler_cells", "lemmas"))
    qj = None
    if needs_qj:
        qj = qj_mod.build_qj_poset(system, J, order)
        poset = qj.poset
        report["cells"] = poset.n - 1
        top = poset.labels[poset.top()]
        checks["graded"] = {
            "ok": poset.is_bounded() and poset.is_graded(),
            "top": qj_mod._cell_str(system, top),
            "top_rank": int(poset.rank[poset.top()]),
        }
    if want["thin"]:
        checks["thin"] = {"ok": poset.is_thin()}
    if want["el"]:
        el = verify_el_labeling(poset, qj.labeling)
        checks["el"] = {"ok": el.ok, "intervals": el.intervals_checked,
                        "failures": el.failures}
        facets = shelling_from_el(poset, qj.labeling)
        checks["shelling"] = {"ok": verify_shelling(facets), "facets": len(facets)}
    if want["eulerian"]:
        eul = poset.eulerian_report()
        checks["eulerian"] = {"ok": eul.counts_ok and eul.mobius_ok and eul.agree(),
                              "counts_ok": eul.counts_ok, "mobius_ok": eul.mobius_ok,
                              "first_bad": eul.first_bad}
        checks["hall"] = {"ok": poset.hall_identity_holds()}
    if want["euler_cells"]:
        rank_top = int(poset.rank[poset.top()])
        checks["euler_cells"] = {
            "ok": qj.all_closures_euler_one(),
            "chi_proper": poset.proper_part().order_complex_euler(),
            "chi_sphere": sphere_euler_characteristic(rank_top - 2),
        }
    if want["lemmas"]:
        suite = qj_mod.structural_suite(qj)
        suite.update(bruhat_el.lemma_suite(system, J, order))
        checks["lemmas"] = {
            "ok": all(r.ok for r in suite.values()),
            "reports": {name: {"ok": r.ok, "checked": r.checked,
                               "failures": r.failures}
                        for name, r in sorted(suite.items())},
        }
    if want["interval_poset"]:
        checks["interval_poset"] = {"ok": qj_mod.interval_poset_iso_check(system)}
    report["ok"] = all(c["ok"] for c in checks.values())
    return report


def cmd_check(args) -> int:
    system = _load_system(args)
    J = _parse_j(args.j, system.rank)
    order = _load_order(args, system, J)
    report = _check_report(args, system, J, order)
    cfg = report["config"]
    print(f"check {cfg['type']}, J = {{{args.j}}}, |W| = {cfg['group_order']}"
          + (f", {report['cells']} cells + bottom" if "cells" in report else ""))
    print("reflection order: " + " < ".join(report["reflection_order"]))
    for name, entry in report["checks"].items():
        extra = {k: v for k, v in entry.items() if k not in ("ok", "reports")}
        tail = ("  " + ", ".join(f"{k}={v}" for k, v in extra.items())) if extra else ""
        print(f"  [{'PASS' if entry['ok'] else 'FAIL'}] {name}{tail}")
    print("all checks passed" if report["ok"] else "CHECK FAILED")
    if args.out:
        _write(args.out, "check.json", _json_text(report))
    elif not report["ok"]:
        print(_json_text(report), end="")       # counterexamples must land somewhere
    return EXIT_OK if report["ok"] else EXIT_FAIL


# ----------------------------------------------------------- grassmannian


def cmd_grassmannian(args) -> int:
    out = args.out or "."
    if args.example_toy:
        toy = gr.example_toy()
        traced = gr.trace_pipe_dream(toy)
        zero = gr.trace_pipe_dream(toy.all_zero())
        print("3 x 7 worked example, shape (4, 3, 1):")
        print(toy.to_text(), end="")
        print(f"w_filling = {traced}")
        print(f"w_zeros   = {zero}")
        record = {"le": gr.le_json_dict(toy), "w_filling": list(traced),
                  "w_zeros": list(zero)}
        _write(out, "example_toy.json", _json_text(record))
        expected = ((2, 1, 5, 4, 6, 3, 7), (2, 4, 5, 7, 1, 3, 6))
        if (traced, zero) != expected:
            print(f"MISMATCH: expected {expected}")
            return EXIT_FAIL
        return EXIT_OK
    if args.k is None or args.n is None:
        raise ConfigError("grassmannian needs k and n (or --example-toy)")
    k, n = args.k, args.n
    if not 1 <= k < n or n < 2:
        raise ConfigError(f"need 1 <= k < n with n >= 2, got k={k}, n={n}")
    bound = args.bound if args.bound else DEFAULT_ORDER_BOUND
    system = CoxeterSystem(coxeter_matrix(f"A{n - 1}"), order_bound=bound)
    report = gr.bijection_report(system, k, n)
    rows = gr.bijection_rows(system, k, n)
    diagrams = gr.enumerate_le_diagrams(k, n)
    J = gr.grassmannian_j(k, n)
    cells = [c for c in qj_mod.enumerate_cells(system, J) if c is not qj_mod.BOTTOM]
    _write(out, "le_diagrams.json", _json_text(
        {"k": k, "n": n, "count": len(diagrams),
         "diagrams": [gr.le_json_dict(d) for d in diagrams]}))
    _write(out, "cells.json", _json_text(
        {"k": k, "n": n, "j": [i + 1 for i in J], "count": len(cells),
         "cells": [qj_mod.cell_json(system, c) for c in cells]}))
    _write(out, "bijection.json", _json_text(
        {"counts": report["counts"], "ok": report["ok"],
         "failures": report["failures"], "rows": rows}))
    for i, diagram in enumerate(diagrams):
        dp = gr.compose_phi(system, diagram)
        _write(out, f"chord_{i:03d}.svg", gr.chord_svg(dp))
    c = report["counts"]
    print(f"k={k} n={n}: {c['le_diagrams']} diagrams, {c['cells']} cells, "
          f"{c['decorated_permutations']} decorated permutations with {k} weak excedences")
    print(f"wrote le_diagrams.json, cells.json, bijection.json and "
          f"{len(diagrams)} chord SVGs in {out}")
    if not report["ok"]:
        print(f"BIJECTION FAILED: {report['failures']}")
        return EXIT_FAIL
    return EXIT_OK


# ------------------------------------------------------------------- main


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="tnncells",
        description="Build and verify cell posets of parabolic quotients.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(q):
        q.add_argument("--type", metavar="NAME",
                       help='Coxeter type, e.g. "A3" or "B3"')
        q.add_argument("--matrix", metavar="FILE",
                       help="JSON Coxeter matrix (list of rows) instead of --type")
        q.add_argument("--j", default="", metavar="LIST",
                       help="comma separated 1-based generator labels; empty for J = {}")
        q.add_argument("--order-word", metavar="FILE",
                       help="reduced word for the longest element (1-based labels) "
                            "fixing the reflection order")
        q.add_argument("--bound", type=int, default=None, metavar="N",
                       help="refuse to build groups larger than N elements")
        q.add_argument("--jobs", type=int, default=1, metavar="N",
                       help="parallelism hint; checks currently run sequentially")
        q.add_argument("--out", metavar="DIR", help="output directory")

    b = sub.add_parser("build", help="build the poset; write qj.json, labels.json, qj.dot")
    common(b)
    b.set_defaults(func=cmd_build)

    c = sub.add_parser("check", help="run verification suites")
    common(c)
    c.add_argument("--all", action="store_true", help="every structural check")
    c.add_argument("--thin", action="store_true", help="rank-2 intervals are diamonds")
    c.add_argument("--el", action="store_true", help="edge labeling + shelling")
    c.add_argument("--eulerian", action="store_true",
                   help="Eulerian condition, both readings, plus the Hall identity")
    c.add_argument("--euler-cells", action="store_true",
                   help="every cell closure has Euler characteristic 1")
    c.add_argument("--lemmas", action="store_true",
                   help="coset factorization and cover structure suites")
    c.add_argument("--interval-poset", action="store_true",
                   help="J = {}: poset minus bottom matches the interval poset")
    c.set_defaults(func=cmd_check)

    g = sub.add_parser("grassmannian",
                       help="box-case bijection tables and chord pictures")
    g.add_argument("k", nargs="?", type=int)
    g.add_argument("n", nargs="?", type=int)
    g.add_argument("--example-toy", action="store_true",
                   help="run the 3 x 7 worked example instead of a full table")
    g.add_argument("--bound", type=int, default=None, metavar="N",
                   help="refuse to build groups larger than N elements")
    g.add_argument("--out", metavar="DIR", help="output directory")
    g.set_defaults(func=cmd_grassmannian)
    return p


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (MalformedMatrixError, NotReducedForW0Error,
            qj_mod.OrderNotWJLastError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except NonFiniteTypeError as e:
        print(f"resource bound: {e}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
