"""Command line front end.

Subcommands: analyze, complete, check-decreasing, fill-sphere, homology.
Exit codes: 0 success (CERTIFIED for complete), 2 input error,
3 inconclusive within the given budget, 4 search failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .core import (ParseError, PresentationError, all_words,
                   parse_polygraph, word_str)
from .engine import (ExplorationBudget, IllComposed, TruncatedRegion,
                     Unreachable, classify_termination, explore,
                     INCONCLUSIVE)
from .branchings import critical_branchings
from .labelling import (Labelling, LabellingError, parse_label_table,
                        parse_qnf_map, validate_qnf_map)
from .decreasing import (MeasureError, SearchExhausted,
                         check_context_compatibility,
                         check_peiffer_decreasing, check_strict,
                         find_decreasing, StrictDiagram, _branching_of,
                         _diagram_completions)
from .loops import enumerate_elementary_loops
from .expressions import check_boundary
from .completion import (CERTIFIED, build_completion, fill_parallel_sphere,
                         fill_zigzag_sphere, format_extension,
                         format_zigzag, parse_extension, parse_sphere)
from .homology import abelianize, finiteness_report, homology

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INCONCLUSIVE = 3
EXIT_SEARCH = 4


def _add_common(sp):
    sp.add_argument("polygraph", help="presentation file (.poly)")
    sp.add_argument("--max-word-len", type=int, default=7)
    sp.add_argument("--max-states", type=int, default=100000)
    sp.add_argument("--max-depth", type=int, default=200)
    sp.add_argument("--ctx-bound", type=int, default=2)
    sp.add_argument("--peiffer-len-bound", type=int, default=6)
    sp.add_argument("--loop-cap", type=int, default=10000)
    sp.add_argument("--label", choices=["qnf", "nf", "singleton", "table"],
                    default="qnf")
    sp.add_argument("--qnf-map", metavar="FILE")
    sp.add_argument("--label-table", metavar="FILE")
    sp.add_argument("--cells", metavar="FILE")
    sp.add_argument("--format", choices=["text", "json"], default="text")
    sp.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="polyco",
        description="string rewriting analysis on monoid presentations")
    sub = ap.add_subparsers(dest="command", required=True)
    for name, doc in [
            ("analyze", "explore the reduction graph and classify it"),
            ("complete", "build a coherent completion with audits"),
            ("check-decreasing", "search decreasing diagrams and audit them"),
            ("fill-sphere", "express a parallel sphere in completion cells"),
            ("homology", "integral homology of the presentation")]:
        sp = sub.add_parser(name, help=doc)
        _add_common(sp)
        if name == "fill-sphere":
            sp.add_argument("sphere", help="file with a 'sphere : A => B' line")
    return ap


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise ParseError(str(e))


def _setup(args):
    p = parse_polygraph(_read(args.polygraph))
    budget = ExplorationBudget(args.max_word_len, args.max_states,
                               args.max_depth)
    g = explore(p, all_words(p, args.max_word_len), budget=budget)
    return p, g, budget


def _derived_qnf_map(g):
    qm = {}
    for w in g.vertices:
        try:
            qs = g.quasi_normal_forms(w)
        except TruncatedRegion:
            continue
        if qs:
            qm[w] = min(qs, key=lambda x: (len(x), x))
    return qm


def _labelling(args, p, g) -> Labelling:
    if args.label == "qnf":
        if args.qnf_map:
            qm = parse_qnf_map(p, _read(args.qnf_map))
        else:
            qm = _derived_qnf_map(g)
        lab = Labelling.qnf(qm)
        if args.qnf_map:
            validate_qnf_map(lab, g)
        return lab
    if args.label == "nf":
        return Labelling.nf(g)
    if args.label == "singleton":
        return Labelling.singleton()
    if not args.label_table:
        raise ParseError("--label table needs --label-table FILE")
    table, order = parse_label_table(p, _read(args.label_table))
    return Labelling.from_table(table, order)


def _emit(args, data: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)


def _budget_dict(args):
    return {"max_word_len": args.max_word_len,
            "max_states": args.max_states, "max_depth": args.max_depth,
            "ctx_bound": args.ctx_bound,
            "peiffer_len_bound": args.peiffer_len_bound,
            "loop_cap": args.loop_cap, "seed": args.seed}


def cmd_analyze(args) -> int:
    p, g, budget = _setup(args)
    report = classify_termination(g)
    crits = critical_branchings(p)
    try:
        loops = enumerate_elementary_loops(g, cap=args.loop_cap)
        loop_count, loops_complete = len(loops.classes), loops.complete
    except TruncatedRegion:
        loop_count, loops_complete = None, False
    data = {
        "generators": list(p.generators),
        "rules": [r.name for r in p.rules],
        "vertices": len(g.vertices),
        "truncated": g.truncated,
        "classification": report.classification,
        "critical_branchings": [
            {"source": word_str(b.first.source),
             "first": str(b.first), "second": str(b.second)}
            for b in crits],
        "elementary_loop_classes": loop_count,
        "loops_complete": loops_complete,
        "budget": _budget_dict(args),
    }
    lines = [f"generators: {' '.join(p.generators)}",
             f"rules: {len(p.rules)}",
             f"explored words: {len(g.vertices)}"
             + (" (truncated)" if g.truncated else ""),
             f"classification: {report.classification}",
             f"critical branchings: {len(crits)}"]
    lines += [f"  {word_str(b.first.source)}: {b.first} || {b.second}"
              for b in crits]
    lines.append(f"elementary loop classes: {loop_count}"
                 + ("" if loops_complete else " (incomplete)"))
    _emit(args, data, "\n".join(lines))
    if report.classification == INCONCLUSIVE or not loops_complete:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_complete(args) -> int:
    p, g, budget = _setup(args)
    lab = _labelling(args, p, g)
    c = build_completion(p, lab, g, ctx_bound=args.ctx_bound,
                         peiffer_len_bound=args.peiffer_len_bound,
                         loop_cap=args.loop_cap)
    ctx = c.audits["context"]
    data = {
        "cells": {name: {"kind": cell.kind,
                         "source": format_zigzag(cell.source),
                         "target": format_zigzag(cell.target)}
                  for name, cell in c.cells.items()},
        "verdict": c.verdict,
        "audits": {
            "strict": c.audits["strict"],
            "context": {"ok": ctx.ok, "checked": ctx.checked,
                        "violations": [
                            {"branching": v.get("branching"),
                             "context": [word_str(v["context"][0]),
                                         word_str(v["context"][1])]}
                            for v in ctx.violations]},
            "peiffer": {"ok": c.audits["peiffer"]["ok"],
                        "reports": [
                            {"source": word_str(r.branching.source),
                             "status": r.status, "variant": r.variant}
                            for r in c.audits["peiffer"]["reports"]]},
            "loops": c.audits["loops"],
        },
        "budget": _budget_dict(args),
    }
    text = format_extension(c) + f"\nverdict: {c.verdict}\n" + "\n".join(
        f"audit {k}: {'ok' if v else 'FAILED'}"
        for k, v in [("strict", c.audits["strict"]["ok"]),
                     ("context", ctx.ok),
                     ("peiffer", c.audits["peiffer"]["ok"]),
                     ("loops", c.audits["loops"]["complete"])])
    _emit(args, data, text)
    return EXIT_OK if c.verdict == CERTIFIED else EXIT_INCONCLUSIVE


def cmd_check_decreasing(args) -> int:
    p, g, budget = _setup(args)
    lab = _labelling(args, p, g)
    crits = critical_branchings(p)
    rows = []
    diagrams = []
    missing = 0
    for b in crits:
        d = find_decreasing(lab, g, b, strict=True)
        strict = d is not None
        if d is None:
            d = find_decreasing(lab, g, b, strict=False)
        if d is None:
            missing += 1
            rows.append({"source": word_str(b.first.source),
                         "status": "NOT FOUND"})
            continue
        diagrams.append(d)
        rows.append({"source": word_str(b.first.source),
                     "status": "strict" if strict else "decreasing"})
    ctx = check_context_compatibility(lab, g, diagrams, args.ctx_bound)
    peiffer = check_peiffer_decreasing(lab, g, p, args.peiffer_len_bound)
    peiffer_ok = all(r.status == "PASS" for r in peiffer)
    data = {"branchings": rows,
            "context": {"ok": ctx.ok, "checked": ctx.checked,
                        "violations": [
                            {"diagram": v.get("diagram"),
                             "context": [word_str(v["context"][0]),
                                         word_str(v["context"][1])]}
                            for v in ctx.violations]},
            "peiffer_ok": peiffer_ok,
            "budget": _budget_dict(args)}
    lines = [f"{r['source']}: {r['status']}" for r in rows]
    lines.append(f"context compatibility up to bound {args.ctx_bound}: "
                 + ("ok" if ctx.ok else
                    f"violation at {ctx.first_violation}"))
    lines.append(f"Peiffer decreasing up to length {args.peiffer_len_bound}: "
                 + ("ok" if peiffer_ok else "FAILED"))
    _emit(args, data, "\n".join(lines))
    if missing:
        return EXIT_SEARCH
    return EXIT_OK if ctx.ok and peiffer_ok else EXIT_INCONCLUSIVE


def cmd_fill_sphere(args) -> int:
    p, g, budget = _setup(args)
    lab = _labelling(args, p, g)
    c = build_completion(p, lab, g, ctx_bound=args.ctx_bound,
                         peiffer_len_bound=args.peiffer_len_bound,
                         loop_cap=args.loop_cap)
    if args.cells:
        parsed = parse_extension(p, _read(args.cells))
        for name, cell in parsed.items():
            if name not in c.cells:
                raise ParseError(f"cell {name!r} is not in the completion")
    f, h = parse_sphere(p, _read(args.sphere))
    if all(s.forward for s in f.steps) and all(s.forward for s in h.steps):
        expr = fill_parallel_sphere(c, lab, g, f.forward_path(),
                                    h.forward_path())
    else:
        expr = fill_zigzag_sphere(c, lab, g, f, h)
    src, tgt = check_boundary(expr, c.cells)
    data = {"atoms": [str(a) for a in expr.atoms],
            "source": format_zigzag(f), "target": format_zigzag(h),
            "boundary_ok": True, "budget": _budget_dict(args)}
    text = "\n".join(str(a) for a in expr.atoms) or "(identity)"
    _emit(args, data, text)
    return EXIT_OK


def cmd_homology(args) -> int:
    p = parse_polygraph(_read(args.polygraph))
    cells = []
    if args.cells:
        cells = list(parse_extension(p, _read(args.cells)).values())
    c = abelianize(p, cells)
    h = homology(c)
    data = {"H0": str(h.h0), "H1": str(h.h1), "H2": str(h.h2),
            "cells3": len(cells), "budget": _budget_dict(args)}
    text = f"H0 = {h.h0}\nH1 = {h.h1}\nH2 = {h.h2}"
    _emit(args, data, text)
    return EXIT_OK


COMMANDS = {
    "analyze": cmd_analyze,
    "complete": cmd_complete,
    "check-decreasing": cmd_check_decreasing,
    "fill-sphere": cmd_fill_sphere,
    "homology": cmd_homology,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (PresentationError, LabellingError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (SearchExhausted, MeasureError, Unreachable, IllComposed) as e:
        print(f"search failed: {e}", file=sys.stderr)
        return EXIT_SEARCH
    except TruncatedRegion as e:
        print(f"inconclusive within budget: {e}", file=sys.stderr)
        return EXIT_INCONCLUSIVE


if __name__ == "__main__":
    sys.exit(main())
