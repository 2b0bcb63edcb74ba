"""Decreasing diagrams for branchings under a well-founded labelling.

A decreasing diagram for a local branching (f, g) closes it with
``f . f' . g'' . h1 = g . g' . f'' . h2`` where the labels of f' sit
strictly below the label of f, those of g' below the label of g, f'' and
g'' are at most one step carrying exactly the opposite label, and every
label of h1, h2 sits below one of the two.  A strict diagram only has
f' and g', each label strictly below everything on the other side.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

from .core import EMPTY, Polygraph, Word, all_words, word_str
from .branchings import (ASPHERICAL, PEIFFER, LocalBranching, Branching,
                         classify_branching, local_branchings)
from .engine import (Path, ReductionGraph, RewriteStep, TruncatedRegion,
                     Unreachable, enumerate_steps)
from .labelling import (Labelling, LabelMultiset, LabellingError,
                        MissingLabel, NF, QNF, label_path, label_step,
                        measure_branching, multiset_less)


class SearchExhausted(Exception):
    """The bounded search failed; carries how far it looked."""

    def __init__(self, message, frontier=None):
        super().__init__(message)
        self.frontier = frontier


class MeasureError(AssertionError):
    """A recursive call failed the strict measure-decrease invariant."""


@dataclass(frozen=True)
class StrictDiagram:
    """A strict closure of a branching: completions only, every completion
    label strictly below every label on the other side of the peak."""

    branching: Branching
    f_prime: Path
    g_prime: Path

    @property
    def left_side(self) -> Path:
        return self.branching.left.compose(self.f_prime)

    @property
    def right_side(self) -> Path:
        return self.branching.right.compose(self.g_prime)


@dataclass(frozen=True)
class DecreasingDiagram:
    branching: LocalBranching
    f_prime: Path
    g_dprime: Path
    h1: Path
    g_prime: Path
    f_dprime: Path
    h2: Path

    @property
    def left_side(self) -> Path:
        f = self.branching.first
        return (Path(f.source, (f,)).compose(self.f_prime)
                .compose(self.g_dprime).compose(self.h1))

    @property
    def right_side(self) -> Path:
        g = self.branching.second
        return (Path(g.source, (g,)).compose(self.g_prime)
                .compose(self.f_dprime).compose(self.h2))


@dataclass(frozen=True)
class Violation:
    condition: str
    detail: str


def _below_all(order, k, labels) -> bool:
    return all(order.less(k, target) for target in labels)


def check_strict(lab: Labelling, g: ReductionGraph,
                 d: StrictDiagram) -> tuple[bool, list[Violation]]:
    violations = []
    try:
        if d.left_side.target != d.right_side.target:
            violations.append(Violation(
                "boundary", "the two sides end on different words"))
            return False, violations
    except Exception as e:  # ill composed
        return False, [Violation("boundary", str(e))]
    lf = label_path(lab, g, d.branching.left)
    lg = label_path(lab, g, d.branching.right)
    for k in label_path(lab, g, d.f_prime):
        if not _below_all(lab.order, k, lf):
            violations.append(Violation(
                "i", f"completion label {k!r} not below all of {list(lf)!r}"))
    for k in label_path(lab, g, d.g_prime):
        if not _below_all(lab.order, k, lg):
            violations.append(Violation(
                "ii", f"completion label {k!r} not below all of {list(lg)!r}"))
    return not violations, violations


def check_decreasing(lab: Labelling, g: ReductionGraph, d,
                     strict: bool = False) -> tuple[bool, list[Violation]]:
    """Check the decreasingness conditions of a diagram.  Accepts either a
    StrictDiagram or a full DecreasingDiagram; with ``strict`` the side
    cells f'', g'', h1, h2 must be empty."""
    if isinstance(d, StrictDiagram):
        return check_strict(lab, g, d)
    violations = []
    try:
        if d.left_side.target != d.right_side.target:
            violations.append(Violation(
                "boundary", "the two sides end on different words"))
            return False, violations
    except Exception as e:
        return False, [Violation("boundary", str(e))]
    f, h = d.branching.first, d.branching.second
    psi_f = label_step(lab, g, f)
    psi_g = label_step(lab, g, h)
    order = lab.order
    for k in label_path(lab, g, d.f_prime):
        if not order.less(k, psi_f):
            violations.append(Violation(
                "i", f"label {k!r} of f' is not below {psi_f!r}"))
    for k in label_path(lab, g, d.g_prime):
        if not order.less(k, psi_g):
            violations.append(Violation(
                "ii", f"label {k!r} of g' is not below {psi_g!r}"))
    if len(d.f_dprime) > 1:
        violations.append(Violation("iii", "f'' has more than one step"))
    elif len(d.f_dprime) == 1:
        k = label_step(lab, g, d.f_dprime.steps[0])
        if k != psi_f:
            violations.append(Violation(
                "iii", f"f'' carries {k!r}, expected {psi_f!r}"))
    if len(d.g_dprime) > 1:
        violations.append(Violation("iv", "g'' has more than one step"))
    elif len(d.g_dprime) == 1:
        k = label_step(lab, g, d.g_dprime.steps[0])
        if k != psi_g:
            violations.append(Violation(
                "iv", f"g'' carries {k!r}, expected {psi_g!r}"))
    for k in (label_path(lab, g, d.h1) + label_path(lab, g, d.h2)):
        if not (order.less(k, psi_f) or order.less(k, psi_g)):
            violations.append(Violation(
                "v", f"residual label {k!r} below neither "
                     f"{psi_f!r} nor {psi_g!r}"))
    if strict:
        for name, part in (("f''", d.f_dprime), ("g''", d.g_dprime),
                           ("h1", d.h1), ("h2", d.h2)):
            if len(part):
                violations.append(Violation(
                    "strict", f"{name} must be empty in a strict diagram"))
    return not violations, violations


# ---------------------------------------------------------------------------
# searching for diagrams


def _branching_of(b) -> Branching:
    if isinstance(b, LocalBranching):
        return Branching(Path(b.source, (b.first,)),
                         Path(b.source, (b.second,)))
    return b


def _greedy_normalize(g: ReductionGraph, u: Word, max_steps: int = 10000
                      ) -> Path:
    """Leftmost-redex, first-rule normalization inside the explored graph."""
    steps = []
    at = u
    for _ in range(max_steps):
        if at not in g.complete:
            raise TruncatedRegion(
                f"{word_str(at)} is incomplete in the explored graph")
        out = g.steps_from(at)
        if not out:
            return Path(u, tuple(steps))
        steps.append(out[0])
        at = out[0].target
    raise SearchExhausted("normalization did not terminate "
                          f"within {max_steps} steps")


def _strict_candidates(lab: Labelling, g: ReductionGraph, tf: Word, tg: Word):
    """Candidate strict closures (pairs of completion paths) to a shared
    word, most promising first."""
    if lab.kind == QNF and lab.qnf_map and tf in lab.qnf_map:
        hat = lab.qnf_map[tf]
        try:
            yield g.geodesic(tf, hat), g.geodesic(tg, hat)
        except (Unreachable, TruncatedRegion):
            pass
    if lab.kind == NF:
        try:
            yield _greedy_normalize(g, tf), _greedy_normalize(g, tg)
        except (TruncatedRegion, SearchExhausted):
            pass
    try:
        common = g.reachable(tf) & g.reachable(tg)
    except TruncatedRegion:
        return
    ranked = sorted(common,
                    key=lambda w: (g.distance(tf, w) + g.distance(tg, w),
                                   len(w), w))
    for w in ranked[:16]:
        try:
            yield g.geodesic(tf, w), g.geodesic(tg, w)
        except (Unreachable, TruncatedRegion):
            continue


def _paths_from(g: ReductionGraph, u: Word, depth: int, cap: int
                ) -> list[Path]:
    """All forward paths from u up to the given length, BFS order."""
    out = [Path(u)]
    frontier = [Path(u)]
    for _ in range(depth):
        nxt = []
        for path in frontier:
            if path.target not in g.vertices:
                continue
            for s in g.steps_from(path.target):
                q = Path(u, path.steps + (s,))
                nxt.append(q)
                out.append(q)
                if len(out) >= cap:
                    return out
        frontier = nxt
    return out


def _try_splits(lab, g, b: LocalBranching, p1: Path, p2: Path):
    """Try to read the completion pair as the parts of a decreasing
    diagram; return the first assignment that passes."""
    n1, n2 = len(p1), len(p2)
    src1, src2 = p1.source, p2.source
    for i1 in range(n1 + 1):
        for j1 in (0, 1):
            if i1 + j1 > n1:
                continue
            f_prime = Path(src1, p1.steps[:i1])
            g_dprime = Path(f_prime.target, p1.steps[i1:i1 + j1])
            h1 = Path(g_dprime.target, p1.steps[i1 + j1:])
            for i2 in range(n2 + 1):
                for j2 in (0, 1):
                    if i2 + j2 > n2:
                        continue
                    g_prime = Path(src2, p2.steps[:i2])
                    f_dprime = Path(g_prime.target, p2.steps[i2:i2 + j2])
                    h2 = Path(f_dprime.target, p2.steps[i2 + j2:])
                    d = DecreasingDiagram(b, f_prime, g_dprime, h1,
                                          g_prime, f_dprime, h2)
                    ok, _ = check_decreasing(lab, g, d)
                    if ok:
                        return d
    return None


def find_decreasing(lab: Labelling, g: ReductionGraph, b: LocalBranching,
                    depth: int = 8, strict: bool = False,
                    cap: int = 2000):
    """Search for a diagram closing the local branching: strict closures
    first (geodesics to the chosen quasi-normal form, or normalization for
    the normal-form labelling), then, unless ``strict``, general decreasing
    shapes over bounded completion pairs.  Returns None when the bounded
    search finds nothing."""
    if b.kind == ASPHERICAL:
        sd = StrictDiagram(_branching_of(b),
                           Path(b.first.target), Path(b.second.target))
        return sd
    tf, tg = b.first.target, b.second.target
    for p1, p2 in _strict_candidates(lab, g, tf, tg):
        if len(p1) > depth or len(p2) > depth:
            continue
        sd = StrictDiagram(_branching_of(b), p1, p2)
        try:
            ok, _ = check_strict(lab, g, sd)
        except MissingLabel:
            continue
        if ok:
            return sd
    if strict:
        return None
    lefts = _paths_from(g, tf, depth, cap)
    rights = _paths_from(g, tg, depth, cap)
    by_target: dict[Word, list[Path]] = {}
    for q in rights:
        by_target.setdefault(q.target, []).append(q)
    pairs = [(p, q) for p in lefts for q in by_target.get(p.target, ())]
    pairs.sort(key=lambda pq: len(pq[0]) + len(pq[1]))
    for p, q in pairs:
        try:
            d = _try_splits(lab, g, b, p, q)
        except MissingLabel:
            continue
        if d is not None:
            return d
    return None


# ---------------------------------------------------------------------------
# strict completion of arbitrary branchings

CHECK_MEASURES = True


def _assert_smaller(lab, g, inner: Branching, outer: Branching):
    if not CHECK_MEASURES:
        return
    m_in = measure_branching(lab, g, inner.left, inner.right)
    m_out = measure_branching(lab, g, outer.left, outer.right)
    if not multiset_less(m_in, m_out, lab.order):
        raise MeasureError(
            f"recursive branching measure {m_in!r} is not strictly below "
            f"{m_out!r}")


def complete_branching_strictly(lab: Labelling, g: ReductionGraph,
                                b: Branching, depth: int = 64
                                ) -> StrictDiagram:
    """Close an arbitrary branching of forward paths by a strict diagram,
    peeling one local branching at a time.  Each recursive call works on a
    branching of strictly smaller measure (checked at runtime)."""
    if depth < 0:
        raise SearchExhausted("strict completion recursion depth exhausted")
    f, h = b.left, b.right
    if not f.steps:
        return StrictDiagram(b, Path(f.target, h.steps), Path(h.target))
    if not h.steps:
        return StrictDiagram(b, Path(f.target), Path(h.target, f.steps))
    f1 = Path(f.source, f.steps[:1])
    f2 = Path(f1.target, f.steps[1:])
    h1 = Path(h.source, h.steps[:1])
    h2 = Path(h1.target, h.steps[1:])
    local = LocalBranching(f.steps[0], h.steps[0])
    sd = find_decreasing(lab, g, local, strict=True)
    if sd is None:
        raise SearchExhausted(
            f"no strict closure of the local branching at "
            f"{word_str(local.source)}", frontier=local)
    a, bb = sd.f_prime, sd.g_prime
    inner1 = Branching(f2, a)
    _assert_smaller(lab, g, inner1, b)
    s1 = complete_branching_strictly(lab, g, inner1, depth - 1)
    k1, k2 = s1.f_prime, s1.g_prime
    inner2 = Branching(bb.compose(k2), h2)
    _assert_smaller(lab, g, inner2, b)
    s2 = complete_branching_strictly(lab, g, inner2, depth - 1)
    l1, l2 = s2.f_prime, s2.g_prime
    return StrictDiagram(b, k1.compose(l1), l2)


# ---------------------------------------------------------------------------
# Peiffer branchings and their variants


def reverse_rule(p: Polygraph, rule):
    """The first declared rule undoing the given one, if any."""
    for r in p.rules:
        if r.lhs == rule.rhs and r.rhs == rule.lhs:
            return r
    return None


def peiffer_variants(p: Polygraph, b: LocalBranching):
    """Closures of a Peiffer branching that are candidates for a decreasing
    diagram: the Peiffer confluence itself and its three rotations through
    reverse rules (when the reverse rules exist).

    Yields (name, c_f, c_h, witness_loops) where c_f, c_h complete the two
    sides and witness_loops are the forward loops whose contractions attest
    that the closed diagram bounds the same 2-sphere as the Peiffer square.
    """
    f, h = b.first, b.second
    if classify_branching(f, h) != PEIFFER:
        raise ValueError("not a Peiffer branching")
    if f.position > h.position:
        f, h = h, f
    delta_f = len(f.rule.rhs) - len(f.rule.lhs)
    # the Peiffer confluence: apply the other rule on each side
    u = b.source
    h_shift = RewriteStep(h.left[:f.position] + f.rule.rhs
                          + h.left[f.position + len(f.rule.lhs):],
                          h.rule, h.right, True)
    f_keep = RewriteStep(f.left, f.rule,
                         f.right[:h.position - f.position - len(f.rule.lhs)]
                         + h.rule.rhs + h.right, True)
    swap = (b.first.position > b.second.position)

    def orient(cf_steps, ch_steps, witnesses):
        cf = Path(f.target, tuple(cf_steps))
        ch = Path(h.target, tuple(ch_steps))
        return (ch, cf, witnesses) if swap else (cf, ch, witnesses)

    yield ("peiffer",) + orient([h_shift], [f_keep], [])

    rf = reverse_rule(p, f.rule)
    rh = reverse_rule(p, h.rule)
    f_back = (RewriteStep(f.left, rf, f.right, True)
              if rf is not None else None)
    h_back = (RewriteStep(h.left, rh, h.right, True)
              if rh is not None else None)
    if f_back is not None and h_back is not None:
        # undo each side, meeting back at the source
        w1 = Path(u, (f, f_back))
        w2 = Path(u, (h, h_back))
        yield ("reverse_both",) + orient([f_back], [h_back], [w1, w2])
    if f_back is not None:
        # go around through the Peiffer target, then undo the first rule
        around = [h_shift, RewriteStep(f.left, rf, f_keep.right, True)]
        loop = Path(h.target, (f_keep,
                               RewriteStep(f.left, rf, f_keep.right, True)))
        yield ("around_left",) + orient(around, [], [loop])
    if h_back is not None:
        around = [f_keep, RewriteStep(h_shift.left, rh, h_shift.right, True)]
        loop = Path(f.target, (h_shift,
                               RewriteStep(h_shift.left, rh,
                                           h_shift.right, True)))
        yield ("around_right",) + orient([], around, [loop])


@dataclass
class PeifferReport:
    branching: LocalBranching
    status: str                       # "PASS" or "UNDECIDED"
    variant: str | None = None
    strict: bool = False
    diagram: object = None
    witness_loops: list = field(default_factory=list)
    attempts: list = field(default_factory=list)


def check_peiffer_decreasing(lab: Labelling, g: ReductionGraph,
                             p: Polygraph, len_bound: int = 6,
                             branchings=None) -> list[PeifferReport]:
    """Audit every Peiffer branching on words up to the length bound: PASS
    when the Peiffer confluence or one of its reverse-rule rotations is
    decreasing (the rotations are equivalent to the square through loop
    contractions), UNDECIDED otherwise."""
    if branchings is None:
        branchings = []
        for u in all_words(p, len_bound):
            for b in local_branchings(p, u, include_aspherical=False):
                if b.kind == PEIFFER:
                    branchings.append(b)
    reports = []
    for b in branchings:
        report = PeifferReport(b, "UNDECIDED")
        for name, cf, ch, witnesses in peiffer_variants(p, b):
            try:
                sd = StrictDiagram(_branching_of(b), cf, ch)
                strict_ok, _ = check_strict(lab, g, sd)
                if strict_ok:
                    report = PeifferReport(b, "PASS", name, True, sd,
                                           witnesses, report.attempts)
                    break
                d = _try_splits(lab, g, b, cf, ch)
            except (LabellingError, TruncatedRegion) as e:
                report.attempts.append(
                    {"variant": name, "ok": False, "error": str(e)})
                continue
            labels = {
                "sides": [label_step(lab, g, b.first),
                          label_step(lab, g, b.second)],
                "completions": [list(label_path(lab, g, cf)),
                                list(label_path(lab, g, ch))],
            }
            if d is not None:
                report = PeifferReport(b, "PASS", name, False, d,
                                       witnesses, report.attempts)
                break
            report.attempts.append(
                {"variant": name, "ok": False, "labels": labels})
        reports.append(report)
    return reports


# ---------------------------------------------------------------------------
# compatibility with contexts


def _whisker_diagram(d, u1: Word, u2: Word):
    if isinstance(d, StrictDiagram):
        b = d.branching
        return StrictDiagram(Branching(b.left.whisker(u1, u2),
                                       b.right.whisker(u1, u2)),
                             d.f_prime.whisker(u1, u2),
                             d.g_prime.whisker(u1, u2))
    b = d.branching
    return DecreasingDiagram(
        LocalBranching(b.first.whisker(u1, u2), b.second.whisker(u1, u2)),
        d.f_prime.whisker(u1, u2), d.g_dprime.whisker(u1, u2),
        d.h1.whisker(u1, u2), d.g_prime.whisker(u1, u2),
        d.f_dprime.whisker(u1, u2), d.h2.whisker(u1, u2))


def _diagram_completions(d) -> tuple[Path, Path]:
    if isinstance(d, StrictDiagram):
        return d.f_prime, d.g_prime
    left = d.f_prime.compose(d.g_dprime).compose(d.h1)
    right = d.g_prime.compose(d.f_dprime).compose(d.h2)
    return left, right


def _local_of(d) -> LocalBranching:
    b = d.branching
    if isinstance(b, LocalBranching):
        return b
    if len(b.left) != 1 or len(b.right) != 1:
        raise ValueError("context audit needs local branchings")
    return LocalBranching(b.left.steps[0], b.right.steps[0])


def contexts_up_to(p: Polygraph, bound: int):
    """Pairs of context words ordered by total length, then left length,
    then generator order."""
    for total in range(bound + 1):
        for left_len in range(total, -1, -1):
            right_len = total - left_len
            for u1 in itertools.product(p.generators, repeat=left_len):
                for u2 in itertools.product(p.generators, repeat=right_len):
                    yield u1, u2


@dataclass
class ContextReport:
    ok: bool
    checked: int
    violations: list
    unverified: list

    @property
    def first_violation(self):
        return self.violations[0] if self.violations else None


def check_context_compatibility(lab: Labelling, g: ReductionGraph,
                                diagrams, ctx_bound: int = 2
                                ) -> ContextReport:
    """Re-check each diagram whiskered by every context of total length up
    to the bound.  A context under which no decreasing reading of the
    whiskered completions exists is a violation."""
    p = g.polygraph
    checked = 0
    violations = []
    unverified = []
    for idx, d in enumerate(diagrams):
        local = _local_of(d)
        c1, c2 = _diagram_completions(d)
        for u1, u2 in contexts_up_to(p, ctx_bound):
            wb = LocalBranching(local.first.whisker(u1, u2),
                                local.second.whisker(u1, u2))
            wc1, wc2 = c1.whisker(u1, u2), c2.whisker(u1, u2)
            checked += 1
            try:
                sd = StrictDiagram(_branching_of(wb), wc1, wc2)
                ok, _ = check_strict(lab, g, sd)
                if ok:
                    continue
                if _try_splits(lab, g, wb, wc1, wc2) is not None:
                    continue
            except (LabellingError, TruncatedRegion) as e:
                unverified.append({"diagram": idx, "context": (u1, u2),
                                   "error": str(e)})
                continue
            violations.append({"diagram": idx, "context": (u1, u2)})
    return ContextReport(not violations and not unverified,
                         checked, violations, unverified)


def check_context_closability(lab: Labelling, g: ReductionGraph,
                              branchings, ctx_bound: int = 2,
                              depth: int = 8) -> ContextReport:
    """Check that every branching, whiskered by every context of total
    length up to the bound, still admits a strictly decreasing completion.

    This is weaker than re-checking a fixed completion in context (see
    check_context_compatibility): the completion may be chosen anew for
    each context, which is exactly what the sphere-filling procedure does
    when it closes a whiskered critical branching."""
    p = g.polygraph
    checked = 0
    violations = []
    unverified = []
    for idx, b in enumerate(branchings):
        local = b if isinstance(b, LocalBranching) else _local_of(b)
        for u1, u2 in contexts_up_to(p, ctx_bound):
            wb = LocalBranching(local.first.whisker(u1, u2),
                                local.second.whisker(u1, u2))
            checked += 1
            try:
                d = find_decreasing(lab, g, wb, depth=depth, strict=True)
            except (LabellingError, TruncatedRegion) as e:
                unverified.append({"branching": idx, "context": (u1, u2),
                                   "error": str(e)})
                continue
            if d is None:
                violations.append({"branching": idx, "context": (u1, u2)})
    return ContextReport(not violations and not unverified,
                         checked, violations, unverified)


def check_star0_compatibility(lab: Labelling, g: ReductionGraph,
                              ctx_bound: int = 2, pairs=None,
                              cap: int = 5000) -> ContextReport:
    """Check that whiskering preserves strict label comparisons: whenever
    the label of f sits below the label of g, the same holds in every
    context up to the bound."""
    p = g.polygraph
    if pairs is None:
        steps = [s for u in g.vertices for s in g.out.get(u, ())]
        pairs = []
        for f in steps:
            for h in steps:
                try:
                    if lab.order.less(label_step(lab, g, f),
                                      label_step(lab, g, h)):
                        pairs.append((f, h))
                except (LabellingError, TruncatedRegion):
                    continue
                if len(pairs) >= cap:
                    break
            if len(pairs) >= cap:
                break
    checked = 0
    violations = []
    unverified = []
    for f, h in pairs:
        for u1, u2 in contexts_up_to(p, ctx_bound):
            checked += 1
            try:
                kf = label_step(lab, g, f.whisker(u1, u2))
                kh = label_step(lab, g, h.whisker(u1, u2))
            except (LabellingError, TruncatedRegion) as e:
                unverified.append({"pair": (str(f), str(h)),
                                   "context": (u1, u2), "error": str(e)})
                continue
            if not lab.order.less(kf, kh):
                violations.append({"pair": (str(f), str(h)),
                                   "context": (u1, u2),
                                   "labels": (kf, kh)})
    return ContextReport(not violations and not unverified,
                         checked, violations, unverified)
