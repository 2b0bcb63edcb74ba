"""Rewriting steps, paths, zigzags and bounded exploration of reduction graphs.

A rewriting step applies a rule inside a context: ``left . rule . right``.
Forward paths compose steps source-to-target; zigzags also allow inverse
steps.  Exploration is breadth first under an explicit budget, and
truncation is recorded rather than silently ignored: queries that depend
on unexplored regions raise TruncatedRegion.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field

from .core import EMPTY, Polygraph, Rule, Word, word_str


class TruncatedRegion(Exception):
    """The query needs vertices or edges beyond the explored region."""


class Unreachable(Exception):
    """No rewriting path between the two words in the explored graph."""


@dataclass(frozen=True)
class RewriteStep:
    """One application of a rule in a context, forward or inverse.

    A forward step rewrites ``left + lhs + right`` to ``left + rhs + right``;
    an inverse step goes the other way.
    """

    left: Word
    rule: Rule
    right: Word
    forward: bool = True

    @property
    def source(self) -> Word:
        inner = self.rule.lhs if self.forward else self.rule.rhs
        return self.left + inner + self.right

    @property
    def target(self) -> Word:
        inner = self.rule.rhs if self.forward else self.rule.lhs
        return self.left + inner + self.right

    @property
    def position(self) -> int:
        return len(self.left)

    def inverse(self) -> "RewriteStep":
        return RewriteStep(self.left, self.rule, self.right, not self.forward)

    def whisker(self, u: Word, v: Word) -> "RewriteStep":
        return RewriteStep(u + self.left, self.rule, self.right + v,
                           self.forward)

    def __str__(self):
        mark = "" if self.forward else "-"
        return (f"{word_str(self.left)}|{self.rule.name}|"
                f"{word_str(self.right)}{mark}")


def format_step(s: RewriteStep) -> str:
    return str(s)


def parse_step(p: Polygraph, text: str, line: int | None = None) -> RewriteStep:
    from .core import ParseError, parse_word
    text = text.strip()
    forward = True
    if text.endswith("-"):
        forward = False
        text = text[:-1].rstrip()
    fields = text.split("|")
    if len(fields) != 3:
        raise ParseError(f"expected LCTX|RULE|RCTX, got {text!r}", line)
    left = parse_word(fields[0].strip(), line)
    right = parse_word(fields[2].strip(), line)
    try:
        rule = p.rule(fields[1].strip())
    except KeyError:
        raise ParseError(f"unknown rule {fields[1].strip()!r}", line)
    return RewriteStep(left, rule, right, forward)


class IllComposed(ValueError):
    """Cells pasted along mismatched boundaries."""


@dataclass(frozen=True)
class Path:
    """A forward rewriting path: a composable sequence of forward steps."""

    source: Word
    steps: tuple[RewriteStep, ...] = ()

    def __post_init__(self):
        at = self.source
        for s in self.steps:
            if not s.forward:
                raise IllComposed(f"inverse step {s} in a forward path")
            if s.source != at:
                raise IllComposed(
                    f"step {s} does not start at {word_str(at)}")
            at = s.target

    @property
    def target(self) -> Word:
        return self.steps[-1].target if self.steps else self.source

    def __len__(self):
        return len(self.steps)

    def compose(self, other: "Path") -> "Path":
        if other.source != self.target:
            raise IllComposed("paths do not compose")
        return Path(self.source, self.steps + other.steps)

    def whisker(self, u: Word, v: Word) -> "Path":
        return Path(u + self.source + v,
                    tuple(s.whisker(u, v) for s in self.steps))

    def zigzag(self) -> "ZigzagPath":
        return ZigzagPath(self.source, self.steps)

    def __str__(self):
        if not self.steps:
            return f"id {word_str(self.source)}"
        return " ; ".join(str(s) for s in self.steps)


@dataclass(frozen=True)
class ZigzagPath:
    """A composable sequence of forward and inverse steps."""

    source: Word
    steps: tuple[RewriteStep, ...] = ()

    def __post_init__(self):
        at = self.source
        for s in self.steps:
            if s.source != at:
                raise IllComposed(
                    f"step {s} does not start at {word_str(at)}")
            at = s.target

    @property
    def target(self) -> Word:
        return self.steps[-1].target if self.steps else self.source

    def __len__(self):
        return len(self.steps)

    def compose(self, other: "ZigzagPath") -> "ZigzagPath":
        if other.source != self.target:
            raise IllComposed("zigzags do not compose")
        return ZigzagPath(self.source, self.steps + other.steps)

    def inverse(self) -> "ZigzagPath":
        return ZigzagPath(self.target,
                          tuple(s.inverse() for s in reversed(self.steps)))

    def whisker(self, u: Word, v: Word) -> "ZigzagPath":
        return ZigzagPath(u + self.source + v,
                          tuple(s.whisker(u, v) for s in self.steps))

    def forward_path(self) -> Path:
        return Path(self.source, self.steps)

    def __str__(self):
        if not self.steps:
            return f"id {word_str(self.source)}"
        return " ; ".join(str(s) for s in self.steps)


def zigzag(source: Word, *parts) -> ZigzagPath:
    """Compose steps, paths and zigzags into one zigzag from ``source``."""
    z = ZigzagPath(source)
    for part in parts:
        if isinstance(part, RewriteStep):
            part = ZigzagPath(part.source, (part,))
        elif isinstance(part, Path):
            part = part.zigzag()
        z = z.compose(part)
    return z


def support(f) -> Counter:
    """Multiset of rule names used by a path or zigzag (orientation blind)."""
    return Counter(s.rule.name for s in f.steps)


def _source_block(s: RewriteStep) -> Word:
    return s.rule.lhs if s.forward else s.rule.rhs


def _target_block(s: RewriteStep) -> Word:
    return s.rule.rhs if s.forward else s.rule.lhs


def exchange_swap(s1: RewriteStep, s2: RewriteStep):
    """If the redexes of consecutive steps s1;s2 are disjoint, return the
    equivalent pair applying the other one first, else None."""
    if s2.source != s1.target:
        raise IllComposed("steps do not compose")
    a = len(s1.left)
    out1 = _target_block(s1)
    in1 = _source_block(s1)
    b = len(s2.left)
    src2 = _source_block(s2)
    tgt2 = _target_block(s2)
    if b + len(src2) <= a:
        # s2 rewrites inside s1.left
        c = s1.left[:b]
        e = s1.left[b + len(src2):]
        s2_first = RewriteStep(c, s2.rule, e + in1 + s1.right, s2.forward)
        s1_second = RewriteStep(c + tgt2 + e, s1.rule, s1.right, s1.forward)
        return s2_first, s1_second
    if b >= a + len(out1):
        # s2 rewrites inside s1.right
        off = b - a - len(out1)
        s2_first = RewriteStep(s1.left + in1 + s1.right[:off], s2.rule,
                               s2.right, s2.forward)
        new_right = s1.right[:off] + tgt2 + s1.right[off + len(src2):]
        s1_second = RewriteStep(s1.left, s1.rule, new_right, s1.forward)
        return s2_first, s1_second
    return None


def normalize_zigzag(z: ZigzagPath) -> ZigzagPath:
    """Canonical form of a zigzag up to cancellation of inverse pairs and
    exchange of disjoint redexes (later redex strictly to the left moves
    first).  Two zigzags denote the same 2-cell of the free (2,1)-category
    when their canonical forms coincide."""
    steps = list(z.steps)
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(steps) - 1:
            s, t = steps[i], steps[i + 1]
            if (s.left == t.left and s.rule == t.rule and s.right == t.right
                    and s.forward != t.forward):
                del steps[i:i + 2]
                changed = True
                i = max(i - 1, 0)
            else:
                i += 1
        for i in range(len(steps) - 1):
            s2 = steps[i + 1]
            if (len(s2.left) + len(_source_block(s2))
                    <= len(steps[i].left)):
                swapped = exchange_swap(steps[i], steps[i + 1])
                if swapped is not None:
                    steps[i], steps[i + 1] = swapped
                    changed = True
                    break
    return ZigzagPath(z.source, tuple(steps))


def zigzags_equal(a: ZigzagPath, b: ZigzagPath) -> bool:
    """Equality of the 2-cells denoted by two zigzags: same endpoints and
    the composite of one with the inverse of the other reduces to an
    identity."""
    if a.source != b.source or a.target != b.target:
        return False
    if normalize_zigzag(a) == normalize_zigzag(b):
        return True
    return not normalize_zigzag(a.inverse().compose(b)).steps


def enumerate_steps(p: Polygraph, u: Word) -> list[RewriteStep]:
    """All forward steps out of u, ordered by position then rule order."""
    out = []
    for pos in range(len(u) + 1):
        for rule in p.rules:
            k = len(rule.lhs)
            if u[pos:pos + k] == rule.lhs and pos + k <= len(u):
                out.append(RewriteStep(u[:pos], rule, u[pos + k:]))
    return out


@dataclass(frozen=True)
class ExplorationBudget:
    max_word_len: int = 10
    max_states: int = 10000
    max_depth: int = 200


class ReductionGraph:
    """The explored part of the reduction graph of a presentation.

    Vertices are words; edges are forward steps.  A vertex is complete when
    every step out of it was kept; budget refusals mark the vertex
    incomplete and set the truncated flag.
    """

    def __init__(self, polygraph: Polygraph, budget: ExplorationBudget):
        self.polygraph = polygraph
        self.budget = budget
        self.vertices: dict[Word, int] = {}
        self.out: dict[Word, tuple[RewriteStep, ...]] = {}
        self.complete: set[Word] = set()
        self.truncated = False
        self.scc_of: dict[Word, int] = {}
        self.scc_members: list[tuple[Word, ...]] = []
        self.scc_sinks: set[int] = set()
        self._dist: dict[Word, dict[Word, int]] = {}

    # -- exploration -------------------------------------------------

    def _explore(self, seeds) -> None:
        budget = self.budget
        queue: deque[tuple[Word, int]] = deque()
        for w in seeds:
            if w in self.vertices:
                continue
            if len(w) > budget.max_word_len:
                self.truncated = True
                continue
            if len(self.vertices) >= budget.max_states:
                self.truncated = True
                continue
            self.vertices[w] = len(self.vertices)
            queue.append((w, 0))
        while queue:
            u, d = queue.popleft()
            steps = enumerate_steps(self.polygraph, u)
            if d >= budget.max_depth and steps:
                self.out[u] = ()
                self.truncated = True
                continue
            kept = []
            ok = True
            for s in steps:
                t = s.target
                if len(t) > budget.max_word_len:
                    ok = False
                    self.truncated = True
                    continue
                if t not in self.vertices:
                    if len(self.vertices) >= budget.max_states:
                        ok = False
                        self.truncated = True
                        continue
                    self.vertices[t] = len(self.vertices)
                    queue.append((t, d + 1))
                kept.append(s)
            self.out[u] = tuple(kept)
            if ok:
                self.complete.add(u)
        self._compute_sccs()

    def _compute_sccs(self) -> None:
        # iterative Tarjan
        index: dict[Word, int] = {}
        low: dict[Word, int] = {}
        on_stack: set[Word] = set()
        stack: list[Word] = []
        counter = [0]
        self.scc_of = {}
        sccs: list[tuple[Word, ...]] = []

        for root in self.vertices:
            if root in index:
                continue
            work = [(root, iter(self.out.get(root, ())))]
            index[root] = low[root] = counter[0]
            counter[0] += 1
            stack.append(root)
            on_stack.add(root)
            while work:
                v, it = work[-1]
                advanced = False
                for s in it:
                    w = s.target
                    if w not in index:
                        index[w] = low[w] = counter[0]
                        counter[0] += 1
                        stack.append(w)
                        on_stack.add(w)
                        work.append((w, iter(self.out.get(w, ()))))
                        advanced = True
                        break
                    if w in on_stack:
                        low[v] = min(low[v], index[w])
                if advanced:
                    continue
                work.pop()
                if work:
                    pv = work[-1][0]
                    low[pv] = min(low[pv], low[v])
                if low[v] == index[v]:
                    members = []
                    while True:
                        w = stack.pop()
                        on_stack.discard(w)
                        members.append(w)
                        if w == v:
                            break
                    sccs.append(tuple(members))
        self.scc_members = sccs
        for i, members in enumerate(sccs):
            for w in members:
                self.scc_of[w] = i
        self.scc_sinks = set()
        for i, members in enumerate(sccs):
            if not all(w in self.complete for w in members):
                continue
            sink = True
            for w in members:
                for s in self.out.get(w, ()):
                    if self.scc_of[s.target] != i:
                        sink = False
                        break
                if not sink:
                    break
            if sink:
                self.scc_sinks.add(i)

    # -- queries -----------------------------------------------------

    def has_cycle(self) -> bool:
        for members in self.scc_members:
            if len(members) > 1:
                return True
            w = members[0]
            if any(s.target == w for s in self.out.get(w, ())):
                return True
        return False

    def steps_from(self, u: Word) -> tuple[RewriteStep, ...]:
        if u not in self.vertices:
            raise TruncatedRegion(f"{word_str(u)} was not explored")
        return self.out.get(u, ())

    def reachable(self, u: Word, require_complete: bool = False) -> set[Word]:
        if u not in self.vertices:
            raise TruncatedRegion(f"{word_str(u)} was not explored")
        seen = {u}
        queue = deque([u])
        while queue:
            v = queue.popleft()
            if require_complete and v not in self.complete:
                raise TruncatedRegion(
                    f"{word_str(v)} is incomplete in the explored graph")
            for s in self.out.get(v, ()):
                if s.target not in seen:
                    seen.add(s.target)
                    queue.append(s.target)
        return seen

    def _distances_from(self, u: Word) -> dict[Word, int]:
        cached = self._dist.get(u)
        if cached is not None:
            return cached
        if u not in self.vertices:
            raise TruncatedRegion(f"{word_str(u)} was not explored")
        dist = {u: 0}
        queue = deque([u])
        while queue:
            v = queue.popleft()
            for s in self.out.get(v, ()):
                if s.target not in dist:
                    dist[s.target] = dist[v] + 1
                    queue.append(s.target)
        self._dist[u] = dist
        return dist

    def distance(self, u: Word, v: Word) -> int:
        """Length of a shortest rewriting path from u to v."""
        dist = self._distances_from(u)
        if v not in dist:
            raise Unreachable(
                f"{word_str(v)} is not reachable from {word_str(u)}")
        return dist[v]

    def geodesic(self, u: Word, v: Word) -> Path:
        """A shortest path from u to v, deterministic in step order."""
        dist_to = self._distances_from(u)
        if v not in dist_to:
            raise Unreachable(
                f"{word_str(v)} is not reachable from {word_str(u)}")
        steps = []
        at = u
        while at != v:
            d = self.distance(at, v)
            for s in self.out.get(at, ()):
                try:
                    if self.distance(s.target, v) == d - 1:
                        steps.append(s)
                        at = s.target
                        break
                except Unreachable:
                    continue
            else:
                raise Unreachable("geodesic construction failed")
        return Path(u, tuple(steps))

    def quasi_normal_forms(self, u: Word) -> set[Word]:
        """Reachable words in sink strongly connected components."""
        reach = self.reachable(u, require_complete=True)
        return {w for w in reach if self.scc_of[w] in self.scc_sinks}

    def normal_forms(self, u: Word) -> set[Word]:
        reach = self.reachable(u, require_complete=True)
        return {w for w in reach if not self.out.get(w, ())}

    def component(self, u: Word) -> set[Word]:
        """Undirected component of u: the explored part of its congruence
        class."""
        if u not in self.vertices:
            raise TruncatedRegion(f"{word_str(u)} was not explored")
        back: dict[Word, list[Word]] = {}
        for v, steps in self.out.items():
            for s in steps:
                back.setdefault(s.target, []).append(v)
        seen = {u}
        queue = deque([u])
        while queue:
            v = queue.popleft()
            nbrs = [s.target for s in self.out.get(v, ())] + back.get(v, [])
            for w in nbrs:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return seen

    def dump(self) -> str:
        """Edge list plus a strongly connected component summary."""
        lines = []
        for u in self.vertices:
            for s in self.out.get(u, ()):
                lines.append(f"{word_str(u)} -> {word_str(s.target)} "
                             f"via {s.rule.name} @ {s.position}")
        lines.append(f"# vertices: {len(self.vertices)}  "
                     f"complete: {len(self.complete)}  "
                     f"truncated: {self.truncated}")
        for i, members in enumerate(self.scc_members):
            tag = " (sink)" if i in self.scc_sinks else ""
            lines.append(f"# scc {i}{tag}: "
                         + ", ".join(word_str(w) for w in members))
        return "\n".join(lines) + "\n"


def explore(p: Polygraph, seeds, budget: ExplorationBudget | None = None
            ) -> ReductionGraph:
    """Breadth first closure of the seed words under rewriting, within the
    budget.  Deterministic: seeds in the given order, steps by position
    then rule declaration order."""
    g = ReductionGraph(p, budget or ExplorationBudget())
    g._explore(list(seeds))
    return g


TERMINATING = "terminating"
QUASI_TERMINATING_NOT_TERMINATING = "quasi_terminating_not_terminating"
NOT_QUASI_TERMINATING = "not_quasi_terminating"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class TerminationReport:
    classification: str
    acyclic_on_explored: bool
    truncated: bool
    cycle_found: bool


def classify_termination(g: ReductionGraph) -> TerminationReport:
    """Classify the explored graph.  Without truncation the answer is exact
    for the explored congruence classes: acyclic means terminating, a cycle
    in a finite closed graph means quasi-terminating but not terminating.
    With truncation the answer is inconclusive; a cycle still witnesses
    non-termination of the explored part."""
    cyclic = g.has_cycle()
    if not g.truncated:
        cls = QUASI_TERMINATING_NOT_TERMINATING if cyclic else TERMINATING
    else:
        cls = INCONCLUSIVE
    return TerminationReport(cls, not cyclic, g.truncated, cyclic)


def quasi_normal_forms(g: ReductionGraph, u: Word) -> set[Word]:
    return g.quasi_normal_forms(u)


def normal_forms(g: ReductionGraph, u: Word) -> set[Word]:
    return g.normal_forms(u)


def distance(g: ReductionGraph, u: Word, v: Word) -> int:
    return g.distance(u, v)
