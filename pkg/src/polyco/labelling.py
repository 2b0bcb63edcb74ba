"""Well-founded labellings of rewriting steps and the lexicographic
maximum measure.

A labelling assigns to each forward step a label in a strictly ordered
set.  Four kinds are supported:

* ``qnf``: the label of a step is the rewriting distance from its target
  to a chosen quasi-normal form of that target, taken from an explicit map;
* ``nf``: the label is the target word itself, ordered by reachability
  (v is below u when u rewrites to v in at least one step);
* ``singleton``: every step gets the same label, nothing is strict;
* ``table``: labels come from an explicit table over a finite poset.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import ParseError, Polygraph, Word, parse_word, word_str
from .engine import (Path, ReductionGraph, RewriteStep, TruncatedRegion,
                     Unreachable, parse_step)


class LabellingError(ValueError):
    pass


class NotQuasiNormalForm(LabellingError):
    """The chosen value of a quasi-normal-form map is not a quasi-normal
    form of its key."""


class MissingLabel(LabellingError, KeyError):
    pass


# ---------------------------------------------------------------------------
# label orders


class LabelOrder:
    kind = "abstract"

    def less(self, a, b) -> bool:
        raise NotImplementedError


class NaturalsOrder(LabelOrder):
    kind = "naturals"

    def less(self, a, b) -> bool:
        return a < b


class FinitePosetOrder(LabelOrder):
    """A finite strict order given by its covering (or any generating)
    pairs; the transitive closure is taken and checked for irreflexivity."""

    kind = "finite_poset"

    def __init__(self, elements, pairs):
        self.elements = tuple(elements)
        closure = set(pairs)
        changed = True
        while changed:
            changed = False
            for (a, b) in list(closure):
                for (c, d) in list(closure):
                    if b == c and (a, d) not in closure:
                        closure.add((a, d))
                        changed = True
        for (a, b) in closure:
            if a == b:
                raise LabellingError(f"order is not strict: {a!r} < {a!r}")
        self.pairs = frozenset(closure)

    def less(self, a, b) -> bool:
        return (a, b) in self.pairs


class ReachabilityOrder(LabelOrder):
    """Words ordered by the rewriting relation of an explored graph:
    a is below b when b rewrites to a in at least one step."""

    kind = "reachability"

    def __init__(self, graph: ReductionGraph):
        self.graph = graph

    def less(self, a, b) -> bool:
        if a == b:
            return False
        try:
            self.graph.distance(b, a)
            return True
        except (Unreachable, TruncatedRegion):
            return False


# ---------------------------------------------------------------------------
# labellings

QNF = "qnf"
NF = "nf"
SINGLETON = "singleton"
TABLE = "table"

StepKey = tuple[Word, str, Word]


def step_key(s: RewriteStep) -> StepKey:
    return (s.left, s.rule.name, s.right)


@dataclass
class Labelling:
    kind: str
    order: LabelOrder
    qnf_map: dict[Word, Word] | None = None
    table: dict[StepKey, object] | None = None
    singleton_label: object = 0

    @classmethod
    def qnf(cls, qnf_map: dict[Word, Word]) -> "Labelling":
        return cls(QNF, NaturalsOrder(), qnf_map=qnf_map)

    @classmethod
    def nf(cls, graph: ReductionGraph) -> "Labelling":
        if graph.has_cycle():
            raise LabellingError(
                "normal form labelling needs a terminating explored graph")
        return cls(NF, ReachabilityOrder(graph))

    @classmethod
    def singleton(cls, label=0) -> "Labelling":
        return cls(SINGLETON, FinitePosetOrder([label], []),
                   singleton_label=label)

    @classmethod
    def from_table(cls, table: dict[StepKey, object],
                   order: LabelOrder) -> "Labelling":
        return cls(TABLE, order, table=table)


def label_step(lab: Labelling, g: ReductionGraph, f: RewriteStep):
    """The label of a forward step.  Inverse steps carry the label of their
    forward counterpart."""
    if lab.kind == SINGLETON:
        return lab.singleton_label
    if lab.kind == TABLE:
        key = step_key(f)
        if key not in lab.table:
            raise MissingLabel(f"no table entry for step {f}")
        return lab.table[key]
    # qnf and nf look at the forward target
    t = f.target if f.forward else f.source
    if lab.kind == NF:
        return t
    if lab.kind == QNF:
        if lab.qnf_map is None or t not in lab.qnf_map:
            raise MissingLabel(
                f"no quasi-normal form chosen for {word_str(t)}")
        qn = lab.qnf_map[t]
        if qn not in g.vertices or g.scc_of.get(qn) not in g.scc_sinks:
            raise NotQuasiNormalForm(
                f"{word_str(qn)} is not a quasi-normal form "
                f"in the explored graph")
        try:
            return g.distance(t, qn)
        except Unreachable:
            raise NotQuasiNormalForm(
                f"{word_str(qn)} is not reachable from {word_str(t)}")
    raise LabellingError(f"unknown labelling kind {lab.kind!r}")


def label_path(lab: Labelling, g: ReductionGraph, f) -> tuple:
    return tuple(label_step(lab, g, s) for s in f.steps)


def validate_qnf_map(lab: Labelling, g: ReductionGraph) -> None:
    """Check that every mapped word explored in g is sent to one of its own
    quasi-normal forms and that the choice is constant on each explored
    congruence class."""
    if lab.kind != QNF or not lab.qnf_map:
        raise LabellingError("not a qnf labelling")
    seen: set[Word] = set()
    for u, qn in lab.qnf_map.items():
        if u not in g.vertices:
            continue
        if qn not in g.quasi_normal_forms(u):
            raise NotQuasiNormalForm(
                f"{word_str(qn)} is not a quasi-normal form of {word_str(u)}")
        if u in seen:
            continue
        comp = g.component(u)
        seen |= comp
        choices = {lab.qnf_map[w] for w in comp if w in lab.qnf_map}
        if len(choices) > 1:
            raise LabellingError(
                "quasi-normal form choice is not constant on the class of "
                + word_str(u))


# ---------------------------------------------------------------------------
# label multisets and the lexicographic maximum measure


class LabelMultiset:
    """A finite multiset of labels with a canonical sorted representation."""

    __slots__ = ("counts", "_key")

    def __init__(self, items=()):
        counts: dict = {}
        if isinstance(items, dict):
            for k, n in items.items():
                if n < 0:
                    raise ValueError("negative multiplicity")
                if n:
                    counts[k] = counts.get(k, 0) + n
        else:
            for k in items:
                counts[k] = counts.get(k, 0) + 1
        self.counts = counts
        self._key = tuple(sorted(counts.items(), key=lambda kv: repr(kv[0])))

    def union(self, other: "LabelMultiset") -> "LabelMultiset":
        counts = dict(self.counts)
        for k, n in other.counts.items():
            counts[k] = counts.get(k, 0) + n
        return LabelMultiset(counts)

    __or__ = union
    __add__ = union

    def minus(self, other: "LabelMultiset") -> "LabelMultiset":
        counts = {}
        for k, n in self.counts.items():
            m = n - other.counts.get(k, 0)
            if m > 0:
                counts[k] = m
        return LabelMultiset(counts)

    def __len__(self):
        return sum(self.counts.values())

    def __bool__(self):
        return bool(self.counts)

    def __iter__(self):
        for k, n in self._key:
            for _ in range(n):
                yield k

    def distinct(self):
        return [k for k, _ in self._key]

    def __eq__(self, other):
        return isinstance(other, LabelMultiset) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        inner = ", ".join(f"{k!r}: {n}" for k, n in self._key)
        return "{" + inner + "}"


def filter_word(w, wp, order: LabelOrder) -> tuple:
    """Drop from w every letter strictly below some letter of wp."""
    wp = tuple(wp)
    return tuple(k for k in w if not any(order.less(k, j) for j in wp))


def measure_word(w, order: LabelOrder) -> LabelMultiset:
    """The lexicographic maximum measure of a label word: each letter
    contributes unless a strictly larger letter occurred before it."""
    kept = []
    rest = tuple(w)
    while rest:
        head = rest[0]
        kept.append(head)
        rest = filter_word(rest[1:], (head,), order)
    return LabelMultiset(kept)


def measure_path(lab: Labelling, g: ReductionGraph, f) -> LabelMultiset:
    return measure_word(label_path(lab, g, f), lab.order)


def measure_branching(lab: Labelling, g: ReductionGraph, f, h
                      ) -> LabelMultiset:
    return measure_path(lab, g, f) | measure_path(lab, g, h)


def multiset_less(m: LabelMultiset, n: LabelMultiset,
                  order: LabelOrder) -> bool:
    """Strict multiset order: after cancelling the common part, the rest of
    n is nonempty and dominates every leftover element of m."""
    x = m.minus(n)
    y = n.minus(m)
    if not y:
        return False
    ys = y.distinct()
    return all(any(order.less(a, b) for b in ys) for a in x.distinct())


# ---------------------------------------------------------------------------
# companion file formats


def parse_qnf_map(p: Polygraph, text: str) -> dict[Word, Word]:
    """Lines of the form ``WORD -> WORD``."""
    out: dict[Word, Word] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" not in line:
            raise ParseError("expected WORD -> WORD", lineno)
        left, right = line.split("->", 1)
        out[parse_word(left.strip(), lineno)] = parse_word(right.strip(),
                                                           lineno)
    return out


def format_qnf_map(m: dict[Word, Word]) -> str:
    lines = [f"{word_str(u)} -> {word_str(v)}"
             for u, v in sorted(m.items(), key=lambda kv: (len(kv[0]), kv[0]))]
    return "\n".join(lines) + "\n"


def parse_label_table(p: Polygraph, text: str
                      ) -> tuple[dict[StepKey, object], FinitePosetOrder]:
    """Label table files: ``step: LCTX | RULE | RCTX = LABEL`` entries plus
    ``order: a < b`` declarations of the strict order."""
    table: dict[StepKey, object] = {}
    pairs = []
    labels = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("order:"):
            body = line[len("order:"):]
            if "<" not in body:
                raise ParseError("expected: order: a < b", lineno)
            a, b = (x.strip() for x in body.split("<", 1))
            pairs.append((a, b))
            labels |= {a, b}
        elif line.startswith("step:"):
            body = line[len("step:"):]
            if "=" not in body:
                raise ParseError("expected: step: L | RULE | R = LABEL",
                                 lineno)
            stext, label = body.rsplit("=", 1)
            step = parse_step(p, stext.strip(), lineno)
            label = label.strip()
            table[step_key(step)] = label
            labels.add(label)
        else:
            raise ParseError(f"unknown table line {line!r}", lineno)
    return table, FinitePosetOrder(sorted(labels), pairs)
