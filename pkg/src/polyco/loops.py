"""Forward rewriting loops and their elementary representatives.

A loop is a nonempty forward path back to its source.  Two loops are
equivalent when one is a circular permutation of the other.  A loop is
elementary when it is minimal in two senses: no reordering of its steps
through exchanges of disjoint redexes revisits a word (so it does not
factor through a smaller loop), and no common whisker can be stripped
from all its steps.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import networkx as nx

from .core import Word, word_str
from .engine import (Path, ReductionGraph, RewriteStep, TruncatedRegion,
                     ZigzagPath, exchange_swap)


class NotALoop(ValueError):
    pass


@dataclass(frozen=True)
class Loop:
    path: Path

    def __post_init__(self):
        if not self.path.steps or self.path.source != self.path.target:
            raise NotALoop("a loop is a nonempty path back to its source")

    @property
    def base(self) -> Word:
        return self.path.source

    @property
    def steps(self) -> tuple[RewriteStep, ...]:
        return self.path.steps

    def __len__(self):
        return len(self.path)

    def __str__(self):
        return str(self.path)


def rotations(steps: tuple[RewriteStep, ...]):
    for i in range(len(steps)):
        yield steps[i:] + steps[:i]


def canonical_rotation(steps: tuple[RewriteStep, ...]
                       ) -> tuple[RewriteStep, ...]:
    """The rotation with the least serialization: the class representative
    is deterministic."""
    return min(rotations(steps), key=lambda r: [str(s) for s in r])


def loop_class_key(loop: Loop) -> tuple[str, ...]:
    return tuple(str(s) for s in canonical_rotation(loop.steps))


@dataclass(frozen=True)
class LoopClass:
    representative: Loop
    key: tuple[str, ...]


@dataclass
class LoopEnumeration:
    classes: list[LoopClass]
    complete: bool


def strip_whiskers(steps: tuple[RewriteStep, ...]
                   ) -> tuple[Word, tuple[RewriteStep, ...], Word]:
    """Largest common left and right whiskers of all steps, and the core
    steps with those contexts removed."""
    lefts = [s.left for s in steps]
    rights = [s.right for s in steps]
    nl = min(len(w) for w in lefts)
    while nl and not all(w[:nl] == lefts[0][:nl] for w in lefts):
        nl -= 1
    nr = min(len(w) for w in rights)
    while nr and not all(w[len(w) - nr:] == rights[0][len(rights[0]) - nr:]
                         for w in rights):
        nr -= 1
    u = lefts[0][:nl]
    v = rights[0][len(rights[0]) - nr:] if nr else ()
    core = tuple(RewriteStep(s.left[nl:], s.rule,
                             s.right[:len(s.right) - nr] if nr else s.right,
                             s.forward)
                 for s in steps)
    return u, core, v


def is_context_minimal(loop: Loop) -> bool:
    u, _, v = strip_whiskers(loop.steps)
    return not u and not v


def _word_sequence(steps) -> list[Word]:
    words = [steps[0].source]
    for s in steps:
        words.append(s.target)
    return words


def _has_inner_repeat(steps) -> bool:
    words = _word_sequence(steps)
    seen: dict[Word, int] = {}
    for i, w in enumerate(words):
        if w in seen and not (seen[w] == 0 and i == len(words) - 1):
            return True
        if w not in seen:
            seen[w] = i
    return False


def is_minimal_for_composition(loop: Loop, cap: int = 4000) -> bool:
    """True when no reordering of the loop through exchanges of disjoint
    redexes revisits an intermediate word.  A revisit in any reordering
    exhibits the loop as a composite through a smaller loop."""
    start = loop.steps
    seen = {tuple(map(str, start))}
    queue = deque([start])
    while queue:
        steps = queue.popleft()
        if _has_inner_repeat(steps):
            return False
        for i in range(len(steps) - 1):
            swapped = exchange_swap(steps[i], steps[i + 1])
            if swapped is None:
                continue
            nxt = steps[:i] + swapped + steps[i + 2:]
            key = tuple(map(str, nxt))
            if key not in seen:
                seen.add(key)
                queue.append(nxt)
                if len(seen) > cap:
                    return True  # orbit too large; keep the loop
    return True


def reorder_to_expose_subloop(steps: tuple[RewriteStep, ...],
                              cap: int = 4000):
    """An exchange-reordering of the steps that revisits a word, or None
    when the loop is minimal for composition."""
    seen = {tuple(map(str, steps))}
    queue = deque([steps])
    while queue:
        cur = queue.popleft()
        if _has_inner_repeat(cur):
            return cur
        for i in range(len(cur) - 1):
            swapped = exchange_swap(cur[i], cur[i + 1])
            if swapped is None:
                continue
            nxt = cur[:i] + swapped + cur[i + 2:]
            key = tuple(map(str, nxt))
            if key not in seen:
                seen.add(key)
                queue.append(nxt)
                if len(seen) > cap:
                    return None
    return None


def is_elementary(loop: Loop) -> bool:
    return is_context_minimal(loop) and is_minimal_for_composition(loop)


def enumerate_elementary_loops(g: ReductionGraph, cap: int = 10000
                               ) -> LoopEnumeration:
    """Equivalence classes (up to circular permutation) of elementary loops
    visible in the explored graph.  Simple cycles are enumerated on the
    vertex graph and expanded over parallel steps; the cap bounds the
    number of cycles considered and exceeding it is reported as an
    incomplete enumeration."""
    dg = nx.DiGraph()
    dg.add_nodes_from(g.vertices)
    parallel: dict[tuple[Word, Word], list[RewriteStep]] = {}
    for u in g.vertices:
        for s in g.out.get(u, ()):
            dg.add_edge(u, s.target)
            parallel.setdefault((u, s.target), []).append(s)
    complete = True
    classes: dict[tuple, LoopClass] = {}
    count = 0
    for cycle in nx.simple_cycles(dg):
        count += 1
        if count > cap:
            complete = False
            break
        for w in cycle:
            if w not in g.complete:
                raise TruncatedRegion(
                    f"a cycle touches the incomplete word {word_str(w)}")
        edges = [(cycle[i], cycle[(i + 1) % len(cycle)])
                 for i in range(len(cycle))]
        choices: list[list[RewriteStep]] = [parallel[e] for e in edges]
        stack = [[]]
        for options in choices:
            stack = [acc + [s] for acc in stack for s in options]
        for steps in stack:
            loop = Loop(Path(steps[0].source, tuple(steps)))
            if not is_elementary(loop):
                continue
            key = loop_class_key(loop)
            if key not in classes:
                rep = Loop(Path(canonical_rotation(loop.steps)[0].source,
                                canonical_rotation(loop.steps)))
                classes[key] = LoopClass(rep, key)
    ordered = sorted(classes.values(), key=lambda c: (len(c.key), c.key))
    return LoopEnumeration(ordered, complete)


def rotate_conjugators(f: Loop, e: Loop):
    """Given equivalent loops f = f1...fp and e a circular permutation of
    f, return (h, k) with h a zigzag, k a forward path, h the inverse of k,
    and f equal to h * e * k in the free (2,1)-category.  None when e is
    not a rotation of f."""
    fs = f.steps
    for j in range(len(fs)):
        if fs[j:] + fs[:j] == e.steps:
            k = Path(fs[j].source, fs[j:]) if j else Path(f.base)
            h = k.zigzag().inverse()
            return h, k
    return None
