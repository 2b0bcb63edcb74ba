"""Generator 3-cells and pasted expressions between parallel 2-cells.

A generator 3-cell relates two parallel zigzags.  An expression is a
vertical composite of atoms, each a generator cell (or its inverse)
whiskered by words and conjugated by zigzags on both sides.  Boundaries
are evaluated by pasting; junctions between consecutive atoms and the
declared 2-source are compared up to cancellation of inverse pairs and
exchange of disjoint redexes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Word, word_str
from .engine import (IllComposed, Path, ZigzagPath, normalize_zigzag,
                     zigzags_equal)
from .loops import (Loop, canonical_rotation, loop_class_key,
                    reorder_to_expose_subloop, rotate_conjugators,
                    strip_whiskers)

CONFLUENCE = "confluence"
LOOP = "loop"


class MissingLoopClass(KeyError):
    """No extension cell contracts the loop's elementary class."""


@dataclass(frozen=True)
class ThreeCell:
    """A named generator 3-cell between parallel zigzags."""

    name: str
    source: ZigzagPath
    target: ZigzagPath
    kind: str = CONFLUENCE

    def __post_init__(self):
        if (self.source.source != self.target.source
                or self.source.target != self.target.target):
            raise IllComposed(f"cell {self.name}: sides are not parallel")


@dataclass(frozen=True)
class Atom:
    """One whiskered, conjugated occurrence of a generator 3-cell."""

    pre: ZigzagPath
    whisker_left: Word
    cell: str
    sign: int
    whisker_right: Word
    post: ZigzagPath

    def boundary(self, cells) -> tuple[ZigzagPath, ZigzagPath]:
        c = cells[self.cell]
        src2, tgt2 = (c.source, c.target) if self.sign > 0 \
            else (c.target, c.source)
        ws = src2.whisker(self.whisker_left, self.whisker_right)
        wt = tgt2.whisker(self.whisker_left, self.whisker_right)
        return (self.pre.compose(ws).compose(self.post),
                self.pre.compose(wt).compose(self.post))

    def __str__(self):
        mark = "" if self.sign > 0 else "-"
        return (f"[{self.pre}] . {word_str(self.whisker_left)}"
                f"|{self.cell}{mark}|{word_str(self.whisker_right)}"
                f" . [{self.post}]")


@dataclass(frozen=True)
class ThreeCellExpression:
    """A vertical composite of atoms with an explicit 2-source (needed for
    the empty composite, which is an identity)."""

    source: ZigzagPath
    atoms: tuple[Atom, ...] = ()

    def __len__(self):
        return len(self.atoms)

    def __str__(self):
        if not self.atoms:
            return f"identity on ({self.source})"
        return "\n".join(str(a) for a in self.atoms)


def identity_expression(z: ZigzagPath) -> ThreeCellExpression:
    return ThreeCellExpression(z)


def conjugate(e: ThreeCellExpression, pre: ZigzagPath | None = None,
              post: ZigzagPath | None = None,
              left_word: Word = (), right_word: Word = ()
              ) -> ThreeCellExpression:
    """Whisker the whole expression by words, then conjugate it by zigzags
    on either side."""
    src = e.source.whisker(left_word, right_word)
    atoms = []
    for a in e.atoms:
        ap = a.pre.whisker(left_word, right_word)
        aq = a.post.whisker(left_word, right_word)
        if pre is not None:
            ap = pre.compose(ap)
        if post is not None:
            aq = aq.compose(post)
        atoms.append(Atom(ap, left_word + a.whisker_left, a.cell, a.sign,
                          a.whisker_right + right_word, aq))
    if pre is not None:
        src = pre.compose(src)
    if post is not None:
        src = src.compose(post)
    return ThreeCellExpression(src, tuple(atoms))


def invert(e: ThreeCellExpression, cells) -> ThreeCellExpression:
    src, tgt = check_boundary(e, cells)
    atoms = tuple(Atom(a.pre, a.whisker_left, a.cell, -a.sign,
                       a.whisker_right, a.post)
                  for a in reversed(e.atoms))
    return ThreeCellExpression(tgt, atoms)


def concat(*exprs: ThreeCellExpression) -> ThreeCellExpression:
    exprs = [e for e in exprs if e is not None]
    if not exprs:
        raise ValueError("nothing to compose")
    atoms = tuple(a for e in exprs for a in e.atoms)
    return ThreeCellExpression(exprs[0].source, atoms)


def check_boundary(e: ThreeCellExpression, cells
                   ) -> tuple[ZigzagPath, ZigzagPath]:
    """Evaluate the 2-source and 2-target of the expression, verifying that
    consecutive atoms and the declared source agree up to cancellation and
    exchange.  Returns both boundaries in canonical form."""
    declared = normalize_zigzag(e.source)
    if not e.atoms:
        return declared, declared
    current = e.source
    for a in e.atoms:
        asrc, atgt = a.boundary(cells)
        if not zigzags_equal(asrc, current):
            raise IllComposed(
                f"atom {a} does not paste: expected 2-cell "
                f"({normalize_zigzag(current)}), found "
                f"({normalize_zigzag(asrc)})")
        current = atgt
    return declared, normalize_zigzag(current)


# ---------------------------------------------------------------------------
# contracting loops through extension cells


def contract_loop(cells, classes, f: Path) -> ThreeCellExpression:
    """An expression from a forward loop to the identity on its base,
    built from one extension cell per elementary loop class.

    ``cells`` maps cell names to ThreeCells; ``classes`` maps elementary
    class keys to cell names.  The recursion peels off sub-loops exposed by
    exchange reorderings until the remainder is elementary up to whiskers
    and a rotation of some class representative.
    """
    if f.source != f.target:
        raise ValueError("not a loop")
    if not f.steps:
        return identity_expression(f.zigzag())
    reordered = reorder_to_expose_subloop(f.steps)
    if reordered is not None and _inner_repeat_span(reordered) is not None:
        i, j = _inner_repeat_span(reordered)
        whole = Path(reordered[0].source, reordered)
        inner = Path(reordered[i].source, reordered[i:j])
        prefix = Path(whole.source, reordered[:i])
        suffix = Path(inner.source, reordered[j:])
        sub = contract_loop(cells, classes, inner)
        # f equals prefix * inner * suffix up to exchange; contract the
        # inner loop in place, then recurse on what remains
        first = conjugate(sub, pre=prefix.zigzag(), post=suffix.zigzag())
        remainder = prefix.compose(suffix)
        rest = contract_loop(cells, classes, remainder)
        out = concat(first, rest)
        return ThreeCellExpression(f.zigzag(), out.atoms)
    u, core_steps, v = strip_whiskers(f.steps)
    core = Loop(Path(core_steps[0].source, core_steps))
    key = loop_class_key(core)
    if key not in classes:
        raise MissingLoopClass(
            f"no extension cell for the loop class of ({core})")
    cell_name = classes[key]
    rep_steps = canonical_rotation(core.steps)
    rep = Loop(Path(rep_steps[0].source, rep_steps))
    hk = rotate_conjugators(core, rep)
    if hk is None:
        raise MissingLoopClass("representative is not a rotation")
    h, k = hk
    atom = Atom(h.whisker(u, v), u, cell_name, +1, v,
                k.zigzag().whisker(u, v))
    return ThreeCellExpression(f.zigzag(), (atom,))


def _inner_repeat_span(steps):
    """Earliest (i, j) with the same word before step i and before step j,
    excluding the full loop itself."""
    words = [steps[0].source]
    for s in steps:
        words.append(s.target)
    seen: dict[Word, int] = {}
    for pos, w in enumerate(words):
        if w in seen:
            i, j = seen[w], pos
            if not (i == 0 and j == len(words) - 1):
                return i, j
        else:
            seen[w] = pos
    return None
