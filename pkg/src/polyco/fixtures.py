"""Ready-made presentations and their quasi-normal-form tables.

These are the running examples of the package: the positive braid monoid
on two strands presented by the two orientations of the braid relation, a
two-letter system identifying its generators, a convergent presentation
of the same braid monoid, and a system without finite derivation type
whose reduction graph carries a single elementary loop class.
"""

from __future__ import annotations

from .core import Polygraph, Rule, Word, all_words


def braid() -> Polygraph:
    """sts <=> tst, both orientations; quasi-terminating, not terminating."""
    s, t = "s", "t"
    return Polygraph(
        "braid",
        (s, t),
        (Rule("alpha", (s, t, s), (t, s, t)),
         Rule("beta", (t, s, t), (s, t, s))))


def two_letters() -> Polygraph:
    """a <=> b: every word of one length forms a single class."""
    return Polygraph(
        "two_letters",
        ("a", "b"),
        (Rule("alpha", ("a",), ("b",)),
         Rule("beta", ("b",), ("a",))))


def convergent_braid() -> Polygraph:
    """A terminating, confluent presentation of the same braid monoid,
    with an extra generator absorbing the braid relation."""
    s, t, a = "s", "t", "a"
    return Polygraph(
        "convergent_braid",
        (s, t, a),
        (Rule("r1", (s, t, s), (a,)),
         Rule("r2", (t, s, t), (a,)),
         Rule("r3", (s, a), (a, t)),
         Rule("r4", (t, a), (a, s))))


def no_fdt() -> Polygraph:
    """A system without finite derivation type; its reduction graph has a
    single elementary loop class (ac => da => d'a => ac)."""
    a, b, cc, d, dp = "a", "b", "c", "d", "d'"
    return Polygraph(
        "no_fdt",
        (a, b, cc, d, dp),
        (Rule("r1", (a, b), (a,)),
         Rule("r2", (a, cc), (d, a)),
         Rule("r3", (d, a), (dp, a)),
         Rule("r4", (dp, a), (a, cc))))


def _convergent_nf(w: Word) -> Word:
    """Normal form for convergent_braid by leftmost reduction; the result
    always reads a^N v with v over {s, t}."""
    p = convergent_braid()
    rules = p.rules
    word = tuple(w)
    while True:
        applied = False
        for pos in range(len(word)):
            for r in rules:
                k = len(r.lhs)
                if word[pos:pos + k] == r.lhs:
                    word = word[:pos] + r.rhs + word[pos + k:]
                    applied = True
                    break
            if applied:
                break
        if not applied:
            return word


def braid_qnf(w: Word) -> Word:
    """The chosen quasi-normal form of a braid word: write its image in
    the monoid as a^N v using the convergent presentation, then return
    (sts)^N v."""
    nf = _convergent_nf(w)
    n = 0
    while n < len(nf) and nf[n] == "a":
        n += 1
    v = nf[n:]
    if "a" in v:
        raise ValueError(f"unexpected normal form {nf!r}")
    return ("s", "t", "s") * n + v


def braid_qnf_map(max_len: int = 7) -> dict[Word, Word]:
    p = braid()
    return {w: braid_qnf(w) for w in all_words(p, max_len) if w}


def two_letters_qnf_map(max_len: int = 7) -> dict[Word, Word]:
    """Every length class collapses onto the all-a word."""
    p = two_letters()
    return {w: ("a",) * len(w) for w in all_words(p, max_len)}


def two_letters_alt_qnf_map(max_len: int = 7) -> dict[Word, Word]:
    """Same, except length three is sent to the all-b word.  A legitimate
    choice of quasi-normal forms whose labelling fails compatibility with
    contexts."""
    out = two_letters_qnf_map(max_len)
    for w in list(out):
        if len(w) == 3:
            out[w] = ("b",) * 3
    return out


def abstract_states() -> Polygraph:
    """An abstract rewriting system on four states seen as one-letter
    words: c and d rewrite into each other, both escape (c to a, d to b),
    and a, b form the unique sink cycle."""
    return Polygraph(
        "abstract_states",
        ("a", "b", "c", "d"),
        (Rule("cd", ("c",), ("d",)),
         Rule("dc", ("d",), ("c",)),
         Rule("ca", ("c",), ("a",)),
         Rule("db", ("d",), ("b",)),
         Rule("ab", ("a",), ("b",)),
         Rule("ba", ("b",), ("a",))))


BUILTIN = {
    "braid": braid,
    "two_letters": two_letters,
    "convergent_braid": convergent_braid,
    "no_fdt": no_fdt,
    "abstract_states": abstract_states,
}
