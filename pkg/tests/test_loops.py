from polyco.engine import Path, parse_step, support, zigzags_equal
from polyco.loops import (Loop, canonical_rotation, enumerate_elementary_loops,
                          is_context_minimal, is_elementary,
                          is_minimal_for_composition, loop_class_key,
                          rotate_conjugators)


def _loop(p, *steps_text):
    steps = tuple(parse_step(p, t) for t in steps_text)
    return Loop(Path(steps[0].source, steps))


def test_braid_has_one_elementary_loop_class(braid_g):
    enum = enumerate_elementary_loops(braid_g)
    assert enum.complete
    assert len(enum.classes) == 1
    cls = enum.classes[0]
    assert cls.key == ("1|alpha|1", "1|beta|1")
    assert cls.representative.base == ("s", "t", "s")


def test_lafont_has_one_elementary_loop_class(lafont_g):
    enum = enumerate_elementary_loops(lafont_g)
    assert enum.complete
    assert len(enum.classes) == 1
    names = [k.split("|")[1] for k in enum.classes[0].key]
    assert sorted(names) == ["r2", "r3", "r4"]


def test_loop_classes_identify_rotations(braid_p):
    f = _loop(braid_p, "1|alpha|1", "1|beta|1")
    e = _loop(braid_p, "1|beta|1", "1|alpha|1")
    assert loop_class_key(f) == loop_class_key(e)
    assert canonical_rotation(f.steps) == canonical_rotation(e.steps)


def test_whiskered_loop_is_not_elementary(braid_p):
    inner = _loop(braid_p, "t|alpha|1", "t|beta|1")
    assert not is_context_minimal(inner)
    assert not is_elementary(inner)
    core = _loop(braid_p, "1|alpha|1", "1|beta|1")
    assert is_context_minimal(core) and is_elementary(core)


def test_repeated_loop_is_not_minimal(braid_p):
    twice = _loop(braid_p, "1|alpha|1", "1|beta|1",
                  "1|alpha|1", "1|beta|1")
    assert not is_minimal_for_composition(twice)
    assert not is_elementary(twice)


def test_enumerated_representatives_are_elementary(braid_g, lafont_g):
    for g in (braid_g, lafont_g):
        for cls in enumerate_elementary_loops(g).classes:
            assert is_elementary(cls.representative)


def test_rotate_conjugators(braid_p):
    f = _loop(braid_p, "1|alpha|1", "1|beta|1")
    e = _loop(braid_p, "1|beta|1", "1|alpha|1")
    out = rotate_conjugators(f, e)
    assert out is not None
    h, k = out
    assert zigzags_equal(h, k.zigzag().inverse())
    composite = h.compose(e.path.zigzag()).compose(k.zigzag())
    assert zigzags_equal(f.path.zigzag(), composite)
    assert support(f.path) == support(e.path)


def test_rotate_conjugators_rejects_non_rotation(braid_p):
    f = _loop(braid_p, "1|alpha|1", "1|beta|1")
    other = _loop(braid_p, "t|alpha|1", "t|beta|1")
    assert rotate_conjugators(f, other) is None
