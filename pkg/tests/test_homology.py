import random

import sympy

from polyco.homology import (abelianize, finiteness_report, homology,
                             identity, matmul, smith_normal_form, zeros)


def _random_matrix(rnd, max_dim=6, lo=-5, hi=5):
    n = rnd.randrange(1, max_dim + 1)
    m = rnd.randrange(1, max_dim + 1)
    return [[rnd.randint(lo, hi) for _ in range(m)] for _ in range(n)]


def _det(mat):
    return int(sympy.Matrix(mat).det())


def test_smith_normal_form_factorization():
    rnd = random.Random(0)
    for _ in range(200):
        a = _random_matrix(rnd)
        u, d, v, vinv = smith_normal_form(a)
        assert matmul(matmul(u, a), v) == d
        assert abs(_det(u)) == 1
        assert abs(_det(v)) == 1
        assert matmul(v, vinv) == identity(len(v))
        diag = [d[i][i] for i in range(min(len(d), len(d[0])))]
        for row_i, row in enumerate(d):
            for col_j, x in enumerate(row):
                if row_i != col_j:
                    assert x == 0
        nonzero = [x for x in diag if x]
        assert all(x > 0 for x in nonzero)
        for x, y in zip(nonzero, nonzero[1:]):
            assert y % x == 0


def test_smith_invariants_match_sympy():
    rnd = random.Random(42)
    for _ in range(100):
        a = _random_matrix(rnd, max_dim=5)
        _, d, _, _ = smith_normal_form(a)
        ours = [d[i][i] for i in range(min(len(d), len(d[0]))) if d[i][i]]
        from sympy.matrices.normalforms import smith_normal_form as snf
        sd = snf(sympy.Matrix(a))
        theirs = sorted(abs(int(x)) for x in sd.diagonal() if x)
        ours = sorted(ours)
        assert ours == theirs


def test_chain_complex_squares_to_zero(braid_p, braid_completion):
    c = abelianize(braid_p, braid_completion.cell_list)
    comp = matmul(c.delta2, c.delta3)
    assert all(x == 0 for row in comp for x in row)


def test_reduced_braid_homology_is_z_z_z(braid_p):
    res = homology(abelianize(braid_p, []))
    for grp in (res.h0, res.h1, res.h2):
        assert grp.rank == 1 and grp.torsion == ()


def test_full_basis_kills_h2(braid_p, braid_completion):
    res = homology(abelianize(braid_p, braid_completion.cell_list))
    assert res.h0.rank == 1 and res.h1.rank == 1
    assert res.h2.rank == 0 and res.h2.torsion == ()


def test_convergent_braid_homology(upsilon_p, upsilon_g):
    from polyco.completion import build_completion
    from polyco.labelling import Labelling
    c = build_completion(upsilon_p, Labelling.nf(upsilon_g), upsilon_g)
    res = homology(abelianize(upsilon_p, c.cell_list))
    assert res.h0.rank == 1


def test_finiteness_report_summary(braid_p):
    rep = finiteness_report(braid_p, critical_count=4, loop_classes=1,
                            loops_complete=True, cells3=5)
    text = rep.summary()
    assert "5" in text
