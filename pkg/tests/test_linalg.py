import random

import pytest

from loopspace.linalg import (CompositionNonzeroError, SparseMatrix, ZZ, QQ,
                              homology_of_slice, prime_field, rank,
                              smith_normal_form)

from oracles import dense_rank, snf_by_hand


def test_snf_identity():
    m = SparseMatrix.from_rows([[1, 0], [0, 1]])
    assert smith_normal_form(m).factors == (1, 1)


def test_snf_zero_matrix():
    m = SparseMatrix(2, 3)
    assert smith_normal_form(m).factors == ()


def test_snf_derived_example():
    # [[2,4],[6,8]]: brute-force row/column reduction gives (2, 4)
    m = SparseMatrix.from_rows([[2, 4], [6, 8]])
    assert snf_by_hand([[2, 4], [6, 8]]) == (2, 4)
    assert smith_normal_form(m).factors == (2, 4)


def test_snf_transforms_reconstruct():
    random.seed(7)
    for _ in range(120):
        nr, nc = random.randint(1, 6), random.randint(1, 7)
        rows = [[random.randint(-9, 9) if random.random() < 0.6 else 0
                 for _ in range(nc)] for _ in range(nr)]
        m = SparseMatrix.from_rows(rows)
        res = smith_normal_form(m, transforms=True)
        diag = res.U.matmul(m).matmul(res.V)
        expected = {(k, k): d for k, d in enumerate(res.factors)}
        assert diag.entries == expected
        for a, b in zip(res.factors, res.factors[1:]):
            assert b % a == 0
        assert res.factors == snf_by_hand(rows)
        # unimodularity via explicit inverses
        eye_r = {(i, i): 1 for i in range(nr)}
        eye_c = {(j, j): 1 for j in range(nc)}
        assert res.U.matmul(res.U_inv).entries == eye_r
        assert res.V.matmul(res.V_inv).entries == eye_c


def test_rank_examples():
    assert rank(SparseMatrix.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == 3
    assert rank(SparseMatrix(3, 4)) == 0
    assert rank(SparseMatrix.from_rows([[2, 4], [1, 2]])) == 1


def test_rank_matches_dense_oracle():
    random.seed(11)
    for _ in range(80):
        nr, nc = random.randint(1, 8), random.randint(1, 8)
        rows = [[random.randint(-5, 5) if random.random() < 0.5 else 0
                 for _ in range(nc)] for _ in range(nr)]
        m = SparseMatrix.from_rows(rows)
        assert rank(m, QQ) == dense_rank(rows)
        assert rank(m, prime_field(5)) == dense_rank(rows, 5)
        assert rank(m, prime_field(2)) == dense_rank(rows, 2)


def test_homology_circle_complex():
    # one vertex, one edge, both boundaries zero
    h0 = homology_of_slice(SparseMatrix(1, 1), SparseMatrix(0, 1), ZZ)
    assert (h0.free_rank, h0.torsion) == (1, ())
    h1 = homology_of_slice(SparseMatrix(1, 0), SparseMatrix(1, 1), ZZ)
    assert (h1.free_rank, h1.torsion) == (1, ())


def test_homology_torsion_example():
    d_in = SparseMatrix.from_rows([[2]])
    h = homology_of_slice(d_in, SparseMatrix(0, 1), ZZ)
    assert (h.free_rank, h.torsion) == (0, (2,))
    h3 = homology_of_slice(d_in, SparseMatrix(0, 1), prime_field(3))
    assert (h3.free_rank, h3.torsion) == (0, ())


def test_homology_rejects_nonzero_composition():
    d_in = SparseMatrix.from_rows([[1], [0]])
    d_out = SparseMatrix.from_rows([[1, 0]])
    with pytest.raises(CompositionNonzeroError):
        homology_of_slice(d_in, d_out, ZZ)


def test_homology_field_matches_dense_oracle():
    random.seed(3)
    for _ in range(40):
        mid = random.randint(1, 7)
        left = random.randint(0, 6)
        right = random.randint(0, 6)
        d_in_rows = [[random.randint(-4, 4) if random.random() < 0.5 else 0
                      for _ in range(left)] for _ in range(mid)]
        d_out_rows = [[0] * mid for _ in range(right)]
        d_in = SparseMatrix.from_rows(d_in_rows) if left else SparseMatrix(mid, 0)
        d_out = SparseMatrix.from_rows(d_out_rows) if right else SparseMatrix(0, mid)
        h = homology_of_slice(d_in, d_out, QQ)
        expect = (mid - dense_rank(d_out_rows)) - dense_rank(d_in_rows)
        assert h.free_rank == expect
        hp = homology_of_slice(d_in, d_out, prime_field(7))
        expect_p = (mid - dense_rank(d_out_rows, 7)) - dense_rank(d_in_rows, 7)
        assert hp.free_rank == expect_p
