"""Kernel backends agree with each other and with a Fraction oracle."""

import random
from fractions import Fraction

from noise_lattice import _kernels_py
from noise_lattice.kernels import BACKEND, orthogonalize_int, row_echelon_int


def rref_fraction_rank(rows):
    """Plain Fraction Gaussian elimination, the slow reference."""
    m = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    for c in range(len(m[0])):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pv = m[rank][c]
        m[rank] = [x / pv for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def random_matrix(rng, nr, nc, lo=-9, hi=9):
    return [[rng.randint(lo, hi) for _ in range(nc)] for _ in range(nr)]


def test_bareiss_rank_matches_fraction_elimination():
    rng = random.Random(0)
    for _ in range(100):
        m = random_matrix(rng, rng.randint(1, 7), rng.randint(1, 7))
        _, piv = row_echelon_int(m)
        assert len(piv) == rref_fraction_rank(m)


def test_bareiss_preserves_row_space():
    rng = random.Random(1)
    for _ in range(50):
        m = random_matrix(rng, 4, 5)
        ech, piv = row_echelon_int(m)
        combined = [r[:] for r in m] + [r[:] for r in ech]
        _, piv2 = row_echelon_int(combined)
        assert len(piv2) == len(piv)


def test_backends_agree():
    rng = random.Random(2)
    for _ in range(30):
        m = random_matrix(rng, rng.randint(1, 6), rng.randint(1, 6))
        assert row_echelon_int(m) == _kernels_py.row_echelon_int(m)
        w = [rng.randint(1, 5) for _ in range(len(m[0]))]
        assert orthogonalize_int(m, w) == _kernels_py.orthogonalize_int(m, w)


def test_orthogonalize_output_is_orthogonal():
    rng = random.Random(3)
    for _ in range(50):
        nc = rng.randint(1, 6)
        vecs = random_matrix(rng, rng.randint(1, 6), nc)
        w = [rng.randint(1, 5) for _ in range(nc)]
        basis, norms = orthogonalize_int(vecs, w)
        for i, bi in enumerate(basis):
            assert norms[i] == sum(wk * x * x for wk, x in zip(w, bi))
            for bj in basis[i + 1 :]:
                assert sum(wk * a * b for wk, a, b in zip(w, bi, bj)) == 0
        _, piv = row_echelon_int(vecs)
        assert len(basis) == len(piv)


def test_input_not_mutated():
    m = [[1, 2], [3, 4]]
    row_echelon_int(m)
    assert m == [[1, 2], [3, 4]]
    orthogonalize_int(m, [1, 1])
    assert m == [[1, 2], [3, 4]]


def test_backend_name_is_reported():
    assert BACKEND in ("compiled", "pure")
