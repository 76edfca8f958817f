"""Partition lattice, projections, independence, generated sigma-fields."""

import random
from fractions import Fraction

import pytest
from conftest import join_oracle, mat_mul, meet_oracle, projection_matrix

from noise_lattice.errors import DomainMismatchError, PreconditionError
from noise_lattice.finmeas import (
    constant,
    coordinate_sign,
    inner,
    mk_dyadic,
    mk_space,
    span,
)
from noise_lattice.instances import rand_partition, rand_rv, rand_space
from noise_lattice.sigma import (
    cond_exp,
    commutes,
    discrete,
    independent,
    inf_family,
    join,
    meet,
    partition,
    sigma_from_rv,
    sigma_of,
    sigma_of_rvs,
    sup_family,
    subspace_of,
    trivial,
)


def sigma_xi(space, k):
    return sigma_from_rv(coordinate_sign(space, k))


def test_meet_examples():
    s2 = mk_dyadic(2)
    x1, x2 = sigma_xi(s2, 1), sigma_xi(s2, 2)
    assert meet(x1, x2) == trivial(s2)
    assert meet(x1, x1) == x1
    assert meet(x1, discrete(s2)) == x1


def test_join_examples():
    s2 = mk_dyadic(2)
    x1, x2 = sigma_xi(s2, 1), sigma_xi(s2, 2)
    assert join(x1, x2) == discrete(s2)
    assert join(x1, trivial(s2)) == x1
    prod = sigma_from_rv(coordinate_sign(s2, 1) * coordinate_sign(s2, 2))
    assert join(x1, prod) == discrete(s2)


def test_meet_join_against_set_system_oracle():
    rng = random.Random(20)
    for _ in range(60):
        space = rand_space(rng, 6)
        x, y = rand_partition(rng, space), rand_partition(rng, space)
        assert meet(x, y) == meet_oracle(x, y)
        assert join(x, y) == join_oracle(x, y)


def test_cond_exp_examples():
    s2 = mk_dyadic(2)
    f = rand_rv(random.Random(21), s2)
    ef = cond_exp(trivial(s2), f)
    assert all(v == f.mean() for v in ef.values)
    assert cond_exp(discrete(s2), f).values == f.values
    x1 = sigma_xi(s2, 1)
    prod = coordinate_sign(s2, 1) * coordinate_sign(s2, 2)
    assert cond_exp(x1, prod).values == (0, 0, 0, 0)


def test_cond_exp_is_orthogonal_projection():
    rng = random.Random(22)
    for _ in range(50):
        space = rand_space(rng, 6)
        x = rand_partition(rng, space)
        f, g = rand_rv(rng, space), rand_rv(rng, space)
        qf = cond_exp(x, f)
        assert cond_exp(x, qf).values == qf.values
        assert inner(qf, g) == inner(f, cond_exp(x, g))
        assert subspace_of(x).contains(qf)


def test_commutes_examples(uniform3):
    s2 = mk_dyadic(2)
    x1 = sigma_xi(s2, 1)
    fine = discrete(s2)
    assert commutes(x1, fine)  # nested sigma-fields always commute
    x = partition(uniform3, [[0], [1, 2]])
    y = partition(uniform3, [[0, 1], [2]])
    assert not commutes(x, y)
    prod = sigma_from_rv(coordinate_sign(s2, 1) * coordinate_sign(s2, 2))
    assert commutes(x1, prod)


def test_commutes_against_dense_matrix_oracle(uniform3):
    rng = random.Random(23)
    for _ in range(40):
        space = rand_space(rng, 5)
        x, y = rand_partition(rng, space), rand_partition(rng, space)
        qx, qy = projection_matrix(x), projection_matrix(y)
        assert commutes(x, y) == (mat_mul(qx, qy) == mat_mul(qy, qx))


def test_independent_examples(uniform3):
    s2 = mk_dyadic(2)
    x1, x2 = sigma_xi(s2, 1), sigma_xi(s2, 2)
    assert independent(x1, x2)
    prod = sigma_from_rv(coordinate_sign(s2, 1) * coordinate_sign(s2, 2))
    assert independent(x1, prod)
    x = partition(uniform3, [[0], [1, 2]])
    y = partition(uniform3, [[0, 1], [2]])
    assert meet(x, y) == trivial(uniform3)
    assert not independent(x, y)  # trivial meet alone is not enough


def test_subspace_of_dims():
    s2 = mk_dyadic(2)
    assert subspace_of(trivial(s2)).dim == 1
    assert subspace_of(discrete(s2)).dim == 4
    assert subspace_of(sigma_xi(s2, 1)).dim == 2


def test_sigma_of_examples():
    s2 = mk_dyadic(2)
    one = constant(s2, 1)
    assert sigma_of(span([one])) == trivial(s2)
    x1 = coordinate_sign(s2, 1)
    assert sigma_of(span([x1])) == sigma_xi(s2, 1)


def test_sigma_of_sign_pairing_on_three_coordinates():
    s3 = mk_dyadic(3)
    pair12 = coordinate_sign(s3, 1) * coordinate_sign(s3, 2)
    pair23 = coordinate_sign(s3, 2) * coordinate_sign(s3, 3)
    got = sigma_of(span([pair12, pair23]))
    # oracle: enumerate joint level sets; blocks pair each outcome with its
    # global sign flip
    flip = {o: "".join("+" if c == "-" else "-" for c in o) for o in s3.outcomes}
    index = {o: i for i, o in enumerate(s3.outcomes)}
    want = set()
    for o in s3.outcomes:
        want.add(tuple(sorted((index[o], index[flip[o]]))))
    assert {tuple(b) for b in got.blocks} == want
    assert got.n_blocks == 4
    assert all(len(b) == 2 for b in got.blocks)


def test_sigma_of_roundtrip():
    rng = random.Random(24)
    for _ in range(50):
        space = rand_space(rng, 6)
        x = rand_partition(rng, space)
        assert sigma_of(subspace_of(x)) == x


def test_inf_sup_family():
    s3 = mk_dyadic(3)
    xs = [sigma_xi(s3, k) for k in (1, 2, 3)]
    assert inf_family([xs[0]]) == xs[0]
    assert sup_family(xs) == discrete(s3)
    s2 = mk_dyadic(2)
    x1 = sigma_xi(s2, 1)
    prod = sigma_from_rv(coordinate_sign(s2, 1) * coordinate_sign(s2, 2))
    assert inf_family([x1, prod]) == trivial(s2)
    with pytest.raises(PreconditionError):
        inf_family([])


def test_space_mismatch_raises():
    x = trivial(mk_dyadic(1))
    y = trivial(mk_dyadic(2))
    with pytest.raises(DomainMismatchError):
        meet(x, y)


def test_single_outcome_space_degenerates():
    space = mk_space(["only"], [Fraction(1)])
    x = trivial(space)
    assert x == discrete(space)
    assert meet(x, x) == join(x, x) == x
    assert independent(x, x)
    assert commutes(x, x)
    f = constant(space, 5)
    assert cond_exp(x, f).values == f.values


def test_float_mode_sigma_of_groups_with_tolerance():
    space = mk_space(["a", "b", "c"], [0.25, 0.25, 0.5])
    from noise_lattice.finmeas import RV

    f = RV(space, (1.0, 1.0 + 1e-9, 2.0))
    got = sigma_of_rvs(space, [f])
    assert got == partition(space, [[0, 1], [2]])
