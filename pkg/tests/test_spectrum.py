"""Joint eigenspace decomposition, grading, and the related identities."""

import random
from math import comb

import pytest

from noise_lattice.chaos import first_chaos
from noise_lattice.errors import PreconditionError
from noise_lattice.finmeas import inner, mk_dyadic, walsh_character
from noise_lattice.instances import rand_ntba
from noise_lattice.ntba import NTBA, coarsen, mk_coordinate_ntba, mk_parity_ntba
from noise_lattice.sigma import discrete, sigma_of_rvs, subspace_of, trivial
from noise_lattice.spectrum import (
    chaos_grading,
    k_restriction_additivity,
    sigma_tower_check,
    spectral_decompose,
    verify_spectral_identities,
)


def test_coordinate_two_atoms():
    s2 = mk_dyadic(2)
    D = spectral_decompose(mk_coordinate_ntba(s2))
    assert sorted(p.k for p in D.points) == [0, 1, 1, 2]
    assert len(D.points) == 4
    for p in D.points:
        chi = walsh_character(s2, [i + 1 for i in sorted(p.generator)])
        assert p.eigenspace.dim == 1
        assert p.eigenspace.contains(chi)


def test_trivial_algebra_two_points():
    s2 = mk_dyadic(2)
    B = NTBA(s2, [discrete(s2)])
    D = spectral_decompose(B)
    assert len(D.points) == 2
    assert D.level_dims() == {0: 1, 1: 3}
    constants = next(p for p in D.points if p.k == 0)
    assert constants.eigenspace.dim == 1


def test_coordinate_three_levels():
    D = spectral_decompose(mk_coordinate_ntba(mk_dyadic(3)))
    assert D.level_dims() == {0: 1, 1: 3, 2: 3, 3: 1}


def test_binomial_level_dims_up_to_five():
    for n in range(1, 6):
        D = spectral_decompose(mk_coordinate_ntba(mk_dyadic(n)))
        assert D.level_dims() == {k: comb(n, k) for k in range(n + 1)}


def test_parity_profile_matches_coordinates():
    for n in range(1, 5):
        D = spectral_decompose(mk_parity_ntba(n))
        assert D.level_dims() == {k: comb(n + 1, k) for k in range(n + 2)}
        assert len(D.points) == 1 << (n + 1)


def test_eigenspaces_orthogonal_and_complete():
    rng = random.Random(50)
    for _ in range(10):
        B = rand_ntba(rng, 32)
        D = spectral_decompose(B)
        assert sum(p.eigenspace.dim for p in D.points) == B.space.size
        for i, p in enumerate(D.points):
            for q in D.points[i + 1 :]:
                for a in p.eigenspace.basis:
                    for b in q.eigenspace.basis:
                        assert inner(a, b) == 0


def test_identities_report():
    D = spectral_decompose(mk_coordinate_ntba(mk_dyadic(2)))
    rep = verify_spectral_identities(D)
    assert rep.ok
    # the pattern of the xi_1 point is generated by atom 0
    p = D.point_by_generator({0})
    assert p is not None and p.k == 1
    # the spectral set of the bottom element carries only the constants
    bottom = [q for q in D.points if q.in_spectral_set(frozenset())]
    assert len(bottom) == 1 and bottom[0].k == 0
    s0 = bottom[0].eigenspace
    assert s0.dim == 1 and s0.equals(subspace_of(trivial(D.algebra.space)))


def test_identities_random():
    rng = random.Random(51)
    for _ in range(8):
        B = rand_ntba(rng, 16)
        assert verify_spectral_identities(spectral_decompose(B)).ok


def test_grading_report_and_consistency():
    D = spectral_decompose(mk_coordinate_ntba(mk_dyadic(4)))
    g = chaos_grading(D)
    assert g.levels == {k: comb(4, k) for k in range(5)}
    assert g.classical and g.chaos_agrees


def test_level_one_equals_first_chaos():
    rng = random.Random(52)
    for _ in range(10):
        B = rand_ntba(rng, 32)
        D = spectral_decompose(B)
        h1 = first_chaos(B).h1
        lvl = D.levels.get(1)
        dim = lvl.dim if lvl else 0
        assert dim == h1.dim
        if lvl:
            assert h1.contains_subspace(lvl)


def test_k_additivity_examples():
    B = mk_coordinate_ntba(mk_dyadic(2))
    assert k_restriction_additivity(B, B.element([0]))
    P = mk_parity_ntba(2)
    assert k_restriction_additivity(P, P.element([0, 1]))
    with pytest.raises(PreconditionError):
        k_restriction_additivity(B, B.zero())
    with pytest.raises(PreconditionError):
        k_restriction_additivity(B, B.one())


def test_k_additivity_random():
    rng = random.Random(53)
    done = 0
    while done < 10:
        B = rand_ntba(rng, 32)
        if B.n_atoms < 2:
            continue
        e = B.element([0])
        assert k_restriction_additivity(B, e)
        done += 1


def test_k_monotone_under_coarsening():
    rng = random.Random(54)
    B = mk_coordinate_ntba(mk_dyadic(3))
    B1 = coarsen(B, [[0, 1], [2]])
    D, D1 = spectral_decompose(B), spectral_decompose(B1)
    for p in D.points:
        v = p.eigenspace.basis[0]
        hits = [q for q in D1.points if q.eigenspace.contains(v)]
        assert len(hits) == 1
        assert hits[0].k <= p.k


def test_sigma_tower():
    assert sigma_tower_check(spectral_decompose(mk_coordinate_ntba(mk_dyadic(3))))
    assert sigma_tower_check(spectral_decompose(mk_parity_ntba(3)))
    rng = random.Random(55)
    for _ in range(5):
        assert sigma_tower_check(spectral_decompose(rand_ntba(rng, 32)))


def test_point_order_is_canonical():
    D = spectral_decompose(mk_coordinate_ntba(mk_dyadic(3)))
    n = D.algebra.n_atoms
    bits = [tuple(1 if i in p.generator else 0 for i in range(n)) for p in D.points]
    assert bits == sorted(bits)  # membership bits in atom order
    # rebuilding gives the identical order
    D2 = spectral_decompose(mk_coordinate_ntba(mk_dyadic(3)))
    assert [sorted(p.generator) for p in D.points] == [
        sorted(p.generator) for p in D2.points
    ]


def test_sign_pairing_sigma_from_levels():
    # level-1 of the parity algebra contains the pair signs; the sigma-field
    # generated by all pair signs alone misses the global sign
    P = mk_parity_ntba(3)
    D = spectral_decompose(P)
    lvl1 = D.levels[1]
    pairing = sigma_of_rvs(P.space, lvl1.basis)
    assert pairing == discrete(P.space)  # xi_4 is an atom, so level 1 generates
