"""Seeded random instances for the property suites.

Everything takes a ``random.Random`` so the check runner and the tests can
reproduce any failure from (seed, case index) alone.  Independent pairs
and mutually independent atom families are built on product spaces, where
independence holds by construction.
"""

from __future__ import annotations

from fractions import Fraction

from .finmeas import ProbSpace, RV, mk_space, product
from .ntba import NTBA
from .sigma import SigmaField, lift_partition, partition


def rand_space(rng, max_size: int = 5, mode: str = "rational") -> ProbSpace:
    n = rng.randint(2, max_size)
    weights = [rng.randint(1, 9) for _ in range(n)]
    total = sum(weights)
    outcomes = [f"w{i}" for i in range(n)]
    if mode == "rational":
        return mk_space(outcomes, [Fraction(w, total) for w in weights])
    return mk_space(outcomes, [w / total for w in weights])


def rand_partition(rng, space: ProbSpace) -> SigmaField:
    n = space.size
    n_blocks = rng.randint(1, n)
    labels = list(range(n_blocks)) + [rng.randrange(n_blocks) for _ in range(n - n_blocks)]
    rng.shuffle(labels)
    groups: dict = {}
    for i, lab in enumerate(labels):
        groups.setdefault(lab, []).append(i)
    return partition(space, groups.values())


def rand_coarsening(rng, part: SigmaField) -> SigmaField:
    """A partition coarser than the given one (merge blocks at random)."""
    n = part.n_blocks
    n_groups = rng.randint(1, n)
    labels = list(range(n_groups)) + [rng.randrange(n_groups) for _ in range(n - n_groups)]
    rng.shuffle(labels)
    merged: dict = {}
    for bi, lab in enumerate(labels):
        merged.setdefault(lab, []).extend(part.blocks[bi])
    return partition(part.space, merged.values())


def rand_rv(rng, space: ProbSpace, zero_mean: bool = False) -> RV:
    if space.mode == "rational":
        vals = [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(space.size)]
        f = RV(space, tuple(vals))
        if zero_mean:
            m = f.mean()
            f = RV(space, tuple(v - m for v in f.values))
    else:
        vals = [rng.uniform(-3.0, 3.0) for _ in range(space.size)]
        f = RV(space, tuple(vals))
        if zero_mean:
            m = f.mean()
            f = RV(space, tuple(v - m for v in f.values))
    return f


def rand_independent_pair(rng, mode: str = "rational"):
    """(space, x, y) with x, y independent by the product construction."""
    prod = product(rand_space(rng, 4, mode), rand_space(rng, 4, mode))
    x = lift_partition(prod, rand_partition(rng, prod.left), "left")
    y = lift_partition(prod, rand_partition(rng, prod.right), "right")
    return prod, x, y


def rand_ntba(rng, max_outcomes: int = 64, mode: str = "rational") -> NTBA:
    """Mutually independent atoms on a product of small random spaces."""
    sizes = []
    total = 1
    n_factors = rng.randint(1, 4)
    for _ in range(n_factors):
        s = rng.randint(2, 4)
        if total * s > max_outcomes:
            break
        sizes.append(s)
        total *= s
    if not sizes:
        sizes = [2]
    factors = []
    for s in sizes:
        weights = [rng.randint(1, 9) for _ in range(s)]
        tw = sum(weights)
        if mode == "rational":
            probs = [Fraction(w, tw) for w in weights]
        else:
            probs = [w / tw for w in weights]
        factors.append(mk_space([f"f{i}" for i in range(s)], probs))
    space = factors[0]
    lifted = [partition(space, [[i] for i in range(space.size)])]
    for nxt in factors[1:]:
        prod = product(space, nxt)
        lifted = [lift_partition(prod, p, "left") for p in lifted]
        lifted.append(
            lift_partition(
                prod, partition(nxt, [[i] for i in range(nxt.size)]), "right"
            )
        )
        space = prod.space
    return NTBA(space, lifted)


def rand_element(rng, algebra: NTBA):
    return algebra.element(
        i for i in range(algebra.n_atoms) if rng.random() < 0.5
    )


def rand_atom_groups(rng, algebra: NTBA) -> list:
    """A random partition of the atom indices into nonempty groups."""
    n = algebra.n_atoms
    n_groups = rng.randint(1, n)
    labels = list(range(n_groups)) + [rng.randrange(n_groups) for _ in range(n - n_groups)]
    rng.shuffle(labels)
    groups: dict = {}
    for i, lab in enumerate(labels):
        groups.setdefault(lab, []).append(i)
    return list(groups.values())
