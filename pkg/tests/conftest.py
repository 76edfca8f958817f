"""Shared oracles for the test suite.

These deliberately recompute library results by other routes: sigma-fields
as explicit set systems, projections as dense matrices, kernels by float
SVD.  Tests compare the production path against these.
"""

from fractions import Fraction

import pytest

from noise_lattice.finmeas import ProbSpace, mk_space
from noise_lattice.sigma import SigmaField, partition


def measurable_sets(x: SigmaField) -> set:
    """All measurable sets of a partition, as frozensets of outcome indices."""
    out = set()
    nb = x.n_blocks
    for mask in range(1 << nb):
        s = frozenset(
            i for bi in range(nb) if mask >> bi & 1 for i in x.blocks[bi]
        )
        out.add(s)
    return out


def partition_from_sets(space: ProbSpace, sets) -> SigmaField:
    """The partition whose measurable sets are exactly the given system."""
    n = space.size
    blocks = []
    seen = set()
    for i in range(n):
        if i in seen:
            continue
        block = set(range(n))
        for s in sets:
            block &= s if i in s else set(range(n)) - s
        blocks.append(sorted(block))
        seen |= block
    return partition(space, blocks)


def meet_oracle(x: SigmaField, y: SigmaField) -> SigmaField:
    """Intersection sigma-field computed on raw set systems."""
    return partition_from_sets(x.space, measurable_sets(x) & measurable_sets(y))


def join_oracle(x: SigmaField, y: SigmaField) -> SigmaField:
    """Generated sigma-field: close the union of the set systems."""
    sets = measurable_sets(x) | measurable_sets(y)
    return partition_from_sets(x.space, sets)


def projection_matrix(x: SigmaField):
    """Dense conditional-expectation matrix (rows: output coordinates)."""
    space = x.space
    n = space.size
    rows = [[Fraction(0)] * n for _ in range(n)]
    for b in x.blocks:
        mass = sum(space.probs[i] for i in b)
        for i in b:
            for j in b:
                rows[i][j] = space.probs[j] / mass
    return rows


def mat_mul(a, b):
    n = len(a)
    return [
        [sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)]
        for i in range(n)
    ]


def mat_vec(a, v):
    return [sum(r[j] * v[j] for j in range(len(v))) for r in a]


@pytest.fixture
def uniform3() -> ProbSpace:
    return mk_space(["a", "b", "c"], [Fraction(1, 3)] * 3)
