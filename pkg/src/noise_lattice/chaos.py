"""First chaos space, classicality verdicts, and related operations.

The first chaos of an algebra B is the set of f with f = Q_x f + Q_x' f
for every x in B.  It suffices to intersect the constraint kernels over
the co-atoms (one per atom); agreement with the full-element intersection
is asserted by the membership report and in the test suite rather than
assumed silently.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .errors import ConsistencyError, DomainMismatchError, PreconditionError
from .finmeas import RV, Subspace, norm2, span_on
from .ntba import NTBA, NTBAElement
from .sigma import SigmaField, cond_exp, discrete, join, meet, sigma_of_rvs, trivial

FLOAT_TOL = 1e-9


@dataclass
class ChaosResult:
    algebra: NTBA
    h1: Subspace
    classical: bool
    black: bool
    generated: SigmaField


def _constraint_images(algebra: NTBA, k: int, vecs):
    """Images (I - Q_x - Q_x')v for the k-th co-atom x' = atom k."""
    x = algebra.coatom(k).realize()
    xc = algebra.atoms[k]
    out = []
    for v in vecs:
        out.append(v - cond_exp(x, v) - cond_exp(xc, v))
    return out


def first_chaos(algebra: NTBA) -> ChaosResult:
    """Compute the first chaos by intersecting co-atom constraint kernels."""
    space = algebra.space
    if space.mode == "rational":
        basis = _kernel_intersection_exact(algebra)
    else:
        basis = _kernel_intersection_float(algebra)
    h1 = span_on(space, basis)
    generated = sigma_of_rvs(space, h1.basis)
    classical = generated == discrete(space)
    black = h1.dim == 0 and space.size > 1
    return ChaosResult(algebra, h1, classical, black, generated)


def _kernel_intersection_exact(algebra: NTBA):
    space = algebra.space
    from .finmeas import indicator

    vecs = [indicator(space, [i]) for i in range(space.size)]
    for k in range(algebra.n_atoms):
        if not vecs:
            break
        images = _constraint_images(algebra, k, vecs)
        rows = [
            [images[d].values[i] for d in range(len(vecs))]
            for i in range(space.size)
        ]
        coeffs = linalg.exact_nullspace(rows)
        if coeffs is None:  # no nonzero constraint rows: kernel is everything
            continue
        new_vecs = []
        for c in coeffs:
            v = None
            for cd, vec in zip(c, vecs):
                if cd:
                    term = cd * vec
                    v = term if v is None else v + term
            if v is not None:
                new_vecs.append(v)
        vecs = span_on(space, new_vecs).basis if new_vecs else []
    return vecs


def _kernel_intersection_float(algebra: NTBA):
    space = algebra.space
    vecs = [
        RV(space, tuple(1.0 if i == j else 0.0 for j in range(space.size)))
        for i in range(space.size)
    ]
    for k in range(algebra.n_atoms):
        if not vecs:
            break
        images = _constraint_images(algebra, k, vecs)
        rows = np.array([[im.values[i] for im in images] for i in range(space.size)])
        coeffs = linalg.float_nullspace(rows)
        if coeffs is None:
            continue
        new_vecs = []
        for c in coeffs:
            vals = np.zeros(space.size)
            for cd, vec in zip(c, vecs):
                vals += cd * np.asarray(vec.values)
            new_vecs.append(RV(space, tuple(float(x) for x in vals)))
        vecs = span_on(space, new_vecs).basis if new_vecs else []
    return vecs


def _rv_equal(space, f: RV, g: RV) -> bool:
    if space.mode == "rational":
        return f.values == g.values
    return max(abs(a - b) for a, b in zip(f.values, g.values)) <= FLOAT_TOL


@dataclass
class MembershipReport:
    member: bool
    cond_pairwise_split: bool  # f = Q_x f + Q_x' f for all x
    cond_disjoint_additive: bool  # Q_{x v y} f = Q_x f + Q_y f when x ^ y = 0
    cond_modular: bool  # Q_{x v y} f + Q_{x ^ y} f = Q_x f + Q_y f, Q_0 f = 0


def chaos_membership(algebra: NTBA, f: RV) -> MembershipReport:
    """Evaluate the three equivalent membership conditions independently.

    The conditions must agree; disagreement means the library itself is
    inconsistent and raises rather than returning a verdict.
    """
    if f.space != algebra.space:
        raise DomainMismatchError("RV lives on a different space")
    space = algebra.space
    elements = list(algebra.elements())
    parts = [e.realize() for e in elements]
    proj_cache: dict = {}

    def q(part: SigmaField) -> RV:
        got = proj_cache.get(part)
        if got is None:
            got = cond_exp(part, f)
            proj_cache[part] = got
        return got

    top = discrete(space)
    bot = trivial(space)

    cond_a = True
    for e, part in zip(elements, parts):
        comp = parts[elements.index(e.complement())]
        if not _rv_equal(space, f, q(part) + q(comp)):
            cond_a = False
            break

    cond_b = True
    for px, py in itertools.combinations_with_replacement(parts, 2):
        if meet(px, py) != bot:
            continue
        if not _rv_equal(space, q(join(px, py)), q(px) + q(py)):
            cond_b = False
            break

    q0 = q(bot)
    cond_c = _rv_equal(space, q0, 0 * f)
    if cond_c:
        for px, py in itertools.combinations_with_replacement(parts, 2):
            lhs = q(join(px, py)) + q(meet(px, py))
            if not _rv_equal(space, lhs, q(px) + q(py)):
                cond_c = False
                break

    if not (cond_a == cond_b == cond_c):
        raise ConsistencyError(
            f"membership conditions disagree: {cond_a}, {cond_b}, {cond_c}"
        )
    return MembershipReport(cond_a, cond_a, cond_b, cond_c)


@dataclass
class SplitResult:
    ok: bool
    parts: list | None
    max_norm: float
    best_parts: list
    epsilon: float


def _set_partitions(items):
    """All partitions of a list into nonempty groups."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for sub in _set_partitions(rest):
        for i in range(len(sub)):
            yield sub[:i] + [[first] + sub[i]] + sub[i + 1 :]
        yield [[first]] + sub


def atomless_split(algebra: NTBA, f: RV, epsilon) -> SplitResult:
    """Look for elements x_1,...,x_m covering 1 with all ||Q_{x_i} f|| <= eps.

    A finite algebra is never atomless, so failure for small eps is the
    expected outcome and is reported (with the best achievable max-norm)
    rather than raised.  Groups of atoms suffice: shrinking an element
    never increases the projection norm, so an optimal cover may be taken
    to be a partition of the atom set.
    """
    space = algebra.space
    q0 = cond_exp(trivial(space), f)
    if space.mode == "rational":
        if any(v != 0 for v in q0.values):
            raise PreconditionError("atomless_split needs a zero-mean input")
    else:
        if any(abs(v) > FLOAT_TOL for v in q0.values):
            raise PreconditionError("atomless_split needs a zero-mean input")
    n = algebra.n_atoms
    sq: dict = {}

    def group_sq(group):
        key = frozenset(group)
        got = sq.get(key)
        if got is None:
            part = algebra.element(key).realize()
            got = norm2(cond_exp(part, f))
            sq[key] = got
        return got

    if n <= 12:
        best = None
        best_parts = None
        for candidate in _set_partitions(list(range(n))):
            worst = max(group_sq(g) for g in candidate)
            if best is None or worst < best:
                best, best_parts = worst, candidate
    else:
        best, best_parts = _anneal_split(algebra, group_sq, n)

    eps_sq = (
        Fraction(epsilon) ** 2 if space.mode == "rational" else float(epsilon) ** 2
    )
    ok = best <= eps_sq
    elements = [algebra.element(g) for g in best_parts]
    return SplitResult(
        ok,
        elements if ok else None,
        float(best) ** 0.5,
        elements,
        float(epsilon),
    )


def _anneal_split(algebra: NTBA, group_sq, n, seed: int = 0, steps: int = 2000):
    import random

    rng = random.Random(seed)
    assign = [rng.randrange(n) for _ in range(n)]

    def parts_of(a):
        groups: dict = {}
        for i, g in enumerate(a):
            groups.setdefault(g, []).append(i)
        return list(groups.values())

    def cost(a):
        return max(group_sq(g) for g in parts_of(a))

    cur = cost(assign)
    best, best_assign = cur, list(assign)
    for step in range(steps):
        i = rng.randrange(n)
        old = assign[i]
        assign[i] = rng.randrange(n)
        new = cost(assign)
        accept = new <= cur or rng.random() < 0.5 * (1 - step / steps)
        if accept:
            cur = new
            if new < best:
                best, best_assign = new, list(assign)
        else:
            assign[i] = old
    return best, parts_of(best_assign)


def up_down_roundtrip(
    algebra: NTBA, e: NTBAElement, chaos: ChaosResult | None = None
) -> bool:
    """Project the first chaos by Q_x, regenerate, and compare with x."""
    if chaos is None:
        chaos = first_chaos(algebra)
    if not chaos.classical:
        raise PreconditionError("the round trip needs a classical algebra")
    x = e.realize()
    images = [cond_exp(x, b) for b in chaos.h1.basis]
    return sigma_of_rvs(algebra.space, images) == x
