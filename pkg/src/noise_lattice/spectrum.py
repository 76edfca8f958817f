"""Joint diagonalization of the commuting projections of a finite algebra.

All conditional expectations Q_x for x in the algebra commute, so the
whole space splits into joint eigenspaces.  Splitting recursively by the
n co-atom projections produces at most 2^n leaves; each leaf carries the
filter {x : the leaf sits inside H_x}, whose generator is recorded as an
atom subset, and the atom count of that generator grades the space.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import ConsistencyError, PreconditionError
from .finmeas import RV, Subspace, indicator, span_on
from .ntba import NTBA, NTBAElement, restrict
from .sigma import SigmaField, cond_exp, sigma_of_rvs, subspace_of

FLOAT_TOL = 1e-9


@dataclass
class SpectralPoint:
    eigenspace: Subspace
    generator: frozenset  # atom indices of the filter generator
    k: int

    def in_spectral_set(self, atomset) -> bool:
        """Whether this point lies in S_x for the element with that atomset."""
        return self.generator <= frozenset(atomset)


@dataclass
class SpectralDecomp:
    algebra: NTBA
    points: list
    levels: dict = field(default_factory=dict)  # k -> Subspace

    def point_by_generator(self, atomset) -> SpectralPoint | None:
        key = frozenset(atomset)
        for p in self.points:
            if p.generator == key:
                return p
        return None

    def level_dims(self) -> dict:
        return {k: v.dim for k, v in sorted(self.levels.items())}


def _split_by(space, part: SigmaField, vecs):
    """Split span(vecs) into the Q_part-invariant and -annihilated parts."""
    imgs = [cond_exp(part, v) for v in vecs]
    rest = [v - w for v, w in zip(vecs, imgs)]
    plus = span_on(space, imgs).basis
    minus = span_on(space, rest).basis
    return plus, minus


def spectral_decompose(algebra: NTBA) -> SpectralDecomp:
    """Recursive splitting of the whole space by the co-atom projections."""
    space = algebra.space
    n = algebra.n_atoms
    if space.mode == "rational":
        start = [indicator(space, [i]) for i in range(space.size)]
    else:
        start = [
            RV(space, tuple(1.0 if i == j else 0.0 for j in range(space.size)))
            for i in range(space.size)
        ]
    leaves = [((), start)]
    for k in range(n):
        part = algebra.coatom(k).realize()
        next_leaves = []
        for bits, vecs in leaves:
            plus, minus = _split_by(space, part, vecs)
            if len(plus) + len(minus) != len(vecs):
                raise ConsistencyError("projection split lost dimensions")
            if plus:
                next_leaves.append((bits + (1,), plus))
            if minus:
                next_leaves.append((bits + (0,), minus))
        leaves = next_leaves
    points = []
    for bits, vecs in leaves:
        gen = frozenset(k for k in range(n) if bits[k] == 0)
        points.append(
            SpectralPoint(span_on(space, vecs), gen, len(gen))
        )
    points.sort(key=lambda p: tuple(1 if i in p.generator else 0 for i in range(n)))
    levels: dict = {}
    for k in sorted({p.k for p in points}):
        vecs = [b for p in points if p.k == k for b in p.eigenspace.basis]
        levels[k] = span_on(space, vecs)
    return SpectralDecomp(algebra, points, levels)


@dataclass
class IdentityReport:
    ok: bool
    failures: list


def verify_spectral_identities(decomp: SpectralDecomp) -> IdentityReport:
    """Audit the decomposition against the defining spectral identities.

    Checks, per element pair, that the spectral sets intersect like the
    lattice meets; per element, that the union of eigenspaces tagged by its
    spectral set recovers the L2 space of the element; and per point, that
    the elements containing it form a filter.
    """
    algebra = decomp.algebra
    n = algebra.n_atoms
    failures = []
    masks = [frozenset(s) for s in _subsets(range(n))]
    spec_sets = {
        m: frozenset(i for i, p in enumerate(decomp.points) if p.in_spectral_set(m))
        for m in masks
    }
    for mx, my in itertools.combinations_with_replacement(masks, 2):
        if spec_sets[mx] & spec_sets[my] != spec_sets[mx & my]:
            failures.append(("meet-of-spectral-sets", mx, my))
    for m in masks:
        vecs = [
            b
            for i in spec_sets[m]
            for b in decomp.points[i].eigenspace.basis
        ]
        got = span_on(algebra.space, vecs) if vecs else Subspace(algebra.space, ())
        want = subspace_of(algebra.element(m).realize())
        if not (got.dim == want.dim and want.contains_subspace(got)):
            failures.append(("spectral-set-subspace", m))
    for i, p in enumerate(decomp.points):
        containing = [m for m in masks if p.in_spectral_set(m)]
        cset = set(containing)
        for mx in containing:
            for my in masks:
                if mx <= my and my not in cset:
                    failures.append(("filter-upward", i, mx, my))
            for my in containing:
                if mx & my not in cset:
                    failures.append(("filter-meet", i, mx, my))
    return IdentityReport(not failures, failures)


def _subsets(items):
    items = list(items)
    for r in range(len(items) + 1):
        yield from itertools.combinations(items, r)


@dataclass
class GradingReport:
    levels: dict  # k -> dimension
    classical: bool
    chaos_agrees: bool


def chaos_grading(decomp: SpectralDecomp) -> GradingReport:
    """Level dimensions and the finiteness-of-K classicality verdict.

    At finite scale K is finite everywhere, so the verdict is always
    classical; it is cross-checked against the first-chaos route, and a
    disagreement raises.
    """
    from .chaos import first_chaos

    dims = decomp.level_dims()
    total = sum(dims.values())
    if total != decomp.algebra.space.size:
        raise ConsistencyError("levels do not fill the space")
    classical = True  # K takes finitely many finite values here
    other = first_chaos(decomp.algebra).classical
    if classical != other:
        raise ConsistencyError("grading and first-chaos verdicts disagree")
    return GradingReport(dims, classical, True)


def _pattern_of(algebra: NTBA, v: RV) -> frozenset | None:
    """Generator atomset of the joint eigenspace containing v, if any."""
    space = algebra.space
    gen = set()
    for k in range(algebra.n_atoms):
        part = algebra.coatom(k).realize()
        img = cond_exp(part, v)
        if _rv_eq(space, img, v):
            continue
        if _rv_eq(space, img, 0 * v):
            gen.add(k)
            continue
        return None
    return frozenset(gen)


def _rv_eq(space, f, g):
    if space.mode == "rational":
        return f.values == g.values
    return max(abs(a - b) for a, b in zip(f.values, g.values)) <= FLOAT_TOL


def k_restriction_additivity(algebra: NTBA, e: NTBAElement) -> bool:
    """Check that the grading adds across the split by e and its complement.

    The restrictions to e and to its complement are decomposed separately;
    products of their eigenvectors (lifted back to the base space) must
    land in joint eigenspaces of the full algebra whose atom count is the
    sum of the factor atom counts.
    """
    if not e.atomset or e.atomset == frozenset(range(algebra.n_atoms)):
        raise PreconditionError("the element must be neither 0 nor 1")
    r1 = restrict(algebra, e)
    r2 = restrict(algebra, e.complement())
    d1 = spectral_decompose(r1.algebra)
    d2 = spectral_decompose(r2.algebra)
    total = 0
    for p1 in d1.points:
        for p2 in d2.points:
            expected_gen = frozenset(
                r1.atom_indices[i] for i in p1.generator
            ) | frozenset(r2.atom_indices[i] for i in p2.generator)
            for b1 in p1.eigenspace.basis:
                for b2 in p2.eigenspace.basis:
                    w = r1.lift_rv(b1) * r2.lift_rv(b2)
                    gen = _pattern_of(algebra, w)
                    if gen is None or gen != expected_gen:
                        return False
                    if len(gen) != p1.k + p2.k:
                        return False
            total += p1.eigenspace.dim * p2.eigenspace.dim
    return total == algebra.space.size


def sigma_tower_check(decomp: SpectralDecomp) -> bool:
    """sigma(level k) must be coarser than sigma(level 1) for every k >= 2."""
    space = decomp.algebra.space
    if 1 not in decomp.levels:
        return all(k < 2 for k in decomp.levels)
    sig1 = sigma_of_rvs(space, decomp.levels[1].basis)
    for k, sub in decomp.levels.items():
        if k < 2 or sub.dim == 0:
            continue
        sigk = sigma_of_rvs(space, sub.basis)
        if not sigk.is_coarser_eq(sig1):
            return False
    return True
