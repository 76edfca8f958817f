"""Noise-type Boolean algebras over finite spaces, presented by atoms.

The atoms are mutually independent sigma-fields whose join is the discrete
sigma-field; every element is the join of a subset of atoms, so the
element lattice is the powerset Boolean algebra on the atom indices.
``validate_family`` audits an arbitrary family of sigma-fields against the
defining conditions instead (sublattice, distributivity, complements,
independence) and reports the first failure with a witness.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import CapacityError, DomainMismatchError, PreconditionError
from .finmeas import RV, ProbSpace, mk_space
from .sigma import (
    SigmaField,
    discrete,
    independent,
    join,
    meet,
    partition,
    trivial,
)

JOINT_CELL_GUARD = 1 << 20


class NTBA:
    """A noise-type Boolean algebra given by its ordered list of atoms."""

    def __init__(self, space: ProbSpace, atoms, validate: bool = True):
        self.space = space
        self.atoms = tuple(atoms)
        for a in self.atoms:
            if a.space != space:
                raise DomainMismatchError("atom on a different space")
        if validate:
            problem = self._independence_problem()
            if problem is not None:
                raise ValueError(problem)

    @property
    def n_atoms(self) -> int:
        return len(self.atoms)

    def _independence_problem(self):
        if not self.atoms:
            return "an atom presentation needs at least one atom"
        for a in self.atoms:
            if a.n_blocks == 1:
                return "atoms must differ from the trivial sigma-field"
        cells = 1
        for a in self.atoms:
            cells *= a.n_blocks
        if cells > JOINT_CELL_GUARD:
            raise CapacityError("joint independence check exceeds the guard")
        space = self.space
        lookups = [a.block_of() for a in self.atoms]
        joint = {}
        for i in range(space.size):
            key = tuple(lk[i] for lk in lookups)
            joint[key] = joint.get(key, space.zero()) + space.probs[i]
        block_probs = [
            [a.block_prob(bi) for bi in range(a.n_blocks)] for a in self.atoms
        ]
        exact = space.mode == "rational"
        for key in itertools.product(*(range(a.n_blocks) for a in self.atoms)):
            expected = space.one()
            for k, bi in enumerate(key):
                expected *= block_probs[k][bi]
            got = joint.get(key, space.zero())
            if exact:
                bad = got != expected
            else:
                bad = abs(got - expected) > 1e-9
            if bad:
                return f"atoms are not mutually independent at block tuple {key}"
        if len(joint) != space.size:
            return "the join of the atoms is not the discrete sigma-field"
        return None

    def element(self, atomset) -> "NTBAElement":
        aset = frozenset(atomset)
        if not aset <= set(range(self.n_atoms)):
            raise ValueError("atomset contains unknown atom indices")
        return NTBAElement(self, aset)

    def zero(self) -> "NTBAElement":
        return self.element(())

    def one(self) -> "NTBAElement":
        return self.element(range(self.n_atoms))

    def elements(self):
        """All 2^n elements, by increasing atom-index bitmask."""
        n = self.n_atoms
        for mask in range(1 << n):
            yield self.element(i for i in range(n) if mask >> i & 1)

    def coatom(self, k: int) -> "NTBAElement":
        return self.element(i for i in range(self.n_atoms) if i != k)


@dataclass(frozen=True)
class NTBAElement:
    algebra: NTBA
    atomset: frozenset

    def realize(self) -> SigmaField:
        """The sigma-field this element stands for: the join of its atoms."""
        out = trivial(self.algebra.space)
        for i in sorted(self.atomset):
            out = join(out, self.algebra.atoms[i])
        return out

    def complement(self) -> "NTBAElement":
        full = set(range(self.algebra.n_atoms))
        return NTBAElement(self.algebra, frozenset(full - self.atomset))

    def meet(self, other: "NTBAElement") -> "NTBAElement":
        return NTBAElement(self.algebra, self.atomset & other.atomset)

    def join(self, other: "NTBAElement") -> "NTBAElement":
        return NTBAElement(self.algebra, self.atomset | other.atomset)

    def __eq__(self, other):
        return (
            isinstance(other, NTBAElement)
            and self.algebra is other.algebra
            and self.atomset == other.atomset
        )

    def __hash__(self):
        return hash((id(self.algebra), self.atomset))


def mk_coordinate_ntba(space: ProbSpace) -> NTBA:
    """Atoms sigma(xi_1), ..., sigma(xi_n) on a dyadic space."""
    n = len(space.outcomes[0])
    atoms = []
    for k in range(1, n + 1):
        plus = [i for i, o in enumerate(space.outcomes) if o[k - 1] == "+"]
        minus = [i for i in range(space.size) if i not in set(plus)]
        atoms.append(partition(space, [plus, minus]))
    return NTBA(space, atoms)


def mk_parity_ntba(n: int, space: ProbSpace | None = None) -> NTBA:
    """Atoms sigma(xi_1 xi_2), ..., sigma(xi_n xi_{n+1}), sigma(xi_{n+1}).

    Lives on the dyadic space with n+1 coordinates; the n product-sign
    atoms plus the last coordinate are mutually independent and generate
    everything, yet the product signs alone do not.
    """
    from .finmeas import mk_dyadic

    if n < 1:
        raise ValueError("n must be >= 1")
    if space is None:
        space = mk_dyadic(n + 1)
    atoms = []
    for k in range(1, n + 1):
        same = [i for i, o in enumerate(space.outcomes) if o[k - 1] == o[k]]
        diff = [i for i in range(space.size) if i not in set(same)]
        atoms.append(partition(space, [same, diff]))
    plus = [i for i, o in enumerate(space.outcomes) if o[n] == "+"]
    minus = [i for i in range(space.size) if i not in set(plus)]
    atoms.append(partition(space, [plus, minus]))
    return NTBA(space, atoms)


@dataclass
class FamilyVerdict:
    valid: bool
    reason: str | None = None
    witness: tuple | None = None

    def __bool__(self):
        return self.valid


def validate_family(space: ProbSpace, elems) -> FamilyVerdict:
    """Audit a family of sigma-fields against the defining conditions.

    Checks, in order: 0 and 1 are present; meet- and join-closure;
    distributivity over element triples; every element has a complement in
    the family; each element is independent of its complement.  Triples are
    checked exhaustively for families of at most 64 elements, and on 1000
    deterministically seeded samples above that.
    """
    import random

    family = []
    for e in elems:
        if e.space != space:
            raise DomainMismatchError("family member on a different space")
        if e not in family:
            family.append(e)
    fam_set = set(family)
    if trivial(space) not in fam_set:
        return FamilyVerdict(False, "missing the trivial sigma-field", ())
    if discrete(space) not in fam_set:
        return FamilyVerdict(False, "missing the discrete sigma-field", ())
    for x, y in itertools.combinations(family, 2):
        if meet(x, y) not in fam_set:
            return FamilyVerdict(False, "not closed under meet", (x, y))
        if join(x, y) not in fam_set:
            return FamilyVerdict(False, "not closed under join", (x, y))
    if len(family) <= 64:
        triples = itertools.product(family, repeat=3)
    else:
        rng = random.Random(0)
        triples = (tuple(rng.choice(family) for _ in range(3)) for _ in range(1000))
    for x, y, z in triples:
        left = meet(x, join(y, z))
        right = join(meet(x, y), meet(x, z))
        if left != right:
            return FamilyVerdict(False, "distributivity fails", (x, y, z))
    bot, top = trivial(space), discrete(space)
    for x in family:
        comp = None
        for y in family:
            if meet(x, y) == bot and join(x, y) == top:
                comp = y
                break
        if comp is None:
            return FamilyVerdict(False, "element without complement", (x,))
        if not independent(x, comp):
            return FamilyVerdict(
                False, "complement pair not independent", (x, comp)
            )
    return FamilyVerdict(True)


@dataclass
class Restriction:
    """restrict() result: the quotient algebra plus the lifting maps."""

    algebra: NTBA
    base_space: ProbSpace
    blocks: tuple  # quotient outcome -> original outcome indices
    atom_indices: tuple  # result atom -> original atom index

    def lift_rv(self, f: RV) -> RV:
        """Extend an RV on the quotient to the base space, constant on blocks."""
        if f.space != self.algebra.space:
            raise DomainMismatchError("lift_rv expects an RV on the quotient")
        vals = [None] * self.base_space.size
        for qi, block in enumerate(self.blocks):
            for i in block:
                vals[i] = f.values[qi]
        return RV(self.base_space, tuple(vals))


def restrict(algebra: NTBA, e: NTBAElement) -> Restriction:
    """The algebra of elements below e, on the quotient probability space.

    The new outcomes are the blocks of the sigma-field e realizes; the new
    atoms are e's atoms viewed as partitions of those blocks.  The empty
    element is rejected: its quotient is the one-outcome space on which
    every lattice question degenerates.
    """
    if not e.atomset:
        raise PreconditionError("restrict needs an element with at least one atom")
    space = algebra.space
    x = e.realize()
    out_ids = tuple("|".join(space.outcomes[i] for i in b) for b in x.blocks)
    probs = tuple(
        sum(space.probs[i] for i in b) for b in x.blocks
    )
    qspace = mk_space(out_ids, probs)
    atom_indices = tuple(sorted(e.atomset))
    new_atoms = []
    for ai in atom_indices:
        lookup = algebra.atoms[ai].block_of()
        groups = {}
        for qi, block in enumerate(x.blocks):
            groups.setdefault(lookup[block[0]], []).append(qi)
        new_atoms.append(partition(qspace, groups.values()))
    return Restriction(NTBA(qspace, new_atoms), space, x.blocks, atom_indices)


def ntba_to_json(algebra: NTBA) -> dict:
    from .finmeas import space_to_json
    from .sigma import partition_to_json

    return {
        "space": space_to_json(algebra.space),
        "atoms": [partition_to_json(a) for a in algebra.atoms],
    }


def ntba_from_json(obj: dict) -> NTBA:
    from .finmeas import space_from_json
    from .sigma import partition_from_json

    space = space_from_json(obj["space"])
    atoms = [partition_from_json(space, a) for a in obj["atoms"]]
    return NTBA(space, atoms)


def coarsen(algebra: NTBA, groups) -> NTBA:
    """Sub-algebra whose atoms are joins of the given atom-index groups."""
    seen = set()
    atoms = []
    for g in groups:
        g = tuple(sorted(g))
        if not g or seen & set(g):
            raise ValueError("groups must be disjoint and nonempty")
        seen.update(g)
        atoms.append(algebra.element(g).realize())
    if seen != set(range(algebra.n_atoms)):
        raise ValueError("groups must cover all atoms")
    return NTBA(algebra.space, atoms)
