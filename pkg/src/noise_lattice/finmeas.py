"""Finite probability spaces, random variables, and spanned subspaces.

A space carries either exact-rational probabilities (the default for
dyadic constructions) or float probabilities; the mode propagates to every
random variable and every rank/equality decision made downstream.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .errors import CapacityError, DomainMismatchError

MAX_OUTCOMES = 1 << 20
FLOAT_TOL = 1e-9
PROB_SUM_TOL = 1e-12


@dataclass(frozen=True)
class ProbSpace:
    """A finite outcome set with strictly positive probabilities.

    ``probs`` holds Fractions (rational mode) or floats (float mode);
    the two are never mixed within one space.
    """

    outcomes: tuple
    probs: tuple

    def __post_init__(self):
        if len(self.outcomes) != len(self.probs):
            raise ValueError("outcomes and probs must have equal length")
        if not self.outcomes:
            raise ValueError("a probability space needs at least one outcome")
        if len(self.outcomes) > MAX_OUTCOMES:
            raise CapacityError(f"{len(self.outcomes)} outcomes exceed the guard")
        if len(set(self.outcomes)) != len(self.outcomes):
            raise ValueError("outcome identifiers must be unique")
        if self.mode == "rational":
            if any(p <= 0 for p in self.probs):
                raise ValueError("probabilities must be strictly positive")
            if sum(self.probs) != 1:
                raise ValueError("probabilities must sum to exactly 1")
        else:
            if any(p <= 0.0 for p in self.probs):
                raise ValueError("probabilities must be strictly positive")
            if abs(sum(self.probs) - 1.0) > PROB_SUM_TOL:
                raise ValueError("probabilities must sum to 1 within 1e-12")

    @property
    def mode(self) -> str:
        return "rational" if isinstance(self.probs[0], Fraction) else "float"

    @property
    def size(self) -> int:
        return len(self.outcomes)

    def zero(self) -> Fraction | float:
        return Fraction(0) if self.mode == "rational" else 0.0

    def one(self) -> Fraction | float:
        return Fraction(1) if self.mode == "rational" else 1.0


def mk_space(outcomes, probs) -> ProbSpace:
    """Build a space from raw lists; Fractions and ints stay exact."""
    out = []
    for p in probs:
        if isinstance(p, float):
            out.append(p)
        else:
            out.append(Fraction(p))
    if any(isinstance(p, float) for p in out):
        out = [float(p) for p in out]
    return ProbSpace(tuple(outcomes), tuple(out))


def mk_dyadic(n: int) -> ProbSpace:
    """Uniform space on the 2^n sign tuples, lexicographic with + before -."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > 20:
        raise CapacityError("dyadic spaces are guarded at n <= 20")
    outcomes = tuple("".join(t) for t in itertools.product("+-", repeat=n))
    p = Fraction(1, 1 << n)
    return ProbSpace(outcomes, (p,) * (1 << n))


@dataclass(frozen=True)
class RV:
    """A random variable: one real value per outcome."""

    space: ProbSpace
    values: tuple

    def __post_init__(self):
        if len(self.values) != self.space.size:
            raise ValueError("value count must equal outcome count")

    def __add__(self, other: "RV") -> "RV":
        _same_space(self, other)
        return RV(self.space, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "RV") -> "RV":
        _same_space(self, other)
        return RV(self.space, tuple(a - b for a, b in zip(self.values, other.values)))

    def __mul__(self, other):
        if isinstance(other, RV):
            _same_space(self, other)
            return RV(self.space, tuple(a * b for a, b in zip(self.values, other.values)))
        return RV(self.space, tuple(a * other for a in self.values))

    __rmul__ = __mul__

    def __neg__(self) -> "RV":
        return RV(self.space, tuple(-a for a in self.values))

    def mean(self):
        return sum(p * v for p, v in zip(self.space.probs, self.values))


def _same_space(f, g):
    if f.space != g.space:
        raise DomainMismatchError("operands live on different spaces")


def constant(space: ProbSpace, c) -> RV:
    c = Fraction(c) if space.mode == "rational" and not isinstance(c, Fraction) else c
    if space.mode == "float":
        c = float(c)
    return RV(space, (c,) * space.size)


def indicator(space: ProbSpace, idxs) -> RV:
    one, zero = space.one(), space.zero()
    vals = [zero] * space.size
    for i in idxs:
        vals[i] = one
    return RV(space, tuple(vals))


def coordinate_sign(space: ProbSpace, k: int) -> RV:
    """The k-th sign coordinate (1-based) on a dyadic space."""
    vals = []
    for o in space.outcomes:
        ch = o[k - 1]
        if ch not in "+-":
            raise ValueError("coordinate_sign needs sign-string outcome ids")
        vals.append(1 if ch == "+" else -1)
    if space.mode == "rational":
        return RV(space, tuple(Fraction(v) for v in vals))
    return RV(space, tuple(float(v) for v in vals))


def walsh_character(space: ProbSpace, ks) -> RV:
    """Product of sign coordinates over the index set ks (1-based)."""
    f = constant(space, 1)
    for k in ks:
        f = f * coordinate_sign(space, k)
    return f


def inner(f: RV, g: RV):
    """The probability-weighted inner product E[fg]."""
    _same_space(f, g)
    if f.space.mode == "rational":
        return sum(p * a * b for p, a, b in zip(f.space.probs, f.values, g.values))
    p = np.asarray(f.space.probs)
    return float(np.dot(p * np.asarray(f.values), np.asarray(g.values)))


def norm2(f: RV):
    return inner(f, f)


class Subspace:
    """A linear subspace of L2 of a space, held as an orthogonal basis.

    In rational mode basis vectors are exactly pairwise orthogonal and
    their exact squared norms are stored alongside (unit norms would need
    square roots); in float mode the basis is orthonormal within tol.
    """

    def __init__(self, space: ProbSpace, basis, norms2=None, tol: float = FLOAT_TOL):
        self.space = space
        self.basis = tuple(basis)
        self.tol = tol
        if space.mode == "rational":
            if norms2 is None:
                norms2 = tuple(norm2(b) for b in self.basis)
            self.norms2 = tuple(norms2)
        else:
            self.norms2 = tuple(1.0 for _ in self.basis)
        self._rref = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    def project(self, f: RV) -> RV:
        """Orthogonal projection of f onto this subspace."""
        if f.space != self.space:
            raise DomainMismatchError("operands live on different spaces")
        out = constant(self.space, 0)
        for b, n2 in zip(self.basis, self.norms2):
            coeff = inner(f, b) / n2 if self.space.mode == "rational" else inner(f, b)
            out = out + coeff * b
        return out

    def contains(self, f: RV) -> bool:
        r = f - self.project(f)
        if self.space.mode == "rational":
            return all(v == 0 for v in r.values)
        return float(np.sqrt(max(norm2(r), 0.0))) <= self.tol

    def canonical_key(self):
        """Canonical row-reduced form of the basis; equal iff same span."""
        if self.space.mode != "rational":
            raise ValueError("canonical keys exist only in rational mode")
        if self._rref is None:
            self._rref = linalg.exact_rref([b.values for b in self.basis])
        return self._rref

    def equals(self, other: "Subspace") -> bool:
        if self.space != other.space:
            raise DomainMismatchError("subspaces on different spaces")
        if self.dim != other.dim:
            return False
        if self.space.mode == "rational":
            return self.canonical_key() == other.canonical_key()
        return all(other.contains(b) for b in self.basis)

    def contains_subspace(self, other: "Subspace") -> bool:
        if self.space.mode == "rational":
            rows = [b.values for b in self.basis] + [b.values for b in other.basis]
            return linalg.exact_rank(rows) == self.dim
        return all(self.contains(b) for b in other.basis)


def span(vs, tol: float = FLOAT_TOL, space: ProbSpace | None = None) -> Subspace:
    """Orthogonal basis of the linear span; empty input gives dimension 0."""
    vs = list(vs)
    if not vs:
        if space is None:
            raise ValueError("empty span needs an explicit space")
        return Subspace(space, ())
    space = vs[0].space
    for v in vs[1:]:
        _same_space(vs[0], v)
    return span_on(space, vs, tol)


def span_on(space: ProbSpace, vs, tol: float = FLOAT_TOL) -> Subspace:
    vs = list(vs)
    if space.mode == "rational":
        basis, norms = linalg.exact_orthogonalize(
            [v.values for v in vs], list(space.probs)
        )
        rvs = [RV(space, tuple(b)) for b in basis]
        return Subspace(space, rvs, norms2=norms)
    basis = linalg.float_orthonormalize(
        [v.values for v in vs], list(space.probs), tol
    )
    return Subspace(space, [RV(space, tuple(float(x) for x in b)) for b in basis], tol=tol)


@dataclass(frozen=True)
class SpaceProduct:
    """Product of two spaces together with the factor embeddings."""

    left: ProbSpace
    right: ProbSpace
    space: ProbSpace

    def index(self, ia: int, ib: int) -> int:
        return ia * self.right.size + ib

    def lift_left(self, f: RV) -> RV:
        if f.space != self.left:
            raise DomainMismatchError("lift_left expects an RV on the left factor")
        vals = [f.values[ia] for ia in range(self.left.size) for _ in range(self.right.size)]
        return RV(self.space, tuple(vals))

    def lift_right(self, g: RV) -> RV:
        if g.space != self.right:
            raise DomainMismatchError("lift_right expects an RV on the right factor")
        vals = [g.values[ib] for _ in range(self.left.size) for ib in range(self.right.size)]
        return RV(self.space, tuple(vals))


def product(a: ProbSpace, b: ProbSpace) -> SpaceProduct:
    """Cartesian product space; probabilities multiply, inner products factor."""
    if a.size * b.size > MAX_OUTCOMES:
        raise CapacityError("product space exceeds the outcome guard")
    if (a.mode == "rational") != (b.mode == "rational"):
        raise DomainMismatchError("cannot mix rational and float factors")
    outcomes = tuple(f"{oa},{ob}" for oa in a.outcomes for ob in b.outcomes)
    probs = tuple(pa * pb for pa in a.probs for pb in b.probs)
    return SpaceProduct(a, b, ProbSpace(outcomes, probs))


def space_to_json(space: ProbSpace) -> dict:
    if space.mode == "rational":
        probs = [f"{p.numerator}/{p.denominator}" for p in space.probs]
    else:
        probs = [float(p) for p in space.probs]
    return {"outcomes": list(space.outcomes), "probs": probs}


def space_from_json(obj: dict) -> ProbSpace:
    probs = []
    for p in obj["probs"]:
        if isinstance(p, str):
            probs.append(Fraction(p))
        else:
            probs.append(p)
    return mk_space(obj["outcomes"], probs)


def load_space(path: str) -> ProbSpace:
    with open(path, encoding="utf-8") as fh:
        return space_from_json(json.load(fh))
