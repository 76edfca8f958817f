"""Exact symbolic model of the countable sign-product algebra.

The ambient probability space is the infinite sequence of independent
signs xi_1, xi_2, ...  Two families of sigma-fields matter:

* tails t(m) generated by xi_m, xi_{m+1}, ... (so t(1) is everything), and
* pair signs y(k) generated by the single product xi_k xi_{k+1}.

The algebra B consists of all joins of finitely many y(k) with at most one
tail; it is Boolean-isomorphic to the finite/cofinite algebra on the
positive integers.  Its monotone-limit closure adds exactly the joins of
y(k) over infinite index sets, which have no tail and, famously, fall
short of the corresponding tails:  sup_k y(k) is a proper sub-sigma-field
of t(1) (a measurable function of all pair signs cannot recover the signs
themselves).  Elements are kept in a canonical (tail, index set) form,
index sets being eventually periodic bit sequences, so equality is
syntactic and all lattice operations are exact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd

from .errors import PreconditionError, UnsupportedSequenceError


# ---------------------------------------------------------------------------
# Eventually periodic subsets of {1, 2, 3, ...}


@dataclass(frozen=True)
class NatSet:
    """An eventually periodic set of positive integers.

    ``pre`` lists the membership bits of positions 1..len(pre); after that
    the bits of ``per`` repeat forever.  The canonical form (primitive
    period, shortest preperiod) is unique, so dataclass equality decides
    set equality.  Construct through ``natset``.
    """

    pre: tuple
    per: tuple

    def bit(self, p: int) -> int:
        if p <= 0:
            raise ValueError("positions start at 1")
        if p <= len(self.pre):
            return self.pre[p - 1]
        return self.per[(p - len(self.pre) - 1) % len(self.per)]

    def __contains__(self, p: int) -> bool:
        return self.bit(p) == 1

    @property
    def is_finite(self) -> bool:
        return self.per == (0,)

    @property
    def is_cofinite(self) -> bool:
        return self.per == (1,)

    @property
    def is_empty(self) -> bool:
        return self.per == (0,) and not any(self.pre)

    def indices_up_to(self, n: int) -> list:
        return [p for p in range(1, n + 1) if self.bit(p)]

    def finite_indices(self) -> tuple:
        if not self.is_finite:
            raise ValueError("the set is infinite")
        return tuple(p for p in range(1, len(self.pre) + 1) if self.pre[p - 1])

    def max_or_zero(self) -> int:
        """Largest member of a finite set, 0 when empty."""
        return max(self.finite_indices(), default=0)

    def union(self, other: "NatSet") -> "NatSet":
        return _binop(self, other, lambda a, b: a | b)

    def intersect(self, other: "NatSet") -> "NatSet":
        return _binop(self, other, lambda a, b: a & b)

    def minus(self, other: "NatSet") -> "NatSet":
        return _binop(self, other, lambda a, b: a & (1 - b))

    def complement(self) -> "NatSet":
        return natset([1 - b for b in self.pre], [1 - b for b in self.per])

    def __str__(self) -> str:
        pre = "".join(map(str, self.pre))
        per = "".join(map(str, self.per))
        return f"{{{pre};{per}}}"


def _primitive(per: tuple) -> tuple:
    n = len(per)
    for d in range(1, n + 1):
        if n % d == 0 and per == per[:d] * (n // d):
            return per[:d]
    return per


def natset(pre, per) -> NatSet:
    """Canonicalize and build: primitive period, then shortest preperiod."""
    per = _primitive(tuple(int(b) for b in per)) if per else (0,)
    pre = [int(b) for b in pre]
    while pre and pre[-1] == per[-1]:
        pre.pop()
        per = per[-1:] + per[:-1]
    return NatSet(tuple(pre), per)


def _binop(a: NatSet, b: NatSet, op) -> NatSet:
    pre_len = max(len(a.pre), len(b.pre))
    per_len = len(a.per) * len(b.per) // gcd(len(a.per), len(b.per))
    bits = [op(a.bit(p), b.bit(p)) for p in range(1, pre_len + per_len + 1)]
    return natset(bits[:pre_len], bits[pre_len:])


EMPTY_SET = natset((), (0,))
FULL_SET = natset((), (1,))


def finite_set(indices) -> NatSet:
    indices = sorted(set(indices))
    if not indices:
        return EMPTY_SET
    bits = [0] * indices[-1]
    for p in indices:
        if p < 1:
            raise ValueError("positions start at 1")
        bits[p - 1] = 1
    return natset(bits, (0,))


def range_set(lo: int, hi: int) -> NatSet:
    """The finite set {lo, ..., hi-1}."""
    return finite_set(range(max(lo, 1), hi))


def tail_set(m: int) -> NatSet:
    """The cofinite set {m, m+1, ...}."""
    return natset([0] * (m - 1), (1,))


def progression(step: int, offset: int = 0) -> NatSet:
    """Arithmetic progression {p >= 1 : p = offset mod step}."""
    if step < 1:
        raise ValueError("step must be positive")
    r = offset % step
    bits = [1 if (p % step) == r else 0 for p in range(1, step + 1)]
    return natset((), bits)


# ---------------------------------------------------------------------------
# Elements of the algebra, its closure, and the lattice operations


@dataclass(frozen=True)
class CofElem:
    """Canonical element: optional tail start plus a set of pair-sign indices.

    A present tail m means the element contains t(m); canonically the pair
    indices then lie below m-1, because y(k) for k >= m is swallowed by the
    tail and y(m-1) together with t(m) upgrades the tail to t(m-1).
    Without a tail the index set is arbitrary; it is in the algebra B iff
    the set is finite, and in the closure-minus-B iff infinite.
    """

    tail: int | None
    ys: NatSet


def cof_elem(tail: int | None, ys: NatSet) -> CofElem:
    if tail is not None:
        if tail < 1:
            raise ValueError("tail starts at 1")
        ys = ys.intersect(range_set(1, tail))
        while tail > 1 and ys.bit(tail - 1):
            ys = ys.minus(finite_set([tail - 1]))
            tail -= 1
    return CofElem(tail, ys)


ZERO = cof_elem(None, EMPTY_SET)
ONE = cof_elem(1, EMPTY_SET)


def y(k: int) -> CofElem:
    return cof_elem(None, finite_set([k]))


def x(m: int) -> CofElem:
    return cof_elem(m, EMPTY_SET)


def ys_elem(s: NatSet) -> CofElem:
    return cof_elem(None, s)


def cof_meet(a: CofElem, b: CofElem) -> CofElem:
    """Lattice meet, exact.

    With both tails present the shallower element is rewritten over the
    independent generators at the deeper tail (t(m) = y(m) v ... v t(m'))
    and the meet of joins of independent generators keeps exactly the
    shared ones.  A tail meets a tailless element in the pair indices the
    tailless side shares with it.
    """
    if a.tail is not None and b.tail is not None:
        if a.tail > b.tail:
            a, b = b, a
        expanded = a.ys.union(range_set(a.tail, b.tail))
        return cof_elem(b.tail, expanded.intersect(b.ys))
    if a.tail is None and b.tail is None:
        return cof_elem(None, a.ys.intersect(b.ys))
    if a.tail is None:
        a, b = b, a
    expanded = a.ys.union(tail_set(a.tail))
    return cof_elem(None, expanded.intersect(b.ys))


def cof_join(a: CofElem, b: CofElem) -> CofElem:
    tails = [t for t in (a.tail, b.tail) if t is not None]
    return cof_elem(min(tails) if tails else None, a.ys.union(b.ys))


def cof_leq(a: CofElem, b: CofElem) -> bool:
    return cof_meet(a, b) == a


def in_algebra(e: CofElem) -> bool:
    return e.tail is not None or e.ys.is_finite


def closure_membership(e: CofElem) -> str:
    """Either "B" or "Cl(B)\\B" (the element is always in the closure)."""
    return "B" if in_algebra(e) else "Cl(B)\\B"


def complement_in_algebra(e: CofElem) -> CofElem:
    """Boolean complement within B; defined for members of B only."""
    if not in_algebra(e):
        raise PreconditionError("only members of the algebra are complemented")
    if e.tail is not None:
        return cof_elem(None, range_set(1, e.tail).minus(e.ys))
    m = e.ys.max_or_zero() + 1
    return cof_elem(m, range_set(1, m).minus(e.ys))


def has_complement(e: CofElem) -> CofElem | None:
    """The unique complement in the closure, or None.

    A tailless element with infinitely many pair indices meets every tail
    in a nonzero element, so nothing is jointly disjoint from it and large
    enough to join to the top; the complemented elements of the closure
    are therefore exactly the members of B.
    """
    if not in_algebra(e):
        return None
    return complement_in_algebra(e)


# ---------------------------------------------------------------------------
# Monotone sequences from a closed descriptor family


@dataclass(frozen=True)
class PrefixJoins:
    """Increasing: term n is the join of y(k) for k in the index set, k <= n."""

    index_set: NatSet

    def term(self, n: int) -> CofElem:
        return cof_elem(None, self.index_set.intersect(range_set(1, n + 1)))


@dataclass(frozen=True)
class TailChain:
    """Decreasing: term n is t(start + n - 1)."""

    start: int = 1

    def term(self, n: int) -> CofElem:
        return x(self.start + n - 1)


@dataclass(frozen=True)
class ComplementChain:
    """Decreasing: complements (in B) of the prefix joins of an index set."""

    index_set: NatSet

    def term(self, n: int) -> CofElem:
        return complement_in_algebra(PrefixJoins(self.index_set).term(n))


@dataclass(frozen=True)
class EventuallyConstant:
    """Explicit monotone prefix, then the last element forever."""

    elems: tuple

    def term(self, n: int) -> CofElem:
        return self.elems[min(n, len(self.elems)) - 1]


def monotone_limit(seq) -> CofElem:
    """Exact monotone limit of a descriptor-family sequence.

    Justified by the character calculus of the sign space: each element
    corresponds to the group of finite sign-products it can measure, the
    limit of a monotone chain corresponds to the union/intersection of
    those groups, and for every descriptor in the family that union or
    intersection is again represented by a (tail, index set) pair.
    """
    if isinstance(seq, PrefixJoins):
        return cof_elem(None, seq.index_set)
    if isinstance(seq, TailChain):
        return ZERO
    if isinstance(seq, ComplementChain):
        i = seq.index_set
        if i.is_finite:
            return complement_in_algebra(cof_elem(None, i))
        return cof_elem(None, i.complement())
    if isinstance(seq, EventuallyConstant):
        _require_monotone(seq.elems)
        return seq.elems[-1]
    raise UnsupportedSequenceError(f"no limit rule for {type(seq).__name__}")


def _require_monotone(elems) -> None:
    up = all(cof_leq(a, b) for a, b in zip(elems, elems[1:]))
    down = all(cof_leq(b, a) for a, b in zip(elems, elems[1:]))
    if not (up or down):
        raise UnsupportedSequenceError("explicit sequence is not monotone")


def _increasing_in_algebra(seq):
    """The increasing descriptors whose terms stay inside B."""
    if isinstance(seq, PrefixJoins):
        return True
    if isinstance(seq, EventuallyConstant):
        _require_monotone(seq.elems)
        return all(in_algebra(e) for e in seq.elems) and all(
            cof_leq(a, b) for a, b in zip(seq.elems, seq.elems[1:])
        )
    return False


@dataclass
class CompletionCheck:
    holds: bool
    sup: CofElem
    inf_complements: CofElem
    joined: CofElem


def completion_criterion_check(seq) -> CompletionCheck:
    """Whether sup of the sequence joined with inf of the complements is top.

    Exactly the increasing sequences whose supremum is complemented in the
    closure pass; the prefix joins over an infinite index set famously
    fail, their supremum having no complement.
    """
    if not _increasing_in_algebra(seq):
        raise UnsupportedSequenceError(
            "need an increasing sequence of algebra elements"
        )
    sup = monotone_limit(seq)
    if isinstance(seq, PrefixJoins):
        infc = monotone_limit(ComplementChain(seq.index_set))
    else:
        infc = complement_in_algebra(seq.elems[-1])
    joined = cof_join(sup, infc)
    return CompletionCheck(joined == ONE, sup, infc, joined)


@dataclass
class DoubleLimitCheck:
    equal: bool
    joined_limits: CofElem
    double_limit: CofElem


def double_limit_check(seq) -> DoubleLimitCheck:
    """Compare (lim x_n) v (lim x'_n) with lim_m lim_n (x_m v x'_n).

    The inner limit over n is taken first (a decreasing chain once m is
    fixed), then m grows; both sides are evaluated in closed form and are
    expected to agree for every descriptor in the family.
    """
    if not _increasing_in_algebra(seq):
        raise UnsupportedSequenceError(
            "need an increasing sequence of algebra elements"
        )
    if isinstance(seq, EventuallyConstant):
        last = seq.elems[-1]
        both = cof_join(last, complement_in_algebra(last))
        return DoubleLimitCheck(True, both, both)
    i = seq.index_set
    lhs = cof_join(monotone_limit(seq), monotone_limit(ComplementChain(i)))
    if i.is_finite:
        m = i.max_or_zero() + 1
        inner = cof_join(seq.term(m), complement_in_algebra(cof_elem(None, i)))
        rhs = inner
    else:
        # inner limit at level m: join of the prefix with the complement's
        # eventual part, a tailless element; the outer limit is increasing.
        rhs = cof_elem(None, i.complement().union(i))
    return DoubleLimitCheck(lhs == rhs, lhs, rhs)


# ---------------------------------------------------------------------------
# Ultrafilters and atomlessness


@dataclass(frozen=True)
class CofUltrafilter:
    kind: str  # "principal" | "frechet"
    index: int | None = None

    def contains(self, e: CofElem) -> bool:
        if self.kind == "principal":
            return e.ys.bit(self.index) == 1 or (
                e.tail is not None and self.index >= e.tail
            )
        return e.tail is not None

    def infimum(self) -> CofElem:
        if self.kind == "principal":
            return y(self.index)
        return ZERO


def enumerate_ultrafilters(max_index: int = 8) -> list:
    """The ultrafilters of the algebra: principal at each index, plus the
    tails-only (Frechet) one.  Principal filters are listed up to
    max_index; the family continues in the obvious way."""
    out = [CofUltrafilter("principal", k) for k in range(1, max_index + 1)]
    out.append(CofUltrafilter("frechet"))
    return out


def is_atomless() -> tuple:
    """(False, witness): a principal ultrafilter has a nonzero infimum."""
    witness = CofUltrafilter("principal", 1)
    return witness.infimum() == ZERO, witness


# ---------------------------------------------------------------------------
# Text syntax


_TOKEN = re.compile(
    r"^(?:x(?P<tail>\d+)|y(?P<single>\d+)|Y\((?P<step>\d+)k(?:\+(?P<off>\d+))?\)"
    r"|Y\{(?P<pre>[01]*);(?P<per>[01]+)\}|(?P<zero>0)|(?P<one>1))$"
)


def parse_elem(text: str) -> CofElem:
    """Parse 'x3', 'y1|y4', 'Y(2k)', 'Y{01;10}', or joins of those."""
    out = ZERO
    for token in text.replace(" ", "").split("|"):
        m = _TOKEN.match(token)
        if not m:
            raise ValueError(f"cannot parse element part {token!r}")
        if m["tail"] is not None:
            part = x(int(m["tail"]))
        elif m["single"] is not None:
            part = y(int(m["single"]))
        elif m["step"] is not None:
            part = ys_elem(progression(int(m["step"]), int(m["off"] or 0)))
        elif m["pre"] is not None:
            part = ys_elem(natset(m["pre"], m["per"]))
        elif m["zero"] is not None:
            part = ZERO
        else:
            part = ONE
        out = cof_join(out, part)
    return out


def format_elem(e: CofElem) -> str:
    if e == ZERO:
        return "0"
    if e == ONE:
        return "1"
    parts = []
    if e.ys.is_finite:
        parts.extend(f"y{k}" for k in e.ys.finite_indices())
    elif not e.ys.is_empty:
        parts.append(f"Y{e.ys}")
    if e.tail is not None:
        parts.append(f"x{e.tail}")
    return "|".join(parts)


def bounded_elements(max_support: int, max_tail: int):
    """All elements with pair indices below max_support and tail <= max_tail,
    plus the tailless ones; the canonical finite probe set for exhaustive
    lattice-law and completion tests."""
    out = set()
    for mask in range(1 << max_support):
        s = finite_set([k + 1 for k in range(max_support) if mask >> k & 1])
        out.add(cof_elem(None, s))
        for m in range(1, max_tail + 1):
            out.add(cof_elem(m, s))
    return sorted(out, key=lambda e: (e.tail or 0, str(e.ys)))
