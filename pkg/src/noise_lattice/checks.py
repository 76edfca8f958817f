"""Randomized property suites with reproducible witnesses.

Each suite draws its instances from a ``random.Random`` seeded by the
runner, checks one algebraic law, and reports failures as small dicts
(space, partitions, case index) sufficient to reproduce the case.  The
CLI command ``check all`` runs every suite; the acceptance tests run the
same functions at their mandated case counts.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import cofinite as cf
from . import instances as inst
from . import randsup as rs
from .chaos import chaos_membership, first_chaos, up_down_roundtrip
from .finmeas import (
    RV,
    coordinate_sign,
    indicator,
    inner,
    mk_dyadic,
    mk_space,
    norm2,
    product,
    span,
    span_on,
    walsh_character,
)
from .linalg import exact_nullspace, exact_rank, float_rank
from .ntba import NTBA, coarsen, mk_coordinate_ntba, mk_parity_ntba, validate_family
from .sigma import (
    SigmaField,
    cond_exp,
    commutes,
    discrete,
    independent,
    inf_family,
    join,
    meet,
    partition,
    sigma_of,
    sigma_of_rvs,
    subspace_of,
    trivial,
)
from .spectrum import (
    k_restriction_additivity,
    sigma_tower_check,
    spectral_decompose,
    verify_spectral_identities,
)


@dataclass
class SuiteResult:
    name: str
    cases: int
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def _space_witness(space) -> dict:
    from .finmeas import space_to_json

    return space_to_json(space)


def _partition_witness(part: SigmaField) -> list:
    return [list(b) for b in part.blocks]


# ---------------------------------------------------------------------------
# finmeas suites


def suite_span_rank(rng: random.Random, cases: int) -> SuiteResult:
    """span() dimension against the elimination rank oracle, both backends."""
    res = SuiteResult("span-rank-oracle", cases)
    for case in range(cases):
        mode = "rational" if case % 2 == 0 else "float"
        space = inst.rand_space(rng, 6, mode)
        vs = [inst.rand_rv(rng, space) for _ in range(rng.randint(0, 5))]
        got = span(vs, space=space).dim
        rows = [v.values for v in vs]
        if mode == "rational":
            want = exact_rank(rows) if rows else 0
        else:
            want = float_rank(rows) if rows else 0
        if got != want:
            res.failures.append(
                {"case": case, "space": _space_witness(space), "got": got, "want": want}
            )
    return res


def suite_product_inner(rng: random.Random, cases: int) -> SuiteResult:
    """Factor embeddings preserve inner products."""
    res = SuiteResult("product-embedding-isometry", cases)
    for case in range(cases):
        prod = product(inst.rand_space(rng, 4), inst.rand_space(rng, 4))
        f1, f2 = (inst.rand_rv(rng, prod.left) for _ in range(2))
        g1, g2 = (inst.rand_rv(rng, prod.right) for _ in range(2))
        ok = (
            inner(prod.lift_left(f1), prod.lift_left(f2)) == inner(f1, f2)
            and inner(prod.lift_right(g1), prod.lift_right(g2)) == inner(g1, g2)
            and inner(prod.lift_left(f1) * prod.lift_right(g1),
                      prod.lift_left(f2) * prod.lift_right(g2))
            == inner(f1, f2) * inner(g1, g2)
        )
        if not ok:
            res.failures.append({"case": case, "space": _space_witness(prod.space)})
    return res


def suite_walsh_orthonormal(rng: random.Random, cases: int) -> SuiteResult:
    """All sign-product characters are orthonormal on dyadic spaces."""
    res = SuiteResult("walsh-orthonormal", cases)
    for n in (1, 2, 3, 4):
        space = mk_dyadic(n)
        chars = [
            walsh_character(space, [k + 1 for k in range(n) if m >> k & 1])
            for m in range(1 << n)
        ]
        for a in range(len(chars)):
            for b in range(a, len(chars)):
                want = Fraction(1) if a == b else Fraction(0)
                if inner(chars[a], chars[b]) != want:
                    res.failures.append({"n": n, "pair": (a, b)})
    return res


# ---------------------------------------------------------------------------
# sigma suites


def _projection_matrix(part: SigmaField):
    """Dense conditional-expectation matrix, built directly from blocks."""
    space = part.space
    n = space.size
    rows = [[Fraction(0)] * n for _ in range(n)]
    for b in part.blocks:
        mass = sum(space.probs[i] for i in b)
        for i in b:
            for j in b:
                rows[i][j] = space.probs[j] / mass
    return rows


def suite_inf_subspaces(rng: random.Random, cases: int) -> SuiteResult:
    """L2 of a meet equals the intersection of the L2 spaces.

    The right side is computed by an independent oracle: the nullspace of
    the stacked complement projections (I - P_i).
    """
    res = SuiteResult("meet-subspace-intersection", cases)
    for case in range(cases):
        space = inst.rand_space(rng, 5)
        parts = [inst.rand_partition(rng, space) for _ in range(rng.randint(2, 3))]
        left = subspace_of(inf_family(parts))
        stacked = []
        for p in parts:
            pm = _projection_matrix(p)
            for i in range(space.size):
                row = [-x for x in pm[i]]
                row[i] += 1
                stacked.append(row)
        null = exact_nullspace(stacked)
        dim = space.size if null is None else len(null)
        ok = dim == left.dim
        if ok and null is not None:
            ok = all(left.contains(RV(space, tuple(v))) for v in null)
        if not ok:
            res.failures.append(
                {
                    "case": case,
                    "space": _space_witness(space),
                    "parts": [_partition_witness(p) for p in parts],
                }
            )
    return res


def suite_independence_criterion(rng: random.Random, cases: int) -> SuiteResult:
    """independent(x, y) iff commutes(x, y) and meet(x, y) is trivial."""
    res = SuiteResult("independence-criterion", cases)
    three = mk_space(["a", "b", "c"], [Fraction(1, 3)] * 3)
    witness_x = partition(three, [[0], [1, 2]])
    witness_y = partition(three, [[0, 1], [2]])
    if independent(witness_x, witness_y) or commutes(witness_x, witness_y):
        res.failures.append({"case": "three-point-witness"})
    for case in range(cases):
        if case % 3 == 0:
            prod, xx, yy = inst.rand_independent_pair(rng)
            space = prod.space
        else:
            space = inst.rand_space(rng, 6)
            xx = inst.rand_partition(rng, space)
            yy = inst.rand_partition(rng, space)
        lhs = independent(xx, yy)
        rhs = commutes(xx, yy) and meet(xx, yy) == trivial(space)
        if lhs != rhs:
            res.failures.append(
                {
                    "case": case,
                    "space": _space_witness(space),
                    "x": _partition_witness(xx),
                    "y": _partition_witness(yy),
                }
            )
    return res


def suite_indep_lattice_identities(rng: random.Random, cases: int) -> SuiteResult:
    """Meet distributes over joins of parts of an independent pair."""
    res = SuiteResult("independent-quadruple-identities", cases)
    for case in range(cases):
        prod, x_full, y_full = inst.rand_independent_pair(rng)
        u1 = inst.lift_partition(prod, inst.rand_partition(rng, prod.left), "left")
        u2 = inst.lift_partition(prod, inst.rand_partition(rng, prod.left), "left")
        v1 = inst.lift_partition(prod, inst.rand_partition(rng, prod.right), "right")
        v2 = inst.lift_partition(prod, inst.rand_partition(rng, prod.right), "right")
        x = inst.lift_partition(prod, discrete(prod.left), "left")
        ycap = inst.lift_partition(prod, discrete(prod.right), "right")
        ok = meet(join(u1, v1), join(u2, v2)) == join(meet(u1, u2), meet(v1, v2))
        ok = ok and meet(join(u1, v1), x) == u1
        ok = ok and meet(join(u1, v1), ycap) == v1
        if not ok:
            res.failures.append({"case": case, "space": _space_witness(prod.space)})
    return res


def suite_projection_laws(rng: random.Random, cases: int) -> SuiteResult:
    """Conditional expectation is the orthogonal projection onto L2(x)."""
    res = SuiteResult("projection-laws", cases)
    for case in range(cases):
        space = inst.rand_space(rng, 6)
        x = inst.rand_partition(rng, space)
        f, g = inst.rand_rv(rng, space), inst.rand_rv(rng, space)
        qf = cond_exp(x, f)
        ok = cond_exp(x, qf).values == qf.values
        ok = ok and inner(qf, g) == inner(f, cond_exp(x, g))
        ok = ok and subspace_of(x).contains(qf)
        ok = ok and sigma_of(subspace_of(x)) == x
        if not ok:
            res.failures.append(
                {"case": case, "space": _space_witness(space), "x": _partition_witness(x)}
            )
    return res


def suite_product_membership(rng: random.Random, cases: int) -> SuiteResult:
    """z built from factor parts satisfies z = (x ^ z) v (y ^ z)."""
    res = SuiteResult("product-membership", cases)
    for case in range(cases):
        prod, _, _ = inst.rand_independent_pair(rng)
        x = inst.lift_partition(prod, discrete(prod.left), "left")
        y = inst.lift_partition(prod, discrete(prod.right), "right")
        u = inst.lift_partition(prod, inst.rand_partition(rng, prod.left), "left")
        v = inst.lift_partition(prod, inst.rand_partition(rng, prod.right), "right")
        z = join(u, v)
        if join(meet(x, z), meet(y, z)) != z:
            res.failures.append({"case": case, "space": _space_witness(prod.space)})
    return res


# ---------------------------------------------------------------------------
# ntba suites


def _recoding_permutation(n: int):
    """Outcome bijection sending pair signs to coordinates, on n+1 signs."""
    space = mk_dyadic(n + 1)
    index = {o: i for i, o in enumerate(space.outcomes)}
    perm = []
    for o in space.outcomes:
        signs = [1 if c == "+" else -1 for c in o]
        recoded = [signs[i] * signs[i + 1] for i in range(n)] + [signs[n]]
        perm.append(index["".join("+" if s == 1 else "-" for s in recoded)])
    return space, perm


def suite_ntba_constructions(rng: random.Random, cases: int) -> SuiteResult:
    """Constructed algebras validate; elements mirror atomset operations."""
    res = SuiteResult("ntba-constructions", cases)
    fixed = [
        mk_coordinate_ntba(mk_dyadic(2)),
        mk_coordinate_ntba(mk_dyadic(3)),
        mk_parity_ntba(2),
        mk_parity_ntba(3),
    ]
    for case in range(cases):
        algebras = fixed if case == 0 else [inst.rand_ntba(rng, 32)]
        for B in algebras:
            if B.n_atoms <= 4:
                verdict = validate_family(
                    B.space, [e.realize() for e in B.elements()]
                )
                if not verdict.valid:
                    res.failures.append({"case": case, "reason": verdict.reason})
                    continue
            e1, e2 = inst.rand_element(rng, B), inst.rand_element(rng, B)
            p1, p2 = e1.realize(), e2.realize()
            ok = meet(p1, p2) == e1.meet(e2).realize()
            ok = ok and join(p1, p2) == e1.join(e2).realize()
            comp = e1.complement().realize()
            ok = ok and meet(p1, comp) == trivial(B.space)
            ok = ok and join(p1, comp) == discrete(B.space)
            ok = ok and independent(p1, comp)
            if not ok:
                res.failures.append(
                    {"case": case, "space": _space_witness(B.space),
                     "atoms": [_partition_witness(a) for a in B.atoms]}
                )
    return res


def suite_generated_atoms(rng: random.Random, cases: int) -> SuiteResult:
    """Atoms of the algebra generated by two coarsenings are the nonzero meets."""
    res = SuiteResult("generated-subalgebra-atoms", cases)
    for case in range(cases):
        B = inst.rand_ntba(rng, 32)
        g1 = inst.rand_atom_groups(rng, B)
        g2 = inst.rand_atom_groups(rng, B)
        b1, b2 = coarsen(B, g1), coarsen(B, g2)
        got = set()
        for a1 in b1.atoms:
            for a2 in b2.atoms:
                m = meet(a1, a2)
                if m != trivial(B.space):
                    got.add(m)
        want = {
            B.element(set(x) & set(y)).realize()
            for x in g1
            for y in g2
            if set(x) & set(y)
        }
        if got != want:
            res.failures.append({"case": case, "space": _space_witness(B.space)})
    return res


def suite_parity_recoding(rng: random.Random, cases: int) -> SuiteResult:
    """Pair-sign algebras match coordinate algebras under the sign recoding."""
    res = SuiteResult("parity-coordinate-recoding", cases)
    for n in (1, 2, 3, 4):
        space, perm = _recoding_permutation(n)
        par = mk_parity_ntba(n, space)
        coord = mk_coordinate_ntba(space)
        for k in range(n + 1):
            mapped = partition(
                space, [[perm[i] for i in b] for b in par.atoms[k].blocks]
            )
            if mapped != coord.atoms[k]:
                res.failures.append({"n": n, "atom": k})
    return res


# ---------------------------------------------------------------------------
# chaos suites


def suite_superadditivity(rng: random.Random, cases: int) -> SuiteResult:
    """||Q_x f||^2 + ||Q_y f||^2 <= ||Q_{x v y} f||^2 + ||Q_{x ^ y} f||^2."""
    res = SuiteResult("projection-superadditivity", cases)
    for case in range(cases):
        B = inst.rand_ntba(rng, 32)
        f = inst.rand_rv(rng, B.space)
        x = inst.rand_element(rng, B).realize()
        y = inst.rand_element(rng, B).realize()
        lhs = norm2(cond_exp(x, f)) + norm2(cond_exp(y, f))
        rhs = norm2(cond_exp(join(x, y), f)) + norm2(cond_exp(meet(x, y), f))
        if lhs > rhs:
            res.failures.append(
                {"case": case, "space": _space_witness(B.space),
                 "x": _partition_witness(x), "y": _partition_witness(y)}
            )
    return res


def suite_membership_triequivalence(rng: random.Random, cases: int) -> SuiteResult:
    """The three first-chaos membership conditions agree on random inputs."""
    res = SuiteResult("membership-triequivalence", cases)
    for case in range(cases):
        B = inst.rand_ntba(rng, 16)
        cr = first_chaos(B)
        candidates = [inst.rand_rv(rng, B.space, zero_mean=True)]
        if cr.h1.dim:
            candidates.append(cr.h1.basis[case % cr.h1.dim])
        for f in candidates:
            try:
                rep = chaos_membership(B, f)
            except Exception as exc:  # ConsistencyError means the law failed
                res.failures.append({"case": case, "error": str(exc)})
                continue
            if cr.h1.contains(f) != rep.member:
                res.failures.append({"case": case, "note": "verdict mismatch"})
    return res


def suite_split_identity(rng: random.Random, cases: int) -> SuiteResult:
    """Per element x: the split constraint kernel is (H_x - H_0) + (H_x' - H_0)."""
    res = SuiteResult("pairwise-split-identity", cases)
    for case in range(cases):
        B = inst.rand_ntba(rng, 16)
        space = B.space
        e = inst.rand_element(rng, B)
        x, xc = e.realize(), e.complement().realize()
        rows = []
        for i in range(space.size):
            ei = indicator(space, [i])
            img = ei - cond_exp(x, ei) - cond_exp(xc, ei)
            rows.append(img.values)
        cols = [[rows[j][i] for j in range(space.size)] for i in range(space.size)]
        null = exact_nullspace(cols)
        kernel = (
            span_on(space, [RV(space, tuple(v)) for v in null])
            if null is not None
            else span_on(space, [indicator(space, [i]) for i in range(space.size)])
        )
        direct = []
        for part in (x, xc):
            for b in part.blocks:
                ind = indicator(space, b)
                direct.append(ind - cond_exp(trivial(space), ind))
        want = span_on(space, direct)
        if not (kernel.dim == want.dim and want.contains_subspace(kernel)):
            res.failures.append(
                {"case": case, "space": _space_witness(space),
                 "x": _partition_witness(x)}
            )
    return res


def suite_chaos_additivity(rng: random.Random, cases: int) -> SuiteResult:
    """On the first chaos, projections add across disjoint elements."""
    res = SuiteResult("first-chaos-additivity", cases)
    for case in range(cases):
        B = inst.rand_ntba(rng, 32)
        cr = first_chaos(B)
        if not cr.h1.dim:
            continue
        e1 = inst.rand_element(rng, B)
        e2 = B.element(
            set(inst.rand_element(rng, B).atomset) - set(e1.atomset)
        )
        x, yy = e1.realize(), e2.realize()
        j = join(x, yy)
        for b in cr.h1.basis:
            lhs = cond_exp(j, b)
            rhs = cond_exp(x, b) + cond_exp(yy, b)
            if lhs.values != rhs.values:
                res.failures.append(
                    {"case": case, "space": _space_witness(B.space)}
                )
                break
    return res


def suite_classicality(rng: random.Random, cases: int) -> SuiteResult:
    """Every finite algebra here is classical and never black."""
    res = SuiteResult("finite-classicality", cases)
    for case in range(cases):
        B = inst.rand_ntba(rng, 32)
        cr = first_chaos(B)
        if not cr.classical or cr.black:
            res.failures.append(
                {"case": case, "space": _space_witness(B.space),
                 "atoms": [_partition_witness(a) for a in B.atoms]}
            )
    return res


def suite_up_down(rng: random.Random, cases: int) -> SuiteResult:
    """Up(Down(x)) = x for every element of small constructed algebras."""
    res = SuiteResult("up-down-roundtrip", cases)
    algebras = [
        mk_coordinate_ntba(mk_dyadic(n)) for n in (1, 2, 3, 4, 5)
    ] + [mk_parity_ntba(n) for n in (1, 2, 3, 4)]
    for _ in range(max(1, cases // 10)):
        B = inst.rand_ntba(rng, 32)
        if B.n_atoms <= 5:
            algebras.append(B)
    for B in algebras:
        cr = first_chaos(B)
        for e in B.elements():
            if not up_down_roundtrip(B, e, cr):
                res.failures.append(
                    {"space": _space_witness(B.space),
                     "atoms": [_partition_witness(a) for a in B.atoms],
                     "element": sorted(e.atomset)}
                )
    return res


def suite_presentation_invariance(rng: random.Random, cases: int) -> SuiteResult:
    """Permuting the atom order leaves the first chaos unchanged."""
    res = SuiteResult("presentation-invariance", cases)
    for case in range(cases):
        B = inst.rand_ntba(rng, 32)
        order = list(range(B.n_atoms))
        rng.shuffle(order)
        B2 = NTBA(B.space, [B.atoms[i] for i in order], validate=False)
        a, b = first_chaos(B).h1, first_chaos(B2).h1
        if not (a.dim == b.dim and a.contains_subspace(b)):
            res.failures.append({"case": case, "space": _space_witness(B.space)})
    return res


# ---------------------------------------------------------------------------
# spectrum suites


def suite_spectral_complete(rng: random.Random, cases: int) -> SuiteResult:
    """Eigenspaces are orthogonal, fill the space, and pass the identities."""
    res = SuiteResult("spectral-completeness", cases)
    for case in range(cases):
        B = inst.rand_ntba(rng, 32)
        D = spectral_decompose(B)
        total = sum(p.eigenspace.dim for p in D.points)
        ok = total == B.space.size
        for p1, p2 in itertools.combinations(D.points, 2):
            for b1 in p1.eigenspace.basis:
                for b2 in p2.eigenspace.basis:
                    ok = ok and inner(b1, b2) == 0
        if ok and B.n_atoms <= 4:
            ok = verify_spectral_identities(D).ok
        if not ok:
            res.failures.append(
                {"case": case, "space": _space_witness(B.space),
                 "atoms": [_partition_witness(a) for a in B.atoms]}
            )
    return res


def suite_walsh_oracle(rng: random.Random, cases: int) -> SuiteResult:
    """Coordinate algebras diagonalize in the sign-character basis."""
    res = SuiteResult("walsh-eigenbasis-oracle", cases)
    for n in (1, 2, 3, 4, 5):
        space = mk_dyadic(n)
        D = spectral_decompose(mk_coordinate_ntba(space))
        if len(D.points) != 1 << n:
            res.failures.append({"n": n, "note": "point count"})
            continue
        for p in D.points:
            chi = walsh_character(space, [i + 1 for i in sorted(p.generator)])
            if p.eigenspace.dim != 1 or not p.eigenspace.contains(chi):
                res.failures.append({"n": n, "generator": sorted(p.generator)})
            if p.k != len(p.generator):
                res.failures.append({"n": n, "note": "k mismatch"})
        dims = D.level_dims()
        from math import comb

        if dims != {k: comb(n, k) for k in range(n + 1)}:
            res.failures.append({"n": n, "note": "level dims", "dims": dims})
    return res


def suite_spectral_invariance(rng: random.Random, cases: int) -> SuiteResult:
    """Recoded pair-sign algebras grade exactly like coordinate algebras."""
    res = SuiteResult("spectral-recoding-invariance", cases)
    from math import comb

    for n in (1, 2, 3, 4):
        D = spectral_decompose(mk_parity_ntba(n))
        want = {k: comb(n + 1, k) for k in range(n + 2)}
        if D.level_dims() != want or len(D.points) != 1 << (n + 1):
            res.failures.append({"n": n, "dims": D.level_dims()})
    return res


def suite_k_monotone(rng: random.Random, cases: int) -> SuiteResult:
    """Coarsening the atoms can only lower the grading, pointwise."""
    res = SuiteResult("grading-monotone-under-coarsening", cases)
    for case in range(cases):
        B = inst.rand_ntba(rng, 32)
        groups = inst.rand_atom_groups(rng, B)
        B1 = coarsen(B, groups)
        D = spectral_decompose(B)
        D1 = spectral_decompose(B1)
        for p in D.points:
            v = p.eigenspace.basis[0]
            hit = [
                q
                for q in D1.points
                if q.eigenspace.contains(v)
            ]
            if len(hit) != 1 or hit[0].k > p.k:
                res.failures.append(
                    {"case": case, "space": _space_witness(B.space),
                     "generator": sorted(p.generator)}
                )
                break
    return res


def suite_first_level_is_h1(rng: random.Random, cases: int) -> SuiteResult:
    """Level 1 of the spectral grading equals the first chaos space."""
    res = SuiteResult("first-level-equals-first-chaos", cases)
    for case in range(cases):
        B = inst.rand_ntba(rng, 64)
        D = spectral_decompose(B)
        h1 = first_chaos(B).h1
        lvl = D.levels.get(1)
        lvl_dim = lvl.dim if lvl else 0
        ok = lvl_dim == h1.dim
        if ok and lvl:
            ok = h1.contains_subspace(lvl)
        if not ok:
            res.failures.append(
                {"case": case, "space": _space_witness(B.space),
                 "atoms": [_partition_witness(a) for a in B.atoms]}
            )
    return res


def suite_k_additivity(rng: random.Random, cases: int) -> SuiteResult:
    """The grading adds across the restriction to an element and its complement."""
    res = SuiteResult("grading-restriction-additivity", cases)
    done = 0
    while done < cases:
        B = inst.rand_ntba(rng, 32)
        if B.n_atoms < 2:
            continue
        k = rng.randint(1, B.n_atoms - 1)
        idxs = list(range(B.n_atoms))
        rng.shuffle(idxs)
        e = B.element(idxs[:k])
        if not k_restriction_additivity(B, e):
            res.failures.append(
                {"case": done, "space": _space_witness(B.space),
                 "element": sorted(e.atomset)}
            )
        done += 1
    res.cases = done
    return res


def suite_sigma_tower(rng: random.Random, cases: int) -> SuiteResult:
    """Higher levels generate no more than the first level."""
    res = SuiteResult("sigma-tower", cases)
    algebras = [mk_coordinate_ntba(mk_dyadic(3)), mk_parity_ntba(3)]
    for _ in range(cases):
        algebras.append(inst.rand_ntba(rng, 32))
    for B in algebras:
        if not sigma_tower_check(spectral_decompose(B)):
            res.failures.append(
                {"space": _space_witness(B.space),
                 "atoms": [_partition_witness(a) for a in B.atoms]}
            )
    return res


# ---------------------------------------------------------------------------
# cofinite suites


def suite_cofinite_laws(rng: random.Random, cases: int) -> SuiteResult:
    """Lattice laws for the symbolic algebra.

    Binary laws run exhaustively over the elements with pair indices below
    6 and tails up to 7; the ternary laws (associativity, distributivity)
    run exhaustively over a smaller probe set and on random triples from
    the large one.
    """
    res = SuiteResult("cofinite-lattice-laws", cases)
    big = cf.bounded_elements(6, 7)
    small = cf.bounded_elements(3, 4)
    for a in big:
        if cf.cof_meet(a, a) != a or cf.cof_join(a, a) != a:
            res.failures.append({"law": "idempotent", "a": cf.format_elem(a)})
    for a, b in itertools.combinations(big, 2):
        if cf.cof_meet(a, b) != cf.cof_meet(b, a):
            res.failures.append({"law": "meet-commutative", "a": cf.format_elem(a)})
        if cf.cof_join(a, b) != cf.cof_join(b, a):
            res.failures.append({"law": "join-commutative", "a": cf.format_elem(a)})
        if cf.cof_meet(a, cf.cof_join(a, b)) != a or cf.cof_join(a, cf.cof_meet(a, b)) != a:
            res.failures.append(
                {"law": "absorption", "a": cf.format_elem(a), "b": cf.format_elem(b)}
            )
    def triple_laws(a, b, c, tag):
        ok = cf.cof_meet(a, cf.cof_meet(b, c)) == cf.cof_meet(cf.cof_meet(a, b), c)
        ok = ok and cf.cof_join(a, cf.cof_join(b, c)) == cf.cof_join(cf.cof_join(a, b), c)
        ok = ok and cf.cof_meet(a, cf.cof_join(b, c)) == cf.cof_join(
            cf.cof_meet(a, b), cf.cof_meet(a, c)
        )
        if not ok:
            res.failures.append(
                {"law": "ternary", "tag": tag,
                 "triple": [cf.format_elem(t) for t in (a, b, c)]}
            )
    for a, b, c in itertools.product(small, repeat=3):
        triple_laws(a, b, c, "exhaustive")
    for case in range(cases):
        triple_laws(rng.choice(big), rng.choice(big), rng.choice(big), case)
    return res


def suite_cofinite_truncation(rng: random.Random, cases: int) -> SuiteResult:
    """Symbolic meet/join against partition computations at finite truncation.

    Elements with pair indices and tails inside the window realize as
    sigma-fields on the n+1 sign space; the realization must be a lattice
    embedding.  This is the module's ground-truth oracle.
    """
    res = SuiteResult("cofinite-truncation-oracle", cases)
    n = 6
    P = mk_parity_ntba(n)
    space = P.space

    def realize(e: cf.CofElem) -> SigmaField:
        gens = [
            coordinate_sign(space, k) * coordinate_sign(space, k + 1)
            for k in e.ys.indices_up_to(n)
        ]
        if e.tail is not None:
            gens.extend(coordinate_sign(space, j) for j in range(e.tail, n + 2))
        return sigma_of_rvs(space, gens)

    def rand_elem() -> cf.CofElem:
        tail = rng.choice([None, None, rng.randint(1, n + 1)])
        idxs = [k for k in range(1, n + 1) if rng.random() < 0.4]
        return cf.cof_elem(tail, cf.finite_set(idxs))

    for case in range(cases):
        a, b = rand_elem(), rand_elem()
        ok = realize(cf.cof_meet(a, b)) == meet(realize(a), realize(b))
        ok = ok and realize(cf.cof_join(a, b)) == join(realize(a), realize(b))
        if not ok:
            res.failures.append(
                {"case": case, "a": cf.format_elem(a), "b": cf.format_elem(b)}
            )
    return res


def suite_cofinite_complements(rng: random.Random, cases: int) -> SuiteResult:
    """Complements verify and are unique; the completion is the algebra itself."""
    res = SuiteResult("cofinite-complements-completion", cases)
    probe = cf.bounded_elements(6, 7)
    infinite_probes = [
        cf.ys_elem(cf.progression(2)),
        cf.ys_elem(cf.progression(2, 1)),
        cf.ys_elem(cf.progression(3)),
        cf.ys_elem(cf.tail_set(4)),
    ]
    for e in probe + infinite_probes:
        comp = cf.has_complement(e)
        if cf.in_algebra(e):
            if comp is None:
                res.failures.append({"elem": cf.format_elem(e), "note": "no complement"})
                continue
            if cf.cof_meet(e, comp) != cf.ZERO or cf.cof_join(e, comp) != cf.ONE:
                res.failures.append({"elem": cf.format_elem(e), "note": "bad complement"})
            others = [
                c
                for c in probe
                if c != comp
                and cf.cof_meet(e, c) == cf.ZERO
                and cf.cof_join(e, c) == cf.ONE
            ]
            if others:
                res.failures.append({"elem": cf.format_elem(e), "note": "not unique"})
        else:
            if comp is not None:
                res.failures.append({"elem": cf.format_elem(e), "note": "spurious"})
            witnesses = [
                c
                for c in probe
                if cf.cof_meet(e, c) == cf.ZERO and cf.cof_join(e, c) == cf.ONE
            ]
            if witnesses:
                res.failures.append(
                    {"elem": cf.format_elem(e), "note": "closure complement found"}
                )
    return res


def suite_cofinite_limits(rng: random.Random, cases: int) -> SuiteResult:
    """Monotone limits land in the closure; the two limit checks behave."""
    res = SuiteResult("cofinite-monotone-limits", cases)
    descriptors = [
        cf.PrefixJoins(cf.FULL_SET),
        cf.PrefixJoins(cf.progression(2)),
        cf.PrefixJoins(cf.finite_set([1, 3, 4])),
        cf.TailChain(1),
        cf.TailChain(3),
        cf.ComplementChain(cf.FULL_SET),
        cf.ComplementChain(cf.progression(2)),
        cf.EventuallyConstant((cf.y(1), cf.y(1))),
    ]
    for d in descriptors:
        lim = cf.monotone_limit(d)
        if cf.closure_membership(lim) not in ("B", "Cl(B)\\B"):
            res.failures.append({"descriptor": repr(d)})
    for case in range(cases):
        bits = [rng.randint(0, 1) for _ in range(rng.randint(0, 4))]
        per = [rng.randint(0, 1) for _ in range(rng.randint(1, 3))]
        i = cf.natset(bits, per)
        seq = cf.PrefixJoins(i)
        crit = cf.completion_criterion_check(seq)
        expect_holds = i.is_finite
        if crit.holds != expect_holds:
            res.failures.append({"case": case, "set": str(i), "note": "criterion"})
        dl = cf.double_limit_check(seq)
        if not dl.equal:
            res.failures.append({"case": case, "set": str(i), "note": "double-limit"})
    return res


# ---------------------------------------------------------------------------
# randsup suites


def suite_randsup_distribution(rng: random.Random, cases: int) -> SuiteResult:
    """Sampled elements follow the product law (chi-square).

    ``cases`` is the trial count here; the registry default is 1e5.
    """
    trials = max(2_000, cases)
    res = SuiteResult("randsup-distribution", trials)
    for n, p in [(2, 0.1), (3, 0.5), (2, 0.9), (4, 0.5)]:
        pv, _, _ = rs.element_distribution_pvalue(n, p, seed=rng.randrange(1 << 31), trials=trials)
        if pv <= 0.001:
            res.failures.append({"n": n, "p": p, "pvalue": pv})
    return res


def suite_randsup_union_bound(rng: random.Random, cases: int) -> SuiteResult:
    """Swallowing probability matches the closed form and respects the bound.

    ``cases`` is the trial count here; the registry default is 4e4.
    """
    trials = max(2_000, cases)
    res = SuiteResult("randsup-union-bound", trials)
    configs = [
        ((4, 4, 4), (0.1, 0.1, 0.1)),
        ((3, 3), (0.4, 0.4)),
        ((2,), (0.25,)),
        ((5, 6, 6, 8), (0.05, 0.1, 0.15, 0.2)),
    ]
    for counts, ps in configs:
        cfg = rs.SampleConfig(counts, ps, seed=rng.randrange(1 << 31), trials=trials)
        rep = rs.union_bound_report(cfg, 0)
        if not rep.ok:
            res.failures.append({"ps": ps, "estimate": rep.estimate, "exact": rep.exact})
    return res


def suite_randsup_reproducible(rng: random.Random, cases: int) -> SuiteResult:
    """Identical seeds give identical trajectories."""
    res = SuiteResult("randsup-reproducibility", cases)
    seed = rng.randrange(1 << 31)
    cfg = rs.SampleConfig((3, 4, 5), (0.2, 0.3, 0.1), seed=seed, trials=200)
    if rs.run_join_process(cfg) != rs.run_join_process(cfg):
        res.failures.append({"seed": seed})
    for t in rs.run_join_process(cfg)[:20]:
        if not all(a <= b for a, b in zip(t, t[1:])):
            res.failures.append({"seed": seed, "note": "not monotone"})
    return res


# ---------------------------------------------------------------------------
# registry and runner

SUITES = [
    (suite_span_rank, 60),
    (suite_product_inner, 200),
    (suite_walsh_orthonormal, 1),
    (suite_inf_subspaces, 100),
    (suite_independence_criterion, 200),
    (suite_indep_lattice_identities, 200),
    (suite_projection_laws, 100),
    (suite_product_membership, 60),
    (suite_ntba_constructions, 20),
    (suite_generated_atoms, 30),
    (suite_parity_recoding, 1),
    (suite_superadditivity, 500),
    (suite_membership_triequivalence, 15),
    (suite_split_identity, 20),
    (suite_chaos_additivity, 30),
    (suite_classicality, 40),
    (suite_up_down, 10),
    (suite_presentation_invariance, 20),
    (suite_spectral_complete, 20),
    (suite_walsh_oracle, 1),
    (suite_spectral_invariance, 1),
    (suite_k_monotone, 20),
    (suite_first_level_is_h1, 30),
    (suite_k_additivity, 50),
    (suite_sigma_tower, 5),
    (suite_cofinite_laws, 200),
    (suite_cofinite_truncation, 300),
    (suite_cofinite_complements, 1),
    (suite_cofinite_limits, 60),
    (suite_randsup_distribution, 100_000),
    (suite_randsup_union_bound, 40_000),
    (suite_randsup_reproducible, 1),
]


def run_all(seed: int, cases: int | None = None, inject_fault: bool = False) -> list:
    """Run every suite; per-suite case counts scale with ``cases``.

    ``inject_fault`` flips one probability inside a fabricated independence
    case so the harness contract (nonzero exit, witness payload) can be
    exercised end to end.
    """
    results = []
    for fn, default_cases in SUITES:
        n = default_cases if cases is None else max(1, min(default_cases, cases))
        rng = random.Random(f"{seed}:{fn.__name__}")
        results.append(fn(rng, n))
    if inject_fault:
        bad = mk_space(["a", "b", "c", "d"], [Fraction(1, 4)] * 4)
        x = partition(bad, [[0, 1], [2, 3]])
        skew = mk_space(
            ["a", "b", "c", "d"],
            [Fraction(1, 3), Fraction(1, 6), Fraction(1, 4), Fraction(1, 4)],
        )
        y = partition(skew, [[0, 2], [1, 3]])
        fault = SuiteResult("injected-fault", 1)
        if not independent(partition(skew, [[0, 1], [2, 3]]), y):
            fault.failures.append(
                {
                    "case": 0,
                    "space": _space_witness(skew),
                    "x": _partition_witness(x),
                    "y": _partition_witness(y),
                    "note": "probability flipped by the fault hook",
                }
            )
        results.append(fault)
    return results
