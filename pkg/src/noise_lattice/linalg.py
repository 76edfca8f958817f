"""Exact rational and float linear algebra on coordinate vectors.

Rational vectors are scaled to integers and routed through the elimination
kernels; float vectors go through numpy.  Every rank/equality decision is
made inside one backend, never by mixing the two.
"""

from fractions import Fraction
from math import gcd

import numpy as np

from .kernels import orthogonalize_int, row_echelon_int

FLOAT_TOL = 1e-9


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def scale_row_to_int(row) -> list:
    """Clear denominators of one vector of Fractions (or ints)."""
    den = 1
    for x in row:
        if isinstance(x, Fraction):
            den = _lcm(den, x.denominator)
    return [int(x * den) for x in row]


def scale_weights_to_int(weights):
    """Clear denominators of a weight vector; returns (ints, scale)."""
    den = 1
    for w in weights:
        den = _lcm(den, Fraction(w).denominator)
    return [int(Fraction(w) * den) for w in weights], den


def exact_rank(rows) -> int:
    rows = [scale_row_to_int(r) for r in rows]
    rows = [r for r in rows if any(r)]
    if not rows:
        return 0
    _, piv = row_echelon_int(rows)
    return len(piv)


def exact_rref(rows):
    """Canonical reduced row echelon form over the rationals.

    Returns a tuple of tuples of Fractions with unit pivots and zeros above
    them; two lists of vectors span the same subspace iff their forms are
    equal, which makes this the canonical key for subspace identity.
    """
    int_rows = [scale_row_to_int(r) for r in rows]
    int_rows = [r for r in int_rows if any(r)]
    if not int_rows:
        return ()
    ech, piv = row_echelon_int(int_rows)
    work = [[Fraction(x) for x in ech[i]] for i in range(len(piv))]
    for i in reversed(range(len(piv))):
        c = piv[i]
        pivval = work[i][c]
        work[i] = [x / pivval for x in work[i]]
        for j in range(i):
            f = work[j][c]
            if f:
                work[j] = [a - f * b for a, b in zip(work[j], work[i])]
    return tuple(tuple(r) for r in work)


def exact_nullspace(rows):
    """Basis of {v : M v = 0} over the rationals, deterministic order.

    One basis vector per free column, with that coordinate set to 1.
    """
    int_rows = [scale_row_to_int(r) for r in rows]
    int_rows = [r for r in int_rows if any(r)]
    if not int_rows:
        return None  # caller interprets: whole space
    nc = len(int_rows[0])
    rref = exact_rref(int_rows)
    piv = []
    for r in rref:
        for c, x in enumerate(r):
            if x:
                piv.append(c)
                break
    pivset = set(piv)
    basis = []
    for free in range(nc):
        if free in pivset:
            continue
        v = [Fraction(0)] * nc
        v[free] = Fraction(1)
        for i, c in enumerate(piv):
            v[c] = -rref[i][free]
        basis.append(v)
    return basis


def exact_orthogonalize(vectors, weights):
    """Weighted Gram-Schmidt over the rationals, unnormalized.

    Returns (basis, norms2) where basis vectors have integer entries
    (as Fractions) and norms2 are their exact squared weighted norms.
    """
    w_int, scale = scale_weights_to_int(weights)
    int_vecs = [scale_row_to_int(v) for v in vectors]
    basis, norms = orthogonalize_int(int_vecs, w_int)
    out_basis = [[Fraction(x) for x in b] for b in basis]
    out_norms = [Fraction(n, scale) for n in norms]
    return out_basis, out_norms


def float_orthonormalize(vectors, weights, tol: float = FLOAT_TOL):
    """Modified Gram-Schmidt with weighted inner product; drops near-zeros."""
    w = np.asarray(weights, dtype=float)
    basis = []
    for v in vectors:
        v = np.asarray(v, dtype=float).copy()
        for _ in range(2):  # re-orthogonalize once for stability
            for b in basis:
                v -= np.dot(w * b, v) * b
        n = np.sqrt(np.dot(w * v, v))
        if n > tol:
            basis.append(v / n)
    return basis


def _svd_cutoff(s, shape, tol: float) -> float:
    # relative to the top singular value, but never below the absolute tol
    # (otherwise an all-but-zero matrix would keep full numerical rank)
    top = float(s[0]) if len(s) else 0.0
    return max(tol, tol * max(shape) * top)


def float_rank(rows, tol: float = FLOAT_TOL) -> int:
    m = np.asarray(rows, dtype=float)
    if m.size == 0:
        return 0
    s = np.linalg.svd(m, compute_uv=False)
    return int(np.sum(s > _svd_cutoff(s, m.shape, tol)))


def float_nullspace(rows, tol: float = FLOAT_TOL):
    m = np.asarray(rows, dtype=float)
    if m.size == 0:
        return None
    _, s, vt = np.linalg.svd(m)
    rank = int(np.sum(s > _svd_cutoff(s, m.shape, tol)))
    return [vt[i] for i in range(rank, vt.shape[0])]
