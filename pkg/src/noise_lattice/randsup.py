"""Random elements of finite Boolean algebras and the join process.

An element is sampled by flipping one biased coin per atom; the join
process accumulates such samples over nested algebras (here realized
combinatorially: level k has atoms 1..n_k and the inclusions are identity
on indices).  Monte-Carlo estimates are compared against the exact closed
forms, and the probability that a fixed atom has been swallowed is checked
against its union bound.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError


@dataclass(frozen=True)
class SampleConfig:
    atom_counts: tuple
    ps: tuple
    seed: int
    trials: int
    c_exponents: tuple | None = None  # defaults to n^2 per level

    def __post_init__(self):
        if len(self.atom_counts) != len(self.ps):
            raise ValueError("atom_counts and ps must have equal length")
        if not self.ps:
            raise ValueError("at least one level is required")
        if any(not 0.0 < p < 1.0 for p in self.ps):
            raise PreconditionError("each p must lie strictly between 0 and 1")
        if any(b < a for a, b in zip(self.atom_counts, self.atom_counts[1:])):
            raise ValueError("atom counts must be nondecreasing")
        if self.trials < 1:
            raise ValueError("at least one trial is required")


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """A counter-based per-trial stream: Philox keyed by (seed, trial)."""
    return np.random.Generator(
        np.random.Philox(np.random.SeedSequence(entropy=seed, spawn_key=(trial,)))
    )


def sample_element(n_atoms: int, p: float, rng: np.random.Generator) -> frozenset:
    """Include each atom independently with probability p."""
    if not 0.0 < p < 1.0:
        raise PreconditionError("p must lie strictly between 0 and 1")
    draws = rng.random(n_atoms)
    return frozenset(int(i) for i in np.nonzero(draws < p)[0])


def run_join_process(cfg: SampleConfig, sampler=None) -> list:
    """Per trial, the increasing chain of cumulative joins Y_1 <= Y_2 <= ...

    Returned as a list of tuples of frozensets of atom indices.  ``sampler``
    replaces the per-level draw (same signature as sample_element); the
    test hook for forcing degenerate draws.
    """
    draw = sampler or sample_element
    out = []
    for t in range(cfg.trials):
        rng = trial_rng(cfg.seed, t)
        acc: frozenset = frozenset()
        traj = []
        for n_atoms, p in zip(cfg.atom_counts, cfg.ps):
            acc = acc | draw(n_atoms, p, rng)
            traj.append(acc)
        out.append(tuple(traj))
    return out


@dataclass
class UnionBoundReport:
    estimate: float
    exact: float
    bound: float
    sigma: float
    within_three_sigma: bool
    below_bound: bool

    @property
    def ok(self) -> bool:
        return self.within_three_sigma and self.below_bound


def union_bound_report(cfg: SampleConfig, atom: int) -> UnionBoundReport:
    """Estimate Pr[atom <= Y_n] and compare with 1 - prod(1-p_k) <= sum p_k."""
    if sum(cfg.ps) >= 1.0:
        raise PreconditionError("the union-bound experiment needs sum(p) < 1")
    if not 0 <= atom < min(cfg.atom_counts):
        raise PreconditionError("the atom must exist at every level")
    hits = 0
    for t in range(cfg.trials):
        rng = trial_rng(cfg.seed, t)
        for n_atoms, p in zip(cfg.atom_counts, cfg.ps):
            if atom in sample_element(n_atoms, p, rng):
                hits += 1
                break
    estimate = hits / cfg.trials
    exact = 1.0
    for p in cfg.ps:
        exact *= 1.0 - p
    exact = 1.0 - exact
    bound = float(sum(cfg.ps))
    sigma = (exact * (1.0 - exact) / cfg.trials) ** 0.5
    return UnionBoundReport(
        estimate,
        exact,
        bound,
        sigma,
        abs(estimate - exact) <= 3.0 * sigma,
        estimate <= bound + 3.0 * sigma,
    )


def element_counts(n_atoms: int, p: float, seed: int, trials: int) -> np.ndarray:
    """Histogram of sampled elements over all 2^n atom subsets (bitmask order)."""
    counts = np.zeros(1 << n_atoms, dtype=np.int64)
    for t in range(trials):
        rng = trial_rng(seed, t)
        mask = 0
        for i in sample_element(n_atoms, p, rng):
            mask |= 1 << i
        counts[mask] += 1
    return counts


def element_distribution_pvalue(n_atoms: int, p: float, seed: int, trials: int):
    """Chi-square p-value of the sampled histogram against p^k (1-p)^(n-k)."""
    from scipy import stats

    counts = element_counts(n_atoms, p, seed, trials)
    expected = np.array(
        [
            trials * p ** bin(m).count("1") * (1 - p) ** (n_atoms - bin(m).count("1"))
            for m in range(1 << n_atoms)
        ]
    )
    result = stats.chisquare(counts, expected)
    return float(result.pvalue), counts, expected


def inclusion_decay(cfg: SampleConfig) -> list:
    """The sequence (1-p_n)^(c_n), reported for inspection only."""
    cs = cfg.c_exponents or tuple((n + 1) ** 2 for n in range(len(cfg.ps)))
    return [float((1.0 - p) ** c) for p, c in zip(cfg.ps, cs)]
