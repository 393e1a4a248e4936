"""Projection onto the all-ones parity mask, closure filtering, and sampling.

The all-ones projection alone certifies Hamiltonian paths from the start
vertex: the n-1 toggles must hit n-1 distinct non-start vertices. Upgrading a
path to a cycle additionally needs the walk's final vertex adjacent to the
start; that closure test is a separate, explicit filter here, and the cycle
mode is the default at the pipeline level.

Probabilities are exact rationals survivors / degree**steps; a 12 significant
digit decimal rendering is provided for reports.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

import numpy as np

from .graphs import Graph
from .state import Superposition


class NoSurvivors(LookupError):
    """Measurement requested on an empty survivor set: no Hamiltonian
    structure exists through the chosen start vertex for this run."""


@dataclass(frozen=True)
class ProjectionResult:
    """Surviving branches with their exact success probability.

    Survivor amplitudes are left unrenormalized, so success_probability is
    simply survivor_count / degree**steps over the pre-projection step count.
    """

    survivors: Superposition
    success_probability: Fraction
    filter_mode: str
    steps: int

    @property
    def survivor_count(self) -> int:
        return self.survivors.state_count

    def probability_parts(self) -> tuple[int, int, int]:
        """Unreduced (numerator, denominator base, denominator exponent)."""
        return self.survivor_count, self.survivors.graph.degree, self.steps


def project_alpha_all_ones(state: Superposition) -> ProjectionResult:
    """Keep exactly the branches whose parity mask is all-ones.

    Canonical at step n-1; accepted at any step (the survivor set is then
    empty whenever fewer than n-1 toggles have happened).
    """
    n = state.graph.n
    target = np.uint32((1 << n) - 1)
    survivors = state.filtered(state.alpha_array == target)
    prob = Fraction(survivors.state_count, state.graph.degree ** state.steps)
    return ProjectionResult(survivors=survivors, success_probability=prob,
                            filter_mode="path", steps=state.steps)


def apply_closure_filter(result: ProjectionResult, g: Graph, start: int) -> ProjectionResult:
    """Keep path-mode survivors whose final vertex is adjacent to the start.

    The probability is recomputed over the original degree**steps denominator,
    not renormalized to the path-mode survivor count.
    """
    if result.filter_mode != "path":
        raise ValueError(f"closure filter expects a path-mode result, got {result.filter_mode!r}")
    walks = result.survivors.walk_matrix
    closes = np.zeros(g.n + 1, dtype=bool)
    for w in g.neighbors(start):
        closes[w] = True
    mask = closes[walks[:, -1]] if len(walks) else np.zeros(0, dtype=bool)
    survivors = result.survivors.filtered(mask)
    prob = Fraction(survivors.state_count, g.degree ** result.steps)
    return ProjectionResult(survivors=survivors, success_probability=prob,
                            filter_mode="cycle", steps=result.steps)


def sample_measurement(result: ProjectionResult, rng_seed: int) -> tuple[int, ...]:
    """Draw one survivor walk, probability proportional to squared magnitude.

    All survivors share the same amplitude exponent, so the draw is uniform
    over the canonical (walk-lexicographic) order; deterministic per seed.
    Raises NoSurvivors on an empty survivor set.
    """
    count = result.survivor_count
    if count == 0:
        raise NoSurvivors(f"no {result.filter_mode}-mode survivors to measure")
    idx = random.Random(rng_seed).randrange(count)
    return tuple(int(v) for v in result.survivors.walk_matrix[idx])


def probability_decimal(prob: Fraction, digits: int = 12) -> str:
    """Exact rational rendered to the given number of significant digits."""
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(prob.numerator) / Decimal(prob.denominator))
