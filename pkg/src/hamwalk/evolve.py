"""One algorithm step: split every branch into d successors via the flip matrix.

The machine model applies one controlled operator per vertex of the active
bipartition class; because each branch satisfies exactly one conditioning
predicate per step (the walker is at exactly one vertex), iterating branches
is equivalent to iterating operators and is linear in live terms. Each branch
at vertex v reads the d-bit parity word of v's ascending neighbors (smallest
neighbor = most significant bit), and the signing's column at that word fans
the branch out into d successors, one per flipped neighbor bit: the stepped-to
neighbor's parity bit toggles, the walk extends, the amplitude picks up the
matrix entry's sign and one more factor of degree**(-1/2).
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .graphs import Graph
from .signing import FlipUnitary, build_flip_unitary, verify_flip_unitary
from .state import Superposition, initial_state


class StepLimitExceeded(ValueError):
    """A walk of more than n-1 steps does not fit the register file."""


class TermLimitExceeded(RuntimeError):
    """Next step would exceed the configured term cap."""


@dataclass(frozen=True)
class StepOptions:
    """Evolution knobs.

    prune drops branches that provably cannot reach the all-ones parity mask
    within the n-1 step horizon (never changes post-projection results).
    signing defaults to the canonical recursive construction for the graph's
    degree; any matrix passing verify_flip_unitary is accepted.
    max_terms aborts a step that would exceed the cap.
    """

    prune: bool = False
    signing: FlipUnitary | None = None
    max_terms: int | None = None


@dataclass(frozen=True)
class StepStats:
    """Per-step telemetry record for the stats channel."""

    step: int
    terms: int
    pruned: int
    ms: float

    def format(self) -> str:
        return f"step={self.step} terms={self.terms} pruned={self.pruned} ms={self.ms:.2f}"


def _checked_signing(options: StepOptions | None, degree: int) -> FlipUnitary:
    signing = options.signing if options and options.signing is not None else None
    if signing is None:
        return build_flip_unitary(degree)
    report = verify_flip_unitary(signing.entries, degree)
    if not (report.unitary and report.single_flip_support):
        raise ValueError(f"signing rejected for degree {degree}: {report}")
    return signing


def _sign_lut(signing: FlipUnitary, d: int) -> np.ndarray:
    """(2^d, d) table: entry [w, s] is the signing's column-w entry for the
    output word that flips neighbor slot s (slot 0 = most significant bit)."""
    m = signing.as_array()
    size = 1 << d
    lut = np.empty((size, d), dtype=np.int8)
    for w in range(size):
        for s in range(d):
            lut[w, s] = m[w ^ (1 << (d - 1 - s)), w]
    return lut


def _neighbor_table(g: Graph) -> np.ndarray:
    return np.array(g.adjacency, dtype=np.uint8)


def apply_step(state: Superposition, options: StepOptions | None = None) -> Superposition:
    """Evolve every branch one step; returns the successor superposition.

    Successors of a lex-sorted input, emitted per parent in ascending-neighbor
    order, are again lex-sorted, so keys stay canonical with no re-sort. Key
    collisions are structurally impossible: distinct parents have distinct
    walk prefixes, and one parent's d successors end at d distinct neighbors.
    """
    g = state.graph
    d = g.degree
    j = state.steps
    if j + 1 > g.n - 1:
        raise StepLimitExceeded(f"step {j + 1} exceeds limit {g.n - 1} for n={g.n}")
    if options is not None and options.max_terms is not None:
        if state.state_count * d > options.max_terms:
            raise TermLimitExceeded(
                f"step {j + 1} would create {state.state_count * d} terms "
                f"(cap {options.max_terms})")
    signing = _checked_signing(options, d)
    lut = _sign_lut(signing, d)
    nbr = _neighbor_table(g)

    terms = state.state_count
    alpha = state.alpha_array
    walks = state.walk_matrix
    signs = state.sign_array

    current = walks[:, -1].astype(np.intp) - 1
    child_v = nbr[current]  # (terms, d), ascending within each row
    shifts = child_v.astype(np.uint32) - 1
    bits = (alpha[:, None] >> shifts) & 1  # parity bit of each neighbor slot
    weights = np.uint32(1) << np.arange(d - 1, -1, -1, dtype=np.uint32)
    words = (bits * weights).sum(axis=1).astype(np.intp)

    child_sign = (signs[:, None] * lut[words]).astype(np.int8)
    child_alpha = (alpha[:, None] ^ (np.uint32(1) << shifts)).astype(np.uint32)
    child_walks = np.empty((terms, d, j + 2), dtype=np.uint8)
    child_walks[:, :, : j + 1] = walks[:, None, :]
    child_walks[:, :, j + 1] = child_v

    child_alpha = child_alpha.reshape(-1)
    child_sign = child_sign.reshape(-1)
    child_walks = child_walks.reshape(terms * d, j + 2)

    if options is not None and options.prune:
        keep = _viable(g, child_alpha, child_v.reshape(-1), j + 1)
        child_alpha = child_alpha[keep]
        child_sign = child_sign[keep]
        child_walks = child_walks[keep]

    return Superposition(g, j + 1, child_alpha, child_walks, child_sign)


def _viable(g: Graph, alpha: np.ndarray, current: np.ndarray, step: int) -> np.ndarray:
    """Conservative liveness test against the n-1 step projection horizon.

    Every remaining step toggles one parity bit of a neighbor of the current
    vertex, so a branch whose count of zero bits at vertices other than the
    current one exceeds the remaining steps can never reach all-ones.
    """
    remaining = (g.n - 1) - step
    ones = np.bitwise_count(alpha).astype(np.int64)
    current_bit = ((alpha >> (current.astype(np.uint32) - 1)) & 1).astype(np.int64)
    zeros_elsewhere = g.n - ones - (1 - current_bit)
    return zeros_elsewhere <= remaining


def run_walk(g: Graph, start: int, steps: int | None = None,
             options: StepOptions | None = None,
             on_step: Callable[[StepStats], None] | None = None) -> Superposition:
    """Fold the initial state through apply_step the given number of times.

    steps defaults to n-1, the full register file. Per-step telemetry goes to
    the on_step callback when provided.
    """
    if steps is None:
        steps = g.n - 1
    if not 0 <= steps <= g.n - 1:
        raise StepLimitExceeded(f"steps must be in 0..{g.n - 1}, got {steps}")
    state = initial_state(g, start)
    for _ in range(steps):
        before = state.state_count
        t0 = time.perf_counter()
        state = apply_step(state, options)
        elapsed = (time.perf_counter() - t0) * 1000.0
        if on_step is not None:
            on_step(StepStats(step=state.steps, terms=state.state_count,
                              pruned=before * g.degree - state.state_count,
                              ms=elapsed))
    return state


def gate_count(g: Graph, steps: int, start: int = 1) -> int:
    """Controlled-operator applications in the alternating schedule.

    The first step conditions only on the start vertex; each later step j
    applies one conditioned operator per vertex of the bipartition class the
    walker occupies after j-1 steps. Balanced graphs give 1 + (steps-1) * n/2,
    which stays at most n**2 for steps <= n-1.
    """
    if steps > g.n - 1:
        raise StepLimitExceeded(f"steps must be <= {g.n - 1}, got {steps}")
    if steps <= 0:
        return 0
    start_part = g.part_of(start)
    total = 1
    for j in range(2, steps + 1):
        active = (start_part + (j - 1)) % 2
        total += len(g.parts[active])
    return total
