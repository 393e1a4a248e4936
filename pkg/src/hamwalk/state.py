"""Exact sparse superposition over walk histories.

A basis label is (alpha, walk): alpha is the n-bit visit-parity mask (bit v-1
is the parity qubit of vertex v, so stepping onto an already-visited vertex
flips its 1 back to 0), and walk is the sequence of positions, one per step
register. The register file in the underlying machine model is one-hot; the
vertex-id sequence stored here is the same information under that bijection.

Because two distinct branches always carry distinct walk histories, amplitudes
never add. Every amplitude is therefore exactly sign * degree**(-halfpow/2),
stored as the integer pair (sign, halfpow) with no floating point anywhere.

Internally a superposition is a struct of arrays, lexicographically ordered by
walk: a (terms, steps+1) uint8 walk matrix, a uint32 parity-mask vector and an
int8 sign vector. alpha is derivable from the walk; it is kept materialized so
projection is a single vector compare.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, NamedTuple

import numpy as np

from .graphs import Graph


class VertexOutOfRangeError(ValueError):
    """Start vertex does not exist in the graph."""


class InternalCollisionError(RuntimeError):
    """Two branches produced the same key; structurally impossible."""


class Amplitude(NamedTuple):
    """Exact amplitude sign * d**(-halfpow/2)."""

    sign: int
    halfpow: int

    def squared(self, degree: int) -> Fraction:
        return Fraction(1, degree ** self.halfpow)


class BranchKey(NamedTuple):
    """Computational basis label: parity mask plus full walk history."""

    alpha: int
    walk: tuple[int, ...]


class Superposition:
    """Immutable snapshot of the machine state after a number of steps."""

    def __init__(self, graph: Graph, steps: int, alpha: np.ndarray,
                 walks: np.ndarray, signs: np.ndarray):
        if walks.ndim != 2 or walks.shape[1] != steps + 1:
            raise ValueError(f"walk matrix must be (terms, {steps + 1}), got {walks.shape}")
        if not (len(alpha) == len(walks) == len(signs)):
            raise ValueError("alpha, walks and signs must have equal length")
        self.graph = graph
        self.steps = steps
        self._alpha = alpha
        self._walks = walks
        self._signs = signs
        for arr in (alpha, walks, signs):
            arr.setflags(write=False)

    @property
    def alpha_array(self) -> np.ndarray:
        """uint32 parity masks, one per term (read-only view)."""
        return self._alpha

    @property
    def walk_matrix(self) -> np.ndarray:
        """uint8 (terms, steps+1) walk matrix, lex-sorted rows (read-only)."""
        return self._walks

    @property
    def sign_array(self) -> np.ndarray:
        """int8 signs, one per term (read-only view)."""
        return self._signs

    def __len__(self) -> int:
        return len(self._signs)

    @property
    def state_count(self) -> int:
        """Number of branches in the superposition."""
        return len(self._signs)

    @property
    def halfpow(self) -> int:
        """Common amplitude exponent: every branch is +-d**(-steps/2)."""
        return self.steps

    def norm_squared(self) -> Fraction:
        """Exact total squared norm: state_count * degree**(-steps)."""
        return Fraction(self.state_count, self.graph.degree ** self.steps)

    def key(self, i: int) -> BranchKey:
        return BranchKey(int(self._alpha[i]), tuple(int(v) for v in self._walks[i]))

    def amplitude(self, i: int) -> Amplitude:
        return Amplitude(int(self._signs[i]), self.steps)

    def items(self) -> Iterator[tuple[BranchKey, Amplitude]]:
        """Branches in canonical (walk-lexicographic) order."""
        for i in range(len(self)):
            yield self.key(i), self.amplitude(i)

    def filtered(self, mask: np.ndarray) -> "Superposition":
        """Sub-superposition of the masked terms; order and amplitudes kept."""
        return Superposition(self.graph, self.steps, self._alpha[mask],
                             self._walks[mask], self._signs[mask])

    def dump(self) -> str:
        """Debug listing, one branch per line, stable across runs.

        Line format: '<sign> d^-<k>/2 alpha=<binary> walk=<v0,v1,...>' with
        alpha rendered in ket order (vertex 1 leftmost).
        """
        n = self.graph.n
        lines = []
        for (alpha, walk), (sign, halfpow) in self.items():
            bits = "".join("1" if alpha >> v & 1 else "0" for v in range(n))
            verts = ",".join(str(v) for v in walk)
            lines.append(f"{'+' if sign > 0 else '-'} d^-{halfpow}/2 alpha={bits} walk={verts}")
        return "\n".join(lines)

    def audit(self) -> None:
        """Recheck every structural invariant; raises on any defect.

        Verifies walk adjacency, the alpha-equals-parity-fold law, strict
        walk-lexicographic order (which also implies key uniqueness), and
        sign domain. Intended for tests and debugging, cost O(terms * steps).
        """
        g = self.graph
        walks = self._walks
        if len(walks) == 0:
            return
        if walks.min() < 1 or walks.max() > g.n:
            raise ValueError("walk entry out of vertex range")
        adj = np.zeros((g.n + 1, g.n + 1), dtype=bool)
        for v in g.vertices():
            for w in g.neighbors(v):
                adj[v, w] = True
        for col in range(1, walks.shape[1]):
            if not adj[walks[:, col - 1], walks[:, col]].all():
                raise ValueError(f"non-adjacent step at walk position {col}")
        folded = np.zeros(len(walks), dtype=np.uint32)
        folded ^= np.uint32(1) << (walks[:, 0].astype(np.uint32) - 1)
        for col in range(1, walks.shape[1]):
            folded ^= np.uint32(1) << (walks[:, col].astype(np.uint32) - 1)
        if not np.array_equal(folded, self._alpha):
            raise ValueError("alpha mask disagrees with parity fold of walk")
        if not np.isin(self._signs, (-1, 1)).all():
            raise ValueError("sign outside {-1, +1}")
        if len(walks) > 1:
            prev, cur = walks[:-1], walks[1:]
            diff = prev != cur
            first = diff.argmax(axis=1)
            rows = np.arange(len(first))
            if not diff.any(axis=1).all():
                raise InternalCollisionError("duplicate walk key")
            if not (prev[rows, first] < cur[rows, first]).all():
                raise ValueError("walk matrix is not lexicographically sorted")


def initial_state(g: Graph, start: int) -> Superposition:
    """Single branch: walker parked at start, its parity bit set, amplitude +1."""
    if not 1 <= start <= g.n:
        raise VertexOutOfRangeError(f"start vertex {start} not in 1..{g.n}")
    alpha = np.array([1 << (start - 1)], dtype=np.uint32)
    walks = np.array([[start]], dtype=np.uint8)
    signs = np.array([1], dtype=np.int8)
    return Superposition(g, 0, alpha, walks, signs)
