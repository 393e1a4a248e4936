"""Exact classical enumeration of Hamiltonian paths/cycles and walk counts.

This is the ground truth every quantum-side result is checked against. Two
backtracking variants (plain, and with a reachability prune) cross-check each
other; walk counts come from iterated adjacency sums, not enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graphs import Graph

_ENUMERATION_LIMIT = 24


class GraphTooLargeError(ValueError):
    """Instance exceeds the backtracking desk bound."""


@dataclass(frozen=True)
class EnumerationResult:
    """Hamiltonian structures from a fixed start vertex, lexicographically sorted.

    Cycles are directed and anchored: vertex sequences of length n starting at
    the start vertex whose last vertex is adjacent to it. The undirected cycle
    count is len(ham_cycles_from_start) // 2.
    """

    start: int
    ham_paths_from_start: tuple[tuple[int, ...], ...]
    ham_cycles_from_start: tuple[tuple[int, ...], ...]
    walk_counts: tuple[int, ...] = field(default=())


def enumerate_hamiltonian(g: Graph, start: int, pruned: bool = True) -> EnumerationResult:
    """Exhaustively enumerate Hamiltonian paths and anchored cycles from start.

    Neighbor order is ascending, so depth-first emission order is already
    lexicographic. The pruned variant drops partial walks that strand an
    unvisited vertex; both variants return identical sets.
    """
    if g.n > _ENUMERATION_LIMIT:
        raise GraphTooLargeError(f"n={g.n} exceeds enumeration bound {_ENUMERATION_LIMIT}")
    if not 1 <= start <= g.n:
        raise ValueError(f"start vertex {start} out of range 1..{g.n}")

    paths: list[tuple[int, ...]] = []
    cycles: list[tuple[int, ...]] = []
    visited = [False] * (g.n + 1)
    visited[start] = True
    walk = [start]
    start_neighbors = set(g.neighbors(start))

    def extend(v: int) -> None:
        if len(walk) == g.n:
            path = tuple(walk)
            paths.append(path)
            if v in start_neighbors:
                cycles.append(path)
            return
        for w in g.neighbors(v):
            if visited[w]:
                continue
            if pruned and _strands_vertex(g, visited, w):
                continue
            visited[w] = True
            walk.append(w)
            extend(w)
            walk.pop()
            visited[w] = False

    extend(start)
    counts = tuple(count_walks(g, start, j) for j in range(g.n))
    return EnumerationResult(start=start,
                             ham_paths_from_start=tuple(paths),
                             ham_cycles_from_start=tuple(cycles),
                             walk_counts=counts)


def _strands_vertex(g: Graph, visited: list[bool], nxt: int) -> bool:
    """True if stepping to nxt leaves some unvisited vertex unreachable.

    After the step, a vertex can only be entered from the new head (nxt) or
    through a still-unvisited neighbor; a vertex with neither is dead weight
    and the partial walk cannot extend to a Hamiltonian path.
    """
    for u in g.vertices():
        if visited[u] or u == nxt:
            continue
        nbrs = g.neighbors(u)
        if nxt in nbrs:
            continue
        if all(visited[w] for w in nbrs):
            return True
    return False


def count_walks(g: Graph, start: int, j: int) -> int:
    """Number of length-j walks from start, by iterated adjacency counting.

    Exact for any size (Python integers); equals degree**j on a regular graph.
    """
    if j < 0:
        raise ValueError("walk length must be nonnegative")
    counts = [0] * (g.n + 1)
    counts[start] = 1
    for _ in range(j):
        nxt = [0] * (g.n + 1)
        for v in g.vertices():
            cv = counts[v]
            if cv:
                for w in g.neighbors(v):
                    nxt[w] += cv
        counts = nxt
    return sum(counts)


@dataclass(frozen=True)
class ComparisonReport:
    """Set difference between quantum survivors and the oracle's walks."""

    mode: str
    match: bool
    missing: tuple[tuple[int, ...], ...]  # oracle has these, quantum does not
    extra: tuple[tuple[int, ...], ...]  # quantum has these, oracle does not
    survivor_count: int
    oracle_count: int


def compare_with_quantum(g: Graph, start: int, mode: str = "cycle") -> ComparisonReport:
    """Run the full quantum pipeline and diff its survivor walks with the oracle.

    The quantum side runs n-1 unpruned steps, projects onto the all-ones
    parity mask, and in cycle mode applies the closure filter. The signing is
    validated before anything runs (apply_step refuses a broken one).
    """
    from .evolve import StepOptions, run_walk
    from .postselect import apply_closure_filter, project_alpha_all_ones

    if mode not in ("path", "cycle"):
        raise ValueError(f"mode must be 'path' or 'cycle', got {mode!r}")
    oracle = enumerate_hamiltonian(g, start)
    expected = set(oracle.ham_paths_from_start if mode == "path"
                   else oracle.ham_cycles_from_start)

    final = run_walk(g, start, steps=g.n - 1, options=StepOptions())
    result = project_alpha_all_ones(final)
    if mode == "cycle":
        result = apply_closure_filter(result, g, start)
    got = {key.walk for key, _ in result.survivors.items()}

    missing = tuple(sorted(expected - got))
    extra = tuple(sorted(got - expected))
    return ComparisonReport(mode=mode, match=not missing and not extra,
                            missing=missing, extra=extra,
                            survivor_count=len(got), oracle_count=len(expected))
