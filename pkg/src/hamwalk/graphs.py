"""Simple d-regular bipartite graphs: parsing, validation, builtins, generation.

Vertices are labelled 1..n. Every consumer of a Graph relies on the canonical
neighbor order (ascending vertex id); the smallest neighbor of a vertex maps to
the most significant qubit slot of the step operator.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field


class GraphSyntaxError(ValueError):
    """Malformed graph file: bad line, duplicate edge, or vertex out of range."""


class GraphValidationError(ValueError):
    """Adjacency fails one or more structural requirements."""

    def __init__(self, violations: list[str]):
        super().__init__("invalid graph: " + ", ".join(violations))
        self.violations = violations


class UnknownBuiltinError(KeyError):
    """Requested builtin graph name does not exist."""


class GenerationFailedError(RuntimeError):
    """Random generator exhausted its rejection budget."""


# Violation names, in the fixed order validate_graph reports them.
NOT_SIMPLE = "NotSimple"
NOT_REGULAR = "NotRegular"
NOT_BIPARTITE = "NotBipartite"
NOT_CONNECTED = "NotConnected"
NOT_SYMMETRIC = "NotSymmetric"

_GENERATION_ATTEMPTS = 10_000


@dataclass(frozen=True)
class Graph:
    """Immutable simple d-regular bipartite graph with canonical neighbor order.

    adjacency[v - 1] is the strictly ascending tuple of neighbors of vertex v.
    parts is the 2-coloring as a pair of frozensets, the part containing
    vertex 1 first.
    """

    n: int
    degree: int
    adjacency: tuple[tuple[int, ...], ...]
    parts: tuple[frozenset[int], frozenset[int]]
    name: str = field(default="", compare=False)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v - 1]

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (u, w) with u < w, sorted."""
        return [(u, w) for u in self.vertices() for w in self.adjacency[u - 1] if u < w]

    def part_of(self, v: int) -> int:
        """0 if v is in the part of vertex 1, else 1."""
        return 0 if v in self.parts[0] else 1

    def serialize(self) -> str:
        """Canonical graph file text; parse(serialize(g)) == g."""
        lines = [f"v {self.n}"]
        lines += [f"e {u} {w}" for u, w in self.edges()]
        return "\n".join(lines) + "\n"

    def content_hash(self) -> str:
        """Short stable hash of the canonical serialization."""
        return hashlib.sha256(self.serialize().encode()).hexdigest()[:12]


def validate_graph(adjacency: dict[int, list[int]] | tuple[tuple[int, ...], ...],
                   n: int | None = None) -> list[str]:
    """Check raw adjacency and return the list of violated property names.

    An empty list means the adjacency is a simple, regular, bipartite,
    connected, symmetric graph. Accepts either a vertex->neighbors mapping
    or a 0-indexed sequence of neighbor sequences.
    """
    if isinstance(adjacency, dict):
        if n is None:
            n = max(adjacency) if adjacency else 0
        neigh = {v: list(adjacency.get(v, [])) for v in range(1, n + 1)}
    else:
        if n is None:
            n = len(adjacency)
        neigh = {v: list(adjacency[v - 1]) for v in range(1, n + 1)}

    violations: list[str] = []

    simple = all(v not in nb and len(set(nb)) == len(nb) for v, nb in neigh.items())
    if not simple:
        violations.append(NOT_SIMPLE)

    degrees = {len(set(nb) - {v}) for v, nb in neigh.items()}
    if len(degrees) != 1 or 0 in degrees:
        violations.append(NOT_REGULAR)

    sym = all(u in neigh.get(w, []) for u, nb in neigh.items() for w in set(nb) if 1 <= w <= n)
    if not sym or any(w < 1 or w > n for nb in neigh.values() for w in nb):
        violations.append(NOT_SYMMETRIC)

    color, connected = _two_color(neigh, n)
    if not connected:
        violations.append(NOT_CONNECTED)
    if color is None:
        violations.append(NOT_BIPARTITE)

    order = [NOT_SIMPLE, NOT_REGULAR, NOT_BIPARTITE, NOT_CONNECTED, NOT_SYMMETRIC]
    return [name for name in order if name in violations]


def _two_color(neigh: dict[int, list[int]], n: int) -> tuple[dict[int, int] | None, bool]:
    """BFS 2-coloring over all components. Returns (coloring or None, connected)."""
    color: dict[int, int] = {}
    components = 0
    bipartite = True
    for root in range(1, n + 1):
        if root in color:
            continue
        components += 1
        color[root] = 0
        queue = [root]
        while queue:
            v = queue.pop()
            for w in neigh.get(v, []):
                if w < 1 or w > n or w == v:
                    continue
                if w not in color:
                    color[w] = color[v] ^ 1
                    queue.append(w)
                elif color[w] == color[v]:
                    bipartite = False
    return (color if bipartite else None), components <= 1


def _build_graph(n: int, edges: list[tuple[int, int]], name: str = "") -> Graph:
    """Assemble and fully validate a Graph from an edge list."""
    neigh: dict[int, list[int]] = {v: [] for v in range(1, n + 1)}
    for u, w in edges:
        neigh[u].append(w)
        neigh[w].append(u)
    violations = validate_graph(neigh, n)
    if violations:
        raise GraphValidationError(violations)
    color, _ = _two_color(neigh, n)
    assert color is not None
    adjacency = tuple(tuple(sorted(neigh[v])) for v in range(1, n + 1))
    parts = (frozenset(v for v in range(1, n + 1) if color[v] == color[1]),
             frozenset(v for v in range(1, n + 1) if color[v] != color[1]))
    return Graph(n=n, degree=len(adjacency[0]), adjacency=adjacency, parts=parts, name=name)


def parse_graph(text: str, name: str = "") -> Graph:
    """Parse graph file text into a validated Graph.

    Format, line oriented: '#' starts a comment, first payload line is
    'v <n>', each following line 'e <u> <w>' with 1 <= u < w <= n.
    Duplicate edges are a syntax error.
    """
    n: int | None = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if n is None:
            if len(fields) != 2 or fields[0] != "v" or not fields[1].isdigit() or int(fields[1]) < 1:
                raise GraphSyntaxError(f"line {lineno}: expected 'v <n>', got {raw!r}")
            n = int(fields[1])
            continue
        if len(fields) != 3 or fields[0] != "e":
            raise GraphSyntaxError(f"line {lineno}: expected 'e <u> <w>', got {raw!r}")
        try:
            u, w = int(fields[1]), int(fields[2])
        except ValueError:
            raise GraphSyntaxError(f"line {lineno}: non-integer endpoint in {raw!r}") from None
        if not (1 <= u < w <= n):
            raise GraphSyntaxError(f"line {lineno}: endpoints must satisfy 1 <= u < w <= n")
        if (u, w) in seen:
            raise GraphSyntaxError(f"line {lineno}: duplicate edge {u}-{w}")
        seen.add((u, w))
        edges.append((u, w))
    if n is None:
        raise GraphSyntaxError("missing 'v <n>' header line")
    return _build_graph(n, edges, name=name)


def _cycle_edges(vertices: list[int]) -> list[tuple[int, int]]:
    return [tuple(sorted((vertices[i], vertices[(i + 1) % len(vertices)])))
            for i in range(len(vertices))]


def _prism(m: int) -> list[tuple[int, int]]:
    """Prism over an m-cycle: outer cycle 1..m, inner cycle m+1..2m, spokes."""
    edges = _cycle_edges(list(range(1, m + 1)))
    edges += _cycle_edges(list(range(m + 1, 2 * m + 1)))
    edges += [(j, m + j) for j in range(1, m + 1)]
    return edges


def _heawood() -> list[tuple[int, int]]:
    # 14-cycle plus a chord from each even-position vertex five steps ahead;
    # the unique (3,6)-cage.
    edges = _cycle_edges(list(range(1, 15)))
    for i in range(0, 14, 2):
        edges.append(tuple(sorted((i + 1, (i + 5) % 14 + 1))))
    return edges


def _moebius_kantor() -> list[tuple[int, int]]:
    # Generalized Petersen graph GP(8,3): outer 8-cycle, spokes, inner skip-3 cycle.
    edges = _cycle_edges(list(range(1, 9)))
    edges += [(j, 8 + j) for j in range(1, 9)]
    edges += [tuple(sorted((8 + j, 8 + (j + 2) % 8 + 1))) for j in range(1, 9)]
    return edges


def _cube8() -> list[tuple[int, int]]:
    # 8-cycle plus chords fixed so that neighbors(1) == (2, 4, 8).
    return _cycle_edges(list(range(1, 9))) + [(1, 4), (2, 7), (3, 6), (5, 8)]


_BUILTIN_EDGES = {
    "c4": lambda: _cycle_edges([1, 2, 3, 4]),
    "k33": lambda: [(u, w) for u in (1, 3, 5) for w in (2, 4, 6)],
    "cube8": _cube8,
    "heawood": _heawood,
    "moebius_kantor": _moebius_kantor,
}

_BUILTIN_N = {"c4": 4, "k33": 6, "cube8": 8, "heawood": 14, "moebius_kantor": 16}


def builtin_names() -> list[str]:
    """Names accepted by builtin_graph (prism<m> for any even m >= 4)."""
    return sorted(_BUILTIN_EDGES) + ["prism<m>"]


def builtin_graph(name: str) -> Graph:
    """Return a named graph from the builtin library.

    Knows c4, k33, cube8, heawood, moebius_kantor, and the prism family
    prism<m> over an even m-cycle (e.g. prism6 has 12 vertices). cube8 is the
    canonical 8-vertex cubic bipartite example; only its neighbor set at
    vertex 1, (2, 4, 8), is externally constrained, the remaining chords are
    a documented convention.
    """
    key = name.strip().lower()
    if key in _BUILTIN_EDGES:
        return _build_graph(_BUILTIN_N[key], _BUILTIN_EDGES[key](), name=key)
    if key.startswith("prism") and key[5:].isdigit():
        m = int(key[5:])
        if m < 4 or m % 2:
            raise UnknownBuiltinError(f"prism cycle length must be even and >= 4, got {m}")
        return _build_graph(2 * m, _prism(m), name=key)
    raise UnknownBuiltinError(name)


def random_regular_bipartite(half: int, d: int, seed: int) -> Graph:
    """Random simple connected d-regular bipartite graph on 2*half vertices.

    Odd labels form one part, even labels the other. The edge set is the
    union of d perfect matchings between the parts, redrawn until the union
    is simple and connected. Deterministic for fixed (half, d, seed).
    """
    if d < 1:
        raise GenerationFailedError(f"degree must be >= 1, got {d}")
    if half < d:
        raise GenerationFailedError(
            f"no simple {d}-regular bipartite graph on parts of size {half}")
    rng = random.Random(seed)
    odds = [2 * i + 1 for i in range(half)]
    evens = [2 * i + 2 for i in range(half)]
    for _ in range(_GENERATION_ATTEMPTS):
        edges: set[tuple[int, int]] = set()
        ok = True
        for _ in range(d):
            perm = list(range(half))
            rng.shuffle(perm)
            for i, j in enumerate(perm):
                e = (odds[i], evens[j])
                if e in edges:
                    ok = False
                    break
                edges.add(e)
            if not ok:
                break
        if not ok:
            continue
        neigh: dict[int, list[int]] = {v: [] for v in range(1, 2 * half + 1)}
        for u, w in edges:
            neigh[u].append(w)
            neigh[w].append(u)
        _, connected = _two_color(neigh, 2 * half)
        if not connected:
            continue
        return _build_graph(2 * half, sorted(edges), name=f"rand-h{half}-d{d}-s{seed}")
    raise GenerationFailedError(
        f"no simple connected union of {d} matchings found in "
        f"{_GENERATION_ATTEMPTS} attempts (half={half}, seed={seed})")
