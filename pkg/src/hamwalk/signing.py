"""Signed single-bit-flip step matrices and their exact integer audit.

A degree-d step operator acts on the d visit-parity qubits of a vertex's
neighbors. In the lexicographic basis |0..0>, |0..1>, ..., |1..1> its matrix M
has integer entries in {-1, 0, +1}, is nonzero exactly where row XOR column has
a single set bit (every transition flips one neighbor bit), and satisfies
M @ M.T == d * I so that M / sqrt(d) is unitary. The sqrt(d) scale is carried
symbolically; no floating point enters any check here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

Matrix = tuple[tuple[int, ...], ...]


class DimensionMismatchError(ValueError):
    """Candidate matrix is not 2^d x 2^d."""


@dataclass(frozen=True)
class FlipUnitary:
    """Signed flip matrix of a given degree, scale 1/sqrt(degree) implied."""

    degree: int
    entries: Matrix

    def as_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64)

    @property
    def scale(self) -> str:
        return f"1/sqrt({self.degree})"

    def __str__(self) -> str:
        width = max(len(str(x)) for row in self.entries for x in row)
        rows = ["[" + " ".join(f"{x:>{width}}" for x in row) + "]" for row in self.entries]
        return "\n".join(rows) + f"\n(scale {self.scale}, basis |{'0' * self.degree}> .. |{'1' * self.degree}>)"


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of auditing a candidate step matrix.

    first_violation is ("rows", i, j) for the earliest row pair (1-based,
    row-major scan of the Gram matrix against d*I) when unitarity fails, else
    ("entry", r, c) for the earliest support defect, else None.
    violation_value is the offending Gram entry or matrix entry.
    """

    unitary: bool
    single_flip_support: bool
    first_violation: tuple[str, int, int] | None = None
    violation_value: int | None = None


def build_flip_unitary(d: int) -> FlipUnitary:
    """Recursive signed construction: A_1 = [[0,1],[1,0]], A_d = [[A,I],[I,-A]].

    Satisfies both invariants for every d >= 1: single-bit-flip support and
    A_d @ A_d.T == d * I in exact integers.
    """
    if not 1 <= d <= 10:
        raise ValueError(f"degree must be in 1..10, got {d}")
    a = np.array([[0, 1], [1, 0]], dtype=np.int64)
    for _ in range(d - 1):
        eye = np.eye(len(a), dtype=np.int64)
        a = np.block([[a, eye], [eye, -a]])
    return FlipUnitary(degree=d, entries=tuple(tuple(int(x) for x in row) for row in a))


def verify_flip_unitary(matrix: Matrix | np.ndarray, d: int) -> VerifyReport:
    """Audit a candidate against both invariants in exact integer arithmetic."""
    m = np.asarray(matrix, dtype=np.int64)
    size = 2 ** d
    if m.shape != (size, size):
        raise DimensionMismatchError(f"expected {size}x{size} for d={d}, got {m.shape}")

    gram = m @ m.T
    target = d * np.eye(size, dtype=np.int64)
    unitary = bool(np.array_equal(gram, target))

    rows, cols = np.indices((size, size))
    support_ok = np.where((m != 0), _popcount(rows ^ cols) == 1,
                          _popcount(rows ^ cols) != 1)
    single_flip = bool(support_ok.all())

    first: tuple[str, int, int] | None = None
    value: int | None = None
    if not unitary:
        bad = np.argwhere(gram != target)
        upper = bad[bad[:, 0] <= bad[:, 1]]
        i, j = (upper[0] if len(upper) else bad[0])
        first, value = ("rows", int(i) + 1, int(j) + 1), int(gram[i, j])
    elif not single_flip:
        r, c = np.argwhere(~support_ok)[0]
        first, value = ("entry", int(r) + 1, int(c) + 1), int(m[r, c])
    return VerifyReport(unitary=unitary, single_flip_support=single_flip,
                        first_violation=first, violation_value=value)


def _popcount(a: np.ndarray) -> np.ndarray:
    return np.bitwise_count(a.astype(np.uint64))


def published_matrix() -> Matrix:
    """Verbatim transcription of the originally published 8x8 signed step matrix.

    Kept exactly as printed for the erratum audit: it has the correct
    single-flip support, but rows 1 and 6 are not orthogonal (dot product 2),
    so it is not proportional to a unitary. build_flip_unitary(3) is the
    corrected construction with the same support pattern.
    """
    return (
        (0, 1, 1, 0, 1, 0, 0, 0),
        (1, 0, 0, 1, 0, 1, 0, 0),
        (1, 0, 0, 1, 0, 0, 1, 0),
        (0, 1, -1, 0, 0, 0, 0, 1),
        (1, 0, 0, 0, 0, 1, -1, 0),
        (0, 1, 0, 0, 1, 0, 0, -1),
        (0, 0, 1, 0, 1, 0, 0, 1),
        (0, 0, 0, 1, 0, 1, 1, 0),
    )


def search_signings(d: int) -> list[FlipUnitary]:
    """Enumerate every valid sign assignment on the single-flip support, d <= 3.

    With all support entries forced to +-1, M @ M.T == d * I reduces to one
    parity constraint per row pair at Hamming distance 2 (the four entries
    around each such square must multiply to -1); all other row pairs share no
    support columns. Solving that GF(2) system yields the complete set.
    Results are canonically sorted and always include build_flip_unitary(d).
    """
    if not 1 <= d <= 3:
        raise ValueError(f"exhaustive signing search supports d in 1..3, got {d}")
    size = 2 ** d
    positions = [(r, r ^ (1 << p)) for r in range(size) for p in range(d - 1, -1, -1)]
    index = {pos: i for i, pos in enumerate(positions)}
    nvars = len(positions)

    # Affine GF(2) system: rows as bitmasks over variables, bit nvars = rhs (=1).
    equations = []
    for r in range(size):
        for s in range(r + 1, size):
            diff = r ^ s
            if int(diff).bit_count() != 2:
                continue
            lo = diff & -diff
            hi = diff ^ lo
            mask = 0
            for c in (r ^ lo, r ^ hi):
                mask |= 1 << index[(r, c)]
                mask |= 1 << index[(s, c)]
            equations.append(mask | (1 << nvars))

    solutions = _solve_gf2(equations, nvars)
    out = []
    for bits in solutions:
        m = [[0] * size for _ in range(size)]
        for i, (r, c) in enumerate(positions):
            m[r][c] = -1 if (bits >> i) & 1 else 1
        out.append(FlipUnitary(degree=d, entries=tuple(tuple(row) for row in m)))
    out.sort(key=lambda f: f.entries)
    return out


def _solve_gf2(equations: list[int], nvars: int) -> list[int]:
    """All solutions of an affine GF(2) system given as variable bitmasks."""
    pivots: dict[int, int] = {}
    for eq in equations:
        for col in range(nvars):
            if not (eq >> col) & 1:
                continue
            if col in pivots:
                eq ^= pivots[col]
            else:
                pivots[col] = eq
                break
        else:
            if eq >> nvars:
                return []  # inconsistent
    # Back-substitute to reduced row echelon form.
    for col in sorted(pivots, reverse=True):
        for other in pivots:
            if other != col and (pivots[other] >> col) & 1:
                pivots[other] ^= pivots[col]
    free = [c for c in range(nvars) if c not in pivots]
    solutions = []
    for assign in range(1 << len(free)):
        bits = 0
        for k, col in enumerate(free):
            if (assign >> k) & 1:
                bits |= 1 << col
        for col, eq in pivots.items():
            val = (eq >> nvars) & 1
            val ^= int(eq & bits).bit_count() & 1
            if val:
                bits |= 1 << col
        solutions.append(bits)
    return solutions
