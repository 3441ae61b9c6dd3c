"""Le diagrams, wire tracing, and decorated permutations.

The cells of the quotient Q^J for a symmetric group with its block
parabolic (the Grassmannian case) admit two classical indexing sets:
0/+ fillings of partition shapes in a k x (n-k) box subject to the Le
property, and permutations whose fixed points carry a clockwise or
counterclockwise loop.  This module builds both, plus the maps between
them: tracing a filling as a wiring diagram yields a permutation
w_{shape,filling} in S_n, factoring it against the parabolic gives a
cell triple (x, u, w), and x u^{-1} w^{-1} with a loop convention gives
the decorated permutation.  Small cases are checked exhaustively by the
test-suite; this module only asserts the invariants it can see locally
(tracing produces a permutation, factorization reproduces its input,
plus count of the filling matches the cell dimension).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations, product

from .coxeter import CoxeterSystem, SystemMismatchError
from . import qj as qj_mod
from .qj import FactorizationFailureError, validate_cell, cell_dimension, cell_json


class TracingNotPermutationError(RuntimeError):
    """Wire tracing did not produce a permutation of 1..n."""


def grassmannian_j(k: int, n: int) -> tuple:
    """Generator indices (0-based) of the block parabolic of the k x (n-k) case.

    Every simple transposition except the one swapping positions n-k and
    n-k+1, so W_J permutes {1..n-k} and {n-k+1..n} separately.
    """
    if not 1 <= k < n:
        raise ValueError(f"need 1 <= k < n, got k={k}, n={n}")
    return tuple(i for i in range(n - 1) if i != n - k - 1)


# ------------------------------------------------------------- Le diagrams


@dataclass(frozen=True)
class LeDiagram:
    """A 0/+ filling of a partition shape inside a k x (n-k) box.

    shape has exactly k weakly decreasing entries in 0..n-k; filling has
    one tuple of "0"/"+" entries per shape row.  Rows run top to bottom
    and columns left to right, 1-based wherever cells are reported.
    """

    k: int
    n: int
    shape: tuple
    filling: tuple

    def __post_init__(self):
        k, n = self.k, self.n
        if not 1 <= k < n:
            raise ValueError(f"need 1 <= k < n, got k={k}, n={n}")
        shape = tuple(int(a) for a in self.shape)
        if len(shape) != k:
            raise ValueError(f"shape needs {k} rows, got {len(shape)}")
        if any(not 0 <= a <= n - k for a in shape):
            raise ValueError(f"row lengths must lie in 0..{n - k}: {shape}")
        if any(shape[i] < shape[i + 1] for i in range(k - 1)):
            raise ValueError(f"shape must be weakly decreasing: {shape}")
        filling = tuple(tuple(row) for row in self.filling)
        if tuple(len(row) for row in filling) != shape:
            raise ValueError("filling rows must match the shape")
        if any(ch not in ("0", "+") for row in filling for ch in row):
            raise ValueError("filling entries must be '0' or '+'")
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "filling", filling)

    @property
    def rank(self) -> int:
        return sum(row.count("+") for row in self.filling)

    def entry(self, r: int, c: int) -> str:
        """Entry at 1-based (row, column)."""
        return self.filling[r - 1][c - 1]

    def all_zero(self) -> "LeDiagram":
        """Same shape, every entry 0."""
        return LeDiagram(self.k, self.n, self.shape,
                         tuple(("0",) * a for a in self.shape))

    def to_text(self) -> str:
        """Header "k n", then one 0/+ row per shape entry (empty rows blank)."""
        lines = [f"{self.k} {self.n}"] + ["".join(row) for row in self.filling]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "LeDiagram":
        lines = text.splitlines()
        if not lines:
            raise ValueError("empty diagram text")
        try:
            k, n = (int(p) for p in lines[0].split())
        except ValueError:
            raise ValueError(f"bad header {lines[0]!r}, want 'k n'") from None
        rows = [tuple(line) for line in lines[1:k + 1]]
        rows += [()] * (k - len(rows))            # trailing empty rows may be dropped
        return cls(k, n, tuple(len(r) for r in rows), tuple(rows))


def is_le(diagram: LeDiagram):
    """Le property: no 0 may have a + above it and a + to its left.

    "Above" means the same column, any row higher up; "to its left" the
    same row, any column further left.  Returns (True, None), or
    (False, (r, c)) with the first offending 0 in row-major order.
    """
    filling = diagram.filling
    for r, row in enumerate(filling):
        for c, ch in enumerate(row):
            if ch != "0":
                continue
            if any(filling[r2][c] == "+" for r2 in range(r)) and "+" in row[:c]:
                return False, (r + 1, c + 1)
    return True, None


def partitions_in_box(k: int, width: int):
    """Weakly decreasing k-tuples with entries in 0..width, lex-largest first."""
    def rec(rows, cap):
        if rows == 0:
            yield ()
            return
        for a in range(cap, -1, -1):
            for rest in rec(rows - 1, a):
                yield (a,) + rest
    yield from rec(k, width)


def enumerate_le_diagrams(k: int, n: int) -> list:
    """Every Le diagram in the k x (n-k) box, in a fixed deterministic order."""
    out = []
    for shape in partitions_in_box(k, n - k):
        boxes = sum(shape)
        for bits in product("0+", repeat=boxes):
            rows, at = [], 0
            for a in shape:
                rows.append(bits[at:at + a])
                at += a
            diagram = LeDiagram(k, n, shape, tuple(rows))
            if is_le(diagram)[0]:
                out.append(diagram)
    return out


# ------------------------------------------------------------ wire tracing


def _boundary_labels(shape, k, width):
    """Label the southeast boundary path of the shape 1..n, northeast to southwest.

    Returns (east, south): east[r] is the label where a wire leaves row r
    heading east, south[c] where one leaves column c heading south.  For
    empty rows and columns those segments lie on the box's west and north
    edges, so a wire entering there exits immediately.
    """
    east, south = {}, {}
    r, c, label = 0, width, 1
    while r < k or c > 0:
        if r < k and shape[r] >= c:
            east[r + 1] = label
            r += 1
        else:
            south[c] = label
            c -= 1
        label += 1
    return east, south


def trace_pipe_dream(diagram: LeDiagram) -> tuple:
    """Trace the filling as a wiring diagram; returns the one-line permutation.

    Wires enter along the box's north edge (heading south) and west edge
    (heading east), labelled 1..n starting at the northeast corner and
    walking west, then down.  A 0 passes both wires straight through; a +
    turns south to east and east to south.  Exits along the shape's
    southeast boundary carry the same 1..n labelling, and wire a leaving
    at segment b records w(a) = b.
    """
    k, n = diagram.k, diagram.n
    width = n - k
    shape, filling = diagram.shape, diagram.filling
    conj = [sum(1 for a in shape if a >= c) for c in range(width + 1)]
    east, south = _boundary_labels(shape, k, width)
    line = []
    for a_label in range(1, n + 1):
        if a_label <= width:
            heading, r, c = "S", 1, width + 1 - a_label
            if conj[c] == 0:                      # empty column: north edge is the exit
                line.append(south[c])
                continue
        else:
            heading, r, c = "E", a_label - width, 1
            if shape[r - 1] == 0:                 # empty row: west edge is the exit
                line.append(east[r])
                continue
        while True:
            if filling[r - 1][c - 1] == "+":
                heading = "E" if heading == "S" else "S"
            if heading == "S":
                if conj[c] > r:
                    r += 1
                else:
                    line.append(south[c])
                    break
            else:
                if shape[r - 1] > c:
                    c += 1
                else:
                    line.append(east[r])
                    break
    if sorted(line) != list(range(1, n + 1)):
        raise TracingNotPermutationError(
            f"tracing gave {tuple(line)}, not a permutation of 1..{n}")
    return tuple(line)


# ------------------------------------------------- diagrams to cell triples


def _require_symmetric_group(system: CoxeterSystem, n: int):
    if not (system.is_type_a() and system.rank == n - 1):
        raise SystemMismatchError(f"need the symmetric group on {n} letters")


def phi2(system: CoxeterSystem, diagram: LeDiagram) -> tuple:
    """Cell triple of a Le diagram.

    Traces the filling and the all-zero filling of the same shape; the
    latter gives w (checked to be a minimal coset representative), the
    former factors as x u^{-1} with x a maximal representative and u in
    the parabolic.  The + count of the filling equals the dimension of
    the returned cell.
    """
    k, n = diagram.k, diagram.n
    _require_symmetric_group(system, n)
    J = grassmannian_j(k, n)
    park = system.parabolic(J)
    w_full = system.from_one_line(trace_pipe_dream(diagram))
    w = system.from_one_line(trace_pipe_dream(diagram.all_zero()))
    if w not in park.min_set:
        raise FactorizationFailureError(
            f"all-zero tracing left the minimal representatives: {system.one_line(w)}")
    head, v = system.parabolic_factor(w_full, J)
    x = system.mult(head, park.u0)
    u = system.mult(system.inverse(v), park.u0)
    cell = (x, u, w)
    validate_cell(system, J, cell)
    if system.mult(x, system.inverse(u)) != w_full:
        raise FactorizationFailureError("factorization does not reproduce the tracing")
    if cell_dimension(system, cell) != diagram.rank:
        raise FactorizationFailureError(
            f"{diagram.rank} +'s but cell dimension {cell_dimension(system, cell)}")
    return cell


# ------------------------------------------------- decorated permutations


@dataclass(frozen=True)
class DecoratedPermutation:
    """A permutation of 1..n whose fixed points each carry an oriented loop."""

    line: tuple
    clockwise: frozenset
    counterclockwise: frozenset

    def __post_init__(self):
        line = tuple(int(v) for v in self.line)
        if sorted(line) != list(range(1, len(line) + 1)):
            raise ValueError(f"not a permutation: {line}")
        fixed = {i for i, v in enumerate(line, start=1) if v == i}
        cw, ccw = frozenset(self.clockwise), frozenset(self.counterclockwise)
        if (cw | ccw) != fixed or (cw & ccw):
            raise ValueError("loop orientations must partition the fixed points")
        object.__setattr__(self, "line", line)
        object.__setattr__(self, "clockwise", cw)
        object.__setattr__(self, "counterclockwise", ccw)

    @property
    def n(self) -> int:
        return len(self.line)

    def weak_excedences(self) -> int:
        """Positions with pi(i) > i, plus counterclockwise loops."""
        strict = sum(1 for i, v in enumerate(self.line, start=1) if v > i)
        return strict + len(self.counterclockwise)


def phi1(system: CoxeterSystem, k: int, cell) -> DecoratedPermutation:
    """Decorated permutation of a cell in the k x (n-k) quotient.

    The underlying permutation is x u^{-1} w^{-1}; a fixed point gets a
    clockwise loop when it is one of the first n-k values of w and a
    counterclockwise loop otherwise.
    """
    n = system.rank + 1
    _require_symmetric_group(system, n)
    J = grassmannian_j(k, n)
    validate_cell(system, J, cell)
    x, u, w = cell
    pi = system.mult(system.mult(x, system.inverse(u)), system.inverse(w))
    line = system.one_line(pi)
    cw_side = set(system.one_line(w)[:n - k])
    fixed = {i for i, v in enumerate(line, start=1) if v == i}
    return DecoratedPermutation(line, frozenset(fixed & cw_side),
                                frozenset(fixed - cw_side))


def compose_phi(system: CoxeterSystem, diagram: LeDiagram) -> DecoratedPermutation:
    """Le diagram straight to decorated permutation (phi1 after phi2)."""
    return phi1(system, diagram.k, phi2(system, diagram))


def enumerate_decorated_permutations(n: int) -> list:
    """All decorated permutations of 1..n (every orientation of every fixed point)."""
    out = []
    for line in permutations(range(1, n + 1)):
        fixed = tuple(i for i, v in enumerate(line, start=1) if v == i)
        for bits in product((True, False), repeat=len(fixed)):
            cw = frozenset(i for i, b in zip(fixed, bits) if b)
            out.append(DecoratedPermutation(line, cw, frozenset(fixed) - cw))
    return out


# ----------------------------------------------------------- chord pictures


def chord_text(dp: DecoratedPermutation) -> str:
    """Plain-text adjacency listing, one line per point."""
    lines = []
    for i, v in enumerate(dp.line, start=1):
        if v == i:
            spin = "clockwise" if i in dp.clockwise else "counterclockwise"
            lines.append(f"{i}: {spin} loop")
        else:
            lines.append(f"{i} -> {v}")
    return "\n".join(lines) + "\n"


def _point(i, n, radius):
    # point 1 sits at the top of the circle, labels increase clockwise
    theta = 2.0 * math.pi * (i - 1) / n
    return radius * math.sin(theta), -radius * math.cos(theta)


def chord_svg(dp: DecoratedPermutation, radius: float = 100.0) -> str:
    """Chord diagram as a standalone SVG string.

    n points on a circle, point 1 at the top, labelled clockwise; an
    arrow i -> pi(i) for every non-fixed point and a small oriented loop
    ("loop clockwise" / "loop counterclockwise" classes) at every fixed
    point.  Output is deterministic.
    """
    n = dp.n
    box = radius * 1.35
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{-box:.2f} {-box:.2f} '
        f'{2 * box:.2f} {2 * box:.2f}" width="360" height="360">',
        '<defs><marker id="arrow" markerWidth="8" markerHeight="8" refX="6" refY="3" '
        'orient="auto"><path d="M0,0 L6,3 L0,6 z" fill="#333"/></marker></defs>',
        f'<circle class="rim" cx="0" cy="0" r="{radius:.2f}" fill="none" '
        'stroke="#ccc" stroke-width="1"/>',
    ]
    for i in range(1, n + 1):
        x, y = _point(i, n, radius)
        lx, ly = _point(i, n, radius * 1.16)
        parts.append(f'<circle class="point" cx="{x:.2f}" cy="{y:.2f}" r="3" fill="#333"/>')
        parts.append(f'<text x="{lx:.2f}" y="{ly:.2f}" font-size="12" '
                     f'text-anchor="middle" dominant-baseline="middle">{i}</text>')
    for i, v in enumerate(dp.line, start=1):
        if v == i:
            spin = "clockwise" if i in dp.clockwise else "counterclockwise"
            x, y = _point(i, n, radius * 0.9)
            parts.append(f'<circle class="loop {spin}" cx="{x:.2f}" cy="{y:.2f}" r="6" '
                         f'fill="none" stroke="#333" stroke-width="1.2"/>')
        else:
            x1, y1 = _point(i, n, radius * 0.94)
            x2, y2 = _point(v, n, radius * 0.94)
            parts.append(f'<line class="chord" x1="{x1:.2f}" y1="{y1:.2f}" '
                         f'x2="{x2:.2f}" y2="{y2:.2f}" stroke="#333" '
                         'stroke-width="1.2" marker-end="url(#arrow)"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# ------------------------------------------------------------ JSON records


def le_json_dict(diagram: LeDiagram) -> dict:
    return {"k": diagram.k, "n": diagram.n, "shape": list(diagram.shape),
            "rows": ["".join(row) for row in diagram.filling],
            "rank": diagram.rank}


def decorated_json_dict(dp: DecoratedPermutation) -> dict:
    return {"line": list(dp.line), "clockwise": sorted(dp.clockwise),
            "counterclockwise": sorted(dp.counterclockwise),
            "weak_excedences": dp.weak_excedences()}


def bijection_rows(system: CoxeterSystem, k: int, n: int) -> list:
    """One record per Le diagram: the diagram, its cell, its decorated permutation."""
    rows = []
    for diagram in enumerate_le_diagrams(k, n):
        cell = phi2(system, diagram)
        dp = phi1(system, k, cell)
        rows.append({"le": le_json_dict(diagram),
                     "cell": cell_json(system, cell),
                     "decorated_permutation": decorated_json_dict(dp)})
    return rows


def bijection_report(system: CoxeterSystem, k: int, n: int) -> dict:
    """Exhaustive consistency run for one (k, n).

    Checks that Le diagrams, cells, and decorated permutations with k
    weak excedences are equinumerous, that phi2 hits every cell exactly
    once with the + count matching the cell dimension, and that phi1 is
    injective with every image showing k weak excedences.
    """
    _require_symmetric_group(system, n)
    J = grassmannian_j(k, n)
    diagrams = enumerate_le_diagrams(k, n)
    cells = [c for c in qj_mod.enumerate_cells(system, J) if c is not qj_mod.BOTTOM]
    failures = []
    cell_of = {}
    for diagram in diagrams:
        cell = phi2(system, diagram)              # asserts the rank law internally
        if cell in cell_of:
            failures.append(("phi2-collision", le_json_dict(diagram)))
        cell_of[cell] = diagram
    if set(cell_of) != set(cells):
        failures.append(("phi2-not-onto", len(cell_of), len(cells)))
    dps = set()
    for cell in cells:
        dp = phi1(system, k, cell)
        if dp.weak_excedences() != k:
            failures.append(("weak-excedences", cell_json(system, cell)))
        dps.add(dp)
    if len(dps) != len(cells):
        failures.append(("phi1-collision", len(dps), len(cells)))
    total = sum(1 for dp in enumerate_decorated_permutations(n)
                if dp.weak_excedences() == k)
    counts = {"le_diagrams": len(diagrams), "cells": len(cells),
              "decorated_permutations": total}
    if len({len(diagrams), len(cells), total}) != 1:
        failures.append(("counts", counts))
    return {"k": k, "n": n, "counts": counts, "ok": not failures,
            "failures": failures[:5]}


# -------------------------------------------------------------- worked case


def example_toy() -> LeDiagram:
    """The 3 x 4 showcase diagram with shape (4, 3, 1) used across the tests."""
    return LeDiagram(3, 7, (4, 3, 1),
                     (("+", "0", "+", "0"), ("0", "0", "0"), ("+",)))
