"""Network file parsing and serialization.

Two input formats:

* ``edgelist``: whitespace-separated 1-indexed integer pairs, one edge
  per line, ``#`` comments; an optional directive line ``n=<count>``
  declares the vertex count (otherwise the largest index seen is used).
* ``ucinet-dl``: the minimal fullmatrix subset: a ``dl n=<count>``
  header, a ``format = fullmatrix`` line, then ``data:`` followed by an
  n x n 0/1 matrix, which must be symmetric with a zero diagonal.

Vertices are 1-indexed in files and 0-indexed inside arrays.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np


class ParseError(ValueError):
    """Malformed network input; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass(frozen=True)
class EdgeList:
    """Canonical edge list: n and sorted unique (i, j) pairs with i < j (1-indexed)."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        seen = set()
        for (i, j) in self.edges:
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            if not (1 <= i < j <= self.n):
                raise ValueError(f"edge ({i}, {j}) out of range for n={self.n}")
            if (i, j) in seen:
                raise ValueError(f"duplicate edge ({i}, {j})")
            seen.add((i, j))
        object.__setattr__(self, "edges", tuple(sorted(self.edges)))

    def degree_vector(self) -> np.ndarray:
        d = np.zeros(self.n, dtype=np.int64)
        for (i, j) in self.edges:
            d[i - 1] += 1
            d[j - 1] += 1
        return d

    def adjacency(self) -> np.ndarray:
        A = np.zeros((self.n, self.n), dtype=np.uint8)
        for (i, j) in self.edges:
            A[i - 1, j - 1] = A[j - 1, i - 1] = 1
        return A


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _parse_edgelist(text: str) -> EdgeList:
    declared_n = None
    raw_edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    max_seen = 0
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = _strip_comment(line)
        if not body:
            continue
        m = re.fullmatch(r"n\s*=\s*(\d+)", body, flags=re.IGNORECASE)
        if m:
            declared_n = int(m.group(1))
            continue
        parts = body.split()
        if len(parts) != 2:
            raise ParseError(f"expected two integers, got {body!r}", lineno)
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer vertex in {body!r}", lineno) from None
        if i == j:
            raise ParseError(f"self-loop at vertex {i}", lineno)
        lo, hi = min(i, j), max(i, j)
        if lo < 1:
            raise ParseError(f"vertex index {lo} below 1", lineno)
        if (lo, hi) in seen:
            raise ParseError(f"duplicate edge ({lo}, {hi})", lineno)
        seen.add((lo, hi))
        raw_edges.append((lo, hi))
        max_seen = max(max_seen, hi)
    n = declared_n if declared_n is not None else max_seen
    if n == 0:
        raise ParseError("no vertex count declared and no edges found")
    if max_seen > n:
        raise ParseError(f"edge index {max_seen} exceeds declared n={n}")
    return EdgeList(n, tuple(raw_edges))


def _parse_ucinet_dl(text: str) -> EdgeList:
    lines = text.splitlines()
    n = None
    data_start = None
    for lineno, line in enumerate(lines, start=1):
        body = line.strip()
        if not body:
            continue
        low = body.lower()
        if low.startswith("dl"):
            m = re.search(r"n\s*=\s*(\d+)", low)
            if not m:
                raise ParseError("dl header without n=<count>", lineno)
            n = int(m.group(1))
        elif low.startswith("format"):
            if "fullmatrix" not in low:
                raise ParseError(f"unsupported format line {body!r}", lineno)
        elif low.startswith("data"):
            data_start = lineno
            break
        elif n is None:
            raise ParseError(f"unexpected line before dl header: {body!r}", lineno)
    if n is None:
        raise ParseError("missing dl n=<count> header")
    if data_start is None:
        raise ParseError("missing data: section")

    rows: list[list[int]] = []
    row_lines: list[int] = []
    for lineno in range(data_start + 1, len(lines) + 1):
        body = lines[lineno - 1].strip()
        if not body:
            continue
        try:
            vals = [int(v) for v in body.split()]
        except ValueError:
            raise ParseError(f"non-integer matrix entry in {body!r}", lineno) from None
        rows.append(vals)
        row_lines.append(lineno)
    if len(rows) != n:
        raise ParseError(f"expected {n} matrix rows, found {len(rows)}",
                         row_lines[-1] if row_lines else data_start)
    for r, (vals, lineno) in enumerate(zip(rows, row_lines), start=1):
        if len(vals) != n:
            raise ParseError(f"row {r} has {len(vals)} entries, expected {n}", lineno)
        if any(v not in (0, 1) for v in vals):
            raise ParseError(f"matrix entries must be 0 or 1 in row {r}", lineno)
    A = np.array(rows, dtype=np.uint8)
    for i in range(n):
        if A[i, i] != 0:
            raise ParseError(f"self-loop at vertex {i + 1}", row_lines[i])
        for j in range(i + 1, n):
            if A[i, j] != A[j, i]:
                raise ParseError(
                    f"asymmetric entries at ({i + 1}, {j + 1})", row_lines[i])
    edges = tuple((i + 1, j + 1) for i in range(n) for j in range(i + 1, n)
                  if A[i, j])
    return EdgeList(n, edges)


def parse_edges(text: str, fmt: str = "edgelist") -> EdgeList:
    """Parse network text in the named format ('edgelist' or 'ucinet-dl')."""
    fmt = fmt.lower()
    if fmt == "edgelist":
        return _parse_edgelist(text)
    if fmt in ("ucinet-dl", "dl"):
        return _parse_ucinet_dl(text)
    raise ValueError(f"unknown format {fmt!r}")


def sniff_format(text: str) -> str:
    """'ucinet-dl' when the first non-blank line is a dl header, else 'edgelist'."""
    for line in text.splitlines():
        if line.strip():
            return "ucinet-dl" if line.strip().lower().startswith("dl") else "edgelist"
    return "edgelist"


def serialize_edges(e: EdgeList) -> str:
    """Canonical edgelist text; parse_edges() of the output is identity."""
    lines = [f"n={e.n}"]
    lines += [f"{i} {j}" for (i, j) in e.edges]
    return "\n".join(lines) + "\n"


def prune_zero_degree(e: EdgeList) -> tuple[EdgeList, list[int]]:
    """Drop all zero-degree vertices and relabel contiguously.

    Returns the pruned edge list and the removed original 1-indexed
    labels. Idempotent: a second application removes nothing.
    """
    d = e.degree_vector()
    removed = [i + 1 for i in range(e.n) if d[i] == 0]
    if not removed:
        return e, []
    keep = [i + 1 for i in range(e.n) if d[i] > 0]
    relabel = {orig: new for new, orig in enumerate(keep, start=1)}
    edges = tuple((relabel[i], relabel[j]) for (i, j) in e.edges)
    return EdgeList(len(keep), edges), removed


def kept_labels(e: EdgeList) -> list[int]:
    """Original labels that survive pruning, in pruned order."""
    d = e.degree_vector()
    return [i + 1 for i in range(e.n) if d[i] > 0]


def read_degree_file(text: str) -> np.ndarray:
    """Noisy degree file: either one value per line, or 'vertex value' pairs.

    Pairs may appear in any order; indices must form 1..n exactly.
    """
    singles: list[float] = []
    pairs: dict[int, float] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = _strip_comment(line)
        if not body:
            continue
        parts = body.split()
        try:
            if len(parts) == 1:
                singles.append(float(parts[0]))
            elif len(parts) == 2:
                pairs[int(parts[0])] = float(parts[1])
            else:
                raise ValueError
        except ValueError:
            raise ParseError(f"expected 'value' or 'vertex value', got {body!r}",
                             lineno) from None
    if singles and pairs:
        raise ParseError("mixed single-column and two-column degree lines")
    if pairs:
        n = len(pairs)
        if sorted(pairs) != list(range(1, n + 1)):
            raise ParseError("two-column degree file must cover vertices 1..n")
        return np.array([pairs[i] for i in range(1, n + 1)], dtype=float)
    if not singles:
        raise ParseError("empty degree file")
    return np.array(singles, dtype=float)
