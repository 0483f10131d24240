"""Simple undirected graphs and the degree statistics driving the coloring model.

A :class:`Graph` is immutable once built: external vertex ids are mapped to
dense indices in first-appearance order, edges are stored as parallel index
arrays, and every summary quantity is accumulated with exact integers before
any division happens. The scalar invariant computed by
:func:`gamma_invariant` is the common scale factor of all between-class
covariances of the homophilic-count vector; its sign is a property of the
graph alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import IO, Iterable, Iterator, Union

import numpy as np

__all__ = [
    "Graph",
    "GraphSummary",
    "EdgeListError",
    "SelfLoopError",
    "DuplicateEdgeError",
    "MalformedLineError",
    "load_edge_list",
    "summarize",
    "gamma_invariant",
    "gamma_from_degree_moments",
    "dispersion_margin",
]

TextSource = Union[str, bytes, IO]


class EdgeListError(ValueError):
    """Invalid edge-list input."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SelfLoopError(EdgeListError):
    pass


class DuplicateEdgeError(EdgeListError):
    pass


class MalformedLineError(EdgeListError):
    pass


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable simple undirected graph on dense vertex indices 0..n-1.

    Invariants enforced at construction: no self-loops, no duplicate edges,
    all endpoints in range, and sum(degrees) == 2*m. Safe for concurrent
    read access; the edge and degree arrays are write-protected.
    """

    n: int
    edges_u: np.ndarray
    edges_v: np.ndarray
    degrees: np.ndarray
    labels: tuple[str, ...]

    def __post_init__(self):
        for arr in (self.edges_u, self.edges_v, self.degrees):
            arr.setflags(write=False)

    @property
    def m(self) -> int:
        return int(self.edges_u.shape[0])

    @property
    def max_degree(self) -> int:
        return int(self.degrees.max()) if self.n else 0

    @property
    def index(self) -> dict[str, int]:
        """External id -> dense index (rebuilt on access; cache if hot)."""
        return {lab: i for i, lab in enumerate(self.labels)}

    def edge_pairs(self) -> Iterator[tuple[int, int]]:
        return zip(self.edges_u.tolist(), self.edges_v.tolist())

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        labels: tuple[str, ...] | None = None,
        dedupe: bool = False,
    ) -> "Graph":
        """Build a graph from index pairs, validating simplicity."""
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        if labels is None:
            labels = tuple(str(i) for i in range(n))
        elif len(labels) != n:
            raise ValueError("labels must have length n")
        seen: set[tuple[int, int]] = set()
        us: list[int] = []
        vs: list[int] = []
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise EdgeListError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise SelfLoopError(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                if dedupe:
                    continue
                raise DuplicateEdgeError(f"duplicate edge ({u}, {v})")
            seen.add(key)
            us.append(u)
            vs.append(v)
        eu = np.asarray(us, dtype=np.int32)
        ev = np.asarray(vs, dtype=np.int32)
        if eu.size:
            degrees = np.bincount(np.concatenate([eu, ev]), minlength=n).astype(np.int64)
        else:
            degrees = np.zeros(n, dtype=np.int64)
        return cls(n=n, edges_u=eu, edges_v=ev, degrees=degrees, labels=labels)


def _as_text(source: TextSource) -> str:
    if isinstance(source, bytes):
        return source.decode("utf-8")
    if isinstance(source, str):
        return source
    data = source.read()
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    return data


def _locate_edge_violation(text: str, dedupe: bool) -> None:
    """Slow re-scan that raises the precise per-line error.

    Called only after the vectorized validation in :func:`load_edge_list`
    has detected a problem, so line numbers are recovered without taxing
    the common path.
    """
    index: dict[str, int] = {}
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0] if "#" in raw else raw
        parts = line.split()
        if not parts:
            continue
        if parts[0] == "v" and len(parts) == 2:
            index.setdefault(parts[1], len(index))
            continue
        if len(parts) < 2:
            raise MalformedLineError(f"expected two endpoints, got {line.strip()!r}", lineno)
        a, b = parts[0], parts[1]
        ia = index.setdefault(a, len(index))
        ib = index.setdefault(b, len(index))
        if ia == ib:
            raise SelfLoopError(f"self-loop at vertex {a!r}", lineno)
        key = (ia, ib) if ia < ib else (ib, ia)
        if key in seen and not dedupe:
            raise DuplicateEdgeError(f"duplicate edge {a!r} {b!r}", lineno)
        seen.add(key)
    raise AssertionError("vectorized validation flagged a violation the scan cannot find")


def load_edge_list(source: TextSource, dedupe: bool = False) -> Graph:
    """Parse an edge list into a :class:`Graph`.

    Format: one edge per line, "u v" separated by whitespace (extra tokens
    are ignored); '#' starts a comment; a line "v <id>" (exactly two tokens,
    first literally "v") declares an isolated vertex. Dense indices are
    assigned by first appearance, so parsing is deterministic.

    Raises :class:`SelfLoopError` / :class:`DuplicateEdgeError` /
    :class:`MalformedLineError` with the offending line number; duplicates
    are silently merged when ``dedupe`` is set. Self-loop and duplicate
    detection run vectorized after the single pass over lines; the line
    number is recovered by a second scan only when an error is raised.
    """
    text = _as_text(source)
    index: dict[str, int] = {}
    us: list[int] = []
    vs: list[int] = []
    setdefault = index.setdefault
    us_append = us.append
    vs_append = vs.append
    scan_comments = "#" in text
    malformed = False
    for line in text.splitlines():
        if scan_comments and "#" in line:
            line = line[: line.index("#")]
        parts = line.split()
        if not parts:
            continue
        if parts[0] == "v" and len(parts) == 2:
            setdefault(parts[1], len(index))
            continue
        if len(parts) < 2:
            malformed = True
            break
        ia = setdefault(parts[0], len(index))
        ib = setdefault(parts[1], len(index))
        us_append(ia)
        vs_append(ib)
    if malformed:
        _locate_edge_violation(text, dedupe)
    n = len(index)
    eu = np.asarray(us, dtype=np.int64)
    ev = np.asarray(vs, dtype=np.int64)
    if eu.size:
        if bool(np.any(eu == ev)):
            _locate_edge_violation(text, dedupe)
        lo = np.minimum(eu, ev)
        hi = np.maximum(eu, ev)
        packed = lo * n + hi
        order = np.argsort(packed, kind="stable")
        sorted_packed = packed[order]
        dup_sorted = np.empty(packed.size, dtype=bool)
        dup_sorted[0] = False
        dup_sorted[1:] = sorted_packed[1:] == sorted_packed[:-1]
        if bool(dup_sorted.any()):
            if not dedupe:
                _locate_edge_violation(text, dedupe)
            keep = np.ones(packed.size, dtype=bool)
            keep[order[dup_sorted]] = False  # first appearance survives
            eu = eu[keep]
            ev = ev[keep]
    eu = eu.astype(np.int32)
    ev = ev.astype(np.int32)
    if eu.size:
        degrees = np.bincount(np.concatenate([eu, ev]), minlength=n).astype(np.int64)
    else:
        degrees = np.zeros(n, dtype=np.int64)
    labels = tuple(index)  # dicts preserve insertion order
    return Graph(n=n, edges_u=eu, edges_v=ev, degrees=degrees, labels=labels)


@dataclass(frozen=True)
class GraphSummary:
    """One-pass degree summary of a graph.

    Exact integer fields: ``pi3`` counts two-edge paths (unordered edge pairs
    sharing exactly one vertex), ``ordered_disjoint_pairs`` counts ordered
    pairs of vertex-disjoint edges, ``sum_sq_degrees`` is the raw second
    moment accumulator. Float fields are derived once from the integers:
    ``rho`` is edge density (nan for n < 2), ``delta1``/``delta2`` the first
    two degree moments, ``upsilon`` the variance-to-mean dispersion of the
    degree distribution (nan when there are no edges).
    """

    n: int
    m: int
    pi3: int
    ordered_disjoint_pairs: int
    sum_sq_degrees: int
    rho: float
    delta1: float
    delta2: float
    upsilon: float


def summarize(g: Graph) -> GraphSummary:
    """Compute the :class:`GraphSummary` of ``g`` in one pass over degrees."""
    if g.n < 1:
        raise ValueError("summarize requires at least one vertex")
    n, m = g.n, g.m
    deg = g.degrees
    ssq = int(np.dot(deg, deg))
    total = int(deg.sum())
    if total != 2 * m:
        raise ValueError("degree sum does not match twice the edge count")
    # sum_i C(d_i, 2) written on the exact integer accumulators
    pi3 = (ssq - 2 * m) // 2
    pairs = m * (m - 1) // 2
    n2 = 2 * (pairs - pi3)
    if n2 < 0:
        raise ValueError("inconsistent counts: more two-paths than edge pairs")
    rho = float(Fraction(m, math.comb(n, 2))) if n >= 2 else float("nan")
    delta1 = float(Fraction(2 * m, n))
    delta2 = float(Fraction(ssq, n))
    if m > 0:
        d1 = Fraction(2 * m, n)
        upsilon = float((Fraction(ssq, n) - d1 * d1) / d1)
    else:
        upsilon = float("nan")
    return GraphSummary(
        n=n,
        m=m,
        pi3=pi3,
        ordered_disjoint_pairs=n2,
        sum_sq_degrees=ssq,
        rho=rho,
        delta1=delta1,
        delta2=delta2,
        upsilon=upsilon,
    )


def gamma_invariant(s: GraphSummary) -> Fraction | None:
    """Scale factor of all between-class covariances, or None when n < 4.

    Combinatorial form: (2 / n^(4)) * (C(m,2) - pi3) - (m / n^(2))^2, exact.
    For n < 4 the quantity is undefined (no two vertex-disjoint edges exist;
    the covariance fallback in the moments module applies instead).
    """
    if s.n < 4:
        return None
    n4 = math.perm(s.n, 4)
    n2 = math.perm(s.n, 2)
    pairs = s.m * (s.m - 1) // 2
    return Fraction(2 * (pairs - s.pi3), n4) - Fraction(s.m, n2) ** 2


def gamma_from_degree_moments(s: GraphSummary) -> Fraction | None:
    """Equivalent degree-moment form of :func:`gamma_invariant`.

    (n / n^(4)) * ((2n-3)/(2n-2) * delta1^2 + delta1/2 - delta2), exact.
    Kept as an independent cross-check of the combinatorial form.
    """
    if s.n < 4:
        return None
    n = s.n
    d1 = Fraction(2 * s.m, n)
    d2 = Fraction(s.sum_sq_degrees, n)
    return Fraction(n, math.perm(n, 4)) * (
        Fraction(2 * n - 3, 2 * n - 2) * d1 * d1 + d1 / 2 - d2
    )


def dispersion_margin(s: GraphSummary) -> Fraction | None:
    """Exact value of upsilon - (1 - rho)/2, or None when it is undefined.

    Sign link: gamma_invariant(s) <= 0 if and only if this margin is >= 0,
    so over-dispersed degree distributions force nonpositive covariances.
    Undefined when the graph has no edges (upsilon needs delta1 > 0).
    """
    if s.m == 0 or s.n < 2:
        return None
    d1 = Fraction(2 * s.m, s.n)
    d2 = Fraction(s.sum_sq_degrees, s.n)
    rho = Fraction(s.m, math.comb(s.n, 2))
    return (d2 - d1 * d1) / d1 - (1 - rho) / 2
