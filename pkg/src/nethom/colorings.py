"""Vertex colorings with a fixed profile: parsing, counting, uniform sampling.

A *profile* is the vector of class sizes of a labeled partition of the
vertices. The null model treats all colorings with the given profile as
equally likely; :func:`random_coloring` draws from that law by shuffling the
multiset of class labels with a seed-deterministic uniform shuffle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graphs import Graph, TextSource, _as_text

__all__ = [
    "Profile",
    "Coloring",
    "ObservedOutcome",
    "ColoringError",
    "MissingVertexError",
    "UnknownVertexError",
    "DuplicateVertexError",
    "falling_factorial",
    "load_coloring",
    "homophilic_counts",
    "random_coloring",
]


class ColoringError(ValueError):
    """Invalid coloring input."""


class MissingVertexError(ColoringError):
    pass


class UnknownVertexError(ColoringError):
    pass


class DuplicateVertexError(ColoringError):
    pass


def falling_factorial(a: int, q: int) -> int:
    """q-th falling factorial a*(a-1)*...*(a-q+1), exact; a^(0) = 1.

    Returns 0 when q > a (a factor hits zero). Requires a >= 0, q >= 0.
    """
    if a < 0 or q < 0:
        raise ValueError("falling_factorial requires a >= 0 and q >= 0")
    return math.perm(a, q)


@dataclass(frozen=True)
class Profile:
    """Class sizes (c_1, ..., c_s) of a labeled partition; all sizes >= 1."""

    sizes: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(int(c) for c in self.sizes))
        if len(self.sizes) == 0:
            raise ValueError("a profile needs at least one class")
        if any(c < 1 for c in self.sizes):
            raise ValueError("every class size must be >= 1")

    @property
    def n(self) -> int:
        return sum(self.sizes)

    @property
    def s(self) -> int:
        return len(self.sizes)

    def coloring_count(self) -> int:
        """Number of distinct colorings with this profile (multinomial)."""
        total = math.factorial(self.n)
        for c in self.sizes:
            total //= math.factorial(c)
        return total


@dataclass(frozen=True, eq=False)
class Coloring:
    """Assignment of each vertex index to a class index in 0..s-1."""

    assignment: np.ndarray
    class_labels: tuple[str, ...]

    def __post_init__(self):
        self.assignment.setflags(write=False)

    @property
    def n(self) -> int:
        return int(self.assignment.shape[0])

    @property
    def s(self) -> int:
        return len(self.class_labels)

    @property
    def profile(self) -> Profile:
        counts = np.bincount(self.assignment, minlength=self.s)
        return Profile(tuple(int(c) for c in counts))


@dataclass(frozen=True)
class ObservedOutcome:
    """Per-class homophilic edge counts (edges with both endpoints in class i)."""

    counts: tuple[int, ...]

    @property
    def s(self) -> int:
        return len(self.counts)

    @property
    def total(self) -> int:
        return sum(self.counts)


def load_coloring(source: TextSource, graph: Graph) -> Coloring:
    """Parse a TSV coloring file ("vertex-id<TAB>class-label") for ``graph``.

    Every graph vertex must appear exactly once; '#' starts a comment.
    Class indices are assigned by first appearance of each label.
    """
    text = _as_text(source)
    index = graph.index
    assign = np.full(graph.n, -1, dtype=np.int32)
    class_index: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0] if "#" in raw else raw
        if not line.strip():
            continue
        if "\t" not in line:
            raise ColoringError(f"line {lineno}: expected 'vertex-id<TAB>class-label'")
        vid, label = line.split("\t", 1)
        vid = vid.strip()
        label = label.strip()
        if not vid or not label:
            raise ColoringError(f"line {lineno}: empty vertex id or class label")
        i = index.get(vid)
        if i is None:
            raise UnknownVertexError(f"line {lineno}: vertex {vid!r} is not in the graph")
        if assign[i] >= 0:
            raise DuplicateVertexError(f"line {lineno}: vertex {vid!r} assigned twice")
        assign[i] = class_index.setdefault(label, len(class_index))
    missing = np.flatnonzero(assign < 0)
    if missing.size:
        names = ", ".join(repr(graph.labels[int(i)]) for i in missing[:5])
        more = "" if missing.size <= 5 else f" (+{missing.size - 5} more)"
        raise MissingVertexError(f"no class assigned to vertex {names}{more}")
    return Coloring(assignment=assign, class_labels=tuple(class_index))


def homophilic_counts(g: Graph, f: Coloring) -> ObservedOutcome:
    """Count, for each class, the edges with both endpoints in that class."""
    if f.n != g.n:
        raise ValueError("coloring does not cover the graph's vertex set")
    a = f.assignment
    if g.m == 0:
        return ObservedOutcome(tuple(0 for _ in range(f.s)))
    cu = a[g.edges_u]
    same = cu == a[g.edges_v]
    counts = np.bincount(cu[same], minlength=f.s)
    return ObservedOutcome(tuple(int(c) for c in counts))


def random_coloring(
    p: Profile, seed: int, class_labels: tuple[str, ...] | None = None
) -> Coloring:
    """Draw a uniform random coloring of profile ``p``, deterministic per seed.

    The multiset of class labels is shuffled uniformly (Fisher-Yates via
    numpy's PCG64 generator) and assigned by position, which is uniform over
    all distinct colorings of the profile. Identical seeds give identical
    colorings, so baseline runs with a fixed seed list are reproducible.
    """
    if class_labels is None:
        class_labels = tuple(str(i) for i in range(p.s))
    elif len(class_labels) != p.s:
        raise ValueError("class_labels must match the number of classes")
    pool = np.repeat(np.arange(p.s, dtype=np.int32), p.sizes)
    rng = np.random.default_rng(seed)
    assignment = rng.permutation(pool)
    return Coloring(assignment=assignment, class_labels=class_labels)
