"""Homophily quantifiers built from observed counts and the moment structure.

Each index couples a monotone score of the observed counts with a one-sided
second-moment tail bound on that score under the random coloring null model,
then folds the two sides into a signed value in [-1, 1]:

    index = sgn(score) * score^2 / (score^2 + Var(score)).

``index_a`` scores by the mean of the per-class z-scores, ``index_r`` by the
total deviation of homophilic counts (the homophily-ratio score), and
``index_j_theta`` by an arbitrary nonnegative weighting of the deviations.
``index_h`` instead bounds the tail of the correlation-metric norm of the
z-score vector (a multidimensional Chebyshev bound) and lives in [0, 1].
Classes with zero variance are excluded from z-based indices through the
active set; covariance-based indices use the full matrix, where such classes
contribute zeros.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .colorings import Coloring, ObservedOutcome, Profile, falling_factorial
from .graphs import Graph
from .moments import CovarianceStructure, MomentSummary, active_classes

__all__ = [
    "UndefinedQuantityError",
    "ZScores",
    "WeightVector",
    "IndexReport",
    "z_scores",
    "index_a",
    "index_r",
    "index_h",
    "index_j_theta",
    "weight_preset",
    "newman_modularity",
    "descriptive_ratio",
    "build_index_report",
    "PRESET_NAMES",
]

PRESET_NAMES = ("ratio", "avg_internal_degree", "dyadicity")

NU_MODES = ("maxdeg", "classes", "avgdeg")


class UndefinedQuantityError(ValueError):
    """A quantifier has no value on this instance (degenerate input)."""


@dataclass(frozen=True)
class ZScores:
    """Observed z-scores; degenerate classes carry 0 and sit outside ``active``."""

    z: np.ndarray
    active: tuple[int, ...]

    def __post_init__(self):
        self.z.setflags(write=False)


def z_scores(o: ObservedOutcome, ms: MomentSummary) -> ZScores:
    """(observed - expected) / sigma per class, 0 for zero-variance classes."""
    if o.s != ms.s:
        raise ValueError("outcome and moment summary have different class counts")
    active = active_classes(ms.var)
    z = np.zeros(ms.s)
    for i in active:
        z[i] = float((Fraction(o.counts[i]) - ms.mbar[i]) / _sqrt_fraction(ms.var[i]))
    return ZScores(z=z, active=active)


def _sqrt_fraction(x: Fraction) -> float:
    return math.sqrt(float(x))


def _squash(score: float, spread: float) -> float:
    """sgn(score) * score^2 / (score^2 + spread), with sgn(0) = 0.

    ``spread`` is clamped at zero (it is a variance up to float rounding),
    and scores below 1e-12 in magnitude count as zero: scores are built
    from float z-values or dot products whose rounding noise sits many
    orders below any genuine deviation, and without the floor a zero-spread
    instance would spuriously saturate at +-1 on noise alone. A zero spread
    with a real nonzero score does saturate at +-1 (the tail bound
    degenerates to a zero tail).
    """
    if abs(score) <= 1e-12:
        return 0.0
    num = score * score
    den = num + max(spread, 0.0)
    if den <= 0.0:
        return 0.0
    return math.copysign(num / den, score)


def index_a(z: ZScores, cs: CovarianceStructure) -> float | None:
    """Signed significance of the mean z-score; None if every class is degenerate.

    With s_a active classes, A = mean of active z-scores and g the sum of the
    active-set correlation matrix: sgn(A) * (s_a*A)^2 / ((s_a*A)^2 + g).
    """
    if not cs.active:
        return None
    if z.active != cs.active:
        raise ValueError("z-scores and covariance structure disagree on the active set")
    za = z.z[list(cs.active)]
    total = float(za.sum())  # = s_a * A
    g = float(cs.corr.sum())
    return _squash(total, g)


def index_r(o: ObservedOutcome, ms: MomentSummary, cs: CovarianceStructure) -> float:
    """Signed significance of the total homophilic-count deviation."""
    t = float(sum(Fraction(c) - mb for c, mb in zip(o.counts, ms.mbar)))
    g = float(cs.sigma.sum())
    return _squash(t, g)


@dataclass(frozen=True)
class WeightVector:
    """Nonnegative, nonzero weighting of per-class count deviations."""

    w: np.ndarray
    preset: str = "custom"

    def __post_init__(self):
        self.w.setflags(write=False)
        if np.any(self.w < 0) or not np.any(self.w > 0):
            raise ValueError("weights must be nonnegative and not all zero")


def weight_preset(name: str, g: Graph, p: Profile, nu_mode: str = "maxdeg") -> WeightVector:
    """Build one of the standard score weightings.

    ratio: w = (1/m) * 1 (edge-inside fraction score).
    avg_internal_degree: w_i = nu * 2 / c_i with nu = 1/max_degree (default),
        1/s ("classes") or n/(2m) ("avgdeg").
    dyadicity: w_i = (2/s) / c_i^(2) (internal density score); classes of
        size < 2 get weight 0.

    Raises :class:`UndefinedQuantityError` when the preset needs edges (or a
    positive maximum degree) and the graph has none.
    """
    if name == "ratio":
        if g.m == 0:
            raise UndefinedQuantityError("ratio preset needs at least one edge")
        return WeightVector(np.full(p.s, 1.0 / g.m), preset=name)
    if name == "avg_internal_degree":
        if nu_mode == "maxdeg":
            if g.max_degree == 0:
                raise UndefinedQuantityError("avg_internal_degree preset needs edges")
            nu = 1.0 / g.max_degree
        elif nu_mode == "classes":
            nu = 1.0 / p.s
        elif nu_mode == "avgdeg":
            if g.m == 0:
                raise UndefinedQuantityError("avg_internal_degree preset needs edges")
            nu = g.n / (2.0 * g.m)
        else:
            raise ValueError(f"unknown nu mode {nu_mode!r}")
        return WeightVector(np.array([nu * 2.0 / c for c in p.sizes]), preset=name)
    if name == "dyadicity":
        w = np.array(
            [2.0 / (p.s * falling_factorial(c, 2)) if c >= 2 else 0.0 for c in p.sizes]
        )
        if not np.any(w > 0):
            raise UndefinedQuantityError("dyadicity preset needs a class of size >= 2")
        return WeightVector(w, preset=name)
    raise ValueError(f"unknown preset {name!r}")


def index_j_theta(
    o: ObservedOutcome,
    ms: MomentSummary,
    cs: CovarianceStructure,
    w: WeightVector,
) -> float:
    """Signed significance of the score w'(observed - expected).

    Invariant under positive rescaling of ``w`` (a ratio of quadratics), and
    nondecreasing in every observed count for fixed moments.
    """
    if len(w.w) != ms.s:
        raise ValueError("weight vector has the wrong number of classes")
    y = np.array([float(Fraction(c) - mb) for c, mb in zip(o.counts, ms.mbar)])
    theta = float(w.w @ y)
    spread = float(w.w @ cs.sigma @ w.w)
    return _squash(theta, spread)


def index_h(z: ZScores, cs: CovarianceStructure) -> float | None:
    """Chebyshev-style quantifier in [0, 1] from the correlation-metric norm.

    h = max(0, (|z|^2 - s_a) / |z|^2) with |z|^2 = z' Gamma^-1 z on the
    active set; None when the active set is empty or its correlation block
    is singular. h near 1 flags outcomes far from typical along the
    directions that carry the variance; the sign pattern of z tells
    homophily from anti-homophily.
    """
    if not cs.active or cs.corr_inv is None:
        return None
    if z.active != cs.active:
        raise ValueError("z-scores and covariance structure disagree on the active set")
    za = z.z[list(cs.active)]
    norm2 = float(za @ cs.corr_inv @ za)
    if norm2 <= 0.0:
        return 0.0
    return max(0.0, (norm2 - len(cs.active)) / norm2)


def newman_modularity(g: Graph, f: Coloring, o: ObservedOutcome) -> float | None:
    """sum_i (m_i/m - (D_i/2m)^2) with D_i the degree mass of class i.

    None when the graph has no edges. This compares observed homophilic
    counts with their expectation under a degree-preserving rewiring null,
    in contrast to the coloring-based indices above.
    """
    m = g.m
    if m == 0:
        return None
    deg_mass = np.bincount(f.assignment, weights=g.degrees, minlength=f.s)
    q = Fraction(0)
    for mi, di in zip(o.counts, deg_mass):
        q += Fraction(mi, m) - Fraction(int(di), 2 * m) ** 2
    return float(q)


def descriptive_ratio(o: ObservedOutcome, m: int) -> float | None:
    """Fraction of edges that are homophilic, in [0, 1]; None when m = 0."""
    if m == 0:
        return None
    return float(Fraction(o.total, m))


@dataclass(frozen=True)
class IndexReport:
    """Every quantifier for one (graph, coloring) pair, plus degeneracy notes."""

    observed: tuple[int, ...]
    mbar: tuple[float, ...]
    z: tuple[float, ...]
    gamma: float | None
    a: float | None
    r: float
    h: float | None
    j_theta: dict[str, float | None]
    newman_q: float | None
    descriptive_ratio: float | None
    notes: tuple[str, ...]


def build_index_report(
    g: Graph,
    f: Coloring,
    o: ObservedOutcome,
    ms: MomentSummary,
    cs: CovarianceStructure,
    presets: tuple[str, ...] = PRESET_NAMES,
    nu_mode: str = "maxdeg",
) -> IndexReport:
    """Evaluate all quantifiers, recording why any of them is undefined."""
    notes: list[str] = []
    zs = z_scores(o, ms)
    inactive = [i for i in range(ms.s) if i not in zs.active]
    if inactive and zs.active:
        notes.append(
            "classes with zero variance excluded from z-based indices: "
            + ", ".join(f.class_labels[i] for i in inactive)
        )

    a = index_a(zs, cs)
    if a is None:
        notes.append("index a undefined: all classes degenerate")
    h = index_h(zs, cs)
    if h is None:
        if not cs.active:
            notes.append("index h undefined: all classes degenerate")
        else:
            notes.append("index h undefined: correlation matrix singular on the active set")

    r = index_r(o, ms, cs)

    j_theta: dict[str, float | None] = {}
    for name in presets:
        try:
            w = weight_preset(name, g, f.profile, nu_mode=nu_mode)
        except UndefinedQuantityError as exc:
            j_theta[name] = None
            notes.append(f"j_theta[{name}] undefined: {exc}")
            continue
        j_theta[name] = index_j_theta(o, ms, cs, w)

    q = newman_modularity(g, f, o)
    ratio = descriptive_ratio(o, g.m)
    if g.m == 0:
        notes.append("modularity and descriptive ratio undefined: graph has no edges")

    gamma = float(cs.gamma) if cs.gamma is not None else None
    if gamma is None:
        notes.append("gamma undefined for n < 4: covariance computed by direct fallback")

    return IndexReport(
        observed=o.counts,
        mbar=tuple(float(x) for x in ms.mbar),
        z=tuple(float(x) for x in zs.z),
        gamma=gamma,
        a=a,
        r=r,
        h=h,
        j_theta=j_theta,
        newman_q=q,
        descriptive_ratio=ratio,
        notes=tuple(notes),
    )
