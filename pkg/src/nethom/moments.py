"""Exact first and second moments of the homophilic-count vector.

Under uniform random colorings of a fixed profile, the count vector M has
closed-form moments driven entirely by falling-factorial ratios of class
sizes and two graph numbers (edge count and two-path count). The covariance
matrix is a rank-one update of a diagonal matrix,

    Sigma = diag(q) + coef * vec vec',

with coef = gamma_invariant(G) and vec_i = c_i^(2) when n >= 4, and with
coef = -1 and vec = Mbar otherwise (no two vertex-disjoint edges exist, so
E[M_i M_j] = 0 off the diagonal). Inverses are taken on the active set (the
classes with positive variance) through the Sherman-Morrison identity

    Sigma^-1 = diag(1/q) - (coef / (1 + coef * vec' diag(1/q) vec)) a a',
    a = diag(1/q) vec.

Scalar formulas are evaluated in exact rational arithmetic; the dense
matrices are materialized as float arrays. Everything here is a pure
function of immutable inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .colorings import Profile, falling_factorial
from .graphs import GraphSummary, gamma_invariant

__all__ = [
    "REL_TOL",
    "MomentSummary",
    "CovarianceStructure",
    "expected_counts",
    "marginal_variances",
    "moment_summary",
    "covariance_exact",
    "covariance_structure",
    "active_classes",
]

# Degeneracy tolerance, relative to the largest covariance entry. Tiny
# graphs routinely produce exactly singular structures (e.g. perfectly
# correlated marginals), so inverses are withheld below this threshold.
REL_TOL = 1e-12


@dataclass(frozen=True)
class MomentSummary:
    """Exact expected counts and variances, one entry per class."""

    mbar: tuple[Fraction, ...]
    var: tuple[Fraction, ...]

    @property
    def s(self) -> int:
        return len(self.mbar)

    def mbar_array(self) -> np.ndarray:
        return np.array([float(x) for x in self.mbar])

    def var_array(self) -> np.ndarray:
        return np.array([float(x) for x in self.var])


def expected_counts(s: GraphSummary, p: Profile) -> tuple[Fraction, ...]:
    """Expected homophilic count per class: m * c_i^(2) / n^(2), exact."""
    n2 = falling_factorial(s.n, 2)
    if n2 == 0 or s.m == 0:
        return tuple(Fraction(0) for _ in p.sizes)
    return tuple(Fraction(s.m * falling_factorial(c, 2), n2) for c in p.sizes)


def marginal_variances(s: GraphSummary, p: Profile) -> tuple[Fraction, ...]:
    """Exact per-class variance of the homophilic count.

    With kappa_i = c_i^(2)/n^(2), r3_i = c_i^(3)/n^(3), r4_i = c_i^(4)/n^(4)
    (ratios with zero numerator are 0 regardless of the denominator):

        var_i = m*kappa_i*(1 - m*kappa_i)
                + 2*((r3_i - r4_i)*pi3 + r4_i*C(m, 2))
    """
    n, m, pi3 = s.n, s.m, s.pi3
    n2 = falling_factorial(n, 2)
    pairs = m * (m - 1) // 2
    out: list[Fraction] = []
    for c in p.sizes:
        if c < 2 or m == 0:
            out.append(Fraction(0))
            continue
        kappa = Fraction(falling_factorial(c, 2), n2)
        r3 = Fraction(falling_factorial(c, 3), falling_factorial(n, 3)) if c >= 3 else Fraction(0)
        r4 = Fraction(falling_factorial(c, 4), falling_factorial(n, 4)) if c >= 4 else Fraction(0)
        mk = m * kappa
        var = mk * (1 - mk) + 2 * ((r3 - r4) * pi3 + r4 * pairs)
        if var < 0:
            raise ArithmeticError(f"negative variance {var} for class size {c}")
        out.append(var)
    return tuple(out)


def moment_summary(s: GraphSummary, p: Profile) -> MomentSummary:
    return MomentSummary(mbar=expected_counts(s, p), var=marginal_variances(s, p))


def covariance_exact(
    s: GraphSummary, p: Profile, ms: MomentSummary | None = None
) -> list[list[Fraction]]:
    """Exact covariance matrix of the homophilic-count vector.

    Off-diagonal entries are gamma * c_i^(2) * c_j^(2) when n >= 4 and
    -Mbar_i * Mbar_j otherwise (for n < 4 no two disjoint edges exist, so
    the cross moment vanishes). Diagonal entries are the marginal variances.
    """
    if ms is None:
        ms = moment_summary(s, p)
    g = gamma_invariant(s)
    if g is None and s.ordered_disjoint_pairs != 0:
        raise AssertionError("n < 4 graphs cannot contain disjoint edge pairs")
    u = [falling_factorial(c, 2) for c in p.sizes]
    k = p.s
    cov = [[Fraction(0)] * k for _ in range(k)]
    for i in range(k):
        cov[i][i] = ms.var[i]
        for j in range(i + 1, k):
            off = g * u[i] * u[j] if g is not None else -ms.mbar[i] * ms.mbar[j]
            cov[i][j] = off
            cov[j][i] = off
    return cov


def active_classes(var: tuple[Fraction, ...] | np.ndarray, rel_tol: float = REL_TOL) -> tuple[int, ...]:
    """Indices of classes whose variance exceeds rel_tol * max variance.

    By Cauchy-Schwarz the largest covariance entry sits on the diagonal, so
    this single rule is shared by the z-score and covariance machinery.
    """
    var_f = [float(v) for v in var]
    mx = max(var_f, default=0.0)
    if mx <= 0.0:
        return ()
    cut = rel_tol * mx
    return tuple(i for i, v in enumerate(var_f) if v > cut)


@dataclass(frozen=True, eq=False)
class CovarianceStructure:
    """Covariance/correlation matrices plus their rank-one-structured inverses.

    ``sigma`` is the full s x s covariance. ``corr``, ``sigma_inv`` and
    ``corr_inv`` live on the active set (classes with positive variance);
    the inverses are present only when the active block is nonsingular at
    the working tolerance, otherwise ``degenerate`` is set and they are None.
    ``q`` holds the diagonal of the rank-one decomposition actually used
    (sigma_i^2 - gamma * (c_i^(2))^2 when gamma is defined).
    """

    gamma: Fraction | None
    u: tuple[int, ...]
    q: tuple[float, ...]
    sigma: np.ndarray
    corr: np.ndarray | None
    sigma_inv: np.ndarray | None
    corr_inv: np.ndarray | None
    active: tuple[int, ...]
    degenerate: bool
    rank_one_coef: float
    tol: float

    @property
    def s(self) -> int:
        return int(self.sigma.shape[0])


def covariance_structure(
    s: GraphSummary,
    p: Profile,
    ms: MomentSummary | None = None,
    rel_tol: float = REL_TOL,
) -> CovarianceStructure:
    """Assemble the :class:`CovarianceStructure` for (graph summary, profile).

    Cost is O(s^2) given the summary; the graph itself is never touched.
    Degeneracy is a reported state, not an error.
    """
    if ms is None:
        ms = moment_summary(s, p)
    k = p.s
    g = gamma_invariant(s)
    u = tuple(falling_factorial(c, 2) for c in p.sizes)
    if g is not None:
        coef = g
        vec = tuple(Fraction(x) for x in u)
    else:
        coef = Fraction(-1)
        vec = ms.mbar
    qdiag = tuple(v - coef * x * x for v, x in zip(ms.var, vec))

    var_f = [float(v) for v in ms.var]
    sigma = np.empty((k, k), dtype=float)
    for i in range(k):
        sigma[i, i] = var_f[i]
        for j in range(i + 1, k):
            off = float(coef * vec[i] * vec[j])
            sigma[i, j] = off
            sigma[j, i] = off

    max_var = max(var_f, default=0.0)
    tol_abs = rel_tol * max_var
    active = tuple(i for i in range(k) if var_f[i] > tol_abs)

    corr = None
    sigma_inv = None
    corr_inv = None
    degenerate = True
    if active:
        idx = np.array(active)
        sig_a = np.sqrt(np.array([var_f[i] for i in active]))
        block = sigma[np.ix_(idx, idx)]
        corr = block / np.outer(sig_a, sig_a)
        np.fill_diagonal(corr, 1.0)

        q_a = [qdiag[i] for i in active]
        if all(float(q) > tol_abs for q in q_a):
            denom = Fraction(1) + coef * sum(
                vec[i] * vec[i] / qdiag[i] for i in active
            )
            denom_f = float(denom)
            if abs(denom_f) > rel_tol:
                degenerate = False
                qf = np.array([float(q) for q in q_a])
                vf = np.array([float(vec[i]) for i in active])
                coef_f = float(coef)
                a = vf / qf
                sigma_inv = np.diag(1.0 / qf) - (coef_f / denom_f) * np.outer(a, a)
                # same update in the correlation geometry: scale by sigma_i
                qn = qf / (sig_a * sig_a)
                vn = vf / sig_a
                an = vn / qn
                corr_inv = np.diag(1.0 / qn) - (coef_f / denom_f) * np.outer(an, an)

    return CovarianceStructure(
        gamma=g,
        u=u,
        q=tuple(float(q) for q in qdiag),
        sigma=sigma,
        corr=corr,
        sigma_inv=sigma_inv,
        corr_inv=corr_inv,
        active=active,
        degenerate=degenerate,
        rank_one_coef=float(coef),
        tol=tol_abs,
    )
