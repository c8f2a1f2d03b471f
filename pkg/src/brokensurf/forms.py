"""Extended Weil-Petersson and Thurston two-forms, and the chart between them.

Both forms have constant coefficients in their charts, so each is stored
as one antisymmetric matrix over the canonical coordinate order (pair
index 3*face + slot; same for sectors).  Per face with slot coordinates
(a, b, c) in ccw order:

    wp train:   -2 (dla^dlb + dlb^dlc + dlc^dla)   in log-lambda coords,
    thurston:  -1/2 (dwa^dwb + dwb^dwc + dwc^dwa)  in small weights.

The chart between structures and measures sends lambda to the gap
w = 2 log(lambda) + log(1/2); its Jacobian is twice the identity, so the
large-weight Thurston form pulls back to exactly the wp form.  The
large-weight matrix is produced by transporting the small-weight one
through the corner equations, not written down by hand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ChartMismatch, InvalidDecoration
from .foliation import BrokenMeasure
from .hyperbolic import DecoratedBrokenHyperbolic
from .triangulation import IdealTriangulation

CHART_LOG_LAMBDA = "log_lambda"
CHART_LARGE = "large_weight"
CHART_SMALL = "small_weight"


@dataclass(frozen=True)
class TwoForm:
    """Constant-coefficient antisymmetric form over a labelled chart."""

    chart: str
    labels: tuple
    matrix: np.ndarray

    def evaluate(self, u, v, chart: str | None = None) -> float:
        if chart is not None and chart != self.chart:
            raise ChartMismatch(f"form lives in {self.chart}, not {chart}")
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        n = len(self.labels)
        if u.shape != (n,) or v.shape != (n,):
            raise ChartMismatch(
                f"form expects vectors of length {n}, got {u.shape} and {v.shape}"
            )
        return float(u @ self.matrix @ v)

    def singular_values(self) -> np.ndarray:
        return np.linalg.svd(self.matrix, compute_uv=False)

    def rank(self, cutoff: float = 1e-8) -> int:
        return matrix_rank(self.matrix, cutoff)


def matrix_rank(m: np.ndarray, cutoff: float = 1e-8) -> int:
    sv = np.linalg.svd(np.asarray(m, dtype=float), compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    return int(np.sum(sv > cutoff * sv[0]))


def _face_cyclic(matrix: np.ndarray, base: int, coeff: float) -> None:
    for i in range(3):
        j = (i + 1) % 3
        matrix[base + i, base + j] += coeff
        matrix[base + j, base + i] -= coeff


def wp_form(T: IdealTriangulation) -> TwoForm:
    """Extended Weil-Petersson form in log-lambda coordinates."""
    n = 3 * T.faces
    m = np.zeros((n, n))
    for f in range(T.faces):
        _face_cyclic(m, 3 * f, -2.0)
    return TwoForm(CHART_LOG_LAMBDA, T.pairs, m)


def small_from_large(T: IdealTriangulation) -> np.ndarray:
    """Transport matrix of the corner equations: small weights from large."""
    n = 3 * T.faces
    s = np.zeros((n, n))
    for f in range(T.faces):
        for c in range(3):
            row = 3 * f + c
            s[row, 3 * f + c] = -0.5
            s[row, 3 * f + (c + 1) % 3] = 0.5
            s[row, 3 * f + (c + 2) % 3] = 0.5
    return s


def thurston_form(T: IdealTriangulation, chart: str = CHART_SMALL) -> TwoForm:
    """Extended Thurston form, natively in small weights.

    The large-weight version is the pullback through the corner
    equations; all entries stay dyadic, so the transport is exact.
    """
    n = 3 * T.faces
    m = np.zeros((n, n))
    for f in range(T.faces):
        _face_cyclic(m, 3 * f, -0.5)
    if chart == CHART_SMALL:
        return TwoForm(CHART_SMALL, T.sectors, m)
    if chart == CHART_LARGE:
        s = small_from_large(T)
        return TwoForm(CHART_LARGE, T.pairs, s.T @ m @ s)
    raise ChartMismatch(f"no Thurston form in chart {chart!r}")


# --- the chart between structures and measures ----------------------------


def to_measure(H: DecoratedBrokenHyperbolic) -> BrokenMeasure:
    """Gap chart: large weight of each pair is its horocycle gap."""
    return BrokenMeasure(H.T, {p: H.gap(p) for p in H.T.pairs})


def from_measure(m: BrokenMeasure) -> DecoratedBrokenHyperbolic:
    """Inverse gap chart: lambda = sqrt(2 e^w), defined for w >= 0."""
    lam = {}
    for p in m.T.pairs:
        w = m.w[p]
        if w < -1e-12:
            raise InvalidDecoration(f"negative weight {w} at {p} has no lambda")
        lam[p] = math.sqrt(2.0 * math.exp(max(w, 0.0)))
    return DecoratedBrokenHyperbolic(m.T, lam)


def log_lambda_vector(H: DecoratedBrokenHyperbolic) -> np.ndarray:
    return np.array([math.log(H.lam[p]) for p in H.T.pairs])


def weight_vector(m: BrokenMeasure) -> np.ndarray:
    return np.array([m.w[p] for p in m.T.pairs])


def pullback_residual(T: IdealTriangulation) -> float:
    """Max-norm gap between the pulled-back Thurston and wp matrices.

    The gap chart's Jacobian is 2I on log-lambda coordinates, so the
    pullback of the large-weight form is 4 times its matrix.
    """
    omega = wp_form(T).matrix
    iota = thurston_form(T, CHART_LARGE).matrix
    jac = 2.0 * np.eye(3 * T.faces)
    return float(np.max(np.abs(jac.T @ iota @ jac - omega)))


@dataclass(frozen=True)
class ScalePoint:
    """A structure paired with a nonnegative measure scale."""

    structure: DecoratedBrokenHyperbolic
    x: float

    def image(self) -> BrokenMeasure:
        return scaled_image(self.structure, self.x)


def scaled_image(H: DecoratedBrokenHyperbolic, x: float) -> BrokenMeasure:
    """Weights x * gap(H); the degeneration family's measure image."""
    if x < 0.0:
        raise ValueError("scale must be nonnegative")
    return to_measure(H).scale(x)


def scale_lambdas(
    H: DecoratedBrokenHyperbolic, factor: float
) -> DecoratedBrokenHyperbolic:
    """Structure with every lambda multiplied by the same factor."""
    if factor <= 0.0:
        raise ValueError("factor must be positive")
    return DecoratedBrokenHyperbolic(H.T, {p: factor * H.lam[p] for p in H.T.pairs})


def ray_measure(H: DecoratedBrokenHyperbolic, n: float) -> BrokenMeasure:
    """Measure image of the degeneration ray at parameter n, scale 1/n.

    The ray multiplies every lambda by e^{n/2}, which adds n to every
    gap; the image weights (n + gap)/n are formed directly, so large n
    never materializes the overflowing lambdas.
    """
    if n <= 0.0:
        raise ValueError("ray parameter must be positive")
    return BrokenMeasure(H.T, {p: 1.0 + H.gap(p) / n for p in H.T.pairs})


def scaling_identity_residual(H, x: float, u, v) -> float:
    """|iota(D(x * chart) u, D(x * chart) v) - x^2 * wp(u, v)|.

    The differential of the scaled chart is 2x times the identity, so
    the residual is exactly zero in exact arithmetic.
    """
    omega = wp_form(H.T)
    iota = thurston_form(H.T, CHART_LARGE)
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    lhs = iota.evaluate(2.0 * x * u, 2.0 * x * v)
    rhs = x * x * omega.evaluate(u, v)
    return abs(lhs - rhs)


# --- rank reporting --------------------------------------------------------


@dataclass(frozen=True)
class RankReport:
    chart: str
    dim: int
    rank: int
    singular_values: tuple
    constrained: bool = False
    num_constraints: int = 0
    tangent_dim: int | None = None
    subspace: str = ""

    def to_dict(self) -> dict:
        out = {
            "chart": self.chart,
            "dim": self.dim,
            "rank": self.rank,
            "singular_values": list(self.singular_values),
            "constrained": self.constrained,
        }
        if self.constrained:
            out["num_constraints"] = self.num_constraints
            out["tangent_dim"] = self.tangent_dim
        if self.subspace:
            out["subspace"] = self.subspace
        return out


def _holonomy_constraints(H: DecoratedBrokenHyperbolic, ell: np.ndarray):
    """log of each puncture's gap-ratio product, as a function of log-lambdas."""
    T = H.T
    index = {p: i for i, p in enumerate(T.pairs)}
    gaps = 2.0 * ell - math.log(2.0)
    if np.any(gaps <= 0.0):
        raise InvalidDecoration("finite-difference step left the gap chart")
    out = []
    for cyc in T.corner_cycles:
        total = 0.0
        for crossing in cyc.crossings:
            total += math.log(gaps[index[crossing.far]])
            total -= math.log(gaps[index[crossing.near]])
        out.append(total)
    return np.array(out)


def rank_report(
    T: IdealTriangulation,
    H: DecoratedBrokenHyperbolic | None = None,
    constrained: bool = False,
    fd_step: float = 1e-6,
    cutoff: float = 1e-8,
) -> RankReport:
    """Rank of the wp form, optionally restricted to the holonomy level set.

    The constrained variant needs a valid nondegenerate structure: the
    constraint Jacobian is measured by central differences in log-lambda
    coordinates and the form is restricted to its null space.
    """
    form = wp_form(T)
    if not constrained:
        sv = form.singular_values()
        return RankReport(
            form.chart, 3 * T.faces, matrix_rank(form.matrix, cutoff), tuple(sv)
        )
    if H is None:
        raise ValueError("constrained rank needs a structure to linearize at")
    ell = log_lambda_vector(H)
    n = ell.size
    s = T.num_punctures
    jac = np.zeros((s, n))
    for i in range(n):
        step = np.zeros(n)
        step[i] = fd_step
        jac[:, i] = (
            _holonomy_constraints(H, ell + step)
            - _holonomy_constraints(H, ell - step)
        ) / (2.0 * fd_step)
    u_, sv_j, vt = np.linalg.svd(jac)
    if sv_j.size and sv_j[0] > 0.0:
        jac_rank = int(np.sum(sv_j > cutoff * sv_j[0]))
    else:
        jac_rank = 0
    basis = vt[jac_rank:].T  # null space of the constraint differential
    restricted = basis.T @ form.matrix @ basis
    sv = np.linalg.svd(restricted, compute_uv=False)
    return RankReport(
        form.chart,
        3 * T.faces,
        matrix_rank(restricted, cutoff),
        tuple(sv),
        constrained=True,
        num_constraints=jac_rank,
        tangent_dim=n - jac_rank,
    )


def unbroken_rank_report(T: IdealTriangulation, cutoff: float = 1e-8) -> RankReport:
    """Rank of the wp form pulled back to the edge-equal subspace."""
    form = wp_form(T)
    n = 3 * T.faces
    index = {p: i for i, p in enumerate(T.pairs)}
    basis = np.zeros((n, T.num_edges))
    for e, (p, q) in enumerate(T.edges):
        basis[index[p], e] = 1.0
        basis[index[q], e] = 1.0
    restricted = basis.T @ form.matrix @ basis
    sv = np.linalg.svd(restricted, compute_uv=False)
    return RankReport(
        form.chart,
        T.num_edges,
        matrix_rank(restricted, cutoff),
        tuple(sv),
        subspace="unbroken",
    )
