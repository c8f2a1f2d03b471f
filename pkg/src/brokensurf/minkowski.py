"""Geometry in the Minkowski space R^{2,1} and its hyperboloid model.

Points are numpy arrays (x, y, z) with the bilinear form
<u, v> = ux*vx + uy*vy - uz*vz.  The hyperboloid H is <w, w> = -1,
z > 0; the upper light cone L+ is <u, u> = 0, z > 0.  A cone point u
is dual to the horocycle h(u) = {w in H : <w, u> = -1}, and the lambda
length of two cone points is sqrt(-<u, v>), so edge decorations become
linear algebra: every solver here is closed-form.

Conventions: a triangle lift stores its vertices in ccw order
(det > 0 once oriented), vertex i faces the edge joining the other two,
and lambdas passed to solve_triangle are indexed by the opposite vertex.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    CollinearRays,
    DegeneratePair,
    DegenerateRays,
    NoRealSolution,
)

# Right-handed: any positive lambdas on these rays give det(u0,u1,u2) > 0.
DEFAULT_RAYS = (
    np.array([1.0, 0.0, 1.0]),
    np.array([0.0, 1.0, 1.0]),
    np.array([-1.0, 0.0, 1.0]),
)


def mform(u, v) -> float:
    """Minkowski pairing of signature (2, 1)."""
    return float(u[0] * v[0] + u[1] * v[1] - u[2] * v[2])


def renorm_lightcone(u):
    """Project back to the cone along z; returns (point, relative drift)."""
    r = math.hypot(float(u[0]), float(u[1]))
    drift = abs(mform(u, u)) / (float(u[2]) ** 2) if u[2] else float("inf")
    return np.array([float(u[0]), float(u[1]), r]), drift


def lambda_pair(u, v, tol: float = 1e-12) -> float:
    """Lambda length sqrt(-<u, v>) of two upper cone points."""
    s = -mform(u, v)
    if s <= tol * float(u[2]) * float(v[2]):
        raise CollinearRays(f"cone points pair to {-s}, not negatively")
    return math.sqrt(s)


@dataclass(frozen=True)
class TriangleLift:
    """Three upper cone points spanning a decorated ideal triangle."""

    points: tuple

    def lam(self, i: int, j: int) -> float:
        return lambda_pair(self.points[i], self.points[j])

    def opposite_lam(self, k: int) -> float:
        """Lambda of the edge facing vertex k."""
        return self.lam((k + 1) % 3, (k + 2) % 3)

    def det(self) -> float:
        return float(np.linalg.det(np.column_stack(self.points)))

    def oriented(self) -> bool:
        return self.det() > 0.0


def solve_triangle(rays, lambdas, tol: float = 1e-12) -> TriangleLift:
    """Scale three cone rays so that <u_i, u_j> = -lambdas[k]^2, k opposite.

    The system t_i * t_j = lambdas[k]^2 / (-<r_i, r_j>) has the unique
    positive solution t_i = sqrt(m_j * m_k / m_i).  Rays may be given at
    any positive scale; they are re-projected onto the cone along z.
    """
    rays = [renorm_lightcone(np.asarray(r, dtype=float))[0] for r in rays]
    if len(rays) != 3 or len(lambdas) != 3:
        raise ValueError("need three rays and three lambdas")
    if min(lambdas) <= 0.0:
        raise ValueError(f"lambdas must be positive, got {tuple(lambdas)}")
    if abs(np.linalg.det(np.column_stack(rays))) <= tol:
        raise DegenerateRays("rays do not span R^3")
    m = []
    for k in range(3):
        i, j = (k + 1) % 3, (k + 2) % 3
        g = -mform(rays[i], rays[j])
        if g <= tol * rays[i][2] * rays[j][2]:
            raise CollinearRays(f"rays {i} and {j} are proportional")
        m.append(float(lambdas[k]) ** 2 / g)
    points = []
    for i in range(3):
        j, k = (i + 1) % 3, (i + 2) % 3
        t = math.sqrt(m[j] * m[k] / m[i])
        points.append(t * rays[i])
    return TriangleLift(tuple(points))


def extend_across(u, v, lam_u, lam_v, side: int, tol: float = 1e-12):
    """Third cone point z with <z, u> = -lam_u^2, <z, v> = -lam_v^2.

    side (+1 or -1) picks the sign of det(u, v, z), i.e. the half-space
    of the edge plane span(u, v) the new vertex falls in.  Writing
    z = a*u + b*v + c*n with n Minkowski-orthogonal to the plane, the
    mixed terms fix a and b and <z, z> = 0 fixes c^2; n is spacelike
    whenever u, v are independent upper cone points, so a real c always
    exists for positive lambdas.
    """
    if side not in (-1, 1):
        raise ValueError(f"side must be +1 or -1, got {side!r}")
    if min(lam_u, lam_v) <= 0.0:
        raise ValueError("lambdas must be positive")
    lam_uv_sq = -mform(u, v)
    if lam_uv_sq <= tol * float(u[2]) * float(v[2]):
        raise DegeneratePair("edge endpoints are proportional")
    a = float(lam_v) ** 2 / lam_uv_sq
    b = float(lam_u) ** 2 / lam_uv_sq
    cross = np.cross(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
    n = np.array([cross[0], cross[1], -cross[2]])  # <n, u> = <n, v> = 0
    nn = mform(n, n)  # equals det(u, v, n)
    if nn <= 0.0:
        raise NoRealSolution("complement of the edge plane is not spacelike")
    c_sq = 2.0 * a * b * lam_uv_sq / nn
    if c_sq < 0.0:
        raise NoRealSolution("no real scaling for the third vertex")
    c = side * math.sqrt(c_sq)
    return a * np.asarray(u, dtype=float) + b * np.asarray(v, dtype=float) + c * n


def horocycle_edge_point(u, v):
    """Where h(u) crosses the geodesic from u to v: u/2 + v/lambda^2."""
    lam_sq = -mform(u, v)
    if lam_sq <= 0.0:
        raise DegeneratePair("edge endpoints are proportional")
    return 0.5 * np.asarray(u, dtype=float) + np.asarray(v, dtype=float) / lam_sq


def horocycle_arc(lift: TriangleLift, i: int) -> float:
    """Length along h(u_i) between the triangle's two edge planes.

    The crossing points p, q with the flanking geodesics are closed-form,
    and two points of a level -1 horocycle at arc distance L satisfy
    <p, q> = -1 - L^2/2, so the length needs no integration.
    """
    j, k = (i + 1) % 3, (i + 2) % 3
    p = horocycle_edge_point(lift.points[i], lift.points[j])
    q = horocycle_edge_point(lift.points[i], lift.points[k])
    s = -2.0 * mform(p, q) - 2.0
    return math.sqrt(max(s, 0.0))


def lift_hlength(lift: TriangleLift, i: int) -> float:
    """Combinatorial h-length lambda_i / (lambda_j * lambda_k) at vertex i."""
    j, k = (i + 1) % 3, (i + 2) % 3
    return lift.opposite_lam(i) / (lift.opposite_lam(j) * lift.opposite_lam(k))


def tangency_point(u, v, w):
    """Foot of the perpendicular from w's ideal point onto geodesic (u, v).

    Equivalently the point of the geodesic maximizing <x, w>; for the
    symmetric decoration it is where the horocycles h(u), h(v) touch.
    """
    lam_e_sq = -mform(u, v)
    lam_f_sq = -mform(v, w)
    lam_g_sq = -mform(w, u)
    if min(lam_e_sq, lam_f_sq, lam_g_sq) <= 0.0:
        raise DegeneratePair("lift is not pairwise negative")
    s = math.sqrt(lam_f_sq / lam_g_sq) / math.sqrt(2.0 * lam_e_sq)
    t = math.sqrt(lam_g_sq / lam_f_sq) / math.sqrt(2.0 * lam_e_sq)
    return s * np.asarray(u, dtype=float) + t * np.asarray(v, dtype=float)


def project_poincare(w):
    """Poincare disk image: (x, y)/(1 + z) on H, (x, y)/z for cone rays."""
    w = np.asarray(w, dtype=float)
    q = mform(w, w)
    scale = max(abs(w[2]) ** 2, 1.0)
    if abs(q) <= 1e-9 * scale:
        if w[2] <= 0.0:
            raise ValueError("cone ray must point up")
        return np.array([w[0] / w[2], w[1] / w[2]])
    if abs(q + 1.0) <= 1e-9:
        return np.array([w[0] / (1.0 + w[2]), w[1] / (1.0 + w[2])])
    raise ValueError(f"point is neither on H nor on the cone: <w,w> = {q}")


def horocycle_disk_circle(u):
    """Euclidean center and radius of h(u)'s image in the Poincare disk.

    Internally tangent to the unit circle at the ray's boundary point;
    radius 1/(z + 1) shrinks as the horoball deepens.
    """
    u, _ = renorm_lightcone(np.asarray(u, dtype=float))
    if u[2] <= 0.0:
        raise ValueError("cone ray must point up")
    r = 1.0 / (u[2] + 1.0)
    center = np.array([u[0], u[1]]) / (u[2] + 1.0)
    return center, r
