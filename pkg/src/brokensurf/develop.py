"""Developing maps into the light cone, holonomy pairs, and cusp closure.

A lift of a face is the triple of light-cone positions of its corners.
Crossing an edge keeps the shared two positions (swapped, since gluing
reverses orientation) and solves for the third on the far side of the
shared chord, so every lift in a developed ball is positively oriented.

Broken structures develop by similarity, not isometry: each crossing
multiplies the running scale by the lambda ratio of the glued pair, and
closed paths come back as (matrix, scale) pairs satisfying
<Mu, Mv> = scale^2 <u, v>.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import minkowski
from .errors import GeometryError, OpenPath
from .hyperbolic import DecoratedBrokenHyperbolic
from .triangulation import Pair, check_loop, unfold_ball

# A renormalized light-cone point should never wander this far off cone.
DRIFT_BOUND = 1e-10

_J = np.diag([1.0, 1.0, -1.0])


def _sign(x: float) -> float:
    return 1.0 if x >= 0.0 else -1.0


def _det3(u, v, w) -> float:
    return float(np.linalg.det(np.column_stack([u, v, w])))


def _cross_edge(H: DecoratedBrokenHyperbolic, face: int, slot: int, points):
    """Develop across one glued edge; returns (far pair, far points, step, drift).

    The far triple is placed so the far face's own slot labels index it:
    gluing reverses the edge, so the near corner slot+1 lands at the far
    corner k2+2 and vice versa.  The fresh corner goes on the side of
    the shared chord away from the near apex.

    Every lift is similar to its face's own lift; the far one's absolute
    factor is read off the shared edge, so the fresh corner's target
    lambdas carry it too.  The returned step is the combinatorial
    lambda ratio near/far, the factor the crossing multiplies onto the
    running scale.
    """
    far = H.T.gluing[(face, slot)]
    g, k2 = far
    shared_head = points[(slot + 1) % 3]  # far corner k2 + 2
    shared_tail = points[(slot + 2) % 3]  # far corner k2 + 1
    apex = points[slot]

    factor = minkowski.lambda_pair(shared_head, shared_tail) / H.lam[far]
    u = shared_tail
    v = shared_head
    z = minkowski.extend_across(
        u,
        v,
        factor * H.lam[(g, (k2 + 2) % 3)],
        factor * H.lam[(g, (k2 + 1) % 3)],
        side=-_sign(_det3(u, v, apex)),
    )
    z, drift = minkowski.renorm_lightcone(z)
    if drift > DRIFT_BOUND:
        raise GeometryError(f"light-cone drift {drift} crossing {(face, slot)}")

    far_points = [None, None, None]
    far_points[k2] = z
    far_points[(k2 + 1) % 3] = shared_tail
    far_points[(k2 + 2) % 3] = shared_head
    step = H.lam[(face, slot)] / H.lam[far]
    return far, tuple(far_points), step, drift


@dataclass(frozen=True)
class DevelopedNode:
    index: int
    face: int
    depth: int
    parent: int | None
    entry_slot: int | None
    points: tuple
    scale: float
    drift: float

    def lift(self) -> minkowski.TriangleLift:
        return minkowski.TriangleLift(self.points)


@dataclass(frozen=True)
class DevelopedBall:
    base: int
    depth: int
    nodes: tuple

    def max_drift(self) -> float:
        return max(n.drift for n in self.nodes)

    def to_dict(self) -> dict:
        return {
            "base": self.base,
            "depth": self.depth,
            "nodes": [
                {
                    "index": n.index,
                    "face": n.face,
                    "depth": n.depth,
                    "parent": n.parent,
                    "entry_slot": n.entry_slot,
                    "points": [list(map(float, p)) for p in n.points],
                    "scale": n.scale,
                }
                for n in self.nodes
            ],
        }


def develop(
    H: DecoratedBrokenHyperbolic,
    base: int = 0,
    depth: int = 2,
    normalization: minkowski.TriangleLift | None = None,
) -> DevelopedBall:
    """Develop the combinatorial ball of the given depth around a face."""
    ball = unfold_ball(H.T, base, depth)
    root = normalization if normalization is not None else H.face_lift(base)
    if not root.oriented():
        raise GeometryError("normalization lift is not positively oriented")

    nodes: list[DevelopedNode] = [
        DevelopedNode(0, base, 0, None, None, root.points, 1.0, 0.0)
    ]
    for bn in ball.nodes[1:]:
        parent = nodes[bn.parent]
        pf, pslot = bn.crossed_from
        far, pts, step, drift = _cross_edge(H, pf, pslot, parent.points)
        assert far == (bn.face, bn.entry_slot)
        nodes.append(
            DevelopedNode(
                bn.index,
                bn.face,
                bn.depth,
                bn.parent,
                bn.entry_slot,
                pts,
                parent.scale * step,
                drift,
            )
        )
    return DevelopedBall(base, depth, tuple(nodes))


def develop_along(
    H: DecoratedBrokenHyperbolic,
    crossings,
    start: minkowski.TriangleLift | None = None,
):
    """Develop face by face along a crossing sequence.

    Returns (start lift, final points, final scale).  Consecutive
    crossings must chain: each one leaves the face the previous one
    entered.
    """
    crossings = tuple(crossings)
    if not crossings:
        raise OpenPath("need at least one crossing")
    face = crossings[0][0]
    lift = start if start is not None else H.face_lift(face)
    points = lift.points
    scale = 1.0
    for f, s in crossings:
        if f != face:
            raise OpenPath(f"crossing {(f, s)} does not start on face {face}")
        (face, _), points, step, _ = _cross_edge(H, f, s, points)
        scale *= step
    return lift, points, scale, face


@dataclass(frozen=True)
class PathHolonomy:
    """Linear part and scale of a developed closed path."""

    matrix: np.ndarray
    scale: float

    def lorentz_residual(self) -> float:
        """How far matrix/scale is from the isometry group, max norm."""
        m = self.matrix
        r = m.T @ _J @ m - self.scale**2 * _J
        return float(np.max(np.abs(r))) / self.scale**2

    def apply(self, point) -> np.ndarray:
        return self.matrix @ np.asarray(point, dtype=float)

    def compose(self, other: "PathHolonomy") -> "PathHolonomy":
        return PathHolonomy(self.matrix @ other.matrix, self.scale * other.scale)


def path_holonomy(
    H: DecoratedBrokenHyperbolic,
    loop,
    normalization: minkowski.TriangleLift | None = None,
) -> PathHolonomy:
    """Holonomy pair of a closed dual path: end frame times inverse start frame.

    Composition is contravariant: the pair of loop1 + loop2 is
    holonomy(loop1) @ holonomy(loop2).
    """
    loop = tuple(loop)
    if not loop:
        return PathHolonomy(np.eye(3), 1.0)
    check_loop(H.T, loop)
    start, points, scale, _ = develop_along(H, loop, start=normalization)
    m_0 = np.column_stack(start.points)
    m_1 = np.column_stack(points)
    return PathHolonomy(m_1 @ np.linalg.inv(m_0), scale)


def deck_candidates(H: DecoratedBrokenHyperbolic, ball: DevelopedBall):
    """Holonomy pairs read off repeats of the base face inside a ball."""
    root = np.column_stack(ball.nodes[0].points)
    root_inv = np.linalg.inv(root)
    out = []
    for node in ball.nodes[1:]:
        if node.face != ball.base:
            continue
        hol = PathHolonomy(np.column_stack(node.points) @ root_inv, node.scale)
        out.append((node.index, hol))
    return out


def tile_separation(points_a, points_b) -> float:
    """Separating-axis margin between two developed tiles.

    An ideal triangle is the straight-edge hull of its boundary points
    in the projective (Klein) disk, so two tiles have disjoint open
    interiors exactly when the flat triangles do.  Returns the smallest
    axis overlap: <= 0 means disjoint interiors (0 for tiles sharing an
    edge), > 0 means genuine overlap of that depth.
    """

    def flat(points):
        return [(p[0] / p[2], p[1] / p[2]) for p in points]

    a, b = flat(points_a), flat(points_b)
    best = np.inf
    for tri in (a, b):
        for i in range(3):
            ex = tri[(i + 1) % 3][0] - tri[i][0]
            ey = tri[(i + 1) % 3][1] - tri[i][1]
            nx, ny = -ey, ex
            pa = [nx * x + ny * y for x, y in a]
            pb = [nx * x + ny * y for x, y in b]
            overlap = min(max(pa), max(pb)) - max(min(pa), min(pb))
            norm = math.hypot(nx, ny)
            if norm > 0.0:
                best = min(best, overlap / norm)
    return float(best)


def cusp_closure_residual(
    H: DecoratedBrokenHyperbolic, puncture: int, base: int | None = None
) -> float:
    """|log| of the lambda ratio the puncture loop fails to close by.

    Developing once around the corner cycle re-lands on the start face.
    The fresh copy of the edge entered last carries a definite lambda
    (its pair lambda under the final lift); for an unbroken structure it
    matches the structure's own, and the mismatch factor is exactly the
    loop's lambda-convention holonomy.
    """
    cyc = H.T.corner_cycles[puncture]
    crossings = [c.near for c in cyc.crossings]
    if base is not None:
        starts = [i for i, (f, _) in enumerate(crossings) if f == base]
        if not starts:
            raise ValueError(f"face {base} does not meet puncture {puncture}")
        i = starts[0]
        crossings = crossings[i:] + crossings[:i]

    _, points, _, face = develop_along(H, crossings)
    assert face == crossings[0][0]
    k2 = H.T.gluing[crossings[-1]][1]  # entry slot; the fresh corner sits there
    fresh_slot = (k2 + 1) % 3  # edge joining fresh corner to corner k2+2
    lam_geo = minkowski.lambda_pair(points[k2], points[(k2 + 2) % 3])
    ratio = lam_geo / H.lam[(face, fresh_slot)]
    return abs(float(np.log(ratio)))
