"""Ideal triangulations of punctured surfaces, given as glued face slots.

A triangulation is a set of faces 0..F-1, each carrying edge slots 0, 1, 2
in counterclockwise order, together with a perfect matching on the
(face, slot) pairs.  Slot k of a face runs between the face's corners
k+1 and k+2 (mod 3), so the corner opposite slot k is corner k and the
face's ccw boundary traverses slot k from corner k+1 to corner k+2.
Gluing always identifies the two copies of an edge reversing the boundary
direction; that is the only identification an oriented surface admits,
so the matching alone determines the surface.

Derived combinatorics: corner cycles (one per puncture), the dual
trivalent graph, the freeway train track, and unfolded balls used by the
developing map.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import Disconnected, NonOrientable, OpenPath, SlotReused, SlotUnglued

Pair = tuple[int, int]      # (face, slot)
Sector = tuple[int, int]    # (face, corner); corner k is opposite slot k


def _check_pair(faces: int, p) -> Pair:
    if (
        not isinstance(p, (tuple, list))
        or len(p) != 2
        or not all(isinstance(x, int) for x in p)
    ):
        raise ValueError(f"malformed (face, slot) pair: {p!r}")
    f, s = p
    if not 0 <= f < faces:
        raise ValueError(f"face index out of range: {p!r}")
    if s not in (0, 1, 2):
        raise ValueError(f"slot index out of range: {p!r}")
    return (f, s)


@dataclass(frozen=True)
class Crossing:
    """One step of a corner cycle: the edge crossed and its two sides."""

    edge: int
    near: Pair   # pair on the side the cycle leaves
    far: Pair    # pair on the side it enters


@dataclass(frozen=True)
class CornerCycle:
    """Sectors met in ccw order around one puncture.

    crossings[i] sits between sectors[i] and sectors[(i+1) % len].
    """

    index: int
    sectors: tuple[Sector, ...]
    crossings: tuple[Crossing, ...]

    def __len__(self) -> int:
        return len(self.sectors)

    def loop(self) -> tuple[Pair, ...]:
        """Boundary loop around the puncture, as near-side crossings."""
        return tuple(c.near for c in self.crossings)


class IdealTriangulation:
    """Faces plus a slot matching, with derived combinatorics precomputed.

    Treat instances as immutable after construction.
    """

    def __init__(self, faces: int, gluing_pairs) -> None:
        if not isinstance(faces, int) or faces < 1:
            raise ValueError(f"face count must be a positive integer, got {faces!r}")
        self.faces = faces

        gluing: dict[Pair, Pair] = {}
        for raw in gluing_pairs:
            if not isinstance(raw, (tuple, list)) or len(raw) != 2:
                raise ValueError(f"malformed gluing entry: {raw!r}")
            a = _check_pair(faces, raw[0])
            b = _check_pair(faces, raw[1])
            if a == b:
                raise NonOrientable(f"slot {a} glued to itself")
            for p, q in ((a, b), (b, a)):
                if p in gluing:
                    raise SlotReused(f"slot {p} appears in more than one gluing")
                gluing[p] = q
        for f in range(faces):
            for s in (0, 1, 2):
                if (f, s) not in gluing:
                    raise SlotUnglued(f"slot {(f, s)} is not glued")
        self.gluing = gluing

        self._check_connected()

        # Edges: canonical sorted pair-of-pairs, indexed in sorted order.
        edges = sorted({tuple(sorted((p, q))) for p, q in gluing.items()})
        self.edges: tuple[tuple[Pair, Pair], ...] = tuple(edges)
        self.edge_index: dict[Pair, int] = {}
        for i, (p, q) in enumerate(self.edges):
            self.edge_index[p] = i
            self.edge_index[q] = i

        self.pairs: tuple[Pair, ...] = tuple(
            (f, s) for f in range(faces) for s in (0, 1, 2)
        )
        self.sectors: tuple[Sector, ...] = self.pairs  # same index set

        self.corner_cycles: tuple[CornerCycle, ...] = self._trace_corner_cycles()
        self.puncture_of: dict[Sector, int] = {}
        for cyc in self.corner_cycles:
            for sec in cyc.sectors:
                self.puncture_of[sec] = cyc.index

        self.num_punctures = len(self.corner_cycles)
        self.num_edges = len(self.edges)
        # chi = F - E = 2 - 2g - s; always negative since E = 3F/2.
        twice_genus = 2 - self.num_punctures + self.faces // 2
        if twice_genus % 2 or twice_genus < 0:
            raise AssertionError("corner cycle census is inconsistent")
        self.genus = twice_genus // 2

    def _check_connected(self) -> None:
        seen = {0}
        queue = deque([0])
        while queue:
            f = queue.popleft()
            for s in (0, 1, 2):
                g = self.gluing[(f, s)][0]
                if g not in seen:
                    seen.add(g)
                    queue.append(g)
        if len(seen) != self.faces:
            missing = sorted(set(range(self.faces)) - seen)
            raise Disconnected(f"faces unreachable from face 0: {missing}")

    def step_ccw(self, sector: Sector) -> tuple[Sector, Crossing]:
        """Rotate ccw about the sector's puncture into the next sector.

        From corner c of face f the ccw exit edge is slot c+1; the far
        side (f', k') receives the puncture at its corner k'+1.
        """
        f, c = sector
        near = (f, (c + 1) % 3)
        far = self.gluing[near]
        crossing = Crossing(edge=self.edge_index[near], near=near, far=far)
        return (far[0], (far[1] + 1) % 3), crossing

    def _trace_corner_cycles(self) -> tuple[CornerCycle, ...]:
        cycles = []
        unvisited = set(self.sectors)
        while unvisited:
            start = min(unvisited)
            secs = []
            crossings = []
            cur = start
            while True:
                secs.append(cur)
                unvisited.discard(cur)
                cur, crossing = self.step_ccw(cur)
                crossings.append(crossing)
                if cur == start:
                    break
            cycles.append(
                CornerCycle(len(cycles), tuple(secs), tuple(crossings))
            )
        return tuple(cycles)

    def euler_characteristic(self) -> int:
        return self.faces - self.num_edges

    def other_side(self, pair: Pair) -> Pair:
        return self.gluing[pair]

    def to_dict(self) -> dict:
        """Canonical file form: pairs sorted lexicographically."""
        return {
            "faces": self.faces,
            "gluing": [[list(p), list(q)] for p, q in self.edges],
        }


def build_triangulation(faces: int, gluing_pairs) -> IdealTriangulation:
    """Validate and assemble a triangulation from raw matching data."""
    return IdealTriangulation(faces, gluing_pairs)


def torus_fixture() -> IdealTriangulation:
    """Two faces glued with a cyclic slot offset: genus 1, one puncture."""
    return build_triangulation(
        2, [((0, k), (1, (k + 1) % 3)) for k in range(3)]
    )


def sphere_fixture() -> IdealTriangulation:
    """Double of a triangle: genus 0, three punctures."""
    return build_triangulation(
        2, [((0, 0), (1, 0)), ((0, 1), (1, 2)), ((0, 2), (1, 1))]
    )


# --- dual structures ------------------------------------------------------


@dataclass(frozen=True)
class Freeway:
    """Train track dual to the triangulation.

    Large branches are indexed by (face, slot) pairs, small branches by
    (face, corner) sectors.  Each large branch joins the bivalent vertex
    on its edge to the trivalent vertex inside its face; the small branch
    at corner c joins the trivalent vertices of slots c+1 and c+2.
    """

    large_edges: dict
    small_edges: dict
    trivalent: tuple
    bivalent: tuple
    monogons: tuple  # per puncture: the small branches bounding it

    def switches(self):
        """Per trivalent vertex: (large pair, (small sector, small sector))."""
        out = []
        for (f, k) in self.trivalent:
            out.append(((f, k), ((f, (k + 1) % 3), (f, (k + 2) % 3))))
        return out


def dual_freeway(T: IdealTriangulation) -> Freeway:
    trivalent = tuple((f, k) for f in range(T.faces) for k in (0, 1, 2))
    bivalent = tuple(range(T.num_edges))
    large = {}
    for (f, k) in T.pairs:
        large[(f, k)] = (("bi", T.edge_index[(f, k)]), ("tri", f, k))
    small = {}
    for (f, c) in T.sectors:
        small[(f, c)] = (("tri", f, (c + 1) % 3), ("tri", f, (c + 2) % 3))
    monogons = tuple(cyc.sectors for cyc in T.corner_cycles)
    return Freeway(large, small, trivalent, bivalent, monogons)


@dataclass(frozen=True)
class DualGraph:
    """Fatgraph spine: face vertices joined through edge midpoints.

    Half-edges are the (face, slot) pairs; the slot order 0, 1, 2 is the
    ccw cyclic order at each face vertex.
    """

    face_vertices: tuple
    midpoint_vertices: tuple
    half_edges: dict  # pair -> (face vertex, midpoint vertex)

    def cyclic_order(self, f: int) -> tuple[Pair, Pair, Pair]:
        return ((f, 0), (f, 1), (f, 2))


def dual_graph(T: IdealTriangulation) -> DualGraph:
    halves = {
        (f, k): (f, ("mid", T.edge_index[(f, k)])) for (f, k) in T.pairs
    }
    return DualGraph(
        tuple(range(T.faces)),
        tuple(("mid", i) for i in range(T.num_edges)),
        halves,
    )


def check_loop(T: IdealTriangulation, crossings) -> tuple[Pair, ...]:
    """Validate a closed face path given by near-side crossings."""
    crossings = [(_check_pair(T.faces, p)) for p in crossings]
    if not crossings:
        raise OpenPath("empty loop has no base face")
    for i, near in enumerate(crossings):
        far = T.gluing[near]
        nxt = crossings[(i + 1) % len(crossings)]
        if nxt[0] != far[0]:
            raise OpenPath(
                f"crossing {near} lands on face {far[0]}, "
                f"but the next crossing starts at face {nxt[0]}"
            )
    return tuple(crossings)


def dual_loops(T: IdealTriangulation, which="punctures"):
    """Closed loops in the dual graph, as tuples of near-side crossings.

    which: "punctures" for the boundary loop of each corner cycle,
    "basis" for a fundamental cycle basis off a BFS tree rooted at face 0,
    or an explicit list of loops to validate (OpenPath on failure).
    """
    if which == "punctures":
        return [cyc.loop() for cyc in T.corner_cycles]
    if which == "basis":
        return _cycle_basis(T)
    return [check_loop(T, loop) for loop in which]


def _cycle_basis(T: IdealTriangulation):
    # BFS tree on faces; tree_path[f] = crossings from face 0 to f.
    tree_path: dict[int, tuple[Pair, ...]] = {0: ()}
    tree_edges = set()
    queue = deque([0])
    while queue:
        f = queue.popleft()
        for s in (0, 1, 2):
            g = T.gluing[(f, s)][0]
            if g not in tree_path:
                tree_path[g] = tree_path[f] + ((f, s),)
                tree_edges.add(T.edge_index[(f, s)])
                queue.append(g)
    loops = []
    for i, (p, q) in enumerate(T.edges):
        if i in tree_edges:
            continue
        f, g = p[0], q[0]
        # loop: 0 -> f, cross p, g -> 0 (reverse of tree path to g).
        back = tuple(T.gluing[c] for c in reversed(tree_path[g]))
        loops.append(tree_path[f] + (p,) + back)
    for loop in loops:
        check_loop(T, loop)
    return loops


def closed_paths(T: IdealTriangulation, base: int, max_len: int):
    """All closed dual-graph paths from base of length 1..max_len."""
    out = []
    stack = [(base, ())]
    while stack:
        f, taken = stack.pop()
        if taken and f == base:
            out.append(taken)
        if len(taken) < max_len:
            for s in (0, 1, 2):
                g = T.gluing[(f, s)][0]
                stack.append((g, taken + ((f, s),)))
    out.sort(key=lambda p: (len(p), p))
    return out


# --- unfolded balls -------------------------------------------------------


@dataclass
class BallNode:
    index: int
    face: int
    depth: int
    parent: int | None
    entry_slot: int | None          # slot of this face crossed to enter
    crossed_from: Pair | None       # parent's (face, slot) that was crossed
    children: list = field(default_factory=list)


@dataclass(frozen=True)
class UnfoldedBall:
    """Rooted unfolding tree of face instances around a base face.

    The root has three children; every other node has two (it never
    re-crosses its entry slot), so a depth-D ball has 3 * 2^D - 2 nodes.
    """

    base: int
    depth: int
    nodes: tuple

    def __len__(self) -> int:
        return len(self.nodes)


def unfold_ball(T: IdealTriangulation, base: int, depth: int) -> UnfoldedBall:
    if not 0 <= base < T.faces:
        raise ValueError(f"base face out of range: {base}")
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    root = BallNode(0, base, 0, None, None, None)
    nodes = [root]
    queue = deque([root])
    while queue:
        node = queue.popleft()
        if node.depth == depth:
            continue
        for s in (0, 1, 2):
            if s == node.entry_slot:
                continue
            far = T.gluing[(node.face, s)]
            child = BallNode(
                len(nodes), far[0], node.depth + 1, node.index, far[1],
                (node.face, s),
            )
            node.children.append(child.index)
            nodes.append(child)
            queue.append(child)
    return UnfoldedBall(base, depth, tuple(nodes))
