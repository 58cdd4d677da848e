"""Drawing validation, angular resolution, and frame-angle diagnostics.

A drawing is an (n, 2) float array of vertex coordinates paired with a graph
and an embedding.  Validity is combinatorial (exact-sign orientation tests,
no epsilon); angle identities are numeric with a 1e-9 tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .families import FrameRoles
from .graphs import Embedding, LabeledGraph, StructureError, canonical_cycle, trace_faces

TOL = 1e-9


@dataclass
class Violation:
    kind: str  # "crossing" | "flipped-face" | "rotation-mismatch" | "coincident"
    detail: str


def signed_area(cycle: tuple[int, ...], coords: np.ndarray) -> float:
    # Anchor at the first vertex: differences between nearby doubles are
    # exact, so the sign stays reliable for faces far smaller than their
    # absolute coordinates (deeply nested drawings).
    pts = coords[list(cycle)] - coords[cycle[0]]
    x, y = pts[:, 0], pts[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def _segment_violations(graph: LabeledGraph, coords: np.ndarray) -> list[Violation]:
    """Exact pairwise segment tests: non-adjacent edges must not intersect,
    adjacent edges must meet only at their shared endpoint."""
    edges = sorted(graph.edges)
    m = len(edges)
    if m == 0:
        return []
    E = np.asarray(edges)
    P = coords[E[:, 0]]
    Q = coords[E[:, 1]]
    out: list[Violation] = []

    def orient(ax, ay, bx, by, cx, cy):
        return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)

    def on_segment(ax, ay, bx, by, cx, cy):
        # c collinear with a-b assumed; is c within the closed bounding box?
        return (
            (np.minimum(ax, bx) <= cx) & (cx <= np.maximum(ax, bx))
            & (np.minimum(ay, by) <= cy) & (cy <= np.maximum(ay, by))
        )

    block = max(1, int(4e6 / max(m, 1)))
    for i0 in range(0, m, block):
        i1 = min(m, i0 + block)
        ii, jj = np.meshgrid(np.arange(i0, i1), np.arange(m), indexing="ij")
        mask = jj > ii
        # bounding-box prefilter
        bb = (
            (np.minimum(P[ii, 0], Q[ii, 0]) <= np.maximum(P[jj, 0], Q[jj, 0]))
            & (np.minimum(P[jj, 0], Q[jj, 0]) <= np.maximum(P[ii, 0], Q[ii, 0]))
            & (np.minimum(P[ii, 1], Q[ii, 1]) <= np.maximum(P[jj, 1], Q[jj, 1]))
            & (np.minimum(P[jj, 1], Q[jj, 1]) <= np.maximum(P[ii, 1], Q[ii, 1]))
        )
        mask &= bb
        ii, jj = ii[mask], jj[mask]
        if ii.size == 0:
            continue
        a, b = E[ii, 0], E[ii, 1]
        c, d = E[jj, 0], E[jj, 1]
        ax, ay = coords[a, 0], coords[a, 1]
        bx, by = coords[b, 0], coords[b, 1]
        cx, cy = coords[c, 0], coords[c, 1]
        dx, dy = coords[d, 0], coords[d, 1]
        d1 = orient(ax, ay, bx, by, cx, cy)
        d2 = orient(ax, ay, bx, by, dx, dy)
        d3 = orient(cx, cy, dx, dy, ax, ay)
        d4 = orient(cx, cy, dx, dy, bx, by)
        shared = (a == c) | (a == d) | (b == c) | (b == d)
        proper = (((d1 > 0) & (d2 < 0)) | ((d1 < 0) & (d2 > 0))) & (
            ((d3 > 0) & (d4 < 0)) | ((d3 < 0) & (d4 > 0))
        )
        touch = (
            ((d1 == 0) & on_segment(ax, ay, bx, by, cx, cy))
            | ((d2 == 0) & on_segment(ax, ay, bx, by, dx, dy))
            | ((d3 == 0) & on_segment(cx, cy, dx, dy, ax, ay))
            | ((d4 == 0) & on_segment(cx, cy, dx, dy, bx, by))
        )
        bad_disjoint = ~shared & (proper | touch)
        # adjacent pair: collinear overlap means the non-shared endpoint of one
        # segment lies on the other segment
        overlap = (
            ((d1 == 0) & (c != a) & (c != b) & on_segment(ax, ay, bx, by, cx, cy))
            | ((d2 == 0) & (d != a) & (d != b) & on_segment(ax, ay, bx, by, dx, dy))
            | ((d3 == 0) & (a != c) & (a != d) & on_segment(cx, cy, dx, dy, ax, ay))
            | ((d4 == 0) & (b != c) & (b != d) & on_segment(cx, cy, dx, dy, bx, by))
        )
        bad_shared = shared & overlap
        for k in np.nonzero(bad_disjoint | bad_shared)[0]:
            out.append(
                Violation(
                    "crossing",
                    f"edges ({a[k]},{b[k]}) and ({c[k]},{d[k]}) intersect",
                )
            )
            if len(out) >= 50:
                return out
    return out


def realized_rotation(graph: LabeledGraph, coords: np.ndarray) -> list[list[int]]:
    """Clockwise neighbor order realized by the drawing at each vertex."""
    adj = graph.adjacency()
    rot: list[list[int]] = []
    for v in range(graph.n):
        nbrs = sorted(adj[v])
        ang = [
            math.atan2(coords[u, 1] - coords[v, 1], coords[u, 0] - coords[v, 0])
            for u in nbrs
        ]
        order = sorted(range(len(nbrs)), key=lambda k: (-ang[k], nbrs[k]))
        rot.append([nbrs[k] for k in order])
    return rot


def _cyclic_equal(a: list[int], b: list[int]) -> bool:
    if len(a) != len(b):
        return False
    if not a:
        return True
    if len(a) <= 2:
        return sorted(a) == sorted(b)
    try:
        k = b.index(a[0])
    except ValueError:
        return False
    return a == b[k:] + b[:k]


def validate_drawing(
    graph: LabeledGraph,
    emb: Embedding,
    coords: np.ndarray,
    check_crossings: bool | None = None,
) -> list[Violation]:
    """Return all violations of the drawing against the embedding (empty = ok).

    Checks: distinct points, pairwise segment intersections, positive signed
    area on every internal face / negative on the outer face, and the
    realized clockwise edge order at each vertex against the rotation system.
    When ``check_crossings`` is None the pairwise segment test is skipped for
    very large graphs (> 6000 edges), where face orientation plus rotation
    agreement already certify planarity for a maximal planar graph.
    """
    coords = np.asarray(coords, dtype=float)
    if coords.shape != (graph.n, 2):
        raise StructureError(f"drawing covers {coords.shape}, expected ({graph.n}, 2)")
    out: list[Violation] = []
    if not np.all(np.isfinite(coords)):
        out.append(Violation("coincident", "non-finite coordinates"))
        return out
    uniq = {(float(x), float(y)) for x, y in coords}
    if len(uniq) != graph.n:
        out.append(Violation("coincident", "two vertices share coordinates"))

    faces = trace_faces(graph, emb.rotation)
    outer = canonical_cycle(emb.outer_face)
    outer_seen = False
    for f in faces:
        area = signed_area(f, coords)
        if f == outer:
            outer_seen = True
            if area >= 0:
                out.append(Violation("flipped-face", f"outer face {f} not clockwise"))
        elif area <= 0:
            out.append(Violation("flipped-face", f"internal face {f} not counterclockwise"))
    if not outer_seen:
        out.append(Violation("flipped-face", f"outer face {outer} not found among traced faces"))

    real = realized_rotation(graph, coords)
    for v in range(graph.n):
        if not _cyclic_equal(emb.rotation[v], real[v]):
            out.append(Violation("rotation-mismatch", f"vertex {v}: drawing order differs"))
            if len([x for x in out if x.kind == "rotation-mismatch"]) >= 20:
                break

    if check_crossings is None:
        check_crossings = len(graph.edges) <= 6000
    if check_crossings:
        out.extend(_segment_violations(graph, coords))
    return out


@dataclass
class AngleReport:
    """Consecutive-edge angles per vertex (clockwise order), global minimum,
    and the vertex/edge pair achieving it."""

    gaps: list[list[float]]  # per vertex, aligned with `order`
    order: list[list[int]]   # clockwise neighbor order used for the gaps
    resolution: float
    witness: tuple[int, tuple[int, int]]


def angular_resolution(graph: LabeledGraph, coords: np.ndarray) -> AngleReport:
    """Smallest angle between two edges meeting at a vertex, over the drawing."""
    coords = np.asarray(coords, dtype=float)
    adj = graph.adjacency()
    gaps: list[list[float]] = []
    order: list[list[int]] = []
    best = math.inf
    witness = (-1, (-1, -1))
    for v in range(graph.n):
        nbrs = sorted(adj[v])
        if len(nbrs) < 2:
            gaps.append([])
            order.append(list(nbrs))
            continue
        vec = coords[nbrs] - coords[v]
        if np.any((vec == 0).all(axis=1)):
            raise StructureError(f"zero-length edge at vertex {v}")
        ang = np.arctan2(vec[:, 1], vec[:, 0])
        idx = sorted(range(len(nbrs)), key=lambda k: (-ang[k], nbrs[k]))
        cw = [nbrs[k] for k in idx]
        a = [ang[k] for k in idx]
        g = []
        for i in range(len(cw)):
            j = (i + 1) % len(cw)
            diff = a[i] - a[j] if j > 0 else a[i] - a[j] + 2.0 * math.pi
            g.append(diff)
        gaps.append(g)
        order.append(cw)
        for i, val in enumerate(g):
            pair = (cw[i], cw[(i + 1) % len(cw)])
            pair = (min(pair), max(pair))
            if val < best - TOL:
                best = val
                witness = (v, pair)
            elif val <= best + TOL:
                best = min(best, val)
    return AngleReport(gaps, order, best, witness)


@dataclass
class FrameProfile:
    """Composite fan angles at the frame root for rings k = 2..d.

    ``alpha1[k]`` is angle(v_{k-1} w v_k), ``alpha2[k]`` the composite
    angle(u_k w v_{k-1}), ``alpha3[k]`` the composite angle(v_1 w v_{k-1}),
    each as sums of consecutive rotation gaps at w, and
    ``r[k] = alpha3[k]/alpha1[k]``.  Keys are the ring indices k."""

    alpha1: dict[int, float]
    alpha2: dict[int, float]
    alpha3: dict[int, float]
    r: dict[int, float]
    apex_v: float  # composite angle(v_1 w v_d)
    apex_total: float  # composite angle(u_d w v_d)


def _root_gaps(roles: FrameRoles, coords: np.ndarray) -> tuple[list[float], list[int]]:
    """Consecutive-edge gaps at the frame root in canonical rotation order
    u_d .. u_1 v_1 .. v_d; entry i is the angle between edges i and i+1."""
    w = roles.root
    seq = list(reversed(roles.u)) + list(roles.v)
    vec = coords[seq] - coords[w]
    ang = np.arctan2(vec[:, 1], vec[:, 0])
    gaps = []
    for i in range(len(seq) - 1):
        diff = (ang[i] - ang[i + 1]) % (2.0 * math.pi)
        gaps.append(float(diff))
    return gaps, seq


def frame_profile(roles: FrameRoles, coords: np.ndarray) -> FrameProfile:
    """Fan-angle diagnostics at the root of a frame drawing.

    Composite angles are sums of consecutive rotation gaps at w (additive by
    construction), not chord angles.  The drawing must be valid; gaps are
    taken in the canonical rotation order.
    """
    if roles is None:
        raise StructureError("frame_profile needs frame roles")
    d = len(roles.u)
    gaps, _ = _root_gaps(roles, coords)
    # gap index: 0..d-2 between u_d..u_1, d-1 between u_1 and v_1,
    # d-1+i between v_i and v_{i+1} (i = 1..d-1 at positions d..2d-2)
    def vgap(i: int) -> float:  # angle(v_i w v_{i+1})
        return gaps[d - 1 + i]

    def ugap(k: int) -> float:  # angle(u_{k+1} w u_k)
        return gaps[d - 1 - k]

    alpha1: dict[int, float] = {}
    alpha2: dict[int, float] = {}
    alpha3: dict[int, float] = {}
    r: dict[int, float] = {}
    for k in range(2, d + 1):
        alpha1[k] = vgap(k - 1)
        alpha3[k] = sum(vgap(i) for i in range(1, k - 1))
        # u_k around through u_{k-1}..u_1 and v_1..v_{k-1}
        alpha2[k] = sum(ugap(j) for j in range(1, k)) + gaps[d - 1] + sum(
            vgap(i) for i in range(1, k - 1)
        )
        r[k] = alpha3[k] / alpha1[k] if alpha1[k] != 0.0 else math.inf
    apex_v = sum(vgap(i) for i in range(1, d))
    apex_total = sum(gaps)
    return FrameProfile(alpha1, alpha2, alpha3, r, apex_v, apex_total)


@dataclass
class ClaimQuantities:
    j: int
    alpha1: float
    alpha2: float
    averaging_bound_holds: bool


def claim_quantities(roles: FrameRoles, coords: np.ndarray) -> ClaimQuantities:
    """Index j minimizing angle(v_{k-1} w v_k) over k = ceil(d/2)..d, its fan
    angles, and the pigeonhole bound alpha1 <= 2/(d+2) * angle(u_d w v_d)."""
    d = len(roles.u)
    if d < 2:
        raise StructureError("claim_quantities needs d >= 2")
    prof = frame_profile(roles, coords)
    lo = max(2, (d + 1) // 2)  # alpha1 is defined for rings k >= 2
    j = min(range(lo, d + 1), key=lambda k: (prof.alpha1[k], k))
    a1 = prof.alpha1[j]
    a2 = prof.alpha2[j]
    holds = a1 <= 2.0 / (d + 2) * prof.apex_total + TOL
    return ClaimQuantities(j, a1, a2, holds)


def telescoping_product(prof: FrameProfile) -> tuple[float, float]:
    """(product over k=3..d of r_k/(1+r_k), alpha1[2] / apex_v).

    The two sides agree on every valid frame drawing; the product starts at
    k = 3 because alpha3[2] = 0 makes the k = 2 factor vanish identically.
    """
    prod = 1.0
    for k in sorted(prof.r):
        if k < 3:
            continue
        prod *= prof.r[k] / (1.0 + prof.r[k])
    return prod, prof.alpha1[2] / prof.apex_v if prof.apex_v != 0.0 else math.inf


# ---------------------------------------------------------------------------
# Drawing text format
# ---------------------------------------------------------------------------

def write_drawing(coords: np.ndarray) -> str:
    lines = []
    for i, (x, y) in enumerate(np.asarray(coords, dtype=float)):
        lines.append(f"p {i} {float(x)!r} {float(y)!r}")
    return "\n".join(lines) + "\n"


def read_drawing(text: str) -> np.ndarray:
    pts: dict[int, tuple[float, float]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] != "p":
            raise StructureError(f"line {lineno}: unknown record {parts[0]!r}")
        pts[int(parts[1])] = (float(parts[2]), float(parts[3]))
    n = max(pts) + 1 if pts else 0
    if sorted(pts) != list(range(n)):
        raise StructureError("drawing lines do not cover a dense vertex range")
    return np.array([pts[i] for i in range(n)], dtype=float)
