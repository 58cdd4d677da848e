"""Simple undirected labeled graphs, rotation systems and 3-tree machinery.

Conventions used throughout the package:

* vertices are dense integer indices ``0 .. n-1``;
* edges are unordered pairs stored as ``(i, j)`` with ``i < j``;
* a rotation system lists, for every vertex, its neighbors in *clockwise*
  order.  With clockwise rotations the face walk
  ``next(u -> v) = (v, successor of u in rotation[v])`` traces every bounded
  face as a counterclockwise vertex cycle and the outer face as a clockwise
  cycle.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field


class StructureError(ValueError):
    """A graph or embedding violates a structural precondition."""


class NotPlanar3TreeError(StructureError):
    """The graph failed planar 3-tree verification."""


Edge = tuple[int, int]


def edge(i: int, j: int) -> Edge:
    if i == j:
        raise StructureError(f"self-loop at vertex {i}")
    return (i, j) if i < j else (j, i)


@dataclass
class LabeledGraph:
    """Simple undirected graph with optional role labels on vertices."""

    n: int
    edges: set[Edge] = field(default_factory=set)
    labels: dict[int, str] = field(default_factory=dict)

    def add_edge(self, i: int, j: int) -> None:
        e = edge(i, j)
        if e[1] >= self.n:
            raise StructureError(f"edge {e} exceeds vertex count {self.n}")
        self.edges.add(e)

    def has_edge(self, i: int, j: int) -> bool:
        return edge(i, j) in self.edges

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return adj

    def degree_sequence(self) -> list[int]:
        deg = [0] * self.n
        for i, j in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg

    def label_index(self) -> dict[str, int]:
        return {name: v for v, name in self.labels.items()}

    def validate(self) -> None:
        for i, j in self.edges:
            if not (0 <= i < j < self.n):
                raise StructureError(f"bad edge ({i}, {j}) for n={self.n}")
        for v in self.labels:
            if not 0 <= v < self.n:
                raise StructureError(f"label on unknown vertex {v}")
        names = list(self.labels.values())
        if len(names) != len(set(names)):
            raise StructureError("duplicate vertex labels")

    def copy(self) -> "LabeledGraph":
        return LabeledGraph(self.n, set(self.edges), dict(self.labels))


def max_degree(graph: LabeledGraph) -> int:
    if not graph.edges:
        return 0
    return max(graph.degree_sequence())


@dataclass
class Embedding:
    """Rotation system (clockwise neighbor order per vertex) + outer face.

    ``outer_face`` is the outer face's vertex cycle as produced by the face
    walk, i.e. in clockwise order.
    """

    rotation: list[list[int]]
    outer_face: tuple[int, ...]

    def copy(self) -> "Embedding":
        return Embedding([list(r) for r in self.rotation], self.outer_face)


def canonical_cycle(cycle: tuple[int, ...]) -> tuple[int, ...]:
    """Rotate a cyclic sequence so its smallest element comes first."""
    k = cycle.index(min(cycle))
    return cycle[k:] + cycle[:k]


def trace_faces(graph: LabeledGraph, rotation: list[list[int]]) -> list[tuple[int, ...]]:
    """Trace all faces of a rotation system.

    Every directed edge lies on exactly one returned face.  Raises
    StructureError when some vertex's rotation does not match its incident
    edges.
    """
    adj = graph.adjacency()
    if len(rotation) != graph.n:
        raise StructureError(f"rotation covers {len(rotation)} vertices, graph has {graph.n}")
    pos: list[dict[int, int]] = []
    for v in range(graph.n):
        rot = rotation[v]
        if sorted(rot) != sorted(adj[v]):
            raise StructureError(f"rotation at vertex {v} does not match its incident edges")
        pos.append({u: k for k, u in enumerate(rot)})

    faces: list[tuple[int, ...]] = []
    seen: set[tuple[int, int]] = set()
    for start_v in range(graph.n):
        for start_u in rotation[start_v]:
            if (start_v, start_u) in seen:
                continue
            cycle: list[int] = []
            u, v = start_v, start_u
            while (u, v) not in seen:
                seen.add((u, v))
                cycle.append(u)
                rot = rotation[v]
                u, v = v, rot[(pos[v][u] + 1) % len(rot)]
            faces.append(canonical_cycle(tuple(cycle)))
    return faces


def face_cycle_from(rotation: list[list[int]], u: int, v: int) -> tuple[int, ...]:
    """Trace the single face containing the directed edge (u, v)."""
    cycle = [u]
    a, b = u, v
    while True:
        rot = rotation[b]
        k = rot.index(a)
        a, b = b, rot[(k + 1) % len(rot)]
        if (a, b) == (u, v):
            break
        cycle.append(a)
    return tuple(cycle)


def euler_check(graph: LabeledGraph, faces: list[tuple[int, ...]]) -> bool:
    return graph.n - len(graph.edges) + len(faces) == 2


def insert_vertex_in_face(
    graph: LabeledGraph, rotation: list[list[int]], face: tuple[int, int, int]
) -> int:
    """3-tree step: add a vertex inside a triangular face, joined to its corners.

    ``face`` must be the face's traced cycle (a, b, c).  Returns the new
    vertex index.  The three new faces are traced (a, b, x), (b, c, x),
    (c, a, x).
    """
    a, b, c = face
    x = graph.n
    graph.n += 1
    for t in face:
        graph.edges.add(edge(t, x))
    # The corner of face (a,b,c) at a lies between the edges to c and to b.
    rotation[a].insert(rotation[a].index(c) + 1, x)
    rotation[b].insert(rotation[b].index(a) + 1, x)
    rotation[c].insert(rotation[c].index(b) + 1, x)
    rotation.append([a, c, b])
    return x


@dataclass
class BuildSequence:
    """Certificate that a graph is a planar 3-tree.

    ``base`` is the initial triangle; ``steps`` lists, in insertion order,
    each added vertex with the face triangle it was joined to.
    """

    base: tuple[int, int, int]
    steps: list[tuple[int, tuple[int, int, int]]]

    def replay_edges(self) -> set[Edge]:
        a, b, c = self.base
        edges = {edge(a, b), edge(b, c), edge(a, c)}
        for x, tri in self.steps:
            for t in tri:
                edges.add(edge(t, x))
        return edges


def verify_planar_3tree(
    graph: LabeledGraph, keep: tuple[int, int, int] | None = None
) -> BuildSequence:
    """Verify that ``graph`` is a planar 3-tree; return its build sequence.

    Runs greedy simplicial elimination (remove a degree-3 vertex whose
    neighborhood is a triangle) and then replays the reversed sequence as
    combinatorial face insertions, which certifies planarity.  When ``keep``
    is given, those three mutually adjacent vertices are never eliminated, so
    the returned sequence is rooted at that triangle.
    """
    n = graph.n
    if n < 3:
        raise NotPlanar3TreeError(f"need at least 3 vertices, got {n}")
    if len(graph.edges) != 3 * n - 6:
        raise NotPlanar3TreeError(
            f"not a 3-tree: E={len(graph.edges)} but a 3-tree on {n} vertices has {3 * n - 6}"
        )
    protected = set(keep) if keep is not None else set()
    if keep is not None:
        a, b, c = keep
        if not (graph.has_edge(a, b) and graph.has_edge(b, c) and graph.has_edge(a, c)):
            raise StructureError(f"keep triple {keep} is not a triangle")

    adj = graph.adjacency()
    alive = [True] * n
    remaining = n

    def simplicial3(v: int) -> bool:
        if len(adj[v]) != 3 or v in protected:
            return False
        a, b, c = sorted(adj[v])
        return b in adj[a] and c in adj[a] and c in adj[b]

    heap = [v for v in range(n) if simplicial3(v)]
    heapq.heapify(heap)
    removed: list[tuple[int, tuple[int, int, int]]] = []
    while remaining > 3 and heap:
        v = heapq.heappop(heap)
        if not alive[v] or not simplicial3(v):
            continue
        tri = tuple(sorted(adj[v]))
        removed.append((v, tri))
        alive[v] = False
        remaining -= 1
        for u in adj[v]:
            adj[u].discard(v)
            if simplicial3(u):
                heapq.heappush(heap, u)
        adj[v] = set()
    if remaining != 3:
        stuck = [v for v in range(n) if alive[v]]
        raise NotPlanar3TreeError(
            f"not a 3-tree: elimination stuck with {remaining} vertices remaining "
            f"(first few: {stuck[:8]})"
        )
    base_vs = tuple(v for v in range(n) if alive[v])
    a, b, c = base_vs
    if not (graph.has_edge(a, b) and graph.has_edge(b, c) and graph.has_edge(a, c)):
        raise NotPlanar3TreeError(f"not a 3-tree: final three vertices {base_vs} are not a triangle")
    if keep is not None and set(base_vs) != protected:
        raise NotPlanar3TreeError(f"elimination ended at {base_vs}, expected {keep}")

    steps = [(v, tri) for v, tri in reversed(removed)]
    seq = BuildSequence(base_vs, steps)
    _replay_planarity(graph, seq)
    return seq


def _replay_planarity(graph: LabeledGraph, seq: BuildSequence) -> None:
    """Replay a build sequence as embedding insertions; raise if some
    insertion triangle is not a face of the partial embedding."""
    a, b, c = seq.base
    rotation: dict[int, list[int]] = {a: [b, c], b: [c, a], c: [a, b]}
    # The bare triangle bounds two faces with the same vertex set.
    faces: dict[frozenset[int], list[tuple[int, int, int]]] = {
        frozenset(seq.base): [(a, b, c), (a, c, b)]
    }
    for x, tri in seq.steps:
        fs = frozenset(tri)
        avail = faces.get(fs)
        if not avail:
            raise NotPlanar3TreeError(
                f"not planar: insertion of vertex {x} targets triangle {tri}, "
                "which is not a face of the partial embedding"
            )
        p, q, r = avail.pop(0)
        if not avail:
            del faces[fs]
        rotation[p].insert(rotation[p].index(r) + 1, x)
        rotation[q].insert(rotation[q].index(p) + 1, x)
        rotation[r].insert(rotation[r].index(q) + 1, x)
        rotation[x] = [p, r, q]
        for f in ((p, q, x), (q, r, x), (r, p, x)):
            faces.setdefault(frozenset(f), []).append(f)


def replay_build(seq: BuildSequence, n: int) -> LabeledGraph:
    """Reconstruct the plain graph encoded by a build sequence."""
    g = LabeledGraph(n)
    for e in seq.replay_edges():
        g.edges.add(e)
    return g


# ---------------------------------------------------------------------------
# Text formats
# ---------------------------------------------------------------------------

def write_graph(graph: LabeledGraph) -> str:
    lines = [f"graph {graph.n}"]
    for i, j in sorted(graph.edges):
        lines.append(f"e {i} {j}")
    for v in sorted(graph.labels):
        lines.append(f"l {v} {graph.labels[v]}")
    return "\n".join(lines) + "\n"


def read_graph(text: str) -> LabeledGraph:
    graph: LabeledGraph | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "graph":
            graph = LabeledGraph(int(parts[1]))
        elif parts[0] == "e":
            if graph is None:
                raise StructureError(f"line {lineno}: edge before header")
            graph.add_edge(int(parts[1]), int(parts[2]))
        elif parts[0] == "l":
            if graph is None:
                raise StructureError(f"line {lineno}: label before header")
            graph.labels[int(parts[1])] = parts[2]
        else:
            raise StructureError(f"line {lineno}: unknown record {parts[0]!r}")
    if graph is None:
        raise StructureError("missing 'graph <V>' header")
    graph.validate()
    return graph


def write_embedding(emb: Embedding) -> str:
    lines = []
    for v, rot in enumerate(emb.rotation):
        lines.append("rot " + str(v) + " " + " ".join(str(u) for u in rot))
    lines.append("outer " + " ".join(str(v) for v in emb.outer_face))
    return "\n".join(lines) + "\n"


def read_embedding(text: str) -> Embedding:
    rot: dict[int, list[int]] = {}
    outer: tuple[int, ...] | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "rot":
            rot[int(parts[1])] = [int(x) for x in parts[2:]]
        elif parts[0] == "outer":
            outer = tuple(int(x) for x in parts[1:])
        else:
            raise StructureError(f"line {lineno}: unknown record {parts[0]!r}")
    if outer is None:
        raise StructureError("missing 'outer' line")
    n = max(rot) + 1 if rot else 0
    if sorted(rot) != list(range(n)):
        raise StructureError("rotation lines do not cover a dense vertex range")
    return Embedding([rot[v] for v in range(n)], outer)
