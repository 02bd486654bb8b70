"""Finite undirected simple graphs with dense integer ids.

Vertices are ``0..vertex_count-1``; an edge is an unordered pair of distinct
vertices and carries a dense edge id, assigned in lexicographic order of the
sorted endpoint pairs.  Optional per-vertex labels attach a coordinate tuple
(used by the lattice builders).  Graphs are immutable once constructed, so
they are safe to share between concurrent workers; every operation in this
module is a pure function.

Vertex sets are plain ``frozenset`` objects over vertex ids.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import InputError

VertexSet = frozenset  # frozenset[int]
Coord = tuple  # tuple[int, ...]


class Graph:
    """Immutable simple undirected graph.

    Attributes:
        vertex_count: number of vertices.
        adjacency: per-vertex sorted tuple of neighbor ids.
        edges: tuple of ``(u, v)`` pairs with ``u < v``, sorted; the index of
            a pair in this tuple is its edge id.
        labels: optional tuple of coordinate tuples, one per vertex, pairwise
            distinct.
    """

    __slots__ = ("vertex_count", "adjacency", "edges", "labels",
                 "_edge_ids", "_label_ids", "_fp")

    def __init__(self, vertex_count: int,
                 edges: Iterable[Sequence[int]],
                 labels: Optional[Sequence[Coord]] = None):
        if vertex_count < 0:
            raise InputError(f"vertex_count must be nonnegative, got {vertex_count}")
        self.vertex_count = vertex_count

        seen = set()
        normalized = []
        for pair in edges:
            u, v = pair
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise InputError(f"edge ({u}, {v}) has an endpoint outside 0..{vertex_count - 1}")
            if u == v:
                raise InputError(f"loop at vertex {u} is not allowed")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise InputError(f"duplicate edge {key}")
            seen.add(key)
            normalized.append(key)
        normalized.sort()
        self.edges = tuple(normalized)
        self._edge_ids = {e: i for i, e in enumerate(self.edges)}

        adj = [[] for _ in range(vertex_count)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        self.adjacency = tuple(tuple(sorted(nbrs)) for nbrs in adj)

        if labels is not None:
            labels = tuple(tuple(lab) for lab in labels)
            if len(labels) != vertex_count:
                raise InputError(f"{len(labels)} labels for {vertex_count} vertices")
            if len(set(labels)) != vertex_count:
                raise InputError("vertex labels must be pairwise distinct")
            self.labels = labels
            self._label_ids = {lab: i for i, lab in enumerate(labels)}
        else:
            self.labels = None
            self._label_ids = None

        self._fp = hash((self.vertex_count, self.edges, self.labels))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def require_vertex(self, v: int) -> None:
        if not (0 <= v < self.vertex_count):
            raise InputError(f"vertex id {v} outside 0..{self.vertex_count - 1}")

    def neighbors(self, v: int) -> tuple:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        key = (u, v) if u < v else (v, u)
        return key in self._edge_ids

    def edge_id(self, u: int, v: int) -> int:
        key = (u, v) if u < v else (v, u)
        try:
            return self._edge_ids[key]
        except KeyError:
            raise InputError(f"no edge {key} in graph") from None

    def endpoints(self, edge_id: int) -> tuple:
        if not (0 <= edge_id < len(self.edges)):
            raise InputError(f"edge id {edge_id} outside 0..{len(self.edges) - 1}")
        return self.edges[edge_id]

    def label_of(self, v: int) -> Coord:
        if self.labels is None:
            raise InputError("graph has no labels")
        return self.labels[v]

    def id_of_label(self, coord: Sequence[int]) -> int:
        if self._label_ids is None:
            raise InputError("graph has no labels")
        key = tuple(coord)
        try:
            return self._label_ids[key]
        except KeyError:
            raise InputError(f"no vertex labeled {key}") from None

    def fingerprint(self) -> int:
        """Stable in-process identity for caching derived results."""
        return self._fp

    def to_json(self) -> dict:
        out = {"vertices": self.vertex_count,
               "edges": [list(e) for e in self.edges]}
        if self.labels is not None:
            out["labels"] = [list(lab) for lab in self.labels]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Graph":
        try:
            vertices = data["vertices"]
            edges = data["edges"]
        except (TypeError, KeyError) as exc:
            raise InputError(f"graph JSON needs 'vertices' and 'edges': {exc}") from None
        return cls(vertices, edges, labels=data.get("labels"))

    def __repr__(self) -> str:
        return f"Graph(|V|={self.vertex_count}, |E|={len(self.edges)})"


@dataclass(frozen=True)
class GraphPair:
    """Two graphs on the same vertex set with ``g``'s edges contained in
    ``g_plus``'s."""

    g: Graph
    g_plus: Graph

    def __post_init__(self):
        if self.g.vertex_count != self.g_plus.vertex_count:
            raise InputError("pair graphs must share the vertex set")
        if self.g.labels != self.g_plus.labels:
            raise InputError("pair graphs must carry identical labels")
        missing = [e for e in self.g.edges if not self.g_plus.has_edge(*e)]
        if missing:
            raise InputError(f"{len(missing)} edges of g missing from g_plus, e.g. {missing[0]}")


def _check_vertex_set(g: Graph, s: frozenset) -> None:
    for v in s:
        if not (0 <= v < g.vertex_count):
            raise InputError(f"vertex id {v} outside 0..{g.vertex_count - 1}")


def component_of(g: Graph, start: int, forbidden: frozenset = frozenset()) -> frozenset:
    """Vertex set of the connected component of ``start`` in the subgraph
    induced on the complement of ``forbidden``."""
    g.require_vertex(start)
    _check_vertex_set(g, forbidden)
    if start in forbidden:
        raise InputError(f"start vertex {start} is forbidden")
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w in g.adjacency[v]:
            if w not in seen and w not in forbidden:
                seen.add(w)
                queue.append(w)
    return frozenset(seen)


def is_connected_in(g: Graph, s: frozenset) -> bool:
    """Whether the subgraph of ``g`` induced on ``s`` is connected.

    The empty set and singletons count as connected.
    """
    _check_vertex_set(g, s)
    if len(s) <= 1:
        return True
    start = next(iter(s))
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for w in g.adjacency[v]:
            if w in s and w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == len(s)


def set_components(g: Graph, s: frozenset) -> list:
    """Connected components of the subgraph induced on ``s``, each a
    frozenset, ordered by their smallest member."""
    _check_vertex_set(g, s)
    remaining = set(s)
    comps = []
    while remaining:
        start = min(remaining)
        seen = {start}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in g.adjacency[v]:
                if w in remaining and w not in seen:
                    seen.add(w)
                    queue.append(w)
        comps.append(frozenset(seen))
        remaining -= seen
    return comps


def count_components(g: Graph) -> int:
    """Number of connected components of the whole graph."""
    return len(set_components(g, frozenset(range(g.vertex_count))))


def is_cutset(g: Graph, s: frozenset, x: int, target: frozenset) -> bool:
    """Whether every path from ``x`` to a vertex of ``target`` meets ``s``."""
    g.require_vertex(x)
    _check_vertex_set(g, s)
    _check_vertex_set(g, target)
    if x in s:
        raise InputError("x must not lie in the cutset")
    if x in target:
        raise InputError("x must not lie in the target set")
    if target & s:
        raise InputError("target and cutset must be disjoint")
    return not (component_of(g, x, s) & target)


def is_minimal_cutset(g: Graph, s: frozenset, x: int, target: frozenset) -> bool:
    """Whether ``s`` separates ``x`` from ``target`` but no proper subset does."""
    if not is_cutset(g, s, x, target):
        return False
    for v in s:
        if is_cutset(g, s - {v}, x, target):
            return False
    return True


def shortest_path(g: Graph, x: int, y: int,
                  forbidden: frozenset = frozenset()):
    """Shortest ``x``-``y`` path avoiding ``forbidden``, as a vertex list, or
    None when no such path exists.  Deterministic: BFS scans neighbors in id
    order, so ties resolve toward smaller ids."""
    g.require_vertex(x)
    g.require_vertex(y)
    _check_vertex_set(g, forbidden)
    if x in forbidden or y in forbidden:
        return None
    parent = {x: None}
    queue = deque([x])
    while queue:
        v = queue.popleft()
        if v == y:
            path = []
            while v is not None:
                path.append(v)
                v = parent[v]
            return path[::-1]
        for w in g.adjacency[v]:
            if w not in parent and w not in forbidden:
                parent[w] = v
                queue.append(w)
    return None


def induced_subgraph(g: Graph, vertices: frozenset):
    """Subgraph induced on ``vertices``.

    Returns ``(subgraph, old_ids)`` where ``old_ids[i]`` is the original id of
    the subgraph's vertex ``i``.  Labels, when present, are carried over.
    """
    _check_vertex_set(g, vertices)
    old_ids = sorted(vertices)
    new_id = {v: i for i, v in enumerate(old_ids)}
    edges = [(new_id[u], new_id[v]) for u, v in g.edges
             if u in vertices and v in vertices]
    labels = [g.labels[v] for v in old_ids] if g.labels is not None else None
    return Graph(len(old_ids), edges, labels=labels), old_ids


def vertexset_to_json(g: Graph, s: frozenset) -> list:
    """Serialize a vertex set: sorted coordinate tuples for labeled graphs,
    sorted ids otherwise."""
    _check_vertex_set(g, s)
    if g.labels is not None:
        return sorted([list(g.labels[v]) for v in s])
    return sorted(s)


def vertexset_from_json(g: Graph, data: Iterable) -> frozenset:
    """Parse a vertex set given as ids or, for labeled graphs, coordinate
    tuples; the two forms may not be mixed."""
    ids = set()
    for item in data:
        if isinstance(item, int):
            g.require_vertex(item)
            ids.add(item)
        elif isinstance(item, (list, tuple)):
            ids.add(g.id_of_label(item))
        else:
            raise InputError(f"vertex set entries must be ids or coordinate tuples, got {item!r}")
    return frozenset(ids)
