"""GF(2) algebra on edge sets of a fixed host graph.

An edge set is encoded as an integer bitmask over dense edge ids; vector
addition is symmetric difference (XOR).  The even-degree vectors form the
host's cycle space; a *cycle* is a nonzero connected vector in which every
touched vertex has degree exactly 2.

`CycleGen` holds an ordered generating collection together with a fully
reduced GF(2) echelon (with combination bookkeeping), so membership and
decomposition queries are deterministic and cheap after a one-time build.

The module ends with `crossing_cycle_witness`, a constructive procedure
that, given a minimal vertex cutset split into two halves, produces a
generator crossing both halves with an odd number of edges into the
observer's side — the engine behind the boundary-connectivity checks in
the verification harness.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import InputError, NotInSpanError
from .graphs import (Graph, component_of, count_components, is_minimal_cutset,
                     shortest_path)


def _require_same_host(a: "EdgeVector", b: "EdgeVector") -> None:
    if a.host is not b.host and a.host.fingerprint() != b.host.fingerprint():
        raise InputError("edge vectors live in different host graphs")


class EdgeVector:
    """A set of edges of ``host``, treated as a GF(2) vector over edge ids."""

    __slots__ = ("host", "bits")

    def __init__(self, host: Graph, bits: int = 0):
        if bits < 0 or bits >> host.edge_count:
            raise InputError("bits outside the host graph's edge-id range")
        self.host = host
        self.bits = bits

    @classmethod
    def from_edges(cls, host: Graph, pairs: Iterable[Sequence[int]]) -> "EdgeVector":
        bits = 0
        for u, v in pairs:
            bits |= 1 << host.edge_id(u, v)
        return cls(host, bits)

    @classmethod
    def from_vertex_path(cls, host: Graph, path: Sequence[int]) -> "EdgeVector":
        """Edge vector of a walk given by its vertex sequence; edges traversed
        an even number of times cancel."""
        bits = 0
        for u, v in zip(path, path[1:]):
            bits ^= 1 << host.edge_id(u, v)
        return cls(host, bits)

    def __add__(self, other: "EdgeVector") -> "EdgeVector":
        _require_same_host(self, other)
        return EdgeVector(self.host, self.bits ^ other.bits)

    __xor__ = __add__

    def __eq__(self, other) -> bool:
        return (isinstance(other, EdgeVector) and self.bits == other.bits
                and self.host.fingerprint() == other.host.fingerprint())

    def __hash__(self) -> int:
        return hash((self.host.fingerprint(), self.bits))

    def __bool__(self) -> bool:
        return self.bits != 0

    def __len__(self) -> int:
        return self.bits.bit_count()

    def edge_ids(self) -> List[int]:
        out = []
        b = self.bits
        while b:
            low = b & -b
            out.append(low.bit_length() - 1)
            b ^= low
        return out

    def edges(self) -> List[Tuple[int, int]]:
        return [self.host.endpoints(i) for i in self.edge_ids()]

    def vertices(self) -> frozenset:
        out = set()
        for u, v in self.edges():
            out.add(u)
            out.add(v)
        return frozenset(out)

    def degrees(self) -> dict:
        deg = {}
        for u, v in self.edges():
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
        return deg

    def is_even(self) -> bool:
        """Whether every vertex has even degree (cycle-space membership)."""
        return all(d % 2 == 0 for d in self.degrees().values())

    def is_cycle(self) -> bool:
        """Nonzero, 2-regular on its touched vertices, and connected."""
        if not self.bits:
            return False
        deg = self.degrees()
        if any(d != 2 for d in deg.values()):
            return False
        adj = {v: [] for v in deg}
        for u, v in self.edges():
            adj[u].append(v)
            adj[v].append(u)
        start = next(iter(deg))
        seen = {start}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == len(deg)

    def touches(self, s: frozenset) -> bool:
        """Whether any edge of the vector has an endpoint in ``s``."""
        return any(u in s or v in s for u, v in self.edges())

    def to_json(self) -> list:
        return [list(e) for e in self.edges()]

    def __repr__(self) -> str:
        return f"EdgeVector({len(self)} edges of {self.host!r})"


def cycle_space_rank(g: Graph) -> int:
    """Dimension of the cycle space: |E| − |V| + number of components."""
    return g.edge_count - g.vertex_count + count_components(g)


class CycleGen:
    """Ordered collection of cycles with a cached reduced GF(2) echelon.

    The echelon rows carry combination bookkeeping: each row knows which
    input cycles sum to it, so decomposition queries return a deterministic
    combination.  Generators that are GF(2)-dependent on earlier ones never
    receive a pivot and therefore never appear in decompositions.
    """

    __slots__ = ("host", "cycles", "_rows")

    def __init__(self, host: Graph, cycles: Sequence[EdgeVector]):
        self.host = host
        self.cycles = tuple(cycles)
        for i, c in enumerate(self.cycles):
            if c.host is not host and c.host.fingerprint() != host.fingerprint():
                raise InputError(f"cycle {i} lives in a different host graph")
            if not c.is_cycle():
                raise InputError(f"generator {i} is not a cycle")
        # Fully reduced rows (vector, combination-over-generators, pivot bit):
        # no row's pivot occurs in any other row.
        rows: List[Tuple[int, int, int]] = []
        for i, cyc in enumerate(self.cycles):
            v = cyc.bits
            combo = 1 << i
            for rv, rc, rp in rows:
                if (v >> rp) & 1:
                    v ^= rv
                    combo ^= rc
            if v:
                p = (v & -v).bit_length() - 1
                for j, (rv, rc, rp) in enumerate(rows):
                    if (rv >> p) & 1:
                        rows[j] = (rv ^ v, rc ^ combo, rp)
                rows.append((v, combo, p))
        self._rows = tuple(rows)

    def __len__(self) -> int:
        return len(self.cycles)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def solve(self, bits: int) -> Optional[int]:
        """Combination (as a bitmask over generator indices) summing to
        ``bits``, or None when it lies outside the span."""
        t = bits
        combo = 0
        for rv, rc, rp in self._rows:
            if (t >> rp) & 1:
                t ^= rv
                combo ^= rc
        return None if t else combo

    def fingerprint(self) -> int:
        return hash((self.host.fingerprint(), tuple(c.bits for c in self.cycles)))

    def __repr__(self) -> str:
        return f"CycleGen({len(self.cycles)} cycles, rank {self.rank})"


def fundamental_basis(g: Graph) -> CycleGen:
    """Fundamental cycles of a BFS spanning tree rooted at vertex 0.

    Each non-tree edge closes exactly one cycle with the tree: the two
    root-to-endpoint tree paths XOR down to the tree path between the
    endpoints.  Requires a connected host.
    """
    if g.vertex_count == 0:
        raise InputError("empty graph has no spanning tree")
    root_path = [0] * g.vertex_count  # edge bits of the tree path to the root
    seen = {0}
    queue = deque([0])
    tree_edges = set()
    while queue:
        v = queue.popleft()
        for w in g.adjacency[v]:
            if w not in seen:
                seen.add(w)
                eid = g.edge_id(v, w)
                tree_edges.add(eid)
                root_path[w] = root_path[v] ^ (1 << eid)
                queue.append(w)
    if len(seen) != g.vertex_count:
        raise InputError("graph must be connected for a fundamental basis")
    cycles = []
    for eid, (u, v) in enumerate(g.edges):
        if eid not in tree_edges:
            cycles.append(EdgeVector(g, root_path[u] ^ root_path[v] ^ (1 << eid)))
    return CycleGen(g, cycles)


def is_generating(gen: CycleGen, g: Graph) -> bool:
    """Whether ``gen`` spans the full cycle space of ``g``."""
    if gen.host is not g and gen.host.fingerprint() != g.fingerprint():
        raise InputError("generating set lives in a different graph")
    return gen.rank == cycle_space_rank(g)


def is_chordal_cycle(o: EdgeVector, g_plus: Graph) -> bool:
    """Whether every pair of vertices touched by the cycle ``o`` is adjacent
    in ``g_plus``."""
    if not o.is_cycle():
        raise InputError("chordality is defined for cycles only")
    if o.host.vertex_count != g_plus.vertex_count:
        raise InputError("cycle host and adjacency graph differ in vertex count")
    verts = sorted(o.vertices())
    return all(g_plus.has_edge(u, v) for u, v in combinations(verts, 2))


def decompose(target: EdgeVector, gen: CycleGen) -> List[int]:
    """Indices of generators whose GF(2) sum is ``target``.

    Deterministic: the unique combination selected by the cached echelon
    (dependent generators always get coefficient 0).  The zero vector
    decomposes as the empty list.
    """
    if gen.host is not target.host and gen.host.fingerprint() != target.host.fingerprint():
        raise InputError("target lives outside the generating set's host graph")
    if not target.is_even():
        raise InputError("target has odd-degree vertices, not a cycle-space element")
    combo = gen.solve(target.bits)
    if combo is None:
        raise NotInSpanError("target is not in the span of the generating set")
    idxs = []
    acc = 0
    b = combo
    while b:
        low = b & -b
        i = low.bit_length() - 1
        idxs.append(i)
        acc ^= gen.cycles[i].bits
        b ^= low
    if acc != target.bits:
        raise RuntimeError("echelon bookkeeping produced an invalid combination")
    return idxs


def edges_between(g: Graph, a: frozenset, b: frozenset) -> int:
    """Bitmask of the edges of ``g`` with one endpoint in ``a`` and the other
    in ``b``."""
    bits = 0
    for eid, (u, v) in enumerate(g.edges):
        if (u in a and v in b) or (v in a and u in b):
            bits |= 1 << eid
    return bits


def crossing_cycle_witness(g: Graph, gen: CycleGen, s1: frozenset,
                           s2: frozenset, x: int, y: int) -> EdgeVector:
    """Generator crossing both halves of a split minimal cutset.

    Given a minimal cutset ``s1 ∪ s2`` separating ``x`` from ``y`` and a
    generating set for the cycle space of ``g``, returns a generator O with
    O touching ``s1``, O touching ``s2``, and an odd number of O's edges
    joining ``s2`` to the component of ``x`` in ``g`` minus the cutset.

    Construction: take a shortest x–y path avoiding ``s2`` and one avoiding
    ``s1`` (both exist by minimality), decompose their sum over ``gen``, and
    scan the summands touching ``s1`` for one with an odd crossing count.
    The scan provably succeeds; if it ever does not, that is a bug worth a
    loud crash, so this raises RuntimeError rather than returning a default.
    """
    if not s1 or not s2:
        raise InputError("both cutset halves must be nonempty")
    if s1 & s2:
        raise InputError("cutset halves must be disjoint")
    s = s1 | s2
    if x == y:
        raise InputError("x and y must differ")
    if x in s or y in s:
        raise InputError("x and y must avoid the cutset")
    if not is_generating(gen, g):
        raise InputError("the generating set does not span the cycle space")
    if not is_minimal_cutset(g, s, x, frozenset({y})):
        raise InputError("s1 ∪ s2 is not a minimal cutset between x and y")

    p1 = shortest_path(g, x, y, forbidden=s2)
    p2 = shortest_path(g, x, y, forbidden=s1)
    if p1 is None or p2 is None:
        raise RuntimeError("minimality guaranteed a path around either half; none found")
    target = (EdgeVector.from_vertex_path(g, p1)
              + EdgeVector.from_vertex_path(g, p2))
    summands = decompose(target, gen)

    side_x = component_of(g, x, s)
    crossing_bits = edges_between(g, s2, side_x)
    for i in summands:
        o = gen.cycles[i]
        if not o.touches(s1):
            continue
        if (o.bits & crossing_bits).bit_count() % 2 == 1:
            if not o.touches(s2):
                raise RuntimeError("witness crosses into s2 yet touches no s2 vertex")
            return o
    raise RuntimeError(
        "no summand touching s1 has an odd crossing count; this contradicts "
        "the cutset-crossing principle — inputs or algebra are inconsistent")
