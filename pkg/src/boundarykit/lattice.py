"""Finite lattice boxes and their augmentations.

A box has vertex set {1,…,n}^d.  Three edge flavors:

* ``plain`` — nearest-neighbor edges (L1 distance 1);
* ``star``  — king-move edges (L∞ distance 1);
* ``plus``  — plain edges plus both diagonals of every axis-aligned unit
  2-face (a strict subgraph of star for d ≥ 2, n ≥ 2).

Vertex ids enumerate coordinates with the *first* coordinate varying
fastest, so id order coincides with reversed-tuple lexicographic order on
coordinates; labels carry the 1-based coordinate tuples.

The apex construction attaches one extra vertex to every surface vertex of
a box pair.  It stands in for "infinitely far away": for a subset that
keeps L∞-distance ≥ 2 from the surface, any walk leaving the box's
interior can wander arbitrarily and return anywhere on the surface, which
is exactly what routing through the apex models.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product
from typing import Dict, List, Sequence, Tuple

from .cyclespace import CycleGen, EdgeVector, is_chordal_cycle
from .errors import InputError
from .graphs import Graph, GraphPair

FLAVORS = ("plain", "star", "plus")

# Guard against accidentally huge boxes; verification targets are tiny.
MAX_BOX_VERTICES = 2_000_000


@dataclass(frozen=True)
class BoxSpec:
    """Shape and flavor of a lattice box: {1,…,side}^d."""

    d: int
    side: int
    flavor: str

    def __post_init__(self):
        if self.d < 1:
            raise InputError(f"dimension must be ≥ 1, got {self.d}")
        if self.side < 1:
            raise InputError(f"side must be ≥ 1, got {self.side}")
        if self.flavor not in FLAVORS:
            raise InputError(f"flavor must be one of {FLAVORS}, got {self.flavor!r}")
        if self.flavor == "plus" and self.d < 2:
            raise InputError("plus flavor needs d ≥ 2 (no 2-faces in one dimension)")
        if self.side ** self.d > MAX_BOX_VERTICES:
            raise InputError(f"box with {self.side}^{self.d} vertices exceeds the id-space guard")

    def __str__(self) -> str:
        return f"z{self.d}:{self.side}:{self.flavor}"


_SPEC_RE = re.compile(r"^z(\d+):(\d+):(plain|star|plus)$")


def parse_box_spec(text: str) -> BoxSpec:
    """Parse a box spec string of the form ``z{d}:{n}:{plain|star|plus}``."""
    m = _SPEC_RE.match(text.strip())
    if not m:
        raise InputError(f"bad box spec {text!r}; expected z{{d}}:{{n}}:{{plain|star|plus}}")
    return BoxSpec(int(m.group(1)), int(m.group(2)), m.group(3))


def _coord_of(v: int, n: int, d: int) -> Tuple[int, ...]:
    return tuple((v // n ** i) % n + 1 for i in range(d))


def _id_of(coord: Sequence[int], n: int) -> int:
    out = 0
    for i, c in enumerate(coord):
        out += (c - 1) * n ** i
    return out


@lru_cache(maxsize=None)
def build_box(spec: BoxSpec) -> Graph:
    """Build (and memoize) the box graph for a spec.

    Memoization means repeated requests share one Graph object, so edge
    vectors built against it stay host-compatible across call sites.
    """
    n, d = spec.side, spec.d
    total = n ** d
    labels = [_coord_of(v, n, d) for v in range(total)]
    edges: List[Tuple[int, int]] = []
    if spec.flavor == "plain":
        for v in range(total):
            coord = labels[v]
            for i in range(d):
                if coord[i] < n:
                    edges.append((v, v + n ** i))
    elif spec.flavor == "star":
        offsets = [off for off in product((-1, 0, 1), repeat=d) if any(off)]
        for v in range(total):
            coord = labels[v]
            for off in offsets:
                moved = tuple(c + o for c, o in zip(coord, off))
                if all(1 <= c <= n for c in moved):
                    w = _id_of(moved, n)
                    if w > v:
                        edges.append((v, w))
    else:  # plus
        for v in range(total):
            coord = labels[v]
            for i in range(d):
                if coord[i] < n:
                    edges.append((v, v + n ** i))
        for i, j in combinations(range(d), 2):
            for v in range(total):
                coord = labels[v]
                if coord[i] < n and coord[j] < n:
                    ei, ej = n ** i, n ** j
                    edges.append((v, v + ei + ej))
                    edges.append((min(v + ei, v + ej), max(v + ei, v + ej)))
    return Graph(total, edges, labels=labels)


def build_box_pair(base: BoxSpec, plus_flavor: str) -> GraphPair:
    """Pair a plain box with its ``plus_flavor`` augmentation (same d, n)."""
    g = build_box(BoxSpec(base.d, base.side, "plain"))
    g_plus = build_box(BoxSpec(base.d, base.side, plus_flavor))
    return GraphPair(g, g_plus)


def basic_four_cycles(spec: BoxSpec) -> List[EdgeVector]:
    """One 4-cycle per axis-aligned unit 2-face of the plain box.

    Ordered by axis pair, then by base-corner id.  These generate the plain
    box's full cycle space.
    """
    if spec.flavor != "plain":
        raise InputError("unit-face cycles are built over the plain box")
    if spec.d < 2:
        raise InputError("a one-dimensional box has a trivial cycle space")
    g = build_box(spec)
    n, d = spec.side, spec.d
    out = []
    for i, j in combinations(range(d), 2):
        ei, ej = n ** i, n ** j
        for v in range(g.vertex_count):
            coord = g.labels[v]
            if coord[i] < n and coord[j] < n:
                out.append(EdgeVector.from_edges(g, [
                    (v, v + ei), (v, v + ej),
                    (v + ei, v + ei + ej), (v + ej, v + ei + ej)]))
    return out


def four_cycle_gen(spec: BoxSpec) -> CycleGen:
    """The unit-face cycles wrapped as a generating collection."""
    plain = BoxSpec(spec.d, spec.side, "plain")
    return CycleGen(build_box(plain), basic_four_cycles(plain))


def cube_patch_cycle(pair: GraphPair, e: Sequence[int]) -> EdgeVector:
    """Shortest cycle through the non-base edge ``e`` whose other edges are
    base edges inside one unit cube.

    ``pair`` couples a plain box with its star box; ``e`` must be a star
    edge absent from the plain box.  The cycle closes ``e`` with a monotone
    nearest-neighbor path that fixes one differing coordinate per step, so
    every vertex stays inside each unit cube containing both endpoints.
    Ties between the (#differing-coords)! candidate paths break on the
    vertex-id sequence from the smaller endpoint, and the result is chordal
    in the star box by construction (asserted before returning).
    """
    u, v = e
    if u > v:
        u, v = v, u
    g, gs = pair.g, pair.g_plus
    if g.labels is None:
        raise InputError("cube patch cycles need coordinate labels")
    if g.has_edge(u, v):
        raise InputError("edge already belongs to the base graph")
    if not gs.has_edge(u, v):
        raise InputError("not an edge of the augmented graph")
    cu, cv = g.labels[u], g.labels[v]
    if any(abs(a - b) > 1 for a, b in zip(cu, cv)):
        raise InputError("endpoints do not share a unit cube")
    diff_axes = [i for i, (a, b) in enumerate(zip(cu, cv)) if a != b]
    best = None
    for perm in permutations(diff_axes):
        cur = list(cu)
        path = [u]
        for axis in perm:
            cur[axis] = cv[axis]
            path.append(g.id_of_label(cur))
        if best is None or path < best:
            best = path
    vec = EdgeVector.from_edges(gs, list(zip(best, best[1:])) + [(u, v)])
    if not vec.is_cycle() or not is_chordal_cycle(vec, gs):
        raise RuntimeError("cube patch construction produced a non-chordal cycle")
    for pu, pv in zip(best, best[1:]):
        if not g.has_edge(pu, pv):
            raise RuntimeError("cube patch construction left the base graph")
    return vec


def extra_edge_patches(pair: GraphPair) -> Dict[Tuple[int, int], EdgeVector]:
    """Cube patch cycles for every edge of the pair's augmentation that is
    missing from its base graph, keyed by sorted endpoint pair."""
    return {e: cube_patch_cycle(pair, e)
            for e in pair.g_plus.edges if not pair.g.has_edge(*e)}


@dataclass(frozen=True)
class ApexGraph:
    """A box pair augmented with one apex vertex attached to the surface."""

    pair: GraphPair
    apex: int
    shell: frozenset

    def to_base_ids(self, s: frozenset) -> frozenset:
        """Drop the apex from a vertex set (ids below the apex are shared
        with the unaugmented box)."""
        return frozenset(v for v in s if v != self.apex)


def box_shell(g: Graph) -> frozenset:
    """Surface vertices of a labeled box: those with some extreme coordinate."""
    if g.labels is None:
        raise InputError("apex construction needs coordinate labels")
    lo = min(min(lab) for lab in g.labels)
    hi = max(max(lab) for lab in g.labels)
    return frozenset(v for v, lab in enumerate(g.labels)
                     if lo in lab or hi in lab)


def attach_apex(g: Graph) -> Graph:
    """Augment one labeled box graph with an apex vertex adjacent to its
    whole surface.  The apex takes the next free id and the all-zeros label
    (disjoint from box coordinates, which are 1-based)."""
    shell = box_shell(g)
    apex = g.vertex_count
    labels = list(g.labels) + [(0,) * len(g.labels[0])]
    spokes = [(v, apex) for v in sorted(shell)]
    return Graph(g.vertex_count + 1, list(g.edges) + spokes, labels=labels)


def with_apex(pair: GraphPair) -> ApexGraph:
    """Attach a fresh apex vertex to every surface vertex of a labeled box
    pair, in both graphs; box vertices keep their ids."""
    shell = box_shell(pair.g)
    return ApexGraph(GraphPair(attach_apex(pair.g), attach_apex(pair.g_plus)),
                     pair.g.vertex_count, shell)


def margin_interior(g: Graph, margin: int) -> frozenset:
    """Vertices of a labeled box that keep L∞-distance ≥ ``margin`` from the
    box's complement: every coordinate in [margin, n+1−margin]."""
    if g.labels is None:
        raise InputError("margins are defined for labeled boxes")
    if margin <= 0:
        return frozenset(range(g.vertex_count))
    n = max(max(lab) for lab in g.labels)
    lo, hi = margin, n + 1 - margin
    return frozenset(v for v, lab in enumerate(g.labels)
                     if all(lo <= c <= hi for c in lab))
