"""Hypergraph data model: edges, pairwise intersections and edge triples."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DuplicateEdge, LoopEdge, NodeOutOfRange


class Hypergraph:
    """Immutable hypergraph on nodes ``0..node_count-1``.

    Edges are canonicalized to sorted tuples. All nonempty pairwise
    intersections ``e & f`` (``e != f``) are indexed at construction; each
    distinct intersection set gets an id, so the auxiliary graph of the
    separation routine can address them directly.
    """

    def __init__(self, node_count: int, edge_sets: Iterable[Iterable[int]]):
        self.node_count = int(node_count)
        edges = []
        seen = {}
        for idx, raw in enumerate(edge_sets):
            nodes = tuple(sorted(set(int(v) for v in raw)))
            if len(nodes) < 2:
                raise LoopEdge(f"edge {idx} has {len(nodes)} node(s); need at least 2")
            if nodes[0] < 0 or nodes[-1] >= self.node_count:
                raise NodeOutOfRange(f"edge {idx} = {nodes} has nodes outside [0, {self.node_count})")
            if nodes in seen:
                raise DuplicateEdge(f"edge {idx} = {nodes} duplicates edge {seen[nodes]}")
            seen[nodes] = idx
            edges.append(nodes)
        self.edges: tuple[tuple[int, ...], ...] = tuple(edges)
        self.edge_sets: tuple[frozenset, ...] = tuple(frozenset(e) for e in edges)
        self._edge_index = seen

        incidence = [[] for _ in range(self.node_count)]
        for ei, e in enumerate(self.edges):
            for v in e:
                incidence[v].append(ei)
        self.node_to_edges: tuple[tuple[int, ...], ...] = tuple(tuple(a) for a in incidence)

        # Intersection index: distinct sets e & f, plus per-edge neighbor maps.
        self.intersections: list[frozenset] = []
        self.intersection_id: dict[frozenset, int] = {}
        neighbor_maps = []
        for fi, f in enumerate(self.edge_sets):
            nbrs = sorted({ei for v in self.edges[fi] for ei in self.node_to_edges[v] if ei != fi})
            nmap = {}
            for ei in nbrs:
                key = f & self.edge_sets[ei]
                iid = self.intersection_id.get(key)
                if iid is None:
                    iid = len(self.intersections)
                    self.intersection_id[key] = iid
                    self.intersections.append(key)
                nmap[ei] = iid
            neighbor_maps.append(nmap)
        self._neighbor_maps: tuple[dict[int, int], ...] = tuple(neighbor_maps)

    # --- basic accessors -------------------------------------------------
    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def variable_count(self) -> int:
        return self.node_count + len(self.edges)

    def edge_id(self, nodes: Iterable[int]) -> int:
        return self._edge_index[tuple(sorted(set(nodes)))]

    def neighbors(self, e: int) -> tuple[int, ...]:
        """Edges sharing at least one node with edge ``e`` (sorted)."""
        return tuple(self._neighbor_maps[e])

    def intersection(self, e: int, f: int) -> frozenset:
        return self.edge_sets[e] & self.edge_sets[f]

    def intersection_of(self, e: int, f: int) -> int | None:
        """Id of the intersection set of two adjacent edges, or None if disjoint."""
        return self._neighbor_maps[e].get(f)

    @property
    def intersection_index(self) -> dict[frozenset, frozenset]:
        return {key: key for key in self.intersections}

    def __repr__(self):
        return f"Hypergraph(node_count={self.node_count}, edges={len(self.edges)})"

    def __eq__(self, other):
        return (isinstance(other, Hypergraph) and self.node_count == other.node_count
                and self.edges == other.edges)

    def __hash__(self):
        return hash((self.node_count, self.edges))


def build_hypergraph(node_count: int, edge_sets: Iterable[Iterable[int]]) -> Hypergraph:
    return Hypergraph(node_count, edge_sets)


@dataclass
class TripleSet:
    """Ordered edge triples ``(e, f, g)`` with ``e&f``, ``f&g`` nonempty and ``e&f&g`` empty.

    Stored grouped by the middle edge ``f``: for each ``f`` the neighbors
    are bucketed by their intersection with ``f`` and the disjoint pairs of
    buckets are listed. ``e``, ``f``, ``g`` arrays are materialized lazily.
    """

    graph: Hypergraph
    groups: list[dict[int, np.ndarray]]
    disjoint_pairs: list[list[tuple[int, int]]]
    _arrays: tuple[np.ndarray, np.ndarray, np.ndarray] | None = field(default=None, repr=False)

    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        if self._arrays is None:
            es, fs, gs = [], [], []
            for f, pairs in enumerate(self.disjoint_pairs):
                grp = self.groups[f]
                for x, y in pairs:
                    a, b = grp[x], grp[y]
                    es.append(np.repeat(a, len(b)))
                    gs.append(np.tile(b, len(a)))
                    fs.append(np.full(len(a) * len(b), f, dtype=np.int64))
            if es:
                self._arrays = (np.concatenate(es), np.concatenate(fs), np.concatenate(gs))
            else:
                empty = np.zeros(0, dtype=np.int64)
                self._arrays = (empty, empty.copy(), empty.copy())
        return self._arrays

    @property
    def triples(self) -> list[tuple[int, int, int]]:
        e, f, g = self.arrays()
        return list(zip(e.tolist(), f.tolist(), g.tolist()))

    def __len__(self):
        total = 0
        for f, pairs in enumerate(self.disjoint_pairs):
            grp = self.groups[f]
            total += sum(len(grp[x]) * len(grp[y]) for x, y in pairs)
        return total

    def __iter__(self):
        return iter(self.triples)

    def __contains__(self, item):
        e, f, g = item
        x = self.graph.intersection_of(f, e)
        y = self.graph.intersection_of(f, g)
        if x is None or y is None:
            return False
        return (x, y) in set(self.disjoint_pairs[f])


def enumerate_triples(G: Hypergraph) -> TripleSet:
    groups: list[dict[int, np.ndarray]] = []
    pairs: list[list[tuple[int, int]]] = []
    for f in range(G.edge_count):
        buckets: dict[int, list[int]] = {}
        for e, iid in G._neighbor_maps[f].items():
            buckets.setdefault(iid, []).append(e)
        keys = sorted(buckets)
        groups.append({k: np.array(buckets[k], dtype=np.int64) for k in keys})
        inter = G.intersections
        pairs.append([(x, y) for x in keys for y in keys if x != y and not (inter[x] & inter[y])])
    return TripleSet(G, groups, pairs)


def is_cycle_hypergraph(G: Hypergraph) -> tuple[bool, list[int] | None]:
    """Check the cyclic intersection pattern; returns ``(ok, ordering)``."""
    m = G.edge_count
    if m < 3:
        return False, None
    if any(len(G.neighbors(e)) != 2 for e in range(m)):
        return False, None
    order = [0]
    prev, cur = None, 0
    while True:
        a, b = G.neighbors(cur)
        nxt = a if a != prev else b
        if nxt == 0:
            break
        if nxt in order:
            return False, None
        order.append(nxt)
        prev, cur = cur, nxt
    if len(order) != m:
        return False, None
    if m == 3 and (G.edge_sets[0] & G.edge_sets[1] & G.edge_sets[2]):
        return False, None
    return True, order


def is_beta_cycle(G: Hypergraph, sequence: Sequence[int]) -> bool:
    """``sequence`` is ``[v1, e1, v2, e2, ..., vk, ek]`` (a trailing ``v1`` is allowed)."""
    seq = list(sequence)
    if len(seq) % 2 == 1:
        if seq[-1] != seq[0]:
            return False
        seq = seq[:-1]
    nodes, edges = seq[0::2], seq[1::2]
    k = len(edges)
    if k < 3:
        return False
    if len(set(nodes)) != k or len(set(edges)) != k:
        return False
    for i in range(k):
        v = nodes[i]
        for j in range(k):
            inside = v in G.edge_sets[edges[j]]
            expected = j == i or j == (i - 1) % k
            if inside != expected:
                return False
    return True
