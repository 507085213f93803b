"""Separation routines: standard and flower enumeration, and exact separation of
simple odd beta-cycle inequalities through twin shortest paths in a signed
auxiliary graph.

Auxiliary node ids: base ids ``0..n-1`` are nodes of ``G``, ``n..n+q-1`` the
distinct pairwise intersections, ``n+q..n+q+m-1`` the edges. The signed id of
``(base, +)`` is ``2*base`` and of ``(base, -)`` is ``2*base + 1``, so twins
differ in the lowest bit.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _paths
from .cuts import (MINUS, PLUS, Cut, LinearForm, SignedClosedWalk, flower_cut, length_function, s_inc, s_odd,
                   s_one, s_two, sum_forms, walk_problems)
from .errors import MalformedPath, PointNotInFlowerRelaxation
from .hypergraph import Hypergraph, TripleSet

log = logging.getLogger(__name__)

VIOLATION_TOL = 1e-6
FEASIBILITY_TOL = 1e-6

INC, ODD, TWO, ONE = 0, 1, 2, 3
FAMILY_NAMES = {INC: "(+,+,+-)", ODD: "(-,-,-)", TWO: "(+,-,+)", ONE: "(+,-,-)"}


def _csr(lists):
    ptr = np.zeros(len(lists) + 1, dtype=np.int64)
    ptr[1:] = np.cumsum([len(x) for x in lists])
    idx = np.fromiter((v for x in lists for v in x), dtype=np.int64, count=int(ptr[-1]))
    return ptr, idx


class _Structure:
    """Point-independent index arrays of a hypergraph, shared by all separators."""

    def __init__(self, G: Hypergraph):
        self.G = G
        n, m = G.node_count, G.edge_count
        self.n, self.m = n, m
        self.q = len(G.intersections)
        self.edge_ptr, self.edge_idx = _csr(G.edges)
        self.edge_size = np.diff(self.edge_ptr)
        self.int_ptr, self.int_idx = _csr([sorted(s) for s in G.intersections])
        self.int_min = np.array([min(s) for s in G.intersections], dtype=np.int64)
        # incidences (e, v)
        self.inc_e = np.repeat(np.arange(m), self.edge_size)
        self.inc_v = self.edge_idx.copy()
        # adjacencies sorted by (center f, bucket x, neighbor e)
        af, ax, ae = [], [], []
        for f in range(m):
            for e, x in sorted(G._neighbor_maps[f].items(), key=lambda t: (t[1], t[0])):
                af.append(f)
                ax.append(x)
                ae.append(e)
        self.adj_f = np.array(af, dtype=np.int64)
        self.adj_x = np.array(ax, dtype=np.int64)
        self.adj_e = np.array(ae, dtype=np.int64)
        # buckets = maximal runs of equal (f, x)
        if len(af):
            brk = np.flatnonzero((np.diff(self.adj_f) != 0) | (np.diff(self.adj_x) != 0)) + 1
            self.bucket_start = np.concatenate([[0], brk]).astype(np.int64)
        else:
            self.bucket_start = np.zeros(0, dtype=np.int64)
        self.bucket_end = np.append(self.bucket_start[1:], len(af)).astype(np.int64)
        self.bucket_f = self.adj_f[self.bucket_start]
        self.bucket_x = self.adj_x[self.bucket_start]
        # ordered pairs of buckets with disjoint intersections inside the same center
        pa, pb = [], []
        inter = G.intersections
        start = 0
        nb = len(self.bucket_start)
        while start < nb:
            stop = start
            while stop < nb and self.bucket_f[stop] == self.bucket_f[start]:
                stop += 1
            for i in range(start, stop):
                for j in range(start, stop):
                    if i != j and not (inter[self.bucket_x[i]] & inter[self.bucket_x[j]]):
                        pa.append(i)
                        pb.append(j)
            start = stop
        self.pair_a = np.array(pa, dtype=np.int64)
        self.pair_b = np.array(pb, dtype=np.int64)
        self._aux = None

    # -- point-dependent aggregates
    def aggregates(self, z):
        n = self.n
        zv, ze = z[:n], z[n:]
        ones = 1.0 - zv
        a = np.add.reduceat(ones[self.edge_idx], self.edge_ptr[:-1]) if self.m else np.zeros(0)
        b = np.add.reduceat(ones[self.int_idx], self.int_ptr[:-1]) if self.q else np.zeros(0)
        return zv, ze, a, b

    # -- auxiliary graph skeleton (built once, lazily)
    def aux(self):
        if self._aux is None:
            self._aux = _AuxSkeleton(self)
        return self._aux


class _AuxSkeleton:
    def __init__(self, S: _Structure):
        n, q, m = S.n, S.q, S.m
        self.n_base = n + q + m
        lens_a = S.bucket_end[S.pair_a] - S.bucket_start[S.pair_a]
        lens_b = S.bucket_end[S.pair_b] - S.bucket_start[S.pair_b]
        counts = lens_a * lens_b
        total = int(counts.sum())
        tp = np.repeat(np.arange(len(S.pair_a)), counts)
        off = np.arange(total) - np.repeat(np.cumsum(counts) - counts, counts)
        ia = off // lens_b[tp]
        ib = off % lens_b[tp]
        te = S.adj_e[S.bucket_start[S.pair_a][tp] + ia]
        tg = S.adj_e[S.bucket_start[S.pair_b][tp] + ib]
        tf = S.bucket_f[S.pair_a][tp]
        tx = S.bucket_x[S.pair_a][tp]
        ty = S.bucket_x[S.pair_b][tp]
        order = np.lexsort((tg, tf, te))
        self.te, self.tf, self.tg = te[order], tf[order], tg[order]
        self.tx, self.ty = tx[order], ty[order]
        # group keys per family (canonical for the symmetric ones)
        odd_key = np.minimum(self.tx, self.ty) * max(q, 1) + np.maximum(self.tx, self.ty)
        two_key = np.minimum(self.te, self.tg) * m + np.maximum(self.te, self.tg)
        one_key = self.te * max(q, 1) + self.ty
        self.odd_u, self.odd_inv = np.unique(odd_key, return_inverse=True)
        self.two_u, self.two_inv = np.unique(two_key, return_inverse=True)
        self.one_u, self.one_inv = np.unique(one_key, return_inverse=True)
        Iq = max(q, 1)
        base_I, base_E = n, n + q
        # group endpoints as base ids (a, b); INC groups keep signs, others flip
        inc_a = S.inc_v
        inc_b = base_E + S.inc_e
        odd_a = base_I + self.odd_u // Iq
        odd_b = base_I + self.odd_u % Iq
        two_a = base_E + self.two_u // m if m else np.zeros(0, dtype=np.int64)
        two_b = base_E + self.two_u % m if m else np.zeros(0, dtype=np.int64)
        one_a = base_E + self.one_u // Iq
        one_b = base_I + self.one_u % Iq
        self.family = np.concatenate([np.full(len(inc_a), INC), np.full(len(odd_a), ODD),
                                      np.full(len(two_a), TWO), np.full(len(one_a), ONE)]).astype(np.int64)
        self.ga = np.concatenate([inc_a, odd_a, two_a, one_a]).astype(np.int64)
        self.gb = np.concatenate([inc_b, odd_b, two_b, one_b]).astype(np.int64)
        self.offsets = np.cumsum([0, len(inc_a), len(odd_a), len(two_a)])
        G_total = len(self.ga)
        flip = (self.family != INC).astype(np.int64)
        # two undirected edges per group, each as two arcs
        src, dst, grp = [], [], []
        for p in (0, 1):
            u = 2 * self.ga + p
            w = 2 * self.gb + (p ^ flip)
            src += [u, w]
            dst += [w, u]
            grp += [np.arange(G_total), np.arange(G_total)]
        src, dst, grp = np.concatenate(src), np.concatenate(dst), np.concatenate(grp)
        order = np.lexsort((dst, grp, src))
        self.arc_src = src[order]
        self.arc_dst = dst[order]
        self.arc_group = grp[order]
        n_aux = 2 * self.n_base
        self.indptr = np.zeros(n_aux + 1, dtype=np.int64)
        np.add.at(self.indptr, self.arc_src + 1, 1)
        self.indptr = np.cumsum(self.indptr)

    @property
    def triple_count(self):
        return len(self.te)


@lru_cache(maxsize=16)
def structure(G: Hypergraph) -> _Structure:
    return _Structure(G)


# --- standard and flower separation ------------------------------------------------

def _as_point(G: Hypergraph, z) -> np.ndarray:
    z = np.asarray(z, dtype=float)
    if z.shape != (G.node_count + G.edge_count,):
        raise ValueError("point must have one entry per node and per edge")
    return z


def _standard_violations(S: _Structure, z):
    zv, ze, a, _ = S.aggregates(z)
    v1 = ze[S.inc_e] - zv[S.inc_v]          # form z_v - z_e >= 0
    v2 = 1.0 - ze - a                       # form z_e - 1 + sum(1 - z_v) >= 0
    return v1, v2


def separate_standard(G: Hypergraph, z, tol: float = VIOLATION_TOL, limit: int | None = None) -> list[Cut]:
    """Standard linearization cuts violated by more than ``tol``, most violated first."""
    z = _as_point(G, z)
    S = structure(G)
    v1, v2 = _standard_violations(S, z)
    cand = [(-float(v1[i]), 0, int(S.inc_e[i]), int(S.inc_v[i])) for i in np.flatnonzero(v1 > tol)]
    cand += [(-float(v2[e]), 1, int(e), -1) for e in np.flatnonzero(v2 > tol)]
    cand.sort()
    if limit is not None:
        cand = cand[:limit]
    cuts = []
    for _, kind, e, v in cand:
        if kind == 0:
            cuts.append(Cut(LinearForm({v: 1}, {e: -1}, 0), 0, "standard-1", (e, v)))
        else:
            nodes = G.edges[e]
            cuts.append(Cut(LinearForm({u: -1 for u in nodes}, {e: 1}, len(nodes) - 1), 0, "standard-2", (e,)))
    return cuts


def _flower1_violations(S: _Structure, z):
    zv, ze, a, b = S.aggregates(z)
    f, e, x = S.adj_f, S.adj_e, S.adj_x
    return -(ze[f] - ze[e] + a[f] - b[x])


def _flower2_candidates(S: _Structure, z, tol):
    """Yield ``(violation, f, e1, e2)`` for violated two-neighbor flowers (``x < y`` pairs)."""
    zv, ze, a, b = S.aggregates(z)
    if not len(S.pair_a):
        return []
    keep = S.bucket_x[S.pair_a] < S.bucket_x[S.pair_b]
    pa, pb = S.pair_a[keep], S.pair_b[keep]
    zadj = ze[S.adj_e]
    bmax = np.maximum.reduceat(zadj, S.bucket_start) if len(S.bucket_start) else np.zeros(0)
    f = S.bucket_f[pa]
    # violation(e1, e2) = 1 - z_f - a_f + b_x + b_y - 2 + z_e1 + z_e2
    base = -1.0 - ze[f] - a[f] + b[S.bucket_x[pa]] + b[S.bucket_x[pb]]
    hot = np.flatnonzero(base + bmax[pa] + bmax[pb] > tol)
    out = []
    for p in hot:
        ia = np.arange(S.bucket_start[pa[p]], S.bucket_end[pa[p]])
        ib = np.arange(S.bucket_start[pb[p]], S.bucket_end[pb[p]])
        viol = base[p] + zadj[ia][:, None] + zadj[ib][None, :]
        r, c = np.nonzero(viol > tol)
        ff = int(f[p])
        for i, j in zip(r.tolist(), c.tolist()):
            e1, e2 = int(S.adj_e[ia[i]]), int(S.adj_e[ib[j]])
            out.append((float(viol[i, j]), ff, min(e1, e2), max(e1, e2)))
    return out


def separate_flowers(G: Hypergraph, z, max_neighbors: int = 2, tol: float = VIOLATION_TOL,
                     limit: int | None = None) -> list[Cut]:
    """Exhaustive separation of flower inequalities with one or two neighbors."""
    if max_neighbors not in (1, 2):
        raise ValueError("max_neighbors must be 1 or 2")
    z = _as_point(G, z)
    S = structure(G)
    cand = []
    v1 = _flower1_violations(S, z)
    for i in np.flatnonzero(v1 > tol):
        cand.append((-float(v1[i]), int(S.adj_f[i]), (int(S.adj_e[i]),)))
    if max_neighbors == 2:
        for viol, f, e1, e2 in _flower2_candidates(S, z, tol):
            cand.append((-viol, f, (e1, e2)))
    cand.sort()
    if limit is not None:
        cand = cand[:limit]
    return [flower_cut(G, f, nb) for _, f, nb in cand]


def check_flower_relaxation(G: Hypergraph, z, tol: float = FEASIBILITY_TOL):
    """Raise :class:`PointNotInFlowerRelaxation` with the most violated cut if ``z`` is outside."""
    z = _as_point(G, z)
    lo = float(np.min(z, initial=0.0))
    hi = float(np.max(z, initial=1.0))
    if lo < -tol or hi > 1 + tol:
        raise PointNotInFlowerRelaxation("point leaves the unit box", None, max(-lo, hi - 1))
    worst = separate_standard(G, z, tol, limit=1) + separate_flowers(G, z, 2, tol, limit=1)
    if worst:
        cut = max(worst, key=lambda c: c.violation(z, G.node_count))
        v = cut.violation(z, G.node_count)
        raise PointNotInFlowerRelaxation(f"point violates {cut.family} cut {cut.witness} by {v:.3g}", cut, v)


# --- auxiliary graph ----------------------------------------------------------------

@dataclass
class AuxEdge:
    family: str
    u: int
    w: int
    length: float
    witness: tuple


class AuxGraph:
    """Signed auxiliary graph with lengths at a fixed point.

    Every group (an unordered pair of base nodes plus a family) yields two
    undirected edges, one per sign of the first endpoint; both share the
    group's length and witness.
    """

    def __init__(self, G: Hypergraph, z: np.ndarray):
        self.G = G
        self.z = z
        S = structure(G)
        self.S = S
        sk = S.aux()
        self.sk = sk
        zv, ze, a, b = S.aggregates(z)
        te, tf, tg, tx, ty = sk.te, sk.tf, sk.tg, sk.tx, sk.ty
        core = 2 * ze[tf] - 1 + 2 * a[tf]
        odd = core - b[tx] - b[ty]
        one = core + (1 - ze[te]) - b[ty] - 2 * b[tx]
        two = core + (1 - ze[te]) + (1 - ze[tg]) - 2 * b[tx] - 2 * b[ty]
        inc = zv[S.inc_v] - ze[S.inc_e]
        odd_len, odd_arg = _paths.group_min(sk.odd_inv, odd, len(sk.odd_u))
        two_len, two_arg = _paths.group_min(sk.two_inv, two, len(sk.two_u))
        one_len, one_arg = _paths.group_min(sk.one_inv, one, len(sk.one_u))
        self.group_length = np.concatenate([inc, odd_len, two_len, one_len])
        # witness: incidence index for INC, triple index otherwise
        self.group_witness = np.concatenate([np.arange(len(inc)), odd_arg, two_arg, one_arg]).astype(np.int64)
        self.arc_weight = _paths.snap_weights(self.group_length)[sk.arc_group]

    # node bookkeeping
    @property
    def node_counts(self) -> dict[str, int]:
        S = self.S
        return {"plus_nodes": 2 * S.n, "minus_nodes": 2 * S.q, "e_nodes": 2 * S.m}

    @property
    def node_count(self) -> int:
        return 2 * self.sk.n_base

    def describe(self, node: int) -> tuple[str, object, int]:
        """``(kind, payload, sign)`` with kind ``V``/``I``/``E``."""
        base, sign = node >> 1, (PLUS if node & 1 == 0 else MINUS)
        S = self.S
        if base < S.n:
            return "V", base, sign
        if base < S.n + S.q:
            return "I", self.G.intersections[base - S.n], sign
        return "E", base - S.n - S.q, sign

    def witness(self, group: int) -> tuple:
        fam = int(self.sk.family[group])
        w = int(self.group_witness[group])
        if fam == INC:
            return int(self.S.inc_e[w]), int(self.S.inc_v[w])
        sk = self.sk
        return int(sk.te[w]), int(sk.tf[w]), int(sk.tg[w])

    def edges(self) -> list[AuxEdge]:
        """Materialize all undirected aux edges (for inspection and tests)."""
        sk = self.sk
        out = []
        for g in range(len(sk.ga)):
            fam = int(sk.family[g])
            flip = 0 if fam == INC else 1
            for p in (0, 1):
                out.append(AuxEdge(FAMILY_NAMES[fam], int(2 * sk.ga[g] + p), int(2 * sk.gb[g] + (p ^ flip)),
                                   float(self.group_length[g]), self.witness(g)))
        return out

    def min_length(self) -> float:
        return float(self.group_length.min()) if len(self.group_length) else 0.0


def build_aux_graph(G: Hypergraph, triples: TripleSet | None, z, tol: float = FEASIBILITY_TOL,
                    check: bool = True) -> AuxGraph:
    """Auxiliary graph at ``z``; ``triples`` is accepted for interface symmetry (the index is cached per graph)."""
    z = _as_point(G, z)
    if triples is not None and triples.graph != G:
        raise ValueError("triple set belongs to another hypergraph")
    if check:
        check_flower_relaxation(G, z, tol)
    return AuxGraph(G, z)


@dataclass
class TwinPath:
    source: int
    target: int
    arcs: tuple
    total_length: float

    def nodes(self, aux: AuxGraph) -> list[int]:
        out = [self.source]
        for a in self.arcs:
            out.append(int(aux.sk.arc_dst[a]))
        return out


def _path_from_pred(aux: AuxGraph, source: int, target: int, pred: np.ndarray) -> tuple:
    arcs = []
    cur = target
    while cur != source:
        a = int(pred[cur])
        if a < 0:
            raise MalformedPath("predecessor chain broken")
        arcs.append(a)
        cur = int(aux.sk.arc_src[a])
    return tuple(reversed(arcs))


def iter_twin_paths(aux: AuxGraph, cutoff: float = 1.0 - VIOLATION_TOL):
    """Yield shortest twin paths below ``cutoff``, shortest first (ties by source node)."""
    sk = aux.sk
    sources = 2 * np.arange(sk.n_base, dtype=np.int64)
    if not len(sources):
        return
    dist = _paths.twin_distances(sk.indptr, sk.arc_dst, aux.arc_weight, sources, cutoff)
    hits = np.flatnonzero(dist < cutoff)
    pred = np.empty(aux.node_count, dtype=np.int64)
    for i in hits[np.lexsort((hits, dist[hits]))]:
        s = int(sources[i])
        d = _paths.dijkstra(sk.indptr, sk.arc_dst, aux.arc_weight, s, s ^ 1, np.inf, pred)
        yield TwinPath(s, s ^ 1, _path_from_pred(aux, s, s ^ 1, pred), float(d))


def shortest_twin_paths(aux: AuxGraph, cutoff: float = 1.0 - VIOLATION_TOL) -> list[TwinPath]:
    """Shortest ``(b,+) -> (b,-)`` path for every base node with length below ``cutoff``, by source."""
    return sorted(iter_twin_paths(aux, cutoff), key=lambda p: p.source)


def reconstruct_walk(aux: AuxGraph, path: TwinPath) -> SignedClosedWalk:
    """Turn a twin path into an odd signed closed walk of the same length."""
    if path.source ^ 1 != path.target:
        raise MalformedPath("path end nodes are not twins")
    if not path.arcs:
        raise MalformedPath("empty path")
    G, S, sk = aux.G, aux.S, aux.sk
    n, q = S.n, S.q
    edges: list[int] = []
    signs: list[int] = []
    pre: list[int] = []          # pre[i] = v_i, the node before edges[i]
    pending = None

    def base(x):
        return x >> 1

    def kind(x):
        b = base(x)
        return "V" if b < n else ("I" if b < n + q else "E")

    def lowest(*sets):
        return min(frozenset.intersection(*sets))

    def emit(e, s, v):
        edges.append(e)
        signs.append(s)
        pre.append(v)

    cur = path.source
    for a in path.arcs:
        if int(sk.arc_src[a]) != cur:
            raise MalformedPath("arcs do not form a walk")
        nxt = int(sk.arc_dst[a])
        g = int(sk.arc_group[a])
        fam = int(sk.family[g])
        w = aux.witness(g)
        ku = kind(cur)
        E = G.edge_sets
        if fam == INC:
            e, v = w
            if ku == "V":            # entering a positive edge
                emit(e, PLUS, v)
            else:                    # leaving it through v
                pending = v
        elif fam == ODD:
            e, f, gg = w
            X = G.intersections[base(cur) - n]
            if E[e] & E[f] != X:
                e, gg = gg, e
            emit(f, MINUS, min(X))
            pending = min(E[f] & E[gg])
        elif fam == ONE:
            e, f, gg = w            # key (e, f & g)
            if ku == "E":
                emit(f, MINUS, lowest(E[e], E[f]))
                pending = min(E[f] & E[gg])
            else:
                X = G.intersections[base(cur) - n]
                emit(f, MINUS, min(X))
                emit(e, PLUS, lowest(E[f], E[e]))
                pending = None
        elif fam == TWO:
            e, f, gg = w
            if base(cur) - n - q != e:
                e, gg = gg, e
            emit(f, MINUS, lowest(E[e], E[f]))
            emit(gg, PLUS, lowest(E[f], E[gg]))
            pending = None
        else:
            raise MalformedPath(f"unknown family {fam}")
        if fam == INC and ku == "V" and pending not in (None, w[1]):
            raise MalformedPath("inconsistent node before a positive edge")
        if fam == INC and ku == "V":
            pending = None
        cur = nxt
    if cur != path.target:
        raise MalformedPath("path does not end at the twin")
    if not edges:
        raise MalformedPath("path emitted no walk edges")
    if kind(path.source) == "E" and edges[-1] != base(path.source) - n - q:
        raise MalformedPath("path starting at an edge node must re-enter that edge")
    if pending is not None and pending != pre[0]:
        raise MalformedPath("walk does not close")
    walk = SignedClosedWalk(tuple(pre), tuple(edges), tuple(signs))
    if not walk.is_odd:
        raise MalformedPath("reconstructed walk is even")
    return walk


def path_form(aux: AuxGraph, path: TwinPath) -> LinearForm:
    """Sum of the witness blocks along a twin path.

    Every block is nonnegative on the flower relaxation, and along a twin path
    the sum has even variable coefficients and an odd constant, so
    ``path_form >= 1`` is valid for the multilinear polytope even when the path
    does not reconstruct into a valid closed walk.
    """
    return sum_forms(_group_block(aux, int(aux.sk.arc_group[a])) for a in path.arcs)


def _group_block(aux: AuxGraph, g: int) -> LinearForm:
    G = aux.G
    E = G.edge_sets
    fam = int(aux.sk.family[g])
    w = aux.witness(g)
    if fam == INC:
        return s_inc(G, w[0], w[1])
    e, f, h = w
    if fam == ODD:
        return s_odd(G, f, E[e] & E[f], E[f] & E[h])
    if fam == ONE:
        return s_one(G, f, E[f] & E[h], e)
    return s_two(G, f, e, h)


@dataclass
class TwinPathCut:
    cut: Cut
    path: TwinPath
    walk: SignedClosedWalk | None
    walk_valid: bool
    violation: float


def separate_twin_paths(G: Hypergraph, z, tol: float = VIOLATION_TOL,
                        feasibility_tol: float = FEASIBILITY_TOL, check: bool = True,
                        limit: int | None = None) -> list[TwinPathCut]:
    """One cut per twin path shorter than ``1 - tol``, deduplicated by form, most violated first.

    The cut is the length function of the reconstructed walk when that walk
    is valid (family ``simple-odd-beta-cycle``); otherwise it is the path form
    (family ``twin-path``). Both coincide whenever the walk is valid and its
    consecutive intersections equal the witnessed ones. With ``limit`` the
    scan stops after that many distinct cuts, taking paths shortest first.
    """
    aux = build_aux_graph(G, None, z, feasibility_tol, check)
    n = G.node_count
    found: dict[tuple, TwinPathCut] = {}
    for path in iter_twin_paths(aux, 1.0 - tol):
        if limit is not None and len(found) >= limit:
            break
        form = path_form(aux, path)
        key = form.key()
        viol = 1.0 - form.evaluate(aux.z, n)
        if viol <= tol or key in found:
            continue
        try:
            walk = reconstruct_walk(aux, path)
            valid = not walk_problems(G, walk)
        except MalformedPath:
            walk, valid = None, False
        if valid and length_function(G, walk).key() == key:
            cut = Cut(form, 1, "simple-odd-beta-cycle", (walk,))
        else:
            cut = Cut(form, 1, "twin-path", (path.source >> 1,))
        found[key] = TwinPathCut(cut, path, walk, valid, viol)
    return sorted(found.values(), key=lambda t: (-t.violation, t.cut.form.key()))


def separate_simple_odd_beta_cycle(G: Hypergraph, z, tol: float = VIOLATION_TOL,
                                   feasibility_tol: float = FEASIBILITY_TOL,
                                   check: bool = True) -> list[tuple[SignedClosedWalk, float]]:
    """Violated simple odd beta-cycle inequalities found through twin paths.

    Only paths that reconstruct into valid closed walks are returned, as
    ``(walk, violation)`` pairs deduplicated by canonical rotation and sorted
    by violation. Paths whose reconstruction breaks the triple condition are
    reported by :func:`separate_twin_paths` instead.
    """
    found: dict[tuple, tuple[SignedClosedWalk, float]] = {}
    skipped = 0
    n = G.node_count
    z = _as_point(G, z)
    for tc in separate_twin_paths(G, z, tol, feasibility_tol, check):
        if not tc.walk_valid:
            skipped += 1
            continue
        viol = 1.0 - length_function(G, tc.walk).evaluate(z, n)
        key = tc.walk.canonical_key()
        if viol > tol and key not in found:
            found[key] = (tc.walk, viol)
    if skipped:
        log.debug("%d violated twin paths did not reconstruct into valid walks", skipped)
    return sorted(found.values(), key=lambda t: (-t[1], t[0].canonical_key()))
