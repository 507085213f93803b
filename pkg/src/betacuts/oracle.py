"""Brute-force ground truth for small instances.

Nothing here uses the auxiliary graph: integer optima come from Gray-code
enumeration, walk separation from a dynamic program over explicit walk states.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass

import numpy as np
from numba import njit, prange
from scipy.optimize import Bounds, LinearConstraint, linprog, milp

from .cuts import (MINUS, PLUS, Cut, LinearForm, SignedClosedWalk, all_flower_cuts, block, length_function,
                   standard_cuts, validate_walk, walk_problems)
from .errors import (BadIndices, EvenWalk, HypergraphError, InfeasibleParams, NoRepetition, NotCycleHypergraph,
                     TooLarge)
from .hypergraph import Hypergraph, is_cycle_hypergraph
from .instances import Instance, gen_cycle_hypergraph, instance_from_profits

log = logging.getLogger(__name__)

MAX_BRUTE_FORCE_NODES = 26
MAX_CUT_SUPPORT = 24


# --- integer optimum ---------------------------------------------------------------

@njit(cache=True)
def _gray_block(high, n_low, n, lin, t_ptr, t_var, t_coef, v_ptr, v_term):
    """Minimum over assignments whose top ``n - n_low`` bits equal ``high``."""
    x = np.zeros(n, dtype=np.int8)
    for b in range(n - n_low):
        x[n_low + b] = (high >> b) & 1
    n_terms = t_coef.shape[0]
    zeros = np.zeros(n_terms, dtype=np.int64)
    val = 0.0
    for v in range(n):
        if x[v]:
            val += lin[v]
    for t in range(n_terms):
        c = 0
        for a in range(t_ptr[t], t_ptr[t + 1]):
            if x[t_var[a]] == 0:
                c += 1
        zeros[t] = c
        if c == 0:
            val += t_coef[t]
    best = val
    best_code = 0
    for step in range(1, 1 << n_low):
        j = 0
        s = step
        while (s & 1) == 0:
            s >>= 1
            j += 1
        if x[j] == 0:
            x[j] = 1
            val += lin[j]
            for a in range(v_ptr[j], v_ptr[j + 1]):
                t = v_term[a]
                zeros[t] -= 1
                if zeros[t] == 0:
                    val += t_coef[t]
        else:
            x[j] = 0
            val -= lin[j]
            for a in range(v_ptr[j], v_ptr[j + 1]):
                t = v_term[a]
                if zeros[t] == 0:
                    val -= t_coef[t]
                zeros[t] += 1
        if val < best:
            best = val
            best_code = step ^ (step >> 1)
    return best, best_code


@njit(cache=True, parallel=True)
def _gray_min(n, n_low, lin, t_ptr, t_var, t_coef, v_ptr, v_term):
    blocks = 1 << (n - n_low)
    vals = np.empty(blocks)
    codes = np.empty(blocks, dtype=np.int64)
    for h in prange(blocks):
        vals[h], codes[h] = _gray_block(h, n_low, n, lin, t_ptr, t_var, t_coef, v_ptr, v_term)
    return vals, codes


def _pack_terms(n, node_profit, terms):
    lin = np.asarray(node_profit, dtype=float)
    t_ptr = np.zeros(len(terms) + 1, dtype=np.int64)
    t_ptr[1:] = np.cumsum([len(t) for t, _ in terms])
    t_var = np.array([v for t, _ in terms for v in t], dtype=np.int64)
    t_coef = np.array([c for _, c in terms], dtype=float)
    occ = [[] for _ in range(n)]
    for ti, (t, _) in enumerate(terms):
        for v in t:
            occ[v].append(ti)
    v_ptr = np.zeros(n + 1, dtype=np.int64)
    v_ptr[1:] = np.cumsum([len(o) for o in occ])
    v_term = np.array([t for o in occ for t in o], dtype=np.int64)
    return lin, t_ptr, t_var, t_coef, v_ptr, v_term


def minimize_multilinear(n: int, node_profit, terms) -> tuple[float, np.ndarray]:
    """Exact minimum of ``sum node_profit*x + sum coef*prod(x_t)`` over ``{0,1}^n``."""
    if n > MAX_BRUTE_FORCE_NODES:
        raise TooLarge(f"{n} variables exceed the brute-force limit of {MAX_BRUTE_FORCE_NODES}")
    if n == 0:
        return 0.0, np.zeros(0, dtype=np.int8)
    packed = _pack_terms(n, node_profit, terms)
    n_low = n - min(6, max(0, n - 10))
    vals, codes = _gray_min(n, n_low, *packed)
    h = int(np.argmin(vals))
    x = np.zeros(n, dtype=np.int8)
    code = int(codes[h])
    for b in range(n_low):
        x[b] = (code >> b) & 1
    for b in range(n - n_low):
        x[n_low + b] = (h >> b) & 1
    return float(vals[h]), x


def brute_force_optimum(instance: Instance) -> tuple[int | float, np.ndarray]:
    """Exact optimum (with the constant) and an optimal 0/1 assignment."""
    G = instance.hypergraph
    sign = 1 if instance.sense == "min" else -1
    node = [sign * p for p in instance.node_profit]
    terms = [(e, sign * p) for e, p in zip(G.edges, instance.edge_profit) if p]
    val, x = minimize_multilinear(G.node_count, node, terms)
    exact = instance.evaluate(x)          # recompute exactly from the polynomial
    if abs(exact - (sign * val + instance.constant)) > 1e-6 * max(1.0, abs(exact)):
        raise AssertionError("Gray-code value disagrees with direct evaluation")
    return exact, x


def milp_optimum(instance: Instance, extra_cuts=(), time_limit: float | None = None) -> tuple[float, np.ndarray]:
    """Exact optimum through a MILP solve of the standard linearization (HiGHS branch and bound).

    For instances too large to enumerate. Node variables are binary and the
    standard rows force every edge variable to equal the product of its nodes.
    ``extra_cuts`` (valid inequalities, e.g. from a cutting-plane run) only
    tighten the relaxation the branch and bound works on.
    """
    G = instance.hypergraph
    n, m = G.node_count, G.edge_count
    cuts = standard_cuts(G) + list(extra_cuts)
    A = np.array([c.form.dense(n, m) for c in cuts]) if cuts else np.zeros((0, n + m))
    lb = np.array([c.bound - c.form.constant for c in cuts], dtype=float)
    sign = 1.0 if instance.sense == "min" else -1.0
    options = {"time_limit": time_limit} if time_limit else {}
    res = milp(sign * instance.objective_vector(), integrality=np.r_[np.ones(n), np.zeros(m)],
               bounds=Bounds(0, 1), constraints=[LinearConstraint(A, lb, np.inf)] if cuts else [],
               options=options)
    if res.status != 0:
        raise RuntimeError(f"MILP solve did not finish: {res.message}")
    x = np.round(res.x[:n]).astype(np.int8)
    return instance.evaluate(x), x


def integer_points(G: Hypergraph, nodes=None):
    """Yield ``z`` over ``V u E`` for every 0/1 assignment (optionally only over ``nodes``, others 0)."""
    nodes = list(range(G.node_count)) if nodes is None else list(nodes)
    n = G.node_count
    for bits in itertools.product((0, 1), repeat=len(nodes)):
        x = np.zeros(n, dtype=np.int8)
        x[nodes] = bits
        ze = [int(all(x[v] for v in e)) for e in G.edges]
        yield np.concatenate([x, ze]).astype(float)


def validate_cut(G: Hypergraph, cut: Cut, tol: float = 1e-9) -> bool:
    """True iff every point of the multilinear polytope's vertex set satisfies ``cut``.

    Only nodes in the cut's support matter (edge variables are products of
    their nodes), so the enumeration ranges over ``2^|support|`` points.
    """
    form = cut.form
    edges = list(form.edge_coeffs)
    support = sorted(set(form.node_coeffs) | {v for e in edges for v in G.edges[e]})
    if len(support) > MAX_CUT_SUPPORT:
        raise TooLarge(f"cut support of {len(support)} nodes exceeds {MAX_CUT_SUPPORT}")
    pos = {v: i for i, v in enumerate(support)}
    s = len(support)
    chunk = 1 << min(s, 18)
    total = 1 << s
    nc = np.array([form.node_coeffs[v] for v in form.node_coeffs], dtype=float)
    ncol = np.array([pos[v] for v in form.node_coeffs], dtype=np.int64)
    ec = np.array([form.edge_coeffs[e] for e in edges], dtype=float)
    for start in range(0, total, chunk):
        codes = np.arange(start, min(total, start + chunk), dtype=np.int64)
        bits = ((codes[:, None] >> np.arange(s)) & 1).astype(bool)
        val = np.full(len(codes), float(form.constant))
        if len(ncol):
            val += bits[:, ncol].astype(float) @ nc
        for e, c in zip(edges, ec):
            cols = [pos[v] for v in G.edges[e]]
            val += c * np.all(bits[:, cols], axis=1)
        if np.any(val < cut.bound - tol):
            return False
    return True


def validate_cuts(G: Hypergraph, cuts, tol: float = 1e-9) -> list[bool]:
    """``validate_cut`` for many cuts at once, enumerating all of ``G``'s vertices a single time."""
    n = G.node_count
    if n > MAX_CUT_SUPPORT:
        raise TooLarge(f"{n} nodes exceed {MAX_CUT_SUPPORT}")
    cuts = list(cuts)
    if not cuts:
        return []
    A = np.array([c.form.dense(n, G.edge_count) for c in cuts])
    const = np.array([c.form.constant for c in cuts], dtype=float)
    rhs = np.array([c.bound for c in cuts], dtype=float)
    ok = np.ones(len(cuts), dtype=bool)
    chunk = 1 << min(n, 14)
    for start in range(0, 1 << n, chunk):
        codes = np.arange(start, min(1 << n, start + chunk), dtype=np.int64)
        bits = ((codes[:, None] >> np.arange(n)) & 1).astype(bool)
        cols = [np.all(bits[:, list(e)], axis=1) for e in G.edges]
        Z = np.column_stack([bits] + cols).astype(float) if cols else bits.astype(float)
        vals = Z @ A.T + const
        ok &= np.all(vals >= rhs - tol, axis=0)
    return ok.tolist()


def all_blocks(G: Hypergraph) -> list[tuple[str, tuple, LinearForm]]:
    """Every building block of ``G`` as ``(kind, args, form)``, all subsets included (small edges only)."""
    E = G.edge_sets
    out = []
    for e, nodes in enumerate(G.edges):
        for v in nodes:
            out.append(("inc", (e, v), block("inc", G, e, v)))
        subsets = [frozenset(c) for r in range(1, len(nodes) + 1) for c in itertools.combinations(nodes, r)]
        for U, W in itertools.product(subsets, subsets):
            if not U & W:
                out.append(("odd", (e, U, W), block("odd", G, e, U, W)))
        for f in G.neighbors(e):
            for U in subsets:
                if not U & E[f]:
                    out.append(("one", (e, U, f), block("one", G, e, U, f)))
            for g in G.neighbors(e):
                if g != f and not E[e] & E[f] & E[g]:
                    out.append(("two", (e, f, g), block("two", G, e, f, g)))
    return out


# --- exhaustive walk separation ------------------------------------------------------

def _block_value(G, z, prev, sp, cur, sc, nxt, sn, v_here, v_next):
    """Index contribution of ``cur`` in a signed closed walk, straight from the block definitions."""
    n = G.node_count
    zv = lambda v: z[v]
    ze = lambda e: z[n + e]
    E = G.edge_sets
    if sc == PLUS:
        val = 0.0
        if sp == PLUS:
            val += zv(v_here) - ze(cur)
        if sn == PLUS:
            val += zv(v_next) - ze(cur)
        return val
    val = 2 * ze(cur) - 1
    covered = set()
    if sp == MINUS:
        U = E[prev] & E[cur]
        val += sum(1 - zv(v) for v in U)
        covered |= U
    else:
        val += 1 - ze(prev)
        covered |= E[prev]
    if sn == MINUS:
        W = E[cur] & E[nxt]
        val += sum(1 - zv(v) for v in W)
        covered |= W
    else:
        val += 1 - ze(nxt)
        covered |= E[nxt]
    val += sum(2 * (1 - zv(v)) for v in E[cur] - covered)
    return val


def _walk_states(G):
    """States ``(e_prev, s_prev, v, e, s)`` with ``v`` in ``e_prev & e``."""
    states = []
    for e in range(G.edge_count):
        for f in G.neighbors(e):
            for v in sorted(G.edge_sets[e] & G.edge_sets[f]):
                for sp in (PLUS, MINUS):
                    for s in (PLUS, MINUS):
                        states.append((e, sp, v, f, s))
    return states


def aux_node_count(G: Hypergraph) -> int:
    return 2 * (G.node_count + len(G.intersections) + G.edge_count)


def brute_force_separation(G: Hypergraph, z, max_k: int | None = None, max_states: int = 4000):
    """Most violated (minimum slack) odd signed closed walk with at most ``max_k`` edges.

    Dynamic program over walk states: a transition appends one edge and pays
    the block of the edge it closes off. The closed walks through a start
    state with odd parity are exactly the odd signed closed walks, with every
    node choice and sign pattern covered. Returns ``(walk, slack)`` or
    ``None`` when no odd closed walk exists.
    """
    z = np.asarray(z, dtype=float)
    if max_k is None:
        max_k = aux_node_count(G)
    states = _walk_states(G)
    S = len(states)
    if S == 0:
        return None
    if S > max_states:
        raise TooLarge(f"{S} walk states exceed {max_states}")
    index = {st: i for i, st in enumerate(states)}
    src, dst, cost = [], [], []
    E = G.edge_sets
    for i, (p, sp, v, c, sc) in enumerate(states):
        for nx in G.neighbors(c):
            if E[p] & E[c] & E[nx]:
                continue
            for w in sorted(E[c] & E[nx]):
                for sn in (PLUS, MINUS):
                    j = index[(c, sc, w, nx, sn)]
                    src.append(i)
                    dst.append(j)
                    cost.append(_block_value(G, z, p, sp, c, sc, nx, sn, v, w))
    if not src:
        return None
    src = np.array(src, dtype=np.int64)
    dst = np.array(dst, dtype=np.int64)
    cost = np.array(cost)
    flip = np.array([1 if states[j][4] == MINUS else 0 for j in dst], dtype=np.int64)
    # doubled graph over (state, parity); parity counts minus edges appended so far
    a_src = np.concatenate([2 * src, 2 * src + 1])
    a_dst = np.concatenate([2 * dst + flip, 2 * dst + (1 - flip)])
    a_cost = np.concatenate([cost, cost])
    order = np.argsort(a_dst, kind="stable")
    a_src, a_dst, a_cost = a_src[order], a_dst[order], a_cost[order]
    seg = np.flatnonzero(np.r_[True, a_dst[1:] != a_dst[:-1]])
    seg_dst = a_dst[seg]

    def relax(D):
        vals = D[:, a_src] + a_cost
        best = np.minimum.reduceat(vals, seg, axis=1)
        out = D.copy()
        out[:, seg_dst] = np.minimum(out[:, seg_dst], best)
        return out

    # parity 0 at the start; returning to the start state appends its edge,
    # so parity 1 on return means an odd number of minus edges in the walk
    starts = np.arange(S)
    D = np.full((S, 2 * S), np.inf)
    D[starts, 2 * starts] = 0.0
    steps = 0
    while steps < max_k:
        new = relax(D)
        steps += 1
        if np.array_equal(new, D):
            break
        D = new
    close = D[starts, 2 * starts + 1]
    best = int(np.argmin(close))
    if not np.isfinite(close[best]):
        return None
    walk = _trace(states, a_src, a_dst, a_cost, seg, seg_dst, best, max_k)
    value = float(close[best])
    return walk, value - 1.0


def _trace(states, a_src, a_dst, a_cost, seg, seg_dst, start, max_k):
    """Recover one argmin closed walk for a single start state (step-indexed DP)."""
    S = len(states)
    N = 2 * S
    D = np.full(N, np.inf)
    D[2 * start] = 0.0
    preds = []
    for _ in range(max_k):
        vals = D[a_src] + a_cost
        best = np.full(N, np.inf)
        arg = np.full(N, -1, dtype=np.int64)
        # first arc (in sorted order) attaining each destination's minimum
        mins = np.minimum.reduceat(vals, seg)
        best[seg_dst] = mins
        hit = vals == np.repeat(mins, np.diff(np.r_[seg, len(vals)]))
        first = np.full(N, -1, dtype=np.int64)
        idx = np.flatnonzero(hit)[::-1]
        first[a_dst[idx]] = idx
        improved = best < D
        arg[improved] = first[improved]
        new = np.where(improved, best, D)
        preds.append(arg)
        if np.array_equal(new, D):
            break
        D = new
    t = len(preds)
    node = 2 * start + 1
    seq = []
    while t > 0:
        a = preds[t - 1][node]
        if a >= 0:
            seq.append(int(node >> 1))
            node = int(a_src[a])
        t -= 1
    if node != 2 * start:
        raise AssertionError("walk trace did not return to the start state")
    seq.reverse()
    # seq lists the states entered after the start; the last one is the start again
    chain = [start] + seq[:-1]
    nodes, edges, signs = [], [], []
    for st in chain:
        p, sp, v, e, s = states[st]
        nodes.append(v)
        edges.append(e)
        signs.append(s)
    return SignedClosedWalk(tuple(nodes), tuple(edges), tuple(signs))


# --- redundancy decomposition ----------------------------------------------------------

@dataclass
class Decomposition:
    odd_part: SignedClosedWalk
    even_part: SignedClosedWalk
    holds: bool


def split_walk(walk: SignedClosedWalk, i: int, j: int) -> tuple[SignedClosedWalk, SignedClosedWalk]:
    """Split at a repeated edge ``edges[i] == edges[j]`` into the two closed walks between them."""
    k = walk.k
    w = walk.rotate(i)
    j = (j - i) % k
    nodes, edges, signs = w.nodes, w.edges, w.signs
    c1 = SignedClosedWalk((nodes[j],) + nodes[1:j], edges[:j], signs[:j])
    c2 = SignedClosedWalk((nodes[0],) + nodes[j + 1:], edges[j:], signs[j:])
    return c1, c2


def check_redundancy_decomposition(G: Hypergraph, walk: SignedClosedWalk, i: int | None = None,
                                   j: int | None = None) -> Decomposition:
    """Split an odd walk at a repeated positive edge and compare length functions exactly.

    Without ``i, j`` the first pair of positions carrying the same edge with
    sign ``+`` on both is used. ``holds`` is true when the walk's length
    function is coefficient-wise the sum of the two parts' length functions.
    """
    validate_walk(G, walk)
    if not walk.is_odd:
        raise EvenWalk("decomposition needs an odd walk")
    k = walk.k
    if i is None or j is None:
        pairs = [(a, b) for a in range(k) for b in range(a + 1, k)
                 if walk.edges[a] == walk.edges[b] and walk.signs[a] == PLUS == walk.signs[b]]
        if not pairs:
            raise NoRepetition("no edge appears twice with sign +")
        i, j = pairs[0]
    if not (0 <= i < k and 0 <= j < k) or i == j:
        raise BadIndices("indices must be distinct positions of the walk")
    if walk.edges[i] != walk.edges[j] or walk.signs[i] != PLUS or walk.signs[j] != PLUS:
        raise NoRepetition(f"positions {i} and {j} do not carry the same positive edge")
    gap = (j - i) % k
    if not 3 <= gap <= k - 3:
        raise BadIndices("both parts of the split must have at least three edges")
    c1, c2 = split_walk(walk, i, j)
    for part in (c1, c2):
        problems = walk_problems(G, part)
        if problems:
            raise BadIndices("split part is not a closed walk: " + "; ".join(problems))
    odd, even = (c1, c2) if c1.is_odd else (c2, c1)
    whole = length_function(G, walk)
    parts = length_function(G, odd) + length_function(G, even)
    return Decomposition(odd, even, whole.key() == parts.key())


# --- fixtures ----------------------------------------------------------------------

def random_hypergraph(rng, max_edges: int = 6, max_nodes: int = 12, edge_sizes=(2, 4)) -> Hypergraph:
    """Small connected-ish hypergraph: a random cycle hypergraph plus a few random extra edges."""
    while True:
        m = int(rng.integers(3, min(5, max_edges) + 1))
        try:
            H = gen_cycle_hypergraph(m, (edge_sizes[0], min(3, edge_sizes[1])), (1, 2),
                                     seed=int(rng.integers(2**31)))
        except (InfeasibleParams, ValueError):
            continue
        if H.node_count > max_nodes:
            continue
        edges = [set(e) for e in H.edges]
        for _ in range(int(rng.integers(0, max_edges - m + 1))):
            size = int(rng.integers(edge_sizes[0], min(edge_sizes[1], H.node_count) + 1))
            edges.append(set(rng.choice(H.node_count, size, replace=False).tolist()))
        try:
            return Hypergraph(H.node_count, edges)
        except HypergraphError:
            continue


def flower_relaxation_point(G: Hypergraph, target) -> np.ndarray:
    """Point of the flower relaxation nearest to ``target`` in the L1 norm.

    Uses the explicit inequality list, not the separators, so fixtures from
    here are independent of the code under test.
    """
    rows = standard_cuts(G) + all_flower_cuts(G, 2)
    N = G.variable_count
    A = np.array([c.form.dense(G.node_count, G.edge_count) for c in rows])
    b = np.array([c.bound - c.form.constant for c in rows], dtype=float)
    target = np.asarray(target, dtype=float)
    eye = np.eye(N)
    A_ub = np.block([[-A, np.zeros((len(rows), N))], [eye, -eye], [-eye, -eye]])
    b_ub = np.concatenate([-b, target, -target])
    res = linprog(np.r_[np.zeros(N), np.ones(N)], A_ub=A_ub, b_ub=b_ub,
                  bounds=[(0, 1)] * N + [(0, None)] * N, method="highs-ds")
    if res.status != 0:
        raise RuntimeError(f"projection LP failed: {res.message}")
    return np.clip(res.x[:N], 0.0, 1.0)


def separation_fixtures(count: int = 100, seed: int = 0, max_edges: int = 6, max_nodes: int = 12):
    """``(G, z)`` pairs with ``z`` fractional and inside the flower relaxation."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        G = random_hypergraph(rng, max_edges, max_nodes)
        z = flower_relaxation_point(G, rng.random(G.variable_count))
        frac = np.minimum(z, 1 - z)
        if frac.max() > 1e-6:
            out.append((G, z))
    return out


def random_closed_walk(G: Hypergraph, rng, start: int | None = None, k_max: int = 10,
                       attempts: int = 200) -> SignedClosedWalk | None:
    """Random closed walk (all signs ``+``) with the triple condition at every index, or ``None``."""
    E = G.edge_sets
    for _ in range(attempts):
        e0 = int(rng.integers(G.edge_count)) if start is None else start
        seq = [e0]
        while len(seq) < k_max:
            cur, prev = seq[-1], seq[-2] if len(seq) > 1 else None
            nbrs = [f for f in G.neighbors(cur) if prev is None or not (E[prev] & E[cur] & E[f])]
            if not nbrs:
                break
            seq.append(int(rng.choice(nbrs)))
            k = len(seq)
            if k >= 3 and E[seq[-1]] & E[e0] and seq[-1] != e0 \
                    and not (E[seq[-2]] & E[seq[-1]] & E[e0]) and not (E[seq[-1]] & E[e0] & E[seq[1]]):
                if rng.random() < 0.5 or k == k_max:
                    nodes = [int(rng.choice(sorted(E[seq[i - 1]] & E[seq[i]]))) for i in range(k)]
                    return SignedClosedWalk(tuple(nodes), tuple(seq), (PLUS,) * k)
    return None


def with_random_signs(walk: SignedClosedWalk, rng, odd: bool = True, keep_plus=()) -> SignedClosedWalk:
    """Random signature with the requested parity; positions in ``keep_plus`` stay ``+``."""
    free = [i for i in range(walk.k) if i not in set(keep_plus)]
    signs = [PLUS] * walk.k
    for i in free:
        signs[i] = PLUS if rng.random() < 0.5 else MINUS
    if (sum(s == MINUS for s in signs) % 2 == 1) != odd:
        i = int(rng.choice(free))
        signs[i] = -signs[i]
    return SignedClosedWalk(walk.nodes, walk.edges, tuple(signs))


def random_odd_walks(count: int, seed: int = 0, k_max: int = 10):
    """``(G, walk)`` pairs of random odd signed closed walks on random small hypergraphs."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        G = random_hypergraph(rng, max_edges=8, max_nodes=14)
        w = random_closed_walk(G, rng, k_max=k_max)
        if w is not None:
            out.append((G, with_random_signs(w, rng)))
    return out


def repeated_plus_walks(count: int, seed: int = 0):
    """Odd walks ``e, A..., e, B...`` glued from two closed walks through the same edge ``e``.

    Both occurrences of ``e`` carry ``+``; only glued walks that satisfy the
    triple condition at the seams (so both split parts are closed walks) are kept.
    """
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        G = random_hypergraph(rng, max_edges=8, max_nodes=14)
        e = int(rng.integers(G.edge_count))
        w1 = random_closed_walk(G, rng, start=e, k_max=7)
        w2 = random_closed_walk(G, rng, start=e, k_max=7)
        if w1 is None or w2 is None:
            continue
        nodes = (w2.nodes[0],) + w1.nodes[1:] + (w1.nodes[0],) + w2.nodes[1:]
        edges = w1.edges + w2.edges
        glued = SignedClosedWalk(nodes, edges, (PLUS,) * len(edges))
        if walk_problems(G, glued):
            continue
        j = w1.k
        out.append((G, with_random_signs(glued, rng, keep_plus=(0, j)), 0, j))
    return out


# --- perfect formulation ----------------------------------------------------------------

MAX_EXHAUSTIVE_NODES = 20


def verify_perfect_formulation(G: Hypergraph, trials: int = 50, seed: int = 0, tol: float = 1e-6,
                               profit_range: int = 10, collect: list | None = None) -> bool:
    """Cutting-plane bound after the beta-cycle phase equals the integer optimum for random objectives.

    The objectives have integer profits drawn uniformly from
    ``[-profit_range, profit_range]`` on every node and edge. Every cut the
    runs add is appended to ``collect`` when a list is given.
    """
    from .engine import PhaseConfig, run

    ok, _ = is_cycle_hypergraph(G)
    if not ok:
        raise NotCycleHypergraph("verification needs a cycle hypergraph")
    if G.node_count > MAX_EXHAUSTIVE_NODES:
        raise TooLarge(f"{G.node_count} nodes exceed {MAX_EXHAUSTIVE_NODES}")
    rng = np.random.default_rng(seed)
    config = PhaseConfig()
    passed = True
    for t in range(trials):
        node = rng.integers(-profit_range, profit_range + 1, G.node_count)
        edge = rng.integers(-profit_range, profit_range + 1, G.edge_count)
        inst = instance_from_profits(G, node, edge, sense="max")
        best, _ = brute_force_optimum(inst)
        report = run(inst, config, keep_cuts=collect is not None)
        if collect is not None:
            collect.extend(report.cuts)
        bound = report.phases[-1].bound
        if abs(bound - best) > tol:
            log.warning("trial %d: bound %.9g differs from optimum %s", t, bound, best)
            passed = False
    return passed
