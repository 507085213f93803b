"""Inequality families over the linearization variables ``z`` (nodes, then edges).

Everything here uses exact integer coefficients; evaluation at fractional
points goes through floats.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import EvenWalk, InvalidBlockArgs, InvalidFlower, InvalidWalk, NotCycleHypergraph
from .hypergraph import Hypergraph, is_cycle_hypergraph

PLUS, MINUS = 1, -1


def _prune(d: Mapping[int, int]) -> dict[int, int]:
    return {k: c for k, c in sorted(d.items()) if c != 0}


@dataclass(frozen=True)
class LinearForm:
    """Affine function ``sum node_coeffs*z_v + sum edge_coeffs*z_e + constant``."""

    node_coeffs: dict = field(default_factory=dict)
    edge_coeffs: dict = field(default_factory=dict)
    constant: int | float = 0

    def __post_init__(self):
        object.__setattr__(self, "node_coeffs", _prune(self.node_coeffs))
        object.__setattr__(self, "edge_coeffs", _prune(self.edge_coeffs))

    def __add__(self, other: "LinearForm") -> "LinearForm":
        nodes = dict(self.node_coeffs)
        for k, c in other.node_coeffs.items():
            nodes[k] = nodes.get(k, 0) + c
        edges = dict(self.edge_coeffs)
        for k, c in other.edge_coeffs.items():
            edges[k] = edges.get(k, 0) + c
        return LinearForm(nodes, edges, self.constant + other.constant)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor) -> "LinearForm":
        return LinearForm({k: c * factor for k, c in self.node_coeffs.items()},
                          {k: c * factor for k, c in self.edge_coeffs.items()},
                          self.constant * factor)

    def evaluate(self, z, node_count: int) -> float:
        val = float(self.constant)
        for v, c in self.node_coeffs.items():
            val += c * z[v]
        for e, c in self.edge_coeffs.items():
            val += c * z[node_count + e]
        return val

    def dense(self, node_count: int, edge_count: int) -> np.ndarray:
        row = np.zeros(node_count + edge_count)
        for v, c in self.node_coeffs.items():
            row[v] = c
        for e, c in self.edge_coeffs.items():
            row[node_count + e] = c
        return row

    def key(self) -> tuple:
        return (tuple(self.node_coeffs.items()), tuple(self.edge_coeffs.items()), self.constant)

    def is_integral(self) -> bool:
        vals = list(self.node_coeffs.values()) + list(self.edge_coeffs.values()) + [self.constant]
        return all(isinstance(c, int) or float(c).is_integer() for c in vals)

    def __str__(self):
        parts = [f"{c:+}*z_v{v}" for v, c in self.node_coeffs.items()]
        parts += [f"{c:+}*z_e{e}" for e, c in self.edge_coeffs.items()]
        parts.append(f"{self.constant:+}")
        return " ".join(parts)


def _form(nodes=None, edges=None, constant=0) -> LinearForm:
    return LinearForm(dict(nodes or {}), dict(edges or {}), constant)


FAMILIES = ("standard-1", "standard-2", "flower-1", "flower-2", "simple-odd-beta-cycle", "cg-simple-odd-beta-cycle",
            "twin-path")


@dataclass(frozen=True)
class Cut:
    """Inequality ``form(z) >= bound`` with provenance."""

    form: LinearForm
    bound: int | float
    family: str
    witness: tuple = ()

    def slack(self, z, node_count: int) -> float:
        return self.form.evaluate(z, node_count) - self.bound

    def violation(self, z, node_count: int) -> float:
        return -self.slack(z, node_count)

    def row(self) -> tuple[LinearForm, float]:
        """Row ``a.z >= rhs`` with the constant moved to the right-hand side."""
        return LinearForm(self.form.node_coeffs, self.form.edge_coeffs, 0), self.bound - self.form.constant

    def to_line(self) -> str:
        nodes = " ".join(f"{v}:{c}" for v, c in self.form.node_coeffs.items())
        edges = " ".join(f"{e}:{c}" for e, c in self.form.edge_coeffs.items())
        return "; ".join([self.family, str(self.bound), str(self.form.constant), nodes, edges,
                          _format_witness(self.witness)])


def _format_witness(w) -> str:
    return ",".join(_format_witness(x) if isinstance(x, tuple) else str(x) for x in w) if isinstance(w, tuple) else str(w)


def _num(tok: str):
    f = float(tok)
    return int(f) if f.is_integer() and "." not in tok and "e" not in tok.lower() else f


def cut_from_line(line: str) -> Cut:
    """Parse :meth:`Cut.to_line` output (the witness comes back as a flat string tuple)."""
    family, bound, constant, nodes, edges, witness = [p.strip() for p in line.split(";")]
    nc = {int(a): _num(b) for a, b in (t.split(":") for t in nodes.split())}
    ec = {int(a): _num(b) for a, b in (t.split(":") for t in edges.split())}
    wit = tuple(witness.split(",")) if witness else ()
    return Cut(LinearForm(nc, ec, _num(constant)), _num(bound), family, wit)


# --- standard linearization and flowers ----------------------------------------

def standard_cuts(G: Hypergraph) -> list[Cut]:
    cuts = []
    for e, nodes in enumerate(G.edges):
        for v in nodes:
            cuts.append(Cut(_form({v: 1}, {e: -1}), 0, "standard-1", (e, v)))
        cuts.append(Cut(_form({v: -1 for v in nodes}, {e: 1}, len(nodes) - 1), 0, "standard-2", (e,)))
    return cuts


def flower_cut(G: Hypergraph, center: int, neighbors: Sequence[int]) -> Cut:
    """``(z_f-1) + sum (1-z_ei) + sum_{v in f minus the neighbors} (1-z_v) >= 0``."""
    neighbors = tuple(neighbors)
    if len(neighbors) not in (1, 2):
        raise InvalidFlower("only flowers with one or two neighbors are supported")
    if len(set(neighbors)) != len(neighbors) or center in neighbors:
        raise InvalidFlower("neighbors must be distinct and differ from the center")
    f = G.edge_sets[center]
    parts = []
    for e in neighbors:
        part = f & G.edge_sets[e]
        if not part:
            raise InvalidFlower(f"edge {e} is not adjacent to center {center}")
        parts.append(part)
    if len(parts) == 2 and parts[0] & parts[1]:
        raise InvalidFlower("neighbor intersections inside the center must be disjoint")
    rest = f.difference(*parts)
    nodes = {v: -1 for v in rest}
    edges = {center: 1}
    for e in neighbors:
        edges[e] = -1
    constant = -1 + len(neighbors) + len(rest)
    family = "flower-1" if len(neighbors) == 1 else "flower-2"
    return Cut(_form(nodes, edges, constant), 0, family, (center,) + neighbors)


def sum_forms(forms: Iterable[LinearForm]) -> LinearForm:
    """Sum of many forms in one pass (``+`` re-normalizes after every step)."""
    nodes: dict[int, int] = {}
    edges: dict[int, int] = {}
    constant = 0
    for f in forms:
        for k, c in f.node_coeffs.items():
            nodes[k] = nodes.get(k, 0) + c
        for k, c in f.edge_coeffs.items():
            edges[k] = edges.get(k, 0) + c
        constant += f.constant
    return LinearForm(nodes, edges, constant)


# --- building blocks --------------------------------------------------------------

def s_inc(G: Hypergraph, e: int, v: int) -> LinearForm:
    if v not in G.edge_sets[e]:
        raise InvalidBlockArgs(f"node {v} not in edge {e}")
    return _form({v: 1}, {e: -1})


def _odd_like(G, e, halves: Iterable[frozenset], edge_terms: Iterable[int]) -> LinearForm:
    """``2z_e - 1 + sum_{halves}(1-z) + sum_edges (1-z_f) + sum_rest (2-2z)``."""
    nodes: dict[int, int] = {}
    constant = -1
    covered = set()
    for part in halves:
        for v in part:
            nodes[v] = nodes.get(v, 0) - 1
            constant += 1
        covered |= part
    edges = {e: 2}
    for f in edge_terms:
        edges[f] = edges.get(f, 0) - 1
        constant += 1
        covered |= G.edge_sets[f]
    for v in G.edge_sets[e] - covered:
        nodes[v] = nodes.get(v, 0) - 2
        constant += 2
    return _form(nodes, edges, constant)


def s_odd(G: Hypergraph, e: int, U: Iterable[int], W: Iterable[int]) -> LinearForm:
    U, W = frozenset(U), frozenset(W)
    es = G.edge_sets[e]
    if not U or not W or U & W or not (U <= es and W <= es):
        raise InvalidBlockArgs("odd block needs disjoint nonempty U, W inside e")
    return _odd_like(G, e, (U, W), ())


def s_one(G: Hypergraph, e: int, U: Iterable[int], f: int) -> LinearForm:
    U = frozenset(U)
    es, fs = G.edge_sets[e], G.edge_sets[f]
    if not U or not U <= es or U & fs or not es & fs or e == f:
        raise InvalidBlockArgs("one block needs U inside e, disjoint from f, and e adjacent to f")
    return _odd_like(G, e, (U,), (f,))


def s_two(G: Hypergraph, e: int, f: int, g: int) -> LinearForm:
    es, fs, gs = G.edge_sets[e], G.edge_sets[f], G.edge_sets[g]
    if not es & fs or not es & gs or es & fs & gs:
        raise InvalidBlockArgs("two block needs e meeting f and g with e&f&g empty")
    return _odd_like(G, e, (), (f, g))


_BLOCKS = {"inc": s_inc, "odd": s_odd, "one": s_one, "two": s_two}


def block(kind: str, G: Hypergraph, *args) -> LinearForm:
    try:
        fn = _BLOCKS[kind]
    except KeyError:
        raise InvalidBlockArgs(f"unknown block kind {kind!r}") from None
    return fn(G, *args)


# --- signed closed walks ------------------------------------------------------------

@dataclass(frozen=True)
class SignedClosedWalk:
    """``v1-e1-v2-...-vk-ek-v1`` with a sign per edge; ``nodes[i]`` lies in ``edges[i-1] & edges[i]``."""

    nodes: tuple
    edges: tuple
    signs: tuple

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(int(v) for v in self.nodes))
        object.__setattr__(self, "edges", tuple(int(e) for e in self.edges))
        signs = tuple(PLUS if s in (1, "+", True) else MINUS if s in (-1, "-") else s for s in self.signs)
        object.__setattr__(self, "signs", signs)

    @property
    def k(self) -> int:
        return len(self.edges)

    @property
    def is_odd(self) -> bool:
        return sum(1 for s in self.signs if s == MINUS) % 2 == 1

    def pattern(self, i: int) -> tuple[int, int, int]:
        k = self.k
        return self.signs[(i - 1) % k], self.signs[i], self.signs[(i + 1) % k]

    def classes(self) -> dict[tuple[int, int, int], list[int]]:
        """Index sets ``I_(a,b,c)``; they partition ``range(k)``."""
        out: dict[tuple[int, int, int], list[int]] = {}
        for i in range(self.k):
            out.setdefault(self.pattern(i), []).append(i)
        return out

    def rotate(self, r: int) -> "SignedClosedWalk":
        r %= self.k
        return SignedClosedWalk(self.nodes[r:] + self.nodes[:r], self.edges[r:] + self.edges[:r],
                                self.signs[r:] + self.signs[:r])

    def reverse(self) -> "SignedClosedWalk":
        # v1-e1-v2-...-ek-v1 reversed is v1-ek-vk-...-e1-v1
        k = self.k
        nodes = (self.nodes[0],) + tuple(self.nodes[k - j] for j in range(1, k))
        edges = tuple(self.edges[k - 1 - j] for j in range(k))
        signs = tuple(self.signs[k - 1 - j] for j in range(k))
        return SignedClosedWalk(nodes, edges, signs)

    def canonical_key(self) -> tuple:
        """Rotation/reversal-invariant key over the (edge, sign) sequence and the nodes."""
        best = None
        for w in (self, self.reverse()):
            for r in range(self.k):
                rw = w.rotate(r)
                key = (tuple(zip(rw.edges, rw.signs)), rw.nodes)
                if best is None or key < best:
                    best = key
        return best

    def __str__(self):
        parts = []
        for v, e, s in zip(self.nodes, self.edges, self.signs):
            parts.append(f"v{v}-e{e}{'+' if s == PLUS else '-'}")
        return "-".join(parts) + f"-v{self.nodes[0]}"


def walk_problems(G: Hypergraph, walk: SignedClosedWalk) -> list[str]:
    k = walk.k
    problems = []
    if k < 3:
        problems.append(f"length {k} < 3")
        return problems
    if len(walk.nodes) != k or len(walk.signs) != k:
        problems.append("nodes, edges and signs must have the same length")
        return problems
    if any(s not in (PLUS, MINUS) for s in walk.signs):
        problems.append("signs must be +1/-1")
    m = G.edge_count
    if any(not 0 <= e < m for e in walk.edges):
        problems.append("edge id out of range")
        return problems
    for i in range(k):
        prev, cur, nxt = walk.edges[i - 1], walk.edges[i], walk.edges[(i + 1) % k]
        if walk.nodes[i] not in G.edge_sets[prev] & G.edge_sets[cur]:
            problems.append(f"v_{i} = {walk.nodes[i]} not in e_{i - 1} & e_{i}")
        if G.edge_sets[prev] & G.edge_sets[cur] & G.edge_sets[nxt]:
            problems.append(f"e_{i - 1} & e_{i} & e_{i + 1} nonempty")
    return problems


def validate_walk(G: Hypergraph, walk: SignedClosedWalk) -> SignedClosedWalk:
    problems = walk_problems(G, walk)
    if problems:
        raise InvalidWalk("invalid signed closed walk: " + "; ".join(problems))
    return walk


def make_walk(G: Hypergraph, nodes, edges, signs) -> SignedClosedWalk:
    return validate_walk(G, SignedClosedWalk(tuple(nodes), tuple(edges), tuple(signs)))


def length_function(G: Hypergraph, walk: SignedClosedWalk) -> LinearForm:
    """Sum of building blocks selected by the sign pattern around each edge."""
    validate_walk(G, walk)
    k = walk.k
    E, V, S = walk.edges, walk.nodes, walk.signs
    total = LinearForm()
    for i in range(k):
        a, b, c = S[i - 1], S[i], S[(i + 1) % k]
        prev, cur, nxt = E[i - 1], E[i], E[(i + 1) % k]
        v_here, v_next = V[i], V[(i + 1) % k]
        if b == PLUS:
            if a == PLUS:
                total = total + s_inc(G, cur, v_here)
            if c == PLUS:
                total = total + s_inc(G, cur, v_next)
            continue
        cap_prev = G.intersection(cur, prev)
        cap_next = G.intersection(cur, nxt)
        if a == MINUS and c == MINUS:
            total = total + s_odd(G, cur, cap_prev, cap_next)
        elif a == MINUS and c == PLUS:
            total = total + s_one(G, cur, cap_prev, nxt)
        elif a == PLUS and c == MINUS:
            total = total + s_one(G, cur, cap_next, prev)
        else:
            total = total + s_two(G, cur, prev, nxt)
    return total


def combined_form(G: Hypergraph, walk: SignedClosedWalk) -> LinearForm:
    """Closed form of the length function with all variable coefficients even."""
    validate_walk(G, walk)
    k = walk.k
    E, V, S = walk.edges, walk.nodes, walk.signs
    nodes: dict[int, int] = {}
    edges: dict[int, int] = {}
    constant = 0

    def add(d, key, c):
        d[key] = d.get(key, 0) + c

    for i in range(k):
        if S[i] == MINUS:
            add(edges, E[i], 2)
            constant += 1
            exclusive = G.edge_sets[E[i]] - G.edge_sets[E[i - 1]] - G.edge_sets[E[(i + 1) % k]]
            for v in exclusive:
                add(nodes, v, -2)
                constant += 2
        else:
            add(edges, E[i], -2)
        if S[i - 1] == PLUS and S[i] == PLUS:
            add(nodes, V[i], 2)
        elif S[i - 1] == MINUS and S[i] == MINUS:
            for v in G.intersection(E[i - 1], E[i]):
                add(nodes, v, -2)
                constant += 2
            constant -= 2
    return _form(nodes, edges, constant)


def _require_odd(walk: SignedClosedWalk):
    if not walk.is_odd:
        raise EvenWalk("walk has an even number of negative edges")


def simple_odd_beta_cycle_cut(G: Hypergraph, walk: SignedClosedWalk) -> Cut:
    _require_odd(walk)
    return Cut(length_function(G, walk), 1, "simple-odd-beta-cycle", (walk,))


def cg_form(G: Hypergraph, walk: SignedClosedWalk) -> Cut:
    """Halved inequality with the odd constant rounded: ``lhs >= (1 - const) / 2``.

    ``const`` is the constant of :func:`combined_form`; the returned form has
    no constant term and integer coefficients.
    """
    _require_odd(walk)
    comb = combined_form(G, walk)
    if comb.constant % 2 != 1 or any(c % 2 for c in comb.node_coeffs.values()) \
            or any(c % 2 for c in comb.edge_coeffs.values()):
        raise AssertionError("combined form lost its parity structure")
    half = LinearForm({v: c // 2 for v, c in comb.node_coeffs.items()},
                      {e: c // 2 for e, c in comb.edge_coeffs.items()}, 0)
    return Cut(half, (1 - comb.constant) // 2, "cg-simple-odd-beta-cycle", (walk,))


def support_hypergraph(G: Hypergraph, walk: SignedClosedWalk) -> tuple[Hypergraph, list[int]]:
    """Sub-hypergraph on the walk's edges; returns it with the original edge ids."""
    ids = sorted(set(walk.edges))
    nodes = sorted(set().union(*(G.edge_sets[e] for e in ids)))
    relabel = {v: i for i, v in enumerate(nodes)}
    sub = Hypergraph(len(nodes), [[relabel[v] for v in G.edges[e]] for e in ids])
    return sub, ids


def cycle_hypergraph_form(G: Hypergraph, walk: SignedClosedWalk) -> LinearForm:
    """Length function written through ``E^-``, ``E^+``, ``S_1``, ``S_2`` (support must be a cycle hypergraph)."""
    validate_walk(G, walk)
    sub, ids = support_hypergraph(G, walk)
    ok, _ = is_cycle_hypergraph(sub)
    if not ok:
        raise NotCycleHypergraph("support hypergraph of the walk is not a cycle hypergraph")
    if len(ids) != walk.k:
        raise NotCycleHypergraph("walk must traverse its support cycle exactly once")
    k = walk.k
    E, S = walk.edges, walk.signs
    e_minus = {E[i] for i in range(k) if S[i] == MINUS}
    e_plus = {E[i] for i in range(k) if S[i] == PLUS}
    cover_minus = set().union(*(G.edge_sets[e] for e in e_minus)) if e_minus else set()
    cover_plus = set().union(*(G.edge_sets[e] for e in e_plus)) if e_plus else set()
    s1 = cover_minus - cover_plus
    s2 = set(walk.nodes) - cover_minus
    nodes: dict[int, int] = {}
    for v in s1:
        nodes[v] = nodes.get(v, 0) - 2
    for v in s2:
        nodes[v] = nodes.get(v, 0) + 2
    edges = {e: 2 for e in e_minus}
    for e in e_plus:
        edges[e] = edges.get(e, 0) - 2
    minus_corners = sum(1 for i in range(k) if S[i - 1] == MINUS and S[i] == MINUS)
    constant = 2 * len(s1) - 2 * minus_corners + len(e_minus)
    return _form(nodes, edges, constant)


def all_flower_cuts(G: Hypergraph, max_neighbors: int = 2) -> list[Cut]:
    """Every flower inequality with at most ``max_neighbors`` neighbors (two-neighbor ones once per unordered pair)."""
    out = []
    for f in range(G.edge_count):
        nbrs = G.neighbors(f)
        for e in nbrs:
            out.append(flower_cut(G, f, (e,)))
        if max_neighbors >= 2:
            for i, e in enumerate(nbrs):
                for g in nbrs[i + 1:]:
                    if not (G.edge_sets[f] & G.edge_sets[e] & G.edge_sets[g]):
                        out.append(flower_cut(G, f, (e, g)))
    return out
