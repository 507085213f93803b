"""Multilinear polynomials, their text format, and Fortet linearization."""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from ..errors import PolynomialSyntaxError, UnknownSense
from ..hypergraph import Hypergraph

SENSES = ("min", "max")
_IDENT = re.compile(r"^[A-Za-z_][A-Za-z0-9_\[\],.]*$")


def _clean_number(c):
    """Keep integers as ``int``; integral floats collapse to ``int`` too."""
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return int(c) if c.denominator == 1 else float(c)
    c = float(c)
    if c.is_integer():
        return int(c)
    return c


@dataclass
class Polynomial:
    """Multilinear polynomial ``constant + sum coef * prod_{v in key} x_v``.

    ``terms`` maps frozensets of variable ids to nonzero coefficients;
    ``names`` gives the identifier of each variable id.
    """

    terms: dict[frozenset, int | float] = field(default_factory=dict)
    constant: int | float = 0
    sense: str = "min"
    names: tuple[str, ...] = ()

    def __post_init__(self):
        if self.sense not in SENSES:
            raise UnknownSense(f"unknown sense {self.sense!r}")
        cleaned = {}
        for key, c in self.terms.items():
            key = frozenset(key)
            if not key:
                self.constant = self.constant + c
                continue
            cleaned[key] = cleaned.get(key, 0) + c
        self.terms = {k: _clean_number(c) for k, c in cleaned.items() if c != 0}
        self.constant = _clean_number(self.constant)
        nvars = 1 + max((max(k) for k in self.terms), default=-1)
        if len(self.names) < nvars:
            self.names = tuple(self.names) + tuple(f"x{i}" for i in range(len(self.names), nvars))
        else:
            self.names = tuple(self.names)

    @property
    def variable_count(self) -> int:
        return len(self.names)

    def degree(self) -> int:
        return max((len(k) for k in self.terms), default=0)

    def evaluate(self, x) -> int | float:
        """Value at a 0/1 (or real) assignment indexed by variable id."""
        total = self.constant
        for key, c in self.terms.items():
            prod = 1
            for v in key:
                prod *= x[v]
                if not prod:
                    break
            total += c * prod
        return total

    def __eq__(self, other):
        return (isinstance(other, Polynomial) and self.sense == other.sense
                and self.constant == other.constant and self.terms == other.terms)


def multiply(p: Mapping[frozenset, int], q: Mapping[frozenset, int]) -> dict[frozenset, int]:
    """Product of two term maps with ``x^2 -> x`` reduction."""
    out: dict[frozenset, int] = {}
    for a, ca in p.items():
        for b, cb in q.items():
            key = a | b
            out[key] = out.get(key, 0) + ca * cb
    return {k: c for k, c in out.items() if c != 0}


# --- text format ------------------------------------------------------------

def _parse_coefficient(tok: str, lineno: int):
    try:
        return int(tok)
    except ValueError:
        pass
    try:
        if "/" in tok:
            return _clean_number(Fraction(tok))
        val = float(tok)
    except (ValueError, ZeroDivisionError):
        raise PolynomialSyntaxError(f"bad coefficient {tok!r}", lineno) from None
    if not math.isfinite(val):
        raise PolynomialSyntaxError(f"non-finite coefficient {tok!r}", lineno)
    return _clean_number(val)


def parse_polynomial(text: str) -> Polynomial:
    """Parse the line format: sense line, optional ``c <const>``, then terms.

    Each term line is ``<coefficient> <var> [<var> ...]``; ``#`` starts a
    comment. Variables get ids in order of first appearance.
    """
    sense = None
    constant = 0
    terms: dict[frozenset, int | float] = {}
    ids: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if sense is None:
            if len(toks) != 1 or toks[0].lower() not in SENSES:
                raise UnknownSense(f"expected 'min' or 'max', got {line!r}", lineno)
            sense = toks[0].lower()
            continue
        if toks[0] == "c":
            if len(toks) != 2:
                raise PolynomialSyntaxError("constant line must be 'c <coefficient>'", lineno)
            constant = constant + _parse_coefficient(toks[1], lineno)
            continue
        coef = _parse_coefficient(toks[0], lineno)
        key = set()
        for name in toks[1:]:
            if not _IDENT.match(name):
                raise PolynomialSyntaxError(f"bad variable name {name!r}", lineno)
            if name not in ids:
                ids[name] = len(ids)
            key.add(ids[name])
        if not key:
            constant = constant + coef
            continue
        k = frozenset(key)
        terms[k] = terms.get(k, 0) + coef
    if sense is None:
        raise UnknownSense("missing sense line", None)
    names = tuple(sorted(ids, key=ids.get))
    return Polynomial(terms, constant, sense, names)


def _format_coefficient(c) -> str:
    if isinstance(c, int):
        return str(c)
    return repr(float(c))


def write_polynomial(poly: Polynomial) -> str:
    """Inverse of :func:`parse_polynomial`.

    Variables are declared with their linear coefficient (possibly ``0``) in
    id order first, so re-parsing reproduces the same variable ids.
    """
    lines = [poly.sense]
    if poly.constant != 0:
        lines.append(f"c {_format_coefficient(poly.constant)}")
    names = poly.names
    for v, name in enumerate(names):
        c = poly.terms.get(frozenset([v]), 0)
        lines.append(f"{_format_coefficient(c)} {name}")
    higher = sorted((k for k in poly.terms if len(k) >= 2), key=lambda k: (len(k), sorted(k)))
    for key in higher:
        vars_ = " ".join(names[v] for v in sorted(key))
        lines.append(f"{_format_coefficient(poly.terms[key])} {vars_}")
    return "\n".join(lines) + "\n"


# --- linearization ------------------------------------------------------------

@dataclass
class Instance:
    """Linearized problem: hypergraph plus profits on nodes and edges."""

    hypergraph: Hypergraph
    node_profit: tuple
    edge_profit: tuple
    constant: int | float = 0
    sense: str = "min"
    name: str = "instance"
    names: tuple[str, ...] = ()

    def __post_init__(self):
        if len(self.node_profit) != self.hypergraph.node_count:
            raise ValueError("node_profit length must equal node_count")
        if len(self.edge_profit) != self.hypergraph.edge_count:
            raise ValueError("edge_profit length must equal edge count")
        for c in list(self.node_profit) + list(self.edge_profit):
            if not math.isfinite(c):
                raise ValueError("profits must be finite")
        if self.sense not in SENSES:
            raise UnknownSense(f"unknown sense {self.sense!r}")

    def objective_vector(self) -> np.ndarray:
        return np.array(list(self.node_profit) + list(self.edge_profit), dtype=float)

    def evaluate(self, x) -> int | float:
        """Polynomial value at a 0/1 node assignment."""
        val = self.constant
        for v, p in enumerate(self.node_profit):
            if p and x[v]:
                val += p
        for e, p in zip(self.hypergraph.edges, self.edge_profit):
            if p and all(x[v] for v in e):
                val += p
        return val

    def to_polynomial(self) -> Polynomial:
        terms = {frozenset([v]): p for v, p in enumerate(self.node_profit) if p}
        for e, p in zip(self.hypergraph.edges, self.edge_profit):
            terms[frozenset(e)] = p
        names = self.names or tuple(f"x{i}" for i in range(self.hypergraph.node_count))
        return Polynomial(terms, self.constant, self.sense, names)


def linearize(poly: Polynomial, name: str = "instance") -> Instance:
    """Fortet linearization: one hyperedge per monomial of degree >= 2."""
    n = poly.variable_count
    node_profit = [0] * n
    edge_keys = []
    for key, c in poly.terms.items():
        if len(key) == 1:
            node_profit[next(iter(key))] = c
        else:
            edge_keys.append(key)
    edge_keys.sort(key=lambda k: (len(k), sorted(k)))
    G = Hypergraph(n, [sorted(k) for k in edge_keys])
    edge_profit = tuple(poly.terms[k] for k in edge_keys)
    return Instance(G, tuple(node_profit), edge_profit, poly.constant, poly.sense, name, poly.names)


def instance_from_profits(G: Hypergraph, node_profit: Iterable, edge_profit: Iterable,
                          constant=0, sense="max", name="instance") -> Instance:
    return Instance(G, tuple(_clean_number(c) for c in node_profit),
                    tuple(_clean_number(c) for c in edge_profit), _clean_number(constant), sense, name)
