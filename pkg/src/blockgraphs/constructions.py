"""Builders for block graphs whose blocks all share one central vertex."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from .dissociation import dissociation_dp
from .graph import Graph, GraphError, complete_graph


class SpecError(ValueError):
    """Malformed block spec text or an invalid spec."""


@dataclass(frozen=True)
class BlockSpec:
    """Ordered ``(clique_size, multiplicity)`` terms, e.g. ``K3^2 + K6``."""

    terms: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for size, mult in self.terms:
            if size < 2:
                raise SpecError(f"clique size {size} < 2")
            if mult < 1:
                raise SpecError(f"multiplicity {mult} < 1")

    def render(self) -> str:
        return " + ".join(f"K{s}" if d == 1 else f"K{s}^{d}" for s, d in self.terms)

    def block_sizes(self) -> list[int]:
        return sorted(s for s, d in self.terms for _ in range(d))

    @property
    def vertex_count(self) -> int:
        return 1 + sum(d * (s - 1) for s, d in self.terms)


_TOKEN = re.compile(r"\s*(?:(K)|(\d+)|(\^)|(\+))")


def parse_block_spec(text: str) -> BlockSpec:
    """Parse ``spec := term ('+' term)*``, ``term := 'K' INT ('^' INT)?``."""
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            off = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise SpecError(f"unexpected character {text[off]!r} at offset {off}")
        kind = m.lastindex
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append((0, "", len(text)))

    terms = []
    i = 0

    def expect(kind: int, what: str):
        nonlocal i
        k, val, off = tokens[i]
        if k != kind:
            raise SpecError(f"expected {what} at offset {off}")
        i += 1
        return val

    while True:
        expect(1, "'K'")
        size = int(expect(2, "clique size"))
        mult = 1
        if tokens[i][0] == 3:
            i += 1
            mult = int(expect(2, "multiplicity"))
        if size < 2:
            raise SpecError(f"clique size {size} < 2")
        if mult < 1:
            raise SpecError(f"multiplicity {mult} < 1")
        terms.append((size, mult))
        if tokens[i][0] == 4:
            i += 1
            continue
        if tokens[i][0] != 0:
            raise SpecError(f"expected '+' or end of input at offset {tokens[i][2]}")
        break
    return BlockSpec(tuple(terms))


def build_central(spec: BlockSpec) -> Graph:
    """Cliques glued at vertex 0, in the order the spec lists them."""
    if not spec.terms:
        raise SpecError("empty block spec")
    edges = set()
    nxt = 1
    for size, mult in spec.terms:
        for _ in range(mult):
            members = [0] + list(range(nxt, nxt + size - 1))
            nxt += size - 1
            edges.update(itertools.combinations(members, 2))
    return Graph(nxt, frozenset(edges))


def feasible_phi_range(k: int) -> tuple[int, int]:
    """Dissociation numbers realised by connected block graphs on ``k`` vertices."""
    if k < 2:
        raise GraphError("feasible_phi_range needs k >= 2")
    if k <= 3:
        return (2, 2)
    return (2, k - 1)


def extremal_spec(k: int, phi: int) -> BlockSpec:
    lo, hi = feasible_phi_range(k)
    if not lo <= phi <= hi:
        raise GraphError(f"no block graph on {k} vertices has dissociation number {phi}")
    big = k - phi + 2
    if phi == 2:
        return BlockSpec(((k, 1),))
    if phi % 2 == 0:
        terms = [(3, (phi - 2) // 2), (big, 1)]
    else:
        terms = [(2, 1), (3, (phi - 3) // 2), (big, 1)]
    if big == 3:  # the big clique is itself a triangle
        terms = [t for t in terms if t[0] != 3] + [(3, sum(d for s, d in terms if s == 3))]
    return BlockSpec(tuple(t for t in terms if t[1] > 0))


def build_extremal(k: int, phi: int) -> Graph:
    """The maximiser candidate: triangles, an optional pendant edge and one big clique at a centre."""
    if phi == 2:
        g = complete_graph(k)
    else:
        g = build_central(extremal_spec(k, phi))
    got = dissociation_dp(g).phi
    if got != phi or g.n != k:
        raise AssertionError(f"extremal builder produced phi={got}, n={g.n} for ({k}, {phi})")
    return g
