"""Dissociation number, independence number and vertex path covers.

A dissociation set induces a subgraph of maximum degree at most one.  Two
exact solvers are provided: a subset search for arbitrary graphs and a
dynamic program over the block-cut tree of a block graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .graph import Graph, GraphError, block_decomposition, is_block_graph

BRUTE_CAP = 26
COVER_CAP = 22
NEG = -(10**9)


@dataclass(frozen=True)
class DissociationCertificate:
    set: frozenset
    phi: int
    induced_degrees: dict

    @classmethod
    def of(cls, g: Graph, vertices: Iterable[int]) -> DissociationCertificate:
        s = frozenset(vertices)
        return cls(s, len(s), g.induced_degree(s))

    def is_valid(self) -> bool:
        return self.phi == len(self.set) and all(d <= 1 for d in self.induced_degrees.values())


@dataclass(frozen=True)
class CoverReport:
    n: int
    alpha: int
    phi: int
    psi2: int
    psi3: int


def _popcount(x: int) -> int:
    return bin(x).count("1")


def is_dissociation_set(g: Graph, d: Iterable[int]) -> bool:
    d = set(d)
    for v in d:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range 0..{g.n - 1}")
    return all(len(g.adj[v] & d) <= 1 for v in d)


def dissociation_brute(g: Graph) -> DissociationCertificate:
    """Maximum dissociation set by branch and bound over vertices in index order.

    Vertices are tried "include first", so the first maximum set found is the
    lexicographically smallest one.
    """
    n = g.n
    if n > BRUTE_CAP:
        raise GraphError(f"dissociation_brute is capped at {BRUTE_CAP} vertices (got {n})")
    adj = g.adj_mask
    best = [-1, 0]

    def addable(v: int, chosen: int) -> bool:
        hit = adj[v] & chosen
        if hit & (hit - 1):
            return False
        return not hit or not (adj[hit.bit_length() - 1] & chosen)

    def search(i: int, chosen: int, size: int) -> None:
        if i == n:
            if size > best[0]:
                best[0], best[1] = size, chosen
            return
        room = sum(1 for j in range(i, n) if addable(j, chosen))
        if size + room <= best[0]:
            return
        if addable(i, chosen):
            search(i + 1, chosen | (1 << i), size + 1)
        search(i + 1, chosen, size)

    search(0, 0, 0)
    mask = best[1]
    return DissociationCertificate.of(g, (v for v in range(n) if mask >> v & 1))


# ---------------------------------------------------------------------------
# Block-graph dynamic program
#
# For a vertex v and the blocks hanging below it, f[v] holds the best count
# for three states: 0 = v not chosen, 1 = v chosen with no chosen neighbour
# below, 2 = v chosen with exactly one chosen neighbour below.


def _rooted_blocks(g: Graph):
    dec = block_decomposition(g)
    blocks = [sorted(b) for b in dec.blocks]
    at = {v: [] for v in range(g.n)}
    for i, b in enumerate(blocks):
        for v in b:
            at[v].append(i)
    root = 0
    children = {root: list(at[root])}
    block_parent = {}
    order = [root]
    for v in order:
        for bi in children[v]:
            block_parent[bi] = v
            for w in blocks[bi]:
                if w != v:
                    children[w] = [c for c in at[w] if c != bi]
                    order.append(w)
    return root, blocks, children, block_parent, order


def dissociation_dp(g: Graph) -> DissociationCertificate:
    """Maximum dissociation set of a connected block graph in linear time."""
    if not is_block_graph(g):
        raise GraphError("dissociation_dp needs a connected block graph")
    if g.n == 1:
        return DissociationCertificate.of(g, [0])
    root, blocks, children, block_parent, order = _rooted_blocks(g)
    f: dict[int, tuple[int, int, int]] = {}
    # per block: (value_out, choice_out, value_in0, value_in1, choice_in1)
    blk: dict[int, tuple] = {}

    for v in reversed(order):
        out_sum = in0_sum = 0
        best_gain, best_block = NEG, None
        for bi in children[v]:
            others = [w for w in blocks[bi] if w != block_parent[bi]]
            base = sum(f[w][0] for w in others)
            # one chosen vertex: it may keep one chosen neighbour below
            single = [(max(f[w][1], f[w][2]) - f[w][0], w) for w in others]
            # two chosen vertices: adjacent to each other, none below
            lift = sorted(((f[w][1] - f[w][0], w) for w in others), key=lambda t: (-t[0], t[1]))
            options = [(base, ())]
            gain, w = max(single, key=lambda t: (t[0], -t[1]))
            options.append((base + gain, (w,)))
            if len(lift) >= 2:
                options.append((base + lift[0][0] + lift[1][0], (lift[0][1], lift[1][1])))
            val_out, choice_out = max(options, key=lambda t: t[0])
            g1, w1 = lift[0]
            blk[bi] = (val_out, choice_out, base, base + g1, w1)
            out_sum += val_out
            in0_sum += base
            if g1 > best_gain:
                best_gain, best_block = g1, bi
        f0 = out_sum
        f1 = 1 + in0_sum
        f2 = 1 + in0_sum + best_gain if best_block is not None else NEG
        f[v] = (f0, f1, f2)
        blk[("best", v)] = best_block

    chosen = set()
    state0 = max(range(3), key=lambda s: (f[root][s], -s))
    stack = [(root, state0)]
    while stack:
        v, s = stack.pop()
        if s:
            chosen.add(v)
        special = blk[("best", v)] if s == 2 else None
        for bi in children[v]:
            val_out, choice_out, _, _, w1 = blk[bi]
            others = [w for w in blocks[bi] if w != block_parent[bi]]
            for w in others:
                if s == 0:
                    if w in choice_out and len(choice_out) == 1:
                        ws = 1 if f[w][1] >= f[w][2] else 2
                    elif w in choice_out:
                        ws = 1
                    else:
                        ws = 0
                elif bi == special and w == w1:
                    ws = 1
                else:
                    ws = 0
                stack.append((w, ws))
    cert = DissociationCertificate.of(g, chosen)
    if cert.phi != f[root][state0] or not cert.is_valid():
        raise AssertionError("dissociation DP traceback is inconsistent")
    return cert


# ---------------------------------------------------------------------------
# alpha, psi_2, psi_3


def independence_number(g: Graph) -> int:
    adj = g.adj_mask

    def mis(avail: int) -> int:
        if not avail:
            return 0
        # a vertex of degree <= 1 inside avail can always be taken
        v, deg = -1, -1
        rest = avail
        while rest:
            low = rest & -rest
            u = low.bit_length() - 1
            rest ^= low
            d = _popcount(adj[u] & avail)
            if d <= 1:
                return 1 + mis(avail & ~(adj[u] | low))
            if d > deg:
                v, deg = u, d
        bit = 1 << v
        return max(mis(avail & ~bit), 1 + mis(avail & ~(adj[v] | bit)))

    return mis((1 << g.n) - 1)


def three_paths(g: Graph) -> list[int]:
    """Every path on three vertices, as a bitmask of its vertex set."""
    out = set()
    for b in range(g.n):
        nb = sorted(g.adj[b])
        for i, a in enumerate(nb):
            for c in nb[i + 1:]:
                out.add((1 << a) | (1 << b) | (1 << c))
    return sorted(out)


def min_three_path_cover(g: Graph) -> int:
    """Smallest vertex set meeting every 3-vertex path (bounded search tree)."""
    paths = three_paths(g)

    def hits(budget: int, cover: int) -> bool:
        for p in paths:
            if not p & cover:
                if budget == 0:
                    return False
                rest = p
                while rest:
                    low = rest & -rest
                    rest ^= low
                    if hits(budget - 1, cover | low):
                        return True
                return False
        return True

    k = 0
    while not hits(k, 0):
        k += 1
    return k


def cover_report(g: Graph) -> CoverReport:
    if g.n > COVER_CAP:
        raise GraphError(f"cover_report is capped at {COVER_CAP} vertices (got {g.n})")
    alpha = independence_number(g)
    phi = dissociation_brute(g).phi
    psi3 = min_three_path_cover(g)
    if psi3 + phi != g.n:
        raise AssertionError(f"psi3={psi3} and phi={phi} do not sum to n={g.n}")
    return CoverReport(n=g.n, alpha=alpha, phi=phi, psi2=g.n - alpha, psi3=psi3)


def repair_pendant(g: Graph, d: Iterable[int], block: Iterable[int]) -> frozenset:
    """Rewrite a maximum dissociation set so it meets a pendant clique twice.

    Works for pendant blocks on at least three vertices: the block's chosen
    vertices and its cut vertex are swapped out for two interior vertices,
    which never shrinks the set.  Pendant K2 blocks are rejected; in a star
    no maximum set contains both ends of an edge.
    """
    d = set(d)
    block = set(block)
    dec = block_decomposition(g)
    bi = dec.block_index(block)
    if not dec.pendant[bi]:
        raise GraphError("repair_pendant needs a pendant block")
    if len(block) < 3:
        raise GraphError("repair_pendant needs a block on at least 3 vertices")
    if len(d & block) == 2:
        return frozenset(d)
    interior = sorted(block - dec.tree_blocks[bi])
    trial = (d - block) | set(interior[:2])
    if len(trial) < len(d) or not is_dissociation_set(g, trial):
        raise AssertionError("pendant-block repair lost size")
    return frozenset(trial)


def maximum_dissociation_sets(g: Graph, limit: int | None = None) -> list[frozenset]:
    """All maximum dissociation sets (first ``limit`` in lexicographic order)."""
    if g.n > BRUTE_CAP:
        raise GraphError(f"maximum_dissociation_sets is capped at {BRUTE_CAP} vertices")
    target = dissociation_brute(g).phi
    n, adj = g.n, g.adj_mask
    out: list[frozenset] = []

    def addable(v: int, chosen: int) -> bool:
        hit = adj[v] & chosen
        if hit & (hit - 1):
            return False
        return not hit or not (adj[hit.bit_length() - 1] & chosen)

    def search(i: int, chosen: int, size: int) -> bool:
        if size == target:
            out.append(frozenset(v for v in range(n) if chosen >> v & 1))
            return limit is not None and len(out) >= limit
        if i == n:
            return False
        if size + sum(1 for j in range(i, n) if addable(j, chosen)) < target:
            return False
        if addable(i, chosen) and search(i + 1, chosen | (1 << i), size + 1):
            return True
        return search(i + 1, chosen, size)

    search(0, 0, 0)
    return out
