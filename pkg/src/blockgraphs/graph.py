"""Simple undirected graphs, block decomposition and canonical forms.

Vertices are dense integers ``0..n-1``.  A :class:`Graph` is immutable; every
operation that "changes" a graph returns a new one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

GENERIC_ISO_CAP = 8


class GraphError(ValueError):
    """Invalid graph data or a graph that violates an operation's precondition."""


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise GraphError(f"negative vertex count {self.n}")
        for e in self.edges:
            u, v = e
            if not (0 <= u < v < self.n):
                raise GraphError(f"bad edge {e!r} for n={self.n}")

    def __repr__(self):
        return f"Graph(n={self.n}, edges={sorted(self.edges)})"

    @cached_property
    def adj(self) -> tuple[frozenset, ...]:
        nbrs = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def adj_mask(self) -> tuple[int, ...]:
        return tuple(sum(1 << w for w in s) for s in self.adj)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self.edges

    @property
    def m(self) -> int:
        return len(self.edges)

    def adjacency_matrix(self, dtype=float) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=dtype)
        if self.edges:
            idx = np.array(sorted(self.edges))
            a[idx[:, 0], idx[:, 1]] = 1
            a[idx[:, 1], idx[:, 0]] = 1
        return a

    @cached_property
    def is_connected(self) -> bool:
        if self.n == 0:
            return False
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in self.adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def add_edges(self, pairs: Iterable[tuple[int, int]]) -> Graph:
        new = set(self.edges)
        for u, v in pairs:
            if u != v:
                new.add(_norm(u, v))
        return Graph(self.n, frozenset(new))

    def remove_edges(self, pairs: Iterable[tuple[int, int]]) -> Graph:
        drop = {_norm(u, v) for u, v in pairs}
        return Graph(self.n, frozenset(self.edges - drop))

    def complete_on(self, vertices: Iterable[int]) -> Graph:
        """Add every missing edge inside ``vertices``."""
        return self.add_edges(itertools.combinations(sorted(set(vertices)), 2))

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        return Graph(self.n, frozenset(_norm(perm[u], perm[v]) for u, v in self.edges))

    def induced_degree(self, vertices: Iterable[int]) -> dict[int, int]:
        s = set(vertices)
        return {v: len(self.adj[v] & s) for v in sorted(s)}


def from_edge_list(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Validate an edge list and build a :class:`Graph`.

    Connectivity is not required.  Raises :class:`GraphError` on
    out-of-range endpoints, self-loops and duplicate edges.
    """
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    seen = set()
    for e in edges:
        if len(e) != 2:
            raise GraphError(f"edge {e!r} is not a pair")
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        key = _norm(u, v)
        if key in seen:
            raise GraphError(f"duplicate edge ({key[0]}, {key[1]})")
        seen.add(key)
    return Graph(n, frozenset(seen))


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset(itertools.combinations(range(n), 2)))


def path_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, frozenset((0, i) for i in range(1, leaves + 1)))


def cycle_graph(n: int) -> Graph:
    return Graph(n, frozenset(_norm(i, (i + 1) % n) for i in range(n)))


# ---------------------------------------------------------------------------
# Block decomposition


@dataclass(frozen=True)
class BlockDecomposition:
    """Blocks, cut vertices and the block-cut tree of a connected graph.

    ``tree_blocks[b]`` lists the cut vertices of block ``b`` and
    ``tree_cuts[v]`` the blocks containing cut vertex ``v``; together they are
    the bipartite adjacency of the block-cut tree.
    """

    graph: Graph
    blocks: tuple[frozenset, ...]
    cut_vertices: frozenset
    pendant: tuple[bool, ...]
    tree_blocks: tuple[frozenset, ...]
    tree_cuts: dict

    def blocks_at(self, v: int) -> list[int]:
        """Indices of blocks containing ``v`` (the block neighbourhood of a cut vertex)."""
        return [i for i, b in enumerate(self.blocks) if v in b]

    def block_index(self, vertices: Iterable[int]) -> int:
        """Index of the block whose vertex set is exactly ``vertices``."""
        target = frozenset(vertices)
        for i, b in enumerate(self.blocks):
            if b == target:
                return i
        raise GraphError(f"{sorted(target)} is not a block")

    def block_sizes(self) -> list[int]:
        return sorted(len(b) for b in self.blocks)

    def adjacent_blocks(self, i: int) -> list[int]:
        out = set()
        for c in self.tree_blocks[i]:
            out.update(self.tree_cuts[c])
        out.discard(i)
        return sorted(out)


def block_decomposition(g: Graph) -> BlockDecomposition:
    """Biconnected components by the DFS low-point method (iterative)."""
    if not g.is_connected:
        raise GraphError("block decomposition needs a connected graph")
    n = g.n
    if n == 1:
        return BlockDecomposition(g, (frozenset({0}),), frozenset(), (False,), (frozenset(),), {})

    disc = [-1] * n
    low = [0] * n
    adj = [sorted(s) for s in g.adj]
    blocks: list[frozenset] = []
    edge_stack: list[tuple[int, int]] = []
    timer = 0

    disc[0] = low[0] = timer
    timer += 1
    stack = [(0, -1, iter(adj[0]))]
    while stack:
        u, parent, it = stack[-1]
        advanced = False
        for w in it:
            if disc[w] == -1:
                edge_stack.append((u, w))
                disc[w] = low[w] = timer
                timer += 1
                stack.append((w, u, iter(adj[w])))
                advanced = True
                break
            if w != parent and disc[w] < disc[u]:
                edge_stack.append((u, w))
                low[u] = min(low[u], disc[w])
        if advanced:
            continue
        stack.pop()
        if stack:
            p = stack[-1][0]
            low[p] = min(low[p], low[u])
            if low[u] >= disc[p]:
                comp = set()
                while True:
                    a, b = edge_stack.pop()
                    comp.update((a, b))
                    if (a, b) == (p, u):
                        break
                blocks.append(frozenset(comp))

    blocks.sort(key=lambda b: sorted(b))
    count = [0] * n
    for b in blocks:
        for v in b:
            count[v] += 1
    cuts = frozenset(v for v in range(n) if count[v] >= 2)
    tree_blocks = tuple(frozenset(b & cuts) for b in blocks)
    tree_cuts = {v: frozenset(i for i, b in enumerate(blocks) if v in b) for v in sorted(cuts)}
    multi = len(blocks) >= 2
    pendant = tuple(multi and len(tb) <= 1 for tb in tree_blocks)
    return BlockDecomposition(g, tuple(blocks), cuts, pendant, tree_blocks, tree_cuts)


def is_block_graph(g: Graph) -> bool:
    dec = block_decomposition(g)
    for b in dec.blocks:
        s = len(b)
        inside = sum(1 for u, v in g.edges if u in b and v in b)
        if inside != s * (s - 1) // 2:
            return False
    return True


# ---------------------------------------------------------------------------
# Canonical codes


def _tree_centroids(nodes: list, nbrs: dict) -> list:
    total = len(nodes)
    if total == 1:
        return list(nodes)
    root = nodes[0]
    order, parent = [root], {root: None}
    for x in order:
        for y in nbrs[x]:
            if y != parent[x]:
                parent[y] = x
                order.append(y)
    size = {}
    for x in reversed(order):
        size[x] = 1 + sum(size[y] for y in nbrs[x] if y != parent[x])
    best, out = total + 1, []
    for x in order:
        heaviest = total - size[x]
        for y in nbrs[x]:
            if y != parent[x]:
                heaviest = max(heaviest, size[y])
        if heaviest < best:
            best, out = heaviest, [x]
        elif heaviest == best:
            out.append(x)
    return out


def _encode_rooted(root, nbrs: dict, label: dict) -> str:
    # iterative post-order; recursion depth is not a concern at our sizes but
    # this keeps it safe for long chains
    parent = {root: None}
    order = [root]
    for x in order:
        for y in nbrs[x]:
            if y != parent[x]:
                parent[y] = x
                order.append(y)
    enc = {}
    for x in reversed(order):
        kids = sorted(enc[y] for y in nbrs[x] if y != parent[x])
        enc[x] = label[x] + "(" + "".join(kids) + ")"
    return enc[root]


def _block_tree_code(g: Graph) -> bytes:
    dec = block_decomposition(g)
    if g.n == 1:
        return b"B:K1"
    nodes, nbrs, label = [], {}, {}
    for i, b in enumerate(dec.blocks):
        key = ("b", i)
        nodes.append(key)
        label[key] = f"K{len(b)}"
        nbrs[key] = [("c", c) for c in sorted(dec.tree_blocks[i])]
    for c, bs in dec.tree_cuts.items():
        key = ("c", c)
        nodes.append(key)
        label[key] = "c"
        nbrs[key] = [("b", i) for i in sorted(bs)]
    codes = [_encode_rooted(r, nbrs, label) for r in _tree_centroids(nodes, nbrs)]
    return ("B:" + min(codes)).encode("ascii")


@lru_cache(maxsize=None)
def _perm_table(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.intp).reshape(-1, n)


def _brute_code(g: Graph) -> bytes:
    n = g.n
    if n > GENERIC_ISO_CAP:
        raise GraphError(f"generic canonical form is capped at {GENERIC_ISO_CAP} vertices (got {n})")
    if n <= 1:
        return f"G{n}:0".encode("ascii")
    a = g.adjacency_matrix(dtype=np.int64)
    perms = _perm_table(n)
    iu, ju = np.triu_indices(n, 1)
    bits = a[perms[:, iu], perms[:, ju]]
    weights = 1 << np.arange(bits.shape[1] - 1, -1, -1, dtype=np.int64)
    best = int((bits @ weights).max())
    return f"G{n}:{best}".encode("ascii")


def canonical_code(g: Graph, method: str = "auto") -> bytes:
    """Isomorphism-invariant byte string for a connected graph.

    ``method="tree"`` canonicalizes the block-cut tree (block graphs only),
    ``method="brute"`` takes the maximum adjacency bit-string over all vertex
    permutations (at most 8 vertices), and ``"auto"`` picks the tree method
    for block graphs and brute force otherwise.
    """
    if not g.is_connected:
        raise GraphError("canonical_code needs a connected graph")
    if method == "auto":
        method = "tree" if is_block_graph(g) else "brute"
    if method == "tree":
        if not is_block_graph(g):
            raise GraphError("block-cut tree code requested for a non-block graph")
        return _block_tree_code(g)
    if method == "brute":
        return _brute_code(g)
    raise ValueError(f"unknown method {method!r}")


def is_isomorphic(g1: Graph, g2: Graph) -> bool:
    if g1.n != g2.n or g1.m != g2.m:
        return False
    if sorted(map(len, g1.adj)) != sorted(map(len, g2.adj)):
        return False
    return canonical_code(g1) == canonical_code(g2)


def _check_perm(n: int, p: Sequence[int]) -> None:
    if len(p) != n:
        raise GraphError(f"permutation has length {len(p)}, graph has {n} vertices")
    if sorted(p) != list(range(n)):
        raise GraphError("mapping is not a bijection on 0..n-1")


def permutation_matrix(p: Sequence[int]) -> np.ndarray:
    """Matrix ``P`` with ``P[p[v], v] = 1``, so that ``(P x)[p[v]] = x[v]``."""
    n = len(p)
    _check_perm(n, p)
    m = np.zeros((n, n))
    m[list(p), list(range(n))] = 1.0
    return m


def check_automorphism(g: Graph, p: Sequence[int]) -> bool:
    """True iff ``uv`` is an edge exactly when ``p[u]p[v]`` is."""
    _check_perm(g.n, p)
    return all(_norm(p[u], p[v]) in g.edges for u, v in g.edges)


# ---------------------------------------------------------------------------
# Text formats


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines += [f"{u} {v}" for u, v in sorted(g.edges)]
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    """Parse the ``n m`` header + ``u v`` lines format (``u < v``)."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise GraphError("empty edge-list input")
    head = lines[0].split()
    if len(head) != 2:
        raise GraphError("line 1: expected 'n m'")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise GraphError("line 1: non-integer header") from None
    if len(lines) - 1 != m:
        raise GraphError(f"header announces {m} edges, found {len(lines) - 1}")
    edges = []
    for lineno, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected 'u v'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"line {lineno}: non-integer vertex") from None
        if not u < v:
            raise GraphError(f"line {lineno}: expected u < v, got {u} {v}")
        edges.append((u, v))
    return from_edge_list(n, edges)


def read_edge_list(path) -> Graph:
    return parse_edge_list(Path(path).read_text(encoding="ascii"))


def write_edge_list(g: Graph, path) -> None:
    Path(path).write_text(format_edge_list(g), encoding="ascii", newline="\n")


def to_dot(g: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    lines += [f"  {v};" for v in range(g.n)]
    lines += [f"  {u} -- {v};" for u, v in sorted(g.edges)]
    lines.append("}")
    return "\n".join(lines) + "\n"
