"""Seeded instance generators with planted rewrite sites.

Each generator builds random block graphs around the local pattern an
operation needs (two big cliques at a vertex, a triangle between two
cliques, a hub clique with pendant cliques, ...), lists maximum dissociation
sets, and keeps the role assignments that pass the operation's
preconditions.  Graphs stay at or below 14 vertices so the brute-force
dissociation oracle stays cheap.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator

from ..census import attach_clique
from ..dissociation import DissociationCertificate, maximum_dissociation_sets
from ..graph import Graph, block_decomposition, complete_graph
from ..spectral import spectral_radius
from .ops import PERRON_EPS, Op, RewriteSite, triangle_case, PreconditionError

MAX_N = 14
DEFAULT_SEED = 20240601
MAX_SETS = 40


@dataclass(frozen=True)
class Instance:
    graph: Graph
    maxD: DissociationCertificate
    site: RewriteSite

    @property
    def key(self):
        return (self.graph.edges, self.maxD.set, self.site.op,
                tuple(sorted(self.site.vertices.items())), tuple(sorted(self.site.blocks.items())))


def random_block_graph(rng: random.Random, n_max: int, sizes=(2, 3, 4), start: Graph | None = None,
                       avoid: frozenset = frozenset(), steps: int | None = None) -> Graph:
    """Glue random cliques onto ``start`` (default ``K_2``) at vertices not in ``avoid``."""
    g = start if start is not None else complete_graph(2)
    budget = steps if steps is not None else rng.randint(1, 6)
    for _ in range(budget):
        size = rng.choice(sizes)
        if g.n + size - 1 > n_max:
            break
        hosts = [v for v in range(g.n) if v not in avoid]
        g = attach_clique(g, rng.choice(hosts), size)
    return g


def _glue(a: Graph, b: Graph, a_vertex: int, b_vertex: int) -> tuple[Graph, dict]:
    """Identify ``b_vertex`` of ``b`` with ``a_vertex`` of ``a``; return the map for ``b``."""
    mapping, nxt = {}, a.n
    for v in range(b.n):
        if v == b_vertex:
            mapping[v] = a_vertex
        else:
            mapping[v] = nxt
            nxt += 1
    edges = set(a.edges)
    for u, v in b.edges:
        x, y = mapping[u], mapping[v]
        edges.add((min(x, y), max(x, y)))
    return Graph(nxt, frozenset(edges)), mapping


def _sets(g: Graph, rng: random.Random) -> list[frozenset]:
    sets = maximum_dissociation_sets(g, limit=5 * MAX_SETS)
    rng.shuffle(sets)
    return sets[:MAX_SETS]


def _cert(g: Graph, d) -> DissociationCertificate:
    return DissociationCertificate.of(g, d)


# ---------------------------------------------------------------------------
# per-operation site finders: yield candidate Instances for one graph


def _sites_merge_empty(g, dec, sets, x, rng):
    for d in sets:
        for bi, b in enumerate(dec.blocks):
            if b & d:
                continue
            for ci in dec.adjacent_blocks(bi):
                yield Instance(g, _cert(g, d), RewriteSite(Op.P21_MERGE_EMPTY, {}, {"B": bi, "C": ci}))


def _sites_merge_at_cut(g, dec, sets, x, rng):
    for d in sets:
        for u in sorted(d & dec.cut_vertices):
            yield Instance(g, _cert(g, d), RewriteSite(Op.P21_MERGE_AT_CUT, {"u": u}, {}))


def _sites_single_hit(g, dec, sets, x, rng):
    for d in sets:
        good = [i for i, b in enumerate(dec.blocks)
                if len(b & d) == 1 and not (b & d & dec.cut_vertices)]
        for i, j in itertools.combinations(good, 2):
            if len(dec.blocks[i] & dec.blocks[j]) == 1:
                yield Instance(g, _cert(g, d), RewriteSite(Op.P21_MERGE_SINGLE_HIT, {}, {"B1": i, "B2": j}))


def _big_pairs(dec):
    for w, bs in dec.tree_cuts.items():
        for i, j in itertools.permutations(sorted(bs), 2):
            if len(dec.blocks[i]) >= 4 and len(dec.blocks[j]) >= 4:
                yield w, i, j


def _sites_lemma22(g, dec, sets, x, rng):
    for d in sets:
        for w, i, j in _big_pairs(dec):
            if w in d:
                continue
            hm, hn = sorted(dec.blocks[i] & d), sorted(dec.blocks[j] & d)
            if len(hm) != 2 or len(hn) != 2 or set(hn) & dec.cut_vertices:
                continue
            for p, q in itertools.permutations(hm):
                if q in dec.cut_vertices:
                    continue
                for r, s in itertools.permutations(hn):
                    if not (x[p] >= x[r] - PERRON_EPS and x[r] >= x[s] - PERRON_EPS):
                        continue
                    roles = {"p": p, "q": q, "r": r, "s": s, "w": w}
                    blocks = {"K_m": i, "K_n": j}
                    if x[q] >= x[r] - PERRON_EPS and p not in dec.cut_vertices:
                        yield Instance(g, _cert(g, d), RewriteSite(Op.L22A, roles, blocks))
                    if x[r] > x[q] + PERRON_EPS:
                        yield Instance(g, _cert(g, d), RewriteSite(Op.L22B, roles, blocks))


def _sites_lemma23(g, dec, sets, x, rng):
    for d in sets:
        for w, i, j in _big_pairs(dec):
            if w in d:
                continue
            hm, hn = sorted(dec.blocks[i] & d), sorted(dec.blocks[j] & d)
            if len(hm) != 2 or len(hn) != 1 or (set(hm) | set(hn)) & dec.cut_vertices:
                continue
            (r,) = hn
            for p, q in itertools.permutations(hm):
                roles = {"p": p, "q": q, "r": r, "w": w}
                blocks = {"K_m": i, "K_n": j}
                if x[p] >= x[r] - PERRON_EPS:
                    yield Instance(g, _cert(g, d), RewriteSite(Op.L23A, roles, blocks))
                if x[r] > x[p] + PERRON_EPS and x[r] > x[q] + PERRON_EPS:
                    yield Instance(g, _cert(g, d), RewriteSite(Op.L23B, roles, blocks))


def _triangle_sites(g, dec, d, x):
    for ti, t in enumerate(dec.blocks):
        if len(t) != 3 or dec.pendant[ti]:
            continue
        cuts = sorted(t & dec.cut_vertices)
        if len(cuts) != 2:
            continue
        (w,) = t - set(cuts)
        for u, v in itertools.permutations(cuts):
            if x[u] < x[v] - PERRON_EPS:
                continue
            for mi in dec.blocks_at(u):
                for ni in dec.blocks_at(v):
                    if ti in (mi, ni):
                        continue
                    hits = sorted(dec.blocks[ni] & d)
                    if len(hits) != 2:
                        continue
                    for p, q in itertools.permutations(hits):
                        yield {"u": u, "v": v, "w": w, "p": p, "q": q}, {"T": ti, "K_m": mi, "K_n": ni}


def _sites_triangle(g, dec, sets, x, rng, case):
    op = Op.P22_TRIANGLE_CASE1 if case == 1 else Op.P22_TRIANGLE_CASE2
    for d in sets:
        cert = _cert(g, d)
        for roles, blocks in _triangle_sites(g, dec, d, x):
            site = RewriteSite(op, roles, blocks)
            try:
                if triangle_case(g, dec, cert, site) == case:
                    yield Instance(g, cert, site)
            except PreconditionError:
                continue


def _sites_cut_shift(g, dec, sets, x, rng):
    d = sets[0] if sets else frozenset()
    for hi, h in enumerate(dec.blocks):
        cuts = sorted(h & dec.cut_vertices)
        for u, v in itertools.permutations(cuts, 2):
            if x[u] >= x[v] - PERRON_EPS:
                yield Instance(g, _cert(g, d), RewriteSite(Op.CUT_SHIFT, {"u": u, "v": v}, {"H": hi}))


# ---------------------------------------------------------------------------
# graph families


def _family_random(rng):
    return random_block_graph(rng, rng.randint(5, 12), sizes=(2, 2, 3, 3, 4, 5), steps=rng.randint(2, 7))


def _family_two_big(rng):
    m, n = rng.randint(4, 6), rng.randint(4, 6)
    g, _ = _glue(complete_graph(m), complete_graph(n), 0, 0)
    room = MAX_N - g.n
    if room >= 1:
        g = random_block_graph(rng, MAX_N, sizes=(2, 2, 3, 3, 4), start=g, steps=rng.randint(0, 3))
    return g


def _family_two_big_deep(rng):
    # a chosen vertex of K_m that is also a cut vertex: hang K2 - (cliques)
    # off it so that its neighbour stays out of every maximum set
    m = rng.randint(4, 5)
    n = rng.randint(m, 6)
    g, _ = _glue(complete_graph(m), complete_graph(n), 0, 0)
    p = rng.randint(1, m - 1)
    g = attach_clique(g, p, 2)
    a = g.n - 1
    for _ in range(rng.randint(1, 2)):
        size = rng.choice((3, 3, 4))
        if g.n + size - 1 <= MAX_N:
            g = attach_clique(g, a, size)
    return random_block_graph(rng, MAX_N, sizes=(2, 3), start=g, steps=rng.randint(0, 1))


def _family_triangle(rng):
    m, n = rng.randint(3, 5), rng.randint(3, 5)
    tri = complete_graph(3)
    g, _ = _glue(tri, complete_graph(m), 0, 0)
    g, _ = _glue(g, complete_graph(n), 1, 0)
    # vertex 2 of the triangle must stay a non-cut vertex
    return random_block_graph(rng, MAX_N, sizes=(2, 3, 3, 4), start=g, avoid=frozenset({2}),
                              steps=rng.randint(0, 3))


def _family_hub(rng):
    n = rng.randint(4, 7)
    g = complete_graph(n)
    hosts = rng.sample(range(n), rng.randint(2, n - 2))
    for h in hosts:
        for _ in range(rng.randint(1, 2)):
            size = rng.choice((2, 3))
            if g.n + size - 1 <= MAX_N:
                g = attach_clique(g, h, size)
    return g


_FINDERS = {
    Op.P21_MERGE_EMPTY: (_family_random, _sites_merge_empty),
    Op.P21_MERGE_AT_CUT: (_family_random, _sites_merge_at_cut),
    Op.P21_MERGE_SINGLE_HIT: (_family_random, _sites_single_hit),
    Op.L22A: (_family_two_big, _sites_lemma22),
    Op.L22B: (_family_two_big_deep, _sites_lemma22),
    Op.L23A: (_family_two_big, _sites_lemma23),
    Op.L23B: (_family_two_big, _sites_lemma23),
    Op.P22_TRIANGLE_CASE1: (_family_triangle, lambda *a: _sites_triangle(*a, case=1)),
    Op.P22_TRIANGLE_CASE2: (_family_triangle, lambda *a: _sites_triangle(*a, case=2)),
    Op.CUT_SHIFT: (_family_hub, _sites_cut_shift),
}


def generate_instances(op: Op | str, count: int, seed: int = DEFAULT_SEED,
                       max_graphs: int = 20000, per_graph: int = 3) -> Iterator[Instance]:
    """Yield ``count`` distinct instances of ``op`` whose preconditions hold.

    At most ``per_graph`` instances are taken from any one random graph.
    Raises ``RuntimeError`` if ``max_graphs`` random graphs do not suffice.
    """
    op = Op(op)
    family, finder = _FINDERS[op]
    rng = random.Random(f"{seed}:{op.value}")
    seen = set()
    made = 0
    for _ in range(max_graphs):
        g = family(rng)
        dec = block_decomposition(g)
        x = spectral_radius(g).perron
        sets = _sets(g, rng)
        found = [inst for inst in finder(g, dec, sets, x, rng) if inst.site.op is op]
        rng.shuffle(found)
        taken = 0
        for inst in found:
            if inst.key in seen:
                continue
            seen.add(inst.key)
            yield inst
            made += 1
            taken += 1
            if made >= count:
                return
            if taken >= per_graph:
                break
    raise RuntimeError(f"only {made} instances of {op.value} found in {max_graphs} graphs")
