"""Isomorph-free enumeration of connected block graphs and the extremal check.

Block graphs on ``k`` vertices are grown from ``K1`` by gluing a new clique
at an existing vertex; every block graph arises this way because removing
the private vertices of a pendant block leaves a smaller block graph.
Classes are deduplicated by the block-cut tree code.
"""

from __future__ import annotations

import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

from .constructions import build_extremal, feasible_phi_range
from .dissociation import dissociation_brute, dissociation_dp
from .graph import Graph, GraphError, block_decomposition, canonical_code
from .spectral import DEFAULT_TOL, spectral_radius

MAX_K = 10
DEFAULT_MARGIN = 1e-9


@dataclass(frozen=True)
class CensusEntry:
    canonical: bytes
    graph: Graph
    phi: int
    rho: float
    is_extremal: bool

    def to_json(self) -> dict:
        return {
            "canonical": self.canonical.hex(),
            "n": self.graph.n,
            "edges": [list(e) for e in sorted(self.graph.edges)],
            "phi": self.phi,
            "rho": float(f"{self.rho:.12g}"),
            "is_extremal": self.is_extremal,
        }


def attach_clique(g: Graph, v: int, size: int) -> Graph:
    """Glue a new ``K_size`` to ``g`` at vertex ``v``."""
    members = [v] + list(range(g.n, g.n + size - 1))
    return Graph(g.n + size - 1, g.edges | frozenset(itertools.combinations(sorted(members), 2)))


@lru_cache(maxsize=None)
def _classes(k: int) -> dict:
    if k == 1:
        return {canonical_code(Graph(1)): Graph(1)}
    out = {}
    for size in range(2, k + 1):
        for code, g in sorted(_classes(k - size + 1).items()):
            for v in range(g.n):
                h = attach_clique(g, v, size)
                c = canonical_code(h, method="tree")
                if c not in out:
                    out[c] = h
    return out


def block_graph_classes(k: int) -> dict:
    """``{canonical code: representative}`` for connected block graphs on ``k`` vertices."""
    if not 1 <= k <= MAX_K:
        raise GraphError(f"enumeration supports 1 <= k <= {MAX_K} (got {k})")
    return dict(sorted(_classes(k).items()))


def _analyse(item):
    code, g, tol = item
    phi = dissociation_dp(g).phi
    rho = spectral_radius(g, tol).rho if g.n >= 2 else 0.0
    return code, phi, rho


def _map(items, workers):
    if workers is None or workers <= 1 or len(items) < 64:
        return [_analyse(it) for it in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_analyse, items, chunksize=32))


@lru_cache(maxsize=None)
def _extremal_code(k: int, phi: int):
    lo, hi = feasible_phi_range(k)
    if not lo <= phi <= hi:
        return None
    return canonical_code(build_extremal(k, phi))


def enumerate_block_graphs(k: int, phi: int | None = None, workers: int | None = 1,
                           tol: float = DEFAULT_TOL) -> Iterator[CensusEntry]:
    """One :class:`CensusEntry` per class, in canonical-code order."""
    classes = block_graph_classes(k)
    results = _map([(c, g, tol) for c, g in classes.items()], workers)
    for code, p, rho in results:
        if phi is not None and p != phi:
            continue
        ext = k >= 2 and _extremal_code(k, p) == code
        yield CensusEntry(code, classes[code], p, rho, ext)


def brute_force_block_graph_count(k: int) -> int:
    """Classes found by filtering every labelled graph on ``k`` vertices (k <= 6)."""
    from .graph import is_block_graph

    if k > 6:
        raise GraphError("brute-force filter is limited to k <= 6")
    pairs = list(itertools.combinations(range(k), 2))
    codes = set()
    for mask in range(1 << len(pairs)):
        g = Graph(k, frozenset(p for i, p in enumerate(pairs) if mask >> i & 1))
        if g.is_connected and is_block_graph(g):
            codes.add(canonical_code(g, method="brute"))
    return len(codes)


# ---------------------------------------------------------------------------
# Extremal search


@dataclass
class StratumResult:
    phi: int
    count: int
    max_rho: float | None
    maximizers: list = field(default_factory=list)
    matches_B: bool = False
    unique: bool = False
    ties: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.count == 0 or (self.unique and self.matches_B)

    def to_json(self) -> dict:
        return {
            "phi": self.phi,
            "count": self.count,
            "max_rho": None if self.max_rho is None else float(f"{self.max_rho:.12g}"),
            "maximizers": [c.hex() for c in self.maximizers],
            "matches_B": self.matches_B,
            "unique": self.unique,
            "numeric_ties": [[a.hex(), b.hex()] for a, b in self.ties],
            "status": "empty" if self.count == 0 else ("PASS" if self.passed else "FAIL"),
        }


@dataclass
class TheoremReport:
    k: int
    rows: list

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def failures(self) -> list:
        return [(self.k, r.phi, [c.hex() for c in r.maximizers]) for r in self.rows if not r.passed]

    def to_json(self) -> dict:
        return {"k": self.k, "passed": self.passed, "strata": [r.to_json() for r in self.rows]}


def _search(entries: list, k: int, phi: int, margin: float, tol: float) -> StratumResult:
    if not entries:
        return StratumResult(phi, 0, None)
    ranked = sorted(entries, key=lambda e: (-e.rho, e.canonical))
    ties = []
    for a, b in zip(ranked, ranked[1:]):
        if abs(a.rho - b.rho) <= margin:
            ties.append((a.canonical, b.canonical))
    top = ranked[0].rho
    cands = [e for e in ranked if top - e.rho <= margin]
    if len(cands) > 1:
        # re-solve the near-tied classes with a tighter tolerance before
        # declaring non-uniqueness
        fine = {e.canonical: spectral_radius(e.graph, tol / 10).rho for e in cands}
        best = max(fine.values())
        cands = [e for e in cands if best - fine[e.canonical] <= margin]
    codes = sorted(e.canonical for e in cands)
    unique = len(codes) == 1
    matches = unique and codes[0] == _extremal_code(k, phi)
    return StratumResult(phi, len(entries), top, codes, matches, unique, ties)


def extremal_search(k: int, phi: int, margin: float = DEFAULT_MARGIN, tol: float = DEFAULT_TOL,
                    workers: int | None = 1) -> StratumResult:
    entries = list(enumerate_block_graphs(k, phi=phi, workers=workers, tol=tol))
    return _search(entries, k, phi, margin, tol)


def verify_main_theorem(k: int, margin: float = DEFAULT_MARGIN, tol: float = DEFAULT_TOL,
                        workers: int | None = 1) -> TheoremReport:
    entries = list(enumerate_block_graphs(k, workers=workers, tol=tol))
    by_phi: dict[int, list] = {}
    for e in entries:
        by_phi.setdefault(e.phi, []).append(e)
    phis = sorted(by_phi)
    if k >= 2:
        lo, hi = feasible_phi_range(k)
        phis = sorted(set(phis) | set(range(lo, hi + 1)))
    rows = [_search(by_phi.get(p, []), k, p, margin, tol) for p in phis]
    return TheoremReport(k, rows)


# ---------------------------------------------------------------------------
# Structural corollaries of the maximiser


@dataclass
class StructureRow:
    phi: int
    block_sizes: list
    cut_vertices: int
    big_blocks: int
    small_blocks_pendant: bool
    intersection_ok: bool
    passed: bool

    def to_json(self) -> dict:
        return dict(self.__dict__)


@dataclass
class StructureReport:
    k: int
    rows: list

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def to_json(self) -> dict:
        return {"k": self.k, "passed": self.passed, "strata": [r.to_json() for r in self.rows]}


def check_structure(g: Graph, phi: int) -> StructureRow:
    dec = block_decomposition(g)
    sizes = dec.block_sizes()
    ncut = len(dec.cut_vertices)
    big = sum(1 for s in sizes if s >= 4)
    small_pendant = all(dec.pendant[i] or len(dec.blocks) == 1
                        for i, b in enumerate(dec.blocks) if len(b) <= 3)
    if phi > 2:
        d = dissociation_brute(g).set
        inter = not (d & dec.cut_vertices) and all(
            len(b & d) == (1 if len(b) == 2 else 2) for b in dec.blocks)
        one_cut = ncut == 1
    else:
        inter = True
        one_cut = True
    ok = one_cut and big <= 1 and small_pendant and inter
    return StructureRow(phi, sizes, ncut, big, small_pendant, inter, ok)


def verify_structure_corollaries(k: int, margin: float = DEFAULT_MARGIN, tol: float = DEFAULT_TOL,
                                 workers: int | None = 1, theorem: TheoremReport | None = None
                                 ) -> StructureReport:
    """Check the shape of each stratum's numerical maximiser.

    Pass a previously computed ``theorem`` report to avoid re-enumerating.
    """
    theorem = theorem or verify_main_theorem(k, margin, tol, workers)
    classes = block_graph_classes(k)
    rows = []
    for r in theorem.rows:
        if r.count == 0:
            continue
        for code in r.maximizers:
            rows.append(check_structure(classes[code], r.phi))
    return StructureReport(k, rows)


def write_census_jsonl(entries, fh) -> None:
    for e in entries:
        fh.write(json.dumps(e.to_json(), sort_keys=True) + "\n")
