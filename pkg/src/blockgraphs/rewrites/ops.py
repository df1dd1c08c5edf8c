"""Block-graph rewrites that keep the dissociation number and raise the spectral radius.

Each ``apply_*`` function checks its preconditions against a caller-supplied
block decomposition and maximum dissociation set, performs the rewrite, and
returns a :class:`RewriteReport` whose verdicts re-check the contract on the
output (connected block graph, same order, same dissociation number, larger
spectral radius, expected block shape).
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from ..dissociation import (DissociationCertificate, dissociation_brute, dissociation_dp,
                            is_dissociation_set)
from ..graph import Graph, GraphError, BlockDecomposition, block_decomposition, is_block_graph
from ..spectral import spectral_radius, verify_eigenpair

PERRON_EPS = 1e-9
RHO_MARGIN = 1e-9
# residual above which the output's Perron vector counts as "not a Perron
# vector of the input" for the cut-shift strictness rule
EIGEN_CHECK_TOL = 1e-7


class Op(str, enum.Enum):
    P21_MERGE_EMPTY = "P21_MERGE_EMPTY"
    P21_MERGE_AT_CUT = "P21_MERGE_AT_CUT"
    P21_MERGE_SINGLE_HIT = "P21_MERGE_SINGLE_HIT"
    L22A = "L22A"
    L22B = "L22B"
    L23A = "L23A"
    L23B = "L23B"
    P22_TRIANGLE_CASE1 = "P22_TRIANGLE_CASE1"
    P22_TRIANGLE_CASE2 = "P22_TRIANGLE_CASE2"
    CUT_SHIFT = "CUT_SHIFT"


class PreconditionError(GraphError):
    """The site does not satisfy the rewrite's hypotheses."""


@dataclass(frozen=True)
class RewriteSite:
    """Role assignment: vertex roles (``p``, ``w``, ...) and block roles (``K_m``, ``H``, ...)."""

    op: Op
    vertices: dict = field(default_factory=dict)
    blocks: dict = field(default_factory=dict)

    def to_json(self, dec: BlockDecomposition | None = None) -> dict:
        blocks = {}
        for role, b in self.blocks.items():
            blocks[role] = sorted(dec.blocks[b]) if dec is not None else b
        return {"vertices": dict(self.vertices), "blocks": blocks}


@dataclass
class RewriteReport:
    input: Graph
    output: Graph
    site: RewriteSite
    rho_before: float
    rho_after: float
    phi_before: int
    phi_after: int
    verdicts: dict
    decomposition: BlockDecomposition | None = None

    @property
    def contract_ok(self) -> bool:
        return all(self.verdicts.values())

    def to_json(self) -> dict:
        def gj(g):
            return {"n": g.n, "edges": [list(e) for e in sorted(g.edges)]}

        return {
            "operation": self.site.op.value,
            "site": self.site.to_json(self.decomposition),
            "input": gj(self.input),
            "output": gj(self.output),
            "rho_before": self.rho_before,
            "rho_after": self.rho_after,
            "phi_before": self.phi_before,
            "phi_after": self.phi_after,
            "verdicts": dict(self.verdicts),
            "contract_ok": self.contract_ok,
        }


# ---------------------------------------------------------------------------
# helpers


def _ge(a: float, b: float) -> bool:
    return a >= b - PERRON_EPS


def _gt(a: float, b: float) -> bool:
    return a > b + PERRON_EPS


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise PreconditionError(msg)


def _phi(g: Graph) -> int:
    if g.is_connected and is_block_graph(g):
        return dissociation_dp(g).phi
    return dissociation_brute(g).phi


def _check_inputs(g: Graph, dec: BlockDecomposition, cert: DissociationCertificate | None) -> frozenset:
    _require(dec.graph == g, "decomposition belongs to a different graph")
    _require(is_block_graph(g), "input is not a block graph")
    if cert is None:
        return frozenset()
    d = frozenset(cert.set)
    _require(is_dissociation_set(g, d), "D is not a dissociation set")
    _require(len(d) == _phi(g), f"D has {len(d)} vertices but the dissociation number is {_phi(g)}")
    return d


def _block(dec: BlockDecomposition, site: RewriteSite, role: str) -> frozenset:
    _require(role in site.blocks, f"site is missing block role {role}")
    idx = site.blocks[role]
    _require(0 <= idx < len(dec.blocks), f"block {role}={idx} does not exist")
    return dec.blocks[idx]


def _vertex(g: Graph, site: RewriteSite, role: str) -> int:
    _require(role in site.vertices, f"site is missing vertex role {role}")
    v = site.vertices[role]
    _require(0 <= v < g.n, f"vertex {role}={v} does not exist")
    return v


def _pairs(xs: Iterable[int], ys: Iterable[int]):
    return [(a, b) for a in xs for b in ys if a != b]


def _shape_after(dec: BlockDecomposition, removed: list[int], added: list[int]) -> list[int]:
    c = Counter(dec.block_sizes())
    c.subtract(Counter(removed))
    c.update(added)
    return sorted(c.elements())


def _report(g: Graph, out: Graph, site: RewriteSite, dec: BlockDecomposition, rho_in: float,
            shape: list[int], strict: bool = True) -> RewriteReport:
    verdicts = {"connected": out.is_connected, "vertex_count": out.n == g.n}
    verdicts["block_graph"] = verdicts["connected"] and is_block_graph(out)
    phi_in = _phi(g)
    phi_out = _phi(out) if verdicts["connected"] else -1
    verdicts["phi_preserved"] = phi_in == phi_out
    rho_out = spectral_radius(out).rho if verdicts["connected"] else float("nan")
    if strict:
        verdicts["rho_increased"] = rho_out - rho_in > RHO_MARGIN
    else:
        verdicts["rho_nondecreasing"] = rho_out - rho_in >= -RHO_MARGIN
        y = spectral_radius(out).perron
        needs_strict = not verify_eigenpair(g, rho_in, y, EIGEN_CHECK_TOL)
        verdicts["rho_strict_when_required"] = (not needs_strict) or rho_out - rho_in > RHO_MARGIN
    if verdicts["block_graph"]:
        verdicts["shape"] = block_decomposition(out).block_sizes() == shape
    else:
        verdicts["shape"] = False
    return RewriteReport(g, out, site, rho_in, rho_out, phi_in, phi_out, verdicts, dec)


# ---------------------------------------------------------------------------
# merges: every variant only adds edges


_PROP21 = {"i": Op.P21_MERGE_EMPTY, "ii": Op.P21_MERGE_AT_CUT, "iii": Op.P21_MERGE_SINGLE_HIT}


def apply_prop21(g: Graph, dec: BlockDecomposition, maxD: DissociationCertificate, variant: str,
                 site: RewriteSite) -> RewriteReport:
    """Complete a union of blocks into one clique.

    ``i``: block ``B`` missed by ``D`` merged with an adjacent block ``C``;
    ``ii``: all blocks at a cut vertex ``u`` in ``D``;
    ``iii``: adjacent blocks ``B1``, ``B2`` each meeting ``D`` once, at
    non-cut vertices.
    """
    if variant not in _PROP21:
        raise ValueError(f"unknown variant {variant!r}")
    d = _check_inputs(g, dec, maxD)
    site = RewriteSite(_PROP21[variant], site.vertices, site.blocks)
    if variant == "i":
        b, c = _block(dec, site, "B"), _block(dec, site, "C")
        _require(b != c, "B and C must be different blocks")
        _require(not (b & d), f"B meets D in {sorted(b & d)}")
        _require(len(b & c) == 1, "C is not adjacent to B")
        merged = [b, c]
    elif variant == "ii":
        u = _vertex(g, site, "u")
        _require(u in dec.cut_vertices, f"u={u} is not a cut vertex")
        _require(u in d, f"u={u} is not in D")
        merged = [dec.blocks[i] for i in dec.blocks_at(u)]
    else:
        b1, b2 = _block(dec, site, "B1"), _block(dec, site, "B2")
        _require(b1 != b2 and len(b1 & b2) == 1, "B1 and B2 are not adjacent blocks")
        for role, b in (("B1", b1), ("B2", b2)):
            hit = b & d
            _require(len(hit) == 1, f"{role} meets D in {len(hit)} vertices, need 1")
            _require(not (hit & dec.cut_vertices), f"{role} meets D at cut vertex {min(hit)}")
        merged = [b1, b2]
    rho_in = spectral_radius(g).rho
    union = frozenset().union(*merged)
    out = g.complete_on(union)
    shape = _shape_after(dec, [len(b) for b in merged], [len(union)])
    return _report(g, out, site, dec, rho_in, shape)


# ---------------------------------------------------------------------------
# two big cliques sharing a vertex


def _require_noncut(dec, d, blocks, allowed=()):
    # these rewrites keep D maximum only when the chosen vertices of the
    # reshaped cliques carry nothing else; a chosen cut vertex can be traded
    # for vertices below it once its clique changes
    bad = sorted(v for b in blocks for v in b & d & dec.cut_vertices if v not in allowed)
    _require(not bad, f"chosen vertices {bad} of the reshaped cliques are cut vertices")


def _two_cliques(g, dec, d, site, roles_m, roles_n):
    w = _vertex(g, site, "w")
    km, kn = _block(dec, site, "K_m"), _block(dec, site, "K_n")
    _require(km != kn and km & kn == {w}, "K_m and K_n must be blocks joined at w")
    _require(len(km) >= 4 and len(kn) >= 4, f"need m, n >= 4 (got {len(km)}, {len(kn)})")
    _require(w not in d, f"w={w} is in D")
    vs = {r: _vertex(g, site, r) for r in roles_m + roles_n}
    _require(km & d == {vs[r] for r in roles_m},
             f"K_m meets D in {sorted(km & d)}, expected {[vs[r] for r in roles_m]}")
    _require(kn & d == {vs[r] for r in roles_n},
             f"K_n meets D in {sorted(kn & d)}, expected {[vs[r] for r in roles_n]}")
    return w, km, kn, vs


def apply_lemma22(g: Graph, dec: BlockDecomposition, maxD: DissociationCertificate, variant: str,
                  site: RewriteSite) -> RewriteReport:
    """Reshape ``K_m`` + ``K_n`` (each meeting D twice) into ``K_{m+n-3}`` + a triangle at ``w``.

    ``a``: the triangle is ``{w, r, s}``; needs ``x_p >= x_r >= x_s`` and
    ``x_q >= x_r``.  ``b``: the triangle is ``{w, q, s}``; needs
    ``x_p >= x_r >= x_s`` and ``x_r > x_q``.
    """
    if variant not in ("a", "b"):
        raise ValueError(f"unknown variant {variant!r}")
    d = _check_inputs(g, dec, maxD)
    site = RewriteSite(Op.L22A if variant == "a" else Op.L22B, site.vertices, site.blocks)
    w, km, kn, v = _two_cliques(g, dec, d, site, ["p", "q"], ["r", "s"])
    sr = spectral_radius(g)
    x = sr.perron
    p, q, r, s = v["p"], v["q"], v["r"], v["s"]
    # variant b needs x_p > x_q, impossible for two non-cut (twin) vertices,
    # so p alone may be a cut vertex there
    _require_noncut(dec, d, [km, kn], allowed=(p,) if variant == "b" else ())
    _require(_ge(x[p], x[r]) and _ge(x[r], x[s]), "need x_p >= x_r >= x_s")
    if variant == "a":
        _require(_ge(x[q], x[r]), "variant a needs x_q >= x_r")
        rest_n = kn - {r, s, w}
        out = g.remove_edges(_pairs([r, s], rest_n)).add_edges(_pairs(km - {w}, rest_n))
    else:
        _require(_gt(x[r], x[q]), "variant b needs x_r > x_q")
        out = (g.remove_edges(_pairs([q], km - {q, w}))
                .remove_edges(_pairs([s], kn - {s, w}))
                .add_edges([(q, s)])
                .add_edges(_pairs(km - {q, w}, kn - {s, w})))
    m, n = len(km), len(kn)
    shape = _shape_after(dec, [m, n], [m + n - 3, 3])
    return _report(g, out, site, dec, sr.rho, shape)


def apply_lemma23(g: Graph, dec: BlockDecomposition, maxD: DissociationCertificate, variant: str,
                  site: RewriteSite) -> RewriteReport:
    """Reshape ``K_m`` (meeting D twice) + ``K_n`` (once) into ``K_{m+n-2}`` + a pendant edge at ``w``.

    ``a``: ``r`` becomes the pendant vertex; needs ``x_p >= x_r``.
    ``b``: ``p`` becomes the pendant vertex; needs ``x_r > x_p`` and ``x_r > x_q``.
    """
    if variant not in ("a", "b"):
        raise ValueError(f"unknown variant {variant!r}")
    d = _check_inputs(g, dec, maxD)
    site = RewriteSite(Op.L23A if variant == "a" else Op.L23B, site.vertices, site.blocks)
    w, km, kn, v = _two_cliques(g, dec, d, site, ["p", "q"], ["r"])
    sr = spectral_radius(g)
    x = sr.perron
    p, q, r = v["p"], v["q"], v["r"]
    _require_noncut(dec, d, [km, kn])
    if variant == "a":
        _require(_ge(x[p], x[r]), "variant a needs x_p >= x_r")
        rest_n = kn - {r, w}
        out = g.remove_edges(_pairs([r], rest_n)).add_edges(_pairs(km - {w}, rest_n))
    else:
        _require(_gt(x[r], x[p]) and _gt(x[r], x[q]), "variant b needs x_r > x_p and x_r > x_q")
        rest_m = km - {p, w}
        out = g.remove_edges(_pairs([p], rest_m)).add_edges(_pairs(rest_m, kn - {w}))
    m, n = len(km), len(kn)
    shape = _shape_after(dec, [m, n], [m + n - 2, 2])
    return _report(g, out, site, dec, sr.rho, shape)


# ---------------------------------------------------------------------------
# non-pendant triangle


def triangle_case(g: Graph, dec: BlockDecomposition, maxD: DissociationCertificate,
                  site: RewriteSite) -> int:
    """Validate a non-pendant triangle site and return which case (1 or 2) applies."""
    d = _check_inputs(g, dec, maxD)
    u, v, w = (_vertex(g, site, r) for r in ("u", "v", "w"))
    t = _block(dec, site, "T")
    _require(t == {u, v, w}, "T must be the triangle {u, v, w}")
    ti = site.blocks["T"]
    _require(not dec.pendant[ti], "T is a pendant block")
    _require(u in dec.cut_vertices and v in dec.cut_vertices, "u and v must be cut vertices")
    _require(w not in dec.cut_vertices, "w must not be a cut vertex")
    _require(w in d and u not in d and v not in d, "need w in D and u, v not in D")
    km, kn = _block(dec, site, "K_m"), _block(dec, site, "K_n")
    _require(u in km and km != t, "K_m must be a block at u other than T")
    _require(v in kn and kn != t, "K_n must be a block at v other than T")
    _require(len(km) >= 3 and len(kn) >= 3, "need m, n >= 3")
    _require(len(km & d) == 2, f"K_m meets D in {len(km & d)} vertices, need 2")
    p, q = _vertex(g, site, "p"), _vertex(g, site, "q")
    _require(kn & d == {p, q}, f"K_n meets D in {sorted(kn & d)}, expected {{p, q}}")
    _require_noncut(dec, d, [km, kn])
    x = spectral_radius(g).perron
    _require(_ge(x[u], x[v]), "need x_u >= x_v (swap the roles of u and v)")
    if all(x[j] < x[w] - PERRON_EPS for j in kn - {v}):
        return 1
    return 2


def apply_prop22_triangle(g: Graph, dec: BlockDecomposition, maxD: DissociationCertificate,
                          case: int, site: RewriteSite) -> RewriteReport:
    """Dissolve a non-pendant triangle ``{u, v, w}`` sitting between ``K_m`` (at u) and ``K_n`` (at v).

    Case 1 (every ``x_j < x_w`` on ``K_n - v``): ``p`` moves to a pendant
    edge at ``u`` and ``(K_n - p) + {u, w}`` becomes a clique.  Case 2: the
    edge ``vw`` is dropped and ``K_n + {u}`` becomes a clique.
    """
    if case not in (1, 2):
        raise ValueError(f"unknown case {case!r}")
    op = Op.P22_TRIANGLE_CASE1 if case == 1 else Op.P22_TRIANGLE_CASE2
    site = RewriteSite(op, site.vertices, site.blocks)
    actual = triangle_case(g, dec, maxD, site)
    _require(actual == case, f"case {case} requested but the Perron entries select case {actual}")
    u, v, w, p = (site.vertices[r] for r in ("u", "v", "w", "p"))
    kn = dec.blocks[site.blocks["K_n"]]
    if case == 1:
        rest = kn - {p, v}
        out = (g.remove_edges(_pairs([p], kn - {p}))
                .add_edges([(p, u)])
                .add_edges(_pairs([u], rest))
                .add_edges(_pairs([w], rest)))
    else:
        out = g.remove_edges([(v, w)]).add_edges(_pairs([u], kn - {v}))
    rho_in = spectral_radius(g).rho
    shape = _shape_after(dec, [3, len(kn)], [len(kn) + 1, 2])
    return _report(g, out, site, dec, rho_in, shape)


# ---------------------------------------------------------------------------
# cut shift


def apply_cut_shift(g: Graph, dec: BlockDecomposition, site: RewriteSite) -> RewriteReport:
    """Move every block at ``v`` other than ``H`` over to ``u`` (both in ``H``, ``x_u >= x_v``).

    If ``v`` lies only in ``H`` nothing moves and the output equals the input.
    """
    _check_inputs(g, dec, None)
    site = RewriteSite(Op.CUT_SHIFT, site.vertices, site.blocks)
    u, v = _vertex(g, site, "u"), _vertex(g, site, "v")
    h = _block(dec, site, "H")
    _require(u != v, "u and v must differ")
    _require(u in h and v in h, "u and v must both lie in H")
    _require(u in dec.cut_vertices, f"u={u} is not a cut vertex")
    sr = spectral_radius(g)
    x = sr.perron
    _require(_ge(x[u], x[v]), "need x_u >= x_v (swap the roles of u and v)")
    hi = site.blocks["H"]
    moved = [dec.blocks[i] for i in dec.blocks_at(v) if i != hi]
    drop, add = [], []
    for b in moved:
        for c in b - {v}:
            drop.append((v, c))
            add.append((u, c))
    out = g.remove_edges(drop).add_edges(add)
    return _report(g, out, site, dec, sr.rho, dec.block_sizes(), strict=False)


# ---------------------------------------------------------------------------
# dispatcher


def apply_rewrite(g: Graph, op: Op | str, site: RewriteSite | dict,
                  maxD: DissociationCertificate | None = None,
                  dec: BlockDecomposition | None = None) -> RewriteReport:
    """Apply ``op`` with a decomposition and maximum dissociation set computed on demand."""
    op = Op(op)
    if isinstance(site, dict):
        site = RewriteSite(op, site.get("vertices", {}), site.get("blocks", {}))
    dec = dec or block_decomposition(g)
    if op is Op.CUT_SHIFT:
        return apply_cut_shift(g, dec, site)
    if maxD is None:
        maxD = dissociation_dp(g)
    if op in (Op.P21_MERGE_EMPTY, Op.P21_MERGE_AT_CUT, Op.P21_MERGE_SINGLE_HIT):
        variant = {v: k for k, v in _PROP21.items()}[op]
        return apply_prop21(g, dec, maxD, variant, site)
    if op in (Op.L22A, Op.L22B):
        return apply_lemma22(g, dec, maxD, "a" if op is Op.L22A else "b", site)
    if op in (Op.L23A, Op.L23B):
        return apply_lemma23(g, dec, maxD, "a" if op is Op.L23A else "b", site)
    return apply_prop22_triangle(g, dec, maxD, 1 if op is Op.P22_TRIANGLE_CASE1 else 2, site)


def complete_site(g: Graph, dec: BlockDecomposition, op: Op | str, vertices: dict,
                  blocks: dict | None = None) -> RewriteSite:
    """Fill in block roles that the vertex roles determine.

    ``blocks`` may give a role as a block index or as a vertex collection.
    """
    op = Op(op)
    out: dict = {}
    for role, val in (blocks or {}).items():
        out[role] = val if isinstance(val, int) else dec.block_index(val)

    def containing(*vs):
        hits = [i for i, b in enumerate(dec.blocks) if all(x in b for x in vs)]
        _require(len(hits) == 1, f"no unique block contains {list(vs)}")
        return hits[0]

    vx = vertices
    if op in (Op.L22A, Op.L22B, Op.L23A, Op.L23B):
        out.setdefault("K_m", containing(vx["w"], vx["p"]))
        out.setdefault("K_n", containing(vx["w"], vx["r"]))
    elif op in (Op.P22_TRIANGLE_CASE1, Op.P22_TRIANGLE_CASE2):
        out.setdefault("T", containing(vx["u"], vx["v"], vx["w"]))
        out.setdefault("K_n", containing(vx["v"], vx["p"]))
        if "K_m" not in out:
            cands = [i for i in dec.blocks_at(vx["u"]) if i != out["T"]]
            _require(len(cands) == 1, "K_m is ambiguous; pass it explicitly")
            out["K_m"] = cands[0]
    elif op is Op.CUT_SHIFT:
        out.setdefault("H", containing(vx["u"], vx["v"]))
    return RewriteSite(op, dict(vertices), out)
