"""Exhaustive small-graph enumeration and seeded planar samples.

Exhaustive families are grown one move at a time with isomorphism
dedup: connected multigraphs by single-edge additions, 2-edge-connected
multigraphs by ear insertions starting from cycles, and bridgeless
cubic multigraphs by H-insertion (subdivide two edges, join the new
vertices) starting from the theta graph.  Every grown family is
validated against brute force in the tests at small sizes.

Isomorphism testing encodes a multigraph as a simple graph with loop
counts on vertices and multiplicities on edges, buckets candidates by a
cheap invariant, and confirms with VF2 inside a bucket.
"""
from __future__ import annotations

import random
from functools import lru_cache

import networkx as nx

from .multigraph import Multigraph

_node_match = nx.isomorphism.categorical_node_match("loops", 0)
_edge_match = nx.isomorphism.categorical_edge_match("mult", 1)


def _encode(n: int, edges) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(n), loops=0)
    for u, v in edges:
        if u == v:
            g.nodes[u]["loops"] += 1
        elif g.has_edge(u, v):
            g[u][v]["mult"] += 1
        else:
            g.add_edge(u, v, mult=1)
    return g


def _invariant(n: int, edges, enc: nx.Graph):
    local = sorted((enc.nodes[v]["loops"],
                    sum(d["mult"] for d in enc[v].values()))
                   for v in range(n))
    kinds = sorted((d["mult"],) + tuple(sorted((enc.degree(u), enc.degree(v))))
                   for u, v, d in enc.edges(data=True))
    tri = sum(1 for u, v in enc.edges()
              for w in enc[u] if w != v and enc.has_edge(w, v))
    return (n, len(edges), tuple(local), tuple(kinds), tri)


class _IsoPool:
    """Collects graphs up to isomorphism; `add` reports novelty."""

    def __init__(self):
        self.buckets: dict[tuple, list[nx.Graph]] = {}
        self.members: list[tuple[int, tuple]] = []

    def add(self, n: int, edges: tuple) -> bool:
        enc = _encode(n, edges)
        key = _invariant(n, edges, enc)
        bucket = self.buckets.setdefault(key, [])
        for other in bucket:
            if nx.is_isomorphic(enc, other, node_match=_node_match,
                                edge_match=_edge_match):
                return False
        bucket.append(enc)
        self.members.append((n, edges))
        return True


def _build(n: int, edges: tuple) -> Multigraph:
    names = [str(i) for i in range(n)]
    return Multigraph.from_pairs([(str(u), str(v)) for u, v in edges],
                                 names=names)


def _circle() -> Multigraph:
    return Multigraph.from_edge_list("LOOP c")


def _canon(edges) -> tuple:
    return tuple(sorted(tuple(sorted(e)) for e in edges))


@lru_cache(maxsize=8)
def connected_multigraphs(max_edges: int,
                          include_circle: bool = True) -> tuple[Multigraph, ...]:
    """All connected multigraphs (loops and parallel edges allowed) with
    1..max_edges edges, one representative per isomorphism class.

    Grown by single-edge additions: a new edge between existing
    vertices (possibly a loop) or a pendant edge to a fresh vertex.
    Every connected graph is reachable: delete any cycle edge, else a
    leaf edge.  The vertex-free circle is appended separately when
    requested since it has no vertex to grow from.
    """
    pool = _IsoPool()
    level = [(1, ((0, 0),)), (2, ((0, 1),))]
    for n, edges in level:
        pool.add(n, edges)
    out = [_build(n, e) for n, e in level]
    for _ in range(max_edges - 1):
        nxt = []
        for n, edges in level:
            children = set()
            for u in range(n):
                for v in range(u, n):
                    children.add((n, _canon(edges + ((u, v),))))
                children.add((n + 1, _canon(edges + ((u, n),))))
            for cn, ce in sorted(children):
                if pool.add(cn, ce):
                    nxt.append((cn, ce))
        out.extend(_build(n, e) for n, e in nxt)
        level = nxt
    if include_circle:
        out.append(_circle())
    return tuple(out)


@lru_cache(maxsize=8)
def two_edge_connected_multigraphs(max_edges: int,
                                   include_circle: bool = True
                                   ) -> tuple[Multigraph, ...]:
    """All connected bridgeless multigraphs with 1..max_edges edges up
    to isomorphism, grown by ear insertion.

    Seeds are the cycles (loop, digon, triangle, ...); a step attaches
    an ear: a path of fresh internal vertices between two existing,
    not necessarily distinct, vertices.  Ear decomposition reaches
    every 2-edge-connected multigraph, and each insertion preserves
    bridgelessness.
    """
    pool = _IsoPool()
    level = []
    for k in range(1, max_edges + 1):
        cyc = tuple((i, (i + 1) % k) for i in range(k)) if k > 1 \
            else ((0, 0),)
        n, edges = (k if k > 1 else 1), _canon(cyc)
        pool.add(n, edges)
        level.append((n, edges))
    out = [_build(n, e) for n, e in level]
    frontier = level
    while frontier:
        nxt = []
        for n, edges in frontier:
            budget = max_edges - len(edges)
            if budget < 1:
                continue
            children = set()
            for length in range(1, budget + 1):
                inner = list(range(n, n + length - 1))
                for u in range(n):
                    for v in range(u, n):
                        path = [u] + inner + [v]
                        ear = tuple((path[i], path[i + 1])
                                    for i in range(length))
                        children.add((n + length - 1,
                                      _canon(edges + ear)))
            for cn, ce in sorted(children):
                if pool.add(cn, ce):
                    nxt.append((cn, ce))
        out.extend(_build(n, e) for n, e in nxt)
        frontier = nxt
    if include_circle:
        out.append(_circle())
    return tuple(out)


@lru_cache(maxsize=8)
def bridgeless_cubic_multigraphs(max_vertices: int) -> tuple[Multigraph, ...]:
    """All connected bridgeless cubic multigraphs with 2..max_vertices
    vertices up to isomorphism.

    Grown from the theta graph by H-insertion: subdivide two edges
    (allowed to be the same edge) and join the two new vertices.  The
    inverse move -- contract an edge between degree-3 vertices and
    smooth the two degree-2 remnants -- reduces any larger bridgeless
    cubic multigraph, so the closure is exhaustive; validated against
    brute force in the tests.
    """
    theta = (2, _canon(((0, 1), (0, 1), (0, 1))))
    pool = _IsoPool()
    pool.add(*theta)
    out = [_build(*theta)]
    frontier = [theta]
    while frontier:
        nxt = []
        for n, edges in frontier:
            if n + 2 > max_vertices:
                continue
            children = set()
            m = len(edges)
            for i in range(m):
                for j in range(i, m):
                    a, b = edges[i], edges[j]
                    rest = tuple(e for k, e in enumerate(edges)
                                 if k not in (i, j))
                    p, q = n, n + 1
                    if i == j:
                        # both cuts on one edge: u - p - q - v plus rung
                        new = ((a[0], p), (p, q), (q, a[1]), (p, q))
                    else:
                        new = ((a[0], p), (p, a[1]),
                               (b[0], q), (q, b[1]), (p, q))
                    children.add((n + 2, _canon(rest + new)))
            for cn, ce in sorted(children):
                if pool.add(cn, ce):
                    nxt.append((cn, ce))
        out.extend(_build(n, e) for n, e in nxt)
        frontier = nxt
    return tuple(out)


def planar_samples(seed: int, count: int, min_genus: int = 1,
                   need_disjoint_faces: bool = False,
                   max_tries: int = 10_000) -> tuple[Multigraph, ...]:
    """Seeded random 2-connected loopless planar simple graphs.

    Each sample starts from a cycle and adds chords that keep the graph
    planar until a target genus is hit.  With `need_disjoint_faces`
    the sample is kept only if its sphere embedding has two faces with
    no common edge (the hypothesis of the disjoint-face construction).
    """
    from .embed import planar_embed
    from .zemm import edge_disjoint_face_pair

    rng = random.Random(seed)
    out: list[Multigraph] = []
    for _ in range(max_tries):
        if len(out) >= count:
            break
        n = rng.randint(max(4, min_genus), max(6, min_genus + 4))
        target = min_genus + rng.randint(0, 3)
        g = nx.cycle_graph(n)
        genus = 0
        tries = 8 * n * n
        while genus < target and tries:
            tries -= 1
            u, v = rng.sample(range(n), 2)
            if g.has_edge(u, v):
                continue
            g.add_edge(u, v)
            if nx.check_planarity(g)[0]:
                genus += 1
            else:
                g.remove_edge(u, v)
        if genus < min_genus:
            continue
        mg = _build(n, _canon(g.edges()))
        if need_disjoint_faces:
            emb, _ = planar_embed(mg)
            if emb is None or edge_disjoint_face_pair(emb) is None:
                continue
        out.append(mg)
    if len(out) < count:
        raise RuntimeError(f"only drew {len(out)}/{count} samples")
    return tuple(out)
