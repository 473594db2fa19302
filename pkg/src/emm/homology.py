"""Cycle space and cocycle lattice of a multigraph.

Given a spanning forest T, the fundamental cycles of the non-forest
edges form a basis of H1(G, Z); the dual basis of H^1(G, Z) is given by
the classes of the non-forest coedges.  Every coedge e* is an
integer vector in these coordinates, zero exactly for bridges, and the
coedge matrix always carries an identity block on the non-tree rows.

All chains are dense integer tuples of length m (one coefficient per
edge); cocycles are integer tuples of length g in the dual basis.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations

from .multigraph import Multigraph, GraphError, NO_VERTEX


def genus(g: Multigraph) -> int:
    """First Betti number: m - n + 1 per component with vertices; a
    vertex-free loop is a circle and contributes 1."""
    total = 0
    for verts, edges in g.components:
        total += len(edges) - len(verts) + 1 if verts else 1
    return total


@dataclass(frozen=True)
class HomologyBasis:
    """Deterministic homology data for a multigraph (forest-based when
    the graph is disconnected)."""

    graph: Multigraph
    tree_edges: tuple[int, ...]
    basis_edges: tuple[int, ...]          # non-tree edges, ascending
    cycles: tuple[tuple[int, ...], ...]   # fundamental cycles, chains of length m

    @property
    def g(self) -> int:
        return len(self.basis_edges)

    @cached_property
    def coedges(self) -> tuple[tuple[int, ...], ...]:
        """Coordinate vector of e* for every edge e (rows of the coedge matrix).

        e*(z) is the e-coefficient of the chain z, so the row for edge e
        collects the e-coefficients of the fundamental cycles.
        """
        return tuple(tuple(cyc[e] for cyc in self.cycles)
                     for e in range(self.graph.m))

    def coedge(self, e: int) -> tuple[int, ...]:
        return self.coedges[e]

    def chain_coords(self, chain) -> tuple[int, ...]:
        """Coordinates of a cycle in the fundamental-cycle basis.

        A cycle is determined by its coefficients on the non-tree edges.
        """
        return tuple(chain[e] for e in self.basis_edges)

    def coords_to_chain(self, coords) -> tuple[int, ...]:
        out = [0] * self.graph.m
        for c, cyc in zip(coords, self.cycles):
            if c:
                for e in range(self.graph.m):
                    out[e] += c * cyc[e]
        return tuple(out)


def homology_basis(g: Multigraph) -> HomologyBasis:
    """BFS spanning forest taking the lowest-numbered edge first; fully
    deterministic so certificates are byte-reproducible."""
    tree: list[int] = []
    parent_dart = [-1] * g.n          # dart leading back toward the root
    seen = [False] * g.n
    for root in range(g.n):
        if seen[root]:
            continue
        seen[root] = True
        frontier = [root]
        while frontier:
            new_frontier = []
            # lowest edge id first: scan vertices then their darts in order
            candidates = []
            for v in frontier:
                for d in g.vertex_darts[v]:
                    w = g.dart_vertex(d ^ 1)
                    if w != NO_VERTEX and not seen[w]:
                        candidates.append((d >> 1, d, w))
            for _, d, w in sorted(candidates):
                if not seen[w]:
                    seen[w] = True
                    tree.append(d >> 1)
                    parent_dart[w] = d ^ 1
                    new_frontier.append(w)
            frontier = new_frontier
    tree_set = set(tree)
    basis = tuple(e for e in range(g.m) if e not in tree_set)

    def path_to_root(v: int) -> dict[int, int]:
        """Chain of the tree path v -> root (edge -> coefficient)."""
        out: dict[int, int] = {}
        while parent_dart[v] != -1:
            d = parent_dart[v]
            e = d >> 1
            # dart d points from v toward the parent; edge oriented beg->end
            out[e] = out.get(e, 0) + (1 if d % 2 == 0 else -1)
            v = g.dart_vertex(d ^ 1)
        return out

    cycles = []
    for e in basis:
        b, t = g.ends[e]
        chain = [0] * g.m
        chain[e] = 1
        if b != NO_VERTEX and b != t:
            # close up e (beg->end) with the tree path end -> beg
            for f, c in path_to_root(t).items():
                chain[f] += c
            for f, c in path_to_root(b).items():
                chain[f] -= c
        cycles.append(tuple(chain))
    return HomologyBasis(g, tuple(sorted(tree)), basis, tuple(cycles))


def chain_boundary(g: Multigraph, chain) -> tuple[int, ...]:
    out = [0] * g.n
    for e, c in enumerate(chain):
        if c:
            b, t = g.ends[e]
            if b != NO_VERTEX:
                out[t] += c
                out[b] -= c
    return tuple(out)


# -- simple cycles and (0,1)-cycles ----------------------------------


def simple_cycles(g: Multigraph) -> tuple[tuple[int, ...], ...]:
    """All simple cycles as chains, each once up to global sign.

    The anchor edge of a cycle is its lowest edge id; cycles are reported
    with the anchor edge traversed beg->end, ordered by edge-id tuple.
    """
    found: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
    for anchor in range(g.m):
        b, t = g.ends[anchor]
        if b == NO_VERTEX or b == t:   # loops are single-edge cycles
            chain = [0] * g.m
            chain[anchor] = 1
            found.append(((anchor,), tuple(chain)))
            continue
        # simple paths from t back to b that avoid vertices of the partial
        # path and use only edges with id > anchor
        path_edges: list[tuple[int, int]] = []
        used = {t}

        def extend(v: int):
            for d in g.vertex_darts[v]:
                e = d >> 1
                w = g.dart_vertex(d ^ 1)
                if e <= anchor or w == v or w == NO_VERTEX:
                    continue
                if any(e == pe for pe, _ in path_edges):
                    continue
                if w == b:
                    chain = [0] * g.m
                    chain[anchor] = 1
                    for pe, sign in path_edges:
                        chain[pe] += sign
                    chain[e] += 1 if d % 2 == 0 else -1
                    found.append(
                        (tuple(sorted([anchor, e] + [pe for pe, _ in path_edges])),
                         tuple(chain)))
                    continue
                if w in used:
                    continue
                used.add(w)
                path_edges.append((e, 1 if d % 2 == 0 else -1))
                extend(w)
                path_edges.pop()
                used.discard(w)

        extend(t)
    found.sort(key=lambda fc: fc[0])
    return tuple(chain for _, chain in found)


def zero_one_cycles(g: Multigraph, max_parts: int = 2) -> tuple[tuple[int, ...], ...]:
    """(0,1)-cycles that are sums of at most max_parts edge-disjoint simple
    cycles, each exactly once up to global sign, in deterministic order."""
    singles = simple_cycles(g)
    supports = [frozenset(e for e, c in enumerate(ch) if c) for ch in singles]
    out: dict[tuple[int, ...], None] = {}

    def canon(chain: tuple[int, ...]) -> tuple[int, ...]:
        for c in chain:
            if c:
                return chain if c > 0 else tuple(-x for x in chain)
        return chain

    def rec(start: int, picked: list[int], used: frozenset[int]):
        if picked:
            # all sign patterns on parts after the first (global sign fixed)
            k = len(picked)
            for bits in range(1 << (k - 1)):
                chain = list(singles[picked[0]])
                for j in range(1, k):
                    s = -1 if (bits >> (j - 1)) & 1 else 1
                    for e, c in enumerate(singles[picked[j]]):
                        chain[e] += s * c
                out[canon(tuple(chain))] = None
        if len(picked) == max_parts:
            return
        for i in range(start, len(singles)):
            if supports[i] & used:
                continue
            picked.append(i)
            rec(i + 1, picked, used | supports[i])
            picked.pop()

    rec(0, [], frozenset())
    return tuple(sorted(out.keys()))


# -- coedge recognition, two routes ----------------------------------


def is_coedge_by_columns(basis: HomologyBasis, z) -> bool:
    """Route (a): literal match against the nonzero coedge rows, up to sign."""
    z = tuple(z)
    if not any(z):
        raise ValueError("zero vector: bridges excluded from coedge test")
    neg = tuple(-c for c in z)
    return any(row == z or row == neg
               for row in basis.coedges if any(row))


@lru_cache(maxsize=4096)
def _cycle_coords(basis: HomologyBasis, max_parts: int):
    return tuple(basis.chain_coords(ch)
                 for ch in zero_one_cycles(basis.graph, max_parts))


def is_coedge_by_cycles(basis: HomologyBasis, z, max_parts: int = 2) -> bool:
    """Route (b): z is a coedge iff |z(c)| <= 1 on all (0,1)-cycles.

    Sums of two edge-disjoint simple cycles suffice for the bound to be
    conclusive; requires a bridgeless graph.
    """
    z = tuple(z)
    if not any(z):
        raise ValueError("zero vector: bridges excluded from coedge test")
    if basis.graph.bridges:
        raise GraphError("cycle-value coedge test needs a bridgeless graph")
    for coords in _cycle_coords(basis, max_parts):
        val = sum(a * b for a, b in zip(z, coords))
        if val > 1 or val < -1:
            return False
    return True


is_coedge = is_coedge_by_columns


# -- decomposition into irreducible pieces ---------------------------


@dataclass(frozen=True)
class Decomposition:
    """Loops and loopless 2-connected blocks carrying all of H^1.

    edge_map[e] = (component index, edge id there), or None for bridges.
    """
    graph: Multigraph
    pieces: tuple[Multigraph, ...]
    edge_map: tuple[object, ...]

    def lift_chain(self, k: int, chain) -> tuple[int, ...]:
        """Chain of piece k as a chain of the ambient graph."""
        out = [0] * self.graph.m
        for e, loc in enumerate(self.edge_map):
            if loc is not None and loc[0] == k:
                out[e] = chain[loc[1]]
        return tuple(out)


def decompose(g: Multigraph) -> Decomposition:
    """Split into irreducible components: every loop on its own (as a
    vertex-free loop) and every loopless 2-connected block."""
    pieces: list[Multigraph] = []
    edge_map: list = [None] * g.m

    for e in range(g.m):
        if g.is_loop(e):
            pieces.append(Multigraph.from_pairs([(None, None)],
                                                labels=[g.edge_labels[e]]))
            edge_map[e] = (len(pieces) - 1, 0)

    bridges = g.bridges
    # block = equivalence class of non-loop, non-bridge edges: e ~ f when
    # some simple cycle uses both
    rest = [e for e in range(g.m)
            if not g.is_loop(e) and e not in bridges]
    parent = {e: e for e in rest}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    if rest:
        for verts, edges in g.components:
            sub = [e for e in edges if e in parent]
            if not sub:
                continue
            # fundamental cycles glue edges of a block together
            comp = _component_graph(g, verts, edges)
            hb = homology_basis(comp)
            for cyc in hb.cycles:
                touched = [edges[i] for i, c in enumerate(cyc) if c]
                touched = [e for e in touched if e in parent]
                for a, b in zip(touched, touched[1:]):
                    ra, rb = find(a), find(b)
                    if ra != rb:
                        parent[max(ra, rb)] = min(ra, rb)
        blocks: dict[int, list[int]] = {}
        for e in rest:
            blocks.setdefault(find(e), []).append(e)
        for root in sorted(blocks):
            edges = sorted(blocks[root])
            piece = Multigraph.from_pairs(
                [(g.ends[e][0], g.ends[e][1]) for e in edges],
                labels=[g.edge_labels[e] for e in edges])
            pieces.append(piece)
            for i, e in enumerate(edges):
                edge_map[e] = (len(pieces) - 1, i)
    return Decomposition(g, tuple(pieces), tuple(edge_map))


def _component_graph(g: Multigraph, verts, edges) -> Multigraph:
    vmap = {v: i for i, v in enumerate(verts)}
    pairs = []
    for e in edges:
        b, t = g.ends[e]
        if b == NO_VERTEX:
            pairs.append((None, None))
        else:
            pairs.append((vmap[b], vmap[t]))
    return Multigraph.from_pairs(pairs, names=list(range(len(verts))),
                                 labels=[g.edge_labels[e] for e in edges])


# -- cubic reduction --------------------------------------------------


@dataclass(frozen=True)
class CubicReduction:
    """Genus-preserving reduction of a 2-connected loopless graph to a
    cubic one (or to a single loop if the input is a cycle).

    edge_map[e] = (reduced edge, sign): series edges share an image; the
    sign says whether the orientation survives.  extra_edges are the new
    edges introduced by splitting high-degree vertices.
    """
    graph: Multigraph
    reduced: Multigraph
    edge_map: tuple[tuple[int, int], ...]
    extra_edges: tuple[int, ...]
    is_loop: bool

    def push_chain(self, chain) -> tuple[int, ...]:
        """Transport a chain of the reduced graph back to the original:
        contract the extra edges and expand merged series runs."""
        out = [0] * self.graph.m
        for e, (img, sign) in enumerate(self.edge_map):
            out[e] = sign * chain[img]
        return tuple(out)


def cubic_reduction(g: Multigraph) -> CubicReduction:
    """Suppress degree-2 vertices, then split degree >= 4 vertices."""
    if any(g.is_loop(e) for e in range(g.m)):
        if g.m == 1:
            return CubicReduction(g, g, ((0, 1),), (), True)
        raise GraphError("cubic reduction expects a loopless graph or a loop")
    if not g.is_connected:
        raise GraphError("cubic reduction expects a connected graph")
    return _cubic_reduction_clean(g)


def _suppress_once(ends, emap, alive, vkill, n):
    """Find one degree-2 vertex and merge its two edge occurrences."""
    deg = [0] * n
    inc: list[list[int]] = [[] for _ in range(n)]
    for e, (b, t) in enumerate(ends):
        if not alive[e] or b == NO_VERTEX:
            continue
        deg[b] += 1
        inc[b].append(e)
        if t != b:
            deg[t] += 1
            inc[t].append(e)
        else:
            deg[t] += 1
    live = [e for e in range(len(ends)) if alive[e]]
    if len(live) == 1:
        b, t = ends[live[0]]
        if b == t:
            return False
    for v in range(n):
        if vkill[v] or deg[v] != 2:
            continue
        if len(inc[v]) == 1:
            continue  # loop at v: a cycle fully collapsed, stop
        e, f = inc[v]
        eb, et = ends[e]
        fb, ft = ends[f]
        # orient merged edge: from e's far end to f's far end
        e_far, e_fwd = (eb, True) if et == v else (et, False)
        f_far, f_fwd = (ft, True) if fb == v else (fb, False)
        ends[e] = (e_far, f_far)
        alive[f] = False
        vkill[v] = True
        # traversing merged edge e_far->f_far walks e (forward iff e ended
        # at v) then f (forward iff f began at v)
        for i in range(len(emap)):
            img, s = emap[i]
            if img == e:
                emap[i] = (e, s if e_fwd else -s)
            elif img == f:
                emap[i] = (e, s if f_fwd else -s)
        return True
    return False


def _cubic_reduction_clean(g: Multigraph) -> CubicReduction:
    ends = list(g.ends)
    emap = [(e, 1) for e in range(g.m)]
    alive = [True] * g.m
    vkill = [False] * g.n

    while _suppress_once(ends, emap, alive, vkill, g.n):
        pass

    live_edges = [e for e in range(len(ends)) if alive[e]]
    if len(live_edges) == 1 and ends[live_edges[0]][0] == ends[live_edges[0]][1]:
        # the input was a cycle; report a single loop
        le = live_edges[0]
        v = ends[le][0]
        reduced = Multigraph.from_pairs([(0, 0)] if v != NO_VERTEX else [(None, None)],
                                        labels=[g.edge_labels[le]])
        edge_map = tuple((0, emap[e][1]) for e in range(g.m))
        return CubicReduction(g, reduced, edge_map, (), True)

    # pass 2: split vertices of degree >= 4, two darts at a time
    pairs = []
    vname = {}
    for v in range(g.n):
        if not vkill[v]:
            vname[v] = len(vname)
    work = [(vname[ends[e][0]], vname[ends[e][1]]) for e in live_edges]
    labels = [g.edge_labels[e] for e in live_edges]
    pos = {e: i for i, e in enumerate(live_edges)}
    nverts = len(vname)
    extra = []
    while True:
        deg: dict[int, list[tuple[int, int]]] = {}
        for i, (b, t) in enumerate(work):
            deg.setdefault(b, []).append((i, 0))
            deg.setdefault(t, []).append((i, 1))
        target = None
        for v in sorted(deg):
            if len(deg[v]) >= 4:
                target = v
                break
        if target is None:
            break
        w = nverts
        nverts += 1
        # first two incidences move to the new vertex w
        for i, side in deg[target][:2]:
            b, t = work[i]
            work[i] = (w, t) if side == 0 else (b, w)
        extra.append(len(work))
        work.append((target, w))
        labels.append(f"x{len(extra) - 1}")

    reduced = Multigraph.from_pairs(work, names=list(range(nverts)), labels=labels)
    edge_map = tuple((pos[emap[e][0]], emap[e][1]) for e in range(g.m))
    return CubicReduction(g, reduced, edge_map, tuple(extra), False)


# -- recursion-edge choice --------------------------------------------


def is_cycle_graph(g: Multigraph) -> bool:
    """Single simple cycle (including one- and zero-vertex loops)."""
    if not g.is_connected or g.m == 0:
        return False
    if g.m == 1:
        return g.is_loop(0)
    return g.n == g.m and all(g.degree(v) == 2 for v in range(g.n))


def two_cutsets(g: Multigraph) -> tuple[tuple[int, int], ...]:
    """All 2-element edge cutsets of a connected graph (isolated vertices
    left behind by a deletion count as genuine components)."""
    out = []
    for e, f in combinations(range(g.m), 2):
        h, _ = g.delete_edges({e, f})
        if len(h.components) > 1:
            out.append((e, f))
    return tuple(out)


def edge_outside_2cutsets(g: Multigraph):
    """Lowest edge lying in no 2-element cutset; None iff G is a cycle
    graph (then every edge is either alone or tied to every other)."""
    if g.bridges:
        raise GraphError("recursion edge needs a bridgeless graph")
    if not g.is_connected:
        raise GraphError("recursion edge needs a connected graph")
    if is_cycle_graph(g):
        return None
    bad = set()
    for e, f in two_cutsets(g):
        bad.add(e)
        bad.add(f)
    for e in range(g.m):
        if e not in bad:
            return e
    raise AssertionError("bridgeless non-cycle graph with every edge in a "
                         "2-cutset contradicts the cycle lemma")
