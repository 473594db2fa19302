"""Graph embeddings in the sphere and the projective plane.

An embedding is a rotation system (cyclic order of darts at each vertex)
plus a sign per edge; sign -1 means crossing the edge reverses local
orientation.  Faces are traced on (dart, side) states — see `_search` —
and Euler's formula pins the surface: a connected graph with n vertices
and m edges embeds cellularly with F faces in a surface of Euler
characteristic n - m + F, so F = g + 1 is the sphere and F = g the
projective plane, where g = m - n + 1.

`planar_embed` delegates the planarity decision to networkx and then
re-inserts parallel edges and loops, which never affect planarity; the
F = g + 1 face count re-checks the construction.  `projective_embed`
runs an exhaustive backtracking search over signed rotation systems (up
to mirror symmetry and sign gauge), so a None answer is a proof that no
cellular projective embedding exists.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import networkx as nx
import numpy as np

from ._search import search_kernel, search_kernel_jit
from .errors import BudgetExceeded
from .homology import homology_basis
from .multigraph import GraphError, Multigraph

DEFAULT_SEARCH_BUDGET = 2_000_000_000


@dataclass(frozen=True)
class Embedding:
    """A cellular embedding, with its faces already traced."""

    graph: Multigraph
    rotations: tuple[tuple[int, ...], ...]  # darts, cyclically, per vertex
    edge_signs: tuple[int, ...]
    surface: str  # "sphere" or "projective_plane"
    faces: tuple[tuple[int, ...], ...]  # dart walks, one per face

    @property
    def face_count(self) -> int:
        return len(self.faces)

    @cached_property
    def face_chains(self) -> tuple[tuple[int, ...], ...]:
        """Each face boundary as an edge chain (entry per edge: signed
        number of traversals; sign + when the walk follows the edge from
        beg to end).  Chains are cycles and sum to zero over all faces."""
        out = []
        for walk in self.faces:
            chain = [0] * self.graph.m
            for d in walk:
                chain[d >> 1] += 1 if d % 2 == 0 else -1
            out.append(tuple(chain))
        return tuple(out)

    def euler_characteristic(self) -> int:
        return self.graph.n - self.graph.m + self.face_count


def _require_embeddable(g: Multigraph) -> None:
    if any(g.is_vertex_free(e) for e in g.edges()):
        raise GraphError("vertex-free loops cannot be embedded")
    if not g.is_connected:
        raise GraphError("embedding requires a connected graph")


def _step(g: Multigraph, nxt: dict, prv: dict, signs, state: int) -> int:
    d, sbit = state >> 1, state & 1
    spos = (sbit == 0) == (signs[d >> 1] == 1)
    a = d ^ 1
    w = nxt[a] if spos else prv[a]
    return 2 * w + (0 if spos else 1)


def trace_faces(g: Multigraph, rotations, edge_signs) -> tuple[tuple[int, ...], ...]:
    """Trace all faces of a signed rotation system.

    Returns one dart walk per face.  Orbits of the side-tracking walk
    come in mirror pairs; the representative containing the smaller
    state is kept, so the output is deterministic.
    """
    signs = tuple(edge_signs)
    nxt: dict[int, int] = {}
    prv: dict[int, int] = {}
    for word in rotations:
        k = len(word)
        for i, a in enumerate(word):
            nxt[a] = word[(i + 1) % k]
            prv[a] = word[(i - 1) % k]
    four_m = 4 * g.m
    seen = [False] * four_m
    orbits = []
    for s0 in range(four_m):
        if seen[s0]:
            continue
        walk = []
        s = s0
        while not seen[s]:
            seen[s] = True
            walk.append(s)
            s = _step(g, nxt, prv, signs, s)
        assert s == s0, "face successor is not a permutation"
        orbits.append(walk)

    def mirror(state: int) -> int:
        d, sbit = state >> 1, state & 1
        spos = (sbit == 0) == (signs[d >> 1] == 1)
        return 2 * (d ^ 1) + (1 if spos else 0)

    if all(s == 1 for s in signs):
        # orientable: the positive side is invariant, and taking every
        # face from it orients them consistently (chains sum to zero)
        faces = [tuple(s >> 1 for s in o) for o in orbits if o[0] % 2 == 0]
        assert 2 * len(faces) == len(orbits)
        return tuple(faces)
    where = {}
    for i, o in enumerate(orbits):
        for s in o:
            where[s] = i
    paired = set()
    faces = []
    for i, o in enumerate(orbits):
        if i in paired:
            continue
        j = where[mirror(o[0])]
        assert j != i and len(orbits[j]) == len(o), \
            "orbit mirror pairing failed"
        paired.add(i)
        paired.add(j)
        faces.append(tuple(s >> 1 for s in o))
    assert 2 * len(faces) == len(orbits)
    return tuple(faces)


# -- sphere -----------------------------------------------------------


def _simple_graph(g: Multigraph):
    """Underlying simple graph plus edge bundles and loop lists."""
    s = nx.Graph()
    s.add_nodes_from(range(g.n))
    bundles: dict[tuple[int, int], list[int]] = {}
    loops: dict[int, list[int]] = {}
    for e, (a, b) in enumerate(g.ends):
        if a == b:
            loops.setdefault(a, []).append(e)
        else:
            key = (min(a, b), max(a, b))
            bundles.setdefault(key, []).append(e)
            s.add_edge(*key)
    return s, bundles, loops


def planar_embed(g: Multigraph):
    """Planar embedding of a connected multigraph, or a reason not.

    Returns (Embedding, None) when planar, else (None, witness) where
    the witness is a tuple of edge ids carrying a subdivided K5 or K33
    (loops and parallel edges never matter for planarity).
    """
    _require_embeddable(g)
    s, bundles, loops = _simple_graph(g)
    planar, cert = nx.check_planarity(s, counterexample=True)
    if not planar:
        witness = sorted(bundles[(min(a, b), max(a, b))][0]
                         for a, b in cert.edges())
        return None, tuple(witness)
    rotations = []
    for v in range(g.n):
        word = []
        for u in cert.neighbors_cw_order(v):
            bundle = bundles[(min(u, v), max(u, v))]
            order = bundle if v < u else reversed(bundle)
            for e in order:
                a, b = g.ends[e]
                word.append(2 * e if a == v else 2 * e + 1)
        for e in loops.get(v, ()):  # loop darts nest as an adjacent pair
            word.extend((2 * e, 2 * e + 1))
        rotations.append(tuple(word))
    signs = (1,) * g.m
    faces = trace_faces(g, rotations, signs)
    genus = g.m - g.n + 1
    assert len(faces) == genus + 1, \
        f"planar reinsertion produced {len(faces)} faces, wanted {genus + 1}"
    return Embedding(graph=g, rotations=tuple(rotations), edge_signs=signs,
                     surface="sphere", faces=faces), None


# -- projective plane -------------------------------------------------


def _girth_floor(g: Multigraph) -> int:
    if any(a == b for a, b in g.ends):
        return 1
    if len({(min(a, b), max(a, b)) for a, b in g.ends}) < g.m:
        return 2
    return 3


def _rotation_candidates(g: Multigraph, order):
    """Anchored rotation words per vertex, mirror-halved at the first
    vertex of degree >= 3 in the visit order."""
    halved = False
    words_by_vertex = {}
    for v in order:
        darts = g.vertex_darts[v]
        anchor, rest = darts[0], darts[1:]
        words = [(anchor,) + p for p in itertools.permutations(rest)]
        if not halved and len(rest) >= 2:
            words = [w for w in words if w[1] < w[-1]]
            halved = True
        words_by_vertex[v] = words
    return words_by_vertex


def _visit_order(g: Multigraph) -> list[int]:
    # BFS keeps each newly assigned vertex adjacent to the traced part,
    # which is what makes the partial-face pruning bite early.
    order = [0]
    seen = {0}
    qi = 0
    while qi < len(order):
        v = order[qi]
        qi += 1
        for d in g.vertex_darts[v]:
            w = g.dart_vertex(d ^ 1)
            if w not in seen:
                seen.add(w)
                order.append(w)
    assert len(order) == g.n
    return order


def projective_embed(g: Multigraph, nth: int = 0,
                     max_nodes: int = DEFAULT_SEARCH_BUDGET,
                     use_jit: bool | None = None):
    """The nth cellular projective-plane embedding in search order, or
    None once the (exhaustive) search space is spent.

    Raises BudgetExceeded if the node budget runs out first, so callers
    can distinguish "no embedding exists" from "gave up".
    """
    _require_embeddable(g)
    genus = g.m - g.n + 1
    if g.m == 0 or genus < 1:
        return None  # trees have no cellular embedding with chi = 1
    girth_b = _girth_floor(g)
    if 2 * g.m < girth_b * genus:
        return None  # too few dart steps to feed g faces
    basis = homology_basis(g)
    order = _visit_order(g)
    words = _rotation_candidates(g, order)

    pdeg, pcnt, poff = [], [], []
    rot_data: list[int] = []
    for v in order:
        ws = words[v]
        pdeg.append(g.degree(v))
        pcnt.append(len(ws))
        poff.append(len(rot_data))
        for w in ws:
            rot_data.extend(w)

    kernel = search_kernel
    if search_kernel_jit is not None and use_jit is not False:
        kernel = search_kernel_jit
    out_choice = np.zeros(g.n, np.int32)
    out_mask = np.zeros(1, np.int64)
    status, nodes, _seen = kernel(
        g.n, g.m,
        np.asarray(pdeg, np.int32),
        np.asarray(pcnt, np.int32), np.asarray(poff, np.int32),
        np.asarray(rot_data, np.int32),
        np.asarray(basis.basis_edges, np.int32),
        genus, girth_b, nth, max_nodes, out_choice, out_mask)
    if status == 2:
        raise BudgetExceeded("projective embedding search ran out of "
                             f"node budget ({max_nodes})", nodes=int(nodes))
    if status == 0:
        return None
    rotations: list[tuple[int, ...]] = [()] * g.n
    for p, v in enumerate(order):
        rotations[v] = words[v][int(out_choice[p])]
    mask = int(out_mask[0])
    signs = [1] * g.m
    for i, e in enumerate(basis.basis_edges):
        if (mask >> i) & 1:
            signs[e] = -1
    faces = trace_faces(g, tuple(rotations), tuple(signs))
    assert len(faces) == genus, \
        f"search returned {len(faces)} faces, wanted {genus}"
    return Embedding(graph=g, rotations=tuple(rotations),
                     edge_signs=tuple(signs), surface="projective_plane",
                     faces=faces)


# -- cycle covers and the surfaces they bound -------------------------


@dataclass(frozen=True)
class FaceCover:
    """A set of closed walks using every edge exactly twice in total."""

    graph: Multigraph
    walks: tuple[tuple[int, ...], ...]  # dart walks

    @cached_property
    def chains(self) -> tuple[tuple[int, ...], ...]:
        out = []
        for walk in self.walks:
            chain = [0] * self.graph.m
            for d in walk:
                chain[d >> 1] += 1 if d % 2 == 0 else -1
            out.append(tuple(chain))
        return tuple(out)


def _cycle_walk(g: Multigraph, chain) -> tuple[int, ...]:
    """Dart walk of a simple cycle given as a (0, +/-1) chain."""
    support = [e for e in g.edges() if chain[e]]
    e0 = support[0]
    first = 2 * e0 if chain[e0] > 0 else 2 * e0 + 1
    walk = [first]
    used = {e0}
    v = g.dart_vertex(walk[-1] ^ 1)
    while len(walk) < len(support):
        for e in support:
            if e in used or not chain[e]:
                continue
            d = 2 * e if chain[e] > 0 else 2 * e + 1
            if g.dart_vertex(d) == v:
                walk.append(d)
                used.add(e)
                v = g.dart_vertex(d ^ 1)
                break
        else:
            raise AssertionError("chain is not a single closed walk")
    assert v == g.dart_vertex(walk[0]), "walk does not close up"
    return tuple(walk)


def enumerate_double_covers(g: Multigraph, max_cycles: int):
    """All multisets of at most `max_cycles` simple cycles covering each
    edge exactly twice; cycles may repeat.  Intended for small graphs."""
    from .homology import simple_cycles

    _require_embeddable(g)
    cycles = simple_cycles(g)
    supports = [frozenset(e for e in g.edges() if ch[e]) for ch in cycles]
    m = g.m
    out = []

    def rec(start: int, count, picked: list[int]):
        uncovered = next((e for e in g.edges() if count[e] < 2), None)
        if uncovered is None:
            out.append(tuple(sorted(picked)))
            return
        if len(picked) >= max_cycles:
            return
        for i in range(start, len(cycles)):
            if uncovered not in supports[i]:
                continue
            if any(count[e] >= 2 for e in supports[i]):
                continue
            for e in supports[i]:
                count[e] += 1
            picked.append(i)
            rec(i, count, picked)  # allow the same cycle twice
            picked.pop()
            for e in supports[i]:
                count[e] -= 1

    rec(0, [0] * m, [])
    covers = []
    for pick in sorted(set(out)):
        walks = tuple(_cycle_walk(g, cycles[i]) for i in pick)
        covers.append(FaceCover(graph=g, walks=walks))
    return tuple(covers)


def surface_from_cover(cover: FaceCover) -> str:
    """Glue a disk onto every walk of a double cover and name the result:
    "sphere", "projective_plane", "other" (a closed surface of smaller
    Euler characteristic), or "singular" when some vertex link is not a
    single circle (the complex is not a surface there)."""
    g = cover.graph
    # Corners pair the arriving and departing darts of each walk step;
    # both live at the same vertex.  The link of a vertex is the graph
    # its darts form under corners: 2-regular everywhere, and a single
    # circle exactly when connected.
    corner_adj: dict[int, list[int]] = {d: [] for d in range(2 * g.m)}
    for walk in cover.walks:
        k = len(walk)
        for i, d in enumerate(walk):
            a = d ^ 1
            b = walk[(i + 1) % k]
            corner_adj[a].append(b)
            corner_adj[b].append(a)
    if any(len(nbrs) != 2 for nbrs in corner_adj.values()):
        return "singular"
    for v in range(g.n):
        darts = g.vertex_darts[v]
        if not darts:
            continue
        seen = {darts[0]}
        stack = [darts[0]]
        while stack:
            cur = stack.pop()
            for w in corner_adj[cur]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(darts):
            return "singular"
    chi = g.n - g.m + len(cover.walks)
    if chi == 2:
        return "sphere"
    if chi == 1:
        return "projective_plane"
    return "other"
