"""Rational edge-minimizing metrics whose minimum is hit only by edge
functionals.

Such a "strong" metric exists for every graph.  Cycles carry q = x^2,
and any other graph decomposes into loops and 2-connected blocks, each
of which reduces to a bridgeless cubic graph.  The cubic case recurses:
cut the graph open at an edge e0 lying in no 2-edge cutset and re-glue
the four dangling half-edges in the three possible ways.  The straight
re-gluing suppresses e0, so its pulled-back metric has kernel exactly
the e0 functional; the two crossing re-gluings route through e0 and
stay positive there.  A rational mixture of the three pullbacks then
restores norm one on every edge functional, and an exact perturbation
tilts the result off any non-edge minimal vectors.  Every candidate is
machine-checked before it is accepted, so the functions here return
verified certificates or raise.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import mat_add, solve_general, transpose
from .forms import QuadForm, min_vectors
from .homology import (HomologyBasis, chain_boundary, cubic_reduction,
                       decompose, edge_outside_2cutsets, homology_basis,
                       is_coedge_by_columns)
from .multigraph import GraphError, Multigraph, NO_VERTEX
from .verify import verify_emm
from .zemm import assemble_piece_forms

Q = Fraction


# -- cutting a cubic graph open at an edge ----------------------------


@dataclass(frozen=True)
class SplitPiece:
    """One re-gluing of a graph cut open at an edge.

    emap[e] = (new edge, sign) says how old edge e sits inside the new
    edge that absorbed it (None for the cut edge itself); weld_edges
    names the new edge passing through each of the two welds.
    """
    graph: Multigraph
    emap: tuple
    weld_edges: tuple[int, int]


@dataclass(frozen=True)
class SplitTriple:
    graph: Multigraph
    edge: int
    crossings: tuple[SplitPiece, SplitPiece]
    straight: SplitPiece


def split_at_edge(g: Multigraph, e0: int) -> SplitTriple:
    """Cut open at a non-loop edge with degree-3 endpoints and re-glue.

    The endpoints of e0 disappear and the four other darts there are
    welded in pairs, merging their edges into longer ones or closing
    them into vertex-free loops.  The straight re-gluing (listed last)
    pairs the two darts at each endpoint with each other, exactly as if
    e0 were deleted and the degree-2 endpoints suppressed.
    """
    u, v = g.ends[e0]
    if u == NO_VERTEX or u == v:
        raise GraphError("cannot split at a loop")
    if g.degree(u) != 3 or g.degree(v) != 3:
        raise GraphError("splitting needs degree-3 endpoints")
    a1, a2 = (d for d in g.vertex_darts[u] if d >> 1 != e0)
    b1, b2 = (d for d in g.vertex_darts[v] if d >> 1 != e0)
    pairings = [((a1, b1), (a2, b2)),
                ((a1, b2), (a2, b1)),
                ((a1, a2), (b1, b2))]
    pieces = [_weld(g, e0, p) for p in pairings]
    return SplitTriple(g, e0, (pieces[0], pieces[1]), pieces[2])


def _weld(g: Multigraph, e0: int, pairing) -> SplitPiece:
    weld = {}
    for x, y in pairing:
        weld[x] = y
        weld[y] = x
    affected = sorted({d >> 1 for d in weld})
    afset = set(affected)
    u, v = g.ends[e0]

    keep_names = [nm for w, nm in enumerate(g.vertex_names) if w not in (u, v)]
    pairs: list = []
    labels: list = []
    emap: list = [None] * g.m
    for e in range(g.m):
        if e == e0 or e in afset:
            continue
        b, t = g.ends[e]
        pairs.append((None, None) if b == NO_VERTEX
                     else (g.vertex_names[b], g.vertex_names[t]))
        labels.append(g.edge_labels[e])
        emap[e] = (len(pairs) - 1, 1)

    visited: set[int] = set()
    weld_edge: dict[frozenset, int] = {}

    def walk(start: int, circle: bool):
        """Collect the edge path grown from `start`; a segment's sign is
        +1 when the walk runs the old edge beg -> end."""
        cur = start
        segs, crossed = [], []
        while True:
            visited.add(cur)
            visited.add(cur ^ 1)
            segs.append((cur >> 1, 1 if cur % 2 == 0 else -1))
            far = cur ^ 1
            if far not in weld:
                return segs, crossed, far
            mate = weld[far]
            crossed.append(frozenset((far, mate)))
            if circle and mate == start:
                return segs, crossed, None
            cur = mate

    def record(segs, crossed, endpoints):
        pairs.append(endpoints)
        labels.append(f"w{len(weld_edge)}")
        eid = len(pairs) - 1
        for e, sgn in segs:
            emap[e] = (eid, sgn)
        for key in crossed:
            weld_edge[key] = eid

    # paths first, from their lowest free dart; whatever remains closes up
    for d in sorted(dd for e in affected for dd in (2 * e, 2 * e + 1)
                    if dd not in weld):
        if d in visited:
            continue
        segs, crossed, final = walk(d, circle=False)
        record(segs, crossed,
               (g.vertex_names[g.dart_vertex(d)],
                g.vertex_names[g.dart_vertex(final)]))
    for e in affected:
        for d in (2 * e, 2 * e + 1):
            if d not in visited:
                segs, crossed, _ = walk(d, circle=True)
                record(segs, crossed, (None, None))

    graph = Multigraph.from_pairs(pairs, names=keep_names, labels=labels)
    return SplitPiece(graph, tuple(emap),
                      (weld_edge[frozenset(pairing[0])],
                       weld_edge[frozenset(pairing[1])]))


# -- lifting cycles back through a re-gluing --------------------------


def _lift_rows(basis: HomologyBasis, piece: SplitPiece, e0: int):
    """Basis cycles of the re-glued graph as coordinate rows upstairs.

    Each new edge expands to its path of old edges; the coefficient of
    the cut edge is whatever closes the boundary at the two removed
    vertices (zero for the straight re-gluing, the net number of signed
    weld crossings otherwise)."""
    g = basis.graph
    u, v = g.ends[e0]
    rows = []
    for cyc in homology_basis(piece.graph).cycles:
        chain = [0] * g.m
        for e in range(g.m):
            tag = piece.emap[e]
            if tag is not None:
                chain[e] = tag[1] * cyc[tag[0]]
        bdry = chain_boundary(g, chain)
        assert bdry[v] == -bdry[u]
        chain[e0] = bdry[u]
        assert not any(chain_boundary(g, chain)), "lift failed to close up"
        rows.append(basis.chain_coords(chain))
    return tuple(rows)


def split_pullback(basis: HomologyBasis, piece: SplitPiece, e0: int,
                   q: QuadForm) -> QuadForm:
    """The form x |-> q(x composed with lifting), on the big graph."""
    rows = _lift_rows(basis, piece, e0)
    if not rows:
        zero = tuple(tuple(Q(0) for _ in range(basis.g))
                     for _ in range(basis.g))
        return QuadForm(zero)
    return q.pullback(transpose(rows))


# -- exact strengthening ------------------------------------------------


def strengthen(basis: HomologyBasis, form: QuadForm) -> QuadForm | None:
    """Tilt a metric off its non-edge minimal vectors, exactly.

    The input must already be a rational metric (norm one on every edge
    functional, minimum one).  A symmetric correction is solved for
    that vanishes on every edge functional and equals one on every
    other minimal vector; added with a small enough rational weight it
    leaves the edge norms untouched and pushes everything else above
    one.  The weight starts at 1/8 and halves until the full strong
    verification passes.  Returns None when no correction exists.
    """
    report = min_vectors(form, 1)
    if report.minimum != 1:
        return None
    bad = [v for v in report.vectors_of_value(1)
           if not is_coedge_by_columns(basis, v)]
    if not bad:
        return form
    n = basis.g
    idx = [(i, j) for i in range(n) for j in range(i, n)]

    def value_row(vec):
        # q0(vec) as a linear function of the upper-triangle entries
        return [vec[i] * vec[j] * (1 if i == j else 2) for i, j in idx]

    stars: dict[tuple, None] = {}
    for e in range(basis.graph.m):
        z = basis.coedge(e)
        if any(z):
            lead = next(c for c in z if c)
            stars[z if lead > 0 else tuple(-c for c in z)] = None
    rows = [value_row(z) for z in stars] + [value_row(v) for v in bad]
    rhs = [Q(0)] * len(stars) + [Q(1)] * len(bad)
    sol = solve_general(rows, rhs)
    if sol is None:
        return None
    g0 = [[Q(0)] * n for _ in range(n)]
    for t, (i, j) in enumerate(idx):
        g0[i][j] = g0[j][i] = sol[t]
    eps = Q(1, 8)
    for _ in range(64):
        cand = QuadForm(mat_add(form.gram, tuple(map(tuple, g0)), Q(1), eps))
        if verify_emm(basis, cand, kind="Q", strong=True).ok:
            return cand
        eps /= 2
    return None


# -- the cubic recursion ------------------------------------------------


def _weight_candidates(c1, c2, c3):
    """Mixing weights (x1, x2) for the two crossing pullbacks; the
    straight one takes up the slack x3 = 1 - x1 - x2.

    Every pair satisfies x1*c1 + x2*c2 = 1 with x1, x2, x3 >= 0 -- the
    exact conditions putting norm one back on all edge functionals,
    where c1, c2 are the crossing norms of the cut functional.  The
    balanced point goes first when the c-values say it is safe, then
    the rest of the feasible segment from the middle outward, so the
    verification pass that gates every candidate always has somewhere
    left to go."""
    out: list[tuple[Fraction, Fraction]] = []

    def push(x1, x2):
        if (0 <= x1 and 0 <= x2 and x1 + x2 <= 1
                and x1 * c1 + x2 * c2 == 1 and (x1, x2) not in out):
            out.append((x1, x2))

    ladder = [Q(1, 8 << k) for k in range(8)]
    if c1 > 0 and c2 > 0:
        bal = 1 / (c1 + c2)
        if c1 + c2 >= 2 and (c2 <= 2 or c3 <= 2) and (c1 <= 2 or c3 >= 2):
            push(bal, bal)
        for s in ([Q(1, 2), c1 / (c1 + c2), Q(0), Q(1)]
                  + ladder + [1 - e for e in ladder]):
            push(s / c1, (1 - s) / c2)
    elif c1 > 0:
        for t in [Q(0)] + ladder:
            push(1 / c1, t)
    elif c2 > 0:
        for t in [Q(0)] + ladder:
            push(t, 1 / c2)
    return out


_cubic_memo: dict[Multigraph, QuadForm] = {}


def clear_memo():
    _cubic_memo.clear()


def strong_qemm_cubic(graph: Multigraph) -> QuadForm:
    """Strong metric for a connected bridgeless cubic graph that is not
    a cycle; memoized, since the recursion meets the same re-gluings
    over and over."""
    cached = _cubic_memo.get(graph)
    if cached is not None:
        return cached
    e0 = edge_outside_2cutsets(graph)
    if e0 is None:
        raise GraphError("cycle graphs have no splitting edge")
    basis = homology_basis(graph)
    e0star = basis.coedge(e0)
    triple = split_at_edge(graph, e0)

    pulled = []
    for sp in triple.crossings:
        p = split_pullback(basis, sp, e0, strong_qemm(sp.graph))
        pulled.append((p, p(e0star)))
    sp3 = triple.straight
    q3 = strong_qemm(sp3.graph)
    p3 = split_pullback(basis, sp3, e0, q3)
    assert p3(e0star) == 0, "straight re-gluing must kill the cut functional"
    b3 = homology_basis(sp3.graph)
    wsum = tuple(x + y for x, y in zip(b3.coedge(sp3.weld_edges[0]),
                                       b3.coedge(sp3.weld_edges[1])))
    c3 = q3(wsum)

    (p1, c1), (p2, c2) = pulled
    for x1, x2 in _weight_candidates(c1, c2, c3):
        gram = mat_add(mat_add(p1.gram, p2.gram, x1, x2),
                       p3.gram, Q(1), Q(1) - x1 - x2)
        cand = QuadForm(gram)
        if not verify_emm(basis, cand, kind="Q").ok:
            continue
        strong = strengthen(basis, cand)
        if strong is not None:
            _cubic_memo[graph] = strong
            return strong
    raise GraphError(f"no verified strong mixture at edge {e0}; "
                     f"c-values {c1}, {c2}, {c3}")


def _strong_piece(piece: Multigraph) -> QuadForm:
    if piece.m == 1 and piece.is_loop(0):
        return QuadForm(((Q(1),),))
    red = cubic_reduction(piece)
    if red.is_loop:
        q_red = QuadForm(((Q(1),),))
    else:
        q_red = strong_qemm_cubic(red.reduced)
    pbasis = homology_basis(piece)
    rows = [pbasis.chain_coords(red.push_chain(cyc))
            for cyc in homology_basis(red.reduced).cycles]
    q = q_red.pullback(transpose(rows))
    # the reduced graph can have more edge functionals than the piece
    # (the ones created by splitting high-degree vertices), so the
    # pullback is a metric but not always a strong one
    strong = strengthen(pbasis, q)
    if strong is None:
        raise GraphError("reduction pullback could not be strengthened")
    return strong


def strong_qemm(graph: Multigraph) -> QuadForm:
    """A strong rational edge-minimizing metric, machine-verified.

    One exists for every graph: the decomposition into loops and
    2-connected blocks is assembled orthogonally, so a failure to
    verify here means a bug, not a property of the input."""
    basis = homology_basis(graph)
    if basis.g == 0:
        return QuadForm(())
    dec = decompose(graph)
    q = assemble_piece_forms(basis, dec, [_strong_piece(p)
                                          for p in dec.pieces])
    verdict = verify_emm(basis, q, kind="Q", strong=True)
    if not verdict.ok:
        raise GraphError(f"assembled metric failed verification: {verdict}")
    return q
