"""Integer edge-minimizing metrics from embeddings.

The constructions all factor through one device: a family of cycles

    c_1, ..., c_k  (edge chains)

induces the form q(x) = 1/2 * sum_i <x, c_i>^2 on cycle-space
coordinates, where <,> pairs a cohomology class with a chain.  When the
family is the face system of a sphere embedding, every non-bridge edge
lies on exactly two faces with opposite signs, so each edge functional
has norm exactly 1 and the result is the "planar" metric whose lattice
is of type A.  A projective-plane face system gives the type-D variant,
and merging two edge-disjoint faces of a sphere embedding gives the
type-D variant in the planar case.  Everything else is handled by an
exhaustive search over the finitely many Gram matrices any integer
metric could have.

`decide_zemm` splits the graph into loops and 2-connected blocks,
solves each piece, reassembles, and returns a verified certificate (or
a reasoned refusal: the answer "none" is only given when it is a
theorem).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .embed import Embedding, FaceCover, planar_embed, projective_embed
from .errors import BudgetExceeded
from .forms import QuadForm
from .homology import HomologyBasis, decompose, homology_basis
from .multigraph import GraphError, Multigraph
from .verify import verify_emm

Q = Fraction


def chain_square_form(basis: HomologyBasis, chains) -> QuadForm:
    """q(x) = 1/2 * sum over chains c of <x, c>^2, in basis coordinates."""
    g = basis.g
    cols = [tuple(ch[e] for ch in chains) for e in basis.basis_edges]
    gram = [[Q(sum(a * b for a, b in zip(cols[j], cols[k])), 2)
             for k in range(g)] for j in range(g)]
    return QuadForm(tuple(tuple(row) for row in gram))


def a_type_emm(embedding: Embedding, basis: HomologyBasis | None = None) -> QuadForm:
    """The planar metric: half sum of squares over all sphere faces."""
    if embedding.surface != "sphere":
        raise GraphError("type-A construction needs a sphere embedding")
    if basis is None:
        basis = homology_basis(embedding.graph)
    return chain_square_form(basis, embedding.face_chains)


def edge_disjoint_face_pair(embedding: Embedding) -> tuple[int, int] | None:
    """Two faces sharing no edge, lowest index pair, or None.

    A sphere embedding with g + 1 >= 6 faces always has one: were every
    two faces adjacent, the face-adjacency graph would contain a planar
    K5."""
    supports = [frozenset(e for e, c in enumerate(ch) if c)
                for ch in embedding.face_chains]
    k = len(supports)
    for i in range(k):
        for j in range(i + 1, k):
            if not (supports[i] & supports[j]):
                return (i, j)
    return None


def d_type_emm(embedding: Embedding, basis: HomologyBasis | None = None) -> QuadForm | None:
    """The type-D metric, from either kind of embedding.

    For a sphere embedding, two edge-disjoint faces are merged (their
    chains subtracted), dropping the face count from g + 1 to g.  For a
    projective-plane embedding the g faces are used as they stand, which
    only works when every non-bridge edge lies on two distinct faces;
    otherwise returns None and the caller may try another embedding.
    """
    if basis is None:
        basis = homology_basis(embedding.graph)
    chains = embedding.face_chains
    if embedding.surface == "sphere":
        pair = edge_disjoint_face_pair(embedding)
        if pair is None:
            return None
        i, j = pair
        merged = tuple(a - b for a, b in zip(chains[i], chains[j]))
        chains = tuple(ch for k, ch in enumerate(chains)
                       if k not in (i, j)) + (merged,)
    else:
        bridges = embedding.graph.bridges
        for e in embedding.graph.edges():
            if e in bridges:
                continue
            hits = [ch[e] for ch in chains if ch[e]]
            if sorted(map(abs, hits)) != [1, 1]:
                return None  # an edge walked twice by one face
    return chain_square_form(basis, chains)


def cover_form(cover: FaceCover, basis: HomologyBasis | None = None) -> QuadForm:
    """The half-sum-of-squares form of an arbitrary cycle double cover."""
    if basis is None:
        basis = homology_basis(cover.graph)
    return chain_square_form(basis, cover.chains)


# -- exhaustive search over candidate Gram matrices --------------------


def e_type_search(graph_or_basis, max_nodes: int = 100_000_000) -> QuadForm | None:
    """Find any integer edge-minimizing metric by exhausting the finite
    space of candidate Gram matrices, or prove there is none.

    Any such metric must have q(b*) = 1 on the basis coedges (diagonal
    1) and doubled off-diagonal entries in {-1, 0, 1} (Cauchy-Schwarz
    between distinct minimal vectors), so the search over these, pruned
    by positive definiteness of leading blocks and by the norm
    constraints of the remaining coedges, is complete: returning None
    proves no metric exists.  Exponential in genus; meant for genus <= 8.
    """
    if isinstance(graph_or_basis, HomologyBasis):
        basis = graph_or_basis
    else:
        basis = homology_basis(graph_or_basis)
    g = basis.g
    if g == 0:
        return QuadForm(())
    pairs = [(i, j) for j in range(g) for i in range(j)]
    pair_index = {p: t for t, p in enumerate(pairs)}
    col_done = {}  # pair position after which column j is complete
    for j in range(1, g):
        col_done[pair_index[(j - 1, j)]] = j

    # norm-1 constraints from coedges with support size >= 2
    cons_target: list[int] = []
    cons_terms: list[dict[int, int]] = []  # pair position -> coefficient
    seen_rows = set()
    for e in range(basis.graph.m):
        z = basis.coedge(e)
        supp = [i for i, c in enumerate(z) if c]
        if len(supp) < 2:
            continue
        key = z if z[supp[0]] > 0 else tuple(-c for c in z)
        if key in seen_rows:
            continue
        seen_rows.add(key)
        terms = {}
        for a in range(len(supp)):
            for b in range(a + 1, len(supp)):
                i, j = supp[a], supp[b]
                terms[pair_index[(i, j)]] = z[i] * z[j]
        cons_target.append(1 - sum(c * c for c in z))
        cons_terms.append(terms)

    ncons = len(cons_target)
    by_pair: list[list[int]] = [[] for _ in pairs]
    for c, terms in enumerate(cons_terms):
        for t in terms:
            by_pair[t].append(c)
    cur = [0] * ncons
    slack = [sum(abs(x) for x in terms.values())
             for terms in cons_terms]  # capacity of unassigned terms
    s = [0] * len(pairs)  # doubled off-diagonal entries
    nodes = 0

    def leading_minor_positive(j: int) -> bool:
        # doubled gram of the leading (j+1) block; PD grows column by
        # column, so checking the newest leading minor suffices
        rows = [[Q(2) if x == y else Q(s[pair_index[(min(x, y), max(x, y))]])
                 for y in range(j + 1)] for x in range(j + 1)]
        det = Q(1)
        for col in range(j + 1):
            piv = next((r for r in range(col, j + 1) if rows[r][col] != 0),
                       None)
            if piv is None:
                return False
            if piv != col:
                rows[col], rows[piv] = rows[piv], rows[col]
                det = -det
            det *= rows[col][col]
            inv = Q(1) / rows[col][col]
            for r in range(col + 1, j + 1):
                f = rows[r][col] * inv
                if f:
                    rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
        return det > 0

    def feasible(t: int) -> bool:
        for c in by_pair[t]:
            if abs(cons_target[c] - cur[c]) > slack[c]:
                return False
        return True

    def assign(t: int, val: int):
        s[t] = val
        for c in by_pair[t]:
            coef = cons_terms[c][t]
            cur[c] += coef * val
            slack[c] -= abs(coef)

    def unassign(t: int, val: int):
        for c in by_pair[t]:
            coef = cons_terms[c][t]
            cur[c] -= coef * val
            slack[c] += abs(coef)
        s[t] = 0

    def rec(t: int):
        nonlocal nodes
        if t == len(pairs):
            return all(cur[c] == cons_target[c] for c in range(ncons))
        nodes += 1
        if nodes > max_nodes:
            raise BudgetExceeded("Gram matrix search ran out of budget",
                                 nodes=nodes)
        for val in (-1, 0, 1):
            assign(t, val)
            ok = feasible(t)
            if ok and t in col_done:
                ok = leading_minor_positive(col_done[t])
            if ok and rec(t + 1):
                return True
            unassign(t, val)
        return False

    if not rec(0):
        return None
    gram = [[Q(0)] * g for _ in range(g)]
    for i in range(g):
        gram[i][i] = Q(1)
    for t, (i, j) in enumerate(pairs):
        gram[i][j] = gram[j][i] = Q(s[t], 2)
    return QuadForm(tuple(tuple(row) for row in gram))


# -- the decision procedure -------------------------------------------


@dataclass(frozen=True)
class PieceReport:
    edges: tuple[int, ...]  # edge ids in the original graph
    branch: str  # "loop" | "planar" | "projective" | "search"
    form: QuadForm | None
    detail: str

    def to_json_dict(self) -> dict:
        return {"edges": list(self.edges), "branch": self.branch,
                "form": None if self.form is None else self.form.to_json_dict(),
                "detail": self.detail}


@dataclass(frozen=True)
class ZemmResult:
    graph: Multigraph
    form: QuadForm | None
    pieces: tuple[PieceReport, ...]
    reason: str

    @property
    def exists(self) -> bool:
        return self.form is not None

    def to_json_dict(self) -> dict:
        return {"exists": self.exists,
                "form": None if self.form is None else self.form.to_json_dict(),
                "pieces": [p.to_json_dict() for p in self.pieces],
                "reason": self.reason}


def _solve_piece(piece: Multigraph, max_nodes: int):
    """(branch, form, detail) for one loop or 2-connected block; the
    form is None when provably no integer metric exists."""
    if piece.m == 1 and piece.is_loop(0):
        return "loop", QuadForm(((Q(1),),)), "single loop"
    basis = homology_basis(piece)
    emb, _witness = planar_embed(piece)
    if emb is not None:
        form = a_type_emm(emb, basis)
        return "planar", form, f"sphere embedding with {emb.face_count} faces"
    nth = 0
    while True:
        emb = projective_embed(piece, nth=nth, max_nodes=max_nodes)
        if emb is None:
            break
        form = d_type_emm(emb, basis)
        if form is not None and verify_emm(basis, form, kind="Z").ok:
            return ("projective", form,
                    f"projective-plane embedding with {emb.face_count} faces")
        nth += 1
    g = basis.g
    exhausted = (f"projective-plane rotation search exhausted after "
                 f"{nth} embeddings")
    if g in (6, 7, 8):
        form = e_type_search(basis)
        if form is not None:
            return "search", form, "exhaustive Gram matrix search"
        return ("search", None,
                f"not planar, not projective-planar ({exhausted}), and "
                "exhaustive Gram matrix search proves no integer metric "
                "exists")
    return ("none", None,
            f"not planar and not projective-planar ({exhausted}); an "
            f"irreducible integer metric on a 2-connected block is of type "
            f"A (sphere), D (projective plane) or exceptional of rank 6 to "
            f"8, and this block has rank {g}")


def assemble_piece_forms(basis: HomologyBasis, dec, piece_forms) -> QuadForm:
    """Orthogonal reassembly: q(x) = sum over pieces k of q_k(x
    restricted to piece k).

    A functional restricts to a piece through its action on the lifted
    piece cycles, so row j of the restriction matrix is the coordinate
    vector of the lifted j-th fundamental cycle of the piece.  On the
    coedge of an edge living in piece k this evaluates to the local
    coedge there and to zero on every other piece."""
    gram = [[Q(0)] * basis.g for _ in range(basis.g)]
    for k, piece in enumerate(dec.pieces):
        pbasis = homology_basis(piece)
        rows = [basis.chain_coords(dec.lift_chain(k, cyc))
                for cyc in pbasis.cycles]
        pg = piece_forms[k].gram
        gk = pbasis.g
        for a in range(basis.g):
            for b in range(basis.g):
                gram[a][b] += sum(rows[x][a] * pg[x][y] * rows[y][b]
                                  for x in range(gk) for y in range(gk))
    return QuadForm(tuple(tuple(row) for row in gram))


def decide_zemm(graph: Multigraph, max_nodes: int = 2_000_000_000) -> ZemmResult:
    """Decide whether the graph carries an integer edge-minimizing
    metric, returning a verified certificate or a reasoned refusal."""
    basis = homology_basis(graph)
    if basis.g == 0:
        return ZemmResult(graph, QuadForm(()), (),
                          "the graph is a forest; the zero-rank metric "
                          "is trivially minimizing")
    dec = decompose(graph)
    reports = []
    piece_forms = []
    for k, piece in enumerate(dec.pieces):
        edges = tuple(e for e in graph.edges()
                      if dec.edge_map[e] is not None
                      and dec.edge_map[e][0] == k)
        branch, form, detail = _solve_piece(piece, max_nodes)
        reports.append(PieceReport(edges=edges, branch=branch, form=form,
                                   detail=detail))
        if form is None:
            return ZemmResult(graph, None, tuple(reports),
                              f"block on edges {list(edges)} admits no "
                              f"integer metric: {detail}")
        piece_forms.append(form)

    form = assemble_piece_forms(basis, dec, piece_forms)
    verdict = verify_emm(basis, form, kind="Z")
    assert verdict.ok, f"reassembled certificate failed checks: {verdict}"
    return ZemmResult(graph, form, tuple(reports),
                      "every block carries an integer metric; their "
                      "orthogonal sum is one for the whole graph")
