"""Where the period map of stable curves extends.

For the dual graph G of a stable curve, boundary behaviour of the
period map into a toroidal compactification is read off H^1(G, Z) with
its edge functionals: the map extends regularly at the curve exactly
when the cone of length-weighted forms of G is supported by the fan.
The three classical fans give three different answers:

* the second Voronoi fan always supports it -- coedge matrices are
  totally unimodular, the matroidal condition for every length choice
  to land in a common Delaunay-compatible cone;
* the perfect cone fan always supports it -- a strong rational
  edge-minimizing metric is an interior certificate;
* the central cone fan supports it exactly when an integral
  edge-minimizing metric exists, which `decide_zemm` settles either
  way.

Each verdict carries a machine-verified certificate and serializes to
a stable JSON shape.  Regularity is inherited by edge contractions
(the degenerations deeper into the boundary): `contraction_pullback`
restricts a metric to a contraction and
`contraction_monotonicity_check` verifies the inheritance edge by
edge.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .forms import QuadForm, totally_unimodular
from .homology import HomologyBasis, homology_basis
from .multigraph import GraphError, Multigraph
from .qemm import strong_qemm
from .verify import verify_emm
from .zemm import decide_zemm


class FanKind(str, Enum):
    SECOND_VORONOI = "second-voronoi"
    PERFECT = "perfect"
    CENTRAL = "central"

    @classmethod
    def _missing_(cls, value):
        aliases = {"vor": cls.SECOND_VORONOI, "voronoi": cls.SECOND_VORONOI,
                   "perf": cls.PERFECT, "cent": cls.CENTRAL}
        if isinstance(value, str):
            low = value.lower()
            for member in cls:
                if member.value == low:
                    return member
            return aliases.get(low)
        return None


@dataclass(frozen=True)
class RegularityVerdict:
    graph: Multigraph
    fan: FanKind
    regular: bool
    certificate: dict
    narrative: str

    def to_json_dict(self) -> dict:
        return {"schema_version": 1,
                "fan": self.fan.value,
                "regular": self.regular,
                "narrative": self.narrative,
                "certificate": self.certificate}

    def __repr__(self):
        word = "regular" if self.regular else "not regular"
        return f"RegularityVerdict({self.fan.value}: {word})"


def s_of_g(graph_or_basis) -> tuple[tuple[int, ...], ...]:
    """Distinct nonzero edge functionals up to sign, canonically signed
    (first nonzero entry positive) and sorted: the rank-one squares
    spanning the cone of the graph."""
    if isinstance(graph_or_basis, HomologyBasis):
        basis = graph_or_basis
    else:
        basis = homology_basis(graph_or_basis)
    out = set()
    for e in range(basis.graph.m):
        z = basis.coedge(e)
        if any(z):
            lead = next(c for c in z if c)
            out.add(z if lead > 0 else tuple(-c for c in z))
    return tuple(sorted(out))


def torelli_regular(graph: Multigraph, fan, max_nodes: int = 2_000_000_000
                    ) -> RegularityVerdict:
    """Decide regularity of the extended period map at this dual graph
    for the chosen fan, with a verified certificate either way."""
    fan = FanKind(fan)
    basis = homology_basis(graph)

    if fan is FanKind.SECOND_VORONOI:
        rows = tuple(basis.coedge(e) for e in graph.edges())
        ok, witness = totally_unimodular(rows)
        if not ok:
            raise GraphError(f"coedge matrix unexpectedly not totally "
                             f"unimodular: {witness}")
        cert = {"coedge_matrix_totally_unimodular": True,
                "edges": graph.m, "genus": basis.g}
        narrative = (
            f"The coedge matrix ({graph.m} edge functionals of genus "
            f"{basis.g}) is totally unimodular, as for every graph; "
            "hence all length-weighted forms of the graph lie in a "
            "common matroidal cone of the second Voronoi fan, and the "
            "period map extends regularly at this curve.")
        return RegularityVerdict(graph, fan, True, cert, narrative)

    if fan is FanKind.PERFECT:
        q = strong_qemm(graph)
        verdict = verify_emm(basis, q, kind="Q", strong=True)
        cert = {"strong_metric": q.to_json_dict(),
                "verified": verdict.to_json_dict()}
        narrative = (
            "A strong rational edge-minimizing metric exists (one does "
            "for every graph): it takes the value 1 exactly on the edge "
            "functionals and more everywhere else on the lattice, which "
            "places the cone of the graph inside a single perfect cone; "
            "the period map extends regularly at this curve.")
        return RegularityVerdict(graph, fan, True, cert, narrative)

    result = decide_zemm(graph, max_nodes=max_nodes)
    if result.exists:
        verdict = verify_emm(basis, result.form, kind="Z")
        cert = {"metric": result.form.to_json_dict(),
                "verified": verdict.to_json_dict(),
                "pieces": [p.to_json_dict() for p in result.pieces]}
        narrative = (
            "An integral edge-minimizing metric exists and is verified; "
            "its root lattice places the cone of the graph inside a "
            "central cone, so the period map extends regularly at this "
            "curve.")
        return RegularityVerdict(graph, fan, True, cert, narrative)
    cert = {"metric": None,
            "pieces": [p.to_json_dict() for p in result.pieces],
            "reason": result.reason}
    narrative = (
        f"No integral edge-minimizing metric exists: {result.reason}. "
        "The cone of the graph meets the interior of no central cone, "
        "so the period map does not extend regularly at this curve.")
    return RegularityVerdict(graph, fan, False, cert, narrative)


# -- inheritance along contractions ------------------------------------


def contraction_pullback(graph: Multigraph, shrink, form: QuadForm
                         ) -> tuple[Multigraph, QuadForm]:
    """Contract edges and restrict the metric to the smaller lattice.

    H^1 of the contraction sits inside H^1 of the graph (a functional
    acts through the pushed-down cycles), surviving edge functionals
    map to edge functionals, and the minimum cannot drop on a
    sublattice -- so an edge-minimizing metric restricts to one.
    Returns (contracted graph, restricted form)."""
    shrink = set(shrink)
    for e in shrink:
        if graph.is_loop(e):
            raise GraphError("only non-loop edges can be contracted")
    basis = homology_basis(graph)
    if form.dim != basis.g:
        raise ValueError("form dimension does not match the graph genus")
    contracted, _vmap, emap = graph.contract_edges(shrink)
    cbasis = homology_basis(contracted)
    cols = []
    for cyc in basis.cycles:
        chain = [0] * contracted.m
        for e in range(graph.m):
            if emap[e] != -1:
                chain[emap[e]] = cyc[e]
        cols.append(cbasis.chain_coords(chain))
    rows = [tuple(col[j] for col in cols) for j in range(cbasis.g)]
    return contracted, form.pullback(rows)


def contraction_monotonicity_check(graph: Multigraph, form: QuadForm,
                                   kind: str = "Z") -> bool:
    """Verify, for every single non-loop edge contraction, that the
    restricted form is again a verified edge-minimizing metric."""
    for e in graph.edges():
        if graph.is_loop(e):
            continue
        contracted, q = contraction_pullback(graph, {e}, form)
        if not verify_emm(contracted, q, kind=kind).ok:
            return False
    return True
