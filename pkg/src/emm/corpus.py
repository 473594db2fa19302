"""Built-in example graphs with their established facts.

Each entry pins down what is known for the graph: genus, planarity,
cellular projective-plane embeddability where it has been settled
(None means not pinned), and the integral-metric verdict with the
root-lattice label of the certificate that `decide_zemm` produces.
`check_entry` recomputes everything and reports mismatches, which is
what the command-line `corpus` command runs.
"""
from __future__ import annotations

from dataclasses import dataclass

from .embed import planar_embed, projective_embed
from .forms import root_lattice_type
from .homology import genus
from .multigraph import GraphError, Multigraph
from .verify import verify_emm
from .zemm import decide_zemm


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    graph: Multigraph
    genus: int
    planar: bool
    projective_planar: bool | None
    zemm_exists: bool
    zemm_type: str | None


def _g(pairs, names):
    return Multigraph.from_pairs(pairs, names=list(names))


def _complete(n: int) -> Multigraph:
    verts = [str(i) for i in range(n)]
    return _g([(verts[a], verts[b]) for a in range(n)
               for b in range(a + 1, n)], verts)


def _fig1() -> Multigraph:
    names = ["n1", "n2", "n3", "n4", "n5", "n7", "n8", "n9", "n10", "n11",
             "v1", "v2", "v3"]
    edges = [("n1", "n2"), ("n2", "n3"), ("n3", "n4"), ("n4", "n1"),
             ("n7", "n8"), ("n8", "n9"), ("n9", "n10"), ("n10", "n7"),
             ("n1", "n5"), ("n5", "n3"), ("n7", "n11"), ("n11", "n9"),
             ("n2", "v1"), ("v1", "n8"), ("n5", "v2"), ("v2", "n11"),
             ("n4", "v3"), ("v3", "n10"), ("v1", "v2"), ("v2", "v3"),
             ("v3", "v1")]
    return _g(edges, names)


def _build() -> dict[str, CorpusEntry]:
    loop = Multigraph.from_pairs([("a", "a")], names=["a"])
    theta = _g([("u", "v")] * 3, ["u", "v"])
    k4 = _complete(4)
    k5 = _complete(5)
    k7 = _complete(7)
    k33 = _g([(a, b) for a in "012" for b in "345"], "012345")
    petersen = _g([("0", "1"), ("1", "2"), ("2", "3"), ("3", "4"), ("4", "0"),
                   ("5", "7"), ("7", "9"), ("9", "6"), ("6", "8"), ("8", "5"),
                   ("0", "5"), ("1", "6"), ("2", "7"), ("3", "8"), ("4", "9")],
                  [str(i) for i in range(10)])
    wheel_w5 = _g([("0", "1"), ("1", "2"), ("2", "3"), ("3", "4"), ("4", "0"),
                   ("h", "0"), ("h", "1"), ("h", "2"), ("h", "3"), ("h", "4")],
                  ["0", "1", "2", "3", "4", "h"])
    prism = _g([("a1", "a2"), ("a2", "a3"), ("a3", "a1"),
                ("b1", "b2"), ("b2", "b3"), ("b3", "b1"),
                ("a1", "b1"), ("a2", "b2"), ("a3", "b3")],
               ["a1", "a2", "a3", "b1", "b2", "b3"])

    entries = [
        CorpusEntry("loop", loop, 1, True, True, True, "A1"),
        CorpusEntry("theta", theta, 2, True, True, True, "A2"),
        CorpusEntry("k4", k4, 3, True, True, True, "A3"),
        CorpusEntry("k5", k5, 6, False, True, True, "D6"),
        CorpusEntry("k33", k33, 4, False, True, True, "D4"),
        CorpusEntry("k7", k7, 15, False, False, False, None),
        CorpusEntry("petersen", petersen, 6, False, True, True, "D6"),
        CorpusEntry("wheel_w5", wheel_w5, 5, True, None, True, "A5"),
        CorpusEntry("prism", prism, 4, True, None, True, "A4"),
        CorpusEntry("fig1_genus9", _fig1(), 9, False, False, False, None),
    ]
    return {e.name: e for e in entries}


CORPUS: dict[str, CorpusEntry] = _build()


def corpus_graph(name: str) -> Multigraph:
    try:
        return CORPUS[name].graph
    except KeyError:
        known = ", ".join(sorted(CORPUS))
        raise GraphError(f"unknown corpus graph {name!r} (known: {known})")


def check_entry(entry: CorpusEntry,
                max_nodes: int = 2_000_000_000) -> list[str]:
    """Recompute every pinned fact; returns a list of mismatch
    descriptions (empty = all good)."""
    bad: list[str] = []
    g = entry.graph
    got = genus(g)
    if got != entry.genus:
        bad.append(f"genus {got} != {entry.genus}")
    emb, _ = planar_embed(g)
    if (emb is not None) != entry.planar:
        bad.append(f"planar {emb is not None} != {entry.planar}")
    if entry.projective_planar is not None:
        pemb = projective_embed(g, max_nodes=max_nodes)
        if (pemb is not None) != entry.projective_planar:
            bad.append(f"projective_planar {pemb is not None} != "
                       f"{entry.projective_planar}")
    result = decide_zemm(g, max_nodes=max_nodes)
    if result.exists != entry.zemm_exists:
        bad.append(f"zemm_exists {result.exists} != {entry.zemm_exists}")
    elif result.exists:
        if not verify_emm(g, result.form, kind="Z").ok:
            bad.append("integral certificate failed verification")
        label = root_lattice_type(result.form).label
        if entry.zemm_type is not None and label != entry.zemm_type:
            bad.append(f"zemm_type {label} != {entry.zemm_type}")
    return bad
