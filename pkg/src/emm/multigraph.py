"""Immutable dart-based multigraphs.

Edges are ordered pairs of vertex indices; edge i owns darts 2i (its beg
end) and 2i+1 (its end end), so the dart involution is ``d ^ 1``.  Loops
are edges with beg == end.  A vertex-free loop (an edge attached to no
vertex at all) is encoded with both endpoints equal to -1; it forms its
own connected component of genus 1.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import cached_property

NO_VERTEX = -1


class GraphError(ValueError):
    """Raised for malformed graph input."""


@dataclass(frozen=True)
class Multigraph:
    n: int
    ends: tuple[tuple[int, int], ...]
    vertex_names: tuple[str, ...] = ()
    edge_labels: tuple[str, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise GraphError("negative vertex count")
        for b, e in self.ends:
            if (b == NO_VERTEX) != (e == NO_VERTEX):
                raise GraphError("half-attached edge")
            if b != NO_VERTEX and not (0 <= b < self.n and 0 <= e < self.n):
                raise GraphError(f"edge endpoint out of range: {(b, e)}")
        if not self.vertex_names:
            object.__setattr__(self, "vertex_names",
                               tuple(str(v) for v in range(self.n)))
        if not self.edge_labels:
            object.__setattr__(self, "edge_labels",
                               tuple(f"e{i}" for i in range(self.m)))
        if len(self.vertex_names) != self.n or len(self.edge_labels) != self.m:
            raise GraphError("name/label count mismatch")

    # -- basic queries ------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.ends)

    def edges(self) -> range:
        return range(self.m)

    def is_loop(self, e: int) -> bool:
        return self.ends[e][0] == self.ends[e][1]

    def is_vertex_free(self, e: int) -> bool:
        return self.ends[e][0] == NO_VERTEX

    def dart_vertex(self, d: int) -> int:
        return self.ends[d >> 1][d & 1]

    @cached_property
    def vertex_darts(self) -> tuple[tuple[int, ...], ...]:
        """Darts anchored at each vertex, in dart order."""
        out: list[list[int]] = [[] for _ in range(self.n)]
        for d in range(2 * self.m):
            v = self.dart_vertex(d)
            if v != NO_VERTEX:
                out[v].append(d)
        return tuple(tuple(ds) for ds in out)

    def degree(self, v: int) -> int:
        return len(self.vertex_darts[v])

    @cached_property
    def components(self) -> tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]:
        """Connected components as (vertices, edges), vertex-free loops last."""
        seen = [False] * self.n
        comps = []
        for root in range(self.n):
            if seen[root]:
                continue
            seen[root] = True
            verts, queue = [root], [root]
            edge_set = set()
            while queue:
                v = queue.pop()
                for d in self.vertex_darts[v]:
                    edge_set.add(d >> 1)
                    w = self.dart_vertex(d ^ 1)
                    if not seen[w]:
                        seen[w] = True
                        verts.append(w)
                        queue.append(w)
            comps.append((tuple(sorted(verts)), tuple(sorted(edge_set))))
        for e in range(self.m):
            if self.is_vertex_free(e):
                comps.append(((), (e,)))
        return tuple(comps)

    @property
    def is_connected(self) -> bool:
        return len(self.components) <= 1

    @cached_property
    def bridges(self) -> frozenset[int]:
        """Edges whose removal disconnects their component."""
        # Loops and parallel copies are never bridges; classic DFS low-link
        # on the remaining edges, one dart per edge direction.
        disc = [0] * self.n
        low = [0] * self.n
        timer = 1
        out: set[int] = set()
        for root in range(self.n):
            if disc[root]:
                continue
            stack = [(root, -1, iter(self.vertex_darts[root]))]
            disc[root] = low[root] = timer
            timer += 1
            while stack:
                v, in_dart, it = stack[-1]
                advanced = False
                for d in it:
                    if d == (in_dart ^ 1) or (d >> 1) == (in_dart >> 1 if in_dart >= 0 else -1):
                        continue
                    w = self.dart_vertex(d ^ 1)
                    if w == v:
                        continue
                    if disc[w]:
                        low[v] = min(low[v], disc[w])
                        continue
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, d, iter(self.vertex_darts[w])))
                    advanced = True
                    break
                if advanced:
                    continue
                stack.pop()
                if stack:
                    pv = stack[-1][0]
                    low[pv] = min(low[pv], low[v])
                    if low[v] > disc[pv] and not self._has_parallel(in_dart >> 1):
                        out.add(in_dart >> 1)
        return frozenset(out)

    def _has_parallel(self, e: int) -> bool:
        b, t = self.ends[e]
        if b > t:
            b, t = t, b
        for f in range(self.m):
            if f != e:
                fb, ft = self.ends[f]
                if fb > ft:
                    fb, ft = ft, fb
                if (fb, ft) == (b, t):
                    return True
        return False

    # -- surgery (all return new graphs) ------------------------------

    def delete_edges(self, drop: set[int]) -> tuple["Multigraph", list[int]]:
        """Delete edges; returns (graph, old-edge -> new-edge map, -1 if gone)."""
        keep = [e for e in range(self.m) if e not in drop]
        emap = [-1] * self.m
        for new, old in enumerate(keep):
            emap[old] = new
        g = Multigraph(self.n, tuple(self.ends[e] for e in keep),
                       self.vertex_names, tuple(self.edge_labels[e] for e in keep))
        return g, emap

    def contract_edges(self, shrink: set[int]) -> tuple["Multigraph", list[int], list[int]]:
        """Contract a set of edges (loops among them are deleted).

        Returns (graph, vertex map, edge map with -1 for contracted edges).
        """
        parent = list(range(self.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in shrink:
            b, t = self.ends[e]
            if b == NO_VERTEX:
                raise GraphError("cannot contract a vertex-free loop")
            rb, rt = find(b), find(t)
            if rb != rt:
                parent[max(rb, rt)] = min(rb, rt)
        roots = sorted({find(v) for v in range(self.n)})
        vmap = [roots.index(find(v)) for v in range(self.n)]
        keep = [e for e in range(self.m) if e not in shrink]
        emap = [-1] * self.m
        ends = []
        for new, old in enumerate(keep):
            emap[old] = new
            b, t = self.ends[old]
            if b == NO_VERTEX:
                ends.append((NO_VERTEX, NO_VERTEX))
            else:
                ends.append((vmap[b], vmap[t]))
        names = tuple(self.vertex_names[v] for v in range(self.n) if find(v) == v)
        g = Multigraph(len(roots), tuple(ends), names,
                       tuple(self.edge_labels[e] for e in keep))
        return g, vmap, emap

    # -- construction and serialization --------------------------------

    @classmethod
    def from_pairs(cls, pairs, names=None, labels=None) -> "Multigraph":
        """Build from (beg, end) pairs over arbitrary hashable vertex names.

        ``None`` endpoints mark vertex-free loops.
        """
        order: list = []
        index: dict = {}
        if names is not None:
            for v in names:
                index[v] = len(order)
                order.append(v)
        ends = []
        for b, t in pairs:
            if b is None and t is None:
                ends.append((NO_VERTEX, NO_VERTEX))
                continue
            for v in (b, t):
                if v not in index:
                    index[v] = len(order)
                    order.append(v)
            ends.append((index[b], index[t]))
        return cls(len(order), tuple(ends), tuple(str(v) for v in order),
                   tuple(labels) if labels else ())

    @classmethod
    def from_edge_list(cls, text: str) -> "Multigraph":
        """Parse the plain text format: one ``beg end [label]`` per line,
        ``LOOP label`` for vertex-free loops; ``#`` starts a comment."""
        pairs, labels, names = [], [], []
        seen_names = set()
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = re.split(r"\s+", line)
            if parts[0] == "LOOP":
                if len(parts) != 2:
                    raise GraphError(f"line {lineno}: LOOP takes exactly one label")
                pairs.append((None, None))
                labels.append(parts[1])
                continue
            if len(parts) not in (2, 3):
                raise GraphError(f"line {lineno}: expected 'beg end [label]'")
            b, t = parts[0], parts[1]
            for v in (b, t):
                if v not in seen_names:
                    seen_names.add(v)
                    names.append(v)
            pairs.append((b, t))
            labels.append(parts[2] if len(parts) == 3 else f"e{len(labels)}")
        if not pairs:
            raise GraphError("empty edge list")
        return cls.from_pairs(pairs, names=names, labels=labels)

    def to_edge_list(self) -> str:
        lines = []
        for e in range(self.m):
            b, t = self.ends[e]
            if b == NO_VERTEX:
                lines.append(f"LOOP {self.edge_labels[e]}")
            else:
                lines.append(f"{self.vertex_names[b]} {self.vertex_names[t]} "
                             f"{self.edge_labels[e]}")
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "vertices": list(self.vertex_names),
            "edges": [
                {"beg": None if b == NO_VERTEX else self.vertex_names[b],
                 "end": None if t == NO_VERTEX else self.vertex_names[t],
                 "label": self.edge_labels[e]}
                for e, (b, t) in enumerate(self.ends)
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "Multigraph":
        pairs = [(ed["beg"], ed["end"]) for ed in data["edges"]]
        labels = [ed["label"] for ed in data["edges"]]
        return cls.from_pairs(pairs, names=data["vertices"], labels=labels)

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Multigraph":
        return cls.from_json_dict(json.loads(text))

    def __repr__(self):  # keep reprs short in test output
        return f"Multigraph(n={self.n}, m={self.m})"
