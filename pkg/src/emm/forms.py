"""Rational quadratic forms on lattices, with exact certificates.

A `QuadForm` stores the Gram matrix of q over the rationals, so the
associated bilinear form is b(u, v) = u G v^T and q(v) = v G v^T.  The
integral forms of interest here are *even after doubling*: 2q has integer
entries and even diagonal, i.e. q(v) is an integer for every integer v.

All arithmetic is exact (`fractions.Fraction`); nothing in this module
touches floating point.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .exact import (frac, fraction_to_str, integer_span_is_full, mat, mat_inv,
                    mat_mul, transpose)

Q = Fraction


@dataclass(frozen=True)
class QuadForm:
    """A quadratic form given by its (symmetric, rational) Gram matrix."""

    gram: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        g = mat(self.gram)
        object.__setattr__(self, "gram", g)
        n = len(g)
        if any(len(row) != n for row in g):
            raise ValueError("gram matrix must be square")
        for i in range(n):
            for j in range(i):
                if g[i][j] != g[j][i]:
                    raise ValueError("gram matrix must be symmetric")

    @property
    def dim(self) -> int:
        return len(self.gram)

    def __call__(self, v) -> Fraction:
        return self.bilinear(v, v)

    def bilinear(self, u, v) -> Fraction:
        if len(u) != self.dim or len(v) != self.dim:
            raise ValueError("vector length does not match form dimension")
        return sum(frac(u[i]) * self.gram[i][j] * frac(v[j])
                   for i in range(self.dim) for j in range(self.dim))

    @property
    def is_even_integral(self) -> bool:
        """True when 2q is an even integral form (q is Z-valued on Z^n)."""
        for i, row in enumerate(self.gram):
            if row[i].denominator != 1:
                return False
            for j, x in enumerate(row):
                if j != i and (2 * x).denominator != 1:
                    return False
        return True

    @cached_property
    def _ldl(self):
        """q(x) = sum_i d[i] * (x_i + sum_{j>i} u[i][j] x_j)^2, or None
        when the form is not positive definite."""
        n = self.dim
        a = [list(row) for row in self.gram]
        d = [Q(0)] * n
        u = [[Q(0)] * n for _ in range(n)]
        for i in range(n):
            d[i] = a[i][i]
            if d[i] <= 0:
                return None
            for j in range(i + 1, n):
                u[i][j] = a[i][j] / d[i]
            for j in range(i + 1, n):
                for k in range(j, n):
                    a[j][k] -= d[i] * u[i][j] * u[i][k]
        return tuple(d), tuple(tuple(row) for row in u)

    @property
    def is_positive_definite(self) -> bool:
        return self._ldl is not None

    def pullback(self, rows) -> "QuadForm":
        """Form induced on a sublattice: row r of `rows` is the image of
        the r-th new basis vector in the coordinates of this form."""
        a = mat(rows)
        return QuadForm(mat_mul(mat_mul(a, self.gram), transpose(a)))

    def to_json_dict(self) -> dict:
        return {"dim": self.dim,
                "gram": [[fraction_to_str(x) for x in row]
                         for row in self.gram]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "QuadForm":
        return cls(tuple(tuple(Fraction(x) for x in row)
                         for row in data["gram"]))

    def __repr__(self):
        return f"QuadForm(dim={self.dim})"


def resistance_form(basis, lengths) -> QuadForm:
    """Form on cycle space induced by edge lengths: the Gram matrix of the
    inner product sum_e lengths[e] * f(e) * h(e) on the cycle basis is
    inverted, which is the form whose unit ball is the projection picture
    used throughout.  `basis` is a `HomologyBasis`; lengths are positive
    rationals indexed by edge."""
    lens = [frac(x) for x in lengths]
    if len(lens) != basis.graph.m:
        raise ValueError("need one length per edge")
    if any(x <= 0 for x in lens):
        raise ValueError("edge lengths must be positive")
    g = basis.g
    cyc = basis.cycles
    bg = [[sum(lens[e] * cyc[j][e] * cyc[k][e] for e in range(basis.graph.m))
           for k in range(g)] for j in range(g)]
    return QuadForm(mat_inv(mat(bg)))


@dataclass(frozen=True)
class ShortVectorReport:
    """All nonzero integer vectors with q(v) <= bound, one per +/- pair."""

    bound: Fraction
    vectors: tuple[tuple[int, ...], ...]
    values: tuple[Fraction, ...]

    @property
    def minimum(self) -> Fraction | None:
        return min(self.values) if self.values else None

    def vectors_of_value(self, value) -> tuple[tuple[int, ...], ...]:
        want = frac(value)
        return tuple(v for v, x in zip(self.vectors, self.values)
                     if x == want)


def min_vectors(form: QuadForm, bound) -> ShortVectorReport:
    """Enumerate nonzero v in Z^n with q(v) <= bound, up to sign.

    Uses the exact LDL split q(x) = sum d_i (x_i + c_i)^2 and walks each
    coordinate outward from the interval's rational center, so no square
    roots (and no floats) are ever taken.
    """
    b = frac(bound)
    if form._ldl is None:
        raise ValueError("form is not positive definite")
    d, u = form._ldl
    n = form.dim
    found: dict[tuple[int, ...], Fraction] = {}
    x = [0] * n

    def descend(i: int, weight: Fraction):
        if i < 0:
            v = tuple(x)
            if any(v):
                for c in v:
                    if c != 0:
                        if c < 0:
                            v = tuple(-y for y in v)
                        break
                found[v] = weight
            return
        center = -sum(u[i][j] * x[j] for j in range(i + 1, n))
        room = b - weight
        start = (center + Q(1, 2)).__floor__()  # nearest integer to center
        t = start
        while d[i] * (t - center) ** 2 <= room:
            x[i] = t
            descend(i - 1, weight + d[i] * (t - center) ** 2)
            t += 1
        t = start - 1
        while d[i] * (t - center) ** 2 <= room:
            x[i] = t
            descend(i - 1, weight + d[i] * (t - center) ** 2)
            t -= 1
        x[i] = 0

    descend(n - 1, Q(0))
    order = sorted(found.items(), key=lambda kv: (kv[1], kv[0]))
    return ShortVectorReport(bound=b,
                             vectors=tuple(v for v, _ in order),
                             values=tuple(val for _, val in order))


@dataclass(frozen=True)
class RootDecomposition:
    """ADE decomposition of an even lattice generated by its roots."""

    summands: tuple[tuple[str, int], ...]
    simple_roots: tuple[tuple[int, ...], ...]
    root_count: int

    @property
    def label(self) -> str:
        return " + ".join(f"{letter}{rank}" for letter, rank in self.summands)

    def __repr__(self):
        return f"RootDecomposition({self.label})"


_ROOT_COUNTS = {"A": lambda n: n * (n + 1),
                "D": lambda n: 2 * n * (n - 1),
                "E": lambda n: {6: 72, 7: 126, 8: 240}[n]}


def _classify_dynkin(nodes: list[int], adj: dict[int, list[int]]):
    """Name one connected simply-laced Dynkin diagram."""
    deg = {v: len(adj[v]) for v in nodes}
    if max(deg.values(), default=0) <= 2:
        # a path (cycles cannot occur for a definite form)
        ends = [v for v in nodes if deg[v] <= 1]
        assert len(ends) == 2 or len(nodes) == 1, "diagram is not a tree"
        return ("A", len(nodes))
    branch = [v for v in nodes if deg[v] == 3]
    assert len(branch) == 1 and max(deg.values()) == 3, \
        "diagram is not of ADE shape"
    hub = branch[0]
    arms = []
    for first in adj[hub]:
        length, prev, cur = 1, hub, first
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if not nxt:
                break
            assert len(nxt) == 1
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    a, bb, c = arms
    if a == 1 and bb == 1:
        return ("D", c + 3)
    assert (a, bb) == (1, 2) and c in (2, 3, 4), "diagram is not of ADE shape"
    return ("E", c + 4)


def root_lattice_type(form: QuadForm) -> RootDecomposition:
    """Identify the ADE type of an even positive definite form whose
    norm-1 vectors (norm 2 for 2q) span the lattice over Z.

    Raises ValueError when the form is not even integral, not positive
    definite, or its roots fail to span; the root count of the named
    diagram is re-derived as a self-check.
    """
    if not form.is_even_integral:
        raise ValueError("doubled form is not even integral")
    if not form.is_positive_definite:
        raise ValueError("form is not positive definite")
    n = form.dim
    report = min_vectors(form, 1)
    positives = [v for v, val in zip(report.vectors, report.values)
                 if val == 1]
    if not integer_span_is_full(positives, n):
        raise ValueError("roots do not span the lattice")
    pos_set = set(positives)
    simple = []
    for alpha in positives:
        if not any(tuple(a - b for a, b in zip(alpha, beta)) in pos_set
                   for beta in pos_set):
            simple.append(alpha)
    assert len(simple) == n, "simple root extraction is inconsistent"
    adj: dict[int, list[int]] = {i: [] for i in range(n)}
    for i in range(n):
        for j in range(i + 1, n):
            pairing = 2 * form.bilinear(simple[i], simple[j])
            assert pairing in (0, -1), "diagram is not simply laced"
            if pairing == -1:
                adj[i].append(j)
                adj[j].append(i)
    seen: set[int] = set()
    summands = []
    for i in range(n):
        if i in seen:
            continue
        comp = [i]
        seen.add(i)
        stack = [i]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        summands.append(_classify_dynkin(comp, adj))
    expected = sum(_ROOT_COUNTS[letter](rank) for letter, rank in summands)
    assert expected == 2 * len(positives), \
        f"root count check failed: {expected} != {2 * len(positives)}"
    return RootDecomposition(summands=tuple(sorted(summands)),
                             simple_roots=tuple(simple),
                             root_count=2 * len(positives))


def _tu_by_minors(rows: tuple, limit_entries: int):
    """Check all square minors by Laplace expansion with a subset table.

    Returns (True, None) or (False, witness dict).  `limit_entries`
    guards the table size; exceeding it returns None (caller falls back).
    """
    nr, nc = len(rows), len(rows[0])
    kmax = min(nr, nc)
    total = 0
    from math import comb
    for k in range(1, kmax + 1):
        total += comb(nr, k) * comb(nc, k)
        if total > limit_entries:
            return None
    prev = {}
    for k in range(1, kmax + 1):
        cur = {}
        for rset in itertools.combinations(range(nr), k):
            r0 = rset[0]
            rest = rset[1:]
            for cset in itertools.combinations(range(nc), k):
                if k == 1:
                    det = rows[r0][cset[0]]
                else:
                    det = 0
                    sign = 1
                    for pos, c in enumerate(cset):
                        a = rows[r0][c]
                        if a:
                            sub = cset[:pos] + cset[pos + 1:]
                            det += sign * a * prev[(rest, sub)]
                        sign = -sign
                if det not in (-1, 0, 1):
                    return False, {"kind": "minor", "rows": list(rset),
                                   "cols": list(cset), "det": det}
                cur[(rset, cset)] = det
        prev = cur
    return True, None


def _tu_by_row_signings(rows: tuple):
    """Ghouila-Houri test: every row subset splits into two halves whose
    difference is a (0, +/-1)-vector.  Exponential in the subset size but
    applied on the short side of the matrix only."""
    nr, nc = len(rows), len(rows[0])

    def signable(subset) -> bool:
        def place(idx: int, total: list[int]) -> bool:
            if idx == len(subset):
                return all(-1 <= t <= 1 for t in total)
            row = rows[subset[idx]]
            rest = subset[idx + 1:]
            slack = [sum(abs(rows[r][j]) for r in rest) for j in range(nc)]
            for eps in (1, -1):
                new = [t + eps * x for t, x in zip(total, row)]
                if all(abs(t) <= 1 + s for t, s in zip(new, slack)):
                    if place(idx + 1, new):
                        return True
            return False

        return place(0, [0] * nc)

    for size in range(1, nr + 1):
        for subset in itertools.combinations(range(nr), size):
            if not signable(subset):
                return False, {"kind": "row_set", "rows": list(subset)}
    return True, None


def totally_unimodular(matrix) -> tuple[bool, dict | None]:
    """Is every square minor of the integer matrix in {-1, 0, 1}?

    Entries outside {-1, 0, 1} fail immediately (they are 1x1 minors).
    Small matrices are checked minor-by-minor; larger ones by row-subset
    signings on the shorter axis, which is equivalent.
    """
    rows = tuple(tuple(int(x) for x in row) for row in matrix)
    if not rows or not rows[0]:
        return True, None
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            if x not in (-1, 0, 1):
                return False, {"kind": "entry", "row": i, "col": j,
                               "value": x}
    res = _tu_by_minors(rows, limit_entries=300_000)
    if res is not None:
        return res
    if len(rows[0]) < len(rows):
        rows = tuple(zip(*rows))
    return _tu_by_row_signings(rows)
