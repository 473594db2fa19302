"""Exact rational linear algebra on tuples of Fractions.

Everything in the verdict path runs over Q; floats never appear.
Matrices are tuples of row tuples.
"""
from __future__ import annotations

from fractions import Fraction

Q = Fraction


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact number: {x!r}")


def mat(rows) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(frac(x) for x in row) for row in rows)


def mat_mul(a, b):
    bt = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt)
                 for row in a)


def mat_vec(a, v):
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def transpose(a):
    return tuple(zip(*a))


def identity(n):
    return tuple(tuple(Q(int(i == j)) for j in range(n)) for i in range(n))


def mat_add(a, b, ca=Q(1), cb=Q(1)):
    return tuple(tuple(ca * x + cb * y for x, y in zip(ra, rb))
                 for ra, rb in zip(a, b))


def solve(a, rhs_cols):
    """Solve a X = B for square nonsingular a; B given as a matrix."""
    n = len(a)
    aug = [list(row) + list(rrow) for row, rrow in zip(a, rhs_cols)]
    w = len(aug[0])
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = Q(1) / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def mat_inv(a):
    return solve(a, identity(len(a)))


def solve_general(a, b):
    """One solution of a x = b (free variables zero), or None if the
    system is inconsistent.  a need not be square or full rank."""
    nr = len(a)
    nc = len(a[0]) if nr else 0
    aug = [list(map(frac, row)) + [frac(rhs)] for row, rhs in zip(a, b)]
    pivots = []
    rk = 0
    for col in range(nc):
        piv = next((r for r in range(rk, nr) if aug[r][col] != 0), None)
        if piv is None:
            continue
        aug[rk], aug[piv] = aug[piv], aug[rk]
        inv = Q(1) / aug[rk][col]
        aug[rk] = [x * inv for x in aug[rk]]
        for r in range(nr):
            if r != rk and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[rk])]
        pivots.append(col)
        rk += 1
    for r in range(rk, nr):
        if aug[r][nc] != 0:
            return None
    x = [Q(0)] * nc
    for r, pc in enumerate(pivots):
        x[pc] = aug[r][nc]
    return tuple(x)


def rank(a) -> int:
    rows = [list(r) for r in a]
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    rk = 0
    for col in range(nc):
        piv = next((r for r in range(rk, nr) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        inv = Q(1) / rows[rk][col]
        rows[rk] = [x * inv for x in rows[rk]]
        for r in range(nr):
            if r != rk and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rk])]
        rk += 1
    return rk


def nullspace(a):
    """Basis of the right kernel, as primitive integer vectors when the
    input is integral (denominators cleared, content divided out)."""
    nr = len(a)
    nc = len(a[0]) if nr else 0
    rows = [list(map(frac, r)) for r in a]
    pivots = []
    rk = 0
    for col in range(nc):
        piv = next((r for r in range(rk, nr) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        inv = Q(1) / rows[rk][col]
        rows[rk] = [x * inv for x in rows[rk]]
        for r in range(nr):
            if r != rk and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rk])]
        pivots.append(col)
        rk += 1
    free = [c for c in range(nc) if c not in pivots]
    basis = []
    for fc in free:
        v = [Q(0)] * nc
        v[fc] = Q(1)
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][fc]
        basis.append(primitive(v))
    return tuple(basis)


def primitive(v):
    """Scale a rational vector to a primitive integer vector (gcd 1),
    keeping the sign of the first nonzero entry positive."""
    from math import gcd
    denom = 1
    for x in v:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    for x in ints:
        if x != 0:
            if x < 0:
                ints = [-y for y in ints]
            break
    return tuple(ints)


def integer_span_is_full(vectors, dim) -> bool:
    """Do the integer vectors span Z^dim over Z?  (All Smith divisors 1.)"""
    rows = [list(map(int, v)) for v in vectors]
    if not rows:
        return dim == 0
    cols = dim
    r = 0
    for c in range(cols):
        if all(rows[i][c] == 0 for i in range(r, len(rows))):
            return False
        # euclidean reduction in this column until a single nonzero remains
        while True:
            piv = None
            for i in range(r, len(rows)):
                if rows[i][c] != 0 and (piv is None or
                                        abs(rows[i][c]) < abs(rows[piv][c])):
                    piv = i
            done = True
            for i in range(r, len(rows)):
                if i != piv and rows[i][c] != 0:
                    qq = rows[i][c] // rows[piv][c]
                    rows[i] = [x - qq * y for x, y in zip(rows[i], rows[piv])]
                    done = False
            if done:
                break
        rows[r], rows[piv] = rows[piv], rows[r]
        if abs(rows[r][c]) != 1:
            return False
        r += 1
    return True


def fraction_to_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def str_to_fraction(s: str) -> Fraction:
    return Fraction(s)
