"""Exact-rational convex geometry: Radon and Tverberg partitions.

Everything runs over fractions.Fraction.  Feasibility of common points of
convex hulls is decided by a phase-one simplex with Bland's rule, so every
positive answer comes with exact barycentric certificates and every answer
is deterministic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import SearchInvariantViolated, WrongCardinality


def lp_feasible(A, b):
    """Find x >= 0 with A x = b (all Fractions), or None.

    Phase-one simplex with Bland's anticycling rule on an explicit tableau.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    # rows with negative right-hand side are negated so artificials start feasible
    T = []
    rhs = []
    for row, bi in zip(A, b):
        bi = Fraction(bi)
        if bi < 0:
            T.append([-Fraction(x) for x in row])
            rhs.append(-bi)
        else:
            T.append([Fraction(x) for x in row])
            rhs.append(bi)
    # columns n..n+m-1 are artificial variables
    for i in range(m):
        T[i] += [Fraction(int(i == j)) for j in range(m)]
    basis = list(range(n, n + m))
    # phase-one objective: minimize the sum of artificials
    cost = [Fraction(0)] * (n + m)
    for j in range(n, n + m):
        cost[j] = Fraction(1)
    # reduced costs z_j - c_j relative to the artificial basis
    red = [sum(T[i][j] for i in range(m)) - cost[j] for j in range(n + m)]
    obj = sum(rhs)

    while True:
        enter = next((j for j in range(n + m) if red[j] > 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            if T[i][enter] > 0:
                ratio = rhs[i] / T[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            break  # unbounded phase-one objective cannot happen; defensive
        piv = T[leave][enter]
        T[leave] = [x / piv for x in T[leave]]
        rhs[leave] /= piv
        for i in range(m):
            if i != leave and T[i][enter] != 0:
                f = T[i][enter]
                T[i] = [x - f * y for x, y in zip(T[i], T[leave])]
                rhs[i] -= f * rhs[leave]
        f = red[enter]
        red = [x - f * y for x, y in zip(red, T[leave])]
        obj -= f * rhs[leave]
        basis[leave] = enter

    if obj != 0:
        return None
    x = [Fraction(0)] * n
    for i, bvar in enumerate(basis):
        if bvar < n:
            x[bvar] = rhs[i]
        elif rhs[i] != 0:  # artificial stuck in basis at nonzero level
            return None
    return x


@dataclass
class TverbergPartition:
    """A certified partition into parts with intersecting convex hulls."""

    parts: list          # list of sorted index tuples, partitioning 0..n-1
    witness: tuple       # common point, Fractions
    certificates: list   # per part: convex coefficients over the part's points

    def verify(self, points) -> bool:
        n = len(points)
        seen = sorted(i for part in self.parts for i in part)
        if seen != list(range(n)):
            return False
        d = len(self.witness)
        for part, cert in zip(self.parts, self.certificates):
            if len(cert) != len(part):
                return False
            if any(c < 0 for c in cert) or sum(cert) != 1:
                return False
            for a in range(d):
                if sum(c * points[i][a] for c, i in zip(cert, part)) != self.witness[a]:
                    return False
        return True


def as_points(points):
    return [tuple(Fraction(x) for x in p) for p in points]


def hulls_intersect(groups):
    """Common point of the convex hulls of the groups, or None.

    groups is a list of non-empty lists of rational points of equal
    dimension.  Returns (witness, coefficient lists) or None.
    """
    groups = [as_points(g) for g in groups]
    d = len(groups[0][0])
    sizes = [len(g) for g in groups]
    offsets = [sum(sizes[:i]) for i in range(len(groups))]
    nvars = sum(sizes)
    A = []
    b = []
    # image of group g equals image of group 0, coordinate by coordinate
    for g in range(1, len(groups)):
        for a in range(d):
            row = [Fraction(0)] * nvars
            for i, p in enumerate(groups[0]):
                row[offsets[0] + i] = -p[a]
            for i, p in enumerate(groups[g]):
                row[offsets[g] + i] = p[a]
            A.append(row)
            b.append(Fraction(0))
    for g in range(len(groups)):
        row = [Fraction(0)] * nvars
        for i in range(sizes[g]):
            row[offsets[g] + i] = Fraction(1)
        A.append(row)
        b.append(Fraction(1))
    x = lp_feasible(A, b)
    if x is None:
        return None
    certs = [x[offsets[g]: offsets[g] + sizes[g]] for g in range(len(groups))]
    witness = tuple(
        sum(c * p[a] for c, p in zip(certs[0], groups[0])) for a in range(d)
    )
    return witness, certs


def radon_partition(points) -> TverbergPartition:
    """Split d+2 points in R^d into two groups with intersecting hulls."""
    pts = as_points(points)
    d = len(pts[0])
    if len(pts) != d + 2:
        raise WrongCardinality("need d+2 = %d points, got %d" % (d + 2, len(pts)))
    # affine dependence: sum c_i x_i = 0 and sum c_i = 0, c nonzero
    rows = [[pts[i][a] for i in range(d + 2)] for a in range(d)]
    rows.append([Fraction(1)] * (d + 2))
    c = linalg.nullspace(rows)[0]
    pos = tuple(sorted(i for i in range(d + 2) if c[i] > 0))
    rest = tuple(sorted(i for i in range(d + 2) if i not in pos))
    s = sum(c[i] for i in pos)
    witness = tuple(sum(c[i] * pts[i][a] for i in pos) / s for a in range(d))
    cert_pos = [c[i] / s for i in pos]
    cert_rest = [(-c[i] / s if c[i] < 0 else Fraction(0)) for i in rest]
    part = TverbergPartition([pos, rest], witness, [cert_pos, cert_rest])
    if not part.verify(pts):
        raise SearchInvariantViolated("radon certificate failed self-check")
    return part


def _set_partitions(n, r):
    """All partitions of 0..n-1 into exactly r non-empty unlabelled parts."""
    codes = [0] * n

    def rec(i, used):
        if i == n:
            if used == r:
                parts = [[] for _ in range(r)]
                for j, cj in enumerate(codes):
                    parts[cj].append(j)
                yield tuple(tuple(p) for p in parts)
            return
        if used + (n - i) < r:
            return
        for c in range(min(used + 1, r)):
            codes[i] = c
            used2 = used + (1 if c == used else 0)
            yield from rec(i + 1, used2)

    yield from rec(0, 0)


def partition_sort_key(parts):
    """Deterministic search order: part-size signature first, then the
    partition itself, with parts listed largest-first."""
    ordered = tuple(sorted(parts, key=lambda p: (-len(p), p)))
    sizes = tuple(len(p) for p in ordered)
    return (sizes, ordered)


def tverberg_search(points, r) -> TverbergPartition:
    """First certified r-part partition in the canonical enumeration order.

    Requires exactly (d+1)(r-1)+1 points; by Tverberg's theorem a valid
    partition always exists, so search exhaustion signals a bug.
    """
    pts = as_points(points)
    d = len(pts[0])
    want = (d + 1) * (r - 1) + 1
    if len(pts) != want:
        raise WrongCardinality("need (d+1)(r-1)+1 = %d points, got %d" % (want, len(pts)))
    candidates = sorted(
        {tuple(sorted(parts, key=lambda p: (-len(p), p))) for parts in _set_partitions(len(pts), r)},
        key=partition_sort_key,
    )
    for parts in candidates:
        res = hulls_intersect([[pts[i] for i in part] for part in parts])
        if res is not None:
            witness, certs = res
            out = TverbergPartition(list(parts), witness, certs)
            if not out.verify(pts):
                raise SearchInvariantViolated("tverberg certificate failed self-check")
            return out
    raise SearchInvariantViolated("no Tverberg partition found; implementation bug")


def general_position_check(points, d) -> bool:
    """True iff every subset of at most d+1 points is affinely independent."""
    from itertools import combinations

    pts = as_points(points)
    k = min(len(pts), d + 1)
    for sub in combinations(range(len(pts)), k):
        base = pts[sub[0]]
        rows = [[pts[i][a] - base[a] for a in range(d)] for i in sub[1:]]
        if rows and linalg.rank(rows) < len(rows):
            return False
    return True


def random_rational_points(n, d, seed):
    """Deterministic pseudo-random rational points with denominator 1024."""
    rng = random.Random(seed)
    return [
        tuple(Fraction(rng.randint(-2**20, 2**20), 1024) for _ in range(d))
        for _ in range(n)
    ]
