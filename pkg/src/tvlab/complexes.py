"""Finite abstract simplicial complexes and elementary simplex algebra.

A simplex is a tuple of strictly increasing non-negative vertex ids.  A
complex stores the full face-closed set of its simplices; maximal-simplex
input is closed under faces on ingestion.  The increasing vertex order of a
simplex is its +1 orientation, which removes orientation ambiguity from all
downstream sign computations.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, NamedTuple

from .errors import InputError, InvalidSkeleton

Simplex = tuple  # tuple[int, ...], strictly increasing


def make_simplex(vertices: Iterable[int]) -> Simplex:
    s = tuple(vertices)
    if not s:
        raise InputError("simplex must be non-empty")
    if any(v < 0 for v in s):
        raise InputError("vertex ids must be non-negative")
    if any(a >= b for a, b in zip(s, s[1:])):
        raise InputError("vertices must be strictly increasing: %r" % (s,))
    return s


def simplex_dim(s: Simplex) -> int:
    return len(s) - 1


class OrientedSimplex(NamedTuple):
    simplex: Simplex
    sign: int  # +1 or -1, relative to increasing vertex order


@dataclass(frozen=True)
class Complex:
    """Face-closed finite simplicial complex on vertices 0..num_vertices-1."""

    num_vertices: int
    simplices: frozenset

    def __post_init__(self):
        for s in self.simplices:
            if s and s[-1] >= self.num_vertices:
                raise InputError("vertex id %d out of range" % s[-1])

    @classmethod
    def from_maximal(cls, num_vertices: int, maximal: Iterable[Iterable[int]]) -> "Complex":
        closed = set()
        for m in maximal:
            s = make_simplex(sorted(m))
            if s[-1] >= num_vertices:
                raise InputError("vertex id %d out of range" % s[-1])
            for k in range(1, len(s) + 1):
                closed.update(combinations(s, k))
        return cls(num_vertices, frozenset(closed))

    @property
    def dim(self) -> int:
        if not self.simplices:
            return -1
        return max(len(s) for s in self.simplices) - 1

    def simplices_of_dim(self, k: int) -> list:
        return sorted(s for s in self.simplices if len(s) == k + 1)

    def f_vector(self) -> list:
        counts = [0] * (self.dim + 1)
        for s in self.simplices:
            counts[len(s) - 1] += 1
        return counts

    def maximal_simplices(self) -> list:
        out = []
        for s in self.simplices:
            if not any(s != t and set(s) <= set(t) for t in self.simplices):
                out.append(s)
        return sorted(out)

    def has_simplex(self, s: Simplex) -> bool:
        return tuple(s) in self.simplices

    def is_face_closed(self) -> bool:
        for s in self.simplices:
            if len(s) > 1:
                for f in combinations(s, len(s) - 1):
                    if f not in self.simplices:
                        return False
        return True

    def to_json_dict(self) -> dict:
        return {
            "num_vertices": self.num_vertices,
            "maximal_simplices": [list(s) for s in self.maximal_simplices()],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "Complex":
        try:
            n = int(data["num_vertices"])
            maximal = data["maximal_simplices"]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError("bad complex JSON: %s" % exc) from exc
        return cls.from_maximal(n, maximal)

    @classmethod
    def from_json_file(cls, path: str) -> "Complex":
        try:
            with open(path) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError("cannot read complex %s: %s" % (path, exc)) from exc
        return cls.from_json_dict(data)


def full_simplex(N: int) -> Complex:
    """The N-dimensional simplex with all its faces."""
    return simplex_skeleton(N, N)


def simplex_skeleton(N: int, s: int) -> Complex:
    """All faces of the N-simplex of dimension at most s."""
    if s < 0 or s > N:
        raise InvalidSkeleton("need 0 <= s <= N, got s=%d N=%d" % (s, N))
    verts = range(N + 1)
    faces = set()
    for k in range(1, s + 2):
        faces.update(combinations(verts, k))
    return Complex(N + 1, frozenset(faces))


def join(K: Complex, L: Complex) -> Complex:
    """Simplicial join; vertex ids of L are shifted past those of K.

    Simplices are unions sigma ∪ (shifted tau) with sigma in K ∪ {∅} and
    tau in L ∪ {∅}, not both empty.
    """
    shift = K.num_vertices
    ls = [tuple(v + shift for v in t) for t in L.simplices]
    out = set(K.simplices)
    out.update(ls)
    for s in K.simplices:
        for t in ls:
            out.add(s + t)
    return Complex(K.num_vertices + L.num_vertices, frozenset(out))


def boundary_chain(s: OrientedSimplex) -> list:
    """Alternating-sign facets of an oriented simplex; empty for dim 0."""
    verts, sign = s.simplex, s.sign
    if len(verts) == 1:
        return []
    out = []
    for j in range(len(verts)):
        facet = verts[:j] + verts[j + 1:]
        out.append(OrientedSimplex(facet, sign * (-1) ** j))
    return out


def are_disjoint(a: Simplex, b: Simplex) -> bool:
    return not set(a) & set(b)
