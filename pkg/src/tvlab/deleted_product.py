"""Simplicial r-fold deleted products with boundary maps and symmetric action.

A cell is an ordered r-tuple of pairwise vertex-disjoint non-empty simplices
of the base complex; its dimension is the sum of the factor dimensions.  The
boundary operator carries the Koszul sign (-1)^{d_1+...+d_{i-1}} on the i-th
factor, and the symmetric group permutes factors with the Koszul sign of
permuting graded slots.
"""

from __future__ import annotations

import os
from collections import deque
from math import comb

from .complexes import Complex, OrientedSimplex, boundary_chain
from .errors import CapExceeded, InvalidMultiplicity, UnknownCell

DEFAULT_CELL_CAP = 5 * 10**6

ProductCell = tuple  # tuple of Simplex, pairwise disjoint


def cell_dim(cell: ProductCell) -> int:
    return sum(len(s) - 1 for s in cell)


def configured_cell_cap() -> int:
    raw = os.environ.get("TVLAB_CELL_CAP")
    return int(raw) if raw else DEFAULT_CELL_CAP


def full_simplex_cell_count(N: int, r: int) -> int:
    """Total cells of the r-fold deleted product of the N-simplex.

    Ordered r-tuples of disjoint non-empty vertex subsets of an (N+1)-set:
    sum over compositions via the closed sum of multinomials, computed as
    r! * S(N+1 chosen into r labelled non-empty blocks plus leftovers) --
    here just counted directly as sum over sizes.
    """
    total = 0

    def rec(remaining_vertices, factors_left, acc):
        nonlocal total
        if factors_left == 0:
            total += acc
            return
        # each remaining factor needs at least 1 vertex
        for size in range(1, remaining_vertices - (factors_left - 1) + 1):
            rec(remaining_vertices - size, factors_left - 1,
                acc * comb(remaining_vertices, size))

    rec(N + 1, r, 1)
    return total


class DeletedProductComplex:
    """Immutable deleted product with dimension-major cell storage."""

    def __init__(self, base: Complex, r: int, cells_by_dim: dict):
        self.base = base
        self.r = r
        self.cells_by_dim = {d: sorted(cs) for d, cs in cells_by_dim.items() if cs}
        self.index_by_dim = {
            d: {c: i for i, c in enumerate(cs)} for d, cs in self.cells_by_dim.items()
        }
        self._boundaries = {}

    @property
    def dim(self) -> int:
        return max(self.cells_by_dim, default=-1)

    @property
    def is_empty(self) -> bool:
        return not self.cells_by_dim

    def f_vector(self) -> list:
        return [len(self.cells_by_dim.get(d, ())) for d in range(self.dim + 1)]

    def total_cells(self) -> int:
        return sum(len(cs) for cs in self.cells_by_dim.values())

    def has_cell(self, cell: ProductCell) -> bool:
        d = cell_dim(cell)
        return cell in self.index_by_dim.get(d, {})

    def cell_boundary(self, cell: ProductCell) -> list:
        """Signed facets [(facet_cell, sign)] with the Koszul convention."""
        out = []
        shift = 0
        for i, s in enumerate(cell):
            d_i = len(s) - 1
            koszul = (-1) ** shift
            for facet in boundary_chain(OrientedSimplex(s, +1)):
                new = cell[:i] + (facet.simplex,) + cell[i + 1:]
                out.append((new, koszul * facet.sign))
            shift += d_i
        return out

    def boundary_matrix(self, d: int) -> dict:
        """Sparse boundary from dimension d to d-1: {(row, col): sign}.

        Rows index (d-1)-cells, columns index d-cells, in sorted cell order.
        Cached after first construction.
        """
        if d in self._boundaries:
            return self._boundaries[d]
        mat = {}
        rows = self.index_by_dim.get(d - 1, {})
        for j, cell in enumerate(self.cells_by_dim.get(d, ())):
            for facet, sign in self.cell_boundary(cell):
                i = rows[facet]
                mat[(i, j)] = mat.get((i, j), 0) + sign
        mat = {k: v for k, v in mat.items() if v}
        self._boundaries[d] = mat
        return mat


def deleted_product(K: Complex, r: int, cap: int = None) -> DeletedProductComplex:
    """Build the r-fold simplicial deleted product of K.

    Refuses construction when the total cell count would exceed the cap
    (default 5e6, overridable by argument or the TVLAB_CELL_CAP variable).
    """
    if r < 2:
        raise InvalidMultiplicity("deleted product needs r >= 2, got %d" % r)
    if cap is None:
        cap = configured_cell_cap()

    simplices = sorted(K.simplices, key=lambda s: (len(s), s))
    masks = []
    for s in simplices:
        m = 0
        for v in s:
            m |= 1 << v
        masks.append((m, s))

    # preflight for the full simplex case where a closed count is available
    if len(K.simplices) == 2 ** K.num_vertices - 1:
        n = full_simplex_cell_count(K.num_vertices - 1, r)
        if n > cap:
            raise CapExceeded("deleted product would have %d cells (cap %d)" % (n, cap))

    cells_by_dim = {}
    count = 0
    cells = [None] * r

    def rec(i, used, dim):
        nonlocal count
        if i == r:
            count += 1
            if count > cap:
                raise CapExceeded("deleted product exceeds cell cap %d" % cap)
            cells_by_dim.setdefault(dim, []).append(tuple(cells))
            return
        for m, s in masks:
            if m & used:
                continue
            cells[i] = s
            rec(i + 1, used | m, dim + len(s) - 1)

    rec(0, 0, 0)
    return DeletedProductComplex(K, r, cells_by_dim)


def koszul_action_sign(omega: tuple, dims: tuple) -> int:
    """Sign of permuting graded factors: product of (-1)^{d_i d_j} over
    inversions of omega (0-based: slot i receives factor omega_inv[i])."""
    r = len(omega)
    sign = 1
    for a in range(r):
        for b in range(a + 1, r):
            if omega[a] > omega[b] and dims[a] % 2 and dims[b] % 2:
                sign = -sign
    return sign


def act_on_cell(omega: tuple, cell: ProductCell):
    """Apply a 0-based permutation to a cell; returns (new_cell, sign).

    Slot i of the image holds factor omega^{-1}(i), so omega moves the
    factor in slot j to slot omega(j).
    """
    r = len(omega)
    new = [None] * r
    for j in range(r):
        new[omega[j]] = cell[j]
    dims = tuple(len(s) - 1 for s in cell)
    return tuple(new), koszul_action_sign(omega, dims)


class CellAction:
    """Signed cell permutation induced by one element of the symmetric group."""

    def __init__(self, dp: DeletedProductComplex, omega: tuple):
        if sorted(omega) != list(range(dp.r)):
            raise InvalidMultiplicity("permutation must be on 0..r-1")
        self.dp = dp
        self.omega = omega

    def apply(self, cell: ProductCell):
        return act_on_cell(self.omega, cell)

    def matrix(self, d: int) -> dict:
        """Signed permutation matrix on d-cells: {(row, col): sign}."""
        idx = self.dp.index_by_dim.get(d, {})
        out = {}
        for j, cell in enumerate(self.dp.cells_by_dim.get(d, ())):
            new, sign = self.apply(cell)
            out[(idx[new], j)] = sign
        return out

    def is_free(self) -> bool:
        if self.omega == tuple(range(self.dp.r)):
            return False
        for cs in self.dp.cells_by_dim.values():
            for cell in cs:
                if self.apply(cell)[0] == cell:
                    return False
        return True


def group_action(dp: DeletedProductComplex, omega) -> CellAction:
    return CellAction(dp, tuple(omega))


def puzzle_reachable(dp: DeletedProductComplex, start: ProductCell, goal: ProductCell):
    """Walk between 0-cells along edges of the deleted product.

    Returns (reachable, path) where path alternates 0-cells and 1-cells;
    path is [] when start == goal.
    """
    for c in (start, goal):
        if cell_dim(c) != 0 or not dp.has_cell(c):
            raise UnknownCell("not a 0-cell of this deleted product: %r" % (c,))
    if start == goal:
        return True, []

    adjacency = {}
    for edge in dp.cells_by_dim.get(1, ()):
        ends = [facet for facet, _ in dp.cell_boundary(edge)]
        for v in ends:
            adjacency.setdefault(v, []).append((edge, ends))

    prev = {start: None}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        if v == goal:
            break
        for edge, ends in adjacency.get(v, ()):
            for w in ends:
                if w not in prev:
                    prev[w] = (v, edge)
                    queue.append(w)
    if goal not in prev:
        return False, []
    path = [goal]
    node = goal
    while prev[node] is not None:
        v, edge = prev[node]
        path.append(edge)
        path.append(v)
        node = v
    path.reverse()
    return True, path
