"""Equivariant cochains on deleted products and the null-cohomology decision.

A cochain of degree q stores one integer per group orbit of q-cells of the
deleted product and extends to all cells by the twisted equivariance rule

    c(omega . e) = sgn(omega)^twist * kappa(omega, e) * c(e),

where kappa is the Koszul sign of permuting the graded factors and twist is
the parity of the ambient dimension of the underlying intersection problem
(twist = k*r when the domain dimension is k(r-1)).  For top-dimensional
cells this composite sign reduces to sgn(omega)^k.

The obstruction decision solves delta c = v over the integers on the top
two degrees, returning either an explicitly re-verified certificate cochain
or a Smith-normal-form infeasibility witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial, gcd

from .deleted_product import DeletedProductComplex, act_on_cell
from .errors import DegreeError, NotEquivariant
from .homology import IntMatrix, solve_integer_system
from .symgroup import (PermGroup, compose, inverse, invariant_block_split,
                       invariant_matrix_point, is_prime, is_transitive,
                       p_order_in_factorial, sign, sylow_tree_subgroup,
                       symmetric_group)


def chi(omega, cell, twist) -> int:
    """Twisted action sign: sgn(omega)^twist times the Koszul cell sign."""
    _, kappa = act_on_cell(omega, cell)
    s = sign(omega) if twist % 2 else 1
    return s * kappa


def orbit_reps(dp: DeletedProductComplex, group: PermGroup, degree: int) -> list:
    """Lexicographically minimal representative per group orbit of cells."""
    elements = group.elements()
    seen = set()
    reps = []
    for cell in dp.cells_by_dim.get(degree, ()):
        if cell in seen:
            continue
        reps.append(cell)
        for omega in elements:
            seen.add(act_on_cell(omega, cell)[0])
    return reps


@dataclass
class EquivariantCochain:
    """Integer cochain determined by its values on orbit representatives."""

    dp: DeletedProductComplex
    group: PermGroup
    degree: int
    twist: int
    values: dict  # orbit representative cell -> integer

    def locate(self, cell):
        """(representative, omega) with omega . representative = cell.

        The action is free, so omega is unique.
        """
        best = None
        for omega in self.group.elements():
            img, _ = act_on_cell(omega, cell)
            if best is None or img < best[0]:
                best = (img, omega)
        rep, omega_to_rep = best
        return rep, inverse(omega_to_rep)

    def value(self, cell) -> int:
        rep, omega = self.locate(cell)
        return chi(omega, rep, self.twist) * self.values.get(rep, 0)

    def is_zero(self) -> bool:
        return not any(self.values.values())


def cocycle_from_table(dp: DeletedProductComplex, table: dict, twist=None) -> EquivariantCochain:
    """Top-degree equivariant cochain from an intersection table.

    Table keys are tuples of pairwise disjoint top simplices; the canonical
    (sorted) key is the orbit representative.  Keys that repeat an orbit
    must agree with the twisted-equivariance extension.
    """
    r = dp.r
    if twist is None:
        m = dp.base.dim
        twist = m * r // (r - 1)
    group = symmetric_group(r)
    top = dp.dim
    reps = orbit_reps(dp, group, top)
    out = EquivariantCochain(dp, group, top, twist, {})
    assigned = {}
    for key, val in table.items():
        cell = tuple(key)
        rep, omega = out.locate(cell)
        # val = chi(omega, rep) * c(rep), and chi is its own inverse
        rep_val = chi(omega, rep, twist) * val
        if rep in assigned and assigned[rep] != rep_val:
            raise NotEquivariant("table conflicts with the twisted action")
        assigned[rep] = rep_val
    out.values = {rep: assigned.get(rep, 0) for rep in reps}
    return out


def coboundary_matrix(dp: DeletedProductComplex, twist=None):
    """Matrix of delta from degree top-1 orbit cochains to top orbit cochains.

    Returns (IntMatrix, top_reps, facet_reps); entry (i, j) is the signed
    multiplicity of facet orbit j in the boundary of top representative i,
    with all twisted-equivariance signs folded in.
    """
    r = dp.r
    if twist is None:
        m = dp.base.dim
        twist = m * r // (r - 1)
    group = symmetric_group(r)
    top = dp.dim
    top_reps = orbit_reps(dp, group, top)
    facet_reps = orbit_reps(dp, group, top - 1) if top >= 1 else []
    helper = EquivariantCochain(dp, group, top - 1, twist, {})
    col = {rep: j for j, rep in enumerate(facet_reps)}
    entries = [[0] * len(facet_reps) for _ in top_reps]
    for i, cell in enumerate(top_reps):
        for facet, eps in dp.cell_boundary(cell):
            rep, omega = helper.locate(facet)
            entries[i][col[rep]] += eps * chi(omega, rep, twist)
    return IntMatrix.from_rows(entries) if top_reps else IntMatrix.zeros(0, 0), top_reps, facet_reps


@dataclass
class NullCohomologyResult:
    """Outcome of the delta c = v decision with a checkable certificate."""

    trivial: bool
    certificate: EquivariantCochain  # when trivial: c with delta c = v
    infeasibility: dict              # when nontrivial: SNF witness


def is_null_cohomologous(v: EquivariantCochain, dp: DeletedProductComplex) -> NullCohomologyResult:
    """Decide integer solvability of delta c = v on the top two degrees."""
    if v.degree != dp.dim:
        raise DegreeError("cochain degree %d is not the top dimension %d"
                          % (v.degree, dp.dim))
    A, top_reps, facet_reps = coboundary_matrix(dp, v.twist)
    b = [v.values.get(rep, 0) for rep in top_reps]
    x, witness = solve_integer_system(A, b)
    if x is None:
        return NullCohomologyResult(False, None, witness)
    cert = EquivariantCochain(dp, v.group, v.degree - 1, v.twist,
                              {rep: xi for rep, xi in zip(facet_reps, x)})
    # re-verify the certificate against the coboundary matrix
    check = A.mat_vec([cert.values.get(rep, 0) for rep in facet_reps])
    if check != b:
        raise NotEquivariant("certificate failed re-verification")
    return NullCohomologyResult(True, cert, None)


def restrict_to_subgroup(c: EquivariantCochain, G: PermGroup) -> EquivariantCochain:
    """Same cochain, re-indexed over the finer orbits of a subgroup."""
    reps = orbit_reps(c.dp, G, c.degree)
    values = {rep: c.value(rep) for rep in reps}
    return EquivariantCochain(c.dp, G, c.degree, c.twist, values)


def coset_representatives(G: PermGroup, r: int) -> list:
    """Lexicographically minimal representative of each left coset gG."""
    members = G.elements()
    seen = set()
    reps = []
    for g in sorted(symmetric_group(r).elements()):
        if g in seen:
            continue
        reps.append(g)
        for h in members:
            seen.add(compose(g, h))
    return reps


def transfer(x: EquivariantCochain, r: int) -> EquivariantCochain:
    """Sum of x over coset translates, landing in a fully equivariant cochain.

    For left coset representatives f_1..f_s of x's group,
    t(x)(e) = sum_i chi(f_i, f_i^{-1} e) * x(f_i^{-1} e); composing with
    restriction multiplies by the index s.
    """
    reps = coset_representatives(x.group, r)
    full = symmetric_group(r)
    out_reps = orbit_reps(x.dp, full, x.degree)
    values = {}
    for cell in out_reps:
        total = 0
        for f in reps:
            pre, _ = act_on_cell(inverse(f), cell)
            total += chi(f, pre, x.twist) * x.value(pre)
        values[cell] = total
    return EquivariantCochain(x.dp, full, x.degree, x.twist, values)


@dataclass
class OzaydinReport:
    """Per-prime Sylow analysis and the no-common-multiple arithmetic."""

    r: int
    rows: list          # per prime: dict with p, alpha, order, transitive, split, invariant_point
    relation_gcd: int   # gcd of r!/p^alpha_p over non-transitive primes (0 if none)
    is_prime_power: bool
    argument_applies: bool


def _is_prime_power(r) -> bool:
    for p in range(2, r + 1):
        if is_prime(p):
            q = p
            while q < r:
                q *= p
            if q == r:
                return True
    return False


def ozaydin_report(r: int) -> OzaydinReport:
    """Sylow-subgroup table and the gcd test behind the r-fold vanishing
    argument: the argument applies exactly when the indices r!/p^{alpha_p}
    over non-transitive primes have gcd 1, i.e. when r is not a prime power."""
    rows = []
    indices = []
    for p in range(2, r + 1):
        if not is_prime(p):
            continue
        alpha = p_order_in_factorial(r, p)
        G = sylow_tree_subgroup(r, p)
        transitive = is_transitive(G)
        if transitive:
            split = None
            inv_point = None
        else:
            split = invariant_block_split(G)
            inv_point = invariant_matrix_point(split[0], r, 1)
            indices.append(factorial(r) // p**alpha)
        rows.append({
            "p": p,
            "alpha": alpha,
            "sylow_order": p**alpha,
            "transitive": transitive,
            "split": split,
            "invariant_point_exists": inv_point is not None,
        })
    relation_gcd = 0
    for idx in indices:
        relation_gcd = gcd(relation_gcd, idx)
    pp = _is_prime_power(r)
    return OzaydinReport(r, rows, relation_gcd, pp, relation_gcd == 1)
