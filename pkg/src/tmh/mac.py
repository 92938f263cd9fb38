"""Moment-angle-complex data: the m-coordinate embedding functions, the
kernel lattice of the characteristic map, and the freeness check for the
kernel torus action.

The embedding realizes the body inside R^(n+s) first: each hole gets an
auxiliary coordinate that is 1 on the hole boundary and falls off to 0
affinely across a collar around the hole, then one nonnegative coordinate
per facet measures a weighted distance to that facet.  Collar widths are
certified by exact feasibility checks so that distinct facets never share
a zero locus.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .charpair import CharacteristicPair
from .errors import DomainError, NotValidatedError
from .exactlin import IntMatrix, RatVector, det_exact, kernel_lattice_basis, rat_vector
from .polytope import PolytopeWithHoles, fm_feasible


def _l1(normal) -> int:
    return sum(abs(c) for c in normal)


def _violation(hole, point) -> Fraction:
    """Weighted depth of the point outside the hole; 0 exactly on the hole."""
    return max((h.offset - sum(n * x for n, x in zip(h.normal, point))) / _l1(h.normal)
               for h in hole.halfspaces)


def _expanded_hole_system(hole, width):
    """Half-space rows of the outer parallel body {violation <= width}."""
    return [(h.normal, h.offset - width * _l1(h.normal)) for h in hole.halfspaces]


def _certified_collar_widths(body: PolytopeWithHoles) -> tuple[Fraction, ...]:
    """A positive collar width per hole, halved until the expanded hole
    provably misses the outer boundary and every other hole."""
    outer = body.outer
    widths = []
    for k, hole in enumerate(body.holes):
        guess = min(h.value(v.point) / _l1(h.normal)
                    for h in outer.halfspaces for v in hole.vertices) / 2
        width = guess
        for _ in range(64):
            ok = True
            expanded = _expanded_hole_system(hole, width)
            for i, h in enumerate(outer.halfspaces):
                boundary = [(hh.normal, hh.offset) for hh in outer.halfspaces]
                boundary.append((tuple(-c for c in h.normal), -h.offset))
                if fm_feasible(expanded + boundary):
                    ok = False
                    break
            if ok:
                for j, other in enumerate(body.holes):
                    if j == k:
                        continue
                    other_rows = [(h.normal, h.offset) for h in other.halfspaces]
                    if fm_feasible(expanded + other_rows):
                        ok = False
                        break
            if ok:
                break
            width /= 2
        else:
            raise AssertionError("collar width certification did not converge")
        widths.append(width)
    return tuple(widths)


@dataclass(frozen=True)
class EmbeddingChart:
    """Evaluator for the facet coordinate functions d_1 ... d_m."""

    body: PolytopeWithHoles
    collar_widths: tuple[Fraction, ...]
    hole_constants: dict[int, Fraction]  # global hole-facet id -> padding constant

    @classmethod
    def for_body(cls, body: PolytopeWithHoles) -> "EmbeddingChart":
        widths = _certified_collar_widths(body)
        constants = {}
        outer_vertices = [v.point for v in body.outer.vertices]
        for k, hole in enumerate(body.holes, start=1):
            for local, h in enumerate(hole.halfspaces):
                gid = body.facet_gid(k, local)
                # large enough to keep the padded functional positive away
                # from the hole boundary
                deficit = max(h.offset - sum(n * x for n, x in zip(h.normal, p))
                              for p in outer_vertices)
                constants[gid] = widths[k - 1] * _l1(h.normal) + max(Fraction(0), deficit) + 1
        return cls(body, widths, constants)

    @property
    def ambient_intermediate(self) -> int:
        return self.body.dim + self.body.hole_count

    @property
    def ambient_final(self) -> int:
        return self.body.facet_count

    def hole_coordinates(self, point) -> tuple[Fraction, ...]:
        """The auxiliary coordinates p_{n+1} ... p_{n+s} of the lift."""
        point = rat_vector(point)
        out = []
        for k, hole in enumerate(self.body.holes):
            v = _violation(hole, point)
            w = self.collar_widths[k]
            out.append(max(Fraction(0), 1 - v / w))
        return tuple(out)

    def lift(self, point) -> RatVector:
        """Embed the point into the intermediate chart R^(n+s)."""
        return rat_vector(point) + self.hole_coordinates(point)

    def evaluate(self, point) -> RatVector:
        """The facet coordinates (d_1(x), ..., d_m(x))."""
        point = rat_vector(point)
        if not self.body.contains(point):
            raise DomainError(f"point {tuple(map(str, point))} is not in the body")
        p_hole = self.hole_coordinates(point)
        total_hole = sum(p_hole)
        out = []
        for h in self.body.outer.halfspaces:
            out.append(h.value(point) + total_hole)
        for k, hole in enumerate(self.body.holes, start=1):
            a_k = 1 - p_hole[k - 1]
            others = total_hole - p_hole[k - 1]
            for local, h in enumerate(hole.halfspaces):
                gid = self.body.facet_gid(k, local)
                padded = h.value(point) + self.hole_constants[gid] * a_k
                out.append(padded + a_k + others)
        return tuple(out)


def embedding_chart(pair: CharacteristicPair) -> EmbeddingChart:
    return EmbeddingChart.for_body(pair.body)


def embedding_coordinates(pair: CharacteristicPair, point) -> RatVector:
    """Convenience wrapper building a chart for a single evaluation."""
    return embedding_chart(pair).evaluate(point)


# ---------------------------------------------------------------------------
# kernel lattice of the characteristic map


@dataclass(frozen=True)
class KernelData:
    lambda_matrix: IntMatrix      # n x m
    kernel_basis: IntMatrix       # m x (m - n)
    torus_rank: int


def kernel_data(pair: CharacteristicPair) -> KernelData:
    if not pair.validated:
        raise NotValidatedError("kernel data needs a validated pair")
    lam = pair.lambda_matrix()
    basis = kernel_lattice_basis(lam)
    return KernelData(lam, basis, basis.cols)


def freeness_check(pair: CharacteristicPair) -> bool:
    """Whether the kernel torus acts freely on the moment angle complex.

    At each vertex the kernel lattice must complement the coordinate
    sublattice of the facets through the vertex, i.e. the m x m matrix
    [kernel basis | coordinate columns of the vertex facets] must be
    unimodular.  No validation is assumed; this is the independent route
    that agrees with validate() whenever the vectors span Z^n (if all of
    them land in a proper sublattice the action is still free but the pair
    is not characteristic).
    """
    lam = pair.lambda_matrix()
    basis = kernel_lattice_basis(lam)
    m = pair.body.facet_count
    if basis.cols + pair.body.dim != m:
        return False  # rank-deficient characteristic map
    for gv in pair.body.global_vertices():
        coord_cols = [tuple(1 if i == f else 0 for i in range(m))
                      for f in sorted(gv.facets)]
        stacked = basis.hstack(IntMatrix.from_columns(coord_cols, rows=m))
        if det_exact(stacked) not in (1, -1):
            return False
    return True
