"""Characteristic functions on polytopes with holes.

A characteristic pair couples the body with one primitive integer vector
per facet subject to the direct-summand condition: the vectors of any k
facets meeting in a face must span a rank-k direct summand of Z^n.  For a
simple polytope every face arises as a subset of some vertex's facet set,
so validation enumerates exactly those subsets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import NotValidatedError
from .exactlin import (
    IntMatrix,
    RatVector,
    det_exact,
    det_sign_columns,
    is_primitive,
    smith_normal_form,
)
from .polytope import PolytopeWithHoles, edge_directions_at_vertex


@dataclass
class CharacteristicPair:
    body: PolytopeWithHoles
    lam: dict[int, tuple[int, ...]]  # global facet id -> integer vector
    validated: bool = field(default=False, compare=False)

    def __post_init__(self):
        n = self.body.dim
        if set(self.lam) != set(range(self.body.facet_count)):
            raise KeyError("characteristic map must cover every facet exactly once")
        self.lam = {fid: tuple(int(c) for c in vec) for fid, vec in self.lam.items()}
        for fid, vec in self.lam.items():
            if len(vec) != n:
                raise KeyError(f"facet {fid}: vector length {len(vec)} != {n}")

    def vector(self, fid: int) -> tuple[int, ...]:
        return self.lam[fid]

    def lambda_matrix(self) -> IntMatrix:
        """Columns lambda_1 ... lambda_m in global facet order (n x m)."""
        return IntMatrix.from_columns(
            [self.lam[f] for f in range(self.body.facet_count)], rows=self.body.dim)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    kind: str | None = None          # "primitivity" | "summand"
    facets: tuple[int, ...] = ()
    message: str = "valid"


@dataclass(frozen=True)
class VertexFrame:
    vertex: int
    facet_order: tuple[int, ...]     # global facet ids i_1 ... i_n
    directions: tuple[RatVector, ...]
    lambda_v: IntMatrix              # columns lambda_{i_1} ... lambda_{i_n}
    sign: int


def validate(pair: CharacteristicPair) -> ValidationReport:
    """Check primitivity and the direct-summand condition on every face.

    On success the pair is flagged as validated; otherwise the report names
    the first offending facet or face in a deterministic order.
    """
    n = pair.body.dim
    for fid in range(pair.body.facet_count):
        vec = pair.lam[fid]
        if not is_primitive(vec):
            return ValidationReport(
                False, "primitivity", (fid,),
                f"facet {fid}: vector {vec} is not primitive")
    seen: set[frozenset[int]] = set()
    for gv in pair.body.global_vertices():
        facets = sorted(gv.facets)
        for k in range(1, n + 1):
            for subset in itertools.combinations(facets, k):
                key = frozenset(subset)
                if key in seen:
                    continue
                seen.add(key)
                m = IntMatrix.from_columns([pair.lam[f] for f in subset], rows=n)
                divisors, rank = smith_normal_form(m)
                if rank != k or any(d != 1 for d in divisors):
                    return ValidationReport(
                        False, "summand", subset,
                        f"face {subset}: span is not a rank-{k} direct summand "
                        f"(divisors {list(divisors)}, rank {rank})")
    pair.validated = True
    return ValidationReport(True)


def validate_pairwise_2d(pair: CharacteristicPair) -> ValidationReport:
    """Dimension-2 shortcut: |det[lambda_i lambda_j]| = 1 for every pair of
    facets sharing a vertex, plus primitivity.  Kept as an independent code
    path so the general validator can be checked against it.
    """
    if pair.body.dim != 2:
        raise ValueError("shortcut applies to 2-dimensional bodies only")
    for fid in range(pair.body.facet_count):
        if not is_primitive(pair.lam[fid]):
            return ValidationReport(False, "primitivity", (fid,),
                                    f"facet {fid} is not primitive")
    for gv in pair.body.global_vertices():
        i, j = sorted(gv.facets)
        d = det_exact(IntMatrix.from_columns([pair.lam[i], pair.lam[j]], rows=2))
        if d not in (1, -1):
            return ValidationReport(False, "summand", (i, j),
                                    f"face ({i}, {j}): determinant {d}")
    return ValidationReport(True)


def _require_validated(pair: CharacteristicPair):
    if not pair.validated:
        raise NotValidatedError("characteristic pair has not been validated")


def vertex_frame(pair: CharacteristicPair, vid: int) -> VertexFrame:
    """Facet order, edge directions and sign at one vertex.

    The facets through the vertex are taken in ascending global id; if the
    matching edge directions are negatively oriented the last two entries
    are swapped, which is enough to make the basis positive.
    """
    _require_validated(pair)
    pairs = edge_directions_at_vertex(pair.body, vid)
    order = [fid for fid, _ in pairs]
    dirs = [d for _, d in pairs]
    if det_sign_columns(dirs) < 0:
        order[-1], order[-2] = order[-2], order[-1]
        dirs[-1], dirs[-2] = dirs[-2], dirs[-1]
    lambda_v = IntMatrix.from_columns([pair.lam[f] for f in order], rows=pair.body.dim)
    sign = det_exact(lambda_v)
    assert sign in (1, -1), "validated pair must have unimodular vertex matrices"
    return VertexFrame(vid, tuple(order), tuple(dirs), lambda_v, sign)


def all_signs(pair: CharacteristicPair) -> dict[int, int]:
    """sigma(v) for every vertex of every component, keyed by vertex id."""
    _require_validated(pair)
    return {gv.gid: vertex_frame(pair, gv.gid).sign
            for gv in pair.body.global_vertices()}


def is_positive_omniorientation(pair: CharacteristicPair) -> bool:
    """True when every vertex sign is +1; this is also the criterion for an
    invariant almost complex structure on the associated manifold."""
    return all(s == 1 for s in all_signs(pair).values())
