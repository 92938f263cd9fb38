"""Edge vectors, generic circle directions, vertex indices and the chi_y
genus with its specializations.

At a vertex v with facet matrix L_v, the edge covectors mu_1 ... mu_n are
the rows of L_v^{-1}: mu_k pairs to 1 with the k-th facet vector and to 0
with the others, which is exactly the sign normalization M_v^t L_v = I.
The genus of the whole pair is the sum over vertices of
(-y)^{index} * sign, evaluated with any direction nu that pairs to a
nonzero integer with every edge covector.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .charpair import CharacteristicPair, all_signs, vertex_frame
from .errors import GenericityError
from .exactlin import is_primitive, unimodular_inverse


@dataclass(frozen=True)
class EdgeVectorFrame:
    vertex: int
    facet_order: tuple[int, ...]
    mu: tuple[tuple[int, ...], ...]  # one integer covector per facet


@dataclass(frozen=True)
class ChiYPolynomial:
    """chi_y = sum c_j y^j with integer coefficients c_0 ... c_n."""

    coefficients: tuple[int, ...]
    nu: tuple[int, ...]

    def evaluate(self, y: int) -> int:
        return sum(c * y**j for j, c in enumerate(self.coefficients))

    @property
    def top_chern(self) -> int:
        """chi_{-1}, the top Chern number (sum of vertex signs)."""
        return self.evaluate(-1)

    @property
    def signature(self) -> int:
        """chi_1."""
        return self.evaluate(1)

    @property
    def todd(self) -> int:
        """The constant coefficient."""
        return self.coefficients[0]


def edge_vectors(pair: CharacteristicPair, vid: int) -> EdgeVectorFrame:
    frame = vertex_frame(pair, vid)  # raises NotValidatedError when needed
    inverse = unimodular_inverse(frame.lambda_v)
    mu = tuple(inverse.row(k) for k in range(inverse.rows))
    assert all(is_primitive(m) for m in mu)
    return EdgeVectorFrame(vid, frame.facet_order, mu)


def _all_edge_vectors(pair: CharacteristicPair):
    for gv in pair.body.global_vertices():
        frame = edge_vectors(pair, gv.gid)
        for m in frame.mu:
            yield gv.gid, m


def is_generic(pair: CharacteristicPair, nu) -> bool:
    nu = tuple(int(c) for c in nu)
    return all(sum(a * b for a, b in zip(m, nu)) != 0
               for _, m in _all_edge_vectors(pair))


def find_generic_nu(pair: CharacteristicPair) -> tuple[int, ...]:
    """First primitive direction, by increasing max-norm then lexicographic
    order, that pairs nonzero with every edge vector of every vertex."""
    covectors = [m for _, m in _all_edge_vectors(pair)]
    n = pair.body.dim
    for bound in itertools.count(1):
        for cand in itertools.product(range(-bound, bound + 1), repeat=n):
            if max(abs(c) for c in cand) != bound:
                continue
            if not is_primitive(cand):
                continue
            if all(sum(a * b for a, b in zip(m, cand)) != 0 for m in covectors):
                return cand


def vertex_index(pair: CharacteristicPair, vid: int, nu) -> int:
    """Number of negative weights mu_k(nu) at the vertex."""
    nu = tuple(int(c) for c in nu)
    frame = edge_vectors(pair, vid)
    index = 0
    for m in frame.mu:
        w = sum(a * b for a, b in zip(m, nu))
        if w == 0:
            raise GenericityError(
                f"direction {nu} pairs to zero with edge vector {m} "
                f"at vertex {vid}", vertex=vid, edge_vector=m)
        if w < 0:
            index += 1
    return index


def chi_y(pair: CharacteristicPair, nu=None) -> ChiYPolynomial:
    """Genus polynomial; finds a generic direction when none is supplied.

    Coefficient j collects (-1)^j * sign over the vertices of index j, so
    evaluation at -1 gives the sign sum, at 1 the signature, and the
    constant term is the Todd genus.
    """
    signs = all_signs(pair)
    if nu is None:
        nu = find_generic_nu(pair)
    else:
        nu = tuple(int(c) for c in nu)
    n = pair.body.dim
    coeffs = [0] * (n + 1)
    for vid in sorted(signs):
        j = vertex_index(pair, vid, nu)
        coeffs[j] += (-1) ** j * signs[vid]
    return ChiYPolynomial(tuple(coeffs), nu)
