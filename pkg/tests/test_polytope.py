from fractions import Fraction

import pytest

from tmh.errors import (
    ContainmentError,
    DisjointnessError,
    EmptyError,
    NotSimpleError,
    PlacementError,
    RedundantFacetError,
    UnboundedError,
)
from tmh.polytope import (
    HalfSpace,
    build_polytope,
    build_with_holes,
    edge_directions_at_vertex,
    fm_feasible,
    place_holes,
    polygon_from_vertices,
)

F = Fraction


def unit_square():
    return build_polytope(2, [
        ((1, 0), 0), ((0, 1), 0), ((-1, 0), -1), ((0, -1), -1)])


def box(x0, y0, x1, y1):
    return build_polytope(2, [
        ((1, 0), x0), ((0, 1), y0), ((-1, 0), -x1), ((0, -1), -y1)])


def coordinate_triangle():
    # {y >= 0, x >= 0, -x - y >= -1}
    return build_polytope(2, [((0, 1), 0), ((1, 0), 0), ((-1, -1), -1)])


class TestBuildPolytope:
    def test_unit_square(self):
        p = unit_square()
        assert p.vertex_count == 4
        assert len(p.edges) == 4
        assert {v.point for v in p.vertices} == {
            (0, 0), (1, 0), (0, 1), (1, 1)}

    def test_triangle_vertices(self):
        p = coordinate_triangle()
        assert {v.point for v in p.vertices} == {(0, 0), (1, 0), (0, 1)}

    def test_redundant_facet(self):
        with pytest.raises(RedundantFacetError):
            build_polytope(2, [
                ((1, 0), 0), ((0, 1), 0), ((-1, 0), -1), ((0, -1), -1),
                ((1, 1), -1)])

    def test_unbounded(self):
        with pytest.raises(UnboundedError):
            build_polytope(2, [((1, 0), 0), ((0, 1), 0)])

    def test_empty(self):
        with pytest.raises(EmptyError):
            build_polytope(2, [((1, 0), 1), ((-1, 0), 0), ((0, 1), 0), ((0, -1), -1)])

    def test_not_simple(self):
        # square with one corner sliced exactly through a vertex
        with pytest.raises(NotSimpleError):
            build_polytope(2, [
                ((1, 0), 0), ((0, 1), 0), ((-1, 0), -1), ((0, -1), -1),
                ((1, 1), 0)])

    def test_simple_3d_cube(self):
        cube = build_polytope(3, [
            ((1, 0, 0), 0), ((0, 1, 0), 0), ((0, 0, 1), 0),
            ((-1, 0, 0), -1), ((0, -1, 0), -1), ((0, 0, -1), -1)])
        assert cube.vertex_count == 8
        assert len(cube.edges) == 12
        assert all(len(v.facets) == 3 for v in cube.vertices)

    def test_octahedron_rejected_not_simple(self):
        octa = [((sx, sy, sz), -1)
                for sx in (1, -1) for sy in (1, -1) for sz in (1, -1)]
        with pytest.raises(NotSimpleError):
            build_polytope(3, octa)


class TestPolygonFromVertices:
    def test_square_cycle(self):
        p = polygon_from_vertices([(0, 0), (1, 0), (1, 1), (0, 1)])
        assert p.facet_count == 4
        # facet i is the edge from cycle vertex i to i+1
        assert p.halfspaces[0].normal == (0, 1)
        assert p.halfspaces[0].offset == 0

    def test_rejects_clockwise(self):
        with pytest.raises(NotSimpleError):
            polygon_from_vertices([(0, 0), (0, 1), (1, 1), (1, 0)])

    def test_rejects_collinear(self):
        with pytest.raises(NotSimpleError):
            polygon_from_vertices([(0, 0), (1, 0), (2, 0), (1, 1)])

    def test_rational_coordinates(self):
        p = polygon_from_vertices([(0, 0), (F(1, 2), 0), (F(1, 2), F(1, 3)), (0, F(1, 3))])
        assert p.vertex_count == 4


class TestBuildWithHoles:
    def test_square_in_square(self):
        body = build_with_holes(box(0, 0, 4, 4), [box(1, 1, 2, 2)])
        assert body.hole_count == 1
        assert body.facet_count == 8
        assert body.vertex_count == 8

    def test_containment_error(self):
        with pytest.raises(ContainmentError):
            build_with_holes(box(0, 0, 4, 4), [box(3, 1, 5, 2)])

    def test_touching_hole_rejected(self):
        with pytest.raises(ContainmentError):
            build_with_holes(box(0, 0, 4, 4), [box(0, 1, 1, 2)])

    def test_disjointness_error(self):
        with pytest.raises(DisjointnessError):
            build_with_holes(box(0, 0, 6, 6),
                             [box(1, 1, 2, 2), box(F(3, 2), 1, F(5, 2), 2)])

    def test_touching_holes_rejected(self):
        with pytest.raises(DisjointnessError):
            build_with_holes(box(0, 0, 6, 6), [box(1, 1, 2, 2), box(2, 1, 3, 2)])

    def test_contains_points(self):
        body = build_with_holes(box(0, 0, 4, 4), [box(1, 1, 2, 2)])
        assert body.contains((F(1, 2), F(1, 2)))
        assert body.contains((1, 1))          # on the hole boundary
        assert not body.contains((F(3, 2), F(3, 2)))  # inside the hole
        assert not body.contains((5, 0))


class TestEdgeDirections:
    def test_triangle_origin(self):
        body = build_with_holes(coordinate_triangle(), [])
        vid = next(v.gid for v in body.global_vertices() if v.point == (0, 0))
        dirs = dict(edge_directions_at_vertex(body, vid))
        # facet 0 is {y=0}, facet 1 is {x=0}
        assert dirs[0] == (0, 1)
        assert dirs[1] == (1, 0)

    def test_square_vertex(self):
        body = build_with_holes(unit_square(), [])
        vid = next(v.gid for v in body.global_vertices() if v.point == (1, 0))
        dirs = dict(edge_directions_at_vertex(body, vid))
        # facet 1 is {y=0}, facet 2 is {x=1}
        assert dirs[1] == (0, 1)
        assert dirs[2] == (-1, 0)

    def test_hole_vertex_follows_drop_one_facet_rule(self):
        body = build_with_holes(box(0, 0, 4, 4), [box(1, 1, 2, 2)])
        vid = next(v.gid for v in body.global_vertices()
                   if v.component == 1 and v.point == (1, 1))
        dirs = dict(edge_directions_at_vertex(body, vid))
        # global hole facets: 4={x>=1}, 5={y>=1}; the edge paired with a
        # facet is the one meeting it only at the vertex
        assert dirs[4] == (1, 0)
        assert dirs[5] == (0, 1)

    def test_directions_stay_inside_component(self):
        body = build_with_holes(box(0, 0, 4, 4), [box(1, 1, 2, 2)])
        for gv in body.global_vertices():
            comp = body.components[gv.component]
            local_facets = {body.facet_location(f)[1] for f in gv.facets}
            for fid, direction in edge_directions_at_vertex(body, gv.gid):
                assert any(d != 0 for d in direction)
                probe = tuple(p + F(1, 1000) * d for p, d in zip(gv.point, direction))
                assert comp.contains(probe)
                _, local = body.facet_location(fid)
                # the probe stays on the edge's facets (the other facets at
                # the vertex) and strictly inside everything else
                for i, h in enumerate(comp.halfspaces):
                    if i in local_facets and i != local:
                        assert h.value(probe) == 0
                    else:
                        assert h.value(probe) > 0


class TestPlaceHoles:
    def test_one_triangle_auto(self):
        body = place_holes(box(0, 0, 10, 10), [coordinate_triangle()])
        assert body.hole_count == 1
        assert body.facet_count == 7

    def test_pentagon_in_itself(self):
        pentagon = polygon_from_vertices([(0, 0), (2, 0), (3, 2), (1, 4), (-1, 2)])
        body = place_holes(pentagon, [pentagon])
        assert body.hole_count == 1
        assert body.facet_count == 10
        # normals survive the transform, so characteristic data transports
        for a, b in zip(pentagon.halfspaces, body.holes[0].halfspaces):
            assert a.normal == b.normal

    def test_three_unit_squares_at_unit_scale_fail(self):
        with pytest.raises(PlacementError):
            place_holes(box(0, 0, 2, 2), [unit_square()] * 3, scale=F(1))

    def test_auto_placement_multiple_pieces(self):
        body = place_holes(box(0, 0, 2, 2), [unit_square()] * 3)
        assert body.hole_count == 3

    def test_placement_passes_validation(self):
        tri = coordinate_triangle()
        sq = unit_square()
        body = place_holes(box(0, 0, 8, 8), [tri, sq, tri])
        rebuilt = build_with_holes(body.outer, body.holes)
        assert rebuilt.facet_count == body.facet_count


class TestTwoDimensionalCounts:
    def test_vertices_equal_facets_per_component_and_globally(self):
        body = build_with_holes(box(0, 0, 8, 8), [
            box(1, 1, 2, 2),
            polygon_from_vertices([(4, 4), (6, 4), (5, 6)]),
        ])
        for comp in body.components:
            assert comp.vertex_count == comp.facet_count
        assert body.vertex_count == body.facet_count


class TestFmFeasible:
    def test_simple_feasible(self):
        assert fm_feasible([((1, 0), 0), ((0, 1), 0), ((-1, -1), -1)])

    def test_simple_infeasible(self):
        assert not fm_feasible([((1, 0), 2), ((-1, 0), 0)])

    def test_equality_encoded(self):
        rows = [((1, 0), 1), ((-1, 0), -1), ((0, 1), 0), ((0, -1), -5)]
        assert fm_feasible(rows)
