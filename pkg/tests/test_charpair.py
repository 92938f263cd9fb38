import random
from fractions import Fraction

import pytest

from tmh.charpair import (
    CharacteristicPair,
    all_signs,
    is_positive_omniorientation,
    validate,
    validate_pairwise_2d,
    vertex_frame,
)
from tmh.errors import NotValidatedError
from tmh.exactlin import IntMatrix
from tmh.polytope import build_with_holes, polygon_from_vertices

from instances import (
    cp2_triangle,
    pair_from_components,
    pentagon_y,
    random_one_hole_2d,
    random_quasitoric_2d,
    random_quasitoric_3d,
    square_in_square,
    validated,
)


def vertex_at(pair, point):
    return next(v.gid for v in pair.body.global_vertices() if v.point == point)


class TestValidate:
    def test_cp2_valid(self):
        report = validate(cp2_triangle())
        assert report.ok

    def test_adjacent_equal_vectors_rejected(self):
        outer = polygon_from_vertices([(0, 0), (1, 0), (1, 1), (0, 1)])
        pair = pair_from_components(outer, [], [[(1, 0), (1, 0), (-1, 0), (0, -1)]])
        report = validate(pair)
        assert not report.ok
        assert report.kind == "summand"
        assert set(report.facets) == {0, 1}

    def test_non_primitive_rejected(self):
        outer = polygon_from_vertices([(0, 0), (1, 0), (1, 1), (0, 1)])
        pair = pair_from_components(outer, [], [[(2, 0), (0, 1), (-1, 0), (0, -1)]])
        report = validate(pair)
        assert not report.ok
        assert report.kind == "primitivity"
        assert report.facets == (0,)

    def test_validation_covers_hole_facets(self):
        pair = square_in_square()
        bad = dict(pair.lam)
        bad[5] = bad[4]  # two adjacent hole facets share a vector
        report = validate(CharacteristicPair(pair.body, bad))
        assert not report.ok and report.kind == "summand"

    def test_3d_instances_valid(self):
        rng = random.Random(5)
        for _ in range(10):
            pair = random_quasitoric_3d(rng)
            assert pair.validated


class TestVertexFrame:
    def test_cp2_origin(self):
        pair = validated(cp2_triangle())
        frame = vertex_frame(pair, vertex_at(pair, (0, 0)))
        # positive order puts {x=0} (facet 1) before {y=0} (facet 0)
        assert frame.facet_order == (1, 0)
        assert frame.lambda_v == IntMatrix.from_columns([(1, 0), (0, 1)])
        assert frame.sign == 1

    def test_cp2_vertex_10(self):
        pair = validated(cp2_triangle())
        frame = vertex_frame(pair, vertex_at(pair, (1, 0)))
        assert frame.lambda_v == IntMatrix.from_columns([(0, 1), (-1, -1)])
        assert frame.sign == 1

    def test_cp2_vertex_01(self):
        pair = validated(cp2_triangle())
        frame = vertex_frame(pair, vertex_at(pair, (0, 1)))
        assert frame.sign == 1

    def test_requires_validation(self):
        pair = cp2_triangle()
        with pytest.raises(NotValidatedError):
            vertex_frame(pair, 0)

    def test_positive_direction_basis(self):
        from tmh.exactlin import det_sign_columns

        rng = random.Random(31)
        for _ in range(8):
            pair = random_quasitoric_2d(rng)
            for gv in pair.body.global_vertices():
                frame = vertex_frame(pair, gv.gid)
                assert det_sign_columns(frame.directions) > 0


class TestSigns:
    def test_cp2_all_plus_one(self):
        pair = validated(cp2_triangle())
        assert set(all_signs(pair).values()) == {1}

    def test_pentagon_y_all_plus_one(self):
        pair = validated(pentagon_y())
        signs = all_signs(pair)
        assert len(signs) == 5
        assert set(signs.values()) == {1}

    def test_flip_one_vector_flips_exactly_its_facet_vertices(self):
        rng = random.Random(41)
        for _ in range(6):
            pair = random_quasitoric_2d(rng)
            before = all_signs(pair)
            fid = rng.randrange(pair.body.facet_count)
            flipped = dict(pair.lam)
            flipped[fid] = tuple(-c for c in flipped[fid])
            pair2 = validated(CharacteristicPair(pair.body, flipped))
            after = all_signs(pair2)
            for gv in pair.body.global_vertices():
                if fid in gv.facets:
                    assert after[gv.gid] == -before[gv.gid]
                else:
                    assert after[gv.gid] == before[gv.gid]

    def test_sign_sum_invariant_under_scaling_and_translation(self):
        pair = validated(pentagon_y())
        total = sum(all_signs(pair).values())
        moved = pair.body.outer.transformed(Fraction(3, 2), (Fraction(7), Fraction(-2)))
        moved_pair = validated(
            CharacteristicPair(build_with_holes(moved, []), dict(pair.lam)))
        assert sum(all_signs(moved_pair).values()) == total

    def test_sign_sum_invariant_under_relabeling(self):
        # rotate the facet cycle of the pentagon: same body, shifted labels
        from instances import PENTAGON_LAMBDA, PENTAGON_VERTICES

        base = validated(pentagon_y())
        total = sum(all_signs(base).values())
        verts = PENTAGON_VERTICES[2:] + PENTAGON_VERTICES[:2]
        lam = PENTAGON_LAMBDA[2:] + PENTAGON_LAMBDA[:2]
        rotated = validated(pair_from_components(
            polygon_from_vertices(verts), [], [lam]))
        assert sum(all_signs(rotated).values()) == total

    def test_hole_vertices_counted(self):
        pair = square_in_square()
        validate(pair)
        assert len(all_signs(pair)) == 8


class TestPositiveOmniorientation:
    def test_pentagon(self):
        assert is_positive_omniorientation(validated(pentagon_y()))

    def test_cp2(self):
        assert is_positive_omniorientation(validated(cp2_triangle()))

    def test_negated_facet_breaks_it(self):
        pair = validated(cp2_triangle())
        lam = dict(pair.lam)
        lam[1] = (-1, 0)
        pair2 = validated(CharacteristicPair(pair.body, lam))
        assert not is_positive_omniorientation(pair2)


class TestShortcutAgreement:
    def test_matches_snf_on_valid_and_corrupted(self):
        rng = random.Random(59)
        for i in range(40):
            pair = random_one_hole_2d(rng) if i % 3 == 0 else random_quasitoric_2d(rng)
            lam = dict(pair.lam)
            if i % 2 == 0:
                fid = rng.randrange(pair.body.facet_count)
                lam[fid] = (rng.randint(-3, 3), rng.randint(-3, 3))
                if lam[fid] == (0, 0):
                    lam[fid] = (2, 2)
            candidate = CharacteristicPair(pair.body, lam)
            full = validate(candidate)
            shortcut = validate_pairwise_2d(candidate)
            assert full.ok == shortcut.ok
            if not full.ok:
                assert full.kind == shortcut.kind or full.kind == "primitivity"
