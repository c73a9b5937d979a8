"""Orbit combinatorics, the shift complexes, and the structural checks."""

import pytest

from bredon.abgrp import FgAbelianGroup, IntegerMatrix
from bredon.chaincx import all_cohomology, cohomology
from bredon.sigmacx import (
    FIXED,
    FREE,
    SigmaSpec,
    build_sigma_complex,
    canonical_bits,
    cone_tower_check,
    free_orbit_acyclicity,
    involution_map,
    orbit_basis,
    pull_matrix,
    push_matrix,
    restriction_map,
    transfer_map,
    transfer_restriction_check,
    weight0,
)

Z = FgAbelianGroup.free(1)
Z2 = FgAbelianGroup.cyclic(2)
ZERO = FgAbelianGroup.zero()


# -- independent enumeration oracle for the push/pull coefficients ---------
#
# A basis class is a cycle: the pair {v, complement(v)} of bit strings, or a
# single point for the fixed arity-0 class.  Pushing forward (or pulling
# back) the cycle gives a multiset of points, and the coefficient of a basis
# class in that multiset is the multiplicity of its canonical representative.

def _cycle_points(bits, free):
    if not free and not bits:
        return [()]
    return [bits, tuple(1 - b for b in bits)]


def _express_in_basis(point_multiset, arity, orbit_type):
    basis = orbit_basis(arity, orbit_type)
    index = {b: i for i, b in enumerate(basis)}
    coeffs = {}
    for point, mult in point_multiset.items():
        if point in index:
            coeffs[index[point]] = mult
    return coeffs


def oracle_push(j, drop_index, orbit_type):
    free = orbit_type == FREE
    src = orbit_basis(j, orbit_type)
    tgt = orbit_basis(j - 1, orbit_type)
    pos = drop_index - 1 + (1 if free else 0)
    entries = {}
    for col, bits in enumerate(src):
        image = {}
        for point in _cycle_points(bits, free):
            shorter = point[:pos] + point[pos + 1:]
            image[shorter] = image.get(shorter, 0) + 1
        for row, c in _express_in_basis(image, j - 1, orbit_type).items():
            entries[(row, col)] = c
    return IntegerMatrix.from_entries(len(tgt), len(src), entries)


def oracle_pull(j, insert_index, orbit_type):
    free = orbit_type == FREE
    src = orbit_basis(j - 1, orbit_type)
    tgt = orbit_basis(j, orbit_type)
    pos = insert_index - 1 + (1 if free else 0)
    entries = {}
    for col, bits in enumerate(src):
        fiber = {}
        for point in _cycle_points(bits, free):
            for b in (0, 1):
                lifted = point[:pos] + (b,) + point[pos:]
                fiber[lifted] = fiber.get(lifted, 0) + 1
        for row, c in _express_in_basis(fiber, j, orbit_type).items():
            entries[(row, col)] = c
    return IntegerMatrix.from_entries(len(tgt), len(src), entries)


class TestOrbitBasis:
    def test_sizes(self):
        assert orbit_basis(0, FIXED) == [()]
        assert orbit_basis(2, FIXED) == [(0, 0), (0, 1)]
        assert len(orbit_basis(3, FIXED)) == 4
        assert len(orbit_basis(3, FREE)) == 8
        assert orbit_basis(0, FREE) == [(0,)]

    def test_enumeration_oracle(self):
        # brute force: orbits of the complement action on bit strings
        for j in range(0, 6):
            seen = set()
            for k in range(2 ** j):
                bits = tuple((k >> (j - 1 - i)) & 1 for i in range(j))
                seen.add(canonical_bits(bits))
            assert sorted(seen) == orbit_basis(j, FIXED)


class TestPushPull:
    def test_one_coordinate(self):
        assert push_matrix(1, 1, FIXED).to_rows() == [[2]]
        assert pull_matrix(1, 1, FIXED).to_rows() == [[1]]

    def test_two_coordinates(self):
        assert push_matrix(2, 1, FIXED).to_rows() == [[1, 1]]
        assert push_matrix(2, 2, FIXED).to_rows() == [[1, 1]]
        assert pull_matrix(2, 1, FIXED).to_rows() == [[1], [1]]

    def test_free_push(self):
        # pointwise pushforward of the two-point cycle, re-canonicalized
        assert push_matrix(2, 1, FREE).to_rows() == [[1, 0, 1, 0], [0, 1, 0, 1]]

    def test_pull_three(self):
        for idx in (1, 2, 3):
            m = pull_matrix(3, idx, FIXED)
            assert (m.rows, m.cols) == (4, 2)
            for j in range(2):
                assert sum(m.entry(i, j) for i in range(4)) == 2
                assert all(m.entry(i, j) in (0, 1) for i in range(4))

    def test_against_enumeration_oracle(self):
        for orbit_type in (FIXED, FREE):
            for j in range(1, 5):
                for idx in range(1, j + 1):
                    assert push_matrix(j, idx, orbit_type) == oracle_push(j, idx, orbit_type)
                    assert pull_matrix(j, idx, orbit_type) == oracle_pull(j, idx, orbit_type)

    def test_index_bounds(self):
        with pytest.raises(ValueError):
            push_matrix(2, 3, FIXED)
        with pytest.raises(ValueError):
            pull_matrix(2, 0, FIXED)


class TestBuildComplex:
    def test_shift_one(self):
        c = build_sigma_complex(SigmaSpec(1, FIXED))
        assert sorted(c.components) == [-1, 0]
        assert c.differential(-1).to_rows() == [[2]]

    def test_shift_two_matches_calibration(self):
        c = build_sigma_complex(SigmaSpec(2, FIXED))
        assert [c.rank(d) for d in (-2, -1, 0)] == [2, 2, 1]
        assert c.differential(-2).to_rows() == [[1, 1], [-1, -1]]
        assert c.differential(-1).to_rows() == [[2, 2]]

    def test_negative_two_matches_calibration(self):
        c = build_sigma_complex(SigmaSpec(-2, FIXED))
        assert c.differential(0).to_rows() == [[1], [1]]
        assert c.differential(1).to_rows() == [[1, -1], [1, -1]]

    def test_shift_three(self):
        c = build_sigma_complex(SigmaSpec(3, FIXED))
        assert [c.rank(d) for d in (-3, -2, -1, 0)] == [4, 6, 3, 1]
        assert cohomology(c, 0) == Z2
        assert cohomology(c, -1) == ZERO
        assert cohomology(c, -2) == Z2
        assert cohomology(c, -3) == ZERO

    def test_unit_shift(self):
        c = build_sigma_complex(SigmaSpec(0, FIXED))
        assert c.components == {0: 1}

    def test_rank_identities(self):
        for n in range(1, 7):
            c = build_sigma_complex(SigmaSpec(n, FIXED))
            assert c.total_rank() == 1 + (3 ** n - 1) // 2
            from math import comb
            for j in range(1, n + 1):
                assert c.rank(-j) == comb(n, j) * 2 ** (j - 1)


class TestShiftBound:
    def test_guard_and_override(self):
        import bredon.sigmacx as sg
        with pytest.raises(ValueError):
            build_sigma_complex(SigmaSpec(sg.SHIFT_BOUND + 1, FIXED))
        assert build_sigma_complex(SigmaSpec(sg.SHIFT_BOUND - 6, FIXED)).rank(0) == 1


class TestWeight0:
    def test_contract_examples(self):
        assert weight0(3, -4, 0) == Z2
        assert weight0(-4, 4, 0) == Z
        assert weight0(-2, 3, 2) == Z2

    def test_out_of_support_is_zero(self):
        assert weight0(5, 3, 0) == ZERO
        assert weight0(-1, -3, 0) == ZERO

    def test_diagonal_values(self):
        # the diagonal: free for even degrees, 2-torsion for odd degrees > 1
        for a in range(-6, 7):
            g = weight0(a, -a, 0)
            if a % 2 == 0:
                assert g == Z
            elif a > 1:
                assert g == Z2
            else:
                assert g == ZERO
        for a in range(-6, 7):
            g2 = weight0(a, -a, 2)
            assert g2 == (ZERO if a == 1 else Z2)


class TestFreeOrbit:
    def test_acyclicity_small(self):
        for p in range(-4, 5):
            assert free_orbit_acyclicity(p, 0)
            assert free_orbit_acyclicity(p, 2)

    def test_homology_position(self):
        c = build_sigma_complex(SigmaSpec(1, FREE))
        assert all_cohomology(c) == {-1: Z}
        c = build_sigma_complex(SigmaSpec(-1, FREE))
        assert all_cohomology(c) == {1: Z}
        c = build_sigma_complex(SigmaSpec(0, FREE))
        assert all_cohomology(c) == {0: Z}


class TestTransferRestriction:
    def test_rank_one_components(self):
        tr, res = transfer_map(1), restriction_map(1)
        comp = tr.compose(res)
        for d in (-1, 0):
            assert comp.component(d) == IntegerMatrix.identity(tr.target.rank(d)).scale(2)

    def test_involution_shape(self):
        res, tr = restriction_map(2), transfer_map(2)
        comp = res.compose(tr)
        flip = involution_map(2)
        m = comp.component(-1)
        assert m == IntegerMatrix.identity(4) + flip.component(-1)
        # the involution at arity 1 swaps the two classes in each subset block
        assert flip.component(-1).to_rows() == [
            [0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]

    def test_full_check(self):
        for p in range(-4, 5):
            assert transfer_restriction_check(p)


class TestConeTower:
    def test_base_case(self):
        assert cone_tower_check(0)

    def test_transfer_cone_sequence_is_exact(self):
        from bredon.chaincx import check_cone_les
        for p in range(0, 4):
            assert check_cone_les(transfer_map(p))

    def test_level_one_ranks(self):
        from bredon.chaincx import cone
        c = cone(transfer_map(1))
        assert {d: c.rank(d) for d in (-2, -1, 0)} == {-2: 2, -1: 2, 0: 1}
        target = build_sigma_complex(SigmaSpec(2, FIXED))
        assert c.differential(-2) == target.differential(-2)
        assert c.differential(-1) == target.differential(-1)

    def test_level_two_cohomology(self):
        assert cone_tower_check(1)
        assert cone_tower_check(2)
        c3 = build_sigma_complex(SigmaSpec(3, FIXED))
        assert {d: str(g) for d, g in all_cohomology(c3).items()} == {0: "Z/2", -2: "Z/2"}
