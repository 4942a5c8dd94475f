"""Module-window tests.

The A_3 window is checked in full against the interval combinatorics; the
relations algebra gets frozen spot values (worked out by hand from its
projective resolutions) plus structural round trips, including extensions
whose middle terms decompose into more than one interval.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

import pytest

from extricat._linalg import Mat
from extricat.intervals import ModuleWindow, valid_intervals
from extricat.model import ExtClass, obj_of, window_pair_agrees
from extricat.oracle import LinePresentation, OracleError

Q = Fraction


@pytest.fixture(scope="module")
def a3():
    return ModuleWindow(LinePresentation.a_n(3), (1, 3))


@pytest.fixture(scope="module")
def lam():
    return ModuleWindow(LinePresentation.pattern_4k(-8, 24), (0, 16))


def hom_rule(m, n):
    (a, b), (c, d) = m, n
    return 1 if c <= a <= d <= b else 0


def ext_rule(m, n):
    (a, b), (c, d) = m, n
    return 1 if a + 1 <= c <= b + 1 <= d else 0


def proportional(m1: Mat, m2: Mat) -> bool:
    flat1 = [x for row in m1.data for x in row]
    flat2 = [x for row in m2.data for x in row]
    nz = [(a, b) for a, b in zip(flat1, flat2) if a or b]
    if not nz:
        return True
    a0, b0 = nz[0]
    if a0 == 0 or b0 == 0:
        return False
    return all(a * b0 == b * a0 for a, b in nz)


class TestLineWithoutRelations:
    def test_all_dims_match_rules(self, a3):
        for m, n in itertools.product(a3.coords, a3.coords):
            i, j = a3.index[m], a3.index[n]
            assert a3.dim_pair(i, j, 0) == hom_rule(m, n)
            assert a3.dim_pair(i, j, 1) == ext_rule(m, n)
            assert a3.dim_pair(i, j, 2) == 0

    def test_ar_sequence(self, a3):
        s2, s3 = a3.index[(2, 2)], a3.index[(3, 3)]
        delta = a3.ext_basis(obj_of([s2]), obj_of([s3]), 1)[0]
        tri = a3.realize(delta)
        assert [a3.coords[p] for p in tri.total.parts] == [(2, 3)]
        for x in [obj_of([s2]), obj_of([s3]), obj_of([a3.index[(1, 2)], s3])]:
            ok, msg = a3.check_les_exact(tri, x)
            assert ok, msg

    def test_inflation_deflation(self, a3):
        s3, m23 = a3.index[(3, 3)], a3.index[(2, 3)]
        f = a3.mor_basis(obj_of([s3]), obj_of([m23]))[0]
        assert a3.is_inflation(f)
        assert not a3.is_deflation(f)
        g = a3.mor_basis(obj_of([m23]), obj_of([a3.index[(2, 2)]]))[0]
        assert a3.is_deflation(g)
        assert not a3.is_inflation(g)


class TestRelationsWindow:
    def test_window_size(self, lam):
        assert len(lam.coords) == 88
        assert len(lam.core) == 44

    def test_projectives_and_injectives(self, lam):
        ps = lam.projective_coords()
        for frozen in [(0, 1), (1, 3), (3, 5), (4, 5), (5, 7)]:
            assert frozen in ps
        iv = lam.injective_coords()
        for frozen in [(1, 2), (2, 4), (5, 6)]:
            assert frozen in iv

    def test_interval_validity(self, lam):
        assert (4, 6) not in lam.index
        assert (8, 10) not in lam.index
        assert (1, 3) in lam.index
        assert all(b - a <= 2 for a, b in lam.coords)

    def test_frozen_ext_dims(self, lam):
        gi = lam.index
        assert lam.dim_pair(gi[(3, 4)], gi[(4, 5)], 1) == 1
        assert lam.dim_pair(gi[(2, 3)], gi[(4, 4)], 1) == 1
        assert lam.dim_pair(gi[(1, 2)], gi[(2, 3)], 1) == 1
        assert lam.dim_pair(gi[(1, 2)], gi[(4, 5)], 1) == 0
        assert lam.dim_pair(gi[(2, 3)], gi[(5, 5)], 2) == 1

    def test_non_interval_middle(self, lam):
        gi = lam.index
        delta = lam.ext_basis(obj_of([gi[(3, 4)]]), obj_of([gi[(4, 5)]]), 1)[0]
        tri = lam.realize(delta)
        assert sorted(lam.coords[p] for p in tri.total.parts) == [(3, 5), (4, 4)]
        d2 = lam.ext_basis(obj_of([gi[(1, 2)]]), obj_of([gi[(2, 3)]]), 1)[0]
        t2 = lam.realize(d2)
        assert sorted(lam.coords[p] for p in t2.total.parts) == [(1, 3), (2, 2)]

    def test_les_with_degree_two_terms(self, lam):
        gi = lam.index
        delta = lam.ext_basis(obj_of([gi[(3, 4)]]), obj_of([gi[(4, 5)]]), 1)[0]
        tri = lam.realize(delta)
        probes = [
            obj_of([gi[(2, 3)]]),
            obj_of([gi[(1, 2)]]),
            obj_of([gi[(5, 5)]]),
            obj_of([gi[(4, 4)], gi[(3, 4)]]),
            obj_of([gi[(6, 7)]]),
            obj_of([gi[(0, 1)]]),
        ]
        for x in probes:
            ok, msg = lam.check_les_exact(tri, x)
            assert ok, (x, msg)

    def test_classify_back_proportional(self, lam):
        gi = lam.index
        delta = lam.ext_basis(obj_of([gi[(3, 4)]]), obj_of([gi[(4, 5)]]), 1)[0]
        tri = lam.realize(delta)
        tc = lam.cone_of(tri.f)
        assert tc.base.parts == tri.base.parts
        assert proportional(tc.delta.mat, delta.mat)
        tcc = lam.cocone_of(tri.g)
        assert tcc.fiber.parts == tri.fiber.parts
        assert proportional(tcc.delta.mat, delta.mat)

    def test_zero_class_splits(self, lam):
        gi = lam.index
        z = ExtClass(obj_of([gi[(1, 2)]]), obj_of([gi[(4, 5)]]), Mat.from_rows([[Q(0)]]), 1)
        tri = lam.realize(z)
        assert sorted(lam.coords[p] for p in tri.total.parts) == [(1, 2), (4, 5)]

    def test_empty_fiber(self, lam):
        gi = lam.index
        z = ExtClass(obj_of([gi[(1, 2)]]), obj_of([]), Mat.from_rows([], cols=1), 1)
        tri = lam.realize(z)
        assert tri.total.parts == (gi[(1, 2)],)
        assert lam.mor_is_iso(tri.g)

    def test_cone_rejects_non_mono(self, lam):
        gi = lam.index
        g = lam.mor_basis(obj_of([gi[(1, 2)]]), obj_of([gi[(1, 1)]]))[0]
        with pytest.raises(ValueError):
            lam.cone_of(g)
        with pytest.raises(ValueError):
            lam.cocone_of(lam.mor_basis(obj_of([gi[(2, 2)]]), obj_of([gi[(1, 2)]]))[0])


class TestStability:
    def test_larger_window_agrees(self, lam):
        big = ModuleWindow(LinePresentation.pattern_4k(-12, 28), (0, 16))
        coords = [lam.coords[i] for i in lam.core]
        assert window_pair_agrees(lam, big, coords)

    def test_core_must_fit(self):
        with pytest.raises(ValueError):
            ModuleWindow(LinePresentation.a_n(3), (0, 3))
