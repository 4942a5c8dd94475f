"""Cotorsion-pair engine tests.

The projective/injective pairs on the three-vertex line are verified end to
end — there the approximations are projective covers and injective
envelopes, worked out by hand.  Hereditarity is exercised through all three
routes, positive and negative, and the twin layer runs on the smallest mesh
window, where every one-sided search is exact.
"""
from __future__ import annotations

import pytest

from extricat.cotorsion import (
    ApproximationError,
    CotorsionCertificate,
    check_hereditary_hovey,
    check_hovey_thickness,
    check_intersection_match,
    check_perp_recovery,
    check_class_closures,
    check_thick_ambient_classes,
    is_hereditary,
    minimal_approximation,
    verify_cotorsion,
    verify_twin,
)
from extricat.intervals import ModuleWindow
from extricat.mesh import DerivedWindow
from extricat.model import Obj
from extricat.oracle import LinePresentation
from extricat import subcats as sc

P1, S1, S2 = (1, 2), (1, 1), (2, 2)


@pytest.fixture(scope="module")
def m2():
    return ModuleWindow(LinePresentation.a_n(2), (1, 2))


@pytest.fixture(scope="module")
def m3():
    return ModuleWindow(LinePresentation.a_n(3), (1, 3))


@pytest.fixture(scope="module")
def d2():
    return DerivedWindow(2, (-4, 8), (0, 4))


def coords_of(win, s):
    return {win.coords[i] for i in s.members}


class TestMinimalApproximation:
    def test_projective_cover(self, m2):
        proj = sc.subcat(m2, [P1])
        f = minimal_approximation(m2, m2.index[S1], proj, "right")
        assert [m2.coords[p] for p in f.src.parts] == [P1]
        assert m2.is_deflation(f)
        tri = m2.cocone_of(f)
        assert [m2.coords[p] for p in tri.fiber.parts] == [S2]

    def test_member_approximates_itself(self, m2):
        proj = sc.subcat(m2, [P1])
        f = minimal_approximation(m2, m2.index[P1], proj, "right")
        assert [m2.coords[p] for p in f.src.parts] == [P1]
        assert f.mat.data[0][0] == 1

    def test_deterministic(self, m3):
        proj = sc.subcat(m3, sorted(m3.projective_coords()))
        b = m3.index[(2, 2)]
        f = minimal_approximation(m3, b, proj, "right")
        g = minimal_approximation(m3, b, proj, "right")
        assert f.src.parts == g.src.parts == (m3.index[(2, 3)],)

    def test_injective_envelope(self, m2):
        inj = sc.subcat(m2, [S1, P1])
        f = minimal_approximation(m2, m2.index[S2], inj, "left")
        assert [m2.coords[p] for p in f.dst.parts] == [P1]
        tri = m2.cone_of(f)
        assert [m2.coords[p] for p in tri.base.parts] == [S1]

    def test_no_approximation_is_definite(self, m2):
        with pytest.raises(ApproximationError) as err:
            minimal_approximation(m2, m2.index[S1], sc.subcat(m2, [S2]), "right")
        assert err.value.definite

    def test_misuse(self, m2):
        with pytest.raises(ValueError):
            minimal_approximation(m2, m2.index[S1], sc.subcat(m2, [P1]), "up")
        two = Obj((m2.index[S1], m2.index[S2]))
        with pytest.raises(ValueError):
            minimal_approximation(m2, two, sc.subcat(m2, [P1]), "right")


class TestVerifyCotorsion:
    def test_projectives_against_everything(self, m3):
        cert = verify_cotorsion(
            m3, sc.subcat(m3, sorted(m3.projective_coords())), sc.full_subcat(m3)
        )
        assert cert.ok
        assert len(cert.covers) == len(cert.envelopes) == 6
        tri = cert.covers[m3.index[(2, 2)]]
        assert [m3.coords[p] for p in tri.total.parts] == [(2, 3)]
        assert [m3.coords[p] for p in tri.fiber.parts] == [(3, 3)]

    def test_everything_against_injectives(self, m3):
        cert = verify_cotorsion(
            m3, sc.full_subcat(m3), sc.subcat(m3, sorted(m3.injective_coords()))
        )
        assert cert.ok

    def test_missing_envelope_is_a_failure(self, m3):
        proj = sc.subcat(m3, sorted(m3.projective_coords()))
        cert = verify_cotorsion(m3, proj, proj)
        assert cert.status == "failed"
        assert any("no envelope" in f for f in cert.failures)

    def test_class_must_sit_inside_ambient(self, m3):
        proj = sc.subcat(m3, sorted(m3.projective_coords()))
        cert = verify_cotorsion(m3, proj, sc.full_subcat(m3), ambient=proj)
        assert any("escapes the ambient" in f for f in cert.failures)

    def test_ambient_must_be_extension_closed(self, m2):
        amb = sc.subcat(m2, [S1, S2])
        cert = verify_cotorsion(m2, sc.zero_subcat(), sc.zero_subcat(), ambient=amb)
        assert any("not extension-closed" in f for f in cert.failures)

    def test_nonvanishing_extension_is_a_failure(self, m2):
        cert = verify_cotorsion(m2, sc.subcat(m2, [S1]), sc.subcat(m2, [S2]))
        assert any("is nonzero" in f for f in cert.failures)

    def test_serialization_round(self, m3):
        cert = verify_cotorsion(
            m3, sc.subcat(m3, sorted(m3.projective_coords())), sc.full_subcat(m3)
        )
        blob = cert.to_json(m3)
        assert blob["status"] == "ok"
        assert len(blob["objects"]) == 6
        entry = blob["objects"]["(2, 2)"]
        assert entry["cover"]["total"] == ["(2, 3)"]
        assert blob == cert.to_json(m3)


class TestHereditary:
    def test_projective_pair_hereditary(self, m3):
        cert = verify_cotorsion(
            m3, sc.subcat(m3, sorted(m3.projective_coords())), sc.full_subcat(m3)
        )
        rep = is_hereditary(m3, cert)
        assert rep.verdict and rep.agree
        assert rep.square_vanishes and rep.first_cocone_closed and rep.second_cone_closed

    def test_negative_case_fails_all_three_routes(self, d2):
        # v = u[-2], so degree-two classes survive and both closures leak
        u, v = sc.subcat(d2, [(4, 1)]), sc.subcat(d2, [(1, 1)])
        cert = CotorsionCertificate(u, v, sc.full_subcat(d2), "core", {}, {})
        rep = is_hereditary(d2, cert)
        assert not rep.verdict and rep.agree
        assert not rep.square_vanishes
        assert not rep.first_cocone_closed
        assert not rep.second_cone_closed
        assert rep.witnesses

    def test_out_of_region_member_yields_disagreement(self, d2):
        # the second class sits outside the probe region, so its closure
        # route is vacuous; the report flags the disagreement instead of
        # quietly passing
        u, v = sc.subcat(d2, [(0, 1)]), sc.subcat(d2, [(-3, 1)])
        cert = CotorsionCertificate(u, v, sc.full_subcat(d2), "core", {}, {})
        rep = is_hereditary(d2, cert)
        assert not rep.agree
        assert not rep.verdict
        assert rep.second_cone_closed  # vacuously

    def test_perp_and_closure_postchecks(self, m3):
        cert = verify_cotorsion(
            m3, sc.subcat(m3, sorted(m3.projective_coords())), sc.full_subcat(m3)
        )
        ok, msg = check_perp_recovery(m3, cert)
        assert ok, msg
        ok, msg = check_class_closures(m3, cert)
        assert ok, msg


class TestTwinLayer:
    def test_trivial_twin_verifies(self, d2):
        full, zero = sc.full_subcat(d2), sc.zero_subcat()
        twin = verify_twin(d2, full, zero, full, zero)
        assert twin.ok
        assert twin.equivalence_agrees
        assert not twin.w.members and not twin.z.members
        ok, msg = check_intersection_match(d2, twin)
        assert ok, msg

    def test_trivial_twin_is_hovey_with_thick_class(self, d2):
        full, zero = sc.full_subcat(d2), sc.zero_subcat()
        twin = verify_twin(d2, full, zero, full, zero)
        rep = check_hovey_thickness(d2, twin)
        assert rep.applies and rep.ok
        assert rep.thick.verdict
        assert rep.pair_in_class.ok

    def test_trivial_twin_hereditary_route(self, d2):
        full, zero = sc.full_subcat(d2), sc.zero_subcat()
        twin = verify_twin(d2, full, zero, full, zero)
        rep = check_hereditary_hovey(d2, twin, full)
        assert rep.applies and rep.ok
        assert rep.first.agree and rep.second.agree
        assert rep.hovey.verdict is True
        assert rep.class_matches

    def test_thick_ambient_recovers_classes(self, d2):
        full, zero = sc.full_subcat(d2), sc.zero_subcat()
        ok, msg = check_thick_ambient_classes(d2, full, zero, full)
        assert ok, msg

    def test_failed_member_pair_poisons_the_twin(self, m2):
        # ({P1}, everything) is fine, but as the second pair of a twin the
        # object S2 has no cover by {P1}
        p = sc.subcat(m2, [P1])
        full = sc.full_subcat(m2)
        twin = verify_twin(m2, p, full, p, full)
        assert twin.second.status == "failed"
        assert not twin.ok

    def test_inapplicable_hypotheses_pass_vacuously(self, d2):
        u, v = sc.subcat(d2, [(4, 1)]), sc.subcat(d2, [(1, 1)])
        bad = CotorsionCertificate(u, v, sc.full_subcat(d2), "core", {}, {})
        from extricat.cotorsion import TwinCertificate

        twin = TwinCertificate(
            first=bad,
            second=bad,
            inclusion_ok=True,
            ext_vanishes=True,
            w=u.intersect(v),
            z=u.intersect(v),
        )
        rep = check_hereditary_hovey(d2, twin)
        assert not rep.applies
        assert rep.ok
        assert rep.hovey is None
