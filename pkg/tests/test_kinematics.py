"""Diagnostics: vorticity, strain, dissipation, alignment, sweeps."""

import math

import numpy as np
import pytest

from nsvl import catalog as cat
from nsvl import kinematics as kin
from nsvl import symmetry as sym
from nsvl import verify
from nsvl.catalog import FamilyId, FlowJet, FlowState, Point4
from nsvl.errors import DegenerateStretchError, DegenerateVorticityError
from nsvl.gridspec import Axis, GridSpec


def _jet_from_du(du):
    """Plumbing: a bare jet with just a velocity gradient."""
    return FlowJet(FlowState(0, 0, 0, 0), np.array(du, float),
                   np.zeros(3), np.zeros((3, 3)), np.zeros(3))


class TestVorticity:
    def test_irrotational_is_curl_free(self):
        f = verify.standard_field(FamilyId.IRROTATIONAL_POTENTIAL)
        for pt in (Point4(0.3, -0.9, 1.4, 0.2), Point4(-1.0, 0.4, 0.0, 0.8)):
            om = kin.vorticity(cat.eval_jet(f, pt))
            assert np.allclose(om, 0.0, atol=1e-14)

    def test_burgers_vortex_core(self):
        f = cat.make_field(FamilyId.BURGERS_VORTEX,
                           {"gamma": 1.0, "f0": 1.0, "f1": 0.0}, nu=0.25)
        om = kin.vorticity(cat.eval_jet(f, Point4(0.0, 0.0, 0.0, 0.0)))
        assert np.allclose(om, [0.0, 0.0, 2.0], atol=1e-12)

    def test_shear_layer_midplane(self):
        f = cat.make_field(FamilyId.BURGERS_SHEAR_LAYER,
                           {"gamma": 1.0, "A": 1.0, "B": 0.0}, nu=0.5)
        om = kin.vorticity(cat.eval_jet(f, Point4(0.2, 0.0, -0.7, 0.1)))
        assert np.allclose(om, [0.0, 0.0, -math.sqrt(2.0)], atol=1e-12)


class TestStrain:
    def test_shear_layer_matrix(self):
        gamma, nu = 1.0, 0.5
        f = cat.make_field(FamilyId.BURGERS_SHEAR_LAYER,
                           {"gamma": gamma, "A": 1.0, "B": 0.0}, nu)
        y = 0.4
        s = kin.strain(cat.eval_jet(f, Point4(0.0, y, 0.0, 0.0)))
        yp = math.sqrt(2.0) * math.exp(-gamma * y * y / (2 * nu))
        expect = np.array([[0.0, yp / 2, 0.0],
                           [yp / 2, -gamma, 0.0],
                           [0.0, 0.0, gamma]])
        assert np.allclose(s, expect, atol=1e-14)

    def test_rigid_rotation_has_zero_strain(self):
        omega = 0.7
        jet = _jet_from_du([[0, -omega, 0], [omega, 0, 0], [0, 0, 0]])
        assert np.allclose(kin.strain(jet), 0.0)

    @pytest.mark.parametrize("fid", list(FamilyId), ids=lambda f: f.value)
    def test_trace_free_everywhere(self, fid):
        field = verify.standard_field(fid)
        rng = np.random.default_rng(list(FamilyId).index(fid) + 40)
        checked = 0
        while checked < 25:
            x, y, z = rng.uniform(-1.6, 1.6, 3)
            t = rng.uniform(0.3, 1.2)
            pt = Point4(x, abs(y) + 0.1 if fid is FamilyId.BESSEL_TRANSIENT else y,
                        z, t)
            if not cat.domain_guard(field, pt).accepted:
                continue
            s = kin.strain(cat.eval_jet(field, pt))
            assert abs(np.trace(s)) <= 1e-8 * (1.0 + np.abs(s).max())
            checked += 1


class TestDissipation:
    def test_shear_layer_closed_form(self):
        gamma, nu, A = 1.0, 0.5, 1.3
        f = cat.make_field(FamilyId.BURGERS_SHEAR_LAYER,
                           {"gamma": gamma, "A": A, "B": 0.0}, nu)
        y = -0.6
        s = kin.strain(cat.eval_jet(f, Point4(0.0, y, 0.2, 0.0)))
        yp = math.sqrt(2.0) * A * math.exp(-gamma * y * y / (2 * nu))
        assert kin.dissipation(s) == pytest.approx(2 * gamma ** 2 + 0.5 * yp ** 2,
                                                   rel=1e-12)

    def test_zero_field(self):
        assert kin.dissipation(kin.strain(_jet_from_du(np.zeros((3, 3))))) == 0.0

    def test_bessel_transient_large_y_decay_exponent(self):
        # S_ij S_ij - 2 gamma^2 should decay like y^-3: fit the exponent
        f = verify.standard_field(FamilyId.BESSEL_TRANSIENT)
        gamma = f.params["gamma"]
        ys = [4.0, 5.0, 6.5, 8.0]
        excess = []
        for y in ys:
            s = kin.strain(cat.eval_jet(f, Point4(0.0, y, 0.0, 0.5)))
            excess.append(kin.dissipation(s) - 2 * gamma ** 2)
        logs = np.log(excess)
        slope = np.polyfit(np.log(ys), logs, 1)[0]
        assert slope == pytest.approx(-3.0, abs=0.25)


class TestAlignment:
    def test_shear_layer_aligned(self):
        f = verify.standard_field(FamilyId.BURGERS_SHEAR_LAYER)
        samp = kin.alignment(cat.eval_jet(f, Point4(0.1, 0.8, -0.5, 0.2)),
                             f.characteristic_rate)
        assert samp.phi == pytest.approx(0.0, abs=1e-10)

    def test_axisym_source_angle(self):
        f = cat.make_field(FamilyId.AXISYM_SOURCE,
                           {"beta0": 0.5, "gamma0": 1.0, "a0": 0.2, "b0": 0.0},
                           nu=0.5)
        samp = kin.alignment(cat.eval_jet(f, Point4(0.9, 0.4, 0.8, 0.7)),
                             f.characteristic_rate)
        assert samp.phi == pytest.approx(math.pi / 4, abs=1e-10)

    def test_exp_saddle_on_axis(self):
        f = cat.make_field(FamilyId.EXP_SADDLE, {"A": 1.0, "k1": -0.5}, nu=0.5)
        samp = kin.alignment(cat.eval_jet(f, Point4(0.4, 1.0, 0.0, 0.0)),
                             f.characteristic_rate)
        assert samp.phi == pytest.approx(0.0, abs=1e-10)

    def test_chi_perpendicular_to_omega(self):
        f = verify.standard_field(FamilyId.AXISYM_SOURCE)
        samp = kin.alignment(cat.eval_jet(f, Point4(1.1, -0.7, 0.4, 0.8)),
                             f.characteristic_rate)
        w = np.linalg.norm(samp.omega)
        assert abs(samp.chi @ samp.omega) <= 1e-10 * np.linalg.norm(samp.chi) * w

    def test_tan_phi_consistency(self):
        f = verify.standard_field(FamilyId.AXISYM_BESSEL)
        samp = kin.alignment(cat.eval_jet(f, Point4(1.3, 0.6, -0.2, 0.4)),
                             f.characteristic_rate)
        assert math.tan(samp.phi) == pytest.approx(samp.chi_norm / samp.alpha,
                                                   rel=1e-10)

    def test_angle_equals_direct_two_vector_angle(self):
        # phi from (alpha, chi) must equal atan2(|w ^ Sw|, w . Sw)
        for fid in (FamilyId.AXISYM_SOURCE, FamilyId.EXP_SADDLE,
                    FamilyId.AXISYM_BESSEL):
            f = verify.standard_field(fid)
            rng = np.random.default_rng(17)
            done = 0
            while done < 15:
                x, y, z = rng.uniform(0.5, 1.8, 3)
                pt = Point4(x, y, z, rng.uniform(0.4, 1.2))
                if not cat.domain_guard(f, pt).accepted:
                    continue
                jet = cat.eval_jet(f, pt)
                try:
                    samp = kin.alignment(jet, f.characteristic_rate)
                except (DegenerateVorticityError, DegenerateStretchError):
                    continue
                om = samp.omega
                s_om = kin.strain(jet) @ om
                direct = math.atan2(np.linalg.norm(np.cross(om, s_om)),
                                    float(om @ s_om))
                assert samp.phi == pytest.approx(direct, abs=1e-10)
                done += 1

    def test_degenerate_errors(self):
        f = verify.standard_field(FamilyId.IRROTATIONAL_POTENTIAL)
        with pytest.raises(DegenerateVorticityError):
            kin.alignment(cat.eval_jet(f, Point4(0.5, 0.1, 0.9, 0.3)),
                          f.characteristic_rate)
        f = verify.standard_field(FamilyId.SCALE_INVARIANT)
        with pytest.raises(DegenerateStretchError):
            kin.alignment(cat.eval_jet(f, Point4(0.5, 0.1, 0.9, 0.8)),
                          f.characteristic_rate)


class TestSweep:
    def test_scale_invariant_all_degenerate_stretch(self):
        f = verify.standard_field(FamilyId.SCALE_INVARIANT)
        grid = GridSpec(Axis(-1, 1, 4), Axis(-1, 1, 4), Axis(-1, 1, 4),
                        times=(0.8,))
        rows = kin.alignment_sweep(f, grid)
        assert rows and all(r.flag == "degenerate-stretch" for r in rows)

    def test_irrotational_all_degenerate_vorticity(self):
        f = verify.standard_field(FamilyId.IRROTATIONAL_POTENTIAL)
        grid = GridSpec(Axis(-1, 1, 4), Axis(-1, 1, 4), Axis(-1, 1, 4),
                        times=(0.3,))
        rows = kin.alignment_sweep(f, grid)
        assert rows and all(r.flag == "degenerate-vorticity" for r in rows)

    def test_rejected_points_keep_reason(self):
        f = verify.standard_field(FamilyId.BESSEL_TRANSIENT)
        grid = GridSpec(Axis(-1, 1, 3), Axis(-1.0, 1.0, 5), Axis(-1, 1, 3),
                        times=(0.2,))
        rows = kin.alignment_sweep(f, grid)
        flags = {r.flag.split(":")[0] for r in rows}
        assert "rejected" in flags

    def test_exp_saddle_hyperbola_angle_law(self):
        f = cat.make_field(FamilyId.EXP_SADDLE, {"A": 1.0, "k1": -0.5}, nu=0.5)
        for theta in np.linspace(-3.0, 3.0, 25):
            y, z = math.cosh(theta), math.sinh(theta)
            samp = kin.alignment(cat.eval_jet(f, Point4(0.7, y, z, 0.0)),
                                 f.characteristic_rate)
            signed = float(samp.chi[0]) / samp.alpha
            assert signed == pytest.approx(math.sinh(2 * theta), abs=1e-8)
            assert math.tan(samp.phi) == pytest.approx(abs(math.sinh(2 * theta)),
                                                       abs=1e-8)

    def test_exp_saddle_limits_to_right_angle(self):
        # phi -> pi/2 like 1/|sinh 2 theta| as theta -> +-inf
        f = cat.make_field(FamilyId.EXP_SADDLE, {"A": 1.0, "k1": -0.5}, nu=0.5)
        for theta in (4.0, -4.0, 8.0, -8.0):
            y, z = math.cosh(theta), math.sinh(theta)
            samp = kin.alignment(cat.eval_jet(f, Point4(0.0, y, z, 0.0)),
                                 f.characteristic_rate)
            assert abs(samp.phi - math.pi / 2) <= 2.0 / abs(math.sinh(2 * theta))

    def test_axisym_source_vorticity_orthogonal_to_radius(self):
        f = verify.standard_field(FamilyId.AXISYM_SOURCE)
        rng = np.random.default_rng(9)
        for _ in range(20):
            x, y = rng.uniform(0.5, 2.0, 2)
            pt = Point4(x, y, rng.uniform(-1, 1), rng.uniform(0.5, 1.5))
            om = kin.vorticity(cat.eval_jet(f, pt))
            assert abs(om[0] * x + om[1] * y) <= 1e-10 * np.linalg.norm(om) \
                * math.hypot(x, y)


class TestRotationEquivariance:
    @pytest.mark.parametrize("gid,const", [("v6", 1.0), ("v7", 0.7), ("v8", -0.9)])
    def test_rotations_preserve_diagnostics(self, gid, const):
        f = verify.standard_field(FamilyId.BURGERS_SHEAR_LAYER)
        eps = 0.31
        el = sym.GroupElement(sym.GeneratorSpec(gid, constant=const), eps)
        pushed = sym.pushforward_field(f, el)
        pt = Point4(0.5, 0.7, -0.4, 0.2)
        mapped8 = sym.transform_point(el, sym.Point8(*pt, 0, 0, 0, 0))
        mpt = Point4(mapped8.x, mapped8.y, mapped8.z, mapped8.t)
        jet0 = cat.eval_jet(f, pt)
        jet1 = pushed.eval_jet(mpt, "finite-diff")
        s0 = kin.alignment(jet0, f.characteristic_rate)
        s1 = kin.alignment(jet1, f.characteristic_rate)
        assert s1.phi == pytest.approx(s0.phi, abs=1e-9 * (1 + abs(s0.phi)))
        d0 = kin.dissipation(kin.strain(jet0))
        d1 = kin.dissipation(kin.strain(jet1))
        assert d1 == pytest.approx(d0, rel=1e-9)
        e0 = kin.enstrophy(kin.vorticity(jet0))
        e1 = kin.enstrophy(kin.vorticity(jet1))
        assert e1 == pytest.approx(e0, rel=1e-9)
