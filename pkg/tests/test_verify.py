"""Residual referee, reduced profile equations, printed-formula audit."""

import math

import numpy as np
import pytest

from nsvl import catalog as cat
from nsvl import verify
from nsvl.catalog import FamilyId, FlowJet, FlowState, JetMode, Point4
from nsvl.errors import AllPointsRejectedError, UnsupportedFamilyError
from nsvl.gridspec import Axis, GridSpec


class _ZeroField:
    """Plumbing: quiescent fluid under constant pressure."""

    nu = 1.0
    characteristic_rate = 1.0

    def domain_guard(self, pt):
        return cat.ACCEPT

    def eval_jet(self, pt, mode=JetMode.ANALYTIC):
        return FlowJet(FlowState(0.0, 0.0, 0.0, 42.0), np.zeros((3, 3)),
                       np.zeros(3), np.zeros((3, 3)), np.zeros(3))


class _ScaledU3:
    def __init__(self, base, factor):
        self.base = base
        self.factor = factor
        self.nu = base.nu
        self.characteristic_rate = base.characteristic_rate

    def domain_guard(self, pt):
        return cat.domain_guard(self.base, pt)

    def eval_jet(self, pt, mode=JetMode.ANALYTIC):
        jet = cat.eval_jet(self.base, pt, mode)
        du = jet.du.copy()
        dudt = jet.dudt.copy()
        d2u = jet.d2u.copy()
        du[2, :] *= self.factor
        dudt[2] *= self.factor
        d2u[2, :] *= self.factor
        st = jet.state
        return FlowJet(FlowState(st.u1, st.u2, self.factor * st.u3, st.p),
                       du, dudt, d2u, jet.dp)


SMALL = GridSpec(Axis(-1.5, 1.5, 5), Axis(-1.5, 1.5, 5), Axis(-1.5, 1.5, 5),
                 times=(0.5,))


class TestNsResidual:
    def test_zero_field_exact_zero(self):
        rep = verify.ns_residual(_ZeroField(), SMALL)
        assert rep.max_mom == (0.0, 0.0, 0.0)
        assert rep.mean_mom == (0.0, 0.0, 0.0)
        assert rep.max_div == 0.0
        assert rep.n_points == SMALL.n_points
        assert rep.n_rejected == 0

    def test_burgers_vortex_standard(self):
        f = verify.standard_field(FamilyId.BURGERS_VORTEX)
        g = GridSpec(Axis(0.05, 4.0, 9), Axis(-0.5, 0.5, 3), Axis(-2, 2, 7),
                     times=(1.0,))
        rep_a = verify.ns_residual(f, g, "analytic")
        assert rep_a.max_mom_inf <= 1e-6
        rep_f = verify.ns_residual(f, g, "finite-diff")
        assert rep_f.max_mom_inf <= 1e-4

    def test_corrupted_field_detected(self):
        f = verify.standard_field(FamilyId.BURGERS_VORTEX)
        gamma = f.params["gamma"]
        z_max = 2.0
        grid = GridSpec(Axis(-1, 1, 5), Axis(-1, 1, 5), Axis(-z_max, z_max, 5),
                        times=(0.5,))
        rep = verify.ns_residual(_ScaledU3(f, 1.1), grid, "analytic")
        assert rep.max_mom_inf >= 0.05 * gamma ** 2 * z_max

    def test_report_invariants(self):
        f = verify.standard_field(FamilyId.AXISYM_SOURCE)
        grid = GridSpec(Axis(-2, 2, 7), Axis(-2, 2, 7), Axis(-1, 1, 3),
                        times=(0.8,))
        rep = verify.ns_residual(f, grid, "analytic")
        for mx, mn in zip(rep.max_mom, rep.mean_mom):
            assert mx >= mn
        assert rep.n_points + rep.n_rejected == grid.n_points
        assert rep.n_rejected == 3  # the x = y = 0 axis line (3 z values)

    def test_all_points_rejected(self):
        f = verify.standard_field(FamilyId.BURGERS_LUNDGREN)
        grid = GridSpec(Axis(-1, 1, 3), Axis(-1, 1, 3), Axis(-1, 1, 3),
                        times=(-1.0,))
        with pytest.raises(AllPointsRejectedError):
            verify.ns_residual(f, grid)

    def test_fd_residual_converges_at_design_order(self, monkeypatch):
        f = verify.standard_field(FamilyId.ERF_PRODUCT_SHEAR)
        grid = GridSpec(Axis(-0.8, 0.8, 4), Axis(-1.1, 1.1, 5),
                        Axis(-1.1, 1.1, 5), times=(0.2,))
        maxima = {}
        for scale in (4.0, 2.0, 1.0):
            monkeypatch.setattr(cat, "FD_H2_SCALE", 1e-3 * scale)
            maxima[scale] = verify.ns_residual(f, grid, "finite-diff").max_mom_inf
        # Laplacian stencil is 2nd order: halving h divides the floor by ~4
        assert maxima[4.0] / maxima[2.0] == pytest.approx(4.0, rel=0.5)
        assert maxima[2.0] / maxima[1.0] == pytest.approx(4.0, rel=0.5)

    @pytest.mark.parametrize("fid", list(FamilyId), ids=lambda f: f.value)
    def test_standard_grid_within_tolerance(self, fid):
        f = verify.standard_field(fid)
        g = verify.standard_grid(fid)
        rep = verify.ns_residual(f, g, "analytic")
        assert rep.max_mom_inf <= verify.momentum_tolerance(f, "analytic")
        assert rep.max_div <= verify.divergence_tolerance(f)


class TestReducedOde:
    def test_kummer_profiles(self):
        res = verify.reduced_ode_check(
            FamilyId.KUMMER_SHEAR,
            {"k1": 1.0, "G": 0.3, "H": 0.2, "sigma": 0.5}, nu=0.5)
        assert res["(4.9b)"] <= 1e-7
        assert res["(4.9c)"] <= 1e-7
        assert res["(4.9a)"] <= 1e-9

    def test_burgers_profile(self):
        res = verify.reduced_ode_check(FamilyId.BURGERS_VORTEX, nu=0.25)
        assert res["(4.75)"] <= 1e-8

    def test_burgers_profile_with_secondary_branch(self):
        res = verify.reduced_ode_check(FamilyId.BURGERS_VORTEX,
                                       {"gamma": 1.0, "f0": 1.0, "f1": 0.4},
                                       nu=0.25)
        assert res["(4.75)"] <= 1e-8

    def test_time_dependent_profiles(self):
        res = verify.reduced_ode_check(FamilyId.BURGERS_LUNDGREN, nu=0.25)
        assert res["(4.82)"] <= 1e-6
        res = verify.reduced_ode_check(FamilyId.SECH_VORTEX, nu=0.25)
        assert res["(4.82)"] <= 1e-6

    def test_axisym_bessel_profile(self):
        res = verify.reduced_ode_check(FamilyId.AXISYM_BESSEL, nu=0.25)
        assert res["(4.66b)"] <= 1e-7

    def test_refinement_shrinks_residual(self):
        coarse = verify.reduced_ode_check(FamilyId.BURGERS_LUNDGREN, nu=0.25,
                                          fd_scale=32.0)["(4.82)"]
        fine = verify.reduced_ode_check(FamilyId.BURGERS_LUNDGREN, nu=0.25,
                                        fd_scale=8.0)["(4.82)"]
        assert fine < coarse / 20.0

    def test_unsupported_family(self):
        with pytest.raises(UnsupportedFamilyError):
            verify.reduced_ode_check(FamilyId.EXP_SADDLE)


class TestFormulaAudit:
    def test_burgers_vortex_printed_form_exact(self):
        entries = verify.vorticity_formula_audit(FamilyId.BURGERS_VORTEX)
        e = next(x for x in entries if x["formula"] == "(4.79)")
        assert e["status"] == "match"
        assert e["max_dev"] <= 1e-9

    def test_lundgren_discrepancy_factor(self):
        entries = verify.vorticity_formula_audit(FamilyId.BURGERS_LUNDGREN)
        e = next(x for x in entries if x["formula"] == "(4.84)")
        assert e["status"] == "discrepancy"
        assert e["correction_factor"] == pytest.approx(1.0 / math.e, rel=1e-9)
        assert e["max_dev_corrected"] <= 1e-8

    def test_shear_layer_prefactor(self):
        entries = verify.vorticity_formula_audit(FamilyId.BURGERS_SHEAR_LAYER)
        e = entries[0]
        assert e["status"] == "discrepancy"
        # printed -A sqrt(2 nu / gamma) vs recomputed -sqrt(2) A:
        # the measured factor is sqrt(gamma / nu)
        assert e["correction_factor"] == pytest.approx(
            math.sqrt(1.0 / 0.5), rel=1e-9)
        assert e["max_dev_corrected"] <= 1e-12

    def test_exp_saddle_angle_formula(self):
        entries = verify.vorticity_formula_audit(FamilyId.EXP_SADDLE)
        angle = next(x for x in entries if x["formula"] == "(4.21)")
        assert angle["status"] == "discrepancy"
        assert angle["max_dev"] > 0.1          # printed 2xy form fails
        assert angle["max_dev_corrected"] <= 1e-9
        curl = next(x for x in entries if x["formula"] == "(4.20a)-(4.20b)")
        assert curl["status"] == "match"

    def test_axisym_source_match(self):
        entries = verify.vorticity_formula_audit(FamilyId.AXISYM_SOURCE)
        assert entries[0]["status"] == "match"
        assert entries[0]["max_dev"] <= 1e-9

    def test_bessel_transient_fitted_prefactor(self):
        entries = verify.vorticity_formula_audit(FamilyId.BESSEL_TRANSIENT)
        e = entries[0]
        assert e["correction_factor"] == pytest.approx(e["expected_factor"],
                                                       rel=1e-9)
        assert e["max_dev_corrected"] <= 1e-10


def test_standard_grid_shapes():
    for fid in FamilyId:
        g = verify.standard_grid(fid)
        assert g.dims == (17, 17, 17)
        assert len(g.times) == 2
