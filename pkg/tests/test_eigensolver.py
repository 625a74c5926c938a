"""Eigensolver machinery: shooting integration, wall-condition root search,
normalization, the integrator selfcheck, and the comparison harness.

The physical outcome for valid parameter sets is an empty spectrum below
-v_inf (the effective potential never dips under the asymptotic depth on the
domain), so the root-search plumbing is additionally exercised on synthetic
mismatch functions with known zeros.
"""

import math

import numpy as np
import pytest

from dipolewell import eigensolver as es
from dipolewell.errors import (
    DegenerateSolutionError,
    ImaginaryTauError,
    RegimeError,
    WindowError,
)
from dipolewell.model import SystemParams, derived, energy_tau
from dipolewell.rootfind import bisect, sign_change_brackets
from dipolewell.specfun import whittaker_w_imag_scaled

UNIT0 = SystemParams(m=1.0, alpha=1.0, rho0=1.0, r0=1.0, ell=0)
UNIT1 = SystemParams(m=1.0, alpha=1.0, rho0=1.0, r0=1.0, ell=1)
WINDOW = (-50.0, -1.0001)


class TestShoot:
    def test_seed_matches_leading_decay(self):
        # g(r_max) = e^{-tau r_max} (2 tau r_max)^{-kappa - 1/2}
        sol = es.shoot(UNIT1, -3.0, steps=2000)
        et = energy_tau(UNIT1, -3.0)
        r_max = es.default_r_max(UNIT1, et.tau)
        seed = math.exp(-et.tau * r_max) * (2.0 * et.tau * r_max) ** (-et.kappa - 0.5)
        assert sol.values[-1] * math.exp(sol.log_scale) == pytest.approx(seed, rel=1e-12)
        assert sol.grid[0] == UNIT1.r0
        assert sol.grid[-1] == pytest.approx(r_max, rel=1e-15)

    def test_profile_matches_whittaker_up_to_scale(self):
        # interior values agree with W(2 tau r)/sqrt(2 tau r) to one global factor
        sol = es.shoot(UNIT1, -3.0, steps=20000)
        tau, kappa, nu = 2.0, 1.0, 1.0
        ratios = []
        for r_target in (1.5, 2.0, 3.0, 5.0, 8.0):
            i = int(np.argmin(np.abs(sol.grid - r_target)))
            x = 2.0 * tau * float(sol.grid[i])
            man, ex = whittaker_w_imag_scaled(-kappa, nu, x)
            ratios.append(float(sol.values[i]) / (man * math.exp(ex) / math.sqrt(x)))
        spread = max(ratios) / min(ratios) - 1.0
        assert abs(spread) <= 1e-6

    def test_step_halving_convergence(self):
        a = es.shoot(UNIT1, -3.0, steps=4000).mismatch()
        b = es.shoot(UNIT1, -3.0, steps=8000).mismatch()
        assert abs(b - a) <= 1e-8 * abs(b)

    def test_observed_order_is_four(self):
        g1 = es.shoot(UNIT1, -2.2, steps=1000).mismatch()
        g2 = es.shoot(UNIT1, -2.2, steps=2000).mismatch()
        g3 = es.shoot(UNIT1, -2.2, steps=4000).mismatch()
        order = math.log2(abs((g1 - g2) / (g2 - g3)))
        assert abs(order - 4.0) <= 0.3

    def test_non_bound_energy_rejected(self):
        with pytest.raises(ImaginaryTauError):
            es.shoot(UNIT1, -0.5)

    def test_seed_distance_guard(self):
        with pytest.raises(ValueError):
            es.shoot(UNIT1, -3.0, r_max=2.0)

    def test_steps_guard(self):
        with pytest.raises(ValueError):
            es.shoot(UNIT1, -3.0, steps=500)

    def test_deep_energy_rescaling_path(self):
        # tau r_max = 25 with large kappa: the sweep spans hundreds of orders
        # of magnitude; values must stay finite and the tail must underflow
        # to zero harmlessly in the common scale
        sol = es.shoot(UNIT1, -1.001, steps=4000)
        assert np.all(np.isfinite(sol.values))
        assert abs(sol.values[0]) > 0.0
        assert sol.norm > 0.0

    def test_outer_tail_decays(self):
        sol = es.shoot(UNIT1, -3.0, steps=4000)
        n = len(sol.values)
        tail = np.abs(sol.values[int(0.9 * n):])
        assert tail.max() <= 1e-6 * np.abs(sol.values).max()


class TestNormalize:
    def test_unit_norm(self):
        sol = es.normalize(es.shoot(UNIT1, -3.0, steps=4000))
        assert abs(sol.norm - 1.0) <= 1e-8

    def test_idempotent(self):
        sol = es.normalize(es.shoot(UNIT1, -3.0, steps=4000))
        again = es.normalize(sol)
        assert np.max(np.abs(again.values - sol.values)) <= 1e-12

    def test_scale_invariance(self):
        import dataclasses

        sol = es.shoot(UNIT1, -3.0, steps=4000)
        scaled = dataclasses.replace(
            sol, values=sol.values * 7.0, norm=es._grid_norm(sol.grid, sol.values * 7.0)
        )
        a = es.normalize(sol)
        b = es.normalize(scaled)
        assert np.max(np.abs(a.values - b.values)) <= 1e-12 * np.max(np.abs(a.values))

    def test_zero_norm_rejected(self):
        import dataclasses

        sol = es.shoot(UNIT1, -3.0, steps=4000)
        dead = dataclasses.replace(sol, values=sol.values * 0.0, norm=0.0)
        with pytest.raises(DegenerateSolutionError):
            es.normalize(dead)


class TestNodeCount:
    def test_sign_changes(self):
        assert es._count_nodes(np.array([1.0, 2.0, -1.0, -2.0, 3.0])) == 2
        assert es._count_nodes(np.array([1.0, 0.0, 2.0])) == 0
        assert es._count_nodes(np.array([1.0, 0.0, -2.0])) == 1
        assert es._count_nodes(np.array([0.0, 0.0, 0.0])) == 0


class TestRootMachinery:
    def test_brackets_and_bisect_on_cosine(self):
        xs = np.linspace(0.0, 10.0, 400)
        vals = [math.cos(x) for x in xs]
        idx = sign_change_brackets(vals, xs)
        roots = [bisect(math.cos, xs[i], xs[i + 1], 1e-14) for i in idx]
        expected = [math.pi / 2 + k * math.pi for k in range(3)]
        assert len(roots) == 3
        for r, e in zip(roots, expected):
            assert r == pytest.approx(e, rel=1e-12)

    def test_bisect_rejects_unbracketed(self):
        with pytest.raises(ValueError):
            bisect(math.cos, 0.1, 0.2, 1e-12)

    def test_scan_driver_finds_synthetic_roots(self):
        # a fabricated mismatch oscillating in ln tau with known zeros
        zeros_tau = [math.exp((0.5 * math.pi + k * math.pi) / 3.0) for k in range(-4, 2)]

        def mismatch(tau):
            return math.cos(3.0 * math.log(tau))

        found = es._scan_mismatch(UNIT0, WINDOW, 16, mismatch, 1e-12)
        d = derived(UNIT0)
        tau_lo = energy_tau(UNIT0, WINDOW[1]).tau
        tau_hi = energy_tau(UNIT0, WINDOW[0]).tau
        expected = sorted(
            -t * t / (2.0 * UNIT0.m) - d.v_inf for t in zeros_tau if tau_lo < t < tau_hi
        )
        assert len(found) == len(expected) > 0
        for f, e in zip(found, expected):
            assert f == pytest.approx(e, rel=1e-11)

    def test_max_count_truncates(self):
        def mismatch(tau):
            return math.cos(8.0 * math.log(tau))

        found = es._scan_mismatch(UNIT0, WINDOW, 3, mismatch, 1e-12)
        assert len(found) == 3


class TestEigenvalueSearches:
    def test_window_validation(self):
        with pytest.raises(WindowError):
            es.wroot_eigenvalues(UNIT0, (-50.0, -0.5))
        with pytest.raises(WindowError):
            es.wroot_eigenvalues(UNIT0, (-1.5, -3.0))

    def test_regime_validation(self):
        bad = SystemParams(m=1.0, alpha=1.0, rho0=1.0, r0=1.0, ell=2)
        with pytest.raises(RegimeError):
            es.wroot_eigenvalues(bad, WINDOW)
        with pytest.raises(RegimeError):
            es.shooting_eigenvalues(bad, WINDOW)

    @pytest.mark.parametrize("params", [UNIT0, UNIT1], ids=["ell0", "ell1"])
    def test_both_solvers_empty_on_physical_sets(self, params):
        # the adjudication result: no bound state below -v_inf exists; both
        # independent solvers must agree on emptiness in the shared window
        wroots = es.wroot_eigenvalues(params, WINDOW)
        shoots = es.shooting_eigenvalues(params, WINDOW, steps=1000)
        assert wroots == []
        assert shoots == []

    def test_wall_condition_is_single_signed(self):
        # F(E) = W_{-kappa, i nu}(2 tau r0) never crosses zero over the window
        d = derived(UNIT1)
        taus = np.geomspace(0.02, 12.0, 300)
        signs = set()
        for tau in taus:
            man, _ = whittaker_w_imag_scaled(-d.delta / (2 * tau), d.nu, 2 * tau * UNIT1.r0)
            signs.add(math.copysign(1.0, man))
        assert signs == {1.0}


class TestDomainAndMeasure:
    def test_solver_never_calls_the_potential(self, monkeypatch):
        # the sweep receives closed-form coefficients; the potential function
        # (with its forbidden-region guard) must never be invoked
        import dipolewell.model as model

        def bomb(params, r):
            raise AssertionError("potential_energy called from the solver")

        monkeypatch.setattr(model, "potential_energy", bomb)
        sol = es.shoot(UNIT1, -3.0, steps=1000)
        assert sol.grid[0] == UNIT1.r0

    def test_inner_product_measure_detects_overlap(self):
        # the orthogonality contract for eigenfunction pairs uses the
        # integral of g_i g_j r dr; with the physical spectrum empty, verify
        # the measure itself on functions with known overlaps
        grid = np.linspace(1.0, 21.0, 4001)
        u = np.sin(math.pi * (grid - 1.0) / 20.0) / np.sqrt(grid)
        v = np.sin(2.0 * math.pi * (grid - 1.0) / 20.0) / np.sqrt(grid)
        from scipy.integrate import simpson

        cross = float(simpson(u * v * grid, x=grid))
        self_u = float(simpson(u * u * grid, x=grid))
        assert abs(cross) <= 1e-9
        assert self_u == pytest.approx(10.0, rel=1e-8)


class TestSelfcheck:
    def test_passes_threshold(self):
        rep = es.integrator_selfcheck()
        assert rep.passed
        for row in rep.rows:
            assert row.max_dev_w <= rep.threshold
            assert row.max_dev_m <= rep.threshold
        bessel_rows = [r for r in rep.rows if r.max_dev_bessel is not None]
        assert bessel_rows and all(r.max_dev_bessel <= rep.threshold for r in bessel_rows)

    def test_deterministic(self):
        assert es.integrator_selfcheck() == es.integrator_selfcheck()


class TestCompare:
    def test_report_on_unit_params(self):
        rep = es.compare(UNIT0, 4, WINDOW, steps=1000)
        assert rep.summary.n_analytic == 4
        assert rep.summary.n_formula_valid == 0
        assert rep.summary.n_wroot == 0
        assert rep.summary.n_shoot == 0
        assert not rep.summary.bound_state_found
        assert any("no bound states found in window" in n for n in rep.summary.notes)
        assert any("not reproduced" in n for n in rep.summary.notes)
        analytic_rows = [r for r in rep.rows if r.n is not None]
        assert len(analytic_rows) == 4
        for row in analytic_rows:
            assert "formula-invalid" in row.flags
            assert row.e_wroot is None and row.e_shoot is None

    def test_summary_text_renders(self):
        rep = es.compare(UNIT1, 2, WINDOW, steps=1000)
        text = rep.summary.text()
        assert "no bound states found in window" in text
        assert "accumulation" in text

    def test_regime_error(self):
        bad = SystemParams(m=1.0, alpha=1.0, rho0=1.0, r0=1.0, ell=3)
        with pytest.raises(RegimeError):
            es.compare(bad, 3, WINDOW)


class TestDefaultWindow:
    def test_brackets_analytic_levels(self):
        from dipolewell.spectrum import accumulation_energy, energy_level

        lo, hi = es.default_window(UNIT0)
        d = derived(UNIT0)
        assert lo < hi < -d.v_inf
        assert lo < accumulation_energy(UNIT0)
        assert energy_level(UNIT0, 1).energy < hi
