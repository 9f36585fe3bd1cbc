import numpy as np
import pytest

from conftest import FAMILIES, sample_in_domain, spec_for

from homfinsler import (
    CoefficientBundle,
    DomainError,
    MetricSpec,
    SingularityError,
    berwald_workspace,
    catalog_get,
    coefficients_exponential,
    coefficients_generic,
    coefficients_infinite_series,
    curvature_sample,
    isotropy_test,
    mean_berwald,
    phi_family,
    s_curvature,
    s_curvature_via_tensors,
    transcription_audit,
)
from homfinsler.curvature import _factor_derivs

# Frozen oracle values, computed with exact symbolic arithmetic (generic
# coefficient definitions and the exact Hessian of S) before the build.
S_HEIS_EXP = -0.32715015237608375     # heisenberg3, exponential, y=(1,1,1)
S_HEIS_INF = 1.3076497538914102       # heisenberg3, infinite series, y=(1,1,1)
S_SOLV_EXP = 0.48347646124339894      # solvable2, exponential, y=(1,0.3)
S_SOLV_INF = 2.904119073904193        # solvable2, infinite series, y=(1,0.3)
E_SOLV_EXP = np.array([[-0.04404388189079137, 0.14681293963597122],
                       [0.14681293963597122, -0.48937646545323743]])
E_SOLV_INF = np.array([[0.1055923781171722, -0.3519745937239074],
                       [-0.3519745937239074, 1.1732486457463578]])


# ---------------------------------------------------------------------------
# coefficient bundles
# ---------------------------------------------------------------------------

class TestCoefficients:
    def test_infinite_series_spot(self):
        c = coefficients_infinite_series(2.0, 0.5, 2)
        assert c.Q == pytest.approx(0.0, abs=1e-15)
        assert c.Qp == pytest.approx(0.5)
        assert c.Qpp == pytest.approx(-0.5)
        assert c.Delta == pytest.approx(-0.875)
        assert c.Phi == pytest.approx(-2.625)
        assert c.psi == pytest.approx(0.5 / (2 * -0.875))

    def test_exponential_spot(self):
        c = coefficients_exponential(0.0, 0.6, 3)
        assert (c.Q, c.Qp, c.Qpp) == (1.0, 1.0, 2.0)
        assert c.Delta == pytest.approx(1.36)
        assert c.Phi == pytest.approx(-5.8)

    def test_exponential_b_zero(self):
        c = coefficients_exponential(0.0, 0.0, 7)
        assert c.Q == 1.0
        assert c.Delta == 1.0
        assert c.Phi == pytest.approx(-(7 + 1))

    def test_randers_generic(self):
        phi = phi_family("randers")
        for s in (-0.4, 0.0, 0.7):
            c = coefficients_generic(phi, s, 0.5, 4)
            assert c.Q == pytest.approx(1.0)
            assert c.Qp == pytest.approx(0.0, abs=1e-15)
            assert c.Qpp == pytest.approx(0.0, abs=1e-15)
            assert c.Delta == pytest.approx(1.0 + s)
            assert c.Phi == pytest.approx(-(4 + 1) * (1.0 + s))

    @pytest.mark.parametrize("family,closed,ranges", [
        ("infinite_series", coefficients_infinite_series, [(1.1, 5.0), (-2.0, -0.1)]),
        ("exponential", coefficients_exponential, [(-0.9, 0.9)]),
    ])
    def test_closed_matches_generic(self, family, closed, ranges):
        rng = np.random.default_rng(3)
        phi = phi_family(family)
        for _ in range(100):
            lo, hi = ranges[rng.integers(len(ranges))]
            s = float(rng.uniform(lo, hi))
            b = float(rng.uniform(0.05, 0.95))
            n = int(rng.integers(2, 11))
            a = closed(s, b, n)
            g = coefficients_generic(phi, s, b, n)
            for name in ("Q", "Qp", "Qpp", "Delta", "Phi"):
                av, gv = getattr(a, name), getattr(g, name)
                assert abs(av - gv) <= 1e-10 * (1.0 + abs(gv)), (name, s, b, n)

    def test_phi_identity(self):
        rng = np.random.default_rng(4)
        for _ in range(50):
            s = float(rng.uniform(1.2, 4.0))
            b = float(rng.uniform(0.1, 0.9))
            n = int(rng.integers(2, 9))
            for c in (coefficients_infinite_series(s, b, n),
                      coefficients_exponential(0.5 * b * s / 4.0, b, n)):
                assert abs(c.recompute_phi() - c.Phi) <= 1e-10 * (1.0 + abs(c.Phi))

    def test_singularities(self):
        with pytest.raises(SingularityError, match="s = 0"):
            coefficients_infinite_series(0.0, 0.5, 3)
        with pytest.raises(SingularityError, match="s = 1"):
            coefficients_exponential(1.0, 0.5, 3)
        with pytest.raises(SingularityError, match="phi - s"):
            coefficients_generic(phi_family("matsumoto"), 0.5, 0.6, 3)

    def test_psi_singularity(self):
        c = CoefficientBundle(s=1.0, b=0.5, n=2, Q=1.0, Qp=1.0, Qpp=1.0,
                              Delta=0.0, Phi=1.0)
        with pytest.raises(SingularityError, match="psi"):
            c.psi


# ---------------------------------------------------------------------------
# S-curvature
# ---------------------------------------------------------------------------

class TestSCurvature:
    def test_frozen_heisenberg_exponential(self):
        e = catalog_get("heisenberg3")
        spec = spec_for(e, "exponential")
        y = np.array([1.0, 1.0, 1.0])
        for path in ("closed_form", "generic"):
            assert s_curvature(e.model, e.v, spec, y, path=path) \
                == pytest.approx(S_HEIS_EXP, rel=1e-12)
        assert s_curvature_via_tensors(e.model, e.v, spec, y) \
            == pytest.approx(S_HEIS_EXP, rel=1e-12)

    def test_frozen_heisenberg_series(self):
        e = catalog_get("heisenberg3")
        spec = spec_for(e, "infinite_series")
        y = np.array([1.0, 1.0, 1.0])
        for path in ("closed_form", "generic"):
            assert s_curvature(e.model, e.v, spec, y, path=path) \
                == pytest.approx(S_HEIS_INF, rel=1e-12)

    def test_frozen_solvable(self):
        e = catalog_get("solvable2")
        y = np.array([1.0, 0.3])
        assert s_curvature(e.model, e.v, spec_for(e, "exponential"), y) \
            == pytest.approx(S_SOLV_EXP, rel=1e-12)
        assert s_curvature(e.model, e.v, spec_for(e, "infinite_series"), y) \
            == pytest.approx(S_SOLV_INF, rel=1e-12)

    @pytest.mark.parametrize("family", FAMILIES)
    def test_zero_at_v(self, entry, family):
        spec = spec_for(entry, family)
        vf = entry.v.frame_coords(entry.model)
        assert s_curvature(entry.model, entry.v, spec, vf) == 0.0
        assert s_curvature(entry.model, entry.v, spec, vf, path="generic") == 0.0
        assert s_curvature_via_tensors(entry.model, entry.v, spec, vf) == 0.0

    @pytest.mark.parametrize("family", FAMILIES)
    def test_abelian_any_y(self, family):
        e = catalog_get("abelian3")
        spec = spec_for(e, family)
        # includes a direction orthogonal to v (s = 0): degeneration wins
        for y in ([1.0, 0.0, 0.0], [0.2, -1.0, 0.7], [0.0, 0.0, 1.0]):
            assert s_curvature(e.model, e.v, spec, y) == 0.0

    def test_central_v_vanishes(self):
        e = catalog_get("heisenberg_central_v")
        spec = spec_for(e, "exponential")
        rng = np.random.default_rng(0)
        for _ in range(10):
            assert s_curvature(e.model, e.v, spec, rng.standard_normal(3)) == 0.0

    def test_su2_like_vanishes(self, rng):
        # [v, y] is orthogonal to both y and v for the cyclic brackets
        e = catalog_get("su2_like")
        for family in FAMILIES:
            spec = spec_for(e, family)
            for y in sample_in_domain(e, family, 10, rng):
                assert abs(s_curvature(e.model, e.v, spec, y)) <= 1e-15

    def test_zero_v_convention(self):
        from homfinsler import StructureConstants, build_model
        structure = StructureConstants.from_entries(2, {(0, 1, 1): 1.0})
        model, v = build_model(structure, 0, np.eye(2))
        spec = MetricSpec(phi_family("exponential"), 0.0)
        assert s_curvature(model, v, spec, [1.0, 2.0]) == 0.0
        assert np.array_equal(mean_berwald(model, v, spec, [1.0, 2.0]),
                              np.zeros((2, 2)))

    def test_domain_errors(self):
        e = catalog_get("solvable2")
        spec = spec_for(e, "exponential")
        with pytest.raises(DomainError, match="y = 0"):
            s_curvature(e.model, e.v, spec, [0.0, 0.0])
        with pytest.raises(ValueError, match="components"):
            s_curvature(e.model, e.v, spec, [1.0, 0.0, 0.0])
        with pytest.raises(ValueError, match="does not match"):
            s_curvature(e.model, e.v, MetricSpec(phi_family("exponential"), 0.3),
                        [1.0, 0.0])
        with pytest.raises(ValueError, match="path"):
            s_curvature(e.model, e.v, spec, [1.0, 1.0], path="nope")

    def test_series_singularity_at_orthogonal_y(self):
        e = catalog_get("solvable2")
        spec = spec_for(e, "infinite_series")
        with pytest.raises(SingularityError, match="s = 0"):
            s_curvature(e.model, e.v, spec, [1.0, 0.0])

    def test_closed_path_needs_closed_family(self):
        e = catalog_get("solvable2")
        spec = MetricSpec.for_vector(phi_family("randers"), e.v)
        with pytest.raises(ValueError, match="closed-form"):
            s_curvature(e.model, e.v, spec, [1.0, 0.5], path="closed_form")
        # generic path still works
        s_curvature(e.model, e.v, spec, [1.0, 0.5], path="generic")

    @pytest.mark.parametrize("family", FAMILIES)
    def test_three_paths_agree(self, entry, family, rng):
        spec = spec_for(entry, family)
        for y in sample_in_domain(entry, family, 50, rng):
            s_closed = s_curvature(entry.model, entry.v, spec, y)
            s_generic = s_curvature(entry.model, entry.v, spec, y, path="generic")
            s_tensors = s_curvature_via_tensors(entry.model, entry.v, spec, y)
            tol = 1e-10 * (1.0 + abs(s_generic))
            assert abs(s_closed - s_generic) <= tol
            assert abs(s_tensors - s_generic) <= tol

    @pytest.mark.parametrize("family", FAMILIES)
    def test_homogeneity(self, family, rng):
        e = catalog_get("heisenberg3")
        spec = spec_for(e, family)
        for y in sample_in_domain(e, family, 10, rng):
            s1 = s_curvature(e.model, e.v, spec, y)
            for lam in (0.5, 2.0, 10.0):
                s_lam = s_curvature(e.model, e.v, spec, lam * y)
                assert abs(s_lam - lam * s1) <= 1e-10 * (1.0 + abs(lam * s1))


# ---------------------------------------------------------------------------
# Berwald workspace and mean Berwald curvature
# ---------------------------------------------------------------------------

class TestBerwaldWorkspace:
    @pytest.mark.parametrize("family", FAMILIES)
    def test_euler_identity(self, family, rng):
        e = catalog_get("heisenberg3")
        spec = spec_for(e, family)
        for y in sample_in_domain(e, family, 20, rng):
            ws = berwald_workspace(e.model, e.v, spec, y)
            assert abs(float(ws.s_y @ y)) <= 1e-12 * (1.0 + abs(ws.s))
            assert np.max(np.abs(ws.s_yy - ws.s_yy.T)) == 0.0

    def test_s_y_vanishes_at_v(self):
        e = catalog_get("solvable2")
        spec = spec_for(e, "exponential")
        vf = e.v.frame_coords(e.model)
        ws = berwald_workspace(e.model, e.v, spec, vf)
        assert np.max(np.abs(ws.s_y)) == 0.0
        assert ws.s == e.v.b

    def test_rejects_family_without_factor(self):
        e = catalog_get("solvable2")
        spec = MetricSpec.for_vector(phi_family("randers"), e.v)
        with pytest.raises(ValueError, match="closed-form"):
            berwald_workspace(e.model, e.v, spec, [1.0, 0.5])

    @pytest.mark.parametrize("family,s_ranges", [
        # ranges keep clear of the zeros of the factor denominator at b = 0.5
        ("infinite_series", [(-2.0, -0.6), (1.3, 2.4)]),
        ("exponential", [(-0.8, 0.5)]),
    ])
    def test_factor_derivatives_match_finite_differences(self, family, s_ranges):
        # the analytic dW/ds, d2W/ds2 against Richardson differences of W
        b, n = 0.5, 3

        def w_of(s):
            return _factor_derivs(family, s, b, n)[0]

        pts = np.concatenate([np.linspace(lo, hi, 25) for lo, hi in s_ranges])
        for s in pts:
            _, dw, d2w = _factor_derivs(family, float(s), b, n)
            h = 1e-3

            def first(hh):
                return (w_of(s + hh) - w_of(s - hh)) / (2 * hh)

            def second(hh):
                return (w_of(s + hh) - 2 * w_of(s) + w_of(s - hh)) / hh**2

            fd1 = (4 * first(h / 2) - first(h)) / 3
            fd2 = (4 * second(h / 2) - second(h)) / 3
            assert abs(fd1 - dw) <= 1e-6 * (1.0 + abs(dw)), (family, s)
            assert abs(fd2 - d2w) <= 1e-6 * (1.0 + abs(d2w)), (family, s)


class TestMeanBerwald:
    def test_frozen_solvable_exponential(self):
        e = catalog_get("solvable2")
        spec = spec_for(e, "exponential")
        y = np.array([1.0, 0.3])
        e_closed = mean_berwald(e.model, e.v, spec, y, path="closed_form")
        assert np.allclose(e_closed, E_SOLV_EXP, rtol=1e-11, atol=1e-13)
        e_fd = mean_berwald(e.model, e.v, spec, y, path="finite_difference")
        assert np.max(np.abs(e_fd - E_SOLV_EXP)) <= 1e-5

    def test_frozen_solvable_series(self):
        e = catalog_get("solvable2")
        spec = spec_for(e, "infinite_series")
        y = np.array([1.0, 0.3])
        e_closed = mean_berwald(e.model, e.v, spec, y, path="closed_form")
        assert np.allclose(e_closed, E_SOLV_INF, rtol=1e-11, atol=1e-13)
        e_fd = mean_berwald(e.model, e.v, spec, y, path="finite_difference")
        assert np.max(np.abs(e_fd - E_SOLV_INF)) <= 1e-5

    @pytest.mark.parametrize("family", FAMILIES)
    @pytest.mark.parametrize(
        "name", ["abelian3", "heisenberg3", "heisenberg_central_v",
                 "solvable2", "su2_like"])
    def test_closed_vs_finite_difference(self, name, family, rng):
        e = catalog_get(name)
        spec = spec_for(e, family)
        for y in sample_in_domain(e, family, 200, rng):
            a = mean_berwald(e.model, e.v, spec, y, path="closed_form")
            f = mean_berwald(e.model, e.v, spec, y, path="finite_difference")
            scale = 1.0 + float(np.max(np.abs(a)))
            assert np.max(np.abs(a - f)) <= 1e-5 * scale, (name, family, y)

    def test_symmetry(self, rng):
        e = catalog_get("heisenberg3")
        spec = spec_for(e, "exponential")
        for y in sample_in_domain(e, "exponential", 5, rng):
            a = mean_berwald(e.model, e.v, spec, y, path="closed_form")
            assert np.max(np.abs(a - a.T)) == 0.0  # exactly symmetric terms
            f = mean_berwald(e.model, e.v, spec, y, path="finite_difference")
            assert np.max(np.abs(f - f.T)) <= 1e-9

    @pytest.mark.parametrize("family", FAMILIES)
    def test_homogeneity_degree_minus_one(self, family, rng):
        e = catalog_get("solvable2")
        spec = spec_for(e, family)
        for y in sample_in_domain(e, family, 5, rng):
            base = mean_berwald(e.model, e.v, spec, y)
            for lam in (0.5, 2.0, 10.0):
                scaled = mean_berwald(e.model, e.v, spec, lam * y)
                target = base / lam
                assert np.max(np.abs(scaled - target)) \
                    <= 1e-8 * (1.0 + np.max(np.abs(target)))

    def test_zero_cases(self):
        for name in ("abelian3", "heisenberg_central_v"):
            e = catalog_get(name)
            for family in FAMILIES:
                spec = spec_for(e, family)
                for path in ("closed_form", "finite_difference"):
                    out = mean_berwald(e.model, e.v, spec, [1.0, 0.4, -0.2], path=path)
                    assert np.array_equal(out, np.zeros((3, 3)))

    def test_bad_path(self):
        e = catalog_get("solvable2")
        spec = spec_for(e, "exponential")
        with pytest.raises(ValueError, match="path"):
            mean_berwald(e.model, e.v, spec, [1.0, 0.3], path="nope")

    def test_step_underflow(self):
        e = catalog_get("solvable2")
        spec = spec_for(e, "exponential")
        with pytest.raises(DomainError, match="underflow"):
            mean_berwald(e.model, e.v, spec, [1.0, 0.3],
                         path="finite_difference", step=-1.0)


class TestCurvatureSample:
    def test_closed_tag(self):
        e = catalog_get("solvable2")
        spec = spec_for(e, "exponential")
        sample = curvature_sample(e.model, e.v, spec, [1.0, 0.3])
        assert sample.path == "closed_form"
        assert sample.S == pytest.approx(S_SOLV_EXP, rel=1e-12)
        assert sample.E.shape == (2, 2)

    def test_oracle_tag(self):
        e = catalog_get("solvable2")
        spec = spec_for(e, "exponential")
        sample = curvature_sample(e.model, e.v, spec, [1.0, 0.3],
                                  path="finite_difference")
        assert sample.path == "finite_difference"
        assert np.max(np.abs(sample.E - E_SOLV_EXP)) <= 1e-5


# ---------------------------------------------------------------------------
# transcription audit
# ---------------------------------------------------------------------------

class TestTranscriptionAudit:
    @pytest.mark.parametrize("family", FAMILIES)
    def test_first_derivative_tables_match(self, family):
        audit = transcription_audit(family)
        assert audit.first_matches

    @pytest.mark.parametrize("family", FAMILIES)
    def test_second_derivative_tables_are_known_bad(self, family):
        # the pre-expanded second-derivative tables carry expansion slips;
        # the quotient-rule forms win (documented in the README)
        audit = transcription_audit(family)
        assert not audit.second_matches
        assert audit.max_rel_second > 1e-4


# ---------------------------------------------------------------------------
# isotropy
# ---------------------------------------------------------------------------

class TestIsotropy:
    @pytest.mark.parametrize("name", ["abelian3", "heisenberg_central_v", "su2_like"])
    @pytest.mark.parametrize("family", FAMILIES)
    def test_vanishing_spaces(self, name, family):
        e = catalog_get(name)
        report = isotropy_test(e.model, e.v, spec_for(e, family), 25)
        assert report.isotropic
        assert abs(report.c_h) <= 1e-10
        assert report.vanishing

    @pytest.mark.parametrize("name", ["solvable2", "heisenberg3"])
    @pytest.mark.parametrize("family", FAMILIES)
    def test_non_isotropic_spaces(self, name, family):
        e = catalog_get(name)
        report = isotropy_test(e.model, e.v, spec_for(e, family), 40)
        assert not report.isotropic
        assert not report.vanishing

    def test_sample_floor(self):
        e = catalog_get("heisenberg3")
        with pytest.raises(ValueError, match="n \\+ 1"):
            isotropy_test(e.model, e.v, spec_for(e, "exponential"), 3)

    def test_deterministic(self):
        e = catalog_get("solvable2")
        spec = spec_for(e, "exponential")
        r1 = isotropy_test(e.model, e.v, spec, 30, seed=5)
        r2 = isotropy_test(e.model, e.v, spec, 30, seed=5)
        assert r1 == r2
