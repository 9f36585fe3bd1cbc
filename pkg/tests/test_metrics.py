import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homfinsler import (
    DomainError,
    MetricSpec,
    PhiFamily,
    catalog_get,
    finsler_norm,
    phi_family,
    shen_check,
)

ALL_FAMILIES = ("randers", "kropina", "matsumoto", "infinite_series", "exponential")

# interior sampling intervals avoiding each family's poles
_SAMPLE_RANGES = {
    "randers": [(-0.9, 3.0)],
    "kropina": [(0.15, 3.0)],
    "matsumoto": [(-2.0, 0.85)],
    "infinite_series": [(-3.0, -0.2), (1.2, 4.0)],
    "exponential": [(-2.0, 2.0)],
}


def _sample_points(family, count=50):
    ranges = _SAMPLE_RANGES[family]
    per = count // len(ranges) + 1
    pts = np.concatenate([np.linspace(lo, hi, per) for lo, hi in ranges])
    return pts[:count]


# poles of each profile; the finite-difference step shrinks near them to
# keep the truncation error (driven by higher derivatives) under control
_POLES = {
    "randers": (),
    "kropina": (0.0,),
    "matsumoto": (1.0,),
    "infinite_series": (1.0,),
    "exponential": (),
}


def _step(family, s):
    dist = min((abs(s - p) for p in _POLES[family]), default=4.0)
    return min(0.005 * dist, 0.02)


def _richardson_d1(f, s, h):
    def d(hh):
        return (f(s + hh) - f(s - hh)) / (2.0 * hh)
    return (4.0 * d(h / 2.0) - d(h)) / 3.0


def _richardson_d2(f, s, h):
    def d(hh):
        return (f(s + hh) - 2.0 * f(s) + f(s - hh)) / hh**2
    return (4.0 * d(h / 2.0) - d(h)) / 3.0


def _richardson_d3(f, s, h):
    def d(hh):
        return (f(s + 2 * hh) - 2 * f(s + hh) + 2 * f(s - hh) - f(s - 2 * hh)) / (2 * hh**3)
    return (4.0 * d(h / 2.0) - d(h)) / 3.0


class TestPhiFamilies:
    def test_spot_values(self):
        assert phi_family("infinite_series").phi(2.0) == pytest.approx(4.0)
        assert phi_family("exponential").phi(0.0) == 1.0
        assert phi_family("randers").phi(0.25) == 1.25
        assert phi_family("kropina").phi(0.5) == 2.0
        assert phi_family("matsumoto").phi(0.5) == 2.0

    def test_unknown_family(self):
        with pytest.raises(KeyError, match="built-ins"):
            phi_family("nope")

    @pytest.mark.parametrize("family", ALL_FAMILIES)
    def test_derivatives_match_finite_differences(self, family):
        phi = phi_family(family)
        for s in _sample_points(family):
            h = _step(family, s)
            for analytic, fd in ((phi.dphi, _richardson_d1),
                                 (phi.d2phi, _richardson_d2),
                                 (phi.d3phi, _richardson_d3)):
                a = analytic(s)
                approx = fd(phi.phi, s, h)
                assert abs(approx - a) <= 1e-7 * (1.0 + abs(a)), (family, s)

    def test_polynomial_family_matches_randers(self):
        poly = PhiFamily.polynomial([1.0, 1.0])
        randers = phi_family("randers")
        for s in np.linspace(-0.9, 2.0, 20):
            assert poly.phi(s) == pytest.approx(randers.phi(s))
            assert poly.dphi(s) == pytest.approx(randers.dphi(s))
            assert poly.d2phi(s) == 0.0
            assert poly.d3phi(s) == 0.0
        assert poly.in_domain(0.5)
        assert not poly.in_domain(-2.0)  # phi < 0 there

    def test_polynomial_rejects_empty(self):
        with pytest.raises(ValueError):
            PhiFamily.polynomial([])

    def test_custom_requires_no_autodiff(self):
        fam = PhiFamily.custom(lambda s: 1.0, lambda s: 0.0,
                               lambda s: 0.0, lambda s: 0.0)
        assert fam.phi(3.0) == 1.0
        assert fam.in_domain(123.0)


class TestMetricSpec:
    def test_for_vector_uses_v_length(self):
        entry = catalog_get("solvable2")
        spec = MetricSpec.for_vector(phi_family("randers"), entry.v)
        assert spec.b == 0.5

    def test_for_vector_rejects_long_v(self):
        entry = catalog_get("solvable2")

        class FakeV:
            b = 1.2

        with pytest.raises(ValueError, match="< 1"):
            MetricSpec.for_vector(phi_family("randers"), FakeV())
        del entry

    def test_negative_b_rejected(self):
        with pytest.raises(ValueError):
            MetricSpec(phi_family("randers"), -0.1)


class TestFinslerNorm:
    def test_spot_values(self):
        assert finsler_norm(MetricSpec(phi_family("exponential"), 0.5), 1.0, 0.0) == 1.0
        assert finsler_norm(MetricSpec(phi_family("randers"), 0.5), 2.0, 0.5) == 2.5
        assert finsler_norm(MetricSpec(phi_family("infinite_series"), 0.5), 1.0, 2.0) \
            == pytest.approx(4.0)

    def test_domain_errors(self):
        spec = MetricSpec(phi_family("infinite_series"), 0.5)
        with pytest.raises(DomainError, match="outside domain"):
            finsler_norm(spec, 1.0, 0.5)  # s in (0, 1): phi < 0
        with pytest.raises(DomainError, match="alpha"):
            finsler_norm(spec, 0.0, 2.0)

    @settings(deadline=None, max_examples=100)
    @given(lam=st.floats(1e-3, 1e3), alpha=st.floats(0.1, 10.0),
           ratio=st.floats(-0.89, 0.89))
    @pytest.mark.parametrize("family", ["randers", "exponential"])
    def test_homogeneity(self, family, lam, alpha, ratio):
        spec = MetricSpec(phi_family(family), 0.9)
        beta = ratio * alpha
        f1 = finsler_norm(spec, lam * alpha, lam * beta)
        f0 = finsler_norm(spec, alpha, beta)
        assert abs(f1 - lam * f0) <= 1e-12 * max(1.0, abs(lam * f0))


class TestShenCheck:
    @pytest.mark.parametrize("b", [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9])
    def test_randers_always_holds(self, b):
        report = shen_check(MetricSpec(phi_family("randers"), b))
        assert report.holds
        assert report.min_value == pytest.approx(1.0, abs=1e-14)

    def test_exponential_b_half(self):
        report = shen_check(MetricSpec(phi_family("exponential"), 0.5))
        assert report.holds
        # the expression e^s (1 - s + b^2 - s^2) is minimized at the s = b endpoint
        assert report.argmin_s == pytest.approx(0.5)
        assert report.min_value == pytest.approx(0.5 * math.exp(0.5), rel=1e-12)

    def test_infinite_series_fails_at_zero(self):
        spec = MetricSpec(phi_family("infinite_series"), 0.5)
        coarse = shen_check(spec, samples=3)  # grid {-b, 0, b}
        assert not coarse.holds
        assert coarse.argmin_s == 0.0
        assert coarse.min_value == pytest.approx(-2 * 0.5**2, abs=1e-12)
        fine = shen_check(spec, samples=201)
        assert not fine.holds
        assert fine.min_value < 0.0

    def test_kropina_singularity_recorded_not_raised(self):
        report = shen_check(MetricSpec(phi_family("kropina"), 0.3))
        assert not report.holds
        assert 0.0 in report.singular_points

    def test_sample_floor(self):
        with pytest.raises(ValueError):
            shen_check(MetricSpec(phi_family("randers"), 0.5), samples=2)
