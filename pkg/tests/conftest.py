"""Shared helpers: catalog access and in-domain tangent-vector sampling."""

import numpy as np
import pytest

from homfinsler import MetricSpec, catalog_get, catalog_names, phi_family

FAMILIES = ("infinite_series", "exponential")


def spec_for(entry, family):
    return MetricSpec.for_vector(phi_family(family), entry.v)


def closed_delta(family, s, b):
    """Delta as a function of s alone, used for in-domain rejection."""
    if family == "infinite_series":
        return (s**3 - 3.0 * s**2 + 2.0 * b * b) / s**2 if s != 0.0 else 0.0
    return (1.0 + b * b - s * s - s) / (1.0 - s) ** 2


def sample_in_domain(entry, family, count, rng, scale=(0.6, 1.8)):
    """Random tangent vectors keeping s and Delta away from singular loci."""
    n = entry.model.m_dim
    b = entry.v.b
    out = []
    while len(out) < count:
        y = rng.standard_normal(n)
        nrm = float(np.linalg.norm(y))
        if nrm < 1e-9:
            continue
        y = y / nrm * rng.uniform(*scale)
        s = entry.v.c * float(y[-1]) / float(np.linalg.norm(y))
        if family == "infinite_series" and abs(s) < 0.05:
            continue
        if family == "exponential" and abs(1.0 - s) < 0.05:
            continue
        if abs(closed_delta(family, s, b)) < 0.05:
            continue
        out.append(y)
    return np.array(out)


@pytest.fixture(params=sorted(catalog_names()))
def entry(request):
    return catalog_get(request.param)


@pytest.fixture
def rng():
    return np.random.default_rng(20240 + 17)
