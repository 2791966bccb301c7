"""Shared fixtures: the three canonical families and ready-made contexts."""

from __future__ import annotations

from fractions import Fraction

import pytest

from cantorleb import (
    GammaSequence,
    GeometricAlpha,
    GeometricBeta,
    JuliaDescriptor,
    make_context,
)


@pytest.fixture(scope="session")
def third() -> GeometricBeta:
    """The classical ternary set K_{1/3}."""
    return GeometricBeta(Fraction(1, 3))


@pytest.fixture(scope="session")
def ksq() -> GeometricAlpha:
    """The canonical small set: l_{s+1} = l_s^2 with l_1 = 1/3."""
    return GeometricAlpha(alpha=Fraction(2), ell1=Fraction(1, 3))


@pytest.fixture(scope="session")
def gamma() -> GammaSequence:
    """gamma_k = 2^-(k-1)/32, the worked equilibrium example."""
    return GammaSequence.geometric(Fraction(1, 32), Fraction(1, 2))


@pytest.fixture(scope="session")
def julia_desc(gamma) -> JuliaDescriptor:
    return JuliaDescriptor(gamma)


@pytest.fixture(scope="session")
def ctx_third(third):
    """Context sized for endpoint work on K_{1/3} down to level ~10."""
    return make_context(third, 10, 2**9)
