"""Shared fixtures: random Schroeder symbols and the acceptance summary."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import strategies as st

from schroeder.symbol import RationalMap, conjugate_by_involution

ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


def record_acceptance(number: int, ok: bool, detail: str):
    ACCEPTANCE_RESULTS[number] = (bool(ok), detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


def blaschke_symbol(t: complex, zeros, c: complex = 0.0) -> RationalMap:
    """``psi_c o B o psi_c`` with ``B(z) = t z prod (z + b)/(1 + conj(b) z)``.

    ``B`` fixes 0 with multiplier ``t prod b`` and ``|B| <= |t| < 1`` on the
    circle, so the result is a Schroeder map fixing ``c``.
    """
    num = np.array([0.0, t], dtype=np.complex128)
    den = np.array([1.0], dtype=np.complex128)
    for b in zeros:
        num = np.convolve(num, [b, 1.0])
        den = np.convolve(den, [1.0, np.conj(b)])
    return conjugate_by_involution(RationalMap(num, den), c)


def random_schroeder(rng: np.random.Generator, lam_range=(0.2, 0.6), alpha_max=0.3,
                     degree: int | None = None) -> RationalMap:
    """Random Schroeder map of degree 2 or 3 with ``|lambda_1|`` in ``lam_range``."""
    degree = degree or int(rng.integers(2, 4))
    k = degree - 1
    lam_abs = rng.uniform(*lam_range)
    t_abs = rng.uniform(max(lam_abs, 0.7), 0.95)
    # zeros with prod |b| = lam_abs / t_abs
    target = lam_abs / t_abs
    mags = np.full(k, target ** (1.0 / k))
    zeros = mags * np.exp(2j * np.pi * rng.uniform(size=k))
    t = t_abs * np.exp(2j * np.pi * rng.uniform())
    c = alpha_max * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
    return blaschke_symbol(t, zeros, c)


def random_rational_function(rng: np.random.Generator):
    """Random rational function holomorphic on a neighbourhood of the closed disc."""
    from schroeder.functions import RationalFunction
    num = rng.normal(size=3) + 1j * rng.normal(size=3)
    pole = rng.uniform(1.3, 2.5) * np.exp(2j * np.pi * rng.uniform())
    return RationalFunction(num, [1.0, -1.0 / pole])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@st.composite
def schroeder_symbols(draw, lam_range=(0.2, 0.6), alpha_max=0.3):
    seed = draw(st.integers(0, 2 ** 32 - 1))
    return random_schroeder(np.random.default_rng(seed), lam_range, alpha_max)


EXAMPLE_A = RationalMap([0, 1], [2, -1])            # z/(2-z)
EXAMPLE_B = RationalMap([0, 0.5, 1], [1, 0.5])      # z(z+1/2)/(1+z/2)
HALF = RationalMap([0, 0.5])                         # z/2
