"""Shared assertion helpers for the test suite."""

from __future__ import annotations

import math

from rfa import LcNumber, norm_phi


def assert_components(z: LcNumber, expected_re: float, expected_fu: float, tol: float = 1e-12):
    assert math.isclose(z.re, expected_re, rel_tol=tol, abs_tol=tol), (z, expected_re, expected_fu)
    assert math.isclose(z.fu, expected_fu, rel_tol=tol, abs_tol=tol), (z, expected_re, expected_fu)


def assert_matches_complex(z: LcNumber, c: complex, rel: float = 1e-12):
    scale = max(1.0, abs(c))
    assert abs(z.re - c.real) <= rel * scale, (z, c)
    assert abs(z.fu - c.imag) <= rel * scale, (z, c)


def assert_norm_close(z: LcNumber, w: LcNumber, tol: float):
    err = norm_phi(z - w)
    assert err <= tol * max(1.0, norm_phi(w)), (z, w, err)


def as_complex(z: LcNumber) -> complex:
    return complex(z.re, z.fu)
