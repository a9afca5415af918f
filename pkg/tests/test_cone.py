import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from symphorn.cone import (
    BOUNDARY,
    INSIDE,
    INVALID,
    OUTSIDE,
    TRACE,
    check_delta_sp,
    check_friedland,
    check_horn_classical,
    check_horn_sp,
    dual_involution,
    partial_sum,
)
from symphorn.horn import horn_inequalities
from symphorn.linalg import random_hermitian
from symphorn.williamson import sample_form_with_spectrum, symplectic_eigenvalues

H = {n: horn_inequalities(n) for n in range(1, 5)}


def test_partial_sum_and_dual():
    assert partial_sum((3, 2, 1), (1, 3)) == 4
    assert partial_sum((3, 2, 1), (1, 2, 3)) == 6
    assert partial_sum((5,), (1,)) == 5
    assert dual_involution((3, 1)) == (-1, -3)
    assert dual_involution((0, 0)) == (0, 0)
    assert dual_involution(dual_involution((4, 2, 1))) == (4, 2, 1)


def test_sp_examples_n1():
    r = check_horn_sp((1,), (1,), (2,), H[1])
    assert r.verdict == BOUNDARY and r.min_slack == 0.0
    r = check_horn_sp((1,), (1,), (1.9,), H[1])
    assert r.verdict == OUTSIDE and r.violated == [TRACE]
    assert check_horn_sp((1,), (1,), (3,), H[1]).verdict == INSIDE


def test_sp_example_n2():
    # x2 + y2 <= z2 holds with equality here, so the triple sits on the boundary
    r = check_horn_sp((1, 1), (1, 1), (2.5, 2), H[2])
    assert r.verdict == BOUNDARY and r.min_slack == pytest.approx(0.0)
    assert r.checked_count == 4
    assert check_horn_sp((1, 1), (1, 1), (2.5, 2.1), H[2]).verdict == INSIDE


def test_sp_invalid_inputs():
    assert check_horn_sp((1, 0), (1, 1), (3, 3), H[2]).verdict == INVALID
    assert check_horn_sp((1, 2), (1, 1), (3, 3), H[2]).verdict == INVALID
    assert check_horn_sp((1, math.nan), (1, 1), (3, 3), H[2]).verdict == INVALID
    with pytest.raises(ValueError):
        check_horn_sp((1, 1), (1,), (3, 3), H[2])
    with pytest.raises(ValueError):
        check_horn_sp((1,), (1,), (3,), H[2])


def test_classical_examples():
    assert check_horn_classical((1,), (2,), (3,), H[1]).verdict == INSIDE
    r = check_horn_classical((1,), (2,), (3.1,), H[1])
    assert r.verdict == OUTSIDE and r.violated == [TRACE]
    assert check_horn_classical((0,), (0,), (0,), H[1]).verdict == INSIDE
    # at n >= 2 the zero triple satisfies every inequality with equality
    assert check_horn_classical((0, 0), (0, 0), (0, 0), H[2]).verdict == BOUNDARY
    assert check_horn_classical((1, -1), (2, 0), (3, -1), H[2]).verdict in (INSIDE, BOUNDARY)


def test_friedland_examples():
    assert check_friedland((1,), (1,), (3,), H[1]).verdict == INSIDE
    assert check_friedland((0, 0), (0, 0), (0, 0), H[2]).verdict == BOUNDARY
    r = check_friedland((1, 0), (1, 0), (0.5, 0.5), H[2])
    assert r.verdict == OUTSIDE and TRACE in r.violated
    assert "I=1;J=2;K=1" in r.violated
    assert check_friedland((1, -2), (0, -1), (2, -1), H[2]).verdict != INVALID
    assert check_friedland((1, -2), (0, -1), (2, -1), H[2], require_nonnegative=True).verdict == INVALID


def test_delta_examples():
    assert check_delta_sp((1,), (2,), (3,), H[1]).verdict == BOUNDARY
    assert check_delta_sp((1,), (2,), (2.5,), H[1]).verdict == OUTSIDE
    a, b = (3.0, 1.0), (2.0, 0.5)
    for seed in range(20):
        q1 = sample_form_with_spectrum(a, (seed, 0))
        q2 = sample_form_with_spectrum(b, (seed, 1))
        z = symplectic_eigenvalues(q1.matrix + q2.matrix)
        assert check_delta_sp(a, b, z, H[2]).verdict != OUTSIDE


def test_report_json():
    doc = check_horn_sp((1,), (1,), (1.9,), H[1]).to_dict()
    assert doc == {"verdict": OUTSIDE, "min_slack": pytest.approx(-0.1), "violated": [TRACE], "checked": 1}
    assert check_horn_classical((1,), (2,), (3,), H[1]).to_dict()["min_slack"] is None
    assert "reason" in check_horn_sp((0,), (1,), (1,), H[1]).to_dict()


spectra = st.lists(st.floats(0.1, 10.0), min_size=3, max_size=3).map(lambda v: sorted(v, reverse=True))


@settings(max_examples=200, deadline=None)
@given(spectra, spectra, spectra, st.floats(0.1, 10.0))
def test_scale_covariance(x, y, z, t):
    r = check_horn_sp(x, y, z, H[3], tol=0.0)
    s = check_horn_sp([t * v for v in x], [t * v for v in y], [t * v for v in z], H[3], tol=0.0)
    if abs(r.min_slack) > 1e-9:
        assert r.verdict == s.verdict
    assert s.min_slack == pytest.approx(t * r.min_slack, abs=1e-9)


@settings(max_examples=200, deadline=None)
@given(spectra, spectra, spectra, st.integers(0, 2), st.floats(0.0, 5.0))
def test_raising_z_helps(x, y, z, k, bump):
    z2 = list(z)
    for i in range(k + 1):
        z2[i] += bump
    assert check_horn_sp(x, y, z2, H[3]).min_slack >= check_horn_sp(x, y, z, H[3]).min_slack - 1e-12


@pytest.mark.parametrize("n", [2, 3, 4])
def test_classical_spectra_pass_both_checks(n):
    for seed in range(200):
        a, b = random_hermitian(n, (seed, 0)), random_hermitian(n, (seed, 1))
        x, y, z = (np.linalg.eigvalsh(m)[::-1] for m in (a, b, a + b))
        assert check_horn_classical(x, y, z, H[n], tol=1e-9).verdict != OUTSIDE
        assert check_friedland(x, y, z, H[n], tol=1e-9).verdict != OUTSIDE
        # the dual of a Horn triple is again one
        dx, dy, dz = (dual_involution(v) for v in (x, y, z))
        assert check_horn_classical(dx, dy, dz, H[n], tol=1e-9).verdict != OUTSIDE
