import csv
import io
import math

import numpy as np
import pytest

from monogenic_chain.clifford import CliffordContext, HalfSpacePoint
from monogenic_chain.constants import sphere_area
from monogenic_chain.distributions import boundary_value, evaluate_function
from monogenic_chain.errors import DomainError, UnsupportedRequest
from monogenic_chain.harness import (
    CSV_COLUMNS,
    GridSpec,
    boundary_limit_study,
    check_chain_step,
    check_harmonic,
    check_homogeneity,
    check_monogenic,
    check_rotation,
    function_components,
    poisson_quadrature_check,
    radial_bump,
    reports_to_csv,
    sample_points,
)

SAMPLE3 = sample_points(3, 60, seed=0)


def test_sampling_is_seeded_and_in_range():
    a, b = sample_points(3, 20, seed=7), sample_points(3, 20, seed=7)
    assert a == b
    assert all(1 <= p.x0 <= 2 and max(abs(v) for v in p.x_vec) <= 1 for p in a)
    assert sample_points(3, 20, seed=8) != a


@pytest.mark.parametrize("n", [-1, 0])
def test_monogenic_examples(n):
    rep = check_monogenic(n, 3, sample_points(3, 200, seed=0), h=1e-4)
    assert rep.passed and rep.residual < 1e-6
    assert abs(rep.order - 2) < 0.3
    assert len(rep.levels) == 3


def test_constant_kernel_is_exactly_monogenic():
    const = CliffordContext(3).scalar(1.7)
    rep = check_monogenic(None, 3, SAMPLE3, kernel=lambda p: const)
    assert rep.residual < 1e-12


@pytest.mark.parametrize("n, m", [(-1, 3), (1, 3), (2, 4)])
def test_chain_step(n, m):
    rep = check_chain_step(n, m, sample_points(m, 60))
    assert rep.passed
    assert set(rep.components) == {"d0A=A_prev", "-dxA=B_prev", "d0B=B_prev", "-dxB=A_prev"}
    assert abs(rep.order - 2) < 0.3


def test_chain_step_beyond_closed_forms():
    with pytest.raises(UnsupportedRequest):
        check_chain_step(3, 5, sample_points(5, 4))


def test_invalid_samples():
    with pytest.raises(DomainError):
        check_monogenic(-1, 3, [HalfSpacePoint(1e-3, (0.1, 0.0, 0.0))])
    with pytest.raises(DomainError):
        check_monogenic(-1, 3, sample_points(4, 3))
    with pytest.raises(DomainError):
        check_monogenic(-1, 3, [])


@pytest.mark.parametrize("n", range(-4, 3))
def test_harmonic_homogeneous_and_rotation_invariant(n):
    m = 3 if n < 2 else 4
    sample = sample_points(m, 20)
    assert check_harmonic(n, m, sample).passed
    hom = check_homogeneity(n, m, sample)
    assert hom.passed and hom.note == f"degree {n - m + 1}"
    assert check_rotation(n, m, sample).passed


def test_boundary_limits():
    rep = boundary_limit_study(0, 3, [1.0, 0.0, 0.0])
    assert rep.passed and abs(rep.order - 1) < 0.1
    rep = boundary_limit_study(1, 4, [0.0, 1.0, 0.0, 0.0])
    assert rep.passed
    rep = boundary_limit_study(-2, 3, [0.0, 0.0, 1.0], components="A")
    assert rep.passed and rep.note == "components A"
    # the pointwise limit of A_{-2} at |x| = 1 is 2 / sigma_4
    limit, _ = evaluate_function(boundary_value(-2, 3)[0], np.array([0.0, 0.0, 1.0]))
    assert limit == pytest.approx(2 / float(sphere_area(4)), rel=1e-14)


def test_delta_type_limits_are_refused():
    assert function_components(-1, 3) == "B"
    assert function_components(-2, 3) == "A"
    assert function_components(0, 3) == "AB"
    with pytest.raises(UnsupportedRequest, match="a_-1"):
        boundary_limit_study(-1, 3, [1.0, 0.0, 0.0])
    with pytest.raises(UnsupportedRequest, match="b_-2"):
        boundary_limit_study(-2, 3, [1.0, 0.0, 0.0])
    assert boundary_limit_study(-1, 3, [1.0, 0.0, 0.0], components="B").passed
    with pytest.raises(DomainError):
        boundary_limit_study(0, 3, [0.0, 0.0, 0.0])


def test_poisson_quadrature_bump():
    rep = poisson_quadrature_check()
    assert rep.passed
    errors = [e for _, e in rep.levels]
    assert errors == sorted(errors, reverse=True)
    assert rep.components["poisson"] < 5e-2 and rep.components["hilbert"] < 5e-2
    assert rep.components["harmonic"] < 1e-4


def test_poisson_quadrature_zero_function():
    rep = poisson_quadrature_check(f=lambda x, y: np.zeros_like(x))
    assert rep.components == {"poisson": 0.0, "hilbert": 0.0, "harmonic": 0.0}


def test_poisson_quadrature_clipped_support():
    with pytest.raises(DomainError):
        poisson_quadrature_check(f=radial_bump(3.0), grid=GridSpec(2, 2.0, 64))


def test_grid_spec_invariants():
    with pytest.raises(DomainError):
        GridSpec(4, 1.0, 32)
    with pytest.raises(DomainError):
        GridSpec(2, 1.0, 8)
    g = GridSpec(2, 1.0, 20)
    assert g.spacing == pytest.approx(0.1)
    assert g.centers()[0] == pytest.approx(-0.95) and np.allclose(g.centers(), -g.centers()[::-1])


def test_csv_rows():
    reps = [check_monogenic(-1, 3, SAMPLE3[:10]), boundary_limit_study(0, 3, [1.0, 0.0, 0.0])]
    rows = list(csv.reader(io.StringIO(reports_to_csv(reps))))
    assert tuple(rows[0]) == CSV_COLUMNS
    final = [r for r in rows[1:] if r[0] == "monogenic_C-1"][0]
    assert final[6] == "PASS"
    assert len(final[4].replace("e-", "").replace(".", "").lstrip("0")) <= 17
    assert float(final[4]) == pytest.approx(reps[0].residual, rel=1e-14)
    levels = [r for r in rows if r[0].endswith("@level")]
    assert levels and all(r[6] == "" for r in levels)


def test_tolerance_from_environment(monkeypatch):
    monkeypatch.setenv("MONOGENIC_CHAIN_TOL", "1e-12")
    rep = check_monogenic(-1, 3, SAMPLE3[:10])
    assert rep.tol == 1e-12 and not rep.passed


def test_threads_do_not_change_results(monkeypatch):
    serial = check_monogenic(-2, 3, SAMPLE3)
    monkeypatch.setenv("MONOGENIC_CHAIN_THREADS", "4")
    threaded = check_monogenic(-2, 3, SAMPLE3)
    assert serial.residual == threaded.residual and math.isclose(serial.order, threaded.order)
