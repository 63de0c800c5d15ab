"""Unit tests for the q-Hahn polynomial family and its coupling link."""

import pytest
from mpmath import mp, mpf

from qcgc import (
    CgcKey,
    HahnParams,
    QContext,
    cgc_from_hahn,
    delta_x_half,
    gram_entry,
    hahn_difference_residual,
    hahn_eval,
    hahn_norm_sq,
    hahn_ttrr_residual,
    hahn_weight,
    lattice_x,
)
from qcgc.cgc import admissible_keys, cgc_racah
from qcgc.halfint import HalfInt, halfint_range
from qcgc.qcore import QDomainError

CTX = QContext(q="0.5", precision=50)
FAMILY = (5, 1, 2)  # N, alpha, beta


def test_params_validation():
    with pytest.raises(QDomainError):
        HahnParams(5, 5, 1, 1)  # n must stay below N
    with pytest.raises(QDomainError):
        HahnParams(-1, 5, 1, 1)
    p = HahnParams(1, 5, 1, 1)
    assert p.shifted(2).n == 3


def test_lattice_classical_limit():
    ctx = QContext(q=1, precision=50)
    for s in range(5):
        assert lattice_x(s, ctx) == s


def test_lattice_step():
    with CTX.work():
        for s in range(1, 5):
            step = lattice_x(s, CTX) - lattice_x(s - 1, CTX)
            midpoint = HalfInt(twice=2 * s - 1)
            assert CTX.close(step, delta_x_half(midpoint, CTX))


def test_weight_positive_for_positive_parameters():
    params = HahnParams(0, *FAMILY)
    with CTX.work():
        for s in range(FAMILY[0]):
            assert hahn_weight(params, s, CTX) > 0


def test_degree_zero_is_constant_one():
    params = HahnParams(0, *FAMILY)
    with CTX.work():
        for s in range(FAMILY[0]):
            assert CTX.close(hahn_eval(params, s, CTX), 1)


def test_forms_agree():
    with CTX.work():
        for n in range(FAMILY[0]):
            params = HahnParams(n, *FAMILY)
            for s in range(FAMILY[0]):
                va = hahn_eval(params, s, CTX, form="A")
                vb = hahn_eval(params, s, CTX, form="B")
                assert CTX.close(va, vb)


def test_unknown_form_rejected():
    with pytest.raises(QDomainError):
        hahn_eval(HahnParams(1, *FAMILY), 0, CTX, form="C")


def test_orthogonality_and_norms():
    with CTX.work():
        cap_n = FAMILY[0]
        for n in range(cap_n):
            pn = HahnParams(n, *FAMILY)
            d_sq = hahn_norm_sq(pn, CTX)
            assert CTX.close(gram_entry(pn, pn, CTX), d_sq, scale=d_sq)
            for m in range(n + 1, cap_n):
                entry = gram_entry(pn, HahnParams(m, *FAMILY), CTX)
                assert abs(entry) < CTX.tol * mp.sqrt(
                    d_sq * hahn_norm_sq(HahnParams(m, *FAMILY), CTX))


def test_three_term_recurrence():
    with CTX.work():
        for n in range(FAMILY[0]):
            params = HahnParams(n, *FAMILY)
            for s in range(FAMILY[0]):
                assert hahn_ttrr_residual(params, s, CTX) < mpf("1e-30")


def test_difference_equation():
    with CTX.work():
        for n in range(FAMILY[0]):
            params = HahnParams(n, *FAMILY)
            for s in range(FAMILY[0]):
                assert hahn_difference_residual(params, s, CTX) < mpf("1e-30")


def test_half_integer_parameter_family():
    with CTX.work():
        params = HahnParams(2, 6, "1/2", "3/2")
        for s in range(6):
            assert hahn_ttrr_residual(params, s, CTX) < mpf("1e-30")
            assert hahn_difference_residual(params, s, CTX) < mpf("1e-30")


def test_connection_routes_match_racah():
    with CTX.work():
        for j1 in halfint_range(0, HalfInt("3/2")):
            for j2 in halfint_range(0, HalfInt("3/2")):
                for key in admissible_keys(j1, j2):
                    ref = cgc_racah(key, CTX)
                    assert CTX.close(cgc_from_hahn(key, CTX, route="J2"), ref)
                    assert CTX.close(cgc_from_hahn(key, CTX, route="J1"), ref)


def test_connection_handles_nonpositive_alpha_beta():
    # m < j1 - j2 pushes the substituted alpha to or below -1; the
    # integer-argument route must still reproduce the closed form
    key = CgcKey(2, 1, "1/2", "-1/2", "3/2", "1/2")
    with CTX.work():
        ref = cgc_racah(key, CTX)
        assert CTX.close(cgc_from_hahn(key, CTX, route="J2"), ref)
        assert CTX.close(cgc_from_hahn(key, CTX, route="J1"), ref)


def test_connection_zero_on_selection_failure():
    assert cgc_from_hahn(CgcKey(1, 0, 1, 1, 2, 0), CTX) == 0


def test_unknown_route_rejected():
    with pytest.raises(QDomainError):
        cgc_from_hahn(CgcKey(1, 0, 1, 0, 2, 0), CTX, route="J3")
