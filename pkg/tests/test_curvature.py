import json

import numpy as np
import pytest

from pinch4 import (
    Bivector,
    CurvOp,
    BadDelta,
    NonTraceless,
    NonUnitPlane,
    euler_form,
    i_lambda,
    make_operator,
    pinch_certificate,
    project_einstein,
    sample_pinched,
    sec,
    signature_form,
)

# scaled Fubini-Study operator: sec ranges over [1/4, 1]
_CP2 = dict(u=0.5, wplus=[-0.5, -0.5, 1.0], wminus=[0.0, 0.0, 0.0])


def _cp2():
    return make_operator(**_CP2)


def test_round_sphere_certifies_at_one():
    r = make_operator(1.0, [0, 0, 0], [0, 0, 0])
    assert np.array_equal(r.matrix(), np.eye(6))
    cert = pinch_certificate(r, 1.0)
    assert cert.feasible
    assert cert.sign == 1


def test_cp2_quarter_pinched_boundary():
    r = _cp2()
    cert = pinch_certificate(r, 0.25)
    assert cert.feasible
    assert cert.boundary, f"margins {cert.margin1} {cert.margin2}"
    assert not pinch_certificate(r, 0.2501).feasible
    assert pinch_certificate(r, 0.24).feasible


def test_negated_operator_uses_other_sign():
    cert = pinch_certificate(make_operator(-0.5, [-1.0, 0.5, 0.5],
                                           [0, 0, 0]), 0.25)
    assert cert.feasible
    assert cert.sign == -1


def test_twice_identity_infeasible_both_signs():
    r = make_operator(2.0, [0, 0, 0], [0, 0, 0])
    cert = pinch_certificate(r, 0.5)
    assert not cert.feasible
    assert cert.sign == 1


def test_euler_signature_forms_on_cp2():
    r = make_operator(2.0, [-2.0, -2.0, 4.0], [0, 0, 0])
    chi = euler_form(r)
    sig = signature_form(r)
    assert abs(chi - 6.0) < 1e-14
    assert abs(sig - 2.0) < 1e-14
    assert abs(sig / chi - 1.0 / 3.0) < 1e-14


def test_sec_known_plane():
    r = make_operator(2.0, [-2.0, -2.0, 4.0], [0, 0, 0])
    pl = Bivector(np.array([0.0, 0.0, 1.0]), np.array([0.0, 0.0, 1.0]))
    assert abs(sec(r, pl) - 4.0) < 1e-14


def test_sec_rejects_non_unit_factor():
    r = _cp2()
    with pytest.raises(NonUnitPlane):
        sec(r, Bivector(np.array([0.0, 0.0, 2.0]),
                        np.array([0.0, 0.0, 1.0])))


def test_make_operator_rejects_trace():
    with pytest.raises(NonTraceless):
        make_operator(1.0, [0.1, 0.0, 0.0], [0, 0, 0])


def test_certificate_rejects_bad_delta():
    r = _cp2()
    for bad in (0.0, -0.5, 1.5):
        with pytest.raises(BadDelta):
            pinch_certificate(r, bad)


def test_make_operator_sorts_and_permutes_c():
    rng = np.random.default_rng(3)
    w = rng.normal(size=3)
    wp = w - w.mean()
    wm = rng.normal(size=3)
    wm -= wm.mean()
    cc = rng.normal(size=(3, 3))
    r = make_operator(0.3, wp[::-1], wm[::-1], cc[::-1, ::-1])
    # same operator up to simultaneous permutation: spectrum must agree
    ref = make_operator(0.3, wp, wm, cc)
    ev_a = np.linalg.eigvalsh(r.matrix())
    ev_b = np.linalg.eigvalsh(ref.matrix())
    assert np.allclose(ev_a, ev_b, atol=1e-13)
    assert np.all(np.diff(r.wplus) >= 0)
    assert np.all(np.diff(r.wminus) >= 0)


def test_orientation_reversal_swaps_blocks():
    r = _cp2()
    rr = r.reversed_orientation()
    assert np.allclose(rr.wplus, [0, 0, 0])
    assert np.allclose(rr.wminus, [-0.5, -0.5, 1.0])
    assert abs(signature_form(rr) + signature_form(r)) < 1e-15
    assert abs(euler_form(rr) - euler_form(r)) < 1e-15


def test_i_lambda_invariant_under_negation():
    for op in sample_pinched(0.3, 5, 11):
        negged = make_operator(-op.u, -op.wplus, -op.wminus, -op.c)
        a = i_lambda(op, 0.4)
        b = i_lambda(negged, 0.4)
        assert abs(a - b) < 1e-12, f"{a} vs {b}"


def test_sec_bounded_on_certified_sample():
    rng = np.random.default_rng(0)
    ops = sample_pinched(0.3, 20, 4)
    worst_lo, worst_hi = np.inf, -np.inf
    for op in ops:
        for _ in range(500):
            h = rng.normal(size=3)
            k = rng.normal(size=3)
            pl = Bivector(h / np.linalg.norm(h), k / np.linalg.norm(k))
            s = sec(op, pl)
            worst_lo = min(worst_lo, s)
            worst_hi = max(worst_hi, s)
    assert worst_lo >= 0.3 - 1e-9, f"sec dipped to {worst_lo}"
    assert worst_hi <= 1.0 + 1e-9, f"sec rose to {worst_hi}"


def test_project_einstein_zeroes_coupling():
    rng = np.random.default_rng(8)
    cc = 0.1 * rng.normal(size=(3, 3))
    r = make_operator(0.4, [-0.1, 0.0, 0.1], [-0.2, 0.0, 0.2], cc)
    pe = project_einstein(r)
    assert np.array_equal(pe.c, np.zeros((3, 3)))
    assert pe.u == r.u
    assert np.array_equal(pe.wplus, r.wplus)


def test_json_round_trip():
    rng = np.random.default_rng(5)
    cc = 0.05 * rng.normal(size=(3, 3))
    r = make_operator(0.7, [-0.3, 0.1, 0.2], [-0.05, 0.0, 0.05], cc)
    blob = r.to_json()
    parsed = json.loads(blob)
    assert set(parsed) == {"u", "wplus", "wminus", "c"}
    rt = CurvOp.from_json(blob)
    assert np.array_equal(rt.matrix(), r.matrix())
