import random

import numpy as np
import pytest

from qmds.codes import (
    BudgetExceeded,
    CheckFailed,
    is_contained_in_dual,
    is_hermitian_self_orthogonal,
    mds_certify,
)
from qmds.gf import poly_add, smallest_irreducible
from qmds.grs import (
    GeneralGrsSpec,
    GrsSpec,
    canonical_points,
    grs_construct,
    grs_encode,
    grs_spec,
    scan_selforthogonal_grs,
    verify_grs_identity,
)


def test_canonical_points_order(f9):
    pts = canonical_points(f9)
    assert len(pts) == 9
    assert pts[-1] == 0
    assert [f9.log(a) for a in pts[:-1]] == list(range(8))


# -- construction ----------------------------------------------------------------


def test_construct_q3_k3(f9):
    code = grs_construct(3, 3)
    assert (code.n, code.k) == (10, 3)
    assert is_hermitian_self_orthogonal(code)
    assert is_contained_in_dual(code)


def test_construct_rejects_k_q_minus_1():
    with pytest.raises(ValueError, match="k != q-1"):
        grs_construct(3, 2)
    with pytest.raises(ValueError, match="k != q-1"):
        grs_construct(2, 1)  # q=2: k=1 is exactly q-1, no root-free h of degree 1
    with pytest.raises(ValueError):
        grs_construct(3, 4)  # k > q


def test_default_h_is_smallest_irreducible(f9):
    code = grs_construct(3, 1)
    assert code.provenance.h == smallest_irreducible(f9, 2)


def test_default_h_is_one_for_k_equals_q(f9):
    assert grs_construct(3, 3).provenance.h == (1,)


def test_explicit_h_accepted(f9):
    h = (f9.exp(3), 0, 1)  # monic quadratic; may not be the default
    if any(f9.add(f9.mul(a, a), f9.exp(3)) == 0 for a in f9.elements):
        pytest.skip("chosen h has a root in this presentation")
    code = grs_construct(3, 1, h)
    assert code.provenance.h == h
    assert is_hermitian_self_orthogonal(code)


def test_non_monic_h_rejected_with_named_check(f9):
    eps = f9.epsilon
    h = tuple(f9.mul(eps, c) for c in smallest_irreducible(f9, 2))
    with pytest.raises(CheckFailed) as err:
        grs_construct(3, 1, h)
    assert err.value.check == "h_monic"


def test_vanishing_h_rejected(f9):
    h = (0, 0, 1)  # X^2 has the root 0
    with pytest.raises(CheckFailed) as err:
        grs_construct(3, 1, h)
    assert err.value.check == "h_nonvanishing"


def test_every_small_construction_is_self_orthogonal_mds():
    for q in (2, 3, 4, 5):
        for k in range(1, q + 1):
            if k == q - 1:
                continue
            code = grs_construct(q, k)
            assert is_contained_in_dual(code), (q, k)
            rep = mds_certify(code)
            assert rep.passed and rep.distance == q * q + 2 - k, (q, k)


# -- encoding ----------------------------------------------------------------------


def _unit_spec(field, k, extension=1):
    pts = canonical_points(field)
    return GeneralGrsSpec(field, k, pts, (1,) * len(pts), extension)


def test_encode_zero_polynomial(f9):
    spec = _unit_spec(f9, 3)
    assert not np.any(grs_encode(spec, ()))


def test_encode_top_monomial_sets_extension(f9):
    spec = _unit_spec(f9, 3)
    cw = grs_encode(spec, (0, 0, 1))  # X^2
    assert cw[-1] == 1


def test_encode_x_with_unit_multipliers(f9):
    spec = _unit_spec(f9, 3)
    cw = grs_encode(spec, (0, 1))  # f = X: evaluations then top coefficient 0
    assert list(cw) == list(canonical_points(f9)) + [0]


def test_encode_degree_too_high(f9):
    spec = _unit_spec(f9, 3)
    with pytest.raises(ValueError, match="degree"):
        grs_encode(spec, (0, 0, 0, 1))


def test_encode_is_linear(f9):
    spec = _unit_spec(f9, 4, extension=f9.epsilon)
    rng = random.Random(99)
    for _ in range(100):
        f = tuple(rng.choice(f9.elements) for _ in range(4))
        g = tuple(rng.choice(f9.elements) for _ in range(4))
        left = grs_encode(spec, poly_add(f9, f, g))
        right = f9.add(grs_encode(spec, f), grs_encode(spec, g))
        assert np.array_equal(left, right)


def test_general_spec_validates_points(f9):
    with pytest.raises(ValueError, match="distinct"):
        GeneralGrsSpec(f9, 2, (1, 1), (1, 1))


# -- self-orthogonality identity -----------------------------------------------


def test_identity_q3_k3(f9):
    rep = verify_grs_identity(grs_spec(f9, 3))
    assert rep.gram_zero and rep.top_coeff_ok and rep.h_nonvanishing
    assert rep.top_index == 0  # h = 1 when k = q


def test_identity_q4_k4(f16):
    rep = verify_grs_identity(grs_spec(f16, 4))
    assert rep.gram_zero and rep.top_coeff_ok


def test_identity_q3_k1_top_index(f9):
    rep = verify_grs_identity(grs_spec(f9, 1))
    assert rep.top_index == (3 - 1) * (3 + 1)
    assert rep.gram_zero and rep.top_coeff_ok


def test_identity_flags_corrupted_h(f9):
    # scale h by eps: norm(eps) != 1, so the top coefficient of h^(q+1) moves
    eps = f9.epsilon
    good = grs_spec(f9, 1)
    bad_h = tuple(f9.mul(eps, c) for c in good.h)
    bad = GrsSpec(f9, 1, bad_h, good.points, True)
    rep = verify_grs_identity(bad)
    assert not rep.top_coeff_ok


# -- nonexistence scan ------------------------------------------------------------


def test_scan_empty_at_k_q_plus_1():
    res = scan_selforthogonal_grs(3, 4, (8, 9, 10))
    assert res.findings == ()
    assert res.instances == sum(c for _, c in res.by_length)


def test_scan_short_lengths_empty():
    # n < 2k makes containment dimensionally impossible
    res = scan_selforthogonal_grs(2, 3, (3, 4, 5))
    assert res.findings == ()


def test_scan_finds_instances_below_threshold(f9):
    res = scan_selforthogonal_grs(3, 3, (10,))
    assert len(res.findings) >= 1
    f = res.findings[0]
    assert f.n == 10 and len(f.points) == 9 and f.extension_class is not None


def test_scan_budget(f9):
    with pytest.raises(BudgetExceeded):
        scan_selforthogonal_grs(3, 4, (8, 9, 10), budget=100)


def test_scan_finding_matches_construction_classes(f9):
    # the h-based construction's norm classes must appear among the findings
    code = grs_construct(3, 3)
    mult = code.provenance.multipliers
    classes = tuple(int(f9.norm(v)) for v in mult)
    res = scan_selforthogonal_grs(3, 3, (10,))
    assert any(f.classes == classes for f in res.findings)
