import pytest

from conftest import algebra_hw, checker
from tensor_envelope.monoidal import weights_up_to
from tensor_envelope.scalar import Scalar

T = Scalar.t()


def test_categorical_dimensions_generic():
    M = checker("generic")
    _, hw = algebra_hw("generic")
    dims = {hw.names[lab]: M.exact.catdim(lab) for lab in hw.labels}
    # the standard formulas for Deligne's category at small objects
    assert dims["([0];())"] == 1
    assert dims["([1];(1))"] == T - 1
    assert dims["([2];(2))"] == T * (T - 3) / 2
    assert dims["([2];(1,1))"] == (T - 1) * (T - 2) / 2


def test_object_dimension_is_sum_over_summands():
    # [2] = sum of its indecomposable summands, with dimension t^2
    M = checker("generic")
    _, hw = algebra_hw("generic")
    total = sum((M.exact.catdim(lab) * m for lab, m in
                 ((hw.labels[0], 2), (hw.labels[1], 3), (hw.labels[2], 1), (hw.labels[3], 1))), Scalar(0))
    assert total == T ** 2


@pytest.mark.parametrize("t", ["generic", "2"])
def test_check_pair_small(t):
    M = checker(t)
    _, hw = algebra_hw(t)
    for a in hw.labels[:2]:
        for b in hw.labels:
            rep = M.check_pair(a, b)
            assert rep.ok, rep.to_json(hw.F)["flags"]
            assert rep.routes_agree


def test_unit_and_y_tensor():
    rep = checker("3").check_Ytensor()
    assert rep["ok"] and rep["unit"] and rep["unit_tensor"]


def test_duality_refusal_for_a_non_self_duality():
    M = checker("2")
    swap = lambda n: {1: 2, 2: 1}.get(n, n)
    out = M.check_Xtensor_via_duality(dual=swap, direct=False)
    assert not out["certified"]
    assert "refused" in out
    assert not out["precondition"]["identity_order_map"]
    assert M.duality_precondition()["ok"]


@pytest.mark.parametrize("t", ["2", "0"])
def test_tilting_tensor_small_pairs_with_split_check(t):
    M = checker(t)
    _, hw = algebra_hw(t)
    for a in hw.labels:
        for b in hw.labels:
            if a.size + b.size > 2:
                continue
            dec = M.tilting_tensor_decompose(a, b, certify=True, split_check=True)
            assert dec.split_check is True
            assert dec.ok, dec.to_json()


def test_tilting_tensor_symmetry_at_three():
    M = checker("3")
    _, hw = algebra_hw("3")
    a, b = hw.labels[1], hw.labels[3]
    ab = M.tilting_tensor_decompose(a, b, certify=False)
    ba = M.tilting_tensor_decompose(b, a, certify=False)
    assert ab.multiset() == ba.multiset()
    assert ab.conserved and ab.trace_product


def test_weights_beyond_truncation():
    labs = [lab for lab, *_ in weights_up_to(checker("generic").A.cat, 4)]
    # partitions of 0..4: 1 + 1 + 2 + 3 + 5
    assert len(labs) == 12
