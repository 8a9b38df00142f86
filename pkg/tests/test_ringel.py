import pytest

from conftest import algebra_hw, engine
from tensor_envelope.complexes import proj_d2_is_zero
from tensor_envelope.ringel import cartan_matrix, hom_kb, hom_kb_cat, hom_range, ringel_dual
from tensor_envelope.verify import ringel_report


@pytest.mark.parametrize("t", ["generic", "2", "3", "1"])
def test_ringel_report(t):
    _, hw = algebra_hw(t)
    rep = ringel_report(hw, engine(t))
    assert rep["ok"], rep["failed"]


@pytest.mark.parametrize("t", ["2", "0"])
def test_hom_in_homotopy_category_two_routes(t):
    # chain-level hom modulo null-homotopic maps versus the categorical route
    _, hw = algebra_hw(t)
    E = engine(t)
    cxs = [E.Y(lab) for lab in hw.labels] + [E.X(lab) for lab in hw.labels]
    for P in cxs:
        for Q in cxs:
            for k in hom_range(P, Q):
                assert hom_kb(hw, P, Q, k) == hom_kb_cat(hw, P, Q, k)


@pytest.mark.parametrize("t", ["generic", "2"])
def test_exceptional_and_dual_collections(t):
    _, hw = algebra_hw(t)
    E = engine(t)
    ok, table, witnesses = E.exceptional_report()
    assert ok, witnesses
    for lab in hw.labels:
        assert proj_d2_is_zero(hw, E.Y(lab)) and proj_d2_is_zero(hw, E.X(lab))
    ok, table = E.orthogonality_table()
    assert ok


def test_resolution_of_a_standard_at_two():
    # at t = 2 one standard has a non-projective resolution of length one
    _, hw = algebra_hw("2")
    E = engine("2")
    lengths = {hw.names[lab]: len([d for d, t in E.Y(lab).terms.items() if t]) for lab in hw.labels}
    assert max(lengths.values()) == 2 and lengths["([0];())"] == 1


@pytest.mark.parametrize("t", ["generic", "3"])
def test_double_dual_cartan(t):
    _, hw = algebra_hw(t)
    R = ringel_dual(hw)
    assert cartan_matrix(ringel_dual(R)) == cartan_matrix(hw)
