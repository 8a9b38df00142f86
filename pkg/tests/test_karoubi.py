import json

import pytest

from conftest import checker, diagram, finset
from oracles import radical_series_decomposition
from tensor_envelope.karoubi import (KarObject, endomorphism_dim, envelope_block_report, hom_dim,
                                     split_idempotents, split_multiplicities, truncation_block_report,
                                     truncation_indecomposables)

ORACLE_NAMES = {(0, 1): "([0];())", (1, 1): "([1];(1))", (2, -1): "([2];(1,1))", (2, 1): "([2];(2))"}


def _linkage_classes(labels, matrix):
    """Connected components of the graph linking labels with a nonzero off-diagonal entry."""
    parent = {lab: lab for lab in labels}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for i, a in enumerate(labels):
        for j, b in enumerate(labels):
            if matrix[i][j]:
                parent[find(a)] = find(b)
    groups = {}
    for lab in labels:
        groups.setdefault(find(lab), []).append(ORACLE_NAMES[lab])
    return sorted(sorted(g) for g in groups.values())


def test_generic_blocks_are_trivial():
    rep = truncation_block_report(diagram("generic"), 2)
    assert rep["all_trivial"] and rep["envelope_criterion"]
    assert rep["witness"] == "([0];())" and rep["witness_isolated"]
    assert len(rep["blocks"]) == 4


@pytest.mark.parametrize("t", ["0", "1", "2", "3"])
def test_blocks_match_oracle_linkage(t):
    rep = truncation_block_report(diagram(t), 2)
    labels, matrix = radical_series_decomposition(2, int(t))
    got = sorted(sorted(b["members"]) for b in rep["blocks"])
    assert got == _linkage_classes(labels, matrix)


def test_block_report_fixtures_at_zero():
    D = diagram("0")
    X0, X1 = (KarObject.of(finset().obj(n), D=D) for n in (0, 1))
    alone = envelope_block_report(D, [X1], ["[1]"])
    assert alone["blocks"] == [{"members": ["[1]"], "trivial": False, "almost_trivial": True}]
    pair = envelope_block_report(D, [X0, X1], ["[0]", "[1]"])
    assert not pair["envelope_criterion"] and not pair["all_trivial"]


def test_splitting_of_small_objects():
    D = diagram("generic")
    cat = finset()
    assert len(split_idempotents(D, KarObject.of(cat.obj(1), D=D))) == 2
    assert endomorphism_dim(D, KarObject.of(cat.obj(2), D=D)) == 15
    assert hom_dim(D, KarObject.of(cat.obj(1), D=D), KarObject.of(cat.obj(2), D=D)) == 5
    objs, names = truncation_indecomposables(D, 2)
    assert names == ["([0];())", "([1];(1))", "([2];(1,1))", "([2];(2))"]


@pytest.mark.parametrize("t", ["generic", "2", "1"])
def test_split_multiplicities_match_cell_ranks(t):
    M = checker(t)
    hw = M.hw
    for a in hw.labels:
        for b in hw.labels:
            if a.size + b.size > 2:
                continue
            g = M.wts.tensor_label(a, b)
            dec = M.tilting_tensor_decompose(a, b, certify=False)
            assert split_multiplicities(M, g) == dec.summands


def test_block_report_is_thread_independent():
    a = truncation_block_report(diagram("2"), 2, threads=1)
    b = truncation_block_report(diagram("2"), 2, threads=4)
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
