import math

import pytest

import dmmbound


PAIR = {"roots": [[0, 0], [2, 0]], "edges": [[0, 1, 3]]}


def test_bounds_report_is_sound():
    report = dmmbound.bounds({"roots": [[0, 0], [1, 0], [-1, 0]], "edges": [[0, 1, 1]]})
    assert report["all_sound"]
    entries = {e["name"]: e for e in report["entries"]}
    assert entries["dmm_unweighted"]["log2_value"] == pytest.approx(math.log2(2 / 9), abs=1e-9)


def test_verify_explicit_potentials():
    doc = dmmbound.verify(PAIR, mu=[2, 2])
    run = doc["runs"][0]
    assert doc["passed"]
    assert 2 ** run["log2_det_initial"] == pytest.approx(16)
    assert 2 ** run["log2_factor"] == pytest.approx(8)


def test_infeasible_potentials_raise():
    with pytest.raises(dmmbound.InfeasibleError):
        dmmbound.verify(PAIR, mu=[1, 2])
    with pytest.raises(dmmbound.InputError):
        dmmbound.bounds('{"roots": [')


def test_weighted_main_equals_unweighted_at_unit_weights():
    roots = [0, 1 + 1j, 3, -2j]
    edges = [(0, 1, 1), (1, 2, 1), (0, 3, 1)]
    assert dmmbound.weighted_main(roots, edges, [1, 1, 1, 1]) == pytest.approx(
        dmmbound.dmm_unweighted(roots, edges), abs=1e-12
    )


def test_small_helpers():
    assert abs(dmmbound.confluent_det([1, 3], [2, 1]) - 4) < 1e-12
    assert dmmbound.nuclear_norm(2, [(0, 1, 3)]) == pytest.approx(6)
    assert dmmbound.choose_potentials(2, [(0, 1, 3)], "uniform") == [2, 2]
    assert dmmbound.choose_potentials(2, [(0, 1, 3)], "ones") is None
    assert dmmbound.separation([0, 2, 5]) == pytest.approx(2)
    assert dmmbound.log2_mahler_measure([2, 0.5, 4]) == pytest.approx(3)


def test_find_roots_recovers_double_root():
    # (z - 1)^2 (z + 2) = z^3 - 3z + 2
    found = sorted(dmmbound.find_roots([2, -3, 0, 1]), key=lambda p: p[0].real)
    assert [m for _, m in found] == [1, 2]
    assert abs(found[0][0] + 2) < 1e-6 and abs(found[1][0] - 1) < 1e-6


def test_generate_is_deterministic():
    a = dmmbound.generate(seed=7)
    assert a == dmmbound.generate(seed=7)
    assert dmmbound.bounds(a)["all_sound"]
