"""Tests for the higher operations and the relation checker."""
from __future__ import annotations

import itertools

import pytest

from starcob.ainfty import (
    check_ainfty,
    mu_a,
    mu_b,
    op_grading_check,
    parse_fault,
    passing_windows,
    relation_sum,
    valid_higher_arities,
)
from starcob.staralg import AWord, BWord, enumerate_basis, letter


def _u(i, n=3, p=1):
    return AWord("u", i, p, n)


def _s(i, n=3, length=1):
    return AWord("s", i, length, n)


def _sig(i, n=3):
    return letter("B", "s", i, n)


def _rho(i, n=3):
    return letter("B", "r", i, n)


def test_valid_higher_arities():
    assert valid_higher_arities("A", 3, 12) == [6, 10]
    assert valid_higher_arities("A", 4, 16) == [8, 14]
    assert valid_higher_arities("B", 3, 12) == [3]
    assert valid_higher_arities("B", 5, 12) == [5]


def test_mu_a_centered_rotation():
    res = mu_a([_u(1), _s(1), _u(2), _s(2), _u(3), _s(3)])
    assert res.tag == "centered"
    assert res.value.render() == "V0*I1"
    # Every cyclic rotation is nonzero; the idempotent follows the first word.
    rot = mu_a([_s(1), _u(2), _s(2), _u(3), _s(3), _u(1)])
    assert rot.tag == "centered"
    assert rot.value.render() == "V0*I1"
    rot2 = mu_a([_u(2), _s(2), _u(3), _s(3), _u(1), _s(1)])
    assert rot2.value.render() == "V0*I2"


def test_mu_a_extended_windows():
    left = mu_a([_u(1, p=2), _s(1), _u(2), _s(2), _u(3), _s(3)])
    assert left.tag == "left-extended"
    assert left.value.render() == "V0*U1"
    right = mu_a([_s(1), _u(2), _s(2), _u(3), _s(3), _u(1, p=2)])
    assert right.tag == "right-extended"
    assert right.value.render() == "V0*U1"
    # A merged edge chain on the right: the tail splits off.
    right2 = mu_a([_u(1), _s(1), _u(2), _s(2), _u(3), _s(3, length=2)])
    assert right2.tag == "right-extended"
    assert right2.value.render() == "V0*s[1,2]"


def test_mu_a_zero_cases():
    # Wrong total length.
    assert mu_a([_u(1), _s(1), _u(2), _s(2), _u(3)]).value.is_zero()
    # Arity not of the admissible shape.
    assert mu_a([_u(1), _s(1), _u(2)]).value.is_zero()
    # Broken chaining.
    res = mu_a([_u(1), _s(2), _u(2), _s(2), _u(3), _s(3)])
    assert res.value.is_zero()
    # Strict unitality: idempotent entries kill higher operations.
    res = mu_a([AWord("i", 1, 0, 3), _s(1), _u(2), _s(2), _u(3), _s(3)])
    assert res.value.is_zero()


def test_mu_a_higher_weight():
    seq = [
        _u(1),
        _u(1),
        _s(1, length=2),
        _u(3),
        _u(3),
        _s(3),
        _s(1),
        _u(2, p=2),
        _s(2),
        _s(3),
    ]
    res = mu_a(seq)
    assert res.tag == "centered"
    assert res.value.render() == "V0^2*I1"


def test_mu_b_centered_and_extended():
    res = mu_b([_sig(3), _sig(2), _sig(1)])
    assert res.tag == "centered"
    assert res.value.render() == "V4*I1"
    for i in (1, 2, 3):
        chain = [_sig((i + k - 1) % 3 + 1) for k in reversed(range(3))]
        out = mu_b(chain)
        assert out.tag == "centered"
        assert out.value.render() == f"V4*I{i}"
    left = mu_b([BWord("c", 3, "s", 2, 3), _sig(2), _sig(1)])
    assert left.tag == "left-extended"
    assert left.value.render() == "V4*r1"
    right = mu_b([_sig(3), _sig(2), BWord("c", 1, "r", 2, 3)])
    assert right.tag == "right-extended"
    assert right.value.render() == "V4*r1"


def test_mu_b_zero_cases():
    # A loop letter in the middle breaks the bare-edge pattern.
    assert mu_b([_sig(3), _rho(2), _sig(1)]).value.is_zero()
    # Chain mismatch.
    assert mu_b([_sig(3), _sig(1), _sig(1)]).value.is_zero()
    # Idempotent entry.
    from starcob.staralg import idempotent

    assert mu_b([_sig(3), idempotent("B", 2, 3), _sig(1)]).value.is_zero()
    # Wrong arity.
    assert mu_b([_sig(1), _rho(1)]).tag == "binary"
    assert mu_b([_sig(2), _sig(1)]).value.is_zero()
    assert mu_b([_sig(3), _sig(2), _sig(1), _rho(1)]).value.is_zero()


def test_relation_sum_vanishes_on_witness_tuples():
    assert relation_sum("A", [_u(1), _u(1), _s(1), _u(2), _s(2), _u(3), _s(3)], 3).is_zero()
    assert relation_sum("B", [_rho(1), _sig(3), _sig(2), _sig(1)], 3).is_zero()
    assert relation_sum("B", [_sig(3), _sig(2), _sig(1), _rho(1)], 3).is_zero()


def test_passing_windows_at_base_arity():
    wins = passing_windows("A", 6, 6, 3)
    assert len(wins) == 6
    for w in wins:
        res = mu_a(list(w))
        assert res.tag == "centered"
        assert not res.value.is_zero()
    wins_b = passing_windows("B", 3, 3, 3)
    assert len(wins_b) == 3
    for w in wins_b:
        assert mu_b(list(w)).tag == "centered"


def test_check_ainfty_clean():
    assert check_ainfty("A", 8, 12, 3) == []
    assert check_ainfty("B", 5, 9, 3) == []


def test_check_ainfty_threads_match():
    assert check_ainfty("A", 8, 10, 3, threads=4) == check_ainfty("A", 8, 10, 3)


def test_fault_injection_detected_for_every_component():
    # Dropping any single centered component must break the relations.
    for comp in range(6):
        violations = check_ainfty("A", 8, 12, 3, fault=("drop-a-centered", comp))
        assert violations, f"component {comp} undetected"
        for v in violations:
            assert v["algebra"] == "A"
            assert v["arity"] >= 3
            assert v["lhs-sum"] != "0"


def test_fault_changes_single_operation():
    clean = mu_a([_u(1), _s(1), _u(2), _s(2), _u(3), _s(3)])
    dropped = mu_a([_u(1), _s(1), _u(2), _s(2), _u(3), _s(3)], fault=("drop-a-centered", 0))
    assert not clean.value.is_zero()
    assert dropped.value.is_zero()
    kept = mu_a([_u(1), _s(1), _u(2), _s(2), _u(3), _s(3)], fault=("drop-a-centered", 1))
    assert kept.value == clean.value


def test_parse_fault():
    assert parse_fault(None) is None
    assert parse_fault("break-h") == ("break-h",)
    assert parse_fault("drop-mu2N") == ("drop-a-centered", 0)
    assert parse_fault("drop-mu2N:3") == ("drop-a-centered", 3)
    with pytest.raises(ValueError):
        parse_fault("bogus")
    with pytest.raises(ValueError):
        parse_fault("drop-mu2N:x")


def test_op_grading_check_clean():
    assert op_grading_check("A", 8, 12, 3) == []
    assert op_grading_check("B", 5, 9, 3) == []


def test_tags_are_exclusive_across_windows():
    # Every nonzero higher operation reports exactly one structural case.
    for algebra, arity in (("A", 6), ("B", 3)):
        for win in passing_windows(algebra, arity, 10, 3):
            res = mu_a(list(win)) if algebra == "A" else mu_b(list(win))
            assert res.tag in {"centered", "left-extended", "right-extended"}
            assert not res.value.is_zero()


def test_multilinearity_over_sums():
    from starcob.staralg import AlgElem

    x = AlgElem.from_word(_u(1)) + AlgElem.from_word(_u(1, p=2))
    rest = [_s(1), _u(2), _s(2), _u(3), _s(3)]
    combined = mu_a([x] + [AlgElem.from_word(w) for w in rest])
    separate = (
        mu_a([_u(1)] + rest).value + mu_a([_u(1, p=2)] + rest).value
    )
    assert combined.value == separate
