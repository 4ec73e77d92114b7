from fractions import Fraction

import pytest

from cherednik.glmod import make_natural
from cherednik.hecke import en_z, perm_op
from cherednik.linops import (LinOp, SpaceMismatch, TensorSpace, check_identity, commutator,
                              first_witness, identity_op, op_algebra, sample_basis, scalar_op,
                              zero_op)
from cherednik.symgroup import transposition

U = make_natural(2)
SPACE = TensorSpace(2, 2, 2)
KEYS = list(SPACE.keys())


def test_full_basis_has_eight_keys():
    assert len(KEYS) == 8
    assert sample_basis(SPACE, 3) == KEYS


def test_operator_algebra_basics():
    z1 = en_z(U, 2, 1)
    for key in KEYS:
        assert not op_algebra(("[]", z1, z1))(key)
        assert op_algebra(("@", identity_op(SPACE), z1))(key) == z1(key)
        assert not op_algebra(("+", z1, ("*", -1, z1)))(key)


def test_space_mismatch():
    with pytest.raises(SpaceMismatch):
        en_z(U, 2, 1) + en_z(U, 3, 1)


def test_zero_identity_passes():
    assert check_identity(zero_op(SPACE), zero_op(SPACE), KEYS).passed


def test_z_commutator_relation():
    z1, z2 = en_z(U, 2, 1), en_z(U, 2, 2)
    s12 = perm_op(transposition(1, 2, 2), SPACE)
    rep = check_identity(commutator(z1, z2), s12 @ (z1 - z2), KEYS)
    assert rep.passed and rep.instances == 8


def test_perturbed_rhs_gives_witness():
    z1, z2 = en_z(U, 2, 1), en_z(U, 2, 2)
    s12 = perm_op(transposition(1, 2, 2), SPACE)
    bad = s12 @ (z1 - z2) + scalar_op(Fraction(1, 7), SPACE)
    rep = check_identity(commutator(z1, z2), bad, KEYS)
    assert not rep.passed and rep.status == "fail"
    assert rep.failures[0].key == KEYS[0]
    assert first_witness(commutator(z1, z2), bad, KEYS) == KEYS[0]


def test_sampling_is_deterministic():
    big = TensorSpace(3, 8, 2)  # 3^8 * 2 > 10^4
    a = sample_basis(big, 50, seed=4)
    b = sample_basis(big, 50, seed=4)
    assert a == b and len(a) == 50 and len(set(a)) == 50
    assert sample_basis(big, 50, seed=5) != a
    with pytest.raises(ValueError):
        sample_basis(SPACE, 0)
    with pytest.raises(ValueError):
        sample_basis([], 3)


def test_report_json_shape():
    rep = check_identity(identity_op(SPACE), scalar_op(2, SPACE), KEYS[:2], name="id = 2")
    d = rep.to_dict()
    assert d["status"] == "fail" and d["instances"] == 2
    assert d["checks"] == {"id = 2": {"instances": 2, "failures": 2}}
    assert d["failures"][0]["expected"] == [[[[1, 1], 0], "2"]]


def test_linop_memo_returns_copies():
    op = LinOp(lambda k: {k: 1}, "id", SPACE)
    v = op(KEYS[0])
    v[KEYS[1]] = 5
    assert op(KEYS[0]) == {KEYS[0]: 1}
