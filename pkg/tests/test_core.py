import operator

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from greenindex import core, factories
from greenindex.errors import (
    DomainMismatch,
    EmptyGenerators,
    InputError,
    InvalidHomomorphism,
    NotAssociative,
    NotClosed,
    NotInSubsemigroup,
    OutOfRange,
)

from helpers import random_pairs, semigroup_tables


def test_validate_right_zero():
    sem = core.validate_table([[0, 1], [0, 1]])
    assert sem.order == 2
    assert sem.identity is None


def test_validate_z2_identity():
    sem = core.validate_table([[0, 1], [1, 0]])
    assert sem.identity == 0


def test_validate_non_associative_reports_witness():
    with pytest.raises(NotAssociative) as exc:
        core.validate_table([[0, 1], [0, 0]])
    x, y, z = exc.value.witness
    t = [[0, 1], [0, 0]]
    assert t[t[x][y]][z] != t[x][t[y][z]]
    # the triple (1,1,1) is itself a witness for this table
    assert t[t[1][1]][1] != t[1][t[1][1]]


def test_validate_out_of_range_and_shape():
    with pytest.raises(OutOfRange):
        core.validate_table([[0, 2], [0, 0]])
    with pytest.raises(InputError):
        core.validate_table([[0, 1], [0]])
    with pytest.raises(InputError):
        core.validate_table([])


def test_closure_examples(z6):
    assert core.closure(z6, [2]).members == {0, 2, 4}
    assert core.closure(z6, [3]).members == {0, 3}
    assert core.closure(z6, range(6)).members == set(range(6))
    with pytest.raises(EmptyGenerators):
        core.closure(z6, [])
    with pytest.raises(OutOfRange):
        core.closure(z6, [6])


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6), st.data())
def test_closure_idempotent_and_monotone(seed, data):
    sem, _ = random_pairs(1, seed=seed)[0]
    k = data.draw(st.integers(1, min(3, sem.order)))
    gens = data.draw(
        st.lists(st.integers(0, sem.order - 1), min_size=k, max_size=k)
    )
    sub = core.closure(sem, gens)
    again = core.closure(sem, sub.members)
    assert again.members == sub.members
    extra = data.draw(st.integers(0, sem.order - 1))
    bigger = core.closure(sem, list(gens) + [extra])
    assert sub.members <= bigger.members


def test_subsemigroup_validation(z6):
    with pytest.raises(NotClosed):
        core.SubSemigroup(parent=z6, members=frozenset({1}))
    with pytest.raises(NotClosed):
        core.SubSemigroup(parent=z6, members=frozenset())
    sub = core.SubSemigroup(parent=z6, members=frozenset({0, 3}))
    reind, back = sub.as_semigroup()
    assert reind.order == 2
    assert back == (0, 3)
    assert core.is_group(reind)


def test_monoid_completion_is_always_fresh():
    z2 = factories.zmod(2)  # already a monoid
    mc = core.monoid_completion(z2)
    assert mc.identity_index == 2
    assert mc.semigroup.order == 3
    e = mc.identity_index
    for x in range(3):
        assert mc.semigroup.mul(e, x) == x
        assert mc.semigroup.mul(x, e) == x
    for x in range(2):
        for y in range(2):
            assert mc.semigroup.mul(x, y) == z2.mul(x, y)
    # the base identity 0 is still there, distinct from the adjoined one
    assert mc.semigroup.mul(0, 1) == 1


def test_homomorphism_validation():
    z4, z2 = factories.zmod(4), factories.zmod(2)
    phi = factories.mod_reduction(z4, z2)
    assert [phi(x) for x in range(4)] == [0, 1, 0, 1]
    with pytest.raises(InvalidHomomorphism):
        core.Homomorphism(source=z4, target=z2, mapping=(0, 1, 1, 0))


def test_strong_semilattice_example_orders():
    z2 = factories.zmod(2)
    s, t = core.strong_semilattice(
        z2, factories.trivial(), factories.collapse_to_trivial(z2)
    )
    assert s.order == 3
    assert t.members == {0, 1}
    assert t.complement() == {2}

    z4 = factories.zmod(4)
    s2, t2 = core.strong_semilattice(
        z4, z2, factories.mod_reduction(z4, z2)
    )
    assert s2.order == 6
    # mixed products push the first-factor through the homomorphism
    assert s2.mul(1, 4) == 4 + 1  # 1 maps to 1 in Z2, 1 + 0 = 1 in the copy
    assert s2.mul(4, 1) == 4 + 1

    with pytest.raises(DomainMismatch):
        core.strong_semilattice(z2, z2, factories.mod_reduction(z4, z2))


def test_strong_semilattice_identity_copy():
    z2 = factories.zmod(2)
    ident = core.Homomorphism(source=z2, target=z2, mapping=(0, 1))
    s, t = core.strong_semilattice(z2, z2, ident)
    assert s.order == 4
    assert s.mul(0, 2) == 2  # lands in the second copy
    assert s.mul(1, 3) == 2
    assert s.mul(3, 1) == 2


def test_is_group_is_cancellative():
    z2 = factories.zmod(2)
    assert core.is_group(z2)
    assert core.is_cancellative(z2)
    rz = factories.right_zero(2)
    assert not core.is_group(rz)
    assert not core.is_cancellative(rz)


def test_cancellative_implies_group_order_up_to_3():
    for n in (1, 2, 3):
        for table in semigroup_tables(n):
            sem = core.validate_table(table)
            if core.is_cancellative(sem):
                assert core.is_group(sem)


_TABLES3 = None


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 3), st.integers(0, 10 ** 9))
def test_cancellative_implies_group_random_tables(n, pick):
    # random associative tables, sampled from the exhaustive enumeration
    global _TABLES3
    if _TABLES3 is None:
        _TABLES3 = {k: list(semigroup_tables(k)) for k in (1, 2, 3)}
    table = _TABLES3[n][pick % len(_TABLES3[n])]
    sem = core.validate_table(table)
    if core.is_cancellative(sem):
        assert core.is_group(sem)


def test_shortlex_factorize(z6):
    assert core.factorize_element(z6, [3], 0) == (3, 3)
    assert core.factorize_element(z6, [1], 4) == (1, 1, 1, 1)
    assert core.factorize_element(z6, [2, 3], 2) == (2,)
    with pytest.raises(NotInSubsemigroup):
        core.factorize_element(z6, [3], 1)
    forms = core.shortlex_forms(z6, [1])
    assert len(forms) == 6
    assert forms[5] == (1,) * 5


def test_black_box_spot_check():
    good = core.BlackBoxSemigroup(multiply=operator.add, generators=(1, 2))
    assert good.spot_check_associativity() is None
    bad = core.BlackBoxSemigroup(multiply=operator.sub, generators=(1, 2))
    witness = bad.spot_check_associativity()
    assert witness is not None
    a, b, c = witness
    assert (a - b) - c != a - (b - c)


def test_json_round_trip(z6):
    data = z6.to_json_dict()
    again = core.FiniteSemigroup.from_json_dict(data)
    assert again == z6
    with pytest.raises(InputError):
        core.FiniteSemigroup.from_json_dict({"order": 3, "table": [[0]]})
