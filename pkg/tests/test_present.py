import pytest

from greenindex import core, factories, present, relgreen
from greenindex.errors import (
    BadInputPresentation,
    BoundExceeded,
    DaggerViolation,
    InputError,
    InvalidLetter,
    NotInSubsemigroup,
)


def test_parse_word_tokenizes_multichar_letters():
    assert present.parse_word("bbb", ("b",)) == ("b", "b", "b")
    assert present.parse_word("d1b", ("b", "d1")) == ("d1", "b")
    assert present.parse_word(["d1", "b"], ("b", "d1")) == ("d1", "b")
    with pytest.raises(InvalidLetter):
        present.parse_word("c", ("b",))


def test_presentation_validation():
    with pytest.raises(InputError):
        present.Presentation(("a",), ((("a",), ()),))
    with pytest.raises(InvalidLetter):
        present.Presentation(("a",), ((("a",), ("b",)),))
    with pytest.raises(InputError):
        present.Presentation(("a", "a"), ())


def test_json_round_trip():
    pres = present.Presentation(
        ("b", "d1"), ((("b", "b", "b"), ("b",)), (("d1", "b"), ("b", "d1")))
    )
    data = pres.to_json_dict(assignment={"b": 3, "d1": 1})
    again, assign = present.Presentation.from_json_dict(data)
    assert again == pres
    assert assign == {"b": 3, "d1": 1}


def test_table_presentation_round_trip_small_orders():
    sems = [
        factories.trivial(),
        factories.zmod(2),
        factories.zmod(6),
        factories.right_zero(3),
        factories.full_transformation_monoid(2),
        factories.symmetric_group(3),
        factories.monogenic(3, 2),
        factories.rectangular_band(2, 3),
        factories.zmod(10),
    ]
    for sem in sems:
        pres, assign = present.presentation_from_table(sem)
        assert present.verify_presentation(pres, sem, assign)


def test_table_presentation_trivial():
    pres, assign = present.presentation_from_table(factories.trivial())
    assert pres.alphabet == ("x0",)
    assert pres.relations == ((("x0", "x0"), ("x0",)),)


def test_enumerate_examples():
    one = present.enumerate_presentation(
        present.Presentation(("a",), ((("a", "a"), ("a",)),)), 10, 10
    )
    assert one.complete and one.size == 1

    two = present.enumerate_presentation(
        present.Presentation(("b",), ((("b", "b", "b"), ("b",)),)), 10, 10
    )
    assert two.complete and two.size == 2
    assert two.reps == (("b",), ("b", "b"))

    three = present.enumerate_presentation(
        present.Presentation(
            ("a", "b"),
            (
                (("a", "b"), ("b", "a")),
                (("a", "a"), ("a",)),
                (("b", "b"), ("b",)),
            ),
        ),
        10,
        10,
    )
    assert three.complete and three.size == 3
    assert set(three.reps) == {("a",), ("b",), ("a", "b")}


def test_enumerate_is_deterministic():
    pres = present.Presentation(("b",), ((("b", "b", "b"), ("b",)),))
    r1 = present.enumerate_presentation(pres, 10, 10)
    r2 = present.enumerate_presentation(pres, 10, 10)
    assert r1 == r2


def test_enumerate_bound_exceeded():
    free = present.Presentation(("a",), ())
    result = present.enumerate_presentation(free, 5, 50)
    assert not result.complete
    assert "bound" in result.reason
    cramped = present.enumerate_presentation(
        present.Presentation(("b",), ((("b", "b", "b"), ("b",)),)), 10, 1
    )
    assert not cramped.complete
    assert "length" in cramped.reason


def test_enumerate_quotient_table_is_consistent(z6):
    pres, assign = present.presentation_from_table(z6)
    result = present.enumerate_presentation(pres, 100, 10)
    assert result.complete and result.size == 6
    # the quotient multiplication matches evaluation of representatives
    evals = [present.evaluate_word(z6, assign, w) for w in result.reps]
    for c1 in range(6):
        for c2 in range(6):
            assert evals[result.cayley[c1][c2]] == z6.mul(evals[c1], evals[c2])
    assert result.word_class(("x2", "x3")) == evals.index(5)


def test_verify_presentation_rejects_bad_relation(z6):
    pres = present.Presentation(("a",), ((("a", "a"), ("a",)),))
    assert not present.verify_presentation(pres, z6, {"a": 1})
    # relations hold but letters do not generate
    sub_only = present.Presentation(("a",), ((("a", "a", "a", "a"), ("a", "a")),))
    assert not present.verify_presentation(sub_only, z6, {"a": 2})


def test_verify_presentation_raises_on_tight_bounds(z6):
    pres, assign = present.presentation_from_table(z6)
    with pytest.raises(BoundExceeded):
        present.verify_presentation(pres, z6, assign, max_classes=2, max_len=10)


def test_compact_subsemigroup_presentation(z6, t03):
    compact = present.Presentation(("b",), ((("b", "b", "b"), ("b",)),))
    assert present.verify_sub_presentation(compact, {"b": 3}, t03)
    assert not present.verify_sub_presentation(compact, {"b": 0}, t03)


def test_factorize(z6):
    assert present.factorize(3, [3], z6) == (3,)
    assert present.factorize(0, [3], z6) == (3, 3)
    assert present.factorize(4, [1], z6) == (1, 1, 1, 1)
    with pytest.raises(NotInSubsemigroup):
        present.factorize(1, [3], z6)


def synth(sem, sub, q=None, qa=None, **kw):
    green = relgreen.relative_green(sem, sub)
    conn = relgreen.connectors(green)
    if q is None:
        q, qa = present.sub_table_presentation(sem, sub)
    packs = present.build_schutz_packs(sem, sub, green, q, qa)
    return present.synthesize_presentation(q, qa, packs, green, conn, **kw)


def test_synthesis_whole_semigroup_is_unchanged(z6):
    full = core.SubSemigroup(parent=z6, members=frozenset(range(6)))
    q, qa = present.presentation_from_table(z6)
    green = relgreen.relative_green(z6, full)
    conn = relgreen.connectors(green)
    packs = present.build_schutz_packs(z6, full, green, q, qa)
    pres, assign = present.synthesize_presentation(q, qa, packs, green, conn)
    assert pres == q
    assert assign == qa


def test_synthesis_z6(z6, t03):
    compact = present.Presentation(("b",), ((("b", "b", "b"), ("b",)),))
    pres, assign = synth(z6, t03, compact, {"b": 3})
    assert set(pres.alphabet) == {"b", "d1", "d2"}
    assert present.verify_presentation(pres, z6, assign,
                                       max_classes=500, max_len=14)


def test_synthesis_semilattice():
    z4, z2 = factories.zmod(4), factories.zmod(2)
    s, t = core.strong_semilattice(z4, z2, factories.mod_reduction(z4, z2))
    pres, assign = synth(s, t)
    assert present.verify_presentation(pres, s, assign,
                                       max_classes=500, max_len=14)


def test_synthesis_rejects_bad_base_presentation(z6, t03):
    bad = present.Presentation(("b",), ((("b", "b"), ("b",)),))
    with pytest.raises(BadInputPresentation):
        synth(z6, t03, bad, {"b": 3})


def test_dagger_violation_detected():
    s3 = factories.symmetric_group(3)
    sub = core.closure(s3, [2])
    green = relgreen.relative_green(s3, sub)
    conn = relgreen.connectors(green)
    q, qa = present.sub_table_presentation(s3, sub)
    packs = present.build_schutz_packs(s3, sub, green, q, qa)
    # forge a pack that breaks the shared-alphabet convention for one of the
    # L-related pairs
    l_groups = {}
    for i, pack in packs.packs.items():
        l_groups.setdefault(pack.leader, []).append(i)
    shared = next(m for m in l_groups.values() if len(m) > 1)
    i = shared[1]
    old = packs.packs[i]
    rogue = present.Presentation(
        tuple(a + "_rogue" for a in old.presentation.alphabet),
        tuple(
            (tuple(a + "_rogue" for a in u), tuple(a + "_rogue" for a in v))
            for u, v in old.presentation.relations
        ),
    )
    forged = dict(packs.packs)
    forged[i] = present.ClassPack(
        class_index=old.class_index,
        leader=old.leader,
        presentation=rogue,
        schutz=old.schutz,
        letter_to_group={a + "_rogue": g for a, g in old.letter_to_group.items()},
        lift={a + "_rogue": w for a, w in old.lift.items()},
    )
    with pytest.raises(DaggerViolation):
        present.synthesize_presentation(
            q, qa, present.SchutzPresentationPack(packs=forged), green, conn
        )


def test_pack_lifts_are_congruent(instances):
    for _name, sem, sub, _a, _b in instances:
        green = relgreen.relative_green(sem, sub)
        q, qa = present.sub_table_presentation(sem, sub)
        packs = present.build_schutz_packs(sem, sub, green, q, qa)
        for i, pack in packs.packs.items():
            assert present.verify_presentation(
                pack.presentation, pack.schutz.group, pack.letter_to_group
            )
            for a in pack.presentation.alphabet:
                elt = sem.prod1(qa[x] for x in pack.lift[a])
                assert pack.schutz.quotient_index(elt) == pack.letter_to_group[a]


def test_synthesized_relations_hold(z6, t03):
    pres, assign = synth(z6, t03)
    for u, v in pres.relations:
        assert present.evaluate_word(z6, assign, u) == present.evaluate_word(
            z6, assign, v
        )
