import random

import pytest
from hypothesis import given, settings, strategies as st

from brauerlab import admissible as adm
from brauerlab.normalform import build_aB
from brauerlab.oracle_a import eval_word_A
from brauerlab.rewrite import (RULES, Equivalence, Kind, RuleError, SearchCaps, Side, Word,
                               act_word, all_rules, apply_rule_at, e_hat, homog_equiv,
                               instantiate, op_reverse, perturb, reduce, shuffle_commuting,
                               word_height)
from brauerlab.rootsystem import root_system

W = Word.parse


def random_word(rng, sys, length):
    return Word(tuple(rng.choice([v, 1024 + v]) for v in
                      (rng.choice(sys.nodes) for _ in range(length))))


def test_word_text_format():
    w = W("d^-2 e6 e5 e4 r2 e3 e4 e5 e6")
    assert w.delta == -2 and len(w) == 8
    assert str(w) == "d^-2 e6 e5 e4 r2 e3 e4 e5 e6"
    assert W("1") == Word() and str(Word()) == ""
    assert Word.from_json(w.to_json()) == w
    assert w.to_json() == {"delta": -2, "tokens": ["e6", "e5", "e4", "r2", "e3", "e4", "e5", "e6"]}
    for bad in ["x1", "e", "d^x e1", "r0"]:
        with pytest.raises(ValueError):
            W(bad)


def test_op_reverse():
    assert op_reverse(W("r1 e2")) == W("e2 r1")
    assert op_reverse(W("e6 e5 e4 r2 e3 e4 e5")) == W("e5 e4 e3 r2 e4 e5 e6")
    w = W("d^3 e1 r2 r3 e5")
    assert op_reverse(op_reverse(w)) == w


def test_word_height():
    assert word_height(Word()) == 0
    assert word_height(W("e6 e5 e4 r2 e3 e4 e5")) == 1
    assert word_height(W("e4 r2 r5 e3 e4 e5 e1 e3") * e_hat([4, 6])) == 2


def test_e_hat():
    assert e_hat([6, 4]) == W("d^-2 e4 e6")


def test_act_word_examples(e6):
    for Y in adm.cocliques_Y(e6):
        assert act_word(e6, e_hat(Y), Side.LEFT, ()) == adm.base_set(e6, Y)
    a = W("e4 r2 r5 e3 e4 e5 e1 e3") * e_hat([4, 6])
    expected = adm.as_set(e6, [(0, 0, 0, 1, 0, 0), (1, 1, 2, 2, 1, 0)])
    assert act_word(e6, a, Side.LEFT, ()) == expected


@given(st.data())
def test_act_word_is_a_monoid_action(data):
    e6 = root_system("E6")
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    u, v = random_word(rng, e6, rng.randint(0, 8)), random_word(rng, e6, rng.randint(0, 8))
    Y = data.draw(st.sampled_from(adm.cocliques_Y(e6)))
    B = data.draw(st.sampled_from(adm.orbit_of(e6, Y).members))
    assert act_word(e6, u * v, Side.LEFT, B) == act_word(e6, u, Side.LEFT, act_word(e6, v, Side.LEFT, B))
    assert act_word(e6, u * v, Side.RIGHT, B) == act_word(e6, v, Side.RIGHT, act_word(e6, u, Side.RIGHT, B))
    assert act_word(e6, op_reverse(u), Side.LEFT, B) == act_word(e6, u, Side.RIGHT, B)


def test_apply_rule_examples():
    d = root_system("A3").diagram
    assert apply_rule_at(d, W("e1 e2 r3 e2"), "RNere", 1, {"i": 2, "j": 3}) == W("e1 e2")
    assert apply_rule_at(d, W("e2 r1"), "HNeee", 0, {"i": 2, "j": 3}, reverse=True) == W("e2 e3 e2 r1")
    assert apply_rule_at(d, W("e1 e1"), "HSee", 0, {"i": 1}) == W("d^1 e1")
    assert apply_rule_at(d, W("r2 r2"), "RSrr", 0, {"i": 2}) == Word()


def test_apply_rule_errors():
    d = root_system("A3").diagram
    with pytest.raises(RuleError):
        apply_rule_at(d, W("e1 e2"), "RSrr", 0, {"i": 1})
    with pytest.raises(RuleError):
        instantiate(d, "RSrr", {"i": 1}, reverse=True)
    with pytest.raises(RuleError):
        instantiate(d, "HNrrr", {"i": 1, "j": 3})
    with pytest.raises(RuleError):
        instantiate(d, "HCee", {"i": 1, "j": 2})
    with pytest.raises(RuleError):
        instantiate(d, "HTeere", {"i": 1, "j": 2, "k": 1})


def test_rule_table_shape():
    assert len(RULES) == 17
    for r in RULES.values():
        heights = [sum(1 for g, _ in side if g == "r") for side in (r.lhs, r.rhs)]
        assert (heights[0] > heights[1]) == (r.kind is Kind.REDUCING)


@pytest.mark.parametrize("m", [4, 5])
def test_every_rule_against_diagrams(m):
    """lhs and rhs give the same Brauer diagram once delta is booked."""
    sys = root_system(f"A{m - 1}")
    for rule in all_rules(sys.diagram):
        lhs = eval_word_A(m, Word(rule.lhs))
        rhs = eval_word_A(m, Word(rule.rhs, rule.delta_change))
        assert lhs == rhs, rule


def test_every_rule_preserves_the_action(e6, e6_sets):
    for rule in all_rules(e6.diagram):
        for B in e6_sets[::7]:
            for side in Side:
                assert act_word(e6, Word(rule.lhs), side, B) == act_word(e6, Word(rule.rhs), side, B)


def test_reduce_examples(e6):
    assert reduce(e6, W("r3 r3")).word == Word()
    res = reduce(e6, W("e2 e3 e6 e5 e4 e3 e2 e4 e5 e6"))
    assert res.word == W("d^1 e2 e3 e6") and res.certified
    s0 = W("e6 e5 e4 r2 e3 e4 e5") * e_hat([6])
    res = reduce(e6, s0 * s0)
    assert res.word.height == 0 and res.certified
    assert homog_equiv(e6, res.word, e_hat([6])) is Equivalence.EQUIVALENT


@settings(deadline=None, max_examples=60)
@given(st.integers(0, 10**6))
def test_reduce_is_sound_on_e6(seed):
    e6 = root_system("E6")
    rng = random.Random(seed)
    w = random_word(rng, e6, rng.randint(0, 12))
    res = reduce(e6, w)
    assert res.word.height <= w.height
    for side in Side:
        assert act_word(e6, res.word, side, ()) == act_word(e6, w, side, ())
    assert reduce(e6, w) == res


@settings(deadline=None, max_examples=200)
@given(st.integers(0, 10**6), st.sampled_from([3, 4, 5, 6]))
def test_reduce_matches_diagrams(seed, m):
    sys = root_system(f"A{m - 1}")
    rng = random.Random(seed)
    w = random_word(rng, sys, rng.randint(0, 16)).times_delta(rng.randint(-3, 3))
    res = reduce(sys, w)
    assert res.certified
    assert eval_word_A(m, res.word) == eval_word_A(m, w)
    assert res.word.height == eval_word_A(m, w).crossings()


def test_reduce_reaches_het_on_canonical_words(e6, e6_sets):
    for B in e6_sets[1::5]:
        a = build_aB(e6, B).word
        res = reduce(e6, a)
        assert res.certified and res.word.height == adm.set_height(e6, B) == a.height


def test_homog_equiv_examples(e6):
    a3 = root_system("A3")
    w = W("r1 e2 e5 r3")
    assert homog_equiv(e6, w, w) is Equivalence.EQUIVALENT
    assert homog_equiv(e6, W("e1 e4"), W("e4 e1")) is Equivalence.EQUIVALENT
    assert homog_equiv(a3, W("e2 r1"), W("e2 e3 e2 r1")) is Equivalence.EQUIVALENT
    assert homog_equiv(e6, W("r1"), W("e1")) is Equivalence.NOT_FOUND
    assert homog_equiv(e6, W("e1 e1"), W("e1")) is Equivalence.NOT_FOUND
    assert homog_equiv(e6, W("e1 e1"), W("d^1 e1")) is Equivalence.EQUIVALENT


def test_homog_equiv_is_a_congruence(e6):
    rng = random.Random(5)
    u, v = W("e2 r1"), W("e2 e4 e2 r1")
    assert homog_equiv(e6, u, v) is Equivalence.EQUIVALENT
    for _ in range(20):
        x, y = random_word(rng, e6, rng.randint(0, 3)), random_word(rng, e6, rng.randint(0, 3))
        assert homog_equiv(e6, x * u * y, x * v * y) is Equivalence.EQUIVALENT


def test_perturbation_stays_in_class(e6):
    rng = random.Random(2)
    for _ in range(30):
        w = random_word(rng, e6, 8)
        p = perturb(e6, w, rng)
        assert p.height == w.height
        assert homog_equiv(e6, p, w) is Equivalence.EQUIVALENT
        s = shuffle_commuting(e6, w, rng)
        assert sorted(s.tokens) == sorted(w.tokens)


def test_caps_validation():
    with pytest.raises(ValueError):
        SearchCaps(0, 10)
    assert SearchCaps(2, 5).escalated() == SearchCaps(6, 20)


def test_tiny_caps_report_saturation(e6):
    rng = random.Random(0)
    while True:
        w = random_word(rng, e6, 12)
        if reduce(e6, w).visited > 50:
            break
    res = reduce(e6, w, SearchCaps(1, 3))
    assert not res.certified and res.saturated
    assert res.word.height <= w.height
