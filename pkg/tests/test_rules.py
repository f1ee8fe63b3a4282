import itertools

import pytest

from metaca.rules import (
    Convention,
    Family,
    RuleTable,
    apply_rule,
    ascending_bits,
    classify,
    complement,
    family_lookup,
    family_members,
    from_number,
    mirror,
    reverse_bits8,
    to_number,
)

ALL = [from_number(n) for n in range(256)]
EXAMPLE = RuleTable.from_string("01010100")


# -- independent oracles on Wolfram numbers ---------------------------------


def wolfram_reflect(w):
    out = 0
    for l, c, r in itertools.product((0, 1), repeat=3):
        if (w >> (4 * l + 2 * c + r)) & 1:
            out |= 1 << (4 * r + 2 * c + l)
    return out


def wolfram_conjugate(w):
    out = 0
    for l, c, r in itertools.product((0, 1), repeat=3):
        if not (w >> (4 * (1 - l) + 2 * (1 - c) + (1 - r))) & 1:
            out |= 1 << (4 * l + 2 * c + r)
    return out


def test_apply_rule_listing():
    assert apply_rule(EXAMPLE, 0, 0, 1) == 1
    assert apply_rule(EXAMPLE, 1, 1, 1) == 0
    expected = [0, 1, 0, 1, 0, 1, 0, 0]
    for n, (l, c, r) in enumerate(itertools.product((0, 1), repeat=3)):
        assert apply_rule(EXAMPLE, l, c, r) == expected[n]


def test_zero_rule_outputs_zero():
    zero = RuleTable.from_string("00000000")
    assert all(apply_rule(zero, *t) == 0 for t in itertools.product((0, 1), repeat=3))


def test_numbering_of_example():
    assert to_number(EXAMPLE, Convention.ASCENDING) == 84
    assert to_number(EXAMPLE, Convention.WOLFRAM) == 42
    assert to_number(RuleTable((0,) * 8), Convention.WOLFRAM) == 0


@pytest.mark.parametrize("conv", list(Convention))
def test_round_trip_all(conv):
    for n in range(256):
        assert to_number(from_number(n, conv), conv) == n
    for r in ALL:
        assert from_number(to_number(r, conv), conv) == r


def test_conventions_are_bit_reversals():
    for r in ALL:
        a = to_number(r, Convention.ASCENDING)
        w = to_number(r, Convention.WOLFRAM)
        assert w == int(f"{a:08b}"[::-1], 2) == reverse_bits8(a)


@pytest.mark.parametrize("bad", [-1, 256, 1000])
def test_from_number_range(bad):
    with pytest.raises(ValueError):
        from_number(bad)


@pytest.mark.parametrize("text", ["0101010", "010101011", "0101010x", ""])
def test_bad_literals(text):
    with pytest.raises(ValueError):
        RuleTable.from_string(text)


def test_string_round_trip():
    for r in ALL:
        assert RuleTable.from_string(str(r)) == r


def test_mirror_examples():
    ones = RuleTable((1,) * 8)
    assert mirror(ones) == ones
    m = mirror(from_number(110, Convention.WOLFRAM))
    assert to_number(m, Convention.WOLFRAM) == wolfram_reflect(110) == 124


def test_complement_examples():
    assert complement(RuleTable((0,) * 8)) == RuleTable((1,) * 8)
    c = complement(from_number(110, Convention.WOLFRAM))
    assert to_number(c, Convention.WOLFRAM) == wolfram_conjugate(110) == 137


def test_transforms_match_oracles_everywhere():
    for w in range(256):
        r = from_number(w, Convention.WOLFRAM)
        assert to_number(mirror(r), Convention.WOLFRAM) == wolfram_reflect(w)
        assert to_number(complement(r), Convention.WOLFRAM) == wolfram_conjugate(w)


def test_commuting_involutions():
    for r in ALL:
        assert mirror(mirror(r)) == r
        assert complement(complement(r)) == r
        assert mirror(complement(r)) == complement(mirror(r))


def test_mirror_fixed_points_are_symmetric():
    for r in ALL:
        symmetric = all(r[4 * l + 2 * c + rr] == r[4 * rr + 2 * c + l]
                        for l, c, rr in itertools.product((0, 1), repeat=3))
        assert (mirror(r) == r) == symmetric


def test_family_sizes_and_closure():
    for r in ALL:
        fam = family_members(r)
        assert len(fam) in (1, 2, 4)
        for m in fam:
            assert family_members(m) == fam


@pytest.mark.parametrize(
    "wolfram, tag",
    [(110, Family.RULE_110), (124, Family.RULE_110), (0, Family.OTHER),
     (30, Family.RULE_30), (90, Family.RULE_90), (184, Family.RULE_184)],
)
def test_classify(wolfram, tag):
    assert classify(from_number(wolfram, Convention.WOLFRAM)) is tag


def test_family_110_members_by_oracle():
    members = {110, wolfram_reflect(110), wolfram_conjugate(110),
               wolfram_conjugate(wolfram_reflect(110))}
    assert members == {110, 124, 137, 193}
    for w in range(256):
        in_family = classify(from_number(w, Convention.WOLFRAM)) is Family.RULE_110
        assert in_family == (w in members)


def test_classify_invariant_under_transforms():
    for r in ALL:
        assert classify(r) is classify(mirror(r)) is classify(complement(r))


def test_family_lookup_agrees_with_classify():
    table = family_lookup()
    order = [Family.RULE_110, Family.RULE_30, Family.RULE_90, Family.RULE_184]
    for n in range(256):
        fam = classify(from_number(n))
        assert table[n] == (-1 if fam is Family.OTHER else order.index(fam))


def test_ascending_bits():
    assert ascending_bits(84).tolist() == [0, 1, 0, 1, 0, 1, 0, 0]
    for n in range(256):
        assert tuple(ascending_bits(n)) == from_number(n).outputs
