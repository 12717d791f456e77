import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zsl.classifier import (
    ExtremalPattern,
    enumerate_extremal_pof,
    generator_change_note,
    match_pattern,
    patterns,
    predicted_count,
    realize,
    verify_families_pof,
    verify_theorem,
)
from zsl.group import Group, MetacyclicParams
from zsl.products import is_product_one_free
from zsl.sequence import parse_sequence

G83 = Group.metacyclic(8, 3)
G85 = Group.metacyclic(8, 5)


def test_match_examples():
    assert match_pattern(parse_sequence(G83, "(y^3)^[7] * x*y^2")) == ExtremalPattern("I", 3, 2)
    assert match_pattern(parse_sequence(G85, "(x*y)^[7] * x*y^2")) == ExtremalPattern("IIxx", 1, 2)
    assert match_pattern(parse_sequence(G85, "(x*y^3)^[7] * y^5")) == ExtremalPattern("IIxy", 3, 5)
    # same shape, but the type II families only exist for the modular twist
    assert match_pattern(parse_sequence(G83, "(x*y)^[7] * x*y^2")) is None
    assert match_pattern(parse_sequence(G83, "(y^2)^[7] * x")) is None
    assert match_pattern(parse_sequence(G83, "(y)^[6] * x * x*y")) is None


def test_match_requires_length_n():
    with pytest.raises(ValueError):
        match_pattern(parse_sequence(G83, "(y)^[3]"))


@pytest.mark.parametrize(
    "n, s, counts",
    [
        (8, 3, {"I": 32, "IIxx": 0, "IIxy": 0}),
        (8, 5, {"I": 32, "IIxx": 16, "IIxy": 16}),
        (12, 5, {"I": 48, "IIxx": 0, "IIxy": 0}),
        (12, 7, {"I": 48, "IIxx": 0, "IIxy": 0}),
        (16, 7, {"I": 128, "IIxx": 0, "IIxy": 0}),
        (16, 9, {"I": 128, "IIxx": 64, "IIxy": 64}),
    ],
)
def test_families_are_product_one_free(n, s, counts):
    out = verify_families_pof((n, s))
    assert out["failures"] == []
    assert out["families"] == counts
    assert out["checked"] == predicted_count((n, s)) == len(patterns((n, s)))


def test_families_reject_other_pairs():
    with pytest.raises(ValueError):
        verify_families_pof((8, 7))


@settings(max_examples=100)
@given(st.sampled_from([(8, 3), (8, 5), (12, 5), (16, 9)]).flatmap(
    lambda p: st.tuples(st.just(p), st.sampled_from(patterns(p)))
))
def test_realize_match_round_trip(data):
    p, pat = data
    S = realize(pat, p)
    assert S.length == p[0]
    assert match_pattern(S) == pat


def test_patterns_are_disjoint():
    for p in [(8, 5), (16, 9)]:
        seqs = [realize(pat, p) for pat in patterns(p)]
        assert len(set(seqs)) == len(seqs)


@pytest.mark.parametrize("n, s, expected", [(8, 3, 32), (8, 5, 64), (12, 5, 48), (12, 7, 48)])
def test_verify_theorem(n, s, expected):
    report = verify_theorem((n, s), stats=False)
    assert report["ok"]
    assert report["missing"] == [] and report["extra"] == []
    assert report["predicted_count"] == report["enumerated_count"] == expected
    assert report["complete"]
    assert sum(report["count_by_case"].values()) == expected
    assert report["pof_count_by_length"][n] == expected


def test_matcher_is_sound_on_enumeration():
    for p in [(8, 3), (8, 5)]:
        for S in enumerate_extremal_pof(p):
            assert is_product_one_free(S)[0]
            assert match_pattern(S) is not None


def test_case_split_for_modular_group():
    cases = verify_theorem((8, 5), stats=False)["count_by_case"]
    # Type I has one term outside H, Type IIxx all n, Type IIxy n-1
    assert cases == {"a": 0, "b": 32, "c": 0, "d": 32}


def test_partial_report_under_time_budget():
    report = verify_theorem((16, 9), time_budget_ms=300, stats=False)
    assert not report["complete"]
    assert not report["ok"]
    assert report["extra"] == []
    assert report["coverage"]["roots_total"] == 31
    assert report["coverage"]["roots_done"] == len(report["coverage"]["first_elements_done"])


def test_sequences_rows():
    report = verify_theorem((8, 3), stats=False, include_sequences=True)
    rows = report["sequences"]
    assert len(rows) == 32
    assert {r["kind"] for r in rows} == {"I"}


@pytest.mark.parametrize("v, generates", [(1, True), (3, True), (2, False)])
def test_generator_change(v, generates):
    note = generator_change_note(MetacyclicParams(8, 5), v)
    assert note["generates_group"] is generates
    assert note["group_order"] == 16
    assert note["claim_applies"] is generates
