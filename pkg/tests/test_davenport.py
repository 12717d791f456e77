import pytest

from zsl.davenport import small_davenport, verify_davenport_claims
from zsl.group import Group
from zsl.products import is_product_one_free
from zsl.sequence import Sequence, concat, parse_sequence


@pytest.mark.parametrize("m", range(2, 13))
def test_cyclic_davenport(m):
    r = small_davenport(Group.cyclic(m), m)
    assert r.d == m - 1
    assert r.exhaustive and not r.max_len_reached
    assert r.by_length[m] == 0


def test_cyclic_five_witness_is_least_in_index_order():
    r = small_davenport(Group.cyclic(5), 5)
    assert r.witness == parse_sequence(Group.cyclic(5), "(y)^[4]")


@pytest.mark.parametrize("n, s", [(8, 3), (8, 5), (12, 5), (12, 7)])
def test_metacyclic_davenport(n, s):
    group = Group.metacyclic(n, s)
    r = small_davenport(group, n + 1)
    assert r.d == n
    assert r.exhaustive
    assert r.witness.length == n
    assert is_product_one_free(r.witness)[0]
    # no single extra term keeps it product-one free
    for g in range(group.order):
        longer = concat(r.witness, Sequence.from_indices(group, [g]))
        assert not is_product_one_free(longer)[0]


def test_max_len_reached_is_only_a_lower_bound():
    r = small_davenport(Group.metacyclic(8, 3), 5)
    assert r.d == 5
    assert r.max_len_reached and not r.exhaustive


def test_time_budget_gives_non_exhaustive_result():
    r = small_davenport(Group.metacyclic(16, 9), 17, time_budget_ms=50)
    assert not r.exhaustive


def test_workers_do_not_change_the_answer():
    group = Group.metacyclic(8, 5)
    one = small_davenport(group, 9)
    two = small_davenport(group, 9, workers=2)
    assert (one.d, one.witness, one.by_length) == (two.d, two.witness, two.by_length)
    assert one.nodes_explored == two.nodes_explored


def test_verify_claims():
    out = verify_davenport_claims([(8, 3), (8, 5)], stats=False)
    assert out["falsifications"] == []
    assert [r["d"] for r in out["records"]] == [8, 8]
    assert all(r["ok"] for r in out["records"])
    assert verify_davenport_claims([]) == {"records": [], "falsifications": []}


@pytest.mark.parametrize("pair", [(8, 7), (8, 1), (8, 2)])
def test_verify_claims_rejects_other_pairs(pair):
    with pytest.raises(ValueError):
        verify_davenport_claims([pair])


def test_json_without_stats_is_stable():
    a = small_davenport(Group.metacyclic(8, 3), 9).to_json(stats=False)
    b = small_davenport(Group.metacyclic(8, 3), 9).to_json(stats=False)
    assert a == b and "stats" not in a
    assert a["d"] == 8 and a["pof_count_by_length"][8] == 32
