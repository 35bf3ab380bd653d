import json

import pytest

from patpop.budget import Budget
from patpop.errors import BudgetExceeded, NotAvoiding
from patpop.perm import avoiders, catalan
from patpop.popularity import (
    PopularityTable,
    build_table,
    equipopularity_classes,
    popularity,
    popularity_recurrence,
    popularity_split,
    popularity_table,
)

# brute-force values, frozen
A_3241 = {4: 1, 5: 15, 6: 141, 7: 1064, 8: 7050, 9: 42849}
A_3421 = {4: 1, 5: 16, 6: 158, 7: 1240, 8: 8485, 9: 52984}


def test_small_values():
    assert popularity((3, 2, 4, 1), 4) == 1
    assert popularity((2, 1), 3) == 8
    assert popularity((1, 2), 3) == 7
    assert popularity((1, 2, 3), 2) == 0


def test_empty_pattern_conventions():
    assert popularity((), 5) == catalan(5)
    assert popularity((), 5, empty_convention=True) == 1


def test_split():
    assert popularity_split((3, 2, 1), 3) == (1, 0)
    assert popularity_split((2, 1), 3) == (5, 3)
    for n in range(3, 7):
        assert sum(popularity_split((2, 3, 1), n)) == popularity((2, 3, 1), n)


@pytest.mark.parametrize("k, n", [(2, 5), (3, 6), (4, 7)])
def test_two_brute_routes_agree(k, n):
    table = popularity_table(k, n)
    assert table == {tau: popularity(tau, n) for tau in avoiders(k)}


@pytest.mark.parametrize("n", range(4, 10))
def test_recurrences(n):
    assert popularity((3, 2, 4, 1), n) == A_3241[n]
    assert popularity((3, 4, 2, 1), n) == A_3421[n]
    assert popularity_recurrence("3241", n) == A_3241[n]
    assert popularity_recurrence("3421", n) == A_3421[n]


def test_printed_recurrence_undercounts():
    assert popularity_recurrence("3241", 4, printed=True) == 1
    assert popularity_recurrence("3421", 4, printed=True) == 1
    assert popularity_recurrence("3241", 5, printed=True) == 14
    assert popularity_recurrence("3241", 9, printed=True) < A_3241[9]


def test_recurrence_rejects_other_input():
    with pytest.raises(ValueError):
        popularity_recurrence("321", 5)
    with pytest.raises(ValueError):
        popularity_recurrence("3241", 3)


def test_equipopularity_classes():
    cls = equipopularity_classes(3, 5)
    assert [c.patterns for c in cls] == [[(1, 2, 3)], [(2, 1, 3), (2, 3, 1), (3, 1, 2)], [(3, 2, 1)]]
    two = equipopularity_classes(2, 4)
    assert [c.patterns for c in two] == [[(1, 2)], [(2, 1)]]


def test_guards():
    with pytest.raises(NotAvoiding):
        popularity((1, 3, 2), 5)
    with pytest.raises(BudgetExceeded):
        popularity((2, 1), 11)
    with pytest.raises(BudgetExceeded):
        popularity((2, 1), 9, budget=Budget(cells=100))


def test_table_export_is_sorted_and_stable():
    t = build_table([(3, 4, 2, 1), (3, 2, 4, 1)], [5, 4], ("brute", "recurrence"))
    lines = t.to_csv().splitlines()
    assert lines[0] == "pattern,n,value,method"
    assert lines[1] == "3241,4,1,brute"
    assert lines[2] == "3241,4,1,recurrence"
    rows = json.loads(t.to_json())["rows"]
    assert len(rows) == 8
    assert t.to_json() == build_table([(3, 2, 4, 1), (3, 4, 2, 1)], [4, 5], ("recurrence", "brute")).to_json()


def test_table_validation():
    t = PopularityTable()
    t.add((2, 1), 3, 8, "brute")
    with pytest.raises(ValueError):
        t.add((2, 1), 3, 8, "brute")
    with pytest.raises(ValueError):
        t.add((2, 1), 4, -1, "brute")
    with pytest.raises(ValueError):
        t.add((2, 1), 4, 1, "guess")
