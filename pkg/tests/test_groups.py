from random import Random

import pytest

from lsl.errors import IngestionError, OrderLimitExceeded
from lsl.field import GF
from lsl.groups import (
    GroupPresentation,
    catalog_group,
    enumerate_group,
    perm_inverse,
    perm_mul,
)
from lsl.matrix import Matrix
from lsl.modules import permutation_module, regular_module


def test_perm_composition_is_left_to_right():
    a = (1, 2, 0)  # 0->1->2->0
    b = (0, 2, 1)
    # apply a then b: 0 -> 1 -> 2
    assert perm_mul(a, b)[0] == 2
    assert perm_mul(a, perm_inverse(a)) == (0, 1, 2)


def test_catalog_orders():
    assert enumerate_group(catalog_group("C2")).order == 2
    assert enumerate_group(catalog_group("C3")).order == 3
    assert enumerate_group(catalog_group("C4")).order == 4
    assert enumerate_group(catalog_group("3:2")).order == 6
    assert enumerate_group(catalog_group("A4")).order == 12
    assert enumerate_group(catalog_group("L3_2")).order == 168
    assert enumerate_group(catalog_group("L3_3")).order == 5616


def test_catalog_default_fields():
    assert catalog_group("C2").default_field == (2, 1)
    assert catalog_group("C4").default_field == (2, 1)
    assert catalog_group("3:2").default_field == (3, 1)
    assert catalog_group("A4").default_field == (2, 2)
    assert catalog_group("L3_2").default_field == (2, 1)
    assert catalog_group("L3_3").default_field == (2, 1)


def test_catalog_rejects_unknown():
    with pytest.raises(IngestionError):
        catalog_group("M11")
    with pytest.raises(IngestionError):
        catalog_group("4:2")  # 4 not prime
    with pytest.raises(IngestionError):
        catalog_group("5:3")  # 3 does not divide 4


def test_enumeration_structure():
    t = enumerate_group(catalog_group("A4"))
    ident = tuple(range(4))
    assert t.elements[0] == ident
    # each generator's product table is a permutation of element indices
    for row in t.gen_product:
        assert sorted(row) == list(range(t.order))
    # generator orders divide the group order
    for g in t.presentation.generators:
        order = 1
        cur = g
        while cur != ident:
            cur = perm_mul(cur, g)
            order += 1
        assert t.order % order == 0


def test_order_limit():
    with pytest.raises(OrderLimitExceeded):
        enumerate_group(catalog_group("L3_2"), max_order=100)


def test_word_index_matches_products():
    t = enumerate_group(catalog_group("3:2"))
    rng = Random(5)
    for _ in range(20):
        word = [rng.randrange(t.ngens) for _ in range(rng.randrange(1, 8))]
        cur = tuple(range(t.presentation.degree))
        for g in word:
            cur = perm_mul(cur, t.presentation.generators[g])
        assert t.elements[t.word_index(word)] == cur


def test_regular_module_is_permutation_action():
    t = enumerate_group(catalog_group("C2"))
    f = GF(2)
    m = regular_module(t, f)
    assert m.dim == 2
    assert m.action[0].rows_as_lists() == [[0, 1], [1, 0]]


@pytest.mark.parametrize("name,field", [("A4", (2, 2)), ("L3_2", (2, 1)), ("3:2", (3, 1))])
def test_regular_module_respects_products(name, field):
    t = enumerate_group(catalog_group(name))
    f = GF(*field)
    m = regular_module(t, f)
    assert m.dim == t.order
    # permutation matrices: exactly one 1 per row
    for a in m.action:
        for i in range(a.nrows):
            assert sum(a.row_list(i)) == 1
    rng = Random(9)
    for _ in range(8):
        word = [rng.randrange(t.ngens) for _ in range(rng.randrange(1, 9))]
        prod = Matrix.identity(f, m.dim)
        for g in word:
            prod = prod.matmul(m.action[g])
        idx = t.word_index(word)
        # the product matrix is right translation by the word's element
        for i in range(m.dim):
            assert prod.entry(i, t.product_index(i, idx)) == 1


def test_permutation_module_dims():
    assert permutation_module(catalog_group("C2"), GF(2)).dim == 2
    assert permutation_module(catalog_group("L3_2"), GF(2)).dim == 7
    assert permutation_module(catalog_group("L3_3"), GF(2)).dim == 13


def test_group_presentation_validation():
    with pytest.raises(IngestionError):
        GroupPresentation("bad", 3, ((0, 1, 1),))
    with pytest.raises(IngestionError):
        GroupPresentation("empty", 3, ())
