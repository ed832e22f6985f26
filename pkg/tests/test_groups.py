import numpy as np
import pytest

from pchar.errors import GroupFileError, ResourceLimitError
from pchar.groupfile import parse_group_text
from pchar.groups import (
    center,
    check_group_axioms,
    conjugacy_classes,
    cyclic_group,
    derived_subgroup,
    direct_product,
    function_power_semidirect,
    group_from_perm_generators,
    group_prime,
    heisenberg_extraspecial,
    is_nilpotent,
    is_normal,
    normal_subgroups_between,
    subgroup,
    subgroup_closure,
)

Q8_TEXT = """perm 8
2 3 1 0 7 6 4 5
4 5 6 7 1 0 3 2
"""


def brute_center(g):
    return [
        z
        for z in range(g.order)
        if all(g.mul(z, x) == g.mul(x, z) for x in range(g.order))
    ]


def brute_classes(g):
    """Exhaustive conjugation, independent of the orbit algorithm."""
    seen = set()
    classes = []
    for x in range(g.order):
        if x in seen:
            continue
        cls = {g.mul(g.mul(g.inv(y), x), y) for y in range(g.order)}
        seen |= cls
        classes.append(frozenset(cls))
    return set(classes)


def test_cyclic_basics():
    assert cyclic_group(1).order == 1
    c3 = cyclic_group(3)
    assert c3.element_orders()[1] == 3
    assert cyclic_group(5).inv(2) == 3
    with pytest.raises(ValueError):
        cyclic_group(0)


def test_direct_product_c2_c3_is_c6():
    g = direct_product(cyclic_group(2), cyclic_group(3))
    assert g.order == 6
    # element (1,1) has index 1*3+1 = 4 (left factor most significant)
    assert g.element_orders()[4] == 6
    check_group_axioms(g)


def test_direct_product_with_trivial():
    g = direct_product(cyclic_group(1), cyclic_group(7))
    assert g.order == 7
    assert sorted(g.element_orders().tolist()) == [1] + [7] * 6


def test_direct_product_q8_c3_center_against_brute_force():
    q8 = parse_group_text(Q8_TEXT, "q8")
    g = direct_product(q8, cyclic_group(3))
    assert g.order == 24
    z = center(g)
    assert sorted(z.members) == brute_center(g)
    assert z.order == 6


def test_direct_product_cap():
    with pytest.raises(ResourceLimitError):
        direct_product(cyclic_group(1000), cyclic_group(1000), cap=200_000)


def test_heisenberg_m1_is_cyclic():
    assert heisenberg_extraspecial(3, 1).order == 3
    assert heisenberg_extraspecial(7, 1).element_orders()[1] == 7


def test_heisenberg_3_2_structure():
    h = heisenberg_extraspecial(3, 2)
    assert h.order == 27
    assert h.exponent() == 3
    assert center(h).order == 3
    assert sorted(center(h).members) == brute_center(h)
    check_group_axioms(h)


def test_heisenberg_5_2_exponent():
    h = heisenberg_extraspecial(5, 2)
    assert h.order == 125
    orders = h.element_orders()
    assert orders[0] == 1 and (orders[1:] == 5).all()


def test_heisenberg_rejects_bad_p():
    with pytest.raises(ValueError):
        heisenberg_extraspecial(2, 2)
    with pytest.raises(ValueError):
        heisenberg_extraspecial(9, 2)
    with pytest.raises(ValueError):
        heisenberg_extraspecial(3, 0)


def test_function_power_orders():
    assert function_power_semidirect(cyclic_group(3), 3).order == 81
    assert function_power_semidirect(cyclic_group(5), 5).order == 5**6
    assert function_power_semidirect(cyclic_group(1), 3).order == 3
    with pytest.raises(ResourceLimitError):
        function_power_semidirect(cyclic_group(7), 7)
    with pytest.raises(ValueError):
        function_power_semidirect(cyclic_group(3), 4)


def test_function_power_order_formula():
    for p, m in ((3, 1), (3, 2), (5, 1)):
        e = heisenberg_extraspecial(p, m)
        g = function_power_semidirect(e, p)
        assert g.order == p ** (p * (2 * m - 1) + 1)
        assert center(g).order == p


def test_function_power_axioms_sampled():
    g = function_power_semidirect(cyclic_group(3), 3)
    check_group_axioms(g)  # order 81 <= 512: exhaustive
    big = function_power_semidirect(cyclic_group(5), 5)
    check_group_axioms(big, seed=1, sample_triples=100_000)


def test_perm_group_c4():
    g = group_from_perm_generators(4, [(1, 2, 3, 0)], name="c4")
    assert g.order == 4
    assert sorted(g.element_orders().tolist()) == [1, 2, 4, 4]


def test_perm_group_empty_generators_is_trivial():
    g = group_from_perm_generators(4, [], name="trivial")
    assert g.order == 1


def test_q8_from_perm_file_against_brute_force():
    q8 = parse_group_text(Q8_TEXT, "q8")
    assert q8.order == 8
    check_group_axioms(q8)
    cd = conjugacy_classes(q8)
    assert cd.num_classes == 5
    assert sorted(cd.sizes.tolist()) == [1, 1, 2, 2, 2]
    expected = brute_classes(q8)
    got = {frozenset(int(x) for x in cd.member_lists[c]) for c in range(5)}
    assert got == expected
    invol = [c for c in range(5) if cd.rep_orders[c] == 2]
    assert len(invol) == 1 and cd.sizes[invol[0]] == 1


def test_perm_parse_determinism():
    a = parse_group_text(Q8_TEXT, "q8")
    b = parse_group_text(Q8_TEXT, "q8")
    n = a.order
    pairs = np.arange(n)
    assert np.array_equal(
        a.mul_vec(pairs[:, None], pairs[None, :]), b.mul_vec(pairs[:, None], pairs[None, :])
    )


def test_group_file_errors_carry_line_numbers():
    with pytest.raises(GroupFileError) as exc:
        parse_group_text("perm 4\n0 1 2 2\n")
    assert exc.value.line == 2
    with pytest.raises(GroupFileError):
        parse_group_text("")
    with pytest.raises(GroupFileError) as exc:
        parse_group_text("table 2\n0 1\n1 2\n")
    assert "out of range" in str(exc.value)
    with pytest.raises(GroupFileError) as exc:
        parse_group_text("perm 3\n0 1 x\n")
    assert exc.value.line == 2


def test_table_format_roundtrip():
    text = "table 3\n0 1 2\n1 2 0\n2 0 1\n"
    g = parse_group_text(text, "c3table")
    assert g.order == 3
    assert g.element_orders()[1] == 3
    # a table with identity at a nonzero index still parses
    g2 = parse_group_text("table 2\n1 0\n0 1\n")
    assert g2.identity == 1
    # Latin square with no two-sided identity is rejected
    with pytest.raises(GroupFileError):
        parse_group_text("table 3\n1 0 2\n0 2 1\n2 1 0\n")


def test_conjugacy_cyclic_is_singletons():
    cd = conjugacy_classes(cyclic_group(5))
    assert cd.num_classes == 5
    assert (cd.sizes == 1).all()


def test_conjugacy_heisenberg_against_brute_force():
    h = heisenberg_extraspecial(3, 2)
    cd = conjugacy_classes(h)
    assert cd.num_classes == 11
    assert sorted(cd.sizes.tolist()) == [1, 1, 1] + [3] * 8
    assert brute_classes(h) == {frozenset(int(x) for x in m) for m in cd.member_lists}


def test_class_equation_and_inverse_class():
    for g in (parse_group_text(Q8_TEXT, "q8"), heisenberg_extraspecial(3, 2), cyclic_group(12)):
        cd = conjugacy_classes(g)
        assert int(cd.sizes.sum()) == g.order
        assert all(g.order % int(s) == 0 for s in cd.sizes)
        assert np.array_equal(cd.inverse_class[cd.inverse_class], np.arange(cd.num_classes))
        assert cd.sizes[0] == 1 and cd.reps[0] == g.identity


def test_center_equals_union_of_singleton_classes():
    for g in (parse_group_text(Q8_TEXT, "q8"), heisenberg_extraspecial(5, 2)):
        cd = conjugacy_classes(g)
        singles = sorted(
            int(cd.reps[c]) for c in range(cd.num_classes) if cd.sizes[c] == 1
        )
        assert sorted(center(g).members) == singles


def test_normal_subgroups_between_c9():
    c9 = cyclic_group(9)
    found = normal_subgroups_between(c9, subgroup(c9, [0], validate=False))
    assert len(found) == 1 and found[0].order == 3


def test_normal_subgroups_between_q8_against_brute_force():
    q8 = parse_group_text(Q8_TEXT, "q8")
    z = center(q8)
    found = normal_subgroups_between(q8, z)
    assert len(found) == 3 and all(s.order == 4 for s in found)
    # brute-force: all order-4 subgroups containing the center
    brute = set()
    for x in range(8):
        s = subgroup_closure(q8, list(z.members) + [x])
        if s.order == 4:
            brute.add(s.members)
    assert {s.members for s in found} == brute


def test_normal_subgroups_between_heisenberg():
    h = heisenberg_extraspecial(3, 2)
    found = normal_subgroups_between(h, center(h))
    assert len(found) == 4 and all(s.order == 9 for s in found)
    assert all(is_normal(h, s) for s in found)


def test_normal_subgroups_between_requires_normal_lower():
    q8 = parse_group_text(Q8_TEXT, "q8")
    # a non-normal "lower": Q8 has none (all subgroups normal), use D4
    d4 = group_from_perm_generators(4, [(1, 2, 3, 0), (1, 0, 3, 2)], name="d4")
    refl = subgroup_closure(d4, [d4.generating_set()[1]])
    assert refl.order == 2
    if not is_normal(d4, refl):
        with pytest.raises(ValueError):
            normal_subgroups_between(d4, refl)


def test_derived_subgroup_q8():
    q8 = parse_group_text(Q8_TEXT, "q8")
    d = derived_subgroup(q8)
    assert d.order == 2
    assert set(d.members) == set(center(q8).members)


def test_group_prime_and_nilpotency():
    assert group_prime(heisenberg_extraspecial(3, 2)) == 3
    assert group_prime(cyclic_group(6)) is None
    q8 = parse_group_text(Q8_TEXT, "q8")
    assert is_nilpotent(direct_product(q8, cyclic_group(3)))
    s3 = group_from_perm_generators(3, [(1, 2, 0), (1, 0, 2)], name="s3")
    assert s3.order == 6
    assert not is_nilpotent(s3)


def test_subgroup_validation():
    c6 = cyclic_group(6)
    s = subgroup(c6, [0, 2, 4])
    assert s.order == 3
    with pytest.raises(ValueError):
        subgroup(c6, [0, 2])  # not closed
    with pytest.raises(ValueError):
        subgroup(c6, [2, 4])  # no identity


def test_mixed_radix_indexing_documented_order():
    g = direct_product(cyclic_group(2), cyclic_group(3))
    # index of (a, b) is a*3 + b; (1,2)*(1,2) = (0,1) -> index 1
    assert g.mul(1 * 3 + 2, 1 * 3 + 2) == 0 * 3 + 1
