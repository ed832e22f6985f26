import numpy as np
import pytest

from pchar.characters import (
    Character,
    char_center,
    character_table,
    conjugate,
    decompose,
    eta,
    induce,
    inner_product,
    is_faithful,
    kernel,
    product,
    restrict,
    subgroup_view,
    vanishes_outside,
)
from pchar.cyclotomic import cyc_root, Cyclotomic
from pchar.errors import NotACharacterError
from pchar.groupfile import parse_group_text
from pchar.groups import (
    center,
    conjugacy_classes,
    cyclic_group,
    derived_subgroup,
    direct_product,
    function_power_semidirect,
    heisenberg_extraspecial,
    normal_subgroups_between,
    subgroup,
)

Q8_TEXT = """perm 8
2 3 1 0 7 6 4 5
4 5 6 7 1 0 3 2
"""


@pytest.fixture(scope="module")
def q8():
    return parse_group_text(Q8_TEXT, "q8")


@pytest.fixture(scope="module")
def tq8(q8):
    return character_table(q8)


def trivial_row(table):
    rows = [r for r in range(table.num_rows) if kernel(table.row(r)).order == table.group.order]
    assert len(rows) == 1
    return rows[0]


def test_cyclic_table_matches_dual_group():
    for n in (3, 5):
        t = character_table(cyclic_group(n))
        assert t.degree_multiset() == {1: n}
        # every row is k -> zeta_n^(j*k) for exactly one j
        seen = set()
        for r in range(n):
            row = t.row(r)
            for j in range(n):
                if all(row.value(c) == cyc_root(n, j * int(t.conj.reps[c])) for c in range(n)):
                    seen.add(j)
        assert seen == set(range(n))


def test_q8_table_matches_hand_construction(q8, tq8):
    cd = tq8.conj
    # identify classes: identity, central involution, three order-4 classes
    ident = 0
    invol = next(c for c in range(5) if cd.sizes[c] == 1 and cd.rep_orders[c] == 2)
    four_classes = [c for c in range(5) if cd.sizes[c] == 2]
    assert len(four_classes) == 3

    def as_values(vals):
        return tuple(vals[c] for c in range(5))

    expected = set()
    # trivial
    expected.add(as_values({c: 1 for c in range(5)}))
    # three sign characters: kernel contains exactly one order-4 subgroup
    for keep in four_classes:
        vals = {ident: 1, invol: 1}
        for c in four_classes:
            vals[c] = 1 if c == keep else -1
        expected.add(as_values(vals))
    # the faithful degree-2 character
    vals = {ident: 2, invol: -2}
    for c in four_classes:
        vals[c] = 0
    expected.add(as_values(vals))

    got = set()
    for r in range(5):
        row = tq8.row(r)
        got.add(tuple(row.value(c).rational_integer() for c in range(5)))
    assert got == expected


def test_heisenberg_table_closed_form():
    h = heisenberg_extraspecial(3, 2)
    t = character_table(h)
    assert t.degree_multiset() == {1: 9, 3: 2}
    cd = t.conj
    central = [c for c in range(cd.num_classes) if cd.sizes[c] == 1]
    noncentral = [c for c in range(cd.num_classes) if cd.sizes[c] == 3]
    for r in range(t.num_rows):
        row = t.row(r)
        if row.degree == 3:
            # 3 * (central linear character) on the center, zero elsewhere
            assert all(row.value(c).is_zero() for c in noncentral)
            norms = [row.value(c) * row.value(c).conjugate() for c in central]
            assert all(v == 9 for v in norms)


def test_sum_of_degree_squares_and_linear_count():
    for g in (
        parse_group_text(Q8_TEXT, "q8"),
        heisenberg_extraspecial(3, 2),
        direct_product(cyclic_group(2), cyclic_group(4)),
        function_power_semidirect(cyclic_group(3), 3),
    ):
        t = character_table(g)
        assert int((t.degrees.astype(object) ** 2).sum()) == g.order
        n_linear = sum(1 for d in t.degrees if d == 1)
        assert n_linear == g.order // derived_subgroup(g).order


def test_row_orthogonality_via_independent_cyclotomic_arithmetic(tq8):
    # oracle: recompute inner products with the Fraction-based Cyclotomic type
    cd = tq8.conj
    for i in range(5):
        for j in range(5):
            acc = Cyclotomic.from_rational(0, tq8.conductor)
            for c in range(cd.num_classes):
                term = tq8.row(i).value(c) * tq8.row(j).value(c).conjugate()
                acc = acc + term * int(cd.sizes[c])
            assert acc == (8 if i == j else 0)


def test_product_examples(tq8):
    triv = tq8.row(trivial_row(tq8))
    chi2 = tq8.row(4)
    assert product(triv, chi2) == chi2
    # linear times irreducible is irreducible
    lin = tq8.row(1)
    assert inner_product(product(lin, chi2), product(lin, chi2)) == 1
    sq = product(chi2, chi2)
    vals = sorted(sq.value(c).rational_integer() for c in range(5))
    assert vals == [0, 0, 0, 4, 4]


def test_conjugate_examples(tq8):
    chi2 = tq8.row(4)
    assert conjugate(chi2) == chi2  # real-valued
    t3 = character_table(cyclic_group(3))
    for r in range(3):
        assert conjugate(conjugate(t3.row(r))) == t3.row(r)
        # conjugation equals evaluation at the inverse class
        row = t3.row(r)
        conj_row = conjugate(row)
        for c in range(3):
            assert conj_row.value(c) == row.value(int(t3.conj.inverse_class[c]))
    nontriv = [r for r in range(3) if not np.array_equal(t3.row(r).mult, t3.row(trivial_row(t3)).mult)]
    assert conjugate(t3.row(nontriv[0])) == t3.row(nontriv[1])


def test_conjugate_is_involution_across_many_rows(tq8):
    tables = [
        tq8,
        character_table(cyclic_group(3)),
        character_table(heisenberg_extraspecial(5, 2)),
        character_table(heisenberg_extraspecial(7, 2)),
        character_table(function_power_semidirect(cyclic_group(3), 3)),
    ]
    rows_checked = 0
    for t in tables:
        inv_cls = t.conj.inverse_class
        for r in range(t.num_rows):
            row = t.row(r)
            back = conjugate(conjugate(row))
            assert back == row
            assert np.array_equal(conjugate(row).reduced(), row.reduced()[inv_cls])
            rows_checked += 1
    assert rows_checked >= 100


def test_inner_product_examples(tq8):
    for i in range(5):
        for j in range(5):
            assert inner_product(tq8.row(i), tq8.row(j)) == (1 if i == j else 0)
    sq = product(tq8.row(4), tq8.row(4))
    assert inner_product(sq, tq8.row(trivial_row(tq8))) == 1


def test_decompose_roundtrip(tq8):
    for r in range(5):
        d = decompose(tq8.row(r), tq8)
        assert d.pairs == ((r, 1),)
    sq = product(tq8.row(4), tq8.row(4))
    d = decompose(sq, tq8)
    assert d.support_size == 4
    assert all(m == 1 for _, m in d.pairs)
    assert all(int(tq8.degrees[r]) == 1 for r, _ in d.pairs)


def test_decompose_heisenberg_chi_chibar():
    t = character_table(heisenberg_extraspecial(3, 2))
    chi = next(t.row(r) for r in range(t.num_rows) if t.row(r).degree == 3)
    d = decompose(product(chi, conjugate(chi)), t)
    assert d.support_size == 9
    assert all(m == 1 for _, m in d.pairs)
    assert all(int(t.degrees[r]) == 1 for r, _ in d.pairs)


def test_decompose_rejects_non_characters(tq8):
    row = tq8.row(4)
    bad = row.mult.copy()
    # adding 1 to every exponent of a class is a no-op on the value (the full
    # root-of-unity sum vanishes), so tamper with a single exponent instead
    bad[1, 0] += 1
    f = Character(tq8.group, tq8.conj, tq8.conductor, bad)
    with pytest.raises(NotACharacterError):
        decompose(f, tq8)


def test_decompose_multiset_roundtrip(tq8):
    # 2*row0 + 3*row4 decomposes back exactly
    f_mult = 2 * tq8.mult[0] + 3 * tq8.mult[4]
    f = Character(tq8.group, tq8.conj, tq8.conductor, f_mult)
    d = decompose(f, tq8)
    assert dict(d.pairs) == {0: 2, 4: 3}


def test_eta_examples(tq8):
    chi2 = tq8.row(4)
    for r in range(4):
        assert eta(tq8.row(r), chi2, tq8) == 1  # linear times irreducible
    assert eta(chi2, chi2, tq8) == 4


def test_kernel_and_faithful(tq8):
    assert kernel(tq8.row(trivial_row(tq8))).order == 8
    assert is_faithful(tq8.row(4))
    assert sum(1 for r in range(5) if is_faithful(tq8.row(r))) == 1
    # C4: the order-2 character has the unique order-2 subgroup as kernel
    t4 = character_table(cyclic_group(4))
    order2_rows = [
        r
        for r in range(4)
        if t4.row(r).value(t4.conj.class_of[1]) == -1
    ]
    assert order2_rows
    k = kernel(t4.row(order2_rows[0]))
    assert sorted(k.members) == [0, 2]


def test_char_center(tq8):
    assert char_center(tq8.row(1)).order == 8  # linear: whole group
    assert sorted(char_center(tq8.row(4)).members) == sorted(center(tq8.group).members)
    # faithful character: character center equals the group center
    th = character_table(heisenberg_extraspecial(3, 2))
    for r in range(th.num_rows):
        if is_faithful(th.row(r)):
            assert sorted(char_center(th.row(r)).members) == sorted(center(th.group).members)


def test_vanishes_outside(tq8):
    whole = subgroup(tq8.group, range(8), validate=False)
    assert vanishes_outside(tq8.row(1), whole)
    assert vanishes_outside(tq8.row(4), center(tq8.group))
    t3 = character_table(cyclic_group(3))
    nontriv = [r for r in range(3) if r != trivial_row(t3)][0]
    assert not vanishes_outside(t3.row(nontriv), subgroup(t3.group, [0], validate=False))


def test_restrict(tq8):
    chi2 = tq8.row(4)
    whole = subgroup(tq8.group, range(8), validate=False)
    r_whole = restrict(chi2, whole)
    assert r_whole.degree == chi2.degree
    zc = center(tq8.group)
    rc = restrict(chi2, zc)
    assert rc.degree == 2
    tz = character_table(subgroup_view(zc))
    d = decompose(rc, tz)
    assert d.support_size == 1 and d.pairs[0][1] == 2
    assert is_faithful(tz.row(d.pairs[0][0]))


def test_induce_permutation_character(tq8):
    zc = center(tq8.group)
    zv = subgroup_view(zc)
    zcd = conjugacy_classes(zv)
    triv = Character(zv, zcd, 1, np.ones((zcd.num_classes, 1), dtype=np.int64))
    ind = induce(triv, tq8.group)
    assert ind.degree == 4  # |G : H|
    # permutation character of cosets: contains the trivial character once
    assert inner_product(ind, tq8.row(trivial_row(tq8))) == 1


def test_frobenius_reciprocity_sweep(tq8):
    groups = [
        (tq8.group, tq8, center(tq8.group)),
        (tq8.group, tq8, None),  # order-4 subgroup below
    ]
    q8 = tq8.group
    order4 = normal_subgroups_between(q8, center(q8))[0]
    pairs_checked = 0
    for g, t, sub in ((q8, tq8, center(q8)), (q8, tq8, order4)):
        hv = subgroup_view(sub)
        th = character_table(hv)
        for lr in range(th.num_rows):
            lam = th.row(lr)
            ind = induce(lam, g)
            for r in range(t.num_rows):
                lhs = inner_product(ind, t.row(r))
                rhs = inner_product(lam, restrict(t.row(r), hv))
                assert lhs == rhs
                pairs_checked += 1
    h = heisenberg_extraspecial(3, 2)
    th_big = character_table(h)
    for sub in normal_subgroups_between(h, center(h))[:3]:
        hv = subgroup_view(sub)
        tsub = character_table(hv)
        for lr in range(0, tsub.num_rows, 2):
            lam = tsub.row(lr)
            ind = induce(lam, h)
            for r in range(0, th_big.num_rows, 2):
                assert inner_product(ind, th_big.row(r)) == inner_product(
                    lam, restrict(th_big.row(r), hv)
                )
                pairs_checked += 1
    assert pairs_checked >= 100


def test_clifford_restriction_shape():
    # faithful chi, normal Y with |Y : Z| = p: the restriction decomposes with
    # equal multiplicities chi(1)/p over a single orbit of extensions of the
    # central character
    for g in (parse_group_text(Q8_TEXT, "q8"), heisenberg_extraspecial(3, 2)):
        t = character_table(g)
        p = [pp for pp in (2, 3, 5, 7) if g.order % pp == 0][0]
        z = center(g)
        zv = subgroup_view(z)
        tz = character_table(zv)
        for r in range(t.num_rows):
            chi = t.row(r)
            if not is_faithful(chi):
                continue
            lam_dec = decompose(restrict(chi, zv), tz)
            assert lam_dec.support_size == 1
            lam_row, lam_mult = lam_dec.pairs[0]
            assert lam_mult == chi.degree
            for y in normal_subgroups_between(g, z, p):
                yv = subgroup_view(y)
                ty = character_table(yv)
                d = decompose(restrict(chi, yv), ty)
                assert d.support_size == p
                assert all(m == chi.degree // p for _, m in d.pairs)
                # each constituent extends the central character
                z_in_y = yv.from_parent(np.asarray(z.members))
                ycd = conjugacy_classes(yv)
                for rr, _ in d.pairs:
                    rho = ty.row(rr)
                    assert rho.degree == 1
                    lam = tz.row(lam_row)
                    for zi, zp in zip(z_in_y, z.members):
                        assert rho.value(int(ycd.class_of[zi])) == lam.value(
                            int(tz.conj.class_of[int(zv.from_parent(np.int64(zp)))])
                        )
                # and the constituents form a single conjugation orbit
                orbit = {d.pairs[0][0]}
                frontier = [d.pairs[0][0]]
                while frontier:
                    rr = frontier.pop()
                    for x in g.generating_set():
                        xi = g.inv(x)
                        conj_parent = g.mul_vec(g.mul_vec(x, yv.to_parent(ycd.reps)), xi)
                        perm = ycd.class_of[yv.from_parent(conj_parent)]
                        moved = Character(yv, ycd, ty.conductor, ty.mult[rr][perm])
                        rr2 = ty.row_index_of(moved)
                        if rr2 not in orbit:
                            orbit.add(rr2)
                            frontier.append(rr2)
                assert orbit == {r0 for r0, _ in d.pairs}


def test_vanishing_outside_center_forces_degree_squared_index():
    for g in (parse_group_text(Q8_TEXT, "q8"), heisenberg_extraspecial(3, 2), heisenberg_extraspecial(5, 2)):
        t = character_table(g)
        z = center(g)
        for r in range(t.num_rows):
            chi = t.row(r)
            if vanishes_outside(chi, z):
                assert chi.degree**2 == g.order // z.order


def test_induced_example_character_is_irreducible_of_degree_p():
    from pchar.constructions import ExampleSpec, build_example

    g, chi = build_example(ExampleSpec(3, 1))
    assert chi.degree == 3
    assert inner_product(chi, chi) == 1
    assert is_faithful(chi)


def test_table_seed_independence():
    g1 = heisenberg_extraspecial(5, 2)
    t0 = character_table(g1, seed=0)
    t3 = character_table(heisenberg_extraspecial(5, 2), seed=3)
    assert np.array_equal(t0.mult, t3.mult)
    assert np.array_equal(t0.degrees, t3.degrees)


def test_table_rebuild_determinism():
    a = character_table(function_power_semidirect(cyclic_group(3), 3))
    b = character_table(function_power_semidirect(cyclic_group(3), 3))
    assert np.array_equal(a.mult, b.mult)


def test_group_mismatch_errors(tq8):
    t3 = character_table(cyclic_group(3))
    with pytest.raises(ValueError):
        product(tq8.row(0), t3.row(0))
    with pytest.raises(ValueError):
        decompose(t3.row(0), tq8)


def test_row_index_and_conjugate_row(tq8):
    for r in range(tq8.num_rows):
        assert tq8.row_index_of(tq8.row(r)) == r
        cr = tq8.conjugate_row(r)
        assert conjugate(tq8.row(r)) == tq8.row(cr)


def test_d4_table_matches_hand_construction():
    d4 = parse_group_text("perm 4\n1 2 3 0\n1 0 3 2\n", "d4")
    t = character_table(d4)
    assert t.degree_multiset() == {1: 4, 2: 1}
    cd = t.conj
    ident = 0
    central = next(c for c in range(5) if cd.sizes[c] == 1 and c != ident)
    two_classes = [c for c in range(5) if cd.sizes[c] == 2]
    assert len(two_classes) == 3
    expected = {tuple(1 for _ in range(5))}
    for keep in two_classes:
        vals = {ident: 1, central: 1}
        for c in two_classes:
            vals[c] = 1 if c == keep else -1
        expected.add(tuple(vals[c] for c in range(5)))
    vals = {ident: 2, central: -2}
    for c in two_classes:
        vals[c] = 0
    expected.add(tuple(vals[c] for c in range(5)))
    got = {tuple(t.row(r).value(c).rational_integer() for c in range(5)) for r in range(5)}
    assert got == expected
