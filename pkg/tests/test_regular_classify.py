import pytest

from holocirc.holomorph import HolElem2, holomorph_group
from holocirc.permgroup import closure, is_normal_in, is_regular
from holocirc.regular_classify import (
    RegularType,
    _enumerate_structured,
    _structured_regular_sets,
    affine_from_perm,
    enumerate_regular_subgroups,
    expected_intersection_exponent,
    intersection_with_translations,
    is_normal_cyclic_regular_in_hol,
    is_semiregular_closed_form,
    regular_subgroup_sets,
    representative,
    representative_coincidences,
    representative_generators,
    representative_types,
    representatives,
)

# frozen by the exhaustive engine itself (see test_counts_are_stable)
REGULAR_COUNTS = {3: 6, 4: 16, 5: 28}
CLASS_COUNTS = {3: 5, 4: 8, 5: 9}


def brute_semiregular(h):
    mod = h.modulus
    aff = h.to_affine()
    images = [aff.act(g) for g in range(mod)]
    seen = [False] * mod
    sizes = set()
    for start in range(mod):
        if seen[start]:
            continue
        size, g = 0, start
        while not seen[g]:
            seen[g] = True
            size += 1
            g = images[g]
        sizes.add(size)
    return len(sizes) == 1


def all_elements(n):
    return [
        HolElem2(n, a, b, g)
        for a in range(1 << n)
        for b in (0, 1)
        for g in range(1 << (n - 2))
    ]


def test_regular_type_validation():
    with pytest.raises(ValueError):
        RegularType("nonsense")
    with pytest.raises(ValueError):
        RegularType("dihedral", t=1)
    with pytest.raises(ValueError):
        RegularType("twisted_cyclic")
    assert RegularType("twisted_cyclic", 2).label() == "twisted_cyclic(t=2)"
    assert RegularType("translations").index == 1


def test_semiregular_closed_form_examples():
    assert is_semiregular_closed_form(HolElem2(4, 2, 0, 1)) is True  # 2 < 4
    assert is_semiregular_closed_form(HolElem2(4, 4, 0, 1)) is False  # 4 < 4 fails
    for n in (3, 4, 5):
        assert is_semiregular_closed_form(HolElem2(n, 2, 1, 0)) is False
        assert is_semiregular_closed_form(HolElem2(n, 1, 1, 0)) is True


def test_semiregular_closed_form_exhaustive_small():
    for n in (3, 4, 5):
        for h in all_elements(n):
            assert is_semiregular_closed_form(h) == brute_semiregular(h), h


def test_semiregular_power_halving():
    # h semiregular iff h^(order/2) semiregular
    from holocirc.holomorph import order, power

    for n in (3, 4, 5, 6):
        for h in all_elements(n):
            if h.is_identity():
                continue
            half = power(h, order(h) // 2)
            assert brute_semiregular(h) == brute_semiregular(half)


def test_representative_generator_shapes():
    gens = representative_generators(RegularType("quaternion"), 5)
    assert [str(g) for g in gens] == ["a^2", "a*x*y^4"]
    # direct product at n = 4: 2 * 5^-1 = 2 * 13 = 10 mod 16
    gens = representative_generators(RegularType("direct_product"), 4)
    assert [str(g) for g in gens] == ["a^10*y", "a*x"]
    with pytest.raises(ValueError):
        representative_generators(RegularType("twisted_cyclic", 2), 4)
    with pytest.raises(ValueError):
        representative_generators(RegularType("modular"), 3)


def test_representatives_all_widths():
    for n in range(3, 9):
        recs = representatives(n)
        for rec in recs:
            assert is_regular(rec.subgroup)
            assert rec.subgroup.order == 1 << n
            assert rec.intersection_exponent == expected_intersection_exponent(
                rec.rtype, n
            )
        labels = [r.rtype.label() for r in recs]
        assert labels[0] == "translations"
        assert ("modular" in labels) == (n >= 4)
        assert f"twisted_cyclic(t={n - 3})" in labels
        assert f"twisted_cyclic(t={n - 2})" not in labels


def test_dihedral_representative_example():
    rec = representative(RegularType("dihedral"), 4)
    assert rec.subgroup.order == 16
    assert rec.iso.kind == "dihedral"
    assert rec.intersection_exponent == 2


def test_twisted_intersections():
    # intersection exponent 2^(n-t-2), e.g. <a*y> at n=4 meets at a^4
    rec = representative(RegularType("twisted_cyclic", 0), 4)
    assert rec.intersection_exponent == 4
    rec = representative(RegularType("twisted_cyclic", 1), 4)
    assert rec.intersection_exponent == 2


def test_representative_coincidences_only_at_3():
    grp = representative_coincidences(3)
    assert [[t.kind for t in g] for g in grp] == [["direct_product", "quasidihedral"]]
    for n in (4, 5, 6):
        assert representative_coincidences(n) == []


def test_counts_are_stable():
    for n, want in REGULAR_COUNTS.items():
        records = enumerate_regular_subgroups(n)
        assert len(records) == want
        class_labels = {r.rtype.label() for r in records}
        assert len(class_labels) == CLASS_COUNTS[n]


def test_every_enumerated_subgroup_has_verified_conjugator():
    for n in (3, 4):
        for rec in enumerate_regular_subgroups(n):
            assert is_regular(rec.subgroup)
            w = rec.conjugator
            rep = representative(rec.rtype, n)
            conj = frozenset(
                w.inverse().then(p).then(w) for p in rec.subgroup.elements
            )
            assert conj == rep.subgroup.elements
            assert rec.intersection_exponent == intersection_with_translations(
                rec.subgroup
            )


def test_intersection_is_conjugation_invariant_fact():
    for rec in enumerate_regular_subgroups(4):
        assert rec.intersection_exponent == expected_intersection_exponent(
            rec.rtype, 4
        )


def test_prune_loses_no_regular_subgroup():
    pruned = {s for s, g, t in regular_subgroup_sets(3, prune_semiregular=True)}
    unpruned = {s for s, g, t in regular_subgroup_sets(3, prune_semiregular=False)}
    assert pruned == unpruned


def test_structured_is_subset_and_covers_classes():
    for n in (4, 5):
        full = regular_subgroup_sets(n)
        table = full[0][2]
        full_sets = {
            frozenset(table.elements[e] for e in s) for s, g, t in full
        }
        assert set(_structured_regular_sets(n)) <= full_sets
    recs = _enumerate_structured(6)
    found = {r.rtype.label() for r in recs}
    want = {t.label() for t in representative_types(6)}
    assert found == want
    for rec in recs:
        w = rec.conjugator
        rep = representative(rec.rtype, 6)
        conj = frozenset(
            w.inverse().then(p).then(w) for p in rec.subgroup.elements
        )
        assert conj == rep.subgroup.elements


def test_enumeration_range_errors():
    with pytest.raises(ValueError):
        enumerate_regular_subgroups(2)
    with pytest.raises(ValueError):
        enumerate_regular_subgroups(9)


def test_cyclic_normality_closed_form():
    assert is_normal_cyclic_regular_in_hol(RegularType("translations"), 5)
    assert is_normal_cyclic_regular_in_hol(RegularType("twisted_cyclic", 2), 5)
    assert not is_normal_cyclic_regular_in_hol(RegularType("twisted_cyclic", 0), 5)
    with pytest.raises(ValueError):
        is_normal_cyclic_regular_in_hol(RegularType("dihedral"), 5)
    with pytest.raises(ValueError):
        is_normal_cyclic_regular_in_hol(RegularType("twisted_cyclic", 3), 5)


def test_cyclic_normality_against_brute_force():
    for n in (3, 4, 5):
        ambient = holomorph_group(1 << n)
        for rec in enumerate_regular_subgroups(n):
            if rec.iso.kind != "cyclic":
                continue
            brute = is_normal_in(rec.subgroup, ambient)
            assert brute == is_normal_cyclic_regular_in_hol(rec.rtype, n)


def test_twist_beyond_range_collapses_to_translations():
    # the generator a*y^(2^(n-2)) is just a: y has order 2^(n-2)
    n = 5
    h = HolElem2(n, 1, 0, 1 << (n - 2))
    assert h == HolElem2(n, 1, 0, 0)
    sub = closure([h.as_perm()])
    rep = representative(RegularType("translations"), n)
    assert sub.elements == rep.subgroup.elements


def test_affine_from_perm_roundtrip():
    h = HolElem2(5, 7, 1, 3)
    aff = affine_from_perm(h.as_perm())
    assert (aff.t, aff.m) == (7, h.multiplier)
    from holocirc.permgroup import Perm

    with pytest.raises(ValueError):
        affine_from_perm(Perm([0, 2, 1, 3]))


def test_record_serialization():
    rec = representative(RegularType("quaternion"), 4)
    d = rec.to_dict()
    assert d["type"] == "quaternion"
    assert d["generators"] == ["a^2", "a*x*y^2"]
    assert d["intersection_with_translations"] == "a^2"
    assert d["n"] == 4
