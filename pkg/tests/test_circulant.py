import itertools
import random

import pytest

from holocirc.circulant import (
    DegreeBoundError,
    abelian_regular_scan,
    aut_G_S,
    automorphism_group,
    build,
    census_size,
    connection_set,
    is_normal_cayley,
    lex_exponent,
    lex_nonnormal_bound,
    nnn_verdict,
    pair_orbits,
    scan_range,
    scan_record,
    shard_bounds,
    theta_witness_2part,
    theta_witness_p_odd,
    w_subgroups,
)
from holocirc.permgroup import StabChain


def brute_aut_order(circ):
    """Filter all n! permutations; only sane for n <= 8."""
    n, adj = circ.n, circ.adjacency
    count = 0
    for p in itertools.permutations(range(n)):
        if all(
            adj[p[g]] >> p[(g + s) % n] & 1
            for g in range(n)
            for s in circ.conn
        ):
            count += 1
    return count


def test_build_validation():
    c = build(8, {1, 7})
    assert c.conn == frozenset({1, 7})
    with pytest.raises(ValueError):
        build(8, {0, 1, 7})
    with pytest.raises(ValueError):
        build(8, {1, 2})  # 6 missing
    with pytest.raises(ValueError):
        build(1, set())


def test_adjacency_shapes():
    cycle = build(8, {1, 7})
    assert all(bin(row).count("1") == 2 for row in cycle.adjacency)
    k44 = build(8, {1, 3, 5, 7})
    # complete bipartite between evens and odds
    evens = sum(1 << v for v in range(0, 8, 2))
    for g in range(8):
        want = (0xFF ^ evens) if g % 2 == 0 else evens
        assert k44.adjacency[g] == want
    assert cycle.edges()[0] == (0, 1)
    assert cycle.edge_count == 8


def test_degenerate_and_connected_flags():
    assert build(8, set()).is_degenerate()
    assert build(8, {4}).is_degenerate()
    assert not build(8, {4}).is_connected()
    assert build(8, {1, 7}).is_connected()
    assert not build(8, {2, 6}).is_connected()


def test_aut_orders_match_brute_force():
    for S, want in [({1, 7}, 16), ({1, 3, 5, 7}, 1152), ({4}, 384)]:
        c = build(8, S)
        assert automorphism_group(c).order == want == brute_aut_order(c)


def test_aut_orders_whole_census_width8():
    for mask in range(census_size(8)):
        c = build(8, connection_set(8, mask))
        assert automorphism_group(c).order == brute_aut_order(c)


def test_aut_generators_generate_stated_order():
    for S in [{1, 7}, {1, 3, 5, 7}, {2, 6}, {4}, {1, 4, 7}]:
        c = build(8, S)
        res = automorphism_group(c)
        chain = StabChain(8, res.generators)
        assert chain.order() == res.order


def test_aut_order_invariant_under_relabeling():
    rng = random.Random(5)
    for n in (9, 12):
        for _ in range(6):
            orbits = pair_orbits(n)
            mask = rng.randrange(1 << len(orbits))
            c = build(n, connection_set(n, mask))
            base = automorphism_group(c).order
            u = rng.choice([m for m in range(1, n) if __import__("math").gcd(m, n) == 1])
            relabeled = build(n, {s * u % n for s in c.conn})
            assert automorphism_group(relabeled).order == base


def test_degree_bound():
    with pytest.raises(DegreeBoundError):
        automorphism_group(build(64, {1, 63}))
    assert automorphism_group(build(64, {1, 63}), degree_bound=64).order == 128


def test_normality_examples():
    assert is_normal_cayley(build(8, {1, 7})) is True
    assert is_normal_cayley(build(8, {1, 3, 5, 7})) is False
    # the 4-cycle: rotations have index 2 in its dihedral group, hence normal
    assert is_normal_cayley(build(4, {1, 3})) is True


def test_normality_iff_order_identity():
    # normal <=> |Aut| = n * |multiplier stabilizer| <=> Aut inside holomorph
    for n in (8, 12):
        for mask in range(census_size(n)):
            c = build(n, connection_set(n, mask))
            res = automorphism_group(c)
            normal = is_normal_cayley(c, res)
            assert normal == (res.order == n * len(aut_G_S(c)))
            assert normal == res.within_holomorph


def test_aut_G_S_examples():
    assert aut_G_S(build(8, {1, 7})) == (1, 7)
    assert aut_G_S(build(8, {1, 3, 5, 7})) == (1, 3, 5, 7)
    assert aut_G_S(build(16, {1, 15})) == (1, 15)


def test_w_subgroups():
    k44 = build(8, {1, 3, 5, 7})
    assert 2 in w_subgroups(k44)
    assert w_subgroups(build(8, {1, 7})) == []
    # the empty set is coset-stable for every proper divisor, vacuously
    assert w_subgroups(build(8, set())) == [2, 4]


def test_w_subgroup_implies_nonnormal_width8():
    for mask in range(census_size(8)):
        c = build(8, connection_set(8, mask))
        if w_subgroups(c):
            assert not is_normal_cayley(c), sorted(c.conn)


def test_lex_exponent_values():
    assert lex_exponent(3, 1) == 6
    assert lex_exponent(3, 2) == 5
    assert lex_exponent(4, 2) == 10
    assert lex_nonnormal_bound(3, 2)
    with pytest.raises(ValueError):
        lex_nonnormal_bound(4, 0)


def test_lex_bound_holds_with_equality_at_top():
    for k in range(2, 21):
        for t in range(1, k):
            value = lex_exponent(k, t)
            assert value >= 2 * k - 1
            assert (value == 2 * k - 1) == (t == k - 1)


def test_theta_p_odd():
    c9 = build(9, {1, 2, 4, 5, 7, 8})
    theta = theta_witness_p_odd(c9, 3)
    assert theta is not None
    assert theta.images[0] == 0 and theta.images[1] == 1
    assert not theta.is_identity()
    # edge preservation, re-checked here
    for g in range(9):
        for s in c9.conn:
            assert (theta.images[(g + s) % 9] - theta.images[g]) % 9 in c9.conn
    assert theta_witness_p_odd(build(9, {1, 8}), 3) is None
    with pytest.raises(ValueError):
        theta_witness_p_odd(c9, 2)
    with pytest.raises(ValueError):
        theta_witness_p_odd(build(15, {1, 14}), 3)  # 9 does not divide 15


def test_theta_p_odd_census():
    n = 9
    built = 0
    for mask in range(census_size(n)):
        c = build(n, connection_set(n, mask))
        theta = theta_witness_p_odd(c, 3)
        if theta is not None:
            built += 1
            assert not is_normal_cayley(c)
    assert built > 0


def test_theta_2part():
    c16 = build(16, {1, 3, 5, 7, 9, 11, 13, 15})
    theta = theta_witness_2part(c16)
    assert theta is not None
    assert theta.images[0] == 0 and theta.images[1] == 1
    moved = [g for g in range(16) if theta.images[g] != g]
    assert moved == [g for g in range(16) if g % 4 == 2]
    assert theta_witness_2part(build(16, {1, 15})) is None
    with pytest.raises(ValueError):
        theta_witness_2part(build(8, {1, 7}))


def test_theta_2part_on_composite_modulus():
    # 2-part 16, odd part 3: the multiplier must act trivially mod 3
    n = 48
    conn = {s for s in range(1, 48) if s % 2 == 1}
    c = build(n, conn)
    theta = theta_witness_2part(c)
    assert theta is not None
    assert theta.images[0] == 0 and theta.images[1] == 1
    for g in range(n):
        for s in c.conn:
            assert (theta.images[(g + s) % n] - theta.images[g]) % n in c.conn


def test_nnn_verdict_structure():
    verdict = nnn_verdict(build(8, {1, 7}))
    assert verdict.is_normal_for_GR
    assert not verdict.nnn and verdict.witness is None
    assert any(c.is_translation_group for c in verdict.regular_cyclic)
    # non-normal graph short-circuits
    verdict = nnn_verdict(build(8, {1, 3, 5, 7}))
    assert not verdict.is_normal_for_GR and not verdict.nnn


def test_nnn_census_small():
    for n in (8, 9):
        for mask in range(census_size(n)):
            record = scan_record(n, mask)
            assert record["nnn"] is False


def test_abelian_scan_uniqueness():
    for n in (9, 10):
        records = abelian_regular_scan(n)
        assert len(records) == census_size(n)
        for r in records:
            if r.normal:
                assert r.abelian_regular_count == 1
                assert r.intersection_indices == (1,)


def test_abelian_scan_indices_two_power():
    records = abelian_regular_scan(12)
    seen_two = False
    for r in records:
        if r.normal:
            assert r.indices_all_2power
            assert not r.nnn
            seen_two |= r.abelian_regular_count > 1
    assert seen_two  # 4 | 12 allows a second abelian regular subgroup


def test_abelian_scan_rejects_eights():
    with pytest.raises(ValueError):
        abelian_regular_scan(16)


def test_pair_orbits_and_census():
    assert pair_orbits(8) == [(1, 7), (2, 6), (3, 5), (4,)]
    assert pair_orbits(9) == [(1, 8), (2, 7), (3, 6), (4, 5)]
    assert census_size(8) == 16
    assert census_size(12) == 64
    assert census_size(16) == 256
    assert connection_set(8, 0b1001) == frozenset({1, 7, 4})
    with pytest.raises(ValueError):
        connection_set(8, 1 << 4)


def test_shard_bounds_partition():
    total = census_size(9)
    pieces = [shard_bounds(total, i, 3) for i in range(3)]
    assert pieces[0][0] == 0 and pieces[-1][1] == total
    covered = [m for lo, hi in pieces for m in range(lo, hi)]
    assert covered == list(range(total))
    with pytest.raises(ValueError):
        shard_bounds(total, 3, 3)


def test_scan_records_deterministic_and_sharded():
    full = scan_range(9, 0, census_size(9))
    again = scan_range(9, 0, census_size(9))
    assert full == again
    lo, hi = shard_bounds(census_size(9), 0, 2)
    assert scan_range(9, lo, hi) == full[lo:hi]
    connected = scan_range(9, 0, census_size(9), connected_only=True)
    assert all(r["connected"] for r in connected)
    assert len(connected) < len(full)


def test_scan_record_fields():
    record = scan_record(8, 1)  # S = {1, 7}
    assert record["S"] == [1, 7]
    assert record["aut_order"] == 16
    assert record["normal"] is True
    assert record["nnn"] is False
    assert record["witnesses"] is None
    assert record["degenerate"] is False
