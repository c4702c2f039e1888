"""Circulant graphs and their normality analysis.

A circulant is held as a modulus n and an inverse-closed connection set
S (no zero), with adjacency kept as per-vertex bitmasks.  On top of the
graph sit: an exact automorphism-group computation (backtracking with
iterated neighborhood refinement, order via the point-stabilizer
chain), the normality test for the translation group, multiplier
stabilizers of S, the search for simultaneously normal and non-normal
cyclic regular subgroups, coset-stable subgroups of S, the integer
inequality behind the lexicographic non-normality bound, explicit
stabilizer witnesses certifying non-normality, and the abelian
regular-subgroup scan for moduli not divisible by 8.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Optional

from .holomorph import AffineMap, crt_decompose
from .permgroup import Perm
from .regular_classify import cyclic_regular_affine_subgroups

DEFAULT_MAX_DEGREE = 32


class DegreeBoundError(ValueError):
    """A graph exceeds the configured vertex-count bound."""


class WitnessVerificationError(RuntimeError):
    """A constructed stabilizer witness failed its re-verification."""


def max_degree() -> int:
    value = os.environ.get("HOLOCIRC_MAX_DEGREE")
    return int(value) if value else DEFAULT_MAX_DEGREE


@dataclass(frozen=True)
class Circulant:
    """A graph on Z_n with g ~ g + s for every s in the connection set."""

    n: int
    conn: frozenset[int]

    @property
    def adjacency(self) -> tuple[int, ...]:
        rows = []
        for g in range(self.n):
            row = 0
            for s in self.conn:
                row |= 1 << ((g + s) % self.n)
            rows.append(row)
        return tuple(rows)

    @property
    def edge_count(self) -> int:
        return self.n * len(self.conn) // 2

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for g in range(self.n):
            for s in self.conn:
                h = (g + s) % self.n
                if g < h:
                    out.append((g, h))
        return sorted(out)

    def is_connected(self) -> bool:
        d = self.n
        for s in self.conn:
            d = gcd(d, s)
        return d == 1

    def is_degenerate(self) -> bool:
        """Empty set, or the single self-paired involution {n/2}."""
        return not self.conn or self.conn == frozenset([self.n // 2])


def build(n: int, conn: Iterable[int]) -> Circulant:
    """Validate and build: no zero, all in [1, n-1], inverse-closed."""
    if n < 2:
        raise ValueError(f"modulus must be >= 2, got {n}")
    s = frozenset(int(c) % n for c in conn)
    if 0 in s:
        raise ValueError("connection set must not contain 0")
    for c in s:
        if (n - c) % n not in s:
            raise ValueError(f"connection set is not inverse-closed: missing {n - c}")
    return Circulant(n, s)


@dataclass(frozen=True)
class AutResult:
    """Automorphism group: exact order, a strong generating set, and
    whether the group lies inside the holomorph (affine maps only)."""

    order: int
    generators: tuple[Perm, ...]
    within_holomorph: bool


def aut_G_S(circ: Circulant) -> tuple[int, ...]:
    """Multipliers m (units mod n) with m*S = S, sorted."""
    n = circ.n
    out = []
    for m in range(1, n):
        if gcd(m, n) != 1:
            continue
        if {s * m % n for s in circ.conn} == circ.conn:
            out.append(m)
    return tuple(out)


def automorphism_group(
    circ: Circulant, degree_bound: Optional[int] = None
) -> AutResult:
    """Exact automorphism group by point-stabilizer chain.

    At chain level k the orbit of vertex k under the stabilizer of
    0..k-1 is grown from known generators; each still-missing candidate
    image is settled by a backtracking search seeded with iterated
    neighborhood-refinement colors.  The order is the product of orbit
    sizes; the returned generators are the found coset representatives
    (a strong generating set), seeded with the affine symmetries.
    """
    n = circ.n
    bound = degree_bound if degree_bound is not None else max_degree()
    if n > bound:
        raise DegreeBoundError(f"{n} vertices exceeds the bound {bound}")
    adj = circ.adjacency
    mults = aut_G_S(circ)

    gens: list[tuple[int, ...]] = [
        tuple((g + 1) % n for g in range(n))
    ]
    gens += [tuple(g * m % n for g in range(n)) for m in mults if m != 1]

    order = 1
    for k in range(n):
        local = [g for g in gens if all(g[j] == j for j in range(k))]
        orbit = _orbit_of(k, local, n)
        for c in range(n):
            if c in orbit:
                continue
            found = _search_automorphism(adj, n, k, c)
            if found is not None:
                gens.append(found)
                local.append(found)
                orbit = _orbit_of(k, local, n)
        order *= len(orbit)
    perms = tuple(Perm(g) for g in gens)
    return AutResult(order, perms, order == n * len(mults))


def _orbit_of(point: int, gens: list[tuple[int, ...]], n: int) -> set[int]:
    orbit = {point}
    queue = [point]
    while queue:
        p = queue.pop()
        for g in gens:
            q = g[p]
            if q not in orbit:
                orbit.add(q)
                queue.append(q)
    return orbit


def _wl_colors(adj: tuple[int, ...], n: int, seeds: list[int]) -> list[int]:
    """Iterated neighborhood refinement from individualized seeds."""
    colors = [0] * n
    for i, v in enumerate(seeds):
        colors[v] = i + 1

    def canon(cs: list[int]) -> list[int]:
        first: dict[int, int] = {}
        return [first.setdefault(c, len(first)) for c in cs]

    while True:
        sigs = []
        for v in range(n):
            row = adj[v]
            neigh = []
            while row:
                b = row & -row
                neigh.append(colors[b.bit_length() - 1])
                row ^= b
            sigs.append((colors[v], tuple(sorted(neigh))))
        order = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [order[s] for s in sigs]
        if canon(new) == canon(colors):
            return new
        colors = new


def _search_automorphism(
    adj: tuple[int, ...], n: int, k: int, c: int
) -> Optional[tuple[int, ...]]:
    """One automorphism fixing 0..k-1 pointwise with k -> c, or None."""
    if c < k:
        return None  # c is already the image of the fixed prefix
    full = (1 << n) - 1
    img = list(range(k)) + [-1] * (n - k)
    img[k] = c
    used = ((1 << k) - 1) | (1 << c)

    dom_colors = _wl_colors(adj, n, list(range(k + 1)))
    im_colors = _wl_colors(adj, n, list(range(k)) + [c])
    color_mask: dict[int, int] = {}
    for u in range(n):
        color_mask[im_colors[u]] = color_mask.get(im_colors[u], 0) | (1 << u)

    cand: dict[int, int] = {}
    for v in range(k + 1, n):
        m = color_mask.get(dom_colors[v], 0) & ~used & full
        for w in range(k + 1):
            m &= adj[img[w]] if adj[v] >> w & 1 else ~adj[img[w]]
        m &= full
        if not m:
            return None
        cand[v] = m

    def dfs(cand: dict[int, int]) -> bool:
        if not cand:
            return True
        v = min(cand, key=lambda w: bin(cand[w]).count("1"))
        m = cand[v]
        while m:
            b = m & -m
            m ^= b
            u = b.bit_length() - 1
            img[v] = u
            nxt = {}
            ok = True
            for w, cw in cand.items():
                if w == v:
                    continue
                cw &= (adj[u] if adj[v] >> w & 1 else ~adj[u]) & ~(1 << u) & full
                if not cw:
                    ok = False
                    break
                nxt[w] = cw
            if ok and dfs(nxt):
                return True
            img[v] = -1
        return False

    if dfs(cand):
        return tuple(img)
    return None


def is_normal_cayley(circ: Circulant, aut: Optional[AutResult] = None) -> bool:
    """Whether the translation group is normal in the full automorphism
    group: its generator must stay a translation under conjugation by
    every automorphism generator."""
    if aut is None:
        aut = automorphism_group(circ)
    n = circ.n
    rot = AffineMap.translation(n, 1).as_perm()
    for w in aut.generators:
        conj = rot.conjugated_by(w)
        if not _is_translation_perm(conj, n):
            return False
    return True


def _is_translation_perm(p: Perm, n: int) -> bool:
    shift = p.images[0]
    return all(p.images[g] == (g + shift) % n for g in range(n))


@dataclass(frozen=True)
class CyclicCopy:
    """One cyclic regular subgroup of the automorphism group."""

    generator: AffineMap
    normal_in_aut: bool
    is_translation_group: bool
    conjugate_to_translations: bool


@dataclass(frozen=True)
class NnnVerdict:
    """Outcome of the normal/non-normal double-role test.

    ``nnn`` is true when the graph is normal for the translations while
    some other cyclic regular subgroup of the automorphism group is
    non-normal in it.  ``nnn_nonconjugate`` additionally demands that
    the non-normal copy not be conjugate to the translations inside the
    automorphism group (both flags are reported; neither implies a
    stance on which reading of "another copy" is canonical).
    """

    is_normal_for_GR: bool
    regular_cyclic: tuple[CyclicCopy, ...]
    nnn: bool
    nnn_nonconjugate: bool
    witness: Optional[tuple[AffineMap, AffineMap]]


def nnn_verdict(circ: Circulant, aut: Optional[AutResult] = None) -> NnnVerdict:
    """Decide the double-role property for one circulant.

    A normal graph pins its automorphism group to the affine maps whose
    multiplier preserves S, so the cyclic regular subgroups can be
    enumerated exactly there; each is tested for normality by
    conjugation with the full (affine) automorphism group.
    """
    if aut is None:
        aut = automorphism_group(circ)
    if not is_normal_cayley(circ, aut):
        return NnnVerdict(False, (), False, False, None)
    n = circ.n
    elements = [
        AffineMap(n, t, m) for t in range(n) for m in aut_G_S(circ)
    ]
    copies = []
    for gen, elems in cyclic_regular_affine_subgroups(n, elements):
        normal_h = all(
            w.inverse().then(gen).then(w) in elems for w in elements
        )
        is_gr = all(e.is_translation() for e in elems)
        conj_gr = is_gr or _conjugate_to_translations(gen, elements, n)
        copies.append(CyclicCopy(gen, normal_h, is_gr, conj_gr))
    bad = [c for c in copies if not c.normal_in_aut]
    bad_noncj = [c for c in bad if not c.conjugate_to_translations]
    witness = None
    if bad:
        witness = (AffineMap.translation(n, 1), bad[0].generator)
    return NnnVerdict(True, tuple(copies), bool(bad), bool(bad_noncj), witness)


def _conjugate_to_translations(
    gen: AffineMap, ambient: list[AffineMap], n: int
) -> bool:
    for w in ambient:
        if w.inverse().then(gen).then(w).is_translation():
            return True
    return False


def w_subgroups(circ: Circulant) -> list[int]:
    """Divisors d (1 < d < n) whose subgroup <d> leaves S - <d> a union
    of <d>-cosets; a nonempty answer certifies a lexicographic-product
    structure over that subgroup."""
    n = circ.n
    out = []
    for d in range(2, n):
        if n % d:
            continue
        sub = set(range(0, n, d))
        stable = all(
            (s + h) % n in circ.conn
            for s in circ.conn
            if s not in sub
            for h in sub
        )
        if stable:
            out.append(d)
    return out


def lex_exponent(k: int, t: int) -> int:
    """The exponent 2^(k-t) * t + k - t from the wreath lower bound on
    the automorphism group of a lexicographic product on 2^k vertices
    split at 2^t."""
    return (1 << (k - t)) * t + k - t


def lex_nonnormal_bound(k: int, t: int) -> bool:
    """Whether the wreath lower bound beats the holomorph order, i.e.
    lex_exponent(k, t) >= 2k - 1.  Holds for all 1 <= t <= k - 1, with
    equality exactly at t = k - 1."""
    if not 1 <= t <= k - 1:
        raise ValueError(f"split {t} outside 1..{k - 1}")
    return lex_exponent(k, t) >= 2 * k - 1


def theta_witness_p_odd(circ: Circulant, p: int) -> Optional[Perm]:
    """Non-normality witness for odd p with p^2 | n.

    Requires the order-p coordinate automorphism (multiplier congruent
    to p^(k-1)+1 on the p-part, 1 elsewhere) to preserve S; then the
    permutation adding the order-p subgroup generator exactly on the
    residues congruent to 2 mod p is a graph automorphism that fixes 0
    and the generator 1 but is no group automorphism.  Returns None
    when the multiplier precondition fails; raises if the constructed
    witness does not verify.
    """
    n = circ.n
    if p < 3 or p % 2 == 0 or not _is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    if n % (p * p):
        raise ValueError(f"{p}^2 does not divide {n}")
    k = 0
    rest = n
    while rest % p == 0:
        rest //= p
        k += 1
    frame = crt_decompose(n)
    phi = frame.lift_multiplier(
        [p ** (k - 1) + 1 if q == p**k else 1 for q in frame.moduli]
    )
    if {s * phi % n for s in circ.conn} != circ.conn:
        return None
    g_p = rest * p ** (k - 1)  # generator of the unique order-p subgroup
    theta = Perm(
        (x + g_p) % n if x % p == 2 else x for x in range(n)
    )
    _verify_witness(circ, theta)
    return theta


def theta_witness_2part(circ: Circulant) -> Optional[Perm]:
    """Non-normality witness for moduli whose 2-part 2^k has k >= 4.

    Requires the multiplier congruent to 5^(2^(k-4)) on the 2-part and
    1 on the odd part to preserve S; then adding the involution of the
    2-part exactly on the coset whose 2-coordinate is 2 mod 4 is a
    graph automorphism fixing 0 and 1 but no group automorphism.
    Returns None when the multiplier precondition fails; raises if the
    constructed witness does not verify.
    """
    n = circ.n
    k = (n & -n).bit_length() - 1
    if k < 4:
        raise ValueError(f"2-part of {n} is 2^{k}, need k >= 4")
    two_part = 1 << k
    frame = crt_decompose(n)
    rho = frame.lift_multiplier(
        [pow(5, 1 << (k - 4), two_part) if q == two_part else 1 for q in frame.moduli]
    )
    if {s * rho % n for s in circ.conn} != circ.conn:
        return None
    half = frame.from_coords(
        [two_part >> 1 if q == two_part else 0 for q in frame.moduli]
    )
    theta = Perm(
        (x + half) % n if x % 4 == 2 else x for x in range(n)
    )
    _verify_witness(circ, theta)
    return theta


def _verify_witness(circ: Circulant, theta: Perm) -> None:
    """Edge-preserving, fixes 0 and the generator 1, not the identity."""
    n = circ.n
    if theta.is_identity():
        raise WitnessVerificationError("witness collapsed to the identity")
    if theta.images[0] != 0 or theta.images[1 % n] != 1 % n:
        raise WitnessVerificationError("witness moves 0 or the generator")
    for g in range(n):
        for s in circ.conn:
            u, v = theta.images[g], theta.images[(g + s) % n]
            if (v - u) % n not in circ.conn:
                raise WitnessVerificationError(
                    f"witness breaks the edge ({g}, {(g + s) % n})"
                )


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


# abelian regular subgroups at moduli not divisible by 8


@dataclass(frozen=True)
class AbelianScanRecord:
    conn: tuple[int, ...]
    normal: bool
    abelian_regular_count: int
    intersection_indices: tuple[int, ...]
    indices_all_2power: bool
    nnn: bool


def abelian_regular_scan(
    n: int, connected_only: bool = False
) -> list[AbelianScanRecord]:
    """For every inverse-closed connection set on Z_n (8 must not divide
    n), report the abelian regular subgroups of the automorphism group
    of each normal circulant: their count, and the indices of their
    intersections with the translations (all powers of two)."""
    if n % 8 == 0:
        raise ValueError(f"modulus {n} is divisible by 8")
    out = []
    for mask in range(1 << len(pair_orbits(n))):
        circ = build(n, connection_set(n, mask))
        if connected_only and not circ.is_connected():
            continue
        aut = automorphism_group(circ)
        if not is_normal_cayley(circ, aut):
            out.append(AbelianScanRecord(tuple(sorted(circ.conn)), False, 0, (), True, False))
            continue
        elements = [
            AffineMap(n, t, m) for t in range(n) for m in aut_G_S(circ)
        ]
        subs = _abelian_regular_subgroups(n, elements)
        indices = tuple(
            sorted(n // _translation_subgroup_order(h, n) for h in subs)
        )
        verdict = nnn_verdict(circ, aut)
        out.append(
            AbelianScanRecord(
                tuple(sorted(circ.conn)),
                True,
                len(subs),
                indices,
                all(i & (i - 1) == 0 for i in indices),
                verdict.nnn,
            )
        )
    return out


def _abelian_regular_subgroups(
    n: int, elements: list[AffineMap]
) -> list[frozenset[AffineMap]]:
    """Abelian transitive subgroups of order n generated by at most two
    of the given affine maps (two generators suffice: an abelian group
    of order not divisible by 8 has rank at most two)."""
    ident = AffineMap.identity(n)
    found = set()
    pool = [e for e in elements if not e.is_identity()]
    for i, h1 in enumerate(pool):
        for h2 in [ident, *pool[i:]]:
            if h1.then(h2) != h2.then(h1):
                continue
            elems = _bounded_affine_closure([h1, h2], n)
            if elems is None or len(elems) != n:
                continue
            if len({e.act(0) for e in elems}) == n:
                found.add(frozenset(elems))
    return sorted(found, key=lambda s: sorted((e.t, e.m) for e in s))


def _bounded_affine_closure(gens, n) -> Optional[set[AffineMap]]:
    elems = {AffineMap.identity(n)}
    frontier = list(elems)
    while frontier:
        nxt = []
        for e in frontier:
            for g in gens:
                f = e.then(g)
                if f not in elems:
                    if len(elems) >= n:
                        return None
                    elems.add(f)
                    nxt.append(f)
        frontier = nxt
    return elems


def _translation_subgroup_order(elems: frozenset[AffineMap], n: int) -> int:
    return sum(1 for e in elems if e.is_translation())


# census machinery: connection sets indexed by inverse-pair orbits


def pair_orbits(n: int) -> list[tuple[int, ...]]:
    """The orbits {s, n-s}, ordered by smallest member; the self-paired
    involution n/2 (n even) is its own orbit."""
    out = []
    for s in range(1, n // 2 + 1):
        if s == n - s:
            out.append((s,))
        elif s < n - s:
            out.append((s, n - s))
    return out


def connection_set(n: int, mask: int) -> frozenset[int]:
    orbits = pair_orbits(n)
    if mask >> len(orbits):
        raise ValueError(f"mask {mask} outside census of {len(orbits)} orbits")
    out = set()
    for i, orbit in enumerate(orbits):
        if mask >> i & 1:
            out.update(orbit)
    return frozenset(out)


def census_size(n: int) -> int:
    return 1 << len(pair_orbits(n))


def scan_record(n: int, mask: int, degree_bound: Optional[int] = None) -> dict:
    """One census entry, JSON-ready; deterministic for a given (n, mask)."""
    circ = build(n, connection_set(n, mask))
    aut = automorphism_group(circ, degree_bound)
    verdict = nnn_verdict(circ, aut)
    witnesses = None
    if verdict.witness is not None:
        normal_gen, bad_gen = verdict.witness
        witnesses = {
            "normal_copy": [normal_gen.t, normal_gen.m],
            "non_normal_copy": [bad_gen.t, bad_gen.m],
        }
    return {
        "n": n,
        "mask": mask,
        "S": sorted(circ.conn),
        "aut_order": aut.order,
        "normal": verdict.is_normal_for_GR,
        "within_holomorph": aut.within_holomorph,
        "w_subgroups": w_subgroups(circ),
        "nnn": verdict.nnn,
        "witnesses": witnesses,
        "connected": circ.is_connected(),
        "degenerate": circ.is_degenerate(),
    }


def scan_range(
    n: int,
    start: int,
    stop: int,
    connected_only: bool = False,
    degree_bound: Optional[int] = None,
) -> list[dict]:
    """Scan one contiguous mask range (a shard) in census order."""
    out = []
    for mask in range(start, stop):
        record = scan_record(n, mask, degree_bound)
        if connected_only and not record["connected"]:
            continue
        out.append(record)
    return out


def shard_bounds(total: int, shard: int, shards: int) -> tuple[int, int]:
    if shards < 1 or not 0 <= shard < shards:
        raise ValueError(f"bad shard {shard}/{shards}")
    return total * shard // shards, total * (shard + 1) // shards
