"""Regular subgroups of the holomorph of Z_{2^n}.

Four services: a closed-form semiregularity test for single elements,
construction of the canonical regular-subgroup representatives (seven
families, one carrying a parameter), exhaustive enumeration of all
regular subgroups at small widths with a conjugacy witness for every
match, and the closed-form normality answer for the cyclic regular
subgroups inside the full holomorph.

The exhaustive route is deliberately independent of the closed forms it
is used to check: subgroups are grown bottom-up by index-two coset
extensions inside the (2-group) holomorph, pruned only by brute-force
fixed-point-freeness, which every subgroup of a regular group must
satisfy.  Widths 6..8 switch to a structured search over the generator
shapes that can carry a regular subgroup; widths 3..5 stay fully
exhaustive.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional, Sequence

from .holomorph import AffineMap, HolElem2, conj_normal_form, pow5
from .permgroup import (
    IsoType,
    Perm,
    PermSubgroup,
    closure,
    from_elements,
    is_regular,
    iso_type,
)

FULL_ENUM_MAX_N = 5
STRUCTURED_ENUM_MAX_N = 8

_KINDS = (
    "translations",
    "twisted_cyclic",
    "dihedral",
    "quaternion",
    "direct_product",
    "quasidihedral",
    "modular",
)


@dataclass(frozen=True)
class RegularType:
    """A family tag for regular subgroups, with the twist parameter t
    for the non-translation cyclic family."""

    kind: str
    t: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        if (self.kind == "twisted_cyclic") != (self.t is not None):
            raise ValueError("exactly the twisted_cyclic kind carries t")
        if self.t is not None and self.t < 0:
            raise ValueError(f"twist parameter must be >= 0, got {self.t}")

    @property
    def index(self) -> int:
        return _KINDS.index(self.kind) + 1

    def label(self) -> str:
        if self.kind == "twisted_cyclic":
            return f"twisted_cyclic(t={self.t})"
        return self.kind


@dataclass(frozen=True)
class ClassificationRecord:
    """A regular subgroup together with its family, isomorphism type,
    intersection with the translation group, and (when it was matched
    by search) a verified conjugating witness to the representative."""

    subgroup: PermSubgroup
    rtype: RegularType
    iso: IsoType
    intersection_exponent: int
    conjugator: Optional[Perm]

    def to_dict(self) -> dict:
        from .holomorph import format_element

        n = self.subgroup.degree.bit_length() - 1
        gens = []
        for p in self.subgroup.generators:
            aff = affine_from_perm(p)
            gens.append(format_element(HolElem2.from_affine(aff)))
        return {
            "type_index": self.rtype.index,
            "type": self.rtype.label(),
            "order": self.subgroup.order,
            "iso": str(self.iso),
            "generators": gens,
            "intersection_with_translations": f"a^{self.intersection_exponent}",
            "conjugator": None
            if self.conjugator is None
            else list(self.conjugator.images),
            "n": n,
        }


def affine_from_perm(p: Perm) -> AffineMap:
    """Recover (t, m) coordinates from a permutation known to be affine."""
    n = p.degree
    m = (p.images[1] - p.images[0]) % n
    if gcd(m, n) != 1:
        raise ValueError("permutation is not an affine map")
    t = p.images[0] * pow(m, -1, n) % n
    aff = AffineMap(n, t, m)
    if aff.as_perm() != p:
        raise ValueError("permutation is not an affine map")
    return aff


def is_semiregular_closed_form(h: HolElem2) -> bool:
    """Semiregularity of a single holomorph element, without orbits.

    After conjugating the translation part down to its 2-part 2**t, the
    element is semiregular exactly when it is a pure translation, or has
    no flip and 2**t < 4 * (2-part of gamma), or has a flip and odd
    translation part.
    """
    if h.is_identity():
        return True
    nf, _ = conj_normal_form(h)
    if nf.alpha == 0:
        return False  # fixes 0 and is not the identity
    if nf.beta == 0:
        if nf.gamma == 0:
            return True
        return nf.alpha < 4 * (nf.gamma & -nf.gamma)
    return nf.alpha == 1


def is_normal_cyclic_regular_in_hol(rtype: RegularType, n: int) -> bool:
    """Normality in the full holomorph, for the cyclic families only:
    the translation group always, the twisted family exactly at the
    maximal twist n - 3."""
    if rtype.kind == "translations":
        return True
    if rtype.kind == "twisted_cyclic":
        _check_twist(rtype.t, n)
        return rtype.t == n - 3
    raise ValueError(f"{rtype.label()} is not one of the cyclic families")


def representative_types(n: int) -> list[RegularType]:
    """The family tags that actually occur at width n.

    At n = 3 the modular family is skipped: its would-be generators
    there produce a non-regular group of order 4 (no modular group of
    order 8 exists), and the quasidihedral generators coincide with the
    direct-product ones (both give Z2 x Z4).
    """
    _check_n(n)
    types = [RegularType("translations")]
    types += [RegularType("twisted_cyclic", t) for t in range(n - 2)]
    types += [
        RegularType("dihedral"),
        RegularType("quaternion"),
        RegularType("direct_product"),
        RegularType("quasidihedral"),
    ]
    if n >= 4:
        types.append(RegularType("modular"))
    return types


def representative_generators(rtype: RegularType, n: int) -> list[HolElem2]:
    """The literal generating set of the canonical representative."""
    _check_n(n)
    inv5 = pow5(-1, n)
    ax = HolElem2(n, 1, 1, 0)
    if rtype.kind == "translations":
        return [HolElem2(n, 1, 0, 0)]
    if rtype.kind == "twisted_cyclic":
        _check_twist(rtype.t, n)
        return [HolElem2(n, 1, 0, 1 << rtype.t)]
    if rtype.kind == "dihedral":
        return [HolElem2(n, 2, 0, 0), ax]
    if rtype.kind == "quaternion":
        return [HolElem2(n, 2, 0, 0), HolElem2(n, 1, 1, 1 << (n - 3))]
    if rtype.kind == "direct_product":
        return [HolElem2(n, 2 * inv5, 0, 1), ax]
    if rtype.kind == "quasidihedral":
        return [HolElem2(n, 2, 0, 1 << (n - 3)), ax]
    if rtype.kind == "modular":
        if n < 4:
            raise ValueError("the modular family is degenerate at width 3")
        return [HolElem2(n, 2 * inv5 + (1 << (n - 2)), 0, 1), ax]
    raise AssertionError(rtype.kind)


def expected_iso_kind(rtype: RegularType, n: int) -> str:
    """Isomorphism type each family must realize (n = 3 degenerations
    included: the quasidihedral family is abelian there)."""
    table = {
        "translations": "cyclic",
        "twisted_cyclic": "cyclic",
        "dihedral": "dihedral",
        "quaternion": "generalized_quaternion",
        "direct_product": "Z2_x_cyclic",
        "quasidihedral": "quasidihedral",
        "modular": "modular_maximal_cyclic",
    }
    if n == 3 and rtype.kind == "quasidihedral":
        return "Z2_x_cyclic"
    return table[rtype.kind]


def expected_intersection_exponent(rtype: RegularType, n: int) -> int:
    """The d with R .intersect. translations = <a^d>."""
    if rtype.kind == "translations":
        return 1
    if rtype.kind == "twisted_cyclic":
        return 1 << (n - rtype.t - 2)
    if rtype.kind in ("dihedral", "quaternion"):
        return 2
    if rtype.kind in ("direct_product", "modular"):
        return 1 << (n - 1)
    return 4  # quasidihedral


def representative(rtype: RegularType, n: int) -> ClassificationRecord:
    """Build the canonical representative and check its contract:
    regular, the stated intersection exponent, the stated iso type."""
    gens = [h.as_perm() for h in representative_generators(rtype, n)]
    sub = closure(gens, degree=1 << n)
    if not is_regular(sub):
        raise RuntimeError(f"representative {rtype.label()} is not regular at n={n}")
    d = intersection_with_translations(sub)
    want_d = expected_intersection_exponent(rtype, n)
    if d != want_d:
        raise RuntimeError(
            f"{rtype.label()} at n={n}: intersection a^{d}, expected a^{want_d}"
        )
    iso = iso_type(sub)
    want_kind = expected_iso_kind(rtype, n)
    if iso.kind != want_kind:
        raise RuntimeError(
            f"{rtype.label()} at n={n}: iso {iso.kind}, expected {want_kind}"
        )
    return ClassificationRecord(sub, rtype, iso, d, None)


def representatives(n: int) -> list[ClassificationRecord]:
    return [representative(rt, n) for rt in representative_types(n)]


def representative_coincidences(n: int) -> list[list[RegularType]]:
    """Groups of distinct family tags realized by the same subgroup
    (this happens only at n = 3, where the direct-product and
    quasidihedral representatives coincide)."""
    seen: dict[frozenset[Perm], list[RegularType]] = {}
    for rec in representatives(n):
        key = rec.subgroup.elements
        assert key is not None
        seen.setdefault(key, []).append(rec.rtype)
    return [types for types in seen.values() if len(types) > 1]


def intersection_with_translations(sub: PermSubgroup) -> int:
    """The exponent d such that the translations inside sub are <a^d>."""
    mod = sub.degree
    d = mod
    for p in sub.sorted_elements():
        im = p.images
        shift = im[0]
        if all((g + shift) % mod == im[g] for g in range(mod)):
            d = gcd(d, shift)
    return d if d else mod


def enumerate_regular_subgroups(n: int) -> list[ClassificationRecord]:
    """Every regular subgroup of the holomorph at width n, each matched
    by a verified conjugator to exactly one canonical representative.

    Widths 3..5 are fully exhaustive; 6..8 search the generator shapes
    that can carry a regular subgroup.
    """
    _check_n(n)
    if n <= FULL_ENUM_MAX_N:
        return _enumerate_full(n)
    if n <= STRUCTURED_ENUM_MAX_N:
        return _enumerate_structured(n)
    raise ValueError(f"enumeration supports widths 3..{STRUCTURED_ENUM_MAX_N}")


def cyclic_regular_affine_subgroups(
    n: int, elements: Sequence[AffineMap]
) -> list[tuple[AffineMap, frozenset[AffineMap]]]:
    """All cyclic regular subgroups of a set of affine maps of Z_n,
    returned as (generator, element set), deduplicated.

    An affine map generates a regular cyclic group exactly when it is a
    single n-cycle, i.e. when 0 has a full orbit under it.
    """
    found: dict[frozenset[AffineMap], AffineMap] = {}
    for h in elements:
        g, steps = h.act(0), 1
        while g != 0:
            g = h.act(g)
            steps += 1
        if steps != n:
            continue
        cyc = [AffineMap.identity(n)]
        cur = h
        while not cur.is_identity():
            cyc.append(cur)
            cur = cur.then(h)
        key = frozenset(cyc)
        if key not in found:
            found[key] = h
    return [(gen, elems) for elems, gen in found.items()]


# exhaustive engine (widths 3..5)


class _HolTable:
    """Integer-indexed multiplication table of the holomorph of Z_{2^n}.

    Element id = t * 2^(n-1) + (m >> 1) over pairs (t, m) with m odd.
    """

    def __init__(self, n: int):
        self.n = n
        mod = self.mod = 1 << n
        half = self.half = 1 << (n - 1)
        self.elements = [(t, m) for t in range(mod) for m in range(1, mod, 2)]
        inv_unit = [0] * mod
        for m in range(1, mod, 2):
            inv_unit[m] = pow(m, -1, mod)
        size = len(self.elements)
        mul = []
        for t1, m1 in self.elements:
            mi = inv_unit[m1]
            row = [0] * size
            j = 0
            for t2 in range(mod):
                tt = (t1 + t2 * mi) % mod * half
                for m2 in range(1, mod, 2):
                    row[j] = tt + (m1 * m2 % mod >> 1)
                    j += 1
            mul.append(row)
        self.mul = mul
        self.inv = [
            (-t * m) % mod * half + (inv_unit[m] >> 1) for t, m in self.elements
        ]
        self.identity = 0  # (t=0, m=1)
        self.fpf = [self._fixed_point_free(t, m) for t, m in self.elements]
        self.act0 = [t * m % mod for t, m in self.elements]

    def _fixed_point_free(self, t: int, m: int) -> bool:
        if t == 0 and m == 1:
            return False  # the identity fixes everything
        return all((g + t) * m % self.mod != g for g in range(self.mod))

    def affine(self, i: int) -> AffineMap:
        t, m = self.elements[i]
        return AffineMap(self.mod, t, m)

    def closure_ids(self, gen_ids: Sequence[int]) -> frozenset[int]:
        elems = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for e in frontier:
                row = self.mul[e]
                for g in gen_ids:
                    f = row[g]
                    if f not in elems:
                        elems.add(f)
                        nxt.append(f)
            frontier = nxt
        return frozenset(elems)

    def id_of_affine(self, aff: AffineMap) -> int:
        return aff.t * self.half + (aff.m >> 1)


def _semiregular_subgroup_levels(
    table: _HolTable,
    prune_semiregular: bool = True,
    depth: Optional[int] = None,
) -> list[dict[frozenset[int], tuple[int, ...]]]:
    """Subgroups of order 2^level grown by index-two coset extensions,
    level by level up to 2^depth (default 2^n); optionally restricted
    to fixed-point-free (semiregular) subgroups, which loses no regular
    subgroup."""
    n = table.n
    mul, inv, fpf = table.mul, table.inv, table.fpf
    size = len(table.elements)
    levels = [{frozenset([table.identity]): ()}]
    for _ in range(depth if depth is not None else n):
        nxt: dict[frozenset[int], tuple[int, ...]] = {}
        for sub, gens in levels[-1].items():
            mask = 0
            for e in sub:
                mask |= 1 << e
            for g in range(size):
                if mask >> g & 1:
                    continue
                if prune_semiregular and not fpf[g]:
                    continue
                if not mask >> mul[g][g] & 1:
                    continue  # g^2 must land back in the subgroup
                gi = inv[g]
                if any(
                    not mask >> mul[mul[gi][s]][g] & 1 for s in gens
                ):
                    continue  # g must normalize the subgroup
                coset = [mul[s][g] for s in sub]
                if prune_semiregular and not all(fpf[c] for c in coset):
                    continue
                grown = frozenset([*sub, *coset])
                if grown not in nxt:
                    nxt[grown] = (*gens, g)
        levels.append(nxt)
    return levels


def regular_subgroup_sets(
    n: int, prune_semiregular: bool = True
) -> list[tuple[frozenset[int], tuple[int, ...], _HolTable]]:
    """All regular subgroups at width n <= 5 as id-sets with generators."""
    if not 3 <= n <= FULL_ENUM_MAX_N:
        raise ValueError(f"full enumeration supports widths 3..{FULL_ENUM_MAX_N}")
    table = _HolTable(n)
    top = _semiregular_subgroup_levels(table, prune_semiregular)[-1]
    out = []
    for sub, gens in sorted(top.items(), key=lambda kv: sorted(kv[0])):
        if len({table.act0[e] for e in sub}) == table.mod:
            out.append((sub, gens, table))
    return out


def _find_conjugator_ids(
    table: _HolTable, gens: Sequence[int], target_mask: int
) -> Optional[int]:
    mul, inv = table.mul, table.inv
    for w in range(len(table.elements)):
        wi = inv[w]
        if all(target_mask >> mul[mul[wi][g]][w] & 1 for g in gens):
            return w
    return None


def _enumerate_full(n: int) -> list[ClassificationRecord]:
    found = regular_subgroup_sets(n)
    if not found:
        return []
    table = found[0][2]
    canon = _canonical_rep_sets(n, table)
    records = []
    for sub, gens, _ in found:
        matches = []
        for rep_set, rep_mask, types in canon:
            if len(rep_set) != len(sub):
                continue
            w = _find_conjugator_ids(table, gens, rep_mask)
            if w is not None:
                matches.append((types, w))
        if len(matches) != 1:
            raise RuntimeError(
                f"subgroup matched {len(matches)} canonical representatives"
            )
        types, w = matches[0]
        perms = frozenset(table.affine(e).as_perm() for e in sub)
        gen_perms = [table.affine(g).as_perm() for g in gens]
        subgroup = from_elements(perms, gen_perms)
        records.append(
            ClassificationRecord(
                subgroup,
                types[0],
                iso_type(subgroup),
                intersection_with_translations(subgroup),
                table.affine(w).as_perm(),
            )
        )
    return records


def _canonical_rep_sets(
    n: int, table: _HolTable
) -> list[tuple[frozenset[int], int, list[RegularType]]]:
    """Representative element-id sets, with coinciding families merged."""
    out: list[tuple[frozenset[int], int, list[RegularType]]] = []
    for rt in representative_types(n):
        gen_ids = [
            table.id_of_affine(h.to_affine())
            for h in representative_generators(rt, n)
        ]
        rep_set = table.closure_ids(gen_ids)
        for prev_set, _mask, types in out:
            if prev_set == rep_set:
                types.append(rt)
                break
        else:
            mask = 0
            for e in rep_set:
                mask |= 1 << e
            out.append((rep_set, mask, [rt]))
    return out


# structured engine (widths 6..8)


def _enumerate_structured(n: int) -> list[ClassificationRecord]:
    mod = 1 << n
    found = _structured_regular_sets(n)
    reps = _affine_rep_sets(n)
    hol = [(t, m) for t in range(mod) for m in range(1, mod, 2)]
    inv_unit = [0] * mod
    for m in range(1, mod, 2):
        inv_unit[m] = pow(m, -1, mod)

    def then(a, b):
        return ((a[0] + b[0] * inv_unit[a[1]]) % mod, a[1] * b[1] % mod)

    def inv(a):
        return ((-a[0] * a[1]) % mod, inv_unit[a[1]])

    records = []
    for sub, gens in sorted(found.items(), key=lambda kv: sorted(kv[0])):
        matches = []
        for rep_set, types in reps:
            if len(rep_set) != len(sub):
                continue
            for w in hol:
                wi = inv(w)
                if all(then(then(wi, g), w) in rep_set for g in gens):
                    matches.append((types, w))
                    break
        if len(matches) != 1:
            raise RuntimeError(
                f"subgroup matched {len(matches)} canonical representatives"
            )
        types, w = matches[0]
        perms = frozenset(AffineMap(mod, t, m).as_perm() for t, m in sub)
        gen_perms = [AffineMap(mod, t, m).as_perm() for t, m in gens]
        subgroup = from_elements(perms, gen_perms)
        records.append(
            ClassificationRecord(
                subgroup,
                types[0],
                iso_type(subgroup),
                intersection_with_translations(subgroup),
                AffineMap(mod, w[0], w[1]).as_perm(),
            )
        )
    return records


def _affine_rep_sets(n: int) -> list[tuple[frozenset, list[RegularType]]]:
    out: list[tuple[frozenset, list[RegularType]]] = []
    for rt in representative_types(n):
        rec = representative(rt, n)
        assert rec.subgroup.elements is not None
        rep_set = frozenset(
            (a.t, a.m)
            for a in (affine_from_perm(p) for p in rec.subgroup.elements)
        )
        for prev, types in out:
            if prev == rep_set:
                types.append(rt)
                break
        else:
            out.append((rep_set, [rt]))
    return out


def _structured_regular_sets(n: int) -> dict[frozenset, tuple]:
    """Regular subgroups found by searching the viable generator shapes:
    a cyclic core of translations extended by one semiregular element,
    or by a flip together with an even-translation twist."""
    mod = 1 << n
    gamma_mod = 1 << (n - 2)
    inv_unit = [0] * mod
    for m in range(1, mod, 2):
        inv_unit[m] = pow(m, -1, mod)
    ident = (0, 1)

    def then(a, b):
        return ((a[0] + b[0] * inv_unit[a[1]]) % mod, a[1] * b[1] % mod)

    def cycle(h):
        out = [ident]
        cur = h
        while cur != ident:
            out.append(cur)
            cur = then(cur, h)
        return out

    found: dict[frozenset, tuple] = {}

    def record(elems, gens):
        if len(elems) != mod:
            return
        if len({t * m % mod for t, m in elems}) != mod:
            return  # not transitive
        key = frozenset(elems)
        if key not in found:
            found[key] = tuple(gens)

    ax = (1, mod - 1)
    singles = [(ax)]
    for gamma in range(1, gamma_mod):
        g2 = gamma & -gamma
        m5 = pow(5, gamma, mod)
        t = 1
        while t < 4 * g2 and t <= mod:
            singles.append((t % mod, m5))
            t <<= 1
        singles.append((1, -m5 % mod))
    singles.append((1, 1))  # the plain translation generator

    for h in singles:
        cyc = cycle(h)
        for s in range(1, n + 1):
            step = 1 << s
            if s < n:
                core = range(0, mod, step)
                gens = (h, (step, 1))
            else:
                core = (0,)
                gens = (h,)
            elems = {((c + t) % mod, m) for c in core for t, m in cyc}
            record(elems, gens)

    for gamma in range(1, gamma_mod):
        g2 = gamma & -gamma
        m5 = pow(5, gamma, mod)
        for s in range(1, n + 1):
            step = 1 << s
            for eps in range(0, min(step, mod), 2):
                eps2 = eps & -eps if eps else step
                if eps2 > 4 * g2:
                    continue
                gens = [ax, (eps % mod, m5)]
                if s < n:
                    gens.append((step % mod, 1))
                elems = _bounded_closure(gens, then, ident, mod)
                if elems is not None:
                    record(elems, tuple(gens))
    return found


def _bounded_closure(gens, then, ident, bound):
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for e in frontier:
            for g in gens:
                f = then(e, g)
                if f not in elems:
                    if len(elems) >= bound:
                        return None
                    elems.add(f)
                    nxt.append(f)
        frontier = nxt
    return elems


def _check_n(n: int) -> None:
    if n < 3:
        raise ValueError(f"width must be >= 3, got {n}")


def _check_twist(t: Optional[int], n: int) -> None:
    if t is None or not 0 <= t <= n - 3:
        raise ValueError(f"twist parameter {t} outside 0..{n - 3}")
