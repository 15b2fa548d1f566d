"""Relative Schutzenberger groups realized as permutation groups.

The stabilizer of an H-class H is the set of T^1 elements whose right
translation keeps H inside itself; two stabilizer elements are congruent when
they translate every point of H identically.  The quotient acts simply
transitively on H, so it is faithfully realized as the group of translation
permutations of H, with a Cayley table of its own.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import FiniteSemigroup, SubSemigroup, closure, is_group, validate_table
from .errors import (
    InternalInconsistency,
    NotAnHClass,
    NotComparable,
    NotGenerating,
)
from .relgreen import GreenData, relative_green


@dataclass(frozen=True)
class SchutzGroup:
    """Stabilizer, translation congruence and quotient group of one H-class.

    ``carrier`` fixes an ordering of the H-class; ``perms[g]`` is the
    permutation of carrier positions realized by group element g; and
    ``quotient[t]`` sends a stabilizer element to its group element.
    """

    h_class: frozenset[int]
    basepoint: int
    carrier: tuple[int, ...]
    stabilizer: tuple[int, ...]
    gamma_classes: tuple[tuple[int, ...], ...]
    group: FiniteSemigroup
    perms: tuple[tuple[int, ...], ...]
    quotient: dict[int, int]

    def quotient_index(self, t: int) -> int:
        try:
            return self.quotient[t]
        except KeyError:
            raise InternalInconsistency(
                f"{t} is not in the stabilizer of this H-class"
            ) from None

    @property
    def order(self) -> int:
        return self.group.order


def schutz_group(
    sem: FiniteSemigroup,
    sub: SubSemigroup,
    h_class,
    basepoint: int,
    green: GreenData | None = None,
) -> SchutzGroup:
    """Build the Schutzenberger group of an H-class (inside or outside T)."""
    h_class = frozenset(h_class)
    if green is None:
        green = relative_green(sem, sub)
    if basepoint not in h_class:
        raise NotAnHClass("basepoint must belong to the class")
    if h_class != green.h_class_of(basepoint):
        raise NotAnHClass("the given set is not a single relative H-class")

    n = sem.order
    t_one = list(sub.sorted_members()) + [n]
    carrier = tuple(sorted(h_class))
    pos = {h: p for p, h in enumerate(carrier)}

    stab = []
    perm_of: dict[int, tuple[int, ...]] = {}
    for t in t_one:
        if sem.mul1(basepoint, t) in h_class:
            stab.append(t)
            perm_of[t] = tuple(pos[sem.mul1(h, t)] for h in carrier)

    perms = sorted(set(perm_of.values()))
    perm_index = {p: i for i, p in enumerate(perms)}
    quotient = {t: perm_index[perm_of[t]] for t in stab}

    gamma: dict[int, list[int]] = {}
    for t in stab:
        gamma.setdefault(quotient[t], []).append(t)
    gamma_classes = tuple(tuple(gamma[g]) for g in sorted(gamma))

    table = [
        [perm_index[tuple(g[p] for p in f)] for g in perms] for f in perms
    ]
    group = validate_table(table)
    if not is_group(group):
        raise InternalInconsistency("translation quotient is not a group")
    return SchutzGroup(
        h_class=h_class,
        basepoint=basepoint,
        carrier=carrier,
        stabilizer=tuple(stab),
        gamma_classes=gamma_classes,
        group=group,
        perms=tuple(perms),
        quotient=quotient,
    )


@dataclass(frozen=True)
class HClassFamily:
    """The H-classes inside one R-class, linked back to a base class.

    ``to_witness[p]`` and ``back_witness[p]`` are T^1 elements translating
    the base class onto classes[p] and back, acting as mutually inverse
    bijections.  ``action`` records how T^1 permutes the family by right
    translation, with None as the sink for translations that leave it.
    """

    sem: FiniteSemigroup
    sub: SubSemigroup
    classes: tuple[frozenset[int], ...]
    base_pos: int
    to_witness: tuple[int, ...]
    back_witness: tuple[int, ...]
    action: dict[tuple[int, int], int | None]

    def act(self, p: int, t: int) -> int | None:
        return self.action[(p, t)]


def lambda_data(
    sem: FiniteSemigroup,
    sub: SubSemigroup,
    green: GreenData,
    h_class,
    basepoint: int,
) -> HClassFamily:
    """Collect the H-classes R-related to the given one, with connecting
    witnesses chosen smallest-first."""
    h_class = frozenset(h_class)
    if basepoint not in h_class or h_class != green.h_class_of(basepoint):
        raise NotAnHClass("the given set is not a single relative H-class")
    n = sem.order
    rid = green.r_id[basepoint]
    by_h: dict[int, set[int]] = {}
    for u in sem.elements:
        if green.r_id[u] == rid:
            by_h.setdefault(green.h_id[u], set()).add(u)
    classes = tuple(frozenset(c) for c in sorted(by_h.values(), key=min))
    base_pos = classes.index(h_class)

    t_one = list(sub.sorted_members()) + [n]
    to_w, back_w = [], []
    for p, cls in enumerate(classes):
        if p == base_pos:
            to_w.append(n)
            back_w.append(n)
            continue
        target = min(cls)
        fwd = next(
            (t for t in t_one if sem.mul1(basepoint, t) == target), None
        )
        bck = next(
            (t for t in t_one if sem.mul1(target, t) == basepoint), None
        )
        if fwd is None or bck is None:
            raise InternalInconsistency("R-related classes without witnesses")
        to_w.append(fwd)
        back_w.append(bck)

    action: dict[tuple[int, int], int | None] = {}
    sets = {cls: p for p, cls in enumerate(classes)}
    for p, cls in enumerate(classes):
        for t in t_one:
            image = frozenset(sem.mul1(h, t) for h in cls)
            action[(p, t)] = sets.get(image)
    return HClassFamily(
        sem=sem,
        sub=sub,
        classes=classes,
        base_pos=base_pos,
        to_witness=tuple(to_w),
        back_witness=tuple(back_w),
        action=action,
    )


def schutz_generators(
    b_gens: Sequence[int], family: HClassFamily, grp: SchutzGroup
) -> frozenset[int]:
    """Group generators harvested from generators of T: conjugate each
    generator's translation through the class-connecting witnesses.  Returns
    group element indices."""
    sem = family.sem
    if closure(sem, b_gens).members != family.sub.members:
        raise NotGenerating("the given set does not generate T")
    out = set()
    for p in range(len(family.classes)):
        for b in sorted(set(b_gens)):
            q = family.act(p, b)
            if q is None:
                continue
            elt = sem.mul1(
                sem.mul1(family.to_witness[p], b), family.back_witness[q]
            )
            out.add(grp.quotient_index(elt))
    return frozenset(out)


def generated_subgroup(grp: SchutzGroup, gens) -> frozenset[int]:
    """Closure of a set of group element indices inside the group."""
    if not gens:
        e = grp.group.identity
        return frozenset() if e is None else frozenset({e})
    seen = set(gens)
    frontier = list(gens)
    while frontier:
        new = []
        for x in frontier:
            for g in list(seen):
                for p in (grp.group.mul(x, g), grp.group.mul(g, x)):
                    if p not in seen:
                        seen.add(p)
                        new.append(p)
        frontier = new
    return frozenset(seen)


def find_generating_set(sem: FiniteSemigroup) -> tuple[int, ...]:
    """A small (not minimal) generating set, chosen deterministically."""
    gens: list[int] = []
    have: frozenset[int] = frozenset()
    for x in sem.elements:
        if x not in have:
            gens.append(x)
            have = closure(sem, gens).members
            if len(have) == sem.order:
                break
    return tuple(gens)


def element_orders(sem: FiniteSemigroup) -> tuple[int, ...]:
    """Multiplicative order of each element of a finite group."""
    e = sem.identity
    out = []
    for x in sem.elements:
        k, acc = 1, x
        while acc != e:
            acc = sem.mul(acc, x)
            k += 1
        out.append(k)
    return tuple(out)


def groups_isomorphic(a: FiniteSemigroup, b: FiniteSemigroup) -> bool:
    """Brute-force isomorphism test for two finite groups.

    Searches images of a small generating set of ``a``, pruning by element
    order, and extends each candidate to a full map by closing products.
    Intended for orders up to about 24.
    """
    if a.order != b.order:
        return False
    if not (is_group(a) and is_group(b)):
        raise NotComparable("isomorphism search expects two groups")
    if sorted(element_orders(a)) != sorted(element_orders(b)):
        return False
    gens = find_generating_set(a)
    orders_a = element_orders(a)
    orders_b = element_orders(b)
    candidates = [
        [y for y in b.elements if orders_b[y] == orders_a[g]] for g in gens
    ]

    def extend(images):
        hom = {a.identity: b.identity}
        frontier = list(zip(gens, images))
        for g, im in frontier:
            hom[g] = im
        queue = list(hom)
        while queue:
            x = queue.pop()
            for g, im in zip(gens, images):
                for xa, xb in ((a.mul(x, g), b.mul(hom[x], im)),
                               (a.mul(g, x), b.mul(im, hom[x]))):
                    if xa in hom:
                        if hom[xa] != xb:
                            return None
                    else:
                        hom[xa] = xb
                        queue.append(xa)
        if len(hom) != a.order or len(set(hom.values())) != a.order:
            return None
        for x in a.elements:
            for y in a.elements:
                if hom[a.mul(x, y)] != b.mul(hom[x], hom[y]):
                    return None
        return hom

    def search(k, chosen):
        if k == len(gens):
            return extend(chosen) is not None
        for y in candidates[k]:
            if search(k + 1, chosen + [y]):
                return True
        return False

    return search(0, [])


@dataclass(frozen=True)
class TransportReport:
    relation: str
    stabilizers_equal: bool | None
    gamma_equal: bool | None
    isomorphic: bool | None
    checked: bool


def check_L_R_transport(green: GreenData, i: int, j: int,
                        iso_cap: int = 24) -> TransportReport:
    """Compare the Schutzenberger data of two complement classes.

    L-related classes must share the stabilizer and its congruence
    partition; R-related classes must have isomorphic groups (brute force,
    skipped above ``iso_cap``).
    """
    sem, sub = green.sem, green.sub
    ci = green.complement_classes[i - 1]
    cj = green.complement_classes[j - 1]
    ri, rj = green.rep_of(i), green.rep_of(j)
    l_related = green.l_id[ri] == green.l_id[rj]
    r_related = green.r_id[ri] == green.r_id[rj]
    if not l_related and not r_related:
        raise NotComparable("classes are neither L-related nor R-related")
    gi = schutz_group(sem, sub, ci, ri, green=green)
    gj = schutz_group(sem, sub, cj, rj, green=green)

    stab_eq = gamma_eq = iso = None
    checked = True
    if l_related:
        stab_eq = gi.stabilizer == gj.stabilizer
        parts_i = {frozenset(c) for c in gi.gamma_classes}
        parts_j = {frozenset(c) for c in gj.gamma_classes}
        gamma_eq = parts_i == parts_j
    if r_related:
        if gi.order <= iso_cap:
            iso = groups_isomorphic(gi.group, gj.group)
        else:
            checked = False
    return TransportReport(
        relation=("LR" if l_related and r_related else "L" if l_related else "R"),
        stabilizers_equal=stab_eq,
        gamma_equal=gamma_eq,
        isomorphic=iso,
        checked=checked,
    )
