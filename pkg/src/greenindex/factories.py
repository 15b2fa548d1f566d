"""Stock finite semigroups used as examples, test instances and CLI demos."""

from __future__ import annotations

from itertools import product

from .core import FiniteSemigroup, Homomorphism, validate_table


def zmod(n: int) -> FiniteSemigroup:
    """Integers mod n under addition."""
    return validate_table([[(x + y) % n for y in range(n)] for x in range(n)])


def trivial() -> FiniteSemigroup:
    return zmod(1)


def monogenic(index: int, period: int) -> FiniteSemigroup:
    """The semigroup generated by one element a with a^(index+period) =
    a^(index).  Element i stands for a^(i+1); order is index + period - 1.
    """
    n = index + period - 1

    def reduce(e):  # e is an exponent >= 1
        while e > n:
            e -= period
        return e

    rows = [
        [reduce(x + 1 + y + 1) - 1 for y in range(n)] for x in range(n)
    ]
    return validate_table(rows)


def right_zero(n: int) -> FiniteSemigroup:
    return validate_table([[y for y in range(n)] for _ in range(n)])


def left_zero(n: int) -> FiniteSemigroup:
    return validate_table([[x for _ in range(n)] for x in range(n)])


def rectangular_band(r: int, c: int) -> FiniteSemigroup:
    """Pairs (i, j) with (i, j)*(k, l) = (i, l)."""
    elems = [(i, j) for i in range(r) for j in range(c)]
    idx = {e: k for k, e in enumerate(elems)}
    rows = [
        [idx[(a[0], b[1])] for b in elems] for a in elems
    ]
    names = tuple(f"({i},{j})" for i, j in elems)
    return validate_table(rows, names=names)


def full_transformation_monoid(k: int) -> FiniteSemigroup:
    """All maps on k points under "apply left, then right" composition."""
    maps = sorted(product(range(k), repeat=k))
    idx = {m: i for i, m in enumerate(maps)}
    rows = [
        [idx[tuple(g[f[x]] for x in range(k))] for g in maps] for f in maps
    ]
    names = tuple("".join(str(v) for v in m) for m in maps)
    return validate_table(rows, names=names)


def symmetric_group(k: int) -> FiniteSemigroup:
    """Permutations of k points under "apply left, then right" composition."""
    perms = sorted(p for p in product(range(k), repeat=k) if len(set(p)) == k)
    idx = {p: i for i, p in enumerate(perms)}
    rows = [
        [idx[tuple(g[f[x]] for x in range(k))] for g in perms] for f in perms
    ]
    names = tuple("".join(str(v) for v in p) for p in perms)
    return validate_table(rows, names=names)


def direct_product(a: FiniteSemigroup, b: FiniteSemigroup) -> FiniteSemigroup:
    elems = [(x, y) for x in a.elements for y in b.elements]
    idx = {e: k for k, e in enumerate(elems)}
    rows = [
        [idx[(a.mul(x1, x2), b.mul(y1, y2))] for (x2, y2) in elems]
        for (x1, y1) in elems
    ]
    return validate_table(rows)


def mod_reduction(a: FiniteSemigroup, b: FiniteSemigroup) -> Homomorphism:
    """Reduction zmod(ka) -> zmod(kb) when kb divides ka."""
    ka, kb = a.order, b.order
    if ka % kb != 0:
        raise ValueError("target order must divide source order")
    return Homomorphism(source=a, target=b, mapping=tuple(x % kb for x in range(ka)))


def collapse_to_trivial(a: FiniteSemigroup) -> Homomorphism:
    return Homomorphism(
        source=a, target=trivial(), mapping=tuple(0 for _ in a.elements)
    )
