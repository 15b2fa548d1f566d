"""Shared test machinery: instance generators and small-order enumeration."""

from __future__ import annotations

import random

from greenindex import core, factories


def fixed_instances():
    """The four standing (S, T) instances with generating sets for S and T."""
    z6 = factories.zmod(6)
    t03 = core.closure(z6, [3])

    z2 = factories.zmod(2)
    s1, t1 = core.strong_semilattice(
        z2, factories.trivial(), factories.collapse_to_trivial(z2)
    )

    z4 = factories.zmod(4)
    s2, t2 = core.strong_semilattice(
        z4, z2, factories.mod_reduction(z4, z2)
    )

    s3 = factories.symmetric_group(3)
    tsub = core.closure(s3, [2])

    return [
        ("z6_mod2", z6, t03, (1,), (3,)),
        ("ss_z2_trivial", s1, t1, (1, 2), (1,)),
        ("ss_z4_z2", s2, t2, (1, 5), (1,)),
        ("s3_nonnormal", s3, tsub, (2, 3), (2,)),
    ]


_POOL_CACHE = None


def _base_pool():
    global _POOL_CACHE
    if _POOL_CACHE is not None:
        return _POOL_CACHE
    pool = [
        factories.zmod(2),
        factories.zmod(3),
        factories.zmod(4),
        factories.zmod(5),
        factories.zmod(6),
        factories.zmod(8),
        factories.zmod(12),
        factories.monogenic(2, 3),
        factories.monogenic(3, 2),
        factories.monogenic(1, 5),
        factories.right_zero(2),
        factories.right_zero(3),
        factories.left_zero(3),
        factories.rectangular_band(2, 3),
        factories.full_transformation_monoid(2),
        factories.full_transformation_monoid(3),
        factories.symmetric_group(3),
    ]
    z4, z2 = factories.zmod(4), factories.zmod(2)
    z6, z3 = factories.zmod(6), factories.zmod(3)
    pool.append(core.strong_semilattice(z4, z2, factories.mod_reduction(z4, z2))[0])
    pool.append(core.strong_semilattice(z6, z3, factories.mod_reduction(z6, z3))[0])
    pool.append(
        core.strong_semilattice(z6, factories.trivial(),
                                factories.collapse_to_trivial(z6))[0]
    )
    pool.append(factories.direct_product(factories.zmod(4), factories.right_zero(2)))
    pool.append(factories.direct_product(factories.zmod(3), factories.zmod(3)))
    pool.append(factories.direct_product(factories.monogenic(2, 2),
                                         factories.zmod(3)))
    pool.append(factories.direct_product(factories.zmod(12),
                                         factories.right_zero(3)))
    pool.append(factories.direct_product(factories.full_transformation_monoid(2),
                                         factories.symmetric_group(3)))
    _POOL_CACHE = [s for s in pool if s.order <= 40]
    return _POOL_CACHE


def random_pairs(count: int, seed: int = 20250808):
    """Deterministic stream of (S, T) pairs with |S| <= 40."""
    rng = random.Random(seed)
    pool = _base_pool()
    out = []
    while len(out) < count:
        sem = rng.choice(pool)
        k = rng.randint(1, 3)
        gens = rng.sample(range(sem.order), min(k, sem.order))
        sub = core.closure(sem, gens)
        out.append((sem, sub))
    return out


def semigroup_tables(n: int):
    """All associative Cayley tables on {0..n-1}, by backtracking."""
    table = [[None] * n for _ in range(n)]
    cells = [(i, j) for i in range(n) for j in range(n)]

    def consistent(i, j):
        # check every associativity triple whose four lookups are defined
        # and which involves the cell (i, j)
        for x in range(n):
            for y in range(n):
                xy = table[x][y]
                if xy is None:
                    continue
                for z in range(n):
                    yz = table[y][z]
                    if yz is None:
                        continue
                    if (x, y) != (i, j) and (y, z) != (i, j) \
                            and (xy, z) != (i, j) and (x, yz) != (i, j):
                        continue
                    left = table[xy][z]
                    right = table[x][yz]
                    if left is not None and right is not None and left != right:
                        return False
        return True

    def fill(k):
        if k == len(cells):
            yield tuple(tuple(row) for row in table)
            return
        i, j = cells[k]
        for v in range(n):
            table[i][j] = v
            if consistent(i, j):
                yield from fill(k + 1)
        table[i][j] = None

    yield from fill(0)
