"""Finite semigroups as validated Cayley tables.

Elements are dense integer indices 0..n-1; an optional name table is carried
for pretty-printing only.  The monoid completion adjoins a fresh identity at
index n even when the semigroup already has one, so every formula in the
package can use the uniform convention "index n means the adjoined identity".
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .errors import (
    DomainMismatch,
    EmptyGenerators,
    InputError,
    InvalidHomomorphism,
    NotAssociative,
    NotClosed,
    NotInSubsemigroup,
    OutOfRange,
)


@dataclass(frozen=True)
class FiniteSemigroup:
    """A finite semigroup given by a full Cayley table.

    ``table[x][y]`` is the product x*y.  ``identity`` is the two-sided
    identity if one exists.  Instances are immutable and safe to share;
    build them with :func:`validate_table` rather than directly.
    """

    order: int
    table: tuple[tuple[int, ...], ...]
    identity: int | None = None
    names: tuple[str, ...] | None = None

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def mul1(self, x: int, y: int) -> int:
        """Product in the monoid completion; index ``order`` is the fresh
        adjoined identity."""
        n = self.order
        if x == n:
            return y
        if y == n:
            return x
        return self.table[x][y]

    def prod1(self, xs: Iterable[int]) -> int:
        """Evaluate a word of S^1 indices; the empty word gives the adjoined
        identity."""
        acc = self.order
        for x in xs:
            acc = self.mul1(acc, x)
        return acc

    @property
    def elements(self) -> range:
        return range(self.order)

    def name_of(self, x: int) -> str:
        if x == self.order:
            return "<1>"
        if self.names is not None:
            return self.names[x]
        return str(x)

    def to_json_dict(self) -> dict:
        out: dict = {"order": self.order, "table": [list(r) for r in self.table]}
        if self.names is not None:
            out["names"] = list(self.names)
        return out

    @staticmethod
    def from_json_dict(data: dict) -> "FiniteSemigroup":
        try:
            table = data["table"]
        except (KeyError, TypeError):
            raise InputError("semigroup JSON needs a 'table' field")
        names = data.get("names")
        if names is not None:
            names = tuple(str(s) for s in names)
        sem = validate_table(table, names=names)
        if "order" in data and data["order"] != sem.order:
            raise InputError(
                f"declared order {data['order']} != table size {sem.order}"
            )
        return sem


def validate_table(
    table: Sequence[Sequence[int]], names: tuple[str, ...] | None = None
) -> FiniteSemigroup:
    """Check a square integer table for associativity and wrap it.

    Detects a two-sided identity if one exists.  Raises ``OutOfRange`` for a
    bad entry and ``NotAssociative`` with a witness triple.
    """
    rows = tuple(tuple(int(v) for v in row) for row in table)
    n = len(rows)
    if n == 0:
        raise InputError("empty table")
    for row in rows:
        if len(row) != n:
            raise InputError("table is not square")
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if not 0 <= v < n:
                raise OutOfRange(f"entry table[{i}][{j}] = {v} not in [0, {n})")
    if names is not None and len(names) != n:
        raise InputError("names length != order")
    for x in range(n):
        rx = rows[x]
        for y in range(n):
            rxy = rows[rx[y]]
            ry = rows[y]
            for z in range(n):
                if rxy[z] != rx[ry[z]]:
                    raise NotAssociative(x, y, z)
    identity = None
    for e in range(n):
        if all(rows[e][x] == x and rows[x][e] == x for x in range(n)):
            identity = e
            break
    return FiniteSemigroup(order=n, table=rows, identity=identity, names=names)


@dataclass(frozen=True)
class MonoidCompletion:
    """A semigroup with a fresh identity adjoined at index ``base.order``.

    The new element is never identified with an existing identity of the
    base semigroup.
    """

    base: FiniteSemigroup
    semigroup: FiniteSemigroup = field(compare=False)
    identity_index: int = field(compare=False)


def monoid_completion(base: FiniteSemigroup) -> MonoidCompletion:
    n = base.order
    rows = [list(row) + [x] for x, row in enumerate(base.table)]
    rows.append(list(range(n + 1)))
    names = None
    if base.names is not None:
        names = base.names + ("<1>",)
    sem = validate_table(rows, names=names)
    return MonoidCompletion(base=base, semigroup=sem, identity_index=n)


@dataclass(frozen=True)
class SubSemigroup:
    """A nonempty multiplicatively closed subset of a parent semigroup."""

    parent: FiniteSemigroup
    members: frozenset[int]

    def __post_init__(self):
        if not self.members:
            raise NotClosed("subsemigroup is empty")
        tab = self.parent.table
        n = self.parent.order
        for x in self.members:
            if not 0 <= x < n:
                raise OutOfRange(f"member {x} not in [0, {n})")
            for y in self.members:
                if tab[x][y] not in self.members:
                    raise NotClosed(
                        f"not closed: {x}*{y} = {tab[x][y]} is outside"
                    )

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def __len__(self) -> int:
        return len(self.members)

    def sorted_members(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))

    def complement(self) -> frozenset[int]:
        return frozenset(self.parent.elements) - self.members

    def as_semigroup(self) -> tuple[FiniteSemigroup, tuple[int, ...]]:
        """Reindex the subsemigroup as a standalone semigroup.

        Returns the new semigroup and the tuple mapping new indices back to
        parent indices.
        """
        order = self.sorted_members()
        back = {p: i for i, p in enumerate(order)}
        tab = [[back[self.parent.mul(x, y)] for y in order] for x in order]
        names = None
        if self.parent.names is not None:
            names = tuple(self.parent.names[p] for p in order)
        return validate_table(tab, names=names), order

    def to_json_dict(self) -> dict:
        return {"members": sorted(self.members)}


def closure(sem: FiniteSemigroup, gens: Iterable[int]) -> SubSemigroup:
    """Smallest subsemigroup of ``sem`` containing ``gens`` (BFS)."""
    gens = sorted(set(gens))
    if not gens:
        raise EmptyGenerators("closure needs at least one generator")
    for g in gens:
        if not 0 <= g < sem.order:
            raise OutOfRange(f"generator {g} not in [0, {sem.order})")
    seen = set(gens)
    frontier = list(gens)
    tab = sem.table
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                for p in (tab[x][g], tab[g][x]):
                    if p not in seen:
                        seen.add(p)
                        new.append(p)
        frontier = new
    return SubSemigroup(parent=sem, members=frozenset(seen))


@dataclass(frozen=True)
class Homomorphism:
    """A multiplication-respecting map between two finite semigroups."""

    source: FiniteSemigroup
    target: FiniteSemigroup
    mapping: tuple[int, ...]

    def __post_init__(self):
        if len(self.mapping) != self.source.order:
            raise InvalidHomomorphism("mapping length != source order")
        for v in self.mapping:
            if not 0 <= v < self.target.order:
                raise InvalidHomomorphism(f"image {v} outside target")
        m = self.mapping
        for x in self.source.elements:
            for y in self.source.elements:
                if m[self.source.mul(x, y)] != self.target.mul(m[x], m[y]):
                    raise InvalidHomomorphism(
                        f"map({x}*{y}) != map({x})*map({y})"
                    )

    def __call__(self, x: int) -> int:
        return self.mapping[x]


def strong_semilattice(
    t_sem: FiniteSemigroup, u_sem: FiniteSemigroup, phi: Homomorphism
) -> tuple[FiniteSemigroup, SubSemigroup]:
    """Glue two semigroups along a homomorphism phi: T -> U.

    The result S lives on the disjoint union (T first, then U); a mixed
    product pushes the T-factor through phi and multiplies in U.  Returns S
    together with the embedded copy of T as a subsemigroup; the complement
    of that copy is exactly the copy of U.
    """
    if phi.source != t_sem or phi.target != u_sem:
        raise DomainMismatch("phi must map the first semigroup into the second")
    nt, nu = t_sem.order, u_sem.order
    n = nt + nu

    def prod(x, y):
        if x < nt and y < nt:
            return t_sem.mul(x, y)
        if x >= nt and y >= nt:
            return nt + u_sem.mul(x - nt, y - nt)
        if x < nt:
            return nt + u_sem.mul(phi(x), y - nt)
        return nt + u_sem.mul(x - nt, phi(y))

    rows = [[prod(x, y) for y in range(n)] for x in range(n)]
    names = None
    if t_sem.names is not None and u_sem.names is not None:
        names = tuple(f"t:{s}" for s in t_sem.names) + tuple(
            f"u:{s}" for s in u_sem.names
        )
    sem = validate_table(rows, names=names)
    sub = SubSemigroup(parent=sem, members=frozenset(range(nt)))
    return sem, sub


def is_group(sem: FiniteSemigroup) -> bool:
    """True iff the semigroup has an identity and every element an inverse."""
    e = sem.identity
    if e is None:
        return False
    for x in sem.elements:
        if not any(
            sem.mul(x, y) == e and sem.mul(y, x) == e for y in sem.elements
        ):
            return False
    return True


def is_cancellative(sem: FiniteSemigroup) -> bool:
    """True iff all rows and all columns of the table are permutations."""
    full = set(sem.elements)
    for x in sem.elements:
        if set(sem.table[x]) != full:
            return False
    for y in sem.elements:
        if {sem.table[x][y] for x in sem.elements} != full:
            return False
    return True


def shortlex_forms(
    sem: FiniteSemigroup, gens: Sequence[int]
) -> dict[int, tuple[int, ...]]:
    """Shortest-then-lexicographic word over ``gens`` for every reachable
    element.  Letter order is the order of ``gens``; words are tuples of
    generator elements.

    The set of minimal words is prefix-closed, so extending recorded words in
    order yields minimal words.
    """
    if not gens:
        raise EmptyGenerators("need at least one generator")
    forms: dict[int, tuple[int, ...]] = {}
    level: list[tuple[int, tuple[int, ...]]] = []
    for g in gens:
        if g not in forms:
            forms[g] = (g,)
            level.append((g, (g,)))
    while level:
        nxt = []
        for elt, word in level:
            for g in gens:
                p = sem.mul(elt, g)
                if p not in forms:
                    w = word + (g,)
                    forms[p] = w
                    nxt.append((p, w))
        level = nxt
    return forms


def factorize_element(
    sem: FiniteSemigroup, gens: Sequence[int], target: int
) -> tuple[int, ...]:
    """Shortest-then-lexicographic word over ``gens`` evaluating to
    ``target``; raises ``NotInSubsemigroup`` when unreachable."""
    forms = shortlex_forms(sem, gens)
    if target not in forms:
        raise NotInSubsemigroup(f"{target} is not generated by {list(gens)}")
    return forms[target]


@dataclass(frozen=True)
class BlackBoxSemigroup:
    """A semigroup known only through its multiplication callable.

    Elements must be equality-comparable and canonically encodable; the
    ``encode`` callable maps an element to a hashable key (identity by
    default).  Associativity can only be spot-checked, never proven.
    """

    multiply: Callable
    generators: tuple
    encode: Callable = field(default=lambda x: x)

    def spot_check_associativity(self, samples: int = 200, depth: int = 4,
                                 seed: int = 0):
        """Sample triples of bounded products of generators and test
        associativity; returns a witness triple or None."""
        rng = random.Random(seed)
        pool = list(self.generators)
        for _ in range(samples):
            elems = []
            for _ in range(3):
                x = rng.choice(pool)
                for _ in range(rng.randrange(depth)):
                    x = self.multiply(x, rng.choice(pool))
                elems.append(x)
            a, b, c = elems
            if self.encode(self.multiply(self.multiply(a, b), c)) != self.encode(
                self.multiply(a, self.multiply(b, c))
            ):
                return (a, b, c)
        return None
