"""Out-balls, growth series, and the growth-domination inequality with
explicit constants.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import BlackBoxSemigroup, FiniteSemigroup, SubSemigroup, factorize_element
from .errors import BudgetExceeded, HypothesisFails, InputError

DEFAULT_BUDGET = 1_000_000


class _Identity:
    """Sentinel for the adjoined identity of a black-box semigroup."""

    def __repr__(self):
        return "<1>"


IDENTITY = _Identity()


def out_ball(sem, gens, start, radius: int, budget: int = DEFAULT_BUDGET):
    """Elements reachable from ``start`` by right-multiplying at most
    ``radius`` factors from the generating set (identity factors allowed, so
    the ball contains ``start`` and grows monotonically).

    For a FiniteSemigroup the result is a frozenset of S^1 indices with
    ``order`` as the adjoined identity.  For a BlackBoxSemigroup, ``start``
    may be the IDENTITY sentinel, elements are deduplicated by canonical
    encoding, and the result is a tuple of distinct elements in discovery
    order; exploring more than ``budget`` of them raises BudgetExceeded.
    """
    if radius < 0:
        raise InputError("radius must be nonnegative")
    if isinstance(sem, FiniteSemigroup):
        ball = {start}
        frontier = [start]
        for _ in range(radius):
            new = []
            for x in frontier:
                for g in gens:
                    p = sem.mul1(x, g)
                    if p not in ball:
                        ball.add(p)
                        new.append(p)
            if not new:
                break
            frontier = new
        return frozenset(ball)
    if isinstance(sem, BlackBoxSemigroup):
        enc = sem.encode
        seen = {("id",) if start is IDENTITY else ("elt", enc(start)): start}
        frontier = [start]
        for _ in range(radius):
            new = []
            for x in frontier:
                for g in gens:
                    p = g if x is IDENTITY else sem.multiply(x, g)
                    key = ("elt", enc(p))
                    if key not in seen:
                        if len(seen) >= budget:
                            raise BudgetExceeded(
                                f"more than {budget} distinct elements explored"
                            )
                        seen[key] = p
                        new.append(p)
            if not new:
                break
            frontier = new
        return tuple(seen.values())
    raise InputError("unsupported semigroup kind")


GrowthSeries = tuple[int, ...]


def growth_function(sem, gens, m_max: int, budget: int = DEFAULT_BUDGET) -> GrowthSeries:
    """Ball sizes around the adjoined identity for radii 0..m_max."""
    if m_max < 0:
        raise InputError("m_max must be nonnegative")
    if isinstance(sem, FiniteSemigroup):
        start = sem.order
    elif isinstance(sem, BlackBoxSemigroup):
        start = IDENTITY
    else:
        raise InputError("unsupported semigroup kind")
    series = []
    for m in range(m_max + 1):
        series.append(len(out_ball(sem, gens, start, m, budget=budget)))
    return tuple(series)


@dataclass(frozen=True)
class DominationReport:
    """Outcome of the growth-domination check g_S(n) <= k1 * g_T(k2 * n)."""

    k1: int
    k2: int
    r_set: tuple[int, ...]
    rows: tuple[tuple[int, int, int], ...]  # (n, g_S(n), k1 * g_T(k2 n))
    holds: bool


def domination_check(
    sem: FiniteSemigroup,
    sub: SubSemigroup,
    r_set: Sequence[int],
    b_gens: Sequence[int],
    m_max: int,
) -> DominationReport:
    """Check the growth comparison with constants built from a decomposition
    set R.

    Requires the adjoined identity in R and every S^1 element to factor as
    r * t with r in R and t in T^1.  The constants are k1 = |R| and k2 = the
    longest generator-length of the T^1 parts mu(a1, a2) in the chosen
    decompositions of products of generators from A = B u R.
    """
    n = sem.order
    r_sorted = sorted(set(r_set))
    if n not in r_sorted:
        raise HypothesisFails("the adjoined identity must belong to R")
    for r in r_sorted:
        if not 0 <= r <= n:
            raise InputError(f"R element {r} is not an S^1 index")
    t_one = list(sub.sorted_members()) + [n]

    def decompose(s):
        for r in r_sorted:
            for t in t_one:
                if sem.mul1(r, t) == s:
                    return r, t
        return None

    for s in range(n + 1):
        if decompose(s) is None:
            raise HypothesisFails(f"element {s} has no decomposition r * t")

    a_gens = sorted(set(b_gens) | set(r_sorted))
    b_sorted = sorted(set(b_gens))

    def length_b(t):
        if t == n:
            return 0
        return len(factorize_element(sem, b_sorted, t))

    k1 = len(r_sorted)
    k2 = 1
    for a1 in a_gens:
        for a2 in a_gens:
            _, mu = decompose(sem.mul1(a1, a2))
            k2 = max(k2, length_b(mu))

    g_s = growth_function(sem, [g for g in a_gens if g != n], m_max)
    g_t = growth_function(sem, b_sorted, k2 * m_max)
    rows = []
    holds = True
    for m in range(m_max + 1):
        bound = k1 * g_t[k2 * m]
        rows.append((m, g_s[m], bound))
        holds &= g_s[m] <= bound
    return DominationReport(
        k1=k1,
        k2=k2,
        r_set=tuple(r_sorted),
        rows=tuple(rows),
        holds=holds,
    )
