"""Pushing class representatives through products, and what that buys:
Schreier-style generators for the subsemigroup, the converse extension of
generating sets, and a decision procedure for word equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .core import FiniteSemigroup, closure, factorize_element
from .errors import (
    InternalInconsistency,
    InvalidLetter,
    NotGenerating,
    NotInSubsemigroup,
)
from .relgreen import IDENTITY_CLASS, ConnectorTables, GreenData


@dataclass(frozen=True)
class RewriteTrace:
    """One application of the representative-pushing recursion.

    ``word`` is the input word (S^1 elements), ``output_word`` the produced
    word of T^1 elements, and ``steps`` the chain of class indices visited.
    For a right push (representative entering from the left),
    steps[k] is the class after consuming k letters and
    rep(input_class) * word = output_word * rep(output_class).
    For a left push the recursion runs right to left: steps[k] is the class
    sitting right of position k, steps[-1] = input_class, steps[0] =
    output_class, and word * rep(input_class) = rep(output_class) * output_word.
    """

    input_class: int
    word: tuple[int, ...]
    output_word: tuple[int, ...]
    output_class: int
    steps: tuple[int, ...]


def push_right(i: int, word: Sequence[int], conn: ConnectorTables) -> RewriteTrace:
    """Move the representative of class i through ``word`` left to right."""
    steps = [i]
    out = []
    cur = i
    for s in word:
        out.append(conn.right_factor[cur][s])
        cur = conn.right_class[cur][s]
        steps.append(cur)
    return RewriteTrace(
        input_class=i,
        word=tuple(word),
        output_word=tuple(out),
        output_class=cur,
        steps=tuple(steps),
    )


def push_left(i: int, word: Sequence[int], conn: ConnectorTables) -> RewriteTrace:
    """Move the representative of class i through ``word`` right to left."""
    steps = [i]
    out = []
    cur = i
    for s in reversed(word):
        out.append(conn.left_factor[s][cur])
        cur = conn.left_class[s][cur]
        steps.append(cur)
    out.reverse()
    steps.reverse()
    return RewriteTrace(
        input_class=i,
        word=tuple(word),
        output_word=tuple(out),
        output_class=cur,
        steps=tuple(steps),
    )


def schreier_generators(
    sem: FiniteSemigroup,
    gens: Sequence[int],
    sub,
    green: GreenData,
    conn: ConnectorTables,
) -> tuple[frozenset[int], Callable[[int], tuple[int, ...]]]:
    """Generators of T harvested from a generating set of S.

    Returns the set B = { right_factor(i, left_factor(a, j)) } with the
    adjoined identity dropped, together with a factorizer that writes any
    t in T as a word over B by a two-pass push (the adjoined representative
    right to left, then the resulting representative left to right).
    """
    n = sem.order
    if closure(sem, gens).members != frozenset(sem.elements):
        raise NotGenerating("the given set does not generate S")
    k1 = green.class_count
    bset = set()
    for a in gens:
        for j in range(k1):
            t = conn.left_factor[a][j]
            for i in range(k1):
                b = conn.right_factor[i][t]
                if b != n:
                    bset.add(b)
    gens_sorted = sorted(set(gens))

    def factorizer(t: int) -> tuple[int, ...]:
        if t not in sub.members:
            raise NotInSubsemigroup(f"{t} is not in the subsemigroup")
        word = factorize_element(sem, gens_sorted, t)
        first = push_left(IDENTITY_CLASS, word, conn)
        second = push_right(first.output_class, first.output_word, conn)
        if second.output_class != IDENTITY_CLASS:
            raise InternalInconsistency(
                "two-pass rewrite of a T element did not land back in T"
            )
        return tuple(b for b in second.output_word if b != n)

    return frozenset(bset), factorizer


def extended_generators(
    b_gens: Sequence[int], green: GreenData
) -> frozenset[int]:
    """Generators of S from generators of T: adjoin the complement class
    representatives."""
    sub = green.sub
    if closure(green.sem, b_gens).members != sub.members:
        raise NotGenerating("the given set does not generate T")
    return frozenset(b_gens) | set(green.reps)


@dataclass(frozen=True)
class WordProblemContext:
    """Everything the word-equality decider needs about A = B u {d_i}.

    ``letter_eval`` maps letters to S elements (class letters to the class
    representatives).  Equality inside T and inside each complement class's
    Schutzenberger group is delegated to callables so that the same
    procedure would run with oracle callbacks instead of a finite table.
    """

    green: GreenData
    conn: ConnectorTables
    letter_eval: dict[str, int]
    t_equal: Callable[[int, int], bool]
    stab_equal: Callable[[int, int, int], bool]
    _sig_cache: dict = field(default_factory=dict, compare=False, repr=False)


@dataclass(frozen=True)
class WordVerdict:
    equal: bool
    branch: str
    detail: str


def _signature(word: tuple[str, ...], ctx: WordProblemContext):
    cached = ctx._sig_cache.get(word)
    if cached is not None:
        return cached
    for letter in word:
        if letter not in ctx.letter_eval:
            raise InvalidLetter(f"unknown letter {letter!r}")
    sem = ctx.green.sem
    elems = tuple(ctx.letter_eval[a] for a in word)
    if not elems:
        sig = ("empty", sem.order)
    else:
        first = push_left(IDENTITY_CLASS, elems, ctx.conn)
        second = push_right(first.output_class, first.output_word, ctx.conn)
        if second.output_class == IDENTITY_CLASS:
            sig = ("sub", sem.prod1(second.output_word))
        else:
            third = push_left(second.output_class, second.output_word, ctx.conn)
            residual = sem.prod1(third.output_word)
            sig = ("class", third.output_class, residual)
    ctx._sig_cache[word] = sig
    return sig


def word_equality_report(
    w1: Sequence[str], w2: Sequence[str], ctx: WordProblemContext
) -> WordVerdict:
    """Decide whether two words over B u {d_i} represent the same element.

    Both words are rewritten to the form (T-word, final class).  If both
    final classes are 0 the words are compared inside T; if exactly one is 0
    they differ; otherwise the class indices are compared and then the
    Schutzenberger-group images of the residual words.
    """
    s1 = _signature(tuple(w1), ctx)
    s2 = _signature(tuple(w2), ctx)
    if s1[0] != s2[0]:
        if {"sub", "class"} == {s1[0], s2[0]}:
            return WordVerdict(False, "mixed", "one word lands in T, the other outside")
        return WordVerdict(False, "mixed", "only one word is empty")
    if s1[0] == "empty":
        return WordVerdict(True, "empty", "both words are empty")
    if s1[0] == "sub":
        eq = ctx.t_equal(s1[1], s2[1])
        return WordVerdict(eq, "both_in_sub", f"compared {s1[1]} and {s2[1]} in T")
    if s1[1] != s2[1]:
        return WordVerdict(
            False, "both_outside", f"distinct complement classes {s1[1]} != {s2[1]}"
        )
    eq = ctx.stab_equal(s1[1], s1[2], s2[2])
    return WordVerdict(
        eq,
        "both_outside",
        f"class {s1[1]}, stabilizer residuals {s1[2]} and {s2[2]}",
    )


def decide_word_equality(
    w1: Sequence[str], w2: Sequence[str], ctx: WordProblemContext
) -> bool:
    s1 = _signature(tuple(w1), ctx)
    s2 = _signature(tuple(w2), ctx)
    if s1[0] != s2[0]:
        return False
    if s1[0] == "empty":
        return True
    if s1[0] == "sub":
        return ctx.t_equal(s1[1], s2[1])
    return s1[1] == s2[1] and ctx.stab_equal(s1[1], s1[2], s2[2])
