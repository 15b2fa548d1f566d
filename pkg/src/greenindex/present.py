"""Semigroup presentations: a bounded congruence enumerator, presentation
verification, and synthesis of a presentation for S out of presentations for
T and the complement Schutzenberger groups.

The enumerator is a coset-table style procedure on the right Cayley graph of
the free semigroup: nodes are word classes (plus a root for the empty word),
relations are traced from every node so that identified nodes realize exactly
the two-sided congruence the relations generate.  It either certifies a
closed finite quotient or reports that a bound was hit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .core import FiniteSemigroup, SubSemigroup, closure, factorize_element
from .errors import (
    BadInputPresentation,
    BoundExceeded,
    DaggerViolation,
    InputError,
    InternalInconsistency,
    InvalidLetter,
)
from .relgreen import ConnectorTables, GreenData, connectors, relative_green
from .rewrite import WordProblemContext
from .schutz import SchutzGroup, schutz_group

Word = tuple[str, ...]
Assignment = dict[str, int]


@dataclass(frozen=True)
class Presentation:
    """An alphabet together with pairs of nonempty words declared equal."""

    alphabet: tuple[str, ...]
    relations: tuple[tuple[Word, Word], ...]

    def __post_init__(self):
        letters = set(self.alphabet)
        if len(letters) != len(self.alphabet):
            raise InputError("duplicate letters in alphabet")
        for u, v in self.relations:
            for w in (u, v):
                if not w:
                    raise InputError("relation words must be nonempty")
                for a in w:
                    if a not in letters:
                        raise InvalidLetter(f"relation uses unknown letter {a!r}")

    def to_json_dict(self, assignment: Assignment | None = None) -> dict:
        single = all(len(a) == 1 for a in self.alphabet)

        def encode(w: Word):
            return "".join(w) if single else list(w)

        out: dict = {
            "alphabet": list(self.alphabet),
            "relations": [[encode(u), encode(v)] for u, v in self.relations],
        }
        if assignment is not None:
            out["assignment"] = {a: assignment[a] for a in self.alphabet
                                 if a in assignment}
        return out

    @staticmethod
    def from_json_dict(data: dict) -> tuple["Presentation", Assignment | None]:
        try:
            alphabet = tuple(str(a) for a in data["alphabet"])
            raw = data["relations"]
        except (KeyError, TypeError):
            raise InputError("presentation JSON needs 'alphabet' and 'relations'")
        rels = []
        for pair in raw:
            if len(pair) != 2:
                raise InputError("each relation must be a pair of words")
            rels.append(
                (parse_word(pair[0], alphabet), parse_word(pair[1], alphabet))
            )
        assignment = data.get("assignment")
        if assignment is not None:
            assignment = {str(k): int(v) for k, v in assignment.items()}
        return Presentation(alphabet=alphabet, relations=tuple(rels)), assignment


def parse_word(raw, alphabet: Sequence[str]) -> Word:
    """Read a word given as a list of letters or as a joined string.

    Joined strings are tokenized greedily, longest letter first, with
    backtracking, so multi-character letters like "d1" are handled.
    """
    if isinstance(raw, (list, tuple)):
        word = tuple(str(a) for a in raw)
        for a in word:
            if a not in set(alphabet):
                raise InvalidLetter(f"unknown letter {a!r}")
        return word
    s = str(raw)
    letters = sorted(set(alphabet), key=len, reverse=True)
    out: list[str] = []

    def go(i: int) -> bool:
        if i == len(s):
            return True
        for a in letters:
            if s.startswith(a, i):
                out.append(a)
                if go(i + len(a)):
                    return True
                out.pop()
        return False

    if not go(0):
        raise InvalidLetter(f"cannot tokenize {s!r} over {list(alphabet)}")
    return tuple(out)


def presentation_from_table(
    sem: FiniteSemigroup, prefix: str = "x"
) -> tuple[Presentation, Assignment]:
    """One letter per element, one relation per table cell."""
    letters = tuple(f"{prefix}{i}" for i in sem.elements)
    rels = tuple(
        ((letters[i], letters[j]), (letters[sem.mul(i, j)],))
        for i in sem.elements
        for j in sem.elements
    )
    return Presentation(alphabet=letters, relations=rels), {
        a: i for i, a in enumerate(letters)
    }


def sub_table_presentation(
    sem: FiniteSemigroup, sub: SubSemigroup
) -> tuple[Presentation, Assignment]:
    """Table presentation of a subsemigroup, assigned into parent indices."""
    members = sub.sorted_members()
    letters = {m: f"t{m}" for m in members}
    rels = tuple(
        ((letters[a], letters[b]), (letters[sem.mul(a, b)],))
        for a in members
        for b in members
    )
    return Presentation(
        alphabet=tuple(letters[m] for m in members), relations=rels
    ), {letters[m]: m for m in members}


def factorize(t: int, b_gens: Sequence[int], sem: FiniteSemigroup) -> tuple[int, ...]:
    """Shortest-then-lexicographic word over ``b_gens`` evaluating to t."""
    return factorize_element(sem, sorted(set(b_gens)), t)


@dataclass(frozen=True)
class EnumerationResult:
    """Outcome of a bounded congruence enumeration.

    When ``complete``, the quotient is certified closed: the right table is
    total, every relation holds when traced from every class and from the
    empty word, and representatives are stable.  Otherwise ``reason`` says
    which bound was hit.
    """

    presentation: Presentation
    complete: bool
    reason: str | None
    size: int | None
    reps: tuple[Word, ...]
    root_edges: dict[str, int]
    right_table: tuple[tuple[int, ...], ...]
    cayley: tuple[tuple[int, ...], ...]

    def word_class(self, word: Sequence[str]) -> int:
        if not word:
            raise InputError("the empty word does not name a class")
        if not self.complete:
            raise BoundExceeded(self.reason or "enumeration incomplete")
        letter_pos = {a: i for i, a in enumerate(self.presentation.alphabet)}
        try:
            cur = self.root_edges[word[0]]
            for a in word[1:]:
                cur = self.right_table[cur][letter_pos[a]]
        except KeyError:
            raise InvalidLetter("word uses a letter outside the alphabet")
        return cur


class _CapHit(Exception):
    pass


class _Table:
    """Union-find backed right-multiplication table with a root node."""

    def __init__(self, n_letters: int, cap: int):
        self.n_letters = n_letters
        self.cap = cap
        self.rows: list[list[int | None]] = [[None] * n_letters]
        self.parent = [0]

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def new_node(self) -> int:
        if len(self.rows) > self.cap:
            raise _CapHit
        self.rows.append([None] * self.n_letters)
        self.parent.append(len(self.rows) - 1)
        return len(self.rows) - 1

    def get(self, node: int, letter: int) -> int | None:
        v = self.rows[node][letter]
        return None if v is None else self.find(v)

    def trace_define(self, node: int, word) -> tuple[int, bool]:
        cur = self.find(node)
        changed = False
        for letter in word:
            nxt = self.get(cur, letter)
            if nxt is None:
                nxt = self.new_node()
                self.rows[cur][letter] = nxt
                changed = True
            cur = nxt
        return cur, changed

    def merge(self, x: int, y: int) -> bool:
        queue = [(x, y)]
        merged = False
        while queue:
            a, b = queue.pop()
            a, b = self.find(a), self.find(b)
            if a == b:
                continue
            if b < a:
                a, b = b, a
            self.parent[b] = a
            merged = True
            row_b = self.rows[b]
            row_a = self.rows[a]
            for letter in range(self.n_letters):
                tb = row_b[letter]
                if tb is None:
                    continue
                ta = row_a[letter]
                if ta is None:
                    row_a[letter] = tb
                else:
                    queue.append((ta, tb))
        return merged

    def live(self):
        return [i for i in range(len(self.rows)) if self.parent[i] == i]


def enumerate_presentation(
    pres: Presentation, max_classes: int, max_len: int
) -> EnumerationResult:
    """Enumerate the quotient semigroup of a presentation within bounds.

    Nodes beyond ``8 * max_classes`` may be created temporarily; the final
    quotient must fit in ``max_classes`` classes whose shortlex
    representatives are no longer than ``max_len``.  The procedure is
    deterministic for fixed bounds.
    """
    if max_classes <= 0 or max_len <= 0:
        raise InputError("bounds must be positive")
    letter_pos = {a: i for i, a in enumerate(pres.alphabet)}
    rels = [
        (tuple(letter_pos[a] for a in u), tuple(letter_pos[a] for a in v))
        for u, v in pres.relations
    ]
    table = _Table(len(pres.alphabet), cap=max(64, 8 * max_classes))

    def incomplete(reason):
        return EnumerationResult(
            presentation=pres,
            complete=False,
            reason=reason,
            size=None,
            reps=(),
            root_edges={},
            right_table=(),
            cayley=(),
        )

    try:
        # Main sweep: walk nodes in creation order, tracing every relation
        # (defining edges along the way) and filling the node's row.  New
        # nodes are appended and picked up by the same sweep.  Repeat with a
        # pure verification pass until nothing changes; every extra round
        # performs at least one merge, so the cap is never the limit.
        for _round in range(2 * table.cap + 10):
            changed = False
            alpha = 0
            while alpha < len(table.rows):
                if table.find(alpha) != alpha:
                    alpha += 1
                    continue
                for u, v in rels:
                    x, ch1 = table.trace_define(alpha, u)
                    y, ch2 = table.trace_define(table.find(alpha), v)
                    changed |= ch1 or ch2
                    changed |= table.merge(x, y)
                a = table.find(alpha)
                for letter in range(table.n_letters):
                    if table.get(a, letter) is None:
                        table.rows[a][letter] = table.new_node()
                        changed = True
                alpha += 1
            if not changed:
                break
        else:
            raise InternalInconsistency("enumeration did not stabilize")
    except _CapHit:
        return incomplete("class bound exceeded")

    live = table.live()
    if len(live) - 1 > max_classes:
        return incomplete("class bound exceeded")

    # Certificate: total table and all relations closed from every node.
    for node in live:
        for letter in range(table.n_letters):
            if table.get(node, letter) is None:
                raise InternalInconsistency("table not total after closure")
        for u, v in rels:
            x, _ = table.trace_define(node, u)
            y, _ = table.trace_define(node, v)
            if x != y:
                raise InternalInconsistency("relation open after closure")

    # Shortlex representatives by BFS from the root; fixes class numbering.
    order: dict[int, int] = {}
    reps: list[Word] = []
    frontier = [(table.find(0), ())]
    root = table.find(0)
    seen = {root}
    while frontier:
        nxt = []
        for node, word in frontier:
            for letter in range(table.n_letters):
                tgt = table.get(node, letter)
                if tgt not in seen:
                    seen.add(tgt)
                    w = word + (pres.alphabet[letter],)
                    order[tgt] = len(reps)
                    reps.append(w)
                    nxt.append((tgt, w))
        frontier = nxt
    if len(seen) != len(live):
        raise InternalInconsistency("unreachable live classes")
    if any(len(w) > max_len for w in reps):
        return incomplete("representative length bound exceeded")

    size = len(reps)
    right = [[0] * table.n_letters for _ in range(size)]
    for node in live:
        if node == root:
            continue
        for letter in range(table.n_letters):
            right[order[node]][letter] = order[table.get(node, letter)]
    root_edges = {
        pres.alphabet[letter]: order[table.get(root, letter)]
        for letter in range(table.n_letters)
    }

    def trace_word(start: int, word: Word) -> int:
        cur = start
        for a in word:
            cur = right[cur][letter_pos[a]]
        return cur

    cayley = tuple(
        tuple(trace_word(c1, reps[c2]) for c2 in range(size))
        for c1 in range(size)
    )
    return EnumerationResult(
        presentation=pres,
        complete=True,
        reason=None,
        size=size,
        reps=tuple(reps),
        root_edges=root_edges,
        right_table=tuple(tuple(r) for r in right),
        cayley=cayley,
    )


def evaluate_word(sem: FiniteSemigroup, assignment: Mapping[str, int], word: Word) -> int:
    return sem.prod1([assignment[a] for a in word])


def verify_presentation(
    pres: Presentation,
    sem: FiniteSemigroup,
    assignment: Mapping[str, int],
    max_classes: int | None = None,
    max_len: int | None = None,
) -> bool:
    """Certify that a presentation presents the given semigroup.

    True iff every relation holds under the assignment, the assigned letters
    generate the whole semigroup, and the enumerated quotient has exactly as
    many classes as the semigroup has elements with a bijective induced map.
    Raises BoundExceeded when the enumeration cannot close within bounds.
    """
    for a in pres.alphabet:
        if a not in assignment:
            raise InvalidLetter(f"letter {a!r} has no assigned element")
        if not 0 <= assignment[a] < sem.order:
            raise InputError(f"assignment of {a!r} is out of range")
    for u, v in pres.relations:
        if evaluate_word(sem, assignment, u) != evaluate_word(sem, assignment, v):
            return False
    images = {assignment[a] for a in pres.alphabet}
    if closure(sem, images).members != frozenset(sem.elements):
        return False
    if max_classes is None:
        max_classes = max(4 * sem.order, 64)
    if max_len is None:
        max_len = max(sem.order + 1, 16)
    result = enumerate_presentation(pres, max_classes, max_len)
    if not result.complete:
        raise BoundExceeded(result.reason or "enumeration incomplete")
    if result.size != sem.order:
        return False
    evals = [evaluate_word(sem, assignment, w) for w in result.reps]
    return len(set(evals)) == sem.order


def verify_sub_presentation(
    pres: Presentation,
    assignment: Mapping[str, int],
    sub: SubSemigroup,
    **bounds,
) -> bool:
    """Verify a presentation of a subsemigroup given in parent indices."""
    sem, back = sub.as_semigroup()
    fwd = {p: i for i, p in enumerate(back)}
    for a in pres.alphabet:
        if assignment.get(a) not in fwd:
            return False
    local = {a: fwd[assignment[a]] for a in pres.alphabet}
    return verify_presentation(pres, sem, local, **bounds)


@dataclass(frozen=True)
class ClassPack:
    """Presentation data for the Schutzenberger group of one complement
    class: alphabet and relations (shared across L-related classes), the
    letter evaluation into the class's own group, and the lift of each
    letter to a word over the subsemigroup's letters."""

    class_index: int
    leader: int
    presentation: Presentation
    schutz: SchutzGroup
    letter_to_group: dict[str, int]
    lift: dict[str, Word]


@dataclass(frozen=True)
class SchutzPresentationPack:
    packs: dict[int, ClassPack]


def build_schutz_packs(
    sem: FiniteSemigroup,
    sub: SubSemigroup,
    green: GreenData,
    q_pres: Presentation,
    q_assign: Mapping[str, int],
) -> SchutzPresentationPack:
    """Table presentations for every complement Schutzenberger group.

    L-related classes share one alphabet and relation set (built from the
    smallest class in the family); unrelated classes get disjoint alphabets.
    Each letter carries a lift: the shortlex word over the subsemigroup
    letters evaluating to a stabilizer element in the letter's congruence
    class, or the empty word when only the adjoined identity remains.
    """
    n = sem.order
    b_elems = sorted({q_assign[a] for a in q_pres.alphabet})
    letter_of = {}
    for a in sorted(q_pres.alphabet):
        letter_of.setdefault(q_assign[a], a)

    def lift_word(elt: int) -> Word:
        if elt == n:
            return ()
        return tuple(letter_of[e] for e in factorize_element(sem, b_elems, elt))

    groups = {
        i: schutz_group(
            sem, sub, green.complement_classes[i - 1], green.rep_of(i), green=green
        )
        for i in range(1, green.class_count)
    }
    by_l: dict[int, list[int]] = {}
    for i in range(1, green.class_count):
        by_l.setdefault(green.l_id[green.rep_of(i)], []).append(i)

    packs: dict[int, ClassPack] = {}
    for members in by_l.values():
        leader = min(members)
        lead_grp = groups[leader]
        letters = tuple(
            f"c{leader}_{g}" for g in range(lead_grp.order)
        )
        rels = tuple(
            ((letters[g1], letters[g2]), (letters[lead_grp.group.mul(g1, g2)],))
            for g1 in range(lead_grp.order)
            for g2 in range(lead_grp.order)
        )
        pres = Presentation(alphabet=letters, relations=rels)
        lifts: dict[str, Word] = {}
        for g in range(lead_grp.order):
            cands = [
                t for t in lead_grp.stabilizer
                if t != n and lead_grp.quotient[t] == g
            ]
            lifts[letters[g]] = lift_word(min(cands) if cands else n)
        for i in members:
            grp = groups[i]
            letter_to_group = {}
            for a in letters:
                elt = sem.prod1(q_assign[x] for x in lifts[a])
                letter_to_group[a] = grp.quotient_index(elt)
            packs[i] = ClassPack(
                class_index=i,
                leader=leader,
                presentation=pres,
                schutz=grp,
                letter_to_group=letter_to_group,
                lift=dict(lifts),
            )
    return SchutzPresentationPack(packs=packs)


def _check_dagger(green: GreenData, packs: SchutzPresentationPack) -> None:
    idx = range(1, green.class_count)
    for i in idx:
        if i not in packs.packs:
            raise BadInputPresentation(f"missing pack for class {i}")
    for i in idx:
        for j in idx:
            if i >= j:
                continue
            pi, pj = packs.packs[i], packs.packs[j]
            related = green.l_id[green.rep_of(i)] == green.l_id[green.rep_of(j)]
            if related:
                if (pi.presentation.alphabet != pj.presentation.alphabet
                        or pi.presentation.relations != pj.presentation.relations):
                    raise DaggerViolation(
                        f"L-related classes {i}, {j} must share alphabet and relations"
                    )
                if pi.lift != pj.lift:
                    raise DaggerViolation(
                        f"L-related classes {i}, {j} must share letter lifts"
                    )
            else:
                if set(pi.presentation.alphabet) & set(pj.presentation.alphabet):
                    raise DaggerViolation(
                        f"unrelated classes {i}, {j} must use disjoint alphabets"
                    )


def synthesize_presentation(
    q_pres: Presentation,
    q_assign: Mapping[str, int],
    packs: SchutzPresentationPack,
    green: GreenData,
    conn: ConnectorTables,
    verify_inputs: bool = True,
    max_classes: int | None = None,
    max_len: int | None = None,
) -> tuple[Presentation, Assignment]:
    """Presentation for S from a presentation of T and group presentations.

    The alphabet adds one letter d_i per complement class.  Relations are
    those of T, plus the transport of every letter past every d_i, plus the
    group relations prefixed by their class letter.  The class letter for
    index 0 denotes the empty word and is elided at emission time.
    """
    sem = green.sem
    if verify_inputs:
        if not verify_sub_presentation(q_pres, q_assign, green.sub,
                                       max_classes=max_classes, max_len=max_len):
            raise BadInputPresentation("the base presentation does not present T")
        for i, pack in packs.packs.items():
            if not verify_presentation(pack.presentation, pack.schutz.group,
                                       pack.letter_to_group):
                raise BadInputPresentation(
                    f"class {i}: group presentation fails verification"
                )
            for a in pack.presentation.alphabet:
                elt = sem.prod1(q_assign[x] for x in pack.lift[a])
                if pack.schutz.quotient_index(elt) != pack.letter_to_group[a]:
                    raise BadInputPresentation(
                        f"class {i}: lift of {a!r} is not congruent to its image"
                    )
    _check_dagger(green, packs)

    k = green.class_count - 1
    d_letter = {i: f"d{i}" for i in range(1, k + 1)}
    if set(d_letter.values()) & set(q_pres.alphabet):
        raise BadInputPresentation("base alphabet collides with class letters")
    alphabet = q_pres.alphabet + tuple(d_letter[i] for i in range(1, k + 1))
    assignment: Assignment = {a: q_assign[a] for a in q_pres.alphabet}
    for i in range(1, k + 1):
        assignment[d_letter[i]] = green.rep_of(i)

    b_elems = sorted({q_assign[a] for a in q_pres.alphabet})
    letter_of = {}
    for a in sorted(q_pres.alphabet):
        letter_of.setdefault(q_assign[a], a)

    def factor_word(elt: int) -> Word:
        if elt == sem.order:
            return ()
        return tuple(letter_of[e] for e in factorize_element(sem, b_elems, elt))

    def d_word(i: int) -> Word:
        return (d_letter[i],) if i else ()

    rels: list[tuple[Word, Word]] = list(q_pres.relations)
    for a in alphabet:
        s = assignment[a]
        for i in range(k + 1):
            lhs = (a,) + d_word(i)
            j = conn.left_class[s][i]
            rhs = d_word(j) + factor_word(conn.left_factor[s][i])
            if lhs != rhs:
                rels.append((lhs, rhs))
    for b in q_pres.alphabet:
        t = assignment[b]
        for i in range(k + 1):
            lhs = d_word(i) + (b,)
            j = conn.right_class[i][t]
            rhs = factor_word(conn.right_factor[i][t]) + d_word(j)
            if lhs != rhs:
                rels.append((lhs, rhs))
    for i in range(1, k + 1):
        pack = packs.packs[i]

        def lifted(w: Word) -> Word:
            out: list[str] = []
            for c in w:
                out.extend(pack.lift[c])
            return tuple(out)

        for u, v in pack.presentation.relations:
            lhs = d_word(i) + lifted(u)
            rhs = d_word(i) + lifted(v)
            if lhs != rhs:
                rels.append((lhs, rhs))

    unique = tuple(dict.fromkeys(rels))
    return Presentation(alphabet=alphabet, relations=unique), assignment


def word_problem_context(
    sem: FiniteSemigroup,
    sub: SubSemigroup,
    green: GreenData | None = None,
    conn: ConnectorTables | None = None,
    q_pres: Presentation | None = None,
    q_assign: Mapping[str, int] | None = None,
) -> WordProblemContext:
    """Assemble the finite-semigroup context for the word-equality decider.

    Defaults to the table presentation of T (letters ``t<element>``) plus
    class letters ``d<i>``.  Equality callbacks compare elements of T
    directly and stabilizer elements through the class's translation
    quotient.
    """
    if green is None:
        green = relative_green(sem, sub)
    if conn is None:
        conn = connectors(green)
    if q_pres is None or q_assign is None:
        q_pres, q_assign = sub_table_presentation(sem, sub)
    letter_eval: dict[str, int] = {a: q_assign[a] for a in q_pres.alphabet}
    for i in range(1, green.class_count):
        letter_eval[f"d{i}"] = green.rep_of(i)
    groups = {
        i: schutz_group(
            sem, sub, green.complement_classes[i - 1], green.rep_of(i), green=green
        )
        for i in range(1, green.class_count)
    }

    def stab_equal(k: int, x: int, y: int) -> bool:
        grp = groups[k]
        return grp.quotient_index(x) == grp.quotient_index(y)

    return WordProblemContext(
        green=green,
        conn=conn,
        letter_eval=letter_eval,
        t_equal=lambda x, y: x == y,
        stab_equal=stab_equal,
    )
