"""Regular languages over padded pair alphabets and automatic structures.

Word pairs are encoded synchronously: the shorter word is padded at the end
with "$", and the pair symbol ("$", "$") never occurs.  Relations on words
are NFAs over that pair alphabet.  Composition of two relations re-reads both
component relations in lockstep, nondeterministically guessing the shared
middle track; when the middle word outlives both outer words the remaining
steps consume no output symbol, and a configurable delay bound caps how far
that silent tail may run.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .core import FiniteSemigroup, SubSemigroup, closure, shortlex_forms
from .errors import (
    AlphabetMismatch,
    DelayExceeded,
    InputError,
    InternalInconsistency,
    NotGenerating,
)
from .relgreen import ConnectorTables, GreenData

PAD = "$"


@dataclass(frozen=True)
class Nfa:
    """A nondeterministic finite automaton; symbol None marks an epsilon
    transition and is never part of the alphabet."""

    alphabet: tuple
    n_states: int
    transitions: tuple  # ((src, symbol, dst), ...)
    initial: frozenset
    accepting: frozenset

    def _delta(self):
        cache = self.__dict__.get("_delta_cache")
        if cache is None:
            cache = {}
            for src, sym, dst in self.transitions:
                cache.setdefault((src, sym), set()).add(dst)
            self.__dict__["_delta_cache"] = cache
        return cache

    def _outgoing(self):
        """Per-state map symbol -> set(dst), epsilon excluded."""
        cache = self.__dict__.get("_out_cache")
        if cache is None:
            cache = [dict() for _ in range(self.n_states)]
            for src, sym, dst in self.transitions:
                if sym is not None:
                    cache[src].setdefault(sym, set()).add(dst)
            self.__dict__["_out_cache"] = cache
        return cache

    def _coaccessible(self) -> frozenset:
        """States from which an accepting state is reachable."""
        cache = self.__dict__.get("_coacc_cache")
        if cache is None:
            back: dict[int, set[int]] = {}
            for src, _sym, dst in self.transitions:
                back.setdefault(dst, set()).add(src)
            seen = set(self.accepting)
            stack = list(seen)
            while stack:
                q = stack.pop()
                for p in back.get(q, ()):
                    if p not in seen:
                        seen.add(p)
                        stack.append(p)
            cache = frozenset(seen)
            self.__dict__["_coacc_cache"] = cache
        return cache

    def eps_closure(self, states: Iterable[int]) -> frozenset:
        delta = self._delta()
        out = set(states)
        stack = list(out)
        while stack:
            q = stack.pop()
            for r in delta.get((q, None), ()):
                if r not in out:
                    out.add(r)
                    stack.append(r)
        return frozenset(out)

    def step(self, states: frozenset, symbol) -> frozenset:
        delta = self._delta()
        out = set()
        for q in states:
            out |= delta.get((q, symbol), set())
        return self.eps_closure(out)

    def accepts(self, word: Sequence) -> bool:
        cur = self.eps_closure(self.initial)
        for sym in word:
            cur = self.step(cur, sym)
            if not cur:
                return False
        return bool(cur & self.accepting)

    def is_empty(self) -> bool:
        cur = self.eps_closure(self.initial)
        seen = set(cur)
        stack = list(cur)
        delta = self._delta()
        while stack:
            q = stack.pop()
            if q in self.accepting:
                return False
            for (src, sym), dsts in delta.items():
                if src == q and sym is not None:
                    for d in self.eps_closure(dsts):
                        if d not in seen:
                            seen.add(d)
                            stack.append(d)
        return True

    def iter_words(self) -> Iterator[tuple]:
        """Accepted words in shortlex order (alphabet order as given);
        possibly infinite.  Prefixes that cannot reach acceptance are
        pruned, so the iterator terminates on finite languages."""
        useful = self._coaccessible()
        out = self._outgoing()
        pos = {sym: i for i, sym in enumerate(self.alphabet)}
        cur = frozenset(self.eps_closure(self.initial) & useful)
        level = [((), cur)]
        while level:
            nxt = []
            for word, states in level:
                if states & self.accepting:
                    yield word
                symbols = set()
                for q in states:
                    symbols.update(out[q])
                for sym in sorted(symbols, key=pos.get):
                    t = frozenset(self.step(states, sym) & useful)
                    if t:
                        nxt.append((word + (sym,), t))
            level = nxt

    def enumerate_words(self, max_len: int) -> list[tuple]:
        out = []
        for w in self.iter_words():
            if len(w) > max_len:
                break
            out.append(w)
        return out


def nfa_from_words(alphabet, words: Iterable[tuple]) -> Nfa:
    """Trie acceptor for a finite set of words."""
    alphabet = tuple(alphabet)
    nodes = {(): 0}
    accepting = set()
    trans = []
    for w in sorted(words, key=lambda w: (len(w), w)):
        for i, sym in enumerate(w):
            if sym not in alphabet:
                raise AlphabetMismatch(f"word symbol {sym!r} not in alphabet")
            pre, ext = w[:i], w[: i + 1]
            if ext not in nodes:
                nodes[ext] = len(nodes)
                trans.append((nodes[pre], sym, nodes[ext]))
        accepting.add(nodes[w])
    return Nfa(
        alphabet=alphabet,
        n_states=len(nodes),
        transitions=tuple(trans),
        initial=frozenset({0}),
        accepting=frozenset(accepting),
    )


def determinize(nfa: Nfa) -> Nfa:
    """Complete subset-construction DFA (a dead sink is added if needed);
    state numbering follows BFS discovery, so the result is canonical."""
    start = nfa.eps_closure(nfa.initial)
    index = {start: 0}
    order = [start]
    trans = []
    pos = 0
    while pos < len(order):
        cur = order[pos]
        for sym in nfa.alphabet:
            tgt = nfa.step(cur, sym)
            if tgt not in index:
                index[tgt] = len(order)
                order.append(tgt)
            trans.append((index[cur], sym, index[tgt]))
        pos += 1
    accepting = frozenset(
        index[s] for s in order if s & nfa.accepting
    )
    return Nfa(
        alphabet=nfa.alphabet,
        n_states=len(order),
        transitions=tuple(trans),
        initial=frozenset({0}),
        accepting=accepting,
    )


def _require_same_alphabet(a: Nfa, b: Nfa):
    if set(a.alphabet) != set(b.alphabet):
        raise AlphabetMismatch("operands use different alphabets")


def complement(nfa: Nfa) -> Nfa:
    dfa = determinize(nfa)
    return Nfa(
        alphabet=dfa.alphabet,
        n_states=dfa.n_states,
        transitions=dfa.transitions,
        initial=dfa.initial,
        accepting=frozenset(range(dfa.n_states)) - dfa.accepting,
    )


def intersect(a: Nfa, b: Nfa) -> Nfa:
    _require_same_alphabet(a, b)
    da, db = determinize(a), determinize(b)
    alphabet = da.alphabet
    delta_a = {(s, x): d for s, x, d in da.transitions}
    delta_b = {(s, x): d for s, x, d in db.transitions}
    start = (next(iter(da.initial)), next(iter(db.initial)))
    index = {start: 0}
    order = [start]
    trans = []
    pos = 0
    while pos < len(order):
        qa, qb = order[pos]
        for sym in alphabet:
            tgt = (delta_a[(qa, sym)], delta_b[(qb, sym)])
            if tgt not in index:
                index[tgt] = len(order)
                order.append(tgt)
            trans.append((pos, sym, index[tgt]))
        pos += 1
    accepting = frozenset(
        i for (qa, qb), i in index.items()
        if qa in da.accepting and qb in db.accepting
    )
    return Nfa(
        alphabet=alphabet,
        n_states=len(order),
        transitions=tuple(trans),
        initial=frozenset({0}),
        accepting=accepting,
    )


def union(a: Nfa, b: Nfa) -> Nfa:
    _require_same_alphabet(a, b)
    shift = a.n_states
    trans = list(a.transitions) + [
        (s + shift, x, d + shift) for s, x, d in b.transitions
    ]
    return Nfa(
        alphabet=a.alphabet,
        n_states=a.n_states + b.n_states,
        transitions=tuple(trans),
        initial=a.initial | frozenset(q + shift for q in b.initial),
        accepting=a.accepting | frozenset(q + shift for q in b.accepting),
    )


def concatenate(a: Nfa, b: Nfa) -> Nfa:
    _require_same_alphabet(a, b)
    shift = a.n_states
    trans = list(a.transitions) + [
        (s + shift, x, d + shift) for s, x, d in b.transitions
    ]
    for q in a.accepting:
        for r in b.initial:
            trans.append((q, None, r + shift))
    return Nfa(
        alphabet=a.alphabet,
        n_states=a.n_states + b.n_states,
        transitions=tuple(trans),
        initial=a.initial,
        accepting=frozenset(q + shift for q in b.accepting),
    )


def pair_alphabet(left: Sequence[str], right: Sequence[str]) -> tuple:
    syms = [
        (x, y)
        for x in tuple(left) + (PAD,)
        for y in tuple(right) + (PAD,)
        if not (x == PAD and y == PAD)
    ]
    return tuple(syms)


def convolve(u: Sequence[str], v: Sequence[str]) -> tuple:
    """Synchronous padded encoding of a word pair."""
    m, n = len(u), len(v)
    out = []
    for i in range(max(m, n)):
        out.append((u[i] if i < m else PAD, v[i] if i < n else PAD))
    return tuple(out)


def deconvolve(word: Sequence) -> tuple[tuple, tuple]:
    """Inverse of convolve; raises InputError on malformed padding."""
    u, v = [], []
    u_done = v_done = False
    for x, y in word:
        if x == PAD and y == PAD:
            raise InputError("pair symbol ($,$) is not allowed")
        if x == PAD:
            u_done = True
        elif u_done:
            raise InputError("left track resumes after padding")
        else:
            u.append(x)
        if y == PAD:
            v_done = True
        elif v_done:
            raise InputError("right track resumes after padding")
        else:
            v.append(y)
    return tuple(u), tuple(v)


@dataclass(frozen=True)
class PaddedRelationNfa:
    """A rational relation on words, encoded as an NFA over the padded pair
    alphabet of the two tracks."""

    left_alphabet: tuple
    right_alphabet: tuple
    nfa: Nfa

    @staticmethod
    def from_pairs(left_alphabet, right_alphabet, pairs) -> "PaddedRelationNfa":
        alpha = pair_alphabet(left_alphabet, right_alphabet)
        words = [convolve(u, v) for u, v in pairs]
        return PaddedRelationNfa(
            left_alphabet=tuple(left_alphabet),
            right_alphabet=tuple(right_alphabet),
            nfa=nfa_from_words(alpha, words),
        )

    def accepts_pair(self, u, v) -> bool:
        if not u and not v:
            return self.nfa.accepts(())
        return self.nfa.accepts(convolve(u, v))

    def pairs(self, max_len: int) -> list[tuple[tuple, tuple]]:
        return [deconvolve(w) for w in self.nfa.enumerate_words(max_len)]


def invert(rel: PaddedRelationNfa) -> PaddedRelationNfa:
    swapped = tuple(
        (s, (sym[1], sym[0]), d) if sym is not None else (s, None, d)
        for s, sym, d in rel.nfa.transitions
    )
    return PaddedRelationNfa(
        left_alphabet=rel.right_alphabet,
        right_alphabet=rel.left_alphabet,
        nfa=Nfa(
            alphabet=pair_alphabet(rel.right_alphabet, rel.left_alphabet),
            n_states=rel.nfa.n_states,
            transitions=swapped,
            initial=rel.nfa.initial,
            accepting=rel.nfa.accepting,
        ),
    )


def project(rel: PaddedRelationNfa, track: int) -> Nfa:
    """Language of one track; padded positions become epsilon moves."""
    if track not in (1, 2):
        raise InputError("track must be 1 or 2")
    base = rel.left_alphabet if track == 1 else rel.right_alphabet
    trans = []
    for s, sym, d in rel.nfa.transitions:
        if sym is None:
            trans.append((s, None, d))
            continue
        comp = sym[0] if track == 1 else sym[1]
        trans.append((s, None if comp == PAD else comp, d))
    return Nfa(
        alphabet=tuple(base),
        n_states=rel.nfa.n_states,
        transitions=tuple(trans),
        initial=rel.nfa.initial,
        accepting=rel.nfa.accepting,
    )


def is_padding_valid(rel: PaddedRelationNfa) -> bool:
    """True iff every accepted string is a well-formed convolution."""
    nfa = rel.nfa
    start = [(q, 0, 0) for q in nfa.eps_closure(nfa.initial)]
    seen = set(start)
    stack = list(start)
    delta = nfa._delta()
    while stack:
        q, u_done, v_done = stack.pop()
        for (src, sym), dsts in delta.items():
            if src != q:
                continue
            if sym is None:
                nu, nv, ok = u_done, v_done, True
            else:
                x, y = sym
                ok = not (x == PAD and y == PAD)
                ok &= not (u_done and x != PAD)
                ok &= not (v_done and y != PAD)
                nu = u_done or x == PAD
                nv = v_done or y == PAD
            if not ok:
                # a violating prefix: invalid only if it extends to acceptance
                if _reaches_accepting(nfa, dsts):
                    return False
                continue
            for d in nfa.eps_closure(dsts):
                if (d, nu, nv) not in seen:
                    seen.add((d, nu, nv))
                    stack.append((d, nu, nv))
    return True


def _reaches_accepting(nfa: Nfa, states) -> bool:
    seen = set(nfa.eps_closure(states))
    stack = list(seen)
    delta = nfa._delta()
    while stack:
        q = stack.pop()
        if q in nfa.accepting:
            return True
        for (src, sym), dsts in delta.items():
            if src == q:
                for d in dsts:
                    if d not in seen:
                        seen.add(d)
                        stack.append(d)
    return False


def compose_relations(
    r1: PaddedRelationNfa, r2: PaddedRelationNfa, delay_bound: int
) -> PaddedRelationNfa:
    """Join two relations on their shared middle track.

    A pair (u, w) is accepted iff some middle word v has (u, v) in the first
    relation and (v, w) in the second.  Both component automata run in
    lockstep over the output positions; when v is longer than both u and w
    the machines keep running on silent steps, at most ``delay_bound`` of
    them.  If some pair would need a longer silent tail, DelayExceeded is
    raised with a witness.
    """
    if set(r1.right_alphabet) != set(r2.left_alphabet):
        raise AlphabetMismatch("middle alphabets differ")
    if delay_bound < 0:
        raise InputError("delay bound must be nonnegative")
    d1 = _epsilon_free(r1.nfa)
    d2 = _epsilon_free(r2.nfa)
    out1, out2 = d1._outgoing(), d2._outgoing()
    # second machine's transitions grouped by the middle-track component
    by_mid: list[dict] = []
    for q in range(d2.n_states):
        grouped: dict = {}
        for (y, z), dsts in out2[q].items():
            grouped.setdefault(y, []).append((z, dsts))
        by_mid.append(grouped)
    out_alpha = pair_alphabet(r1.left_alphabet, r2.right_alphabet)

    index: dict = {}
    order: list = []
    main_trans = []
    eps_edges = []

    def state_id(st):
        if st not in index:
            index[st] = len(order)
            order.append(st)
        return index[st]

    for i1 in sorted(d1.initial):
        for i2 in sorted(d2.initial):
            state_id((i1, False, i2, False))
    initials = frozenset(range(len(order)))
    main_reached = set(initials)

    pos = 0
    while pos < len(order):
        q1, f1, q2, f2 = order[pos]
        if not f1 and not f2:
            # both machines consume one position of the middle track
            for (x, y), dsts1 in out1[q1].items():
                for z, dsts2 in by_mid[q2].get(y, ()):
                    for t1 in sorted(dsts1):
                        for t2 in sorted(dsts2):
                            tid = state_id((t1, False, t2, False))
                            if x == PAD and z == PAD:
                                eps_edges.append((pos, tid))
                            else:
                                main_trans.append((pos, (x, z), tid))
                                main_reached.add(tid)
        if not f1 and (f2 or q2 in d2.accepting):
            # the second machine is finished; its pair reads ($, $)
            for (x, y), dsts1 in out1[q1].items():
                if y == PAD and x != PAD:
                    for t1 in sorted(dsts1):
                        tid = state_id((t1, False, q2, True))
                        main_trans.append((pos, (x, PAD), tid))
                        main_reached.add(tid)
        if (f1 or q1 in d1.accepting) and not f2:
            # the first machine is finished; its pair reads ($, $)
            for (y, z), dsts2 in out2[q2].items():
                if y == PAD and z != PAD:
                    for t2 in sorted(dsts2):
                        tid = state_id((q1, True, t2, False))
                        main_trans.append((pos, (PAD, z), tid))
                        main_reached.add(tid)
        pos += 1

    # Silent-tail distance to an accepting configuration.
    def is_final(state):
        q1, f1, q2, f2 = state
        return (f1 or q1 in d1.accepting) and (f2 or q2 in d2.accepting)

    dist = {i: 0 for i, st in enumerate(order) if is_final(st)}
    frontier = sorted(dist)
    k = 0
    back: dict[int, set[int]] = {}
    for s, d in eps_edges:
        back.setdefault(d, set()).add(s)
    while frontier:
        k += 1
        nxt = []
        for d in frontier:
            for s in back.get(d, ()):
                if s not in dist:
                    dist[s] = k
                    nxt.append(s)
        frontier = sorted(nxt)

    for s in sorted(main_reached):
        if s in dist and dist[s] > delay_bound:
            raise DelayExceeded(
                f"composition needs a silent tail of length {dist[s]}"
                f" > delay bound {delay_bound}",
                witness={"state": order[s], "tail": dist[s]},
            )
    accepting = frozenset(s for s in range(len(order))
                          if dist.get(s, delay_bound + 1) <= delay_bound)
    nfa = Nfa(
        alphabet=out_alpha,
        n_states=len(order),
        transitions=tuple(dict.fromkeys(main_trans)),
        initial=initials,
        accepting=accepting,
    )
    return PaddedRelationNfa(
        left_alphabet=r1.left_alphabet,
        right_alphabet=r2.right_alphabet,
        nfa=nfa,
    )


def _epsilon_free(nfa: Nfa) -> Nfa:
    """Equivalent NFA without epsilon transitions."""
    if not any(sym is None for _, sym, _ in nfa.transitions):
        return nfa
    out = nfa._outgoing()
    trans = []
    accepting = set()
    for q in range(nfa.n_states):
        cl = nfa.eps_closure({q})
        if cl & nfa.accepting:
            accepting.add(q)
        for p in cl:
            for sym, dsts in out[p].items():
                for d in dsts:
                    trans.append((q, sym, d))
    return Nfa(
        alphabet=nfa.alphabet,
        n_states=nfa.n_states,
        transitions=tuple(dict.fromkeys(trans)),
        initial=nfa.initial,
        accepting=frozenset(accepting),
    )


@dataclass(frozen=True)
class AutomaticStructure:
    """A word acceptor onto a semigroup plus one multiplier relation per
    letter and one for the empty word (key "")."""

    alphabet: tuple[str, ...]
    letter_eval: dict[str, int]
    acceptor: Nfa
    multipliers: dict[str, PaddedRelationNfa]

    def eval_word(self, sem: FiniteSemigroup, word: Sequence[str]) -> int:
        return sem.prod1(self.letter_eval[a] for a in word)


def structure_for_finite(sem: FiniteSemigroup, gens: Sequence[int]) -> AutomaticStructure:
    """The canonical automatic structure of a finite semigroup: shortlex
    normal forms as the word acceptor, multiplier relations listed pair by
    pair."""
    gens = sorted(set(gens))
    if closure(sem, gens).members != frozenset(sem.elements):
        raise NotGenerating("the given set does not generate the semigroup")
    letters = {g: f"a{g}" for g in gens}
    alphabet = tuple(letters[g] for g in gens)
    forms = shortlex_forms(sem, gens)
    rep = {
        elt: tuple(letters[g] for g in word) for elt, word in forms.items()
    }
    acceptor = nfa_from_words(alphabet, rep.values())
    multipliers: dict[str, PaddedRelationNfa] = {}
    multipliers[""] = PaddedRelationNfa.from_pairs(
        alphabet, alphabet, [(w, w) for w in rep.values()]
    )
    for g in gens:
        pairs = [(rep[x], rep[sem.mul(x, g)]) for x in sorted(rep)]
        multipliers[letters[g]] = PaddedRelationNfa.from_pairs(
            alphabet, alphabet, pairs
        )
    return AutomaticStructure(
        alphabet=alphabet,
        letter_eval={letters[g]: g for g in gens},
        acceptor=acceptor,
        multipliers=multipliers,
    )


def _target_domain(target):
    if isinstance(target, SubSemigroup):
        return target.parent, sorted(target.members)
    return target, list(target.elements)


def verify_structure_report(
    st: AutomaticStructure, target, max_len: int
) -> tuple[bool, str]:
    """Check a structure against a semigroup (or subsemigroup) on all words
    up to max_len: the acceptor must evaluate onto the target, and each
    multiplier must agree with its semantic definition both ways."""
    sem, elems = _target_domain(target)
    elem_set = set(elems)
    words = st.acceptor.enumerate_words(max_len)
    evals = {}
    for w in words:
        e = st.eval_word(sem, w)
        if e not in elem_set:
            return False, f"acceptor word {w} evaluates outside the target"
        evals[w] = e
    if set(evals.values()) != elem_set:
        missing = sorted(elem_set - set(evals.values()))
        return False, f"acceptor is not onto; missing elements {missing}"
    word_set = set(words)
    for key, rel in sorted(st.multipliers.items()):
        if key == "":
            factor = sem.order
        elif key in st.letter_eval:
            factor = st.letter_eval[key]
        else:
            return False, f"multiplier key {key!r} is not a letter"
        for u in words:
            for v in words:
                semantic = sem.mul1(evals[u], factor) == evals[v]
                accepted = rel.accepts_pair(u, v)
                if semantic != accepted:
                    return False, (
                        f"multiplier {key!r} disagrees on pair ({u}, {v}):"
                        f" semantic={semantic} accepted={accepted}"
                    )
        for s in rel.nfa.enumerate_words(max_len):
            try:
                u, v = deconvolve(s)
            except InputError:
                return False, f"multiplier {key!r} accepts malformed string {s}"
            if len(u) <= max_len and len(v) <= max_len:
                if u not in word_set or v not in word_set:
                    return False, (
                        f"multiplier {key!r} accepts pair outside the acceptor"
                        f" ({u}, {v})"
                    )
    return True, "ok"


def verify_structure(st: AutomaticStructure, target, max_len: int) -> bool:
    return verify_structure_report(st, target, max_len)[0]


@dataclass(frozen=True)
class TransferLetters:
    """Letter bookkeeping for a transferred structure: subscripted letters
    b<j>_<a>_<i>, their evaluations in T^1, and which were dropped for
    evaluating to the adjoined identity."""

    names: tuple[str, ...]
    info: dict[str, tuple[int, str, int]]
    evals: dict[str, int]
    excluded: frozenset[str]


@dataclass(frozen=True)
class TransferResult:
    letters: TransferLetters
    full_relation: PaddedRelationNfa
    restricted_relation: PaddedRelationNfa
    structure: AutomaticStructure


def _transfer_letters(st, green: GreenData, conn: ConnectorTables) -> TransferLetters:
    sem = green.sem
    n = sem.order
    k1 = green.class_count
    names, info, evals = [], {}, {}
    excluded = set()
    for j in range(k1):
        for a in st.alphabet:
            for i in range(k1):
                name = f"b{j}_{a}_{i}"
                sig = conn.left_factor[st.letter_eval[a]][i]
                val = conn.right_factor[j][sig]
                names.append(name)
                info[name] = (j, a, i)
                evals[name] = val
                if val == n:
                    excluded.add(name)
    return TransferLetters(
        names=tuple(names),
        info=info,
        evals=evals,
        excluded=frozenset(excluded),
    )


def transfer_relation(st, green: GreenData, conn: ConnectorTables,
                      letters: TransferLetters | None = None) -> PaddedRelationNfa:
    """The rewriting relation between words over the original alphabet and
    subscript-consistent words over the transferred letters.

    Pairs have equal length.  The automaton stores the class subscripts of
    the previously read letter: the right subscript chain is guessed and
    checked backwards, the left chain is computed forwards, and acceptance
    requires both chains to close at the identity class.
    """
    if letters is None:
        letters = _transfer_letters(st, green, conn)
    ev = {a: st.letter_eval[a] for a in st.alphabet}
    k1 = green.class_count
    alpha = pair_alphabet(st.alphabet, letters.names)

    states: dict = {"start": 0}
    trans = []

    def state_id(s):
        if s not in states:
            states[s] = len(states)
        return states[s]

    for name in letters.names:
        j, a, i = letters.info[name]
        s = ev[a]
        if conn.left_class[s][i] != j:
            continue
        pl = conn.right_class[j][conn.left_factor[s][i]]
        trans.append((0, (a, name), state_id((i, j, pl))))
    # forward transitions: previous (i, j, pl), next letter must satisfy
    # left_class[eval][i'] == i and j' == pl
    made = True
    while made:
        made = False
        existing = [s for s in list(states) if s != "start"]
        for prev in existing:
            i_prev, _j_prev, pl_prev = prev
            for name in letters.names:
                j, a, i = letters.info[name]
                if j != pl_prev:
                    continue
                s = ev[a]
                if conn.left_class[s][i] != i_prev:
                    continue
                pl = conn.right_class[j][conn.left_factor[s][i]]
                tgt = (i, j, pl)
                if tgt not in states:
                    made = True
                trans.append((state_id(prev), (a, name), state_id(tgt)))
    accepting = frozenset(
        idx for s, idx in states.items()
        if s != "start" and s[0] == 0 and s[2] == 0
    )
    nfa = Nfa(
        alphabet=alpha,
        n_states=len(states),
        transitions=tuple(dict.fromkeys(trans)),
        initial=frozenset({0}),
        accepting=accepting,
    )
    return PaddedRelationNfa(
        left_alphabet=st.alphabet, right_alphabet=letters.names, nfa=nfa
    )


def transfer_details(
    st: AutomaticStructure,
    sub: SubSemigroup,
    green: GreenData,
    conn: ConnectorTables,
    delay_bound: int | None = None,
    word_search_cap: int | None = None,
) -> TransferResult:
    """Build an automatic structure for the subsemigroup from one for S.

    The restricted relation pairs each acceptor word evaluating into T with
    its unique transferred word, letters evaluating to the adjoined identity
    dropped.  The new acceptor is the right projection of that relation, and
    each multiplier is the original multiplier of a word for the letter,
    conjugated through the relation.
    """
    sem = green.sem
    n = sem.order
    if sub.members != green.sub.members:
        raise InputError("subsemigroup does not match the Green data")
    if delay_bound is None:
        delay_bound = n + 1
    letters = _transfer_letters(st, green, conn)
    full = transfer_relation(st, green, conn, letters)

    # Pair every acceptor word with its transferred word.
    l_words = _finite_language(st.acceptor)
    pairs = []
    for u in l_words:
        pair = _rewrite_pair(st, green, conn, letters, u)
        if pair is not None:
            pairs.append(pair)
    kept = tuple(a for a in letters.names if a not in letters.excluded)
    restricted = PaddedRelationNfa.from_pairs(st.alphabet, kept, pairs)

    acceptor = determinize(project(restricted, 2))
    evals = {a: letters.evals[a] for a in kept}
    multipliers: dict[str, PaddedRelationNfa] = {}
    inv = invert(restricted)
    multipliers[""] = compose_relations(
        inv, compose_relations(st.multipliers[""], restricted, delay_bound),
        delay_bound,
    )
    for b in kept:
        target = evals[b]
        w = None
        for cand in st.acceptor.iter_words():
            if word_search_cap is not None and len(cand) > word_search_cap:
                break
            if st.eval_word(sem, cand) == target:
                w = cand
                break
        if w is None:
            raise InternalInconsistency(
                f"no acceptor word evaluates to {target}"
            )
        rel = st.multipliers[w[0]]
        for a in w[1:]:
            rel = compose_relations(rel, st.multipliers[a], delay_bound)
        multipliers[b] = compose_relations(
            inv, compose_relations(rel, restricted, delay_bound), delay_bound
        )
    structure = AutomaticStructure(
        alphabet=kept,
        letter_eval=evals,
        acceptor=acceptor,
        multipliers=multipliers,
    )
    return TransferResult(
        letters=letters,
        full_relation=full,
        restricted_relation=restricted,
        structure=structure,
    )


def transfer(
    st: AutomaticStructure,
    sub: SubSemigroup,
    green: GreenData,
    conn: ConnectorTables,
    delay_bound: int | None = None,
) -> AutomaticStructure:
    return transfer_details(st, sub, green, conn, delay_bound).structure


def _rewrite_pair(st, green, conn, letters, u):
    """The unique partner of an acceptor word under the transfer relation,
    or None when the word evaluates outside the subsemigroup."""
    sem = green.sem
    elems = [st.letter_eval[a] for a in u]
    if green.class_of(sem.prod1(elems)) != 0 or sem.prod1(elems) == sem.order:
        return None
    m = len(u)
    i_chain = [0] * (m + 1)  # i_chain[k] is the subscript of letter k (1-based)
    i_chain[m] = 0
    for k in range(m, 1, -1):
        i_chain[k - 1] = conn.left_class[elems[k - 1]][i_chain[k]]
    out = []
    j = conn.left_class[elems[0]][i_chain[1]]
    for k in range(1, m + 1):
        name = f"b{j}_{u[k - 1]}_{i_chain[k]}"
        if name not in letters.excluded:
            out.append(name)
        j = conn.right_class[j][conn.left_factor[elems[k - 1]][i_chain[k]]]
    if j != 0:
        raise InternalInconsistency("rewrite of a T word did not close")
    return (tuple(u), tuple(out))


def _finite_language(nfa: Nfa) -> list[tuple]:
    """All words of a finite language, shortlex; raises InputError if the
    language is infinite."""
    out = []
    cap = nfa.n_states + 1
    for w in nfa.iter_words():
        if len(w) > nfa.n_states:
            raise InputError("word acceptor language is not finite")
        out.append(w)
        if len(out) > 10_000_000:
            raise InputError("word acceptor language too large")
    return out


def nfa_to_json(nfa: Nfa) -> dict:
    def sym_out(sym):
        if isinstance(sym, tuple):
            return [sym[0], sym[1]]
        return sym

    return {
        "states": nfa.n_states,
        "alphabet": [sym_out(s) for s in nfa.alphabet],
        "transitions": [
            [s, sym_out(sym), d] for s, sym, d in nfa.transitions
        ],
        "initial": sorted(nfa.initial),
        "accepting": sorted(nfa.accepting),
    }


def nfa_from_json(data: dict) -> Nfa:
    def sym_in(s):
        if isinstance(s, list):
            if len(s) != 2:
                raise InputError("pair symbols must be two-element arrays")
            return (str(s[0]), str(s[1]))
        return s if s is None else str(s)

    try:
        alphabet = tuple(sym_in(s) for s in data["alphabet"])
        n = int(data["states"])
        trans = tuple(
            (int(s), sym_in(sym), int(d)) for s, sym, d in data["transitions"]
        )
        initial = frozenset(int(q) for q in data["initial"])
        accepting = frozenset(int(q) for q in data["accepting"])
    except (KeyError, TypeError, ValueError):
        raise InputError("malformed automaton JSON")
    for s, sym, d in trans:
        if not (0 <= s < n and 0 <= d < n):
            raise InputError("transition references unknown state")
        if sym is not None and sym not in set(alphabet):
            raise InputError(f"transition uses unknown symbol {sym!r}")
    return Nfa(
        alphabet=alphabet,
        n_states=n,
        transitions=trans,
        initial=initial,
        accepting=accepting,
    )


def structure_to_json(st: AutomaticStructure) -> dict:
    return {
        "alphabet": list(st.alphabet),
        "letter_eval": {a: st.letter_eval[a] for a in st.alphabet},
        "acceptor": nfa_to_json(st.acceptor),
        "multipliers": {
            key: nfa_to_json(rel.nfa) for key, rel in st.multipliers.items()
        },
    }


def structure_from_json(data: dict) -> AutomaticStructure:
    try:
        alphabet = tuple(str(a) for a in data["alphabet"])
        letter_eval = {str(k): int(v) for k, v in data["letter_eval"].items()}
        acceptor = nfa_from_json(data["acceptor"])
        multipliers = {}
        for key, sub in data["multipliers"].items():
            multipliers[str(key)] = PaddedRelationNfa(
                left_alphabet=alphabet,
                right_alphabet=alphabet,
                nfa=nfa_from_json(sub),
            )
    except (KeyError, TypeError):
        raise InputError("malformed structure JSON")
    return AutomaticStructure(
        alphabet=alphabet,
        letter_eval=letter_eval,
        acceptor=acceptor,
        multipliers=multipliers,
    )
