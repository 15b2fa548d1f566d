"""Command-line front end.

One executable with subcommands; every command reads JSON files, prints
either a human summary or schema-stable JSON (byte-identical across runs for
identical inputs), and exits 0 on success, 1 when a mathematical verification
fails, 2 on input errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import automatic as au
from . import growth as gr
from . import present as pr
from . import relgreen as rg
from . import rewrite as rw
from . import schutz as sc
from .core import (
    BlackBoxSemigroup,
    FiniteSemigroup,
    SubSemigroup,
    closure,
    is_cancellative,
    is_group,
)
from .errors import (
    EmptyGenerators,
    GreenIndexError,
    InputError,
    InvalidLetter,
    NotAnHClass,
    NotClosed,
    NotComparable,
    NotGenerating,
    NotInSubsemigroup,
    OutOfRange,
    VerificationFailure,
)

_INPUT_ERRORS = (
    InputError,
    OutOfRange,
    NotClosed,
    EmptyGenerators,
    NotGenerating,
    InvalidLetter,
    NotAnHClass,
    NotComparable,
    NotInSubsemigroup,
    OSError,
    json.JSONDecodeError,
)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _load_semigroup(path: str) -> FiniteSemigroup:
    return FiniteSemigroup.from_json_dict(_load_json(path))


def _load_sub(sem: FiniteSemigroup, path: str) -> SubSemigroup:
    data = _load_json(path)
    try:
        members = frozenset(int(x) for x in data["members"])
    except (KeyError, TypeError, ValueError):
        raise InputError("subsemigroup JSON needs a 'members' list")
    return SubSemigroup(parent=sem, members=members)


def _ints(text: str) -> list[int]:
    try:
        return [int(p) for p in text.split(",") if p.strip() != ""]
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}")


def _letters(text: str) -> tuple[str, ...]:
    return tuple(p.strip() for p in text.split(",") if p.strip() != "")


def _green(args):
    sem = _load_semigroup(args.semigroup)
    sub = _load_sub(sem, args.sub)
    green = rg.relative_green(sem, sub)
    return sem, sub, green


def cmd_validate(args) -> int:
    data = _load_json(args.semigroup)
    try:
        sem = FiniteSemigroup.from_json_dict(data)
    except (OutOfRange,) as exc:
        print(_dump({"valid": False, "error": str(exc)}))
        return 1
    except GreenIndexError as exc:
        witness = getattr(exc, "witness", None)
        print(_dump({"valid": False, "error": str(exc),
                     "witness": list(witness) if witness else None}))
        return 1
    out = {"valid": True, "order": sem.order, "identity": sem.identity,
           "group": is_group(sem), "cancellative": is_cancellative(sem)}
    if args.format == "json":
        print(_dump(out))
    else:
        print(f"valid semigroup of order {sem.order};"
              f" identity: {sem.identity}; group: {out['group']};"
              f" cancellative: {out['cancellative']}")
    return 0


def cmd_green_index(args) -> int:
    sem, sub, green = _green(args)
    out = {
        "green_index": green.green_index,
        "rees_index": rg.rees_index(sem, sub),
        "complement_classes": [sorted(c) for c in green.complement_classes],
        "representatives": list(green.reps),
    }
    if args.format == "json":
        print(_dump(out))
    else:
        print(f"Green index: {out['green_index']}")
        print(f"Rees index:  {out['rees_index']}")
        for i, cls in enumerate(out["complement_classes"], start=1):
            print(f"  class {i}: {cls} (representative {out['representatives'][i-1]})")
    return 0


def cmd_eggbox(args) -> int:
    sem = _load_semigroup(args.semigroup)
    if args.relative:
        if not args.sub:
            raise InputError("--relative needs --sub")
        sub = _load_sub(sem, args.sub)
    else:
        sub = SubSemigroup(parent=sem, members=frozenset(sem.elements))
    green = rg.relative_green(sem, sub)
    dot = rg.eggbox_dot(green, highlight_complement=args.relative)
    if args.format == "json":
        print(_dump({"dot": dot}))
    else:
        print(dot)
    return 0


def cmd_connectors(args) -> int:
    sem, sub, green = _green(args)
    conn = rg.connectors(green)
    out = {
        "class_count": green.class_count,
        "representatives": [green.rep_of(i) for i in range(green.class_count)],
        "left_class": [list(r) for r in conn.left_class],
        "left_factor": [list(r) for r in conn.left_factor],
        "right_class": [list(r) for r in conn.right_class],
        "right_factor": [list(r) for r in conn.right_factor],
    }
    if args.format == "json":
        print(_dump(out))
    else:
        print(f"classes (index 0 = adjoined identity): {out['representatives']}")
        print("s * h_i = h_[left_class[s][i]] * left_factor[s][i]")
        print("h_i * s = right_factor[i][s] * h_[right_class[i][s]]")
        for s in range(sem.order + 1):
            print(f"  s={s}: classes {conn.left_class[s]},"
                  f" factors {conn.left_factor[s]}")
    return 0


def cmd_rewrite(args) -> int:
    sem, sub, green = _green(args)
    conn = rg.connectors(green)
    word = _ints(args.word)
    if not 0 <= args.class_index < green.class_count:
        raise InputError("class index out of range")
    push = rw.push_right if args.direction == "right" else rw.push_left
    tr = push(args.class_index, word, conn)
    out = {
        "direction": args.direction,
        "input_class": tr.input_class,
        "word": list(tr.word),
        "output_word": list(tr.output_word),
        "output_class": tr.output_class,
        "steps": list(tr.steps),
    }
    if args.format == "json":
        print(_dump(out))
    else:
        lhs = ([green.rep_of(tr.input_class), *tr.word]
               if args.direction == "right" else [*tr.word, green.rep_of(tr.input_class)])
        rhs = ([*tr.output_word, green.rep_of(tr.output_class)]
               if args.direction == "right" else [green.rep_of(tr.output_class), *tr.output_word])
        print(f"{lhs} = {rhs} (classes visited: {list(tr.steps)})")
    return 0


def cmd_schreier(args) -> int:
    sem, sub, green = _green(args)
    conn = rg.connectors(green)
    gens = _ints(args.gens)
    bset, factorizer = rw.schreier_generators(sem, gens, sub, green, conn)
    closed = closure(sem, bset).members == sub.members if bset else False
    samples = {
        str(t): list(factorizer(t)) for t in sub.sorted_members()
    }
    out = {"generators": sorted(bset), "closure_is_subsemigroup": closed,
           "factorizations": samples}
    if args.format == "json":
        print(_dump(out))
    else:
        print(f"generators of T: {sorted(bset)} (closure equals T: {closed})")
        for t, w in samples.items():
            print(f"  {t} = product{tuple(w)}")
    return 0


def cmd_schutz(args) -> int:
    sem, sub, green = _green(args)
    h_class = green.h_class_of(args.class_of)
    grp = sc.schutz_group(sem, sub, h_class, min(h_class), green=green)
    fam = sc.lambda_data(sem, sub, green, h_class, min(h_class))
    b_gens = _ints(args.sub_gens) if args.sub_gens else list(sub.sorted_members())
    gens = sc.schutz_generators(b_gens, fam, grp)
    out = {
        "h_class": sorted(h_class),
        "stabilizer": list(grp.stabilizer),
        "gamma_classes": [list(c) for c in grp.gamma_classes],
        "order": grp.order,
        "permutations": [list(p) for p in grp.perms],
        "group_table": [list(r) for r in grp.group.table],
        "generators": sorted(gens),
    }
    if args.format == "json":
        print(_dump(out))
    else:
        print(f"H-class {out['h_class']}, stabilizer {out['stabilizer']}")
        print(f"gamma classes: {out['gamma_classes']}")
        print(f"group of order {grp.order}; table {out['group_table']}")
        print(f"generator images: {out['generators']}")
    return 0


def cmd_present_synth(args) -> int:
    sem, sub, green = _green(args)
    conn = rg.connectors(green)
    if args.presentation:
        q_pres, q_assign = pr.Presentation.from_json_dict(
            _load_json(args.presentation)
        )
        if q_assign is None:
            raise InputError("the base presentation file needs an 'assignment'")
    else:
        q_pres, q_assign = pr.sub_table_presentation(sem, sub)
    packs = pr.build_schutz_packs(sem, sub, green, q_pres, q_assign)
    pres, assign = pr.synthesize_presentation(
        q_pres, q_assign, packs, green, conn,
        max_classes=args.max_classes, max_len=args.max_len,
    )
    print(_dump(pres.to_json_dict(assignment=assign)))
    return 0


def cmd_present_enumerate(args) -> int:
    pres, _ = pr.Presentation.from_json_dict(_load_json(args.presentation))
    result = pr.enumerate_presentation(pres, args.max_classes, args.max_len)
    if not result.complete:
        print(_dump({"complete": False, "reason": result.reason}))
        return 0
    out = {
        "complete": True,
        "size": result.size,
        "representatives": ["".join(w) if all(len(a) == 1 for a in pres.alphabet)
                            else list(w) for w in result.reps],
    }
    print(_dump(out))
    return 0


def cmd_present_verify(args) -> int:
    pres, assign = pr.Presentation.from_json_dict(_load_json(args.presentation))
    if assign is None:
        raise InputError("the presentation file needs an 'assignment'")
    sem = _load_semigroup(args.semigroup)
    ok = pr.verify_presentation(pres, sem, assign,
                                max_classes=args.max_classes,
                                max_len=args.max_len)
    witness = None
    if not ok:
        for u, v in pres.relations:
            if (pr.evaluate_word(sem, assign, u)
                    != pr.evaluate_word(sem, assign, v)):
                witness = ["".join(u), "".join(v)]
                break
    print(_dump({"verified": ok, "violated_relation": witness}))
    return 0 if ok else 1


def cmd_wp(args) -> int:
    sem, sub, green = _green(args)
    ctx = pr.word_problem_context(sem, sub, green=green)
    w1, w2 = _letters(args.word1), _letters(args.word2)
    verdict = rw.word_equality_report(w1, w2, ctx)
    out = {"equal": verdict.equal, "branch": verdict.branch,
           "detail": verdict.detail}
    if args.format == "json":
        print(_dump(out))
    else:
        print(f"branch: {verdict.branch}")
        print(f"equal: {verdict.equal} ({verdict.detail})")
    return 0


def cmd_growth_series(args) -> int:
    if args.blackbox:
        if args.blackbox != "nat-plus":
            raise InputError("the only built-in black box is 'nat-plus'")
        sem = BlackBoxSemigroup(multiply=lambda a, b: a + b, generators=(1,))
        series = gr.growth_function(sem, [1], args.max)
        disclaimer = ("black-box associativity is spot-checked on sampled"
                      " products only, never proven")
    else:
        if not args.semigroup:
            raise InputError("need --semigroup or --blackbox")
        sem = _load_semigroup(args.semigroup)
        series = gr.growth_function(sem, _ints(args.gens), args.max)
        disclaimer = None
    out = {"series": list(series)}
    if disclaimer:
        out["disclaimer"] = disclaimer
    if args.format == "json":
        print(_dump(out))
    else:
        if disclaimer:
            print(f"note: {disclaimer}")
        print(" ".join(str(v) for v in series))
    return 0


def cmd_growth_dominate(args) -> int:
    sem, sub, _green_data = _green(args)
    rep = gr.domination_check(sem, sub, _ints(args.r), _ints(args.sub_gens),
                              args.max)
    out = {
        "k1": rep.k1,
        "k2": rep.k2,
        "r_set": list(rep.r_set),
        "rows": [list(r) for r in rep.rows],
        "holds": rep.holds,
    }
    if args.format == "json":
        print(_dump(out))
    else:
        print(f"k1 = {rep.k1}, k2 = {rep.k2}, R = {list(rep.r_set)}")
        for m, gs, bound in rep.rows:
            print(f"  n={m}: g_S={gs} <= {bound}")
        print(f"inequality holds: {rep.holds}")
    return 0 if rep.holds else 1


def cmd_auto_build(args) -> int:
    sem = _load_semigroup(args.semigroup)
    st = au.structure_for_finite(sem, _ints(args.gens))
    print(_dump(au.structure_to_json(st)))
    return 0


def cmd_auto_verify(args) -> int:
    sem = _load_semigroup(args.semigroup)
    st = au.structure_from_json(_load_json(args.structure))
    target = _load_sub(sem, args.sub) if args.sub else sem
    ok, reason = au.verify_structure_report(st, target, args.max_len)
    print(_dump({"verified": ok, "reason": reason}))
    return 0 if ok else 1


def cmd_auto_transfer(args) -> int:
    sem = _load_semigroup(args.semigroup)
    sub = _load_sub(sem, args.sub)
    st = au.structure_from_json(_load_json(args.structure))
    green = rg.relative_green(sem, sub)
    conn = rg.connectors(green)
    res = au.transfer_details(st, sub, green, conn,
                              delay_bound=args.delay_bound)
    out = au.structure_to_json(res.structure)
    out["excluded_letters"] = sorted(res.letters.excluded)
    print(_dump(out))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="greenindex",
        description="Green index computations for finite semigroups",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        p = sub.add_parser(name, **kw)
        p.set_defaults(fn=fn)
        p.add_argument("--format", choices=["human", "json"], default="human")
        return p

    p = add("validate", cmd_validate, help="validate a Cayley table")
    p.add_argument("--semigroup", required=True)

    p = add("green-index", cmd_green_index, help="relative classes and index")
    p.add_argument("--semigroup", required=True)
    p.add_argument("--sub", required=True)

    p = add("eggbox", cmd_eggbox, help="egg-box diagram as DOT")
    p.add_argument("--semigroup", required=True)
    p.add_argument("--sub")
    p.add_argument("--relative", action="store_true")

    p = add("connectors", cmd_connectors, help="transport tables")
    p.add_argument("--semigroup", required=True)
    p.add_argument("--sub", required=True)

    p = add("rewrite", cmd_rewrite, help="push a representative through a word")
    p.add_argument("--semigroup", required=True)
    p.add_argument("--sub", required=True)
    p.add_argument("--class-index", type=int, required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--direction", choices=["right", "left"], default="right")

    p = add("schreier", cmd_schreier, help="subsemigroup generators from S generators")
    p.add_argument("--semigroup", required=True)
    p.add_argument("--sub", required=True)
    p.add_argument("--gens", required=True)

    p = add("schutz", cmd_schutz, help="Schutzenberger group of an H-class")
    p.add_argument("--semigroup", required=True)
    p.add_argument("--sub", required=True)
    p.add_argument("--class-of", type=int, required=True)
    p.add_argument("--sub-gens")

    pres = sub.add_parser("present", help="presentation tools")
    pres_sub = pres.add_subparsers(dest="subcommand", required=True)

    p = pres_sub.add_parser("synth")
    p.set_defaults(fn=cmd_present_synth)
    p.add_argument("--format", choices=["human", "json"], default="json")
    p.add_argument("--semigroup", required=True)
    p.add_argument("--sub", required=True)
    p.add_argument("--presentation")
    p.add_argument("--max-classes", type=int, default=None)
    p.add_argument("--max-len", type=int, default=None)

    p = pres_sub.add_parser("enumerate")
    p.set_defaults(fn=cmd_present_enumerate)
    p.add_argument("--format", choices=["human", "json"], default="json")
    p.add_argument("--presentation", required=True)
    p.add_argument("--max-classes", type=int, default=1000)
    p.add_argument("--max-len", type=int, default=12)

    p = pres_sub.add_parser("verify")
    p.set_defaults(fn=cmd_present_verify)
    p.add_argument("--format", choices=["human", "json"], default="json")
    p.add_argument("--presentation", required=True)
    p.add_argument("--semigroup", required=True)
    p.add_argument("--max-classes", type=int, default=None)
    p.add_argument("--max-len", type=int, default=None)

    p = add("wp", cmd_wp, help="decide equality of two words")
    p.add_argument("--semigroup", required=True)
    p.add_argument("--sub", required=True)
    p.add_argument("--word1", required=True)
    p.add_argument("--word2", required=True)

    grw = sub.add_parser("growth", help="growth series and domination")
    grw_sub = grw.add_subparsers(dest="subcommand", required=True)

    p = grw_sub.add_parser("series")
    p.set_defaults(fn=cmd_growth_series)
    p.add_argument("--format", choices=["human", "json"], default="human")
    p.add_argument("--semigroup")
    p.add_argument("--gens", default="")
    p.add_argument("--max", type=int, default=20)
    p.add_argument("--blackbox")

    p = grw_sub.add_parser("dominate")
    p.set_defaults(fn=cmd_growth_dominate)
    p.add_argument("--format", choices=["human", "json"], default="human")
    p.add_argument("--semigroup", required=True)
    p.add_argument("--sub", required=True)
    p.add_argument("--r", required=True)
    p.add_argument("--sub-gens", required=True)
    p.add_argument("--max", type=int, default=12)

    aut = sub.add_parser("auto", help="automatic structures")
    aut_sub = aut.add_subparsers(dest="subcommand", required=True)

    p = aut_sub.add_parser("build")
    p.set_defaults(fn=cmd_auto_build)
    p.add_argument("--format", choices=["human", "json"], default="json")
    p.add_argument("--semigroup", required=True)
    p.add_argument("--gens", required=True)

    p = aut_sub.add_parser("verify")
    p.set_defaults(fn=cmd_auto_verify)
    p.add_argument("--format", choices=["human", "json"], default="json")
    p.add_argument("--structure", required=True)
    p.add_argument("--semigroup", required=True)
    p.add_argument("--sub")
    p.add_argument("--max-len", type=int, default=6)

    p = aut_sub.add_parser("transfer")
    p.set_defaults(fn=cmd_auto_transfer)
    p.add_argument("--format", choices=["human", "json"], default="json")
    p.add_argument("--structure", required=True)
    p.add_argument("--semigroup", required=True)
    p.add_argument("--sub", required=True)
    p.add_argument("--delay-bound", type=int, default=None)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except _INPUT_ERRORS as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except VerificationFailure as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1
    except GreenIndexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
