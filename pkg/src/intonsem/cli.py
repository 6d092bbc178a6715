"""Command-line front end: reduce, meaning, compare, truth, selfcheck.

Output is deterministic: floats are printed with 17 significant digits
(enough to round-trip float64 bit-exactly), JSON key order is fixed, and
no timestamps or environment data appear.  Exit codes: 0 success, 1
semantic or structural failure (no reduction, infelicitous structure,
cross-order comparison), 2 input error (bad syntax, unknown word or
individual, unreadable file).
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys

import numpy as np

from . import intonation, truth
from .frobenius import (
    boundary_tensor,
    frobenius_condition_check,
    mu,
    spider,
    zeta,
)
from .intonation import (
    AnnotationSyntaxError,
    InfelicitousStructure,
    analyses,
    parse_annotated,
)
from .lexicon import LexiconError, cosine, load_lexicon
from .pregroup import TypeSyntaxError, atom, flatten, parse_type, reduce
from .tensor import TypedTensor, compose, epsilon_contract, eta, tensor_to_json
from .truth import (
    UniverseError,
    UnknownIndividualError,
    intersect,
    load_universe,
    membership,
    theme_vector,
    theme_vector_composed,
)

_INPUT_ERRORS = (
    LexiconError,
    UniverseError,
    UnknownIndividualError,
    TypeSyntaxError,
    AnnotationSyntaxError,
)


def _fmt_float(x: float) -> str:
    return format(float(x), ".17g")


def _stable_json(obj) -> str:
    """Deterministic JSON: insertion-ordered keys, 17-significant-digit
    floats, no locale surprises."""
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if obj is None:
        return "null"
    if isinstance(obj, dict):
        inner = ", ".join(f"{json.dumps(k)}: {_stable_json(v)}" for k, v in obj.items())
        return "{" + inner + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_stable_json(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _vec_text(arr: np.ndarray) -> str:
    return "[" + ", ".join(_fmt_float(x) for x in np.asarray(arr).ravel()) + "]"


def _emit_dot(factors, diagram) -> str:
    lines = [
        "graph reduction {",
        "  rankdir=LR;",
        '  node [shape=plaintext, fontname="monospace"];',
    ]
    for k, f in enumerate(factors):
        lines.append(f'  f{k + 1} [label="{f}"];')
    chain = " -- ".join(f"f{k + 1}" for k in range(len(factors)))
    if len(factors) > 1:
        lines.append(f"  {chain} [style=invis];")
    for i, j in diagram.links:
        lines.append(f"  f{i + 1} -- f{j + 1} [constraint=false];")
    for k in diagram.survivors:
        lines.append(f'  f{k + 1} [shape=ellipse, label="{factors[k]}"];')
    lines.append("}")
    return "\n".join(lines)


def cmd_reduce(args) -> int:
    target = parse_type(args.target)
    runs: list[tuple[list, list]] = []  # (word type lists or None, word tensors)
    if args.lexicon:
        lex = load_lexicon(args.lexicon)
        words = args.input.split()
        if not words:
            print("error: empty input", file=sys.stderr)
            return 2
        combos = itertools.product(*[lex[w].types() for w in words])
        reductions = []
        for combo in combos:
            for diagram in reduce(list(combo), target):
                reductions.append((list(combo), diagram))
        factors = None
    else:
        t = parse_type(args.input)
        if len(t) == 0:
            print("error: empty input", file=sys.stderr)
            return 2
        factors = list(t)
        reductions = [(None, d) for d in reduce([t], target)]

    grammatical = bool(reductions)
    if args.emit_diagram == "dot":
        if not grammatical:
            print("error: no reduction to draw", file=sys.stderr)
            return 1
        combo, diagram = reductions[0]
        fs = factors if factors is not None else flatten(combo)
        print(_emit_dot(fs, diagram))
        return 0

    if args.format == "json":
        out = {
            "input": args.input,
            "target": args.target,
            "grammatical": grammatical,
            "reductions": [],
        }
        for combo, diagram in reductions:
            item = {}
            if combo is not None:
                item["word_types"] = [str(t) for t in combo]
            item.update(diagram.to_json())
            out["reductions"].append(item)
        print(_stable_json(out))
    else:
        shown = factors if factors is not None else None
        if shown is not None:
            print("factors: " + " ".join(str(f) for f in shown))
        if not grammatical:
            print(f"no reduction to '{target}'")
        for k, (combo, diagram) in enumerate(reductions, start=1):
            j = diagram.to_json()
            links = " ".join(f"({i},{jj})" for i, jj in j["links"]) or "(none)"
            survivors = " ".join(str(x) for x in j["survivors"]) or "(none)"
            prefix = f"reduction {k}: "
            if combo is not None:
                prefix += "types " + " | ".join(str(t) for t in combo) + "; "
            print(prefix + f"links {links}; survivors {survivors}")
    return 0 if grammatical else 1


def _analysis_json(a: intonation.Analysis) -> dict:
    spans = []
    for typing, value in zip(a.typings, a.values):
        spans.append(
            {
                "role": typing.span.role,
                "tokens": list(typing.span.tokens),
                "type": str(typing.target),
                "reduction": typing.diagram.to_json(),
                "value": tensor_to_json(value.array),
            }
        )
    return {
        "pattern": a.pattern,
        "meaning": tensor_to_json(a.meaning.array),
        "spans": spans,
    }


def cmd_meaning(args) -> int:
    lex = load_lexicon(args.lexicon)
    sentence = parse_annotated(args.sentence)
    found = analyses(sentence, lex)
    if args.format == "json":
        out = {
            "sentence": str(sentence),
            "analyses": [_analysis_json(a) for a in found],
        }
        print(_stable_json(out))
    else:
        print(str(sentence))
        for k, a in enumerate(found, start=1):
            print(f"analysis {k}: pattern {a.pattern}")
            for typing, value in zip(a.typings, a.values):
                words = " ".join(typing.span.tokens)
                print(
                    f"  {typing.span.role} '{words}' -> {typing.target}: "
                    + _vec_text(value.array)
                )
            order = a.meaning.order
            print(f"  meaning (order {order}): " + _vec_text(a.meaning.array))
    return 0


def cmd_compare(args) -> int:
    lex = load_lexicon(args.lexicon)
    ma = analyses(parse_annotated(args.a), lex)[0].meaning
    mb = analyses(parse_annotated(args.b), lex)[0].meaning
    if ma.order != mb.order:
        print(
            f"error: cannot compare a meaning of order {ma.order} with one of "
            f"order {mb.order}: they live in different spaces",
            file=sys.stderr,
        )
        return 1
    va, vb = ma.array.ravel(), mb.array.ravel()
    try:
        c = cosine(va, vb)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    dist = float(np.linalg.norm(va - vb))
    equal = dist <= args.tolerance
    if args.format == "json":
        print(_stable_json({"cosine": c, "distance": dist, "equal": equal}))
    else:
        print(f"cosine: {_fmt_float(c)}")
        print(f"distance: {_fmt_float(dist)}")
        print(f"equal (within {_fmt_float(args.tolerance)}): {str(equal).lower()}")
    return 0


_BOUNDARY_TOKENS = {">", "<", "⊳", "⊲"}


def cmd_truth(args) -> int:
    universe, relations = load_universe(args.universe)
    tokens = [t for t in args.query.split() if t not in _BOUNDARY_TOKENS]
    if len(tokens) != 3:
        print(
            "error: query must be 'subject relation rheme' "
            f"(got {len(tokens)} words)",
            file=sys.stderr,
        )
        return 2
    subject, rel_name, rheme = tokens
    if rel_name not in relations:
        known = ", ".join(sorted(relations)) or "(none)"
        print(
            f"error: unknown relation {rel_name!r}; universe file defines {known}",
            file=sys.stderr,
        )
        return 2
    rel = relations[rel_name]
    theme = theme_vector(universe, rel, subject)
    bit = membership(universe, theme, rheme)
    inter = intersect(universe, theme, rheme)
    names = [universe.individuals[k] for k in np.flatnonzero(inter)]
    if args.format == "json":
        out = {
            "subject": subject,
            "relation": rel_name,
            "rheme": rheme,
            "theme_vector": tensor_to_json(theme),
            "intersection": names,
            "membership": bit,
        }
        print(_stable_json(out))
    else:
        print(f"theme({subject} {rel_name}) = " + _vec_text(theme))
        shown = "{" + ", ".join(names) + "}" if names else "∅"
        print(f"intersection: {shown}")
        print(f"membership: {bit}")
    return 0


def _selfchecks(tolerance: float):
    rng = np.random.default_rng(271828)

    def close(x, y) -> bool:
        x, y = np.asarray(x), np.asarray(y)
        return bool(np.allclose(x, y, rtol=tolerance, atol=tolerance))

    yield "frobenius condition (dims 1-8)", all(
        frobenius_condition_check(d) for d in range(1, 9)
    )

    ok = True
    for d in (2, 3, 5):
        v = rng.random(d)
        m = rng.random((d, d))
        ok = ok and close(mu(np.diag(v)), v) and close(mu(m), np.diagonal(m))
        ok = ok and close(mu(np.outer(zeta(d), v) * np.eye(d)), v)
    yield "copy/merge round trips", ok

    ok = True
    for d in (2, 5, 50):
        v = rng.random(d)
        vt = TypedTensor(atom("n"), v)
        cap = TypedTensor(atom("n").r @ atom("n"), eta(d))
        ok = ok and close(epsilon_contract(vt, 0, cap, 0).array, v)
        cap_l = TypedTensor(atom("n") @ atom("n").l, eta(d))
        ok = ok and close(epsilon_contract(cap_l, 1, vt, 0).array, v)
    yield "yanking", ok

    ok = True
    for d in (1, 2, 3, 4, 5):
        full = np.tensordot(spider(1, 2, d), spider(2, 1, d), axes=([2], [0]))
        ok = ok and np.array_equal(full, spider(2, 2, d))
    yield "spider fusion sample", ok

    ok = True
    for d in (2, 5, 50):
        theme, rheme = rng.random(d), rng.random(d)
        both = (
            intonation.boundary_contraction(theme, rheme),
            intonation.boundary_contraction(theme, rheme, rheme_first=True),
        )
        ok = ok and close(both[0], theme * rheme) and np.array_equal(*both)
    yield "boundary contraction = element-wise product", ok

    ok = True
    for d in (2, 5):
        subj, obj1, obj2 = rng.random(d), rng.random(d), rng.random(d)
        verb = TypedTensor(
            parse_type("n.r s n.l n.l"), rng.random((d, d, d, d))
        )
        s_t = TypedTensor(atom("n"), subj)
        o1, o2 = TypedTensor(atom("n"), obj1), TypedTensor(atom("n"), obj2)
        a = epsilon_contract(s_t, 0, epsilon_contract(epsilon_contract(verb, 3, o1, 0), 2, o2, 0), 0)
        b = epsilon_contract(epsilon_contract(epsilon_contract(s_t, 0, verb, 0), 2, o1, 0), 1, o2, 0)
        ok = ok and close(a.array, b.array)
    yield "contraction-order independence", ok


def cmd_selfcheck(args) -> int:
    failed = False
    for name, ok in _selfchecks(args.tolerance):
        print(f"{name}: {'PASS' if ok else 'FAIL'}")
        failed = failed or not ok
    return 1 if failed else 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="intonsem",
        description="Pregroup grammar with tensor semantics and intonation-aware "
        "composition.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", help="search for pregroup reductions")
    p.add_argument("input", help="a type string like 'n n.r s n.l n', or words "
                   "when --lexicon is given")
    p.add_argument("--target", default="s", help="target type (default: s)")
    p.add_argument("--lexicon", help="lexicon JSON file for word lookup")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--emit-diagram", choices=("dot",), dest="emit_diagram",
                   help="emit the first reduction as a Graphviz cup diagram")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("meaning", help="compute the meaning of an annotated sentence")
    p.add_argument("sentence", help="e.g. '{T Mary likes} {R musicals}'")
    p.add_argument("--lexicon", required=True)
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_meaning)

    p = sub.add_parser("compare", help="cosine-compare two sentence meanings")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--lexicon", required=True)
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("truth", help="evaluate 'subject relation rheme' over a universe")
    p.add_argument("query", help="e.g. 'John likes Mary' (boundary markers allowed)")
    p.add_argument("--universe", required=True)
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_truth)

    p = sub.add_parser("selfcheck", help="run the built-in numeric property suite")
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.set_defaults(func=cmd_selfcheck)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InfelicitousStructure as exc:
        print(f"error: infelicitous structure: {exc}", file=sys.stderr)
        return 1


def app() -> None:
    sys.exit(main())


if __name__ == "__main__":
    app()
