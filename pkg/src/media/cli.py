"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 validation failure, 3 I/O error.
Text output is tab-delimited; ``--json`` switches every subcommand to a
single JSON document (``enumerate`` prints one JSON value per state).
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import formats, generators, oracles
from .blackbox import (
    BadMediumError,
    black_box_reset_sequence,
    enumerate_states,
    independent_set_oracle,
    max_size_oracle,
    powerset_oracle,
    wrap_explicit,
)
from .core import LengthFunction, Medium, MediumError, medium_stats, verify_medium
from .orientations import find_closed_orientation, find_violating_triple, is_closed
from .paths import (
    all_complementary_pairs,
    all_pairs_shortest_paths,
    distances_to_state,
    reset_sequence,
    single_source_distances,
)

EXIT_USAGE, EXIT_INVALID, EXIT_IO = 1, 2, 3
MAX_PERM_ITEMS = 8
MAX_TREE_HEIGHT = 3
MAX_POWERSET = 24


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _emit(args, text_rows, doc):
    if args.json:
        print(json.dumps(doc, ensure_ascii=False))
    else:
        for row in text_rows:
            print("\t".join(str(x) for x in row))


def _word_labels(M: Medium, word) -> list[str]:
    return [M.token_label(t) for t in word]


def _state_arg(M: Medium, value: str) -> int:
    if M.state_labels is not None and value in M.state_labels:
        return M.state_labels.index(value)
    try:
        s = int(value)
    except ValueError:
        raise UsageError(f"unknown state {value!r}") from None
    if not 0 <= s < M.n:
        raise UsageError(f"state {s} out of range 0..{M.n - 1}")
    return s


def _lengths(M: Medium, path) -> LengthFunction:
    if path is None:
        return LengthFunction.unit(M.tau)
    return formats.load_lengths(M, path)


def _oracle_note(args, label, fn):
    """Run an oracle for auditing; returns its value or None if it refuses the input."""
    if not args.oracle:
        return None
    try:
        return fn()
    except oracles.OracleSizeError as exc:
        print(f"oracle skipped ({label}): {exc}", file=sys.stderr)
        return None


def _fmt(x: float):
    return int(x) if float(x).is_integer() else x


# -- subcommands ---------------------------------------------------------------------

def cmd_gen(args):
    kind, params = args.kind, args.params

    def need(count, usage):
        if len(params) != count:
            raise UsageError(f"usage: gen {kind} {usage}")

    def integer(text):
        try:
            return int(text)
        except ValueError:
            raise UsageError(f"{text!r} is not an integer") from None

    if kind == "perm":
        need(1, "K")
        k = integer(params[0])
        if not 1 <= k <= MAX_PERM_ITEMS:
            raise UsageError(f"perm needs 1 <= K <= {MAX_PERM_ITEMS}")
        M = generators.permutation_medium(k)
    elif kind == "toporder":
        need(1, "DAGFILE")
        g = formats.load_text(params[0])
        M = generators.topological_ordering_medium(g.vertices, g.arcs)
    elif kind == "acyclic":
        need(1, "GRAPHFILE")
        g = formats.load_text(params[0])
        M = generators.acyclic_orientation_medium(g.vertices, g.edges)
    elif kind == "family":
        need(1, "FAMILYFILE")
        M = generators.from_well_graded_family(formats.load_text(params[0]).family())
    elif kind == "downclosed":
        need(1, "FAMILYFILE")
        M = generators.downward_closed_medium(formats.load_text(params[0]).family())
    elif kind == "indep":
        need(1, "GRAPHFILE")
        g = formats.load_text(params[0])
        M = generators.independent_set_medium(g.vertices, g.edges)
    elif kind == "btree":
        need(1, "K")
        k = integer(params[0])
        if not 0 <= k <= MAX_TREE_HEIGHT:
            raise UsageError(f"btree needs 0 <= K <= {MAX_TREE_HEIGHT}")
        if args.leaves is None:
            M = generators.binary_tree_height_medium(k)
        else:
            M = generators.binary_tree_medium(args.leaves, k)
    else:
        raise UsageError(f"unknown generator {kind!r}")
    text = formats.dumps_medium(M)
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0


def cmd_check(args):
    M = formats.load_medium(args.file)
    report = verify_medium(M)
    brute = _oracle_note(args, "axioms", lambda: oracles.brute_axioms(M))
    doc = {"ok": report.ok, "violations": [
        {"check": v.check, "message": v.message, "witness": list(v.witness)} for v in report.violations
    ]}
    rows = [("ok", "yes" if report.ok else "no")]
    rows += [("violation", v.check, v.message) for v in report.violations]
    if brute is not None:
        doc["oracle_failed_axioms"] = brute
        rows.append(("oracle", "medium" if not brute else "not a medium: " + ", ".join(brute)))
    if args.json:
        print(json.dumps(doc, ensure_ascii=False))
    else:
        out = sys.stdout if report.ok else sys.stderr
        for row in rows:
            print("\t".join(row), file=out)
    return 0 if report.ok else EXIT_INVALID


def cmd_stats(args):
    M = formats.load_medium(args.file)
    n, tau, m = medium_stats(M)
    density = n * math.log2(n)
    size_ok = n <= 2 ** (tau // 2)
    doc = {
        "n": n, "tau": tau, "m": m,
        "n_log2_n": density, "density_bound_holds": m <= density,
        "two_pow_half_tau": 2 ** (tau // 2), "size_bound_holds": size_ok,
    }
    rows = [("n", n), ("tau", tau), ("m", m),
            ("m <= n log2 n", f"{m} <= {density:.6g}", "yes" if m <= density else "no"),
            ("n <= 2^(tau/2)", f"{n} <= {2 ** (tau // 2)}", "yes" if size_ok else "no")]
    _emit(args, rows, doc)
    return 0


def _require_medium(M: Medium):
    report = verify_medium(M)
    if not report.ok:
        raise MediumError("input is not a medium: " + str(report.violations[0]))


def cmd_reset(args):
    M = formats.load_medium(args.file)
    _require_medium(M)
    res = reset_sequence(M)
    doc = {"word": list(res.word), "labels": _word_labels(M, res.word), "sink": res.sink,
           "sink_label": M.state_label(res.sink), "length": len(res.word)}
    rows = [("word", " ".join(doc["labels"])), ("length", len(res.word)), ("sink", M.state_label(res.sink))]
    best = _oracle_note(args, "shortest reset", lambda: oracles.brute_shortest_reset(M))
    if best is not None:
        doc["oracle_shortest"] = _word_labels(M, best)
        rows.append(("oracle shortest", len(best), " ".join(_word_labels(M, best))))
    _emit(args, rows, doc)
    return 0


def _check_against_brute(args, M, lam, table_rows):
    brute = _oracle_note(args, "distances", lambda: oracles.brute_distances(M, lam))
    if brute is None:
        return None
    return all(table_rows(brute))


def cmd_sssp(args):
    M = formats.load_medium(args.file)
    _require_medium(M)
    lam = _lengths(M, args.lengths)
    if (args.to is None) == (args.source is None):
        raise UsageError("give exactly one of --to and --from")
    if args.to is not None:
        q = _state_arg(M, args.to)
        dist = distances_to_state(M, lam, q)
        agree = _check_against_brute(args, M, lam, lambda b: (b[s][q] == dist[s] for s in range(M.n)))
    else:
        s0 = _state_arg(M, args.source)
        dist = single_source_distances(M, lam, s0)
        agree = _check_against_brute(args, M, lam, lambda b: (b[s0][q] == dist[q] for q in range(M.n)))
    doc = {"direction": "to" if args.to is not None else "from",
           "distances": [_fmt(d) for d in dist]}
    rows = [(s, M.state_label(s), _fmt(d)) for s, d in enumerate(dist)]
    if agree is not None:
        doc["oracle_agrees"] = agree
        rows.append(("oracle", "agree" if agree else "DISAGREE"))
    _emit(args, rows, doc)
    return 0 if agree is not False else EXIT_INVALID


def cmd_apsp(args):
    M = formats.load_medium(args.file)
    _require_medium(M)
    lam = _lengths(M, args.lengths)
    table = all_pairs_shortest_paths(M, lam)
    agree = _check_against_brute(
        args, M, lam,
        lambda b: (b[s][q] == table.dist[s][q] for s in range(M.n) for q in range(M.n)),
    )
    doc = {"dist": [[_fmt(d) for d in row] for row in table.dist],
           "firstToken": [list(row) for row in table.first_token],
           "scanSteps": table.scan_steps}
    if agree is not None:
        doc["oracle_agrees"] = agree
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            json.dump(doc, fh)
            fh.write("\n")
    if args.json:
        print(json.dumps(doc))
    else:
        print("\t".join(["dist"] + [M.state_label(q) for q in range(M.n)]))
        for s, row in enumerate(table.dist):
            print("\t".join([M.state_label(s)] + [str(_fmt(d)) for d in row]))
        print("\t".join(["firstToken"] + [M.state_label(q) for q in range(M.n)]))
        for s, row in enumerate(table.first_token):
            print("\t".join([M.state_label(s)] + [M.token_label(t) if t >= 0 else "-" for t in row]))
        if agree is not None:
            print("oracle\t" + ("agree" if agree else "DISAGREE"))
    return 0 if agree is not False else EXIT_INVALID


def cmd_complements(args):
    M = formats.load_medium(args.file)
    _require_medium(M)
    pairs = all_complementary_pairs(M)
    doc = {"pairs": [list(p) for p in pairs],
           "labels": [[M.state_label(a), M.state_label(b)] for a, b in pairs]}
    rows = [(M.state_label(a), M.state_label(b)) for a, b in pairs]
    brute = _oracle_note(args, "complements", lambda: oracles.brute_complement_pairs(M))
    if brute is not None:
        doc["oracle_agrees"] = brute == pairs
        rows.append(("oracle", "agree" if brute == pairs else "DISAGREE"))
    _emit(args, rows, doc)
    return 0 if brute is None or brute == pairs else EXIT_INVALID


def cmd_orient(args):
    M = formats.load_medium(args.file)
    _require_medium(M)
    o = find_closed_orientation(M)
    brute = _oracle_note(args, "closed scan", lambda: oracles.brute_closed_scan(M))
    if o is None:
        doc = {"closed": None}
        rows = [("none",)]
    else:
        doc = {"closed": formats.orientation_to_dict(o),
               "positive": [M.token_label(t) for t in o.positive_tokens()]}
        rows = [("positive", " ".join(doc["positive"]))]
    if brute is not None:
        doc["oracle_closed_count"] = len(brute)
        rows.append(("oracle closed orientations", len(brute)))
    _emit(args, rows, doc)
    return 0


def cmd_closed(args):
    M = formats.load_medium(args.file)
    _require_medium(M)
    o = formats.load_orientation(M, args.orientation)
    closed = is_closed(M, o)
    doc = {"closed": closed}
    rows = [("closed", "yes" if closed else "no")]
    if not closed:
        w = find_violating_triple(M, o)
        doc["witness"] = {"state": w.state, "t": w.t, "t2": w.t2,
                          "labels": [M.state_label(w.state), M.token_label(w.t), M.token_label(w.t2)]}
        rows.append(("witness", M.state_label(w.state), M.token_label(w.t), M.token_label(w.t2)))
    _emit(args, rows, doc)
    return 0 if closed else EXIT_INVALID


def cmd_enumerate(args):
    kind, params = args.kind, args.params

    def integer(text):
        try:
            return int(text)
        except ValueError:
            raise UsageError(f"{text!r} is not an integer") from None

    if kind == "powerset":
        if len(params) != 1:
            raise UsageError("usage: enumerate powerset K")
        k = integer(params[0])
        if not 0 <= k <= MAX_POWERSET:
            raise UsageError(f"powerset needs 0 <= K <= {MAX_POWERSET}")
        bb = powerset_oracle(k)
    elif kind == "maxsize":
        if len(params) != 2:
            raise UsageError("usage: enumerate maxsize K U")
        k, u = integer(params[0]), integer(params[1])
        if not (0 <= k and 0 <= u <= MAX_POWERSET):
            raise UsageError(f"maxsize needs K >= 0 and 0 <= U <= {MAX_POWERSET}")
        bb = max_size_oracle(k, u)
    elif kind == "indep":
        if len(params) != 1:
            raise UsageError("usage: enumerate indep GRAPHFILE")
        g = formats.load_text(params[0])
        index = {v: i for i, v in enumerate(g.vertices)}
        bb = independent_set_oracle(g.vertices, [(index[a], index[b]) for a, b in g.edges])
    elif kind == "wrap":
        if len(params) != 1:
            raise UsageError("usage: enumerate wrap FILE")
        M = formats.load_medium(params[0])
        _require_medium(M)
        bb = wrap_explicit(M)
    else:
        raise UsageError(f"unknown oracle {kind!r}")

    if args.reset:
        word = black_box_reset_sequence(bb)
        labels = [bb.tokens[t] for t in word]
        _emit(args, [("word", " ".join(labels)), ("length", len(word)), ("sink", bb.render(bb.seed))],
              {"word": list(word), "labels": labels, "length": len(word), "sink": bb.render(bb.seed)})
        return 0
    for state in enumerate_states(bb):
        text = bb.render(state)
        print(json.dumps(text) if args.json else text, flush=True)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--oracle", action="store_true",
                        help="also run the brute-force oracle where one applies (small inputs only)")

    p = _Parser(prog="media", description="Algorithms for media.", parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", parents=[common], help="generate an example medium")
    g.add_argument("kind", choices=["perm", "toporder", "acyclic", "family", "downclosed", "indep", "btree"])
    g.add_argument("params", nargs="*")
    g.add_argument("-o", "--output", help="output file (default stdout)")
    g.add_argument("--leaves", type=int, help="btree: also bound the number of leaves")
    g.set_defaults(func=cmd_gen)

    for name, func, helptext in [
        ("check", cmd_check, "verify the medium axioms"),
        ("stats", cmd_stats, "print n, tau, m and the size bounds"),
        ("reset", cmd_reset, "find a reset sequence of length n-1"),
        ("complements", cmd_complements, "list all complementary pairs"),
        ("orient", cmd_orient, "find a closed orientation"),
    ]:
        c = sub.add_parser(name, parents=[common], help=helptext)
        c.add_argument("file")
        c.set_defaults(func=func)

    c = sub.add_parser("sssp", parents=[common], help="distances to (or from) one state")
    c.add_argument("file")
    c.add_argument("--to", help="target state (index or label)")
    c.add_argument("--from", dest="source", help="source state (index or label)")
    c.add_argument("--lengths", help="length-function JSON file")
    c.set_defaults(func=cmd_sssp)

    c = sub.add_parser("apsp", parents=[common], help="all-pairs distance and first-token tables")
    c.add_argument("file")
    c.add_argument("--lengths", help="length-function JSON file")
    c.add_argument("-o", "--output", help="also write the tables as JSON here")
    c.set_defaults(func=cmd_apsp)

    c = sub.add_parser("closed", parents=[common], help="test an orientation for closedness")
    c.add_argument("file")
    c.add_argument("--orientation", required=True, help="orientation JSON file")
    c.set_defaults(func=cmd_closed)

    c = sub.add_parser("enumerate", parents=[common], help="list the states of a black-box medium")
    c.add_argument("kind", choices=["powerset", "maxsize", "indep", "wrap"])
    c.add_argument("params", nargs="*")
    c.add_argument("--reset", action="store_true", help="print the black-box reset word instead")
    c.set_defaults(func=cmd_enumerate)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"media: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MediumError, BadMediumError, oracles.OracleSizeError) as exc:
        print(f"media: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"media: {exc}", file=sys.stderr)
        return EXIT_IO


def main():
    sys.exit(run())
