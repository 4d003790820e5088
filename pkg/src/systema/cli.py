"""Command-line front end.

Exit status: 0 = computed, 1 = a checked property failed (counterexample
in the payload), 2 = usage or parse error.  ``--format machine`` emits
the versioned line format from :mod:`systema.report`; identical
invocations give byte-identical machine output (the seed is recorded in
the header block).  The environment variable SYSTEMA_BUDGET overrides
search budgets (see systema.budgets).
"""

import argparse
import sys

from . import core, linalg, polysys, tropicalize
from .errors import SystemaError, FormatError
from .instances import resolve
from .report import emit_report


class CliError(Exception):
    def __init__(self, message, code=2):
        super().__init__(message)
        self.code = code


def _read(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}")


def _resolve(name):
    try:
        return resolve(name)
    except ValueError as exc:
        raise CliError(str(exc))


def _load_matrix(path, system):
    M = linalg.parse_matrix(_read(path), resolve)
    if M.system is not system:
        raise CliError(f"{path} is over {M.system.name}, not {system.name}")
    return M


def _load_vector(path, system):
    v = linalg.parse_vector(_read(path), resolve)
    if v.system is not system:
        raise CliError(f"{path} is over {v.system.name}, not {system.name}")
    return v


def _load_poly(path, system):
    f = polysys.parse_poly(_read(path), resolve)
    if f.system is not system:
        raise CliError(f"{path} is over {f.system.name}, not {system.name}")
    return f


def _parse_tokens(system, spec_text):
    return tuple(system.parse_element(tok.strip())
                 for tok in spec_text.split(",") if tok.strip())


def _domain(system, args):
    if getattr(args, "domain", None):
        return _parse_tokens(system, args.domain), True
    points, exhaustive = system.probe_elements()
    return points, exhaustive


# each runner returns (exit_code, entries) where entries are (key, value)


def run_classify(args):
    system = _resolve(args.instance)
    report = core.audit_axioms(system)
    consistent = report.consistent_with_flags(system.flags)
    out = [("command", "classify"), ("instance", system.name),
           ("sampled", report.summary.sampled),
           ("declared-triple", system.flags.is_triple),
           ("declared-pseudo-triple",
            system.flags.is_pseudo_triple_only)]
    for e in report.entries:
        out.append((f"axiom.{e.axiom}", "pass" if e.passed else "FAIL"))
        if e.counterexample is not None:
            witness = ",".join(system.format_element(x)
                               for x in e.counterexample)
            out.append((f"counterexample.{e.axiom}", witness))
    s = report.summary
    out += [("is-t-module", s.is_t_module), ("is-triple", s.is_triple),
            ("is-system", s.is_system),
            ("meta-tangible", s.is_meta_tangible),
            ("minus-bipotent", s.is_minus_bipotent),
            ("reversible", s.is_reversible),
            ("negation-kind", s.negation_kind),
            ("characteristic", "exceeds-bound" if s.characteristic is None
             else s.characteristic),
            ("max-height", "exceeds-bound" if s.max_height_observed is None
             else s.max_height_observed)]
    if system.is_finite and system.is_unital:
        prof = core.height_two_profile(system)
        out += [("cover-tangible-quasizero", prof.cover),
                ("meta-tangible-height-2", prof.height_le_2),
                ("meta-tangible-e-prime", prof.e_prime_rule),
                ("profile-agreement", prof.agree)]
    out.append(("consistent-with-declared", consistent))
    return (0 if consistent else 1), out


def run_det(args):
    system = _resolve(args.instance)
    A = _load_matrix(args.matrix, system)
    value = linalg.det_minus(A)
    return 0, [("command", "det"), ("instance", system.name),
               ("value", system.format_element(value)),
               ("nonsingular", system.is_tangible(value))]


def run_adj(args):
    system = _resolve(args.instance)
    A = _load_matrix(args.matrix, system)
    adj = linalg.adj_minus(A)
    out = [("command", "adj"), ("instance", system.name),
           ("rows", adj.rows), ("cols", adj.cols)]
    for i in range(adj.rows):
        out.append((f"row.{i + 1}",
                    " ".join(system.format_element(x) for x in adj.row(i))))
    return 0, out


def run_laplace(args):
    system = _resolve(args.instance)
    A = _load_matrix(args.matrix, system)
    rows = [int(r) for r in args.rows.split(",") if r.strip()]
    value = linalg.laplace_det(A, rows)
    det = linalg.det_minus(A)
    match = value == det
    out = [("command", "laplace"), ("instance", system.name),
           ("rows", ",".join(str(r) for r in rows)),
           ("value", system.format_element(value)),
           ("det", system.format_element(det)),
           ("matches-det", match)]
    return (0 if match else 1), out


def run_solve(args):
    system = _resolve(args.instance)
    A = _load_matrix(args.matrix, system)
    v = _load_vector(args.vector, system)
    result = linalg.cramer_certify(A, v, scale=args.scale)
    out = [("command", "solve"), ("instance", system.name),
           ("y", " ".join(system.format_element(x)
                          for x in result.y.entries)),
           ("scaled", result.scaled), ("holds", result.holds)]
    if system.tangibles is not None:
        x = linalg.tangible_solve(A, v)
        out.append(("tangible-solution",
                    "none found" if x is None else
                    " ".join(system.format_element(e) for e in x.entries)))
    return (0 if result.holds else 1), out


def run_rank(args):
    system = _resolve(args.instance)
    A = _load_matrix(args.matrix, system)
    rep = linalg.rank_report(A)
    fmt = lambda r: "not computed" if r is None else r
    out = [("command", "rank"), ("instance", system.name),
           ("row-rank", fmt(rep.row_rank)),
           ("column-rank", fmt(rep.column_rank)),
           ("submatrix-rank", rep.submatrix_rank)]
    if rep.row_witness is not None:
        out.append(("row-witness",
                    ",".join(str(i + 1) for i in rep.row_witness)))
    if rep.column_witness is not None:
        out.append(("column-witness",
                    ",".join(str(j + 1) for j in rep.column_witness)))
    if rep.submatrix_witness is not None:
        R, C = rep.submatrix_witness
        out.append(("submatrix-witness",
                    ";".join((",".join(str(i + 1) for i in R),
                              ",".join(str(j + 1) for j in C)))))
    return 0, out


def run_witness_search(args):
    system = _resolve(args.instance)
    if system.tangibles is None:
        raise CliError(f"{system.name} has no enumerable tangible set")
    A = linalg.rank_gap_search(system, args.rows, args.cols)
    out = [("command", "witness-search"), ("instance", system.name),
           ("shape", f"{args.rows}x{args.cols}")]
    if A is None:
        out.append(("witness", "none"))
        return 0, out
    rep = linalg.rank_report(A)
    for i in range(A.rows):
        out.append((f"row.{i + 1}",
                    " ".join(system.format_element(x) for x in A.row(i))))
    out += [("row-rank", rep.row_rank),
            ("submatrix-rank", rep.submatrix_rank)]
    return 0, out


def run_cayley(args):
    system = _resolve(args.instance)
    A = _load_matrix(args.matrix, system)
    ghostly, image = linalg.cayley_hamilton_check(A)
    out = [("command", "cayley"), ("instance", system.name),
           ("ghost", ghostly)]
    for i in range(image.rows):
        out.append((f"row.{i + 1}",
                    " ".join(system.format_element(x)
                             for x in image.row(i))))
    return (0 if ghostly else 1), out


def run_poly(args):
    system = _resolve(args.instance)
    polys = [_load_poly(p, system) for p in args.files]
    sub = args.subcommand
    out = [("command", f"poly-{sub}"), ("instance", system.name)]
    if sub == "eval":
        if not args.at:
            raise CliError("poly eval needs --at tokens")
        point = _parse_tokens(system, args.at)
        value = polys[0].eval(point)
        out.append(("value", system.format_element(value)))
        return 0, out
    domain, exhaustive = _domain(system, args)
    out.append(("domain-exhaustive", exhaustive))
    if sub == "supp":
        supp = polysys.circ_supp(polys[0], domain)
        out.append(("support", " ".join(system.format_element(p)
                                        for p in supp)))
        return 0, out
    if sub == "roots":
        roots = polysys.preceq_roots(polys[0], domain)
        out.append(("roots", " ".join(system.format_element(p)
                                      for p in roots)))
        return 0, out
    if sub == "bend":
        if len(polys) != 2:
            raise CliError("poly bend needs two polynomial files")
        eq, point = polysys.bend_equivalent(polys[0], polys[1], domain)
        out.append(("equivalent", eq))
        if point is not None:
            out.append(("distinguishing-point",
                        system.format_element(point)))
        return (0 if eq else 1), out
    if sub == "ideal":
        ok, witness = polysys.tropical_ideal_check(polys, domain)
        out.append(("ideal", ok))
        if witness is not None:
            i, j, p = witness
            out.append(("violation",
                        f"f{i + 1},f{j + 1},{system.format_element(p)}"))
        return (0 if ok else 1), out
    raise CliError(f"unknown poly subcommand {sub}")


def run_trop(args):
    sub = args.subcommand
    out = [("command", f"trop-{sub}")]
    if sub == "val":
        series = tropicalize.parse_puiseux(_read(args.files[0]).strip())
        v = series.val()
        out.append(("value", "inf" if v is None else v))
        return 0, out
    if sub in ("trop", "strop"):
        P = tropicalize.parse_puiseux_poly(_read(args.files[0]))
        if sub == "trop":
            image = tropicalize.trop_poly(P, resolve)
        else:
            image = tropicalize.supertropicalize_poly(P, resolve)
        out.append(("polynomial", image.format()))
        return 0, out
    if sub == "matroid":
        rows = tropicalize.parse_puiseux_matrix(_read(args.files[0]))
        table = tropicalize.matroid_from_minors(rows, args.rank)
        ok, witness = tropicalize.valuated_matroid_check(table)
        out.append(("axioms", ok))
        if witness is not None:
            out.append(("violation", str(witness)))
        for labels in sorted(set(map(tuple, map(sorted, table.values)))):
            out.append((f"v.{','.join(map(str, labels))}",
                        table.value(labels)))
        return (0 if ok else 1), out
    raise CliError(f"unknown trop subcommand {sub}")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="systema",
        description="exact arithmetic over triples and systems")
    parser.add_argument("--format", choices=("human", "machine"),
                        default="human")
    parser.add_argument("--seed", type=int, default=0,
                        help="recorded in reports for reproducibility")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("classify", help="axiom audit and classification")
    p.add_argument("instance")
    p.set_defaults(runner=run_classify)

    for name, runner in (("det", run_det), ("adj", run_adj),
                         ("rank", run_rank), ("cayley", run_cayley)):
        p = subs.add_parser(name)
        p.add_argument("instance")
        p.add_argument("matrix")
        p.set_defaults(runner=runner)

    p = subs.add_parser("laplace")
    p.add_argument("instance")
    p.add_argument("matrix")
    p.add_argument("--rows", required=True,
                   help="comma list of 1-based row indices")
    p.set_defaults(runner=run_laplace)

    p = subs.add_parser("solve")
    p.add_argument("instance")
    p.add_argument("matrix")
    p.add_argument("vector")
    p.add_argument("--scale", choices=("auto", "always", "never"),
                   default="auto")
    p.set_defaults(runner=run_solve)

    p = subs.add_parser("witness-search")
    p.add_argument("instance")
    p.add_argument("rows", type=int)
    p.add_argument("cols", type=int)
    p.set_defaults(runner=run_witness_search)

    p = subs.add_parser("poly")
    p.add_argument("subcommand",
                   choices=("eval", "supp", "roots", "bend", "ideal"))
    p.add_argument("instance")
    p.add_argument("files", nargs="+")
    p.add_argument("--at", help="comma list of element tokens")
    p.add_argument("--domain", help="comma list of element tokens")
    p.set_defaults(runner=run_poly)

    p = subs.add_parser("trop")
    p.add_argument("subcommand", choices=("val", "trop", "strop", "matroid"))
    p.add_argument("files", nargs="+")
    p.add_argument("--rank", type=int, default=2)
    p.set_defaults(runner=run_trop)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, entries = args.runner(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except FormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except SystemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    entries = [("seed", args.seed)] + entries
    if args.format == "machine":
        sys.stdout.write(emit_report(entries))
    else:
        for key, value in entries:
            print(f"{key}: {value}")
    return code


if __name__ == "__main__":
    sys.exit(main())
