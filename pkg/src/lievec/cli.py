"""Command line interface.

Exit codes: 0 success, 2 parse error, 3 precondition violation,
4 internal or certificate failure. Reports go to stdout as JSON with a
fixed key order; diagnostics go to stderr.
"""

import argparse
import json
import sys

from ._rational import q
from .conjecture import lie_witness
from .errors import LievecError, ParseError, PreconditionError
from .grading import Dilation, enumerate_graded, membership, random_solvable
from .liealg import algebra_report, bracket_closure, derived_series, lower_central_series
from .nilrad import nilradical, nilradical_series
from .pipeline import normalize
from .textio import AlgebraFile, format_field, load_algebra_file
from .vfield import VarContext

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_INTERNAL = 0, 2, 3, 4


def dumps(obj):
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _ints(text):
    try:
        return [int(p) for p in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _names(text):
    return [p for p in text.replace(",", " ").split() if p]


def _rational(text):
    try:
        return q(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational p/q, got {text!r}") from None


def _closure(af, max_dim=None):
    return bracket_closure(af.generators, cap=max_dim, ctx=af.ctx)


def _series_json(rep):
    out = {
        "kind": rep.kind,
        "startIndex": rep.start_index,
        "dims": rep.dims,
        "dimsAtOrigin": rep.dims_at_origin,
        "reachesZero": rep.reaches_zero,
        "height": rep.height,
    }
    if rep.alt_dims is not None:
        out["altDims"] = rep.alt_dims
    out["terms"] = [[format_field(X) for X in I.fields()] for I in rep.chain]
    return out


def cmd_parse(args, out):
    af = load_algebra_file(args.file)
    out.write(af.to_text())


def cmd_analyze(args, out):
    L = _closure(load_algebra_file(args.file), args.max_dim)
    rep = algebra_report(L)
    rep["basis"] = [format_field(X) for X in L.basis]
    out.write(dumps(rep))


def cmd_series(args, out):
    L = _closure(load_algebra_file(args.file), args.max_dim)
    if args.kind == "derived":
        rep = derived_series(L)
    elif args.kind == "lcs":
        rep = lower_central_series(L)
    else:
        rep = nilradical_series(L)
    out.write(dumps(_series_json(rep)))


def cmd_nilradical(args, out):
    L = _closure(load_algebra_file(args.file), args.max_dim)
    for X in nilradical(L).fields():
        out.write(format_field(X) + "\n")


def _weights_for(af, text):
    if text is not None:
        return text
    if af.weights is None:
        raise argparse.ArgumentTypeError("no --weights given and the file declares none")
    return af.weights


def cmd_grade(args, out):
    af = load_algebra_file(args.file)
    L = _closure(af, args.max_dim)
    h = Dilation(af.ctx, _weights_for(af, args.weights))
    mode = {"nonpos": "nonPos", "strictneg": "strictNeg"}[args.mode]
    rep = membership(L, h, mode).to_json()
    rep["weights"] = h.as_dict()
    out.write(dumps(rep))


def cmd_enum(args, out):
    h = Dilation(VarContext(args.vars), args.weights)
    g = enumerate_graded(h, args.degree)
    out.write(
        dumps(
            {
                "weights": h.as_dict(),
                "degree": g.degree,
                "module": g.module,
                "moduleVariables": g.module_vars,
                "generators": [format_field(X) for X in g.fields],
            }
        )
    )


def cmd_normalize(args, out):
    L = _closure(load_algebra_file(args.file), args.max_dim)
    cert = normalize(L, jet_order=args.jet_order, path=args.path, strategy=args.strategy)
    out.write(dumps(cert.to_json()))
    return EXIT_OK if cert.certified else EXIT_INTERNAL


def cmd_witness(args, out):
    L = _closure(load_algebra_file(args.file), args.max_dim)
    cert = normalize(L, jet_order=args.jet_order, path=args.path, strategy=args.strategy)
    w = lie_witness(cert)
    if w.verdict == "failed" and args.strategy == "forms":
        alt = normalize(L, jet_order=args.jet_order, path=args.path, strategy="flows")
        if alt.certified:
            w2 = lie_witness(alt)
            if w2.verdict != "failed":
                cert, w = alt, w2
    rep = w.to_json()
    rep["weights"] = {nm: x for nm, x in zip(cert.new_context.names, cert.weights.weights)}
    rep["strategy"] = cert.strategy
    out.write(dumps(rep))
    return EXIT_INTERNAL if w.verdict == "failed" else EXIT_OK


def cmd_gen(args, out):
    ctx = VarContext(args.vars)
    h = Dilation(ctx, args.weights)
    L = random_solvable(
        h,
        args.seed,
        density=args.density,
        diagonal_density=args.diagonal_density,
        cap=args.max_dim,
    )
    af = AlgebraFile(ctx, L.basis, list(h.weights))
    out.write(f"# random solvable algebra, seed {args.seed}, dim {L.dim}\n")
    out.write(af.to_text())


def build_parser():
    p = argparse.ArgumentParser(prog="lievec", description="Exact analysis of Lie algebras of vector fields.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_file(name, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("file", help="algebra file")
        sp.add_argument("--max-dim", type=int, default=None, help="closure dimension cap (default 64 or LIEVEC_MAX_DIM)")
        return sp

    with_file("parse", "echo canonical forms").set_defaults(func=cmd_parse)
    with_file("analyze", "closure and structure report").set_defaults(func=cmd_analyze)
    sp = with_file("series", "derived, lower central or nilradical series")
    sp.add_argument("--kind", choices=["derived", "lcs", "nilradical"], default="derived")
    sp.set_defaults(func=cmd_series)
    with_file("nilradical", "basis of the nilradical").set_defaults(func=cmd_nilradical)
    sp = with_file("grade", "degree membership report")
    sp.add_argument("--weights", type=_ints, default=None)
    sp.add_argument("--mode", choices=["nonpos", "strictneg"], default="nonpos")
    sp.set_defaults(func=cmd_grade)

    sp = sub.add_parser("enum", help="monomial generators of a negative degree")
    sp.add_argument("--vars", type=_names, required=True)
    sp.add_argument("--weights", type=_ints, required=True)
    sp.add_argument("--degree", type=int, required=True)
    sp.set_defaults(func=cmd_enum)

    for name, func, help_text in (
        ("normalize", cmd_normalize, "derive weights and certify gradedness"),
        ("witness", cmd_witness, "exponential-generator witness for the coefficients"),
    ):
        sp = with_file(name, help_text)
        sp.add_argument("--jet-order", type=int, default=None)
        sp.add_argument("--path", choices=["auto", "nilpotent", "solvable"], default="auto")
        sp.add_argument("--strategy", choices=["forms", "flows"], default="forms")
        sp.set_defaults(func=func)

    sp = sub.add_parser("gen", help="random graded solvable algebra")
    sp.add_argument("--vars", type=_names, required=True)
    sp.add_argument("--weights", type=_ints, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--density", type=_rational, default=q(1, 2))
    sp.add_argument("--diagonal-density", type=_rational, default=q(1, 2))
    sp.add_argument("--max-dim", type=int, default=None)
    sp.set_defaults(func=cmd_gen)
    return p


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_PARSE
    try:
        code = args.func(args, out)
    except ParseError as exc:
        err.write(f"{getattr(args, 'file', '<input>')}:{exc}\n")
        return EXIT_PARSE
    except argparse.ArgumentTypeError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_PARSE
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_PARSE
    except PreconditionError as exc:
        err.write(f"precondition failed ({type(exc).__name__}): {exc}\n")
        return EXIT_PRECONDITION
    except ValueError as exc:
        err.write(f"precondition failed: {exc}\n")
        return EXIT_PRECONDITION
    except LievecError as exc:
        err.write(f"internal failure ({type(exc).__name__}): {exc}\n")
        return EXIT_INTERNAL
    return EXIT_OK if code is None else code


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
