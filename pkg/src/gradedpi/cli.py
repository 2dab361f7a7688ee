"""Command-line entry point: ``gradedpi <group> <command> [flags]``.

One JSON document goes to stdout (or ``--out``); diagnostics go to stderr.
Exit status is 0 when the overall verdict is pass, 1 when it is fail or
inconclusive, and 2 on malformed input, structural errors and exhausted
budgets.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from . import io as gio
from .algebra import corner_algebra, validate_algebra
from .errors import GradedPIError, InputError, UsageError
from .identities import (
    MultilinearPattern,
    codimension_table,
    identity_kernel,
    is_graded_identity,
    parse_polynomial,
    relatively_free_truncation,
    variety_contains,
)
from .morita import corner_variety_certificate, diagonal_idempotent, matrix_over, morita_ringed_morphism
from .nc import (
    FormsArena,
    commutator_filtration,
    derivation_decomposition,
    fedosov_commutator,
    fedosov_identity_report,
    fedosov_product,
    hochschild_low,
    kaehler_one_forms,
    odd_ideal_filtration,
    tangent_object,
)
from .report import VerificationReport, combine, dumps
from .sheaves import (
    VectorPresheaf,
    build_recovering_morphism,
    cech_h1,
    check_locally_ringed,
    check_presheaf,
    check_sheaf,
    constant_sheaf,
    hom_presheaf,
    pushforward,
    sheafify,
    stalk_at,
)
from .suites import SUITES, SuiteConfig, run_suite

TOOL = "gradedpi"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- input helpers ----------------------------------------------------------------

def _algebra(args, flag="algebra"):
    ref = getattr(args, flag, None)
    if ref is None and flag == "algebra":
        ref = args.input
    if ref is None:
        raise InputError(f"--{flag} (or --in) is required")
    return gio.algebra_ref(ref)


def _presheaf(args, flag="presheaf"):
    ref = getattr(args, flag, None)
    if ref is None and flag == "presheaf":
        ref = args.input
    if ref is None:
        raise InputError(f"--{flag} (or --in) is required")
    data = gio.load_json(ref)
    if args.topology is not None and flag == "presheaf":
        data = {**data, "topology": gio.topology_ref(args.topology)}
    return gio.presheaf_from_dict(data, Path(ref).parent)


def _degree(args, default=None) -> int:
    d = args.degree if args.degree is not None else default
    if d is None:
        raise InputError("--degree is required")
    if d < 0:
        raise InputError("--degree must be nonnegative")
    return d


def _int_list(text: str) -> list:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise InputError(f"expected comma separated integers, got {text!r}") from None


def _variables(text: str, group):
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        vs = parse_polynomial(tok, group).variables()
        if len(vs) != 1:
            raise InputError(f"{tok!r} is not a single variable")
        out.append(vs[0])
    return out


def _info(check, invariants, truncation=None, notes=()) -> VerificationReport:
    return VerificationReport(check, True, None, invariants, truncation, list(notes))


# -- algebra ----------------------------------------------------------------------

def cmd_algebra_validate(args):
    return [validate_algebra(_algebra(args))]


def cmd_algebra_build(args):
    A = _algebra(args)
    rep = validate_algebra(A)
    rep.invariants["algebra"] = A.to_dict()
    return [rep]


# -- identities -------------------------------------------------------------------

def cmd_identities_check(args):
    A = _algebra(args)
    if not args.poly:
        raise InputError("--poly is required")
    f = parse_polynomial(args.poly, A.group)
    return [is_graded_identity(f, A, budget=args.budget)]


def cmd_identities_kernel(args):
    A = _algebra(args)
    n = _degree(args)
    if args.degrees:
        pattern = MultilinearPattern.of([A.group.element(g) for g in _int_list(args.degrees)])
        if pattern.n != n:
            raise InputError(f"--degrees lists {pattern.n} degrees but --degree is {n}")
        source, notes = A, []
    else:
        source = A.forget_grading()
        pattern = MultilinearPattern.trivial(n)
        notes = ["ungraded pattern: the grading of the algebra is forgotten"]
    K = identity_kernel(pattern, source, budget=args.budget)
    return [_info("identity_kernel", K.to_dict(), n, notes)]


def cmd_identities_codim(args):
    A = _algebra(args)
    n = _degree(args)
    table = codimension_table(A, n, budget=args.budget)
    return [_info("codimension_table", {"algebra": A.name, "codimensions": [c for _, c in table]}, n)]


def cmd_identities_variety(args):
    A = _algebra(args)
    B = _algebra(args, "other")
    rep = variety_contains(A, B, _degree(args), budget=args.budget)
    rep.notes.append(f"verdict true means {B.name or 'the other algebra'} lies in the variety of {A.name or 'the algebra'}")
    return [rep]


def cmd_identities_relfree(args):
    A = _algebra(args)
    if not args.vars:
        raise InputError("--vars is required")
    d = _degree(args)
    R = relatively_free_truncation(A, _variables(args.vars, A.group), d, budget=args.budget)
    rep = validate_algebra(R.as_algebra())
    rep.check = "relatively_free_truncation"
    rep.invariants.update(R.to_dict())
    rep.truncation_degree = d
    return [rep]


# -- sheaves ----------------------------------------------------------------------

def cmd_sheaf_check(args):
    F = _presheaf(args)
    return [check_presheaf(F), check_sheaf(F)]


def cmd_sheaf_stalk(args):
    F = _presheaf(args)
    T = F.topology
    points = [args.point] if args.point else T.points
    reports = []
    for x in points:
        st = stalk_at(F, x)
        reports.append(_info("stalk", {**st.to_dict(), "algebra": st.algebra.to_dict(),
                                       "cocone": st.check_cocone()}))
    return reports


def cmd_sheaf_sheafify(args):
    F = _presheaf(args)
    Sff, eta = sheafify(F)
    rep = check_sheaf(Sff)
    T = F.topology
    rep.check = "sheafify"
    rep.invariants.update({
        "dims": {T.label(U): Sff(U).dim for U in T.opens},
        "input_dims": {T.label(U): F(U).dim for U in T.opens},
        "eta_is_isomorphism": eta.is_isomorphism().verdict,
    })
    return [rep]


def cmd_sheaf_pushforward(args):
    F = _presheaf(args)
    if not args.map or args.target_space is None:
        raise InputError("pushforward needs --map and --target-space")
    Y = gio.topology_ref(args.target_space)
    f = {}
    for pair in args.map.split(","):
        src, sep, dst = pair.partition("=")
        if not sep:
            raise InputError(f"map entries look like a=p, got {pair!r}")
        f[src.strip()] = dst.strip()
    missing = [x for x in F.topology.points if x not in f]
    if missing:
        raise InputError(f"--map does not send point {missing[0]!r} anywhere")
    P = pushforward(f, F.topology, Y, F)
    rep = check_presheaf(P)
    rep.check = "pushforward"
    rep.invariants["dims"] = {Y.label(V): P(V).dim for V in Y.opens}
    rep.invariants["is_sheaf"] = check_sheaf(P).verdict
    return [rep]


def cmd_sheaf_locally_ringed(args):
    return [check_locally_ringed(_presheaf(args))]


def cmd_sheaf_cech(args):
    F = _presheaf(args)
    T = F.topology
    inv = {"h1": cech_h1(T, VectorPresheaf.of_algebras(F)), "cover": [T.label(U) for U in T.minimal_cover()]}
    if args.target is not None:
        G = _presheaf(args, "target")
        inv["h1_hom"] = cech_h1(T, hom_presheaf(F, G))
    return [_info("cech_h1", inv)]


def cmd_sheaf_recover(args):
    F = _presheaf(args)
    if args.target is None:
        raise InputError("--target is required")
    G = _presheaf(args, "target")
    _, rep = build_recovering_morphism(F, G, _degree(args))
    return [rep]


# -- calculus ---------------------------------------------------------------------

def cmd_calculus_omega1(args):
    A = _algebra(args)
    om = kaehler_one_forms(A)
    rep = om.bimodule.check()
    rep.check = "kaehler_one_forms"
    rep.invariants.update({"algebra_dim": A.dim, "omega1_dim": om.dim,
                           "expected_dim": A.dim * A.dim - A.dim if A.dim else 0})
    if om.dim != rep.invariants["expected_dim"]:
        rep.verdict = False
        rep.witness = {"omega1_dim": om.dim}
    return [rep]


def cmd_calculus_der(args):
    return [derivation_decomposition(_algebra(args))]


def cmd_calculus_hochschild(args):
    H = hochschild_low(_algebra(args))
    rep = H.certificate
    rep.invariants.update(H.to_dict())
    rep.invariants.pop("certificate", None)
    return [rep]


def cmd_calculus_tangent(args):
    t = tangent_object(_algebra(args))
    rep = t.certificate
    rep.invariants.update({"der_dim": t.derivations.dim, "hom_dim": len(t.bimodule_maps)})
    return [rep]


def cmd_calculus_fedosov(args):
    seed = args.seed if args.seed is not None else 0
    reports = [fedosov_identity_report(args.n, args.p, args.samples, seed)]
    if args.alpha or args.beta:
        if not (args.alpha and args.beta):
            raise InputError("--alpha and --beta go together")
        arena = FormsArena(args.n, args.p)
        a, b = arena.parse(args.alpha), arena.parse(args.beta)
        reports.append(_info("fedosov_product", {
            "alpha": str(a), "beta": str(b),
            "product": str(fedosov_product(a, b)), "commutator": str(fedosov_commutator(a, b)),
        }))
    return reports


def cmd_calculus_filtration(args):
    A = _algebra(args)
    if args.kind == "odd":
        gr = odd_ideal_filtration(A)
        rep = gr.report
        rep.invariants["gr_dim"] = gr.algebra.dim
        return [rep]
    cf = commutator_filtration(A, k_max=args.k_max, mode=args.mode)
    return [cf.report]


# -- Morita -----------------------------------------------------------------------

def cmd_morita_matrix(args):
    B = _algebra(args)
    M = matrix_over(B, args.n)
    rep = validate_algebra(M)
    rep.invariants.update({"n": args.n, "dim": M.dim, "labels": list(M.labels)})
    return [rep]


def cmd_morita_corner(args):
    B = _algebra(args)
    if not args.e:
        raise InputError("--e (diagonal flags such as 1,0) is required")
    M = matrix_over(B, args.n)
    C = corner_algebra(M, diagonal_idempotent(B, args.n, _int_list(args.e)))
    rep = validate_algebra(C)
    rep.invariants.update({"corner": C.to_dict(), "dim": C.dim})
    return [rep]


def _context(args):
    if args.input is None:
        raise InputError("--in (Morita context file) is required")
    return gio.morita_from_dict(gio.load_json(args.input), Path(args.input).parent)


def cmd_morita_certify(args):
    return [corner_variety_certificate(_context(args), _degree(args), budget=args.budget)]


def cmd_morita_morphism(args):
    ctx = _context(args)
    if args.topology is None:
        raise InputError("--topology is required")
    X = gio.topology_ref(args.topology)
    F = _presheaf(args) if args.presheaf else constant_sheaf(ctx.A, X)
    G = _presheaf(args, "target") if args.target else constant_sheaf(ctx.Mn, X)
    _, rep = morita_ringed_morphism(X, F, G, ctx, _degree(args), budget=args.budget)
    return [rep]


# -- suites -----------------------------------------------------------------------

def cmd_suite(args):
    if args.name not in SUITES:
        raise InputError(f"unknown suite {args.name!r}; known: {', '.join(sorted(SUITES))}")
    return run_suite(args.name, SuiteConfig(seed=args.seed or 0, budget=args.budget))


COMMANDS = {
    "algebra": {"validate": cmd_algebra_validate, "build": cmd_algebra_build},
    "identities": {
        "check": cmd_identities_check, "kernel": cmd_identities_kernel, "codim": cmd_identities_codim,
        "variety": cmd_identities_variety, "relfree": cmd_identities_relfree,
    },
    "sheaf": {
        "check": cmd_sheaf_check, "stalk": cmd_sheaf_stalk, "sheafify": cmd_sheaf_sheafify,
        "pushforward": cmd_sheaf_pushforward, "locally-ringed": cmd_sheaf_locally_ringed,
        "cech": cmd_sheaf_cech, "recover": cmd_sheaf_recover,
    },
    "calculus": {
        "omega1": cmd_calculus_omega1, "der": cmd_calculus_der, "hochschild": cmd_calculus_hochschild,
        "tangent": cmd_calculus_tangent, "fedosov": cmd_calculus_fedosov, "filtration": cmd_calculus_filtration,
    },
    "morita": {
        "matrix": cmd_morita_matrix, "corner": cmd_morita_corner,
        "certify": cmd_morita_certify, "morphism": cmd_morita_morphism,
    },
}


def _common(p: argparse.ArgumentParser):
    p.add_argument("--in", dest="input", help="input description file")
    p.add_argument("--algebra", help="algebra file or builder name such as M:2, E:4, UT:3")
    p.add_argument("--degree", type=int, help="truncation degree")
    p.add_argument("--budget", type=int, help="operation budget for identity computations")
    p.add_argument("--seed", type=int, help="sampling seed")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--other", help="second algebra (identities variety)")
    p.add_argument("--poly", help="polynomial, e.g. '[x1@0,x2@1]'")
    p.add_argument("--degrees", help="pattern degrees, e.g. 0,1,1")
    p.add_argument("--vars", help="variables, e.g. x1,x2@1")
    p.add_argument("--topology", help="topology file or name (sierpinski, pseudocircle, discrete:2)")
    p.add_argument("--presheaf", help="presheaf file")
    p.add_argument("--target", help="second presheaf file")
    p.add_argument("--target-space", help="target topology for pushforward")
    p.add_argument("--map", help="point map for pushforward, e.g. a=p,b=p")
    p.add_argument("--point", help="point name for stalk")
    p.add_argument("--n", type=int, default=2, help="matrix size or number of form variables")
    p.add_argument("--p", type=int, default=3, help="polynomial degree cap of the forms arena")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--alpha", help="even form for a single Fedosov product")
    p.add_argument("--beta", help="second form")
    p.add_argument("--e", help="diagonal idempotent flags, e.g. 1,0")
    p.add_argument("--kind", choices=["odd", "commutator"], default="commutator")
    p.add_argument("--mode", choices=["ideal_power", "lie_weight"], default="ideal_power")
    p.add_argument("--k-max", type=int, default=6)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog=TOOL, description="Finite-dimensional verification of graded PI geometry.")
    parser.add_argument("--version", action="version", version=f"{TOOL} {__version__}")
    groups = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)
    for group, commands in COMMANDS.items():
        gp = groups.add_parser(group)
        sub = gp.add_subparsers(dest="command", required=True, parser_class=_Parser)
        for name in commands:
            _common(sub.add_parser(name))
    sp = groups.add_parser("suite")
    sp.add_argument("name")
    _common(sp)
    return parser


def _config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if v is not None}


def _document(config, reports, verdict, error=None) -> dict:
    doc = {"tool": TOOL, "version": __version__, "config": config,
           "reports": [r.to_dict() for r in reports], "verdict": verdict}
    if error is not None:
        doc["error"] = error
    return doc


def _emit(doc, out):
    text = dumps(doc) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def exit_status(doc: dict) -> int:
    if "error" in doc:
        return 2
    return 0 if doc["verdict"] is True else 1


def run(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    out = None
    config: dict = {"argv": argv}
    try:
        args = build_parser().parse_args(argv)
        out = args.out
        config = _config(args)
        if args.group == "suite":
            reports = cmd_suite(args)
        else:
            reports = COMMANDS[args.group][args.command](args)
        doc = _document(config, reports, combine(r.verdict for r in reports))
    except GradedPIError as exc:
        sys.stderr.write(f"{TOOL}: {exc.code}: {exc}\n")
        doc = _document(config, [], "error", {"code": exc.code, "message": str(exc)})
    except (ValueError, KeyError, TypeError) as exc:
        sys.stderr.write(f"{TOOL}: E_INPUT: {exc}\n")
        doc = _document(config, [], "error", {"code": "E_INPUT", "message": str(exc)})
    _emit(doc, out)
    return exit_status(doc)


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
