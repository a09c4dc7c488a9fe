"""Command-line front end: ``frobdesc <command> <action> [flags] < doc.json``.

Input documents are read from stdin (or ``--input FILE``); results are printed
as one JSON document.  Exit codes: 0 success, 1 domain error (payload printed
as an ``error`` document), 2 malformed input or usage.
"""
from __future__ import annotations

import argparse
import os
import sys
from typing import Any, Callable

from . import serialize
from .checks import COVERS, run_all
from .cocycle import LaurentUnit, coboundary, mu_power_demo, picard_cokernel, unit_class
from .descent import (EquivariantModule, GradedIdealTrunc, check_equivariant, descend_module,
                      descended_hom_space, element_descent, graded_ideal_descent, hom_space)
from .errors import CapacityExceeded, FrobeniusDescentError
from .field import DEFAULT_DEGREE_CAP, Field, FieldElement, embedding, extend_field
from .linalg import MatrixF
from .moore import is_fq_independent, moore_identity_check, moore_identity_sampled, moore_matrix
from .poly import PolynomialF
from .semilinear import (DualMatrix, SemilinearEndo, beta_surjectivity_report,
                         descend_vector_space, fixed_space, lang_solve, splitting_degree)
from .serialize import MalformedDocument

CAP_ENV = "FROBDESC_DEGREE_CAP"


class UsageError(Exception):
    pass


def _expect(value: Any, *types) -> Any:
    if not isinstance(value, types):
        names = "/".join(t.__name__ for t in types)
        raise UsageError(f"expected a {names} document, got {type(value).__name__}")
    return value


def _vector(value: Any) -> list[FieldElement]:
    if not (isinstance(value, list) and value and all(isinstance(x, FieldElement) for x in value)):
        raise UsageError("expected a vector document")
    return value


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError("missing flag(s): " + ", ".join("--" + n.replace("_", "-") for n in missing))


# -- command handlers ---------------------------------------------------------------

def cmd_field(args, doc):
    if args.action == "construct":
        _need(args, "q")
        return Field.of(args.q, args.m or 1, args.degree_cap)
    if args.action == "extend":
        _need(args, "e")
        return extend_field(_expect(doc, Field), args.e, args.degree_cap)[0]
    # embed: [source, target] fields, or an element pushed up by --e
    if isinstance(doc, FieldElement):
        _need(args, "e")
        _, emb = extend_field(doc.field, args.e, args.degree_cap)
        return emb(doc)
    if isinstance(doc, list) and len(doc) == 2 and all(isinstance(f, Field) for f in doc):
        try:
            return embedding(doc[0], doc[1])
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    raise UsageError("field embed needs [source, target] fields or an element with --e")


def cmd_moore(args, doc):
    if args.action == "matrix":
        return moore_matrix(_vector(doc))
    if args.action == "independent":
        return {"independent": is_fq_independent(_vector(doc))}
    _need(args, "q", "r")
    try:
        return {"mode": "symbolic", "omega": moore_identity_check(args.q, args.r)}
    except CapacityExceeded:
        import random
        omega = moore_identity_sampled(args.q, args.r, rng=random.Random(args.seed))
        return {"mode": "sampled", "omega": omega}


def cmd_fixed(args, doc):
    sigma = _expect(doc, SemilinearEndo)
    if args.action == "fixed_space":
        fs = fixed_space(sigma)
        return {"dim": fs.dim, "basis": fs.basis}
    if args.action == "splitting-degree":
        return {"e": splitting_degree(sigma, args.degree_cap)}
    d = descend_vector_space(sigma, args.degree_cap)
    return {"dim": d.dim, "e": d.e, "basis": d.basis, "certificate": d.certificate}


def cmd_lang(args, doc):
    if args.action == "solve":
        sol = lang_solve(_expect(doc, MatrixF, DualMatrix), args.degree_cap)
        return {"e": sol.e, "G": sol.G}
    _need(args, "q")
    if args.ring == "mu_power":
        return _mu_doc(mu_power_demo(args.q, args.m or 1))
    r = beta_surjectivity_report(args.q, args.m or 1, args.n or 1, args.ring, args.degree_cap)
    return {"q": r.q, "m": r.m, "n": r.n, "ring": r.ring, "targets": r.targets, "hit": r.hit,
            "all_hit": r.all_hit, "e_distribution": {str(k): v for k, v in sorted(r.e_distribution.items())}}


def _module_pair(doc):
    if isinstance(doc, list) and len(doc) == 2:
        return _expect(doc[0], EquivariantModule), _expect(doc[1], EquivariantModule)
    raise UsageError("module hom needs a list [M, N] of module documents")


def cmd_module(args, doc):
    if args.action == "check":
        rep = check_equivariant(_expect(doc, EquivariantModule))
        return {"ok": rep.ok, "relation": rep.relation, "index": rep.index}
    if args.action == "descend":
        D = descend_module(_expect(doc, EquivariantModule), args.degree_cap)
        Fq = D.algebra.base
        return {"dim": D.dim, "e": D.e, "field": Fq, "action": list(D.action),
                "certificate": D.certificate}
    M, N = _module_pair(doc)
    hs = hom_space(M, N, args.mode, degree_cap=args.degree_cap)
    out = {"mode": args.mode, "dim": hs.dim, "over": hs.over, "basis": list(hs.basis)}
    if args.mode == "equivariant":
        D1, D2 = descend_module(M, args.degree_cap), descend_module(N, args.degree_cap)
        out["descended_dim"] = descended_hom_space(D1, D2).dim
    return out


def cmd_ideal(args, doc):
    if args.action == "descend-element":
        return element_descent(_expect(doc, PolynomialF))
    if isinstance(doc, list) and doc and all(isinstance(f, PolynomialF) for f in doc):
        doc = GradedIdealTrunc.generated_by(doc[0].field, doc[0].nvars, doc, args.trunc)
    return graded_ideal_descent(_expect(doc, GradedIdealTrunc))


def _mu_doc(r):
    return {"q": r.q, "m": r.m, "mu": r.mu, "image": r.image, "surjective": r.surjective}


def cmd_picard(args, doc):
    if args.action == "class":
        u = _expect(doc, LaurentUnit)
        return {"class": unit_class(u), "coboundary": coboundary(u)}
    _need(args, "q")
    if args.action == "mu-demo":
        return _mu_doc(mu_power_demo(args.q, args.m or 1))
    r = picard_cokernel(args.q, args.m or 1)
    return {"q": r.q, "m": r.m, "torsion_order": r.torsion_order, "free_rank": r.free_rank,
            "representatives": r.representatives, "free_generator": r.free_generator,
            "generator_is_coboundary": r.generator_is_coboundary}


def selftest_report(seed: int) -> tuple[str, bool]:
    results = run_all(seed)
    lines = [f"selftest seed={seed}"]
    for r in results:
        lines.append(r.line())
        lines.append(f"      covers: {', '.join(COVERS[r.number])}")
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} criteria passed")
    return "\n".join(lines) + "\n", passed == len(results)


COMMANDS: dict[str, tuple[list[str], Callable]] = {
    # name: (actions, handler)
    "field": (["construct", "extend", "embed"], cmd_field),
    "moore": (["matrix", "det-identity", "independent"], cmd_moore),
    "fixed": (["fixed_space", "splitting-degree", "descend"], cmd_fixed),
    "lang": (["solve", "report"], cmd_lang),
    "module": (["check", "descend", "hom"], cmd_module),
    "ideal": (["descend-element", "descend-graded"], cmd_ideal),
    "picard": (["cokernel", "class", "mu-demo"], cmd_picard),
}
NO_INPUT = {("field", "construct"), ("moore", "det-identity"), ("lang", "report"),
            ("picard", "cokernel"), ("picard", "mu-demo")}
ALIASES = {"fixed-space": "fixed_space", "splitting_degree": "splitting-degree",
           "det_identity": "det-identity", "descend_element": "descend-element",
           "descend_graded": "descend-graded", "mu_demo": "mu-demo"}


def _default_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    if raw is None:
        return DEFAULT_DEGREE_CAP
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{CAP_ENV} must be an integer") from None


def build_parser(default_cap: int) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--degree-cap", type=int, default=default_cap)
    common.add_argument("--trunc", type=int, default=4, help="truncation degree D")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--input", help="read the document from a file instead of stdin")
    for flag in ("q", "m", "e", "r", "n"):
        common.add_argument(f"--{flag}", type=int)
    common.add_argument("--ring", choices=["field", "dual_numbers", "mu_power"], default="field")
    common.add_argument("--mode", choices=["linear", "equivariant"], default="equivariant")

    parser = argparse.ArgumentParser(prog="frobdesc",
                                     description="Frobenius descent over finite fields.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (actions, _) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common])
        p.add_argument("action", choices=actions + sorted(k for k, v in ALIASES.items() if v in actions))
    sub.add_parser("selftest", parents=[common])
    return parser


def _read_doc(args) -> Any:
    text = open(args.input).read() if args.input else sys.stdin.read()
    return serialize.loads(text)


def main(argv: list[str] | None = None) -> int:
    try:
        cap = _default_cap()
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    parser = build_parser(cap)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "selftest":
        report, ok = selftest_report(args.seed)
        sys.stdout.write(report)
        return 0 if ok else 1
    args.action = ALIASES.get(args.action, args.action)
    _, handler = COMMANDS[args.command]
    saved_cap, serialize.degree_cap = serialize.degree_cap, args.degree_cap
    try:
        doc = None if (args.command, args.action) in NO_INPUT else _read_doc(args)
        result = handler(args, doc)
    except (MalformedDocument, UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FrobeniusDescentError as exc:
        print(serialize.dumps({"type": "error", "error": type(exc).__name__,
                               "message": str(exc), "payload": exc.payload}))
        return 1
    except ValueError as exc:
        # invariant violations in otherwise well-formed input, e.g. q not a prime power
        print(f"error: {exc}", file=sys.stderr)
        return 2
    finally:
        serialize.degree_cap = saved_cap
    print(serialize.dumps(result))
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
