"""Command line interface.

Subcommands: ``koszul`` (emit a Koszul complex problem file), ``star``
(run the transform and write the output), ``verify`` (re-check a written
output file), ``colon`` / ``saturate`` (run the oracles), ``iterate``
(run the round-by-round driver), ``info`` (print ranks and twists).

Exit codes: 0 success and all checks pass; 1 a verification check failed;
2 a precondition or validation failed; 3 I/O or parse error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from .complexes import koszul, validate_sop
from .errors import (
    IterationLimit,
    NotASop,
    ParseError,
    PreconditionFailed,
    StarTransError,
    ValidationError,
)
from .fields import field_from_spec
from .instances import random_instance
from .modules import GradedFreeModule, buchberger
from .poly import PolyRing, format_polynomial
from .problemfile import (
    ProblemFile,
    emit_problem,
    emit_star,
    parse_problem,
    problem_to_jsonable,
    star_from_problem,
)
from .transform import star_transform
from .verify import saturate as saturate_op
from .verify import star_iteration_driver, verify_star

EXIT_OK = 0
EXIT_CHECKS_FAILED = 1
EXIT_PRECONDITION = 2
EXIT_IO = 3


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="startrans",
        description="Exact transforms of acyclic complexes of graded free "
        "modules, with Groebner-basis verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, output=True):
        p.add_argument("--input", help="problem file (JSON)")
        if output:
            p.add_argument("--output", help="output file (JSON)")
        p.add_argument(
            "--field",
            help="override the coefficient field: rational | p:<prime>",
        )

    p = sub.add_parser("koszul", help="emit a Koszul-complex problem file")
    common(p)
    p.add_argument(
        "--generators",
        help="comma-separated polynomials to build the complex from "
        "(default: the file's sop)",
    )
    p.add_argument(
        "--seed", type=int, help="generate a random corpus instance instead"
    )

    p = sub.add_parser("star", help="run the transform and write the output")
    common(p)
    p.add_argument(
        "--verify",
        action="store_true",
        help="re-parse the written file and verify it again",
    )

    p = sub.add_parser("verify", help="re-check a written output file")
    common(p, output=False)

    p = sub.add_parser("colon", help="colon module oracle")
    common(p)
    p.add_argument("--module", help="comma-separated ideal generators")
    p.add_argument("--ideal", help="comma-separated colon ideal generators")

    p = sub.add_parser("saturate", help="iterated colon until stable")
    common(p)
    p.add_argument("--module", help="comma-separated ideal generators")
    p.add_argument("--ideal", help="comma-separated saturation ideal")
    p.add_argument("--max-iter", type=int, default=32)

    p = sub.add_parser("iterate", help="run the iteration driver")
    common(p)
    p.add_argument("--max-iter", type=int, default=2, help="number of rounds")

    p = sub.add_parser("info", help="print ranks and twists")
    common(p, output=False)
    return parser


def _load(args):
    if not args.input:
        raise ParseError("--input is required")
    pf = parse_problem(args.input)
    if args.field:
        pf = pf.with_field(field_from_spec(args.field))
    return pf


def _standalone_ring(args, texts):
    names = sorted(set(re.findall(r"[A-Za-z_][A-Za-z_0-9]*", " ".join(texts))))
    if not names:
        raise ParseError("no variables found in the given polynomials")
    field = field_from_spec(args.field or "rational")
    return PolyRing(field, tuple(names))


def _ideal_gb(ring, polys):
    ambient = GradedFreeModule(ring, 1, (0,))
    return buchberger(ambient, [ambient.vector((p,)) for p in polys])


def _print_generators(gb, output=None):
    gens = [format_polynomial(v.coords[0]) for v in gb.gb]
    text = ", ".join(gens) if gens else "0"
    print(text)
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            json.dump({"generators": gens}, fh, indent=1)
            fh.write("\n")
        print(f"wrote {output}")


def _cmd_koszul(args):
    if args.seed is not None:
        field = field_from_spec(args.field) if args.field else None
        name, comp, sop = random_instance(args.seed, field=field)
        ring = comp.ring
        pf = ProblemFile(
            ring,
            tuple(format_polynomial(g) for g in sop.gens),
            comp,
        )
        print(f"generated instance {name}")
    else:
        base = _load(args)
        sop = validate_sop(base.ring, base.sop_polys())
        if args.generators:
            gens = [base.ring.parse(t) for t in args.generators.split(",")]
            complex_sop = validate_sop(base.ring, gens)
        else:
            complex_sop = sop
        comp = koszul(complex_sop)
        pf = ProblemFile(base.ring, base.sop_texts, comp)
    if args.output:
        emit_problem(pf, args.output)
        print(f"wrote {args.output}")
    else:
        print(json.dumps(problem_to_jsonable(pf), indent=1))
    return EXIT_OK


def _cmd_star(args):
    pf = _load(args)
    sop = validate_sop(pf.ring, pf.sop_polys())
    result = star_transform(pf.complex, sop)
    for line in result.report.lines():
        print(line)
    if args.output:
        emit_star(result.star, result.report, args.output, pf, pf.complex)
        print(f"wrote {args.output}")
        if args.verify:
            reparsed = parse_problem(args.output)
            star = star_from_problem(reparsed)
            sop2 = validate_sop(reparsed.ring, reparsed.sop_polys())
            report2 = verify_star(reparsed.source_complex, sop2, star)
            print("round-trip verification:")
            for line in report2.lines():
                print(line)
            if not report2.overall:
                return EXIT_CHECKS_FAILED
    return EXIT_OK if result.report.overall else EXIT_CHECKS_FAILED


def _cmd_verify(args):
    pf = _load(args)
    if pf.source_complex is None:
        raise ValidationError(
            "file has no source_complex block; nothing to verify against"
        )
    star = star_from_problem(pf)
    sop = validate_sop(pf.ring, pf.sop_polys())
    report = verify_star(pf.source_complex, sop, star)
    for line in report.lines():
        print(line)
    return EXIT_OK if report.overall else EXIT_CHECKS_FAILED


def _colon_inputs(args):
    if args.module and args.ideal:
        texts = args.module.split(",") + args.ideal.split(",")
        ring = _standalone_ring(args, texts)
        module_gb = _ideal_gb(ring, [ring.parse(t) for t in args.module.split(",")])
        ideal = [ring.parse(t) for t in args.ideal.split(",")]
        return module_gb, ideal
    pf = _load(args)
    module_gb = pf.complex.image_gb(1)
    return module_gb, list(pf.sop_polys())


def _cmd_colon(args):
    from .modules import colon

    module_gb, ideal = _colon_inputs(args)
    result = colon(module_gb, ideal)
    _print_generators(result, args.output)
    return EXIT_OK


def _cmd_saturate(args):
    module_gb, ideal = _colon_inputs(args)
    result, updates = saturate_op(module_gb, ideal, args.max_iter)
    _print_generators(result, args.output)
    print(f"stable after {updates} update(s)")
    return EXIT_OK


def _cmd_iterate(args):
    pf = _load(args)
    sop = validate_sop(pf.ring, pf.sop_polys())
    driver = star_iteration_driver(pf.complex, sop, args.max_iter)
    ok = True
    for rnd in driver.rounds:
        report = rnd.result.report
        ok = ok and report.overall and rnd.matches
        ranks = [m.rank for m in rnd.result.star.complex.modules]
        print(
            f"round {rnd.index}: ranks {ranks}, oracle match "
            f"{'yes' if rnd.matches else 'NO'}, checks "
            f"{'pass' if report.overall else 'FAIL'}"
        )
        if args.output:
            path = f"{args.output}.round{rnd.index}.json"
            emit_star(
                rnd.result.star, report, path, pf, rnd.result.input_complex
            )
            print(f"  wrote {path}")
    print(f"stop: {driver.stop_reason}")
    return EXIT_OK if ok else EXIT_CHECKS_FAILED


def _cmd_info(args):
    pf = _load(args)
    comp = pf.complex
    print(f"field: {pf.ring.field.name}")
    vars_ = ", ".join(
        f"{n} (degree {w})" for n, w in zip(pf.ring.names, pf.ring.weights)
    )
    print(f"variables: {vars_}")
    if pf.ring.quotient:
        print(
            "quotient: "
            + ", ".join(format_polynomial(g) for g in pf.ring.quotient)
        )
    print(f"sop: {', '.join(pf.sop_texts)}")
    print(f"length: {comp.length} (effective {comp.effective_length()})")
    for p, m in enumerate(comp.modules):
        twists = ", ".join(str(-t) for t in m.twists)
        print(f"  F_{p}: rank {m.rank}, twists [{twists}]")
    if pf.labels is not None:
        for p, position in enumerate(pf.labels):
            kinds = {}
            for item in position:
                kinds[item[0]] = kinds.get(item[0], 0) + 1
            summary = ", ".join(f"{v} {k}" for k, v in sorted(kinds.items()))
            print(f"  labels at {p}: {summary or 'none'}")
    if pf.report is not None:
        print(f"report: {'pass' if pf.report.overall else 'FAIL'}")
    return EXIT_OK


_COMMANDS = {
    "koszul": _cmd_koszul,
    "star": _cmd_star,
    "verify": _cmd_verify,
    "colon": _cmd_colon,
    "saturate": _cmd_saturate,
    "iterate": _cmd_iterate,
    "info": _cmd_info,
}


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValidationError, PreconditionFailed, NotASop, IterationLimit) as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except StarTransError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECKS_FAILED


def console_main():
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
