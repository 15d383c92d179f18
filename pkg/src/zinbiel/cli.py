"""Command-line interface.

Exit codes: 0 success or checker pass, 1 checker failure (the report lists
the violations), 2 input error.  Reports and emitted structures are
sorted-key JSON, so identical inputs and seeds give identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from .algebra import (Algebra, AlgebraMorphism, Bimodule, check_bimodule, check_morphism,
                      check_zinbiel, regular_bimodule, truncated_shuffle, zero_bimodule)
from .cohomology import Cochain, DegreeError, cohomology_dim, random_cocycle, require_valid
from .crossed import check_crossed_module, strict_from_crossed
from .dendriform import (check_ainf, check_cinf, check_rota_baxter, dendrify, symmetrize_zinf,
                         totalize, zinf_from_rb)
from .extension import ExtensionError, choose_sections, extension_from_crossed, same_class, theta
from .report import CheckReport, DimensionError, PreconditionError
from .twovect import functor_S, functor_T
from .zinf import check_zinf, check_zinf_morphism, skeletal_from_cocycle


class InputError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _check_result(command: str, report: CheckReport, **extra) -> tuple[int, dict]:
    data = {"command": command, "status": "pass" if report.passed else "fail",
            "report": report.to_json()}
    data.update(extra)
    return (0 if report.passed else 1), data


def _bimodule_arg(arg: str, a: Algebra) -> Bimodule:
    if arg == "regular":
        return regular_bimodule(a)
    if arg == "zero":
        return zero_bimodule(a)
    return io.load(arg, ("bimodule",))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_check(args) -> tuple[int, dict | str]:
    what = args.what
    files = args.files
    need = {"zinbiel": 1, "bimodule": 2, "zinf": 1, "morphism": 3, "crossed": 1,
            "ainf": 1, "cinf": 1, "rb": 2}[what]
    if len(files) != need:
        raise InputError(f"check {what} takes {need} file argument(s), got {len(files)}")
    if what == "zinbiel":
        return _check_result("check zinbiel", check_zinbiel(io.load(files[0], ("algebra",))))
    if what == "bimodule":
        a = io.load(files[0], ("algebra",))
        v = _bimodule_arg(files[1], a)
        return _check_result("check bimodule", check_bimodule(a, v))
    if what == "zinf":
        L = io.load(files[0], ("zinf",))
        return _check_result("check zinf", check_zinf(L),
                             properties={"skeletal": L.is_skeletal(), "strict": L.is_strict()})
    if what == "morphism":
        f = io.load(files[0], ("zinf-morphism", "algebra-morphism"))
        if isinstance(f, AlgebraMorphism):
            a, b = io.load(files[1], ("algebra",)), io.load(files[2], ("algebra",))
            return _check_result("check morphism", check_morphism(f, a, b))
        L, Lp = io.load(files[1], ("zinf",)), io.load(files[2], ("zinf",))
        return _check_result("check morphism", check_zinf_morphism(f, L, Lp))
    if what == "crossed":
        return _check_result("check crossed", check_crossed_module(io.load(files[0], ("crossed", "extension"))))
    if what == "ainf":
        return _check_result("check ainf", check_ainf(io.load(files[0], ("ainf",))))
    if what == "cinf":
        return _check_result("check cinf", check_cinf(io.load(files[0], ("ainf",))))
    R = io.load(files[0], ("rb",))
    A = io.load(files[1], ("ainf",))
    return _check_result("check rb", check_rota_baxter(R, A))


def cmd_cohomology(args) -> tuple[int, dict]:
    a = io.load(args.algebra, ("algebra",))
    v = _bimodule_arg(args.bimodule, a)
    res = cohomology_dim(a, v, args.degree)
    return 0, {"command": "cohomology", "status": "pass", "degree": res.degree,
               "cocycles": res.cocycles, "coboundaries": res.coboundaries, "dim": res.dim,
               "algebra_dim": a.dim, "module_dim": v.dim}


def cmd_construct(args) -> tuple[int, str]:
    what, rest = args.what, args.args
    if what == "shuffle":
        if len(rest) != 1 or not rest[0].isdigit() or int(rest[0]) < 1:
            raise InputError("construct shuffle takes a positive integer N")
        return 0, io.dump_object(truncated_shuffle(int(rest[0])))
    if what == "regular-bimodule":
        if len(rest) != 1:
            raise InputError("construct regular-bimodule takes ALG")
        return 0, io.dump_object(regular_bimodule(io.load(rest[0], ("algebra",))))
    if what == "strict":
        if len(rest) != 1:
            raise InputError("construct strict takes CROSSED")
        return 0, io.dump_object(strict_from_crossed(io.load(rest[0], ("crossed", "extension"))))
    if what == "skeletal":
        if len(rest) != 3:
            raise InputError("construct skeletal takes ALG BIMOD COCHAIN")
        a = io.load(rest[0], ("algebra",))
        v = _bimodule_arg(rest[1], a)
        theta_c = io.load(rest[2], ("cochain",))
        return 0, io.dump_object(skeletal_from_cocycle(a, v, theta_c))
    # random-cocycle
    if len(rest) != 2:
        raise InputError("construct random-cocycle takes ALG BIMOD")
    if args.seed is None:
        raise InputError("construct random-cocycle needs --seed")
    a = io.load(rest[0], ("algebra",))
    v = _bimodule_arg(rest[1], a)
    require_valid(a, v)
    return 0, io.dump_object(random_cocycle(a, v, args.degree, args.seed), seed=args.seed)


def cmd_convert(args) -> tuple[int, str]:
    what, rest = args.what, args.args
    need = 2 if what == "rb-zinf" else 1
    if len(rest) != need:
        raise InputError(f"convert {what} takes {need} file argument(s)")
    if what == "symmetrize":
        return 0, io.dump_object(symmetrize_zinf(io.load(rest[0], ("zinf",))))
    if what == "dendrify":
        return 0, io.dump_object(dendrify(io.load(rest[0], ("zinf",))))
    if what == "totalize":
        return 0, io.dump_object(totalize(io.load(rest[0], ("dend",))))
    if what == "rb-zinf":
        return 0, io.dump_object(zinf_from_rb(io.load(rest[0], ("ainf",)), io.load(rest[1], ("rb",))))
    if what == "T":
        return 0, io.dump_object(functor_T(io.load(rest[0], ("zinf",))))
    return 0, io.dump_object(functor_S(io.load(rest[0], ("zinbiel2",))))


def cmd_xi(args) -> tuple[int, dict]:
    X = io.load(args.extension, ("extension", "crossed"))
    E = extension_from_crossed(X)
    sp = choose_sections(E, args.sections)
    rep = theta(E, sp)
    h3 = cohomology_dim(E.quotient, E.module, 3)
    return 0, {
        "command": "xi", "status": "pass", "sections": args.sections,
        "dims": E.dims,
        "context": {"algebra": io.emit_data(io.from_object(E.quotient)),
                    "bimodule": io.emit_data(io.from_object(E.module))},
        "representative": io.emit_data(io.from_object(rep)),
        "cohomology": {"degree": 3, "cocycles": h3.cocycles, "coboundaries": h3.coboundaries,
                       "dim": h3.dim},
    }


def _load_class_report(path: str) -> tuple[dict, Cochain]:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise io.FormatError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict) or "context" not in data or "representative" not in data:
        raise io.FormatError(f"{path}: expected an xi report with context and representative")
    rep = io.to_object(io.parse_data(data["representative"]))
    if not isinstance(rep, Cochain):
        raise io.FormatError(f"{path}: representative is not a cochain")
    return data["context"], rep


def cmd_same_class(args) -> tuple[int, dict]:
    ctx1, t1 = _load_class_report(args.first)
    ctx2, t2 = _load_class_report(args.second)
    if ctx1 != ctx2:
        raise InputError("context mismatch: the two representatives live on different (algebra, bimodule)")
    a = io.to_object(io.parse_data(ctx1["algebra"]))
    v = io.to_object(io.parse_data(ctx1["bimodule"]))
    same = same_class(t1, t2, a, v)
    return (0 if same else 1), {"command": "same-class", "same_class": same,
                                "status": "pass" if same else "fail"}


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the output here instead of standard output")

    p = argparse.ArgumentParser(prog="zinbiel", description="Exact checks and constructions for "
                                "Zinbiel algebras and their 2-term homotopy versions.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="run a structure checker")
    c.add_argument("what", choices=["zinbiel", "bimodule", "zinf", "morphism", "crossed",
                                    "ainf", "cinf", "rb"])
    c.add_argument("files", nargs="+",
                   help="zinbiel ALG | bimodule ALG BIMOD | zinf L | morphism F SRC TGT | "
                        "crossed X | ainf A | cinf A | rb R A")
    c.set_defaults(func=cmd_check)

    h = sub.add_parser("cohomology", parents=[common], help="dimensions of Z, B and H")
    h.add_argument("--degree", type=int, choices=[2, 3], required=True)
    h.add_argument("algebra")
    h.add_argument("bimodule", help="bimodule file, 'regular' or 'zero'")
    h.set_defaults(func=cmd_cohomology)

    k = sub.add_parser("construct", parents=[common], help="build a structure file")
    k.add_argument("what", choices=["skeletal", "strict", "regular-bimodule", "shuffle",
                                    "random-cocycle"])
    k.add_argument("args", nargs="*")
    k.add_argument("--seed", type=int)
    k.add_argument("--degree", type=int, choices=[2, 3], default=3)
    k.set_defaults(func=cmd_construct)

    v = sub.add_parser("convert", parents=[common], help="apply a bridge between structures")
    v.add_argument("what", choices=["symmetrize", "dendrify", "totalize", "rb-zinf", "T", "S"])
    v.add_argument("args", nargs="+")
    v.set_defaults(func=cmd_convert)

    x = sub.add_parser("xi", parents=[common], help="3-cocycle of a crossed-module extension")
    x.add_argument("extension")
    x.add_argument("--sections", choices=["pivot", "shifted"], default="pivot")
    x.set_defaults(func=cmd_xi)

    s = sub.add_parser("same-class", parents=[common], help="compare two xi representatives")
    s.add_argument("first")
    s.add_argument("second")
    s.set_defaults(func=cmd_same_class)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, payload = args.func(args)
    except (PreconditionError, ExtensionError) as exc:
        data = {"command": args.command, "status": "fail", "error": str(exc)}
        if exc.report is not None:
            data["report"] = exc.report.to_json()
        _emit(io.dumps(data), args.out)
        return 1
    except (InputError, io.FormatError, DimensionError, DegreeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(payload if isinstance(payload, str) else io.dumps(payload), args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
