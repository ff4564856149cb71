"""Command-line front end.

Exit codes: 0 when the report is clean, 1 when it records a mathematical
failure, 2 for unreadable input or bad usage.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import formats
from .directedsys import (
    borel_subchain,
    build_gl_chain,
    conjugated_gl_chain,
    flags_per_level,
    one_step_maximality_probe,
    verify_main_theorem,
)
from .errors import CapExceeded, FieldNotSplit, FlagstabError, NoFIP, NotFaithful, NotSolvable
from .exactlinalg import Matrix, format_rational
from .flags import stabilizer
from .formats import Document, InputError
from .liealg import Subalgebra, derived_series, is_solvable, verify
from .lietheorem import faithful_submodule_run, full_flag
from .report import Report
from .ultra import (
    FiniteAbelianGroup,
    PrimeFieldVectorSpace,
    enumerate_ultrafilters,
    generate_filter,
    has_fip,
    is_filter,
    is_ultrafilter,
    malcev_embedding,
    verify_ultraflag,
)

DEFAULT_SEED = 0
MATH_ERRORS = (FieldNotSplit, NotSolvable, NotFaithful, NoFIP)


def _vec(v) -> str:
    return "(" + ",".join(format_rational(a) for a in v) + ")"


def _write(path: str | None, obj: dict) -> None:
    if path:
        Path(path).write_text(formats.dump(obj))


def _subalgebra(args, L) -> Subalgebra:
    if getattr(args, "subalgebra", None):
        return formats.subalgebra_from_doc(Document.load(args.subalgebra), L)
    return Subalgebra.whole(L)


def cmd_check(args) -> Report:
    L = formats.algebra_from_doc(Document.load(args.algebra), strict=False)
    report = Report("check")
    report.fact("dim", L.dim)
    report.fact("basis", list(L.basis_names))
    for problem in verify(L):
        report.fail(problem)
    return report


def cmd_solvable(args) -> Report:
    L = formats.algebra_from_doc(Document.load(args.algebra))
    A = _subalgebra(args, L)
    series = derived_series(A)
    report = Report("solvable")
    report.fact("dim", A.dim)
    report.fact("series_dims", [s.dim for s in series])
    if is_solvable(A):
        report.fact("verdict", f"solvable, series reaches 0 after {len(series) - 1} steps")
    else:
        report.fact("verdict", f"not solvable, series stabilizes at dim {series[-1].dim}")
        report.fail(f"not solvable, series stabilizes at dim {series[-1].dim}")
    return report


def cmd_flag(args) -> Report:
    L = formats.algebra_from_doc(Document.load(args.algebra))
    rep = formats.representation_from_doc(Document.load(args.representation), L)
    A = _subalgebra(args, L)
    f = full_flag(rep, A)
    report = Report("flag")
    report.fact("module_dim", rep.module_dim)
    for i, s in enumerate(f.chain[1:], 1):
        report.fact(f"V{i}", ",".join(_vec(v) for v in s.basis))
    _write(args.out, formats.flag_to_doc(f))
    report.extras["flag"] = f
    return report


def cmd_stabilizer(args) -> Report:
    L = formats.algebra_from_doc(Document.load(args.algebra))
    rep = formats.representation_from_doc(Document.load(args.representation), L)
    f = formats.flag_from_doc(Document.load(args.flag))
    if f.ambient_dim != rep.module_dim:
        raise InputError(f"{args.flag}: flag ambient {f.ambient_dim} differs from module dim {rep.module_dim}")
    ambient = _subalgebra(args, L) if args.ambient is None else formats.subalgebra_from_doc(
        Document.load(args.ambient), L)
    st = stabilizer(f, rep, ambient)
    report = Report("stabilizer")
    report.fact("dim", st.dim)
    report.fact("solvable", is_solvable(st))
    report.fact("basis", ";".join(_vec(v) for v in st.basis))
    _write(args.out, formats.subalgebra_to_doc(st))
    return report


def cmd_faithful(args) -> Report:
    L = formats.algebra_from_doc(Document.load(args.algebra))
    rep = formats.representation_from_doc(Document.load(args.representation), L)
    A = _subalgebra(args, L)
    seed = None
    if args.seed_vector:
        doc = Document("[" + ",".join(f'"{t.strip()}"' for t in args.seed_vector.split(",")) + "]", "--seed-vector")
        seed = doc.vector(doc.data, rep.module_dim)
    run = faithful_submodule_run(rep, A, seed)
    report = Report("faithful")
    report.fact("dim", run.space.dim)
    report.fact("kernel_dims", run.kernel_dims)
    report.fact("enlargements", run.enlargements)
    report.fact("witnesses", ";".join(_vec(w) for w in run.witnesses) or "none")
    report.fact("basis", ";".join(_vec(v) for v in run.space.basis))
    _write(args.out, {"kind": "subspace", "ambient": rep.module_dim,
                      "basis": [formats.rational_list(v) for v in run.space.basis]})
    return report


def _parse_structure(text: str):
    t = text.replace(" ", "")
    if t.upper().startswith("F"):
        p, _, d = t[1:].partition("^")
        return PrimeFieldVectorSpace(int(p), int(d or 1))
    mods = [part.upper().removeprefix("Z/").removeprefix("Z") for part in t.split("x")]
    return FiniteAbelianGroup(tuple(int(m) for m in mods))


def cmd_ultra(args) -> Report:
    kind = args.ultra_cmd
    report = Report(f"ultra_{kind}")
    if kind in ("fip", "generate", "check"):
        fam = formats.family_from_doc(Document.load(args.family))
        report.fact("ground", fam.ground.size)
        report.fact("members", len(fam))
        if kind == "fip":
            ok = has_fip(fam)
            report.fact("fip", ok)
            if not ok:
                report.fail("some finite intersection is empty")
        elif kind == "generate":
            filt = generate_filter(fam)
            report.fact("filter_size", len(filt))
            report.fact("filter", filt.to_lists())
            _write(args.out, formats.family_to_doc(filt))
        else:
            f, u = is_filter(fam), is_filter(fam) and is_ultrafilter(fam)
            report.fact("filter", f)
            report.fact("ultrafilter", u)
            if args.require == "filter" and not f:
                report.fail("not a filter")
            if args.require == "ultrafilter" and not u:
                report.fail("not an ultrafilter")
    elif kind == "enumerate":
        ufs = enumerate_ultrafilters(args.size)
        report.fact("count", len(ufs))
        for u in ufs:
            report.fact(f"principal.{u.point}", len(u))
    elif kind == "ultraflag":
        report.merge(verify_ultraflag(formats.ultraflag_from_doc(Document.load(args.system))))
    elif kind == "malcev":
        try:
            structure = _parse_structure(args.structure)
        except ValueError:
            raise InputError(f"cannot parse structure {args.structure!r}") from None
        report.merge(malcev_embedding(structure).verify())
    return report


def cmd_demo(args) -> Report:
    if args.chain:
        chain, subs = formats.chain_from_doc(Document.load(args.chain))
    else:
        if args.conjugate:
            n = args.n
            g = Matrix.of([[int(i == j) + (i > j) for j in range(n)] for i in range(n)])
            chain = conjugated_gl_chain(n, g)
        else:
            chain = build_gl_chain(args.n)
        subs = borel_subchain(chain)
    if args.emit_chain:
        _write(args.emit_chain, formats.chain_to_doc(chain, subs))
    flags = flags_per_level(chain, subs)
    report = verify_main_theorem(chain, subs, flags)
    for k in range(len(chain)):
        if report.facts.get(f"level.{k + 1}.stabilizer_equals_subalgebra") == "yes":
            report.fact(f"level.{k + 1}", "stabilizer = borel")
    if args.probe_trials:
        top = len(chain) - 1
        probe = one_step_maximality_probe(chain.algebras[top], subs[top], args.probe_trials, args.seed)
        report.merge(probe, prefix="probe.")
    return report


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="flagstab", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=("human", "structured"), default="human")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="random seed for probes")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="verify antisymmetry and Jacobi for a structure-constants file")
    c.add_argument("algebra")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("solvable", help="derived series and solvability verdict")
    c.add_argument("algebra")
    c.add_argument("--subalgebra")
    c.set_defaults(func=cmd_solvable)

    c = sub.add_parser("flag", help="invariant full flag by Lie's theorem")
    c.add_argument("algebra")
    c.add_argument("representation")
    c.add_argument("--subalgebra")
    c.add_argument("--out", help="write the flag document here")
    c.set_defaults(func=cmd_flag)

    c = sub.add_parser("stabilizer", help="stabilizer subalgebra of a flag")
    c.add_argument("flag")
    c.add_argument("representation")
    c.add_argument("algebra")
    c.add_argument("--ambient", help="subalgebra document to take the stabilizer in")
    c.add_argument("--out", help="write the subalgebra document here")
    c.set_defaults(func=cmd_stabilizer)

    c = sub.add_parser("faithful", help="grow a submodule until the action is faithful")
    c.add_argument("algebra")
    c.add_argument("representation")
    c.add_argument("--subalgebra")
    c.add_argument("--seed-vector", help="comma-separated rationals; defaults to e1")
    c.add_argument("--out", help="write the submodule document here")
    c.set_defaults(func=cmd_faithful)

    u = sub.add_parser("ultra", help="filters, ultrafilters and ultraproducts")
    us = u.add_subparsers(dest="ultra_cmd", required=True)
    for name in ("fip", "generate", "check"):
        c = us.add_parser(name)
        c.add_argument("family")
        if name == "generate":
            c.add_argument("--out")
        if name == "check":
            c.add_argument("--require", choices=("none", "filter", "ultrafilter"), default="ultrafilter")
    c = us.add_parser("enumerate")
    c.add_argument("size", type=int)
    c = us.add_parser("ultraflag")
    c.add_argument("system")
    c = us.add_parser("malcev")
    c.add_argument("structure", help="e.g. Z/4, Z/2xZ/2, F2^2")
    u.set_defaults(func=cmd_ultra)

    c = sub.add_parser("demo", help="main-theorem check on the gl_1 -> ... -> gl_n chain")
    c.add_argument("n", type=int, nargs="?", default=3)
    c.add_argument("--conjugate", action="store_true", help="conjugate the chain by a unitriangular matrix")
    c.add_argument("--chain", help="chain document to use instead of the gl chain")
    c.add_argument("--emit-chain", help="write the chain document here")
    c.add_argument("--probe-trials", type=int, default=0, help="run the maximality probe at the top level")
    c.set_defaults(func=cmd_demo)
    return p


def _emit(report: Report, fmt: str, out) -> None:
    if fmt == "structured":
        print("\n".join(report.lines()), file=out)
    else:
        print(report.human(), file=out)


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
    except (InputError, CapExceeded, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MATH_ERRORS as exc:
        report = Report(args.command)
        report.fail(f"{type(exc).__name__}: {exc}")
    except FlagstabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    _emit(report, args.format, out)
    return 0 if report.clean else 1


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
