"""Command-line entry point: ``gammaflag <command> ...``.

Exit codes: 0 success, 1 a mathematical failure (non-flag input where flag
is required, or a verification mismatch), 2 bad input.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import analysis, gammacomplex, npcomplexes, oracle, ordering, polyvec, setcore

log = logging.getLogger("gammaflag")


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _is_selector(arg: str) -> bool:
    kind, sep, num = arg.partition(":")
    return bool(sep) and kind in setcore.NAMED_FAMILIES and not Path(arg).exists()


def load_bset(arg: str) -> setcore.BuildingSet:
    """A named selector (``kn:5``) or a building-set file."""
    try:
        if _is_selector(arg):
            return setcore.named_building_set(arg)
        return setcore.parse_building_set(_read(arg))
    except setcore.SetCoreError as exc:
        raise InputError(str(exc)) from None


def _ordering_for(B: setcore.BuildingSet, how: str, args) -> list[ordering.FlagOrdering]:
    """One ordering per maximal component (a single one for connected B)."""
    recipes = {"kn": ordering.ordering_kn, "path": ordering.ordering_pathn, "star": ordering.ordering_star}
    if how in recipes:
        O = recipes[how](B.n)
        if O.B.family != B.family or O.B.ground != B.ground:
            raise InputError(f"--ordering {how} does not match this building set")
        return [O]
    if how == "file":
        if not args.ordering_file:
            raise InputError("--ordering file needs --ordering-file")
        try:
            O = ordering.parse_ordering(_read(args.ordering_file))
        except setcore.SetCoreError as exc:
            raise InputError(str(exc)) from None
        if O.B.family != B.family:
            raise InputError("ordering file does not cover this building set")
        v = ordering.verify_flag_ordering(O)
        if not v:
            raise InputError(f"invalid flag ordering at {v.index}: {v.reason}")
        return [O]
    if how not in ("auto", "lex", "random"):
        raise InputError(f"unknown ordering {how!r}")
    strategy = "random" if how == "random" else "lex"
    return [
        ordering.find_flag_ordering(setcore.restriction(B, top), strategy=strategy, seed=args.seed)
        for top in setcore.maximal_elements(B)
    ]


def _gamma_complex(B, args) -> gammacomplex.FlagComplex:
    G = gammacomplex.FlagComplex((), frozenset())
    for O in _ordering_for(B, args.ordering, args):
        G = gammacomplex.join(G, gammacomplex.build_gamma_complex(O))
    return G


def _emit_complex(G, args) -> None:
    if args.dot:
        _write(gammacomplex.format_dot(G), args.out)
    else:
        _write(gammacomplex.format_complex(G), args.out)


# -- commands ---------------------------------------------------------------


def cmd_bset(args) -> int:
    if _is_selector(args.source):
        B = load_bset(args.source)
    else:
        text = _read(args.source)
        try:
            first_data = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
            looks_graph = all(len(ln.split()) == 2 for ln in first_data[1:])
            B = (
                setcore.graphical_building_set(setcore.parse_graph(text))
                if looks_graph and not args.as_bset
                else setcore.parse_building_set(text)
            )
        except setcore.SetCoreError as exc:
            raise InputError(str(exc)) from None
    _write(setcore.format_building_set(B), args.out)
    return 0


def cmd_gamma(args) -> int:
    B = load_bset(args.bset)
    if args.method == "nested":
        g = oracle.gamma_oracle(B)
    else:
        if not setcore.is_flag(B):
            print("building set is not flag", file=sys.stderr)
            return 1
        if args.method == "volodin":
            g = polyvec.gamma_via_volodin(B)
        else:
            g = gammacomplex.f_vector_cliques(_gamma_complex(B, args))
    print(polyvec.format_vector(g))
    return 0


def cmd_ordering(args) -> int:
    B = load_bset(args.bset)
    if args.action == "find":
        if not setcore.is_flag(B):
            print("building set is not flag", file=sys.stderr)
            return 1
        if not B.is_connected:
            raise InputError("flag orderings need a connected building set")
        O = ordering.find_flag_ordering(B, strategy=args.strategy, seed=args.seed)
        _write(ordering.format_ordering(O), args.out)
        return 0
    if not args.ordering_file:
        raise InputError("ordering verify needs an ordering file")
    try:
        O = ordering.parse_ordering(_read(args.ordering_file))
    except setcore.SetCoreError as exc:
        raise InputError(str(exc)) from None
    O = ordering.FlagOrdering(B, O.D, O.order)
    v = ordering.verify_flag_ordering(O)
    if v:
        print("valid")
    else:
        print(f"invalid at index {v.index}: {v.reason}")
    return 0 if v else 1


def cmd_complex(args) -> int:
    B = load_bset(args.bset)
    if not setcore.is_flag(B):
        print("building set is not flag", file=sys.stderr)
        return 1
    _emit_complex(_gamma_complex(B, args), args)
    return 0


def cmd_np(args) -> int:
    kind, _, num = args.which.partition(":")
    makers = {
        "sn": npcomplexes.gamma_complex_sn_hat,
        "s312": npcomplexes.gamma_complex_s312,
        "pn": npcomplexes.gamma_complex_pn,
    }
    if kind not in makers or not num.isdigit() or int(num) < 2:
        raise InputError(f"expected sn:N, s312:N or pn:N with N >= 2, got {args.which!r}")
    _emit_complex(makers[kind](int(num)), args)
    return 0


def cmd_compare(args) -> int:
    try:
        G1 = gammacomplex.parse_complex(_read(args.first))
        G2 = gammacomplex.parse_complex(_read(args.second))
        witness = analysis.graphs_isomorphic(G1, G2)
    except (ValueError, KeyError) as exc:
        raise InputError(str(exc)) from None
    if witness is None:
        print("NOT isomorphic")
    else:
        print("isomorphic")
        for k in G1.vertices:
            print(f"  {k} -> {witness[k]}")
    return 0


def cmd_verify(args) -> int:
    B = load_bset(args.bset)
    if not setcore.is_flag(B):
        print("building set is not flag", file=sys.stderr)
        return 1
    ident = args.bset if _is_selector(args.bset) else Path(args.bset).name
    report = analysis.verify_triple(B, args.orderings, args.seed, identifier=ident)
    if not args.timings:
        report.timings_ms = {}
    text = report.to_json() if args.format == "structured" else report.to_text()
    _write(text, args.out)
    return 0 if report.agreement else 1


def cmd_ffk(args) -> int:
    try:
        ok = analysis.ffk_check(polyvec.parse_vector(args.vector))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    print("passes" if ok else "fails")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gammaflag", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("bset", help="emit a building set from a selector or graph file")
    s.add_argument("source", help="kn:N, path:N, cyc:N, star:N, or a graph / building-set file")
    s.add_argument("--as-bset", action="store_true", help="treat the file as a building set")
    s.add_argument("--out")
    s.set_defaults(func=cmd_bset)

    def add_ordering_opts(sp):
        sp.add_argument("--ordering", default="auto",
                        help="auto|lex|random|kn|path|star|file (default auto)")
        sp.add_argument("--ordering-file")
        sp.add_argument("--seed", type=int, default=0)

    s = sub.add_parser("gamma", help="gamma vector of a building set")
    s.add_argument("bset")
    s.add_argument("--method", choices=("nested", "volodin", "complex"), default="nested")
    add_ordering_opts(s)
    s.set_defaults(func=cmd_gamma)

    s = sub.add_parser("ordering", help="find or verify a flag ordering")
    s.add_argument("action", choices=("find", "verify"))
    s.add_argument("bset")
    s.add_argument("ordering_file", nargs="?")
    s.add_argument("--strategy", choices=("lex", "random"), default="lex")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    s.set_defaults(func=cmd_ordering)

    s = sub.add_parser("complex", help="the flag complex Gamma(O)")
    s.add_argument("bset")
    add_ordering_opts(s)
    s.add_argument("--dot", action="store_true")
    s.add_argument("--out")
    s.set_defaults(func=cmd_complex)

    s = sub.add_parser("np", help="Nevo-Petersen complexes")
    s.add_argument("which", help="sn:N, s312:N or pn:N")
    s.add_argument("--dot", action="store_true")
    s.add_argument("--out")
    s.set_defaults(func=cmd_np)

    s = sub.add_parser("compare", help="isomorphism test of two complex files")
    s.add_argument("first")
    s.add_argument("second")
    s.set_defaults(func=cmd_compare)

    s = sub.add_parser("verify", help="gamma three ways, with FFK")
    s.add_argument("bset")
    s.add_argument("--orderings", type=int, default=3)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--format", choices=("text", "structured"), default="text")
    s.add_argument("--timings", action="store_true", help="include wall-clock timings")
    s.add_argument("--out")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("ffk", help="Frankl-Furedi-Kalai check of an f-vector")
    s.add_argument("vector", help='e.g. "(1, 22, 16)"')
    s.set_defaults(func=cmd_ffk)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.WARNING - 10 * args.verbose, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
