"""Command-line front end.

Verbs: eval, bracket, double, flip, tropical, verify.  Graph files use the
line format ``edge <name> <v1> <slot1> <v2> <slot2>`` / ``pedge <name> <v>
<slot>``; words use comma-separated ``edge:dir:turn`` steps; zeta vectors
use ``edge=value`` lines with exact rationals.  Verification reports are
plain text with one ``CHECK <name> PASS|FAIL [witness]`` line per relation
and exit code 0 only when everything passes; the random seed is printed so
reports are byte-reproducible.
"""

from __future__ import annotations

import argparse
import math
import random
import sys
from fractions import Fraction

from .algebras import (
    CheckResult,
    braid_coordinates,
    braid_generators,
    braid_generators_numeric,
    braid_relation_holds,
    build_generators,
    chain_counterexample,
    chain_power_is_identity,
    conjugation_matches_rewrite,
    d2_central_elements,
    numeric_generator_values,
    verify_quantum_relations,
)
from .fatgraph import FatGraph, GraphError, double_signature, is_degenerate_double
from .geodesic import PathWord, RawWord, WordError, holonomy_trace, parse_word
from .moves import MoveError, flip_inner, flip_pending
from .foliation import FoliationShear, tropical_apply
from .poisson import bracket, wp_matrix
from .ring import AssignmentError, MismatchedContext, Vars, XI

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.code = code


def _load_graph(path: str) -> FatGraph:
    try:
        with open(path) as fh:
            return FatGraph.parse(fh.read(), source=path)
    except OSError as exc:
        raise CliError(f"cannot read graph file: {exc}")
    except GraphError as exc:
        raise CliError(str(exc))


def _parse_assignment(text: str) -> dict:
    out = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise CliError(f"malformed assignment {item!r} (expected edge=value)")
        k, v = item.split("=", 1)
        try:
            out[k.strip()] = float(v)
        except ValueError:
            raise CliError(f"bad numeric value in {item!r}")
    return out


def _load_zeta(path: str) -> dict:
    out = {}
    try:
        with open(path) as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise CliError(f"{path}:{lineno}: expected edge=value")
                k, v = line.split("=", 1)
                try:
                    out[k.strip()] = Fraction(v.strip())
                except ValueError:
                    raise CliError(f"{path}:{lineno}: bad rational {v.strip()!r}")
    except OSError as exc:
        raise CliError(f"cannot read zeta file: {exc}")
    return out


class Report:
    def __init__(self, seed=None):
        self.lines = []
        self.failed = 0
        if seed is not None:
            self.emit(f"# seed {seed}")

    def emit(self, line: str):
        self.lines.append(line)

    def check(self, name: str, passed: bool, witness: str = ""):
        status = "PASS" if passed else "FAIL"
        suffix = f" {witness}" if witness and not passed else ""
        self.emit(f"CHECK {name} {status}{suffix}")
        if not passed:
            self.failed += 1

    def finish(self) -> int:
        print("\n".join(self.lines))
        return EXIT_FAIL if self.failed else EXIT_OK


# -- verbs -------------------------------------------------------------------


def cmd_eval(args) -> int:
    g = _load_graph(args.graph)
    try:
        word = parse_word(g, args.word)
    except WordError as exc:
        raise CliError(f"bad word: {exc}")
    if isinstance(word, RawWord):
        poly = word.trace()
    else:
        poly = holonomy_trace(word)
    if args.at is None:
        print(poly)
        return EXIT_OK
    try:
        value = poly.evaluate(_parse_assignment(args.at))
    except AssignmentError as exc:
        raise CliError(f"assignment error: {exc.args[0]}")
    print(f"{value:.12g}")
    return EXIT_OK


def cmd_bracket(args) -> int:
    g = _load_graph(args.graph)
    vars = Vars(g.edges)
    pm = wp_matrix(g)
    polys = []
    for text in (args.word, args.word2):
        try:
            w = parse_word(g, text)
        except WordError as exc:
            raise CliError(f"bad word: {exc}")
        polys.append(w.trace(vars) if isinstance(w, RawWord) else holonomy_trace(w, vars))
    try:
        print(bracket(polys[0], polys[1], pm))
    except MismatchedContext as exc:
        raise CliError(str(exc))
    return EXIT_OK


def cmd_double(args) -> int:
    g = _load_graph(args.graph)
    sig = g.signature()
    ghat, shat = double_signature(sig)
    note = "  # degenerate: no marked points" if is_degenerate_double(sig) else ""
    print(f"ĝ={ghat} ŝ={shat}{note}")
    return EXIT_OK


def cmd_flip(args) -> int:
    g = _load_graph(args.graph)
    if args.edge not in g.edges:
        raise CliError(f"no edge named {args.edge}")
    try:
        fr = flip_pending(g, args.edge) if g.is_pending(args.edge) else flip_inner(g, args.edge)
    except MoveError as exc:
        raise CliError(str(exc))
    out = [f"# {line}" for line in fr.describe().splitlines()]
    out.append(fr.graph.serialize().rstrip("\n"))
    if args.coords:
        values = _parse_assignment(args.coords)
        missing = [e for e in g.edges if e not in values]
        if missing:
            raise CliError(f"assignment error: missing values for edges: {', '.join(missing)}")
        moved = fr.apply_coordinates(values)
        for e in sorted(moved):
            out.append(f"# {e} = {moved[e]:.12g}")
    text = "\n".join(out) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        print(text, end="")
    return EXIT_OK


def cmd_tropical(args) -> int:
    if args.action != "flip":
        raise CliError(f"unknown tropical action {args.action!r}")
    g = _load_graph(args.graph)
    if args.edge not in g.edges:
        raise CliError(f"no edge named {args.edge}")
    zeta = _load_zeta(args.zeta)
    missing = [e for e in g.edges if e not in zeta]
    if missing:
        raise CliError(f"zeta file misses edges: {', '.join(missing)}")
    try:
        fr = flip_pending(g, args.edge) if g.is_pending(args.edge) else flip_inner(g, args.edge)
    except MoveError as exc:
        raise CliError(str(exc))
    new = tropical_apply(fr, FoliationShear.of(g, zeta))
    for e in sorted(new.zeta):
        print(f"{e}={new.zeta[e]}")
    return EXIT_OK


def _verify_an(args, report: Report):
    n = args.n
    if args.regime == "quantum":
        M = build_generators("a_n", n, "quantum")
        G = M.entries
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                for k in range(j + 1, n + 1):
                    ok = G[(j, k)].q2_commutator(G[(i, j)]) == G[(i, k)] * XI
                    report.check(f"q2-commutator [G{j}{k},G{i}{j}] = xi G{i}{k}", ok)
        if n == 3:
            ok = G[(1, 3)].q2_commutator(G[(2, 3)]) == G[(1, 2)] * XI
            report.check("q2-commutator [G13,G23] = xi G12", ok)
            ok = G[(1, 2)].q2_commutator(G[(1, 3)]) == G[(2, 3)] * XI
            report.check("q2-commutator [G12,G13] = xi G23", ok)
        return
    M = build_generators("a_n", n, "classical")
    G = M.entries
    pm = M.pm
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 1):
                ok = bracket(G[(i, j)], G[(j, k)], pm) == G[(i, j)] * G[(j, k)] - 2 * G[(i, k)]
                report.check(f"{{G{i}{j},G{j}{k}}} = G{i}{j}G{j}{k} - 2G{i}{k}", ok)
    if n == 3:
        report.check(
            "{G23,G31} = G23G31 - 2G12",
            bracket(G[(2, 3)], G[(1, 3)], pm) == G[(2, 3)] * G[(1, 3)] - 2 * G[(1, 2)],
        )
        report.check(
            "{G31,G12} = G31G12 - 2G23",
            bracket(G[(1, 3)], G[(1, 2)], pm) == G[(1, 3)] * G[(1, 2)] - 2 * G[(2, 3)],
        )
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 1):
                for l in range(k + 1, n + 1):
                    ok1 = bracket(G[(i, k)], G[(j, l)], pm) == 2 * (
                        G[(i, j)] * G[(k, l)] - G[(i, l)] * G[(j, k)]
                    )
                    report.check(f"{{G{i}{k},G{j}{l}}} interleaved", ok1)
                    report.check(
                        f"{{G{i}{j},G{k}{l}}} disjoint",
                        bracket(G[(i, j)], G[(k, l)], pm).is_zero(),
                    )
                    report.check(
                        f"{{G{i}{l},G{j}{k}}} nested",
                        bracket(G[(i, l)], G[(j, k)], pm).is_zero(),
                    )


def _verify_dn(args, report: Report):
    n = args.n
    if args.regime == "quantum":
        for res in verify_quantum_relations(n):
            report.check(res.name, res.passed, res.witness)
        if n == 2:
            M = build_generators("d_n", 2, "quantum")
            (c1a, c1b), (c2a, c2b) = d2_central_elements(M)
            gens = list(M.entries.values())
            report.check("central G11G22-qG12-q^-1G21", c1a == c1b and all(
                c1a.commutator(g).is_zero() for g in gens))
            report.check("central G12G21-q^2G22^2-q^-2G11^2", c2a == c2b and all(
                c2a.commutator(g).is_zero() for g in gens))
        return
    # classical: first-order limits of the quantum families
    import itertools

    M = build_generators("d_n", n, "classical")
    G = M.entries
    pm = M.pm
    if n == 2:
        (c1, _), (c2, _) = d2_central_elements(M)
        gens = list(G.values())
        report.check("central G11G22-G12-G21", all(bracket(c1, g, pm).is_zero() for g in gens))
        report.check("central G12G21-G22^2-G11^2", all(bracket(c2, g, pm).is_zero() for g in gens))
    for j, k, l in itertools.permutations(range(1, n + 1), 3):
        if not _ccw_triple(k, j, l, n):
            continue
        ok = bracket(G[(j, l)], G[(k, j)], pm) == 2 * G[(k, l)] - G[(j, l)] * G[(k, j)]
        report.check(f"classical shared-window ({j},{k},{l})", ok)
    for j, l in itertools.permutations(range(1, n + 1), 2):
        lhs = bracket(G[(j, l)], G[(l, j)], pm)
        ok = lhs == 2 * (G[(l, l)] * G[(l, l)] - G[(j, j)] * G[(j, j)])
        report.check(f"classical opposite-winding ({j},{l})", ok)
    for i, k in itertools.permutations(range(1, n + 1), 2):
        ok = bracket(G[(i, i)], G[(k, k)], pm) == G[(i, k)] - G[(k, i)]
        report.check(f"classical loop pair ({i},{k})", ok)


def _ccw_triple(a, b, c, n):
    return (b - a) % n > 0 and (c - b) % n > 0 and (b - a) % n + (c - b) % n + (a - c) % n == n


def _verify_braid(args, report: Report):
    n = args.n
    kind = "a_n" if args.algebra == "an" else "d_n"
    rng = random.Random(args.seed)
    if kind == "a_n" and n >= 5:
        # numeric coordinate-level relations for large n
        graph_edges = build_generators("a_n", n, "classical").graph.edges
        ok = True
        worst = 0.0
        for _ in range(args.samples):
            vals = {e: rng.uniform(-0.8, 0.8) for e in graph_edges}
            for i in range(2, n):
                c1 = braid_coordinates(n, i - 1, braid_coordinates(n, i, braid_coordinates(n, i - 1, vals)))
                c2 = braid_coordinates(n, i, braid_coordinates(n, i - 1, braid_coordinates(n, i, vals)))
                err = max(abs(c1[e] - c2[e]) for e in vals)
                worst = max(worst, err)
                ok = ok and err < args.tol
        report.check(f"braid relation on coordinates (n={n})", ok, f"worst={worst:.3g}")
        M = build_generators("a_n", n, "classical")
        vals = {e: rng.uniform(-0.8, 0.8) for e in M.graph.edges}
        G = numeric_generator_values(M, vals)
        out = dict(G)
        for _ in range(n):
            for i in range(1, n):
                out = braid_generators_numeric(out, i, n, "a_n")
        err = max(abs(out[k] - G[k]) / max(1.0, abs(G[k])) for k in G)
        report.check(f"chain^{n} = id numeric", err < args.tol, f"worst={err:.3g}")
        return
    M = build_generators(kind, n, args.regime)
    for i in range(2, n):
        report.check(f"braid relation i={i}", braid_relation_holds(M, i))
    if kind == "a_n":
        for i in range(1, n):
            report.check(f"conjugation form i={i}", conjugation_matches_rewrite(M, i))
        report.check(f"chain^{n} = id", chain_power_is_identity(M))
    else:
        values, key, before, after = chain_counterexample(n, args.seed)
        report.check(
            "second braid relation fails (witness)",
            abs(before - after) > 1e-6,
            witness=f"entry {key}: {before:.6g} -> {after:.6g}",
        )
        report.emit(
            f"# witness point: "
            + ", ".join(f"{e}={values[e]:.6g}" for e in sorted(values))
        )


def cmd_verify(args) -> int:
    report = Report(seed=args.seed)
    if args.suite == "an":
        _verify_an(args, report)
    elif args.suite == "dn":
        _verify_dn(args, report)
    elif args.suite == "braid":
        _verify_braid(args, report)
    else:
        raise CliError(f"unknown verify suite {args.suite!r}")
    return report.finish()


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="shearalg",
        description="Exact shear-coordinate algebra of geodesics on bordered surfaces",
    )
    sub = p.add_subparsers(dest="verb", required=True)

    pe = sub.add_parser("eval", help="evaluate a geodesic function")
    pe.add_argument("--graph", required=True)
    pe.add_argument("--word", required=True)
    pe.add_argument("--at", default=None, help="edge=value,... assignment")
    pe.set_defaults(func=cmd_eval)

    pb = sub.add_parser("bracket", help="Poisson bracket of two geodesic functions")
    pb.add_argument("--graph", required=True)
    pb.add_argument("--word", required=True)
    pb.add_argument("--word2", required=True)
    pb.set_defaults(func=cmd_bracket)

    pd = sub.add_parser("double", help="signature of the doubled surface")
    pd.add_argument("--graph", required=True)
    pd.set_defaults(func=cmd_double)

    pf = sub.add_parser("flip", help="flip an edge, emit the new graph")
    pf.add_argument("graph")
    pf.add_argument("edge")
    pf.add_argument("--coords", default=None, help="edge=value,... to transform")
    pf.add_argument("--out", default=None)
    pf.set_defaults(func=cmd_flip)

    pt = sub.add_parser("tropical", help="piecewise-linear flip on a zeta vector")
    pt.add_argument("action", choices=["flip"])
    pt.add_argument("graph")
    pt.add_argument("edge")
    pt.add_argument("--zeta", required=True, help="file of edge=value rationals")
    pt.set_defaults(func=cmd_tropical)

    pv = sub.add_parser("verify", help="run a verification suite")
    pv.add_argument("suite", choices=["an", "dn", "braid"])
    pv.add_argument("--n", type=int, default=3)
    pv.add_argument("--regime", choices=["classical", "quantum"], default="classical")
    pv.add_argument("--algebra", choices=["an", "dn"], default="an")
    pv.add_argument("--seed", type=int, default=20070515)
    pv.add_argument("--samples", type=int, default=20)
    pv.add_argument("--tol", type=float, default=1e-9)
    pv.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (GraphError, WordError, MoveError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
