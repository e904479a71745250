"""Command-line interface: ``lindep {build,charpoly,invariants,verify}``.

Exit codes: 0 success, 1 usage or validation error, 2 capacity exceeded,
3 claim mismatch (verify only).
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import invariants, spectra
from .exceptions import CapacityError, InvalidFieldError
from .gf import FieldSpec
from .graph import MATRICES, build_graph, graph_to_dot, graph_to_json, matrix_to_csv
from .verifier import VerifyOptions, render_report, run_suite

EXIT_OK, EXIT_USAGE, EXIT_CAPACITY, EXIT_MISMATCH = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class CliConfig:
    command: str
    p: int
    k: int
    n: int
    modulus_override: list[int] | None = None
    matrix: str = "adjacency"
    format: str = "json"
    out: str | None = None
    max_vertices: int = 1024
    spectra_bound: int = 256
    np_bound: int = invariants.NP_MAX_VERTICES
    iso_bound: int = invariants.ISO_MAX_VERTICES
    strict: bool = False
    timings: bool = True

    @classmethod
    def from_args(cls, a: argparse.Namespace) -> CliConfig:
        modulus = None
        if a.modulus:
            modulus = [int(t) for t in a.modulus.split(",")]
        return cls(command=a.command, p=a.p, k=a.k, n=a.n, modulus_override=modulus,
                   matrix=getattr(a, "matrix", "adjacency"), format=a.format, out=a.out,
                   max_vertices=a.max_vertices, spectra_bound=a.spectra_bound,
                   np_bound=a.np_bound, iso_bound=a.iso_bound,
                   strict=getattr(a, "strict", False),
                   timings=not getattr(a, "no_timings", False))

    def field(self) -> FieldSpec:
        return FieldSpec.create(self.p, self.k, self.modulus_override)


def _common(sp: argparse.ArgumentParser, formats: list[str], default: str) -> None:
    sp.add_argument("--p", type=int, required=True, help="field characteristic (prime)")
    sp.add_argument("--k", type=int, default=1, help="extension degree (q = p^k)")
    sp.add_argument("--n", type=int, required=True, help="dimension of the vector space")
    sp.add_argument("--modulus", help="comma-separated monic modulus, constant term first")
    sp.add_argument("--format", choices=formats, default=default)
    sp.add_argument("--out", help="write output to this path instead of stdout")
    sp.add_argument("--max-vertices", type=int, default=1024, help="bound on q^n for building")
    sp.add_argument("--spectra-bound", type=int, default=256,
                    help="largest order for characteristic polynomials")
    sp.add_argument("--np-bound", type=int, default=invariants.NP_MAX_VERTICES,
                    help="largest order for exponential-time oracles")
    sp.add_argument("--iso-bound", type=int, default=invariants.ISO_MAX_VERTICES,
                    help="largest order for the isomorphism search")


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lindep", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("build", help="build the graph and export it")
    _common(b, ["json", "dot", "csv"], "json")
    b.add_argument("--matrix", choices=list(MATRICES), default="adjacency",
                   help="matrix to export with --format csv")

    c = sub.add_parser("charpoly", help="computed vs predicted characteristic polynomial")
    _common(c, ["text", "json"], "text")
    c.add_argument("--matrix", choices=list(MATRICES), default="adjacency")

    i = sub.add_parser("invariants", help="run the brute-force invariant oracles")
    _common(i, ["json"], "json")

    v = sub.add_parser("verify", help="full claim-by-claim verification report")
    _common(v, ["json", "markdown"], "json")
    v.add_argument("--strict", action="store_true",
                   help="fail on known corollary discrepancies too")
    v.add_argument("--no-timings", action="store_true", help="omit the timings block")
    return parser


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_build(cfg: CliConfig) -> int:
    g = build_graph(cfg.field(), cfg.n, max_vertices=cfg.max_vertices)
    if cfg.format == "dot":
        text = graph_to_dot(g)
    elif cfg.format == "csv":
        text = matrix_to_csv(MATRICES[cfg.matrix](g))
    else:
        text = graph_to_json(g) + "\n"
    _emit(text, cfg.out)
    print(f"vertices={g.num_vertices} edges={invariants.edge_count(g)}",
          file=sys.stderr if cfg.out is None else sys.stdout)
    return EXIT_OK


def cmd_charpoly(cfg: CliConfig) -> int:
    spec = cfg.field()
    g = build_graph(spec, cfg.n, max_vertices=cfg.max_vertices)
    if g.num_vertices > cfg.spectra_bound:
        raise CapacityError(f"{g.num_vertices} vertices exceeds spectra bound {cfg.spectra_bound}")
    computed = spectra.charpoly_exact(MATRICES[cfg.matrix](g))
    predicted = spectra.PREDICTED[cfg.matrix](spec.q, cfg.n)
    equal = computed == predicted
    if cfg.format == "json":
        text = json.dumps({"matrix": cfg.matrix, "computed": computed.to_dict(),
                           "predicted": predicted.to_dict(), "equal": equal}, indent=2) + "\n"
    else:
        text = (f"computed:  {computed}\npredicted: {predicted}\n"
                f"equal={'true' if equal else 'false'}\n")
    _emit(text, cfg.out)
    return EXIT_OK if equal else EXIT_MISMATCH


def cmd_invariants(cfg: CliConfig) -> int:
    g = build_graph(cfg.field(), cfg.n, max_vertices=cfg.max_vertices)
    results = invariants.run_oracles(g, np_bound=cfg.np_bound)
    planarity = results["planarity"].value
    dump = {
        "m": results["size"].value,
        "complete": results["complete"].value,
        "diameter": results["diameter"].value,
        "domination": results["domination"].value,
        "independence": results["independence"].value,
        "clique": results["clique"].value,
        "chromatic": results["chromatic"].value,
        "eulerian": results["eulerian"].value,
        "edge_connectivity": results["edge_connectivity"].value,
        "vertex_connectivity": results["vertex_connectivity"].value,
        "planar": None if planarity == invariants.UNKNOWN else planarity == invariants.PLANAR,
        "maximal_cliques": results["maximal_cliques"].value,
        "skipped": sorted(k for k, r in results.items() if r.skipped),
    }
    _emit(json.dumps(dump, indent=2) + "\n", cfg.out)
    return EXIT_OK


def cmd_verify(cfg: CliConfig) -> int:
    opts = VerifyOptions(spectra_bound=cfg.spectra_bound, np_bound=cfg.np_bound,
                         iso_bound=cfg.iso_bound, build_bound=cfg.max_vertices)
    report = run_suite(cfg.field(), cfg.n, opts)
    _emit(render_report(report, cfg.format, include_timings=cfg.timings), cfg.out)
    if report.unexpected_mismatches:
        return EXIT_MISMATCH
    if cfg.strict and report.known_mismatches:
        return EXIT_MISMATCH
    return EXIT_OK


COMMANDS = {"build": cmd_build, "charpoly": cmd_charpoly,
            "invariants": cmd_invariants, "verify": cmd_verify}


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        cfg = CliConfig.from_args(args)
        if cfg.n < 1:
            raise ValueError(f"--n must be at least 1, got {cfg.n}")
        return COMMANDS[cfg.command](cfg)
    except CapacityError as exc:
        print(f"lindep: capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (InvalidFieldError, ValueError) as exc:
        print(f"lindep: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"lindep: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
