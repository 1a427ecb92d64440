"""foldsage command line.

    foldsage build complete 4 | foldsage homology -
    foldsage verify cormain --n 2 --m 2 --r 2 --i 0
    foldsage cache ls

Every command prints JSON on stdout; logs and errors go to stderr. Exit codes:
0 success, 1 failed check, 2 usage or IO error, 3 budget exceeded.
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from . import __version__
from .api import ComplexKind, FoldSageAPI, FoldSageResponse, TheoremId, VerifyRequest
from .cache import ResultCache
from .errors import FoldSageError, ValidationError, create_error_response, exit_code_for
from .utils.config import Config, load_config

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def parse_graph_file(path: str) -> Dict[str, Any]:
    """Graph JSON from a file, or from stdin when path is '-'"""
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise ValidationError(f"Malformed graph JSON in {path}", details={"reason": str(e)})
    except OSError as e:
        raise ValidationError(f"Cannot read graph file {path}", details={"reason": str(e)})


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="foldsage", description="Folds, neighborhood complexes and colorings of exponential graphs")
    parser.add_argument("--version", action="version", version=f"foldsage {__version__}")
    parser.add_argument("--env", type=Path, default=None, help="Path to a .env file")
    parser.add_argument("--log-level", default=None, help="Logging level (default from config)")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--vertex-budget", type=int, default=None)
    parser.add_argument("--face-budget", type=int, default=None)
    parser.add_argument("--solver-budget-ms", type=int, default=None)
    parser.add_argument("--samples", type=int, default=None, help="Fold certificate samples")
    parser.add_argument("--edge-samples", type=int, default=None)
    parser.add_argument("--no-cache", action="store_true", help="Neither read nor write the result cache")
    commands = parser.add_subparsers(dest="command", required=True)

    build = commands.add_parser("build", help="Named graph constructions")
    kinds = build.add_subparsers(dest="kind", required=True)
    kinds.add_parser("complete").add_argument("n", type=int)
    kinds.add_parser("cycle").add_argument("n", type=int)
    kinds.add_parser("double-mycielskian").add_argument("n", type=int)
    mycielskian = kinds.add_parser("mycielskian")
    mycielskian.add_argument("-r", type=int, default=2)
    mycielskian.add_argument("file")
    product = kinds.add_parser("product")
    product.add_argument("G")
    product.add_argument("H")
    exponential = kinds.add_parser("exponential")
    exponential.add_argument("H", help="Target graph")
    exponential.add_argument("G", help="Base graph")
    path = kinds.add_parser("path")
    path.add_argument("r", type=int)
    path.add_argument("--loops", type=int, nargs="*", default=[])

    commands.add_parser("reduce", help="Fold core and trace").add_argument("file")
    homology = commands.add_parser("homology", help="Reduced homology of N(G) or Hom(K2,G)")
    homology.add_argument("file")
    homology.add_argument("--complex", choices=[kind.value for kind in ComplexKind], default=ComplexKind.NBHD.value)
    commands.add_parser("chi", help="Exact chromatic number").add_argument("file")
    commands.add_parser("check-p", help="Property P with witness").add_argument("file")

    verify = commands.add_parser("verify", help="Run a theorem pipeline")
    verify.add_argument("theorem", choices=[theorem.value for theorem in TheoremId])
    for name in ("n", "m", "r", "i"):
        verify.add_argument(f"--{name}", type=int, default=None)
    verify.add_argument("--A", type=int, nargs="*", default=None, help="Loop levels")
    verify.add_argument("--T", default=None, help="Graph file for T")
    verify.add_argument("--G", default=None, help="Graph file for G")
    verify.add_argument("--host", default=None, help="Host graph file containing M(M(K_n))")
    verify.add_argument("--H", action="append", default=None, help="Graph file for the H pool (repeatable)")

    cache = commands.add_parser("cache", help="Inspect or clear the result cache")
    cache.add_argument("action", choices=["ls", "clear"])
    return parser


def configure(args: argparse.Namespace) -> Config:
    config = load_config(
        args.env,
        seed=args.seed,
        vertex_budget=args.vertex_budget,
        face_budget=args.face_budget,
        solver_budget_ms=args.solver_budget_ms,
        certificate_samples=args.samples,
        edge_samples=args.edge_samples,
        log_level=args.log_level,
    )
    logging.basicConfig(level=config.log_level.upper(), format=LOG_FORMAT, stream=sys.stderr)
    return config


def verify_params(args: argparse.Namespace) -> Dict[str, Any]:
    params: Dict[str, Any] = {}
    for name in ("n", "m", "r", "i"):
        if getattr(args, name) is not None:
            params[name] = getattr(args, name)
    if args.A is not None:
        params["A"] = args.A
    for name in ("T", "G", "host"):
        if getattr(args, name) is not None:
            params[name] = parse_graph_file(getattr(args, name))
    if args.H:
        params["H_pool"] = {Path(p).stem: parse_graph_file(p) for p in args.H}
    return params


def dispatch(api: FoldSageAPI, args: argparse.Namespace) -> FoldSageResponse:
    if args.command == "build":
        if args.kind in ("complete", "cycle", "double-mycielskian"):
            return api.build(args.kind, n=args.n)
        if args.kind == "mycielskian":
            return api.build("mycielskian", graph=parse_graph_file(args.file), r=args.r)
        if args.kind in ("product", "exponential"):
            return api.build(args.kind, G=parse_graph_file(args.G), H=parse_graph_file(args.H))
        return api.build("path", r=args.r, loops=args.loops)
    if args.command == "reduce":
        return api.reduce(parse_graph_file(args.file))
    if args.command == "homology":
        return api.homology(parse_graph_file(args.file), ComplexKind(args.complex))
    if args.command == "chi":
        return api.chromatic(parse_graph_file(args.file))
    if args.command == "check-p":
        return api.check_property(parse_graph_file(args.file))
    return api.verify(VerifyRequest(theorem=args.theorem, params=verify_params(args)))


def emit(data: Any) -> None:
    sys.stdout.write(json.dumps(data, indent=2, sort_keys=True) + "\n")


def run_command(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    try:
        config = configure(args)
        if args.command == "cache":
            cache = ResultCache(config)
            if args.action == "ls":
                emit(cache.entries())
            else:
                emit({"removed": cache.clear()})
            return 0

        api = FoldSageAPI(config, use_cache=not args.no_cache)
        response = dispatch(api, args)
    except FoldSageError as e:
        sys.stderr.write(json.dumps(create_error_response(e), sort_keys=True) + "\n")
        return exit_code_for(e)

    if not response.success:
        sys.stderr.write(json.dumps(response.model_dump(mode="json"), sort_keys=True) + "\n")
        return response.metadata.get("exit_code", 2)
    emit(response.data)
    return response.metadata.get("exit_code", 0)


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
