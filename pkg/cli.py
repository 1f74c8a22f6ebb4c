import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from dotenv import load_dotenv

load_dotenv()

from config.settings import settings
from src.core.algebra import MedianAlgebra, PointId, PointSet, mask_of
from src.core.convexity import convex_hull, gate
from src.core.validation import validate
from src.duality.completion import zero_completion
from src.duality.dual import double_dual
from src.duality.medianization import medianize, wall_space_of
from src.exceptions import DocumentError, GuardExceededError, InvariantError, MedianError
from src.generators.registry import generate
from src.halfspaces.chains import dilworth_decompose
from src.halfspaces.system import enumerate_halfspaces
from src.harness.corpus import default_corpus
from src.harness.runner import check_instance, demo_staircase, run_suite
from src.harness.statements import InstanceContext
from src.metric.embedding import l1_embed_interval
from src.metric.space import FiniteMedianSpace, validate_median_metric
from src.metric.weights import WallWeighting, metric_from_weights
from src.schemas import GeneratorSpec, Scorecard, ValidationReport
from src.serialization.documents import (
    AlgebraDocument,
    MedianSpaceDocument,
    WallSpaceDocument,
    algebra_document,
    emit,
    median_space_document,
    parse,
    report_document,
    to_algebra,
    to_median_space,
    to_wall_space,
    wall_space_document,
)

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3
COMMANDS = [
    'validate', 'halfspaces', 'rank', 'hull', 'gate', 'chains', 'embed', 'weights',
    'medianize', 'double-dual', 'zero-completion', 'generate', 'check', 'demo-staircase',
]


class UsageError(MedianError):
    """Missing or contradictory command-line options."""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Finite median algebras, halfspaces and median spaces")
    parser.add_argument('command', choices=COMMANDS, help='Command to execute')
    parser.add_argument('family', nargs='?', help='Generator family (generate only)')
    parser.add_argument('--input', '-i', help='Input document path, or - for stdin')
    parser.add_argument('--output', '-o', default='-', help='Output path, or - for stdout')
    parser.add_argument('--format', choices=['json', 'text'], default='text', help='Report format')
    parser.add_argument('--seed', type=int, default=None, help='Seed for generators and sampling')
    parser.add_argument('--guard', type=int, default=None, help='Override the size guard of the command')
    parser.add_argument('--quiet', action='store_true', help='Only log errors and hide progress bars')
    parser.add_argument('--points', help='Comma-separated point names (hull)')
    parser.add_argument('--point', help='Point name (gate)')
    parser.add_argument('--set', dest='point_set', help='Comma-separated convex set (gate)')
    parser.add_argument('--x', help='First endpoint (chains, embed)')
    parser.add_argument('--y', help='Second endpoint (chains, embed)')
    parser.add_argument('--k', type=int, help='Dimension or number of steps')
    parser.add_argument('--m', type=int, help='Grid rows or number of random seeds')
    parser.add_argument('--n', type=int, help='Number of points, grid columns or cube dimension')
    parser.add_argument('--weights', help='Comma-separated rationals such as 1,3/2')
    parser.add_argument('--edges', help='Tree edges as u-v:length,...')
    parser.add_argument('--filter', help='Comma-separated statement ids (check)')
    return parser


def _read_document(path: Optional[str]):
    if path is None:
        raise UsageError("--input is required for this command")
    if path == '-':
        return parse(sys.stdin.read())
    file = Path(path)
    if not file.exists():
        raise DocumentError(f"file '{file}' not found", "input")
    return parse(file.read_text(encoding="utf-8"))


def _write(path: str, text: str) -> None:
    if path == '-':
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _split(text: Optional[str], option: str) -> List[str]:
    if not text:
        raise UsageError(f"{option} is required for this command")
    return [part.strip() for part in text.split(',') if part.strip()]


def _algebra(document, checked: bool = True) -> MedianAlgebra:
    """The median algebra of a document; unless `checked` is off it must validate."""
    if isinstance(document, WallSpaceDocument):
        return medianize(to_wall_space(document)).space.algebra
    if not isinstance(document, (AlgebraDocument, MedianSpaceDocument)):
        raise UsageError(f"a {document.kind} document has no median algebra")
    M = to_algebra(document)
    if checked:
        report = validate(M)
        if not report.ok:
            failure = report.failures[0]
            raise InvariantError(failure.axiom, tuple(failure.witness))
    return M


def _space(document) -> FiniteMedianSpace:
    """A median space from any input; plain algebras get unit wall weights."""
    if isinstance(document, MedianSpaceDocument):
        return to_median_space(document)
    if isinstance(document, WallSpaceDocument):
        return medianize(to_wall_space(document)).space
    M = _algebra(document)
    H = enumerate_halfspaces(M)
    return metric_from_weights(M, WallWeighting.of([1] * len(H.walls)), H)


def _mask(M: MedianAlgebra, names: List[str]) -> PointSet:
    return mask_of(M.index(name) for name in names)


def _point(M: MedianAlgebra, name: Optional[str], option: str) -> PointId:
    if name is None:
        raise UsageError(f"{option} is required for this command")
    return M.index(name)


def _report_text(report: ValidationReport) -> str:
    if report.ok:
        return "✅ ok\n"
    lines = [f"❌ {failure.axiom}: {', '.join(str(w) for w in failure.witness)}" for failure in report.failures]
    return "\n".join(lines) + "\n"


def _scorecard_text(scorecard: Scorecard) -> str:
    lines = []
    for entry in scorecard.entries:
        mark = {"pass": "✅", "fail": "❌", "skipped": "⏭️"}[entry.status]
        witness = f" {entry.witness}" if entry.witness else ""
        lines.append(f"{mark} {entry.statement} {entry.instance}{witness}")
    failed = len(scorecard.failures())
    lines.append(f"\n{len(scorecard.entries)} cells, {failed} failed")
    return "\n".join(lines) + "\n"


def _answer(args, name: str, payload: dict, text: str) -> None:
    if args.format == 'json':
        _write(args.output, emit(report_document(name, payload)))
    else:
        _write(args.output, text)


def _generator_spec(args) -> GeneratorSpec:
    if not args.family:
        raise UsageError("generate needs a family, e.g. 'generate hypercube --k 3'")
    params = {}
    weights = _split(args.weights, "--weights") if args.weights else None
    if args.family == 'hypercube':
        params = {"k": args.k, "weights": weights}
    elif args.family == 'path':
        params = {"n": args.n, "lengths": weights}
    elif args.family == 'tree':
        edges = []
        for item in _split(args.edges, "--edges"):
            ends, _, length = item.partition(':')
            u, _, v = ends.partition('-')
            edges.append((u, v, length or "1"))
        params = {"edges": edges}
    elif args.family == 'grid':
        params = {"m": args.m, "n": args.n}
        if weights is not None:
            if args.m is None or args.n is None or len(weights) != args.m + args.n - 2:
                raise UsageError("grid --weights takes m-1 row lengths then n-1 column lengths")
            params.update(x_weights=weights[:args.m - 1], y_weights=weights[args.m - 1:])
    elif args.family == 'staircase':
        params = {"k": args.k}
    elif args.family in ('random_tree', 'cycle'):
        params = {"n": args.n}
    elif args.family == 'random_subalgebra':
        params = {"n": args.n, "m": args.m, "weights": weights}
    params = {key: value for key, value in params.items() if value is not None}
    try:
        return GeneratorSpec(family=args.family, params=params, seed=args.seed)
    except ValueError as e:
        raise UsageError(f"unknown family {args.family!r}") from e


def execute(args) -> int:
    """Run one parsed command and return its exit code."""
    command = args.command

    if command == 'generate':
        spec = _generator_spec(args)
        space = generate(spec)
        _write(args.output, emit(median_space_document(space, with_table=spec.family != 'cycle')))
        return EXIT_OK

    if command == 'demo-staircase':
        report = demo_staircase(args.k or 5)
        text = "\n".join(f"k={k}: {p}" for k, p in enumerate(report.projections, 1))
        _answer(args, "demo-staircase", report.model_dump(), f"{text}\nstable from k={report.stabilized_at}\n")
        return EXIT_OK

    if command == 'check':
        selected = _split(args.filter, "--filter") if args.filter else None
        if args.input is None:
            scorecard = run_suite(default_corpus(args.seed), selected, show_progress=not args.quiet)
        else:
            space = _space(_read_document(args.input))
            scorecard = check_instance(InstanceContext("input", space, seed=args.seed or 0), selected)
        _answer(args, "scorecard", scorecard.model_dump(), _scorecard_text(scorecard))
        return EXIT_OK if scorecard.ok else EXIT_FAILED

    document = _read_document(args.input)

    if command == 'validate':
        if isinstance(document, MedianSpaceDocument):
            report = validate_median_metric(to_median_space(document))
        else:
            report = validate(_algebra(document, checked=False))
        _answer(args, "validate", report.model_dump(), _report_text(report))
        return EXIT_OK if report.ok else EXIT_FAILED

    if command == 'medianize':
        walls = to_wall_space(document) if isinstance(document, WallSpaceDocument) else wall_space_of(_space(document))
        _write(args.output, emit(median_space_document(medianize(walls, args.guard).space)))
        return EXIT_OK

    if command == 'weights':
        _write(args.output, emit(wall_space_document(wall_space_of(_space(document)))))
        return EXIT_OK

    if command == 'embed':
        X = _space(document)
        M = X.algebra
        x, y = _point(M, args.x, "--x"), _point(M, args.y, "--y")
        embedding = l1_embed_interval(X, x, y)
        H = enumerate_halfspaces(M)
        coordinates = {M.labels[z]: [str(c) for c in v] for z, v in sorted(embedding.coordinates.items())}
        payload = {
            "chains": [[H.describe(h) for h in chain] for chain in embedding.chains],
            "coordinates": coordinates,
        }
        text = "\n".join(f"{label}: ({', '.join(v)})" for label, v in coordinates.items())
        _answer(args, "embed", payload, text + "\n")
        return EXIT_OK

    M = _algebra(document)

    if command == 'halfspaces':
        H = enumerate_halfspaces(M)
        payload = {
            "halfspaces": [
                {"index": h, "wall": H.wall_of(h), "side": M.names(H.side(h))}
                for h in range(len(H))
            ],
            "containment": sorted([h, k] for h, k in H.containment),
            "transverse_walls": sorted(sorted(edge) for edge in H.transversality.edges),
        }
        text = "\n".join(f"wall {H.wall_of(h)}: {H.describe(h)}" for h in range(len(H)))
        _answer(args, "halfspaces", payload, text + "\n")
    elif command == 'rank':
        rank = enumerate_halfspaces(M).rank
        _answer(args, "rank", {"rank": rank}, f"{rank}\n")
    elif command == 'hull':
        hull = convex_hull(M, _mask(M, _split(args.points, "--points")))
        _answer(args, "hull", {"hull": M.names(hull)}, ",".join(M.names(hull)) + "\n")
    elif command == 'gate':
        x = _point(M, args.point, "--point")
        g = gate(M, x, _mask(M, _split(args.point_set, "--set")))
        _answer(args, "gate", {"gate": M.labels[g]}, f"{M.labels[g]}\n")
    elif command == 'chains':
        H = enumerate_halfspaces(M)
        chains = dilworth_decompose(H, _point(M, args.x, "--x"), _point(M, args.y, "--y"))
        described = [[H.describe(h) for h in chain] for chain in chains]
        _answer(args, "chains", {"chains": described}, "\n".join(" ⊂ ".join(c) for c in described) + "\n")
    elif command == 'double-dual':
        _write(args.output, emit(algebra_document(double_dual(M, guard=args.guard).algebra)))
    elif command == 'zero-completion':
        _write(args.output, emit(algebra_document(zero_completion(M, guard=args.guard).algebra)))
    return EXIT_OK


def run(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments, configure logging and execute.

    Returns:
        0 on success, 1 when a property or invariant fails, 2 on usage or
        document errors, 3 when a size guard is exceeded
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE

    logging.basicConfig(
        level=logging.ERROR if args.quiet else settings.LOG_LEVEL,
        format=settings.LOG_FORMAT,
        handlers=[logging.StreamHandler(sys.stderr)],
        force=True,
    )

    try:
        return execute(args)
    except GuardExceededError as e:
        print(f"❌ Guard exceeded: {e}. Raise it with --guard or the MEDIAN_ settings.", file=sys.stderr)
        return EXIT_GUARD
    except InvariantError as e:
        print(f"❌ Property failed: {e}", file=sys.stderr)
        return EXIT_FAILED
    except MedianError as e:
        print(f"❌ Error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main():
    """Main CLI interface."""
    sys.exit(run())


if __name__ == "__main__":
    main()
