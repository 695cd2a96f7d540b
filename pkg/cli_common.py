"""
Shared plumbing for the command scripts: common flags, the run configuration,
exit codes and JSON output.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import settings
from cache import ResultCache, cache_key
from errors import ComplexParseError, HypothesisRefused, InvariantViolation, SizeBoundExceeded
from homology import CoefficientRing, parse_ring_list
from simplicial import SimplicialComplex

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE_ERROR = 2
EXIT_SIZE_BOUND = 3
EXIT_HYPOTHESIS = 4


@dataclass
class RunConfig:
    input_path: Path | None
    command: str
    rings: list[CoefficientRing]
    truncation: int | None
    max_m: int
    workers: int
    output_format: str = "text"
    cache_dir: Path | None = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.rings:
            raise ValueError("at least one coefficient ring is required")
        if self.max_m <= 0 or self.workers <= 0:
            raise ValueError("bounds and worker counts must be positive")
        if self.truncation is not None and self.truncation < 0:
            raise ValueError("truncation must be non-negative")

    @property
    def fields(self) -> list[CoefficientRing]:
        return [R for R in self.rings if R.is_field]

    def cache(self) -> ResultCache:
        return ResultCache(self.cache_dir)


def positive_int(text: str) -> int:
    value = non_negative_int(text)
    if value == 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def non_negative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from e
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def ring_argument(text: str) -> CoefficientRing:
    try:
        return CoefficientRing.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def add_common_arguments(parser: argparse.ArgumentParser, *, input_required: bool = True) -> None:
    if input_required:
        parser.add_argument("path", help="Complex file (.json or text 'm=N' + one facet per line)")
    parser.add_argument(
        "--ring",
        action="append",
        type=ring_argument,
        dest="rings",
        help="Coefficient ring: Q, Z or Fp:<p> (repeatable; default from ZK_RINGS)",
    )
    parser.add_argument(
        "--truncation", type=non_negative_int, default=None, help="Series truncation N (default 2m+2)"
    )
    parser.add_argument(
        "--max-m",
        type=positive_int,
        default=None,
        help=f"Bound for exhaustive 2^m sweeps (default {settings.MAX_M} from ZK_MAX_M)",
    )
    parser.add_argument("--workers", type=positive_int, default=settings.WORKERS, help="Worker processes")
    parser.add_argument("--format", choices=["text", "json"], default="text", dest="output_format")
    parser.add_argument("--cache-dir", default=settings.CACHE_DIR, help="Plain-file JSON result cache")


def build_config(args: argparse.Namespace, command: str) -> RunConfig:
    rings = args.rings or parse_ring_list(settings.RINGS)
    truncation = args.truncation if args.truncation is not None else settings.TRUNCATION
    return RunConfig(
        input_path=Path(args.path) if getattr(args, "path", None) else None,
        command=command,
        rings=rings,
        truncation=truncation,
        max_m=args.max_m if args.max_m is not None else settings.MAX_M,
        workers=args.workers,
        output_format=args.output_format,
        cache_dir=Path(args.cache_dir) if args.cache_dir else None,
    )


def cached_payload(
    config: RunConfig, K: SimplicialComplex, compute: Callable[[], dict], *, extra: str = ""
) -> dict:
    cache = config.cache()
    key = cache_key(K, config.command, [str(R) for R in config.rings], config.truncation, extra)
    hit = cache.get(key)
    if hit is not None:
        return hit
    with settings.bounds_overridden(MAX_M=config.max_m):
        payload = compute()
    cache.put(key, payload)
    return payload


def dump_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, ensure_ascii=False)


def emit(config: RunConfig, payload: dict, render_text: Callable[[dict], str]) -> None:
    if config.output_format == "json":
        print(dump_json(payload))
    else:
        print(render_text(payload))


def yes_no(flag: bool | None) -> str:
    if flag is None:
        return "n/a"
    return "yes" if flag else "no"


def run_command(main: Callable[[], int | None]) -> None:
    """Run a script entry point, mapping the library's refusals to stable exit codes."""
    try:
        code = main()
    except ComplexParseError as e:
        print(f"ERROR: {e}", file=sys.stderr)
        sys.exit(EXIT_PARSE_ERROR)
    except SizeBoundExceeded as e:
        print(f"ERROR: {e}", file=sys.stderr)
        sys.exit(EXIT_SIZE_BOUND)
    except HypothesisRefused as e:
        print(f"ERROR: {e}", file=sys.stderr)
        sys.exit(EXIT_HYPOTHESIS)
    except InvariantViolation as e:
        print(f"ERROR: invariant violated: {e}", file=sys.stderr)
        sys.exit(EXIT_CHECK_FAILED)
    sys.exit(code or EXIT_OK)
