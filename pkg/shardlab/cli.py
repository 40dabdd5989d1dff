import argparse
import logging
import os
import sys
from typing import List, Optional

from pydantic import ValidationError

from shardlab.api.models import RunConfig
from shardlab.config.settings import settings, setup_logging
from shardlab.engine.errors import ShardlabError
from shardlab.services.build_service import BuildService
from shardlab.services.export_service import ExportService
from shardlab.services.verify_service import VerifyService

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--type", help='Coxeter type, e.g. A3, B3, "I2(5)", A1xA1')
    source.add_argument("--arrangement", metavar="FILE",
                        help="rational arrangement file: a base point line, then one normal per line")
    parser.add_argument("--coxeter-element", default=None, help="order of the simple generators, e.g. s1,s3,s2")
    parser.add_argument("--contract", action="append", default=[],
                        help="join-irreducible to contract (word such as s2,s1 or one-line permutation); repeatable")
    parser.add_argument("--geometry", choices=["on", "off"], default="on")
    parser.add_argument("--format", choices=["json", "dot", "text"], default="json")
    parser.add_argument("--out", default=None, help=f"output directory (default {settings.OUTPUT_DIR})")
    parser.add_argument("--jobs", type=int, default=settings.JOBS)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="shardlab", description="Shards and the shard intersection order")
    parser.add_argument("--log-level", default=None)
    commands = parser.add_subparsers(dest="command", required=True)
    _add_config_flags(commands.add_parser("build", help="write the bundle summary"))
    _add_config_flags(commands.add_parser("verify", help="run every applicable theorem check"))
    export = commands.add_parser("export", help="export weak, shard_order, nc, digraph or triangulation")
    export.add_argument("target")
    _add_config_flags(export)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        type=args.type,
        arrangement=args.arrangement,
        coxeter_element=args.coxeter_element,
        contract=args.contract,
        geometry=args.geometry == "on",
        format=args.format,
        out=args.out,
        jobs=args.jobs,
    )


def _usage_error(message: str) -> int:
    print(f"shardlab: error: {message}", file=sys.stderr)
    return EXIT_USAGE


def run_build(config: RunConfig, build_service: BuildService) -> int:
    bundle = build_service.build(config)
    path = build_service.write(bundle, config.out)
    print(f"{bundle.type}: {bundle.group_size} elements, {bundle.shard_count} shards -> {path}")
    return EXIT_OK


def run_verify(config: RunConfig, build_service: BuildService) -> int:
    service = VerifyService(build_service)
    checks = service.run(config)
    headline = service.headline(config)
    for check in checks:
        status = "PASS" if check.passed else "FAIL"
        line = f"{status} {check.name}: {check.theorem}"
        if check.detail and not check.passed:
            line += f" ({check.detail})"
        print(line)
    print(" ".join(f"{k}={v}" for k, v in headline.items()))
    out = config.out or settings.OUTPUT_DIR
    os.makedirs(out, exist_ok=True)
    path = os.path.join(out, f"verify_{config.stem}.xml")
    with open(path, "w") as f:
        f.write(ExportService(build_service).render_junit(checks, f"shardlab.{config.stem}"))
    failed = [c for c in checks if not c.passed]
    print(f"{len(checks) - len(failed)}/{len(checks)} checks passed; report at {path}")
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def run_export(config: RunConfig, target: str, build_service: BuildService) -> int:
    service = ExportService(build_service)
    content = service.export(config, target)
    if config.out:
        print(service.write(content, config, target))
    else:
        sys.stdout.write(content)
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    setup_logging(args.log_level)
    try:
        settings.validate()
        config = config_from_args(args)
    except ValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(part) for part in first["loc"]) or "config"
        return _usage_error(f"{field}: {first['msg']}")
    except ValueError as e:
        return _usage_error(str(e))

    build_service = BuildService()
    try:
        if args.command == "build":
            return run_build(config, build_service)
        if args.command == "verify":
            return run_verify(config, build_service)
        return run_export(config, args.target, build_service)
    except (ShardlabError, ValueError) as e:
        logger.debug("usage error", exc_info=True)
        return _usage_error(str(e))
    except Exception as e:
        logger.error(f"Unexpected failure in {args.command}: {e}", exc_info=True)
        return _usage_error(f"{args.command} failed: {e}")


if __name__ == "__main__":
    sys.exit(main())
