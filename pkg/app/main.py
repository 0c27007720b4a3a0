"""Command-line entry point: `prohecke <command> --preset NAME [options]`."""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional

from app.core.config import settings
from app.core.utils import parse_levi
from app.domain.errors import DomainError, ValidationError
from app.domain.schemas.reports import InductionReport, ModuleSummary, Report
from app.domain.schemas.run_config import RunConfig
from app.domain.services.classification_service import field_label
from app.infrastructure.container import ServiceContainer
from app.infrastructure.monitoring.logging_setup import log_computation, setup_logging

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="prohecke", description=settings.DESCRIPTION)
    subparsers = parser.add_subparsers(dest="command", required=True)

    def common(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("--preset", required=True, help="preset name or path to a .preset file")
        sub.add_argument("--field", default=None, help="coefficient field as p^k (default: the preset's)")
        sub.add_argument("--seed", type=int, default=settings.DEFAULT_SEED)
        sub.add_argument("--out", default=settings.OUTPUT_DIR, help="output directory")

    common(subparsers.add_parser("info", help="print Δ, Weyl group orders, Ω and generators"))

    induce = subparsers.add_parser("induce", help="induce a module file to H(G)")
    common(induce)
    induce.add_argument("--levi", required=True, help="J as alpha+beta or 'empty'")
    induce.add_argument("--module", required=True, help="module file over H(M_J)")
    induce.add_argument("--submodules", action="store_true", help="also count submodules")

    for name, text in (("classify", "classify simple modules up to a dimension bound"),
                       ("verify-all", "run every verification suite")):
        sub = subparsers.add_parser(name, help=text)
        common(sub)
        sub.add_argument("--dim-bound", type=int, default=4)
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    try:
        return RunConfig.with_field(
            args.field,
            command=args.command,
            preset=args.preset,
            seed=args.seed,
            dim_bound=getattr(args, "dim_bound", 4),
            output_dir=Path(args.out),
            levi=getattr(args, "levi", None),
            module_file=getattr(args, "module", None),
            submodules=getattr(args, "submodules", False),
        )
    except ValueError as exc:
        raise ValidationError(f"Invalid arguments: {exc}")


def _emit(report: Report, config: RunConfig, filename: str) -> None:
    text = report.to_json()
    config.output_dir.mkdir(parents=True, exist_ok=True)
    (config.output_dir / filename).write_text(text + "\n")
    print(text)


# ============================================================================
# COMMANDS
# ============================================================================


def cmd_info(container: ServiceContainer, config: RunConfig) -> int:
    preset = container.preset
    weyl = container.weyl_service
    levis: List[Dict[str, object]] = []
    for J in preset.all_subsets():
        system = weyl.system(J)
        levis.append(
            {
                "levi": J.key(),
                "finite_weyl_order": len(system.finite_elements),
                "generators": system.generators,
                "omega": {u: system.omega_action[u] for u in system.omega_labels},
                "omega_orders": dict(system.omega_order),
            }
        )
    summary = {
        "preset": preset.name,
        "rank": preset.rank,
        "p": preset.p,
        "simple_roots": list(preset.simple_roots),
        "levis": levis,
    }
    print(json.dumps(summary, sort_keys=True, indent=2))
    return 0


def cmd_induce(container: ServiceContainer, config: RunConfig) -> int:
    preset = container.preset
    try:
        J = preset.subset(parse_levi(config.levi or "", preset.simple_roots))
    except ValueError as exc:
        raise ValidationError(str(exc))
    system = container.weyl_service.system(J)
    raw = container.module_repo.load(system, config.module_file)
    modules = container.get_module_service()
    V = modules.build_module(J, raw.field, raw.action, raw.name)
    induced = container.get_induction_service().induce(J, V).carrier.renamed(f"Ind({V.name})")
    path = container.module_repo.save(
        induced, container.weyl_service.system(), config.output_dir / f"induced_{J.key()}"
    )
    relations = modules.check_relations(induced)
    report = InductionReport(
        preset=preset.name,
        levi=list(J.labels),
        module=ModuleSummary(name=V.name, levi=list(J.labels), field=field_label(V.field), dim=V.dim),
        induced=ModuleSummary(
            name=induced.name,
            levi=list(preset.simple_roots),
            field=field_label(induced.field),
            dim=induced.dim,
            file=str(path),
        ),
        relations_passed=relations.passed,
        composition_dims=[f.dim for f in modules.composition_series(induced)],
        submodules=modules.submodule_lattice(induced).size if config.submodules else None,
    )
    _emit(report, config, f"induce_{preset.name}_{J.key()}.json")
    return 0 if relations.passed else 1


def _field(container: ServiceContainer, config: RunConfig):
    p, k = config.field_pair(container.preset.p, container.preset.k0)
    return container.field_service.field(p, k)


def cmd_classify(container: ServiceContainer, config: RunConfig) -> int:
    field = _field(container, config)
    report = container.get_classification_service().classify(field, config.dim_bound)
    _emit(report, config, f"classify_{container.preset.name}_{field.order}_{config.dim_bound}.json")
    return 0 if report.passed else 1


def cmd_verify_all(container: ServiceContainer, config: RunConfig) -> int:
    field = _field(container, config)
    report = container.get_verification_service().run_all(field, config.dim_bound)
    _emit(report, config, f"verify_{container.preset.name}_{field.order}.json")
    for suite in report.suites:
        status = "ok" if suite.passed else "FAILED"
        print(f"{suite.name}: {status} ({suite.checks} checks)", file=sys.stderr)
    return 0 if report.passed else 1


COMMANDS = {
    "info": cmd_info,
    "induce": cmd_induce,
    "classify": cmd_classify,
    "verify-all": cmd_verify_all,
}


def main(argv: Optional[List[str]] = None) -> int:
    setup_logging()
    args = build_parser().parse_args(argv)
    try:
        config = _config(args)
        log_computation(logger, config.command, config.preset, {"seed": config.seed})
        container = ServiceContainer(config.preset, seed=config.seed)
        return COMMANDS[config.command](container, config)
    except DomainError as exc:
        exc.log(logger)
        print(str(exc), file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
