"""
Command line entry point of operadix.

Exit codes: 0 success, 1 a verification found violations, 2 usage or
input errors. The run flags are accepted before and after the subcommand.
"""
import json
import sys
from typing import Any, Dict, List, NoReturn, Optional

import click
from pydantic import ValidationError

from src.dg.differential import d_generator
from src.dg.element import Element
from src.dg.labels import generators, parse_label
from src.dg.normalize import compose, parse_element
from src.errors import OperadixError
from src.reports import (
    CensusReport,
    EnumerationReport,
    RunConfig,
    RunStamp,
    VerificationReport,
)
from src.rendering import (
    corolla_to_dot,
    element_to_ascii,
    element_to_dot,
    tree_to_ascii,
)
from src.set_operad.associative import AssOperad, UnitalAssOperad
from src.set_operad.coproduct import CoproductOperad
from src.set_operad.corks import (
    UinfAObjects,
    UObjects,
    corolla_to_tree,
    parse_corolla,
)
from src.set_operad.endomorphism import monoid_census
from src.tree import enumerate_trees, to_text
from src.utils import (
    Ambient,
    Logging,
    OutputFormat,
    Suite,
    load_config,
    models_to_text,
)
from src.verification import run_suite

logger = Logging.get_console_logger()

EXIT_FAILED = 1
EXIT_USAGE = 2

RUN_OPTIONS = [
    click.option(
        "--ambient",
        type=click.Choice([a.value for a in Ambient]),
        default=None,
        help="u-infinity A (no unit) or u-infinity uA.",
    ),
    click.option("--max-n", type=int, default=None),
    click.option("--max-arity", type=int, default=None),
    click.option("--max-corks", type=int, default=None),
    click.option("--max-inner", type=int, default=None),
    click.option(
        "--format",
        "output_format",
        type=click.Choice([f.value for f in OutputFormat]),
        default=None,
    ),
    click.option("--seed", type=int, default=None),
    click.option("--out", type=click.Path(dir_okay=False), default=None),
]


def run_options(command):
    for option in reversed(RUN_OPTIONS):
        command = option(command)
    return command


### SETTINGS ###


def _overrides(flags: Dict[str, Any]) -> Dict[str, Any]:
    """
    RunConfig fields from the run flags; `--out` is kept apart.
    """
    values = {k: v for k, v in flags.items() if k != "out"}
    values["format"] = values.pop("output_format")
    return values


def _run(ctx: click.Context, flags: Dict[str, Any]) -> RunConfig:
    """
    The group's settings updated by flags given after the subcommand.
    """
    if flags["out"] is not None:
        ctx.obj["out"] = flags["out"]

    overrides = {
        k: v for k, v in _overrides(flags).items() if v is not None
    }
    if overrides:
        try:
            ctx.obj["run"] = RunConfig(
                **{**ctx.obj["run"].model_dump(), **overrides}
            )
        except ValidationError as error:
            _fail_usage(error)
    return ctx.obj["run"]


### OUTPUT ###


def _emit(ctx: click.Context, text: str) -> None:
    out = ctx.obj["out"]
    if out is None:
        click.echo(text)
    else:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text if text.endswith("\n") else text + "\n")
        logger.info(f"Wrote {out}.")


def _format_element(run: RunConfig, element: Element) -> str:
    if run.format == OutputFormat.JSON:
        return json.dumps(element.to_json(), indent=2)
    if run.format == OutputFormat.DOT:
        return element_to_dot(element).rstrip("\n")
    return str(element)


def _stamp_lines(report: RunStamp, title: str) -> List[str]:
    return [
        f"{title}  ambient: {report.ambient}  seed: {report.seed}",
        "bounds: "
        + ", ".join(f"{k}={v}" for k, v in sorted(report.bounds.items())),
        "",
    ]


def _format_report(run: RunConfig, report: VerificationReport) -> str:
    if run.format == OutputFormat.JSON:
        return report.model_dump_json(indent=2)

    lines = _stamp_lines(report, f"suite: {report.suite}") + [
        models_to_text(
            [
                check.model_copy(update={"failures": check.failures[:1]})
                for check in report.checks
            ]
        ),
    ]
    if report.census is not None:
        lines += ["", models_to_text([report.census])]
    if report.generation:
        lines += ["", models_to_text(report.generation)]
    if report.sdr:
        lines += ["", models_to_text(report.sdr)]
    if report.missing:
        lines += ["", "missing: " + ", ".join(report.missing)]
    lines += ["", "PASSED" if report.passed else "FAILED"]
    return "\n".join(lines)


def _fail_usage(error: Exception) -> NoReturn:
    click.echo(f"Error: {error}", err=True)
    sys.exit(EXIT_USAGE)


### COMMANDS ###


@click.group()
@run_options
@click.option(
    "--config",
    "config_path",
    type=click.Path(exists=True, dir_okay=False),
    default=None,
    help="Alternative config.ini.",
)
@click.pass_context
def cli(ctx: click.Context, config_path: Optional[str], **flags) -> None:
    """
    Exact computations in u-infinity operads.
    """
    try:
        run = RunConfig.from_config(
            load_config(config_path), **_overrides(flags)
        )
    except ValidationError as error:
        _fail_usage(error)
    ctx.obj = {"run": run, "out": flags["out"]}


@cli.command("d")
@click.argument("generator")
@run_options
@click.pass_context
def cmd_d(ctx: click.Context, generator: str, **flags) -> None:
    """
    Differential of a generator: mu, u or nu(n,{S}).
    """
    run = _run(ctx, flags)
    try:
        label = parse_label(generator)
        value = d_generator(label, run.ambient)
    except OperadixError as error:
        _fail_usage(error)
    _emit(ctx, _format_element(run, value))


@cli.command("compose")
@click.argument("x")
@click.argument("i", type=int)
@click.argument("y")
@run_options
@click.pass_context
def cmd_compose(ctx: click.Context, x: str, i: int, y: str, **flags) -> None:
    """
    x o_i y for elements in bracket or JSON form.
    """
    run = _run(ctx, flags)
    try:
        value = compose(
            parse_element(x, run.ambient), i, parse_element(y, run.ambient)
        )
    except OperadixError as error:
        _fail_usage(error)
    _emit(ctx, _format_element(run, value))


@cli.command("normalize")
@click.argument("tree")
@run_options
@click.pass_context
def cmd_normalize(ctx: click.Context, tree: str, **flags) -> None:
    """
    Canonical form of a raw labelled tree (or signed sum of trees).
    """
    run = _run(ctx, flags)
    try:
        value = parse_element(tree, run.ambient)
    except OperadixError as error:
        _fail_usage(error)
    _emit(ctx, _format_element(run, value))


@cli.command("verify")
@click.argument("suite", type=click.Choice([s.value for s in Suite]))
@click.option(
    "--max", "max_weight", type=int, default=None, help="n + |S| bound."
)
@click.option("--m", "level", type=int, default=1, help="Retraction level.")
@click.option("--size", type=int, default=None, help="Census carrier size.")
@run_options
@click.pass_context
def cmd_verify(
    ctx: click.Context,
    suite: str,
    max_weight: Optional[int],
    level: int,
    size: Optional[int],
    **flags,
) -> None:
    """
    Run a verification suite; exit 1 on any violation.
    """
    run = _run(ctx, flags)
    try:
        report = run_suite(Suite(suite), run, max_weight, level, size)
    except (OperadixError, ValidationError) as error:
        _fail_usage(error)
    _emit(ctx, _format_report(run, report))
    if not report.passed:
        sys.exit(EXIT_FAILED)


@cli.command("census")
@click.option("--size", type=int, required=True)
@run_options
@click.pass_context
def cmd_census(ctx: click.Context, size: int, **flags) -> None:
    """
    Associative and unital binary operations on a set of `size` elements.
    """
    run = _run(ctx, flags)
    try:
        census = monoid_census(size)
    except OperadixError as error:
        _fail_usage(error)
    report = CensusReport(census=census, passed=census.passed, **run.stamp())
    if run.format == OutputFormat.JSON:
        _emit(ctx, report.model_dump_json(indent=2))
    else:
        lines = _stamp_lines(report, f"census: |X| = {size}")
        _emit(ctx, "\n".join(lines + [models_to_text([census])]))
    if not report.passed:
        sys.exit(EXIT_FAILED)


@cli.command("enumerate")
@click.argument("kind", type=click.Choice(["tree", "corollas", "basis"]))
@click.option("--arity", type=int, required=True)
@click.option(
    "--degree", type=int, default=None, help="Degree filter for `basis`."
)
@click.option(
    "--min-arity",
    type=int,
    default=1,
    help="Smallest vertex arity for `tree`.",
)
@run_options
@click.pass_context
def cmd_enumerate(
    ctx: click.Context,
    kind: str,
    arity: int,
    degree: Optional[int],
    min_arity: int,
    **flags,
) -> None:
    """
    List planar trees, corollas with corks or canonical basis trees.
    """
    run = _run(ctx, flags)
    if kind == "tree":
        bound = run.max_inner
        trees = enumerate_trees(arity, bound, min_arity=min_arity)
        items = [to_text(t) for t in trees]
    elif kind == "corollas":
        bound = run.max_corks
        operad = (
            UinfAObjects(bound)
            if run.ambient == Ambient.UINF_A
            else UObjects(bound)
        )
        items = [str(x) for x in operad.elements(arity)]
    else:
        bound = run.max_inner
        base = (
            UnitalAssOperad(run.max_arity)
            if run.ambient == Ambient.UINF_UA
            else AssOperad(run.max_arity)
        )
        coproduct = CoproductOperad(
            base, list(generators(run.max_n + 1)), max_inner=bound
        )
        items = []
        for tree in coproduct.elements(arity):
            element = Element.basis(tree, run.ambient)
            if degree is None or element.degree == degree:
                items.append(str(element))

    report = EnumerationReport(
        kind=kind,
        arity=arity,
        bound=bound,
        count=len(items),
        items=items,
        **run.stamp(),
    )
    if run.format == OutputFormat.JSON:
        _emit(ctx, report.model_dump_json(indent=2))
    else:
        _emit(ctx, "\n".join(items + [f"({len(items)} items)"]))


@cli.command("render")
@click.argument("source")
@run_options
@click.pass_context
def cmd_render(ctx: click.Context, source: str, **flags) -> None:
    """
    Draw a corolla with corks (`mu^2(id,u,u)`), a tree or an element.
    """
    run = _run(ctx, flags)
    dot = run.format == OutputFormat.DOT
    corolla = None
    if source.startswith("mu") and "(" in source and "[" not in source:
        try:
            corolla = parse_corolla(source)
        except OperadixError as error:
            _fail_usage(error)

    try:
        if corolla is not None:
            if dot:
                text = corolla_to_dot(corolla).rstrip("\n")
            else:
                text = tree_to_ascii(corolla_to_tree(corolla))
        else:
            element = parse_element(source, run.ambient)
            if dot:
                text = element_to_dot(element).rstrip("\n")
            elif len(element) == 1 and element.items()[0][1] == 1:
                text = tree_to_ascii(element.trees()[0])
            else:
                text = element_to_ascii(element)
    except OperadixError as error:
        _fail_usage(error)
    _emit(ctx, text)


def main() -> None:
    Logging.setup()
    cli(standalone_mode=True)


if __name__ == "__main__":
    main()
