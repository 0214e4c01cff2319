"""Command-line interface.

Subcommands cover the full workflow: validate a graph, test its implications
against data, find adjustment sets, estimate effects, simulate from a
structural model, and serve the HTTP facade. The CLI is stateless per
invocation; the service holds workspace state for the iterative loop.
"""
from __future__ import annotations

import os
import sys

import click

from causeway import dagfile, report, scm
from causeway.citest import INCONSISTENT, test_implications
from causeway.data import Schema, load_table
from causeway.effects import EstimateConfig, estimate_effect, unadjusted_estimate
from causeway.errors import CausewayError
from causeway.graph import minimal_adjustment_sets, satisfies_backdoor

EXIT_ERROR = 1
EXIT_INCONSISTENT = 4


def _load_graph(path):
    with open(path, "r", encoding="utf-8") as fh:
        return dagfile.parse(fh.read()).graph()


def _load_data(path, graph):
    with open(path, "r", encoding="utf-8") as fh:
        return load_table(fh, Schema(graph.variables))


def _emit(text: str, doc: dict, out: str | None):
    click.echo(text, nl=False)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(report.to_json(doc))


@click.group()
def main():
    """Graphical causal inference workbench for categorical data."""


@main.command()
@click.argument("graph_file", type=click.Path(exists=True))
def validate(graph_file):
    """Validate a dagfile: structure, acyclicity, level declarations."""
    try:
        g = _load_graph(graph_file)
    except CausewayError as exc:
        click.echo(f"invalid: {exc}", err=True)
        sys.exit(EXIT_ERROR)
    click.echo(
        f"valid DAG: {len(g.variables)} variables, {len(g.edges)} edges, "
        f"id {dagfile.fingerprint(g)}"
    )


@main.command()
@click.argument("graph_file", type=click.Path(exists=True))
@click.argument("data_file", type=click.Path(exists=True))
@click.option("--alpha", default=0.01, show_default=True, help="Significance level.")
@click.option("--method", default="gsq", type=click.Choice(["gsq", "pearson"]), show_default=True)
@click.option("--out", type=click.Path(), help="Also write the structured JSON report here.")
def implications(graph_file, data_file, alpha, method, out):
    """Test the graph's implied independencies against a data file."""
    try:
        g = _load_graph(graph_file)
        t = _load_data(data_file, g)
        rep = test_implications(g, t, alpha=alpha, method=method)
    except CausewayError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_ERROR)
    _emit(report.render_implications(rep), report.implication_doc(rep), out)
    if rep.verdict == INCONSISTENT:
        sys.exit(EXIT_INCONSISTENT)


@main.command()
@click.argument("graph_file", type=click.Path(exists=True))
@click.argument("treatment")
@click.argument("outcome")
@click.option("--out", type=click.Path())
def adjust(graph_file, treatment, outcome, out):
    """List minimal back-door adjustment sets for (treatment, outcome)."""
    try:
        g = _load_graph(graph_file)
        sets = minimal_adjustment_sets(g, treatment, outcome)
    except CausewayError as exc:
        raise click.UsageError(str(exc))
    _emit(
        report.render_adjustments(g, sets, treatment, outcome),
        report.adjustment_doc(g, sets, treatment, outcome),
        out,
    )


@main.command()
@click.argument("graph_file", type=click.Path(exists=True))
@click.argument("data_file", type=click.Path(exists=True))
@click.argument("treatment")
@click.argument("outcome")
@click.option("--adjust", "adjust_spec", default=None,
              help="Comma-separated adjustment set; default: smallest minimal set.")
@click.option("--success", default=None,
              help="Comma-separated outcome levels counted as the event.")
@click.option("--measure", default="rr", type=click.Choice(["rr", "or"]), show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--replicates", default=500, show_default=True)
@click.option("--compare-unadjusted", is_flag=True, help="Also report the unadjusted estimates.")
@click.option("--override-adjustment", is_flag=True,
              help="Estimate even if the adjustment set fails the back-door criterion.")
@click.option("--out", type=click.Path())
def estimate(graph_file, data_file, treatment, outcome, adjust_spec, success, measure,
             seed, replicates, compare_unadjusted, override_adjustment, out):
    """Estimate the causal effect of a treatment on an outcome via IPW."""
    try:
        g = _load_graph(graph_file)
        t = _load_data(data_file, g)
        if adjust_spec is not None:
            adjustment = tuple(s for s in adjust_spec.split(",") if s)
        else:
            sets = minimal_adjustment_sets(g, treatment, outcome)
            if not sets:
                raise CausewayError(
                    f"no valid adjustment set exists for ({treatment}, {outcome})"
                )
            adjustment = sets[0].variables
        config = EstimateConfig(
            graph=g,
            outcome_success=tuple(success.split(",")) if success else None,
            measure=measure,
            replicates=replicates,
            seed=seed,
            override_adjustment=override_adjustment,
        )
        estimates = estimate_effect(t, treatment, outcome, adjustment, config)
        comparison = None
        if compare_unadjusted:
            comparison = unadjusted_estimate(t, treatment, outcome, config)
        certified = satisfies_backdoor(g, treatment, outcome, adjustment)
    except CausewayError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_ERROR)
    certification = "backdoor-certified" if certified else "override (not certified)"
    text = report.render_estimates(estimates, comparison)
    doc = report.estimation_doc(estimates, config, comparison, certification)
    _emit(text + f"Adjustment: {certification}\n", doc, out)


@main.command()
@click.argument("scm_file", type=click.Path(exists=True))
@click.option("--n", default=1000, show_default=True, help="Number of rows.")
@click.option("--seed", default=0, show_default=True)
@click.option("--out", type=click.Path(), required=True, help="Output CSV path.")
def simulate(scm_file, n, seed, out):
    """Sample a data file from a structural model file."""
    try:
        with open(scm_file, "r", encoding="utf-8") as fh:
            model = scm.from_parsed(dagfile.parse(fh.read()))
        table = scm.sample(model, n, seed)
    except CausewayError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_ERROR)
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(table.to_csv())
    click.echo(f"wrote {table.row_count} rows to {out}")


@main.command()
@click.option("--port", default=8787, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--workspace", default=None,
              help="Workspace directory (default: $CAUSEWAY_WORKSPACE or cwd).")
def serve(port, host, workspace):
    """Run the HTTP facade for the iterative refinement loop."""
    import uvicorn

    from causeway.server import create_app

    workspace = workspace or os.environ.get("CAUSEWAY_WORKSPACE") or os.getcwd()
    app = create_app(workspace)
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
