"""Command-line interface for validating, exploring and ranking models.

Exit codes: 0 success, 1 usage error, 2 model error, 3 infeasible.
"""
from __future__ import annotations

import json
import sys
from typing import Optional

import click

from . import __version__
from .fuzzy import value_centroid
from .goal_model import (
    GraphError,
    RiskLevel,
    Tactic,
    apply_tactic,
    export_dot,
    natural_key,
    obstacle_risk,
    validate,
)
from .model_io import Model, ModelError, load_model, write_model
from .ranking import (
    EmptyFeasibleSetError,
    RankedResult,
    crisp_rank,
    divergence_report,
    feasible_set,
    rank,
    tightest_constraints,
)
from .space import (
    BACKENDS,
    ConstraintSet,
    enumerate_architectures,
    score_space,
    space_size,
)

EXIT_USAGE = 1
EXIT_MODEL = 2
EXIT_INFEASIBLE = 3


def _load(path: str) -> Model:
    try:
        return load_model(path)
    except FileNotFoundError:
        raise ModelError(f"model file not found: {path}")


def default_weights(model: Model) -> dict[str, float]:
    """Per-goal priorities from the model; the root goal is not scored."""
    return {g.id: float(g.weight) for g in model.graph.goals
            if g.id != model.graph.root_goal}


def _parse_weights(model: Model, text: Optional[str]) -> dict[str, float]:
    if not text:
        return default_weights(model)
    try:
        if text.strip().startswith("{"):
            raw = json.loads(text)
        else:
            with open(text, "rb") as fh:
                raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise click.UsageError(f"cannot read weights {text!r}: {exc}")
    weights = default_weights(model)
    for gid, value in raw.items():
        weights[str(gid)] = float(value)
    return weights


def _constraints(model: Model, budget: Optional[float]) -> ConstraintSet:
    if budget is None:
        return model.constraints
    return ConstraintSet(goal_thresholds=model.constraints.goal_thresholds,
                         cost_budget=budget)


def _table(rows: list[list[str]], header: list[str]) -> str:
    widths = [max(len(str(r[i])) for r in [header] + rows)
              for i in range(len(header))]
    lines = ["  ".join(str(c).ljust(w) for c, w in zip(row, widths)).rstrip()
             for row in [header] + rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def result_document(model: Model, result: RankedResult, total: int,
                    ruled_out: int, top: Optional[int]) -> dict:
    rows = result.rows if top is None else result.rows[:top]
    return {
        "format_version": 1,
        "parameters": {
            "k": result.k,
            "backend": result.backend,
            "weights": {gid: result.weights[gid]
                        for gid in sorted(result.weights, key=natural_key)},
            "goal_thresholds": {
                gid: result.constraints.goal_thresholds[gid]
                for gid in sorted(result.constraints.goal_thresholds,
                                  key=natural_key)},
            "cost_budget": result.constraints.cost_budget,
            "top": top,
        },
        "counts": {"total": total, "ruled_out": ruled_out,
                   "feasible": total - ruled_out},
        "rows": [
            {
                "rank": row.rank,
                "index": row.scored.architecture.index,
                "selection": {d: row.scored.architecture.selection[d]
                              for d in sorted(row.scored.architecture.selection,
                                              key=natural_key)},
                "goal_centroids": {
                    gid: value_centroid(row.scored.goal_scores[gid])
                    for gid in sorted(row.scored.goal_scores, key=natural_key)},
                "total": _quad_or_summary(row.scored.total),
                "cost_centroid": value_centroid(row.scored.cost),
                "ch": row.chen_index,
            }
            for row in rows],
    }


def _quad_or_summary(total) -> list[float]:
    from .fuzzy import FuzzyNumber
    if isinstance(total, FuzzyNumber):
        return list(total.quadruple())
    lo, hi = total.support()
    return [lo, lo, hi, hi]  # sampled sets summarized by their support


def dump_result(doc: dict, path: str):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


@click.group()
@click.version_option(__version__)
def cli():
    """Goal-obstacle modelling and fuzzy design-space exploration."""


@cli.command("validate")
@click.argument("model_path", type=click.Path())
def cmd_validate(model_path):
    """Report structural diagnostics; nonzero exit if any."""
    model = _load(model_path)
    problems = validate(model.graph)
    if problems:
        for p in problems:
            click.echo(p)
        raise SystemExit(EXIT_MODEL)
    click.echo("model is valid")


@cli.command("risks")
@click.argument("model_path", type=click.Path())
@click.option("--threshold", type=click.Choice([r.name for r in RiskLevel]),
              default=None, help="Only show obstacles at or above this risk.")
def cmd_risks(model_path, threshold):
    """Risk table for all assessed obstacles."""
    model = _load(model_path)
    floor = RiskLevel[threshold] if threshold else None
    rows = []
    for o in sorted(model.graph.obstacles, key=lambda n: natural_key(n.id)):
        risk = obstacle_risk(o)
        if floor is not None and risk < floor:
            continue
        rows.append([o.id, o.name, o.likelihood.label(), o.consequence.label(),
                     risk.name, o.resolution_status.value])
    click.echo(_table(rows, ["id", "obstacle", "likelihood", "consequence",
                             "risk", "status"]))


@cli.command("size")
@click.argument("model_path", type=click.Path())
def cmd_size(model_path):
    """Number of architectures in the solution space."""
    model = _load(model_path)
    click.echo(space_size(model.graph))


@cli.command("enumerate")
@click.argument("model_path", type=click.Path())
@click.option("--limit", type=int, default=10, show_default=True)
def cmd_enumerate(model_path, limit):
    """List the first architectures in canonical order."""
    model = _load(model_path)
    decisions = None
    rows = []
    for arch in enumerate_architectures(model.graph):
        if arch.index >= limit:
            break
        if decisions is None:
            decisions = sorted(arch.selection, key=natural_key)
        rows.append([arch.index] + [arch.selection[d] for d in decisions])
    click.echo(_table(rows, ["index"] + (decisions or [])))


def _ranked(model: Model, weights, budget, k, backend, workers=1):
    constraints = _constraints(model, budget)
    scored = score_space(model.graph, model.matrix, weights, backend,
                         model.settings.universe_hi, model.settings.normalize,
                         workers)
    result = feasible_set(model.graph, model.matrix, constraints, weights,
                          backend, scored=scored)
    if not result.feasible:
        raise EmptyFeasibleSetError(
            f"all {result.total} architectures violate the constraints",
            tightest_constraints(scored, constraints, model.graph))
    ranked = rank(result.feasible, k, weights, constraints, backend)
    return ranked, result


@cli.command("rank")
@click.argument("model_path", type=click.Path())
@click.option("--top", type=int, default=10, show_default=True)
@click.option("--k", type=float, default=None,
              help="Ranking exponent (defaults to the model setting).")
@click.option("--backend", type=click.Choice(BACKENDS), default=None)
@click.option("--weights", "weights_arg", default=None,
              help="JSON object (inline) or path to a JSON weights file.")
@click.option("--budget", type=float, default=None,
              help="Cost budget; overrides the model's budget.")
@click.option("--workers", type=int, default=1, show_default=True)
@click.option("--out", type=click.Path(), default=None,
              help="Write the machine-readable result document here.")
def cmd_rank(model_path, top, k, backend, weights_arg, budget, workers, out):
    """Score, filter and rank the solution space."""
    model = _load(model_path)
    weights = _parse_weights(model, weights_arg)
    k = model.settings.k if k is None else k
    backend = backend or model.settings.backend
    ranked, result = _ranked(model, weights, budget, k, backend, workers)
    click.echo(f"total {result.total}  ruled out {result.ruled_out}  "
               f"feasible {result.remaining}")
    rows = []
    for row in ranked.rows[:top]:
        sel = row.scored.architecture.selection
        rows.append([row.rank, row.scored.architecture.index,
                     f"{row.chen_index:.4f}",
                     f"{value_centroid(row.scored.total):.3f}",
                     f"{value_centroid(row.scored.cost):.1f}",
                     " ".join(sel[d] for d in sorted(sel, key=natural_key))])
    click.echo(_table(rows, ["rank", "index", "CH", "total~", "cost~",
                             "selection"]))
    if out:
        dump_result(result_document(model, ranked, result.total,
                                    result.ruled_out, top), out)


@cli.command("optimum")
@click.argument("model_path", type=click.Path())
@click.option("--k", type=float, default=None)
@click.option("--backend", type=click.Choice(BACKENDS), default=None)
@click.option("--weights", "weights_arg", default=None)
@click.option("--budget", type=float, default=None)
def cmd_optimum(model_path, k, backend, weights_arg, budget):
    """The constraint-satisfying architecture with the best ranking index."""
    model = _load(model_path)
    weights = _parse_weights(model, weights_arg)
    k = model.settings.k if k is None else k
    backend = backend or model.settings.backend
    ranked, _ = _ranked(model, weights, budget, k, backend)
    best = ranked.rows[0]
    sel = best.scored.architecture.selection
    click.echo(f"optimum: architecture {best.scored.architecture.index} "
               f"(CH={best.chen_index:.4f})")
    for d in sorted(sel, key=natural_key):
        alt = model.graph.alternative_by_id[sel[d]]
        click.echo(f"  {d} -> {alt.id}. {alt.name}")


@cli.command("compare")
@click.argument("model_path", type=click.Path())
@click.option("--top", type=int, default=10, show_default=True)
@click.option("--k", type=float, default=None)
@click.option("--weights", "weights_arg", default=None)
@click.option("--budget", type=float, default=None)
@click.option("--out", type=click.Path(), default=None)
def cmd_compare(model_path, top, k, weights_arg, budget, out):
    """Fuzzy-vs-crisp rankings and divergence headline."""
    model = _load(model_path)
    weights = _parse_weights(model, weights_arg)
    k = model.settings.k if k is None else k
    ranked, result = _ranked(model, weights, budget, k, "fuzzy_sum")
    crisp = crisp_rank(result.feasible, model.matrix, weights)
    report = divergence_report(ranked, crisp)
    click.echo(f"crisp winner's fuzzy rank: {report.crisp_winner_fuzzy_rank}")
    click.echo(f"fuzzy winner's crisp rank: {report.fuzzy_winner_crisp_rank}")
    click.echo(f"spearman rho: {report.spearman_rho:.4f}")
    crisp_by_pos = {pos: (idx, score) for idx, score, pos in crisp}
    rows = []
    for row in ranked.rows[:top]:
        idx, score = crisp_by_pos.get(row.rank, ("-", float("nan")))
        rows.append([row.rank, row.scored.architecture.index,
                     f"{row.chen_index:.4f}", idx, f"{score:.2f}"])
    click.echo(_table(rows, ["rank", "fuzzy index", "CH",
                             "crisp index", "crisp score"]))
    if out:
        doc = {
            "format_version": 1,
            "headline": {
                "crisp_winner_fuzzy_rank": report.crisp_winner_fuzzy_rank,
                "fuzzy_winner_crisp_rank": report.fuzzy_winner_crisp_rank,
                "spearman_rho": report.spearman_rho,
            },
            "rank_pairs": [{"index": i, "fuzzy_rank": f, "crisp_rank": c}
                           for i, f, c in report.rank_pairs],
        }
        dump_result(doc, out)


@cli.command("tactic")
@click.argument("model_path", type=click.Path())
@click.option("--label", "label", required=True,
              type=click.Choice([t.value for t in Tactic]))
@click.option("--params", "params_arg", required=True,
              help="JSON object (inline) or path to a JSON params file.")
@click.option("--out", type=click.Path(), required=True,
              help="Where to write the rewritten model.")
def cmd_tactic(model_path, label, params_arg, out):
    """Apply a resolution tactic and write the resulting model."""
    model = _load(model_path)
    try:
        if params_arg.strip().startswith("{"):
            params = json.loads(params_arg)
        else:
            with open(params_arg, "rb") as fh:
                params = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise click.UsageError(f"cannot read params {params_arg!r}: {exc}")
    graph = apply_tactic(model.graph, label, params)
    new_model = Model(graph=graph,
                      matrix=model.matrix, constraints=model.constraints,
                      settings=model.settings, name=model.name,
                      notes=model.notes)
    with open(out, "wb") as fh:
        fh.write(write_model(new_model))
    click.echo(f"wrote {out}")


@cli.command("export-dot")
@click.argument("model_path", type=click.Path())
@click.option("--out", type=click.Path(), default=None,
              help="Write DOT here instead of standard output.")
def cmd_export_dot(model_path, out):
    """GraphViz rendering of the goal model."""
    model = _load(model_path)
    dot = export_dot(model.graph)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(dot)
    else:
        click.echo(dot, nl=False)


@cli.command("serve")
@click.argument("model_path", type=click.Path())
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
def cmd_serve(model_path, port, host):
    """Run the HTTP what-if service for the explorer UI."""
    import uvicorn

    from .service import create_app
    model = _load(model_path)
    uvicorn.run(create_app(model), host=host, port=port)


def main(argv: Optional[list[str]] = None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
        return 0
    except click.UsageError as exc:
        click.echo(exc.format_message(), err=True)
        if exc.ctx is not None:
            click.echo(exc.ctx.get_usage(), err=True)
        return EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except click.exceptions.Abort:
        return EXIT_USAGE
    except EmptyFeasibleSetError as exc:
        click.echo(f"infeasible: {exc}", err=True)
        for gid, info in exc.tightest.get("goals", {}).items():
            click.echo(f"  {gid}: threshold {info['threshold']} "
                       f"({info['direction']}), best achievable "
                       f"{info['best_achievable']:.3f}", err=True)
        budget_info = exc.tightest.get("cost_budget")
        if budget_info:
            click.echo(f"  cost: budget {budget_info['budget']}, minimum "
                       f"achievable {budget_info['min_achievable']:.1f}",
                       err=True)
        return EXIT_INFEASIBLE
    except (ModelError, GraphError) as exc:
        click.echo(f"model error: {exc}", err=True)
        return EXIT_MODEL
    except SystemExit as exc:
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
