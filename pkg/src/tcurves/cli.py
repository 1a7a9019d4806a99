"""Command-line surface for constructing, checking and censusing patchworks."""

from __future__ import annotations

import json
import sys
from fractions import Fraction

import click

from . import census as census_mod
from .families import FAMILY_NAMES, family
from .patchwork import build
from .regularity import verify_lifting
from .scheme import enumerate_schemes, parse, render as render_scheme, stats
from .signs import SignDistribution
from .triangulation import CATALOG_KEYS, Triangulation, catalog, validate


def _load_patchwork(path: str):
    with open(path) as f:
        obj = json.load(f)
    degree = obj["degree"]
    tri = obj["triangulation"]
    if isinstance(tri, str):
        _, t = census_mod.resolve_triangulation(tri)
    else:
        t = Triangulation.from_json_obj(tri)
    sigma = SignDistribution.from_string(degree, obj["signs"])
    return t, sigma


@click.group()
def main() -> None:
    """Combinatorial patchworking of real plane curves."""


@main.command("catalog")
@click.option("--json", "as_json", is_flag=True, help="dump full triangulations")
def catalog_cmd(as_json: bool) -> None:
    """List the shipped triangulations."""
    if as_json:
        out = {key: catalog(key).to_json_obj() for key in CATALOG_KEYS}
        click.echo(json.dumps(out, indent=1))
        return
    for key in CATALOG_KEYS:
        t = catalog(key)
        click.echo(f"{key:16s} degree {t.degree}  {len(t.triangles)} triangles")


@main.command("scheme")
@click.argument("patchwork_file")
def scheme_cmd(patchwork_file: str) -> None:
    """Real scheme of a patchwork file."""
    t, sigma = _load_patchwork(patchwork_file)
    p = build(t, sigma)
    loops, pp, nn, depth = stats(p.scheme)
    click.echo(render_scheme(p.scheme))
    click.echo(f"loops={loops} p={pp} n={nn} max_depth={depth}")


@main.command("render")
@click.argument("patchwork_file")
@click.option("--svg", "svg_out", required=True, help="output SVG path")
def render_cmd(patchwork_file: str, svg_out: str) -> None:
    """Render a patchwork file to SVG."""
    from .render import render_svg

    t, sigma = _load_patchwork(patchwork_file)
    with open(svg_out, "w") as f:
        f.write(render_svg(build(t, sigma)))
    click.echo(f"wrote {svg_out}")


@main.command("verify-liftings")
def verify_liftings_cmd() -> None:
    """Check the strict folding conditions of every catalog lifting."""
    failures = 0
    for key in CATALOG_KEYS:
        t = catalog(key)
        rep = validate(t)
        violations = verify_lifting(t)
        status = "ok" if rep.ok and not violations else "FAIL"
        if status == "FAIL":
            failures += 1
        click.echo(f"{key:16s} valid={rep.ok} violations={len(violations)} {status}")
        for v in violations:
            click.echo(f"  {v}")
    sys.exit(1 if failures else 0)


@main.command("verify-table")
@click.argument("table_csv", required=False)
def verify_table_cmd(table_csv: str | None) -> None:
    """Re-evaluate a support table (defaults to the shipped degree-6 table)."""
    import csv as csv_mod

    if table_csv:
        with open(table_csv) as f:
            rows = list(csv_mod.DictReader(f))
    else:
        rows = census_mod.shipped_support_rows()
    results = census_mod.verify_support_table(rows)
    bad = [r for r in results if not r.ok]
    for r in results:
        mark = "ok" if r.ok else f"FAIL computed={r.computed or r.error}"
        click.echo(f"{r.scheme:24s} {r.triangulation:6s} {mark}")
    click.echo(f"{len(results) - len(bad)}/{len(results)} rows verified")
    sys.exit(1 if bad else 0)


@main.command("census")
@click.option("--degree", type=int, required=True)
@click.option("--triangulation", "tri", required=True, help="catalog key or honeycombN")
@click.option("--jobs", type=int, default=None)
@click.option("--out", "out_path", default=None, help="CSV output path")
@click.option("--json-out", default=None, help="JSON output path")
@click.option("--sample", "n_sample", type=int, default=None, help="sample size (exhaustive when absent)")
@click.option("--seed", type=int, default=2024)
@click.option("--checkpoint", default=None, help="checkpoint file for exhaustive runs")
def census_cmd(degree, tri, jobs, out_path, json_out, n_sample, seed, checkpoint) -> None:
    """Histogram of schemes over canonical sign classes."""
    if n_sample:
        hist = census_mod.sample(degree, tri, n_sample, seed, jobs=jobs)
    else:
        hist = census_mod.exhaustive(degree, tri, jobs=jobs, checkpoint_path=checkpoint)
    for scheme, count in hist.sorted_rows():
        click.echo(f"{count:>12}  {scheme}")
    click.echo(
        f"total={hist.total} schemes={len(hist.counts)} "
        f"mean_loops={hist.mean_loops:.4f} elapsed={hist.elapsed:.1f}s"
    )
    if out_path:
        hist.write_csv(out_path)
    if json_out:
        hist.write_json(json_out)


@main.command("search")
@click.option("--degree", type=int, required=True)
@click.option("--targets", default="all", help="'all' or 'u'-joined scheme list separated by ;")
@click.option("--triangulations", "tri_list", default=None, help="comma-separated keys")
@click.option("--budget", type=int, default=10_000_000)
@click.option("--strategy", default="family-seeded",
              type=click.Choice(["family-seeded", "random", "sequential"]))
@click.option("--seed", type=int, default=2024)
@click.option("--jobs", type=int, default=None)
@click.option("--out", "out_path", default=None, help="realizer table CSV")
def search_cmd(degree, targets, tri_list, budget, strategy, seed, jobs, out_path) -> None:
    """Hunt sign classes realizing target schemes."""
    if targets == "all":
        goal = list(enumerate_schemes(degree))
        goal = [s for s in goal if s.loops > 0]
    else:
        goal = [parse(s) for s in targets.split(";")]
    if tri_list:
        tris = tri_list.split(",")
    else:
        tris = [k for k in CATALOG_KEYS if catalog(k).degree == degree] or [
            f"honeycomb{degree}"
        ]
    result = census_mod.search(
        degree, goal, tris, budget=budget, strategy=strategy, seed=seed, jobs=jobs
    )
    for s in sorted(result.found):
        r = result.found[s]
        click.echo(f"{s:24s} {r.triangulation:16s} {r.signs}")
    click.echo(
        f"found {len(result.found)}/{len(goal)} after {result.evaluations} "
        f"evaluations in {result.elapsed:.1f}s"
    )
    if result.missing:
        click.echo("missing: " + ", ".join(result.missing))
    if out_path:
        result.write_csv(out_path)
    sys.exit(0 if result.complete else 1)


@main.command("families")
@click.option("--name", required=True, type=click.Choice(FAMILY_NAMES))
@click.option("--degree", type=int, required=True)
def families_cmd(name: str, degree: int) -> None:
    """Expected vs computed scheme for one family instance."""
    spec = family(name, degree)
    computed = build(spec.triangulation, spec.signs).scheme
    click.echo(f"expected: {render_scheme(spec.expected_scheme)}")
    click.echo(f"computed: {render_scheme(computed)}")
    sys.exit(0 if computed == spec.expected_scheme else 1)


@main.command("export-poly")
@click.argument("patchwork_file")
@click.option("--t", "t_text", default=None, help="rational substitution p/q for t")
def export_poly_cmd(patchwork_file: str, t_text: str | None) -> None:
    """Polynomial of a patchwork per the patchworking theorem."""
    from .polynomial import export_polynomial

    t, sigma = _load_patchwork(patchwork_file)
    t_value = Fraction(t_text) if t_text else None
    click.echo(export_polynomial(t, sigma, t_value))


@main.command("serve")
@click.option("--port", type=int, default=8321)
@click.option("--host", default="127.0.0.1")
def serve_cmd(port: int, host: str) -> None:
    """Run the explorer evaluation service."""
    from .service import serve

    serve(port=port, host=host)


if __name__ == "__main__":
    main()
