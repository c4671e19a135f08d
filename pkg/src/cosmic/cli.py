"""Command-line entry points: `cosmic` (service and archive tools) and
`corpus` (reference-library pipeline)."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .archive import canonical_json, ingest_archive, save_archive
from .corpus.pipeline import (PipelineConfig, build_corpus, load_raw_items)
from .corpus.stats import corpus_stats
from .gateway.config import ServiceConfig
from .tunnel import DEFAULT_R_MAX, DEFAULT_R_MIN, TunnelStore, layout, save_layout


@click.group()
def cosmic():
    """Speculative space-news service tools."""


@cosmic.command()
@click.option("--config", "config_path", type=click.Path(exists=True),
              required=True, help="Service config JSON file.")
def serve(config_path):
    """Run the HTTP gateway."""
    from .gateway.app import serve as run_server
    run_server(ServiceConfig.from_file(config_path))


@cosmic.command()
@click.option("--source", type=click.Path(exists=True), required=True,
              help="Upstream dataset JSON (array of event records).")
@click.option("--supplements", type=click.Path(), default=None,
              help="Directory of supplement JSON files (full event schema).")
@click.option("--out", "out_path", type=click.Path(), default="archive.json",
              show_default=True)
def ingest(source, supplements, out_path):
    """Build the canonical archive file plus an ingestion report."""
    supplement_files: list = []
    if supplements:
        supplement_files = sorted(Path(supplements).glob("*.json"))
    archive, report = ingest_archive(source, supplement_files)
    save_archive(archive, out_path)
    report_path = Path(out_path).with_name("ingestion-report.json")
    report_path.write_text(canonical_json(report.to_dict()) + "\n", "utf-8")
    click.echo(f"ingested {archive.record_count} events -> {out_path} "
               f"({len(report.skipped)} skipped, report: {report_path})")


@cosmic.command("layout")
@click.option("--store", "store_path", type=click.Path(exists=True), required=True)
@click.option("--out", "out_path", type=click.Path(), default="layout.json",
              show_default=True)
@click.option("--year-min", type=int, default=None)
@click.option("--year-max", type=int, default=None)
@click.option("--r-min", type=float, default=DEFAULT_R_MIN, show_default=True)
@click.option("--r-max", type=float, default=DEFAULT_R_MAX, show_default=True)
def layout_cmd(store_path, out_path, year_min, year_max, r_min, r_max):
    """Export tunnel geometry for offline rendering."""
    store = TunnelStore(store_path)
    years = [i.display_year for i in store.snapshot()]
    if not years and (year_min is None or year_max is None):
        click.echo("store is empty and no year range given", err=True)
        sys.exit(1)
    lo = year_min if year_min is not None else min(years)
    hi = year_max if year_max is not None else max(years)
    result = layout(store, lo, hi, r_min=r_min, r_max=r_max)
    save_layout(result, out_path)
    click.echo(f"{len(result.placements)} placements -> {out_path}")


@click.group()
def corpus():
    """Sci-fi reference corpus pipeline."""


@corpus.command()
@click.option("--input", "input_dir", type=click.Path(exists=True), required=True,
              help="Directory of NDJSON files (+ optional manifest.json).")
@click.option("--config", "config_path", type=click.Path(exists=True), default=None,
              help="Pipeline config JSON; defaults apply when omitted.")
@click.option("--out", "out_dir", type=click.Path(), required=True)
def build(input_dir, config_path, out_dir):
    """Run the full pipeline: library.json, stats.json, pipeline-report.json."""
    config = PipelineConfig.from_file(config_path) if config_path else PipelineConfig()
    summary = build_corpus(input_dir, out_dir, config)
    click.echo(f"{summary['items']} items -> {summary['fragments']} fragments "
               f"in {summary['out']}")


@corpus.command("stats")
@click.option("--input", "input_dir", type=click.Path(exists=True), required=True)
def stats_cmd(input_dir):
    """Print source-group counts and percentages for a corpus directory."""
    items, skipped = load_raw_items(input_dir)
    result = corpus_stats(items)
    click.echo(json.dumps(result.to_dict(), indent=2, ensure_ascii=False))
    if skipped:
        click.echo(f"({len(skipped)} unusable lines skipped)", err=True)


if __name__ == "__main__":
    cosmic()
