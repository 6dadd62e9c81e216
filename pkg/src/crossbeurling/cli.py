"""Thin command-line client for the verification service.

Every subcommand goes through the HTTP interface: against a remote server
when ``--server`` is given, otherwise against the in-process ASGI app, so
no separate server is needed for local use.  Configs are JSON files (or
TOML with the same schema).  ``verify`` exits nonzero when any check fails.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .harness import SEED_ENV_VAR, SUITE_NAMES


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    p = Path(path)
    text = p.read_text()
    if p.suffix.lower() == ".toml":
        try:
            import tomllib
        except ImportError:
            import tomli as tomllib

        return tomllib.loads(text)
    return json.loads(text)


class ServiceClient:
    """HTTP client: remote when a server URL is given, in-process otherwise."""

    def __init__(self, server: str | None):
        if server:
            import httpx

            self._client = httpx.Client(base_url=server, timeout=300.0)
        else:
            from fastapi.testclient import TestClient

            from .service import app

            self._client = TestClient(app)

    def post(self, path: str, payload: dict) -> dict:
        response = self._client.post(path, json=payload)
        if response.status_code >= 400:
            try:
                detail = response.json().get("detail")
            except Exception:
                detail = response.text
            raise click.ClickException(f"{path} failed ({response.status_code}): {detail}")
        return response.json()


@click.group()
@click.option("--server", default=None, help="Base URL of a running service; defaults to in-process.")
@click.pass_context
def main(ctx, server):
    """Workbench for crossed products of normed algebras over finite groups."""
    ctx.obj = {"server": server}


def _client(ctx) -> ServiceClient:
    return ServiceClient(ctx.obj.get("server"))


@main.command()
@click.argument("config", required=False, type=click.Path(exists=True))
@click.pass_context
def validate(ctx, config):
    """Validate a config and print the resolved fixtures."""
    data = _client(ctx).post("/validate", _load_config(config))
    click.echo(json.dumps(data, indent=2, sort_keys=True))


@main.command()
@click.argument("config", required=False, type=click.Path(exists=True))
@click.option("-f", "fn_f", required=True, type=click.Path(exists=True), help="JSON file with the left factor.")
@click.option("-g", "fn_g", required=True, type=click.Path(exists=True), help="JSON file with the right factor.")
@click.pass_context
def convolve(ctx, config, fn_f, fn_g):
    """Twisted-convolve two functions over the configured system."""
    payload = {
        "config": _load_config(config),
        "f": json.loads(Path(fn_f).read_text()),
        "g": json.loads(Path(fn_g).read_text()),
    }
    data = _client(ctx).post("/convolve", payload)
    click.echo(json.dumps(data, indent=2, sort_keys=True))


@main.command("build-crossed")
@click.argument("config", required=False, type=click.Path(exists=True))
@click.pass_context
def build_crossed(ctx, config):
    """Build crossed products and print kernel/quotient dimensions."""
    data = _client(ctx).post("/build-crossed", {"config": _load_config(config)})
    click.echo(json.dumps(data, indent=2, sort_keys=True))


@main.command()
@click.argument("config", required=False, type=click.Path(exists=True))
@click.option("--suite", default="all", type=click.Choice(SUITE_NAMES), show_default=True)
@click.option("--seed", default=None, type=int, help=f"Seed override (default from config or ${SEED_ENV_VAR}).")
@click.option("--tol", default=None, type=float, help="Equality tolerance override.")
@click.option("--timings", is_flag=True, help="Include elapsed times (breaks byte-identical output).")
@click.option("-o", "--output", default=None, type=click.Path(), help="Write the JSON report to a file.")
@click.option("--format", "fmt", default="text", type=click.Choice(["json", "text"]), show_default=True)
@click.pass_context
def verify(ctx, config, suite, seed, tol, timings, output, fmt):
    """Run a verification suite; exit status is nonzero on any failing check."""
    payload = {
        "config": _load_config(config),
        "suite": suite,
        "seed": seed,
        "tolerance": tol,
        "timings": timings,
    }
    data = _client(ctx).post("/verify", payload)
    report = data["report"]
    if output:
        Path(output).write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    if fmt == "json":
        click.echo(json.dumps(report, indent=2, sort_keys=True))
    else:
        rendered = _client(ctx).post("/report/render", {"report": report, "format": "text"})
        click.echo(rendered["rendered"], nl=False)
    if not data["ok"]:
        sys.exit(1)


@main.command()
@click.argument("report_file", type=click.Path(exists=True))
@click.option("--format", "fmt", default="text", type=click.Choice(["json", "text"]), show_default=True)
@click.pass_context
def report(ctx, report_file, fmt):
    """Re-render a stored JSON report as text or normalized JSON."""
    stored = json.loads(Path(report_file).read_text())
    data = _client(ctx).post("/report/render", {"report": stored, "format": fmt})
    click.echo(data["rendered"], nl=False)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8848, show_default=True)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
