"""Command-line front end.

Usage:
    jlbound bound --method theorem1 --n 50 --epsilon 0.1 --beta 1
    jlbound table --preset table1 --format csv
    jlbound project --input X.csv --output T.csv --method theorem3 --pairing l2l1 --epsilon 0.1
    jlbound verify --method exact --n 50 --epsilon 0.3 --beta 1 --replicates 2000 --seed 7

Exit codes: 0 success, 1 I/O failure, 2 usage or domain error,
3 Monte Carlo run contradicts the guarantee.
"""

from __future__ import annotations

import functools
import json
import os
import sys

import click

from . import io as csvio
from . import mcverify, projection, tables
from .bounds import BoundQuery, Method, compute_bound, matousek_bound
from .errors import DomainError

__all__ = ["main"]

EXIT_IO = 1
EXIT_USAGE = 2
EXIT_VERIFY = 3

_FORMATS = click.Choice(["md", "csv", "json"])
_METHODS = click.Choice([m.value for m in Method])


def _fail(msg: str, code: int) -> None:
    click.echo(f"Error: {msg}", err=True)
    sys.exit(code)


def common_options(f):
    """--format/--seed/--jobs, accepted before or after the subcommand."""

    @click.option("--format", "fmt", type=_FORMATS, default=None, help="Output format.")
    @click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=None, help="Master RNG seed.")
    @click.option("--jobs", type=click.IntRange(min=1), default=None, help="Worker threads.")
    @click.pass_context
    @functools.wraps(f)
    def wrapper(ctx, fmt, seed, jobs, **kwargs):
        g = ctx.obj or {}
        opts = {
            "fmt": fmt or g.get("fmt") or "md",
            "seed": seed if seed is not None else (g.get("seed") or 0),
            "jobs": jobs or g.get("jobs") or os.cpu_count() or 1,
        }
        try:
            return f(opts, **kwargs)
        except DomainError as exc:
            _fail(str(exc), EXIT_USAGE)
        except OSError as exc:
            _fail(str(exc), EXIT_IO)

    return wrapper


@click.group()
@click.option("--format", "fmt", type=_FORMATS, default=None, help="Default output format.")
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=None, help="Default RNG seed.")
@click.option("--jobs", type=click.IntRange(min=1), default=None, help="Default worker threads.")
@click.pass_context
def main(ctx, fmt, seed, jobs):
    """Johnson-Lindenstrauss target dimensions, projections and checks."""
    ctx.obj = {"fmt": fmt, "seed": seed, "jobs": jobs}


def _kv_render(d: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(d, indent=2) + "\n"
    flat = {k: v for k, v in d.items() if not isinstance(v, (dict, list))}
    flat.update(d.get("intermediates", {}))
    if d.get("notes"):
        flat["notes"] = "; ".join(d["notes"])
    if fmt == "csv":
        return "key,value\n" + "".join(f"{k},{v!r}\n" if isinstance(v, float) else f"{k},{v}\n" for k, v in flat.items())
    return "| key | value |\n|---|---|\n" + "".join(f"| {k} | {v} |\n" for k, v in flat.items())


@main.command()
@click.option("--method", type=str, required=True)
@click.option("--n", type=int, required=True)
@click.option("--epsilon", type=float, required=True)
@click.option("--beta", type=float, default=0.0, show_default=True)
@click.option("--C", "C", type=float, default=1.0, help="Constant of the matousek bound.")
@common_options
def bound(opts, method, n, epsilon, beta, C):
    """Minimum target dimension k for one method."""
    if method not in {m.value for m in Method}:
        raise DomainError(f"unknown method {method!r}; choose from {', '.join(m.value for m in Method)}")
    q = BoundQuery(n, epsilon, beta)
    res = matousek_bound(q, C=C) if method == Method.MATOUSEK.value else compute_bound(method, q)
    out = {"n": n, "epsilon": epsilon, "beta": beta, **res.to_dict()}
    for note in res.notes:
        click.echo(f"note: {note}", err=True)
    click.echo(_kv_render(out, opts["fmt"]), nl=False)


@main.command()
@click.option("--preset", type=click.Choice(["table1", "table2"]), default=None)
@click.option("--custom", is_flag=True, help="Use the --n/--epsilon/--beta grid.")
@click.option("--n", "n_values", type=int, multiple=True)
@click.option("--epsilon", "eps_values", type=float, multiple=True)
@click.option("--beta", "beta_values", type=float, multiple=True)
@click.option("--note-typo/--no-note-typo", default=True, help="Flag the Table 2 row-label typo on stderr.")
@common_options
def table(opts, preset, custom, n_values, eps_values, beta_values, note_typo):
    """Sweep methods over a grid; presets reproduce the published tables."""
    if bool(preset) == bool(custom):
        raise DomainError("give exactly one of --preset or --custom")
    req = tables.TableRequest(preset or "custom", list(n_values), list(eps_values), list(beta_values))
    cols, rows = tables.build_table(req, jobs=opts["jobs"])
    click.echo(tables.render(cols, rows, opts["fmt"], name=req.which), nl=False)
    if req.which == "table2" and note_typo:
        click.echo(tables.TABLE2_TYPO_NOTE, err=True)


@main.command()
@click.option("--input", "input_path", type=click.Path(dir_okay=False), required=True)
@click.option("--output", "output_path", type=click.Path(dir_okay=False), required=True)
@click.option("--distribution", type=click.Choice(["gaussian", "achlioptas"]), default="gaussian")
@click.option("--q", type=float, default=3.0, show_default=True, help="Achlioptas sparsity.")
@click.option("--pairing", type=click.Choice(["l2l2", "l2l1"]), default=None)
@click.option("--k", type=int, default=None, help="Explicit target dimension.")
@click.option("--method", type=_METHODS, default=None, help="Derive k from this bound.")
@click.option("--epsilon", type=float, default=None)
@click.option("--beta", type=float, default=0.0)
@click.option("--header", is_flag=True, help="Input has, and output gets, a header row.")
@common_options
def project(opts, input_path, output_path, distribution, q, pairing, k, method, epsilon, beta, header):
    """Project the rows of a CSV matrix."""
    X = csvio.read_csv_matrix(input_path, header=header)
    if (k is None) == (method is None):
        raise DomainError("give exactly one of --k or --method")
    if method is not None:
        if epsilon is None:
            raise DomainError("--method needs --epsilon")
        k = compute_bound(method, BoundQuery(X.shape[0], epsilon, beta)).k
        pairing = pairing or Method(method).pairing
    spec = projection.ProjectionSpec(
        k=k, p=X.shape[1], distribution=distribution, q=q, pairing=pairing or "l2l2", seed=opts["seed"]
    )
    T = projection.project(X, spec)
    csvio.write_csv_matrix(output_path, T, header=header)
    click.echo(json.dumps({"projection_spec": spec.to_dict(), "method": method}, sort_keys=True), err=True)


@main.command()
@click.option("--method", type=_METHODS, default="exact", show_default=True)
@click.option("--n", type=int, required=True)
@click.option("--epsilon", type=float, required=True)
@click.option("--beta", type=float, default=0.0, show_default=True)
@click.option("--pairing", type=click.Choice(["l2l2", "l2l1"]), default=None)
@click.option("--distribution", type=click.Choice(["gaussian", "achlioptas"]), default="gaussian")
@click.option("--q", type=float, default=3.0, show_default=True)
@click.option("--p", type=int, default=200, show_default=True, help="Ambient dimension of generated points.")
@click.option("--replicates", type=int, default=100, show_default=True)
@click.option("--points", "point_source", type=click.Choice(["gaussian", "hypercube", "file"]), default="gaussian")
@click.option("--points-file", type=click.Path(dir_okay=False), default=None)
@click.option("--k", type=int, default=None, help="Override the method's k.")
@click.option("--report", "report_path", type=click.Path(dir_okay=False), default=None,
              help="Write the JSON report here instead of stdout.")
@common_options
def verify(opts, method, n, epsilon, beta, pairing, distribution, q, p, replicates,
           point_source, points_file, k, report_path):
    """Monte Carlo check of a bound's distortion guarantee."""
    if points_file and point_source != "file":
        point_source = "file"
    spec = mcverify.VerifySpec(
        query=BoundQuery(n, epsilon, beta),
        method=Method(method),
        pairing=pairing,
        p=p,
        replicates=replicates,
        point_source=point_source,
        points_path=points_file,
        distribution=distribution,
        q=q,
        seed=opts["seed"],
        k=k,
    )
    report = mcverify.run_pair_trials(spec, jobs=opts["jobs"])
    text = json.dumps(report.to_dict(), indent=2) + "\n"
    if report_path:
        with open(report_path, "w", encoding="ascii") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)
    if not report.satisfied:
        click.echo("verification failed: empirical rates violate the guarantee beyond 3 SE", err=True)
        sys.exit(EXIT_VERIFY)


if __name__ == "__main__":
    main()
