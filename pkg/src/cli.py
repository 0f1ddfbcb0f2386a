# src/cli.py
import json
import logging

import click

from src import config as defaults
from src.utils import InvalidParameterError, ModpSatakeError
from src.verbs import all_verbs
from src.verbs.common import BANNER, RunConfig

logger = logging.getLogger(__name__)

TITLES = {
    "satake": "🔮 SATAKE TRANSFORM",
    "table1": "📋 L^-i(U, V) FOR IRREDUCIBLE V",
    "cohomology": "🧮 K_U-COHOMOLOGY",
    "delta": "📐 THE CHARACTER δ",
    "verify": "🧪 ACCEPTANCE SUITE",
}


def run(config: RunConfig) -> tuple[int, dict]:
    """Run one verb; exit status 0 iff every check passed, 2 on invalid input."""
    try:
        report = all_verbs[config.verb](config)
    except InvalidParameterError as e:
        logger.debug("invalid configuration %s", config, exc_info=True)
        return 2, {"verb": config.verb, "error": str(e)}
    except ModpSatakeError as e:
        logger.debug("%s failed", config.verb, exc_info=True)
        return 1, {"verb": config.verb, "error": str(e)}
    failed = [c for c in report["checks"] if not c["ok"]]
    return (1 if failed else 0), report


def render(config: RunConfig, report: dict) -> None:
    if "error" in report:
        click.secho(f"❌ Error: {report['error']}", fg="red", err=True)
        return
    if config.fmt == "json":
        click.echo(json.dumps(report["result"], sort_keys=True, ensure_ascii=False, indent=2))
        return
    click.echo(BANNER)
    click.echo(f"{TITLES[config.verb]} (p = {config.p}, k = {config.k})")
    click.echo(BANNER + "\n")
    for line in report["lines"]:
        click.echo(line)
    if report["checks"]:
        click.echo()
    for c in report["checks"]:
        detail = f" ({c['detail']})" if c["detail"] and not c["ok"] else ""
        if c["ok"]:
            click.secho(f"✅ {c['name']}", fg="green")
        else:
            click.secho(f"❌ {c['name']}{detail}", fg="red")


def _execute(ctx: click.Context, verb: str, options: dict, params: dict) -> None:
    config = RunConfig(
        verb=verb,
        p=options["p"],
        k=options["ext_degree"],
        params={key: value for key, value in params.items() if value is not None and value is not False},
        fmt=options["fmt"],
        seed=options["seed"],
        depth=options.get("depth"),
    )
    code, report = run(config)
    render(config, report)
    ctx.exit(code)


def field_options(command):
    """--p, --ext-degree, --format and --seed, shared by every verb."""
    command = click.option("--seed", default=defaults.DEFAULT_SEED, show_default=True, type=int,
                           help="Seed for randomized checks")(command)
    command = click.option("--format", "fmt", default=defaults.DEFAULT_FORMAT, show_default=True,
                           type=click.Choice(["text", "json"]))(command)
    command = click.option("--ext-degree", default=defaults.DEFAULT_EXT_DEGREE, show_default=True,
                           type=click.IntRange(min=1), help="Work over GF(p^k)")(command)
    command = click.option("--p", "p", required=True, type=int, help="The prime p")(command)
    return command


@click.group()
@click.option("--verbose", "-v", is_flag=True, help="Log at DEBUG level")
def main(verbose):
    """Mod-p Satake transforms and L^-i(U, V) for GL2(Q_p)."""
    logging.basicConfig(level=logging.DEBUG if verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")


@main.command()
@field_options
@click.option("--r", default=0, show_default=True, type=int)
@click.option("--e", default=0, show_default=True, type=int)
@click.option("--op", default="phi", show_default=True, help='"phi^n" or "c0+c1*phi+..."')
@click.option("--degree", default=0, show_default=True, type=int)
@click.option("--depth", default=None, type=click.IntRange(min=0), help="Coset-sum truncation depth")
@click.pass_context
def satake(ctx, p, ext_degree, fmt, seed, r, e, op, degree, depth):
    """S^degree of a Hecke polynomial on the weight Sym^r ⊗ det^e."""
    options = {"p": p, "ext_degree": ext_degree, "fmt": fmt, "seed": seed, "depth": depth}
    _execute(ctx, "satake", options, {"r": r, "e": e, "op": op, "degree": degree})


@main.command()
@field_options
@click.option("--all", "all_rows", is_flag=True, help="The four standard rows")
@click.option("--type", "kind", type=click.Choice(["character", "special", "principal", "supersingular"]))
@click.option("--r", default=None, type=int)
@click.option("--lambda", "lam", default=None, help="lambda as an integer or coefficient list, e.g. 2 or [1,1]")
@click.option("--chi", multiple=True, help='"lambda,e" for mu_lambda omega^e')
@click.pass_context
def table1(ctx, p, ext_degree, fmt, seed, all_rows, kind, r, lam, chi):
    """L^-1(U, V) and L^0(U, V) for irreducible V."""
    options = {"p": p, "ext_degree": ext_degree, "fmt": fmt, "seed": seed}
    params = {"all": all_rows, "type": kind, "r": r, "lambda": lam, "chi": list(chi)}
    _execute(ctx, "table1", options, params)


@main.command()
@field_options
@click.option("--weight", default=None, help='"r,e" for Sym^r ⊗ det^e')
@click.option("--chi", multiple=True, help='"lambda,e"; once for chi ⊠ 1, twice for chi1 ⊠ chi2')
@click.pass_context
def cohomology(ctx, p, ext_degree, fmt, seed, weight, chi):
    """H^0, H^1 of K_U and their Hecke actions."""
    options = {"p": p, "ext_degree": ext_degree, "fmt": fmt, "seed": seed}
    _execute(ctx, "cohomology", options, {"weight": weight, "chi": list(chi)})


@main.command()
@field_options
@click.pass_context
def delta(ctx, p, ext_degree, fmt, seed):
    """The character δ read off from H^1(K_U, 1)."""
    options = {"p": p, "ext_degree": ext_degree, "fmt": fmt, "seed": seed}
    _execute(ctx, "delta", options, {})


@main.command()
@click.option("--p", "p", default=3, show_default=True, type=int, help="Prime used for the report header")
@click.option("--primes", default=None, help="Comma-separated primes (default: all)")
@click.option("--update-goldens", is_flag=True, help="Rewrite golden files instead of comparing")
@click.option("--format", "fmt", default=defaults.DEFAULT_FORMAT, type=click.Choice(["text", "json"]))
@click.option("--seed", default=defaults.DEFAULT_SEED, type=int)
@click.pass_context
def verify(ctx, p, primes, update_goldens, fmt, seed):
    """Run the full acceptance suite."""
    try:
        selected = [int(q) for q in primes.split(",")] if primes else []
    except ValueError:
        raise click.BadParameter(f"not a comma-separated list of primes: {primes}", param_hint="--primes")
    options = {"p": p, "ext_degree": defaults.DEFAULT_EXT_DEGREE, "fmt": fmt, "seed": seed}
    _execute(ctx, "verify", options, {"primes": selected, "update_goldens": update_goldens})
