"""metriclat: construct models, evaluate formulas, run checks, emit reports.

Exit codes: 0 success / all checks pass, 1 check failure, 2 usage error.
All output is bit-reproducible given the seed; rationals always print as
p/q, never as decimals.
"""

import json
import os
import sys

import click

from . import kernels as kn
from . import lattice as lt
from . import logic as lg
from . import partitions as pt
from . import verify as vf
from .errors import MetricLatError
from .rationals import format_rational


def _default_jobs():
    env = os.environ.get("METRICLAT_JOBS")
    if env:
        return max(1, int(env))
    return min(8, os.cpu_count() or 1)


def load_model(specifier):
    """Model specifiers: pn:<n>, bool:<m>, nc:<n>, file:<path>, flats:<path>."""
    kind, _, arg = specifier.partition(":")
    if not arg:
        raise click.UsageError(f"model specifier needs an argument: {specifier!r}")
    if kind == "pn":
        return lt.partition_lattice(int(arg))
    if kind == "bool":
        return lt.boolean_measure_lattice([1] * int(arg))
    if kind == "nc":
        raw = lt.noncrossing_lattice(int(arg))
        return lt.build_lattice(raw.elements, raw.join, raw.metric)
    if kind == "file":
        with open(arg) as fh:
            return lt.lattice_from_json(json.load(fh))
    if kind == "flats":
        with open(arg) as fh:
            rank = kn.MatroidRank.from_json(json.load(fh))
        return kn.flats_lattice(rank)
    raise click.UsageError(f"unknown model kind {kind!r} (pn/bool/nc/file/flats)")


@click.group()
def main():
    """Exact finite metric lattices, formulas and verification checks."""


@main.command()
@click.option("--n", type=int, required=True, help="ground-set size")
@click.option("--singular", is_flag=True, help="only singular partitions")
def enumerate(n, singular):
    """List the partitions of {1..n} in lexicographic rgs order."""
    it = pt.enumerate_singular(n) if singular else pt.enumerate_partitions(n)
    count = 0
    for p in it:
        click.echo(pt.format_partition(p))
        count += 1
    click.echo(f"count={count}", err=True)


@main.command("eval")
@click.option("--model", required=True, help="pn:<n>|bool:<m>|nc:<n>|file:<p>|flats:<p>")
@click.option("--formula", "formula_text", help="formula source text")
@click.option("--formula-file", type=click.Path(exists=True), help="file with formula text")
@click.option("--name", help="evaluate a named registry sentence instead")
def eval_cmd(model, formula_text, formula_file, name):
    """Evaluate a formula exactly on a model; prints p/q."""
    if sum(x is not None for x in (formula_text, formula_file, name)) != 1:
        raise click.UsageError("give exactly one of --formula, --formula-file, --name")
    try:
        L = load_model(model)
        if name is not None:
            reg = lg.builtin_sentences()
            if name not in reg:
                raise click.UsageError(
                    f"unknown sentence {name!r}; have {', '.join(sorted(reg))}"
                )
            f = reg[name]
        else:
            if formula_file is not None:
                with open(formula_file) as fh:
                    formula_text = fh.read()
            f = lg.parse_formula(formula_text)
        value = lg.evaluate_fast(f, L)
    except MetricLatError as exc:
        raise click.ClickException(str(exc))
    click.echo(format_rational(value))


@main.command()
@click.argument("check_id")
@click.option("--n", "--n-range", "n_range", help="n or range like 2..7")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--jobs", type=int, default=None, help="worker processes (env METRICLAT_JOBS)")
@click.option("--deep", is_flag=True, help="extend the heavy sweeps to n=7")
@click.option("--samples", type=int, default=None, help="sampled mode for large n")
@click.option("--output", type=click.Path(), default=None, help="write report here")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv",
              show_default=True)
@click.option("--stable", is_flag=True,
              help="omit elapsed_ms for byte-reproducible output")
def check(check_id, n_range, seed, jobs, deep, samples, output, fmt, stable):
    """Run one named check (C1..C25) or `all`; exit 1 on any failure."""
    jobs = jobs if jobs is not None else _default_jobs()
    params = {"seed": seed}
    if n_range:
        params["n"] = n_range
    if samples:
        params["samples"] = samples
    if deep:
        params["deep"] = True
    try:
        if check_id == "all":
            reports = vf.run_all(params, jobs=jobs)
        else:
            if deep and not n_range and check_id in ("C1", "C5"):
                params["n"] = "2..7"
                if check_id == "C5":
                    params["star_n"] = "2..7"
            reports = [vf.run_check(check_id, params, jobs=jobs)]
    except MetricLatError as exc:
        raise click.ClickException(str(exc))
    include_elapsed = not stable
    text = (vf.reports_to_csv(reports, include_elapsed) if fmt == "csv"
            else vf.reports_to_json(reports, include_elapsed))
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)
    if any(r.status == "fail" for r in reports):
        sys.exit(1)


@main.command()
@click.option("--n", type=int, required=True)
@click.option("--x", "x_text", required=True, help="partition in block syntax")
@click.option("--y", "y_text", required=True)
def gamma(n, x_text, y_text):
    """gamma(x,y), gamma(y,x) and the selector Hausdorff distance."""
    try:
        x = pt.parse_partition(x_text, n)
        y = pt.parse_partition(y_text, n)
        gxy, gyx = pt.gamma(x, y), pt.gamma(y, x)
        dh = pt.hausdorff_selectors(x, y)
        d = pt.partition_metric(x, y)
    except MetricLatError as exc:
        raise click.ClickException(str(exc))
    click.echo(f"gamma_xy={gxy}")
    click.echo(f"gamma_yx={gyx}")
    click.echo(f"d_haus={format_rational(dh)}")
    click.echo(f"d={format_rational(d)}")


@main.command()
@click.option("--n", type=int, required=True)
@click.option("--x", "x_text", required=True)
@click.option("--y", "y_text", required=True)
def hausdorff(n, x_text, y_text):
    """Selector Hausdorff distance: closed form and brute force."""
    try:
        x = pt.parse_partition(x_text, n)
        y = pt.parse_partition(y_text, n)
        closed = pt.hausdorff_selectors(x, y)
        brute = pt.hausdorff_bruteforce(x, y)
    except MetricLatError as exc:
        raise click.ClickException(str(exc))
    click.echo(f"closed={format_rational(closed)}")
    click.echo(f"brute={format_rational(brute)}")
    if closed != brute:
        raise click.ClickException("closed form disagrees with brute force")


@main.command()
@click.option("--n", type=int, required=True, help="Pi_n over {0..n}")
@click.option("--k", type=int, required=True)
@click.option("--pi", "pi_text", required=True,
              help="blocks over 0..n, e.g. '0|1,2'")
def bjorner(n, k, pi_text):
    """Embed a Bjorner-indexed partition of {0..n} into Pi_kn."""
    try:
        blocks = [
            [int(t) for t in chunk.split(",")] for chunk in pi_text.split("|")
        ]
        pi = pt.from_bjorner_blocks(blocks)
        if pi.n != n + 1:
            raise click.UsageError(f"partition covers 0..{pi.n - 1}, not 0..{n}")
        img = pt.bjorner_embed(pi, k)
    except MetricLatError as exc:
        raise click.ClickException(str(exc))
    out = "|".join(
        ",".join(str(e) for e in sorted(b)) for b in
        sorted(pt.to_bjorner_blocks(img), key=min)
    )
    click.echo(out)


@main.command()
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--trials", type=int, default=100, show_default=True)
def kernels(seed, trials):
    """Run the kernel suite (Wilf, PSD, CND, FKG/TPN, Kotelyanskii)."""
    report = vf.run_check("C22", {"seed": seed, "trials": trials})
    click.echo(vf.reports_to_csv([report]), nl=False)
    if report.status == "fail":
        sys.exit(1)


@main.command()
@click.argument("check_id")
@click.option("--n", "n_range", help="n or range like 2..5")
def constant(check_id, n_range):
    """Empirical extremal ratio for a bound-type check (C5, C12, C15, C16)."""
    params = {"n": n_range} if n_range else {}
    try:
        value, witness = vf.estimate_constant(check_id, params)
    except MetricLatError as exc:
        raise click.ClickException(str(exc))
    click.echo(f"{format_rational(value)} at {witness}")


if __name__ == "__main__":
    main()
