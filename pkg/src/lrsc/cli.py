"""Command-line frontend: parameter inspection, symbolic parity tables,
exhaustive verification, channel simulation, and trace encode/decode.

Exit codes: 0 success, 1 verification or decode failure, 2 usage error.
"""

from __future__ import annotations

import sys

import click

from .codec import CodedPacket, Decoder, Encoder, LrscCode, MdsDeCode
from .oracle import verify_scalar, verify_stream
from .params import derive_params, rate_bound
from .sim import csv_rows, hist_rows, sweep
from . import trace as trace_io


def _params_or_usage(a, tau, r, q):
    try:
        return derive_params(a, tau, r, q_override=q)
    except ValueError as e:
        raise click.UsageError(str(e))


@click.group()
def main():
    """Locally recoverable streaming codes: construction, verification,
    simulation, and packet-trace encode/decode."""


@main.command("params")
@click.argument("a", type=int)
@click.argument("tau", type=int)
@click.argument("r", type=int)
@click.option("--q", type=int, default=None, help="Base field order override (prime power >= r+a-1).")
def cmd_params(a, tau, r, q):
    """Derived parameters and the rate bound for an (A, TAU, R) code."""
    p = _params_or_usage(a, tau, r, q)
    click.echo(f"a={p.a} tau={p.tau} r={p.r}")
    click.echo(f"regime: {p.regime}")
    click.echo(f"k={p.k} n={p.n}")
    if p.regime == "short":
        click.echo(f"u={p.u} v={p.v} ell={p.ell}")
    click.echo(f"q={p.q} Q={p.field_order}")
    click.echo(f"rate: {p.rate} (optimal bound {rate_bound(a, tau, r)})")


def _render_coeff(field, c):
    if c == 1:
        return ""
    if field.levels == 1 and field.base.m == 1:
        return str(c)
    return field.format_element(c)


def render_parity_expr(field, terms):
    """Terms (coeff, symbol, time) -> 'm_0(0)+2m_1(1)', '-' when empty."""
    if not terms:
        return "-"
    return "+".join(f"{_render_coeff(field, c)}m_{j}({tt})" for c, j, tt in terms)


def parity_table(code, t_max):
    """Per time step, per parity row, the normalized term list
    (coeff, symbol, time) with times ascending."""
    out = []
    for t in range(t_max + 1):
        row = []
        for i in range(code.n - code.k):
            row.append([(c, j, tt) for ((tt, j), c) in code.parity_terms(i, t)])
        out.append(row)
    return out


@main.command("table")
@click.argument("a", type=int)
@click.argument("tau", type=int)
@click.argument("r", type=int)
@click.option("--q", type=int, default=None, help="Base field order override.")
@click.option("--columns", type=int, default=None, help="Last time column to print (default 2*tau).")
def cmd_table(a, tau, r, q, columns):
    """Symbolic parity table, one line per time step: 't=T | p0 | p1 ...'."""
    p = _params_or_usage(a, tau, r, q)
    code = LrscCode(p)
    t_max = columns if columns is not None else 2 * tau
    for t, row in enumerate(parity_table(code, t_max)):
        cells = " | ".join(render_parity_expr(code.field, terms) for terms in row)
        click.echo(f"t={t} | {cells}")


def _build_code(a, tau, r, q, kind):
    if kind == "mds":
        try:
            return MdsDeCode(a, tau, q_override=q)
        except ValueError as e:
            raise click.UsageError(str(e))
    if r is None:
        raise click.UsageError("R is required for the lrsc code")
    return LrscCode(_params_or_usage(a, tau, r, q))


@main.command("verify")
@click.argument("a", type=int)
@click.argument("tau", type=int)
@click.argument("r", type=int, required=False)
@click.option("--q", type=int, default=None, help="Base field order override.")
@click.option("--code", "kind", type=click.Choice(["lrsc", "mds"]), default="lrsc")
@click.option("--budget", type=int, default=None, help="Erasure budget h (runs a single stream suite).")
@click.option("--deadline", type=int, default=None, help="Recovery deadline d for --budget.")
@click.option("--horizon", type=int, default=None, help="Stream length (default 3*(tau+1)).")
@click.option("--trials", type=int, default=1, help="Random message streams per pattern set.")
@click.option("--seed", type=int, default=0, help="Message stream seed.")
def cmd_verify(a, tau, r, q, kind, budget, deadline, horizon, trials, seed):
    """Exhaustive recoverability check; exits 1 on any failure.

    Default battery for lrsc: the block-code span criterion (exact regime),
    the full-budget deadline, and the single-erasure deadline.  Give
    --budget/--deadline to run one specific stream suite instead.
    """
    code = _build_code(a, tau, r, q, kind)
    reports = []
    if budget is not None or deadline is not None:
        if budget is None or deadline is None:
            raise click.UsageError("--budget and --deadline go together")
        reports.append(verify_stream(code, budget, deadline, horizon=horizon,
                                     trials=trials, seed=seed))
    else:
        if kind == "lrsc" and code.params.regime == "exact":
            reports.append(verify_scalar(code.weights))
        reports.append(verify_stream(code, a, tau, horizon=horizon, trials=trials, seed=seed))
        if kind == "lrsc":
            reports.append(verify_stream(code, 1, code.params.r, horizon=horizon,
                                         trials=trials, seed=seed))
    failed = False
    for rep in reports:
        click.echo(f"{rep.description}: {rep.summary()}")
        for fail in rep.failures[:20]:
            click.echo(f"  FAIL pattern={fail.pattern} {fail.detail}")
        if rep.failures:
            failed = True
    sys.exit(1 if failed else 0)


@main.command("simulate")
@click.argument("a", type=int)
@click.argument("tau", type=int)
@click.argument("r", type=int, required=False)
@click.option("--q", type=int, default=None, help="Base field order override.")
@click.option("--eps", required=True, help="Comma-separated erasure probabilities.")
@click.option("--T", "-T", "packets", type=int, default=100000, help="Message packets per run.")
@click.option("--seed", type=int, default=0, help="Master seed for channel and messages.")
@click.option("--codes", type=click.Choice(["both", "lrsc", "mds"]), default="both")
@click.option("--out", type=click.Path(writable=True), default=None, help="CSV output path (default stdout).")
@click.option("--hist-out", type=click.Path(writable=True), default=None, help="Delay histogram CSV path.")
@click.option("--format", "fmt", type=click.Choice(["csv", "text"]), default="csv")
def cmd_simulate(a, tau, r, q, eps, packets, seed, codes, out, hist_out, fmt):
    """Monte Carlo erasure-channel sweep; emits one CSV row per (eps, code)."""
    try:
        eps_list = [float(x) for x in eps.split(",") if x.strip()]
    except ValueError:
        raise click.UsageError(f"bad --eps list {eps!r}")
    targets = []
    if codes in ("both", "lrsc"):
        targets.append(_build_code(a, tau, r, q, "lrsc"))
    if codes in ("both", "mds"):
        try:
            targets.append(MdsDeCode(a, tau))
        except ValueError as e:
            raise click.UsageError(str(e))
    results = []
    for code in targets:
        results.extend(sweep(code, eps_list, packets, seed=seed))
    for res in results:
        if res.low_confidence:
            click.echo(f"warning: loss count {res.lost} < 20 at eps={res.eps} "
                       f"for {res.code_label}; estimate unstable", err=True)
    if fmt == "text":
        lines = [f"{'eps':>8} {'code':>16} {'loss_prob':>12} {'ci':>10} {'mean_delay':>11}"]
        for res in results:
            mean = f"{res.mean_delay:.4f}" if res.mean_delay is not None else "-"
            lines.append(f"{res.eps:>8} {res.code_label:>16} {res.loss_prob:>12.6f} "
                         f"{res.loss_ci:>10.6f} {mean:>11}")
    else:
        lines = list(csv_rows(results))
    if out:
        with open(out, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    else:
        for line in lines:
            click.echo(line)
    if hist_out:
        with open(hist_out, "w") as fh:
            fh.write("\n".join(hist_rows(results)) + "\n")


@main.command("encode")
@click.argument("a", type=int)
@click.argument("tau", type=int)
@click.argument("r", type=int)
@click.option("--q", type=int, default=None, help="Base field order override.")
@click.option("--in", "infile", type=click.File("r"), default="-", help="Message trace (default stdin).")
@click.option("--out", "outfile", type=click.File("w"), default="-", help="Coded trace (default stdout).")
def cmd_encode(a, tau, r, q, infile, outfile):
    """Encode a message trace into a coded packet trace."""
    code = _build_code(a, tau, r, q, "lrsc")
    try:
        messages = trace_io.read_message_trace(infile, code.field, code.k)
    except trace_io.TraceError as e:
        raise click.ClickException(str(e))
    enc = Encoder(code)
    packets = [enc.push(m) for m in messages]
    trace_io.write_coded_trace(outfile, code.field, packets, code.k)


@main.command("decode")
@click.argument("a", type=int)
@click.argument("tau", type=int)
@click.argument("r", type=int)
@click.option("--q", type=int, default=None, help="Base field order override.")
@click.option("--in", "infile", type=click.File("r"), default="-", help="Coded trace (default stdin).")
@click.option("--out", "outfile", type=click.File("w"), default="-", help="Recovered message trace.")
def cmd_decode(a, tau, r, q, infile, outfile):
    """Decode a coded trace (with ERASED lines) back into a message trace;
    exits 1 if any packet misses its deadline."""
    code = _build_code(a, tau, r, q, "lrsc")
    try:
        slots = trace_io.read_coded_trace(infile, code.field, code.k, code.n)
    except trace_io.TraceError as e:
        raise click.ClickException(str(e))
    dec = Decoder(code)
    recovered = {}
    delays = {}
    for t, syms in enumerate(slots):
        pkt = CodedPacket(t, syms) if syms is not None else None
        for ev in dec.push(t, pkt):
            if ev.recovered:
                recovered[ev.t] = ev.message
                delays[ev.t] = ev.delay
    messages = [recovered.get(t) for t in range(len(slots))]
    trace_io.write_message_trace(outfile, code.field, messages)
    lost = sum(1 for m in messages if m is None)
    max_delay = max(delays.values(), default=0)
    click.echo(f"packets={len(slots)} recovered={len(slots) - lost} lost={lost} "
               f"max_delay={max_delay}", err=True)
    if lost:
        sys.exit(1)


if __name__ == "__main__":
    main()
