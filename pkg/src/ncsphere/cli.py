"""Command-line front door: classification tables, verification suites,
and Jacobian profiles.

Configuration precedence, lowest to highest: built-in defaults, the file
named by the NCS_CONFIG environment variable, explicit command flags.
Angles are taken in radians and reduced mod pi on ingestion.  Suite
reports are deterministic for a fixed seed: JSON output is byte
identical across runs (wall time goes to stderr, not into the payload).
"""

from __future__ import annotations

import csv
import io
import json
import math
import sys

import click
import numpy as np

from .config import resolve_config
from .elliptic import elliptic_triple, period_Omega
from .errors import NCSphereError
from .moduli import Case, classify, phi_point, trig_invariants
from .pairing import curve_R, dR_dm, g_closed, pairing_density
from .verify import run_suite, suite_names


def _parse_phi(text: str) -> tuple[float, float, float]:
    cleaned = text.strip().strip("()[]")
    parts = [p for p in cleaned.replace(",", " ").split() if p]
    if len(parts) != 3:
        raise click.UsageError(
            f"expected three angles like '(1.1,0.8,0.4)', got {text!r}")
    try:
        return tuple(float(p) for p in parts)
    except ValueError:
        raise click.UsageError(f"non-numeric angle in {text!r}")


def _cfmt(v: complex) -> str:
    return f"{v.real:.15g}{v.imag:+.15g}j"


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _csv_text(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


class _Group(click.Group):
    """Translate domain errors into clean messages with exit code 3."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except NCSphereError as exc:
            wrapped = click.ClickException(f"{type(exc).__name__}: {exc}")
            wrapped.exit_code = 3
            raise wrapped


@click.group(cls=_Group)
def main() -> None:
    """Numerical laboratory for the three-parameter family of
    noncommutative 3-spheres."""


@main.command()
@click.option("--phi", "phis", multiple=True,
              help="Angle triple like '(1.1,0.8,0.4)'; repeatable.")
@click.option("--random", "random_count", type=int, default=None,
              help="Classify this many random draws instead.")
@click.option("--seed", type=int, default=None, help="Seed for --random.")
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]),
              default=None, help="Output format.")
@click.option("--out", type=click.Path(), default=None,
              help="Write output to this file instead of stdout.")
def classify_cmd(phis, random_count, seed, fmt, out):
    """Classify moduli points into the eleven geometric cases."""
    cfg = resolve_config(seed=seed, output_format=fmt)
    triples = [_parse_phi(t) for t in phis]
    if random_count is not None:
        if random_count < 1:
            raise click.UsageError("--random must be at least 1")
        rng = np.random.default_rng(cfg.seed)
        triples.extend(tuple(rng.uniform(0.0, math.pi, 3))
                       for _ in range(random_count))
    if not triples:
        raise click.UsageError("no input: pass --phi or --random")
    records = []
    for raw in triples:
        ph = phi_point(*raw)
        label = classify(ph)
        rec = {
            "phi": list(ph.phi),
            "case": label.case_number,
            "label": label.case_id.value,
            "normal_form": list(label.normal_form),
            "witness": [list(w) for w in label.witness],
            "J": (list(trig_invariants(ph).J)
                  if label.case_id is Case.Generic else None),
        }
        records.append(rec)
    if cfg.output_format == "json":
        text = json.dumps({"records": records}, indent=2, sort_keys=True) + "\n"
    else:
        rows = [("phi1", "phi2", "phi3", "case", "label", "J1", "J2", "J3")]
        for r in records:
            J = r["J"] or ("", "", "")
            rows.append(tuple(repr(v) for v in r["phi"])
                        + (str(r["case"]), r["label"])
                        + tuple(repr(j) if j != "" else "" for j in J))
        text = _csv_text(rows)
    _emit(text, out)


main.add_command(classify_cmd, name="classify")


@main.command()
@click.option("--suite", type=click.Choice(suite_names()), default="all",
              help="Which check suite to run.")
@click.option("--eps", type=float, default=None, help="Series cutoff.")
@click.option("--nodes", type=int, default=None,
              help="Sample nodes per operator grid.")
@click.option("--seed", type=int, default=None, help="Draw seed.")
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]),
              default=None, help="Output format.")
@click.option("--out", type=click.Path(), default=None,
              help="Write output to this file instead of stdout.")
def verify_cmd(suite, eps, nodes, seed, fmt, out):
    """Run a named verification suite; exit 0 only if every check passes."""
    cfg = resolve_config(eps=eps, u_nodes=nodes, seed=seed, output_format=fmt)
    report = run_suite(suite, cfg)
    if cfg.output_format == "json":
        text = report.to_json() + "\n"
    else:
        text = _csv_text(report.csv_rows())
    _emit(text, out)
    click.echo(f"suite {suite}: {len(report.checks)} checks in "
               f"{report.wall_time:.2f}s", err=True)
    if not report.all_pass:
        sys.exit(1)


main.add_command(verify_cmd, name="verify")


@main.command()
@click.option("--phi", required=True,
              help="Generic angle triple like '(1.1,0.8,0.4)'.")
@click.option("--nodes", type=int, default=None,
              help="Number of grid rows (default m_nodes from config).")
@click.option("--out", type=click.Path(), default=None,
              help="Write output to this file instead of stdout.")
def jacobian_cmd(phi, nodes, out):
    """Tabulate the pairing density and slope profile along the real
    curve as CSV rows (m, D, g, R, dR, Omega)."""
    cfg = resolve_config()
    # --nodes is a plain row count here, not the config field, so small
    # tables for quick looks stay legal
    n_rows = cfg.m_nodes if nodes is None else nodes
    if n_rows < 2:
        raise click.UsageError("--nodes must be at least 2")
    ph = phi_point(*_parse_phi(phi))
    T = elliptic_triple(ph)
    Omega = period_Omega(ph, nodes=cfg.quadrature_nodes).Omega
    span = T.M.tau.imag
    rows = [("m", "D", "g", "R", "dR", "Omega")]
    for frac in np.linspace(0.1, 0.9, n_rows):
        m = float(frac * span)
        rows.append((
            repr(m),
            _cfmt(pairing_density(m, ph, T, nodes=cfg.u_nodes)),
            _cfmt(g_closed(m, T)),
            _cfmt(curve_R(ph, m, T)),
            _cfmt(dR_dm(ph, m, T, "symbolic")),
            _cfmt(Omega),
        ))
    _emit(_csv_text(rows), out)


main.add_command(jacobian_cmd, name="jacobian")


if __name__ == "__main__":
    main()
