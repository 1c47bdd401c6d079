"""Command-line front end.

Every command prints a machine-readable report (JSON by default, CSV where
tabular).  Exact values are strings (``"p/q"``), floats carry 15 significant
digits.  Exit status: 0 when every requested check passes, 2 for usage
errors, 3 when a check or internal consistency relation fails.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import random
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from .core.maps import MalformedMapError, dumps, loads
from .core.ribbon import MetricRibbonGraph
from .core.triangulation import (
    Triangulation,
    deficit_and_divisor,
    dehn_sommerville_ok,
    gauss_bonnet_euler_number,
)
from .enumeration import (
    TopologicallyUnstableError,
    card_q_assignments,
    enumerate_classes,
    factorization_report,
)
from .moduli.asymptotics import (
    b_genus,
    card_dt_asymptotic,
    card_q_asymptotic,
    mz_asymptotic_volume,
    wp_genus_bound_check,
)
from .moduli.volumes import UnstableModuliError, format_fraction, wp_volume
from .uniformization import (
    InconsistencyError,
    atlas_checks,
    build_atlas,
    dof_count,
    gaussian_curvature_fd,
    pole_zero_balance,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_FAILED = 3


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    genus: int = 0
    vertices: tuple[int, ...] = ()
    min_degree: int = 2
    format: str = "json"
    workers: int = 1
    seed: int = 0
    labeled: bool = False
    emit: str | None = None
    mode: str = "exact"
    input: str | None = None
    precision: float = 1e-12
    c_g: float | None = None
    C1: float | None = None
    C2: float | None = None

    def __post_init__(self) -> None:
        if self.command in {"enumerate", "verify", "report-factorization", "asymptotics", "wp-vol"} and not self.vertices:
            raise UsageError("vertex range is empty")
        if self.precision < 1e-12:
            raise UsageError("precision below 1e-12 is not supported")
        if self.workers < 1:
            raise UsageError("--workers must be positive")
        if (self.C1 is None) != (self.C2 is None):
            raise UsageError("--C1 and --C2 go together")
        if self.C1 is not None and not 0 < self.C1 < self.C2:
            raise UsageError("need 0 < C1 < C2")

    def echo(self) -> dict:
        d = asdict(self)
        d["vertices"] = list(self.vertices)
        return d


@dataclass
class Report:
    config: dict
    rows: list[dict] = field(default_factory=list)
    passed: bool = True
    summary: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)

    def to_json(self, timings: bool = True) -> str:
        payload = {"config": self.config, "rows": self.rows, "passed": self.passed, "summary": self.summary}
        if timings:
            payload["timings"] = self.timings
        return json.dumps(_clean(payload), indent=2, sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        if self.rows:
            writer = csv.DictWriter(buf, fieldnames=list(self.rows[0].keys()), lineterminator="\n")
            writer.writeheader()
            for r in self.rows:
                writer.writerow({k: _cell(v) for k, v in _clean(r).items()})
        return buf.getvalue()


def _clean(x: Any) -> Any:
    if isinstance(x, float):
        return float(f"{x:.15g}") if math.isfinite(x) else str(x)
    if isinstance(x, Fraction):
        return format_fraction(x)
    if isinstance(x, bytes):
        return x.decode()
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    return x


def _cell(v: Any) -> Any:
    if isinstance(v, list):
        return " ".join(map(str, v))
    return v


# --- commands ---------------------------------------------------------------

def _cmd_enumerate(cfg: RunConfig, rep: Report) -> None:
    emit = cfg.emit or "maps"
    for n0 in cfg.vertices:
        res = enumerate_classes(cfg.genus, n0, cfg.min_degree, cfg.workers)
        if emit == "maps":
            for r in res.records:
                n0_, n1, n2 = r.f_vector
                rep.rows.append(
                    {
                        "canonical_key": r.canonical_key,
                        "N0": n0_,
                        "N1": n1,
                        "N2": n2,
                        "genus": r.genus,
                        "aut": r.aut_order,
                        "aut_boundary": r.aut_boundary_order,
                        "q_multiset": list(r.curvature_multiset),
                    }
                )
        else:
            weighted = res.weighted
            row = {"N0": n0, "genus": cfg.genus, "classes": len(res.records), "card_dt": weighted}
            if cfg.labeled:
                row["card_dt_labeled"] = weighted * math.factorial(n0)
            rep.rows.append(row)


def _cmd_wp_vol(cfg: RunConfig, rep: Report) -> None:
    for n0 in cfg.vertices:
        if cfg.mode == "asymptotic":
            est = mz_asymptotic_volume(cfg.genus, n0)
            rep.rows.append(
                {"genus": cfg.genus, "punctures": n0, "float": est, "B_g": b_genus(cfg.genus), "negative_B_g": b_genus(cfg.genus) < 0}
            )
        else:
            vol = wp_volume(cfg.genus, n0)
            rep.rows.append({"genus": cfg.genus, "punctures": n0, **vol.to_json()})


def _factorization_rows(cfg: RunConfig, with_asymptotics: bool) -> list[dict]:
    rows = []
    for r in factorization_report(cfg.genus, cfg.vertices, cfg.min_degree):
        row = {
            "N0": r.n0,
            "card_dt": r.card_dt,
            "card_q": r.card_q,
            "wp_volume": str(r.wp_volume),
            "wp_volume_float": float(r.wp_volume),
            "ratio": r.ratio,
            "partition_ok": r.partition_ok,
        }
        if with_asymptotics:
            est = mz_asymptotic_volume(cfg.genus, r.n0)
            row["mz_estimate"] = est
            row["mz_over_exact"] = est / float(r.wp_volume)
            if cfg.c_g is not None:
                row["card_dt_asymptotic"] = card_dt_asymptotic(cfg.genus, r.n0, cfg.c_g)
                row["card_q_asymptotic"] = card_q_asymptotic(cfg.genus, r.n0, cfg.c_g)
        rows.append(row)
    return rows


def _cmd_factorization(cfg: RunConfig, rep: Report, with_asymptotics: bool) -> None:
    rep.rows.extend(_factorization_rows(cfg, with_asymptotics))
    rep.passed = all(r["partition_ok"] for r in rep.rows)
    if with_asymptotics:
        rep.summary["B_g"] = b_genus(cfg.genus)
        rep.summary["negative_B_g"] = b_genus(cfg.genus) < 0
        if cfg.C1 is not None and cfg.C2 is not None:
            genera = range(1, max(cfg.genus, 2) + 1)
            bound_rows = []
            for n0 in cfg.vertices:
                ok, rows = wp_genus_bound_check(genera, n0, cfg.C1, cfg.C2)
                bound_rows.extend({"N0": n0, **asdict(r)} for r in rows)
                rep.passed &= ok
            rep.summary["genus_bound"] = bound_rows


def _cmd_atlas(cfg: RunConfig, rep: Report) -> None:
    if not cfg.input:
        raise UsageError("atlas needs --input <map file>")
    m, lengths = loads(Path(cfg.input).read_text())
    g = MetricRibbonGraph(m, lengths if lengths is not None else (1.0,) * m.num_edges)
    if (cfg.emit or "charts") == "charts":
        rep.summary.update(build_atlas(g).to_json())
    else:
        checks = atlas_checks(g)
        rep.rows.extend({"check": k, "passed": v} for k, v in checks.items())
        rep.passed = all(checks.values())


def _class_checks(t: Triangulation) -> dict[str, bool]:
    checks = {"dehn_sommerville": dehn_sommerville_ok(t)}
    _, div = deficit_and_divisor(t)
    checks["divisor_degree"] = div.degree == -t.euler_characteristic
    checks["gauss_bonnet"] = gauss_bonnet_euler_number(t, div) == 0
    try:
        checks["pole_zero_balance"] = pole_zero_balance(t)
    except InconsistencyError:
        checks["pole_zero_balance"] = False
    try:
        dof_count(t)
        checks["dof_count"] = True
    except InconsistencyError:
        checks["dof_count"] = False
    return checks


def _cmd_verify(cfg: RunConfig, rep: Report) -> None:
    counterexamples = []
    for n0 in cfg.vertices:
        res = enumerate_classes(cfg.genus, n0, cfg.min_degree, cfg.workers)
        failures = 0
        for r in res.records:
            checks = _class_checks(Triangulation(r.map, cfg.min_degree))
            if not all(checks.values()):
                failures += 1
                counterexamples.append({"N0": n0, "failed": [k for k, v in checks.items() if not v], "map": dumps(r.map)})
        n2 = 2 * n0 + 4 * cfg.genus - 4
        orbit_sum = sum(Fraction(3 * n2, r.aut_order) for r in res.records)
        orbit_ok = orbit_sum == res.rooted_count
        rep.rows.append(
            {
                "N0": n0,
                "classes": len(res.records),
                "failures": failures,
                "rooted_maps": res.rooted_count,
                "orbit_sum": orbit_sum,
                "orbit_identity": orbit_ok,
                "card_q": card_q_assignments(cfg.genus, n0, cfg.min_degree),
            }
        )
        if not orbit_ok:
            counterexamples.append({"N0": n0, "failed": ["orbit_identity"]})
    rng = random.Random(cfg.seed)
    worst = 0.0
    for _ in range(100):
        r = rng.uniform(0.05, 0.95)
        th = rng.uniform(0, 2 * math.pi)
        worst = max(worst, abs(gaussian_curvature_fd(complex(r * math.cos(th), r * math.sin(th))) + 1))
    rep.summary["hyperbolic_curvature_max_error"] = worst
    rep.summary["counterexamples"] = counterexamples
    rep.passed = not counterexamples and worst <= 1e-4


def run(cfg: RunConfig) -> Report:
    rep = Report(config=cfg.echo())
    start = time.perf_counter()
    if cfg.command == "enumerate":
        _cmd_enumerate(cfg, rep)
    elif cfg.command == "wp-vol":
        _cmd_wp_vol(cfg, rep)
    elif cfg.command == "asymptotics":
        _cmd_factorization(cfg, rep, with_asymptotics=True)
    elif cfg.command == "report-factorization":
        _cmd_factorization(cfg, rep, with_asymptotics=False)
    elif cfg.command == "atlas":
        _cmd_atlas(cfg, rep)
    elif cfg.command == "verify":
        _cmd_verify(cfg, rep)
    else:
        raise UsageError(f"unknown command {cfg.command!r}")
    rep.timings["wall_seconds"] = time.perf_counter() - start
    return rep


# --- argument parsing -------------------------------------------------------

def parse_range(text: str) -> tuple[int, ...]:
    """``"3..6"`` -> (3, 4, 5, 6); ``"4"`` -> (4,)."""
    text = text.strip()
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
            return tuple(range(lo, hi + 1))
        return (int(text),)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer or a..b range: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--genus", type=int, default=0)
    common.add_argument("--vertices", type=parse_range, default=None, help="N0 or a..b")
    common.add_argument("--min-degree", type=int, choices=(1, 2, 3), default=2)
    common.add_argument("--format", choices=("json", "csv"), default=None)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--precision", type=float, default=1e-12, help="numeric tolerance, at least 1e-12")
    common.add_argument("--c-g", dest="c_g", type=float, default=None, help="prefactor for count asymptotics")
    common.add_argument("--C1", dest="C1", type=float, default=None, help="lower genus-bound constant")
    common.add_argument("--C2", dest="C2", type=float, default=None, help="upper genus-bound constant")
    common.add_argument("--no-timings", action="store_true", help="omit wall-clock timings from JSON")

    parser = argparse.ArgumentParser(prog="dtmoduli", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="isomorph-free triangulation classes")
    p.add_argument("--labeled", action="store_true")
    p.add_argument("--emit", choices=("maps", "counts"), default="maps")

    p = sub.add_parser("wp-vol", parents=[common], help="Weil-Petersson volume")
    p.add_argument("--punctures", type=parse_range, required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="mode", action="store_const", const="exact")
    mode.add_argument("--asymptotic", dest="mode", action="store_const", const="asymptotic")
    p.set_defaults(mode="exact")

    p = sub.add_parser("asymptotics", parents=[common], help="exact counts and volumes next to asymptotics")
    p.add_argument("--range", dest="range_", type=parse_range, default=None)

    sub.add_parser("report-factorization", parents=[common], help="card_dt, card_q and volume table")

    p = sub.add_parser("atlas", parents=[common], help="charts of a metric ribbon graph")
    p.add_argument("--input", required=True)
    p.add_argument("--emit", choices=("charts", "checks"), default="charts")

    sub.add_parser("verify", parents=[common], help="invariant sweep over enumerated classes")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    vertices = ns.vertices
    if ns.command == "wp-vol":
        vertices = ns.punctures
    elif ns.command == "asymptotics" and ns.range_ is not None:
        vertices = ns.range_
    default_format = "csv" if ns.command == "enumerate" else "json"
    return RunConfig(
        command=ns.command,
        genus=ns.genus,
        vertices=tuple(vertices or ()),
        min_degree=ns.min_degree,
        format=ns.format or default_format,
        workers=ns.workers,
        seed=ns.seed,
        labeled=getattr(ns, "labeled", False),
        emit=getattr(ns, "emit", None),
        mode=getattr(ns, "mode", "exact"),
        input=getattr(ns, "input", None),
        precision=ns.precision,
        c_g=ns.c_g,
        C1=ns.C1,
        C2=ns.C2,
    )


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        rep = run(cfg)
    except (UsageError, TopologicallyUnstableError, UnstableModuliError, MalformedMapError, FileNotFoundError) as exc:
        print(f"dtmoduli: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InconsistencyError as exc:
        print(json.dumps({"passed": False, "diagnostic": str(exc)}), file=sys.stdout)
        return EXIT_FAILED
    if cfg.command == "wp-vol" and cfg.format == "json" and len(rep.rows) == 1:
        # single volume: the bare value object
        sys.stdout.write(json.dumps(_clean(rep.rows[0]), sort_keys=True) + "\n")
    elif cfg.format == "csv":
        sys.stdout.write(rep.to_csv())
    else:
        sys.stdout.write(rep.to_json(timings=not ns.no_timings) + "\n")
    return EXIT_OK if rep.passed else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
