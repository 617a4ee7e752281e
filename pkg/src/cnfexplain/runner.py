"""Run configurations, result persistence and benchmark report tables."""

from __future__ import annotations

import csv
import json
import time
from dataclasses import dataclass, field
from pathlib import Path

from .formula import sorted_lits
from .growing import GrowKind, GrowStrategy
from .instances import InstanceFile
from .sequence import CostPolicy, ExplanationSequence, OneStepStrategy, explain_sequence

QUANTILES = (25, 50, 75, 95, 98, 100)


@dataclass(frozen=True)
class RunConfig:
    strategy: OneStepStrategy = OneStepStrategy.OCUS
    grow: GrowStrategy = GrowStrategy(GrowKind.SAT)
    incremental: bool = False
    seed: int | None = None
    time_limit: float | None = 60.0

    def label(self) -> str:
        parts = [self.strategy.value]
        grow = ("multi-" if self.grow.multi else "") + self.grow.kind.value
        parts.append(grow)
        if self.incremental:
            parts.append("incr")
        return "/".join(parts)

    @classmethod
    def parse(cls, text: str) -> "RunConfig":
        """Parse labels like 'ocus-split/multi-subsetmax/incr' or 'mus/none'."""
        parts = [p for p in text.strip().split("/") if p]
        if not parts:
            raise ValueError("empty run configuration")
        strategy = OneStepStrategy(parts[0])
        grow = GrowStrategy(GrowKind.SAT)
        incremental = False
        seed = None
        for part in parts[1:]:
            if part == "incr":
                incremental = True
            elif part.startswith("seed="):
                seed = int(part.removeprefix("seed="))
            else:
                grow = GrowStrategy.named(part)
        return cls(strategy, grow, incremental, seed)


@dataclass
class RunReport:
    instance: str
    config: str
    complete: bool
    explained_fraction: float
    total_wall: float
    t1: float
    mean_step_time: float
    quantiles: dict[str, float]
    pct_opt: float
    pct_sat: float
    pct_corrss: float
    n_sth: int
    step_records: list[dict] = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(self.__dict__, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        return cls(**json.loads(text))


def run(
    instance: InstanceFile,
    config: RunConfig = RunConfig(),
    policy: CostPolicy = CostPolicy(),
) -> tuple[RunReport, ExplanationSequence]:
    """Explain one instance under one configuration and summarize the effort."""
    t0 = time.perf_counter()
    sequence = explain_sequence(
        instance.clauses,
        policy=policy,
        i0=instance.initial,
        strategy=config.strategy,
        grow=config.grow,
        incremental=config.incremental,
        constraint_weights=instance.resolved_weights(policy),
        seed=config.seed,
        time_limit=config.time_limit,
    )
    total_wall = time.perf_counter() - t0
    report = summarize(instance.name, config.label(), sequence, total_wall)
    return report, sequence


def summarize(
    instance_name: str,
    config_label: str,
    sequence: ExplanationSequence,
    total_wall: float,
) -> RunReport:
    steps = sequence.steps
    walls = [s.stats.wall for s in steps]
    records = [
        {
            "target": s.target,
            "cost": s.cost,
            "facts": sorted_lits(s.used_facts),
            "constraints": sorted(s.used_constraints),
            "derived": sorted_lits(s.derived),
            "wall": s.stats.wall,
            "time_hs": s.stats.time_hs,
            "time_sat": s.stats.time_sat,
            "time_grow": s.stats.time_grow,
            "iterations": s.stats.iterations,
            "sets_added": s.stats.sets_added,
        }
        for s in steps
    ]
    base = total_wall if total_wall > 0 else 1.0
    return RunReport(
        instance=instance_name,
        config=config_label,
        complete=sequence.complete,
        explained_fraction=sequence.explained_fraction(),
        total_wall=total_wall,
        t1=walls[0] if walls else 0.0,
        mean_step_time=sum(walls) / len(walls) if walls else 0.0,
        quantiles={f"q{q}": _quantile(walls, q) for q in QUANTILES},
        pct_opt=100.0 * sum(s.stats.time_hs for s in steps) / base,
        pct_sat=100.0 * sum(s.stats.time_sat for s in steps) / base,
        pct_corrss=100.0 * sum(s.stats.time_grow for s in steps) / base,
        n_sth=sum(s.stats.sets_added for s in steps),
        step_records=records,
    )


def _quantile(values: list[float], q: int) -> float:
    if not values:
        return 0.0
    ordered = sorted(values)
    rank = max(1, -(-q * len(ordered) // 100))  # nearest-rank, ceil
    return ordered[rank - 1]


def serialize_sequence(sequence: ExplanationSequence, name: str = "") -> str:
    """Structured text, one step per record: used facts, used constraint
    indices, newly derived literals and the step cost."""
    lines = [f"sequence {name}".rstrip()]
    lines.append("initial " + _lit_line(sequence.initial))
    lines.append("final " + _lit_line(sequence.final))
    lines.append(f"complete {'true' if sequence.complete else 'false'}")
    for k, s in enumerate(sequence.steps, start=1):
        lines.append(f"step {k} cost {s.cost}")
        lines.append("  facts " + _lit_line(s.used_facts))
        lines.append("  constraints " + " ".join(str(c) for c in sorted(s.used_constraints)))
        lines.append("  derived " + _lit_line(s.derived))
    return "\n".join(lines) + "\n"


def _lit_line(lits) -> str:
    inner = " ".join(str(l) for l in sorted_lits(lits))
    return (inner + " 0") if inner else "0"


def write_run(outdir: str | Path, report: RunReport, sequence: ExplanationSequence) -> Path:
    """Persist one run: <out>/<instance>__<config>.report.json and .seq files."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    stem = f"{report.instance}__{report.config.replace('/', '-')}"
    (outdir / f"{stem}.seq").write_text(serialize_sequence(sequence, report.instance))
    path = outdir / f"{stem}.report.json"
    path.write_text(report.to_json())
    return path


def load_reports(directory: str | Path) -> list[RunReport]:
    return [
        RunReport.from_json(p.read_text())
        for p in sorted(Path(directory).glob("*.report.json"))
    ]


def report_suite(directory: str | Path, outdir: str | Path | None = None) -> dict[str, Path]:
    """Aggregate run reports into cactus, runtime-decomposition and
    quality-comparison CSV tables."""
    reports = load_reports(directory)
    if not reports:
        raise ValueError(f"no run reports found in {directory}")
    outdir = Path(outdir or directory)
    outdir.mkdir(parents=True, exist_ok=True)
    paths = {
        "cactus": outdir / "cactus.csv",
        "decomposition": outdir / "decomposition.csv",
        "quality": outdir / "quality.csv",
    }
    _write_cactus(paths["cactus"], reports)
    _write_decomposition(paths["decomposition"], reports)
    _write_quality(paths["quality"], reports)
    return paths


def _write_cactus(path: Path, reports: list[RunReport]) -> None:
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["config", "solved", "time"])
        by_config: dict[str, list[float]] = {}
        for r in reports:
            if r.complete:
                by_config.setdefault(r.config, []).append(r.total_wall)
        for config in sorted(by_config):
            for k, t in enumerate(sorted(by_config[config]), start=1):
                w.writerow([config, k, f"{t:.6f}"])


def _write_decomposition(path: Path, reports: list[RunReport]) -> None:
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["config", "explained", "pct_opt", "pct_sat", "pct_corrss", "n_sth"])
        by_config: dict[str, list[RunReport]] = {}
        for r in reports:
            by_config.setdefault(r.config, []).append(r)
        for config in sorted(by_config):
            group = by_config[config]
            solved = sum(1 for r in group if r.complete)
            w.writerow([
                config,
                f"{solved} / {len(group)}",
                f"{_mean([r.pct_opt for r in group]):.2f}",
                f"{_mean([r.pct_sat for r in group]):.2f}",
                f"{_mean([r.pct_corrss for r in group]):.2f}",
                f"{_mean([r.n_sth for r in group]):.1f}",
            ])


def _write_quality(path: Path, reports: list[RunReport]) -> None:
    """Per-step cost pairs of the MUS baseline against each optimal strategy."""
    mus_costs: dict[str, list] = {
        r.instance: [s["cost"] for s in r.step_records]
        for r in reports
        if r.config.startswith("mus")
    }
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["instance", "config", "step", "mus_cost", "cost"])
        for r in reports:
            if r.config.startswith("mus") or r.instance not in mus_costs:
                continue
            baseline = mus_costs[r.instance]
            for k, rec in enumerate(r.step_records):
                mus_cost = baseline[k] if k < len(baseline) else ""
                w.writerow([r.instance, r.config, k + 1, mus_cost, rec["cost"]])


def _mean(values) -> float:
    return sum(values) / len(values) if values else 0.0
