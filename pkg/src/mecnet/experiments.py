"""Experiment pipeline: instances -> routing comparison -> CSV/SVG reports.

Per instance, the pipeline builds the controlled network, checks that the
measurement sequence reproduces the combinatorial complement (aborting
with a serialized counterexample if not), partitions each request batch,
validates conflict-free extraction per group, routes the same batch with
the shortest-path baseline, and evaluates the closed-form metrics on a
timing grid.  Aggregates are deterministic for a fixed config and seed.
"""

from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from statistics import mean, pstdev
from typing import Optional, Sequence

import numpy as np

from .cqr import cqr_batch
from .metrics import MetricsRecord, TimingParams
from .netgen import GenConfig, InsufficientPairsError, generate_inter_qnet, sample_requests
from .pairs import dynamic_parallel_pairs
from .qnet import (
    InterQNet,
    build_controlled,
    complement_inter_qnet,
    extract_epr,
    instance_from_text,
    instance_to_text,
    mec_complementation,
)
from .svgplot import grouped_bars, line_chart

__all__ = [
    "ExperimentConfig",
    "PipelineMismatch",
    "InstanceResult",
    "run_instance",
    "run_experiment",
    "write_reports",
    "render_figures",
    "generate_instances",
]

SCHEMAS = {
    "hops": "mecnet.hops.v1",
    "parallelism": "mecnet.parallelism.v1",
    "arqf": "mecnet.arqf.v1",
    "throughput": "mecnet.throughput.v1",
}


class PipelineMismatch(AssertionError):
    """Measurement-sequence result disagreed with the complement oracle."""

    def __init__(self, message: str, instance_text: str):
        super().__init__(message)
        self.instance_text = instance_text


@dataclass(frozen=True)
class ExperimentConfig:
    seed: int = 1
    output_dir: str = "out"
    repetitions: int = 10
    nodes: int = 50
    qnet_counts: tuple[int, ...] = (4,)
    densities: tuple[float, ...] = (0.2, 0.8)
    request_volumes: tuple[int, ...] = (10, 20)
    seed_policy: str = "greedy_max"
    timing_grid: tuple[TimingParams, ...] = (TimingParams(10, 3, 1, 4, 1),)
    jobs: int = 1
    instance_files: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.repetitions < 1:
            raise ValueError("repetitions must be at least 1")
        if not (self.qnet_counts or self.instance_files):
            raise ValueError("no experiment selected")
        if not self.request_volumes or not self.timing_grid:
            raise ValueError("need at least one request volume and timing point")
        if self.jobs < 1:
            raise ValueError("jobs must be positive")

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        timing = tuple(
            TimingParams(t["lam"], t["tpm"], t["trm"], t["tpb"], t["trb"])
            for t in d.get("timing_grid", [{"lam": 10, "tpm": 3, "trm": 1, "tpb": 4, "trb": 1}])
        )
        return cls(
            seed=d.get("seed", 1),
            output_dir=d.get("output_dir", "out"),
            repetitions=d.get("repetitions", 10),
            nodes=d.get("nodes", 50),
            qnet_counts=tuple(d.get("qnet_counts", [4])),
            densities=tuple(d.get("densities", [0.2, 0.8])),
            request_volumes=tuple(d.get("request_volumes", [10, 20])),
            seed_policy=d.get("seed_policy", "greedy_max"),
            timing_grid=timing,
            jobs=d.get("jobs", 1),
            instance_files=tuple(d.get("instance_files", [])),
        )

    @classmethod
    def from_json(cls, path: str) -> "ExperimentConfig":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


def derive_seed(*parts: int) -> int:
    return int(np.random.SeedSequence(list(parts)).generate_state(1)[0])


def even_sizes(nodes: int, k: int) -> tuple[int, ...]:
    base, extra = divmod(nodes, k)
    return tuple(base + (1 if i < extra else 0) for i in range(k))


@dataclass
class VolumeResult:
    volume: int
    skipped: bool = False
    rho: int = 0
    r_bar: float = 0.0
    h_bar: Optional[float] = None
    chi: int = 0
    q_cqr: int = 0
    q_pro: int = 0
    q_ond: int = 0
    metrics: list[MetricsRecord] = field(default_factory=list)


@dataclass
class InstanceResult:
    k: int
    p: float
    rep: int
    volumes: list[VolumeResult] = field(default_factory=list)


def run_instance(
    iq: InterQNet,
    volumes: Sequence[int],
    timing_grid: Sequence[TimingParams],
    seed_policy: str,
    request_seed: int,
    k: int,
    p: float,
    rep: int,
) -> InstanceResult:
    cg = build_controlled(iq)
    oracle = complement_inter_qnet(iq)
    try:
        measured, _ = mec_complementation(cg)
    except ValueError as exc:
        raise PipelineMismatch(
            f"measurement sequence failed: {exc}", instance_to_text(cg)
        ) from exc
    if measured.graph != oracle.graph:
        raise PipelineMismatch(
            "complementation mismatch against the edge-set oracle",
            instance_to_text(cg),
        )
    out = InstanceResult(k=k, p=p, rep=rep)
    part = iq.partition
    for vi, vol in enumerate(volumes):
        vr = VolumeResult(volume=vol)
        try:
            rs = sample_requests(iq, vol, derive_seed(request_seed, vi))
        except InsufficientPairsError:
            vr.skipped = True
            out.volumes.append(vr)
            continue
        table = dynamic_parallel_pairs(cg, rs, seed_policy=seed_policy)
        for group in table.groups:
            extract_epr(measured, group)  # raises on any extraction conflict
        paths, h_bar, chi, _ = cqr_batch(cg, rs.requests)
        assert all(p_.hops >= 2 for p_ in paths), "remote requests start non-adjacent"
        vr.rho = table.rho
        vr.r_bar = len(rs.requests) / table.rho if table.rho else 0.0
        vr.h_bar = h_bar
        vr.chi = chi
        vr.q_cqr = 2 * len(rs.requests) + 2 * chi
        for t in timing_grid:
            rec = MetricsRecord.build(
                t, len(rs.requests), table.rho, h_bar, chi, part.k_prime, part.sizes()
            )
            vr.metrics.append(rec)
        if vr.metrics:
            vr.q_pro = vr.metrics[0].q_mec_pro
            vr.q_ond = vr.metrics[0].q_mec_ond
        out.volumes.append(vr)
    return out


def _run_task(args: tuple) -> InstanceResult:
    cfg_seed, nodes, k, p, rep, volumes, timing, policy = args
    gen_seed = derive_seed(cfg_seed, k, int(p * 1_000_000), rep)
    iq = generate_inter_qnet(GenConfig(k, even_sizes(nodes, k), p, gen_seed))
    req_seed = derive_seed(cfg_seed, k, int(p * 1_000_000), rep, 17)
    return run_instance(iq, volumes, timing, policy, req_seed, k, p, rep)


def generate_instances(cfg: ExperimentConfig, out_dir: str) -> list[str]:
    """Write one instance file per (k, density, repetition); returns paths."""
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    meta_lines = []
    for k in cfg.qnet_counts:
        for p in cfg.densities:
            for rep in range(cfg.repetitions):
                gen_seed = derive_seed(cfg.seed, k, int(p * 1_000_000), rep)
                iq = generate_inter_qnet(
                    GenConfig(k, even_sizes(cfg.nodes, k), p, gen_seed)
                )
                name = f"k{k}_p{p:g}_r{rep}.txt"
                path = os.path.join(out_dir, name)
                with open(path, "w", encoding="utf-8") as fh:
                    fh.write(instance_to_text(iq))
                paths.append(path)
                meta_lines.append(
                    json.dumps(
                        {
                            "file": name,
                            "k": k,
                            "p": p,
                            "rep": rep,
                            "seed": gen_seed,
                            "nodes": iq.graph.vertex_count,
                            "edges": iq.graph.edge_count,
                        },
                        sort_keys=True,
                    )
                )
    with open(os.path.join(out_dir, "metadata.jsonl"), "w", encoding="utf-8") as fh:
        fh.write("\n".join(meta_lines) + "\n")
    return paths


def run_experiment(cfg: ExperimentConfig) -> list[InstanceResult]:
    if cfg.instance_files:
        results = []
        for i, path in enumerate(cfg.instance_files):
            with open(path, encoding="utf-8") as fh:
                net = instance_from_text(fh.read())
            iq = net if isinstance(net, InterQNet) else net.data_network()
            req_seed = derive_seed(cfg.seed, i, 17)
            results.append(
                run_instance(
                    iq,
                    cfg.request_volumes,
                    cfg.timing_grid,
                    cfg.seed_policy,
                    req_seed,
                    iq.partition.k,
                    -1.0,
                    i,
                )
            )
        return results
    tasks = [
        (cfg.seed, cfg.nodes, k, p, rep, cfg.request_volumes, cfg.timing_grid, cfg.seed_policy)
        for k in cfg.qnet_counts
        for p in cfg.densities
        for rep in range(cfg.repetitions)
    ]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_run_task, tasks))
    else:
        results = [_run_task(t) for t in tasks]
    return results


# -- aggregation and reports ---------------------------------------------------


def _csv_text(schema: str, header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    buf.write(f"# {schema}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _group_key(r: InstanceResult, v: VolumeResult) -> tuple:
    return (r.p, r.k, v.volume)


def write_reports(
    results: list[InstanceResult],
    out_dir: str,
    timing_grid: Sequence[TimingParams] = (),
) -> dict[str, str]:
    """Aggregate across repetitions and write the CSV tables; returns paths."""
    os.makedirs(out_dir, exist_ok=True)
    cells: dict[tuple, list[VolumeResult]] = {}
    for r in results:
        for v in r.volumes:
            if not v.skipped:
                cells.setdefault(_group_key(r, v), []).append(v)

    hops_rows, par_rows, arqf_rows, thr_rows = [], [], [], []
    for key in sorted(cells):
        p, k, vol = key
        vs = cells[key]
        n = len(vs)
        hbars = [v.h_bar for v in vs if v.h_bar is not None]
        hops_rows.append(
            [
                p,
                k,
                vol,
                n,
                1.0,
                round(mean(hbars), 6) if hbars else "",
                round(pstdev(hbars), 6) if len(hbars) > 1 else 0.0,
                round(mean(1 - 1 / h for h in hbars), 6) if hbars else "",
            ]
        )
        par_rows.append(
            [
                p,
                k,
                vol,
                n,
                round(mean(v.r_bar for v in vs), 6),
                round(pstdev([v.r_bar for v in vs]), 6) if n > 1 else 0.0,
                round(mean(v.rho for v in vs), 6),
                round(pstdev([v.rho for v in vs]), 6) if n > 1 else 0.0,
            ]
        )
        ond_le = mean(1.0 if v.q_ond <= v.q_cqr else 0.0 for v in vs)
        arqf_rows.append(
            [
                p,
                k,
                vol,
                n,
                round(mean(v.q_cqr for v in vs), 6),
                round(mean(v.q_pro for v in vs), 6),
                round(mean(v.q_ond for v in vs), 6),
                round(ond_le, 6),
            ]
        )
        by_timing: dict[int, list[MetricsRecord]] = {}
        for v in vs:
            for ti, recm in enumerate(v.metrics):
                by_timing.setdefault(ti, []).append(recm)
        for ti in sorted(by_timing):
            recs = by_timing[ti]
            t = timing_grid[ti] if ti < len(timing_grid) else None
            thr_rows.append(
                [
                    p,
                    k,
                    vol,
                    float(t.lam) if t else "",
                    float(t.tpm) if t else "",
                    float(t.trm) if t else "",
                    float(t.tpb) if t else "",
                    float(t.trb) if t else "",
                    round(mean(r.r_bar for r in recs), 6),
                    round(mean(r.fm for r in recs), 6),
                    round(mean(r.fb for r in recs), 6),
                ]
            )

    paths = {}
    tables = {
        "hops": (
            ["p", "k", "volume", "instances", "mec_hops", "cqr_hops_mean", "cqr_hops_std", "hop_reduction"],
            hops_rows,
        ),
        "parallelism": (
            ["p", "k", "volume", "instances", "r_bar_mean", "r_bar_std", "rho_mean", "rho_std"],
            par_rows,
        ),
        "arqf": (
            ["p", "k", "volume", "instances", "q_cqr_mean", "q_mec_pro_mean", "q_mec_ond_mean", "ond_le_cqr_frac"],
            arqf_rows,
        ),
        "throughput": (
            ["p", "k", "volume", "lambda", "tpm", "trm", "tpb", "trb", "r_bar", "fm", "fb"],
            thr_rows,
        ),
    }
    for name, (header, rows) in tables.items():
        path = os.path.join(out_dir, f"{name}.csv")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(_csv_text(SCHEMAS[name], header, rows))
        paths[name] = path
    return paths


def _read_csv(path: str) -> tuple[list[str], list[list[str]]]:
    with open(path, encoding="utf-8") as fh:
        lines = [ln for ln in fh.read().splitlines() if not ln.startswith("#")]
    rows = list(csv.reader(lines))
    return rows[0], rows[1:]


def render_figures(out_dir: str) -> list[str]:
    """Rebuild the SVG figures purely from the CSV tables in ``out_dir``."""
    written = []

    header, rows = _read_csv(os.path.join(out_dir, "hops.csv"))
    series: dict[str, list[tuple[float, float]]] = {}
    for row in rows:
        rec = dict(zip(header, row))
        if rec["cqr_hops_mean"] == "":
            continue
        label = f"CQR k={rec['k']} p={rec['p']}"
        series.setdefault(label, []).append(
            (float(rec["volume"]), float(rec["cqr_hops_mean"]))
        )
        series.setdefault("MEC (all regimes)", []).append((float(rec["volume"]), 1.0))
    path = os.path.join(out_dir, "hops.svg")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(line_chart(series, "Average hops per request", "requests", "hops"))
    written.append(path)

    header, rows = _read_csv(os.path.join(out_dir, "parallelism.csv"))
    rbar: dict[str, list[tuple[float, float]]] = {}
    rho: dict[str, list[tuple[float, float]]] = {}
    for row in rows:
        rec = dict(zip(header, row))
        label = f"k={rec['k']} p={rec['p']}"
        rbar.setdefault(label, []).append((float(rec["volume"]), float(rec["r_bar_mean"])))
        rho.setdefault(label, []).append((float(rec["volume"]), float(rec["rho_mean"])))
    for name, data, ylab in (
        ("parallelism_rbar", rbar, "parallel requests per cycle"),
        ("parallelism_rho", rho, "cycles"),
    ):
        path = os.path.join(out_dir, f"{name}.svg")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(line_chart(data, "Scheduler parallelism", "requests", ylab))
        written.append(path)

    header, rows = _read_csv(os.path.join(out_dir, "arqf.csv"))
    groups = []
    qc, qp, qo = [], [], []
    for row in rows:
        rec = dict(zip(header, row))
        groups.append(f"k={rec['k']} p={rec['p']} |R|={rec['volume']}")
        qc.append(float(rec["q_cqr_mean"]))
        qp.append(float(rec["q_mec_pro_mean"]))
        qo.append(float(rec["q_mec_ond_mean"]))
    path = os.path.join(out_dir, "arqf.svg")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(
            grouped_bars(
                groups,
                {"CQR": qc, "proactive": qp, "on-demand": qo},
                "Aggregate routing-qubit footprint",
                "configuration",
                "qubits",
            )
        )
    written.append(path)

    header, rows = _read_csv(os.path.join(out_dir, "throughput.csv"))
    fm: dict[str, list[tuple[float, float]]] = {}
    for row in rows:
        rec = dict(zip(header, row))
        label = f"k={rec['k']} p={rec['p']} lam={rec['lambda']}"
        fm.setdefault(f"MEC {label}", []).append((float(rec["volume"]), float(rec["fm"])))
        fm.setdefault(f"CQR {label}", []).append((float(rec["volume"]), float(rec["fb"])))
    path = os.path.join(out_dir, "throughput.svg")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(line_chart(fm, "Throughput", "requests", "served per time unit"))
    written.append(path)
    return written
