"""Figure rendering for CLI reports.

Opt-in via ``--plot``: figures are written next to the delimited output
and never replace it. All rendering uses the Agg backend so the CLI
works headless.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

_DPI = 150


def _save(fig, path: Path) -> Path:
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path


def plot_metric_histograms(
    values_by_metric: dict[str, list[float]], out_prefix: Path, bins: int = 20
) -> list[Path]:
    """One histogram per metric class, written as <prefix>_<metric>.png."""
    written = []
    for metric in sorted(values_by_metric):
        values = values_by_metric[metric]
        if not values:
            continue
        fig, ax = plt.subplots(figsize=(5.0, 3.2))
        ax.hist(values, bins=bins, color="#4878a8", edgecolor="white")
        ax.set_xlabel(metric.replace("_", " "))
        ax.set_ylabel("count")
        ax.set_title(f"{metric} distribution ({len(values)} observations)")
        written.append(_save(fig, out_prefix.with_name(f"{out_prefix.name}_{metric}.png")))
    return written


def plot_failure_profile(failure_probs: list[float], origins: list[str],
                         result_row: dict, path: Path) -> Path:
    """Per-instruction failure probabilities with the survival curve.

    Routing-inserted operations are drawn darker, exposing where a
    compiled stream spends its error budget.
    """
    fig, (ax_prof, ax_surv) = plt.subplots(2, 1, figsize=(7.0, 4.6), sharex=True)
    xs = range(len(failure_probs))
    colors = ["#a85448" if o == "routing_swap" else "#4878a8" for o in origins]
    ax_prof.vlines(xs, 0.0, failure_probs, colors=colors, linewidth=1.0)
    ax_prof.set_ylabel("failure probability")
    ax_prof.set_title(
        f"{result_row['benchmark']} on {result_row['snapshot_label']} "
        f"({result_row['alloc']}/{result_row['route']}): "
        f"PST {result_row['pst_analytic']:.4g}"
    )
    survival = []
    running = 1.0
    for p in failure_probs:
        running *= 1.0 - p
        survival.append(running)
    ax_surv.plot(xs, survival, color="#333333", linewidth=1.2)
    ax_surv.set_xlabel("instruction index")
    ax_surv.set_ylabel("survival")
    return _save(fig, path)


def plot_sweep(rows: list[dict], path: Path) -> Path:
    """Per-day PST and MIBF for each routing policy."""
    policies = sorted({r["route"] for r in rows})
    days = sorted({r["snapshot_label"] for r in rows})
    fig, (ax_pst, ax_mibf) = plt.subplots(1, 2, figsize=(9.0, 3.4))
    for policy in policies:
        by_day = {r["snapshot_label"]: r for r in rows if r["route"] == policy}
        xs = range(len(days))
        ax_pst.plot(xs, [float(by_day[d]["pst_mc"]) for d in days], marker="o", label=policy)
        ax_mibf.plot(
            xs, [float(by_day[d]["mibf_analytic"]) for d in days], marker="s", label=policy
        )
    for ax, ylabel in ((ax_pst, "PST"), (ax_mibf, "MIBF (analytic)")):
        ax.set_xticks(range(len(days)))
        ax.set_xticklabels(days, rotation=45, ha="right", fontsize=7)
        ax.set_xlabel("calibration day")
        ax.set_ylabel(ylabel)
        ax.legend(fontsize=8)
    return _save(fig, path)


def plot_partition(report_doc: dict, path: Path) -> Path:
    """Bar comparison of the partition study's success rates."""
    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    labels = ["copy X", "copy Y", "two copies", "one strong copy"]
    values = [
        report_doc["pst_x"],
        report_doc["pst_y"],
        report_doc["stpt_two"],
        report_doc["stpt_one"],
    ]
    colors = ["#7aa6c8", "#7aa6c8", "#4878a8", "#a85448"]
    ax.bar(labels, values, color=colors)
    ax.set_ylabel("successful trials per unit time")
    ax.set_title(f"recommendation: {report_doc['recommendation']}")
    return _save(fig, path)
