"""Figure rendering for run and comparison reports.

Renders torque, speed and flux traces from telemetry to image files next
to the CSV output.  Uses the Agg backend; nothing here opens a window.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .harness import Telemetry


def _traces(ax_t, ax_n, ax_f, tel: Telemetry, label: str | None = None):
    t = tel.column("t")
    ax_t.plot(t, tel.column("torque_true"), lw=0.4, label=label)
    ax_n.plot(t, tel.column("speed_rpm"), lw=0.6, label=label)
    ax_f.plot(t, tel.column("flux_mag"), lw=0.4, label=label)


def _decorate(ax_t, ax_n, ax_f, tel: Telemetry):
    ax_t.set_ylabel("torque [N m]")
    ax_n.set_ylabel("speed [rpm]")
    ax_n.plot(tel.column("t"), tel.column("speed_ref_rpm"),
              "k--", lw=0.6, label="reference")
    ax_f.set_ylabel("stator flux [Wb]")
    ax_f.set_xlabel("time [s]")


def render_run(tel: Telemetry, path: str | Path, title: str = "") -> Path:
    """Render one run's torque/speed/flux traces to a single figure."""
    fig, (ax_t, ax_n, ax_f) = plt.subplots(3, 1, figsize=(9, 7), sharex=True)
    _traces(ax_t, ax_n, ax_f, tel)
    ax_f.plot(tel.column("t"), tel.column("flux_ref"),
              "k--", lw=0.6, label="reference")
    _decorate(ax_t, ax_n, ax_f, tel)
    if title:
        fig.suptitle(title)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=130)
    plt.close(fig)
    return path


def render_comparison(tel_a: Telemetry, tel_b: Telemetry,
                      labels: tuple[str, str], path: str | Path,
                      title: str = "") -> Path:
    """Overlay two runs of the same scenario on one figure."""
    fig, (ax_t, ax_n, ax_f) = plt.subplots(3, 1, figsize=(9, 7), sharex=True)
    _traces(ax_t, ax_n, ax_f, tel_a, labels[0])
    _traces(ax_t, ax_n, ax_f, tel_b, labels[1])
    _decorate(ax_t, ax_n, ax_f, tel_b)
    for ax in (ax_t, ax_n, ax_f):
        ax.legend(loc="best", fontsize=8)
    if title:
        fig.suptitle(title)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=130)
    plt.close(fig)
    return path
