"""Figure rendering for sweep outputs.

Each renderer takes the same row tuples the CSV writer receives and
saves a PNG, so the plotted data is exactly the delimited data.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def render_thresholds(rows, path: str) -> None:
    """Rows (curve, x, value): occupation thresholds per curve label."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    curves = {}
    for curve, x, value in rows:
        curves.setdefault(curve, ([], []))
        curves[curve][0].append(x)
        curves[curve][1].append(value)
    for label, (xs, ys) in curves.items():
        ax.plot(xs, ys, label=label)
    ax.set_xlabel("block parameter")
    ax.set_ylabel("occupation threshold N")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_bounds(rows, path: str) -> None:
    """Rows (b, n2, bound_first, bound_second) at fixed a."""
    bs = [r[0] for r in rows]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(bs, [r[1] for r in rows], label="N2 threshold")
    ax.plot(bs, [r[2] for r in rows], label="zero-capacity bound")
    ax.plot(bs, [r[3] for r in rows], label="refined bound")
    ax.set_xlabel("b")
    ax.set_ylabel("N")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_decoupling(rows, path: str) -> None:
    """Rows (x, z_plus, r_threshold): one line per noise level x."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    lines = {}
    for x, z, r in rows:
        lines.setdefault(x, ([], []))
        lines[x][0].append(z)
        lines[x][1].append(r)
    for x in sorted(lines):
        zs, rs = lines[x]
        ax.plot(zs, rs, marker="o", label=f"x = {x:g}")
    ax.set_xlabel("correlation z+")
    ax.set_ylabel("squeezing threshold r")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_table(rows, path: str) -> None:
    """Rows (first, second, draws, in_set): conformance per cell."""
    labels = [f"{r[0]}*{r[1]}" for r in rows]
    fracs = [r[3] / r[2] for r in rows]
    fig, ax = plt.subplots(figsize=(7.0, 4.0))
    ax.bar(range(len(rows)), fracs)
    ax.set_xticks(range(len(rows)))
    ax.set_xticklabels(labels, rotation=45, ha="right")
    ax.set_ylim(0.0, 1.05)
    ax.set_ylabel("fraction inside allowed set")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
