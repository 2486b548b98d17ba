"""Figure rendering for traced fronts and cost counters.

Everything renders through the Agg backend straight to files; no display
server is ever touched.  SVG output is kept reproducible by pinning the
id-hash salt and dropping the date metadata.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

plt.rcParams["svg.hashsalt"] = "paretopath"

_SVG_METADATA = {"Date": None}


def save_front_figure(fronts: dict, path, title: str | None = None) -> None:
    """Objective-space scatter (f_1 vs f_2) of one or more fronts, for m = 2.

    fronts maps a label (usually the method name) to a ParetoFront; all are
    overlaid on shared axes.
    """
    fig, ax = plt.subplots(figsize=(5.0, 4.0), constrained_layout=True)
    markers = ["o", "s", "^", "d"]
    for k, (label, front) in enumerate(sorted(fronts.items())):
        objs = front.objectives()
        ax.plot(
            objs[:, 0],
            objs[:, 1],
            markers[k % len(markers)],
            ms=3.5,
            mfc="none",
            lw=0.8,
            ls="-",
            alpha=0.8,
            label=label,
        )
    ax.set_xlabel("$f_1(x)$")
    ax.set_ylabel("$f_2(x)$")
    if title:
        ax.set_title(title)
    ax.grid(True, lw=0.3, alpha=0.5)
    ax.legend(frameon=False)
    fig.savefig(path, format="svg", metadata=_SVG_METADATA)
    plt.close(fig)


def save_counters_figure(rows: list[dict], path, title: str | None = None) -> None:
    """Grouped bar chart of evaluation counters per method for one spacing.

    rows are benchmark report rows (dicts with "method" and "counters").
    Counts sit on a log scale since methods differ by orders of magnitude.
    """
    kinds = ["grad_evals", "hess_evals", "linear_solves", "gd_iters", "newton_iters"]
    methods = [row["method"] for row in rows]
    fig, ax = plt.subplots(figsize=(6.0, 4.0), constrained_layout=True)
    width = 0.8 / max(1, len(methods))
    for j, row in enumerate(rows):
        counts = [max(row["counters"][k], 0) for k in kinds]
        offsets = [i + j * width for i in range(len(kinds))]
        ax.bar(offsets, counts, width=width, label=methods[j])
    ax.set_xticks([i + 0.4 - width / 2 for i in range(len(kinds))])
    ax.set_xticklabels(kinds, rotation=20)
    ax.set_yscale("symlog")
    ax.set_ylabel("count")
    if title:
        ax.set_title(title)
    ax.legend(frameon=False)
    fig.savefig(path, format="svg", metadata=_SVG_METADATA)
    plt.close(fig)
