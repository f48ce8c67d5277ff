"""PNG rendering of the figure datasets (needs matplotlib)."""

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

STYLE = {
    "font.size": 9,
    "axes.labelsize": 9,
    "legend.fontsize": 7,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "lines.linewidth": 1.2,
    "savefig.dpi": 150,
}
# PNG metadata without version strings, so output only depends on the data
_META = {"Software": None}


def _vs_n(ax, rows, exact_key, approx_keys, title, logy=False):
    n = [r["n"] for r in rows]
    ax.plot(n, [r[exact_key] for r in rows], "k-", label="exact")
    for key, mark in zip(approx_keys, ("--", "-.", ":")):
        ax.plot(n, [r[key] for r in rows], mark, label=key)
    ax.set_xscale("log")
    if logy:
        ax.set_yscale("log")
    ax.set_xlabel("n")
    ax.set_title(title)
    ax.legend()


def _errors(ax, rows, along, prefix, title):
    xs = [getattr(r, along) for r in rows]
    for i, mark in zip((1, 2, 3), ("-", "--", ":")):
        ax.plot(xs, [getattr(r, f"{prefix}{i}") for r in rows], mark, label=f"{prefix}{i}")
    ax.set_yscale("log")
    ax.set_xlabel(along)
    ax.set_title(title)
    ax.legend()


def render_figure(which, datasets, out_dir):
    with plt.rc_context(STYLE):
        if which == 1:
            fig, (left, right) = plt.subplots(1, 2, figsize=(8, 3.2))
            rows = datasets["fig1"][0]
            _vs_n(left, rows, "exact_cdf", ["s1", "s2", "s3"], "joint cdf, k = 1")
            _vs_n(right, rows, "exact_pdf", ["t1", "t2", "t3"], "joint pdf, k = 1", logy=True)
        elif which == 2:
            fig, axes = plt.subplots(2, 2, figsize=(8, 6))
            for ax, (stem, (rows, _)) in zip(axes.flat, sorted(datasets.items())):
                _vs_n(ax, rows, "exact_pdf", ["t1", "t2", "t3"], stem.replace("fig2_", ""), logy=True)
        else:
            prefix = "delta" if which == 3 else "theta"
            fig, axes = plt.subplots(2, 2, figsize=(8, 6))
            for ax, (stem, (rows, _)) in zip(axes.flat, sorted(datasets.items())):
                along = "x" if stem.endswith(("_a", "_b")) else "y"
                fixed = "y" if along == "x" else "x"
                value = getattr(rows[0], fixed)
                _errors(ax, [r for r in rows if getattr(r, prefix + "1") > 0], along, prefix,
                        f"{fixed} = {value:g}, n = {rows[0].n:g}")
        fig.tight_layout()
        path = os.path.join(out_dir, f"fig{which}.png")
        fig.savefig(path, metadata=_META)
        plt.close(fig)
    return path
