"""Figures for example reports: Cartan-matrix heatmaps and q-character bars.

Rendered with matplotlib's Agg backend straight to files."""
import os


def _plt():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def cartan_heatmap(A, labels, path, title=None):
    plt = _plt()
    n = len(A)
    fig, ax = plt.subplots(figsize=(1.0 + 0.6 * n, 0.8 + 0.6 * n))
    ax.imshow(A, cmap="coolwarm_r", vmin=-2, vmax=2)
    for i in range(n):
        for j in range(n):
            ax.text(j, i, str(A[i][j]), ha="center", va="center", fontsize=10)
    ax.set_xticks(range(n))
    ax.set_yticks(range(n))
    ax.set_xticklabels([str(x) for x in labels])
    ax.set_yticklabels([str(x) for x in labels])
    ax.set_title(title or "Cartan matrix")
    fig.tight_layout()
    fig.savefig(path, dpi=100)
    plt.close(fig)
    return path


def qchar_bars(ch, path, title=None):
    """Stacked bars: graded dimension (x = degree) split by idempotent word."""
    plt = _plt()
    words = sorted(ch)
    degs = sorted({d for dd in ch.values() for d in dd})
    fig, ax = plt.subplots(figsize=(max(4.0, 0.5 * len(degs) + 2), 3.2))
    bottom = [0] * len(degs)
    xs = [d / 2 for d in degs]
    for w in words:
        h = [ch[w].get(d, 0) for d in degs]
        ax.bar(xs, h, bottom=bottom, width=0.4, label="(" + ",".join(map(str, w)) + ")")
        bottom = [a + b for a, b in zip(bottom, h)]
    ax.set_xlabel("degree")
    ax.set_ylabel("dimension")
    ax.set_title(title or "q-character")
    if 0 < len(words) <= 12:
        ax.legend(fontsize=7, ncol=2)
    fig.tight_layout()
    fig.savefig(path, dpi=100)
    plt.close(fig)
    return path


def example_figures(d, outdir, modules=()):
    """A^D heatmap plus one q-character chart per (label, module)."""
    from .modules import q_character
    os.makedirs(outdir, exist_ok=True)
    name = d.name or "datum"
    files = [cartan_heatmap(d.cartan_matrix(), d.J, os.path.join(outdir, "cartan_%s.png" % name),
                            "A^D for %s" % name)]
    for label, M in modules:
        if M.dim:
            files.append(qchar_bars(q_character(M), os.path.join(outdir, "qchar_%s_%s.png" % (name, label)),
                                    label))
    return files
