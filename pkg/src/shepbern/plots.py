"""Figure rendering for benchmark reports (max error vs node count)."""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

_MARKERS = ("o", "s", "^", "v", "D", "P", "*")


def plot_function_errors(reports, fid, path):
    """Log-scale max-error-vs-N comparison for one test function."""
    rows = [r for r in reports if r.function == fid and not r.error]
    if not rows:
        return False
    ops = sorted({r.operator for r in rows})
    fig, ax = plt.subplots(figsize=(5.5, 4))
    for op, marker in zip(ops, _MARKERS):
        pts = sorted((r.n, r.max_abs) for r in rows if r.operator == op)
        ax.semilogy([n for n, _ in pts], [e for _, e in pts], marker=marker, label=op)
    ax.set_xlabel("number of nodes")
    ax.set_ylabel("max abs error")
    ax.set_title(f"test function f{fid}")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return True
