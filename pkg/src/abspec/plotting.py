"""Static SVG figures: domains, nets, partitions, cuts and eigenvector moduli."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .geometry import Curve  # noqa: E402

# byte-stable SVG output
matplotlib.rcParams["svg.hashsalt"] = "abspec"
matplotlib.rcParams["path.simplify"] = False


def _closed(curve: Curve, n: int = 720) -> np.ndarray:
    if curve.kind == "polygon":
        pts = curve.array
    else:
        pts = curve.sample(n)
    return np.vstack([pts, pts[:1]])


def draw_domain(ax, domain, color="k"):
    for c in (domain.outer, *domain.holes):
        p = _closed(c)
        ax.plot(p[:, 0], p[:, 1], color=color, lw=0.8)
    if domain.punctures:
        P = np.asarray(domain.punctures)
        ax.plot(P[:, 0], P[:, 1], "x", color="tab:red", ms=3, mew=0.8)
    ax.set_aspect("equal")


def draw_partition(ax, partition, net=None):
    for cell in partition.cells:
        c = np.vstack([cell, cell[:1]])
        ax.plot(c[:, 0], c[:, 1], color="tab:blue", lw=0.5)
    P = partition.owners
    ax.plot(P[:, 0], P[:, 1], ".", color="tab:red", ms=3)
    if net is not None:
        th = np.linspace(0, 2 * np.pi, 121)
        for p in P:
            for rad, ls in ((net.epsilon / 2, ":"), (2 * net.epsilon, "--")):
                ax.plot(p[0] + rad * np.cos(th), p[1] + rad * np.sin(th), ls, color="0.6", lw=0.3)


def draw_cuts(ax, cuts):
    for s in cuts.segments:
        ax.plot([s.a.x, s.b.x], [s.a.y, s.b.y], color="tab:orange", lw=1.5)


def draw_modulus(ax, grid, u, cmap="viridis"):
    field = grid.grid_field(np.abs(u))
    x0 = grid.origin.x
    y0 = grid.origin.y
    nx, ny = grid.shape
    h = grid.spacing
    im = ax.imshow(field.T, origin="lower", extent=(x0, x0 + nx * h, y0, y0 + ny * h),
                   cmap=cmap, interpolation="nearest")
    ax.set_aspect("equal")
    return im


def save(fig, path):
    fig.savefig(path, format="svg", metadata={"Date": None}, bbox_inches="tight")
    plt.close(fig)


def figure(title: str | None = None, size=(4.0, 4.0)):
    fig, ax = plt.subplots(figsize=size)
    if title:
        ax.set_title(title, fontsize=9)
    ax.tick_params(labelsize=7)
    return fig, ax


def domain_figure(path, domain, cuts=None, partition=None, net=None, title=None):
    fig, ax = figure(title)
    draw_domain(ax, domain)
    if partition is not None:
        draw_partition(ax, partition, net)
    elif net is not None:
        P = np.asarray(net.points)
        ax.plot(P[:, 0], P[:, 1], ".", color="tab:red", ms=3)
    if cuts is not None:
        draw_cuts(ax, cuts)
    save(fig, path)


def modulus_figure(path, grid, u, domain=None, title=None):
    fig, ax = figure(title)
    im = draw_modulus(ax, grid, u)
    if domain is not None:
        draw_domain(ax, domain, color="w")
    fig.colorbar(im, ax=ax, shrink=0.8)
    save(fig, path)


def trend_figure(path, x, series: dict, xlabel: str, ylabel: str, title=None, logy=False):
    fig, ax = figure(title, size=(4.5, 3.2))
    for label, y in series.items():
        ax.plot(x, y, "o-", ms=3, lw=1, label=label)
    ax.set_xlabel(xlabel, fontsize=8)
    ax.set_ylabel(ylabel, fontsize=8)
    if logy:
        ax.set_yscale("log")
    ax.legend(fontsize=7)
    save(fig, path)
