import functools

import numpy as np
import pytest
from hypothesis import settings
from scipy import ndimage

from abspec.families import make_annulus, make_disk
from abspec.potential import pole_potential_from_domain
from abspec.solver import discretize

settings.register_profile("abspec", max_examples=25, deadline=None, derandomize=True)
settings.load_profile("abspec")


@functools.lru_cache(maxsize=None)
def annulus_grid(spacing: float, flux: float = 0.5):
    dom = make_annulus(0.5, 1.0)
    return discretize(dom, pole_potential_from_domain(dom, [flux]), spacing)


@pytest.fixture(scope="session")
def annulus():
    return make_annulus(0.5, 1.0)


@pytest.fixture(scope="session")
def disk():
    return make_disk()


def raster_simply_connected(domain, cuts, spacing=1 / 400, thickness=None):
    """Independent topology oracle: rasterise Omega minus thickened cuts.

    Simply connected iff the region is one 4-connected piece and its
    complement (padded, 8-connected) is one piece as well.
    """
    x0, y0, x1, y1 = domain.bbox()
    pad = 3 * spacing
    xs = np.arange(x0 - pad, x1 + pad, spacing)
    ys = np.arange(y0 - pad, y1 + pad, spacing)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    P = np.column_stack([X.ravel(), Y.ravel()])
    inside = domain.contains(P, include_punctures=False)
    t = thickness or 1.5 * spacing
    for s in cuts.segments:
        a = np.array(s.a)
        d = np.array(s.b) - a
        u = np.clip(((P - a) @ d) / (d @ d), 0, 1)
        inside &= np.linalg.norm(P - a - u[:, None] * d, axis=1) > t
    if domain.punctures:
        for p in domain.punctures:
            inside &= np.hypot(P[:, 0] - p[0], P[:, 1] - p[1]) > t
    region = inside.reshape(X.shape)
    _, n_in = ndimage.label(region)
    _, n_out = ndimage.label(~region, structure=np.ones((3, 3)))
    return n_in == 1 and n_out == 1


ACCEPTANCE_LINES = []


def record_criterion(number: int, title: str, ok: bool, detail: str = ""):
    """Print (and remember for the session summary) one pass/fail line."""
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {title}" + (f" -- {detail}" if detail else "")
    ACCEPTANCE_LINES.append((number, line))
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
