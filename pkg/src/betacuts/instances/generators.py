"""Instance generators: LABS energies, image restoration, cycle hypergraphs."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from ..errors import InfeasibleParams
from ..hypergraph import Hypergraph
from .polynomial import Polynomial, multiply


@dataclass(frozen=True)
class LabsParams:
    N: int
    R: int

    def __post_init__(self):
        if not 3 <= self.R <= self.N:
            raise InfeasibleParams(f"need 3 <= R <= N, got N={self.N}, R={self.R}")

    @property
    def name(self) -> str:
        return f"labs-{self.N:02d}-{self.R:02d}"


def labs_energy(sigma, R: int) -> int:
    """Bernasconi energy of a +-1 sequence with correlation window ``R``."""
    N = len(sigma)
    total = 0
    for i in range(1, N - R + 2):
        for d in range(1, R):
            s = sum(sigma[j - 1] * sigma[j + d - 1] for j in range(i, i + R - d))
            total += s * s
    return total


def gen_labs(params: LabsParams) -> Polynomial:
    """Expand the LABS energy in 0/1 variables (``sigma_j = 2 x_j - 1``).

    The inner correlation sum of window ``i`` runs over ``j = i .. i+R-1-d``.
    Variable ``x_j`` (1-based) gets id ``j - 1``.
    """
    N, R = params.N, params.R

    def spin(j):  # 2 x_j - 1
        return {frozenset([j - 1]): 2, frozenset(): -1}

    total: dict[frozenset, int] = {}
    for i in range(1, N - R + 2):
        for d in range(1, R):
            corr: dict[frozenset, int] = {}
            for j in range(i, i + R - d):
                for k, c in multiply(spin(j), spin(j + d)).items():
                    corr[k] = corr.get(k, 0) + c
            corr = {k: c for k, c in corr.items() if c}
            for k, c in multiply(corr, corr).items():
                total[k] = total.get(k, 0) + c
    constant = total.pop(frozenset(), 0)
    return Polynomial(total, constant, "min", tuple(f"x{j}" for j in range(1, N + 1)))


# --- image restoration ----------------------------------------------------------

BASES = ("top-left-rectangle", "centre-rectangle", "cross")
PERTURBATIONS = {"none": 0.0, "low": 0.05, "high": 0.20}


def checkerboard_window_costs(weight: int = 2) -> dict[tuple[int, int, int, int], int]:
    """Pattern costs for a 2x2 window ``(top-left, top-right, bottom-left, bottom-right)``.

    Only the two checkerboards are penalized; constant and smooth windows cost 0.
    """
    costs = {p: 0 for p in itertools.product((0, 1), repeat=4)}
    costs[(1, 0, 0, 1)] = weight
    costs[(0, 1, 1, 0)] = weight
    return costs


def window_polynomial(costs: dict[tuple[int, int, int, int], int]) -> dict[frozenset, int]:
    """Multilinear interpolation of a 16-entry pattern cost table (Moebius transform).

    Keys of the result are subsets of the window positions ``{0, 1, 2, 3}``.
    """
    coeffs = {}
    for size in range(5):
        for subset in itertools.combinations(range(4), size):
            c = 0
            for r in range(len(subset) + 1):
                for sub in itertools.combinations(subset, r):
                    pattern = tuple(1 if i in sub else 0 for i in range(4))
                    c += (-1) ** (len(subset) - r) * costs[pattern]
            if c:
                coeffs[frozenset(subset)] = c
    return coeffs


@dataclass(frozen=True)
class ImageParams:
    width: int
    height: int
    base: str = "top-left-rectangle"
    perturbation: str = "none"
    seed: int = 0
    window_costs: dict | None = field(default=None, compare=False, hash=False)

    def __post_init__(self):
        if self.width < 2 or self.height < 2:
            raise InfeasibleParams("image needs at least 2x2 pixels")
        if self.base not in BASES:
            raise InfeasibleParams(f"unknown base {self.base!r}; choose from {BASES}")
        if self.perturbation not in PERTURBATIONS:
            raise InfeasibleParams(f"unknown perturbation {self.perturbation!r}")

    @property
    def name(self) -> str:
        return f"image-{self.width}x{self.height}-{self.base}-{self.perturbation}-{self.seed}"


def base_image(width: int, height: int, base: str) -> np.ndarray:
    """0/1 array of shape ``(height, width)``."""
    img = np.zeros((height, width), dtype=np.int64)
    if base == "top-left-rectangle":
        img[: max(1, height // 2), : max(1, width // 2)] = 1
    elif base == "centre-rectangle":
        img[height // 4: height - height // 4, width // 4: width - width // 4] = 1
    elif base == "cross":
        img[height // 3: height - height // 3, :] = 1
        img[:, width // 3: width - width // 3] = 1
    else:
        raise InfeasibleParams(f"unknown base {base!r}")
    return img


def blurred_image(params: ImageParams) -> np.ndarray:
    img = base_image(params.width, params.height, params.base)
    p = PERTURBATIONS[params.perturbation]
    if p > 0:
        rng = np.random.default_rng(params.seed)
        flips = rng.random(img.shape) < p
        img = np.where(flips, 1 - img, img)
    return img


def gen_image(params: ImageParams) -> Polynomial:
    """Image restoration objective ``L(x) + P(x)`` (minimize).

    ``L`` is the Hamming distance to the blurred image; ``P`` sums the window
    polynomial over every 2x2 window. Pixel ``(r, c)`` has id ``r * width + c``.
    """
    w, h = params.width, params.height
    blurred = blurred_image(params)
    costs = params.window_costs or checkerboard_window_costs()
    win = window_polynomial(costs)
    terms: dict[frozenset, int] = {}
    constant = 0
    for r in range(h):
        for c in range(w):
            v = r * w + c
            if blurred[r, c]:
                constant += 1
                terms[frozenset([v])] = terms.get(frozenset([v]), 0) - 1
            else:
                terms[frozenset([v])] = terms.get(frozenset([v]), 0) + 1
    for r in range(h - 1):
        for c in range(w - 1):
            pix = (r * w + c, r * w + c + 1, (r + 1) * w + c, (r + 1) * w + c + 1)
            for sub, coef in win.items():
                if not sub:
                    constant += coef
                    continue
                key = frozenset(pix[i] for i in sub)
                terms[key] = terms.get(key, 0) + coef
    names = tuple(f"x{r}_{c}" for r in range(h) for c in range(w))
    return Polynomial(terms, constant, "min", names)


# --- cycle hypergraphs ------------------------------------------------------------

def gen_cycle_hypergraph(m: int, edge_size_range=(2, 4), overlap_size_range=(1, 2), seed=0) -> Hypergraph:
    """Random cycle hypergraph with ``m`` edges.

    Consecutive edges share a block of ``overlap_size_range`` fresh nodes;
    each edge is topped up with private nodes up to a size drawn from
    ``edge_size_range`` (never below the size of its two overlaps).
    """
    if m < 3:
        raise InfeasibleParams("a cycle hypergraph needs m >= 3 edges")
    omin, omax = overlap_size_range
    smin, smax = edge_size_range
    if omin < 1 or omax < omin or smax < smin:
        raise InfeasibleParams("bad size ranges")
    if 2 * omin > smax:
        raise InfeasibleParams("edges too small to hold two overlaps")
    rng = np.random.default_rng(seed)
    overlaps = []
    for _ in range(m):
        overlaps.append(int(rng.integers(omin, omax + 1)))
    # shrink overlaps that cannot fit into an edge of size <= smax
    for i in range(m):
        while overlaps[i - 1] + overlaps[i] > smax:
            j = i if overlaps[i] >= overlaps[i - 1] else i - 1
            overlaps[j] -= 1
            if overlaps[j] < omin:
                raise InfeasibleParams("overlap range incompatible with edge size range")
    nxt = 0
    blocks = []
    for size in overlaps:
        blocks.append(list(range(nxt, nxt + size)))
        nxt += size
    edges = []
    for i in range(m):
        nodes = blocks[i - 1] + blocks[i]
        lo = max(smin, len(nodes))
        size = int(rng.integers(lo, smax + 1))
        extra = list(range(nxt, nxt + size - len(nodes)))
        nxt += len(extra)
        edges.append(nodes + extra)
    return Hypergraph(nxt, edges)
