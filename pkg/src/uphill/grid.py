"""Uniform grid, interaction kernel and quadrature-based convolution.

The domain is the symmetric interval [-1/epsilon, 1/epsilon] sampled
uniformly.  The kernel is a C^2, compactly supported probability density
on [-1, 1]; mass that leaks past a domain edge is collected into per-node
boundary masses and re-attached to fixed reservoir magnetizations, so the
discrete kernel is a partition of unity at every node.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, GridMismatchError, KernelResolutionError

KERNEL_NAME = "poly3"

_ANTISYM_TOL = 1e-12


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid over [-1/epsilon, 1/epsilon] with node spacing dx."""

    epsilon: float
    dx: float
    n_points: int

    @property
    def half_length(self) -> float:
        return 1.0 / self.epsilon

    @property
    def center(self) -> int:
        return self.n_points // 2

    def nodes(self) -> np.ndarray:
        i = np.arange(self.n_points)
        return -self.half_length + i * self.dx

    def index_of(self, x: float) -> int:
        """Nearest-node index of a coordinate."""
        return int(round((x + self.half_length) / self.dx))

    def weights(self) -> np.ndarray:
        """Composite trapezoidal quadrature weights on the grid."""
        w = np.full(self.n_points, self.dx)
        w[0] = w[-1] = self.dx / 2.0
        return w


def build_grid(epsilon: float, dx: float) -> GridSpec:
    """Build the uniform grid; dx must divide 1/epsilon exactly."""
    if not 0.0 < epsilon <= 1.0:
        raise ConfigurationError(f"epsilon must lie in (0, 1], got {epsilon}")
    if not 0.0 < dx <= 1.0:
        raise ConfigurationError(f"dx must lie in (0, 1], got {dx}")
    half = 1.0 / epsilon
    ratio = half / dx
    if abs(ratio - round(ratio)) > 1e-12 * max(ratio, 1.0):
        raise ConfigurationError(
            f"dx={dx} does not divide the half-length 1/epsilon={half} exactly"
        )
    n_points = 2 * int(round(ratio)) + 1
    return GridSpec(epsilon=epsilon, dx=dx, n_points=n_points)


@dataclass
class Profile:
    """Grid function (magnetization, auxiliary field or current)."""

    grid: GridSpec
    values: np.ndarray
    symmetry: str = "none"  # "antisymmetric" or "none"

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (self.grid.n_points,):
            raise GridMismatchError(
                f"profile has {self.values.shape[0]} values, grid has "
                f"{self.grid.n_points} nodes"
            )
        if self.symmetry == "antisymmetric":
            err = np.max(np.abs(self.values + self.values[::-1]))
            if err > _ANTISYM_TOL or abs(self.values[self.grid.center]) > _ANTISYM_TOL:
                raise ConfigurationError(
                    f"profile tagged antisymmetric violates the tag by {err:.3e}"
                )

    @property
    def is_antisymmetric(self) -> bool:
        return self.symmetry == "antisymmetric"

    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.values)))

    def at(self, x: float) -> float:
        return float(self.values[self.grid.index_of(x)])


def antisymmetrize(values: np.ndarray) -> np.ndarray:
    """Project onto the antisymmetric subspace, pinning the center to 0."""
    out = 0.5 * (values - values[::-1])
    out[len(out) // 2] = 0.0
    return out


def kernel_shape(r: np.ndarray) -> np.ndarray:
    """Unnormalized kernel profile (1-r^2)^3 on [-1, 1], zero outside."""
    r = np.asarray(r, dtype=float)
    inside = np.abs(r) < 1.0
    out = np.zeros_like(r)
    out[inside] = (1.0 - r[inside] ** 2) ** 3
    return out


@dataclass(frozen=True)
class KernelTable:
    """Sampled kernel plus per-node left/right boundary masses.

    samples are normalized so their trapezoidal quadrature over [-1, 1]
    is exactly 1; b_left/b_right are the complements of the in-domain
    quadrature mass, so every row is an exact partition of unity.
    """

    grid: GridSpec
    samples: np.ndarray  # values at offsets k*dx, k = -k_max..k_max
    b_left: np.ndarray
    b_right: np.ndarray
    name: str = KERNEL_NAME
    _base_matrix: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def k_max(self) -> int:
        return (len(self.samples) - 1) // 2

    def at_offset(self, r: float) -> float:
        """Kernel value at a real offset (nearest sampled node)."""
        k = int(round(r / self.grid.dx))
        if abs(k) > self.k_max:
            return 0.0
        return float(self.samples[self.k_max + k])

    def dense_matrix(self) -> np.ndarray:
        """Dense row-stochastic action matrix: interior trapezoid weights
        plus boundary masses routed to the edge columns.

        Cached; callers must not mutate the returned array.
        """
        if "K" not in self._base_matrix:
            n = self.grid.n_points
            k_max = self.k_max
            d = np.abs(np.arange(n)[:, None] - np.arange(n)[None, :])
            ext = np.concatenate([self.samples[k_max:], [0.0]])
            K = ext[np.minimum(d, k_max + 1)] * self.grid.weights()[None, :]
            K[:, 0] += self.b_left
            K[:, -1] += self.b_right
            self._base_matrix["K"] = K
        return self._base_matrix["K"]


def build_kernel(grid: GridSpec) -> KernelTable:
    """Sample the default kernel (35/32)(1-r^2)^3 on the grid.

    The samples are rescaled so the grid trapezoid of the kernel is
    exactly 1 (the raw trapezoid misses by O(dx^4)); boundary masses are
    the discrete complements of the in-domain mass, split by side.
    """
    if grid.dx > 1.0:
        raise KernelResolutionError(
            f"dx={grid.dx} exceeds the kernel range 1; kernel under-resolved"
        )
    k_max = int(round(1.0 / grid.dx))
    offsets = np.arange(-k_max, k_max + 1) * grid.dx
    samples = (35.0 / 32.0) * kernel_shape(offsets)
    # endpoints vanish, so the plain sum is the trapezoid over [-1, 1]
    samples /= grid.dx * samples.sum()

    # mass beyond the right edge as seen from a node `d` steps inside:
    #   full-line trapezoid assigns dx to every node; the in-domain rule
    #   halves the edge node, so half an edge-cell belongs outside.
    n = grid.n_points
    dist_right = (n - 1) - np.arange(n)  # nodes between x and the right edge
    b_right = np.zeros(n)
    tail = grid.dx * np.concatenate([np.cumsum(samples[::-1])[::-1], [0.0]])
    near = dist_right <= k_max
    d = dist_right[near]
    b_right[near] = tail[k_max + d + 1] + 0.5 * grid.dx * samples[k_max + d]
    b_left = b_right[::-1].copy()
    return KernelTable(grid=grid, samples=samples, b_left=b_left, b_right=b_right)


def convolve(
    kernel: KernelTable,
    m: Profile,
    reservoir_left: float,
    reservoir_right: float,
) -> Profile:
    """Kernel smoothing of a profile with reservoir values past the edges."""
    if m.grid != kernel.grid:
        raise GridMismatchError("profile and kernel live on different grids")
    w = kernel.grid.weights()
    interior = np.convolve(m.values * w, kernel.samples, mode="same")
    out = interior + kernel.b_left * reservoir_left + kernel.b_right * reservoir_right
    symmetry = "none"
    if m.is_antisymmetric and reservoir_left == -reservoir_right:
        out = antisymmetrize(out)
        symmetry = "antisymmetric"
    return Profile(grid=m.grid, values=out, symmetry=symmetry)
