"""Seeded point-cloud generators used by the benchmarks and tests."""

from __future__ import annotations

import numpy as np

SHAPES = ("cube", "sphere", "circle-of-circles")


def cube(n: int, seed=None, side: float = 10.0) -> np.ndarray:
    """``n`` points uniform in an axis-aligned cube of the given side."""
    return np.random.default_rng(seed).uniform(0.0, side, size=(n, 3))


def sphere(n: int, seed=None) -> np.ndarray:
    """``n`` points uniform on the unit 2-sphere."""
    g = np.random.default_rng(seed).normal(size=(n, 3))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def circle_of_circles(n_circles: int = 12, per_circle: int = 15, small_radius: float = 0.4,
                      big_radius: float = 4.5, seed=None) -> np.ndarray:
    """Evenly spaced points on small circles whose centres sit on a large circle.

    Each small circle gets a random phase so the sample is not perfectly
    symmetric.
    """
    rng = np.random.default_rng(seed)
    pts = []
    for k in range(n_circles):
        theta = 2 * np.pi * k / n_circles
        cx, cy = big_radius * np.cos(theta), big_radius * np.sin(theta)
        phase = rng.uniform(0, 2 * np.pi)
        t = phase + 2 * np.pi * np.arange(per_circle) / per_circle
        pts.append(np.column_stack([cx + small_radius * np.cos(t), cy + small_radius * np.sin(t)]))
    return np.vstack(pts)


def make_cloud(shape: str, n: int, seed=None) -> np.ndarray:
    if shape == "cube":
        return cube(n, seed)
    if shape == "sphere":
        return sphere(n, seed)
    if shape == "circle-of-circles":
        return circle_of_circles(per_circle=max(3, n // 12), seed=seed)
    raise ValueError(f"unknown shape {shape!r}; expected one of {SHAPES}")
