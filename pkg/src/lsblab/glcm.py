"""Gray-level co-occurrence statistics and near-diagonal band energies.

A co-occurrence matrix for a displacement (dx, dy) counts, over all pixel
positions where both ends fall inside the image, how often gray level i
sits at (x, y) while gray level j sits at (x+dx, y+dy). Natural images
concentrate these counts on and near the main diagonal; the band-energy
features below measure that concentration.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .image import GrayImage

Offset = tuple[int, int]

# all eight one-pixel displacements
NEIGHBOR_OFFSETS: tuple[Offset, ...] = (
    (1, 0), (-1, 1), (0, 1), (1, 1), (-1, -1), (0, -1), (1, -1), (-1, 0),
)

# default feature set: horizontal, vertical and both diagonals
DEFAULT_OFFSETS: tuple[Offset, ...] = ((1, 0), (0, 1), (1, 1), (-1, 1))

N_BANDS = 5  # |i - j| = 0 .. 4


@dataclass
class CooccurrenceMatrix:
    """Pair counts for one displacement; counts is a (256, 256) int64 array."""

    offset: Offset
    counts: np.ndarray

    @property
    def total(self) -> int:
        return int(self.counts.sum())


def _validate_offset(offset: Offset) -> None:
    dx, dy = offset
    if dx == 0 and dy == 0:
        raise ValueError("offset (0, 0) pairs every pixel with itself")


def cooccurrence(image: GrayImage, offset: Offset) -> CooccurrenceMatrix:
    """Count gray-level pairs at the given displacement.

    Only positions where both pixels are in bounds contribute; there is no
    wraparound or padding at the borders.
    """
    _validate_offset(offset)
    dx, dy = offset
    h, w = image.pixels.shape
    a = image.pixels[max(0, -dy) : h - max(0, dy), max(0, -dx) : w - max(0, dx)]
    b = image.pixels[max(0, dy) : h - max(0, -dy), max(0, dx) : w - max(0, -dx)]
    if a.size == 0:
        counts = np.zeros((256, 256), dtype=np.int64)
    else:
        codes = a.astype(np.int32).ravel() * 256 + b.astype(np.int32).ravel()
        counts = np.bincount(codes, minlength=256 * 256).astype(np.int64).reshape(256, 256)
    return CooccurrenceMatrix(offset=(dx, dy), counts=counts)


def diagonal_energies(matrix: CooccurrenceMatrix) -> np.ndarray:
    """Fraction of pair counts on each band |i - j| = k, for k = 0..4.

    Both the +k and -k diagonals count toward band k; values are
    normalized by the total so curves are comparable across image sizes.
    """
    total = matrix.total
    if total == 0:
        raise ValueError("empty co-occurrence matrix: no in-bounds pixel pairs")
    e = np.empty(N_BANDS, dtype=np.float64)
    e[0] = np.trace(matrix.counts) / total
    for k in range(1, N_BANDS):
        e[k] = (np.trace(matrix.counts, offset=k) + np.trace(matrix.counts, offset=-k)) / total
    return e


def band_features(image: GrayImage, offsets: Sequence[Offset] = DEFAULT_OFFSETS) -> np.ndarray:
    """Concatenated band energies over an offset set: 5 * len(offsets) features."""
    if len(offsets) == 0:
        raise ValueError("offset set must be non-empty")
    if len(set(offsets)) != len(offsets):
        raise ValueError(f"offset set contains duplicates: {offsets}")
    parts = [diagonal_energies(cooccurrence(image, off)) for off in offsets]
    return np.concatenate(parts)


def matrix_to_csv(matrix: CooccurrenceMatrix) -> str:
    """256 lines of 256 comma-separated counts."""
    return "\n".join(",".join(str(int(v)) for v in row) for row in matrix.counts) + "\n"


ENERGY_CSV_HEADER = "offset,e0,e1,e2,e3,e4"


def energies_to_csv(rows: Sequence[tuple[Offset, np.ndarray]]) -> str:
    """Energy table, one row per offset. Offsets are written as dx:dy."""
    lines = [ENERGY_CSV_HEADER]
    for (dx, dy), e in rows:
        lines.append(f"{dx}:{dy}," + ",".join(f"{v:.6f}" for v in e))
    return "\n".join(lines) + "\n"
