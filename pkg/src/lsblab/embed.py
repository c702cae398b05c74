"""±1 embedding schemes over grayscale covers, with matching extractors.

Four methods share one config and framing contract:

- "lsbm": per-pixel ±1 matching. A pixel is left alone when its LSB already
  equals the message bit, otherwise it is stepped up or down at random
  (saturated pixels step inward).
- "lsbmr": pixel pairs carry two bits with at most one ±1 change per pair;
  the first bit is the first pixel's LSB, the second is the pair function
  f_pair of both values.
- "lsbm_improved" / "lsbmr_improved": identical codes on the wire, but every
  free up-or-down choice is resolved by choose_direction, which steps the
  pixel toward its 3x3 neighbors instead of flipping a coin. Neighbors are
  read from the live, partially embedded raster, so earlier-visited pixels
  vote with their post-change values.

Extraction never needs to know which ±1 rule was used: lsbm_extract and
lsbmr_extract decode all variants of their family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .bits import FRAME_BITS, CapacityError, FramingError, frame_bits, frame_length
from .image import GrayImage, traversal_order
from .rng import Rng

METHODS = ("lsbm", "lsbmr", "lsbm_improved", "lsbmr_improved")
TRAVERSALS = ("raster", "permuted")

DEFAULT_THRESHOLD = 4


@dataclass
class EmbedConfig:
    """Everything sender and receiver must share: method, seed, traversal.

    rate caps the framed message length at rate * pixel-count bits;
    threshold is the neighbor-difference bound used only by the improved
    methods.
    """

    method: str
    rate: float = 1.0
    threshold: int = DEFAULT_THRESHOLD
    seed: int = 0
    traversal: str = "raster"

    def __post_init__(self) -> None:
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}; expected one of {METHODS}")
        if not 0.0 < self.rate <= 1.0:
            raise ValueError(f"rate must be in (0, 1], got {self.rate}")
        if self.threshold < 0:
            raise ValueError(f"threshold must be non-negative, got {self.threshold}")
        if self.traversal not in TRAVERSALS:
            raise ValueError(f"traversal must be one of {TRAVERSALS}, got {self.traversal!r}")


@dataclass
class Neighborhood:
    """A pixel and its in-bounds 3x3 neighbors (center excluded)."""

    center: int
    neighbors: tuple[int, ...]


@dataclass
class MaskDecision:
    """Outcome of the neighborhood vote for one ±1 step."""

    mask: tuple[bool, ...]  # per neighbor: |center - neighbor| < threshold
    sad_minus: int  # sum of |.| differences to masked neighbors if stepping down
    sad_plus: int  # same if stepping up
    choice: str  # "minus" or "plus"
    forced: bool  # True when the center is saturated at 0 or 255


def f_pair(y1: int, y2: int) -> int:
    """Binary pair function: LSB(floor(y1 / 2) + y2)."""
    return ((y1 >> 1) + y2) & 1


def choose_direction(neighborhood: Neighborhood, threshold: int, rng: Rng) -> MaskDecision:
    """Pick the ±1 step that disturbs the local texture least.

    Neighbors strictly closer than `threshold` to the center vote; the step
    with the smaller sum of absolute differences to the voters wins.
    Saturated centers are forced outright; an empty vote or a tie falls
    back to a fair coin, so the rule degrades to the plain random step
    exactly where it has no information.
    """
    c = neighborhood.center
    nbs = neighborhood.neighbors
    mask = tuple(abs(c - v) < threshold for v in nbs)
    sad_minus = sum(abs(c - 1 - v) for v, m in zip(nbs, mask) if m)
    sad_plus = sum(abs(c + 1 - v) for v, m in zip(nbs, mask) if m)
    if c == 0:
        return MaskDecision(mask, sad_minus, sad_plus, "plus", True)
    if c == 255:
        return MaskDecision(mask, sad_minus, sad_plus, "minus", True)
    if sad_minus == sad_plus:  # covers the empty mask, where both sums are 0
        choice = "plus" if rng.sign() > 0 else "minus"
    else:
        choice = "plus" if sad_plus < sad_minus else "minus"
    return MaskDecision(mask, sad_minus, sad_plus, choice, False)


def neighborhood_at(image: GrayImage, x: int, y: int) -> Neighborhood:
    """The 3x3 neighborhood of (x, y), keeping only in-bounds neighbors."""
    flat = image.pixels.ravel().tolist()
    return Neighborhood(
        center=flat[y * image.width + x],
        neighbors=tuple(_neighbor_values(flat, image.width, image.height, x, y)),
    )


def _neighbor_values(flat: list, width: int, height: int, x: int, y: int) -> list[int]:
    vals = []
    for ny in (y - 1, y, y + 1):
        if 0 <= ny < height:
            row = ny * width
            for nx in (x - 1, x, x + 1):
                if (nx != x or ny != y) and 0 <= nx < width:
                    vals.append(flat[row + nx])
    return vals


def _guided_sign(flat: list, width: int, height: int, idx: int, threshold: int, rng: Rng) -> int:
    """choose_direction on the live raster, reduced to a ±1 step (hot path)."""
    c = flat[idx]
    if c == 0:
        return 1
    if c == 255:
        return -1
    x = idx % width
    y = idx // width
    sad_minus = 0
    sad_plus = 0
    for ny in (y - 1, y, y + 1):
        if 0 <= ny < height:
            row = ny * width
            for nx in (x - 1, x, x + 1):
                if (nx != x or ny != y) and 0 <= nx < width:
                    d = c - flat[row + nx]
                    if -threshold < d < threshold:
                        sad_minus += abs(d - 1)
                        sad_plus += abs(d + 1)
    if sad_minus == sad_plus:
        return rng.sign()
    return 1 if sad_plus < sad_minus else -1


def rate_capacity(rate: float, n_pixels: int) -> int:
    """Bit budget at a payload rate; floor(rate * n) with float-noise guard."""
    return math.floor(rate * n_pixels + 1e-9)


def _prepare(cover: GrayImage, message: Sequence[int], config: EmbedConfig, pairwise: bool):
    framed = frame_bits(message)
    n = cover.n_pixels
    structural = 2 * (n // 2) if pairwise else n
    capacity = min(structural, rate_capacity(config.rate, n))
    if len(framed) > capacity:
        raise CapacityError(
            f"framed message of {len(framed)} bits exceeds capacity {capacity} "
            f"({cover.width}x{cover.height} cover at rate {config.rate:g})"
        )
    order = traversal_order(cover, config.traversal, Rng(config.seed))
    return framed, order


def _finish(flat: list, cover: GrayImage) -> GrayImage:
    return GrayImage(np.asarray(flat, dtype=np.uint8).reshape(cover.height, cover.width))


def _expect(config: EmbedConfig, method: str) -> None:
    if config.method != method:
        raise ValueError(f"config.method is {config.method!r}, expected {method!r}")


# ---------------------------------------------------------------------------
# per-pixel ±1 matching


def _lsbm_embed(cover: GrayImage, message: Sequence[int], config: EmbedConfig,
                rng: Rng | None, guided: bool) -> GrayImage:
    rng = rng if rng is not None else Rng(config.seed)
    framed, order = _prepare(cover, message, config, pairwise=False)
    w, h = cover.width, cover.height
    threshold = config.threshold
    flat = cover.pixels.ravel().tolist()
    for k, bit in enumerate(framed):
        idx = order[k]
        v = flat[idx]
        if bit == (v & 1):
            continue
        if v == 0:
            flat[idx] = 1
        elif v == 255:
            flat[idx] = 254
        elif guided:
            flat[idx] = v + _guided_sign(flat, w, h, idx, threshold, rng)
        else:
            flat[idx] = v + rng.sign()
    return _finish(flat, cover)


def lsbm_embed(cover: GrayImage, message: Sequence[int], config: EmbedConfig,
               rng: Rng | None = None) -> GrayImage:
    """Embed message bits into pixel LSBs by random ±1 matching."""
    _expect(config, "lsbm")
    return _lsbm_embed(cover, message, config, rng, guided=False)


def lsbm_improved_embed(cover: GrayImage, message: Sequence[int], config: EmbedConfig,
                        rng: Rng | None = None) -> GrayImage:
    """±1 matching with every free step direction chosen by choose_direction."""
    _expect(config, "lsbm_improved")
    return _lsbm_embed(cover, message, config, rng, guided=True)


def lsbm_extract(stego: GrayImage, config: EmbedConfig) -> list[int]:
    """Read back the payload from pixel LSBs under the shared seed/traversal."""
    order = traversal_order(stego, config.traversal, Rng(config.seed))
    flat = stego.pixels.ravel()
    n = stego.n_pixels
    if n < FRAME_BITS:
        raise FramingError(f"carrier of {n} pixels cannot hold the 32-bit prefix")
    head = [int(flat[order[k]]) & 1 for k in range(FRAME_BITS)]
    declared = frame_length(head)
    if FRAME_BITS + declared > n:
        raise FramingError(f"declared payload of {declared} bits exceeds the {n - FRAME_BITS} available")
    return [int(flat[order[k]]) & 1 for k in range(FRAME_BITS, FRAME_BITS + declared)]


# ---------------------------------------------------------------------------
# pixel-pair coding


def _y2_step(flat: list, w: int, h: int, idx: int, y2: int, threshold: int,
             rng: Rng, guided: bool) -> int:
    if y2 == 0:
        return 1
    if y2 == 255:
        return -1
    if guided:
        return _guided_sign(flat, w, h, idx, threshold, rng)
    return rng.sign()


def _lsbmr_embed(cover: GrayImage, message: Sequence[int], config: EmbedConfig,
                 rng: Rng | None, guided: bool) -> GrayImage:
    rng = rng if rng is not None else Rng(config.seed)
    framed, order = _prepare(cover, message, config, pairwise=True)
    if len(framed) & 1:
        framed.append(0)  # pad to a whole pair; the frame length ignores it
    w, h = cover.width, cover.height
    threshold = config.threshold
    flat = cover.pixels.ravel().tolist()
    for k in range(0, len(framed), 2):
        s1, s2 = framed[k], framed[k + 1]
        i1, i2 = order[k], order[k + 1]
        y1, y2 = flat[i1], flat[i2]
        if s1 == (y1 & 1):
            if s2 != f_pair(y1, y2):
                # free branch: either y2 step re-encodes s2
                flat[i2] = y2 + _y2_step(flat, w, h, i2, y2, threshold, rng, guided)
        else:
            # step y1 toward whichever candidate makes the pair function match
            if y1 > 0 and f_pair(y1 - 1, y2) == s2:
                flat[i1] = y1 - 1
            elif y1 < 255 and f_pair(y1 + 1, y2) == s2:
                flat[i1] = y1 + 1
            else:
                # saturated y1 whose required candidate is out of range: step
                # inward (flipping the pair function) and step y2 to flip it back
                flat[i1] = 1 if y1 == 0 else 254
                flat[i2] = y2 + _y2_step(flat, w, h, i2, y2, threshold, rng, guided)
    return _finish(flat, cover)


def lsbmr_embed(cover: GrayImage, message: Sequence[int], config: EmbedConfig,
                rng: Rng | None = None) -> GrayImage:
    """Embed two bits per pixel pair with at most one ±1 change per pair."""
    _expect(config, "lsbmr")
    return _lsbmr_embed(cover, message, config, rng, guided=False)


def lsbmr_improved_embed(cover: GrayImage, message: Sequence[int], config: EmbedConfig,
                         rng: Rng | None = None) -> GrayImage:
    """Pair coding with the free-branch y2 direction from choose_direction."""
    _expect(config, "lsbmr_improved")
    return _lsbmr_embed(cover, message, config, rng, guided=True)


def lsbmr_extract(stego: GrayImage, config: EmbedConfig) -> list[int]:
    """Per pair, emit LSB(y1) and f_pair(y1, y2); then strip the frame."""
    order = traversal_order(stego, config.traversal, Rng(config.seed))
    flat = stego.pixels.ravel()
    n_pairs = stego.n_pixels // 2
    if 2 * n_pairs < FRAME_BITS:
        raise FramingError(f"carrier of {stego.n_pixels} pixels cannot hold the 32-bit prefix")

    def pair_bits(k: int) -> tuple[int, int]:
        y1 = int(flat[order[2 * k]])
        y2 = int(flat[order[2 * k + 1]])
        return y1 & 1, f_pair(y1, y2)

    head: list[int] = []
    for k in range(FRAME_BITS // 2):
        head.extend(pair_bits(k))
    declared = frame_length(head)
    if FRAME_BITS + declared > 2 * n_pairs:
        raise FramingError(
            f"declared payload of {declared} bits exceeds the {2 * n_pairs - FRAME_BITS} available"
        )
    total = FRAME_BITS + declared
    for k in range(FRAME_BITS // 2, (total + 1) // 2):
        head.extend(pair_bits(k))
    return head[FRAME_BITS:total]


# ---------------------------------------------------------------------------
# method dispatch

_EMBEDDERS = {
    "lsbm": lsbm_embed,
    "lsbmr": lsbmr_embed,
    "lsbm_improved": lsbm_improved_embed,
    "lsbmr_improved": lsbmr_improved_embed,
}


def embed(cover: GrayImage, message: Sequence[int], config: EmbedConfig,
          rng: Rng | None = None) -> GrayImage:
    """Embed with the method named in the config."""
    return _EMBEDDERS[config.method](cover, message, config, rng)


def extract(stego: GrayImage, config: EmbedConfig) -> list[int]:
    """Extract with the family matching the config's method."""
    if config.method in ("lsbm", "lsbm_improved"):
        return lsbm_extract(stego, config)
    return lsbmr_extract(stego, config)
