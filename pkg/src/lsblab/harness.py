"""Corpus-scale evaluation: band-energy shifts and a linear detection test.

The detector is a two-class Fisher linear discriminant over the band-energy
features, trained on a seeded train/test split of cover/stego pairs. A
detection rate of 50% on held-out data means the features carry no usable
signal. Passing method=None runs the cover-vs-cover null experiment
(identical images labeled both classes).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.ndimage import gaussian_filter

from .bits import CapacityError, FRAME_BITS
from .embed import EmbedConfig, embed, rate_capacity
from .glcm import DEFAULT_OFFSETS, N_BANDS, Offset, band_features
from .image import GrayImage
from .rng import Rng, derive_seed

# stream tags for per-image child seeds, so message bits, embedding coins
# and the train/test shuffle never share a generator
_TAG_MESSAGE = 0
_TAG_EMBED = 1
_TAG_SPLIT = 2


@dataclass
class FeatureVector:
    """Band-energy features of one image with its class label (0 cover, 1 stego)."""

    values: np.ndarray
    label: int


@dataclass
class FisherDiscriminant:
    """Linear detector: score = w . x, stego when the score exceeds the bias."""

    weights: np.ndarray
    bias: float

    def score(self, values: np.ndarray) -> float:
        return float(np.dot(self.weights, values))

    def predict(self, values: np.ndarray) -> int:
        return int(self.score(values) > self.bias)


def train_fld(features: Sequence[FeatureVector]) -> FisherDiscriminant:
    """Fit a Fisher linear discriminant to labeled feature vectors.

    weights solve S_w w = (mean_stego - mean_cover) with S_w the pooled
    within-class scatter; the bias is the projected midpoint of the class
    means. A singular scatter is regularized by eps * I with
    eps = 1e-6 * trace / dim.
    """
    labels = np.array([f.label for f in features])
    if not (np.any(labels == 0) and np.any(labels == 1)):
        raise ValueError("training requires examples of both classes (cover and stego)")
    x = np.stack([np.asarray(f.values, dtype=np.float64) for f in features])
    mu0 = x[labels == 0].mean(axis=0)
    mu1 = x[labels == 1].mean(axis=0)
    c0 = x[labels == 0] - mu0
    c1 = x[labels == 1] - mu1
    scatter = c0.T @ c0 + c1.T @ c1
    diff = mu1 - mu0
    try:
        weights = np.linalg.solve(scatter, diff)
    except np.linalg.LinAlgError:
        dim = scatter.shape[0]
        eps = 1e-6 * np.trace(scatter) / dim
        if eps <= 0.0:
            eps = 1e-12
        weights = np.linalg.solve(scatter + eps * np.eye(dim), diff)
    bias = float(weights @ (mu0 + mu1) / 2.0)
    return FisherDiscriminant(weights=weights, bias=bias)


def accuracy(model: FisherDiscriminant, features: Sequence[FeatureVector]) -> float:
    """Percent of feature vectors the model labels correctly."""
    correct = sum(model.predict(f.values) == f.label for f in features)
    return 100.0 * correct / len(features)


# ---------------------------------------------------------------------------
# experiments


def _message_bits(rate: float, n_pixels: int, seed: int) -> list[int]:
    budget = rate_capacity(rate, n_pixels)
    if budget <= FRAME_BITS:
        raise CapacityError(
            f"rate {rate:g} on {n_pixels} pixels leaves no room for the 32-bit frame"
        )
    return Rng(seed).bits(budget - FRAME_BITS)


def _embed_for_experiment(image: GrayImage, method: str | None, rate: float,
                          threshold: int, image_index: int, seed: int,
                          traversal: str) -> GrayImage:
    if method is None:  # null experiment: the "stego" image is the cover itself
        return image
    bits = _message_bits(rate, image.n_pixels, derive_seed(seed, image_index, _TAG_MESSAGE))
    config = EmbedConfig(method=method, rate=rate, threshold=threshold,
                         seed=derive_seed(seed, image_index, _TAG_EMBED),
                         traversal=traversal)
    return embed(image, bits, config)


def _cell_features(corpus: Sequence[GrayImage], method: str | None, rate: float,
                   threshold: int, seed: int, offsets: Sequence[Offset],
                   traversal: str = "permuted") -> tuple[list[np.ndarray], list[np.ndarray]]:
    if len(corpus) == 0:
        raise ValueError("corpus must be non-empty")
    cover_feats = []
    stego_feats = []
    for i, image in enumerate(corpus):
        stego = _embed_for_experiment(image, method, rate, threshold, i, seed, traversal)
        cover_feats.append(band_features(image, offsets))
        stego_feats.append(band_features(stego, offsets))
    return cover_feats, stego_feats


def _mean_energies(feats: np.ndarray) -> np.ndarray:
    # a feature vector is len(offsets) blocks of 5 band energies
    return feats.reshape(-1, N_BANDS).mean(axis=0)


def energy_experiment(corpus: Sequence[GrayImage], method: str | None, rate: float,
                      threshold: int = 4, seed: int = 0,
                      offsets: Sequence[Offset] = DEFAULT_OFFSETS,
                      traversal: str = "permuted") -> list[tuple[np.ndarray, np.ndarray]]:
    """Per-image (cover, stego) band energies averaged over the offset set.

    Message bits are drawn per image from seeds derived off `seed`, so a
    rerun with the same corpus and arguments reproduces exactly, and all
    methods at one rate see the same messages. Payloads are scattered with
    a per-image keyed permutation, the usual operating posture.
    """
    cover_feats, stego_feats = _cell_features(corpus, method, rate, threshold, seed,
                                              offsets, traversal)
    return [(_mean_energies(c), _mean_energies(s)) for c, s in zip(cover_feats, stego_feats)]


def _split_accuracy(cover_feats: list[np.ndarray], stego_feats: list[np.ndarray],
                    seed: int, split: float) -> float:
    n = len(cover_feats)
    indices = list(range(n))
    Rng(derive_seed(seed, _TAG_SPLIT)).shuffle(indices)
    n_train = min(max(int(round(split * n)), 1), n - 1)
    train_idx, test_idx = indices[:n_train], indices[n_train:]

    def as_features(idx: list[int]) -> list[FeatureVector]:
        out = []
        for i in idx:
            out.append(FeatureVector(cover_feats[i], 0))
            out.append(FeatureVector(stego_feats[i], 1))
        return out

    model = train_fld(as_features(train_idx))
    return accuracy(model, as_features(test_idx))


def detection_experiment(corpus: Sequence[GrayImage], method: str | None, rate: float,
                         threshold: int = 4, seed: int = 0, split: float = 0.5,
                         offsets: Sequence[Offset] = DEFAULT_OFFSETS,
                         traversal: str = "permuted") -> float:
    """Held-out detection accuracy (percent) of an FLD on band energies.

    Both feature vectors of an image land on the same side of the split, so
    train and test stay balanced 50/50 between classes.
    """
    if len(corpus) < 20:
        raise ValueError(f"corpus of {len(corpus)} images is too small; need at least 20")
    if not 0.0 < split < 1.0:
        raise ValueError(f"split must be in (0, 1), got {split}")
    cover_feats, stego_feats = _cell_features(corpus, method, rate, threshold, seed,
                                              offsets, traversal)
    return _split_accuracy(cover_feats, stego_feats, seed, split)


# ---------------------------------------------------------------------------
# benchmark report

REPORT_HEADER = (
    "method,rate,T,seed,n,"
    "e0_cover,e1_cover,e2_cover,e3_cover,e4_cover,"
    "e0_stego,e1_stego,e2_stego,e3_stego,e4_stego,detect_pct"
)


@dataclass
class ReportRow:
    method: str
    rate: float
    threshold: int
    seed: int
    n_images: int
    cover_energies: np.ndarray  # (5,) means over the corpus
    stego_energies: np.ndarray
    detect_pct: float


@dataclass
class ExperimentReport:
    rows: list[ReportRow] = field(default_factory=list)


def benchmark(corpus: Sequence[GrayImage], methods: Sequence[str], rates: Sequence[float],
              threshold: int = 4, seed: int = 0, split: float = 0.5,
              offsets: Sequence[Offset] = DEFAULT_OFFSETS,
              traversal: str = "permuted") -> ExperimentReport:
    """One report row per method x rate: mean energies plus detection rate."""
    if len(corpus) < 20:
        raise ValueError(f"corpus of {len(corpus)} images is too small; need at least 20")
    report = ExperimentReport()
    for method in methods:
        for rate in rates:
            cover_feats, stego_feats = _cell_features(corpus, method, rate, threshold, seed,
                                                      offsets, traversal)
            cover_e = np.stack([_mean_energies(f) for f in cover_feats]).mean(axis=0)
            stego_e = np.stack([_mean_energies(f) for f in stego_feats]).mean(axis=0)
            detect = _split_accuracy(cover_feats, stego_feats, seed, split)
            report.rows.append(ReportRow(method, rate, threshold, seed, len(corpus),
                                         cover_e, stego_e, detect))
    return report


def report_csv(report: ExperimentReport) -> str:
    """Deterministic CSV with the fixed header; same report, same bytes."""
    lines = [REPORT_HEADER]
    for r in report.rows:
        cells = [r.method, f"{r.rate:g}", str(r.threshold), str(r.seed), str(r.n_images)]
        cells.extend(f"{v:.6f}" for v in r.cover_energies)
        cells.extend(f"{v:.6f}" for v in r.stego_energies)
        cells.append(f"{r.detect_pct:.2f}")
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


_SVG_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2")


def report_svg(report: ExperimentReport) -> str:
    """Static line plot of main-diagonal energy vs rate, one line per method.

    The cover mean is drawn as a dashed reference. Pure geometry, no
    interactivity; output bytes depend only on the report.
    """
    width, height = 640, 420
    left, right, top, bottom = 60, 20, 20, 40
    methods = []
    for r in report.rows:
        if r.method not in methods:
            methods.append(r.method)
    rates = sorted({r.rate for r in report.rows})
    ys = [float(r.stego_energies[0]) for r in report.rows]
    ys += [float(r.cover_energies[0]) for r in report.rows]
    if not ys:
        ys = [0.0, 1.0]
    lo, hi = min(ys), max(ys)
    pad = (hi - lo) * 0.1 or 0.05
    lo, hi = lo - pad, hi + pad
    x_lo, x_hi = (min(rates), max(rates)) if rates else (0.0, 1.0)
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 0.1, x_hi + 0.1

    def sx(rate: float) -> float:
        return left + (rate - x_lo) / (x_hi - x_lo) * (width - left - right)

    def sy(e: float) -> float:
        return top + (hi - e) / (hi - lo) * (height - top - bottom)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{left}" y1="{height - bottom}" x2="{width - right}" y2="{height - bottom}" stroke="black"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{height - bottom}" stroke="black"/>',
        f'<text x="{(left + width - right) / 2:.1f}" y="{height - 10}" text-anchor="middle" '
        f'font-size="12">payload rate (bpp)</text>',
        f'<text x="15" y="{(top + height - bottom) / 2:.1f}" font-size="12" '
        f'transform="rotate(-90 15 {(top + height - bottom) / 2:.1f})" text-anchor="middle">'
        f'main-diagonal energy</text>',
    ]
    for rate in rates:
        parts.append(f'<text x="{sx(rate):.1f}" y="{height - bottom + 15}" '
                     f'text-anchor="middle" font-size="10">{rate:g}</text>')
    for frac in (0.0, 0.5, 1.0):
        e = lo + frac * (hi - lo)
        parts.append(f'<text x="{left - 5}" y="{sy(e):.1f}" text-anchor="end" '
                     f'font-size="10">{e:.3f}</text>')
    for mi, method in enumerate(methods):
        rows = [r for r in report.rows if r.method == method]
        rows.sort(key=lambda r: r.rate)
        color = _SVG_COLORS[mi % len(_SVG_COLORS)]
        points = " ".join(f"{sx(r.rate):.1f},{sy(float(r.stego_energies[0])):.1f}" for r in rows)
        parts.append(f'<polyline points="{points}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        for r in rows:
            parts.append(f'<circle cx="{sx(r.rate):.1f}" cy="{sy(float(r.stego_energies[0])):.1f}" '
                         f'r="2.5" fill="{color}"/>')
        parts.append(f'<text x="{width - right - 5}" y="{top + 14 * (mi + 1)}" text-anchor="end" '
                     f'font-size="11" fill="{color}">{method}</text>')
    if report.rows:
        cover_mean = float(np.mean([r.cover_energies[0] for r in report.rows]))
        parts.append(f'<line x1="{left}" y1="{sy(cover_mean):.1f}" x2="{width - right}" '
                     f'y2="{sy(cover_mean):.1f}" stroke="gray" stroke-dasharray="4 3"/>')
        parts.append(f'<text x="{left + 5}" y="{sy(cover_mean) - 4:.1f}" font-size="10" '
                     f'fill="gray">cover</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# ---------------------------------------------------------------------------
# bundled synthetic corpus

CORPUS_SIZE = 20
CORPUS_WIDTH = 128
CORPUS_HEIGHT = 128


def synthetic_image(width: int, height: int, seed: int, *,
                    texture: float = 0.6, noise: float = 0.1) -> GrayImage:
    """One smooth synthetic image: blurred Gaussian noise, mid-gray centered.

    Structure scale and contrast are drawn per image so a corpus has
    natural spread; `texture` and `noise` cap the per-image doses of fine
    texture and sensor-like noise. The defaults keep neighboring pixels
    within a few gray levels, the regime where near-diagonal energy is
    informative; heavier doses make covers harder to tell from stegos.
    """
    gen = np.random.default_rng(seed)
    sigma = gen.uniform(5.0, 12.0)
    contrast = gen.uniform(8.0, 26.0)
    levels = np.full((height, width), 128.0)
    smooth = gaussian_filter(gen.standard_normal((height, width)), sigma=sigma, mode="reflect")
    levels += contrast * (smooth - smooth.mean()) / (smooth.std() + 1e-12)
    if texture > 0.0:
        tex_sigma = gen.uniform(0.6, 2.0)
        tex = gaussian_filter(gen.standard_normal((height, width)), sigma=tex_sigma, mode="reflect")
        levels += gen.uniform(0.0, texture) * (tex - tex.mean()) / (tex.std() + 1e-12)
    if noise > 0.0:
        levels += gen.uniform(0.0, noise) * gen.standard_normal((height, width))
    return GrayImage(np.clip(np.rint(levels), 0, 255).astype(np.uint8))


def synthetic_corpus(n: int = CORPUS_SIZE, width: int = CORPUS_WIDTH,
                     height: int = CORPUS_HEIGHT, seed: int = 0, *,
                     texture: float = 0.6, noise: float = 0.1) -> list[GrayImage]:
    """Seeded corpus of n smooth synthetic images; no external data needed."""
    if n < 1:
        raise ValueError(f"corpus size must be positive, got {n}")
    return [synthetic_image(width, height, derive_seed(seed, i), texture=texture, noise=noise)
            for i in range(n)]
