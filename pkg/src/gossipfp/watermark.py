"""Blind image watermarking of a codeword in the HL/LH bands of a Haar transform.

Embedding scales each detail coefficient by ``1 + alpha * wm_i`` in sign-aware
form (``V + alpha * |V| * wm``).  Detection never sees the original image, so
it correlates the sign-weighted watermark with coefficient energies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, ParseError
from .tracing import ERASURE

DEFAULT_ALPHA = 0.1
DEFAULT_THRESHOLD = 0.3
DEFAULT_BLOCKS = 128


@dataclass(frozen=True)
class Bands:
    LL: np.ndarray
    HL: np.ndarray
    LH: np.ndarray
    HH: np.ndarray


@dataclass(frozen=True)
class Detection:
    correlation: float
    detected: bool


def _even(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 2:
        raise ParameterError("image must be two-dimensional")
    h, w = x.shape
    if h == 0 or w == 0 or h % 2 or w % 2:
        raise ParameterError(f"image dimensions must be even and positive, got {h}x{w}")
    return x


def haar_dwt2(image) -> Bands:
    x = _even(image)
    a, b = x[0::2, 0::2], x[0::2, 1::2]
    c, d = x[1::2, 0::2], x[1::2, 1::2]
    return Bands(LL=(a + b + c + d) / 2, HL=(a - b + c - d) / 2,
                 LH=(a + b - c - d) / 2, HH=(a - b - c + d) / 2)


def inverse_haar_dwt2(bands: Bands) -> np.ndarray:
    LL, HL, LH, HH = bands.LL, bands.HL, bands.LH, bands.HH
    if not LL.shape == HL.shape == LH.shape == HH.shape:
        raise ParameterError("bands must share one shape")
    h, w = LL.shape
    x = np.empty((2 * h, 2 * w))
    x[0::2, 0::2] = (LL + HL + LH + HH) / 2
    x[0::2, 1::2] = (LL - HL + LH - HH) / 2
    x[1::2, 0::2] = (LL + HL - LH - HH) / 2
    x[1::2, 1::2] = (LL - HL - LH + HH) / 2
    return x


def _bits(codeword) -> list[int]:
    symbols = [int(s) for s in codeword]
    if not symbols:
        raise ParameterError("codeword is empty")
    if any(s == ERASURE for s in symbols):
        raise ParameterError("codeword contains an erasure")
    if min(symbols) < 0:
        raise ParameterError("codeword symbols must be non-negative")
    width = max(1, max(symbols).bit_length())
    return [(s >> i) & 1 for s in symbols for i in range(width - 1, -1, -1)]


def codeword_to_wm(codeword, length: int, seed: int = 0) -> np.ndarray:
    """Deterministic +-1 sequence: codeword bits, tiled, times a keyed mask.

    The mask is seeded by the seed and the codeword itself, so codewords that
    differ anywhere give unrelated sequences.
    """
    if length < 1:
        raise ParameterError(f"length must be positive, got {length}")
    bits = np.array(_bits(codeword), dtype=np.int64)
    base = np.resize(2 * bits - 1, length)
    rng = np.random.default_rng(np.random.SeedSequence([int(seed), *(int(s) for s in codeword)]))
    mask = rng.choice(np.array([-1, 1]), size=length)
    return (base * mask).astype(np.int64)


def _details(bands: Bands) -> np.ndarray:
    return np.concatenate([bands.HL.ravel(), bands.LH.ravel()])


def embed_bands(bands: Bands, codeword, alpha: float = DEFAULT_ALPHA, seed: int = 0) -> Bands:
    if alpha < 0:
        raise ParameterError(f"alpha must be non-negative, got {alpha}")
    V = _details(bands)
    wm = codeword_to_wm(codeword, V.size, seed)
    V2 = V + alpha * np.abs(V) * wm
    n = bands.HL.size
    return Bands(LL=bands.LL, HL=V2[:n].reshape(bands.HL.shape),
                 LH=V2[n:].reshape(bands.LH.shape), HH=bands.HH)


def embed(image, codeword, alpha: float = DEFAULT_ALPHA, seed: int = 0) -> np.ndarray:
    """Watermarked 8-bit image (rounded half-to-even, clamped to 0..255)."""
    bands = embed_bands(haar_dwt2(image), codeword, alpha, seed)
    return np.clip(np.round(inverse_haar_dwt2(bands)), 0, 255).astype(np.uint8)


def correlation(image, codeword, seed: int = 0, blocks: int = DEFAULT_BLOCKS) -> float:
    V = _details(haar_dwt2(image))
    g = np.sign(V) * codeword_to_wm(codeword, V.size, seed)
    m = V * V  # energy: the likelihood-ratio statistic for a multiplicative mark
    sd = m.std()
    if sd == 0:
        return 0.0
    z = (m - m.mean()) / sd
    parts = np.array_split(g * z, min(blocks, V.size))
    e = np.array([p.mean() for p in parts])
    energy = float(np.sum(e * e))
    if energy == 0:
        return 0.0
    # sum(e) / sqrt(G * sum(e^2)) lies in [-1, 1] by Cauchy-Schwarz
    return float(np.sum(e) / math.sqrt(len(e) * energy))


def detect(image, codeword, seed: int = 0, threshold: float = DEFAULT_THRESHOLD,
           blocks: int = DEFAULT_BLOCKS, shape: tuple[int, int] | None = None) -> Detection:
    img = np.asarray(image)
    if shape is not None and img.shape != tuple(shape):
        raise ParameterError(f"image is {img.shape}, expected {tuple(shape)}")
    r = correlation(img, codeword, seed, blocks)
    return Detection(r, r > threshold)


def add_noise(image, sigma: float, seed: int = 0) -> np.ndarray:
    rng = np.random.default_rng(seed)
    noisy = np.asarray(image, dtype=np.float64) + rng.normal(0.0, sigma, np.shape(image))
    return np.clip(np.round(noisy), 0, 255).astype(np.uint8)


def noise_image(height: int = 64, width: int = 64, seed: int = 0) -> np.ndarray:
    return np.random.default_rng(seed).integers(0, 256, size=(height, width), dtype=np.uint8)


# --- PGM -----------------------------------------------------------------------

def _tokens(data: bytes):
    """Header tokens of a PGM file and the offset just past the last one."""
    toks, i = [], 0
    while len(toks) < 4:
        while i < len(data) and data[i:i + 1].isspace():
            i += 1
        if data[i:i + 1] == b"#":
            while i < len(data) and data[i:i + 1] not in (b"\n", b"\r"):
                i += 1
            continue
        j = i
        while j < len(data) and not data[j:j + 1].isspace() and data[j:j + 1] != b"#":
            j += 1
        if j == i:
            raise ParseError("truncated PGM header")
        toks.append(data[i:j].decode("ascii", "replace"))
        i = j
    return toks, i


def read_pgm(data: bytes) -> np.ndarray:
    toks, end = _tokens(data)
    magic, *dims = toks
    if magic not in ("P2", "P5"):
        raise ParseError(f"unsupported magic {magic!r}, expected P2 or P5")
    try:
        w, h, maxval = (int(t) for t in dims)
    except ValueError:
        raise ParseError("PGM width, height and maxval must be integers") from None
    if maxval != 255:
        raise ParseError(f"maxval must be 255, got {maxval}")
    if magic == "P5":
        raw = data[end + 1:end + 1 + w * h]
        if len(raw) != w * h:
            raise ParseError(f"expected {w * h} pixel bytes, found {len(raw)}")
        return np.frombuffer(raw, dtype=np.uint8).reshape(h, w).copy()
    vals = data[end:].split()
    if len(vals) != w * h:
        raise ParseError(f"expected {w * h} pixel values, found {len(vals)}")
    px = np.array([int(v) for v in vals], dtype=np.int64)
    if px.min() < 0 or px.max() > 255:
        raise ParseError("pixel value outside 0..255")
    return px.astype(np.uint8).reshape(h, w)


def write_pgm(image, binary: bool = True) -> bytes:
    img = np.asarray(image)
    if img.ndim != 2 or img.min() < 0 or img.max() > 255:
        raise ParameterError("PGM images are 2-D with values in 0..255")
    img = img.astype(np.uint8)
    h, w = img.shape
    if binary:
        return f"P5\n{w} {h}\n255\n".encode() + img.tobytes()
    rows = "\n".join(" ".join(str(int(v)) for v in r) for r in img)
    return f"P2\n{w} {h}\n255\n{rows}\n".encode()
