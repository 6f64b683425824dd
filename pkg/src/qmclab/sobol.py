"""Sobol' low-discrepancy sequences.

Direction-number tables in the standard "d s a m_1 ... m_s" text format are
expanded to 32-bit direction integers; points are generated in Gray-code
order (consecutive points differ by a single XOR), so point 0 is the origin.
A bundled table covering dimensions up to 1111 ships with the package.

Also provides the segment-stratification verifiers: one point per half-axis
cell (2^n consecutive points) and one per quarter-axis cell (4^n points).
"""
from __future__ import annotations

import importlib.resources
from dataclasses import dataclass

import numpy as np

from ._backend import sobol_fill

__all__ = [
    "BIT_RESOLUTION",
    "DirectionTable",
    "SobolEngine",
    "parse_direction_table",
    "load_direction_table",
    "sobol_point",
    "sobol_point_set",
    "verify_property_a",
    "verify_property_aprime",
]

BIT_RESOLUTION = 32
_SCALE = 2.0 ** -BIT_RESOLUTION
MAX_INDEX = 2 ** BIT_RESOLUTION - 1

BUNDLED_TABLE = "joe-kuo-6.1111.txt"


class DirectionTableError(ValueError):
    """Malformed direction-number file."""


@dataclass(frozen=True)
class _Polynomial:
    degree: int      # s
    coeff_mask: int  # a: bits of the middle polynomial coefficients
    m: tuple[int, ...]


class DirectionTable:
    """Primitive-polynomial data and initial direction integers per dimension.

    Dimension 1 is the built-in base-2 van der Corput sequence (all m_i = 1);
    dimensions >= 2 come from the parsed table.
    """

    def __init__(self, polynomials: dict[int, _Polynomial]):
        self._poly = polynomials
        self.max_dimension = max(polynomials) if polynomials else 1
        self._directions_cache: np.ndarray | None = None

    def __len__(self) -> int:
        return self.max_dimension

    def directions(self, n: int) -> np.ndarray:
        """Expanded direction integers, shape (n, 32) uint32."""
        if n < 1:
            raise ValueError("dimension must be >= 1")
        if n > self.max_dimension:
            raise ValueError(
                f"table supports {self.max_dimension} dimensions, {n} requested")
        cached = self._directions_cache
        if cached is None or cached.shape[0] < n:
            self._directions_cache = self._expand(n)
        return self._directions_cache[:n]

    def _expand(self, n: int) -> np.ndarray:
        v = np.zeros((n, BIT_RESOLUTION), dtype=np.uint32)
        v[0] = [1 << (BIT_RESOLUTION - k) for k in range(1, BIT_RESOLUTION + 1)]
        for dim in range(2, n + 1):
            poly = self._poly[dim]
            s, a = poly.degree, poly.coeff_mask
            row = [0] * (BIT_RESOLUTION + 1)
            for k in range(1, s + 1):
                row[k] = poly.m[k - 1] << (BIT_RESOLUTION - k)
            for k in range(s + 1, BIT_RESOLUTION + 1):
                acc = row[k - s] ^ (row[k - s] >> s)
                for t in range(1, s):
                    if (a >> (s - 1 - t)) & 1:
                        acc ^= row[k - t]
                row[k] = acc
            v[dim - 1] = row[1:]
        return v


def parse_direction_table(text: str) -> DirectionTable:
    """Parse a direction-number file ("d s a m_1 ... m_s" after a header).

    Raises DirectionTableError naming the offending line on a malformed
    entry, an even or out-of-range m value, or a duplicate/non-contiguous
    dimension index.
    """
    polys: dict[int, _Polynomial] = {}
    lines = text.splitlines()
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split()
        try:
            numbers = [int(p) for p in parts]
        except ValueError:
            raise DirectionTableError(f"line {lineno}: non-integer token") from None
        if len(numbers) < 4:
            raise DirectionTableError(f"line {lineno}: expected 'd s a m_1 ... m_s'")
        d, s, a = numbers[0], numbers[1], numbers[2]
        m = numbers[3:]
        if d < 2:
            raise DirectionTableError(f"line {lineno}: dimension index must be >= 2")
        if d in polys:
            raise DirectionTableError(f"line {lineno}: duplicate dimension {d}")
        if s < 1 or len(m) != s:
            raise DirectionTableError(
                f"line {lineno}: degree {s} does not match {len(m)} m-values")
        if a < 0 or a >= 1 << (s - 1):
            raise DirectionTableError(f"line {lineno}: coefficient mask out of range")
        for i, mi in enumerate(m, start=1):
            if mi % 2 == 0:
                raise DirectionTableError(f"line {lineno}: m_{i} = {mi} is even")
            if mi >= 1 << i:
                raise DirectionTableError(f"line {lineno}: m_{i} = {mi} >= 2^{i}")
        polys[d] = _Polynomial(s, a, tuple(m))
    if not polys:
        raise DirectionTableError("no dimension lines found")
    expected = set(range(2, max(polys) + 1))
    missing = expected - set(polys)
    if missing:
        raise DirectionTableError(f"missing dimension index {min(missing)}")
    return DirectionTable(polys)


def load_direction_table(path: str | None = None) -> DirectionTable:
    """Load a direction table from `path`, or the bundled table if None."""
    if path is None:
        ref = importlib.resources.files("qmclab").joinpath("data", BUNDLED_TABLE)
        text = ref.read_text(encoding="utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return parse_direction_table(text)


def _gray(i: int) -> int:
    return i ^ (i >> 1)


def sobol_point(table: DirectionTable, n: int, index: int) -> np.ndarray:
    """Point at `index` of the n-dimensional sequence (Gray-code order).

    Coordinate k is the XOR of the direction integers selected by the set
    bits of gray(index), scaled by 2^-32. Index 0 is the origin.
    """
    if index < 0 or index > MAX_INDEX:
        raise ValueError(f"index must be in [0, 2^{BIT_RESOLUTION})")
    v = table.directions(n)
    y = np.zeros(n, dtype=np.uint32)
    g = _gray(index)
    b = 0
    while g:
        if g & 1:
            y ^= v[:, b]
        g >>= 1
        b += 1
    return y * _SCALE


def sobol_point_set(table: DirectionTable, n: int, count: int,
                    start: int = 0) -> np.ndarray:
    """(count, n) block of consecutive points beginning at index `start`."""
    if count < 1:
        raise ValueError("point count must be >= 1")
    engine = SobolEngine(table, n)
    if start > 0:
        engine.seek(start - 1)
        return engine.take(count)
    out = np.empty((count, n))
    out[0] = 0.0
    if count > 1:
        out[1:] = engine.take(count - 1)
    return out


class SobolEngine:
    """Incremental generator over one n-dimensional Sobol' sequence.

    Single-owner stream state: current index and the XOR state of the point
    at that index. The point reached by repeated `next_point` is identical
    to the one reached by `seek`.
    """

    def __init__(self, table: DirectionTable, n: int):
        self._v = np.ascontiguousarray(table.directions(n))
        self.n = n
        self.index = 0
        self._state = np.zeros(n, dtype=np.uint32)

    def seek(self, index: int) -> None:
        """Position the stream at `index` (its point becomes the current one)."""
        if index < 0 or index > MAX_INDEX:
            raise ValueError(f"index must be in [0, 2^{BIT_RESOLUTION})")
        y = np.zeros(self.n, dtype=np.uint32)
        g = _gray(index)
        b = 0
        while g:
            if g & 1:
                y ^= self._v[:, b]
            g >>= 1
            b += 1
        self._state = y
        self.index = index

    def next_point(self) -> np.ndarray:
        """Advance one index and return the new point."""
        return self.take(1)[0]

    def take(self, count: int) -> np.ndarray:
        """Advance `count` indices, returning the visited points as (count, n)."""
        if count < 1:
            raise ValueError("point count must be >= 1")
        if self.index + count > MAX_INDEX:
            raise ValueError("Sobol' index overflow: sequence exhausted at 2^32 - 1")
        out = np.empty((count, self.n))
        sobol_fill(self._v, self._state, self.index, out)
        self.index += count
        return out


def _occupancy_unique(cells: np.ndarray, total: int) -> bool:
    # one point per cell <=> all flat cell ids distinct (counts match by pre)
    return np.unique(cells).size == total


def verify_property_a(points: np.ndarray) -> bool:
    """One point in each of the 2^n half-axis cells.

    `points` must hold exactly 2^n points; the unit cube is split at 1/2
    along every axis (half-open cells, so a coordinate of 0.5 lands in the
    upper half).
    """
    points = np.asarray(points)
    n = points.shape[1]
    if points.shape[0] != 2 ** n:
        raise ValueError(f"property check needs a segment of exactly 2^{n} points")
    bits = (points >= 0.5).astype(np.uint64)
    ids = bits @ (np.uint64(1) << np.arange(n, dtype=np.uint64))
    return _occupancy_unique(ids, 2 ** n)


def verify_property_aprime(points: np.ndarray) -> bool:
    """One point in each of the 4^n quarter-axis cells (segment of 4^n points)."""
    points = np.asarray(points)
    n = points.shape[1]
    if points.shape[0] != 4 ** n:
        raise ValueError(f"property check needs a segment of exactly 4^{n} points")
    quarters = np.minimum((points * 4).astype(np.uint64), 3)
    ids = quarters @ (np.uint64(4) ** np.arange(n, dtype=np.uint64))
    return _occupancy_unique(ids, 4 ** n)
