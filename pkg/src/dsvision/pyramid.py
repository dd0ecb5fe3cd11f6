"""Level-structured pyramid pipeline for window candidate detection.

The base image lives at the bottom level (level 7 for a 128x128 image).
Micro-edges are extracted per base cell, aggregated into short edges one
level up and long edges two levels up, and pairs of opposite-polarity
horizontal long edges hypothesize window rectangles.  Candidates then run
through the staged belief chain: feature evidence, sibling alignment, and
non-window evidence from the building boundary.

All stages are pure functions of (image, config); per-cell and per-candidate
work may be spread over any number of workers without changing the output.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .assessment import BeliefTables, FeatureMeasurements, feature_supports
from .errors import BadDimensionsError, ParseError, RectOutOfBoundsError
from .knowledge import KnowledgeSource
from .stages import stage_a_belief, stage_b_belief, stage_c_belief

# direction convention: gradient angle quantized to multiples of 45 degrees;
# d and d+4 are the same orientation with opposite contrast polarity
HORIZONTAL_GRADIENT = (0, 4)   # vertical edge lines
VERTICAL_GRADIENT = (2, 6)     # horizontal edge lines
DIAGONAL = (1, 3, 5, 7)

NO_EDGE = -1

# cells of a 2x2 child block that are collinear along the edge orientation
_COLLINEAR_PAIRS = {
    0: (((0, 0), (1, 0)), ((0, 1), (1, 1))),  # vertical lines: same column
    2: (((0, 0), (0, 1)), ((1, 0), (1, 1))),  # horizontal lines: same row
    1: (((0, 0), (1, 1)),),
    3: (((0, 1), (1, 0)),),
}
for _d in (4, 5, 6, 7):
    _COLLINEAR_PAIRS[_d] = _COLLINEAR_PAIRS[_d - 4]


@dataclass(frozen=True)
class PipelineConfig:
    edge_threshold: float = 32.0
    short_support: int = 2
    long_support: int = 2
    pair_min_sep: int = 4
    pair_max_sep: int = 48
    survivor_threshold: float = 0.3
    sibling_tolerance: int = 2       # level-5 cells
    sibling_support: float = 0.6
    non_window_support: float = 0.5
    cluster_distance: int = 2        # level-5 cells
    quality_weight: float = 1.0
    workers: int = 1
    tables: BeliefTables = field(default_factory=BeliefTables)


def parse_config(text: str) -> PipelineConfig:
    """Parse the ``key = value`` pipeline config format (# comments).

    Belief-table bands are comma-separated ``threshold:value`` pairs, e.g.
    ``boundary_bands = 0.75:0.6,0.4:0.3,0.15:0.1``.
    """
    ints = {"short_support", "long_support", "pair_min_sep", "pair_max_sep",
            "sibling_tolerance", "cluster_distance", "workers"}
    floats = {"edge_threshold", "survivor_threshold", "sibling_support",
              "non_window_support", "quality_weight"}
    bands = {"elongation_bands", "hv_d_bands", "boundary_bands"}
    table_floats = {"low_edgedness", "low_edgedness_belief"}
    cfg_kwargs: dict = {}
    table_kwargs: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"line {lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        try:
            if key in ints:
                cfg_kwargs[key] = int(value)
            elif key in floats:
                cfg_kwargs[key] = float(value)
            elif key in table_floats:
                table_kwargs[key] = float(value)
            elif key in bands:
                pairs = []
                for item in value.split(","):
                    bound, bel = item.split(":")
                    pairs.append((float(bound), float(bel)))
                table_kwargs[key] = tuple(pairs)
            else:
                raise ParseError(f"line {lineno}: unknown key {key!r}")
        except (ValueError, ParseError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"line {lineno}: bad value {value!r} for {key}") from None
    tables = BeliefTables(**table_kwargs) if table_kwargs else BeliefTables()
    return PipelineConfig(tables=tables, **cfg_kwargs)


def _parallel_map(fn, items, workers: int):
    """Order-preserving map over a worker pool; workers <= 1 runs inline."""
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


@dataclass(frozen=True)
class Pyramid:
    """Square grids halving in side per level; the image sits at the base."""

    levels: tuple[np.ndarray, ...]  # levels[L] has side 2^L

    @property
    def base_level(self) -> int:
        return len(self.levels) - 1

    @property
    def base(self) -> np.ndarray:
        return self.levels[-1]


def build_pyramid(image: np.ndarray) -> Pyramid:
    """Stack an image into a pyramid by 2x2 block averaging.

    A 512x512 input is first reduced to 128x128 (4x4 block average) to
    match the base-level-7 configuration.
    """
    image = np.asarray(image, dtype=np.float64)
    if image.ndim != 2 or image.shape[0] != image.shape[1]:
        raise BadDimensionsError(f"image must be square 2D, got {image.shape}")
    side = image.shape[0]
    if side < 8 or side & (side - 1):
        raise BadDimensionsError(f"side {side} must be a power of two >= 8")
    if side == 512:
        image = image.reshape(128, 4, 128, 4).mean(axis=(1, 3))
        side = 128
    levels = [image]
    while side > 1:
        side //= 2
        levels.append(levels[-1].reshape(side, 2, side, 2).mean(axis=(1, 3)))
    levels.reverse()
    return Pyramid(tuple(levels))


@dataclass(frozen=True)
class MicroEdge:
    row: int
    col: int
    direction: int
    magnitude: float


@dataclass(frozen=True)
class EdgeSegment:
    level: int
    row: int
    col: int
    direction: int
    support_count: int


@dataclass(frozen=True)
class EdgeField:
    """Per-cell micro-edge grids: direction (NO_EDGE where none) and
    gradient magnitude."""

    directions: np.ndarray
    magnitudes: np.ndarray

    def micro_edge(self, row: int, col: int) -> MicroEdge | None:
        d = int(self.directions[row, col])
        if d == NO_EDGE:
            return None
        return MicroEdge(row, col, d, float(self.magnitudes[row, col]))

    def count(self) -> int:
        return int(np.count_nonzero(self.directions != NO_EDGE))


def _sobel_band(image: np.ndarray, r0: int, r1: int) -> tuple[np.ndarray, np.ndarray]:
    """3x3 weighted central differences for rows [r0, r1) of the interior."""
    band = image[r0 - 1:r1 + 1, :]
    # gx: right column sum minus left column sum, rows weighted 1,2,1
    col_weighted = (band[:-2, :] + 2.0 * band[1:-1, :] + band[2:, :])
    gx = col_weighted[:, 2:] - col_weighted[:, :-2]
    # gy: bottom row sum minus top row sum, columns weighted 1,2,1
    row_weighted = band[:, :-2] + 2.0 * band[:, 1:-1] + band[:, 2:]
    gy = row_weighted[2:, :] - row_weighted[:-2, :]
    return gx, gy


def extract_micro_edges(p: Pyramid, config: PipelineConfig = PipelineConfig()) -> EdgeField:
    """Per-cell gradient edges at the base level.

    Emits an edge where |gx| + |gy| reaches the threshold; the direction is
    the gradient angle quantized to the nearest multiple of 45 degrees.
    Border cells emit nothing.
    """
    image = p.base
    n = image.shape[0]
    directions = np.full((n, n), NO_EDGE, dtype=np.int8)
    magnitudes = np.zeros((n, n), dtype=np.float64)
    bands = _row_bands(1, n - 1, config.workers)

    def work(band):
        r0, r1 = band
        return _sobel_band(image, r0, r1)

    for (r0, r1), (gx, gy) in zip(bands, _parallel_map(work, bands, config.workers)):
        mag = np.abs(gx) + np.abs(gy)
        hit = mag >= config.edge_threshold
        quantized = np.round(np.degrees(np.arctan2(gy, gx)) / 45.0).astype(np.int64) % 8
        sub_dir = np.where(hit, quantized, NO_EDGE).astype(np.int8)
        directions[r0:r1, 1:n - 1] = sub_dir
        magnitudes[r0:r1, 1:n - 1] = np.where(hit, mag, 0.0)
    return EdgeField(directions, magnitudes)


def _row_bands(r0: int, r1: int, workers: int) -> list[tuple[int, int]]:
    workers = max(1, workers)
    size = max(1, math.ceil((r1 - r0) / workers))
    return [(s, min(s + size, r1)) for s in range(r0, r1, size)]


def short_edge_at(micro: EdgeField, row6: int, col6: int, direction: int,
                  support: int = 2) -> EdgeSegment | None:
    """Recompute one level-6 cell from its 2x2 child block."""
    block = micro.directions[2 * row6:2 * row6 + 2, 2 * col6:2 * col6 + 2]
    count = int(np.count_nonzero(block == direction))
    if count >= support:
        return EdgeSegment(6, row6, col6, direction, count)
    return None


def aggregate_short_edges(p: Pyramid, micro: EdgeField,
                          config: PipelineConfig = PipelineConfig()) -> list[EdgeSegment]:
    """Short edges one level above the base: a cell holds a direction when
    enough of its four children agree on it."""
    n6 = p.base.shape[0] // 2
    level = p.base_level - 1

    def work(row6):
        out = []
        for col6 in range(n6):
            block = micro.directions[2 * row6:2 * row6 + 2, 2 * col6:2 * col6 + 2]
            for d in range(8):
                count = int(np.count_nonzero(block == d))
                if count >= config.short_support:
                    out.append(EdgeSegment(level, row6, col6, d, count))
        return out

    segments = []
    for chunk in _parallel_map(work, range(n6), config.workers):
        segments.extend(chunk)
    return segments


def long_edge_at(short_set: set[tuple[int, int, int]], row5: int, col5: int,
                 direction: int, support: int = 2) -> EdgeSegment | None:
    """Recompute one level-5 cell from its 2x2 child block of short edges.

    Children must be collinear along the edge orientation; a count
    threshold alone is not enough.
    """
    present = [
        (dr, dc)
        for dr in (0, 1) for dc in (0, 1)
        if (2 * row5 + dr, 2 * col5 + dc, direction) in short_set
    ]
    if len(present) < support:
        return None
    cells = set(present)
    for pair in _COLLINEAR_PAIRS[direction]:
        if cells.issuperset(pair):
            return EdgeSegment(5, row5, col5, direction, len(present))
    return None


def aggregate_long_edges(p: Pyramid, short: list[EdgeSegment],
                         config: PipelineConfig = PipelineConfig()) -> list[EdgeSegment]:
    n5 = p.base.shape[0] // 4
    level = p.base_level - 2
    short_set = {(s.row, s.col, s.direction) for s in short}

    def work(row5):
        out = []
        for col5 in range(n5):
            for d in range(8):
                seg = long_edge_at(short_set, row5, col5, d, config.long_support)
                if seg is not None:
                    out.append(EdgeSegment(level, seg.row, seg.col, d, seg.support_count))
        return out

    segments = []
    for chunk in _parallel_map(work, range(n5), config.workers):
        segments.extend(chunk)
    return segments


@dataclass(frozen=True)
class Rect:
    """A candidate rectangle in base-level pixels."""

    top: int
    left: int
    height: int
    width: int

    @property
    def bottom(self) -> int:
        return self.top + self.height

    @property
    def right(self) -> int:
        return self.left + self.width

    @property
    def center(self) -> tuple[float, float]:
        return (self.top + self.height / 2.0, self.left + self.width / 2.0)

    def contains(self, other: "Rect") -> bool:
        return (self.top <= other.top and self.left <= other.left
                and self.bottom >= other.bottom and self.right >= other.right)


@dataclass
class CandidateArea:
    id: int
    rect: Rect
    measurements: FeatureMeasurements | None = None
    supports: tuple[float, float, float, float] | None = None
    bel_a: float = 0.0
    bel_b: float = 0.0
    bel_c: float = 0.0
    v_sibl: float = 0.0
    h_sibl: float = 0.0
    non_window: float = 0.0


@dataclass(frozen=True)
class EdgeLine:
    """A maximal horizontal edge line, merged from long-edge segments.

    A physical border registers at one or two adjacent level-5 rows; the
    pixel row places it at sub-cell resolution (on the cell boundary when
    two rows responded, at the cell center when one did).
    """

    direction: int
    row_min: int
    row_max: int
    col_start: int
    col_end: int

    @property
    def pixel_row(self) -> int:
        return 2 * (self.row_min + self.row_max + 1)


def _edge_runs(long_edges: list[EdgeSegment], directions) -> list[tuple[int, int, int, int]]:
    """Merge same-row, same-direction long edges into maximal horizontal
    runs; returns (direction, row, col_start, col_end) in level-5 cells."""
    by_row: dict[tuple[int, int], list[int]] = {}
    for seg in long_edges:
        if seg.direction in directions:
            by_row.setdefault((seg.direction, seg.row), []).append(seg.col)
    runs = []
    for (d, row), cols in sorted(by_row.items()):
        cols = sorted(set(cols))
        start = prev = cols[0]
        for c in cols[1:]:
            if c == prev + 1:
                prev = c
            else:
                runs.append((d, row, start, prev))
                start = prev = c
        runs.append((d, row, start, prev))
    return runs


def _edge_lines(long_edges: list[EdgeSegment], directions) -> list[EdgeLine]:
    """Fuse runs on adjacent rows that overlap in columns into edge lines."""
    runs = _edge_runs(long_edges, directions)
    parent = list(range(len(runs)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, (d1, row1, s1, e1) in enumerate(runs):
        for j in range(i + 1, len(runs)):
            d2, row2, s2, e2 = runs[j]
            if d2 == d1 and abs(row2 - row1) == 1 and s1 <= e2 and s2 <= e1:
                parent[find(i)] = find(j)
    groups: dict[int, list[tuple[int, int, int, int]]] = {}
    for i, run in enumerate(runs):
        groups.setdefault(find(i), []).append(run)
    lines = []
    for members in groups.values():
        d = members[0][0]
        rows = [row for _, row, _, _ in members]
        lines.append(EdgeLine(
            d, min(rows), max(rows),
            min(s for _, _, s, _ in members),
            max(e for _, _, _, e in members)))
    return sorted(lines, key=lambda ln: (ln.row_min, ln.col_start, ln.direction))


def find_window_candidates(long_edges: list[EdgeSegment],
                           config: PipelineConfig = PipelineConfig()) -> list[CandidateArea]:
    """Rectangles spanned by opposite-polarity horizontal long-edge pairs.

    Pairs must overlap horizontally by at least one level-5 cell and be
    vertically separated within the configured range.  Nested rectangles
    are deduplicated in favor of the tightest pair; ids follow raster order
    of the top edge.
    """
    lines = _edge_lines(long_edges, VERTICAL_GRADIENT)
    rects = []
    for i, a in enumerate(lines):
        for b in lines[i + 1:]:
            if b.direction != (a.direction + 4) % 8:
                continue
            sep = abs(b.pixel_row - a.pixel_row)
            if not config.pair_min_sep <= sep <= config.pair_max_sep:
                continue
            lo, hi = max(a.col_start, b.col_start), min(a.col_end, b.col_end)
            if lo > hi:
                continue
            top = min(a.pixel_row, b.pixel_row)
            rects.append(Rect(top, lo * 4, sep, (hi - lo + 1) * 4))
    rects = sorted(set(rects), key=lambda r: (r.top, r.left, r.height, r.width))
    kept = [
        r for r in rects
        if not any(o != r and r.contains(o) for o in rects)
    ]
    return [CandidateArea(i + 1, r) for i, r in enumerate(kept)]


def measure_features(p: Pyramid, c: CandidateArea, micro: EdgeField) -> FeatureMeasurements:
    """Shape, texture and boundary measurements over the candidate rect."""
    n = p.base.shape[0]
    r = c.rect
    if r.top < 0 or r.left < 0 or r.bottom > n or r.right > n:
        raise RectOutOfBoundsError(f"rect {r} outside {n}x{n} base")
    interior = micro.directions[r.top:r.bottom, r.left:r.right]
    edge_count = int(np.count_nonzero(interior != NO_EDGE))
    hv = int(np.count_nonzero(np.isin(interior, HORIZONTAL_GRADIENT + VERTICAL_GRADIENT)))
    diag = int(np.count_nonzero(np.isin(interior, DIAGONAL)))
    hv_d = math.inf if diag == 0 else hv / diag
    return FeatureMeasurements(
        elongation=max(r.height, r.width) / min(r.height, r.width),
        edgedness=edge_count / (r.height * r.width),
        hv_d=hv_d,
        left_boundary=_side_coverage(micro, r, r.left),
        right_boundary=_side_coverage(micro, r, r.right - 1),
    )


def _side_coverage(micro: EdgeField, r: Rect, col: int) -> float:
    """Fraction of the rect's side rows holding a vertical micro-edge
    within one pixel of the side column."""
    n = micro.directions.shape[0]
    lo, hi = max(0, col - 1), min(n, col + 2)
    band = micro.directions[r.top:r.bottom, lo:hi]
    vertical = np.isin(band, HORIZONTAL_GRADIENT)
    covered = int(np.count_nonzero(vertical.any(axis=1)))
    return covered / r.height


def stage_a_beliefs(cands: list[CandidateArea], p: Pyramid, micro: EdgeField,
                    window_ks: KnowledgeSource,
                    config: PipelineConfig = PipelineConfig()) -> None:
    """Measure each candidate and verify the feature evidence."""

    def work(c: CandidateArea):
        m = measure_features(p, c, micro)
        supports = feature_supports(m, config.tables, config.quality_weight)
        return m, supports, stage_a_belief(*supports, window_ks=window_ks)

    for c, (m, supports, bel) in zip(cands, _parallel_map(work, cands, config.workers)):
        c.measurements = m
        c.supports = supports
        c.bel_a = bel


def sibling_search(cands: list[CandidateArea],
                   config: PipelineConfig = PipelineConfig()) -> None:
    """Lateral search among surviving candidates for aligned neighbors.

    A horizontal sibling shares the row (vertical centers within the
    tolerance) without overlapping horizontally; vertical siblings swap the
    axes.
    """
    survivors = [c for c in cands if c.bel_a >= config.survivor_threshold]
    tol = config.sibling_tolerance * 4  # level-5 cells in base pixels
    for c in survivors:
        cy, cx = c.rect.center
        h = v = 0.0
        for other in survivors:
            if other is c:
                continue
            oy, ox = other.rect.center
            h_overlap = c.rect.left < other.rect.right and other.rect.left < c.rect.right
            v_overlap = c.rect.top < other.rect.bottom and other.rect.top < c.rect.bottom
            if abs(oy - cy) <= tol and not h_overlap:
                h = config.sibling_support
            if abs(ox - cx) <= tol and not v_overlap:
                v = config.sibling_support
        c.h_sibl = h
        c.v_sibl = v


def building_boundary(long_edges: list[EdgeSegment], cands: list[CandidateArea],
                      config: PipelineConfig = PipelineConfig()) -> None:
    """Flag candidates outside the building region with non-window support.

    The building region is the bounding box of the densest connected
    cluster of long edges (edges within ``cluster_distance`` level-5 cells
    of each other).  With no long edges at all, every candidate stays 0.
    """
    for c in cands:
        c.non_window = 0.0
    if not long_edges or not cands:
        return
    cells = sorted({(seg.row, seg.col) for seg in long_edges})
    index = {cell: i for i, cell in enumerate(cells)}
    parent = list(range(len(cells)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    dist = config.cluster_distance
    for i, (r1, c1) in enumerate(cells):
        for j in range(i + 1, len(cells)):
            r2, c2 = cells[j]
            if r2 - r1 > dist:
                break
            if abs(c2 - c1) <= dist:
                parent[find(i)] = find(j)
    clusters: dict[int, list[tuple[int, int]]] = {}
    for cell, i in index.items():
        clusters.setdefault(find(i), []).append(cell)
    densest = max(clusters.values(), key=lambda members: (len(members), members[0]))
    rows = [r for r, _ in densest]
    cols = [col for _, col in densest]
    top, bottom = min(rows) * 4, (max(rows) + 1) * 4
    left, right = min(cols) * 4, (max(cols) + 1) * 4
    for c in cands:
        cy, cx = c.rect.center
        if not (top <= cy < bottom and left <= cx < right):
            c.non_window = config.non_window_support


def stage_b_beliefs(cands: list[CandidateArea], sibling_ks: KnowledgeSource,
                    config: PipelineConfig = PipelineConfig()) -> None:
    bels = _parallel_map(
        lambda c: stage_b_belief(c.bel_a, c.v_sibl, c.h_sibl, sibling_ks),
        cands, config.workers)
    for c, bel in zip(cands, bels):
        c.bel_b = bel


def stage_c_beliefs(cands: list[CandidateArea], sibling_ks: KnowledgeSource,
                    config: PipelineConfig = PipelineConfig()) -> None:
    bels = _parallel_map(
        lambda c: stage_c_belief(c.bel_a, c.non_window, c.v_sibl, c.h_sibl, sibling_ks),
        cands, config.workers)
    for c, bel in zip(cands, bels):
        c.bel_c = bel


@dataclass(frozen=True)
class PipelineResult:
    pyramid: Pyramid
    micro: EdgeField
    short_edges: list[EdgeSegment]
    long_edges: list[EdgeSegment]
    candidates: list[CandidateArea]


def run_pipeline(image: np.ndarray,
                 config: PipelineConfig = PipelineConfig(),
                 window_ks: KnowledgeSource | None = None,
                 sibling_ks: KnowledgeSource | None = None) -> PipelineResult:
    """The full level-synchronous chain, from pixels to staged beliefs."""
    from .stages import sibling_knowledge, window_knowledge
    window_ks = window_ks if window_ks is not None else window_knowledge()
    sibling_ks = sibling_ks if sibling_ks is not None else sibling_knowledge()
    p = build_pyramid(image)
    micro = extract_micro_edges(p, config)
    short = aggregate_short_edges(p, micro, config)
    long_edges = aggregate_long_edges(p, short, config)
    cands = find_window_candidates(long_edges, config)
    stage_a_beliefs(cands, p, micro, window_ks, config)
    sibling_search(cands, config)
    stage_b_beliefs(cands, sibling_ks, config)
    building_boundary(long_edges, cands, config)
    stage_c_beliefs(cands, sibling_ks, config)
    return PipelineResult(p, micro, short, long_edges, cands)
