"""Exhaustive search over circulant first rows x in GF(q^2)^k.

The candidate conditions are invariant under scaling (H_m(s x) =
s^(q+1) H_m(x), minors scale by powers of s) and under cyclic rotation
(which permutes the circulant's rows and columns), so the search enumerates
one representative per scaling class - every entry nonzero, the last
coordinate fixed to 1 - and canonicalises solutions by rotation afterwards.

The space is partitioned by the leading enumerated coordinate; partitions
share no state and the merged, canonically sorted result is identical for
any worker count.  Pruning order per candidate block: autocorrelations
H_1, H_2, ... (complete-vector evaluation, fail fast), then H_0 != 0, then
the minor conditions on survivors.
"""

from __future__ import annotations

import sys
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from qmds.circulant import check_candidate, circulant_matrix
from qmds.codes import BudgetExceeded
from qmds.gf import Field
from qmds.linalg import all_minors_nonsingular

__all__ = ["SearchConfig", "SearchResult", "normalize", "partition", "search"]

_BLOCK_ROWS = 1 << 18


@dataclass(frozen=True)
class SearchConfig:
    """Search space description.

    ``symmetric`` restricts to mirror-symmetric rows x_j = x_(k+2-j) (odd k
    only); ``equalities`` forces additional coordinate pairs (1-based) equal.
    Scaling normalization fixes one coordinate class to 1; shift
    normalization quotients solutions by cyclic rotation.
    """

    field: Field
    k: int
    symmetric: bool = False
    equalities: tuple[tuple[int, int], ...] = ()
    normalize_scaling: bool = True
    normalize_shift: bool = True
    budget: int = 10**9
    workers: int = 1


@dataclass(frozen=True)
class SearchResult:
    solutions: tuple[tuple[int, ...], ...]
    examined: int
    pruned: dict[str, int]
    elapsed: float


def _position_classes(cfg: SearchConfig) -> list[list[int]]:
    """Coordinate positions (0-based) grouped by forced equality, ordered by
    smallest position."""
    k = cfg.k
    if k < 2:
        raise ValueError("search needs k >= 2")
    parent = list(range(k))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    pairs = []
    for i, j in cfg.equalities:
        if not (1 <= i <= k and 1 <= j <= k):
            raise ValueError(f"equality ({i},{j}) outside positions 1..{k}")
        pairs.append((i - 1, j - 1))
    if cfg.symmetric:
        if k % 2 == 0:
            raise ValueError(
                "symmetric search needs odd k: mirrored entries of an even-k row "
                "form a 2x2 submatrix with zero determinant"
            )
        pairs.extend((j - 1, k + 2 - j - 1) for j in range(2, (k + 1) // 2 + 1))
    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for pos in range(k):
        groups.setdefault(find(pos), []).append(pos)
    return [groups[r] for r in sorted(groups)]


def _layout(cfg: SearchConfig) -> tuple[list[int], list[int]]:
    """Per-position class column (-1 = fixed to 1) and the enumerated class
    order; the class containing the last position is the one fixed by
    scaling normalization."""
    classes = _position_classes(cfg)
    fixed = None
    if cfg.normalize_scaling:
        fixed = next(i for i, grp in enumerate(classes) if cfg.k - 1 in grp)
    enum_ids = [i for i in range(len(classes)) if i != fixed]
    colmap = [-1] * cfg.k
    for col, ci in enumerate(enum_ids):
        for pos in classes[ci]:
            colmap[pos] = col
    return colmap, enum_ids


def space_size(cfg: SearchConfig) -> int:
    """Number of candidates after the nonzero-entry and scaling quotients."""
    _, enum_ids = _layout(cfg)
    return (cfg.field.order - 1) ** len(enum_ids)


def partition(cfg: SearchConfig) -> tuple[tuple[int, int], ...]:
    """Disjoint index ranges over the leading coordinate's value order whose
    union covers the whole space; one range per worker (capped by the number
    of leading values)."""
    _, enum_ids = _layout(cfg)
    if cfg.workers < 1:
        raise ValueError("workers must be >= 1")
    if not enum_ids:
        return ((0, 1),)
    base = cfg.field.order - 1
    w = min(cfg.workers, base)
    bounds = [i * base // w for i in range(w + 1)]
    return tuple((bounds[i], bounds[i + 1]) for i in range(w) if bounds[i + 1] > bounds[i])


def normalize(cfg: SearchConfig, x) -> tuple[int, ...]:
    """Canonical representative of x under the enabled quotients: the
    rotation whose rescaled form (last nonzero coordinate = 1) is least in
    the element order.  Idempotent."""
    field = cfg.field
    x = tuple(int(c) for c in x)
    if all(c == 0 for c in x):
        raise ValueError("cannot normalize the zero vector")

    def rescale(v: tuple[int, ...]) -> tuple[int, ...]:
        if not cfg.normalize_scaling:
            return v
        last = next(c for c in reversed(v) if c)
        s = int(field.inv(last))
        return tuple(int(field.mul(c, s)) for c in v)

    if not cfg.normalize_shift:
        return rescale(x)
    rotations = (x[i:] + x[:i] for i in range(len(x)))
    return min(
        (rescale(r) for r in rotations),
        key=lambda v: tuple(field.order_index(c) for c in v),
    )


def _block_autocorr(field: Field, block: np.ndarray, m: int) -> np.ndarray:
    shifted = field.conj(np.roll(block, -m, axis=1))
    terms = field.mul(block, shifted)
    acc = terms[:, 0]
    for i in range(1, block.shape[1]):
        acc = field.add(acc, terms[:, i])
    return acc


def _scan_range(cfg: SearchConfig, lo: int, hi: int):
    field, k = cfg.field, cfg.k
    colmap, enum_ids = _layout(cfg)
    half = k // 2
    counts: Counter[str] = Counter()
    solutions: list[tuple[int, ...]] = []
    nz = np.array(field.nonzero_elements(), dtype=np.int16)
    base = nz.shape[0]

    def process(block: np.ndarray) -> None:
        counts["examined"] += block.shape[0]
        alive = block
        for m in range(1, half + 1):
            vals = _block_autocorr(field, alive, m)
            keep = vals == 0
            kept = int(keep.sum())
            counts[f"autocorrelation_{m}"] += alive.shape[0] - kept
            if kept == 0:
                return
            alive = alive[keep]
        vals = _block_autocorr(field, alive, 0)
        keep = vals != 0
        counts["norm_sum"] += alive.shape[0] - int(keep.sum())
        alive = alive[keep]
        for row in alive:
            x = tuple(int(c) for c in row)
            scan = all_minors_nonsingular(field, circulant_matrix(field, x), half)
            if scan.ok:
                solutions.append(x)
            else:
                counts["minors"] += 1

    if not enum_ids:
        if lo == 0:  # single fully-fixed candidate
            process(np.ones((1, k), dtype=np.int16))
        return solutions, counts

    rest = len(enum_ids) - 1
    rest_total = base**rest
    for li in range(lo, hi):
        lead = nz[li]
        for start in range(0, rest_total, _BLOCK_ROWS):
            stop = min(rest_total, start + _BLOCK_ROWS)
            values = np.empty((stop - start, len(enum_ids)), dtype=np.int16)
            values[:, 0] = lead
            idx = np.arange(start, stop, dtype=np.int64)
            for col in range(len(enum_ids) - 1, 0, -1):
                values[:, col] = nz[idx % base]
                idx //= base
            block = np.empty((stop - start, k), dtype=np.int16)
            for pos in range(k):
                block[:, pos] = values[:, colmap[pos]] if colmap[pos] >= 0 else 1
            process(block)
    return solutions, counts


def search(cfg: SearchConfig) -> SearchResult:
    """Complete enumeration of the normalized space; every returned solution
    re-passes the candidate check."""
    t0 = time.perf_counter()
    size = space_size(cfg)
    if size > cfg.budget:
        raise BudgetExceeded(f"normalized space has {size} candidates, budget is {cfg.budget}")
    parts = partition(cfg)
    if cfg.workers > 1 and len(parts) > 1:
        try:
            with ProcessPoolExecutor(max_workers=len(parts)) as pool:
                results = list(pool.map(_scan_part, [(cfg, lo, hi) for lo, hi in parts]))
        except OSError as exc:  # no process support: identical results, serially
            print(f"process pool unavailable ({exc}); running partitions serially", file=sys.stderr)
            results = [_scan_range(cfg, lo, hi) for lo, hi in parts]
    else:
        results = [_scan_range(cfg, lo, hi) for lo, hi in parts]

    counts: Counter[str] = Counter()
    raw: list[tuple[int, ...]] = []
    for sols, cnt in results:
        raw.extend(sols)
        counts.update(cnt)
    canonical = sorted(
        {normalize(cfg, x) for x in raw},
        key=lambda v: tuple(cfg.field.order_index(c) for c in v),
    )
    for x in canonical:
        if not check_candidate(cfg.field, x).passed:
            raise RuntimeError(f"solution {x} failed its re-check after normalization")
    examined = counts.pop("examined", 0)
    return SearchResult(tuple(canonical), examined, dict(counts), time.perf_counter() - t0)


def _scan_part(args):
    return _scan_range(*args)
