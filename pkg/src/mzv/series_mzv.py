"""Direct nested-series evaluation of multiple zeta and multiple t-values.

Two regimes live here:

* exact: truncated sums, prefix multiple-harmonic tables, and the arcsin
  power Taylor coefficients, all in rational arithmetic (the test oracles);
* accelerated: float dynamic programming over large truncations with
  geometric-checkpoint extrapolation, which is the heuristic third route of
  the verification harness.

Truncated sums stay exact rationals up to a configurable size and switch to
fixed-precision floating accumulation above it, where reduced fractions
would grow without bound.  Extrapolated results are always flagged
HEURISTIC; the rigorous burden falls on the quadrature route.
"""

from __future__ import annotations

import math
import os
import struct
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np
from mpmath.libmp import from_float, from_man_exp, round_nearest

from .exact_core import binomial
from .numerics import HEURISTIC, RealBall

PARITY_ALL = "all"
PARITY_ODD = "odd"

SERIES_ZETA = "zeta"
SERIES_T = "t"

RICHARDSON_GEOMETRIC = "richardson_geometric"

# Above this limit the exact-rational partial sums are abandoned for floats.
EXACT_TRUNCATION_DEFAULT = 512

_CACHE_MAGIC = b"MZVT"
_CACHE_VERSION = 1


@dataclass(frozen=True)
class Composition:
    """MZV / t-value index (k_1, ..., k_r), increasing-index convention:
    the series runs over n_1 < n_2 < ... < n_r and admissibility requires
    the *last* exponent k_r > 1."""

    parts: tuple[int, ...]

    def __init__(self, parts) -> None:
        parts = tuple(int(p) for p in parts)
        if not parts:
            raise ValueError("composition must be nonempty")
        if any(p < 1 for p in parts):
            raise ValueError("composition parts must be positive")
        if parts[-1] < 2:
            raise ValueError("inadmissible composition: last exponent must exceed 1")
        object.__setattr__(self, "parts", parts)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def depth(self) -> int:
        return len(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


@dataclass(frozen=True)
class TruncationPlan:
    """Base truncation plus extrapolation depth for the accelerated route."""

    n: int = 10_000
    levels: int = 3
    scheme: str = RICHARDSON_GEOMETRIC

    def __post_init__(self) -> None:
        if self.n < 16:
            raise ValueError("base truncation must be at least 16")
        if self.levels < 1:
            raise ValueError("at least one extrapolation level required")
        if self.scheme != RICHARDSON_GEOMETRIC:
            raise ValueError(f"unknown scheme {self.scheme!r}")

    def checkpoints(self) -> list[int]:
        return [self.n * 2**i for i in range(self.levels)]


@dataclass(frozen=True)
class MhnTable:
    """Prefix multiple harmonic numbers at one depth.

    values[i] is the depth-d sum over strictly increasing index tuples drawn
    from the first i series weights: for ALL parity the weights are 1, 2, 3,
    ... and values[i] = sum over n_1 < ... < n_d <= i of prod 1/n_j^2; for
    ODD parity the weights are 1, 3, 5, ... (index n mapped to 2n+1, n from
    0) and values[i] sums over 0 <= n_1 < ... < n_d < i.
    """

    depth: int
    parity: str
    limit: int
    values: tuple[Fraction, ...]

    def save(self, path: str | Path) -> None:
        blob = bytearray()
        blob += _CACHE_MAGIC
        blob += struct.pack(">I", _CACHE_VERSION)
        blob += struct.pack(">I", self.depth)
        blob += struct.pack(">B", 1 if self.parity == PARITY_ODD else 0)
        blob += struct.pack(">Q", self.limit)
        for v in self.values:
            for part in (v.numerator, v.denominator):
                raw = part.to_bytes((part.bit_length() + 7) // 8, "big")
                blob += struct.pack(">I", len(raw))
                blob += raw
        Path(path).write_bytes(bytes(blob))

    @staticmethod
    def load(path: str | Path) -> "MhnTable":
        blob = Path(path).read_bytes()
        if blob[:4] != _CACHE_MAGIC:
            raise ValueError("not an MZVT table file")
        (version,) = struct.unpack(">I", blob[4:8])
        if version != _CACHE_VERSION:
            raise ValueError(f"unsupported MZVT version {version}")
        (depth,) = struct.unpack(">I", blob[8:12])
        (parity_flag,) = struct.unpack(">B", blob[12:13])
        (limit,) = struct.unpack(">Q", blob[13:21])
        off = 21
        values = []
        for _ in range(limit):
            nums = []
            for _ in range(2):
                (ln,) = struct.unpack(">I", blob[off : off + 4])
                off += 4
                nums.append(int.from_bytes(blob[off : off + ln], "big"))
                off += ln
            values.append(Fraction(nums[0], nums[1]))
        return MhnTable(depth, PARITY_ODD if parity_flag else PARITY_ALL, limit, tuple(values))


def _series_weight(parity: str, position: int) -> int:
    """Weight of 1-based table position: 1,2,3,... or 1,3,5,..."""
    return position if parity == PARITY_ALL else 2 * position - 1


def prefix_mhn(depth: int, N: int, parity: str = PARITY_ALL) -> MhnTable:
    """Exact depth-d prefix table by the forward recurrence
    A_d[i] = A_d[i-1] + A_(d-1)[i-1] / w_(i-1)^2, with A_0 identically 1."""
    if N < 1:
        raise ValueError("N must be positive")
    if parity not in (PARITY_ALL, PARITY_ODD):
        raise ValueError(f"unknown parity {parity!r}")
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    rows = [Fraction(1)] * N
    for _ in range(depth):
        acc = Fraction(0)
        new = []
        for i in range(N):
            new.append(acc)
            acc += rows[i] / _series_weight(parity, i + 1) ** 2
        rows = new
    return MhnTable(depth, parity, N, tuple(rows))


def load_or_build_prefix(
    depth: int, N: int, parity: str = PARITY_ALL, cache_dir: str | Path | None = None
) -> MhnTable:
    """prefix_mhn with an optional on-disk cache (MZV_CACHE_DIR by default)."""
    cache_dir = cache_dir or os.environ.get("MZV_CACHE_DIR")
    if not cache_dir:
        return prefix_mhn(depth, N, parity)
    path = Path(cache_dir) / f"mhn_{parity}_{depth}_{N}.mzvt"
    if path.exists():
        return MhnTable.load(path)
    table = prefix_mhn(depth, N, parity)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        table.save(path)
    except OSError:
        pass  # cache is best-effort; the computed table is still returned
    return table


def arcsin_even_coeff(r: int, n: int) -> Fraction:
    """Coefficient of x^(2n) in arcsin(x)^(2r) / (2r)!:
    4^(n-r) / (n^2 C(2n,n)) times the depth-(r-1) prefix value below n."""
    if r < 1 or n < 1:
        raise ValueError("arcsin_even_coeff requires r >= 1 and n >= 1")
    if n < r:
        return Fraction(0)
    prefix = load_or_build_prefix(r - 1, n, PARITY_ALL).values[n - 1]
    return Fraction(4 ** (n - r), n * n * binomial(2 * n, n)) * prefix


def arcsin_odd_coeff(r: int, n: int) -> Fraction:
    """Coefficient of x^(2n+1) in arcsin(x)^(2r+1) / (2r+1)!:
    C(2n,n) / ((2n+1) 4^n) times the depth-r odd prefix value below n."""
    if r < 0 or n < 0:
        raise ValueError("arcsin_odd_coeff requires r >= 0 and n >= 0")
    if n < r:
        return Fraction(0)
    prefix = load_or_build_prefix(r, n + 1, PARITY_ODD).values[n]
    return Fraction(binomial(2 * n, n), (2 * n + 1) * 4**n) * prefix


# ---------------------------------------------------------------------------
# truncated sums: exact rational DP
# ---------------------------------------------------------------------------

def mzv_truncated(c: Composition, N: int, kind: str = SERIES_ZETA) -> Fraction:
    """Exact partial sum over 1 <= n_1 < ... < n_r <= N (zeta kind) or over
    odd integers <= 2N-1 (t kind), by depth-wise dynamic programming in
    O(depth * N) rational operations."""
    if N < 1:
        raise ValueError("N must be positive")
    parity = PARITY_ALL if kind == SERIES_ZETA else PARITY_ODD
    if kind not in (SERIES_ZETA, SERIES_T):
        raise ValueError(f"unknown series kind {kind!r}")
    weights = [_series_weight(parity, i + 1) for i in range(N)]
    rows = [Fraction(1)] * N
    for k in c.parts[:-1]:
        acc = Fraction(0)
        new = []
        for i in range(N):
            new.append(acc)
            acc += rows[i] / weights[i] ** k
        rows = new
    k_last = c.parts[-1]
    return sum((rows[i] / weights[i] ** k_last for i in range(N)), Fraction(0))


def _partial_sums_float(c: Composition, checkpoints: list[int], kind: str) -> list[float]:
    N = checkpoints[-1]
    if kind == SERIES_ZETA:
        w = np.arange(1, N + 1, dtype=np.float64)
    else:
        w = np.arange(1, 2 * N, 2, dtype=np.float64)
    rows = np.ones(N)
    for k in c.parts[:-1]:
        contrib = rows / w**k
        rows = np.concatenate(([0.0], np.cumsum(contrib)[:-1]))
    partial = np.cumsum(rows / w ** c.parts[-1])
    return [float(partial[m - 1]) for m in checkpoints]


# ---------------------------------------------------------------------------
# extrapolation
# ---------------------------------------------------------------------------

def _richardson_diagonal(values: list) -> tuple:
    """Classic Richardson triangle for samples at N, 2N, 4N, ... assuming a
    tail expansion in pure powers of 1/N.  Returns (best, previous_best)."""
    row = list(values)
    diag = [row[0]]
    for j in range(1, len(values)):
        factor = 2**j
        row = [(factor * row[i + 1] - row[i]) / (factor - 1) for i in range(len(row) - 1)]
        diag.append(row[-1])
    prev = diag[-2] if len(diag) > 1 else diag[-1]
    return diag[-1], prev


def _log_basis(count: int):
    """Basis functions 1/N, ln(N)/N, 1/N^2, ln(N)/N^2, ... for tails of
    compositions containing an exponent 1 (their remainders genuinely carry
    ln N factors, which pure-power Richardson cannot remove)."""
    funcs = []
    j = 1
    while len(funcs) < count:
        funcs.append(lambda x, j=j: x**-j)
        if len(funcs) < count:
            funcs.append(lambda x, j=j: math.log(x) * x**-j)
        j += 1
    return funcs


def _log_aware_estimate(ns: list[int], values: list[float]) -> tuple[float, float]:
    def solve(ns_, vals_):
        k = len(ns_)
        funcs = _log_basis(k - 1)
        A = np.empty((k, k))
        A[:, 0] = 1.0
        for col, f in enumerate(funcs, start=1):
            A[:, col] = [f(n) for n in ns_]
        return float(np.linalg.solve(A, np.asarray(vals_))[0])

    best = solve(ns, values)
    prev = solve(ns[1:], values[1:]) if len(ns) > 2 else best
    return best, prev


def _heuristic_ball(best: float, prev: float, prec: int, noise: float) -> RealBall:
    err = abs(best - prev) + noise
    mid = from_float(best, max(prec, 53), round_nearest)
    e = max(int(math.floor(math.log2(err))) + 2, -1200) if err > 0 else -1200
    return RealBall.from_mid_rad(mid, from_man_exp(1, e), max(prec, 53), HEURISTIC)


def _exact_heuristic_ball(value: Fraction, err: Fraction, prec: int) -> RealBall:
    """Full-precision midpoint for the exact-rational extrapolation path."""
    prec = max(prec, 53)
    ball = RealBall.from_fraction(value, prec).with_rigor(HEURISTIC)
    err = abs(err)
    if err:
        e = err.numerator.bit_length() - err.denominator.bit_length() + 2
        ball = ball.pad_radius(from_man_exp(1, e))
    return ball


def mzv_extrapolated(
    c: Composition,
    plan: TruncationPlan,
    prec: int,
    kind: str = SERIES_ZETA,
    exact_threshold: int = EXACT_TRUNCATION_DEFAULT,
) -> RealBall:
    """Accelerated series value: partial sums at plan checkpoints, then
    geometric-point extrapolation.  HEURISTIC radius = spread of the two
    deepest extrapolants plus a float-accumulation allowance."""
    if kind not in (SERIES_ZETA, SERIES_T):
        raise ValueError(f"unknown series kind {kind!r}")
    checkpoints = plan.checkpoints()
    n_max = checkpoints[-1]
    has_ones = any(p == 1 for p in c.parts)

    if n_max <= exact_threshold:
        exact = [mzv_truncated(c, m, kind) for m in checkpoints]
        if has_ones and len(checkpoints) >= 3:
            best, prev = _log_aware_estimate(checkpoints, [float(v) for v in exact])
            return _heuristic_ball(best, prev, prec, 0.0)
        if len(exact) == 1:
            return _exact_heuristic_ball(exact[0], exact[0] / checkpoints[0], prec)
        best_f, prev_f = _richardson_diagonal(exact)
        return _exact_heuristic_ball(best_f, abs(best_f - prev_f), prec)

    vals = _partial_sums_float(c, checkpoints, kind)
    noise = 2.5e-16 * n_max * (1.0 + abs(vals[-1]))
    if len(vals) == 1:
        return _heuristic_ball(vals[0], vals[0] * (1 + 1 / checkpoints[0]), prec, noise)
    if has_ones and len(vals) >= 3:
        best, prev = _log_aware_estimate(checkpoints, vals)
    else:
        best, prev = _richardson_diagonal(vals)
    return _heuristic_ball(best, prev, prec, noise)


# ---------------------------------------------------------------------------
# tail multiple harmonic tables and the single-sum route
# ---------------------------------------------------------------------------

def _power_sum_tail(j: int, start: int, parity: str) -> float:
    """sum over table positions i >= start of w_i^(-2j), via Euler-Maclaurin
    with three correction terms (float accuracy is ample here)."""
    if parity == PARITY_ALL:
        M = float(start)
        s = 2 * j
        return (
            M ** (1 - s) / (s - 1)
            + 0.5 * M**-s
            + s * M ** (-s - 1) / 12.0
            - s * (s + 1) * (s + 2) * M ** (-s - 3) / 720.0
        )
    # odd weights 2m+1 for m >= start-? : positions i >= start carry weight 2i-1
    u = 2.0 * start - 1.0
    s = 2 * j
    return (
        u ** (1 - s) / (2 * (s - 1))
        + 0.5 * u**-s
        + 2 * s * u ** (-s - 1) / 12.0
        - 8 * s * (s + 1) * (s + 2) * u ** (-s - 3) / 720.0
    )


def _tail_bases(depth: int, start: int, parity: str) -> list[float]:
    """Elementary symmetric tails e_0..e_depth of {w^-2 : position >= start}
    from power sums via Newton's identity."""
    p = [0.0] + [_power_sum_tail(j, start, parity) for j in range(1, depth + 1)]
    e = [1.0]
    for d in range(1, depth + 1):
        acc = 0.0
        for j in range(1, d + 1):
            acc += (-1) ** (j - 1) * e[d - j] * p[j]
        e.append(acc / d)
    return e


def _tail_tables_float(depth: int, N: int, parity: str) -> list[np.ndarray]:
    """Tables B_d[i] = sum over d strictly increasing positions > i+1 of the
    inverse-square weights, for i = 0..N-1 (1-based position i+1), exact
    backward recurrences seeded with analytic tails at position N."""
    w = (
        np.arange(1, N + 1, dtype=np.float64)
        if parity == PARITY_ALL
        else np.arange(1, 2 * N, 2, dtype=np.float64)
    )
    inv2 = 1.0 / (w * w)
    bases = _tail_bases(depth, N + 1, parity)
    tables = [np.ones(N)]
    for d in range(1, depth + 1):
        contrib = tables[-1] * inv2
        suffix = np.cumsum(contrib[::-1])[::-1] - contrib  # sum over positions > i
        tables.append(bases[d] + suffix)
    return tables


def tail_mhn(depth: int, n: int, parity: str = PARITY_ALL, prec: int = 53) -> RealBall:
    """Heuristic ball for the tail multiple harmonic number of given depth
    starting strictly above n: sum over n < m_1 < ... < m_depth of the
    inverse squares of the weights (m_i for ALL, 2 m_i + 1 for ODD)."""
    if depth < 0 or n < 0:
        raise ValueError("depth and n must be nonnegative")
    if depth == 0:
        return RealBall.from_int(1, max(prec, 53))

    def at_cutoff(N: int) -> float:
        if parity == PARITY_ALL:
            # positions are the integers themselves
            tables = _tail_tables_float(depth, N, PARITY_ALL)
            return float(tables[depth][n - 1]) if n >= 1 else float(
                tables[depth][0] + tables[depth - 1][0] / 1.0
            )
        # ODD: index m >= 0 carries weight 2m+1 = weight of position m+1
        tables = _tail_tables_float(depth, N, PARITY_ODD)
        return float(tables[depth][n])

    N1 = max(4 * (n + 2), 20_000)
    v1 = at_cutoff(N1)
    v2 = at_cutoff(2 * N1)
    return _heuristic_ball(v2, v1, prec, 5e-16 * (1 + abs(v2)))


def single_sum_H(a: int, b: int, N: int, prec: int = 53) -> RealBall:
    """H(a,b) as the single series sum_n n^-3 A_n B_n with a depth-a prefix
    table and a depth-b tail table, extrapolated from checkpoints N/4, N/2,
    N.  HEURISTIC."""
    return _single_sum(a, b, N, prec, PARITY_ALL)


def single_sum_T(a: int, b: int, N: int, prec: int = 53) -> RealBall:
    """T(a,b) analogue of single_sum_H over odd weights."""
    return _single_sum(a, b, N, prec, PARITY_ODD)


def _single_sum(a: int, b: int, N: int, prec: int, parity: str) -> RealBall:
    if a < 0 or b < 0:
        raise ValueError("a and b must be nonnegative")
    if N < 64:
        raise ValueError("N must be at least 64")
    N -= N % 4
    w = (
        np.arange(1, N + 1, dtype=np.float64)
        if parity == PARITY_ALL
        else np.arange(1, 2 * N, 2, dtype=np.float64)
    )
    inv2 = 1.0 / (w * w)
    prefix = np.ones(N)
    for _ in range(a):
        contrib = prefix * inv2
        prefix = np.concatenate(([0.0], np.cumsum(contrib)[:-1]))
    tail = _tail_tables_float(b, N, parity)[b]
    partial = np.cumsum(prefix * tail / w**3)
    checkpoints = [N // 4, N // 2, N]
    vals = [float(partial[m - 1]) for m in checkpoints]
    best, prev = _richardson_diagonal(vals)
    noise = 2.5e-16 * N * (1.0 + abs(best))
    return _heuristic_ball(best, prev, prec, noise)
