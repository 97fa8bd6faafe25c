"""Parameter search for low-constant squares ``A (e_i P)``.

Candidates are screened in batches by a vectorised integer kernel and every
survivor is re-verified with exact arithmetic before it is emitted.  In
half-integer mode coordinates are sampled in units of 1/2, so a range of
``-32..32`` covers the values ``-16, -15.5, ..., 16``.
"""
from __future__ import annotations

import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Iterator, Optional, Sequence

import numpy as np

from .algebra import DEFAULT_CONVENTION, Hyper, cd_basis_table
from .dyadic import HalfRational, common_scale
from .euler import EulerParams, euler4_build, euler4_symbolic
from .magic import SquareMatrix, build_matrix, classify, pattern_arrays

LAYOUTS = ("natural", "euler")

PREDICATES = ("entries_distinct", "squares_distinct", "entries_integral", "fully_magic")
SEARCH_DIMS = (4, 8)


class RegionTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class SearchConfig:
    dim: int = 8
    lo: int = -32
    hi: int = 32
    half_integer_mode: bool = False
    predicates: frozenset = frozenset({"entries_distinct"})
    iterations: int = 10_000
    time_limit: Optional[float] = None
    seed: int = 0
    workers: int = 1
    convention: str = DEFAULT_CONVENTION
    # per-coordinate (lo, hi) overrides in sampler units; None means [lo, hi]
    a_box: Optional[tuple] = None
    p_box: Optional[tuple] = None
    batch_size: int = 4096
    max_lattice: int = 5_000_000
    quotient: bool = True
    record_time: bool = False
    # "natural": rows of A (e_i P); "euler": Euler's 4x4 table with A=abcd, P=pqrs
    layout: str = "natural"

    def __post_init__(self):
        object.__setattr__(self, "predicates", frozenset(self.predicates))
        if self.dim not in SEARCH_DIMS:
            raise ValueError(f"search supports dims {SEARCH_DIMS}, not {self.dim}")
        if self.layout not in LAYOUTS:
            raise ValueError(f"unknown layout {self.layout!r}")
        if self.layout == "euler" and self.dim != 4:
            raise ValueError("the euler layout exists only for dim 4")
        if self.lo > self.hi:
            raise ValueError(f"empty range lo={self.lo} > hi={self.hi}")
        unknown = self.predicates - set(PREDICATES)
        if unknown:
            raise ValueError(f"unknown predicates {sorted(unknown)}")
        if self.iterations <= 0 and not self.time_limit:
            raise ValueError("budget must be positive")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        for name in ("a_box", "p_box"):
            box = getattr(self, name)
            if box is not None:
                box = tuple((int(l), int(h)) for l, h in box)
                if len(box) != self.dim:
                    raise ValueError(f"{name} needs {self.dim} (lo, hi) pairs")
                object.__setattr__(self, name, box)

    @property
    def unit_denominator(self) -> int:
        return 2 if self.half_integer_mode else 1

    def bounds(self) -> tuple[np.ndarray, np.ndarray]:
        """Inclusive per-coordinate bounds for the 2*dim sampled units (A then P)."""
        default = [(self.lo, self.hi)] * self.dim
        pairs = list(self.a_box or default) + list(self.p_box or default)
        return (np.array([l for l, _ in pairs], dtype=np.int64),
                np.array([h for _, h in pairs], dtype=np.int64))

    def to_hyper(self, units: Sequence[int]) -> Hyper:
        if self.half_integer_mode:
            return Hyper(HalfRational(int(u), 1) for u in units)
        return Hyper(int(u) for u in units)


@dataclass(frozen=True)
class Candidate:
    A: Hyper
    P: Hyper
    constant: HalfRational
    kind: str
    entries_distinct: bool
    squares_distinct: bool
    entries_integral: bool
    convention: str
    seed: int
    worker: int
    iteration: int
    timestamp: Optional[float] = None
    layout: str = "natural"

    def flags(self) -> dict:
        return {"entries_distinct": self.entries_distinct,
                "squares_distinct": self.squares_distinct,
                "entries_integral": self.entries_integral}

    def to_json(self) -> dict:
        data = {
            "A": self.A.to_json(), "P": self.P.to_json(),
            "constant": str(self.constant), "kind": self.kind, **self.flags(),
            "convention": self.convention, "seed": self.seed,
            "worker": self.worker, "iteration": self.iteration, "layout": self.layout,
        }
        if self.timestamp is not None:
            data["timestamp"] = self.timestamp
        return data

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data: dict) -> Candidate:
        return cls(
            A=Hyper.from_json(data["A"]), P=Hyper.from_json(data["P"]),
            constant=HalfRational.coerce(data["constant"]), kind=data["kind"],
            entries_distinct=data["entries_distinct"], squares_distinct=data["squares_distinct"],
            entries_integral=data["entries_integral"],
            convention=data.get("convention", DEFAULT_CONVENTION), seed=data.get("seed", 0),
            worker=data.get("worker", 0), iteration=data.get("iteration", 0),
            timestamp=data.get("timestamp"), layout=data.get("layout", "natural"),
        )

    def matrix(self) -> SquareMatrix:
        return build_for_layout(self.layout, self.A, self.P, self.convention)

    def verify(self) -> bool:
        """Rebuild from ``(A, P)`` alone and compare every stored field."""
        c = classify(self.matrix())
        return (c.constant == self.constant and c.kind.value == self.kind
                and c.flags() == self.flags())


@dataclass
class SearchStats:
    visited: int = 0
    skipped: int = 0
    emitted: int = 0
    best_constant: Optional[HalfRational] = None
    best_history: list = field(default_factory=list)

    def record(self, cand: Candidate) -> None:
        self.emitted += 1
        if self.best_constant is None or cand.constant < self.best_constant:
            self.best_constant = cand.constant
        self.best_history.append(self.best_constant)


# -- vectorised screening ---------------------------------------------------

def _distinct_rows(values: np.ndarray) -> np.ndarray:
    s = np.sort(values, axis=1)
    return np.all(s[:, 1:] != s[:, :-1], axis=1)


def _screen(cfg: SearchConfig, a_idx, sign, A: np.ndarray, P: np.ndarray) -> np.ndarray:
    """Boolean mask of rows that pass every configured predicate (integer units)."""
    n = cfg.dim
    # M[b, i, j] = sum_l sign[i, j, l] * A[b, a_idx[i, j, l]] * P[b, l]
    M = np.einsum("bijl,ijl,bl->bij", A[:, a_idx], sign, P)
    na = np.einsum("bk,bk->b", A, A)
    npp = np.einsum("bk,bk->b", P, P)
    const = na * npp
    keep = const != 0
    flat = M.reshape(len(M), n * n)
    preds = effective_predicates(cfg)
    if "entries_integral" in preds and cfg.half_integer_mode:
        keep &= np.all(flat % 4 == 0, axis=1)
    if "entries_distinct" in preds:
        keep &= _distinct_rows(flat)
    if "squares_distinct" in preds:
        keep &= _distinct_rows(np.abs(flat))
    if "fully_magic" in preds:
        sq = M * M
        main = np.einsum("bii->b", sq)
        anti = np.einsum("bii->b", sq[:, :, ::-1])
        keep &= (main == const) & (anti == const)
    return keep


def effective_predicates(cfg: SearchConfig) -> frozenset:
    """Predicates actually enforced; a magic square needs distinct entries."""
    if "fully_magic" in cfg.predicates:
        return cfg.predicates | {"entries_distinct"}
    return cfg.predicates


def _passes(cfg: SearchConfig, c) -> bool:
    preds = effective_predicates(cfg)
    if not c.constant:
        return False
    if "fully_magic" in preds and not c.is_fully_magic:
        return False
    return all(c.flags()[p] for p in preds if p != "fully_magic")


def _canonical_sign(A: np.ndarray, P: np.ndarray):
    """Flip (A, P) -> (-A, -P) rows so the first nonzero A coordinate is positive."""
    nz = A != 0
    first = np.where(nz.any(axis=1), nz.argmax(axis=1), 0)
    neg = A[np.arange(len(A)), first] < 0
    A = np.where(neg[:, None], -A, A)
    P = np.where(neg[:, None], -P, P)
    return A, P


def build_for_layout(layout: str, A: Hyper, P: Hyper, convention: str = DEFAULT_CONVENTION) -> SquareMatrix:
    if layout == "euler":
        return euler4_build(EulerParams.of(A.coords, P.coords))
    return build_matrix(A, P, cd_basis_table(A.dim, convention))


class _Verifier:
    def __init__(self, cfg: SearchConfig, worker: int):
        self.cfg = cfg
        self.worker = worker
        if cfg.layout == "euler":
            pats = euler4_symbolic()
            self.a_idx = np.array([[[a for a, _ in p.terms] for p in row] for row in pats], dtype=np.int64)
            self.sign = np.array([[[s for _, s in p.terms] for p in row] for row in pats], dtype=np.int64)
        else:
            self.a_idx, self.sign = pattern_arrays(cfg.dim, cd_basis_table(cfg.dim, cfg.convention))

    def process(self, A: np.ndarray, P: np.ndarray, first_iteration: int) -> Iterator[Candidate]:
        cfg = self.cfg
        mask = _screen(cfg, self.a_idx, self.sign, A, P)
        for row in np.flatnonzero(mask):
            Ah = cfg.to_hyper(A[row])
            Ph = cfg.to_hyper(P[row])
            c = classify(build_for_layout(cfg.layout, Ah, Ph, cfg.convention))
            if not _passes(cfg, c):
                raise AssertionError(f"screen/exact disagreement at A={Ah}, P={Ph}")
            yield Candidate(
                A=Ah, P=Ph, constant=c.constant, kind=c.kind.value,
                entries_distinct=c.entries_distinct, squares_distinct=c.squares_distinct,
                entries_integral=c.entries_integral, convention=cfg.convention,
                seed=cfg.seed, worker=self.worker, iteration=first_iteration + int(row),
                timestamp=time.time() if cfg.record_time else None, layout=cfg.layout,
            )


# -- random search ----------------------------------------------------------

def _worker_share(cfg: SearchConfig, worker: int) -> int:
    base, extra = divmod(cfg.iterations, cfg.workers)
    return base + (1 if worker < extra else 0)


def worker_stream(cfg: SearchConfig, worker: int = 0,
                  stats: Optional[SearchStats] = None) -> Iterator[Candidate]:
    """Deterministic candidate stream for one worker; depends only on (cfg, worker)."""
    rng = np.random.default_rng(np.random.SeedSequence([cfg.seed, worker]))
    lo, hi = cfg.bounds()
    verifier = _Verifier(cfg, worker)
    budget = _worker_share(cfg, worker) if cfg.iterations > 0 else math.inf
    deadline = time.monotonic() + cfg.time_limit if cfg.time_limit else None
    seen: set = set()
    done = 0
    while done < budget:
        if deadline is not None and time.monotonic() > deadline:
            break
        size = int(min(cfg.batch_size, budget - done))
        units = rng.integers(lo, hi + 1, size=(size, 2 * cfg.dim), dtype=np.int64)
        A, P = _canonical_sign(units[:, :cfg.dim], units[:, cfg.dim:])
        if stats is not None:
            stats.visited += size
        for cand in verifier.process(A, P, done):
            key = (cand.A, cand.P)
            if key in seen:
                continue
            seen.add(key)
            if stats is not None:
                stats.record(cand)
            yield cand
        done += size


def _collect_worker(args) -> list[dict]:
    cfg, worker = args
    return [c.to_json() for c in worker_stream(cfg, worker)]


def random_search(cfg: SearchConfig, stats: Optional[SearchStats] = None) -> Iterator[Candidate]:
    """Sample ``(A, P)`` uniformly from the configured box and emit passing candidates.

    With one worker the stream is fully determined by the seed.  With more,
    each worker runs :func:`worker_stream` in its own process and the
    results are merged in worker order, dropping repeats.
    """
    if stats is None:
        stats = SearchStats()
    if cfg.workers == 1:
        yield from worker_stream(cfg, 0, stats)
        return
    seen: set = set()
    with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
        for worker, batch in enumerate(pool.map(_collect_worker, [(cfg, w) for w in range(cfg.workers)])):
            stats.visited += _worker_share(cfg, worker)
            for data in batch:
                cand = Candidate.from_json(data)
                key = (cand.A, cand.P)
                if key in seen:
                    continue
                seen.add(key)
                stats.record(cand)
                yield cand


# -- exhaustive search ------------------------------------------------------

def lattice_size(cfg: SearchConfig) -> int:
    lo, hi = cfg.bounds()
    return int(np.prod(np.maximum(hi - lo + 1, 0), dtype=object))


def exhaustive_search(cfg: SearchConfig, stats: Optional[SearchStats] = None) -> Iterator[Candidate]:
    """Visit every lattice point of the box once, in lexicographic order.

    With ``cfg.quotient`` set, a point is skipped when it is the image of
    another under ``(A, P) -> (-A, -P)`` (first nonzero A coordinate
    negative), or when all 2*dim units share a factor ``g > 1`` (the
    square is then ``g**2`` times a smaller one).  Raises
    :class:`RegionTooLarge` beyond ``cfg.max_lattice`` points.
    """
    if stats is None:
        stats = SearchStats()
    total = lattice_size(cfg)
    if total > cfg.max_lattice:
        raise RegionTooLarge(f"{total} lattice points exceed the cap of {cfg.max_lattice}")
    if total == 0:
        return
    lo, hi = cfg.bounds()
    radix = hi - lo + 1
    verifier = _Verifier(cfg, 0)
    n = cfg.dim
    for start in range(0, total, cfg.batch_size):
        idx = np.arange(start, min(start + cfg.batch_size, total), dtype=np.int64)
        units = np.empty((len(idx), 2 * n), dtype=np.int64)
        rem = idx.copy()
        for col in range(2 * n - 1, -1, -1):
            units[:, col] = lo[col] + rem % radix[col]
            rem //= radix[col]
        keep = np.ones(len(idx), dtype=bool)
        if cfg.quotient:
            A = units[:, :n]
            nz = A != 0
            first = nz.argmax(axis=1)
            keep &= ~(nz.any(axis=1) & (A[np.arange(len(A)), first] < 0))
            keep &= np.gcd.reduce(np.abs(units), axis=1) <= 1
        stats.visited += len(idx)
        stats.skipped += int((~keep).sum())
        sel = np.flatnonzero(keep)
        for cand in verifier.process(units[sel, :n], units[sel, n:], start):
            # report the lattice index of the point, not the position in the filtered batch
            cand = replace(cand, iteration=start + int(sel[cand.iteration - start]))
            stats.record(cand)
            yield cand


def search_points(cfg: SearchConfig, pairs: Iterable[tuple[Sequence, Sequence]],
                  stats: Optional[SearchStats] = None) -> Iterator[Candidate]:
    """Run the predicate pipeline on explicit ``(A, P)`` pairs given in sampler units."""
    if stats is None:
        stats = SearchStats()
    pairs = list(pairs)
    if not pairs:
        return
    verifier = _Verifier(cfg, 0)
    A = np.array([a for a, _ in pairs], dtype=np.int64)
    P = np.array([p for _, p in pairs], dtype=np.int64)
    stats.visited += len(pairs)
    for cand in verifier.process(A, P, 0):
        stats.record(cand)
        yield cand


# -- log --------------------------------------------------------------------

def write_log(path, candidates: Iterable[Candidate],
              on_candidate: Optional[Callable[[Candidate], None]] = None) -> int:
    """Append candidates to a JSONL file; returns the number written."""
    count = 0
    with open(path, "a", encoding="utf-8", newline="\n") as fh:
        for cand in candidates:
            fh.write(cand.dumps() + "\n")
            fh.flush()
            count += 1
            if on_candidate is not None:
                on_candidate(cand)
    return count


def read_log(path) -> list[Candidate]:
    with open(path, encoding="utf-8") as fh:
        return [Candidate.from_json(json.loads(line)) for line in fh if line.strip()]


def best_constant(candidates: Iterable[Candidate]) -> Optional[HalfRational]:
    return min((c.constant for c in candidates), default=None)


# -- row diagonalisation ----------------------------------------------------

def diagonalize_rows(M: SquareMatrix) -> Optional[tuple[int, ...]]:
    """Row order making both diagonal square-sums equal the constant.

    Depth-first over all ``n!`` orders with pruning on partial sums (squares
    are non-negative).  Returns ``perm`` with row ``i`` of the result taken
    from row ``perm[i]``, or ``None``.  Raises ``ValueError`` unless ``M``
    is semimagic.
    """
    c = classify(M)
    if not c.is_semimagic:
        raise ValueError("diagonalize_rows needs a semimagic matrix")
    n = M.dim
    nums, _ = common_scale(M.flat())
    sq = [[nums[i * n + j] ** 2 for j in range(n)] for i in range(n)]
    target = sum(sq[0])  # scaled constant
    perm: list[int] = []
    used = [False] * n

    def dfs(pos: int, main: int, anti: int) -> bool:
        if pos == n:
            return main == target and anti == target
        for r in range(n):
            if used[r]:
                continue
            m2 = main + sq[r][pos]
            a2 = anti + sq[r][n - 1 - pos]
            if m2 > target or a2 > target:
                continue
            used[r] = True
            perm.append(r)
            if dfs(pos + 1, m2, a2):
                return True
            perm.pop()
            used[r] = False
        return False

    return tuple(perm) if dfs(0, 0, 0) else None
