"""Range verification for additive representations n = x + y and n = ax + by.

The scan is chunked, and each chunk is resolved with vectorized membership
lookups; results are merged in chunk order so the report is identical no
matter how many worker threads run.  Witnesses always use the minimal left
summand x.
"""
from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .errors import UsageError
from .figurate import FigurateTable
from .intkernel import prime_power_decompose

CHUNK = 1 << 16

# Below this many unresolved targets a chunk drops out of vectorized passes
# into per-target scalar scans.
_STRAGGLER_CUTOFF = 32
_STRAGGLER_MIN_PASSES = 64

DOMAIN_KINDS = ("primes", "figurate", "proper", "prime-powers")


@dataclass(frozen=True)
class DomainSpec:
    """A summand domain: which set, and whether the value 1 is admitted."""

    kind: str
    include_one: bool = True

    def __post_init__(self) -> None:
        if self.kind not in DOMAIN_KINDS:
            raise UsageError(f"unknown domain kind {self.kind!r}")

    @property
    def label(self) -> str:
        if self.kind in ("primes", "prime-powers"):
            return self.kind
        return self.kind if self.include_one else f"{self.kind}-no-one"


@dataclass(frozen=True)
class _Domain:
    label: str
    values: np.ndarray      # ascending members, dtype int64
    membership: np.ndarray  # bool, indexable by value


def resolve_domain(spec: DomainSpec, table: FigurateTable) -> _Domain:
    pt = table.prime_table
    if spec.kind == "primes":
        return _Domain(spec.label, pt.primes, pt.prime_mask)
    if spec.kind == "prime-powers":
        membership = np.zeros(table.limit + 1, dtype=bool)
        marks = []
        for p in pt.primes.tolist():
            v = p
            while v <= table.limit:
                marks.append(v)
                v *= p
        membership[marks] = True
        return _Domain(spec.label, np.flatnonzero(membership).astype(np.int64), membership)
    if spec.include_one and not table.include_one:
        raise UsageError("table was generated without the value 1")
    membership = table.membership.copy()
    if spec.kind == "proper":
        membership &= ~pt.prime_mask
    if not spec.include_one:
        membership[1] = False
    return _Domain(spec.label, np.flatnonzero(membership).astype(np.int64), membership)


@dataclass
class VerificationReport:
    task: str
    params: dict
    lo: int
    hi: int
    verified: bool
    counterexamples: list[int]
    counterexample_total: int
    witness_sample: list[dict]
    stats: dict
    elapsed_ms: int = 0


@dataclass
class _ChunkResult:
    counterexamples: list[int] = field(default_factory=list)
    samples: list[tuple[int, int, int]] = field(default_factory=list)
    scanned: int = 0
    depth: int = 0
    below: int = 0


def _chunks(lo: int, hi: int) -> list[tuple[int, int]]:
    return [(s, min(s + CHUNK - 1, hi)) for s in range(lo, hi + 1, CHUNK)]


def _targets(start: int, end: int, even_only: bool) -> np.ndarray:
    n = np.arange(start, end + 1, dtype=np.int64)
    return n[n % 2 == 0] if even_only else n


def _scan_left_ascending(
    n: np.ndarray,
    left_values: list[int],
    right_membership: np.ndarray,
    sample_count: int,
) -> _ChunkResult:
    """Try left summands x in ascending order; first hit is the witness."""
    res = _ChunkResult(scanned=int(n.size))
    if n.size == 0:
        return res
    end = int(n[-1])
    witness = np.full(n.size, -1, dtype=np.int64)
    pending = int(n.size)
    scalar_from = None
    for idx, x in enumerate(left_values):
        if x >= end:
            break
        if pending <= _STRAGGLER_CUTOFF and idx >= _STRAGGLER_MIN_PASSES:
            scalar_from = idx
            break
        y = n - x
        hit = (witness < 0) & (y >= 1)
        np.logical_and(hit, right_membership[np.where(y >= 1, y, 0)], out=hit)
        if hit.any():
            witness[hit] = x
            pending -= int(hit.sum())
            res.depth = idx + 1
            if pending == 0:
                break
    if pending:
        tail = left_values[scalar_from:] if scalar_from is not None else []
        start_idx = scalar_from if scalar_from is not None else len(left_values)
        for pos in np.flatnonzero(witness < 0).tolist():
            target = int(n[pos])
            for off, x in enumerate(tail):
                if x >= target:
                    break
                if right_membership[target - x]:
                    witness[pos] = x
                    res.depth = max(res.depth, start_idx + off + 1)
                    break
            else:
                res.counterexamples.append(target)
    for pos in range(min(sample_count, int(n.size))):
        x = int(witness[pos])
        if x >= 0:
            res.samples.append((int(n[pos]), x, int(n[pos]) - x))
    return res


def _scan_right_descending(
    n: np.ndarray,
    right_values: list[int],
    left_membership: np.ndarray,
    sample_count: int,
) -> _ChunkResult:
    """Try right summands y in descending order.

    The largest workable y gives the smallest x = n - y, so witnesses agree
    exactly with the ascending-x scan; descending is worthwhile when the
    right domain is much sparser than the left.
    """
    res = _ChunkResult(scanned=int(n.size))
    if n.size == 0:
        return res
    end = int(n[-1])
    witness_y = np.full(n.size, -1, dtype=np.int64)
    pending = int(n.size)
    start = len(right_values) - 1
    while start >= 0 and right_values[start] >= end:
        start -= 1
    tried = 0
    scalar_open = None
    for idx in range(start, -1, -1):
        if pending <= _STRAGGLER_CUTOFF and tried >= _STRAGGLER_MIN_PASSES:
            scalar_open = idx
            break
        y = right_values[idx]
        x = n - y
        hit = (witness_y < 0) & (x >= 1)
        np.logical_and(hit, left_membership[np.where(x >= 1, x, 0)], out=hit)
        tried += 1
        if hit.any():
            witness_y[hit] = y
            pending -= int(hit.sum())
            res.depth = max(res.depth, tried)
            if pending == 0:
                break
    if pending:
        for pos in np.flatnonzero(witness_y < 0).tolist():
            target = int(n[pos])
            top = scalar_open if scalar_open is not None else -1
            for idx in range(top, -1, -1):
                y = right_values[idx]
                if y >= target:
                    continue
                if left_membership[target - y]:
                    witness_y[pos] = y
                    break
            else:
                res.counterexamples.append(target)
    res.counterexamples.sort()
    for pos in range(min(sample_count, int(n.size))):
        y = int(witness_y[pos])
        if y >= 0:
            res.samples.append((int(n[pos]), int(n[pos]) - y, y))
    return res


def _certificate(value: int, spec: DomainSpec, table: FigurateTable) -> dict:
    if spec.kind == "primes":
        return {"kind": "prime"}
    if spec.kind == "prime-powers":
        pp = prime_power_decompose(value)
        return {"kind": "prime-power", "p": pp.p, "a": pp.a}
    w = table.witness(value)
    return {"kind": "binomial", "p": w.p, "a": w.a, "i": w.i}


def _run_chunks(worker, chunks, jobs: int):
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(worker, chunks))
    return [worker(c) for c in chunks]


def verify_additive(
    lo: int,
    hi: int,
    left: DomainSpec,
    right: DomainSpec,
    table: FigurateTable,
    *,
    jobs: int = 1,
    even_only: bool = False,
    max_counterexamples: int = 100,
    sample_size: int = 10,
    task: str = "sum-of-two",
) -> VerificationReport:
    """Check that every n in [lo, hi] is x + y with x, y in the two domains."""
    t0 = time.perf_counter()
    if not 2 <= lo <= hi:
        raise UsageError("need 2 <= lo <= hi")
    if hi > table.limit:
        raise UsageError("table limit below scan range")
    if jobs < 1:
        raise UsageError("jobs must be >= 1")
    ldom = resolve_domain(left, table)
    rdom = resolve_domain(right, table)

    # Iterate over whichever domain is clearly sparser; both directions
    # produce the identical minimal-x witness.
    iterate_right = rdom.values.size * 4 < ldom.values.size
    if iterate_right:
        rvals = rdom.values.tolist()
        lmem = ldom.membership

        def worker(span):
            return _scan_right_descending(
                _targets(span[0], span[1], even_only),
                rvals,
                lmem,
                sample_size if span[0] == lo else 0,
            )

    else:
        lvals = ldom.values.tolist()
        rmem = rdom.membership

        def worker(span):
            return _scan_left_ascending(
                _targets(span[0], span[1], even_only),
                lvals,
                rmem,
                sample_size if span[0] == lo else 0,
            )

    results = _run_chunks(worker, _chunks(lo, hi), jobs)

    counterexamples: list[int] = []
    samples: list[dict] = []
    scanned = 0
    depth = 0
    for r in results:
        counterexamples.extend(r.counterexamples)
        scanned += r.scanned
        depth = max(depth, r.depth)
        for n, x, y in r.samples[: sample_size - len(samples)]:
            samples.append(
                {
                    "n": n,
                    "x": x,
                    "y": y,
                    "x_cert": _certificate(x, left, table),
                    "y_cert": _certificate(y, right, table),
                }
            )
    total = len(counterexamples)
    return VerificationReport(
        task=task,
        params={
            "left": ldom.label,
            "right": rdom.label,
            "even_only": even_only,
        },
        lo=lo,
        hi=hi,
        verified=total == 0,
        counterexamples=counterexamples[:max_counterexamples],
        counterexample_total=total,
        witness_sample=samples,
        stats={
            "scanned": scanned,
            "witnesses": scanned - total,
            "max_search_depth": depth,
            "mode": "right-descending" if iterate_right else "left-ascending",
        },
        elapsed_ms=int((time.perf_counter() - t0) * 1000),
    )


def verify_linear(
    a: int,
    b: int,
    lo: int,
    hi: int,
    domain: DomainSpec,
    table: FigurateTable,
    *,
    jobs: int = 1,
    max_counterexamples: int = 100,
    sample_size: int = 10,
) -> VerificationReport:
    """Check n = a*x + b*y with x, y from one domain and gcd(a, b) = 1.

    Witnesses take the minimal x.  Targets below a + b cannot possibly be
    represented with x, y >= 1 and are counted separately, not as
    counterexamples.  The stats compare the largest failure against the
    (a-1)(b-1) threshold classically tied to coprime coefficient pairs.
    """
    t0 = time.perf_counter()
    if a < 1 or b < 1 or gcd(a, b) != 1:
        raise UsageError("need a, b >= 1 with gcd(a, b) = 1")
    if not 1 <= lo <= hi:
        raise UsageError("need 1 <= lo <= hi")
    if hi > table.limit:
        raise UsageError("table limit below scan range")
    dom = resolve_domain(domain, table)
    mem = dom.membership
    inv_a = pow(a, -1, b) if b > 1 else 0
    by_residue: list[list[int]] = [[] for _ in range(b)]
    for x in dom.values.tolist():
        by_residue[x % b].append(x)

    def worker(span):
        res = _ChunkResult()
        below = 0
        for n in range(span[0], span[1] + 1):
            if n < a + b:
                below += 1
                continue
            res.scanned += 1
            group = by_residue[(n * inv_a) % b]
            for off, x in enumerate(group):
                if a * x + b > n:
                    res.counterexamples.append(n)
                    break
                y = (n - a * x) // b
                if mem[y]:
                    res.depth = max(res.depth, off + 1)
                    if len(res.samples) < sample_size and span[0] == lo:
                        res.samples.append((n, x, y))
                    break
            else:
                res.counterexamples.append(n)
        res.scanned += below
        res.below = below
        return res

    results = _run_chunks(worker, _chunks(lo, hi), jobs)

    counterexamples: list[int] = []
    samples: list[dict] = []
    scanned = 0
    depth = 0
    below_floor = 0
    for r in results:
        counterexamples.extend(r.counterexamples)
        scanned += r.scanned
        depth = max(depth, r.depth)
        below_floor += r.below
        for n, x, y in r.samples[: sample_size - len(samples)]:
            samples.append(
                {
                    "n": n,
                    "x": x,
                    "y": y,
                    "x_cert": _certificate(x, domain, table),
                    "y_cert": _certificate(y, domain, table),
                }
            )
    total = len(counterexamples)
    threshold = (a - 1) * (b - 1)
    largest = max(counterexamples) if counterexamples else None
    return VerificationReport(
        task="linear-combination",
        params={"a": a, "b": b, "domain": dom.label},
        lo=lo,
        hi=hi,
        verified=total == 0,
        counterexamples=counterexamples[:max_counterexamples],
        counterexample_total=total,
        witness_sample=samples,
        stats={
            "scanned": scanned,
            "witnesses": scanned - total - below_floor,
            "max_search_depth": depth,
            "below_floor": below_floor,
            "largest_exception": largest,
            "threshold": threshold,
            "largest_exception_within_threshold": (
                None if largest is None else largest <= threshold
            ),
        },
        elapsed_ms=int((time.perf_counter() - t0) * 1000),
    )
