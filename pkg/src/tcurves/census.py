"""Census over canonical sign classes: exhaustive histograms, uniform
sampling, targeted scheme search, and support-table verification.

Work is partitioned into contiguous index ranges; each range produces a
private histogram and the merge is deterministic, so results are identical
across runs and worker counts.  Every distinct scheme code coming out of the
fast kernel is decoded once and re-verified against the reference engine on
its representative class.
"""

from __future__ import annotations

import csv
import hashlib
import json
import os
import time
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .engine import compile_surface, decode_scheme_code, eval_indices, run_census
from .patchwork import build
from .scheme import RealScheme, parse, render
from .signs import SignDistribution, canonicalize, class_count, from_index, harnack, index_of, ones
from .triangulation import CATALOG_KEYS, Triangulation, catalog

CHECKPOINT_EVERY = 1 << 24


def resolve_triangulation(spec) -> tuple[str, Triangulation]:
    if isinstance(spec, Triangulation):
        return ("custom", spec)
    if isinstance(spec, str):
        if spec in CATALOG_KEYS:
            return (spec, catalog(spec))
        if spec.startswith("honeycomb"):
            from .triangulation import honeycomb

            return (spec, honeycomb(int(spec[len("honeycomb"):])))
        raise KeyError(f"unknown triangulation key {spec!r}")
    raise TypeError(f"cannot resolve triangulation from {spec!r}")


def triangulation_checksum(t: Triangulation) -> str:
    return hashlib.sha256(t.to_json().encode()).hexdigest()[:16]


@dataclass
class Histogram:
    degree: int
    triangulation: str
    counts: dict[str, int]
    loop_hist: dict[int, int]
    total: int
    sampled: bool = False
    seed: Optional[int] = None
    elapsed: float = 0.0
    representatives: dict[str, int] = field(default_factory=dict)

    @property
    def mean_loops(self) -> float:
        weight = sum(k * v for k, v in self.loop_hist.items())
        return weight / self.total

    def sorted_rows(self) -> list[tuple[str, int]]:
        return sorted(self.counts.items(), key=lambda kv: (-kv[1], kv[0]))

    def write_csv(self, path: str) -> None:
        with open(path, "w", newline="") as f:
            w = csv.writer(f)
            w.writerow(["scheme", "count"])
            for scheme, count in self.sorted_rows():
                w.writerow([scheme, count])

    def to_json_obj(self) -> dict:
        return {
            "degree": self.degree,
            "triangulation": self.triangulation,
            "total": self.total,
            "sampled": self.sampled,
            "seed": self.seed,
            "elapsed": self.elapsed,
            "mean_loops": self.mean_loops,
            "counts": dict(self.sorted_rows()),
            "loop_hist": {str(k): v for k, v in sorted(self.loop_hist.items())},
        }

    def write_json(self, path: str) -> None:
        with open(path, "w") as f:
            json.dump(self.to_json_obj(), f, indent=1)


def _decode_and_verify(
    d: int, t: Triangulation, merged: dict[int, list]
) -> tuple[dict[str, int], dict[str, int]]:
    """Turn kernel codes into scheme strings, checking each distinct code
    against the reference engine on its representative class."""
    counts: dict[str, int] = {}
    reps: dict[str, int] = {}
    for code, (count, rep, _loops) in merged.items():
        decoded = decode_scheme_code(code, d % 2 == 1)
        reference = build(t, from_index(d, rep)).scheme
        if decoded != reference:
            raise RuntimeError(
                f"kernel/reference disagreement at class {rep}: "
                f"{render(decoded)} vs {render(reference)}"
            )
        key = render(decoded)
        assert key not in counts, "two codes decoded to one scheme"
        counts[key] = count
        reps[key] = rep
    return counts, reps


def set_jobs(jobs: Optional[int]) -> None:
    if jobs is None:
        jobs = int(os.environ.get("TCURVES_JOBS", "0")) or None
    if jobs:
        import numba

        numba.set_num_threads(max(1, jobs))


def exhaustive(
    degree: int,
    triangulation,
    jobs: Optional[int] = None,
    checkpoint_path: Optional[str] = None,
    checkpoint_every: int = CHECKPOINT_EVERY,
    batch: int = 1 << 22,
) -> Histogram:
    """One evaluation per canonical representative."""
    key, t = resolve_triangulation(triangulation)
    if t.degree != degree:
        raise ValueError(f"triangulation {key} has degree {t.degree}, not {degree}")
    set_jobs(jobs)
    comp = compile_surface(t)
    total = class_count(degree)
    checksum = triangulation_checksum(t)

    start = 0
    merged: dict[int, list] = {}
    hist = np.zeros(32, dtype=np.int64)
    if checkpoint_path and os.path.exists(checkpoint_path):
        with open(checkpoint_path) as f:
            ck = json.load(f)
        if (
            ck.get("degree") == degree
            and ck.get("triangulation") == key
            and ck.get("checksum") == checksum
        ):
            start = ck["next_index"]
            merged = {int(c): v for c, v in ck["codes"].items()}
            hist = np.array(ck["loop_hist"], dtype=np.int64)

    t0 = time.time()
    since_checkpoint = 0
    while start < total:
        stop = min(start + batch, total)
        idx = np.arange(start, stop, dtype=np.int64)
        part, phist = run_census(comp, idx)
        for code, (cnt, rep, loops) in part.items():
            ent = merged.get(code)
            if ent is None:
                merged[code] = [cnt, rep, loops]
            else:
                ent[0] += cnt
        hist[: len(phist)] += phist
        since_checkpoint += stop - start
        start = stop
        if checkpoint_path and (since_checkpoint >= checkpoint_every or start == total):
            since_checkpoint = 0
            _write_checkpoint(checkpoint_path, degree, key, checksum, start, merged, hist)

    counts, reps = _decode_and_verify(degree, t, merged)
    assert sum(counts.values()) == total
    return Histogram(
        degree=degree,
        triangulation=key,
        counts=counts,
        loop_hist={i: int(h) for i, h in enumerate(hist) if h},
        total=total,
        elapsed=time.time() - t0,
        representatives=reps,
    )


def _write_checkpoint(path, degree, key, checksum, next_index, merged, hist) -> None:
    tmp = f"{path}.tmp"
    with open(tmp, "w") as f:
        json.dump(
            {
                "version": 1,
                "degree": degree,
                "triangulation": key,
                "checksum": checksum,
                "next_index": next_index,
                "codes": {str(c): v for c, v in merged.items()},
                "loop_hist": [int(h) for h in hist],
            },
            f,
        )
    os.replace(tmp, path)


def sample(
    degree: int,
    triangulation,
    n: int,
    seed: int,
    jobs: Optional[int] = None,
) -> Histogram:
    """Histogram over n canonical representatives drawn uniformly."""
    if n < 1:
        raise ValueError("need at least one sample")
    key, t = resolve_triangulation(triangulation)
    set_jobs(jobs)
    comp = compile_surface(t)
    rng = np.random.default_rng(seed)
    idx = rng.integers(0, class_count(degree), size=n, dtype=np.int64)
    t0 = time.time()
    merged, hist = run_census(comp, idx)
    counts, reps = _decode_and_verify(degree, t, merged)
    assert sum(counts.values()) == n
    return Histogram(
        degree=degree,
        triangulation=key,
        counts=counts,
        loop_hist={i: int(h) for i, h in enumerate(hist) if h},
        total=n,
        sampled=True,
        seed=seed,
        elapsed=time.time() - t0,
        representatives=reps,
    )


@dataclass
class Realizer:
    scheme: str
    triangulation: str
    signs: str
    class_index: int


@dataclass
class SearchResult:
    degree: int
    found: dict[str, Realizer]
    missing: list[str]
    evaluations: int
    complete: bool
    elapsed: float

    def write_csv(self, path: str) -> None:
        with open(path, "w", newline="") as f:
            w = csv.writer(f)
            w.writerow(["scheme", "triangulation", "signs", "class_index"])
            for s in sorted(self.found):
                r = self.found[s]
                w.writerow([r.scheme, r.triangulation, r.signs, r.class_index])


def _seed_indices(degree: int) -> list[int]:
    """Canonical classes of the named distributions the constructions in the
    literature start from."""
    return [index_of(canonicalize(harnack(degree))), index_of(canonicalize(ones(degree)))]


def search(
    degree: int,
    targets: Sequence[RealScheme],
    triangulations: Iterable,
    budget: int = 10_000_000,
    strategy: str = "family-seeded",
    seed: int = 2024,
    jobs: Optional[int] = None,
    time_limit: Optional[float] = None,
) -> SearchResult:
    """Scan canonical classes for realizers of the target schemes.

    The family-seeded strategy starts from the Harnack and constant
    distributions and explores single-sign flips of any class that produced a
    scheme not seen before, falling back to random probing; every hit is
    re-verified through the reference engine.
    """
    if strategy not in ("family-seeded", "random", "sequential"):
        raise ValueError(f"unknown strategy {strategy!r}")
    set_jobs(jobs)
    target_set = {render(s) for s in targets}
    tris = [resolve_triangulation(spec) for spec in triangulations]
    for _, t in tris:
        if t.degree != degree:
            raise ValueError("all triangulations must match the census degree")

    found: dict[str, Realizer] = {}
    evaluations = 0
    rng = np.random.default_rng(seed)
    total = class_count(degree)
    m = total.bit_length() - 1
    t0 = time.time()

    comps = [compile_surface(t) for _, t in tris]
    seen: list[set[str]] = [set() for _ in tris]

    def out_of_time() -> bool:
        return time_limit is not None and time.time() - t0 > time_limit

    def all_found() -> bool:
        return target_set <= set(found)

    def eval_batch(ti: int, indices: np.ndarray) -> list[int]:
        """Returns the indices that produced a scheme this triangulation had
        not shown before."""
        nonlocal evaluations
        if len(indices) == 0:
            return []
        key, t = tris[ti]
        codes, _loops = eval_indices(comps[ti], indices)
        evaluations += len(indices)
        fresh = []
        for k, code in zip(indices, codes):
            scheme_str = render(decode_scheme_code(int(code), degree % 2 == 1))
            if scheme_str in seen[ti]:
                continue
            seen[ti].add(scheme_str)
            fresh.append(int(k))
            if scheme_str in target_set and scheme_str not in found:
                sigma = from_index(degree, int(k))
                verified = build(t, sigma).scheme
                if render(verified) != scheme_str:
                    raise RuntimeError("search hit failed re-verification")
                found[scheme_str] = Realizer(
                    scheme=scheme_str,
                    triangulation=key,
                    signs=sigma.to_string(),
                    class_index=int(k),
                )
        return fresh

    if strategy == "sequential":
        step = 1 << 20
        lo = 0
        while lo < min(total, budget) and not all_found() and not out_of_time():
            hi = min(lo + step, total, budget)
            for ti in range(len(tris)):
                eval_batch(ti, np.arange(lo, hi, dtype=np.int64))
                if all_found():
                    break
            lo = hi
    else:
        if strategy == "family-seeded":
            # explore single-sign flips of every class that showed a new
            # scheme, round-robin over the triangulations
            seeds = list(dict.fromkeys(_seed_indices(degree)))
            frontiers = [list(seeds) for _ in tris]
            visited = [set(seeds) for _ in tris]
            for ti in range(len(tris)):
                eval_batch(ti, np.array(seeds, dtype=np.int64))
            while (
                any(frontiers)
                and evaluations < budget
                and not all_found()
                and not out_of_time()
            ):
                for ti in range(len(tris)):
                    if not frontiers[ti]:
                        continue
                    bases = frontiers[ti][:512]
                    del frontiers[ti][:512]
                    nbrs = []
                    for base in bases:
                        for b in range(m):
                            k = base ^ (1 << b)
                            if k not in visited[ti]:
                                visited[ti].add(k)
                                nbrs.append(k)
                    fresh = eval_batch(ti, np.array(nbrs, dtype=np.int64))
                    frontiers[ti].extend(fresh)
                    if all_found() or evaluations >= budget or out_of_time():
                        break
        while evaluations < budget and not all_found() and not out_of_time():
            n = min(1 << 18, budget - evaluations)
            for ti in range(len(tris)):
                idx = rng.integers(0, total, size=n, dtype=np.int64)
                eval_batch(ti, idx)
                if all_found():
                    break

    missing = sorted(target_set - set(found))
    return SearchResult(
        degree=degree,
        found=found,
        missing=missing,
        evaluations=evaluations,
        complete=not missing,
        elapsed=time.time() - t0,
    )


@dataclass
class TableRow:
    scheme: str
    triangulation: str
    signs: str
    ok: bool
    computed: str
    error: Optional[str] = None


def verify_support_table(rows: Iterable[dict]) -> list[TableRow]:
    """Re-evaluate declared (scheme, triangulation, signs) rows through the
    reference engine."""
    out = []
    for row in rows:
        declared = row["scheme"]
        key = row["triangulation"]
        signs = row["signs"]
        try:
            _, t = resolve_triangulation(key)
            sigma = SignDistribution.from_string(t.degree, signs)
            computed = render(build(t, sigma).scheme)
            want = render(parse(declared))
            out.append(
                TableRow(declared, key, signs, computed == want, computed)
            )
        except Exception as exc:  # parse errors reported per row
            out.append(TableRow(declared, key, signs, False, "", str(exc)))
    return out


def shipped_support_rows() -> list[dict]:
    from importlib import resources

    text = resources.files("tcurves.data").joinpath("support_deg6.csv").read_text()
    return list(csv.DictReader(text.splitlines()))


def shipped_census_counts() -> dict[str, dict[str, int]]:
    """The published degree-6 exhaustive counts per triangulation."""
    from importlib import resources

    text = resources.files("tcurves.data").joinpath("census_deg6.csv").read_text()
    out: dict[str, dict[str, int]] = {"bat": {}, "moth": {}}
    for row in csv.DictReader(text.splitlines()):
        scheme = render(parse(row["scheme"]))
        for key in ("bat", "moth"):
            if int(row[key]):
                out[key][scheme] = int(row[key])
    return out
