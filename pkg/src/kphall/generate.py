"""Seeded instance generators.

All randomness comes from a counter-based stream: every decision hashes the
64-bit seed together with a fixed path of counters, so values never depend
on evaluation order and equal (params, seed) always produce byte-identical
instances.

Two modes:

* ``gen_random``: every possible edge (one vertex per part) is included
  independently with a fixed probability.
* ``gen_planted_unique``: prefix traces are the diagonal plus extra tuples
  whose first coordinate is minimal ("staircase"), which forces the prefix
  perfect matching to be unique; each trace is then attached to one or more
  last-part vertices.  The output is re-checked by enumeration anyway.
"""

from __future__ import annotations

import hashlib
import itertools
import struct
from dataclasses import dataclass
from string import ascii_lowercase

from .errors import RetryExhaustedError
from .hypergraph import KPartiteHypergraph, build_hypergraph, prefix_subhypergraph
from .matching import enumerate_perfect_matchings

__all__ = [
    "GeneratorParams",
    "gen_random",
    "gen_planted_unique",
    "unit_float",
    "randbelow",
    "derive_seed",
]

_MASK64 = (1 << 64) - 1
_PLANTED_RETRIES = 100


def _digest(seed: int, *path: int | str) -> bytes:
    hasher = hashlib.sha256()
    hasher.update(struct.pack(">Q", seed & _MASK64))
    for item in path:
        if isinstance(item, str):
            data = item.encode("utf-8")
            hasher.update(b"s")
            hasher.update(struct.pack(">I", len(data)))
            hasher.update(data)
        else:
            hasher.update(b"i")
            hasher.update(struct.pack(">q", item))
    return hasher.digest()


def unit_float(seed: int, *path: int | str) -> float:
    """Deterministic value in [0, 1) keyed by (seed, path)."""
    value = int.from_bytes(_digest(seed, *path)[:8], "big")
    return value / float(1 << 64)


def randbelow(seed: int, n: int, *path: int | str) -> int:
    """Deterministic integer in [0, n) keyed by (seed, path)."""
    if n <= 0:
        raise ValueError("n must be positive")
    return int(unit_float(seed, *path) * n)


def derive_seed(seed: int, *path: int | str) -> int:
    """Derive an independent 64-bit sub-seed."""
    return int.from_bytes(_digest(seed, "derive", *path)[:8], "big")


@dataclass(frozen=True)
class GeneratorParams:
    """Shape and density knobs; the mode is picked by the function called."""

    k: int
    part_sizes: tuple[int, ...]
    edge_probability: float | None = None
    trace_density: float | None = None
    attachments_per_trace: int | None = None

    def _check_shape(self) -> None:
        if self.k < 2:
            raise ValueError("k must be >= 2")
        if len(self.part_sizes) != self.k:
            raise ValueError(
                f"part_sizes has {len(self.part_sizes)} entries, expected {self.k}"
            )
        if any(s < 1 for s in self.part_sizes):
            raise ValueError("part sizes must be positive")


def _part_labels(k: int, sizes: tuple[int, ...]) -> list[list[str]]:
    labels = []
    for i, size in enumerate(sizes):
        prefix = ascii_lowercase[i] if k <= len(ascii_lowercase) else f"p{i:02d}_"
        width = len(str(size))
        labels.append([f"{prefix}{j + 1:0{width}d}" for j in range(size)])
    return labels


def gen_random(params: GeneratorParams, seed: int) -> KPartiteHypergraph:
    """Independent-edge random instance; lenient, so isolated vertices warn.

    Possible edges are ranked lexicographically and each gets its own
    counter, so the instance is a pure function of (params, seed).
    """
    params._check_shape()
    p = params.edge_probability
    if p is None or not 0.0 <= p <= 1.0:
        raise ValueError("edge_probability must be in [0, 1]")

    labels = _part_labels(params.k, params.part_sizes)
    edges = []
    ranges = [range(s) for s in params.part_sizes]
    for rank, combo in enumerate(itertools.product(*ranges)):
        if unit_float(seed, "edge", rank) < p:
            edges.append([labels[i][j] for i, j in enumerate(combo)])
    metadata = {
        "generator": {
            "mode": "random",
            "seed": seed,
            "k": params.k,
            "part_sizes": list(params.part_sizes),
            "edge_probability": p,
        }
    }
    return build_hypergraph(labels, edges, strict=False, metadata=metadata)


def _staircase_tuples(t: int, coords: int) -> list[tuple[int, ...]]:
    # first coordinate <= every other coordinate
    return [
        tup
        for tup in itertools.product(range(t), repeat=coords)
        if all(tup[0] <= c for c in tup[1:])
    ]


def gen_planted_unique(params: GeneratorParams, seed: int) -> KPartiteHypergraph:
    """Instance whose prefix subhypergraph has exactly one perfect matching.

    The prefix traces are the diagonal plus a density-controlled sample of
    staircase tuples (first coordinate minimal).  Uniqueness follows by
    induction on the largest unused index, but the construction is not
    trusted: every candidate is verified with the enumerator and resampled
    on failure.  Exhausting the retries indicates a bug, not bad luck.
    """
    params._check_shape()
    density = 0.4 if params.trace_density is None else params.trace_density
    if not 0.0 <= density <= 1.0:
        raise ValueError("trace_density must be in [0, 1]")
    attachments = (
        2 if params.attachments_per_trace is None else params.attachments_per_trace
    )
    if attachments < 1:
        raise ValueError("attachments_per_trace must be >= 1")

    prefix_sizes = set(params.part_sizes[:-1])
    if len(prefix_sizes) != 1:
        raise ValueError(
            f"prefix part sizes must all be equal, got {params.part_sizes[:-1]}"
        )
    t = params.part_sizes[0]
    last_size = params.part_sizes[-1]
    coords = params.k - 1
    labels = _part_labels(params.k, params.part_sizes)
    candidates = _staircase_tuples(t, coords)

    for attempt in range(_PLANTED_RETRIES):
        traces = []
        for rank, tup in enumerate(candidates):
            diagonal = all(c == tup[0] for c in tup)
            if diagonal or unit_float(seed, "trace", attempt, rank) < density:
                traces.append(tup)

        edges = []
        max_attach = min(attachments, last_size)
        for rank, tup in enumerate(traces):
            count = 1 + randbelow(seed, max_attach, "nattach", attempt, rank)
            scored = sorted(
                range(last_size),
                key=lambda j: (unit_float(seed, "attach", attempt, rank, j), j),
            )
            for j in scored[:count]:
                edges.append(
                    [labels[i][c] for i, c in enumerate(tup)] + [labels[-1][j]]
                )

        metadata = {
            "generator": {
                "mode": "planted",
                "seed": seed,
                "k": params.k,
                "part_sizes": list(params.part_sizes),
                "trace_density": density,
                "attachments_per_trace": attachments,
                "attempt": attempt,
            }
        }
        h = build_hypergraph(labels, edges, strict=False, metadata=metadata)
        found = enumerate_perfect_matchings(prefix_subhypergraph(h), limit=2)
        if len(found) == 1:
            return h

    raise RetryExhaustedError(
        f"no unique-prefix instance after {_PLANTED_RETRIES} attempts; "
        "the staircase construction should never fail"
    )
