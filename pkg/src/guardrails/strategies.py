"""The five guardrail selection strategies.

Each strategy is a pure function from (dataset, focal item, spec) to a
GuardrailSet; identical inputs produce byte-identical canonical JSON. Ties are
broken by ascending lexicographic item_id everywhere.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from typing import Any, Mapping, Sequence

import numpy as np

from .dataset import TimeSeriesDataset
from .errors import StrategyError
from .kmeans import DEFAULT_RESTARTS, kmeans_timeseries
from .serialize import canonical_json_bytes, content_digest, fnv1a64

STRATEGY_KINDS = (
    "random",
    "percentile_markers",
    "percentile_exemplars",
    "cluster_representatives",
    "semantic",
)

DEFAULT_PERCENTILES = (5.0, 25.0, 50.0, 75.0, 95.0)


@dataclass(frozen=True)
class ConsensusSpec:
    """Majority-vote parameters for the semantic strategy."""

    samples: int = 10
    threshold: int = 7

    def __post_init__(self) -> None:
        if not 1 <= self.threshold <= self.samples:
            raise StrategyError(
                f"consensus threshold {self.threshold} must be in [1, samples={self.samples}]"
            )

    def to_json_obj(self) -> dict[str, int]:
        return {"samples": self.samples, "threshold": self.threshold}


@dataclass(frozen=True)
class StrategySpec:
    """Which strategy to run plus its parameters."""

    kind: str
    n: int = 5
    percentiles: tuple[float, ...] = DEFAULT_PERCENTILES
    k: int | None = None
    seed: int | None = None
    consensus: ConsensusSpec = field(default_factory=ConsensusSpec)

    def __post_init__(self) -> None:
        if self.kind not in STRATEGY_KINDS:
            raise StrategyError(
                f"unknown strategy {self.kind!r}; valid kinds: {', '.join(STRATEGY_KINDS)}"
            )
        if self.n < 1:
            raise StrategyError("n must be >= 1")
        if self.k is not None and self.k < 1:
            raise StrategyError("k must be >= 1")
        object.__setattr__(self, "percentiles", tuple(float(p) for p in self.percentiles))
        for p in self.percentiles:
            if not 0.0 < p < 100.0:
                raise StrategyError(f"percentile {p} outside (0, 100)")
        if list(self.percentiles) != sorted(set(self.percentiles)):
            raise StrategyError("percentiles must be sorted ascending and pairwise distinct")

    def resolved(self, ds: TimeSeriesDataset, focal_id: str) -> "StrategySpec":
        """Fill in the derived defaults: stable seed and cluster count."""
        seed = self.seed
        if seed is None:
            seed = fnv1a64(f"{ds.dataset_id}/{focal_id}")
        k = self.k
        if self.kind == "cluster_representatives":
            if k is None:
                k = self.n
            elif k != self.n:
                raise StrategyError("cluster_representatives requires k == n")
        return replace(self, seed=seed, k=k)

    def to_json_obj(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "n": self.n,
            "percentiles": list(self.percentiles),
            "k": self.k,
            "seed": self.seed,
            "consensus": self.consensus.to_json_obj(),
        }

    @classmethod
    def from_json_obj(cls, obj: Mapping[str, Any]) -> "StrategySpec":
        consensus = obj.get("consensus") or {}
        return cls(
            kind=obj["kind"],
            n=int(obj.get("n", 5)),
            percentiles=tuple(obj.get("percentiles", DEFAULT_PERCENTILES)),
            k=obj.get("k"),
            seed=obj.get("seed"),
            consensus=ConsensusSpec(
                samples=int(consensus.get("samples", 10)),
                threshold=int(consensus.get("threshold", 7)),
            ),
        )


@dataclass(frozen=True, eq=False)
class ContextSeries:
    """One guardrail line, real or synthetic, aligned to dataset timesteps."""

    label: str
    values: np.ndarray
    is_synthetic: bool
    percentile_tag: float | None = None
    item_id: str | None = None

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def to_json_obj(self) -> dict[str, Any]:
        obj: dict[str, Any] = {
            "label": self.label,
            "values": [float(v) for v in self.values],
            "is_synthetic": self.is_synthetic,
        }
        if self.percentile_tag is not None:
            obj["percentile_tag"] = float(self.percentile_tag)
        if self.item_id is not None:
            obj["item_id"] = self.item_id
        return obj


@dataclass(frozen=True, eq=False)
class GuardrailSet:
    """Output of one strategy run: ordered context series plus provenance."""

    strategy: StrategySpec
    focal_id: str
    context: tuple[ContextSeries, ...]
    provenance: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "context", tuple(self.context))
        object.__setattr__(self, "provenance", tuple(self.provenance))
        kind = self.strategy.kind
        if kind == "percentile_markers":
            if len(self.context) != len(self.strategy.percentiles):
                raise StrategyError("marker count must equal percentile count")
            if not all(c.is_synthetic for c in self.context):
                raise StrategyError("percentile markers must be synthetic")
        else:
            if any(c.is_synthetic for c in self.context):
                raise StrategyError("exemplar context must reference real items")
            ids = [c.item_id for c in self.context]
            if len(set(ids)) != len(ids):
                raise StrategyError("exemplar item_ids must be pairwise distinct")
            if kind == "semantic":
                if not 1 <= len(self.context) <= self.strategy.n:
                    raise StrategyError("semantic context must hold between 1 and n items")
            elif len(self.context) != self.strategy.n:
                raise StrategyError(f"{kind} must produce exactly n context series")
        if self.focal_id in {c.item_id for c in self.context}:
            raise StrategyError("focal item may not appear among context entries")

    def context_ids(self) -> tuple[str, ...]:
        return tuple(c.item_id for c in self.context if c.item_id is not None)

    def to_json_obj(self) -> dict[str, Any]:
        return {
            "strategy": self.strategy.to_json_obj(),
            "focal_id": self.focal_id,
            "context": [c.to_json_obj() for c in self.context],
            "provenance": list(self.provenance),
        }

    def to_canonical_bytes(self) -> bytes:
        return canonical_json_bytes(self.to_json_obj())

    def digest(self) -> str:
        return content_digest(self.to_canonical_bytes())


# -- shared helpers ------------------------------------------------------------


def _require_complete(ds: TimeSeriesDataset) -> None:
    if ds.has_missing():
        raise StrategyError(
            f"dataset {ds.dataset_id!r} has masked cells; run validate() before strategies"
        )


def _candidate_ids(ds: TimeSeriesDataset, focal_id: str) -> list[str]:
    if focal_id not in ds:
        raise StrategyError(f"unknown focal item {focal_id!r} in dataset {ds.dataset_id!r}")
    return sorted(i for i in ds.item_ids if i != focal_id)


def _format_p(p: float) -> str:
    return f"{p:g}"


def percentile_lines(ds: TimeSeriesDataset, percentiles: Sequence[float]) -> np.ndarray:
    """(len(percentiles), n_timesteps) matrix of per-timestep percentiles.

    Linear interpolation between closest order statistics, computed over every
    item in the dataset (the focal item included).
    """
    matrix = ds.matrix()
    return np.percentile(matrix, list(percentiles), axis=0, method="linear")


# -- strategies ------------------------------------------------------------------


def random_exemplars(
    ds: TimeSeriesDataset, focal_id: str, spec: StrategySpec
) -> GuardrailSet:
    """n items sampled uniformly without replacement, fully seed-determined."""
    _require_complete(ds)
    spec = spec.resolved(ds, focal_id)
    candidates = _candidate_ids(ds, focal_id)
    if spec.n > len(candidates):
        raise StrategyError(
            f"n={spec.n} exceeds the {len(candidates)} non-focal items available"
        )
    rng = random.Random(spec.seed)
    chosen = rng.sample(candidates, spec.n)
    context = []
    provenance = []
    for i, item_id in enumerate(chosen):
        item = ds.get_item(item_id)
        context.append(
            ContextSeries(
                label=item.display_name,
                values=item.values,
                is_synthetic=False,
                item_id=item_id,
            )
        )
        provenance.append(f"uniform random draw {i + 1} of {spec.n}, seed={spec.seed}")
    return GuardrailSet(
        strategy=spec, focal_id=focal_id, context=tuple(context), provenance=tuple(provenance)
    )


def percentile_markers(
    ds: TimeSeriesDataset, spec: StrategySpec, focal_id: str = ""
) -> GuardrailSet:
    """Synthetic lines tracing dataset percentiles at each timestep."""
    _require_complete(ds)
    if len(ds.items) < 2:
        raise StrategyError("percentile markers need at least 2 items")
    spec = spec.resolved(ds, focal_id) if focal_id else spec
    lines = percentile_lines(ds, spec.percentiles)
    context = tuple(
        ContextSeries(
            label=f"p{_format_p(p)}",
            values=lines[i],
            is_synthetic=True,
            percentile_tag=p,
        )
        for i, p in enumerate(spec.percentiles)
    )
    provenance = tuple(
        f"p{_format_p(p)}: percentile {_format_p(p)} of all {len(ds.items)} items at each timestep"
        for p in spec.percentiles
    )
    return GuardrailSet(strategy=spec, focal_id=focal_id, context=context, provenance=provenance)


def percentile_exemplars(
    ds: TimeSeriesDataset, focal_id: str, spec: StrategySpec
) -> GuardrailSet:
    """The real item tracking each percentile line with minimum SSE.

    Assignments are made greedily in ascending order of SSE across all
    (item, line) pairs, so each item serves at most one line.
    """
    _require_complete(ds)
    spec = spec.resolved(ds, focal_id)
    candidates = _candidate_ids(ds, focal_id)
    if len(spec.percentiles) > len(candidates):
        raise StrategyError(
            f"{len(spec.percentiles)} percentile lines but only {len(candidates)} candidates"
        )
    lines = percentile_lines(ds, spec.percentiles)
    cand_matrix = np.vstack([ds.get_item(i).values for i in candidates])
    # sse[i, j] = sum over timesteps of (candidate i - line j)^2
    diff = cand_matrix[:, None, :] - lines[None, :, :]
    sse = np.einsum("ijt,ijt->ij", diff, diff)

    pairs = sorted(
        (float(sse[i, j]), candidates[i], j)
        for i in range(len(candidates))
        for j in range(len(spec.percentiles))
    )
    assigned: dict[int, tuple[str, float]] = {}
    used: set[str] = set()
    for cost, item_id, j in pairs:
        if j in assigned or item_id in used:
            continue
        assigned[j] = (item_id, cost)
        used.add(item_id)
        if len(assigned) == len(spec.percentiles):
            break

    context = []
    provenance = []
    for j, p in enumerate(spec.percentiles):
        item_id, cost = assigned[j]
        item = ds.get_item(item_id)
        context.append(
            ContextSeries(
                label=f"{item.display_name} (p{_format_p(p)})",
                values=item.values,
                is_synthetic=False,
                percentile_tag=p,
                item_id=item_id,
            )
        )
        provenance.append(
            f"closest to {_format_p(p)}th percentile line, SSE={cost:.6g}"
        )
    return GuardrailSet(
        strategy=spec, focal_id=focal_id, context=tuple(context), provenance=tuple(provenance)
    )


def cluster_representatives(
    ds: TimeSeriesDataset,
    focal_id: str,
    spec: StrategySpec,
    restarts: int = DEFAULT_RESTARTS,
) -> GuardrailSet:
    """The item nearest each k-means cluster centroid, focal excluded.

    Clustering runs over every item (the dataset's structure includes the
    focal), but the focal item is never eligible as a representative.
    """
    _require_complete(ds)
    spec = spec.resolved(ds, focal_id)
    _candidate_ids(ds, focal_id)  # validates focal
    if spec.n > len(ds.items) - 1:
        raise StrategyError(
            f"n={spec.n} exceeds the {len(ds.items) - 1} non-focal items available"
        )
    matrix = ds.matrix()
    ids = ds.item_ids
    row_of = {item_id: i for i, item_id in enumerate(ids)}
    k = spec.k or spec.n
    result = kmeans_timeseries(matrix, k=k, seed=spec.seed, restarts=restarts)

    context = []
    provenance = []
    selected: set[str] = set()
    for c in range(k):
        centroid = result.centroids[c]
        dists = np.sqrt(((matrix - centroid) ** 2).sum(axis=1))
        members = [
            ids[i]
            for i in np.flatnonzero(result.assignments == c)
            if ids[i] != focal_id and ids[i] not in selected
        ]
        if members:
            rep = min(members, key=lambda i: (float(dists[row_of[i]]), i))
            note = f"cluster {c} representative, distance-to-centroid="
        else:
            pool = [i for i in ids if i != focal_id and i not in selected]
            rep = min(pool, key=lambda i: (float(dists[row_of[i]]), i))
            note = f"cluster {c} had no eligible member; nearest substitute, distance-to-centroid="
        selected.add(rep)
        item = ds.get_item(rep)
        context.append(
            ContextSeries(
                label=item.display_name,
                values=item.values,
                is_synthetic=False,
                item_id=rep,
            )
        )
        provenance.append(note + f"{float(dists[row_of[rep]]):.6g}")
    return GuardrailSet(
        strategy=spec, focal_id=focal_id, context=tuple(context), provenance=tuple(provenance)
    )


# -- consensus -------------------------------------------------------------------


@dataclass(frozen=True)
class ConsensusEntry:
    entity: str
    votes: int
    mean_rank: float


@dataclass(frozen=True)
class ConsensusResult:
    """All voted entities in rank order, with the retained prefix resolved."""

    entries: tuple[ConsensusEntry, ...]
    threshold: int

    @property
    def retained(self) -> tuple[ConsensusEntry, ...]:
        return tuple(e for e in self.entries if e.votes >= self.threshold)


def consensus_filter(lists: Sequence[Sequence[str]], threshold: int) -> ConsensusResult:
    """Majority vote over candidate lists.

    An entity's vote count is the number of lists containing it (membership,
    not multiplicity); entities are ordered by votes descending, then mean
    rank within lists, then lexicographic id.
    """
    if not lists:
        raise StrategyError("consensus filter requires at least one candidate list")
    if not 1 <= threshold <= len(lists):
        raise StrategyError(f"threshold {threshold} must be in [1, {len(lists)}]")
    votes: dict[str, int] = {}
    rank_sums: dict[str, float] = {}
    for entities in lists:
        seen: set[str] = set()
        for position, entity in enumerate(entities, start=1):
            if entity in seen:
                continue
            seen.add(entity)
            votes[entity] = votes.get(entity, 0) + 1
            rank_sums[entity] = rank_sums.get(entity, 0.0) + position
    entries = tuple(
        sorted(
            (
                ConsensusEntry(entity=e, votes=v, mean_rank=rank_sums[e] / v)
                for e, v in votes.items()
            ),
            key=lambda entry: (-entry.votes, entry.mean_rank, entry.entity),
        )
    )
    return ConsensusResult(entries=entries, threshold=threshold)


def semantic_exemplars(
    ds: TimeSeriesDataset,
    focal_id: str,
    spec: StrategySpec,
    provider: Any,
) -> GuardrailSet:
    """Real-world peers of the focal item, filtered by ensemble consensus."""
    _require_complete(ds)
    spec = spec.resolved(ds, focal_id)
    _candidate_ids(ds, focal_id)  # validates focal
    m = spec.consensus.samples
    lists = provider.sample_lists(focal_id, m)
    result = consensus_filter([pl.entities for pl in lists], spec.consensus.threshold)

    present = [e for e in result.entries if e.entity in ds and e.entity != focal_id]
    retained = [e for e in present if e.votes >= spec.consensus.threshold]
    if not retained:
        raise StrategyError(
            f"no candidate for {focal_id!r} reached consensus threshold "
            f"{spec.consensus.threshold}/{m} and exists in dataset {ds.dataset_id!r}"
        )
    below = [e for e in present if e.votes < spec.consensus.threshold]
    chosen = retained[: spec.n]
    shortfall = spec.n - len(chosen)
    topped_up: set[str] = set()
    if shortfall > 0:
        for entry in below[:shortfall]:
            chosen.append(entry)
            topped_up.add(entry.entity)

    context = []
    provenance = []
    for entry in chosen:
        item = ds.get_item(entry.entity)
        context.append(
            ContextSeries(
                label=item.display_name,
                values=item.values,
                is_synthetic=False,
                item_id=entry.entity,
            )
        )
        note = f"semantic peer, votes={entry.votes}/{m}, mean rank={entry.mean_rank:.6g}"
        if entry.entity in topped_up:
            note += " (below consensus threshold; topped up)"
        provenance.append(note)
    if shortfall > 0:
        provenance.append(
            f"only {len(retained)} of n={spec.n} candidates reached threshold "
            f"{spec.consensus.threshold}/{m}; topped up {len(topped_up)} below-threshold entries"
        )
    return GuardrailSet(
        strategy=spec, focal_id=focal_id, context=tuple(context), provenance=tuple(provenance)
    )


def compute_guardrails(
    ds: TimeSeriesDataset,
    focal_id: str,
    spec: StrategySpec,
    provider: Any = None,
) -> GuardrailSet:
    """Dispatch to the strategy named by spec.kind."""
    if spec.kind == "random":
        return random_exemplars(ds, focal_id, spec)
    if spec.kind == "percentile_markers":
        return percentile_markers(ds, spec, focal_id=focal_id)
    if spec.kind == "percentile_exemplars":
        return percentile_exemplars(ds, focal_id, spec)
    if spec.kind == "cluster_representatives":
        return cluster_representatives(ds, focal_id, spec)
    if spec.kind == "semantic":
        if provider is None:
            raise StrategyError("semantic strategy requires a peer provider")
        return semantic_exemplars(ds, focal_id, spec, provider)
    raise StrategyError(f"unknown strategy {spec.kind!r}")
