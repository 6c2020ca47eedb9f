"""Time-series contextualization engine.

Builds analysis-ready datasets from raw CSVs and computes guardrail context —
auxiliary comparison series embedded in charts so a focal item cannot be read
in isolation — via five selection strategies, with a CLI and HTTP service on
top.
"""

__version__ = "0.1.0"

from .dataset import (  # noqa: F401
    Direction,
    ItemSeries,
    TimeSeriesDataset,
    TransformDescriptor,
    load_dataset,
    save_dataset,
)
from .errors import GuardrailError  # noqa: F401
from .evaluation import (  # noqa: F401
    FocalCriteria,
    RankJudgment,
    percentile_rank,
    performance_score,
    rank_error,
    select_focal_items,
    smoothness,
)
from .ingest import ColumnSchema, ingest_long_csv, ingest_wide_csv  # noqa: F401
from .strategies import (  # noqa: F401
    ConsensusSpec,
    ContextSeries,
    GuardrailSet,
    StrategySpec,
    cluster_representatives,
    compute_guardrails,
    consensus_filter,
    percentile_exemplars,
    percentile_markers,
    random_exemplars,
    semantic_exemplars,
)
from .transforms import (  # noqa: F401
    per_million,
    percent_change_from_start,
    replay_log,
    resample_weekly,
    window_clip,
)
from .validate import ValidationPolicy, ValidationReport, validate  # noqa: F401
