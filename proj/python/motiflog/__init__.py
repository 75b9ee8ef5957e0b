"""Daily behavioral motif mining over mobile sensing lifelogs."""

from ._core import (
    Behavior,
    ConfigError,
    DataError,
    DayLog,
    Entity,
    EvalResult,
    Group,
    LocationEvent,
    LocationState,
    MiningConfig,
    MiningStats,
    PlantedMotif,
    PlantedOutcome,
    Profile,
    SynthSpec,
    __version__,
    apply_granularity,
    attach_location_states,
    baseline_profile,
    benchmark_once,
    build_profile,
    compare_days,
    estimate_location_states,
    evaluate_profile,
    format_date,
    format_timestamp,
    generate_dataset,
    haversine_distance,
    load_dataset,
    mine_profile,
    mine_windows,
    parse_iso8601,
    parse_record,
    profile_from_json,
    segment_distribution,
    snap_minute,
    threshold_sweep,
    to_canonical_line,
    user_feature_vector,
)

__all__ = [
    "Behavior",
    "ConfigError",
    "DataError",
    "DayLog",
    "Entity",
    "EvalResult",
    "Group",
    "LocationEvent",
    "LocationState",
    "MiningConfig",
    "MiningStats",
    "PlantedMotif",
    "PlantedOutcome",
    "Profile",
    "SynthSpec",
    "__version__",
    "apply_granularity",
    "attach_location_states",
    "baseline_profile",
    "benchmark_once",
    "build_profile",
    "compare_days",
    "estimate_location_states",
    "evaluate_profile",
    "format_date",
    "format_timestamp",
    "generate_dataset",
    "haversine_distance",
    "load_dataset",
    "mine_profile",
    "mine_windows",
    "parse_iso8601",
    "parse_record",
    "profile_from_json",
    "segment_distribution",
    "snap_minute",
    "threshold_sweep",
    "to_canonical_line",
    "user_feature_vector",
]
