from .manifest import (  # noqa
    InputDescriptor,
    RunManifest,
    execute_run,
    load_manifest,
    rerun_from_manifest,
    save_manifest,
)
from .runner import ClusteringResult, cluster_graph, write_clustering_outputs  # noqa
from .sweep import (  # noqa
    ScalingRow,
    SweepGrid,
    SweepRow,
    load_sweep_grid,
    median_runtimes,
    run_scaling_sweep,
    run_sweep,
    save_sweep_grid,
)
from .tables import format_records  # noqa
