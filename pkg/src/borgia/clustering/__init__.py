from .borgia import (  # noqa
    BorgiaClustering,
    Community,
    SimulationState,
    apply_movement,
    attraction_step,
    compute_dt,
    detect_collisions,
    first_iteration_delta,
    fuse,
    initialize,
    run,
)
from .classic import (  # noqa
    ClassicGravitationalClustering,
    ParticleSystem,
    classic_run,
    classic_step,
)
from .configuration import ClassicConfig, EngineConfig  # noqa
from .dendrogram import (  # noqa
    ConfigurationScore,
    Dendrogram,
    Fusion,
    load_dendrogram,
    save_dendrogram,
    select_configuration,
)
