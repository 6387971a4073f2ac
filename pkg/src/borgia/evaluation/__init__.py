from .metrics import ari, modularity, modularity_density, nmi  # noqa
from .partition import Partition, load_partition, save_partition  # noqa
from .report import MetricReport, evaluate_partition  # noqa
