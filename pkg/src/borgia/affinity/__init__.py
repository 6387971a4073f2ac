from .affinity_spec import AffinitySpec  # noqa
from .controller import AffinityController  # noqa
from .core import AffinityFunction, AffinityMatrix  # noqa
from .export import save_long_form_csv, save_matrix_csv, top_affinities  # noqa
from .functions import (  # noqa
    best_common_friend,
    best_friend,
    combine,
    friends_forever,
    machiavelli,
    social_networking,
)
