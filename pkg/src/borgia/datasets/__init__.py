from .benchmarks import (  # noqa
    BENCHMARKS_FILE,
    BenchmarkInfo,
    Benchmarks,
    LabeledDataset,
    is_available,
    load_benchmark,
    load_benchmarks_registry,
)
from .corpus import (  # noqa
    Cooccurrence,
    CorpusSpec,
    build_cooccurrence,
    load_corpus_spec,
    load_slicing,
)
from .votes import load_votes, parse_votes  # noqa
