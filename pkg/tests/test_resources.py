"""Testing the loading/saving of internal resources."""

import os
import tempfile
from typing import Set

import importlib_resources

from borgia.affinity.aliases import (
    AffinityAliases,
    Aliases,
    load_affinity_aliases,
    save_affinity_aliases,
)
from borgia.clustering.configuration import EngineConfig
from borgia.datasets.benchmarks import BENCHMARKS_FILE, Benchmarks, load_benchmarks_registry
from borgia.datasets.corpus import STOPWORDS_FILE, load_stopwords
from borgia.pipeline.sweep import SweepGrid, load_sweep_grid, save_sweep_grid

ALIASES_FILE = str(
    importlib_resources.files("borgia") / "resources" / "affinity" / "aliases.json"
)

# aliases.json


def test_affinity_aliases_init():
    """Tests the initialization of an affinity aliases data structure."""
    tmp = {
        "name": "tmp_affinity",
        "aliases": ["tmp_1", "tmp_2"],
        "default_base": None,
        "parameters": {"alpha": 0.5},
    }

    affinity_aliases = AffinityAliases(**tmp)

    # ASSERTS

    assert isinstance(affinity_aliases.aliases, Set)
    assert affinity_aliases.name == tmp["name"]
    assert affinity_aliases.aliases == {"tmp_1", "tmp_2"}
    assert affinity_aliases.parameters == {"alpha": 0.5}


def test_load_affinity_aliases():
    """Tests the loading of the affinity aliases from the package resources."""
    aliases = load_affinity_aliases()

    # ASSERTS

    assert isinstance(aliases, Aliases)
    assert aliases.get_names() == [
        "best_friend",
        "best_common_friend",
        "friends_forever",
        "social_networking",
        "machiavelli",
        "combined",
    ]
    assert aliases.resolve("BF") == "best_friend"
    assert aliases.get_default_base("social_networking") == "best_friend"
    assert aliases.get_default_parameters("combined") == {"alpha": 0.7}


def test_load_saved_aliases():
    """Tests the loading of the saved affinity aliases."""
    with tempfile.TemporaryDirectory() as tmpdirname:
        file_path = save_affinity_aliases(load_affinity_aliases(), tmpdirname)
        saved_aliases = Aliases.parse_file(file_path)
        resource_aliases = Aliases.parse_file(ALIASES_FILE)

        # ASSERTS

        assert os.path.basename(file_path) == "aliases.json"
        for saved, resource in zip(
            saved_aliases.get_aliases_list(), resource_aliases.get_aliases_list()
        ):
            assert saved.name == resource.name
            assert saved.aliases == resource.aliases
            assert saved.default_base == resource.default_base


# benchmarks.json


def test_benchmarks_registry():
    """Tests the benchmark registry resource."""
    registry = load_benchmarks_registry()

    # ASSERTS

    assert isinstance(registry, Benchmarks)
    assert registry == Benchmarks.parse_file(BENCHMARKS_FILE)
    for info in registry.benchmarks:
        assert info.n > 0 and info.communities > 1
        assert info.source == "networkx" or info.graph_file is not None


# stopwords_en.txt


def test_stopwords():
    """Tests the bundled stopword list."""
    stopwords = load_stopwords(STOPWORDS_FILE)

    # ASSERTS

    assert len(stopwords) > 100
    assert all(word == word.lower() for word in stopwords)


# sweep_grid.json


def test_load_sweep_grid():
    """Tests the loading of the sweep grid from a file."""
    grid = load_sweep_grid("./sweep_grid.json")

    # ASSERTS

    assert isinstance(grid, SweepGrid)
    assert isinstance(grid.base, EngineConfig)
    assert grid.alphas == [0.0, 0.25, 0.5, 0.75, 1.0]
    assert len(grid.combinations()) == 25


def test_load_saved_sweep_grid():
    """Tests the loading of the saved sweep grid."""
    with tempfile.TemporaryDirectory() as tmpdirname:
        grid = load_sweep_grid("./sweep_grid.json")
        save_sweep_grid(grid, tmpdirname)
        saved_grid = load_sweep_grid(tmpdirname)

        # ASSERTS

        assert os.path.exists(os.path.join(tmpdirname, "sweep_grid.json"))
        assert saved_grid == grid
