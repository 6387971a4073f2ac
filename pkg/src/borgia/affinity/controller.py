"""Affinity computation controller."""

import logging
from typing import Dict, List, Optional, Union

from ..errors import ConfigurationError
from ..graph.core import Graph, TemporalGraph
from .affinity_spec import AffinitySpec
from .aliases import ALIASES_FILE, load_affinity_aliases
from .core import AffinityFunction, AffinityMatrix

# all the affinity functions must be imported to let the controller know their existence
from .functions import (  # noqa
    BestCommonFriendAffinity,
    BestFriendAffinity,
    CombinedAffinity,
    FriendsForeverAffinity,
    MachiavelliAffinity,
    SocialNetworkingAffinity,
)

logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())


class AffinityController:
    """Resolves affinity specifications into affinity matrices of one graph.

    Computed matrices are cached by specification, so chained affinities and
    repeated requests share their common bases.
    """

    def __init__(
        self,
        graph: Optional[Graph] = None,
        temporal: Optional[TemporalGraph] = None,
        aliases_file: str = ALIASES_FILE,
    ) -> None:
        """Initializes the AffinityController.

        Args:
            graph: graph of the actors. Defaults to None.
            temporal: temporal slices of the graph. Defaults to None.
            aliases_file: path of the file containing the affinity aliases. Defaults to ALIASES_FILE.

        Raises:
            ValueError: neither a graph nor temporal slices are given.
        """
        if graph is None and temporal is None:
            raise ValueError("The affinity controller requires a graph or temporal slices.")
        if graph is not None and temporal is not None and graph.labels != temporal.labels:
            raise ConfigurationError(
                "The graph and its temporal slices must share the same actors."
            )
        self.graph = graph
        self.temporal = temporal
        self.aliases = load_affinity_aliases(file_path=aliases_file)
        # RECALL: to be able to gather all AffinityFunction subclasses they must be imported
        self.functions = AffinityFunction.registered()
        self._cache: Dict[str, AffinityMatrix] = {}

    def available_kinds(self) -> List[str]:
        """Lists the affinity kinds computable with the available inputs.

        Returns:
            canonical names of the computable affinities.
        """
        return [
            name
            for name in self.aliases.get_names()
            if name in self.functions
            and (self.temporal is not None or not self.functions[name].requires_temporal)
            and (self.graph is not None or self.functions[name].requires_temporal)
        ]

    def compute(self, spec: Union[AffinitySpec, str]) -> AffinityMatrix:
        """Computes the affinity matrix described by a specification.

        Args:
            spec: affinity specification, or the bare name of an affinity kind.

        Raises:
            ConfigurationError: unknown kind, missing temporal input or unresolvable base.

        Returns:
            the requested affinity matrix.
        """
        if isinstance(spec, str):
            spec = AffinitySpec(kind=spec)
        name = self.aliases.resolve(spec.kind)
        function_class = self.functions.get(name)
        if function_class is None:
            raise ConfigurationError(f"No affinity function implements '{name}'.")

        parameters = self.aliases.get_default_parameters(name)
        if spec.alpha is not None:
            parameters["alpha"] = spec.alpha

        base_spec = spec.base
        if base_spec is None and self.aliases.get_default_base(name) is not None:
            base_spec = AffinitySpec(kind=self.aliases.get_default_base(name))
        if base_spec is not None and not function_class.accepts_base:
            raise ConfigurationError(f"The '{name}' affinity does not accept a base affinity.")

        key = f"{name}|{sorted(parameters.items())}|{base_spec.json() if base_spec else ''}"
        if key in self._cache:
            return self._cache[key]

        if function_class.requires_temporal and self.temporal is None:
            raise ConfigurationError(
                f"The '{name}' affinity requires temporal input (one graph per time slice)."
            )
        if not function_class.requires_temporal and self.graph is None:
            raise ConfigurationError(f"The '{name}' affinity requires a graph.")

        base = None
        if base_spec is not None:
            try:
                base = self.compute(base_spec)
            except ConfigurationError as error:
                raise ConfigurationError(
                    f"Cannot resolve the base affinity of '{name}': {error.message}"
                ) from error

        logger.debug(f"computing the '{name}' affinity with parameters {parameters}")
        matrix = function_class(parameters).compute(
            graph=self.graph, temporal=self.temporal, base=base
        )
        self._cache[key] = matrix
        return matrix

    def compute_all(self) -> Dict[str, AffinityMatrix]:
        """Computes every affinity available for the inputs with default parameters.

        Returns:
            mapping from canonical name to affinity matrix.
        """
        return {name: self.compute(name) for name in self.available_kinds()}
