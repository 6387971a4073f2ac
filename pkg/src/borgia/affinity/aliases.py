"""Affinity functions' aliases data structure."""

from __future__ import annotations

import json
import os
from typing import Any, Dict, List, Optional, Set

import importlib_resources
from pydantic import BaseModel, conlist

from ..errors import ConfigurationError

ALIASES_FILE = str(
    importlib_resources.files("borgia") / "resources" / "affinity" / "aliases.json"
)


class AffinityAliases(BaseModel):
    """Contains the names an affinity function can be requested with.

    Attributes:
        name: canonical name of the affinity function.
        aliases: set of alternative names, e.g. the short command line tags.
        default_base: canonical name of the base affinity used when none is given.
        parameters: default parameters of the affinity function.
    """

    name: str
    aliases: Set[str]
    default_base: Optional[str] = None
    parameters: Dict[str, Any] = {}

    def __hash__(self) -> int:
        """Fetches the hash value of the affinity aliases object.

        Returns:
            hash value of the affinity aliases object.
        """
        return hash(self.name)

    def __eq__(self, other: object) -> bool:
        """Compares two affinity aliases objects using their name attribute.

        Args:
            other: affinity aliases to be compared to.

        Returns:
            whether the two objects refer to the same affinity function.
        """
        if not isinstance(other, AffinityAliases):
            return NotImplemented
        return self.name == other.name


class Aliases(BaseModel):
    """Contains the aliases of all the affinity functions.

    Attributes:
        aliases_list: aliases of every affinity function.
        _name_dict: dictionary mapping every name and alias to the canonical name.
    """

    aliases_list: conlist(item_type=AffinityAliases, unique_items=True)  # type: ignore

    # declaring the attributes to be defined during initialization
    __slots__ = ["_name_dict"]

    def __init__(self, **data: Any) -> None:
        """Initializes the data structure."""
        super().__init__(**data)
        name_dict: Dict[str, str] = {}
        for affinity_alias in self.aliases_list:
            name_dict[affinity_alias.name.lower()] = affinity_alias.name
            for alias in affinity_alias.aliases:
                name_dict[alias.lower()] = affinity_alias.name
        object.__setattr__(self, "_name_dict", name_dict)

    def get_aliases_list(self) -> List[AffinityAliases]:
        """Gets the aliases of all the affinity functions.

        Returns:
            list of the affinity functions' aliases.
        """
        return self.aliases_list

    def get_names(self) -> List[str]:
        """Gets the canonical names of the affinity functions.

        Returns:
            canonical names in declaration order.
        """
        return [affinity_alias.name for affinity_alias in self.aliases_list]

    def resolve(self, kind: str) -> str:
        """Maps a name or alias to the canonical affinity name.

        Args:
            kind: name or alias, case insensitive.

        Raises:
            ConfigurationError: unknown affinity kind.

        Returns:
            canonical name of the affinity function.
        """
        name = self._name_dict.get(kind.lower())  # type: ignore
        if name is None:
            raise ConfigurationError(
                f"Unknown affinity kind '{kind}', available: {', '.join(self.get_names())}."
            )
        return name

    def _get(self, name: str) -> AffinityAliases:
        for affinity_alias in self.aliases_list:
            if affinity_alias.name == name:
                return affinity_alias
        raise ConfigurationError(f"Unknown affinity kind '{name}'.")

    def get_default_base(self, name: str) -> Optional[str]:
        """Gets the default base affinity of an affinity function.

        Args:
            name: canonical name of the affinity function.

        Returns:
            canonical name of the default base, None when the adjacency is used.
        """
        return self._get(name).default_base

    def get_default_parameters(self, name: str) -> Dict[str, Any]:
        """Gets the default parameters of an affinity function.

        Args:
            name: canonical name of the affinity function.

        Returns:
            default parameters.
        """
        return dict(self._get(name).parameters)


def load_affinity_aliases(file_path: str = ALIASES_FILE) -> Aliases:
    """Loads the affinity functions' aliases from a file.

    Args:
        file_path: path of the file to be parsed.

    Returns:
        affinity aliases data structure.
    """
    return Aliases.parse_file(file_path)


def save_affinity_aliases(aliases: Aliases, save_path: str) -> str:
    """Saves the affinity aliases data structure in a json file.

    Args:
        aliases: affinity aliases.
        save_path: path of the saving directory.

    Returns:
        path of the written file.
    """
    file_path = os.path.join(save_path, "aliases.json")
    with open(file_path, "w") as outfile:
        json.dump(json.loads(aliases.json()), outfile, indent=4)
    return file_path
