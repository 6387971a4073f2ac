"""Affinity specification data structure."""

from __future__ import annotations

from typing import Any, Optional

from pydantic import BaseModel, root_validator, validator

# maximum number of nested base affinities
MAX_BASE_DEPTH = 2


class AffinitySpec(BaseModel):
    """Contains the information needed to compute an affinity matrix.

    Attributes:
        kind: name or alias of the affinity function.
        alpha: weight of the best friend affinity, only for the combined affinity.
        base: affinity to build upon, for the functions accepting one.
    """

    kind: str
    alpha: Optional[float] = None
    base: Optional[AffinitySpec] = None

    @validator("alpha")
    def check_alpha_range(cls, alpha: Optional[float]) -> Optional[float]:
        """Validates the combination weight.

        Args:
            alpha: weight of the best friend affinity.

        Raises:
            ValueError: alpha outside [0, 1].

        Returns:
            the validated weight.
        """
        if alpha is not None and not 0.0 <= alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], obtained {alpha}.")
        return alpha

    @root_validator(skip_on_failure=True)
    def check_base_depth(cls, values: Any) -> Any:
        """Validates the nesting of base affinities.

        Args:
            values: values of the affinity specification.

        Raises:
            ValueError: more than MAX_BASE_DEPTH nested base affinities.

        Returns:
            values of the affinity specification.
        """
        base = values.get("base")
        if base is not None and base.depth() + 1 > MAX_BASE_DEPTH:
            raise ValueError(
                f"Affinity specifications admit at most {MAX_BASE_DEPTH} nested base affinities."
            )
        return values

    def depth(self) -> int:
        """Counts the nested base affinities.

        Returns:
            0 without base, otherwise one more than the depth of the base.
        """
        return 0 if self.base is None else self.base.depth() + 1

    def __hash__(self) -> int:
        """Fetches the hash value of the affinity specification.

        Returns:
            hash value of the affinity specification.
        """
        return hash(self.json())


AffinitySpec.update_forward_refs()
