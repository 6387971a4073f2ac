"""Affinity matrices and the AffinityFunction base class."""

import logging
from typing import Any, Dict, Optional, Sequence, Tuple, Type

import torch
from torch import Tensor

from ..errors import DimensionMismatchError
from ..graph.core import DTYPE, Graph, TemporalGraph

logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())

# tolerated overshoot of the [0, 1] range due to floating point rounding
RANGE_TOLERANCE = 1e-12


class AffinityMatrix:
    """Pairwise affinities between actors.

    Entry (x, y) is the affinity of x towards y, in [0, 1]. The diagonal is
    always 0.

    Attributes:
        labels: actor names.
        values: n x n matrix of affinities.
        kind: tag of the affinity function that produced the matrix.
    """

    __slots__ = ("_labels", "_values", "_kind")

    def __init__(self, labels: Sequence[str], values: Tensor, kind: str) -> None:
        """Initializes the affinity matrix.

        Args:
            labels: actor names.
            values: square matrix of affinities.
            kind: affinity tag, e.g. "BF" or "Combined(0.7)".

        Raises:
            DimensionMismatchError: the matrix is not square or does not match the labels.
            ValueError: entries outside [0, 1].
        """
        values = torch.as_tensor(values, dtype=DTYPE).clone()
        if values.dim() != 2 or values.shape[0] != values.shape[1]:
            raise DimensionMismatchError(
                f"Expected a square affinity matrix, obtained shape {tuple(values.shape)}."
            )
        if values.shape[0] != len(labels):
            raise DimensionMismatchError(
                f"{len(labels)} labels given for a {values.shape[0]}x{values.shape[0]} affinity matrix."
            )
        if values.numel() > 0 and (
            float(values.min()) < -RANGE_TOLERANCE
            or float(values.max()) > 1 + RANGE_TOLERANCE
        ):
            raise ValueError(f"{kind} affinities must lie in [0, 1].")
        values.clamp_(0.0, 1.0)
        values.fill_diagonal_(0.0)

        self._labels = tuple(labels)
        self._values = values
        self._kind = kind

    @property
    def n(self) -> int:
        """Number of actors."""
        return len(self._labels)

    @property
    def labels(self) -> Tuple[str, ...]:
        """Actor names."""
        return self._labels

    @property
    def values(self) -> Tensor:
        """Affinity values (read-only by convention)."""
        return self._values

    @property
    def kind(self) -> str:
        """Affinity tag."""
        return self._kind

    def nonzero_count(self) -> int:
        """Number of positive off-diagonal affinities."""
        return int(torch.count_nonzero(self._values))

    def density(self) -> float:
        """Fraction of ordered actor pairs with positive affinity."""
        if self.n < 2:
            return 0.0
        return self.nonzero_count() / (self.n * (self.n - 1))

    def __repr__(self) -> str:
        return f"AffinityMatrix(kind={self._kind}, n={self.n}, nonzero={self.nonzero_count()})"


def row_normalize(matrix: Tensor) -> Tensor:
    """Divides each row by its sum, leaving rows summing to zero at zero.

    Args:
        matrix: non-negative square matrix.

    Returns:
        row-normalized matrix.
    """
    totals = matrix.sum(dim=1, keepdim=True)
    safe_totals = torch.where(totals > 0, totals, torch.ones_like(totals))
    return torch.where(totals > 0, matrix / safe_totals, torch.zeros_like(matrix))


class AffinityFunction:
    """Computes one of the affinity transforms.

    Subclasses register themselves by inheritance and are looked up by `kind`.

    Attributes:
        kind: canonical name of the affinity function.
        tag: short tag stored in the produced matrices.
        personal: whether the affinity is personal (normalized by the actor's
            own connections) rather than structural.
        requires_temporal: whether a temporal graph is needed.
        accepts_base: whether the function can be computed over a previously
            computed affinity.
    """

    kind: str
    tag: str
    personal: bool = True
    requires_temporal: bool = False
    accepts_base: bool = False

    def __init__(self, parameters: Dict[str, Any] = {}, **kwargs: Any) -> None:
        """Initializes the affinity function.

        Args:
            parameters: parameters of the affinity function. Defaults to {}.
        """
        self.parameters = parameters

    def compute(
        self,
        graph: Optional[Graph] = None,
        temporal: Optional[TemporalGraph] = None,
        base: Optional[AffinityMatrix] = None,
        **kwargs: Any,
    ) -> AffinityMatrix:
        """Computes the affinity matrix.

        Args:
            graph: graph of the actors. Defaults to None.
            temporal: temporal graph of the actors. Defaults to None.
            base: previously computed affinity to build upon. Defaults to None.

        Raises:
            NotImplementedError: this method must be defined in the child classes.

        Returns:
            the affinity matrix.
        """
        raise NotImplementedError(
            f"Inherit AffinityFunction to implement the '{getattr(self, 'kind', '?')}' affinity."
        )

    @staticmethod
    def registered() -> Dict[str, Type["AffinityFunction"]]:
        """Collects the available affinity functions.

        Returns:
            mapping from kind to AffinityFunction subclass.
        """
        # RECALL: subclasses are only known once their module has been imported
        return {cls.kind: cls for cls in AffinityFunction.__subclasses__()}
