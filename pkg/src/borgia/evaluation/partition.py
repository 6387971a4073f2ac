"""Community partitions of a set of actors."""

from __future__ import annotations

import csv
import io
import os
from typing import Any, Dict, Hashable, List, Sequence

from pydantic import BaseModel, root_validator

from ..errors import ActorMismatchError, GraphFormatError
from ..graph.io import Sink, Source, read_text, write_text

PARTITION_HEADER = ("actor_label", "community_id")


class Partition(BaseModel):
    """Assignment of every actor to exactly one community.

    Attributes:
        labels: actor names, in actor index order.
        assignment: community id of every actor, contiguous from 0.
    """

    labels: List[str]
    assignment: List[int]

    @root_validator(skip_on_failure=True)
    def check_assignment(cls, values: Any) -> Any:
        """Validates the assignment against the actors.

        Args:
            values: values of the partition.

        Raises:
            ValueError: assignment not covering the actors, or non contiguous ids.

        Returns:
            values of the partition.
        """
        labels, assignment = values.get("labels"), values.get("assignment")
        if len(labels) != len(assignment):
            raise ValueError(
                f"{len(assignment)} assignments given for {len(labels)} actors."
            )
        if len(set(labels)) != len(labels):
            raise ValueError("Partition actors must be unique.")
        if assignment and set(assignment) != set(range(max(assignment) + 1)):
            raise ValueError("Community ids must be contiguous from 0.")
        return values

    @classmethod
    def from_labels(
        cls, labels: Sequence[str], communities: Sequence[Hashable]
    ) -> Partition:
        """Builds a partition from arbitrary community names.

        Ids are assigned by first appearance.

        Args:
            labels: actor names.
            communities: community name of every actor.

        Returns:
            the partition.
        """
        ids: Dict[Hashable, int] = {}
        assignment = [ids.setdefault(community, len(ids)) for community in communities]
        return cls(labels=list(labels), assignment=assignment)

    @classmethod
    def from_communities(
        cls, labels: Sequence[str], communities: Sequence[Sequence[int]]
    ) -> Partition:
        """Builds a partition from member lists of actor indices.

        Args:
            labels: actor names.
            communities: disjoint member lists covering every actor.

        Raises:
            ValueError: overlapping or missing members.

        Returns:
            the partition, ids assigned by smallest member.
        """
        owner: Dict[int, int] = {}
        for position, members in enumerate(communities):
            for member in members:
                if member in owner:
                    raise ValueError(f"Actor {member} belongs to two communities.")
                owner[member] = position
        if set(owner) != set(range(len(labels))):
            raise ValueError("Communities must cover every actor.")
        return cls.from_labels(labels, [owner[index] for index in range(len(labels))])

    @property
    def n(self) -> int:
        """Number of actors."""
        return len(self.labels)

    @property
    def k(self) -> int:
        """Number of communities."""
        return len(set(self.assignment))

    def communities(self) -> List[List[int]]:
        """Lists the members of every community.

        Returns:
            actor indices per community id.
        """
        members: List[List[int]] = [[] for _ in range(self.k)]
        for index, community in enumerate(self.assignment):
            members[community].append(index)
        return members

    def aligned_with(self, other: Partition) -> Partition:
        """Reorders another partition's actors like this one.

        Args:
            other: partition over the same actors, in any order.

        Raises:
            ActorMismatchError: the partitions cover different actors.

        Returns:
            the other partition with this partition's actor order.
        """
        if set(self.labels) != set(other.labels) or len(self.labels) != len(other.labels):
            missing = sorted(set(self.labels) ^ set(other.labels))
            raise ActorMismatchError(
                f"Partitions cover different actors, e.g. {missing[:5]}."
            )
        if self.labels == other.labels:
            return other
        community_of = dict(zip(other.labels, other.assignment))
        return Partition.from_labels(self.labels, [community_of[label] for label in self.labels])


def format_partition_csv(partition: Partition) -> str:
    """Formats a partition as `actor_label,community_id` CSV.

    Args:
        partition: the partition.

    Returns:
        CSV text with a header row.
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(PARTITION_HEADER)
    for label, community in zip(partition.labels, partition.assignment):
        writer.writerow([label, community])
    return buffer.getvalue()


def parse_partition_csv(text: str) -> Partition:
    """Parses `actor_label,community_id` CSV; the header row is optional.

    Community ids may be any token; they are relabelled by first appearance.

    Args:
        text: CSV document.

    Raises:
        GraphFormatError: malformed rows or duplicated actors.

    Returns:
        the partition.
    """
    labels: List[str] = []
    communities: List[str] = []
    seen = set()
    for line_number, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or all(cell.strip() == "" for cell in row):
            continue
        if line_number == 1 and tuple(cell.strip() for cell in row) == PARTITION_HEADER:
            continue
        if len(row) != 2:
            raise GraphFormatError(
                f"expected 'actor_label,community_id', found {len(row)} fields",
                line=line_number,
            )
        label, community = row[0].strip(), row[1].strip()
        if label == "":
            raise GraphFormatError("empty actor label", line=line_number, field="actor_label")
        if community == "":
            raise GraphFormatError("empty community", line=line_number, field="community_id")
        if label in seen:
            raise GraphFormatError(f"duplicate actor '{label}'", line=line_number, field="actor_label")
        seen.add(label)
        labels.append(label)
        communities.append(community)
    if not labels:
        raise GraphFormatError("partition must assign at least one actor")
    return Partition.from_labels(labels, communities)


def save_partition(partition: Partition, sink: Sink) -> None:
    """Writes a partition as `actor_label,community_id` CSV.

    Args:
        partition: the partition.
        sink: path or text stream.
    """
    write_text(format_partition_csv(partition), sink)


def load_partition(source: Source) -> Partition:
    """Reads a partition written by save_partition.

    Args:
        source: path, bytes or stream.

    Returns:
        the partition.
    """
    if isinstance(source, (str, os.PathLike)) and not os.path.isfile(source):
        raise FileNotFoundError(f"Partition file {source} does not exist.")
    return parse_partition_csv(read_text(source))
