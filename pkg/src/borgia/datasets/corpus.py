"""Paragraph co-occurrence networks built from plain text corpora."""

from __future__ import annotations

import logging
import os
import re
from collections import Counter
from typing import Any, List, Literal, NamedTuple, Optional, Sequence, Set

import importlib_resources
import torch
from pydantic import BaseModel, validator

from ..errors import GraphFormatError, InvalidGraphError
from ..graph.core import DTYPE, Graph, TemporalGraph
from ..graph.io import Source, read_text

logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())

STOPWORDS_FILE = str(importlib_resources.files("borgia") / "resources" / "stopwords_en.txt")

# alphabetic runs, any script
TOKEN_PATTERN = re.compile(r"[^\W\d_]+")
PARAGRAPH_BREAK = re.compile(r"\n[ \t\r\f\v]*\n")


def load_stopwords(file_path: str = STOPWORDS_FILE) -> Set[str]:
    """Loads a stopword list, one lowercase token per line.

    Args:
        file_path: path of the list. Defaults to the bundled English list.

    Returns:
        the stopwords.
    """
    with open(file_path, "r", encoding="utf-8") as fp:
        return {line.strip().lower() for line in fp if line.strip()}


class CorpusSpec(BaseModel):
    """Contains the description of a co-occurrence network to build.

    Attributes:
        text: UTF-8 encoded corpus.
        top_n: number of most frequent tokens kept as actors.
        unit: co-occurrence window.
        slicing: byte offsets where chapters start; one graph per chapter when given.
        stopwords: tokens removed before counting, None for the bundled English list.
    """

    text: bytes
    top_n: int = 130
    unit: Literal["paragraph"] = "paragraph"
    slicing: Optional[List[int]] = None
    stopwords: Optional[Set[str]] = None

    @validator("top_n")
    def check_top_n(cls, value: int) -> int:
        if value < 2:
            raise ValueError(f"top_n must be at least 2, got {value}.")
        return value

    @validator("slicing")
    def check_slicing(cls, value: Optional[List[int]], values: Any) -> Optional[List[int]]:
        """Validates the chapter offsets.

        Args:
            value: chapter start offsets.
            values: fields validated so far.

        Raises:
            ValueError: negative, unordered or out of range offsets.

        Returns:
            the offsets, starting at 0.
        """
        if value is None:
            return value
        if not value:
            raise ValueError("slicing must list at least one offset.")
        if any(later <= earlier for earlier, later in zip(value, value[1:])):
            raise ValueError("slicing offsets must be strictly increasing.")
        size = len(values.get("text", b""))
        if value[0] < 0 or value[-1] >= max(size, 1):
            raise ValueError(f"slicing offsets must lie in [0, {size}).")
        return value if value[0] == 0 else [0] + value


class Cooccurrence(NamedTuple):
    """Co-occurrence network of a corpus and, when sliced, of its chapters."""

    graph: Graph
    temporal: Optional[TemporalGraph]


def paragraphs(text: str) -> List[str]:
    """Splits a text on blank lines, dropping empty paragraphs."""
    return [chunk for chunk in PARAGRAPH_BREAK.split(text) if chunk.strip()]


def tokenize(paragraph: str, stopwords: Set[str]) -> List[str]:
    """Lowercases a paragraph and keeps its alphabetic tokens that are not stopwords."""
    return [
        token for token in TOKEN_PATTERN.findall(paragraph.lower()) if token not in stopwords
    ]


def vocabulary(token_lists: Sequence[Sequence[str]], top_n: int) -> List[str]:
    """Ranks tokens by decreasing frequency, ties alphabetically, and keeps the first top_n."""
    counts = Counter(token for tokens in token_lists for token in tokens)
    ranked = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
    return [token for token, _ in ranked[:top_n]]


def _cooccurrence_graph(token_lists: Sequence[Sequence[str]], words: List[str]) -> Graph:
    index = {word: position for position, word in enumerate(words)}
    incidence = torch.zeros((len(token_lists), len(words)), dtype=DTYPE)
    for row, tokens in enumerate(token_lists):
        for token in set(tokens):
            if token in index:
                incidence[row, index[token]] = 1.0
    weights = incidence.T @ incidence
    weights.fill_diagonal_(0.0)
    return Graph(words, weights, directed=False)


def build_cooccurrence(spec: CorpusSpec) -> Cooccurrence:
    """Builds the paragraph co-occurrence network of a corpus.

    The weight between two words is the number of paragraphs holding both.
    Chapters, when sliced, share the vocabulary of the whole corpus.

    Args:
        spec: description of the network.

    Raises:
        InvalidGraphError: empty text or fewer than two distinct tokens left.

    Returns:
        the corpus graph and, with slicing, the per-chapter temporal graph.
    """
    stopwords = load_stopwords() if spec.stopwords is None else {s.lower() for s in spec.stopwords}
    text = spec.text.decode("utf-8", errors="replace")
    if not text.strip():
        raise InvalidGraphError("Cannot build a co-occurrence network from an empty text.")

    token_lists = [tokenize(paragraph, stopwords) for paragraph in paragraphs(text)]
    words = vocabulary(token_lists, spec.top_n)
    if len(words) < 2:
        raise InvalidGraphError(
            f"Vocabulary has {len(words)} token(s) after filtering, at least 2 are needed."
        )
    graph = _cooccurrence_graph(token_lists, words)
    logger.info(f"co-occurrence network over {len(token_lists)} paragraphs: {graph}")

    temporal = None
    if spec.slicing is not None:
        bounds = spec.slicing + [len(spec.text)]
        slices = []
        for start, end in zip(bounds, bounds[1:]):
            chapter = spec.text[start:end].decode("utf-8", errors="replace")
            chapter_tokens = [tokenize(paragraph, stopwords) for paragraph in paragraphs(chapter)]
            slices.append(_cooccurrence_graph(chapter_tokens, words))
        temporal = TemporalGraph(slices)
        logger.info(f"sliced corpus into {len(slices)} chapters")
    return Cooccurrence(graph, temporal)


def parse_slicing(text: str) -> List[int]:
    """Parses a slicing document, one chapter start byte offset per line.

    Args:
        text: slicing document; blank lines and ``#`` comments are skipped.

    Raises:
        GraphFormatError: non integer, negative or unordered offsets.

    Returns:
        the offsets.
    """
    offsets: List[int] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            offset = int(line)
        except ValueError:
            raise GraphFormatError(f"invalid offset '{line}'", line=number) from None
        if offset < 0:
            raise GraphFormatError(f"negative offset {offset}", line=number)
        if offsets and offset <= offsets[-1]:
            raise GraphFormatError(f"offset {offset} does not follow {offsets[-1]}", line=number)
        offsets.append(offset)
    return offsets


def load_slicing(source: Source) -> List[int]:
    """Loads a slicing file from a path, bytes or stream."""
    return parse_slicing(read_text(source))


def load_corpus_spec(
    corpus: Source,
    top_n: int = 130,
    slicing: Optional[Source] = None,
    stopwords: Optional[str] = None,
) -> CorpusSpec:
    """Reads a corpus and its optional slicing and stopword files.

    Args:
        corpus: path, bytes or stream holding the UTF-8 text.
        top_n: vocabulary size. Defaults to 130.
        slicing: slicing file. Defaults to None.
        stopwords: path of a stopword list, None for the bundled one. Defaults to None.

    Returns:
        the corpus specification.
    """
    if isinstance(corpus, (str, os.PathLike)):
        with open(corpus, "rb") as fp:
            raw = fp.read()
    elif isinstance(corpus, bytes):
        raw = corpus
    else:
        content = corpus.read()
        raw = content.encode("utf-8") if isinstance(content, str) else content
    return CorpusSpec(
        text=raw,
        top_n=top_n,
        slicing=None if slicing is None else load_slicing(slicing),
        stopwords=None if stopwords is None else load_stopwords(stopwords),
    )
