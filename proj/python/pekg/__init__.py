# SPDX-License-Identifier: Apache-2.0
# Copyright 2026 The pekg Authors
"""Power equipment knowledge graph: build from records and station topology, then query."""

from ._pekg import (
    Graph,
    HmmParams,
    Lexicon,
    PekgError,
    build,
    extract,
    normalize,
    segment,
    split_graphemes,
    split_sentences,
)

__all__ = [
    "Graph",
    "HmmParams",
    "Lexicon",
    "PekgError",
    "build",
    "extract",
    "normalize",
    "segment",
    "split_graphemes",
    "split_sentences",
]
