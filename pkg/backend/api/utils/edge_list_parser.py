"""
Edge-list text parsing.

Format: one edge per line as ``label1 label2``. ``#`` starts a comment, blank
lines are ignored. Labels are any non-whitespace tokens; vertex indices are
assigned in order of first appearance.
"""

import logging

from api.errors import ParseError
from api.services.graph_core import Forest, build_forest

logger = logging.getLogger(__name__)


def strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_edge_list(text: str) -> Forest:
    """
    Parse edge-list text into a validated Forest.

    Raises:
        ParseError: a line does not hold exactly two labels, or there is no edge at all
        CycleDetected, DuplicateEdge, SelfLoop: from forest validation
    """
    index: dict[str, int] = {}
    edges: list[tuple[int, int]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = strip_comment(raw)
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError(f"Line {lineno}: expected 'label1 label2', got {raw.strip()!r}", line=lineno)
        ids = []
        for tok in tokens:
            if tok not in index:
                index[tok] = len(index)
            ids.append(index[tok])
        edges.append((ids[0], ids[1]))

    if not edges:
        raise ParseError("Edge list is empty")

    labels = sorted(index, key=index.get)
    logger.debug(f"Parsed {len(edges)} edges on {len(labels)} vertices")
    return build_forest(len(labels), edges, labels)


def format_edge_list(f: Forest) -> str:
    return "\n".join(f"{f.label(u)} {f.label(v)}" for u, v in f.edge_list) + "\n"
