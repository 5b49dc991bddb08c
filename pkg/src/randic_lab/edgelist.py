"""Plain-text edge-list reading and writing.

Format: one edge per line as two whitespace-separated tokens; blank lines and
lines starting with ``#`` are skipped. Tokens are arbitrary labels, remapped
to dense ids in order of first appearance.

A comment of the form ``# n=<N>`` marks a canonical file: when present and
every label is an integer in ``[0, N)``, labels are used as ids directly and
the graph has exactly ``N`` nodes (isolated nodes included). This is what
:func:`write_edge_list` emits, so write/parse round-trips exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .graph import Graph, GraphError, build_graph

_HEADER = re.compile(r"^#\s*n\s*=\s*(\d+)\s*$")


class EdgeListError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


@dataclass
class EdgeListDocument:
    raw_lines: list[str]
    pairs: list[tuple[int, int]]
    labels: list[str]
    declared_n: int | None = None
    comments: int = 0
    self_loops: int = 0
    duplicates: int = 0
    warnings: list[str] = field(default_factory=list)

    @property
    def remap(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def diagnostics(self) -> dict:
        return {
            "comments": self.comments,
            "self_loops_dropped": self.self_loops,
            "duplicates_collapsed": self.duplicates,
            "warnings": list(self.warnings),
        }


def parse_edge_list(text: str) -> tuple[Graph, EdgeListDocument]:
    lines = text.splitlines()
    tokens: list[tuple[str, str]] = []
    declared = None
    comments = 0
    for lineno, line in enumerate(lines, start=1):
        s = line.strip()
        if not s:
            continue
        if s.startswith("#"):
            comments += 1
            m = _HEADER.match(s)
            if m and declared is None:
                declared = int(m.group(1))
            continue
        parts = s.split()
        if len(parts) != 2:
            raise EdgeListError(f"expected 2 tokens, found {len(parts)}", lineno)
        tokens.append((parts[0], parts[1]))

    canonical = declared is not None and declared >= 1 and all(
        _is_id(a, declared) and _is_id(b, declared) for a, b in tokens
    )
    if canonical:
        labels = [str(i) for i in range(declared)]
        pairs = [(int(a), int(b)) for a, b in tokens]
    else:
        ids: dict[str, int] = {}
        for a, b in tokens:
            ids.setdefault(a, len(ids))
            ids.setdefault(b, len(ids))
        labels = list(ids)
        pairs = [(ids[a], ids[b]) for a, b in tokens]

    doc = EdgeListDocument(lines, pairs, labels, declared_n=declared, comments=comments)
    n = max(len(labels), 1)
    try:
        g = build_graph(n, pairs)
    except GraphError as exc:  # pragma: no cover - remapped ids are always in range
        raise EdgeListError(str(exc)) from exc
    doc.self_loops = g.self_loops_dropped
    doc.duplicates = g.duplicates_collapsed
    if g.num_edges == 0:
        doc.warnings.append("edge list contains no edges")
    return g, doc


def _is_id(token: str, n: int) -> bool:
    return token.isdigit() and int(token) < n


def write_edge_list(g: Graph) -> str:
    out = [f"# n={g.n}"]
    out.extend(f"{i} {j}" for i, j in g.edges())
    return "\n".join(out) + "\n"


def read_edge_list(path: str | Path) -> tuple[Graph, EdgeListDocument]:
    return parse_edge_list(Path(path).read_text(encoding="utf-8"))
