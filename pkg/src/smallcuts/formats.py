"""Readers for the graph, GF(2) matrix and table input files.

Graph file::

    graph
    a b          # an edge; an optional third token names it
    c            # a lone token declares an isolated vertex

Matrix file: ``gf2 r c`` then ``r`` lines of ``c`` characters from ``{0, 1}``.
Table file: ``table n`` then one ``bitstring value`` line per subset, where
character ``i`` of the bit string is the membership of element ``i``.

Blank lines and ``#`` comments are ignored everywhere.
"""

from __future__ import annotations

from pathlib import Path
from typing import Union

from .errors import InputError
from .ground import GroundSet
from .oracles import (
    ConnectivityFn,
    Gf2Matrix,
    Graph,
    cut_rank_oracle,
    edge_cut_oracle,
    matroid_connectivity_oracle,
    table_oracle,
    vertex_cut_oracle,
)

GRAPH_FUNCS = {
    "edgecut": edge_cut_oracle,
    "cutrank": cut_rank_oracle,
    "vertexcut": vertex_cut_oracle,
}


def _lines(text: str) -> list[tuple[int, list[str]]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((lineno, line.split()))
    return out


def _read(path: Union[str, Path]) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None


def parse_graph(text: str) -> Graph:
    lines = _lines(text)
    if not lines or lines[0][1] != ["graph"]:
        raise InputError("graph file must start with a 'graph' line")
    labels: dict[str, int] = {}
    edges: list[tuple[int, int]] = []
    names: list[str] = []

    def vertex(token: str) -> int:
        if token not in labels:
            labels[token] = len(labels)
        return labels[token]

    for lineno, tokens in lines[1:]:
        if len(tokens) == 1:
            vertex(tokens[0])
            continue
        if len(tokens) not in (2, 3):
            raise InputError(f"line {lineno}: expected 'u v [label]'")
        u, v = vertex(tokens[0]), vertex(tokens[1])
        if u == v:
            raise InputError(f"line {lineno}: self-loop at {tokens[0]}")
        edges.append((u, v))
        names.append(tokens[2] if len(tokens) == 3 else f"e{len(edges) - 1}")
    return Graph(GroundSet(tuple(labels)), tuple(edges), tuple(names))


def parse_matrix(text: str) -> Gf2Matrix:
    lines = _lines(text)
    if not lines or len(lines[0][1]) != 3 or lines[0][1][0] != "gf2":
        raise InputError("matrix file must start with 'gf2 r c'")
    try:
        r, c = int(lines[0][1][1]), int(lines[0][1][2])
    except ValueError:
        raise InputError("matrix dimensions must be integers") from None
    body = lines[1:]
    if len(body) != r:
        raise InputError(f"expected {r} matrix rows, found {len(body)}")
    rows = []
    for lineno, tokens in body:
        row = "".join(tokens)
        if len(row) != c or set(row) - {"0", "1"}:
            raise InputError(f"line {lineno}: expected {c} characters from {{0,1}}")
        rows.append(sum(1 << j for j, ch in enumerate(row) if ch == "1"))
    return Gf2Matrix(r, c, tuple(rows))


def parse_table(text: str) -> ConnectivityFn:
    lines = _lines(text)
    if not lines or len(lines[0][1]) != 2 or lines[0][1][0] != "table":
        raise InputError("table file must start with 'table n'")
    try:
        n = int(lines[0][1][1])
    except ValueError:
        raise InputError("table size must be an integer") from None
    ground = GroundSet(tuple(str(i + 1) for i in range(n)))
    table: dict[int, int] = {}
    for lineno, tokens in lines[1:]:
        if len(tokens) != 2:
            raise InputError(f"line {lineno}: expected 'bitstring value'")
        word, value = tokens
        if len(word) != n or set(word) - {"0", "1"}:
            raise InputError(f"line {lineno}: bit string must have {n} characters from {{0,1}}")
        mask = sum(1 << i for i, ch in enumerate(word) if ch == "1")
        if mask in table:
            raise InputError(f"line {lineno}: subset {word} listed twice")
        try:
            table[mask] = int(value)
        except ValueError:
            raise InputError(f"line {lineno}: value must be an integer") from None
    return table_oracle(ground, table)


def load_function(
    *,
    graph: Union[str, Path, None] = None,
    func: str = "edgecut",
    matrix: Union[str, Path, None] = None,
    table: Union[str, Path, None] = None,
) -> ConnectivityFn:
    """Build the oracle named by exactly one of ``graph``, ``matrix`` or ``table``."""
    given = [p for p in (graph, matrix, table) if p is not None]
    if len(given) != 1:
        raise InputError("give exactly one of a graph, matrix or table file")
    if graph is not None:
        if func not in GRAPH_FUNCS:
            raise InputError(f"unknown graph function {func!r}; expected one of {sorted(GRAPH_FUNCS)}")
        return GRAPH_FUNCS[func](parse_graph(_read(graph)))
    if matrix is not None:
        return matroid_connectivity_oracle(parse_matrix(_read(matrix)))
    return parse_table(_read(table))
