"""3D HTML and Graphviz DOT exports for generated complexes."""

from __future__ import annotations

from math import sqrt
from pathlib import Path
from typing import Callable, Hashable, Optional

import networkx as nx

Labeler = Callable[[Hashable], str]


def _require_visual_deps():
    try:
        import plotly.graph_objects as go  # type: ignore
    except ImportError as exc:
        raise ImportError(
            "HTML export requires plotly. Install with: pip install plotly"
        ) from exc
    return go


def _label(labeler: Optional[Labeler]) -> Labeler:
    return labeler if labeler is not None else str


def complex_figure(graph: nx.Graph, title: str, labeler: Optional[Labeler] = None, kind_colors: Optional[dict] = None):
    """Spring-laid 3D figure; edges coloured by their "kind" attribute when present."""
    go = _require_visual_deps()
    if graph.number_of_nodes() == 0:
        raise ValueError("Graph is empty; nothing to draw.")
    name = _label(labeler)
    colors = kind_colors or {"farey": "#2563eb", "fin": "#f59e0b"}

    k = 3.0 / sqrt(max(graph.number_of_nodes(), 1))
    pos = nx.spring_layout(graph, dim=3, seed=42, k=k, iterations=400)
    nodes = list(graph.nodes())
    node_trace = go.Scatter3d(
        x=[pos[n][0] for n in nodes],
        y=[pos[n][1] for n in nodes],
        z=[pos[n][2] for n in nodes],
        mode="markers",
        hovertext=[name(n) for n in nodes],
        hoverinfo="text",
        marker=dict(size=5, color="#111827", opacity=0.9),
    )

    edge_traces = []
    for a, b, kind in graph.edges(data="kind"):
        x0, y0, z0 = pos[a]
        x1, y1, z1 = pos[b]
        edge_traces.append(
            go.Scatter3d(
                x=[x0, x1, None],
                y=[y0, y1, None],
                z=[z0, z1, None],
                mode="lines",
                line=dict(color=colors.get(kind, "#6b7280"), width=2),
                hoverinfo="text",
                hovertext=f"{name(a)} - {name(b)}",
                opacity=0.8,
            )
        )

    fig = go.Figure(data=edge_traces + [node_trace])
    fig.update_layout(
        margin=dict(l=0, r=0, t=30, b=0),
        showlegend=False,
        scene=dict(
            xaxis=dict(visible=False),
            yaxis=dict(visible=False),
            zaxis=dict(visible=False),
        ),
        title=title,
    )
    return fig


def write_html(graph: nx.Graph, path: Path, title: str, labeler: Optional[Labeler] = None) -> Path:
    fig = complex_figure(graph, title, labeler)
    path = Path(path)
    path.write_text(fig.to_html(include_plotlyjs="cdn", full_html=True), encoding="utf-8")
    return path


def _quote(text: str) -> str:
    return '"' + text.replace('"', '\\"') + '"'


def to_dot(graph: nx.Graph, name: str, labeler: Optional[Labeler] = None, sort_key: Optional[Callable] = None) -> str:
    """
    Undirected DOT text. Fin-kind edges are dashed, vertices marked with a
    "kind" of fin are drawn as points.
    """
    label = _label(labeler)
    key = sort_key if sort_key is not None else (lambda v: label(v))
    lines = [f"graph {name} {{"]
    for v in sorted(graph.nodes(), key=key):
        shape = "point" if graph.nodes[v].get("kind") == "fin" else "circle"
        lines.append(f"  {_quote(label(v))} [shape={shape}];")
    edges = sorted(
        (tuple(sorted((a, b), key=key)) + (kind,) for a, b, kind in graph.edges(data="kind")),
        key=lambda e: (key(e[0]), key(e[1])),
    )
    for a, b, kind in edges:
        style = "dashed" if kind == "fin" else "solid"
        lines.append(f"  {_quote(label(a))} -- {_quote(label(b))} [style={style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_dot(graph: nx.Graph, path: Path, name: str, labeler: Optional[Labeler] = None, sort_key: Optional[Callable] = None) -> Path:
    path = Path(path)
    path.write_text(to_dot(graph, name, labeler, sort_key), encoding="utf-8")
    return path
