"""DOT and JSON renderings of solved games and provenance subgraphs."""

import json
import math

from .game import EdgeLabel, NodeValue, edge_label

_FILL = {NodeValue.WON: "green", NodeValue.LOST: "red", NodeValue.DRAWN: "yellow"}
_EDGE_STYLE = {
    EdgeLabel.WINNING: 'color="darkgreen", penwidth=2',
    EdgeLabel.DELAYING: 'color="red"',
    EdgeLabel.DRAWING: 'color="gold", penwidth=2',
    EdgeLabel.BAD: 'color="gray", style=dashed',
}


def node_kind(x):
    kind = getattr(x, "kind", None)
    return kind.value if kind is not None else "position"


def _display(x):
    kind = node_kind(x)
    text = str(x)
    if kind == "position":
        return text
    body = text.split(":", 1)[1]
    if kind == "neg":
        return "¬" + body
    return body


def _shape(x):
    kind = node_kind(x)
    if kind in ("rule", "fact"):
        return "shape=box"
    if kind == "goal":
        return 'shape=box, style="rounded,filled"'
    return "shape=ellipse"


def _q(s):
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _len_text(n):
    return "inf" if n == math.inf else n


def _scope(sg, gamma):
    if gamma is None:
        return sg.graph.positions, sg.graph.moves
    return gamma.nodes, tuple(gamma.edges)


def to_dot(sg, gamma=None, name="provgame"):
    """DOT text for the whole solved game, or only for ``gamma`` if given."""
    nodes, moves = _scope(sg, gamma)
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  node [style=filled, fontname="Helvetica"];']
    for x in nodes:
        lines.append(
            f"  {_q(x)} [label={_q(_display(x))}, {_shape(x)}, fillcolor={_FILL[sg.gamma[x]]}];"
        )
    for src, dst in moves:
        lab = edge_label(sg.gamma[src], sg.gamma[dst])
        lines.append(f"  {_q(src)} -> {_q(dst)} [{_EDGE_STYLE[lab]}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json_obj(sg, gamma=None):
    nodes, moves = _scope(sg, gamma)
    return {
        "nodes": [
            {
                "id": str(x),
                "kind": node_kind(x),
                "gamma": sg.gamma[x].value,
                "len": _len_text(sg.length[x]),
            }
            for x in sorted(nodes, key=str)
        ],
        "edges": [
            {"src": str(s), "dst": str(d), "label": edge_label(sg.gamma[s], sg.gamma[d]).value}
            for s, d in sorted(moves, key=lambda m: (str(m[0]), str(m[1])))
        ],
    }


def to_json(sg, gamma=None):
    return json.dumps(to_json_obj(sg, gamma), indent=2, ensure_ascii=False) + "\n"


def render_tree(gamma, sg=None):
    """Indented text view of a provenance subgraph; shared nodes are
    expanded once and referenced afterwards."""
    succ = gamma.successors()
    out = []
    seen = set()

    def line(x, depth, via):
        tag = f"{gamma.values[x].value} {_len_text(gamma.lengths.get(x, '?'))}"
        arrow = f"-{via}-> " if via else ""
        return f"{'  ' * depth}{arrow}{x} [{tag}]"

    stack = [(gamma.root, 0, None)]
    while stack:
        x, depth, via = stack.pop()
        if x in seen and succ[x]:
            out.append(line(x, depth, via) + " (see above)")
            continue
        seen.add(x)
        out.append(line(x, depth, via))
        for y in reversed(succ[x]):
            stack.append((y, depth + 1, gamma.edges[(x, y)].value))
    return "\n".join(out) + "\n"
