"""
Canonical JSON and presentation DOT for graphs and posets, plus atomic file writes.

Graph JSON:  {"vertices": [labels], "edges": [[i, j], ...]}   (i < j, sorted)
Poset JSON:  {"elements": [labels], "leq": [[i, j], ...]}     (every related pair)

Vectors serialize as integer lists, index sets as strings like "{1,3}".
The same object always yields the same bytes.
"""

import json
import logging
import math
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, Union

import numpy as np

from src.core.graph import Graph
from src.core.order import Poset
from src.core.vspace import IndexSet

logger = logging.getLogger(__name__)


def to_jsonable(value: Any) -> Any:
    """Recursively convert labels, certificates and numpy scalars into JSON values."""
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return 'inf' if math.isinf(value) else float(value)
    if isinstance(value, IndexSet):
        return str(value)
    if hasattr(value, 'to_dict'):
        return to_jsonable(value.to_dict())
    if isinstance(value, dict):
        return {str(to_jsonable(k)) if not isinstance(k, str) else k: to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        return [to_jsonable(v) for v in value]
    return str(value)


def label_text(label: Any) -> str:
    """Compact display form: (1,0,2), {1,3}, 1."""
    if isinstance(label, tuple):
        return '(' + ','.join(label_text(x) for x in label) + ')'
    return str(label)


def graph_to_dict(graph: Graph) -> Dict[str, Any]:
    return {
        'vertices': to_jsonable(list(graph.vertices)),
        'edges': [[i, j] for i, j in graph.edge_indices()],
    }


def poset_to_dict(poset: Poset) -> Dict[str, Any]:
    return {
        'elements': to_jsonable(list(poset.elements)),
        'leq': [[int(i), int(j)] for i, j in np.argwhere(poset.leq)],
    }


def to_json(obj: Union[Graph, Poset]) -> str:
    data = graph_to_dict(obj) if isinstance(obj, Graph) else poset_to_dict(obj)
    return json.dumps(data, indent=2) + '\n'


def _quote(text: str) -> str:
    return '"' + text.replace('\\', '\\\\').replace('"', '\\"') + '"'


def graph_to_dot(graph: Graph, name: str = 'G') -> str:
    lines = [f'graph {_quote(name)} {{']
    lines += [f'  {_quote(label_text(v))};' for v in graph.vertices]
    lines += [f'  {_quote(label_text(a))} -- {_quote(label_text(b))};' for a, b in graph.edge_list()]
    lines.append('}')
    return '\n'.join(lines) + '\n'


def poset_to_dot(poset: Poset, name: str = 'P') -> str:
    """Hasse diagram, drawn bottom to top."""
    lines = [f'digraph {_quote(name)} {{', '  rankdir=BT;']
    lines += [f'  {_quote(label_text(x))};' for x in poset.elements]
    lines += [f'  {_quote(label_text(a))} -> {_quote(label_text(b))};' for a, b in poset.hasse_covers()]
    lines.append('}')
    return '\n'.join(lines) + '\n'


def render(obj: Union[Graph, Poset], fmt: str, name: str = 'G') -> str:
    if fmt == 'json':
        return to_json(obj)
    if fmt == 'dot':
        return graph_to_dot(obj, name) if isinstance(obj, Graph) else poset_to_dot(obj, name)
    raise ValueError(f"Unknown output format {fmt!r}")


def write_atomic(path: Union[str, Path], text: str) -> Path:
    """Write text to a temporary file in the target directory, then rename over path."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f'.{path.name}.', suffix='.tmp')
    try:
        with os.fdopen(fd, 'w', encoding='utf-8', newline='\n') as f:
            f.write(text)
        os.replace(tmp, path)
    except Exception:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    logger.debug(f"Wrote {path}")
    return path
