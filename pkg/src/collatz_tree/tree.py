"""The tree of positive odd numbers rooted at 1.

Children of an inner node come from two closed forms::

    f_plus(k, n)  = k * 2**(2n+1) + (2**(2n) - 1) / 3      parent 6k + 1
    f_minus(k, n) = k * 2**(2n+2) - (2**(2n+1) + 1) / 3    parent 6k - 1

and every odd ``x`` is the image of exactly one ``(branch, k, n)``.  That
preimage is recovered from the binary form of ``x`` alone by
:func:`decompose`, which gives a parent computation that never evaluates
``3x + 1``.
"""

from __future__ import annotations

import csv
import enum
import io
import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Literal, NamedTuple

from .core import require_odd

__all__ = [
    "Branch",
    "NodeClass",
    "Decomposition",
    "TreeEdge",
    "f_plus",
    "f_minus",
    "classify",
    "boundary_bits",
    "remainder_for",
    "decompose",
    "parent",
    "children",
    "generate_tree",
    "tree_nodes",
    "export_tree",
]


class Branch(enum.Enum):
    PLUS = "plus"
    MINUS = "minus"


@dataclass(frozen=True)
class NodeClass:
    """Leaf (multiple of 3), ``6k + 1`` (plus) or ``6k - 1`` (minus)."""

    kind: Literal["leaf", "plus", "minus"]
    k: int | None = None

    @property
    def is_leaf(self) -> bool:
        return self.kind == "leaf"

    def value(self) -> int:
        if self.kind == "plus":
            return 6 * self.k + 1
        if self.kind == "minus":
            return 6 * self.k - 1
        raise ValueError("a leaf class does not determine its value")


LEAF = NodeClass("leaf")


class Decomposition(NamedTuple):
    branch: Branch
    k: int
    n: int
    b: int
    q: int
    r: int

    def value(self) -> int:
        if self.branch is Branch.PLUS:
            return f_plus(self.k, self.n)
        return f_minus(self.k, self.n)

    @property
    def parent(self) -> int:
        return 6 * self.k + 1 if self.branch is Branch.PLUS else 6 * self.k - 1

    @property
    def p(self) -> int:
        return 2 * self.n if self.branch is Branch.PLUS else 2 * self.n + 1


class TreeEdge(NamedTuple):
    """Edge ``child -> parent``; ``n`` is the sibling index, ``p`` the valuation."""

    parent: int
    child: int
    n: int
    p: int

    @property
    def branch(self) -> Branch:
        return Branch.PLUS if self.p % 2 == 0 else Branch.MINUS


def _third(numerator: int) -> int:
    q, rem = divmod(numerator, 3)
    # 4**n == 1 (mod 3), so both closed forms divide exactly.
    assert rem == 0, f"{numerator} is not divisible by 3"
    return q


def _check_int(v: int, name: str, lowest: int) -> None:
    if isinstance(v, bool) or not isinstance(v, int):
        raise TypeError(f"{name} must be an int, got {type(v).__name__}")
    if v < lowest:
        raise ValueError(f"{name} must be >= {lowest}, got {v}")


def f_plus(k: int, n: int) -> int:
    """Child number ``n`` (n >= 1) of the inner node ``6k + 1``."""
    _check_int(k, "k", 0)
    _check_int(n, "n", 1)
    return (k << (2 * n + 1)) + _third((1 << (2 * n)) - 1)


def f_minus(k: int, n: int) -> int:
    """Child number ``n`` (n >= 0) of the inner node ``6k - 1`` (k >= 1)."""
    _check_int(k, "k", 1)
    _check_int(n, "n", 0)
    return (k << (2 * n + 2)) - _third((1 << (2 * n + 1)) + 1)


def classify(x: int) -> NodeClass:
    require_odd(x)
    residue = x % 6
    if residue == 3:
        return LEAF
    if residue == 1:
        return NodeClass("plus", (x - 1) // 6)
    return NodeClass("minus", (x + 1) // 6)


def boundary_bits(x: int) -> int:
    """Bits from the low end up to and including the first equal adjacent pair.

    Bits above the most significant one count as zeros, so purely
    alternating values such as 5 = 0b101 stop at the first leading zero
    pair: ``boundary_bits(5) == 5``.
    """
    require_odd(x)
    # Bit j of ``alt`` is set where bits j and j+1 of x differ; the run of
    # trailing ones in ``alt`` is the alternating prefix.
    alt = x ^ (x >> 1)
    trailing_ones = (alt ^ (alt + 1)).bit_length() - 1
    return trailing_ones + 2


def remainder_for(b: int) -> int:
    """The only possible value of ``x mod 2**b`` when ``boundary_bits(x) == b``."""
    _check_int(b, "b", 2)
    if b % 2 == 0:
        return (1 << b) - _third((1 << (b - 1)) + 1)
    return _third((1 << (b - 1)) - 1)


def decompose(x: int) -> Decomposition:
    """Find the unique ``(branch, k, n)`` with ``f_branch(k, n) == x``.

    >>> decompose(13)
    Decomposition(branch=<Branch.MINUS: 'minus'>, k=1, n=1, b=4, q=0, r=13)
    """
    b = boundary_bits(x)
    q = x >> b
    r = x & ((1 << b) - 1)
    assert r == remainder_for(b), (x, b, r)
    if b % 2 == 0:
        return Decomposition(Branch.MINUS, q + 1, (b - 2) // 2, b, q, r)
    return Decomposition(Branch.PLUS, q, (b - 1) // 2, b, q, r)


def parent(x: int) -> TreeEdge:
    """Parent edge of ``x`` derived from its bit pattern.

    For ``x = 1`` this is the self-loop of the root.
    """
    d = decompose(x)
    return TreeEdge(d.parent, x, d.n, d.p)


def children(x: int, value_bound: int) -> list[TreeEdge]:
    """Children of ``x`` not exceeding ``value_bound``, by sibling index.

    Leaves have none.  The self-child ``f_plus(0, 1) == 1`` of the root is
    skipped so that the tree stays acyclic.
    """
    cls = classify(x)
    _check_int(value_bound, "value_bound", 1)
    if cls.is_leaf:
        return []
    if cls.kind == "plus":
        gen, n, base_p = f_plus, 1, 0
    else:
        gen, n, base_p = f_minus, 0, 1
    out = []
    while True:
        c = gen(cls.k, n)
        if c > value_bound:
            break
        if c != x:
            out.append(TreeEdge(x, c, n, 2 * n + base_p))
        n += 1
    return out


def generate_tree(value_bound: int, depth_bound: int | None = None) -> list[TreeEdge]:
    """Breadth-first edge list of the tree from root 1.

    Only nodes ``<= value_bound`` are produced; ``depth_bound`` limits the
    number of edge levels (``None`` means unbounded).  Edges are ordered by
    level and then by child value.
    """
    _check_int(value_bound, "value_bound", 1)
    if depth_bound is not None:
        _check_int(depth_bound, "depth_bound", 0)
    edges: list[tuple[int, TreeEdge]] = []
    queue = deque([(1, 0)])
    while queue:
        node, depth = queue.popleft()
        if depth_bound is not None and depth >= depth_bound:
            continue
        for edge in children(node, value_bound):
            edges.append((depth + 1, edge))
            queue.append((edge.child, depth + 1))
    edges.sort(key=lambda item: (item[0], item[1].child))
    return [e for _, e in edges]


def tree_nodes(edges: Iterable[TreeEdge]) -> set[int]:
    """Node values of a tree built by :func:`generate_tree`, root included."""
    nodes = {1}
    for e in edges:
        nodes.add(e.parent)
        nodes.add(e.child)
    return nodes


_DOT_SHAPES = {"leaf": "oval", "plus": "triangle", "minus": "rectangle"}


def _edge_nodes(edges: list[TreeEdge]) -> list[int]:
    return sorted({v for e in edges for v in (e.parent, e.child)})


def _export_dot(edges: list[TreeEdge]) -> str:
    lines = ["digraph collatz_tree {", "  rankdir=BT;"]
    for v in _edge_nodes(edges):
        lines.append(f'  n{v} [label="{v}", shape={_DOT_SHAPES[classify(v).kind]}];')
    for e in sorted(edges, key=lambda e: e.child):
        lines.append(f'  n{e.child} -> n{e.parent} [label="{e.p}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _export_json(edges: list[TreeEdge]) -> str:
    nodes = []
    for v in _edge_nodes(edges):
        cls = classify(v)
        nodes.append({"value": v, "class": cls.kind, "k": cls.k})
    doc = {
        "nodes": nodes,
        "edges": [
            {"parent": e.parent, "child": e.child, "n": e.n, "p": e.p}
            for e in sorted(edges, key=lambda e: e.child)
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def _export_csv(edges: list[TreeEdge]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["parent", "child", "n", "p"])
    for e in sorted(edges, key=lambda e: e.child):
        writer.writerow([e.parent, e.child, e.n, e.p])
    return buf.getvalue()


_EXPORTERS = {"dot": _export_dot, "json": _export_json, "csv": _export_csv}
EXPORT_FORMATS = tuple(_EXPORTERS)


def export_tree(edges: Iterable[TreeEdge], format: str = "dot") -> str:
    """Serialize an edge list as Graphviz DOT, JSON or CSV text."""
    try:
        exporter = _EXPORTERS[format.lower()]
    except KeyError:
        raise ValueError(
            f"unknown format {format!r}; expected one of {', '.join(EXPORT_FORMATS)}"
        ) from None
    return exporter(list(edges))
