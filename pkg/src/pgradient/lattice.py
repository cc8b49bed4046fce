"""Breadth-first enumeration of the normal subgroups of p-power index.

Every normal subgroup of index p^(k+1) sits inside a normal subgroup of index
p^k with quotient of order p (a chief series of a finite p-group has factors
of order p).  So level k+1 is obtained from level k by cutting each node H
along the hyperplanes of V = H/[H,H]H^p that are stable under conjugation by G.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .cosets import CosetTable, descend, is_normal, key_hash, whole_group
from .fp_linalg import check_prime, invariant_hyperplanes
from .schreier import functional_edge_values, mod_p_data, schreier_data
from .words import Presentation

DEFAULT_NODE_BUDGET = 50_000
MAX_DEPTH = 64
# dense F_p elimination on a subgroup of index n costs O(n^2) memory
DEFAULT_MAX_INDEX = 4096


def default_node_budget() -> int:
    env = os.environ.get("PG_NODE_BUDGET")
    return int(env) if env else DEFAULT_NODE_BUDGET


@dataclass(eq=False)
class LatticeNode:
    table: CosetTable
    key: bytes
    level: int
    dp_value: int = -1
    parent_keys: set = field(default_factory=set)

    @property
    def index(self) -> int:
        return self.table.n_cosets

    @property
    def key_hash(self) -> str:
        return key_hash(self.key)


@dataclass(eq=False)
class Lattice:
    presentation: Presentation
    p: int
    depth: int
    levels: list
    saturated: bool
    truncated: bool = False

    def nodes(self):
        for level in self.levels:
            yield from level

    def sizes(self) -> list[int]:
        return [len(level) for level in self.levels]

    def find(self, key: bytes) -> LatticeNode:
        for node in self.nodes():
            if node.key == key:
                return node
        raise KeyError(key_hash(key))

    def dump(self) -> str:
        return "".join(f"{n.level} {n.index} {n.key_hash} {n.dp_value}\n" for n in self.nodes())


def _children_tables(table: CosetTable, p: int, expand: bool):
    """d_p of the subgroup of ``table`` and, if ``expand``, its children's standardized tables."""
    sd = schreier_data(table)
    mpd = mod_p_data(sd, p, with_action=expand)
    if not expand or mpd.dim == 0:
        return mpd.dim, []
    out = []
    for lam in invariant_hyperplanes(mpd.dim, p, mpd.action):
        vals = functional_edge_values(sd, mpd, lam)
        child = descend(table, p, lambda c, g: int(vals[c, g]))
        out.append(child)
    return mpd.dim, out


def children(node: LatticeNode, p: int) -> list[LatticeNode]:
    """Index-p subgroups of the node that are normal in G, one per invariant hyperplane."""
    dim, tables = _children_tables(node.table, p, True)
    node.dp_value = dim
    kids = {}
    for t in tables:
        k = t.key()
        if k not in kids:
            kids[k] = LatticeNode(t, k, node.level + 1, parent_keys={node.key})
    for kid in kids.values():
        kid.dp_value = _children_tables(kid.table, p, False)[0]
    return [kids[k] for k in sorted(kids)]


def _work(args):
    P, action, p, expand = args
    dim, tables = _children_tables(CosetTable(P, action), p, expand)
    return dim, [t.action for t in tables]


def enumerate_lattice(P: Presentation, p: int, depth: int, node_budget: int | None = None,
                      threads: int = 1, max_index: int = DEFAULT_MAX_INDEX) -> Lattice:
    """All normal subgroups of index p^k, k <= depth, grouped by level and sorted by key.

    Levels whose index would exceed ``max_index`` are not built; the result
    is then marked truncated if there was anything left to expand.
    """
    check_prime(p)
    if depth < 0:
        raise ValueError("depth must be >= 0")
    if node_budget is None:
        node_budget = default_node_budget()
    if node_budget < 1 or max_index < 1:
        raise ValueError("budgets must be positive")
    root = whole_group(P)
    levels = [[LatticeNode(root, root.key(), 0)]]
    total = 1
    truncated = False
    pool = ProcessPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        for k in range(depth + 1):
            level = levels[k]
            expand = k < depth and not truncated
            over = expand and p ** (k + 1) > max_index
            expand = expand and not over
            jobs = [(P, n.table.action, p, expand) for n in level]
            if pool is not None and len(jobs) > 1:
                results = list(pool.map(_work, jobs, chunksize=max(1, len(jobs) // (4 * threads))))
            else:
                results = [_work(j) for j in jobs]
            nxt = {}
            for node, (dim, child_actions) in zip(level, results):
                node.dp_value = dim
                for a in child_actions:
                    t = CosetTable(P, a)
                    key = t.key()
                    if key in nxt:
                        nxt[key].parent_keys.add(node.key)
                    elif total < node_budget:
                        nxt[key] = LatticeNode(t, key, k + 1, parent_keys={node.key})
                        total += 1
                    else:
                        truncated = True
            if over and any(n.dp_value > 0 for n in level):
                truncated = True
            if not expand:
                break
            if not nxt:
                break
            levels.append([nxt[key] for key in sorted(nxt)])
    finally:
        if pool is not None:
            pool.shutdown()
    saturated = not truncated and all(n.dp_value == 0 for n in levels[-1])
    return Lattice(P, p, depth, levels, saturated, truncated)


def check_node(node: LatticeNode, p: int) -> None:
    from .cosets import check_table
    from .errors import IntegrityError

    check_table(node.table)
    if not is_normal(node.table):
        raise IntegrityError("lattice node is not normal")
    if node.table.n_cosets != p ** node.level:
        raise IntegrityError("lattice node index is not p^level")
