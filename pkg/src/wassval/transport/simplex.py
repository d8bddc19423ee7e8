"""
WassVal - Transportation simplex
Primal network simplex on the bipartite transportation graph. A basis is a spanning
tree of m + n - 1 source/sink edges; duals come from the tree, the entering edge has
the most negative reduced cost, and the leaving edge closes the pivot cycle.
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..config import get_settings

logger = logging.getLogger(__name__)


@dataclass
class SimplexResult:
    """Basic edges of an optimal basis (zero-flow basic edges included)"""

    rows: np.ndarray
    cols: np.ndarray
    flows: np.ndarray
    iterations: int
    degenerate_pivots: int


def northwest_corner(supply: np.ndarray, demand: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Staircase initial basis: exactly m + n - 1 edges from (0, 0) to (m - 1, n - 1).

    On sources and sinks sorted along a line this is the monotone coupling, which is
    optimal for convex costs.
    """
    m, n = supply.size, demand.size
    size = m + n - 1
    rows = np.empty(size, dtype=np.intp)
    cols = np.empty(size, dtype=np.intp)
    flows = np.empty(size, dtype=float)
    i = j = 0
    s, d = float(supply[0]), float(demand[0])
    for k in range(size):
        x = min(s, d)
        rows[k], cols[k], flows[k] = i, j, max(x, 0.0)
        s -= x
        d -= x
        if k == size - 1:
            break
        if i < m - 1 and (j == n - 1 or s <= d):
            i += 1
            s = float(supply[i])
        else:
            j += 1
            d = float(demand[j])
    return rows, cols, flows


class _SpanningTree:
    """Rooted view of the current basis used for duals and pivot cycles"""

    def __init__(self, m: int, n: int, rows: np.ndarray, cols: np.ndarray, cost: np.ndarray):
        nodes = m + n
        adjacency: list[list[tuple[int, int]]] = [[] for _ in range(nodes)]
        for k, (i, j) in enumerate(zip(rows.tolist(), cols.tolist())):
            adjacency[i].append((m + j, k))
            adjacency[m + j].append((i, k))

        self.m = m
        self.parent = np.full(nodes, -1, dtype=np.intp)
        self.parent_edge = np.full(nodes, -1, dtype=np.intp)
        self.depth = np.zeros(nodes, dtype=np.intp)
        potential = np.zeros(nodes)
        seen = np.zeros(nodes, dtype=bool)
        seen[0] = True
        queue = deque([0])
        while queue:
            a = queue.popleft()
            for b, k in adjacency[a]:
                if seen[b]:
                    continue
                seen[b] = True
                self.parent[b] = a
                self.parent_edge[b] = k
                self.depth[b] = self.depth[a] + 1
                potential[b] = cost[rows[k], cols[k]] - potential[a]
                queue.append(b)
        if not seen.all():
            raise RuntimeError("transportation basis is not a spanning tree")
        self.u = potential[:m]
        self.v = potential[m:]

    def cycle(self, i: int, j: int) -> list[int]:
        """
        Tree edges on the cycle closed by the non-basic edge (i, j).

        Ordered from sink j back to source i, so even positions lose flow and odd
        positions gain flow when (i, j) enters.
        """
        a, b = i, self.m + j
        from_a: list[int] = []
        from_b: list[int] = []
        while self.depth[a] > self.depth[b]:
            from_a.append(int(self.parent_edge[a]))
            a = self.parent[a]
        while self.depth[b] > self.depth[a]:
            from_b.append(int(self.parent_edge[b]))
            b = self.parent[b]
        while a != b:
            from_a.append(int(self.parent_edge[a]))
            a = self.parent[a]
            from_b.append(int(self.parent_edge[b]))
            b = self.parent[b]
        return from_b + from_a[::-1]


def solve_transportation(
    cost: np.ndarray,
    supply: np.ndarray,
    demand: np.ndarray,
    tol: Optional[float] = None,
    degenerate_pivot_limit: Optional[int] = None,
    max_iterations: Optional[int] = None,
) -> SimplexResult:
    """
    Solve the balanced transportation LP min <cost, flow> with row sums `supply` and
    column sums `demand`.

    Costs are scaled by their maximum before pricing. Entering edges follow Dantzig's
    rule (ties to the lowest column-major edge index j*m + i); after
    `degenerate_pivot_limit` consecutive degenerate pivots pricing switches to Bland's
    rule until the next non-degenerate pivot, so every degenerate run longer than the
    limit is resolved by Bland's rule; a limit of 0 prices every pivot with Bland.
    The leaving edge is the decreasing cycle edge with the least flow, ties again to
    the lowest edge index.

    Args:
        cost: (m, n) nonnegative cost matrix
        supply: m positive masses
        demand: n positive masses with the same total

    Returns:
        SimplexResult with the m + n - 1 basic edges
    """
    settings = get_settings()
    tol = settings.reduced_cost_tol if tol is None else tol
    limit = settings.degenerate_pivot_limit if degenerate_pivot_limit is None else degenerate_pivot_limit

    cost = np.asarray(cost, dtype=float)
    m, n = cost.shape
    if supply.size != m or demand.size != n:
        raise ValueError(f"cost shape {cost.shape} does not match {supply.size} sources and {demand.size} sinks")
    if max_iterations is None:
        max_iterations = max(1000, 50 * (m + n) ** 2)

    scale = float(cost.max()) if cost.size else 0.0
    scaled = cost / scale if scale > 0 else np.zeros_like(cost)

    rows, cols, flows = northwest_corner(supply, demand)
    if m == 1 or n == 1 or scale == 0:
        return SimplexResult(rows, cols, flows, 0, 0)

    iterations = 0
    degenerate_total = 0
    degenerate_run = 0
    while True:
        tree = _SpanningTree(m, n, rows, cols, scaled)
        # column-major view so flat indices are edge indices j*m + i
        reduced = (scaled - tree.u[:, None] - tree.v[None, :]).T.ravel()
        if degenerate_run >= limit:
            candidates = np.flatnonzero(reduced < -tol)
            if candidates.size == 0:
                break
            edge = int(candidates[0])
        else:
            edge = int(np.argmin(reduced))
            if reduced[edge] >= -tol:
                break

        iterations += 1
        if iterations > max_iterations:
            raise RuntimeError(f"transportation simplex exceeded {max_iterations} pivots")

        i_in, j_in = edge % m, edge // m
        cycle = np.asarray(tree.cycle(i_in, j_in), dtype=np.intp)
        losing, gaining = cycle[0::2], cycle[1::2]
        theta = float(flows[losing].min())
        tied = losing[flows[losing] <= theta]
        leaving = int(tied[np.argmin(cols[tied] * m + rows[tied])])

        flows[gaining] += theta
        flows[losing] = np.maximum(flows[losing] - theta, 0.0)
        rows[leaving], cols[leaving], flows[leaving] = i_in, j_in, theta

        if theta > 0:
            degenerate_run = 0
        else:
            degenerate_run += 1
            degenerate_total += 1
            if degenerate_run == limit:
                logger.debug(f"Switching to Bland pricing after {limit} degenerate pivots")

    logger.debug(f"Transportation simplex {m}x{n}: {iterations} pivots ({degenerate_total} degenerate)")
    return SimplexResult(rows, cols, flows, iterations, degenerate_total)
