import logging
from collections import deque

import numpy as np

from src.transport import constants, exceptions

logger = logging.getLogger(__name__)


class TransportationSimplex:
    """Network simplex on the bipartite transportation polytope.

    Rows are supply nodes, columns are demand nodes; a basis is a spanning
    tree of rows+cols−1 cells. Supplies are perturbed by a small ε so bases
    stay nondegenerate while pivoting; the final tree is then re-solved with
    the exact marginals, so perturbation never leaks into the returned plan.
    Pivoting follows Dantzig's rule and switches to Bland's rule once
    degenerate pivots pile up.
    """

    def __init__(
        self,
        cost: np.ndarray,
        supply: np.ndarray,
        demand: np.ndarray,
        perturbation: float = constants.PERTURBATION,
        degenerate_streak: int = constants.DEGENERATE_STREAK,
        max_pivots: int = constants.MAX_PIVOTS,
    ) -> None:
        self.cost = np.asarray(cost, dtype=float)
        self.rows, self.cols = self.cost.shape
        self.supply = np.asarray(supply, dtype=float)
        demand = np.asarray(demand, dtype=float)
        # absorb the (tolerated) imbalance into the demands
        demand_total = demand.sum()
        self.demand = demand * (self.supply.sum() / demand_total) if demand_total > 0 else demand
        self.perturbation = perturbation
        self.degenerate_streak = degenerate_streak
        self.max_pivots = max_pivots
        scale = max(1.0, float(np.abs(self.cost).max())) if self.cost.size else 1.0
        self.cost_tolerance = 1e-12 * scale
        self.pivots = 0

    def solve(self) -> np.ndarray:
        total = float(self.supply.sum())
        if total <= 0.0:
            return np.zeros((self.rows, self.cols))

        eps = self.perturbation * total / (self.rows + self.cols)
        supply = self.supply + eps
        demand = self.demand.copy()
        demand[-1] += self.rows * eps
        basis = self._optimize(supply, demand, bland=False)
        flows = self._tree_flows(basis, self.supply, self.demand)

        feasibility_tolerance = 1e-12 * total
        if flows.min() < -feasibility_tolerance:
            logger.debug("Perturbed basis infeasible for exact marginals; re-solving with Bland's rule")
            basis = self._optimize(self.supply, self.demand, bland=True)
            flows = self._tree_flows(basis, self.supply, self.demand)

        flows[np.abs(flows) <= 1e-15 * total] = 0.0
        flows = np.clip(flows, 0.0, None)
        plan = np.zeros((self.rows, self.cols))
        for (i, j), flow in zip(basis, flows):
            plan[i, j] = flow
        return plan

    def _optimize(self, supply: np.ndarray, demand: np.ndarray, bland: bool) -> list[tuple[int, int]]:
        basis = self._initial_basis(supply, demand)
        flows = self._tree_flows(basis, supply, demand)
        tie_tolerance = 1e-15 * float(supply.sum())
        streak = 0

        while True:
            parent, parent_edge, depth, u, v = self._potentials(basis)
            reduced = self.cost - u[:, np.newaxis] - v[np.newaxis, :]
            entering = self._entering(reduced, bland)
            if entering is None:
                return basis

            self.pivots += 1
            if self.pivots > self.max_pivots:
                raise exceptions.PivotLimitExceeded(f"After {self.max_pivots} pivots.")

            cycle = self._cycle(entering, parent, parent_edge, depth)
            minus = cycle[0::2]
            theta = min(flows[k] for k in minus)
            tied = [k for k in minus if flows[k] - theta <= tie_tolerance]
            leaving = min(tied, key=lambda k: basis[k][0] * self.cols + basis[k][1])

            flows[minus] -= theta
            flows[cycle[1::2]] += theta
            basis[leaving] = entering
            flows[leaving] = theta

            streak = streak + 1 if theta <= tie_tolerance else 0
            if not bland and streak > self.degenerate_streak:
                logger.debug("Switching to Bland's rule after %d degenerate pivots", streak)
                bland = True

    def _entering(self, reduced: np.ndarray, bland: bool) -> tuple[int, int] | None:
        if bland:
            candidates = np.flatnonzero(reduced.ravel() < -self.cost_tolerance)
            if candidates.size == 0:
                return None
            flat = int(candidates[0])
        else:
            flat = int(np.argmin(reduced))
            if reduced.flat[flat] >= -self.cost_tolerance:
                return None
        return divmod(flat, self.cols)

    def _initial_basis(self, supply: np.ndarray, demand: np.ndarray) -> list[tuple[int, int]]:
        """Least-cost method; every allocation retires exactly one row or column."""
        remaining_supply = supply.copy()
        remaining_demand = demand.copy()
        row_active = np.ones(self.rows, dtype=bool)
        col_active = np.ones(self.cols, dtype=bool)
        rows_left, cols_left = self.rows, self.cols
        basis = []

        for flat in np.argsort(self.cost, axis=None, kind="stable"):
            i, j = divmod(int(flat), self.cols)
            if not (row_active[i] and col_active[j]):
                continue
            quantity = min(remaining_supply[i], remaining_demand[j])
            remaining_supply[i] -= quantity
            remaining_demand[j] -= quantity
            basis.append((i, j))
            if rows_left == 1 and cols_left == 1:
                break
            if (remaining_supply[i] <= remaining_demand[j] and rows_left > 1) or cols_left == 1:
                row_active[i] = False
                rows_left -= 1
            else:
                col_active[j] = False
                cols_left -= 1
        return basis

    def _tree_flows(
        self, basis: list[tuple[int, int]], supply: np.ndarray, demand: np.ndarray
    ) -> np.ndarray:
        """Solve the basis tree for its unique flows by peeling leaves."""
        nodes = self.rows + self.cols
        incident = [[] for _ in range(nodes)]
        for k, (i, j) in enumerate(basis):
            incident[i].append(k)
            incident[self.rows + j].append(k)
        degree = np.array([len(edges) for edges in incident])
        residual = np.concatenate([supply, demand]).astype(float)
        flows = np.zeros(len(basis))
        removed = np.zeros(len(basis), dtype=bool)

        leaves = deque(node for node in range(nodes) if degree[node] == 1)
        while leaves:
            node = leaves.popleft()
            if degree[node] != 1:
                continue
            k = next(edge for edge in incident[node] if not removed[edge])
            i, j = basis[k]
            other = self.rows + j if node < self.rows else i
            flows[k] = residual[node]
            residual[other] -= flows[k]
            residual[node] = 0.0
            removed[k] = True
            degree[node] -= 1
            degree[other] -= 1
            if degree[other] == 1:
                leaves.append(other)
        return flows

    def _potentials(self, basis: list[tuple[int, int]]):
        """Dual potentials with u_0 = 0 and c_ij = u_i + v_j on basic cells, plus the rooted tree."""
        nodes = self.rows + self.cols
        adjacency = [[] for _ in range(nodes)]
        for k, (i, j) in enumerate(basis):
            adjacency[i].append((self.rows + j, k))
            adjacency[self.rows + j].append((i, k))

        potential = np.zeros(nodes)
        parent = np.full(nodes, -1)
        parent_edge = np.full(nodes, -1)
        depth = np.zeros(nodes, dtype=int)
        visited = np.zeros(nodes, dtype=bool)
        visited[0] = True
        queue = deque([0])
        while queue:
            node = queue.popleft()
            for neighbour, k in adjacency[node]:
                if visited[neighbour]:
                    continue
                i, j = basis[k]
                potential[neighbour] = self.cost[i, j] - potential[node]
                parent[neighbour] = node
                parent_edge[neighbour] = k
                depth[neighbour] = depth[node] + 1
                visited[neighbour] = True
                queue.append(neighbour)
        return parent, parent_edge, depth, potential[: self.rows], potential[self.rows :]

    def _cycle(self, entering: tuple[int, int], parent, parent_edge, depth) -> list[int]:
        """Basis edges on the tree path from row i to column j.

        Even positions lose flow when the entering cell gains it, odd positions gain.
        """
        a, b = entering[0], self.rows + entering[1]
        from_row, from_col = [], []
        while depth[a] > depth[b]:
            from_row.append(parent_edge[a])
            a = parent[a]
        while depth[b] > depth[a]:
            from_col.append(parent_edge[b])
            b = parent[b]
        while a != b:
            from_row.append(parent_edge[a])
            a = parent[a]
            from_col.append(parent_edge[b])
            b = parent[b]
        return [int(k) for k in from_row + from_col[::-1]]
