import itertools
from functools import lru_cache
from typing import Generator

import numpy as np
import pytest
from dotenv import load_dotenv
from fastapi.testclient import TestClient
from scipy.optimize import linprog

from src.climatology.service import load_bundled_target
from src.ensembles.schemas import Ensemble
from src.harness.schemas import ExperimentConfig
from src.main import app
from src.shrinkage.schemas import ShrinkageTarget

load_dotenv()

# Literal climatological covariances shipped with the package.
CLIMATOLOGY = np.array(
    [
        [0.8616, 0.8618, -0.0148],
        [0.8618, 1.1149, -0.0035],
        [-0.0148, -0.0035, 1.0234],
    ]
)
CLUSTER_1 = np.array(
    [
        [0.5017, 0.5524, -0.4587],
        [0.5524, 1.0731, -0.6723],
        [-0.4587, -0.6723, 1.4252],
    ]
)
CLUSTER_2 = np.array(
    [
        [0.5443, 0.6830, 0.4330],
        [0.6830, 1.2748, 0.6318],
        [0.4330, 0.6318, 1.1808],
    ]
)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture(name="client")
def client_fixture() -> Generator[TestClient, None, None]:
    with TestClient(app) as client:
        yield client


@pytest.fixture
def climatology_target() -> ShrinkageTarget:
    return load_bundled_target("climatology")


@pytest.fixture
def clustered_targets() -> list[ShrinkageTarget]:
    return [load_bundled_target("cluster_1"), load_bundled_target("cluster_2")]


@pytest.fixture
def lorenz_ensemble(rng: np.random.Generator) -> Ensemble:
    """20 members scattered around a point on the attractor."""
    center = np.array([[-5.9], [-5.5], [24.6]])
    return Ensemble.uniform(center + 2.0 * rng.standard_normal((3, 20)))


@pytest.fixture
def short_experiment() -> ExperimentConfig:
    return ExperimentConfig(
        experiment_id="short",
        N=10,
        total_steps=30,
        spinup_steps=5,
        replicates=2,
        master_seed=7,
    )


def random_ensemble(rng: np.random.Generator, n: int, N: int, scale: float = 3.0) -> Ensemble:
    return Ensemble.uniform(scale * rng.standard_normal((n, N)))


def random_marginals(rng: np.random.Generator, rows: int, cols: int) -> tuple[np.ndarray, np.ndarray]:
    """Row masses with occasional zeros and columns of unit mass, both carrying `cols` in total."""
    raw = rng.random(rows) * (rng.random(rows) > 0.2)
    if raw.sum() == 0:
        raw[0] = 1.0
    return cols * raw / raw.sum(), np.ones(cols)


@lru_cache(maxsize=None)
def spanning_tree_systems(rows: int, cols: int) -> tuple[np.ndarray, np.ndarray]:
    """Every spanning tree of the complete bipartite graph K_{rows,cols}.

    Returns the basis cells (trees × edges × 2) and the matching square
    constraint matrices (row sums plus all but the last column sum).
    """
    cells = [(i, j) for i in range(rows) for j in range(cols)]
    edges = rows + cols - 1
    trees, systems = [], []
    for subset in itertools.combinations(cells, edges):
        parent = list(range(rows + cols))

        def find(node):
            while parent[node] != node:
                parent[node] = parent[parent[node]]
                node = parent[node]
            return node

        acyclic = True
        for i, j in subset:
            a, b = find(i), find(rows + j)
            if a == b:
                acyclic = False
                break
            parent[a] = b
        if not acyclic:
            continue
        system = np.zeros((edges, edges))
        for e, (i, j) in enumerate(subset):
            system[i, e] = 1.0
            if j < cols - 1:
                system[rows + j, e] = 1.0
        trees.append(subset)
        systems.append(system)
    return np.array(trees), np.array(systems)


def vertex_enumeration_cost(cost: np.ndarray, row_marginals: np.ndarray, col_marginals: np.ndarray) -> float:
    """Minimum transport cost over all basic feasible solutions."""
    rows, cols = cost.shape
    trees, systems = spanning_tree_systems(rows, cols)
    rhs = np.concatenate([row_marginals, col_marginals[:-1]])
    flows = np.linalg.solve(systems, np.broadcast_to(rhs, (len(systems), rhs.size))[..., np.newaxis])[..., 0]
    feasible = flows.min(axis=1) >= -1e-12
    costs = (flows * cost[trees[..., 0], trees[..., 1]]).sum(axis=1)
    return float(costs[feasible].min())


def vertex_enumeration_plan(cost: np.ndarray, row_marginals: np.ndarray, col_marginals: np.ndarray) -> np.ndarray:
    rows, cols = cost.shape
    trees, systems = spanning_tree_systems(rows, cols)
    rhs = np.concatenate([row_marginals, col_marginals[:-1]])
    flows = np.linalg.solve(systems, np.broadcast_to(rhs, (len(systems), rhs.size))[..., np.newaxis])[..., 0]
    costs = (flows * cost[trees[..., 0], trees[..., 1]]).sum(axis=1)
    costs[flows.min(axis=1) < -1e-12] = np.inf
    best = int(np.argmin(costs))
    plan = np.zeros((rows, cols))
    for (i, j), flow in zip(trees[best], flows[best]):
        plan[i, j] = max(flow, 0.0)
    return plan


def linprog_cost(cost: np.ndarray, row_marginals: np.ndarray, col_marginals: np.ndarray) -> float:
    rows, cols = cost.shape
    equalities = np.vstack(
        [np.kron(np.eye(rows), np.ones(cols)), np.kron(np.ones(rows), np.eye(cols))]
    )
    result = linprog(
        cost.ravel(),
        A_eq=equalities,
        b_eq=np.concatenate([row_marginals, col_marginals]),
        bounds=(0, None),
        method="highs",
    )
    assert result.status == 0
    return float(result.fun)
