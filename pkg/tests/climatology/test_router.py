import numpy as np
from fastapi import status
from fastapi.testclient import TestClient

from src.climatology.constants import ErrorCode
from src.climatology.service import trace_normalize
from tests.fixtures import CLIMATOLOGY, client_fixture


def test_read_targets(client: TestClient) -> None:
    response = client.get("/climatology/targets")
    assert response.status_code == status.HTTP_200_OK
    labels = [target["label"] for target in response.json()]
    assert labels == ["climatology", "cluster_1", "cluster_2", "identity"]


def test_read_target(client: TestClient) -> None:
    response = client.get("/climatology/targets/climatology")
    assert response.status_code == status.HTTP_200_OK
    data = response.json()
    assert data["dimension"] == 3
    np.testing.assert_allclose(data["covariance"], trace_normalize(CLIMATOLOGY), rtol=1e-14)


def test_read_non_existent_target(client: TestClient) -> None:
    response = client.get("/climatology/targets/cluster_9")
    assert response.status_code == status.HTTP_404_NOT_FOUND
    assert response.json()["detail"].startswith(ErrorCode.TARGET_NOT_FOUND)


def test_normalize(client: TestClient) -> None:
    response = client.post("/climatology/normalize", json={"matrix": [[2.0, 1.0], [1.0, 6.0]]})
    assert response.status_code == status.HTTP_200_OK
    assert response.json()["matrix"] == [[0.5, 0.25], [0.25, 1.5]]


def test_normalize_zero_trace(client: TestClient) -> None:
    response = client.post("/climatology/normalize", json={"matrix": [[0.0, 1.0], [1.0, 0.0]]})
    assert response.status_code == status.HTTP_422_UNPROCESSABLE_ENTITY
    assert response.json()["detail"].startswith(ErrorCode.NONPOSITIVE_TRACE)


def test_normalize_ragged(client: TestClient) -> None:
    response = client.post("/climatology/normalize", json={"matrix": [[1.0, 0.0], [1.0]]})
    assert response.status_code == status.HTTP_422_UNPROCESSABLE_ENTITY
    assert response.json()["detail"].startswith(ErrorCode.NOT_SQUARE)
