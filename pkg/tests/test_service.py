import math
import warnings

import pytest

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    from fastapi.testclient import TestClient

from spingame.service.app import app


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as c:
        yield c


def strip_metadata(report):
    return {k: v for k, v in report.items() if k != "metadata"}


class TestInfo:
    def test_root(self, client):
        body = client.get("/").json()
        assert body["name"] == "spingame"
        assert "run-game" in body["modes"]


class TestTheorem1Endpoint:
    def test_small_run_passes(self, client):
        response = client.post("/theorem1", json={"trials": 25, "seed": 5})
        assert response.status_code == 200
        report = response.json()
        assert report["mode"] == "verify-theorem1"
        assert report["results"]["passed"] is True
        assert report["results"]["max_correlation_deviation"] <= 1e-10
        assert report["config"]["trials"] == 25

    def test_deterministic_outside_metadata(self, client):
        payload = {"trials": 10, "seed": 7, "xi": "three-point"}
        first = client.post("/theorem1", json=payload).json()
        second = client.post("/theorem1", json=payload).json()
        assert strip_metadata(first) == strip_metadata(second)

    def test_rejects_bad_trials(self, client):
        assert client.post("/theorem1", json={"trials": 0}).status_code == 422


class TestGameEndpoint:
    def test_quantum_game(self, client):
        payload = {"rounds": 3000, "seed": 21}
        response = client.post("/game", json=payload)
        assert response.status_code == 200
        body = response.json()
        report = body["report"]
        assert report["results"]["conservation"]["overall_pass"] is True
        lines = body["transcript_csv"].splitlines()
        assert lines[0].startswith("round,pair_index")
        assert len(lines) == 3001

    def test_unknown_strategy_named(self, client):
        response = client.post("/game", json={"strategy_a": "psychic"})
        assert response.status_code == 400
        assert "psychic" in response.json()["detail"]

    def test_zero_support_config_refused(self, client):
        response = client.post("/game", json={"basis": "computational"})
        assert response.status_code == 400
        assert "0,0" in response.json()["detail"]

    def test_sign_strategy_reports_failure(self, client):
        payload = {"rounds": 4000, "seed": 2,
                   "strategy_a": "sign", "strategy_b": "sign"}
        report = client.post("/game", json=payload).json()["report"]
        assert report["results"]["conservation"]["overall_pass"] is False


class TestLhvEndpoint:
    def test_default_singlet_search(self, client):
        report = client.post("/lhv", json={}).json()
        results = report["results"]
        bound = (2 * math.sqrt(2) - 2) / 4
        assert abs(results["conservation_search"]["deviation"] - bound) < 1e-9
        assert results["lhv_chsh_max"]["best_chsh"] == 2.0
        assert abs(results["chsh"]["quantum"]["abs_combined"] - 2 * math.sqrt(2)) < 1e-10
        assert results["chsh"]["quantum"]["violates_classical_bound"] is True
        assert results["chsh"]["max_entrywise_difference"] < 1e-10

    def test_product_state_reachable(self, client):
        report = client.post("/lhv", json={"state": "product:1,0,0,0,1,0,0,0"}).json()
        results = report["results"]
        assert results["conservation_search"]["deviation"] <= 1e-8
        assert results["chsh"]["quantum"]["violates_classical_bound"] is False


class TestChshGameEndpoint:
    def test_classical_best(self, client):
        payload = {"rounds": 20_000, "seed": 3,
                   "strategy_a": "constant0", "strategy_b": "constant0"}
        report = client.post("/chsh", json=payload).json()
        freq = report["results"]["game"]["frequency"]
        assert abs(freq - 0.75) < 4 * math.sqrt(0.75 * 0.25 / 20_000)

    def test_quantum(self, client):
        payload = {"rounds": 20_000, "seed": 4}
        report = client.post("/chsh", json=payload).json()
        freq = report["results"]["game"]["frequency"]
        expected = (2 + math.sqrt(2)) / 4
        assert abs(freq - expected) < 4 * math.sqrt(expected * (1 - expected) / 20_000)

    def test_mixed_quantum_rejected(self, client):
        payload = {"strategy_a": "quantum", "strategy_b": "constant0"}
        assert client.post("/chsh", json=payload).status_code == 400


class TestCvalTableEndpoint:
    def test_eight_rows_for_one_angle(self, client):
        theta = math.pi / 3
        report = client.post("/cval-table", json={"angles": [theta]}).json()
        rows = report["results"]["rows"]
        assert len(rows) == 8
        signs = {0: (-1, -1), 1: (1, 1), 2: (-1, 1), 3: (1, -1)}
        for row in rows:
            sa, sc = signs[row["eta_index"]]
            expected = sa * math.sin(theta) + sc * row["xi"] * math.cos(theta)
            assert abs(row["s_tilde"] - expected) < 1e-12

    def test_particle_two_flips_sign(self, client):
        theta = 0.9
        rows1 = client.post("/cval-table",
                            json={"angles": [theta], "particle": 1}).json()["results"]["rows"]
        rows2 = client.post("/cval-table",
                            json={"angles": [theta], "particle": 2}).json()["results"]["rows"]
        for r1, r2 in zip(rows1, rows2):
            assert abs(r1["s_tilde"] + r2["s_tilde"]) < 1e-12

    def test_zero_support_refused(self, client):
        response = client.post("/cval-table", json={"basis": "computational"})
        assert response.status_code == 400
