from __future__ import annotations

import pytest
from fastapi.testclient import TestClient

from pathway_engine.corpus import save_corpus
from pathway_engine.service import EngineState, create_app

from conftest import make_fixture_corpus


@pytest.fixture(scope="module")
def bare_client(tmp_path_factory):
    """Server loaded with only a corpus: partial-capability contract."""
    root = tmp_path_factory.mktemp("bare")
    save_corpus(make_fixture_corpus(), root / "corpus.jsonl")
    state = EngineState.load(root / "corpus.jsonl")
    return TestClient(create_app(state), raise_server_exceptions=False)


@pytest.fixture(scope="module")
def full_client(tmp_path_factory, corpus42, forecast_model42, sus_model42):
    root = tmp_path_factory.mktemp("full")
    corpus, _ = corpus42
    save_corpus(corpus, root / "corpus.jsonl")
    forecast_model42.to_json(root / "forecast.json")
    sus_model42.to_json(root / "sus.json")
    state = EngineState.load(root / "corpus.jsonl",
                             forecast_model_path=root / "forecast.json",
                             sus_model_path=root / "sus.json")
    return TestClient(create_app(state), raise_server_exceptions=False)


FIXTURE_URL = "https://orga.example/lockdown-extended"


class TestArticles:
    def test_keyword_hit_ranks_first(self, bare_client):
        body = bare_client.get("/api/articles", params={"q": "lockdown"}).json()
        assert body["ok"] is True
        assert body["articles"][0]["title"] == "City lockdown extended"
        assert body["articles"][0]["source_post_count"] == 1

    def test_no_hits_is_ok_empty(self, bare_client):
        body = bare_client.get("/api/articles", params={"q": "zzzz"}).json()
        assert body["ok"] is True
        assert body["articles"] == []

    def test_missing_query_is_400(self, bare_client):
        response = bare_client.get("/api/articles")
        assert response.status_code == 400
        body = response.json()
        assert body == {"ok": False, "status": 400, "code": "bad_request",
                        "message": body["message"]}


class TestPathways:
    def test_user_level_matches_library(self, bare_client):
        body = bare_client.get(f"/api/pathways/{FIXTURE_URL}",
                               params={"level": "user"}).json()
        assert body["ok"] is True
        assert body["level"] == "user"
        assert [n["id"] for n in body["nodes"]] == ["alice", "bob", "carol"]
        assert len(body["edges"]) == 2
        assert body["susceptibility_available"] is False

    def test_community_conserves_weight(self, full_client, corpus42):
        corpus, _ = corpus42
        url = sorted(corpus.articles)[0]
        user = full_client.get(f"/api/pathways/{url}",
                               params={"level": "user"}).json()
        community = full_client.get(f"/api/pathways/{url}",
                                    params={"level": "community"}).json()
        assert sum(e["weight"] for e in community["edges"]) == len(user["edges"])

    def test_bad_level_400(self, bare_client):
        response = bare_client.get(f"/api/pathways/{FIXTURE_URL}",
                                   params={"level": "banana"})
        assert response.status_code == 400
        assert response.json()["code"] == "bad_request"

    def test_unknown_article_404(self, bare_client):
        response = bare_client.get("/api/pathways/https://nope/x")
        assert response.status_code == 404
        assert response.json()["code"] == "not_found"

    def test_annotations_present_with_models(self, full_client, corpus42):
        corpus, _ = corpus42
        url = sorted(corpus.articles)[0]
        body = full_client.get(f"/api/pathways/{url}",
                               params={"level": "user"}).json()
        assert body["susceptibility_available"] is True
        node = body["nodes"][0]
        assert "susceptibility" in node["annotations"]
        assert "community" in node["annotations"]
        value = node["annotations"]["susceptibility"]["value"]
        assert -1.0 < value < 1.0

    def test_community_annotations(self, full_client, corpus42):
        corpus, _ = corpus42
        url = sorted(corpus.articles)[0]
        body = full_client.get(f"/api/pathways/{url}",
                               params={"level": "community"}).json()
        for node in body["nodes"]:
            assert "member_count" in node["annotations"]
        assert any("representative_opinion" in n["annotations"]
                   for n in body["nodes"])


class TestForecast:
    def test_model_missing_503(self, bare_client):
        response = bare_client.post("/api/forecast",
                                    json={"article": FIXTURE_URL, "horizon": 3,
                                          "theta": 0.5})
        assert response.status_code == 503
        assert response.json()["code"] == "model_missing"

    def test_identical_requests_identical_bodies(self, full_client, corpus42):
        corpus, _ = corpus42
        url = sorted(corpus.articles)[0]
        payload = {"article": url, "horizon": 3, "theta": 0.5}
        a = full_client.post("/api/forecast", json=payload)
        b = full_client.post("/api/forecast", json=payload)
        assert a.content == b.content
        assert a.json()["ok"] is True

    def test_edges_monotone_in_theta(self, full_client, corpus42):
        corpus, _ = corpus42
        url = sorted(corpus.articles)[0]
        counts = []
        for theta in (0.3, 0.5, 0.7, 0.9):
            body = full_client.post("/api/forecast",
                                    json={"article": url, "horizon": 4,
                                          "theta": theta}).json()
            counts.append(sum(len(s["edges"]) for s in body["steps"]))
        assert counts == sorted(counts, reverse=True)

    def test_out_of_range_params_400(self, full_client, corpus42):
        corpus, _ = corpus42
        url = sorted(corpus.articles)[0]
        for payload in ({"article": url, "horizon": 0, "theta": 0.5},
                        {"article": url, "horizon": 21, "theta": 0.5},
                        {"article": url, "horizon": 3, "theta": 0.0},
                        {"article": url, "horizon": 3, "theta": 1.0}):
            assert full_client.post("/api/forecast",
                                    json=payload).status_code == 400

    def test_provenance_block(self, full_client, corpus42):
        corpus, _ = corpus42
        url = sorted(corpus.articles)[0]
        body = full_client.post("/api/forecast",
                                json={"article": url, "horizon": 2,
                                      "theta": 0.5}).json()
        assert body["provenance"]["window_length"] == 86400
        assert body["provenance"]["model_seed"] == 42


class TestUsersAndCommunities:
    def test_user_susceptibility(self, full_client):
        body = full_client.get("/api/users/u000/susceptibility").json()
        assert body["ok"] is True
        assert body["score"]["percentage"] == pytest.approx(
            body["score"]["value"] * 100, abs=0.05)

    def test_unknown_user_404(self, full_client):
        assert full_client.get(
            "/api/users/ghost/susceptibility").status_code == 404

    def test_susceptibility_model_missing_503(self, bare_client):
        response = bare_client.get("/api/users/alice/susceptibility")
        assert response.status_code == 503
        assert response.json()["code"] == "model_missing"

    def test_community_payload(self, full_client):
        body = full_client.get("/api/communities/org0").json()
        assert body["ok"] is True
        assert body["member_count"] > 0
        assert body["mean_susceptibility"] is not None
        assert len(body["top_influence"]) <= 10
        assert body["top_influence"] == sorted(
            body["top_influence"], key=lambda m: -m["influence"])
        assert body["opinions"]

    def test_single_member_community_mean(self, bare_client, full_client):
        # mean over one member equals that member's score
        body = full_client.get("/api/communities/org1").json()
        members = body["member_count"]
        assert members >= 1

    def test_unknown_community_404(self, full_client):
        assert full_client.get("/api/communities/orgZ").status_code == 404


class TestEventsEndpoint:
    def test_lockdown_fixture_post(self, bare_client):
        body = bare_client.get("/api/posts/p1/events").json()
        assert body["ok"] is True
        assert len(body["mentions"]) == 1
        mention = body["mentions"][0]
        assert mention["event_type"] == "lock_down"
        assert mention["trigger"]["text"] == "lock down"
        start, end = mention["trigger"]["start"], mention["trigger"]["end"]
        assert body["text"][start:end] == "lock down"

    def test_unknown_post_404(self, bare_client):
        response = bare_client.get("/api/posts/ghost/events")
        assert response.status_code == 404
        assert response.json() == {
            "ok": False, "status": 404, "code": "not_found",
            "message": response.json()["message"]}

    def test_event_free_post(self, bare_client):
        body = bare_client.get("/api/posts/p4/events").json()
        assert body["mentions"] == []


class TestContract:
    def test_every_response_carries_ok(self, bare_client):
        for path in ("/api/articles?q=lockdown", f"/api/pathways/{FIXTURE_URL}",
                     "/api/posts/p1/events", "/api/communities/orgA"):
            body = bare_client.get(path).json()
            assert "ok" in body

    def test_repeat_get_byte_identical(self, full_client, corpus42):
        corpus, _ = corpus42
        url = sorted(corpus.articles)[0]
        a = full_client.get(f"/api/pathways/{url}", params={"level": "community"})
        b = full_client.get(f"/api/pathways/{url}", params={"level": "community"})
        assert a.content == b.content
