import time

import pytest
from fastapi.testclient import TestClient

from tcurves.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def pw(degree, triangulation, signs):
    return {"degree": degree, "triangulation": triangulation, "signs": signs}


def test_catalog_endpoint(client):
    res = client.get("/catalog")
    assert res.status_code == 200
    entries = res.json()
    assert sorted(e["degree"] for e in entries) == [6, 6, 7, 7, 7, 7]
    assert all("triangulation" in e for e in entries)


def test_evaluate_known_case(client):
    body = pw(2, {"degree": 2, "triangles": [
        [[0, 0], [0, 1], [1, 0]], [[0, 1], [1, 0], [1, 1]],
        [[1, 0], [1, 1], [2, 0]], [[0, 1], [0, 2], [1, 1]],
    ]}, "111111")
    res = client.post("/evaluate", json=body)
    assert res.status_code == 200
    ev = res.json()
    assert ev["scheme"] == "<1>"
    assert (ev["p"], ev["n"], ev["loops"]) == (1, 0, 1)
    assert len(ev["loop_list"]) == 1
    assert len(ev["regions"]) == 2
    assert sum(1 for r in ev["regions"] if r["is_root"]) == 1
    assert ev["nesting"]["region"] == next(
        r["id"] for r in ev["regions"] if r["is_root"]
    )


def test_evaluate_catalog_key_and_latency(client):
    body = pw(7, "radiant", "1" * 36)
    t0 = time.perf_counter()
    res = client.post("/evaluate", json=body)
    dt = time.perf_counter() - t0
    assert res.status_code == 200
    assert dt < 0.1, f"evaluation took {dt * 1000:.1f} ms"


def test_evaluate_rejects_bad_input(client):
    res = client.post("/evaluate", json=pw(7, "radiant", "10"))
    assert res.status_code == 422
    res = client.post("/evaluate", json=pw(6, "radiant", "1" * 36))
    assert res.status_code == 422
    res = client.post("/evaluate", json=pw(7, "unknown_key", "1" * 36))
    assert res.status_code == 404


def test_flip_roundtrip(client):
    body = {
        "patchwork": pw(2, {"degree": 2, "triangles": [
            [[0, 0], [0, 1], [1, 0]], [[0, 1], [1, 0], [1, 1]],
            [[1, 0], [1, 1], [2, 0]], [[0, 1], [0, 2], [1, 1]],
        ]}, "111111"),
        "edge": [[1, 0], [1, 1]],
    }
    res = client.post("/flip", json=body)
    assert res.status_code == 200
    out = res.json()
    assert out["is_bridge_flip"] is True
    assert out["root_isotopic"] is False
    assert out["evaluation"]["scheme"] == "<1>"
    # flipping the new diagonal restores the original triangle set
    back = {
        "patchwork": out["patchwork"],
        "edge": [[2, 0], [0, 1]],
    }
    res2 = client.post("/flip", json=back)
    assert res2.status_code == 200
    tris1 = {tuple(map(tuple, t)) for t in body["patchwork"]["triangulation"]["triangles"]}
    tris2 = {tuple(map(tuple, t)) for t in res2.json()["patchwork"]["triangulation"]["triangles"]}
    assert tris1 == tris2


def test_flip_not_flippable(client):
    body = {
        "patchwork": pw(7, "honeycomb7", "1" * 36),
        "edge": [[0, 0], [1, 0]],
    }
    res = client.post("/flip", json=body)
    assert res.status_code == 422
    assert "not flippable" in res.json()["detail"]


def test_toggle(client):
    body = {"patchwork": pw(7, "honeycomb7", "1" * 36), "point": [1, 1]}
    res = client.post("/toggle", json=body)
    assert res.status_code == 200
    out = res.json()
    assert out["patchwork"]["signs"] != "1" * 36
    again = client.post(
        "/toggle", json={"patchwork": out["patchwork"], "point": [1, 1]}
    ).json()
    assert again["patchwork"]["signs"] == "1" * 36
    res = client.post(
        "/toggle", json={"patchwork": pw(7, "honeycomb7", "1" * 36), "point": [9, 9]}
    )
    assert res.status_code == 422


def test_prop51_toggle_walkthrough(client):
    # degree 4 honeycomb with Harnack signs reads <4>; toggling (1,3) gives <3>
    from tcurves.signs import harnack
    from tcurves.triangulation import honeycomb

    tri = honeycomb(4).to_json_obj()
    eta = harnack(4).to_string()
    ev = client.post("/evaluate", json=pw(4, tri, eta)).json()
    assert ev["scheme"] == "<4>"
    out = client.post(
        "/toggle", json={"patchwork": pw(4, tri, eta), "point": [1, 3]}
    ).json()
    assert out["evaluation"]["scheme"] == "<3>"


def test_render_endpoint(client):
    res = client.post("/render", json=pw(7, "honeycomb7", "1" * 36))
    assert res.status_code == 200
    assert res.json()["svg"].startswith("<svg")
