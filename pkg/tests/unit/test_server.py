import pytest

from patchwork.presets import ellipse, harnack, pinwheel
from patchwork.server import create_app


@pytest.fixture
def assets(tmp_path):
    folder = tmp_path / "designer-ui"
    folder.mkdir()
    (folder / "index.html").write_text("<html>source</html>", encoding="utf-8")
    return folder


@pytest.fixture
def client(assets):
    return create_app(assets).test_client()


class TestApi:
    def test_healthz(self, client):
        assert client.get("/healthz").get_json() == {"status": "ok"}

    def test_presets(self, client):
        names = [entry["name"] for entry in client.get("/api/presets").get_json()]
        assert "ellipse" in names
        assert "pinwheel" in names

    def test_preset(self, client):
        response = client.get("/api/presets/ellipse")
        assert response.status_code == 200
        assert response.get_json()["degree"] == 2

    def test_unknown_preset(self, client):
        response = client.get("/api/presets/quintic")
        assert response.status_code == 400
        assert response.get_json()["code"] == "invalid_input"

    def test_patchwork(self, client):
        response = client.post("/api/patchwork", json=harnack(4).to_json())
        assert response.status_code == 200
        assert response.get_json()["isotopy_code"]["encoding"] == "4"

    def test_not_json(self, client):
        response = client.post("/api/patchwork", data="degree 4", content_type="text/plain")
        assert response.status_code == 400
        assert response.get_json()["message"] == "expected a JSON request body"

    def test_malformed_problem(self, client):
        body = client.post("/api/patchwork", json={"degree": 2}).get_json()
        assert body["code"] == "invalid_input"
        assert body["violations"]

    def test_convexify(self, client):
        response = client.post("/api/convexify", json=harnack(3).with_heights(None).to_json())
        assert response.status_code == 200
        assert len(response.get_json()["heights"]) == 10

    def test_convexify_infeasible(self, client):
        response = client.post("/api/convexify", json=pinwheel().to_json())
        assert response.status_code == 422
        body = response.get_json()
        assert body["code"] == "infeasible"
        assert body["certificate"]

    def test_verify(self, client):
        response = client.post("/api/verify", json={"problem": ellipse().to_json(), "options": {"grid": 32, "t_steps": 3}})
        assert response.status_code == 200
        assert response.get_json()["stabilized"] is True

    @pytest.mark.parametrize("options", [{"grid": 4}, {"grid": "big"}, {"t_start": 0.5}, {"t_start": "2"}])
    def test_verify_bad_options(self, client, options):
        response = client.post("/api/verify", json={"problem": ellipse().to_json(), "options": options})
        assert response.status_code == 400


class TestStatic:
    def test_index_from_source(self, client):
        assert client.get("/").data == b"<html>source</html>"

    def test_index_from_dist(self, assets):
        (assets / "dist").mkdir()
        (assets / "dist" / "index.html").write_text("<html>built</html>", encoding="utf-8")
        assert create_app(assets).test_client().get("/").data == b"<html>built</html>"

    def test_missing_file(self, client):
        assert client.get("/nothing.js").status_code == 404
