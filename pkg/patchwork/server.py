from __future__ import annotations

import logging
import os
from pathlib import Path
from typing import Any, Optional, Tuple

from flask import Flask, Response, jsonify, request, send_from_directory
from pathmagic import Dir

from .convexity import Infeasible
from .errors import InvalidInputError, PatchworkError
from .presets import describe
from .serialization import PatchworkProblem, build_report, convexify_report, decode_number, halving_schedule, verify_problem

logger = logging.getLogger(__name__)

UI_DIR_VARIABLE = "PATCHWORK_UI_DIR"
DEFAULT_UI_DIR = Path(__file__).resolve().parent.parent / "designer-ui"
MAX_RESOLUTION = 4096


def ui_dir() -> Dir:
    """The designer-ui directory: PATCHWORK_UI_DIR when set, else the copy beside the package."""
    return Dir.from_pathlike(os.environ.get(UI_DIR_VARIABLE) or DEFAULT_UI_DIR)


def create_app(assets: Optional[os.PathLike] = None) -> Flask:
    """
    The HTTP API. Every endpoint takes and returns JSON. Bad input answers 400 and a problem without a convex lift answers 422, both with a body
    {code, message, violations}. A numeric verification that does not stabilize is still a 200 whose report says so.
    """
    app = Flask(__name__, static_folder=None)
    web = Path(assets) if assets is not None else ui_dir().path
    dist = web / "dist"

    @app.errorhandler(PatchworkError)
    def on_patchwork_error(ex: PatchworkError) -> Tuple[Response, int]:
        logger.info(f"rejected {request.path}: {ex.message}")
        return jsonify(ex.to_json()), 400

    @app.get("/healthz")
    def healthz() -> Response:
        return jsonify({"status": "ok"})

    @app.get("/api/presets")
    def presets() -> Response:
        return jsonify(describe())

    @app.get("/api/presets/<name>")
    def preset(name: str) -> Response:
        from .presets import load_preset
        return jsonify(load_preset(name).to_json())

    @app.post("/api/patchwork")
    def patchwork() -> Response:
        return jsonify(build_report(_problem()))

    @app.post("/api/convexify")
    def convexify() -> Tuple[Response, int]:
        result = convexify_report(_problem())
        if isinstance(result, Infeasible):
            return jsonify(infeasible_json(result)), 422
        return jsonify(result), 200

    @app.post("/api/verify")
    def verify() -> Response:
        payload = _payload()
        options = payload.get("options") or {}
        resolution = _integer(options, "grid", 512)
        if not 8 <= resolution <= MAX_RESOLUTION:
            raise InvalidInputError(f"the grid must lie between 8 and {MAX_RESOLUTION}, not {resolution}")

        schedule = halving_schedule(decode_number(options.get("t_start", "1/2")), _integer(options, "t_steps", 12))
        problem = PatchworkProblem.from_json(payload.get("problem", payload))
        return jsonify(verify_problem(problem, schedule=schedule, resolution=resolution).to_json())

    @app.get("/")
    def index() -> Response:
        if dist.exists():
            return send_from_directory(dist, "index.html")
        return send_from_directory(web, "index.html")

    @app.get("/<path:path>")
    def static_proxy(path: str) -> Response:
        if dist.exists() and (dist / path).exists():
            return send_from_directory(dist, path)
        return send_from_directory(web, path)

    logger.debug(f"serving designer assets from {web}")
    return app


def infeasible_json(infeasible: Infeasible) -> dict[str, Any]:
    return {
        "code": "infeasible",
        "message": "no convex lift",
        "violations": [infeasible.reason],
        "certificate": infeasible.to_json()["certificate"],
    }


def serve(port: int = 8000, host: str = "127.0.0.1", assets: Optional[os.PathLike] = None) -> None:
    logger.info(f"serving the patchwork API on http://{host}:{port}")
    create_app(assets).run(host=host, port=port, threaded=True)


def _payload() -> dict[str, Any]:
    if (payload := request.get_json(silent=True)) is None:
        raise InvalidInputError("expected a JSON request body")
    if not isinstance(payload, dict):
        raise InvalidInputError(f"expected a JSON object, not {type(payload).__name__}")
    return payload


def _problem() -> PatchworkProblem:
    return PatchworkProblem.from_json(_payload())


def _integer(options: dict[str, Any], key: str, default: int) -> int:
    value = options.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidInputError(f"option {key!r} must be an integer, not {value!r}")
    return value
