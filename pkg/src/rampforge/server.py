"""HTTP facade over a loaded model book.

Stateless by construction: every editing request carries its own sealed ramp
state, integrity-checked with an HMAC keyed off the model book itself, so any
two servers holding the same book are interchangeable.

Endpoints: GET /api/health, GET /api/models, POST /api/seed,
POST /api/transform, POST /api/export. Built UI assets (when present) are
served under /.
"""

from __future__ import annotations

import dataclasses
import hashlib
import hmac
import json
import math
from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from .colorspace import LabColor, format_hex, lab_to_srgb
from .errors import RampforgeError
from .generator import (
    GeneratedRamp,
    apply_user_edit,
    format_css_gradient,
    format_hex_lines,
    format_lab_csv,
    sample_in_gamut,
    seed_sequential,
)
from .modelbook import ModelBook
from .session import RampState, edit_from_dict

PREVIEW_SEED = LabColor(60.0, 0.0, 0.0)

_FORMATTERS = {
    "hex": format_hex_lines,
    "lab": format_lab_csv,
    "css": format_css_gradient,
}


class SeedRequest(BaseModel):
    model_id: str
    seed_hex: str
    kind: str = "sequential"
    n: int | None = Field(default=None, ge=2, le=256)
    arm_rotation: float = 0.0


class TransformRequest(BaseModel):
    state: dict
    edit: dict


class ExportRequest(BaseModel):
    state: dict
    format: str = "hex"


def _book_key(book: ModelBook) -> bytes:
    material = ":".join([
        "rampforge-state", str(book.version), book.corpus_fingerprint,
        ",".join(m.id for m in book.models),
    ])
    return hashlib.sha256(material.encode("utf-8")).digest()


def _seal(key: bytes, state: RampState) -> dict:
    payload = state.to_dict()
    body = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    payload["sig"] = hmac.new(key, body.encode("utf-8"), hashlib.sha256).hexdigest()
    return payload


def _unseal(key: bytes, payload: dict) -> RampState:
    if not isinstance(payload, dict) or "sig" not in payload:
        raise HTTPException(status_code=422, detail="state is missing its signature")
    given = payload["sig"]
    bare = {k: v for k, v in payload.items() if k != "sig"}
    try:
        state = RampState.from_dict(bare)
    except RampforgeError as err:
        raise HTTPException(status_code=422, detail=str(err)) from None
    body = json.dumps(state.to_dict(), sort_keys=True, separators=(",", ":"))
    expected = hmac.new(key, body.encode("utf-8"), hashlib.sha256).hexdigest()
    if not isinstance(given, str) or not hmac.compare_digest(given, expected):
        raise HTTPException(status_code=422, detail="state signature mismatch")
    return state


def _round6(value: float) -> float:
    return round(float(value), 6) + 0.0  # + 0.0 kills negative zero


def _ramp_response(ramp: GeneratedRamp, n: int, key: bytes, state: RampState) -> dict:
    display = ramp.colors if n == len(ramp.colors) else sample_in_gamut(ramp, n)
    control = ramp.points()
    return {
        "colors_hex": [format_hex(lab_to_srgb(c)) for c in display],
        "colors_lab": [[_round6(c.L), _round6(c.a), _round6(c.b)] for c in display],
        "curve_projection_ab": [[_round6(a), _round6(b)] for _, a, b in control],
        "curve_projection_lc": [[_round6(L), _round6(math.hypot(a, b))]
                                for L, a, b in control],
        "gamut_status": ramp.gamut_status,
        "state": _seal(key, state),
    }


def create_app(book: ModelBook, gamut_mode: str = "clip",
               static_dir: str | None = None) -> FastAPI:
    """Build the service around one immutable model book."""
    app = FastAPI(title="rampforge", version="0.1.0")
    key = _book_key(book)

    def build_state_ramp(state: RampState) -> GeneratedRamp:
        try:
            return state.build(book)
        except RampforgeError as err:
            raise HTTPException(status_code=422, detail=str(err)) from None

    @app.get("/api/health")
    def health():
        return {"status": "ok", "models": len(book.models), "version": book.version}

    @app.get("/api/models")
    def models():
        catalog = []
        for model in sorted(book.models, key=lambda m: m.id):
            try:
                preview = seed_sequential(model, PREVIEW_SEED, gamut_mode="clip")
            except RampforgeError:
                fallback = LabColor(float(model.l_profile[4]), 0.0, 0.0)
                preview = seed_sequential(model, fallback, gamut_mode="clip")
            catalog.append({
                "id": model.id,
                "method": model.method,
                "cluster_size": model.cluster_size,
                "l_profile": [_round6(v) for v in model.l_profile],
                "preview_hex": [format_hex(lab_to_srgb(c)) for c in preview.colors],
            })
        return {"models": catalog, "diverging_angle_degrees": _round6(book.diverging_angle_degrees),
                "diverging_rotation_limit_degrees": _round6(book.diverging_rotation_limit_degrees)}

    @app.post("/api/seed")
    def seed(request: SeedRequest):
        if not any(m.id == request.model_id for m in book.models):
            raise HTTPException(status_code=404,
                                detail=f"no model with id {request.model_id!r}")
        if request.kind not in ("sequential", "diverging"):
            raise HTTPException(status_code=422, detail=f"unknown kind {request.kind!r}")
        if abs(request.arm_rotation) > book.diverging_rotation_limit_degrees:
            raise HTTPException(
                status_code=422,
                detail=f"arm rotation outside ±{book.diverging_rotation_limit_degrees:.0f}")
        state = RampState(
            model_id=request.model_id,
            seed_hex=request.seed_hex.upper(),
            kind=request.kind,
            n=request.n or 9,
            arm_rotation=request.arm_rotation,
            gamut_mode=gamut_mode,
        )
        ramp = build_state_ramp(state)
        if request.n is None:  # default to the ramp's native control count
            state = dataclasses.replace(state, n=len(ramp.colors))
        return _ramp_response(ramp, state.n, key, state)

    @app.post("/api/transform")
    def transform(request: TransformRequest):
        state = _unseal(key, request.state)
        ramp = build_state_ramp(state)
        try:
            edit = edit_from_dict(request.edit)
        except RampforgeError as err:
            raise HTTPException(status_code=422, detail=str(err)) from None
        try:
            edited = apply_user_edit(ramp, edit)
        except RampforgeError as err:
            raise HTTPException(status_code=422, detail=str(err)) from None
        if edited.gamut_status != "reverted":
            state = state.with_edit(edit)
        return _ramp_response(edited, state.n, key, state)

    @app.post("/api/export")
    def export(request: ExportRequest):
        if request.format not in _FORMATTERS:
            raise HTTPException(status_code=422,
                                detail=f"unknown format {request.format!r}")
        state = _unseal(key, request.state)
        ramp = build_state_ramp(state)
        colors = ramp.colors if state.n == len(ramp.colors) else sample_in_gamut(ramp, state.n)
        return {"format": request.format, "text": _FORMATTERS[request.format](colors)}

    if static_dir and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")
    return app
