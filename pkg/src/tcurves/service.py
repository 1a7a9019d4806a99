"""Stateless evaluation service behind the interactive explorer.

Every response is recomputed from the request payload; the server holds no
session state.  Payloads use the patchwork JSON format: a triangulation is
either a catalog key or a full triangulation object, signs are a lex-order
bit string.
"""

from __future__ import annotations

from typing import Any, Optional, Union

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from .patchwork import Patchwork, build, is_bridge_flip, root_isotopic
from .render import loop_polylines, render_svg
from .scheme import render, stats
from .signs import SignDistribution
from .triangulation import (
    CATALOG_KEYS,
    NotFlippableError,
    Triangulation,
    catalog,
    flip,
)


class PatchworkPayload(BaseModel):
    degree: int
    triangulation: Union[str, dict]
    signs: str


class FlipPayload(BaseModel):
    patchwork: PatchworkPayload
    edge: list  # [[x,y],[x,y]]


class TogglePayload(BaseModel):
    patchwork: PatchworkPayload
    point: list  # [x,y]


def _resolve(payload: PatchworkPayload) -> tuple[Triangulation, SignDistribution]:
    if isinstance(payload.triangulation, str):
        if payload.triangulation not in CATALOG_KEYS:
            raise HTTPException(404, f"unknown catalog key {payload.triangulation!r}")
        t = catalog(payload.triangulation)
    else:
        try:
            t = Triangulation.from_json_obj(payload.triangulation)
        except Exception as exc:
            raise HTTPException(422, f"bad triangulation: {exc}")
    if t.degree != payload.degree:
        raise HTTPException(422, "degree does not match the triangulation")
    try:
        sigma = SignDistribution.from_string(payload.degree, payload.signs)
    except ValueError as exc:
        raise HTTPException(422, f"bad signs: {exc}")
    return t, sigma


def _nesting_obj(p: Patchwork, region: int) -> dict:
    return {
        "region": region,
        "children": [_nesting_obj(p, c) for c in p.children[region]],
    }


def evaluation_obj(p: Patchwork) -> dict[str, Any]:
    loops, pp, nn, depth = stats(p.scheme)
    return {
        "scheme": render(p.scheme),
        "p": pp,
        "n": nn,
        "loops": loops,
        "max_depth": depth,
        "loop_list": [
            {
                "kind": l.kind,
                "incident_regions": list(l.incident_regions),
                "segments": [
                    [[x, y] for (x, y) in piece] for piece in loop_polylines(p, l)
                ],
            }
            for l in p.loops
        ],
        "regions": [
            {
                "id": r.index,
                "is_root": r.is_root,
                "vertices": [
                    list(p.surface.vertices[v]) for v in sorted(r.vertices)
                ],
            }
            for r in p.regions
        ],
        "nesting": _nesting_obj(p, p.root_region),
    }


def patchwork_obj(t: Triangulation, sigma: SignDistribution, key: Optional[str] = None) -> dict:
    return {
        "degree": t.degree,
        "triangulation": key if key is not None else t.to_json_obj(),
        "signs": sigma.to_string(),
    }


def create_app() -> FastAPI:
    app = FastAPI(title="tcurves explorer service")

    @app.get("/catalog")
    def get_catalog():
        out = []
        for key in CATALOG_KEYS:
            t = catalog(key)
            out.append(
                {
                    "key": key,
                    "degree": t.degree,
                    "triangles": len(t.triangles),
                    "triangulation": t.to_json_obj(),
                }
            )
        return out

    @app.post("/evaluate")
    def post_evaluate(payload: PatchworkPayload):
        t, sigma = _resolve(payload)
        return evaluation_obj(build(t, sigma))

    @app.post("/flip")
    def post_flip(payload: FlipPayload):
        t, sigma = _resolve(payload.patchwork)
        try:
            (a, b) = payload.edge
            edge = (tuple(int(v) for v in a), tuple(int(v) for v in b))
        except Exception:
            raise HTTPException(422, "edge must be [[x,y],[x,y]]")
        try:
            bridge = is_bridge_flip(t, sigma, edge)
            t2 = flip(t, edge)
        except NotFlippableError as exc:
            raise HTTPException(422, f"not flippable: {exc}")
        before = build(t, sigma)
        after = build(t2, sigma)
        return {
            "patchwork": patchwork_obj(t2, sigma),
            "is_bridge_flip": bridge,
            "root_isotopic": root_isotopic(before, after),
            "evaluation": evaluation_obj(after),
        }

    @app.post("/toggle")
    def post_toggle(payload: TogglePayload):
        t, sigma = _resolve(payload.patchwork)
        try:
            point = tuple(int(v) for v in payload.point)
        except Exception:
            raise HTTPException(422, "point must be [x,y]")
        try:
            sigma2 = sigma.flipped(point)
        except KeyError:
            raise HTTPException(422, f"point {point} is not a lattice point")
        keep = (
            payload.patchwork.triangulation
            if isinstance(payload.patchwork.triangulation, str)
            else None
        )
        return {
            "patchwork": patchwork_obj(t, sigma2, keep),
            "evaluation": evaluation_obj(build(t, sigma2)),
        }

    @app.post("/render")
    def post_render(payload: PatchworkPayload):
        t, sigma = _resolve(payload)
        return {"svg": render_svg(build(t, sigma))}

    return app


def serve(port: int = 8321, host: str = "127.0.0.1") -> None:
    import uvicorn

    uvicorn.run(create_app(), host=host, port=port, log_level="warning")
