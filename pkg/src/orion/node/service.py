"""HTTP observability surface of the node simulator."""

from __future__ import annotations

from fastapi import FastAPI

from orion.httputil import install_error_handler
from orion.node.sim import E2NodeSim


def create_app(node: E2NodeSim) -> FastAPI:
    app = FastAPI(title="e2-node-sim", docs_url=None, redoc_url=None)
    install_error_handler(app)
    app.state.node = node

    @app.get("/ledger")
    def ledger():
        return node.snapshot().to_json()

    return app
