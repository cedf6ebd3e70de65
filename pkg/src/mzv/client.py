"""Thin HTTP client for the service.

Without a server URL the client mounts the FastAPI app on an in-process
ASGI transport, so the CLI works standalone while still exercising the real
request/response path; with --server it talks to a remote instance.
"""

from __future__ import annotations

import asyncio
from typing import Any

import httpx


class ServiceError(RuntimeError):
    """Non-2xx response from the service."""

    def __init__(self, status_code: int, detail: Any):
        self.status_code = status_code
        self.detail = detail
        super().__init__(f"service returned {status_code}: {detail}")

    @property
    def code(self) -> str:
        if isinstance(self.detail, dict):
            return str(self.detail.get("code", "error"))
        return "error"


class ServiceClient:
    """Synchronous facade over the async HTTP stack."""

    def __init__(self, server: str | None = None, timeout: float = 3600.0):
        self._server = server
        self._timeout = timeout

    def _make_client(self) -> httpx.AsyncClient:
        if self._server:
            return httpx.AsyncClient(base_url=self._server, timeout=self._timeout)
        from .service import app  # deferred: keeps client import light

        transport = httpx.ASGITransport(app=app)
        return httpx.AsyncClient(
            transport=transport, base_url="http://mzv.internal", timeout=self._timeout
        )

    def _request(self, method: str, path: str, payload: dict | None = None) -> dict:
        async def go() -> dict:
            async with self._make_client() as client:
                response = await client.request(method, path, json=payload)
                if response.status_code >= 400:
                    try:
                        detail = response.json().get("detail")
                    except ValueError:
                        detail = response.text
                    raise ServiceError(response.status_code, detail)
                return response.json()

        return asyncio.run(go())

    def health(self) -> dict:
        return self._request("GET", "/healthz")

    def eval(self, expr: str, digits: int = 30, bits: int | None = None) -> dict:
        return self._request("POST", "/eval", {"expr": expr, "digits": digits, "bits": bits})

    def verify(self, **kwargs: Any) -> dict:
        return self._request("POST", "/verify", kwargs)

    def table(self, kind: str, amax: int, bmax: int) -> dict:
        return self._request("POST", "/table", {"kind": kind, "amax": amax, "bmax": bmax})

    def experiment(self, amax: int, digits: int = 30) -> dict:
        return self._request("POST", "/experiment", {"amax": amax, "digits": digits})
