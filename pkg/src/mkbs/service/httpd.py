"""Threaded HTTP server for the wire protocol, standard library only.

Also optionally serves a directory of static assets (the web client build) for
paths outside the API namespace. Responses carry permissive CORS headers so a
client served from another origin during development can talk to the API.
"""

from __future__ import annotations

import logging
import mimetypes
import os
import posixpath
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qsl, urlsplit

from .api import Api, Response, dump_json

log = logging.getLogger("mkbs.service")

_API_ROOTS = ("kbs", "sessions")


class ApiHTTPServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, address: tuple[str, int], api: Api, ui_dir: str | None = None):
        super().__init__(address, _Handler)
        self.api = api
        self.ui_dir = os.path.abspath(ui_dir) if ui_dir else None


class _Handler(BaseHTTPRequestHandler):
    server: ApiHTTPServer
    protocol_version = "HTTP/1.1"

    def log_message(self, fmt: str, *args) -> None:  # one line per request
        log.info("%s %s", self.address_string(), fmt % args)

    def _respond(self, response: Response) -> None:
        self._send_bytes(response.status, response.body, "application/json; charset=utf-8")

    def _send_bytes(self, status: int, body: bytes, content_type: str) -> None:
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self._cors()
        self.end_headers()
        self.wfile.write(body)

    def _cors(self) -> None:
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, PUT, DELETE, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")

    def _body(self) -> bytes | None:
        length = int(self.headers.get("Content-Length") or 0)
        return self.rfile.read(length) if length else None

    def _dispatch(self, method: str) -> None:
        url = urlsplit(self.path)
        segments = [p for p in url.path.split("/") if p]
        if method == "GET" and self.server.ui_dir and (not segments or segments[0] not in _API_ROOTS):
            self._serve_static(url.path)
            return
        query = dict(parse_qsl(url.query))
        try:
            response = self.server.api.dispatch(method, url.path, query, self._body())
        except Exception as exc:  # pragma: no cover - defensive 500
            log.exception("unhandled error for %s %s", method, url.path)
            response = Response(500, {"error": {"code": "INTERNAL", "message": str(exc)}})
        self._respond(response)

    def do_GET(self) -> None:
        self._dispatch("GET")

    def do_POST(self) -> None:
        self._dispatch("POST")

    def do_PUT(self) -> None:
        self._dispatch("PUT")

    def do_DELETE(self) -> None:
        self._dispatch("DELETE")

    def do_OPTIONS(self) -> None:
        self.send_response(204)
        self._cors()
        self.send_header("Content-Length", "0")
        self.end_headers()

    def _serve_static(self, path: str) -> None:
        assert self.server.ui_dir is not None
        clean = posixpath.normpath(path.lstrip("/")) if path.strip("/") else "index.html"
        if clean in (".", ""):
            clean = "index.html"
        full = os.path.abspath(os.path.join(self.server.ui_dir, clean))
        if not full.startswith(self.server.ui_dir + os.sep) and full != self.server.ui_dir:
            self._send_bytes(404, dump_json({"error": {"code": "NOT_FOUND", "message": "no such file"}}), "application/json")
            return
        if os.path.isdir(full):
            full = os.path.join(full, "index.html")
        if not os.path.isfile(full):
            self._send_bytes(404, dump_json({"error": {"code": "NOT_FOUND", "message": "no such file"}}), "application/json")
            return
        content_type = mimetypes.guess_type(full)[0] or "application/octet-stream"
        with open(full, "rb") as fh:
            self._send_bytes(200, fh.read(), content_type)


def serve(api: Api, host: str, port: int, ui_dir: str | None = None) -> ApiHTTPServer:
    """Build a server bound to (host, port); call serve_forever() to run it."""
    return ApiHTTPServer((host, port), api, ui_dir)
