"""Consultation service: sessions, wire protocol, HTTP server."""

from .api import Api, ApiError, Response, dump_json
from .httpd import ApiHTTPServer, serve
from .sessions import (
    ABORTED,
    AWAITING_ANSWER,
    DEFAULT_SESSION_LIMIT,
    DEFAULT_SESSION_TTL,
    DONE,
    RUNNING,
    CapacityError,
    Session,
    SessionManager,
)

__all__ = [
    "ABORTED",
    "AWAITING_ANSWER",
    "Api",
    "ApiError",
    "ApiHTTPServer",
    "CapacityError",
    "DEFAULT_SESSION_LIMIT",
    "DEFAULT_SESSION_TTL",
    "DONE",
    "RUNNING",
    "Response",
    "Session",
    "SessionManager",
    "dump_json",
    "serve",
]
